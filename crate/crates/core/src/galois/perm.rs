use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, …, m−1}` stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u16>", into = "Vec<u16>")]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn new(images: Vec<u16>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| Error::InvalidParameters(format!("image {i} out of range")))?;
            if *slot {
                return Err(Error::InvalidParameters(format!("image {i} repeated")));
            }
            *slot = true;
        }
        Ok(Self(images))
    }

    pub fn identity(m: usize) -> Self {
        Self((0..m as u16).collect())
    }

    /// Builds a permutation from disjoint cycles on `m` points.
    pub fn from_cycles(m: usize, cycles: &[&[u16]]) -> Result<Self> {
        let mut images: Vec<u16> = (0..m as u16).collect();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                *images
                    .get_mut(a as usize)
                    .ok_or_else(|| Error::InvalidParameters(format!("point {a} out of range")))? = b;
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Self(inv)
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Self) -> Self {
        h.inverse().then(self).then(h)
    }

    /// Cycle lengths in descending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

impl TryFrom<Vec<u16>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<u16>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Permutation> for Vec<u16> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// `"3+3+2+1"` for the partition `[3, 3, 2, 1]`.
pub fn partition_key(parts: &[usize]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+")
}

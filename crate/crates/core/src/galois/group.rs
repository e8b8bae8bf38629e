use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::pow;

use super::perm::Permutation;
use crate::error::{Error, Result};

/// Largest number of tree leaves a wreath product may act on.
pub const DEFAULT_LEAF_CAP: usize = 729;
/// Largest group order `enumerate` will build.
pub const DEFAULT_ORDER_CAP: usize = 100_000;

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Option<Vec<Permutation>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Mismatch(format!("generator on {} points, group on {degree}", g.degree())));
        }
        Ok(Self {
            degree,
            generators,
            elements: None,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            elements: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    /// Closes the generators under multiplication, breadth first, and keeps
    /// the element list. Returns the order.
    pub fn enumerate(&mut self, cap: usize) -> Result<usize> {
        if let Some(e) = &self.elements {
            return Ok(e.len());
        }
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut order = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &self.generators {
                let h = g.then(s);
                if seen.insert(h.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Capacity {
                            what: "group order",
                            limit: cap,
                            reached: seen.len(),
                        });
                    }
                    order.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        order.sort_unstable();
        let n = order.len();
        self.elements = Some(order);
        Ok(n)
    }

    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }
}

/// Generators of the symmetric group on `d` letters: a transposition and a
/// `d`-cycle (for `d ≥ 2`).
pub fn symmetric_generators(d: usize) -> Vec<Vec<u16>> {
    if d < 2 {
        return Vec::new();
    }
    let transposition: Vec<u16> = (0..d as u16).map(|i| match i {
        0 => 1,
        1 => 0,
        _ => i,
    }).collect();
    let cycle: Vec<u16> = (0..d as u16).map(|i| (i + 1) % d as u16).collect();
    if d == 2 { vec![transposition] } else { vec![transposition, cycle] }
}

/// Generators of the cyclic group of order `d` acting on `d` letters.
pub fn cyclic_generators(d: usize) -> Vec<Vec<u16>> {
    vec![(0..d as u16).map(|i| (i + 1) % d as u16).collect()]
}

/// Lifts a permutation `sigma` of the children of the vertex with address
/// `prefix` (length `level`) to the leaves of the depth-`n` tree.
fn vertex_permutation(d: usize, n: u32, level: u32, prefix: usize, sigma: &[u16]) -> Permutation {
    let leaves = pow(d, n as usize);
    let below = pow(d, (n - level - 1) as usize);
    let block = below * d;
    let images = (0..leaves)
        .map(|leaf| {
            if leaf / block != prefix {
                return leaf as u16;
            }
            let digit = (leaf / below) % d;
            let rest = leaf % below;
            (prefix * block + sigma[digit] as usize * below + rest) as u16
        })
        .collect();
    Permutation::new(images).expect("vertex action is a bijection")
}

/// Iterated wreath product acting on the `dⁿ` leaves, with `root` acting on
/// the children of the root and `inner` at every other vertex.
pub fn tower_group(d: usize, n: u32, root: &[Vec<u16>], inner: &[Vec<u16>]) -> Result<PermGroup> {
    if d < 2 || n == 0 {
        return Err(Error::InvalidParameters(format!("need d >= 2 and n >= 1, got d = {d}, n = {n}")));
    }
    let leaves = d
        .checked_pow(n)
        .filter(|&l| l <= DEFAULT_LEAF_CAP)
        .ok_or(Error::Capacity {
            what: "tree leaves",
            limit: DEFAULT_LEAF_CAP,
            reached: n as usize,
        })?;
    let mut gens = Vec::new();
    for level in 0..n {
        let local = if level == 0 { root } else { inner };
        for prefix in 0..pow(d, level as usize) {
            for sigma in local {
                gens.push(vertex_permutation(d, n, level, prefix, sigma));
            }
        }
    }
    PermGroup::new(leaves, gens)
}

/// The full automorphism group of the depth-`n` `d`-ary tree.
pub fn wreath_generators(d: usize, n: u32) -> Result<PermGroup> {
    let s = symmetric_generators(d);
    tower_group(d, n, &s, &s)
}

/// Candidate image for `x³ + 7x² − 7` at depth `n`: the root acts through
/// the 3-cycles only, every deeper vertex through the full symmetric group.
pub fn index2_candidate(n: u32) -> Result<PermGroup> {
    tower_group(3, n, &cyclic_generators(3), &symmetric_generators(3))
}

/// `(d!)^((dⁿ − 1)/(d − 1))`.
pub fn wreath_order(d: u64, n: u32) -> BigUint {
    let fact: BigUint = (1..=d).map(BigUint::from).product();
    let vertices = (pow(d, n as usize) - 1) / (d - 1);
    pow(fact, vertices as usize)
}

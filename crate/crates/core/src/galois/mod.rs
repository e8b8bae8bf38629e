//! Iterated wreath products on tree leaves, their exact cycle-type
//! statistics, and Frobenius sampling to compare against.

mod distribution;
mod group;
mod perm;

pub use distribution::{
    CycleTypeDistribution, class_cycle_distribution, conjugacy_classes, exact_cycle_distribution,
    frobenius_distribution, total_variation, total_variation_exact,
};
pub use group::{
    DEFAULT_LEAF_CAP, DEFAULT_ORDER_CAP, PermGroup, cyclic_generators, index2_candidate, symmetric_generators,
    tower_group, wreath_generators, wreath_order,
};
pub use perm::{Permutation, partition_key};

//! Structure of quasigroups of order 4: semilinearity, reducibility, root
//! operations, exhaustive censuses and the counting recurrence.

pub mod census;
pub mod partition;
pub mod recurrence;
pub mod reduction;
pub mod semilinear;

pub use census::{census, semilinear_counts, CensusRecord, PerA};
pub use partition::{partition_count, shapes, PartitionShape};
pub use recurrence::{q4_recurrence, RecurrenceRow};
pub use reduction::{
    binary_loop_name, find_reduction, reduction_through, root_classification, ReductionWitness,
    RootClass,
};
pub use semilinear::{
    classify_semilinearity, is_a_semilinear, semilinear_epsilon, SemilinearClass,
};

pub use crate::trades::value_support;

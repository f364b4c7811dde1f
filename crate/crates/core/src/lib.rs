//! Exact computations around the noncrossing partition lattice: the dual
//! Garside normality relation on braids and the counts it induces, and
//! moment/cumulant transforms for free, classical and Boolean cumulants,
//! including cumulants of products of independent variables.

pub mod dual_braid;
pub mod error;
pub mod free_cumulants;
pub mod garside_count;
pub mod limits;
pub mod linalg;
pub mod nc_lattice;
pub mod partition;
pub mod partition_families;
pub mod permutation;

pub use dual_braid::BraidWord;
pub use error::{Error, Result};
pub use free_cumulants::{ExactSeq, FormalSeries, SeqRole};
pub use limits::Limits;
pub use nc_lattice::{BlockProfile, NcPartition};
pub use partition::SetPartition;
pub use partition_families::{FamilyPartition, IntervalPartition, LatticeFamily};
pub use permutation::Permutation;

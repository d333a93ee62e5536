//! Brute-force Ramsey oracles over small finite structures.
//!
//! Every search here is exhaustive within its stated bounds. Searches whose
//! size would exceed a budget refuse with [`Error::BudgetExceeded`] instead
//! of sampling.
//!
//! [`Error::BudgetExceeded`]: crate::Error::BudgetExceeded

mod arrow;
mod coloring;
mod counts;
mod hl;
mod milliken;

pub use arrow::{arrow_check, ArrowVerdict};
pub use coloring::{level_product_domain, subset_domain, tree_key, Coloring, Key};
pub use counts::{
    devlin_type_count, laver_count_at_depth, laver_type_count, persistence_check, LaverCount,
    LaverNotion, DEVLIN_BOUND,
};
pub use hl::{hl_solve, HlWitness};
pub use milliken::{extensions, milliken_reduce, Reduction};

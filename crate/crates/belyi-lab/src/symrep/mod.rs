//! Exact symmetric-group representation theory: hook lengths and dimensions,
//! Murnaghan–Nakayama characters, rim-hook counts via k-quotients, and the
//! dimension/partition bounds used by the mixing estimates.

mod bounds;
mod hook;
mod mn;
mod quotient;
mod table1;

pub use bounds::{
    dimension_lower_bounds_check, fomin_lulov_check, partition_count_bound_check, prop42_sum,
    FominLulovReport, LowerBoundsReport, PartitionBoundReport,
};
pub use hook::{dimension, hook_grid, syt_count, HookGrid};
pub use mn::{character_column, mn_character, rim_hook_sign_split, MnEvaluator};
pub use quotient::{core_and_quotient, rim_hook_count};
pub use table1::{table1_verify, Table1Cell, Table1Report, Table1Row};

pub(crate) use bounds::ln_biguint as ln_big;
pub(crate) use mn::rim_hook_removals;

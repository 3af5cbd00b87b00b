//! Longest tandem scattered subsequence (the longest subsequence occurring
//! twice without overlap) computed by decremental string comparison.
//!
//! The layers, bottom up:
//!
//! - [`ordered_list`]: finger-tree backed lists keyed in decreasing order.
//! - [`dynamic_lis`]: the threshold structure, maintaining a longest
//!   increasing subsequence under append, batched append and extract-min,
//!   with enumeration of every LIS.
//! - [`string_compare`]: LCS of a growing `P` and a front-shrinking `S`
//!   through the LCS-to-LIS reduction.
//! - [`ltss`]: the scan over all splits of a string.
//! - [`oracle`]: brute-force references for testing and `--verify`.
//! - [`cli`]: the `tandem` command.

pub mod cli;
pub mod dynamic_lis;
pub mod ltss;
pub mod oracle;
pub mod ordered_list;
pub mod string_compare;

pub use dynamic_lis::{Counters, LisError, ThresholdStructure};
pub use ltss::{compute_ltss, ltss_stats, LtssResult, LtssStats};
pub use ordered_list::{LisEntry, OrderedList, Position, Value};
pub use string_compare::{Comparator, MatchIndex};

//! Word, divisibility, invertibility and maximal-subgroup problems for
//! special monoids `⟨a_1..a_n | A_1 = 1, ..., A_k = 1⟩`, together with a
//! small-cancellation word-problem engine for the groups they induce.

pub mod abelian;
pub mod cwords;
pub mod decision;
pub mod oracle;
pub mod overlap;
pub mod presentation;
pub mod search;
pub mod smallcancel;
pub mod words;

pub use cwords::{distinguish, make_tuple, CWordError, Distinguished, Tuple};
pub use decision::{Decider, DecisionError};
pub use oracle::{select_oracle, Budget, OracleError, OracleHandle, Verdict};
pub use overlap::{delta, omega, reduce_list, WordList};
pub use presentation::{parse_presentation, GroupPresentation, SpecialPresentation};
pub use words::{Alphabet, GroupWord, Word};

//! ω-automata over dense letter ids and the language pipeline connecting
//! them: evaluation, complement, intersection, alternation removal,
//! determinization and emptiness.

mod alternation;
mod apw;
mod dpw;
mod formula;
mod lasso;
mod mealy;
mod nbw;
mod safra;

pub use alternation::{abw_to_nbw, apw_to_abw, apw_to_nbw};
pub use apw::{dualize_apw, intersect_apws, union_apws, Apw};
pub use dpw::{complement_dpw, eval_dpw_pair, Dpw, DpwIssue, Letter, PairDpw, PairDpwBuilder};
pub use formula::Formula;
pub use lasso::{canonicalize_lasso, zip_periodic, Lasso};
pub use mealy::Mealy;
pub use nbw::{intersect_nbws, nbw_empty, nbw_lasso_member, Nbw};
pub use safra::determinize_nbw;

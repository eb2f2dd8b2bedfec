//! Minimal forbidden families, split graphs and the unsplit size bound, and
//! the packing-or-deletion dichotomy.

mod bounds;
mod family;
mod lep;
mod split;

pub use bounds::{bound_summary, unsplit_sequence, unsplit_size_bound, unsplit_size_digits, BoundError, BoundSummary};
pub use family::{
    enumerate_minimal_forbidden, is_minimal_non_member, FamilyError, FamilySource, ForbiddenFamily,
    ENUMERATION_MAX_VERTICES,
};
pub use lep::{
    greedy_packing, lep_dichotomy, verify_deletion, verify_packing, DeletionWitness, Dichotomy, DichotomyError,
    Outcome, Packing,
};
pub use split::{find_split, verify_separation, Separation, SplitError, SPLIT_MAX_VERTICES};

//! Open sets coded by families of basic open sets: good families over
//! locally compact spaces, saturated families over the Baire space, and the
//! σ-compact goodness predicate over `ℚ × 2^ω`.

mod lc;
mod saturated;
mod sigma;

use std::fmt;
use std::sync::Arc;

use crate::spaces::Cylinder;

pub use lc::{
    closure_within, dyadic_fragment, family_union_member, lc_encode_open, lc_goodness_check,
    lc_split_neighborhood, omega_cantor_fragment, GoodSetDesc, LcFamily, LcSplit,
};
pub use saturated::{
    baire_fragment, refines, sat_encode_open, sat_split_neighborhood, sat_union_member,
    sat_verify_fragment, SatSplit, SaturatedFamilyDesc,
};
pub use sigma::{
    rational_cantor_fragment, sigma_closure_within, sigma_distinct_witness, sigma_encode_open,
    sigma_family_split, sigma_goodness_check, sigma_union_member, SigmaFamily, SigmaSplit,
};

/// A hand-written membership rule overriding the region-derived one.
pub type BasisRule = Arc<dyn Fn(&Cylinder) -> bool + Send + Sync>;

/// Semidecision of membership in `⋃G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnionVerdict {
    /// A member of the family containing the point.
    In(Cylinder),
    /// No member among the basic sets scanned up to the budget.
    OutAtBudget(usize),
}

impl UnionVerdict {
    pub fn is_in(&self) -> bool {
        matches!(self, UnionVerdict::In(_))
    }
}

/// Result of checking a family on a finite fragment of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckVerdict {
    /// No violation inside the fragment.
    Pass,
    /// No violation inside the fragment with quantifiers bounded by the depth.
    PassAt(usize),
    Fail { witness: Cylinder, reason: String },
}

impl CheckVerdict {
    pub fn is_pass(&self) -> bool {
        !matches!(self, CheckVerdict::Fail { .. })
    }
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckVerdict::Pass => f.write_str("pass"),
            CheckVerdict::PassAt(d) => write!(f, "pass-at-{d}"),
            CheckVerdict::Fail { witness, reason } => write!(f, "fail at {witness}: {reason}"),
        }
    }
}

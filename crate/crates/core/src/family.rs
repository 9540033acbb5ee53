//! Evaluators for universal families: a parameter space, a base space and a
//! membership procedure with explicit depth budgets.

use serde::Serialize;

use crate::error::Result;

/// Three-valued membership with an explicit depth qualifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Membership {
    In,
    Out,
    /// Neither verdict was reached within the depth budget.
    Unknown { depth: usize },
}

impl Membership {
    pub fn is_in(self) -> bool {
        self == Membership::In
    }

    pub fn is_out(self) -> bool {
        self == Membership::Out
    }
}

/// A family `U ⊆ X × Y` given by a membership procedure, together with an
/// encoder taking a set description to a parameter whose section is that set.
pub trait UniversalFamily: Send + Sync {
    type Param: Clone + Send + Sync;
    type Point: Clone + Send + Sync;
    type Set;

    /// Whether `(x, y) ∈ U`, looking at most `depth` letters into any stream.
    fn member(&self, x: &Self::Param, y: &Self::Point, depth: usize) -> Result<Membership>;

    /// A parameter `x` with `U_x` equal to the described set.
    fn encode(&self, s: &Self::Set) -> Result<Self::Param>;
}

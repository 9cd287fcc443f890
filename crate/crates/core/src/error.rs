use std::fmt;

use thiserror::Error;

/// Named elements that exhibit a violated law or clause, e.g. `x=1, y=^1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness(pub Vec<(&'static str, String)>);

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, role: &'static str, value: impl Into<String>) -> Self {
        self.0.push((role, value.into()));
        self
    }

    pub fn get(&self, role: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(r, _)| *r == role)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (role, value)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{role}={value}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("poset has no elements")]
    EmptyPoset,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("order table is not a partial order: {0}")]
    NotPartialOrder(Witness),
    #[error("poset has no least element")]
    NoBottom,
    #[error("poset has no greatest element")]
    NoTop,
    #[error("`{0}` and `{1}` have no greatest lower bound")]
    NoMeet(String, String),
    #[error("`{0}` and `{1}` have no least upper bound")]
    NoJoin(String, String),
    #[error("table has dimensions {found:?}, expected {expected:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("map is not a zero-preserving semilattice morphism ({clause}): {witness}")]
    MorphismViolated {
        clause: &'static str,
        witness: Witness,
    },
    #[error("filter family does not match the carrier: {0}")]
    FilterFamily(&'static str),
    #[error("preimage of `{0}` is not a proper Scott-open filter")]
    PreimageNotProperFilter(String),
    #[error("compatibility axiom {axiom} violated: {witness}")]
    AxiomViolated {
        axiom: &'static str,
        witness: Witness,
    },
    #[error("compatibility is not separating: {0}")]
    NotSeparating(Witness),
    #[error("map is not an isomorphism: {0}")]
    NotIso(Witness),
    #[error("ambiguous representation clause {clause} violated: {witness}")]
    RepViolated {
        clause: &'static str,
        witness: Witness,
    },
    #[error("representation is not induced by a morphism: {0}")]
    NotFunctional(Witness),
    #[error("middle semilattices of the composed representations differ")]
    MiddleMismatch,
    #[error("objects live over different semilattices or lattices: {0}")]
    CarrierMismatch(&'static str),
    #[error("quantale axiom {axiom} violated: {witness}")]
    QuantaleViolated {
        axiom: &'static str,
        witness: Witness,
    },
    #[error("lattice-valued representation clause {clause} violated: {witness}")]
    FuzzyRepViolated {
        clause: &'static str,
        witness: Witness,
    },
    #[error("cut family is not a valid lattice-valued representation ({clause}): {witness}")]
    CutFamilyInvalid {
        clause: &'static str,
        witness: Witness,
    },
    #[error("quantale is defined over a different lattice than the representations")]
    QuantaleLatticeMismatch,
    #[error("{operation}: instance size {size} exceeds oracle cap {cap}")]
    SizeCap {
        operation: &'static str,
        size: usize,
        cap: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

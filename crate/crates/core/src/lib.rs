//! Finite residuated-lattice toolkit.
//!
//! Builds and validates finite residuated lattices, computes their lattices
//! of convex subalgebras, polars, primes, normal subalgebras, congruences and
//! quotients, decides semilinearity and Hamiltonicity by several independent
//! routes, enumerates small lattices and their residuated expansions, and
//! evaluates the parametric rational chain `B_n` in exact arithmetic.

pub mod algebra;
pub mod convexity;
pub mod enumeration;
pub mod format;
pub mod laws;
pub mod normality;
pub mod report;
pub mod spectrum;
pub mod structures;
pub mod term;

pub use algebra::{Elem, FiniteResiduatedLattice, RawAlgebra, Subset};
pub use convexity::{ConvLattice, ConvexSubalgebra};
pub use term::{Law, LawKind, Term};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("leq is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("order is not a lattice: elements {0} and {1} lack a {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("multiplication not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit is not a two-sided identity at element {0}")]
    UnitNotIdentity(usize),
    #[error("residuation law fails at x={0}, y={1}, z={2}")]
    ResiduationFails(usize, usize, usize),
    #[error("inconsistent tables: {0}")]
    InconsistentTables(String),
    #[error("no maximum in {{y : {0}*y <= {1}}}; monoid is not residuated on this lattice")]
    NoMaximum(usize, usize),
    #[error("algebra is not e-cyclic")]
    NotECyclic,
    #[error("algebra is not integral")]
    NotIntegral,
    #[error("subalgebra is not normal")]
    NotNormal,
    #[error("subalgebra is not prime")]
    NotPrime,
    #[error("algebra is not a GBL-algebra")]
    NotGBL,
    #[error("law uses {0} variables, above the cap of {1}")]
    VariableCapExceeded(usize, usize),
    #[error("unbound variable {0} in term")]
    UnboundVariable(usize),
    #[error("term uses constant f but the algebra has no designated f")]
    MissingConstantF,
    #[error("empty set not allowed here")]
    EmptySet,
    #[error("size {0} exceeds guard {1}; pass force to override")]
    SizeGuard(usize, usize),
    #[error("distributivity violated in the convex-subalgebra lattice (internal bug)")]
    DistributivityViolation,
    #[error("B_n elements come from different chain parameters ({0} vs {1})")]
    ParameterMismatch(u64, u64),
    #[error("unknown builtin algebra `{0}`")]
    UnknownName(String),
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("syntax error at line {0}: {1}")]
    SyntaxError(usize, String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate block `{0}` in algebra file")]
    DuplicateBlock(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Which side of the construction a step belongs to: assigning a target for
/// a domain point (`Domain`) or a preimage for a codomain point (`Codomain`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Domain,
    Codomain,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Domain => write!(f, "domain"),
            Side::Codomain => write!(f, "codomain"),
        }
    }
}

/// Errors across the toolkit.
///
/// `CapExceeded`, `PairBudgetExceeded` are capacity errors (the input is fine
/// but larger than the configured search limits); `Exhausted` reports that the
/// bijection construction ran out of choices, which on finite covers is a
/// legitimate outcome, not a bug.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {cols} entries")]
    NotSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },

    #[error("a metric space needs at least one point")]
    EmptySpace,

    #[error("point index {index} out of range for space of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("subset is empty where a nonempty subset is required")]
    EmptySubset,

    #[error(
        "subset built for a space of size {subset_size} used with a space of size {space_size}"
    )]
    ParentMismatch {
        subset_size: usize,
        space_size: usize,
    },

    #[error("mapping image has {got} entries, domain size is {expected}")]
    NotTotal { got: usize, expected: usize },

    #[error("relation is empty")]
    EmptyRelation,

    #[error("relation is not a correspondence: {side} point {index} is unmatched")]
    NotACorrespondence { side: Side, index: usize },

    #[error("cover member {member} is invalid: {reason}")]
    InvalidCoverMember { member: usize, reason: String },

    #[error("cover does not contain point {index}")]
    CoverMissesPoint { index: usize },

    #[error("selector assigns point {index} to member {member}, which does not contain it")]
    SelectorMismatch { index: usize, member: usize },

    #[error("eps must be positive")]
    NonPositiveEps,

    #[error("sizes ({x}, {y}) exceed the search cap {cap}")]
    CapExceeded { x: usize, y: usize, cap: usize },

    #[error("mapping-pair enumeration needs {needed} pairs, budget is {budget}")]
    PairBudgetExceeded { needed: u128, budget: u64 },

    #[error("class {class} is infeasible for sizes ({x}, {y})")]
    InfeasibleClass {
        class: &'static str,
        x: usize,
        y: usize,
    },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("construction exhausted at step {step} ({side} side) after {nodes} nodes")]
    Exhausted { step: usize, side: Side, nodes: u64 },

    #[error("no witness: the requested budget does not exceed the Gromov-Hausdorff distance")]
    WitnessNotFound,
}

pub type Result<T> = std::result::Result<T, Error>;

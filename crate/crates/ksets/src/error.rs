use crate::instance::Violation;

/// Everything that can go wrong across the crate.
///
/// Failed *verdicts* are data, not errors; these variants mark inputs the
/// pipeline cannot process or internal cross-checks whose failure means a bug
/// (or a violated structural assumption) that must surface, never be
/// swallowed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("points share an x-coordinate; the line through them is vertical")]
    VerticalLine,
    #[error("lines have equal slope and different offsets")]
    Parallel,
    #[error("lines are identical")]
    Coincident,
    #[error("k = {k} out of range for n = {n}")]
    BadK { k: usize, n: usize },
    #[error("instance needs at least 2 points, got {n}")]
    TooFewPoints { n: usize },
    #[error("general position violated: {0:?}")]
    GeneralPosition(Vec<Violation>),
    #[error("primal/dual cross-check failed while building G: {0}")]
    CrossCheckMismatch(String),
    #[error("no eligible chain crossing to charge a tangent to: {0}")]
    ChargeFailure(String),
    #[error("crossing does not map to a valid common tangent: {0}")]
    TangentViolation(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: rational must have a positive denominator")]
    BadRational { line: usize },
    #[error("expected {expected} points, file contains {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("could not generate a valid instance within {0} attempts")]
    RetriesExhausted(usize),
}

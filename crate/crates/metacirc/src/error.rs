use crate::graph::Violation;

fn violations_text(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(thiserror::Error, Debug)]
pub enum Error {
    /// Structurally malformed spec: wrong set count, out-of-range entry,
    /// unparseable JSON, and similar.
    #[error("malformed spec: {0}")]
    SpecShape(String),

    /// Spec is well-formed but breaks the construction conditions.
    #[error("invalid spec: {}", violations_text(.0))]
    InvalidSpec(Vec<Violation>),

    /// Forced construction produced contradictory edge requirements.
    #[error("inconsistent construction: {0}")]
    InconsistentConstruction(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Graph unsuitable as a code seed (self-loop or asymmetric rows).
    #[error("graph unsuitable for code construction: {0}")]
    BadGraphForCode(String),

    /// Full sweep over 2^len codewords would exceed the enumeration budget.
    #[error("refusing 2^{len} enumeration, budget allows up to 2^{cap}")]
    BudgetRefused { len: usize, cap: usize },

    /// The connection-set parity and the graph-degree parity disagreed,
    /// which cannot happen when the code really comes from the spec's graph.
    #[error(
        "type criteria disagree: Delta_S = {delta_s} but all-degrees-odd = {degrees_all_odd}"
    )]
    TypeCriteriaDisagree { delta_s: u32, degrees_all_odd: bool },

    #[error("code is not symplectic self-dual")]
    NotSelfDual,

    /// A parameter-propagation rule was applied outside its precondition.
    #[error("rule not applicable: {0}")]
    RuleViolation(String),

    #[error("search error: {0}")]
    Search(String),
}

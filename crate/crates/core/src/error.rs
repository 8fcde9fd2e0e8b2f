use std::fmt;

/// Errors surfaced by the algebra layer.
///
/// Construction-time validation failures (bad duals, ill-defined maps) and
/// arithmetic failures (division by zero, mixed fields) all funnel through
/// this one enum so the CLI can print a single-line reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    DivisionByZero,
    FieldMismatch,
    NotPrime(u64),
    CharacteristicTwo,
    EmptyDuals,
    ZeroPolynomial,
    Inhomogeneous(String),
    DependentDuals,
    DegreeMismatch(String),
    AmbientMismatch(String),
    IllDefinedMap(String),
    NotSurjective(String),
    NoTotalThomClass { left: String, right: String },
    NotAConnectedSum(String),
    SaturationFailed { degree: u32 },
    HypothesisNotMet(String),
    NeedsFieldExtension(String),
    NoLinearForms,
    Internal(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use AlgebraError::*;
        match self {
            DivisionByZero => write!(f, "division by zero"),
            FieldMismatch => write!(f, "elements belong to different fields"),
            NotPrime(p) => write!(f, "{p} is not prime"),
            CharacteristicTwo => write!(f, "operation requires characteristic != 2"),
            EmptyDuals => write!(f, "at least one dual generator is required"),
            ZeroPolynomial => write!(f, "zero polynomial is not a valid dual generator"),
            Inhomogeneous(what) => write!(f, "inhomogeneous polynomial: {what}"),
            DependentDuals => write!(f, "dual generators are linearly dependent"),
            DegreeMismatch(what) => write!(f, "degree mismatch: {what}"),
            AmbientMismatch(what) => write!(f, "ambient mismatch: {what}"),
            IllDefinedMap(what) => write!(f, "map is not well defined: {what}"),
            NotSurjective(what) => write!(f, "map is not surjective: {what}"),
            NoTotalThomClass { left, right } => write!(
                f,
                "no total Thom class: pi_A(tau_A) = {left} differs from pi_B(tau_B) = {right}"
            ),
            NotAConnectedSum(what) => write!(f, "not a connected sum: {what}"),
            SaturationFailed { degree } => write!(
                f,
                "ideal fails to saturate at degree {degree}; generator degrees are unreliable"
            ),
            HypothesisNotMet(what) => write!(f, "hypothesis not met: {what}"),
            NeedsFieldExtension(what) => write!(f, "field extension required: {what}"),
            NoLinearForms => write!(f, "algebra has no linear forms"),
            Internal(what) => write!(f, "internal consistency error: {what}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

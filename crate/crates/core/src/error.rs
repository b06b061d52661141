use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error at node {path}: {reason}")]
    Domain { path: String, reason: String },

    #[error("singular metric: |det g| = {det:e}")]
    SingularMetric { det: f64 },

    #[error("signature mismatch: expected {expected}, found {negative} negative eigenvalue(s)")]
    SignatureMismatch { expected: String, negative: usize },

    #[error("dimension error: {what} needs n >= {min}, got n = {n}")]
    Dimension {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("not a solution: G^h residual {residual:e} exceeds {limit:e}")]
    NotASolution { residual: f64, limit: f64 },

    #[error("ill-conditioned spectrum: clusters {gap:e} apart, below {limit:e}")]
    IllConditioned { gap: f64, limit: f64 },

    #[error("vector field is not lightlike: g(V,V) = {value:e}")]
    NotLightlike { value: f64 },

    #[error("vector field is not pre-geodesic: |∇_V V − kV| = {value:e}")]
    NotGeodesic { value: f64 },

    #[error("gradient of h vanishes: |∇h| = {norm:e}")]
    VanishingGradient { norm: f64 },

    #[error("degenerate ODE state: h = {h:e}")]
    DegenerateState { h: f64 },

    #[error("step size underflow at t = {t}: h = {step:e}")]
    StepFailure { t: f64, step: f64 },

    #[error("parameter {name} = {value} violates {constraint}")]
    ParameterOutOfRange {
        name: String,
        value: f64,
        constraint: String,
    },

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("parse error (line {line}): {msg}")]
    Parse { line: usize, msg: String },

    #[error("resource limit reached: {what} exceeded {limit}")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("{which} differs from the printed polynomial in {count} monomial(s)")]
    GeneratorMismatch {
        which: String,
        count: usize,
        monomials: Vec<String>,
    },
}

impl Error {
    /// Caller errors (unknown ids, bad parameters, malformed manifests) as opposed to evaluation failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::ParameterOutOfRange { .. } | Error::UnknownEntry(_) | Error::Parse { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::SingularMetric { .. } => "singular_metric",
            Error::SignatureMismatch { .. } => "signature_mismatch",
            Error::Dimension { .. } => "dimension",
            Error::NotASolution { .. } => "not_a_solution",
            Error::IllConditioned { .. } => "ill_conditioned",
            Error::NotLightlike { .. } => "not_lightlike",
            Error::NotGeodesic { .. } => "not_geodesic",
            Error::VanishingGradient { .. } => "vanishing_gradient",
            Error::DegenerateState { .. } => "degenerate_state",
            Error::StepFailure { .. } => "step_failure",
            Error::ParameterOutOfRange { .. } => "parameter_out_of_range",
            Error::UnknownEntry(_) => "unknown_entry",
            Error::Parse { .. } => "parse",
            Error::ResourceLimit { .. } => "resource_limit",
            Error::GeneratorMismatch { .. } => "generator_mismatch",
        }
    }

    pub fn domain(path: &[usize], reason: impl Into<String>) -> Self {
        let path = if path.is_empty() {
            "root".to_string()
        } else {
            let parts: Vec<String> = path.iter().map(|i| i.to_string()).collect();
            format!("root/{}", parts.join("/"))
        };
        Error::Domain {
            path,
            reason: reason.into(),
        }
    }
}

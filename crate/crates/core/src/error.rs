use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid size {0} must be a power of two and at least 4")]
    InvalidGridSize(usize),

    #[error("sample buffer of length {len} does not match grid {n} x dimension {m}")]
    ShapeMismatch { len: usize, n: usize, m: usize },

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error("sample {index} has norm {norm} but the map is flagged sphere-valued")]
    NotSphereValued { index: usize, norm: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported fractional order {0}; only 1/4 and 1/2 are available")]
    UnsupportedOrder(f64),

    #[error("cannot synthesize a grid-{spectrum} spectrum on a grid of size {target}")]
    SynthesisGrid { spectrum: usize, target: usize },

    #[error("time parameter must be positive, got {0}")]
    NonPositiveTime(f64),

    #[error("Mobius parameter |a| = {0} is outside the resolvable disk |a| <= 1 - 1e-6")]
    MobiusOutOfDisk(f64),

    #[error("Blaschke factor |a| = {0} must lie strictly inside the unit disk")]
    BlaschkeOutOfDisk(f64),

    #[error("Blaschke factor |a| = {0} exceeds the resolvable bound 0.9")]
    BlaschkeUnresolvable(f64),

    #[error("stereographic projection is undefined at the pole -i (theta = {0})")]
    StereographicPole(f64),

    #[error("hypothesis residual {residual:e} exceeds {bound:e}")]
    HypothesisViolated { residual: f64, bound: f64 },

    #[error("integrand grows too fast for the Gaussian truncation (tail fraction {0:e})")]
    GrowthTooFast(f64),

    #[error("Fourier order {requested} exceeds available order {available}")]
    OrderTooHigh { requested: usize, available: usize },

    #[error("step size {tau} violates the explicit stability bound 2/N = {bound}")]
    StepTooLarge { tau: f64, bound: f64 },

    #[error("flow aborted at step {step}: energy kept increasing after {halvings} step halvings (tau = {tau:e})")]
    FlowStalled { step: usize, halvings: usize, tau: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("singular 2x2 matrix (|det| = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("energy must be positive, got {0} eV")]
    NegativeEnergy(f64),

    #[error("transmission amplitude vanishes (|t| = {0:e}); transfer matrix undefined")]
    ZeroTransmission(f64),

    #[error("transfer matrices built at different wave numbers ({0} vs {1})")]
    MixedWaveNumber(f64, f64),

    #[error("empty transfer-matrix chain")]
    EmptyChain,

    #[error("edge {edge} is at a resonance: |sin(kl)| = {sin:e}")]
    EdgeResonanceSingularity { edge: usize, sin: f64 },

    #[error("Gamma matrix is singular at k = {k} (|det| = {det:e})")]
    SingularGamma { k: f64, det: f64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error(
        "integration step too coarse: Wronskian drift {drift:e} after halving to h = {step:e}"
    )]
    StepTooCoarse { drift: f64, step: f64 },

    #[error("degenerate solution basis: |Delta| = {0:e}")]
    DegenerateBasis(f64),

    #[error("iterated limit did not converge (spread {0:e})")]
    NonConvergent(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operation not supported here: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

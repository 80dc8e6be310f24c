use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index before sequence start: n = {n}, offset = {offset}")]
    IndexBeforeStart { n: i64, offset: i64 },

    #[error("rho vanishes at x = {x}")]
    RhoVanishes { x: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient precision after {bits} bits: {context}")]
    PrecisionExhausted { bits: u32, context: String },

    #[error("count shortfall: measured {measured} < required {required} ({context})")]
    CountShortfall {
        measured: String,
        required: String,
        context: String,
    },

    #[error("annulus does not admit interior ball: inner {inner} >= outer {outer}")]
    AnnulusEmpty { inner: String, outer: String },

    #[error("empty previous level {level}")]
    EmptyPreviousLevel { level: u32 },

    #[error("construction inequality `{tag}` failed at level {level} sublevel {sublevel}: {lhs} {relation} {rhs} is false")]
    Construction {
        tag: String,
        level: u32,
        sublevel: u32,
        lhs: String,
        rhs: String,
        relation: &'static str,
    },

    #[error("no admissible scale index below n_max = {n_max}: {context}")]
    ScaleSearchExhausted { n_max: i64, context: String },

    #[error("insufficient scales: need at least 3 grid exponents, got {0}")]
    InsufficientScales(usize),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

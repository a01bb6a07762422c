use thiserror::Error;

/// Failures while reading or validating well-log files.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LasError {
    #[error("line {line}: missing ~A (ASCII data) section")]
    MissingData { line: usize },
    #[error("missing ~C (curve information) section")]
    MissingCurves,
    #[error("line {line}: wrapped LAS files are not supported (WRAP = YES)")]
    Wrapped { line: usize },
    #[error("line {line}: unsupported LAS version {version}")]
    UnsupportedVersion { line: usize, version: String },
    #[error("line {line}: malformed header line: {text}")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: expected {expected} columns, found {found}")]
    ColumnCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: cannot parse '{token}' as a number")]
    BadFloat { line: usize, token: String },
    #[error("line {line}: depth is missing")]
    MissingDepth { line: usize },
    #[error("line {line}: depth {depth} is not strictly monotonic")]
    NonMonotonicDepth { line: usize, depth: f64 },
    #[error("depth column '{0}' not found")]
    NoDepthColumn(String),
    #[error("duplicate curve mnemonic '{0}'")]
    DuplicateCurve(String),
    #[error("empty curve mnemonic")]
    EmptyMnemonic,
    #[error("curve '{mnemonic}' has {found} samples, depth index has {expected}")]
    CurveLength {
        mnemonic: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {message}")]
    Csv { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConditionError {
    #[error("every sample is missing")]
    AllMissing,
    #[error("depth and samples differ in length ({depth} vs {samples})")]
    LengthMismatch { depth: usize, samples: usize },
    #[error("curve '{0}' not found")]
    CurveNotFound(String),
    #[error("no rows survive conditioning")]
    NoRows,
    #[error("column '{0}' is constant and cannot be scaled")]
    ConstantColumn(String),
    #[error("need at least 2 rows to fit a scaler, got {0}")]
    TooFewRows(usize),
    #[error("scaler expects {expected} columns, got {found}")]
    ScalerShape { expected: usize, found: usize },
    #[error("scenario '{kind}' expects {expected} table(s), got {found}")]
    TableCount {
        kind: String,
        expected: usize,
        found: usize,
    },
    #[error("split produced an empty {0} part")]
    EmptyPart(&'static str),
    #[error("tables have different feature columns")]
    FeatureMismatch,
    #[error("invalid split fractions {0:?}")]
    BadFractions([f64; 3]),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PetroError {
    #[error("sonic transit time must be positive, got {0}")]
    NonPositiveTransitTime(f64),
    #[error("velocity must be positive, got {0}")]
    NonPositiveVelocity(f64),
    #[error("density must be positive, got {0}")]
    NonPositiveDensity(f64),
    #[error("compressional and shear velocities are equal ({0}); Young's modulus is undefined")]
    EqualVelocities(f64),
    #[error("bulk modulus is not positive ({0})")]
    NonPositiveBulkModulus(f64),
    #[error("negative modulus {name} = {value}")]
    NegativeModulus { name: &'static str, value: f64 },
    #[error("Poisson's ratio {0} outside [0, 0.5)")]
    PoissonOutOfRange(f64),
    #[error("degenerate end members: {0}")]
    DegenerateEndMembers(&'static str),
    #[error("fraction {name} = {value} outside [0, 1]")]
    FractionOutOfRange { name: &'static str, value: f64 },
    #[error("zero denominator in photoelectric index")]
    ZeroPeDenominator,
    #[error("empty component list")]
    Empty,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RegressionError {
    #[error("need at least {needed} rows for {cols} coefficients, got {rows}")]
    InsufficientRows {
        rows: usize,
        cols: usize,
        needed: usize,
    },
    #[error("design matrix is rank deficient (collinear columns)")]
    RankDeficient,
    #[error("model expects {expected} columns, got {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("model needs at least one feature")]
    NoFeatures,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NnError {
    #[error("network expects {expected} inputs, got {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("training diverged at epoch {epoch} (SSE is not finite)")]
    Diverged { epoch: usize },
    #[error("damped normal equations are singular at epoch {epoch}")]
    SingularSystem { epoch: usize },
    #[error("invalid training configuration: {0}")]
    BadConfig(String),
    #[error("empty training set")]
    EmptyData,
    #[error(transparent)]
    Scaler(#[from] ConditionError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("actual and predicted lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("empty input")]
    Empty,
    #[error("actual values are constant; R² is undefined")]
    ConstantActual,
    #[error("actual value at index {0} is zero")]
    ZeroActual(usize),
}

/// Top-level error for pipeline and CLI work.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Las(#[from] LasError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error(transparent)]
    Petro(#[from] PetroError),
    #[error(transparent)]
    Regression(#[from] RegressionError),
    #[error(transparent)]
    Nn(#[from] NnError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Pipeline(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// True for failures caused by bad user input (config, usage, unreadable
    /// files) rather than by the pipeline itself.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Config(_) | Error::Io { .. } | Error::Json(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

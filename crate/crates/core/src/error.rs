use core::fmt;

/// Everything that can go wrong in the core crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    EmptyGraph,
    NodeOutOfRange {
        node: u64,
        n: usize,
    },
    Disconnected,
    EmptyNodeSet,
    InvalidState(&'static str),
    InvalidK {
        k: usize,
        n: usize,
        min: usize,
    },
    KTooLarge {
        k: usize,
        max: usize,
    },
    EnumerationCap {
        cap: usize,
    },
    InvalidConfig(&'static str),
    InvalidBoundInputs(&'static str),
    /// A step count (after scaling) does not fit the 2^62 budget.
    StepOverflow {
        level: usize,
        log_steps: f64,
    },
    RejectionCap {
        cap: u64,
    },
    NoEdges,
    InvalidGenerator(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyGraph => write!(f, "graph has no nodes"),
            Error::NodeOutOfRange { node, n } => {
                write!(f, "node id {node} out of range for graph with {n} nodes")
            }
            Error::Disconnected => write!(
                f,
                "graph is disconnected; process components separately or pass --diameter"
            ),
            Error::EmptyNodeSet => write!(f, "node set is empty"),
            Error::InvalidState(why) => write!(f, "invalid subgraph state: {why}"),
            Error::InvalidK { k, n, min } => {
                write!(f, "subgraph size k={k} must satisfy {min} <= k < |V| = {n}")
            }
            Error::KTooLarge { k, max } => write!(f, "k={k} exceeds the supported maximum {max}"),
            Error::EnumerationCap { cap } => {
                write!(f, "state enumeration exceeded the cap of {cap} states")
            }
            Error::InvalidConfig(why) => write!(f, "invalid sampler configuration: {why}"),
            Error::InvalidBoundInputs(why) => write!(f, "invalid bound inputs: {why}"),
            Error::StepOverflow { level, log_steps } => write!(
                f,
                "step count for level {level} is e^{log_steps:.1}, beyond 2^62; \
                 lower --step-ratio or set an explicit step cap"
            ),
            Error::RejectionCap { cap } => {
                write!(f, "rejection loop exceeded {cap} iterations")
            }
            Error::NoEdges => write!(f, "graph has no edge with positive sampling weight"),
            Error::InvalidGenerator(why) => write!(f, "invalid generator parameters: {why}"),
        }
    }
}

impl core::error::Error for Error {}

use std::fmt;
use std::process::ExitCode;

use kstat_core::Error as CoreError;

/// Failures that end a run, each with a stable exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Parse(String),
    UnknownColumn(String),
    InsufficientRows { n: usize, k: usize },
    OrderCap { order: usize, cap: usize },
    Core(CoreError),
}

pub mod code {
    pub const OK: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const IO: u8 = 3;
    pub const PARSE: u8 = 4;
    pub const UNKNOWN_COLUMN: u8 = 5;
    pub const INSUFFICIENT_ROWS: u8 = 6;
    pub const ORDER_CAP: u8 = 7;
    pub const VERIFY_SKIPPED: u8 = 8;
    pub const INTERNAL: u8 = 9;
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => code::USAGE,
            CliError::Io(_) => code::IO,
            CliError::Parse(_) => code::PARSE,
            CliError::UnknownColumn(_) => code::UNKNOWN_COLUMN,
            CliError::InsufficientRows { .. } => code::INSUFFICIENT_ROWS,
            CliError::OrderCap { .. } => code::ORDER_CAP,
            CliError::Core(_) => code::INTERNAL,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Parse(m) => f.write_str(m),
            CliError::UnknownColumn(name) => write!(f, "unknown column '{name}'"),
            CliError::InsufficientRows { n, k } => {
                write!(
                    f,
                    "need at least {k} rows for an order-{k} statistic, input has {n}"
                )
            }
            CliError::OrderCap { order, cap } => {
                write!(f, "order {order} exceeds the cap of {cap}")
            }
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InsufficientSampleSize { n, k } => CliError::InsufficientRows { n, k },
            CoreError::OrderAboveCap { order, cap } => CliError::OrderCap { order, cap },
            CoreError::InvalidResample(m) => CliError::Usage(m),
            other => CliError::Core(other),
        }
    }
}

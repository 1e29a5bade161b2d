use std::fmt;
use std::io::Write;
use std::process::ExitCode;

use crinv_core::fpq::PrimeVerdict;
use crinv_core::Error;
use serde::Serialize;
use serde_json::json;

pub const EXIT_OTHER: u8 = 1;
pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_PRECISION: u8 = 3;
pub const EXIT_BAD_PARAMETERS: u8 = 4;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn usage(msg: &str) -> Self {
        CliError::Usage(msg.to_string())
    }

    pub fn io(e: impl fmt::Display) -> Self {
        CliError::Io(e.to_string())
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Usage(_) => "BadParameters",
            CliError::Io(_) => "Io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::VerificationFailed(_) | Error::StructureViolation(_) => EXIT_VERIFICATION,
                Error::PrecisionExhausted { .. } => EXIT_PRECISION,
                Error::BadParameters(_)
                | Error::DimensionMismatch { .. }
                | Error::NotUnitary(_)
                | Error::OrderExceeded { .. }
                | Error::EnumerationInvalid(_)
                | Error::DomainViolation(_)
                | Error::Parse(_) => EXIT_BAD_PARAMETERS,
                _ => EXIT_OTHER,
            },
            CliError::Usage(_) => EXIT_BAD_PARAMETERS,
            CliError::Io(_) => EXIT_OTHER,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) | CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Error JSON on stderr and the matching exit status.
pub fn fail(e: &CliError) -> ExitCode {
    let doc = json!({ "error": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() });
    eprintln!("{doc}");
    ExitCode::from(e.exit_code())
}

pub fn print_json<W: Write, T: Serialize>(w: &mut W, v: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).map_err(CliError::io)?;
    writeln!(w, "{text}").map_err(CliError::io)
}

pub fn verdict_line(v: &PrimeVerdict) -> String {
    match &v.witness {
        None => format!(
            "p={} q={}: prime (every coefficient of f - x^{} - y^{} is divisible by {})",
            v.p, v.q, v.p, v.p, v.p
        ),
        Some((e, c)) => {
            format!("p={} q={}: composite, witness {} at x^{}y^{}", v.p, v.q, c.0, e[0], e[1])
        }
    }
}

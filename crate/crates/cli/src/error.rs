use std::fmt;
use std::process::ExitCode;

use bentcodes::designs::DesignError;
use bentcodes::lincode::CodeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Precondition,
    Budget,
    Io,
    Certificate,
}

impl Kind {
    pub fn code(self) -> ExitCode {
        ExitCode::from(match self {
            Kind::Precondition => 1,
            Kind::Budget => 2,
            Kind::Io => 3,
            Kind::Certificate => 4,
        })
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub source: anyhow::Error,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.source)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn precondition(e: impl Into<anyhow::Error>) -> CliError {
    CliError { kind: Kind::Precondition, source: e.into() }
}

pub fn io(e: impl Into<anyhow::Error>) -> CliError {
    CliError { kind: Kind::Io, source: e.into() }
}

pub fn certificate(msg: impl Into<String>) -> CliError {
    CliError { kind: Kind::Certificate, source: anyhow::anyhow!(msg.into()) }
}

pub fn bail<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(precondition(anyhow::anyhow!(msg.into())))
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        let kind = match e {
            CodeError::DimensionTooLarge { .. } => Kind::Budget,
            _ => Kind::Precondition,
        };
        CliError { kind, source: anyhow::Error::new(e).context(match kind {
            Kind::Budget => "budget guard BENTCODES_BUDGET",
            _ => "code error",
        }) }
    }
}

impl From<DesignError> for CliError {
    fn from(e: DesignError) -> Self {
        match e {
            DesignError::Code(c) => c.into(),
            DesignError::SdpTooLarge { .. } => {
                CliError { kind: Kind::Budget, source: anyhow::Error::new(e).context("budget guard SDP_MAX_BLOCKS") }
            }
            other => precondition(other),
        }
    }
}

macro_rules! precondition_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                precondition(e)
            }
        }
    )*};
}

precondition_from!(
    bentcodes::gf2e::GfError,
    bentcodes::boolfun::BoolFunError,
    bentcodes::bentvec::BentVecError,
    bentcodes::amcheck::AmError,
    bentcodes::bits::BitParseError
);

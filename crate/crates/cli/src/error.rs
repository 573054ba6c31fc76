use std::fmt;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Usage,
    Data,
    Internal,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        match self {
            ExitKind::Usage => 1,
            ExitKind::Data => 2,
            ExitKind::Internal => 3,
        }
    }
}

/// A failure tagged with the pipeline stage it happened in.
#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub stage: &'static str,
    pub message: String,
}

impl CliError {
    pub fn usage(stage: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind: ExitKind::Usage,
            stage,
            message: message.into(),
        }
    }

    pub fn data(stage: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind: ExitKind::Data,
            stage,
            message: message.into(),
        }
    }

    pub fn internal(stage: &'static str, message: impl Into<String>) -> Self {
        CliError {
            kind: ExitKind::Internal,
            stage,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.message)
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;

/// Attaches a stage to library errors.
pub trait StageExt<T> {
    fn stage(self, stage: &'static str) -> CliResult<T>;
}

impl<T> StageExt<T> for microframe::Result<T> {
    fn stage(self, stage: &'static str) -> CliResult<T> {
        self.map_err(|e| {
            let kind = match e {
                microframe::Error::InvalidArgument(_) | microframe::Error::NoBootstrapSamples => {
                    ExitKind::Usage
                }
                _ => ExitKind::Data,
            };
            CliError {
                kind,
                stage,
                message: e.to_string(),
            }
        })
    }
}

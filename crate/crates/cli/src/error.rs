use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
    #[error("{0}")]
    Schema(String),
    /// at least one descriptor fell in the undecided case; the rest were reported
    #[error("{0}")]
    Omitted(String),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Output(_) => 1,
            Self::Schema(_) => 2,
            Self::Omitted(_) => 3,
            Self::ChecksFailed(_) => 4,
        }
    }
}

pub fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let io = || std::io::Error::other("x");
        assert_eq!(
            CliError::Io {
                path: "a".into(),
                source: io()
            }
            .exit_code(),
            1
        );
        assert_eq!(CliError::Output(io()).exit_code(), 1);
        assert_eq!(schema("x").exit_code(), 2);
        assert_eq!(CliError::Omitted("x".into()).exit_code(), 3);
        assert_eq!(CliError::ChecksFailed(1).exit_code(), 4);
    }
}

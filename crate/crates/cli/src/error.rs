use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Input {
        path: PathBuf,
        #[source]
        source: quatcomp::Error,
    },

    #[error("mask {} is {mask_rows}x{mask_cols} but the image is {rows}x{cols}", path.display())]
    MaskShape {
        path: PathBuf,
        mask_rows: usize,
        mask_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("{0}")]
    Usage(String),

    #[error("cannot write {}: {source}", path.display())]
    Output {
        path: PathBuf,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },

    #[error(transparent)]
    Solver(#[from] quatcomp::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for problems with what the user supplied, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } | CliError::MaskShape { .. } | CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

//! The staged certification run.
//!
//! | stage | content |
//! |---|---|
//! | 0 | weighted homogeneity of `Q_{p,q}` and the `q = 1` normalization |
//! | 1 | coefficient comparison of the symmetric quintic ansatz: `E2`, `E3` |
//! | 2 | `F = prim(Res_d(E2, E3) / r^20)` and its identities |
//! | 3 | `f(s, y)` from `a = r y`, `s = r^2` |
//! | 4 | `disc_y f` and its factorization |
//! | 5 | no rational roots of `P6`, `P28` |
//! | 6 | positive roots of `P6`, `P28` in rational brackets |
//! | 7 | no real roots of `f(s0, y)` at one sample per stratum |
//! | 8 | the factorization of `f(1, y)` |
//!
//! Later stages consume the outputs of earlier ones. A stage asked for
//! without its inputs first looks in the cache directory, then recomputes
//! the missing stages without reporting them.

mod cuboid;
pub mod format;
pub mod golden;
mod instance;
mod report;
mod stages;

pub use cuboid::{build_qpq, build_qr, CuboidInstance};
pub use golden::{default_golden_dir, GoldenData};
pub use instance::{instance_check, InstanceChecker, InstanceReport};
pub use report::{Assertion, Certificate, StageReport, Status, Verdict};
pub use stages::{stage0_check, DumpObject, Pipeline};

use crate::error::AlgebraError;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const STAGE_COUNT: u8 = 9;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("checksum mismatch for {file}: expected {expected}, got {got}")]
    Checksum {
        file: String,
        expected: String,
        got: String,
    },
    #[error("golden data: {0}")]
    Golden(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid stage list: {0}")]
    StageList(String),
    #[error("input unavailable: {0}")]
    Unavailable(String),
}

impl PipelineError {
    pub fn io(path: &Path, err: std::io::Error) -> PipelineError {
        PipelineError::Io {
            path: path.to_path_buf(),
            message: err.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    /// Stages to run and report, ascending.
    pub stages: Vec<u8>,
    pub golden_dir: PathBuf,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
    pub keep_going: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            stages: (0..STAGE_COUNT).collect(),
            golden_dir: default_golden_dir(),
            cache_dir: None,
            jobs: 1,
            keep_going: false,
        }
    }
}

/// Parse `"0,2,4-7"` into a sorted, deduplicated stage list.
pub fn parse_stage_list(src: &str) -> Result<Vec<u8>, PipelineError> {
    let bad = || PipelineError::StageList(src.to_string());
    let mut out = std::collections::BTreeSet::new();
    for part in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (lo, hi) = match part.split_once('-') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (part, part),
        };
        let lo: u8 = lo.parse().map_err(|_| bad())?;
        let hi: u8 = hi.parse().map_err(|_| bad())?;
        if lo > hi || hi >= STAGE_COUNT {
            return Err(bad());
        }
        out.extend(lo..=hi);
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out.into_iter().collect())
}

/// Load golden data and run the configured stages.
pub fn run_all(config: &Config) -> Result<Certificate, PipelineError> {
    let golden = GoldenData::load(&config.golden_dir)?;
    Ok(Pipeline::new(golden, config.clone()).run())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_lists() {
        assert_eq!(parse_stage_list("4,5,6,7").unwrap(), vec![4, 5, 6, 7]);
        assert_eq!(parse_stage_list("0-2, 8,1").unwrap(), vec![0, 1, 2, 8]);
        assert!(parse_stage_list("9").is_err());
        assert!(parse_stage_list("x").is_err());
        assert!(parse_stage_list("").is_err());
        assert!(parse_stage_list("5-3").is_err());
    }
}

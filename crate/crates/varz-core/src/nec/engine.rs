//! External engine invocation and the average-gain validity test.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use super::deck::NecDeck;
use super::parse::{parse_nec_output, ParseOptions};
use crate::antenna::SweepTable;
use crate::{Error, Result};

/// Environment variable naming the default engine executable.
pub const ENGINE_ENV: &str = "VARZ_NEC_ENGINE";

/// How to run the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub path: PathBuf,
    pub timeout: Duration,
}

impl EngineConfig {
    pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(300);

    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into(), timeout: Self::DEFAULT_TIMEOUT }
    }

    /// Engine named by `VARZ_NEC_ENGINE`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(ENGINE_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }
}

/// Result of one engine run.
#[derive(Debug, Clone, PartialEq)]
pub struct NecRunOutput {
    pub table: SweepTable,
    pub file_id: String,
    /// Listing written by the engine.
    pub listing_path: PathBuf,
}

/// Writes `<name>.NEC` and the `INFILE.DAT` pointer file (input and output
/// file names, one per line) into `workdir`, runs the engine there with no
/// arguments, and parses `<name>.OUT`.
///
/// Runs in distinct working directories are independent; a directory must
/// not be shared by concurrent runs.
pub fn run_engine(deck: &NecDeck, engine: &EngineConfig, workdir: &Path, opts: &ParseOptions) -> Result<NecRunOutput> {
    fs::create_dir_all(workdir)?;
    let input = format!("{}.NEC", deck.name);
    let output = format!("{}.OUT", deck.name);
    let listing_path = workdir.join(&output);
    if listing_path.exists() {
        fs::remove_file(&listing_path)?;
    }
    fs::write(workdir.join(&input), deck.to_string())?;
    fs::write(workdir.join("INFILE.DAT"), format!("{input}\n{output}\n"))?;

    let log = fs::File::create(workdir.join("engine.log"))?;
    let mut child = Command::new(&engine.path)
        .current_dir(workdir)
        .stdin(Stdio::null())
        .stdout(log.try_clone()?)
        .stderr(log)
        .spawn()
        .map_err(|source| Error::Spawn { path: engine.path.clone(), source })?;

    let started = Instant::now();
    let status = loop {
        if let Some(status) = child.try_wait()? {
            break status;
        }
        if started.elapsed() >= engine.timeout {
            let _ = child.kill();
            let _ = child.wait();
            return Err(Error::Timeout { secs: engine.timeout.as_secs() });
        }
        thread::sleep(Duration::from_millis(10));
    };
    if !status.success() {
        return Err(Error::EngineExit { code: status.code() });
    }
    let text = fs::read_to_string(&listing_path)
        .map_err(|e| Error::EngineFailure(format!("no listing at {}: {e}", listing_path.display())))?;
    let mut opts = opts.clone();
    opts.expected_file_id = Some(deck.file_id.clone());
    let parsed = parse_nec_output(&text, &opts)?;
    match parsed.table {
        Some(table) if parsed.run_complete => {
            Ok(NecRunOutput { table, file_id: deck.file_id.clone(), listing_path })
        }
        _ => Err(Error::EngineFailure(format!("{} lacks the RUN TIME completion marker", listing_path.display()))),
    }
}

/// Acceptable range of the average power gain of a lossless model.
pub const AGT_RANGE: (f64, f64) = (0.8, 1.2);

/// Per-value pass flags for the average-gain test.
pub fn agt_validate(avg_power_gain: &[f64]) -> Vec<bool> {
    avg_power_gain.iter().map(|g| (AGT_RANGE.0..=AGT_RANGE.1).contains(g)).collect()
}

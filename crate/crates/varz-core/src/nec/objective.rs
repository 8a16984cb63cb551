//! Engine-backed antenna objectives for the optimizer.

use std::fs;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use super::deck::{gen_bowtie_deck, gen_yagi_deck, new_file_id, BowtieDesign, DeckMeta, FreqSweep, YagiDesign};
use super::engine::{run_engine, EngineConfig};
use super::parse::{ForwardDirection, ParseOptions};
use crate::antenna::{bowtie_fitness, summarize_rows, yagi_fitness, YagiCoefficients, INVALID_MODEL_FITNESS};
use crate::cfo::{DecisionSpace, Objective};
use crate::{Error, Result};

/// Which antenna the objective models.
#[derive(Debug, Clone, PartialEq)]
pub enum AntennaModel {
    /// Loaded bowtie scored by [`bowtie_fitness`] over the whole sweep.
    Bowtie { freq: FreqSweep },
    /// Yagi scored by [`yagi_fitness`] at the first, middle and last sweep points.
    Yagi { n_elements: usize, coeffs: YagiCoefficients, freq: FreqSweep },
}

impl AntennaModel {
    /// Bowtie evaluated every 100 MHz from 800 to 12000 MHz.
    pub fn bowtie() -> Self {
        Self::Bowtie { freq: FreqSweep::new(800.0, 100.0, 113).expect("valid sweep") }
    }

    /// Six-element Yagi evaluated at the edges and center of `[f_lo, f_hi]`.
    pub fn yagi(coeffs: YagiCoefficients, f_lo: f64, f_hi: f64) -> Result<Self> {
        Ok(Self::Yagi { n_elements: 6, coeffs, freq: FreqSweep::spanning(f_lo, f_hi, 3)? })
    }

    pub fn bounds(&self) -> Vec<(f64, f64)> {
        match self {
            Self::Bowtie { .. } => BowtieDesign::BOUNDS.to_vec(),
            Self::Yagi { n_elements, .. } => YagiDesign::bounds(*n_elements),
        }
    }
}

/// Objective that writes a deck per candidate, runs the engine in its own
/// subdirectory of `workdir`, and scores the parsed sweep.
///
/// A run whose listing lacks the completion marker scores
/// [`INVALID_MODEL_FITNESS`]; spawn failures, timeouts, nonzero exits and
/// stale listings abort the optimization.
#[derive(Debug)]
pub struct NecObjective {
    pub model: AntennaModel,
    pub engine: EngineConfig,
    pub workdir: PathBuf,
    pub run_id: String,
    /// Keep each evaluation's directory instead of removing it afterwards.
    pub keep_files: bool,
    counter: AtomicU64,
}

impl NecObjective {
    pub fn new(model: AntennaModel, engine: EngineConfig, workdir: impl Into<PathBuf>, run_id: impl Into<String>) -> Self {
        Self {
            model,
            engine,
            workdir: workdir.into(),
            run_id: run_id.into(),
            keep_files: false,
            counter: AtomicU64::new(0),
        }
    }

    pub fn space(&self) -> DecisionSpace {
        DecisionSpace::from_pairs(&self.model.bounds()).expect("model bounds are valid")
    }

    /// Engine runs so far.
    pub fn evaluations(&self) -> u64 {
        self.counter.load(Ordering::Relaxed)
    }
}

impl Objective for NecObjective {
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let n = self.counter.fetch_add(1, Ordering::Relaxed);
        let dir = self.workdir.join(format!("eval-{n:08}"));
        let meta = DeckMeta { run_id: self.run_id.clone(), file_id: new_file_id(), ..DeckMeta::default() };
        let (deck, opts) = match &self.model {
            AntennaModel::Bowtie { freq } => {
                let d = BowtieDesign::from_decision(x)?;
                (gen_bowtie_deck(&d, freq, &meta)?, ParseOptions::new(d.z0_rounded()))
            }
            AntennaModel::Yagi { coeffs, freq, .. } => {
                let d = YagiDesign::from_decision(x)?;
                let opts = ParseOptions::new(d.z0_rounded())
                    .forward(ForwardDirection::Angles { theta: 90.0, phi: 0.0 });
                (gen_yagi_deck(&d, freq, coeffs, &meta)?, opts)
            }
        };
        let result = run_engine(&deck, &self.engine, &dir, &opts);
        if !self.keep_files {
            let _ = fs::remove_dir_all(&dir);
        }
        let out = match result {
            Ok(out) => out,
            Err(Error::EngineFailure(_)) => return Ok(INVALID_MODEL_FITNESS),
            Err(e) => return Err(e),
        };
        let rows = out.table.rows();
        match &self.model {
            AntennaModel::Bowtie { .. } => {
                let summary = summarize_rows(rows)
                    .ok_or_else(|| Error::EngineFailure("listing contains no frequency blocks".into()))?;
                bowtie_fitness(&summary, out.table.z0_ohm())
            }
            AntennaModel::Yagi { coeffs, .. } => {
                if rows.is_empty() {
                    return Err(Error::EngineFailure("listing contains no frequency blocks".into()));
                }
                let idx = [0, rows.len() / 2, rows.len() - 1];
                let g = idx.map(|k| rows[k].gfwd_dbi);
                let v = idx.map(|k| rows[k].vswr);
                Ok(yagi_fitness(g, v, coeffs))
            }
        }
    }
}

//! Run configuration, run records and plot-data emission.
//!
//! A [`RunConfig`] is a TOML document selecting an objective, optional bound
//! overrides, CFO parameters and output settings. [`execute`] turns it into a
//! [`RunOutcome`]; [`persist`] writes `run.toml` plus the three per-step series
//! files into the configured output directory.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::antenna::{bowtie_fitness, summarize, Band, PerformanceSummary, SweepTable, YagiCoefficients};
use crate::benchmarks;
use crate::cfo::{sweep, CfoParams, DecisionSpace, Objective, RunBest, RunSeries, SweepResult};
use crate::nec::{
    gen_bowtie_deck, gen_yagi_deck, new_file_id, AntennaModel, BowtieDesign, DeckMeta, EngineConfig, FreqSweep,
    NecDeck, NecObjective, YagiDesign,
};
use crate::{Error, Result};

/// File name of the persisted run record.
pub const RECORD_FILE: &str = "run.toml";
/// Step → best fitness so far.
pub const FITNESS_FILE: &str = "fitness.dat";
/// Step → normalised average distance to the best probe.
pub const DAVG_FILE: &str = "davg.dat";
/// Step → zero-based index of the best probe so far.
pub const BEST_PROBE_FILE: &str = "best_probe.dat";

/// Frequency sweep as written in a config file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreqConfig {
    pub start_mhz: f64,
    pub step_mhz: f64,
    pub count: usize,
}

impl FreqConfig {
    pub fn to_sweep(self) -> Result<FreqSweep> {
        FreqSweep::new(self.start_mhz, self.step_mhz, self.count)
    }
}

fn default_elements() -> usize {
    6
}

fn default_yagi_coeffs() -> [f64; 6] {
    YagiCoefficients::DESIGN_1.0
}

/// Objective selector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ObjectiveConfig {
    /// A catalog function; `dims` is required for variable-dimension entries
    /// unless `bounds` is given.
    Benchmark {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dims: Option<usize>,
    },
    /// Loaded bowtie with Z0 as a decision variable (engine required).
    Bowtie {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        freq: Option<FreqConfig>,
    },
    /// Yagi scored at `f_lo`, the band center and `f_hi` (engine required).
    Yagi {
        f_lo_mhz: f64,
        f_hi_mhz: f64,
        #[serde(default = "default_yagi_coeffs")]
        coeffs: [f64; 6],
        #[serde(default = "default_elements")]
        elements: usize,
    },
    /// A fixed impedance table; the single decision variable is Z0 and the
    /// score is the bowtie fitness of the table re-referenced to it.
    ExternalTable {
        path: PathBuf,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        window_mhz: Option<(f64, f64)>,
    },
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("varz-out")
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub objective: ObjectiveConfig,
    /// Per-dimension `(min, max)`; defaults to the objective's own bounds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<(f64, f64)>>,
    /// Engine executable for antenna objectives.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine_timeout_secs: Option<u64>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub cfo: CfoParams,
}

/// Z0 range searched by the external-table objective.
pub const TABLE_Z0_BOUNDS: (f64, f64) = (50.0, 1000.0);

impl RunConfig {
    /// Config for a catalog benchmark with default parameters.
    pub fn benchmark(name: &str) -> Self {
        Self {
            objective: ObjectiveConfig::Benchmark { name: name.to_string(), dims: None },
            bounds: None,
            engine: None,
            engine_timeout_secs: None,
            output_dir: default_output_dir(),
            cfo: CfoParams::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| toml_error(text, &e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Bounds implied by the objective before any override.
    fn native_bounds(&self) -> Result<Vec<(f64, f64)>> {
        match &self.objective {
            ObjectiveConfig::Benchmark { name, dims } => {
                let spec = benchmarks::lookup(name)?;
                let nd = match (dims, &self.bounds) {
                    (Some(n), _) => *n,
                    (None, Some(b)) if spec.variable_dims => b.len(),
                    (None, _) => spec.dims,
                };
                spec.bounds_for(nd)
            }
            ObjectiveConfig::Bowtie { .. } => Ok(BowtieDesign::BOUNDS.to_vec()),
            ObjectiveConfig::Yagi { elements, .. } => Ok(YagiDesign::bounds(*elements)),
            ObjectiveConfig::ExternalTable { .. } => Ok(vec![TABLE_Z0_BOUNDS]),
        }
    }

    /// Resolves selectors and checks bounds, parameters and coefficients.
    pub fn validate(&self) -> Result<()> {
        self.cfo.validate()?;
        self.space()?;
        match &self.objective {
            ObjectiveConfig::Yagi { f_lo_mhz, f_hi_mhz, coeffs, elements } => {
                YagiCoefficients::new(*coeffs)?;
                FreqSweep::spanning(*f_lo_mhz, *f_hi_mhz, 3)?;
                if *elements < 2 {
                    return Err(Error::InvalidConfig(format!("a Yagi needs at least 2 elements, got {elements}")));
                }
            }
            ObjectiveConfig::Bowtie { freq: Some(f) } => {
                f.to_sweep()?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Decision space, honouring a `bounds` override of matching dimension.
    pub fn space(&self) -> Result<DecisionSpace> {
        let native = self.native_bounds()?;
        let bounds = match &self.bounds {
            Some(b) if b.len() != native.len() => {
                return Err(Error::InvalidConfig(format!(
                    "bounds have {} dimensions but the objective has {}",
                    b.len(),
                    native.len()
                )))
            }
            Some(b) => b.clone(),
            None => native,
        };
        DecisionSpace::from_pairs(&bounds)
    }

    /// Explicit engine, falling back to the environment.
    pub fn engine_config(&self) -> Option<EngineConfig> {
        let mut e = match &self.engine {
            Some(p) => EngineConfig::new(p),
            None => EngineConfig::from_env()?,
        };
        if let Some(s) = self.engine_timeout_secs {
            e = e.with_timeout(Duration::from_secs(s));
        }
        Some(e)
    }

    /// Builds the objective. Antenna objectives without an engine are refused.
    pub fn build_objective(&self, run_id: &str) -> Result<Box<dyn Objective>> {
        Ok(match &self.objective {
            ObjectiveConfig::Benchmark { name, .. } => Box::new(benchmarks::lookup(name)?),
            ObjectiveConfig::ExternalTable { path, window_mhz } => {
                let text = fs::read_to_string(path)?;
                Box::new(TableZ0Objective::new(SweepTable::parse(&text, None)?, *window_mhz)?)
            }
            ObjectiveConfig::Bowtie { .. } | ObjectiveConfig::Yagi { .. } => {
                let engine = self.engine_config().ok_or_else(|| {
                    Error::InvalidConfig(format!(
                        "antenna objectives need an external NEC engine: set `engine` or {}",
                        crate::nec::ENGINE_ENV
                    ))
                })?;
                let model = match &self.objective {
                    ObjectiveConfig::Bowtie { freq } => match freq {
                        Some(f) => AntennaModel::Bowtie { freq: f.to_sweep()? },
                        None => AntennaModel::bowtie(),
                    },
                    ObjectiveConfig::Yagi { f_lo_mhz, f_hi_mhz, coeffs, elements } => AntennaModel::Yagi {
                        n_elements: *elements,
                        coeffs: YagiCoefficients::new(*coeffs)?,
                        freq: FreqSweep::spanning(*f_lo_mhz, *f_hi_mhz, 3)?,
                    },
                    _ => unreachable!(),
                };
                Box::new(NecObjective::new(model, engine, self.output_dir.join("nec"), run_id))
            }
        })
    }
}

fn toml_error(text: &str, e: &toml::de::Error) -> Error {
    let line = e.span().map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1).unwrap_or(0);
    Error::Parse { line, msg: e.message().to_string() }
}

/// Bowtie fitness of a fixed impedance table as a function of Z0.
#[derive(Debug, Clone)]
pub struct TableZ0Objective {
    table: SweepTable,
    window: (f64, f64),
}

impl TableZ0Objective {
    pub fn new(table: SweepTable, window_mhz: Option<(f64, f64)>) -> Result<Self> {
        let window = match window_mhz {
            Some(w) => w,
            None => {
                let rows = table.rows();
                match (rows.first(), rows.last()) {
                    (Some(a), Some(b)) => (a.f_mhz, b.f_mhz),
                    _ => return Err(Error::InvalidInput("empty impedance table".into())),
                }
            }
        };
        summarize(&table, window.0, window.1)?;
        Ok(Self { table, window })
    }
}

impl Objective for TableZ0Objective {
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let [z0] = x else {
            return Err(Error::InvalidInput(format!("expected 1 coordinate (Z0), got {}", x.len())));
        };
        let s = summarize(&self.table.with_z0(*z0)?, self.window.0, self.window.1)?;
        bowtie_fitness(&s, *z0)
    }
}

/// Bowtie geometry as written in a design file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BowtieSpec {
    pub arm_len_m: f64,
    pub half_angle_deg: f64,
    pub load_seg: u32,
    pub r_load_ohm: f64,
    pub z0_ohm: f64,
}

/// Yagi geometry as written in a design file; positions are boom distances
/// in wavelengths with the reflector at 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YagiSpec {
    pub positions_wl: Vec<f64>,
    pub lengths_wl: Vec<f64>,
    pub z0_ohm: f64,
    #[serde(default = "default_yagi_coeffs")]
    pub coeffs: [f64; 6],
}

/// Input of `necgen`: exactly one of `bowtie` / `yagi`, plus optional sweep
/// and deck metadata.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bowtie: Option<BowtieSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub yagi: Option<YagiSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub freq: Option<FreqConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<DeckMeta>,
}

impl DesignFile {
    /// Default bowtie sweep: 200 MHz in 15 MHz steps, 1001 points.
    pub const BOWTIE_FREQ: FreqConfig = FreqConfig { start_mhz: 200.0, step_mhz: 15.0, count: 1001 };
    /// Default Yagi sweep: 200 MHz in 0.1 MHz steps, 1501 points.
    pub const YAGI_FREQ: FreqConfig = FreqConfig { start_mhz: 200.0, step_mhz: 0.1, count: 1501 };

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| toml_error(text, &e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&fs::read_to_string(path)?)
    }

    /// Validates the design and renders its deck. Missing metadata gets a
    /// fresh run ID and file ID.
    pub fn to_deck(&self) -> Result<NecDeck> {
        let mut meta = self.meta.clone().unwrap_or_default();
        if meta.run_id.is_empty() {
            meta.run_id = run_id_now();
        }
        if meta.file_id.is_empty() {
            meta.file_id = new_file_id();
        }
        match (&self.bowtie, &self.yagi) {
            (Some(b), None) => {
                let d = BowtieDesign::new(b.arm_len_m, b.half_angle_deg, b.load_seg, b.r_load_ohm, b.z0_ohm)?;
                gen_bowtie_deck(&d, &self.freq.unwrap_or(Self::BOWTIE_FREQ).to_sweep()?, &meta)
            }
            (None, Some(y)) => {
                let d = YagiDesign::from_boom_positions(&y.positions_wl, y.lengths_wl.clone(), y.z0_ohm)?;
                let coeffs = YagiCoefficients::new(y.coeffs)?;
                gen_yagi_deck(&d, &self.freq.unwrap_or(Self::YAGI_FREQ).to_sweep()?, &coeffs, &meta)
            }
            _ => Err(Error::InvalidConfig("a design file needs exactly one of [bowtie] or [yagi]".into())),
        }
    }
}

/// Paths of the series files, relative to the record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesFiles {
    pub fitness: String,
    pub davg: String,
    pub best_probe: String,
}

impl Default for SeriesFiles {
    fn default() -> Self {
        Self { fitness: FITNESS_FILE.into(), davg: DAVG_FILE.into(), best_probe: BEST_PROBE_FILE.into() }
    }
}

/// Persisted summary of one optimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunRecord {
    pub run_id: String,
    pub evaluations: u64,
    pub runs: usize,
    pub wall_time_secs: f64,
    pub best: RunBest,
    pub series: SeriesFiles,
    pub config: RunConfig,
}

impl RunRecord {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("record serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| toml_error(text, &e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&fs::read_to_string(path)?)
    }
}

/// A finished optimization before it is written out.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub result: SweepResult,
}

/// Sortable, locale-independent run identifier such as `20110702T221747`.
pub fn run_id_now() -> String {
    chrono::Local::now().format("%Y%m%dT%H%M%S").to_string()
}

/// Validates `config`, builds its objective and runs the sweep.
/// Nothing is written unless the objective itself writes (engine runs).
pub fn execute(config: &RunConfig, run_id: &str) -> Result<RunOutcome> {
    config.validate()?;
    let space = config.space()?;
    let objective = config.build_objective(run_id)?;
    let t0 = Instant::now();
    let result = sweep(objective.as_ref(), &space, &config.cfo)?;
    let record = RunRecord {
        run_id: run_id.to_string(),
        evaluations: result.evaluations,
        runs: result.runs,
        wall_time_secs: t0.elapsed().as_secs_f64(),
        best: result.best.clone(),
        series: SeriesFiles::default(),
        config: config.clone(),
    };
    Ok(RunOutcome { record, result })
}

/// Writes `run.toml` and the series files into `dir`, creating it if needed.
pub fn persist(outcome: &RunOutcome, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    write_series(dir, &outcome.result.series, &outcome.record.series)?;
    let path = dir.join(RECORD_FILE);
    fs::write(&path, outcome.record.to_toml())?;
    Ok(path)
}

/// Shortest round-trip decimal for `x`, in exponent form outside
/// `[1e-4, 1e15)` so extreme values stay compact.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || !a.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Two-column `step<TAB>value` text, one row per step starting at 0.
pub fn two_column(values: &[f64]) -> String {
    let mut s = String::with_capacity(values.len() * 16);
    for (j, v) in values.iter().enumerate() {
        let _ = writeln!(s, "{j}\t{}", fmt_num(*v));
    }
    s
}

pub fn write_series(dir: &Path, series: &RunSeries, files: &SeriesFiles) -> Result<()> {
    fs::write(dir.join(&files.fitness), two_column(&series.best_fitness))?;
    fs::write(dir.join(&files.davg), two_column(&series.davg))?;
    let probes: Vec<f64> = series.best_probe.iter().map(|&p| p as f64).collect();
    fs::write(dir.join(&files.best_probe), two_column(&probes))?;
    Ok(())
}

/// Reads a file written by [`two_column`], checking the steps are 0, 1, 2, …
pub fn read_two_column(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let bad = |msg: &str| Error::Parse { line: k + 1, msg: format!("{}: {msg}", path.display()) };
        let (j, v) = line.split_once('\t').ok_or_else(|| bad("expected two tab-separated columns"))?;
        if j.parse::<usize>().map_err(|_| bad("bad step"))? != k {
            return Err(bad("steps must be consecutive from 0"));
        }
        out.push(v.parse().map_err(|_| bad("bad value"))?);
    }
    Ok(out)
}

/// Band table as CSV; percentages to one decimal.
pub fn bands_csv(bands: &[Band]) -> String {
    let mut s = String::from("f_lo_mhz,f_hi_mhz,width_mhz,fc_mhz,frac_pct\n");
    for b in bands {
        let _ = writeln!(s, "{},{},{},{},{:.1}", b.f_lo, b.f_hi, b.width, b.fc, b.frac_pct);
    }
    s
}

/// Sweep table as tab-separated text with a header [`SweepTable::parse`]
/// reads back losslessly.
pub fn table_tsv(table: &SweepTable) -> String {
    let mut s = format!(
        "F(MHz)\tRad Eff (%)\tMax Gain (dBi)\tMin Gain (dBi)\tFwd Gain (dBi)\tRin (ohms)\tXin (ohms)\tVSWR//{}\n",
        table.z0_ohm()
    );
    for r in table.rows() {
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.f_mhz, r.eff_pct, r.gmax_dbi, r.gmin_dbi, r.gfwd_dbi, r.rin_ohm, r.xin_ohm, r.vswr
        );
    }
    s
}

/// Min/max performance table as CSV.
pub fn summary_csv(s: &PerformanceSummary) -> String {
    let mut out = String::from("quantity,min,max\n");
    for (name, m) in [
        ("vswr", s.vswr),
        ("rin_ohm", s.rin),
        ("xin_ohm", s.xin),
        ("eff_pct", s.eff),
        ("gmax_dbi", s.gmax),
        ("gfwd_dbi", s.gfwd),
    ] {
        let _ = writeln!(out, "{name},{},{}", m.min, m.max);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips_through_toml() {
        let mut c = RunConfig::benchmark("GP");
        c.cfo.nt = 40;
        c.bounds = Some(vec![(-2.0, 2.0), (-2.0, 2.0)]);
        let back = RunConfig::from_toml(&c.to_toml()).unwrap();
        assert_eq!(back, c);

        let y = RunConfig {
            objective: ObjectiveConfig::Yagi {
                f_lo_mhz: 275.0,
                f_hi_mhz: 325.0,
                coeffs: YagiCoefficients::DESIGN_2.0,
                elements: 6,
            },
            engine: Some("/opt/nec2".into()),
            ..RunConfig::benchmark("x")
        };
        assert_eq!(RunConfig::from_toml(&y.to_toml()).unwrap(), y);
    }

    #[test]
    fn minimal_config_uses_defaults() {
        let c = RunConfig::from_toml("[objective]\nkind = \"benchmark\"\nname = \"sphere\"\ndims = 2\n").unwrap();
        assert_eq!(c.cfo, CfoParams::default());
        assert_eq!(c.space().unwrap().dims(), 2);
    }

    #[test]
    fn parse_errors_carry_a_line() {
        let e = RunConfig::from_toml("[objective]\nkind = \"benchmark\"\nname = \"GP\"\n[cfo]\nnt = \"x\"\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 5, .. }), "{e:?}");
        let e = RunConfig::from_toml("[objective]\nkind = \"benchmark\"\nname = \"GP\"\n[cfo]\nbogus = 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }), "{e:?}");
    }

    #[test]
    fn bound_dimension_mismatch_is_rejected() {
        let mut c = RunConfig::benchmark("GP");
        c.bounds = Some(vec![(-2.0, 2.0)]);
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        assert!(matches!(RunConfig::benchmark("NOPE").validate(), Err(Error::Catalog(_))));
    }

    #[test]
    fn table_tsv_round_trips() {
        use crate::antenna::FrequencySample;
        let row = |f: f64, rin: f64| FrequencySample {
            f_mhz: f,
            eff_pct: 97.5,
            gmax_dbi: 2.25,
            gmin_dbi: -1.0 / 3.0,
            gfwd_dbi: 0.1,
            rin_ohm: rin,
            xin_ohm: -12.5,
            vswr: 0.0,
        };
        let t = SweepTable::from_impedances(123.4, vec![row(800.0, 100.0), row(815.5, 111.25)]).unwrap();
        assert_eq!(SweepTable::parse(&table_tsv(&t), None).unwrap(), t);
    }

    #[test]
    fn two_column_format() {
        assert_eq!(two_column(&[1.5, -0.25, 3.0]), "0\t1.5\n1\t-0.25\n2\t3\n");
        assert_eq!(fmt_num(-1e300), "-1e300");
        assert_eq!(fmt_num(1.5806e-5), "1.5806e-5");
        assert_eq!(fmt_num(-129775153180509400.0), "-1.297751531805094e17");
        for x in [1.0 / 3.0, -1e300, 7e-310, 12569.5, 1e15, 9.99e14] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
    }
}

//! Variable-Z0 measurement layer: VSWR against an arbitrary feed impedance,
//! per-window performance summaries, impedance-bandwidth bands, and the bowtie
//! and Yagi fitness functions.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Fitness assigned to a model whose engine run produced a negative efficiency.
pub const INVALID_MODEL_FITNESS: f64 = -98765.0;

/// Voltage standing wave ratio of `rin + j·xin` on a line of real impedance `z0`.
///
/// Returns `f64::INFINITY` when the reflection coefficient magnitude reaches 1
/// (a purely reactive load).
pub fn vswr(z0: f64, rin: f64, xin: f64) -> Result<f64> {
    if !(z0 > 0.0) || !z0.is_finite() {
        return Err(Error::InvalidInput(format!("Z0 must be positive and finite, got {z0}")));
    }
    if !(rin >= 0.0) || !rin.is_finite() || !xin.is_finite() {
        return Err(Error::InvalidInput(format!("load {rin}{xin:+}j is not a passive finite impedance")));
    }
    let gamma = (rin - z0).hypot(xin) / (rin + z0).hypot(xin);
    if gamma >= 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok((1.0 + gamma) / (1.0 - gamma))
}

/// One row of a frequency sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencySample {
    pub f_mhz: f64,
    /// Radiation efficiency, percent.
    pub eff_pct: f64,
    pub gmax_dbi: f64,
    pub gmin_dbi: f64,
    pub gfwd_dbi: f64,
    pub rin_ohm: f64,
    pub xin_ohm: f64,
    /// VSWR relative to the owning table's Z0.
    pub vswr: f64,
}

/// A frequency sweep with strictly increasing frequencies and the Z0 its VSWR
/// column refers to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    z0_ohm: f64,
    rows: Vec<FrequencySample>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Freq,
    Eff,
    Gmax,
    Gmin,
    Gfwd,
    Rin,
    Xin,
    Vswr,
    AvgGain,
}

/// Column order used when a table carries no header line.
const DEFAULT_COLUMNS: [Column; 8] = [
    Column::Freq,
    Column::Eff,
    Column::Gmax,
    Column::Gmin,
    Column::Gfwd,
    Column::Rin,
    Column::Xin,
    Column::Vswr,
];

impl SweepTable {
    /// Validates row order and Z0.
    pub fn new(z0_ohm: f64, rows: Vec<FrequencySample>) -> Result<Self> {
        if !(z0_ohm > 0.0) || !z0_ohm.is_finite() {
            return Err(Error::InvalidInput(format!("Z0 must be positive and finite, got {z0_ohm}")));
        }
        if let Some(w) = rows.windows(2).find(|w| !(w[1].f_mhz > w[0].f_mhz)) {
            return Err(Error::InvalidInput(format!(
                "frequencies must increase strictly ({} MHz followed by {} MHz)",
                w[0].f_mhz, w[1].f_mhz
            )));
        }
        Ok(Self { z0_ohm, rows })
    }

    /// Builds a table from rows whose `vswr` field is ignored and recomputed against `z0_ohm`.
    pub fn from_impedances(z0_ohm: f64, mut rows: Vec<FrequencySample>) -> Result<Self> {
        for r in &mut rows {
            r.vswr = vswr(z0_ohm, r.rin_ohm, r.xin_ohm)?;
        }
        Self::new(z0_ohm, rows)
    }

    pub fn z0_ohm(&self) -> f64 {
        self.z0_ohm
    }

    pub fn rows(&self) -> &[FrequencySample] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Same sweep with VSWR recomputed against a different feed impedance.
    pub fn with_z0(&self, z0_ohm: f64) -> Result<Self> {
        Self::from_impedances(z0_ohm, self.rows.clone())
    }

    /// Rows with `f_lo <= f <= f_hi`.
    pub fn window(&self, f_lo: f64, f_hi: f64) -> &[FrequencySample] {
        let start = self.rows.partition_point(|r| r.f_mhz < f_lo);
        let end = self.rows.partition_point(|r| r.f_mhz <= f_hi);
        &self.rows[start..end.max(start)]
    }

    /// Parses a whitespace- or tab-delimited sweep listing.
    ///
    /// Lines starting with `#`, blank lines and title lines are skipped. A
    /// header line (one mentioning `F(MHz)`) fixes the column order by where
    /// each column name occurs; without one the order is frequency,
    /// efficiency, max/min/forward gain, Rin, Xin, VSWR. Z0 is taken from a
    /// `VSWR//<ohms>` header when `z0` is `None`; when `z0` is given and
    /// differs from the header, or no VSWR column exists, VSWR is recomputed.
    pub fn parse(text: &str, z0: Option<f64>) -> Result<Self> {
        let mut columns: Vec<Column> = DEFAULT_COLUMNS.to_vec();
        let mut header_z0: Option<f64> = None;
        let mut rows = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let first = trimmed.split_whitespace().next().unwrap_or("");
            if first.parse::<f64>().is_err() {
                if trimmed.to_ascii_uppercase().contains("F(MHZ)") {
                    let (cols, hz0) = parse_header(trimmed, lineno)?;
                    columns = cols;
                    header_z0 = hz0;
                }
                continue;
            }
            rows.push(parse_row(trimmed, &columns, z0.is_some(), lineno)?);
        }
        let has_vswr = columns.contains(&Column::Vswr) && rows.iter().all(|r| !r.vswr.is_nan());
        match (z0, header_z0) {
            (None, Some(h)) if has_vswr => Self::new(h, rows),
            (Some(z), Some(h)) if has_vswr && z == h => Self::new(h, rows),
            (Some(z), _) | (None, Some(z)) => Self::from_impedances(z, rows),
            (None, _) => Err(Error::InvalidInput(
                "sweep listing does not state its Z0; pass one explicitly".into(),
            )),
        }
    }
}

fn parse_header(line: &str, lineno: usize) -> Result<(Vec<Column>, Option<f64>)> {
    let upper = line.to_ascii_uppercase();
    let keys: [(&str, Column); 9] = [
        ("F(MHZ)", Column::Freq),
        ("EFF", Column::Eff),
        ("MAX GAIN", Column::Gmax),
        ("MIN GAIN", Column::Gmin),
        ("FWD GAIN", Column::Gfwd),
        ("RIN", Column::Rin),
        ("XIN", Column::Xin),
        ("VSWR", Column::Vswr),
        ("AVG PWR", Column::AvgGain),
    ];
    let mut found: Vec<(usize, Column)> =
        keys.iter().filter_map(|(k, c)| upper.find(k).map(|pos| (pos, *c))).collect();
    found.sort_by_key(|(pos, _)| *pos);
    let cols: Vec<Column> = found.into_iter().map(|(_, c)| c).collect();
    for need in [Column::Freq, Column::Rin, Column::Xin] {
        if !cols.contains(&need) {
            return Err(Error::Parse { line: lineno, msg: format!("header lacks a {need:?} column") });
        }
    }
    let z0 = match upper.find("VSWR//") {
        Some(pos) => {
            let digits: String = upper[pos + 6..]
                .chars()
                .take_while(|c| c.is_ascii_digit() || *c == '.')
                .collect();
            Some(digits.parse::<f64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("cannot read Z0 from `{}`", &line[pos..]),
            })?)
        }
        None => None,
    };
    Ok((cols, z0))
}

fn parse_row(line: &str, columns: &[Column], vswr_optional: bool, lineno: usize) -> Result<FrequencySample> {
    let values: Vec<f64> = line
        .split_whitespace()
        .map(|t| t.parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse { line: lineno, msg: format!("bad number: {e}") })?;
    let optional = |c: &Column| *c == Column::AvgGain || (vswr_optional && *c == Column::Vswr);
    let required = columns.iter().filter(|c| !optional(c)).count();
    if values.len() < required {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("expected {} columns, found {}", required, values.len()),
        });
    }
    let mut s = FrequencySample {
        f_mhz: 0.0,
        eff_pct: 100.0,
        gmax_dbi: f64::NAN,
        gmin_dbi: f64::NAN,
        gfwd_dbi: f64::NAN,
        rin_ohm: 0.0,
        xin_ohm: 0.0,
        vswr: f64::NAN,
    };
    for (col, v) in columns.iter().zip(values) {
        match col {
            Column::Freq => s.f_mhz = v,
            Column::Eff => s.eff_pct = v,
            Column::Gmax => s.gmax_dbi = v,
            Column::Gmin => s.gmin_dbi = v,
            Column::Gfwd => s.gfwd_dbi = v,
            Column::Rin => s.rin_ohm = v,
            Column::Xin => s.xin_ohm = v,
            Column::Vswr => s.vswr = v,
            Column::AvgGain => {}
        }
    }
    Ok(s)
}

/// Closed interval of observed values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinMax {
    pub min: f64,
    pub max: f64,
}

impl MinMax {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        values.fold(Self { min: f64::INFINITY, max: f64::NEG_INFINITY }, |acc, v| Self {
            min: acc.min.min(v),
            max: acc.max.max(v),
        })
    }

    pub fn span(&self) -> f64 {
        self.max - self.min
    }
}

/// Componentwise extremes over a frequency window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerformanceSummary {
    pub vswr: MinMax,
    pub rin: MinMax,
    pub xin: MinMax,
    pub eff: MinMax,
    pub gmax: MinMax,
    pub gfwd: MinMax,
    /// Number of rows summarized.
    pub rows: usize,
}

/// Summarizes the rows with `f_lo <= f <= f_hi`.
pub fn summarize(table: &SweepTable, f_lo: f64, f_hi: f64) -> Result<PerformanceSummary> {
    summarize_rows(table.window(f_lo, f_hi)).ok_or(Error::EmptyWindow { lo: f_lo, hi: f_hi })
}

/// Summary of arbitrary rows; `None` when `rows` is empty.
pub fn summarize_rows(rows: &[FrequencySample]) -> Option<PerformanceSummary> {
    if rows.is_empty() {
        return None;
    }
    Some(PerformanceSummary {
        vswr: MinMax::of(rows.iter().map(|r| r.vswr)),
        rin: MinMax::of(rows.iter().map(|r| r.rin_ohm)),
        xin: MinMax::of(rows.iter().map(|r| r.xin_ohm)),
        eff: MinMax::of(rows.iter().map(|r| r.eff_pct)),
        gmax: MinMax::of(rows.iter().map(|r| r.gmax_dbi)),
        gfwd: MinMax::of(rows.iter().map(|r| r.gfwd_dbi)),
        rows: rows.len(),
    })
}

/// A contiguous run of rows meeting a VSWR threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub f_lo: f64,
    pub f_hi: f64,
    pub width: f64,
    /// Band center, MHz.
    pub fc: f64,
    /// Fractional bandwidth, percent of `fc`.
    pub frac_pct: f64,
}

impl Band {
    pub fn new(f_lo: f64, f_hi: f64) -> Self {
        let width = f_hi - f_lo;
        let fc = 0.5 * (f_lo + f_hi);
        Self { f_lo, f_hi, width, fc, frac_pct: 100.0 * width / fc }
    }
}

/// Maximal runs of consecutive rows with `vswr <= threshold`; edges are row
/// frequencies. A run of one row yields a zero-width band.
pub fn extract_bands(table: &SweepTable, threshold: f64) -> Result<Vec<Band>> {
    if !(threshold >= 1.0) {
        return Err(Error::InvalidInput(format!("VSWR threshold must be >= 1, got {threshold}")));
    }
    let mut bands = Vec::new();
    let mut start: Option<f64> = None;
    let mut last = 0.0;
    for r in table.rows() {
        if r.vswr <= threshold {
            start.get_or_insert(r.f_mhz);
            last = r.f_mhz;
        } else if let Some(lo) = start.take() {
            bands.push(Band::new(lo, last));
        }
    }
    if let Some(lo) = start {
        bands.push(Band::new(lo, last));
    }
    Ok(bands)
}

/// Bowtie fitness: `(5·min Gmax + min ε) / (|max Rin − Z0| · VSWR span · Xin span)`.
///
/// A negative minimum efficiency marks a failed model run and yields
/// [`INVALID_MODEL_FITNESS`].
pub fn bowtie_fitness(summary: &PerformanceSummary, z0: f64) -> Result<f64> {
    if summary.eff.min < 0.0 {
        return Ok(INVALID_MODEL_FITNESS);
    }
    let factors = [
        ("|max Rin - Z0|", (summary.rin.max - z0).abs()),
        ("VSWR span", summary.vswr.span()),
        ("Xin span", summary.xin.span()),
    ];
    if let Some((name, _)) = factors.iter().find(|(_, v)| *v == 0.0) {
        return Err(Error::DegenerateSummary(format!("{name} is zero")));
    }
    let denom: f64 = factors.iter().map(|(_, v)| v).product();
    Ok((5.0 * summary.gmax.min + summary.eff.min) / denom)
}

/// Weights `c1..c6` of the Yagi fitness functional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YagiCoefficients(pub [f64; 6]);

impl YagiCoefficients {
    /// First published weighting.
    pub const DESIGN_1: Self = Self([0.2, 2.0, 1.0, 4.0, 1.0, 0.4]);
    /// Second published weighting.
    pub const DESIGN_2: Self = Self([0.2, 4.0, 1.0, 8.0, 1.0, 0.8]);

    /// Validated coefficients (finite and non-negative).
    pub fn new(c: [f64; 6]) -> Result<Self> {
        if c.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidConfig(format!("Yagi coefficients must be finite and >= 0: {c:?}")));
        }
        Ok(Self(c))
    }
}

/// Yagi fitness `c1·G(fL) − c2·V(fL) + c3·G(fC) − c4·V(fC) + c5·G(fU) − c6·V(fU)`
/// from forward gains (dBi) and VSWR at the lower, center and upper frequencies.
pub fn yagi_fitness(gfwd: [f64; 3], vswr: [f64; 3], coeffs: &YagiCoefficients) -> f64 {
    let c = &coeffs.0;
    (0..3).map(|k| c[2 * k] * gfwd[k] - c[2 * k + 1] * vswr[k]).sum()
}

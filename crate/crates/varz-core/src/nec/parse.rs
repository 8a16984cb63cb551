//! Output-listing parser: per-frequency impedance, efficiency and pattern gains.

use super::format::mid;
use crate::antenna::{FrequencySample, SweepTable};
use crate::{Error, Result};

/// Which pattern row supplies the forward gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ForwardDirection {
    /// The first row of each pattern block.
    FirstRow,
    /// The row at the given (theta, phi) in degrees.
    Angles { theta: f64, phi: f64 },
}

/// Parser inputs that are not in the listing itself.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseOptions {
    /// Feed impedance for the VSWR column.
    pub z0_ohm: f64,
    /// File ID the listing must echo, if checked.
    pub expected_file_id: Option<String>,
    pub forward: ForwardDirection,
}

impl ParseOptions {
    pub fn new(z0_ohm: f64) -> Self {
        Self { z0_ohm, expected_file_id: None, forward: ForwardDirection::FirstRow }
    }

    pub fn expect_file_id(mut self, id: impl Into<String>) -> Self {
        self.expected_file_id = Some(id.into());
        self
    }

    pub fn forward(mut self, forward: ForwardDirection) -> Self {
        self.forward = forward;
        self
    }
}

/// Parsed listing with its validity flags.
#[derive(Debug, Clone, PartialEq)]
pub struct NecParse {
    /// The completion marker (`RUN TIME`) was present.
    pub run_complete: bool,
    /// File ID echoed in the listing, letters and blanks removed.
    pub file_id: Option<String>,
    /// One row per frequency block; `None` when the run did not complete.
    pub table: Option<SweepTable>,
}

#[derive(Default)]
struct Block {
    line: usize,
    f_mhz: f64,
    z: Option<(f64, f64)>,
    eff: Option<f64>,
    gains: Vec<f64>,
    fwd: Option<f64>,
}

fn field(line: &str, start: usize, len: usize, lineno: usize, what: &str) -> Result<f64> {
    let s = mid(line, start, len).trim();
    s.parse::<f64>().map_err(|_| Error::Parse { line: lineno, msg: format!("bad {what} field `{s}`") })
}

fn strip_letters_and_blanks(line: &str) -> String {
    line.chars().filter(|c| !c.is_ascii_alphabetic() && !c.is_whitespace()).collect()
}

/// Parses a listing. A missing completion marker is reported through
/// [`NecParse::run_complete`]; a file-ID mismatch is a
/// [`Error::StaleOutput`]; malformed fields are [`Error::Parse`].
pub fn parse_nec_output(text: &str, opts: &ParseOptions) -> Result<NecParse> {
    let lines: Vec<&str> = text.lines().collect();
    let run_complete = lines.iter().any(|l| l.contains("RUN TIME"));
    let file_id = lines
        .iter()
        .find(|l| l.contains("File ID") || l.contains("FILE ID"))
        .map(|l| strip_letters_and_blanks(l));
    if !run_complete {
        return Ok(NecParse { run_complete, file_id, table: None });
    }
    if let Some(expected) = &opts.expected_file_id {
        let found = file_id.clone().unwrap_or_default();
        if &found != expected {
            return Err(Error::StaleOutput { expected: expected.clone(), found });
        }
    }

    let mut blocks: Vec<Block> = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i];
        let lineno = i + 1;
        if let Some(pos) = line.find("FREQUENCY=") {
            let rest = line[pos + "FREQUENCY=".len()..].replace("MHZ", "");
            let f = rest.trim().parse::<f64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad frequency `{}`", rest.trim()),
            })?;
            blocks.push(Block { line: lineno, f_mhz: f, ..Block::default() });
        } else if line.contains("INPUT PARAMETERS") {
            let block = blocks.last_mut().ok_or(Error::Parse {
                line: lineno,
                msg: "input parameters before any frequency".into(),
            })?;
            let k = i + 3;
            let data = lines.get(k).ok_or(Error::Parse { line: k + 1, msg: "truncated impedance block".into() })?;
            let rin = field(data, 61, 12, k + 1, "Rin")?;
            let xin = field(data, 73, 12, k + 1, "Xin")?;
            block.z = Some((rin, xin));
            i = k;
        } else if line.contains("EFFICIENCY") {
            if let Some(block) = blocks.last_mut() {
                let digits: String = line
                    .chars()
                    .filter(|c| !c.is_ascii_alphabetic() && !c.is_whitespace() && *c != '=')
                    .collect();
                let eff = digits.parse::<f64>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad efficiency `{digits}`"),
                })?;
                block.eff = Some(eff);
            }
        } else if line.contains("E(THETA)") {
            let block = blocks.last_mut().ok_or(Error::Parse {
                line: lineno,
                msg: "radiation pattern before any frequency".into(),
            })?;
            let mut k = i + 3;
            while let Some(row) = lines.get(k) {
                let mut tokens = row.split_whitespace();
                let angles = (
                    tokens.next().and_then(|t| t.parse::<f64>().ok()),
                    tokens.next().and_then(|t| t.parse::<f64>().ok()),
                );
                let (Some(theta), Some(phi)) = angles else { break };
                let g = field(row, 37, 8, k + 1, "total gain")?;
                let is_forward = match opts.forward {
                    ForwardDirection::FirstRow => block.gains.is_empty(),
                    ForwardDirection::Angles { theta: t, phi: p } => {
                        (theta - t).abs() < 1e-6 && (phi - p).abs() < 1e-6
                    }
                };
                if is_forward && block.fwd.is_none() {
                    block.fwd = Some(g);
                }
                block.gains.push(g);
                k += 1;
            }
            i = k - 1;
        }
        i += 1;
    }

    let mut rows = Vec::with_capacity(blocks.len());
    for b in blocks {
        let missing = |what: &str| Error::Parse { line: b.line, msg: format!("frequency block lacks {what}") };
        let (rin, xin) = b.z.ok_or_else(|| missing("input impedance"))?;
        if b.gains.is_empty() {
            return Err(missing("a radiation pattern"));
        }
        let gfwd = b.fwd.ok_or_else(|| missing("the forward pattern direction"))?;
        rows.push(FrequencySample {
            f_mhz: b.f_mhz,
            eff_pct: b.eff.unwrap_or(100.0),
            gmax_dbi: b.gains.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            gmin_dbi: b.gains.iter().copied().fold(f64::INFINITY, f64::min),
            gfwd_dbi: gfwd,
            rin_ohm: rin,
            xin_ohm: xin,
            vswr: f64::NAN,
        });
    }
    let table = SweepTable::from_impedances(opts.z0_ohm, rows)?;
    Ok(NecParse { run_complete, file_id, table: Some(table) })
}

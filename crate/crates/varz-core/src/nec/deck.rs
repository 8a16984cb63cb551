//! Input-deck generation for the loaded bowtie and the Yagi-Uda array.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};

use super::format::{basic_str, fp_str, round_to};
use crate::antenna::YagiCoefficients;
use crate::{Error, Result};

/// Linear frequency sweep as carried by an `FR` card.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreqSweep {
    pub start_mhz: f64,
    pub step_mhz: f64,
    pub count: usize,
}

impl FreqSweep {
    pub fn new(start_mhz: f64, step_mhz: f64, count: usize) -> Result<Self> {
        if !(start_mhz > 0.0) || !start_mhz.is_finite() || !step_mhz.is_finite() || step_mhz < 0.0 || count == 0 {
            return Err(Error::InvalidInput(format!(
                "frequency sweep needs start > 0, step >= 0 and count >= 1 (got {start_mhz}, {step_mhz}, {count})"
            )));
        }
        if count > 1 && step_mhz == 0.0 {
            return Err(Error::InvalidInput("a multi-point sweep needs a positive step".into()));
        }
        Ok(Self { start_mhz, step_mhz, count })
    }

    /// Sweep from `lo` to `hi` inclusive in `count` points.
    pub fn spanning(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(hi > lo) || count < 2 {
            return Err(Error::InvalidInput(format!("cannot span [{lo}, {hi}] with {count} points")));
        }
        Self::new(lo, (hi - lo) / (count - 1) as f64, count)
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.start_mhz + k as f64 * self.step_mhz).collect()
    }

    fn card(&self) -> String {
        format!("FR 0,{},0,0,{},{}", self.count, fp_str(self.start_mhz), fp_str(self.step_mhz))
    }
}

/// Bookkeeping echoed into a deck's comment cards.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeckMeta {
    pub run_id: String,
    pub file_id: String,
    /// Probe number and time step that produced the design, if any.
    pub probe_step: Option<(usize, usize)>,
    /// Overrides the default deck file name in the first comment card.
    pub file_name: Option<String>,
}

/// Ordered card images plus the file ID echoed in them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecDeck {
    /// Base name for the deck and listing files (`<name>.NEC`, `<name>.OUT`).
    pub name: String,
    pub cards: Vec<String>,
    pub file_id: String,
}

impl NecDeck {
    /// Checks card-structure invariants: exactly one CE, GE and EN, unique
    /// GW tags, and FR before EX before RP.
    pub fn validate(&self) -> Result<()> {
        let mnemonic = |c: &String| c.get(..2).unwrap_or("").to_string();
        for once in ["CE", "GE", "EN"] {
            let n = self.cards.iter().filter(|c| mnemonic(c) == once).count();
            if n != 1 {
                return Err(Error::InvalidInput(format!("deck has {n} {once} cards")));
            }
        }
        let mut tags: Vec<&str> = self
            .cards
            .iter()
            .filter(|c| c.starts_with("GW"))
            .filter_map(|c| c[2..].split(',').next())
            .collect();
        let n = tags.len();
        tags.sort_unstable();
        tags.dedup();
        if tags.len() != n {
            return Err(Error::InvalidInput("duplicate GW tags".into()));
        }
        let pos = |m: &str| self.cards.iter().position(|c| mnemonic(c) == m);
        match (pos("FR"), pos("EX"), pos("RP")) {
            (Some(f), Some(e), Some(r)) if f < e && e < r => Ok(()),
            _ => Err(Error::InvalidInput("deck must contain FR, EX, RP in that order".into())),
        }
    }

    /// Card images from `CE` onward (geometry and control cards).
    pub fn body(&self) -> &[String] {
        let start = self.cards.iter().position(|c| c == "CE").unwrap_or(0);
        &self.cards[start..]
    }
}

impl fmt::Display for NecDeck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cards {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

static FILE_ID_COUNTER: AtomicU32 = AtomicU32::new(0);

/// Fresh file ID: local `MMDDYYYYhhmmss` followed by a 4-digit counter so
/// that decks written within the same second remain distinguishable.
pub fn new_file_id() -> String {
    let n = FILE_ID_COUNTER.fetch_add(1, Ordering::Relaxed) % 10_000;
    format!("{}{n:04}", chrono::Local::now().format("%m%d%Y%H%M%S"))
}

/// Resistively loaded bowtie in the Y-Z plane with a variable feed impedance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BowtieDesign {
    pub arm_len_m: f64,
    /// Half of the flare angle, degrees.
    pub half_angle_deg: f64,
    /// Segment (1..=9) on each arm carrying the load.
    pub load_seg: u32,
    /// Series load resistance; zero leaves the arms unloaded.
    pub r_load_ohm: f64,
    pub z0_ohm: f64,
    pub feed_len_m: f64,
    pub wire_radius_m: f64,
    pub n_segs_arm: u32,
    pub n_segs_feed: u32,
}

impl BowtieDesign {
    /// Decision-space bounds in the order arm length, half angle, load
    /// segment, load resistance, Z0.
    pub const BOUNDS: [(f64, f64); 5] = [(0.01, 0.08), (10.0, 80.0), (1.0, 9.0), (1.0, 1000.0), (50.0, 1000.0)];

    pub fn new(arm_len_m: f64, half_angle_deg: f64, load_seg: u32, r_load_ohm: f64, z0_ohm: f64) -> Result<Self> {
        let d = Self {
            arm_len_m,
            half_angle_deg,
            load_seg,
            r_load_ohm,
            z0_ohm,
            feed_len_m: 0.02,
            wire_radius_m: 0.0005,
            n_segs_arm: 9,
            n_segs_feed: 3,
        };
        d.validate()?;
        Ok(d)
    }

    /// The optimized loaded design: 0.051 m arms, 39.4 degrees, load on
    /// segment 6 of 166.93 ohms, Z0 = 715 ohms.
    pub fn published() -> Self {
        Self::new(0.051, 39.4, 6, 166.93, 715.0).expect("valid design")
    }

    /// Design from a 5-D decision vector; the segment coordinate is truncated
    /// and floored at 1.
    pub fn from_decision(x: &[f64]) -> Result<Self> {
        if x.len() != 5 {
            return Err(Error::InvalidInput(format!("bowtie decision vector has 5 coordinates, got {}", x.len())));
        }
        let seg = x[2].trunc().max(1.0) as u32;
        Self::new(x[0], x[1], seg, x[3], x[4])
    }

    pub fn validate(&self) -> Result<()> {
        let within = |v: f64, (lo, hi): (f64, f64)| v.is_finite() && (lo..=hi).contains(&v);
        let b = Self::BOUNDS;
        let ok = within(self.arm_len_m, b[0])
            && within(self.half_angle_deg, b[1])
            && (1..=self.n_segs_arm).contains(&self.load_seg)
            && (self.r_load_ohm == 0.0 || within(self.r_load_ohm, b[3]))
            && within(self.z0_ohm, b[4]);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("bowtie design outside its decision space: {self:?}")))
        }
    }

    /// Feed impedance as used in the deck and for VSWR (two decimals).
    pub fn z0_rounded(&self) -> f64 {
        round_to(self.z0_ohm, 2)
    }
}

/// Deck for a bowtie design.
pub fn gen_bowtie_deck(design: &BowtieDesign, freq: &FreqSweep, meta: &DeckMeta) -> Result<NecDeck> {
    design.validate()?;
    let arm = round_to(design.arm_len_m, 3);
    let angle = round_to(design.half_angle_deg.to_radians(), 3);
    let r_load = round_to(design.r_load_ohm, 2);
    let z0 = design.z0_rounded();
    let a = design.wire_radius_m;
    let y0 = design.feed_len_m / 2.0;
    let ye = round_to(y0 + arm * angle.cos(), 3);
    let ze = round_to(arm * angle.sin(), 3);
    let seg = design.load_seg;
    let n = design.n_segs_arm;

    let mut cards = vec![
        format!("CM File: {}", meta.file_name.as_deref().unwrap_or("BOWTIE.NEC")),
        "CM R-LOADED BOWTIE IN FREE SPACE WITH".into(),
        "CM Zo AS AN OPTIMIZATION PARAMETER.".into(),
        "CM Antenna in Y-Z plane.".into(),
        format!("CM Run ID: {}", meta.run_id),
        "CM Fitness function:".into(),
        "CM [Min(Eff)+5*Min(Gmax)]/[|Zo-MaxRin|*(MaxVSWR-MinVSWR)*(MaxXin-MinXin)]".into(),
        format!("CM Arm Length = {} meters", basic_str(arm)),
        format!("CM Bowtie HALF Angle = {} degrees", basic_str(round_to(design.half_angle_deg, 2))),
        format!("CM Zo = {} ohms", basic_str(z0)),
        format!("CM Rload = {} ohms", basic_str(r_load)),
        format!("CM Loaded Seg # = {seg}/{n}"),
        format!("CM File ID {}", meta.file_id),
    ];
    if let Some((p, j)) = meta.probe_step {
        cards.push(format!("CM Nd = 5, p = {p}, j = {j}"));
    }
    cards.push("CE".into());
    let gw = |tag: u32, segs: u32, p1: (f64, f64), p2: (f64, f64)| {
        format!(
            "GW{tag},{segs},0.,{},{},0.,{},{},{}",
            fp_str(p1.0),
            fp_str(p1.1),
            fp_str(p2.0),
            fp_str(p2.1),
            fp_str(a)
        )
    };
    cards.push(gw(1, design.n_segs_feed, (-y0, 0.0), (y0, 0.0)));
    cards.push(gw(2, n, (y0, 0.0), (ye, ze)));
    cards.push(gw(3, n, (y0, 0.0), (ye, -ze)));
    cards.push(gw(4, n, (ye, ze), (ye, -ze)));
    cards.push(gw(5, n, (-y0, 0.0), (-ye, ze)));
    cards.push(gw(6, n, (-y0, 0.0), (-ye, -ze)));
    cards.push(gw(7, n, (-ye, ze), (-ye, -ze)));
    cards.push("GE".into());
    if r_load != 0.0 {
        for wire in [2, 3, 5, 6] {
            cards.push(format!("LD0,{wire},{seg},{seg},{},0.,0.", fp_str(r_load)));
        }
    }
    cards.push(freq.card());
    cards.push(format!("EX 0,1,{},1,1,0.", design.n_segs_feed / 2 + 1));
    cards.push("RP 0,19,1,1001,0.,0.,5.,0.,100000.".into());
    cards.push("EN".into());
    let deck = NecDeck { name: "BOWTIE".into(), cards, file_id: meta.file_id.clone() };
    deck.validate()?;
    Ok(deck)
}

/// Yagi-Uda array along +X with elements parallel to Y.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YagiDesign {
    /// Spacing from the previous element, wavelengths; the reflector's is 0.
    pub spacings_wl: Vec<f64>,
    pub lengths_wl: Vec<f64>,
    pub z0_ohm: f64,
    pub radius_wl: f64,
    pub fc_mhz: f64,
    pub n_segs: u32,
}

impl YagiDesign {
    pub const SPACING_BOUNDS: (f64, f64) = (0.1, 0.5);
    pub const LENGTH_BOUNDS: (f64, f64) = (0.2, 0.6);
    pub const Z0_BOUNDS: (f64, f64) = (5.0, 600.0);

    pub fn new(spacings_wl: Vec<f64>, lengths_wl: Vec<f64>, z0_ohm: f64) -> Result<Self> {
        let d = Self { spacings_wl, lengths_wl, z0_ohm, radius_wl: 0.00635, fc_mhz: 299.8, n_segs: 9 };
        d.validate()?;
        Ok(d)
    }

    /// Design from element positions along the boom rather than spacings.
    pub fn from_boom_positions(positions_wl: &[f64], lengths_wl: Vec<f64>, z0_ohm: f64) -> Result<Self> {
        let mut spacings = vec![0.0; positions_wl.len()];
        for k in 1..positions_wl.len() {
            spacings[k] = positions_wl[k] - positions_wl[k - 1];
        }
        if positions_wl.first().is_some_and(|p| *p != 0.0) {
            return Err(Error::InvalidConfig("the reflector sits at boom position 0".into()));
        }
        Self::new(spacings, lengths_wl, z0_ohm)
    }

    /// Optimized six-element design #1 (Z0 = 65.75 ohms).
    pub fn published_1() -> Self {
        Self::from_boom_positions(
            &[0.0, 0.343, 0.540, 0.827, 1.137, 1.410],
            vec![0.468, 0.456, 0.380, 0.372, 0.368, 0.378],
            65.75,
        )
        .expect("valid design")
    }

    /// Optimized six-element design #2 (Z0 = 89.88 ohms).
    pub fn published_2() -> Self {
        Self::from_boom_positions(
            &[0.0, 0.305, 0.434, 0.715, 0.921, 1.238],
            vec![0.564, 0.500, 0.370, 0.360, 0.364, 0.344],
            89.88,
        )
        .expect("valid design")
    }

    /// Decision-space bounds for an `n`-element array: n spacings (first
    /// pinned to 0), n lengths, then Z0.
    pub fn bounds(n_elements: usize) -> Vec<(f64, f64)> {
        let mut b = vec![(0.0, 0.0)];
        b.extend(std::iter::repeat(Self::SPACING_BOUNDS).take(n_elements.saturating_sub(1)));
        b.extend(std::iter::repeat(Self::LENGTH_BOUNDS).take(n_elements));
        b.push(Self::Z0_BOUNDS);
        b
    }

    /// Design from a `2n + 1` decision vector laid out as [`bounds`](Self::bounds).
    pub fn from_decision(x: &[f64]) -> Result<Self> {
        if x.len() < 5 || x.len() % 2 == 0 {
            return Err(Error::InvalidInput(format!("Yagi decision vector must have 2n+1 coordinates, got {}", x.len())));
        }
        let n = (x.len() - 1) / 2;
        Self::new(x[..n].to_vec(), x[n..2 * n].to_vec(), x[2 * n])
    }

    pub fn n_elements(&self) -> usize {
        self.lengths_wl.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.lengths_wl.len();
        let within = |v: f64, (lo, hi): (f64, f64)| v.is_finite() && (lo - 1e-9..=hi + 1e-9).contains(&v);
        let ok = n >= 2
            && self.spacings_wl.len() == n
            && self.spacings_wl[0] == 0.0
            && self.spacings_wl[1..].iter().all(|s| within(*s, Self::SPACING_BOUNDS))
            && self.lengths_wl.iter().all(|l| within(*l, Self::LENGTH_BOUNDS))
            && within(self.z0_ohm, Self::Z0_BOUNDS);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("Yagi design outside its decision space: {self:?}")))
        }
    }

    /// Feed impedance as used in the deck and for VSWR (two decimals).
    pub fn z0_rounded(&self) -> f64 {
        round_to(self.z0_ohm, 2)
    }

    /// Element positions along the boom as written to the deck.
    pub fn boom_positions(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.spacings_wl
            .iter()
            .map(|s| {
                acc += round_to(*s, 3);
                round_to(acc, 3)
            })
            .collect()
    }
}

fn describe_coefficients(c: &YagiCoefficients) -> String {
    if *c == YagiCoefficients::DESIGN_1 {
        return "Gfwd(L)/5-2*VSWR(L)+Gfwd(M)-4*VSWR(M)+Gfwd(U)-2*VSWR(U)/5".into();
    }
    let c = c.0.map(basic_str);
    format!(
        "{}*Gfwd(L)-{}*VSWR(L)+{}*Gfwd(M)-{}*VSWR(M)+{}*Gfwd(U)-{}*VSWR(U)",
        c[0], c[1], c[2], c[3], c[4], c[5]
    )
}

/// Deck for a Yagi design.
pub fn gen_yagi_deck(
    design: &YagiDesign,
    freq: &FreqSweep,
    coeffs: &YagiCoefficients,
    meta: &DeckMeta,
) -> Result<NecDeck> {
    design.validate()?;
    let mut cards = vec![
        format!("CM File: {}", meta.file_name.as_deref().unwrap_or("YAGI.NEC")),
        "CM YAGI ARRAY IN FREE SPACE".into(),
        format!("CM Band center frequency, Fc = {} MHz", basic_str(design.fc_mhz)),
        format!("CM Run ID: {}", meta.run_id),
        "CM Fitness function:".into(),
        format!("CM {}", describe_coefficients(coeffs)),
        "CM where L,M,U are lower/mid/upper frequencies".into(),
        format!("CM Zo={} ohms", basic_str(design.z0_rounded())),
        format!("CM File ID {}", meta.file_id),
    ];
    if let Some((p, j)) = meta.probe_step {
        cards.push(format!("CM Nd= {}, p= {p}, j= {j}", 2 * design.n_elements() + 1));
    }
    cards.push("CE".into());
    for (k, (x, len)) in design.boom_positions().into_iter().zip(&design.lengths_wl).enumerate() {
        let y1 = round_to(-len / 2.0, 3);
        cards.push(format!(
            "GW{},{},{x},{y1},0.,{x},{y2},0.,{r}",
            k + 1,
            design.n_segs,
            x = fp_str(x),
            y1 = fp_str(y1),
            y2 = fp_str(-y1),
            r = fp_str(design.radius_wl)
        ));
    }
    cards.push("GE".into());
    cards.push(freq.card());
    cards.push(format!("EX 0,2,{},1,1,0.", design.n_segs / 2 + 1));
    cards.push("RP 0,19,19,1001,0.,0.,5.,10.,100000.".into());
    cards.push("EN".into());
    let deck = NecDeck { name: "YAGI".into(), cards, file_id: meta.file_id.clone() };
    deck.validate()?;
    Ok(deck)
}

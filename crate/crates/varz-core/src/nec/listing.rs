//! Synthetic output listings in the engine's column layout, for fixtures and
//! stub engines.

use std::fmt::Write;

use super::deck::NecDeck;
use super::format::fortran_e;

/// One pattern row: angles in degrees and total power gain in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternRow {
    pub theta: f64,
    pub phi: f64,
    pub total_db: f64,
}

/// Data for one frequency block.
#[derive(Debug, Clone, PartialEq)]
pub struct ListingBlock {
    pub f_mhz: f64,
    pub rin_ohm: f64,
    pub xin_ohm: f64,
    pub eff_pct: f64,
    pub pattern: Vec<PatternRow>,
}

/// Renders a listing that echoes the deck's comment cards and reports each
/// block at the fixed columns the parser reads, ending with the completion
/// marker unless `complete` is false.
pub fn render_listing(deck: &NecDeck, blocks: &[ListingBlock], complete: bool) -> String {
    let mut out = String::new();
    let pad = " ".repeat(31);
    let _ = writeln!(out, "{pad}*********************************************");
    let _ = writeln!(out, "{pad}   SYNTHETIC ELECTROMAGNETICS CODE LISTING");
    let _ = writeln!(out, "{pad}*********************************************");
    let _ = writeln!(out);
    let _ = writeln!(out, "{pad}---------------- COMMENTS ----------------");
    for c in deck.cards.iter().filter(|c| c.starts_with("CM")) {
        let _ = writeln!(out, "{pad}{}", c[2..].trim_start());
    }
    for b in blocks {
        let _ = writeln!(out);
        let _ = writeln!(out, "{pad}--------- FREQUENCY --------");
        let _ = writeln!(out, "{pad}FREQUENCY={} MHZ", fortran_e(b.f_mhz));
        let _ = writeln!(out);
        let _ = writeln!(out, "{}--------- ANTENNA INPUT PARAMETERS ---------", " ".repeat(24));
        let _ = writeln!(
            out,
            "  TAG   SEG.       VOLTAGE (VOLTS)         CURRENT (AMPS)         IMPEDANCE (OHMS)        ADMITTANCE (MHOS)     POWER"
        );
        let _ = writeln!(
            out,
            "  NO.   NO.     REAL        IMAG.       REAL        IMAG.       REAL        IMAG.       REAL        IMAG.     (WATTS)"
        );
        let z2 = b.rin_ohm * b.rin_ohm + b.xin_ohm * b.xin_ohm;
        let (cr, ci) = if z2 > 0.0 { (b.rin_ohm / z2, -b.xin_ohm / z2) } else { (0.0, 0.0) };
        let mut data = format!("  {:>4} {:>5}", 1, 2);
        for v in [1.0, 0.0, cr, ci, b.rin_ohm, b.xin_ohm, cr, ci, 0.5 * cr] {
            data.push_str(&fortran_e(v));
        }
        let _ = writeln!(out, "{data}");
        let _ = writeln!(out);
        let _ = writeln!(out, "{}---------- POWER BUDGET ---------", " ".repeat(27));
        let _ = writeln!(out, "{pad}INPUT POWER   = {} WATTS", fortran_e(0.5 * cr));
        let _ = writeln!(out, "{pad}EFFICIENCY    = {:>7.2} PERCENT", b.eff_pct);
        let _ = writeln!(out);
        let _ = writeln!(out, "{}---------- RADIATION PATTERNS -----------", " ".repeat(27));
        let _ = writeln!(
            out,
            " ---- ANGLES -----     ---- POWER GAINS ----   ---- POLARIZATION ----   ---- E(THETA) ----    ----- E(PHI) ------"
        );
        let _ = writeln!(
            out,
            "  THETA     PHI      VERT.   HOR.    TOTAL     AXIAL    TILT   SENSE   MAGNITUDE    PHASE    MAGNITUDE    PHASE"
        );
        let _ = writeln!(
            out,
            " DEGREES  DEGREES     DB      DB      DB       RATIO    DEG.            VOLTS/M   DEGREES     VOLTS/M   DEGREES"
        );
        for r in &b.pattern {
            let _ = writeln!(
                out,
                " {:9.2}{:9.2} {:8.2}{:8.2}{:8.2}  0.00000    0.00  LINEAR  1.00000E-04    0.00  0.00000E+00    0.00",
                r.theta, r.phi, r.total_db, -999.99, r.total_db
            );
        }
    }
    let _ = writeln!(out);
    if complete {
        let _ = writeln!(out, "{pad}RUN TIME =     0.010");
    }
    out
}

//! Strategies and property bodies shared by the property suite and the
//! acceptance harness.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use varz_core::antenna::{
    bowtie_fitness, extract_bands, vswr, yagi_fitness, FrequencySample, MinMax, PerformanceSummary, SweepTable,
    YagiCoefficients,
};
use varz_core::cfo::{
    compute_accelerations, frep_next, retrieve_errant_directional, retrieve_errant_simple, CfoParams, DecisionSpace,
    Positions,
};

pub type Check = Result<(), TestCaseError>;

/// Random box, previous positions inside it, current positions overshooting
/// it by up to three box widths, previous accelerations (some zero), and Frep.
pub type RetrievalState = (DecisionSpace, Positions, Positions, Positions, f64);

pub fn retrieval_state() -> impl Strategy<Value = RetrievalState> {
    (1usize..8, 1usize..5).prop_flat_map(|(np, nd)| {
        let bounds = prop::collection::vec((-1e3f64..1e3, 1e-3f64..1e3), nd);
        let frac = prop::collection::vec(prop::collection::vec(0.0f64..=1.0, nd), np);
        let over = prop::collection::vec(prop::collection::vec(-3.0f64..4.0, nd), np);
        let acc =
            prop::collection::vec(prop::collection::vec(prop_oneof![1 => Just(0.0), 4 => -1e3f64..1e3], nd), np);
        (bounds, frac, over, acc, 0.05f64..=1.0).prop_map(|(b, frac, over, acc, frep)| {
            let space = DecisionSpace::from_pairs(&b.iter().map(|&(lo, w)| (lo, lo + w)).collect::<Vec<_>>()).unwrap();
            let at = |f: &Vec<Vec<f64>>| -> Positions {
                f.iter().map(|p| p.iter().enumerate().map(|(i, t)| b[i].0 + t * b[i].1).collect()).collect()
            };
            (space, at(&frac), at(&over), acc, frep)
        })
    })
}

fn contained(space: &DecisionSpace, r: &Positions) -> bool {
    r.iter().all(|p| space.contains(p))
}

pub fn retrieval_contains((space, prev, cur, acc, frep): RetrievalState) -> Check {
    let mut simple = cur.clone();
    retrieve_errant_simple(&mut simple, &prev, &space, frep);
    prop_assert!(contained(&space, &simple));
    // Loop order: simple pass, then directional pass.
    retrieve_errant_directional(&mut simple, &prev, &acc, &space, frep);
    prop_assert!(contained(&space, &simple));
    let mut dir = cur.clone();
    retrieve_errant_directional(&mut dir, &prev, &acc, &space, frep);
    retrieve_errant_simple(&mut dir, &prev, &space, frep);
    prop_assert!(contained(&space, &dir));
    for (a, b) in cur.iter().zip(&simple) {
        if space.contains(a) {
            prop_assert_eq!(a, b, "in-bounds probes are untouched");
        }
    }
    Ok(())
}

/// Box plus a sequence of best points given as fractions of the live box
/// (values outside [0, 1] lie outside it).
pub fn shrink_case() -> impl Strategy<Value = (Vec<(f64, f64)>, Vec<Vec<f64>>)> {
    (
        prop::collection::vec((-1e3f64..1e3, 1e-2f64..1e3), 1..5)
            .prop_map(|b| b.into_iter().map(|(lo, w)| (lo, lo + w)).collect()),
        prop::collection::vec(prop::collection::vec(-0.5f64..1.5, 5), 1..12),
    )
}

pub fn shrink_nests_and_halves((pairs, picks): (Vec<(f64, f64)>, Vec<Vec<f64>>)) -> Check {
    let mut s = DecisionSpace::from_pairs(&pairs).unwrap();
    for pick in &picks {
        let (lo0, hi0) = (s.live_min().to_vec(), s.live_max().to_vec());
        let best: Vec<f64> = (0..pairs.len()).map(|i| lo0[i] + pick[i] * (hi0[i] - lo0[i])).collect();
        s.shrink(&best).unwrap();
        for i in 0..pairs.len() {
            prop_assert!(s.live_min()[i] >= lo0[i] && s.live_max()[i] <= hi0[i], "nested");
            prop_assert!(s.live_min()[i] >= pairs[i].0 && s.live_max()[i] <= pairs[i].1, "inside start");
            let (w0, w1) = (hi0[i] - lo0[i], s.live_max()[i] - s.live_min()[i]);
            let tol = 1e-12 * pairs[i].0.abs().max(pairs[i].1.abs()).max(1.0);
            prop_assert!((w1 - w0 / 2.0).abs() <= tol, "halved: {} vs {}", w1, w0);
        }
    }
    s.reset();
    prop_assert_eq!(s.live_min(), s.start_min());
    Ok(())
}

/// Probe positions (3-D) with fitness, and a permutation seed.
pub fn accel_case() -> impl Strategy<Value = (Vec<(Vec<f64>, f64)>, u64)> {
    (prop::collection::vec((prop::collection::vec(-10f64..10.0, 3), -5f64..5.0), 2..9), any::<u64>())
}

pub fn accel_permutation_symmetric((pts, seed): (Vec<(Vec<f64>, f64)>, u64)) -> Check {
    let r: Positions = pts.iter().map(|p| p.0.clone()).collect();
    let m: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let n = r.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    let params = CfoParams::default();
    let a = compute_accelerations(&r, &m, &params);
    let rp: Positions = perm.iter().map(|&k| r[k].clone()).collect();
    let mp: Vec<f64> = perm.iter().map(|&k| m[k]).collect();
    let ap = compute_accelerations(&rp, &mp, &params);
    for (slot, &k) in perm.iter().enumerate() {
        for i in 0..3 {
            let tol = 1e-12 * a[k][i].abs().max(1.0);
            prop_assert!((ap[slot][i] - a[k][i]).abs() <= tol);
        }
    }
    Ok(())
}

/// Iterates `frep_next` from the default start `iters` times.
pub fn frep_orbit(iters: usize) -> Check {
    let params = CfoParams::default();
    let mut f = params.frep_init;
    for _ in 0..iters {
        f = frep_next(f, &params);
        prop_assert!((0.05..=1.0).contains(&f), "frep {} left [0.05, 1]", f);
    }
    Ok(())
}

/// (Z0, Rin, Xin, scale k).
pub fn vswr_triple() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (1.0f64..1e4, 0.1f64..1e4, -1e4f64..1e4, 1e-3f64..1e3)
}

pub fn vswr_symmetric_and_scale_invariant((z0, rin, xin, k): (f64, f64, f64, f64)) -> Check {
    let v = vswr(z0, rin, xin).unwrap();
    prop_assert!(v >= 1.0);
    prop_assert_eq!(v.to_bits(), vswr(z0, rin, -xin).unwrap().to_bits(), "conjugate symmetry");
    let s = vswr(k * z0, k * rin, k * xin).unwrap();
    prop_assert!(((s - v) / v).abs() <= 1e-9, "scale invariance: {} vs {}", s, v);
    Ok(())
}

/// VSWR column (with exact-threshold ties), start frequency and step.
pub fn band_table() -> impl Strategy<Value = (Vec<f64>, f64, f64)> {
    (prop::collection::vec(prop_oneof![1.0f64..2.0, Just(2.0), 2.0f64..10.0], 1..200), 1.0f64..1000.0, 0.5f64..50.0)
}

pub fn bands_match_brute_force((vs, f0, step): (Vec<f64>, f64, f64)) -> Check {
    let rows: Vec<FrequencySample> = vs
        .iter()
        .enumerate()
        .map(|(k, &v)| FrequencySample {
            f_mhz: f0 + k as f64 * step,
            eff_pct: 100.0,
            gmax_dbi: 0.0,
            gmin_dbi: 0.0,
            gfwd_dbi: 0.0,
            rin_ohm: 50.0,
            xin_ohm: 0.0,
            vswr: v,
        })
        .collect();
    let table = SweepTable::new(50.0, rows.clone()).unwrap();
    let bands = extract_bands(&table, 2.0).unwrap();
    // A band opens on a passing row whose predecessor fails and extends over
    // the following passing rows.
    let pass: Vec<bool> = vs.iter().map(|&v| v <= 2.0).collect();
    let mut expect = Vec::new();
    for k in 0..pass.len() {
        if pass[k] && (k == 0 || !pass[k - 1]) {
            let end = (k..pass.len()).take_while(|&e| pass[e]).last().unwrap();
            expect.push((rows[k].f_mhz, rows[end].f_mhz));
        }
    }
    let got: Vec<(f64, f64)> = bands.iter().map(|b| (b.f_lo, b.f_hi)).collect();
    prop_assert_eq!(got, expect);
    for b in &bands {
        prop_assert_eq!(b.width, b.f_hi - b.f_lo);
        prop_assert!(b.frac_pct >= 0.0);
    }
    Ok(())
}

/// Summary extremes and Z0 for the bowtie oracle.
pub fn bowtie_case() -> impl Strategy<Value = (PerformanceSummary, f64)> {
    let mm = |lo: std::ops::Range<f64>, span: std::ops::Range<f64>| {
        (lo, span).prop_map(|(a, w)| MinMax { min: a, max: a + w })
    };
    (
        mm(1.0..5.0, 0.01..40.0),
        mm(1.0..200.0, 1.0..900.0),
        mm(-500.0..0.0, 1.0..900.0),
        mm(0.0..100.0, 0.0..10.0),
        mm(-20.0..10.0, 0.0..10.0),
        mm(-20.0..10.0, 0.0..10.0),
        50.0f64..1000.0,
    )
        .prop_filter("Z0 off max Rin", |(_, rin, _, _, _, _, z0)| (rin.max - z0).abs() > 1e-6)
        .prop_map(|(vswr, rin, xin, eff, gmax, gfwd, z0)| {
            (PerformanceSummary { vswr, rin, xin, eff, gmax, gfwd, rows: 10 }, z0)
        })
}

pub fn bowtie_matches_direct_arithmetic((s, z0): (PerformanceSummary, f64)) -> Check {
    let got = bowtie_fitness(&s, z0).unwrap();
    let num = s.eff.min + 5.0 * s.gmax.min;
    let den = (z0 - s.rin.max).abs() * (s.vswr.max - s.vswr.min) * (s.xin.max - s.xin.min);
    let want = num / den;
    prop_assert!((got - want).abs() <= 1e-12 * want.abs().max(f64::MIN_POSITIVE), "{} vs {}", got, want);
    Ok(())
}

pub fn yagi_case() -> impl Strategy<Value = ([f64; 3], [f64; 3], [f64; 6])> {
    (
        prop::array::uniform3(-10.0f64..20.0),
        prop::array::uniform3(1.0f64..20.0),
        prop::array::uniform6(0.0f64..10.0),
    )
}

pub fn yagi_matches_direct_arithmetic((g, v, c): ([f64; 3], [f64; 3], [f64; 6])) -> Check {
    let got = yagi_fitness(g, v, &YagiCoefficients::new(c).unwrap());
    let terms = [c[0] * g[0], -c[1] * v[0], c[2] * g[1], -c[3] * v[1], c[4] * g[2], -c[5] * v[2]];
    let want: f64 = terms.iter().sum();
    // Relative to the largest term, since the sum may cancel.
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs())).max(1e-300);
    prop_assert!((got - want).abs() <= 1e-12 * scale, "{} vs {}", got, want);
    Ok(())
}

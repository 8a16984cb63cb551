//! The individual CFO update rules, each a pure function of its arguments.

use super::{CfoParams, DecisionSpace, Positions};
use crate::{Error, Result};

/// Places `np_per_dim · Nd` probes on axis-parallel probe lines inside the live bounds.
///
/// Every coordinate starts at `min + γ·(max − min)`; probe line `i` then spreads
/// its `np_per_dim` probes uniformly from `min_i` to `max_i` along axis `i`.
pub fn init_probe_lines(space: &DecisionSpace, np_per_dim: usize, gamma: f64) -> Result<Positions> {
    let nd = space.dims();
    let min_per_dim = if nd == 1 { 3 } else { 2 };
    if np_per_dim < min_per_dim {
        return Err(Error::InvalidConfig(format!(
            "np_per_dim must be at least {min_per_dim} for Nd = {nd}, got {np_per_dim}"
        )));
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidConfig(format!("gamma must lie in [0, 1], got {gamma}")));
    }
    let (lo, hi) = (space.live_min(), space.live_max());
    let base: Vec<f64> = (0..nd).map(|i| lo[i] + gamma * (hi[i] - lo[i])).collect();
    let mut r = vec![base; np_per_dim * nd];
    for i in 0..nd {
        let delta = (hi[i] - lo[i]) / (np_per_dim - 1) as f64;
        for k in 0..np_per_dim {
            r[k + np_per_dim * i][i] = lo[i] + k as f64 * delta;
        }
    }
    Ok(r)
}

/// Pseudo-gravitational acceleration of every probe.
///
/// Only probes with strictly higher fitness attract; coincident probes
/// contribute nothing.
pub fn compute_accelerations(positions: &Positions, fitness: &[f64], params: &CfoParams) -> Positions {
    let np = positions.len();
    let nd = positions.first().map_or(0, Vec::len);
    let mut a = vec![vec![0.0; nd]; np];
    for p in 0..np {
        for k in 0..np {
            if k == p {
                continue;
            }
            let df = fitness[k] - fitness[p];
            if df <= 0.0 {
                continue;
            }
            let dist = positions[k]
                .iter()
                .zip(&positions[p])
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            if dist == 0.0 {
                continue;
            }
            let scale = params.g_const * df.powf(params.alpha_exp) / dist.powf(params.beta_exp);
            for i in 0..nd {
                a[p][i] += scale * (positions[k][i] - positions[p][i]);
            }
        }
    }
    a
}

/// Advances positions by one step: `R + ½·A·Δt²`. No clamping.
pub fn step_positions(positions: &Positions, accelerations: &Positions, dt: f64) -> Positions {
    positions
        .iter()
        .zip(accelerations)
        .map(|(r, a)| r.iter().zip(a).map(|(x, ax)| x + 0.5 * ax * dt * dt).collect())
        .collect()
}

/// Pulls each out-of-bounds coordinate back inside, a fraction `frep` of the
/// way from the violated bound toward the previous position.
///
/// The result is additionally clamped to the live box; this only matters when
/// the previous position itself lies outside the box (right after a shrink).
pub fn retrieve_errant_simple(current: &mut Positions, previous: &Positions, space: &DecisionSpace, frep: f64) {
    let (lo, hi) = (space.live_min(), space.live_max());
    for (r, prev) in current.iter_mut().zip(previous) {
        for i in 0..r.len() {
            if r[i] < lo[i] {
                r[i] = (lo[i] + frep * (prev[i] - lo[i])).max(lo[i]).min(hi[i]);
            }
            if r[i] > hi[i] {
                r[i] = (hi[i] - frep * (hi[i] - prev[i])).min(hi[i]).max(lo[i]);
            }
        }
    }
}

/// Repositions errant probes along their previous acceleration vector.
///
/// A probe is errant when some coordinate is outside the live box *and* the
/// matching acceleration component is nonzero. Such a probe is moved from its
/// previous position a fraction `frep` of the distance to the nearest boundary
/// plane along that acceleration. Probes with no usable direction are left to
/// [`retrieve_errant_simple`].
pub fn retrieve_errant_directional(
    current: &mut Positions,
    previous: &Positions,
    prev_accel: &Positions,
    space: &DecisionSpace,
    frep: f64,
) {
    let (lo, hi) = (space.live_min(), space.live_max());
    for ((r, prev), a) in current.iter_mut().zip(previous).zip(prev_accel) {
        let errant = (0..r.len()).any(|i| (r[i] > hi[i] || r[i] < lo[i]) && a[i] != 0.0);
        if !errant {
            continue;
        }
        let mut eta_star = f64::INFINITY;
        for i in 0..r.len() {
            if a[i] == 0.0 {
                continue;
            }
            for bound in [lo[i], hi[i]] {
                let eta = (bound - prev[i]) / a[i];
                if eta <= eta_star && eta >= 0.0 {
                    eta_star = eta;
                }
            }
        }
        let mag = a.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !eta_star.is_finite() || mag == 0.0 {
            continue;
        }
        let d_max = eta_star * mag;
        for i in 0..r.len() {
            r[i] = (prev[i] + frep * d_max * a[i] / mag).clamp(lo[i], hi[i]);
        }
    }
}

/// Next repositioning factor: `frep + Δ`, wrapping to `frep_min` past 1.
pub fn frep_next(frep: f64, params: &CfoParams) -> f64 {
    let next = frep + params.frep_delta;
    if next > 1.0 {
        params.frep_min
    } else {
        next
    }
}

/// Fitness-saturation test over the last `window` steps ending at `j`.
///
/// `m[k][p]` is the fitness of probe `p` at step `k`. Returns false until
/// `j ≥ window + 10`.
pub fn fitness_saturated(m: &[Vec<f64>], j: usize, window: usize, tol: f64) -> bool {
    if window == 0 || j < window + 10 || j >= m.len() {
        return false;
    }
    let mut sum = 0.0;
    let mut best_j = f64::NEG_INFINITY;
    for k in (j + 1 - window)..=j {
        let mut best = f64::NEG_INFINITY;
        for &v in &m[k] {
            if v >= best {
                best = v;
            }
        }
        if k == j {
            best_j = best;
        }
        sum += best;
    }
    (sum / window as f64 - best_j).abs() <= tol
}

/// Best `(fitness, probe, step)` over steps `0..=j`, scanning step-major with `>=`
/// so that the last of several equal maxima wins.
pub fn global_best(m: &[Vec<f64>], j: usize) -> (f64, usize, usize) {
    let mut best = (m[0][0], 0, 0);
    for (k, row) in m.iter().enumerate().take(j + 1) {
        for (p, &v) in row.iter().enumerate() {
            if v >= best.0 {
                best = (v, p, k);
            }
        }
    }
    best
}

/// Average distance of the probes at step `j` to the best position found so far,
/// normalised by `diagonal · (Np − 1)`.
pub fn davg(run: &super::ProbeRun, j: usize, diagonal: f64) -> Result<f64> {
    if run.np < 2 {
        return Err(Error::InvalidConfig("Davg is undefined for a single probe".into()));
    }
    if diagonal <= 0.0 {
        return Err(Error::InvalidConfig("Davg needs a decision space with nonzero extent".into()));
    }
    if j > run.current_step {
        return Err(Error::InvalidInput(format!(
            "step {j} is beyond the last executed step {}",
            run.current_step
        )));
    }
    let (_, bp, bs) = global_best(&run.m, j);
    Ok(mean_distance(&run.r[bs][bp], &run.r[j], diagonal))
}

pub(crate) fn mean_distance(best: &[f64], probes: &Positions, diagonal: f64) -> f64 {
    let total: f64 = probes
        .iter()
        .map(|r| r.iter().zip(best).map(|(x, b)| (b - x) * (b - x)).sum::<f64>().sqrt())
        .sum();
    total / (diagonal * (probes.len() - 1) as f64)
}

//! Single-run driver and the (γ × Np/Nd) sweep.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kinematics::{
    compute_accelerations, fitness_saturated, frep_next, init_probe_lines, mean_distance,
    retrieve_errant_directional, retrieve_errant_simple, step_positions,
};
use super::{CfoParams, DecisionSpace, Objective, Positions};
use crate::{Error, Result};

/// Full state history of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeRun {
    /// Number of probes Np.
    pub np: usize,
    /// Dimensionality Nd.
    pub nd: usize,
    /// `r[j][p][i]`: position of probe `p` at step `j`.
    pub r: Vec<Positions>,
    /// `a[j][p][i]`: acceleration used to move from step `j` to `j + 1`.
    /// The entry for the final step is all zeros.
    pub a: Vec<Positions>,
    /// `m[j][p]`: fitness of probe `p` at step `j`.
    pub m: Vec<Vec<f64>>,
    /// Last executed step.
    pub current_step: usize,
}

/// Best point of one run together with the run's coordinates in the sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunBest {
    pub fitness: f64,
    /// Zero-based probe index.
    pub probe: usize,
    pub step: usize,
    pub np_per_dim: usize,
    pub gamma: f64,
    pub last_step: usize,
    /// Position of `probe` at `step`, captured when it was evaluated.
    pub best_position: Vec<f64>,
}

/// Per-step report series; index `j` is time step `j`, for `0..=last_step`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunSeries {
    /// Best fitness found at or before step `j` (non-decreasing).
    pub best_fitness: Vec<f64>,
    /// Normalised average distance to the best position.
    pub davg: Vec<f64>,
    /// Zero-based probe index of the best point found at or before step `j`.
    pub best_probe: Vec<usize>,
}

/// Everything a single run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub best: RunBest,
    pub series: RunSeries,
    pub run: ProbeRun,
    /// Objective calls made by this run.
    pub evaluations: u64,
}

/// Outcome of a full sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Overall best run (ties go to the run scheduled last).
    pub best: RunBest,
    /// Report series of the best run.
    pub series: RunSeries,
    /// History of the best run.
    pub run: ProbeRun,
    /// Objective calls summed over every run.
    pub evaluations: u64,
    /// Number of runs executed.
    pub runs: usize,
}

/// Uniform γ grid on [0, 1] with `n` points; a single point sits at 0.
pub fn gamma_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|k| k as f64 / (n - 1) as f64).collect(),
    }
}

/// Probes-per-dimension values visited by the sweep: even values from 2 for
/// Nd > 1, every value from 3 for Nd = 1.
pub fn np_per_dim_schedule(nd: usize, max_np_per_dim: usize) -> Vec<usize> {
    if nd == 1 {
        (3..=max_np_per_dim).collect()
    } else {
        (2..=max_np_per_dim).step_by(2).collect()
    }
}

fn evaluate_all<O: Objective + ?Sized>(objective: &O, r: &Positions, step: usize) -> Result<Vec<f64>> {
    r.iter()
        .enumerate()
        .map(|(p, x)| {
            let v = objective.evaluate(x)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFiniteFitness { probe: p, step, value: v })
            }
        })
        .collect()
}

/// Best over every (probe, step) seen so far, scanned step-major with `>=`.
struct Tracker {
    fitness: f64,
    probe: usize,
    step: usize,
    position: Vec<f64>,
}

impl Tracker {
    fn scan(&mut self, m_row: &[f64], r_row: &Positions, step: usize) {
        for (p, &v) in m_row.iter().enumerate() {
            if v >= self.fitness {
                self.fitness = v;
                self.probe = p;
                self.step = step;
                self.position.clone_from(&r_row[p]);
            }
        }
    }
}

/// Executes one CFO run for a fixed `(np_per_dim, γ)`.
///
/// The space's live bounds are used for the initial distribution and restored
/// to the starting bounds before returning, whatever the outcome.
pub fn run_single<O: Objective + ?Sized>(
    objective: &O,
    space: &mut DecisionSpace,
    np_per_dim: usize,
    gamma: f64,
    params: &CfoParams,
) -> Result<RunOutput> {
    params.validate()?;
    let out = run_inner(objective, space, np_per_dim, gamma, params);
    space.reset();
    out
}

fn run_inner<O: Objective + ?Sized>(
    objective: &O,
    space: &mut DecisionSpace,
    np_per_dim: usize,
    gamma: f64,
    params: &CfoParams,
) -> Result<RunOutput> {
    let nd = space.dims();
    let diagonal = space.start_diagonal();
    let r0 = init_probe_lines(space, np_per_dim, gamma)?;
    let np = r0.len();
    if np < 2 {
        return Err(Error::InvalidConfig("a run needs at least two probes".into()));
    }
    if diagonal <= 0.0 {
        return Err(Error::InvalidConfig("decision space has zero extent".into()));
    }

    let m0 = evaluate_all(objective, &r0, 0)?;
    let mut evaluations = np as u64;
    let mut r = vec![r0];
    let mut a: Vec<Positions> = Vec::new();
    let mut m = vec![m0];

    let mut best = Tracker { fitness: m[0][0], probe: 0, step: 0, position: r[0][0].clone() };
    best.scan(&m[0], &r[0], 0);

    let mut series = RunSeries::default();
    series.best_fitness.push(best.fitness);
    series.davg.push(mean_distance(&best.position, &r[0], diagonal));
    series.best_probe.push(best.probe);

    let mut frep = params.frep_init;
    let mut last_step = params.nt;
    for j in 1..=params.nt {
        let acc = compute_accelerations(&r[j - 1], &m[j - 1], params);
        let mut rj = step_positions(&r[j - 1], &acc, params.dt);
        retrieve_errant_simple(&mut rj, &r[j - 1], space, frep);
        retrieve_errant_directional(&mut rj, &r[j - 1], &acc, space, frep);

        let mj = evaluate_all(objective, &rj, j)?;
        evaluations += np as u64;
        best.scan(&mj, &rj, j);

        frep = frep_next(frep, params);

        if j >= params.shrink_every && j % params.shrink_every == 0 {
            space.shrink(&best.position)?;
            retrieve_errant_simple(&mut rj, &r[j - 1], space, frep);
            retrieve_errant_directional(&mut rj, &r[j - 1], &acc, space, frep);
        }

        a.push(acc);
        r.push(rj);
        m.push(mj);

        series.best_fitness.push(best.fitness);
        series.davg.push(mean_distance(&best.position, &r[j], diagonal));
        series.best_probe.push(best.probe);

        if fitness_saturated(&m, j, params.sat_window, params.sat_tol) {
            last_step = j;
            break;
        }
    }
    a.push(vec![vec![0.0; nd]; np]);

    let best = RunBest {
        fitness: best.fitness,
        probe: best.probe,
        step: best.step,
        np_per_dim,
        gamma,
        last_step,
        best_position: best.position,
    };
    let run = ProbeRun { np, nd, r, a, m, current_step: last_step };
    Ok(RunOutput { best, series, run, evaluations })
}

struct Acc {
    best: Option<(usize, RunOutput)>,
    error: Option<(usize, Error)>,
    evaluations: u64,
    runs: usize,
}

impl Acc {
    fn empty() -> Self {
        Self { best: None, error: None, evaluations: 0, runs: 0 }
    }

    // Max by (fitness, schedule index): identical to an in-order `>=` fold,
    // but associative, so the parallel reduction is order-independent.
    fn merge(self, other: Self) -> Self {
        let best = match (self.best, other.best) {
            (Some(x), Some(y)) => {
                let later_wins = y.1.best.fitness > x.1.best.fitness
                    || (y.1.best.fitness == x.1.best.fitness && y.0 > x.0);
                let earlier_wins = x.1.best.fitness > y.1.best.fitness
                    || (x.1.best.fitness == y.1.best.fitness && x.0 > y.0);
                debug_assert!(later_wins != earlier_wins);
                Some(if later_wins { y } else { x })
            }
            (x, None) => x,
            (None, y) => y,
        };
        let error = match (self.error, other.error) {
            (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
            (x, None) => x,
            (None, y) => y,
        };
        Self { best, error, evaluations: self.evaluations + other.evaluations, runs: self.runs + other.runs }
    }
}

/// Runs every `(np_per_dim, γ)` combination and keeps the best run.
///
/// Runs execute in parallel; the result is independent of scheduling because
/// the winner is the maximum of `(fitness, schedule index)`.
pub fn sweep<O: Objective + ?Sized>(objective: &O, space: &DecisionSpace, params: &CfoParams) -> Result<SweepResult> {
    params.validate()?;
    let schedule: Vec<(usize, f64)> = np_per_dim_schedule(space.dims(), params.max_np_per_dim)
        .into_iter()
        .flat_map(|n| gamma_grid(params.n_gamma).into_iter().map(move |g| (n, g)))
        .collect();
    if schedule.is_empty() {
        return Err(Error::InvalidConfig(format!(
            "max_np_per_dim = {} yields no runs for Nd = {}",
            params.max_np_per_dim,
            space.dims()
        )));
    }
    let mut start = space.clone();
    start.reset();

    let acc = schedule
        .par_iter()
        .enumerate()
        .map(|(idx, &(n, g))| {
            let mut s = start.clone();
            match run_single(objective, &mut s, n, g, params) {
                Ok(out) => Acc { evaluations: out.evaluations, best: Some((idx, out)), error: None, runs: 1 },
                Err(e) => Acc { error: Some((idx, e)), ..Acc::empty() },
            }
        })
        .reduce(Acc::empty, Acc::merge);

    if let Some((_, e)) = acc.error {
        return Err(e);
    }
    let (_, out) = acc.best.expect("non-empty schedule produces a run");
    Ok(SweepResult { best: out.best, series: out.series, run: out.run, evaluations: acc.evaluations, runs: acc.runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfo::FnObjective;

    fn neg_sphere(x: &[f64]) -> f64 {
        -x.iter().map(|v| v * v).sum::<f64>()
    }

    #[test]
    fn gamma_grid_contains_tenths() {
        let g = gamma_grid(11);
        let expect = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];
        assert_eq!(g, expect);
        assert_eq!(gamma_grid(1), vec![0.0]);
    }

    #[test]
    fn schedules() {
        assert_eq!(np_per_dim_schedule(2, 8), vec![2, 4, 6, 8]);
        assert_eq!(np_per_dim_schedule(5, 7), vec![2, 4, 6]);
        assert_eq!(np_per_dim_schedule(1, 5), vec![3, 4, 5]);
    }

    #[test]
    fn zero_steps_returns_initial_best() {
        let mut s = DecisionSpace::new(vec![-100.0; 2], vec![100.0; 2]).unwrap();
        let p = CfoParams { nt: 0, ..CfoParams::default() };
        let out = run_single(&FnObjective(neg_sphere), &mut s, 2, 0.5, &p).unwrap();
        let initial = out.run.m[0].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(out.best.fitness, initial);
        assert_eq!(out.best.last_step, 0);
        assert_eq!(out.series.best_fitness.len(), 1);
        assert_eq!(out.evaluations, 4);
    }

    #[test]
    fn non_finite_fitness_names_probe_and_step() {
        let mut s = DecisionSpace::new(vec![-1.0; 2], vec![1.0; 2]).unwrap();
        let obj = FnObjective(|x: &[f64]| if x[0] > 0.9 { f64::NAN } else { 0.0 });
        let err = run_single(&obj, &mut s, 2, 0.5, &CfoParams::default()).unwrap_err();
        assert!(matches!(err, Error::NonFiniteFitness { probe: 1, step: 0, .. }));
    }

    #[test]
    fn bounds_reset_after_run() {
        let mut s = DecisionSpace::new(vec![-100.0; 2], vec![100.0; 2]).unwrap();
        run_single(&FnObjective(neg_sphere), &mut s, 4, 0.3, &CfoParams::default()).unwrap();
        assert_eq!(s.live_min(), s.start_min());
        assert_eq!(s.live_max(), s.start_max());
    }

    #[test]
    fn degenerate_sweep_is_single_run() {
        let s = DecisionSpace::new(vec![-10.0; 2], vec![10.0; 2]).unwrap();
        let p = CfoParams { n_gamma: 1, max_np_per_dim: 2, ..CfoParams::default() };
        let sw = sweep(&FnObjective(neg_sphere), &s, &p).unwrap();
        let mut s2 = s.clone();
        let one = run_single(&FnObjective(neg_sphere), &mut s2, 2, 0.0, &p).unwrap();
        assert_eq!(sw.runs, 1);
        assert_eq!(sw.best, one.best);
        assert_eq!(sw.evaluations, one.evaluations);
    }
}

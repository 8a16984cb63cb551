//! Classical optimization test functions, posed as maximization problems.
//!
//! Minimization problems are negated, so every entry is maximized. Names match
//! the reference driver's selectors (`GP`, `SGO`, `F1`..`F23`, ...) and lookup
//! is case-insensitive, ignoring `-`, `_`, `.` and spaces.

use std::f64::consts::{E, PI};

use crate::cfo::{DecisionSpace, Objective};
use crate::{Error, Result};

/// Fitness returned by penalty-constrained functions for infeasible points.
pub const INFEASIBLE: f64 = -1e300;

/// A recorded optimum and the precision to which it is documented.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownBest {
    pub value: f64,
    pub location: Vec<f64>,
    /// Absolute agreement expected between `value` and an evaluation at `location`.
    pub tolerance: f64,
}

/// One catalog entry.
#[derive(Debug, Clone)]
pub struct BenchmarkSpec {
    /// Canonical selector.
    pub name: &'static str,
    pub description: &'static str,
    /// Default dimensionality Nd.
    pub dims: usize,
    /// Whether the function accepts any dimensionality.
    pub variable_dims: bool,
    /// Per-dimension bounds at the default dimensionality.
    pub bounds: Vec<(f64, f64)>,
    /// Optimum at the default dimensionality, where one is recorded.
    pub known_best: Option<KnownBest>,
    /// False for entries whose reference implementation is known to be flawed.
    pub authoritative: bool,
    eval: fn(&[f64]) -> f64,
}

impl BenchmarkSpec {
    /// Fitness at `x`. Fixed-dimension functions require exactly `dims` coordinates.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let ok = if self.variable_dims { !x.is_empty() } else { x.len() == self.dims };
        if !ok {
            return Err(Error::InvalidInput(format!(
                "{} expects {} coordinates, got {}",
                self.name,
                if self.variable_dims { "at least 1".to_string() } else { self.dims.to_string() },
                x.len()
            )));
        }
        Ok((self.eval)(x))
    }

    /// Bounds at dimensionality `nd`; only variable-dimension functions accept
    /// an `nd` other than the default.
    pub fn bounds_for(&self, nd: usize) -> Result<Vec<(f64, f64)>> {
        if nd == self.dims {
            return Ok(self.bounds.clone());
        }
        if !self.variable_dims || nd == 0 {
            return Err(Error::InvalidInput(format!("{} is fixed at Nd = {}, not {nd}", self.name, self.dims)));
        }
        Ok(vec![self.bounds[0]; nd])
    }

    /// Decision space at the default dimensionality.
    pub fn space(&self) -> DecisionSpace {
        DecisionSpace::from_pairs(&self.bounds).expect("catalog bounds are valid")
    }

    /// Decision space at dimensionality `nd`.
    pub fn space_with_dims(&self, nd: usize) -> Result<DecisionSpace> {
        DecisionSpace::from_pairs(&self.bounds_for(nd)?)
    }
}

impl Objective for BenchmarkSpec {
    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        BenchmarkSpec::evaluate(self, x)
    }
}

/// Canonical lookup key: upper case with `-`, `_`, `.` and whitespace removed.
pub fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '-' | '_' | '.') && !c.is_whitespace())
        .flat_map(char::to_uppercase)
        .collect()
}

/// Resolves a benchmark by name or alias. `F7` resolves although it is not in
/// [`catalog`]; its noise term is replaced by its mean.
pub fn lookup(name: &str) -> Result<BenchmarkSpec> {
    let key = normalize_name(name);
    let key = match key.as_str() {
        "GOLDSTEINPRICE" => "GP".to_string(),
        "SCHWEFEL" => "SCHWEFEL226".to_string(),
        _ => key,
    };
    if key == "F7" {
        return Ok(f7_spec());
    }
    catalog()
        .into_iter()
        .find(|s| normalize_name(s.name) == key)
        .ok_or_else(|| Error::Catalog(name.to_string()))
}

/// Evaluates the named benchmark at `x`.
pub fn evaluate(name: &str, x: &[f64]) -> Result<f64> {
    lookup(name)?.evaluate(x)
}

fn fixed(
    name: &'static str,
    description: &'static str,
    bounds: Vec<(f64, f64)>,
    known: Option<(f64, Vec<f64>, f64)>,
    eval: fn(&[f64]) -> f64,
) -> BenchmarkSpec {
    BenchmarkSpec {
        name,
        description,
        dims: bounds.len(),
        variable_dims: false,
        bounds,
        known_best: known.map(|(value, location, tolerance)| KnownBest { value, location, tolerance }),
        authoritative: true,
        eval,
    }
}

fn n_dim(
    name: &'static str,
    description: &'static str,
    dims: usize,
    bound: (f64, f64),
    known: Option<(f64, f64)>,
    eval: fn(&[f64]) -> f64,
) -> BenchmarkSpec {
    BenchmarkSpec {
        name,
        description,
        dims,
        variable_dims: true,
        bounds: vec![bound; dims],
        known_best: known.map(|(value, at)| KnownBest { value, location: vec![at; dims], tolerance: 1e-6 }),
        authoritative: true,
        eval,
    }
}

/// The default catalog (every entry except the stochastic `F7`).
pub fn catalog() -> Vec<BenchmarkSpec> {
    let sq = |lo: f64, hi: f64, n: usize| vec![(lo, hi); n];
    let mut c = vec![
        fixed(
            "ParrottF4",
            "Parrott F4, 1-D multimodal",
            vec![(0.0, 1.0)],
            Some((1.0, vec![0.15f64.powf(4.0 / 3.0)], 1e-6)),
            parrott_f4,
        ),
        fixed(
            "SGO",
            "Space gravitational optimization test function, 2-D",
            sq(-50.0, 50.0, 2),
            Some((130.8323226, vec![-2.8362075, -2.8362075], 1e-6)),
            sgo,
        ),
        fixed("GP", "Goldstein-Price, 2-D", sq(-100.0, 100.0, 2), Some((-3.0, vec![0.0, -1.0], 1e-9)), goldstein_price),
        BenchmarkSpec {
            known_best: Some(KnownBest { value: 0.0, location: vec![75.0, 35.0], tolerance: 0.0 }),
            ..n_dim("STEP", "Step function with a (75, 35) offset in 2-D", 2, (-100.0, 100.0), None, step)
        },
        BenchmarkSpec {
            known_best: Some(KnownBest { value: 12569.5, location: vec![420.8687; 30], tolerance: 0.5 }),
            ..n_dim("SCHWEFEL226", "Schwefel problem 2.26", 30, (-500.0, 500.0), None, schwefel_226)
        },
        fixed("COLVILLE", "Colville, 4-D", sq(-10.0, 10.0, 4), Some((0.0, vec![1.0; 4], 1e-9)), colville),
        n_dim("GRIEWANK", "Griewank with a 75.123 offset", 2, (-600.0, 600.0), Some((0.0, 75.123)), griewank),
        fixed("HIMMELBLAU", "Himmelblau, 2-D, shifted to a maximum of 200", sq(-6.0, 6.0, 2), Some((200.0, vec![3.0, 2.0], 1e-9)), himmelblau),
        n_dim("ROSENBROCK", "Rosenbrock valley", 2, (-2.0, 2.0), Some((0.0, 1.0)), rosenbrock),
        n_dim("SPHERE", "Sphere", 2, (-100.0, 100.0), Some((0.0, 0.0)), sphere),
        fixed(
            "HIMMELBLAUNLO",
            "Himmelblau nonlinear constrained problem, 5-D",
            vec![(78.0, 102.0), (33.0, 45.0), (27.0, 45.0), (27.0, 45.0), (27.0, 45.0)],
            Some((31025.5562644972, vec![78.0, 33.0, 27.0709971052, 45.0, 44.9692425501], 1e-6)),
            himmelblau_nlo,
        ),
        fixed("TRIPOD", "Tripod, 2-D", sq(-100.0, 100.0, 2), Some((0.0, vec![0.0, -50.0], 0.0)), tripod),
        BenchmarkSpec {
            authoritative: false,
            ..fixed(
                "ROSENBROCKF6",
                "Shifted Rosenbrock F6, 10-D (reference code flagged as erroneous)",
                sq(-100.0, 100.0, 10),
                Some((-390.0, vec![0.0; 10], 1e-9)),
                rosenbrock_f6,
            )
        },
        fixed(
            "COMPRESSIONSPRING",
            "Compression spring design, 3-D, x1 integer",
            vec![(1.0, 70.0), (0.6, 3.0), (0.207, 0.5)],
            None,
            compression_spring,
        ),
        fixed("GEARTRAIN", "Gear train design, 4-D, integer", sq(12.0, 60.0, 4), None, gear_train),
        n_dim("F1", "Sphere model", 30, (-100.0, 100.0), Some((0.0, 0.0)), sphere),
        n_dim("F2", "Schwefel problem 2.22", 30, (-10.0, 10.0), Some((0.0, 0.0)), f2),
        n_dim("F3", "Schwefel problem 1.2", 30, (-100.0, 100.0), Some((0.0, 0.0)), f3),
        n_dim("F4", "Schwefel problem 2.21", 30, (-100.0, 100.0), Some((0.0, 0.0)), f4),
        n_dim("F5", "Rosenbrock variant as written in the reference code", 30, (-30.0, 30.0), Some((0.0, 1.0)), f5),
        n_dim("F6", "Step function", 30, (-100.0, 100.0), Some((0.0, 0.0)), f6),
        BenchmarkSpec {
            known_best: Some(KnownBest { value: 12569.5, location: vec![420.8687; 30], tolerance: 0.5 }),
            ..n_dim("F8", "Schwefel problem 2.26", 30, (-500.0, 500.0), None, schwefel_226)
        },
        n_dim("F9", "Squared-term Rastrigin", 30, (-5.12, 5.12), Some((0.0, 0.0)), f9),
        n_dim("F10", "Ackley", 30, (-32.0, 32.0), Some((0.0, 0.0)), f10),
        n_dim("F11", "Griewank with a 100 offset", 30, (-600.0, 600.0), Some((0.0, 100.0)), f11),
        n_dim("F12", "Generalized penalized function 1", 30, (-50.0, 50.0), Some((0.0, -1.0)), f12),
        n_dim("F13", "Generalized penalized function 2", 30, (-50.0, 50.0), Some((0.0, 1.0)), f13),
        fixed("F14", "Shekel's foxholes, 2-D", sq(-65.536, 65.536, 2), Some((-0.998004, vec![-32.0, -32.0], 1e-6)), f14),
        fixed(
            "F15",
            "Kowalik, 4-D",
            sq(-5.0, 5.0, 4),
            Some((-0.0003075, vec![0.1928, 0.1908, 0.1231, 0.1358], 1e-6)),
            f15,
        ),
        fixed("F16", "Six-hump camel back, 2-D", sq(-5.0, 5.0, 2), Some((1.0316285, vec![0.0898, -0.7126], 1e-6)), f16),
        fixed("F17", "Branin, 2-D", vec![(-5.0, 10.0), (0.0, 15.0)], Some((-0.397887, vec![PI, 2.275], 1e-6)), f17),
        fixed("F18", "Goldstein-Price, 2-D", sq(-2.0, 2.0, 2), Some((-3.0, vec![0.0, -1.0], 1e-9)), goldstein_price),
        fixed("F19", "Hartman family, 3-D", sq(0.0, 1.0, 3), Some((3.86, vec![0.114, 0.556, 0.852], 0.01)), f19),
        fixed(
            "F20",
            "Hartman family, 6-D",
            sq(0.0, 1.0, 6),
            Some((3.32, vec![0.201, 0.150, 0.477, 0.275, 0.311, 0.657], 0.01)),
            f20,
        ),
        fixed("F21", "Shekel family, m = 5", sq(0.0, 10.0, 4), Some((10.0, vec![4.0; 4], 0.6)), f21),
        fixed("F22", "Shekel family, m = 7", sq(0.0, 10.0, 4), Some((10.0, vec![4.0; 4], 0.6)), f22),
        fixed("F23", "Shekel family, m = 10", sq(0.0, 10.0, 4), Some((10.0, vec![4.0; 4], 0.6)), f23),
    ];
    c.shrink_to_fit();
    c
}

fn f7_spec() -> BenchmarkSpec {
    n_dim("F7", "Quartic with noise (noise fixed at its mean 0.5)", 30, (-1.28, 1.28), Some((-0.5, 0.0)), f7)
}

fn parrott_f4(x: &[f64]) -> f64 {
    let x = x[0];
    let envelope = (-2.0 * 2f64.ln() * ((x - 0.08) / 0.854).powi(2)).exp();
    envelope * (5.0 * PI * (x.powf(0.75) - 0.05)).sin().powi(6)
}

fn sgo(x: &[f64]) -> f64 {
    let t = |v: f64| v.powi(4) - 16.0 * v * v + 0.5 * v;
    -(t(x[0]) + t(x[1]))
}

fn goldstein_price(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let t1 = 1.0
        + (x1 + x2 + 1.0).powi(2)
            * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2);
    let t2 = 30.0
        + (2.0 * x1 - 3.0 * x2).powi(2)
            * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 * x2);
    -(t1 * t2)
}

fn step(x: &[f64]) -> f64 {
    let nd = x.len();
    -x.iter()
        .enumerate()
        .map(|(i, v)| {
            let offset = match (nd, i) {
                (2, 0) => 75.0,
                (2, 1) => 35.0,
                _ => 0.0,
            };
            ((v - offset) + 0.5).floor().powi(2)
        })
        .sum::<f64>()
}

fn schwefel_226(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v.abs().sqrt().sin()).sum()
}

fn colville(x: &[f64]) -> f64 {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let z = 100.0 * (x2 - x1 * x1).powi(2)
        + (1.0 - x1).powi(2)
        + 90.0 * (x4 - x3 * x3).powi(2)
        + (1.0 - x3).powi(2)
        + 10.1 * ((x2 - 1.0).powi(2) + (x4 - 1.0).powi(2))
        + 19.8 * (x2 - 1.0) * (x4 - 1.0);
    -z
}

fn griewank_with_offset(x: &[f64], offset: f64) -> f64 {
    let mut sum = 0.0;
    let mut prod = 1.0;
    for (i, v) in x.iter().enumerate() {
        let xi = v - offset;
        sum += xi * xi;
        prod *= (xi / ((i + 1) as f64).sqrt()).cos();
    }
    -(sum / 4000.0 - prod + 1.0)
}

fn griewank(x: &[f64]) -> f64 {
    griewank_with_offset(x, 75.123)
}

fn himmelblau(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    200.0 - (x1 * x1 + x2 - 11.0).powi(2) - (x1 + x2 * x2 - 7.0).powi(2)
}

fn rosenbrock(x: &[f64]) -> f64 {
    -x.windows(2).map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2)).sum::<f64>()
}

fn sphere(x: &[f64]) -> f64 {
    -x.iter().map(|v| v * v).sum::<f64>()
}

fn himmelblau_nlo(x: &[f64]) -> f64 {
    let (x1, x2, x3, x4, x5) = (x[0], x[1], x[2], x[3], x[4]);
    let g1 = 85.334407 + 0.0056858 * x2 * x5 + 0.00026 * x1 * x4 - 0.0022053 * x3 * x5;
    let g2 = 80.51249 + 0.0071317 * x2 * x5 + 0.0029955 * x1 * x2 + 0.0021813 * x3 * x3;
    let g3 = 9.300961 + 0.0047026 * x3 * x5 + 0.0012547 * x1 * x3 + 0.0019085 * x3 * x4;
    if !(0.0..=92.0).contains(&g1) || !(90.0..=110.0).contains(&g2) || !(20.0..=25.0).contains(&g3) {
        return INFEASIBLE;
    }
    -(5.3578547 * x3 * x3 + 0.8356891 * x1 * x5 + 37.29329 * x1 - 40792.141)
}

fn tripod(x: &[f64]) -> f64 {
    let sign = |v: f64| if v <= 0.0 { -1.0 } else { 1.0 };
    let (x1, x2) = (x[0], x[1]);
    let (s1, s2) = (sign(x1), sign(x2));
    let t1 = (1.0 - s2) * (x1.abs() + (x2 + 50.0).abs());
    let t2 = 0.5 * (1.0 + s2) * (1.0 - s1) * (1.0 + (x1 + 50.0).abs() + (x2 - 50.0).abs());
    let t3 = (1.0 + s1) * (2.0 + (x1 - 50.0).abs() + (x2 - 50.0).abs());
    -0.5 * (t1 + t2 + t3)
}

fn rosenbrock_f6(x: &[f64]) -> f64 {
    // Offsets are all zero in the reference configuration.
    let sum: f64 = x
        .windows(2)
        .map(|w| {
            let (zi1, zi) = (w[0] + 1.0, w[1] + 1.0);
            100.0 * (zi1 * zi1 - zi).powi(2) + (zi1 - 1.0).powi(2)
        })
        .sum();
    -(390.0 + sum)
}

fn compression_spring(x: &[f64]) -> f64 {
    let x1 = x[0].round();
    let x2 = x[1];
    let x3 = (x[2] * 1000.0).round() / 1000.0;
    let cf = 1.0 + 0.75 * x3 / (x2 - x3) + 0.615 * x3 / x2;
    let (fmax, s, lmax, sig_pm, fp, sig_w) = (1000.0, 189000.0, 14.0, 6.0, 300.0, 1.25);
    let k = 11.5e6 * x3.powi(4) / (8.0 * x1 * x2.powi(3));
    let lf = fmax / k + 1.05 * (x1 + 2.0) * x3;
    let sig_p = fp / k;
    let g = [
        8.0 * cf * fmax * x2 / (PI * x3.powi(3)) - s,
        lf - lmax,
        sig_p - sig_pm,
        sig_p - fp / k,
        sig_w - (fmax - fp) / k,
    ];
    if g.iter().any(|v| *v > 0.0) {
        return INFEASIBLE;
    }
    -(PI * PI * x2 * x3 * x3 * (x1 + 1.0) / 4.0)
}

fn gear_train(x: &[f64]) -> f64 {
    let r: Vec<f64> = x.iter().map(|v| v.round()).collect();
    -(1.0 / 6.931 - r[0] * r[1] / (r[2] * r[3])).powi(2)
}

fn f2(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v.abs()).sum();
    let prod: f64 = x.iter().map(|v| v.abs()).product();
    -(sum + prod)
}

fn f3(x: &[f64]) -> f64 {
    let mut partial = 0.0;
    -x.iter()
        .map(|v| {
            partial += v;
            partial * partial
        })
        .sum::<f64>()
}

fn f4(x: &[f64]) -> f64 {
    -x.iter().fold(f64::NEG_INFINITY, |m, v| m.max(v.abs()))
}

fn f5(x: &[f64]) -> f64 {
    -x.windows(2).map(|w| (100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0)).powi(2)).sum::<f64>()
}

fn f6(x: &[f64]) -> f64 {
    -x.iter().map(|v| (v + 0.5).floor().powi(2)).sum::<f64>()
}

fn f7(x: &[f64]) -> f64 {
    -x.iter().enumerate().map(|(i, v)| (i + 1) as f64 * v.powi(4)).sum::<f64>() - 0.5
}

fn f9(x: &[f64]) -> f64 {
    -x.iter().map(|v| (v * v - 10.0 * (2.0 * PI * v).cos() + 10.0).powi(2)).sum::<f64>()
}

fn f10(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let s1: f64 = x.iter().map(|v| v * v).sum();
    let s2: f64 = x.iter().map(|v| (2.0 * PI * v).cos()).sum();
    -(-20.0 * (-0.2 * (s1 / n).sqrt()).exp() - (s2 / n).exp() + 20.0 + E)
}

fn f11(x: &[f64]) -> f64 {
    griewank_with_offset(x, 100.0)
}

fn penalty(x: f64, a: f64, k: f64, m: i32) -> f64 {
    if x > a {
        k * (x - a).powi(m)
    } else if x < -a {
        k * (-x - a).powi(m)
    } else {
        0.0
    }
}

fn f12(x: &[f64]) -> f64 {
    let n = x.len();
    let y = |v: f64| 1.0 + (v + 1.0) / 4.0;
    let mut s1: f64 = x
        .windows(2)
        .map(|w| (y(w[0]) - 1.0).powi(2) * (1.0 + 10.0 * (PI * y(w[1])).sin().powi(2)))
        .sum();
    s1 += 10.0 * (PI * y(x[0])).sin().powi(2) + (y(x[n - 1]) - 1.0).powi(2);
    s1 = PI * s1 / n as f64;
    let s2: f64 = x.iter().map(|v| penalty(*v, 10.0, 100.0, 4)).sum();
    -(s1 + s2)
}

fn f13(x: &[f64]) -> f64 {
    let n = x.len();
    let mut s1: f64 = x
        .windows(2)
        .map(|w| (w[0] - 1.0).powi(2) * (1.0 + (3.0 * PI * w[1]).sin().powi(2)))
        .sum();
    let xn = x[n - 1];
    s1 += (3.0 * PI * x[0]).sin().powi(2) + (xn - 1.0).powi(2) * (1.0 + (2.0 * PI * xn).sin().powi(2));
    let s2: f64 = x.iter().map(|v| penalty(*v, 5.0, 100.0, 4)).sum();
    -(s1 / 10.0 + s2)
}

fn f14(x: &[f64]) -> f64 {
    const GRID: [f64; 5] = [-32.0, -16.0, 0.0, 16.0, 32.0];
    let mut sum = 0.0;
    for j in 0..25 {
        let (a1, a2) = (GRID[j % 5], GRID[j / 5]);
        let s = (x[0] - a1).powi(6) + (x[1] - a2).powi(6);
        sum += 1.0 / ((j + 1) as f64 + s);
    }
    -1.0 / (0.002 + sum)
}

fn f15(x: &[f64]) -> f64 {
    const A: [f64; 11] = [0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246];
    const INV_B: [f64; 11] = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0];
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    -A.iter()
        .zip(INV_B)
        .map(|(a, ib)| {
            let b = 1.0 / ib;
            (a - x1 * (b * b + b * x2) / (b * b + b * x3 + x4)).powi(2)
        })
        .sum::<f64>()
}

fn f16(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    -(4.0 * x1 * x1 - 2.1 * x1.powi(4) + x1.powi(6) / 3.0 + x1 * x2 - 4.0 * x2 * x2 + 4.0 * x2.powi(4))
}

fn f17(x: &[f64]) -> f64 {
    let (x1, x2) = (x[0], x[1]);
    let z = (x2 - 5.1 * x1 * x1 / (4.0 * PI * PI) + 5.0 * x1 / PI - 6.0).powi(2)
        + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * x1.cos()
        + 10.0;
    -z
}

fn hartman<const N: usize>(x: &[f64], a: &[[f64; N]; 4], p: &[[f64; N]; 4]) -> f64 {
    const C: [f64; 4] = [1.0, 1.2, 3.0, 3.2];
    (0..4)
        .map(|j| {
            let s: f64 = (0..N).map(|i| a[j][i] * (x[i] - p[j][i]).powi(2)).sum();
            C[j] * (-s).exp()
        })
        .sum()
}

fn f19(x: &[f64]) -> f64 {
    const A: [[f64; 3]; 4] = [[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]];
    const P: [[f64; 3]; 4] = [
        [0.3689, 0.1170, 0.2673],
        [0.4699, 0.4387, 0.7470],
        [0.1091, 0.8732, 0.5547],
        [0.03815, 0.5743, 0.8828],
    ];
    hartman(x, &A, &P)
}

fn f20(x: &[f64]) -> f64 {
    const A: [[f64; 6]; 4] = [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ];
    const P: [[f64; 6]; 4] = [
        [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
        [0.2348, 0.1415, 0.3522, 0.2883, 0.3047, 0.6650],
        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
    ];
    hartman(x, &A, &P)
}

const SHEKEL_A: [[f64; 4]; 10] = [
    [4.0, 4.0, 4.0, 4.0],
    [1.0, 1.0, 1.0, 1.0],
    [8.0, 8.0, 8.0, 8.0],
    [6.0, 6.0, 6.0, 6.0],
    [3.0, 7.0, 3.0, 7.0],
    [2.0, 9.0, 2.0, 9.0],
    [5.0, 5.0, 3.0, 3.0],
    [8.0, 1.0, 8.0, 1.0],
    [6.0, 2.0, 6.0, 2.0],
    [7.0, 3.6, 7.0, 3.6],
];
const SHEKEL_C: [f64; 10] = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5];

fn shekel(x: &[f64], m: usize) -> f64 {
    (0..m)
        .map(|j| {
            let s: f64 = (0..4).map(|i| (x[i] - SHEKEL_A[j][i]).powi(2)).sum();
            1.0 / (s + SHEKEL_C[j])
        })
        .sum()
}

fn f21(x: &[f64]) -> f64 {
    shekel(x, 5)
}

fn f22(x: &[f64]) -> f64 {
    shekel(x, 7)
}

fn f23(x: &[f64]) -> f64 {
    shekel(x, 10)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_is_lenient() {
        assert_eq!(lookup("goldstein-price").unwrap().name, "GP");
        assert_eq!(lookup("Schwefel_226").unwrap().name, "SCHWEFEL226");
        assert_eq!(lookup("himmelblau nlo").unwrap().name, "HIMMELBLAUNLO");
        assert!(matches!(lookup("NOPE"), Err(Error::Catalog(_))));
    }

    #[test]
    fn f7_only_by_name() {
        assert!(catalog().iter().all(|s| s.name != "F7"));
        assert_eq!(evaluate("F7", &[0.0; 30]).unwrap(), -0.5);
    }

    #[test]
    fn wrong_dimensionality_is_rejected() {
        assert!(matches!(evaluate("GP", &[0.0; 3]), Err(Error::InvalidInput(_))));
        assert!(evaluate("SPHERE", &[0.0; 7]).is_ok());
        assert!(evaluate("SPHERE", &[]).is_err());
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<String> = catalog().iter().map(|s| normalize_name(s.name)).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }
}

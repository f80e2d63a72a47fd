//! Derivative-free minimization of sectional curvature over 2-planes, with
//! deterministic multi-start, Monte Carlo positivity certification, and
//! cross-checks of the reduced search spaces against the full tangent space.

use crate::curvature::{
    berger_sectional, sectional_reduced, BergerParam, BergerPlane, MetricParams, ReducedPlane,
};
use crate::oracle::{Oracle, OracleError, OracleMetric};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OptimizerError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("search space does not apply to this metric")]
    SpaceMismatch,
    #[error("nonpositive metric parameter")]
    BadParameter,
}

/// Domain the optimizer searches over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchSpace {
    /// Isotropy-reduced planes of the three-parameter family (12 coordinates,
    /// or 11 with the second-slot coefficient pinned to zero).
    ReducedS7 { b8_free: bool },
    /// Reduced planes of the one-parameter family, 3-sphere fiber.
    ReducedBerger3,
    /// Reduced planes of the one-parameter family, 7-sphere fiber.
    ReducedBerger7,
    /// Raw pairs of tangent vectors fed to the structure-constant oracle.
    FullTangent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub seed: u64,
    pub max_iters: usize,
    pub ftol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig { restarts: 24, seed: 0, max_iters: 4000, ftol: 1e-13 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtremumReport {
    pub value: f64,
    pub point: Vec<f64>,
    pub space: SearchSpace,
    pub sense: Sense,
    /// index of the restart that produced the winning value
    pub restart: usize,
    pub evaluations: u64,
}

/// Penalty value returned for degenerate planes.
const BIG: f64 = 1e30;

fn split_plane(v: &[f64]) -> ReducedPlane {
    let mut a = [0.0; 4];
    let mut b = [0.0; 8];
    a.copy_from_slice(&v[0..4]);
    b[..v.len() - 4].copy_from_slice(&v[4..]);
    ReducedPlane { a, b }
}

fn split_berger(v: &[f64]) -> BergerPlane {
    let mut a = [0.0; 4];
    let mut b = [0.0; 6];
    a.copy_from_slice(&v[0..4]);
    b.copy_from_slice(&v[4..10]);
    BergerPlane { a, b }
}

/// Variable count and raw objective (sectional curvature, or the penalty on
/// degenerate input) for a metric/space pair.
fn objective(
    metric: &OracleMetric,
    space: SearchSpace,
) -> Result<(usize, Box<dyn Fn(&[f64]) -> f64 + Sync + Send>), OptimizerError> {
    match space {
        SearchSpace::ReducedS7 { b8_free } => {
            let t = match metric {
                OracleMetric::Sp { t, .. } => *t,
                OracleMetric::Spin { .. } => return Err(OptimizerError::SpaceMismatch),
            };
            let params =
                MetricParams::new(t[0], t[1], t[2]).map_err(|_| OptimizerError::BadParameter)?;
            let nvars = if b8_free { 12 } else { 11 };
            Ok((
                nvars,
                Box::new(move |v: &[f64]| {
                    sectional_reduced(&params, &split_plane(v)).unwrap_or(BIG)
                }),
            ))
        }
        SearchSpace::ReducedBerger3 | SearchSpace::ReducedBerger7 => {
            let fiber_dim = if space == SearchSpace::ReducedBerger3 { 3 } else { 7 };
            let t = match (metric, fiber_dim) {
                (OracleMetric::Sp { t, .. }, 3) => {
                    if (t[0] - t[1]).abs() > 1e-12 || (t[0] - t[2]).abs() > 1e-12 {
                        return Err(OptimizerError::SpaceMismatch);
                    }
                    t[0]
                }
                (OracleMetric::Spin { t }, 7) => *t,
                _ => return Err(OptimizerError::SpaceMismatch),
            };
            let param =
                BergerParam::new(t, fiber_dim).map_err(|_| OptimizerError::BadParameter)?;
            Ok((
                10,
                Box::new(move |v: &[f64]| {
                    berger_sectional(&param, &split_berger(v)).unwrap_or(BIG)
                }),
            ))
        }
        SearchSpace::FullTangent => {
            let oracle = Oracle::new(*metric)?;
            let d = oracle.dim();
            Ok((
                2 * d,
                Box::new(move |v: &[f64]| {
                    oracle.sectional_coords(&v[..d], &v[d..]).unwrap_or(BIG)
                }),
            ))
        }
    }
}

/// One Nelder-Mead run from `x0` with initial step `step`.  Returns the best
/// value, the best point, and the number of objective evaluations.
fn nelder_mead(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    x0: &[f64],
    step: f64,
    max_iters: usize,
    ftol: f64,
) -> (f64, Vec<f64>, u64) {
    let n = x0.len();
    let mut evals: u64 = 0;
    let mut eval = |x: &[f64]| -> f64 {
        evals += 1;
        f(x)
    };
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n + 1);
    simplex.push((eval(x0), x0.to_vec()));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        simplex.push((eval(&x), x));
    }
    let sort = |s: &mut Vec<(f64, Vec<f64>)>| {
        s.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal))
    };
    sort(&mut simplex);
    for _ in 0..max_iters {
        let (fbest, fworst) = (simplex[0].0, simplex[n].0);
        if fworst - fbest <= ftol * (1.0 + fbest.abs()) {
            break;
        }
        // centroid of all but the worst vertex
        let mut c = vec![0.0; n];
        for (_, x) in simplex.iter().take(n) {
            for (ci, xi) in c.iter_mut().zip(x) {
                *ci += xi / n as f64;
            }
        }
        let along = |lambda: f64| -> Vec<f64> {
            c.iter().zip(&simplex[n].1).map(|(ci, wi)| ci + lambda * (ci - wi)).collect()
        };
        let xr = along(1.0);
        let fr = eval(&xr);
        if fr < simplex[0].0 {
            let xe = along(2.0);
            let fe = eval(&xe);
            simplex[n] = if fe < fr { (fe, xe) } else { (fr, xr) };
        } else if fr < simplex[n - 1].0 {
            simplex[n] = (fr, xr);
        } else {
            let xc = if fr < simplex[n].0 { along(0.5) } else { along(-0.5) };
            let fc = eval(&xc);
            if fc < simplex[n].0.min(fr) {
                simplex[n] = (fc, xc);
            } else {
                // shrink towards the best vertex
                let best = simplex[0].1.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> =
                        best.iter().zip(&entry.1).map(|(b, x)| b + 0.5 * (x - b)).collect();
                    *entry = (eval(&x), x);
                }
            }
        }
        sort(&mut simplex);
    }
    let (fb, xb) = simplex.swap_remove(0);
    (fb, xb, evals)
}

/// Multi-start extremization of sectional curvature over a search space.
/// Restarts run in parallel but the result is deterministic for a fixed seed:
/// each restart derives its own generator from the seed and ties are broken by
/// restart index.
pub fn extremize(
    metric: &OracleMetric,
    space: SearchSpace,
    sense: Sense,
    cfg: &OptimizerConfig,
) -> Result<ExtremumReport, OptimizerError> {
    let (nvars, raw) = objective(metric, space)?;
    let g = move |v: &[f64]| {
        let val = raw(v);
        match sense {
            Sense::Min => val,
            Sense::Max => {
                if val >= BIG {
                    val
                } else {
                    -val
                }
            }
        }
    };
    let runs: Vec<(f64, usize, Vec<f64>, u64)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(
                cfg.seed ^ (r as u64).wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1),
            );
            let x0: Vec<f64> = (0..nvars).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let (v1, x1, e1) = nelder_mead(&g, &x0, 0.5, cfg.max_iters, cfg.ftol);
            let (v2, x2, e2) = nelder_mead(&g, &x1, 0.05, cfg.max_iters, cfg.ftol);
            if v2 <= v1 {
                (v2, r, x2, e1 + e2)
            } else {
                (v1, r, x1, e1 + e2)
            }
        })
        .collect();
    let evaluations = runs.iter().map(|r| r.3).sum();
    let best = runs
        .into_iter()
        .min_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap_or(std::cmp::Ordering::Equal))
        .expect("at least one restart");
    let value = match sense {
        Sense::Min => best.0,
        Sense::Max => -best.0,
    };
    Ok(ExtremumReport { value, point: best.2, space, sense, restart: best.1, evaluations })
}

/// Monte Carlo positivity certificate over reduced planes, with local
/// refinement of the worst samples.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub positive: bool,
    pub min_found: f64,
    pub worst: ReducedPlane,
    pub samples: usize,
}

pub fn certify_positive(params: &MetricParams, samples: usize, seed: u64) -> Certificate {
    let f = |v: &[f64]| sectional_reduced(params, &split_plane(v)).unwrap_or(BIG);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const KEEP: usize = 16;
    // (value, point) pairs, ascending by value
    let mut worst: Vec<(f64, Vec<f64>)> = Vec::with_capacity(KEEP + 1);
    for _ in 0..samples {
        let v: Vec<f64> = (0..12).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let val = f(&v);
        if val >= BIG {
            continue;
        }
        if worst.len() < KEEP || val < worst.last().unwrap().0 {
            let pos = worst.partition_point(|(w, _)| *w < val);
            worst.insert(pos, (val, v));
            worst.truncate(KEEP);
        }
    }
    let refined: Vec<(f64, Vec<f64>)> = worst
        .into_par_iter()
        .map(|(val, x0)| {
            let (v, x, _) = nelder_mead(&f, &x0, 0.1, 2000, 1e-13);
            if v < val {
                (v, x)
            } else {
                (val, x0)
            }
        })
        .collect();
    let (min_found, point) = refined
        .into_iter()
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal))
        .expect("nonempty sample set");
    Certificate { positive: min_found > 0.0, min_found, worst: split_plane(&point), samples }
}

/// Comparison of the full-tangent minimum against the reduced-space minimum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionReport {
    pub full: ExtremumReport,
    pub reduced: ExtremumReport,
    pub diff: f64,
}

pub fn reduction_check(
    metric: &OracleMetric,
    cfg: &OptimizerConfig,
) -> Result<ReductionReport, OptimizerError> {
    let reduced_space = match metric {
        OracleMetric::Sp { n, .. } => SearchSpace::ReducedS7 { b8_free: *n >= 3 },
        OracleMetric::Spin { .. } => SearchSpace::ReducedBerger7,
    };
    let reduced = extremize(metric, reduced_space, Sense::Min, cfg)?;
    let full = extremize(metric, SearchSpace::FullTangent, Sense::Min, cfg)?;
    let diff = (full.value - reduced.value).abs();
    Ok(ReductionReport { full, reduced, diff })
}

/// Comparison of the reduced-space minimum with and without the second
/// horizontal slot.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SecondSlotReport {
    pub free: ExtremumReport,
    pub pinned: ExtremumReport,
    pub diff: f64,
}

pub fn second_slot_check(
    params: &MetricParams,
    cfg: &OptimizerConfig,
) -> Result<SecondSlotReport, OptimizerError> {
    let metric = OracleMetric::Sp { n: 3, t: params.as_array() };
    let free = extremize(&metric, SearchSpace::ReducedS7 { b8_free: true }, Sense::Min, cfg)?;
    let pinned = extremize(&metric, SearchSpace::ReducedS7 { b8_free: false }, Sense::Min, cfg)?;
    let diff = (free.value - pinned.value).abs();
    Ok(SecondSlotReport { free, pinned, diff })
}

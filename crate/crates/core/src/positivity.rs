//! The positivity classifier for the three-parameter family, the quadratic in
//! Z behind it, zero-curvature plane families on the boundary, and the
//! implicit surfaces used by the parameter sweeps.

use crate::curvature::MetricParams;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PositivityError {
    #[error("nonpositive metric parameter")]
    BadParameter,
    #[error("metric is not on the positivity boundary")]
    NotOnBoundary,
    #[error("no root in range")]
    NoRoot,
    #[error("argument outside the curve domain")]
    OutOfDomain,
}

/// Derived quantities per cyclic index: V_i, H_i, L_i, E_i.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct InvariantTriple {
    pub v_vals: [f64; 3],
    pub h_vals: [f64; 3],
    pub l_vals: [f64; 3],
    pub e_vals: [f64; 3],
}

impl InvariantTriple {
    pub fn v(&self, i: usize) -> f64 {
        self.v_vals[i - 1]
    }
    pub fn h(&self, i: usize) -> f64 {
        self.h_vals[i - 1]
    }
    pub fn l(&self, i: usize) -> f64 {
        self.l_vals[i - 1]
    }
    pub fn e(&self, i: usize) -> f64 {
        self.e_vals[i - 1]
    }
}

/// Cyclic companions (j, k) of index i, all 1-based.
pub fn cyclic(i: usize) -> (usize, usize) {
    match i {
        1 => (2, 3),
        2 => (3, 1),
        _ => (1, 2),
    }
}

pub fn invariants(params: &MetricParams) -> InvariantTriple {
    let mut v = [0.0; 3];
    let mut h = [0.0; 3];
    let mut l = [0.0; 3];
    let mut e = [0.0; 3];
    for i in 1..=3 {
        let (j, k) = cyclic(i);
        let (ti, tj, tk) = (params.t(i), params.t(j), params.t(k));
        v[i - 1] =
            (tj * tj + tk * tk - 3.0 * ti * ti + 2.0 * ti * tj + 2.0 * ti * tk - 2.0 * tj * tk)
                / ti;
        h[i - 1] = 4.0 - 3.0 * ti;
        l[i - 1] = 6.0 * (tj * tk - tj - tk + ti);
        e[i - 1] = tj * tj * tk * tk + h[i - 1] * v[i - 1] - l[i - 1] * l[i - 1] / 4.0;
    }
    InvariantTriple { v_vals: v, h_vals: h, l_vals: l, e_vals: e }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeConstraint {
    Vertical,
    Horizontal,
}

/// Classification of a metric by the positivity criterion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Verdict {
    PositiveCurvature,
    Boundary { binding_index: usize, z: f64 },
    MixedCurvature { binding_index: usize },
    OutsideCone { index: usize, failing: ConeConstraint },
}

const BOUNDARY_TOL: f64 = 1e-9;

/// Margin of the i-th inequality: 2(t_j t_k + sqrt(H_i V_i)) - |L_i|.
/// Positive inside, zero on the boundary, negative in the mixed region.
pub fn margin(params: &MetricParams, i: usize) -> f64 {
    let inv = invariants(params);
    let (j, k) = cyclic(i);
    2.0 * (params.t(j) * params.t(k) + (inv.h(i) * inv.v(i)).max(0.0).sqrt()) - inv.l(i).abs()
}

pub fn classify(params: &MetricParams) -> Result<Verdict, PositivityError> {
    if params.t1 <= 0.0 || params.t2 <= 0.0 || params.t3 <= 0.0 {
        return Err(PositivityError::BadParameter);
    }
    let inv = invariants(params);
    for i in 1..=3 {
        if inv.v(i) <= 0.0 {
            return Ok(Verdict::OutsideCone { index: i, failing: ConeConstraint::Vertical });
        }
        if inv.h(i) <= 0.0 {
            return Ok(Verdict::OutsideCone { index: i, failing: ConeConstraint::Horizontal });
        }
    }
    let mut worst: Option<(usize, f64)> = None;
    let mut boundary: Option<usize> = None;
    for i in 1..=3 {
        let (j, k) = cyclic(i);
        let scale = 2.0 * (params.t(j) * params.t(k) + (inv.h(i) * inv.v(i)).sqrt());
        let m = scale - inv.l(i).abs();
        if m < -BOUNDARY_TOL * scale {
            if worst.map_or(true, |(_, wm)| m < wm) {
                worst = Some((i, m));
            }
        } else if m.abs() <= BOUNDARY_TOL * scale {
            boundary = Some(i);
        }
    }
    if let Some((i, _)) = worst {
        return Ok(Verdict::MixedCurvature { binding_index: i });
    }
    if let Some(i) = boundary {
        let (j, k) = cyclic(i);
        let z = (inv.v(i) / inv.h(i)).sqrt() / (params.t(j) * params.t(k));
        return Ok(Verdict::Boundary { binding_index: i, z });
    }
    Ok(Verdict::PositiveCurvature)
}

/// Real roots of t_j^2 t_k^2 H_i Z^2 + E_i Z + V_i = 0, ascending, repeated by
/// multiplicity (a near-degenerate discriminant collapses to a double root).
pub fn quad_roots(params: &MetricParams, i: usize) -> Result<Vec<f64>, PositivityError> {
    let inv = invariants(params);
    if inv.v(i) <= 0.0 || inv.h(i) <= 0.0 {
        return Err(PositivityError::NotOnBoundary);
    }
    let (j, k) = cyclic(i);
    let tjk = params.t(j) * params.t(k);
    let a = tjk * tjk * inv.h(i);
    let b = inv.e(i);
    let c = inv.v(i);
    let disc = b * b - 4.0 * a * c;
    let scale = b * b + 4.0 * a * c;
    if disc.abs() <= 1e-12 * scale {
        let r = -b / (2.0 * a);
        return Ok(vec![r, r]);
    }
    if disc < 0.0 {
        return Ok(vec![]);
    }
    let s = disc.sqrt();
    let mut r1 = (-b - s) / (2.0 * a);
    let mut r2 = (-b + s) / (2.0 * a);
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    Ok(vec![r1, r2])
}

/// One circle of zero-curvature planes on a boundary metric.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ZeroPlaneFamily {
    pub binding_index: usize,
    pub z: f64,
    /// +1 or -1, selecting one of the two returned circles.
    pub sign: f64,
    /// sign of the horizontal coefficient of Y relative to that of X,
    /// fixed numerically as the choice annihilating the curvature.
    pub eps: f64,
    params: MetricParams,
}

impl ZeroPlaneFamily {
    /// The plane at angle theta, in reduced coordinates.
    pub fn plane(&self, theta: f64) -> crate::curvature::ReducedPlane {
        let i = self.binding_index;
        let (j, k) = cyclic(i);
        let c = (self.z / (1.0 + self.z)).sqrt();
        let f = (1.0 / (1.0 + self.z)).sqrt();
        let mut a = [0.0; 4];
        let mut b = [0.0; 8];
        a[j - 1] = f * theta.cos() / self.params.t(j);
        a[k - 1] = f * theta.sin() / self.params.t(k);
        a[3] = self.sign * c;
        b[j - 1] = -f * theta.sin() / self.params.t(j);
        b[k - 1] = f * theta.cos() / self.params.t(k);
        b[4 + (i - 1)] = self.sign * self.eps * c;
        crate::curvature::ReducedPlane { a, b }
    }
}

/// The two circles of zero-curvature planes of a boundary metric.
pub fn zero_planes(params: &MetricParams) -> Result<Vec<ZeroPlaneFamily>, PositivityError> {
    let verdict = classify(params)?;
    let (i, z) = match verdict {
        Verdict::Boundary { binding_index, z } => (binding_index, z),
        _ => return Err(PositivityError::NotOnBoundary),
    };
    let inv = invariants(params);
    let mut families = Vec::new();
    for sign in [1.0, -1.0] {
        // keep whichever relative sign annihilates the curvature
        let mut best: Option<ZeroPlaneFamily> = None;
        let mut best_val = f64::INFINITY;
        for eps in [1.0, -1.0] {
            let fam = ZeroPlaneFamily { binding_index: i, z, sign, eps, params: *params };
            let p = fam.plane(0.3);
            let val = crate::curvature::curvature_quadratic(params, &p).abs();
            if val < best_val {
                best_val = val;
                best = Some(fam);
            }
        }
        let _ = inv;
        families.push(best.expect("two candidates"));
    }
    Ok(families)
}

/// Implicit surfaces over the (t1, t2) plane, solved for the third parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    /// zero locus of the vertical-curvature invariant bound to the solved axis
    VZero,
    /// the positivity boundary |L| = 2(t1 t2 + sqrt(H V)) bound to the solved axis
    LBoundary,
}

const ROOT_TOL: f64 = 1e-10;

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    // invariant: f(lo) > 0 >= f(hi)
    for _ in 0..200 {
        if hi - lo < ROOT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn v3_expr(t1: f64, t2: f64, t3: f64) -> f64 {
    // t3 * V_3: downward parabola in t3 with one positive root
    -3.0 * t3 * t3 + 2.0 * (t1 + t2) * t3 + (t1 - t2) * (t1 - t2)
}

/// t3-coordinate of the requested surface above (t1, t2).
pub fn surface_t3(t1: f64, t2: f64, which: SurfaceKind) -> Result<f64, PositivityError> {
    if t1 <= 0.0 || t2 <= 0.0 {
        return Err(PositivityError::BadParameter);
    }
    let vroot = bisect(1e-9, 4.0, |t3| v3_expr(t1, t2, t3));
    match which {
        SurfaceKind::VZero => Ok(vroot),
        SurfaceKind::LBoundary => {
            let h = |t3: f64| {
                let p = MetricParams { t1, t2, t3 };
                let inv = invariants(&p);
                inv.l(3).abs()
                    - 2.0 * (t1 * t2 + (inv.h(3).max(0.0) * inv.v(3).max(0.0)).sqrt())
            };
            let top = vroot.min(4.0 / 3.0 - 1e-12);
            if h(top) <= 0.0 {
                return Err(PositivityError::NoRoot);
            }
            let mut lo = top;
            let step = 0.01;
            loop {
                let next = lo - step;
                if next <= 1e-9 {
                    return Err(PositivityError::NoRoot);
                }
                if h(next) <= 0.0 {
                    lo = next;
                    break;
                }
                lo = next;
            }
            // invariant for bisect is f(lo) > 0 >= f(hi): h > 0 above the
            // boundary (towards the V-zero surface), <= 0 below
            Ok(bisect(lo, lo + step, |t3| -h(t3)).max(0.0))
        }
    }
}

/// Gap in the t3 coordinate between the V-zero surface and the positivity
/// boundary; zero where the boundary condition is not violated at the V-zero
/// surface.
pub fn surface_gap(t1: f64, t2: f64) -> Result<f64, PositivityError> {
    let vroot = surface_t3(t1, t2, SurfaceKind::VZero)?;
    match surface_t3(t1, t2, SurfaceKind::LBoundary) {
        Ok(broot) => Ok((vroot - broot).max(0.0)),
        Err(PositivityError::NoRoot) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Boundary curve of the t1 = t2 slice, solved for t3.
pub fn slice_curve(t1: f64) -> Result<f64, PositivityError> {
    if t1 <= 0.0 || t1 >= 0.5 {
        return Err(PositivityError::OutOfDomain);
    }
    let num = t1 * (4.0 * t1 * t1 * t1 - 12.0 * t1 * t1 - 4.0 + 9.0 * t1);
    let den = 3.0 * (2.0 * t1 - 2.0 * t1 * t1 - 1.0);
    Ok(num / den)
}

/// Residual of the curve separating the region where the positivity boundary
/// detaches from the V-zero surface: 4 t1 t2 - 4 t1 - 4 t2 + 3.
pub fn separating_curve_residual(t1: f64, t2: f64) -> f64 {
    4.0 * t1 * t2 - 4.0 * t1 - 4.0 * t2 + 3.0
}

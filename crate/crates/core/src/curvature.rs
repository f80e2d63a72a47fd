//! Closed-form curvature of the reduced 2-planes, the curvature component
//! table, and the one-parameter (Berger) family forms.

use crate::positivity::invariants;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurvatureError {
    #[error("degenerate plane: Gram determinant below tolerance")]
    DegeneratePlane,
    #[error("nonpositive metric parameter")]
    BadParameter,
}

/// Squared lengths (t1, t2, t3) of the three vertical directions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricParams {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl MetricParams {
    pub fn new(t1: f64, t2: f64, t3: f64) -> Result<MetricParams, CurvatureError> {
        if t1 > 0.0 && t2 > 0.0 && t3 > 0.0 {
            Ok(MetricParams { t1, t2, t3 })
        } else {
            Err(CurvatureError::BadParameter)
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.t1, self.t2, self.t3]
    }

    /// 1-based access.
    pub fn t(&self, i: usize) -> f64 {
        self.as_array()[i - 1]
    }

    pub fn cycled(&self, shift: usize) -> MetricParams {
        let t = self.as_array();
        MetricParams { t1: t[shift % 3], t2: t[(1 + shift) % 3], t3: t[(2 + shift) % 3] }
    }
}

/// Diagonal special case: all three vertical lengths equal t.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BergerParam {
    pub t: f64,
    pub fiber_dim: u8,
}

impl BergerParam {
    pub fn new(t: f64, fiber_dim: u8) -> Result<BergerParam, CurvatureError> {
        if t > 0.0 && (fiber_dim == 3 || fiber_dim == 7) {
            Ok(BergerParam { t, fiber_dim })
        } else {
            Err(CurvatureError::BadParameter)
        }
    }

    pub fn params(&self) -> MetricParams {
        MetricParams { t1: self.t, t2: self.t, t3: self.t }
    }
}

/// Isotropy-reduced 2-plane: X = a1 X1 + a2 X2 + a3 X3 + a4 U11,
/// Y = b1 X1 + b2 X2 + b3 X3 + b4 U11 + b5 U21 + b6 U31 + b7 U41 + b8 U12.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedPlane {
    pub a: [f64; 4],
    pub b: [f64; 8],
}

/// Reduced plane of the one-parameter family.
///
/// fiber_dim 3: Y = b1 X1 + b2 X2 + b3 X3 + b4 U11 + b5 U21 + b6 U12,
/// i.e. b = (b1, b2, b3, b4, b5, b6).
/// fiber_dim 7: Y = b1 X1 + b2 X2 + b3 X3 + x X4 + b4 U1 + b5 U5,
/// i.e. b = (b1, b2, b3, x, b4, b5).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BergerPlane {
    pub a: [f64; 4],
    pub b: [f64; 6],
}

impl BergerPlane {
    pub fn cap_a(&self) -> [f64; 3] {
        [self.a[0], self.a[1], self.a[2]]
    }

    pub fn cap_b(&self) -> [f64; 3] {
        [self.b[0], self.b[1], self.b[2]]
    }
}

const GRAM_TOL: f64 = 1e-12;

/// <R(X,Y)X,Y> of a reduced plane as a polynomial in the coefficients.
pub fn curvature_quadratic(params: &MetricParams, p: &ReducedPlane) -> f64 {
    let inv = invariants(params);
    let [t1, t2, t3] = params.as_array();
    let [a1, a2, a3, a4] = p.a;
    let [b1, b2, b3, b4, b5, b6, b7, b8] = p.b;
    let a23 = a2 * b3 - a3 * b2;
    let a31 = a3 * b1 - a1 * b3;
    let a12 = a1 * b2 - a2 * b1;
    let s2 = t1 * t1 * a1 * a1 + t2 * t2 * a2 * a2 + t3 * t3 * a3 * a3;
    inv.v(1) * a23 * a23
        + inv.v(2) * a31 * a31
        + inv.v(3) * a12 * a12
        + inv.l(1) * a23 * a4 * b5
        + inv.l(2) * a31 * a4 * b6
        + inv.l(3) * a12 * a4 * b7
        + inv.h(1) * a4 * a4 * b5 * b5
        + inv.h(2) * a4 * a4 * b6 * b6
        + inv.h(3) * a4 * a4 * b7 * b7
        + t1 * t1 * (b4 * a1 - b1 * a4) * (b4 * a1 - b1 * a4)
        + t2 * t2 * (b4 * a2 - b2 * a4) * (b4 * a2 - b2 * a4)
        + t3 * t3 * (b4 * a3 - b3 * a4) * (b4 * a3 - b3 * a4)
        + (b5 * b5 + b6 * b6 + b7 * b7) * s2
        + b8 * b8 * (s2 + a4 * a4)
}

/// Metric Gram determinant of the reduced plane (vertical lengths squared t_i,
/// horizontal lengths 1).
pub fn gram(params: &MetricParams, p: &ReducedPlane) -> f64 {
    let [t1, t2, t3] = params.as_array();
    let [a1, a2, a3, a4] = p.a;
    let [b1, b2, b3, b4, b5, b6, b7, b8] = p.b;
    let nx = t1 * a1 * a1 + t2 * a2 * a2 + t3 * a3 * a3 + a4 * a4;
    let ny = t1 * b1 * b1 + t2 * b2 * b2 + t3 * b3 * b3
        + b4 * b4
        + b5 * b5
        + b6 * b6
        + b7 * b7
        + b8 * b8;
    let xy = t1 * a1 * b1 + t2 * a2 * b2 + t3 * a3 * b3 + a4 * b4;
    nx * ny - xy * xy
}

fn plane_norms(params: &MetricParams, p: &ReducedPlane) -> (f64, f64) {
    let [t1, t2, t3] = params.as_array();
    let [a1, a2, a3, a4] = p.a;
    let [b1, b2, b3, b4, b5, b6, b7, b8] = p.b;
    let nx = t1 * a1 * a1 + t2 * a2 * a2 + t3 * a3 * a3 + a4 * a4;
    let ny = t1 * b1 * b1 + t2 * b2 * b2 + t3 * b3 * b3
        + b4 * b4
        + b5 * b5
        + b6 * b6
        + b7 * b7
        + b8 * b8;
    (nx, ny)
}

/// Sectional curvature: curvature_quadratic / gram.
pub fn sectional_reduced(params: &MetricParams, p: &ReducedPlane) -> Result<f64, CurvatureError> {
    let g = gram(params, p);
    let (nx, ny) = plane_norms(params, p);
    if g <= GRAM_TOL * nx * ny || nx == 0.0 || ny == 0.0 {
        return Err(CurvatureError::DegeneratePlane);
    }
    Ok(curvature_quadratic(params, p) / g)
}

/// Basis labels for component-table entries (1-based indices as in the text).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisVector {
    X(usize),
    U { r: usize, s: usize },
}

#[derive(Clone, Debug)]
pub struct ComponentEntry {
    pub vectors: [BasisVector; 4],
    pub value: f64,
}

fn perms3() -> [([usize; 3], f64); 6] {
    [
        ([1, 2, 3], 1.0),
        ([2, 3, 1], 1.0),
        ([3, 1, 2], 1.0),
        ([2, 1, 3], -1.0),
        ([1, 3, 2], -1.0),
        ([3, 2, 1], -1.0),
    ]
}

/// All displayed curvature components, instantiated for the available
/// horizontal slots. One-slot entries use p; two-slot entries need p != q and
/// are emitted only when n >= 3. Orientation: the real horizontal slot U_{1s}
/// is oriented so the reduced-plane polynomial holds with its printed signs,
/// which flips the sign of every entry containing an odd number of U_{1.}
/// factors relative to the alternative orientation.
pub fn component_table(params: &MetricParams, n: usize) -> Vec<ComponentEntry> {
    let inv = invariants(params);
    let mut out = Vec::new();
    let mut push = |vectors: [BasisVector; 4], value: f64| {
        out.push(ComponentEntry { vectors, value });
    };
    use BasisVector::{U, X};

    // vertical block
    for (i, j, k) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        push([X(i), X(j), X(i), X(j)], inv.v(k));
    }

    let slots: Vec<usize> = if n >= 3 { vec![1, n - 1] } else { vec![1] };
    for &p in &slots {
        for (perm, sigma) in perms3() {
            let [al, be, ga] = perm;
            push(
                [U { r: 1, s: p }, U { r: ga + 1, s: p }, U { r: 1, s: p }, U { r: ga + 1, s: p }],
                inv.h(ga),
            );
            push(
                [
                    U { r: al + 1, s: p },
                    U { r: be + 1, s: p },
                    U { r: al + 1, s: p },
                    U { r: be + 1, s: p },
                ],
                inv.h(ga),
            );
            push(
                [
                    U { r: 1, s: p },
                    U { r: al + 1, s: p },
                    U { r: be + 1, s: p },
                    U { r: ga + 1, s: p },
                ],
                -sigma * (params.t(be) + params.t(ga) - 2.0 * params.t(al)),
            );
            push(
                [U { r: al + 1, s: p }, U { r: be + 1, s: p }, X(al), X(be)],
                -inv.l(ga) / 3.0,
            );
            push([U { r: al + 1, s: p }, X(al), U { r: be + 1, s: p }, X(be)], -inv.l(ga) / 6.0);
            push([U { r: al + 1, s: p }, X(be), X(al), U { r: be + 1, s: p }], -inv.l(ga) / 6.0);
            push(
                [U { r: 1, s: p }, U { r: al + 1, s: p }, X(be), X(ga)],
                sigma * inv.l(al) / 3.0,
            );
            push(
                [U { r: 1, s: p }, X(ga), U { r: al + 1, s: p }, X(be)],
                -sigma * inv.l(al) / 6.0,
            );
        }
        for al in 1..=3 {
            for r in 1..=4 {
                push([U { r, s: p }, X(al), U { r, s: p }, X(al)], params.t(al) * params.t(al));
            }
        }
    }

    if n >= 3 {
        let (p, q) = (1, n - 1);
        for r in 1..=4 {
            push(
                [U { r, s: p }, U { r, s: q }, U { r, s: p }, U { r, s: q }],
                1.0,
            );
            for s in 1..=4 {
                if s != r {
                    push([U { r, s: p }, U { r: s, s: q }, U { r, s: p }, U { r: s, s: q }], 1.0);
                }
            }
        }
        for (perm, sigma) in perms3() {
            let [al, be, ga] = perm;
            let ta = params.t(al);
            push(
                [U { r: 1, s: p }, U { r: al + 1, s: p }, U { r: 1, s: q }, U { r: al + 1, s: q }],
                2.0 * (1.0 - ta),
            );
            push(
                [
                    U { r: be + 1, s: p },
                    U { r: ga + 1, s: p },
                    U { r: be + 1, s: q },
                    U { r: ga + 1, s: q },
                ],
                2.0 * (1.0 - ta),
            );
            push(
                [U { r: 1, s: p }, U { r: al + 1, s: p }, U { r: be + 1, s: q }, U { r: ga + 1, s: q }],
                -sigma * 2.0 * (1.0 - ta),
            );
            push(
                [U { r: 1, s: p }, U { r: 1, s: q }, U { r: al + 1, s: p }, U { r: al + 1, s: q }],
                1.0 - ta,
            );
            push(
                [U { r: 1, s: p }, U { r: al + 1, s: q }, U { r: 1, s: q }, U { r: al + 1, s: p }],
                1.0 - ta,
            );
            push(
                [
                    U { r: be + 1, s: p },
                    U { r: be + 1, s: q },
                    U { r: ga + 1, s: p },
                    U { r: ga + 1, s: q },
                ],
                1.0 - ta,
            );
            push(
                [
                    U { r: al + 1, s: p },
                    U { r: be + 1, s: q },
                    U { r: al + 1, s: q },
                    U { r: be + 1, s: p },
                ],
                1.0 - params.t(ga),
            );
            push(
                [U { r: 1, s: p }, U { r: al + 1, s: q }, U { r: be + 1, s: p }, U { r: ga + 1, s: q }],
                sigma * (1.0 - params.t(be)),
            );
        }
    }
    out
}

/// <R(X,Y)X,Y> for the one-parameter family (fiber dimension 3 or 7).
pub fn berger_numerator(param: &BergerParam, p: &BergerPlane) -> f64 {
    let t = param.t;
    let a = p.cap_a();
    let b = p.cap_b();
    let a4 = p.a[3];
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let cross2: f64 = cross.iter().map(|c| c * c).sum();
    let na: f64 = a.iter().map(|c| c * c).sum();
    let nb: f64 = b.iter().map(|c| c * c).sum();
    let ab: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    let (b4, b5) = match param.fiber_dim {
        3 => (p.b[3], p.b[4]),
        _ => (p.b[4], p.b[5]),
    };
    let common = t * cross2
        + (4.0 - 3.0 * t) * a4 * a4 * b5 * b5
        + 6.0 * t * (t - 1.0) * cross[0] * a4 * b5
        + t * t * (b4 * b4 * na + a4 * a4 * nb - 2.0 * a4 * b4 * ab + b5 * b5 * na);
    match param.fiber_dim {
        3 => {
            let b6 = p.b[5];
            common + b6 * b6 * (t * t * na + a4 * a4)
        }
        _ => {
            let x = p.b[3];
            common + x * x * (t * na + t * t * a4 * a4)
        }
    }
}

/// Metric Gram determinant for the one-parameter family.
pub fn berger_gram(param: &BergerParam, p: &BergerPlane) -> f64 {
    let t = param.t;
    let a = p.cap_a();
    let b = p.cap_b();
    let a4 = p.a[3];
    let na: f64 = a.iter().map(|c| c * c).sum();
    let nb: f64 = b.iter().map(|c| c * c).sum();
    let ab: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    let nx = t * na + a4 * a4;
    let (ny, xy) = match param.fiber_dim {
        3 => {
            let [b4, b5, b6] = [p.b[3], p.b[4], p.b[5]];
            (t * nb + b4 * b4 + b5 * b5 + b6 * b6, t * ab + a4 * b4)
        }
        _ => {
            let [x, b4, b5] = [p.b[3], p.b[4], p.b[5]];
            (t * nb + t * x * x + b4 * b4 + b5 * b5, t * ab + a4 * b4)
        }
    };
    nx * ny - xy * xy
}

pub fn berger_sectional(param: &BergerParam, p: &BergerPlane) -> Result<f64, CurvatureError> {
    let g = berger_gram(param, p);
    let t = param.t;
    let na: f64 = p.cap_a().iter().map(|c| c * c).sum();
    let nb: f64 = p.cap_b().iter().map(|c| c * c).sum();
    let nx = t * na + p.a[3] * p.a[3];
    let ny = t * nb + p.b[3..].iter().map(|c| c * c).sum::<f64>()
        + if param.fiber_dim == 7 { (t - 1.0) * p.b[3] * p.b[3] } else { 0.0 };
    if g <= GRAM_TOL * nx * ny || nx == 0.0 || ny == 0.0 {
        return Err(CurvatureError::DegeneratePlane);
    }
    Ok(berger_numerator(param, p) / g)
}

/// Normalize a reduced plane to the weighted orthonormality conditions
/// (weights t_i^2 on the vertical slots, 1 on the horizontal slots):
/// q(a) = 1, q(b) = 1, and the cross form between a and b vanishes.
pub fn restr_normalize(
    params: &MetricParams,
    p: &ReducedPlane,
) -> Result<ReducedPlane, CurvatureError> {
    let [t1, t2, t3] = params.as_array();
    let w = [t1 * t1, t2 * t2, t3 * t3, 1.0];
    let qa: f64 = p.a.iter().zip(&w).map(|(x, wi)| wi * x * x).sum();
    if qa <= GRAM_TOL {
        return Err(CurvatureError::DegeneratePlane);
    }
    let mut a = p.a;
    let sa = qa.sqrt();
    for x in &mut a {
        *x /= sa;
    }
    let cross: f64 = a.iter().zip(&p.b).zip(&w).map(|((x, y), wi)| wi * x * y).sum();
    let mut b = p.b;
    for i in 0..4 {
        b[i] -= cross * a[i];
    }
    let qb: f64 = b
        .iter()
        .enumerate()
        .map(|(i, x)| if i < 3 { w[i] * x * x } else { x * x })
        .sum();
    if qb <= GRAM_TOL {
        return Err(CurvatureError::DegeneratePlane);
    }
    let sb = qb.sqrt();
    for x in &mut b {
        *x /= sb;
    }
    Ok(ReducedPlane { a, b })
}

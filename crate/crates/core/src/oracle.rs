//! Ground-truth curvature from Lie algebra structure constants.
//!
//! For an invariant metric on a reductive homogeneous space with tangent
//! complement m, the unnormalized sectional curvature of X, Y in m is
//!
//!   K(X,Y) = -3/4 |[X,Y]_m|^2 - 1/2 <[X,[X,Y]]_m, Y> - 1/2 <[Y,[Y,X]]_m, X>
//!            + |U(X,Y)|^2 - <U(X,X), U(Y,Y)>
//!
//! where 2<U(X,Y),Z> = <[Z,X]_m,Y> + <X,[Z,Y]_m> for tangent Z, all inner
//! products taken in the invariant metric. Everything is evaluated in
//! coordinates over a metric-orthonormal tangent frame, with the structure
//! constants precomputed at construction.

use crate::algebra::{build_basis, AlgebraElement, AlgebraError, AlgebraKind, ReductiveBasis};
use crate::curvature::{BergerPlane, ReducedPlane};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element lies outside the tangent span (residual {0:.3e})")]
    NotInTangentSpan(f64),
    #[error("degenerate plane: Gram determinant below tolerance")]
    DegeneratePlane,
    #[error("plane uses a second horizontal quaternion slot; needs n >= 3")]
    NeedsSecondSlot,
    #[error("nonpositive metric parameter")]
    BadParameter,
}

/// Metric selector for the oracle.
#[derive(Clone, Copy, Debug)]
pub enum OracleMetric {
    /// Sp(n)/Sp(n-1) with vertical lengths squared (t1, t2, t3).
    Sp { n: usize, t: [f64; 3] },
    /// Spin(9)/Spin(7) with fiber scale t.
    Spin { t: f64 },
}

const SPAN_TOL: f64 = 1e-10;
const GRAM_TOL: f64 = 1e-12;

pub struct Oracle {
    pub metric: OracleMetric,
    basis: ReductiveBasis,
    /// metric-orthonormal tangent frame as matrices
    frame: Vec<AlgebraElement>,
    /// raw tangent basis (vertical then horizontal)
    tan: Vec<AlgebraElement>,
    wg: Vec<f64>,
    sq: Vec<f64>,
    dim: usize,
    nfull: usize,
    /// d*d blocks of length d: tangent coords of [e_a, e_b]
    br_m: Vec<f64>,
    /// d*d blocks of length (N-d): isotropy coords of [e_a, e_b]
    br_iso: Vec<f64>,
    /// d*N blocks of length d: tangent coords of [e_a, F_f]
    adm: Vec<f64>,
}

impl Oracle {
    pub fn new(metric: OracleMetric) -> Result<Oracle, OracleError> {
        let (kind, wm): (AlgebraKind, Vec<f64>) = match metric {
            OracleMetric::Sp { n, t } => {
                if t.iter().any(|&ti| ti <= 0.0) {
                    return Err(OracleError::BadParameter);
                }
                let mut w = vec![2.0 * t[0], 2.0 * t[1], 2.0 * t[2]];
                w.extend(std::iter::repeat(1.0).take(4 * (n - 1)));
                (AlgebraKind::Sp(n), w)
            }
            OracleMetric::Spin { t } => {
                if t <= 0.0 {
                    return Err(OracleError::BadParameter);
                }
                let mut w = vec![4.0 * t; 7];
                w.extend(std::iter::repeat(0.25).take(8));
                (AlgebraKind::Spin9, w)
            }
        };
        let basis = build_basis(kind)?;
        let tan: Vec<AlgebraElement> = basis
            .vertical_part
            .iter()
            .chain(basis.horizontal_part.iter())
            .cloned()
            .collect();
        let dim = tan.len();
        debug_assert_eq!(dim, wm.len());
        let wg: Vec<f64> = tan.iter().map(|a| a.g0_norm2()).collect();
        let sq: Vec<f64> = wm.iter().map(|w| w.sqrt()).collect();
        let frame: Vec<AlgebraElement> =
            tan.iter().zip(&sq).map(|(a, s)| a.scaled(1.0 / s)).collect();

        // g0-orthonormal isotropy frame (Gram-Schmidt)
        let mut iso_frame: Vec<AlgebraElement> = Vec::new();
        for raw in &basis.isotropy_part {
            let mut v = raw.clone();
            for h in &iso_frame {
                let c = v.g0_inner(h)?;
                v.axpy(-c, h);
            }
            let n2 = v.g0_norm2();
            if n2 > 1e-12 {
                iso_frame.push(v.scaled(1.0 / n2.sqrt()));
            }
        }
        let nfull = dim + iso_frame.len();

        let proj_tan = |a: &AlgebraElement| -> Vec<f64> {
            tan.iter()
                .zip(&wg)
                .zip(&sq)
                .map(|((t, g), s)| a.g0_inner(t).expect("same kind") / g * s)
                .collect()
        };

        let mut br_m = vec![0.0; dim * dim * dim];
        let mut br_iso = vec![0.0; dim * dim * (nfull - dim)];
        for a in 0..dim {
            for b in (a + 1)..dim {
                let br = frame[a].bracket(&frame[b])?;
                let cm = proj_tan(&br);
                let ci: Vec<f64> =
                    iso_frame.iter().map(|h| br.g0_inner(h).expect("same kind")).collect();
                for k in 0..dim {
                    br_m[(a * dim + b) * dim + k] = cm[k];
                    br_m[(b * dim + a) * dim + k] = -cm[k];
                }
                for (c, v) in ci.iter().enumerate() {
                    br_iso[(a * dim + b) * (nfull - dim) + c] = *v;
                    br_iso[(b * dim + a) * (nfull - dim) + c] = -*v;
                }
            }
        }

        let mut adm = vec![0.0; dim * nfull * dim];
        for a in 0..dim {
            for f in 0..nfull {
                let other = if f < dim { &frame[f] } else { &iso_frame[f - dim] };
                let br = frame[a].bracket(other)?;
                let cm = proj_tan(&br);
                adm[(a * nfull + f) * dim..(a * nfull + f) * dim + dim].copy_from_slice(&cm);
            }
        }

        Ok(Oracle { metric, basis, frame, tan, wg, sq, dim, nfull, br_m, br_iso, adm })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &ReductiveBasis {
        &self.basis
    }

    /// Coordinates of a tangent element over the metric-orthonormal frame.
    pub fn project(&self, a: &AlgebraElement) -> Result<Vec<f64>, OracleError> {
        let norm2 = a.g0_inner(a)?;
        let mut coords = Vec::with_capacity(self.dim);
        let mut captured = 0.0;
        for i in 0..self.dim {
            let raw = a.g0_inner(&self.tan[i])?;
            captured += raw * raw / self.wg[i];
            coords.push(raw / self.wg[i] * self.sq[i]);
        }
        let resid = (norm2 - captured).max(0.0);
        if resid > SPAN_TOL * norm2.max(1.0) {
            return Err(OracleError::NotInTangentSpan(resid));
        }
        Ok(coords)
    }

    /// Invariant metric inner product of two tangent elements.
    pub fn metric_inner(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<f64, OracleError> {
        let ca = self.project(a)?;
        let cb = self.project(b)?;
        Ok(dot(&ca, &cb))
    }

    /// <R(X,Y)X,Y> in frame coordinates.
    pub fn curvature_coords(&self, x: &[f64], y: &[f64]) -> f64 {
        let d = self.dim;
        let niso = self.nfull - d;
        let mut bm = vec![0.0; d];
        let mut biso = vec![0.0; niso];
        for a in 0..d {
            for b in (a + 1)..d {
                let coef = x[a] * y[b] - x[b] * y[a];
                if coef == 0.0 {
                    continue;
                }
                let blk = &self.br_m[(a * d + b) * d..(a * d + b) * d + d];
                for k in 0..d {
                    bm[k] += coef * blk[k];
                }
                let blk = &self.br_iso[(a * d + b) * niso..(a * d + b) * niso + niso];
                for c in 0..niso {
                    biso[c] += coef * blk[c];
                }
            }
        }
        let term1 = -0.75 * dot(&bm, &bm);

        // [X,[X,Y]]_m and [Y,[Y,X]]_m = -[Y,[X,Y]]_m
        let mut xxy = vec![0.0; d];
        let mut yyx = vec![0.0; d];
        for a in 0..d {
            let (xa, ya) = (x[a], y[a]);
            if xa == 0.0 && ya == 0.0 {
                continue;
            }
            for f in 0..self.nfull {
                let wf = if f < d { bm[f] } else { biso[f - d] };
                if wf == 0.0 {
                    continue;
                }
                let blk = &self.adm[(a * self.nfull + f) * d..(a * self.nfull + f) * d + d];
                for k in 0..d {
                    xxy[k] += xa * wf * blk[k];
                    yyx[k] -= ya * wf * blk[k];
                }
            }
        }
        let term2 = -0.5 * dot(&xxy, y);
        let term3 = -0.5 * dot(&yyx, x);

        let mut uxy = vec![0.0; d];
        let mut uxx = vec![0.0; d];
        let mut uyy = vec![0.0; d];
        for k in 0..d {
            let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
            for b in 0..d {
                let blk = &self.br_m[(k * d + b) * d..(k * d + b) * d + d];
                let bx = dot(blk, x);
                let by = dot(blk, y);
                sxy += x[b] * by + y[b] * bx;
                sxx += 2.0 * x[b] * bx;
                syy += 2.0 * y[b] * by;
            }
            uxy[k] = 0.5 * sxy;
            uxx[k] = 0.5 * sxx;
            uyy[k] = 0.5 * syy;
        }
        term1 + term2 + term3 + dot(&uxy, &uxy) - dot(&uxx, &uyy)
    }

    /// Sectional curvature in frame coordinates; None for degenerate planes.
    pub fn sectional_coords(&self, x: &[f64], y: &[f64]) -> Option<f64> {
        let (nx, ny, xy) = (dot(x, x), dot(y, y), dot(x, y));
        let gram = nx * ny - xy * xy;
        if gram <= GRAM_TOL * nx * ny || nx == 0.0 || ny == 0.0 {
            return None;
        }
        Some(self.curvature_coords(x, y) / gram)
    }

    pub fn invariant_curvature(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<f64, OracleError> {
        let ca = self.project(a)?;
        let cb = self.project(b)?;
        Ok(self.curvature_coords(&ca, &cb))
    }

    pub fn oracle_sectional(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<f64, OracleError> {
        let ca = self.project(a)?;
        let cb = self.project(b)?;
        self.sectional_coords(&ca, &cb).ok_or(OracleError::DegeneratePlane)
    }

    /// Full curvature 4-tensor R(X,Y,Z,W) by polarization of the pair form.
    pub fn r4_coords(&self, x: &[f64], y: &[f64], z: &[f64], w: &[f64]) -> f64 {
        let cst = |x: &[f64], y: &[f64], z: &[f64], w: &[f64]| {
            let xp: Vec<f64> = x.iter().zip(z).map(|(a, b)| a + b).collect();
            let xm: Vec<f64> = x.iter().zip(z).map(|(a, b)| a - b).collect();
            let yp: Vec<f64> = y.iter().zip(w).map(|(a, b)| a + b).collect();
            let ym: Vec<f64> = y.iter().zip(w).map(|(a, b)| a - b).collect();
            0.25 * (self.curvature_coords(&xp, &yp) - self.curvature_coords(&xm, &yp)
                - self.curvature_coords(&xp, &ym)
                + self.curvature_coords(&xm, &ym))
        };
        (cst(x, y, z, w) - cst(x, y, w, z)) / 6.0
    }

    /// Frame coordinates of the reduced-plane vectors (Sp oracle).
    ///
    /// The vertical unit vectors of the plane have metric length squared t_i,
    /// so their frame coordinate carries a factor sqrt(t_i); horizontal
    /// coefficients map through unchanged.
    pub fn embed_reduced_coords(
        &self,
        p: &ReducedPlane,
    ) -> Result<(Vec<f64>, Vec<f64>), OracleError> {
        let (n, t) = match self.metric {
            OracleMetric::Sp { n, t } => (n, t),
            OracleMetric::Spin { .. } => return Err(OracleError::NeedsSecondSlot),
        };
        if p.b[7] != 0.0 && n < 3 {
            return Err(OracleError::NeedsSecondSlot);
        }
        let mut x = vec![0.0; self.dim];
        let mut y = vec![0.0; self.dim];
        for i in 0..3 {
            x[i] = p.a[i] * t[i].sqrt();
            y[i] = p.b[i] * t[i].sqrt();
        }
        x[3] = p.a[3]; // U_11
        y[3] = p.b[3]; // U_11
        y[4] = p.b[4]; // U_21
        y[5] = p.b[5]; // U_31
        y[6] = p.b[6]; // U_41
        if p.b[7] != 0.0 {
            y[7] = p.b[7]; // U_12
        }
        Ok((x, y))
    }

    /// Frame coordinates of a one-parameter-family plane (either fiber).
    pub fn embed_berger_coords(
        &self,
        p: &BergerPlane,
    ) -> Result<(Vec<f64>, Vec<f64>), OracleError> {
        let mut x = vec![0.0; self.dim];
        let mut y = vec![0.0; self.dim];
        match self.metric {
            OracleMetric::Sp { n, t } => {
                if p.b[5] != 0.0 && n < 3 {
                    return Err(OracleError::NeedsSecondSlot);
                }
                for i in 0..3 {
                    x[i] = p.a[i] * t[i].sqrt();
                    y[i] = p.b[i] * t[i].sqrt();
                }
                x[3] = p.a[3];
                y[3] = p.b[3]; // U_11
                y[4] = p.b[4]; // U_21
                if p.b[5] != 0.0 {
                    y[7] = p.b[5]; // U_12
                }
            }
            OracleMetric::Spin { t } => {
                let s = t.sqrt();
                for i in 0..3 {
                    x[i] = p.a[i] * s;
                    y[i] = p.b[i] * s;
                }
                x[7] = p.a[3]; // U_1
                y[3] = p.b[3] * s; // X_4
                y[7] = p.b[4]; // U_1
                y[11] = p.b[5]; // U_5
            }
        }
        Ok((x, y))
    }

    /// Tangent vectors of the reduced plane as algebra elements.
    pub fn embed_reduced_plane(
        &self,
        p: &ReducedPlane,
    ) -> Result<(AlgebraElement, AlgebraElement), OracleError> {
        let (x, y) = self.embed_reduced_coords(p)?;
        Ok((self.from_coords(&x), self.from_coords(&y)))
    }

    pub fn from_coords(&self, c: &[f64]) -> AlgebraElement {
        let mut r = AlgebraElement::zero(self.frame[0].kind());
        for (ci, e) in c.iter().zip(&self.frame) {
            if *ci != 0.0 {
                r.axpy(*ci, e);
            }
        }
        r
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

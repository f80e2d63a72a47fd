//! Matrix Lie algebras sp(n) (quaternionic anti-Hermitian) and spin(9) (real
//! skew-symmetric), together with the reductive bases of the sphere
//! presentations Sp(n)/Sp(n-1) and Spin(9)/Spin(7).

use crate::quat::Quat;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("algebra kind or dimension mismatch")]
    Mismatch,
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Sp(usize),
    Spin9,
}

/// An element of sp(n) or spin(9), stored as a dense matrix.
#[derive(Clone, Debug)]
pub enum AlgebraElement {
    /// n x n quaternionic matrix, row-major; anti-Hermitian for algebra elements.
    Sp { n: usize, m: Vec<Quat> },
    /// 9 x 9 real matrix, row-major; skew-symmetric for algebra elements.
    Spin { m: Box<[f64; 81]> },
}

impl AlgebraElement {
    pub fn zero(kind: AlgebraKind) -> AlgebraElement {
        match kind {
            AlgebraKind::Sp(n) => AlgebraElement::Sp { n, m: vec![Quat::ZERO; n * n] },
            AlgebraKind::Spin9 => AlgebraElement::Spin { m: Box::new([0.0; 81]) },
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        match self {
            AlgebraElement::Sp { n, .. } => AlgebraKind::Sp(*n),
            AlgebraElement::Spin { .. } => AlgebraKind::Spin9,
        }
    }

    /// Matrix commutator [A, B] = AB - BA.
    pub fn bracket(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        match (self, other) {
            (AlgebraElement::Sp { n, m: a }, AlgebraElement::Sp { n: n2, m: b }) => {
                if n != n2 {
                    return Err(AlgebraError::Mismatch);
                }
                let n = *n;
                let mut r = vec![Quat::ZERO; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = Quat::ZERO;
                        for k in 0..n {
                            acc = acc.add(a[i * n + k].mul(b[k * n + j]));
                            acc = acc.sub(b[i * n + k].mul(a[k * n + j]));
                        }
                        r[i * n + j] = acc;
                    }
                }
                Ok(AlgebraElement::Sp { n, m: r })
            }
            (AlgebraElement::Spin { m: a }, AlgebraElement::Spin { m: b }) => {
                let mut r = Box::new([0.0; 81]);
                for i in 0..9 {
                    for j in 0..9 {
                        let mut acc = 0.0;
                        for k in 0..9 {
                            acc += a[i * 9 + k] * b[k * 9 + j] - b[i * 9 + k] * a[k * 9 + j];
                        }
                        r[i * 9 + j] = acc;
                    }
                }
                Ok(AlgebraElement::Spin { m: r })
            }
            _ => Err(AlgebraError::Mismatch),
        }
    }

    /// Biinvariant inner product g0(A, B) = -1/2 Re tr(AB).
    pub fn g0_inner(&self, other: &AlgebraElement) -> Result<f64, AlgebraError> {
        match (self, other) {
            (AlgebraElement::Sp { n, m: a }, AlgebraElement::Sp { n: n2, m: b }) => {
                if n != n2 {
                    return Err(AlgebraError::Mismatch);
                }
                let n = *n;
                let mut tr = 0.0;
                for i in 0..n {
                    for k in 0..n {
                        let p = a[i * n + k].mul(b[k * n + i]);
                        tr += p.w;
                    }
                }
                Ok(-0.5 * tr)
            }
            (AlgebraElement::Spin { m: a }, AlgebraElement::Spin { m: b }) => {
                let mut tr = 0.0;
                for i in 0..9 {
                    for k in 0..9 {
                        tr += a[i * 9 + k] * b[k * 9 + i];
                    }
                }
                Ok(-0.5 * tr)
            }
            _ => Err(AlgebraError::Mismatch),
        }
    }

    /// self += c * other (kinds must match; panics otherwise, construction-time use).
    pub fn axpy(&mut self, c: f64, other: &AlgebraElement) {
        match (self, other) {
            (AlgebraElement::Sp { n, m: a }, AlgebraElement::Sp { n: n2, m: b }) if n == n2 => {
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x = x.add(y.scale(c));
                }
            }
            (AlgebraElement::Spin { m: a }, AlgebraElement::Spin { m: b }) => {
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x += c * *y;
                }
            }
            _ => panic!("axpy on mismatched algebra elements"),
        }
    }

    pub fn scaled(&self, c: f64) -> AlgebraElement {
        let mut r = AlgebraElement::zero(self.kind());
        r.axpy(c, self);
        r
    }

    pub fn g0_norm2(&self) -> f64 {
        self.g0_inner(self).expect("same element")
    }

    /// Max deviation from anti-Hermitian (sp) / skew-symmetric (spin).
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        match self {
            AlgebraElement::Sp { n, m } => {
                for i in 0..*n {
                    for j in 0..*n {
                        let d = m[j * n + i].add(m[i * n + j].conj());
                        worst = worst.max(d.norm2().sqrt());
                    }
                }
            }
            AlgebraElement::Spin { m } => {
                for i in 0..9 {
                    for j in 0..9 {
                        worst = worst.max((m[j * 9 + i] + m[i * 9 + j]).abs());
                    }
                }
            }
        }
        worst
    }
}

/// Bases of the reductive decomposition g = h + m with m = vertical + horizontal.
#[derive(Clone, Debug)]
pub struct ReductiveBasis {
    pub kind: AlgebraKind,
    pub isotropy_part: Vec<AlgebraElement>,
    pub vertical_part: Vec<AlgebraElement>,
    pub horizontal_part: Vec<AlgebraElement>,
}

fn sp_entry(n: usize, entries: &[(usize, usize, Quat)]) -> AlgebraElement {
    let mut m = vec![Quat::ZERO; n * n];
    for &(i, j, q) in entries {
        m[i * n + j] = q;
    }
    AlgebraElement::Sp { n, m }
}

fn spin_e(i: usize, j: usize, c: f64) -> [(usize, usize, f64); 2] {
    [((i - 1) * 9 + (j - 1), 0, c), ((j - 1) * 9 + (i - 1), 0, -c)]
}

fn spin_entry(pairs: &[(usize, usize, f64)]) -> AlgebraElement {
    let mut m = Box::new([0.0; 81]);
    for &(i, j, c) in pairs {
        for (idx, _, v) in spin_e(i, j, c) {
            m[idx] += v;
        }
    }
    AlgebraElement::Spin { m }
}

/// Tangent and isotropy bases.
///
/// sp(n): vertical X_1..X_3 carry sqrt(2) i, sqrt(2) j, sqrt(2) k in the (1,1)
/// slot; horizontal U_{rs} pair the (1,s+1) and (s+1,1) slots, grouped by s as
/// [U_{1s}, U_{2s}, U_{3s}, U_{4s}]. The real slot U_{1s} is oriented with -1
/// at (1,s+1) and +1 at (s+1,1), which is the orientation under which the
/// reduced-plane curvature polynomial holds with its printed signs.
///
/// spin(9): the listed spin(7) isotropy spans and the m1/m2 tangent spans in
/// the standard skew basis E_ij.
pub fn build_basis(kind: AlgebraKind) -> Result<ReductiveBasis, AlgebraError> {
    match kind {
        AlgebraKind::Sp(n) => {
            if n < 2 {
                return Err(AlgebraError::UnsupportedDimension(n));
            }
            let s2 = std::f64::consts::SQRT_2;
            let vertical = vec![
                sp_entry(n, &[(0, 0, Quat::I.scale(s2))]),
                sp_entry(n, &[(0, 0, Quat::J.scale(s2))]),
                sp_entry(n, &[(0, 0, Quat::K.scale(s2))]),
            ];
            let mut horizontal = Vec::new();
            for s in 1..n {
                horizontal.push(sp_entry(n, &[(0, s, Quat::ONE.scale(-1.0)), (s, 0, Quat::ONE)]));
                for q in [Quat::I, Quat::J, Quat::K] {
                    horizontal.push(sp_entry(n, &[(0, s, q), (s, 0, q)]));
                }
            }
            let mut isotropy = Vec::new();
            for d in 1..n {
                for q in [Quat::I, Quat::J, Quat::K] {
                    isotropy.push(sp_entry(n, &[(d, d, q.scale(s2))]));
                }
            }
            for p in 1..n {
                for q_col in (p + 1)..n {
                    isotropy
                        .push(sp_entry(n, &[(p, q_col, Quat::ONE), (q_col, p, Quat::ONE.scale(-1.0))]));
                    for q in [Quat::I, Quat::J, Quat::K] {
                        isotropy.push(sp_entry(n, &[(p, q_col, q), (q_col, p, q)]));
                    }
                }
            }
            Ok(ReductiveBasis {
                kind,
                isotropy_part: isotropy,
                vertical_part: vertical,
                horizontal_part: horizontal,
            })
        }
        AlgebraKind::Spin9 => {
            let k1 = vec![
                spin_entry(&[(2, 4, 1.0), (6, 8, 1.0)]),
                spin_entry(&[(2, 8, 1.0), (4, 6, 1.0)]),
                spin_entry(&[(2, 6, 1.0), (4, 8, -1.0)]),
            ];
            let k2 = vec![
                spin_entry(&[(2, 3, 1.0), (6, 7, 1.0)]),
                spin_entry(&[(2, 7, 1.0), (3, 6, 1.0)]),
                spin_entry(&[(3, 4, 1.0), (7, 8, 1.0)]),
                spin_entry(&[(3, 8, 1.0), (4, 7, 1.0)]),
                spin_entry(&[(3, 7, 1.0), (4, 8, -1.0)]),
            ];
            let k3 = vec![
                spin_entry(&[(2, 7, 1.0), (4, 5, -1.0)]),
                spin_entry(&[(2, 3, 1.0), (5, 8, 1.0)]),
                spin_entry(&[(2, 4, 1.0), (5, 7, -1.0)]),
                spin_entry(&[(2, 8, 1.0), (3, 5, 1.0)]),
                spin_entry(&[(5, 6, 1.0), (7, 8, -1.0)]),
                spin_entry(&[(2, 5, 2.0), (3, 8, -1.0), (4, 7, 1.0)]),
            ];
            let k4 = vec![
                spin_entry(&[(1, 2, 1.0), (5, 6, 1.0)]),
                spin_entry(&[(1, 6, 1.0), (2, 5, 1.0)]),
                spin_entry(&[(1, 3, 1.0), (5, 7, 1.0)]),
                spin_entry(&[(1, 7, 1.0), (3, 5, 1.0)]),
                spin_entry(&[(1, 4, 1.0), (5, 8, 1.0)]),
                spin_entry(&[(1, 8, 1.0), (4, 5, 1.0)]),
                spin_entry(&[(1, 5, 1.0), (4, 8, -1.0)]),
            ];
            let vertical = vec![
                spin_entry(&[(1, 5, 1.0), (2, 6, 1.0), (3, 7, 1.0), (4, 8, 1.0)]),
                spin_entry(&[(1, 7, 1.0), (2, 8, 1.0), (3, 5, -1.0), (4, 6, -1.0)]),
                spin_entry(&[(1, 3, 1.0), (2, 4, -1.0), (5, 7, -1.0), (6, 8, 1.0)]),
                spin_entry(&[(1, 6, 1.0), (2, 5, -1.0), (3, 8, -1.0), (4, 7, 1.0)]),
                spin_entry(&[(1, 8, 1.0), (2, 7, -1.0), (3, 6, 1.0), (4, 5, -1.0)]),
                spin_entry(&[(1, 2, 1.0), (3, 4, 1.0), (5, 6, -1.0), (7, 8, -1.0)]),
                spin_entry(&[(1, 4, 1.0), (2, 3, 1.0), (5, 8, -1.0), (6, 7, -1.0)]),
            ];
            let horizontal = (1..=8).map(|i| spin_entry(&[(i, 9, 1.0)])).collect();
            let mut isotropy = Vec::new();
            isotropy.extend(k1);
            isotropy.extend(k2);
            isotropy.extend(k3);
            isotropy.extend(k4);
            Ok(ReductiveBasis {
                kind,
                isotropy_part: isotropy,
                vertical_part: vertical,
                horizontal_part: horizontal,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_antisymmetric_and_jacobi() {
        let b = build_basis(AlgebraKind::Sp(2)).unwrap();
        let x = &b.vertical_part[0];
        let y = &b.horizontal_part[1];
        let z = &b.horizontal_part[2];
        let xy = x.bracket(y).unwrap();
        let mut yx = y.bracket(x).unwrap();
        yx.axpy(1.0, &xy);
        assert!(yx.g0_norm2().abs() < 1e-24);
        // Jacobi
        let mut j = x.bracket(&y.bracket(z).unwrap()).unwrap();
        j.axpy(1.0, &y.bracket(&z.bracket(x).unwrap()).unwrap());
        j.axpy(1.0, &z.bracket(&x.bracket(y).unwrap()).unwrap());
        assert!(j.g0_norm2().abs() < 1e-20);
    }

    #[test]
    fn sp_basis_orthonormal() {
        for n in [2usize, 3] {
            let b = build_basis(AlgebraKind::Sp(n)).unwrap();
            let tangent: Vec<_> =
                b.vertical_part.iter().chain(b.horizontal_part.iter()).collect();
            assert_eq!(tangent.len(), 4 * n - 1);
            for (i, a) in tangent.iter().enumerate() {
                for (j, c) in tangent.iter().enumerate() {
                    let g = a.g0_inner(c).unwrap();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((g - want).abs() < 1e-12, "g0({i},{j}) = {g}");
                }
                assert!(a.symmetry_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn sp2_dimension_counts() {
        let b = build_basis(AlgebraKind::Sp(2)).unwrap();
        assert_eq!(b.vertical_part.len(), 3);
        assert_eq!(b.horizontal_part.len(), 4);
        assert_eq!(b.isotropy_part.len(), 3);
    }

    #[test]
    fn spin9_dimension_counts_and_norms() {
        let b = build_basis(AlgebraKind::Spin9).unwrap();
        assert_eq!(b.vertical_part.len(), 7);
        assert_eq!(b.horizontal_part.len(), 8);
        assert_eq!(b.isotropy_part.len(), 21);
        for x in &b.vertical_part {
            assert!((x.g0_norm2() - 4.0).abs() < 1e-12);
            assert!(x.symmetry_defect() < 1e-12);
        }
        for u in &b.horizontal_part {
            assert!((u.g0_norm2() - 1.0).abs() < 1e-12);
        }
        // tangent parts orthogonal to the isotropy span
        for t in b.vertical_part.iter().chain(b.horizontal_part.iter()) {
            for h in &b.isotropy_part {
                assert!(t.g0_inner(h).unwrap().abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sp1_bracket_scale() {
        // [X_1, X_2] = 2 sqrt(2) X_3 in the (1,1) quaternion slot
        let b = build_basis(AlgebraKind::Sp(2)).unwrap();
        let x12 = b.vertical_part[0].bracket(&b.vertical_part[1]).unwrap();
        let mut d = x12;
        d.axpy(-2.0 * std::f64::consts::SQRT_2, &b.vertical_part[2]);
        assert!(d.g0_norm2().abs() < 1e-20);
    }

    #[test]
    fn spin_elementary_bracket() {
        // [E_19, E_29] = -E_12
        let e19 = spin_entry(&[(1, 9, 1.0)]);
        let e29 = spin_entry(&[(2, 9, 1.0)]);
        let mut br = e19.bracket(&e29).unwrap();
        br.axpy(1.0, &spin_entry(&[(1, 2, 1.0)]));
        assert!(br.g0_norm2().abs() < 1e-20);
    }

    #[test]
    fn kind_mismatch_errors() {
        let a = AlgebraElement::zero(AlgebraKind::Sp(2));
        let b = AlgebraElement::zero(AlgebraKind::Spin9);
        assert!(a.bracket(&b).is_err());
        assert!(a.g0_inner(&b).is_err());
        let c = AlgebraElement::zero(AlgebraKind::Sp(3));
        assert!(a.bracket(&c).is_err());
    }

    #[test]
    fn unsupported_dimension() {
        assert!(build_basis(AlgebraKind::Sp(1)).is_err());
    }
}

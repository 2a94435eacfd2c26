//! Exact sign analysis of hermitian matrices over the Gaussian rationals.
//!
//! The decision procedure is recursive pivoting: a negative diagonal entry
//! or a zero diagonal entry with a nonzero row gives an explicit direction,
//! otherwise a positive pivot is eliminated through its Schur complement and
//! witnesses are lifted back. All arithmetic is exact, so verdicts come with
//! checkable rational witness vectors. Principal minors provide a second,
//! independent certificate.

use crate::scalar::GaussianRational;
use num::{BigRational, One, Signed};
use thiserror::Error;

pub type GMatrix = Vec<Vec<GaussianRational>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not hermitian at entry ({0}, {1})")]
    NotHermitian(usize, usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatrixKind {
    Zero,
    PositiveDefinite,
    PositiveSemidefinite,
    NegativeDefinite,
    NegativeSemidefinite,
    Indefinite,
}

/// Sign classification with explicit directions: `quad_form` is strictly
/// positive at `positive_direction` and strictly negative at
/// `negative_direction` whenever those are present.
#[derive(Clone, Debug)]
pub struct MatrixAnalysis {
    pub kind: MatrixKind,
    pub positive_direction: Option<Vec<GaussianRational>>,
    pub negative_direction: Option<Vec<GaussianRational>>,
}

impl MatrixAnalysis {
    pub fn nonnegative(&self) -> bool {
        matches!(
            self.kind,
            MatrixKind::Zero | MatrixKind::PositiveDefinite | MatrixKind::PositiveSemidefinite
        )
    }

    pub fn nonpositive(&self) -> bool {
        matches!(
            self.kind,
            MatrixKind::Zero | MatrixKind::NegativeDefinite | MatrixKind::NegativeSemidefinite
        )
    }
}

pub fn check_hermitian(m: &GMatrix) -> Result<(), MatrixError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(MatrixError::NotSquare);
    }
    for j in 0..n {
        for k in j..n {
            if m[k][j] != m[j][k].conj() {
                return Err(MatrixError::NotHermitian(k, j));
            }
        }
    }
    Ok(())
}

/// The hermitian value `v* M v`.
pub fn quad_form(m: &GMatrix, v: &[GaussianRational]) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (j, vj) in v.iter().enumerate() {
        for (k, vk) in v.iter().enumerate() {
            acc = &acc + &(&(&vj.conj() * &m[j][k]) * vk);
        }
    }
    acc
}

fn negate(m: &GMatrix) -> GMatrix {
    m.iter().map(|row| row.iter().map(|e| -e).collect()).collect()
}

fn basis_vector(n: usize, j: usize) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); n];
    v[j] = GaussianRational::one();
    v
}

/// A direction with strictly negative hermitian value, if any exists.
/// Requires a validated hermitian input.
fn negative_direction(m: &GMatrix) -> Option<Vec<GaussianRational>> {
    let n = m.len();
    for j in 0..n {
        if m[j][j].re().is_negative() {
            return Some(basis_vector(n, j));
        }
    }
    for j in 0..n {
        if !m[j][j].is_zero() {
            continue;
        }
        for k in 0..n {
            if k == j || m[j][k].is_zero() {
                continue;
            }
            // q(x e_j + e_k) = 2 Re(conj(x) m_jk) + m_kk; with
            // x = -t m_jk this is -2t|m_jk|^2 + m_kk, negative once
            // t = (m_kk + 1)/|m_jk|^2 since m_kk >= 0 here.
            let t = (m[k][k].re().clone() + BigRational::one()) / m[j][k].norm_sqr();
            let mut v = basis_vector(n, k);
            v[j] = -&(&GaussianRational::from_rational(t) * &m[j][k]);
            return Some(v);
        }
    }
    let j = (0..n).find(|&j| m[j][j].re().is_positive())?;
    let rest: Vec<usize> = (0..n).filter(|&a| a != j).collect();
    let pivot_inv = m[j][j].inv().expect("positive pivot");
    let schur: GMatrix = rest
        .iter()
        .map(|&a| {
            rest.iter()
                .map(|&b| &m[a][b] - &(&(&m[a][j] * &pivot_inv) * &m[j][b]))
                .collect()
        })
        .collect();
    let w = negative_direction(&schur)?;
    let mut v = vec![GaussianRational::zero(); n];
    let mut row_dot = GaussianRational::zero();
    for (idx, &a) in rest.iter().enumerate() {
        v[a] = w[idx].clone();
        row_dot = &row_dot + &(&m[j][a] * &w[idx]);
    }
    v[j] = -&(&row_dot * &pivot_inv);
    Some(v)
}

/// Exact sign classification of a hermitian matrix.
pub fn analyze(m: &GMatrix) -> Result<MatrixAnalysis, MatrixError> {
    check_hermitian(m)?;
    let neg = negative_direction(m);
    let pos = negative_direction(&negate(m));
    let kind = match (&pos, &neg) {
        (None, None) => MatrixKind::Zero,
        (Some(_), Some(_)) => MatrixKind::Indefinite,
        (Some(_), None) => {
            if det(m).is_zero() {
                MatrixKind::PositiveSemidefinite
            } else {
                MatrixKind::PositiveDefinite
            }
        }
        (None, Some(_)) => {
            if det(m).is_zero() {
                MatrixKind::NegativeSemidefinite
            } else {
                MatrixKind::NegativeDefinite
            }
        }
    };
    Ok(MatrixAnalysis { kind, positive_direction: pos, negative_direction: neg })
}

/// Determinant by cofactor expansion; intended for the small matrices that
/// arise from coframes.
pub fn det(m: &GMatrix) -> GaussianRational {
    let n = m.len();
    match n {
        0 => GaussianRational::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = GaussianRational::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: GMatrix = (1..n)
                    .map(|a| (0..n).filter(|&b| b != j).map(|b| m[a][b].clone()).collect())
                    .collect();
                let term = &m[0][j] * &det(&sub);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All nonempty principal minors, keyed by ascending 0-based index subsets.
pub fn principal_minors(m: &GMatrix) -> Vec<(Vec<usize>, GaussianRational)> {
    let n = m.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
        let sub: GMatrix =
            idx.iter().map(|&a| idx.iter().map(|&b| m[a][b].clone()).collect()).collect();
        out.push((idx, det(&sub)));
    }
    out
}

/// Minor-based semidefiniteness certificate, independent of the pivoting
/// analysis: a hermitian matrix is positive semidefinite exactly when every
/// principal minor is nonnegative, and positive definite exactly when the
/// leading ones are positive.
#[derive(Clone, Debug)]
pub struct MinorCertificate {
    pub minors: Vec<(Vec<usize>, GaussianRational)>,
    pub psd: bool,
    pub nsd: bool,
    pub pd: bool,
    pub nd: bool,
}

pub fn minor_certificate(m: &GMatrix) -> MinorCertificate {
    let n = m.len();
    let minors = principal_minors(m);
    let mut cert =
        MinorCertificate { minors, psd: true, nsd: true, pd: n > 0, nd: n > 0 };
    for (idx, value) in &cert.minors {
        let size = idx.len();
        let v = value.re();
        if v.is_negative() {
            cert.psd = false;
        }
        if (size % 2 == 0 && v.is_negative()) || (size % 2 == 1 && v.is_positive()) {
            cert.nsd = false;
        }
        let leading = idx.iter().enumerate().all(|(pos, &a)| pos == a);
        if leading {
            if !v.is_positive() {
                cert.pd = false;
            }
            let want_neg = size % 2 == 1;
            if (want_neg && !v.is_negative()) || (!want_neg && !v.is_positive()) {
                cert.nd = false;
            }
        }
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(k: i64) -> GaussianRational {
        GaussianRational::from_int(k)
    }

    fn diag(entries: &[i64]) -> GMatrix {
        let n = entries.len();
        (0..n)
            .map(|j| (0..n).map(|k| if j == k { gr(entries[j]) } else { gr(0) }).collect())
            .collect()
    }

    #[test]
    fn diagonal_cases() {
        assert_eq!(analyze(&diag(&[1, 2, 3])).unwrap().kind, MatrixKind::PositiveDefinite);
        assert_eq!(analyze(&diag(&[1, 0, 3])).unwrap().kind, MatrixKind::PositiveSemidefinite);
        assert_eq!(analyze(&diag(&[-1, -2])).unwrap().kind, MatrixKind::NegativeDefinite);
        assert_eq!(analyze(&diag(&[0, -2])).unwrap().kind, MatrixKind::NegativeSemidefinite);
        assert_eq!(analyze(&diag(&[0, 0])).unwrap().kind, MatrixKind::Zero);
        let a = analyze(&diag(&[3, -5])).unwrap();
        assert_eq!(a.kind, MatrixKind::Indefinite);
        let p = a.positive_direction.unwrap();
        let q = a.negative_direction.unwrap();
        assert!(quad_form(&diag(&[3, -5]), &p).re().is_positive());
        assert!(quad_form(&diag(&[3, -5]), &q).re().is_negative());
    }

    #[test]
    fn zero_diagonal_cross_term_is_indefinite() {
        let one_plus_i = &gr(1) + &GaussianRational::i();
        let m = vec![
            vec![gr(0), one_plus_i.clone()],
            vec![one_plus_i.conj(), gr(5)],
        ];
        let a = analyze(&m).unwrap();
        assert_eq!(a.kind, MatrixKind::Indefinite);
        assert!(quad_form(&m, &a.negative_direction.unwrap()).re().is_negative());
        assert!(quad_form(&m, &a.positive_direction.unwrap()).re().is_positive());
    }

    #[test]
    fn schur_recursion_finds_hidden_directions() {
        let pd = vec![vec![gr(2), gr(1)], vec![gr(1), gr(2)]];
        assert_eq!(analyze(&pd).unwrap().kind, MatrixKind::PositiveDefinite);
        let indef = vec![vec![gr(1), gr(2)], vec![gr(2), gr(1)]];
        let a = analyze(&indef).unwrap();
        assert_eq!(a.kind, MatrixKind::Indefinite);
        assert!(quad_form(&indef, &a.negative_direction.unwrap()).re().is_negative());
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = vec![vec![gr(1), gr(2)], vec![gr(3), gr(1)]];
        assert_eq!(analyze(&m).unwrap_err(), MatrixError::NotHermitian(1, 0));
        let c = vec![vec![GaussianRational::i(), gr(0)], vec![gr(0), gr(1)]];
        assert!(analyze(&c).is_err());
    }

    #[test]
    fn minor_certificate_matches_analysis() {
        let cases: Vec<GMatrix> = vec![
            diag(&[1, 2, 3]),
            diag(&[1, 0, 3]),
            diag(&[-1, -2]),
            vec![vec![gr(2), gr(1)], vec![gr(1), gr(2)]],
            vec![vec![gr(1), gr(2)], vec![gr(2), gr(1)]],
        ];
        for m in cases {
            let a = analyze(&m).unwrap();
            let c = minor_certificate(&m);
            assert_eq!(c.psd, a.nonnegative(), "psd mismatch for {m:?}");
            assert_eq!(c.nsd, a.nonpositive(), "nsd mismatch for {m:?}");
            assert_eq!(c.pd, matches!(a.kind, MatrixKind::PositiveDefinite));
            assert_eq!(c.nd, matches!(a.kind, MatrixKind::NegativeDefinite));
        }
    }

    #[test]
    fn determinant_of_complex_matrix() {
        let i = GaussianRational::i();
        let m = vec![vec![gr(2), i.clone()], vec![i.conj(), gr(3)]];
        assert_eq!(det(&m), gr(5));
        assert_eq!(analyze(&m).unwrap().kind, MatrixKind::PositiveDefinite);
    }
}

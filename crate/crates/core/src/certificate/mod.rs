//! Generation certificates for the relation module and the 3-cell data
//! derived from them.
//!
//! Construction lives here; [`check`] re-verifies a certificate from its
//! fields alone and shares nothing with this module except the ring kernel.

pub mod check;
mod crt;
pub mod file;

pub use crt::{crt_coefficients, CrtData};

use crate::error::{Error, Result};
use crate::foxcomplex::{apply, d2_matrix, RingMatrix, RingVector};
use crate::freewords::Params;
use crate::groupring::RingElement;
use crate::relmodule::{self, C2Element, RelElement};

pub const CERTIFICATE_VERSION: &str = "relmod-certificate/1";

/// Row operation `row[dst] += row[src] · coeff`; undone by subtracting the
/// same multiple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryOp {
    AddRightMultiple { src: usize, dst: usize, coeff: RingElement },
}

impl ElementaryOp {
    pub fn inverse(&self) -> ElementaryOp {
        match self {
            ElementaryOp::AddRightMultiple { src, dst, coeff } => ElementaryOp::AddRightMultiple {
                src: *src,
                dst: *dst,
                coeff: -coeff,
            },
        }
    }

    pub fn apply_to(&self, m: &mut RingMatrix, params: &Params) -> Result<()> {
        match self {
            ElementaryOp::AddRightMultiple { src, dst, coeff } => {
                if src == dst || *src >= m.height() || *dst >= m.height() {
                    return Err(Error::Dimension(format!(
                        "row operation {src} -> {dst} on {} rows",
                        m.height()
                    )));
                }
                let shifted = m.row(*src).act(coeff, params);
                let updated = m.row(*dst).add(&shifted)?;
                *m.row_mut(*dst) = updated;
                Ok(())
            }
        }
    }
}

/// Applies `ops` in order to a copy of `m`.
pub fn replay(ops: &[ElementaryOp], m: &RingMatrix, params: &Params) -> Result<RingMatrix> {
    let mut out = m.clone();
    for op in ops {
        op.apply_to(&mut out, params)?;
    }
    Ok(out)
}

/// If every row of `m` is a distinct standard unit vector, returns the
/// column of the 1 in each row.
pub fn as_permutation(m: &RingMatrix) -> Option<Vec<usize>> {
    if m.height() != m.width() {
        return None;
    }
    let mut seen = vec![false; m.width()];
    let mut perm = Vec::with_capacity(m.height());
    for row in m.rows() {
        let mut hit = None;
        for (c, x) in row.entries().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if *x != RingElement::one() || hit.is_some() {
                return None;
            }
            hit = Some(c);
        }
        let c = hit?;
        if std::mem::replace(&mut seen[c], true) {
            return None;
        }
        perm.push(c);
    }
    Some(perm)
}

/// Row `j` of the result is row `perm^-1(j)` of `m`: left multiplication by
/// the transpose of the permutation matrix.
pub fn unpermute_rows(m: &RingMatrix, perm: &[usize]) -> RingMatrix {
    let mut rows = vec![RingVector::zero(m.width()); m.height()];
    for (k, &c) in perm.iter().enumerate() {
        rows[c] = m.row(k).clone();
    }
    RingMatrix::from_rows(m.width(), rows).expect("same width")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub params: Params,
    pub crt: CrtData,
    /// `lambda[k][i]`: `D_{i+1} = Σ_k X_{k+1} lambda[k][i]`.
    pub lambda: Vec<Vec<RingElement>>,
    /// `mu[k][i]`: `E_{i+1} = Σ_k X_{k+1} mu[k][i]`.
    pub mu: Vec<Vec<RingElement>>,
    pub alpha: Vec<C2Element>,
    pub basis_ops: Vec<ElementaryOp>,
}

/// Row index of `X̂_k` in the basis-change matrix.
fn x_row(k: usize, n: usize) -> usize {
    n - 2 + k
}

pub fn build_certificate(params: &Params) -> Result<Certificate> {
    let n = params.n();
    let crt = crt_coefficients(params)?;
    let w: Vec<RingElement> = (1..=n)
        .map(|j| relmodule::torsion_multiplier(j, params))
        .collect::<Result<_>>()?;

    let mut lambda = vec![vec![RingElement::zero(); n]; n + 1];
    let mut mu = vec![vec![RingElement::zero(); n]; n + 1];
    for i in 0..n {
        for j in 0..n {
            lambda[j][i] = w[j].scalar_mul(&crt.s[i][j]);
        }
        lambda[n][i] = RingElement::from_int(crt.t[i].clone());
        let one_minus_a = params.one_minus_a(i + 1);
        for k in 0..=n {
            let shift = lambda[k][i].mul(&one_minus_a, params);
            mu[k][i] = if k == i { &RingElement::one() - &shift } else { -&shift };
        }
    }

    let xs: Vec<RelElement> = (1..=n + 1).map(|k| relmodule::x(k, params)).collect::<Result<_>>()?;
    for i in 0..n {
        let combine = |coeffs: &Vec<Vec<RingElement>>| {
            xs.iter().zip(coeffs).fold(RelElement::zero(params), |acc, (xk, row)| {
                acc.add(&xk.act(&row[i], params))
            })
        };
        if combine(&lambda) != relmodule::d(i + 1, params)? {
            return Err(Error::SelfCheck(format!("D_{} not reconstructed", i + 1)));
        }
        if combine(&mu) != relmodule::e(i + 1, params)? {
            return Err(Error::SelfCheck(format!("E_{} not reconstructed", i + 1)));
        }
    }

    let mut cert = Certificate {
        params: params.clone(),
        crt,
        lambda,
        mu,
        alpha: Vec::new(),
        basis_ops: Vec::new(),
    };
    if n >= 2 {
        cert.alpha = (1..n).map(|i| construct_alpha(i, &cert)).collect::<Result<_>>()?;
        cert.basis_ops = reduction_ops(&cert);
        basis_change(&cert)?;
    }
    Ok(cert)
}

/// `α_i = D̂_i - Σ_k X̂_k λ_{k,i}`.
fn construct_alpha(i: usize, cert: &Certificate) -> Result<C2Element> {
    let params = &cert.params;
    let n = params.n();
    let mut coords = C2Element::d_hat(i, params).coords;
    for k in 1..=n + 1 {
        let term = C2Element::x_hat(k, params)?
            .coords
            .act(&cert.lambda[k - 1][i - 1], params);
        coords = coords.sub(&term)?;
    }
    let alpha = C2Element { coords };
    if !apply(&d2_matrix(params), &alpha.coords, params)?.is_zero() {
        return Err(Error::SelfCheck(format!("alpha_{i} not in ker d2")));
    }
    Ok(alpha)
}

/// `α_i` for `1 <= i <= n-1`, as stored in the certificate.
pub fn alpha(i: usize, cert: &Certificate) -> Result<&C2Element> {
    let n = cert.params.n();
    if n < 2 {
        return Err(Error::param("n < 2: no 3-cells are attached"));
    }
    if i == 0 || i >= n {
        return Err(Error::param(format!("alpha index {i} outside 1..{}", n - 1)));
    }
    Ok(&cert.alpha[i - 1])
}

/// The three reduction stages taking rows `α_1..α_{n-1}, X̂_1..X̂_{n+1}` to
/// a permutation of the standard basis.
fn reduction_ops(cert: &Certificate) -> Vec<ElementaryOp> {
    let params = &cert.params;
    let n = params.n();
    let mut ops = Vec::new();
    // α_j + Σ_k X̂_k λ_{k,j} = D̂_j
    for j in 1..n {
        for k in 1..=n + 1 {
            let coeff = &cert.lambda[k - 1][j - 1];
            if !coeff.is_zero() {
                ops.push(ElementaryOp::AddRightMultiple {
                    src: x_row(k, n),
                    dst: j - 1,
                    coeff: coeff.clone(),
                });
            }
        }
    }
    // X̂_{n+1} - (D̂_1 + ... + D̂_{n-1}) = D̂_n
    for j in 1..n {
        ops.push(ElementaryOp::AddRightMultiple {
            src: j - 1,
            dst: x_row(n + 1, n),
            coeff: -&RingElement::one(),
        });
    }
    // X̂_i - D̂_i (1 - a_i) = Ê_i
    for i in 1..=n {
        let src = if i < n { i - 1 } else { x_row(n + 1, n) };
        ops.push(ElementaryOp::AddRightMultiple {
            src,
            dst: x_row(i, n),
            coeff: -&params.one_minus_a(i),
        });
    }
    ops
}

/// The basis `α_1..α_{n-1}, X̂_1..X̂_{n+1}` of `C_2` and its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    pub p: RingMatrix,
    pub q: RingMatrix,
    pub ops: Vec<ElementaryOp>,
    /// Column of the unit entry in each row after all ops.
    pub permutation: Vec<usize>,
}

pub fn new_basis_matrix(cert: &Certificate) -> Result<RingMatrix> {
    let params = &cert.params;
    let n = params.n();
    let mut rows: Vec<RingVector> = cert.alpha.iter().map(|a| a.coords.clone()).collect();
    for k in 1..=n + 1 {
        rows.push(C2Element::x_hat(k, params)?.coords);
    }
    RingMatrix::from_rows(2 * n, rows)
}

pub fn basis_change(cert: &Certificate) -> Result<BasisChange> {
    let params = &cert.params;
    if params.n() < 2 {
        return Err(Error::param("n < 2: no 3-cells are attached"));
    }
    let p = new_basis_matrix(cert)?;
    let reduced = replay(&cert.basis_ops, &p, params)?;
    let permutation =
        as_permutation(&reduced).ok_or_else(|| Error::SelfCheck("row operations do not reach a permutation".into()))?;
    let size = p.height();
    let q = unpermute_rows(
        &replay(&cert.basis_ops, &RingMatrix::identity(size), params)?,
        &permutation,
    );
    if !p.mul(&q, params)?.is_identity() || !q.mul(&p, params)?.is_identity() {
        return Err(Error::SelfCheck("P and Q are not mutually inverse".into()));
    }
    Ok(BasisChange {
        p,
        q,
        ops: cert.basis_ops.clone(),
        permutation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingReport {
    /// `d_2 ∘ d_3' = 0`.
    pub boundary_vanishes: bool,
    /// In the new basis, row `i` of `d_3'` is the unit vector `i`.
    pub inclusion_onto_first: bool,
    pub alpha_rank: usize,
    pub x_rank: usize,
    pub total_rank: usize,
}

impl SplittingReport {
    pub fn all(&self) -> bool {
        self.boundary_vanishes && self.inclusion_onto_first && self.alpha_rank + self.x_rank == self.total_rank
    }
}

/// `d_3'` with rows `α_1..α_{n-1}`.
pub fn d3_matrix(cert: &Certificate) -> Result<RingMatrix> {
    RingMatrix::from_rows(
        2 * cert.params.n(),
        cert.alpha.iter().map(|a| a.coords.clone()).collect(),
    )
}

pub fn splitting_report(cert: &Certificate) -> Result<SplittingReport> {
    let params = &cert.params;
    let n = params.n();
    let bc = basis_change(cert)?;
    let d3 = d3_matrix(cert)?;
    let boundary_vanishes = d3
        .mul(&d2_matrix(params), params)?
        .rows()
        .iter()
        .all(RingVector::is_zero);
    let in_new_basis = d3.mul(&bc.q, params)?;
    let inclusion_onto_first = in_new_basis
        .rows()
        .iter()
        .enumerate()
        .all(|(k, row)| *row == RingVector::unit(2 * n, k));
    Ok(SplittingReport {
        boundary_vanishes,
        inclusion_onto_first,
        alpha_rank: d3.height(),
        x_rank: n + 1,
        total_rank: bc.p.height(),
    })
}

/// Alternating cell count `1 - 2n + 2n - (n-1)` of the complex with the
/// `n - 1` extra 3-cells; equals `2 - n`.
pub fn euler_characteristic(n: usize) -> i64 {
    let n = n as i64;
    let cells = [1, 2 * n, 2 * n, n - 1];
    cells
        .iter()
        .enumerate()
        .map(|(dim, c)| if dim % 2 == 0 { *c } else { -c })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relmodule::torsion_multiplier;

    fn params(r: &[u64]) -> Params {
        Params::new(r.to_vec()).unwrap()
    }

    #[test]
    fn euler() {
        assert_eq!(euler_characteristic(3), -1);
        assert_eq!(euler_characteristic(2), 0);
        assert_eq!(euler_characteristic(1), 1);
        assert_eq!(euler_characteristic(7), -5);
    }

    #[test]
    fn degenerate_single_factor() {
        let p = params(&[2]);
        let cert = build_certificate(&p).unwrap();
        assert_eq!(cert.lambda[1][0], RingElement::one());
        assert!(cert.lambda[0][0].is_zero());
        assert!(cert.alpha.is_empty());
        assert!(alpha(1, &cert).is_err());
        assert!(basis_change(&cert).is_err());
        assert_eq!(relmodule::x(2, &p).unwrap(), relmodule::d(1, &p).unwrap());
    }

    #[test]
    fn alpha_e_coordinates() {
        let p = params(&[2, 3, 5]);
        let cert = build_certificate(&p).unwrap();
        let n = p.n();
        for i in 1..n {
            let a = alpha(i, &cert).unwrap();
            for j in 1..=n {
                let expected = -&torsion_multiplier(j, &p).unwrap().scalar_mul(&cert.crt.s[i - 1][j - 1]);
                assert_eq!(a.coords.get(n + j - 1), &expected);
            }
            assert!(apply(&d2_matrix(&p), &a.coords, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn basis_change_two_factors() {
        let p = params(&[2, 3]);
        let cert = build_certificate(&p).unwrap();
        let bc = basis_change(&cert).unwrap();
        assert_eq!(bc.p.height(), 4);
        assert_eq!(bc.p.width(), 4);
        assert!(bc.p.mul(&bc.q, &p).unwrap().is_identity());
        // rows end as D1, E1, E2, D2
        assert_eq!(bc.permutation, vec![0, 2, 3, 1]);
        let again = basis_change(&cert).unwrap();
        assert_eq!(again.q, bc.q);
    }

    #[test]
    fn inverse_ops_undo() {
        let p = params(&[2, 3]);
        let cert = build_certificate(&p).unwrap();
        let p_mat = new_basis_matrix(&cert).unwrap();
        let reduced = replay(&cert.basis_ops, &p_mat, &p).unwrap();
        let inverses: Vec<_> = cert.basis_ops.iter().rev().map(ElementaryOp::inverse).collect();
        assert_eq!(replay(&inverses, &reduced, &p).unwrap(), p_mat);
    }

    #[test]
    fn splitting() {
        let p = params(&[2, 3, 5]);
        let cert = build_certificate(&p).unwrap();
        let rep = splitting_report(&cert).unwrap();
        assert!(rep.all());
        assert_eq!((rep.alpha_rank, rep.x_rank, rep.total_rank), (2, 4, 6));
    }

    #[test]
    fn permutation_detection() {
        assert_eq!(as_permutation(&RingMatrix::identity(3)), Some(vec![0, 1, 2]));
        let m = RingMatrix::from_rows(2, vec![RingVector::unit(2, 0), RingVector::unit(2, 0)]).unwrap();
        assert_eq!(as_permutation(&m), None);
        let m = RingMatrix::from_rows(
            2,
            vec![
                RingVector::unit(2, 1),
                RingVector::unit(2, 0).act(&RingElement::from_int(2), &params(&[2])),
            ],
        )
        .unwrap();
        assert_eq!(as_permutation(&m), None);
    }
}

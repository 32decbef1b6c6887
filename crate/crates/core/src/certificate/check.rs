//! Independent re-verification of a certificate document.
//!
//! Nothing here calls the construction code. The embedded generators are
//! written down from their closed forms (`D_i = (1 - b_i^-1, a_i^-1 - 1)` in
//! columns `a_i, b_i`, `E_i = Σ_i` in column `a_i`) instead of being derived
//! through Fox calculus, and every claimed identity is recomputed with
//! plain ring arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::file::CertificateFile;
use super::{as_permutation, replay, unpermute_rows, Certificate, CERTIFICATE_VERSION};
use crate::error::Error;
use crate::foxcomplex::{RingMatrix, RingVector};
use crate::freewords::Params;
use crate::groupring::RingElement;

/// A certificate that parsed but failed a named identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub identity: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("malformed certificate: {0}")]
    Malformed(Error),
    #[error("rejected: {} ({})", .0.identity, .0.detail)]
    Rejected(Rejection),
}

impl CheckError {
    pub fn rejection(&self) -> Option<&Rejection> {
        match self {
            CheckError::Rejected(r) => Some(r),
            CheckError::Malformed(_) => None,
        }
    }
}

fn reject(identity: impl Into<String>, detail: impl Into<String>) -> CheckError {
    CheckError::Rejected(Rejection {
        identity: identity.into(),
        detail: detail.into(),
    })
}

/// Names of the identities that were verified, in checking order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verified: Vec<String>,
}

pub fn check_certificate_json(text: &str) -> Result<CheckReport, CheckError> {
    let file = CertificateFile::from_json(text).map_err(CheckError::Malformed)?;
    check_certificate(&file)
}

pub fn check_certificate(file: &CertificateFile) -> Result<CheckReport, CheckError> {
    if file.version != CERTIFICATE_VERSION {
        return Err(reject("version", format!("unsupported version {:?}", file.version)));
    }
    let params = Params::new(file.r.clone()).map_err(|e| reject("params", e.to_string()))?;
    let cert = file.to_certificate().map_err(CheckError::Malformed)?;
    let mut verified = Vec::new();
    let mut pass = |name: String| verified.push(name);

    let closed = ClosedForms::new(&params);
    let n = params.n();

    // CRT witnesses
    let moduli: Vec<BigInt> = params.r().iter().map(|&r| BigInt::from(r) * r).collect();
    let total: BigInt = moduli.iter().product();
    for i in 0..n {
        let t = &cert.crt.t[i];
        if t.is_negative() || t >= &total {
            return Err(reject(
                format!("CRT range t_{}", i + 1),
                format!("t = {t} outside [0, {total})"),
            ));
        }
        for (j, m) in moduli.iter().enumerate() {
            let want = if i == j { BigInt::one() } else { BigInt::zero() };
            if t.mod_floor(m) != want {
                return Err(reject(
                    format!("CRT congruence t_{} mod r_{}^2", i + 1, j + 1),
                    format!("{t} mod {m} != {want}"),
                ));
            }
        }
        pass(format!("CRT congruences t_{}", i + 1));
    }
    for i in 0..n {
        for (j, m) in moduli.iter().enumerate() {
            let delta = if i == j { BigInt::one() } else { BigInt::zero() };
            if &cert.crt.t[i] + m * &cert.crt.s[i][j] != delta {
                return Err(reject(
                    format!("CRT quotient s_{}{}", i + 1, j + 1),
                    "t_i + r_j^2 s_ij != delta_ij",
                ));
            }
        }
    }
    pass("CRT quotients s".into());

    // generation of M
    for i in 0..n {
        let rebuilt = closed.combine_x(&cert.lambda, i);
        if rebuilt != closed.d[i] {
            return Err(reject(format!("D_{} reconstruction", i + 1), "Σ_k X_k λ_ki != D_i"));
        }
        pass(format!("D_{} reconstruction", i + 1));
    }
    for i in 0..n {
        let rebuilt = closed.combine_x(&cert.mu, i);
        if rebuilt != closed.e[i] {
            return Err(reject(format!("E_{} reconstruction", i + 1), "Σ_k X_k μ_ki != E_i"));
        }
        pass(format!("E_{} reconstruction", i + 1));
    }

    if n < 2 {
        if !cert.basis_ops.is_empty() {
            return Err(reject("basis reduction", "n = 1 admits no row operations"));
        }
        return Ok(CheckReport { verified });
    }

    // α_i ∈ ker f and α_i = D̂_i - Σ_k X̂_k λ_ki
    for (idx, alpha) in cert.alpha.iter().enumerate() {
        let i = idx + 1;
        let mut expected = RingVector::unit(2 * n, idx);
        for (k, xk) in closed.x_hat.iter().enumerate() {
            expected = expected
                .sub(&xk.act(&cert.lambda[k][idx], &params))
                .expect("same width");
        }
        if alpha.coords != expected {
            return Err(reject(format!("alpha_{i} definition"), "α_i != D̂_i - Σ_k X̂_k λ_ki"));
        }
        if !closed.boundary(&alpha.coords).is_zero() {
            return Err(reject(format!("alpha_{i} kernel"), "f(α_i) != 0"));
        }
        pass(format!("alpha_{i} kernel"));
    }

    // basis change
    let mut rows: Vec<RingVector> = cert.alpha.iter().map(|a| a.coords.clone()).collect();
    rows.extend(closed.x_hat.iter().cloned());
    let p = RingMatrix::from_rows(2 * n, rows).map_err(CheckError::Malformed)?;
    let reduced = replay(&cert.basis_ops, &p, &params).map_err(CheckError::Malformed)?;
    let perm = as_permutation(&reduced).ok_or_else(|| {
        reject(
            "basis reduction",
            "row operations do not end in a permutation of the standard basis",
        )
    })?;
    pass("basis reduction".into());
    let identity = RingMatrix::identity(2 * n);
    let q = unpermute_rows(
        &replay(&cert.basis_ops, &identity, &params).map_err(CheckError::Malformed)?,
        &perm,
    );
    let pq = p.mul(&q, &params).map_err(CheckError::Malformed)?;
    let qp = q.mul(&p, &params).map_err(CheckError::Malformed)?;
    if pq != identity || qp != identity {
        return Err(reject("basis inverse", "P·Q or Q·P is not the identity"));
    }
    pass("basis inverse".into());
    Ok(CheckReport { verified })
}

/// `D_i`, `E_i`, `X_k` and `X̂_k` written directly in coordinates.
struct ClosedForms<'a> {
    params: &'a Params,
    d: Vec<RingVector>,
    e: Vec<RingVector>,
    x: Vec<RingVector>,
    x_hat: Vec<RingVector>,
}

impl<'a> ClosedForms<'a> {
    fn new(params: &'a Params) -> Self {
        let n = params.n();
        let width = 2 * n;
        let one = RingElement::one();
        let mut d = Vec::new();
        let mut e = Vec::new();
        for i in 1..=n {
            let mut di = RingVector::zero(width);
            di.set(2 * (i - 1), &one - &params.ring_b(i, -1));
            di.set(2 * (i - 1) + 1, &params.ring_a(i, -1) - &one);
            d.push(di);
            let mut ei = RingVector::zero(width);
            let sigma: RingElement = (0..params.order(i) as i64).map(|j| params.ring_a(i, j)).sum();
            ei.set(2 * (i - 1), sigma);
            e.push(ei);
        }
        let mut x = Vec::new();
        let mut x_hat = Vec::new();
        for i in 1..=n {
            let shift = &one - &params.ring_a(i, 1);
            x.push(e[i - 1].add(&d[i - 1].act(&shift, params)).expect("same width"));
            let mut xh = RingVector::zero(width);
            xh.set(i - 1, shift);
            xh.set(n + i - 1, one.clone());
            x_hat.push(xh);
        }
        let sum_d = d
            .iter()
            .fold(RingVector::zero(width), |acc, di| acc.add(di).expect("same width"));
        x.push(sum_d);
        let mut xh = RingVector::zero(width);
        for i in 0..n {
            xh.set(i, one.clone());
        }
        x_hat.push(xh);
        ClosedForms { params, d, e, x, x_hat }
    }

    /// `Σ_k X_k c[k][i]`.
    fn combine_x(&self, c: &[Vec<RingElement>], i: usize) -> RingVector {
        self.x
            .iter()
            .zip(c)
            .fold(RingVector::zero(2 * self.params.n()), |acc, (xk, row)| {
                acc.add(&xk.act(&row[i], self.params)).expect("same width")
            })
    }

    /// `f(v) = Σ_i D_i v_{D_i} + E_i v_{E_i}`.
    fn boundary(&self, v: &RingVector) -> RingVector {
        let n = self.params.n();
        let mut out = RingVector::zero(2 * n);
        for i in 0..n {
            out = out.add(&self.d[i].act(v.get(i), self.params)).expect("same width");
            out = out.add(&self.e[i].act(v.get(n + i), self.params)).expect("same width");
        }
        out
    }
}

impl Certificate {
    pub fn check(&self) -> Result<CheckReport, CheckError> {
        check_certificate(&self.to_file())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::build_certificate;
    use crate::certificate::file::OpRecord;

    fn file(r: &[u64]) -> CertificateFile {
        build_certificate(&Params::new(r.to_vec()).unwrap()).unwrap().to_file()
    }

    fn rejected_as(f: &CertificateFile) -> String {
        match check_certificate(f) {
            Err(CheckError::Rejected(r)) => r.identity,
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn accepts_built() {
        let rep = check_certificate(&file(&[2, 3, 5])).unwrap();
        assert!(rep.verified.contains(&"basis inverse".to_string()));
        assert!(check_certificate(&file(&[7])).is_ok());
    }

    #[test]
    fn rejects_lambda_perturbation() {
        let mut f = file(&[2, 3, 5]);
        f.lambda[0][0] = format!("{} + e", f.lambda[0][0]);
        assert_eq!(rejected_as(&f), "D_1 reconstruction");
    }

    #[test]
    fn rejects_bad_params() {
        let mut f = file(&[2, 3]);
        f.r = vec![2, 4];
        assert_eq!(rejected_as(&f), "params");
        let mut f = file(&[2, 3]);
        f.version = "other".into();
        assert_eq!(rejected_as(&f), "version");
    }

    #[test]
    fn rejects_crt_and_alpha_and_ops() {
        let base = file(&[2, 3, 5]);
        let mut f = base.clone();
        f.t[1] = crate::certificate::file::number(&BigInt::from(1));
        assert!(rejected_as(&f).starts_with("CRT congruence t_2"));
        let mut f = base.clone();
        f.s[0][2] = crate::certificate::file::number(&BigInt::from(0));
        assert_eq!(rejected_as(&f), "CRT quotient s_13");
        let mut f = base.clone();
        let v = f.alpha[1].get_mut("E3").unwrap();
        *v = format!("{v} - b1");
        assert_eq!(rejected_as(&f), "alpha_2 definition");
        let mut f = base.clone();
        let OpRecord::AddRightMultiple { coeff, .. } = f.basis_ops.last_mut().unwrap();
        *coeff = format!("{coeff} + a3");
        assert_eq!(rejected_as(&f), "basis reduction");
        let mut f = base;
        f.mu[3][2] = "0".into();
        assert_eq!(rejected_as(&f), "E_3 reconstruction");
    }

    #[test]
    fn malformed_inputs() {
        let mut f = file(&[2, 3]);
        f.mu[0][0] = "a1 +* b1".into();
        assert!(matches!(
            check_certificate(&f),
            Err(CheckError::Malformed(Error::Parse { .. }))
        ));
        assert!(matches!(
            check_certificate_json("{"),
            Err(CheckError::Malformed(Error::Format(_)))
        ));
        let mut f = file(&[2, 3]);
        let OpRecord::AddRightMultiple { src, .. } = &mut f.basis_ops[0];
        *src = 99;
        assert!(matches!(
            check_certificate(&f),
            Err(CheckError::Malformed(Error::Dimension(_)))
        ));
    }
}

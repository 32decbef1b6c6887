//! JSON documents for certificates and chain complexes.
//!
//! Ring elements are stored in their canonical text form and integers as
//! plain decimal JSON numbers of arbitrary size. Serializing the same
//! certificate always yields the same bytes.

use std::str::FromStr;

use indexmap::IndexMap;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use super::{basis_change, d3_matrix, euler_characteristic, Certificate, CrtData, ElementaryOp, CERTIFICATE_VERSION};
use crate::error::{Error, Result};
use crate::foxcomplex::{c1_labels, c2_labels, d1_matrix, d2_matrix, LabeledMatrix, RingVector};
use crate::freewords::Params;
use crate::groupring::RingElement;
use crate::relmodule::C2Element;
use crate::text::parse_ring;

pub const COMPLEX_VERSION: &str = "relmod-complex/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum OpRecord {
    AddRightMultiple { src: usize, dst: usize, coeff: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub version: String,
    pub r: Vec<u64>,
    pub t: Vec<Number>,
    pub s: Vec<Vec<Number>>,
    /// `lambda[k][i]`, rows `X1..X{n+1}`, columns `D1..Dn`.
    pub lambda: Vec<Vec<String>>,
    /// `mu[k][i]`, rows `X1..X{n+1}`, columns `E1..En`.
    pub mu: Vec<Vec<String>>,
    pub alpha: Vec<IndexMap<String, String>>,
    pub basis_ops: Vec<OpRecord>,
}

pub(crate) fn number(x: &BigInt) -> Number {
    Number::from_str(&x.to_string()).expect("decimal integer is a JSON number")
}

pub(crate) fn bigint(x: &Number, location: &str) -> Result<BigInt> {
    BigInt::from_str(&x.to_string()).map_err(|_| Error::Format(format!("{location}: {x} is not an integer")))
}

fn labeled(v: &RingVector, labels: &[String]) -> IndexMap<String, String> {
    labels
        .iter()
        .cloned()
        .zip(v.entries().iter().map(|x| x.to_string()))
        .collect()
}

impl Certificate {
    pub fn to_file(&self) -> CertificateFile {
        let labels = c2_labels(&self.params);
        CertificateFile {
            version: CERTIFICATE_VERSION.to_string(),
            r: self.params.r().to_vec(),
            t: self.crt.t.iter().map(number).collect(),
            s: self.crt.s.iter().map(|row| row.iter().map(number).collect()).collect(),
            lambda: text_matrix(&self.lambda),
            mu: text_matrix(&self.mu),
            alpha: self.alpha.iter().map(|a| labeled(&a.coords, &labels)).collect(),
            basis_ops: self
                .basis_ops
                .iter()
                .map(|op| match op {
                    ElementaryOp::AddRightMultiple { src, dst, coeff } => OpRecord::AddRightMultiple {
                        src: *src,
                        dst: *dst,
                        coeff: coeff.to_string(),
                    },
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_file().to_json()
    }
}

fn text_matrix(m: &[Vec<RingElement>]) -> Vec<Vec<String>> {
    m.iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn ring_matrix(
    rows: &[Vec<String>],
    name: &str,
    height: usize,
    width: usize,
    params: &Params,
) -> Result<Vec<Vec<RingElement>>> {
    if rows.len() != height {
        return Err(Error::Format(format!(
            "{name}: expected {height} rows, found {}",
            rows.len()
        )));
    }
    rows.iter()
        .enumerate()
        .map(|(k, row)| {
            if row.len() != width {
                return Err(Error::Format(format!(
                    "{name}[{k}]: expected {width} entries, found {}",
                    row.len()
                )));
            }
            row.iter()
                .enumerate()
                .map(|(i, text)| parse_ring(text, params).map_err(|e| e.at(&format!("{name}[{k}][{i}]"))))
                .collect()
        })
        .collect()
}

impl CertificateFile {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("certificate serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn params(&self) -> Result<Params> {
        Params::new(self.r.clone())
    }

    /// Decodes every field into ring data. Structural problems surface as
    /// format or located parse errors; no identity is checked here.
    pub fn to_certificate(&self) -> Result<Certificate> {
        if self.version != CERTIFICATE_VERSION {
            return Err(Error::Format(format!(
                "version {:?}, expected {CERTIFICATE_VERSION:?}",
                self.version
            )));
        }
        let params = self.params()?;
        let n = params.n();
        if self.t.len() != n {
            return Err(Error::Format(format!(
                "t: expected {n} entries, found {}",
                self.t.len()
            )));
        }
        let t = self
            .t
            .iter()
            .enumerate()
            .map(|(i, x)| bigint(x, &format!("t[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if self.s.len() != n || self.s.iter().any(|row| row.len() != n) {
            return Err(Error::Format(format!("s: expected a {n}x{n} matrix")));
        }
        let s = self
            .s
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, x)| bigint(x, &format!("s[{i}][{j}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let lambda = ring_matrix(&self.lambda, "lambda", n + 1, n, &params)?;
        let mu = ring_matrix(&self.mu, "mu", n + 1, n, &params)?;

        let expected_alpha = n.saturating_sub(1);
        if self.alpha.len() != expected_alpha {
            return Err(Error::Format(format!(
                "alpha: expected {expected_alpha} entries, found {}",
                self.alpha.len()
            )));
        }
        let labels = c2_labels(&params);
        let alpha = self
            .alpha
            .iter()
            .enumerate()
            .map(|(i, coords)| {
                let keys: Vec<&String> = coords.keys().collect();
                if keys.len() != labels.len() || keys.iter().zip(&labels).any(|(a, b)| *a != b) {
                    return Err(Error::Format(format!("alpha[{i}]: labels must be {labels:?}")));
                }
                coords
                    .iter()
                    .map(|(label, text)| parse_ring(text, &params).map_err(|e| e.at(&format!("alpha[{i}].{label}"))))
                    .collect::<Result<Vec<_>>>()
                    .map(|entries| C2Element {
                        coords: RingVector::from_entries(entries),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let basis_ops = self
            .basis_ops
            .iter()
            .enumerate()
            .map(|(k, op)| match op {
                OpRecord::AddRightMultiple { src, dst, coeff } => {
                    let coeff = parse_ring(coeff, &params).map_err(|e| e.at(&format!("basis_ops[{k}].coeff")))?;
                    Ok(ElementaryOp::AddRightMultiple {
                        src: *src,
                        dst: *dst,
                        coeff,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            params,
            crt: CrtData { t, s },
            lambda,
            mu,
            alpha,
            basis_ops,
        })
    }
}

/// Exported chain-level data: `d_1`, `d_2`, `d_3'`, the basis change and
/// the Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub version: String,
    pub r: Vec<u64>,
    pub euler_characteristic: i64,
    pub d1: LabeledMatrix,
    pub d2: LabeledMatrix,
    pub d3: LabeledMatrix,
    pub p: Option<LabeledMatrix>,
    pub q: Option<LabeledMatrix>,
}

impl ComplexFile {
    pub fn build(cert: &Certificate) -> Result<Self> {
        let params = &cert.params;
        let n = params.n();
        let c1 = c1_labels(params);
        let c2 = c2_labels(params);
        let cells: Vec<String> = (1..n).map(|i| format!("B{i}")).collect();
        let d3 = LabeledMatrix::new(&d3_matrix(cert)?, cells, c2.clone());
        let (p, q) = if n >= 2 {
            let bc = basis_change(cert)?;
            let new_basis: Vec<String> = (1..n)
                .map(|i| format!("alpha{i}"))
                .chain((1..=n + 1).map(|k| format!("X{k}")))
                .collect();
            (
                Some(LabeledMatrix::new(&bc.p, new_basis.clone(), c2.clone())),
                Some(LabeledMatrix::new(&bc.q, c2.clone(), new_basis)),
            )
        } else {
            (None, None)
        };
        Ok(ComplexFile {
            version: COMPLEX_VERSION.to_string(),
            r: params.r().to_vec(),
            euler_characteristic: euler_characteristic(n),
            d1: LabeledMatrix::new(&d1_matrix(params), c1.clone(), vec!["v".to_string()]),
            d2: LabeledMatrix::new(&d2_matrix(params), c2, c1),
            d3,
            p,
            q,
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("complex serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

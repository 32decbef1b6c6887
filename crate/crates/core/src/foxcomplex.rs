//! Fox derivatives evaluated in `Z[G]` and the boundary maps of the Cayley
//! complex at chain level.
//!
//! Conventions. `C_1` and `C_2` are free *right* `Z[G]`-modules and vectors
//! are coordinate rows (`v = Σ_x e_x v_x`). A matrix is stored as the list
//! of images of the basis vectors, so [`apply`] computes `Σ_k row_k v_k`.
//!
//! Raw Fox rows form a left module. The rows of `d_2` are therefore the
//! entry-wise involution of the Fox rows: for a relator `R` and a word `g`,
//! `∂(g^-1 R g)/∂x = g^-1 ∂R/∂x` in `Z[G]`, and `star` turns the left factor
//! `g^-1` into a right factor `g`. Conjugation in `F` thus becomes entry-wise
//! right multiplication. `d_1` uses the matching entries `x^-1 - 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freewords::{FreeWord, GenKind, Generator, Params};
use crate::groupring::RingElement;
use crate::normalform::GroupElement;
use crate::text::parse_ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingVector {
    entries: Vec<RingElement>,
}

impl RingVector {
    pub fn zero(width: usize) -> Self {
        RingVector {
            entries: vec![RingElement::zero(); width],
        }
    }

    pub fn unit(width: usize, k: usize) -> Self {
        let mut v = RingVector::zero(width);
        v.entries[k] = RingElement::one();
        v
    }

    pub fn from_entries(entries: Vec<RingElement>) -> Self {
        RingVector { entries }
    }

    pub fn width(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> &RingElement {
        &self.entries[k]
    }

    pub fn set(&mut self, k: usize, x: RingElement) {
        self.entries[k] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElement::is_zero)
    }

    /// Entry-wise right multiplication.
    pub fn act(&self, lambda: &RingElement, params: &Params) -> RingVector {
        RingVector {
            entries: self.entries.iter().map(|x| x.mul(lambda, params)).collect(),
        }
    }

    pub fn add(&self, other: &RingVector) -> Result<RingVector> {
        self.check_width(other)?;
        Ok(RingVector {
            entries: self.entries.iter().zip(&other.entries).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn sub(&self, other: &RingVector) -> Result<RingVector> {
        self.check_width(other)?;
        Ok(RingVector {
            entries: self.entries.iter().zip(&other.entries).map(|(x, y)| x - y).collect(),
        })
    }

    fn check_width(&self, other: &RingVector) -> Result<()> {
        if self.width() != other.width() {
            return Err(Error::Dimension(format!(
                "vector widths {} and {}",
                self.width(),
                other.width()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    rows: Vec<RingVector>,
    width: usize,
}

impl RingMatrix {
    pub fn from_rows(width: usize, rows: Vec<RingVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.width() != width) {
            return Err(Error::Dimension(format!(
                "row {bad} has width {}, expected {width}",
                rows[bad].width()
            )));
        }
        Ok(RingMatrix { rows, width })
    }

    pub fn identity(size: usize) -> Self {
        RingMatrix {
            rows: (0..size).map(|k| RingVector::unit(size, k)).collect(),
            width: size,
        }
    }

    pub fn rows(&self) -> &[RingVector] {
        &self.rows
    }

    pub fn row(&self, k: usize) -> &RingVector {
        &self.rows[k]
    }

    pub fn row_mut(&mut self, k: usize) -> &mut RingVector {
        &mut self.rows[k]
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Composite "first `self`, then `other`" of right-linear maps:
    /// `(P*Q)[k][y] = Σ_x Q[x][y] P[k][x]`, i.e. row `k` of the result is
    /// `apply(Q, row_k(P))`.
    pub fn mul(&self, other: &RingMatrix, params: &Params) -> Result<RingMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| apply(other, r, params))
            .collect::<Result<Vec<_>>>()?;
        RingMatrix::from_rows(other.width, rows)
    }

    pub fn is_identity(&self) -> bool {
        self.height() == self.width && *self == RingMatrix::identity(self.width)
    }
}

/// `Σ_k row_k(m) · v_k`, right-multiplying each row by its coefficient.
pub fn apply(m: &RingMatrix, v: &RingVector, params: &Params) -> Result<RingVector> {
    if v.width() != m.height() {
        return Err(Error::Dimension(format!(
            "vector of width {} against matrix with {} rows",
            v.width(),
            m.height()
        )));
    }
    let mut out = RingVector::zero(m.width());
    for (row, c) in m.rows.iter().zip(&v.entries) {
        if c.is_zero() {
            continue;
        }
        for (slot, x) in out.entries.iter_mut().zip(&row.entries) {
            if !x.is_zero() {
                *slot = &*slot + &x.mul(c, params);
            }
        }
    }
    Ok(out)
}

/// `∂w/∂x` projected into `Z[G]`.
pub fn fox_derivative(w: &FreeWord, x: Generator, params: &Params) -> Result<RingElement> {
    params.check_word(w)?;
    params.check_index(x.index)?;
    let mut prefix = GroupElement::identity();
    let mut out = RingElement::zero();
    for (g, e) in w.letters() {
        if *g == x {
            for (h, c) in letter_derivative(*g, e, params).terms() {
                out.add_term(params.mul(&prefix, h), c.clone());
            }
        }
        prefix = params.mul(&prefix, &params.generator_power(*g, e));
    }
    Ok(out)
}

/// `∂(g^e)/∂g`: `1 + g + ... + g^{e-1}` for `e > 0`, and
/// `-(g^-1 + ... + g^e)` for `e < 0`. Powers of `a_i` are folded mod `r_i`
/// so large exponents stay cheap.
fn letter_derivative(g: Generator, e: &BigInt, params: &Params) -> RingElement {
    let (start, count, sign) = if e.is_positive() {
        (BigInt::zero(), e.clone(), BigInt::one())
    } else {
        (e.clone(), -e, -BigInt::one())
    };
    // exponents start, start+1, ..., start+count-1
    let mut out = RingElement::zero();
    match g.kind {
        GenKind::A => {
            let r = BigInt::from(params.order(g.index));
            let (full, rem) = count.div_rem(&r);
            let first = start.mod_floor(&r);
            let rem = u64::try_from(&rem).expect("remainder below modulus");
            let first = u64::try_from(&first).expect("residue below modulus");
            let r64 = params.order(g.index);
            for j in 0..r64 {
                let mut c = full.clone();
                // residues first, first+1, ..., first+rem-1 (mod r) get one extra
                if (j + r64 - first) % r64 < rem {
                    c += 1;
                }
                out.add_term(params.a_pow(g.index, j as i64), &c * &sign);
            }
        }
        GenKind::B => {
            let mut k = start;
            let end = &k + &count;
            while k < end {
                out.add_term(params.generator_power(g, &k), sign.clone());
                k += 1;
            }
        }
    }
    out
}

/// Entry-wise `star` of the Fox row of `w`, in columns `a1, b1, ..., an, bn`.
pub fn starred_fox_row(w: &FreeWord, params: &Params) -> Result<RingVector> {
    params
        .generators()
        .map(|x| Ok(fox_derivative(w, x, params)?.star(params)))
        .collect::<Result<Vec<_>>>()
        .map(RingVector::from_entries)
}

/// Rows `D1..Dn, E1..En` (starred Fox rows of `R_i`, then `S_i`).
pub fn d2_matrix(params: &Params) -> RingMatrix {
    let n = params.n();
    let rows = (1..=n)
        .map(|i| params.relator_r(i))
        .chain((1..=n).map(|i| params.relator_s(i)))
        .map(|w| starred_fox_row(&w.expect("index in range"), params).expect("valid relator"))
        .collect();
    RingMatrix::from_rows(2 * n, rows).expect("rows of width 2n")
}

/// Entries `x^-1 - 1` for each generator column.
pub fn d1_vector(params: &Params) -> RingVector {
    RingVector::from_entries(
        params
            .generators()
            .map(|x| {
                let inv = params.generator_power(x, &-BigInt::one());
                &RingElement::from_group(inv) - &RingElement::one()
            })
            .collect(),
    )
}

/// `d_1` as a `2n x 1` matrix, so that `apply(d1, v) = Σ_x (x^-1 - 1) v_x`.
pub fn d1_matrix(params: &Params) -> RingMatrix {
    let rows = d1_vector(params)
        .entries
        .into_iter()
        .map(|x| RingVector::from_entries(vec![x]))
        .collect();
    RingMatrix::from_rows(1, rows).expect("width 1")
}

/// `d_1 ∘ d_2` on each basis vector of `C_2`.
pub fn chain_composite(params: &Params) -> Vec<RingElement> {
    let d1 = d1_matrix(params);
    d2_matrix(params)
        .rows
        .iter()
        .map(|row| apply(&d1, row, params).expect("width 2n").entries.remove(0))
        .collect()
}

pub fn c1_labels(params: &Params) -> Vec<String> {
    params.generators().map(|g| g.to_string()).collect()
}

pub fn c2_labels(params: &Params) -> Vec<String> {
    let n = params.n();
    (1..=n)
        .map(|i| format!("D{i}"))
        .chain((1..=n).map(|i| format!("E{i}")))
        .collect()
}

/// Row-major text form of a matrix with named rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl LabeledMatrix {
    pub fn new(m: &RingMatrix, rows: Vec<String>, cols: Vec<String>) -> Self {
        LabeledMatrix {
            rows,
            cols,
            entries: m
                .rows
                .iter()
                .map(|r| r.entries.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self, params: &Params) -> Result<RingMatrix> {
        if self.entries.len() != self.rows.len() {
            return Err(Error::Format(format!(
                "{} row labels for {} rows",
                self.rows.len(),
                self.entries.len()
            )));
        }
        let rows = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, row)| {
                if row.len() != self.cols.len() {
                    return Err(Error::Format(format!(
                        "row {} has {} entries, expected {}",
                        self.rows[k],
                        row.len(),
                        self.cols.len()
                    )));
                }
                row.iter()
                    .enumerate()
                    .map(|(c, t)| {
                        parse_ring(t, params).map_err(|e| e.at(&format!("[{}][{}]", self.rows[k], self.cols[c])))
                    })
                    .collect::<Result<Vec<_>>>()
                    .map(RingVector::from_entries)
            })
            .collect::<Result<Vec<_>>>()?;
        RingMatrix::from_rows(self.cols.len(), rows)
    }
}

//! Sparse integral group ring `Z[G]`.
//!
//! Elements are finite maps from normal-form group elements to nonzero
//! `BigInt` coefficients. Keys are kept in a `BTreeMap` under the canonical
//! order, so iteration, printing and serialization are deterministic.
//!
//! Multiplication is the naive double loop over both supports,
//! `O(|x| * |y|)` group multiplications; supports here stay on the order of
//! `r_i^2` terms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::freewords::Params;
use crate::normalform::GroupElement;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElement {
    terms: BTreeMap<GroupElement, BigInt>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn one() -> Self {
        RingElement::from_group(GroupElement::identity())
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        RingElement::monomial(GroupElement::identity(), c)
    }

    pub fn from_group(g: GroupElement) -> Self {
        RingElement::monomial(g, 1)
    }

    pub fn monomial(g: GroupElement, c: impl Into<BigInt>) -> Self {
        let mut x = RingElement::zero();
        x.add_term(g, c.into());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, g: &GroupElement) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    /// Adds `c * g`, dropping the key if the coefficient cancels.
    pub fn add_term(&mut self, g: GroupElement, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scalar_mul(&self, c: &BigInt) -> RingElement {
        if c.is_zero() {
            return RingElement::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &RingElement, params: &Params) -> RingElement {
        let mut out = RingElement::zero();
        for (g, x) in &self.terms {
            for (h, y) in &other.terms {
                out.add_term(params.mul(g, h), x * y);
            }
        }
        out
    }

    /// The involution `g -> g^-1`, extended linearly.
    pub fn star(&self, params: &Params) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(g, c)| (params.inv(g), c.clone())).collect(),
        }
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Re-derives the coefficient map through `add_term`, checking each key
    /// is in normal form for `params`.
    pub fn from_terms<I>(params: &Params, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (GroupElement, BigInt)>,
    {
        let mut x = RingElement::zero();
        for (g, c) in terms {
            params.check_element(&g)?;
            x.add_term(g, c);
        }
        Ok(x)
    }
}

impl Add for &RingElement {
    type Output = RingElement;

    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }
}

impl Sub for &RingElement {
    type Output = RingElement;

    fn sub(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), -c);
        }
        out
    }
}

impl Neg for &RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect(),
        }
    }
}

impl std::iter::Sum for RingElement {
    fn sum<I: Iterator<Item = RingElement>>(iter: I) -> Self {
        iter.fold(RingElement::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (g, c)) in self.terms.iter().enumerate() {
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{mag}*{g}")?;
            }
        }
        Ok(())
    }
}

impl Params {
    /// `Σ_i = 1 + a_i + ... + a_i^{r_i - 1}`.
    pub fn sigma(&self, i: usize) -> Result<RingElement> {
        self.check_index(i)?;
        Ok((0..self.order(i) as i64)
            .map(|j| RingElement::from_group(self.a_pow(i, j)))
            .sum())
    }

    /// `Γ_i = Σ_j j a_i^j`.
    pub fn gamma(&self, i: usize) -> Result<RingElement> {
        self.check_index(i)?;
        let mut x = RingElement::zero();
        for j in 1..self.order(i) as i64 {
            x.add_term(self.a_pow(i, j), BigInt::from(j));
        }
        Ok(x)
    }

    pub fn ring_a(&self, i: usize, k: i64) -> RingElement {
        RingElement::from_group(self.a_pow(i, k))
    }

    pub fn ring_b(&self, i: usize, m: i64) -> RingElement {
        RingElement::from_group(self.b_pow(i, m))
    }

    /// `1 - a_i`.
    pub fn one_minus_a(&self, i: usize) -> RingElement {
        &RingElement::one() - &self.ring_a(i, 1)
    }

    /// `1 - b_i^-1`.
    pub fn one_minus_b_inv(&self, i: usize) -> RingElement {
        &RingElement::one() - &self.ring_b(i, -1)
    }

    /// Checks the three group-ring identities satisfied by `Σ_i` and `Γ_i`.
    pub fn check_ring_identities(&self, i: usize) -> Result<RingIdentityReport> {
        let sigma = self.sigma(i)?;
        let gamma = self.gamma(i)?;
        let r = RingElement::from_int(self.order(i));
        let one_minus_a = self.one_minus_a(i);
        Ok(RingIdentityReport {
            annihilates_sigma: one_minus_a.mul(&sigma, self).is_zero(),
            sigma_square: sigma.mul(&sigma, self) == sigma.mul(&r, self),
            gamma_boundary: one_minus_a.mul(&gamma, self) == &sigma - &r,
        })
    }
}

/// `(1-a_i)Σ_i = 0`, `Σ_i^2 = Σ_i r_i`, `(1-a_i)Γ_i = Σ_i - r_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RingIdentityReport {
    pub annihilates_sigma: bool,
    pub sigma_square: bool,
    pub gamma_boundary: bool,
}

impl RingIdentityReport {
    pub fn all(&self) -> bool {
        self.annihilates_sigma && self.sigma_square && self.gamma_boundary
    }
}

//! The relation module `M`, held through its embedding into `C_1`.
//!
//! `D_i` and `E_i` are the rows of [`d2_matrix`]; every other element is a
//! right `Z[G]`-combination of them. Since the embedding is injective, two
//! elements of `M` are equal iff their `2n` coordinates agree.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::foxcomplex::{d2_matrix, RingVector};
use crate::freewords::Params;
use crate::groupring::RingElement;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelElement {
    pub coords: RingVector,
}

/// Coordinates over the basis `D̂1..D̂n, Ê1..Ên` of `C_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct C2Element {
    pub coords: RingVector,
}

impl RelElement {
    pub fn zero(params: &Params) -> Self {
        RelElement {
            coords: RingVector::zero(2 * params.n()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// Right action `m · λ`.
    pub fn act(&self, lambda: &RingElement, params: &Params) -> RelElement {
        RelElement {
            coords: self.coords.act(lambda, params),
        }
    }

    pub fn add(&self, other: &RelElement) -> RelElement {
        RelElement {
            coords: self.coords.add(&other.coords).expect("same width"),
        }
    }

    pub fn sub(&self, other: &RelElement) -> RelElement {
        RelElement {
            coords: self.coords.sub(&other.coords).expect("same width"),
        }
    }
}

impl C2Element {
    pub fn zero(params: &Params) -> Self {
        C2Element {
            coords: RingVector::zero(2 * params.n()),
        }
    }

    pub fn d_hat(i: usize, params: &Params) -> Self {
        C2Element {
            coords: RingVector::unit(2 * params.n(), i - 1),
        }
    }

    pub fn e_hat(i: usize, params: &Params) -> Self {
        C2Element {
            coords: RingVector::unit(2 * params.n(), params.n() + i - 1),
        }
    }

    /// `X̂_i = Ê_i + D̂_i(1 - a_i)` for `k = i <= n`, `X̂_{n+1} = Σ D̂_i`.
    pub fn x_hat(k: usize, params: &Params) -> Result<Self> {
        let n = params.n();
        let mut coords = RingVector::zero(2 * n);
        if k == n + 1 {
            for i in 0..n {
                coords.set(i, RingElement::one());
            }
        } else {
            params.check_index(k)?;
            coords.set(k - 1, params.one_minus_a(k));
            coords.set(n + k - 1, RingElement::one());
        }
        Ok(C2Element { coords })
    }
}

pub fn d(i: usize, params: &Params) -> Result<RelElement> {
    params.check_index(i)?;
    Ok(RelElement {
        coords: d2_matrix(params).row(i - 1).clone(),
    })
}

pub fn e(i: usize, params: &Params) -> Result<RelElement> {
    params.check_index(i)?;
    Ok(RelElement {
        coords: d2_matrix(params).row(params.n() + i - 1).clone(),
    })
}

/// The generators `X_1..X_{n+1}`.
pub fn x(k: usize, params: &Params) -> Result<RelElement> {
    let n = params.n();
    if k == 0 || k > n + 1 {
        return Err(Error::param(format!("X index {k} outside 1..{}", n + 1)));
    }
    if k == n + 1 {
        let mut acc = RelElement::zero(params);
        for i in 1..=n {
            acc = acc.add(&d(i, params)?);
        }
        return Ok(acc);
    }
    Ok(e(k, params)?.add(&d(k, params)?.act(&params.one_minus_a(k), params)))
}

/// `w_i = (1 - b_i^-1)Σ_i + (Σ_i - r_i)Γ_i`, so that `X_i w_i = D_i r_i^2`.
pub fn torsion_multiplier(i: usize, params: &Params) -> Result<RingElement> {
    let sigma = params.sigma(i)?;
    let gamma = params.gamma(i)?;
    let r = RingElement::from_int(params.order(i));
    let first = params.one_minus_b_inv(i).mul(&sigma, params);
    let second = (&sigma - &r).mul(&gamma, params);
    Ok(&first + &second)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleIdentityReport {
    /// `E_i(1 - a_i) = 0`
    pub e_annihilated: bool,
    /// `D_i Σ_i = E_i(1 - b_i^-1)`
    pub d_sigma: bool,
}

impl ModuleIdentityReport {
    pub fn all(&self) -> bool {
        self.e_annihilated && self.d_sigma
    }
}

pub fn check_module_identities(i: usize, params: &Params) -> Result<ModuleIdentityReport> {
    let d_i = d(i, params)?;
    let e_i = e(i, params)?;
    let sigma = params.sigma(i)?;
    Ok(ModuleIdentityReport {
        e_annihilated: e_i.act(&params.one_minus_a(i), params).is_zero(),
        d_sigma: d_i.act(&sigma, params) == e_i.act(&params.one_minus_b_inv(i), params),
    })
}

/// The main identity `X_i w_i = D_i r_i^2` and the four expanded terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorsionReport {
    pub main: bool,
    /// `E_i(1 - b_i^-1)Σ_i = D_i Σ_i r_i`
    pub term1: bool,
    /// `E_i(Σ_i - r_i)Γ_i = 0`
    pub term2: bool,
    /// `D_i(1 - a_i)(1 - b_i^-1)Σ_i = 0`
    pub term3: bool,
    /// `D_i(1 - a_i)(Σ_i - r_i)Γ_i = D_i r_i^2 - D_i Σ_i r_i`
    pub term4: bool,
}

impl TorsionReport {
    pub fn all(&self) -> bool {
        self.main && self.term1 && self.term2 && self.term3 && self.term4
    }
}

pub fn check_torsion_relation(i: usize, params: &Params) -> Result<TorsionReport> {
    let p = params;
    let d_i = d(i, p)?;
    let e_i = e(i, p)?;
    let sigma = p.sigma(i)?;
    let gamma = p.gamma(i)?;
    let r = BigInt::from(p.order(i));
    let r_ring = RingElement::from_int(r.clone());
    let r_sq = RingElement::from_int(&r * &r);
    let one_minus_a = p.one_minus_a(i);
    let one_minus_b_inv = p.one_minus_b_inv(i);
    let sigma_minus_r = &sigma - &r_ring;

    let d_r_sq = d_i.act(&r_sq, p);
    let d_sigma_r = d_i.act(&sigma, p).act(&r_ring, p);

    let main = x(i, p)?.act(&torsion_multiplier(i, p)?, p) == d_r_sq;
    let term1 = e_i.act(&one_minus_b_inv, p).act(&sigma, p) == d_sigma_r;
    let term2 = e_i.act(&sigma_minus_r, p).act(&gamma, p).is_zero();
    let d_shift = d_i.act(&one_minus_a, p);
    let term3 = d_shift.act(&one_minus_b_inv, p).act(&sigma, p).is_zero();
    let term4 = d_shift.act(&sigma_minus_r, p).act(&gamma, p) == d_r_sq.sub(&d_sigma_r);
    Ok(TorsionReport {
        main,
        term1,
        term2,
        term3,
        term4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foxcomplex::starred_fox_row;
    use crate::freewords::{FreeWord, Generator};
    use crate::text::parse_ring;

    fn params(r: &[u64]) -> Params {
        Params::new(r.to_vec()).unwrap()
    }

    fn ring(p: &Params, s: &str) -> RingElement {
        parse_ring(s, p).unwrap()
    }

    #[test]
    fn generators_coordinates() {
        let p = params(&[2, 3]);
        let d1 = d(1, &p).unwrap();
        assert_eq!(d1.coords.get(0), &ring(&p, "e - b1^-1"));
        let e1 = e(1, &p).unwrap();
        assert_eq!(e1.coords.get(0), &p.sigma(1).unwrap());
        assert!((1..4).all(|k| e1.coords.get(k).is_zero()));
        assert!(d(2, &p).unwrap().coords.get(0).is_zero());
        assert!(d(3, &p).is_err());
    }

    #[test]
    fn x_coordinates() {
        let p = params(&[2, 3]);
        let x1 = x(1, &p).unwrap();
        let expected = &p.sigma(1).unwrap() + &p.one_minus_b_inv(1).mul(&p.one_minus_a(1), &p);
        assert_eq!(x1.coords.get(0), &expected);
        let x3 = x(3, &p).unwrap();
        assert_eq!(x3.coords.get(0), &p.one_minus_b_inv(1));
        assert_eq!(x3.coords.get(2), &p.one_minus_b_inv(2));
        assert!(x(2, &p).unwrap().coords.get(1).is_zero());
        assert!(x(4, &p).is_err());
        assert!(x(0, &p).is_err());
    }

    #[test]
    fn action_laws() {
        let p = params(&[2, 3]);
        let e1 = e(1, &p).unwrap();
        assert!(e1.act(&p.one_minus_a(1), &p).is_zero());
        assert_eq!(e1.act(&RingElement::one(), &p), e1);
        let lam = ring(&p, "a1 b2 - 2*b1");
        let mu = ring(&p, "e + a2^2");
        let d1 = d(1, &p).unwrap();
        assert_eq!(d1.act(&lam, &p).act(&mu, &p), d1.act(&lam.mul(&mu, &p), &p));
    }

    #[test]
    fn b_coordinate_of_d_sigma_vanishes() {
        let p = params(&[2, 3]);
        let ds = d(1, &p).unwrap().act(&p.sigma(1).unwrap(), &p);
        assert!(ds.coords.get(1).is_zero());
        let check = check_module_identities(1, &p).unwrap();
        assert!(check.all());
    }

    #[test]
    fn multiplier_r2() {
        let p = params(&[2, 3]);
        let expected =
            &p.one_minus_b_inv(1).mul(&ring(&p, "e + a1"), &p) + &ring(&p, "a1 - e").mul(&ring(&p, "a1"), &p);
        assert_eq!(torsion_multiplier(1, &p).unwrap(), expected);
        for i in 1..=2 {
            assert_eq!(torsion_multiplier(i, &p).unwrap().augmentation(), BigInt::from(0));
        }
        let w = torsion_multiplier(2, &p).unwrap();
        assert_eq!(w.star(&p).star(&p), w);
    }

    #[test]
    fn torsion_relation_instances() {
        let p = params(&[2, 3]);
        assert_eq!(
            x(1, &p).unwrap().act(&torsion_multiplier(1, &p).unwrap(), &p),
            d(1, &p).unwrap().act(&RingElement::from_int(4), &p)
        );
        assert!(check_torsion_relation(2, &p).unwrap().term2);
        let p = params(&[5, 7, 9, 11, 13]);
        for i in 1..=p.n() {
            assert!(check_torsion_relation(i, &p).unwrap().all());
            assert!(check_module_identities(i, &p).unwrap().all());
        }
    }

    #[test]
    fn conjugation_consistency_small() {
        let p = params(&[2, 3]);
        let g = FreeWord::from_letters([(Generator::b(2), BigInt::from(2)), (Generator::a(1), BigInt::from(-1))]);
        for i in 1..=2 {
            let conj = p.relator_r(i).unwrap().conjugate(&g);
            let lhs = starred_fox_row(&conj, &p).unwrap();
            let gr = RingElement::from_group(p.project(&g).unwrap());
            assert_eq!(lhs, d(i, &p).unwrap().act(&gr, &p).coords);
        }
    }
}

//! Syllable normal form for `G = *_i (C_{r_i} x Z)`.
//!
//! An element is an alternating product of syllables `a_f^k b_f^m`, one per
//! maximal run of a single factor `f`. With `0 <= k < r_f` and `(k, m) != (0, 0)`
//! the representation is unique, so equality is structural.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freewords::{FreeWord, GenKind, Generator, Params};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub factor: usize,
    pub k: u64,
    pub m: BigInt,
}

impl Syllable {
    fn is_trivial(&self) -> bool {
        self.k == 0 && self.m.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    syllables: Vec<Syllable>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Builds an element from syllables that are already in normal form.
    pub fn from_syllables(params: &Params, syllables: Vec<Syllable>) -> Result<Self> {
        let g = GroupElement { syllables };
        params.check_element(&g)?;
        Ok(g)
    }
}

impl Params {
    /// Verifies the normal-form invariants against these parameters.
    pub fn check_element(&self, g: &GroupElement) -> Result<()> {
        for (idx, s) in g.syllables.iter().enumerate() {
            self.check_index(s.factor)?;
            if s.k >= self.order(s.factor) {
                return Err(Error::param(format!(
                    "syllable {idx}: exponent {} of a{} not reduced mod {}",
                    s.k,
                    s.factor,
                    self.order(s.factor)
                )));
            }
            if s.is_trivial() {
                return Err(Error::param(format!("syllable {idx} is trivial")));
            }
            if idx > 0 && g.syllables[idx - 1].factor == s.factor {
                return Err(Error::param(format!(
                    "syllables {} and {idx} share factor {}",
                    idx - 1,
                    s.factor
                )));
            }
        }
        Ok(())
    }

    /// `a_i^k` as a group element.
    pub fn a_pow(&self, i: usize, k: i64) -> GroupElement {
        self.generator_power(Generator::a(i), &BigInt::from(k))
    }

    /// `b_i^m` as a group element.
    pub fn b_pow(&self, i: usize, m: i64) -> GroupElement {
        self.generator_power(Generator::b(i), &BigInt::from(m))
    }

    pub fn generator_power(&self, g: Generator, e: &BigInt) -> GroupElement {
        let r = BigInt::from(self.order(g.index));
        let syl = match g.kind {
            GenKind::A => Syllable {
                factor: g.index,
                k: to_u64(&e.mod_floor(&r)),
                m: BigInt::zero(),
            },
            GenKind::B => Syllable {
                factor: g.index,
                k: 0,
                m: e.clone(),
            },
        };
        if syl.is_trivial() {
            GroupElement::identity()
        } else {
            GroupElement { syllables: vec![syl] }
        }
    }

    /// The quotient map `F -> G`.
    pub fn project(&self, w: &FreeWord) -> Result<GroupElement> {
        self.check_word(w)?;
        let mut out = Vec::new();
        for (g, e) in w.letters() {
            for s in self.generator_power(*g, e).syllables {
                self.push_syllable(&mut out, s);
            }
        }
        Ok(GroupElement { syllables: out })
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        if x.is_identity() {
            return y.clone();
        }
        if y.is_identity() {
            return x.clone();
        }
        let mut out = x.syllables.clone();
        for s in &y.syllables {
            self.push_syllable(&mut out, s.clone());
        }
        GroupElement { syllables: out }
    }

    pub fn inv(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            syllables: x
                .syllables
                .iter()
                .rev()
                .map(|s| {
                    let r = self.order(s.factor);
                    Syllable {
                        factor: s.factor,
                        k: (r - s.k) % r,
                        m: -&s.m,
                    }
                })
                .collect(),
        }
    }

    /// Merges `s` onto the end of a normal-form syllable list; a syllable that
    /// becomes trivial is removed, which exposes the previous one for the
    /// next merge.
    fn push_syllable(&self, out: &mut Vec<Syllable>, s: Syllable) {
        match out.last_mut() {
            Some(top) if top.factor == s.factor => {
                let r = self.order(s.factor);
                top.k = (top.k + s.k) % r;
                top.m += s.m;
                if top.is_trivial() {
                    out.pop();
                }
            }
            _ => out.push(s),
        }
    }
}

fn to_u64(x: &BigInt) -> u64 {
    u64::try_from(x).expect("residue below a u64 modulus")
}

/// Deterministic total order: fewer syllables first, then lexicographic on
/// `(factor, k, m)`.
pub fn canonical_order(x: &GroupElement, y: &GroupElement) -> Ordering {
    x.syllables.len().cmp(&y.syllables.len()).then_with(|| {
        for (s, t) in x.syllables.iter().zip(&y.syllables) {
            let o = s.factor.cmp(&t.factor).then(s.k.cmp(&t.k)).then_with(|| s.m.cmp(&t.m));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_order(self, other)
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if first {
                first = false;
                Ok(())
            } else {
                f.write_str(" ")
            }
        };
        for s in &self.syllables {
            if s.k != 0 {
                sep(f)?;
                crate::freewords::fmt_power(f, &Generator::a(s.factor), &BigInt::from(s.k))?;
            }
            if !s.m.is_zero() {
                sep(f)?;
                if s.m.is_one() {
                    write!(f, "b{}", s.factor)?;
                } else {
                    write!(f, "b{}^{}", s.factor, s.m)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: &[u64]) -> Params {
        Params::new(r.to_vec()).unwrap()
    }

    fn syl(factor: usize, k: u64, m: i64) -> Syllable {
        Syllable {
            factor,
            k,
            m: BigInt::from(m),
        }
    }

    fn w(letters: &[(Generator, i64)]) -> FreeWord {
        FreeWord::from_letters(letters.iter().map(|(g, e)| (*g, BigInt::from(*e))))
    }

    #[test]
    fn relators_project_to_identity() {
        let p = params(&[3, 2]);
        assert!(p.project(&p.relator_s(1).unwrap()).unwrap().is_identity());
        assert!(p.project(&p.relator_r(1).unwrap()).unwrap().is_identity());
        assert!(p.project(&p.relator_r(2).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn project_reduces_and_merges() {
        let p = params(&[3, 2]);
        let word = w(&[(Generator::a(1), 4), (Generator::b(1), -2), (Generator::a(2), 1)]);
        let g = p.project(&word).unwrap();
        assert_eq!(g.syllables(), &[syl(1, 1, -2), syl(2, 1, 0)]);
        assert_eq!(g.to_string(), "a1 b1^-2 a2");
    }

    #[test]
    fn project_rejects_large_index() {
        let p = params(&[3]);
        assert!(p.project(&w(&[(Generator::b(2), 1)])).is_err());
    }

    #[test]
    fn multiplication() {
        let p = params(&[3, 2]);
        let x = GroupElement::from_syllables(&p, vec![syl(1, 2, 0)]).unwrap();
        assert_eq!(p.mul(&x, &x).syllables(), &[syl(1, 1, 0)]);
        let y = GroupElement::from_syllables(&p, vec![syl(2, 0, 1)]).unwrap();
        let a = GroupElement::from_syllables(&p, vec![syl(1, 1, 0)]).unwrap();
        assert_eq!(p.mul(&a, &y).syllables(), &[syl(1, 1, 0), syl(2, 0, 1)]);
    }

    #[test]
    fn cascading_cancellation() {
        let p = params(&[3, 2]);
        let x = GroupElement::from_syllables(&p, vec![syl(1, 1, 2), syl(2, 1, 0), syl(1, 0, 5)]).unwrap();
        assert!(p.mul(&x, &p.inv(&x)).is_identity());
        assert!(p.mul(&p.inv(&x), &x).is_identity());
        // partial cancellation leaves a merged syllable
        let y = GroupElement::from_syllables(&p, vec![syl(1, 0, -5), syl(2, 1, 0), syl(1, 2, 0)]).unwrap();
        assert_eq!(p.mul(&x, &y).syllables(), &[syl(1, 0, 2)]);
    }

    #[test]
    fn factor_commutes_internally() {
        let p = params(&[3]);
        let ab = p.project(&w(&[(Generator::a(1), 1), (Generator::b(1), 1)])).unwrap();
        let ba = p.project(&w(&[(Generator::b(1), 1), (Generator::a(1), 1)])).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn ordering() {
        let p = params(&[3, 2]);
        let e = GroupElement::identity();
        let a1 = p.a_pow(1, 1);
        let a1sq = p.a_pow(1, 2);
        assert_eq!(canonical_order(&e, &a1), Ordering::Less);
        assert_eq!(canonical_order(&a1, &a1sq), Ordering::Less);
        let b2 = p.b_pow(2, 1);
        let b1b2 = p.mul(&p.b_pow(1, 1), &b2);
        assert_eq!(canonical_order(&b2, &b1b2), Ordering::Less);
        assert_eq!(canonical_order(&b2, &b2), Ordering::Equal);
    }

    #[test]
    fn rejects_non_normal_syllables() {
        let p = params(&[3, 2]);
        assert!(GroupElement::from_syllables(&p, vec![syl(1, 3, 0)]).is_err());
        assert!(GroupElement::from_syllables(&p, vec![syl(1, 0, 0)]).is_err());
        assert!(GroupElement::from_syllables(&p, vec![syl(1, 1, 0), syl(1, 0, 1)]).is_err());
        assert!(GroupElement::from_syllables(&p, vec![syl(3, 1, 0)]).is_err());
    }
}

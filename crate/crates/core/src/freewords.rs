//! Reduced words in the free group on `a1, b1, ..., an, bn`.
//!
//! Words are stored run-length encoded: a list of `(generator, exponent)`
//! pairs with adjacent generators distinct and no zero exponents. This keeps
//! relators such as `a_i^{r_i}` constant size.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    A,
    B,
}

/// A free generator `a_i` or `b_i`, with 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
}

impl Generator {
    pub fn a(index: usize) -> Self {
        Generator {
            kind: GenKind::A,
            index,
        }
    }

    pub fn b(index: usize) -> Self {
        Generator {
            kind: GenKind::B,
            index,
        }
    }

    /// Position among the columns `a1, b1, a2, b2, ...`.
    pub fn column(&self) -> usize {
        2 * (self.index - 1)
            + match self.kind {
                GenKind::A => 0,
                GenKind::B => 1,
            }
    }

    pub fn from_column(column: usize) -> Self {
        let index = column / 2 + 1;
        if column.is_multiple_of(2) {
            Generator::a(index)
        } else {
            Generator::b(index)
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::A => write!(f, "a{}", self.index),
            GenKind::B => write!(f, "b{}", self.index),
        }
    }
}

/// Pairwise coprime orders `r_1, ..., r_n >= 2` of the cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Params {
    r: Vec<u64>,
}

impl Params {
    pub fn new(r: Vec<u64>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::param("at least one factor is required"));
        }
        for (i, &ri) in r.iter().enumerate() {
            if ri < 2 {
                return Err(Error::param(format!("r[{i}]={ri} must be at least 2")));
            }
        }
        for i in 0..r.len() {
            for j in i + 1..r.len() {
                if r[i].gcd(&r[j]) != 1 {
                    return Err(Error::param(format!("r[{i}]={} and r[{j}]={} not coprime", r[i], r[j])));
                }
            }
        }
        Ok(Params { r })
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[u64] {
        &self.r
    }

    /// Order of `a_i` (1-based).
    pub fn order(&self, i: usize) -> u64 {
        self.r[i - 1]
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            Err(Error::param(format!("index {i} outside 1..{}", self.n())))
        } else {
            Ok(())
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..2 * self.n()).map(Generator::from_column)
    }

    /// Freely reduces a raw letter list, rejecting generators with
    /// indices outside `1..=n`.
    pub fn reduce<I>(&self, letters: I) -> Result<FreeWord>
    where
        I: IntoIterator<Item = (Generator, BigInt)>,
    {
        let letters: Vec<_> = letters.into_iter().collect();
        for (g, _) in &letters {
            self.check_index(g.index)
                .map_err(|_| Error::param(format!("generator {g} exceeds n={}", self.n())))?;
        }
        Ok(FreeWord::from_letters(letters))
    }

    pub fn check_word(&self, w: &FreeWord) -> Result<()> {
        for (g, _) in w.letters() {
            self.check_index(g.index)
                .map_err(|_| Error::param(format!("generator {g} exceeds n={}", self.n())))?;
        }
        Ok(())
    }

    /// `R_i = a_i b_i a_i^-1 b_i^-1`.
    pub fn relator_r(&self, i: usize) -> Result<FreeWord> {
        self.check_index(i)?;
        let (a, b) = (Generator::a(i), Generator::b(i));
        Ok(FreeWord::from_letters([
            (a, BigInt::one()),
            (b, BigInt::one()),
            (a, -BigInt::one()),
            (b, -BigInt::one()),
        ]))
    }

    /// `S_i = a_i^{r_i}`.
    pub fn relator_s(&self, i: usize) -> Result<FreeWord> {
        self.check_index(i)?;
        Ok(FreeWord::power(Generator::a(i), BigInt::from(self.order(i))))
    }

    /// Checks the free-group identities relating conjugates of `R_i` to
    /// `S_i`, each equality separately.
    pub fn verify_free_identities(&self, i: usize) -> Result<FreeIdentityReport> {
        let r_i = self.relator_r(i)?;
        let s_i = self.relator_s(i)?;
        let ri = self.order(i);
        let a = Generator::a(i);
        let b = Generator::b(i);
        let a_pow = |e: i64| FreeWord::power(a, BigInt::from(e));

        // (a^-1 R a)(a^-2 R a^2)...(a^-r R a^r)
        let mut conjugate_chain = FreeWord::identity();
        for j in 1..=ri as i64 {
            conjugate_chain = conjugate_chain.multiply(&r_i.conjugate(&a_pow(j)));
        }

        // (a^-1 R)^r a^r
        let step = a_pow(-1).multiply(&r_i);
        let mut telescoped = FreeWord::identity();
        for _ in 0..ri {
            telescoped = telescoped.multiply(&step);
        }
        let telescoped = telescoped.multiply(&a_pow(ri as i64));

        let b_word = FreeWord::power(b, BigInt::one());
        let collapsed = b_word
            .multiply(&a_pow(-(ri as i64)))
            .multiply(&b_word.invert())
            .multiply(&a_pow(ri as i64));

        let via_s = b_word.multiply(&s_i.invert()).multiply(&b_word.invert()).multiply(&s_i);

        let s_commutator = a_pow(-1).multiply(&s_i.invert()).multiply(&a_pow(1)).multiply(&s_i);

        Ok(FreeIdentityReport {
            conjugate_chain_telescopes: conjugate_chain == telescoped,
            telescoped_collapses: telescoped == collapsed,
            collapsed_matches_s: collapsed == via_s,
            s_commutes_with_a: s_commutator.is_identity(),
            product: via_s,
        })
    }
}

/// Outcome of [`Params::verify_free_identities`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeIdentityReport {
    pub conjugate_chain_telescopes: bool,
    pub telescoped_collapses: bool,
    pub collapsed_matches_s: bool,
    pub s_commutes_with_a: bool,
    /// The common value `b_i S_i^-1 b_i^-1 S_i`.
    pub product: FreeWord,
}

impl FreeIdentityReport {
    pub fn all(&self) -> bool {
        self.conjugate_chain_telescopes
            && self.telescoped_collapses
            && self.collapsed_matches_s
            && self.s_commutes_with_a
    }
}

/// A reduced word of the free group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    letters: Vec<(Generator, BigInt)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn power(g: Generator, exp: BigInt) -> Self {
        FreeWord::from_letters([(g, exp)])
    }

    /// Free reduction by a single left-to-right stack pass. Cancellation
    /// cascades because every push is merged against the current top.
    pub fn from_letters<I>(letters: I) -> Self
    where
        I: IntoIterator<Item = (Generator, BigInt)>,
    {
        let mut out: Vec<(Generator, BigInt)> = Vec::new();
        for (g, e) in letters {
            push_letter(&mut out, g, e);
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[(Generator, BigInt)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> BigInt {
        self.letters.iter().map(|(_, e)| e.abs()).sum()
    }

    pub fn multiply(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.letters.clone();
        for (g, e) in &other.letters {
            push_letter(&mut out, *g, e.clone());
        }
        FreeWord { letters: out }
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|(g, e)| (*g, -e)).collect(),
        }
    }

    /// `g^-1 w g`.
    pub fn conjugate(&self, g: &FreeWord) -> FreeWord {
        g.invert().multiply(self).multiply(g)
    }
}

fn push_letter(out: &mut Vec<(Generator, BigInt)>, g: Generator, e: BigInt) {
    if e.is_zero() {
        return;
    }
    match out.last_mut() {
        Some((top, te)) if *top == g => {
            *te += e;
            if te.is_zero() {
                out.pop();
            }
        }
        _ => out.push((g, e)),
    }
}

pub(crate) fn fmt_power(f: &mut fmt::Formatter<'_>, g: &Generator, e: &BigInt) -> fmt::Result {
    if e.is_one() {
        write!(f, "{g}")
    } else {
        write!(f, "{g}^{e}")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (idx, (g, e)) in self.letters.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            fmt_power(f, g, e)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(g: Generator, e: i64) -> (Generator, BigInt) {
        (g, BigInt::from(e))
    }

    fn p(r: &[u64]) -> Params {
        Params::new(r.to_vec()).unwrap()
    }

    #[test]
    fn cancellation() {
        let a1 = Generator::a(1);
        let b1 = Generator::b(1);
        assert!(FreeWord::from_letters([l(a1, 1), l(a1, -1)]).is_identity());
        let w = FreeWord::from_letters([l(a1, 1), l(b1, 1), l(b1, -1), l(a1, 1)]);
        assert_eq!(w, FreeWord::power(a1, 2.into()));
    }

    #[test]
    fn conjugated_commutator() {
        let params = p(&[2]);
        let r1 = params.relator_r(1).unwrap();
        let a1 = FreeWord::power(Generator::a(1), 1.into());
        let raw = a1.invert().multiply(&r1).multiply(&a1);
        assert_eq!(raw.to_string(), "b1 a1^-1 b1^-1 a1");
        assert_eq!(r1.conjugate(&a1), raw);
    }

    #[test]
    fn inverse_is_anti_homomorphism() {
        let w = FreeWord::from_letters([l(Generator::a(1), 1), l(Generator::b(2), 1)]);
        assert_eq!(w.invert().to_string(), "b2^-1 a1^-1");
        assert!(w.multiply(&w.invert()).is_identity());
    }

    #[test]
    fn relators() {
        let params = p(&[2, 3]);
        assert_eq!(params.relator_r(1).unwrap().to_string(), "a1 b1 a1^-1 b1^-1");
        assert_eq!(params.relator_s(1).unwrap().to_string(), "a1^2");
        assert_eq!(params.relator_s(2).unwrap().to_string(), "a2^3");
        assert!(params.relator_r(3).is_err());
        assert!(params.relator_s(0).is_err());
    }

    #[test]
    fn free_identities_r2() {
        let params = p(&[2]);
        let report = params.verify_free_identities(1).unwrap();
        assert!(report.all());
        assert_eq!(report.product.to_string(), "b1 a1^-2 b1^-1 a1^2");
    }

    #[test]
    fn free_identities_r5() {
        let params = p(&[5, 7]);
        assert!(params.verify_free_identities(1).unwrap().all());
        assert!(params.verify_free_identities(2).unwrap().all());
    }

    #[test]
    fn params_validation() {
        assert_eq!(
            Params::new(vec![2, 4, 5]).unwrap_err().to_string(),
            "parameter error: r[0]=2 and r[1]=4 not coprime"
        );
        assert!(Params::new(vec![1]).is_err());
        assert!(Params::new(vec![]).is_err());
        let params = p(&[2, 3]);
        assert!(params.reduce([l(Generator::a(3), 1)]).is_err());
        assert!(params.reduce([l(Generator::b(2), 1)]).is_ok());
    }

    #[test]
    fn columns_roundtrip() {
        for c in 0..10 {
            assert_eq!(Generator::from_column(c).column(), c);
        }
        assert_eq!(Generator::b(2).column(), 3);
    }
}

//! Parsers for the textual word and ring-element forms.
//!
//! ```text
//! word  := "e" | term+            terms separated by "*" or whitespace
//! term  := ("a"|"b") digits ("^" "-"? digits)?
//! ring  := "0" | sign? summand (("+"|"-") summand)*
//! summand := digits ("*" group)? | group
//! group := "e" | term+
//! ```
//!
//! Columns in errors are 1-based character positions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freewords::{FreeWord, GenKind, Generator, Params};
use crate::groupring::RingElement;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Letter(Generator, BigInt),
    Identity,
    Int(BigInt),
    Star,
    Plus,
    Minus,
}

struct Lexer {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer {
            chars: src.chars().enumerate().map(|(i, c)| (i + 1, c)).collect(),
            pos: 0,
        }
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or(self.chars.len() + 1)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|(_, c)| c).collect())
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            let col = self.column();
            match c {
                c if c.is_whitespace() => {
                    self.pos += 1;
                }
                '*' => {
                    self.pos += 1;
                    out.push((col, Tok::Star));
                }
                '+' => {
                    self.pos += 1;
                    out.push((col, Tok::Plus));
                }
                '-' => {
                    self.pos += 1;
                    out.push((col, Tok::Minus));
                }
                'e' => {
                    self.pos += 1;
                    out.push((col, Tok::Identity));
                }
                'a' | 'b' => {
                    self.pos += 1;
                    let kind = if c == 'a' { GenKind::A } else { GenKind::B };
                    let idx = self
                        .digits()
                        .ok_or_else(|| Error::parse(self.column(), "expected generator index"))?;
                    let index: usize = idx
                        .parse()
                        .map_err(|_| Error::parse(col, "generator index too large"))?;
                    if index == 0 {
                        return Err(Error::parse(col, "generator index must be positive"));
                    }
                    let mut exp = BigInt::one();
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let neg = self.peek() == Some('-');
                        if neg {
                            self.pos += 1;
                        }
                        let d = self
                            .digits()
                            .ok_or_else(|| Error::parse(self.column(), "expected exponent"))?;
                        exp = d.parse().expect("digit string");
                        if neg {
                            exp = -exp;
                        }
                    }
                    out.push((col, Tok::Letter(Generator { kind, index }, exp)));
                }
                c if c.is_ascii_digit() => {
                    let d = self.digits().expect("at least one digit");
                    out.push((col, Tok::Int(d.parse().expect("digit string"))));
                }
                other => return Err(Error::parse(col, format!("unexpected character '{other}'"))),
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        let toks = Lexer::new(src).tokens()?;
        Ok(Parser {
            toks,
            pos: 0,
            end: src.chars().count() + 1,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// `"e" | term+`, with `*` allowed between terms.
    fn group_word(&mut self) -> Result<Vec<(usize, Generator, BigInt)>> {
        if self.peek() == Some(&Tok::Identity) {
            self.bump();
            return Ok(Vec::new());
        }
        let mut letters = Vec::new();
        loop {
            let col = self.column();
            match self.peek() {
                Some(Tok::Letter(..)) => {
                    if let Some(Tok::Letter(g, e)) = self.bump() {
                        letters.push((col, g, e));
                    }
                }
                _ => break,
            }
            if self.peek() == Some(&Tok::Star) && matches!(self.toks.get(self.pos + 1), Some((_, Tok::Letter(..)))) {
                self.bump();
            }
        }
        if letters.is_empty() {
            return Err(Error::parse(self.column(), "expected a word"));
        }
        Ok(letters)
    }
}

fn check_letters(letters: &[(usize, Generator, BigInt)], params: &Params) -> Result<()> {
    match letters.iter().find(|(_, g, _)| g.index > params.n()) {
        Some((col, g, _)) => Err(Error::parse(*col, format!("generator {g} exceeds n={}", params.n()))),
        None => Ok(()),
    }
}

/// Parses a word without checking generator indices against any `n`.
pub fn parse_raw_word(src: &str) -> Result<Vec<(Generator, BigInt)>> {
    let mut p = Parser::new(src)?;
    let letters = p.group_word()?;
    if !p.at_end() {
        return Err(Error::parse(p.column(), "unexpected trailing input"));
    }
    Ok(letters.into_iter().map(|(_, g, e)| (g, e)).collect())
}

pub fn parse_word(src: &str, params: &Params) -> Result<FreeWord> {
    let mut p = Parser::new(src)?;
    let letters = p.group_word()?;
    if !p.at_end() {
        return Err(Error::parse(p.column(), "unexpected trailing input"));
    }
    check_letters(&letters, params)?;
    Ok(FreeWord::from_letters(letters.into_iter().map(|(_, g, e)| (g, e))))
}

/// Parses a ring element; words are projected into `G`, so any spelling of
/// a group element is accepted, not only the canonical one.
pub fn parse_ring(src: &str, params: &Params) -> Result<RingElement> {
    let mut p = Parser::new(src)?;
    if p.toks.len() == 1 && p.peek() == Some(&Tok::Int(BigInt::zero())) {
        return Ok(RingElement::zero());
    }
    let mut out = RingElement::zero();
    let mut first = true;
    while !p.at_end() || first {
        let mut negative = false;
        match p.peek() {
            Some(Tok::Plus) if !first => {
                p.bump();
            }
            Some(Tok::Minus) => {
                p.bump();
                negative = true;
            }
            _ if first => {}
            _ => return Err(Error::parse(p.column(), "expected '+' or '-'")),
        }
        first = false;
        let col = p.column();
        let mut coeff = BigInt::one();
        let mut has_coeff = false;
        if let Some(Tok::Int(_)) = p.peek() {
            if let Some(Tok::Int(c)) = p.bump() {
                coeff = c;
            }
            has_coeff = true;
        }
        let letters = if has_coeff {
            if p.peek() == Some(&Tok::Star) {
                p.bump();
                p.group_word()?
            } else {
                Vec::new()
            }
        } else {
            p.group_word()?
        };
        check_letters(&letters, params)?;
        let word = FreeWord::from_letters(letters.into_iter().map(|(_, g, e)| (g, e)));
        let g = params.project(&word).map_err(|e| Error::parse(col, e.to_string()))?;
        out.add_term(g, if negative { -coeff } else { coeff });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalform::GroupElement;

    fn params(r: &[u64]) -> Params {
        Params::new(r.to_vec()).unwrap()
    }

    #[test]
    fn words() {
        let p = params(&[3, 2]);
        assert!(parse_word("e", &p).unwrap().is_identity());
        assert_eq!(parse_word("a1*b2^-3  a1^12", &p).unwrap().to_string(), "a1 b2^-3 a1^12");
        assert_eq!(parse_word("a1 a1^-1 b1", &p).unwrap().to_string(), "b1");
    }

    #[test]
    fn word_errors_have_columns() {
        let p = params(&[3, 2]);
        let err = parse_word("a1 x2", &p).unwrap_err();
        assert_eq!(err, Error::parse(4, "unexpected character 'x'"));
        assert!(matches!(parse_word("a1^", &p), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_word("a", &p), Err(Error::Parse { column: 2, .. })));
        assert!(matches!(parse_word("", &p), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("b1 a3", &p), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_word("a0", &p), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("e a1", &p), Err(Error::Parse { column: 3, .. })));
    }

    #[test]
    fn ring_elements_roundtrip_examples() {
        let p = params(&[3, 2]);
        for text in [
            "0",
            "e",
            "-e",
            "e + a1 + a1^2",
            "a1 + 2*a1^2",
            "e - b1^-1",
            "-3*e - 17*b1^4 + a1 a2 b2^-1",
        ] {
            let x = parse_ring(text, &p).unwrap();
            assert_eq!(x.to_string(), text);
        }
        assert_eq!(parse_ring("5", &p).unwrap(), RingElement::from_int(5));
        assert_eq!(parse_ring("a1^4 b1 a1^-1", &p).unwrap().to_string(), "b1");
        assert!(parse_ring("a1 + a1^4", &p).unwrap().coefficient(&p.a_pow(1, 1)) == 2.into());
        assert!(parse_ring("e - e", &p).unwrap().is_zero());
        let _ = GroupElement::identity();
    }

    #[test]
    fn ring_errors() {
        let p = params(&[3, 2]);
        assert!(matches!(parse_ring("e +", &p), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_ring("e e", &p), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_ring("2*", &p), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_ring("e + 2*b5", &p),
            Err(Error::Parse { column: 7, .. })
        ));
        assert!(matches!(parse_ring("", &p), Err(Error::Parse { .. })));
    }
}

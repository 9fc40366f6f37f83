//! Canonical text form for scalars: integer coefficients, `q` and `t<i>_<j>`
//! symbols, `^` with integer or fractional exponents, and a single top-level
//! fraction bar.
//!
//! Invariant: render is bit-exact canonical (reduced representative, terms in
//! descending lexicographic order) and parse(render(a)) == a.

use crate::coeff::poly::{ExpVec, LaurentPoly};
use crate::coeff::scalar::ParamScalar;
use crate::coeff::VarSet;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

/// Render one exponent, stored value e over lattice denominator r.
fn render_exp(e: i64, r: i64) -> String {
    let g = e.abs().gcd(&r);
    let (num, den) = (e / g, r / g);
    if den == 1 {
        format!("^{num}")
    } else {
        format!("^({num}/{den})")
    }
}

fn render_poly(vars: &VarSet, p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let r = vars.r;
    let mut out = String::new();
    // Descending lexicographic order: leading term first.
    for (idx, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        for (k, &ek) in e.iter().enumerate() {
            if ek == 0 {
                continue;
            }
            let name = vars.var_name(k);
            if ek == r {
                factors.push(name);
            } else {
                factors.push(format!("{name}{}", render_exp(ek, r)));
            }
        }
        let ac = c.abs();
        if factors.is_empty() {
            out.push_str(&ac.to_string());
        } else {
            if !ac.is_one() {
                out.push_str(&ac.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Canonical rendering of the reduced representative.
pub fn render_scalar(vars: &VarSet, s: &ParamScalar) -> String {
    let s = s.reduce();
    if s.den.is_one() {
        render_poly(vars, &s.num)
    } else {
        format!("({})/({})", render_poly(vars, &s.num), render_poly(vars, &s.den))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Nat(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(vars: &VarSet, s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().map_err(|_| Error::Parse(format!("bad integer in {s:?}")))?;
                out.push(Tok::Nat(n));
            }
            'q' | 't' => {
                let start = i;
                i += 1;
                while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'_') {
                    i += 1;
                }
                let name = &s[start..i];
                let idx = vars
                    .var_index(name)
                    .ok_or_else(|| Error::Parse(format!("unknown symbol {name:?}")))?;
                out.push(Tok::Var(idx));
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: &'a VarSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.bump() {
            Some(x) if x == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    /// Signed integer: [-] digits.
    fn parse_int(&mut self) -> Result<BigInt> {
        let neg = matches!(self.peek(), Some(Tok::Minus));
        if neg {
            self.bump();
        }
        match self.bump() {
            Some(Tok::Nat(n)) => Ok(if neg { -n } else { n }),
            other => Err(Error::Parse(format!("expected integer, found {other:?}"))),
        }
    }

    /// Exponent after '^': integer, or parenthesized integer / fraction.
    /// Returns the stored (r-scaled) exponent.
    fn parse_exponent(&mut self) -> Result<i64> {
        let r = self.vars.r;
        let (a, b) = if matches!(self.peek(), Some(Tok::LParen)) {
            self.bump();
            let a = self.parse_int()?;
            let b = if matches!(self.peek(), Some(Tok::Slash)) {
                self.bump();
                self.parse_int()?
            } else {
                BigInt::one()
            };
            self.expect(Tok::RParen)?;
            (a, b)
        } else {
            (self.parse_int()?, BigInt::one())
        };
        let num: i64 = a
            .try_into()
            .map_err(|_| Error::Parse("exponent out of range".into()))?;
        let den: i64 = b
            .try_into()
            .map_err(|_| Error::Parse("exponent out of range".into()))?;
        if den == 0 {
            return Err(Error::Parse("zero exponent denominator".into()));
        }
        let scaled = num
            .checked_mul(r)
            .ok_or_else(|| Error::Parse("exponent out of range".into()))?;
        if scaled % den != 0 {
            return Err(Error::Parse(format!(
                "exponent {num}/{den} is outside the (1/{r}) lattice"
            )));
        }
        Ok(scaled / den)
    }

    /// term := (Nat | Var ('^' exponent)?) ('*' ...)*
    fn parse_term(&mut self) -> Result<(BigInt, ExpVec)> {
        let mut coeff = BigInt::one();
        let mut exps = vec![0i64; self.vars.num_vars()];
        loop {
            match self.bump() {
                Some(Tok::Nat(n)) => coeff *= n,
                Some(Tok::Var(k)) => {
                    let e = if matches!(self.peek(), Some(Tok::Caret)) {
                        self.bump();
                        self.parse_exponent()?
                    } else {
                        self.vars.r
                    };
                    exps[k] += e;
                }
                other => return Err(Error::Parse(format!("expected term factor, found {other:?}"))),
            }
            if matches!(self.peek(), Some(Tok::Star)) {
                self.bump();
            } else {
                break;
            }
        }
        Ok((coeff, exps))
    }

    /// poly := ['-'] term (('+'|'-') term)*
    fn parse_poly(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        let mut sign = BigInt::one();
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            sign = -sign;
        }
        loop {
            let (c, e) = self.parse_term()?;
            acc = acc.add(&LaurentPoly::monomial(e, sign.clone() * c));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign = BigInt::one();
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -BigInt::one();
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// operand := '(' poly ')' | poly
    fn parse_operand(&mut self) -> Result<LaurentPoly> {
        if matches!(self.peek(), Some(Tok::LParen)) {
            self.bump();
            let p = self.parse_poly()?;
            self.expect(Tok::RParen)?;
            Ok(p)
        } else {
            self.parse_poly()
        }
    }
}

/// Parse the scalar grammar: operand, optionally over a second operand.
pub fn parse_scalar(vars: &VarSet, s: &str) -> Result<ParamScalar> {
    let toks = lex(vars, s)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        vars,
    };
    let num = p.parse_operand()?;
    let den = if matches!(p.peek(), Some(Tok::Slash)) {
        p.bump();
        p.parse_operand()?
    } else {
        LaurentPoly::one(vars.num_vars())
    };
    if p.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input after scalar in {s:?}")));
    }
    if den.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(ParamScalar {
        num,
        den,
        nvars: vars.num_vars(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn renders_canonical_examples() {
        let vars = VarSet::new(2, 3);
        let n = vars.num_vars();
        // q - q^-1 over lattice r=3: q has stored exponent 3.
        let q = ParamScalar::monomial(n, {
            let mut e = vec![0; n];
            e[0] = 3;
            e
        }, 1);
        let s = q.sub(&q.inv().unwrap());
        assert_eq!(render_scalar(&vars, &s), "q - q^-1");
        // Fractional exponent and a t-symbol.
        let t = ParamScalar::monomial(n, {
            let mut e = vec![0; n];
            e[vars.t_var(0, 1)] = -2;
            e
        }, 1);
        assert_eq!(render_scalar(&vars, &t), "t1_2^(-2/3)");
        assert_eq!(render_scalar(&vars, &ParamScalar::zero(n)), "0");
        let frac = s.div(&q.add(&ParamScalar::from_int(n, 2))).unwrap();
        assert_eq!(render_scalar(&vars, &frac), "(q - q^-1)/(q + 2)");
    }

    #[test]
    fn parses_spec_forms() {
        let vars = VarSet::new(2, 2);
        let a = parse_scalar(&vars, "q^(-3/2)").unwrap();
        let b = ParamScalar::monomial(vars.num_vars(), {
            let mut e = vec![0; vars.num_vars()];
            e[0] = -3;
            e
        }, 1);
        assert!(a.eq_scalar(&b));
        assert!(parse_scalar(&vars, "q^(1/4)").is_err());
        assert!(parse_scalar(&vars, "2*t1_2 - 3").is_ok());
        assert!(parse_scalar(&vars, "(q + 1)/(q - 1)").is_ok());
        assert!(parse_scalar(&vars, "q q").is_err());
    }

    #[test]
    fn round_trips_random_scalars() {
        let vars = VarSet::new(2, 3);
        let n = vars.num_vars();
        let mut rng = ChaCha20Rng::seed_from_u64(17);
        for _ in 0..60 {
            let rand_poly = |rng: &mut ChaCha20Rng| {
                let mut p = LaurentPoly::zero();
                for _ in 0..rng.gen_range(1..4) {
                    let e: Vec<i64> = (0..n).map(|_| rng.gen_range(-6i64..7)).collect();
                    let c = num_bigint::BigInt::from(rng.gen_range(-9i64..10));
                    p = p.add(&LaurentPoly::monomial(e, c));
                }
                p
            };
            let num = rand_poly(&mut rng);
            let mut den = rand_poly(&mut rng);
            if den.is_zero() {
                den = LaurentPoly::one(n);
            }
            let s = ParamScalar { num, den, nvars: n };
            let text = render_scalar(&vars, &s);
            let back = parse_scalar(&vars, &text).unwrap();
            assert!(back.eq_scalar(&s), "round-trip failed for {text}");
            // Canonical form is a fixed point of render∘parse.
            assert_eq!(render_scalar(&vars, &back), text);
        }
    }
}

//! Canonical text form for normal-form elements.
//!
//! Grammar (canonical rendering is bit-exact and deterministic):
//!
//!   element := "0" | term (" + " term)*
//!   term    := "(" scalar ")" " " fsec " . " tsec " . " esec
//!   fsec    := "1" | fgen (" " fgen)*        fgen := "f" index
//!   tsec    := "w'[" ints "]" " " "w[" ints "]"
//!   esec    := "1" | egen (" " egen)*        egen := "e" index
//!
//! Generator indices are 1-based; `ints` are comma-separated integers, one
//! per generator. Signs live inside the scalar. Terms appear in the
//! deterministic monomial order (f-word, then torus exponents, then e-word,
//! all lexicographic).

use super::{NFElement, NFMono};
use crate::algebra::Algebra;
use crate::coeff::parse::parse_scalar;
use crate::coeff::CoeffBackend;
use crate::error::{Error, Result};

fn render_letters(prefix: char, letters: &[u8]) -> String {
    if letters.is_empty() {
        return "1".to_string();
    }
    letters
        .iter()
        .map(|l| format!("{prefix}{}", l + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_ints(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl<C: CoeffBackend> Algebra<C> {
    /// Canonical text rendering of an element.
    pub fn render_nf(&self, x: &NFElement<C::Elt>) -> String {
        if x.is_empty() {
            return "0".to_string();
        }
        x.iter()
            .map(|(m, c)| {
                format!(
                    "({}) {} . w'[{}] w[{}] . {}",
                    self.backend.render(c),
                    render_letters('f', &m.f),
                    render_ints(&m.eta),
                    render_ints(&m.phi),
                    render_letters('e', &m.e),
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parse the canonical element grammar. Coefficients are parsed exactly
    /// and then mapped through the backend.
    pub fn parse_nf(&self, text: &str) -> Result<NFElement<C::Elt>> {
        let text = text.trim();
        if text == "0" {
            return Ok(NFElement::zero());
        }
        let mut out = NFElement::zero();
        for term in split_top_level(text)? {
            let (mono, coeff) = self.parse_term(term.trim())?;
            self.nf_insert(&mut out, mono, self.backend.from_param(&coeff)?);
        }
        Ok(out)
    }

    fn parse_term(&self, term: &str) -> Result<(NFMono, crate::coeff::ParamScalar)> {
        if !term.starts_with('(') {
            return Err(Error::Parse(format!(
                "term must start with a parenthesized scalar: {term}"
            )));
        }
        let close = matching_paren(term)?;
        let scalar = parse_scalar(&self.vars, &term[1..close])?;
        let rest = term[close + 1..].trim();
        let sections: Vec<&str> = rest.split(" . ").collect();
        if sections.len() != 3 {
            return Err(Error::Parse(format!(
                "term needs three sections separated by ' . ': {rest}"
            )));
        }
        let f = self.parse_letters(sections[0].trim(), 'f')?;
        let (eta, phi) = self.parse_torus(sections[1].trim())?;
        let e = self.parse_letters(sections[2].trim(), 'e')?;
        Ok((NFMono { f, eta, phi, e }, scalar))
    }

    fn parse_letters(&self, sec: &str, prefix: char) -> Result<Vec<u8>> {
        if sec == "1" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for tok in sec.split_whitespace() {
            let body = tok.strip_prefix(prefix).ok_or_else(|| {
                Error::Parse(format!("expected {prefix}-generator, got {tok}"))
            })?;
            let idx: usize = body
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator index in {tok}")))?;
            if idx == 0 || idx > self.rank() {
                return Err(Error::Parse(format!(
                    "generator index {idx} outside 1..={}",
                    self.rank()
                )));
            }
            out.push((idx - 1) as u8);
        }
        Ok(out)
    }

    fn parse_torus(&self, sec: &str) -> Result<(Vec<i64>, Vec<i64>)> {
        let body = sec
            .strip_prefix("w'[")
            .ok_or_else(|| Error::Parse(format!("torus section must start with w'[: {sec}")))?;
        let end1 = body
            .find(']')
            .ok_or_else(|| Error::Parse("unterminated w' exponent list".into()))?;
        let eta = parse_int_list(&body[..end1], self.rank())?;
        let rest = body[end1 + 1..].trim_start();
        let body2 = rest
            .strip_prefix("w[")
            .ok_or_else(|| Error::Parse(format!("expected w[ after w' block: {rest}")))?;
        let end2 = body2
            .find(']')
            .ok_or_else(|| Error::Parse("unterminated w exponent list".into()))?;
        let phi = parse_int_list(&body2[..end2], self.rank())?;
        if !body2[end2 + 1..].trim().is_empty() {
            return Err(Error::Parse(format!(
                "trailing text after torus section: {sec}"
            )));
        }
        Ok((eta, phi))
    }
}

fn parse_int_list(s: &str, rank: usize) -> Result<Vec<i64>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != rank {
        return Err(Error::Parse(format!(
            "torus exponent list needs {rank} entries, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {p} in torus exponents")))
        })
        .collect()
}

/// Index of the parenthesis closing the one that opens `s`.
fn matching_paren(s: &str) -> Result<usize> {
    let mut depth = 0i64;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Ok(k);
                }
            }
            _ => {}
        }
    }
    Err(Error::Parse("unbalanced parentheses in term".into()))
}

/// Split an element string on " + " at parenthesis depth zero.
fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let bytes = s.as_bytes();
    let mut depth = 0i64;
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut k = 0usize;
    while k < bytes.len() {
        match bytes[k] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' if depth == 0
                && k >= 1
                && bytes[k - 1] == b' '
                && k + 1 < bytes.len()
                && bytes[k + 1] == b' ' =>
            {
                out.push(&s[start..k - 1]);
                start = k + 2;
            }
            _ => {}
        }
        k += 1;
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced parentheses in element".into()));
    }
    out.push(&s[start..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn canonical_rendering_examples() {
        let alg = Algebra::exact("A2", 6).unwrap();
        assert_eq!(alg.render_nf(&NFElement::zero()), "0");
        assert_eq!(alg.render_nf(&alg.nf_one()), "(1) 1 . w'[0,0] w[0,0] . 1");
        assert_eq!(
            alg.render_nf(&alg.gen_e(1)),
            "(1) 1 . w'[0,0] w[0,0] . e2"
        );
        let x = alg
            .multiply(&alg.gen_f(1), &alg.multiply(&alg.gen_f(0), &alg.gen_e(0)).unwrap())
            .unwrap();
        let s = alg.render_nf(&x);
        assert_eq!(s, "(1) f2 f1 . w'[0,0] w[0,0] . e1");
        let t = alg.gen_torus(&[0, 1], &[-1, 0]);
        assert_eq!(alg.render_nf(&t), "(1) 1 . w'[0,1] w[-1,0] . 1");
    }

    #[test]
    fn commutator_renders_canonically() {
        let alg = Algebra::exact("A2", 6).unwrap();
        let ef = alg.multiply(&alg.gen_e(0), &alg.gen_f(0)).unwrap();
        let fe = alg.multiply(&alg.gen_f(0), &alg.gen_e(0)).unwrap();
        let comm = alg.nf_sub(&ef, &fe);
        let s = alg.render_nf(&comm);
        // (w'_1 - w_1)/(q - q^-1); denominators are normalized to lowest
        // exponent zero, so 1/(q - q^-1) renders as (q)/(q^2 - 1).
        assert_eq!(
            s,
            "((-q)/(q^2 - 1)) 1 . w'[0,0] w[1,0] . 1 + ((q)/(q^2 - 1)) 1 . w'[1,0] w[0,0] . 1"
        );
        let back = alg.parse_nf(&s).unwrap();
        assert!(alg.nf_eq(&back, &comm));
    }

    #[test]
    fn parse_round_trips_random_elements() {
        let alg = Algebra::exact("B2", 6).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
        for _ in 0..12 {
            let mut x = NFElement::zero();
            for _ in 0..rng.gen_range(1..=3) {
                let m = NFMono {
                    f: (0..rng.gen_range(0..=2))
                        .map(|_| rng.gen_range(0..2) as u8)
                        .collect(),
                    eta: (0..2).map(|_| rng.gen_range(-2..=2)).collect(),
                    phi: (0..2).map(|_| rng.gen_range(-2..=2)).collect(),
                    e: (0..rng.gen_range(0..=2))
                        .map(|_| rng.gen_range(0..2) as u8)
                        .collect(),
                };
                let c = alg.backend.from_int(rng.gen_range(-4..=4));
                let raw = NFElement::single(m, c);
                let red = alg.multiply(&raw, &alg.nf_one()).unwrap();
                x = alg.nf_add(&x, &red);
            }
            let s = alg.render_nf(&x);
            let back = alg.parse_nf(&s).unwrap();
            assert!(alg.nf_eq(&back, &x), "round trip failed for {s}");
            assert_eq!(alg.render_nf(&back), s, "re-render must be bit-identical");
        }
    }

    #[test]
    fn parse_rejects_malformed_terms() {
        let alg = Algebra::exact("A2", 6).unwrap();
        assert!(alg.parse_nf("q + 1").is_err());
        assert!(alg.parse_nf("(1) f1 . w'[0,0] w[0,0]").is_err());
        assert!(alg.parse_nf("(1) f9 . w'[0,0] w[0,0] . 1").is_err());
        assert!(alg.parse_nf("(1) 1 . w'[0] w[0,0] . 1").is_err());
        assert!(alg.parse_nf("(1 1 . w'[0,0] w[0,0] . 1").is_err());
    }
}

//! ASCII operator grammar.
//!
//! ```text
//! sum    := [sign] term { sign term }
//! term   := [rational] { factor }          (at least one of the two)
//! factor := x<i>[^e] | d<i>[^e] | t[^e] | e<i>
//! ```
//!
//! Example: `3/2 x1^2 d1 e1 - d2 e1`. Each term denotes the normally
//! ordered monomial `x^a d^b t^l`, so `d1 x1` and `x1 d1` name the same term.
//! Component markers `e<i>` are required for vectors and rejected for scalars.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::flatness::{MonomialIdeal, WPoly};
use crate::weyl::{Monomial, OpVec, Operator, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum FactorKind {
    X,
    D,
    T,
    E,
    W,
}

#[derive(Debug, Clone)]
pub(crate) struct RawFactor {
    pub kind: FactorKind,
    pub index: usize,
    pub exp: u32,
    pub column: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct RawTerm {
    pub coef: Rational,
    pub factors: Vec<RawFactor>,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }
}

pub(crate) fn parse_raw(text: &str, allow: &[FactorKind]) -> Result<Vec<RawTerm>, ParseError> {
    let mut lx = Lexer::new(text);
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        lx.skip_ws();
        let mut sign = Rational::one();
        match lx.peek() {
            None if first => return Err(ParseError::syntax(lx.column(), "empty expression")),
            None => break,
            Some('+') => {
                lx.pos += 1;
            }
            Some('-') => {
                lx.pos += 1;
                sign = -sign;
            }
            Some(c) if !first => {
                return Err(ParseError::syntax(
                    lx.column(),
                    format!("expected '+' or '-', found '{c}'"),
                ))
            }
            _ => {}
        }
        first = false;
        lx.skip_ws();
        let term_col = lx.column();
        let mut coef: Option<Rational> = None;
        if let Some(num) = lx.digits() {
            let num: BigInt = num.parse().expect("digit string");
            let mut q = Rational::from_integer(num);
            if lx.peek() == Some('/') {
                lx.pos += 1;
                let den = lx
                    .digits()
                    .ok_or_else(|| ParseError::syntax(lx.column(), "expected denominator"))?;
                let den: BigInt = den.parse().expect("digit string");
                if den.is_zero() {
                    return Err(ParseError::syntax(lx.column(), "zero denominator"));
                }
                q = Rational::new(q.numer().clone(), den);
            }
            coef = Some(q);
        }
        let mut factors = Vec::new();
        loop {
            lx.skip_ws();
            let col = lx.column();
            let kind = match lx.peek() {
                Some('x') => FactorKind::X,
                Some('d') => FactorKind::D,
                Some('t') => FactorKind::T,
                Some('e') => FactorKind::E,
                Some('w') | Some('W') => FactorKind::W,
                Some('+') | Some('-') | None => break,
                Some(c) => {
                    return Err(ParseError::syntax(
                        col,
                        format!("unexpected character '{c}'"),
                    ))
                }
            };
            lx.pos += 1;
            if !allow.contains(&kind) {
                return Err(ParseError::syntax(
                    col,
                    format!("factor '{}' not allowed here", lx.chars[col - 1]),
                ));
            }
            let index = if kind == FactorKind::T {
                0
            } else {
                let s = lx
                    .digits()
                    .ok_or_else(|| ParseError::syntax(lx.column(), "expected variable index"))?;
                let i: usize = s
                    .parse()
                    .map_err(|_| ParseError::syntax(col, "index too large"))?;
                if i == 0 {
                    return Err(ParseError::syntax(col, "indices are 1-based"));
                }
                i
            };
            let mut exp = 1u32;
            if lx.peek() == Some('^') {
                if kind == FactorKind::E {
                    return Err(ParseError::syntax(
                        lx.column(),
                        "component markers take no exponent",
                    ));
                }
                lx.pos += 1;
                let s = lx
                    .digits()
                    .ok_or_else(|| ParseError::syntax(lx.column(), "expected exponent"))?;
                exp = s
                    .parse()
                    .map_err(|_| ParseError::syntax(col, "exponent too large"))?;
            }
            factors.push(RawFactor {
                kind,
                index,
                exp,
                column: col,
            });
        }
        if coef.is_none() && factors.is_empty() {
            return Err(ParseError::syntax(term_col, "expected a term"));
        }
        terms.push(RawTerm {
            coef: sign * coef.unwrap_or_else(Rational::one),
            factors,
        });
    }
    Ok(terms)
}

/// Converts raw factors to `(component, monomial, w-exponents)`.
pub(crate) fn build_term(
    term: &RawTerm,
    n: usize,
    r: Option<usize>,
    k_w: usize,
) -> Result<(Option<usize>, Monomial, Vec<u32>), ParseError> {
    let mut m = Monomial::one(n);
    let mut comp = None;
    let mut w = vec![0u32; k_w];
    for f in &term.factors {
        let range = |lim: usize, name: char| -> Result<usize, ParseError> {
            if f.index > lim {
                Err(ParseError::semantic(format!(
                    "{name}{} out of range (limit {lim})",
                    f.index
                )))
            } else {
                Ok(f.index - 1)
            }
        };
        match f.kind {
            FactorKind::X => m.x[range(n, 'x')?] += f.exp,
            FactorKind::D => m.d[range(n, 'd')?] += f.exp,
            FactorKind::T => m.t += f.exp,
            FactorKind::W => w[range(k_w, 'w')?] += f.exp,
            FactorKind::E => {
                let r = r.ok_or_else(|| {
                    ParseError::syntax(f.column, "component marker in a scalar expression")
                })?;
                if comp.is_some() {
                    return Err(ParseError::syntax(
                        f.column,
                        "more than one component marker",
                    ));
                }
                comp = Some(range(r, 'e')?);
            }
        }
    }
    if r.is_some() && comp.is_none() {
        return Err(ParseError::semantic(
            "every term of a vector needs a component marker e<i>",
        ));
    }
    Ok((comp, m, w))
}

/// Parses a scalar operator over `n` variable pairs.
pub fn parse_operator(text: &str, n: usize) -> Result<Operator, ParseError> {
    let raw = parse_raw(text, &[FactorKind::X, FactorKind::D, FactorKind::T])?;
    let mut op = Operator::zero(n);
    for t in &raw {
        let (_, m, _) = build_term(t, n, None, 0)?;
        op.add_term(m, t.coef.clone());
    }
    Ok(op)
}

/// Parses a vector in `D^r` / `D[t]^r`.
pub fn parse_vector(text: &str, n: usize, r: usize) -> Result<OpVec, ParseError> {
    let raw = parse_raw(
        text,
        &[FactorKind::X, FactorKind::D, FactorKind::T, FactorKind::E],
    )?;
    let mut v = OpVec::zero(n, r);
    for t in &raw {
        let (comp, m, _) = build_term(t, n, Some(r), 0)?;
        v.component_mut(comp.expect("checked by build_term"))
            .add_term(m, t.coef.clone());
    }
    Ok(v)
}

/// Parses either form: a vector if `r > 1` or if markers are present.
pub fn parse_element(text: &str, n: usize, r: usize) -> Result<OpVec, ParseError> {
    if r == 1 && !text.contains('e') {
        return parse_operator(text, n).map(|op| OpVec::embed(op, 1, 1));
    }
    parse_vector(text, n, r)
}

/// Parses an operator in `(x, d, W)` with central `W_1, ..., W_k`, e.g.
/// `W2 x1 d2 + 3 W2`.
pub fn parse_w_operator(text: &str, n: usize, k: usize) -> Result<WPoly, ParseError> {
    let raw = parse_raw(text, &[FactorKind::X, FactorKind::D, FactorKind::W])?;
    let mut out = WPoly::zero(n, k);
    for t in &raw {
        let (_, m, w) = build_term(t, n, None, k)?;
        out.add_term(w, m, t.coef.clone());
    }
    Ok(out)
}

/// Parses a monomial ideal of `C[W_1, ..., W_k]` from comma-separated
/// monomials: `W1^2 W2, W3`. `1` is the unit ideal and `0` the zero ideal.
pub fn parse_monomial_ideal(text: &str, k: usize) -> Result<MonomialIdeal, ParseError> {
    let mut gens = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let p = parse_w_operator(part, 0, k).map_err(|e| e.at_line(1, offset))?;
        offset += part.chars().count() + 1;
        let terms: Vec<_> = p.terms().collect();
        match terms.as_slice() {
            [] => {}
            [(w, _, c)] if c.is_one() => gens.push((*w).clone()),
            _ => {
                return Err(ParseError::semantic(format!(
                    "'{}' is not a monomial in W",
                    part.trim()
                )))
            }
        }
    }
    MonomialIdeal::new(k, gens).map_err(|e| ParseError::semantic(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_style_text() {
        let v = parse_vector("3/2 x1^2 d1 e1 - d2 e1", 2, 1).unwrap();
        assert_eq!(v.num_terms(), 2);
        let p = parse_operator("-x1 + 2 + d1 x1", 1).unwrap();
        assert_eq!(p, parse_operator("x1 d1 - x1 + 2", 1).unwrap());
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            parse_operator("x3 d1", 2),
            Err(ParseError::Semantic { .. })
        ));
        assert!(matches!(
            parse_operator("x1 e1", 2),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_vector("x1 + d1 e1", 2, 1),
            Err(ParseError::Semantic { .. })
        ));
        assert!(matches!(
            parse_operator("x1 ++ d1", 2),
            Err(ParseError::Syntax { column: 5, .. })
        ));
        assert!(parse_operator("1/0", 1).is_err());
        assert!(parse_operator("", 1).is_err());
        assert!(parse_operator("x0", 1).is_err());
    }

    #[test]
    fn zero_collapses() {
        assert!(parse_operator("x1 - x1", 1).unwrap().is_zero());
        assert_eq!(parse_operator("0", 1).unwrap().to_string(), "0");
    }

    #[test]
    fn monomial_ideals() {
        let h = parse_monomial_ideal("W1^2 W2, W3", 3).unwrap();
        assert_eq!(h.generators(), &[vec![0, 0, 1], vec![2, 1, 0]]);
        assert!(parse_monomial_ideal("1", 2).unwrap().is_unit());
        assert!(parse_monomial_ideal("0", 2)
            .unwrap()
            .generators()
            .is_empty());
        assert!(matches!(
            parse_monomial_ideal("W1, 2 W2", 2),
            Err(ParseError::Semantic { .. })
        ));
        assert!(matches!(
            parse_monomial_ideal("W1, W2 +", 2),
            Err(ParseError::Syntax { column: 9, .. })
        ));
        assert!(parse_monomial_ideal("W3", 2).is_err());
    }
}

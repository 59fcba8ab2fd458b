//! Operators acting on `Q[x, t]`: `x_i` multiplies, `d_i` acts as
//! `t * d/dx_i` in the homogenized algebra and as `d/dx_i` in `D`.
//!
//! The action is faithful. If `P != 0` and `b` is minimal among the
//! `d`-exponents of `P`, then `P(x^b) != 0`. Two operators whose
//! `d`-exponents lie in a box therefore agree iff they agree on every
//! `x^e` with `e` in that box.

use std::collections::BTreeMap;

use dfan_core::weyl::Rational;
use dfan_core::{Monomial, Operator};
use num_traits::Zero;

/// `sum c x^e t^l`, keyed by `(e, l)`.
pub type Poly = BTreeMap<(Vec<u32>, u32), Rational>;

fn add(p: &mut Poly, key: (Vec<u32>, u32), c: Rational) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(key.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&key);
    }
}

/// Applies one normally ordered term `c x^a d^b t^l`.
fn apply_term(m: &Monomial, c: &Rational, f: &Poly, homogenized: bool) -> Poly {
    let mut out = Poly::new();
    for ((e, l), v) in f {
        let mut coef = c * v;
        let mut e2 = e.clone();
        let mut zero = false;
        for (i, &b) in m.d.iter().enumerate() {
            if b > e2[i] {
                zero = true;
                break;
            }
            for j in 0..b {
                coef *= Rational::from_integer((e2[i] - j).into());
            }
            e2[i] -= b;
        }
        if zero {
            continue;
        }
        for (i, &a) in m.x.iter().enumerate() {
            e2[i] += a;
        }
        let dt: u32 = if homogenized { m.d.iter().sum() } else { 0 };
        add(&mut out, (e2, l + m.t + dt), coef);
    }
    out
}

pub fn apply(p: &Operator, f: &Poly, homogenized: bool) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p.terms() {
        for (k, v) in apply_term(m, c, f, homogenized) {
            add(&mut out, k, v);
        }
    }
    out
}

pub fn monomial(e: Vec<u32>) -> Poly {
    let mut p = Poly::new();
    p.insert((e, 0), Rational::from_integer(1.into()));
    p
}

fn max_d(p: &Operator, n: usize) -> Vec<u32> {
    let mut out = vec![0; n];
    for (m, _) in p.terms() {
        for i in 0..n {
            out[i] = out[i].max(m.d[i]);
        }
    }
    out
}

/// All exponents `e <= corner` componentwise.
pub fn box_points(corner: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &c in corner {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=c).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Whether `claimed = P Q` as operators. Both sides act identically on
/// every `x^e` in the box that bounds the `d`-exponents of `P Q` and of
/// `claimed`, which by faithfulness is equivalent to equality.
pub fn product_agrees(p: &Operator, q: &Operator, claimed: &Operator, homogenized: bool) -> bool {
    let n = p.n();
    let (dp, dq, dc) = (max_d(p, n), max_d(q, n), max_d(claimed, n));
    let corner: Vec<u32> = (0..n).map(|i| (dp[i] + dq[i]).max(dc[i])).collect();
    box_points(&corner).into_iter().all(|e| {
        let f = monomial(e);
        apply(p, &apply(q, &f, homogenized), homogenized) == apply(claimed, &f, homogenized)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dfan_core::grammar::parse_operator;

    #[test]
    fn leibniz_on_polynomials() {
        let d = parse_operator("d1", 1).unwrap();
        let x = parse_operator("x1", 1).unwrap();
        assert!(product_agrees(
            &d,
            &x,
            &parse_operator("x1 d1 + 1", 1).unwrap(),
            false
        ));
        assert!(!product_agrees(
            &d,
            &x,
            &parse_operator("x1 d1", 1).unwrap(),
            false
        ));
        assert!(product_agrees(
            &d,
            &x,
            &parse_operator("x1 d1 + t", 1).unwrap(),
            true
        ));
    }
}

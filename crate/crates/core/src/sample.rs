//! Random elements for property tests and benchmarks.

use rand::Rng;

use crate::weyl::{Monomial, OpVec, Operator, Rational};

/// A monomial of total degree at most `max_deg` in `x`, `d` (and `t`).
pub fn monomial<R: Rng>(rng: &mut R, n: usize, max_deg: u32, with_t: bool) -> Monomial {
    let mut m = Monomial::one(n);
    let deg = rng.gen_range(0..=max_deg);
    let slots = if with_t { 2 * n + 1 } else { 2 * n };
    for _ in 0..deg {
        let v = rng.gen_range(0..slots);
        if v < n {
            m.x[v] += 1;
        } else if v < 2 * n {
            m.d[v - n] += 1;
        } else {
            m.t += 1;
        }
    }
    m
}

/// A small nonzero rational.
pub fn coefficient<R: Rng>(rng: &mut R) -> Rational {
    let mut num: i64 = rng.gen_range(-5..=5);
    if num == 0 {
        num = 1;
    }
    let den: i64 = if rng.gen_bool(0.25) {
        rng.gen_range(2..=3)
    } else {
        1
    };
    Rational::new(num.into(), den.into())
}

/// An operator with up to `terms` terms; never zero.
pub fn operator<R: Rng>(
    rng: &mut R,
    n: usize,
    max_deg: u32,
    terms: usize,
    with_t: bool,
) -> Operator {
    loop {
        let count = rng.gen_range(1..=terms.max(1));
        let op = Operator::from_terms(
            n,
            (0..count).map(|_| (monomial(rng, n, max_deg, with_t), coefficient(rng))),
        );
        if !op.is_zero() {
            return op;
        }
    }
}

/// A vector in `D^r` (or `D[t]^r`) with some zero components; never zero.
pub fn vector<R: Rng>(
    rng: &mut R,
    n: usize,
    r: usize,
    max_deg: u32,
    terms: usize,
    with_t: bool,
) -> OpVec {
    loop {
        let comps = (0..r)
            .map(|_| {
                if rng.gen_bool(0.7) {
                    operator(rng, n, max_deg, terms, with_t)
                } else {
                    Operator::zero(n)
                }
            })
            .collect();
        let v = OpVec::new(comps).expect("components share n");
        if !v.is_zero() {
            return v;
        }
    }
}

/// An F-homogeneous vector of F-degree `d`: each term is completed with
/// the power of `t` that brings `|b| + l` up to `d`.
pub fn f_homogeneous<R: Rng>(
    rng: &mut R,
    n: usize,
    r: usize,
    d: u32,
    max_deg: u32,
    terms: usize,
) -> OpVec {
    let v = vector(rng, n, r, max_deg, terms, false);
    let comps = v
        .components()
        .iter()
        .map(|c| {
            Operator::from_terms(
                n,
                c.terms().filter(|(m, _)| m.d_degree() <= d).map(|(m, q)| {
                    let mut m = m.clone();
                    m.t = d - m.d_degree();
                    (m, q.clone())
                }),
            )
        })
        .collect();
    let out = OpVec::new(comps).expect("components share n");
    if out.is_zero() {
        let mut m = Monomial::one(n);
        m.t = d;
        OpVec::embed(
            Operator::monomial(n, m, Rational::from_integer(1.into())),
            r,
            1,
        )
    } else {
        out
    }
}

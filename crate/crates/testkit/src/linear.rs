//! Span membership over `Q` by plain Gaussian elimination, and a sound
//! one-sided membership test for `N = D g_1 + ... + D g_p`: if `v` is a
//! combination of products `m g_j` then `v` lies in `N`.

use std::collections::BTreeMap;

use dfan_core::weyl::Rational;
use dfan_core::{Monomial, OpVec, Operator};
use num_traits::{One, Zero};

type Key = (usize, Monomial);

fn sparse(v: &OpVec) -> BTreeMap<Key, Rational> {
    v.terms()
        .map(|(c, m, x)| ((c, m.clone()), x.clone()))
        .collect()
}

/// Incremental echelon basis keyed by pivot term.
#[derive(Debug, Default, Clone)]
pub struct Span {
    rows: Vec<(Key, BTreeMap<Key, Rational>)>,
}

impl Span {
    fn reduce(&self, mut v: BTreeMap<Key, Rational>) -> BTreeMap<Key, Rational> {
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, x) in row {
                    let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &OpVec) -> bool {
        let r = self.reduce(sparse(v));
        let Some((pivot, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Rational::one() / c;
        let row: BTreeMap<Key, Rational> = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        for (_, other) in self.rows.iter_mut() {
            if let Some(c) = other.get(&pivot).cloned() {
                for (k, x) in &row {
                    let e = other.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        other.remove(k);
                    }
                }
            }
        }
        self.rows.push((pivot, row));
        true
    }

    pub fn contains(&self, v: &OpVec) -> bool {
        self.reduce(sparse(v)).is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }
}

fn degree(v: &OpVec) -> u32 {
    v.terms()
        .map(|(_, m, _)| m.x_degree() + m.d_degree())
        .max()
        .unwrap_or(0)
}

/// Monomials `x^a d^b` with `|a| + |b| <= deg`.
pub fn multipliers(n: usize, deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    let mut frontier = out.clone();
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..2 * n {
                let mut m2 = m.clone();
                if v < n {
                    m2.x[v] += 1;
                } else {
                    m2.d[v - n] += 1;
                }
                next.push(m2);
            }
        }
        next.sort();
        next.dedup();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out.dedup();
    out
}

/// Span of `m g_j` with `deg m + deg g_j <= bound`.
pub fn products_span(generators: &[OpVec], bound: u32) -> Span {
    let mut span = Span::default();
    for g in generators {
        let dg = degree(g);
        if dg > bound {
            continue;
        }
        for m in multipliers(g.n(), bound - dg) {
            let p = g
                .left_mul(&Operator::monomial(g.n(), m, Rational::one()))
                .expect("same n");
            span.insert(&p);
        }
    }
    span
}

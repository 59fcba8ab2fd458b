//! The identities of a kernel normalization, rechecked with plain maps.

use std::collections::BTreeMap;

use dfan_core::flatness::{KernelNormalization, WPoly};
use dfan_core::weyl::Rational;
use dfan_core::Monomial;
use num_traits::Zero;

type Flat = BTreeMap<(Vec<u32>, Monomial), Rational>;

fn flat(p: &WPoly, shift: &[u32]) -> Flat {
    let mut out = Flat::new();
    for (w, m, c) in p.terms() {
        let w2: Vec<u32> = w.iter().zip(shift).map(|(a, b)| a + b).collect();
        out.insert((w2, m.clone()), c.clone());
    }
    out
}

fn accumulate(acc: &mut Flat, other: Flat) {
    for (k, c) in other {
        let e = acc.entry(k.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            acc.remove(&k);
        }
    }
}

fn offsets(ai: &[u32], ap: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let v = ai
        .iter()
        .zip(ap)
        .map(|(x, y)| y.saturating_sub(*x))
        .collect();
    let w = ai
        .iter()
        .zip(ap)
        .map(|(x, y)| x.saturating_sub(*y))
        .collect();
    (v, w)
}

/// `sum_i W^(a_i) Q_i`.
pub fn relation(exponents: &[Vec<u32>], ops: &[WPoly]) -> Flat {
    let mut acc = Flat::new();
    for (a, q) in exponents.iter().zip(ops) {
        accumulate(&mut acc, flat(q, a));
    }
    acc
}

/// `Q_i = sum_{p <= i} W^(v_ip) R_ip` and, for every `p`,
/// `sum_{i >= p} W^(w_ip) R_ip = 0`; also that every term of `R_ip` sits in
/// the piece `p` of the partition.
pub fn check(norm: &KernelNormalization) -> Result<(), String> {
    let a = &norm.exponents;
    for (i, q) in norm.operators.iter().enumerate() {
        let mut acc = Flat::new();
        for p in 0..=i {
            let (v, _) = offsets(&a[i], &a[p]);
            accumulate(&mut acc, flat(&norm.r[i][p], &v));
        }
        if acc != flat(q, &vec![0; a[i].len()]) {
            return Err(format!("Q_{} not rebuilt", i + 1));
        }
    }
    for p in 0..a.len() {
        let mut acc = Flat::new();
        for i in p..a.len() {
            let (_, w) = offsets(&a[i], &a[p]);
            accumulate(&mut acc, flat(&norm.r[i][p], &w));
        }
        if !acc.is_empty() {
            return Err(format!("identity {} fails", p + 1));
        }
    }
    for i in 0..a.len() {
        for p in 0..=i {
            let (v, _) = offsets(&a[i], &a[p]);
            for (l, _, _) in norm.r[i][p].terms() {
                let point: Vec<u32> = l
                    .iter()
                    .zip(&v)
                    .zip(&a[i])
                    .map(|((x, y), z)| x + y + z)
                    .collect();
                let first = a
                    .iter()
                    .position(|e| e.iter().zip(&point).all(|(x, y)| x <= y));
                if first != Some(p) {
                    return Err(format!(
                        "R_{}{} has a term outside piece {}",
                        i + 1,
                        p + 1,
                        p + 1
                    ));
                }
            }
        }
    }
    Ok(())
}

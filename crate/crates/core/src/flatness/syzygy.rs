//! Normalization of relations `sum W^(a_i) Q_i = 0` over `C[W]`, which shows
//! that `H ⊗ R^Gamma(D) -> R^Gamma(D)` is injective for monomial `H`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::flatness::monomial::offsets;
use crate::rees::{w_coordinates, ReesElement};
use crate::weyl::{format_monomial_factors, format_rational, Monomial, Operator, Rational};

/// An operator in the coordinates `(X, Delta, W)` of `R^Gamma(D)`, with `W`
/// central.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WPoly {
    n: usize,
    k: usize,
    terms: BTreeMap<(Vec<u32>, Monomial), Rational>,
}

impl WPoly {
    pub fn zero(n: usize, k: usize) -> Self {
        WPoly {
            n,
            k,
            terms: BTreeMap::new(),
        }
    }

    /// `W^w P`.
    pub fn monomial(w: Vec<u32>, p: &Operator) -> Result<Self> {
        if !p.is_t_free() {
            return Err(AlgebraError::Precondition("W-operators have no t".into()));
        }
        let mut out = WPoly::zero(p.n(), w.len());
        for (m, c) in p.terms() {
            out.add_term(w.clone(), m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Coordinates of a rank-one element `P u^s` over a basic cone.
    pub fn from_rees(e: &ReesElement) -> Result<Self> {
        if e.op().rank() != 1 {
            return Err(AlgebraError::Precondition("expected a ring element".into()));
        }
        let mut out = WPoly::zero(e.op().n(), e.k());
        for t in w_coordinates(e)? {
            out.add_term(t.w, t.mono, t.coef);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, w: Vec<u32>, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((w, m)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Monomial, &Rational)> {
        self.terms.iter().map(|((w, m), c)| (w, m, c))
    }

    /// `W^v` times this element.
    pub fn shift(&self, v: &[u32]) -> WPoly {
        let mut out = WPoly::zero(self.n, self.k);
        for (w, m, c) in self.terms() {
            let w2 = w.iter().zip(v).map(|(a, b)| a + b).collect();
            out.add_term(w2, m.clone(), c.clone());
        }
        out
    }

    pub fn add(&self, other: &WPoly) -> WPoly {
        let mut out = self.clone();
        for (w, m, c) in other.terms() {
            out.add_term(w.clone(), m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> WPoly {
        let mut out = WPoly::zero(self.n, self.k);
        for (w, m, d) in self.terms() {
            out.add_term(w.clone(), m.clone(), c * d);
        }
        out
    }
}

impl WPoly {
    /// Flat text accepted by `parse_w_operator`, e.g. `3 W2 + W2 x1 d2`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (w, m, c) in self.terms() {
            let mut factors: Vec<String> = w
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("W{}", i + 1)
                    } else {
                        format!("W{}^{e}", i + 1)
                    }
                })
                .collect();
            factors.extend(format_monomial_factors(m, None));
            let neg = c.is_negative();
            let abs = c.abs();
            out.push_str(match (out.is_empty(), neg) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            });
            if factors.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&factors.join(" "));
            } else {
                out.push_str(&format!("{} {}", format_rational(&abs), factors.join(" ")));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut groups: BTreeMap<&Vec<u32>, Operator> = BTreeMap::new();
        for (w, m, c) in self.terms() {
            groups
                .entry(w)
                .or_insert_with(|| Operator::zero(self.n))
                .add_term(m.clone(), c.clone());
        }
        for (i, (w, p)) in groups.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} ({p})", super::monomial::format_w_monomial(w))?;
        }
        Ok(())
    }
}

/// `R_{i,p}` for `p <= i` with `Q_i = sum_p W^(v_{i,p}) R_{i,p}` and, for
/// each `p`, `sum_{i >= p} W^(w_{i,p}) R_{i,p} = 0`. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelNormalization {
    pub exponents: Vec<Vec<u32>>,
    pub operators: Vec<WPoly>,
    pub r: Vec<Vec<WPoly>>,
}

fn relation(exponents: &[Vec<u32>], ops: &[WPoly], n: usize, k: usize) -> WPoly {
    exponents
        .iter()
        .zip(ops)
        .fold(WPoly::zero(n, k), |acc, (a, q)| acc.add(&q.shift(a)))
}

/// Index `p` of the piece `Delta_p` containing a lattice point: the least
/// `p` with `point in a_p + N^k`.
pub fn partition_index(exponents: &[Vec<u32>], point: &[u32]) -> Option<usize> {
    exponents
        .iter()
        .position(|a| a.iter().zip(point).all(|(x, y)| x <= y))
}

/// Splits each `Q_i` along the partition `Delta_1, ..., Delta_r` of
/// `union (a_i + N^k)` and divides out `W^(v_{i,p})`.
pub fn kernel_normalize(exponents: &[Vec<u32>], ops: &[WPoly]) -> Result<KernelNormalization> {
    let first = ops.first().ok_or(AlgebraError::ZeroInput)?;
    let (n, k) = (first.n, first.k);
    if exponents.len() != ops.len()
        || exponents.iter().any(|a| a.len() != k)
        || ops.iter().any(|q| q.n != n || q.k != k)
    {
        return Err(AlgebraError::DescriptorMismatch(
            "exponents and operators do not match".into(),
        ));
    }
    if !relation(exponents, ops, n, k).is_zero() {
        return Err(AlgebraError::RelationFails);
    }
    let mut r: Vec<Vec<WPoly>> = (0..ops.len())
        .map(|i| vec![WPoly::zero(n, k); i + 1])
        .collect();
    for (i, (a_i, q)) in exponents.iter().zip(ops).enumerate() {
        for (l, m, c) in q.terms() {
            let point: Vec<u32> = l.iter().zip(a_i).map(|(x, y)| x + y).collect();
            let p = partition_index(exponents, &point).expect("a_i + l lies in a_i + N^k");
            let (v, _) = offsets(a_i, &exponents[p]);
            let rest = l.iter().zip(&v).map(|(x, y)| x - y).collect();
            r[i][p].add_term(rest, m.clone(), c.clone());
        }
    }
    let out = KernelNormalization {
        exponents: exponents.to_vec(),
        operators: ops.to_vec(),
        r,
    };
    out.verify()?;
    Ok(out)
}

impl KernelNormalization {
    /// Checks the reconstruction of every `Q_i` and every identity
    /// `sum_{i >= p} W^(w_{i,p}) R_{i,p} = 0`.
    pub fn verify(&self) -> Result<()> {
        let a = &self.exponents;
        let (n, k) = (self.operators[0].n, self.operators[0].k);
        for (i, q) in self.operators.iter().enumerate() {
            let rebuilt = (0..=i).fold(WPoly::zero(n, k), |acc, p| {
                let (v, _) = offsets(&a[i], &a[p]);
                acc.add(&self.r[i][p].shift(&v))
            });
            if &rebuilt != q {
                return Err(AlgebraError::Verification(format!(
                    "Q_{} is not rebuilt from its pieces",
                    i + 1
                )));
            }
        }
        for p in 0..a.len() {
            let sum = (p..a.len()).fold(WPoly::zero(n, k), |acc, i| {
                let (_, w) = offsets(&a[i], &a[p]);
                acc.add(&self.r[i][p].shift(&w))
            });
            if !sum.is_zero() {
                return Err(AlgebraError::Verification(format!(
                    "identity for p = {} fails",
                    p + 1
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_operator;

    fn wp(w: Vec<u32>, s: &str) -> WPoly {
        WPoly::monomial(w, &parse_operator(s, 2).unwrap()).unwrap()
    }

    #[test]
    fn single_relation_forces_zero() {
        let q = wp(vec![0, 0], "x1 d1");
        assert_eq!(
            kernel_normalize(&[vec![1, 0]], &[q]),
            Err(AlgebraError::RelationFails)
        );
        let z = kernel_normalize(&[vec![1, 0]], &[WPoly::zero(2, 2)]).unwrap();
        assert!(z.r[0][0].is_zero());
    }

    #[test]
    fn koszul_relation() {
        let p = "x1 d2 + 3";
        let q1 = wp(vec![0, 1], p);
        let q2 = wp(vec![1, 0], p).scale(&Rational::from_integer((-1).into()));
        let out = kernel_normalize(&[vec![1, 0], vec![0, 1]], &[q1.clone(), q2]).unwrap();
        // W1 W2 P lies in Delta_1 for both summands
        assert_eq!(out.r[0][0], wp(vec![0, 1], p).shift(&[0, 0]));
        assert!(out.r[1][1].is_zero());
        assert_eq!(
            out.r[1][0],
            wp(vec![0, 0], p).scale(&Rational::from_integer((-1).into()))
        );
        out.verify().unwrap();
        assert_eq!(q1.to_string(), "W2 (x1 d2 + 3)");
        let back = crate::grammar::parse_w_operator(&q1.to_text(), 2, 2).unwrap();
        assert_eq!(back, q1);
    }
}

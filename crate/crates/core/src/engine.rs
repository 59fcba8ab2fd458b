//! Buchberger machinery for left submodules of `D[t, s]^r` (and of `D^r`)
//! under a `TermOrder`. Elements are kept as maps from order keys to terms,
//! so the leading term is the last entry.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::weights::TermOrder;
use crate::weyl::{monomial_product, Monomial, OpVec, Operator, Product, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Term {
    pub comp: usize,
    pub mono: Monomial,
    pub coef: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct Poly {
    pub terms: BTreeMap<Vec<i64>, Term>,
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.values().next_back()
    }

    pub fn lead_key(&self) -> Option<&Vec<i64>> {
        self.terms.keys().next_back()
    }

    /// Largest numerator plus denominator bit length among the coefficients.
    pub fn coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|t| t.coef.numer().bits() + t.coef.denom().bits())
            .max()
            .unwrap_or(0)
    }

    /// Largest `|a| + |b| + 2l + s` among the terms.
    pub fn degree(&self) -> u32 {
        self.terms
            .values()
            .map(|t| t.mono.bi_degree() + t.mono.s_exponent())
            .max()
            .unwrap_or(0)
    }
}

/// Bounds on a completion; exceeding one is reported, never truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_basis: usize,
    pub max_pairs: usize,
    /// Largest excess of a new basis element's degree `|a| + |b| + 2l + s`
    /// over the largest input degree. Completions for weights with negative
    /// `x`-weight can climb in degree for a long time before closing.
    pub max_degree_growth: u32,
    /// Largest numerator plus denominator bit length of a coefficient in a
    /// new basis element; rational coefficients can swell exponentially.
    pub max_coefficient_bits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis: 500,
            max_pairs: 50_000,
            max_degree_growth: 8,
            max_coefficient_bits: 1024,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Ring {
    pub n: usize,
    pub r: usize,
    pub order: TermOrder,
    pub product: Product,
}

impl Ring {
    pub fn key(&self, comp: usize, m: &Monomial) -> Vec<i64> {
        self.order.key(comp, m)
    }

    pub fn add_term(&self, p: &mut Poly, comp: usize, mono: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match p.terms.entry(self.key(comp, &mono)) {
            Entry::Vacant(v) => {
                v.insert(Term { comp, mono, coef });
            }
            Entry::Occupied(mut o) => {
                o.get_mut().coef += coef;
                if o.get().coef.is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn poly_of(&self, v: &OpVec) -> Poly {
        let mut p = Poly::default();
        for (i, m, c) in v.terms() {
            self.add_term(&mut p, i, m.clone(), c.clone());
        }
        p
    }

    pub fn to_vec(&self, p: &Poly) -> OpVec {
        let mut v = OpVec::zero(self.n, self.r);
        for t in p.terms.values() {
            v.component_mut(t.comp)
                .add_term(t.mono.clone(), t.coef.clone());
        }
        v
    }

    /// `p += c * q * h` for a monomial `q` acting on the left.
    pub fn add_multiple(&self, p: &mut Poly, c: &Rational, q: &Monomial, h: &Poly) {
        for t in h.terms.values() {
            let ct = c * &t.coef;
            for (k, m) in monomial_product(q, &t.mono, self.product) {
                self.add_term(p, t.comp, m, &ct * Rational::from_integer(k));
            }
        }
    }

    pub fn make_monic(&self, p: &mut Poly) {
        if let Some(lc) = p.lead().map(|t| t.coef.clone()) {
            if !lc.is_one() {
                let inv = lc.recip();
                for t in p.terms.values_mut() {
                    t.coef *= &inv;
                }
            }
        }
    }

    /// Full reduction of `f` by `basis`. Returns the remainder; when
    /// `quotients` is given, `c q` is accumulated into `quotients[m]` for
    /// every step `f -= c q basis[m]`.
    pub fn reduce(
        &self,
        f: &Poly,
        basis: &[Poly],
        mut quotients: Option<&mut Vec<Operator>>,
    ) -> Poly {
        let mut p = f.clone();
        let mut rem = Poly::default();
        while let Some(lead) = p.lead().cloned() {
            // the shortest eligible reducer keeps intermediate results small
            let found = basis
                .iter()
                .enumerate()
                .filter(|(_, h)| {
                    h.lead()
                        .is_some_and(|hl| hl.comp == lead.comp && hl.mono.divides(&lead.mono))
                })
                .min_by_key(|(i, h)| (h.terms.len(), *i));
            match found {
                None => {
                    let (key, t) = p.terms.pop_last().expect("nonzero");
                    rem.terms.insert(key, t);
                }
                Some((idx, h)) => {
                    let hl = h.lead().expect("nonzero basis element");
                    let q = hl.mono.quotient(&lead.mono);
                    let c = &lead.coef / &hl.coef;
                    // the leading product is q * lead(h) with coefficient 1, so
                    // the leading term of p cancels exactly
                    self.add_multiple(&mut p, &-c.clone(), &q, h);
                    if let Some(qs) = quotients.as_deref_mut() {
                        qs[idx].add_term(q, c);
                    }
                }
            }
        }
        rem
    }

    pub fn s_poly(&self, f: &Poly, g: &Poly) -> Option<Poly> {
        let (lf, lg) = (f.lead()?, g.lead()?);
        if lf.comp != lg.comp {
            return None;
        }
        let l = lf.mono.lcm(&lg.mono);
        let mut s = Poly::default();
        self.add_multiple(&mut s, &lg.coef, &lf.mono.quotient(&l), f);
        self.add_multiple(&mut s, &-lf.coef.clone(), &lg.mono.quotient(&l), g);
        Some(s)
    }

    /// Buchberger completion with the normal selection strategy and the
    /// chain criterion, both on insertion and on selection. Zero inputs are
    /// dropped.
    pub fn groebner(&self, gens: &[Poly], limits: Limits) -> Result<Vec<Poly>> {
        let mut basis: Vec<Poly> = Vec::new();
        // pending pairs keyed by (lcm key, i, j)
        let mut pending: BTreeSet<(Vec<i64>, usize, usize)> = BTreeSet::new();
        let mut open: HashSet<(usize, usize)> = HashSet::new();
        let mut processed = 0usize;
        let top = gens.iter().map(Poly::degree).max().unwrap_or(0) + limits.max_degree_growth;

        let insert = |basis: &mut Vec<Poly>,
                      pending: &mut BTreeSet<(Vec<i64>, usize, usize)>,
                      open: &mut HashSet<(usize, usize)>,
                      mut p: Poly|
         -> Result<()> {
            if p.degree() > top {
                return Err(AlgebraError::ResourceBound(format!(
                    "standard basis needs degree above {top} (input degree + {})",
                    limits.max_degree_growth
                )));
            }
            self.make_monic(&mut p);
            if p.coefficient_bits() > limits.max_coefficient_bits {
                return Err(AlgebraError::ResourceBound(format!(
                    "standard basis coefficients exceed {} bits",
                    limits.max_coefficient_bits
                )));
            }
            let j = basis.len();
            let lp = p.lead().expect("nonzero").clone();
            // Gebauer-Moeller: a pending (i, k) whose lcm the new lead
            // divides, with lcm distinct from both new lcms, has a chain
            // through j. Only the chain criterion is used, which holds in
            // the Weyl algebra; the product criterion does not.
            pending.retain(|(_, i, k)| {
                let (li, lk) = (
                    basis[*i].lead().expect("nonzero"),
                    basis[*k].lead().expect("nonzero"),
                );
                if li.comp != lp.comp {
                    return true;
                }
                let lik = li.mono.lcm(&lk.mono);
                let keep = !lp.mono.divides(&lik)
                    || li.mono.lcm(&lp.mono) == lik
                    || lk.mono.lcm(&lp.mono) == lik;
                if !keep {
                    open.remove(&(*i, *k));
                }
                keep
            });
            for (i, b) in basis.iter().enumerate() {
                let lb = b.lead().expect("nonzero");
                if lb.comp == lp.comp {
                    let l = lb.mono.lcm(&lp.mono);
                    pending.insert((self.key(lp.comp, &l), i, j));
                    open.insert((i, j));
                }
            }
            basis.push(p);
            if basis.len() > limits.max_basis {
                return Err(AlgebraError::ResourceBound(format!(
                    "standard basis exceeds {} elements",
                    limits.max_basis
                )));
            }
            Ok(())
        };

        for g in gens {
            let r = self.reduce(g, &basis, None);
            if !r.is_zero() {
                insert(&mut basis, &mut pending, &mut open, r)?;
            }
        }
        while let Some((_, i, j)) = pending.pop_first() {
            open.remove(&(i, j));
            processed += 1;
            if processed > limits.max_pairs {
                return Err(AlgebraError::ResourceBound(format!(
                    "more than {} critical pairs",
                    limits.max_pairs
                )));
            }
            let li = basis[i].lead().expect("nonzero");
            let lj = basis[j].lead().expect("nonzero");
            let l = li.mono.lcm(&lj.mono);
            // Buchberger's chain criterion
            let chain = (0..basis.len()).any(|k| {
                let lk = basis[k].lead().expect("nonzero");
                k != i
                    && k != j
                    && lk.comp == li.comp
                    && lk.mono.divides(&l)
                    && !open.contains(&(i.min(k), i.max(k)))
                    && !open.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let s = self.s_poly(&basis[i], &basis[j]).expect("same component");
            let r = self.reduce(&s, &basis, None);
            if !r.is_zero() {
                insert(&mut basis, &mut pending, &mut open, r)?;
            }
        }
        Ok(basis)
    }

    /// Minimal, fully reduced, monic basis, sorted by leading key.
    pub fn interreduce(&self, basis: Vec<Poly>) -> Vec<Poly> {
        let mut kept: Vec<Poly> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.lead().expect("nonzero");
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                let lh = h.lead().expect("nonzero");
                j != i
                    && lh.comp == lg.comp
                    && lh.mono.divides(&lg.mono)
                    && (lh.mono != lg.mono || j < i)
            });
            if !redundant {
                kept.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(kept.len());
        for i in 0..kept.len() {
            let others: Vec<Poly> = kept
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let mut r = self.reduce(&kept[i], &others, None);
            self.make_monic(&mut r);
            out.push(r);
        }
        out.sort_by(|a, b| a.lead_key().cmp(&b.lead_key()));
        out
    }
}

/// `|a| + |b| + 2l` of the largest term.
pub(crate) fn max_bi_degree(v: &OpVec) -> Option<u32> {
    v.terms().map(|(_, m, _)| m.bi_degree()).max()
}

/// Homogenizes an F-homogeneous element of `D[t]^r` with respect to the
/// grading `|a| + |b| + 2l` by the central variable `s`, to degree `e`.
pub(crate) fn s_homogenize(v: &OpVec, e: u32) -> OpVec {
    v.map_components(|c| {
        c.map_monomials(|m| {
            let s = e - m.bi_degree();
            m.clone().with_s(s)
        })
    })
}

//! Reduced L-standard bases of `h(N)` for a submodule `N` of `D^r`, division
//! in `D[t]^r`, and membership in `h(N)` and `N`.
//!
//! Orders led by an `L~`-weight are not well orders on `D[t]` with
//! polynomial coefficients (`1 > x1 > x1^2 > ...` for `L = (1)`), so the
//! computation runs in `D[t, s]` with a central variable `s` that makes
//! every element homogeneous for `|a| + |b| + 2l + deg_s`. Each graded piece
//! is then finite and Buchberger terminates:
//!
//! 1. a basis of `N` for an order led by `|b|`, whose homogenizations
//!    generate `h(N)`;
//! 2. a basis of `h(N)` for an order led by `|a| + |b| + 2l`, whose
//!    `s`-homogenizations generate the `s`-homogenization `J` of `h(N)`;
//! 3. the reduced basis of `J` for the order led by the `L~`-weight.
//!
//! Setting `s = 1` recovers elements of `h(N)`. The exponent of `s` in a
//! leading term is its ecart.

use std::fmt;

use crate::engine::{max_bi_degree, s_homogenize, Limits, Poly, Ring};
use crate::error::{AlgebraError, Result};
use crate::filtration::ShiftMatrix;
use crate::weights::{ord_l_vec, principal_symbol, Grading, LinearForm, TermOrder};
use crate::weyl::{Monomial, OpVec, Operator, Product, Rational};

/// `N` with the data of the first two steps, which do not depend on `L`.
#[derive(Debug, Clone)]
pub struct HomogenizedModule {
    n: usize,
    r: usize,
    shifts: ShiftMatrix,
    generators: Vec<OpVec>,
    hn: Vec<OpVec>,
    j_gens: Vec<OpVec>,
    limits: Limits,
}

impl HomogenizedModule {
    pub fn new(generators: Vec<OpVec>, shifts: ShiftMatrix) -> Result<Self> {
        Self::with_limits(generators, shifts, Limits::default())
    }

    pub fn with_limits(
        generators: Vec<OpVec>,
        shifts: ShiftMatrix,
        limits: Limits,
    ) -> Result<Self> {
        let first = generators.first().ok_or(AlgebraError::ZeroInput)?;
        let (n, r) = (first.n(), first.rank());
        for g in &generators {
            if g.n() != n || g.rank() != r {
                return Err(AlgebraError::DescriptorMismatch(
                    "generators live in different free modules".into(),
                ));
            }
            if !g.is_t_free() {
                return Err(AlgebraError::Precondition(
                    "generators must be elements of D^r (no t)".into(),
                ));
            }
        }
        if shifts.rank() != r || shifts.k() > n {
            return Err(AlgebraError::DescriptorMismatch(format!(
                "{}x{} shift matrix for rank {r} over n = {n}",
                shifts.k(),
                shifts.rank()
            )));
        }
        let gens: Vec<OpVec> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(AlgebraError::ZeroInput);
        }

        let ring0 = Ring {
            n,
            r,
            order: TermOrder::graded(Grading::Usual),
            product: Product::Weyl,
        };
        let polys: Vec<Poly> = gens.iter().map(|g| ring0.poly_of(g)).collect();
        let gb0 = ring0.interreduce(ring0.groebner(&polys, limits)?);
        let hn: Vec<OpVec> = gb0
            .iter()
            .map(|p| ring0.to_vec(p).homogenize())
            .collect::<Result<_>>()?;

        let ring1 = Ring {
            n,
            r,
            order: TermOrder::graded(Grading::Bihomogeneous),
            product: Product::Homogenized,
        };
        let polys: Vec<Poly> = hn.iter().map(|g| ring1.poly_of(g)).collect();
        let gb1 = ring1.interreduce(ring1.groebner(&polys, limits)?);
        let j_gens = gb1
            .iter()
            .map(|p| {
                let v = ring1.to_vec(p);
                let e = max_bi_degree(&v).expect("nonzero");
                s_homogenize(&v, e)
            })
            .collect();
        Ok(HomogenizedModule {
            n,
            r,
            shifts,
            generators: gens,
            hn,
            j_gens,
            limits,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn shifts(&self) -> &ShiftMatrix {
        &self.shifts
    }

    pub fn generators(&self) -> &[OpVec] {
        &self.generators
    }

    /// Generators of `h(N)` (homogenizations of a basis of `N` for an order
    /// led by the usual order).
    pub fn hn_generators(&self) -> &[OpVec] {
        &self.hn
    }

    /// Largest total degree `|a| + |b|` among the generators.
    pub fn max_generator_degree(&self) -> u32 {
        self.generators
            .iter()
            .flat_map(|g| g.terms().map(|(_, m, _)| m.x_degree() + m.d_degree()))
            .max()
            .unwrap_or(0)
    }

    /// The reduced L-standard basis of `h(N)`.
    pub fn standard_basis(&self, l: &LinearForm) -> Result<StandardBasis> {
        if l.k() != self.shifts.k() {
            return Err(AlgebraError::DescriptorMismatch(format!(
                "form of length {} for k = {}",
                l.k(),
                self.shifts.k()
            )));
        }
        let order = TermOrder::weighted(l, &self.shifts)?;
        let ring = Ring {
            n: self.n,
            r: self.r,
            order: order.clone(),
            product: Product::Homogenized,
        };
        let polys: Vec<Poly> = self.j_gens.iter().map(|g| ring.poly_of(g)).collect();
        let gb = ring.interreduce(ring.groebner(&polys, self.limits)?);
        let mut elements: Vec<OpVec> = gb.iter().map(|p| ring.to_vec(p)).collect();
        let canon = TermOrder::default();
        let lead_key = |v: &OpVec| {
            let (c, m) = lead_of(v, &order);
            canon.key(c, &m)
        };
        elements.sort_by_cached_key(lead_key);
        Ok(StandardBasis {
            n: self.n,
            r: self.r,
            shifts: self.shifts.clone(),
            form: l.clone(),
            order,
            elements,
        })
    }
}

fn lead_of(v: &OpVec, order: &TermOrder) -> (usize, Monomial) {
    v.terms()
        .map(|(i, m, _)| (i, m))
        .max_by(|a, b| order.compare(*a, *b))
        .map(|(i, m)| (i, m.clone()))
        .expect("nonzero element")
}

fn strip_s(m: &Monomial) -> Monomial {
    m.clone().with_s(0)
}

/// A reduced L-standard basis `H_1, ..., H_p` of `h(N)`: F-homogeneous,
/// autoreduced and monic.
#[derive(Debug, Clone)]
pub struct StandardBasis {
    n: usize,
    r: usize,
    shifts: ShiftMatrix,
    form: LinearForm,
    order: TermOrder,
    elements: Vec<OpVec>,
}

/// Data identifying `in_L` of the module: the basis together with the
/// symbols of its elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisKey {
    elements: Vec<OpVec>,
    symbols: Vec<OpVec>,
}

impl PartialEq for StandardBasis {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.elements == other.elements
    }
}

impl Eq for StandardBasis {}

impl StandardBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    pub fn shifts(&self) -> &ShiftMatrix {
        &self.shifts
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// The basis elements `H_m` in `D[t]^r`.
    pub fn elements(&self) -> Vec<OpVec> {
        self.elements.iter().map(OpVec::drop_s).collect()
    }

    /// A copy with element `idx` removed. The result is in general no longer
    /// a standard basis; used for negative controls.
    pub fn without_element(&self, idx: usize) -> Result<StandardBasis> {
        if idx >= self.elements.len() {
            return Err(AlgebraError::Precondition(format!(
                "no basis element {idx}"
            )));
        }
        let mut out = self.clone();
        out.elements.remove(idx);
        Ok(out)
    }

    /// A copy with element `idx` replaced by an F-homogeneous `v` in
    /// `D[t]^r`. Used for negative controls.
    pub fn with_element_replaced(&self, idx: usize, v: &OpVec) -> Result<StandardBasis> {
        if idx >= self.elements.len() {
            return Err(AlgebraError::Precondition(format!(
                "no basis element {idx}"
            )));
        }
        if v.n() != self.n || v.rank() != self.r {
            return Err(AlgebraError::DescriptorMismatch(
                "replacement of the wrong shape".into(),
            ));
        }
        if v.is_zero() {
            return Err(AlgebraError::ZeroInput);
        }
        if !v.is_f_homogeneous() {
            return Err(AlgebraError::NotHomogeneous);
        }
        let mut out = self.clone();
        let e = max_bi_degree(v).expect("nonzero");
        out.elements[idx] = s_homogenize(v, e);
        Ok(out)
    }

    /// `exp(H_m)` as `(component, exponent)`.
    pub fn privileged_exponents(&self) -> Vec<(usize, Monomial)> {
        self.elements
            .iter()
            .map(|v| {
                let (c, m) = lead_of(v, &self.order);
                (c, strip_s(&m))
            })
            .collect()
    }

    /// Exponent of `s` in each leading term.
    pub fn ecarts(&self) -> Vec<u32> {
        self.elements
            .iter()
            .map(|v| lead_of(v, &self.order).1.s_exponent())
            .collect()
    }

    /// `d_m = ord^L(H_m)` for the basis form.
    pub fn orders(&self) -> Vec<Rational> {
        self.elements()
            .iter()
            .map(|h| {
                ord_l_vec(h, &self.form, &self.shifts)
                    .expect("shape checked at construction")
                    .expect("nonzero element")
            })
            .collect()
    }

    /// Whether this is also the reduced standard basis for `l`: the leading
    /// terms under the order of `l` coincide with the stored ones.
    pub fn is_valid_for(&self, l: &LinearForm) -> Result<bool> {
        let order = TermOrder::weighted(l, &self.shifts)?;
        Ok(self
            .elements
            .iter()
            .all(|v| lead_of(v, &order) == lead_of(v, &self.order)))
    }

    /// `{(sigma^L(H_m), ord^L(H_m))}`, generating `gr^L(h(N))`.
    pub fn gr_generators(&self, l: &LinearForm) -> Result<Vec<(OpVec, Rational)>> {
        if !self.is_valid_for(l)? {
            return Err(AlgebraError::OutsideContext(format!(
                "the basis computed at {} is not the standard basis at {l}",
                self.form
            )));
        }
        self.elements()
            .iter()
            .map(|h| {
                let d = ord_l_vec(h, l, &self.shifts)?.expect("nonzero element");
                Ok((principal_symbol(h, l, &self.shifts)?, d))
            })
            .collect()
    }

    /// The basis with the symbols of its elements at the basis form.
    pub fn key(&self) -> BasisKey {
        let symbols = self
            .elements
            .iter()
            .map(|h| principal_symbol(h, &self.form, &self.shifts).expect("shape checked"))
            .collect();
        BasisKey {
            elements: self.elements.clone(),
            symbols,
        }
    }

    fn ring(&self) -> Ring {
        Ring {
            n: self.n,
            r: self.r,
            order: self.order.clone(),
            product: Product::Homogenized,
        }
    }
}

impl fmt::Display for StandardBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for h in self.elements() {
            writeln!(f, "{h}")?;
        }
        Ok(())
    }
}

/// `G = sum_m A_m H_m + R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotients: Vec<Operator>,
    pub remainder: OpVec,
    /// Degree to which `G` was `s`-homogenized.
    pub s_degree: u32,
}

fn check_divisible(g: &OpVec, n: usize, r: usize) -> Result<()> {
    if g.n() != n || g.rank() != r {
        return Err(AlgebraError::DescriptorMismatch(format!(
            "element of rank {} over n = {} against rank {r} over n = {n}",
            g.rank(),
            g.n()
        )));
    }
    if !g.is_f_homogeneous() {
        return Err(AlgebraError::NotHomogeneous);
    }
    Ok(())
}

/// Division of an F-homogeneous `G` by F-homogeneous `H_1, ..., H_p` under
/// `order`. Each `H_m` and `G` are `s`-homogenized to their own degree.
pub fn divide_by(g: &OpVec, divisors: &[OpVec], order: &TermOrder) -> Result<DivisionResult> {
    let (n, r) = (g.n(), g.rank());
    check_divisible(g, n, r)?;
    let mut hs = Vec::with_capacity(divisors.len());
    for h in divisors {
        check_divisible(h, n, r)?;
        let e = max_bi_degree(h).ok_or(AlgebraError::ZeroInput)?;
        hs.push(s_homogenize(&h.drop_s(), e));
    }
    divide_homogenized(g, &hs, order)
}

fn divide_homogenized(g: &OpVec, hs: &[OpVec], order: &TermOrder) -> Result<DivisionResult> {
    let (n, r) = (g.n(), g.rank());
    let ring = Ring {
        n,
        r,
        order: order.clone(),
        product: Product::Homogenized,
    };
    let Some(e) = max_bi_degree(g) else {
        return Ok(DivisionResult {
            quotients: vec![Operator::zero(n); hs.len()],
            remainder: OpVec::zero(n, r),
            s_degree: 0,
        });
    };
    let gs = ring.poly_of(&s_homogenize(g, e));
    let basis: Vec<Poly> = hs.iter().map(|h| ring.poly_of(h)).collect();
    let mut quotients = vec![Operator::zero(n); hs.len()];
    let rem = ring.reduce(&gs, &basis, Some(&mut quotients));
    Ok(DivisionResult {
        quotients: quotients.iter().map(Operator::drop_s).collect(),
        remainder: ring.to_vec(&rem).drop_s(),
        s_degree: e,
    })
}

/// Division by a reduced standard basis.
pub fn divide(g: &OpVec, basis: &StandardBasis) -> Result<DivisionResult> {
    check_divisible(g, basis.n, basis.r)?;
    divide_homogenized(g, &basis.elements, &basis.order)
}

impl DivisionResult {
    /// Checks the division contract against `G` and the divisors:
    /// recomposition, the support condition on the remainder, `exp` and
    /// `ord^L` bounds on every `A_m H_m`, and F-homogeneity of the quotients.
    ///
    /// The support condition is the one of division in `D[t, s]`: a term `u`
    /// of `R` may be a multiple of `exp(H_m)` only when the ecart of `H_m`
    /// exceeds the `s`-exponent `s_degree - (|a| + |b| + 2l)(u)` of `u`.
    pub fn verify(&self, g: &OpVec, divisors: &[OpVec], order: &TermOrder) -> Result<()> {
        let fail = |m: String| Err(AlgebraError::Verification(m));
        let r = g.rank();
        let mut sum = self.remainder.clone();
        for (a, h) in self.quotients.iter().zip(divisors) {
            sum = &sum + &h.left_mul_dt(a)?;
        }
        if &sum != g {
            return fail("recomposition sum A_m H_m + R differs from G".into());
        }
        let leads: Vec<(usize, Monomial, u32)> = divisors
            .iter()
            .map(|h| {
                let e = max_bi_degree(h).expect("nonzero divisor");
                let (c, m) = lead_of(h, order);
                (c, m.clone(), e - m.bi_degree())
            })
            .collect();
        for (i, u, _) in self.remainder.terms() {
            let su = self.s_degree - u.bi_degree();
            for (c, m, ecart) in &leads {
                if *c == i && m.divides(u) && *ecart <= su {
                    return fail(format!(
                        "remainder term in component {} is reducible",
                        i + 1
                    ));
                }
            }
        }
        let g_exp = (!g.is_zero()).then(|| lead_of(g, order));
        let g_ord = order
            .weight()
            .map(|l| ord_l_vec(g, l, &shifts_for(order, l.k(), r)))
            .transpose()?
            .flatten();
        for (a, h) in self.quotients.iter().zip(divisors) {
            if !a.is_f_homogeneous() {
                return fail("a quotient is not F-homogeneous".into());
            }
            let ah = h.left_mul_dt(a)?;
            if ah.is_zero() {
                continue;
            }
            let (c, m) = lead_of(&ah, order);
            let Some((gc, gm)) = &g_exp else {
                return fail("nonzero quotient for G = 0".into());
            };
            if order.compare((c, &m), (*gc, gm)) == std::cmp::Ordering::Greater {
                return fail("exp(A_m H_m) exceeds exp(G)".into());
            }
            if let Some(l) = order.weight() {
                let o = ord_l_vec(&ah, l, &shifts_for(order, l.k(), r))?;
                if o > g_ord {
                    return fail("ord^L(A_m H_m) exceeds ord^L(G)".into());
                }
            }
        }
        Ok(())
    }
}

fn shifts_for(order: &TermOrder, k: usize, r: usize) -> ShiftMatrix {
    order
        .shifts()
        .cloned()
        .unwrap_or_else(|| ShiftMatrix::zero(k, r))
}

/// `G in h(N)`: the remainder of `G` by the basis vanishes.
pub fn member_hn(g: &OpVec, basis: &StandardBasis) -> Result<bool> {
    Ok(divide(g, basis)?.remainder.is_zero())
}

/// Verdict of the bounded search for `l` with `t^l h(Q) in h(N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Yes(u32),
    NoUpToBound(u32),
}

/// Default `l_max = 2 (max generator degree + degree of Q)`.
pub fn default_l_max(module: &HomogenizedModule, q: &OpVec) -> u32 {
    let dq = q
        .terms()
        .map(|(_, m, _)| m.x_degree() + m.d_degree())
        .max()
        .unwrap_or(0);
    2 * (module.max_generator_degree() + dq)
}

/// Least `l <= l_max` with `t^l h(Q) in h(N)`.
pub fn member_n(q: &OpVec, basis: &StandardBasis, l_max: u32) -> Result<Membership> {
    let hq = q.homogenize()?;
    for l in 0..=l_max {
        if member_hn(&hq.times_t(l), basis)? {
            return Ok(Membership::Yes(l));
        }
    }
    Ok(Membership::NoUpToBound(l_max))
}

/// Reduced L-standard basis of `h(N)` for generators of `N`.
pub fn reduce_basis(
    generators: &[OpVec],
    l: &LinearForm,
    shifts: &ShiftMatrix,
) -> Result<StandardBasis> {
    HomogenizedModule::new(generators.to_vec(), shifts.clone())?.standard_basis(l)
}

/// Whether every S-pair of the homogenized basis reduces to zero.
pub fn is_closed_under_s_pairs(basis: &StandardBasis) -> bool {
    let ring = basis.ring();
    let polys: Vec<Poly> = basis.elements.iter().map(|h| ring.poly_of(h)).collect();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if let Some(s) = ring.s_poly(&polys[i], &polys[j]) {
                if !ring.reduce(&s, &polys, None).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether no term of an element is divisible by the leading exponent of
/// another, in `D[t, s]`.
pub fn is_autoreduced(basis: &StandardBasis) -> bool {
    let leads: Vec<(usize, Monomial)> = basis
        .elements
        .iter()
        .map(|v| lead_of(v, &basis.order))
        .collect();
    basis.elements.iter().enumerate().all(|(i, v)| {
        v.terms().all(|(c, m, _)| {
            leads
                .iter()
                .enumerate()
                .all(|(j, (lc, lm))| j == i || *lc != c || !lm.divides(m))
        })
    })
}

/// Whether every leading coefficient is 1.
pub fn is_monic(basis: &StandardBasis) -> bool {
    basis.elements.iter().all(|v| {
        let (c, m) = lead_of(v, &basis.order);
        v.coefficient(c, &m) == Rational::from_integer(1.into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{parse_element, parse_vector};

    fn el(s: &str, n: usize) -> OpVec {
        parse_element(s, n, 1).unwrap()
    }

    fn lf(v: &[i64]) -> LinearForm {
        LinearForm::from_i64(v).unwrap()
    }

    fn basis(gens: &[&str], n: usize, l: &[i64]) -> StandardBasis {
        let g: Vec<OpVec> = gens.iter().map(|s| el(s, n)).collect();
        reduce_basis(&g, &lf(l), &ShiftMatrix::zero(l.len(), 1)).unwrap()
    }

    #[test]
    fn monomial_generator() {
        let b = basis(&["d1"], 1, &[1]);
        assert_eq!(b.elements(), vec![el("d1", 1)]);
        assert!(is_closed_under_s_pairs(&b) && is_autoreduced(&b) && is_monic(&b));
    }

    #[test]
    fn euler_is_its_own_basis() {
        for l in [[0, 0], [1, 0], [0, 1], [1, 1], [3, 2]] {
            let b = basis(&["x1 d1 + x2 d2"], 2, &l);
            assert_eq!(b.elements(), vec![el("x1 d1 + x2 d2", 2)], "{l:?}");
        }
    }

    #[test]
    fn completion_of_two_generators() {
        let b = basis(&["d1 + x1 d2^2", "d2"], 2, &[1, 0]);
        assert_eq!(b.elements(), vec![el("d2", 2), el("d1", 2)]);
        assert!(member_hn(&el("x1 d1 + x2 d2", 2), &b).unwrap());
        assert!(!member_hn(&el("x1 t", 2), &b).unwrap());
    }

    #[test]
    fn division_examples() {
        let b = basis(&["d1 + x1 d2^2"], 2, &[1, 0]);
        let h = b.elements()[0].clone();
        let div = divide(&h, &b).unwrap();
        assert_eq!(div.quotients, vec![Operator::one(2)]);
        assert!(div.remainder.is_zero());
        div.verify(&h, &b.elements(), b.order()).unwrap();

        // x1 H + junk with junk outside exp(H) + N^(2n+1)
        let junk = el("x2^3 t^2", 2);
        let g = &h
            .left_mul_dt(&crate::grammar::parse_operator("x1", 2).unwrap())
            .unwrap()
            + &junk;
        let div = divide_by(&g, std::slice::from_ref(&h), b.order()).unwrap();
        assert_eq!(
            div.quotients[0],
            crate::grammar::parse_operator("x1", 2).unwrap()
        );
        assert_eq!(div.remainder, junk);
        div.verify(&g, &[h], b.order()).unwrap();
    }

    #[test]
    fn membership_examples() {
        let b = basis(&["d1"], 1, &[1]);
        assert!(!member_hn(&el("1", 1), &b).unwrap());
        assert!(member_hn(&el("x1 d1", 1), &b).unwrap());
        let b = basis(&["1 + x1^2 d1"], 1, &[1]);
        let q = el("1 + x1^2 d1", 1);
        assert_eq!(member_n(&q, &b, 2).unwrap(), Membership::Yes(0));
        let xq = el("x1 + x1^3 d1", 1);
        assert!(matches!(member_n(&xq, &b, 2).unwrap(), Membership::Yes(l) if l <= 1));
        assert_eq!(
            member_n(&el("x1", 1), &b, 3).unwrap(),
            Membership::NoUpToBound(3)
        );
        assert!(matches!(
            member_hn(&el("d1 + x1", 1), &b),
            Err(AlgebraError::NotHomogeneous)
        ));
    }

    #[test]
    fn gr_generator_examples() {
        let b = basis(&["x1 d1 + x2 d2"], 2, &[1, 1]);
        let gr = b.gr_generators(&lf(&[1, 1])).unwrap();
        assert_eq!(
            gr,
            vec![(el("x1 d1 + x2 d2", 2), Rational::from_integer(0.into()))]
        );
        let b = basis(&["d1 + x1 d2^2"], 2, &[1, 0]);
        let gr = b.gr_generators(&lf(&[1, 0])).unwrap();
        assert_eq!(gr, vec![(el("d1 t", 2), Rational::from_integer(1.into()))]);
        assert!(matches!(
            b.gr_generators(&lf(&[1, 3])),
            Err(AlgebraError::OutsideContext(_))
        ));
    }

    #[test]
    fn vector_module() {
        let g = vec![
            parse_vector("d1 e1 + x1 e2", 2, 2).unwrap(),
            parse_vector("d2 e2", 2, 2).unwrap(),
        ];
        let shifts = ShiftMatrix::new(vec![vec![0, 0], vec![1, 0]]).unwrap();
        let m = HomogenizedModule::new(g.clone(), shifts).unwrap();
        for l in [[1, 0], [0, 1], [1, 1]] {
            let b = m.standard_basis(&lf(&l)).unwrap();
            assert!(is_closed_under_s_pairs(&b) && is_autoreduced(&b));
            for q in &g {
                assert_eq!(member_n(q, &b, 0).unwrap(), Membership::Yes(0));
            }
        }
    }
}

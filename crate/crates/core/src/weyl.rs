//! Exact arithmetic in the Weyl algebra `D = Q[x][d]`, in the free module `D^r`
//! and in the homogenized ring `D[t]` where `[d_i, a] = (da/dx_i) t`.
//!
//! One term type serves all three rings: a `Monomial` carries the powers of
//! `x`, `d` and `t` (plus an auxiliary central exponent `s` that only the
//! standard-basis engine uses; it is zero in every user-facing value).
//! Terms are stored in normal order `x^a d^b t^l`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::filtration::ShiftMatrix;

pub type Rational = BigRational;

/// Which commutation rule to use when multiplying.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product {
    /// `d_i x_i = x_i d_i + 1`; `t` (if present) is a central parameter.
    Weyl,
    /// `d_i x_i = x_i d_i + t`.
    Homogenized,
}

/// Exponent data of a normally ordered monomial `x^a d^b t^l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub x: Vec<u32>,
    pub d: Vec<u32>,
    pub t: u32,
    pub(crate) s: u32,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            x: vec![0; n],
            d: vec![0; n],
            t: 0,
            s: 0,
        }
    }

    pub fn new(x: Vec<u32>, d: Vec<u32>, t: u32) -> Self {
        assert_eq!(
            x.len(),
            d.len(),
            "x and d exponent vectors differ in length"
        );
        Monomial { x, d, t, s: 0 }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `|b|`, the usual order of the monomial.
    pub fn d_degree(&self) -> u32 {
        self.d.iter().sum()
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    /// `|b| + l`, the F-degree in `D[t]`.
    pub fn f_degree(&self) -> u32 {
        self.d_degree() + self.t
    }

    /// `|a| + |b| + l`.
    pub fn total_degree(&self) -> u32 {
        self.x_degree() + self.d_degree() + self.t
    }

    /// `|a| + |b| + 2l`: the grading for which `[d_i, x_i] = t` is homogeneous.
    pub fn bi_degree(&self) -> u32 {
        self.x_degree() + self.d_degree() + 2 * self.t
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.t <= other.t
            && self.s <= other.s
            && self.x.iter().zip(&other.x).all(|(a, b)| a <= b)
            && self.d.iter().zip(&other.d).all(|(a, b)| a <= b)
    }

    /// `other / self` as exponent difference; caller guarantees divisibility.
    pub(crate) fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: other.x.iter().zip(&self.x).map(|(a, b)| a - b).collect(),
            d: other.d.iter().zip(&self.d).map(|(a, b)| a - b).collect(),
            t: other.t - self.t,
            s: other.s - self.s,
        }
    }

    pub(crate) fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self
                .x
                .iter()
                .zip(&other.x)
                .map(|(a, b)| *a.max(b))
                .collect(),
            d: self
                .d
                .iter()
                .zip(&other.d)
                .map(|(a, b)| *a.max(b))
                .collect(),
            t: self.t.max(other.t),
            s: self.s.max(other.s),
        }
    }

    /// Commutative exponent sum (no Leibniz correction).
    pub(crate) fn plain_product(&self, other: &Monomial) -> Monomial {
        Monomial {
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
            d: self.d.iter().zip(&other.d).map(|(a, b)| a + b).collect(),
            t: self.t + other.t,
            s: self.s + other.s,
        }
    }

    pub(crate) fn with_t(mut self, t: u32) -> Self {
        self.t = t;
        self
    }

    pub(crate) fn with_s(mut self, s: u32) -> Self {
        self.s = s;
        self
    }

    pub(crate) fn s_exponent(&self) -> u32 {
        self.s
    }

    /// Degree-reverse-lexicographic comparison: degree `|a|+|b|` of the
    /// underlying Weyl monomial first, then reverse lexicographic on the variable sequence
    /// `(d_1..d_n, x_1..x_n, t)` so that `d` ranks above `x` and `t` is the
    /// smallest variable. The auxiliary exponent breaks any remaining tie.
    pub fn cmp_degrevlex(&self, other: &Monomial) -> Ordering {
        (self.x_degree() + self.d_degree())
            .cmp(&(other.x_degree() + other.d_degree()))
            .then_with(|| other.t.cmp(&self.t))
            .then_with(|| {
                for (a, b) in self.x.iter().zip(&other.x).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                for (a, b) in self.d.iter().zip(&other.d).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
            .then_with(|| other.s.cmp(&self.s))
    }
}

fn falling_binomial(b: u32, a: u32, g: u32) -> BigInt {
    // C(b, g) * C(a, g) * g!  =  b!/(b-g)! * C(a, g)
    let mut v = BigInt::one();
    for i in 0..g {
        v *= b - i;
    }
    let mut c = BigInt::one();
    for i in 0..g {
        c = c * (a - i) / (i + 1);
    }
    v * c
}

/// Product of two normally ordered monomials, expanded by the closed-form
/// Leibniz rule `d^b x^a = sum_g C(b,g) C(a,g) g! x^(a-g) d^(b-g) [t^|g|]`.
pub(crate) fn monomial_product(
    left: &Monomial,
    right: &Monomial,
    product: Product,
) -> Vec<(BigInt, Monomial)> {
    let n = left.n();
    let base = left.plain_product(right);
    let mut out: Vec<(BigInt, Monomial)> = vec![(BigInt::one(), base)];
    for i in 0..n {
        let gmax = left.d[i].min(right.x[i]);
        if gmax == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (gmax as usize + 1));
        for (c, m) in &out {
            for g in 0..=gmax {
                let f = falling_binomial(left.d[i], right.x[i], g);
                let mut m2 = m.clone();
                m2.x[i] -= g;
                m2.d[i] -= g;
                if product == Product::Homogenized {
                    m2.t += g;
                }
                next.push((c * &f, m2));
            }
        }
        out = next;
    }
    out
}

/// A finite linear combination of normally ordered monomials: an element of
/// `D` or of `D[t]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operator {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Operator {
    pub fn zero(n: usize) -> Self {
        Operator {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, Monomial::one(n), Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(n, Monomial::one(n), c)
    }

    pub fn monomial(n: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.n(), n);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Operator { n, terms }
    }

    /// `x_i` (1-based index).
    pub fn x(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.x[i - 1] = 1;
        Self::monomial(n, m, Rational::one())
    }

    /// `d_i` (1-based index).
    pub fn d(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.d[i - 1] = 1;
        Self::monomial(n, m, Rational::one())
    }

    pub fn t(n: usize) -> Self {
        Self::monomial(n, Monomial::one(n).with_t(1), Rational::one())
    }

    /// Builds a canonical operator, merging repeated monomials.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut op = Operator::zero(n);
        for (m, c) in terms {
            op.add_term(m, c);
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.n(), self.n);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn scale(&self, c: &Rational) -> Operator {
        if c.is_zero() {
            return Operator::zero(self.n);
        }
        Operator {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub(crate) fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Operator {
        Operator::from_terms(self.n, self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub(crate) fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Operator {
        Operator {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_same(&self, other: &Operator) -> Result<()> {
        if self.n != other.n {
            return Err(AlgebraError::DescriptorMismatch(format!(
                "operators over n={} and n={}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub(crate) fn mul_with(&self, other: &Operator, product: Product) -> Operator {
        debug_assert_eq!(self.n, other.n);
        let mut out = Operator::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let cab = ca * cb;
                for (k, m) in monomial_product(ma, mb, product) {
                    out.add_term(m, &cab * Rational::from_integer(k));
                }
            }
        }
        out
    }

    /// Product in the Weyl algebra.
    pub fn mul(&self, other: &Operator) -> Result<Operator> {
        self.check_same(other)?;
        Ok(self.mul_with(other, Product::Weyl))
    }

    /// Product in `D[t]`.
    pub fn mul_dt(&self, other: &Operator) -> Result<Operator> {
        self.check_same(other)?;
        Ok(self.mul_with(other, Product::Homogenized))
    }

    /// Usual order `max |b|`; `None` for zero.
    pub fn usual_order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::d_degree).max()
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|m| m.t == 0)
    }

    /// Common F-degree `|b| + l` of all terms, if the operator is F-homogeneous.
    /// The zero operator has no degree.
    pub fn f_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::f_degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_f_homogeneous(&self) -> bool {
        self.is_zero() || self.f_degree().is_some()
    }

    /// Multiplies by `t^e`.
    pub fn times_t(&self, e: u32) -> Operator {
        self.map_monomials(|m| m.clone().with_t(m.t + e))
    }

    /// Homogenization `h(P) = sum_b p_b(x) d^b t^(d - |b|)` with `d = ord(P)`.
    pub fn homogenize(&self) -> Result<Operator> {
        let d = self.usual_order().ok_or(AlgebraError::ZeroInput)?;
        if !self.is_t_free() {
            return Err(AlgebraError::Precondition(
                "homogenize expects an element of D (no t)".into(),
            ));
        }
        Ok(self.map_monomials(|m| m.clone().with_t(d - m.d_degree())))
    }

    /// Substitutes `t = 1`.
    pub fn dehomogenize(&self) -> Operator {
        self.map_monomials(|m| m.clone().with_t(0))
    }

    pub(crate) fn drop_s(&self) -> Operator {
        self.map_monomials(|m| m.clone().with_s(0))
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.n, rhs.n, "operator ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.n, rhs.n, "operator ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale(&-Rational::one())
    }
}

/// An element of `D^r` or `D[t]^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpVec {
    n: usize,
    comps: Vec<Operator>,
}

impl OpVec {
    pub fn zero(n: usize, r: usize) -> Self {
        assert!(r >= 1, "module rank must be at least 1");
        OpVec {
            n,
            comps: vec![Operator::zero(n); r],
        }
    }

    pub fn new(comps: Vec<Operator>) -> Result<Self> {
        let n = comps
            .first()
            .map(Operator::n)
            .ok_or_else(|| AlgebraError::Precondition("empty component list".into()))?;
        if comps.iter().any(|c| c.n() != n) {
            return Err(AlgebraError::DescriptorMismatch(
                "components over different rings".into(),
            ));
        }
        Ok(OpVec { n, comps })
    }

    /// `P e_i` (1-based component index).
    pub fn unit(n: usize, r: usize, i: usize) -> Self {
        Self::embed(Operator::one(n), r, i)
    }

    /// Places a scalar in component `i` (1-based).
    pub fn embed(op: Operator, r: usize, i: usize) -> Self {
        let n = op.n();
        let mut v = OpVec::zero(n, r);
        v.comps[i - 1] = op;
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Operator] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Operator {
        &self.comps[i]
    }

    pub(crate) fn component_mut(&mut self, i: usize) -> &mut Operator {
        &mut self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Operator::is_zero)
    }

    pub fn num_terms(&self) -> usize {
        self.comps.iter().map(Operator::len).sum()
    }

    /// All terms as `(component (0-based), monomial, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Monomial, &Rational)> {
        self.comps
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.terms().map(move |(m, v)| (i, m, v)))
    }

    pub fn coefficient(&self, comp: usize, m: &Monomial) -> Rational {
        self.comps[comp].coefficient(m)
    }

    pub fn scale(&self, c: &Rational) -> OpVec {
        OpVec {
            n: self.n,
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub(crate) fn map_components(&self, f: impl Fn(&Operator) -> Operator) -> OpVec {
        OpVec {
            n: self.n,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub(crate) fn filter_terms(&self, keep: impl Fn(usize, &Monomial) -> bool) -> OpVec {
        OpVec {
            n: self.n,
            comps: self
                .comps
                .iter()
                .enumerate()
                .map(|(i, c)| c.filter_terms(|m| keep(i, m)))
                .collect(),
        }
    }

    pub(crate) fn left_mul_with(&self, p: &Operator, product: Product) -> OpVec {
        self.map_components(|c| p.mul_with(c, product))
    }

    fn check_left(&self, p: &Operator) -> Result<()> {
        if p.n() != self.n {
            return Err(AlgebraError::DescriptorMismatch(format!(
                "operator over n={} acting on vector over n={}",
                p.n(),
                self.n
            )));
        }
        Ok(())
    }

    /// Left action `P * B` in `D^r`.
    pub fn left_mul(&self, p: &Operator) -> Result<OpVec> {
        self.check_left(p)?;
        Ok(self.left_mul_with(p, Product::Weyl))
    }

    /// Left action `P * B` in `D[t]^r`.
    pub fn left_mul_dt(&self, p: &Operator) -> Result<OpVec> {
        self.check_left(p)?;
        Ok(self.left_mul_with(p, Product::Homogenized))
    }

    pub fn usual_order(&self) -> Option<u32> {
        self.comps.iter().filter_map(Operator::usual_order).max()
    }

    pub fn is_t_free(&self) -> bool {
        self.comps.iter().all(Operator::is_t_free)
    }

    pub fn f_degree(&self) -> Option<u32> {
        let mut degs = self.terms().map(|(_, m, _)| m.f_degree());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_f_homogeneous(&self) -> bool {
        self.is_zero() || self.f_degree().is_some()
    }

    pub fn times_t(&self, e: u32) -> OpVec {
        self.map_components(|c| c.times_t(e))
    }

    /// Vector homogenization `(t^(d-d_1) h(P_1), ..., t^(d-d_r) h(P_r))`.
    pub fn homogenize(&self) -> Result<OpVec> {
        let d = self.usual_order().ok_or(AlgebraError::ZeroInput)?;
        let mut comps = Vec::with_capacity(self.rank());
        for c in &self.comps {
            match c.usual_order() {
                None => comps.push(c.clone()),
                Some(di) => comps.push(c.homogenize()?.times_t(d - di)),
            }
        }
        Ok(OpVec { n: self.n, comps })
    }

    pub fn dehomogenize(&self) -> OpVec {
        self.map_components(Operator::dehomogenize)
    }

    pub(crate) fn drop_s(&self) -> OpVec {
        self.map_components(Operator::drop_s)
    }
}

impl Add for &OpVec {
    type Output = OpVec;
    fn add(self, rhs: &OpVec) -> OpVec {
        assert_eq!(self.rank(), rhs.rank(), "module rank mismatch");
        OpVec {
            n: self.n,
            comps: self
                .comps
                .iter()
                .zip(&rhs.comps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &OpVec {
    type Output = OpVec;
    fn sub(self, rhs: &OpVec) -> OpVec {
        assert_eq!(self.rank(), rhs.rank(), "module rank mismatch");
        OpVec {
            n: self.n,
            comps: self
                .comps
                .iter()
                .zip(&rhs.comps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &OpVec {
    type Output = OpVec;
    fn neg(self) -> OpVec {
        self.scale(&-Rational::one())
    }
}

/// The ambient data: `n` variable pairs, `k` filtered coordinates, rank `r`
/// and the shift matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDescriptor {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub shifts: ShiftMatrix,
}

impl RingDescriptor {
    pub fn new(n: usize, k: usize, r: usize, shifts: ShiftMatrix) -> Result<Self> {
        if k == 0 || k > n {
            return Err(AlgebraError::Precondition(format!(
                "need 1 <= k <= n, got k={k}, n={n}"
            )));
        }
        if r == 0 {
            return Err(AlgebraError::Precondition(
                "module rank r must be >= 1".into(),
            ));
        }
        if shifts.rank() != r || shifts.k() != k {
            return Err(AlgebraError::Precondition(format!(
                "shift matrix has {} columns of length {}, expected {r} of length {k}",
                shifts.rank(),
                shifts.k()
            )));
        }
        Ok(RingDescriptor { n, k, r, shifts })
    }

    /// Unshifted descriptor.
    pub fn plain(n: usize, k: usize, r: usize) -> Result<Self> {
        Self::new(n, k, r, ShiftMatrix::zero(k, r))
    }
}

pub(crate) fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn format_monomial_factors(m: &Monomial, comp: Option<usize>) -> Vec<String> {
    let mut f = Vec::new();
    let pow = |name: String, e: u32| {
        if e == 1 {
            name
        } else {
            format!("{name}^{e}")
        }
    };
    for (i, &e) in m.x.iter().enumerate() {
        if e > 0 {
            f.push(pow(format!("x{}", i + 1), e));
        }
    }
    for (i, &e) in m.d.iter().enumerate() {
        if e > 0 {
            f.push(pow(format!("d{}", i + 1), e));
        }
    }
    if m.t > 0 {
        f.push(pow("t".into(), m.t));
    }
    if let Some(i) = comp {
        f.push(format!("e{}", i + 1));
    }
    f
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Option<usize>, &'a Monomial, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (comp, m, c) in terms {
        let factors = format_monomial_factors(m, comp);
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        if factors.is_empty() {
            write!(f, "{}", format_rational(&abs))?;
        } else if abs.is_one() {
            write!(f, "{}", factors.join(" "))?;
        } else {
            write!(f, "{} {}", format_rational(&abs), factors.join(" "))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Operator {
    /// Terms are printed in descending degree-reverse-lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.cmp_degrevlex(a.0));
        write_terms(f, terms.into_iter().map(|(m, c)| (None, m, c)))
    }
}

impl fmt::Display for OpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|a, b| b.1.cmp_degrevlex(a.1).then(a.0.cmp(&b.0)));
        write_terms(f, terms.into_iter().map(|(i, m, c)| (Some(i), m, c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{parse_operator, parse_vector};

    fn op(s: &str, n: usize) -> Operator {
        parse_operator(s, n).unwrap()
    }

    #[test]
    fn leibniz_basic() {
        let d1 = Operator::d(1, 1);
        let x1 = Operator::x(1, 1);
        assert_eq!(d1.mul(&x1).unwrap(), op("x1 d1 + 1", 1));
        assert_eq!(d1.mul(&op("x1^2", 1)).unwrap(), op("x1^2 d1 + 2 x1", 1));
        assert_eq!(Operator::one(1).mul(&x1).unwrap(), x1);
    }

    #[test]
    fn homogenized_product() {
        let d1 = Operator::d(1, 1);
        let x1 = Operator::x(1, 1);
        assert_eq!(d1.mul_dt(&x1).unwrap(), op("x1 d1 + t", 1));
        let lhs = Operator::d(2, 1).mul_dt(&op("x1^2 d2", 2)).unwrap();
        assert_eq!(lhs, op("x1^2 d1 d2 + 2 x1 d2 t", 2));
        let p = op("x1 d2 + d1^2", 2);
        assert_eq!(
            Operator::t(2).mul_dt(&p).unwrap(),
            p.mul_dt(&Operator::t(2)).unwrap()
        );
    }

    #[test]
    fn mismatch_is_reported() {
        assert!(matches!(
            Operator::x(1, 1).mul(&Operator::x(2, 1)),
            Err(AlgebraError::DescriptorMismatch(_))
        ));
    }

    #[test]
    fn homogenization_examples() {
        assert_eq!(op("d1 + x1", 1).homogenize().unwrap(), op("d1 + x1 t", 1));
        assert_eq!(op("x1", 1).homogenize().unwrap(), op("x1", 1));
        let h = op("1 + x1^2 d1", 1).homogenize().unwrap();
        assert_eq!(h, op("t + x1^2 d1", 1));
        assert_eq!(h.f_degree(), Some(1));
        assert_eq!(Operator::zero(1).homogenize(), Err(AlgebraError::ZeroInput));
        assert_eq!(op("x1 t^2 + x1", 1).dehomogenize(), op("2 x1", 1));
        assert_eq!(op("t + x1^2 d1", 1).dehomogenize(), op("1 + x1^2 d1", 1));
    }

    #[test]
    fn vector_homogenization() {
        let b = parse_vector("d1 e1 + x1 e2", 1, 2).unwrap();
        assert_eq!(
            b.homogenize().unwrap(),
            parse_vector("d1 e1 + x1 t e2", 1, 2).unwrap()
        );
        let b = parse_vector("d1^2 e1 + x2 d1 e2", 2, 2).unwrap();
        let h = b.homogenize().unwrap();
        assert_eq!(h, parse_vector("d1^2 e1 + x2 d1 t e2", 2, 2).unwrap());
        assert_eq!(h.f_degree(), Some(2));
        let p = op("1 + x1^2 d1", 1);
        let b = OpVec::embed(p.clone(), 2, 1);
        assert_eq!(
            b.homogenize().unwrap(),
            OpVec::embed(p.homogenize().unwrap(), 2, 1)
        );
        assert_eq!(OpVec::zero(1, 2).homogenize(), Err(AlgebraError::ZeroInput));
    }

    #[test]
    fn display_is_stable() {
        let p = op("3/2 x1^2 d1 - d2 + 1", 2);
        assert_eq!(p.to_string(), "3/2 x1^2 d1 - d2 + 1");
        assert_eq!(Operator::zero(2).to_string(), "0");
        let v = parse_vector("3/2 x1^2 d1 e1 - d2 e1", 2, 1).unwrap();
        assert_eq!(v.to_string(), "3/2 x1^2 d1 e1 - d2 e1");
    }
}

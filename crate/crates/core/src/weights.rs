//! Weight forms, the orders they induce, principal symbols and the term
//! order behind privileged exponents.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};
use crate::filtration::{multi_weight, ShiftMatrix};
use crate::weyl::{format_rational, Monomial, OpVec, Operator, Rational};

/// `Lambda(a, b) = sum e_i a_i + sum f_i b_i` with `e_i <= 0` and
/// `e_i + f_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralForm {
    e: Vec<Rational>,
    f: Vec<Rational>,
}

impl GeneralForm {
    pub fn new(e: Vec<Rational>, f: Vec<Rational>) -> Result<Self> {
        if e.len() != f.len() {
            return Err(AlgebraError::InvalidForm("e and f differ in length".into()));
        }
        for (i, (ei, fi)) in e.iter().zip(&f).enumerate() {
            if ei.is_positive() {
                return Err(AlgebraError::InvalidForm(format!("e{} > 0", i + 1)));
            }
            if (ei + fi).is_negative() {
                return Err(AlgebraError::InvalidForm(format!("e{0} + f{0} < 0", i + 1)));
            }
        }
        Ok(GeneralForm { e, f })
    }

    /// The form of the usual order filtration: `e = 0`, `f = 1`.
    pub fn usual(n: usize) -> Self {
        GeneralForm {
            e: vec![Rational::zero(); n],
            f: vec![Rational::one(); n],
        }
    }

    /// `L~(a, b) = L(b) - L(a)`, padded with zeros beyond `k`.
    pub fn lift(l: &LinearForm, n: usize) -> Result<Self> {
        if l.k() > n {
            return Err(AlgebraError::DescriptorMismatch(format!(
                "form of length {} on n = {n}",
                l.k()
            )));
        }
        let mut f = l.coeffs.clone();
        f.resize(n, Rational::zero());
        let e = f.iter().map(|c| -c).collect();
        Ok(GeneralForm { e, f })
    }

    pub fn n(&self) -> usize {
        self.e.len()
    }

    pub fn eval(&self, m: &Monomial) -> Rational {
        let mut v = Rational::zero();
        for i in 0..self.n() {
            v += &self.e[i] * Rational::from_integer(m.x[i].into());
            v += &self.f[i] * Rational::from_integer(m.d[i].into());
        }
        v
    }
}

/// `ord^Lambda(P)`; `None` stands for `-infinity` (the zero operator).
pub fn ord_general(p: &Operator, lambda: &GeneralForm) -> Result<Option<Rational>> {
    if lambda.n() != p.n() {
        return Err(AlgebraError::DescriptorMismatch(format!(
            "form over n = {} applied to an operator over n = {}",
            lambda.n(),
            p.n()
        )));
    }
    Ok(p.terms().map(|(m, _)| lambda.eval(m)).max())
}

/// A nonnegative rational linear form on `Q^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(AlgebraError::InvalidForm("empty form".into()));
        }
        if let Some(i) = coeffs.iter().position(Signed::is_negative) {
            return Err(AlgebraError::InvalidForm(format!(
                "coefficient {} is negative",
                i + 1
            )));
        }
        Ok(LinearForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        LinearForm::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(k: usize) -> Self {
        LinearForm {
            coeffs: vec![Rational::zero(); k],
        }
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, v: &[i64]) -> Rational {
        self.coeffs
            .iter()
            .zip(v)
            .map(|(c, &x)| c * Rational::from_integer(x.into()))
            .sum()
    }

    /// `(c, den)` with `L = c / den`, `c` integral and `den > 0` minimal.
    pub fn integer_scaled(&self) -> (Vec<i64>, i64) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let c = self
            .coeffs
            .iter()
            .map(|q| {
                (q * Rational::from_integer(den.clone()))
                    .to_integer()
                    .to_i64()
                    .expect("weight fits in i64")
            })
            .collect();
        (c, den.to_i64().expect("denominator fits in i64"))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn check_weight_shape(b: &OpVec, l: &LinearForm, shifts: &ShiftMatrix) -> Result<()> {
    if l.k() != shifts.k() || b.rank() != shifts.rank() || l.k() > b.n() {
        return Err(AlgebraError::DescriptorMismatch(format!(
            "form of length {} with a {}x{} shift matrix on rank {} over n = {}",
            l.k(),
            shifts.k(),
            shifts.rank(),
            b.rank(),
            b.n()
        )));
    }
    Ok(())
}

/// Shifted `L~`-weight of one term: `L(b - a) + L(n^(i))`; `t` counts 0.
pub fn term_weight(m: &Monomial, comp: usize, l: &LinearForm, shifts: &ShiftMatrix) -> Rational {
    l.eval(&multi_weight(m, comp, shifts))
}

/// `ord^L` of a vector with the shift `L(n^(i))` on component `i`.
/// `None` is `-infinity`.
pub fn ord_l_vec(b: &OpVec, l: &LinearForm, shifts: &ShiftMatrix) -> Result<Option<Rational>> {
    check_weight_shape(b, l, shifts)?;
    Ok(b.terms()
        .map(|(i, m, _)| term_weight(m, i, l, shifts))
        .max())
}

/// `ord^L` of a scalar operator (no shift).
pub fn ord_l(p: &Operator, l: &LinearForm) -> Result<Option<Rational>> {
    let v = OpVec::embed(p.clone(), 1, 1);
    ord_l_vec(&v, l, &ShiftMatrix::zero(l.k(), 1))
}

/// Representative of `sigma^L_d(B)`: the terms of weight exactly `d`.
pub fn symbol_l(b: &OpVec, l: &LinearForm, shifts: &ShiftMatrix, d: &Rational) -> Result<OpVec> {
    if let Some(ord) = ord_l_vec(b, l, shifts)? {
        if &ord > d {
            return Err(AlgebraError::Precondition(format!(
                "ord^L = {} exceeds d = {}",
                format_rational(&ord),
                format_rational(d)
            )));
        }
    }
    Ok(b.filter_terms(|i, m| &term_weight(m, i, l, shifts) == d))
}

/// `sigma^L(B)`, the symbol at `d = ord^L(B)`; zero for `B = 0`.
pub fn principal_symbol(b: &OpVec, l: &LinearForm, shifts: &ShiftMatrix) -> Result<OpVec> {
    match ord_l_vec(b, l, shifts)? {
        None => Ok(b.clone()),
        Some(d) => symbol_l(b, l, shifts, &d),
    }
}

/// Optional grading compared before everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grading {
    None,
    /// `|b|`, the usual order.
    Usual,
    /// `|a| + |b| + 2l`, for which `[d_i, x_i] = t` is homogeneous.
    Bihomogeneous,
}

/// The fixed well order on exponents `(a, b, l, i)`: optional grading, the
/// shifted weight of a reference form, the degree `|a| + |b|`, reverse
/// lexicographic on `(d, x, t)` with `t` smallest, and finally the component,
/// where a smaller index ranks higher.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    grading: Grading,
    weight: Option<WeightKey>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct WeightKey {
    form: LinearForm,
    shifts: ShiftMatrix,
    scaled: Vec<i64>,
    comp_offsets: Vec<i64>,
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder {
            grading: Grading::None,
            weight: None,
        }
    }
}

impl TermOrder {
    pub const NAME: &'static str = "deg-revlex-pot";

    pub fn graded(grading: Grading) -> Self {
        TermOrder {
            grading,
            weight: None,
        }
    }

    /// The default order refined first by the shifted `L~`-weight.
    pub fn weighted(l: &LinearForm, shifts: &ShiftMatrix) -> Result<Self> {
        if l.k() != shifts.k() {
            return Err(AlgebraError::DescriptorMismatch(format!(
                "form of length {} with shifts in Z^{}",
                l.k(),
                shifts.k()
            )));
        }
        let (scaled, _) = l.integer_scaled();
        let comp_offsets = shifts
            .columns()
            .iter()
            .map(|c| scaled.iter().zip(c).map(|(a, b)| a * b).sum())
            .collect();
        Ok(TermOrder {
            grading: Grading::None,
            weight: Some(WeightKey {
                form: l.clone(),
                shifts: shifts.clone(),
                scaled,
                comp_offsets,
            }),
        })
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn weight(&self) -> Option<&LinearForm> {
        self.weight.as_ref().map(|w| &w.form)
    }

    pub fn shifts(&self) -> Option<&ShiftMatrix> {
        self.weight.as_ref().map(|w| &w.shifts)
    }

    /// Integer weight proportional to the shifted `L~`-weight, 0 without a
    /// reference form.
    pub fn scaled_weight(&self, comp: usize, m: &Monomial) -> i64 {
        match &self.weight {
            None => 0,
            Some(w) => {
                let mut v = w.comp_offsets[comp];
                for (j, c) in w.scaled.iter().enumerate() {
                    v += c * (m.d[j] as i64 - m.x[j] as i64);
                }
                v
            }
        }
    }

    /// A sort key: `key(a) < key(b)` iff `a` ranks below `b`.
    pub fn key(&self, comp: usize, m: &Monomial) -> Vec<i64> {
        let n = m.n();
        let mut k = Vec::with_capacity(2 * n + 6);
        match self.grading {
            Grading::None => {}
            Grading::Usual => k.push(m.d_degree() as i64),
            Grading::Bihomogeneous => k.push(m.bi_degree() as i64),
        }
        if self.weight.is_some() {
            k.push(self.scaled_weight(comp, m));
        }
        k.push((m.x_degree() + m.d_degree()) as i64);
        k.push(-(m.t as i64));
        k.extend(m.x.iter().rev().map(|&e| -(e as i64)));
        k.extend(m.d.iter().rev().map(|&e| -(e as i64)));
        k.push(-(m.s_exponent() as i64));
        k.push(-(comp as i64));
        k
    }

    pub fn compare(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        let gr = |m: &Monomial| match self.grading {
            Grading::None => 0,
            Grading::Usual => m.d_degree(),
            Grading::Bihomogeneous => m.bi_degree(),
        };
        gr(a.1)
            .cmp(&gr(b.1))
            .then_with(|| {
                self.scaled_weight(a.0, a.1)
                    .cmp(&self.scaled_weight(b.0, b.1))
            })
            .then_with(|| a.1.cmp_degrevlex(b.1))
            .then_with(|| b.0.cmp(&a.0))
    }
}

/// The maximal `(component, exponent)` of `G` under `ord`.
pub fn privileged_exponent(g: &OpVec, ord: &TermOrder) -> Result<(usize, Monomial)> {
    g.terms()
        .map(|(i, m, _)| (i, m))
        .max_by(|a, b| ord.compare(*a, *b))
        .map(|(i, m)| (i, m.clone()))
        .ok_or(AlgebraError::ZeroInput)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{parse_element, parse_operator, parse_vector};
    use crate::sample;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn lf(v: &[i64]) -> LinearForm {
        LinearForm::from_i64(v).unwrap()
    }

    #[test]
    fn ord_general_examples() {
        let lam = GeneralForm::lift(&lf(&[1, 0]), 2).unwrap();
        let p = parse_operator("x1^2 d1", 2).unwrap();
        assert_eq!(ord_general(&p, &lam).unwrap(), Some(q(-1, 1)));
        assert_eq!(ord_general(&Operator::zero(2), &lam).unwrap(), None);
        let lam = GeneralForm::lift(&lf(&[1, 1]), 2).unwrap();
        let p = parse_operator("d1 d2 + x2", 2).unwrap();
        assert_eq!(ord_general(&p, &lam).unwrap(), Some(q(2, 1)));
        assert!(GeneralForm::new(vec![q(1, 1)], vec![q(0, 1)]).is_err());
        assert!(GeneralForm::new(vec![q(-2, 1)], vec![q(1, 1)]).is_err());
    }

    #[test]
    fn ord_l_vec_examples() {
        let shifts = ShiftMatrix::new(vec![vec![0, 0], vec![1, 0]]).unwrap();
        let l = lf(&[1, 0]);
        let b = parse_vector("d1 e1", 2, 2).unwrap();
        assert_eq!(ord_l_vec(&b, &l, &shifts).unwrap(), Some(q(1, 1)));
        let b = parse_vector("x1 e2", 2, 2).unwrap();
        assert_eq!(ord_l_vec(&b, &l, &shifts).unwrap(), Some(q(0, 1)));
        let b = parse_vector("d1 e1 + x1 e2", 2, 2).unwrap();
        assert_eq!(ord_l_vec(&b, &l, &shifts).unwrap(), Some(q(1, 1)));
    }

    #[test]
    fn symbol_examples() {
        let z1 = ShiftMatrix::zero(1, 1);
        let p = parse_element("d1 + x1", 1, 1).unwrap();
        assert_eq!(
            principal_symbol(&p, &lf(&[1]), &z1).unwrap(),
            parse_element("d1", 1, 1).unwrap()
        );
        assert!(symbol_l(&p, &lf(&[1]), &z1, &q(2, 1)).unwrap().is_zero());
        assert!(symbol_l(&p, &lf(&[1]), &z1, &q(0, 1)).is_err());
        let p = parse_element("x1 d1 + x2 d2", 2, 1).unwrap();
        let z2 = ShiftMatrix::zero(2, 1);
        assert_eq!(symbol_l(&p, &lf(&[1, 1]), &z2, &q(0, 1)).unwrap(), p);
    }

    #[test]
    fn privileged_exponent_examples() {
        let ord = TermOrder::default();
        let g = parse_vector("x1 e1", 1, 1).unwrap();
        assert_eq!(privileged_exponent(&g, &ord).unwrap().1.x, vec![1]);
        let g = parse_vector("d1 e1 + x1 t e1", 1, 1).unwrap();
        let (i, m) = privileged_exponent(&g, &ord).unwrap();
        assert_eq!((i, m), (0, Monomial::new(vec![0], vec![1], 0)));
        assert!(matches!(
            privileged_exponent(&OpVec::zero(1, 1), &ord),
            Err(AlgebraError::ZeroInput)
        ));
        let w = TermOrder::weighted(&lf(&[1]), &ShiftMatrix::zero(1, 1)).unwrap();
        let g = parse_vector("x1^3 d1^2 e1 + d1 e1", 1, 1).unwrap();
        assert_eq!(privileged_exponent(&g, &w).unwrap().1.d, vec![1]);
    }

    #[test]
    fn key_agrees_with_compare() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shifts = ShiftMatrix::new(vec![vec![0, 1], vec![2, -1]]).unwrap();
        let orders = [
            TermOrder::default(),
            TermOrder::graded(Grading::Usual),
            TermOrder::graded(Grading::Bihomogeneous),
            TermOrder::weighted(&LinearForm::new(vec![q(1, 2), q(3, 1)]).unwrap(), &shifts)
                .unwrap(),
        ];
        for _ in 0..300 {
            let a = sample::monomial(&mut rng, 2, 3, true);
            let b = sample::monomial(&mut rng, 2, 3, true);
            let (ca, cb) = (rng_comp(&mut rng), rng_comp(&mut rng));
            for o in &orders {
                assert_eq!(
                    o.key(ca, &a).cmp(&o.key(cb, &b)),
                    o.compare((ca, &a), (cb, &b))
                );
            }
        }
    }

    fn rng_comp(rng: &mut ChaCha8Rng) -> usize {
        use rand::Rng;
        rng.gen_range(0..2)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn symbols_are_multiplicative(seed in any::<u64>(), l1 in 0i64..4, l2 in 0i64..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 2;
            let p = sample::operator(&mut rng, n, 3, 4, false);
            let qq = sample::operator(&mut rng, n, 3, 4, false);
            let l = lf(&[l1, l2]);
            let z = ShiftMatrix::zero(2, 1);
            let emb = |o: &Operator| OpVec::embed(o.clone(), 1, 1);
            let sp = principal_symbol(&emb(&p), &l, &z).unwrap();
            let sq = principal_symbol(&emb(&qq), &l, &z).unwrap();
            let spq = principal_symbol(&emb(&p.mul(&qq).unwrap()), &l, &z).unwrap();
            // gr^L(D) is D itself with a grading, so the product of symbols is
            // already homogeneous
            let prod = emb(&sp.component(0).mul(sq.component(0)).unwrap());
            prop_assert_eq!(spq, prod);
            let lam = GeneralForm::lift(&l, n).unwrap();
            let opq = ord_general(&p.mul(&qq).unwrap(), &lam).unwrap();
            let op = ord_general(&p, &lam).unwrap();
            let oq = ord_general(&qq, &lam).unwrap();
            match (op, oq) {
                (Some(a), Some(b)) => prop_assert_eq!(opq, Some(a + b)),
                _ => prop_assert_eq!(opq, None),
            }
        }

        #[test]
        fn usual_form_is_usual_order(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = sample::operator(&mut rng, 3, 4, 5, false);
            let o = ord_general(&p, &GeneralForm::usual(3)).unwrap();
            prop_assert_eq!(o, p.usual_order().map(|d| Rational::from_integer(d.into())));
        }

        #[test]
        fn lower_terms_do_not_change_order(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = OpVec::embed(sample::operator(&mut rng, 2, 3, 4, false), 1, 1);
            let l = lf(&[1, 2]);
            let z = ShiftMatrix::zero(2, 1);
            if let Some(o) = ord_l_vec(&p, &l, &z).unwrap() {
                let m = Monomial::new(vec![5, 5], vec![0, 0], 0);
                let w = term_weight(&m, 0, &l, &z);
                prop_assume!(w < o);
                let extra = OpVec::embed(Operator::monomial(2, m, Rational::one()), 1, 1);
                prop_assert_eq!(ord_l_vec(&(&p + &extra), &l, &z).unwrap(), Some(o));
            }
        }

        #[test]
        fn privileged_exponent_is_in_support(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = sample::vector(&mut rng, 2, 2, 3, 4, true);
            prop_assume!(!g.is_zero());
            let (i, m) = privileged_exponent(&g, &TermOrder::default()).unwrap();
            prop_assert!(!g.coefficient(i, &m).is_zero());
        }
    }
}

//! One check per acceptance criterion, parameterized by size so that unit
//! suites can run them small and the acceptance target at full size. Each
//! returns a short summary on success and the first discrepancy otherwise.

use std::collections::BTreeSet;

use dfan_core::fan::weight_class;
use dfan_core::flatness::{
    kernel_normalize, monomial_filtration, FlatCertificate, KernelNormalization, MonomialIdeal,
    Truncation, WPoly,
};
use dfan_core::grammar::parse_element;
use dfan_core::rees::{from_a, from_a_in_degree, to_a};
use dfan_core::sample;
use dfan_core::weyl::Rational;
use dfan_core::{
    divide, fiber_v_zero_test, flat_decompose, rees_mul, standard_fan, AlgebraError, BasicCone,
    FanLimits, FiberVerdict, HomogenizedModule, LinearForm, Monomial, OpVec, Operator, ReesElement,
    ShiftMatrix, StandardBasis, TermOrder,
};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::evaluator::{apply, box_points, monomial as poly_monomial, product_agrees, Poly};
use crate::linear::products_span;
use crate::monomial::{colon_is_coordinate, exponents, in_ideal, quotient_dim};
use crate::rees::iv_term;
use crate::symbols::{l_weight, top_part, v_weight};
use crate::syzygy;

pub type Check = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn op_degree(v: &OpVec) -> u32 {
    v.terms()
        .map(|(_, m, _)| m.x_degree() + m.d_degree())
        .max()
        .unwrap_or(0)
}

// ---------------------------------------------------------------------------
// 1. the worked fiber example

/// `N = D (1 + x1^2 d1)`, `k = 1`: the fiber vanishes because the
/// generator itself lies in `N cap V_0` with exact-weight part `1`.
pub fn fiber_example() -> Check {
    let g = parse_element("1 + x1^2 d1", 1, 1).map_err(|e| e.to_string())?;
    let shifts = ShiftMatrix::zero(1, 1);
    let verdict =
        fiber_v_zero_test(std::slice::from_ref(&g), &shifts, None).map_err(|e| e.to_string())?;
    let FiberVerdict::Zero { witnesses } = verdict else {
        return Err(format!("expected a zero fiber, got {verdict:?}"));
    };
    let w = &witnesses[0];
    let span = products_span(&[g], op_degree(w).max(3));
    if !span.contains(w) {
        return Err(format!(
            "witness {w} is not a combination of multiples of the generator"
        ));
    }
    let mut exact = OpVec::zero(1, 1);
    for (c, m, x) in w.terms() {
        let wt = v_weight(m, c, &shifts)[0];
        if wt > 0 {
            return Err(format!("witness {w} is not in V_0"));
        }
        if wt == 0 {
            exact = &exact + &OpVec::embed(Operator::monomial(1, m.clone(), x.clone()), 1, c + 1);
        }
    }
    if exact != OpVec::unit(1, 1, 1) {
        return Err(format!("exact-weight part of {w} is {exact}, not 1"));
    }
    Ok(format!("witness {w}: 1 lies in R_V(N) + m R_V(D)"))
}

// ---------------------------------------------------------------------------
// 2. ring axioms

fn mul(p: &Operator, q: &Operator, homogenized: bool) -> Operator {
    if homogenized {
        p.mul_dt(q).expect("same n")
    } else {
        p.mul(q).expect("same n")
    }
}

/// Each check draws `P, Q, R` of degree `<= 4` with `n <= 3` and tests the
/// product against the polynomial action, associativity, and the defining
/// commutators `[d_i, x_j] = delta_ij` (times `t` in `D[t]`).
pub fn ring_axioms(count: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    for i in 0..count {
        let homogenized = i % 2 == 1;
        let n = rng.gen_range(1..=3);
        let p = sample::operator(&mut rng, n, 4, 3, homogenized);
        let q = sample::operator(&mut rng, n, 4, 3, homogenized);
        let r = sample::operator(&mut rng, n, 4, 2, homogenized);
        let pq = mul(&p, &q, homogenized);
        if !product_agrees(&p, &q, &pq, homogenized) {
            return Err(format!(
                "check {i}: ({p}) * ({q}) = {pq} disagrees with the action"
            ));
        }
        if mul(&pq, &r, homogenized) != mul(&p, &mul(&q, &r, homogenized), homogenized) {
            return Err(format!("check {i}: associativity fails for {p}, {q}, {r}"));
        }
        let a = rng.gen_range(1..=n);
        let b = rng.gen_range(1..=n);
        let (d, x) = (Operator::d(n, a), Operator::x(n, b));
        let comm = &mul(&d, &x, homogenized) - &mul(&x, &d, homogenized);
        let expected = match (a == b, homogenized) {
            (false, _) => Operator::zero(n),
            (true, false) => Operator::one(n),
            (true, true) => Operator::t(n),
        };
        if comm != expected {
            return Err(format!("check {i}: [d{a}, x{b}] = {comm}"));
        }
    }
    Ok(format!("{count} checks"))
}

// ---------------------------------------------------------------------------
// 3. symbols

fn random_form<R: Rng>(rng: &mut R, k: usize) -> LinearForm {
    loop {
        let c: Vec<Rational> = (0..k)
            .map(|_| {
                Rational::new(
                    rng.gen_range(0..=4i64).into(),
                    rng.gen_range(1..=3i64).into(),
                )
            })
            .collect();
        if c.iter().any(|x| !x.is_zero()) {
            return LinearForm::new(c).expect("nonnegative");
        }
    }
}

/// `sigma^L(PQ) = sigma^L(P) sigma^L(Q)`, symbols taken term by term.
pub fn symbol_multiplicativity(pairs: usize, forms: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    for i in 0..pairs {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=n);
        let shifts = ShiftMatrix::zero(k, 1);
        let p = OpVec::embed(sample::operator(&mut rng, n, 4, 4, false), 1, 1);
        let q = sample::operator(&mut rng, n, 4, 4, false);
        let pq = p.left_mul(&q).expect("same n");
        for _ in 0..forms {
            let l = random_form(&mut rng, k);
            let sp = top_part(&p, &l, &shifts);
            let sq = top_part(&OpVec::embed(q.clone(), 1, 1), &l, &shifts);
            let lhs = top_part(&pq, &l, &shifts);
            let rhs = sp.left_mul(sq.component(0)).expect("same n");
            if lhs != rhs {
                return Err(format!(
                    "pair {i}, L = {l}: sigma(QP) = {lhs}, product of symbols {rhs}"
                ));
            }
            let core = dfan_core::weights::principal_symbol(&pq, &l, &shifts)
                .map_err(|e| e.to_string())?;
            if core != lhs {
                return Err(format!(
                    "pair {i}, L = {l}: principal_symbol gives {core}, expected {lhs}"
                ));
            }
        }
    }
    Ok(format!("{pairs} pairs x {forms} forms"))
}

// ---------------------------------------------------------------------------
// 4. division

fn bi_degree(m: &Monomial) -> u32 {
    m.x_degree() + m.d_degree() + 2 * m.t
}

fn lead(v: &OpVec, order: &TermOrder) -> Option<(usize, Monomial)> {
    let mut best: Option<(usize, Monomial)> = None;
    for (c, m, _) in v.terms() {
        best = match best {
            Some((bc, bm)) if order.compare((bc, &bm), (c, m)) != std::cmp::Ordering::Less => {
                Some((bc, bm))
            }
            _ => Some((c, m.clone())),
        };
    }
    best
}

fn ord(v: &OpVec, l: &LinearForm, shifts: &ShiftMatrix) -> Option<Rational> {
    v.terms().map(|(c, m, _)| l_weight(m, c, l, shifts)).max()
}

/// Recomposition through the polynomial action, so the product used by the
/// division is not trusted: for every component `i`,
/// `G_i = sum_m A_m H_m,i + R_i` on every `x^e` in a box.
fn recomposes(g: &OpVec, quotients: &[Operator], divisors: &[OpVec], rem: &OpVec) -> bool {
    let n = g.n();
    let mut corner = vec![0u32; n];
    let mut bump = |v: &OpVec| {
        for (_, m, _) in v.terms() {
            for i in 0..n {
                corner[i] = corner[i].max(m.d[i]);
            }
        }
    };
    bump(g);
    bump(rem);
    let qmax: Vec<u32> = (0..n)
        .map(|i| {
            quotients
                .iter()
                .flat_map(|a| a.terms().map(move |(m, _)| m.d[i]))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let hmax: Vec<u32> = (0..n)
        .map(|i| {
            divisors
                .iter()
                .flat_map(|h| h.terms().map(move |(_, m, _)| m.d[i]))
                .max()
                .unwrap_or(0)
        })
        .collect();
    for i in 0..n {
        corner[i] = corner[i].max(qmax[i] + hmax[i]);
    }
    let points = box_points(&corner);
    (0..g.rank()).all(|comp| {
        points.iter().all(|e| {
            let f = poly_monomial(e.clone());
            let mut rhs: Poly = apply(rem.component(comp), &f, true);
            for (a, h) in quotients.iter().zip(divisors) {
                let part = apply(a, &apply(h.component(comp), &f, true), true);
                for (k, v) in part {
                    let x = rhs.entry(k.clone()).or_insert_with(Rational::zero);
                    *x += v;
                    if x.is_zero() {
                        rhs.remove(&k);
                    }
                }
            }
            apply(g.component(comp), &f, true) == rhs
        })
    })
}

/// The division contract checked from the definitions.
pub fn division_contract(g: &OpVec, basis: &StandardBasis) -> Result<(), String> {
    let res = divide(g, basis).map_err(|e| e.to_string())?;
    let hs = basis.elements();
    if !recomposes(g, &res.quotients, &hs, &res.remainder) {
        return Err(format!("G = {g}: recomposition fails"));
    }
    let order = basis.order();
    let exps = basis.privileged_exponents();
    for (i, u, _) in res.remainder.terms() {
        let su = res.s_degree.saturating_sub(bi_degree(u));
        for (h, (c, m)) in hs.iter().zip(&exps) {
            let ecart = h.terms().map(|(_, m, _)| bi_degree(m)).max().unwrap_or(0) - bi_degree(m);
            if *c == i && m.divides(u) && ecart <= su {
                return Err(format!(
                    "G = {g}: remainder term divisible by a privileged exponent"
                ));
            }
        }
    }
    let g_lead = lead(g, order);
    let l = basis.form();
    let g_ord = ord(g, l, basis.shifts());
    for (a, h) in res.quotients.iter().zip(&hs) {
        let ah = h.left_mul_dt(a).map_err(|e| e.to_string())?;
        if ah.is_zero() {
            continue;
        }
        let (ac, am) = lead(&ah, order).expect("nonzero");
        let Some((gc, gm)) = &g_lead else {
            return Err("nonzero quotient for G = 0".into());
        };
        if order.compare((ac, &am), (*gc, gm)) == std::cmp::Ordering::Greater {
            return Err(format!("G = {g}: exp(A H) above exp(G)"));
        }
        if ord(&ah, l, basis.shifts()) > g_ord {
            return Err(format!("G = {g}: ord(A H) above ord(G)"));
        }
    }
    Ok(())
}

fn random_module<R: Rng>(rng: &mut R) -> Option<(HomogenizedModule, LinearForm)> {
    let n = 2;
    let k = rng.gen_range(1..=2);
    let r = rng.gen_range(1..=2);
    let cols = (0..r)
        .map(|_| (0..k).map(|_| rng.gen_range(-1..=1)).collect())
        .collect();
    let shifts = ShiftMatrix::new(cols).ok()?;
    let count = rng.gen_range(1..=2);
    let gens: Vec<OpVec> = (0..count)
        .map(|_| sample::vector(rng, n, r, 2, 3, false))
        .collect();
    let module = HomogenizedModule::new(gens, shifts).ok()?;
    Some((module, random_form(rng, k)))
}

/// `count` divisions: a third are self-divisions, a third are combinations
/// `sum A_m H_m` (remainder must vanish), the rest combinations plus random
/// F-homogeneous terms.
pub fn divisions(count: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut done = 0;
    let mut modules = 0;
    while done < count {
        let Some((module, l)) = random_module(&mut rng) else {
            continue;
        };
        let Ok(basis) = module.standard_basis(&l) else {
            continue;
        };
        modules += 1;
        let hs = basis.elements();
        for round in 0..10 {
            if done == count {
                break;
            }
            let (n, r) = (basis.n(), basis.rank());
            let g = match round % 3 {
                0 => hs[rng.gen_range(0..hs.len())].clone(),
                _ => {
                    let d = hs.iter().filter_map(|h| h.f_degree()).max().unwrap_or(0)
                        + rng.gen_range(0..=1);
                    let mut g = if round % 3 == 2 {
                        sample::f_homogeneous(&mut rng, n, r, d, 3, 2)
                    } else {
                        OpVec::zero(n, r)
                    };
                    for h in &hs {
                        let dh = h.f_degree().unwrap_or(0);
                        if dh <= d && rng.gen_bool(0.7) {
                            let a = sample::f_homogeneous(&mut rng, n, 1, d - dh, 2, 2);
                            g = &g + &h.left_mul_dt(a.component(0)).expect("same n");
                        }
                    }
                    g
                }
            };
            if g.is_zero() {
                continue;
            }
            division_contract(&g, &basis)?;
            if round % 3 != 2 {
                let res = divide(&g, &basis).map_err(|e| e.to_string())?;
                if !res.remainder.is_zero() {
                    return Err(format!(
                        "{g} lies in h(N) but leaves remainder {}",
                        res.remainder
                    ));
                }
            }
            done += 1;
        }
    }
    Ok(format!("{count} divisions over {modules} modules"))
}

// ---------------------------------------------------------------------------
// 5. fans

/// Rationals in `[0, 8]` with denominator at most 4, without repetition.
pub fn grid_values() -> Vec<Rational> {
    let set: BTreeSet<Rational> = (1..=4i64)
        .flat_map(|q| (0..=8 * q).map(move |p| Rational::new(p.into(), q.into())))
        .collect();
    set.into_iter().collect()
}

/// Every grid weight is classified by the fan exactly as by computing its
/// standard basis directly.
pub fn fan_matches_grid(module: &HomogenizedModule, expected_cones: Option<usize>) -> Check {
    let fan = standard_fan(module, FanLimits::default()).map_err(|e| e.to_string())?;
    if let Some(c) = expected_cones {
        if fan.cones().len() != c {
            return Err(format!("expected {c} cones, found {}", fan.cones().len()));
        }
    }
    let values = grid_values();
    let mut checked = 0;
    for a in &values {
        for b in &values {
            let l = LinearForm::new(vec![a.clone(), b.clone()]).expect("nonnegative");
            let direct = weight_class(module, &l).map_err(|e| e.to_string())?;
            let cone = fan.cone_of_weight(&l).map_err(|e| format!("{l}: {e}"))?;
            if cone.basis().key() != direct {
                return Err(format!(
                    "weight {l}: fan cone basis differs from the direct basis"
                ));
            }
            checked += 1;
        }
    }
    let cones = fan.cones().len();
    let noun = if cones == 1 { "cone" } else { "cones" };
    Ok(format!("{cones} {noun}, {checked} grid weights"))
}

/// Random two-generator modules with `n = k = 2` and degree `<= 3`. Draws
/// whose fan has a single cone (monomial generators, for instance) or
/// exceeds the default limits are skipped, so every kept module has walls
/// for the grid to straddle.
pub fn random_fan_modules(count: usize, seed: u64) -> Vec<(u64, HomogenizedModule)> {
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < count {
        let mut rng = rng(s);
        let gens: Vec<OpVec> = (0..2)
            .map(|_| OpVec::embed(sample::operator(&mut rng, 2, 3, 3, false), 1, 1))
            .collect();
        if let Ok(m) = HomogenizedModule::new(gens, ShiftMatrix::zero(2, 1)) {
            if matches!(standard_fan(&m, FanLimits::default()), Ok(f) if f.cones().len() > 1) {
                out.push((s, m));
            }
        }
        s += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// 6. i_V

/// `(component, X-exponent, D-exponent, U-exponent)` of a term in `A`.
type ATerm = (usize, Vec<u32>, Vec<u32>, Vec<u32>);

/// Graded bijection and multiplicativity of `i_V` on random homogeneous
/// elements.
pub fn iv_isomorphism(count: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    for i in 0..count {
        let n = 2;
        let k = rng.gen_range(1..=2);
        let r = rng.gen_range(1..=2);
        let cols = (0..r)
            .map(|_| (0..k).map(|_| rng.gen_range(-1..=1)).collect())
            .collect();
        let shifts = ShiftMatrix::new(cols).expect("k >= 1");
        let op = sample::vector(&mut rng, n, r, 3, 3, false);
        let top: Vec<i64> = (0..k)
            .map(|j| {
                op.terms()
                    .map(|(c, m, _)| v_weight(m, c, &shifts)[j])
                    .max()
                    .expect("nonzero")
            })
            .collect();
        let s: Vec<i64> = top.iter().map(|t| t + rng.gen_range(0..=2)).collect();
        let e =
            ReesElement::plain(op.clone(), s.clone(), shifts.clone()).map_err(|e| e.to_string())?;
        let a = to_a(&e).map_err(|e| e.to_string())?;
        let mut expected: BTreeSet<ATerm> = BTreeSet::new();
        for (c, m, _) in op.terms() {
            let (x, d, u) = iv_term(m, c, &s, &shifts).ok_or("term outside V_s")?;
            expected.insert((c, x, d, u));
        }
        let got: BTreeSet<_> = a
            .terms()
            .map(|(c, m, _)| (c, m.x.clone(), m.d.clone(), m.u.clone()))
            .collect();
        if got != expected {
            return Err(format!(
                "element {i}: i_V of {op} in degree {s:?} has the wrong terms"
            ));
        }
        if a.degree().as_deref() != Some(&s[..]) {
            return Err(format!(
                "element {i}: image not homogeneous of degree {s:?}"
            ));
        }
        if from_a(&a).map_err(|e| e.to_string())? != e
            || from_a_in_degree(&a, &s).map_err(|e| e.to_string())? != e
        {
            return Err(format!("element {i}: inverse does not return the element"));
        }
        let p = sample::operator(&mut rng, n, 2, 2, false);
        let pw: Vec<i64> = (0..k)
            .map(|j| {
                p.terms()
                    .map(|(m, _)| v_weight(m, 0, &ShiftMatrix::zero(k, 1))[j])
                    .max()
                    .expect("nonzero")
            })
            .collect();
        let e1 = ReesElement::plain(OpVec::embed(p, 1, 1), pw, ShiftMatrix::zero(k, 1))
            .map_err(|e| e.to_string())?;
        let prod = rees_mul(&e1, &e).map_err(|e| e.to_string())?;
        let lhs = to_a(&prod).map_err(|e| e.to_string())?;
        let rhs = to_a(&e1)
            .map_err(|e| e.to_string())?
            .mul(&a)
            .map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("element {i}: i_V(P u^a . e) != i_V(P u^a) i_V(e)"));
        }
    }
    Ok(format!("{count} elements"))
}

// ---------------------------------------------------------------------------
// 7. kernel normalization

fn w_exp<R: Rng>(rng: &mut R, k: usize, top: u32) -> Vec<u32> {
    (0..k).map(|_| rng.gen_range(0..=top)).collect()
}

/// A random relation built from Koszul pairs, so `sum W^(a_i) Q_i = 0`.
pub fn random_syzygy<R: Rng>(rng: &mut R) -> (Vec<Vec<u32>>, Vec<WPoly>) {
    let k = rng.gen_range(1..=3);
    let r = rng.gen_range(2..=4);
    let n = 2;
    let mut exps: Vec<Vec<u32>> = Vec::new();
    while exps.len() < r {
        let a = w_exp(rng, k, 2);
        if !exps.contains(&a) {
            exps.push(a);
        }
        if k == 1 && exps.len() == 3 {
            break;
        }
    }
    let mut ops = vec![WPoly::zero(n, k); exps.len()];
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(0..exps.len());
        let j = rng.gen_range(0..exps.len());
        if i == j {
            continue;
        }
        let lcm: Vec<u32> = exps[i]
            .iter()
            .zip(&exps[j])
            .map(|(a, b)| *a.max(b))
            .collect();
        let extra = w_exp(rng, k, 1);
        let p = sample::operator(rng, n, 2, 2, false);
        let wi: Vec<u32> = lcm
            .iter()
            .zip(&exps[i])
            .zip(&extra)
            .map(|((l, a), e)| l - a + e)
            .collect();
        let wj: Vec<u32> = lcm
            .iter()
            .zip(&exps[j])
            .zip(&extra)
            .map(|((l, a), e)| l - a + e)
            .collect();
        ops[i] = ops[i].add(&WPoly::monomial(wi, &p).expect("t-free"));
        ops[j] = ops[j].add(
            &WPoly::monomial(wj, &p)
                .expect("t-free")
                .scale(&-Rational::one()),
        );
    }
    (exps, ops)
}

pub fn kernel_normalizations(count: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    for i in 0..count {
        let (exps, ops) = random_syzygy(&mut rng);
        if !syzygy::relation(&exps, &ops).is_empty() {
            return Err(format!("syzygy {i}: generator produced a non-relation"));
        }
        let norm: KernelNormalization =
            kernel_normalize(&exps, &ops).map_err(|e| format!("syzygy {i}: {e}"))?;
        syzygy::check(&norm).map_err(|e| format!("syzygy {i}: {e}"))?;
        let bump = ops[0]
            .add(&WPoly::monomial(vec![0; exps[0].len()], &Operator::one(2)).expect("t-free"));
        let mut broken = ops.clone();
        broken[0] = bump;
        if kernel_normalize(&exps, &broken) != Err(AlgebraError::RelationFails) {
            return Err(format!("syzygy {i}: a perturbed relation was accepted"));
        }
    }
    Ok(format!("{count} syzygies"))
}

// ---------------------------------------------------------------------------
// 8. monomial chains

pub fn random_monomial_ideal<R: Rng>(rng: &mut R) -> MonomialIdeal {
    let k = rng.gen_range(1..=3);
    let count = rng.gen_range(1..=4);
    let gens = (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=4);
            let all = exponents(k, d);
            all[rng.gen_range(0..all.len())].clone()
        })
        .collect();
    MonomialIdeal::new(k, gens).expect("k >= 1")
}

/// Chain steps rechecked by brute force, and
/// `dim_d C[W]/H = sum_i dim_{d - deg m_i} C[W]/W_{J(i)}` for `d <= top`.
pub fn monomial_chain(h: &MonomialIdeal, top: u32) -> Result<(), String> {
    let k = h.k();
    let chain = monomial_filtration(h);
    chain.validate().map_err(|e| e.to_string())?;
    let mut gens: Vec<Vec<u32>> = h.generators().to_vec();
    for step in &chain.steps {
        if in_ideal(&gens, &step.monomial) {
            return Err(format!("{h}: step monomial already in the ideal"));
        }
        if !colon_is_coordinate(&gens, &step.monomial, &step.coordinates, top) {
            return Err(format!(
                "{h}: colon is not W_J for J = {:?}",
                step.coordinates
            ));
        }
        gens.push(step.monomial.clone());
    }
    if !in_ideal(&gens, &vec![0; k]) {
        return Err(format!("{h}: chain does not reach the unit ideal"));
    }
    for d in 0..=top {
        let direct = quotient_dim(k, h.generators(), d);
        let sum: usize = chain
            .steps
            .iter()
            .map(|s| {
                let deg: u32 = s.monomial.iter().sum();
                if deg > d {
                    0
                } else {
                    exponents(k - s.coordinates.len(), d - deg).len()
                }
            })
            .sum();
        if direct != sum {
            return Err(format!(
                "{h}: degree {d} has dimension {direct}, chain gives {sum}"
            ));
        }
    }
    Ok(())
}

pub fn monomial_chains(count: usize, top: u32, seed: u64) -> Check {
    let mut rng = rng(seed);
    for _ in 0..count {
        monomial_chain(&random_monomial_ideal(&mut rng), top)?;
    }
    Ok(format!("{count} ideals to degree {top}"))
}

// ---------------------------------------------------------------------------
// 9. flatness certificates

/// Independent acceptance of a certificate: pieces sum to `Q`, each piece
/// satisfies `L_i(w) <= L_i(s - C_j)` termwise, and each piece is a
/// combination of multiples of the generators.
pub fn certificate_holds(
    cert: &FlatCertificate,
    cone: &BasicCone,
    generators: &[OpVec],
    shifts: &ShiftMatrix,
) -> Result<(), String> {
    let sum = cert.pieces.iter().fold(
        OpVec::zero(cert.element.n(), cert.element.rank()),
        |a, p| &a + p,
    );
    if sum != cert.element {
        return Err(format!("pieces of {} do not sum to it", cert.element));
    }
    for (p, &j) in cert.pieces.iter().zip(&cert.ideal) {
        let cj = cone.column(j);
        let target: Vec<i64> = cert.degree.iter().zip(&cj).map(|(a, b)| a - b).collect();
        for (c, m, _) in p.terms() {
            let w = v_weight(m, c, shifts);
            for row in cone.rows() {
                let lw: i64 = row.iter().zip(&w).map(|(a, b)| a * b).sum();
                let lt: i64 = row.iter().zip(&target).map(|(a, b)| a * b).sum();
                if lw > lt {
                    return Err(format!(
                        "piece {} of {} leaves V^Gamma_(s - C_j)",
                        j + 1,
                        cert.element
                    ));
                }
            }
        }
        if !p.is_zero() {
            let span = products_span(generators, op_degree(p) + 2);
            if !span.contains(p) {
                return Err(format!("piece {} = {p} is not in N", j + 1));
            }
        }
    }
    Ok(())
}

pub struct FlatReport {
    pub degrees: usize,
    pub elements: usize,
    pub corrupted_rejected: usize,
    pub corrupted_total: usize,
}

/// Euler operator, positive orthant, `H = (W1, W2)`: every intersection
/// element up to `bound` is certified, verified, replayed and accepted by
/// the independent checks. The corrupted basis replaces the Euler operator
/// by `x1 d1`; each of its outcomes is either refused or caught by the
/// truncated oracle, and at least one is.
pub fn euler_flatness(bound: u32) -> Result<FlatReport, String> {
    let e = |s: &str| parse_element(s, 2, 1).map_err(|e| e.to_string());
    let g = e("x1 d1 + x2 d2")?;
    let shifts = ShiftMatrix::zero(2, 1);
    let module =
        HomogenizedModule::new(vec![g.clone()], shifts.clone()).map_err(|e| e.to_string())?;
    let cone = BasicCone::orthant(2);
    let j = [0usize, 1];
    let l = LinearForm::from_i64(&cone.interior_weight()).map_err(|e| e.to_string())?;
    let basis = module.standard_basis(&l).map_err(|e| e.to_string())?;
    let corrupted = basis
        .with_element_replaced(0, &e("x1 d1")?)
        .map_err(|e| e.to_string())?;
    let truncation = Truncation::new(&module, bound).map_err(|e| e.to_string())?;
    let radius = i64::from(bound) + 1;
    let mut report = FlatReport {
        degrees: 0,
        elements: 0,
        corrupted_rejected: 0,
        corrupted_total: 0,
    };
    for a in -radius..=radius {
        for b in -radius..=radius {
            let s = [a, b];
            let xs = truncation
                .intersection(&cone, &s, &j)
                .map_err(|e| e.to_string())?;
            if xs.is_empty() {
                continue;
            }
            report.degrees += 1;
            for q in &xs {
                let cert = flat_decompose(q, &s, &cone, &j, &basis, None)
                    .map_err(|e| format!("s = {s:?}, Q = {q}: {e}"))?;
                cert.verify(&basis).map_err(|e| format!("s = {s:?}: {e}"))?;
                cert.replay(&basis).map_err(|e| format!("s = {s:?}: {e}"))?;
                let again =
                    flat_decompose(q, &s, &cone, &j, &basis, None).map_err(|e| e.to_string())?;
                if format!("{again:?}") != format!("{cert:?}") {
                    return Err(format!("s = {s:?}: replay is not bit-identical"));
                }
                certificate_holds(&cert, &cone, std::slice::from_ref(&g), &shifts)?;
                report.elements += 1;

                report.corrupted_total += 1;
                let caught = match flat_decompose(q, &s, &cone, &j, &corrupted, None) {
                    Err(_) => true,
                    Ok(bad) => bad
                        .pieces
                        .iter()
                        .any(|p| !truncation.contains(p).unwrap_or(false)),
                };
                if caught {
                    report.corrupted_rejected += 1;
                }
            }
        }
    }
    if report.corrupted_rejected == 0 {
        return Err("the corrupted basis was never rejected".into());
    }
    Ok(report)
}

//! The standard fan: the partition of the closed quadrant `(Q^k)*_+` into
//! relatively open rational cones on which the reduced L-standard basis of
//! `h(N)` and its symbols are constant.
//!
//! Enumeration works on a central hyperplane arrangement. Every cell of the
//! arrangement inside the quadrant gets a sample weight and a basis; the
//! forms `p0 - p` comparing the Newton point `p0` of each leading term with
//! the other Newton points of its element are added as hyperplanes until the
//! set is stable. On a cell of a stable arrangement the leading terms, hence
//! the reduced basis and the symbols, do not change. Cells carrying the same
//! basis and symbols are then merged into one cone.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::engine::Limits;
use crate::error::{AlgebraError, Result};
use crate::filtration::{dot, multi_weight};
use crate::linalg::{gcd_normalize, primitive_integer, QMatrix};
use crate::standard_basis::{BasisKey, HomogenizedModule, StandardBasis};
use crate::weights::LinearForm;
use crate::weyl::Rational;

/// Caps for fan enumeration; hitting one is an explicit error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FanLimits {
    pub max_k: usize,
    pub max_hyperplanes: usize,
    pub max_rounds: usize,
    pub engine: Limits,
}

impl Default for FanLimits {
    fn default() -> Self {
        FanLimits {
            max_k: 3,
            max_hyperplanes: 400,
            max_rounds: 40,
            engine: Limits::default(),
        }
    }
}

/// A relatively open cone `{L >= 0 : f(L) = 0 for f in E, f(L) > 0 for f in I}`
/// with the basis valid on it.
#[derive(Debug, Clone)]
pub struct FanCone {
    equalities: Vec<Vec<i64>>,
    inequalities: Vec<Vec<i64>>,
    sample: Vec<i64>,
    basis: StandardBasis,
}

impl FanCone {
    pub fn equalities(&self) -> &[Vec<i64>] {
        &self.equalities
    }

    /// Strict inequalities `f(L) > 0`.
    pub fn inequalities(&self) -> &[Vec<i64>] {
        &self.inequalities
    }

    /// An interior integer weight.
    pub fn sample(&self) -> &[i64] {
        &self.sample
    }

    pub fn sample_form(&self) -> LinearForm {
        LinearForm::from_i64(&self.sample).expect("sample lies in the quadrant")
    }

    pub fn basis(&self) -> &StandardBasis {
        &self.basis
    }

    /// Dimension of the linear span: `k` minus the rank of the equalities.
    pub fn dimension(&self) -> usize {
        let k = self.sample.len();
        if self.equalities.is_empty() {
            return k;
        }
        k - QMatrix::from_i64(&self.equalities).rank()
    }

    pub fn contains(&self, l: &LinearForm) -> bool {
        self.equalities
            .iter()
            .all(|f| l.eval(f) == Rational::from_integer(0.into()))
            && self
                .inequalities
                .iter()
                .all(|f| l.eval(f) > Rational::from_integer(0.into()))
    }
}

/// The partition of the quadrant.
#[derive(Debug, Clone)]
pub struct Fan {
    k: usize,
    cones: Vec<FanCone>,
    hyperplanes: Vec<Vec<i64>>,
}

impl Fan {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    /// The stable arrangement the cones were read from.
    pub fn hyperplanes(&self) -> &[Vec<i64>] {
        &self.hyperplanes
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &FanCone> {
        self.cones.iter().filter(move |c| c.dimension() == self.k)
    }

    /// The cone containing `l`.
    pub fn cone_of_weight(&self, l: &LinearForm) -> Result<&FanCone> {
        if l.k() != self.k {
            return Err(AlgebraError::DescriptorMismatch(format!(
                "form of length {} for a fan in dimension {}",
                l.k(),
                self.k
            )));
        }
        self.cones
            .iter()
            .find(|c| c.contains(l))
            .ok_or_else(|| AlgebraError::OutsideContext(format!("no cone contains {l}")))
    }

    pub fn index_of_weight(&self, l: &LinearForm) -> Result<usize> {
        let c = self.cone_of_weight(l)?;
        Ok(self
            .cones
            .iter()
            .position(|d| std::ptr::eq(c, d))
            .expect("cone from this fan"))
    }
}

fn normalize_hyperplane(f: &[i64]) -> Option<Vec<i64>> {
    let g = gcd_normalize(f);
    let first = *g.iter().find(|&&v| v != 0)?;
    Some(if first < 0 {
        g.iter().map(|v| -v).collect()
    } else {
        g
    })
}

/// Constraint forms along which the leading terms of the basis could change:
/// `(equalities, inequalities)` at the basis form, from the differences
/// between the Newton point of each leading term and the other Newton points
/// of its element.
pub fn cone_of_basis(basis: &StandardBasis) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let l = basis.form();
    let mut eq = BTreeSet::new();
    let mut ineq = BTreeSet::new();
    for (h, (lc, lm)) in basis.elements().iter().zip(basis.privileged_exponents()) {
        let p0 = multi_weight(&lm, lc, basis.shifts());
        for (i, m, _) in h.terms() {
            let p = multi_weight(m, i, basis.shifts());
            let diff: Vec<i64> = p0.iter().zip(&p).map(|(a, b)| a - b).collect();
            if diff.iter().all(|&v| v == 0) {
                continue;
            }
            let g = gcd_normalize(&diff);
            if l.eval(&g) == Rational::from_integer(0.into()) {
                eq.insert(normalize_hyperplane(&g).expect("nonzero"));
            } else {
                ineq.insert(g);
            }
        }
    }
    (eq.into_iter().collect(), ineq.into_iter().collect())
}

/// Extreme rays of the arrangement inside the closed quadrant.
fn vertex_rays(k: usize, hyperplanes: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut rays = BTreeSet::new();
    let mut choose = Vec::new();
    fn rec(
        start: usize,
        need: usize,
        hs: &[Vec<i64>],
        choose: &mut Vec<usize>,
        rays: &mut BTreeSet<Vec<i64>>,
    ) {
        if need == 0 {
            let rows: Vec<Vec<i64>> = choose.iter().map(|&i| hs[i].clone()).collect();
            let ker = if rows.is_empty() {
                vec![vec![Rational::from_integer(1.into())]]
            } else {
                QMatrix::from_i64(&rows).kernel()
            };
            if ker.len() == 1 {
                let v = primitive_integer(&ker[0]);
                for cand in [v.clone(), v.iter().map(|x| -x).collect::<Vec<_>>()] {
                    if cand.iter().all(|&x| x >= 0) && cand.iter().any(|&x| x > 0) {
                        rays.insert(cand);
                    }
                }
            }
            return;
        }
        for i in start..hs.len() {
            choose.push(i);
            rec(i + 1, need - 1, hs, choose, rays);
            choose.pop();
        }
    }
    rec(0, k - 1, hyperplanes, &mut choose, &mut rays);
    rays.into_iter().collect()
}

fn sign(v: i64) -> i8 {
    v.signum() as i8
}

/// One integer sample per cell of the arrangement in the closed quadrant,
/// keyed by the sign vector.
fn arrangement_cells(k: usize, hyperplanes: &[Vec<i64>]) -> BTreeMap<Vec<i8>, Vec<i64>> {
    let rays = vertex_rays(k, hyperplanes);
    let values: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| hyperplanes.iter().map(|h| dot(h, r)).collect())
        .collect();
    let mut cells = BTreeMap::new();
    cells.insert(vec![0i8; hyperplanes.len()], vec![0i64; k]);
    let mut subset = Vec::new();
    fn rec(
        start: usize,
        left: usize,
        subset: &mut Vec<usize>,
        rays: &[Vec<i64>],
        values: &[Vec<i64>],
        cells: &mut BTreeMap<Vec<i8>, Vec<i64>>,
    ) {
        if !subset.is_empty() {
            let m = values[0].len();
            let signs: Vec<i8> = (0..m)
                .map(|h| sign(subset.iter().map(|&i| values[i][h]).sum()))
                .collect();
            cells.entry(signs).or_insert_with(|| {
                let k = rays[0].len();
                (0..k)
                    .map(|j| subset.iter().map(|&i| rays[i][j]).sum())
                    .collect()
            });
        }
        if left == 0 {
            return;
        }
        for i in start..rays.len() {
            subset.push(i);
            rec(i + 1, left - 1, subset, rays, values, cells);
            subset.pop();
        }
    }
    rec(0, k, &mut subset, &rays, &values, &mut cells);
    cells
}

fn satisfies(signs: &[i8], constraints: &[(usize, i8)]) -> bool {
    constraints.iter().all(|&(h, s)| signs[h] == s)
}

/// Computes the standard fan of `N`.
pub fn standard_fan(module: &HomogenizedModule, limits: FanLimits) -> Result<Fan> {
    let k = module.shifts().k();
    if k > limits.max_k {
        return Err(AlgebraError::ResourceBound(format!(
            "k = {k} exceeds the configured maximum {}",
            limits.max_k
        )));
    }
    let mut hyperplanes: BTreeSet<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut bases: BTreeMap<Vec<i64>, StandardBasis> = BTreeMap::new();
    let mut rounds = 0;
    let (hs, cells) = loop {
        rounds += 1;
        if rounds > limits.max_rounds {
            return Err(AlgebraError::ResourceBound(format!(
                "arrangement not stable after {} rounds",
                limits.max_rounds
            )));
        }
        let hs: Vec<Vec<i64>> = hyperplanes.iter().cloned().collect();
        let cells = arrangement_cells(k, &hs);
        let missing: Vec<Vec<i64>> = cells
            .values()
            .filter(|s| !bases.contains_key(*s))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let computed: Vec<(Vec<i64>, StandardBasis)> = missing
            .par_iter()
            .map(|s| {
                let l = LinearForm::from_i64(s).expect("quadrant sample");
                module.standard_basis(&l).map(|b| (s.clone(), b))
            })
            .collect::<Result<_>>()?;
        bases.extend(computed);
        let before = hyperplanes.len();
        for s in cells.values() {
            let (eq, ineq) = cone_of_basis(&bases[s]);
            for f in eq.iter().chain(&ineq) {
                if let Some(h) = normalize_hyperplane(f) {
                    hyperplanes.insert(h);
                }
            }
        }
        if hyperplanes.len() > limits.max_hyperplanes {
            return Err(AlgebraError::ResourceBound(format!(
                "more than {} hyperplanes",
                limits.max_hyperplanes
            )));
        }
        if hyperplanes.len() == before {
            break (hs, cells);
        }
    };

    // group cells by basis and symbols, in order of first appearance
    let cell_list: Vec<(Vec<i8>, Vec<i64>)> = cells.into_iter().collect();
    let mut groups: Vec<(BasisKey, Vec<usize>)> = Vec::new();
    for (idx, (_, s)) in cell_list.iter().enumerate() {
        let key = bases[s].key();
        match groups.iter_mut().find(|(g, _)| *g == key) {
            Some((_, members)) => members.push(idx),
            None => groups.push((key, vec![idx])),
        }
    }

    // (member cells, hyperplane signs constant across them)
    type Region = (Vec<usize>, Vec<(usize, i8)>);
    let mut regions: Vec<Region> = Vec::new();
    for (_, members) in groups {
        let constant: Vec<(usize, i8)> = (0..hs.len())
            .filter_map(|h| {
                let s0 = cell_list[members[0]].0[h];
                members
                    .iter()
                    .all(|&m| cell_list[m].0[h] == s0)
                    .then_some((h, s0))
            })
            .collect();
        let covered: Vec<usize> = (0..cell_list.len())
            .filter(|&c| satisfies(&cell_list[c].0, &constant))
            .collect();
        if covered == members {
            regions.push((members, constant));
        } else {
            // not convex: keep the cells apart
            for m in members {
                let full = cell_list[m]
                    .0
                    .iter()
                    .enumerate()
                    .map(|(h, &s)| (h, s))
                    .collect();
                regions.push((vec![m], full));
            }
        }
    }

    let mut cones = Vec::with_capacity(regions.len());
    for (members, constraints) in regions {
        let pruned = prune(&cell_list, &members, constraints);
        let sample: Vec<i64> = (0..k)
            .map(|j| members.iter().map(|&m| cell_list[m].1[j]).sum())
            .collect();
        let l = LinearForm::from_i64(&sample).expect("quadrant sample");
        let basis = module.standard_basis(&l)?;
        if basis.key() != bases[&cell_list[members[0]].1].key() {
            return Err(AlgebraError::Verification(format!(
                "basis recomputed at {l} differs from the basis of its cells"
            )));
        }
        let mut equalities = Vec::new();
        let mut inequalities = Vec::new();
        for (h, s) in pruned {
            match s {
                0 => equalities.push(hs[h].clone()),
                1 => inequalities.push(hs[h].clone()),
                _ => inequalities.push(hs[h].iter().map(|v| -v).collect()),
            }
        }
        cones.push(FanCone {
            equalities,
            inequalities,
            sample,
            basis,
        });
    }
    cones.sort_by(|a, b| {
        b.dimension()
            .cmp(&a.dimension())
            .then_with(|| a.sample.cmp(&b.sample))
    });
    Ok(Fan {
        k,
        cones,
        hyperplanes: hs,
    })
}

/// Drops constraints that do not change the set of cells they cut out.
fn prune(
    cells: &[(Vec<i8>, Vec<i64>)],
    members: &[usize],
    mut constraints: Vec<(usize, i8)>,
) -> Vec<(usize, i8)> {
    let cut = |cs: &[(usize, i8)]| -> Vec<usize> {
        (0..cells.len())
            .filter(|&c| satisfies(&cells[c].0, cs))
            .collect()
    };
    let mut i = 0;
    while i < constraints.len() {
        let mut trial = constraints.clone();
        trial.remove(i);
        if cut(&trial) == members {
            constraints = trial;
        } else {
            i += 1;
        }
    }
    constraints
}

/// Equivalence key of a weight used by the sampling oracle.
pub fn weight_class(module: &HomogenizedModule, l: &LinearForm) -> Result<BasisKey> {
    Ok(module.standard_basis(l)?.key())
}

/// Human-readable constraint, e.g. `e1 - e2 > 0`.
pub fn format_constraint(f: &[i64], relation: &str) -> String {
    let mut s = String::new();
    for (j, &c) in f.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.abs();
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        if mag != 1 {
            s.push_str(&format!("{mag} "));
        }
        s.push_str(&format!("e{}", j + 1));
    }
    format!("{s} {relation} 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::ShiftMatrix;
    use crate::grammar::parse_element;

    fn module(gens: &[&str], n: usize, k: usize) -> HomogenizedModule {
        let g = gens
            .iter()
            .map(|s| parse_element(s, n, 1).unwrap())
            .collect();
        HomogenizedModule::new(g, ShiftMatrix::zero(k, 1)).unwrap()
    }

    fn lf(v: &[i64]) -> LinearForm {
        LinearForm::from_i64(v).unwrap()
    }

    #[test]
    fn euler_has_one_cone() {
        let fan = standard_fan(&module(&["x1 d1 + x2 d2"], 2, 2), FanLimits::default()).unwrap();
        assert_eq!(fan.cones().len(), 1);
        assert!(fan.cones()[0].equalities().is_empty());
        assert!(fan.cones()[0].inequalities().is_empty());
        assert!(fan.cone_of_weight(&lf(&[1, 1])).is_ok());
    }

    #[test]
    fn monomial_generator_has_one_cone() {
        for k in 1..=3 {
            let fan = standard_fan(&module(&["d1"], 3, k), FanLimits::default()).unwrap();
            assert_eq!(fan.cones().len(), 1, "k = {k}");
        }
    }

    #[test]
    fn three_cones() {
        let fan = standard_fan(&module(&["d1 + x1 d2^2"], 2, 2), FanLimits::default()).unwrap();
        assert_eq!(fan.cones().len(), 3);
        let wall = fan.cone_of_weight(&lf(&[1, 1])).unwrap();
        assert_eq!(wall.equalities(), &[vec![1, -1]]);
        assert_eq!(wall.dimension(), 1);
        let c = fan.cone_of_weight(&lf(&[2, 1])).unwrap();
        assert_eq!(c.inequalities(), &[vec![1, -1]]);
        let c = fan.cone_of_weight(&lf(&[1, 2])).unwrap();
        assert_eq!(c.inequalities(), &[vec![-1, 1]]);
        assert!(fan.cone_of_weight(&lf(&[0, 0])).is_ok());
        assert_eq!(format_constraint(&[1, -1], ">"), "e1 - e2 > 0");
    }
}

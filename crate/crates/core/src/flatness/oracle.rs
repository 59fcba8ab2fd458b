//! Degree-truncated comparison of `W_J R^Gamma(N)` with
//! `W_J R^Gamma(D^r) ∩ R^Gamma(N)` in one graded degree, by linear algebra
//! over `Q`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::engine::{Limits, Ring};
use crate::error::{AlgebraError, Result};
use crate::filtration::{dot, multi_weight, ShiftMatrix};
use crate::flatness::monomial::MonomialIdeal;
use crate::linalg::QMatrix;
use crate::standard_basis::HomogenizedModule;
use crate::toric::BasicCone;
use crate::weights::{Grading, TermOrder};
use crate::weyl::{Monomial, OpVec, Operator, Product, Rational};

/// Outcome of the truncated comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntersectionVerdict {
    /// Every element of the intersection of degree `<= bound` lies in
    /// `W_J R^Gamma(N)`; `dimension` is the dimension of that truncation.
    Equal { dimension: usize },
    /// An element of the intersection with no decomposition into pieces
    /// of degree `<= pieces_bound`.
    Counterexample { element: OpVec, pieces_bound: u32 },
}

/// `N` truncated to total degree `<= bound`, with room up to
/// `pieces_bound` for decompositions.
#[derive(Debug, Clone)]
pub struct Truncation {
    n: usize,
    r: usize,
    shifts: ShiftMatrix,
    bound: u32,
    pieces_bound: u32,
    coords: Vec<(usize, Monomial)>,
    low: Vec<Vec<Rational>>,
    high: Vec<Vec<Rational>>,
}

fn degree_of(v: &OpVec) -> u32 {
    v.terms()
        .map(|(_, m, _)| m.x_degree() + m.d_degree())
        .max()
        .unwrap_or(0)
}

/// Monomials `x^a d^b` with `|a| + |b| <= deg`.
fn multipliers(n: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut stack = vec![(Monomial::one(n), 0usize, 0u32)];
    while let Some((m, slot, d)) = stack.pop() {
        out.push(m.clone());
        if d == deg {
            continue;
        }
        for v in slot..2 * n {
            let mut m2 = m.clone();
            if v < n {
                m2.x[v] += 1;
            } else {
                m2.d[v - n] += 1;
            }
            stack.push((m2, v, d + 1));
        }
    }
    out.sort();
    out
}

/// Basis (reduced echelon rows) of the span of `rows`.
fn echelon(rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return rows;
    }
    let mut m = QMatrix {
        rows: rows.len(),
        cols,
        data: rows,
    };
    let rank = m.rref().len();
    m.data.truncate(rank);
    m.data
}

/// The subspace of `span(basis)` of vectors vanishing outside `allowed`.
fn restrict(basis: &[Vec<Rational>], allowed: &[bool]) -> Vec<Vec<Rational>> {
    let cols = allowed.len();
    let bad: Vec<usize> = (0..cols).filter(|&c| !allowed[c]).collect();
    if basis.is_empty() {
        return Vec::new();
    }
    if bad.is_empty() {
        return basis.to_vec();
    }
    let a = QMatrix {
        rows: bad.len(),
        cols: basis.len(),
        data: bad
            .iter()
            .map(|&b| basis.iter().map(|row| row[b].clone()).collect())
            .collect(),
    };
    let combos: Vec<Vec<Rational>> = a
        .kernel()
        .into_iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); cols];
            for (ci, row) in c.iter().zip(basis) {
                if !ci.is_zero() {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x += ci * y;
                    }
                }
            }
            v
        })
        .collect();
    echelon(combos, cols)
}

fn rank_of(rows: &[Vec<Rational>], cols: usize) -> usize {
    echelon(rows.to_vec(), cols).len()
}

impl Truncation {
    /// Spans `N` in degrees `<= bound` (and `<= bound + 2 max generator
    /// degree` for pieces) by `m g` over a Groebner basis `g` for an order
    /// led by the total degree, so that no cancellation is missed.
    pub fn new(module: &HomogenizedModule, bound: u32) -> Result<Self> {
        let (n, r) = (module.n(), module.rank());
        let ring = Ring {
            n,
            r,
            order: TermOrder::graded(Grading::Bihomogeneous),
            product: Product::Weyl,
        };
        let polys: Vec<_> = module
            .generators()
            .iter()
            .map(|g| ring.poly_of(g))
            .collect();
        let gb: Vec<OpVec> = ring
            .interreduce(ring.groebner(&polys, Limits::default())?)
            .iter()
            .map(|p| ring.to_vec(p))
            .collect();
        let pieces_bound = bound + 2 * gb.iter().map(degree_of).max().unwrap_or(0);

        let mut products: Vec<(u32, OpVec)> = Vec::new();
        for g in &gb {
            let dg = degree_of(g);
            if dg > pieces_bound {
                continue;
            }
            for m in multipliers(n, pieces_bound - dg) {
                let dm = m.x_degree() + m.d_degree();
                let p = g.left_mul(&Operator::monomial(n, m, Rational::one()))?;
                products.push((dm + dg, p));
            }
        }
        let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut coords: Vec<(usize, Monomial)> = Vec::new();
        for (_, p) in &products {
            for (c, m, _) in p.terms() {
                index.entry((c, m.clone())).or_insert_with(|| {
                    coords.push((c, m.clone()));
                    coords.len() - 1
                });
            }
        }
        let dense = |p: &OpVec| {
            let mut v = vec![Rational::zero(); coords.len()];
            for (c, m, x) in p.terms() {
                v[index[&(c, m.clone())]] = x.clone();
            }
            v
        };
        let low_rows: Vec<_> = products
            .iter()
            .filter(|(d, _)| *d <= bound)
            .map(|(_, p)| dense(p))
            .collect();
        let high_rows: Vec<_> = products.iter().map(|(_, p)| dense(p)).collect();
        let cols = coords.len();
        Ok(Truncation {
            n,
            r,
            shifts: module.shifts().clone(),
            bound,
            pieces_bound,
            low: echelon(low_rows, cols),
            high: echelon(high_rows, cols),
            coords,
        })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn pieces_bound(&self) -> u32 {
        self.pieces_bound
    }

    /// Whether `v` lies in the span of `N` up to `pieces_bound`. Terms outside
    /// that span's support make the answer `false` outright.
    pub fn contains(&self, v: &OpVec) -> Result<bool> {
        if v.n() != self.n || v.rank() != self.r {
            return Err(AlgebraError::DescriptorMismatch(
                "element in the wrong module".into(),
            ));
        }
        if v.is_zero() {
            return Ok(true);
        }
        if degree_of(v) > self.pieces_bound || !v.is_t_free() {
            return Ok(false);
        }
        let mut row = vec![Rational::zero(); self.coords.len()];
        for (c, m, x) in v.terms() {
            match self.coords.iter().position(|(c2, m2)| *c2 == c && m2 == m) {
                Some(i) => row[i] = x.clone(),
                None => return Ok(false),
            }
        }
        let mut with = self.high.clone();
        with.push(row);
        Ok(rank_of(&with, self.coords.len()) == self.high.len())
    }

    /// `dim N_{<= bound}`.
    pub fn dimension(&self) -> usize {
        self.low.len()
    }

    fn weights(&self) -> Vec<Vec<i64>> {
        self.coords
            .iter()
            .map(|(c, m)| multi_weight(m, *c, &self.shifts))
            .collect()
    }

    fn region_mask(&self, cone: &BasicCone, s: &[i64], j: usize) -> Vec<bool> {
        self.weights()
            .iter()
            .map(|w| {
                cone.rows()
                    .iter()
                    .enumerate()
                    .all(|(i, l)| dot(l, w) <= dot(l, s) - i64::from(i == j))
            })
            .collect()
    }

    fn to_opvec(&self, v: &[Rational]) -> OpVec {
        let mut out = OpVec::zero(self.n, self.r);
        for (x, (c, m)) in v.iter().zip(&self.coords) {
            if !x.is_zero() {
                out.component_mut(*c).add_term(m.clone(), x.clone());
            }
        }
        out
    }

    fn check(&self, cone: &BasicCone, s: &[i64], j: &[usize]) -> Result<()> {
        let k = self.shifts.k();
        if cone.k() != k || s.len() != k || j.iter().any(|&i| i >= k) {
            return Err(AlgebraError::DescriptorMismatch(format!(
                "cone, degree and J must refer to k = {k}"
            )));
        }
        Ok(())
    }

    fn intersection_rows(&self, cone: &BasicCone, s: &[i64], j: &[usize]) -> Vec<Vec<Rational>> {
        let masks: Vec<Vec<bool>> = j.iter().map(|&i| self.region_mask(cone, s, i)).collect();
        let union: Vec<bool> = (0..self.coords.len())
            .map(|c| masks.iter().any(|m| m[c]))
            .collect();
        restrict(&self.low, &union)
    }

    /// A basis of the truncated intersection
    /// `(W_J R^Gamma(D^r))_s ∩ R^Gamma(N)_s`: elements of `N` of degree
    /// `<= bound` whose V-Newton diagram lies in `union_j (s - C_j) - Gamma^v`.
    pub fn intersection(&self, cone: &BasicCone, s: &[i64], j: &[usize]) -> Result<Vec<OpVec>> {
        self.check(cone, s, j)?;
        Ok(self
            .intersection_rows(cone, s, j)
            .iter()
            .map(|v| self.to_opvec(v))
            .collect())
    }

    /// Compares the truncated intersection with `sum_j V^Gamma_{s - C_j}(N)`.
    pub fn compare(
        &self,
        cone: &BasicCone,
        s: &[i64],
        ideal: &MonomialIdeal,
    ) -> Result<IntersectionVerdict> {
        if ideal.k() != self.shifts.k() {
            return Err(AlgebraError::DescriptorMismatch(
                "ideal in the wrong ring".into(),
            ));
        }
        if ideal.is_unit() {
            return Ok(IntersectionVerdict::Equal {
                dimension: self.dimension(),
            });
        }
        let j = ideal.as_coordinate().ok_or_else(|| {
            AlgebraError::Precondition(format!("{ideal} is not a coordinate ideal"))
        })?;
        self.check(cone, s, &j)?;
        let cols = self.coords.len();
        let x = self.intersection_rows(cone, s, &j);
        let pieces = |span: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
            j.iter()
                .flat_map(|&i| restrict(span, &self.region_mask(cone, s, i)))
                .collect()
        };
        let y = pieces(&self.low);
        if rank_of(&y, cols) == x.len() {
            return Ok(IntersectionVerdict::Equal { dimension: x.len() });
        }
        let y2 = echelon(pieces(&self.high), cols);
        let base = y2.len();
        for v in &x {
            let mut with = y2.clone();
            with.push(v.clone());
            if rank_of(&with, cols) > base {
                return Ok(IntersectionVerdict::Counterexample {
                    element: self.to_opvec(v),
                    pieces_bound: self.pieces_bound,
                });
            }
        }
        Ok(IntersectionVerdict::Equal { dimension: x.len() })
    }
}

/// One-shot comparison in degree `s` with the truncation `degree_bound`.
pub fn intersection_oracle(
    module: &HomogenizedModule,
    cone: &BasicCone,
    ideal: &MonomialIdeal,
    s: &[i64],
    degree_bound: u32,
) -> Result<IntersectionVerdict> {
    Truncation::new(module, degree_bound)?.compare(cone, s, ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_element;

    fn euler() -> HomogenizedModule {
        let g = parse_element("x1 d1 + x2 d2", 2, 1).unwrap();
        HomogenizedModule::new(vec![g], ShiftMatrix::zero(2, 1)).unwrap()
    }

    #[test]
    fn unit_ideal_is_trivially_equal() {
        let v = intersection_oracle(
            &euler(),
            &BasicCone::orthant(2),
            &MonomialIdeal::unit(2),
            &[0, 0],
            2,
        )
        .unwrap();
        assert!(matches!(v, IntersectionVerdict::Equal { .. }));
    }

    #[test]
    fn euler_orthant_equal() {
        let h = MonomialIdeal::coordinate(2, &[0, 1]).unwrap();
        let t = Truncation::new(&euler(), 4).unwrap();
        for s in [[0, 0], [1, 0], [0, 1], [-1, 1]] {
            let v = t.compare(&BasicCone::orthant(2), &s, &h).unwrap();
            assert!(
                matches!(v, IntersectionVerdict::Equal { .. }),
                "{s:?}: {v:?}"
            );
        }
        let elems = t
            .intersection(&BasicCone::orthant(2), &[0, 0], &[0, 1])
            .unwrap();
        assert!(!elems.is_empty());
    }

    #[test]
    fn multipliers_are_distinct() {
        let m = multipliers(2, 2);
        assert_eq!(m.len(), 15);
    }

    #[test]
    fn truncated_membership() {
        let t = Truncation::new(&euler(), 2).unwrap();
        let e = parse_element("x1 d1 + x2 d2", 2, 1).unwrap();
        assert!(t.contains(&e).unwrap());
        assert!(t
            .contains(&parse_element("x1^2 d1 + x1 x2 d2", 2, 1).unwrap())
            .unwrap());
        assert!(!t.contains(&parse_element("x1 d1", 2, 1).unwrap()).unwrap());
        assert!(!t.contains(&parse_element("1", 2, 1).unwrap()).unwrap());
    }
}

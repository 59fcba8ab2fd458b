//! The V-multifiltration `V_s`, its shifted version `V[n]_s` on `D^r`, the
//! cone refinement `V^Gamma_s`, and V-Newton diagrams.

use std::collections::BTreeSet;

use crate::error::{AlgebraError, Result};
use crate::toric::RaySet;
use crate::weyl::{Monomial, OpVec};

/// Shift multivector `n = (n^(1), ..., n^(r))`, one column in `Z^k` per
/// component of `D^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShiftMatrix {
    k: usize,
    columns: Vec<Vec<i64>>,
}

impl ShiftMatrix {
    pub fn new(columns: Vec<Vec<i64>>) -> Result<Self> {
        let k = columns.first().map(Vec::len).ok_or_else(|| {
            AlgebraError::Precondition("shift matrix needs r >= 1 columns".into())
        })?;
        if k == 0 || columns.iter().any(|c| c.len() != k) {
            return Err(AlgebraError::Precondition(
                "shift columns must all have the same length k >= 1".into(),
            ));
        }
        Ok(ShiftMatrix { k, columns })
    }

    pub fn zero(k: usize, r: usize) -> Self {
        ShiftMatrix {
            k,
            columns: vec![vec![0; k]; r],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Column `n^(i)` (0-based component).
    pub fn column(&self, i: usize) -> &[i64] {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }
}

/// `(b_j - a_j + n^(i)_j)_{j <= k}` for a term in component `comp` (0-based).
pub fn multi_weight(m: &Monomial, comp: usize, shifts: &ShiftMatrix) -> Vec<i64> {
    let shift = shifts.column(comp);
    (0..shifts.k())
        .map(|j| m.d[j] as i64 - m.x[j] as i64 + shift[j])
        .collect()
}

fn check_shape(b: &OpVec, shifts: &ShiftMatrix) -> Result<()> {
    if b.rank() != shifts.rank() || shifts.k() > b.n() {
        return Err(AlgebraError::DescriptorMismatch(format!(
            "vector of rank {} over n={} with a {}x{} shift matrix",
            b.rank(),
            b.n(),
            shifts.k(),
            shifts.rank()
        )));
    }
    Ok(())
}

/// Membership in `V[n]_s(D^r)`: every term's multi-weight is `<= s`.
pub fn in_v_s(b: &OpVec, s: &[i64], shifts: &ShiftMatrix) -> Result<bool> {
    check_shape(b, shifts)?;
    Ok(b.terms().all(|(i, m, _)| {
        multi_weight(m, i, shifts)
            .iter()
            .zip(s)
            .all(|(w, sj)| w <= sj)
    }))
}

/// Membership in `V[n]^Gamma_s(D^r)`: every term weight `delta` satisfies
/// `L(delta) <= L(s)` for each ray form `L` of Gamma.
pub fn in_v_gamma(b: &OpVec, s: &[i64], rays: &RaySet, shifts: &ShiftMatrix) -> Result<bool> {
    check_shape(b, shifts)?;
    let bounds: Vec<i64> = rays.iter().map(|l| dot(l, s)).collect();
    Ok(b.terms().all(|(i, m, _)| {
        let w = multi_weight(m, i, shifts);
        rays.iter()
            .zip(&bounds)
            .all(|(l, bound)| dot(l, &w) <= *bound)
    }))
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The V-Newton diagram `{b - a + n^(i)}` of an element; `t` is ignored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VNewtonDiagram {
    pub points: BTreeSet<Vec<i64>>,
}

impl VNewtonDiagram {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.contains(p)
    }

    /// Minkowski sum.
    pub fn sum(&self, other: &VNewtonDiagram) -> VNewtonDiagram {
        let mut points = BTreeSet::new();
        for a in &self.points {
            for b in &other.points {
                points.insert(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        VNewtonDiagram { points }
    }
}

pub fn newton_diagram(b: &OpVec, shifts: &ShiftMatrix) -> Result<VNewtonDiagram> {
    check_shape(b, shifts)?;
    Ok(VNewtonDiagram {
        points: b
            .terms()
            .map(|(i, m, _)| multi_weight(m, i, shifts))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{parse_element, parse_vector};

    fn sm(cols: &[&[i64]]) -> ShiftMatrix {
        ShiftMatrix::new(cols.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn multi_weight_examples() {
        let m = |s: &str, n, r| parse_vector(s, n, r).unwrap();
        let v = m("x1 d1 e1", 2, 1);
        let (_, mono, _) = v.terms().next().unwrap();
        assert_eq!(multi_weight(mono, 0, &ShiftMatrix::zero(2, 1)), vec![0, 0]);
        let v = m("x1^2 d1 e1", 2, 1);
        let (_, mono, _) = v.terms().next().unwrap();
        assert_eq!(multi_weight(mono, 0, &ShiftMatrix::zero(2, 1)), vec![-1, 0]);
        let v = m("d2 e2", 2, 2);
        let (i, mono, _) = v.terms().next().unwrap();
        assert_eq!(multi_weight(mono, i, &sm(&[&[0, 0], &[1, 3]])), vec![1, 4]);
    }

    #[test]
    fn v_s_membership() {
        let z = ShiftMatrix::zero(2, 1);
        let p = parse_element("x1^2 d1", 2, 1).unwrap();
        assert!(in_v_s(&p, &[-1, 0], &z).unwrap());
        assert!(!in_v_s(&p, &[-2, 0], &z).unwrap());
        assert!(in_v_s(&OpVec::zero(2, 1), &[-9, -9], &z).unwrap());
        let q = parse_element("d1 + x1", 2, 1).unwrap();
        assert!(in_v_s(&q, &[1, 0], &z).unwrap());
        assert!(!in_v_s(&q, &[0, 0], &z).unwrap());
    }

    #[test]
    fn v_gamma_membership() {
        let z = ShiftMatrix::zero(2, 1);
        let rays = RaySet::new(vec![vec![1, 1]]).unwrap();
        let p = parse_element("x1 d2", 2, 1).unwrap();
        assert!(in_v_gamma(&p, &[0, 0], &rays, &z).unwrap());
        assert!(in_v_gamma(&OpVec::zero(2, 1), &[0, 0], &rays, &z).unwrap());
        let orthant = RaySet::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        for s in [[0, 0], [-1, 0], [1, -1]] {
            assert_eq!(
                in_v_gamma(&p, &s, &orthant, &z).unwrap(),
                in_v_s(&p, &s, &z).unwrap()
            );
        }
    }

    #[test]
    fn newton_diagram_examples() {
        let z = ShiftMatrix::zero(1, 1);
        let p = parse_element("x1^2 d1 + 1", 1, 1).unwrap();
        let nd = newton_diagram(&p, &z).unwrap();
        assert_eq!(
            nd.points.into_iter().collect::<Vec<_>>(),
            vec![vec![-1], vec![0]]
        );
        assert!(newton_diagram(&OpVec::zero(1, 1), &z).unwrap().is_empty());
        let a = parse_element("t x1", 1, 1).unwrap();
        let b = parse_element("x1", 1, 1).unwrap();
        assert_eq!(
            newton_diagram(&a, &z).unwrap(),
            newton_diagram(&b, &z).unwrap()
        );
    }
}

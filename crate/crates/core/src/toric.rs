//! Rational cones in the nonnegative quadrant of `(Q^k)*`, basic cones with
//! their unimodular matrix and its inverse, and the `W <-> U` change of
//! monomial coordinates on `A_Gamma = Q[W_1, ..., W_k]`.

use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::filtration::dot;
use crate::linalg::{gcd_normalize, QMatrix};
use crate::weyl::Rational;

/// The primitive ray forms `L(Gamma)` of a cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RaySet {
    rays: Vec<Vec<i64>>,
}

impl RaySet {
    pub fn new(rays: Vec<Vec<i64>>) -> Result<Self> {
        let k = rays
            .first()
            .map(Vec::len)
            .ok_or_else(|| AlgebraError::InvalidCone("empty ray set".into()))?;
        let mut out: Vec<Vec<i64>> = Vec::new();
        for r in rays {
            if r.len() != k {
                return Err(AlgebraError::InvalidCone(
                    "rays of different lengths".into(),
                ));
            }
            if r.iter().any(|&v| v < 0) {
                return Err(AlgebraError::InvalidCone(format!(
                    "ray {r:?} leaves the nonnegative quadrant"
                )));
            }
            if r.iter().all(|&v| v == 0) {
                return Err(AlgebraError::InvalidCone("zero ray".into()));
            }
            let p = gcd_normalize(&r);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(RaySet { rays: out })
    }

    pub fn orthant(k: usize) -> Self {
        RaySet {
            rays: (0..k)
                .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.rays[0].len()
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.rays.iter()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// `a` lies in the dual cone: `L(a) >= 0` for every ray.
    pub fn dual_contains(&self, a: &[i64]) -> bool {
        self.rays.iter().all(|l| dot(l, a) >= 0)
    }
}

/// A basic cone: `k` nonnegative integer forms `L_1..L_k` forming a lattice
/// basis, ordered so that `det(L) = 1`. Columns `C_j` of `L' = L^-1`
/// generate the dual monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasicCone {
    rows: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
}

impl BasicCone {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(AlgebraError::InvalidCone(format!(
                "a basic cone needs k rows of length k, got {rows:?}"
            )));
        }
        if rows.iter().flatten().any(|&v| v < 0) {
            return Err(AlgebraError::InvalidCone(
                "negative entries: forms must lie in the nonnegative quadrant".into(),
            ));
        }
        let mut rows = rows;
        let det = QMatrix::from_i64(&rows).determinant();
        if det.abs() != Rational::one() {
            return Err(AlgebraError::NotBasic(format!("|det| = {det}, expected 1")));
        }
        if det.is_negative() {
            // k >= 2 here: a single nonnegative row of determinant -1 cannot exist.
            rows.swap(0, 1);
        }
        let inverse = QMatrix::from_i64(&rows)
            .inverse()
            .and_then(|m| m.to_i64())
            .expect("unimodular integer matrix has an integer inverse");
        Ok(BasicCone { rows, inverse })
    }

    pub fn orthant(k: usize) -> Self {
        let id: Vec<Vec<i64>> = RaySet::orthant(k).rays;
        BasicCone {
            rows: id.clone(),
            inverse: id,
        }
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// The matrix `L` (rows are the forms `L_i`).
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    /// The matrix `L' = L^-1`.
    pub fn inverse(&self) -> &[Vec<i64>] {
        &self.inverse
    }

    /// Column `C_j` of `L'` (0-based).
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.inverse.iter().map(|row| row[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.k()).map(|j| self.column(j)).collect()
    }

    pub fn rays(&self) -> RaySet {
        RaySet::new(self.rows.clone()).expect("rows of a basic cone are valid rays")
    }

    /// A point in the interior of the cone: the sum of its rows.
    pub fn interior_weight(&self) -> Vec<i64> {
        (0..self.k())
            .map(|j| self.rows.iter().map(|r| r[j]).sum())
            .collect()
    }

    /// `a` lies in the dual cone `Gamma^v`.
    pub fn dual_membership(&self, a: &[i64]) -> bool {
        self.rows.iter().all(|l| dot(l, a) >= 0)
    }

    /// `u`-exponent of `W^a`: `L' a`.
    pub fn w_to_u(&self, a: &[i64]) -> Vec<i64> {
        self.inverse.iter().map(|row| dot(row, a)).collect()
    }

    /// `W`-exponent of `u^sigma`: `L sigma`.
    pub fn u_to_w(&self, sigma: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|row| dot(row, sigma)).collect()
    }

    pub fn dual_monoid(&self) -> DualConeMonoid {
        DualConeMonoid {
            generators: self.columns(),
        }
    }
}

/// Generators of the monoid `Gamma^v cap Z^k`; for a basic cone these are
/// the columns `C_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualConeMonoid {
    pub generators: Vec<Vec<i64>>,
}

/// Refines a full-dimensional simplicial cone (given by `k` independent ray
/// forms) into basic cones by iterated stellar subdivision. At each step the
/// lexicographically smallest nonzero primitive lattice point of the
/// half-open fundamental parallelepiped is inserted.
pub fn basic_refinement(rays: &[Vec<i64>]) -> Result<Vec<BasicCone>> {
    let k = rays.len();
    if k == 0 || rays.iter().any(|r| r.len() != k) {
        return Err(AlgebraError::InvalidCone(
            "refinement needs k rays in dimension k".into(),
        ));
    }
    let ray_set = RaySet::new(rays.to_vec())?;
    if ray_set.len() != k {
        return Err(AlgebraError::InvalidCone("repeated rays".into()));
    }
    let m = QMatrix::from_i64(ray_set.rays());
    if m.determinant().is_zero() {
        return Err(AlgebraError::InvalidCone("rays are not independent".into()));
    }
    let mut out = Vec::new();
    refine(ray_set.rays().to_vec(), &mut out)?;
    out.sort_by(|a, b| a.rows.cmp(&b.rows));
    Ok(out)
}

fn refine(rays: Vec<Vec<i64>>, out: &mut Vec<BasicCone>) -> Result<()> {
    let m = QMatrix::from_i64(&rays);
    let det = m.determinant().abs();
    if det == Rational::one() {
        out.push(BasicCone::new(rays)?);
        return Ok(());
    }
    if out.len() > 10_000 {
        return Err(AlgebraError::ResourceBound(
            "basic refinement too large".into(),
        ));
    }
    let k = rays.len();
    // v = sum lambda_i r_i  <=>  v^T = lambda^T M  <=>  M^T lambda = v.
    let mt = QMatrix {
        rows: k,
        cols: k,
        data: (0..k)
            .map(|j| (0..k).map(|i| m.data[i][j].clone()).collect())
            .collect(),
    };
    let inv = mt.inverse().expect("independent rays");
    let upper: Vec<i64> = (0..k).map(|j| rays.iter().map(|r| r[j]).sum()).collect();
    let mut best: Option<(Vec<i64>, Vec<Rational>)> = None;
    let mut v = vec![0i64; k];
    loop {
        if v.iter().any(|&x| x != 0) && gcd_normalize(&v) == v {
            let lambda: Vec<Rational> = inv
                .data
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&v)
                        .map(|(a, &b)| a * Rational::from_integer(b.into()))
                        .sum()
                })
                .collect();
            let inside = lambda
                .iter()
                .all(|l| !l.is_negative() && *l < Rational::one());
            if inside && best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v.clone(), lambda));
            }
        }
        // odometer over the box [0, upper]
        let mut i = k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if v[i] < upper[i] {
                v[i] += 1;
                for x in v.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
            if i == 0 {
                i = usize::MAX;
                break;
            }
        }
        if i == usize::MAX {
            break;
        }
    }
    let (point, lambda) = best.ok_or_else(|| {
        AlgebraError::InvalidCone("no interior lattice point found in the parallelepiped".into())
    })?;
    for (i, l) in lambda.iter().enumerate() {
        if l.is_positive() {
            let mut sub = rays.clone();
            sub[i] = point.clone();
            refine(sub, out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_cone_examples() {
        let id = BasicCone::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(id.columns(), vec![vec![1, 0], vec![0, 1]]);
        let c = BasicCone::new(vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(c.inverse(), &[vec![1, 0], vec![-1, 1]]);
        assert_eq!(c.columns(), vec![vec![1, -1], vec![0, 1]]);
        let c = BasicCone::new(vec![vec![1, 2], vec![1, 3]]).unwrap();
        assert_eq!(c.columns(), vec![vec![3, -1], vec![-2, 1]]);
        let swapped = BasicCone::new(vec![vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(swapped.rows(), &[vec![1, 0], vec![1, 1]]);
        assert!(matches!(
            BasicCone::new(vec![vec![1, 1], vec![1, 3]]),
            Err(AlgebraError::NotBasic(_))
        ));
        assert!(matches!(
            BasicCone::new(vec![vec![1, -1], vec![0, 1]]),
            Err(AlgebraError::InvalidCone(_))
        ));
    }

    #[test]
    fn dual_membership_examples() {
        let orth = BasicCone::orthant(2);
        assert!(orth.dual_membership(&[0, 0]));
        assert!(!orth.dual_membership(&[1, -1]));
        let c = BasicCone::new(vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert!(c.dual_membership(&[1, -1]));
    }

    #[test]
    fn w_u_coordinates() {
        let c = BasicCone::new(vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(c.w_to_u(&[1, 0]), vec![1, -1]);
        let orth = BasicCone::orthant(3);
        assert_eq!(orth.w_to_u(&[2, 0, 5]), vec![2, 0, 5]);
        for a in [[0, 0], [3, 1], [2, 7]] {
            assert_eq!(c.u_to_w(&c.w_to_u(&a)), a.to_vec());
        }
    }

    #[test]
    fn monoid_matches_dual_cone_on_a_box() {
        for rows in [
            vec![vec![1, 0], vec![1, 1]],
            vec![vec![1, 2], vec![1, 3]],
            vec![vec![2, 1], vec![1, 1]],
        ] {
            let c = BasicCone::new(rows).unwrap();
            for a0 in -5..=5 {
                for a1 in -5..=5 {
                    let a = [a0, a1];
                    // coefficients of a in the C_j basis are L a
                    let coeffs = c.u_to_w(&a);
                    let in_monoid = coeffs.iter().all(|&x| x >= 0);
                    assert_eq!(c.dual_membership(&a), in_monoid, "{a:?}");
                    if a != [0, 0] && c.dual_membership(&a) {
                        assert!(c.rows().iter().any(|l| dot(l, &a) > 0));
                        assert!(!c.dual_membership(&[-a0, -a1]));
                    }
                }
            }
        }
    }

    #[test]
    fn stellar_refinement() {
        let cones = basic_refinement(&[vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!(cones.len(), 2);
        for c in &cones {
            assert_eq!(QMatrix::from_i64(c.rows()).determinant(), Rational::one());
        }
        let cones = basic_refinement(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(cones.len(), 1);
        let cones = basic_refinement(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 3]]).unwrap();
        assert!(cones.len() >= 3);
    }
}

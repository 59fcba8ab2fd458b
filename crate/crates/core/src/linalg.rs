//! Small exact linear algebra over Q (row reduction, kernels, solving).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::weyl::Rational;

/// Dense matrix over Q, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rational>>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        QMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.data[r][col].is_zero()) else {
                continue;
            };
            self.data.swap(row, p);
            let inv = self.data[row][col].recip();
            for v in self.data[row].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = self.data[row].clone();
            for r in 0..self.rows {
                if r != row && !self.data[r][col].is_zero() {
                    let f = self.data[r][col].clone();
                    for (v, pv) in self.data[r].iter_mut().zip(&pivot_row) {
                        if !pv.is_zero() {
                            *v -= &f * pv;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.data[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `M v = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.data[r][..self.cols].clone_from_slice(&self.data[r]);
            aug.data[r][self.cols] = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![Rational::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = aug.data[r][self.cols].clone();
        }
        Some(v)
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            for r in c + 1..n {
                if !m[r][c].is_zero() {
                    let f = &m[r][c] / &m[c][c];
                    for cc in c..n {
                        let v = &f * &m[c][cc];
                        m[r][cc] -= v;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for r in 0..n {
            aug.data[r][..n].clone_from_slice(&self.data[r]);
            aug.data[r][n + r] = Rational::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(QMatrix {
            rows: n,
            cols: n,
            data: aug.data.into_iter().map(|row| row[n..].to_vec()).collect(),
        })
    }

    /// Entries as `i64` if all are integers that fit.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        if q.is_integer() {
                            q.numer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Rational]) -> Vec<i64> {
    let mut l = BigInt::one();
    for q in v {
        l = l.lcm(q.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|q| (q * &l).to_integer()).collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if g.is_zero() {
        return vec![0; v.len()];
    }
    ints.iter()
        .map(|i| {
            (i / &g)
                .to_i64()
                .expect("primitive vector entry fits in i64")
        })
        .collect()
}

pub fn gcd_normalize(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g.abs()).collect()
    }
}

/// Sign of `a . b` for an integer form and a rational point.
pub fn eval_form(form: &[i64], point: &[Rational]) -> Rational {
    form.iter()
        .zip(point)
        .map(|(a, p)| p * Rational::from_integer((*a).into()))
        .fold(Rational::zero(), |acc, v| acc + v)
}

pub fn sign(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn kernel_and_solve() {
        let m = QMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &m.data {
                let s: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
        assert!(m.solve(&[q(1), q(3)]).is_none());
        let sol = m.solve(&[q(3), q(6)]).unwrap();
        assert_eq!(&sol[0] + &sol[1] * q(2) + &sol[2] * q(3), q(3));
    }

    #[test]
    fn inverse_and_det() {
        let m = QMatrix::from_i64(&[vec![1, 2], vec![1, 3]]);
        assert_eq!(m.determinant(), q(1));
        assert_eq!(
            m.inverse().unwrap().to_i64().unwrap(),
            vec![vec![3, -2], vec![-1, 1]]
        );
        assert!(QMatrix::from_i64(&[vec![1, 2], vec![2, 4]])
            .inverse()
            .is_none());
        assert_eq!(
            primitive_integer(&[Rational::new(1.into(), 2.into()), q(1)]),
            vec![1, 2]
        );
    }
}

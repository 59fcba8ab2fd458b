//! Weights and symbols computed term by term from the definitions.

use dfan_core::weyl::Rational;
use dfan_core::{LinearForm, Monomial, OpVec, ShiftMatrix};

/// V-weight `b' - a' + n^(i)` of `x^a d^b e_i`, primes meaning the first `k`
/// coordinates.
pub fn v_weight(m: &Monomial, comp: usize, shifts: &ShiftMatrix) -> Vec<i64> {
    let col = shifts.column(comp);
    (0..shifts.k())
        .map(|j| i64::from(m.d[j]) - i64::from(m.x[j]) + col[j])
        .collect()
}

pub fn l_weight(m: &Monomial, comp: usize, l: &LinearForm, shifts: &ShiftMatrix) -> Rational {
    l.eval(&v_weight(m, comp, shifts))
}

/// Terms of maximal L-weight.
pub fn top_part(b: &OpVec, l: &LinearForm, shifts: &ShiftMatrix) -> OpVec {
    let top = b.terms().map(|(c, m, _)| l_weight(m, c, l, shifts)).max();
    let mut out = OpVec::zero(b.n(), b.rank());
    let Some(top) = top else { return out };
    for (c, m, x) in b.terms() {
        if l_weight(m, c, l, shifts) == top {
            out = &out
                + &OpVec::embed(
                    dfan_core::Operator::monomial(b.n(), m.clone(), x.clone()),
                    b.rank(),
                    c + 1,
                );
        }
    }
    out
}

/// Terms of L-weight exactly `d`.
pub fn part_of_weight(b: &OpVec, l: &LinearForm, shifts: &ShiftMatrix, d: &Rational) -> OpVec {
    let mut out = OpVec::zero(b.n(), b.rank());
    for (c, m, x) in b.terms() {
        if &l_weight(m, c, l, shifts) == d {
            out = &out
                + &OpVec::embed(
                    dfan_core::Operator::monomial(b.n(), m.clone(), x.clone()),
                    b.rank(),
                    c + 1,
                );
        }
    }
    out
}

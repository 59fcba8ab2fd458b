//! The term map `x^a d^b u^s e_i -> X^a Delta^b U^(s - n^(i) + a' - b') e_i`
//! written out directly.

use dfan_core::{Monomial, ShiftMatrix};

/// `(x, d, u)` exponents of the image of `x^a d^b u^s e_i`, or `None` when
/// the term does not lie in `V[n]_s`.
pub fn iv_term(
    m: &Monomial,
    comp: usize,
    s: &[i64],
    shifts: &ShiftMatrix,
) -> Option<(Vec<u32>, Vec<u32>, Vec<u32>)> {
    let col = shifts.column(comp);
    let mut u = Vec::with_capacity(s.len());
    for j in 0..s.len() {
        let e = s[j] - col[j] + i64::from(m.x[j]) - i64::from(m.d[j]);
        u.push(u32::try_from(e).ok()?);
    }
    Some((m.x.clone(), m.d.clone(), u))
}

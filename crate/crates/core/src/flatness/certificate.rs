//! Constructive flatness: an element `Q u^s` of `W_J R^Gamma(D^r) ∩ R^Gamma(N)`
//! is written as `sum_j Q'_j u^(s - C_j) u^(C_j)` with `Q'_j` in
//! `V^Gamma_{s - C_j}(N)`.

use std::fmt;

use crate::engine::Ring;
use crate::error::{AlgebraError, Result};
use crate::filtration::{dot, in_v_gamma, multi_weight, ShiftMatrix};
use crate::standard_basis::{member_n, Membership, StandardBasis};
use crate::toric::BasicCone;
use crate::weights::{principal_symbol, symbol_l, LinearForm, TermOrder};
use crate::weyl::{OpVec, Operator, Product, Rational};

/// Intermediate data of a decomposition, enough to audit it by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditTrail {
    /// `l` with `t^l h(Q) in h(N)`.
    pub l: u32,
    /// Set when `Q` already lies in the piece with this position in `J`.
    pub direct: Option<usize>,
    /// `sigma^{L_j1}_{L_j1(s)}(t^l h(Q))` for the first `j1` of `J`.
    pub symbol: OpVec,
    /// `a_m` with `symbol = sum_m a_m sigma^{L_j1}(H_m)`.
    pub quotients: Vec<Operator>,
    /// `split[m][idx]` is the part of `a_m` sent to `J[idx]`.
    pub split: Vec<Vec<Operator>>,
}

/// A replayable decomposition of `Q` along the coordinate ideal `W_J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatCertificate {
    pub element: OpVec,
    pub degree: Vec<i64>,
    pub cone: BasicCone,
    /// `J`, 0-based and increasing.
    pub ideal: Vec<usize>,
    /// `Q'_j` for `j` in `J`, in the same order.
    pub pieces: Vec<OpVec>,
    pub trail: AuditTrail,
}

/// `s - C_j`.
fn target(cone: &BasicCone, s: &[i64], j: usize) -> Vec<i64> {
    let c = cone.column(j);
    s.iter().zip(&c).map(|(a, b)| a - b).collect()
}

/// The point `w` lies in `(s - C_j) - Gamma^v`: `L_i(w) <= L_i(s) - delta_ij`.
fn in_region(cone: &BasicCone, s: &[i64], j: usize, w: &[i64]) -> bool {
    cone.rows()
        .iter()
        .enumerate()
        .all(|(i, l)| dot(l, w) <= dot(l, s) - i64::from(i == j))
}

fn in_piece(
    v: &OpVec,
    cone: &BasicCone,
    s: &[i64],
    j: usize,
    shifts: &ShiftMatrix,
) -> Result<bool> {
    in_v_gamma(v, &target(cone, s, j), &cone.rays(), shifts)
}

fn degree_of(v: &OpVec) -> u32 {
    v.terms()
        .map(|(_, m, _)| m.x_degree() + m.d_degree())
        .max()
        .unwrap_or(0)
}

fn l_bound(q: &OpVec, basis: &StandardBasis) -> u32 {
    let db = basis.elements().iter().map(degree_of).max().unwrap_or(0);
    2 * (db + degree_of(q))
}

/// Fails unless `basis` is the reduced standard basis at every ray of the
/// cone; by convexity it is then one at every weight of the cone.
pub fn check_simultaneous(basis: &StandardBasis, cone: &BasicCone) -> Result<()> {
    for row in cone.rows() {
        let l = LinearForm::from_i64(row)?;
        if !basis.is_valid_for(&l)? {
            return Err(AlgebraError::Hypothesis(format!(
                "the cone is not inside one cone of the standard fan: the basis is not a standard basis at {l}"
            )));
        }
    }
    Ok(())
}

fn check_shapes(
    q: &OpVec,
    s: &[i64],
    cone: &BasicCone,
    ideal: &[usize],
    basis: &StandardBasis,
) -> Result<()> {
    let k = basis.shifts().k();
    if q.n() != basis.n() || q.rank() != basis.rank() || !q.is_t_free() {
        return Err(AlgebraError::DescriptorMismatch(
            "element and basis live in different modules".into(),
        ));
    }
    if s.len() != k || cone.k() != k {
        return Err(AlgebraError::DescriptorMismatch(format!(
            "degree and cone must live in Z^{k}"
        )));
    }
    if ideal.is_empty() || ideal.windows(2).any(|w| w[0] >= w[1]) || ideal.iter().any(|&j| j >= k) {
        return Err(AlgebraError::Precondition(
            "J must be a nonempty increasing list of indices below k".into(),
        ));
    }
    Ok(())
}

/// Decomposes `Q` along `W_J` using a simultaneous standard basis for the
/// cone. `parts`, when given, is the decomposition `Q = sum Q_j` with
/// `Q_j in V^Gamma_{s - C_j}(D^r)` witnessing membership in `W_J R^Gamma(D^r)`;
/// otherwise the V-Newton diagram of `Q` is checked directly.
///
/// Pieces are found in one pass: the `L_j1`-top stratum of `Q` is divided
/// by the symbols of the basis, and every quotient term is sent to the
/// smallest `j != j1` in `J` whose region contains its Newton point.
pub fn flat_decompose(
    q: &OpVec,
    s: &[i64],
    cone: &BasicCone,
    ideal: &[usize],
    basis: &StandardBasis,
    parts: Option<&[OpVec]>,
) -> Result<FlatCertificate> {
    check_shapes(q, s, cone, ideal, basis)?;
    check_simultaneous(basis, cone)?;
    let shifts = basis.shifts().clone();
    match parts {
        Some(parts) => {
            if parts.len() != ideal.len() {
                return Err(AlgebraError::Precondition("one part per index of J".into()));
            }
            let total = parts
                .iter()
                .fold(OpVec::zero(q.n(), q.rank()), |acc, p| &acc + p);
            if &total != q {
                return Err(AlgebraError::Precondition(
                    "the parts do not add up to Q".into(),
                ));
            }
            for (p, &j) in parts.iter().zip(ideal) {
                if !in_piece(p, cone, s, j, &shifts)? {
                    return Err(AlgebraError::Precondition(format!(
                        "part for j = {} is not in V^Gamma_(s - C_{})",
                        j + 1,
                        j + 1
                    )));
                }
            }
        }
        None => {
            for (comp, m, _) in q.terms() {
                let w = multi_weight(m, comp, &shifts);
                if !ideal.iter().any(|&j| in_region(cone, s, j, &w)) {
                    return Err(AlgebraError::Precondition(format!(
                        "Q has a term of weight {w:?} outside W_J R^Gamma(D^r) in degree {s:?}"
                    )));
                }
            }
        }
    }

    let l_max = l_bound(q, basis);
    let l = match member_n(q, basis, l_max)? {
        Membership::Yes(l) => l,
        Membership::NoUpToBound(b) => return Err(AlgebraError::Inconclusive(b as usize)),
    };

    let (n, r) = (q.n(), q.rank());
    let zero = OpVec::zero(n, r);
    if let Some(idx) = ideal
        .iter()
        .map(|&j| in_piece(q, cone, s, j, &shifts))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .position(|b| b)
    {
        let mut pieces = vec![zero.clone(); ideal.len()];
        pieces[idx] = q.clone();
        return Ok(FlatCertificate {
            element: q.clone(),
            degree: s.to_vec(),
            cone: cone.clone(),
            ideal: ideal.to_vec(),
            pieces,
            trail: AuditTrail {
                l,
                direct: Some(idx),
                symbol: zero,
                quotients: Vec::new(),
                split: Vec::new(),
            },
        });
    }

    let j1 = ideal[0];
    let l1 = LinearForm::from_i64(cone.row(j1))?;
    let d1 = Rational::from_integer(dot(cone.row(j1), s).into());
    let hq = q.homogenize()?.times_t(l);
    let symbol = symbol_l(&hq, &l1, &shifts, &d1)?;

    let elements = basis.elements();
    let ring = Ring {
        n,
        r,
        order: TermOrder::weighted(&l1, &shifts)?,
        product: Product::Homogenized,
    };
    let symbols: Vec<_> = elements
        .iter()
        .map(|h| Ok(ring.poly_of(&principal_symbol(h, &l1, &shifts)?)))
        .collect::<Result<_>>()?;
    let mut quotients = vec![Operator::zero(n); elements.len()];
    let rem = ring.reduce(&ring.poly_of(&symbol), &symbols, Some(&mut quotients));
    if !rem.is_zero() {
        return Err(AlgebraError::Verification(
            "the top stratum of Q does not reduce to zero modulo the basis symbols".into(),
        ));
    }

    let exps = basis.privileged_exponents();
    let mut split = vec![vec![Operator::zero(n); ideal.len()]; elements.len()];
    for (m, a) in quotients.iter().enumerate() {
        let (comp, exp) = &exps[m];
        let base = multi_weight(exp, *comp, &shifts);
        for (mono, c) in a.terms() {
            let point: Vec<i64> = base
                .iter()
                .enumerate()
                .map(|(i, b)| b + mono.d[i] as i64 - mono.x[i] as i64)
                .collect();
            let idx = (1..ideal.len())
                .find(|&idx| in_region(cone, s, ideal[idx], &point))
                .ok_or_else(|| {
                    AlgebraError::Verification(format!(
                        "quotient term with Newton point {point:?} fits no piece"
                    ))
                })?;
            split[m][idx].add_term(mono.clone(), c.clone());
        }
    }

    let mut pieces = vec![zero.clone(); ideal.len()];
    for idx in 1..ideal.len() {
        let mut rj = OpVec::zero(n, r);
        for (m, h) in elements.iter().enumerate() {
            if !split[m][idx].is_zero() {
                rj = &rj + &h.left_mul_dt(&split[m][idx])?;
            }
        }
        pieces[idx] = rj.dehomogenize();
    }
    pieces[0] = pieces[1..].iter().fold(q.clone(), |acc, p| &acc - p);

    let cert = FlatCertificate {
        element: q.clone(),
        degree: s.to_vec(),
        cone: cone.clone(),
        ideal: ideal.to_vec(),
        pieces,
        trail: AuditTrail {
            l,
            direct: None,
            symbol,
            quotients,
            split,
        },
    };
    cert.check_filtration(&shifts)?;
    Ok(cert)
}

impl FlatCertificate {
    fn check_filtration(&self, shifts: &ShiftMatrix) -> Result<()> {
        let total = self.pieces.iter().fold(
            OpVec::zero(self.element.n(), self.element.rank()),
            |acc, p| &acc + p,
        );
        if total != self.element {
            return Err(AlgebraError::Verification(
                "pieces do not add up to Q".into(),
            ));
        }
        for (p, &j) in self.pieces.iter().zip(&self.ideal) {
            if !in_piece(p, &self.cone, &self.degree, j, shifts)? {
                return Err(AlgebraError::Verification(format!(
                    "piece {} is not in V^Gamma_(s - C_{})",
                    j + 1,
                    j + 1
                )));
            }
        }
        Ok(())
    }

    /// Checks the sum, the filtration conditions and, against `reference`
    /// (any standard basis of the same module), that every piece lies in `N`.
    pub fn verify(&self, reference: &StandardBasis) -> Result<()> {
        self.check_filtration(reference.shifts())?;
        for (p, &j) in self.pieces.iter().zip(&self.ideal) {
            if p.is_zero() {
                continue;
            }
            if !matches!(
                member_n(p, reference, l_bound(p, reference))?,
                Membership::Yes(_)
            ) {
                return Err(AlgebraError::Verification(format!(
                    "piece {} is not in the module",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    /// Recomputes the certificate from its inputs and compares everything,
    /// audit trail included.
    pub fn replay(&self, basis: &StandardBasis) -> Result<()> {
        let again = flat_decompose(
            &self.element,
            &self.degree,
            &self.cone,
            &self.ideal,
            basis,
            None,
        )?;
        if &again != self {
            return Err(AlgebraError::Verification(
                "replay differs from the certificate".into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for FlatCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Q = {}", self.element)?;
        writeln!(f, "s = {:?}", self.degree)?;
        for (p, &j) in self.pieces.iter().zip(&self.ideal) {
            writeln!(f, "Q'_{} = {p}", j + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse_element;
    use crate::standard_basis::HomogenizedModule;

    fn euler() -> (HomogenizedModule, StandardBasis) {
        let g = parse_element("x1 d1 + x2 d2", 2, 1).unwrap();
        let module = HomogenizedModule::new(vec![g], ShiftMatrix::zero(2, 1)).unwrap();
        let basis = module
            .standard_basis(&LinearForm::from_i64(&[1, 1]).unwrap())
            .unwrap();
        (module, basis)
    }

    #[test]
    fn direct_piece() {
        let (_, basis) = euler();
        let q = parse_element("x1^2 d1 + x1 x2 d2", 2, 1).unwrap();
        let cone = BasicCone::orthant(2);
        let cert = flat_decompose(&q, &[0, 0], &cone, &[0, 1], &basis, None).unwrap();
        assert_eq!(cert.trail.direct, Some(0));
        assert_eq!(cert.pieces[0], q);
        assert!(cert.pieces[1].is_zero());
        cert.verify(&basis).unwrap();
        cert.replay(&basis).unwrap();
    }

    #[test]
    fn euler_split() {
        let (_, basis) = euler();
        let q = parse_element("x1 d1 + x2 d2", 2, 1).unwrap();
        let parts = [
            parse_element("x1 d1", 2, 1).unwrap(),
            parse_element("x2 d2", 2, 1).unwrap(),
        ];
        let cone = BasicCone::orthant(2);
        // s = (1, 1): x1 d1 has weight 0 <= s - e1 = (0, 1)
        let cert = flat_decompose(&q, &[1, 1], &cone, &[0, 1], &basis, Some(&parts)).unwrap();
        cert.verify(&basis).unwrap();
        cert.replay(&basis).unwrap();
        // at s = 0 the element is not in W_J R(D)
        assert!(matches!(
            flat_decompose(&q, &[0, 0], &cone, &[0, 1], &basis, None),
            Err(AlgebraError::Precondition(_))
        ));
    }

    #[test]
    fn split_needs_both_pieces() {
        let (_, basis) = euler();
        // (x1 + x2) E: x1 E sits in the first region, x2 E in the second
        let q = parse_element("x1^2 d1 + x1 x2 d2 + x1 x2 d1 + x2^2 d2", 2, 1).unwrap();
        let cone = BasicCone::orthant(2);
        let cert = flat_decompose(&q, &[0, 0], &cone, &[0, 1], &basis, None).unwrap();
        assert_eq!(cert.trail.direct, None);
        assert_eq!(
            cert.pieces[0],
            parse_element("x1^2 d1 + x1 x2 d2", 2, 1).unwrap()
        );
        assert_eq!(
            cert.pieces[1],
            parse_element("x1 x2 d1 + x2^2 d2", 2, 1).unwrap()
        );
        cert.verify(&basis).unwrap();
        cert.replay(&basis).unwrap();
        let broken = basis.without_element(0).unwrap();
        assert!(flat_decompose(&q, &[0, 0], &cone, &[0, 1], &broken, None).is_err());
    }
}

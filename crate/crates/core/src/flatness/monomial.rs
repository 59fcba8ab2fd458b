//! Monomial ideals of `C[W_1, ..., W_k]` and filtrations by quotients
//! isomorphic to `C[W] / W_J`.

use std::fmt;

use crate::error::{AlgebraError, Result};

/// A monomial ideal given by its minimal generators (an antichain for the
/// componentwise order, sorted). The zero ideal has no generators; the unit
/// ideal is generated by the zero exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    k: usize,
    generators: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    pub fn new(k: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        if k == 0 {
            return Err(AlgebraError::Precondition(
                "monomial ideals need k >= 1".into(),
            ));
        }
        if generators.iter().any(|g| g.len() != k) {
            return Err(AlgebraError::DescriptorMismatch(format!(
                "exponent vectors must have length {k}"
            )));
        }
        Ok(Self::minimalize(k, generators))
    }

    fn minimalize(k: usize, mut gens: Vec<Vec<u32>>) -> Self {
        gens.sort();
        gens.dedup();
        let minimal: Vec<Vec<u32>> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && divides(h, g)))
            .cloned()
            .collect();
        MonomialIdeal {
            k,
            generators: minimal,
        }
    }

    pub fn zero(k: usize) -> Self {
        MonomialIdeal {
            k,
            generators: Vec::new(),
        }
    }

    pub fn unit(k: usize) -> Self {
        MonomialIdeal {
            k,
            generators: vec![vec![0; k]],
        }
    }

    /// `W_J = (W_j : j in J)` for 0-based indices.
    pub fn coordinate(k: usize, j: &[usize]) -> Result<Self> {
        if j.iter().any(|&i| i >= k) {
            return Err(AlgebraError::Precondition(format!(
                "coordinate index out of 0..{k}"
            )));
        }
        let gens = j
            .iter()
            .map(|&i| {
                let mut e = vec![0; k];
                e[i] = 1;
                e
            })
            .collect();
        Ok(Self::minimalize(k, gens))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.generators.iter().any(|g| divides(g, m))
    }

    /// `H + (m)`.
    pub fn add(&self, m: &[u32]) -> MonomialIdeal {
        let mut gens = self.generators.clone();
        gens.push(m.to_vec());
        Self::minimalize(self.k, gens)
    }

    /// `(H : m)`, generated by `max(g - m, 0)`.
    pub fn colon(&self, m: &[u32]) -> MonomialIdeal {
        let gens = self
            .generators
            .iter()
            .map(|g| g.iter().zip(m).map(|(a, b)| a.saturating_sub(*b)).collect())
            .collect();
        Self::minimalize(self.k, gens)
    }

    /// `J` if this is the coordinate ideal `W_J` (the zero ideal is `W_{}`).
    pub fn as_coordinate(&self) -> Option<Vec<usize>> {
        let mut j: Vec<usize> = self
            .generators
            .iter()
            .map(|g| {
                let support: Vec<usize> = (0..self.k).filter(|&i| g[i] > 0).collect();
                (support.len() == 1 && g[support[0]] == 1).then(|| support[0])
            })
            .collect::<Option<_>>()?;
        j.sort_unstable();
        Some(j)
    }

    /// Number of monomials of degree `d` outside the ideal.
    pub fn standard_count(&self, d: u32) -> usize {
        monomials_of_degree(self.k, d)
            .filter(|m| !self.contains(m))
            .count()
    }

    /// Componentwise maximum of the generators.
    pub fn corner(&self) -> Vec<u32> {
        (0..self.k)
            .map(|i| self.generators.iter().map(|g| g[i]).max().unwrap_or(0))
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        if self.generators.is_empty() {
            write!(f, "0")?;
        }
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_w_monomial(g))?;
        }
        write!(f, ")")
    }
}

/// `W1^2 W3`, or `1` for the zero exponent.
pub fn format_w_monomial(m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("W{}", i + 1)
            } else {
                format!("W{}^{e}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// All exponents in `N^k` of total degree `d`, lexicographically decreasing.
pub fn monomials_of_degree(k: usize, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fill(&mut cur, 0, d, &mut out);
    out.into_iter()
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}

/// One step `H_{i+1} = H_i + (m)` with `(H_i : m) = W_J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub monomial: Vec<u32>,
    pub coordinates: Vec<usize>,
}

/// `H = H_0 ⊂ H_1 ⊂ ... ⊂ H_r = (1)` with `H_{i+1} / H_i ≅ C[W] / W_{J(i)}`
/// shifted by `deg m_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationChain {
    pub start: MonomialIdeal,
    pub steps: Vec<ChainStep>,
}

impl FiltrationChain {
    /// `H_0, ..., H_r`.
    pub fn ideals(&self) -> Vec<MonomialIdeal> {
        let mut out = vec![self.start.clone()];
        for step in &self.steps {
            let next = out.last().expect("nonempty").add(&step.monomial);
            out.push(next);
        }
        out
    }

    /// Recomputes every colon and checks the chain ends at `(1)`.
    pub fn validate(&self) -> Result<()> {
        let ideals = self.ideals();
        for (i, step) in self.steps.iter().enumerate() {
            let h = &ideals[i];
            if h.contains(&step.monomial) {
                return Err(AlgebraError::Verification(format!(
                    "step {i}: {} already lies in {h}",
                    format_w_monomial(&step.monomial)
                )));
            }
            if h.colon(&step.monomial).as_coordinate().as_deref() != Some(&step.coordinates[..]) {
                return Err(AlgebraError::Verification(format!(
                    "step {i}: colon by {} is not W_J for the recorded J",
                    format_w_monomial(&step.monomial)
                )));
            }
        }
        if !ideals.last().expect("nonempty").is_unit() {
            return Err(AlgebraError::Verification(
                "chain does not reach (1)".into(),
            ));
        }
        Ok(())
    }
}

/// Builds a chain by repeatedly adding the first standard monomial, by
/// degree then lexicographically decreasing exponent, whose colon is a coordinate
/// ideal. Candidates are taken from the box below the corner of the current
/// ideal, where a maximal standard monomial always qualifies.
pub fn monomial_filtration(h: &MonomialIdeal) -> FiltrationChain {
    let k = h.k();
    let mut current = h.clone();
    let mut steps = Vec::new();
    while !current.is_unit() {
        let corner = current.corner();
        let top: u32 = corner.iter().sum();
        let step = (0..=top)
            .flat_map(|d| monomials_of_degree(k, d))
            .filter(|m| divides(m, &corner) && !current.contains(m))
            .find_map(|m| {
                current
                    .colon(&m)
                    .as_coordinate()
                    .map(|coordinates| ChainStep {
                        monomial: m,
                        coordinates,
                    })
            })
            .expect("a maximal standard monomial below the corner has a coordinate colon");
        current = current.add(&step.monomial);
        steps.push(step);
    }
    FiltrationChain {
        start: h.clone(),
        steps,
    }
}

/// `(v, w)` with `a_i + v = a_p + w`, both minimal: `v = max(a_p - a_i, 0)`,
/// `w = max(a_i - a_p, 0)`.
pub fn offsets(a_i: &[u32], a_p: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let v = a_i
        .iter()
        .zip(a_p)
        .map(|(x, y)| y.saturating_sub(*x))
        .collect();
    let w = a_i
        .iter()
        .zip(a_p)
        .map(|(x, y)| x.saturating_sub(*y))
        .collect();
    (v, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_examples() {
        let h = MonomialIdeal::new(1, vec![vec![1]]).unwrap();
        let chain = monomial_filtration(&h);
        assert_eq!(
            chain.steps,
            vec![ChainStep {
                monomial: vec![0],
                coordinates: vec![0]
            }]
        );
        chain.validate().unwrap();

        assert!(monomial_filtration(&MonomialIdeal::unit(2))
            .steps
            .is_empty());

        let h = MonomialIdeal::new(2, vec![vec![2, 0], vec![0, 1]]).unwrap();
        let chain = monomial_filtration(&h);
        assert_eq!(chain.steps[0].monomial, vec![1, 0]);
        assert_eq!(chain.steps[0].coordinates, vec![0, 1]);
        chain.validate().unwrap();
    }

    #[test]
    fn zero_ideal_chain() {
        let chain = monomial_filtration(&MonomialIdeal::zero(2));
        assert_eq!(chain.steps.len(), 1);
        assert!(chain.steps[0].coordinates.is_empty());
        chain.validate().unwrap();
    }

    #[test]
    fn offsets_examples() {
        assert_eq!(offsets(&[1, 2], &[1, 2]), (vec![0, 0], vec![0, 0]));
        assert_eq!(offsets(&[2, 0], &[0, 1]), (vec![0, 1], vec![2, 0]));
        assert_eq!(offsets(&[3, 2], &[1, 2]).0, vec![0, 0]);
    }

    #[test]
    fn minimal_generators() {
        let h = MonomialIdeal::new(2, vec![vec![1, 1], vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(h.generators(), &[vec![1, 0]]);
        assert_eq!(h.to_string(), "(W1)");
        assert_eq!(h.colon(&[1, 0]), MonomialIdeal::unit(2));
    }
}

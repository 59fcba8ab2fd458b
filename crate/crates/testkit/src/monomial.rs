//! Brute-force facts about monomial ideals, by enumerating exponents.

/// Exponents of total degree `d` in `k` variables, in no particular order.
pub fn exponents(k: usize, d: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exponents(k - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn in_ideal(generators: &[Vec<u32>], m: &[u32]) -> bool {
    generators
        .iter()
        .any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
}

/// `dim_d C[W]/H`.
pub fn quotient_dim(k: usize, generators: &[Vec<u32>], d: u32) -> usize {
    exponents(k, d)
        .into_iter()
        .filter(|m| !in_ideal(generators, m))
        .count()
}

/// Whether `(H : m)` agrees with `W_J` on every monomial of degree
/// `<= top`: `u m in H` iff `u` involves some `W_j`, `j in J`.
pub fn colon_is_coordinate(generators: &[Vec<u32>], m: &[u32], j: &[usize], top: u32) -> bool {
    let k = m.len();
    (0..=top).all(|d| {
        exponents(k, d).into_iter().all(|u| {
            let um: Vec<u32> = u.iter().zip(m).map(|(a, b)| a + b).collect();
            in_ideal(generators, &um) == j.iter().any(|&i| u[i] > 0)
        })
    })
}

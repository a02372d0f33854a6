use serde::{Deserialize, Serialize};

use super::{NFunctor, SubcatFSR};
use crate::error::{Error, Result};

/// The six functors gluing `K_N` from `K_{N-r}` and `K_{r+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecollementData {
    pub n: usize,
    pub s: i64,
    pub r: usize,
    /// `i^* = J_{s-1}^⇓: K_N -> K_{N-r}`
    pub i_upper_star: NFunctor,
    /// `i_* = I_s^⇑: K_{N-r} -> K_N`
    pub i_lower_star: NFunctor,
    /// `i^! = J_s^⇓: K_N -> K_{N-r}`
    pub i_upper_shriek: NFunctor,
    /// `j_! = I_{r+s}^⇑: K_{r+1} -> K_N`
    pub j_lower_shriek: NFunctor,
    /// `j^* = J_{r+s}^⇓: K_N -> K_{r+1}`
    pub j_upper_star: NFunctor,
    /// `j_* = I_{r+s+1}^⇑: K_{r+1} -> K_N`
    pub j_lower_star: NFunctor,
}

pub fn recollement(n: usize, s: i64, r: usize) -> Result<RecollementData> {
    if r < 1 || r >= n {
        return Err(Error::OutOfRange(format!("width r = {r} outside [1, {n})")));
    }
    let s = s.rem_euclid(n as i64);
    let q = n - r - 1;
    let rs = r as i64 + s;
    Ok(RecollementData {
        n,
        s,
        r,
        i_upper_star: NFunctor::contract_iter(s - 1, n, r)?,
        i_lower_star: NFunctor::prolong_iter(s, n, r)?,
        i_upper_shriek: NFunctor::contract_iter(s, n, r)?,
        j_lower_shriek: NFunctor::prolong_iter(rs, n, q)?,
        j_upper_star: NFunctor::contract_iter(rs, n, q)?,
        j_lower_star: NFunctor::prolong_iter(rs + 1, n, q)?,
    })
}

/// The cycle `(F_1^{N-2}, F_0^1, F_2^{N-2}, F_1^1, ..., F_0^{N-2}, F_{N-1}^1)`; each
/// consecutive pair (cyclically) is a stable t-structure.
pub fn two_n_gon(n: usize) -> Vec<SubcatFSR> {
    let ni = n as i64;
    let mut v = Vec::with_capacity(2 * n);
    for k in 0..ni {
        v.push(SubcatFSR { s: (k + 1).rem_euclid(ni), r: n - 2 });
        v.push(SubcatFSR { s: k.rem_euclid(ni), r: 1 });
    }
    v
}

impl RecollementData {
    pub fn new(n: usize, s: i64, r: usize) -> Result<Self> {
        recollement(n, s, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gon_pairs_are_t_structures() {
        for n in 3..=6 {
            let g = two_n_gon(n);
            assert_eq!(g.len(), 2 * n);
            for k in 0..g.len() {
                let (a, b) = (g[k], g[(k + 1) % g.len()]);
                assert_eq!(b.r, n - a.r - 1);
                assert_eq!(b.s, (a.s + a.r as i64 + 1).rem_euclid(n as i64));
            }
        }
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{functor_d, mor_cone, mor_contraction, MorComplex, MorMap};
use crate::error::{Error, Result};
use crate::homk::HomotopyWitnessN;

/// The subcategories of `K(Mor^sm_{N-1})` that make up the 2N-gon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MorSubcatLabel {
    /// `E^s`: the windows around position `s` vanish.
    E(usize),
    /// `F^{[s,t]}`: `α^s, ..., α^{t-1}` are identities.
    F(usize, usize),
    /// `E^{[2,N-1]} = Ker D_{[1]}`.
    EUpper,
    /// `E^{[1,N-2]} = Ker D_{[N-1]}`.
    ELower,
}

impl fmt::Display for MorSubcatLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::E(s) => write!(f, "E^{s}"),
            Self::F(s, t) => write!(f, "F^[{s},{t}]"),
            Self::EUpper => write!(f, "E^[2,N-1]"),
            Self::ELower => write!(f, "E^[1,N-2]"),
        }
    }
}

impl MorSubcatLabel {
    pub fn check(&self, n: usize) -> Result<()> {
        let m = n.saturating_sub(1);
        let ok = n >= 3
            && match *self {
                Self::E(s) => (1..=m).contains(&s),
                Self::F(s, t) => 1 <= s && s < t && t <= m,
                Self::EUpper | Self::ELower => true,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("label {self} for N = {n}")))
        }
    }

    /// Windows `[a, b]` with `D_{[a,b]} X ≃ 0`, for the kernel-type labels.
    fn windows(&self, n: usize) -> Vec<(usize, usize)> {
        let m = n - 1;
        match *self {
            Self::EUpper => vec![(1, 1)],
            Self::ELower => vec![(m, m)],
            Self::E(s) => {
                let mut w = Vec::new();
                if s > 1 {
                    w.push((1, s - 1));
                }
                if s < m {
                    w.push((s + 1, m));
                }
                w
            }
            Self::F(..) => Vec::new(),
        }
    }
}

/// The cycle `(F^{[1,N-1]}, E^{[2,N-1]}, E^1, F^{[1,2]}, ..., E^{N-2}, F^{[N-2,N-1]}, E^{N-1}, E^{[1,N-2]})`.
pub fn mor_two_n_gon(n: usize) -> Vec<MorSubcatLabel> {
    use MorSubcatLabel::*;
    let mut g = vec![F(1, n - 1), EUpper];
    for s in 1..n - 1 {
        g.push(E(s));
        g.push(F(s, s + 1));
    }
    g.push(E(n - 1));
    g.push(ELower);
    g
}

/// Literal membership: components `s+1..=t` vanish for `F^{[s,t]}`, the named windows are
/// zero complexes for the kernel labels.
pub fn mor_membership(x: &MorComplex, label: MorSubcatLabel) -> Result<bool> {
    let n = x.n();
    label.check(n)?;
    let comp_zero = |u: usize| (x.lo()..=x.hi()).all(|i| x.comp_dim(i, u) == 0);
    Ok(match label {
        MorSubcatLabel::F(s, t) => (s + 1..=t).all(comp_zero),
        // D_{[a,b]} X = 0 iff the term X^b vanishes
        _ => label.windows(n).iter().all(|&(_, b)| (1..=b).all(comp_zero)),
    })
}

/// Membership up to homotopy, with witnesses.
///
/// Kernel labels: a filtered contraction of each window. `F^{[s,t]}`: a contraction of the
/// cone of the natural map `X -> R X` that collapses components `s..=t` into `s`.
pub fn mor_certify_membership(x: &MorComplex, label: MorSubcatLabel) -> Result<Option<Vec<HomotopyWitnessN>>> {
    let n = x.n();
    label.check(n)?;
    if let MorSubcatLabel::F(s, t) = label {
        let r = x.regroup(n, |u| if (s..=t).contains(&u) { s } else { u });
        let unit = MorMap::from_chain_map(x, &r, crate::ncomplex::ChainMapN::identity(x.total()));
        return Ok(mor_contraction(&mor_cone(&unit).cone).map(|h| vec![h]));
    }
    let mut out = Vec::new();
    for (a, b) in label.windows(n) {
        match mor_contraction(&functor_d(x, a, b)?) {
            Some(h) => out.push(h),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morcat::functor_u;
    use crate::ncomplex::NComplex;
    use MorSubcatLabel::*;

    const P: u32 = 7;

    #[test]
    fn cycle_shape() {
        for n in 3..=6 {
            let g = mor_two_n_gon(n);
            assert_eq!(g.len(), 2 * n);
            assert!(g.iter().all(|l| l.check(n).is_ok()));
        }
        assert!(F(2, 2).check(4).is_err());
        assert!(E(4).check(4).is_err());
    }

    #[test]
    fn zero_and_constant() {
        let z = MorComplex::zero(4, P);
        for l in mor_two_n_gon(4) {
            assert!(mor_membership(&z, l).unwrap());
            assert!(mor_certify_membership(&z, l).unwrap().is_some());
        }
        let k = NComplex::new(2, P, 0, vec![1], vec![]).unwrap();
        let u = functor_u(&k, 4).unwrap();
        assert!(mor_membership(&u, F(1, 3)).unwrap());
        assert!(mor_certify_membership(&u, F(1, 3)).unwrap().is_some());
        assert!(!mor_membership(&u, EUpper).unwrap());
        assert!(mor_certify_membership(&u, EUpper).unwrap().is_none());
    }

    #[test]
    fn contractible_first_window() {
        let k = NComplex::new(2, P, 0, vec![1], vec![]).unwrap();
        let u = functor_u(&k, 3).unwrap();
        let c = mor_cone(&MorMap::identity(&u)).cone;
        assert!(!mor_membership(&c, EUpper).unwrap());
        assert!(mor_certify_membership(&c, EUpper).unwrap().is_some());
    }
}

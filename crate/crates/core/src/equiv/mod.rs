//! The functor `F_N: K^b(Mor^sm_{N-1}) -> K^b_N` and the checks built on it.

mod transport;

pub use transport::{
    in_fsr_certified, lower_restriction_hit, lower_restriction_square, target_of, upper_restriction_hit,
    upper_restriction_square, verify_gon_transport, GonTransportReport, GonTransportRow,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::PrimeFieldMatrix;
use crate::homk::{certify_equivalent, BarDecomposition};
use crate::morcat::{mor_cone, MorComplex, MorMap};
use crate::ncomplex::{cone, direct_sum_all, mu, ChainMapN, NComplex};

/// Parameters of `Ξ^j μ^{N-1}_r C`: the result is `μ^{top}_{len} C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiEntry {
    pub j: i64,
    pub r: usize,
    pub n: usize,
    pub len: usize,
    pub top: i64,
}

/// The case split: odd `j` gives `μ^{(1-j)N/2+N-r-1}_{N-r}`, even `j` gives `μ^{(2-j)N/2-1}_r`.
pub fn xi_entry(j: i64, r: usize, n: usize) -> Result<XiEntry> {
    if r < 1 || r >= n {
        return Err(Error::OutOfRange(format!("r = {r} outside [1, {}]", n.saturating_sub(1))));
    }
    let (ni, ri) = (n as i64, r as i64);
    let (len, top) =
        if j.rem_euclid(2) == 1 { (n - r, (1 - j) * ni / 2 + ni - ri - 1) } else { (r, (2 - j) * ni / 2 - 1) };
    Ok(XiEntry { j, r, n, len, top })
}

/// `Ξ^j μ^{N-1}_r F_p^c`.
pub fn xi(j: i64, r: usize, c: usize, n: usize, p: u32) -> Result<NComplex> {
    let e = xi_entry(j, r, n)?;
    mu(n, p, e.len, e.top, c)
}

/// The literal exponent of the isomorphism table for odd `j`: `μ^{(1-j)N/2-r-1}_{N-r}`.
pub fn xi_entry_literal(j: i64, r: usize, n: usize) -> Result<XiEntry> {
    let mut e = xi_entry(j, r, n)?;
    if j.rem_euclid(2) == 1 {
        e.top -= n as i64;
    }
    Ok(e)
}

/// The conflation `0 -> Ξ^i M -> I'(Ξ^i M) -> Ξ^{i+1} M -> 0` for `M = μ^{N-1}_r F_p^c`.
pub fn xi_conflation(i: i64, r: usize, c: usize, n: usize, p: u32) -> Result<(ChainMapN, ChainMapN)> {
    let a = xi_entry(i, r, n)?;
    let sub = xi(i, r, c, n, p)?;
    let hull = mu(n, p, n, a.top, c)?;
    let quo = xi(i + 1, r, c, n, p)?;
    let id = |_: i64| PrimeFieldMatrix::identity(p, c);
    let z = |x: &NComplex, y: &NComplex, i: i64| PrimeFieldMatrix::zeros(p, y.dim(i), x.dim(i));
    let u = ChainMapN::new(&sub, &hull, |i| if sub.dim(i) > 0 { id(i) } else { z(&sub, &hull, i) })?;
    let v = ChainMapN::new(&hull, &quo, |i| if quo.dim(i) > 0 { id(i) } else { z(&hull, &quo, i) })?;
    Ok((u, v))
}

/// The block layout of `F_N(X)^j`: component `u` taken from complex degree `2i` when
/// `u <= k` and from `2i - 1` otherwise, where `j = iN + k`.
fn layout(x: &MorComplex, j: i64) -> Vec<(usize, i64, usize)> {
    let n = x.n() as i64;
    let (i, k) = (j.div_euclid(n), j.rem_euclid(n));
    (1..x.n())
        .map(|u| {
            let deg = if u as i64 <= k { 2 * i } else { 2 * i - 1 };
            (u, deg, x.comp_dim(deg, u))
        })
        .collect()
}

fn degree_window(x: &MorComplex) -> (i64, i64) {
    let n = x.n() as i64;
    (x.lo().div_euclid(2) * n, (x.hi() + 1).div_euclid(2) * n + n - 1)
}

/// `F_N(X)` in closed form.
pub fn fn_closed(x: &MorComplex) -> NComplex {
    let (n, p) = (x.n(), x.p());
    if x.is_zero() {
        return NComplex::zero(n, p);
    }
    let (lo, hi) = degree_window(x);
    let dim = |j: i64| layout(x, j).iter().map(|t| t.2).sum();
    NComplex::from_fn(n, p, lo, hi, dim, |j| {
        let (src, dst) = (layout(x, j), layout(x, j + 1));
        let k = j.rem_euclid(n as i64) as usize;
        let mut d = PrimeFieldMatrix::zeros(p, dim(j + 1), dim(j));
        let off = |l: &[(usize, i64, usize)], u: usize| l[..u - 1].iter().map(|t| t.2).sum::<usize>();
        if k == n - 1 {
            return x.total().d(src[0].1);
        }
        for u in 1..n {
            let (so, to) = (off(&src, u), off(&dst, u));
            if u != k + 1 {
                d.set_block(to, so, &PrimeFieldMatrix::identity(p, src[u - 1].2));
            } else {
                // column X_{k+1}^{2i-1} goes to the degree-2i components w <= k+1
                let deg = src[u - 1].1;
                for w in 1..=u {
                    d.set_block(off(&dst, w), so, &x.block(w, u, deg));
                }
            }
        }
        d
    })
}

/// `F_N(f)` for a morphism of Mor complexes; exactly functorial.
pub fn fn_on_map(f: &MorMap) -> ChainMapN {
    let (x, y) = (f.source(), f.target());
    let (fx, fy) = (fn_closed(x), fn_closed(y));
    let n = x.n();
    let p = x.p();
    ChainMapN::build(&fx, &fy, |j| {
        let (src, dst) = (layout(x, j), layout(y, j));
        let k = j.rem_euclid(n as i64) as usize;
        let off = |l: &[(usize, i64, usize)], u: usize| l[..u - 1].iter().map(|t| t.2).sum::<usize>();
        let mut g = PrimeFieldMatrix::zeros(p, fy.dim(j), fx.dim(j));
        for u in 1..n {
            for w in 1..=u {
                let (sdeg, tdeg) = (src[u - 1].1, dst[w - 1].1);
                let block = if sdeg == tdeg {
                    f.block(w, u, sdeg)
                } else {
                    // u > k >= w: through the target coupling, d'^{2i-1}_{w,v} f^{2i-1}_{v,u}
                    let mut acc = PrimeFieldMatrix::zeros(p, dst[w - 1].2, src[u - 1].2);
                    for v in w..=k {
                        acc = acc.add(&y.block(w, v, sdeg).mul(&f.block(v, u, sdeg)));
                    }
                    acc
                };
                g.set_block(off(&dst, w), off(&src, u), &block);
            }
        }
        g
    })
}

/// `τ_{≥i} X`.
fn truncate_below(x: &MorComplex, i: i64) -> MorComplex {
    if i > x.hi() {
        return MorComplex::zero(x.n(), x.p());
    }
    let lo = i.max(x.lo());
    let comps = (lo..=x.hi()).map(|k| x.comp_dims(k)).collect();
    let diffs = (lo..x.hi()).map(|k| x.total().d(k)).collect();
    MorComplex::new(x.n(), x.p(), lo, comps, diffs).expect("truncation")
}

/// `F_N` on a single Mor object placed in complex degree `i`: a sum of Ξ-table entries.
pub fn fn_single(x: &MorComplex, i: i64) -> NComplex {
    let (n, p) = (x.n(), x.p());
    let parts: Vec<NComplex> = (1..n).map(|u| xi(-i, n - u, x.comp_dim(i, u), n, p).expect("table entry")).collect();
    let refs: Vec<&NComplex> = parts.iter().collect();
    direct_sum_all(n, p, &refs)
}

/// `F_N(X)` by successive mapping cones of `F_N(X^i) -> F_N(τ_{≥i+1} X)`, from the top degree
/// down. Each step is compared with the closed form by a certified equivalence.
pub fn fn_iterative(x: &MorComplex) -> Result<NComplex> {
    if x.is_zero() {
        return Ok(NComplex::zero(x.n(), x.p()));
    }
    let hi = x.hi();
    let mut cur = fn_single(x, hi);
    let mut e = ChainMapN::identity(&cur);
    for i in (x.lo()..hi).rev() {
        let upper = truncate_below(x, i + 1);
        let s = MorComplex::new(x.n(), x.p(), i + 1, vec![x.comp_dims(i)], vec![]).expect("shifted object");
        let delta = MorMap::new(&s, &upper, |k| {
            if k == i + 1 {
                x.total().d(i)
            } else {
                PrimeFieldMatrix::zeros(x.p(), upper.dim(k), s.dim(k))
            }
        })?;
        let a = e.after(&fn_on_map(&delta));
        cur = cone(&a).cone;
        let whole = truncate_below(x, i);
        debug_assert_eq!(mor_cone(&delta).cone, whole);
        e = certify_equivalent(&fn_closed(&whole), &cur).map(|(f, _)| f).ok_or_else(|| {
            Error::Mismatch(format!("iterated cone at degree {i} is not equivalent to the closed form"))
        })?;
    }
    Ok(cur)
}

/// A Mor complex whose image under `F_N` is homotopy equivalent to `y`, assembled bar by bar.
pub fn fn_preimage(y: &NComplex) -> Result<MorComplex> {
    let (n, p) = (y.n(), y.p());
    if n < 2 {
        return Err(Error::OutOfRange("preimages need N >= 2".into()));
    }
    let ni = n as i64;
    let mut acc = MorComplex::zero(n, p);
    let unit = |u: usize| {
        let mut c = vec![0; n - 1];
        c[u - 1] = 1;
        c
    };
    for bar in BarDecomposition::new(y).essential_bars() {
        let (i, a) = (bar.birth.div_euclid(ni), bar.birth.rem_euclid(ni) as usize);
        let top = bar.top();
        let piece = if top == i * ni + ni - 1 {
            MorComplex::new(n, p, 2 * i, vec![unit(n - bar.len)], vec![])?
        } else if a == 0 {
            MorComplex::new(n, p, 2 * i - 1, vec![unit(bar.len)], vec![])?
        } else if top < (i + 1) * ni {
            let c = (top - i * ni) as usize;
            MorComplex::new(n, p, 2 * i - 1, vec![unit(c + 1), unit(a)], vec![PrimeFieldMatrix::identity(p, 1)])?
        } else {
            let c = (top - (i + 1) * ni) as usize;
            MorComplex::new(n, p, 2 * i, vec![unit(a), unit(c + 1)], vec![PrimeFieldMatrix::identity(p, 1)])?
        };
        acc = acc.direct_sum(&piece)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morcat::functor_u;

    const P: u32 = 7;

    #[test]
    fn table_start() {
        for n in 3..=5 {
            for r in 1..n {
                assert_eq!(xi(0, r, 1, n, P).unwrap(), mu(n, P, r, n as i64 - 1, 1).unwrap());
            }
        }
        assert!(xi_entry(0, 0, 3).is_err());
    }

    #[test]
    fn conflations_split() {
        for n in 3..=5 {
            for r in 1..n {
                for i in -2..=2 {
                    let (u, v) = xi_conflation(i, r, 2, n, P).unwrap();
                    assert!(v.after(&u).is_zero());
                    let h = u.target();
                    for d in h.lo()..=h.hi() {
                        assert_eq!(u.at(d).rank() + v.at(d).rank(), h.dim(d));
                        assert_eq!(u.at(d).rank(), u.source().dim(d));
                        assert_eq!(v.at(d).rank(), v.target().dim(d));
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_modulus_is_a_shift() {
        let z = NComplex::new(2, P, 0, vec![1, 1], vec![PrimeFieldMatrix::identity(P, 1)]).unwrap();
        let x = functor_u(&z, 2).unwrap();
        assert_eq!(fn_closed(&x), z.reindex(-1));
    }

    #[test]
    fn single_degree_matches_table() {
        for n in 2..=5 {
            for i in -2..=2 {
                let c: Vec<usize> = (1..n).map(|u| u % 3).collect();
                let x = MorComplex::new(n, P, i, vec![c], vec![]).unwrap();
                assert_eq!(fn_closed(&x), fn_single(&x, i));
            }
        }
    }
}

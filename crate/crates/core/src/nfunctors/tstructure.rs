use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{in_fsr_strict, NFunctor};
use crate::error::{Error, Result};
use crate::exactla::PrimeFieldMatrix;
use crate::homk::{self, HomotopyWitnessN};
use crate::ncomplex::{cone, ChainMapN, NComplex, TriangleN};

/// The triangle `U -> X -> C(ε) ≃ V` attached to `(F_s^r, F_{r+s+1}^{N-r-1})`.
#[derive(Clone, Debug)]
pub struct TDecomposition {
    pub s: i64,
    pub r: usize,
    pub u_part: NComplex,
    pub v_part: NComplex,
    /// `ε: U -> X`.
    pub counit: ChainMapN,
    /// `η: X -> V`.
    pub unit: ChainMapN,
    pub triangle: TriangleN,
    /// Epimorphism `C(ε) -> V` restricting to `η` on `X`.
    pub p: ChainMapN,
    /// `ker p` and its inclusion `h` into `C(ε)`.
    pub kernel: NComplex,
    pub h: ChainMapN,
    pub kernel_contraction: Option<HomotopyWitnessN>,
    /// Contraction of `C(p)`, certifying `C(ε) ≃ V`.
    pub equivalence: Option<HomotopyWitnessN>,
}

impl TDecomposition {
    pub fn u_strict(&self) -> bool {
        in_fsr_strict(&self.u_part, self.s, self.r)
    }

    pub fn v_strict(&self) -> bool {
        let n = self.u_part.n();
        in_fsr_strict(&self.v_part, self.r as i64 + self.s + 1, n - self.r - 1)
    }

    /// Degreewise exactness of `0 -> ker p -> C(ε) -> V -> 0`.
    pub fn exact(&self) -> bool {
        let c = &self.triangle.cone;
        (c.lo()..=c.hi()).all(|i| self.p.at(i).rank() == self.v_part.dim(i))
            && self.kernel.total_dim() + self.v_part.total_dim() == c.total_dim()
    }

    pub fn is_certified(&self) -> bool {
        self.u_strict()
            && self.v_strict()
            && self.exact()
            && self.kernel_contraction.is_some()
            && self.equivalence.is_some()
    }
}

/// Functors `(I_s^⇑ J_s^⇓, I_{r+s+1}^⇑ J_{r+s}^⇓)` on K_N.
pub(crate) fn truncation_functors(n: usize, s: i64, r: usize) -> Result<(NFunctor, NFunctor)> {
    if r < 1 || r >= n {
        return Err(Error::OutOfRange(format!("width r = {r} outside [1, {n})")));
    }
    let u = NFunctor::contract_iter(s, n, r)?.and_then(&NFunctor::prolong_iter(s, n, r)?)?;
    let q = n - r - 1;
    let rs = r as i64 + s;
    let v = NFunctor::contract_iter(rs, n, q)?.and_then(&NFunctor::prolong_iter(rs + 1, n, q)?)?;
    Ok((u, v))
}

/// Decompose `X` along the stable t-structure `(F_s^r, F_{r+s+1}^{N-r-1})`.
pub fn tstructure_decompose(x: &NComplex, s: i64, r: usize) -> Result<TDecomposition> {
    let n = x.n();
    let s = s.rem_euclid(n as i64);
    let (uf, vf) = truncation_functors(n, s, r)?;
    let u_part = uf.apply(x)?;
    let v_part = vf.apply(x)?;
    let counit = uf.counit(x)?;
    let unit = vf.unit(x)?;
    let triangle = cone(&counit);
    let c = &triangle.cone;
    let p = extend_unit(c, x, &v_part, &unit)
        .ok_or_else(|| Error::Mismatch("unit does not extend over the cone".into()))?;
    let (kernel, h) = homk::kernel_subcomplex(&p);
    let kernel_contraction = homk::is_contractible(&kernel);
    let equivalence = homk::is_contractible(&cone(&p).cone);
    Ok(TDecomposition { s, r, u_part, v_part, counit, unit, triangle, p, kernel, h, kernel_contraction, equivalence })
}

/// A degreewise surjective chain map `C(ε) -> V` equal to `η` on the `X` summand.
fn extend_unit(c: &NComplex, x: &NComplex, v: &NComplex, eta: &ChainMapN) -> Option<ChainMapN> {
    let p = c.p();
    let base = |i: i64| {
        let mut m = PrimeFieldMatrix::zeros(p, v.dim(i), c.dim(i));
        m.set_block(0, 0, &eta.at(i));
        m
    };
    let (part, homog) = homk::solve_extension(c, v, base, |i| x.dim(i)..c.dim(i))?;
    let surjective = |f: &ChainMapN| (c.lo()..=c.hi()).all(|i| f.at(i).rank() == v.dim(i));
    if surjective(&part) || homog.is_empty() {
        return Some(part);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best = part.clone();
    for _ in 0..32 {
        let mut f = part.clone();
        for g in &homog {
            f = f.add(&g.scale(rng.gen_range(0..p)));
        }
        if surjective(&f) {
            return Some(f);
        }
        best = f;
    }
    Some(best)
}

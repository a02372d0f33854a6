use super::subcat::{mor_certify_membership, mor_membership, mor_two_n_gon, MorSubcatLabel};
use super::{interleave_order, mor_cone, mor_contraction, mor_fiber, perm_matrix, MorComplex, MorMap, MorTriangle};
use crate::error::{Error, Result};
use crate::exactla::PrimeFieldMatrix;
use crate::homk::HomotopyWitnessN;
use crate::ncomplex::ChainMapN;

/// A consecutive pair of the 2N-gon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorEdge {
    pub from: MorSubcatLabel,
    pub to: MorSubcatLabel,
}

impl MorEdge {
    /// Edge `k` of the cycle, `0 <= k < 2N`.
    pub fn nth(n: usize, k: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::OutOfRange(format!("the 2N-gon needs N >= 3, got {n}")));
        }
        let g = mor_two_n_gon(n);
        if k >= g.len() {
            return Err(Error::OutOfRange(format!("edge {k} of a {}-gon", g.len())));
        }
        Ok(Self { from: g[k], to: g[(k + 1) % g.len()] })
    }

    pub fn all(n: usize) -> Vec<Self> {
        (0..2 * n).map(|k| Self::nth(n, k).unwrap()).collect()
    }
}

/// `U -a-> X -b-> V` with `b a ≃ 0`, and the comparison `φ: C(a) -> V` certified invertible.
#[derive(Clone, Debug)]
pub struct MorDecomposition {
    pub edge: MorEdge,
    pub u_part: MorComplex,
    pub v_part: MorComplex,
    pub a: MorMap,
    pub b: MorMap,
    /// `b a = d h + h d`.
    pub h: HomotopyWitnessN,
    pub triangle: MorTriangle,
    pub phi: MorMap,
    /// Contraction of `C(φ)`.
    pub equivalence: Option<HomotopyWitnessN>,
}

impl MorDecomposition {
    pub fn u_strict(&self) -> bool {
        mor_membership(&self.u_part, self.edge.from).unwrap_or(false)
    }

    pub fn v_strict(&self) -> bool {
        mor_membership(&self.v_part, self.edge.to).unwrap_or(false)
    }

    pub fn u_certified(&self) -> bool {
        matches!(mor_certify_membership(&self.u_part, self.edge.from), Ok(Some(_)))
    }

    pub fn v_certified(&self) -> bool {
        matches!(mor_certify_membership(&self.v_part, self.edge.to), Ok(Some(_)))
    }

    pub fn is_certified(&self) -> bool {
        self.h.certifies(self.b.after(&self.a).total())
            && self.equivalence.is_some()
            && self.u_certified()
            && self.v_certified()
    }
}

/// Decompose `X` along an edge `(𝒳, 𝒴)` of the 2N-gon as `U -> X -> V` with `U ∈ 𝒳`, `V ∈ 𝒴`.
pub fn mor_decompose(x: &MorComplex, edge: MorEdge) -> Result<MorDecomposition> {
    use MorSubcatLabel::*;
    let n = x.n();
    if !MorEdge::all(n.max(3)).contains(&edge) || n < 3 {
        return Err(Error::OutOfRange(format!(
            "({}, {}) is not an edge of the 2N-gon for N = {n}",
            edge.from, edge.to
        )));
    }
    let m = n - 1;
    let id = |from: &MorComplex, to: &MorComplex| MorMap::from_chain_map(from, to, ChainMapN::identity(x.total()));
    // u -> x given, v = C(a)
    let by_cone = |u: MorComplex, a: MorMap| {
        let t = mor_cone(&a);
        (u, t.cone.clone(), a, t.u)
    };
    // x -> v given, u = Σ^{-1} C(b)
    let by_fiber = |v: MorComplex, b: MorMap| {
        let (u, a) = mor_fiber(&b);
        (u, v, a, b)
    };
    let (u, v, a, b) = match (edge.from, edge.to) {
        (F(1, t), EUpper) if t == m => {
            let u = x.prefix(1);
            let v = x.quotient(1);
            let a = inclusion(&u, x);
            let b = projection(x, &v);
            (u, v, a, b)
        }
        (EUpper, E(1)) => {
            let u = x.regroup(n, |c| c.max(2));
            by_cone(u.clone(), id(&u, x))
        }
        (E(s), F(s2, t)) if s2 == s && t == s + 1 => {
            let v = x.regroup(n, |c| if c == s + 1 { s } else { c });
            by_fiber(v.clone(), id(x, &v))
        }
        (F(s, t), E(s2)) if t == s + 1 && s2 == s + 1 => {
            if s + 2 <= m {
                let u = x.regroup(n, |c| if c == s + 1 { s + 2 } else { c });
                by_cone(u.clone(), id(&u, x))
            } else {
                let u = x.prefix(m - 1);
                by_cone(u.clone(), inclusion(&u, x))
            }
        }
        (E(s), ELower) if s == m => {
            let u = x.regroup(n, |_| m);
            by_cone(u.clone(), id(&u, x))
        }
        (ELower, F(1, t)) if t == m => {
            let v = x.regroup(n, |_| 1);
            by_fiber(v.clone(), id(x, &v))
        }
        _ => unreachable!("edge membership checked above"),
    };
    let ba = b.after(&a);
    let h =
        ba.null_homotopy().ok_or_else(|| Error::Mismatch("composite of the triangle is not null-homotopic".into()))?;
    let triangle = mor_cone(&a);
    let phi = comparison(&triangle, &b, &h, &v);
    let equivalence = mor_contraction(&mor_cone(&phi).cone);
    Ok(MorDecomposition { edge, u_part: u, v_part: v, a, b, h, triangle, phi, equivalence })
}

/// Inclusion of a subcomplex made of leading basis vectors in each component.
fn inclusion(sub: &MorComplex, x: &MorComplex) -> MorMap {
    let p = x.p();
    MorMap::build(sub, x, |i| {
        let mut m = PrimeFieldMatrix::zeros(p, x.dim(i), sub.dim(i));
        for u in 1..x.n() {
            let k = sub.comp_dim(i, u);
            m.set_block(x.comp_offset(i, u), sub.comp_offset(i, u), &PrimeFieldMatrix::identity(p, k));
        }
        m
    })
}

/// Projection onto a quotient made of trailing basis vectors in each component.
fn projection(x: &MorComplex, q: &MorComplex) -> MorMap {
    let p = x.p();
    MorMap::build(x, q, |i| {
        let mut m = PrimeFieldMatrix::zeros(p, q.dim(i), x.dim(i));
        for u in 1..x.n() {
            let k = q.comp_dim(i, u);
            let skip = x.comp_dim(i, u) - k;
            m.set_block(q.comp_offset(i, u), x.comp_offset(i, u) + skip, &PrimeFieldMatrix::identity(p, k));
        }
        m
    })
}

/// `φ = [b, h]: C(a) -> V`, written in the componentwise basis of the cone.
fn comparison(t: &MorTriangle, b: &MorMap, h: &HomotopyWitnessN, v: &MorComplex) -> MorMap {
    let (u, x) = (t.f.source(), t.f.target());
    let p = x.p();
    MorMap::build(&t.cone, v, |i| {
        let mut raw = PrimeFieldMatrix::zeros(p, v.dim(i), x.dim(i) + u.dim(i + 1));
        raw.set_block(0, 0, &b.at(i));
        raw.set_block(0, x.dim(i), &h.at(i + 1));
        let order = interleave_order(&x.comp_dims(i), &u.comp_dims(i + 1));
        raw.mul(&perm_matrix(p, &order).transpose())
    })
}

//! Complexes over `Mor^sm_{N-1}` of F_p-spaces and their homotopy category.
//!
//! An object `X^1 -> ... -> X^{N-1}` of split monomorphisms is stored in canonical split
//! form: components `X_1, ..., X_{N-1}` with `X^t = X_1 ⊕ ... ⊕ X_t` and standard
//! inclusions. A complex of such objects is then a single ordinary complex (the last
//! term) whose differential is block upper triangular in the component grading.

mod decompose;
mod subcat;

pub use decompose::{mor_decompose, MorDecomposition, MorEdge};
pub use subcat::{mor_certify_membership, mor_membership, mor_two_n_gon, MorSubcatLabel};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::PrimeFieldMatrix;
use crate::homk::{self, HomotopyWitnessN};
use crate::ncomplex::{self, ChainMapN, NComplex};

/// A single object of `Mor^sm_{N-1}` in canonical form: component dimensions `c_1..c_{N-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MorObject {
    pub n: usize,
    pub p: u32,
    pub c: Vec<usize>,
}

impl MorObject {
    /// `dim X^t = c_1 + ... + c_t`.
    pub fn term_dim(&self, t: usize) -> usize {
        self.c[..t].iter().sum()
    }

    /// The structure map `X^t -> X^{t+1}`, a standard inclusion.
    pub fn alpha(&self, t: usize) -> PrimeFieldMatrix {
        let mut a = PrimeFieldMatrix::zeros(self.p, self.term_dim(t + 1), self.term_dim(t));
        a.set_block(0, 0, &PrimeFieldMatrix::identity(self.p, self.term_dim(t)));
        a
    }
}

/// Put a sequence of injective maps `V^1 -> V^2 -> ... -> V^{N-1}` into canonical form.
///
/// Returns the canonical object and, for each term, the invertible matrix `B^t` whose
/// columns are the new basis in old coordinates; `(B^{t+1})^{-1} α^t B^t` is then the
/// standard inclusion.
pub fn canonical_split_form(
    p: u32,
    first_dim: usize,
    alphas: &[PrimeFieldMatrix],
) -> Result<(MorObject, Vec<PrimeFieldMatrix>)> {
    let mut c = vec![first_dim];
    let mut bases = vec![PrimeFieldMatrix::identity(p, first_dim)];
    for (t, a) in alphas.iter().enumerate() {
        let prev = bases.last().unwrap();
        if a.cols() != prev.rows() {
            return Err(Error::ShapeMismatch(format!(
                "structure map {} has {} columns, expected {}",
                t + 1,
                a.cols(),
                prev.rows()
            )));
        }
        if a.rank() != a.cols() {
            return Err(Error::NotSplitMono(format!("structure map {} is not injective", t + 1)));
        }
        let image = a.mul(prev);
        let extra = image.complement_units();
        let mut b = PrimeFieldMatrix::zeros(p, a.rows(), a.rows());
        b.set_block(0, 0, &image);
        for (k, &u) in extra.iter().enumerate() {
            b.set(u, image.cols() + k, 1);
        }
        c.push(extra.len());
        bases.push(b);
    }
    let n = alphas.len() + 2;
    Ok((MorObject { n, p, c }, bases))
}

/// A bounded complex over `Mor^sm_{N-1}` in canonical split form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MorComplex {
    n: usize,
    total: NComplex,
    comps: Vec<Vec<usize>>,
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(sizes.len() + 1);
    let mut acc = 0;
    for &s in sizes {
        o.push(acc);
        acc += s;
    }
    o.push(acc);
    o
}

/// `P` with `(P v)[k] = v[order[k]]`.
fn perm_matrix(p: u32, order: &[usize]) -> PrimeFieldMatrix {
    let mut m = PrimeFieldMatrix::zeros(p, order.len(), order.len());
    for (k, &o) in order.iter().enumerate() {
        m.set(k, o, 1);
    }
    m
}

/// Order that turns `[A_1..A_m | B_1..B_m]` into `[A_1 B_1 | ... | A_m B_m]`.
fn interleave_order(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (oa, ob) = (offsets(a), offsets(b));
    let shift = oa[a.len()];
    let mut order = Vec::new();
    for u in 0..a.len() {
        order.extend(oa[u]..oa[u + 1]);
        order.extend(ob[u] + shift..ob[u + 1] + shift);
    }
    order
}

impl MorComplex {
    /// Validated constructor: `comp_dims[k][u]` is `dim X_{u+1}^{lo+k}` and `diffs[k]` the total
    /// differential out of degree `lo + k`, which must be block upper triangular with square zero.
    pub fn new(n: usize, p: u32, lo: i64, comp_dims: Vec<Vec<usize>>, diffs: Vec<PrimeFieldMatrix>) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange("Mor complexes need N >= 2".into()));
        }
        if let Some(row) = comp_dims.iter().find(|r| r.len() != n - 1) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} component dimensions per degree, got {}",
                n - 1,
                row.len()
            )));
        }
        let dims = comp_dims.iter().map(|r| r.iter().sum()).collect();
        let total = NComplex::new(2, p, lo, dims, diffs)?;
        for (k, row) in comp_dims.iter().enumerate() {
            let i = lo + k as i64;
            if total.dim(i) == 0 {
                continue;
            }
            let (so, to) = (offsets(row), offsets(comp_dims.get(k + 1).unwrap_or(&vec![0; n - 1])));
            let d = total.d(i);
            for u in 0..n - 1 {
                for v in 0..u {
                    let b = d.block(to[u], so[v], to[u + 1] - to[u], so[v + 1] - so[v]);
                    if !b.is_zero() {
                        return Err(Error::Mismatch(format!(
                            "coupling block ({}, {}) at degree {i} lies below the diagonal",
                            u + 1,
                            v + 1
                        )));
                    }
                }
            }
        }
        let comps = (total.lo()..=total.hi()).map(|i| comp_dims[(i - lo) as usize].clone()).collect();
        Ok(Self { n, total, comps })
    }

    /// Build from a total complex and a component split that is known to be valid.
    pub(crate) fn from_total(n: usize, total: NComplex, comp: impl Fn(i64) -> Vec<usize>) -> Self {
        let comps: Vec<Vec<usize>> = (total.lo()..=total.hi()).map(comp).collect();
        let x = Self { n, total, comps };
        debug_assert!(x.check_shape().is_ok(), "{:?}", x.check_shape());
        x
    }

    fn check_shape(&self) -> Result<()> {
        for i in self.lo()..=self.hi() {
            let c = self.comp_dims(i);
            if c.len() != self.n - 1 || c.iter().sum::<usize>() != self.total.dim(i) {
                return Err(Error::ShapeMismatch(format!("component split at degree {i}")));
            }
            for u in 1..self.n {
                for v in 1..u {
                    if !self.block(u, v, i).is_zero() {
                        return Err(Error::Mismatch(format!("block ({u}, {v}) at degree {i}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.total.validate()?;
        self.check_shape()
    }

    pub fn zero(n: usize, p: u32) -> Self {
        Self { n, total: NComplex::zero(2, p), comps: Vec::new() }
    }

    /// Modulus `N`; objects are sequences of length `N - 1`.
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> u32 {
        self.total.p()
    }
    pub fn lo(&self) -> i64 {
        self.total.lo()
    }
    pub fn hi(&self) -> i64 {
        self.total.hi()
    }
    pub fn is_zero(&self) -> bool {
        self.total.is_zero()
    }
    pub fn components(&self) -> usize {
        self.n - 1
    }

    /// The last term `X^{N-1}` as an ordinary complex.
    pub fn total(&self) -> &NComplex {
        &self.total
    }

    pub fn dim(&self, i: i64) -> usize {
        self.total.dim(i)
    }

    pub fn comp_dims(&self, i: i64) -> Vec<usize> {
        if self.is_zero() || i < self.lo() || i > self.hi() {
            return vec![0; self.n - 1];
        }
        self.comps[(i - self.lo()) as usize].clone()
    }

    /// `dim X_u^i` for `1 <= u <= N-1`.
    pub fn comp_dim(&self, i: i64, u: usize) -> usize {
        self.comp_dims(i)[u - 1]
    }

    /// Offset of component `u` inside the total space at degree `i`.
    pub fn comp_offset(&self, i: i64, u: usize) -> usize {
        self.comp_dims(i)[..u - 1].iter().sum()
    }

    /// Component (1-based) holding basis vector `idx` of degree `i`.
    pub fn comp_of(&self, i: i64, idx: usize) -> usize {
        let mut acc = 0;
        for (u, d) in self.comp_dims(i).into_iter().enumerate() {
            acc += d;
            if idx < acc {
                return u + 1;
            }
        }
        panic!("index {idx} outside degree {i}")
    }

    /// The coupling block `d^i_{uv}: X_v^i -> X_u^{i+1}`.
    pub fn block(&self, u: usize, v: usize, i: i64) -> PrimeFieldMatrix {
        self.total.d(i).block(
            self.comp_offset(i + 1, u),
            self.comp_offset(i, v),
            self.comp_dim(i + 1, u),
            self.comp_dim(i, v),
        )
    }

    /// Component `u` with its diagonal differential.
    pub fn component(&self, u: usize) -> NComplex {
        NComplex::from_fn(2, self.p(), self.lo(), self.hi(), |i| self.comp_dim(i, u), |i| self.block(u, u, i))
    }

    /// The term `X^t = X_1 ⊕ ... ⊕ X_t`, a subcomplex of the total.
    pub fn term(&self, t: usize) -> NComplex {
        let w = |i: i64| self.comp_offset(i, t) + self.comp_dim(i, t);
        NComplex::from_fn(2, self.p(), self.lo(), self.hi(), w, |i| self.total.d(i).block(0, 0, w(i + 1), w(i)))
    }

    pub fn object(&self, i: i64) -> MorObject {
        MorObject { n: self.n, p: self.p(), c: self.comp_dims(i) }
    }

    pub fn same_category(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!("Mor lengths {} and {}", self.n - 1, other.n - 1)));
        }
        if self.p() != other.p() {
            return Err(Error::ModulusMismatch(self.p(), other.p()));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_category(other)?;
        let (lo, hi) = match (self.is_zero(), other.is_zero()) {
            (true, _) => return Ok(other.clone()),
            (_, true) => return Ok(self.clone()),
            _ => (self.lo().min(other.lo()), self.hi().max(other.hi())),
        };
        let m = self.n - 1;
        let order = |i: i64| interleave_order(&self.comp_dims(i), &other.comp_dims(i));
        let total = NComplex::from_fn(
            2,
            self.p(),
            lo,
            hi,
            |i| self.dim(i) + other.dim(i),
            |i| {
                let d = PrimeFieldMatrix::direct_sum(self.p(), &[&self.total.d(i), &other.total.d(i)]);
                perm_matrix(self.p(), &order(i + 1)).mul(&d).mul(&perm_matrix(self.p(), &order(i)).transpose())
            },
        );
        Ok(Self::from_total(self.n, total, |i| (1..=m).map(|u| self.comp_dim(i, u) + other.comp_dim(i, u)).collect()))
    }

    /// Conjugate the total differential degreewise by `g(i)`, which must be block upper
    /// triangular and invertible.
    pub fn conjugate(&self, g: impl Fn(i64) -> PrimeFieldMatrix) -> Self {
        let gi: Vec<PrimeFieldMatrix> = (self.lo()..=self.hi() + 1).map(&g).collect();
        let at = |i: i64| &gi[(i - self.lo()) as usize];
        let total = NComplex::from_fn(
            2,
            self.p(),
            self.lo(),
            self.hi(),
            |i| self.dim(i),
            |i| at(i + 1).mul(&self.total.d(i)).mul(&at(i).inverse().expect("invertible change of basis")),
        );
        Self::from_total(self.n, total, |i| self.comp_dims(i))
    }

    /// Merge components along a non-decreasing map `pi` (1-based) into `n_to - 1` components.
    pub(crate) fn regroup(&self, n_to: usize, pi: impl Fn(usize) -> usize) -> Self {
        let m = self.n - 1;
        debug_assert!((1..m).all(|u| pi(u) <= pi(u + 1)));
        Self::from_total(n_to, self.total.clone(), |i| {
            let mut c = vec![0; n_to - 1];
            for u in 1..=m {
                c[pi(u) - 1] += self.comp_dim(i, u);
            }
            c
        })
    }

    /// The subcomplex of components `1..=t`, padded with zero components.
    pub(crate) fn prefix(&self, t: usize) -> Self {
        let total = self.term(t);
        Self::from_total(self.n, total, |i| (1..self.n).map(|u| if u <= t { self.comp_dim(i, u) } else { 0 }).collect())
    }

    /// The quotient by components `1..=t`, keeping the component positions.
    pub(crate) fn quotient(&self, t: usize) -> Self {
        let skip = |i: i64| self.comp_offset(i, t) + self.comp_dim(i, t);
        let total = NComplex::from_fn(
            2,
            self.p(),
            self.lo(),
            self.hi(),
            |i| self.dim(i) - skip(i),
            |i| {
                let d = self.total.d(i);
                d.block(skip(i + 1), skip(i), d.rows() - skip(i + 1), d.cols() - skip(i))
            },
        );
        Self::from_total(self.n, total, |i| (1..self.n).map(|u| if u > t { self.comp_dim(i, u) } else { 0 }).collect())
    }

    /// `(X ⊕ ...)^i` with `i -> i + k` and the differential multiplied by `(-1)^k`.
    fn shifted(&self, k: i64) -> Self {
        let p = self.p();
        let sign = |m: PrimeFieldMatrix| if k.rem_euclid(2) == 1 { m.neg() } else { m };
        let total =
            NComplex::from_fn(2, p, self.lo() - k, self.hi() - k, |i| self.dim(i + k), |i| sign(self.total.d(i + k)));
        Self::from_total(self.n, total, |i| self.comp_dims(i + k))
    }
}

impl std::fmt::Debug for MorComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MorComplex(N={}, p={}, [{}, {}])", self.n, self.p(), self.lo(), self.hi())?;
        for i in self.lo()..=self.hi() {
            writeln!(f, "  X^{i}: {:?}", self.comp_dims(i))?;
            if i < self.hi() {
                writeln!(f, "  d^{i} = {:?}", self.total.d(i))?;
            }
        }
        Ok(())
    }
}

/// Suspension in `K(Mor^sm)`: `(ΣX)^i = X^{i+1}` with negated differential.
pub fn mor_suspension(x: &MorComplex) -> MorComplex {
    x.shifted(1)
}

pub fn mor_desuspension(x: &MorComplex) -> MorComplex {
    x.shifted(-1)
}

/// `U_{N-1}`: an ordinary complex as the constant sequence of identities.
pub fn functor_u(z: &NComplex, n: usize) -> Result<MorComplex> {
    if z.n() != 2 {
        return Err(Error::Mismatch(format!("U expects an ordinary complex, got modulus {}", z.n())));
    }
    if n < 2 {
        return Err(Error::OutOfRange("Mor complexes need N >= 2".into()));
    }
    Ok(MorComplex::from_total(n, z.clone(), |i| {
        let mut c = vec![0; n - 1];
        c[0] = z.dim(i);
        c
    }))
}

/// `E^{⇑}`: prepend zero terms so that a sequence of length `r` becomes one of length `N - 1`.
pub fn functor_eup(x: &MorComplex, n_to: usize) -> Result<MorComplex> {
    let r = x.n - 1;
    if n_to < x.n {
        return Err(Error::OutOfRange(format!("cannot lift length {r} to length {}", n_to.saturating_sub(1))));
    }
    let pad = n_to - 1 - r;
    Ok(MorComplex::from_total(n_to, x.total.clone(), |i| {
        let mut c = vec![0; pad];
        c.extend(x.comp_dims(i));
        c
    }))
}

/// `D_{[s,t]}`: the subsequence `X^s -> ... -> X^t`, a complex over `Mor^sm_{t-s+1}`.
pub fn functor_d(x: &MorComplex, s: usize, t: usize) -> Result<MorComplex> {
    if s < 1 || s > t || t > x.n - 1 {
        return Err(Error::OutOfRange(format!("window [{s}, {t}] outside [1, {}]", x.n - 1)));
    }
    let n_to = t - s + 2;
    let cut = x.prefix(t);
    Ok(cut.regroup(n_to, |u| {
        if u <= s {
            1
        } else if u <= t {
            u - s + 1
        } else {
            n_to - 1
        }
    }))
}

/// A morphism of complexes over `Mor^sm`: a chain map of the totals that is block upper
/// triangular (it preserves every term of the filtration).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MorMap {
    source: MorComplex,
    target: MorComplex,
    map: ChainMapN,
}

/// Entry `(row, col)` of a map `X^i -> Y^j` respects the filtration.
fn filtered(x: &MorComplex, y: &MorComplex, i: i64, j: i64, row: usize, col: usize) -> bool {
    y.comp_of(j, row) <= x.comp_of(i, col)
}

impl MorMap {
    pub fn new(source: &MorComplex, target: &MorComplex, f: impl Fn(i64) -> PrimeFieldMatrix) -> Result<Self> {
        source.same_category(target)?;
        let map = ChainMapN::new(&source.total, &target.total, f)?;
        let m = Self { source: source.clone(), target: target.clone(), map };
        let (lo, hi) = m.map.window();
        for i in lo..=hi {
            let fi = m.map.at(i);
            for r in 0..fi.rows() {
                for c in 0..fi.cols() {
                    if fi.get(r, c) != 0 && !filtered(source, target, i, i, r, c) {
                        return Err(Error::Mismatch(format!("entry ({r}, {c}) of f^{i} breaks the filtration")));
                    }
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn build(source: &MorComplex, target: &MorComplex, f: impl Fn(i64) -> PrimeFieldMatrix) -> Self {
        let map = ChainMapN::build(&source.total, &target.total, f);
        Self { source: source.clone(), target: target.clone(), map }
    }

    pub(crate) fn from_chain_map(source: &MorComplex, target: &MorComplex, map: ChainMapN) -> Self {
        Self { source: source.clone(), target: target.clone(), map }
    }

    pub fn identity(x: &MorComplex) -> Self {
        Self::from_chain_map(x, x, ChainMapN::identity(&x.total))
    }

    pub fn zero(x: &MorComplex, y: &MorComplex) -> Self {
        Self::from_chain_map(x, y, ChainMapN::zero(&x.total, &y.total))
    }

    pub fn source(&self) -> &MorComplex {
        &self.source
    }
    pub fn target(&self) -> &MorComplex {
        &self.target
    }

    /// The underlying chain map of last terms.
    pub fn total(&self) -> &ChainMapN {
        &self.map
    }

    pub fn at(&self, i: i64) -> PrimeFieldMatrix {
        self.map.at(i)
    }

    /// The block `f^i_{wu}: X_u^i -> Y_w^i`.
    pub fn block(&self, w: usize, u: usize, i: i64) -> PrimeFieldMatrix {
        let (x, y) = (&self.source, &self.target);
        self.at(i).block(y.comp_offset(i, w), x.comp_offset(i, u), y.comp_dim(i, w), x.comp_dim(i, u))
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &MorMap) -> MorMap {
        Self::from_chain_map(&g.source, &self.target, self.map.after(&g.map))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_chain_map(&self.source, &self.target, self.map.add(&other.map))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_chain_map(&self.source, &self.target, self.map.sub(&other.map))
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::from_chain_map(&self.source, &self.target, self.map.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    /// A block upper triangular homotopy `h` with `f = d h + h d`, if one exists.
    pub fn null_homotopy(&self) -> Option<HomotopyWitnessN> {
        let (x, y) = (&self.source, &self.target);
        let sm = |i: i64, r: usize, c: usize| filtered(x, y, i, i - 1, r, c);
        homk::masked_null_homotopy(&self.map, &sm)
    }
}

/// `Y -> C(f)` and `C(f) -> ΣX` for `f: X -> Y`; `C(f)^i = Y^i ⊕ X^{i+1}` componentwise.
#[derive(Clone, Debug)]
pub struct MorTriangle {
    pub f: MorMap,
    pub cone: MorComplex,
    pub u: MorMap,
    pub v: MorMap,
}

pub fn mor_cone(f: &MorMap) -> MorTriangle {
    let (x, y) = (&f.source, &f.target);
    let p = x.p();
    let t = ncomplex::cone(&f.map);
    let order = |i: i64| interleave_order(&y.comp_dims(i), &x.comp_dims(i + 1));
    let pm = |i: i64| perm_matrix(p, &order(i));
    let c = &t.cone;
    let total =
        NComplex::from_fn(2, p, c.lo(), c.hi(), |i| c.dim(i), |i| pm(i + 1).mul(&c.d(i)).mul(&pm(i).transpose()));
    let cone =
        MorComplex::from_total(x.n, total, |i| (1..x.n).map(|u| y.comp_dim(i, u) + x.comp_dim(i + 1, u)).collect());
    let sx = mor_suspension(x);
    let u = MorMap::build(y, &cone, |i| pm(i).mul(&t.u.at(i)));
    let v = MorMap::build(&cone, &sx, |i| t.v.at(i).mul(&pm(i).transpose()));
    MorTriangle { f: f.clone(), cone, u, v }
}

/// `Σ^{-1} C(f)` together with its projection to `X`.
pub fn mor_fiber(f: &MorMap) -> (MorComplex, MorMap) {
    let t = mor_cone(f);
    let fib = mor_desuspension(&t.cone);
    let a = MorMap::build(&fib, &f.source, |i| t.v.at(i - 1));
    (fib, a)
}

/// Basis of `Hom_{C(Mor)}(X, Y)`.
pub fn mor_chain_map_space(x: &MorComplex, y: &MorComplex) -> Result<Vec<MorMap>> {
    x.same_category(y)?;
    let fm = |i: i64, r: usize, c: usize| filtered(x, y, i, i, r, c);
    Ok(homk::masked_chain_map_space(&x.total, &y.total, &fm)
        .into_iter()
        .map(|m| MorMap::from_chain_map(x, y, m))
        .collect())
}

/// `dim Hom_{K(Mor^sm)}(X, Y)`: filtered chain maps modulo filtered null-homotopies.
pub fn mor_homk_dim(x: &MorComplex, y: &MorComplex) -> Result<usize> {
    x.same_category(y)?;
    let fm = |i: i64, r: usize, c: usize| filtered(x, y, i, i, r, c);
    let sm = |i: i64, r: usize, c: usize| filtered(x, y, i, i - 1, r, c);
    Ok(homk::masked_homk_dim(&x.total, &y.total, &fm, &sm))
}

/// A filtered contraction of `X`. It exists iff every component is contractible; the
/// witness perturbs the blockwise contraction by the off-diagonal couplings.
pub fn mor_contraction(x: &MorComplex) -> Option<HomotopyWitnessN> {
    let p = x.p();
    let mut parts = Vec::with_capacity(x.n - 1);
    for u in 1..x.n {
        parts.push(homk::is_contractible(&x.component(u))?);
    }
    let t = &x.total;
    let h0 = |i: i64| {
        let blocks: Vec<PrimeFieldMatrix> = parts.iter().map(|h| h.at(i)).collect();
        PrimeFieldMatrix::direct_sum(p, &blocks.iter().collect::<Vec<_>>())
    };
    let diag = |i: i64| {
        let blocks: Vec<PrimeFieldMatrix> = (1..x.n).map(|u| x.block(u, u, i)).collect();
        PrimeFieldMatrix::direct_sum(p, &blocks.iter().collect::<Vec<_>>())
    };
    // h = h0 (1 + δ h0)^{-1}, δ = d - diag(d)
    let h = HomotopyWitnessN::from_fn(t, t, |i| {
        let delta = t.d(i - 1).sub(&diag(i - 1));
        let q = PrimeFieldMatrix::identity(p, t.dim(i)).add(&delta.mul(&h0(i)));
        h0(i).mul(&q.inverse().expect("unipotent"))
    });
    let id = ChainMapN::identity(t);
    if h.certifies(&id) {
        return Some(h);
    }
    MorMap::identity(x).null_homotopy()
}

/// Contraction of the cone of `f`, certifying that `f` is invertible in `K(Mor^sm)`.
pub fn mor_certify_equivalence(f: &MorMap) -> Option<HomotopyWitnessN> {
    mor_contraction(&mor_cone(f).cone)
}

/// A raw object `V^1 -> ... -> V^{N-1}` of injective maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorObject {
    pub first_dim: usize,
    pub alphas: Vec<PrimeFieldMatrix>,
}

impl MorComplex {
    /// Canonicalize a complex given by raw objects and the differentials of their last terms.
    /// Each differential must carry every term into the corresponding term.
    pub fn from_raw(n: usize, p: u32, lo: i64, objects: &[RawMorObject], diffs: &[PrimeFieldMatrix]) -> Result<Self> {
        let mut canon = Vec::with_capacity(objects.len());
        for o in objects {
            if o.alphas.len() + 2 != n {
                return Err(Error::ShapeMismatch(format!(
                    "object of length {}, expected {}",
                    o.alphas.len() + 1,
                    n - 1
                )));
            }
            canon.push(canonical_split_form(p, o.first_dim, &o.alphas)?);
        }
        let top = |k: usize| canon[k].1.last().unwrap();
        let mut new_diffs = Vec::with_capacity(diffs.len());
        for (k, d) in diffs.iter().enumerate() {
            let b1 = top(k + 1).inverse().expect("basis");
            if d.shape() != (b1.cols(), top(k).rows()) {
                return Err(Error::ShapeMismatch(format!("d^{} has shape {:?}", lo + k as i64, d.shape())));
            }
            new_diffs.push(b1.mul(d).mul(top(k)));
        }
        let comp_dims = canon.into_iter().map(|(o, _)| o.c).collect();
        Self::new(n, p, lo, comp_dims, new_diffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 101;

    fn k_at(i: i64) -> NComplex {
        NComplex::new(2, P, i, vec![1], vec![]).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let (o, b) = canonical_split_form(P, 2, &[PrimeFieldMatrix::identity(P, 2)]).unwrap();
        assert_eq!(o.c, vec![2, 0]);
        assert!(b.iter().all(|m| m.is_identity()));
        let a = PrimeFieldMatrix::from_rows(P, &[&[3], &[5]]);
        let (o, b) = canonical_split_form(P, 1, std::slice::from_ref(&a)).unwrap();
        assert_eq!(o.c, vec![1, 1]);
        assert_eq!(b[1].inverse().unwrap().mul(&a).mul(&b[0]), o.alpha(1));
        let (o, _) = canonical_split_form(P, 0, &[PrimeFieldMatrix::zeros(P, 0, 0)]).unwrap();
        assert_eq!(o.c, vec![0, 0]);
        let bad = PrimeFieldMatrix::zeros(P, 2, 1);
        assert!(matches!(canonical_split_form(P, 1, &[bad]), Err(Error::NotSplitMono(_))));
    }

    #[test]
    fn lower_coupling_rejected() {
        let d = PrimeFieldMatrix::from_rows(P, &[&[0], &[1]]);
        assert!(MorComplex::new(3, P, 0, vec![vec![0, 1], vec![1, 0]], vec![d.clone()]).is_err());
        let d = PrimeFieldMatrix::from_rows(P, &[&[1]]);
        assert!(MorComplex::new(3, P, 0, vec![vec![0, 1], vec![1, 0]], vec![d]).is_ok());
    }

    #[test]
    fn point_hom() {
        let u = functor_u(&k_at(0), 3).unwrap();
        assert_eq!(mor_homk_dim(&u, &u).unwrap(), 1);
        let i = mor_cone(&MorMap::identity(&u)).cone;
        assert_eq!(mor_homk_dim(&u, &i).unwrap(), 0);
        assert!(mor_contraction(&i).is_some());
        assert!(mor_contraction(&u).is_none());
    }

    #[test]
    fn windows() {
        let u = functor_u(&k_at(0), 4).unwrap();
        assert_eq!(functor_d(&u, 1, 3).unwrap(), u);
        let d2 = functor_d(&u, 2, 3).unwrap();
        assert_eq!(d2.n(), 3);
        assert_eq!(d2.comp_dims(0), vec![1, 0]);
        let e = functor_eup(&d2, 4).unwrap();
        assert_eq!(e.comp_dims(0), vec![0, 1, 0]);
        assert_eq!(functor_d(&e, 2, 3).unwrap(), d2);
        assert!(functor_d(&u, 3, 2).is_err());
    }
}

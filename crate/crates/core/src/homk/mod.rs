//! The homotopy category K_N: chain-map spaces, null-homotopies and hom dimensions.

mod bars;

pub use crate::ncomplex::ChainMapN;
pub use bars::{Bar, BarDecomposition};

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::Result;
use crate::exactla::sparse::SparseRow;
use crate::exactla::{field, PrimeFieldMatrix, SparseEchelon, Vector};
use crate::ncomplex::{cone, mu, NComplex};

/// Homotopy data `s^i: X^i -> Y^{i-N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitnessN {
    source: NComplex,
    target: NComplex,
    lo: i64,
    comps: Vec<PrimeFieldMatrix>,
}

/// Flattening of a family of matrices `(degree, rows, cols)` into one coordinate vector,
/// ordered by degree then row-major.
#[derive(Clone, Debug)]
struct Layout {
    blocks: Vec<(i64, usize, usize, usize)>,
    total: usize,
}

impl Layout {
    fn new(degrees: impl Iterator<Item = i64>, shape: impl Fn(i64) -> (usize, usize)) -> Self {
        let mut blocks = Vec::new();
        let mut total = 0;
        for i in degrees {
            let (r, c) = shape(i);
            blocks.push((i, r, c, total));
            total += r * c;
        }
        Self { blocks, total }
    }

    fn block(&self, i: i64) -> Option<(usize, usize, usize)> {
        let k = i - self.blocks.first()?.0;
        if k < 0 {
            return None;
        }
        self.blocks.get(k as usize).map(|&(_, r, c, o)| (r, c, o))
    }

    fn unpack(&self, p: u32, v: &[u32], i: i64) -> PrimeFieldMatrix {
        let (r, c, o) = self.block(i).expect("degree in layout");
        PrimeFieldMatrix::new(p, r, c, v[o..o + r * c].to_vec()).expect("block shape")
    }

    fn pack(&self, mut get: impl FnMut(i64) -> PrimeFieldMatrix) -> Vector {
        let mut v = vec![0; self.total];
        for &(i, r, c, o) in &self.blocks {
            let m = get(i);
            debug_assert_eq!(m.shape(), (r, c));
            v[o..o + r * c].copy_from_slice(m.entries());
        }
        v
    }
}

fn map_layout(x: &NComplex, y: &NComplex) -> Layout {
    let (lo, hi) = (x.lo().max(y.lo()), x.hi().min(y.hi()));
    Layout::new(lo..=hi, |i| (y.dim(i), x.dim(i)))
}

fn homotopy_window(x: &NComplex, y: &NComplex) -> (i64, i64) {
    let sh = x.n() as i64 - 1;
    (x.lo().max(y.lo() + sh), x.hi().min(y.hi() + sh))
}

fn homotopy_layout(x: &NComplex, y: &NComplex) -> Layout {
    let sh = x.n() as i64 - 1;
    let (lo, hi) = homotopy_window(x, y);
    Layout::new(lo..=hi, |i| (y.dim(i - sh), x.dim(i)))
}

impl HomotopyWitnessN {
    pub fn zero(x: &NComplex, y: &NComplex) -> Self {
        let sh = x.n() as i64 - 1;
        let (lo, hi) = homotopy_window(x, y);
        let comps = (lo..=hi).map(|i| PrimeFieldMatrix::zeros(x.p(), y.dim(i - sh), x.dim(i))).collect();
        Self { source: x.clone(), target: y.clone(), lo, comps }
    }

    pub(crate) fn from_fn(x: &NComplex, y: &NComplex, s: impl Fn(i64) -> PrimeFieldMatrix) -> Self {
        let (lo, hi) = homotopy_window(x, y);
        Self { source: x.clone(), target: y.clone(), lo, comps: (lo..=hi).map(s).collect() }
    }

    pub fn source(&self) -> &NComplex {
        &self.source
    }
    pub fn target(&self) -> &NComplex {
        &self.target
    }

    /// `s^i: X^i -> Y^{i-N+1}`.
    pub fn at(&self, i: i64) -> PrimeFieldMatrix {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.comps.len() {
            return self.comps[k as usize].clone();
        }
        let sh = self.source.n() as i64 - 1;
        PrimeFieldMatrix::zeros(self.source.p(), self.target.dim(i - sh), self.source.dim(i))
    }

    /// The map `f^i = Σ_{j=1}^{N} d_Y^{(N-j)} s^{i+j-1} d_X^{(j-1)}`.
    pub fn apply(&self) -> ChainMapN {
        let (x, y) = (&self.source, &self.target);
        let n = x.n();
        ChainMapN::build(x, y, |i| {
            let mut f = PrimeFieldMatrix::zeros(x.p(), y.dim(i), x.dim(i));
            for j in 1..=n {
                let t = i + j as i64 - 1;
                let term = y.d_pow(t - n as i64 + 1, n - j).mul(&self.at(t)).mul(&x.d_pow(i, j - 1));
                f = f.add(&term);
            }
            f
        })
    }

    /// True when the formula reproduces `f` exactly.
    pub fn certifies(&self, f: &ChainMapN) -> bool {
        f.source() == &self.source && f.target() == &self.target && self.apply() == *f
    }

    /// Transport along `(a, b)`: the witness of `b ∘ f ∘ a` given one for `f`.
    pub fn conjugate(&self, a: &ChainMapN, b: &ChainMapN) -> Self {
        let sh = self.source.n() as i64 - 1;
        Self::from_fn(a.source(), b.target(), |i| b.at(i - sh).mul(&self.at(i)).mul(&a.at(i)))
    }
}

/// Entry filter `(degree, row, col) -> allowed` for maps or homotopies.
pub(crate) type Mask<'a> = &'a dyn Fn(i64, usize, usize) -> bool;

/// Columns of the linear map `s ↦ f` as sparse vectors in the map layout.
fn homotopy_operator(x: &NComplex, y: &NComplex) -> (Layout, Layout, Vec<SparseRow>) {
    homotopy_operator_masked(x, y, None)
}

/// As [`homotopy_operator`], with the columns of masked-out homotopy entries emptied.
fn homotopy_operator_masked(x: &NComplex, y: &NComplex, sm: Option<Mask>) -> (Layout, Layout, Vec<SparseRow>) {
    let n = x.n();
    let sh = n as i64 - 1;
    let p = x.p();
    let fl = map_layout(x, y);
    let sl = homotopy_layout(x, y);
    let mut cols: Vec<Vec<(usize, u32)>> = vec![Vec::new(); sl.total];
    for &(t, sr, sc, so) in &sl.blocks {
        for j in 1..=n {
            let i = t - j as i64 + 1;
            let Some((fr, fc, fo)) = fl.block(i) else { continue };
            let a = y.d_pow(t - sh, n - j);
            let b = x.d_pow(i, j - 1);
            // unit s[r][c] contributes a[:, r] * b[c, :]
            for r in 0..sr {
                for c in 0..sc {
                    let col = &mut cols[so + r * sc + c];
                    for u in 0..fr {
                        let av = a.get(u, r);
                        if av == 0 {
                            continue;
                        }
                        for w in 0..fc {
                            let bv = b.get(c, w);
                            if bv != 0 {
                                col.push((fo + u * fc + w, field::mul(p, av, bv)));
                            }
                        }
                    }
                }
            }
        }
    }
    if let Some(m) = sm {
        for &(t, sr, sc, so) in &sl.blocks {
            for k in 0..sr * sc {
                if !m(t, k / sc, k % sc) {
                    cols[so + k].clear();
                }
            }
        }
    }
    let cols = cols
        .into_iter()
        .map(|c| {
            let mut acc: std::collections::BTreeMap<usize, u32> = Default::default();
            for (k, v) in c {
                let e = acc.entry(k).or_insert(0);
                *e = field::add(p, *e, v);
            }
            acc.into_iter().filter(|&(_, v)| v != 0).collect()
        })
        .collect();
    (fl, sl, cols)
}

/// Commutation constraints `f^{i+1} d_X^i - d_Y^i f^i = 0` as sparse rows.
fn chain_constraints(x: &NComplex, y: &NComplex, fl: &Layout) -> Vec<SparseRow> {
    let p = x.p();
    let mut rows = Vec::new();
    let Some(&(lo, ..)) = fl.blocks.first() else { return rows };
    let hi = fl.blocks.last().unwrap().0;
    for i in lo - 1..=hi {
        let dx = x.d(i);
        let dy = y.d(i);
        let next = fl.block(i + 1);
        let cur = fl.block(i);
        for a in 0..y.dim(i + 1) {
            for b in 0..x.dim(i) {
                let mut row = Vec::new();
                if let Some((_, nc, no)) = next {
                    for c in 0..x.dim(i + 1) {
                        let v = dx.get(c, b);
                        if v != 0 {
                            row.push((no + a * nc + c, v));
                        }
                    }
                }
                if let Some((_, cc, co)) = cur {
                    for c in 0..y.dim(i) {
                        let v = dy.get(a, c);
                        if v != 0 {
                            row.push((co + c * cc + b, field::neg(p, v)));
                        }
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn unpack_map(x: &NComplex, y: &NComplex, fl: &Layout, v: &[u32]) -> ChainMapN {
    ChainMapN::build(x, y, |i| fl.unpack(x.p(), v, i))
}

/// Basis of all chain maps `X -> Y`.
pub fn chain_map_space(x: &NComplex, y: &NComplex) -> Result<Vec<ChainMapN>> {
    x.same_category(y)?;
    let fl = map_layout(x, y);
    let mut e = SparseEchelon::new(x.p(), fl.total);
    for r in chain_constraints(x, y, &fl) {
        e.push(r, 0);
    }
    Ok(e.kernel_basis().iter().map(|v| unpack_map(x, y, &fl, v)).collect())
}

/// Basis of the null-homotopic chain maps `X -> Y`.
pub fn nullhomotopic_space(x: &NComplex, y: &NComplex) -> Result<Vec<ChainMapN>> {
    x.same_category(y)?;
    let (fl, _, cols) = homotopy_operator(x, y);
    let mut e = SparseEchelon::new(x.p(), fl.total);
    let mut basis = Vec::new();
    for c in cols {
        if e.push(c.iter().copied(), 0) {
            let mut v = vec![0; fl.total];
            for (k, a) in c {
                v[k] = a;
            }
            basis.push(unpack_map(x, y, &fl, &v));
        }
    }
    Ok(basis)
}

/// `dim Hom_K(X, Y)` by solving both linear systems on the full complexes.
pub fn homk_dim_direct(x: &NComplex, y: &NComplex) -> Result<usize> {
    x.same_category(y)?;
    let fl = map_layout(x, y);
    let mut z = SparseEchelon::new(x.p(), fl.total);
    for r in chain_constraints(x, y, &fl) {
        z.push(r, 0);
    }
    let cycles = fl.total - z.rank();
    let (fl, _, cols) = homotopy_operator(x, y);
    let mut b = SparseEchelon::new(x.p(), fl.total);
    for c in cols {
        b.push(c, 0);
    }
    Ok(cycles - b.rank())
}

type PairKey = (usize, u32, usize, usize, i64);

fn pair_cache() -> &'static Mutex<HashMap<PairKey, usize>> {
    static CACHE: OnceLock<Mutex<HashMap<PairKey, usize>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Hom dimension between two interval complexes `mu` (by birth and length).
fn interval_hom(n: usize, p: u32, a: Bar, b: Bar) -> usize {
    let key = (n, p, a.len, b.len, b.birth - a.birth);
    if let Some(&v) = pair_cache().lock().unwrap().get(&key) {
        return v;
    }
    let x = mu(n, p, a.len, a.len as i64 - 1, 1).unwrap();
    let y = mu(n, p, b.len, key.4 + b.len as i64 - 1, 1).unwrap();
    let v = homk_dim_direct(&x, &y).unwrap();
    pair_cache().lock().unwrap().insert(key, v);
    v
}

/// `dim Hom_{K_N}(X, Y)`: sums the hom dimensions between the non-contractible
/// interval summands of `X` and `Y`, which agrees with [`homk_dim_direct`].
pub fn homk_dim(x: &NComplex, y: &NComplex) -> Result<usize> {
    x.same_category(y)?;
    let bx = BarDecomposition::new(x);
    let by = BarDecomposition::new(y);
    let (n, p) = (x.n(), x.p());
    let mut total = 0;
    for a in bx.essential_bars() {
        for b in by.essential_bars() {
            // intervals that are N or more apart cannot interact
            if (b.birth - a.birth).abs() <= 2 * n as i64 {
                total += interval_hom(n, p, a, b);
            }
        }
    }
    Ok(total)
}

/// A witness `s` with `apply(s) = f`, if one exists.
pub fn is_null_homotopic(f: &ChainMapN) -> Result<Option<HomotopyWitnessN>> {
    f.check()?;
    Ok(null_homotopy_with(f, None))
}

fn null_homotopy_with(f: &ChainMapN, sm: Option<Mask>) -> Option<HomotopyWitnessN> {
    let (x, y) = (f.source(), f.target());
    let (fl, sl, cols) = homotopy_operator_masked(x, y, sm);
    let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); fl.total];
    for (j, c) in cols.iter().enumerate() {
        for &(k, v) in c {
            rows[k].push((j, v));
        }
    }
    let rhs = fl.pack(|i| f.at(i));
    let mut e = SparseEchelon::new(x.p(), sl.total);
    for (row, b) in rows.into_iter().zip(rhs) {
        e.push(row, b);
        if e.is_inconsistent() {
            return None;
        }
    }
    let s = e.solve()?;
    let w = HomotopyWitnessN::from_fn(x, y, |i| sl.unpack(x.p(), &s, i));
    debug_assert!(w.certifies(f));
    Some(w)
}

/// A contraction of `X`, found from its interval decomposition and verified.
pub fn is_contractible(x: &NComplex) -> Option<HomotopyWitnessN> {
    BarDecomposition::new(x).contraction()
}

/// `f` is invertible in K_N iff its cone is contractible.
pub fn is_homotopy_equivalence(f: &ChainMapN) -> Result<bool> {
    f.check()?;
    Ok(is_contractible(&cone(f).cone).is_some())
}

/// A comparison map `X -> Y` matching the non-contractible interval summands, when the
/// two multisets agree. Certified separately by [`is_homotopy_equivalence`].
pub fn minimal_model_map(x: &NComplex, y: &NComplex) -> Option<ChainMapN> {
    BarDecomposition::new(x).matching_map(&BarDecomposition::new(y))
}

/// Certified equivalence `X ≃ Y`: a comparison map together with a contraction of its cone.
pub fn certify_equivalent(x: &NComplex, y: &NComplex) -> Option<(ChainMapN, HomotopyWitnessN)> {
    let f = minimal_model_map(x, y)?;
    let w = is_contractible(&cone(&f).cone)?;
    Some((f, w))
}

/// Chain maps `X -> Y` of the form `base + Q` where `Q` is supported on the columns
/// `free(i)` of each degree. Returns a particular solution and the homogeneous maps.
pub(crate) fn solve_extension(
    x: &NComplex,
    y: &NComplex,
    base: impl Fn(i64) -> PrimeFieldMatrix,
    free: impl Fn(i64) -> std::ops::Range<usize>,
) -> Option<(ChainMapN, Vec<ChainMapN>)> {
    let p = x.p();
    let (lo, hi) = (x.lo().max(y.lo()), x.hi().min(y.hi()));
    let ql = Layout::new(lo..=hi, |i| (y.dim(i), free(i).len()));
    let mut e = SparseEchelon::new(p, ql.total);
    for i in lo - 1..=hi {
        let (dx, dy) = (x.d(i), y.d(i));
        let resid = base(i + 1).mul(&dx).sub(&dy.mul(&base(i)));
        let (fn_, fc) = (free(i + 1), free(i));
        for a in 0..y.dim(i + 1) {
            for b in 0..x.dim(i) {
                let mut row = Vec::new();
                if let Some((_, w, o)) = ql.block(i + 1) {
                    for (k, c) in fn_.clone().enumerate() {
                        let v = dx.get(c, b);
                        if v != 0 {
                            row.push((o + a * w + k, v));
                        }
                    }
                }
                if let Some((_, w, o)) = ql.block(i) {
                    if fc.contains(&b) {
                        for c in 0..y.dim(i) {
                            let v = dy.get(a, c);
                            if v != 0 {
                                row.push((o + c * w + (b - fc.start), field::neg(p, v)));
                            }
                        }
                    }
                }
                e.push(row, field::neg(p, resid.get(a, b)));
                if e.is_inconsistent() {
                    return None;
                }
            }
        }
    }
    let embed = |v: &[u32], with_base: bool| {
        ChainMapN::build(x, y, |i| {
            let mut m = if with_base { base(i) } else { PrimeFieldMatrix::zeros(p, y.dim(i), x.dim(i)) };
            if let Some((r, w, o)) = ql.block(i) {
                let q = PrimeFieldMatrix::new(p, r, w, v[o..o + r * w].to_vec()).unwrap();
                m.add_block(0, free(i).start, &q);
            }
            m
        })
    };
    let part = embed(&e.solve()?, true);
    let homog = e.kernel_basis().iter().map(|v| embed(v, false)).collect();
    Some((part, homog))
}

/// The degreewise kernel of `f` as a subcomplex, with its inclusion.
pub fn kernel_subcomplex(f: &ChainMapN) -> (NComplex, ChainMapN) {
    let x = f.source();
    let p = x.p();
    let basis = |i: i64| PrimeFieldMatrix::from_columns(p, x.dim(i), &f.at(i).kernel_basis());
    // coordinates w.r.t. an independent set of columns via a square invertible minor
    let coords = |i: i64, v: &PrimeFieldMatrix| {
        let k = basis(i);
        let rows = k.transpose().independent_columns();
        let minor = k.select_rows(&rows).inverse().expect("independent columns");
        let c = minor.mul(&v.select_rows(&rows));
        debug_assert_eq!(k.mul(&c), *v);
        c
    };
    let (lo, hi) = (x.lo(), x.hi());
    let v = NComplex::from_fn(x.n(), p, lo, hi, |i| basis(i).cols(), |i| coords(i + 1, &x.d(i).mul(&basis(i))));
    let h = ChainMapN::build(&v, x, |i| {
        let b = basis(i);
        if b.cols() == v.dim(i) {
            b
        } else {
            PrimeFieldMatrix::zeros(p, x.dim(i), v.dim(i))
        }
    });
    (v, h)
}

fn masked_cycles(x: &NComplex, y: &NComplex, fm: Mask) -> (Layout, SparseEchelon) {
    let fl = map_layout(x, y);
    let mut z = SparseEchelon::new(x.p(), fl.total);
    for r in chain_constraints(x, y, &fl) {
        z.push(r, 0);
    }
    for &(i, r, c, o) in &fl.blocks {
        for k in 0..r * c {
            if !fm(i, k / c, k % c) {
                z.push([(o + k, 1)], 0);
            }
        }
    }
    (fl, z)
}

/// Basis of chain maps with entries restricted by `fm`.
pub(crate) fn masked_chain_map_space(x: &NComplex, y: &NComplex, fm: Mask) -> Vec<ChainMapN> {
    let (fl, z) = masked_cycles(x, y, fm);
    z.kernel_basis().iter().map(|v| unpack_map(x, y, &fl, v)).collect()
}

/// Hom dimension in the homotopy category where maps obey `fm` and homotopies obey `sm`.
/// The image of an `sm`-homotopy must itself obey `fm`.
pub(crate) fn masked_homk_dim(x: &NComplex, y: &NComplex, fm: Mask, sm: Mask) -> usize {
    let (fl, z) = masked_cycles(x, y, fm);
    let cycles = fl.total - z.rank();
    let (fl, _, cols) = homotopy_operator_masked(x, y, Some(sm));
    let mut b = SparseEchelon::new(x.p(), fl.total);
    for c in cols {
        b.push(c, 0);
    }
    cycles - b.rank()
}

/// A null-homotopy of `f` whose entries obey `sm`.
pub(crate) fn masked_null_homotopy(f: &ChainMapN, sm: Mask) -> Option<HomotopyWitnessN> {
    null_homotopy_with(f, Some(sm))
}

/// Flattened coordinates of a chain map in the `(degree, row-major)` order.
pub fn flatten(f: &ChainMapN) -> Vector {
    map_layout(f.source(), f.target()).pack(|i| f.at(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncomplex::{injective_hull, suspension};

    const P: u32 = 101;

    fn k0() -> NComplex {
        mu(3, P, 1, 0, 1).unwrap()
    }

    #[test]
    fn point_complex() {
        let x = k0();
        assert_eq!(chain_map_space(&x, &x).unwrap().len(), 1);
        assert_eq!(nullhomotopic_space(&x, &x).unwrap().len(), 0);
        assert_eq!(homk_dim(&x, &x).unwrap(), 1);
        assert_eq!(homk_dim_direct(&x, &x).unwrap(), 1);
        assert!(is_null_homotopic(&ChainMapN::identity(&x)).unwrap().is_none());
        assert!(is_contractible(&x).is_none());
    }

    #[test]
    fn empty_cases() {
        let x = k0();
        let z = NComplex::zero(3, P);
        assert!(chain_map_space(&x, &z).unwrap().is_empty());
        assert!(nullhomotopic_space(&z, &x).unwrap().is_empty());
        assert!(is_contractible(&z).is_some());
        let w = is_null_homotopic(&ChainMapN::zero(&x, &x)).unwrap().unwrap();
        assert_eq!(w, HomotopyWitnessN::zero(&x, &x));
    }

    #[test]
    fn hull_is_contractible() {
        let x = mu(3, P, 2, 1, 2).unwrap();
        let (i, _) = injective_hull(&x);
        let w = is_contractible(&i).unwrap();
        assert!(w.certifies(&ChainMapN::identity(&i)));
        assert!(is_null_homotopic(&ChainMapN::identity(&i)).unwrap().is_some());
        assert_eq!(homk_dim(&x, &i).unwrap(), 0);
        assert_eq!(nullhomotopic_space(&x, &i).unwrap().len(), chain_map_space(&x, &i).unwrap().len());
    }

    #[test]
    fn sigma_mu_vanishing() {
        for n in 3..=4 {
            for r in 1..n {
                for r2 in 1..n {
                    let x = mu(n, P, r, n as i64 - 1, 1).unwrap();
                    let y = mu(n, P, r2, n as i64 - 1, 1).unwrap();
                    let sy = suspension(&y);
                    assert_eq!(homk_dim(&x, &sy).unwrap(), 0);
                    assert_eq!(homk_dim_direct(&x, &sy).unwrap(), 0);
                }
            }
        }
    }
}

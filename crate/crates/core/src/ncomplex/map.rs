use super::NComplex;
use crate::error::{Error, Result};
use crate::exactla::PrimeFieldMatrix;

/// A morphism `f: X -> Y` of N-complexes, `f^i: X^i -> Y^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMapN {
    source: NComplex,
    target: NComplex,
    lo: i64,
    comps: Vec<PrimeFieldMatrix>,
}

fn overlap(x: &NComplex, y: &NComplex) -> (i64, i64) {
    (x.lo().max(y.lo()), x.hi().min(y.hi()))
}

impl ChainMapN {
    /// Checked constructor; `f(i)` is queried on the overlap of the supports.
    pub fn new(source: &NComplex, target: &NComplex, f: impl Fn(i64) -> PrimeFieldMatrix) -> Result<Self> {
        source.same_category(target)?;
        let (lo, hi) = overlap(source, target);
        let comps: Vec<PrimeFieldMatrix> = (lo..=hi).map(f).collect();
        for (k, c) in comps.iter().enumerate() {
            let i = lo + k as i64;
            if c.shape() != (target.dim(i), source.dim(i)) {
                return Err(Error::ShapeMismatch(format!(
                    "f^{i} is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    target.dim(i),
                    source.dim(i)
                )));
            }
        }
        let m = Self { source: source.clone(), target: target.clone(), lo, comps };
        m.check()?;
        Ok(m)
    }

    /// Constructor for maps that are chain maps by construction.
    pub(crate) fn build(source: &NComplex, target: &NComplex, f: impl Fn(i64) -> PrimeFieldMatrix) -> Self {
        let (lo, hi) = overlap(source, target);
        let comps = (lo..=hi).map(f).collect();
        let m = Self { source: source.clone(), target: target.clone(), lo, comps };
        debug_assert!(m.check().is_ok(), "constructed map is not a chain map");
        m
    }

    pub fn identity(x: &NComplex) -> Self {
        Self::build(x, x, |i| PrimeFieldMatrix::identity(x.p(), x.dim(i)))
    }

    pub fn zero(x: &NComplex, y: &NComplex) -> Self {
        Self::build(x, y, |i| PrimeFieldMatrix::zeros(x.p(), y.dim(i), x.dim(i)))
    }

    pub fn source(&self) -> &NComplex {
        &self.source
    }
    pub fn target(&self) -> &NComplex {
        &self.target
    }

    pub fn at(&self, i: i64) -> PrimeFieldMatrix {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.comps.len() {
            return self.comps[k as usize].clone();
        }
        PrimeFieldMatrix::zeros(self.source.p(), self.target.dim(i), self.source.dim(i))
    }

    /// Degrees where the component can be nonzero.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.lo + self.comps.len() as i64 - 1)
    }

    /// First degree where `f d_X != d_Y f`.
    pub fn check(&self) -> Result<()> {
        let (lo, hi) = self.window();
        for i in lo - 1..=hi {
            let a = self.at(i + 1).mul(&self.source.d(i));
            let b = self.target.d(i).mul(&self.at(i));
            if a != b {
                return Err(Error::NotChainMap(i));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// `self ∘ g`
    pub fn compose_after(&self, g: &ChainMapN) -> Result<ChainMapN> {
        if g.target != self.source {
            return Err(Error::Mismatch("composable maps need target(g) = source(f)".into()));
        }
        Ok(Self::build(&g.source, &self.target, |i| self.at(i).mul(&g.at(i))))
    }

    /// `self ∘ g`, panicking on mismatch.
    pub fn after(&self, g: &ChainMapN) -> ChainMapN {
        self.compose_after(g).expect("composable maps")
    }

    fn assert_parallel(&self, other: &Self) {
        assert!(self.source == other.source && self.target == other.target, "maps are not parallel");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_parallel(other);
        Self::build(&self.source, &self.target, |i| self.at(i).add(&other.at(i)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_parallel(other);
        Self::build(&self.source, &self.target, |i| self.at(i).sub(&other.at(i)))
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::build(&self.source, &self.target, |i| self.at(i).scale(c))
    }

    /// True when every component is invertible (an isomorphism in C_N).
    pub fn is_isomorphism(&self) -> bool {
        let (lo, hi) = (self.source.lo().min(self.target.lo()), self.source.hi().max(self.target.hi()));
        (lo..=hi).all(|i| self.at(i).inverse().is_some())
    }

    /// Inverse of a degreewise isomorphism.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_isomorphism() {
            return None;
        }
        Some(Self::build(&self.target, &self.source, |i| self.at(i).inverse().unwrap()))
    }
}

impl std::fmt::Debug for ChainMapN {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChainMapN {:?} -> {:?}", self.source.dims(), self.target.dims())?;
        for (k, c) in self.comps.iter().enumerate() {
            write!(f, "\n f^{} = {:?}", self.lo + k as i64, c)?;
        }
        Ok(())
    }
}

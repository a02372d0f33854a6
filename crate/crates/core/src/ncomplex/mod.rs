//! Bounded N-complexes of finite-dimensional F_p-spaces.

mod cone;
mod map;

pub use cone::{cone, desuspension, injective_hull, suspension, TriangleN};
pub use map::ChainMapN;

use crate::error::{Error, Result};
use crate::exactla::{field, PrimeFieldMatrix};

/// An N-complex with finite support. `d(i): X^i -> X^{i+1}` acts on column vectors.
///
/// Zero-dimensional degrees at either end of the window are trimmed on construction,
/// so structural equality is equality of normal forms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NComplex {
    n: usize,
    p: u32,
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<PrimeFieldMatrix>,
}

impl NComplex {
    /// Validated constructor. `diffs[k]` is the differential out of degree `lo + k`; there
    /// must be exactly `dims.len() - 1` of them (or none for an empty window).
    pub fn new(n: usize, p: u32, lo: i64, dims: Vec<usize>, diffs: Vec<PrimeFieldMatrix>) -> Result<Self> {
        if n < 1 {
            return Err(Error::OutOfRange("modulus N must be positive".into()));
        }
        field::check_prime(p)?;
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::ShapeMismatch(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.p() != p {
                return Err(Error::ModulusMismatch(p, d.p()));
            }
            if d.shape() != (dims[k + 1], dims[k]) {
                return Err(Error::ShapeMismatch(format!(
                    "d^{} is {}x{}, expected {}x{}",
                    lo + k as i64,
                    d.rows(),
                    d.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        let x = Self { n, p, lo, dims, diffs }.trimmed();
        x.check_axiom()?;
        Ok(x)
    }

    /// Build over `[lo, hi]` from closures; used by every internal construction.
    /// Panics if the result violates the axiom, which would be a bug in the caller.
    pub(crate) fn from_fn(
        n: usize,
        p: u32,
        lo: i64,
        hi: i64,
        dim: impl Fn(i64) -> usize,
        diff: impl Fn(i64) -> PrimeFieldMatrix,
    ) -> Self {
        if hi < lo {
            return Self::zero(n, p);
        }
        let dims: Vec<usize> = (lo..=hi).map(&dim).collect();
        let diffs: Vec<PrimeFieldMatrix> = (lo..hi).map(&diff).collect();
        for (k, d) in diffs.iter().enumerate() {
            assert_eq!(d.shape(), (dims[k + 1], dims[k]), "bad shape at degree {}", lo + k as i64);
        }
        let x = Self { n, p, lo, dims, diffs }.trimmed();
        debug_assert!(x.check_axiom().is_ok(), "constructed complex violates the axiom");
        x
    }

    pub fn zero(n: usize, p: u32) -> Self {
        Self { n, p, lo: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    fn trimmed(mut self) -> Self {
        let first = self.dims.iter().position(|&d| d > 0);
        let Some(first) = first else {
            return Self::zero(self.n, self.p);
        };
        let last = self.dims.iter().rposition(|&d| d > 0).unwrap();
        self.dims.truncate(last + 1);
        self.diffs.truncate(last);
        self.dims.drain(..first);
        self.diffs.drain(..first);
        self.lo += first as i64;
        self
    }

    /// First degree `i` with `d^{i+N-1} ... d^i != 0`.
    fn check_axiom(&self) -> Result<()> {
        let len = self.dims.len();
        if len <= self.n {
            return Ok(());
        }
        for k in 0..len - self.n {
            let i = self.lo + k as i64;
            if !self.diff_product(i, i + self.n as i64).is_zero() {
                return Err(Error::AxiomViolation(i));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    /// Lowest nonzero degree (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }
    /// Highest nonzero degree (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }
    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim(&self, i: i64) -> usize {
        if i < self.lo {
            return 0;
        }
        self.dims.get((i - self.lo) as usize).copied().unwrap_or(0)
    }

    /// `d^i`, a zero matrix of the right shape outside the window.
    pub fn d(&self, i: i64) -> PrimeFieldMatrix {
        if i >= self.lo && i < self.hi() {
            return self.diffs[(i - self.lo) as usize].clone();
        }
        PrimeFieldMatrix::zeros(self.p, self.dim(i + 1), self.dim(i))
    }

    /// Composite `X^from -> X^to`; the identity when `from == to`.
    pub fn diff_product(&self, from: i64, to: i64) -> PrimeFieldMatrix {
        assert!(from <= to);
        let mut m = PrimeFieldMatrix::identity(self.p, self.dim(from));
        for i in from..to {
            m = self.d(i).mul(&m);
        }
        m
    }

    /// `d^{(k)}` starting at degree `i`.
    pub fn d_pow(&self, i: i64, k: usize) -> PrimeFieldMatrix {
        self.diff_product(i, i + k as i64)
    }

    pub fn same_category(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.n != other.n {
            return Err(Error::Mismatch(format!("N = {} vs N = {}", self.n, other.n)));
        }
        Ok(())
    }

    /// Re-run the validation of [`NComplex::new`].
    pub fn validate(&self) -> Result<()> {
        Self::new(self.n, self.p, self.lo, self.dims.clone(), self.diffs.clone()).map(|_| ())
    }

    /// Same data viewed with another modulus (fails if the axiom breaks).
    pub fn with_modulus(&self, n: usize) -> Result<Self> {
        Self::new(n, self.p, self.lo, self.dims.clone(), self.diffs.clone())
    }

    /// Degreewise block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_category(other)?;
        Ok(direct_sum_all(self.n, self.p, &[self, other]))
    }

    /// Shift so that `X'^i = X^{i+k}` (differentials unchanged, no sign).
    pub fn reindex(&self, k: i64) -> Self {
        Self { lo: self.lo - k, ..self.clone() }
    }
}

/// `mu^s_r C` with `C = F_p^c`: `r` copies of `C` in degrees `s-r+1..=s` joined by identities.
pub fn mu(n: usize, p: u32, r: usize, s: i64, c: usize) -> Result<NComplex> {
    if r < 1 || r > n {
        return Err(Error::OutOfRange(format!("mu length r = {r} outside [1, {n}]")));
    }
    field::check_prime(p)?;
    let lo = s - r as i64 + 1;
    Ok(NComplex::from_fn(n, p, lo, s, |_| c, |_| PrimeFieldMatrix::identity(p, c)))
}

/// Direct sum of any number of complexes; the empty sum is the zero complex.
pub fn direct_sum_all(n: usize, p: u32, xs: &[&NComplex]) -> NComplex {
    let nonzero: Vec<&&NComplex> = xs.iter().filter(|x| !x.is_zero()).collect();
    let Some(lo) = nonzero.iter().map(|x| x.lo()).min() else {
        return NComplex::zero(n, p);
    };
    let hi = nonzero.iter().map(|x| x.hi()).max().unwrap();
    for x in xs {
        assert!(x.n == n && x.p == p, "direct sum across categories");
    }
    NComplex::from_fn(
        n,
        p,
        lo,
        hi,
        |i| xs.iter().map(|x| x.dim(i)).sum(),
        |i| {
            let blocks: Vec<PrimeFieldMatrix> = xs.iter().map(|x| x.d(i)).collect();
            let refs: Vec<&PrimeFieldMatrix> = blocks.iter().collect();
            PrimeFieldMatrix::direct_sum(p, &refs)
        },
    )
}

impl std::fmt::Debug for NComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "NComplex(N={}, p={}, lo={}, dims={:?})", self.n, self.p, self.lo, self.dims)?;
        for (k, d) in self.diffs.iter().enumerate() {
            if d.rows() > 0 && d.cols() > 0 {
                write!(f, "\n d^{} = {:?}", self.lo + k as i64, d)?;
            }
        }
        Ok(())
    }
}

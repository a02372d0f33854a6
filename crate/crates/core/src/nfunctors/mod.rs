//! Prolongation `I_s`, contraction `J_s`, truncations and the subcategories `F_s^r`.

mod recollement;
mod tstructure;

pub use recollement::{recollement, two_n_gon, RecollementData};
pub use tstructure::{tstructure_decompose, TDecomposition};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::PrimeFieldMatrix;
use crate::ncomplex::{ChainMapN, NComplex};

/// `ι_s^{(n-1)}`: degrees of an n-complex to degrees of an (n-1)-complex.
pub fn iota(n: usize, s: i64, i: i64) -> i64 {
    let n = n as i64;
    let (k, t) = ((i - s).div_euclid(n), (i - s).rem_euclid(n));
    s + k * (n - 1) + if t == 0 { 0 } else { t - 1 }
}

/// `ρ_s^{(n)}`: degrees of an (n-1)-complex to degrees of an n-complex.
pub fn rho(n: usize, s: i64, i: i64) -> i64 {
    let n = n as i64;
    let (k, t) = ((i - s).div_euclid(n - 1), (i - s).rem_euclid(n - 1));
    s + k * n + if t == 0 { 0 } else { t + 1 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    /// `I_s`: raises the modulus by one.
    I(i64),
    /// `J_s`: lowers the modulus by one.
    J(i64),
}

/// A composite of prolongations and contractions. Every such functor sends `X` to
/// `m ↦ X^{φ(m)}` with differentials the composites `X^{φ(m)} -> X^{φ(m+1)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NFunctor {
    n_from: usize,
    /// In order of application.
    steps: Vec<Step>,
}

impl NFunctor {
    pub fn identity(n: usize) -> Self {
        Self { n_from: n, steps: Vec::new() }
    }

    pub fn then(mut self, step: Step) -> Result<Self> {
        let n = self.n_to();
        if let Step::J(_) = step {
            if n < 2 {
                return Err(Error::OutOfRange(format!("cannot contract a {n}-complex")));
            }
        }
        self.steps.push(step);
        Ok(self)
    }

    /// `I_s^{⇑}` from modulus `n - levels` to `n`.
    pub fn prolong_iter(s: i64, n: usize, levels: usize) -> Result<Self> {
        if levels >= n {
            return Err(Error::OutOfRange(format!("cannot prolong {levels} levels into N = {n}")));
        }
        (0..levels).try_fold(Self::identity(n - levels), |f, _| f.then(Step::I(s)))
    }

    /// `J_s^{⇓}` from modulus `n` to `n - levels`.
    pub fn contract_iter(s: i64, n: usize, levels: usize) -> Result<Self> {
        if levels >= n {
            return Err(Error::OutOfRange(format!("cannot contract {levels} levels from N = {n}")));
        }
        (0..levels).try_fold(Self::identity(n), |f, _| f.then(Step::J(s)))
    }

    /// `self` followed by `g`.
    pub fn and_then(mut self, g: &NFunctor) -> Result<Self> {
        if g.n_from != self.n_to() {
            return Err(Error::Mismatch(format!("composing into N = {} from N = {}", self.n_to(), g.n_from)));
        }
        self.steps.extend(g.steps.iter().copied());
        Ok(self)
    }

    pub fn n_from(&self) -> usize {
        self.n_from
    }

    pub fn n_to(&self) -> usize {
        self.steps.iter().fold(self.n_from, |n, s| match s {
            Step::I(_) => n + 1,
            Step::J(_) => n - 1,
        })
    }

    /// `(F X)^m = X^{φ(m)}`.
    pub fn phi(&self, m: i64) -> i64 {
        let mut mods = Vec::with_capacity(self.steps.len());
        let mut n = self.n_from;
        for s in &self.steps {
            n = match s {
                Step::I(_) => n + 1,
                Step::J(_) => n - 1,
            };
            mods.push(n);
        }
        // the last functor's index map is applied first
        let mut t = m;
        for (step, &n_after) in self.steps.iter().zip(&mods).rev() {
            t = match *step {
                Step::I(s) => iota(n_after, s, t),
                Step::J(s) => rho(n_after + 1, s, t),
            };
        }
        t
    }

    /// Smallest `m` with `φ(m) >= target`.
    fn first_at_least(&self, target: i64) -> i64 {
        let (mut lo, mut hi) = (-1i64, 1i64);
        while self.phi(lo) >= target {
            lo *= 2;
        }
        while self.phi(hi) < target {
            hi *= 2;
        }
        // phi(lo) < target <= phi(hi)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.phi(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    fn window(&self, x: &NComplex) -> (i64, i64) {
        if x.is_zero() {
            return (0, -1);
        }
        (self.first_at_least(x.lo()), self.first_at_least(x.hi() + 1) - 1)
    }

    fn check_source(&self, x: &NComplex) -> Result<()> {
        if x.n() != self.n_from {
            return Err(Error::Mismatch(format!("functor expects N = {}, got N = {}", self.n_from, x.n())));
        }
        Ok(())
    }

    pub fn apply(&self, x: &NComplex) -> Result<NComplex> {
        self.check_source(x)?;
        let (lo, hi) = self.window(x);
        Ok(NComplex::from_fn(
            self.n_to(),
            x.p(),
            lo,
            hi,
            |m| x.dim(self.phi(m)),
            |m| x.diff_product(self.phi(m), self.phi(m + 1)),
        ))
    }

    pub fn apply_map(&self, f: &ChainMapN) -> Result<ChainMapN> {
        let a = self.apply(f.source())?;
        let b = self.apply(f.target())?;
        Ok(ChainMapN::build(&a, &b, |m| f.at(self.phi(m))))
    }

    /// `F Y -> Y` with components `Y^{φ(m)} -> Y^m`; requires `φ(m) <= m` and `n_from = n_to`.
    pub fn counit(&self, y: &NComplex) -> Result<ChainMapN> {
        let fy = self.apply(y)?;
        self.endo_check(y, &fy, |m| self.phi(m) <= m)?;
        ChainMapN::new(&fy, y, |m| y.diff_product(self.phi(m), m))
    }

    /// `Y -> F Y` with components `Y^m -> Y^{φ(m)}`; requires `φ(m) >= m` and `n_from = n_to`.
    pub fn unit(&self, y: &NComplex) -> Result<ChainMapN> {
        let fy = self.apply(y)?;
        self.endo_check(y, &fy, |m| self.phi(m) >= m)?;
        ChainMapN::new(y, &fy, |m| y.diff_product(m, self.phi(m)))
    }

    fn endo_check(&self, y: &NComplex, fy: &NComplex, ok: impl Fn(i64) -> bool) -> Result<()> {
        if self.n_to() != self.n_from {
            return Err(Error::Mismatch("adjunction arrows need an endofunctor".into()));
        }
        let (lo, hi) = (y.lo().min(fy.lo()) - 1, y.hi().max(fy.hi()) + 1);
        if let Some(m) = (lo..=hi).find(|&m| !ok(m)) {
            return Err(Error::Mismatch(format!("index map has the wrong direction at degree {m}")));
        }
        Ok(())
    }
}

/// `I_s^{(N-1)}`: an (N-1)-complex to an N-complex.
pub fn prolong_i(s: i64, x: &NComplex) -> NComplex {
    NFunctor::identity(x.n()).then(Step::I(s)).unwrap().apply(x).unwrap()
}

/// `J_s^{(N)}`: an N-complex to an (N-1)-complex.
pub fn contract_j(s: i64, y: &NComplex) -> Result<NComplex> {
    NFunctor::identity(y.n()).then(Step::J(s))?.apply(y)
}

/// `I_s^{⇑}` raising `x` to modulus `to_modulus`.
pub fn prolong_iter(s: i64, to_modulus: usize, x: &NComplex) -> Result<NComplex> {
    if to_modulus < x.n() {
        return Err(Error::OutOfRange(format!("cannot prolong N = {} to {to_modulus}", x.n())));
    }
    NFunctor::prolong_iter(s, to_modulus, to_modulus - x.n())?.apply(x)
}

/// `J_s^{⇓}` lowering `y` to modulus `to_modulus`.
pub fn contract_iter(s: i64, to_modulus: usize, y: &NComplex) -> Result<NComplex> {
    if to_modulus > y.n() || to_modulus < 1 {
        return Err(Error::OutOfRange(format!("cannot contract N = {} to {to_modulus}", y.n())));
    }
    NFunctor::contract_iter(s, y.n(), y.n() - to_modulus)?.apply(y)
}

/// Brutal truncations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    AtMost(i64),
    AtLeast(i64),
    Between(i64, i64),
    At(i64),
}

pub fn truncate(x: &NComplex, mode: Truncation) -> NComplex {
    let (a, b) = match mode {
        Truncation::AtMost(n) => (x.lo(), n),
        Truncation::AtLeast(n) => (n, x.hi()),
        Truncation::Between(m, n) => (m, n),
        Truncation::At(n) => (n, n),
    };
    let (lo, hi) = (a.max(x.lo()), b.min(x.hi()));
    NComplex::from_fn(x.n(), x.p(), lo, hi, |i| x.dim(i), |i| x.d(i))
}

/// The label of `F_s^r`, with `s` reduced mod N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubcatFSR {
    pub s: i64,
    pub r: usize,
}

impl SubcatFSR {
    pub fn new(n: usize, s: i64, r: usize) -> Result<Self> {
        if r < 1 || r >= n {
            return Err(Error::OutOfRange(format!("width r = {r} outside [1, {})", n)));
        }
        Ok(Self { s: s.rem_euclid(n as i64), r })
    }
}

impl std::fmt::Display for SubcatFSR {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}^{}", self.s, self.r)
    }
}

/// Literal test of `d^{i+k} = 1` for `0 <= k < r` and every `i ≡ s mod N`.
pub fn in_fsr_strict(x: &NComplex, s: i64, r: usize) -> bool {
    let n = x.n() as i64;
    if x.is_zero() {
        return true;
    }
    let start = x.lo() - n - (x.lo() - n - s).rem_euclid(n);
    let mut i = start;
    while i <= x.hi() + 1 {
        for k in 0..r as i64 {
            let j = i + k;
            if x.dim(j) != x.dim(j + 1) || !x.d(j).is_identity() {
                return false;
            }
        }
        i += n;
    }
    true
}

/// `ε: I_s J_s Y -> Y` (one level).
pub fn counit(s: i64, y: &NComplex) -> Result<ChainMapN> {
    let n = y.n();
    NFunctor::identity(n).then(Step::J(s))?.then(Step::I(s))?.counit(y)
}

/// `η: Y -> I_{s+1} J_s Y` (one level).
pub fn unit(s: i64, y: &NComplex) -> Result<ChainMapN> {
    let n = y.n();
    NFunctor::identity(n).then(Step::J(s))?.then(Step::I(s + 1))?.unit(y)
}

/// Identity matrix helper for strictness checks in tests and suites.
pub fn is_identity_at(x: &NComplex, i: i64) -> bool {
    x.dim(i) == x.dim(i + 1) && x.d(i) == PrimeFieldMatrix::identity(x.p(), x.dim(i))
}

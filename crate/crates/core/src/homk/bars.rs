//! Interval decomposition of an N-complex: a basis in which every basis vector is
//! sent by `d` either to the next vector of its interval or to zero.

use std::collections::BTreeMap;

use super::HomotopyWitnessN;
use crate::exactla::{field, PrimeFieldMatrix, Vector};
use crate::ncomplex::{ChainMapN, NComplex};

/// An interval summand `mu` with lowest degree `birth` and `len` nonzero terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bar {
    pub birth: i64,
    pub len: usize,
}

impl Bar {
    pub fn top(&self) -> i64 {
        self.birth + self.len as i64 - 1
    }
    fn alive(&self, i: i64) -> bool {
        i >= self.birth && i <= self.top()
    }
}

#[derive(Clone, Debug)]
pub struct BarDecomposition {
    x: NComplex,
    bars: Vec<Bar>,
    /// Per degree: the bar indices alive there, in column order of `basis`.
    slots: BTreeMap<i64, Vec<usize>>,
    /// Per degree: change of basis whose columns are the interval vectors.
    basis: BTreeMap<i64, PrimeFieldMatrix>,
}

impl BarDecomposition {
    pub fn new(x: &NComplex) -> Self {
        let p = x.p();
        let mut bars: Vec<Bar> = Vec::new();
        // chains[b][k] is the vector of bar b in degree birth + k
        let mut chains: Vec<Vec<Vector>> = Vec::new();
        let mut alive: Vec<usize> = Vec::new();
        if x.is_zero() {
            return Self { x: x.clone(), bars, slots: BTreeMap::new(), basis: BTreeMap::new() };
        }
        for i in x.lo()..=x.hi() {
            // new intervals start on a complement of the incoming images
            let current: Vec<Vector> = alive.iter().map(|&b| chains[b].last().unwrap().clone()).collect();
            let m = PrimeFieldMatrix::from_columns(p, x.dim(i), &current);
            for u in m.complement_units() {
                let mut e = vec![0; x.dim(i)];
                e[u] = 1;
                bars.push(Bar { birth: i, len: 0 });
                chains.push(vec![e]);
                alive.push(bars.len() - 1);
            }
            // push forward, oldest first; a dependent image kills the younger interval
            let d = x.d(i);
            let mut kept: Vec<usize> = Vec::new();
            let mut images: Vec<Vector> = Vec::new();
            let mut next_alive = Vec::new();
            for &b in &alive {
                let img = d.mul_vec(chains[b].last().unwrap());
                let coeffs = if images.is_empty() {
                    img.iter().all(|&v| v == 0).then(Vec::new)
                } else {
                    let a = PrimeFieldMatrix::from_columns(p, x.dim(i + 1), &images);
                    a.solve_affine(&img).unwrap().map(|(c, _)| c)
                };
                match coeffs {
                    Some(c) => {
                        let birth = bars[b].birth;
                        for (&a, &ca) in kept.iter().zip(&c) {
                            if ca == 0 {
                                continue;
                            }
                            let off = (birth - bars[a].birth) as usize;
                            for k in 0..chains[b].len() {
                                let w = chains[a][off + k].clone();
                                let v = &mut chains[b][k];
                                for (vi, wi) in v.iter_mut().zip(w) {
                                    *vi = field::sub(p, *vi, field::mul(p, ca, wi));
                                }
                            }
                        }
                        bars[b].len = chains[b].len();
                    }
                    None => {
                        kept.push(b);
                        images.push(img.clone());
                        chains[b].push(img);
                        next_alive.push(b);
                    }
                }
            }
            alive = next_alive;
        }
        assert!(alive.is_empty(), "every interval ends inside the support");
        let mut slots: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (b, bar) in bars.iter().enumerate() {
            for i in bar.birth..=bar.top() {
                slots.entry(i).or_default().push(b);
            }
        }
        let basis = slots
            .iter()
            .map(|(&i, bs)| {
                let cols: Vec<Vector> = bs.iter().map(|&b| chains[b][(i - bars[b].birth) as usize].clone()).collect();
                (i, PrimeFieldMatrix::from_columns(p, x.dim(i), &cols))
            })
            .collect();
        Self { x: x.clone(), bars, slots, basis }
    }

    pub fn complex(&self) -> &NComplex {
        &self.x
    }

    pub fn bars(&self) -> &[Bar] {
        &self.bars
    }

    /// Intervals shorter than N, sorted; these are the summands that survive in K_N.
    pub fn essential_bars(&self) -> Vec<Bar> {
        let mut v: Vec<Bar> = self.bars.iter().copied().filter(|b| b.len < self.x.n()).collect();
        v.sort();
        v
    }

    /// Sorted multiset of all intervals.
    pub fn barcode(&self) -> Vec<Bar> {
        let mut v = self.bars.clone();
        v.sort();
        v
    }

    pub fn is_contractible(&self) -> bool {
        self.bars.iter().all(|b| b.len == self.x.n())
    }

    fn position(&self, i: i64, b: usize) -> usize {
        self.slots[&i].iter().position(|&c| c == b).unwrap()
    }

    fn basis_at(&self, i: i64) -> PrimeFieldMatrix {
        self.basis.get(&i).cloned().unwrap_or_else(|| PrimeFieldMatrix::identity(self.x.p(), 0))
    }

    fn coords_at(&self, i: i64) -> PrimeFieldMatrix {
        self.basis_at(i).inverse().expect("interval basis is a basis")
    }

    /// The contraction sending each top vector of a length-N interval to its bottom vector.
    pub fn contraction(&self) -> Option<HomotopyWitnessN> {
        if !self.is_contractible() {
            return None;
        }
        let x = &self.x;
        let sh = x.n() as i64 - 1;
        let p = x.p();
        let w = HomotopyWitnessN::from_fn(x, x, |i| {
            let mut s = PrimeFieldMatrix::zeros(p, x.dim(i - sh), x.dim(i));
            for &b in self.slots.get(&i).map(|v| v.as_slice()).unwrap_or(&[]) {
                if self.bars[b].top() == i {
                    s.set(self.position(i - sh, b), self.position(i, b), 1);
                }
            }
            self.basis_at(i - sh).mul(&s).mul(&self.coords_at(i))
        });
        let id = ChainMapN::identity(x);
        assert!(w.certifies(&id), "interval contraction failed verification");
        Some(w)
    }

    /// Identity on matched essential intervals, zero on everything else.
    pub fn matching_map(&self, other: &BarDecomposition) -> Option<ChainMapN> {
        if self.essential_bars() != other.essential_bars() {
            return None;
        }
        let n = self.x.n();
        let mine: Vec<usize> = sorted_essential(&self.bars, n);
        let theirs: Vec<usize> = sorted_essential(&other.bars, n);
        let pairs: Vec<(usize, usize)> = mine.into_iter().zip(theirs).collect();
        let (x, y) = (&self.x, &other.x);
        let p = x.p();
        Some(ChainMapN::build(x, y, |i| {
            let mut m = PrimeFieldMatrix::zeros(p, y.dim(i), x.dim(i));
            for &(a, b) in &pairs {
                if self.bars[a].alive(i) {
                    m.set(other.position(i, b), self.position(i, a), 1);
                }
            }
            other.basis_at(i).mul(&m).mul(&self.coords_at(i))
        }))
    }

    /// The direct sum of the essential intervals.
    pub fn minimal_model(&self) -> NComplex {
        let (n, p) = (self.x.n(), self.x.p());
        let parts: Vec<NComplex> =
            self.essential_bars().iter().map(|b| crate::ncomplex::mu(n, p, b.len, b.top(), 1).unwrap()).collect();
        let refs: Vec<&NComplex> = parts.iter().collect();
        crate::ncomplex::direct_sum_all(n, p, &refs)
    }
}

fn sorted_essential(bars: &[Bar], n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..bars.len()).filter(|&b| bars[b].len < n).collect();
    v.sort_by_key(|&b| (bars[b], b));
    v
}

//! Random objects for the verification harness. Every sampler returns validated data.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::PrimeFieldMatrix;
use crate::homk::chain_map_space;
use crate::morcat::{mor_cone, mor_suspension, MorComplex, MorMap, MorSubcatLabel};
use crate::ncomplex::{direct_sum_all, mu, ChainMapN, NComplex};
use crate::nfunctors::NFunctor;

pub type Rng64 = ChaCha8Rng;

/// Seed for trial `i` of `suite` under a master seed (FNV-1a then splitmix64).
pub fn trial_seed(master: u64, suite: &str, i: u64) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in suite.bytes().chain(master.to_le_bytes()).chain(i.to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    let mut z = h.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

pub fn random_matrix(rng: &mut Rng64, p: u32, rows: usize, cols: usize, density: f64) -> PrimeFieldMatrix {
    let data = (0..rows * cols).map(|_| if rng.gen_bool(density) { rng.gen_range(1..p) } else { 0 }).collect();
    PrimeFieldMatrix::new(p, rows, cols, data).unwrap()
}

pub fn random_invertible(rng: &mut Rng64, p: u32, n: usize) -> PrimeFieldMatrix {
    loop {
        let m = random_matrix(rng, p, n, n, 0.8);
        if m.rank() == n {
            return m;
        }
    }
}

/// Projection of `F_p^n` onto a complement of the column space of `b`, killing `b`.
fn kill_columns(p: u32, b: &PrimeFieldMatrix) -> PrimeFieldMatrix {
    let n = b.rows();
    let ind = b.independent_columns();
    let basis_b = b.select_cols(&ind);
    let comp = basis_b.complement_units();
    let mut full = PrimeFieldMatrix::zeros(p, n, n);
    full.set_block(0, 0, &basis_b);
    for (k, &u) in comp.iter().enumerate() {
        full.set(u, ind.len() + k, 1);
    }
    let mut diag = PrimeFieldMatrix::zeros(p, n, n);
    for k in ind.len()..n {
        diag.set(k, k, 1);
    }
    full.mul(&diag).mul(&full.inverse().unwrap())
}

/// Random N-complex with dims `<= dmax` on a window of width `<= width`: free matrices
/// projected onto the axiom variety degree by degree, or a twisted sum of intervals.
pub fn random_ncomplex(rng: &mut Rng64, n: usize, p: u32, dmax: usize, width: usize) -> NComplex {
    loop {
        let x = if rng.gen_bool(0.5) {
            sweep_complex(rng, n, p, dmax, width)
        } else {
            twisted_intervals(rng, n, p, dmax, width)
        };
        if !x.is_zero() {
            debug_assert!(x.validate().is_ok());
            return x;
        }
    }
}

fn sweep_complex(rng: &mut Rng64, n: usize, p: u32, dmax: usize, width: usize) -> NComplex {
    let w = rng.gen_range(1..=width.max(1));
    let lo = rng.gen_range(-2..=2);
    let dims: Vec<usize> = (0..w).map(|_| rng.gen_range(0..=dmax)).collect();
    let density = if rng.gen_bool(0.5) { 1.0 } else { 0.5 };
    let mut diffs: Vec<PrimeFieldMatrix> = Vec::new();
    for k in 0..w.saturating_sub(1) {
        // P = d^{k-1} ... d^{k-N+1}, the incoming (N-1)-fold composite
        let start = (k + 1).saturating_sub(n);
        let mut pm = PrimeFieldMatrix::identity(p, dims[start]);
        for d in &diffs[start..k] {
            pm = d.mul(&pm);
        }
        let m = random_matrix(rng, p, dims[k + 1], dims[k], density);
        let d = if k + 1 >= n { m.mul(&kill_columns(p, &pm)) } else { m };
        diffs.push(d);
    }
    if w == 0 {
        return NComplex::zero(n, p);
    }
    NComplex::new(n, p, lo, dims, diffs).expect("sweep produces an N-complex")
}

fn twisted_intervals(rng: &mut Rng64, n: usize, p: u32, dmax: usize, width: usize) -> NComplex {
    let count = rng.gen_range(1..=dmax.max(1));
    let width = width.max(1) as i64;
    let lo = rng.gen_range(-2..=0);
    let parts: Vec<NComplex> = (0..count)
        .map(|_| {
            let r = rng.gen_range(1..=(n as i64).min(width));
            // keep the interval inside [lo, lo + width - 1]
            let top = rng.gen_range(lo + r - 1..=lo + width - 1);
            let r = r as usize;
            mu(n, p, r, top, 1).unwrap()
        })
        .collect();
    let refs: Vec<&NComplex> = parts.iter().collect();
    let x = direct_sum_all(n, p, &refs);
    twist(rng, &x)
}

/// Conjugate by random invertible matrices in every degree.
pub fn twist(rng: &mut Rng64, x: &NComplex) -> NComplex {
    if x.is_zero() {
        return x.clone();
    }
    let p = x.p();
    let g: Vec<PrimeFieldMatrix> = (x.lo()..=x.hi() + 1).map(|i| random_invertible(rng, p, x.dim(i))).collect();
    let at = |i: i64| &g[(i - x.lo()) as usize];
    NComplex::from_fn(x.n(), p, x.lo(), x.hi(), |i| x.dim(i), |i| at(i + 1).mul(&x.d(i)).mul(&at(i).inverse().unwrap()))
}

/// Random member of `F_s^r` as the prolongation of a random `(N-r)`-complex.
pub fn random_in_fsr(rng: &mut Rng64, n: usize, p: u32, s: i64, r: usize, dmax: usize) -> NComplex {
    let base = random_ncomplex(rng, n - r, p, dmax, 2 * (n - r));
    NFunctor::prolong_iter(s, n, r).unwrap().apply(&base).unwrap()
}

/// A random linear combination of a basis of chain maps.
pub fn random_chain_map(rng: &mut Rng64, x: &NComplex, y: &NComplex) -> ChainMapN {
    let basis = chain_map_space(x, y).unwrap();
    let p = x.p();
    basis.iter().fold(ChainMapN::zero(x, y), |acc, b| acc.add(&b.scale(rng.gen_range(0..p))))
}

/// Random bounded complex over `Mor^sm_{N-1}`: an upper triangular sweep or a twisted sum
/// of one- and two-dimensional pieces.
pub fn random_mor_complex(rng: &mut Rng64, n: usize, p: u32, dmax: usize, width: usize) -> MorComplex {
    loop {
        let x = if rng.gen_bool(0.5) {
            mor_sweep(rng, n, p, dmax, width)
        } else {
            let x = mor_pieces(rng, n, p, dmax, width);
            mor_twist(rng, &x)
        };
        if !x.is_zero() {
            debug_assert!(x.validate().is_ok());
            return x;
        }
    }
}

fn random_comps(rng: &mut Rng64, m: usize, dmax: usize) -> Vec<usize> {
    let total = rng.gen_range(0..=dmax);
    let mut c = vec![0; m];
    for _ in 0..total {
        c[rng.gen_range(0..m)] += 1;
    }
    c
}

fn comp_index(c: &[usize]) -> Vec<usize> {
    c.iter().enumerate().flat_map(|(u, &k)| std::iter::repeat_n(u, k)).collect()
}

fn mor_sweep(rng: &mut Rng64, n: usize, p: u32, dmax: usize, width: usize) -> MorComplex {
    let w = rng.gen_range(1..=width.max(1));
    let lo = rng.gen_range(-2..=2);
    let comps: Vec<Vec<usize>> = (0..w).map(|_| random_comps(rng, n - 1, dmax)).collect();
    let dim = |k: usize| comps[k].iter().sum::<usize>();
    let mut diffs: Vec<PrimeFieldMatrix> = Vec::new();
    for k in 0..w - 1 {
        let (src, dst) = (comp_index(&comps[k]), comp_index(&comps[k + 1]));
        let prev = diffs.last().cloned().unwrap_or_else(|| PrimeFieldMatrix::zeros(p, dim(k), 0));
        let mut d = PrimeFieldMatrix::zeros(p, dim(k + 1), dim(k));
        for r in 0..dim(k + 1) {
            // row r of d lies in the left kernel of `prev`, restricted to allowed columns
            let allowed: Vec<usize> = (0..dim(k)).filter(|&j| dst[r] <= src[j]).collect();
            let ker = prev.select_rows(&allowed).transpose().kernel_basis();
            for v in ker {
                if rng.gen_bool(0.7) {
                    let c = rng.gen_range(1..p);
                    for (t, &j) in allowed.iter().enumerate() {
                        d.set(r, j, (d.get(r, j) as u64 + c as u64 * v[t] as u64 % p as u64) as u32 % p);
                    }
                }
            }
        }
        diffs.push(d);
    }
    MorComplex::new(n, p, lo, comps, diffs).expect("sweep produces a Mor complex")
}

/// A single basis vector in component `u` at degree `i`, or two joined by an identity coupling.
fn mor_pieces(rng: &mut Rng64, n: usize, p: u32, dmax: usize, width: usize) -> MorComplex {
    let count = rng.gen_range(1..=dmax.max(1));
    let mut acc = MorComplex::zero(n, p);
    for _ in 0..count {
        let i = rng.gen_range(-2..=width as i64 - 2);
        let u = rng.gen_range(1..n);
        let mut c = vec![0; n - 1];
        c[u - 1] = 1;
        let piece = if rng.gen_bool(0.5) {
            MorComplex::new(n, p, i, vec![c], vec![]).unwrap()
        } else {
            let w = rng.gen_range(1..=u);
            let mut c2 = vec![0; n - 1];
            c2[w - 1] = 1;
            MorComplex::new(n, p, i, vec![c, c2], vec![PrimeFieldMatrix::identity(p, 1)]).unwrap()
        };
        acc = acc.direct_sum(&piece).unwrap();
    }
    acc
}

/// Random filtered automorphism in degree `i`.
pub fn random_filtered_invertible(rng: &mut Rng64, p: u32, comps: &[usize]) -> PrimeFieldMatrix {
    let idx = comp_index(comps);
    let d = idx.len();
    let mut g = random_matrix(rng, p, d, d, 0.5);
    let mut off = 0;
    for &k in comps {
        g.set_block(off, off, &random_invertible(rng, p, k));
        off += k;
    }
    for r in 0..d {
        for c in 0..d {
            if idx[r] > idx[c] {
                g.set(r, c, 0);
            }
        }
    }
    g
}

/// Conjugate by random filtered automorphisms.
pub fn mor_twist(rng: &mut Rng64, x: &MorComplex) -> MorComplex {
    if x.is_zero() {
        return x.clone();
    }
    let g: Vec<PrimeFieldMatrix> =
        (x.lo()..=x.hi() + 1).map(|i| random_filtered_invertible(rng, x.p(), &x.comp_dims(i))).collect();
    x.conjugate(|i| g[(i - x.lo()) as usize].clone())
}

/// An ordinary complex placed in component `u`.
fn in_component(z: &NComplex, n: usize, u: usize) -> MorComplex {
    let c = |i: i64| {
        let mut c = vec![0; n - 1];
        c[u - 1] = z.dim(i);
        c
    };
    let (lo, hi) = (z.lo(), z.hi());
    let comps = (lo..=hi).map(c).collect();
    let diffs = (lo..hi).map(|i| z.d(i)).collect();
    MorComplex::new(n, z.p(), lo, comps, diffs).unwrap()
}

/// Member of the labelled subcategory, built from the normal forms of the decomposition
/// triangles and twisted by a filtered automorphism.
pub fn random_mor_in(rng: &mut Rng64, n: usize, p: u32, label: MorSubcatLabel, dmax: usize) -> MorComplex {
    let m = n - 1;
    let width = 2 * n;
    let x = match label {
        MorSubcatLabel::F(s, t) => {
            let x = random_mor_complex(rng, n, p, dmax, width);
            x.regroup(n, |u| if (s..=t).contains(&u) { s } else { u })
        }
        MorSubcatLabel::EUpper => random_mor_complex(rng, n, p, dmax, width).regroup(n, |u| u.max(2)),
        MorSubcatLabel::E(s) if s == m => in_component(&random_ncomplex(rng, 2, p, dmax, width), n, m),
        MorSubcatLabel::E(s) => {
            let z = random_ncomplex(rng, 2, p, dmax, width);
            let (a, b) = (in_component(&z, n, s + 1), in_component(&z, n, s));
            mor_cone(&MorMap::new(&a, &b, |i| PrimeFieldMatrix::identity(p, z.dim(i))).unwrap()).cone
        }
        MorSubcatLabel::ELower => {
            let w = random_mor_complex(rng, n, p, dmax, width).regroup(n, |u| u.min(m - 1));
            let t = w.regroup(n, |_| m);
            mor_cone(&MorMap::new(&t, &w, |i| PrimeFieldMatrix::identity(p, w.dim(i))).unwrap()).cone
        }
    };
    let x = if rng.gen_bool(0.3) {
        let c = random_mor_complex(rng, n, p, 1, 4);
        let c = mor_cone(&MorMap::identity(&c)).cone;
        x.direct_sum(&if rng.gen_bool(0.5) { mor_suspension(&c) } else { c }).unwrap()
    } else {
        x
    };
    mor_twist(rng, &x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generated_complexes_validate() {
        let mut rng = Rng64::seed_from_u64(1);
        for n in 1..=5 {
            for p in [2, 101] {
                for _ in 0..50 {
                    let x = random_ncomplex(&mut rng, n, p, 3, 2 * n);
                    assert!(x.validate().is_ok());
                    assert!(x.dims().iter().all(|&d| d <= 3));
                }
            }
        }
    }

    #[test]
    fn seeds_are_stable() {
        assert_eq!(trial_seed(42, "cones", 0), trial_seed(42, "cones", 0));
        assert_ne!(trial_seed(42, "cones", 0), trial_seed(42, "cones", 1));
        assert_ne!(trial_seed(42, "cones", 0), trial_seed(42, "tstructure", 0));
    }
}

use super::{ChainMapN, NComplex};
use crate::exactla::PrimeFieldMatrix;

/// `Y --f--> X --u--> C(f) --v--> ΣY`.
#[derive(Clone, Debug)]
pub struct TriangleN {
    pub y: NComplex,
    pub x: NComplex,
    pub f: ChainMapN,
    pub cone: NComplex,
    pub u: ChainMapN,
    pub v: ChainMapN,
}

/// Dimensions of `X^m ⊕ Y^{m+1} ⊕ ... ⊕ Y^{m+N-1}` block by block.
fn cone_blocks(x: &NComplex, y: &NComplex, m: i64) -> Vec<usize> {
    let n = x.n() as i64;
    std::iter::once(x.dim(m)).chain((1..n).map(|k| y.dim(m + k))).collect()
}

fn offsets(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect()
}

/// Differential of `C(f)` out of degree `m`.
fn cone_diff(f: &ChainMapN, m: i64) -> PrimeFieldMatrix {
    let (x, y) = (f.target(), f.source());
    let n = x.n() as i64;
    let p = x.p();
    let src = cone_blocks(x, y, m);
    let dst = cone_blocks(x, y, m + 1);
    let (so, to) = (offsets(&src), offsets(&dst));
    let mut d = PrimeFieldMatrix::zeros(p, dst.iter().sum(), src.iter().sum());
    d.set_block(0, 0, &x.d(m));
    d.set_block(0, so[1], &f.at(m + 1));
    // target slot k holds Y^{m+1+k}, source slot k+1 holds the same space
    for k in 1..(n - 1) as usize {
        d.set_block(to[k], so[k + 1], &PrimeFieldMatrix::identity(p, dst[k]));
    }
    let last = (n - 1) as usize;
    for k in 1..n {
        let e = y.d_pow(m + k, (n - k) as usize).neg();
        d.set_block(to[last], so[k as usize], &e);
    }
    d
}

/// The mapping cone of `f: Y -> X` together with `u_f` and `v_f`.
pub fn cone(f: &ChainMapN) -> TriangleN {
    let (x, y) = (f.target(), f.source());
    let (n, p) = (x.n(), x.p());
    let ni = n as i64;
    let sy = suspension(y);
    if n == 1 {
        // no Y slots: C(f) = X and ΣY = 0
        let u = ChainMapN::identity(x);
        let v = ChainMapN::zero(x, &sy);
        return TriangleN { y: y.clone(), x: x.clone(), f: f.clone(), cone: x.clone(), u, v };
    }
    let (lo, hi) = match (x.is_zero(), y.is_zero()) {
        (true, true) => (0, -1),
        (false, true) => (x.lo(), x.hi()),
        (true, false) => (y.lo() - ni + 1, y.hi() - 1),
        (false, false) => (x.lo().min(y.lo() - ni + 1), x.hi().max(y.hi() - 1)),
    };
    let c = NComplex::from_fn(n, p, lo, hi, |m| cone_blocks(x, y, m).iter().sum(), |m| cone_diff(f, m));
    let u = ChainMapN::build(x, &c, |m| {
        let mut e = PrimeFieldMatrix::zeros(p, c.dim(m), x.dim(m));
        e.set_block(0, 0, &PrimeFieldMatrix::identity(p, x.dim(m)));
        e
    });
    let v = ChainMapN::build(&c, &sy, |m| {
        let mut e = PrimeFieldMatrix::zeros(p, sy.dim(m), c.dim(m));
        e.set_block(0, x.dim(m), &PrimeFieldMatrix::identity(p, sy.dim(m)));
        e
    });
    TriangleN { y: y.clone(), x: x.clone(), f: f.clone(), cone: c, u, v }
}

/// `ΣX^m = X^{m+1} ⊕ ... ⊕ X^{m+N-1}`: the cokernel of `X -> C(1_X)` in the
/// coordinate complement, which is the cone of `X -> 0`.
pub fn suspension(x: &NComplex) -> NComplex {
    let (n, p) = (x.n(), x.p());
    let ni = n as i64;
    if x.is_zero() || n == 1 {
        return NComplex::zero(n, p);
    }
    NComplex::from_fn(
        n,
        p,
        x.lo() - ni + 1,
        x.hi() - 1,
        |m| (1..ni).map(|k| x.dim(m + k)).sum(),
        |m| {
            let src: Vec<usize> = (1..ni).map(|k| x.dim(m + k)).collect();
            let dst: Vec<usize> = (1..ni).map(|k| x.dim(m + 1 + k)).collect();
            let (so, to) = (offsets(&src), offsets(&dst));
            let mut d = PrimeFieldMatrix::zeros(p, dst.iter().sum(), src.iter().sum());
            for k in 0..(n - 2) {
                d.set_block(to[k], so[k + 1], &PrimeFieldMatrix::identity(p, dst[k]));
            }
            for k in 0..(n - 1) {
                let e = x.d_pow(m + 1 + k as i64, n - 1 - k).neg();
                d.set_block(to[n - 2], so[k], &e);
            }
            d
        },
    )
}

/// `Σ^{-1}X^m = X^{m-N+1} ⊕ ... ⊕ X^{m-1}`.
pub fn desuspension(x: &NComplex) -> NComplex {
    let (n, p) = (x.n(), x.p());
    let ni = n as i64;
    if x.is_zero() || n == 1 {
        return NComplex::zero(n, p);
    }
    NComplex::from_fn(
        n,
        p,
        x.lo() + 1,
        x.hi() + ni - 1,
        |m| (m - ni + 1..m).map(|i| x.dim(i)).sum(),
        |m| {
            let src: Vec<usize> = (m - ni + 1..m).map(|i| x.dim(i)).collect();
            let dst: Vec<usize> = (m - ni + 2..m + 1).map(|i| x.dim(i)).collect();
            let (so, to) = (offsets(&src), offsets(&dst));
            let mut d = PrimeFieldMatrix::zeros(p, dst.iter().sum(), src.iter().sum());
            // target slot j holds X^{m-N+2+j}
            for j in 0..n - 1 {
                let e = x.d_pow(m - ni + 1, j + 1).neg();
                d.set_block(to[j], 0, &e);
                if j + 1 < n - 1 {
                    d.set_block(to[j], so[j + 1], &PrimeFieldMatrix::identity(p, dst[j]));
                }
            }
            d
        },
    )
}

/// `I(X) = C(1_X)` with the inclusion `u_X: X -> I(X)`.
pub fn injective_hull(x: &NComplex) -> (NComplex, ChainMapN) {
    let t = cone(&ChainMapN::identity(x));
    (t.cone, t.u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncomplex::mu;

    const P: u32 = 101;

    #[test]
    fn cone_of_identity_n2() {
        let x = mu(2, P, 1, 0, 1).unwrap();
        let (i, _) = injective_hull(&x);
        assert_eq!((i.lo(), i.hi()), (-1, 0));
        assert_eq!(i.d(-1).get(0, 0), 1);
    }

    #[test]
    fn cone_of_zero_source() {
        let x = mu(3, P, 2, 1, 2).unwrap();
        let z = NComplex::zero(3, P);
        let t = cone(&ChainMapN::zero(&z, &x));
        assert_eq!(t.cone, x);
    }

    #[test]
    fn cone_blocks_match_definition() {
        // 1 on mu^1_2 k (degrees 0, 1), N = 3
        let x = mu(3, P, 2, 1, 1).unwrap();
        let t = cone(&ChainMapN::identity(&x));
        let c = &t.cone;
        assert_eq!((c.lo(), c.hi()), (-2, 1));
        assert_eq!(c.dims(), &[1, 2, 2, 1]);
        // C^{-1} = X^{-1} ⊕ X^0 ⊕ X^1 = 0 ⊕ k ⊕ k -> C^0 = X^0 ⊕ X^1 ⊕ X^2 = k ⊕ k ⊕ 0
        let d = c.d(-1);
        assert_eq!(d, PrimeFieldMatrix::from_rows(P, &[&[1, 0], &[0, 1]]));
        // C^0 -> C^1 = X^1 ⊕ X^2 ⊕ X^3 = k: first row (d, f, 0)
        assert_eq!(c.d(0), PrimeFieldMatrix::from_rows(P, &[&[1, 1]]));
        // C^{-2} = Y^{-1} ⊕ Y^0 = k (in slot 2) -> C^{-1}: last row -e^{2} on slot 1, -e on slot 2
        assert_eq!(c.d(-2), PrimeFieldMatrix::from_rows(P, &[&[1], &[-1]]));
        assert!(t.v.after(&t.u).is_zero());
    }

    #[test]
    fn n2_suspension_is_shift() {
        let x = NComplex::new(2, P, 0, vec![1, 2], vec![PrimeFieldMatrix::from_rows(P, &[&[1], &[3]])]).unwrap();
        let s = suspension(&x);
        assert_eq!(s.lo(), -1);
        assert_eq!(s.d(-1), x.d(0).neg());
        let ds = desuspension(&x);
        assert_eq!(ds.lo(), 1);
        assert_eq!(ds.d(1), x.d(0).neg());
    }
}

use ngon::exactla::PrimeFieldMatrix;
use ngon::homk::homk_dim;
use ngon::morcat::{
    canonical_split_form, functor_d, functor_eup, functor_u, mor_certify_membership, mor_cone, mor_contraction,
    mor_decompose, mor_homk_dim, mor_membership, mor_two_n_gon, MorEdge, MorMap,
};
use ngon::sample::{random_invertible, random_matrix, random_mor_complex, random_mor_in, random_ncomplex, Rng64};
use rand::{Rng, SeedableRng};

const P: u32 = 101;

#[test]
fn samplers_validate() {
    let mut rng = Rng64::seed_from_u64(21);
    for n in 2..=5 {
        for _ in 0..50 {
            let x = random_mor_complex(&mut rng, n, P, 3, 2 * n);
            assert!(x.validate().is_ok(), "{x:?}");
        }
    }
    for n in 3..=4 {
        for l in mor_two_n_gon(n) {
            for _ in 0..10 {
                let x = random_mor_in(&mut rng, n, P, l, 2);
                assert!(x.validate().is_ok());
                assert!(mor_certify_membership(&x, l).unwrap().is_some(), "{l} {x:?}");
            }
        }
    }
}

#[test]
fn canonical_form_round_trip() {
    let mut rng = Rng64::seed_from_u64(22);
    for _ in 0..50 {
        let n = rng.gen_range(3..=5);
        let mut dims = vec![rng.gen_range(0..=2)];
        let mut alphas = Vec::new();
        for _ in 0..n - 2 {
            let prev = *dims.last().unwrap();
            let next = prev + rng.gen_range(0..=2);
            // random injective map: an invertible matrix times a standard inclusion
            let mut inc = PrimeFieldMatrix::zeros(P, next, prev);
            inc.set_block(0, 0, &PrimeFieldMatrix::identity(P, prev));
            alphas.push(random_invertible(&mut rng, P, next).mul(&inc));
            dims.push(next);
        }
        let (obj, b) = canonical_split_form(P, dims[0], &alphas).unwrap();
        assert_eq!(obj.c.iter().sum::<usize>(), *dims.last().unwrap());
        for (t, a) in alphas.iter().enumerate() {
            assert_eq!(b[t + 1].inverse().unwrap().mul(a).mul(&b[t]), obj.alpha(t + 1));
            assert_eq!(b[t + 1].mul(&obj.alpha(t + 1)).mul(&b[t].inverse().unwrap()), *a);
        }
    }
    let bad = random_matrix(&mut Rng64::seed_from_u64(0), P, 1, 2, 1.0);
    assert!(canonical_split_form(P, 2, &[bad]).is_err());
}

#[test]
fn constant_and_padding_functors_are_faithful() {
    let mut rng = Rng64::seed_from_u64(23);
    for n in 3..=4 {
        for _ in 0..20 {
            let z = random_ncomplex(&mut rng, 2, P, 3, 6);
            let w = random_ncomplex(&mut rng, 2, P, 3, 6);
            let (uz, uw) = (functor_u(&z, n).unwrap(), functor_u(&w, n).unwrap());
            assert_eq!(mor_homk_dim(&uz, &uw).unwrap(), homk_dim(&z, &w).unwrap());
            let x = random_mor_complex(&mut rng, n - 1, P, 3, 6);
            let y = random_mor_complex(&mut rng, n - 1, P, 3, 6);
            let (ex, ey) = (functor_eup(&x, n).unwrap(), functor_eup(&y, n).unwrap());
            assert_eq!(functor_d(&ex, 2, n - 1).unwrap(), x);
            assert_eq!(mor_homk_dim(&ex, &ey).unwrap(), mor_homk_dim(&x, &y).unwrap());
        }
    }
}

#[test]
fn identity_cones_are_zero_objects() {
    let mut rng = Rng64::seed_from_u64(24);
    for n in 2..=4 {
        for _ in 0..20 {
            let x = random_mor_complex(&mut rng, n, P, 3, 2 * n);
            let c = mor_cone(&MorMap::identity(&x)).cone;
            assert!(mor_contraction(&c).is_some());
            assert_eq!(mor_homk_dim(&x, &c).unwrap(), 0);
            assert_eq!(mor_homk_dim(&c, &x).unwrap(), 0);
        }
    }
}

#[test]
fn gon_hom_vanishing() {
    let mut rng = Rng64::seed_from_u64(25);
    for n in 3..=4 {
        let g = mor_two_n_gon(n);
        for k in 0..g.len() {
            let (a, b) = (g[k], g[(k + 1) % g.len()]);
            for _ in 0..10 {
                let u = random_mor_in(&mut rng, n, P, a, 2);
                let v = random_mor_in(&mut rng, n, P, b, 2);
                assert_eq!(mor_homk_dim(&u, &v).unwrap(), 0, "{a} -> {b}");
            }
        }
    }
}

#[test]
fn decompositions_are_certified() {
    let mut rng = Rng64::seed_from_u64(26);
    for n in 3..=4 {
        for (k, edge) in MorEdge::all(n).into_iter().enumerate() {
            for _ in 0..8 {
                let x = random_mor_complex(&mut rng, n, P, 3, 2 * n);
                let d = mor_decompose(&x, edge).unwrap();
                assert!(d.is_certified(), "edge {k} ({} -> {})", edge.from, edge.to);
                assert_eq!(mor_homk_dim(&d.u_part, &d.v_part).unwrap(), 0);
                assert!(d.u_strict() || d.v_strict());
                if k == 0 {
                    assert!(d.u_strict() && d.v_strict());
                }
            }
        }
    }
}

#[test]
fn strict_members_split_trivially() {
    let mut rng = Rng64::seed_from_u64(27);
    let z = random_ncomplex(&mut rng, 2, P, 3, 6);
    let u = functor_u(&z, 4).unwrap();
    let d = mor_decompose(&u, MorEdge::nth(4, 0).unwrap()).unwrap();
    assert!(d.v_part.is_zero());
    assert!(mor_membership(&d.u_part, d.edge.from).unwrap());
}

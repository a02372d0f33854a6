use ngon::homk::{certify_equivalent, homk_dim, homk_dim_direct, is_contractible, is_null_homotopic};
use ngon::ncomplex::{cone, desuspension, injective_hull, suspension};
use ngon::nfunctors::{contract_j, prolong_i, recollement, tstructure_decompose, two_n_gon};
use ngon::sample::{random_chain_map, random_in_fsr, random_ncomplex, Rng64};
use rand::{Rng, SeedableRng};

const P: u32 = 101;

#[test]
fn cones_validate_and_hulls_contract() {
    let mut rng = Rng64::seed_from_u64(7);
    for n in 2..=5 {
        for _ in 0..20 {
            let x = random_ncomplex(&mut rng, n, P, 3, 2 * n);
            let y = random_ncomplex(&mut rng, n, P, 2, 2 * n);
            let f = random_chain_map(&mut rng, &y, &x);
            let t = cone(&f);
            assert!(t.cone.validate().is_ok());
            assert!(t.u.check().is_ok() && t.v.check().is_ok());
            assert!(t.v.after(&t.u).is_zero());
            let uf = t.u.after(&f);
            assert!(is_null_homotopic(&uf).unwrap().unwrap().certifies(&uf));
            let (i, _) = injective_hull(&x);
            assert!(is_contractible(&i).is_some());
            assert_eq!(homk_dim(&x, &i).unwrap(), 0);
            assert_eq!(homk_dim(&i, &x).unwrap(), 0);
        }
    }
}

#[test]
fn fast_hom_matches_direct() {
    let mut rng = Rng64::seed_from_u64(8);
    for n in 2..=4 {
        for _ in 0..15 {
            let x = random_ncomplex(&mut rng, n, P, 3, 2 * n);
            let y = random_ncomplex(&mut rng, n, P, 3, 2 * n);
            assert_eq!(homk_dim(&x, &y).unwrap(), homk_dim_direct(&x, &y).unwrap(), "{x:?}\n{y:?}");
        }
    }
}

#[test]
fn suspension_round_trip() {
    let mut rng = Rng64::seed_from_u64(9);
    for n in 2..=5 {
        for _ in 0..10 {
            let x = random_ncomplex(&mut rng, n, P, 3, 2 * n);
            let sd = suspension(&desuspension(&x));
            assert!(sd.validate().is_ok());
            assert!(certify_equivalent(&x, &sd).is_some());
            let ds = desuspension(&suspension(&x));
            assert!(certify_equivalent(&x, &ds).is_some());
        }
    }
}

#[test]
fn adjunctions_and_strict_unit() {
    let mut rng = Rng64::seed_from_u64(10);
    for n in 3..=4 {
        for _ in 0..10 {
            let s = rng.gen_range(0..n as i64);
            let x = random_ncomplex(&mut rng, n - 1, P, 2, 2 * n);
            let y = random_ncomplex(&mut rng, n, P, 2, 2 * n);
            let z = random_ncomplex(&mut rng, n - 1, P, 2, 2 * n);
            assert_eq!(contract_j(s, &prolong_i(s, &x)).unwrap(), x);
            let jy = contract_j(s, &y).unwrap();
            assert_eq!(homk_dim(&prolong_i(s, &x), &y).unwrap(), homk_dim(&x, &jy).unwrap());
            assert_eq!(homk_dim(&jy, &z).unwrap(), homk_dim(&y, &prolong_i(s + 1, &z)).unwrap());
        }
    }
}

#[test]
fn tstructure_certified() {
    let mut rng = Rng64::seed_from_u64(11);
    for n in 3..=4 {
        for s in 0..n as i64 {
            for r in 1..n {
                for _ in 0..3 {
                    let x = random_ncomplex(&mut rng, n, P, 2, 2 * n);
                    let d = tstructure_decompose(&x, s, r).unwrap();
                    assert!(d.u_strict(), "u");
                    assert!(d.v_strict(), "v");
                    assert!(d.exact(), "exact");
                    assert!(d.kernel_contraction.is_some(), "kernel");
                    assert!(d.equivalence.is_some(), "equiv");
                    let u2 = random_in_fsr(&mut rng, n, P, s, r, 2);
                    assert_eq!(homk_dim(&u2, &d.v_part).unwrap(), 0);
                }
            }
        }
    }
}

#[test]
fn gon_vanishing() {
    let mut rng = Rng64::seed_from_u64(12);
    for n in 3..=4 {
        let g = two_n_gon(n);
        for k in 0..g.len() {
            let (a, b) = (g[k], g[(k + 1) % g.len()]);
            for _ in 0..5 {
                let u = random_in_fsr(&mut rng, n, P, a.s, a.r, 2);
                let v = random_in_fsr(&mut rng, n, P, b.s, b.r, 2);
                assert_eq!(homk_dim(&u, &v).unwrap(), 0);
            }
        }
    }
}

#[test]
fn recollement_adjunctions() {
    let mut rng = Rng64::seed_from_u64(13);
    for n in 3..=4 {
        for r in 1..n {
            let s = rng.gen_range(0..n as i64);
            let rec = recollement(n, s, r).unwrap();
            let y = random_ncomplex(&mut rng, n, P, 2, 2 * n);
            let a = random_ncomplex(&mut rng, n - r, P, 2, 2 * n);
            let ia = rec.i_lower_star.apply(&a).unwrap();
            assert_eq!(homk_dim(&rec.i_upper_star.apply(&y).unwrap(), &a).unwrap(), homk_dim(&y, &ia).unwrap());
            assert_eq!(homk_dim(&ia, &y).unwrap(), homk_dim(&a, &rec.i_upper_shriek.apply(&y).unwrap()).unwrap());
            assert_eq!(rec.i_upper_star.apply(&ia).unwrap(), a);
            assert!(is_contractible(&rec.j_upper_star.apply(&ia).unwrap()).is_some());
            let b = random_ncomplex(&mut rng, r + 1, P, 2, 2 * n);
            let jb = rec.j_lower_shriek.apply(&b).unwrap();
            assert_eq!(homk_dim(&jb, &y).unwrap(), homk_dim(&b, &rec.j_upper_star.apply(&y).unwrap()).unwrap());
            let jsb = rec.j_lower_star.apply(&b).unwrap();
            assert_eq!(homk_dim(&rec.j_upper_star.apply(&y).unwrap(), &b).unwrap(), homk_dim(&y, &jsb).unwrap());
        }
    }
}

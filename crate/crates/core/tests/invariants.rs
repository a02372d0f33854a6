//! Structural invariants as proptest properties. Strategies pick the shape parameters and a
//! seed; the samplers turn the seed into a validated object.

use ngon::cli::{Fixture, Object};
use ngon::equiv::fn_closed;
use ngon::exactla::PrimeFieldMatrix;
use ngon::homk::{certify_equivalent, homk_dim, homk_dim_direct, is_contractible};
use ngon::morcat::{mor_cone, mor_contraction, mor_homk_dim, MorMap};
use ngon::ncomplex::{cone, desuspension, suspension, ChainMapN};
use ngon::nfunctors::{contract_j, in_fsr_strict, prolong_i, tstructure_decompose};
use ngon::sample::{random_chain_map, random_matrix, random_mor_complex, random_ncomplex, trial_seed, Rng64};
use proptest::prelude::*;
use rand::SeedableRng;

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(101), Just(65521)]
}

fn rng(seed: u64) -> Rng64 {
    Rng64::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(p in prime(), r in 0usize..6, c in 0usize..6, seed in any::<u64>()) {
        let a = random_matrix(&mut rng(seed), p, r, c, 0.6);
        prop_assert_eq!(a.rank() + a.kernel_basis().len(), c);
        for v in a.kernel_basis() {
            prop_assert!(a.mul_vec(&v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn inverses_are_two_sided(p in prime(), k in 0usize..6, seed in any::<u64>()) {
        let a = random_matrix(&mut rng(seed), p, k, k, 0.8);
        if let Some(b) = a.inverse() {
            prop_assert!(a.mul(&b).is_identity() && b.mul(&a).is_identity());
        } else {
            prop_assert!(a.rank() < k);
        }
    }

    #[test]
    fn samplers_are_sound(n in 1usize..=5, p in prime(), seed in any::<u64>()) {
        let mut g = rng(seed);
        let x = random_ncomplex(&mut g, n, p, 3, 2 * n);
        prop_assert!(x.validate().is_ok());
        prop_assert!(x.hi() - x.lo() < 2 * n as i64);
        let y = random_ncomplex(&mut g, n, p, 3, 2 * n);
        prop_assert!(random_chain_map(&mut g, &x, &y).check().is_ok());
        if n >= 2 {
            prop_assert!(random_mor_complex(&mut g, n, p, 3, 2 * n).validate().is_ok());
        }
    }

    #[test]
    fn cones_and_suspensions(n in 2usize..=4, seed in any::<u64>()) {
        let mut g = rng(seed);
        let x = random_ncomplex(&mut g, n, 101, 3, 2 * n);
        let y = random_ncomplex(&mut g, n, 101, 2, 2 * n);
        let f = random_chain_map(&mut g, &y, &x);
        let t = cone(&f);
        prop_assert!(t.cone.validate().is_ok());
        prop_assert!(t.cone.lo() >= x.lo().min(y.lo()) - n as i64);
        prop_assert!(is_contractible(&cone(&ChainMapN::identity(&x)).cone).is_some());
        prop_assert!(certify_equivalent(&x, &suspension(&desuspension(&x))).is_some());
    }

    #[test]
    fn hom_dimension_oracles_agree(n in 2usize..=4, seed in any::<u64>()) {
        let mut g = rng(seed);
        let x = random_ncomplex(&mut g, n, 101, 2, 2 * n);
        let y = random_ncomplex(&mut g, n, 101, 2, 2 * n);
        prop_assert_eq!(homk_dim(&x, &y).unwrap(), homk_dim_direct(&x, &y).unwrap());
        prop_assert_eq!(homk_dim(&x, &y).unwrap(), homk_dim(&suspension(&x), &suspension(&y)).unwrap());
    }

    #[test]
    fn prolongation_adjunction(n in 3usize..=4, s in 0i64..4, seed in any::<u64>()) {
        let mut g = rng(seed);
        let x = random_ncomplex(&mut g, n - 1, 101, 2, 2 * n);
        let y = random_ncomplex(&mut g, n, 101, 2, 2 * n);
        prop_assert_eq!(contract_j(s, &prolong_i(s, &x)).unwrap(), x.clone());
        let jy = contract_j(s, &y).unwrap();
        prop_assert_eq!(homk_dim(&prolong_i(s, &x), &y).unwrap(), homk_dim(&x, &jy).unwrap());
    }

    #[test]
    fn tstructure_parts_are_strict(n in 3usize..=4, s in 0i64..4, r in 1usize..4, seed in any::<u64>()) {
        prop_assume!(r < n);
        let x = random_ncomplex(&mut rng(seed), n, 101, 2, 2 * n);
        let d = tstructure_decompose(&x, s, r).unwrap();
        prop_assert!(in_fsr_strict(&d.u_part, s, r));
        prop_assert!(d.is_certified());
    }

    #[test]
    fn mor_identity_cones_contract(n in 2usize..=4, seed in any::<u64>()) {
        let x = random_mor_complex(&mut rng(seed), n, 101, 2, 2 * n);
        prop_assert!(mor_contraction(&mor_cone(&MorMap::identity(&x)).cone).is_some());
    }

    #[test]
    fn fn_is_fully_faithful_on_dimensions(n in 2usize..=4, seed in any::<u64>()) {
        let mut g = rng(seed);
        let x = random_mor_complex(&mut g, n, 101, 2, 2 * n);
        let y = random_mor_complex(&mut g, n, 101, 2, 2 * n);
        prop_assert_eq!(mor_homk_dim(&x, &y).unwrap(), homk_dim(&fn_closed(&x), &fn_closed(&y)).unwrap());
    }

    #[test]
    fn fixtures_round_trip(n in 2usize..=4, p in prime(), seed in any::<u64>()) {
        let mut g = rng(seed);
        let x = random_ncomplex(&mut g, n, p, 3, 2 * n);
        let m = random_mor_complex(&mut g, n, p, 3, 2 * n);
        let back = Fixture::parse(&Fixture::from(&x).to_json()).unwrap().load().unwrap();
        prop_assert_eq!(back, Object::NComplex(x));
        let back = Fixture::parse(&Fixture::from(&m).to_json()).unwrap().load().unwrap();
        prop_assert_eq!(back, Object::Mor(m));
    }

    #[test]
    fn trial_seeds_split(master in any::<u64>(), i in 0u64..1000) {
        prop_assert_eq!(trial_seed(master, "cones", i), trial_seed(master, "cones", i));
        prop_assert_ne!(trial_seed(master, "cones", i), trial_seed(master, "cones", i + 1));
        prop_assert_ne!(trial_seed(master, "cones", i), trial_seed(master, "adjunctions", i));
    }
}

#[test]
fn zero_shapes_multiply() {
    let a = PrimeFieldMatrix::zeros(7, 3, 0);
    let b = PrimeFieldMatrix::zeros(7, 0, 2);
    assert_eq!(a.mul(&b), PrimeFieldMatrix::zeros(7, 3, 2));
}

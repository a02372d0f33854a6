//! Hom spaces in K_N: chain maps modulo null-homotopic ones, with explicit homotopies.

use ngon::homk::{chain_map_space, homk_dim, homk_dim_direct, is_null_homotopic, nullhomotopic_space};
use ngon::ncomplex::cone;
use ngon::sample::{random_chain_map, random_ncomplex, Rng64};
use rand::SeedableRng;

fn main() {
    let mut rng = Rng64::seed_from_u64(9);
    let x = random_ncomplex(&mut rng, 3, 101, 3, 6);
    let y = random_ncomplex(&mut rng, 3, 101, 3, 6);
    for (name, a, b) in [("X -> X", &x, &x), ("X -> Y", &x, &y), ("Y -> X", &y, &x)] {
        let maps = chain_map_space(a, b).unwrap().len();
        let null = nullhomotopic_space(a, b).unwrap().len();
        println!("{name}: chain maps {maps}, null-homotopic {null}, Hom_K {}", homk_dim(a, b).unwrap());
        assert_eq!(homk_dim(a, b).unwrap(), homk_dim_direct(a, b).unwrap());
    }

    // u f is null-homotopic for the cone triangle of f
    let f = random_chain_map(&mut rng, &y, &x);
    let t = cone(&f);
    let uf = t.u.after(&f);
    let h = is_null_homotopic(&uf).unwrap().expect("u f ≃ 0");
    println!("homotopy for u f certified: {}", h.certifies(&uf));
}

//! The 2N-gon of subcategories F_s^r in K_N: consecutive pairs are hom-orthogonal.

use ngon::homk::homk_dim;
use ngon::nfunctors::{recollement, two_n_gon};
use ngon::sample::{random_in_fsr, Rng64};
use rand::SeedableRng;

fn main() {
    let n = 3;
    let p = 101;
    let mut rng = Rng64::seed_from_u64(5);
    let gon = two_n_gon(n);
    for k in 0..gon.len() {
        let (a, b) = (gon[k], gon[(k + 1) % gon.len()]);
        let u = random_in_fsr(&mut rng, n, p, a.s, a.r, 2);
        let v = random_in_fsr(&mut rng, n, p, b.s, b.r, 2);
        println!("{a} -> {b}: dim Hom = {}, reverse {}", homk_dim(&u, &v).unwrap(), homk_dim(&v, &u).unwrap());
    }
    let rec = recollement(n, 0, 1).unwrap();
    println!("recollement at (s, r) = (0, 1): {rec:?}");
}

//! The functor F_N from Mor complexes to N-complexes, its iterated-cone oracle, and the Σ/μ table.

use ngon::equiv::{fn_closed, fn_iterative, fn_preimage, verify_gon_transport, xi, xi_entry};
use ngon::homk::{certify_equivalent, homk_dim};
use ngon::morcat::mor_homk_dim;
use ngon::ncomplex::{mu, suspension};
use ngon::sample::{random_mor_complex, random_ncomplex, Rng64};
use rand::SeedableRng;

fn main() {
    let (n, p) = (3, 101);
    let mut rng = Rng64::seed_from_u64(8);
    let x = random_mor_complex(&mut rng, n, p, 2, 4);
    let y = random_mor_complex(&mut rng, n, p, 2, 4);
    let fx = fn_closed(&x);
    println!("F_N X = {fx:?}");
    println!("closed ≃ iterated: {}", certify_equivalent(&fx, &fn_iterative(&x).unwrap()).is_some());
    println!("hom {} = {}", mor_homk_dim(&x, &y).unwrap(), homk_dim(&fx, &fn_closed(&y)).unwrap());

    let z = random_ncomplex(&mut rng, n, p, 2, 6);
    let g = fn_preimage(&z).unwrap();
    println!("preimage hits: {}", certify_equivalent(&fn_closed(&g), &z).is_some());

    let e = xi_entry(1, 1, n).unwrap();
    println!("Ξ^1 for r = 1: μ^{}_{}", e.top, e.len);
    let s = suspension(&mu(n, p, 1, n as i64 - 1, 1).unwrap());
    println!("Σ μ ≃ Ξ^1: {}", certify_equivalent(&s, &xi(1, 1, 1, n, p).unwrap()).is_some());

    let rep = verify_gon_transport(n, p, 5, 1).unwrap();
    for row in &rep.rows {
        println!("F_N({}) in {}: {}/{}", row.source, row.target, row.passes, row.samples);
    }
}

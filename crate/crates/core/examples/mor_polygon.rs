//! Complexes over Mor^sm_{N-1}: the 2N-gon and the six decomposition families.

use ngon::morcat::{mor_decompose, mor_homk_dim, MorEdge};
use ngon::sample::{random_mor_complex, Rng64};
use rand::SeedableRng;

fn main() {
    let n = 3;
    let x = random_mor_complex(&mut Rng64::seed_from_u64(2), n, 101, 3, 2 * n);
    println!("X = {x:?}");
    for edge in MorEdge::all(n) {
        let d = mor_decompose(&x, edge).unwrap();
        println!(
            "{} * {}: U total dim {}, V total dim {}, hom(U, V) = {}, certified {}",
            edge.from,
            edge.to,
            d.u_part.total().total_dim(),
            d.v_part.total().total_dim(),
            mor_homk_dim(&d.u_part, &d.v_part).unwrap(),
            d.is_certified()
        );
    }
}

//! Split a random 4-complex along every stable t-structure (F_s^r, F_{r+s+1}^{N-r-1}).

use ngon::homk::is_contractible;
use ngon::nfunctors::tstructure_decompose;
use ngon::sample::{random_ncomplex, Rng64};
use rand::SeedableRng;

fn main() {
    let n = 4;
    let x = random_ncomplex(&mut Rng64::seed_from_u64(11), n, 101, 2, 2 * n);
    println!("X = {x:?}");
    for s in 0..n as i64 {
        for r in 1..n {
            let d = tstructure_decompose(&x, s, r).unwrap();
            println!(
                "s={s} r={r}: dim U = {:>2}, dim V = {:>2}, certified {}, V contractible {}",
                d.u_part.total_dim(),
                d.v_part.total_dim(),
                d.is_certified(),
                is_contractible(&d.v_part).is_some()
            );
        }
    }
}

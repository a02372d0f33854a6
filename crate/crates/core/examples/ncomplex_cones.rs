//! Interval complexes, mapping cones and suspension for N = 3.

use ngon::homk::{certify_equivalent, homk_dim, is_contractible};
use ngon::ncomplex::{cone, desuspension, mu, suspension, ChainMapN};

fn main() {
    let p = 101;
    // μ^1_2: k -> k at degrees 0, 1
    let x = mu(3, p, 2, 1, 1).unwrap();
    println!("X = {x:?}");

    let ix = cone(&ChainMapN::identity(&x)).cone;
    println!("I(X) = C(1_X) = {ix:?}");
    println!("I(X) contractible: {}", is_contractible(&ix).is_some());

    let sx = suspension(&x);
    println!("ΣX = {sx:?}");
    println!("Σ^-1 Σ X ≃ X: {}", certify_equivalent(&desuspension(&sx), &x).is_some());
    println!("dim Hom_K(X, X) = {}, dim Hom_K(X, ΣX) = {}", homk_dim(&x, &x).unwrap(), homk_dim(&x, &sx).unwrap());
}

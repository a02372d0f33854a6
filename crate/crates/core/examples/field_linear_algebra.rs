//! Rank, kernel and inverses over F_p, including the empty shapes that bounded complexes need.

use ngon::exactla::PrimeFieldMatrix;

fn main() {
    let p = 7;
    let a = PrimeFieldMatrix::from_rows(p, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, -1]]);
    println!("A = {a:?}");
    println!("rank {} , kernel basis {:?}", a.rank(), a.kernel_basis());

    let b = PrimeFieldMatrix::from_rows(p, &[&[2, 1], &[1, 1]]);
    let inv = b.inverse().expect("invertible over F_7");
    println!("B^-1 = {inv:?}");
    assert!(b.mul(&inv).is_identity());

    // 3x0 times 0x2 is the 3x2 zero matrix
    let z = PrimeFieldMatrix::zeros(p, 3, 0).mul(&PrimeFieldMatrix::zeros(p, 0, 2));
    println!("empty product: {z:?}");
}

//! Ideals of general r-dimensional subspaces of k^n: the sparsest elements
//! have r+1 terms and are term multiples of p^e-th powers of linear forms.

use sparsest::field::{GaloisField, Rationals};
use sparsest::sparsity::verify_prop_linear;
use sparsest::Result;

fn main() -> Result<()> {
    let q = verify_prop_linear(4, 2, 3, &Rationals, 0)?;
    println!("{}", serde_json::to_string_pretty(&q).unwrap());

    let gf = GaloisField::generic_over(3);
    let r = verify_prop_linear(4, 2, 3, &gf, 0)?;
    for d in &r.degrees {
        println!("GF({}): degree {} minimum {:?}, exponents {:?}", gf.order(), d.degree, d.minimum, d.frobenius_e);
    }
    println!("passed: {} and {}", q.passed(), r.passed());
    Ok(())
}

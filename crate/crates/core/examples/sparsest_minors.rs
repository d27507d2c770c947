//! Certified sparsest element of the 3-minor ideal of a generic 3x3 matrix
//! over F_32003: nothing below six terms, and the six-term witness is the
//! determinant.

use sparsest::field::PrimeField;
use sparsest::ideal::IdealSpec;
use sparsest::poly::VariableMatrix;
use sparsest::sparsity::{classify_minimal, sparsest_in_range, Method, SearchOptions};
use sparsest::Result;

fn main() -> Result<()> {
    let f = PrimeField::new(32003)?;
    let spec = IdealSpec::minors(&f, VariableMatrix::generic(3, 3), 3)?;

    let none = sparsest_in_range(&spec, 4, 5, Method::ExactSlice, &SearchOptions::default())?;
    println!("k <= 5, degrees <= 4: {:?}", none.verdict);

    let cert = sparsest_in_range(&spec, 3, 6, Method::ExactSlice, &SearchOptions::default())?;
    println!("{}", cert.to_json());
    if let Some(w) = &cert.witness {
        let c = classify_minimal(w, &spec)?;
        println!("{:?}, e = {}", c.shape, c.frobenius_e);
    }
    Ok(())
}

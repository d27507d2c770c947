//! Sparsest elements of minor ideals of symmetric matrices, reported as
//! found; no expected value is asserted.

use sparsest::field::PrimeField;
use sparsest::ideal::IdealSpec;
use sparsest::poly::VariableMatrix;
use sparsest::sparsity::{classify_minimal, sparsest_in_range, Method, SearchOptions};
use sparsest::Result;

fn main() -> Result<()> {
    let f = PrimeField::new(32003)?;
    for (n, t, k_max) in [(3, 2, 4), (3, 3, 6), (4, 3, 6), (4, 4, 17)] {
        let spec = IdealSpec::minors(&f, VariableMatrix::symmetric(n), t)?;
        let cert = sparsest_in_range(&spec, t as u32, k_max, Method::ExactSlice, &SearchOptions::default())?;
        let shape = match &cert.witness {
            Some(w) => format!("{:?}", classify_minimal(w, &spec)?.shape),
            None => "-".into(),
        };
        println!("symmetric {n}x{n}, {t}-minors, degree <= {t}: {:?} k = {:?} {shape}", cert.verdict, cert.k);
    }
    Ok(())
}

//! In characteristic 2 the square of a minor is as sparse as the minor.

use sparsest::field::PrimeField;
use sparsest::ideal::{minor, IdealSpec, IndexSet};
use sparsest::poly::VariableMatrix;
use sparsest::sparsity::classify_minimal;
use sparsest::Result;

fn main() -> Result<()> {
    let f = PrimeField::new(2)?;
    let x = VariableMatrix::generic(3, 3);
    let spec = IdealSpec::minors(&f, x, 3)?;
    let all = IndexSet::range(3);
    let sq = minor(&f, &x, &all, &all)?.power(2);
    let c = classify_minimal(&sq, &spec)?;
    println!("det^2 over F_2: {} terms, {:?} with e = {}", sq.term_count(), c.shape, c.frobenius_e);
    println!("{}", sq.to_text(spec.layout()));
    assert_eq!(c.reconstruct(), sq);
    Ok(())
}

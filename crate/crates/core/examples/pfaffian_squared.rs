//! Pf(J)^2 equals the principal minor det x[J,J] on a skew 6x6 matrix, and
//! the unsigned expansion breaks it.

use sparsest::field::Rationals;
use sparsest::ideal::{pfaffian_squared_is_det_with, IndexSet, PfaffianConvention};
use sparsest::poly::VariableMatrix;
use sparsest::Result;

fn main() -> Result<()> {
    let x = VariableMatrix::skew(6);
    for size in [2, 4, 6] {
        for j in IndexSet::subsets(6, size) {
            let ok = pfaffian_squared_is_det_with(&Rationals, &x, &j, PfaffianConvention::Standard)?;
            let broken = pfaffian_squared_is_det_with(&Rationals, &x, &j, PfaffianConvention::Unsigned)?;
            println!("J = {:?}: signed {ok}, unsigned {broken}", j.as_slice());
        }
    }
    Ok(())
}

//! Term counts of generic minors and principal Pfaffians.

use sparsest::field::Rationals;
use sparsest::ideal::{minor, pfaffian, IndexSet};
use sparsest::poly::VariableMatrix;
use sparsest::Result;

fn main() -> Result<()> {
    for t in 1..=6 {
        let x = VariableMatrix::generic(t, t);
        let all = IndexSet::range(t);
        let det = minor(&Rationals, &x, &all, &all)?;
        println!("{t}x{t} determinant: {} terms", det.term_count());
    }
    for t in [2, 4, 6, 8] {
        let x = VariableMatrix::skew(t);
        let pf = pfaffian(&Rationals, &x, &IndexSet::range(t))?;
        println!("Pfaffian of a skew {t}x{t}: {} terms", pf.term_count());
    }
    let x = VariableMatrix::skew(4);
    println!("Pf = {}", pfaffian(&Rationals, &x, &IndexSet::range(4))?.to_text(&sparsest::poly::VarLayout::Matrix(x)));
    Ok(())
}

//! Sparsest elements of 4-Pfaffian ideals of skew 4x4 and 5x5 matrices.

use sparsest::field::Rationals;
use sparsest::ideal::IdealSpec;
use sparsest::poly::VariableMatrix;
use sparsest::sparsity::{classify_minimal, sparsest_in_range, Method, SearchOptions};
use sparsest::Result;

fn main() -> Result<()> {
    for n in [4, 5] {
        let spec = IdealSpec::pfaffians(&Rationals, VariableMatrix::skew(n), 4)?;
        let opts = SearchOptions { collect_all: true, ..Default::default() };
        let cert = sparsest_in_range(&spec, 3, 3, Method::EvalThenConfirm, &opts)?;
        println!("skew {n}x{n}: {:?}, k = {:?}, {} witness orbits", cert.verdict, cert.k, cert.witnesses.len());
        for w in &cert.witnesses {
            let c = classify_minimal(w, &spec)?;
            println!("  {:<50} {:?}", w.to_text(spec.layout()), c.shape);
        }
    }
    Ok(())
}

//! Minors and Pfaffians already form reduced Gröbner bases under their
//! diagonal lex orders.

use sparsest::field::{Field, Rationals};
use sparsest::groebner::buchberger;
use sparsest::ideal::IdealSpec;
use sparsest::poly::{Polynomial, VariableMatrix};
use sparsest::Result;

fn report<F: Field>(name: &str, spec: &IdealSpec<F>) -> Result<()> {
    let gens = spec.generators();
    let gb = buchberger(&gens, &spec.natural_order())?;
    let f = spec.field();
    println!("{name}: {} generators, basis of {} ({:?})", gens.len(), gb.len(), gb.stats());
    for m in gb.leading_monomials().take(4) {
        println!("  lead {}", Polynomial::monomial(f, spec.nvars(), f.one(), m.clone()).to_text(spec.layout()));
    }
    Ok(())
}

fn main() -> Result<()> {
    for (m, n) in [(3, 3), (3, 4), (4, 4)] {
        report(&format!("3-minors of {m}x{n}"), &IdealSpec::minors(&Rationals, VariableMatrix::generic(m, n), 3)?)?;
    }
    for n in [5, 6] {
        report(&format!("4-Pfaffians of skew {n}x{n}"), &IdealSpec::pfaffians(&Rationals, VariableMatrix::skew(n), 4)?)?;
    }
    Ok(())
}

//! Shortest binomials: rank-one 2x2 minors, and the family I_n where the
//! first binomial only shows up in degree n.

use sparsest::field::Rationals;
use sparsest::ideal::IdealSpec;
use sparsest::poly::{Polynomial, VarLayout, VariableMatrix};
use sparsest::sparsity::shortest_binomial;
use sparsest::Result;

fn main() -> Result<()> {
    let spec = IdealSpec::minors(&Rationals, VariableMatrix::generic(2, 3), 2)?;
    if let Some((d, b)) = shortest_binomial(&spec, 2)? {
        println!("2-minors of 2x3: degree {d}: {}", b.to_text(spec.layout()));
    }

    let layout = VarLayout::Plain(3);
    for n in 2..=5 {
        let gens = vec![
            Polynomial::parse(&Rationals, &layout, "x(1)^2 - 2*x(1)*x(3) + x(3)^2")?,
            Polynomial::parse(&Rationals, &layout, &format!("{n}*x(1) - x(2) - {}*x(3)", n - 1))?,
        ];
        let spec = IdealSpec::explicit(&Rationals, layout, gens)?;
        match shortest_binomial(&spec, n)? {
            Some((d, b)) => println!("I_{n}: degree {d}: {}", b.to_text(&layout)),
            None => println!("I_{n}: none up to degree {n}"),
        }
    }
    Ok(())
}

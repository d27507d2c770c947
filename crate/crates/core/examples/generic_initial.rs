//! Generic initial spaces of f * <l_1^q, .., l_s^q> and the p-Borel
//! property.

use sparsest::field::{Field, PrimeField, Rationals};
use sparsest::gin::{generic_initial_space, gin_lemma_instance, is_borel_fixed, MonomialSpace};
use sparsest::poly::Monomial;
use sparsest::Result;

fn show<F: Field>(field: &F, n: usize, s: usize, d: u32, e: u32) -> Result<()> {
    let (v, expected) = gin_lemma_instance(field, n, s, d, e, 7)?;
    let w = generic_initial_space(&v, 7, 3)?;
    println!(
        "p = {}, n = {n}, s = {s}, d = {d}, e = {e}: gin = <{}> predicted: {}, Borel fixed: {}",
        field.characteristic(),
        w.to_text(n).join(", "),
        w == expected,
        is_borel_fixed(&w, field.char_exponent())
    );
    Ok(())
}

fn main() -> Result<()> {
    show(&Rationals, 3, 2, 3, 0)?;
    show(&PrimeField::new(2)?, 3, 2, 3, 1)?;
    show(&PrimeField::new(3)?, 4, 3, 4, 1)?;

    // <x1^2, x2^2> is 2-Borel fixed but not 0-Borel fixed.
    let w = MonomialSpace::new([Monomial::var_pow(0, 2), Monomial::var_pow(1, 2)])?;
    println!("<x1^2, x2^2>: char 2 {}, char 0 {}", is_borel_fixed(&w, 2), is_borel_fixed(&w, 1));
    Ok(())
}

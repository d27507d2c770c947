//! Text format: `3*x(1,2)^2*x(2,1) - 1/2*x(1,1)`.
//!
//! Terms are separated by `+`/`-`; a term is an optional rational literal
//! followed by `*`-separated variable powers. `x(i)` names plain
//! variables and `x(i,j)` matrix entries (1-based).

use num_bigint::BigInt;

use super::{Monomial, Polynomial, VarLayout};
use crate::error::{Error, Result};
use crate::field::Field;

pub(super) fn format_polynomial<F: Field>(p: &Polynomial<F>, layout: &VarLayout) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let field = p.field();
    let mut out = String::new();
    for (idx, t) in p.terms().iter().enumerate() {
        let mut c = field.format_elem(&t.coeff);
        let negative = c.starts_with('-');
        if negative {
            c.remove(0);
        }
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if c != "1" || t.monomial.is_one() {
            factors.push(c);
        }
        for (v, e) in t.monomial.iter() {
            let name = layout.var_name(v);
            factors.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        out.push_str(&factors.join("*"));
    }
    out
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn small(&mut self) -> Result<usize> {
        let at = self.pos;
        let v = self.integer()?;
        usize::try_from(v).map_err(|_| Error::Parse { pos: at, msg: "index too large".into() })
    }
}

pub(super) fn parse_polynomial<F: Field>(field: &F, layout: &VarLayout, input: &str) -> Result<Polynomial<F>> {
    let nvars = layout.nvars();
    let mut p = Parser { s: input.as_bytes(), pos: 0 };
    let mut terms: Vec<(F::Elem, Monomial)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match p.peek() {
            None if first => return p.err("empty polynomial"),
            None => break,
            Some(b'+') => {
                p.pos += 1;
            }
            Some(b'-') => {
                p.pos += 1;
                negative = true;
            }
            Some(_) if first => {}
            Some(c) => return p.err(format!("unexpected '{}'", c as char)),
        }
        first = false;

        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        let mut pairs: Vec<(usize, u32)> = Vec::new();
        if matches!(p.peek(), Some(c) if c.is_ascii_digit()) {
            num = p.integer()?;
            if p.eat(b'/') {
                den = p.integer()?;
            }
            if !p.eat(b'*') {
                push_term(field, &p, &mut terms, negative, &num, &den, &pairs)?;
                continue;
            }
        }
        let mut need_factor = true;
        while need_factor {
            p.expect(b'x')?;
            p.expect(b'(')?;
            let i = p.small()?;
            let j = if p.eat(b',') { Some(p.small()?) } else { None };
            p.expect(b')')?;
            let at = p.pos;
            let (v, neg) = layout.resolve(i, j).map_err(|m| Error::Parse { pos: at, msg: m })?;
            let e = if p.eat(b'^') {
                let at = p.pos;
                u32::try_from(p.small()?).map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?
            } else {
                1
            };
            if neg && e % 2 == 1 {
                negative = !negative;
            }
            pairs.push((v, e));
            need_factor = p.eat(b'*');
        }
        push_term(field, &p, &mut terms, negative, &num, &den, &pairs)?;
    }
    Ok(Polynomial::from_terms(field, nvars, terms))
}

fn push_term<F: Field>(
    field: &F,
    p: &Parser<'_>,
    terms: &mut Vec<(F::Elem, Monomial)>,
    negative: bool,
    num: &BigInt,
    den: &BigInt,
    pairs: &[(usize, u32)],
) -> Result<()> {
    let Some(mut c) = field.from_ratio(num, den) else {
        return p.err("denominator vanishes in the field");
    };
    if negative {
        c = field.neg(&c);
    }
    terms.push((c, Monomial::from_pairs(pairs.iter().copied())));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::VariableMatrix;

    #[test]
    fn parses_matrix_format() {
        let layout = VarLayout::Matrix(VariableMatrix::generic(2, 2));
        let p = Polynomial::parse(&Rationals, &layout, "3*x(1,2)^2*x(2,1) - 1/2*x(1,1)").unwrap();
        assert_eq!(p.term_count(), 2);
        assert_eq!(p.to_text(&layout), "3*x(1,2)^2*x(2,1) - 1/2*x(1,1)");
    }

    #[test]
    fn constants_and_signs() {
        let layout = VarLayout::Plain(2);
        let p = Polynomial::parse(&Rationals, &layout, "-x(1) + 2 - x(2)^3").unwrap();
        assert_eq!(p.to_text(&layout), "-x(2)^3 - x(1) + 2");
        let z = Polynomial::parse(&Rationals, &layout, "x(1) - x(1)").unwrap();
        assert_eq!(z.to_text(&layout), "0");
    }

    #[test]
    fn skew_lower_entries_flip_sign() {
        let layout = VarLayout::Matrix(VariableMatrix::skew(3));
        let a = Polynomial::parse(&Rationals, &layout, "x(2,1)").unwrap();
        let b = Polynomial::parse(&Rationals, &layout, "-x(1,2)").unwrap();
        assert_eq!(a, b);
        assert!(Polynomial::parse(&Rationals, &layout, "x(2,2)").is_err());
    }

    #[test]
    fn rejects_bad_input() {
        let layout = VarLayout::Plain(2);
        for bad in ["", "x(3)", "x(1,1)", "2*", "x(1) +", "y", "1/0"] {
            assert!(Polynomial::parse(&Rationals, &layout, bad).is_err(), "{bad}");
        }
        let f5 = PrimeField::new(5).unwrap();
        assert!(Polynomial::parse(&f5, &layout, "1/5*x(1)").is_err());
    }

    #[test]
    fn modular_literals() {
        let f7 = PrimeField::new(7).unwrap();
        let layout = VarLayout::Plain(1);
        let p = Polynomial::parse(&f7, &layout, "1/2*x(1)").unwrap();
        assert_eq!(p.terms()[0].coeff, 4);
        assert_eq!(p.to_text(&layout), "-3*x(1)");
    }
}

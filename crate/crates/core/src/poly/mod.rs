//! Sparse multivariate polynomials with exact coefficients.

mod layout;
mod monomial;
mod text;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use layout::{Entry, MatrixKind, VarLayout, VariableMatrix};
pub use monomial::{binomial, monomials_of_degree, Monomial, MonomialOrder, OrderKind};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{determinant, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub coeff: E,
    pub monomial: Monomial,
}

/// A polynomial in `nvars` variables, stored as a list of terms with
/// nonzero coefficients in strictly decreasing canonical order.
#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.nvars.hash(state);
        self.terms.hash(state);
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        Polynomial { field: field.clone(), nvars, terms: Vec::new() }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, [(c, Monomial::one())])
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable {v} outside 0..{nvars}");
        Self::from_terms(field, nvars, [(field.one(), Monomial::var(v))])
    }

    pub fn monomial(field: &F, nvars: usize, c: F::Elem, m: Monomial) -> Self {
        Self::from_terms(field, nvars, [(c, m)])
    }

    /// Builds the canonical form: repeated monomials are summed and zero
    /// coefficients dropped.
    pub fn from_terms(
        field: &F,
        nvars: usize,
        terms: impl IntoIterator<Item = (F::Elem, Monomial)>,
    ) -> Self {
        let mut v: Vec<(F::Elem, Monomial)> = terms.into_iter().collect();
        debug_assert!(v.iter().all(|(_, m)| m.var_bound() <= nvars));
        v.sort_by(|a, b| b.1.cmp(&a.1));
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(v.len());
        for (c, m) in v {
            match out.last_mut() {
                Some(last) if last.monomial == m => last.coeff = field.add(&last.coeff, &c),
                _ => out.push(Term { coeff: c, monomial: m }),
            }
        }
        out.retain(|t| !field.is_zero(&t.coeff));
        Polynomial { field: field.clone(), nvars, terms: out }
    }

    /// Dense coefficient vector over a monomial list (missing monomials 0).
    pub fn from_coefficients(field: &F, nvars: usize, monomials: &[Monomial], coeffs: &[F::Elem]) -> Self {
        Self::from_terms(field, nvars, coeffs.iter().cloned().zip(monomials.iter().cloned()))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F::Elem>> {
        self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.monomial)
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .binary_search_by(|t| m.cmp(&t.monomial))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    /// Largest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        // canonical order is graded, so the first term has top degree
        self.terms.first().map(|t| t.monomial.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].monomial.degree() == w[1].monomial.degree())
    }

    /// Splits into homogeneous components, highest degree first.
    pub fn homogeneous_components(&self) -> Vec<Polynomial<F>> {
        let mut out: Vec<Polynomial<F>> = Vec::new();
        for t in &self.terms {
            match out.last_mut() {
                Some(p) if p.terms[0].monomial.degree() == t.monomial.degree() => p.terms.push(t.clone()),
                _ => out.push(Polynomial { field: self.field.clone(), nvars: self.nvars, terms: vec![t.clone()] }),
            }
        }
        out
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Result<&Term<F::Elem>> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.monomial, &b.monomial))
            .ok_or(Error::ZeroPolynomial)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, other.field)));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &F::Elem| if subtract { f.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.monomial.cmp(&b.monomial) {
                std::cmp::Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(Term { coeff: rhs(&b.coeff), monomial: b.monomial.clone() });
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if subtract { f.sub(&a.coeff, &b.coeff) } else { f.add(&a.coeff, &b.coeff) };
                    if !f.is_zero(&c) {
                        out.push(Term { coeff: c, monomial: a.monomial.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|t| Term { coeff: rhs(&t.coeff), monomial: t.monomial.clone() }));
        Polynomial { field: self.field.clone(), nvars: self.nvars, terms: out }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.monomial.mul(&b.monomial);
                let c = f.mul(&a.coeff, &b.coeff);
                acc.entry(m).and_modify(|x| *x = f.add(x, &c)).or_insert(c);
            }
        }
        Ok(Self::from_terms(f, self.nvars, acc.into_iter().map(|(m, c)| (c, m))))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: self.field.mul(&t.coeff, c), monomial: t.monomial.clone() })
            .collect();
        Polynomial { field: self.field.clone(), nvars: self.nvars, terms }
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: self.field.mul(&t.coeff, c), monomial: t.monomial.mul(m) })
            .collect();
        Polynomial { field: self.field.clone(), nvars: self.nvars, terms }
    }

    pub fn power(&self, k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so that the leading (canonical) coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => self.scale(&self.field.inv(&t.coeff).expect("nonzero coefficient")),
        }
    }

    /// Scales by the field's normalizer (monic, or primitive integral over ℚ).
    pub fn normalized(&self) -> Self {
        let coeffs: Vec<F::Elem> = self.terms.iter().map(|t| t.coeff.clone()).collect();
        self.scale(&self.field.normalizer(&coeffs))
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: point.len() });
        }
        let f = &self.field;
        Ok(self.terms.iter().fold(f.zero(), |acc, t| {
            f.add(&acc, &f.mul(&t.coeff, &eval_monomial(f, &t.monomial, point)))
        }))
    }

    /// `f(g x)`: substitutes `x_i -> sum_j g_ij x_j` for an invertible `g`.
    pub fn apply_linear_change(&self, g: &Matrix<F::Elem>) -> Result<Self> {
        let n = self.nvars;
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: g.rows().max(g.cols()) });
        }
        if self.field.is_zero(&determinant(&self.field, g)?) {
            return Err(Error::SingularMatrix);
        }
        let f = &self.field;
        let images: Vec<Polynomial<F>> = (0..n)
            .map(|i| Self::from_terms(f, n, (0..n).map(|j| (g.get(i, j).clone(), Monomial::var(j)))))
            .collect();
        let mut powers: HashMap<(usize, u32), Polynomial<F>> = HashMap::new();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for t in &self.terms {
            let mut prod = Self::constant(f, n, t.coeff.clone());
            for (v, e) in t.monomial.iter() {
                let pw = powers.entry((v, e)).or_insert_with(|| images[v].power(e));
                prod = &prod * pw;
            }
            for pt in prod.terms {
                acc.entry(pt.monomial).and_modify(|x| *x = f.add(x, &pt.coeff)).or_insert(pt.coeff);
            }
        }
        Ok(Self::from_terms(f, n, acc.into_iter().map(|(m, c)| (c, m))))
    }

    /// Greatest common monomial divisor of all terms (1 for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some(first) = it.next() else { return Monomial::one() };
        it.fold(first.monomial.clone(), |g, t| g.gcd(&t.monomial))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.monomial.checked_div(m).map(|q| Term { coeff: t.coeff.clone(), monomial: q }))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial { field: self.field.clone(), nvars: self.nvars, terms })
    }

    /// Renames variables through a signed map `v -> (v', negate)`; the map
    /// must be injective.
    pub fn substitute_signed(&self, map: impl Fn(usize) -> (usize, bool)) -> Self {
        let f = &self.field;
        Self::from_terms(
            f,
            self.nvars,
            self.terms.iter().map(|t| {
                let mut negative = false;
                let m = Monomial::from_pairs(t.monomial.iter().map(|(v, e)| {
                    let (w, neg) = map(v);
                    if neg && e % 2 == 1 {
                        negative = !negative;
                    }
                    (w, e)
                }));
                (if negative { f.neg(&t.coeff) } else { t.coeff.clone() }, m)
            }),
        )
    }

    pub fn map_field<G: Field>(&self, target: &G, conv: impl Fn(&F::Elem) -> G::Elem) -> Polynomial<G> {
        Polynomial::from_terms(target, self.nvars, self.terms.iter().map(|t| (conv(&t.coeff), t.monomial.clone())))
    }

    pub fn to_extension(&self, ext: &F::Ext) -> Polynomial<F::Ext> {
        self.map_field(ext, |c| self.field.embed(ext, c))
    }

    pub fn to_text(&self, layout: &VarLayout) -> String {
        text::format_polynomial(self, layout)
    }

    pub fn parse(field: &F, layout: &VarLayout, input: &str) -> Result<Self> {
        text::parse_polynomial(field, layout, input)
    }
}

pub fn eval_monomial<F: Field>(field: &F, m: &Monomial, point: &[F::Elem]) -> F::Elem {
    m.iter().fold(field.one(), |acc, (v, e)| field.mul(&acc, &field.pow(&point[v], e as u64)))
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(&VarLayout::Plain(self.nvars)))
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&self.field.neg(&self.field.one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn parse_q(s: &str, n: usize) -> Polynomial<Rationals> {
        Polynomial::parse(&Rationals, &VarLayout::Plain(n), s).unwrap()
    }

    #[test]
    fn cancellation_and_identity() {
        let a = parse_q("x(1) + x(2)", 2);
        let b = parse_q("x(1) - x(2)", 2);
        assert_eq!(&a + &b, parse_q("2*x(1)", 2));
        assert_eq!(&a + &Polynomial::zero(&Rationals, 2), a);
        let f2 = PrimeField::new(2).unwrap();
        let c = Polynomial::parse(&f2, &VarLayout::Plain(2), "x(1) + x(2)").unwrap();
        assert!((&c + &c).is_zero());
    }

    #[test]
    fn products() {
        let a = parse_q("x(1) + x(2)", 2);
        let b = parse_q("x(1) - x(2)", 2);
        assert_eq!(&a * &b, parse_q("x(1)^2 - x(2)^2", 2));
        let f3 = PrimeField::new(3).unwrap();
        let c = Polynomial::parse(&f3, &VarLayout::Plain(2), "x(1) + x(2)").unwrap();
        assert_eq!(c.power(3), Polynomial::parse(&f3, &VarLayout::Plain(2), "x(1)^3 + x(2)^3").unwrap());
        let u = parse_q("x(1)*x(2)^2", 2);
        let prod = &u * &b;
        assert_eq!(prod.term_count(), b.term_count());
    }

    #[test]
    fn mismatches_are_errors() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let a = Polynomial::var(&f2, 2, 0);
        let b = Polynomial::var(&f3, 2, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch(_))));
        let c = Polynomial::var(&f2, 3, 0);
        assert!(matches!(a.checked_mul(&c), Err(Error::VariableMismatch { .. })));
    }

    #[test]
    fn zero_has_no_leading_term() {
        let z = Polynomial::zero(&Rationals, 2);
        assert_eq!(z.term_count(), 0);
        assert!(matches!(z.leading_term(&MonomialOrder::lex(2)), Err(Error::ZeroPolynomial)));
        let single = parse_q("3*x(2)", 2);
        assert_eq!(single.leading_term(&MonomialOrder::lex(2)).unwrap().monomial, Monomial::var(1));
    }

    #[test]
    fn evaluation() {
        let f = parse_q("x(1)^2 - x(2)", 2);
        let q = Rationals;
        assert!(q.is_zero(&f.evaluate(&[q.from_i64(2), q.from_i64(4)]).unwrap()));
        assert!(f.evaluate(&[q.from_i64(2)]).is_err());
    }

    #[test]
    fn linear_change_identity_permutation_inverse() {
        let q = Rationals;
        let f = parse_q("x(1)^2*x(3) - 3*x(2) + 1/2*x(1)*x(2)*x(3)", 3);
        assert_eq!(f.apply_linear_change(&Matrix::identity(&q, 3)).unwrap(), f);
        // permutation x1 -> x2, x2 -> x3, x3 -> x1
        let mut p = Matrix::zeros(&q, 3, 3);
        p.set(0, 1, q.one());
        p.set(1, 2, q.one());
        p.set(2, 0, q.one());
        let permuted = f.apply_linear_change(&p).unwrap();
        assert_eq!(permuted, parse_q("x(2)^2*x(1) - 3*x(3) + 1/2*x(2)*x(3)*x(1)", 3));
        let g = Matrix::from_rows(vec![
            vec![q.from_i64(1), q.from_i64(2), q.from_i64(0)],
            vec![q.from_i64(-1), q.from_i64(1), q.from_i64(3)],
            vec![q.from_i64(0), q.from_i64(1), q.from_i64(2)],
        ])
        .unwrap();
        let gi = crate::linalg::inverse(&q, &g).unwrap();
        let back = f.apply_linear_change(&g).unwrap().apply_linear_change(&gi).unwrap();
        assert_eq!(back, f);
        let singular = Matrix::zeros(&q, 3, 3);
        assert!(matches!(f.apply_linear_change(&singular), Err(Error::SingularMatrix)));
    }

    #[test]
    fn frobenius_on_squared_determinant_mod_two() {
        let f2 = PrimeField::new(2).unwrap();
        let layout = VarLayout::Matrix(VariableMatrix::generic(2, 2));
        let det = Polynomial::parse(&f2, &layout, "x(1,1)*x(2,2) - x(1,2)*x(2,1)").unwrap();
        let sq = det.power(2);
        assert_eq!(sq, Polynomial::parse(&f2, &layout, "x(1,1)^2*x(2,2)^2 + x(1,2)^2*x(2,1)^2").unwrap());
        assert_eq!(det.power(1), det);
    }

    fn arb_poly_fp(p: u32) -> impl Strategy<Value = Polynomial<PrimeField>> {
        proptest::collection::vec((0u32..p, proptest::collection::vec(0u32..3, 3)), 0..5).prop_map(move |ts| {
            let f = PrimeField::new(p).unwrap();
            Polynomial::from_terms(&f, 3, ts.into_iter().map(|(c, e)| (c, Monomial::from_exponents(&e))))
        })
    }

    fn arb_poly_q() -> impl Strategy<Value = Polynomial<Rationals>> {
        proptest::collection::vec((-5i64..5, 1i64..4, proptest::collection::vec(0u32..3, 3)), 0..5).prop_map(|ts| {
            let q = Rationals;
            Polynomial::from_terms(
                &q,
                3,
                ts.into_iter().map(|(a, b, e)| {
                    (q.from_ratio(&a.into(), &b.into()).unwrap(), Monomial::from_exponents(&e))
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms_fp(a in arb_poly_fp(7), b in arb_poly_fp(7), c in arb_poly_fp(7)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn ring_axioms_q(a in arb_poly_q(), b in arb_poly_q(), c in arb_poly_q()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn text_round_trip(a in arb_poly_q()) {
            let layout = VarLayout::Plain(3);
            let s = a.to_text(&layout);
            let back = Polynomial::parse(&Rationals, &layout, &s).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_text(&layout), s);
        }

        #[test]
        fn frobenius_preserves_term_count(a in arb_poly_fp(3), e in 1u32..3) {
            let pe = 3u32.pow(e);
            prop_assert_eq!(a.power(pe).term_count(), a.term_count());
        }

        #[test]
        fn homogeneous_scaling(seed in any::<u64>(), d in 1u32..4) {
            let f = PrimeField::new(32003).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mons = monomials_of_degree(3, d);
            let poly = Polynomial::from_terms(&f, 3, mons.iter().map(|m| (f.random_elem(&mut rng, 0), m.clone())));
            let v: Vec<u32> = (0..3).map(|_| f.random_elem(&mut rng, 0)).collect();
            let lam = f.random_elem(&mut rng, 0);
            let scaled: Vec<u32> = v.iter().map(|x| f.mul(x, &lam)).collect();
            prop_assert_eq!(
                poly.evaluate(&scaled).unwrap(),
                f.mul(&f.pow(&lam, d as u64), &poly.evaluate(&v).unwrap())
            );
        }
    }
}

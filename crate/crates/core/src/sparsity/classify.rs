//! Shapes of minimal elements, shortest binomials and the linear-subspace check.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{sparsest_with_source, Grading, Method, SearchOptions, Verdict};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, max_slice_cells, slice_from_generators};
use crate::ideal::{Family, IdealSpec, IndexSet};
use crate::poly::{monomials_of_degree, Monomial, Polynomial, VarLayout};
use crate::sampler::{random_subspace, seeded_rng, SampleSource};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    MonomialTimesPowerOfMinor,
    MonomialTimesPowerOfPfaffian,
    MonomialTimesPowerOfLinear,
    Rank1Binomial,
    Unclassified,
}

/// `f = scalar * unit_monomial * core^(p^frobenius_e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalityClassification<F: Field> {
    pub shape: Shape,
    pub frobenius_e: u32,
    pub unit_monomial: Monomial,
    pub core_indices: Vec<IndexSet>,
    pub core: Polynomial<F>,
    pub scalar: F::Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDoc {
    pub shape: Shape,
    pub frobenius_e: u32,
    pub unit_monomial: String,
    pub core_indices: Vec<Vec<usize>>,
    pub core: String,
}

impl<F: Field> MinimalityClassification<F> {
    pub fn reconstruct(&self) -> Polynomial<F> {
        let p = self.core.field().char_exponent() as u32;
        self.core.power(p.pow(self.frobenius_e)).mul_term(&self.scalar, &self.unit_monomial)
    }

    pub fn to_doc(&self, layout: &VarLayout) -> ClassificationDoc {
        let f = self.core.field();
        ClassificationDoc {
            shape: self.shape,
            frobenius_e: self.frobenius_e,
            unit_monomial: Polynomial::monomial(f, self.core.nvars(), f.one(), self.unit_monomial.clone()).to_text(layout),
            core_indices: self.core_indices.iter().map(|s| s.as_slice().to_vec()).collect(),
            core: self.core.to_text(layout),
        }
    }
}

/// Largest `e` with `p^e` dividing every exponent of `f`, and the
/// `p^e`-th root of `f`.
fn frobenius_root<F: Field>(f: &Polynomial<F>) -> (u32, Polynomial<F>) {
    let p = f.field().char_exponent() as u32;
    if p <= 1 {
        return (0, f.clone());
    }
    let mut e = 0;
    let mut q = 1u32;
    while f.monomials().all(|m| m.iter().all(|(_, x)| x % (q * p) == 0)) && f.degree().unwrap_or(0) > 0 {
        e += 1;
        q *= p;
    }
    let root = Polynomial::from_terms(
        f.field(),
        f.nvars(),
        f.terms().iter().map(|t| {
            let c = inverse_frobenius(f.field(), &t.coeff, e);
            (c, Monomial::from_pairs(t.monomial.iter().map(|(v, x)| (v, x / q))))
        }),
    );
    (e, root)
}

/// The unique `b` with `b^(p^e) = a` in a finite field of size `p^k`,
/// namely `a^(p^(k-1))` applied `e` times.
fn inverse_frobenius<F: Field>(field: &F, a: &F::Elem, e: u32) -> F::Elem {
    let p = field.char_exponent();
    let Some(size) = field.size() else { return a.clone() };
    let mut step = 1u64;
    while step * p < size {
        step *= p;
    }
    (0..e).fold(a.clone(), |b, _| field.pow(&b, step))
}

/// Matches a nonzero `f` against the shapes of minimal elements: a
/// rank-one binomial (2-minors), a monomial times a `p^e`-th power of a
/// generator, or of a vanishing linear form.
pub fn classify_minimal<F: Field>(f: &Polynomial<F>, spec: &IdealSpec<F>) -> Result<MinimalityClassification<F>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = spec.field();
    let u = f.monomial_content();
    let rest = f.div_monomial(&u).expect("content divides");
    let (e, root) = frobenius_root(&rest);
    let root_monic = root.monic();
    let labelled = spec.labelled_generators();
    let matched = labelled.iter().find(|(_, g)| g.monic() == root_monic);
    let build = |shape, core_indices: Vec<IndexSet>, core: Polynomial<F>| {
        let lead = core.power((field.char_exponent() as u32).pow(e)).terms()[0].coeff.clone();
        let scalar = field.div(&rest.terms()[0].coeff, &lead).expect("nonzero");
        MinimalityClassification { shape, frobenius_e: e, unit_monomial: u.clone(), core_indices, core, scalar }
    };

    if spec.family() == Family::Minors && spec.t() == 2 && f.term_count() == 2 {
        let grading = Grading::for_spec(spec);
        let keys: Vec<Vec<u32>> = f.monomials().map(|m| grading.key(spec.layout(), m)).collect();
        let sum = field.add(&f.terms()[0].coeff, &f.terms()[1].coeff);
        if keys[0] == keys[1] && field.is_zero(&sum) {
            let idx = matched.map(|(i, _)| i.clone()).unwrap_or_default();
            return Ok(build(Shape::Rank1Binomial, idx, root.clone()));
        }
    }
    if let Some((idx, g)) = matched {
        let shape = match spec.family() {
            Family::Pfaffians => Shape::MonomialTimesPowerOfPfaffian,
            Family::Minors => Shape::MonomialTimesPowerOfMinor,
            Family::Explicit => Shape::Unclassified,
        };
        if shape != Shape::Unclassified {
            return Ok(build(shape, idx.clone(), g.clone()));
        }
    }
    if root.degree() == Some(1) && slice_from_generators(&spec.generators(), 1)?.contains(&root) {
        return Ok(build(Shape::MonomialTimesPowerOfLinear, vec![], root));
    }
    Ok(build(Shape::Unclassified, vec![], root))
}

/// The lowest degree `d <= d_max` containing a binomial `c1 m1 + c2 m2` of
/// the ideal: two monomials whose normal forms are proportional.
pub fn shortest_binomial<F: Field>(spec: &IdealSpec<F>, d_max: u32) -> Result<Option<(u32, Polynomial<F>)>> {
    let field = spec.field();
    let nvars = spec.nvars();
    let gb = buchberger(&spec.generators(), &spec.natural_order())?;
    for d in 1..=d_max {
        let monos = monomials_of_degree(nvars, d);
        if monos.len() > max_slice_cells() {
            return Err(Error::ResourceCap(format!("{} monomials in degree {d}", monos.len())));
        }
        let mut groups: HashMap<Polynomial<F>, (Monomial, F::Elem)> = HashMap::new();
        for m in monos {
            let nf = gb.normal_form(&Polynomial::monomial(field, nvars, field.one(), m.clone()));
            let c = nf.terms().first().map(|t| t.coeff.clone()).unwrap_or_else(|| field.zero());
            let key = nf.monic();
            if let Some((m1, c1)) = groups.get(&key) {
                let w = if field.is_zero(&c) {
                    Polynomial::from_terms(field, nvars, [(field.one(), m1.clone()), (field.neg(&field.one()), m)])
                } else {
                    // c * m1 - c1 * m
                    Polynomial::from_terms(field, nvars, [(c.clone(), m1.clone()), (field.neg(c1), m)])
                };
                return Ok(Some((d, w.normalized())));
            }
            groups.insert(key, (m, c));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropLinearDegree {
    pub degree: u32,
    pub minimum: Option<usize>,
    pub witnesses: usize,
    pub linear_shape: usize,
    pub frobenius_e: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub other_shapes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropLinearReport {
    pub n: usize,
    pub r: usize,
    pub d_max: u32,
    pub p: u64,
    pub seed: u64,
    pub vanishing_forms: Vec<String>,
    pub degrees: Vec<PropLinearDegree>,
    pub violations: Vec<String>,
}

impl PropLinearReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Draws a general `r`-dimensional subspace `U` of `K^n`, searches the
/// ideal of `U` degree by degree for elements with at most `r + 1` terms
/// and classifies every orbit-representative witness. The minimum must be
/// `r + 1`; for `r != 1` every witness must be a monomial times a
/// `p^e`-th power of a vanishing linear form.
pub fn verify_prop_linear<F: Field>(n: usize, r: usize, d_max: u32, field: &F, seed: u64) -> Result<PropLinearReport> {
    if r >= n {
        return Err(Error::OutOfRange(format!("need r < n, got r = {r}, n = {n}")));
    }
    let mut rng = seeded_rng(seed, 0x5542);
    let u = random_subspace(field, n, r, &mut rng)?;
    let layout = VarLayout::Plain(n);
    let forms = u.vanishing_linear_forms(field);
    let spec = IdealSpec::explicit(field, layout, forms.clone())?;
    let source = SampleSource::Subspace(u);
    let mut report = PropLinearReport {
        n,
        r,
        d_max,
        p: field.characteristic(),
        seed,
        vanishing_forms: forms.iter().map(|f| f.to_text(&layout)).collect(),
        degrees: vec![],
        violations: vec![],
    };
    for d in 1..=d_max {
        let opts = SearchOptions { d_min: d, seed, symmetry: false, collect_all: true, timing: false };
        let cert = sparsest_with_source(&spec, Some(&source), d, r + 1, Method::ExactSlice, &opts)?;
        if cert.verdict == Verdict::ResourceCap {
            return Err(Error::ResourceCap(cert.log.error.unwrap_or_default()));
        }
        let minimum = (cert.verdict == Verdict::Found).then_some(cert.k).flatten();
        let mut row = PropLinearDegree {
            degree: d,
            minimum,
            witnesses: cert.witnesses.len(),
            linear_shape: 0,
            frobenius_e: vec![],
            other_shapes: vec![],
        };
        let mut es = BTreeSet::new();
        for w in &cert.witnesses {
            let c = classify_minimal(w, &spec)?;
            if c.reconstruct() != *w {
                return Err(Error::Internal(format!("classification of {w} does not reconstruct it")));
            }
            if c.shape == Shape::MonomialTimesPowerOfLinear && c.core.term_count() == r + 1 {
                row.linear_shape += 1;
                es.insert(c.frobenius_e);
            } else {
                row.other_shapes.push(w.to_text(&layout));
            }
        }
        row.frobenius_e = es.into_iter().collect();
        if minimum != Some(r + 1) {
            report.violations.push(format!("degree {d}: minimum {minimum:?}, expected {} (seed {seed})", r + 1));
        }
        if r != 1 && !row.other_shapes.is_empty() {
            report.violations.push(format!(
                "degree {d}: {} witnesses of another shape, e.g. {} (seed {seed})",
                row.other_shapes.len(),
                row.other_shapes[0]
            ));
        }
        report.degrees.push(row);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::VariableMatrix;
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn term_times_determinant() {
        let f = fp();
        let spec = IdealSpec::minors(&f, VariableMatrix::generic(3, 3), 3).unwrap();
        let det = spec.generators()[0].clone();
        let u = Monomial::var_pow(1, 3);
        let g = det.mul_term(&f.from_i64(-5), &u);
        let c = classify_minimal(&g, &spec).unwrap();
        assert_eq!(c.shape, Shape::MonomialTimesPowerOfMinor);
        assert_eq!((c.frobenius_e, &c.unit_monomial), (0, &u));
        assert_eq!(c.core_indices, vec![IndexSet::range(3), IndexSet::range(3)]);
        assert_eq!(c.reconstruct(), g);
    }

    #[test]
    fn squared_minor_in_characteristic_two() {
        let f2 = PrimeField::new(2).unwrap();
        let spec = IdealSpec::minors(&f2, VariableMatrix::generic(2, 2), 2).unwrap();
        let sq = spec.generators()[0].power(2);
        assert_eq!(sq.term_count(), 2);
        let big = IdealSpec::minors(&f2, VariableMatrix::generic(3, 3), 2).unwrap();
        let c = classify_minimal(&sq, &big).unwrap();
        assert_eq!(c.frobenius_e, 1);
        assert_eq!(c.reconstruct(), sq);
        let spec3 = IdealSpec::minors(&f2, VariableMatrix::generic(3, 3), 3).unwrap();
        let sq3 = spec3.generators()[0].power(2);
        let c = classify_minimal(&sq3, &spec3).unwrap();
        assert_eq!((c.shape, c.frobenius_e), (Shape::MonomialTimesPowerOfMinor, 1));
    }

    #[test]
    fn rank_one_binomials() {
        let spec = IdealSpec::minors(&Rationals, VariableMatrix::generic(2, 2), 2).unwrap();
        let layout = *spec.layout();
        let g = Polynomial::parse(&Rationals, &layout, "x(1,1)*x(2,2) - x(1,2)*x(2,1)").unwrap();
        let c = classify_minimal(&g, &spec).unwrap();
        assert_eq!(c.shape, Shape::Rank1Binomial);
        assert_eq!(c.reconstruct(), g);
        let spec23 = IdealSpec::minors(&Rationals, VariableMatrix::generic(2, 3), 2).unwrap();
        let layout = *spec23.layout();
        let h = Polynomial::parse(&Rationals, &layout, "x(1,1)^2*x(2,2)*x(2,3) - x(1,2)*x(1,3)*x(2,1)^2").unwrap();
        assert_eq!(classify_minimal(&h, &spec23).unwrap().shape, Shape::Rank1Binomial);
        let odd = Polynomial::parse(&Rationals, &layout, "x(1,1)*x(2,2) - x(1,1)*x(2,3)").unwrap();
        assert_eq!(classify_minimal(&odd, &spec23).unwrap().shape, Shape::Unclassified);
    }

    #[test]
    fn pfaffian_times_term() {
        let f = fp();
        let spec = IdealSpec::pfaffians(&f, VariableMatrix::skew(5), 4).unwrap();
        let (idx, pf) = spec.labelled_generators()[2].clone();
        let g = pf.mul_term(&f.from_i64(3), &Monomial::var(4));
        let c = classify_minimal(&g, &spec).unwrap();
        assert_eq!(c.shape, Shape::MonomialTimesPowerOfPfaffian);
        assert_eq!(c.core_indices, idx);
        assert_eq!(c.reconstruct(), g);
    }

    fn i_n(n: i64) -> IdealSpec<Rationals> {
        let layout = VarLayout::Plain(3);
        let gens = vec![
            Polynomial::parse(&Rationals, &layout, "x(1)^2 - 2*x(1)*x(3) + x(3)^2").unwrap(),
            Polynomial::parse(&Rationals, &layout, &format!("{n}*x(1) - x(2) - {}*x(3)", n - 1)).unwrap(),
        ];
        IdealSpec::explicit(&Rationals, layout, gens).unwrap()
    }

    #[test]
    fn binomials_of_the_family_example() {
        for n in 2..=5u32 {
            let spec = i_n(n as i64);
            let (d, w) = shortest_binomial(&spec, n).unwrap().unwrap();
            assert_eq!(d, n);
            let expected = Polynomial::parse(&Rationals, spec.layout(), &format!("x(1)^{n} - x(2)*x(3)^{}", n - 1)).unwrap();
            assert_eq!(w, expected.normalized());
            assert!(shortest_binomial(&spec, n - 1).unwrap().is_none());
        }
        let spec = IdealSpec::minors(&Rationals, VariableMatrix::generic(2, 2), 2).unwrap();
        let (d, w) = shortest_binomial(&spec, 2).unwrap().unwrap();
        assert_eq!(d, 2);
        assert_eq!(w, spec.generators()[0].normalized());
    }

    #[test]
    fn linear_subspaces() {
        let rep = verify_prop_linear(4, 2, 2, &Rationals, 1).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        assert!(rep.degrees.iter().all(|d| d.minimum == Some(3) && d.frobenius_e == vec![0]));

        let rep = verify_prop_linear(3, 1, 2, &Rationals, 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        assert!(!rep.degrees[1].other_shapes.is_empty());

        let f2 = PrimeField::new(2).unwrap();
        let rep = verify_prop_linear(3, 2, 2, &f2, 3).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        assert_eq!(rep.degrees[1].frobenius_e, vec![0, 1]);
        assert!(matches!(verify_prop_linear(4, 2, 2, &f2, 3), Err(Error::DegenerateSubspace(_))));
    }

    #[test]
    fn frobenius_roots_over_extensions() {
        let gf = crate::field::GaloisField::new(3, 4).unwrap();
        let layout = VarLayout::Plain(3);
        let mut rng = seeded_rng(4, 0);
        let c: Vec<u32> = (0..3).map(|_| gf.random_elem(&mut rng, 0).max(5)).collect();
        let l = Polynomial::from_terms(&gf, 3, (0..3).map(|j| (c[j], Monomial::var(j))));
        let spec = IdealSpec::explicit(&gf, layout, vec![l.clone()]).unwrap();
        let cube = l.power(3).mul_term(&7, &Monomial::var(1));
        assert_eq!(cube.term_count(), 3);
        let cl = classify_minimal(&cube, &spec).unwrap();
        assert_eq!((cl.shape, cl.frobenius_e), (Shape::MonomialTimesPowerOfLinear, 1));
        assert_eq!(cl.reconstruct(), cube);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn classification_reconstructs(seed in any::<u64>(), e in 0u32..2, unit in 0usize..12) {
            use rand::Rng;
            let f = PrimeField::new(3).unwrap();
            let spec = IdealSpec::minors(&f, VariableMatrix::generic(3, 4), 3).unwrap();
            let gens = spec.generators();
            let mut rng = seeded_rng(seed, 0);
            let g = &gens[rng.random_range(0..gens.len())];
            let c0 = f.from_i64(if rng.random_bool(0.5) { 1 } else { 2 });
            let poly = g.power(3u32.pow(e)).mul_term(&c0, &Monomial::var(unit));
            let c = classify_minimal(&poly, &spec).unwrap();
            prop_assert_eq!(c.shape, Shape::MonomialTimesPowerOfMinor);
            prop_assert_eq!(c.frobenius_e, e);
            prop_assert_eq!(c.reconstruct(), poly);
        }
    }
}

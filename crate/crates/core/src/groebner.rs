//! Buchberger's algorithm, normal forms and homogeneous degree slices.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rref, Matrix};
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder, Polynomial, Term};

/// Hard cap on the degree of a slice.
pub const MAX_SLICE_DEGREE: u32 = 12;

/// Default cap on `rows * cols` of a slice matrix.
pub const DEFAULT_MAX_CELLS: usize = 5_000_000;

/// The slice cell cap, overridable through `SPARSEST_MAX_CELLS`.
pub fn max_slice_cells() -> usize {
    std::env::var("SPARSEST_MAX_CELLS").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_CELLS)
}

#[derive(Clone, Copy, Debug)]
pub struct BuchbergerOptions {
    pub max_basis: usize,
    pub max_pairs: usize,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        BuchbergerOptions { max_basis: 2_000, max_pairs: 500_000 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct BuchbergerStats {
    pub pairs: usize,
    pub coprime_skipped: usize,
    pub zero_reductions: usize,
    pub nonzero_reductions: usize,
}

/// A reduced Gröbner basis: inter-reduced, each element scaled so its
/// leading coefficient is 1 (primitive integral with positive leading
/// coefficient over ℚ).
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    order: MonomialOrder,
    elements: Vec<Polynomial<F>>,
    leading: Vec<Term<F::Elem>>,
    stats: BuchbergerStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.leading.iter().map(|t| &t.monomial)
    }

    pub fn stats(&self) -> BuchbergerStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.elements.iter().all(|g| g.is_homogeneous())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        reduce(f, &self.elements, &self.leading, &self.order)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Basis of the degree-`d` part of the ideal.
    pub fn homogeneous_slice(&self, d: u32) -> Result<DegreeSliceBasis<F>> {
        slice_from_generators(&self.elements, d)
    }
}

/// Scales `f` into the normal form described on [`GroebnerBasis`].
fn normalize_wrt<F: Field>(f: &Polynomial<F>, order: &MonomialOrder) -> Polynomial<F> {
    let Ok(lt) = f.leading_term(order) else { return f.clone() };
    let coeffs: Vec<F::Elem> =
        std::iter::once(lt.coeff.clone()).chain(f.terms().iter().map(|t| t.coeff.clone())).collect();
    f.scale(&f.field().normalizer(&coeffs))
}

fn find_reducer<'a, E>(m: &Monomial, leading: &'a [Term<E>]) -> Option<(usize, &'a Term<E>)> {
    leading.iter().enumerate().find(|(_, t)| t.monomial.divides(m))
}

/// Full reduction of `f` modulo `basis` (with precomputed leading terms).
fn reduce<F: Field>(
    f: &Polynomial<F>,
    basis: &[Polynomial<F>],
    leading: &[Term<F::Elem>],
    order: &MonomialOrder,
) -> Polynomial<F> {
    let field = f.field();
    let mut p = f.clone();
    let mut rest: Vec<Term<F::Elem>> = Vec::new();
    while let Ok(lt) = p.leading_term(order) {
        let lt = lt.clone();
        match find_reducer(&lt.monomial, leading) {
            Some((i, g)) => {
                let q = lt.monomial.checked_div(&g.monomial).expect("divisible");
                let c = field.div(&lt.coeff, &g.coeff).expect("nonzero leading coefficient");
                p = &p - &basis[i].mul_term(&c, &q);
            }
            None => {
                p = &p - &Polynomial::monomial(field, p.nvars(), lt.coeff.clone(), lt.monomial.clone());
                rest.push(lt);
            }
        }
    }
    Polynomial::from_terms(field, f.nvars(), rest.into_iter().map(|t| (t.coeff, t.monomial)))
}

pub fn buchberger<F: Field>(gens: &[Polynomial<F>], order: &MonomialOrder) -> Result<GroebnerBasis<F>> {
    buchberger_with(gens, order, BuchbergerOptions::default())
}

pub fn buchberger_with<F: Field>(
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
    options: BuchbergerOptions,
) -> Result<GroebnerBasis<F>> {
    let mut stats = BuchbergerStats::default();
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok(GroebnerBasis { order: order.clone(), elements: vec![], leading: vec![], stats });
    };
    for g in gens {
        if g.field() != first.field() {
            return Err(Error::FieldMismatch("generators over different fields".into()));
        }
        if g.nvars() != first.nvars() {
            return Err(Error::VariableMismatch { left: first.nvars(), right: g.nvars() });
        }
    }

    let mut basis: Vec<Polynomial<F>> = Vec::new();
    let mut leading: Vec<Term<F::Elem>> = Vec::new();
    // pending pairs ordered by (lcm degree, j, i): the normal selection strategy
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let push = |g: Polynomial<F>,
                    basis: &mut Vec<Polynomial<F>>,
                    leading: &mut Vec<Term<F::Elem>>,
                    pairs: &mut BTreeSet<(u32, usize, usize)>| {
        let g = normalize_wrt(&g, order);
        let lt = g.leading_term(order).expect("nonzero").clone();
        let j = basis.len();
        for (i, t) in leading.iter().enumerate() {
            pairs.insert((t.monomial.lcm(&lt.monomial).degree(), j, i));
        }
        basis.push(g);
        leading.push(lt);
    };

    for g in gens.iter().filter(|g| !g.is_zero()) {
        push(g.clone(), &mut basis, &mut leading, &mut pairs);
    }

    while let Some(pair) = pairs.pop_first() {
        let (_, j, i) = pair;
        stats.pairs += 1;
        if stats.pairs > options.max_pairs {
            return Err(Error::ResourceCap(format!("more than {} critical pairs", options.max_pairs)));
        }
        let (ti, tj) = (&leading[i], &leading[j]);
        if ti.monomial.is_coprime(&tj.monomial) {
            stats.coprime_skipped += 1;
            continue;
        }
        let field = basis[i].field().clone();
        let l = ti.monomial.lcm(&tj.monomial);
        let si = basis[i].mul_term(&field.inv(&ti.coeff).expect("nonzero"), &l.checked_div(&ti.monomial).expect("lcm"));
        let sj = basis[j].mul_term(&field.inv(&tj.coeff).expect("nonzero"), &l.checked_div(&tj.monomial).expect("lcm"));
        let s = &si - &sj;
        let r = reduce(&s, &basis, &leading, order);
        if r.is_zero() {
            stats.zero_reductions += 1;
        } else {
            stats.nonzero_reductions += 1;
            if basis.len() >= options.max_basis {
                return Err(Error::ResourceCap(format!("basis grew past {} elements", options.max_basis)));
            }
            push(r, &mut basis, &mut leading, &mut pairs);
        }
    }

    // minimalize: drop elements whose leading monomial is divisible by
    // another's (keeping the earliest among equal ones)
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| {
                j != i
                    && leading[j].monomial.divides(&leading[i].monomial)
                    && (leading[j].monomial != leading[i].monomial || j < i)
            })
        })
        .collect();
    let min_basis: Vec<Polynomial<F>> = keep.iter().map(|&i| basis[i].clone()).collect();
    let min_leading: Vec<Term<F::Elem>> = keep.iter().map(|&i| leading[i].clone()).collect();

    // inter-reduce the tails
    let mut elements = Vec::with_capacity(min_basis.len());
    for (k, g) in min_basis.iter().enumerate() {
        let others: Vec<Polynomial<F>> =
            min_basis.iter().enumerate().filter(|&(o, _)| o != k).map(|(_, p)| p.clone()).collect();
        let others_lt: Vec<Term<F::Elem>> =
            min_leading.iter().enumerate().filter(|&(o, _)| o != k).map(|(_, t)| t.clone()).collect();
        let lt = &min_leading[k];
        let head = Polynomial::monomial(g.field(), g.nvars(), lt.coeff.clone(), lt.monomial.clone());
        let tail = reduce(&(g - &head), &others, &others_lt, order);
        elements.push(normalize_wrt(&(&head + &tail), order));
    }
    elements.sort_by(|a, b| {
        let (la, lb) = (a.leading_term(order).expect("nonzero"), b.leading_term(order).expect("nonzero"));
        order.compare(&lb.monomial, &la.monomial)
    });
    let leading = elements.iter().map(|g| g.leading_term(order).expect("nonzero").clone()).collect();
    Ok(GroebnerBasis { order: order.clone(), elements, leading, stats })
}

pub fn normal_form<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Polynomial<F> {
    gb.normal_form(f)
}

pub fn ideal_member<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> bool {
    gb.contains(f)
}

/// Exact basis of a degree-`d` piece `I_d` of a homogeneous ideal: the
/// monomials of degree `d` (descending canonical order) and the nonzero rows
/// of the reduced row echelon form of the coefficient matrix of `I_d`.
#[derive(Clone, Debug)]
pub struct DegreeSliceBasis<F: Field> {
    field: F,
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    rows: Matrix<F::Elem>,
    pivots: Vec<usize>,
}

impl<F: Field> DegreeSliceBasis<F> {
    /// Row-reduces the span of `spanning` (polynomials supported on
    /// `monomials`, which must be sorted in descending canonical order).
    pub fn from_spanning(
        field: &F,
        nvars: usize,
        degree: u32,
        monomials: Vec<Monomial>,
        spanning: &[Polynomial<F>],
    ) -> Result<Self> {
        let cells = spanning.len().saturating_mul(monomials.len());
        let cap = max_slice_cells();
        if cells > cap {
            return Err(Error::ResourceCap(format!(
                "degree-{degree} slice needs {} x {} = {cells} cells (cap {cap})",
                spanning.len(),
                monomials.len()
            )));
        }
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = Matrix::filled(spanning.len(), monomials.len(), field.zero());
        for (r, p) in spanning.iter().enumerate() {
            for t in p.terms() {
                let c = *index.get(&t.monomial).ok_or_else(|| {
                    Error::Internal(format!("monomial {:?} outside the slice", t.monomial))
                })?;
                mat.set(r, c, t.coeff.clone());
            }
        }
        let pivots = rref(field, &mut mat);
        let rows = Matrix::from_fn(pivots.len(), monomials.len(), |i, j| mat.get(i, j).clone());
        Ok(DegreeSliceBasis { field: field.clone(), nvars, degree, monomials, index, rows, pivots })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn column(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn rows(&self) -> &Matrix<F::Elem> {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn element(&self, i: usize) -> Polynomial<F> {
        Polynomial::from_coefficients(&self.field, self.nvars, &self.monomials, self.rows.row(i))
    }

    pub fn elements(&self) -> Vec<Polynomial<F>> {
        (0..self.dim()).map(|i| self.element(i)).collect()
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coeffs: &[F::Elem]) -> Polynomial<F> {
        let f = &self.field;
        let mut dense = vec![f.zero(); self.monomials.len()];
        for (i, c) in coeffs.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
            for (j, v) in self.rows.row(i).iter().enumerate() {
                dense[j] = f.add(&dense[j], &f.mul(c, v));
            }
        }
        Polynomial::from_coefficients(f, self.nvars, &self.monomials, &dense)
    }

    /// Exact membership of a degree-`d` form in the row space.
    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        let f = &self.field;
        let mut dense = vec![f.zero(); self.monomials.len()];
        for t in p.terms() {
            match self.index.get(&t.monomial) {
                Some(&c) => dense[c] = t.coeff.clone(),
                None => return false,
            }
        }
        // reduce against the RREF rows pivot by pivot
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = dense[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (j, v) in self.rows.row(r).iter().enumerate() {
                dense[j] = f.sub(&dense[j], &f.mul(&c, v));
            }
        }
        dense.iter().all(|c| f.is_zero(c))
    }
}

fn check_degree(d: u32) -> Result<()> {
    if d > MAX_SLICE_DEGREE {
        return Err(Error::ResourceCap(format!("degree {d} above the cap {MAX_SLICE_DEGREE}")));
    }
    Ok(())
}

/// `I_d` spanned by all products `m * g` with `deg(m * g) = d`; valid for
/// any homogeneous generating set.
pub fn slice_from_generators<F: Field>(gens: &[Polynomial<F>], d: u32) -> Result<DegreeSliceBasis<F>> {
    check_degree(d)?;
    let Some(first) = gens.first() else {
        return Err(Error::InvalidSpec("no generators".into()));
    };
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::NonHomogeneous);
    }
    let (field, nvars) = (first.field().clone(), first.nvars());
    let monomials = monomials_of_degree(nvars, d);
    let mut multipliers: HashMap<u32, Vec<Monomial>> = HashMap::new();
    let mut estimate = 0usize;
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.degree().expect("nonzero");
        if dg <= d {
            estimate += crate::poly::binomial((nvars + (d - dg) as usize - 1) as u64, (d - dg) as u64) as usize;
        }
    }
    let cap = max_slice_cells();
    if estimate.saturating_mul(monomials.len()) > cap {
        return Err(Error::ResourceCap(format!(
            "degree-{d} slice needs {estimate} x {} cells (cap {cap})",
            monomials.len()
        )));
    }
    let mut spanning = Vec::with_capacity(estimate);
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.degree().expect("nonzero");
        if dg > d {
            continue;
        }
        let ms = multipliers.entry(d - dg).or_insert_with(|| monomials_of_degree(nvars, d - dg));
        let one = field.one();
        spanning.extend(ms.iter().map(|m| g.mul_term(&one, m)));
    }
    DegreeSliceBasis::from_spanning(&field, nvars, d, monomials, &spanning)
}

pub fn homogeneous_slice<F: Field>(gb: &GroebnerBasis<F>, d: u32) -> Result<DegreeSliceBasis<F>> {
    if !gb.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    if gb.is_empty() {
        check_degree(d)?;
        return Err(Error::InvalidSpec("zero ideal".into()));
    }
    gb.homogeneous_slice(d)
}

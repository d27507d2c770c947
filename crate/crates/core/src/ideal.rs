//! Minors, Pfaffians and the ideals they generate.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor};
use crate::poly::{Entry, MatrixKind, Monomial, MonomialOrder, Polynomial, VarLayout, VariableMatrix};

/// A strictly increasing list of 1-based row or column indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first() == Some(&0) || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OutOfRange(format!("{indices:?} is not an increasing list of 1-based indices")));
        }
        Ok(IndexSet(indices))
    }

    pub fn range(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }

    /// All `t`-subsets of `{1..n}` in lexicographic order.
    pub fn subsets(n: usize, t: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        if t > n {
            return out;
        }
        let mut cur: Vec<usize> = (1..=t).collect();
        loop {
            out.push(IndexSet(cur.clone()));
            let Some(i) = (0..t).rev().find(|&i| cur[i] < n - (t - 1 - i)) else { break };
            cur[i] += 1;
            for k in i + 1..t {
                cur[k] = cur[k - 1] + 1;
            }
        }
        out
    }

    pub fn without(&self, drop: &[usize]) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|i| !drop.contains(i)).collect())
    }
}

impl std::fmt::Display for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Signed product of matrix entries at 0-based positions, or `None` when
/// some entry is a structural zero.
fn entry_product(x: &VariableMatrix, cells: impl IntoIterator<Item = (usize, usize)>) -> Option<(Monomial, bool)> {
    let mut negative = false;
    let mut vars = Vec::new();
    for (i, j) in cells {
        match x.entry(i, j) {
            Entry::Zero => return None,
            Entry::Var { var, negated } => {
                negative ^= negated;
                vars.push((var, 1));
            }
        }
    }
    Some((Monomial::from_pairs(vars), negative))
}

fn check_bounds(x: &VariableMatrix, rows: &IndexSet, cols: &IndexSet) -> Result<()> {
    if rows.max() > x.m || cols.max() > x.n {
        return Err(Error::OutOfRange(format!("index set {rows} x {cols} outside a {}x{} matrix", x.m, x.n)));
    }
    Ok(())
}

/// Permutations of `0..t` with their parity, in lexicographic order.
pub fn permutations_with_sign(t: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..t).collect();
    let mut odd = false;
    loop {
        out.push((perm.clone(), odd));
        // next lexicographic permutation; parity flips with each swap
        let Some(i) = (0..t.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..t).rev().find(|&j| perm[j] > perm[i]).expect("successor exists");
        perm.swap(i, j);
        odd = !odd;
        let tail = t - i - 1;
        perm[i + 1..].reverse();
        if (tail / 2) % 2 == 1 {
            odd = !odd;
        }
    }
    out
}

/// `det x[I,J]` by the Leibniz formula.
pub fn minor<F: Field>(field: &F, x: &VariableMatrix, rows: &IndexSet, cols: &IndexSet) -> Result<Polynomial<F>> {
    if rows.len() != cols.len() {
        return Err(Error::DimensionMismatch { expected: rows.len(), got: cols.len() });
    }
    check_bounds(x, rows, cols)?;
    let (r, c) = (rows.as_slice(), cols.as_slice());
    let t = r.len();
    let terms = permutations_with_sign(t).into_iter().filter_map(|(sigma, odd)| {
        let (m, neg) = entry_product(x, (0..t).map(|a| (r[a] - 1, c[sigma[a]] - 1)))?;
        Some((field.from_i64(if odd ^ neg { -1 } else { 1 }), m))
    });
    Ok(Polynomial::from_terms(field, x.nvars(), terms))
}

/// Sign convention used when expanding Pfaffians.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PfaffianConvention {
    /// Sign of the matching `{(a1,b1),(a2,b2),..}` is the parity of the
    /// permutation `(a1 b1 a2 b2 ..)`.
    #[default]
    Standard,
    /// All matchings with sign +1. Deliberately wrong; used to check that
    /// the self-tests detect a broken expansion.
    Unsigned,
}

/// Perfect matchings of `0..k` (k even) as pair lists, with the sign of the
/// standard convention.
pub fn perfect_matchings(k: usize) -> Vec<(Vec<(usize, usize)>, bool)> {
    fn rec(rest: &[usize], cur: &mut Vec<(usize, usize)>, odd: bool, out: &mut Vec<(Vec<(usize, usize)>, bool)>) {
        if rest.is_empty() {
            out.push((cur.clone(), odd));
            return;
        }
        let a = rest[0];
        for l in 1..rest.len() {
            let remaining: Vec<usize> =
                rest[1..].iter().enumerate().filter(|&(i, _)| i + 1 != l).map(|(_, &v)| v).collect();
            cur.push((a, rest[l]));
            rec(&remaining, cur, odd ^ (l % 2 == 0), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k.is_multiple_of(2) {
        rec(&(0..k).collect::<Vec<_>>(), &mut Vec::new(), false, &mut out);
    }
    out
}

/// The Pfaffian of the principal submatrix `x[J,J]` of a skew matrix.
pub fn pfaffian<F: Field>(field: &F, x: &VariableMatrix, set: &IndexSet) -> Result<Polynomial<F>> {
    pfaffian_with(field, x, set, PfaffianConvention::Standard)
}

pub fn pfaffian_with<F: Field>(
    field: &F,
    x: &VariableMatrix,
    set: &IndexSet,
    convention: PfaffianConvention,
) -> Result<Polynomial<F>> {
    if x.kind != MatrixKind::Skew {
        return Err(Error::InvalidSpec("Pfaffians need a skew-symmetric matrix".into()));
    }
    if set.len() % 2 == 1 {
        return Err(Error::InvalidSpec(format!("Pfaffian of odd index set {set}")));
    }
    check_bounds(x, set, set)?;
    let j = set.as_slice();
    let terms = perfect_matchings(j.len()).into_iter().filter_map(|(pairs, odd)| {
        let (m, neg) = entry_product(x, pairs.iter().map(|&(a, b)| (j[a] - 1, j[b] - 1)))?;
        let negative = match convention {
            PfaffianConvention::Standard => odd ^ neg,
            PfaffianConvention::Unsigned => false,
        };
        Some((field.from_i64(if negative { -1 } else { 1 }), m))
    });
    Ok(Polynomial::from_terms(field, x.nvars(), terms))
}

/// Checks `Pf(x[J,J])^2 == det(x[J,J])`.
pub fn pfaffian_squared_is_det<F: Field>(field: &F, x: &VariableMatrix, set: &IndexSet) -> Result<bool> {
    pfaffian_squared_is_det_with(field, x, set, PfaffianConvention::Standard)
}

pub fn pfaffian_squared_is_det_with<F: Field>(
    field: &F,
    x: &VariableMatrix,
    set: &IndexSet,
    convention: PfaffianConvention,
) -> Result<bool> {
    let pf = pfaffian_with(field, x, set, convention)?;
    Ok(pf.power(2) == minor(field, x, set, set)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Minors,
    Pfaffians,
    Explicit,
}

/// An ideal: `t`-minors or principal `t`-Pfaffians of a symbolic matrix, or
/// an explicit generator list.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealSpec<F: Field> {
    field: F,
    layout: VarLayout,
    family: Family,
    t: usize,
    explicit: Vec<Polynomial<F>>,
}

impl<F: Field> IdealSpec<F> {
    pub fn minors(field: &F, matrix: VariableMatrix, t: usize) -> Result<Self> {
        if t == 0 || t > matrix.m.min(matrix.n) {
            return Err(Error::InvalidSpec(format!(
                "minor size {t} does not fit a {}x{} matrix",
                matrix.m, matrix.n
            )));
        }
        Ok(IdealSpec { field: field.clone(), layout: VarLayout::Matrix(matrix), family: Family::Minors, t, explicit: vec![] })
    }

    pub fn pfaffians(field: &F, matrix: VariableMatrix, t: usize) -> Result<Self> {
        if matrix.kind != MatrixKind::Skew {
            return Err(Error::InvalidSpec("Pfaffians need a skew-symmetric matrix".into()));
        }
        if t == 0 || t % 2 == 1 || t > matrix.n {
            return Err(Error::InvalidSpec(format!("Pfaffian size {t} must be even and at most {}", matrix.n)));
        }
        Ok(IdealSpec { field: field.clone(), layout: VarLayout::Matrix(matrix), family: Family::Pfaffians, t, explicit: vec![] })
    }

    pub fn explicit(field: &F, layout: VarLayout, generators: Vec<Polynomial<F>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidSpec("explicit ideal without generators".into()));
        }
        for g in &generators {
            if g.is_zero() {
                return Err(Error::InvalidSpec("zero generator".into()));
            }
            if g.field() != field || g.nvars() != layout.nvars() {
                return Err(Error::InvalidSpec("generator over a different ring".into()));
            }
        }
        Ok(IdealSpec { field: field.clone(), layout, family: Family::Explicit, t: 0, explicit: generators })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn layout(&self) -> &VarLayout {
        &self.layout
    }

    pub fn matrix(&self) -> Option<&VariableMatrix> {
        self.layout.matrix()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn nvars(&self) -> usize {
        self.layout.nvars()
    }

    /// The rank bound `r` of the variety: `t - 1` for minors, `t - 2` for
    /// Pfaffians.
    pub fn rank_bound(&self) -> Option<usize> {
        match self.family {
            Family::Minors => Some(self.t - 1),
            Family::Pfaffians => Some(self.t - 2),
            Family::Explicit => None,
        }
    }

    /// Generators in lexicographic `(I, J)` order; zero and repeated
    /// minors (symmetric and skew matrices) are dropped.
    pub fn generators(&self) -> Vec<Polynomial<F>> {
        self.generators_over(&self.field, |c| c.clone())
    }

    /// Same generators with coefficients mapped into another field.
    pub fn generators_over<G: Field>(&self, target: &G, conv: impl Fn(&F::Elem) -> G::Elem) -> Vec<Polynomial<G>> {
        self.labelled_generators_over(target, conv).into_iter().map(|(_, g)| g).collect()
    }

    /// Generators with their index sets: `[I, J]` for minors, `[J]` for
    /// Pfaffians, none for explicit ideals.
    pub fn labelled_generators(&self) -> Vec<(Vec<IndexSet>, Polynomial<F>)> {
        self.labelled_generators_over(&self.field, |c| c.clone())
    }

    fn labelled_generators_over<G: Field>(
        &self,
        target: &G,
        conv: impl Fn(&F::Elem) -> G::Elem,
    ) -> Vec<(Vec<IndexSet>, Polynomial<G>)> {
        match self.family {
            Family::Explicit => self.explicit.iter().map(|g| (vec![], g.map_field(target, &conv))).collect(),
            Family::Minors => {
                let x = *self.matrix().expect("minors live on a matrix");
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                for rows in IndexSet::subsets(x.m, self.t) {
                    for cols in IndexSet::subsets(x.n, self.t) {
                        let g = minor(target, &x, &rows, &cols).expect("valid index sets");
                        if !g.is_zero() && seen.insert(g.clone()) {
                            out.push((vec![rows.clone(), cols], g));
                        }
                    }
                }
                out
            }
            Family::Pfaffians => {
                let x = *self.matrix().expect("Pfaffians live on a matrix");
                IndexSet::subsets(x.n, self.t)
                    .into_iter()
                    .map(|set| {
                        let g = pfaffian(target, &x, &set).expect("valid index set");
                        (vec![set], g)
                    })
                    .collect()
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.family != Family::Explicit || self.explicit.iter().all(|g| g.is_homogeneous())
    }

    /// The lex order under which minors (resp. Pfaffians) are a Gröbner
    /// basis; plain grevlex for other layouts.
    pub fn natural_order(&self) -> MonomialOrder {
        match self.matrix() {
            Some(x) if x.kind == MatrixKind::Generic => MonomialOrder::matrix_lex(x.m, x.n),
            Some(x) if x.kind == MatrixKind::Skew => MonomialOrder::skew_lex(x.n),
            _ => MonomialOrder::grevlex(self.nvars()),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.field.descriptor()
    }

    pub fn to_doc(&self) -> SpecDoc {
        let field = FieldDoc { p: self.field.characteristic() };
        match self.family {
            Family::Explicit => SpecDoc {
                matrix: self.matrix().map(MatrixDoc::from),
                family: Family::Explicit,
                t: None,
                field,
                nvars: if self.matrix().is_none() { Some(self.nvars()) } else { None },
                generators: Some(self.explicit.iter().map(|g| g.to_text(&self.layout)).collect()),
            },
            family => SpecDoc {
                matrix: self.matrix().map(MatrixDoc::from),
                family,
                t: Some(self.t),
                field,
                nvars: None,
                generators: None,
            },
        }
    }

    /// Builds a spec from its JSON document; the field must match the
    /// document's field.
    pub fn from_doc(field: &F, doc: &SpecDoc) -> Result<Self> {
        if doc.field.p != field.characteristic() {
            return Err(Error::FieldMismatch(format!(
                "document asks for p = {}, got {:?}",
                doc.field.p,
                field.descriptor()
            )));
        }
        let matrix = doc.matrix.as_ref().map(MatrixDoc::to_matrix).transpose()?;
        let need_t = || doc.t.ok_or_else(|| Error::InvalidSpec("missing \"t\"".into()));
        match doc.family {
            Family::Minors => {
                Self::minors(field, matrix.ok_or_else(|| Error::InvalidSpec("missing \"matrix\"".into()))?, need_t()?)
            }
            Family::Pfaffians => {
                Self::pfaffians(field, matrix.ok_or_else(|| Error::InvalidSpec("missing \"matrix\"".into()))?, need_t()?)
            }
            Family::Explicit => {
                let layout = match (matrix, doc.nvars) {
                    (Some(x), _) => VarLayout::Matrix(x),
                    (None, Some(n)) if n > 0 => VarLayout::Plain(n),
                    _ => return Err(Error::InvalidSpec("explicit ideal needs \"nvars\" or \"matrix\"".into())),
                };
                let texts = doc.generators.as_ref().ok_or_else(|| Error::InvalidSpec("missing \"generators\"".into()))?;
                let gens = texts.iter().map(|s| Polynomial::parse(field, &layout, s)).collect::<Result<Vec<_>>>()?;
                Self::explicit(field, layout, gens)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub kind: MatrixKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
}

impl MatrixDoc {
    pub fn to_matrix(&self) -> Result<VariableMatrix> {
        VariableMatrix::new(self.kind, self.m.unwrap_or(self.n), self.n)
    }
}

impl From<&VariableMatrix> for MatrixDoc {
    fn from(x: &VariableMatrix) -> Self {
        MatrixDoc { kind: x.kind, m: Some(x.m), n: x.n }
    }
}

/// JSON form of an ideal, e.g.
/// `{"matrix":{"kind":"generic","m":3,"n":3},"family":"minors","t":3,"field":{"p":32003}}`.
/// `"p": 0` selects the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDoc>,
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    pub field: FieldDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nvars: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
}

impl SpecDoc {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn field_descriptor(&self) -> Result<FieldDescriptor> {
        FieldDescriptor::from_p(self.field.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::Monomial;

    fn q() -> Rationals {
        Rationals
    }

    fn laplace(x: &VariableMatrix, rows: &[usize], cols: &[usize]) -> Polynomial<Rationals> {
        let f = q();
        let n = x.nvars();
        if rows.is_empty() {
            return Polynomial::one(&f, n);
        }
        let mut acc = Polynomial::zero(&f, n);
        for (k, &c) in cols.iter().enumerate() {
            let e = match x.entry(rows[0] - 1, c - 1) {
                Entry::Zero => continue,
                Entry::Var { var, negated } => {
                    let v = Polynomial::var(&f, n, var);
                    if negated { -&v } else { v }
                }
            };
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
            let term = &e * &laplace(x, &rows[1..], &sub_cols);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Pf = 1/(2^k k!) * sum over all permutations of sgn * prod a_{s(2i-1), s(2i)}.
    fn pfaffian_by_permutations(x: &VariableMatrix, set: &[usize]) -> Polynomial<Rationals> {
        let f = q();
        let n = x.nvars();
        let t = set.len();
        let mut acc = Polynomial::zero(&f, n);
        for (sigma, odd) in permutations_with_sign(t) {
            let mut term = Polynomial::constant(&f, n, f.from_i64(if odd { -1 } else { 1 }));
            for i in 0..t / 2 {
                let (a, b) = (set[sigma[2 * i]] - 1, set[sigma[2 * i + 1]] - 1);
                term = match x.entry(a, b) {
                    Entry::Zero => unreachable!(),
                    Entry::Var { var, negated } => {
                        let v = Polynomial::var(&f, n, var);
                        &term * &(if negated { -&v } else { v })
                    }
                };
            }
            acc = &acc + &term;
        }
        let k = (t / 2) as i64;
        let norm: i64 = (1..=k).product::<i64>() * (1i64 << k);
        acc.scale(&f.from_ratio(&1.into(), &norm.into()).unwrap())
    }

    #[test]
    fn permutation_parity_matches_inversions() {
        for t in 0..6 {
            let perms = permutations_with_sign(t);
            assert_eq!(perms.len(), (1..=t).product::<usize>().max(1));
            for (p, odd) in perms {
                let inv = (0..t).flat_map(|i| (i + 1..t).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                assert_eq!(inv % 2 == 1, odd, "{p:?}");
            }
        }
    }

    #[test]
    fn two_by_two_minor() {
        let x = VariableMatrix::generic(2, 2);
        let d = minor(&q(), &x, &IndexSet::range(2), &IndexSet::range(2)).unwrap();
        let layout = VarLayout::Matrix(x);
        assert_eq!(d, Polynomial::parse(&q(), &layout, "x(1,1)*x(2,2) - x(1,2)*x(2,1)").unwrap());
    }

    #[test]
    fn minor_term_counts_and_laplace() {
        for t in 1..=5 {
            let x = VariableMatrix::generic(t, t + 1);
            let cols = IndexSet::new((2..=t + 1).collect()).unwrap();
            let d = minor(&q(), &x, &IndexSet::range(t), &cols).unwrap();
            assert_eq!(d.term_count(), (1..=t).product::<usize>());
            assert_eq!(d, laplace(&x, IndexSet::range(t).as_slice(), cols.as_slice()));
        }
        let x = VariableMatrix::symmetric(4);
        let rows = IndexSet::new(vec![1, 2, 4]).unwrap();
        let cols = IndexSet::new(vec![2, 3, 4]).unwrap();
        assert_eq!(minor(&q(), &x, &rows, &cols).unwrap(), laplace(&x, rows.as_slice(), cols.as_slice()));
    }

    #[test]
    fn symmetric_principal_minor_has_five_terms() {
        let x = VariableMatrix::symmetric(3);
        let d = minor(&q(), &x, &IndexSet::range(3), &IndexSet::range(3)).unwrap();
        assert_eq!(d, laplace(&x, &[1, 2, 3], &[1, 2, 3]));
        assert_eq!(d.term_count(), 5);
    }

    #[test]
    fn minor_errors() {
        let x = VariableMatrix::generic(3, 3);
        assert!(minor(&q(), &x, &IndexSet::range(2), &IndexSet::range(3)).is_err());
        assert!(minor(&q(), &x, &IndexSet::range(4), &IndexSet::range(4)).is_err());
        assert!(IndexSet::new(vec![2, 1]).is_err());
    }

    #[test]
    fn pfaffian_small_cases() {
        let x = VariableMatrix::skew(4);
        let layout = VarLayout::Matrix(x);
        let two = pfaffian(&q(), &x, &IndexSet::new(vec![2, 4]).unwrap()).unwrap();
        assert_eq!(two, Polynomial::parse(&q(), &layout, "x(2,4)").unwrap());
        let four = pfaffian(&q(), &x, &IndexSet::range(4)).unwrap();
        assert_eq!(four, Polynomial::parse(&q(), &layout, "x(1,2)*x(3,4) - x(1,3)*x(2,4) + x(1,4)*x(2,3)").unwrap());
        assert!(pfaffian(&q(), &x, &IndexSet::range(3)).is_err());
        assert!(pfaffian(&q(), &VariableMatrix::generic(4, 4), &IndexSet::range(4)).is_err());
    }

    #[test]
    fn pfaffian_counts_and_oracle() {
        for (t, count) in [(2, 1), (4, 3), (6, 15), (8, 105)] {
            let x = VariableMatrix::skew(t);
            let pf = pfaffian(&q(), &x, &IndexSet::range(t)).unwrap();
            assert_eq!(pf.term_count(), count);
            if t <= 6 {
                assert_eq!(pf, pfaffian_by_permutations(&x, IndexSet::range(t).as_slice()));
            }
        }
        let x = VariableMatrix::skew(7);
        let set = IndexSet::new(vec![1, 2, 3, 4, 6, 7]).unwrap();
        assert_eq!(pfaffian(&q(), &x, &set).unwrap(), pfaffian_by_permutations(&x, set.as_slice()));
    }

    #[test]
    fn pfaffian_row_expansion() {
        let f = q();
        let x = VariableMatrix::skew(6);
        let set = IndexSet::range(6);
        let i = 1;
        let mut acc = Polynomial::zero(&f, x.nvars());
        for (l, &j) in set.as_slice().iter().enumerate().skip(1) {
            let Entry::Var { var, .. } = x.entry(i - 1, j - 1) else { unreachable!() };
            let rest = pfaffian(&f, &x, &set.without(&[i, j])).unwrap();
            let term = &Polynomial::var(&f, x.nvars(), var) * &rest;
            acc = if l % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        assert_eq!(acc, pfaffian(&f, &x, &set).unwrap());
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let x = VariableMatrix::skew(6);
        for t in [2, 4, 6] {
            for set in IndexSet::subsets(6, t) {
                assert!(pfaffian_squared_is_det(&q(), &x, &set).unwrap(), "{set}");
            }
        }
        let bad = pfaffian_squared_is_det_with(&q(), &x, &IndexSet::range(4), PfaffianConvention::Unsigned).unwrap();
        assert!(!bad);
    }

    #[test]
    fn generator_counts() {
        let f = PrimeField::new(32003).unwrap();
        let count = |spec: IdealSpec<PrimeField>| spec.generators().len();
        assert_eq!(count(IdealSpec::minors(&f, VariableMatrix::generic(3, 3), 3).unwrap()), 1);
        assert_eq!(count(IdealSpec::minors(&f, VariableMatrix::generic(3, 4), 3).unwrap()), 4);
        assert_eq!(count(IdealSpec::minors(&f, VariableMatrix::generic(3, 3), 2).unwrap()), 9);
        assert_eq!(count(IdealSpec::pfaffians(&f, VariableMatrix::skew(5), 4).unwrap()), 5);
        // symmetric 2-minors: 9 (I,J) pairs collapse to 6 distinct minors
        assert_eq!(count(IdealSpec::minors(&f, VariableMatrix::symmetric(3), 2).unwrap()), 6);
        assert!(IdealSpec::minors(&f, VariableMatrix::generic(3, 3), 4).is_err());
        assert!(IdealSpec::pfaffians(&f, VariableMatrix::skew(5), 3).is_err());
    }

    #[test]
    fn leading_terms_under_diagonal_orders() {
        let f = Rationals;
        let spec = IdealSpec::minors(&f, VariableMatrix::generic(2, 2), 2).unwrap();
        let lt = spec.generators()[0].leading_term(&spec.natural_order()).unwrap().clone();
        // anti-diagonal x(1,2)*x(2,1) with sign -1
        assert_eq!(lt.monomial, Monomial::from_pairs([(1, 1), (2, 1)]));
        assert_eq!(lt.coeff, f.from_i64(-1));
        let x = VariableMatrix::skew(6);
        let pf = pfaffian(&f, &x, &IndexSet::range(6)).unwrap();
        let lt = pf.leading_term(&MonomialOrder::skew_lex(6)).unwrap();
        let var = |i: usize, j: usize| match x.entry(i - 1, j - 1) {
            Entry::Var { var, .. } => (var, 1),
            Entry::Zero => unreachable!(),
        };
        assert_eq!(lt.monomial, Monomial::from_pairs([var(1, 6), var(2, 5), var(3, 4)]));
    }

    #[test]
    fn spec_documents() {
        let doc = SpecDoc::parse(r#"{"matrix":{"kind":"generic","m":3,"n":3},"family":"minors","t":3,"field":{"p":32003}}"#)
            .unwrap();
        let f = PrimeField::new(32003).unwrap();
        let spec = IdealSpec::from_doc(&f, &doc).unwrap();
        assert_eq!(spec.generators()[0].term_count(), 6);
        assert_eq!(spec.to_doc(), doc);
        let doc = SpecDoc::parse(
            r#"{"family":"explicit","nvars":3,"generators":["x(1)^2 - 2*x(1)*x(3) + x(3)^2","3*x(1) - x(2) - 2*x(3)"],"field":{"p":0}}"#,
        )
        .unwrap();
        let spec = IdealSpec::from_doc(&Rationals, &doc).unwrap();
        assert_eq!(spec.generators().len(), 2);
        assert!(spec.is_homogeneous());
        assert_eq!(IdealSpec::from_doc(&Rationals, &spec.to_doc()).unwrap(), spec);
        assert!(SpecDoc::parse(r#"{"family":"minors"}"#).is_err());
        assert!(IdealSpec::from_doc(&f, &doc).is_err());
    }
}

//! Multidegree cells of monomials and the symmetry groups acting on them.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{permutations_with_sign, Family, IdealSpec};
use crate::poly::{monomials_of_degree, Entry, MatrixKind, Monomial, Polynomial, VarLayout, VariableMatrix};

/// The torus grading used to split a degree into cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// A single cell per degree.
    Total,
    /// Row and column degrees of a generic matrix.
    RowCol { m: usize, n: usize },
    /// Index degrees of a symmetric or skew matrix: `x_ij` counts once for
    /// `i` and once for `j`.
    Index { n: usize },
}

impl Grading {
    pub fn for_layout(layout: &VarLayout) -> Self {
        match layout {
            VarLayout::Plain(_) => Grading::Total,
            VarLayout::Matrix(x) => match x.kind {
                MatrixKind::Generic => Grading::RowCol { m: x.m, n: x.n },
                MatrixKind::Symmetric | MatrixKind::Skew => Grading::Index { n: x.n },
            },
        }
    }

    /// Minors and Pfaffians are torus-homogeneous; explicit ideals are
    /// searched in a single cell per degree.
    pub fn for_spec<F: Field>(spec: &IdealSpec<F>) -> Self {
        match spec.family() {
            Family::Explicit => Grading::Total,
            _ => Self::for_layout(spec.layout()),
        }
    }

    fn key_len(&self) -> usize {
        match *self {
            Grading::Total => 0,
            Grading::RowCol { m, n } => m + n,
            Grading::Index { n } => n,
        }
    }

    /// Flat multidegree key of a monomial.
    pub fn key(&self, layout: &VarLayout, mono: &Monomial) -> Vec<u32> {
        let mut key = vec![0u32; self.key_len()];
        let Some(x) = layout.matrix() else { return key };
        match *self {
            Grading::Total => {}
            Grading::RowCol { m, .. } => {
                for (v, e) in mono.iter() {
                    let (i, j) = x.position(v);
                    key[i] += e;
                    key[m + j] += e;
                }
            }
            Grading::Index { .. } => {
                for (v, e) in mono.iter() {
                    let (i, j) = x.position(v);
                    key[i] += e;
                    key[j] += e;
                }
            }
        }
        key
    }

    pub fn multidegree(&self, key: &[u32]) -> Multidegree {
        match *self {
            Grading::RowCol { m, .. } => {
                Multidegree { row_degrees: key[..m].to_vec(), col_degrees: Some(key[m..].to_vec()) }
            }
            _ => Multidegree { row_degrees: key.to_vec(), col_degrees: None },
        }
    }

    /// Multidegree key of a polynomial, or `None` if it is not homogeneous
    /// for this grading.
    pub fn poly_key<F: Field>(&self, layout: &VarLayout, f: &Polynomial<F>) -> Option<Vec<u32>> {
        let mut keys = f.monomials().map(|m| (m.degree(), self.key(layout, m)));
        let first = keys.next()?;
        keys.all(|k| k == first).then_some(first.1)
    }
}

/// Row and column degrees of a monomial in matrix variables; for symmetric
/// and skew matrices (and plain variables) only `row_degrees` is used.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Multidegree {
    pub row_degrees: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_degrees: Option<Vec<u32>>,
}

/// A finite set of monomials of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Support {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
}

impl Support {
    pub fn new(monomials: Vec<Monomial>) -> Result<Self> {
        let Some(first) = monomials.first() else {
            return Err(Error::InvalidSpec("empty support".into()));
        };
        let degree = first.degree();
        if monomials.iter().any(|m| m.degree() != degree) {
            return Err(Error::InvalidSpec("support mixes degrees".into()));
        }
        let mut monomials = monomials;
        monomials.sort_by(|a, b| b.cmp(a));
        monomials.dedup();
        Ok(Support { degree, monomials })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// The monomials of one degree and one multidegree, in descending
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub degree: u32,
    pub key: Vec<u32>,
    pub multidegree: Multidegree,
    pub monomials: Vec<Monomial>,
}

impl Cell {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// All cells of degree `d` for a grading, sorted by size and then key.
pub fn cells_for(grading: Grading, layout: &VarLayout, d: u32) -> Vec<Cell> {
    let mut by_key: BTreeMap<Vec<u32>, Vec<Monomial>> = BTreeMap::new();
    for m in monomials_of_degree(layout.nvars(), d) {
        by_key.entry(grading.key(layout, &m)).or_default().push(m);
    }
    let mut cells: Vec<Cell> = by_key
        .into_iter()
        .map(|(key, monomials)| Cell { degree: d, multidegree: grading.multidegree(&key), key, monomials })
        .collect();
    cells.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.key.cmp(&b.key)));
    cells
}

/// Partition of the degree-`d` monomials by multidegree.
pub fn enumerate_multidegree_cells<F: Field>(spec: &IdealSpec<F>, d: u32) -> Result<Vec<Cell>> {
    match Grading::for_spec(spec) {
        Grading::Total => Err(Error::GradingNotApplicable("explicit ideals are not declared multigraded".into())),
        g => Ok(cells_for(g, spec.layout(), d)),
    }
}

/// A group of signed variable permutations `x_v -> ±x_{π(v)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    nvars: usize,
    elements: Vec<Vec<(usize, bool)>>,
    generators: Vec<Vec<(usize, bool)>>,
}

fn transposition(n: usize, i: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i, i + 1);
    p
}

impl SymmetryGroup {
    pub fn trivial(nvars: usize) -> Self {
        let id: Vec<(usize, bool)> = (0..nvars).map(|v| (v, false)).collect();
        SymmetryGroup { nvars, elements: vec![id], generators: vec![] }
    }

    fn matrix_map(x: &VariableMatrix, rows: &[usize], cols: &[usize], transpose: bool) -> Vec<(usize, bool)> {
        (0..x.nvars())
            .map(|v| {
                let (i, j) = x.position(v);
                let (a, b) = if transpose { (cols[j], rows[i]) } else { (rows[i], cols[j]) };
                match x.entry(a, b) {
                    Entry::Var { var, negated } => (var, negated),
                    Entry::Zero => unreachable!("permutations keep off-diagonal entries off the diagonal"),
                }
            })
            .collect()
    }

    /// Row and column permutations (and the transpose when square) for
    /// generic matrices; simultaneous index permutations for symmetric and
    /// skew matrices.
    pub fn for_matrix(x: &VariableMatrix) -> Self {
        let mut elements = Vec::new();
        let mut generators = Vec::new();
        match x.kind {
            MatrixKind::Generic => {
                let row_perms = permutations_with_sign(x.m);
                let col_perms = permutations_with_sign(x.n);
                let flips: &[bool] = if x.m == x.n { &[false, true] } else { &[false] };
                for &t in flips {
                    for (rp, _) in &row_perms {
                        for (cp, _) in &col_perms {
                            elements.push(Self::matrix_map(x, rp, cp, t));
                        }
                    }
                }
                let id_r: Vec<usize> = (0..x.m).collect();
                let id_c: Vec<usize> = (0..x.n).collect();
                for i in 0..x.m.saturating_sub(1) {
                    generators.push(Self::matrix_map(x, &transposition(x.m, i), &id_c, false));
                }
                for j in 0..x.n.saturating_sub(1) {
                    generators.push(Self::matrix_map(x, &id_r, &transposition(x.n, j), false));
                }
                if x.m == x.n {
                    generators.push(Self::matrix_map(x, &id_r, &id_c, true));
                }
            }
            MatrixKind::Symmetric | MatrixKind::Skew => {
                for (p, _) in permutations_with_sign(x.n) {
                    elements.push(Self::matrix_map(x, &p, &p, false));
                }
                for i in 0..x.n.saturating_sub(1) {
                    let t = transposition(x.n, i);
                    generators.push(Self::matrix_map(x, &t, &t, false));
                }
            }
        }
        SymmetryGroup { nvars: x.nvars(), elements, generators }
    }

    /// The group used for a spec; trivial for explicit ideals or when
    /// symmetry is disabled.
    pub fn for_spec<F: Field>(spec: &IdealSpec<F>, enabled: bool) -> Self {
        match (spec.family(), spec.matrix()) {
            (Family::Explicit, _) | (_, None) => Self::trivial(spec.nvars()),
            _ if !enabled => Self::trivial(spec.nvars()),
            (_, Some(x)) => Self::for_matrix(x),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[Vec<(usize, bool)>] {
        &self.elements
    }

    pub fn apply_monomial(g: &[(usize, bool)], m: &Monomial) -> Monomial {
        m.rename(|v| g[v].0)
    }

    /// Checks that every generator of the group maps the generator set of
    /// the ideal to itself up to scalars.
    pub fn check_fixes<F: Field>(&self, gens: &[Polynomial<F>]) -> Result<()> {
        let known: HashSet<Polynomial<F>> = gens.iter().map(|g| g.monic()).collect();
        for (k, sigma) in self.generators.iter().enumerate() {
            for g in gens {
                let image = g.substitute_signed(|v| sigma[v]).monic();
                if !known.contains(&image) {
                    return Err(Error::SymmetryMismatch(format!("group generator {k} moves {g} out of the generator set")));
                }
            }
        }
        Ok(())
    }
}

/// Canonical cells (lexicographically least key in their orbit) with the
/// stabilizer of each acting on the cell's monomial indices.
pub struct CanonicalCell {
    pub cell: Cell,
    pub stabilizer: Vec<Vec<u32>>,
    pub orbit_len: usize,
}

pub fn canonical_cells(group: &SymmetryGroup, grading: Grading, layout: &VarLayout, cells: Vec<Cell>) -> Vec<CanonicalCell> {
    let mut out = Vec::new();
    for cell in cells {
        let m0 = &cell.monomials[0];
        let mut images: HashSet<Vec<u32>> = HashSet::new();
        let mut canonical = true;
        let mut stab_elems = Vec::new();
        for g in group.elements() {
            let key = grading.key(layout, &SymmetryGroup::apply_monomial(g, m0));
            if key < cell.key {
                canonical = false;
                break;
            }
            if key == cell.key {
                stab_elems.push(g);
            }
            images.insert(key);
        }
        if !canonical {
            continue;
        }
        let index: HashMap<&Monomial, u32> = cell.monomials.iter().enumerate().map(|(i, m)| (m, i as u32)).collect();
        let identity: Vec<u32> = (0..cell.len() as u32).collect();
        let mut stabilizer: Vec<Vec<u32>> = stab_elems
            .iter()
            .map(|g| {
                cell.monomials
                    .iter()
                    .map(|m| index[&SymmetryGroup::apply_monomial(g, m)])
                    .collect::<Vec<u32>>()
            })
            .filter(|p| *p != identity)
            .collect();
        stabilizer.sort();
        stabilizer.dedup();
        out.push(CanonicalCell { cell, stabilizer, orbit_len: images.len() });
    }
    out
}

/// Whether the sorted index set `s` is the lexicographically least among
/// its images.
pub fn is_canonical(s: &[u32], stabilizer: &[Vec<u32>], buf: &mut Vec<u32>) -> bool {
    for g in stabilizer {
        buf.clear();
        buf.extend(s.iter().map(|&i| g[i as usize]));
        buf.sort_unstable();
        if buf.as_slice() < s {
            return false;
        }
    }
    true
}

/// Calls `f` on every `k`-subset of `0..n` whose largest element is `top`,
/// in colex order; stops early when `f` returns `false`.
pub fn for_each_subset_with_max(n: usize, k: usize, top: usize, mut f: impl FnMut(&[u32]) -> bool) {
    if k == 0 || top >= n || top + 1 < k {
        return;
    }
    let mut cur: Vec<u32> = (0..k as u32 - 1).chain(std::iter::once(top as u32)).collect();
    loop {
        if !f(&cur) {
            return;
        }
        // next (k-1)-subset of 0..top in colex order
        let mut i = 0;
        while i + 1 < k && (if i + 2 < k { cur[i] + 1 == cur[i + 1] } else { cur[i] + 1 == top as u32 }) {
            i += 1;
        }
        if i + 1 >= k {
            return;
        }
        cur[i] += 1;
        for (j, slot) in cur.iter_mut().enumerate().take(i) {
            *slot = j as u32;
        }
    }
}

/// One support per orbit among the `k`-subsets of each cell: canonical
/// cells only, and within a cell the lexicographically least image under
/// its stabilizer.
pub fn orbit_representatives(
    group: &SymmetryGroup,
    grading: Grading,
    layout: &VarLayout,
    cells: Vec<Cell>,
    k: usize,
) -> Vec<Support> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    for cc in canonical_cells(group, grading, layout, cells) {
        for top in 0..cc.cell.len() {
            for_each_subset_with_max(cc.cell.len(), k, top, |s| {
                if is_canonical(s, &cc.stabilizer, &mut buf) {
                    let monomials = s.iter().map(|&i| cc.cell.monomials[i as usize].clone()).collect();
                    out.push(Support { degree: cc.cell.degree, monomials });
                }
                true
            });
        }
    }
    out
}

//! Minimum term count of nonzero ideal elements in bounded degree.

pub mod cells;
pub mod classify;

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, max_slice_cells, DegreeSliceBasis, GroebnerBasis, MAX_SLICE_DEGREE};
use crate::ideal::{Family, IdealSpec, SpecDoc};
use crate::linalg::{kernel, rank, Matrix};
use crate::poly::{binomial, monomials_of_degree, Monomial, Polynomial};
use crate::sampler::{evaluation_matrix, seeded_rng, SampleSource};

pub use cells::{
    canonical_cells, cells_for, enumerate_multidegree_cells, orbit_representatives, Cell, Grading, Multidegree,
    Support, SymmetryGroup,
};
pub use classify::{
    classify_minimal, shortest_binomial, verify_prop_linear, ClassificationDoc, MinimalityClassification,
    PropLinearDegree, PropLinearReport, Shape,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactSlice,
    EvalThenConfirm,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact_slice" | "exact-slice" => Ok(Method::ExactSlice),
            "eval_then_confirm" | "eval-then-confirm" => Ok(Method::EvalThenConfirm),
            _ => Err(Error::InvalidSpec(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub d_min: u32,
    pub seed: u64,
    /// Prune supports by the symmetry group of the matrix.
    pub symmetry: bool,
    /// Keep every orbit-representative witness at the minimal `k`, not
    /// just the first.
    pub collect_all: bool,
    /// Record wall-clock time in the certificate.
    pub timing: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { d_min: 1, seed: 0, symmetry: true, collect_all: false, timing: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Found,
    Exhausted,
    ResourceCap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellLog {
    pub degree: u32,
    pub multidegree: Multidegree,
    pub monomials: usize,
    /// Number of cells in the orbit of this one.
    pub orbit: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice_dim: Option<usize>,
    pub supports_checked: u64,
    pub hits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundLog {
    pub k: usize,
    pub degree: u32,
    pub cells: usize,
    pub canonical_cells: usize,
    /// `k`-subsets over all cells, before symmetry pruning.
    pub supports_raw: u64,
    pub supports_checked: u64,
    pub hits: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLog {
    pub symmetry_order: usize,
    pub rounds: Vec<RoundLog>,
    pub cells: Vec<CellLog>,
    pub eval_refreshes: u64,
    pub exact_fallbacks: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// JSON form of a [`SparsityCertificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub verdict: Verdict,
    pub k: Option<usize>,
    pub k_max: usize,
    pub degree_range: [u32; 2],
    pub method: Method,
    pub spec: SpecDoc,
    pub witness: Option<String>,
    pub witness_degree: Option<u32>,
    pub witness_in_ideal: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    pub seed: u64,
    pub search_log: SearchLog,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
}

/// Outcome of a search: `Found` carries a witness with exactly `k` terms
/// and no element with fewer terms exists in the range; `Exhausted` means
/// every support of size at most `k_max` was refuted exactly.
#[derive(Clone, Debug)]
pub struct SparsityCertificate<F: Field> {
    pub verdict: Verdict,
    pub k: Option<usize>,
    pub k_max: usize,
    pub d_min: u32,
    pub d_max: u32,
    pub method: Method,
    pub witness: Option<Polynomial<F>>,
    pub witness_in_ideal: Option<bool>,
    pub witnesses: Vec<Polynomial<F>>,
    pub seed: u64,
    pub log: SearchLog,
    pub wall_clock_ms: Option<u64>,
    spec_doc: SpecDoc,
    layout: crate::poly::VarLayout,
}

impl<F: Field> SparsityCertificate<F> {
    pub fn to_doc(&self) -> CertificateDoc {
        CertificateDoc {
            verdict: self.verdict,
            k: self.k,
            k_max: self.k_max,
            degree_range: [self.d_min, self.d_max],
            method: self.method,
            spec: self.spec_doc.clone(),
            witness: self.witness.as_ref().map(|w| w.to_text(&self.layout)),
            witness_degree: self.witness.as_ref().and_then(|w| w.degree()),
            witness_in_ideal: self.witness_in_ideal,
            witnesses: self.witnesses.iter().map(|w| w.to_text(&self.layout)).collect(),
            seed: self.seed,
            search_log: self.log.clone(),
            wall_clock_ms: self.wall_clock_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("certificate serializes")
    }
}

/// Parity checks of one cell slice: a form supported on the cell lies in
/// the ideal iff every row of `parity` is orthogonal to it.
struct CellSlice<E> {
    dim: usize,
    parity: Matrix<E>,
}

fn cell_slice<F: Field>(field: &F, nvars: usize, cell: &Cell, spanning: &[Polynomial<F>]) -> Result<CellSlice<F::Elem>> {
    let slice = DegreeSliceBasis::from_spanning(field, nvars, cell.degree, cell.monomials.clone(), spanning)?;
    let n = cell.len();
    let dim = slice.dim();
    let ker = if dim == 0 {
        (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect()
    } else {
        kernel(field, slice.rows())
    };
    let parity = Matrix::from_rows_with_cols(ker, n)?;
    Ok(CellSlice { dim, parity })
}

/// A nonzero element of the ideal supported inside `support`, if any.
pub fn support_has_ideal_element<F: Field>(slice: &DegreeSliceBasis<F>, support: &Support) -> Result<Option<Polynomial<F>>> {
    if support.degree != slice.degree() {
        return Err(Error::DimensionMismatch { expected: slice.degree() as usize, got: support.degree as usize });
    }
    let field = slice.field();
    let cols: Vec<usize> = support
        .monomials
        .iter()
        .map(|m| slice.column(m).ok_or_else(|| Error::InvalidSpec("support monomial outside the slice".into())))
        .collect::<Result<_>>()?;
    if slice.dim() == 0 {
        return Ok(None);
    }
    let h = Matrix::from_rows_with_cols(kernel(field, slice.rows()), slice.monomials().len())?;
    Ok(dependent_combination(field, slice.nvars(), &h, &cols, &support.monomials))
}

fn dependent_combination<F: Field>(
    field: &F,
    nvars: usize,
    parity: &Matrix<F::Elem>,
    cols: &[usize],
    monomials: &[Monomial],
) -> Option<Polynomial<F>> {
    let sub = parity.select_cols(cols);
    if sub.rows() > 0 && rank(field, &sub) == cols.len() {
        return None;
    }
    let v = if sub.rows() == 0 {
        let mut v = vec![field.zero(); cols.len()];
        v[0] = field.one();
        v
    } else {
        kernel(field, &sub).into_iter().next()?
    };
    Some(Polynomial::from_coefficients(field, nvars, monomials, &v).normalized())
}

struct DegreeState<F: Field> {
    degree: u32,
    total_cells: usize,
    raw_by_size: Vec<usize>,
    cells: Vec<CellState<F>>,
}

struct CellState<F: Field> {
    cell: Cell,
    stabilizer: Vec<Vec<u32>>,
    orbit_len: usize,
    spanning: Vec<Polynomial<F>>,
    slice: OnceLock<std::result::Result<CellSlice<F::Elem>, String>>,
}

impl<F: Field> CellState<F> {
    fn slice(&self, field: &F, nvars: usize) -> Result<&CellSlice<F::Elem>> {
        self.slice
            .get_or_init(|| cell_slice(field, nvars, &self.cell, &self.spanning).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::ResourceCap(e.clone()))
    }
}

struct CellOutcome<F: Field> {
    checked: u64,
    hits: Vec<Polynomial<F>>,
    refreshes: u64,
    fallbacks: u64,
}

struct Searcher<'a, F: Field> {
    spec: &'a IdealSpec<F>,
    field: F,
    ext: F::Ext,
    grading: Grading,
    group: SymmetryGroup,
    gens: Vec<Polynomial<F>>,
    source: Option<SampleSource<<F::Ext as Field>::Elem>>,
    method: Method,
    options: SearchOptions,
    gb: OnceLock<std::result::Result<GroebnerBasis<F>, String>>,
}

impl<'a, F: Field> Searcher<'a, F> {
    fn groebner(&self) -> Result<&GroebnerBasis<F>> {
        self.gb
            .get_or_init(|| buchberger(&self.gens, &self.spec.natural_order()).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::ResourceCap(e.clone()))
    }

    fn degree_state(&self, d: u32) -> Result<DegreeState<F>> {
        if d > MAX_SLICE_DEGREE {
            return Err(Error::ResourceCap(format!("degree {d} above the cap {MAX_SLICE_DEGREE}")));
        }
        let layout = self.spec.layout();
        let nvars = self.spec.nvars();
        let monomial_count = binomial((nvars as u64) + d as u64 - 1, d as u64) as usize;
        if monomial_count > max_slice_cells() {
            return Err(Error::ResourceCap(format!("{monomial_count} monomials in degree {d}")));
        }
        let all = cells_for(self.grading, layout, d);
        let total_cells = all.len();
        let max_size = all.iter().map(Cell::len).max().unwrap_or(0);
        let mut raw_by_size = vec![0usize; max_size + 1];
        for c in &all {
            raw_by_size[c.len()] += 1;
        }
        let canon = canonical_cells(&self.group, self.grading, layout, all);

        let mut buckets: HashMap<Vec<u32>, Vec<Polynomial<F>>> = HashMap::new();
        let wanted: std::collections::HashSet<&Vec<u32>> = canon.iter().map(|c| &c.cell.key).collect();
        let one = self.field.one();
        let mut multipliers: HashMap<u32, Vec<Monomial>> = HashMap::new();
        for g in &self.gens {
            let dg = g.degree().expect("nonzero generator");
            if dg > d {
                continue;
            }
            let gkey = self
                .grading
                .poly_key(layout, g)
                .ok_or_else(|| Error::Internal(format!("generator {g} is not multihomogeneous")))?;
            let ms = multipliers.entry(d - dg).or_insert_with(|| monomials_of_degree(nvars, d - dg));
            for m in ms.iter() {
                let mut key = self.grading.key(layout, m);
                for (a, b) in key.iter_mut().zip(&gkey) {
                    *a += b;
                }
                if wanted.contains(&key) {
                    buckets.entry(key).or_default().push(g.mul_term(&one, m));
                }
            }
        }
        let cells = canon
            .into_iter()
            .map(|cc| CellState {
                spanning: buckets.remove(&cc.cell.key).unwrap_or_default(),
                cell: cc.cell,
                stabilizer: cc.stabilizer,
                orbit_len: cc.orbit_len,
                slice: OnceLock::new(),
            })
            .collect();
        Ok(DegreeState { degree: d, total_cells, raw_by_size, cells })
    }

    fn exact_check(&self, cs: &CellState<F>, s: &[u32]) -> Result<Option<Polynomial<F>>> {
        let slice = cs.slice(&self.field, self.spec.nvars())?;
        if slice.dim == 0 {
            return Ok(None);
        }
        let cols: Vec<usize> = s.iter().map(|&i| i as usize).collect();
        let monos: Vec<Monomial> = cols.iter().map(|&i| cs.cell.monomials[i].clone()).collect();
        Ok(dependent_combination(&self.field, self.spec.nvars(), &slice.parity, &cols, &monos))
    }

    fn sample_points(&self, source: &SampleSource<<F::Ext as Field>::Elem>, count: usize, stream: u64) -> Result<Vec<Vec<<F::Ext as Field>::Elem>>> {
        let mut rng = seeded_rng(self.options.seed, stream);
        (0..count).map(|_| source.point(&self.ext, &mut rng)).collect()
    }

    /// Restricts a kernel vector over the extension to the base field and
    /// keeps it if it really lies in the ideal.
    fn confirm(&self, monos: &[Monomial], v: &[<F::Ext as Field>::Elem]) -> Result<Option<Polynomial<F>>> {
        let ext = &self.ext;
        let Some(lead) = v.iter().find(|c| !ext.is_zero(c)) else { return Ok(None) };
        let inv = ext.inv(lead).expect("nonzero");
        let mut coeffs = Vec::with_capacity(v.len());
        for c in v {
            match self.field.restrict(ext, &ext.mul(c, &inv)) {
                Some(x) => coeffs.push(x),
                None => return Ok(None),
            }
        }
        let f = Polynomial::from_coefficients(&self.field, self.spec.nvars(), monos, &coeffs);
        if f.is_zero() || !self.groebner()?.contains(&f) {
            return Ok(None);
        }
        Ok(Some(f.normalized()))
    }

    /// Rank test at sample points; a rank drop that does not yield a
    /// confirmed witness triggers one refresh and then the exact check.
    fn eval_check(
        &self,
        cs: &CellState<F>,
        s: &[u32],
        evals: &Matrix<<F::Ext as Field>::Elem>,
        refreshed: &mut Option<Matrix<<F::Ext as Field>::Elem>>,
        stream: u64,
        out: &mut CellOutcome<F>,
    ) -> Result<Option<Polynomial<F>>> {
        let k = s.len();
        let cols: Vec<usize> = s.iter().map(|&i| i as usize).collect();
        let sub = evals.select_cols(&cols);
        if rank(&self.ext, &sub) == k {
            return Ok(None);
        }
        let monos: Vec<Monomial> = cols.iter().map(|&i| cs.cell.monomials[i].clone()).collect();
        if let Some(v) = kernel(&self.ext, &sub).first() {
            if let Some(w) = self.confirm(&monos, v)? {
                return Ok(Some(w));
            }
        }
        out.refreshes += 1;
        if refreshed.is_none() {
            let src = self.source.as_ref().expect("eval needs a source");
            let pts = self.sample_points(src, k + 10, stream ^ 1)?;
            *refreshed = Some(evaluation_matrix(&self.ext, &cs.cell.monomials, &pts)?);
        }
        let again = refreshed.as_ref().expect("just set").select_cols(&cols);
        if rank(&self.ext, &again) == k {
            return Ok(None);
        }
        out.fallbacks += 1;
        self.exact_check(cs, s)
    }

    fn search_cell(&self, d: u32, idx: usize, cs: &CellState<F>, k: usize) -> Result<CellOutcome<F>> {
        let mut out = CellOutcome { checked: 0, hits: vec![], refreshes: 0, fallbacks: 0 };
        let n = cs.cell.len();
        if n < k || cs.spanning.is_empty() {
            return Ok(out);
        }
        if self.method == Method::ExactSlice && cs.slice(&self.field, self.spec.nvars())?.dim == 0 {
            return Ok(out);
        }
        let stream = ((d as u64) << 48) ^ ((idx as u64) << 16) ^ ((k as u64) << 4);
        let evals = match (self.method, &self.source) {
            (Method::EvalThenConfirm, Some(src)) => {
                let pts = self.sample_points(src, k + 10, stream)?;
                Some(evaluation_matrix(&self.ext, &cs.cell.monomials, &pts)?)
            }
            _ => None,
        };
        let mut refreshed: Option<Matrix<<F::Ext as Field>::Elem>> = None;
        let mut buf = Vec::new();
        let mut err = None;
        for top in 0..n {
            let mut stop = false;
            cells::for_each_subset_with_max(n, k, top, |s| {
                if !cells::is_canonical(s, &cs.stabilizer, &mut buf) {
                    return true;
                }
                out.checked += 1;
                let res = match &evals {
                    None => self.exact_check(cs, s),
                    Some(e) => self.eval_check(cs, s, e, &mut refreshed, stream, &mut out),
                };
                match res {
                    Ok(Some(w)) => {
                        out.hits.push(w);
                        if !self.options.collect_all {
                            stop = true;
                            return false;
                        }
                    }
                    Ok(None) => {}
                    Err(e) => {
                        err = Some(e);
                        stop = true;
                        return false;
                    }
                }
                true
            });
            if let Some(e) = err.take() {
                return Err(e);
            }
            if stop {
                break;
            }
        }
        Ok(out)
    }
}

/// Searches for the sparsest nonzero element of the ideal in degrees
/// `options.d_min ..= d_max` with at most `k_max` terms.
pub fn sparsest_in_range<F: Field>(
    spec: &IdealSpec<F>,
    d_max: u32,
    k_max: usize,
    method: Method,
    options: &SearchOptions,
) -> Result<SparsityCertificate<F>> {
    let source = match (spec.family(), spec.matrix(), spec.rank_bound()) {
        (Family::Minors | Family::Pfaffians, Some(x), Some(r)) => Some(SampleSource::Rank { matrix: *x, r }),
        _ => None,
    };
    sparsest_with_source(spec, source.as_ref(), d_max, k_max, method, options)
}

/// As [`sparsest_in_range`], with sample points for `eval_then_confirm`
/// drawn from `source` (over the base field; embedded into the extension).
pub fn sparsest_with_source<F: Field>(
    spec: &IdealSpec<F>,
    source: Option<&SampleSource<F::Elem>>,
    d_max: u32,
    k_max: usize,
    method: Method,
    options: &SearchOptions,
) -> Result<SparsityCertificate<F>> {
    let start = Instant::now();
    let field = spec.field().clone();
    let ext = field.generic_extension();
    if !spec.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let d_min = options.d_min.max(1);
    if d_min > d_max || k_max == 0 {
        return Err(Error::OutOfRange(format!("empty range: degrees {d_min}..={d_max}, k_max {k_max}")));
    }
    if method == Method::EvalThenConfirm && source.is_none() {
        return Err(Error::UnsupportedMethod("eval_then_confirm needs sample points of the variety".into()));
    }
    let grading = Grading::for_spec(spec);
    let group = SymmetryGroup::for_spec(spec, options.symmetry);
    let gens = spec.generators();
    if group.order() > 1 {
        group.check_fixes(&gens)?;
    }
    let mut cert = SparsityCertificate {
        verdict: Verdict::Exhausted,
        k: None,
        k_max,
        d_min,
        d_max,
        method,
        witness: None,
        witness_in_ideal: None,
        witnesses: vec![],
        seed: options.seed,
        log: SearchLog { symmetry_order: group.order(), ..Default::default() },
        wall_clock_ms: None,
        spec_doc: spec.to_doc(),
        layout: *spec.layout(),
    };

    if spec.rank_bound() == Some(0) {
        // every variable is a generator
        let w = Polynomial::monomial(&field, spec.nvars(), field.one(), Monomial::var_pow(0, d_min));
        cert.verdict = Verdict::Found;
        cert.k = Some(1);
        cert.witness_in_ideal = Some(true);
        cert.witness = Some(w);
        return Ok(cert);
    }

    let embedded = source.map(|s| s.map(|c| field.embed(&ext, c)));
    let searcher = Searcher {
        spec,
        field: field.clone(),
        ext,
        grading,
        group,
        gens,
        source: embedded,
        method,
        options: options.clone(),
        gb: OnceLock::new(),
    };

    let mut states: Vec<DegreeState<F>> = Vec::new();
    let mut cell_logs: Vec<Vec<CellLog>> = Vec::new();
    let result = (|| -> Result<()> {
        for d in d_min..=d_max {
            let st = searcher.degree_state(d)?;
            cell_logs.push(
                st.cells
                    .iter()
                    .map(|cs| CellLog {
                        degree: d,
                        multidegree: cs.cell.multidegree.clone(),
                        monomials: cs.cell.len(),
                        orbit: cs.orbit_len,
                        slice_dim: None,
                        supports_checked: 0,
                        hits: 0,
                    })
                    .collect(),
            );
            states.push(st);
        }
        for k in 1..=k_max {
            for (di, st) in states.iter().enumerate() {
                let outcomes: Vec<Result<CellOutcome<F>>> = st
                    .cells
                    .par_iter()
                    .enumerate()
                    .map(|(idx, cs)| searcher.search_cell(st.degree, idx, cs, k))
                    .collect();
                let raw: u64 =
                    st.raw_by_size.iter().enumerate().map(|(size, &count)| count as u64 * binomial(size as u64, k as u64)).sum();
                let mut round = RoundLog {
                    k,
                    degree: st.degree,
                    cells: st.total_cells,
                    canonical_cells: st.cells.len(),
                    supports_raw: raw,
                    supports_checked: 0,
                    hits: 0,
                };
                let mut first_err = None;
                for (idx, o) in outcomes.into_iter().enumerate() {
                    match o {
                        Ok(o) => {
                            round.supports_checked += o.checked;
                            round.hits += o.hits.len() as u64;
                            cert.log.eval_refreshes += o.refreshes;
                            cert.log.exact_fallbacks += o.fallbacks;
                            let cl = &mut cell_logs[di][idx];
                            cl.supports_checked += o.checked;
                            cl.hits += o.hits.len() as u64;
                            if cert.witness.is_none() {
                                cert.witness = o.hits.first().cloned();
                            }
                            if options.collect_all {
                                cert.witnesses.extend(o.hits);
                            }
                        }
                        Err(e) => {
                            first_err.get_or_insert(e);
                        }
                    }
                }
                cert.log.rounds.push(round);
                if let Some(e) = first_err {
                    return Err(e);
                }
                if cert.witness.is_some() && !options.collect_all {
                    break;
                }
            }
            if cert.witness.is_some() {
                cert.k = Some(k);
                return Ok(());
            }
        }
        cert.k = Some(k_max);
        Ok(())
    })();

    for (st, logs) in states.iter().zip(cell_logs.iter_mut()) {
        for (cs, cl) in st.cells.iter().zip(logs.iter_mut()) {
            if let Some(Ok(s)) = cs.slice.get() {
                cl.slice_dim = Some(s.dim);
            }
        }
    }
    cert.log.cells = cell_logs.into_iter().flatten().collect();

    match result {
        Ok(()) => {}
        Err(Error::ResourceCap(msg)) => {
            cert.verdict = Verdict::ResourceCap;
            cert.k = None;
            cert.witness = None;
            cert.witnesses.clear();
            cert.log.error = Some(msg);
        }
        Err(e) => return Err(e),
    }
    if let Some(w) = &cert.witness {
        cert.verdict = Verdict::Found;
        match searcher.groebner() {
            Ok(gb) => {
                let ok = gb.contains(w) && cert.witnesses.iter().all(|x| gb.contains(x));
                if !ok {
                    return Err(Error::Internal(format!("witness {w} is not in the ideal")));
                }
                cert.witness_in_ideal = Some(true);
            }
            Err(e) => cert.log.error = Some(format!("membership check skipped: {e}")),
        }
    }
    if options.timing {
        cert.wall_clock_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(cert)
}

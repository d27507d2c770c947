//! The acceptance suite: every checked statement as one runnable criterion.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{Field, GaloisField, PrimeField, Rationals};
use crate::gin::{gin_lemma_instance, generic_initial_space, is_borel_fixed, random_form, s3_lemma_search, PermSubset};
use crate::groebner::buchberger;
use crate::ideal::{minor, pfaffian, pfaffian_squared_is_det_with, IdealSpec, IndexSet, PfaffianConvention};
use crate::linalg::rank;
use crate::poly::{Monomial, Polynomial, VarLayout, VariableMatrix};
use crate::sampler::{
    complete_block_diagonal, complete_block_diagonal_skew, diagonal_block, random_rank_matrix, random_skew_rank_matrix,
    seeded_rng,
};
use crate::sparsity::{
    classify_minimal, shortest_binomial, sparsest_in_range, verify_prop_linear, Method, SearchOptions, Shape, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Smoke,
    Full,
}

impl std::str::FromStr for Level {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(Level::Smoke),
            "full" => Ok(Level::Full),
            _ => Err(crate::error::Error::InvalidSpec(format!("unknown level {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub level: Level,
    pub seed: u64,
    /// Criteria to run (1-based); empty runs all.
    pub only: Vec<usize>,
    /// Sign convention used when checking `Pf^2 = det`; `Unsigned` is a
    /// deliberately broken convention for fault-injection runs.
    pub pfaffian_convention: PfaffianConvention,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { level: Level::Smoke, seed: 0, only: vec![], pfaffian_convention: PfaffianConvention::Standard }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
    pub time_bound_s: u64,
    pub within_time: bool,
    pub reproduce: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub level: Level,
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub const TITLES: [(&str, u64); 12] = [
    ("term counts of minors and Pfaffians", 1),
    ("Pfaffian squared equals the principal minor", 10),
    ("minors and Pfaffians are reduced Groebner bases", 120),
    ("sparsest elements of determinantal ideals", 600),
    ("sparsest elements of Pfaffian ideals", 300),
    ("rank-one binomials", 60),
    ("sparsest polynomials vanishing on a general subspace", 300),
    ("binomials of the ideals I_n", 60),
    ("six-permutation lemma", 300),
    ("block completions", 60),
    ("generic initial spaces are Borel-fixed", 600),
    ("method agreement and determinism", 300),
];

fn fp() -> PrimeField {
    PrimeField::new(32003).expect("prime")
}

fn double_factorial(n: usize) -> usize {
    (1..=n).rev().step_by(2).product()
}

fn c1_term_counts() -> Check {
    for t in 1..=6 {
        let x = VariableMatrix::generic(t, t);
        let det = lift(minor(&Rationals, &x, &IndexSet::range(t), &IndexSet::range(t)))?;
        let want: usize = (1..=t).product();
        ensure!(det.term_count() == want, "{t}-minor has {} terms, expected {want}", det.term_count());
    }
    for t in [2, 4, 6, 8] {
        let pf = lift(pfaffian(&Rationals, &VariableMatrix::skew(t), &IndexSet::range(t)))?;
        let want = double_factorial(t - 1);
        ensure!(pf.term_count() == want, "{t}-Pfaffian has {} terms, expected {want}", pf.term_count());
    }
    Ok("t! terms for t <= 6; 1, 3, 15, 105 terms for Pfaffians of size 2, 4, 6, 8".into())
}

fn c2_pfaffian_squares(conv: PfaffianConvention) -> Check {
    let x = VariableMatrix::skew(6);
    let mut checked = 0;
    for size in [2, 4, 6] {
        for set in IndexSet::subsets(6, size) {
            ensure!(
                lift(pfaffian_squared_is_det_with(&Rationals, &x, &set, conv))?,
                "pfaffian_squared_is_det fails for J = {set}"
            );
            checked += 1;
        }
    }
    Ok(format!("Pf(J)^2 = det x[J,J] for all {checked} even J on a skew 6x6 matrix"))
}

/// Expected leading monomial of a generator: the anti-diagonal product for
/// a minor, `x_{j1 jt} x_{j2 j(t-1)} ...` for a Pfaffian.
fn expected_leading(x: &VariableMatrix, idx: &[IndexSet]) -> Monomial {
    let var = |i: usize, j: usize| match x.entry(i - 1, j - 1) {
        crate::poly::Entry::Var { var, .. } => var,
        crate::poly::Entry::Zero => unreachable!("off-diagonal entry"),
    };
    match idx {
        [rows, cols] => {
            let t = rows.len();
            Monomial::from_pairs((0..t).map(|k| (var(rows.as_slice()[k], cols.as_slice()[t - 1 - k]), 1)))
        }
        [set] => {
            let s = set.as_slice();
            let t = s.len();
            Monomial::from_pairs((0..t / 2).map(|k| (var(s[k], s[t - 1 - k]), 1)))
        }
        _ => unreachable!("labelled generators carry one or two index sets"),
    }
}

fn c3_groebner() -> Check {
    let specs = [
        lift(IdealSpec::minors(&Rationals, VariableMatrix::generic(3, 3), 3))?,
        lift(IdealSpec::minors(&Rationals, VariableMatrix::generic(3, 4), 3))?,
        lift(IdealSpec::minors(&Rationals, VariableMatrix::generic(4, 4), 3))?,
        lift(IdealSpec::pfaffians(&Rationals, VariableMatrix::skew(5), 4))?,
        lift(IdealSpec::pfaffians(&Rationals, VariableMatrix::skew(6), 4))?,
    ];
    let mut parts = vec![];
    for spec in &specs {
        let order = spec.natural_order();
        let labelled = spec.labelled_generators();
        let gens: Vec<_> = labelled.iter().map(|(_, g)| g.clone()).collect();
        let gb = lift(buchberger(&gens, &order))?;
        let stats = gb.stats();
        ensure!(stats.nonzero_reductions == 0, "Buchberger added {} elements", stats.nonzero_reductions);
        let got: HashSet<_> = gb.elements().iter().cloned().collect();
        let want: HashSet<_> = gens.iter().map(|g| g.normalized()).collect();
        ensure!(got == want, "reduced basis differs from the generator set ({} vs {})", got.len(), want.len());
        let x = spec.matrix().expect("matrix spec");
        for (idx, g) in &labelled {
            let lt = lift(g.leading_term(&order))?;
            ensure!(lt.monomial == expected_leading(x, idx), "unexpected leading term of {g}");
        }
        parts.push(format!("{}x{} ({} generators, {} pairs)", x.m, x.n, gens.len(), stats.pairs));
    }
    Ok(format!("already reduced Groebner bases: {}", parts.join(", ")))
}

fn check_witnesses<F: Field>(
    spec: &IdealSpec<F>,
    witnesses: &[Polynomial<F>],
    shape: Shape,
    e: u32,
) -> std::result::Result<(), String> {
    ensure!(!witnesses.is_empty(), "no witnesses");
    for w in witnesses {
        let c = lift(classify_minimal(w, spec))?;
        ensure!(c.reconstruct() == *w, "classification of {w} does not reconstruct it");
        ensure!(
            c.shape == shape && c.frobenius_e == e,
            "witness {} classified as {:?} with e = {}",
            w.to_text(spec.layout()),
            c.shape,
            c.frobenius_e
        );
    }
    Ok(())
}

fn c4_minors(seed: u64) -> Check {
    let f = fp();
    let mut parts = vec![];
    for (m, n) in [(3, 3), (3, 4)] {
        let spec = lift(IdealSpec::minors(&f, VariableMatrix::generic(m, n), 3))?;
        let opts = SearchOptions { seed, ..Default::default() };
        let none = lift(sparsest_in_range(&spec, 4, 5, Method::ExactSlice, &opts))?;
        ensure!(none.verdict == Verdict::Exhausted, "{m}x{n}: found {:?} with <= 5 terms", none.witness);
        let opts = SearchOptions { d_min: 3, seed, collect_all: true, ..Default::default() };
        let found = lift(sparsest_in_range(&spec, 3, 6, Method::ExactSlice, &opts))?;
        ensure!(found.verdict == Verdict::Found && found.k == Some(6), "{m}x{n}: degree-3 minimum is {:?}", found.k);
        check_witnesses(&spec, &found.witnesses, Shape::MonomialTimesPowerOfMinor, 0)?;
        let supports: u64 = none.log.rounds.iter().map(|r| r.supports_checked).sum();
        parts.push(format!("{m}x{n}: no element with <= 5 terms in degrees <= 4 ({supports} supports), {} degree-3 witnesses", found.witnesses.len()));
    }
    let f2 = PrimeField::new(2).expect("prime");
    let spec = lift(IdealSpec::minors(&f2, VariableMatrix::generic(3, 3), 3))?;
    let opts = SearchOptions { d_min: 6, seed, collect_all: true, ..Default::default() };
    let cert = lift(sparsest_in_range(&spec, 6, 6, Method::ExactSlice, &opts))?;
    ensure!(cert.k == Some(6), "F_2 degree 6: minimum {:?}", cert.k);
    let square = spec.generators()[0].power(2);
    ensure!(square.term_count() == 6, "det^2 over F_2 has {} terms", square.term_count());
    let mut e1 = 0;
    for w in &cert.witnesses {
        let c = lift(classify_minimal(w, &spec))?;
        ensure!(c.shape == Shape::MonomialTimesPowerOfMinor, "F_2 witness {w} classified as {:?}", c.shape);
        if c.frobenius_e == 1 {
            e1 += 1;
        }
    }
    ensure!(cert.witnesses.contains(&square.normalized()) && e1 > 0, "det^2 not among the F_2 degree-6 witnesses");
    parts.push(format!("F_2: det^2 is a 6-term degree-6 witness with e = 1 ({e1} such orbit representatives)"));
    Ok(parts.join("; "))
}

fn c5_pfaffians(seed: u64) -> Check {
    let f = fp();
    let mut parts = vec![];
    for m in [4, 5] {
        let spec = lift(IdealSpec::pfaffians(&f, VariableMatrix::skew(m), 4))?;
        let opts = SearchOptions { seed, ..Default::default() };
        let cert = lift(sparsest_in_range(&spec, 3, 3, Method::ExactSlice, &opts))?;
        ensure!(cert.verdict == Verdict::Found && cert.k == Some(3), "skew {m}: minimum {:?}", cert.k);
        let two = lift(sparsest_in_range(&spec, 3, 2, Method::ExactSlice, &opts))?;
        ensure!(two.verdict == Verdict::Exhausted, "skew {m}: a 2-term element exists");
        let mut count = 0;
        for d in 2..=3 {
            let opts = SearchOptions { d_min: d, seed, collect_all: true, ..Default::default() };
            let cert = lift(sparsest_in_range(&spec, d, 3, Method::ExactSlice, &opts))?;
            ensure!(cert.k == Some(3), "skew {m}, degree {d}: minimum {:?}", cert.k);
            check_witnesses(&spec, &cert.witnesses, Shape::MonomialTimesPowerOfPfaffian, 0)?;
            count += cert.witnesses.len();
        }
        parts.push(format!("skew {m}x{m}: minimum 3, k <= 2 exhausted, {count} witnesses are term x Pfaffian"));
    }
    Ok(parts.join("; "))
}

fn c6_binomials(seed: u64) -> Check {
    let mut parts = vec![];
    for (m, n) in [(2, 2), (2, 3)] {
        let spec = lift(IdealSpec::minors(&Rationals, VariableMatrix::generic(m, n), 2))?;
        let mut count = 0;
        for d in 2..=3 {
            let opts = SearchOptions { d_min: d, seed, collect_all: true, ..Default::default() };
            let cert = lift(sparsest_in_range(&spec, d, 2, Method::ExactSlice, &opts))?;
            ensure!(cert.k == Some(2), "{m}x{n}, degree {d}: minimum {:?}", cert.k);
            check_witnesses(&spec, &cert.witnesses, Shape::Rank1Binomial, 0)?;
            count += cert.witnesses.len();
        }
        let one = lift(sparsest_in_range(&spec, 3, 1, Method::ExactSlice, &SearchOptions::default()))?;
        ensure!(one.verdict == Verdict::Exhausted, "{m}x{n}: a monomial lies in the ideal");
        parts.push(format!("{m}x{n}: minimum 2, {count} witnesses with equal row and column sums"));
    }
    Ok(parts.join("; "))
}

fn c7_linear(seed: u64, level: Level) -> Check {
    let seeds: Vec<u64> = match level {
        Level::Smoke => vec![seed],
        Level::Full => (0..5).map(|i| seed + i).collect(),
    };
    // a general subspace needs a large field: characteristic 3 is run over GF(3^10)
    let gf3 = GaloisField::generic_over(3);
    let mut parts = vec![];
    let mut failures = vec![];
    let mut prime_field_notes = vec![];
    for s in &seeds {
        let q = lift(verify_prop_linear(4, 2, 3, &Rationals, *s))?;
        failures.extend(q.violations.iter().map(|v| format!("Q: {v}")));
        let r3 = lift(verify_prop_linear(4, 2, 3, &gf3, *s))?;
        failures.extend(r3.violations.iter().map(|v| format!("GF(3^{}): {v}", gf3.degree())));
        if *s == seeds[0] {
            let es: Vec<String> = r3.degrees.iter().map(|d| format!("{:?}", d.frobenius_e)).collect();
            parts.push(format!("characteristic 3 exponents per degree {}", es.join(" ")));
        }
        let f3 = PrimeField::new(3).expect("prime");
        let small = lift(verify_prop_linear(4, 2, 3, &f3, *s))?;
        if let Some(v) = small.violations.first() {
            prime_field_notes.push(v.clone());
        }
    }
    let dim1 = lift(verify_prop_linear(3, 1, 2, &Rationals, seed))?;
    ensure!(dim1.passed(), "r = 1: {:?}", dim1.violations);
    let other = dim1.degrees.iter().flat_map(|d| d.other_shapes.iter()).next().cloned();
    ensure!(other.is_some(), "r = 1: no 2-term witness outside the u * l shape");
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    parts.insert(
        0,
        format!(
            "n = 4, r = 2 over Q and GF(3^{}) for {} seeds: minimum 3 in degrees 1..3, all witnesses u * l^(p^e)",
            gf3.degree(),
            seeds.len()
        ),
    );
    parts.push(format!("r = 1 witness {} is not of that shape", other.unwrap_or_default()));
    if let Some(note) = prime_field_notes.first() {
        parts.push(format!(
            "over the prime field F_3 no subspace is general enough: {} of {} seeds show e.g. {note}",
            prime_field_notes.len(),
            seeds.len()
        ));
    }
    Ok(parts.join("; "))
}

fn i_n_spec(n: u32) -> Result<IdealSpec<Rationals>> {
    let layout = VarLayout::Plain(3);
    let gens = vec![
        Polynomial::parse(&Rationals, &layout, "x(1)^2 - 2*x(1)*x(3) + x(3)^2")?,
        Polynomial::parse(&Rationals, &layout, &format!("{n}*x(1) - x(2) - {}*x(3)", n - 1))?,
    ];
    IdealSpec::explicit(&Rationals, layout, gens)
}

fn c8_family() -> Check {
    for n in 2..=5u32 {
        let spec = lift(i_n_spec(n))?;
        let gb = lift(buchberger(&spec.generators(), &spec.natural_order()))?;
        let target = lift(Polynomial::parse(&Rationals, spec.layout(), &format!("x(1)^{n} - x(2)*x(3)^{}", n - 1)))?;
        ensure!(gb.contains(&target), "x^{n} - y z^{} not in I_{n}", n - 1);
        ensure!(lift(shortest_binomial(&spec, n - 1))?.is_none(), "I_{n} has a binomial below degree {n}");
        let found = lift(shortest_binomial(&spec, n))?;
        ensure!(
            found == Some((n, target.normalized())),
            "I_{n}: shortest binomial {:?}",
            found.map(|(d, w)| (d, w.to_text(spec.layout())))
        );
    }
    Ok("for n = 2..5: x^n - y z^(n-1) lies in I_n and is its lowest-degree binomial".into())
}

fn c9_s3(level: Level) -> Check {
    let three = lift(s3_lemma_search(3))?;
    ensure!(three == vec![PermSubset::full(3)], "n = 3 gives {} subsets", three.len());
    ensure!(!crate::gin::s3_predicate(&PermSubset::full(3).embed(4)), "S_3 inside S_4 satisfies the predicate");
    let _ = level;
    let four = lift(s3_lemma_search(4))?;
    ensure!(four.is_empty(), "n = 4 gives {} subsets", four.len());
    Ok("n = 3: exactly S_3; n = 4: none of the 134596 six-element subsets".into())
}

fn c10_completion(seed: u64, level: Level) -> Check {
    let count = match level {
        Level::Smoke => 200,
        Level::Full => 1000,
    };
    let f = fp();
    let mut rng = seeded_rng(seed, 10);
    for inst in 0..count {
        let q = rng.random_range(2..=3usize);
        let r = rng.random_range(1..=3usize);
        let sizes: Vec<usize> = (0..q).map(|_| rng.random_range(1..=3usize)).collect();
        let blocks = sizes
            .iter()
            .map(|&s| random_rank_matrix(&f, s, s, rng.random_range(0..=r.min(s)), &mut rng))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        let a = lift(complete_block_diagonal(&f, &blocks, r))?;
        ensure!(rank(&f, &a) <= r, "instance {inst}: rank {} > {r}", rank(&f, &a));
        for (k, b) in blocks.iter().enumerate() {
            ensure!(diagonal_block(&a, &sizes, k) == *b, "instance {inst}: block {k} changed");
        }

        let r = 2 * rng.random_range(1..=2usize);
        let sizes: Vec<usize> = (0..2).map(|_| rng.random_range(2..=4usize)).collect();
        let blocks = sizes
            .iter()
            .map(|&s| {
                let rr = rng.random_range(0..=r.min(s) / 2) * 2;
                random_skew_rank_matrix(&f, s, rr, &mut rng)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        let a = lift(complete_block_diagonal_skew(&f, &blocks, r))?;
        ensure!(rank(&f, &a) <= r, "skew instance {inst}: rank {} > {r}", rank(&f, &a));
        ensure!(crate::linalg::is_skew(&f, &a), "skew instance {inst}: completion is not skew");
        for (k, b) in blocks.iter().enumerate() {
            ensure!(diagonal_block(&a, &sizes, k) == *b, "skew instance {inst}: block {k} changed");
        }
    }
    Ok(format!("{count} block and {count} skew completions keep their blocks and rank bound"))
}

fn gin_suite<F: Field>(field: &F, per_combo: usize, seed: u64) -> std::result::Result<usize, String> {
    let p = field.char_exponent();
    let mut done = 0;
    for n in 3..=5usize {
        for d in 2..=4u32 {
            let space_dim = crate::poly::binomial((n + d as usize - 1) as u64, d as u64) as usize;
            for i in 0..per_combo {
                let mut rng = seeded_rng(seed, (n * 100 + d as usize * 10 + i) as u64);
                let dim = rng.random_range(1..=6usize.min(space_dim));
                let v: Vec<_> = (0..dim).map(|_| random_form(field, n, d, &mut rng)).collect();
                let gin = lift(generic_initial_space(&v, seed ^ i as u64, 3))?;
                let vdim = lift(crate::gin::initial_space(field, n, d, &v))?.len();
                ensure!(gin.len() == vdim, "gin dimension {} vs {vdim} (n {n}, d {d}, p {p})", gin.len());
                ensure!(is_borel_fixed(&gin, p), "gin not Borel-fixed for n {n}, d {d}, p {p}, instance {i}");
                done += 1;
            }
        }
    }
    Ok(done)
}

fn lemma_suite<F: Field>(field: &F, count: usize, seed: u64) -> std::result::Result<usize, String> {
    let p = field.char_exponent();
    let mut rng = seeded_rng(seed, 0x11);
    for i in 0..count {
        let n = rng.random_range(3..=5usize);
        let s = rng.random_range(3..=n);
        let e = if p > 1 { rng.random_range(0..=1u32) } else { 0 };
        let q = (p as u32).pow(e);
        let d = rng.random_range(q.max(1)..=q + 2);
        let (v, expected) = lift(gin_lemma_instance(field, n, s, d, e, seed + i as u64))?;
        let gin = lift(generic_initial_space(&v, seed + 1000 + i as u64, 3))?;
        ensure!(gin == expected, "instance {i} (n {n}, s {s}, d {d}, e {e}, p {p}): gin {:?}", gin.to_text(n));
    }
    Ok(count)
}

fn c11_gin(seed: u64, level: Level) -> Check {
    let (per, lemma) = match level {
        Level::Smoke => (2, 6),
        Level::Full => (20, 17),
    };
    let f2 = PrimeField::new(2).expect("prime");
    let f3 = PrimeField::new(3).expect("prime");
    let mut spaces = gin_suite(&Rationals, per, seed)?;
    spaces += gin_suite(&f2, per, seed)?;
    spaces += gin_suite(&f3, per, seed)?;
    let mut inst = lemma_suite(&Rationals, lemma, seed)?;
    inst += lemma_suite(&f2, lemma, seed)?;
    inst += lemma_suite(&f3, lemma.saturating_sub(1).max(1), seed)?;
    Ok(format!("{spaces} random spaces: gin stable and Borel-fixed; {inst} lemma instances have the predicted gin"))
}

fn agree<F: Field>(spec: &IdealSpec<F>, d_min: u32, d_max: u32, k_max: usize, seed: u64) -> std::result::Result<(), String> {
    let opts = SearchOptions { d_min, seed, ..Default::default() };
    let a = lift(sparsest_in_range(spec, d_max, k_max, Method::ExactSlice, &opts))?;
    let b = lift(sparsest_in_range(spec, d_max, k_max, Method::EvalThenConfirm, &opts))?;
    ensure!(
        (a.verdict, a.k, &a.witness) == (b.verdict, b.k, &b.witness),
        "methods disagree on degrees {d_min}..={d_max}, k <= {k_max}: {:?}/{:?} vs {:?}/{:?}",
        a.verdict,
        a.k,
        b.verdict,
        b.k
    );
    Ok(())
}

fn c12_agreement(seed: u64) -> Check {
    let f = fp();
    let mut runs = 0;
    for (m, n) in [(3, 3), (3, 4)] {
        let spec = lift(IdealSpec::minors(&f, VariableMatrix::generic(m, n), 3))?;
        agree(&spec, 1, 4, 5, seed)?;
        agree(&spec, 3, 3, 6, seed)?;
        runs += 2;
    }
    let f2 = PrimeField::new(2).expect("prime");
    agree(&lift(IdealSpec::minors(&f2, VariableMatrix::generic(3, 3), 3))?, 6, 6, 6, seed)?;
    runs += 1;
    for m in [4, 5] {
        let spec = lift(IdealSpec::pfaffians(&f, VariableMatrix::skew(m), 4))?;
        agree(&spec, 1, 3, 3, seed)?;
        agree(&spec, 1, 3, 2, seed)?;
        runs += 2;
    }
    for (m, n) in [(2, 2), (2, 3)] {
        let spec = lift(IdealSpec::minors(&Rationals, VariableMatrix::generic(m, n), 2))?;
        agree(&spec, 1, 3, 2, seed)?;
        runs += 1;
    }
    let spec = lift(IdealSpec::minors(&f, VariableMatrix::generic(3, 4), 3))?;
    let opts = SearchOptions { d_min: 3, seed, collect_all: true, ..Default::default() };
    let mut outputs = vec![];
    for workers in [1, 2, 8] {
        for method in [Method::ExactSlice, Method::EvalThenConfirm] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| e.to_string())?;
            let cert = pool.install(|| sparsest_in_range(&spec, 4, 6, method, &opts)).map_err(|e| e.to_string())?;
            outputs.push((method, cert.to_json()));
        }
    }
    for (method, json) in &outputs {
        let first = &outputs.iter().find(|(m, _)| m == method).expect("present").1;
        ensure!(json == first, "{method:?} certificate differs across worker counts");
    }
    Ok(format!("{runs} searches agree across methods; certificates byte-identical with 1, 2 and 8 workers"))
}

/// Runs the selected criteria in order.
pub fn verify_paper(config: &VerifyConfig) -> VerifyReport {
    let mut criteria = vec![];
    for id in 1..=12usize {
        if !config.only.is_empty() && !config.only.contains(&id) {
            continue;
        }
        criteria.push(run_criterion(id, config));
    }
    VerifyReport { level: config.level, seed: config.seed, passed: criteria.iter().all(|c| c.passed), criteria }
}

pub fn run_criterion(id: usize, config: &VerifyConfig) -> CriterionReport {
    let (seed, level) = (config.seed, config.level);
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| match id {
        1 => c1_term_counts(),
        2 => c2_pfaffian_squares(config.pfaffian_convention),
        3 => c3_groebner(),
        4 => c4_minors(seed),
        5 => c5_pfaffians(seed),
        6 => c6_binomials(seed),
        7 => c7_linear(seed, level),
        8 => c8_family(),
        9 => c9_s3(level),
        10 => c10_completion(seed, level),
        11 => c11_gin(seed, level),
        12 => c12_agreement(seed),
        _ => Err(format!("no criterion {id}")),
    }))
    .unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let elapsed = start.elapsed();
    let (title, bound) = TITLES.get(id.wrapping_sub(1)).copied().unwrap_or(("unknown", 0));
    let within_time = elapsed <= Duration::from_secs(bound);
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let level_name = match level {
        Level::Smoke => "smoke",
        Level::Full => "full",
    };
    CriterionReport {
        id,
        title: title.to_string(),
        passed,
        detail,
        elapsed_ms: elapsed.as_millis() as u64,
        time_bound_s: bound,
        within_time,
        reproduce: format!("sparsest verify-paper --level {level_name} --seed {seed} --only {id}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_terms_oracle() {
        let x = VariableMatrix::generic(3, 3);
        let m = expected_leading(&x, &[IndexSet::range(3), IndexSet::range(3)]);
        // x13 x22 x31
        assert_eq!(m, Monomial::from_pairs([(2, 1), (4, 1), (6, 1)]));
    }

    #[test]
    fn cheap_criteria_pass() {
        let cfg = VerifyConfig { only: vec![1, 2, 8], ..Default::default() };
        let report = verify_paper(&cfg);
        assert!(report.passed, "{:#?}", report.criteria);
        assert_eq!(report.criteria.len(), 3);
    }

    #[test]
    fn unsigned_pfaffians_are_caught() {
        let cfg = VerifyConfig { only: vec![2], pfaffian_convention: PfaffianConvention::Unsigned, ..Default::default() };
        let report = verify_paper(&cfg);
        assert!(!report.passed);
        assert!(report.criteria[0].detail.contains("pfaffian_squared_is_det"));
    }
}

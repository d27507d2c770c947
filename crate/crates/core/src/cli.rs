//! The `sparsest` command line. JSON goes to stdout (or `--out`), a short
//! human summary to stderr.
//!
//! Exit codes: 0 success, 2 invalid input, 3 resource cap, 4 verification
//! failure.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, GaloisField, Rationals};
use crate::gin::{generic_initial_space, gin_lemma_instance, is_borel_fixed, s3_lemma_search, MonomialSpace, DEFAULT_CONFIRMATIONS};
use crate::groebner::{buchberger, slice_from_generators};
use crate::ideal::{Family, FieldDoc, IdealSpec, MatrixDoc, PfaffianConvention, SpecDoc};
use crate::poly::{MatrixKind, MonomialOrder, Polynomial, VarLayout, VariableMatrix};
use crate::sampler::{random_rank_matrix, random_skew_rank_matrix, random_symmetric_rank_matrix, seeded_rng};
use crate::sparsity::{
    classify_minimal, shortest_binomial, sparsest_in_range, verify_prop_linear, Method, SearchOptions, Verdict,
};
use crate::verify::{verify_paper, Level, VerifyConfig};
use crate::with_field;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RESOURCE_CAP: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

const DEFAULT_P: u64 = 32003;

#[derive(Parser, Debug)]
#[command(name = "sparsest", version, about = "Sparsest polynomials in determinantal and Pfaffian ideals")]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the generators of an ideal.
    Generators(SpecArgs),
    /// Reduced Gröbner basis of an ideal.
    Groebner {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "natural")]
        order: OrderArg,
    },
    /// Basis of the degree-d piece of an ideal.
    Slice {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        degree: u32,
    },
    /// Certified sparsest element search.
    Search(SearchArgs),
    /// Shortest binomial in degrees up to d_max.
    Binomial {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        d_max: u32,
    },
    /// Sparsest elements of ideals of general linear subspaces.
    PropLinear {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 3)]
        d_max: u32,
        #[arg(long, default_value_t = 0)]
        p: u64,
        /// Work over GF(p^k) instead of the prime field.
        #[arg(long)]
        extension: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generic initial space of a space of forms.
    Gin(GinArgs),
    /// Test whether a monomial space is p-Borel fixed.
    Borel {
        #[arg(long)]
        nvars: usize,
        /// A monomial such as `x(1)^2*x(3)`; repeat for each basis element.
        #[arg(long = "monomial", required = true)]
        monomials: Vec<String>,
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
    /// Six-element subsets of S_n satisfying the permutation lemma.
    S3 {
        #[arg(long)]
        n: usize,
    },
    /// Random matrices of bounded rank.
    Sample {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = DEFAULT_P)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Run the self-verification suite.
    VerifyPaper {
        #[arg(long, default_value = "smoke")]
        level: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        #[arg(long, value_enum)]
        fault: Option<Fault>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrderArg {
    Natural,
    Grevlex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Fault {
    UnsignedPfaffian,
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Spec JSON file, or inline JSON.
    #[arg(long, conflicts_with_all = ["matrix", "family", "t"])]
    pub spec: Option<String>,
    /// `generic:3x4`, `generic:3`, `skew:5` or `symmetric:3`.
    #[arg(long)]
    pub matrix: Option<String>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Field characteristic; 0 is the rationals.
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    Minors,
    Pfaffians,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, default_value_t = 1)]
    pub d_min: u32,
    #[arg(long)]
    pub d_max: u32,
    #[arg(long)]
    pub k_max: usize,
    #[arg(long, default_value = "exact_slice")]
    pub method: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub no_symmetry: bool,
    #[arg(long)]
    pub collect_all: bool,
    /// Record wall-clock time (makes the output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct GinArgs {
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_CONFIRMATIONS)]
    pub confirmations: usize,
    /// Number of variables for `--poly`.
    #[arg(long, requires = "polys")]
    pub nvars: Option<usize>,
    /// A form in `x(1..nvars)`; repeat for each basis element.
    #[arg(long = "poly")]
    pub polys: Vec<String>,
    /// Random instance `n,s,d,e` of `f * <l_1^q, .., l_s^q>`, q = p^e,
    /// checked against its predicted gin.
    #[arg(long, value_delimiter = ',', conflicts_with = "polys")]
    pub lemma: Option<Vec<u32>>,
}

/// Result of one command.
pub struct Outcome {
    pub json: Value,
    pub summary: String,
    pub code: i32,
}

impl Outcome {
    fn ok(json: Value, summary: String) -> Self {
        Outcome { json, summary, code: EXIT_OK }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap(_) => EXIT_RESOURCE_CAP,
        Error::Internal(_) | Error::GinUnstable(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_INVALID,
    }
}

/// Parses `generic:3x4`, `generic:3`, `skew:5`, `symmetric:3`.
pub fn parse_matrix(s: &str) -> Result<VariableMatrix> {
    let bad = || Error::InvalidSpec(format!("bad matrix {s:?}; expected generic:MxN, skew:N or symmetric:N"));
    let (kind, dims) = s.split_once(':').ok_or_else(bad)?;
    let kind = match kind {
        "generic" => MatrixKind::Generic,
        "skew" => MatrixKind::Skew,
        "symmetric" => MatrixKind::Symmetric,
        _ => return Err(bad()),
    };
    let (m, n) = match dims.split_once('x') {
        Some((m, n)) => (m.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?),
        None => {
            let n: usize = dims.parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if kind != MatrixKind::Generic && m != n {
        return Err(bad());
    }
    VariableMatrix::new(kind, m, n)
}

impl SpecArgs {
    pub fn to_doc(&self) -> Result<SpecDoc> {
        if let Some(s) = &self.spec {
            let text = if s.trim_start().starts_with('{') {
                s.clone()
            } else {
                std::fs::read_to_string(s).map_err(|e| Error::InvalidSpec(format!("{s}: {e}")))?
            };
            let mut doc = SpecDoc::parse(&text)?;
            if let Some(p) = self.p {
                doc.field = FieldDoc { p };
            }
            return Ok(doc);
        }
        let x = parse_matrix(self.matrix.as_deref().ok_or_else(|| Error::InvalidSpec("need --spec or --matrix".into()))?)?;
        let family = match (self.family, x.kind) {
            (Some(FamilyArg::Minors), _) => Family::Minors,
            (Some(FamilyArg::Pfaffians), _) => Family::Pfaffians,
            (None, MatrixKind::Skew) => Family::Pfaffians,
            (None, _) => Family::Minors,
        };
        let t = self.t.unwrap_or(match family {
            Family::Pfaffians => x.n - x.n % 2,
            _ => x.m.min(x.n),
        });
        Ok(SpecDoc {
            matrix: Some(MatrixDoc::from(&x)),
            family,
            t: Some(t),
            field: FieldDoc { p: self.p.unwrap_or(DEFAULT_P) },
            nvars: None,
            generators: None,
        })
    }
}

fn gens_json<F: Field>(spec: &IdealSpec<F>) -> Vec<Value> {
    let layout = spec.layout();
    spec.labelled_generators()
        .iter()
        .map(|(idx, g)| {
            let idx: Vec<Vec<usize>> = idx.iter().map(|s| s.as_slice().to_vec()).collect();
            json!({ "indices": idx, "terms": g.term_count(), "text": g.to_text(layout) })
        })
        .collect()
}

fn cmd_generators<F: Field>(field: &F, doc: &SpecDoc) -> Result<Outcome> {
    let spec = IdealSpec::from_doc(field, doc)?;
    let gens = gens_json(&spec);
    let counts: Vec<usize> = spec.generators().iter().map(|g| g.term_count()).collect();
    let summary = format!("{} generators, term counts {:?}", counts.len(), dedup_sorted(&counts));
    Ok(Outcome::ok(json!({ "spec": spec.to_doc(), "count": gens.len(), "generators": gens }), summary))
}

fn dedup_sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn cmd_groebner<F: Field>(field: &F, doc: &SpecDoc, order: OrderArg) -> Result<Outcome> {
    let spec = IdealSpec::from_doc(field, doc)?;
    let order = match order {
        OrderArg::Natural => spec.natural_order(),
        OrderArg::Grevlex => MonomialOrder::grevlex(spec.nvars()),
    };
    let gens = spec.generators();
    let gb = buchberger(&gens, &order)?;
    let layout = spec.layout();
    let mut given: Vec<String> = gens.iter().map(|g| g.monic().to_text(layout)).collect();
    let mut basis: Vec<String> = gb.elements().iter().map(|g| g.monic().to_text(layout)).collect();
    given.sort();
    basis.sort();
    let already = given == basis;
    let leading: Vec<String> = gb
        .leading_monomials()
        .map(|m| Polynomial::monomial(field, spec.nvars(), field.one(), m.clone()).to_text(layout))
        .collect();
    let summary = format!(
        "{} basis elements from {} generators; generators already a reduced basis: {already}",
        gb.len(),
        gens.len()
    );
    Ok(Outcome::ok(
        json!({
            "spec": spec.to_doc(),
            "order": format!("{:?}", order.kind()).to_lowercase(),
            "generators_form_reduced_basis": already,
            "elements": gb.elements().iter().map(|g| g.to_text(layout)).collect::<Vec<_>>(),
            "leading_monomials": leading,
            "stats": gb.stats(),
        }),
        summary,
    ))
}

fn cmd_slice<F: Field>(field: &F, doc: &SpecDoc, d: u32) -> Result<Outcome> {
    let spec = IdealSpec::from_doc(field, doc)?;
    let slice = slice_from_generators(&spec.generators(), d)?;
    let layout = spec.layout();
    let summary = format!("degree {d}: dimension {} in {} monomials", slice.dim(), slice.monomials().len());
    Ok(Outcome::ok(
        json!({
            "spec": spec.to_doc(),
            "degree": d,
            "dim": slice.dim(),
            "ambient_monomials": slice.monomials().len(),
            "basis": slice.elements().iter().map(|g| g.to_text(layout)).collect::<Vec<_>>(),
        }),
        summary,
    ))
}

fn cmd_search<F: Field>(field: &F, doc: &SpecDoc, a: &SearchArgs) -> Result<Outcome> {
    let spec = IdealSpec::from_doc(field, doc)?;
    let method: Method = a.method.parse()?;
    let opts = SearchOptions {
        d_min: a.d_min,
        seed: a.seed,
        symmetry: !a.no_symmetry,
        collect_all: a.collect_all,
        timing: a.timing,
    };
    let cert = sparsest_in_range(&spec, a.d_max, a.k_max, method, &opts)?;
    let mut out = serde_json::to_value(cert.to_doc()).map_err(|e| Error::Internal(e.to_string()))?;
    let mut summary = match cert.verdict {
        Verdict::Found => format!("minimum {} terms", cert.k.unwrap_or(0)),
        Verdict::Exhausted => format!("no nonzero element with at most {} terms in degrees {}..={}", a.k_max, a.d_min, a.d_max),
        Verdict::ResourceCap => format!("resource cap hit: {}", cert.log.error.clone().unwrap_or_default()),
    };
    if let (Verdict::Found, Some(w)) = (cert.verdict, &cert.witness) {
        if let Ok(c) = classify_minimal(w, &spec) {
            let d = c.to_doc(spec.layout());
            let d = serde_json::to_value(d).map_err(|e| Error::Internal(e.to_string()))?;
            summary.push_str(&format!("; witness {} is {} with e = {}", w.to_text(spec.layout()), d["shape"], d["frobenius_e"]));
            out["classification"] = d;
        }
    }
    let code = if cert.verdict == Verdict::ResourceCap { EXIT_RESOURCE_CAP } else { EXIT_OK };
    Ok(Outcome { json: out, summary, code })
}

fn cmd_binomial<F: Field>(field: &F, doc: &SpecDoc, d_max: u32) -> Result<Outcome> {
    let spec = IdealSpec::from_doc(field, doc)?;
    let found = shortest_binomial(&spec, d_max)?;
    let (json, summary) = match &found {
        Some((d, b)) => {
            let text = b.to_text(spec.layout());
            (json!({ "spec": spec.to_doc(), "d_max": d_max, "degree": d, "binomial": text }), format!("degree {d}: {text}"))
        }
        None => (
            json!({ "spec": spec.to_doc(), "d_max": d_max, "degree": null, "binomial": null }),
            format!("no binomial in degrees <= {d_max}"),
        ),
    };
    Ok(Outcome::ok(json, summary))
}

fn cmd_prop_linear<F: Field>(field: &F, n: usize, r: usize, d_max: u32, seed: u64) -> Result<Outcome> {
    let report = verify_prop_linear(n, r, d_max, field, seed)?;
    let passed = report.passed();
    let summary = format!(
        "n = {n}, r = {r}: minima {} in degrees 1..={d_max}; {} violations",
        report.degrees.iter().map(|d| d.minimum.map_or("-".to_string(), |k| k.to_string())).collect::<Vec<_>>().join(" "),
        report.violations.len()
    );
    let json = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(Outcome { json, summary, code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED } })
}

fn space_json(w: &MonomialSpace, nvars: usize, p: u64) -> Value {
    json!({ "degree": w.degree(), "monomials": w.to_text(nvars), "borel_fixed": is_borel_fixed(w, p) })
}

fn cmd_gin<F: Field>(field: &F, a: &GinArgs) -> Result<Outcome> {
    let p = field.char_exponent();
    if let Some(l) = &a.lemma {
        let &[n, s, d, e] = l.as_slice() else {
            return Err(Error::InvalidSpec(format!("--lemma takes n,s,d,e, got {} values", l.len())));
        };
        let (v, expected) = gin_lemma_instance(field, n as usize, s as usize, d, e, a.seed)?;
        let w = generic_initial_space(&v, a.seed, a.confirmations)?;
        let ok = w == expected;
        let summary = format!("gin {} predicted {}", w.to_text(n as usize).join(", "), if ok { "matches" } else { "DIFFERS" });
        let json = json!({
            "p": field.characteristic(),
            "seed": a.seed,
            "space": v.iter().map(|f| f.to_text(&VarLayout::Plain(n as usize))).collect::<Vec<_>>(),
            "gin": space_json(&w, n as usize, p),
            "expected": space_json(&expected, n as usize, p),
            "matches": ok,
        });
        return Ok(Outcome { json, summary, code: if ok { EXIT_OK } else { EXIT_VERIFY_FAILED } });
    }
    let nvars = a.nvars.ok_or_else(|| Error::InvalidSpec("need --lemma or --nvars with --poly".into()))?;
    let layout = VarLayout::Plain(nvars);
    let v = a.polys.iter().map(|s| Polynomial::parse(field, &layout, s)).collect::<Result<Vec<_>>>()?;
    let w = generic_initial_space(&v, a.seed, a.confirmations)?;
    let summary = format!("gin = <{}>, Borel fixed: {}", w.to_text(nvars).join(", "), is_borel_fixed(&w, p));
    Ok(Outcome::ok(json!({ "p": field.characteristic(), "seed": a.seed, "gin": space_json(&w, nvars, p) }), summary))
}

fn cmd_borel(nvars: usize, monomials: &[String], p: u64) -> Result<Outcome> {
    let desc = FieldDescriptor::from_p(p)?;
    let layout = VarLayout::Plain(nvars);
    let monos = monomials
        .iter()
        .map(|s| {
            let f = Polynomial::parse(&Rationals, &layout, s)?;
            match f.terms() {
                [t] => Ok(t.monomial.clone()),
                _ => Err(Error::InvalidSpec(format!("{s:?} is not a single monomial"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let w = MonomialSpace::new(monos)?;
    let fixed = is_borel_fixed(&w, desc.char_exponent_p);
    Ok(Outcome::ok(space_json(&w, nvars, desc.char_exponent_p), format!("Borel fixed in characteristic {p}: {fixed}")))
}

fn cmd_s3(n: usize) -> Result<Outcome> {
    let found = s3_lemma_search(n)?;
    let subsets: Vec<Vec<Vec<usize>>> =
        found.iter().map(|s| s.perms.iter().map(|p| p.iter().map(|i| i + 1).collect()).collect()).collect();
    let summary = format!("{} six-element subsets of S_{n} satisfy the condition", subsets.len());
    Ok(Outcome::ok(json!({ "n": n, "count": subsets.len(), "subsets": subsets }), summary))
}

fn cmd_sample<F: Field>(field: &F, matrix: &str, r: usize, seed: u64, count: usize) -> Result<Outcome> {
    let x = parse_matrix(matrix)?;
    let mut rng = seeded_rng(seed, 0x5341);
    let mut samples = Vec::with_capacity(count);
    for _ in 0..count {
        let a = match x.kind {
            MatrixKind::Generic => random_rank_matrix(field, x.m, x.n, r, &mut rng)?,
            MatrixKind::Skew => random_skew_rank_matrix(field, x.n, r, &mut rng)?,
            MatrixKind::Symmetric => random_symmetric_rank_matrix(field, x.n, r, &mut rng)?,
        };
        let rows: Vec<Vec<String>> =
            (0..a.rows()).map(|i| a.row(i).iter().map(|e| field.format_elem(e)).collect()).collect();
        samples.push(json!({ "rank": crate::linalg::rank(field, &a), "rows": rows }));
    }
    let summary = format!("{count} samples of a {matrix} matrix with rank <= {r}");
    Ok(Outcome::ok(
        json!({ "matrix": MatrixDoc::from(&x), "rank_bound": r, "p": field.characteristic(), "seed": seed, "samples": samples }),
        summary,
    ))
}

fn cmd_verify(level: &str, seed: u64, only: &[usize], fault: Option<Fault>) -> Result<Outcome> {
    let level: Level = level.parse()?;
    if let Some(bad) = only.iter().find(|&&i| !(1..=12).contains(&i)) {
        return Err(Error::OutOfRange(format!("criterion {bad} not in 1..=12")));
    }
    let config = VerifyConfig {
        level,
        seed,
        only: only.to_vec(),
        pfaffian_convention: match fault {
            Some(Fault::UnsignedPfaffian) => PfaffianConvention::Unsigned,
            None => PfaffianConvention::Standard,
        },
    };
    let report = verify_paper(&config);
    let mut summary = String::new();
    for c in &report.criteria {
        let mark = if c.passed && c.within_time { "PASS" } else { "FAIL" };
        summary.push_str(&format!("[{mark}] {:>2} {} ({} ms): {}\n", c.id, c.title, c.elapsed_ms, c.detail));
        if mark == "FAIL" {
            summary.push_str(&format!("       reproduce: {}\n", c.reproduce));
        }
    }
    summary.push_str(if report.passed { "all criteria passed" } else { "verification FAILED" });
    let code = if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
    let json = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(Outcome { json, summary, code })
}

fn spec_field(doc: &SpecDoc) -> Result<FieldDescriptor> {
    doc.field_descriptor()
}

pub fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Generators(s) => {
            let doc = s.to_doc()?;
            with_field!(spec_field(&doc)?, |f| cmd_generators(&f, &doc))
        }
        Command::Groebner { spec, order } => {
            let doc = spec.to_doc()?;
            with_field!(spec_field(&doc)?, |f| cmd_groebner(&f, &doc, *order))
        }
        Command::Slice { spec, degree } => {
            let doc = spec.to_doc()?;
            with_field!(spec_field(&doc)?, |f| cmd_slice(&f, &doc, *degree))
        }
        Command::Search(a) => {
            let doc = a.spec.to_doc()?;
            with_field!(spec_field(&doc)?, |f| cmd_search(&f, &doc, a))
        }
        Command::Binomial { spec, d_max } => {
            let doc = spec.to_doc()?;
            with_field!(spec_field(&doc)?, |f| cmd_binomial(&f, &doc, *d_max))
        }
        Command::PropLinear { n, r, d_max, p, extension, seed } => match extension {
            Some(k) => cmd_prop_linear(&GaloisField::new(*p as u32, *k)?, *n, *r, *d_max, *seed),
            None => with_field!(FieldDescriptor::from_p(*p)?, |f| cmd_prop_linear(&f, *n, *r, *d_max, *seed)),
        },
        Command::Gin(a) => with_field!(FieldDescriptor::from_p(a.p)?, |f| cmd_gin(&f, a)),
        Command::Borel { nvars, monomials, p } => cmd_borel(*nvars, monomials, *p),
        Command::S3 { n } => cmd_s3(*n),
        Command::Sample { matrix, rank, p, seed, count } => {
            with_field!(FieldDescriptor::from_p(*p)?, |f| cmd_sample(&f, matrix, *rank, *seed, *count))
        }
        Command::VerifyPaper { level, seed, only, fault } => cmd_verify(level, *seed, only, *fault),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be positive");
            return EXIT_INVALID;
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = serde_json::to_string_pretty(&outcome.json).expect("json values serialize") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_INVALID;
            }
        }
        None => print!("{text}"),
    }
    eprintln!("{}", outcome.summary);
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        let mut v = vec!["sparsest"];
        v.extend_from_slice(args);
        match Cli::try_parse_from(&v) {
            Ok(cli) => match execute(&cli.command) {
                Ok(o) => o.code,
                Err(e) => exit_code(&e),
            },
            Err(_) => EXIT_INVALID,
        }
    }

    #[test]
    fn matrix_flag_parses() {
        let x = parse_matrix("generic:3x4").unwrap();
        assert_eq!((x.m, x.n, x.kind), (3, 4, MatrixKind::Generic));
        assert_eq!(parse_matrix("skew:5").unwrap().nvars(), 10);
        assert_eq!(parse_matrix("symmetric:3").unwrap().nvars(), 6);
        for bad in ["generic", "skew:3x4", "hermitian:3", "generic:ax3"] {
            assert!(parse_matrix(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn generator_counts() {
        let cli = Cli::try_parse_from(["sparsest", "generators", "--matrix", "skew:4", "--t", "4"]).unwrap();
        let o = execute(&cli.command).unwrap();
        assert_eq!(o.json["count"], 1);
        assert_eq!(o.json["generators"][0]["terms"], 3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(code(&["generators", "--matrix", "generic:3x3", "--t", "5"]), EXIT_INVALID);
        assert_eq!(code(&["generators", "--spec", "{\"family\": 3}"]), EXIT_INVALID);
        assert_eq!(code(&["search", "--matrix", "generic:2x2", "--t", "2", "--d-max", "2", "--k-max", "2"]), EXIT_OK);
        assert_eq!(code(&["verify-paper", "--only", "2", "--fault", "unsigned-pfaffian"]), EXIT_VERIFY_FAILED);
        assert_eq!(code(&["verify-paper", "--only", "13"]), EXIT_INVALID);
    }

    #[test]
    fn spec_flag_and_inline_json_agree() {
        let a = SpecArgs { spec: None, matrix: Some("generic:3x4".into()), family: None, t: Some(2), p: Some(0) };
        let doc = a.to_doc().unwrap();
        let inline = serde_json::to_string(&doc).unwrap();
        let b = SpecArgs { spec: Some(inline), matrix: None, family: None, t: None, p: None };
        assert_eq!(b.to_doc().unwrap(), doc);
    }
}

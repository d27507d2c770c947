//! Every acceptance criterion at full level, one test per criterion.

use sparsest::verify::{run_criterion, Level, VerifyConfig};

fn check(id: usize) {
    let config = VerifyConfig { level: Level::Full, ..Default::default() };
    let r = run_criterion(id, &config);
    let ok = r.passed && r.within_time;
    println!(
        "criterion {:>2} {}: {} in {} ms (bound {} s) - {}",
        r.id,
        if ok { "PASS" } else { "FAIL" },
        r.title,
        r.elapsed_ms,
        r.time_bound_s,
        r.detail
    );
    assert!(r.passed, "criterion {id} failed: {}\nreproduce: {}", r.detail, r.reproduce);
    assert!(r.within_time, "criterion {id} took {} ms, bound {} s", r.elapsed_ms, r.time_bound_s);
}

macro_rules! criteria {
    ($($name:ident = $id:expr),* $(,)?) => {
        $(#[test] fn $name() { check($id); })*
    };
}

criteria!(
    criterion_01_term_counts = 1,
    criterion_02_pfaffian_squared = 2,
    criterion_03_groebner_facts = 3,
    criterion_04_minor_ideals = 4,
    criterion_05_pfaffian_ideals = 5,
    criterion_06_rank_one_binomials = 6,
    criterion_07_linear_subspaces = 7,
    criterion_08_binomial_family = 8,
    criterion_09_permutation_lemma = 9,
    criterion_10_completions = 10,
    criterion_11_gin_borel = 11,
    criterion_12_determinism = 12,
);

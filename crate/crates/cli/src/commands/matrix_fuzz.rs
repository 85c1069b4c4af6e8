//! Seeded random corpus for the `σ₁σ₁(A|k)` matrix inequality.

use ahgraph_core::matrix::{identity_residual, inequality_gap, is_equality_case, SymMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::report::Report;

/// One matrix per entry, with whether it was built as an equality case for
/// the stored (1-based) `k`.
pub struct Corpus {
    pub matrices: Vec<(SymMatrix, Option<usize>)>,
}

pub fn corpus(cfg: &RunConfig) -> CliResult<Corpus> {
    let f = &cfg.fuzz;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut matrices = Vec::with_capacity(f.count);
    for idx in 0..f.count {
        let n = rng.random_range(f.min_n..=f.max_n);
        if idx % f.equality_every == 0 {
            // diag(c, .., a, .., c) with `a` in slot k.
            let k = rng.random_range(1..=n);
            let a: f64 = rng.random_range(-2.0..2.0);
            let c: f64 = rng.random_range(-2.0..2.0);
            let d: Vec<f64> = (0..n).map(|i| if i + 1 == k { a } else { c }).collect();
            matrices.push((SymMatrix::diagonal(&d)?, Some(k)));
        } else {
            let scale = 10f64.powf(rng.random_range(-1.0..1.0));
            let mut entries = vec![0.0; n * n];
            for e in entries.iter_mut() {
                *e = scale * rng.random_range(-1.0..1.0);
            }
            matrices.push((SymMatrix::from_rows(n, &entries)?, None));
        }
    }
    Ok(Corpus { matrices })
}

#[derive(Clone, Copy)]
struct Stats {
    pairs: usize,
    max_residual: f64,
    min_gap: f64,
}

impl Stats {
    fn new() -> Self {
        Stats { pairs: 0, max_residual: 0.0, min_gap: f64::INFINITY }
    }
}

pub fn run(cfg: &RunConfig) -> CliResult<Report> {
    let tol = cfg.tol();
    let corpus = corpus(cfg)?;
    let mut rep = Report::new("matrix-fuzz");
    rep.info("corpus", "seed", cfg.seed as f64);
    rep.info("corpus", "matrices", corpus.matrices.len() as f64);

    let mut per_n = [Stats::new(); 8];
    let (mut built, mut hits, mut spurious) = (0usize, 0usize, 0usize);
    let mut equality_gap = 0.0_f64;
    for (a, eq_k) in &corpus.matrices {
        let n = a.dim();
        // Residuals scale like the square of the entries.
        let scale = a.norm().powi(2).max(1.0);
        let s = &mut per_n[n];
        for k in 1..=n {
            s.pairs += 1;
            s.max_residual = s.max_residual.max(identity_residual(a, k)? / scale);
            let gap = inequality_gap(a, k)? / scale;
            s.min_gap = s.min_gap.min(gap);
            let eq = is_equality_case(a, k)?;
            if *eq_k == Some(k) {
                built += 1;
                equality_gap = equality_gap.max(gap.abs());
                if eq {
                    hits += 1;
                }
            } else if eq && eq_k.is_none() {
                spurious += 1;
            }
        }
    }
    let mut total = Stats::new();
    for (n, s) in per_n.iter().enumerate().filter(|(_, s)| s.pairs > 0) {
        let case = format!("n={n}");
        rep.info(&case, "(matrix, k) pairs", s.pairs as f64);
        rep.at_most(&case, "max identity residual", s.max_residual, tol.matrix_identity);
        rep.at_least(&case, "min inequality gap", s.min_gap, 0.0, tol.matrix_gap);
        total.pairs += s.pairs;
        total.max_residual = total.max_residual.max(s.max_residual);
        total.min_gap = total.min_gap.min(s.min_gap);
    }
    rep.info("all", "(matrix, k) pairs", total.pairs as f64);
    rep.at_most("all", "max identity residual", total.max_residual, tol.matrix_identity);
    rep.at_least("all", "min inequality gap", total.min_gap, 0.0, tol.matrix_gap);
    rep.info("equality", "constructed equality cases", built as f64);
    rep.compare("equality", "equality hits", hits as f64, built as f64, false, 0.0);
    rep.at_most("equality", "max |gap| on equality cases", equality_gap, tol.matrix_gap);
    rep.info("equality", "equality hits among random matrices", spurious as f64);
    if built == 0 {
        rep.failure("equality", "equality hits", "corpus contains no equality construction");
    }
    Ok(rep)
}

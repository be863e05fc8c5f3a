//! Criterion-versus-exhaustive-evaluation sweeps for polynomials of the form
//! `x^r h(x^((q-1)/s))`.
//!
//! Every job is one field together with one shape: a proper subfield tower (tested with
//! the subfield-norm criterion) or a divisor `s` of `q-1` (tested with the
//! cyclotomic criterion). Jobs run in parallel and are merged in job order, and
//! every job seeds its own generator, so output is independent of the worker
//! count.

use std::sync::Arc;

use anyhow::Context;
use permfield_core::arith::divisors;
use permfield_core::perm::{check_map, is_pp_cyclotomic, is_pp_subfield, CyclotomicShape};
use permfield_core::{build_field_with_limit, Elem, Field, Poly, PrimePower, Tower};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Samples {
    Random(usize),
    /// The full exhaustive domain for every field.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    SubfieldNorm,
    Cyclotomic,
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub max_q: u64,
    pub samples: Samples,
    pub seed: u64,
    /// Fields up to this order also get the exhaustive domain.
    pub exhaustive_up_to: u64,
    pub max_r: u64,
    pub max_degree: usize,
    /// Exhaustive `h` have degree `D` with `q^(D+1)` at most this.
    pub exhaustive_budget: u64,
    pub criteria: Vec<Criterion>,
    pub max_field_size: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            max_q: 64,
            samples: Samples::Random(200),
            seed: 0,
            exhaustive_up_to: 0,
            max_r: 8,
            max_degree: 4,
            exhaustive_budget: 4096,
            criteria: vec![Criterion::SubfieldNorm, Criterion::Cyclotomic],
            max_field_size: permfield_core::field::DEFAULT_MAX_ORDER,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub q: u32,
    pub criterion: Criterion,
    /// Subfield order `Q` for towers, `s` for the cyclotomic criterion.
    pub shape: u64,
    pub comparisons: u64,
    pub permutations: u64,
    pub mismatches: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepMismatch {
    pub q: u32,
    pub criterion: Criterion,
    pub shape: u64,
    pub r: u64,
    /// Coefficient codes of `h`, constant term first.
    pub h: Vec<u32>,
    pub criterion_says: bool,
    pub oracle_says: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepSummary {
    pub rows: Vec<SweepRow>,
    /// At most [`MAX_REPORTED_MISMATCHES`] examples.
    pub mismatches: Vec<SweepMismatch>,
    pub tower_comparisons: u64,
    pub cyclotomic_comparisons: u64,
    pub total_mismatches: u64,
}

pub const MAX_REPORTED_MISMATCHES: usize = 20;

impl SweepSummary {
    pub fn total_comparisons(&self) -> u64 {
        self.tower_comparisons + self.cyclotomic_comparisons
    }
}

struct Job {
    field: Arc<Field>,
    criterion: Criterion,
    tower: Option<Tower>,
    s: u64,
}

impl Job {
    fn shape_param(&self) -> u64 {
        self.tower.map_or(self.s, |t| t.sub().q() as u64)
    }
}

/// Largest `D <= max_degree` with `q^(D+1) <= budget`, at least 0.
pub fn exhaustive_degree(q: u64, max_degree: usize, budget: u64) -> usize {
    let mut d = 0;
    let mut size = q.saturating_mul(q);
    while d < max_degree && size <= budget {
        d += 1;
        size = size.saturating_mul(q);
    }
    d
}

fn jobs(opts: &SweepOptions) -> anyhow::Result<Vec<Job>> {
    let mut out = Vec::new();
    for q in 2..=opts.max_q {
        let Ok(pp) = PrimePower::from_order(q) else { continue };
        let towers = Tower::proper_towers(pp);
        let want_towers = opts.criteria.contains(&Criterion::SubfieldNorm) && !towers.is_empty();
        let want_cyclo = opts.criteria.contains(&Criterion::Cyclotomic);
        if !want_towers && !want_cyclo {
            continue;
        }
        let field = Arc::new(build_field_with_limit(pp, opts.max_field_size).with_context(|| format!("field of order {q}"))?);
        if want_towers {
            for t in towers {
                out.push(Job { field: field.clone(), criterion: Criterion::SubfieldNorm, tower: Some(t), s: t.sub().q() as u64 - 1 });
            }
        }
        if want_cyclo {
            for s in divisors(q - 1) {
                out.push(Job { field: field.clone(), criterion: Criterion::Cyclotomic, tower: None, s });
            }
        }
    }
    Ok(out)
}

fn job_rng(seed: u64, job: &Job) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((job.field.q() as u64) << 32) ^ (job.shape_param() << 1) ^ (job.criterion == Criterion::Cyclotomic) as u64);
    rng
}

/// Random `h` of degree at most `max_degree`: uniform coefficients, subfield
/// (or prime-field) coefficients, or a sparse binomial.
fn random_h(rng: &mut ChaCha8Rng, field: &Arc<Field>, sub: &[Elem], max_degree: usize) -> Poly {
    let q = field.q();
    let uniform = |rng: &mut ChaCha8Rng| Elem::from_code(rng.gen_range(0..q));
    match rng.gen_range(0..3) {
        0 => {
            let d = rng.gen_range(0..=max_degree);
            Poly::from_coeffs(field, (0..=d).map(|_| uniform(rng)).collect())
        }
        1 => {
            let d = rng.gen_range(0..=max_degree);
            Poly::from_coeffs(field, (0..=d).map(|_| sub[rng.gen_range(0..sub.len())]).collect())
        }
        _ => {
            let k = rng.gen_range(1..=max_degree.max(1));
            let (c, d) = (uniform(rng), uniform(rng));
            Poly::from_terms(field, &[(k, c), (0, d)])
        }
    }
}

struct JobResult {
    row: SweepRow,
    mismatches: Vec<SweepMismatch>,
}

fn run_job(job: &Job, opts: &SweepOptions) -> anyhow::Result<JobResult> {
    let field = &job.field;
    let q = field.q() as u64;
    let mut row = SweepRow {
        q: field.q(),
        criterion: job.criterion,
        shape: job.shape_param(),
        comparisons: 0,
        permutations: 0,
        mismatches: 0,
    };
    let mut mismatches = Vec::new();
    let mut compare = |r: u64, h: Poly| -> anyhow::Result<()> {
        let (shape, says) = match job.tower {
            Some(t) => {
                let says = is_pp_subfield(&t, r, &h)?.is_permutation;
                (CyclotomicShape::for_tower(&t, r, h)?, says)
            }
            None => {
                let shape = CyclotomicShape::new(r, job.s, h)?;
                let says = is_pp_cyclotomic(&shape)?.is_permutation;
                (shape, says)
            }
        };
        let oracle = check_map(field, |a| shape.eval(a)).is_permutation;
        row.comparisons += 1;
        row.permutations += oracle as u64;
        if says != oracle {
            row.mismatches += 1;
            if mismatches.len() < MAX_REPORTED_MISMATCHES {
                mismatches.push(SweepMismatch {
                    q: field.q(),
                    criterion: job.criterion,
                    shape: row.shape,
                    r,
                    h: shape.h().coeffs().iter().map(|c| c.code()).collect(),
                    criterion_says: says,
                    oracle_says: oracle,
                });
            }
        }
        Ok(())
    };

    let exhaustive = opts.samples == Samples::All || q <= opts.exhaustive_up_to;
    if exhaustive {
        let d = exhaustive_degree(q, opts.max_degree, opts.exhaustive_budget);
        let count = q.pow(d as u32 + 1);
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..=d {
                coeffs.push(Elem::from_code((v % q) as u32));
                v /= q;
            }
            let h = Poly::from_coeffs(field, coeffs);
            for r in 1..=opts.max_r {
                compare(r, h.clone())?;
            }
        }
    }
    if let Samples::Random(n) = opts.samples {
        let mut rng = job_rng(opts.seed, job);
        let sub: Vec<Elem> = match &job.tower {
            Some(t) => field.subfield_elements(t)?,
            None => (0..field.characteristic()).map(Elem::from_code).collect(),
        };
        for _ in 0..n {
            let r = rng.gen_range(1..=opts.max_r);
            let h = random_h(&mut rng, field, &sub, opts.max_degree);
            compare(r, h)?;
        }
    }
    Ok(JobResult { row, mismatches })
}

/// Runs the sweep on the current rayon pool.
pub fn run_sweep(opts: &SweepOptions) -> anyhow::Result<SweepSummary> {
    let jobs = jobs(opts)?;
    let results: Vec<JobResult> = jobs.par_iter().map(|j| run_job(j, opts)).collect::<anyhow::Result<_>>()?;
    let mut summary = SweepSummary::default();
    for r in results {
        match r.row.criterion {
            Criterion::SubfieldNorm => summary.tower_comparisons += r.row.comparisons,
            Criterion::Cyclotomic => summary.cyclotomic_comparisons += r.row.comparisons,
        }
        summary.total_mismatches += r.row.mismatches;
        let room = MAX_REPORTED_MISMATCHES - summary.mismatches.len().min(MAX_REPORTED_MISMATCHES);
        summary.mismatches.extend(r.mismatches.into_iter().take(room));
        summary.rows.push(r.row);
    }
    Ok(summary)
}

//! Rayon-backed drivers for the embarrassingly parallel range scans.
//!
//! Every driver shards a range, runs the pure per-shard function from the
//! core crate, and merges shard results in range order, so the output is
//! byte-identical no matter how many workers run or how they interleave.
//! `jobs = 1` gives a fully sequential reference run.

use rayon::prelude::*;
use rayon::ThreadPool;

use sloane_core::numbase::{digit_stats, from_digits, to_digits, Base, Natural};
use sloane_core::orbits::{
    fold_record_setters, iterate, persistence, OrbitBudget, PersistenceProfile,
};
use sloane_core::sloanemaps::{step, step_from_stats, MapSpec};
use sloane_core::verify::{
    growth_report_from_persistences, verify_s1b_attractors_range,
    verify_t1b3_classification_range, GrowthReport, Survey, VerificationReport,
};
use sloane_core::Error;

const SHARD: u64 = 4096;

pub fn make_pool(jobs: usize) -> ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

fn shards(lo: u64, hi: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = hi.min(start + SHARD - 1);
        out.push((start, end));
        start = end + 1;
    }
    out
}

pub fn par_verify_s1b(
    pool: &ThreadPool,
    b: Base,
    n_max: u64,
    budget: &OrbitBudget,
) -> VerificationReport {
    let parts: Vec<VerificationReport> = pool.install(|| {
        shards(1, n_max)
            .into_par_iter()
            .map(|(lo, hi)| verify_s1b_attractors_range(b, lo, hi, budget))
            .collect()
    });
    let mut merged = VerificationReport::new(
        "s1b-attractors",
        format!("shifted(t=1,b={b}) for n in 1..={n_max}"),
    );
    for part in parts {
        merged.merge(part);
    }
    merged
}

pub fn par_verify_t1b3(pool: &ThreadPool, n_max: u64, budget: &OrbitBudget) -> VerificationReport {
    let parts: Vec<VerificationReport> = pool.install(|| {
        shards(1, n_max)
            .into_par_iter()
            .map(|(lo, hi)| verify_t1b3_classification_range(lo, hi, budget))
            .collect()
    });
    let mut merged = VerificationReport::new(
        "t1b3-classification",
        format!("predicate vs simulation for n in 1..={n_max}"),
    );
    for part in parts {
        merged.merge(part);
    }
    merged
}

/// Persistence of every start in `1..=n_max`, in order.
pub fn par_persistences(
    pool: &ThreadPool,
    map: &MapSpec,
    n_max: u64,
    budget: &OrbitBudget,
) -> Vec<(u64, Option<u64>)> {
    pool.install(|| {
        shards(1, n_max)
            .into_par_iter()
            .flat_map_iter(|(lo, hi)| {
                (lo..=hi)
                    .map(|n| (n, persistence(map, &Natural::from(n), budget)))
                    .collect::<Vec<_>>()
            })
            .collect()
    })
}

pub fn par_record_setters(
    pool: &ThreadPool,
    map: &MapSpec,
    n_max: u64,
    budget: &OrbitBudget,
) -> PersistenceProfile {
    fold_record_setters(par_persistences(pool, map, n_max, budget).into_iter())
}

pub fn par_growth_report(
    pool: &ThreadPool,
    map: &MapSpec,
    checkpoints: &[u64],
    budget: &OrbitBudget,
    slack: f64,
) -> Result<GrowthReport, Error> {
    let last = *checkpoints.last().ok_or(Error::InvalidCheckpoints { why: "no checkpoints" })?;
    let pairs = par_persistences(pool, map, last, budget);
    growth_report_from_persistences(map, checkpoints, slack, pairs.into_iter())
}

pub fn par_survey(
    pool: &ThreadPool,
    map: &MapSpec,
    sample: &[Natural],
    budget: &OrbitBudget,
) -> Survey {
    let statuses: Vec<_> = pool.install(|| {
        sample.par_iter().map(|n| iterate(map, n, budget).status).collect()
    });
    Survey::tally(statuses.into_iter())
}

/// Checks `step_from_stats == step` over `1..=n_max` for one map;
/// returns the number of mismatches (expected zero).
pub fn par_oracle_equivalence(pool: &ThreadPool, map: &MapSpec, n_max: u64) -> u64 {
    pool.install(|| {
        shards(1, n_max)
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut bad = 0u64;
                for n in lo..=hi {
                    let nat = Natural::from(n);
                    let direct = step(map, &nat);
                    let via_stats =
                        step_from_stats(map, &digit_stats(&nat, map.base())).unwrap();
                    if direct != via_stats {
                        bad += 1;
                    }
                }
                bad
            })
            .sum()
    })
}

/// Round-trips pseudorandom naturals (up to `max_bits` bits, bases drawn
/// from 2..=16) through digit extraction; returns the number of failures.
/// Fully deterministic for a fixed seed.
pub fn par_roundtrip_fuzz(pool: &ThreadPool, samples: u64, max_bits: u64, seed: u64) -> u64 {
    use rand::{Rng, SeedableRng};
    pool.install(|| {
        (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ i);
                let bits = rng.gen_range(1..=max_bits);
                let bytes: Vec<u8> = (0..bits.div_ceil(8)).map(|_| rng.gen()).collect();
                let mut n = Natural::from_bytes_le(&bytes);
                // trim to the exact requested bit length
                n >>= (bytes.len() as u64 * 8).saturating_sub(bits);
                let b = Base::new(rng.gen_range(2..=16)).unwrap();
                let dv = to_digits(&n, b);
                u64::from(from_digits(&dv) != n)
            })
            .sum()
    })
}

//! Executable verification suites for the map dynamics: attractor
//! structure of the 1-shifted maps, the base-3 classification predicate,
//! the inequality lemmas behind the convergence/divergence results, the
//! c0 threshold roots, and persistence-growth reports.
//!
//! Inequalities over the reals are checked with directed-rounding
//! intervals; a check either separates the two sides rigorously or raises
//! the working precision (starting at 128 bits, doubling up to 8192)
//! before giving up with a precision error. It never passes on
//! overlapping enclosures.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::interval::{with_rising_precision, Interval, RealCtx};
use crate::numbase::{to_digits, Base, Natural};
use crate::orbits::{iterate, persistence, OrbitBudget, OrbitStatus};
use crate::primes::is_prime;
use crate::sloanemaps::MapSpec;

/// Working precision ladder for interval checks, in bits.
pub const START_PRECISION: usize = 128;
pub const MAX_PRECISION: usize = 8192;

/// At most this many counterexamples are stored verbatim in a report;
/// the total count is always exact.
const MAX_STORED_VIOLATIONS: usize = 64;

/// One counterexample: which case failed and what was observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub case: String,
    pub detail: String,
}

/// Outcome of one verification suite. `passed()` holds exactly when no
/// violation was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub checked: String,
    cases: u64,
    violations_total: u64,
    violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, checked: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            checked: checked.into(),
            cases: 0,
            violations_total: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn record_cases(&mut self, n: u64) {
        self.cases += n;
    }

    pub fn add_violation(&mut self, v: Violation) {
        self.violations_total += 1;
        if self.violations.len() < MAX_STORED_VIOLATIONS {
            self.violations.push(v);
        }
    }

    pub fn cases(&self) -> u64 {
        self.cases
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn violations_total(&self) -> u64 {
        self.violations_total
    }

    pub fn passed(&self) -> bool {
        self.violations_total == 0
    }

    /// Accumulates another shard of the same suite.
    pub fn merge(&mut self, other: VerificationReport) {
        self.cases += other.cases;
        self.violations_total += other.violations_total;
        for v in other.violations {
            if self.violations.len() < MAX_STORED_VIOLATIONS {
                self.violations.push(v);
            }
        }
        self.notes.extend(other.notes);
    }
}

// ---------------------------------------------------------------------------
// 1-shifted attractors
// ---------------------------------------------------------------------------

/// The attractors of the 1-shifted map in base b: every orbit ends in the
/// cycle (2, 3, ..., b-1, b) or at the fixed point 2b-2; in base 2 the
/// only attractor is the fixed point 2.
fn s1b_expected(b: Base) -> (Vec<Natural>, Natural) {
    let bv = b.get() as u64;
    let cycle: Vec<Natural> = if bv == 2 {
        alloc::vec![Natural::from(2u32)]
    } else {
        (2..=bv).map(Natural::from).collect()
    };
    (cycle, Natural::from(2 * bv - 2))
}

/// Checks that every orbit of the 1-shifted map with start in `lo..=hi`
/// reaches exactly the predicted attractor set.
pub fn verify_s1b_attractors_range(
    b: Base,
    lo: u64,
    hi: u64,
    budget: &OrbitBudget,
) -> VerificationReport {
    let map = MapSpec::shifted(1, b);
    let (expected_cycle, expected_fixed) = s1b_expected(b);
    let mut report = VerificationReport::new(
        "s1b-attractors",
        format!("shifted(t=1,b={b}) for n in {lo}..={hi}"),
    );
    for n in lo..=hi {
        report.record_cases(1);
        let r = iterate(&map, &Natural::from(n), budget);
        let ok = match r.status {
            OrbitStatus::FixedPoint => {
                r.cycle_members[0] == expected_fixed
                    || (b.get() == 2 && r.cycle_members[0] == expected_cycle[0])
            }
            OrbitStatus::Cycle => {
                let mut members = r.cycle_members.clone();
                members.sort();
                members == expected_cycle
            }
            _ => false,
        };
        if !ok {
            report.add_violation(Violation {
                case: format!("n={n}"),
                detail: format!("status {:?}, members {:?}", r.status, r.cycle_members),
            });
        }
    }
    report
}

/// [`verify_s1b_attractors_range`] from 1 to `n_max` with default budgets.
pub fn verify_s1b_attractors(b: Base, n_max: u64) -> VerificationReport {
    verify_s1b_attractors_range(b, 1, n_max, &OrbitBudget::default())
}

// ---------------------------------------------------------------------------
// (1,3) classification
// ---------------------------------------------------------------------------

/// Where an orbit of the 1-shifted base-3 map ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T1b3Attractor {
    /// The cycle (2, 10_3).
    CycleTwoThree,
    /// The fixed point 11_3 = 4.
    FixedPointFour,
}

/// Predicts the attractor of n >= 1 without iterating: the orbit reaches
/// the cycle (2, 10_3) exactly when n or 2^{#1(n)_3} lacks the digit 1 in
/// ternary; otherwise it reaches the fixed point 11_3.
pub fn predict_t1b3(n: &Natural) -> T1b3Attractor {
    let b3 = Base::new(3).unwrap();
    let ones = to_digits(n, b3).count_of(1);
    if ones == 0 {
        return T1b3Attractor::CycleTwoThree;
    }
    let pow = Natural::from(1u32) << ones;
    if to_digits(&pow, b3).count_of(1) == 0 {
        T1b3Attractor::CycleTwoThree
    } else {
        T1b3Attractor::FixedPointFour
    }
}

/// Simulates orbits of the 1-shifted base-3 map over `lo..=hi` and checks
/// each against [`predict_t1b3`].
pub fn verify_t1b3_classification_range(
    lo: u64,
    hi: u64,
    budget: &OrbitBudget,
) -> VerificationReport {
    let b3 = Base::new(3).unwrap();
    let map = MapSpec::shifted(1, b3);
    let four = Natural::from(4u32);
    let mut report = VerificationReport::new(
        "t1b3-classification",
        format!("predicate vs simulation for n in {lo}..={hi}"),
    );
    for n in lo..=hi {
        report.record_cases(1);
        let nat = Natural::from(n);
        let predicted = predict_t1b3(&nat);
        let r = iterate(&map, &nat, budget);
        let simulated = match r.status {
            OrbitStatus::FixedPoint if r.cycle_members[0] == four => {
                Some(T1b3Attractor::FixedPointFour)
            }
            OrbitStatus::Cycle if r.cycle_members.len() == 2 => {
                Some(T1b3Attractor::CycleTwoThree)
            }
            _ => None,
        };
        if simulated != Some(predicted) {
            report.add_violation(Violation {
                case: format!("n={n}"),
                detail: format!("predicted {predicted:?}, simulation found {:?}", r.status),
            });
        }
    }
    report
}

pub fn verify_t1b3_classification(n_max: u64) -> VerificationReport {
    verify_t1b3_classification_range(1, n_max, &OrbitBudget::default())
}

// ---------------------------------------------------------------------------
// Inequality lemmas
// ---------------------------------------------------------------------------

/// Outcome of one rigorous strict comparison.
enum Checked {
    Holds,
    Fails,
    Unknown,
}

fn check_strict_less(lhs: &Interval, rhs: &Interval) -> Checked {
    match lhs.strictly_less(rhs) {
        Some(true) => Checked::Holds,
        Some(false) => Checked::Fails,
        None => Checked::Unknown,
    }
}

/// Rolling window of `ln` enclosures at consecutive integers.
struct LnWindow {
    first: u64,
    values: Vec<Interval>,
}

impl LnWindow {
    fn new(first: u64, len: usize, ctx: &mut RealCtx) -> Self {
        let values = (first..first + len as u64).map(|k| Interval::ln_u64(k, ctx)).collect();
        LnWindow { first, values }
    }

    fn get(&self, k: u64) -> &Interval {
        &self.values[(k - self.first) as usize]
    }

    fn advance(&mut self, ctx: &mut RealCtx) {
        let next = self.first + self.values.len() as u64;
        self.values.remove(0);
        self.values.push(Interval::ln_u64(next, ctx));
        self.first += 1;
    }
}

/// Verifies, for every b in `b_lo..=b_hi` (b >= 5), the three inequalities
///
/// 1. (b+1)!^{log_b(b+1)/b} < b
/// 2. (b+1)^{log_b(b-1)} < b
/// 3. (b+1)^{2 log_b(b-2) + log_b(b+1)} < b^3
///
/// each reduced to products of logarithms and separated by intervals.
pub fn check_lemma_t2blarge(b_lo: u32, b_hi: u32) -> Result<VerificationReport, Error> {
    if b_lo < 5 {
        return Err(Error::OutsideLemmaDomain { why: "lemma requires b >= 5" });
    }
    if b_lo > b_hi {
        return Err(Error::EmptyRange { lo: b_lo as u64, hi: b_hi as u64 });
    }
    with_rising_precision(START_PRECISION, MAX_PRECISION, |ctx| {
        let mut report = VerificationReport::new(
            "lemma-t2blarge",
            format!("three inequalities for b in {b_lo}..={b_hi}"),
        );
        // ln((b+1)!) built incrementally while b ascends
        let mut lnfact = Interval::zero(ctx);
        for k in 2..=(b_lo as u64 + 1) {
            lnfact = lnfact.add(&Interval::ln_u64(k, ctx), ctx);
        }
        // window holds ln(b-2), ln(b-1), ln(b), ln(b+1)
        let mut window = LnWindow::new(b_lo as u64 - 2, 4, ctx);
        for b in b_lo..=b_hi {
            let bu = b as u64;
            if b > b_lo {
                window.advance(ctx);
                lnfact = lnfact.add(window.get(bu + 1), ctx);
            }
            let ln_b = window.get(bu);
            let ln_b1 = window.get(bu + 1);
            let ln_bm1 = window.get(bu - 1);
            let ln_bm2 = window.get(bu - 2);
            let ln_b_sq = ln_b.mul(ln_b, ctx);

            // item 1: ln((b+1)!) * ln(b+1) < b * (ln b)^2
            let items = [
                (1, lnfact.mul(ln_b1, ctx), ln_b_sq.scale_u64(bu, ctx)),
                // item 2: ln(b+1) * ln(b-1) < (ln b)^2
                (2, ln_b1.mul(ln_bm1, ctx), ln_b_sq.clone()),
                // item 3: ln(b+1) * (2 ln(b-2) + ln(b+1)) < 3 (ln b)^2
                (
                    3,
                    ln_b1.mul(&ln_bm2.scale_u64(2, ctx).add(ln_b1, ctx), ctx),
                    ln_b_sq.scale_u64(3, ctx),
                ),
            ];
            for (idx, lhs, rhs) in items {
                report.record_cases(1);
                match check_strict_less(&lhs, &rhs) {
                    Checked::Holds => {}
                    Checked::Fails => report.add_violation(Violation {
                        case: format!("b={b} item {idx}"),
                        detail: "inequality certainly fails".into(),
                    }),
                    Checked::Unknown => return None,
                }
            }
        }
        Some(report)
    })
}

/// All pairs (t, b) with `b_lo <= b <= b_hi` and `1 <= t <= b/4`.
pub fn b4_pairs_grid(b_lo: u32, b_hi: u32) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    for b in b_lo..=b_hi {
        for t in 1..=(b / 4) {
            pairs.push((t, b));
        }
    }
    pairs
}

/// Table of `ln(k!)` enclosures for `k` up to `max_n`.
fn lnfact_table(max_n: u64, ctx: &mut RealCtx) -> Vec<Interval> {
    let mut out = Vec::with_capacity(max_n as usize + 1);
    out.push(Interval::zero(ctx)); // 0!
    let mut acc = Interval::zero(ctx);
    for k in 1..=max_n {
        acc = acc.add(&Interval::ln_u64(k, ctx), ctx);
        out.push(acc.clone());
    }
    out
}

/// Verifies, for each pair `(t, b)` with b >= 5 and t <= b/4, the two
/// inequalities
///
/// i.  b^{log_b(t) - 1} * (b+t-1)^{log_b(b+t-1)} / b < 1
/// ii. ((b+t-1)!/(t-1)!)^{log_b(b+t-1)/b} < b
pub fn check_lemma_b4(pairs: &[(u32, u32)]) -> Result<VerificationReport, Error> {
    for &(t, b) in pairs {
        if b < 5 {
            return Err(Error::OutsideLemmaDomain { why: "lemma requires b >= 5" });
        }
        if t == 0 || t > b / 4 {
            return Err(Error::OutsideLemmaDomain { why: "lemma requires 1 <= t <= b/4" });
        }
    }
    let max_n = pairs.iter().map(|&(t, b)| (b + t - 1) as u64).max().unwrap_or(0);
    with_rising_precision(START_PRECISION, MAX_PRECISION, |ctx| {
        let mut report = VerificationReport::new(
            "lemma-b4",
            format!("two inequalities over {} (t,b) pairs", pairs.len()),
        );
        let lf = lnfact_table(max_n, ctx);
        for &(t, b) in pairs {
            let (tu, bu) = (t as u64, b as u64);
            let ln_t = Interval::ln_u64(tu, ctx);
            let ln_b = Interval::ln_u64(bu, ctx);
            let ln_btm1 = Interval::ln_u64(bu + tu - 1, ctx);
            let ln_b_sq = ln_b.mul(&ln_b, ctx);

            // i: ln t * ln b + (ln(b+t-1))^2 < 2 (ln b)^2
            let lhs1 = ln_t.mul(&ln_b, ctx).add(&ln_btm1.mul(&ln_btm1, ctx), ctx);
            let rhs1 = ln_b_sq.scale_u64(2, ctx);
            // ii: (ln((b+t-1)!) - ln((t-1)!)) * ln(b+t-1) < b (ln b)^2
            let lf_ratio = lf[(bu + tu - 1) as usize].sub(&lf[(tu - 1) as usize], ctx);
            let lhs2 = lf_ratio.mul(&ln_btm1, ctx);
            let rhs2 = ln_b_sq.scale_u64(bu, ctx);

            for (idx, lhs, rhs) in [(1, lhs1, rhs1), (2, lhs2, rhs2)] {
                report.record_cases(1);
                match check_strict_less(&lhs, &rhs) {
                    Checked::Holds => {}
                    Checked::Fails => report.add_violation(Violation {
                        case: format!("t={t} b={b} item {idx}"),
                        detail: "inequality certainly fails".into(),
                    }),
                    Checked::Unknown => return None,
                }
            }
        }
        Some(report)
    })
}

/// Per-base outcome of the large-t lemma check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TLargeRow {
    pub b: u32,
    pub t: u64,
    pub item1: bool,
    pub item2: bool,
}

/// Outcome of the asymptotic large-t lemma scan. The lemma only promises
/// the inequalities from some b0 onward, so failures below the empirical
/// threshold are expected and reported as data, not violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLargeReport {
    pub rows: Vec<TLargeRow>,
    /// Smallest scanned b from which both items hold for every larger
    /// scanned b; `None` when no such suffix exists in the range.
    pub empirical_b0: Option<u32>,
}

impl TLargeReport {
    pub fn verification_report(&self, c_num: u64, c_den: u64) -> VerificationReport {
        let mut report = VerificationReport::new(
            "lemma-tlarge",
            format!("asymptotic inequalities at c={c_num}/{c_den} over {} bases", self.rows.len()),
        );
        report.record_cases(self.rows.len() as u64 * 2);
        match self.empirical_b0 {
            Some(b0) => report.notes.push(format!("both items hold from b={b0} onward")),
            None => report.notes.push("no suffix of the range satisfies both items".into()),
        }
        report
    }
}

/// Scans `b_lo..=b_hi` (optionally primes only) with t = ceil(c*b) and
/// delta = 1/b - 1/b^2, checking
///
/// i.  ((t-1+b)!/(t-1)!)^{delta log_b t} > b
/// ii. t^{delta log_b t} * ((t-1+b)!/(t-1)!)^{(b-2) delta^2 (log_b t)^2} > b
///
/// The shift c is taken as an exact rational c_num/c_den and must exceed
/// the threshold root 0.865722.
pub fn check_lemma_tlarge(
    c_num: u64,
    c_den: u64,
    b_lo: u32,
    b_hi: u32,
    primes_only: bool,
) -> Result<TLargeReport, Error> {
    if c_den == 0 || c_num == 0 {
        return Err(Error::OutsideLemmaDomain { why: "c must be a positive rational" });
    }
    // c > 0.865722 exactly
    if (c_num as u128) * 1_000_000 <= 865_722u128 * c_den as u128 {
        return Err(Error::OutsideLemmaDomain { why: "c must exceed 0.865722" });
    }
    if b_lo < 2 || b_lo > b_hi {
        return Err(Error::EmptyRange { lo: b_lo as u64, hi: b_hi as u64 });
    }
    let bases: Vec<u32> =
        (b_lo..=b_hi).filter(|&b| !primes_only || is_prime(b as u64)).collect();
    let shift_of = |b: u32| -> u64 {
        (((c_num as u128) * b as u128 + c_den as u128 - 1) / c_den as u128) as u64
    };
    let max_n = bases.iter().map(|&b| shift_of(b) + b as u64 - 1).max().unwrap_or(0);

    with_rising_precision(START_PRECISION, MAX_PRECISION, |ctx| {
        let lf = lnfact_table(max_n, ctx);
        let mut rows = Vec::with_capacity(bases.len());
        for &b in &bases {
            let bu = b as u64;
            let t = shift_of(b);
            let delta = Interval::from_ratio(bu - 1, bu * bu, ctx);
            let ln_t = Interval::ln_u64(t, ctx);
            let ln_b = Interval::ln_u64(bu, ctx);
            let ln_b_sq = ln_b.mul(&ln_b, ctx);
            let lf_ratio = lf[(t + bu - 1) as usize].sub(&lf[(t - 1) as usize], ctx);

            // i: delta * ln t * LF > (ln b)^2
            let lhs1 = delta.mul(&ln_t, ctx).mul(&lf_ratio, ctx);
            let holds1 = match lhs1.strictly_greater(&ln_b_sq) {
                Some(v) => v,
                None => return None,
            };
            // ii: delta (ln t)^2 ln b + (b-2) delta^2 (ln t)^2 LF > (ln b)^3
            let ln_t_sq = ln_t.mul(&ln_t, ctx);
            let term1 = delta.mul(&ln_t_sq, ctx).mul(&ln_b, ctx);
            let term2 = delta
                .mul(&delta, ctx)
                .scale_u64(bu - 2, ctx)
                .mul(&ln_t_sq, ctx)
                .mul(&lf_ratio, ctx);
            let lhs2 = term1.add(&term2, ctx);
            let rhs2 = ln_b_sq.mul(&ln_b, ctx);
            let holds2 = match lhs2.strictly_greater(&rhs2) {
                Some(v) => v,
                None => return None,
            };
            rows.push(TLargeRow { b, t, item1: holds1, item2: holds2 });
        }
        let mut empirical_b0 = None;
        for row in rows.iter().rev() {
            if row.item1 && row.item2 {
                empirical_b0 = Some(row.b);
            } else {
                break;
            }
        }
        Some(TLargeReport { rows, empirical_b0 })
    })
}

// ---------------------------------------------------------------------------
// c0 roots
// ---------------------------------------------------------------------------

/// Which threshold constant to solve for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootTarget {
    /// Root of 2 log(1+c) + c log(1+1/c) = 1 (convergence threshold).
    SmallT,
    /// Root of 2 log c + log(c+1) + c log(1+1/c) = 1 (divergence threshold).
    LargeT,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSpec {
    pub target: RootTarget,
    pub bracket: (f64, f64),
    pub tolerance: f64,
}

impl RootSpec {
    pub fn new(target: RootTarget, lo: f64, hi: f64, tolerance: f64) -> Result<Self, Error> {
        if !(0.0 < lo && lo < hi && hi < 1.0) {
            return Err(Error::InvalidRootSpec { why: "bracket must satisfy 0 < lo < hi < 1" });
        }
        if !(tolerance > 0.0) {
            return Err(Error::InvalidRootSpec { why: "tolerance must be positive" });
        }
        Ok(RootSpec { target, bracket: (lo, hi), tolerance })
    }
}

fn c0_objective(target: RootTarget, c: f64) -> f64 {
    let log1p_inv = libm::log(1.0 + 1.0 / c);
    match target {
        RootTarget::SmallT => 2.0 * libm::log(1.0 + c) + c * log1p_inv - 1.0,
        RootTarget::LargeT => 2.0 * libm::log(c) + libm::log(c + 1.0) + c * log1p_inv - 1.0,
    }
}

/// Bracketed bisection for the threshold constants c0.
pub fn solve_c0(spec: &RootSpec) -> Result<f64, Error> {
    let (mut lo, mut hi) = spec.bracket;
    let f_lo = c0_objective(spec.target, lo);
    let f_hi = c0_objective(spec.target, hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange);
    }
    let neg_left = f_lo < 0.0;
    for _ in 0..256 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= spec.tolerance {
            return Ok(mid);
        }
        let f_mid = c0_objective(spec.target, mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == neg_left {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

// ---------------------------------------------------------------------------
// Persistence growth
// ---------------------------------------------------------------------------

/// The rate constants of the persistence upper bounds: alpha = log_b(b-1)
/// and beta = log_b(2)/(2b), both derived from the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PersistenceBoundParams {
    base: Base,
}

impl PersistenceBoundParams {
    pub fn new(base: Base) -> Result<Self, Error> {
        if base.get() < 3 {
            return Err(Error::UnsupportedMap { why: "growth bounds need base >= 3" });
        }
        Ok(PersistenceBoundParams { base })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn alpha(&self) -> f64 {
        let b = self.base.get() as f64;
        libm::log(b - 1.0) / libm::log(b)
    }

    pub fn beta(&self) -> f64 {
        let b = self.base.get() as f64;
        libm::log(2.0) / (libm::log(b) * 2.0 * b)
    }

    /// `log(alpha^{-1})`, the denominator of the bound.
    pub fn log_inv_alpha(&self) -> f64 {
        -libm::log(self.alpha())
    }
}

/// The theorem's asymptotic ceiling at checkpoint N, before slack:
/// `factor * log log N / log(alpha^{-1})` where factor is 1 for the
/// Erdős–Sloane map and 2 for the 1-shifted map.
pub fn persistence_bound(map: &MapSpec, checkpoint: u64) -> Result<f64, Error> {
    let (factor, base) = match map {
        MapSpec::ErdosStar { base } => (1.0, *base),
        MapSpec::Shifted { shift: 1, base } => (2.0, *base),
        _ => {
            return Err(Error::UnsupportedMap {
                why: "growth bounds cover erdos-star and shifted t=1 only",
            })
        }
    };
    let params = PersistenceBoundParams::new(base)?;
    let loglog = libm::log(libm::log(checkpoint as f64));
    Ok(factor * loglog / params.log_inv_alpha())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRow {
    pub checkpoint: u64,
    pub max_persistence: u64,
    pub bound: f64,
    pub within: bool,
}

/// Max observed persistence against the theorem bound at each checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub map: MapSpec,
    pub slack: f64,
    pub rows: Vec<GrowthRow>,
    /// Starts whose persistence stayed unknown; excluded from the maxima.
    pub unknown: u64,
}

impl GrowthReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.within)
    }
}

fn validate_checkpoints(checkpoints: &[u64]) -> Result<(), Error> {
    if checkpoints.is_empty() {
        return Err(Error::InvalidCheckpoints { why: "no checkpoints given" });
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidCheckpoints { why: "checkpoints must be strictly ascending" });
    }
    if checkpoints[0] < 16 {
        return Err(Error::InvalidCheckpoints { why: "checkpoints must be at least 16" });
    }
    Ok(())
}

/// Builds a growth report from precomputed `(n, persistence)` pairs in
/// ascending order covering `1..=max(checkpoints)`.
pub fn growth_report_from_persistences(
    map: &MapSpec,
    checkpoints: &[u64],
    slack: f64,
    pairs: impl Iterator<Item = (u64, Option<u64>)>,
) -> Result<GrowthReport, Error> {
    validate_checkpoints(checkpoints)?;
    persistence_bound(map, checkpoints[0])?; // validates the map kind
    let mut rows = Vec::with_capacity(checkpoints.len());
    let mut unknown = 0u64;
    let mut max_nu = 0u64;
    let mut idx = 0usize;
    for (n, nu) in pairs {
        match nu {
            Some(nu) => max_nu = max_nu.max(nu),
            None => unknown += 1,
        }
        while idx < checkpoints.len() && n == checkpoints[idx] {
            let bound = persistence_bound(map, checkpoints[idx])?;
            rows.push(GrowthRow {
                checkpoint: checkpoints[idx],
                max_persistence: max_nu,
                bound,
                within: (max_nu as f64) <= bound + slack,
            });
            idx += 1;
        }
    }
    while idx < checkpoints.len() {
        let bound = persistence_bound(map, checkpoints[idx])?;
        rows.push(GrowthRow {
            checkpoint: checkpoints[idx],
            max_persistence: max_nu,
            bound,
            within: (max_nu as f64) <= bound + slack,
        });
        idx += 1;
    }
    Ok(GrowthReport { map: *map, slack, rows, unknown })
}

/// Default additive slack for the growth-bound assertion. The theorems
/// hold up to an uncomputed additive constant; this value dominates the
/// observed data comfortably and is configurable at every call site.
pub const DEFAULT_GROWTH_SLACK: f64 = 10.0;

/// Scans persistence up to the last checkpoint and compares the running
/// maximum against `bound(N) + slack` at each checkpoint.
pub fn persistence_growth_report(
    map: &MapSpec,
    checkpoints: &[u64],
    budget: &OrbitBudget,
    slack: f64,
) -> Result<GrowthReport, Error> {
    validate_checkpoints(checkpoints)?;
    let last = *checkpoints.last().unwrap();
    growth_report_from_persistences(
        map,
        checkpoints,
        slack,
        (1..=last).map(|n| (n, persistence(map, &Natural::from(n), budget))),
    )
}

// ---------------------------------------------------------------------------
// Behavior surveys
// ---------------------------------------------------------------------------

/// Per-status outcome counts over a sample of starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Survey {
    pub total: u64,
    pub fixed_point: u64,
    pub cycle: u64,
    pub divergence_suspected: u64,
    pub budget_exhausted: u64,
}

impl Survey {
    pub fn record(&mut self, status: OrbitStatus) {
        self.total += 1;
        match status {
            OrbitStatus::FixedPoint => self.fixed_point += 1,
            OrbitStatus::Cycle => self.cycle += 1,
            OrbitStatus::DivergenceSuspected => self.divergence_suspected += 1,
            OrbitStatus::BudgetExhausted => self.budget_exhausted += 1,
        }
    }

    pub fn tally(statuses: impl Iterator<Item = OrbitStatus>) -> Survey {
        let mut s = Survey::default();
        for st in statuses {
            s.record(st);
        }
        s
    }

    pub fn converged(&self) -> u64 {
        self.fixed_point + self.cycle
    }

    pub fn converged_fraction(&self) -> f64 {
        self.converged() as f64 / self.total.max(1) as f64
    }

    pub fn divergence_fraction(&self) -> f64 {
        self.divergence_suspected as f64 / self.total.max(1) as f64
    }
}

/// Runs each start in `sample` to its verdict and tallies the outcomes.
/// No theorem is asserted here: the conditional results predict the
/// fractions, and the survey reports what actually happened.
pub fn behavior_survey(map: &MapSpec, sample: &[Natural], budget: &OrbitBudget) -> Survey {
    Survey::tally(sample.iter().map(|n| iterate(map, n, budget).status))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u32) -> Base {
        Base::new(x).unwrap()
    }

    #[test]
    fn s1b_attractors_small() {
        // base 2: everything falls to the fixed point 2
        let r = verify_s1b_attractors(b(2), 100);
        assert!(r.passed(), "{:?}", r.violations());
        // base 3
        let r = verify_s1b_attractors(b(3), 2000);
        assert!(r.passed(), "{:?}", r.violations());
        // base 10 spot check: fixed point is 18 and 2*9 = 18
        let r = verify_s1b_attractors(b(10), 2000);
        assert!(r.passed(), "{:?}", r.violations());
    }

    #[test]
    fn t1b3_predictions() {
        use T1b3Attractor::*;
        // 2 = 2_3 lacks the digit 1
        assert_eq!(predict_t1b3(&Natural::from(2u32)), CycleTwoThree);
        // 4 = 11_3, #1 = 2, 2^2 = 11_3 has a digit 1
        assert_eq!(predict_t1b3(&Natural::from(4u32)), FixedPointFour);
        // 9 = 100_3, #1 = 1, 2^1 = 2_3 lacks the digit 1
        assert_eq!(predict_t1b3(&Natural::from(9u32)), CycleTwoThree);
    }

    #[test]
    fn t1b3_classification_small() {
        let r = verify_t1b3_classification(4);
        assert!(r.passed());
        let r = verify_t1b3_classification(1);
        assert!(r.passed());
        let r = verify_t1b3_classification(3000);
        assert!(r.passed(), "{:?}", r.violations());
    }

    #[test]
    fn lemma_t2blarge_small_range() {
        let r = check_lemma_t2blarge(5, 50).unwrap();
        assert!(r.passed(), "{:?}", r.violations());
        assert_eq!(r.cases(), 46 * 3);
        assert!(matches!(
            check_lemma_t2blarge(2, 4),
            Err(Error::OutsideLemmaDomain { .. })
        ));
    }

    #[test]
    fn lemma_b4_small_grid() {
        let r = check_lemma_b4(&[(1, 5)]).unwrap();
        assert!(r.passed());
        let pairs = b4_pairs_grid(5, 60);
        let r = check_lemma_b4(&pairs).unwrap();
        assert!(r.passed(), "{:?}", r.violations());
        assert!(matches!(
            check_lemma_b4(&[(2, 4)]),
            Err(Error::OutsideLemmaDomain { .. })
        ));
        assert!(matches!(
            check_lemma_b4(&[(3, 8)]),
            Err(Error::OutsideLemmaDomain { .. })
        ));
    }

    #[test]
    fn lemma_tlarge_reports_threshold() {
        // c = 9/10 > 0.865722
        let r = check_lemma_tlarge(9, 10, 50, 400, false).unwrap();
        assert_eq!(r.rows.len(), 351);
        let b0 = r.empirical_b0.expect("items should hold for large b");
        assert!(b0 <= 400);
        // all rows from b0 on hold
        for row in r.rows.iter().filter(|r| r.b >= b0) {
            assert!(row.item1 && row.item2, "b={}", row.b);
        }
        // c at or below the threshold is rejected
        assert!(matches!(
            check_lemma_tlarge(1, 2, 100, 200, false),
            Err(Error::OutsideLemmaDomain { .. })
        ));
    }

    #[test]
    fn c0_roots_match_known_decimals() {
        let small = solve_c0(&RootSpec::new(RootTarget::SmallT, 0.01, 0.99, 1e-9).unwrap()).unwrap();
        assert!((small - 0.315999).abs() < 1e-6, "got {small}");
        let large = solve_c0(&RootSpec::new(RootTarget::LargeT, 0.01, 0.99, 1e-9).unwrap()).unwrap();
        assert!((large - 0.865722).abs() < 1e-6, "got {large}");
        // no sign change once the bracket excludes the root
        assert!(matches!(
            solve_c0(&RootSpec::new(RootTarget::SmallT, 0.4, 0.9, 1e-6).unwrap()),
            Err(Error::NoSignChange)
        ));
    }

    #[test]
    fn growth_report_structure() {
        let map = MapSpec::erdos_star(b(3));
        let r = persistence_growth_report(
            &map,
            &[100, 1000],
            &OrbitBudget::default(),
            DEFAULT_GROWTH_SLACK,
        )
        .unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!(r.passed(), "{:?}", r.rows);
        assert_eq!(r.unknown, 0);
        // invalid inputs
        assert!(persistence_growth_report(&map, &[2], &OrbitBudget::default(), 10.0).is_err());
        assert!(persistence_growth_report(
            &MapSpec::shifted(2, b(3)),
            &[100],
            &OrbitBudget::default(),
            10.0
        )
        .is_err());
    }

    #[test]
    fn survey_counts() {
        let sample: Vec<Natural> = (1..=200u64).map(Natural::from).collect();
        let s = behavior_survey(&MapSpec::shifted(2, b(3)), &sample, &OrbitBudget::default());
        assert_eq!(s.total, 200);
        assert_eq!(s.converged(), 200);
        assert!((s.converged_fraction() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn report_merge_keeps_counts() {
        let mut a = VerificationReport::new("x", "lo");
        a.record_cases(5);
        let mut b = VerificationReport::new("x", "hi");
        b.record_cases(7);
        b.add_violation(Violation { case: "n=9".into(), detail: "bad".into() });
        a.merge(b);
        assert_eq!(a.cases(), 12);
        assert_eq!(a.violations_total(), 1);
        assert!(!a.passed());
    }
}

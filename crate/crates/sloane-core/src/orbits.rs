//! Orbit iteration: fixed points, cycles, persistence, and suspected
//! divergence under explicit budgets.
//!
//! Divergence is undecidable, so it is only ever *suspected*: the verdict
//! requires an iterate above the bit-length cap together with a strictly
//! increasing tail of the trajectory. Budgets make every run terminate.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;

use crate::error::Error;
use crate::numbase::Natural;
use crate::sloanemaps::{step, MapSpec};

/// Termination bounds for one orbit run. All fields are at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitBudget {
    max_steps: u64,
    max_bits: u64,
    growth_window: usize,
}

/// Safety factor: iteration stops with `BudgetExhausted` once an iterate
/// exceeds `32 * max_bits` bits without triggering the divergence verdict,
/// so erratically growing orbits cannot exhaust memory before `max_steps`.
const HARD_BIT_FACTOR: u64 = 32;

impl OrbitBudget {
    pub fn new(max_steps: u64, max_bits: u64, growth_window: usize) -> Result<Self, Error> {
        if max_steps == 0 {
            return Err(Error::BudgetField { field: "max_steps" });
        }
        if max_bits == 0 {
            return Err(Error::BudgetField { field: "max_bits" });
        }
        if growth_window == 0 {
            return Err(Error::BudgetField { field: "growth_window" });
        }
        Ok(OrbitBudget { max_steps, max_bits, growth_window })
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps
    }

    pub fn max_bits(&self) -> u64 {
        self.max_bits
    }

    pub fn growth_window(&self) -> usize {
        self.growth_window
    }

    pub fn with_max_bits(mut self, max_bits: u64) -> Self {
        assert!(max_bits >= 1);
        self.max_bits = max_bits;
        self
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        assert!(max_steps >= 1);
        self.max_steps = max_steps;
        self
    }
}

impl Default for OrbitBudget {
    /// 1000 steps, 2^20-bit iterate cap, growth window of 8.
    fn default() -> Self {
        OrbitBudget { max_steps: 1000, max_bits: 1 << 20, growth_window: 8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitStatus {
    FixedPoint,
    Cycle,
    DivergenceSuspected,
    BudgetExhausted,
}

impl OrbitStatus {
    /// True when the orbit provably stabilized.
    pub fn converged(self) -> bool {
        matches!(self, OrbitStatus::FixedPoint | OrbitStatus::Cycle)
    }
}

/// Outcome of iterating a map from one start value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitResult {
    pub status: OrbitStatus,
    /// Steps before the orbit first enters the cycle set; `None` when the
    /// orbit did not provably stabilize.
    pub persistence: Option<u64>,
    /// The attractor, listed from the first member the orbit entered.
    /// Empty unless the status is `FixedPoint` or `Cycle`.
    pub cycle_members: Vec<Natural>,
    /// Number of map applications performed.
    pub steps_taken: u64,
    /// All distinct values visited, in order, when tracing was requested.
    pub trajectory_prefix: Option<Vec<Natural>>,
}

/// Iterates `map` from `start` until a revisit, a divergence verdict, or
/// budget exhaustion. See [`iterate_traced`] to also keep the trajectory.
pub fn iterate(map: &MapSpec, start: &Natural, budget: &OrbitBudget) -> OrbitResult {
    run_orbit(map, start, budget, false)
}

/// Like [`iterate`], additionally recording every distinct visited value
/// in `trajectory_prefix`.
pub fn iterate_traced(map: &MapSpec, start: &Natural, budget: &OrbitBudget) -> OrbitResult {
    run_orbit(map, start, budget, true)
}

fn run_orbit(map: &MapSpec, start: &Natural, budget: &OrbitBudget, keep_trace: bool) -> OrbitResult {
    let mut visited: BTreeMap<Rc<Natural>, u64> = BTreeMap::new();
    let mut trajectory: Vec<Rc<Natural>> = Vec::new();

    let first = Rc::new(start.clone());
    visited.insert(first.clone(), 0);
    trajectory.push(first);

    let window = budget.growth_window();
    let hard_cap = budget.max_bits().saturating_mul(HARD_BIT_FACTOR);

    let mut status = OrbitStatus::BudgetExhausted;
    let mut persistence = None;
    let mut cycle_members = Vec::new();
    let mut steps_taken = budget.max_steps();

    for k in 1..=budget.max_steps() {
        let next = Rc::new(step(map, trajectory.last().unwrap()));
        if let Some(&entry) = visited.get(&next) {
            let members: Vec<Natural> =
                trajectory[entry as usize..].iter().map(|v| (**v).clone()).collect();
            status = if members.len() == 1 { OrbitStatus::FixedPoint } else { OrbitStatus::Cycle };
            persistence = Some(entry);
            cycle_members = members;
            steps_taken = k;
            break;
        }

        let bits = next.bits();
        trajectory.push(next.clone());
        visited.insert(next, k);

        if bits > budget.max_bits() {
            if tail_strictly_increasing(&trajectory, window) {
                status = OrbitStatus::DivergenceSuspected;
                steps_taken = k;
                break;
            }
            if bits > hard_cap {
                steps_taken = k;
                break;
            }
        }
    }

    OrbitResult {
        status,
        persistence,
        cycle_members,
        steps_taken,
        trajectory_prefix: keep_trace
            .then(|| trajectory.iter().map(|v| (**v).clone()).collect()),
    }
}

fn tail_strictly_increasing(trajectory: &[Rc<Natural>], window: usize) -> bool {
    if trajectory.len() < window {
        return false;
    }
    trajectory[trajectory.len() - window..].windows(2).all(|w| w[0] < w[1])
}

/// The persistence of `start` under `map`: number of steps to reach the
/// attractor, or `None` when the run did not stabilize within budget.
pub fn persistence(map: &MapSpec, start: &Natural, budget: &OrbitBudget) -> Option<u64> {
    iterate(map, start, budget).persistence
}

/// One persistence record-setter: the smallest `n` attaining a new maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PersistenceRecord {
    pub n: u64,
    pub persistence: u64,
}

/// Record-setters over a scanned range, plus how many starts had to be
/// excluded because their persistence stayed unknown.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PersistenceProfile {
    pub records: Vec<PersistenceRecord>,
    pub unknown: u64,
}

/// Folds `(n, persistence)` pairs in ascending `n` order into the list of
/// record-setters. Unknown persistences are counted and excluded.
pub fn fold_record_setters(
    pairs: impl Iterator<Item = (u64, Option<u64>)>,
) -> PersistenceProfile {
    let mut profile = PersistenceProfile::default();
    let mut best: Option<u64> = None;
    for (n, nu) in pairs {
        match nu {
            None => profile.unknown += 1,
            Some(nu) => {
                if best.map_or(true, |b| nu > b) {
                    best = Some(nu);
                    profile.records.push(PersistenceRecord { n, persistence: nu });
                }
            }
        }
    }
    profile
}

/// Scans `1..=n_max` and reports every `n` whose persistence strictly
/// exceeds that of all smaller starts.
pub fn max_persistence_profile(
    map: &MapSpec,
    n_max: u64,
    budget: &OrbitBudget,
) -> Result<PersistenceProfile, Error> {
    if n_max == 0 {
        return Err(Error::EmptyRange { lo: 1, hi: 0 });
    }
    Ok(fold_record_setters(
        (1..=n_max).map(|n| (n, persistence(map, &Natural::from(n), budget))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbase::Base;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn b(x: u32) -> Base {
        Base::new(x).unwrap()
    }

    #[test]
    fn orbit_of_five_reaches_the_two_three_cycle() {
        // 5 = 12_3 -> 6 = 20_3 -> 3 -> 2 -> 3
        let r = iterate_traced(&MapSpec::shifted(1, b(3)), &nat(5), &OrbitBudget::default());
        assert_eq!(r.status, OrbitStatus::Cycle);
        assert_eq!(r.cycle_members, alloc::vec![nat(3), nat(2)]);
        assert_eq!(r.persistence, Some(2));
        assert_eq!(
            r.trajectory_prefix.unwrap(),
            alloc::vec![nat(5), nat(6), nat(3), nat(2)]
        );
    }

    #[test]
    fn fixed_point_has_persistence_zero() {
        let r = iterate(&MapSpec::shifted(1, b(3)), &nat(4), &OrbitBudget::default());
        assert_eq!(r.status, OrbitStatus::FixedPoint);
        assert_eq!(r.cycle_members, alloc::vec![nat(4)]);
        assert_eq!(r.persistence, Some(0));
    }

    #[test]
    fn unshifted_orbit_of_77() {
        // 77 -> 49 -> 36 -> 18 -> 8
        let r = iterate(&MapSpec::shifted(0, b(10)), &nat(77), &OrbitBudget::default());
        assert_eq!(r.status, OrbitStatus::FixedPoint);
        assert_eq!(r.cycle_members, alloc::vec![nat(8)]);
        assert_eq!(r.persistence, Some(4));
        assert_eq!(persistence(&MapSpec::shifted(0, b(10)), &nat(77), &OrbitBudget::default()), Some(4));
    }

    #[test]
    fn single_digit_is_immediately_fixed_for_erdos() {
        assert_eq!(
            persistence(&MapSpec::erdos_star(b(10)), &nat(7), &OrbitBudget::default()),
            Some(0)
        );
    }

    #[test]
    fn shifted_45_from_a_million_diverges() {
        let budget = OrbitBudget::new(10_000, 1_000_000, 8).unwrap();
        let r = iterate(&MapSpec::shifted(4, b(5)), &nat(1_000_000), &budget);
        assert_eq!(r.status, OrbitStatus::DivergenceSuspected);
        assert_eq!(r.persistence, None);
    }

    #[test]
    fn budget_exhaustion_when_steps_run_out() {
        let budget = OrbitBudget::new(2, 1 << 20, 8).unwrap();
        let r = iterate(&MapSpec::shifted(1, b(3)), &nat(5), &budget);
        assert_eq!(r.status, OrbitStatus::BudgetExhausted);
        assert_eq!(r.persistence, None);
        assert_eq!(r.steps_taken, 2);
    }

    #[test]
    fn record_setters_for_erdos_base_10() {
        let profile =
            max_persistence_profile(&MapSpec::erdos_star(b(10)), 10, &OrbitBudget::default())
                .unwrap();
        assert_eq!(
            profile.records,
            alloc::vec![
                PersistenceRecord { n: 1, persistence: 0 },
                PersistenceRecord { n: 10, persistence: 1 },
            ]
        );
        assert_eq!(profile.unknown, 0);
    }

    #[test]
    fn record_setters_include_77() {
        let profile =
            max_persistence_profile(&MapSpec::shifted(0, b(10)), 100, &OrbitBudget::default())
                .unwrap();
        assert!(profile
            .records
            .contains(&PersistenceRecord { n: 77, persistence: 4 }));
    }

    #[test]
    fn profile_of_single_start() {
        let profile =
            max_persistence_profile(&MapSpec::erdos_star(b(10)), 1, &OrbitBudget::default())
                .unwrap();
        assert_eq!(profile.records, alloc::vec![PersistenceRecord { n: 1, persistence: 0 }]);
    }

    #[test]
    fn budget_fields_must_be_positive() {
        assert!(OrbitBudget::new(0, 1, 1).is_err());
        assert!(OrbitBudget::new(1, 0, 1).is_err());
        assert!(OrbitBudget::new(1, 1, 0).is_err());
    }

    #[test]
    fn diverging_regime_never_cycles() {
        let budget = OrbitBudget::new(200, 4096, 8).unwrap();
        for base_v in [2u32, 3, 10] {
            let m = MapSpec::shifted(base_v, b(base_v));
            for n in 1..200u64 {
                let r = iterate(&m, &nat(n), &budget);
                assert!(
                    !r.status.converged(),
                    "t=b orbit from {n} in base {base_v} must not stabilize"
                );
            }
        }
    }
}

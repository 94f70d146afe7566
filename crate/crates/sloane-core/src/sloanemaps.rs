//! One step of the digit-product maps under study.
//!
//! The t-shifted Sloane map in base b sends n to the product of
//! `digit + t` over all base-b digits of n. The Erdős–Sloane map sends n
//! to the product of its nonzero base-b digits (the empty product, for
//! n = 0, is 1).

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Pow, Zero};

use crate::error::Error;
use crate::numbase::{to_digits, Base, DigitStats, Natural};

/// Which map to iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapSpec {
    /// Product of `digit + shift` over all digits. `shift >= base` is a
    /// permitted but always-diverging regime; see
    /// [`MapSpec::is_diverging_regime`].
    Shifted { shift: u32, base: Base },
    /// Product of the nonzero digits.
    ErdosStar { base: Base },
}

impl MapSpec {
    pub fn shifted(shift: u32, base: Base) -> Self {
        MapSpec::Shifted { shift, base }
    }

    pub fn erdos_star(base: Base) -> Self {
        MapSpec::ErdosStar { base }
    }

    pub fn base(&self) -> Base {
        match self {
            MapSpec::Shifted { base, .. } | MapSpec::ErdosStar { base } => *base,
        }
    }

    /// True for shifted maps with `shift >= base`, where every value
    /// strictly increases under the map and no orbit ever stabilizes.
    pub fn is_diverging_regime(&self) -> bool {
        match self {
            MapSpec::Shifted { shift, base } => *shift >= base.get(),
            MapSpec::ErdosStar { .. } => false,
        }
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapSpec::Shifted { shift, base } => write!(f, "shifted(t={shift},b={base})"),
            MapSpec::ErdosStar { base } => write!(f, "erdos-star(b={base})"),
        }
    }
}

/// Applies one step of the map to `n`.
///
/// The result is computed directly from the digit expansion: each digit
/// contributes one factor, multiplied together with a balanced product
/// tree. For the equivalent route through digit counts see
/// [`step_from_stats`].
pub fn step(map: &MapSpec, n: &Natural) -> Natural {
    let dv = to_digits(n, map.base());
    match map {
        MapSpec::Shifted { shift, .. } => {
            let t = *shift as u64;
            if t == 0 && dv.count_of(0) > 0 {
                return Natural::zero();
            }
            product_of_factors(dv.digits().iter().map(|&d| d as u64 + t))
        }
        MapSpec::ErdosStar { .. } => {
            product_of_factors(dv.digits().iter().filter(|&&d| d != 0).map(|&d| d as u64))
        }
    }
}

/// Applies one step of the map using precomputed digit statistics:
/// the product of `(d + t)^counts[d]` (shifted) or `d^counts[d]` over
/// nonzero digits (Erdős–Sloane).
///
/// Fails if the statistics were taken in a different base than the map's.
pub fn step_from_stats(map: &MapSpec, stats: &DigitStats) -> Result<Natural, Error> {
    if stats.base() != map.base() {
        return Err(Error::BaseMismatch {
            expected: map.base().get(),
            found: stats.base().get(),
        });
    }
    let mut factors: Vec<Natural> = Vec::new();
    match map {
        MapSpec::Shifted { shift, .. } => {
            let t = *shift as u64;
            for (d, &c) in stats.counts().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let f = d as u64 + t;
                if f == 0 {
                    return Ok(Natural::zero());
                }
                factors.push(Natural::from(f).pow(c));
            }
        }
        MapSpec::ErdosStar { .. } => {
            for (d, &c) in stats.counts().iter().enumerate().skip(1) {
                if c == 0 {
                    continue;
                }
                factors.push(Natural::from(d as u64).pow(c));
            }
        }
    }
    Ok(balanced_product(factors))
}

/// Multiplies small factors, packing runs into machine words first and
/// finishing with a balanced tree so huge digit lists stay subquadratic.
fn product_of_factors(factors: impl Iterator<Item = u64>) -> Natural {
    let mut leaves: Vec<Natural> = Vec::new();
    let mut acc: u128 = 1;
    for f in factors {
        if f == 0 {
            return Natural::zero();
        }
        match acc.checked_mul(f as u128) {
            Some(next) => acc = next,
            None => {
                leaves.push(Natural::from(acc));
                acc = f as u128;
            }
        }
    }
    leaves.push(Natural::from(acc));
    balanced_product(leaves)
}

fn balanced_product(mut leaves: Vec<Natural>) -> Natural {
    if leaves.is_empty() {
        return Natural::one();
    }
    while leaves.len() > 1 {
        let mut next = Vec::with_capacity(leaves.len() / 2 + 1);
        let mut it = leaves.chunks_exact(2);
        for pair in &mut it {
            next.push(&pair[0] * &pair[1]);
        }
        if let [odd] = it.remainder() {
            next.push(odd.clone());
        }
        leaves = next;
    }
    leaves.pop().unwrap()
}

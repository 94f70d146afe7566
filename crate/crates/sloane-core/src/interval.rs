//! Directed-rounding interval arithmetic for the real-valued inequality
//! checks.
//!
//! Every endpoint is a software big-float rounded toward the matching
//! infinity, so an [`Interval`] always encloses the exact real value.
//! Comparisons return `None` when the intervals overlap; callers raise
//! the working precision instead of guessing.

use astro_float::{BigFloat, Consts, RoundingMode};

use crate::error::Error;

const DOWN: RoundingMode = RoundingMode::Down;
const UP: RoundingMode = RoundingMode::Up;

/// Working precision plus the shared constants cache of the big-float
/// backend.
pub struct RealCtx {
    prec: usize,
    cc: Consts,
}

impl RealCtx {
    pub fn new(prec: usize) -> Self {
        RealCtx { prec, cc: Consts::new().expect("constants cache") }
    }

    pub fn precision(&self) -> usize {
        self.prec
    }
}

/// A closed enclosure `[lo, hi]` of a real number.
#[derive(Debug, Clone)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
}

impl Interval {
    pub fn exact_u64(v: u64, ctx: &RealCtx) -> Self {
        let x = BigFloat::from_u64(v, ctx.prec.max(64));
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero(ctx: &RealCtx) -> Self {
        Self::exact_u64(0, ctx)
    }

    /// Encloses the rational `num/den`.
    pub fn from_ratio(num: u64, den: u64, ctx: &RealCtx) -> Self {
        let n = BigFloat::from_u64(num, ctx.prec.max(64));
        let d = BigFloat::from_u64(den, ctx.prec.max(64));
        Interval { lo: n.div(&d, ctx.prec, DOWN), hi: n.div(&d, ctx.prec, UP) }
    }

    /// Encloses `ln(k)` for an integer `k >= 1`.
    pub fn ln_u64(k: u64, ctx: &mut RealCtx) -> Self {
        let x = BigFloat::from_u64(k, ctx.prec.max(64));
        Interval { lo: x.ln(ctx.prec, DOWN, &mut ctx.cc), hi: x.ln(ctx.prec, UP, &mut ctx.cc) }
    }

    pub fn add(&self, other: &Self, ctx: &RealCtx) -> Self {
        Interval {
            lo: self.lo.add(&other.lo, ctx.prec, DOWN),
            hi: self.hi.add(&other.hi, ctx.prec, UP),
        }
    }

    pub fn sub(&self, other: &Self, ctx: &RealCtx) -> Self {
        Interval {
            lo: self.lo.sub(&other.hi, ctx.prec, DOWN),
            hi: self.hi.sub(&other.lo, ctx.prec, UP),
        }
    }

    /// Sign-agnostic product: min/max over all endpoint combinations.
    pub fn mul(&self, other: &Self, ctx: &RealCtx) -> Self {
        let ends = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (a, b) in ends {
            let down = a.mul(b, ctx.prec, DOWN);
            let up = a.mul(b, ctx.prec, UP);
            lo = Some(match lo {
                Some(cur) if cur < down => cur,
                _ => down,
            });
            hi = Some(match hi {
                Some(cur) if cur > up => cur,
                _ => up,
            });
        }
        Interval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    /// Quotient for divisors bounded away from zero; NaN endpoints (from a
    /// straddling divisor) poison the interval and read as indeterminate.
    pub fn div(&self, other: &Self, ctx: &RealCtx) -> Self {
        let ends = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<BigFloat> = None;
        let mut hi: Option<BigFloat> = None;
        for (a, b) in ends {
            let down = a.div(b, ctx.prec, DOWN);
            let up = a.div(b, ctx.prec, UP);
            lo = Some(match lo {
                Some(cur) if cur < down => cur,
                _ => down,
            });
            hi = Some(match hi {
                Some(cur) if cur > up => cur,
                _ => up,
            });
        }
        Interval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    pub fn scale_u64(&self, k: u64, ctx: &RealCtx) -> Self {
        let f = BigFloat::from_u64(k, ctx.prec.max(64));
        Interval { lo: self.lo.mul(&f, ctx.prec, DOWN), hi: self.hi.mul(&f, ctx.prec, UP) }
    }

    /// Encloses `e^x`.
    pub fn exp(&self, ctx: &mut RealCtx) -> Self {
        Interval {
            lo: self.lo.exp(ctx.prec, DOWN, &mut ctx.cc),
            hi: self.hi.exp(ctx.prec, UP, &mut ctx.cc),
        }
    }

    pub fn is_valid(&self) -> bool {
        !self.lo.is_nan() && !self.hi.is_nan() && self.lo <= self.hi
    }

    /// `Some(true)` when certainly `self < other`, `Some(false)` when
    /// certainly `self >= other`, `None` when the enclosures overlap.
    pub fn strictly_less(&self, other: &Self) -> Option<bool> {
        if !self.is_valid() || !other.is_valid() {
            return None;
        }
        if self.hi < other.lo {
            Some(true)
        } else if self.lo >= other.hi {
            Some(false)
        } else {
            None
        }
    }

    /// `Some(true)` when certainly `self > other`.
    pub fn strictly_greater(&self, other: &Self) -> Option<bool> {
        if !self.is_valid() || !other.is_valid() {
            return None;
        }
        if self.lo > other.hi {
            Some(true)
        } else if self.hi <= other.lo {
            Some(false)
        } else {
            None
        }
    }

    /// Debug/display value; accuracy is whatever fits in an f64.
    pub fn approx_f64(&self) -> f64 {
        big_float_to_f64(&self.lo)
    }
}

fn big_float_to_f64(x: &BigFloat) -> f64 {
    // top two mantissa words give ~128 bits, far more than an f64 holds
    let Some((m, _n, s, e, _inexact)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    if m.is_empty() || x.is_zero() {
        return 0.0;
    }
    let len = m.len();
    let mut val = 0f64;
    for k in 0..len.min(2) {
        let w = m[len - 1 - k] as f64;
        val += libm::scalbn(w, e as i32 - 64 * (k as i32 + 1));
    }
    if matches!(s, astro_float::Sign::Neg) {
        -val
    } else {
        val
    }
}

/// Runs `body` with doubling precision until it returns a determinate
/// answer, starting at `start_bits` and giving up past `max_bits`.
pub fn with_rising_precision<T>(
    start_bits: usize,
    max_bits: usize,
    mut body: impl FnMut(&mut RealCtx) -> Option<T>,
) -> Result<T, Error> {
    let mut bits = start_bits;
    loop {
        let mut ctx = RealCtx::new(bits);
        if let Some(v) = body(&mut ctx) {
            return Ok(v);
        }
        if bits >= max_bits {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits *= 2;
    }
}

//! Arbitrary-precision naturals with exact base-`b` digit extraction,
//! digit counting, and equidistribution statistics.
//!
//! Digits are stored least-significant first, so the digit at index `i` is
//! the coefficient of `b^i`. Zero is represented by the single-digit vector
//! `[0]`; consequently zero has one digit, which is a zero digit.
//!
//! Conversion between values and digit vectors switches to a
//! divide-and-conquer strategy for large inputs (see [`DC_LIMB_THRESHOLD`]),
//! which keeps conversions of numbers like 2^168980 in the millisecond
//! range instead of the quadratic cost of digit-by-digit division.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;

/// The universe of all computations: an unbounded nonnegative integer.
pub type Natural = BigUint;

/// Number of 64-bit words above which radix conversion uses
/// divide-and-conquer splitting instead of chunked scalar division.
///
/// Below the threshold the quadratic chunked loop wins on constant factors;
/// above it the recursive split (two half-size subproblems plus one big
/// division) is asymptotically and practically faster.
pub const DC_LIMB_THRESHOLD: u64 = 32;

/// A positional base `b >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base(u32);

impl Base {
    pub fn new(b: u32) -> Result<Self, Error> {
        if b < 2 {
            Err(Error::BaseTooSmall { b })
        } else {
            Ok(Base(b))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `Some(k)` when the base is exactly `2^k`.
    fn log2_exact(self) -> Option<u32> {
        if self.0.is_power_of_two() {
            Some(self.0.trailing_zeros())
        } else {
            None
        }
    }

    /// Largest `(k, b^k)` with `b^k` representable in a `u64`.
    fn chunk(self) -> (u64, u64) {
        let b = self.0 as u64;
        let mut k = 1u64;
        let mut p = b;
        while let Some(next) = p.checked_mul(b) {
            p = next;
            k += 1;
        }
        (k, p)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The base-`b` expansion of a natural, least-significant digit first.
///
/// Canonical form: the most significant digit is nonzero, except for the
/// number zero which is exactly `[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitVector {
    digits: Vec<u32>,
    base: Base,
}

impl DigitVector {
    /// Builds a digit vector from raw least-significant-first digits,
    /// validating the digit range and stripping leading zeros.
    pub fn from_parts(mut digits: Vec<u32>, base: Base) -> Result<Self, Error> {
        for &d in &digits {
            if d >= base.get() {
                return Err(Error::DigitOutOfRange { digit: d, base: base.get() });
            }
        }
        while digits.len() > 1 && *digits.last().unwrap() == 0 {
            digits.pop();
        }
        if digits.is_empty() {
            digits.push(0);
        }
        Ok(DigitVector { digits, base })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// Number of digits; `#(n)_b` in the usual notation. Always >= 1.
    pub fn len(&self) -> u64 {
        self.digits.len() as u64
    }

    /// Digits least-significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits == [0]
    }

    /// Occurrences of the digit `d`.
    pub fn count_of(&self, d: u32) -> u64 {
        self.digits.iter().filter(|&&x| x == d).count() as u64
    }

    /// Per-digit occurrence counts together with the total length.
    pub fn stats(&self) -> DigitStats {
        let mut counts = vec![0u64; self.base.get() as usize];
        for &d in &self.digits {
            counts[d as usize] += 1;
        }
        DigitStats { counts, length: self.len(), base: self.base }
    }

    /// Multiplies the represented value by a small factor in place,
    /// keeping the digit expansion canonical.
    ///
    /// This is the incremental alternative to a full reconversion when
    /// scanning sequences like 2^m or seed products; it must (and does,
    /// see the checkpoint tests) agree with `to_digits` of the product.
    pub fn mul_small(&mut self, factor: u32) {
        if factor == 0 || self.is_zero() {
            self.digits.clear();
            self.digits.push(0);
            return;
        }
        let b = self.base.get() as u64;
        let f = factor as u64;
        let mut carry = 0u64;
        for d in self.digits.iter_mut() {
            let v = (*d as u64) * f + carry;
            *d = (v % b) as u32;
            carry = v / b;
        }
        while carry > 0 {
            self.digits.push((carry % b) as u32);
            carry /= b;
        }
    }
}

impl fmt::Display for DigitVector {
    /// Most-significant-first rendering with a `_base` suffix, e.g.
    /// `10201_3`. Bases up to 36 use the usual alphanumeric digit set;
    /// larger bases separate decimal digits with dots.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base.get() <= 36 {
            for &d in self.digits.iter().rev() {
                let c = core::char::from_digit(d, 36).unwrap();
                write!(f, "{c}")?;
            }
        } else {
            let mut first = true;
            for &d in self.digits.iter().rev() {
                if !first {
                    write!(f, ".")?;
                }
                write!(f, "{d}")?;
                first = false;
            }
        }
        write!(f, "_{}", self.base)
    }
}

/// Digit occurrence counts for one natural in one base:
/// `counts[d] = #d(n)_b` and `length = #(n)_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitStats {
    counts: Vec<u64>,
    length: u64,
    base: Base,
}

impl DigitStats {
    /// Builds stats from a raw counts vector (one entry per digit).
    /// The length is the sum of the counts and must be at least 1.
    pub fn from_counts(counts: Vec<u64>, base: Base) -> Result<Self, Error> {
        if counts.len() != base.get() as usize {
            return Err(Error::BaseMismatch {
                expected: base.get(),
                found: counts.len() as u32,
            });
        }
        let length: u64 = counts.iter().sum();
        if length == 0 {
            return Err(Error::EmptyRange { lo: 0, hi: 0 });
        }
        Ok(DigitStats { counts, length, base })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, d: u32) -> u64 {
        self.counts.get(d as usize).copied().unwrap_or(0)
    }

    /// Largest deviation `|counts[d]/length - 1/b|` over all digits,
    /// as an exact rational.
    pub fn max_deviation(&self) -> Ratio<Natural> {
        let b = Natural::from(self.base.get());
        let len = Natural::from(self.length);
        let mut worst = Natural::zero();
        for &c in &self.counts {
            let scaled = &b * Natural::from(c);
            let diff = if scaled >= len { &scaled - &len } else { &len - &scaled };
            if diff > worst {
                worst = diff;
            }
        }
        Ratio::new(worst, b * len)
    }
}

/// An exact rational threshold `0 < num/den < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self, Error> {
        if num == 0 || den == 0 || num >= den {
            Err(Error::InvalidEpsilon { num, den })
        } else {
            Ok(Epsilon { num, den })
        }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Expands `n` in base `b`, least-significant digit first.
pub fn to_digits(n: &Natural, b: Base) -> DigitVector {
    if n.is_zero() {
        return DigitVector { digits: vec![0], base: b };
    }
    let digits = if let Some(s) = b.log2_exact() {
        pow2_digits(n, s)
    } else if let Some(v) = n.to_u64() {
        let mut out = Vec::new();
        append_u64_digits(v, b.get() as u64, &mut out);
        out
    } else if (n.bits() + 63) / 64 <= DC_LIMB_THRESHOLD {
        chunked_digits(n, b)
    } else {
        dc_digits(n, b)
    };
    debug_assert!(*digits.last().unwrap() != 0);
    DigitVector { digits, base: b }
}

/// Reconstructs the natural represented by a digit vector.
///
/// Together with [`to_digits`] this is a round-trip identity:
/// `from_digits(&to_digits(n, b)) == n`.
pub fn from_digits(dv: &DigitVector) -> Natural {
    natural_from_digits(dv.digits(), dv.base())
}

/// Value of raw least-significant-first digits in base `b`.
/// Digits must already be in range (callers validate via `DigitVector`).
fn natural_from_digits(digits: &[u32], b: Base) -> Natural {
    if let Some(s) = b.log2_exact() {
        return pow2_value(digits, s);
    }
    value_tree(digits, b)
}

fn value_tree(digits: &[u32], b: Base) -> Natural {
    let (chunk_len, _) = b.chunk();
    if digits.len() as u64 <= chunk_len * DC_LIMB_THRESHOLD {
        return horner_value(digits, b);
    }
    let mid = digits.len() / 2;
    let (lo, hi) = digits.split_at(mid);
    let (lo_val, lo_pow) = value_and_power(lo, b);
    value_tree(hi, b) * lo_pow + lo_val
}

/// Returns `(value, b^len)` for a digit slice, recursively.
fn value_and_power(digits: &[u32], b: Base) -> (Natural, Natural) {
    let (chunk_len, _) = b.chunk();
    if digits.len() as u64 <= chunk_len * DC_LIMB_THRESHOLD {
        let pow = Natural::from(b.get()).pow(digits.len() as u32);
        return (horner_value(digits, b), pow);
    }
    let mid = digits.len() / 2;
    let (lo, hi) = digits.split_at(mid);
    let (lo_val, lo_pow) = value_and_power(lo, b);
    let (hi_val, hi_pow) = value_and_power(hi, b);
    (hi_val * &lo_pow + lo_val, lo_pow * hi_pow)
}

/// Chunked Horner evaluation, most-significant chunk first. Each full
/// chunk packs `chunk_len` digits into one u64, so the big-number work is
/// one scalar multiply-add per chunk.
fn horner_value(digits: &[u32], b: Base) -> Natural {
    let (chunk_len, chunk_pow) = b.chunk();
    let chunk_len = chunk_len as usize;
    let bb = b.get() as u64;
    let mut acc = Natural::zero();
    let rem = digits.len() % chunk_len;
    let mut pos = digits.len();
    if rem > 0 {
        pos -= rem;
        let mut v = 0u64;
        for &d in digits[pos..].iter().rev() {
            v = v * bb + d as u64;
        }
        acc = Natural::from(v);
    }
    while pos > 0 {
        pos -= chunk_len;
        let mut v = 0u64;
        for &d in digits[pos..pos + chunk_len].iter().rev() {
            v = v * bb + d as u64;
        }
        acc = acc * chunk_pow + v;
    }
    acc
}

fn append_u64_digits(mut v: u64, b: u64, out: &mut Vec<u32>) {
    while v > 0 {
        out.push((v % b) as u32);
        v /= b;
    }
}

/// Quadratic fallback for mid-sized numbers: strip `chunk_len` digits per
/// big-number division by `b^chunk_len`.
fn chunked_digits(n: &Natural, b: Base) -> Vec<u32> {
    let (chunk_len, chunk_pow) = b.chunk();
    let divisor = Natural::from(chunk_pow);
    let bb = b.get() as u64;
    let mut out = Vec::new();
    let mut cur = n.clone();
    while !cur.is_zero() {
        if let Some(v) = cur.to_u64() {
            append_u64_digits(v, bb, &mut out);
            break;
        }
        let (q, r) = cur.div_rem(&divisor);
        let mut v = r.to_u64().unwrap();
        for _ in 0..chunk_len {
            out.push((v % bb) as u32);
            v /= bb;
        }
        cur = q;
    }
    out
}

/// Divide-and-conquer digit extraction. Precomputes the tower
/// `b^c, b^2c, b^4c, ...` and splits `n` at the power nearest half its
/// size, so each level halves the problem.
fn dc_digits(n: &Natural, b: Base) -> Vec<u32> {
    let (chunk_len, chunk_pow) = b.chunk();
    let mut powers: Vec<(Natural, u64)> = vec![(Natural::from(chunk_pow), chunk_len)];
    loop {
        let (p, w) = powers.last().unwrap();
        if p > n {
            break;
        }
        let next = (p * p, w * 2);
        powers.push(next);
    }
    let mut out = Vec::new();
    dc_rec(n.clone(), powers.len() - 1, &powers, b, &mut out);
    out
}

fn dc_rec(n: Natural, hint: usize, powers: &[(Natural, u64)], b: Base, out: &mut Vec<u32>) {
    if let Some(v) = n.to_u64() {
        append_u64_digits(v, b.get() as u64, out);
        return;
    }
    if (n.bits() + 63) / 64 <= DC_LIMB_THRESHOLD {
        out.extend_from_slice(&chunked_digits(&n, b));
        return;
    }
    let mut j = hint;
    while powers[j].0 > n {
        j -= 1;
    }
    let (q, r) = n.div_rem(&powers[j].0);
    debug_assert!(!q.is_zero());
    let mark = out.len();
    dc_rec(r, j, powers, b, out);
    out.resize(mark + powers[j].1 as usize, 0);
    dc_rec(q, j, powers, b, out);
}

/// Bit-group extraction for bases that are powers of two.
fn pow2_digits(n: &Natural, s: u32) -> Vec<u32> {
    let bytes = n.to_bytes_le();
    let total_bits = n.bits();
    let mut out = Vec::with_capacity((total_bits / s as u64 + 1) as usize);
    let mut pos = 0u64;
    while pos < total_bits {
        out.push(read_bits(&bytes, pos, s));
        pos += s as u64;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn read_bits(bytes: &[u8], pos: u64, s: u32) -> u32 {
    let mut v = 0u64;
    let first = (pos / 8) as usize;
    let shift = (pos % 8) as u32;
    for (i, &byte) in bytes.iter().enumerate().skip(first).take(6) {
        v |= (byte as u64) << ((i - first) * 8);
    }
    ((v >> shift) & ((1u64 << s) - 1)) as u32
}

fn pow2_value(digits: &[u32], s: u32) -> Natural {
    let total_bits = digits.len() as u64 * s as u64;
    let mut bytes = vec![0u8; (total_bits / 8 + 9) as usize];
    for (i, &d) in digits.iter().enumerate() {
        let pos = i as u64 * s as u64;
        let first = (pos / 8) as usize;
        let shift = (pos % 8) as u32;
        let v = (d as u64) << shift;
        for k in 0..6 {
            bytes[first + k] |= (v >> (k * 8)) as u8;
        }
    }
    Natural::from_bytes_le(&bytes)
}

/// Number of occurrences of the digit `d` in the base-`b` expansion of `n`.
pub fn count_digit(n: &Natural, d: u32, b: Base) -> Result<u64, Error> {
    if d >= b.get() {
        return Err(Error::DigitOutOfRange { digit: d, base: b.get() });
    }
    Ok(to_digits(n, b).count_of(d))
}

/// Per-digit counts and total length of the base-`b` expansion of `n`.
pub fn digit_stats(n: &Natural, b: Base) -> DigitStats {
    to_digits(n, b).stats()
}

/// Exact test of `|counts[d]/length - 1/b| < eps` for every digit `d`.
///
/// Evaluated by cross-multiplication in integer arithmetic, so boundary
/// cases are decided deterministically; there is no floating-point path.
pub fn is_eps_equidistributed(stats: &DigitStats, eps: Epsilon) -> bool {
    let b = Natural::from(stats.base().get());
    let len = Natural::from(stats.length());
    let num = Natural::from(eps.numerator());
    let den = Natural::from(eps.denominator());
    let rhs = &num * &b * &len;
    for &c in stats.counts() {
        let scaled = &b * Natural::from(c);
        let diff = if scaled >= len { &scaled - &len } else { &len - &scaled };
        if diff * &den >= rhs {
            return false;
        }
    }
    true
}

/// Counts of every contiguous window of `block_len` digits over the
/// base-`b` expansion of `n`, keyed most-significant-digit first.
pub fn block_stats(
    n: &Natural,
    b: Base,
    block_len: u64,
) -> Result<BTreeMap<Vec<u32>, u64>, Error> {
    if block_len == 0 {
        return Err(Error::BlockLengthZero);
    }
    let dv = to_digits(n, b);
    if dv.len() < block_len {
        return Err(Error::BlockTooLong { digits: dv.len(), block: block_len });
    }
    let msf: Vec<u32> = dv.digits().iter().rev().copied().collect();
    let mut out = BTreeMap::new();
    for w in msf.windows(block_len as usize) {
        *out.entry(w.to_vec()).or_insert(0u64) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_traits::One;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn base(b: u32) -> Base {
        Base::new(b).unwrap()
    }

    /// Independent oracle: plain repeated division, no shortcuts.
    fn naive_digits(n: &Natural, b: Base) -> Vec<u32> {
        if n.is_zero() {
            return vec![0];
        }
        let divisor = Natural::from(b.get());
        let mut cur = n.clone();
        let mut out = Vec::new();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem(&divisor);
            out.push(r.to_u64().unwrap() as u32);
            cur = q;
        }
        out
    }

    #[test]
    fn base_requires_two() {
        assert_eq!(Base::new(1).unwrap_err(), Error::BaseTooSmall { b: 1 });
        assert_eq!(Base::new(0).unwrap_err(), Error::BaseTooSmall { b: 0 });
        assert!(Base::new(2).is_ok());
    }

    #[test]
    fn hundred_in_base_three() {
        // 100 in decimal is 10201 in ternary.
        let dv = to_digits(&nat(100), base(3));
        assert_eq!(dv.digits(), &[1, 0, 2, 0, 1]);
        assert_eq!(dv.to_string(), "10201_3");
        assert_eq!(from_digits(&dv), nat(100));
    }

    #[test]
    fn zero_is_single_zero_digit() {
        let dv = to_digits(&nat(0), base(7));
        assert_eq!(dv.digits(), &[0]);
        assert_eq!(dv.len(), 1);
        assert_eq!(from_digits(&dv), nat(0));
    }

    #[test]
    fn seven_in_binary() {
        // Oracle: 7 = 1 + 2 + 4 by repeated division by 2.
        assert_eq!(to_digits(&nat(7), base(2)).digits(), &[1, 1, 1]);
    }

    #[test]
    fn from_parts_validates_and_normalizes() {
        let dv = DigitVector::from_parts(vec![1, 0, 2, 0, 1], base(3)).unwrap();
        assert_eq!(from_digits(&dv), nat(100));
        let dv = DigitVector::from_parts(vec![0], base(5)).unwrap();
        assert_eq!(from_digits(&dv), nat(0));
        let dv = DigitVector::from_parts(vec![1, 1, 1], base(2)).unwrap();
        assert_eq!(from_digits(&dv), nat(7));
        // out-of-range digit is rejected
        assert_eq!(
            DigitVector::from_parts(vec![1, 3], base(3)).unwrap_err(),
            Error::DigitOutOfRange { digit: 3, base: 3 }
        );
        // leading zeros are stripped
        let dv = DigitVector::from_parts(vec![1, 1, 0, 0], base(2)).unwrap();
        assert_eq!(dv.digits(), &[1, 1]);
    }

    #[test]
    fn count_digit_matches_paper_examples() {
        // #2(100)_3 = 1 since 100 = 10201_3
        assert_eq!(count_digit(&nat(100), 2, base(3)).unwrap(), 1);
        // 16 = 121_3 has two digits 1
        assert_eq!(count_digit(&nat(16), 1, base(3)).unwrap(), 2);
        // zero is one zero digit
        assert_eq!(count_digit(&nat(0), 0, base(10)).unwrap(), 1);
        assert_eq!(
            count_digit(&nat(5), 4, base(3)).unwrap_err(),
            Error::DigitOutOfRange { digit: 4, base: 3 }
        );
    }

    #[test]
    fn stats_of_hundred_base_three() {
        let st = digit_stats(&nat(100), base(3));
        assert_eq!(st.counts(), &[2, 2, 1]);
        assert_eq!(st.length(), 5);
    }

    #[test]
    fn stats_of_zero() {
        let st = digit_stats(&nat(0), base(2));
        assert_eq!(st.counts(), &[1, 0]);
        assert_eq!(st.length(), 1);
    }

    #[test]
    fn stats_of_two_to_ten() {
        // 2^10 = 1024 = 1101221_3 (oracle: repeated division).
        let dv = to_digits(&nat(1024), base(3));
        assert_eq!(dv.to_string(), "1101221_3");
        let st = dv.stats();
        assert_eq!(st.counts(), &[1, 4, 2]);
        assert_eq!(st.length(), 7);
    }

    #[test]
    fn eps_equidistribution_boundaries() {
        let eps = Epsilon::new(1, 6).unwrap();
        // exact uniformity: 21 = 210_3
        let uniform = DigitStats::from_counts(vec![1, 1, 1], base(3)).unwrap();
        assert_eq!(digit_stats(&nat(21), base(3)), uniform);
        assert!(is_eps_equidistributed(&uniform, eps));

        // maximal deviation
        let skewed = DigitStats::from_counts(vec![3, 0, 0], base(3)).unwrap();
        assert!(!is_eps_equidistributed(&skewed, eps));
    }

    #[test]
    fn eps_rejects_degenerate() {
        assert!(Epsilon::new(0, 5).is_err());
        assert!(Epsilon::new(5, 5).is_err());
        assert!(Epsilon::new(6, 5).is_err());
        assert!(Epsilon::new(1, 0).is_err());
    }

    #[test]
    fn max_deviation_exact() {
        let st = digit_stats(&nat(100), base(3)); // counts [2,2,1], len 5
        // |3*1 - 5| / 15 = 2/15 is the worst digit
        let dev = st.max_deviation();
        assert_eq!(dev, Ratio::new(nat(2), nat(15)));
    }

    #[test]
    fn block_stats_examples() {
        // windows of 10201_3 of length 2
        let blocks = block_stats(&nat(100), base(3), 2).unwrap();
        let expect: BTreeMap<Vec<u32>, u64> = [
            (vec![1, 0], 1),
            (vec![0, 2], 1),
            (vec![2, 0], 1),
            (vec![0, 1], 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(blocks, expect);

        // 5 = 101_2, single window of length 3
        let blocks = block_stats(&nat(5), base(2), 3).unwrap();
        assert_eq!(blocks, [(vec![1, 0, 1], 1)].into_iter().collect());

        // block length 1 reduces to digit stats
        let blocks = block_stats(&nat(100), base(3), 1).unwrap();
        let st = digit_stats(&nat(100), base(3));
        for d in 0..3u32 {
            assert_eq!(blocks.get(&vec![d]).copied().unwrap_or(0), st.count(d));
        }

        assert!(matches!(block_stats(&nat(5), base(2), 9), Err(Error::BlockTooLong { .. })));
        assert!(matches!(block_stats(&nat(5), base(2), 0), Err(Error::BlockLengthZero)));
    }

    #[test]
    fn conversion_agrees_with_naive_oracle() {
        // cross-check every strategy branch against repeated division
        let samples: Vec<Natural> = vec![
            nat(1),
            nat(65535),
            nat(u64::MAX),
            Natural::from(u64::MAX) * Natural::from(u64::MAX),
            Natural::one() << 3000u32,
            (Natural::one() << 5000u32) - 1u32,
            Natural::from(0xdead_beef_u64).pow(500),
        ];
        for b in [3u32, 4, 5, 10, 16, 36, 100] {
            let b = base(b);
            for n in &samples {
                let fast = to_digits(n, b);
                assert_eq!(fast.digits(), naive_digits(n, b), "base {b}");
                assert_eq!(&from_digits(&fast), n, "base {b}");
            }
        }
    }

    #[test]
    fn mul_small_matches_reconversion() {
        let b = base(3);
        let mut dv = to_digits(&nat(1), b);
        let mut value = nat(1);
        for step in 0u32..200 {
            let factor = [2u32, 2, 2, 5, 7][(step % 5) as usize];
            dv.mul_small(factor);
            value *= factor;
            assert_eq!(dv, to_digits(&value, b), "step {step}");
        }
        // multiplying by zero collapses to the canonical zero
        dv.mul_small(0);
        assert!(dv.is_zero());
    }

    #[test]
    fn length_bound_holds() {
        for n in 1u64..2000 {
            for b in [2u32, 3, 7, 10] {
                let b = base(b);
                let len = to_digits(&nat(n), b).len() as u32;
                let bb = Natural::from(b.get());
                assert!(bb.pow(len - 1) <= nat(n));
                assert!(nat(n) < bb.pow(len));
            }
        }
    }
}

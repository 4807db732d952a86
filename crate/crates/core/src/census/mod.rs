//! Exact subtree statistics: how many subtrees a graph has and their total order.
//!
//! Three independent routes are provided and cross-checked in the tests:
//! direct enumeration of subtrees ([`subtree_stats_bruteforce`]), connected vertex
//! sets weighted by their spanning-tree counts ([`subtree_stats_kirchhoff`]), and a
//! rooted dynamic programme for trees ([`tree_subtree_stats`]).

mod brute;
mod connected;
mod kirchhoff;
mod marked;
mod tree_dp;

pub use brute::{for_each_subtree, subtree_stats_bruteforce, MAX_BRUTE_ORDER};
pub use connected::for_each_connected_set;
pub use kirchhoff::{
    spanning_tree_count, spanning_tree_polynomial, subtree_stats_kirchhoff, MAX_KIRCHHOFF_ORDER,
    MAX_SPANNING_ORDER,
};
pub use marked::{
    marked_census, MarkedCensus, PendantStars, Signature, DEFAULT_EXPONENT_CAP_BITS,
    MAX_CENSUS_ORDER, MAX_MARKED,
};
pub use tree_dp::tree_subtree_stats;
pub(crate) use tree_dp::tree_stats_raw;

use std::cmp::Ordering;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational in lowest terms.
pub type Rational = BigRational;

/// Builds the reduced fraction `num / den` from unsigned parts.
pub fn ratio(num: &BigUint, den: &BigUint) -> Rational {
    Rational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Number of subtrees in a family and the sum of their orders.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubtreeStats {
    pub count: BigUint,
    pub total_order: BigUint,
}

impl SubtreeStats {
    pub fn new(count: impl Into<BigUint>, total_order: impl Into<BigUint>) -> Self {
        SubtreeStats {
            count: count.into(),
            total_order: total_order.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.count.is_zero()
    }

    /// Mean subtree order `total / count`.
    pub fn mean(&self) -> Result<Rational> {
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(ratio(&self.total_order, &self.count))
    }

    /// Mean order divided by the host order `n`.
    pub fn density(&self, n: &BigUint) -> Result<Rational> {
        if n.is_zero() {
            return Err(Error::InvalidParameters("density needs a positive order".into()));
        }
        Ok(self.mean()? / Rational::from(BigInt::from(n.clone())))
    }

    /// Compares means by cross-multiplication, avoiding gcd reductions on huge values.
    /// Both families must be non-empty.
    pub fn cmp_mean(&self, other: &SubtreeStats) -> Ordering {
        debug_assert!(!self.is_empty() && !other.is_empty());
        (&self.total_order * &other.count).cmp(&(&other.total_order * &self.count))
    }

    /// Compares the mean against a rational.
    pub fn cmp_mean_with(&self, value: &Rational) -> Ordering {
        let lhs = BigInt::from(self.total_order.clone()) * value.denom();
        let rhs = value.numer() * BigInt::from(self.count.clone());
        lhs.cmp(&rhs)
    }
}

impl Add for SubtreeStats {
    type Output = SubtreeStats;

    fn add(mut self, rhs: SubtreeStats) -> SubtreeStats {
        self += rhs;
        self
    }
}

impl AddAssign for SubtreeStats {
    fn add_assign(&mut self, rhs: SubtreeStats) {
        self.count += rhs.count;
        self.total_order += rhs.total_order;
    }
}

impl<'a> AddAssign<&'a SubtreeStats> for SubtreeStats {
    fn add_assign(&mut self, rhs: &'a SubtreeStats) {
        self.count += &rhs.count;
        self.total_order += &rhs.total_order;
    }
}

impl Sum for SubtreeStats {
    fn sum<I: Iterator<Item = SubtreeStats>>(iter: I) -> Self {
        iter.fold(SubtreeStats::zero(), Add::add)
    }
}

/// Decimal rendering of `value` rounded half-up to `digits` significant digits.
/// Plain notation for moderate magnitudes, `d.ddde±x` otherwise.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if value.is_zero() {
        return "0".into();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let num = value.numer().abs();
    let den = value.denom().clone();
    let ten = BigInt::from(10u32);

    // exponent e with 10^e <= num/den < 10^(e+1)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let below = |e: i64| {
        if e >= 0 {
            num < &den * ten.pow(e as u32)
        } else {
            &num * ten.pow((-e) as u32) < den
        }
    };
    if below(e) {
        e -= 1;
    }
    let shift = digits as i64 - 1 - e;
    let (scaled_num, scaled_den) = if shift >= 0 {
        (&num * ten.pow(shift as u32), den.clone())
    } else {
        (num.clone(), &den * ten.pow((-shift) as u32))
    };
    let (mut q, r) = scaled_num.div_rem(&scaled_den);
    if r * 2u32 >= scaled_den {
        q += 1u32;
    }
    if q.to_string().len() > digits {
        q /= 10u32;
        e += 1;
    }
    let mantissa = q.to_string();
    if (-6..21).contains(&e) {
        let body = if e >= 0 {
            let int_len = (e + 1) as usize;
            if int_len >= mantissa.len() {
                format!("{mantissa}{}", "0".repeat(int_len - mantissa.len()))
            } else {
                format!("{}.{}", &mantissa[..int_len], &mantissa[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), mantissa)
        };
        format!("{sign}{body}")
    } else {
        let (head, tail) = mantissa.split_at(1);
        let tail = if tail.is_empty() {
            String::new()
        } else {
            format!(".{tail}")
        };
        format!("{sign}{head}{tail}e{e:+}")
    }
}

/// Canonical `p/q` form; integers print without a denominator.
pub fn to_fraction(value: &Rational) -> String {
    if value.denom() == &BigInt::from(1u32) {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

//! Outward-rounded fixed-point interval arithmetic.
//!
//! An [`Interval`] is `[lo, hi] * 2^-scale` with big-integer endpoints. Every
//! operation rounds outward, so the true value of any expression built from
//! enclosures stays inside the result. This is the only place where real
//! numbers are approximated; decisions made from these intervals are sound
//! because a sign is reported only when zero is excluded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn floor_shr(v: &BigInt, bits: u32) -> BigInt {
    if v.is_negative() {
        -ceil_shr(&-v, bits)
    } else {
        v >> bits as usize
    }
}

fn ceil_shr(v: &BigInt, bits: u32) -> BigInt {
    if v.is_negative() {
        -floor_shr(&-v, bits)
    } else {
        (v + pow2(bits) - BigInt::one()) >> bits as usize
    }
}

pub(crate) fn floor_rational(q: &BigRational, scale: u32) -> BigInt {
    (q.numer() << scale as usize).div_floor(q.denom())
}

pub(crate) fn ceil_rational(q: &BigRational, scale: u32) -> BigInt {
    -((-q.numer() << scale as usize).div_floor(q.denom()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub scale: u32,
}

impl Interval {
    pub fn from_int(n: &BigInt, scale: u32) -> Self {
        let v = n << scale as usize;
        Interval { lo: v.clone(), hi: v, scale }
    }

    pub fn from_rational(q: &BigRational, scale: u32) -> Self {
        Interval { lo: floor_rational(q, scale), hi: ceil_rational(q, scale), scale }
    }

    pub fn from_bounds(lo: &BigRational, hi: &BigRational, scale: u32) -> Self {
        Interval { lo: floor_rational(lo, scale), hi: ceil_rational(hi, scale), scale }
    }

    pub fn zero(scale: u32) -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero(), scale }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        debug_assert_eq!(self.scale, o.scale);
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, scale: self.scale }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, scale: self.scale }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn add_int(&self, n: &BigInt) -> Interval {
        let v = n << self.scale as usize;
        Interval { lo: &self.lo + &v, hi: &self.hi + &v, scale: self.scale }
    }

    pub fn mul_int(&self, n: &BigInt) -> Interval {
        let a = &self.lo * n;
        let b = &self.hi * n;
        if n.is_negative() {
            Interval { lo: b, hi: a, scale: self.scale }
        } else {
            Interval { lo: a, hi: b, scale: self.scale }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        debug_assert_eq!(self.scale, o.scale);
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mn = p.iter().min().unwrap();
        let mx = p.iter().max().unwrap();
        Interval { lo: floor_shr(mn, self.scale), hi: ceil_shr(mx, self.scale), scale: self.scale }
    }

    /// Square, tighter than `mul(self)` when the interval straddles zero.
    pub fn sqr(&self) -> Interval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let mx = a.clone().max(b.clone());
        let mn = if self.contains_zero() { BigInt::zero() } else { a.min(b) };
        Interval { lo: floor_shr(&mn, self.scale), hi: ceil_shr(&mx, self.scale), scale: self.scale }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Some(sign)` when the interval excludes zero or is exactly zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), pow2(self.scale))
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), pow2(self.scale))
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = BigRational::new(&self.lo + &self.hi, pow2(self.scale + 1));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Is every point of `self` `<=` every point of `o`?
    pub fn certainly_le(&self, o: &Interval) -> bool {
        self.hi <= o.lo
    }

    pub fn certainly_lt(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    /// Integer square root enclosure of a nonnegative interval.
    pub fn sqrt(&self) -> Interval {
        let s = self.scale as usize;
        let lo = if self.lo.is_positive() { (&self.lo << s).sqrt() } else { BigInt::zero() };
        let hi_base = if self.hi.is_positive() { (&self.hi << s).sqrt() } else { BigInt::zero() };
        let hi = hi_base + BigInt::one();
        Interval { lo, hi, scale: self.scale }
    }
}

/// Axis-aligned complex rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CInterval {
    pub re: Interval,
    pub im: Interval,
}

impl CInterval {
    pub fn real(re: Interval) -> Self {
        let scale = re.scale;
        CInterval { re, im: Interval::zero(scale) }
    }

    pub fn add(&self, o: &CInterval) -> CInterval {
        CInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CInterval) -> CInterval {
        CInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn add_int(&self, n: &BigInt) -> CInterval {
        CInterval { re: self.re.add_int(n), im: self.im.clone() }
    }

    pub fn mul(&self, o: &CInterval) -> CInterval {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CInterval { re, im }
    }

    pub fn mul_int(&self, n: &BigInt) -> CInterval {
        CInterval { re: self.re.mul_int(n), im: self.im.mul_int(n) }
    }

    pub fn conj(&self) -> CInterval {
        CInterval { re: self.re.clone(), im: self.im.neg() }
    }

    /// Enclosure of `|z|^2` over the rectangle.
    pub fn norm_sqr(&self) -> Interval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

/// Horner evaluation of an integer-coefficient polynomial (lowest first).
pub fn eval_int_poly(coeffs: &[BigInt], x: &Interval) -> Interval {
    let mut acc = Interval::zero(x.scale);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add_int(c);
    }
    acc
}

pub fn eval_int_poly_complex(coeffs: &[BigInt], z: &CInterval) -> CInterval {
    let mut acc = CInterval::real(Interval::zero(z.re.scale));
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add_int(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rounding_is_outward() {
        let third = Interval::from_rational(&rat(1, 3), 20);
        assert!(third.lo_rational() <= rat(1, 3));
        assert!(third.hi_rational() >= rat(1, 3));
        let neg = Interval::from_rational(&rat(-1, 3), 20);
        assert!(neg.lo_rational() <= rat(-1, 3));
        assert!(neg.hi_rational() >= rat(-1, 3));
        let prod = third.mul(&neg);
        assert!(prod.lo_rational() <= rat(-1, 9) && prod.hi_rational() >= rat(-1, 9));
    }

    #[test]
    fn sign_requires_exclusion_of_zero() {
        let x = Interval::from_bounds(&rat(-1, 10), &rat(1, 10), 16);
        assert_eq!(x.sign(), None);
        let y = Interval::from_bounds(&rat(1, 10), &rat(2, 10), 16);
        assert_eq!(y.sign(), Some(Ordering::Greater));
    }

    #[test]
    fn sqrt_encloses() {
        let two = Interval::from_int(&BigInt::from(2), 30);
        let r = two.sqrt();
        let sq = r.mul(&r);
        assert!(sq.lo_rational() <= rat(2, 1) && sq.hi_rational() >= rat(2, 1));
        assert!(r.hi_rational() - r.lo_rational() < rat(1, 1 << 20));
    }

    #[test]
    fn complex_norm_of_i() {
        let z = CInterval { re: Interval::zero(8), im: Interval::from_int(&BigInt::one(), 8) };
        assert_eq!(z.norm_sqr().sign(), Some(Ordering::Greater));
        let n = z.mul(&z);
        assert_eq!(n.re.lo_rational(), rat(-1, 1));
    }
}

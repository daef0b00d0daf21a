use crate::error::{Error, Result};
use crate::poly::QPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of `Q(β)`: `Σ coeffs[k] β^k`, coefficient of `β^0` first,
/// stored as an integer vector over one positive common denominator.
///
/// The representation is canonical (reduced modulo the minimal polynomial,
/// denominator coprime to the numerator content), so structural equality and
/// hashing coincide with equality of the represented numbers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    pub(crate) fn from_parts(num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = FieldElement { num, den };
        e.normalize();
        e
    }

    pub fn zero(degree: usize) -> Self {
        FieldElement { num: vec![BigInt::zero(); degree], den: BigInt::one() }
    }

    pub fn from_int(degree: usize, n: i64) -> Self {
        let mut e = Self::zero(degree);
        e.num[0] = BigInt::from(n);
        e
    }

    pub fn from_rational(degree: usize, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); degree];
        num[0] = q.numer().clone();
        Self::from_parts(num, q.denom().clone())
    }

    /// Build from already-reduced rational coefficients (length must be the
    /// field degree; use `BetaContext::reduce` for anything longer).
    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        Self::from_parts(num, den)
    }

    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn add_int(&self, n: i64) -> FieldElement {
        let mut num = self.num.clone();
        num[0] += &self.den * BigInt::from(n);
        FieldElement::from_parts(num, self.den.clone())
    }

    pub fn scale_int(&self, n: i64) -> FieldElement {
        let k = BigInt::from(n);
        FieldElement::from_parts(self.num.iter().map(|c| c * &k).collect(), self.den.clone())
    }

    pub fn scale(&self, q: &BigRational) -> FieldElement {
        FieldElement::from_parts(
            self.num.iter().map(|c| c * q.numer()).collect(),
            &self.den * q.denom(),
        )
    }

    pub(crate) fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.coeffs())
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in self.num.iter_mut() {
                *c = -c.clone();
            }
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.iter().fold(self.den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
        if self.is_zero() {
            self.den = BigInt::one();
        }
    }

    /// Text form: comma-separated rationals, lowest degree first.
    pub fn to_text(&self) -> String {
        self.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse(text: &str) -> Result<FieldElement> {
        let coeffs = text
            .split(',')
            .map(|s| parse_rational(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        Ok(FieldElement::from_rationals(&coeffs))
    }

    /// Human-readable form such as `β - 1` or `-2β^2 + 1/3`.
    pub fn pretty(&self, var: &str) -> String {
        let coeffs = self.coeffs();
        let mut out = String::new();
        for (k, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = if a.is_one() && k > 0 { String::new() } else { a.to_string() };
            out.push_str(&mag);
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self.to_text())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn combine(a: &FieldElement, b: &FieldElement, sign: i32) -> FieldElement {
    assert_eq!(a.num.len(), b.num.len(), "field elements from different contexts");
    if a.den == b.den {
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| if sign > 0 { x + y } else { x - y })
            .collect();
        return FieldElement::from_parts(num, a.den.clone());
    }
    let num = a
        .num
        .iter()
        .zip(&b.num)
        .map(|(x, y)| {
            let (p, q) = (x * &b.den, y * &a.den);
            if sign > 0 {
                p + q
            } else {
                p - q
            }
        })
        .collect();
    FieldElement::from_parts(num, &a.den * &b.den)
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        combine(self, rhs, 1)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        combine(self, rhs, -1)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

/// Reduction data for `Q[X]/(m)`, `m` primitive with positive leading
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Modulus {
    pub m: Vec<BigInt>,
}

impl Modulus {
    pub fn degree(&self) -> usize {
        self.m.len() - 1
    }

    fn lead(&self) -> &BigInt {
        self.m.last().unwrap()
    }

    /// Reduce an integer polynomial over denominator `den`.
    pub fn reduce_parts(&self, mut num: Vec<BigInt>, mut den: BigInt) -> FieldElement {
        let n = self.degree();
        let lead = self.lead().clone();
        while num.len() > n {
            let k = num.len() - 1;
            let c = num.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let shift = k - n;
            let g = c.gcd(&lead);
            let mul = &lead / &g;
            let cg = &c / &g;
            if !mul.is_one() {
                for x in num.iter_mut() {
                    *x = &*x * &mul;
                }
                den *= &mul;
            }
            for (j, mj) in self.m[..n].iter().enumerate() {
                num[shift + j] -= &cg * mj;
            }
        }
        num.resize(n, BigInt::zero());
        FieldElement::from_parts(num, den)
    }

    pub fn reduce_rationals(&self, raw: &[BigRational]) -> FieldElement {
        if raw.is_empty() {
            return FieldElement::zero(self.degree());
        }
        let den = raw.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = raw
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        self.reduce_parts(num, den)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.degree();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce_parts(prod, &a.den * &b.den)
    }

    pub fn mul_by_beta(&self, a: &FieldElement) -> FieldElement {
        let mut num = Vec::with_capacity(a.num.len() + 1);
        num.push(BigInt::zero());
        num.extend(a.num.iter().cloned());
        self.reduce_parts(num, a.den.clone())
    }

    /// `β·a + digit`, the transition function of every zero automaton.
    pub fn beta_times_plus(&self, a: &FieldElement, digit: i64) -> FieldElement {
        let mut num = Vec::with_capacity(a.num.len() + 1);
        num.push(&a.den * BigInt::from(digit));
        num.extend(a.num.iter().cloned());
        self.reduce_parts(num, a.den.clone())
    }

    /// Multiplicative inverse through the extended Euclidean algorithm.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let m = QPoly::from_ints(self.m.iter().cloned());
        let (mut r0, mut r1) = (m, a.to_qpoly());
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant when m is irreducible.
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.coeffs()[0].clone();
        Some(self.reduce_rationals(s0.scale(&c.recip()).coeffs()))
    }
}

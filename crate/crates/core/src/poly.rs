//! Dense univariate polynomials over Q, coefficients lowest degree first.
//!
//! Only what root isolation and field construction need: Euclidean division,
//! gcd, derivatives and Sturm chains. Degrees are tiny (desk scale), so
//! everything is done with exact rationals and no attempt at fast
//! multiplication.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = BigInt>>(ints: I) -> Self {
        Self::new(ints.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        QPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        QPoly::new(out)
    }

    pub fn neg(&self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, q: &BigRational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, divisor: &QPoly) -> QPoly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> QPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => QPoly::zero(),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        self.eval(x).cmp(&BigRational::zero())
    }

    /// `X^n p(1/X)` with `n` the degree.
    pub fn reciprocal(&self) -> QPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        QPoly::new(c)
    }

    /// Scale to a primitive integer polynomial with positive leading
    /// coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Square-free part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }
}

/// Sturm chain of a polynomial: `p, p', -rem(p, p'), ...`.
pub struct SturmChain {
    chain: Vec<QPoly>,
}

impl SturmChain {
    pub fn new(p: &QPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    /// Number of sign changes of the chain evaluated at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Smallest power of two strictly above every root modulus (Cauchy bound).
pub fn root_bound_pow2(p: &QPoly) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let mut m = BigRational::zero();
    for c in &p.coeffs()[..p.coeffs().len() - 1] {
        let r = c.abs() / &lead;
        if r > m {
            m = r;
        }
    }
    let bound = m + BigRational::one();
    let mut pow = BigRational::one();
    while pow <= bound {
        pow *= BigRational::from_integer(BigInt::from(2));
    }
    pow
}

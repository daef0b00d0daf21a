//! Exact arithmetic in `Q(β)` and certified root enclosures.
//!
//! A [`BetaContext`] is built from an integer polynomial. It selects the
//! largest real root above one as β, isolates every other root, finds the
//! minimal polynomial of β, and from then on does all arithmetic on
//! [`FieldElement`]s reduced modulo that minimal polynomial. Signs and
//! comparisons of real values are decided by interval evaluation on a
//! refinable enclosure of β; zero is always decided symbolically.

mod bounds;
mod classify;
mod field;
mod minimal;

pub use bounds::{Bound, EmbeddingBound, Which};
pub(crate) use bounds::within;
pub use classify::{ModulusVerdict, RootClass, RootKind, RootVerdict};
pub use field::FieldElement;

use crate::error::{Error, Result};
use crate::interval::{eval_int_poly, eval_int_poly_complex, CInterval, Interval};
use crate::poly::QPoly;
use crate::roots::RootSet;
use field::Modulus;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::sync::{Mutex, MutexGuard, OnceLock};

/// Precision ceiling after which boundary comparisons switch to exact
/// symbolic tests.
pub const PRECISION_CAP_BITS: u32 = 4096;

/// Default working precision for enclosures.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Parse `"1,-1,-1"` (highest degree first) into integer coefficients.
pub fn parse_poly(text: &str) -> Result<Vec<i64>> {
    let coeffs: Vec<i64> = text
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<i64>().map_err(|_| Error::Parse(format!("not an integer coefficient: {s:?}")))
        })
        .collect::<Result<_>>()?;
    if coeffs.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Ok(coeffs)
}

pub fn format_poly(coeffs: &[i64]) -> String {
    coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// A field embedding, named by the root β is sent to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Embedding {
    /// The identity embedding, β itself.
    Beta,
    /// A real conjugate; index into the real roots of the input polynomial.
    Real(usize),
    /// A non-real conjugate; index into the non-real roots.
    Complex(usize),
}

/// Enclosure of one root of the input polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootEnclosure {
    Real { lo: BigRational, hi: BigRational },
    Complex { re: (BigRational, BigRational), im: (BigRational, BigRational) },
}

impl RootEnclosure {
    /// Midpoint as a floating-point pair, for display only.
    pub fn approx(&self) -> (f64, f64) {
        let mid = |a: &BigRational, b: &BigRational| ((a + b) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN);
        match self {
            RootEnclosure::Real { lo, hi } => (mid(lo, hi), 0.0),
            RootEnclosure::Complex { re, im } => (mid(&re.0, &re.1), mid(&im.0, &im.1)),
        }
    }
}

/// The base β together with everything needed to compute in `Q(β)`.
#[derive(Debug)]
pub struct BetaContext {
    poly: Vec<i64>,
    modulus: Modulus,
    roots: Mutex<RootSet>,
    beta: usize,
    conj_real: Vec<usize>,
    conj_complex: Vec<usize>,
    precision_bits: u32,
    ceil_beta: i64,
    verdicts: OnceLock<classify::Verdicts>,
}

impl BetaContext {
    /// Build a context from integer coefficients, highest degree first.
    pub fn new(poly: &[i64], precision_bits: u32) -> Result<BetaContext> {
        let first_nonzero = poly.iter().position(|&c| c != 0);
        if poly.is_empty() || first_nonzero != Some(0) {
            return Err(Error::ZeroLeadingCoefficient);
        }
        if poly.len() < 2 {
            return Err(Error::NoRootAboveOne);
        }
        let sign = if poly[0] < 0 { -1 } else { 1 };
        let low_first: Vec<BigInt> = poly.iter().rev().map(|&c| BigInt::from(c * sign)).collect();
        let q = QPoly::from_ints(low_first.iter().cloned());
        if q.gcd(&q.derivative()).degree() != Some(0) {
            return Err(Error::NonSquarefreePolynomial);
        }
        let precision_bits = precision_bits.max(16);
        let mut roots = RootSet::isolate(&low_first, precision_bits)?;
        let one = BigRational::one();
        // Largest real root, and it must lie strictly above one.
        let beta = roots.real.len().checked_sub(1).ok_or(Error::NoRootAboveOne)?;
        {
            let top = &roots.real[beta];
            let above = if top.is_exact() {
                top.lo > one
            } else {
                top.lo >= one || roots.count_real_in(&one, &top.hi) == 1
            };
            if !above {
                return Err(Error::NoRootAboveOne);
            }
            if !top.is_exact() && top.lo < one {
                let mut r = top.clone();
                r.lo = one.clone();
                roots.real[beta] = r;
            }
        }
        let factor = minimal::find_minimal(&low_first, &mut roots, beta)?;
        let modulus = Modulus { m: factor.coeffs.clone() };
        let mut ctx = BetaContext {
            poly: poly.iter().map(|c| c * sign).collect(),
            modulus,
            roots: Mutex::new(roots),
            beta,
            conj_real: factor.real,
            conj_complex: factor.complex,
            precision_bits,
            ceil_beta: 0,
            verdicts: OnceLock::new(),
        };
        let b = ctx.beta();
        let fl = ctx.floor(&b);
        let is_int = ctx.sign(&b.add_int(-fl.to_i64().unwrap())) == Ordering::Equal;
        ctx.ceil_beta = fl.to_i64().expect("β fits in i64") + if is_int { 0 } else { 1 };
        Ok(ctx)
    }

    /// Parse a polynomial in text form and build the context.
    pub fn from_text(text: &str, precision_bits: u32) -> Result<BetaContext> {
        BetaContext::new(&parse_poly(text)?, precision_bits)
    }

    /// Input polynomial, highest degree first, leading coefficient positive.
    pub fn poly(&self) -> &[i64] {
        &self.poly
    }

    /// Minimal polynomial of β, lowest degree first.
    pub fn minimal_poly(&self) -> &[BigInt] {
        &self.modulus.m
    }

    /// Degree of `Q(β)` over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn is_irreducible(&self) -> bool {
        self.modulus.degree() + 1 == self.poly.len()
    }

    pub fn is_monic(&self) -> bool {
        self.poly[0] == 1
    }

    fn lock(&self) -> MutexGuard<'_, RootSet> {
        self.roots.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Current enclosure of β.
    pub fn beta_enclosure(&self) -> (BigRational, BigRational) {
        let r = &self.lock().real[self.beta];
        (r.lo.clone(), r.hi.clone())
    }

    /// Enclosures of every root of the input polynomial other than β.
    pub fn conjugates(&self) -> Vec<RootEnclosure> {
        let rs = self.lock();
        let mut out = Vec::new();
        for (i, r) in rs.real.iter().enumerate() {
            if i != self.beta {
                out.push(RootEnclosure::Real { lo: r.lo.clone(), hi: r.hi.clone() });
            }
        }
        for c in &rs.complex {
            out.push(RootEnclosure::Complex { re: c.re_bounds(), im: c.im_bounds() });
        }
        out
    }

    /// The embeddings of `Q(β)` other than the identity.
    pub fn embeddings(&self) -> Vec<Embedding> {
        self.conj_real
            .iter()
            .map(|&i| Embedding::Real(i))
            .chain(self.conj_complex.iter().map(|&i| Embedding::Complex(i)))
            .collect()
    }

    /// Refine all enclosures to width at most `2^-bits`.
    pub fn refine_to(&self, bits: u32) -> Result<()> {
        self.lock().refine(bits)
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if x.degree() == self.degree() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::zero(self.degree())
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_int(self.degree(), 1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement::from_int(self.degree(), n)
    }

    pub fn from_rational(&self, q: &BigRational) -> FieldElement {
        FieldElement::from_rational(self.degree(), q)
    }

    /// β as a field element.
    pub fn beta(&self) -> FieldElement {
        self.modulus.reduce_parts(vec![BigInt::zero(), BigInt::one()], BigInt::one())
    }

    /// Canonical representative of `raw(β)`, `raw` lowest degree first.
    pub fn reduce(&self, raw: &[BigRational]) -> FieldElement {
        self.modulus.reduce_rationals(raw)
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(x + y)
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(x - y)
    }

    pub fn neg(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        Ok(-x)
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.modulus.mul(x, y))
    }

    pub fn mul_by_beta(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        Ok(self.modulus.mul_by_beta(x))
    }

    pub fn scale(&self, x: &FieldElement, q: &BigRational) -> Result<FieldElement> {
        self.check(x)?;
        Ok(x.scale(q))
    }

    /// `β·x + digit`.
    pub fn step(&self, x: &FieldElement, digit: i64) -> FieldElement {
        self.modulus.beta_times_plus(x, digit)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: &FieldElement) -> Result<Option<FieldElement>> {
        self.check(x)?;
        Ok(self.modulus.inv(x))
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<Option<FieldElement>> {
        Ok(self.inv(y)?.map(|yi| self.modulus.mul(x, &yi)))
    }

    pub fn pow_beta(&self, k: usize) -> FieldElement {
        let mut x = self.one();
        for _ in 0..k {
            x = self.modulus.mul_by_beta(&x);
        }
        x
    }

    /// Value of the digit word `0.w_1 w_2 … w_n = Σ w_i β^{-i}`.
    pub fn word_value(&self, digits: &[i64]) -> FieldElement {
        let mut acc = self.zero();
        for &d in digits {
            acc = self.step(&acc, d);
        }
        let beta_n = self.pow_beta(digits.len());
        let inv = self.modulus.inv(&beta_n).expect("β is nonzero");
        self.modulus.mul(&acc, &inv)
    }

    fn scales(&self) -> impl Iterator<Item = u32> {
        let start = self.precision_bits;
        (0..).map(move |k| start.saturating_mul(1 << k.min(24)))
    }

    /// Interval evaluation of the numerator polynomial of `x` at a real root.
    fn eval_real(&self, x: &FieldElement, root: usize, scale: u32) -> Result<Interval> {
        let mut rs = self.lock();
        let fixed = rs.fixed(scale)?;
        Ok(eval_int_poly(x.numerators(), &fixed.real[root]))
    }

    pub(crate) fn eval_complex(&self, x: &FieldElement, root: usize, scale: u32) -> Result<CInterval> {
        let mut rs = self.lock();
        let fixed = rs.fixed(scale)?;
        Ok(eval_int_poly_complex(x.numerators(), &fixed.complex[root]))
    }

    pub(crate) fn complex_root_fixed(&self, root: usize, scale: u32) -> Result<CInterval> {
        let mut rs = self.lock();
        Ok(rs.fixed(scale)?.complex[root].clone())
    }

    /// Sign of `x` under the real embedding sending β to real root `root`.
    pub(crate) fn sign_at_real_root(&self, x: &FieldElement, root: usize) -> Ordering {
        if x.is_zero() {
            return Ordering::Equal;
        }
        for scale in self.scales() {
            let iv = self.eval_real(x, root, scale).expect("root refinement failed");
            if let Some(s) = iv.sign() {
                return s;
            }
        }
        unreachable!("scale ladder is infinite")
    }

    /// Exact sign of the real number `x(β)`.
    pub fn sign(&self, x: &FieldElement) -> Ordering {
        self.sign_at_real_root(x, self.beta)
    }

    pub fn cmp(&self, x: &FieldElement, y: &FieldElement) -> Ordering {
        self.sign(&(x - y))
    }

    /// Sign of `x` under any real embedding.
    pub fn sign_in(&self, x: &FieldElement, emb: Embedding) -> Option<Ordering> {
        match emb {
            Embedding::Beta => Some(self.sign(x)),
            Embedding::Real(i) => Some(self.sign_at_real_root(x, i)),
            Embedding::Complex(_) => None,
        }
    }

    /// Rational enclosure of `x(β)` of width roughly `2^-bits` times the
    /// size of the coefficients.
    pub fn enclose(&self, x: &FieldElement, bits: u32) -> (BigRational, BigRational) {
        let iv = self.eval_real(x, self.beta, bits.max(16)).expect("root refinement failed");
        let d = BigRational::from_integer(x.denominator().clone());
        (iv.lo_rational() / &d, iv.hi_rational() / d)
    }

    /// Floating-point value, for display and heuristics only.
    pub fn approx(&self, x: &FieldElement) -> f64 {
        let (lo, hi) = self.enclose(x, 96);
        ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    /// The integer `m` with `m <= x(β) < m + 1`.
    pub fn floor(&self, x: &FieldElement) -> BigInt {
        let (lo, _) = self.enclose(x, self.precision_bits);
        let mut m = lo.floor().to_integer();
        loop {
            let below = x - &FieldElement::from_rational(self.degree(), &BigRational::from_integer(m.clone()));
            if self.sign(&below) == Ordering::Less {
                m -= 1;
                continue;
            }
            let next = &m + BigInt::one();
            let above = x - &FieldElement::from_rational(self.degree(), &BigRational::from_integer(next.clone()));
            if self.sign(&above) != Ordering::Less {
                m = next;
                continue;
            }
            return m;
        }
    }

    /// `⌈β⌉`; the canonical alphabet is `{0, …, ⌈β⌉ - 1}`.
    pub fn ceil_beta(&self) -> i64 {
        self.ceil_beta
    }

    /// Largest digit of the canonical alphabet, `⌈β⌉ - 1`.
    pub fn canonical_digit_max(&self) -> i64 {
        self.ceil_beta - 1
    }

    pub(crate) fn verdicts(&self) -> &classify::Verdicts {
        self.verdicts.get_or_init(|| classify::compute_verdicts(self))
    }

    /// Modulus verdict of a conjugate embedding.
    pub fn embedding_modulus(&self, emb: Embedding) -> ModulusVerdict {
        match emb {
            Embedding::Beta => ModulusVerdict::GreaterThanOne,
            Embedding::Real(i) => self.verdicts().real[i].unwrap_or(ModulusVerdict::GreaterThanOne),
            Embedding::Complex(i) => self.verdicts().complex[i],
        }
    }

    /// Does some conjugate of β lie on the unit circle?
    pub fn has_unit_conjugate(&self) -> bool {
        self.embeddings().into_iter().any(|e| self.embedding_modulus(e) == ModulusVerdict::EqualOne)
    }

    /// Are all conjugates of β strictly inside the unit disk?
    pub fn all_conjugates_contracting(&self) -> bool {
        self.embeddings().into_iter().all(|e| self.embedding_modulus(e) == ModulusVerdict::LessThanOne)
    }

    pub fn classify_roots(&self) -> RootClass {
        classify::classify(self)
    }

    pub fn embedding_bounds(&self, d: u32) -> Vec<EmbeddingBound> {
        bounds::embedding_bounds(self, d)
    }

    pub fn test_within_bounds(&self, x: &FieldElement, d: u32, which: Which) -> Result<bool> {
        bounds::test_within_bounds(self, x, d, which)
    }

    pub(crate) fn beta_root_index(&self) -> usize {
        self.beta
    }

    pub(crate) fn with_roots<T>(&self, f: impl FnOnce(&mut RootSet) -> T) -> T {
        f(&mut self.lock())
    }

    /// Is the real number `x(β)` in the closed window `[lo, hi]`?
    pub fn in_window(&self, x: &FieldElement, lo: &BigRational, hi: &BigRational) -> bool {
        let n = self.degree();
        self.sign(&(x - &FieldElement::from_rational(n, lo))) != Ordering::Less
            && self.sign(&(x - &FieldElement::from_rational(n, hi))) != Ordering::Greater
    }

    /// Numerical magnitude check used by callers that want an absolute value.
    pub fn abs_cmp(&self, x: &FieldElement, y: &FieldElement) -> Ordering {
        let ax = if self.sign(x) == Ordering::Less { -x } else { x.clone() };
        let ay = if self.sign(y) == Ordering::Less { -y } else { y.clone() };
        self.cmp(&ax, &ay)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> BetaContext {
        BetaContext::new(&[1, -1, -1], 128).unwrap()
    }

    fn el(ctx: &BetaContext, c: &[i64]) -> FieldElement {
        ctx.reduce(&c.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>())
    }

    #[test]
    fn golden_ratio_context() {
        let ctx = golden();
        let (lo, hi) = ctx.beta_enclosure();
        assert!(lo.to_f64().unwrap() >= 1.61 && hi.to_f64().unwrap() <= 1.62);
        assert_eq!(ctx.degree(), 2);
        assert_eq!(ctx.ceil_beta(), 2);
        assert_eq!(ctx.conjugates().len(), 1);
    }

    #[test]
    fn integer_base() {
        let ctx = BetaContext::new(&[1, -2], 64).unwrap();
        assert_eq!(ctx.degree(), 1);
        assert!(ctx.conjugates().is_empty());
        assert_eq!(ctx.ceil_beta(), 2);
        let (lo, hi) = ctx.beta_enclosure();
        assert_eq!(lo, hi);
        assert_eq!(ctx.beta(), ctx.from_int(2));
    }

    #[test]
    fn degree_four_base() {
        let ctx = BetaContext::new(&[1, -2, -2, 0, -2], 128).unwrap();
        let (lo, hi) = ctx.beta_enclosure();
        assert!(lo.to_f64().unwrap() >= 2.80 && hi.to_f64().unwrap() <= 2.81);
        assert_eq!(ctx.ceil_beta(), 3);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(BetaContext::new(&[0, 1, -2], 64).unwrap_err(), Error::ZeroLeadingCoefficient);
        assert_eq!(BetaContext::new(&[1, 1], 64).unwrap_err(), Error::NoRootAboveOne);
        assert_eq!(BetaContext::new(&[1, 0, 1], 64).unwrap_err(), Error::NoRootAboveOne);
        // (X - 2)^2
        assert_eq!(BetaContext::new(&[1, -4, 4], 64).unwrap_err(), Error::NonSquarefreePolynomial);
        // X - 1 has its root at one, not above it.
        assert_eq!(BetaContext::new(&[1, -1], 64).unwrap_err(), Error::NoRootAboveOne);
    }

    #[test]
    fn reduce_examples() {
        let ctx = golden();
        assert_eq!(el(&ctx, &[0, 0, 1]), el(&ctx, &[1, 1]));
        assert_eq!(el(&ctx, &[5]), el(&ctx, &[5, 0]));
        assert_eq!(el(&ctx, &[0, 0, 0, 1]), el(&ctx, &[1, 2]));
        assert_eq!(el(&ctx, &[-1, -1, 1]), ctx.zero());
    }

    #[test]
    fn arithmetic_examples() {
        let ctx = golden();
        let phi = el(&ctx, &[0, 1]);
        assert_eq!(ctx.mul_by_beta(&phi).unwrap(), el(&ctx, &[1, 1]));
        assert_eq!(ctx.add(&phi, &ctx.neg(&phi).unwrap()).unwrap(), ctx.zero());
        let x = el(&ctx, &[-1, 1]);
        assert_eq!(ctx.mul(&x, &x).unwrap(), el(&ctx, &[2, -1]));
        let other = FieldElement::from_int(3, 1);
        assert_eq!(ctx.add(&phi, &other).unwrap_err(), Error::ContextMismatch);
    }

    #[test]
    fn sign_examples() {
        let ctx = golden();
        assert_eq!(ctx.sign(&ctx.zero()), Ordering::Equal);
        assert_eq!(ctx.sign(&el(&ctx, &[-1, 1])), Ordering::Greater);
        assert_eq!(ctx.sign(&el(&ctx, &[2, -1])), Ordering::Greater);
        assert_eq!(ctx.sign(&el(&ctx, &[1, -1])), Ordering::Less);
    }

    #[test]
    fn floor_examples() {
        let ctx = golden();
        assert_eq!(ctx.floor(&ctx.zero()), BigInt::zero());
        assert_eq!(ctx.floor(&ctx.beta()), BigInt::one());
        assert_eq!(ctx.floor(&el(&ctx, &[0, 0, 0, 1])), BigInt::from(4)); // φ³ ≈ 4.236
        assert_eq!(ctx.floor(&el(&ctx, &[0, -1])), BigInt::from(-2));
        assert_eq!(ctx.floor(&ctx.from_int(3)), BigInt::from(3));
    }

    #[test]
    fn word_value_of_one_expansion() {
        let ctx = golden();
        // 0.11 = 1/φ + 1/φ² = 1
        assert_eq!(ctx.word_value(&[1, 1]), ctx.one());
    }

    #[test]
    fn reducible_input_works_in_minimal_field() {
        // (X^2 - X - 1)(X^2 + 1)
        let ctx = BetaContext::new(&[1, -1, 0, -1, -1], 64).unwrap();
        assert_eq!(ctx.degree(), 2);
        assert!(!ctx.is_irreducible());
        assert_eq!(ctx.conjugates().len(), 3);
        assert_eq!(ctx.embeddings().len(), 1);
    }
}

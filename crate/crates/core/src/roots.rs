//! Certified enclosures for every complex root of a square-free integer
//! polynomial.
//!
//! Real roots are isolated with a Sturm chain and refined by bisection. The
//! non-real roots start from floating-point Aberth approximations, are
//! polished with exact Newton steps on dyadic rationals and are then
//! certified: with Weierstrass corrections `W_i`, the disks
//! `|z - z_i| <= n |W_i|` cover all roots and every connected component made
//! of `m` disks holds exactly `m` roots. Pairwise disjoint disks therefore
//! isolate one root each.

use crate::error::{Error, Result};
use crate::interval::{CInterval, Interval};
use crate::poly::{root_bound_pow2, QPoly, SturmChain};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn two_pow_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Round to the nearest multiple of `2^-bits`.
fn round_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scaled = q * BigRational::from_integer(BigInt::one() << bits as usize);
    BigRational::new(scaled.round().to_integer(), BigInt::one() << bits as usize)
}

/// Dyadic upper bound for `sqrt(q)`, `q >= 0`.
fn sqrt_up(q: &BigRational, bits: u32) -> BigRational {
    let scaled = (q * BigRational::from_integer(BigInt::one() << (2 * bits) as usize)).ceil();
    let s = scaled.to_integer().sqrt() + BigInt::one();
    BigRational::new(s, BigInt::one() << bits as usize)
}

#[derive(Clone, Debug, PartialEq)]
struct QComplex {
    re: BigRational,
    im: BigRational,
}

impl QComplex {
    fn zero() -> Self {
        QComplex { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn sub(&self, o: &QComplex) -> QComplex {
        QComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &QComplex) -> QComplex {
        QComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    fn div(&self, o: &QComplex) -> QComplex {
        let n = o.norm_sqr();
        let num = self.mul(&QComplex { re: o.re.clone(), im: -&o.im });
        QComplex { re: num.re / &n, im: num.im / n }
    }
    fn conj(&self) -> QComplex {
        QComplex { re: self.re.clone(), im: -&self.im }
    }
    fn round(&self, bits: u32) -> QComplex {
        QComplex { re: round_dyadic(&self.re, bits), im: round_dyadic(&self.im, bits) }
    }
}

fn eval_complex(p: &QPoly, z: &QComplex) -> QComplex {
    let mut acc = QComplex::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

/// Isolating interval of a real root; `lo == hi` for an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RealEnclosure {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) * half()
    }
}

/// Square box `center ± radius` around a non-real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexEnclosure {
    pub re: BigRational,
    pub im: BigRational,
    pub radius: BigRational,
}

impl ComplexEnclosure {
    pub fn re_bounds(&self) -> (BigRational, BigRational) {
        (&self.re - &self.radius, &self.re + &self.radius)
    }
    pub fn im_bounds(&self) -> (BigRational, BigRational) {
        (&self.im - &self.radius, &self.im + &self.radius)
    }
    fn contains_box(&self, inner: &ComplexEnclosure) -> bool {
        let (a, b) = self.re_bounds();
        let (c, d) = self.im_bounds();
        let (ia, ib) = inner.re_bounds();
        let (ic, id) = inner.im_bounds();
        a <= ia && ib <= b && c <= ic && id <= d
    }
}

/// All roots of a square-free polynomial, kept at a common precision.
///
/// Non-real roots are stored in conjugate pairs: index `2k` has positive
/// imaginary part and `2k + 1` is its mirror image.
#[derive(Clone, Debug)]
pub struct RootSet {
    poly: QPoly,
    int_coeffs: Vec<BigInt>,
    sturm_poly: QPoly,
    pub real: Vec<RealEnclosure>,
    pub complex: Vec<ComplexEnclosure>,
    bits: u32,
    fixed: BTreeMap<u32, FixedRoots>,
}

/// Fixed-point copies of all enclosures at one scale.
#[derive(Clone, Debug)]
pub struct FixedRoots {
    pub real: Vec<Interval>,
    pub complex: Vec<CInterval>,
}

impl RootSet {
    /// `coeffs` lowest degree first; the polynomial must be square-free.
    pub fn isolate(coeffs: &[BigInt], bits: u32) -> Result<RootSet> {
        let poly = QPoly::from_ints(coeffs.iter().cloned());
        let degree = poly.degree().ok_or(Error::ZeroLeadingCoefficient)?;
        let sturm = SturmChain::new(&poly);
        let bound = root_bound_pow2(&poly);
        let real = isolate_real(&poly, &sturm, &-bound.clone(), &bound);
        let mut set = RootSet {
            poly: poly.clone(),
            int_coeffs: coeffs.to_vec(),
            sturm_poly: poly,
            real,
            complex: Vec::new(),
            bits: 0,
            fixed: BTreeMap::new(),
        };
        let nonreal = degree - set.real.len();
        if !nonreal.is_multiple_of(2) {
            return Err(Error::RootIsolation("odd number of non-real roots".into()));
        }
        set.refine_real(bits);
        let uppers = if nonreal > 0 { initial_upper_roots(&set.poly, nonreal / 2)? } else { Vec::new() };
        set.certify(uppers, bits)?;
        set.bits = bits;
        Ok(set)
    }

    pub fn degree(&self) -> usize {
        self.real.len() + self.complex.len()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn int_coeffs(&self) -> &[BigInt] {
        &self.int_coeffs
    }

    pub fn conj_index(i: usize) -> usize {
        i ^ 1
    }

    /// Refine every enclosure to width at most `2^-bits`; never shrinks.
    pub fn refine(&mut self, bits: u32) -> Result<()> {
        if bits <= self.bits {
            return Ok(());
        }
        self.refine_real(bits);
        if !self.complex.is_empty() {
            let uppers: Vec<QComplex> = self
                .complex
                .iter()
                .step_by(2)
                .map(|c| QComplex { re: c.re.clone(), im: c.im.clone() })
                .collect();
            let old = self.complex.clone();
            self.certify(uppers, bits)?;
            for (o, n) in old.iter().zip(&self.complex) {
                if !o.contains_box(n) {
                    return Err(Error::RootIsolation("refined box left its parent".into()));
                }
            }
        }
        self.bits = bits;
        Ok(())
    }

    /// Enclosures rendered at fixed-point `scale`, refining first if the
    /// current precision is coarser than the scale.
    pub fn fixed(&mut self, scale: u32) -> Result<&FixedRoots> {
        if scale > self.bits {
            self.refine(scale)?;
        }
        if !self.fixed.contains_key(&scale) {
            let f = self.render_fixed(scale);
            self.fixed.insert(scale, f);
        }
        Ok(&self.fixed[&scale])
    }

    /// Sturm-exact count of roots in `(a, b]`.
    pub fn count_real_in(&self, a: &BigRational, b: &BigRational) -> usize {
        SturmChain::new(&self.sturm_poly).count(a, b)
    }

    fn render_fixed(&self, s: u32) -> FixedRoots {
        let real = self.real.iter().map(|r| Interval::from_bounds(&r.lo, &r.hi, s)).collect();
        let complex = self
            .complex
            .iter()
            .map(|c| {
                let (a, b) = c.re_bounds();
                let (lo, hi) = c.im_bounds();
                CInterval { re: Interval::from_bounds(&a, &b, s), im: Interval::from_bounds(&lo, &hi, s) }
            })
            .collect();
        FixedRoots { real, complex }
    }

    fn refine_real(&mut self, bits: u32) {
        let target = two_pow_neg(bits);
        for r in self.real.iter_mut() {
            while !r.is_exact() && r.width() > target {
                bisect(&self.poly, r);
            }
        }
    }

    fn certify(&mut self, mut uppers: Vec<QComplex>, bits: u32) -> Result<()> {
        let n = self.poly.degree().unwrap();
        let dpoly = self.poly.derivative();
        let lc = self.poly.leading().unwrap().clone();
        let mut work = bits + 32;
        for _attempt in 0..6 {
            for z in uppers.iter_mut() {
                *z = newton_polish(&self.poly, &dpoly, z, work);
            }
            // Real root centers at matching precision.
            let mut real_centers = Vec::with_capacity(self.real.len());
            for r in &self.real {
                let mut rr = r.clone();
                let t = two_pow_neg(work);
                while !rr.is_exact() && rr.width() > t {
                    bisect(&self.poly, &mut rr);
                }
                real_centers.push(QComplex { re: rr.midpoint(), im: BigRational::zero() });
            }
            let mut centers = real_centers;
            let first_complex = centers.len();
            for z in &uppers {
                centers.push(z.clone());
                centers.push(z.conj());
            }
            let radii = weierstrass_radii(&self.poly, &lc, &centers, n, work + 16);
            if let Some(radii) = radii {
                let target = two_pow_neg(bits);
                if disks_disjoint(&centers, &radii)
                    && radii[first_complex..].iter().all(|r| *r <= target)
                    && (first_complex..centers.len()).all(|i| centers[i].im.abs() > radii[i])
                {
                    self.complex = (first_complex..centers.len())
                        .map(|i| ComplexEnclosure {
                            re: centers[i].re.clone(),
                            im: centers[i].im.clone(),
                            radius: radii[i].clone(),
                        })
                        .collect();
                    return Ok(());
                }
            }
            work += 64;
        }
        Err(Error::RootIsolation("could not certify complex root disks".into()))
    }
}

fn bisect(p: &QPoly, r: &mut RealEnclosure) {
    let mid = r.midpoint();
    let sm = p.sign_at(&mid);
    if sm == Ordering::Equal {
        r.lo = mid.clone();
        r.hi = mid;
        return;
    }
    if p.sign_at(&r.lo) == sm {
        r.lo = mid;
    } else {
        r.hi = mid;
    }
}

/// Isolate the real roots in `(a, b]`, sorted ascending.
fn isolate_real(p: &QPoly, sturm: &SturmChain, a: &BigRational, b: &BigRational) -> Vec<RealEnclosure> {
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone())];
    while let Some((lo, hi)) = stack.pop() {
        let c = sturm.count(&lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            if p.sign_at(&hi) == Ordering::Equal {
                out.push(RealEnclosure { lo: hi.clone(), hi });
            } else {
                out.push(RealEnclosure { lo, hi });
            }
            continue;
        }
        let mid = (&lo + &hi) * half();
        if p.sign_at(&mid) == Ordering::Equal {
            // Exact rational root: carve a small root-free gap around it.
            let mut delta = (&hi - &lo) * half() * half();
            loop {
                let l = &mid - &delta;
                let h = &mid + &delta;
                if p.sign_at(&l) != Ordering::Equal
                    && p.sign_at(&h) != Ordering::Equal
                    && sturm.count(&l, &h) == 1
                {
                    out.push(RealEnclosure { lo: mid.clone(), hi: mid.clone() });
                    stack.push((lo.clone(), l));
                    stack.push((h, hi.clone()));
                    break;
                }
                delta *= half();
            }
            continue;
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

fn to_f64_coeffs(p: &QPoly) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect()
}

fn horner_f64(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Floating-point Aberth–Ehrlich iteration for all roots.
fn aberth(p: &QPoly) -> Vec<Complex64> {
    let c = to_f64_coeffs(p);
    let n = c.len() - 1;
    let lead = c[n];
    let c: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let radius = c[..n].iter().map(|x| x.abs()).fold(0.0_f64, f64::max).powf(1.0 / n as f64).max(0.5);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut worst = 0.0_f64;
        for i in 0..n {
            let (pv, dv) = horner_f64(&c, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            worst = worst.max(w.norm() / z[i].norm().max(1.0));
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

fn initial_upper_roots(p: &QPoly, pairs: usize) -> Result<Vec<QComplex>> {
    let mut approx = aberth(p);
    approx.sort_by(|a, b| b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal));
    let picked: Vec<Complex64> = approx.into_iter().take(pairs).collect();
    if picked.iter().any(|z| !(z.im > 0.0) || !z.re.is_finite()) {
        return Err(Error::RootIsolation("floating-point root search failed".into()));
    }
    Ok(picked
        .into_iter()
        .map(|z| QComplex {
            re: BigRational::from_float(z.re).unwrap_or_else(BigRational::zero),
            im: BigRational::from_float(z.im).unwrap_or_else(BigRational::zero),
        })
        .collect())
}

fn newton_polish(p: &QPoly, dp: &QPoly, z0: &QComplex, bits: u32) -> QComplex {
    let mut z = z0.round(bits);
    let tol = two_pow_neg(2 * bits.saturating_sub(4));
    for _ in 0..200 {
        let pv = eval_complex(p, &z);
        let dv = eval_complex(dp, &z);
        if dv.norm_sqr().is_zero() {
            break;
        }
        let step = pv.div(&dv);
        z = z.sub(&step).round(bits);
        if step.norm_sqr() < tol {
            break;
        }
    }
    z
}

fn weierstrass_radii(
    p: &QPoly,
    lc: &BigRational,
    centers: &[QComplex],
    n: usize,
    bits: u32,
) -> Option<Vec<BigRational>> {
    let mut radii = Vec::with_capacity(centers.len());
    for (i, zi) in centers.iter().enumerate() {
        let pv = eval_complex(p, zi);
        if pv.re.is_zero() && pv.im.is_zero() {
            radii.push(BigRational::zero());
            continue;
        }
        let mut denom = QComplex { re: lc.clone(), im: BigRational::zero() };
        for (j, zj) in centers.iter().enumerate() {
            if j != i {
                denom = denom.mul(&zi.sub(zj));
            }
        }
        let dn = denom.norm_sqr();
        if dn.is_zero() {
            return None;
        }
        let w2 = pv.norm_sqr() / dn;
        radii.push(sqrt_up(&w2, bits) * rat(n as i64));
    }
    Some(radii)
}

fn disks_disjoint(centers: &[QComplex], radii: &[BigRational]) -> bool {
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            let d2 = centers[i].sub(&centers[j]).norm_sqr();
            let r = &radii[i] + &radii[j];
            if d2 <= &r * &r {
                return false;
            }
        }
    }
    true
}

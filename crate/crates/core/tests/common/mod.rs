#![allow(dead_code)]

use betazero::BetaContext;

pub const BATTERY: [&[i64]; 6] = [
    &[1, -1, -1],
    &[1, -1, -1, -1],
    &[1, -2, -1],
    &[1, -2],
    &[1, -2, -2, 0, -2],
    &[1, -2, 1, -2, 1],
];

pub const PISOT: [&[i64]; 4] = [&[1, -1, -1], &[1, -1, -1, -1], &[1, -2, -1], &[1, -2]];

pub fn ctx(p: &[i64]) -> BetaContext {
    BetaContext::new(p, 128).unwrap()
}

/// Elements of Z[β] for a monic integer polynomial, as integer coordinates
/// on 1, β, …, β^{n-1}. Independent of the library's field arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntElem(pub Vec<i128>);

#[derive(Clone, Debug)]
pub struct IntRing {
    /// `β^n = Σ rel[i] β^i`.
    rel: Vec<i128>,
}

impl IntRing {
    pub fn new(poly: &[i64]) -> Self {
        assert_eq!(poly[0], 1, "oracle needs a monic polynomial");
        let n = poly.len() - 1;
        let rel = (0..n).map(|i| -(poly[n - i] as i128)).collect();
        IntRing { rel }
    }

    pub fn zero(&self) -> IntElem {
        IntElem(vec![0; self.rel.len()])
    }

    /// `β·s + a`.
    pub fn step(&self, s: &IntElem, a: i64) -> IntElem {
        let n = self.rel.len();
        let top = s.0[n - 1];
        let mut out = vec![0; n];
        for i in (1..n).rev() {
            out[i] = s.0[i - 1];
        }
        for i in 0..n {
            out[i] += top * self.rel[i];
        }
        out[0] += a as i128;
        IntElem(out)
    }

    /// `Σ w_i β^{len-i}`, the value of `0.w` scaled by `β^len`.
    pub fn scaled_value(&self, w: &[i64]) -> IntElem {
        w.iter().fold(self.zero(), |s, &a| self.step(&s, a))
    }
}

impl IntElem {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Largest real root by bisection in floating point.
pub fn beta_f64(poly: &[i64]) -> f64 {
    let eval = |x: f64| poly.iter().fold(0.0, |acc, &c| acc * x + c as f64);
    let bound = 1.0 + poly[1..].iter().map(|c| c.abs() as f64).fold(0.0, f64::max) / poly[0].abs() as f64;
    // scan down from the Cauchy bound for the first sign change
    let steps = 4000;
    let h = bound / steps as f64;
    let mut hi = bound + h;
    let mut lo = hi - h;
    while lo > 0.0 && eval(lo).signum() == eval(hi).signum() {
        hi = lo;
        lo -= h;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if eval(mid).signum() == eval(hi).signum() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All complex roots by Durand–Kerner iteration in floating point.
pub fn roots_f64(poly: &[i64]) -> Vec<num_complex::Complex64> {
    use num_complex::Complex64;
    let n = poly.len() - 1;
    let lead = poly[0] as f64;
    let eval = |z: Complex64| poly.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        for i in 0..n {
            let mut den = Complex64::new(lead, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
        }
    }
    z
}

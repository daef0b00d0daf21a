//! Minimal polynomial of β inside a square-free integer polynomial.
//!
//! Every primitive integer factor of `p` is `c · Π (X - r)` over some
//! conjugation-closed subset of the roots of `p`, with `c` dividing the
//! leading coefficient. Walking subsets that contain β by increasing size
//! and keeping the first candidate that survives an exact division test
//! yields the minimal polynomial; the search is complete because every
//! subset is visited.

use crate::error::{Error, Result};
use crate::interval::{CInterval, Interval};
use crate::poly::{QPoly, SturmChain};
use crate::roots::RootSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Which roots of the input polynomial are conjugates of β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MinimalFactor {
    /// Primitive, positive leading coefficient, lowest degree first.
    pub coeffs: Vec<BigInt>,
    pub real: Vec<usize>,
    /// Indices into the complex roots, always whole conjugate pairs.
    pub complex: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
enum Unit {
    Real(usize),
    Pair(usize),
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Coefficient enclosures of `Π (X - r)` over the chosen roots.
fn product_poly(fixed: &crate::roots::FixedRoots, real: &[usize], complex: &[usize], scale: u32) -> Vec<CInterval> {
    let one = CInterval::real(Interval::from_int(&BigInt::one(), scale));
    let mut acc = vec![one];
    let mut push_root = |r: &CInterval| {
        let mut next = vec![CInterval::real(Interval::zero(scale)); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(r));
        }
        acc = next;
    };
    for &i in real {
        push_root(&CInterval::real(fixed.real[i].clone()));
    }
    for &i in complex {
        push_root(&fixed.complex[i]);
    }
    acc
}

enum Candidate {
    Integer(Vec<BigInt>),
    Impossible,
    NeedsPrecision,
}

fn round_candidate(coeffs: &[CInterval], lead: &BigInt) -> Candidate {
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let re = c.re.mul_int(lead);
        let im = c.im.mul_int(lead);
        if !im.contains_zero() {
            return Candidate::Impossible;
        }
        let lo = re.lo_rational().ceil().to_integer();
        let hi = re.hi_rational().floor().to_integer();
        match lo.cmp(&hi) {
            Ordering::Greater => return Candidate::Impossible,
            Ordering::Equal => out.push(lo),
            Ordering::Less => return Candidate::NeedsPrecision,
        }
    }
    Candidate::Integer(out)
}

fn vanishes_on_real_root(cand: &QPoly, roots: &RootSet, i: usize) -> bool {
    let r = &roots.real[i];
    if r.is_exact() {
        return cand.eval(&r.lo).is_zero();
    }
    SturmChain::new(cand).count(&r.lo, &r.hi) == 1
}

/// Certify that `cand` does not vanish at the roots outside the subset.
fn nonzero_elsewhere(cand: &[BigInt], roots: &mut RootSet, real: &[usize], complex: &[usize]) -> Result<bool> {
    let cq = QPoly::from_ints(cand.iter().cloned());
    for i in 0..roots.real.len() {
        if !real.contains(&i) && vanishes_on_real_root(&cq, roots, i) {
            return Ok(false);
        }
    }
    let others: Vec<usize> = (0..roots.complex.len()).filter(|i| !complex.contains(i)).collect();
    let mut scale = roots.bits().max(64);
    let mut pending = others;
    for _ in 0..8 {
        let fixed = roots.fixed(scale)?;
        pending.retain(|&i| crate::interval::eval_int_poly_complex(cand, &fixed.complex[i]).contains_zero());
        if pending.is_empty() {
            return Ok(true);
        }
        scale *= 2;
    }
    Ok(false)
}

pub(crate) fn find_minimal(p: &[BigInt], roots: &mut RootSet, beta: usize) -> Result<MinimalFactor> {
    let pq = QPoly::from_ints(p.iter().cloned());
    let lead = p.last().cloned().ok_or(Error::ZeroLeadingCoefficient)?;
    let mut units = Vec::new();
    for i in 0..roots.real.len() {
        if i != beta {
            units.push(Unit::Real(i));
        }
    }
    for k in 0..roots.complex.len() / 2 {
        units.push(Unit::Pair(2 * k));
    }
    let mut masks: Vec<(usize, u64)> = (0..(1u64 << units.len()))
        .map(|mask| {
            let size: usize = units
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, u)| match u {
                    Unit::Real(_) => 1,
                    Unit::Pair(_) => 2,
                })
                .sum();
            (size, mask)
        })
        .collect();
    masks.sort();
    let leads = divisors(&lead);
    for (_, mask) in masks {
        let mut real = vec![beta];
        let mut complex = Vec::new();
        for (j, u) in units.iter().enumerate() {
            if mask >> j & 1 == 1 {
                match *u {
                    Unit::Real(i) => real.push(i),
                    Unit::Pair(i) => {
                        complex.push(i);
                        complex.push(i + 1);
                    }
                }
            }
        }
        real.sort();
        for c in &leads {
            let mut scale = roots.bits().max(64);
            let cand = loop {
                let fixed = roots.fixed(scale)?;
                let prod = product_poly(fixed, &real, &complex, scale);
                match round_candidate(&prod, c) {
                    Candidate::NeedsPrecision if scale < 1 << 14 => scale *= 2,
                    Candidate::NeedsPrecision => {
                        return Err(Error::RootIsolation("factor coefficients did not converge".into()))
                    }
                    Candidate::Impossible => break None,
                    Candidate::Integer(v) => break Some(v),
                }
            };
            let Some(cand) = cand else { continue };
            let cq = QPoly::from_ints(cand.iter().cloned());
            if !pq.rem(&cq).is_zero() || !vanishes_on_real_root(&cq, roots, beta) {
                continue;
            }
            if !nonzero_elsewhere(&cand, roots, &real, &complex)? {
                continue;
            }
            let prim = cq.primitive_integer();
            real.retain(|&i| i != beta);
            return Ok(MinimalFactor { coeffs: prim, real, complex });
        }
    }
    Err(Error::RootIsolation("no factor vanishing at β found".into()))
}

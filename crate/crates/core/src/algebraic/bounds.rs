//! Per-embedding bounds on the states of zero automata.
//!
//! For the identity embedding and real conjugates the closed test
//! `|σ(x)|·|1 - |σ(β)|| <= d` is an exact sign question in `Q(β)`. For a
//! non-real conjugate `z` it is decided on refined boxes, with an exact
//! equality test once refinement reaches the precision cap.

use super::{BetaContext, Embedding, FieldElement, ModulusVerdict, PRECISION_CAP_BITS};
use crate::error::{Error, Result};
use crate::interval::{eval_int_poly_complex, CInterval, Interval};
use crate::roots::RootSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    RealOnly,
    AllEmbeddings,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Closed bound with a rational enclosure of its value.
    Finite { lo: BigRational, hi: BigRational },
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingBound {
    pub embedding: Embedding,
    pub modulus: ModulusVerdict,
    pub bound: Bound,
    /// An element whose image under the embedding is the bound, when the
    /// embedding is real.
    pub preimage: Option<FieldElement>,
}

/// `s·β - 1` or `1 - s·β`, chosen so that its image under the real
/// embedding is `||σ(β)| - 1|`.
fn real_gap_element(ctx: &BetaContext, root: usize, verdict: ModulusVerdict) -> FieldElement {
    let beta = ctx.beta();
    let s = ctx.sign_at_real_root(&beta, root);
    let sb = if s == Ordering::Less { -&beta } else { beta };
    match verdict {
        ModulusVerdict::LessThanOne => (-&sb).add_int(1),
        _ => sb.add_int(-1),
    }
}

fn real_bound(ctx: &BetaContext, root: usize, verdict: ModulusVerdict, d: u32) -> (FieldElement, BigRational, BigRational) {
    let gap = real_gap_element(ctx, root, verdict);
    let e = ctx.modulus.inv(&gap).expect("gap is nonzero").scale_int(d as i64);
    let iv = ctx.eval_real(&e, root, ctx.precision_bits).expect("root refinement failed");
    let den = BigRational::from_integer(e.denominator().clone());
    (e.clone(), iv.lo_rational() / &den, iv.hi_rational() / den)
}

fn complex_bound(ctx: &BetaContext, root: usize, verdict: ModulusVerdict, d: u32) -> (BigRational, BigRational) {
    let d = BigRational::from_integer(d.into());
    let one = BigRational::one();
    let mut scale = ctx.precision_bits;
    loop {
        let z = ctx.complex_root_fixed(root, scale).expect("root refinement failed");
        let rho = z.norm_sqr().sqrt();
        let (lo, hi) = (rho.lo_rational(), rho.hi_rational());
        match verdict {
            ModulusVerdict::GreaterThanOne if lo > one => return (&d / (hi - &one), &d / (lo - &one)),
            ModulusVerdict::LessThanOne if hi < one => return (&d / (&one - lo), &d / (&one - hi)),
            _ => scale *= 2,
        }
    }
}

pub(crate) fn embedding_bounds(ctx: &BetaContext, d: u32) -> Vec<EmbeddingBound> {
    let mut out = Vec::new();
    let b = ctx.beta_root_index();
    let (pre, lo, hi) = real_bound(ctx, b, ModulusVerdict::GreaterThanOne, d);
    out.push(EmbeddingBound {
        embedding: Embedding::Beta,
        modulus: ModulusVerdict::GreaterThanOne,
        bound: Bound::Finite { lo, hi },
        preimage: Some(pre),
    });
    for emb in ctx.embeddings() {
        let modulus = ctx.embedding_modulus(emb);
        let (bound, preimage) = match (emb, modulus) {
            (_, ModulusVerdict::EqualOne) => (Bound::Unbounded, None),
            (Embedding::Real(i), v) => {
                let (pre, lo, hi) = real_bound(ctx, i, v, d);
                (Bound::Finite { lo, hi }, Some(pre))
            }
            (Embedding::Complex(i), v) => {
                let (lo, hi) = complex_bound(ctx, i, v, d);
                (Bound::Finite { lo, hi }, None)
            }
            (Embedding::Beta, _) => unreachable!(),
        };
        out.push(EmbeddingBound { embedding: emb, modulus, bound, preimage });
    }
    out
}

/// `|x| <= d / |gap|` under the real embedding at `root`, exactly.
fn real_within(ctx: &BetaContext, x: &FieldElement, gap: &FieldElement, d: u32, root: usize) -> bool {
    let y = ctx.modulus.mul(x, gap);
    let d = d as i64;
    ctx.sign_at_real_root(&(-&y).add_int(d), root) != Ordering::Less
        && ctx.sign_at_real_root(&y.add_int(d), root) != Ordering::Less
}

pub(crate) fn test_within_bounds(ctx: &BetaContext, x: &FieldElement, d: u32, which: Which) -> Result<bool> {
    within(ctx, x, d, which, false)
}

/// Like [`test_within_bounds`], but unit-modulus conjugates are skipped
/// instead of reported.
pub(crate) fn within(ctx: &BetaContext, x: &FieldElement, d: u32, which: Which, skip_unit: bool) -> Result<bool> {
    ctx.check(x)?;
    if x.is_zero() {
        return Ok(true);
    }
    let embeddings = match which {
        Which::RealOnly => Vec::new(),
        Which::AllEmbeddings => ctx.embeddings(),
    };
    if !skip_unit && embeddings.iter().any(|&e| ctx.embedding_modulus(e) == ModulusVerdict::EqualOne) {
        return Err(Error::UnboundedEmbedding);
    }
    let b = ctx.beta_root_index();
    let gap = ctx.beta().add_int(-1);
    if !real_within(ctx, x, &gap, d, b) {
        return Ok(false);
    }
    for emb in embeddings {
        let v = ctx.embedding_modulus(emb);
        let ok = match (emb, v) {
            (_, ModulusVerdict::EqualOne) => true,
            (Embedding::Real(i), v) => real_within(ctx, x, &real_gap_element(ctx, i, v), d, i),
            (Embedding::Complex(i), _) => complex_within(ctx, x, d, i)?,
            (Embedding::Beta, _) => true,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|x(z)|·||z| - 1| <= d`, squared into `A·(ρ - 1)² <= d²·den²` where
/// `A = |num(z)|²` and `ρ = |z|`.
fn complex_within(ctx: &BetaContext, x: &FieldElement, d: u32, root: usize) -> Result<bool> {
    if d == 0 {
        return Ok(false);
    }
    let rhs_int = BigInt::from(d).pow(2) * x.denominator() * x.denominator();
    let mut scale = ctx.precision_bits;
    let mut exact_tried = false;
    loop {
        let z = ctx.complex_root_fixed(root, scale)?;
        let a = eval_int_poly_complex(x.numerators(), &z).norm_sqr();
        let t = z.norm_sqr().sqrt().add_int(&-BigInt::one()).sqr();
        let lhs = a.mul(&t);
        let rhs = Interval::from_int(&rhs_int, scale);
        if lhs.certainly_le(&rhs) {
            return Ok(true);
        }
        if rhs.certainly_lt(&lhs) {
            return Ok(false);
        }
        if scale >= PRECISION_CAP_BITS && !exact_tried {
            exact_tried = true;
            if on_boundary_curve(ctx, x, &rhs_int, root)? {
                return Ok(true);
            }
        }
        scale = scale.saturating_mul(2);
    }
}

/// Polynomials in `Y` over `Q(β)`, lowest degree first.
type FPoly = Vec<FieldElement>;

fn trim(mut p: FPoly) -> FPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn fp_add(a: &FPoly, b: &FPoly, n: usize) -> FPoly {
    let len = a.len().max(b.len());
    let z = FieldElement::zero(n);
    trim((0..len).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn fp_neg(a: &FPoly) -> FPoly {
    a.iter().map(|c| -c).collect()
}

fn fp_mul(ctx: &BetaContext, a: &FPoly, b: &FPoly) -> FPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &ctx.modulus.mul(x, y);
        }
    }
    trim(out)
}

fn fp_div_rem(ctx: &BetaContext, a: &FPoly, b: &FPoly) -> (FPoly, FPoly) {
    let b = trim(b.clone());
    let lead_inv = ctx.modulus.inv(b.last().expect("division by zero polynomial")).expect("nonzero lead");
    let mut r = trim(a.clone());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![ctx.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let c = ctx.modulus.mul(r.last().unwrap(), &lead_inv);
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = &r[k + j] - &ctx.modulus.mul(&c, bj);
        }
        q[k] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn fp_gcd(ctx: &BetaContext, a: &FPoly, b: &FPoly) -> FPoly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = fp_div_rem(ctx, &x, &y).1;
        x = y;
        y = r;
    }
    x
}

/// Enclosure of `p(z, w)` where coefficients are evaluated at `z`.
fn eval_pair(ctx: &BetaContext, p: &FPoly, root: usize, w: &CInterval, scale: u32) -> Result<CInterval> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denominator()));
    let mut acc = CInterval::real(Interval::zero(scale));
    for c in p.iter().rev() {
        let v = ctx.eval_complex(c, root, scale)?.mul_int(&(&l / c.denominator()));
        acc = acc.mul(w).add(&v);
    }
    Ok(acc)
}

/// Does `p(z, z̄) = 0`, where `z` is the non-real conjugate at `root` and
/// `p` is a polynomial in `Y` with coefficients in `Q(β)` read at `z`?
///
/// `z̄` is a simple root of `M(Y) = m(Y)/(Y - X)` over `Q(z)`, so exactly
/// one of `gcd(p, M)` and `M / gcd(p, M)` vanishes there; refinement finds
/// out which.
pub(crate) fn vanishes_at_conjugate_pair(ctx: &BetaContext, p: &FPoly, root: usize) -> Result<bool> {
    let n = ctx.degree();
    let m = &ctx.modulus.m;
    let x = ctx.beta();
    // Synthetic division of m(Y) by (Y - X).
    let mut q = vec![ctx.zero(); n];
    q[n - 1] = ctx.from_rational(&BigRational::from_integer(m[n].clone()));
    for k in (1..n).rev() {
        q[k - 1] = &ctx.modulus.mul(&x, &q[k]) + &ctx.from_rational(&BigRational::from_integer(m[k].clone()));
    }
    let big_m = trim(q);
    let h = fp_gcd(ctx, &fp_div_rem(ctx, p, &big_m).1, &big_m);
    if h.len() <= 1 {
        return Ok(false);
    }
    let rest = fp_div_rem(ctx, &big_m, &h).0;
    let conj = RootSet::conj_index(root);
    let mut scale = ctx.precision_bits;
    loop {
        let w = ctx.complex_root_fixed(conj, scale)?;
        if !eval_pair(ctx, &h, root, &w, scale)?.contains_zero() {
            return Ok(false);
        }
        if !eval_pair(ctx, &rest, root, &w, scale)?.contains_zero() {
            return Ok(true);
        }
        scale = scale.saturating_mul(2);
    }
}

/// Exact test that `A·(ρ ∓ 1)² = D` at the conjugate pair, through
/// `G = (A(N + 1) - D)² - 4A²N` with `A = n(X)n(Y)` and `N = XY`.
fn on_boundary_curve(ctx: &BetaContext, x: &FieldElement, d2: &BigInt, root: usize) -> Result<bool> {
    let n = ctx.degree();
    let nx = FieldElement::from_parts(x.numerators().to_vec(), BigInt::one());
    let a: FPoly = trim(
        x.numerators()
            .iter()
            .map(|c| ctx.modulus.mul(&nx, &ctx.from_rational(&BigRational::from_integer(c.clone()))))
            .collect(),
    );
    let xy_plus_one = vec![ctx.one(), ctx.beta()];
    let d_const = vec![ctx.from_rational(&BigRational::from_integer(d2.clone()))];
    let pp = fp_add(&fp_mul(ctx, &a, &xy_plus_one), &fp_neg(&d_const), n);
    let a2 = fp_mul(ctx, &a, &a);
    let four_xy = vec![ctx.zero(), ctx.beta().scale_int(4)];
    let g = fp_add(&fp_mul(ctx, &pp, &pp), &fp_neg(&fp_mul(ctx, &a2, &four_xy)), n);
    if g.is_empty() {
        return Ok(true);
    }
    vanishes_at_conjugate_pair(ctx, &g, root)
}

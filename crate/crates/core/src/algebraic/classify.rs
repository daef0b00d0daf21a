//! Modulus verdicts for every root and the Pisot/Salem classification.
//!
//! The number of roots on the unit circle is computed exactly first, then
//! root boxes are refined until every other root is separated from the
//! circle. Whatever is left undecided at that point must be on it.

use super::{BetaContext, Embedding, RootEnclosure};
use crate::interval::Interval;
use crate::poly::{QPoly, SturmChain};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusVerdict {
    LessThanOne,
    EqualOne,
    GreaterThanOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    Pisot,
    Salem,
    OtherNoUnitConjugate,
    HasUnitModulusConjugate,
    BetaNotGreaterThanOne,
    ReducibleOrNonintegral,
}

impl RootKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RootKind::Pisot => "pisot",
            RootKind::Salem => "salem",
            RootKind::OtherNoUnitConjugate => "other_no_unit_conjugate",
            RootKind::HasUnitModulusConjugate => "has_unit_modulus_conjugate",
            RootKind::BetaNotGreaterThanOne => "beta_not_greater_than_one",
            RootKind::ReducibleOrNonintegral => "reducible_or_nonintegral",
        }
    }
}

/// Verdict for one root of the input polynomial other than β.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootVerdict {
    pub root: RootEnclosure,
    pub verdict: ModulusVerdict,
    /// `Some` when the root is a conjugate of β, `None` when it belongs to
    /// another factor of a reducible input.
    pub embedding: Option<Embedding>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootClass {
    pub kind: RootKind,
    pub detail: Vec<RootVerdict>,
}

impl RootClass {
    pub fn has_unit_conjugate(&self) -> bool {
        self.detail.iter().any(|v| v.embedding.is_some() && v.verdict == ModulusVerdict::EqualOne)
    }
}

/// Verdicts indexed like the root set; `None` marks β itself.
#[derive(Clone, Debug)]
pub(crate) struct Verdicts {
    pub real: Vec<Option<ModulusVerdict>>,
    pub complex: Vec<ModulusVerdict>,
}

/// Chebyshev-like polynomials with `D_k(X + 1/X) = X^k + X^{-k}`.
fn trace_polys(k: usize) -> Vec<QPoly> {
    let mut out = vec![QPoly::constant(BigRational::from_integer(2.into())), QPoly::monomial(1)];
    while out.len() <= k {
        let n = out.len();
        let next = QPoly::monomial(1).mul(&out[n - 1]).sub(&out[n - 2]);
        out.push(next);
    }
    out
}

/// Exact count of roots of the square-free polynomial `p` on the unit circle.
pub(crate) fn unit_circle_count(p: &QPoly) -> usize {
    let mut g = p.gcd(&p.reciprocal());
    let mut count = 0;
    for s in [1i64, -1] {
        let r = BigRational::from_integer(s.into());
        if g.eval(&r).is_zero() {
            count += 1;
            let lin = QPoly::new(vec![-r, BigRational::one()]);
            g = g.div_rem(&lin).0;
        }
    }
    let Some(deg) = g.degree() else { return count };
    if deg == 0 {
        return count;
    }
    // What remains is palindromic of even degree 2k: g = X^k H(X + 1/X).
    let k = deg / 2;
    let a = g.coeffs();
    let d = trace_polys(k);
    let mut h = QPoly::constant(a[k].clone());
    for j in 1..=k {
        h = h.add(&d[j].scale(&a[k + j]));
    }
    let h = h.squarefree_part();
    let two = BigRational::from_integer(2.into());
    let mut inside = SturmChain::new(&h).count(&-two.clone(), &two);
    if h.eval(&two).is_zero() {
        inside -= 1;
    }
    count + 2 * inside
}

fn decide(norm: &Interval) -> Option<ModulusVerdict> {
    let one = Interval::from_int(&BigInt::one(), norm.scale);
    if norm.certainly_lt(&one) {
        Some(ModulusVerdict::LessThanOne)
    } else if one.certainly_lt(norm) {
        Some(ModulusVerdict::GreaterThanOne)
    } else {
        None
    }
}

pub(crate) fn compute_verdicts(ctx: &BetaContext) -> Verdicts {
    let p = QPoly::from_ints(ctx.poly.iter().rev().map(|&c| BigInt::from(c)));
    let units = unit_circle_count(&p);
    let beta = ctx.beta;
    ctx.with_roots(|rs| {
        let mut scale = ctx.precision_bits;
        loop {
            let fixed = rs.fixed(scale).expect("root refinement failed");
            let real: Vec<Option<ModulusVerdict>> = fixed
                .real
                .iter()
                .enumerate()
                .map(|(i, r)| if i == beta { Some(ModulusVerdict::GreaterThanOne) } else { decide(&r.sqr()) })
                .collect();
            let complex: Vec<Option<ModulusVerdict>> = fixed.complex.iter().map(|z| decide(&z.norm_sqr())).collect();
            let open = real.iter().chain(complex.iter()).filter(|v| v.is_none()).count();
            if open == units {
                let fill = |v: Option<ModulusVerdict>| v.unwrap_or(ModulusVerdict::EqualOne);
                let mut real: Vec<Option<ModulusVerdict>> = real.into_iter().map(|v| Some(fill(v))).collect();
                real[beta] = None;
                return Verdicts { real, complex: complex.into_iter().map(fill).collect() };
            }
            scale *= 2;
        }
    })
}

pub(crate) fn classify(ctx: &BetaContext) -> RootClass {
    let v = ctx.verdicts();
    let encl = ctx.with_roots(|rs| {
        let real: Vec<RootEnclosure> =
            rs.real.iter().map(|r| RootEnclosure::Real { lo: r.lo.clone(), hi: r.hi.clone() }).collect();
        let complex: Vec<RootEnclosure> =
            rs.complex.iter().map(|c| RootEnclosure::Complex { re: c.re_bounds(), im: c.im_bounds() }).collect();
        (real, complex)
    });
    let mut detail = Vec::new();
    for (i, verdict) in v.real.iter().enumerate() {
        if let Some(verdict) = verdict {
            let embedding = ctx.conj_real.contains(&i).then_some(Embedding::Real(i));
            detail.push(RootVerdict { root: encl.0[i].clone(), verdict: *verdict, embedding });
        }
    }
    for (i, verdict) in v.complex.iter().enumerate() {
        let embedding = ctx.conj_complex.contains(&i).then_some(Embedding::Complex(i));
        detail.push(RootVerdict { root: encl.1[i].clone(), verdict: *verdict, embedding });
    }
    let kind = if !(ctx.is_monic() && ctx.is_irreducible()) {
        RootKind::ReducibleOrNonintegral
    } else if detail.iter().all(|d| d.verdict == ModulusVerdict::LessThanOne) {
        RootKind::Pisot
    } else if detail.iter().all(|d| d.verdict != ModulusVerdict::GreaterThanOne) {
        RootKind::Salem
    } else if detail.iter().any(|d| d.verdict == ModulusVerdict::EqualOne) {
        RootKind::HasUnitModulusConjugate
    } else {
        RootKind::OtherNoUnitConjugate
    };
    RootClass { kind, detail }
}

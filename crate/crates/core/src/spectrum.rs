//! Spectra `X_d(β)` (digits `0..d`) and `Y_d(β)` (digits `-d..d`): finite
//! sums `Σ_{k≤n} a_k β^k` inside a window, their gaps, and the finiteness
//! probe for `Y_{⌈β⌉-1}(β) ∩ [-(⌈β⌉-1)/(β-1), (⌈β⌉-1)/(β-1)]`.

use crate::algebraic::{BetaContext, FieldElement, Which};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

/// Default node budget for one enumeration.
pub const NODE_GUARD: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumQuery {
    pub d: u32,
    pub max_degree: usize,
    pub window: (BigRational, BigRational),
    /// Digits `-d..d` instead of `0..d`.
    pub signed: bool,
    /// Abort with an explosion-guard error after visiting this many nodes.
    pub max_nodes: u64,
}

impl SpectrumQuery {
    pub fn new(d: u32, max_degree: usize, lo: BigRational, hi: BigRational, signed: bool) -> Result<Self> {
        let q = SpectrumQuery { d, max_degree, window: (lo, hi), signed, max_nodes: NODE_GUARD };
        q.check()?;
        Ok(q)
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    fn check(&self) -> Result<()> {
        if self.window.0 > self.window.1 {
            return Err(Error::OutOfRange(format!("empty window [{}, {}]", self.window.0, self.window.1)));
        }
        Ok(())
    }

    fn digits(&self) -> std::ops::RangeInclusive<i64> {
        let d = self.d as i64;
        if self.signed {
            -d..=d
        } else {
            0..=d
        }
    }
}

/// Outward-rounded floating-point interval.
#[derive(Clone, Copy, Debug)]
struct Fi {
    lo: f64,
    hi: f64,
}

impl Fi {
    fn point(x: f64) -> Fi {
        Fi { lo: x, hi: x }
    }

    fn from_rationals(lo: &BigRational, hi: &BigRational) -> Fi {
        let lo = lo.to_f64().unwrap_or(f64::NEG_INFINITY);
        let hi = hi.to_f64().unwrap_or(f64::INFINITY);
        Fi { lo: lo.next_down().next_down(), hi: hi.next_up().next_up() }
    }

    fn add(self, o: Fi) -> Fi {
        Fi { lo: (self.lo + o.lo).next_down(), hi: (self.hi + o.hi).next_up() }
    }

    fn sub(self, o: Fi) -> Fi {
        Fi { lo: (self.lo - o.hi).next_down(), hi: (self.hi - o.lo).next_up() }
    }

    /// Product of two intervals with nonnegative bounds.
    fn mul_pos(self, o: Fi) -> Fi {
        Fi { lo: (self.lo * o.lo).next_down().max(0.0), hi: (self.hi * o.hi).next_up() }
    }

    fn scale(self, a: i64) -> Fi {
        let a = a as f64;
        let (x, y) = (self.lo * a, self.hi * a);
        Fi { lo: x.min(y).next_down(), hi: x.max(y).next_up() }
    }
}

#[derive(Clone, Debug)]
struct Entry {
    value: FieldElement,
    approx: Fi,
    /// Smallest `m` such that the value is a sum of degree at most `m`.
    degree: usize,
}

struct Enumerator<'a> {
    ctx: &'a BetaContext,
    digits: Vec<i64>,
    /// `a·β^k` for each position and digit.
    terms: Vec<Vec<FieldElement>>,
    powers: Vec<Fi>,
    /// `Σ_{i<k} β^i`.
    partial: Vec<Fi>,
    dmin: i64,
    dmax: i64,
    lo: BigRational,
    hi: BigRational,
    lo_f: Fi,
    hi_f: Fi,
    nodes: u64,
    max_nodes: u64,
    found: HashMap<FieldElement, Entry>,
}

impl Enumerator<'_> {
    fn visit(&mut self, k: usize, value: &FieldElement, approx: Fi, top: Option<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::ExplosionGuard(self.nodes));
        }
        for idx in 0..self.digits.len() {
            let a = self.digits[idx];
            let v = approx.add(self.powers[k].scale(a));
            let rest = self.partial[k];
            let reach = Fi { lo: (v.lo + (rest.hi * self.dmin as f64).next_down()).next_down(), hi: (v.hi + (rest.hi * self.dmax as f64).next_up()).next_up() };
            if reach.hi < self.lo_f.lo || reach.lo > self.hi_f.hi {
                continue;
            }
            let x = value + &self.terms[k][idx];
            let top = if top.is_none() && a != 0 { Some(k) } else { top };
            if k > 0 {
                self.visit(k - 1, &x, v, top)?;
                continue;
            }
            if v.hi < self.lo_f.lo || v.lo > self.hi_f.hi {
                continue;
            }
            let inside = (v.lo >= self.lo_f.hi && v.hi <= self.hi_f.lo) || self.ctx.in_window(&x, &self.lo, &self.hi);
            if !inside {
                continue;
            }
            let degree = top.unwrap_or(0);
            self.found
                .entry(x.clone())
                .and_modify(|e| e.degree = e.degree.min(degree))
                .or_insert(Entry { value: x, approx: v, degree });
        }
        Ok(())
    }
}

fn cmp_entries(ctx: &BetaContext, a: &Entry, b: &Entry) -> Ordering {
    if a.approx.hi < b.approx.lo {
        Ordering::Less
    } else if b.approx.hi < a.approx.lo {
        Ordering::Greater
    } else {
        ctx.cmp(&a.value, &b.value)
    }
}

fn enumerate(ctx: &BetaContext, q: &SpectrumQuery) -> Result<Vec<Entry>> {
    q.check()?;
    let n = q.max_degree;
    let digits: Vec<i64> = q.digits().collect();
    let (bl, bh) = ctx.beta_enclosure();
    let beta = Fi::from_rationals(&bl, &bh);
    let mut powers = vec![Fi::point(1.0)];
    let mut partial = vec![Fi::point(0.0)];
    let mut terms = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            powers.push(powers[k - 1].mul_pos(beta));
            partial.push(partial[k - 1].add(powers[k - 1]));
        }
        let p = ctx.pow_beta(k);
        terms.push(digits.iter().map(|&a| p.scale_int(a)).collect());
    }
    let mut e = Enumerator {
        ctx,
        dmin: *digits.first().expect("digit set is nonempty"),
        dmax: *digits.last().expect("digit set is nonempty"),
        digits,
        terms,
        powers,
        partial,
        lo_f: Fi::from_rationals(&q.window.0, &q.window.0),
        hi_f: Fi::from_rationals(&q.window.1, &q.window.1),
        lo: q.window.0.clone(),
        hi: q.window.1.clone(),
        nodes: 0,
        max_nodes: q.max_nodes,
        found: HashMap::new(),
    };
    e.visit(n, &ctx.zero(), Fi::point(0.0), None)?;
    let mut out: Vec<Entry> = e.found.into_values().collect();
    out.sort_by(|a, b| cmp_entries(ctx, a, b));
    Ok(out)
}

/// Distinct values of the spectrum inside the window, in increasing order.
pub fn enumerate_spectrum(ctx: &BetaContext, q: &SpectrumQuery) -> Result<Vec<FieldElement>> {
    Ok(enumerate(ctx, q)?.into_iter().map(|e| e.value).collect())
}

/// Smallest gap between consecutive values among those in `entries`.
fn smallest_gap<'a>(ctx: &BetaContext, entries: impl Iterator<Item = &'a Entry>) -> Option<FieldElement> {
    let mut best: Option<(FieldElement, Fi)> = None;
    let mut prev: Option<&Entry> = None;
    for e in entries {
        if let Some(p) = prev {
            let gap = &e.value - &p.value;
            let approx = e.approx.sub(p.approx);
            let smaller = match &best {
                None => true,
                Some((g, ga)) => {
                    if approx.hi < ga.lo {
                        true
                    } else if ga.hi < approx.lo {
                        false
                    } else {
                        ctx.cmp(&gap, g) == Ordering::Less
                    }
                }
            };
            if smaller {
                best = Some((gap, approx));
            }
        }
        prev = Some(e);
    }
    best.map(|(g, _)| g)
}

/// Decimal rendering with 12 significant digits.
pub fn decimal(ctx: &BetaContext, x: &FieldElement) -> String {
    let v = ctx.approx(x);
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let e = v.abs().log10().floor() as i32;
    if !(-6..15).contains(&e) {
        return format!("{v:.11e}");
    }
    format!("{:.*}", (11 - e).max(0) as usize, v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeGap {
    pub degree: usize,
    pub count: usize,
    /// `None` when fewer than two values have this degree bound.
    pub min_gap: Option<FieldElement>,
    pub min_gap_decimal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapStats {
    pub count: usize,
    pub min_gap: FieldElement,
    pub min_gap_decimal: String,
    pub per_degree_min_gap: Vec<DegreeGap>,
}

impl GapStats {
    /// `degree,count,min_gap_decimal` lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,count,min_gap_decimal\n");
        for g in &self.per_degree_min_gap {
            out.push_str(&format!("{},{},{}\n", g.degree, g.count, g.min_gap_decimal.as_deref().unwrap_or("")));
        }
        out
    }
}

/// Gaps of `X_d(β)` in the window, overall and for every degree `m ≤ n`.
pub fn min_gap(ctx: &BetaContext, d: u32, n: usize, window: (BigRational, BigRational)) -> Result<GapStats> {
    min_gap_for(ctx, &SpectrumQuery { d, max_degree: n, window, signed: false, max_nodes: NODE_GUARD })
}

pub fn min_gap_for(ctx: &BetaContext, q: &SpectrumQuery) -> Result<GapStats> {
    let entries = enumerate(ctx, q)?;
    let min = smallest_gap(ctx, entries.iter())
        .ok_or_else(|| Error::OutOfRange(format!("window holds {} spectrum value(s), need two", entries.len())))?;
    let per_degree = (0..=q.max_degree)
        .map(|m| {
            let count = entries.iter().filter(|e| e.degree <= m).count();
            let gap = smallest_gap(ctx, entries.iter().filter(|e| e.degree <= m));
            let dec = gap.as_ref().map(|g| decimal(ctx, g));
            DegreeGap { degree: m, count, min_gap: gap, min_gap_decimal: dec }
        })
        .collect();
    Ok(GapStats { count: entries.len(), min_gap_decimal: decimal(ctx, &min), min_gap: min, per_degree_min_gap: per_degree })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FProbeBudget {
    pub max_values: usize,
    /// Degree of the residual spectrum enumeration.
    pub residual_degree: usize,
}

impl Default for FProbeBudget {
    fn default() -> Self {
        FProbeBudget { max_values: 100_000, residual_degree: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FProbeOutcome {
    /// All values found, in increasing order.
    Finite(Vec<FieldElement>),
    /// Number of values found when the budget ran out.
    BudgetExceeded(usize),
}

impl FProbeOutcome {
    pub fn is_finite(&self) -> bool {
        matches!(self, FProbeOutcome::Finite(_))
    }

    pub fn count(&self) -> usize {
        match self {
            FProbeOutcome::Finite(v) => v.len(),
            FProbeOutcome::BudgetExceeded(n) => *n,
        }
    }
}

/// Probe for `Y_c(β) ∩ [-c/(β-1), c/(β-1)]` with `c = ⌈β⌉ - 1`.
pub fn f_number_probe(ctx: &BetaContext, budget: FProbeBudget) -> Result<FProbeOutcome> {
    f_number_probe_with(ctx, ctx.canonical_digit_max() as u32, budget)
}

/// Same probe for an arbitrary digit bound `d`.
pub fn f_number_probe_with(ctx: &BetaContext, d: u32, budget: FProbeBudget) -> Result<FProbeOutcome> {
    let di = d as i64;
    let mut seen: HashSet<FieldElement> = HashSet::from([ctx.zero()]);
    let mut queue = VecDeque::from([ctx.zero()]);
    while let Some(v) = queue.pop_front() {
        for a in -di..=di {
            let t = ctx.step(&v, a);
            if seen.contains(&t) || !ctx.test_within_bounds(&t, d, Which::RealOnly)? {
                continue;
            }
            seen.insert(t.clone());
            if seen.len() > budget.max_values {
                return Ok(FProbeOutcome::BudgetExceeded(seen.len()));
            }
            queue.push_back(t);
        }
    }
    // d/(β-1) is irrational in general: enumerate in a rational window
    // around it and filter exactly.
    let (bl, _) = ctx.beta_enclosure();
    let one = BigRational::from_integer(1.into());
    let bound = if bl > one { BigRational::from_integer(di.into()) / (bl - one) } else { BigRational::from_integer((di + 1).into()) };
    let q = SpectrumQuery { d, max_degree: budget.residual_degree, window: (-bound.clone(), bound), signed: true, max_nodes: NODE_GUARD };
    for e in enumerate(ctx, &q)? {
        if !seen.contains(&e.value) && ctx.test_within_bounds(&e.value, d, Which::RealOnly)? {
            seen.insert(e.value);
            if seen.len() > budget.max_values {
                return Ok(FProbeOutcome::BudgetExceeded(seen.len()));
            }
        }
    }
    let mut values: Vec<FieldElement> = seen.into_iter().collect();
    values.sort_by(|a, b| ctx.cmp(a, b));
    Ok(FProbeOutcome::Finite(values))
}

//! Greedy β-expansions, the expansion of one, and admissibility.

use crate::algebraic::{BetaContext, FieldElement};
use crate::automata::{Acceptance, Automaton, Letter, Mode, StateLabel};
use crate::error::{Error, Result};
use crate::word::EventuallyPeriodicWord;
use num_traits::ToPrimitive;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::HashMap;

pub const DEFAULT_MAX_STEPS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParryKind {
    SimpleParry,
    Parry,
    UndeterminedWithinBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParryVerdict {
    pub kind: ParryKind,
    /// `d_β(1)`, when determined.
    pub word: Option<EventuallyPeriodicWord>,
}

impl ParryVerdict {
    pub fn is_determined(&self) -> bool {
        self.word.is_some()
    }
}

fn check_unit_interval(ctx: &BetaContext, x: &FieldElement) -> Result<()> {
    if ctx.sign(x) == Ordering::Less || ctx.sign(&x.add_int(-1)) != Ordering::Less {
        return Err(Error::OutOfRange(format!("{} is not in [0, 1)", x.pretty("β"))));
    }
    Ok(())
}

/// One step of the greedy algorithm: `(⌊βr⌋, βr - ⌊βr⌋)`.
fn greedy_step(ctx: &BetaContext, r: &FieldElement) -> (i64, FieldElement) {
    let t = ctx.step(r, 0);
    let digit = ctx.floor(&t).to_i64().expect("digit fits in i64");
    (digit, t.add_int(-digit))
}

/// First `n` digits of the greedy expansion of `x ∈ [0, 1)` and the
/// remainder `r_n` with `x = Σ d_i β^{-i} + r_n β^{-n}`.
pub fn greedy_run(ctx: &BetaContext, x: &FieldElement, n: usize) -> Result<(Vec<i64>, FieldElement)> {
    check_unit_interval(ctx, x)?;
    let mut r = x.clone();
    let mut digits = Vec::with_capacity(n);
    for _ in 0..n {
        let (d, next) = greedy_step(ctx, &r);
        digits.push(d);
        r = next;
    }
    Ok((digits, r))
}

pub fn greedy_digits(ctx: &BetaContext, x: &FieldElement, n: usize) -> Result<Vec<i64>> {
    greedy_run(ctx, x, n).map(|(d, _)| d)
}

/// `d_β(1)` by the greedy algorithm started at one, with exact cycle
/// detection on the remainders. For an integer base `b` the word is `b`.
pub fn d_beta_one(ctx: &BetaContext, max_steps: usize) -> ParryVerdict {
    if let Some(b) = ctx.beta().as_rational().filter(|q| q.is_integer()) {
        let b = b.to_integer().to_i64().expect("integer base fits in i64");
        return ParryVerdict { kind: ParryKind::SimpleParry, word: Some(EventuallyPeriodicWord::finite(vec![b])) };
    }
    let mut seen: HashMap<FieldElement, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut r = ctx.one();
    for _ in 0..max_steps.max(1) {
        let (d, next) = greedy_step(ctx, &r);
        digits.push(d);
        r = next;
        if r.is_zero() {
            return ParryVerdict { kind: ParryKind::SimpleParry, word: Some(EventuallyPeriodicWord::finite(digits)) };
        }
        if let Some(&j) = seen.get(&r) {
            let word = EventuallyPeriodicWord::new(digits[..j].to_vec(), digits[j..].to_vec());
            return ParryVerdict { kind: ParryKind::Parry, word: Some(word) };
        }
        seen.insert(r.clone(), digits.len());
    }
    ParryVerdict { kind: ParryKind::UndeterminedWithinBudget, word: None }
}

/// `d*_β(1)`: `(t_1 … t_{m-1} (t_m - 1))^ω` for a finite `d_β(1)`,
/// otherwise `d_β(1)` itself.
pub fn quasi_greedy(verdict: &ParryVerdict) -> Result<EventuallyPeriodicWord> {
    let word = verdict.word.as_ref().ok_or(Error::UndeterminedInput)?;
    if !word.is_finite() {
        return Ok(word.clone());
    }
    let mut t = word.preperiod().to_vec();
    *t.last_mut().expect("d_β(1) is nonempty") -= 1;
    Ok(EventuallyPeriodicWord::periodic(t))
}

/// The Parry automaton over `{0, …, ⌈β⌉ - 1}`: state `q_i` means the last
/// digits agree with the first `i` digits of `d*_β(1)`.
pub fn greedy_automaton(ctx: &BetaContext, verdict: &ParryVerdict) -> Result<Automaton> {
    let star = quasi_greedy(verdict)?;
    let p = star.preperiod().len();
    let bound: Vec<i64> = star.digits().collect();
    let n = bound.len();
    let max_digit = ctx.canonical_digit_max();
    let mut aut = Automaton::new(ctx.poly().to_vec(), max_digit, Mode::Canonical, Acceptance::Buchi);
    for i in 0..n {
        aut.add_state(StateLabel::Position(i), i == 0, true);
    }
    for (i, &c) in bound.iter().enumerate() {
        for a in 0..=max_digit.min(c) {
            let to = if a < c {
                0
            } else if i + 1 < n {
                i + 1
            } else {
                p
            };
            aut.add_edge(i, Letter::Digit(a), to)?;
        }
    }
    Ok(aut)
}

/// Is `w` accepted by the Parry automaton?
pub fn is_admissible(ctx: &BetaContext, verdict: &ParryVerdict, w: &EventuallyPeriodicWord) -> Result<bool> {
    let aut = greedy_automaton(ctx, verdict)?;
    let pre: Vec<Letter> = w.preperiod().iter().map(|&d| Letter::Digit(d)).collect();
    let cycle: Vec<Letter> = w.cycle().into_iter().map(Letter::Digit).collect();
    Ok(aut.accepts_lasso(0, &pre, &cycle))
}

//! Automata of β-representations of zero.
//!
//! States are the prefix values `s_n = Σ z_k β^{n-k}` of a digit word read
//! most significant digit first; reading `a` moves `s` to `βs + a`. A word
//! can only represent zero if every prefix value stays within `d/(β - 1)`,
//! so exploring the bounded prefix values breadth first yields the
//! automaton whenever that set is finite.

use crate::algebraic::{BetaContext, FieldElement, Which};
use crate::automata::{Acceptance, Automaton, Letter, Mode, StateLabel};
use crate::error::{Error, Result};
use crate::word::EventuallyPeriodicWord;
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplorationBudget {
    pub max_states: usize,
    pub max_depth: usize,
}

impl Default for ExplorationBudget {
    fn default() -> Self {
        ExplorationBudget { max_states: 10_000, max_depth: 64 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BuildStatus {
    Finite,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOutcome {
    pub status: BuildStatus,
    pub automaton: Option<Automaton>,
    /// Cumulative number of states discovered after each depth, starting
    /// with depth 0.
    pub growth: Vec<usize>,
}

impl BuildOutcome {
    pub fn is_finite(&self) -> bool {
        self.status == BuildStatus::Finite
    }

    /// `depth,count` lines.
    pub fn growth_csv(&self) -> String {
        let mut out = String::from("depth,count\n");
        for (i, c) in self.growth.iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }
}

/// Which bound a candidate state has to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Prune {
    Real,
    /// Every embedding with a bound; unit-modulus ones are skipped.
    All,
}

struct Explored {
    aut: Automaton,
    growth: Vec<usize>,
    complete: bool,
}

fn explore(ctx: &BetaContext, d: u32, budget: ExplorationBudget, prune: Prune, with_edges: bool) -> Result<Explored> {
    let di = d as i64;
    let mut aut = Automaton::new(ctx.poly().to_vec(), di, Mode::Signed, Acceptance::Buchi);
    let zero = aut.add_state(StateLabel::Element(ctx.zero()), true, true);
    let mut frontier = vec![zero];
    let mut growth = vec![1];
    let which = match prune {
        Prune::Real => Which::RealOnly,
        Prune::All => Which::AllEmbeddings,
    };
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth >= budget.max_depth {
            return Ok(Explored { aut, growth, complete: false });
        }
        depth += 1;
        let mut next = Vec::new();
        for &s in &frontier {
            let StateLabel::Element(x) = aut.state(s).label.clone() else { unreachable!() };
            for a in -di..=di {
                let t = ctx.step(&x, a);
                let label = StateLabel::Element(t);
                let to = match aut.state_index(&label) {
                    Some(i) => i,
                    None => {
                        let StateLabel::Element(t) = &label else { unreachable!() };
                        if !crate::algebraic::within(ctx, t, d, which, true)? {
                            continue;
                        }
                        let i = aut.add_state(label, false, true);
                        next.push(i);
                        if aut.num_states() > budget.max_states {
                            growth.push(aut.num_states());
                            return Ok(Explored { aut, growth, complete: false });
                        }
                        i
                    }
                };
                if with_edges {
                    aut.add_edge(s, Letter::Digit(a), to)?;
                }
            }
        }
        growth.push(aut.num_states());
        frontier = next;
    }
    Ok(Explored { aut, growth, complete: true })
}

/// Use the bounds of every embedding while building the infinite-word
/// automaton. Only sound when all conjugates lie strictly inside the unit
/// disk, where those bounds hold for every prefix value anyway.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZOptions {
    pub conjugate_bounds: bool,
}

/// Büchi automaton of the words over `{-d, …, d}` with value zero.
pub fn build_z(ctx: &BetaContext, d: u32, budget: ExplorationBudget) -> Result<BuildOutcome> {
    build_z_with(ctx, d, budget, ZOptions::default())
}

pub fn build_z_with(ctx: &BetaContext, d: u32, budget: ExplorationBudget, opts: ZOptions) -> Result<BuildOutcome> {
    let prune = if opts.conjugate_bounds && ctx.all_conjugates_contracting() { Prune::All } else { Prune::Real };
    let ex = explore(ctx, d, budget, prune, true)?;
    if !ex.complete {
        return Ok(BuildOutcome { status: BuildStatus::BudgetExceeded, automaton: None, growth: ex.growth });
    }
    Ok(BuildOutcome { status: BuildStatus::Finite, automaton: Some(ex.aut.prune_non_live()), growth: ex.growth })
}

/// Finite automaton of the finite words over `{-d, …, d}` with value zero.
pub fn build_w(ctx: &BetaContext, d: u32, budget: ExplorationBudget) -> Result<BuildOutcome> {
    let ex = explore(ctx, d, budget, Prune::All, true)?;
    if !ex.complete {
        return Ok(BuildOutcome { status: BuildStatus::BudgetExceeded, automaton: None, growth: ex.growth });
    }
    let mut aut = ex.aut;
    aut.acceptance = Acceptance::Finite;
    for i in 1..aut.num_states() {
        aut.set_terminal(i, false);
    }
    Ok(BuildOutcome { status: BuildStatus::Finite, automaton: Some(aut.trim_coaccessible(&[0])), growth: ex.growth })
}

/// Cumulative count of distinct bounded prefix values at depths
/// `0..=max_depth`.
pub fn growth_probe(ctx: &BetaContext, d: u32, max_depth: usize) -> Result<Vec<usize>> {
    let budget = ExplorationBudget { max_states: usize::MAX, max_depth };
    let mut growth = explore(ctx, d, budget, Prune::Real, false)?.growth;
    let last = *growth.last().expect("depth 0 is always recorded");
    growth.resize(max_depth + 1, last);
    Ok(growth)
}

fn check_digits(digits: impl IntoIterator<Item = i64>, d: u32) -> Result<()> {
    let d = d as i64;
    for a in digits {
        if a < -d || a > d {
            return Err(Error::OutOfRange(format!("digit {a} outside -{d}..={d}")));
        }
    }
    Ok(())
}

/// Is `Σ w_i β^{-i} = 0`?
pub fn verify_zero_word(ctx: &BetaContext, d: u32, w: &EventuallyPeriodicWord) -> Result<bool> {
    check_digits(w.digits(), d)?;
    Ok(w.value(ctx).is_zero())
}

pub const RIGIDITY_GUARD: u128 = 10_000_000;

/// No `0.z_1 … z_j` with `2 <= j <= len` equals any `0.0 z'_2 … z'_j`.
/// A prefix of length one is rigid vacuously.
pub fn rigidity_check(ctx: &BetaContext, d: u32, prefix: &[i64]) -> Result<bool> {
    if prefix.is_empty() {
        return Err(Error::OutOfRange("empty prefix".into()));
    }
    check_digits(prefix.iter().copied(), d)?;
    let size = (2 * d as u128 + 1).checked_pow(prefix.len() as u32 - 1).unwrap_or(u128::MAX);
    if size > RIGIDITY_GUARD {
        return Err(Error::SearchSpaceTooLarge(size));
    }
    let di = d as i64;
    // Values of all words of length j - 1, read most significant first.
    let mut others: HashSet<FieldElement> = HashSet::from([ctx.zero()]);
    let mut value = ctx.from_int(prefix[0]);
    for &z in &prefix[1..] {
        others = others.iter().flat_map(|s| (-di..=di).map(move |a| (s, a))).map(|(s, a)| ctx.step(s, a)).collect();
        value = ctx.step(&value, z);
        if others.contains(&value) {
            return Ok(false);
        }
    }
    Ok(true)
}

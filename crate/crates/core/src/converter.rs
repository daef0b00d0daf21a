//! Normalization in base β.
//!
//! Two words over the canonical alphabet have the same value exactly when
//! their digitwise difference is a representation of zero, so the zero
//! automaton over `{-(⌈β⌉-1), …, ⌈β⌉-1}` read on pairs `(a, b)` through
//! `a - b` recognizes equal-valued couples. Restricting the second
//! component to greedy expansions gives the normalization relation.

use crate::algebraic::BetaContext;
use crate::automata::{Acceptance, Automaton, Letter, Mode, StateLabel};
use crate::error::{Error, Result};
use crate::expansion::{d_beta_one, greedy_automaton, greedy_digits, DEFAULT_MAX_STEPS};
use crate::zero::{build_z, ExplorationBudget};
use std::collections::VecDeque;

/// Pair automaton with an edge `s -(a,b)-> t` for every zero-automaton
/// edge `s -(a-b)-> t`.
pub fn build_converter(ctx: &BetaContext, budget: ExplorationBudget) -> Result<Automaton> {
    let c = ctx.canonical_digit_max();
    let z = build_z(ctx, c as u32, budget)?;
    let zaut = z.automaton.ok_or(Error::ZNotFiniteWithinBudget)?;
    let mut out = Automaton::new(ctx.poly().to_vec(), c, Mode::Pairs, Acceptance::Buchi);
    for s in zaut.states() {
        out.add_state(s.label.clone(), s.initial, s.terminal);
    }
    for e in zaut.edges() {
        let diff = e.letter.digit().expect("zero automata carry digits");
        for a in 0..=c {
            let b = a - diff;
            if (0..=c).contains(&b) {
                out.add_edge(e.from, Letter::Pair(a, b), e.to)?;
            }
        }
    }
    Ok(out)
}

/// Product of the converter with the Parry automaton on the second
/// component, restricted to live reachable states.
pub fn normalization_automaton(ctx: &BetaContext, budget: ExplorationBudget) -> Result<Automaton> {
    let verdict = d_beta_one(ctx, DEFAULT_MAX_STEPS);
    let greedy = greedy_automaton(ctx, &verdict)?;
    let conv = build_converter(ctx, budget)?;
    let c = ctx.canonical_digit_max();
    let mut out = Automaton::new(ctx.poly().to_vec(), c, Mode::Pairs, Acceptance::Buchi);
    let label = |s: usize, p: usize| {
        let x = conv.state(s).label.element().expect("converter states are elements").clone();
        StateLabel::Pair(x, p)
    };
    let term = |s: usize, p: usize| conv.state(s).terminal && greedy.state(p).terminal;
    let start = out.add_state(label(0, 0), true, term(0, 0));
    let mut pairs = vec![(0usize, 0usize)];
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        let (s, p) = pairs[i];
        for e in conv.out_edges(s).collect::<Vec<_>>() {
            let Letter::Pair(_, b) = e.letter else { unreachable!() };
            let Some(p2) = greedy.successor(p, Letter::Digit(b)) else { continue };
            let before = out.num_states();
            let j = out.add_state(label(e.to, p2), false, term(e.to, p2));
            if j == before {
                pairs.push((e.to, p2));
                queue.push_back(j);
            }
            out.add_edge(i, e.letter, j)?;
        }
    }
    Ok(out.prune_non_live())
}

/// Finite pair word followed by `(0,0)^ω`: is it accepted from the
/// initial state?
pub fn accepts_padded_pairs(aut: &Automaton, pairs: &[(i64, i64)]) -> bool {
    let Some(&start) = aut.initial_states().first() else { return false };
    let prefix: Vec<Letter> = pairs.iter().map(|&(a, b)| Letter::Pair(a, b)).collect();
    aut.accepts_lasso(start, &prefix, &[Letter::Pair(0, 0)])
}

/// Greedy expansion of the value of `w`, computed directly.
pub fn normalize(ctx: &BetaContext, w: &[i64], out_len: usize) -> Result<Vec<i64>> {
    let c = ctx.canonical_digit_max();
    if let Some(a) = w.iter().find(|a| !(0..=c).contains(*a)) {
        return Err(Error::OutOfRange(format!("digit {a} outside 0..={c}")));
    }
    if out_len < w.len() {
        return Err(Error::OutOfRange(format!("output length {out_len} shorter than input {}", w.len())));
    }
    greedy_digits(ctx, &ctx.word_value(w), out_len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: &[i64]) -> BetaContext {
        BetaContext::new(p, 64).unwrap()
    }

    #[test]
    fn golden_ratio_converter() {
        let phi = ctx(&[1, -1, -1]);
        let c = build_converter(&phi, ExplorationBudget::default()).unwrap();
        assert_eq!(c.num_states(), 7);
        let zero = 0;
        let one = c.state_index(&StateLabel::Element(phi.one())).unwrap();
        let from_zero: Vec<(Letter, usize)> = c.out_edges(zero).map(|e| (e.letter, e.to)).collect();
        assert!(from_zero.contains(&(Letter::Pair(1, 0), one)));
        assert!(from_zero.contains(&(Letter::Pair(0, 0), zero)));
        assert!(from_zero.contains(&(Letter::Pair(1, 1), zero)));
        assert_eq!(from_zero.iter().filter(|(_, t)| *t == one).count(), 1);
        // 13 zero edges: 5 carry digit 0 (two pairs each), 8 carry ±1.
        assert_eq!(c.num_edges(), 5 * 2 + 8);
    }

    #[test]
    fn base_two_converter() {
        let two = ctx(&[1, -2]);
        let c = build_converter(&two, ExplorationBudget::default()).unwrap();
        assert_eq!(c.num_states(), 3);
        assert!(c.edges().all(|e| matches!(e.letter, Letter::Pair(0..=1, 0..=1))));
    }

    #[test]
    fn not_finite_within_budget() {
        let q = ctx(&[1, -2, -2, 0, -2]);
        let r = build_converter(&q, ExplorationBudget { max_states: 100, max_depth: 64 });
        assert_eq!(r.unwrap_err(), Error::ZNotFiniteWithinBudget);
    }

    #[test]
    fn normalization_examples() {
        let phi = ctx(&[1, -1, -1]);
        assert_eq!(normalize(&phi, &[0, 1, 1], 3).unwrap(), vec![1, 0, 0]);
        assert_eq!(normalize(&phi, &[0, 0, 1, 1], 4).unwrap(), vec![0, 1, 0, 0]);
        let two = ctx(&[1, -2]);
        assert_eq!(normalize(&two, &[0, 1, 1], 3).unwrap(), vec![0, 1, 1]);
        assert!(matches!(normalize(&phi, &[1, 1], 2), Err(Error::OutOfRange(_))));
        assert!(matches!(normalize(&phi, &[2], 2), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn product_acceptance() {
        let phi = ctx(&[1, -1, -1]);
        let n = normalization_automaton(&phi, ExplorationBudget::default()).unwrap();
        assert!(accepts_padded_pairs(&n, &[(0, 1), (1, 0), (1, 0)]));
        // second component 011 is not greedy
        assert!(!accepts_padded_pairs(&n, &[(1, 0), (0, 1), (0, 1)]));
        assert!(accepts_padded_pairs(&n, &[(1, 1), (0, 0), (1, 1)]));
        assert!(!accepts_padded_pairs(&n, &[(1, 0)]));
        let letters = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| Letter::Pair(a, b)).collect::<Vec<_>>();
        assert!(n.accepts_lasso(0, &[], &letters(&[(1, 1), (0, 0)])));
    }
}

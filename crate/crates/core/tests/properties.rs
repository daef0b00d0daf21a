mod common;

use betazero::automata::{Acceptance, Automaton, Letter, Mode, StateLabel};
use betazero::expansion::{d_beta_one, greedy_digits, greedy_run, is_admissible, DEFAULT_MAX_STEPS};
use betazero::spectrum::{enumerate_spectrum, min_gap, SpectrumQuery};
use betazero::word::EventuallyPeriodicWord;
use betazero::{BetaContext, FieldElement};
use common::{beta_f64, BATTERY};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::LazyLock;

static CTXS: LazyLock<Vec<BetaContext>> = LazyLock::new(|| BATTERY.iter().map(|p| common::ctx(p)).collect());
static BETAS: LazyLock<Vec<f64>> = LazyLock::new(|| BATTERY.iter().map(|p| beta_f64(p)).collect());

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn raw_poly(len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-30i64..30, 1i64..7), 0..=len).prop_map(|v| v.into_iter().map(|(n, d)| rat(n, d)).collect())
}

/// A context index and an element of its field.
fn element() -> impl Strategy<Value = (usize, FieldElement)> {
    (0..BATTERY.len(), raw_poly(4)).prop_map(|(i, raw)| {
        let x = CTXS[i].reduce(&raw);
        (i, x)
    })
}

fn element_triple() -> impl Strategy<Value = (usize, [FieldElement; 3])> {
    (0..BATTERY.len(), raw_poly(4), raw_poly(4), raw_poly(4)).prop_map(|(i, a, b, c)| {
        let ctx = &CTXS[i];
        (i, [ctx.reduce(&a), ctx.reduce(&b), ctx.reduce(&c)])
    })
}

fn eval_f64(x: &FieldElement, beta: f64) -> (f64, f64) {
    let coeffs = x.coeffs();
    let v = coeffs.iter().rev().fold(0.0, |acc, c| acc * beta + c.to_f64().unwrap());
    let scale = coeffs.iter().enumerate().map(|(k, c)| c.abs().to_f64().unwrap() * beta.powi(k as i32)).sum::<f64>();
    (v, scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws((i, [a, b, c]) in element_triple()) {
        let ctx = &CTXS[i];
        let ab_c = ctx.mul(&ctx.mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = ctx.mul(&a, &ctx.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let lhs = ctx.mul(&a, &(&b + &c)).unwrap();
        let rhs = &ctx.mul(&a, &b).unwrap() + &ctx.mul(&a, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
        let x = ctx.reduce(&[rat(0, 1), rat(1, 1)]);
        prop_assert_eq!(ctx.mul_by_beta(&a).unwrap(), ctx.mul(&a, &x).unwrap());
        if !b.is_zero() {
            let q = ctx.div(&a, &b).unwrap().unwrap();
            prop_assert_eq!(ctx.mul(&q, &b).unwrap(), a);
        }
    }

    #[test]
    fn reduce_is_idempotent(i in 0..BATTERY.len(), raw in raw_poly(12)) {
        let ctx = &CTXS[i];
        let once = ctx.reduce(&raw);
        prop_assert_eq!(ctx.reduce(&once.coeffs()), once);
    }

    #[test]
    fn sign_agrees_with_floating_point((i, x) in element()) {
        let ctx = &CTXS[i];
        let (v, scale) = eval_f64(&x, BETAS[i]);
        prop_assume!(v.abs() > 1e-9 * scale.max(1.0));
        let expected = if v > 0.0 { Ordering::Greater } else { Ordering::Less };
        prop_assert_eq!(ctx.sign(&x), expected);
    }

    #[test]
    fn floor_brackets((i, x) in element()) {
        let ctx = &CTXS[i];
        let f = ctx.floor(&x).to_i64().unwrap();
        prop_assert_ne!(ctx.sign(&x.add_int(-f)), Ordering::Less);
        prop_assert_eq!(ctx.sign(&x.add_int(-f - 1)), Ordering::Less);
    }

    #[test]
    fn greedy_identity_and_maximality(i in 0..BATTERY.len(), num in 0i64..1000, n in 1usize..16) {
        let ctx = &CTXS[i];
        let x = ctx.from_rational(&rat(num, 1000));
        let (digits, r) = greedy_run(ctx, &x, n).unwrap();
        let beta_n = ctx.pow_beta(n);
        let tail = ctx.div(&r, &beta_n).unwrap().unwrap();
        prop_assert_eq!(&ctx.word_value(&digits) + &tail, x.clone());
        prop_assert_ne!(ctx.sign(&r), Ordering::Less);
        prop_assert_eq!(ctx.sign(&r.add_int(-1)), Ordering::Less);
        // each digit is maximal: one more would overshoot
        let mut rem = x;
        for &d in &digits {
            let t = ctx.mul_by_beta(&rem).unwrap();
            prop_assert_eq!(ctx.sign(&t.add_int(-(d + 1))), Ordering::Less);
            rem = t.add_int(-d);
        }
    }

    #[test]
    fn greedy_outputs_are_admissible(i in 0..BATTERY.len(), num in 0i64..1000, n in 1usize..16) {
        let ctx = &CTXS[i];
        let verdict = d_beta_one(ctx, DEFAULT_MAX_STEPS);
        let digits = greedy_digits(ctx, &ctx.from_rational(&rat(num, 1000)), n).unwrap();
        prop_assert!(is_admissible(ctx, &verdict, &EventuallyPeriodicWord::finite(digits)).unwrap());
    }

    #[test]
    fn spectrum_inclusion_and_symmetry(i in 0..4usize, d in 1u32..3, n in 0usize..5, w in 1i64..6) {
        let ctx = &CTXS[i];
        let window = |signed| (-rat(w, 1), rat(w, 1), signed);
        let run = |d, n, (lo, hi, signed): (BigRational, BigRational, bool)| -> HashSet<FieldElement> {
            enumerate_spectrum(ctx, &SpectrumQuery::new(d, n, lo, hi, signed).unwrap()).unwrap().into_iter().collect()
        };
        let x = run(d, n, window(false));
        prop_assert!(x.is_subset(&run(d, n + 1, window(false))));
        prop_assert!(x.is_subset(&run(d + 1, n, window(false))));
        let y = run(d, n, window(true));
        prop_assert!(x.is_subset(&y));
        prop_assert!(y.iter().all(|v| y.contains(&-v)));
    }

    #[test]
    fn min_gap_is_monotone(i in 0..4usize, d in 1u32..3, n in 1usize..5) {
        let ctx = &CTXS[i];
        let window = (rat(0, 1), rat(5, 1));
        let g = min_gap(ctx, d, n, window.clone()).unwrap().min_gap;
        let longer = min_gap(ctx, d, n + 1, window.clone()).unwrap().min_gap;
        let wider = min_gap(ctx, d + 1, n, window).unwrap().min_gap;
        prop_assert_ne!(ctx.cmp(&longer, &g), Ordering::Greater);
        prop_assert_ne!(ctx.cmp(&wider, &g), Ordering::Greater);
    }

    #[test]
    fn json_round_trip(aut in automaton()) {
        let back = Automaton::from_json(&aut.to_json()).unwrap();
        prop_assert_eq!(&back, &aut);
        prop_assert!(back.equal_by_labels(&aut));
    }
}

fn automaton() -> impl Strategy<Value = Automaton> {
    let labels = prop::collection::vec((-5i64..5, -5i64..5, 1i64..4), 1..6);
    let pairs = any::<bool>();
    (labels, pairs, prop::collection::vec((0usize..6, -2i64..3, -2i64..3, 0usize..6), 0..20), any::<u8>()).prop_map(
        |(labels, pairs, edges, flags)| {
            let mode = if pairs { Mode::Pairs } else { Mode::Signed };
            let mut aut = Automaton::new(vec![1, -1, -1], 2, mode, Acceptance::Buchi);
            for (k, (a, b, d)) in labels.into_iter().enumerate() {
                let x = FieldElement::from_rationals(&[rat(a, d), rat(b, 1)]);
                aut.add_state(StateLabel::Element(x), k == 0, flags & (1 << (k % 8)) != 0);
            }
            let n = aut.num_states();
            for (from, a, b, to) in edges {
                let letter = if pairs { Letter::Pair(a.abs(), b.abs()) } else { Letter::Digit(a) };
                let _ = aut.add_edge(from % n, letter, to % n);
            }
            aut
        },
    )
}

#[test]
fn reduce_of_the_defining_polynomial_is_zero() {
    for (p, ctx) in BATTERY.iter().zip(CTXS.iter()) {
        let raw: Vec<BigRational> = p.iter().rev().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        assert!(ctx.reduce(&raw).is_zero(), "{p:?}");
    }
}

#[test]
fn pisot_battery_classifies_as_pisot() {
    use betazero::algebraic::RootKind;
    for p in [&[1, -1, -1][..], &[1, 0, -1, -1], &[1, -2, -1], &[1, -2]] {
        let ctx = common::ctx(p);
        assert_eq!(ctx.classify_roots().kind, RootKind::Pisot, "{p:?}");
        // floating-point cross-check: every other root has modulus below one
        let beta = beta_f64(p);
        let roots = common::roots_f64(p);
        assert_eq!(roots.iter().filter(|z| (z.re - beta).abs() < 1e-9 && z.im.abs() < 1e-9).count(), 1);
        assert!(roots.iter().filter(|z| (z.re - beta).abs() >= 1e-9 || z.im.abs() >= 1e-9).all(|z| z.norm() < 1.0 - 1e-6));
    }
}

#[test]
fn pisot_expansions_of_one_terminate_fast() {
    for p in [&[1, -1, -1][..], &[1, -1, -1, -1], &[1, -2, -1]] {
        let ctx = common::ctx(p);
        let v = d_beta_one(&ctx, 64);
        assert!(v.is_determined(), "{p:?}");
        if v.word.as_ref().unwrap().is_finite() {
            let w = v.word.unwrap();
            assert_eq!(ctx.word_value(w.preperiod()), ctx.one());
        }
    }
}

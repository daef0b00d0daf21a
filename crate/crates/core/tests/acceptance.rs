//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use betazero::algebraic::RootKind;
use betazero::automata::{Acceptance, Automaton, Letter, Mode, StateLabel};
use betazero::converter::{accepts_padded_pairs, normalization_automaton, normalize};
use betazero::expansion::{d_beta_one, greedy_run, is_admissible, DEFAULT_MAX_STEPS};
use betazero::spectrum::{enumerate_spectrum, f_number_probe, min_gap, FProbeBudget, FProbeOutcome, GapStats, SpectrumQuery};
use betazero::word::EventuallyPeriodicWord;
use betazero::zero::{build_w, build_z, BuildStatus, ExplorationBudget};
use betazero::{BetaContext, FieldElement};
use common::{ctx, IntRing, BATTERY};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::cmp::Ordering;
use std::collections::HashSet;
use std::time::{Duration, Instant};

const PHI: &[i64] = &[1, -1, -1];
const QUARTIC: &[i64] = &[1, -2, -2, 0, -2];
const SALEM: &[i64] = &[1, -2, 1, -2, 1];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `a + bφ` in the field of `c`.
fn phi_elem(c: &BetaContext, a: i64, b: i64) -> FieldElement {
    c.beta().scale_int(b).add_int(a)
}

/// Hand-encoded automaton over φ from `(a, b)` state coordinates and
/// `(from, digit, to)` edges.
fn fixture(c: &BetaContext, states: &[(i64, i64)], edges: &[((i64, i64), i64, (i64, i64))], acceptance: Acceptance) -> Automaton {
    let mut aut = Automaton::new(PHI.to_vec(), 1, Mode::Signed, acceptance);
    let buchi = acceptance == Acceptance::Buchi;
    for &(a, b) in states {
        let zero = (a, b) == (0, 0);
        aut.add_state(StateLabel::Element(phi_elem(c, a, b)), zero, buchi || zero);
    }
    let idx = |(a, b): (i64, i64)| aut.state_index(&StateLabel::Element(phi_elem(c, a, b))).unwrap();
    let edges: Vec<_> = edges.iter().map(|&(s, d, t)| (idx(s), d, idx(t))).collect();
    for (s, d, t) in edges {
        aut.add_edge(s, Letter::Digit(d), t).unwrap();
    }
    aut
}

fn golden_zero_automaton() -> Outcome {
    let c = ctx(PHI);
    let start = Instant::now();
    let z = build_z(&c, 1, ExplorationBudget::default()).map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), start)?;
    ensure(z.status == BuildStatus::Finite, || "not finite".into())?;
    let z = z.automaton.unwrap();
    let (o, one, m1, p, mp, pm1, mpp1) = ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (-1, 1), (1, -1));
    let expected = fixture(
        &c,
        &[o, one, m1, pm1, mpp1, p, mp],
        &[
            (o, 0, o),
            (o, 1, one),
            (o, -1, m1),
            (one, 0, p),
            (one, -1, pm1),
            (m1, 0, mp),
            (m1, 1, mpp1),
            (p, -1, p),
            (mp, 1, mp),
            (pm1, 0, one),
            (pm1, -1, o),
            (mpp1, 0, m1),
            (mpp1, 1, o),
        ],
        Acceptance::Buchi,
    );
    ensure(z.equal_by_labels(&expected), || format!("got {} states, {} edges", z.num_states(), z.num_edges()))?;
    Ok(format!("{} states, {} edges", z.num_states(), z.num_edges()))
}

fn golden_finite_zero_automaton() -> Outcome {
    let c = ctx(PHI);
    let start = Instant::now();
    let w = build_w(&c, 1, ExplorationBudget::default()).map_err(|e| e.to_string())?;
    within(Duration::from_secs(1), start)?;
    let w = w.automaton.ok_or("not finite")?;
    let (o, one, m1, pm1, mpp1) = ((0, 0), (1, 0), (-1, 0), (-1, 1), (1, -1));
    let expected = fixture(
        &c,
        &[o, one, m1, pm1, mpp1],
        &[
            (o, 0, o),
            (o, 1, one),
            (o, -1, m1),
            (one, -1, pm1),
            (m1, 1, mpp1),
            (pm1, 0, one),
            (pm1, -1, o),
            (mpp1, 0, m1),
            (mpp1, 1, o),
        ],
        Acceptance::Finite,
    );
    ensure(w.equal_by_labels(&expected), || format!("got {} states, {} edges", w.num_states(), w.num_edges()))?;
    Ok(format!("{} states, {} edges", w.num_states(), w.num_edges()))
}

fn expansions_of_one() -> Outcome {
    let mut got = Vec::new();
    for (p, want) in [(PHI, "11"), (QUARTIC, "2202"), (SALEM, "1(1100)")] {
        let v = d_beta_one(&ctx(p), DEFAULT_MAX_STEPS);
        let s = v.word.map(|w| w.to_string()).unwrap_or_default();
        ensure(s == want, || format!("{p:?}: {s:?} != {want:?}"))?;
        got.push(s);
    }
    Ok(got.join(", "))
}

fn classification() -> Outcome {
    let mut got = Vec::new();
    for (p, want) in [(PHI, RootKind::Pisot), (QUARTIC, RootKind::OtherNoUnitConjugate), (SALEM, RootKind::Salem)] {
        let kind = ctx(p).classify_roots().kind;
        ensure(kind == want, || format!("{p:?}: {} != {}", kind.as_str(), want.as_str()))?;
        got.push(kind.as_str());
    }
    Ok(got.join(", "))
}

fn trivial_alphabet() -> Outcome {
    let c = ctx(PHI);
    let z = build_z(&c, 0, ExplorationBudget::default()).map_err(|e| e.to_string())?;
    let z = z.automaton.ok_or("not finite")?;
    let edges: Vec<_> = z.edges().collect();
    ensure(z.num_states() == 1 && edges.len() == 1, || format!("{} states, {} edges", z.num_states(), edges.len()))?;
    ensure(edges[0].from == 0 && edges[0].to == 0 && edges[0].letter == Letter::Digit(0), || "not a 0-loop".into())?;
    ensure(z.state(0).label == StateLabel::Element(c.zero()), || "state is not 0".into())?;
    Ok("single state 0 with loop 0".into())
}

fn non_recognizability() -> Outcome {
    let budget = ExplorationBudget { max_states: 10_000, max_depth: 10_000 };
    let mut notes = Vec::new();
    for (p, d, finite_words) in [(QUARTIC, 2, false), (SALEM, 1, true)] {
        let c = ctx(p);
        let start = Instant::now();
        let out = if finite_words { build_w(&c, d, budget) } else { build_z(&c, d, budget) }.map_err(|e| e.to_string())?;
        within(Duration::from_secs(60), start)?;
        ensure(out.status == BuildStatus::BudgetExceeded, || format!("{p:?}: finished with {:?}", out.growth.last()))?;
        let depths = out.growth.len() - 1;
        ensure(out.growth.windows(2).all(|w| w[0] < w[1]), || format!("{p:?}: growth not strictly increasing {:?}", out.growth))?;
        ensure(depths >= 10, || format!("{p:?}: only {depths} depths"))?;
        notes.push(format!("{} over {depths} depths", if finite_words { "W" } else { "Z" }));
    }
    Ok(notes.join(", "))
}

fn w_oracle() -> Outcome {
    let c = ctx(PHI);
    let start = Instant::now();
    let w = build_w(&c, 1, ExplorationBudget::default()).map_err(|e| e.to_string())?.automaton.ok_or("not finite")?;
    let ring = IntRing::new(PHI);
    let mut checked = 0u64;
    let mut zeros = 0u64;
    // depth-first over all words of length ≤ 10, carrying the automaton
    // state and the exact scaled value together
    let mut stack = vec![(Some(0usize), ring.zero(), 0usize)];
    while let Some((s, v, len)) = stack.pop() {
        checked += 1;
        let accepted = s.is_some_and(|s| w.state(s).terminal);
        let zero = v.is_zero();
        zeros += zero as u64;
        ensure(accepted == zero, || format!("disagreement on a word of length {len}"))?;
        if len < 10 {
            for a in -1..=1 {
                stack.push((s.and_then(|s| w.successor(s, Letter::Digit(a))), ring.step(&v, a), len + 1));
            }
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("{checked} words, {zeros} zero-valued"))
}

fn normalization() -> Outcome {
    let c = ctx(PHI);
    let start = Instant::now();
    let verdict = d_beta_one(&c, DEFAULT_MAX_STEPS);
    let aut = normalization_automaton(&c, ExplorationBudget::default()).map_err(|e| e.to_string())?;
    let ring = IntRing::new(PHI);
    let mut rng = StdRng::seed_from_u64(2024);
    let mut shifted = 0;
    for _ in 0..1000 {
        let len = rng.gen_range(1..=12);
        let mut w: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=1)).collect();
        if c.sign(&c.word_value(&w).add_int(-1)) != Ordering::Less {
            // normalize expects a value in [0, 1)
            w.insert(0, 0);
            shifted += 1;
        }
        let out = normalize(&c, &w, w.len()).map_err(|e| format!("{w:?}: {e}"))?;
        ensure(ring.scaled_value(&out) == ring.scaled_value(&w), || format!("{w:?} -> {out:?} changes the value"))?;
        ensure(!out.windows(2).any(|p| p == [1, 1]), || format!("{out:?} has factor 11"))?;
        let admissible = is_admissible(&c, &verdict, &EventuallyPeriodicWord::finite(out.clone())).map_err(|e| e.to_string())?;
        ensure(admissible, || format!("{out:?} not admissible"))?;
        let pairs: Vec<(i64, i64)> = w.iter().copied().zip(out.iter().copied()).collect();
        ensure(accepts_padded_pairs(&aut, &pairs), || format!("pair ({w:?}, {out:?}) rejected"))?;
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("1000 words ({shifted} shifted by a leading 0)"))
}

fn gap_line(s: &GapStats, degrees: std::ops::RangeInclusive<usize>) -> String {
    degrees.map(|m| format!("{m}:{}", s.per_degree_min_gap[m].min_gap_decimal.as_deref().unwrap_or("-"))).collect::<Vec<_>>().join(" ")
}

fn gap_trend() -> Outcome {
    let start = Instant::now();
    let window = (rat(0), rat(10));
    let phi = ctx(PHI);
    let s = min_gap(&phi, 1, 10, window.clone()).map_err(|e| e.to_string())?;
    let base = s.per_degree_min_gap[4].min_gap.clone().ok_or("no degree-4 gap")?;
    let half = base.scale(&BigRational::new(1.into(), 2.into()));
    for m in 4..=10 {
        let g = s.per_degree_min_gap[m].min_gap.as_ref().ok_or("missing gap")?;
        ensure(phi.cmp(g, &half) != Ordering::Less, || format!("φ degree {m} gap below half of degree 4"))?;
    }
    let q = ctx(QUARTIC);
    let t = min_gap(&q, 2, 8, window).map_err(|e| e.to_string())?;
    within(Duration::from_secs(120), start)?;
    let g4 = t.per_degree_min_gap[4].min_gap.clone().ok_or("no degree-4 gap")?;
    let g8 = t.per_degree_min_gap[8].min_gap.clone().ok_or("no degree-8 gap")?;
    let quartic_line = gap_line(&t, 4..=8);
    ensure(q.cmp(&g8.scale_int(4), &g4) != Ordering::Greater, || {
        format!("φ ok ({}); quartic gap does not drop 4x from degree 4 to 8: {quartic_line}", gap_line(&s, 4..=10))
    })?;
    Ok(format!("φ {}; quartic {quartic_line}", gap_line(&s, 4..=10)))
}

fn f_numbers() -> Outcome {
    let phi = ctx(PHI);
    let out = f_number_probe(&phi, FProbeBudget::default()).map_err(|e| e.to_string())?;
    let FProbeOutcome::Finite(values) = &out else { return Err("φ probe exceeded its budget".into()) };
    let z = build_z(&phi, 1, ExplorationBudget::default()).map_err(|e| e.to_string())?.automaton.unwrap();
    let values: HashSet<_> = values.iter().collect();
    ensure(z.states().iter().all(|s| values.contains(s.label.element().unwrap())), || "a Z state is missing".into())?;
    let q = ctx(QUARTIC);
    let out2 = f_number_probe(&q, FProbeBudget { max_values: 100_000, ..FProbeBudget::default() }).map_err(|e| e.to_string())?;
    ensure(!out2.is_finite(), || format!("quartic finite with {} values", out2.count()))?;
    Ok(format!("φ finite with {} values; quartic exceeded after {}", out.count(), out2.count()))
}

fn invariant_suites() -> Outcome {
    let mut checks = 0usize;
    let mut rng = StdRng::seed_from_u64(11);
    for p in BATTERY {
        let c = ctx(p);
        let d = c.canonical_digit_max() as u32;
        let beta = c.beta();
        // edge identity and negation symmetry on every finite automaton
        let budget = ExplorationBudget { max_states: 2_000, max_depth: 64 };
        let z = build_z(&c, d, budget).map_err(|e| e.to_string())?.automaton;
        let w = build_w(&c, d, budget).map_err(|e| e.to_string())?.automaton;
        for aut in z.iter().chain(w.iter()) {
            for e in aut.edges() {
                let s = aut.state(e.from).label.element().unwrap();
                let t = aut.state(e.to).label.element().unwrap();
                let expected = c.mul(&beta, s).unwrap().add_int(e.letter.digit().unwrap());
                ensure(&expected == t, || format!("{p:?}: edge identity"))?;
                checks += 1;
            }
            let neg = aut.map(|l| StateLabel::Element(-l.element().unwrap()), |a| a.negate());
            ensure(neg.equal_by_labels(aut), || format!("{p:?}: negation symmetry"))?;
            ensure(&Automaton::from_json(&aut.to_json()).map_err(|e| e.to_string())? == aut, || format!("{p:?}: JSON"))?;
            checks += 2;
        }
        // greedy identity and maximality
        let verdict = d_beta_one(&c, DEFAULT_MAX_STEPS);
        let greedy = betazero::expansion::greedy_automaton(&c, &verdict).map_err(|e| e.to_string())?;
        ensure(&Automaton::from_json(&greedy.to_json()).map_err(|e| e.to_string())? == &greedy, || format!("{p:?}: JSON"))?;
        for _ in 0..20 {
            let x = c.from_rational(&BigRational::new(rng.gen_range(0..997).into(), 997.into()));
            let n = rng.gen_range(1..12);
            let (digits, r) = greedy_run(&c, &x, n).map_err(|e| e.to_string())?;
            let back = &c.word_value(&digits) + &c.div(&r, &c.pow_beta(n)).unwrap().unwrap();
            ensure(back == x, || format!("{p:?}: greedy identity"))?;
            ensure(c.sign(&r) != Ordering::Less && c.sign(&r.add_int(-1)) == Ordering::Less, || format!("{p:?}: remainder"))?;
            let mut rem = x;
            for &dg in &digits {
                let t = c.mul_by_beta(&rem).unwrap();
                ensure(c.sign(&t.add_int(-(dg + 1))) == Ordering::Less, || format!("{p:?}: maximality"))?;
                rem = t.add_int(-dg);
            }
            let ok = is_admissible(&c, &verdict, &EventuallyPeriodicWord::finite(digits)).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{p:?}: admissibility"))?;
            checks += 3;
        }
        // spectrum inclusion and symmetry
        let run = |d: u32, n: usize, signed: bool| -> Result<HashSet<FieldElement>, String> {
            let q = SpectrumQuery::new(d, n, rat(-4), rat(4), signed).map_err(|e| e.to_string())?;
            Ok(enumerate_spectrum(&c, &q).map_err(|e| e.to_string())?.into_iter().collect())
        };
        for n in 0..4 {
            let x = run(1, n, false)?;
            ensure(x.is_subset(&run(1, n + 1, false)?) && x.is_subset(&run(2, n, false)?), || format!("{p:?}: inclusion"))?;
            let y = run(1, n, true)?;
            ensure(x.is_subset(&y) && y.iter().all(|v| y.contains(&-v)), || format!("{p:?}: symmetry"))?;
            checks += 2;
        }
    }
    Ok(format!("{checks} checks over {} bases", BATTERY.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("zero automaton of the golden ratio", golden_zero_automaton),
        ("finite zero automaton of the golden ratio", golden_finite_zero_automaton),
        ("expansions of one", expansions_of_one),
        ("classification", classification),
        ("trivial alphabet", trivial_alphabet),
        ("non-recognizability evidence", non_recognizability),
        ("finite zero words against brute force", w_oracle),
        ("normalization equivalence", normalization),
        ("spectrum gap trend", gap_trend),
        ("F-number probe", f_numbers),
        ("invariant suites", invariant_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {:>2} PASS  {name} ({note}) [{t:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Digit-labelled automata with exact state labels.
//!
//! States are identified by their label, so two automata built over the same
//! base can be compared without an isomorphism search. Transitions are kept
//! in a map keyed by `(source, letter)`, which enforces determinism and
//! yields the serialization order for free.

use crate::algebraic::FieldElement;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateLabel {
    /// A value in `Q(β)`, as used by zero automata and converters.
    Element(FieldElement),
    /// A product state: converter value and position in the greedy automaton.
    Pair(FieldElement, usize),
    /// A position in the expansion of one.
    Position(usize),
}

impl StateLabel {
    pub fn element(&self) -> Option<&FieldElement> {
        match self {
            StateLabel::Element(x) | StateLabel::Pair(x, _) => Some(x),
            StateLabel::Position(_) => None,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            StateLabel::Element(x) => x.to_text(),
            StateLabel::Pair(x, p) => format!("{}|{p}", x.to_text()),
            StateLabel::Position(p) => format!("q{p}"),
        }
    }

    pub fn parse(text: &str) -> Result<StateLabel> {
        let bad = || Error::MalformedJson(format!("bad state label {text:?}"));
        if let Some(rest) = text.strip_prefix('q') {
            return rest.parse().map(StateLabel::Position).map_err(|_| bad());
        }
        if let Some((x, p)) = text.split_once('|') {
            let p = p.parse().map_err(|_| bad())?;
            return Ok(StateLabel::Pair(FieldElement::parse(x).map_err(|_| bad())?, p));
        }
        FieldElement::parse(text).map(StateLabel::Element).map_err(|_| bad())
    }

    /// Display form with `β` as the variable.
    pub fn pretty(&self) -> String {
        match self {
            StateLabel::Element(x) => x.pretty("β"),
            StateLabel::Pair(x, p) => format!("{}|{p}", x.pretty("β")),
            StateLabel::Position(p) => format!("q{p}"),
        }
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Digit(i64),
    Pair(i64, i64),
}

impl Letter {
    pub fn digit(&self) -> Option<i64> {
        match *self {
            Letter::Digit(a) => Some(a),
            Letter::Pair(..) => None,
        }
    }

    pub fn negate(&self) -> Letter {
        match *self {
            Letter::Digit(a) => Letter::Digit(-a),
            Letter::Pair(a, b) => Letter::Pair(-a, -b),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Digit(a) => write!(f, "{a}"),
            Letter::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Digits `-d..=d`.
    Signed,
    /// Digits `0..=d`.
    Canonical,
    /// Pairs of canonical digits.
    Pairs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Acceptance {
    Finite,
    Buchi,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub label: StateLabel,
    pub initial: bool,
    pub terminal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub letter: Letter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    pub beta_poly: Vec<i64>,
    pub digit_bound: i64,
    pub mode: Mode,
    pub acceptance: Acceptance,
    states: Vec<State>,
    index: HashMap<StateLabel, usize>,
    delta: BTreeMap<(usize, Letter), usize>,
}

impl Automaton {
    pub fn new(beta_poly: Vec<i64>, digit_bound: i64, mode: Mode, acceptance: Acceptance) -> Automaton {
        Automaton { beta_poly, digit_bound, mode, acceptance, states: Vec::new(), index: HashMap::new(), delta: BTreeMap::new() }
    }

    /// Add a state, or return the index of the state with this label.
    pub fn add_state(&mut self, label: StateLabel, initial: bool, terminal: bool) -> usize {
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.states.len();
        self.index.insert(label.clone(), i);
        self.states.push(State { label, initial, terminal });
        i
    }

    /// Add a transition. A second transition on the same letter from the
    /// same state would break determinism and is rejected.
    pub fn add_edge(&mut self, from: usize, letter: Letter, to: usize) -> Result<()> {
        assert!(from < self.states.len() && to < self.states.len(), "edge endpoint out of range");
        match self.delta.get(&(from, letter)) {
            Some(&t) if t != to => Err(Error::MalformedJson(format!("two {letter} transitions leave state {from}"))),
            _ => {
                self.delta.insert((from, letter), to);
                Ok(())
            }
        }
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &State {
        &self.states[i]
    }

    pub fn state_index(&self, label: &StateLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_edges(&self) -> usize {
        self.delta.len()
    }

    pub fn set_terminal(&mut self, i: usize, terminal: bool) {
        self.states[i].terminal = terminal;
    }

    pub fn set_initial(&mut self, i: usize, initial: bool) {
        self.states[i].initial = initial;
    }

    /// Edges sorted by source index, then letter.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.delta.iter().map(|(&(from, letter), &to)| Edge { from, to, letter })
    }

    pub fn out_edges(&self, s: usize) -> impl Iterator<Item = Edge> + '_ {
        self.delta
            .range((s, Letter::Digit(i64::MIN))..(s + 1, Letter::Digit(i64::MIN)))
            .map(|(&(from, letter), &to)| Edge { from, to, letter })
    }

    pub fn successor(&self, s: usize, letter: Letter) -> Option<usize> {
        self.delta.get(&(s, letter)).copied()
    }

    pub fn initial_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&i| self.states[i].initial).collect()
    }

    /// Follow a finite word from `s`.
    pub fn run(&self, s: usize, word: impl IntoIterator<Item = Letter>) -> Option<usize> {
        word.into_iter().try_fold(s, |q, a| self.successor(q, a))
    }

    /// Büchi acceptance of the ultimately periodic word `prefix cycle^ω`
    /// from `start`: the run exists and its repeating part meets a
    /// terminal state.
    pub fn accepts_lasso(&self, start: usize, prefix: &[Letter], cycle: &[Letter]) -> bool {
        assert!(!cycle.is_empty(), "cycle must be nonempty");
        let Some(mut q) = self.run(start, prefix.iter().copied()) else { return false };
        let mut starts: Vec<usize> = Vec::new();
        let mut hits: Vec<bool> = Vec::new();
        loop {
            if let Some(j) = starts.iter().position(|&s| s == q) {
                return hits[j..].iter().any(|&h| h);
            }
            starts.push(q);
            let mut hit = false;
            for &a in cycle {
                match self.successor(q, a) {
                    Some(t) => q = t,
                    None => return false,
                }
                hit |= self.states[q].terminal;
            }
            hits.push(hit);
        }
    }

    /// Keep the states flagged in `keep`, preserving their relative order.
    pub fn restrict(&self, keep: &[bool]) -> Automaton {
        let mut out = Automaton::new(self.beta_poly.clone(), self.digit_bound, self.mode, self.acceptance);
        let mut map = vec![usize::MAX; self.states.len()];
        for (i, s) in self.states.iter().enumerate() {
            if keep[i] {
                map[i] = out.add_state(s.label.clone(), s.initial, s.terminal);
            }
        }
        for e in self.edges() {
            if keep[e.from] && keep[e.to] {
                out.delta.insert((map[e.from], e.letter), map[e.to]);
            }
        }
        out
    }

    fn reach(&self, start: &[usize], forward: bool) -> Vec<bool> {
        let mut adj = vec![Vec::new(); self.states.len()];
        for e in self.edges() {
            if forward {
                adj[e.from].push(e.to);
            } else {
                adj[e.to].push(e.from);
            }
        }
        let mut seen = vec![false; self.states.len()];
        let mut queue: VecDeque<usize> = start.iter().copied().collect();
        for &s in start {
            seen[s] = true;
        }
        while let Some(s) = queue.pop_front() {
            for &t in &adj[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Keep states reachable from an initial state and co-reachable to one
    /// of `targets`.
    pub fn trim_coaccessible(&self, targets: &[usize]) -> Automaton {
        let fwd = self.reach(&self.initial_states(), true);
        let bwd = self.reach(targets, false);
        let keep: Vec<bool> = fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect();
        self.restrict(&keep)
    }

    /// Repeatedly drop states without outgoing edges.
    pub fn prune_non_live(&self) -> Automaton {
        let n = self.states.len();
        let mut alive = vec![true; n];
        let mut out_deg = vec![0usize; n];
        let mut preds = vec![Vec::new(); n];
        for e in self.edges() {
            out_deg[e.from] += 1;
            preds[e.to].push(e.from);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| out_deg[i] == 0).collect();
        while let Some(s) = queue.pop_front() {
            if !alive[s] {
                continue;
            }
            alive[s] = false;
            for &p in &preds[s] {
                out_deg[p] -= 1;
                if out_deg[p] == 0 && alive[p] {
                    queue.push_back(p);
                }
            }
        }
        self.restrict(&alive)
    }

    /// Same alphabet, same labelled states with the same flags, and the same
    /// labelled transitions.
    pub fn equal_by_labels(&self, other: &Automaton) -> bool {
        if self.mode != other.mode || self.digit_bound != other.digit_bound || self.states.len() != other.states.len() {
            return false;
        }
        if self.delta.len() != other.delta.len() {
            return false;
        }
        for s in &self.states {
            match other.state_index(&s.label) {
                Some(j) if other.states[j].initial == s.initial && other.states[j].terminal == s.terminal => {}
                _ => return false,
            }
        }
        self.edges().all(|e| {
            let from = other.state_index(&self.states[e.from].label).unwrap();
            let to = other.state_index(&self.states[e.to].label).unwrap();
            other.successor(from, e.letter) == Some(to)
        })
    }

    /// Relabel states and letters, e.g. for the negation symmetry.
    pub fn map(&self, label: impl Fn(&StateLabel) -> StateLabel, letter: impl Fn(Letter) -> Letter) -> Automaton {
        let mut out = Automaton::new(self.beta_poly.clone(), self.digit_bound, self.mode, self.acceptance);
        for s in &self.states {
            out.add_state(label(&s.label), s.initial, s.terminal);
        }
        for e in self.edges() {
            out.delta.insert((e.from, letter(e.letter)), e.to);
        }
        out
    }

    /// Graphviz rendering. Terminal states are double circles; initial
    /// states are drawn bold.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        for (i, s) in self.states.iter().enumerate() {
            let shape = if s.terminal { "doublecircle" } else { "circle" };
            let style = if s.initial { ", style=bold" } else { "" };
            out.push_str(&format!("  n{i} [label=\"{}\", shape={shape}{style}];\n", s.label.pretty()));
        }
        for e in self.edges() {
            let l = match e.letter {
                Letter::Digit(a) => a.to_string(),
                Letter::Pair(a, b) => format!("{a}|{b}"),
            };
            out.push_str(&format!("  n{} -> n{} [label=\"{l}\"];\n", e.from, e.to));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self) -> JsonAutomaton {
        JsonAutomaton {
            beta_poly: self.beta_poly.clone(),
            digit_bound: self.digit_bound,
            mode: self.mode,
            acceptance: self.acceptance,
            states: self
                .states
                .iter()
                .enumerate()
                .map(|(id, s)| JsonState { id, label: s.label.to_text(), initial: s.initial, terminal: s.terminal })
                .collect(),
            edges: self
                .edges()
                .map(|e| match e.letter {
                    Letter::Digit(digit) => JsonEdge::Digit { from: e.from, to: e.to, digit },
                    Letter::Pair(a, b) => JsonEdge::Pair { from: e.from, to: e.to, a, b },
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("automaton serializes")
    }

    pub fn from_json(text: &str) -> Result<Automaton> {
        let j: JsonAutomaton = serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
        let mut out = Automaton::new(j.beta_poly, j.digit_bound, j.mode, j.acceptance);
        let mut seen = HashSet::new();
        for (k, s) in j.states.into_iter().enumerate() {
            if s.id != k {
                return Err(Error::MalformedJson(format!("state ids must be 0..n in order, found {} at {k}", s.id)));
            }
            let label = StateLabel::parse(&s.label)?;
            if !seen.insert(label.clone()) {
                return Err(Error::MalformedJson(format!("duplicate state label {}", s.label)));
            }
            out.add_state(label, s.initial, s.terminal);
        }
        let n = out.num_states();
        for e in j.edges {
            let (from, to, letter) = match e {
                JsonEdge::Digit { from, to, digit } => (from, to, Letter::Digit(digit)),
                JsonEdge::Pair { from, to, a, b } => (from, to, Letter::Pair(a, b)),
            };
            if from >= n || to >= n {
                return Err(Error::MalformedJson(format!("edge {from} -> {to} references a missing state")));
            }
            out.add_edge(from, letter, to)?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonState {
    pub id: usize,
    pub label: String,
    pub initial: bool,
    pub terminal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonEdge {
    Pair { from: usize, to: usize, a: i64, b: i64 },
    Digit { from: usize, to: usize, digit: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAutomaton {
    pub beta_poly: Vec<i64>,
    pub digit_bound: i64,
    pub mode: Mode,
    pub acceptance: Acceptance,
    pub states: Vec<JsonState>,
    pub edges: Vec<JsonEdge>,
}

//! Eventually periodic digit words `u(v)^ω`.

use crate::algebraic::{BetaContext, FieldElement};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// A word `u v v v …`; an empty period stands for a tail of zeros.
///
/// The representation is canonical: the period is primitive, the preperiod
/// is as short as possible, an all-zero period is dropped, and a finite word
/// carries no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicWord {
    preperiod: Vec<i64>,
    period: Vec<i64>,
}

fn primitive_root(v: &[i64]) -> &[i64] {
    let n = v.len();
    for p in 1..=n {
        if n.is_multiple_of(p) && (p..n).all(|i| v[i] == v[i - p]) {
            return &v[..p];
        }
    }
    v
}

impl EventuallyPeriodicWord {
    pub fn new(preperiod: Vec<i64>, period: Vec<i64>) -> Self {
        let mut pre = preperiod;
        let mut per = if period.iter().all(|&d| d == 0) { Vec::new() } else { primitive_root(&period).to_vec() };
        if per.is_empty() {
            while pre.last() == Some(&0) {
                pre.pop();
            }
        } else {
            while !pre.is_empty() && pre.last() == per.last() {
                pre.pop();
                per.rotate_right(1);
            }
        }
        EventuallyPeriodicWord { preperiod: pre, period: per }
    }

    pub fn finite(digits: Vec<i64>) -> Self {
        Self::new(digits, Vec::new())
    }

    pub fn periodic(period: Vec<i64>) -> Self {
        Self::new(Vec::new(), period)
    }

    pub fn preperiod(&self) -> &[i64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// The `i`-th digit, counting from zero.
    pub fn digit(&self, i: usize) -> i64 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else if self.period.is_empty() {
            0
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<i64> {
        (0..n).map(|i| self.digit(i)).collect()
    }

    /// Period used when running the word through an automaton: `0` for
    /// finite words.
    pub fn cycle(&self) -> Vec<i64> {
        if self.period.is_empty() {
            vec![0]
        } else {
            self.period.clone()
        }
    }

    pub fn digits(&self) -> impl Iterator<Item = i64> + '_ {
        self.preperiod.iter().chain(self.period.iter()).copied()
    }

    /// Exact value `Σ w_i β^{-i}`.
    pub fn value(&self, ctx: &BetaContext) -> FieldElement {
        let p = self.preperiod.len();
        let pre = ctx.word_value(&self.preperiod);
        if self.period.is_empty() {
            return pre;
        }
        let m = self.period.len();
        // β^{-p} · P · β^m / (β^m - 1), with P the value of 0.v
        let per = ctx.word_value(&self.period);
        let bm = ctx.pow_beta(m);
        let num = ctx.mul(&per, &bm).expect("same field");
        let den = ctx.mul(&bm.add_int(-1), &ctx.pow_beta(p)).expect("same field");
        let tail = ctx.div(&num, &den).expect("same field").expect("β^m ≠ 1 for β > 1");
        &pre + &tail
    }
}

fn compact(digits: &[i64]) -> bool {
    digits.iter().all(|d| (0..=9).contains(d))
}

fn render(digits: &[i64], compact_form: bool) -> String {
    let sep = if compact_form { "" } else { "," };
    digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.preperiod.is_empty() && self.period.is_empty() {
            return f.write_str("0");
        }
        let c = compact(&self.preperiod) && compact(&self.period);
        f.write_str(&render(&self.preperiod, c))?;
        if !self.period.is_empty() {
            write!(f, "({})", render(&self.period, c))?;
        }
        Ok(())
    }
}

fn parse_digits(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') || s.contains('-') {
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad digit {t:?}"))))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(i64::from).ok_or_else(|| Error::Parse(format!("bad digit {c:?}"))))
            .collect()
    }
}

impl FromStr for EventuallyPeriodicWord {
    type Err = Error;

    /// Accepts `"11"`, `"1(1100)"`, `"-1,1,1"` or `"1,(-1)"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.find('(') {
            None => Ok(Self::finite(parse_digits(s)?)),
            Some(i) => {
                let rest = s[i + 1..].strip_suffix(')').ok_or_else(|| Error::Parse(format!("unclosed period in {s:?}")))?;
                let pre = parse_digits(s[..i].trim_end_matches(','))?;
                let per = parse_digits(rest)?;
                if per.is_empty() {
                    return Err(Error::Parse("empty period".into()));
                }
                Ok(Self::new(pre, per))
            }
        }
    }
}

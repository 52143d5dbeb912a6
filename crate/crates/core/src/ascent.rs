//! Ascent sequences, word patterns and the run-length structure used by the
//! bijection.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of positions `i` with `seq[i] < seq[i + 1]`.
pub fn asc(seq: &[usize]) -> usize {
    seq.windows(2).filter(|w| w[0] < w[1]).count()
}

/// `seq` starts with 0 and every later entry is at most one more than the
/// number of ascents strictly before it.
pub fn is_ascent_sequence(seq: &[usize]) -> bool {
    ascent_violation(seq).is_none()
}

fn ascent_violation(seq: &[usize]) -> Option<String> {
    match seq.first() {
        None => return Some("empty sequence".into()),
        Some(&x) if x != 0 => return Some(format!("x_1 = {x}, expected 0")),
        _ => {}
    }
    let mut ascents = 0;
    for i in 1..seq.len() {
        if seq[i] > ascents + 1 {
            return Some(format!(
                "x_{} = {} exceeds asc(prefix) + 1 = {}",
                i + 1,
                seq[i],
                ascents + 1
            ));
        }
        if seq[i - 1] < seq[i] {
            ascents += 1;
        }
    }
    None
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AscentSequence(Vec<usize>);

/// One maximal run `value^multiplicity` of equal entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Run {
    pub value: usize,
    pub multiplicity: usize,
}

impl From<(usize, usize)> for Run {
    fn from((value, multiplicity): (usize, usize)) -> Self {
        Run { value, multiplicity }
    }
}

impl From<Run> for (usize, usize) {
    fn from(r: Run) -> Self {
        (r.value, r.multiplicity)
    }
}

impl AscentSequence {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        match ascent_violation(&entries) {
            None => Ok(Self(entries)),
            Some(reason) => Err(Error::InvalidAscentSequence { entries, reason }),
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false: ascent sequences have length at least one.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry `x_i`, 1-based.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn ascents(&self) -> usize {
        asc(&self.0)
    }

    /// No two consecutive entries are equal.
    pub fn is_primitive(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    pub fn contains_pattern(&self, pattern: &Pattern) -> Option<Vec<usize>> {
        contains_pattern(&self.0, pattern)
    }

    pub fn avoids(&self, pattern: &Pattern) -> bool {
        self.contains_pattern(pattern).is_none()
    }

    pub fn run_length_decomposition(&self) -> Vec<Run> {
        let mut runs: Vec<Run> = Vec::new();
        for &x in &self.0 {
            match runs.last_mut() {
                Some(r) if r.value == x => r.multiplicity += 1,
                _ => runs.push(Run {
                    value: x,
                    multiplicity: 1,
                }),
            }
        }
        runs
    }

    /// The value track of the run-length decomposition. It is again an
    /// ascent sequence: merging equal neighbours removes no ascent.
    pub fn primitive_contraction(&self) -> AscentSequence {
        AscentSequence(self.run_length_decomposition().iter().map(|r| r.value).collect())
    }

    /// Repeats each entry of `self` by the given multiplicities.
    pub fn inflate(&self, multiplicities: &[usize]) -> Result<AscentSequence> {
        if multiplicities.len() != self.len() || multiplicities.contains(&0) {
            return Err(Error::Domain(format!(
                "need {} positive multiplicities, got {multiplicities:?}",
                self.len()
            )));
        }
        let entries = self
            .0
            .iter()
            .zip(multiplicities)
            .flat_map(|(&x, &c)| std::iter::repeat_n(x, c))
            .collect();
        AscentSequence::new(entries)
    }
}

impl TryFrom<Vec<usize>> for AscentSequence {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<AscentSequence> for Vec<usize> {
    fn from(s: AscentSequence) -> Self {
        s.0
    }
}

fn write_compact(f: &mut fmt::Formatter<'_>, entries: &[usize]) -> fmt::Result {
    if entries.iter().all(|&x| x <= 9) {
        for x in entries {
            write!(f, "{x}")?;
        }
        Ok(())
    } else {
        let body: Vec<String> = entries.iter().map(ToString::to_string).collect();
        f.write_str(&body.join(","))
    }
}

fn parse_compact(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.starts_with('[') {
        return s
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
            .collect();
    }
    if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
            .collect()
    } else if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) {
        Ok(s.bytes().map(|b| (b - b'0') as usize).collect())
    } else {
        Err(Error::Parse(format!("cannot read sequence {s:?}")))
    }
}

/// Concatenated digits when all entries are at most 9, comma-separated
/// otherwise.
impl fmt::Display for AscentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_compact(f, &self.0)
    }
}

impl fmt::Debug for AscentSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AscentSequence({self})")
    }
}

/// Accepts `0120`, `0,1,10` or a JSON array.
impl FromStr for AscentSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_compact(s)?)
    }
}

/// A word over `{0, …, m}` in which every letter occurs.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Pattern(Vec<usize>);

impl Pattern {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        let max = letters.iter().copied().max();
        let complete = match max {
            None => false,
            Some(m) => (0..=m).all(|v| letters.contains(&v)),
        };
        if complete {
            Ok(Self(letters))
        } else {
            Err(Error::InvalidPattern { letters })
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<usize>> for Pattern {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Pattern> for Vec<usize> {
    fn from(p: Pattern) -> Self {
        p.0
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_compact(f, &self.0)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_compact(s)?)
    }
}

/// Finds the lexicographically first occurrence of `pattern` in `seq`.
///
/// An occurrence is a subsequence whose entries compare pairwise (`<`, `=`,
/// `>`) exactly as the pattern letters do. Returned indices are 1-based.
pub fn contains_pattern(seq: &[usize], pattern: &Pattern) -> Option<Vec<usize>> {
    let tau = pattern.letters();
    if tau.len() > seq.len() {
        return None;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(tau.len());
    if extend_occurrence(seq, tau, &mut chosen) {
        Some(chosen.into_iter().map(|i| i + 1).collect())
    } else {
        None
    }
}

fn extend_occurrence(seq: &[usize], tau: &[usize], chosen: &mut Vec<usize>) -> bool {
    let t = chosen.len();
    if t == tau.len() {
        return true;
    }
    let start = chosen.last().map_or(0, |&p| p + 1);
    // leave room for the remaining letters
    let end = seq.len() - (tau.len() - t - 1);
    for pos in start..end {
        let fits = chosen
            .iter()
            .zip(tau)
            .all(|(&q, &letter)| seq[q].cmp(&seq[pos]) == letter.cmp(&tau[t]));
        if fits {
            chosen.push(pos);
            if extend_occurrence(seq, tau, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Lexicographic enumeration of all ascent sequences of a fixed length,
/// optionally restricted to those extending a given prefix.
#[derive(Clone, Debug)]
pub struct AscentSequences {
    current: Vec<usize>,
    /// `ascents[i]` is `asc(current[..=i])`.
    ascents: Vec<usize>,
    fixed: usize,
    done: bool,
}

impl AscentSequences {
    pub fn new(length: usize) -> Self {
        Self::with_prefix(&[0], length).expect("the prefix [0] is always valid")
    }

    /// Enumerates the sequences of `length` whose first entries equal
    /// `prefix`. Disjoint prefixes give disjoint shards.
    pub fn with_prefix(prefix: &[usize], length: usize) -> Result<Self> {
        if length == 0 {
            return Ok(Self {
                current: Vec::new(),
                ascents: Vec::new(),
                fixed: 0,
                done: true,
            });
        }
        let prefix_seq = AscentSequence::new(prefix.to_vec())?;
        if prefix.len() > length {
            return Err(Error::Domain(format!(
                "prefix {prefix_seq} longer than requested length {length}"
            )));
        }
        let mut current = prefix.to_vec();
        current.resize(length, 0);
        let mut ascents = Vec::with_capacity(length);
        let mut a = 0;
        for i in 0..length {
            if i > 0 && current[i - 1] < current[i] {
                a += 1;
            }
            ascents.push(a);
        }
        Ok(Self {
            current,
            ascents,
            fixed: prefix.len(),
            done: false,
        })
    }

    fn advance(&mut self) -> bool {
        let n = self.current.len();
        let mut i = n;
        while i > self.fixed.max(1) {
            i -= 1;
            if self.current[i] < self.ascents[i - 1] + 1 {
                self.current[i] += 1;
                self.ascents[i] = self.ascents[i - 1] + usize::from(self.current[i - 1] < self.current[i]);
                for j in i + 1..n {
                    self.current[j] = 0;
                    self.ascents[j] = self.ascents[j - 1];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for AscentSequences {
    type Item = AscentSequence;

    fn next(&mut self) -> Option<AscentSequence> {
        if self.done {
            return None;
        }
        let out = AscentSequence(self.current.clone());
        self.done = !self.advance();
        Some(out)
    }
}

pub fn enumerate_ascent_sequences(length: usize) -> AscentSequences {
    AscentSequences::new(length)
}

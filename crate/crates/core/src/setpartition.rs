//! Set partitions of `[n]`, their arc diagrams (linear representation) and
//! the crossing/nesting statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set partition of `{1, …, n}` in canonical form: blocks sorted
/// increasingly, blocks ordered by their minimum.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Canonicalises and validates `blocks` as a partition of `[n]`, where
    /// `n` is the total number of elements.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidSetPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x == 0 || x > n {
                    return Err(Error::InvalidSetPartition(format!("element {x} outside [1, {n}]")));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidSetPartition(format!("element {x} repeated")));
                }
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    /// Decodes a restricted growth string `w` (`w[0] = 0`, each entry at most
    /// one more than the maximum before it): element `i + 1` lies in block
    /// `w[i]`.
    pub fn from_restricted_growth(word: &[usize]) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &b) in word.iter().enumerate() {
            match b.cmp(&blocks.len()) {
                std::cmp::Ordering::Less => blocks[b].push(i + 1),
                std::cmp::Ordering::Equal => blocks.push(vec![i + 1]),
                std::cmp::Ordering::Greater => {
                    return Err(Error::InvalidSetPartition(format!(
                        "{word:?} is not a restricted growth string"
                    )))
                }
            }
        }
        Ok(Self { n: word.len(), blocks })
    }

    pub fn restricted_growth_string(&self) -> Vec<usize> {
        let mut word = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                word[x - 1] = b;
            }
        }
        word
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// The linear representation: one arc between consecutive elements of
    /// each block.
    pub fn to_arcs(&self) -> ArcDiagram {
        let mut arcs: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])))
            .collect();
        arcs.sort_unstable();
        ArcDiagram { n: self.n, arcs }
    }

    /// Inverse of [`SetPartition::to_arcs`]: follow each chain of arcs from
    /// its left end; unconnected vertices become singletons.
    pub fn from_arcs(diagram: &ArcDiagram) -> Result<Self> {
        let ArcDiagram { n, arcs } = diagram;
        let mut next = vec![0usize; n + 1];
        let mut has_pred = vec![false; n + 1];
        for &(i, j) in arcs {
            if !(1 <= i && i < j && j <= *n) {
                return Err(Error::InvalidArcDiagram(format!("arc ({i},{j}) out of range")));
            }
            if next[i] != 0 || has_pred[j] {
                return Err(Error::InvalidArcDiagram(format!("arc ({i},{j}) reuses an endpoint")));
            }
            next[i] = j;
            has_pred[j] = true;
        }
        let blocks = (1..=*n)
            .filter(|&v| !has_pred[v])
            .map(|start| {
                let mut block = vec![start];
                let mut v = start;
                while next[v] != 0 {
                    v = next[v];
                    block.push(v);
                }
                block
            })
            .collect();
        Ok(Self { n: *n, blocks })
    }

    /// Largest `k` such that `k` arcs pairwise cross.
    pub fn max_crossing(&self) -> usize {
        self.to_arcs().max_crossing()
    }

    /// Largest `k` such that `k` arcs are pairwise nested.
    pub fn max_nesting(&self) -> usize {
        self.to_arcs().max_nesting()
    }
}

impl TryFrom<Vec<Vec<usize>>> for SetPartition {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(blocks)
    }
}

impl From<SetPartition> for Vec<Vec<usize>> {
    fn from(p: SetPartition) -> Self {
        p.blocks
    }
}

/// `{{1,2,3},{4}}`
impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let items: Vec<String> = block.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

/// Accepts the brace form `{{1,2},{3}}` and JSON `[[1,2],[3]]`.
impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_prefix(['{', '['])
            .and_then(|t| t.strip_suffix(['}', ']']))
            .ok_or_else(|| Error::Parse(format!("cannot read set partition {s:?}")))?;
        let mut blocks = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches([',', ' ']);
            if rest.is_empty() {
                break;
            }
            let close = match rest.chars().next() {
                Some('{') => '}',
                Some('[') => ']',
                _ => return Err(Error::Parse(format!("expected a block at {rest:?}"))),
            };
            let end = rest
                .find(close)
                .ok_or_else(|| Error::Parse(format!("unterminated block in {s:?}")))?;
            let block = rest[1..end]
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad element {t:?}"))))
                .collect::<Result<Vec<usize>>>()?;
            blocks.push(block);
            rest = &rest[end + 1..];
        }
        Self::new(blocks)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawArcDiagram")]
pub struct ArcDiagram {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawArcDiagram {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl TryFrom<RawArcDiagram> for ArcDiagram {
    type Error = Error;

    fn try_from(raw: RawArcDiagram) -> Result<Self> {
        ArcDiagram::new(raw.n, raw.arcs)
    }
}

impl ArcDiagram {
    /// Arcs `(i, j)` with `1 <= i < j <= n`, no two sharing a left endpoint
    /// or a right endpoint.
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        let mut left = vec![false; n + 1];
        let mut right = vec![false; n + 1];
        for &(i, j) in &arcs {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::InvalidArcDiagram(format!("arc ({i},{j}) out of range")));
            }
            if std::mem::replace(&mut left[i], true) {
                return Err(Error::InvalidArcDiagram(format!("two arcs start at {i}")));
            }
            if std::mem::replace(&mut right[j], true) {
                return Err(Error::InvalidArcDiagram(format!("two arcs end at {j}")));
            }
        }
        arcs.sort_unstable();
        Ok(Self { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs sorted by left endpoint.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Longest chain of strictly nested arcs. Arcs are sorted by left
    /// endpoint, so an arc can only sit inside an earlier one.
    pub fn max_nesting(&self) -> usize {
        let arcs = &self.arcs;
        let mut best = vec![1usize; arcs.len()];
        for b in 0..arcs.len() {
            for a in 0..b {
                if arcs[a].0 < arcs[b].0 && arcs[b].1 < arcs[a].1 {
                    best[b] = best[b].max(best[a] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Largest set of pairwise crossing arcs. With left endpoints sorted,
    /// pairwise crossing means every left end precedes every right end and
    /// the right ends increase; so fix the first arc and run an increasing
    /// chain DP over the arcs that start inside it and end beyond it.
    pub fn max_crossing(&self) -> usize {
        let arcs = &self.arcs;
        let mut overall = 0;
        for (f, &(i1, j1)) in arcs.iter().enumerate() {
            let tail: Vec<(usize, usize)> = arcs[f + 1..]
                .iter()
                .copied()
                .filter(|&(i, j)| i1 < i && i < j1 && j1 < j)
                .collect();
            let mut best = vec![1usize; tail.len()];
            for b in 0..tail.len() {
                for a in 0..b {
                    if tail[a].0 < tail[b].0 && tail[a].1 < tail[b].1 {
                        best[b] = best[b].max(best[a] + 1);
                    }
                }
            }
            overall = overall.max(1 + best.into_iter().max().unwrap_or(0));
        }
        overall
    }
}

/// Restricted-growth-string enumeration of all partitions of `[n]`, in
/// lexicographic order of the strings.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    word: Vec<usize>,
    /// `maxima[i]` is the largest entry of `word[..=i]`.
    maxima: Vec<usize>,
    fixed: usize,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        Self::with_prefix(&[0], n).expect("the prefix [0] is always valid")
    }

    /// Partitions whose restricted growth string starts with `prefix`.
    pub fn with_prefix(prefix: &[usize], n: usize) -> Result<Self> {
        if n == 0 {
            return Ok(Self {
                word: Vec::new(),
                maxima: Vec::new(),
                fixed: 0,
                done: true,
            });
        }
        SetPartition::from_restricted_growth(prefix)?;
        if prefix.is_empty() || prefix.len() > n {
            return Err(Error::Domain(format!("bad prefix {prefix:?} for n = {n}")));
        }
        let mut word = prefix.to_vec();
        word.resize(n, 0);
        let mut maxima = Vec::with_capacity(n);
        let mut m = 0;
        for &w in &word {
            m = m.max(w);
            maxima.push(m);
        }
        Ok(Self {
            word,
            maxima,
            fixed: prefix.len(),
            done: false,
        })
    }

    fn advance(&mut self) -> bool {
        let n = self.word.len();
        let mut i = n;
        while i > self.fixed.max(1) {
            i -= 1;
            if self.word[i] <= self.maxima[i - 1] {
                self.word[i] += 1;
                self.maxima[i] = self.maxima[i - 1].max(self.word[i]);
                for j in i + 1..n {
                    self.word[j] = 0;
                    self.maxima[j] = self.maxima[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition::from_restricted_growth(&self.word).expect("valid growth string");
        self.done = !self.advance();
        Some(out)
    }
}

pub fn enumerate_set_partitions(n: usize) -> SetPartitions {
    SetPartitions::new(n)
}

//! Integer partitions: the labels attached to growth-diagram corners.
//!
//! A partition is stored in canonical form, weakly decreasing with no
//! trailing zeros, so structural equality is partition equality. All
//! indices exposed here are 1-based; `part(i)` returns 0 past the end,
//! matching the usual zero-padded reading of a partition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from weakly decreasing parts. Trailing zeros are
    /// dropped; any other zero or increase is rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition { parts });
        }
        Ok(Self { parts })
    }

    /// Builds from parts already known to be canonical.
    pub(crate) fn from_canonical(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The `i`-th part, 1-based; zero beyond the stored parts.
    pub fn part(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Total number of cells.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of columns of the Ferrers diagram, i.e. the first part.
    pub fn column_count(&self) -> usize {
        self.part(1)
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.column_count();
        let parts = (1..=cols)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Self { parts }
    }

    /// True iff the diagram of `inner` fits inside the diagram of `self`.
    pub fn contains(&self, inner: &IntegerPartition) -> bool {
        inner.len() <= self.len() && inner.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// The unique partition obtained by adding a horizontal strip of exactly
    /// two cells without exceeding two columns: both column lengths grow by
    /// one. `None` when `self` already has more than two columns.
    pub fn two_cell_strip_extension(&self) -> Option<Self> {
        if self.column_count() > 2 {
            return None;
        }
        let conj = self.conjugate();
        let first = conj.part(1) + 1;
        let second = conj.part(2) + 1;
        Some(Self::from_canonical(vec![first, second]).conjugate())
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Self> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<IntegerPartition>) {
            if rest == 0 {
                out.push(IntegerPartition::from_canonical(cur.clone()));
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of size at most `n`, grouped by size.
    pub fn all_up_to(n: usize) -> Vec<Self> {
        (0..=n).flat_map(Self::all_of_size).collect()
    }
}

/// `larger / smaller` is a horizontal strip: no two added cells share a
/// column. Equal partitions form the empty strip.
pub fn is_horizontal_strip(smaller: &IntegerPartition, larger: &IntegerPartition) -> bool {
    larger.contains(smaller) && (1..=larger.len()).all(|i| larger.part(i + 1) <= smaller.part(i))
}

/// `larger / smaller` is a vertical strip: no two added cells share a row.
pub fn is_vertical_strip(smaller: &IntegerPartition, larger: &IntegerPartition) -> bool {
    larger.contains(smaller) && (1..=larger.len()).all(|i| larger.part(i) - smaller.part(i) <= 1)
}

/// Cells of `larger` not in `smaller`, as 1-based `(row, column)` pairs in
/// row-major order.
pub fn diff_cells(smaller: &IntegerPartition, larger: &IntegerPartition) -> Result<Vec<(usize, usize)>> {
    if !larger.contains(smaller) {
        return Err(Error::NotContained {
            outer: larger.to_string(),
            inner: smaller.to_string(),
        });
    }
    Ok((1..=larger.len())
        .flat_map(|i| (smaller.part(i) + 1..=larger.part(i)).map(move |j| (i, j)))
        .collect())
}

impl TryFrom<Vec<usize>> for IntegerPartition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<IntegerPartition> for Vec<usize> {
    fn from(p: IntegerPartition) -> Self {
        p.parts
    }
}

/// `∅` for the empty partition, concatenated digits (`21`, `111`) when every
/// part is a single digit, `(10,2)` otherwise.
impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        if self.parts.iter().all(|&p| p <= 9) {
            for p in &self.parts {
                write!(f, "{p}")?;
            }
            Ok(())
        } else {
            let body: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(","))
        }
    }
}

impl fmt::Debug for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerPartition({self})")
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad partition part {t:?}")))
        };
        let parts = match s {
            "" | "∅" | "0" | "e" | "[]" | "()" => Vec::new(),
            _ if (s.starts_with('(') && s.ends_with(')')) || (s.starts_with('[') && s.ends_with(']')) => s
                [1..s.len() - 1]
                .split(',')
                .map(parse_num)
                .collect::<Result<Vec<_>>>()?,
            _ if s.chars().all(|c| c.is_ascii_digit()) => s.bytes().map(|b| (b - b'0') as usize).collect(),
            _ => return Err(Error::Parse(format!("cannot read partition {s:?}"))),
        };
        Self::new(parts)
    }
}

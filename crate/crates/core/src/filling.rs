//! Ferrers shapes in French notation, their 01-fillings, NE/SE chains, the
//! triangular shapes Δₙ and the filling ↔ set partition correspondence.
//!
//! Coordinates: a cell is `(row, col)`, 1-based, rows counted from the top
//! of the shape and columns from the left. Rows get longer going down. A
//! lattice corner is `Corner { row, col }` where `row` indexes horizontal
//! lattice lines from the top edge (0) to the bottom edge (height) and `col`
//! indexes vertical lines from the left edge (0). Cell `(r, c)` therefore has
//! top-right corner `(r - 1, c)` and bottom-left corner `(r, c - 1)`.
//!
//! Two row conventions meet here. In Δₙ the `r`-th row from the top has `r`
//! cells, so an a-vector entry `a_i` lives in row `i`. The set-partition
//! correspondence instead numbers the row with `j - 1` cells as `j`; use
//! [`arc_to_cell`] and [`cell_to_arc`] to move between the two.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::setpartition::{ArcDiagram, SetPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    R,
    D,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Step::R => "R",
            Step::D => "D",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub row: usize,
    pub col: usize,
}

impl Corner {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

/// Row lengths stored top to bottom; JSON uses bottom-up order.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct FerrersShape {
    rows: Vec<usize>,
}

impl FerrersShape {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(rows_top_down: Vec<usize>) -> Result<Self> {
        if rows_top_down.contains(&0) || rows_top_down.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidShape { rows: rows_top_down });
        }
        Ok(Self { rows: rows_top_down })
    }

    pub fn from_bottom_up(mut rows: Vec<usize>) -> Result<Self> {
        rows.reverse();
        Self::new(rows)
    }

    /// Δₙ: rows of length 1, 2, …, n from the top.
    pub fn staircase(n: usize) -> Self {
        Self {
            rows: (1..=n).collect(),
        }
    }

    /// `Some(n)` iff the shape is Δₙ.
    pub fn staircase_size(&self) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, &l)| l == i + 1)
            .then_some(self.rows.len())
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// Length of the bottom row.
    pub fn width(&self) -> usize {
        self.rows.last().copied().unwrap_or(0)
    }

    /// Length of row `r` (1-based from the top); 0 outside the shape.
    pub fn row_len(&self, r: usize) -> usize {
        if r == 0 {
            0
        } else {
            self.rows.get(r - 1).copied().unwrap_or(0)
        }
    }

    pub fn rows_top_down(&self) -> &[usize] {
        &self.rows
    }

    pub fn rows_bottom_up(&self) -> Vec<usize> {
        self.rows.iter().rev().copied().collect()
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        col >= 1 && col <= self.row_len(row)
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (1..=l).map(move |c| (i + 1, c)))
    }

    /// Number of vertical lattice lines minus one along horizontal line
    /// `line`, i.e. the largest column index of a corner on that line.
    pub fn line_width(&self, line: usize) -> usize {
        if line < self.height() {
            self.rows[line]
        } else {
            self.width()
        }
    }

    pub fn is_corner(&self, corner: Corner) -> bool {
        corner.row <= self.height() && corner.col <= self.line_width(corner.row)
    }

    /// The D/R word of the right/up boundary, read from the top-left to the
    /// bottom-right corner.
    pub fn boundary_word(&self) -> Vec<Step> {
        let mut word = Vec::with_capacity(self.width() + self.height());
        let mut prev = 0;
        for &l in &self.rows {
            word.extend(std::iter::repeat_n(Step::R, l - prev));
            word.push(Step::D);
            prev = l;
        }
        word
    }

    pub fn boundary_word_string(&self) -> String {
        self.boundary_word().iter().map(ToString::to_string).collect()
    }

    pub fn from_boundary_word(word: &[Step]) -> Result<Self> {
        let bad = || Error::InvalidBoundaryWord(word.iter().map(ToString::to_string).collect());
        let mut rows = Vec::new();
        let mut width = 0;
        for step in word {
            match step {
                Step::R => width += 1,
                Step::D if width == 0 => return Err(bad()),
                Step::D => rows.push(width),
            }
        }
        if rows.last().copied().unwrap_or(0) != width {
            return Err(bad());
        }
        Ok(Self { rows })
    }

    /// Corners along the boundary in the order of [`FerrersShape::boundary_word`],
    /// one more than the word length.
    pub fn boundary_corners(&self) -> Vec<Corner> {
        let mut at = Corner::new(0, 0);
        let mut out = vec![at];
        for step in self.boundary_word() {
            match step {
                Step::R => at.col += 1,
                Step::D => at.row += 1,
            }
            out.push(at);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for FerrersShape {
    type Error = Error;

    fn try_from(bottom_up: Vec<usize>) -> Result<Self> {
        Self::from_bottom_up(bottom_up)
    }
}

impl From<FerrersShape> for Vec<usize> {
    fn from(s: FerrersShape) -> Self {
        s.rows_bottom_up()
    }
}

impl fmt::Debug for FerrersShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FerrersShape(bottom-up {:?})", self.rows_bottom_up())
    }
}

impl FromStr for FerrersShape {
    type Err = Error;

    /// Either a D/R word (`RRDDRDRD`) or bottom-up row lengths (`4,3,2,2`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.chars().all(|c| matches!(c, 'R' | 'D' | 'r' | 'd')) {
            let word: Vec<Step> = s
                .chars()
                .map(|c| if c.eq_ignore_ascii_case(&'R') { Step::R } else { Step::D })
                .collect();
            return Self::from_boundary_word(&word);
        }
        let rows = s
            .trim_matches(['[', ']'])
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad row length {t:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        Self::from_bottom_up(rows)
    }
}

/// A 01-filling: the shape plus the set of cells holding a 1.
#[derive(Clone, PartialEq, Eq, Hash, Deserialize)]
#[serde(try_from = "RawFilling")]
pub struct Filling01 {
    shape: FerrersShape,
    ones: BTreeSet<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawFilling {
    shape: FerrersShape,
    ones: Vec<(usize, usize)>,
}

impl TryFrom<RawFilling> for Filling01 {
    type Error = Error;

    fn try_from(raw: RawFilling) -> Result<Self> {
        Filling01::new(raw.shape, raw.ones)
    }
}

impl Filling01 {
    pub fn new(shape: FerrersShape, ones: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let ones: BTreeSet<_> = ones.into_iter().collect();
        if let Some(&(row, col)) = ones.iter().find(|&&(r, c)| !shape.contains_cell(r, c)) {
            return Err(Error::CellOutsideShape { row, col });
        }
        Ok(Self { shape, ones })
    }

    pub fn empty(shape: FerrersShape) -> Self {
        Self {
            shape,
            ones: BTreeSet::new(),
        }
    }

    pub fn shape(&self) -> &FerrersShape {
        &self.shape
    }

    /// 1-cells in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.ones.iter().copied()
    }

    pub fn count_ones(&self) -> usize {
        self.ones.len()
    }

    pub fn is_one(&self, row: usize, col: usize) -> bool {
        self.ones.contains(&(row, col))
    }

    pub fn ones_in_row(&self, row: usize) -> usize {
        self.ones.iter().filter(|c| c.0 == row).count()
    }

    pub fn ones_in_col(&self, col: usize) -> usize {
        self.ones.iter().filter(|c| c.1 == col).count()
    }

    /// At most one 1 in every row and every column.
    pub fn is_partial_permutation(&self) -> bool {
        let rows: BTreeSet<_> = self.ones.iter().map(|c| c.0).collect();
        let cols: BTreeSet<_> = self.ones.iter().map(|c| c.1).collect();
        rows.len() == self.ones.len() && cols.len() == self.ones.len()
    }

    fn ones_below_left(&self, corner: Corner) -> Result<Vec<(usize, usize)>> {
        if !self.shape.is_corner(corner) {
            return Err(Error::InvalidCorner {
                row: corner.row,
                col: corner.col,
            });
        }
        Ok(self
            .ones()
            .filter(|&(r, c)| r > corner.row && c <= corner.col)
            .collect())
    }

    /// Longest NE-chain (each 1 strictly above and weakly right of the
    /// previous) among the cells left of and below `corner`.
    pub fn longest_ne_chain(&self, corner: Corner) -> Result<usize> {
        Ok(longest_chain(
            &self.ones_below_left(corner)?,
            ChainKind::NorthEast,
            &self.shape,
        ))
    }

    /// Longest SE-chain (each 1 weakly below and strictly right of the
    /// previous) among the cells left of and below `corner`.
    pub fn longest_se_chain(&self, corner: Corner) -> Result<usize> {
        Ok(longest_chain(
            &self.ones_below_left(corner)?,
            ChainKind::SouthEast,
            &self.shape,
        ))
    }

    /// Longest NE-chain anywhere in the filling.
    pub fn longest_ne_chain_in_shape(&self) -> usize {
        let cells: Vec<_> = self.ones().collect();
        longest_chain(&cells, ChainKind::NorthEast, &self.shape)
    }

    /// Longest SE-chain whose bounding rectangle lies inside the shape.
    pub fn longest_se_chain_in_shape(&self) -> usize {
        let cells: Vec<_> = self.ones().collect();
        longest_chain(&cells, ChainKind::SouthEast, &self.shape)
    }

    /// French-notation drawing, top row first, `•` for a 1.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in 1..=self.shape.height() {
            for c in 1..=self.shape.row_len(r) {
                out.push_str(if self.is_one(r, c) { "[•]" } else { "[ ]" });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Filling01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Filling01")
            .field("shape", &self.shape)
            .field("ones", &self.ones)
            .finish()
    }
}

impl Serialize for Filling01 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Filling01", 2)?;
        s.serialize_field("shape", &self.shape)?;
        s.serialize_field("ones", &self.ones.iter().collect::<Vec<_>>())?;
        s.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// Each cell strictly above and weakly right of its predecessor.
    NorthEast,
    /// Each cell weakly below and strictly right of its predecessor.
    SouthEast,
}

impl ChainKind {
    pub fn follows(self, prev: (usize, usize), next: (usize, usize)) -> bool {
        match self {
            ChainKind::NorthEast => next.0 < prev.0 && next.1 >= prev.1,
            ChainKind::SouthEast => next.0 >= prev.0 && next.1 > prev.1,
        }
    }
}

/// Top-right cell of the rectangle spanned by the first and last cell of a
/// chain. A chain only counts when this cell is in the shape; for NE-chains
/// it is the last cell itself, so the condition only bites for SE-chains in
/// non-rectangular shapes.
pub fn spanning_corner_cell(first: (usize, usize), last: (usize, usize)) -> (usize, usize) {
    (first.0.min(last.0), first.1.max(last.1))
}

/// Longest chain DP. For each possible first cell, keep the cells whose
/// spanned rectangle with it fits in the shape and run the O(m²) chain DP
/// over them in (column, row) order.
fn longest_chain(cells: &[(usize, usize)], kind: ChainKind, shape: &FerrersShape) -> usize {
    let mut sorted = cells.to_vec();
    match kind {
        ChainKind::NorthEast => sorted.sort_by_key(|&(r, c)| (c, std::cmp::Reverse(r))),
        ChainKind::SouthEast => sorted.sort_by_key(|&(r, c)| (c, r)),
    }
    let mut best = 0;
    let mut dp = vec![0usize; sorted.len()];
    for (s, &start) in sorted.iter().enumerate() {
        dp[s] = 1;
        for p in s + 1..sorted.len() {
            let cell = sorted[p];
            let (tr, tc) = spanning_corner_cell(start, cell);
            dp[p] = 0;
            if !kind.follows(start, cell) || !shape.contains_cell(tr, tc) {
                continue;
            }
            dp[p] = (s..p)
                .filter(|&q| dp[q] > 0 && kind.follows(sorted[q], cell))
                .map(|q| dp[q] + 1)
                .max()
                .unwrap_or(0);
        }
        best = best.max(dp[s..].iter().copied().max().unwrap_or(0));
    }
    best
}

/// A filling of Δₙ with exactly one 1 per row, stored as the column `a_i` of
/// the 1 in the row with `i` cells.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTriangular", into = "RawTriangular")]
pub struct TriangularFilling {
    a: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawTriangular {
    n: usize,
    a: Vec<usize>,
}

impl TryFrom<RawTriangular> for TriangularFilling {
    type Error = Error;

    fn try_from(raw: RawTriangular) -> Result<Self> {
        if raw.n != raw.a.len() {
            return Err(Error::InvalidTriangularFilling { a: raw.a });
        }
        TriangularFilling::new(raw.a)
    }
}

impl From<TriangularFilling> for RawTriangular {
    fn from(t: TriangularFilling) -> Self {
        RawTriangular { n: t.a.len(), a: t.a }
    }
}

impl TriangularFilling {
    pub fn new(a: Vec<usize>) -> Result<Self> {
        if a.iter().enumerate().any(|(i, &ai)| ai < 1 || ai > i + 1) {
            return Err(Error::InvalidTriangularFilling { a });
        }
        Ok(Self { a })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    /// `a_i`, 1-based.
    pub fn get(&self, i: usize) -> usize {
        self.a[i - 1]
    }

    /// Membership in 𝒩(Δₙ): no NE-chain of length 3, i.e. no `i < j < k`
    /// with `a_i >= a_j >= a_k`.
    pub fn is_in_n_delta(&self) -> bool {
        let a = &self.a;
        !(0..a.len()).any(|j| a[..j].iter().any(|&x| x >= a[j]) && a[j + 1..].iter().any(|&x| x <= a[j]))
    }

    pub fn to_filling(&self) -> Filling01 {
        let ones = self.a.iter().enumerate().map(|(i, &col)| (i + 1, col));
        Filling01::new(FerrersShape::staircase(self.n()), ones).expect("1 <= a_i <= i")
    }

    /// Defined exactly on fillings of Δₙ with one 1 in every row.
    pub fn from_filling(f: &Filling01) -> Result<Self> {
        let n = f.shape().staircase_size().ok_or(Error::NotTriangular)?;
        let mut a = vec![0; n];
        for (r, c) in f.ones() {
            if a[r - 1] != 0 {
                return Err(Error::RowNotSingle(r));
            }
            a[r - 1] = c;
        }
        if let Some(i) = a.iter().position(|&x| x == 0) {
            return Err(Error::RowNotSingle(i + 1));
        }
        Self::new(a)
    }

    /// All `n!` one-1-per-row fillings of Δₙ in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = vec![Vec::new()];
        for i in 1..=n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    (1..=i).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|a| Self { a }).collect()
    }
}

impl fmt::Display for TriangularFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.a.iter().map(ToString::to_string).collect();
        f.write_str(&items.join(","))
    }
}

impl fmt::Debug for TriangularFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriangularFilling({self})")
    }
}

/// Accepts `1,2,3,1`, a JSON array or the JSON object `{"n":..,"a":[..]}`.
impl FromStr for TriangularFilling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s.trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        let a = body
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
            .collect::<Result<Vec<usize>>>()?;
        Self::new(a)
    }
}

/// Cell holding the 1 for arc `(i, j)`: column `i` of the row with `j - 1`
/// cells.
pub fn arc_to_cell((i, j): (usize, usize)) -> (usize, usize) {
    (j - 1, i)
}

pub fn cell_to_arc((row, col): (usize, usize)) -> (usize, usize) {
    (col, row + 1)
}

/// The filling of Δ_{n−1} with a 1 for every arc of the linear
/// representation of `p`.
pub fn partition_to_filling(p: &SetPartition) -> Filling01 {
    let shape = FerrersShape::staircase(p.n().saturating_sub(1));
    let ones = p
        .to_arcs()
        .arcs()
        .iter()
        .map(|&arc| arc_to_cell(arc))
        .collect::<Vec<_>>();
    Filling01::new(shape, ones).expect("arc cells lie in the staircase")
}

/// Inverse of [`partition_to_filling`]; the filling must be on a staircase
/// shape with at most one 1 per row and column.
pub fn filling_to_partition(f: &Filling01) -> Result<SetPartition> {
    let n = f.shape().staircase_size().ok_or(Error::NotTriangular)?;
    let arcs: Vec<_> = f.ones().map(cell_to_arc).collect();
    let diagram = ArcDiagram::new(n + 1, arcs).map_err(|_| {
        Error::DoubledLine(
            if f.ones().map(|c| c.0).collect::<BTreeSet<_>>().len() < f.count_ones() {
                "a row".into()
            } else {
                "a column".into()
            },
        )
    })?;
    SetPartition::from_arcs(&diagram)
}

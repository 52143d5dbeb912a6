//! Growth diagrams: the forward and backward local rules, propagation over a
//! whole Ferrers shape, and the classes of boundary sequences they produce.
//!
//! Cell `(r, c)` has its four corners labelled
//!
//! ```text
//!   υ = (r-1, c-1)   λ = (r-1, c)
//!   ρ = (r,   c-1)   μ = (r,   c)
//! ```
//!
//! in the corner coordinates of [`crate::filling`]. Moving right adds a
//! horizontal strip, moving up adds a vertical strip.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filling::{Corner, FerrersShape, Filling01, Step};
use crate::partition::{is_horizontal_strip, is_vertical_strip, IntegerPartition};

/// Forward local rule: the label λ of the top-right corner of a cell with
/// entry `m` whose other corners carry ρ, μ and υ.
pub fn forward_cell(
    rho: &IntegerPartition,
    mu: &IntegerPartition,
    upsilon: &IntegerPartition,
    m: u8,
) -> Result<IntegerPartition> {
    if m > 1 {
        return Err(Error::LocalRule(format!("cell entry {m} is not 0 or 1")));
    }
    if !is_horizontal_strip(rho, mu) {
        return Err(Error::LocalRule(format!(
            "μ = {mu} is not ρ = {rho} plus a horizontal strip"
        )));
    }
    if !is_vertical_strip(rho, upsilon) {
        return Err(Error::LocalRule(format!(
            "υ = {upsilon} is not ρ = {rho} plus a vertical strip"
        )));
    }
    forward_unchecked(rho, mu, upsilon, m)
}

fn forward_unchecked(
    rho: &IntegerPartition,
    mu: &IntegerPartition,
    upsilon: &IntegerPartition,
    m: u8,
) -> Result<IntegerPartition> {
    let mut carry = usize::from(m);
    let mut parts = Vec::new();
    for i in 1.. {
        let lambda_i = (mu.part(i) + carry).max(upsilon.part(i));
        if lambda_i == 0 {
            break;
        }
        parts.push(lambda_i);
        carry = (mu.part(i) + carry).min(upsilon.part(i)) - rho.part(i);
    }
    IntegerPartition::new(parts).map_err(|e| Error::LocalRule(format!("forward rule produced a non-partition: {e}")))
}

/// Backward local rule: recovers `(ρ, m)` from the other three corners.
/// An `m` outside `{0, 1}` means the labels cannot come from any filling.
pub fn backward_cell(
    mu: &IntegerPartition,
    upsilon: &IntegerPartition,
    lambda: &IntegerPartition,
) -> Result<(IntegerPartition, u8)> {
    if !is_vertical_strip(mu, lambda) {
        return Err(Error::LocalRule(format!(
            "λ = {lambda} is not μ = {mu} plus a vertical strip"
        )));
    }
    if !is_horizontal_strip(upsilon, lambda) {
        return Err(Error::LocalRule(format!(
            "λ = {lambda} is not υ = {upsilon} plus a horizontal strip"
        )));
    }
    let mut rho = vec![0i64; lambda.len()];
    let mut carry = 0i64;
    for i in (1..=lambda.len()).rev() {
        let (m, u, l) = (mu.part(i) as i64, upsilon.part(i) as i64, lambda.part(i) as i64);
        rho[i - 1] = m.min(u - carry);
        carry = l - m.max(u - carry);
    }
    if !(0..=1).contains(&carry) {
        return Err(Error::InconsistentLabels { m: carry });
    }
    if rho.iter().any(|&r| r < 0) {
        return Err(Error::LocalRule(format!(
            "backward rule produced negative parts {rho:?}"
        )));
    }
    let rho = IntegerPartition::new(rho.into_iter().map(|r| r as usize).collect())
        .map_err(|e| Error::LocalRule(format!("backward rule produced a non-partition: {e}")))?;
    let m = carry as u8;
    if !is_horizontal_strip(&rho, mu)
        || !is_vertical_strip(&rho, upsilon)
        || forward_unchecked(&rho, mu, upsilon, m)? != *lambda
    {
        return Err(Error::LocalRule(format!(
            "labels μ = {mu}, υ = {upsilon}, λ = {lambda} admit no consistent cell"
        )));
    }
    Ok((rho, m))
}

/// A sequence of partitions λ⁰, λ¹, …, written `(∅,1,21,…)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionSequence(Vec<IntegerPartition>);

impl PartitionSequence {
    pub fn new(labels: Vec<IntegerPartition>) -> Self {
        Self(labels)
    }

    /// `len` copies of ∅.
    pub fn empty_of_len(len: usize) -> Self {
        Self(vec![IntegerPartition::empty(); len])
    }

    pub fn labels(&self) -> &[IntegerPartition] {
        &self.0
    }

    pub fn into_labels(self) -> Vec<IntegerPartition> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&IntegerPartition> {
        self.0.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, IntegerPartition> {
        self.0.iter()
    }

    pub fn all_empty(&self) -> bool {
        self.0.iter().all(IntegerPartition::is_empty)
    }
}

impl std::ops::Index<usize> for PartitionSequence {
    type Output = IntegerPartition;

    fn index(&self, i: usize) -> &IntegerPartition {
        &self.0[i]
    }
}

impl From<Vec<IntegerPartition>> for PartitionSequence {
    fn from(labels: Vec<IntegerPartition>) -> Self {
        Self(labels)
    }
}

impl fmt::Display for PartitionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", items.join(","))
    }
}

impl fmt::Debug for PartitionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartitionSequence{self}")
    }
}

impl FromStr for PartitionSequence {
    type Err = Error;

    /// Parses `(∅,1,21)`; labels with parts above 9 are written `(10,2)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("partition sequence must be parenthesised: {s:?}")))?;
        let mut labels = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, ch) in body.char_indices() {
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {s:?}")))?
                }
                ',' if depth == 0 => {
                    labels.push(body[start..i].parse()?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
        }
        if body.trim().is_empty() {
            return Err(Error::Parse("empty partition sequence".into()));
        }
        labels.push(body[start..].parse()?);
        Ok(Self(labels))
    }
}

/// All corner labels of a filled shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthDiagram {
    shape: FerrersShape,
    filling: Filling01,
    /// `corners[line][col]`, lines counted from the top edge.
    corners: Vec<Vec<IntegerPartition>>,
}

impl GrowthDiagram {
    pub fn shape(&self) -> &FerrersShape {
        &self.shape
    }

    pub fn filling(&self) -> &Filling01 {
        &self.filling
    }

    pub fn label(&self, corner: Corner) -> Option<&IntegerPartition> {
        self.corners.get(corner.row)?.get(corner.col)
    }

    /// Labels read along the right/up border from the top-left corner.
    pub fn boundary(&self) -> PartitionSequence {
        let labels = self
            .shape
            .boundary_corners()
            .into_iter()
            .map(|c| self.corners[c.row][c.col].clone())
            .collect();
        PartitionSequence(labels)
    }

    /// Corner labels on their lattice lines with `•` marking the 1s, top
    /// line first.
    pub fn render(&self) -> String {
        let w = self
            .corners
            .iter()
            .flatten()
            .map(|p| p.to_string().chars().count())
            .max()
            .unwrap_or(1)
            + 3;
        let mut out = String::new();
        for (line, labels) in self.corners.iter().enumerate() {
            if line > 0 {
                let mut row = String::new();
                for c in 1..=self.shape.row_len(line) {
                    let pos = c * w - w / 2 - 1;
                    row.push_str(&" ".repeat(pos - row.chars().count()));
                    row.push(if self.filling.is_one(line, c) { '•' } else { '·' });
                }
                out.push_str(&row);
                out.push('\n');
            }
            let text: String = labels.iter().map(|p| format!("{:<w$}", p.to_string())).collect();
            out.push_str(text.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Runs the forward rule over every cell, bottom row first and left to
/// right within a row.
pub fn forward_diagram(filling: &Filling01) -> GrowthDiagram {
    let shape = filling.shape().clone();
    let h = shape.height();
    let mut corners: Vec<Vec<IntegerPartition>> = (0..=h)
        .map(|line| vec![IntegerPartition::empty(); shape.line_width(line) + 1])
        .collect();
    for r in (1..=h).rev() {
        for c in 1..=shape.row_len(r) {
            let m = u8::from(filling.is_one(r, c));
            let lambda = forward_cell(&corners[r][c - 1], &corners[r][c], &corners[r - 1][c - 1], m)
                .expect("labels grown from ∅ satisfy the strip conditions");
            corners[r - 1][c] = lambda;
        }
    }
    GrowthDiagram {
        shape,
        filling: filling.clone(),
        corners,
    }
}

pub fn forward_boundary(filling: &Filling01) -> PartitionSequence {
    forward_diagram(filling).boundary()
}

/// Checks that `seq` can label the border of a shape with boundary word
/// `word`: right steps add a horizontal strip or nothing, down steps delete
/// a vertical strip or nothing, and both ends are ∅.
pub fn check_boundary_steps(word: &[Step], seq: &PartitionSequence) -> Result<()> {
    if seq.len() != word.len() + 1 {
        return Err(Error::InvalidBoundary(format!(
            "expected {} labels for a boundary word of length {}, got {}",
            word.len() + 1,
            word.len(),
            seq.len()
        )));
    }
    if !seq[0].is_empty() || !seq[seq.len() - 1].is_empty() {
        return Err(Error::InvalidBoundary("first and last labels must be ∅".into()));
    }
    for (i, step) in word.iter().enumerate() {
        let (prev, next) = (&seq[i], &seq[i + 1]);
        let ok = match step {
            Step::R => is_horizontal_strip(prev, next),
            Step::D => is_vertical_strip(next, prev),
        };
        if !ok {
            let what = match step {
                Step::R => "a right step must add a horizontal strip",
                Step::D => "a down step must delete a vertical strip",
            };
            return Err(Error::InvalidBoundary(format!(
                "{what}: {prev} → {next} at step {}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Rebuilds the whole diagram from its border labels, top row first and
/// right to left within a row.
pub fn backward_growth(shape: &FerrersShape, boundary: &PartitionSequence) -> Result<GrowthDiagram> {
    check_boundary_steps(&shape.boundary_word(), boundary)?;
    let h = shape.height();
    let mut corners: Vec<Vec<Option<IntegerPartition>>> =
        (0..=h).map(|line| vec![None; shape.line_width(line) + 1]).collect();
    for (c, label) in shape.boundary_corners().into_iter().zip(boundary.iter()) {
        corners[c.row][c.col] = Some(label.clone());
    }
    let mut ones = Vec::new();
    for r in 1..=h {
        for c in (1..=shape.row_len(r)).rev() {
            let get = |row: usize, col: usize| corners[row][col].clone().expect("corner computed before it is needed");
            let (rho, m) = backward_cell(&get(r, c), &get(r - 1, c - 1), &get(r - 1, c))?;
            if m == 1 {
                ones.push((r, c));
            }
            corners[r][c - 1] = Some(rho);
        }
    }
    let corners: Vec<Vec<IntegerPartition>> = corners
        .into_iter()
        .map(|line| line.into_iter().map(|l| l.expect("every corner is reached")).collect())
        .collect();
    let left_empty = corners.iter().all(|line| line[0].is_empty());
    if !left_empty || !corners[h].iter().all(IntegerPartition::is_empty) {
        return Err(Error::InvalidBoundary(
            "interior labels do not reach ∅ along the left and bottom edges".into(),
        ));
    }
    let filling = Filling01::new(shape.clone(), ones)?;
    Ok(GrowthDiagram {
        shape: shape.clone(),
        filling,
        corners,
    })
}

pub fn backward_diagram(shape: &FerrersShape, boundary: &PartitionSequence) -> Result<Filling01> {
    Ok(backward_growth(shape, boundary)?.filling)
}

/// Which classes of Δₙ boundary sequences a sequence belongs to. Steps
/// λ^{2i} → λ^{2i+1} go right, λ^{2i+1} → λ^{2i+2} go down.
///
/// * `t1`: right steps add a horizontal strip (or nothing), down steps
///   delete a vertical strip (or nothing) — all fillings.
/// * `t2`: right steps as in `t1`, every down step deletes exactly one
///   square — one 1 per row.
/// * `t3`: every step adds or deletes at most one square — at most one 1
///   per row and column.
///
/// Each flag also requires length `2n + 1` and ∅ at both ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryClass {
    pub t1: bool,
    pub t2: bool,
    pub t3: bool,
    /// Largest number of columns of any label.
    pub max_columns: usize,
}

impl BoundaryClass {
    /// `t2` with at most `k` columns throughout.
    pub fn t5(&self, k: usize) -> bool {
        self.t2 && self.max_columns <= k
    }

    /// `t3` with at most `k` columns throughout.
    pub fn t6(&self, k: usize) -> bool {
        self.t3 && self.max_columns <= k
    }

    /// Membership in 𝒱ₙ.
    pub fn v(&self) -> bool {
        self.t6(2)
    }

    /// Names of the classes that hold, using the tightest column bound.
    pub fn names(&self) -> Vec<String> {
        let k = self.max_columns;
        let mut out = Vec::new();
        for (flag, name) in [(self.t1, "T1"), (self.t2, "T2"), (self.t3, "T3")] {
            if flag {
                out.push(name.to_string());
            }
        }
        if self.t2 {
            out.push(format!("T5({k})"));
        }
        if self.t3 {
            out.push(format!("T6({k})"));
        }
        if self.v() {
            out.push("V".into());
        }
        out
    }
}

fn adds_at_most_one(smaller: &IntegerPartition, larger: &IntegerPartition) -> bool {
    larger.contains(smaller) && larger.size() - smaller.size() <= 1
}

pub fn classify_boundary(seq: &PartitionSequence, n: usize) -> BoundaryClass {
    let max_columns = seq.iter().map(IntegerPartition::column_count).max().unwrap_or(0);
    let well_formed = seq.len() == 2 * n + 1 && seq[0].is_empty() && seq[2 * n].is_empty();
    let mut class = BoundaryClass {
        t1: well_formed,
        t2: well_formed,
        t3: well_formed,
        max_columns,
    };
    if !well_formed {
        return class;
    }
    for (i, pair) in seq.labels().windows(2).enumerate() {
        let (prev, next) = (&pair[0], &pair[1]);
        if i % 2 == 0 {
            let strip = is_horizontal_strip(prev, next);
            class.t1 &= strip;
            class.t2 &= strip;
            class.t3 &= adds_at_most_one(prev, next);
        } else {
            class.t1 &= is_vertical_strip(next, prev);
            class.t2 &= prev.contains(next) && prev.size() == next.size() + 1;
            class.t3 &= adds_at_most_one(next, prev);
        }
    }
    class
}

/// Partitions obtained from `p` by adding one square.
fn with_one_more(p: &IntegerPartition) -> Vec<IntegerPartition> {
    let parts = p.parts();
    (0..=parts.len())
        .filter(|&i| i == 0 || parts[i - 1] > parts.get(i).copied().unwrap_or(0))
        .map(|i| {
            let mut q = parts.to_vec();
            if i == q.len() {
                q.push(1);
            } else {
                q[i] += 1;
            }
            IntegerPartition::new(q).expect("adding a corner square keeps a partition")
        })
        .collect()
}

/// Partitions obtained from `p` by removing one square.
fn with_one_less(p: &IntegerPartition) -> Vec<IntegerPartition> {
    let parts = p.parts();
    (0..parts.len())
        .filter(|&i| parts[i] > parts.get(i + 1).copied().unwrap_or(0))
        .map(|i| {
            let mut q = parts.to_vec();
            q[i] -= 1;
            IntegerPartition::new(q).expect("removing a corner square keeps a partition")
        })
        .collect()
}

/// Every member of 𝒱ₙ, depth first with "do nothing" tried before adding
/// or deleting a square.
pub fn enumerate_v_sequences(n: usize) -> Vec<PartitionSequence> {
    fn go(prefix: &mut Vec<IntegerPartition>, n: usize, out: &mut Vec<PartitionSequence>) {
        let j = prefix.len();
        if j == 2 * n + 1 {
            out.push(PartitionSequence(prefix.clone()));
            return;
        }
        let last = prefix[j - 1].clone();
        let mut next = vec![last.clone()];
        if j % 2 == 1 {
            next.extend(with_one_more(&last).into_iter().filter(|q| q.column_count() <= 2));
        } else {
            next.extend(with_one_less(&last));
        }
        // at most one square disappears per remaining down step
        let downs_left = n - j / 2;
        for q in next.into_iter().filter(|q| q.size() <= downs_left) {
            prefix.push(q);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut vec![IntegerPartition::empty()], n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filling::TriangularFilling;
    use crate::setpartition::enumerate_set_partitions;

    fn p(s: &str) -> IntegerPartition {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> PartitionSequence {
        s.parse().unwrap()
    }

    fn rrddrdrd_filling() -> Filling01 {
        let shape = FerrersShape::from_bottom_up(vec![4, 3, 2, 2]).unwrap();
        Filling01::new(shape, [(1, 1), (2, 2), (4, 2), (4, 4)]).unwrap()
    }

    const WORKED_EXAMPLE_BOUNDARY: &str = "(∅,2,1,2,1,2,1,21,2,21,11,111,11,21,2,2,1,1,∅)";

    fn differ_by_one(a: &IntegerPartition, b: &IntegerPartition) -> bool {
        adds_at_most_one(a, b) && b.size() == a.size() + 1 || adds_at_most_one(b, a) && a.size() == b.size() + 1
    }

    /// Every (ρ, μ, υ) with μ/ρ a horizontal strip, υ/ρ a vertical strip
    /// and all sizes at most `max`.
    fn forward_triples(max: usize) -> Vec<(IntegerPartition, IntegerPartition, IntegerPartition)> {
        let all = IntegerPartition::all_up_to(max);
        let mut out = Vec::new();
        for rho in &all {
            for mu in all.iter().filter(|mu| is_horizontal_strip(rho, mu)) {
                for up in all.iter().filter(|up| is_vertical_strip(rho, up)) {
                    out.push((rho.clone(), mu.clone(), up.clone()));
                }
            }
        }
        out
    }

    #[test]
    fn forward_cell_examples() {
        assert_eq!(forward_cell(&p("∅"), &p("∅"), &p("∅"), 1).unwrap(), p("1"));
        assert_eq!(forward_cell(&p("∅"), &p("2"), &p("1"), 0).unwrap(), p("21"));
        assert_eq!(forward_cell(&p("1"), &p("1"), &p("1"), 1).unwrap(), p("2"));
        assert!(forward_cell(&p("∅"), &p("11"), &p("∅"), 0).is_err());
        assert!(forward_cell(&p("∅"), &p("∅"), &p("2"), 0).is_err());
        assert!(forward_cell(&p("∅"), &p("∅"), &p("∅"), 2).is_err());
    }

    #[test]
    fn backward_cell_examples() {
        assert_eq!(backward_cell(&p("2"), &p("1"), &p("21")).unwrap(), (p("∅"), 0));
        assert_eq!(backward_cell(&p("∅"), &p("∅"), &p("1")).unwrap(), (p("∅"), 1));
        for q in IntegerPartition::all_up_to(5) {
            assert_eq!(backward_cell(&q, &q, &q).unwrap(), (q.clone(), 0));
        }
        // λ two squares bigger than μ = υ cannot come from a single cell
        assert!(matches!(
            backward_cell(&p("∅"), &p("∅"), &p("11")),
            Err(Error::LocalRule(_))
        ));
        assert_eq!(backward_cell(&p("1"), &p("1"), &p("21")).unwrap(), (p("∅"), 1));
        assert!(backward_cell(&p("∅"), &p("∅"), &p("2")).is_err());
    }

    #[test]
    fn local_rules_are_mutually_inverse() {
        for (rho, mu, up) in forward_triples(6) {
            for m in 0..=1 {
                let lambda = forward_cell(&rho, &mu, &up, m).unwrap();
                assert!(is_vertical_strip(&mu, &lambda));
                assert!(is_horizontal_strip(&up, &lambda));
                assert_eq!(backward_cell(&mu, &up, &lambda).unwrap(), (rho.clone(), m));
            }
        }
        let all = IntegerPartition::all_up_to(7);
        for lambda in &all {
            for mu in all.iter().filter(|mu| is_vertical_strip(mu, lambda)) {
                for up in all.iter().filter(|up| is_horizontal_strip(up, lambda)) {
                    if let Ok((rho, m)) = backward_cell(mu, up, lambda) {
                        assert_eq!(forward_cell(&rho, mu, up, m).unwrap(), *lambda);
                    }
                }
            }
        }
    }

    #[test]
    fn single_square_properties() {
        for (rho, mu, up) in forward_triples(6) {
            if !adds_at_most_one(&rho, &mu) || !adds_at_most_one(&rho, &up) {
                continue;
            }
            let l0 = forward_cell(&rho, &mu, &up, 0).unwrap();
            let l1 = forward_cell(&rho, &mu, &up, 1).unwrap();
            if rho == up {
                assert_eq!(l0, mu, "(a)");
                assert!(differ_by_one(&l1, &mu), "(b)");
            } else {
                assert!(differ_by_one(&l0, &mu), "(c)");
            }
            if rho == mu {
                assert_eq!(l0, up, "(d)");
                assert!(differ_by_one(&l1, &up), "(e)");
            } else {
                assert!(differ_by_one(&l0, &up), "(f)");
            }
        }
    }

    #[test]
    fn rrddrdrd_boundary_and_inverse() {
        let g = forward_diagram(&rrddrdrd_filling());
        assert_eq!(g.boundary(), seq("(∅,1,21,2,1,1,1,11,∅)"));
        let back = backward_diagram(rrddrdrd_filling().shape(), &g.boundary()).unwrap();
        assert_eq!(back, rrddrdrd_filling());
    }

    #[test]
    fn worked_example_boundary_and_inverse() {
        let t = TriangularFilling::new(vec![1, 2, 3, 1, 4, 4, 5, 7, 6]).unwrap();
        let b = forward_boundary(&t.to_filling());
        assert_eq!(b, seq(WORKED_EXAMPLE_BOUNDARY));
        let back = backward_diagram(&FerrersShape::staircase(9), &b).unwrap();
        assert_eq!(TriangularFilling::from_filling(&back).unwrap(), t);
    }

    #[test]
    fn empty_fillings_have_empty_labels() {
        let f = Filling01::empty(rrddrdrd_filling().shape().clone());
        let g = forward_diagram(&f);
        assert!(g.corners.iter().flatten().all(IntegerPartition::is_empty));
        let shape = FerrersShape::staircase(3);
        let back = backward_diagram(&shape, &PartitionSequence::empty_of_len(7)).unwrap();
        assert_eq!(back.count_ones(), 0);
    }

    #[test]
    fn backward_rejects_bad_boundaries() {
        let shape = FerrersShape::staircase(2);
        assert!(backward_diagram(&shape, &seq("(∅,1,∅)")).is_err());
        assert!(backward_diagram(&shape, &seq("(1,1,∅,∅,∅)")).is_err());
        // down step that adds
        assert!(backward_diagram(&shape, &seq("(∅,∅,1,1,∅)")).is_err());
        // right step adding a vertical domino
        assert!(backward_diagram(&shape, &seq("(∅,∅,∅,11,∅)")).is_err());
    }

    fn corner_grid(shape: &FerrersShape) -> Vec<Corner> {
        (0..=shape.height())
            .flat_map(|line| (0..=shape.line_width(line)).map(move |c| Corner::new(line, c)))
            .collect()
    }

    #[test]
    fn labels_record_chain_lengths() {
        for n in 1..=5 {
            for t in TriangularFilling::all(n) {
                let f = t.to_filling();
                let g = forward_diagram(&f);
                for c in corner_grid(f.shape()) {
                    let label = g.label(c).unwrap();
                    assert_eq!(label.part(1), f.longest_ne_chain(c).unwrap(), "{t} {c:?}");
                    assert_eq!(label.conjugate().part(1), f.longest_se_chain(c).unwrap(), "{t} {c:?}");
                }
            }
        }
    }

    #[test]
    fn boundary_steps_count_ones_in_lines() {
        let check = |f: &Filling01| {
            let b = forward_boundary(f);
            let word = f.shape().boundary_word();
            let (mut col, mut row) = (0, 0);
            for (i, step) in word.iter().enumerate() {
                let (prev, next) = (b[i].size() as i64, b[i + 1].size() as i64);
                match step {
                    Step::R => {
                        col += 1;
                        assert_eq!(next - prev, f.ones_in_col(col) as i64);
                    }
                    Step::D => {
                        row += 1;
                        assert_eq!(prev - next, f.ones_in_row(row) as i64);
                    }
                }
            }
        };
        for n in 1..=5 {
            for t in TriangularFilling::all(n) {
                check(&t.to_filling());
            }
        }
        for p in enumerate_set_partitions(7) {
            check(&crate::filling::partition_to_filling(&p));
        }
    }

    fn all_fillings(shape: &FerrersShape) -> Vec<Filling01> {
        let cells: Vec<_> = shape.cells().collect();
        (0u32..1 << cells.len())
            .map(|mask| {
                let ones = cells
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &c)| c);
                Filling01::new(shape.clone(), ones).unwrap()
            })
            .collect()
    }

    #[test]
    fn forward_and_backward_are_inverse_on_staircases() {
        for n in 0..=5 {
            let shape = FerrersShape::staircase(n);
            let mut seen = std::collections::HashSet::new();
            for f in all_fillings(&shape) {
                let b = forward_boundary(&f);
                let class = classify_boundary(&b, n);
                assert!(class.t1);
                assert_eq!(class.t2, (1..=n).all(|r| f.ones_in_row(r) == 1));
                assert_eq!(class.t3, f.is_partial_permutation());
                if class.t2 || class.t3 {
                    assert_eq!(class.max_columns < 3, f.longest_ne_chain_in_shape() < 3);
                }
                assert_eq!(backward_diagram(&shape, &b).unwrap(), f);
                assert!(seen.insert(b));
            }
        }
    }

    #[test]
    fn forward_and_backward_are_inverse_on_random_shapes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let height = rng.random_range(1..=7);
            let mut rows: Vec<usize> = (0..height).map(|_| rng.random_range(1..=7)).collect();
            rows.sort_unstable();
            let shape = FerrersShape::new(rows).unwrap();
            let ones = shape.cells().filter(|_| rng.random_bool(0.35));
            let f = Filling01::new(shape.clone(), ones.collect::<Vec<_>>()).unwrap();
            let b = forward_boundary(&f);
            check_boundary_steps(&shape.boundary_word(), &b).unwrap();
            assert_eq!(backward_diagram(&shape, &b).unwrap(), f);
        }
    }

    /// Every Δₙ boundary sequence with the given step predicates, by
    /// depth-first extension over partitions of bounded size.
    fn sequences(
        n: usize,
        max_size: usize,
        up: &dyn Fn(&IntegerPartition, &IntegerPartition) -> bool,
        down: &dyn Fn(&IntegerPartition, &IntegerPartition) -> bool,
    ) -> usize {
        let all = IntegerPartition::all_up_to(max_size);
        fn go(
            prefix: &mut Vec<IntegerPartition>,
            len: usize,
            all: &[IntegerPartition],
            up: &dyn Fn(&IntegerPartition, &IntegerPartition) -> bool,
            down: &dyn Fn(&IntegerPartition, &IntegerPartition) -> bool,
        ) -> usize {
            if prefix.len() == len {
                return usize::from(prefix.last().unwrap().is_empty());
            }
            let last = prefix.last().unwrap().clone();
            let step = if prefix.len() % 2 == 1 { up } else { down };
            let mut total = 0;
            // each down step shortens the first row by at most one
            let downs_left = (len - 1) / 2 - prefix.len() / 2;
            for next in all.iter().filter(|q| q.part(1) <= downs_left && step(&last, q)) {
                prefix.push(next.clone());
                total += go(prefix, len, all, up, down);
                prefix.pop();
            }
            total
        }
        go(&mut vec![IntegerPartition::empty()], 2 * n + 1, &all, up, down)
    }

    #[test]
    fn sequence_counts_match_filling_counts() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        let avoiders_210 = [1, 1, 2, 5, 15, 52, 202];
        for n in 1..=5 {
            let t1 = sequences(n, n * (n + 1) / 2, &|a, b| is_horizontal_strip(a, b), &|a, b| {
                is_vertical_strip(b, a)
            });
            assert_eq!(t1, 1 << (n * (n + 1) / 2));
            let t2 = sequences(n, n, &|a, b| is_horizontal_strip(a, b), &|a, b| {
                a.contains(b) && a.size() == b.size() + 1
            });
            assert_eq!(t2, (1..=n).product::<usize>());
            let t3 = sequences(n, n, &|a, b| adds_at_most_one(a, b), &|a, b| adds_at_most_one(b, a));
            assert_eq!(t3, bell[n + 1]);
            let v = sequences(
                n,
                n,
                &|a, b| adds_at_most_one(a, b) && b.column_count() <= 2,
                &|a, b| adds_at_most_one(b, a),
            );
            assert_eq!(v, avoiders_210[n + 1]);
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify_boundary(&seq(WORKED_EXAMPLE_BOUNDARY), 9);
        assert!(c.t1 && c.t2 && c.t5(2) && !c.t3 && !c.v());
        let psi = seq("(∅,∅,∅,1,1,2,1,2,1,2,2,21,11,111,11,11,11,11,11,21,2,2,1,1,∅)");
        assert!(classify_boundary(&psi, 12).v());
        let empty = classify_boundary(&PartitionSequence::empty_of_len(9), 4);
        assert!(empty.t1 && !empty.t2 && empty.t3 && empty.v());
        assert_eq!(empty.max_columns, 0);
        assert!(!classify_boundary(&psi, 11).t1);
        assert_eq!(c.names(), vec!["T1", "T2", "T5(2)"]);
    }

    #[test]
    fn sequence_text_forms() {
        let s = seq("(∅,1,21,(10,2),∅)");
        assert_eq!(s.len(), 5);
        assert_eq!(s[3].parts(), &[10, 2]);
        assert_eq!(s.to_string(), "(∅,1,21,(10,2),∅)");
        assert_eq!(seq(&s.to_string()), s);
        assert!("∅,1".parse::<PartitionSequence>().is_err());
        assert!("()".parse::<PartitionSequence>().is_err());
        assert_eq!(seq("(∅)").len(), 1);
        let json = serde_json::to_string(&seq("(∅,2,1,∅)")).unwrap();
        assert_eq!(json, "[[],[2],[1],[]]");
        assert_eq!(
            serde_json::from_str::<PartitionSequence>(&json).unwrap(),
            seq("(∅,2,1,∅)")
        );
    }

    #[test]
    fn render_lays_out_corner_grid() {
        let g = forward_diagram(&rrddrdrd_filling());
        let text = g.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0].split_whitespace().collect::<Vec<_>>(), vec!["∅", "1", "21"]);
        assert_eq!(lines[8].split_whitespace().count(), 5);
        assert_eq!(lines[1].matches('•').count(), 1);
        assert_eq!(lines[7].matches('•').count(), 2);
        let json = serde_json::to_value(&g).unwrap();
        assert_eq!(json["shape"], serde_json::json!([4, 3, 2, 2]));
        assert_eq!(json["corners"][0], serde_json::json!([[], [1], [2, 1]]));
    }
}

//! Brute-force counterparts of the main code paths. Everything here is
//! rebuilt from the definitions — recursive generation, subset search,
//! filter-after-enumerate — and shares nothing with the growth-diagram code
//! except the bijection under test in [`verify_conjecture`].

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::ascent::{AscentSequence, Pattern};
use crate::bijection::{ascent_to_partition, partition_to_ascent};
use crate::filling::{Corner, Filling01};
use crate::setpartition::SetPartition;

/// Runs `f` on a pool of `jobs` threads; 0 means rayon's default pool.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

/// All ascent sequences of length `n`, straight from the definition.
pub fn ascent_sequences(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, ascents: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let last = *prefix.last().expect("prefix starts with 0");
        for x in 0..=ascents + 1 {
            prefix.push(x);
            go(prefix, ascents + usize::from(x > last), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(&mut vec![0], 0, n, &mut out);
    }
    out
}

/// Pattern containment by trying every index subset.
pub fn contains_pattern(seq: &[usize], pat: &[usize]) -> bool {
    (0..seq.len()).combinations(pat.len()).any(|idx| {
        (0..pat.len())
            .tuple_combinations()
            .all(|(p, q)| seq[idx[p]].cmp(&seq[idx[q]]) == pat[p].cmp(&pat[q]))
    })
}

pub fn count_avoiders(n: usize, pat: &Pattern) -> usize {
    ascent_sequences(n)
        .par_iter()
        .filter(|s| !contains_pattern(s, pat.letters()))
        .count()
}

/// All set partitions of [n] by inserting each element into an existing
/// block or a new one.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for e in 1..=n {
        out = out
            .into_iter()
            .flat_map(|blocks| {
                let mut next = Vec::with_capacity(blocks.len() + 1);
                for b in 0..blocks.len() {
                    let mut copy = blocks.clone();
                    copy[b].push(e);
                    next.push(copy);
                }
                let mut copy = blocks;
                copy.push(vec![e]);
                next.push(copy);
                next
            })
            .collect();
    }
    out
}

fn arcs(blocks: &[Vec<usize>]) -> Vec<(usize, usize)> {
    blocks.iter().flat_map(|b| b.iter().copied().tuple_windows()).collect()
}

fn pairwise(arcs: &[(usize, usize)], k: usize, rel: impl Fn((usize, usize), (usize, usize)) -> bool) -> bool {
    arcs.iter().copied().combinations(k).any(|mut set| {
        set.sort_unstable();
        set.iter().tuple_combinations().all(|(&a, &b)| rel(a, b))
    })
}

/// `k` arcs `i₁ < … < i_k < j_k < … < j₁`.
pub fn has_k_nesting(blocks: &[Vec<usize>], k: usize) -> bool {
    pairwise(&arcs(blocks), k, |(i1, j1), (i2, j2)| i1 < i2 && j2 < j1)
}

/// `k` arcs `i₁ < … < i_k < j₁ < … < j_k`.
pub fn has_k_crossing(blocks: &[Vec<usize>], k: usize) -> bool {
    pairwise(&arcs(blocks), k, |(i1, j1), (i2, j2)| i1 < i2 && i2 < j1 && j1 < j2)
}

pub fn count_k_nonnesting(n: usize, k: usize) -> usize {
    set_partitions(n).par_iter().filter(|p| !has_k_nesting(p, k)).count()
}

pub fn count_k_noncrossing(n: usize, k: usize) -> usize {
    set_partitions(n).par_iter().filter(|p| !has_k_crossing(p, k)).count()
}

fn ones_below_left(f: &Filling01, corner: Option<Corner>) -> Vec<(usize, usize)> {
    f.ones()
        .filter(|&(r, c)| corner.is_none_or(|k| r > k.row && c <= k.col))
        .collect()
}

/// Longest subset of `cells` that, sorted by `key`, is a chain under `ok`.
fn largest_chain_subset(
    mut cells: Vec<(usize, usize)>,
    key: impl Fn(&(usize, usize)) -> (usize, usize),
    ok: impl Fn(&[(usize, usize)]) -> bool,
) -> usize {
    cells.sort_by_key(&key);
    (1..=cells.len())
        .rev()
        .find(|&k| cells.iter().copied().combinations(k).any(|set| ok(&set)))
        .unwrap_or(0)
}

fn ne_chain(cells: Vec<(usize, usize)>) -> usize {
    largest_chain_subset(
        cells,
        |&(r, c)| (usize::MAX - r, c),
        |set| set.iter().tuple_windows().all(|(a, b)| b.0 < a.0 && b.1 >= a.1),
    )
}

fn se_chain(f: &Filling01, cells: Vec<(usize, usize)>) -> usize {
    largest_chain_subset(
        cells,
        |&(r, c)| (c, r),
        |set| {
            let (first, last) = (set[0], set[set.len() - 1]);
            set.iter().tuple_windows().all(|(a, b)| b.0 >= a.0 && b.1 > a.1) && f.shape().contains_cell(first.0, last.1)
        },
    )
}

/// Longest NE-chain in the whole filling, by subset search.
pub fn brute_force_ne_chain(f: &Filling01) -> usize {
    ne_chain(ones_below_left(f, None))
}

/// Longest NE-chain left of and below `corner`, by subset search.
pub fn brute_force_ne_chain_at(f: &Filling01, corner: Corner) -> usize {
    ne_chain(ones_below_left(f, Some(corner)))
}

/// Longest SE-chain whose bounding rectangle fits in the shape.
pub fn brute_force_se_chain(f: &Filling01) -> usize {
    se_chain(f, ones_below_left(f, None))
}

pub fn brute_force_se_chain_at(f: &Filling01, corner: Corner) -> usize {
    se_chain(f, ones_below_left(f, Some(corner)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    /// 210-avoiding ascent sequences of length n.
    pub left_count: usize,
    /// 3-nonnesting partitions of [n].
    pub right_count: usize,
    pub roundtrip_failures: Vec<String>,
    pub image_mismatches: Vec<String>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.left_count == self.right_count && self.roundtrip_failures.is_empty() && self.image_mismatches.is_empty()
    }
}

fn verify_one(n: usize) -> VerificationReport {
    let start = Instant::now();
    let p210 = [2, 1, 0];
    let left: Vec<AscentSequence> = ascent_sequences(n)
        .into_par_iter()
        .filter(|s| !contains_pattern(s, &p210))
        .map(|s| AscentSequence::new(s).expect("generated from the definition"))
        .collect();
    let right: HashSet<SetPartition> = set_partitions(n)
        .into_par_iter()
        .filter(|p| !has_k_nesting(p, 3))
        .map(|p| SetPartition::new(p).expect("generated partitions are valid"))
        .collect();
    let mapped: Vec<(AscentSequence, Result<SetPartition, String>)> = left
        .par_iter()
        .map(|x| {
            let image = ascent_to_partition(x)
                .map_err(|e| e.to_string())
                .and_then(|p| match partition_to_ascent(&p) {
                    Ok(y) if y == *x => Ok(p),
                    Ok(y) => Err(format!("{p} maps back to {y}")),
                    Err(e) => Err(format!("{p}: {e}")),
                });
            (x.clone(), image)
        })
        .collect();
    let mut roundtrip_failures = Vec::new();
    let mut image_mismatches = Vec::new();
    let mut image = HashSet::new();
    for (x, result) in mapped {
        match result {
            Err(e) => roundtrip_failures.push(format!("{x}: {e}")),
            Ok(p) => {
                if !right.contains(&p) {
                    image_mismatches.push(format!("{x} ↦ {p}, which has a 3-nesting"));
                }
                if !image.insert(p.clone()) {
                    image_mismatches.push(format!("{x} ↦ {p}, already hit"));
                }
            }
        }
    }
    let mut missed: Vec<String> = right.difference(&image).map(ToString::to_string).collect();
    missed.sort();
    image_mismatches.extend(missed.into_iter().map(|p| format!("{p} is not hit")));
    VerificationReport {
        n,
        left_count: left.len(),
        right_count: right.len(),
        roundtrip_failures,
        image_mismatches,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// For each n in 1..=n_max: equal counts, and the bijection is injective,
/// hits exactly the 3-nonnesting partitions and is inverted pointwise.
pub fn verify_conjecture(n_max: usize, jobs: usize) -> Vec<VerificationReport> {
    with_jobs(jobs, || (1..=n_max).map(verify_one).collect())
}

/// Aligned table: n, left, right, status, and millis when `timings` is set.
pub fn render_table(reports: &[VerificationReport], timings: bool) -> String {
    let mut rows = vec![vec!["n".to_string(), "left".into(), "right".into(), "status".into()]];
    if timings {
        rows[0].push("millis".into());
    }
    for r in reports {
        let mut row = vec![
            r.n.to_string(),
            r.left_count.to_string(),
            r.right_count.to_string(),
            if r.ok() { "OK" } else { "FAIL" }.to_string(),
        ];
        if timings {
            row.push(r.elapsed_ms.to_string());
        }
        rows.push(row);
    }
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(v, &w)| format!("{v:<w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

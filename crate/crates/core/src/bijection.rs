//! The bijection between 210-avoiding ascent sequences of length n+1 and
//! 3-nonnesting set partitions of [n+1].
//!
//! ```text
//! x ──rle──▶ x′ (primitive) ──φ──▶ a ∈ 𝒩(Δ_k) ──forward──▶ λ (k-boundary)
//!   ──collapse two-square steps, repeat runs──▶ ρ ∈ 𝒱ₙ ──backward──▶ filling of Δₙ ──▶ partition
//! ```
//!
//! Every arrow has an explicit inverse below.

use std::fmt;
use std::sync::LazyLock;

use serde::Serialize;

use crate::ascent::{asc, AscentSequence, Pattern, Run};
use crate::error::{Error, Result};
use crate::filling::{filling_to_partition, partition_to_filling, FerrersShape, Filling01, TriangularFilling};
use crate::growth::{backward_growth, classify_boundary, forward_diagram, GrowthDiagram, PartitionSequence};
use crate::setpartition::SetPartition;

static P210: LazyLock<Pattern> = LazyLock::new(|| Pattern::new(vec![2, 1, 0]).expect("valid pattern"));

pub fn pattern_210() -> &'static Pattern {
    &P210
}

fn require_210_avoiding(x: &AscentSequence) -> Result<()> {
    match x.contains_pattern(&P210) {
        None => Ok(()),
        Some(at) => Err(Error::Domain(format!(
            "{x} contains 210 at positions {}",
            at.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        ))),
    }
}

/// φ: `a_i = i + x_{i+1} − asc(x_1…x_{i+1})` for a primitive 210-avoiding
/// ascent sequence of length n+1 ≥ 2.
pub fn phi(x: &AscentSequence) -> Result<TriangularFilling> {
    if x.len() < 2 {
        return Err(Error::Domain(format!("φ needs length at least 2, got {x}")));
    }
    if !x.is_primitive() {
        return Err(Error::Domain(format!("{x} is not primitive")));
    }
    require_210_avoiding(x)?;
    let e = x.entries();
    let a = (1..e.len()).map(|i| i + e[i] - asc(&e[..=i])).collect();
    TriangularFilling::new(a)
}

/// φ′, the inverse of [`phi`], defined on 𝒩(Δₙ) for n ≥ 1.
pub fn phi_inverse(t: &TriangularFilling) -> Result<AscentSequence> {
    if t.n() == 0 {
        return Err(Error::Domain("φ′ needs n ≥ 1".into()));
    }
    if !t.is_in_n_delta() {
        return Err(Error::Domain(format!("a = ({t}) has a NE-chain of length 3")));
    }
    let a = t.a();
    let mut x = vec![0, 1];
    let mut ascents = 1;
    for i in 2..=t.n() {
        let (prev, cur) = (a[i - 2], a[i - 1]);
        let bump = usize::from(prev < cur);
        // a_i ≥ i - asc here for every filling in 𝒩(Δₙ)
        let next = (ascents + bump + cur)
            .checked_sub(i)
            .ok_or_else(|| Error::Domain(format!("a = ({t}) gives a negative entry at position {}", i + 1)))?;
        if x[i - 1] < next {
            ascents += 1;
        }
        x.push(next);
    }
    AscentSequence::new(x)
}

/// Intermediate values of ψ and ψ′. For ψ′, `lambda` is the υ-sequence fed
/// to the backward rule and `mu` the collapsed sequence it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiStages {
    pub rle: Vec<Run>,
    pub primitive: AscentSequence,
    pub a_vector: Option<TriangularFilling>,
    pub lambda: Option<PartitionSequence>,
    pub mu: Option<PartitionSequence>,
    pub rho: PartitionSequence,
    /// Growth diagram of `a_vector` on Δ_k.
    pub primitive_diagram: Option<GrowthDiagram>,
}

/// ψ with all intermediate stages.
pub fn psi_stages(x: &AscentSequence) -> Result<PsiStages> {
    require_210_avoiding(x)?;
    let n = x.len() - 1;
    let rle = x.run_length_decomposition();
    let primitive = x.primitive_contraction();
    if rle.len() == 1 {
        return Ok(PsiStages {
            rle,
            primitive,
            a_vector: None,
            lambda: None,
            mu: None,
            rho: PartitionSequence::empty_of_len(2 * n + 1),
            primitive_diagram: None,
        });
    }
    let a = phi(&primitive)?;
    let diagram = forward_diagram(&a.to_filling());
    let lambda = diagram.boundary();
    let k = a.n();
    let mut mu = lambda.clone().into_labels();
    for i in 0..k {
        if lambda[2 * i + 1].size() == lambda[2 * i].size() + 2 {
            mu[2 * i + 1] = lambda[2 * i + 2].clone();
        }
    }
    let mut rho = Vec::with_capacity(2 * n + 1);
    for (i, run) in rle.iter().enumerate() {
        rho.extend(std::iter::repeat_n(mu[2 * i].clone(), 2 * (run.multiplicity - 1)));
        rho.push(mu[2 * i].clone());
        if i < k {
            rho.push(mu[2 * i + 1].clone());
        }
    }
    debug_assert_eq!(rho.len(), 2 * n + 1);
    Ok(PsiStages {
        rle,
        primitive,
        a_vector: Some(a),
        lambda: Some(lambda),
        mu: Some(PartitionSequence::new(mu)),
        rho: PartitionSequence::new(rho),
        primitive_diagram: Some(diagram),
    })
}

/// ψ: a 210-avoiding ascent sequence of length n+1 to a sequence in 𝒱ₙ.
pub fn psi(x: &AscentSequence) -> Result<PartitionSequence> {
    Ok(psi_stages(x)?.rho)
}

/// ψ′ with all intermediate stages; `rle` holds the recovered runs.
pub fn psi_inverse_stages(v: &PartitionSequence) -> Result<(AscentSequence, PsiStages)> {
    if v.len().is_multiple_of(2) {
        return Err(Error::Domain(format!("{v} has even length {}", v.len())));
    }
    let n = (v.len() - 1) / 2;
    if !classify_boundary(v, n).v() {
        return Err(Error::Domain(format!("{v} is not in 𝒱_{n}")));
    }
    if v.all_empty() {
        let x = AscentSequence::new(vec![0; n + 1])?;
        let stages = PsiStages {
            rle: x.run_length_decomposition(),
            primitive: x.primitive_contraction(),
            a_vector: None,
            lambda: None,
            mu: None,
            rho: v.clone(),
            primitive_diagram: None,
        };
        return Ok((x, stages));
    }
    // flags are read off the original indices and applied all at once
    let js: Vec<usize> = (0..=n)
        .filter(|&i| i == n || !(v[2 * i] == v[2 * i + 1] && v[2 * i + 1] == v[2 * i + 2]))
        .collect();
    let m = js.len() - 1;
    let mut collapsed = Vec::with_capacity(2 * m + 1);
    let mut upsilon = Vec::with_capacity(2 * m + 1);
    for w in js.windows(2) {
        let (j, next) = (w[0], w[1]);
        let even = v[2 * j].clone();
        let odd = if v[2 * j + 1] == v[2 * next] {
            even.two_cell_strip_extension()
                .ok_or_else(|| Error::Domain(format!("{even} has more than two columns at position {}", 2 * j)))?
        } else {
            v[2 * j + 1].clone()
        };
        collapsed.extend([even.clone(), v[2 * j + 1].clone()]);
        upsilon.extend([even, odd]);
    }
    collapsed.push(v[2 * n].clone());
    upsilon.push(v[2 * n].clone());
    let upsilon = PartitionSequence::new(upsilon);
    let class = classify_boundary(&upsilon, m);
    if !class.t5(2) {
        return Err(Error::Domain(format!(
            "collapsed sequence {upsilon} violates the one-1-per-row step constraints"
        )));
    }
    let diagram = backward_growth(&FerrersShape::staircase(m), &upsilon)?;
    let a = TriangularFilling::from_filling(diagram.filling())?;
    let primitive = phi_inverse(&a)?;
    let mut counts = vec![js[0] + 1];
    counts.extend(js.windows(2).map(|w| w[1] - w[0]));
    let x = primitive.inflate(&counts)?;
    let stages = PsiStages {
        rle: x.run_length_decomposition(),
        primitive,
        a_vector: Some(a),
        lambda: Some(upsilon),
        mu: Some(PartitionSequence::new(collapsed)),
        rho: v.clone(),
        primitive_diagram: Some(diagram),
    };
    Ok((x, stages))
}

/// ψ′: the inverse of [`psi`] on 𝒱ₙ.
pub fn psi_inverse(v: &PartitionSequence) -> Result<AscentSequence> {
    Ok(psi_inverse_stages(v)?.0)
}

/// Every stage of one run of the bijection, in either direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionTrace {
    pub ascent: AscentSequence,
    pub rle: Vec<Run>,
    pub primitive: AscentSequence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_vector: Option<TriangularFilling>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_seq: Option<PartitionSequence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_seq: Option<PartitionSequence>,
    pub rho_seq: PartitionSequence,
    pub filling: Filling01,
    pub partition: SetPartition,
    #[serde(skip)]
    pub primitive_diagram: Option<GrowthDiagram>,
    #[serde(skip)]
    pub diagram: GrowthDiagram,
}

impl BijectionTrace {
    fn assemble(ascent: AscentSequence, stages: PsiStages, diagram: GrowthDiagram, partition: SetPartition) -> Self {
        Self {
            ascent,
            rle: stages.rle,
            primitive: stages.primitive,
            a_vector: stages.a_vector,
            lambda_seq: stages.lambda,
            mu_seq: stages.mu,
            rho_seq: stages.rho,
            filling: diagram.filling().clone(),
            partition,
            primitive_diagram: stages.primitive_diagram,
            diagram,
        }
    }
}

impl fmt::Display for BijectionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ascent:    {}", self.ascent)?;
        let runs: Vec<String> = self
            .rle
            .iter()
            .map(|r| format!("{}^{}", r.value, r.multiplicity))
            .collect();
        writeln!(f, "rle:       {}", runs.join(" "))?;
        writeln!(f, "primitive: {}", self.primitive)?;
        if let Some(a) = &self.a_vector {
            writeln!(f, "a_vector:  ({a})")?;
        }
        if let Some(d) = &self.primitive_diagram {
            writeln!(f, "growth diagram on Δ{}:", d.shape().height())?;
            write!(f, "{}", d.render())?;
        }
        if let Some(l) = &self.lambda_seq {
            writeln!(f, "lambda_seq: {l}")?;
        }
        if let Some(m) = &self.mu_seq {
            writeln!(f, "mu_seq:     {m}")?;
        }
        writeln!(f, "rho_seq:    {}", self.rho_seq)?;
        writeln!(f, "growth diagram on Δ{}:", self.diagram.shape().height())?;
        write!(f, "{}", self.diagram.render())?;
        writeln!(f, "partition: {}", self.partition)
    }
}

pub fn trace_ascent_to_partition(x: &AscentSequence) -> Result<BijectionTrace> {
    let stages = psi_stages(x)?;
    let diagram = backward_growth(&FerrersShape::staircase(x.len() - 1), &stages.rho)?;
    let partition = filling_to_partition(diagram.filling())?;
    Ok(BijectionTrace::assemble(x.clone(), stages, diagram, partition))
}

pub fn trace_partition_to_ascent(p: &SetPartition) -> Result<BijectionTrace> {
    if p.max_nesting() >= 3 {
        return Err(Error::Domain(format!("{p} contains a 3-nesting")));
    }
    let diagram = forward_diagram(&partition_to_filling(p));
    let (x, stages) = psi_inverse_stages(&diagram.boundary())?;
    Ok(BijectionTrace::assemble(x, stages, diagram, p.clone()))
}

/// The bijection onto 3-nonnesting partitions of [n+1].
pub fn ascent_to_partition(x: &AscentSequence) -> Result<SetPartition> {
    let rho = psi(x)?;
    let filling = crate::growth::backward_diagram(&FerrersShape::staircase(x.len() - 1), &rho)?;
    filling_to_partition(&filling)
}

/// Inverse of [`ascent_to_partition`].
pub fn partition_to_ascent(p: &SetPartition) -> Result<AscentSequence> {
    if p.max_nesting() >= 3 {
        return Err(Error::Domain(format!("{p} contains a 3-nesting")));
    }
    psi_inverse(&crate::growth::forward_boundary(&partition_to_filling(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ascent::enumerate_ascent_sequences;
    use crate::growth::{enumerate_v_sequences, forward_boundary};
    use crate::setpartition::enumerate_set_partitions;
    use std::collections::HashSet;

    fn x(s: &str) -> AscentSequence {
        s.parse().unwrap()
    }

    fn t(a: &[usize]) -> TriangularFilling {
        TriangularFilling::new(a.to_vec()).unwrap()
    }

    fn seq(s: &str) -> PartitionSequence {
        s.parse().unwrap()
    }

    const V12: &str = "(∅,∅,∅,1,1,2,1,2,1,2,2,21,11,111,11,11,11,11,11,21,2,2,1,1,∅)";
    const LAMBDA9: &str = "(∅,2,1,2,1,2,1,21,2,21,11,111,11,21,2,2,1,1,∅)";
    const MU9: &str = "(∅,1,1,2,1,2,1,2,2,21,11,111,11,21,2,2,1,1,∅)";

    fn avoiders(n: usize) -> Vec<AscentSequence> {
        enumerate_ascent_sequences(n)
            .filter(|s| s.avoids(pattern_210()))
            .collect()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&x("012340415")).unwrap(), t(&[1, 2, 3, 4, 1, 5, 3, 7]));
        assert_eq!(phi(&x("0123032353")).unwrap(), t(&[1, 2, 3, 1, 4, 4, 5, 7, 6]));
        assert_eq!(phi(&x("01")).unwrap(), t(&[1]));
        assert!(phi(&x("0")).is_err());
        assert!(phi(&x("0012")).is_err());
        assert!(phi(&x("012010")).is_err());
    }

    #[test]
    fn phi_inverse_examples() {
        assert_eq!(phi_inverse(&t(&[1, 2, 3, 4, 1, 5, 3, 7])).unwrap(), x("012340415"));
        assert_eq!(phi_inverse(&t(&[1, 2, 3, 1, 4, 4, 5, 7, 6])).unwrap(), x("0123032353"));
        assert_eq!(phi_inverse(&t(&[1])).unwrap(), x("01"));
        assert!(phi_inverse(&t(&[1, 1, 1])).is_err());
    }

    #[test]
    fn psi_worked_example() {
        let stages = psi_stages(&x("0012303222353")).unwrap();
        assert_eq!(stages.primitive, x("0123032353"));
        let counts: Vec<usize> = stages.rle.iter().map(|r| r.multiplicity).collect();
        assert_eq!(counts, vec![2, 1, 1, 1, 1, 1, 3, 1, 1, 1]);
        assert_eq!(stages.a_vector.unwrap(), t(&[1, 2, 3, 1, 4, 4, 5, 7, 6]));
        assert_eq!(stages.lambda.unwrap(), seq(LAMBDA9));
        assert_eq!(stages.mu.unwrap(), seq(MU9));
        assert_eq!(stages.rho, seq(V12));
    }

    #[test]
    fn psi_small_examples() {
        assert_eq!(psi(&x("000")).unwrap(), seq("(∅,∅,∅,∅,∅)"));
        assert_eq!(psi(&x("01")).unwrap(), seq("(∅,1,∅)"));
        assert_eq!(psi(&x("0")).unwrap(), seq("(∅)"));
        assert!(psi(&x("012010")).is_err());
    }

    #[test]
    fn psi_inverse_examples() {
        let (y, stages) = psi_inverse_stages(&seq(V12)).unwrap();
        assert_eq!(y, x("0012303222353"));
        assert_eq!(stages.lambda.unwrap(), seq(LAMBDA9));
        assert_eq!(stages.mu.unwrap(), seq(MU9));
        assert_eq!(psi_inverse(&seq("(∅,∅,∅,∅,∅)")).unwrap(), x("000"));
        assert_eq!(psi_inverse(&seq("(∅,1,∅)")).unwrap(), x("01"));
        assert_eq!(psi_inverse(&seq("(∅)")).unwrap(), x("0"));
        assert!(psi_inverse(&seq(LAMBDA9)).is_err());
        assert!(psi_inverse(&seq("(∅,1)")).is_err());
        assert_eq!(psi_inverse(&seq("(∅,1,1,11,1,1,∅)")).unwrap(), x("0101"));
        assert!(psi_inverse(&seq("(∅,1,1,2,2,3,2,2,1,1,∅)")).is_err());
    }

    #[test]
    fn composite_examples() {
        assert_eq!(ascent_to_partition(&x("0")).unwrap().to_string(), "{{1}}");
        assert_eq!(ascent_to_partition(&x("01")).unwrap().to_string(), "{{1,2}}");
        assert_eq!(ascent_to_partition(&x("00")).unwrap().to_string(), "{{1},{2}}");
        let p: SetPartition = "{{1}}".parse().unwrap();
        assert_eq!(partition_to_ascent(&p).unwrap(), x("0"));
        let p: SetPartition = "{{1,2}}".parse().unwrap();
        assert_eq!(partition_to_ascent(&p).unwrap(), x("01"));
        let p: SetPartition = "{{1},{2},{3}}".parse().unwrap();
        assert_eq!(partition_to_ascent(&p).unwrap(), x("000"));
        let nested: SetPartition = "{{1,6},{2,5},{3,4}}".parse().unwrap();
        assert!(partition_to_ascent(&nested).is_err());
        assert!(ascent_to_partition(&x("012010")).is_err());
    }

    #[test]
    fn worked_example_partition() {
        let p = ascent_to_partition(&x("0012303222353")).unwrap();
        // the boundary of its filling is the 𝒱₁₂ sequence, read independently
        assert_eq!(forward_boundary(&partition_to_filling(&p)), seq(V12));
        assert!(p.max_nesting() < 3);
        assert_eq!(p.n(), 13);
        assert_eq!(p.to_string(), "{{1},{2,8},{3,4,5,7,13},{6,11},{9},{10,12}}");
        assert_eq!(partition_to_ascent(&p).unwrap(), x("0012303222353"));
    }

    #[test]
    fn trace_stages_are_consistent() {
        let tr = trace_ascent_to_partition(&x("0012303222353")).unwrap();
        assert_eq!(tr.rho_seq, seq(V12));
        assert_eq!(tr.filling, partition_to_filling(&tr.partition));
        let back = trace_partition_to_ascent(&tr.partition).unwrap();
        assert_eq!(back.ascent, tr.ascent);
        assert_eq!(back.rho_seq, tr.rho_seq);
        assert_eq!(back.a_vector, tr.a_vector);
        assert_eq!(back.lambda_seq, tr.lambda_seq);
        let json = serde_json::to_value(&tr).unwrap();
        for key in [
            "rle",
            "primitive",
            "a_vector",
            "lambda_seq",
            "mu_seq",
            "rho_seq",
            "filling",
            "partition",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["rle"][0], serde_json::json!([0, 2]));
        let text = tr.to_string();
        assert!(text.contains("rho_seq:    (∅,∅,∅,1,1,2"));
        assert!(text.lines().last().unwrap().starts_with("partition: {{1},"));
    }

    #[test]
    fn lemma_on_decreasing_a_entries() {
        for len in 2..=9 {
            for s in avoiders(len).into_iter().filter(AscentSequence::is_primitive) {
                let a = phi(&s).unwrap();
                let (a, e) = (a.a(), s.entries());
                for i in 0..a.len() {
                    for j in i + 1..a.len() {
                        if a[i] >= a[j] {
                            assert!(e[i + 1] > e[j + 1], "{s}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lemma_on_phi_inverse_entries() {
        for n in 1..=6 {
            for f in TriangularFilling::all(n)
                .into_iter()
                .filter(TriangularFilling::is_in_n_delta)
            {
                let s = phi_inverse(&f).unwrap();
                let (a, e) = (f.a(), s.entries());
                for i in 1..=n {
                    assert_eq!(e[i] + i, asc(&e[..=i]) + a[i - 1], "{f}");
                    if i >= 2 {
                        assert_eq!(e[i - 1] > e[i], a[i - 2] >= a[i - 1], "{f}");
                        assert_eq!(e[i - 1] < e[i], a[i - 2] < a[i - 1], "{f}");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_round_trips() {
        let mut images = HashSet::new();
        for len in 2..=9 {
            for s in avoiders(len).into_iter().filter(AscentSequence::is_primitive) {
                let a = phi(&s).unwrap();
                assert!(a.is_in_n_delta());
                assert_eq!(phi_inverse(&a).unwrap(), s);
                if len <= 7 {
                    images.insert(a);
                }
            }
        }
        for n in 1..=6 {
            let members: Vec<_> = TriangularFilling::all(n)
                .into_iter()
                .filter(TriangularFilling::is_in_n_delta)
                .collect();
            for f in &members {
                let s = phi_inverse(f).unwrap();
                assert!(s.is_primitive() && s.avoids(pattern_210()));
                assert_eq!(phi(&s).unwrap(), *f);
                assert!(images.contains(f));
            }
        }
    }

    #[test]
    fn psi_round_trips() {
        for len in 1..=9 {
            for s in avoiders(len) {
                let v = psi(&s).unwrap();
                assert!(classify_boundary(&v, len - 1).v(), "{s}");
                assert_eq!(psi_inverse(&v).unwrap(), s);
            }
        }
        for n in 0..=6 {
            let all = enumerate_v_sequences(n);
            assert_eq!(all.len(), avoiders(n + 1).len());
            for v in all {
                assert_eq!(psi(&psi_inverse(&v).unwrap()).unwrap(), v);
            }
        }
    }

    /// ρ is μ stretched: each μ^{2i} repeated 2c_{i+1} − 1 times, then μ^{2i+1}.
    #[test]
    fn psi_output_is_mu_stretched_by_runs() {
        for len in 2..=8 {
            for s in avoiders(len) {
                let stages = psi_stages(&s).unwrap();
                let Some(mu) = stages.mu else { continue };
                let mut l = 0;
                for (i, run) in stages.rle.iter().enumerate() {
                    for _ in 0..2 * run.multiplicity - 1 {
                        assert_eq!(stages.rho[l], mu[2 * i], "{s}");
                        l += 1;
                    }
                    if i + 1 < stages.rle.len() {
                        assert_eq!(stages.rho[l], mu[2 * i + 1], "{s}");
                        l += 1;
                    }
                }
                assert_eq!(l, stages.rho.len());
            }
        }
    }

    #[test]
    fn bijection_onto_three_nonnesting_partitions() {
        for len in 1..=7 {
            let mut image = HashSet::new();
            for s in avoiders(len) {
                let p = ascent_to_partition(&s).unwrap();
                assert!(p.max_nesting() < 3, "{s} ↦ {p}");
                assert_eq!(partition_to_ascent(&p).unwrap(), s);
                assert!(image.insert(p));
            }
            let targets: HashSet<_> = enumerate_set_partitions(len).filter(|p| p.max_nesting() < 3).collect();
            assert_eq!(image, targets);
        }
    }
}

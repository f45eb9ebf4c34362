//! Pairwise attitude measures: conflict risk between node pairs, the
//! normalized risk/dialogue matrices, the 2-additive fuzzy measures they
//! induce, and the partition cohesion score built on top of them.

use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::SquareMatrix;
use crate::operators::OperatorConfig;

/// Per-node membership degrees toward the two attitude poles.
///
/// The degrees are independent: `eta_a + eta_b` need not equal 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipProfile {
    eta_a: Vec<f64>,
    eta_b: Vec<f64>,
}

impl MembershipProfile {
    pub fn new(eta_a: Vec<f64>, eta_b: Vec<f64>) -> Result<Self> {
        if eta_a.len() != eta_b.len() {
            return Err(Error::Config(format!(
                "pole vectors differ in length: {} vs {}",
                eta_a.len(),
                eta_b.len()
            )));
        }
        for (i, &v) in eta_a.iter().chain(eta_b.iter()).enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!(
                    "membership degree out of [0,1] at position {}: {v}",
                    i % eta_a.len()
                )));
            }
        }
        Ok(MembershipProfile { eta_a, eta_b })
    }

    /// Crisp profile from pole assignments: `true` puts the node fully at
    /// pole A, `false` fully at pole B.
    pub fn crisp(poles: &[bool]) -> Self {
        let eta_a = poles.iter().map(|&p| if p { 1.0 } else { 0.0 }).collect();
        let eta_b = poles.iter().map(|&p| if p { 0.0 } else { 1.0 }).collect();
        MembershipProfile { eta_a, eta_b }
    }

    pub fn len(&self) -> usize {
        self.eta_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eta_a.is_empty()
    }

    #[inline]
    pub fn toward_a(&self, i: usize) -> f64 {
        self.eta_a[i]
    }

    #[inline]
    pub fn toward_b(&self, i: usize) -> f64 {
        self.eta_b[i]
    }

    /// Profile with the two poles exchanged.
    pub fn pole_swapped(&self) -> Self {
        MembershipProfile {
            eta_a: self.eta_b.clone(),
            eta_b: self.eta_a.clone(),
        }
    }
}

/// Loads the membership CSV (`node,eta_a,eta_b`) and aligns it with the
/// graph's label set; missing or extra labels are reported together.
pub fn load_membership(path: &Path, graph: &WeightedGraph) -> Result<MembershipProfile> {
    let file = std::fs::File::open(path)?;
    load_membership_from_reader(file, graph)
}

pub fn load_membership_from_reader<R: io::Read>(
    reader: R,
    graph: &WeightedGraph,
) -> Result<MembershipProfile> {
    let rows = read_membership_rows(reader)?;
    let n = graph.node_count();
    let mut eta_a = vec![f64::NAN; n];
    let mut eta_b = vec![f64::NAN; n];
    let mut extra: Vec<String> = Vec::new();
    for (line, label, a, b) in rows {
        match graph.index_of(&label) {
            Some(i) => {
                if !eta_a[i].is_nan() {
                    return Err(Error::Parse {
                        line,
                        msg: format!("duplicate membership row for node {label:?}"),
                    });
                }
                eta_a[i] = a;
                eta_b[i] = b;
            }
            None => extra.push(label),
        }
    }

    let missing: Vec<String> = (0..n)
        .filter(|&i| eta_a[i].is_nan())
        .map(|i| graph.label(i).to_owned())
        .collect();
    if !missing.is_empty() || !extra.is_empty() {
        return Err(Error::LabelMismatch { missing, extra });
    }
    MembershipProfile::new(eta_a, eta_b)
}

/// Parses the membership CSV on its own: labels in file order plus the
/// profile. Used where no graph is around to align against.
pub fn load_membership_table<R: io::Read>(reader: R) -> Result<(Vec<String>, MembershipProfile)> {
    let rows = read_membership_rows(reader)?;
    let mut labels = Vec::with_capacity(rows.len());
    let mut eta_a = Vec::with_capacity(rows.len());
    let mut eta_b = Vec::with_capacity(rows.len());
    let mut seen = std::collections::HashSet::new();
    for (line, label, a, b) in rows {
        if !seen.insert(label.clone()) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate membership row for node {label:?}"),
            });
        }
        labels.push(label);
        eta_a.push(a);
        eta_b.push(b);
    }
    Ok((labels, MembershipProfile::new(eta_a, eta_b)?))
}

fn read_membership_rows<R: io::Read>(reader: R) -> Result<Vec<(u64, String, f64, f64)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })?
        .iter()
        .map(str::to_owned)
        .collect::<Vec<_>>();
    if headers != ["node", "eta_a", "eta_b"] {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected header node,eta_a,eta_b, got {headers:?}"),
        });
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            msg: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let label = record.get(0).unwrap_or("").to_owned();
        if label.is_empty() {
            return Err(Error::Parse {
                line,
                msg: "empty node label".into(),
            });
        }
        let parse = |field: usize| -> Result<f64> {
            let raw = record.get(field).unwrap_or("");
            let v: f64 = raw.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("bad membership degree {raw:?}"),
            })?;
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Parse {
                    line,
                    msg: format!("membership degree out of [0,1]: {v}"),
                });
            }
            Ok(v)
        };
        let (a, b) = (parse(1)?, parse(2)?);
        rows.push((line, label, a, b));
    }
    Ok(rows)
}

/// Conflict risk of the unordered pair `{i,j}`: the grouped overlap of the
/// two cross-pole configurations. Symmetric in `(i,j)` and in the poles.
pub fn pair_risk(i: usize, j: usize, prof: &MembershipProfile, cfg: &OperatorConfig) -> f64 {
    assert_ne!(i, j, "pair risk is undefined on the diagonal");
    let forward = cfg.overlap(prof.toward_a(i), prof.toward_b(j));
    let backward = cfg.overlap(prof.toward_a(j), prof.toward_b(i));
    cfg.grouping(forward, backward)
}

/// Negated pair risk: the capacity of `{i,j}` to dialogue.
pub fn pair_dialogue(i: usize, j: usize, prof: &MembershipProfile, cfg: &OperatorConfig) -> f64 {
    cfg.negation(pair_risk(i, j, prof, cfg))
}

/// Total conflict risk of the node set `s`: sum of [`pair_risk`] over its
/// unordered pairs. Zero for sets of size at most one; monotone in `s`.
pub fn jdj_pol(s: &[usize], prof: &MembershipProfile, cfg: &OperatorConfig) -> f64 {
    let mut total = 0.0;
    for (a, &i) in s.iter().enumerate() {
        for &j in &s[a + 1..] {
            total += pair_risk(i, j, prof, cfg);
        }
    }
    total
}

/// Which pair statistic a capacity matrix normalizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    /// Conflict risk between the pair.
    Risk,
    /// Negated risk: capacity to dialogue.
    Dialogue,
}

/// Symmetric, zero-diagonal, nonnegative matrix whose off-diagonal entries
/// sum to 1 over ordered pairs. Normalizer `D` is the ordered-pair total of
/// the raw pair values.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseCapacityMatrix {
    entries: SquareMatrix,
    kind: MatrixKind,
    normalizer: f64,
}

impl PairwiseCapacityMatrix {
    pub fn n(&self) -> usize {
        self.entries.n()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries.get(i, j)
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    /// The ordered-pair denominator `D` the raw values were divided by.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    pub fn entries(&self) -> &SquareMatrix {
        &self.entries
    }
}

fn build_matrix<F>(n: usize, kind: MatrixKind, pair_value: F) -> Result<PairwiseCapacityMatrix>
where
    F: Fn(usize, usize) -> f64,
{
    if n < 2 {
        return Err(Error::Config(format!(
            "a pairwise capacity matrix needs at least two nodes, got {n}"
        )));
    }
    let mut raw = SquareMatrix::zeros(n);
    // fixed ascending order for the normalizer so builds are bit-reproducible
    let mut unordered_total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = pair_value(i, j);
            raw.set(i, j, v);
            raw.set(j, i, v);
            unordered_total += v;
        }
    }
    let normalizer = 2.0 * unordered_total;
    if normalizer == 0.0 {
        return Err(match kind {
            MatrixKind::Risk => Error::DegeneratePolarization,
            MatrixKind::Dialogue => Error::DegenerateDialogue,
        });
    }
    raw.scale(1.0 / normalizer);
    Ok(PairwiseCapacityMatrix {
        entries: raw,
        kind,
        normalizer,
    })
}

/// Normalized conflict matrix: entry `(i,j)` is `pair_risk(i,j) / D` with
/// `D` the ordered-pair risk total. Errors when no pair conflicts at all.
pub fn build_risk_matrix(
    prof: &MembershipProfile,
    cfg: &OperatorConfig,
) -> Result<PairwiseCapacityMatrix> {
    build_matrix(prof.len(), MatrixKind::Risk, |i, j| {
        pair_risk(i, j, prof, cfg)
    })
}

/// Normalized dialogue matrix: entry `(i,j)` is `N(pair_risk(i,j)) / D`.
/// Errors when no pair can dialogue at all.
pub fn build_dialogue_matrix(
    prof: &MembershipProfile,
    cfg: &OperatorConfig,
) -> Result<PairwiseCapacityMatrix> {
    build_matrix(prof.len(), MatrixKind::Dialogue, |i, j| {
        pair_dialogue(i, j, prof, cfg)
    })
}

/// A fuzzy measure fully determined by a pairwise matrix: the value of a
/// set is the sum of the matrix over ordered pairs inside it.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoAdditiveFuzzyMeasure {
    matrix: PairwiseCapacityMatrix,
}

impl TwoAdditiveFuzzyMeasure {
    pub fn new(matrix: PairwiseCapacityMatrix) -> Self {
        TwoAdditiveFuzzyMeasure { matrix }
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn matrix(&self) -> &PairwiseCapacityMatrix {
        &self.matrix
    }

    /// Measure of the node set `s`; members must be distinct.
    pub fn value(&self, s: &[usize]) -> f64 {
        let mut total = 0.0;
        for (a, &i) in s.iter().enumerate() {
            for &j in &s[a + 1..] {
                total += 2.0 * self.matrix.get(i, j);
            }
        }
        total
    }

    /// Measure of the subset encoded as a bitmask (bit `i` = node `i`).
    /// Supports up to 64 nodes; handy for exhaustive checks.
    pub fn value_of_mask(&self, mask: u64) -> f64 {
        let n = self.n();
        let mut total = 0.0;
        for i in 0..n {
            if mask & (1 << i) == 0 {
                continue;
            }
            for j in (i + 1)..n {
                if mask & (1 << j) != 0 {
                    total += 2.0 * self.matrix.get(i, j);
                }
            }
        }
        total
    }
}

/// Convex combination of 2-additive measures: the matrices are combined
/// entrywise, and the resulting measure equals the same combination of the
/// input measures on every subset.
pub fn convex_combine(
    measures: &[TwoAdditiveFuzzyMeasure],
    weights: &[f64],
) -> Result<TwoAdditiveFuzzyMeasure> {
    if measures.is_empty() || measures.len() != weights.len() {
        return Err(Error::Config(format!(
            "need matching nonempty measures/weights, got {} vs {}",
            measures.len(),
            weights.len()
        )));
    }
    let total: f64 = weights.iter().sum();
    if weights.iter().any(|&w| w < 0.0) || (total - 1.0).abs() > 1e-12 {
        return Err(Error::Config(format!(
            "weights must be nonnegative and sum to 1, got sum {total}"
        )));
    }
    let n = measures[0].n();
    if measures.iter().any(|m| m.n() != n) {
        return Err(Error::Config("measure dimensions differ".into()));
    }
    let mut entries = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let v = measures
                .iter()
                .zip(weights)
                .map(|(m, &w)| w * m.matrix.get(i, j))
                .sum::<f64>();
            entries.set(i, j, v);
        }
    }
    let normalizer = measures
        .iter()
        .zip(weights)
        .map(|(m, &w)| w * m.matrix.normalizer)
        .sum();
    Ok(TwoAdditiveFuzzyMeasure::new(PairwiseCapacityMatrix {
        entries,
        kind: measures[0].matrix.kind,
        normalizer,
    }))
}

/// Denominator used when normalizing a community's conflict total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMode {
    /// Count only unordered pairs with strictly positive risk.
    PositivePairs,
    /// Count every unordered pair.
    AllPairs,
}

impl std::fmt::Display for NormMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            NormMode::PositivePairs => "positive-pairs",
            NormMode::AllPairs => "all-pairs",
        })
    }
}

impl std::str::FromStr for NormMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive-pairs" => Ok(NormMode::PositivePairs),
            "all-pairs" => Ok(NormMode::AllPairs),
            other => Err(Error::Config(format!(
                "unknown norm mode {other:?} (expected positive-pairs or all-pairs)"
            ))),
        }
    }
}

/// Normalized conflict level of one community.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommunityCohesion {
    pub id: usize,
    pub size: usize,
    /// Normalized conflict total in [0,1] under the report's mode.
    pub jdj: f64,
    /// Unordered pairs with strictly positive risk.
    pub positive_pairs: usize,
    /// All unordered pairs (`size choose 2`).
    pub total_pairs: usize,
    /// Set when the positive-pairs denominator was zero and the community
    /// contributed 0 by convention.
    pub degenerate: bool,
}

/// Per-community conflict levels plus their size-weighted average over the
/// non-isolated communities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CohesionReport {
    pub mode: NormMode,
    pub communities: Vec<CommunityCohesion>,
    pub pol: f64,
}

/// Scores a partition: each community with more than one node gets its
/// normalized conflict total, and `pol` is the size-weighted average over
/// those communities. Errors when every community is a singleton.
pub fn partition_cohesion(
    p: &Partition,
    prof: &MembershipProfile,
    cfg: &OperatorConfig,
    mode: NormMode,
) -> Result<CohesionReport> {
    assert_eq!(p.len(), prof.len(), "partition does not cover the profile");
    let mut communities = Vec::new();
    let mut weighted = 0.0;
    let mut size_total = 0usize;
    for (id, members) in p.communities().iter().enumerate() {
        if members.len() <= 1 {
            continue;
        }
        let total_pairs = members.len() * (members.len() - 1) / 2;
        let mut positive_pairs = 0usize;
        let mut jdj_total = 0.0;
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                let r = pair_risk(i, j, prof, cfg);
                if r > 0.0 {
                    positive_pairs += 1;
                }
                jdj_total += r;
            }
        }
        let denominator = match mode {
            NormMode::PositivePairs => positive_pairs,
            NormMode::AllPairs => total_pairs,
        };
        let degenerate = denominator == 0;
        let jdj = if degenerate {
            0.0
        } else {
            jdj_total / denominator as f64
        };
        weighted += jdj * members.len() as f64;
        size_total += members.len();
        communities.push(CommunityCohesion {
            id,
            size: members.len(),
            jdj,
            positive_pairs,
            total_pairs,
            degenerate,
        });
    }
    if communities.is_empty() {
        return Err(Error::UndefinedScore);
    }
    Ok(CohesionReport {
        mode,
        communities,
        pol: weighted / size_total as f64,
    })
}

//! Modularity, the classic local-moving Louvain algorithm, and its blended
//! variant where one matrix restricts candidate moves and another scores
//! them.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::{associated_graph, AssociatedGraphMatrix};
use crate::error::{Error, Result};
use crate::graph::{WeightedGraph, WeightedMatrix};
use crate::matrix::SquareMatrix;
use crate::operators::OperatorConfig;
use crate::polarization::{
    build_dialogue_matrix, partition_cohesion, CohesionReport, MembershipProfile, NormMode,
    TwoAdditiveFuzzyMeasure,
};

/// Node-to-community assignment with ids compacted to `0..count` in order
/// of first appearance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    communities: Vec<Vec<usize>>,
}

impl Partition {
    /// Compacts arbitrary community ids into contiguous ones.
    pub fn from_assignment(raw: Vec<usize>) -> Self {
        let mut remap: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut assignment = Vec::with_capacity(raw.len());
        let mut communities: Vec<Vec<usize>> = Vec::new();
        for (node, &raw_id) in raw.iter().enumerate() {
            let id = *remap.entry(raw_id).or_insert_with(|| {
                communities.push(Vec::new());
                communities.len() - 1
            });
            assignment.push(id);
            communities[id].push(node);
        }
        Partition {
            assignment,
            communities,
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition::from_assignment((0..n).collect())
    }

    /// Number of nodes covered.
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn community_count(&self) -> usize {
        self.communities.len()
    }

    #[inline]
    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn communities(&self) -> &[Vec<usize>] {
        &self.communities
    }

    pub fn community(&self, id: usize) -> &[usize] {
        &self.communities[id]
    }

    /// Communities with more than one node.
    pub fn non_singleton_count(&self) -> usize {
        self.communities.iter().filter(|c| c.len() > 1).count()
    }
}

/// Mixing weight for the move-scoring matrix: `M = gamma*A + (1-gamma)*F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlendSpec {
    pub gamma: f64,
    /// Rescale `F` so both summands carry the same total mass before mixing.
    pub rescale: bool,
}

impl BlendSpec {
    pub fn new(gamma: f64, rescale: bool) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::Config(format!("gamma must be in [0,1], got {gamma}")));
        }
        Ok(BlendSpec { gamma, rescale })
    }

    pub fn structural_only() -> Self {
        BlendSpec {
            gamma: 1.0,
            rescale: false,
        }
    }
}

/// One recorded pass: the global partition after the pass and the
/// modularity of the component being processed at that point.
#[derive(Debug, Clone)]
pub struct PassRecord {
    /// Index of the connected component this pass ran on.
    pub component: usize,
    /// Snapshot of the full-graph partition after the pass.
    pub partition: Partition,
    /// Modularity of the component's scoring matrix under its partition.
    pub q: f64,
}

/// Pass-by-pass record of a detection run.
#[derive(Debug, Clone)]
pub struct LouvainTrace {
    pub seed: u64,
    pub passes: Vec<PassRecord>,
}

/// Newman-Girvan modularity over ordered pairs, self-weights included.
pub fn modularity(w: &WeightedMatrix, p: &Partition) -> Result<f64> {
    assert_eq!(p.len(), w.n(), "partition does not cover the matrix");
    let two_m = 2.0 * w.total_weight();
    if two_m <= 0.0 {
        return Err(Error::UndefinedModularity);
    }
    let mut q = 0.0;
    for members in p.communities() {
        let mut internal = 0.0;
        let mut strength = 0.0;
        for (a, &i) in members.iter().enumerate() {
            internal += 2.0 * w.self_weight(i);
            strength += w.strength(i);
            for &j in &members[a + 1..] {
                internal += 2.0 * w.weight(i, j);
            }
        }
        q += internal / two_m - (strength / two_m).powi(2);
    }
    Ok(q)
}

/// Mutable community bookkeeping during a local-moving sweep; exposes the
/// single-move modularity gain.
pub struct LouvainState<'a> {
    w: &'a WeightedMatrix,
    assignment: Vec<usize>,
    community_strength: Vec<f64>,
    two_m: f64,
}

impl<'a> LouvainState<'a> {
    pub fn new(w: &'a WeightedMatrix, p: &Partition) -> Self {
        assert_eq!(p.len(), w.n(), "partition does not cover the matrix");
        let mut community_strength = vec![0.0; p.community_count()];
        for i in 0..w.n() {
            community_strength[p.community_of(i)] += w.strength(i);
        }
        LouvainState {
            w,
            assignment: p.assignment().to_vec(),
            community_strength,
            two_m: 2.0 * w.total_weight(),
        }
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    /// Modularity gain of moving `node` alone into `target`. Zero for a
    /// move back into its current community.
    pub fn delta_q(&self, node: usize, target: usize) -> f64 {
        assert!(
            target < self.community_strength.len(),
            "unknown community id {target}"
        );
        let current = self.assignment[node];
        if current == target || self.two_m == 0.0 {
            return 0.0;
        }
        let mut to_target = 0.0;
        let mut to_current = 0.0;
        for (j, &w_ij) in self.w.adjacency().row(node).iter().enumerate() {
            if w_ij == 0.0 || j == node {
                continue;
            }
            let c = self.assignment[j];
            if c == target {
                to_target += w_ij;
            } else if c == current {
                to_current += w_ij;
            }
        }
        let k = self.w.strength(node);
        let sigma_target = self.community_strength[target];
        let sigma_current = self.community_strength[current] - k;
        let inv = 1.0 / self.two_m;
        2.0 * inv * (to_target - to_current) - 2.0 * k * inv * inv * (sigma_target - sigma_current)
    }

    pub fn move_node(&mut self, node: usize, target: usize) {
        let current = self.assignment[node];
        if current == target {
            return;
        }
        let k = self.w.strength(node);
        self.community_strength[current] -= k;
        self.community_strength[target] += k;
        self.assignment[node] = target;
    }

    /// Compacted snapshot of the current assignment.
    pub fn partition(&self) -> Partition {
        Partition::from_assignment(self.assignment.clone())
    }
}

/// Classic Louvain: local moving to a fixed point, aggregation, repeat.
/// Disconnected inputs are processed per component (ids offset), with a
/// warning.
pub fn louvain(w: &WeightedMatrix, seed: u64) -> Result<(Partition, LouvainTrace)> {
    if 2.0 * w.total_weight() <= 0.0 {
        return Err(Error::UndefinedModularity);
    }
    detect(w, w, seed)
}

/// Louvain with split roles: `g`'s adjacency restricts candidate moves to
/// communities of its neighbors, while gains are scored on the blend
/// `M = gamma*A + (1-gamma)*F`. At `gamma = 1` this is exactly [`louvain`].
pub fn polarization_louvain(
    g: &WeightedGraph,
    f: &AssociatedGraphMatrix,
    spec: &BlendSpec,
    seed: u64,
) -> Result<(Partition, LouvainTrace)> {
    let a = g.matrix();
    if 2.0 * a.total_weight() <= 0.0 {
        return Err(Error::UndefinedModularity);
    }
    let m = blend(a, f, spec);
    detect(a, &m, seed)
}

/// Entrywise mix of the structural and measure-derived matrices. With
/// `rescale`, `F` is first multiplied by `sum(A)/sum(F)` so both summands
/// carry the same mass.
pub fn blend(a: &WeightedMatrix, f: &AssociatedGraphMatrix, spec: &BlendSpec) -> WeightedMatrix {
    assert_eq!(a.n(), f.n(), "dimension mismatch: {} vs {}", a.n(), f.n());
    let gamma = spec.gamma;
    let f_entries = if spec.rescale {
        let mass_a = 2.0 * a.total_weight();
        let mass_f = f.entries().grand_sum();
        assert!(mass_f > 0.0, "cannot rescale an all-zero matrix");
        let mut scaled = f.entries().clone();
        scaled.scale(mass_a / mass_f);
        scaled
    } else {
        f.entries().clone()
    };
    let adj = SquareMatrix::linear_combination(a.adjacency(), gamma, &f_entries, 1.0 - gamma);
    let self_weight = (0..a.n()).map(|i| gamma * a.self_weight(i)).collect();
    WeightedMatrix::new(adj, self_weight)
}

/// Shared engine: neighbor relations from `a`, gains from `m`.
fn detect(a: &WeightedMatrix, m: &WeightedMatrix, seed: u64) -> Result<(Partition, LouvainTrace)> {
    let n = a.n();
    assert_eq!(m.n(), n, "matrix dimensions differ");
    let decomposition = a.components();
    if decomposition.components.len() > 1 {
        log::warn!(
            "input graph is disconnected ({} components); each is clustered independently",
            decomposition.components.len()
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // nodes of not-yet-processed components sit in singleton placeholders
    // (ids >= n, disjoint from the assigned range) so trace snapshots stay
    // honest
    let mut global: Vec<usize> = (n..2 * n).collect();
    let mut trace = LouvainTrace {
        seed,
        passes: Vec::new(),
    };
    let mut id_offset = 0usize;

    for (comp_idx, nodes) in decomposition.components.iter().enumerate() {
        let a_comp = a.induced(nodes);
        let m_comp = m.induced(nodes);
        // initial placement: every node of the component in its own community
        for (local, &orig) in nodes.iter().enumerate() {
            global[orig] = id_offset + local;
        }
        let mut membership: Vec<usize> = (0..nodes.len()).collect();
        let mut a_lvl = a_comp.clone();
        let mut m_lvl = m_comp;

        loop {
            let n_lvl = a_lvl.n();
            let mut order: Vec<usize> = (0..n_lvl).collect();
            order.shuffle(&mut rng);

            let mut state = LouvainState::new(&m_lvl, &Partition::singletons(n_lvl));
            loop {
                let mut moved = false;
                for &node in &order {
                    let current = state.community_of(node);
                    let mut candidates: Vec<usize> = a_lvl
                        .neighbors(node)
                        .map(|j| state.community_of(j))
                        .filter(|&c| c != current)
                        .collect();
                    candidates.sort_unstable();
                    candidates.dedup();
                    let mut best: Option<usize> = None;
                    let mut best_gain = 0.0;
                    for c in candidates {
                        let gain = state.delta_q(node, c);
                        if gain > best_gain {
                            best_gain = gain;
                            best = Some(c);
                        }
                    }
                    if let Some(target) = best {
                        state.move_node(node, target);
                        moved = true;
                    }
                }
                if !moved {
                    break;
                }
            }

            let p_lvl = state.partition();
            for slot in &mut membership {
                *slot = p_lvl.community_of(*slot);
            }
            for (local, &orig) in nodes.iter().enumerate() {
                global[orig] = id_offset + membership[local];
            }
            let q = modularity(&m_lvl, &p_lvl).unwrap_or(0.0);
            trace.passes.push(PassRecord {
                component: comp_idx,
                partition: Partition::from_assignment(global.clone()),
                q,
            });

            if p_lvl.community_count() == n_lvl {
                break;
            }
            a_lvl = a_lvl.aggregate(&p_lvl);
            m_lvl = m_lvl.aggregate(&p_lvl);
        }

        // Local moving can strand a community without an internal path when
        // a cut vertex leaves it; split such communities into their
        // connected parts so every community induces a connected subgraph
        // of the neighbor matrix. Splitting along absent edges only raises
        // structural modularity.
        let id_count = split_disconnected(&a_comp, &mut membership);
        for (local, &orig) in nodes.iter().enumerate() {
            global[orig] = id_offset + membership[local];
        }
        id_offset += id_count;
    }

    Ok((Partition::from_assignment(global), trace))
}

/// Rewrites `assignment` so every community is connected in `a`; returns
/// the new community count. Parts keep min-index order for determinism.
fn split_disconnected(a: &WeightedMatrix, assignment: &mut [usize]) -> usize {
    let p = Partition::from_assignment(assignment.to_vec());
    let mut next = 0usize;
    for members in p.communities() {
        let inside: std::collections::HashSet<usize> = members.iter().copied().collect();
        let mut seen: std::collections::HashSet<usize> = std::collections::HashSet::new();
        for &start in members {
            if seen.contains(&start) {
                continue;
            }
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                assignment[u] = next;
                for v in a.neighbors(u) {
                    if inside.contains(&v) && seen.insert(v) {
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
    }
    next
}

/// One sweep row: a detection outcome and its scores.
#[derive(Debug, Clone)]
pub struct SweepRow {
    /// `None` marks the classic-Louvain baseline.
    pub gamma: Option<f64>,
    pub partition: Partition,
    /// Modularity of the partition on the structural matrix `A`, so rows
    /// are comparable across gammas.
    pub q: f64,
    pub cohesion: CohesionReport,
}

/// Baseline plus one row per gamma, all from the same seed.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub seed: u64,
    pub rescale: bool,
    pub norm_mode: NormMode,
    pub rows: Vec<SweepRow>,
}

/// Runs the baseline and one blended detection per gamma, scoring each
/// partition's cohesion. Rows are computed concurrently; results are
/// deterministic for a given seed.
pub fn gamma_sweep(
    g: &WeightedGraph,
    prof: &MembershipProfile,
    cfg: &OperatorConfig,
    gammas: &[f64],
    seed: u64,
    norm_mode: NormMode,
    rescale: bool,
) -> Result<SweepReport> {
    if gammas.is_empty() {
        return Err(Error::Config("gamma list is empty".into()));
    }
    if let Some(bad) = gammas.iter().find(|g| !(0.0..=1.0).contains(*g)) {
        return Err(Error::Config(format!("gamma must be in [0,1], got {bad}")));
    }
    let measure = TwoAdditiveFuzzyMeasure::new(build_dialogue_matrix(prof, cfg)?);
    let f = associated_graph(&measure, cfg);

    let score = |gamma: Option<f64>| -> Result<SweepRow> {
        let (partition, _) = match gamma {
            None => louvain(g.matrix(), seed)?,
            Some(gamma) => {
                let spec = BlendSpec::new(gamma, rescale)?;
                polarization_louvain(g, &f, &spec, seed)?
            }
        };
        let q = modularity(g.matrix(), &partition)?;
        let cohesion = partition_cohesion(&partition, prof, cfg, norm_mode)?;
        Ok(SweepRow {
            gamma,
            partition,
            q,
            cohesion,
        })
    };

    let mut jobs: Vec<Option<f64>> = vec![None];
    jobs.extend(gammas.iter().copied().map(Some));
    let rows: Vec<SweepRow> = jobs
        .into_par_iter()
        .map(score)
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepReport {
        seed,
        rescale,
        norm_mode,
        rows,
    })
}

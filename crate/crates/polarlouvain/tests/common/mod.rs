//! Shared fixtures and independent oracles for the integration suites.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polarlouvain::{
    modularity, MembershipProfile, Partition, WeightedGraph, WeightedMatrix,
};

/// 7-node fixture adjacency (unit weights).
pub fn seven_node_adjacency() -> WeightedMatrix {
    let rows = [
        [0, 1, 1, 0, 1, 0, 1],
        [1, 0, 1, 0, 0, 0, 0],
        [1, 1, 0, 1, 1, 0, 1],
        [0, 0, 1, 0, 1, 0, 0],
        [1, 0, 1, 1, 0, 1, 1],
        [0, 0, 0, 0, 1, 0, 1],
        [1, 0, 1, 0, 1, 1, 0],
    ];
    let mut edges = Vec::new();
    for i in 0..7 {
        for j in (i + 1)..7 {
            if rows[i][j] == 1 {
                edges.push((i, j, 1.0));
            }
        }
    }
    WeightedMatrix::from_edges(7, &edges)
}

pub fn seven_node_graph() -> WeightedGraph {
    let labels = (1..=7).map(|i| i.to_string()).collect();
    WeightedGraph::from_parts(labels, seven_node_adjacency())
}

/// 7-node fixture membership degrees.
pub fn seven_node_profile() -> MembershipProfile {
    MembershipProfile::new(
        vec![0.022, 0.756, 0.751, 0.5, 0.001, 0.102, 0.889],
        vec![0.878, 0.144, 0.099, 0.5, 0.989, 0.888, 0.112],
    )
    .unwrap()
}

/// Printed dialogue-matrix entries of the 7-node fixture (3 decimals,
/// before the 1/22.574 normalization).
pub fn seven_node_printed_dialogue() -> [[f64; 7]; 7] {
    [
        [0.000, 0.336, 0.341, 0.561, 0.978, 0.910, 0.219],
        [0.336, 0.000, 0.892, 0.622, 0.252, 0.329, 0.872],
        [0.341, 0.892, 0.000, 0.625, 0.257, 0.333, 0.912],
        [0.561, 0.622, 0.625, 0.000, 0.506, 0.556, 0.556],
        [0.978, 0.252, 0.257, 0.506, 0.000, 0.899, 0.121],
        [0.910, 0.329, 0.333, 0.556, 0.899, 0.000, 0.211],
        [0.219, 0.872, 0.912, 0.556, 0.121, 0.211, 0.000],
    ]
}

pub const SEVEN_NODE_PRINTED_NORMALIZER: f64 = 22.574;

/// 8-node crisp profile: poles A,B,B,A,A,A,B,B.
pub fn eight_node_profile() -> MembershipProfile {
    MembershipProfile::crisp(&[true, false, false, true, true, true, false, false])
}

/// Conflict 0/1 pattern of the 8-node profile (cross-pole pairs).
pub fn eight_node_risk_pattern() -> [[f64; 8]; 8] {
    [
        [0., 1., 1., 0., 0., 0., 1., 1.],
        [1., 0., 0., 1., 1., 1., 0., 0.],
        [1., 0., 0., 1., 1., 1., 0., 0.],
        [0., 1., 1., 0., 0., 0., 1., 1.],
        [0., 1., 1., 0., 0., 0., 1., 1.],
        [0., 1., 1., 0., 0., 0., 1., 1.],
        [1., 0., 0., 1., 1., 1., 0., 0.],
        [1., 0., 0., 1., 1., 1., 0., 0.],
    ]
}

/// Dialogue 0/1 pattern of the 8-node profile (same-pole pairs, off
/// diagonal).
pub fn eight_node_dialogue_pattern() -> [[f64; 8]; 8] {
    [
        [0., 0., 0., 1., 1., 1., 0., 0.],
        [0., 0., 1., 0., 0., 0., 1., 1.],
        [0., 1., 0., 0., 0., 0., 1., 1.],
        [1., 0., 0., 0., 1., 1., 0., 0.],
        [1., 0., 0., 1., 0., 1., 0., 0.],
        [1., 0., 0., 1., 1., 0., 0., 0.],
        [0., 1., 1., 0., 0., 0., 0., 1.],
        [0., 1., 1., 0., 0., 0., 1., 0.],
    ]
}

/// 4-node crisp profile alternating poles: A,B,A,B.
pub fn four_node_profile() -> MembershipProfile {
    MembershipProfile::crisp(&[true, false, true, false])
}

/// Two 4-cycles joined by one bridge edge (3-4 in 0-based indices).
pub fn two_wheel_graph() -> WeightedGraph {
    WeightedGraph::from_edges(
        8,
        &[
            (0, 1, 1.0),
            (1, 2, 1.0),
            (2, 3, 1.0),
            (3, 0, 1.0),
            (4, 5, 1.0),
            (5, 6, 1.0),
            (6, 7, 1.0),
            (7, 4, 1.0),
            (3, 4, 1.0),
        ],
    )
}

/// Crisp attitude vector +,-,-,+,+,+,-,- on the two-wheel graph.
pub fn two_wheel_profile() -> MembershipProfile {
    MembershipProfile::crisp(&[true, false, false, true, true, true, false, false])
}

/// All set partitions of `{0..n}` as restricted growth strings.
pub fn enumerate_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(a: &mut Vec<usize>, i: usize, max_used: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(a.clone());
            return;
        }
        for c in 0..=max_used {
            a.push(c);
            rec(a, i + 1, max_used.max(c + 1), n, out);
            a.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), 0, 0, n, &mut out);
    out
}

/// Exhaustive modularity maximum over all partitions of the matrix's nodes.
pub fn exhaustive_best_q(w: &WeightedMatrix) -> (f64, Partition) {
    let mut best_q = f64::NEG_INFINITY;
    let mut best = Partition::singletons(w.n());
    for assignment in enumerate_partitions(w.n()) {
        let p = Partition::from_assignment(assignment);
        let q = modularity(w, &p).unwrap();
        if q > best_q {
            best_q = q;
            best = p;
        }
    }
    (best_q, best)
}

/// Connected random graph: a random attachment tree plus extra edges.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, extra_edge_prob: f64) -> WeightedMatrix {
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((j, i, rng.gen_range(1..=3) as f64));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < extra_edge_prob {
                edges.push((i, j, rng.gen_range(1..=3) as f64));
            }
        }
    }
    WeightedMatrix::from_edges(n, &edges)
}

/// Sparse random graph that may be disconnected; always has at least one
/// edge.
pub fn random_sparse_graph(rng: &mut ChaCha8Rng, n: usize, edge_prob: f64) -> WeightedMatrix {
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen::<f64>() < edge_prob {
                    edges.push((i, j, 1.0));
                }
            }
        }
        if !edges.is_empty() {
            return WeightedMatrix::from_edges(n, &edges);
        }
    }
}

pub fn random_profile(rng: &mut ChaCha8Rng, n: usize) -> MembershipProfile {
    let eta_a = (0..n).map(|_| rng.gen::<f64>()).collect();
    let eta_b = (0..n).map(|_| rng.gen::<f64>()).collect();
    MembershipProfile::new(eta_a, eta_b).unwrap()
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// True when every community with more than one node induces a connected
/// subgraph of `a`.
pub fn communities_connected_in(a: &WeightedMatrix, p: &Partition) -> bool {
    for members in p.communities() {
        if members.len() <= 1 {
            continue;
        }
        let inside: std::collections::HashSet<usize> = members.iter().copied().collect();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![members[0]];
        seen.insert(members[0]);
        while let Some(u) = stack.pop() {
            for v in a.neighbors(u) {
                if inside.contains(&v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        if seen.len() != members.len() {
            return false;
        }
    }
    true
}

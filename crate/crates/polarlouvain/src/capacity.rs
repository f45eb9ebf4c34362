//! Shapley values of fuzzy measures: an exact permutation average for
//! small ground sets (the oracle) and the O(n) row-sum form that holds for
//! 2-additive measures, plus the weighted graph summarizing a measure.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::operators::{OperatorConfig, Symmetrizer};
use crate::polarization::TwoAdditiveFuzzyMeasure;

/// Factorial cost guard for the permutation oracle.
pub const BRUTE_FORCE_MAX_NODES: usize = 10;

/// Exact Shapley values of an arbitrary set function over `{0..n}`,
/// averaged over all `n!` orderings. Subsets are bitmasks (bit `i` = node
/// `i`); `mu` need not be 2-additive, or even a capacity.
pub fn shapley_brute_force_all<F>(n: usize, mu: F) -> Result<Vec<f64>>
where
    F: Fn(u64) -> f64,
{
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(Error::SizeLimit {
            n,
            max: BRUTE_FORCE_MAX_NODES,
        });
    }
    assert!(n > 0, "empty ground set");
    let mut totals = vec![0.0; n];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0u64;
    // Heap's algorithm, iterative form
    let mut stack = vec![0usize; n];
    let visit = |perm: &[usize], totals: &mut [f64]| {
        let mut mask = 0u64;
        let mut prev = mu(0);
        for &node in perm {
            mask |= 1 << node;
            let curr = mu(mask);
            totals[node] += curr - prev;
            prev = curr;
        }
    };
    visit(&perm, &mut totals);
    count += 1;
    let mut i = 1;
    while i < n {
        if stack[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(stack[i], i);
            }
            visit(&perm, &mut totals);
            count += 1;
            stack[i] += 1;
            i = 1;
        } else {
            stack[i] = 0;
            i += 1;
        }
    }
    let factorial = count as f64;
    Ok(totals.into_iter().map(|t| t / factorial).collect())
}

/// Shapley value of a single node under the permutation oracle.
pub fn shapley_brute_force<F>(n: usize, mu: F, node: usize) -> Result<f64>
where
    F: Fn(u64) -> f64,
{
    assert!(node < n, "node {node} out of range");
    Ok(shapley_brute_force_all(n, mu)?[node])
}

/// Shapley value of `node` for a 2-additive measure: the row sum of its
/// pairwise matrix, ascending column order.
pub fn shapley_closed_form(m: &TwoAdditiveFuzzyMeasure, node: usize) -> f64 {
    m.matrix().entries().row_sum(node)
}

/// Shapley value of `node` when `removed` is dropped from the ground set,
/// with the measure left unrenormalized: the row sum minus the removed
/// column.
pub fn shapley_restricted(m: &TwoAdditiveFuzzyMeasure, node: usize, removed: usize) -> f64 {
    assert_ne!(node, removed, "cannot restrict a node against itself");
    shapley_closed_form(m, node) - m.matrix().get(node, removed)
}

/// All Shapley values of a 2-additive measure. Sums to the measure of the
/// full set, i.e. 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapleyVector {
    values: Vec<f64>,
}

impl ShapleyVector {
    pub fn of(m: &TwoAdditiveFuzzyMeasure) -> Self {
        let values = (0..m.n()).map(|i| shapley_closed_form(m, i)).collect();
        ShapleyVector { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }
}

/// Entrywise symmetrization `F_ij = xi(P_ij, P_ji)` with a zero diagonal.
pub fn symmetrize(p: &SquareMatrix, xi: Symmetrizer) -> SquareMatrix {
    let n = p.n();
    let mut f = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                f.set(i, j, xi.eval(p.get(i, j), p.get(j, i)));
            }
        }
    }
    f
}

/// The weighted graph summarizing a fuzzy measure: edge `(i,j)` carries the
/// symmetrized pair of directed Shapley losses `Sh_i - Sh_i^j` and
/// `Sh_j - Sh_j^i`. For 2-additive measures those losses are just the
/// matrix entries, so no permutation work is ever done here.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociatedGraphMatrix {
    entries: SquareMatrix,
    symmetrizer: Symmetrizer,
}

impl AssociatedGraphMatrix {
    pub fn n(&self) -> usize {
        self.entries.n()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries.get(i, j)
    }

    pub fn entries(&self) -> &SquareMatrix {
        &self.entries
    }

    pub fn symmetrizer(&self) -> Symmetrizer {
        self.symmetrizer
    }
}

/// Builds the associated weighted graph of a 2-additive measure.
pub fn associated_graph(
    m: &TwoAdditiveFuzzyMeasure,
    cfg: &OperatorConfig,
) -> AssociatedGraphMatrix {
    AssociatedGraphMatrix {
        entries: symmetrize(m.matrix().entries(), cfg.symmetrizer),
        symmetrizer: cfg.symmetrizer,
    }
}

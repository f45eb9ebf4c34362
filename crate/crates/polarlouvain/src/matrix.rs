//! Dense square matrix used for adjacency and pairwise-capacity storage.

/// Row-major dense square matrix of `f64`.
///
/// Small enough for the graphs this crate targets (a few hundred nodes);
/// the pairwise matrices are dense by construction anyway.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = SquareMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Row sum in ascending column order (fixed order keeps runs reproducible).
    pub fn row_sum(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    /// Grand sum over all entries, row by row.
    pub fn grand_sum(&self) -> f64 {
        (0..self.n).map(|i| self.row_sum(i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.data {
            *v *= factor;
        }
    }

    /// Entrywise `a*alpha + b*beta`.
    pub fn linear_combination(a: &SquareMatrix, alpha: f64, b: &SquareMatrix, beta: f64) -> Self {
        assert_eq!(a.n, b.n, "dimension mismatch: {} vs {}", a.n, b.n);
        let data = a
            .data
            .iter()
            .zip(&b.data)
            .map(|(&x, &y)| alpha * x + beta * y)
            .collect();
        SquareMatrix { n: a.n, data }
    }
}

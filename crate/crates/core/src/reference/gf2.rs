//! Bit-packed linear algebra over GF(2) for cycle incidence vectors.

use crate::graph::EdgeId;

/// Rows are incidence vectors over `cols` edge ids.
#[derive(Clone, Debug, Default)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Vec<u64>>,
}

fn words(cols: usize) -> usize {
    cols.div_ceil(64)
}

fn highest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
}

impl Gf2Matrix {
    pub fn new(cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Appends the incidence vector of `edges`; repeated ids cancel.
    pub fn push_edges(&mut self, edges: &[EdgeId]) {
        let mut row = vec![0u64; words(self.cols)];
        for &e in edges {
            assert!(e < self.cols, "edge {e} outside {} columns", self.cols);
            row[e / 64] ^= 1 << (e % 64);
        }
        self.rows.push(row);
    }

    pub fn rank(&self) -> usize {
        let mut basis = Gf2Basis::new(self.cols);
        self.rows
            .iter()
            .filter(|r| basis.insert_row((*r).clone()))
            .count()
    }
}

/// Incrementally grown row-echelon basis keyed by leading bit.
#[derive(Clone, Debug)]
pub struct Gf2Basis {
    cols: usize,
    pivots: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl Gf2Basis {
    pub fn new(cols: usize) -> Self {
        Gf2Basis {
            cols,
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Inserts the incidence vector of `edges`; false if it was dependent.
    pub fn insert_edges(&mut self, edges: &[EdgeId]) -> bool {
        let mut row = vec![0u64; words(self.cols)];
        for &e in edges {
            row[e / 64] ^= 1 << (e % 64);
        }
        self.insert_row(row)
    }

    fn insert_row(&mut self, mut row: Vec<u64>) -> bool {
        while let Some(p) = highest_bit(&row) {
            match &self.pivots[p] {
                Some(b) => {
                    for (x, y) in row[..=p / 64].iter_mut().zip(&b[..=p / 64]) {
                        *x ^= *y;
                    }
                }
                None => {
                    self.pivots[p] = Some(row);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Rank of the incidence vectors of `cycles` over `m` edges.
pub fn gf2_rank(m: usize, cycles: &[Vec<EdgeId>]) -> usize {
    let mut mat = Gf2Matrix::new(m);
    for c in cycles {
        mat.push_edges(c);
    }
    mat.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_identity() {
        assert_eq!(Gf2Matrix::new(10).rank(), 0);
        let mut m = Gf2Matrix::new(130);
        for i in [0, 64, 65, 129] {
            m.push_edges(&[i]);
        }
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn dependent_rows() {
        // K_{2,3} edges 0..6: cycles through legs (a,b), (b,c), (a,c)
        let c1 = vec![0, 1, 2, 3];
        let c2 = vec![2, 3, 4, 5];
        let c3 = vec![0, 1, 4, 5];
        assert_eq!(gf2_rank(6, &[c1.clone(), c2.clone()]), 2);
        assert_eq!(gf2_rank(6, &[c1.clone(), c2.clone(), c3]), 2);
        assert_eq!(gf2_rank(6, &[c1.clone(), c1]), 1);
    }
}

//! Linear systems over GF(2) with Fredholm-alternative certificates.
//!
//! Elimination keeps, for every working row, the set of original rows that
//! were added together to produce it. When a row reduces to `0 = 1`, that set
//! is a vector `y` with `Mᵀ y = 0` and `bᵀ y = 1`. Columns are never reordered.

use crate::bits::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<BitSet>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: vec![BitSet::new(cols); rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitSet>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::input(format!(
                "row of width {} in a {cols}-column matrix",
                r.len()
            )));
        }
        Ok(Gf2Matrix { cols, rows })
    }

    /// Builds from 0/1 rows; handy in tests.
    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| BitSet::from_indices(cols, r.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i)))
            .collect();
        Gf2Matrix { cols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].contains(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    pub fn row(&self, r: usize) -> &BitSet {
        &self.rows[r]
    }

    pub fn push_row(&mut self, row: BitSet) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter() {
                t.rows[c].insert(r);
            }
        }
        t
    }

    /// `M x`.
    pub fn mul_vec(&self, x: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.rows.len(),
            self.rows.iter().enumerate().filter(|(_, r)| r.dot(x)).map(|(i, _)| i),
        )
    }

    /// `Mᵀ y`.
    pub fn transpose_mul_vec(&self, y: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.cols);
        for r in y.iter() {
            out.xor_with(&self.rows[r]);
        }
        out
    }

    pub fn rank(&self) -> usize {
        Gf2System::new(self.clone(), BitSet::new(self.rows.len()))
            .expect("matching rhs")
            .eliminate()
            .rank
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2System {
    pub matrix: Gf2Matrix,
    pub rhs: BitSet,
}

/// Result of one elimination pass.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub rank: usize,
    /// Pivot column of each of the first `rank` reduced rows.
    pub pivots: Vec<usize>,
    /// A solution with all free variables zero, if the system is consistent.
    pub solution: Option<BitSet>,
    /// Certificate of inconsistency: `Mᵀ y = 0`, `bᵀ y = 1`.
    pub certificate: Option<BitSet>,
}

impl Gf2System {
    pub fn new(matrix: Gf2Matrix, rhs: BitSet) -> Result<Self> {
        if rhs.len() != matrix.nrows() {
            return Err(Error::input(format!(
                "rhs length {} does not match {} rows",
                rhs.len(),
                matrix.nrows()
            )));
        }
        Ok(Gf2System { matrix, rhs })
    }

    pub fn eliminate(&self) -> Elimination {
        let m = self.matrix.nrows();
        let cols = self.matrix.ncols();
        let mut coef: Vec<BitSet> = self.matrix.rows.clone();
        let mut rhs: Vec<bool> = (0..m).map(|r| self.rhs.contains(r)).collect();
        let mut combo: Vec<BitSet> = (0..m).map(|r| BitSet::from_indices(m, [r])).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..cols {
            let Some(p) = (next..m).find(|&r| coef[r].contains(c)) else {
                continue;
            };
            coef.swap(next, p);
            rhs.swap(next, p);
            combo.swap(next, p);
            let (pc, pr, pk) = (coef[next].clone(), rhs[next], combo[next].clone());
            for r in 0..m {
                if r != next && coef[r].contains(c) {
                    coef[r].xor_with(&pc);
                    rhs[r] ^= pr;
                    combo[r].xor_with(&pk);
                }
            }
            pivots.push(c);
            next += 1;
        }
        let rank = next;
        let bad = (rank..m).find(|&r| rhs[r]);
        let (solution, certificate) = match bad {
            Some(r) => (None, Some(combo[r].clone())),
            None => {
                let mut x = BitSet::new(cols);
                for (i, &c) in pivots.iter().enumerate() {
                    x.set(c, rhs[i]);
                }
                (Some(x), None)
            }
        };
        Elimination {
            rank,
            pivots,
            solution,
            certificate,
        }
    }

    pub fn solve(&self) -> Option<BitSet> {
        self.eliminate().solution
    }

    /// `log2` of the number of solutions, `None` when there are none.
    pub fn solution_count_log2(&self) -> Option<usize> {
        let e = self.eliminate();
        e.solution.map(|_| self.matrix.ncols() - e.rank)
    }

    pub fn fredholm_certificate(&self) -> Option<BitSet> {
        self.eliminate().certificate
    }

    /// Checks `Mᵀ y = 0` and `bᵀ y = 1`.
    pub fn is_certificate(&self, y: &BitSet) -> bool {
        y.len() == self.matrix.nrows() && self.matrix.transpose_mul_vec(y).is_empty() && self.rhs.dot(y)
    }

    pub fn is_solution(&self, x: &BitSet) -> bool {
        x.len() == self.matrix.ncols() && self.matrix.mul_vec(x) == self.rhs
    }
}

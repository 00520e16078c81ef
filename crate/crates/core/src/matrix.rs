//! Dense square matrices over the Gaussian rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::gaussian::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        ExactMatrix { dim, data: vec![GaussianRational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    /// Builds from rows; panics if the rows are not square.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix rows must be square");
        ExactMatrix { dim, data: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GaussianRational]> {
        self.data.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn trace(&self) -> GaussianRational {
        let mut t = GaussianRational::zero();
        for i in 0..self.dim {
            t += &self[(i, i)];
        }
        t
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> ExactMatrix {
        ExactMatrix { dim: self.dim, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add_diagonal(&mut self, s: &GaussianRational) {
        for i in 0..self.dim {
            self.data[i * self.dim + i] += s;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &GaussianRational> {
        self.data.iter()
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (r, c): (usize, usize)) -> &GaussianRational {
        assert!(r < self.dim && c < self.dim, "index out of bounds");
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GaussianRational {
        assert!(r < self.dim && c < self.dim, "index out of bounds");
        &mut self.data[r * self.dim + c]
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| format!("{:>width$}", cells[r * self.dim + c])).collect();
            writeln!(f, "{}", row.join("  "))?;
        }
        Ok(())
    }
}

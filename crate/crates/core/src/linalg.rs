//! Small exact linear algebra: fraction-free elimination over the integer
//! backend, rational row reduction for kernels and square solves.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::scalar::{clear_denominators, make_primitive, ExactInt};

/// Incrementally built row echelon form. Rows are kept primitive.
#[derive(Debug, Clone)]
pub struct Echelon<I> {
    dim: usize,
    rows: Vec<(usize, Vec<I>)>,
}

impl<I: ExactInt> Echelon<I> {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[I]) -> Vec<I> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let a = row[*pivot].clone();
            let b = v[*pivot].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = a.clone() * x.clone() - b.clone() * y.clone();
            }
            make_primitive(&mut v);
        }
        v
    }

    pub fn is_independent(&self, v: &[I]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(v).iter().any(|x| !x.is_zero())
    }

    /// Adds `v` if it is independent of the rows seen so far.
    pub fn push(&mut self, v: &[I]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        if self.rows.len() == self.dim {
            return false;
        }
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, r));
                true
            }
            None => false,
        }
    }
}

pub fn rank<I: ExactInt>(rows: &[Vec<I>], dim: usize) -> usize {
    let mut e = Echelon::new(dim);
    for r in rows {
        e.push(r);
        if e.rank() == dim {
            break;
        }
    }
    e.rank()
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_indices<I: ExactInt>(rows: &[Vec<I>], dim: usize) -> Vec<usize> {
    let mut e = Echelon::new(dim);
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if e.rank() == dim {
            break;
        }
        if e.push(r) {
            out.push(i);
        }
    }
    out
}

/// Reduced row echelon form over the rationals. Returns the pivot columns.
pub fn rref<I: ExactInt>(m: &mut [Vec<Ratio<I>>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let (src, dst) = if i < row {
                    let (a, b) = m.split_at_mut(row);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[row], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d = d.clone() - f.clone() * s.clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Integer basis of `{x : row . x = 0 for every row}`.
pub fn kernel<I: ExactInt>(rows: &[Vec<I>], dim: usize) -> Vec<Vec<I>> {
    let mut m: Vec<Vec<Ratio<I>>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(Ratio::from_integer).collect())
        .collect();
    kernel_ratio(&mut m, dim)
        .iter()
        .map(|v| clear_denominators(v))
        .collect()
}

/// Rational basis of the right kernel; `m` is consumed into its RREF.
pub fn kernel_ratio<I: ExactInt>(m: &mut [Vec<Ratio<I>>], dim: usize) -> Vec<Vec<Ratio<I>>> {
    let pivots = rref(m, dim);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Ratio::zero(); dim];
            v[f] = Ratio::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `a x = b` for an invertible square `a`.
pub fn solve_square<I: ExactInt>(a: &[Vec<Ratio<I>>], b: &[Ratio<I>]) -> Option<Vec<Ratio<I>>> {
    let k = a.len();
    let mut m: Vec<Vec<Ratio<I>>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, k);
    if pivots.len() < k {
        return None;
    }
    Some(m.into_iter().map(|r| r[k].clone()).collect())
}

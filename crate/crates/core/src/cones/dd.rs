//! Double description method for `{x : a . x >= 0 for all rows a}`.
//!
//! Integer-only: rays are combined as `(a.p) q - (a.q) p` and then made
//! primitive, so no rational arithmetic happens in the inner loop. Adjacency
//! uses the combinatorial test on zero sets.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::linalg::{independent_indices, kernel};
use crate::scalar::{dot, is_zero_vec, make_primitive, primitive, ExactInt};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct NotPointed;

struct Ray<I> {
    v: Vec<I>,
    zero: BitSet,
}

/// Extreme rays of the pointed cone cut out by `rows` in dimension `dim`.
///
/// Fails when the rows have rank below `dim`, i.e. the cone has a lineality space.
pub(crate) fn extreme_rays<I: ExactInt>(
    rows: &[Vec<I>],
    dim: usize,
) -> Result<Vec<Vec<I>>, NotPointed> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    let mut seen = HashSet::new();
    let mut rows: Vec<Vec<I>> = rows
        .iter()
        .filter(|r| !is_zero_vec(r))
        .map(|r| primitive(r))
        .filter(|r| seen.insert(r.clone()))
        .collect();
    rows.sort();

    let basis = independent_indices(&rows, dim);
    if basis.len() < dim {
        return Err(NotPointed);
    }
    // Process the basis rows first; they define a simplicial starting cone.
    let mut order: Vec<usize> = basis.clone();
    order.extend((0..rows.len()).filter(|i| !basis.contains(i)));
    let rows: Vec<Vec<I>> = order.into_iter().map(|i| rows[i].clone()).collect();
    let m = rows.len();

    let mut rays: Vec<Ray<I>> = (0..dim)
        .map(|j| {
            let others: Vec<Vec<I>> = (0..dim)
                .filter(|&i| i != j)
                .map(|i| rows[i].clone())
                .collect();
            let mut v = kernel(&others, dim)
                .pop()
                .expect("basis rows are independent");
            if dot(&rows[j], &v).is_negative() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            let mut zero = BitSet::with_capacity(m);
            (0..dim).filter(|&i| i != j).for_each(|i| zero.insert(i));
            Ray { v, zero }
        })
        .collect();

    for (k, row) in rows.iter().enumerate().skip(dim) {
        let vals: Vec<I> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (i, val) in vals.iter().enumerate() {
            match val.cmp(&I::zero()) {
                Ordering::Greater => pos.push(i),
                Ordering::Less => neg.push(i),
                Ordering::Equal => rays[i].zero.insert(k),
            }
        }
        if neg.is_empty() {
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zero.intersection(&rays[q].zero);
                if common.len() + 2 < dim {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != q && common.is_subset(&r.zero));
                if blocked {
                    continue;
                }
                let a = vals[p].clone();
                let b = -vals[q].clone();
                let mut v: Vec<I> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone())
                    .collect();
                make_primitive(&mut v);
                let mut zero = common;
                zero.insert(k);
                fresh.push(Ray { v, zero });
            }
        }
        let neg: HashSet<usize> = neg.into_iter().collect();
        let mut next: Vec<Ray<I>> = Vec::with_capacity(rays.len() + fresh.len());
        for (i, r) in rays.into_iter().enumerate() {
            if !neg.contains(&i) {
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }

    let mut out: Vec<Vec<I>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

//! Lines and conics generating the Mori cones of del Pezzo surfaces of
//! degree 3, 2 and 1, and their images in X^{1,n}_{n+3} for n = 2, 3, 4.
//!
//! Del Pezzo classes use the basis `(hbar, ebar_1, .., ebar_m)` with
//! `m = 9 - degree`.

use crate::error::{Error, Result};
use crate::geometry::{mori_cone, subsets};
use crate::lattice::{CurveVector, Signature};
use crate::scalar::{from_i64_vec, ExactInt};

/// One row of a Mori cone table: `h * hbar - sum_j mult_j * ebar_{i_j}` over
/// all placements of the multiset `mults` on distinct points. The class
/// `ebar_i` itself is the row `h = 0`, `mults = [-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelPezzoRow {
    pub h: i64,
    pub mults: Vec<i64>,
    pub count: usize,
}

fn row(h: i64, mults: &[(i64, usize)], count: usize) -> DelPezzoRow {
    let mults = mults
        .iter()
        .flat_map(|&(m, k)| std::iter::repeat_n(m, k))
        .collect();
    DelPezzoRow { h, mults, count }
}

/// Row patterns with the ray counts listed in the tables.
pub fn del_pezzo_table(degree: usize) -> Result<Vec<DelPezzoRow>> {
    let rows = match degree {
        3 => vec![
            row(0, &[(-1, 1)], 6),
            row(1, &[(1, 2)], 15),
            row(2, &[(1, 5)], 6),
        ],
        2 => vec![
            row(0, &[(-1, 1)], 7),
            row(1, &[(1, 2)], 21),
            row(2, &[(1, 5)], 21),
            row(3, &[(2, 1), (1, 6)], 7),
        ],
        1 => vec![
            row(0, &[(-1, 1)], 8),
            row(1, &[(1, 2)], 28),
            row(2, &[(1, 5)], 56),
            row(3, &[(2, 1), (1, 6)], 56),
            row(4, &[(2, 3), (1, 5)], 56),
            row(5, &[(2, 6), (1, 2)], 28),
            row(6, &[(3, 1), (2, 7)], 8),
        ],
        _ => {
            return Err(Error::Input(format!(
                "del Pezzo degree must be 1, 2 or 3, got {degree}"
            )))
        }
    };
    Ok(rows)
}

impl DelPezzoRow {
    /// All classes of this row on `points` blown-up points.
    pub fn expand(&self, points: usize) -> Vec<Vec<i64>> {
        let mut values: Vec<i64> = self.mults.clone();
        values.sort_unstable();
        values.dedup();
        let groups: Vec<(i64, usize)> = values
            .iter()
            .map(|&v| (v, self.mults.iter().filter(|&&m| m == v).count()))
            .collect();
        let mut out = Vec::new();
        let mut class = vec![0i64; points + 1];
        class[0] = self.h;
        place(&groups, 0, &mut class, &mut out);
        out.sort();
        out
    }
}

fn place(groups: &[(i64, usize)], g: usize, class: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if g == groups.len() {
        out.push(class.clone());
        return;
    }
    let (mult, k) = groups[g];
    let free: Vec<usize> = (1..class.len()).filter(|&i| class[i] == 0).collect();
    for chosen in subsets(free.len(), k) {
        for &c in &chosen {
            class[free[c - 1]] = -mult;
        }
        place(groups, g + 1, class, out);
        for &c in &chosen {
            class[free[c - 1]] = 0;
        }
    }
}

/// Per-row expansions of a table.
pub fn del_pezzo_rows(degree: usize) -> Result<Vec<Vec<Vec<i64>>>> {
    let points = 9 - degree;
    Ok(del_pezzo_table(degree)?
        .iter()
        .map(|r| r.expand(points))
        .collect())
}

/// All generators of the Mori cone of the del Pezzo surface of the given degree.
pub fn del_pezzo_mori_rays<I: ExactInt>(degree: usize) -> Result<Vec<Vec<I>>> {
    Ok(del_pezzo_rows(degree)?
        .into_iter()
        .flatten()
        .map(|c| from_i64_vec(&c))
        .collect())
}

/// Push-forward of curve classes from the del Pezzo surface onto its image in X^{1,n}_{n+3}.
#[derive(Debug, Clone)]
pub struct DelPezzoEmbedding<I: ExactInt> {
    pub n: usize,
    pub degree: usize,
    pub target: Signature,
    /// Images of `hbar, ebar_1, .., ebar_m`.
    pub images: Vec<CurveVector<I>>,
}

impl<I: ExactInt> DelPezzoEmbedding<I> {
    pub fn apply(&self, class: &[I]) -> Result<CurveVector<I>> {
        Error::check_dim(self.images.len(), class.len())?;
        Ok(class
            .iter()
            .zip(&self.images)
            .fold(CurveVector::zero(self.target), |acc, (c, img)| {
                acc + img.scale(&num_rational::Ratio::from_integer(c.clone()))
            }))
    }
}

pub fn del_pezzo_embedding<I: ExactInt>(n: usize) -> Result<DelPezzoEmbedding<I>> {
    if !(2..=4).contains(&n) {
        return Err(Error::Input(format!(
            "del Pezzo embeddings exist for n = 2, 3, 4; got {n}"
        )));
    }
    let target = Signature::new(n, n + 3)?;
    let degree = 5 - n;
    let points = 9 - degree;
    let h1 = || CurveVector::<I>::pullback(target, 1);
    let h2 = || CurveVector::<I>::pullback(target, 2);
    let e = |i| CurveVector::<I>::exceptional(target, i);
    let mut images = Vec::with_capacity(points + 1);
    // the first one or two ebar's are special; the rest map to e_{i-1}
    let plain_from = match n {
        2 => {
            images.push(h1() + h2());
            images.push(h1());
            2
        }
        3 => {
            images.push(h1() + 2 * h2() - e(1));
            images.push(h2() - e(1));
            images.push(h1() + h2() - e(1));
            3
        }
        _ => {
            images.push(h1() + 2 * h2());
            images.push(h1() + h2());
            2
        }
    };
    for i in plain_from..=points {
        images.push(e(i - 1));
    }
    Ok(DelPezzoEmbedding {
        n,
        degree,
        target,
        images,
    })
}

/// Every del Pezzo Mori generator lands in the Mori cone of X^{1,n}_{n+3}.
pub fn verify_del_pezzo_embedding<I: ExactInt>(n: usize) -> Result<bool> {
    let emb = del_pezzo_embedding::<I>(n)?;
    let mori = mori_cone::<I>(emb.target)?;
    for ray in del_pezzo_mori_rays::<I>(emb.degree)? {
        let img = emb.apply(&ray)?;
        if !mori.contains(img.coeffs(), false)? {
            return Ok(false);
        }
    }
    Ok(true)
}

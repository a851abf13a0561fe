//! GIT fan of the Cox presentation: the Mori chamber decomposition of the effective cone.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::Ratio;
use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::cones::RationalCone;
use crate::coxring::{orbit_cones, CoxPresentation};
use crate::error::{Error, Result};
use crate::geometry::effective_cone;
use crate::lattice::{anticanonical, DivisorVector};
use crate::scalar::{clear_denominators, dot, int, line_representative, ExactInt};

/// Hyperplane arrangement spanned by the facets of the full-dimensional orbit cones.
#[derive(Debug, Clone)]
pub struct Arrangement<I: ExactInt> {
    dim: usize,
    hyperplanes: Vec<Vec<I>>,
    /// Facets of each full-dimensional orbit cone as (hyperplane index, same orientation).
    cones: Vec<Vec<(usize, bool)>>,
    support: RationalCone<I>,
    support_facets: HashSet<Vec<I>>,
}

impl<I: ExactInt> Arrangement<I> {
    pub fn new(orbit_cones: &[RationalCone<I>], support: &RationalCone<I>) -> Result<Self> {
        if !support.is_full_dimensional() {
            return Err(Error::Unsupported(
                "support cone is not full-dimensional".into(),
            ));
        }
        let dim = support.ambient_dim();
        let mut index: HashMap<Vec<I>, usize> = HashMap::new();
        let mut hyperplanes = Vec::new();
        let mut cones = Vec::new();
        for c in orbit_cones.iter().filter(|c| c.is_full_dimensional()) {
            Error::check_dim(dim, c.ambient_dim())?;
            let facets = c
                .facet_normals()?
                .iter()
                .map(|f| {
                    let line = line_representative(f);
                    let same = &line == f;
                    let next = hyperplanes.len();
                    let idx = *index.entry(line.clone()).or_insert(next);
                    if idx == next {
                        hyperplanes.push(line);
                    }
                    (idx, same)
                })
                .collect();
            cones.push(facets);
        }
        Ok(Arrangement {
            dim,
            hyperplanes,
            cones,
            support: support.clone(),
            support_facets: support.facet_normals()?.iter().cloned().collect(),
        })
    }

    pub fn hyperplanes(&self) -> &[Vec<I>] {
        &self.hyperplanes
    }

    pub fn support(&self) -> &RationalCone<I> {
        &self.support
    }

    pub fn cone_count(&self) -> usize {
        self.cones.len()
    }

    fn signs(&self, w: &[I]) -> Vec<Ordering> {
        self.hyperplanes
            .iter()
            .map(|h| dot(h, w).cmp(&I::zero()))
            .collect()
    }

    fn key_from_signs(&self, signs: &[Ordering], strict: bool) -> BitSet {
        let mut key = BitSet::with_capacity(self.cones.len());
        for (ci, facets) in self.cones.iter().enumerate() {
            let inside = facets.iter().all(|&(h, same)| {
                let s = if same { signs[h] } else { signs[h].reverse() };
                s == Ordering::Greater || (!strict && s == Ordering::Equal)
            });
            if inside {
                key.insert(ci);
            }
        }
        key
    }

    /// Indices of the orbit cones containing `w`, for a generic interior point of the support.
    pub fn chamber_key(&self, w: &[I]) -> Result<BitSet> {
        Error::check_dim(self.dim, w.len())?;
        if !self.support.contains_int(w, false) {
            return Err(Error::Domain(
                "point lies outside the effective cone".into(),
            ));
        }
        let signs = self.signs(w);
        if signs.contains(&Ordering::Equal) {
            return Err(Error::WallPoint);
        }
        Ok(self.key_from_signs(&signs, true))
    }

    /// Intersection of the orbit cones listed in `key`.
    pub fn chamber_from_key(&self, key: &BitSet) -> Result<RationalCone<I>> {
        let mut seen = HashSet::new();
        let mut ineqs = Vec::new();
        for ci in key.iter() {
            for &(h, same) in &self.cones[ci] {
                if seen.insert(h) {
                    let f = &self.hyperplanes[h];
                    ineqs.push(if same {
                        f.clone()
                    } else {
                        f.iter().map(|x| -x.clone()).collect()
                    });
                }
            }
        }
        ineqs.sort();
        RationalCone::from_inequalities(self.dim, &[], &ineqs)
    }

    /// Intersection of all orbit cones that contain `w` in their closure.
    pub fn cone_at(&self, w: &[I]) -> Result<RationalCone<I>> {
        Error::check_dim(self.dim, w.len())?;
        self.chamber_from_key(&self.key_from_signs(&self.signs(w), false))
    }

    pub fn chamber_of_int(&self, w: &[I]) -> Result<RationalCone<I>> {
        let key = self.chamber_key(w)?;
        self.chamber_from_key(&key)
    }

    /// Moves `base` off every hyperplane it lies on while keeping all its nonzero signs.
    pub fn generic_point_near(&self, base: &[I]) -> Vec<I> {
        let bad: Vec<&Vec<I>> = self
            .hyperplanes
            .iter()
            .filter(|h| dot(h, base).is_zero())
            .collect();
        if bad.is_empty() {
            return base.to_vec();
        }
        let mut k = 1i64;
        let delta = loop {
            k += 1;
            let kk: I = int(k);
            let mut pow = I::one();
            let delta: Vec<I> = (0..self.dim)
                .map(|_| {
                    let v = pow.clone();
                    pow = pow.clone() * kk.clone();
                    v
                })
                .collect();
            if bad.iter().all(|h| !dot(h, &delta).is_zero()) {
                break delta;
            }
        };
        let m = self.max_abs_pairing(&delta) + I::one();
        base.iter()
            .zip(&delta)
            .map(|(b, d)| m.clone() * b.clone() + d.clone())
            .collect()
    }

    fn max_abs_pairing(&self, v: &[I]) -> I {
        self.hyperplanes
            .iter()
            .map(|h| dot(h, v).abs())
            .fold(I::zero(), |a, b| if b > a { b } else { a })
    }

    /// A generic point just beyond the facet `f` of `chamber`.
    pub fn cross_facet(&self, chamber: &RationalCone<I>, f: &[I]) -> Vec<I> {
        let on_facet: Vec<&Vec<I>> = chamber
            .extremal_rays()
            .iter()
            .filter(|r| dot(f, r).is_zero())
            .collect();
        let line = line_representative(f);
        let others: Vec<&Vec<I>> = self.hyperplanes.iter().filter(|h| **h != line).collect();
        let mut k = 0i64;
        let p = loop {
            k += 1;
            let kk: I = int(k);
            let mut coeff = I::one();
            let mut p = vec![I::zero(); self.dim];
            for r in &on_facet {
                for (pi, ri) in p.iter_mut().zip(r.iter()) {
                    *pi = pi.clone() + coeff.clone() * ri.clone();
                }
                coeff = coeff * kk.clone();
            }
            if others.iter().all(|h| !dot(h, &p).is_zero()) {
                break p;
            }
        };
        let m = self.max_abs_pairing(f) + I::one();
        p.iter()
            .zip(f)
            .map(|(pi, fi)| m.clone() * pi.clone() - fi.clone())
            .collect()
    }

    fn is_support_facet(&self, f: &[I]) -> bool {
        self.support_facets.contains(f)
    }
}

/// Chamber of the decomposition containing the generic point `w`.
pub fn chamber_of<I: ExactInt>(
    w: &[Ratio<I>],
    orbit_cones: &[RationalCone<I>],
    support: &RationalCone<I>,
) -> Result<RationalCone<I>> {
    Error::check_dim(support.ambient_dim(), w.len())?;
    Arrangement::new(orbit_cones, support)?.chamber_of_int(&clear_denominators(w))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber<I: ExactInt> {
    pub cone: RationalCone<I>,
    pub interior_point: Vec<Ratio<I>>,
    /// Number of wall crossings from the nef chamber.
    pub depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberSet<I: ExactInt> {
    pub n: usize,
    pub chambers: Vec<Chamber<I>>,
    pub support: RationalCone<I>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraversalOptions {
    pub jobs: usize,
    pub max_chambers: usize,
}

impl Default for TraversalOptions {
    fn default() -> Self {
        TraversalOptions {
            jobs: 1,
            max_chambers: 100_000,
        }
    }
}

pub fn mori_chamber_decomposition<I: ExactInt>(pres: &CoxPresentation<I>) -> Result<ChamberSet<I>> {
    mori_chamber_decomposition_with(pres, TraversalOptions::default())
}

pub fn mori_chamber_decomposition_with<I: ExactInt>(
    pres: &CoxPresentation<I>,
    opts: TraversalOptions,
) -> Result<ChamberSet<I>> {
    if pres.n < 2 {
        return Err(Error::Unsupported(
            "chamber decomposition needs n >= 2".into(),
        ));
    }
    let support = effective_cone::<I>(pres.n)?;
    let arr = Arrangement::new(&orbit_cones(pres)?, &support)?;
    let seed = arr.generic_point_near(&anticanonical::<I>(pres.signature()).to_primitive());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    pool.install(|| traverse(&arr, seed, opts.max_chambers))
        .map(|chambers| ChamberSet {
            n: pres.n,
            chambers,
            support,
        })
}

fn traverse<I: ExactInt>(
    arr: &Arrangement<I>,
    seed: Vec<I>,
    budget: usize,
) -> Result<Vec<Chamber<I>>> {
    let mut known: HashSet<BitSet> = HashSet::new();
    let mut found: Vec<Chamber<I>> = Vec::new();
    let mut frontier: VecDeque<Vec<I>> = VecDeque::from([seed]);
    let mut depth = 0;
    while !frontier.is_empty() {
        let points: Vec<Vec<I>> = frontier.drain(..).collect();
        let keys: Vec<BitSet> = points
            .par_iter()
            .map(|w| arr.chamber_key(w))
            .collect::<Result<_>>()?;
        let mut fresh = Vec::new();
        for key in keys {
            if known.insert(key.clone()) {
                fresh.push(key);
            }
        }
        if found.len() + fresh.len() > budget {
            return Err(Error::TraversalBudget {
                budget,
                found: found.len() + fresh.len(),
            });
        }
        let expanded: Vec<(RationalCone<I>, Vec<Vec<I>>)> = fresh
            .par_iter()
            .map(|key| {
                let cone = arr.chamber_from_key(key)?;
                if !cone.is_full_dimensional() {
                    return Err(Error::Unsupported("degenerate chamber".into()));
                }
                let next = cone
                    .facet_normals()?
                    .iter()
                    .filter(|f| !arr.is_support_facet(f))
                    .map(|f| arr.cross_facet(&cone, f))
                    .collect();
                Ok((cone, next))
            })
            .collect::<Result<_>>()?;
        for (cone, next) in expanded {
            let interior_point = cone.relative_interior_point()?;
            found.push(Chamber {
                cone,
                interior_point,
                depth,
            });
            frontier.extend(next);
        }
        depth += 1;
    }
    found.sort_by(|a, b| a.cone.extremal_rays().cmp(b.cone.extremal_rays()));
    Ok(found)
}

pub fn chamber_count<I: ExactInt>(pres: &CoxPresentation<I>) -> Result<usize> {
    Ok(mori_chamber_decomposition(pres)?.chambers.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Chamber(usize),
    /// The point lies on walls; the listed chambers contain it in their closure.
    Wall(Vec<usize>),
}

pub fn locate<I: ExactInt>(d: &DivisorVector<I>, cs: &ChamberSet<I>) -> Result<Location> {
    Error::check_dim(cs.support.ambient_dim(), d.coeffs().len())?;
    let w = clear_denominators(d.coeffs());
    if !cs.support.contains_int(&w, false) {
        return Err(Error::Domain(format!("{d} is not effective")));
    }
    let mut incident = Vec::new();
    for (i, c) in cs.chambers.iter().enumerate() {
        if c.cone.contains_int(&w, true) {
            return Ok(Location::Chamber(i));
        }
        if c.cone.contains_int(&w, false) {
            incident.push(i);
        }
    }
    Ok(Location::Wall(incident))
}

#[cfg(test)]
mod tests;

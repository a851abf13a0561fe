//! Exact pointed polyhedral cones.
//!
//! A [`RationalCone`] is stored in canonical form: its extremal rays as
//! sorted primitive integer vectors, inward facet normals relative to its
//! linear span, and a basis of equations cutting out that span. Two cones
//! are equal iff their ray lists are equal.

mod dd;

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{independent_indices, kernel, rank, solve_square};
use crate::scalar::{clear_denominators, dot, is_zero_vec, primitive, ratio_vec, ExactInt};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalCone<I> {
    ambient_dim: usize,
    dim: usize,
    rays: Vec<Vec<I>>,
    facets: Vec<Vec<I>>,
    equations: Vec<Vec<I>>,
}

fn lineality() -> Error {
    Error::Unsupported("cone contains a line".into())
}

fn check_lengths<T>(ambient_dim: usize, vs: &[Vec<T>]) -> Result<()> {
    if ambient_dim == 0 {
        return Err(Error::Input("ambient dimension must be positive".into()));
    }
    for v in vs {
        Error::check_dim(ambient_dim, v.len())?;
    }
    Ok(())
}

impl<I: ExactInt> RationalCone<I> {
    pub fn zero(ambient_dim: usize) -> Self {
        let equations = (0..ambient_dim)
            .map(|i| {
                (0..ambient_dim)
                    .map(|j| if i == j { I::one() } else { I::zero() })
                    .collect()
            })
            .collect();
        RationalCone {
            ambient_dim,
            dim: 0,
            rays: Vec::new(),
            facets: Vec::new(),
            equations,
        }
    }

    /// Smallest convex cone containing `gens`.
    pub fn from_generators(ambient_dim: usize, gens: &[Vec<Ratio<I>>]) -> Result<Self> {
        check_lengths(ambient_dim, gens)?;
        let ints: Vec<Vec<I>> = gens.iter().map(|g| clear_denominators(g)).collect();
        Self::build_from_generators(ambient_dim, ints)
    }

    pub fn from_integer_generators(ambient_dim: usize, gens: &[Vec<I>]) -> Result<Self> {
        check_lengths(ambient_dim, gens)?;
        Self::build_from_generators(ambient_dim, gens.to_vec())
    }

    fn build_from_generators(d: usize, gens: Vec<Vec<I>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let gens: Vec<Vec<I>> = gens
            .into_iter()
            .filter(|g| !is_zero_vec(g))
            .map(|g| primitive(&g))
            .filter(|g| seen.insert(g.clone()))
            .collect();
        if gens.is_empty() {
            return Ok(Self::zero(d));
        }
        let basis: Vec<Vec<I>> = independent_indices(&gens, d)
            .into_iter()
            .map(|i| gens[i].clone())
            .collect();
        let k = basis.len();

        // Work in coordinates of the linear span when the cone is not full-dimensional.
        let (coords, span): (Vec<Vec<I>>, Option<Span<I>>) = if k == d {
            (gens.clone(), None)
        } else {
            let span = Span::new(basis.clone(), d);
            (
                gens.iter().map(|g| span.coordinates(g)).collect(),
                Some(span),
            )
        };

        let dual_rays = dd::extreme_rays(&coords, k).map_err(|_| lineality())?;
        if rank(&dual_rays, k) < k {
            return Err(lineality());
        }

        let mut rays: Vec<Vec<I>> = gens
            .iter()
            .zip(&coords)
            .filter(|(_, c)| {
                let tight: Vec<Vec<I>> = dual_rays
                    .iter()
                    .filter(|y| dot(y, c).is_zero())
                    .cloned()
                    .collect();
                rank(&tight, k) + 1 == k
            })
            .map(|(g, _)| g.clone())
            .collect();
        rays.sort();

        let mut facets: Vec<Vec<I>> = match &span {
            None => dual_rays,
            Some(s) => dual_rays.iter().map(|y| s.lift_functional(y)).collect(),
        };
        facets.sort();
        let equations = kernel(&basis, d);

        Ok(RationalCone {
            ambient_dim: d,
            dim: k,
            rays,
            facets,
            equations,
        })
    }

    /// Cone `{x : e . x = 0 for e in equations, a . x >= 0 for a in inequalities}`.
    pub fn from_inequalities(
        ambient_dim: usize,
        equations: &[Vec<I>],
        inequalities: &[Vec<I>],
    ) -> Result<Self> {
        check_lengths(ambient_dim, equations)?;
        check_lengths(ambient_dim, inequalities)?;
        let d = ambient_dim;
        let lin: Vec<Vec<I>> = kernel(equations, d);
        let k = lin.len();
        if k == 0 {
            return Ok(Self::zero(d));
        }
        let rows: Vec<Vec<I>> = if equations.is_empty() {
            inequalities.to_vec()
        } else {
            inequalities
                .iter()
                .map(|a| lin.iter().map(|l| dot(a, l)).collect())
                .collect()
        };
        let local = dd::extreme_rays(&rows, k).map_err(|_| lineality())?;
        let rays: Vec<Vec<I>> = if equations.is_empty() {
            local
        } else {
            local
                .iter()
                .map(|c| {
                    let v: Vec<I> = (0..d)
                        .map(|j| {
                            c.iter()
                                .zip(&lin)
                                .fold(I::zero(), |acc, (ci, l)| acc + ci.clone() * l[j].clone())
                        })
                        .collect();
                    primitive(&v)
                })
                .collect()
        };

        if k == d && rank(&rays, d) == d {
            // Full-dimensional: the facets are the inequalities supporting d-1 independent rays.
            let mut seen = HashSet::new();
            let mut facets: Vec<Vec<I>> = inequalities
                .iter()
                .filter(|a| !is_zero_vec(a))
                .map(|a| primitive(a))
                .filter(|a| seen.insert(a.clone()))
                .filter(|a| {
                    let tight: Vec<Vec<I>> = rays
                        .iter()
                        .filter(|r| dot(a, r).is_zero())
                        .cloned()
                        .collect();
                    rank(&tight, d) + 1 == d
                })
                .collect();
            facets.sort();
            let mut rays = rays;
            rays.sort();
            return Ok(RationalCone {
                ambient_dim: d,
                dim: d,
                rays,
                facets,
                equations: Vec::new(),
            });
        }
        Self::build_from_generators(d, rays)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Canonical extremal rays: primitive, lexicographically sorted.
    pub fn extremal_rays(&self) -> &[Vec<I>] {
        &self.rays
    }

    /// Inward facet normals; only defined for full-dimensional cones.
    pub fn facet_normals(&self) -> Result<&[Vec<I>]> {
        if !self.is_full_dimensional() {
            return Err(Error::Unsupported(
                "facet normals of a non-full-dimensional cone".into(),
            ));
        }
        Ok(&self.facets)
    }

    /// Facet normals relative to the linear span, valid for any cone.
    pub fn relative_facets(&self) -> &[Vec<I>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<I>] {
        &self.equations
    }

    pub fn dual(&self) -> Result<Self> {
        if !self.is_full_dimensional() {
            return Err(Error::Unsupported(
                "dual of a non-full-dimensional cone".into(),
            ));
        }
        Ok(RationalCone {
            ambient_dim: self.ambient_dim,
            dim: self.dim,
            rays: self.facets.clone(),
            facets: self.rays.clone(),
            equations: Vec::new(),
        })
    }

    pub fn contains(&self, v: &[Ratio<I>], strict: bool) -> Result<bool> {
        Error::check_dim(self.ambient_dim, v.len())?;
        Ok(self.contains_int(&clear_denominators(v), strict))
    }

    /// Membership for an integer vector (any positive multiple of the point).
    pub fn contains_int(&self, v: &[I], strict: bool) -> bool {
        if !self.equations.iter().all(|e| dot(e, v).is_zero()) {
            return false;
        }
        if self.dim == 0 {
            return true;
        }
        if strict {
            self.facets.iter().all(|f| dot(f, v).is_positive())
        } else {
            self.facets.iter().all(|f| !dot(f, v).is_negative())
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        Error::check_dim(self.ambient_dim, other.ambient_dim)?;
        let eqs: Vec<Vec<I>> = self
            .equations
            .iter()
            .chain(&other.equations)
            .cloned()
            .collect();
        let ineqs: Vec<Vec<I>> = self.facets.iter().chain(&other.facets).cloned().collect();
        Self::from_inequalities(self.ambient_dim, &eqs, &ineqs)
    }

    /// Equal iff the canonical ray lists agree.
    pub fn equals(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.rays == other.rays
    }

    pub fn is_subcone_of(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.rays.iter().all(|r| other.contains_int(r, false))
    }

    pub fn interior_point_int(&self) -> Result<Vec<I>> {
        if self.is_zero() {
            return Err(Error::Domain(
                "the zero cone has no nonzero interior point".into(),
            ));
        }
        let mut acc = vec![I::zero(); self.ambient_dim];
        for r in &self.rays {
            for (a, x) in acc.iter_mut().zip(r) {
                *a = a.clone() + x.clone();
            }
        }
        Ok(acc)
    }

    /// Sum of the extremal rays.
    pub fn relative_interior_point(&self) -> Result<Vec<Ratio<I>>> {
        self.interior_point_int().map(|v| ratio_vec(&v))
    }

    /// Rays of the smallest face containing `p` (assumed to lie in the cone).
    pub fn face_rays_containing(&self, p: &[I]) -> Vec<Vec<I>> {
        let tight: Vec<&Vec<I>> = self.facets.iter().filter(|f| dot(f, p).is_zero()).collect();
        self.rays
            .iter()
            .filter(|r| tight.iter().all(|f| dot(f, r).is_zero()))
            .cloned()
            .collect()
    }

    /// Image under `x -> (s_1 x_1, ..., s_d x_d)` with each sign `s_i = -1` where `negate[i]`.
    pub fn flip_signs(&self, negate: &[bool]) -> Self {
        let flip = |v: &Vec<I>| -> Vec<I> {
            v.iter()
                .zip(negate)
                .map(|(x, &n)| if n { -x.clone() } else { x.clone() })
                .collect()
        };
        let mut rays: Vec<Vec<I>> = self.rays.iter().map(flip).collect();
        let mut facets: Vec<Vec<I>> = self.facets.iter().map(flip).collect();
        rays.sort();
        facets.sort();
        RationalCone {
            ambient_dim: self.ambient_dim,
            dim: self.dim,
            rays,
            facets,
            equations: self.equations.iter().map(flip).collect(),
        }
    }
}

impl<I: ExactInt> fmt::Display for RationalCone<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cone(dim {}/{}, {} rays)",
            self.dim,
            self.ambient_dim,
            self.rays.len()
        )
    }
}

/// A linear subspace with a chosen basis and a set of pivot coordinates on
/// which the basis is invertible.
struct Span<I> {
    d: usize,
    pivots: Vec<usize>,
    // basis restricted to the pivot coordinates, one basis vector per column
    square: Vec<Vec<Ratio<I>>>,
}

impl<I: ExactInt> Span<I> {
    fn new(basis: Vec<Vec<I>>, d: usize) -> Self {
        let k = basis.len();
        let columns: Vec<Vec<I>> = (0..d)
            .map(|j| basis.iter().map(|b| b[j].clone()).collect())
            .collect();
        let pivots = independent_indices(&columns, k);
        debug_assert_eq!(pivots.len(), k);
        let square = pivots
            .iter()
            .map(|&p| {
                basis
                    .iter()
                    .map(|b| Ratio::from_integer(b[p].clone()))
                    .collect()
            })
            .collect();
        Span { d, pivots, square }
    }

    fn coordinates(&self, v: &[I]) -> Vec<I> {
        let rhs: Vec<Ratio<I>> = self
            .pivots
            .iter()
            .map(|&p| Ratio::from_integer(v[p].clone()))
            .collect();
        let c = solve_square(&self.square, &rhs).expect("pivot block is invertible");
        clear_denominators(&c)
    }

    /// Ambient functional agreeing (up to positive scale) with `y` on the span.
    fn lift_functional(&self, y: &[I]) -> Vec<I> {
        let k = self.pivots.len();
        let transposed: Vec<Vec<Ratio<I>>> = (0..k)
            .map(|i| (0..k).map(|j| self.square[j][i].clone()).collect())
            .collect();
        let f = solve_square(&transposed, &ratio_vec(y)).expect("pivot block is invertible");
        let mut out = vec![Ratio::zero(); self.d];
        for (&p, x) in self.pivots.iter().zip(f) {
            out[p] = x;
        }
        clear_denominators(&out)
    }
}

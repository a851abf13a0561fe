//! Cox ring of X^{1,n}_{n+1}: generators `S_0..S_n, T_{1,1}, T_{1,2}, .., T_{n+1,2}`
//! with trinomial relations, and the a-faces / orbit cones of its
//! characteristic space.
//!
//! Generator `j` of the fixed ordering is bit `j` of every subset mask.

use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cones::RationalCone;
use crate::error::{Error, Result};
use crate::lattice::{DivisorVector, Signature};
use crate::linalg::kernel_ratio;
use crate::scalar::{int, ExactInt};

const SAMPLE_ATTEMPTS: usize = 1000;
const WITNESS_ATTEMPTS: usize = 100;
const HEIGHT: i64 = 100;

/// The n+1 points' P^1-coordinates `[alpha_i : beta_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig<I: ExactInt> {
    n: usize,
    points: Vec<(Ratio<I>, Ratio<I>)>,
}

fn fixed_points<I: ExactInt>() -> [(Ratio<I>, Ratio<I>); 3] {
    let (z, o) = (Ratio::zero, Ratio::one);
    [(z(), o()), (o(), z()), (o(), o())]
}

fn minor_of<I: ExactInt>(p: &(Ratio<I>, Ratio<I>), q: &(Ratio<I>, Ratio<I>)) -> Ratio<I> {
    // beta_i alpha_j - beta_j alpha_i
    &p.1 * &q.0 - &q.1 * &p.0
}

impl<I: ExactInt> PointConfig<I> {
    pub fn new(n: usize, points: Vec<(Ratio<I>, Ratio<I>)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("n must be at least 1".into()));
        }
        Error::check_dim(n + 1, points.len())?;
        let fixed = fixed_points::<I>();
        for (i, (p, f)) in points.iter().zip(fixed.iter()).enumerate() {
            if p != f {
                return Err(Error::DegenerateConfig(format!(
                    "point {} must be normalized to [{} : {}]",
                    i + 1,
                    f.0,
                    f.1
                )));
            }
        }
        for (i, p) in points.iter().enumerate() {
            if p.0.is_zero() && p.1.is_zero() {
                return Err(Error::DegenerateConfig(format!(
                    "point {} is [0 : 0]",
                    i + 1
                )));
            }
            for (j, q) in points.iter().enumerate().skip(i + 1) {
                if minor_of(p, q).is_zero() {
                    return Err(Error::DegenerateConfig(format!(
                        "points {} and {} coincide",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(PointConfig { n, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[(Ratio<I>, Ratio<I>)] {
        &self.points
    }

    pub fn alphas(&self) -> Vec<Ratio<I>> {
        self.points.iter().map(|p| p.0.clone()).collect()
    }

    pub fn betas(&self) -> Vec<Ratio<I>> {
        self.points.iter().map(|p| p.1.clone()).collect()
    }

    /// `beta_i alpha_j - beta_j alpha_i`, 1-based indices.
    pub fn minor(&self, i: usize, j: usize) -> Ratio<I> {
        minor_of(&self.points[i - 1], &self.points[j - 1])
    }
}

/// Normalized first three points, further points from a seeded generator
/// with numerators and denominators of height at most 100.
pub fn sample_points<I: ExactInt>(n: usize, seed: u64) -> Result<PointConfig<I>> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<(Ratio<I>, Ratio<I>)> =
        fixed_points::<I>().into_iter().take(n + 1).collect();
    let mut attempts = 0;
    while points.len() < n + 1 {
        attempts += 1;
        if attempts > SAMPLE_ATTEMPTS {
            return Err(Error::SearchExhausted {
                what: "general point configuration".into(),
                attempts: SAMPLE_ATTEMPTS,
            });
        }
        let mut draw = || {
            Ratio::new(
                int::<I>(rng.gen_range(-HEIGHT..=HEIGHT)),
                int::<I>(rng.gen_range(1..=HEIGHT)),
            )
        };
        let p = (draw(), draw());
        if p.0.is_zero() && p.1.is_zero() {
            continue;
        }
        if points.iter().all(|q| !minor_of(q, &p).is_zero()) {
            points.push(p);
        }
    }
    PointConfig::new(n, points)
}

/// Cl-degrees of the generators in the fixed order:
/// `S_i -> H_2 - sum_{j != i+1} E_j`, `T_{i,1} -> H_1 - E_i`, `T_{i,2} -> E_i`.
pub fn generator_degrees<I: ExactInt>(n: usize) -> Result<Vec<DivisorVector<I>>> {
    let sig = Signature::new(n, n + 1)?;
    let r = n + 1;
    let mut out = Vec::with_capacity(3 * r);
    for i in 0..=n {
        let others: Vec<usize> = (1..=r).filter(|&j| j != i + 1).collect();
        out.push(DivisorVector::pullback(sig, 2) - DivisorVector::exceptional_sum(sig, &others));
    }
    for i in 1..=r {
        out.push(DivisorVector::pullback(sig, 1) - DivisorVector::exceptional(sig, i));
        out.push(DivisorVector::exceptional(sig, i));
    }
    Ok(out)
}

pub fn generator_names(n: usize) -> Vec<String> {
    let mut out: Vec<String> = (0..=n).map(|i| format!("S_{i}")).collect();
    for i in 1..=n + 1 {
        out.push(format!("T_{{{i},1}}"));
        out.push(format!("T_{{{i},2}}"));
    }
    out
}

/// Index of `T_{i,k}` (1-based `i`, `k` in {1, 2}) in the generator ordering.
pub fn t_index(n: usize, i: usize, k: usize) -> usize {
    n + 1 + 2 * (i - 1) + (k - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxGenerator<I: ExactInt> {
    pub name: String,
    pub degree: DivisorVector<I>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm<I: ExactInt> {
    pub coefficient: Ratio<I>,
    /// Generator indices of the degree-two monomial.
    pub monomial: [usize; 2],
}

/// `c_i T_{i,1}T_{i,2} + c_j T_{j,1}T_{j,2} + c_k T_{k,1}T_{k,2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trinomial<I: ExactInt> {
    /// The 1-based point indices `(i, j, k)` of the three monomials.
    pub points: [usize; 3],
    pub terms: [RelationTerm<I>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxPresentation<I: ExactInt> {
    pub n: usize,
    pub config: PointConfig<I>,
    pub generators: Vec<CoxGenerator<I>>,
    pub relations: Vec<Trinomial<I>>,
    /// Orders of the generic isotropy groups of the T-variables; all trivial here.
    pub isotropy_orders: Vec<u32>,
}

pub fn build_presentation<I: ExactInt>(
    n: usize,
    config: PointConfig<I>,
) -> Result<CoxPresentation<I>> {
    if config.n() != n {
        return Err(Error::Dimension {
            expected: n,
            found: config.n(),
        });
    }
    // re-validate: the struct can only be built through `new`, but keep the contract local
    let config = PointConfig::new(n, config.points.clone())?;
    let generators = generator_names(n)
        .into_iter()
        .zip(generator_degrees(n)?)
        .map(|(name, degree)| CoxGenerator { name, degree })
        .collect();
    let mut relations = Vec::new();
    for i in 1..n {
        let (j, k) = (i + 1, i + 2);
        let coeffs = [config.minor(k, j), config.minor(i, k), config.minor(j, i)];
        let terms = [i, j, k]
            .iter()
            .zip(coeffs)
            .map(|(&p, c)| {
                if c.is_zero() {
                    return Err(Error::DegenerateConfig(format!(
                        "vanishing coefficient in relation g_{i}"
                    )));
                }
                Ok(RelationTerm {
                    coefficient: c,
                    monomial: [t_index(n, p, 1), t_index(n, p, 2)],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let terms: [RelationTerm<I>; 3] = terms.try_into().expect("three terms");
        relations.push(Trinomial {
            points: [i, j, k],
            terms,
        });
    }
    Ok(CoxPresentation {
        n,
        config,
        generators,
        relations,
        isotropy_orders: vec![1; 2 * (n + 1)],
    })
}

impl<I: ExactInt> CoxPresentation<I> {
    pub fn signature(&self) -> Signature {
        Signature {
            n: self.n,
            r: self.n + 1,
        }
    }

    pub fn degrees(&self) -> Vec<DivisorVector<I>> {
        self.generators.iter().map(|g| g.degree.clone()).collect()
    }

    pub fn monomial_degree(&self, m: &[usize; 2]) -> DivisorVector<I> {
        self.generators[m[0]].degree.clone() + self.generators[m[1]].degree.clone()
    }

    /// Coefficient matrix of the relations as linear forms in `u_i = T_{i,1} T_{i,2}`.
    pub fn relation_matrix(&self) -> Vec<Vec<Ratio<I>>> {
        self.relations
            .iter()
            .map(|rel| {
                let mut row = vec![Ratio::zero(); self.n + 1];
                for (p, t) in rel.points.iter().zip(&rel.terms) {
                    row[p - 1] = t.coefficient.clone();
                }
                row
            })
            .collect()
    }

    /// Value of every relation after substituting `u` for the products `T_{i,1} T_{i,2}`.
    pub fn evaluate_on_products(&self, u: &[Ratio<I>]) -> Result<Vec<Ratio<I>>> {
        Error::check_dim(self.n + 1, u.len())?;
        Ok(self
            .relation_matrix()
            .iter()
            .map(|row| {
                row.iter()
                    .zip(u)
                    .fold(Ratio::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }
}

/// Every monomial of every relation has the same Cl-degree.
pub fn check_homogeneity<I: ExactInt>(pres: &CoxPresentation<I>) -> bool {
    pres.relations.iter().all(|rel| {
        let d0 = pres.monomial_degree(&rel.terms[0].monomial);
        rel.terms
            .iter()
            .all(|t| pres.monomial_degree(&t.monomial) == d0)
    })
}

/// Decides which supports the relation system admits.
///
/// The relations only involve the products `u_i = T_{i,1} T_{i,2}` and are
/// linear in them; the S-variables are free. A subset F is an a-face iff
/// the solution space `W` of the relations contains a vector vanishing at
/// every i where F misses `T_{i,1}` or `T_{i,2}`, and nonzero at all other i.
pub struct FaceOracle<I: ExactInt> {
    n: usize,
    solutions: Vec<Vec<Ratio<I>>>,
}

impl<I: ExactInt> FaceOracle<I> {
    pub fn new(pres: &CoxPresentation<I>) -> Self {
        let mut m = pres.relation_matrix();
        let solutions = kernel_ratio(&mut m, pres.n + 1);
        FaceOracle {
            n: pres.n,
            solutions,
        }
    }

    /// Basis of the solution space in the u-coordinates.
    pub fn solution_space(&self) -> &[Vec<Ratio<I>>] {
        &self.solutions
    }

    /// Feasibility of a subset mask of the 3n+3 generators.
    pub fn is_feasible(&self, mask: u64) -> Result<bool> {
        let r = self.n + 1;
        let nonzero: Vec<bool> = (1..=r)
            .map(|i| {
                mask >> t_index(self.n, i, 1) & 1 == 1 && mask >> t_index(self.n, i, 2) & 1 == 1
            })
            .collect();
        if nonzero.iter().all(|&b| !b) {
            return Ok(true);
        }
        // restrict W to {w_i = 0 for the forced-zero coordinates}
        let b = self.solutions.len();
        let mut constraints: Vec<Vec<Ratio<I>>> = (0..r)
            .filter(|&i| !nonzero[i])
            .map(|i| self.solutions.iter().map(|s| s[i].clone()).collect())
            .collect();
        let params = kernel_ratio(&mut constraints, b);
        let restricted: Vec<Vec<Ratio<I>>> = params
            .iter()
            .map(|c| {
                (0..r)
                    .map(|i| {
                        c.iter()
                            .zip(&self.solutions)
                            .fold(Ratio::zero(), |acc, (cj, s)| acc + cj * &s[i])
                    })
                    .collect()
            })
            .collect();
        let required: Vec<usize> = (0..r).filter(|&i| nonzero[i]).collect();
        if required
            .iter()
            .any(|&i| restricted.iter().all(|w| w[i].is_zero()))
        {
            return Ok(false);
        }
        // Each required coordinate is a nonzero functional on the restricted
        // space, so a moment-curve combination avoids all their kernels.
        for t in 1..=WITNESS_ATTEMPTS as i64 {
            let tt = Ratio::from_integer(int::<I>(t));
            let mut coef = Ratio::one();
            let mut w = vec![Ratio::zero(); r];
            for v in &restricted {
                for (x, y) in w.iter_mut().zip(v) {
                    *x = x.clone() + &coef * y;
                }
                coef = coef * &tt;
            }
            if required.iter().all(|&i| !w[i].is_zero()) {
                return Ok(true);
            }
        }
        Err(Error::SearchExhausted {
            what: "a-face witness".into(),
            attempts: WITNESS_ATTEMPTS,
        })
    }
}

/// A feasible support together with its orbit cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AFace<I: ExactInt> {
    pub subset: u64,
    pub orbit_cone: RationalCone<I>,
}

/// Masks of all a-faces, in increasing order.
pub fn feasible_subsets<I: ExactInt>(pres: &CoxPresentation<I>) -> Result<Vec<u64>> {
    let oracle = FaceOracle::new(pres);
    let s_count = pres.n + 1;
    let t_count = 2 * (pres.n + 1);
    let mut t_ok = Vec::new();
    for t in 0..(1u64 << t_count) {
        if oracle.is_feasible(t << s_count)? {
            t_ok.push(t << s_count);
        }
    }
    let mut out: Vec<u64> = t_ok
        .iter()
        .flat_map(|&t| (0..(1u64 << s_count)).map(move |s| t | s))
        .collect();
    out.sort_unstable();
    Ok(out)
}

pub fn orbit_cone_of<I: ExactInt>(pres: &CoxPresentation<I>, mask: u64) -> Result<RationalCone<I>> {
    let gens: Vec<Vec<I>> = pres
        .generators
        .iter()
        .enumerate()
        .filter(|(j, _)| mask >> j & 1 == 1)
        .map(|(_, g)| g.degree.to_primitive())
        .collect();
    if gens.is_empty() {
        return Ok(RationalCone::zero(pres.signature().rank()));
    }
    RationalCone::from_integer_generators(pres.signature().rank(), &gens)
}

pub fn a_faces<I: ExactInt>(pres: &CoxPresentation<I>) -> Result<Vec<AFace<I>>> {
    feasible_subsets(pres)?
        .into_iter()
        .map(|subset| {
            Ok(AFace {
                subset,
                orbit_cone: orbit_cone_of(pres, subset)?,
            })
        })
        .collect()
}

/// Distinct orbit cones, ordered by their canonical ray lists.
pub fn orbit_cones<I: ExactInt>(pres: &CoxPresentation<I>) -> Result<Vec<RationalCone<I>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in feasible_subsets(pres)? {
        let c = orbit_cone_of(pres, mask)?;
        if seen.insert(c.extremal_rays().to_vec()) {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.extremal_rays().cmp(b.extremal_rays()));
    Ok(out)
}

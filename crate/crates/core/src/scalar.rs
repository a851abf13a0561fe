//! Integer backends and the exact rationals built on them.
//!
//! Every computation in this crate is generic over an integer type `I`
//! implementing [`ExactInt`]; the scalar field is `Ratio<I>`. Polyhedral
//! data (rays, facet normals) is kept as primitive integer vectors, which
//! keeps entries small and makes canonical forms cheap.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

pub trait ExactInt:
    Integer
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

pub fn int<I: ExactInt>(v: i64) -> I {
    I::from_i64(v).expect("integer backend cannot represent an i64 value")
}

pub fn rat<I: ExactInt>(numer: i64, denom: i64) -> Ratio<I> {
    Ratio::new(int(numer), int(denom))
}

pub fn ratio_vec<I: ExactInt>(v: &[I]) -> Vec<Ratio<I>> {
    v.iter().cloned().map(Ratio::from_integer).collect()
}

pub fn is_zero_vec<I: ExactInt>(v: &[I]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot<I: ExactInt>(a: &[I], b: &[I]) -> I {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(I::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn dot_ratio<I: ExactInt>(a: &[Ratio<I>], b: &[Ratio<I>]) -> Ratio<I> {
    a.iter()
        .zip(b)
        .fold(Ratio::zero(), |acc, (x, y)| acc + x * y)
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive<I: ExactInt>(v: &[I]) -> Vec<I> {
    let g = v.iter().fold(I::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        v.to_vec()
    } else {
        v.iter().map(|x| x.clone() / g.clone()).collect()
    }
}

pub(crate) fn make_primitive<I: ExactInt>(v: &mut [I]) {
    let g = v.iter().fold(I::zero(), |g, x| g.gcd(x));
    if !(g.is_zero() || g.is_one()) {
        for x in v.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
}

/// Positive rescaling of a rational vector to a primitive integer vector.
pub fn clear_denominators<I: ExactInt>(v: &[Ratio<I>]) -> Vec<I> {
    let l = v.iter().fold(I::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<I> = v
        .iter()
        .map(|x| x.numer().clone() * (l.clone() / x.denom().clone()))
        .collect();
    primitive(&scaled)
}

/// Representative of the line through `v` whose first nonzero entry is positive.
pub fn line_representative<I: ExactInt>(v: &[I]) -> Vec<I> {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => p.into_iter().map(|x| -x).collect(),
        _ => p,
    }
}

pub fn to_i64_vec<I: ExactInt>(v: &[I]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}

pub fn from_i64_vec<I: ExactInt>(v: &[i64]) -> Vec<I> {
    v.iter().map(|&x| int(x)).collect()
}

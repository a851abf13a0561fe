//! Picard group and curve space of the blow-up of P^1 x P^n at r points.
//!
//! Divisor coordinates are `(a_1, a_2, b_1, .., b_r)` for
//! `a_1 H_1 + a_2 H_2 + sum b_i E_i`; curve coordinates are
//! `(c_1, c_2, d_1, .., d_r)` for `c_1 h_1 + c_2 h_2 + sum d_i e_i`.
//! The intersection pairing is `a_1 c_1 + a_2 c_2 - sum b_i d_i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{clear_denominators, int, ExactInt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub n: usize,
    pub r: usize,
}

impl Signature {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("n must be at least 1".into()));
        }
        Ok(Signature { n, r })
    }

    /// Rank of both the Picard lattice and the curve lattice.
    pub fn rank(&self) -> usize {
        self.r + 2
    }

    pub fn divisor_labels(&self) -> Vec<String> {
        labels("H", "E", self.r)
    }

    pub fn curve_labels(&self) -> Vec<String> {
        labels("h", "e", self.r)
    }

    /// Sign pattern of the pairing: coordinates of the exceptional classes are negated.
    pub fn pairing_signs(&self) -> Vec<bool> {
        (0..self.rank()).map(|i| i >= 2).collect()
    }
}

fn labels(h: &str, e: &str, r: usize) -> Vec<String> {
    let mut out = vec![format!("{h}_1"), format!("{h}_2")];
    out.extend((1..=r).map(|i| format!("{e}_{i}")));
    out
}

macro_rules! lattice_vector {
    ($name:ident, $h:literal, $e:literal) => {
        #[derive(Debug, Clone, PartialEq, Eq, Hash)]
        pub struct $name<I: ExactInt> {
            sig: Signature,
            coeffs: Vec<Ratio<I>>,
        }

        impl<I: ExactInt> $name<I> {
            pub fn new(sig: Signature, coeffs: Vec<Ratio<I>>) -> Result<Self> {
                Error::check_dim(sig.rank(), coeffs.len())?;
                Ok($name { sig, coeffs })
            }

            pub fn from_ints(sig: Signature, coeffs: &[i64]) -> Result<Self> {
                Self::new(sig, coeffs.iter().map(|&c| Ratio::from_integer(int(c))).collect())
            }

            pub fn zero(sig: Signature) -> Self {
                $name { sig, coeffs: vec![Ratio::zero(); sig.rank()] }
            }

            fn unit(sig: Signature, idx: usize) -> Self {
                let mut v = Self::zero(sig);
                v.coeffs[idx] = Ratio::one();
                v
            }

            /// First (`i = 1`) or second (`i = 2`) pulled-back class.
            pub fn pullback(sig: Signature, i: usize) -> Self {
                assert!(i == 1 || i == 2, "factor index must be 1 or 2");
                Self::unit(sig, i - 1)
            }

            /// Exceptional class over the `i`-th point, `1 <= i <= r`.
            pub fn exceptional(sig: Signature, i: usize) -> Self {
                assert!(i >= 1 && i <= sig.r, "point index out of range");
                Self::unit(sig, i + 1)
            }

            /// Sum of the exceptional classes over the listed (1-based) points.
            pub fn exceptional_sum(sig: Signature, points: &[usize]) -> Self {
                points.iter().fold(Self::zero(sig), |acc, &i| acc + Self::exceptional(sig, i))
            }

            pub fn signature(&self) -> Signature {
                self.sig
            }

            pub fn coeffs(&self) -> &[Ratio<I>] {
                &self.coeffs
            }

            pub fn scale(&self, s: &Ratio<I>) -> Self {
                $name { sig: self.sig, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
            }

            /// Primitive integer vector on the same ray.
            pub fn to_primitive(&self) -> Vec<I> {
                clear_denominators(&self.coeffs)
            }

            pub fn from_int_vec(sig: Signature, v: &[I]) -> Result<Self> {
                Self::new(sig, v.iter().cloned().map(Ratio::from_integer).collect())
            }
        }

        impl<I: ExactInt> Add for $name<I> {
            type Output = Self;
            fn add(self, rhs: Self) -> Self {
                assert_eq!(self.sig, rhs.sig, "signature mismatch");
                $name {
                    sig: self.sig,
                    coeffs: self.coeffs.into_iter().zip(rhs.coeffs).map(|(a, b)| a + b).collect(),
                }
            }
        }

        impl<I: ExactInt> Sub for $name<I> {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                self + (-rhs)
            }
        }

        impl<I: ExactInt> Neg for $name<I> {
            type Output = Self;
            fn neg(self) -> Self {
                $name { sig: self.sig, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
            }
        }

        impl<I: ExactInt> Mul<$name<I>> for i64 {
            type Output = $name<I>;
            fn mul(self, rhs: $name<I>) -> $name<I> {
                rhs.scale(&Ratio::from_integer(int(self)))
            }
        }

        impl<I: ExactInt> fmt::Display for $name<I> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let names = labels($h, $e, self.sig.r);
                let mut first = true;
                for (c, name) in self.coeffs.iter().zip(&names) {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = *c < Ratio::zero();
                    let abs = if neg { -c.clone() } else { c.clone() };
                    match (first, neg) {
                        (true, true) => write!(f, "-")?,
                        (false, true) => write!(f, " - ")?,
                        (false, false) => write!(f, " + ")?,
                        (true, false) => {}
                    }
                    if abs.is_one() {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{abs}{name}")?;
                    }
                    first = false;
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    };
}

lattice_vector!(DivisorVector, "H", "E");
lattice_vector!(CurveVector, "h", "e");

/// Intersection number `D . C`.
pub fn pairing<I: ExactInt>(d: &DivisorVector<I>, c: &CurveVector<I>) -> Result<Ratio<I>> {
    if d.sig != c.sig {
        return Err(Error::Dimension {
            expected: d.sig.rank(),
            found: c.sig.rank(),
        });
    }
    Ok(pairing_coords(&d.coeffs, &c.coeffs))
}

pub(crate) fn pairing_coords<I: ExactInt>(d: &[Ratio<I>], c: &[Ratio<I>]) -> Ratio<I> {
    d.iter().zip(c).enumerate().fold(
        Ratio::zero(),
        |acc, (i, (a, b))| {
            if i < 2 {
                acc + a * b
            } else {
                acc - a * b
            }
        },
    )
}

/// Integer version of the pairing on coordinate vectors.
pub fn pairing_int<I: ExactInt>(d: &[I], c: &[I]) -> I {
    d.iter()
        .zip(c)
        .enumerate()
        .fold(I::zero(), |acc, (i, (a, b))| {
            if i < 2 {
                acc + a.clone() * b.clone()
            } else {
                acc - a.clone() * b.clone()
            }
        })
}

/// `-K = 2 H_1 + (n+1) H_2 - n sum E_i`. The coefficient `n` is used on every
/// exceptional class for any number of points.
pub fn anticanonical<I: ExactInt>(sig: Signature) -> DivisorVector<I> {
    let n = sig.n as i64;
    let mut c = vec![2, n + 1];
    c.extend(std::iter::repeat_n(-n, sig.r));
    DivisorVector::from_ints(sig, &c).expect("length matches signature")
}

/// `(n+1) H_2 - n sum E_i`, the pull-back of the n+1 coordinate hyperplanes; needs `r = n+1`.
pub fn boundary_divisor<I: ExactInt>(sig: Signature) -> Result<DivisorVector<I>> {
    if sig.r != sig.n + 1 {
        return Err(Error::UnsupportedSignature { n: sig.n, r: sig.r });
    }
    let n = sig.n as i64;
    let mut c = vec![0, n + 1];
    c.extend(std::iter::repeat_n(-n, sig.r));
    DivisorVector::from_ints(sig, &c)
}

//! The named cones of X = Bl_r(P^1 x P^n): Mori and nef cones in the range
//! where they are known, the movable/effective cones and moving curves for
//! r = n+1, plus the ampleness and log Fano tests.

mod delpezzo;

pub use delpezzo::{
    del_pezzo_embedding, del_pezzo_mori_rays, del_pezzo_rows, del_pezzo_table,
    verify_del_pezzo_embedding, DelPezzoEmbedding, DelPezzoRow,
};

use num_rational::Ratio;
use num_traits::One;

use crate::cones::RationalCone;
use crate::coxring::generator_degrees;
use crate::error::{Error, Result};
use crate::lattice::{
    anticanonical, boundary_divisor, pairing_int, CurveVector, DivisorVector, Signature,
};
use crate::scalar::{int, ExactInt};

/// All `k`-element subsets of `{1, .., m}`, in lexicographic order.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=m {
            if m - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(1, m, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// True when the Mori cone of the signature is known: `r <= n+2`, or `r = n+3` with `n <= 4`.
pub fn is_supported(sig: Signature) -> bool {
    sig.r <= sig.n + 2 || (sig.r == sig.n + 3 && sig.n <= 4)
}

fn check_supported(sig: Signature) -> Result<()> {
    if is_supported(sig) {
        Ok(())
    } else {
        Err(Error::UnsupportedSignature { n: sig.n, r: sig.r })
    }
}

fn curve<I: ExactInt>(sig: Signature, a: i64, b: i64, minus: &[usize]) -> CurveVector<I> {
    a * CurveVector::pullback(sig, 1) + b * CurveVector::pullback(sig, 2)
        - CurveVector::exceptional_sum(sig, minus)
}

/// `a H_1 + b H_2 - sum_{i in heavy} k E_i - sum_{i in light} l E_i`.
fn divisor<I: ExactInt>(
    sig: Signature,
    a: i64,
    b: i64,
    heavy: (&[usize], i64),
    light: (&[usize], i64),
) -> DivisorVector<I> {
    a * DivisorVector::pullback(sig, 1) + b * DivisorVector::pullback(sig, 2)
        - heavy.1 * DivisorVector::exceptional_sum(sig, heavy.0)
        - light.1 * DivisorVector::exceptional_sum(sig, light.0)
}

fn complement(m: usize, s: &[usize]) -> Vec<usize> {
    (1..=m).filter(|i| !s.contains(i)).collect()
}

fn curve_cone<I: ExactInt>(sig: Signature, gens: &[CurveVector<I>]) -> Result<RationalCone<I>> {
    let v: Vec<Vec<I>> = gens.iter().map(|g| g.to_primitive()).collect();
    RationalCone::from_integer_generators(sig.rank(), &v)
}

fn divisor_cone<I: ExactInt>(sig: Signature, gens: &[DivisorVector<I>]) -> Result<RationalCone<I>> {
    let v: Vec<Vec<I>> = gens.iter().map(|g| g.to_primitive()).collect();
    RationalCone::from_integer_generators(sig.rank(), &v)
}

/// Generators of the cone of curves: `h_1 - e_i`, `h_2 - e_i`, `e_i`, plus the
/// rational normal curves `h_1 + n h_2 - e_{i_1} - .. - e_{i_{n+2}}` once r >= n+2.
pub fn mori_generators<I: ExactInt>(sig: Signature) -> Result<Vec<CurveVector<I>>> {
    check_supported(sig)?;
    let (n, r) = (sig.n, sig.r);
    if r == 0 {
        return Ok(vec![curve(sig, 1, 0, &[]), curve(sig, 0, 1, &[])]);
    }
    let mut gens = Vec::new();
    for i in 1..=r {
        gens.push(curve(sig, 1, 0, &[i]));
        gens.push(curve(sig, 0, 1, &[i]));
        gens.push(CurveVector::exceptional(sig, i));
    }
    if r >= n + 2 {
        for s in subsets(r, n + 2) {
            gens.push(curve(sig, 1, n as i64, &s));
        }
    }
    Ok(gens)
}

pub fn mori_cone<I: ExactInt>(sig: Signature) -> Result<RationalCone<I>> {
    curve_cone(sig, &mori_generators(sig)?)
}

/// The explicit nef cone generators for r <= n+1, r = n+2 and r = n+3 (n <= 4).
pub fn nef_generators<I: ExactInt>(sig: Signature) -> Result<Vec<DivisorVector<I>>> {
    check_supported(sig)?;
    let (n, r) = (sig.n, sig.r);
    let ni = n as i64;
    let mut gens = vec![
        divisor(sig, 1, 0, (&[], 0), (&[], 0)),
        divisor(sig, 0, 1, (&[], 0), (&[], 0)),
    ];
    // D_t = H_1 + H_2 - E_{i_1} - .. - E_{i_t}
    for t in 1..=r.min(n + 1) {
        for s in subsets(r, t) {
            gens.push(divisor(sig, 1, 1, (&s, 1), (&[], 0)));
        }
    }
    if r == n + 2 {
        let all: Vec<usize> = (1..=r).collect();
        gens.push(divisor(sig, 2, 1, (&all, 1), (&[], 0)));
        gens.push(divisor(sig, ni, ni + 1, (&all, ni), (&[], 0)));
    }
    if r == n + 3 {
        for size in [n + 2, n + 3] {
            for s in subsets(r, size) {
                gens.push(divisor(sig, 2, 1, (&s, 1), (&[], 0)));
                gens.push(divisor(sig, ni, ni + 1, (&s, ni), (&[], 0)));
            }
        }
        // D_{k,s}: coefficient k on s = n-k+2 of the points and k-1 on the rest.
        for k in 2..=n + 1 {
            let s = n + 2 - k;
            let ki = k as i64;
            for heavy in subsets(r, s) {
                let light = complement(r, &heavy);
                gens.push(divisor(sig, ki, ki, (&heavy, ki), (&light, ki - 1)));
            }
        }
    }
    Ok(gens)
}

pub fn nef_cone<I: ExactInt>(sig: Signature) -> Result<RationalCone<I>> {
    divisor_cone(sig, &nef_generators(sig)?)
}

/// Expected number of extremal rays of the nef cone, where a closed formula is known.
pub fn nef_ray_count_formula(sig: Signature) -> Option<u64> {
    let (n, r) = (sig.n as u32, sig.r as u32);
    if sig.r == sig.n + 1 {
        Some(2u64.pow(n + 1) + 1)
    } else if sig.r == sig.n + 2 {
        Some(2u64.pow(n + 2) + 2)
    } else if sig.r == sig.n + 3 && sig.n <= 4 {
        Some(2u64.pow(n + 4) - u64::from((n + 3) * (n + 2) / 2))
    } else if r <= n {
        Some(2u64.pow(r) + 1)
    } else {
        None
    }
}

/// Dual of a cone of curves, expressed in divisor coordinates via the intersection pairing.
pub fn divisor_dual<I: ExactInt>(
    sig: Signature,
    curves: &RationalCone<I>,
) -> Result<RationalCone<I>> {
    Ok(curves.dual()?.flip_signs(&sig.pairing_signs()))
}

/// Dual of a cone of divisors, expressed in curve coordinates via the intersection pairing.
pub fn curve_dual<I: ExactInt>(
    sig: Signature,
    divisors: &RationalCone<I>,
) -> Result<RationalCone<I>> {
    Ok(divisors.dual()?.flip_signs(&sig.pairing_signs()))
}

/// Generators of the movable cone of X^{1,n}_{n+1}.
pub fn movable_generators<I: ExactInt>(n: usize) -> Result<Vec<DivisorVector<I>>> {
    let sig = Signature::new(n, n + 1)?;
    let r = n + 1;
    let ni = n as i64;
    let all: Vec<usize> = (1..=r).collect();
    let mut gens = vec![divisor(sig, 1, 0, (&[], 0), (&[], 0))];
    for h in 0..n {
        for s in subsets(r, h) {
            gens.push(divisor(sig, 0, 1, (&s, 1), (&[], 0)));
        }
    }
    for s in subsets(r, n) {
        gens.push(divisor(sig, 1, 1, (&s, 1), (&[], 0)));
    }
    gens.push(divisor(sig, 1, 1, (&all, 1), (&[], 0)));
    for k in 2..n {
        let ki = k as i64;
        for heavy in subsets(r, n - k) {
            let light = complement(r, &heavy);
            gens.push(divisor(sig, 0, ki, (&heavy, ki), (&light, ki - 1)));
        }
    }
    gens.push(divisor(sig, 0, ni, (&all, ni - 1), (&[], 0)));
    Ok(gens)
}

pub fn movable_cone<I: ExactInt>(n: usize) -> Result<RationalCone<I>> {
    divisor_cone(Signature::new(n, n + 1)?, &movable_generators(n)?)
}

/// Generators of the cone of moving curves of X^{1,n}_{n+1}.
pub fn moving_curve_generators<I: ExactInt>(n: usize) -> Result<Vec<CurveVector<I>>> {
    let sig = Signature::new(n, n + 1)?;
    let r = n + 1;
    let mut gens = vec![curve(sig, 1, 0, &[])];
    for i in 1..=r {
        gens.push(curve(sig, 0, 1, &[i]));
    }
    for s in subsets(r, n) {
        gens.push(curve(sig, 1, n as i64 - 1, &s));
    }
    for i in 1..=r {
        gens.push(CurveVector::exceptional(sig, i));
    }
    Ok(gens)
}

pub fn moving_curve_cone<I: ExactInt>(n: usize) -> Result<RationalCone<I>> {
    curve_cone(Signature::new(n, n + 1)?, &moving_curve_generators(n)?)
}

/// Cone spanned by the degrees of the Cox ring generators of X^{1,n}_{n+1}.
pub fn effective_cone<I: ExactInt>(n: usize) -> Result<RationalCone<I>> {
    let sig = Signature::new(n, n + 1)?;
    divisor_cone(sig, &generator_degrees(n)?)
}

fn mori_rays_for<I: ExactInt>(d: &DivisorVector<I>) -> Result<Vec<Vec<I>>> {
    Ok(mori_cone(d.signature())?.extremal_rays().to_vec())
}

/// Nef iff `D . C >= 0` on every extremal ray of the Mori cone.
pub fn is_nef<I: ExactInt>(d: &DivisorVector<I>) -> Result<bool> {
    let v = d.to_primitive();
    Ok(mori_rays_for(d)?
        .iter()
        .all(|c| !pairing_int(&v, c).is_negative()))
}

/// Ample iff `D . C > 0` on every extremal ray of the (closed, polyhedral) Mori cone.
pub fn is_ample<I: ExactInt>(d: &DivisorVector<I>) -> Result<bool> {
    let v = d.to_primitive();
    Ok(mori_rays_for(d)?
        .iter()
        .all(|c| pairing_int(&v, c).is_positive()))
}

/// `-K - eps D` on X^{1,n}_{n+1}, with `D` the boundary divisor.
pub fn log_fano_divisor<I: ExactInt>(n: usize, eps: &Ratio<I>) -> Result<DivisorVector<I>> {
    let sig = Signature::new(n, n + 1)?;
    Ok(anticanonical(sig) - boundary_divisor(sig)?.scale(eps))
}

/// Open interval `((n-2)/n, 1)` of `eps` for which `-K - eps D` is ample.
pub fn log_fano_interval<I: ExactInt>(n: usize) -> Result<(Ratio<I>, Ratio<I>)> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    let n = n as i64;
    Ok((Ratio::new(int(n - 2), int(n)), Ratio::one()))
}

/// Mori dream space criterion for blow-ups of (P^n)^s at r points:
/// `1/(s+1) + 1/(r-n-1) + 1/(n+1) > 1`, evaluated exactly.
pub fn ct_criterion(s: usize, n: usize, r: usize) -> Result<bool> {
    if s == 0 || n == 0 {
        return Err(Error::Domain("s and n must be at least 1".into()));
    }
    if r <= n + 1 {
        return Err(Error::Domain(format!(
            "need r > n + 1, got r = {r}, n = {n}"
        )));
    }
    let q = |d: usize| Ratio::new(1i128, d as i128);
    Ok(q(s + 1) + q(r - n - 1) + q(n + 1) > Ratio::one())
}

/// Splitting type `(a, b)` of the scroll cut out on the Segre variety by a
/// general (n+2)-plane.
pub fn scroll_type(n: usize) -> (usize, usize) {
    if n % 2 == 1 {
        (n.div_ceil(2), n.div_ceil(2))
    } else {
        (n / 2, (n + 2) / 2)
    }
}

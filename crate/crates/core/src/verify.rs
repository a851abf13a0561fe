//! Self-checks behind `coxfan verify`.

use num_bigint::BigInt;

use crate::coxring::{build_presentation, check_homogeneity, feasible_subsets, sample_points};
use crate::error::Result;
use crate::geometry::{
    curve_dual, divisor_dual, is_supported, mori_cone, movable_cone, moving_curve_cone, nef_cone,
    nef_ray_count_formula, verify_del_pezzo_embedding,
};
use crate::gitfan::mori_chamber_decomposition;
use crate::lattice::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Cones,
    Cox,
    Mcd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from_result(name: String, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Check {
                name,
                passed,
                detail,
            },
            Err(e) => Check {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        }
    }
}

/// Reference chamber counts for the decomposition of Eff at n = 2, 3, 4.
pub fn expected_chamber_count(n: usize) -> Option<usize> {
    match n {
        2 => Some(92),
        3 => Some(550),
        4 => Some(6307),
        _ => None,
    }
}

pub fn run_suite(suite: Suite, n_max: usize, mut report: impl FnMut(&Check)) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut push = |c: Check| {
        report(&c);
        checks.push(c);
    };
    if matches!(suite, Suite::All | Suite::Cones) {
        for n in 1..=n_max {
            for r in n + 1..=n + 3 {
                let sig = Signature::new(n, r).expect("n >= 1");
                if !is_supported(sig) {
                    continue;
                }
                push(Check::from_result(
                    format!("nef-rays n={n} r={r}"),
                    (|| {
                        let got = nef_cone::<BigInt>(sig)?.extremal_rays().len() as u64;
                        let want = nef_ray_count_formula(sig).unwrap_or(0);
                        Ok((got == want, format!("{got} rays, expected {want}")))
                    })(),
                ));
                push(Check::from_result(
                    format!("mori-nef-duality n={n} r={r}"),
                    (|| {
                        let ok =
                            divisor_dual(sig, &mori_cone::<BigInt>(sig)?)?.equals(&nef_cone(sig)?);
                        Ok((ok, String::new()))
                    })(),
                ));
            }
        }
        for n in 2..=n_max {
            push(Check::from_result(
                format!("movable-duality n={n}"),
                (|| {
                    let sig = Signature::new(n, n + 1)?;
                    let ok = curve_dual(sig, &movable_cone::<BigInt>(n)?)?
                        .equals(&moving_curve_cone(n)?);
                    Ok((ok, String::new()))
                })(),
            ));
        }
        for n in 2..=n_max.min(4) {
            push(Check::from_result(
                format!("del-pezzo-embedding n={n}"),
                (|| Ok((verify_del_pezzo_embedding::<BigInt>(n)?, String::new())))(),
            ));
        }
    }
    if matches!(suite, Suite::All | Suite::Cox) {
        for n in 2..=n_max.max(2) {
            push(Check::from_result(
                format!("cox-homogeneity n={n}"),
                (|| {
                    for seed in 0..3 {
                        if !check_homogeneity(&build_presentation(
                            n,
                            sample_points::<BigInt>(n, seed)?,
                        )?) {
                            return Ok((false, format!("seed {seed}")));
                        }
                    }
                    Ok((true, "seeds 0,1,2".into()))
                })(),
            ));
        }
        for n in 2..=n_max.clamp(2, 3) {
            push(Check::from_result(
                format!("a-face-seed-invariance n={n}"),
                (|| {
                    let base =
                        feasible_subsets(&build_presentation(n, sample_points::<BigInt>(n, 0)?)?)?;
                    for seed in 1..3 {
                        if feasible_subsets(&build_presentation(
                            n,
                            sample_points::<BigInt>(n, seed)?,
                        )?)? != base
                        {
                            return Ok((false, format!("seed {seed} differs")));
                        }
                    }
                    Ok((true, format!("{} a-faces", base.len())))
                })(),
            ));
        }
    }
    if matches!(suite, Suite::All | Suite::Mcd) {
        for n in 2..=n_max.clamp(2, 4) {
            push(Check::from_result(
                format!("chamber-count n={n}"),
                (|| {
                    let pres = build_presentation(n, sample_points::<BigInt>(n, 0)?)?;
                    let cs = mori_chamber_decomposition(&pres)?;
                    let want = expected_chamber_count(n).unwrap_or(0);
                    let nef = nef_cone::<BigInt>(pres.signature())?;
                    let has_nef = cs.chambers.iter().any(|c| c.cone.equals(&nef));
                    let got = cs.chambers.len();
                    Ok((
                        got == want && has_nef,
                        format!("{got} chambers, expected {want}; nef chamber present: {has_nef}"),
                    ))
                })(),
            ));
        }
    }
    checks
}

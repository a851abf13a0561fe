//! Acceptance suite: one PASS/FAIL line per criterion, with its pinned limits.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use coxfan::coxring::{
    build_presentation, check_homogeneity, feasible_subsets, generator_degrees, sample_points,
};
use coxfan::geometry::{
    curve_dual, del_pezzo_embedding, del_pezzo_mori_rays, del_pezzo_rows, divisor_dual, is_ample,
    is_supported, log_fano_divisor, mori_cone, mori_generators, movable_cone, movable_generators,
    moving_curve_cone, moving_curve_generators, nef_cone, nef_generators,
    verify_del_pezzo_embedding,
};
use coxfan::gitfan::{chamber_count, locate, mori_chamber_decomposition, Location};
use coxfan::lattice::DivisorVector;
use coxfan::scalar::to_i64_vec;
use coxfan::{Cone, Int, Rational, RationalCone, Signature};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Report {
    failures: Vec<String>,
}

impl Report {
    fn run(&mut self, id: u32, title: &str, limit: Duration, check: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(d) => (false, d),
        };
        println!(
            "{} [{id}] {title}: {detail} ({:.2}s, limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        if !ok {
            self.failures.push(format!("[{id}] {title}"));
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn sig(n: usize, r: usize) -> Signature {
    Signature::new(n, r).unwrap()
}

fn supported_signatures() -> Vec<Signature> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for r in 0..=n + 3 {
            if is_supported(sig(n, r)) {
                out.push(sig(n, r));
            }
        }
    }
    out
}

fn ints(rows: &[Vec<Int>]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| to_i64_vec(r).unwrap()).collect()
}

fn pair(d: &[i64], c: &[i64]) -> i64 {
    d[0] * c[0] + d[1] * c[1] - d[2..].iter().zip(&c[2..]).map(|(a, b)| a * b).sum::<i64>()
}

fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    coxfan::linalg::rref(&mut m, rows.first().map_or(0, Vec::len)).len()
}

/// Nef ray counts from the closed formulas.
fn expected_nef_rays(n: usize, r: usize) -> Option<usize> {
    if r == n + 1 {
        Some((1 << (n + 1)) + 1)
    } else if r == n + 2 {
        Some((1 << (n + 2)) + 2)
    } else if r == n + 3 {
        Some((1 << (n + 4)) - (n + 3) * (n + 2) / 2)
    } else {
        None
    }
}

fn criterion_1() -> Outcome {
    let mut seen = Vec::new();
    for n in 1..=6 {
        let top = if n <= 4 { n + 3 } else { n + 2 };
        for r in n + 1..=top {
            let got = nef_cone::<Int>(sig(n, r)).map_err(e)?.extremal_rays().len();
            let want = expected_nef_rays(n, r).unwrap();
            ensure(got == want, || {
                format!("n={n} r={r}: {got} rays, formula {want}")
            })?;
            if r == n + 3 {
                seen.push(got);
            }
        }
    }
    Ok(format!(
        "all counts match the formulas; r=n+3 gives {seen:?}"
    ))
}

/// Duality via the library, plus an independent check: every nef ray pairs nonnegatively with every
/// Mori ray and is cut out by rank-1 independent tight ones.
fn criterion_2() -> Outcome {
    let sigs = supported_signatures();
    for &s in &sigs {
        let mori = mori_cone::<Int>(s).map_err(e)?;
        let nef = nef_cone::<Int>(s).map_err(e)?;
        ensure(divisor_dual(s, &mori).map_err(e)?.equals(&nef), || {
            format!("{s:?}: dual(mori) != nef")
        })?;
        let m = ints(mori.extremal_rays());
        for d in ints(nef.extremal_rays()) {
            ensure(m.iter().all(|c| pair(&d, c) >= 0), || {
                format!("{s:?}: {d:?} is negative on a curve")
            })?;
            let tight: Vec<Vec<i64>> = m.iter().filter(|c| pair(&d, c) == 0).cloned().collect();
            ensure(rank_i64(&tight) + 1 == s.rank(), || {
                format!("{s:?}: {d:?} is not extremal in the dual")
            })?;
        }
    }
    Ok(format!("{} signatures", sigs.len()))
}

fn criterion_3(n: usize, want: usize) -> Outcome {
    let pres = build_presentation(n, sample_points::<Int>(n, 0).map_err(e)?).map_err(e)?;
    let got = chamber_count(&pres).map_err(e)?;
    ensure(got == want, || {
        format!("observed {got} chambers, expected {want}")
    })?;
    Ok(format!("{got} chambers"))
}

fn criterion_4() -> Outcome {
    for n in 2..=3 {
        let pres = build_presentation(n, sample_points::<Int>(n, 0).map_err(e)?).map_err(e)?;
        let cs = mori_chamber_decomposition(&pres).map_err(e)?;
        let nef = nef_cone::<Int>(sig(n, n + 1)).map_err(e)?;
        let hits = cs.chambers.iter().filter(|c| c.cone.equals(&nef)).count();
        ensure(hits == 1, || {
            format!("n={n}: nef cone appears {hits} times")
        })?;
    }
    Ok("nef cone is a chamber for n = 2, 3".into())
}

/// Independent enumeration of (-1)-classes: d^2 - sum m^2 = -1 and 3d - sum m = 1.
fn minus_one_classes(points: usize) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for i in 0..points {
        let mut v = vec![0; points + 1];
        v[i + 1] = 1;
        out.insert(v);
    }
    let mut m = vec![0i64; points];
    loop {
        let sum: i64 = m.iter().sum();
        let sq: i64 = m.iter().map(|x| x * x).sum();
        if (sum + 1) % 3 == 0 {
            let d = (sum + 1) / 3;
            if d >= 1 && d * d - sq == -1 {
                let mut v = vec![d];
                v.extend(m.iter().map(|x| -x));
                out.insert(v);
            }
        }
        let mut i = 0;
        loop {
            if i == points {
                return out;
            }
            m[i] += 1;
            if m[i] <= 3 {
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

fn criterion_5() -> Outcome {
    let expected_rows: [(usize, &[usize], usize); 3] = [
        (3, &[6, 15, 6], 27),
        (2, &[7, 21, 21, 7], 56),
        (1, &[8, 28, 56, 56, 56, 28, 8], 240),
    ];
    for (degree, rows, total) in expected_rows {
        let sizes: Vec<usize> = del_pezzo_rows(degree)
            .map_err(e)?
            .iter()
            .map(Vec::len)
            .collect();
        ensure(sizes == rows, || format!("degree {degree}: rows {sizes:?}"))?;
        let rays: BTreeSet<Vec<i64>> = ints(&del_pezzo_mori_rays::<Int>(degree).map_err(e)?)
            .into_iter()
            .collect();
        ensure(rays.len() == total, || {
            format!("degree {degree}: {} rays", rays.len())
        })?;
        ensure(rays == minus_one_classes(9 - degree), || {
            format!("degree {degree}: not the (-1)-curves")
        })?;
    }
    Ok("27 / 56 / 240 rays with the expected row sizes".into())
}

fn criterion_6() -> Outcome {
    let mut counts = Vec::new();
    for n in 2..=4 {
        ensure(verify_del_pezzo_embedding::<Int>(n).map_err(e)?, || {
            format!("n={n}: library check failed")
        })?;
        let s = sig(n, n + 3);
        let emb = del_pezzo_embedding::<Int>(n).map_err(e)?;
        let nef: Vec<Vec<i64>> = nef_generators::<Int>(s)
            .map_err(e)?
            .iter()
            .map(|d| to_i64_vec(&d.to_primitive()).unwrap())
            .collect();
        let mori = mori_cone::<Int>(s).map_err(e)?;
        let rays = del_pezzo_mori_rays::<Int>(5 - n).map_err(e)?;
        for ray in &rays {
            let image = emb.apply(ray).map_err(e)?;
            let c = to_i64_vec(&image.to_primitive()).unwrap();
            ensure(nef.iter().all(|d| pair(d, &c) >= 0), || {
                format!("n={n}: image {image} is not effective")
            })?;
            ensure(mori.contains(image.coeffs(), false).map_err(e)?, || {
                format!("n={n}: {image} outside mori cone")
            })?;
        }
        counts.push(rays.len());
    }
    Ok(format!("images of {counts:?} rays are effective"))
}

fn criterion_7() -> Outcome {
    for n in 2..=6 {
        let degrees: Vec<Vec<i64>> = generator_degrees::<Int>(n)
            .map_err(e)?
            .iter()
            .map(|d| {
                d.coeffs()
                    .iter()
                    .map(|c| c.to_integer().try_into().unwrap())
                    .collect()
            })
            .collect();
        let mut h1 = vec![0; n + 3];
        h1[0] = 1;
        for seed in 0..3 {
            let pres =
                build_presentation(n, sample_points::<Int>(n, seed).map_err(e)?).map_err(e)?;
            ensure(check_homogeneity(&pres), || {
                format!("n={n} seed={seed}: library check failed")
            })?;
            ensure(pres.relations.len() == n - 1, || {
                format!("n={n}: {} relations", pres.relations.len())
            })?;
            for rel in &pres.relations {
                for t in &rel.terms {
                    let deg: Vec<i64> = (0..n + 3)
                        .map(|j| degrees[t.monomial[0]][j] + degrees[t.monomial[1]][j])
                        .collect();
                    ensure(deg == h1, || {
                        format!("n={n} seed={seed}: monomial of degree {deg:?}")
                    })?;
                }
            }
        }
    }
    Ok("all relations homogeneous of degree H_1".into())
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    for n in 2..=5 {
        for k in -10..=30 {
            let eps = Rational::new(k.into(), 20.into());
            let lower = Rational::new((n as i64 - 2).into(), (n as i64).into());
            let want = eps > lower && eps < Rational::from_integer(1.into());
            let got = is_ample(&log_fano_divisor::<Int>(n, &eps).map_err(e)?).map_err(e)?;
            ensure(got == want, || format!("n={n} eps={eps}: ample={got}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} values of eps"))
}

fn criterion_9() -> Outcome {
    for n in 2..=5 {
        let s = sig(n, n + 1);
        let dual = curve_dual(s, &movable_cone::<Int>(n).map_err(e)?).map_err(e)?;
        ensure(dual.equals(&moving_curve_cone(n).map_err(e)?), || {
            format!("n={n}: dual(mov) differs")
        })?;
        let mov: Vec<Vec<i64>> = movable_generators::<Int>(n)
            .map_err(e)?
            .iter()
            .map(|d| to_i64_vec(&d.to_primitive()).unwrap())
            .collect();
        let curves: Vec<Vec<i64>> = moving_curve_generators::<Int>(n)
            .map_err(e)?
            .iter()
            .map(|c| to_i64_vec(&c.to_primitive()).unwrap())
            .collect();
        for c in &curves {
            ensure(mov.iter().all(|d| pair(d, c) >= 0), || {
                format!("n={n}: {c:?} negative on a movable class")
            })?;
        }
    }
    Ok("n = 2..5".into())
}

fn random_cone(rng: &mut ChaCha8Rng) -> Option<Cone> {
    let d = rng.gen_range(2..=5);
    let k = rng.gen_range(d..=d + 4);
    let gens: Vec<Vec<Int>> = (0..k)
        .map(|_| {
            (0..d)
                .map(|_| Int::from(rng.gen_range(-4..=4i64)))
                .collect()
        })
        .collect();
    let c = RationalCone::from_integer_generators(d, &gens).ok()?;
    c.is_full_dimensional().then_some(c)
}

fn extremal_by_removal(cone: &Cone) -> bool {
    let rays = cone.extremal_rays();
    (0..rays.len()).all(|i| {
        let rest: Vec<Vec<Int>> = rays
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, r)| r.clone())
            .collect();
        let smaller = if rest.is_empty() {
            RationalCone::zero(cone.ambient_dim())
        } else {
            RationalCone::from_integer_generators(cone.ambient_dim(), &rest).unwrap()
        };
        !smaller.contains_int(&rays[i], false)
    })
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut involutions = 0;
    while involutions < 200 {
        let Some(c) = random_cone(&mut rng) else {
            continue;
        };
        let back = c.dual().map_err(e)?.dual().map_err(e)?;
        ensure(back == c, || format!("dual involution fails on {c}"))?;
        ensure(extremal_by_removal(&c), || {
            format!("non-extremal ray in {c}")
        })?;
        involutions += 1;
    }

    let mut lists = 0;
    for s in supported_signatures().into_iter().filter(|s| s.n <= 4) {
        let gens: Vec<Vec<Int>> = mori_generators::<Int>(s)
            .map_err(e)?
            .iter()
            .map(|c| c.to_primitive())
            .collect();
        let cone = RationalCone::from_integer_generators(s.rank(), &gens).map_err(e)?;
        ensure(extremal_by_removal(&cone), || format!("{s:?}: mori"))?;
        let distinct: BTreeSet<_> = gens.into_iter().collect();
        ensure(distinct.len() == cone.extremal_rays().len(), || {
            format!("{s:?}: mori list has redundant generators")
        })?;
        let nef: BTreeSet<Vec<Int>> = nef_generators::<Int>(s)
            .map_err(e)?
            .iter()
            .map(|d| d.to_primitive())
            .collect();
        let nef_cone = nef_cone::<Int>(s).map_err(e)?;
        ensure(
            extremal_by_removal(&nef_cone) && nef.len() == nef_cone.extremal_rays().len(),
            || format!("{s:?}: nef list has redundant generators"),
        )?;
        lists += 2;
    }
    for n in 2..=4 {
        for (what, cone, count) in [
            (
                "mov",
                movable_cone::<Int>(n).map_err(e)?,
                movable_generators::<Int>(n).map_err(e)?.len(),
            ),
            (
                "mov1",
                moving_curve_cone::<Int>(n).map_err(e)?,
                moving_curve_generators::<Int>(n).map_err(e)?.len(),
            ),
            (
                "eff",
                coxfan::geometry::effective_cone::<Int>(n).map_err(e)?,
                generator_degrees::<Int>(n).map_err(e)?.len(),
            ),
        ] {
            ensure(
                extremal_by_removal(&cone) && cone.extremal_rays().len() == count,
                || format!("n={n}: {what} generators are not all extremal"),
            )?;
            lists += 1;
        }
    }

    let pres = build_presentation(2, sample_points::<Int>(2, 0).map_err(e)?).map_err(e)?;
    let cs = mori_chamber_decomposition(&pres).map_err(e)?;
    for (i, a) in cs.chambers.iter().enumerate() {
        for b in &cs.chambers[i + 1..] {
            ensure(
                !a.cone.intersect(&b.cone).map_err(e)?.is_full_dimensional(),
                || "overlapping chambers".into(),
            )?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut inside, mut on_walls) = (0, 0);
    for _ in 0..1000 {
        let mut w = vec![Int::zero(); 5];
        for r in cs.support.extremal_rays() {
            let c = Int::from(rng.gen_range(1..=1000i64));
            for (wi, ri) in w.iter_mut().zip(r) {
                *wi += &c * ri;
            }
        }
        let d = DivisorVector::from_int_vec(sig(2, 3), &w).map_err(e)?;
        match locate(&d, &cs).map_err(e)? {
            Location::Chamber(_) => inside += 1,
            Location::Wall(list) if !list.is_empty() => on_walls += 1,
            Location::Wall(_) => return Err(format!("{d} is not covered")),
        }
    }

    for n in 2..=3 {
        let mut faces = Vec::new();
        let mut counts = Vec::new();
        for seed in 0..3 {
            let pres =
                build_presentation(n, sample_points::<Int>(n, seed).map_err(e)?).map_err(e)?;
            faces.push(feasible_subsets(&pres).map_err(e)?);
            counts.push(chamber_count(&pres).map_err(e)?);
        }
        ensure(faces.iter().all(|f| *f == faces[0]), || {
            format!("n={n}: a-faces depend on the seed")
        })?;
        ensure(counts.iter().all(|c| *c == counts[0]), || {
            format!("n={n}: chamber counts {counts:?}")
        })?;
    }
    Ok(format!(
        "{involutions} involutions, {lists} generator lists extremal, {} chambers disjoint, coverage {inside}+{on_walls}/1000, seeds agree",
        cs.chambers.len()
    ))
}

fn main() {
    let mut report = Report {
        failures: Vec::new(),
    };
    let secs = Duration::from_secs;
    report.run(1, "nef ray counts", secs(60), criterion_1);
    report.run(2, "mori/nef duality", secs(60), criterion_2);
    report.run(3, "chamber count n=2", secs(10), || criterion_3(2, 92));
    report.run(3, "chamber count n=3", secs(300), || criterion_3(3, 550));
    report.run(3, "chamber count n=4", secs(3600), || criterion_3(4, 6307));
    report.run(4, "nef cone is a chamber", secs(60), criterion_4);
    report.run(5, "del Pezzo tables", secs(1), criterion_5);
    report.run(6, "del Pezzo embeddings", secs(10), criterion_6);
    report.run(7, "Cox ring homogeneity", secs(60), criterion_7);
    report.run(8, "log Fano interval", secs(60), criterion_8);
    report.run(9, "movable duality", secs(30), criterion_9);
    report.run(10, "property suites", secs(600), criterion_10);
    if report.failures.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!(
            "acceptance: {} failed: {}",
            report.failures.len(),
            report.failures.join(", ")
        );
        std::process::exit(1);
    }
}

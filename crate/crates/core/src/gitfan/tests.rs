use std::sync::OnceLock;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::coxring::{build_presentation, sample_points};
use crate::geometry::{movable_cone, nef_cone};
use crate::lattice::Signature;
use crate::scalar::{from_i64_vec, ratio_vec};

fn pres(n: usize, seed: u64) -> CoxPresentation<BigInt> {
    build_presentation(n, sample_points(n, seed).unwrap()).unwrap()
}

fn n2() -> &'static ChamberSet<BigInt> {
    static CS: OnceLock<ChamberSet<BigInt>> = OnceLock::new();
    CS.get_or_init(|| mori_chamber_decomposition(&pres(2, 0)).unwrap())
}

fn arrangement(n: usize) -> Arrangement<BigInt> {
    Arrangement::new(
        &orbit_cones(&pres(n, 0)).unwrap(),
        &effective_cone(n).unwrap(),
    )
    .unwrap()
}

fn random_effective(rng: &mut ChaCha8Rng, support: &RationalCone<BigInt>) -> Vec<BigInt> {
    let mut w = vec![BigInt::from(0); support.ambient_dim()];
    for r in support.extremal_rays() {
        let c = BigInt::from(rng.gen_range(1..=1000i64));
        for (wi, ri) in w.iter_mut().zip(r) {
            *wi += &c * ri;
        }
    }
    w
}

#[test]
fn n2_has_92_chambers_for_every_seed() {
    assert_eq!(n2().chambers.len(), 92);
    for seed in 1..3 {
        assert_eq!(chamber_count(&pres(2, seed)).unwrap(), 92);
    }
}

#[test]
fn chambers_are_full_dimensional_and_sorted() {
    let cs = n2();
    assert!(cs.chambers.iter().all(|c| c.cone.is_full_dimensional()));
    assert!(cs
        .chambers
        .windows(2)
        .all(|w| w[0].cone.extremal_rays() < w[1].cone.extremal_rays()));
    assert!(cs
        .chambers
        .iter()
        .all(|c| c.cone.contains(&c.interior_point, true).unwrap()));
    assert!(cs
        .chambers
        .iter()
        .all(|c| c.cone.is_subcone_of(&cs.support)));
}

#[test]
fn nef_cone_is_the_depth_zero_chamber() {
    let nef = nef_cone::<BigInt>(Signature::new(2, 3).unwrap()).unwrap();
    let roots: Vec<&Chamber<BigInt>> = n2().chambers.iter().filter(|c| c.depth == 0).collect();
    assert_eq!(roots.len(), 1);
    assert!(roots[0].cone.equals(&nef));
}

#[test]
fn chamber_of_examples() {
    let p = pres(2, 0);
    let ocs = orbit_cones(&p).unwrap();
    let eff = effective_cone::<BigInt>(2).unwrap();
    let arr = Arrangement::new(&ocs, &eff).unwrap();
    let k = anticanonical::<BigInt>(p.signature()).to_primitive();
    let w = ratio_vec(&arr.generic_point_near(&k));
    let nef = nef_cone::<BigInt>(p.signature()).unwrap();
    assert!(chamber_of(&w, &ocs, &eff).unwrap().equals(&nef));

    let outside = ratio_vec(&from_i64_vec::<BigInt>(&[0, 0, -1, 0, 0]));
    assert!(matches!(
        chamber_of(&outside, &ocs, &eff),
        Err(Error::Domain(_))
    ));
    let ray = from_i64_vec::<BigInt>(&[1, 1, -1, -1, -1]);
    assert!(matches!(
        chamber_of(&ratio_vec(&ray), &ocs, &eff),
        Err(Error::WallPoint)
    ));
}

#[test]
fn generic_points_of_one_chamber_agree() {
    let arr = arrangement(2);
    for c in n2().chambers.iter().take(20) {
        let rays = c.cone.extremal_rays();
        let a = arr.generic_point_near(&c.cone.interior_point_int().unwrap());
        let mut b = vec![BigInt::from(0); 5];
        for (j, r) in rays.iter().enumerate() {
            for (bi, ri) in b.iter_mut().zip(r) {
                *bi += BigInt::from(j as i64 + 1) * ri;
            }
        }
        let b = arr.generic_point_near(&b);
        assert!(arr.chamber_of_int(&a).unwrap().equals(&c.cone));
        assert!(arr.chamber_of_int(&b).unwrap().equals(&c.cone));
    }
}

#[test]
fn chamber_is_intersection_of_orbit_cones_through_its_interior_point() {
    let arr = arrangement(2);
    for c in &n2().chambers {
        let w = crate::scalar::clear_denominators(&c.interior_point);
        assert!(arr.cone_at(&w).unwrap().equals(&c.cone));
    }
}

#[test]
fn interiors_are_disjoint_and_form_a_fan() {
    let cs = n2();
    for (i, a) in cs.chambers.iter().enumerate() {
        for b in &cs.chambers[i + 1..] {
            let meet = a.cone.intersect(&b.cone).unwrap();
            assert!(!meet.is_full_dimensional());
            if meet.is_zero() {
                continue;
            }
            let p = meet.interior_point_int().unwrap();
            for side in [&a.cone, &b.cone] {
                let face = RationalCone::from_integer_generators(5, &side.face_rays_containing(&p))
                    .unwrap();
                assert!(face.equals(&meet));
            }
        }
    }
}

#[test]
fn random_points_are_covered() {
    let cs = n2();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let w = random_effective(&mut rng, &cs.support);
        let d = DivisorVector::from_int_vec(Signature::new(2, 3).unwrap(), &w).unwrap();
        match locate(&d, cs).unwrap() {
            Location::Chamber(i) => {
                let hits = cs
                    .chambers
                    .iter()
                    .filter(|c| c.cone.contains_int(&w, true))
                    .count();
                assert_eq!(hits, 1);
                assert!(cs.chambers[i].cone.contains_int(&w, true));
            }
            Location::Wall(list) => assert!(list.len() >= 2),
        }
    }
}

#[test]
fn movable_cone_is_a_union_of_chambers() {
    let cs = n2();
    let mov = movable_cone::<BigInt>(2).unwrap();
    let inside: Vec<bool> = cs
        .chambers
        .iter()
        .map(|c| {
            let yes = mov.contains(&c.interior_point, true).unwrap();
            if yes {
                assert!(c.cone.is_subcone_of(&mov));
            } else {
                assert!(!c.cone.intersect(&mov).unwrap().is_full_dimensional());
            }
            yes
        })
        .collect();
    assert!(inside.iter().filter(|&&b| b).count() < cs.chambers.len());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let w = random_effective(&mut rng, &cs.support);
        let d = DivisorVector::from_int_vec(Signature::new(2, 3).unwrap(), &w).unwrap();
        if let Location::Chamber(i) = locate(&d, cs).unwrap() {
            assert_eq!(inside[i], mov.contains_int(&w, true));
        }
    }
}

#[test]
fn locate_examples() {
    let cs = n2();
    let sig = Signature::new(2, 3).unwrap();
    let nef = nef_cone::<BigInt>(sig).unwrap();
    let idx = cs
        .chambers
        .iter()
        .position(|c| c.cone.equals(&nef))
        .unwrap();
    let p = DivisorVector::new(sig, nef.relative_interior_point().unwrap()).unwrap();
    assert_eq!(locate(&p, cs).unwrap(), Location::Chamber(idx));
    let ray = DivisorVector::<BigInt>::from_ints(sig, &[1, 1, -1, -1, -1]).unwrap();
    match locate(&ray, cs).unwrap() {
        Location::Wall(list) => assert!(list.contains(&idx)),
        other => panic!("expected a wall, got {other:?}"),
    }
    let e1 = DivisorVector::<BigInt>::from_ints(sig, &[0, 0, -1, 0, 0]).unwrap();
    assert!(matches!(locate(&e1, cs), Err(Error::Domain(_))));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let p = pres(2, 1);
    let a = mori_chamber_decomposition_with(
        &p,
        TraversalOptions {
            jobs: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let b = mori_chamber_decomposition_with(
        &p,
        TraversalOptions {
            jobs: 3,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(a, b);
    assert_eq!(&a, n2());
}

#[test]
fn budget_is_enforced() {
    let err = mori_chamber_decomposition_with(
        &pres(2, 0),
        TraversalOptions {
            jobs: 1,
            max_chambers: 10,
        },
    )
    .unwrap_err();
    assert!(matches!(err, Error::TraversalBudget { budget: 10, .. }));
}

#[test]
fn n1_is_rejected() {
    assert!(mori_chamber_decomposition(&pres(1, 0)).is_err());
}

#[test]
fn i64_backend_agrees_at_n2() {
    let p = build_presentation::<i64>(2, sample_points(2, 0).unwrap()).unwrap();
    assert_eq!(chamber_count(&p).unwrap(), 92);
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

    #[test]
    fn generic_points_locate_to_their_chamber(coeffs in proptest::collection::vec(1i64..500, 9)) {
        let cs = n2();
        let arr = arrangement(2);
        let mut w = vec![BigInt::from(0); 5];
        for (c, r) in coeffs.iter().zip(cs.support.extremal_rays()) {
            for (wi, ri) in w.iter_mut().zip(r) {
                *wi += BigInt::from(*c) * ri;
            }
        }
        let g = arr.generic_point_near(&w);
        let chamber = arr.chamber_of_int(&g).unwrap();
        proptest::prop_assert!(chamber.contains_int(&g, true));
        let d = DivisorVector::from_int_vec(Signature::new(2, 3).unwrap(), &g).unwrap();
        let Location::Chamber(i) = locate(&d, cs).unwrap() else {
            panic!("generic point on a wall");
        };
        proptest::prop_assert!(cs.chambers[i].cone.equals(&chamber));
    }
}

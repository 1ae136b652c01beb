//! Randomized and structural properties beyond the acceptance gate.

mod common;

use momentkit_core::algebra::{rat, ratio};
use momentkit_core::gkm::{betti_numbers, generic_direction, gkm_basis, gkm_check, gkm_dimension};
use momentkit_core::io::{polytope_from_json, polytope_to_json};
use momentkit_core::localization::{abbv_pushforward, volume_localization};
use momentkit_core::polar::{choose_polarizing_vector, signed_indicator_sum, signed_lattice_count};
use momentkit_core::{
    Error, EvaluationPoint, FixedPointData, HalfSpace, LatticeBox, MomentGraph, Polytope,
};
use proptest::prelude::*;

use common::{catalog, sample_points};

#[test]
fn signed_count_is_box_independent() {
    for (name, p) in catalog() {
        let xi = choose_polarizing_vector(&p, 3).unwrap();
        let tight = LatticeBox::tight(&p).unwrap();
        let expected = p.lattice_count_oracle().unwrap() as i64;
        for margin in [0, 1, 3] {
            let bx = tight.expand(margin);
            assert_eq!(
                signed_lattice_count(&p, &xi, &bx).unwrap(),
                expected,
                "{name} margin {margin}"
            );
        }
    }
}

#[test]
fn box_too_small_is_rejected() {
    let p = Polytope::cube(2, &rat(3)).unwrap();
    let xi = choose_polarizing_vector(&p, 0).unwrap();
    let small = LatticeBox::new(vec![0, 0], vec![2, 3]).unwrap();
    assert_eq!(
        signed_lattice_count(&p, &xi, &small),
        Err(Error::BoxTooSmall)
    );
}

#[test]
fn opposite_direction_gives_the_same_indicator() {
    for (i, (name, p)) in catalog().into_iter().enumerate().step_by(3) {
        let xi = choose_polarizing_vector(&p, i as u64).unwrap();
        let neg = xi.neg();
        for x in sample_points(&p, 200, i as u64) {
            let a = signed_indicator_sum(&p, &xi, &x).unwrap();
            let b = signed_indicator_sum(&p, &neg, &x).unwrap();
            assert_eq!(a, b, "{name} at {x}");
        }
    }
}

#[test]
fn non_simple_polytopes_are_refused_by_the_decomposition() {
    let p = common::square_pyramid();
    let xi = choose_polarizing_vector(&p, 0).unwrap();
    assert_eq!(
        signed_lattice_count(&p, &xi, &LatticeBox::tight(&p).unwrap()),
        Err(Error::NonSimpleVertex)
    );
    assert!(matches!(
        volume_localization(&p, &xi.xi().clone()),
        Err(Error::NotDelzant(_))
    ));
    assert!(matches!(
        MomentGraph::from_polytope(&p),
        Err(Error::NotDelzant(_))
    ));
    assert_eq!(p.volume_oracle().unwrap(), ratio(4, 3));
}

#[test]
fn redundant_and_duplicate_constraints_are_harmless() {
    let base = Polytope::simplex(2, &rat(2)).unwrap();
    let mut hs = base.halfspaces().to_vec();
    hs.push(HalfSpace::from_i64(&[2, 0], 0));
    hs.push(HalfSpace::from_i64(&[1, 1], -5));
    let p = Polytope::from_halfspaces(2, hs).unwrap();
    assert_eq!(p.vertices(), base.vertices());
    assert_eq!(p.facets().len(), 3);
    assert_eq!(p.lattice_count_oracle().unwrap(), 6);
}

#[test]
fn lower_dimensional_input_has_no_volume() {
    let flat = Polytope::from_halfspaces(
        2,
        vec![
            HalfSpace::from_i64(&[0, 1], 0),
            HalfSpace::from_i64(&[0, -1], 0),
            HalfSpace::from_i64(&[1, 0], 0),
            HalfSpace::from_i64(&[-1, 0], -1),
        ],
    )
    .unwrap();
    assert!(!flat.is_full_dimensional());
    assert!(matches!(flat.volume_oracle(), Err(Error::Degenerate(_))));
}

#[test]
fn json_round_trip_over_the_catalog() {
    for (_, p) in catalog() {
        assert_eq!(polytope_from_json(&polytope_to_json(&p)).unwrap(), p);
    }
}

#[test]
fn basis_classes_pass_and_integrate_consistently() {
    for (name, p) in catalog().into_iter().filter(|(_, p)| p.dim() <= 2) {
        let g = MomentGraph::from_polytope(&p).unwrap();
        let data = FixedPointData::from_graph(&g).unwrap();
        let n = g.dim() as u32;
        let basis = gkm_basis(&g, n);
        assert_eq!(basis.len(), gkm_dimension(&g, n), "{name}");
        let pts: Vec<_> = (0..3)
            .map(|s| EvaluationPoint::choose(&data, s).unwrap())
            .collect();
        for c in &basis {
            assert!(gkm_check(&g, c).unwrap().ok, "{name}");
            let vals: Vec<_> = pts
                .iter()
                .map(|xi| abbv_pushforward(c, &data, xi).unwrap())
                .collect();
            assert!(
                vals.windows(2).all(|w| w[0] == w[1]),
                "{name}: top-degree push-forward depends on xi"
            );
        }
    }
}

#[test]
fn betti_numbers_refuse_non_generic_directions() {
    let g = MomentGraph::from_polytope(&Polytope::cube(2, &rat(1)).unwrap()).unwrap();
    let xi = momentkit_core::RationalVec::from_i64(&[1, 0]);
    assert!(matches!(betti_numbers(&g, &xi), Err(Error::NotGeneric(_))));
    assert!(generic_direction(&g, 0).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn volume_localization_is_direction_independent(
        idx in 0usize..21, a in -50i64..50, b in -50i64..50, c in -50i64..50,
    ) {
        let (_, p) = catalog().swap_remove(idx);
        let xi = momentkit_core::RationalVec::from_i64(&[a, b, c][..p.dim()]);
        match volume_localization(&p, &xi) {
            Ok(v) => prop_assert_eq!(v, p.volume_oracle().unwrap()),
            Err(Error::WeightVanishes(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn rational_dilates_count_correctly(num in 1i64..20, den in 1i64..5, idx in 0usize..21) {
        let (_, p) = catalog().swap_remove(idx);
        let q = p.dilate(&ratio(num, den)).unwrap();
        if q.is_smooth() || q.is_simple() {
            let xi = choose_polarizing_vector(&q, 0).unwrap();
            let signed = signed_lattice_count(&q, &xi, &LatticeBox::tight(&q).unwrap()).unwrap();
            prop_assert_eq!(signed, q.lattice_count_oracle().unwrap() as i64);
        }
    }
}

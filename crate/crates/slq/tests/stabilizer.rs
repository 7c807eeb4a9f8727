//! End-to-end stable reduction of every case.

use slq::cases::{input_pair, Contact, F3F1Directrices, HyperellipticSub, InputCase, MaroniSpecialSub};
use slq::singularity::QuotientSingularity;
use slq::stabilizer::{boundary_stratum, positivity, stabilize, Positivity, Stratum, SurfaceRow};

/// The landing row of each case, written out by hand.
fn expected(case: &InputCase) -> (SurfaceRow, Stratum) {
    use F3F1Directrices::*;
    match case {
        InputCase::MaroniGeneral { d_singularities } if d_singularities.is_empty() => (SurfaceRow::Quadric, Stratum::Interior),
        InputCase::MaroniGeneral { .. } => (SurfaceRow::Quadric, Stratum::Z0),
        InputCase::MaroniSpecial(_) => (SurfaceRow::P112, Stratum::Z2),
        InputCase::HyperellipticTail(HyperellipticSub::Unramified) => (SurfaceRow::SmoothingP912, Stratum::Z4),
        InputCase::HyperellipticTail(_) => (SurfaceRow::P912, Stratum::Z4),
        InputCase::StableChainThirdThird | InputCase::F3F3 => (SurfaceRow::ThirdThirdChain, Stratum::Z33),
        InputCase::F1F1 => (SurfaceRow::TwoPlanes, Stratum::Z11),
        InputCase::F3F1(Disjoint { tau_triple_tangent: false, .. }) | InputCase::F3F1(Intersecting { f_tangent: false, .. }) => (SurfaceRow::SmoothingP312P311, Stratum::Z13),
        InputCase::F3F1(_) => (SurfaceRow::P312P311, Stratum::Z13),
    }
}

#[test]
fn every_case_lands_in_its_row_and_stratum() {
    for case in InputCase::all() {
        let rec = stabilize(&case).unwrap();
        let (row, stratum) = expected(&case);
        assert_eq!(rec.surface_row, row, "{case}");
        assert_eq!(rec.stratum, stratum, "{case}");
        assert_eq!(boundary_stratum(&rec), (stratum, stratum.codimension()), "{case}");
        assert!(rec.index_condition_ok, "{case}");
    }
}

#[test]
fn stable_limits_are_ample() {
    for case in InputCase::all() {
        let rec = stabilize(&case).unwrap();
        assert_eq!(positivity(&rec.pair).unwrap(), Positivity::Ample, "{case}");
    }
}

#[test]
fn transform_logs_replay_from_the_input() {
    for case in InputCase::all() {
        let rec = stabilize(&case).unwrap();
        assert_eq!(rec.transform_log.replay(&input_pair(&case).unwrap()).unwrap(), rec.pair, "{case}");
        assert_eq!(rec.stages.first().map(|s| s.operation.as_str()), Some("input"));
        assert_eq!(rec.stages.last().map(|s| &s.pair), Some(&rec.pair));
    }
}

#[test]
fn surface_singularities_match_the_row() {
    for case in InputCase::all() {
        let rec = stabilize(&case).unwrap();
        assert_eq!(rec.singularity_kinds(), rec.surface_row.singularities(), "{case}");
    }
}

#[test]
fn hyperelliptic_tail_acquires_a_ninth_point() {
    let rec = stabilize(&InputCase::HyperellipticTail(HyperellipticSub::Unramified)).unwrap();
    assert_eq!(rec.singularity_kinds(), vec![QuotientSingularity::cyclic(9, 2).unwrap()]);
    let ramified = stabilize(&InputCase::HyperellipticTail(HyperellipticSub::Ramified)).unwrap();
    assert!(ramified.singularity_kinds().contains(&QuotientSingularity::a(1)));
}

#[test]
fn maroni_special_contact_decides_the_d_singularity() {
    let node = stabilize(&InputCase::MaroniSpecial(MaroniSpecialSub::DContainsSigma(Contact::Transverse))).unwrap();
    let cusp = stabilize(&InputCase::MaroniSpecial(MaroniSpecialSub::DContainsSigma(Contact::Tangent))).unwrap();
    assert_eq!(node.d_singularities.iter().map(|s| s.a_n).collect::<Vec<_>>(), vec![1]);
    assert_eq!(cusp.d_singularities.iter().map(|s| s.a_n).collect::<Vec<_>>(), vec![2]);
}

#[test]
fn reducible_rows_record_double_curve_classes() {
    let rec = stabilize(&InputCase::F3F1(F3F1Directrices::Disjoint { tau_triple_tangent: true, tau_component: None })).unwrap();
    let mut s: Vec<String> = rec.double_curve_classes.iter().map(|d| d.self_int.to_string()).collect();
    s.sort();
    assert_eq!(s, vec!["1/3", "2/3"]);
    let planes = stabilize(&InputCase::F1F1).unwrap();
    assert!(planes.double_curve_classes.iter().all(|d| d.self_int.to_string() == "1"));
}

//! Cover calculus: classification, slc and Hassett checks on covers.

use slq::cases::InputCase;
use slq::cover::{branch_decompose, classify_cover, discriminant, hassett_stable, pair_from_cover, slc_check, CoverDescriptor, CubicForm, Poly};
use slq::io::{parse_cover, render_cover};
use slq::rat::Rat;
use slq::stabilizer::{expected_row, stabilize};

#[test]
fn every_case_is_recovered_from_its_cover() {
    for case in InputCase::all() {
        let cover = CoverDescriptor::for_case(&case);
        assert!(hassett_stable(&cover), "{case}");
        assert_eq!(classify_cover(&cover).unwrap(), case);
    }
}

#[test]
fn cover_files_round_trip() {
    for case in InputCase::all() {
        let cover = CoverDescriptor::for_case(&case);
        assert_eq!(parse_cover(&render_cover(&cover)).unwrap(), cover, "{case}");
    }
}

#[test]
fn covers_land_in_their_rows() {
    for case in InputCase::all() {
        let case = classify_cover(&CoverDescriptor::for_case(&case)).unwrap();
        assert_eq!(stabilize(&case).unwrap().surface_row, expected_row(&case), "{case}");
    }
}

#[test]
fn pairs_built_from_covers_are_the_input_pairs() {
    for case in InputCase::all() {
        let from_cover = pair_from_cover(&CoverDescriptor::for_case(&case)).unwrap();
        assert_eq!(from_cover, slq::cases::input_pair(&case).unwrap(), "{case}");
    }
}

#[test]
fn wrong_branch_degree_is_rejected() {
    let mut cover = CoverDescriptor::for_case(&InputCase::MaroniGeneral { d_singularities: vec![] });
    cover.branch_divisor.pop();
    assert!(cover.validate().is_err());
    assert!(classify_cover(&cover).is_err());
}

#[test]
fn slc_threshold_follows_the_worst_singularity() {
    for (n, below, above) in [(1u32, Rat::one(), Rat::new(11, 10)), (2, Rat::new(5, 6), Rat::new(6, 7)), (3, Rat::new(3, 4), Rat::new(4, 5)), (4, Rat::new(7, 10), Rat::new(5, 7))] {
        let cover = CoverDescriptor::for_case(&InputCase::MaroniGeneral { d_singularities: vec![n] });
        assert!(slc_check(&cover, &Rat::new(2, 3)), "A{n}");
        assert!(slc_check(&cover, &below), "A{n} at {below}");
        assert!(!slc_check(&cover, &above), "A{n} at {above}");
    }
}

#[test]
fn branch_decomposition_splits_off_the_fiber_power() {
    let f = CubicForm::new(Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[0, 0, 2, 1]), Poly::from_ints(&[0, 0, -1]), Poly::from_ints(&[0, 0, 0, 3]));
    let dec = branch_decompose(&f).unwrap();
    assert_eq!(dec.n, 2);
    assert!(dec.identity_holds);
    assert_eq!(discriminant(&f), discriminant(&dec.f_h).shift_up(8));
}

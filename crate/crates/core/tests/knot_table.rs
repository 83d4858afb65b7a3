mod common;

use kh_core::cube::{build_complex, graded_euler_characteristic};
use kh_core::homology::homology;
use kh_core::jones::jones;
use kh_core::ring::RingSpec;

#[test]
fn euler_characteristic_is_the_bracket_polynomial() {
    for (name, d) in common::corpus_knots() {
        let k = build_complex(&d, RingSpec::Integers).unwrap();
        assert_eq!(graded_euler_characteristic(k.complex()), jones(&d).unwrap(), "{name}");
    }
}

#[test]
fn integral_homology_matches_tabulated_values() {
    let reference = common::reference_table();
    let knots = common::corpus_knots();
    assert_eq!(knots.len(), 84);
    for (name, d) in knots {
        let k = build_complex(&d, RingSpec::Integers).unwrap();
        let got = homology(k.complex());
        assert_eq!(got, reference[&name].khovanov, "{name}");
    }
}

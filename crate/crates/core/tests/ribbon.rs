mod common;

use kh_core::cobordism::{Movie, MovieEvent};
use kh_core::cube::build_complex;
use kh_core::homology::{homology, IdentityClass};
use kh_core::invariants::{compare_invariants, invariants};
use kh_core::link::LinkDiagram;
use kh_core::ribbon::{check_tube_proposition, is_ribbon, verify_theorem};
use kh_core::ring::RingSpec;

fn load_movie(name: &str) -> Movie {
    let path = common::corpus_dir().join("movies").join(name);
    Movie::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn rings() -> Vec<RingSpec> {
    vec![RingSpec::Rationals, RingSpec::Integers, RingSpec::PrimeField(2)]
}

fn corpus_movies() -> Vec<(String, Movie)> {
    let mut names: Vec<String> = std::fs::read_dir(common::corpus_dir().join("movies"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load_movie(&n))).collect()
}

#[test]
fn corpus_movies_are_ribbon_and_satisfy_the_inequalities() {
    let movies = corpus_movies();
    assert!(movies.len() >= 3);
    for (name, m) in movies {
        assert_eq!(is_ribbon(&m).reason, None, "{name}");
        let r = verify_theorem(&m, &rings()).unwrap();
        assert!(r.passed(), "{name}: {r:?}");
        let h = |d: &LinkDiagram| invariants(&homology(build_complex(d, RingSpec::Integers).unwrap().complex()));
        assert!(compare_invariants(&h(m.start()), &h(m.end())).consistent, "{name}");
    }
}

#[test]
fn square_knot_movie_is_ribbon_and_injective() {
    let m = load_movie("square_knot_ribbon.json");
    assert_eq!(is_ribbon(&m).reason, None);
    assert_eq!(m.euler_characteristic(), 0);
    let r = verify_theorem(&m, &rings()).unwrap();
    for res in &r.results {
        assert_ne!(res.composite, IdentityClass::Other, "{}", res.ring);
        assert!(res.injective && res.rank_check.iter().all(|c| c.ok), "{res:?}");
        if res.ring == "F2" {
            assert_eq!(res.composite, IdentityClass::Identity);
        }
    }
    assert!(r.passed());
}

#[test]
fn reversed_ribbon_movie_is_not_ribbon() {
    let m = load_movie("square_knot_ribbon.json");
    let back = m.reverse();
    assert!(!is_ribbon(&back).is_ribbon);
    assert_eq!(back.reverse().events(), m.events());
}

#[test]
fn death_is_reported_by_index() {
    let m = Movie::new(
        LinkDiagram::empty(),
        &[MovieEvent::Birth { label: None }, MovieEvent::Death { arc: 1 }],
    )
    .unwrap();
    assert_eq!(is_ribbon(&m).reason.as_deref(), Some("death event at index 1"));
}

#[test]
fn split_sphere_is_not_an_annulus() {
    // a birth with nothing joining it to the rest leaves an extra component
    let m = Movie::new(LinkDiagram::unknot(), &[MovieEvent::Birth { label: None }]).unwrap();
    assert!(!is_ribbon(&m).is_ribbon);
}

#[test]
fn tubing_in_a_sphere_is_the_product_up_to_sign() {
    let trefoil = LinkDiagram::new(None, vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![]).unwrap();
    let hopf = LinkDiagram::new(None, vec![[4, 1, 3, 2], [2, 3, 1, 4]], vec![]).unwrap();
    assert!(check_tube_proposition(&LinkDiagram::unknot(), RingSpec::Integers).unwrap().is_some());
    assert!(check_tube_proposition(&trefoil, RingSpec::PrimeField(2)).unwrap().is_some());
    assert!(check_tube_proposition(&hopf, RingSpec::Integers).unwrap().is_some());
}

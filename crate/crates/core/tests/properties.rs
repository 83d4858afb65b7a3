mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kh_core::cobordism::{induced_movie_map, Movie, MovieComplexes};
use kh_core::complex::{compose, verify_complex};
use kh_core::cube::{build_complex, graded_euler_characteristic};
use kh_core::homology::{homology, IdentityClass, InducedMap};
use kh_core::jones::jones;
use kh_core::ring::RingSpec;

use common::random;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>()) {
        let d = random::diagram(&mut rng(seed), 6);
        for ring in [RingSpec::Integers, RingSpec::PrimeField(3)] {
            let k = build_complex(&d, ring).unwrap();
            prop_assert!(verify_complex(k.complex()).passed());
        }
    }

    #[test]
    fn euler_characteristic_is_jones(seed in any::<u64>()) {
        let d = random::diagram(&mut rng(seed), 6);
        let k = build_complex(&d, RingSpec::Rationals).unwrap();
        prop_assert_eq!(homology(k.complex()).euler_characteristic(), jones(&d).unwrap());
        prop_assert_eq!(graded_euler_characteristic(k.complex()), jones(&d).unwrap());
    }

    #[test]
    fn torsion_forms_a_divisibility_chain_and_matches_f2(seed in any::<u64>()) {
        let d = random::diagram(&mut rng(seed), 6);
        let z = homology(build_complex(&d, RingSpec::Integers).unwrap().complex());
        let f2 = homology(build_complex(&d, RingSpec::PrimeField(2)).unwrap().complex());
        for g in z.entries() {
            prop_assert!(g.torsion.windows(2).all(|w| w[1] % w[0] == 0));
        }
        // universal coefficients: each even torsion summand at (i, j) adds
        // a copy of F2 at (i, j) and at (i − 1, j)
        let twos = |i: i32, j: i32| z.get(i, j).torsion.iter().filter(|&&n| n % 2 == 0).count();
        for g in f2.entries() {
            prop_assert_eq!(g.rank, z.rank(g.i, g.j) + twos(g.i, g.j) + twos(g.i + 1, g.j));
        }
    }

    #[test]
    fn reidemeister_round_trips_are_signed_identities(seed in any::<u64>(), kind in 0usize..5) {
        let mut r = rng(seed);
        let d = random::diagram(&mut r, 5);
        if let Some(a) = random::event(&mut r, &d, &[random::REIDEMEISTER[kind]]) {
            let m = Movie::new(d, &[a.resolved.clone(), a.inverse.clone()]).unwrap();
            let c = induced_movie_map(&m, RingSpec::Integers).unwrap().classify();
            prop_assert_ne!(c, IdentityClass::Other);
        }
    }

    #[test]
    fn reversing_twice_gives_the_same_events(seed in any::<u64>()) {
        let mut r = rng(seed);
        let start = random::diagram(&mut r, 4);
        let kinds: Vec<&str> = random::MORSE.iter().chain(random::REIDEMEISTER).copied().collect();
        let mut d = start.clone();
        let mut events = Vec::new();
        for _ in 0..6 {
            if let Some(a) = random::event(&mut r, &d, &kinds) {
                events.push(a.resolved);
                d = a.diagram;
            }
        }
        let m = Movie::new(start, &events).unwrap();
        let back = m.reverse();
        prop_assert!(back.start().same_diagram(m.end()));
        prop_assert!(back.end().same_diagram(m.start()));
        prop_assert_eq!(back.reverse().events(), m.events());
        prop_assert_eq!(back.euler_characteristic(), m.euler_characteristic());
    }

    #[test]
    fn induced_maps_respect_composition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let start = random::diagram(&mut r, 4);
        let kinds: Vec<&str> = random::MORSE.iter().chain(random::REIDEMEISTER).copied().collect();
        let mut d = start.clone();
        let mut events = Vec::new();
        for _ in 0..2 {
            if let Some(a) = random::event(&mut r, &d, &kinds) {
                events.push(a.resolved);
                d = a.diagram;
            }
        }
        prop_assume!(events.len() == 2);
        let m = Movie::new(start, &events).unwrap();
        let mc = MovieComplexes::build(&m, RingSpec::Integers).unwrap();
        let single = |k: usize| -> InducedMap { kh_core::homology::induced_map(&mc.maps[k]).unwrap() };
        let whole = kh_core::homology::induced_map(&compose(&mc.maps[1], &mc.maps[0]).unwrap()).unwrap();
        prop_assert!(single(1).compose_after(&single(0)).unwrap().congruent_to(&whole));
    }
}

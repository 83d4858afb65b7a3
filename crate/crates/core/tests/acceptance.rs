//! End-to-end acceptance checks, one PASS/FAIL line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kh_core::cobordism::{check_local_relations, induced_movie_map, Movie, MovieComplexes, MovieEvent};
use kh_core::complex::verify_complex;
use kh_core::cube::{build_complex, graded_euler_characteristic};
use kh_core::homology::{homology, HomologyTable, IdentityClass};
use kh_core::invariants::{compare_invariants, invariants, InvariantReport};
use kh_core::jones::jones;
use kh_core::link::LinkDiagram;
use kh_core::ribbon::{is_ribbon, verify_theorem};
use kh_core::ring::RingSpec;

use common::random;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(d: &LinkDiagram, ring: RingSpec) -> HomologyTable {
    homology(build_complex(d, ring).unwrap().complex())
}

fn report(d: &LinkDiagram) -> InvariantReport {
    invariants(&table(d, RingSpec::Integers))
}

fn all_rings() -> Vec<RingSpec> {
    vec![RingSpec::Integers, RingSpec::Rationals, RingSpec::PrimeField(2), RingSpec::PrimeField(3), RingSpec::PrimeField(5)]
}

fn movies() -> Vec<(String, Movie)> {
    let dir = common::corpus_dir().join("movies");
    let mut names: Vec<String> =
        std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    names.sort();
    names
        .into_iter()
        .map(|n| {
            let m = Movie::from_json(&std::fs::read_to_string(dir.join(&n)).unwrap()).unwrap();
            (n, m)
        })
        .collect()
}

fn euler_is_jones() -> Check {
    let mut diagrams = common::corpus_knots();
    for n in ["unknot", "unlink2", "hopf", "trefoil3", "trefoil4"] {
        diagrams.push((n.into(), common::load_diagram(&format!("diagrams/{n}.json"))));
    }
    for (name, d) in &diagrams {
        let k = build_complex(d, RingSpec::Integers).unwrap();
        let (chi, v) = (graded_euler_characteristic(k.complex()), jones(d).unwrap());
        ensure(chi == v, || format!("{name}: χ = {chi}, Jones = {v}"))?;
    }
    ensure(diagrams.len() >= 89, || format!("only {} diagrams", diagrams.len()))
}

fn unknot_over_every_ring() -> Check {
    let u = common::load_diagram("diagrams/unknot.json");
    for ring in all_rings() {
        let t = table(&u, ring);
        let ok = t.rank(0, 1) == 1 && t.rank(0, -1) == 1 && t.total_rank() == 2 && t.entries().iter().all(|g| g.torsion.is_empty());
        ensure(ok, || format!("over {ring}: {}", t.poincare_polynomial()))?;
    }
    Ok(())
}

fn trefoil_table() -> Check {
    let t = table(&common::load_diagram("diagrams/trefoil3.json"), RingSpec::Integers);
    let got: Vec<(i32, i32, usize, Vec<i64>)> = t.entries().into_iter().map(|g| (g.i, g.j, g.rank, g.torsion)).collect();
    let want = vec![(0, 1, 1, vec![]), (0, 3, 1, vec![]), (2, 5, 1, vec![]), (3, 7, 0, vec![2]), (3, 9, 1, vec![])];
    ensure(got == want, || format!("table {got:?}"))?;
    let b = invariants(&t).breadth;
    ensure(b == Some(8), || format!("breadth {b:?}"))
}

fn trefoil_diagrams_agree() -> Check {
    let (a, b) = (common::load_diagram("diagrams/trefoil3.json"), common::load_diagram("diagrams/trefoil4.json"));
    ensure(a.crossing_count() == 3 && b.crossing_count() == 4, || "wrong diagram sizes".into())?;
    for ring in all_rings() {
        let (ta, tb) = (table(&a, ring), table(&b, ring));
        ensure(ta == tb, || format!("over {ring}: {} vs {}", ta.poincare_polynomial(), tb.poincare_polynomial()))?;
    }
    Ok(())
}

fn local_relations() -> Check {
    let ambients = ["unknot", "unlink2", "hopf", "trefoil3"];
    for n in ambients {
        let r = check_local_relations(&common::load_diagram(&format!("diagrams/{n}.json")), None).map_err(|e| e.to_string())?;
        ensure(r.all(), || format!("{n}: {r:?}"))?;
    }
    let r = check_local_relations(&LinkDiagram::empty(), None).map_err(|e| e.to_string())?;
    ensure(r.all(), || format!("empty: {r:?}"))
}

fn ribbon_composites() -> Check {
    let ms = movies();
    ensure(ms.len() >= 3, || "fewer than three movies".into())?;
    for (name, m) in &ms {
        ensure(is_ribbon(m).is_ribbon, || format!("{name}: {:?}", is_ribbon(m).reason))?;
        let r = verify_theorem(m, &[RingSpec::Rationals, RingSpec::Integers, RingSpec::PrimeField(2)]).map_err(|e| e.to_string())?;
        for res in &r.results {
            let want_exact = res.ring == "F2";
            let good = if want_exact { res.composite == IdentityClass::Identity } else { res.composite != IdentityClass::Other };
            ensure(good, || format!("{name} over {}: composite {}", res.ring, res.composite.as_str()))?;
            ensure(res.injective, || format!("{name} over {}: not injective", res.ring))?;
            if let Some(c) = res.rank_check.iter().find(|c| !c.ok) {
                return Err(format!("{name} over {}: ({}, {}) {:?} vs {:?}", res.ring, c.i, c.j, c.start, c.end));
            }
        }
    }
    Ok(())
}

fn inequalities() -> Check {
    for (name, m) in movies() {
        let cmp = compare_invariants(&report(m.start()), &report(m.end()));
        ensure(cmp.consistent, || format!("{name}: {cmp:?}"))?;
    }
    let sq = movies().into_iter().find(|(n, _)| n == "square_knot_ribbon.json").ok_or("no square knot movie")?.1;
    let swapped = compare_invariants(&report(sq.end()), &report(sq.start()));
    ensure(!swapped.breadth, || "breadth check passes with the endpoints swapped".into())
}

fn thinness() -> Check {
    let w = report(&LinkDiagram::unknot()).delta_width;
    ensure(w == Some(2), || format!("unknot width {w:?}"))?;
    let table = common::reference_table();
    let mut alternating = 0;
    for (name, d) in common::corpus_knots() {
        if table[&name].alternating {
            alternating += 1;
            let w = report(&d).delta_width;
            ensure(w == Some(2), || format!("{name} width {w:?}"))?;
        }
    }
    ensure(alternating > 50, || format!("only {alternating} alternating knots"))?;
    let w = report(&common::load_diagram("knots/8_19.json")).delta_width;
    ensure(w.is_some_and(|w| w > 2), || format!("8_19 width {w:?}"))
}

fn expected_bidegree(e: &MovieEvent) -> (i32, i32) {
    match e {
        MovieEvent::Birth { .. } | MovieEvent::Death { .. } => (0, 1),
        MovieEvent::Saddle { .. } => (0, -1),
        MovieEvent::Dot { .. } => (0, -2),
        _ => (0, 0),
    }
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // d² = 0
    let mut diagrams: Vec<LinkDiagram> = (0..60).map(|_| random::diagram(&mut rng, 6)).collect();
    diagrams.extend(common::corpus_knots().into_iter().map(|(_, d)| d));
    for d in &diagrams {
        let k = build_complex(d, RingSpec::Integers).unwrap();
        ensure(verify_complex(k.complex()).passed(), || format!("d² ≠ 0 on {d:?}"))?;
    }
    // chain maps with the right bidegrees along random movies
    let kinds: Vec<&str> = random::MORSE.iter().chain(random::REIDEMEISTER).copied().collect();
    for _ in 0..40 {
        let start = random::diagram(&mut rng, 5);
        let mut d = start.clone();
        let mut events = Vec::new();
        for _ in 0..5 {
            let Some(a) = random::event(&mut rng, &d, &kinds) else { break };
            if a.diagram.crossing_count() > 7 {
                continue;
            }
            events.push(a.resolved);
            d = a.diagram;
        }
        let m = Movie::new(start, &events).map_err(|e| e.to_string())?;
        let mc = MovieComplexes::build(&m, RingSpec::Integers).map_err(|e| format!("{e} in {:?}", m.to_value()))?;
        let mut total = (0, 0);
        for (f, e) in mc.maps.iter().zip(&events) {
            f.verify().map_err(|err| format!("{} is not a chain map: {err}", e.kind()))?;
            ensure(f.bidegree() == expected_bidegree(e), || format!("{} has bidegree {:?}", e.kind(), f.bidegree()))?;
            total = (total.0 + f.bidegree().0, total.1 + f.bidegree().1);
        }
        let chi = m.euler_characteristic() as i32 - 2 * m.dots() as i32;
        ensure(total == (0, chi) && m.bidegree() == (0, chi), || format!("movie bidegree {total:?}, expected (0, {chi})"))?;
    }
    // Reidemeister round trips on random diagrams and the smaller corpus knots
    let mut sample: Vec<LinkDiagram> = (0..40).map(|_| random::diagram(&mut rng, 6)).collect();
    for word in [&[1, 2, 1][..], &[-1, -2, -1, 2], &[2, 1, 2, 1, 1], &[1, -2, 1, 3]] {
        sample.push(kh_core::link::braid_closure(4, word));
    }
    sample.extend(common::corpus_knots().into_iter().map(|(_, d)| d).filter(|d| d.crossing_count() <= 6));
    let mut tried = [0usize; 5];
    for d in &sample {
        for (k, kind) in random::REIDEMEISTER.iter().enumerate() {
            let Some(a) = random::event(&mut rng, d, &[kind]) else { continue };
            if a.diagram.crossing_count() > 8 {
                continue;
            }
            tried[k] += 1;
            let m = Movie::new(d.clone(), &[a.resolved.clone(), a.inverse.clone()]).map_err(|e| e.to_string())?;
            let c = induced_movie_map(&m, RingSpec::Integers).map_err(|e| format!("{kind}: {e}"))?.classify();
            ensure(c != IdentityClass::Other, || format!("{kind} round trip on {:?} is not ±id", d.pd()))?;
        }
    }
    ensure(tried.iter().all(|&t| t > 0), || format!("some move kinds never applied: {tried:?}"))
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("graded Euler characteristic equals the Jones polynomial on the corpus", euler_is_jones),
        ("unknot has rank one at (0, ±1) over every ring", unknot_over_every_ring),
        ("trefoil integral table and breadth 8", trefoil_table),
        ("3- and 4-crossing trefoil diagrams have identical tables", trefoil_diagrams_agree),
        ("sphere, dotted sphere, two dots and neck cutting as chain-map identities", local_relations),
        ("ribbon movies: reverse composite is ±id (id over F2) and ranks grow", ribbon_composites),
        ("grading inequalities hold on ribbon movies and fail when swapped", inequalities),
        ("unknot and alternating knots are thin, 8_19 is not", thinness),
        ("d² = 0, chain maps, bidegrees and Reidemeister round trips", properties),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(()) => println!("PASS {}: {name}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

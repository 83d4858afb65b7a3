//! Searches for a ribbon movie from the unknot to a given knot diagram.
//!
//! Looks for one band on the knot whose result is a two-component unlink,
//! simplifies that unlink to two round circles with Reidemeister moves,
//! caps one off, and prints the reverse of this movie as JSON.
//!
//!     cargo run --release --example ribbon_search -- corpus/knots/6_1.json
//!     cargo run --release --example ribbon_search -- square

use std::collections::HashSet;

use kh_core::cobordism::{apply_event, Movie, MovieEvent};
use kh_core::cube::build_complex;
use kh_core::homology::homology;
use kh_core::link::LinkDiagram;
use kh_core::ring::RingSpec;

fn trefoil() -> LinkDiagram {
    LinkDiagram::new(None, vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![]).unwrap()
}

/// Right trefoil summed with its mirror along a band between arcs 1 and 7.
fn square_knot() -> LinkDiagram {
    let u = trefoil().disjoint_union(&trefoil().mirror());
    apply_event(&u, &MovieEvent::Saddle { arcs: [1, 7], label: None }).unwrap().diagram
}

fn kh_f2(d: &LinkDiagram) -> String {
    let k = build_complex(d, RingSpec::PrimeField(2)).unwrap();
    format!("{:?}", homology(k.complex()).entries())
}

fn removals(d: &LinkDiagram) -> Vec<MovieEvent> {
    let mut out = Vec::new();
    for c in 0..d.crossing_count() {
        out.push(MovieEvent::R1Remove { crossing: c, kink: None });
        for a in d.pd()[c] {
            out.push(MovieEvent::R1Remove { crossing: c, kink: Some(a) });
        }
    }
    for p in d.arcs() {
        for q in d.arcs() {
            if p != q {
                out.push(MovieEvent::R2Remove { arcs: [p, q] });
            }
        }
    }
    out
}

fn triangles(d: &LinkDiagram) -> Vec<MovieEvent> {
    let n = d.crossing_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push(MovieEvent::R3 { crossings: [a, b, c] });
            }
        }
    }
    out
}

/// Depth-first search for moves that remove every crossing, allowing up to
/// `slides` triangle moves in a row when nothing can be removed.
fn simplify(d: &LinkDiagram, slides: usize, seen: &mut HashSet<Vec<[u32; 4]>>) -> Option<Vec<MovieEvent>> {
    if d.crossing_count() == 0 {
        return Some(Vec::new());
    }
    let key: Vec<[u32; 4]> = d.pd().iter().map(|t| t.map(|a| a)).collect();
    if !seen.insert(key) {
        return None;
    }
    let mut moves: Vec<(MovieEvent, usize)> = removals(d).into_iter().map(|e| (e, slides)).collect();
    if slides > 0 {
        moves.extend(triangles(d).into_iter().map(|e| (e, slides - 1)));
    }
    for (e, budget) in moves {
        let Ok(a) = apply_event(d, &e) else { continue };
        let budget = if a.diagram.crossing_count() < d.crossing_count() { 2 } else { budget };
        if let Some(mut rest) = simplify(&a.diagram, budget, seen) {
            rest.insert(0, a.resolved);
            return Some(rest);
        }
    }
    None
}

fn main() {
    let arg = std::env::args().nth(1).expect("usage: ribbon_search <diagram.json | square>");
    let knot = if arg == "square" {
        square_knot()
    } else {
        LinkDiagram::from_json(&std::fs::read_to_string(&arg).unwrap()).unwrap()
    };
    let unlink = kh_f2(&LinkDiagram::unlink(2));
    let arcs = knot.arcs();
    for (i, &x) in arcs.iter().enumerate() {
        for &y in &arcs[i + 1..] {
            let band = MovieEvent::Saddle { arcs: [x, y], label: None };
            let Ok(a) = apply_event(&knot, &band) else { continue };
            if a.diagram.component_count() != 2 || kh_f2(&a.diagram) != unlink {
                continue;
            }
            eprintln!("band {x}-{y} gives an unlink diagram with {} crossings", a.diagram.crossing_count());
            let Some(moves) = simplify(&a.diagram, 2, &mut HashSet::new()) else {
                eprintln!("  no simplification found");
                continue;
            };
            let mut events = vec![a.resolved];
            events.extend(moves);
            let m = Movie::new(knot.clone(), &events).unwrap();
            let loop_arc = m.end().loops()[1];
            events.push(MovieEvent::Death { arc: loop_arc });
            let down = Movie::new(knot.clone(), &events).unwrap();
            println!("{}", serde_json::to_string_pretty(&down.reverse().to_value()).unwrap());
            return;
        }
    }
    eprintln!("no band found");
    std::process::exit(1);
}

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use kh_core::homology::{GroupEntry, HomologyTable};
use kh_core::link::LinkDiagram;
use kh_core::ring::RingSpec;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn load_diagram(rel: &str) -> LinkDiagram {
    let path = corpus_dir().join(rel);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    LinkDiagram::from_json(&text).unwrap()
}

/// Every prime knot diagram in the corpus, in name order.
pub fn corpus_knots() -> Vec<(String, LinkDiagram)> {
    let mut out: Vec<(String, LinkDiagram)> = std::fs::read_dir(corpus_dir().join("knots"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let d = LinkDiagram::from_json(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (name, d)
        })
        .collect();
    out.sort_by_key(|(n, _)| {
        let (c, k) = n.split_once('_').unwrap();
        (c.parse::<u32>().unwrap(), k.parse::<u32>().unwrap())
    });
    out
}

pub struct TableRow {
    pub alternating: bool,
    pub khovanov: HomologyTable,
}

/// Reference rows of the tabulated integral Khovanov homology.
pub fn reference_table() -> BTreeMap<String, TableRow> {
    let text = std::fs::read_to_string(corpus_dir().join("knotinfo_khovanov.tsv")).unwrap();
    let mut out = BTreeMap::new();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split('\t').collect();
        out.insert(
            cols[0].to_string(),
            TableRow { alternating: cols[1] == "Y", khovanov: parse_poincare(cols[2]) },
        );
    }
    out
}

/// Parses `c*t^(i)*q^(j)*T^(n)` sums; a `T^(n)` factor marks c copies of ℤ/n.
fn parse_poincare(s: &str) -> HomologyTable {
    let mut groups: BTreeMap<(i32, i32), GroupEntry> = BTreeMap::new();
    for term in s.split('+') {
        let (mut c, mut i, mut j, mut tors) = (1usize, 0i32, 0i32, None);
        for f in term.split('*') {
            let exp = |f: &str| -> i32 {
                match f.find('^') {
                    None => 1,
                    Some(k) => f[k + 1..].trim_matches(|ch| ch == '(' || ch == ')').parse().unwrap(),
                }
            };
            match f.chars().next().unwrap() {
                't' => i = exp(f),
                'q' => j = exp(f),
                'T' => tors = Some(exp(f) as i64),
                _ => c = f.parse().unwrap(),
            }
        }
        let g = groups.entry((i, j)).or_insert(GroupEntry { i, j, rank: 0, torsion: vec![] });
        match tors {
            None => g.rank += c,
            Some(n) => g.torsion.extend(std::iter::repeat_n(n, c)),
        }
    }
    let entries: Vec<GroupEntry> = groups
        .into_values()
        .map(|mut g| {
            g.torsion.sort();
            g
        })
        .collect();
    HomologyTable::from_entries(RingSpec::Integers, &entries)
}

pub fn trefoil() -> LinkDiagram {
    LinkDiagram::new(Some("3_1".into()), vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![]).unwrap()
}

pub mod random {
    use kh_core::cobordism::{apply_event, Applied, MovieEvent, Side};
    use kh_core::link::{braid_closure, LinkDiagram};
    use rand::seq::SliceRandom;
    use rand::Rng;

    /// Closure of a random braid word with at most `max_crossings` letters.
    pub fn diagram(rng: &mut impl Rng, max_crossings: usize) -> LinkDiagram {
        let strands = rng.gen_range(2..=4);
        let len = rng.gen_range(1..=max_crossings);
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands) as i32;
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        braid_closure(strands, &word)
    }

    /// A random event that applies to `d`, of one of the given kinds.
    pub fn event(rng: &mut impl Rng, d: &LinkDiagram, kinds: &[&str]) -> Option<Applied> {
        let arcs = d.arcs();
        let n = d.crossing_count();
        for _ in 0..200 {
            let arc = |rng: &mut dyn rand::RngCore| *arcs.choose(rng).unwrap();
            let e = match *kinds.choose(rng).unwrap() {
                "birth" => MovieEvent::Birth { label: None },
                "death" => match d.loops().choose(rng) {
                    Some(&a) => MovieEvent::Death { arc: a },
                    None => continue,
                },
                _ if arcs.is_empty() => continue,
                "saddle" => MovieEvent::Saddle { arcs: [arc(rng), arc(rng)], label: None },
                "dot" => MovieEvent::Dot { arc: arc(rng) },
                "R1_add" => MovieEvent::R1Add {
                    arc: arc(rng),
                    sign: if rng.gen_bool(0.5) { 1 } else { -1 },
                    over_first: rng.gen_bool(0.5),
                    labels: None,
                    at: None,
                },
                "R2_add" => MovieEvent::R2Add {
                    over: arc(rng),
                    under: arc(rng),
                    side: if rng.gen_bool(0.5) { Side::Left } else { Side::Right },
                    parallel: None,
                    labels: None,
                    at: None,
                },
                "R2_remove" => MovieEvent::R2Remove { arcs: [arc(rng), arc(rng)] },
                _ if n == 0 => continue,
                "R1_remove" => MovieEvent::R1Remove { crossing: rng.gen_range(0..n), kink: None },
                "R3" if n >= 3 => {
                    let mut c: Vec<usize> = (0..n).collect();
                    c.shuffle(rng);
                    let mut t = [c[0], c[1], c[2]];
                    t.sort_unstable();
                    MovieEvent::R3 { crossings: t }
                }
                _ => continue,
            };
            if let Ok(a) = apply_event(d, &e) {
                return Some(a);
            }
        }
        None
    }

    pub const MORSE: &[&str] = &["birth", "death", "saddle", "dot"];
    pub const REIDEMEISTER: &[&str] = &["R1_add", "R1_remove", "R2_add", "R2_remove", "R3"];
}

//! Ribbon concordances: recognising them from a movie, and checking that
//! the reversed movie undoes them on homology.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cobordism::{Movie, MovieComplexes, MovieEvent};
use crate::complex::{scalar_compare, ChainMap, MapComparison};
use crate::error::MovieError;
use crate::homology::{Group, Homology, HomologyTable, IdentityClass, InducedMap};
use crate::link::{ArcLabel, LinkDiagram};
use crate::ring::RingSpec;

/// Whether a movie is a ribbon concordance, with the first reason it is not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RibbonCheck {
    pub is_ribbon: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl RibbonCheck {
    fn no(reason: String) -> Self {
        RibbonCheck { is_ribbon: false, reason: Some(reason) }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (a, b) = (self.find(a), self.find(b));
        self.0[b] = a;
        a
    }
}

fn component_of(d: &LinkDiagram) -> HashMap<ArcLabel, usize> {
    d.components().into_iter().enumerate().flat_map(|(k, arcs)| arcs.into_iter().map(move |a| (a, k))).collect()
}

/// A movie is ribbon when it has no deaths and its surface is a disjoint
/// union of annuli, each running from a start component to an end one.
pub fn is_ribbon(m: &Movie) -> RibbonCheck {
    let events = m.events();
    if let Some(i) = events.iter().position(|e| matches!(e, MovieEvent::Death { .. })) {
        return RibbonCheck::no(format!("death event at index {i}"));
    }
    let (c0, c1) = (m.start().component_count(), m.end().component_count());
    if c0 != c1 {
        return RibbonCheck::no(format!("start has {c0} components but end has {c1}"));
    }
    // surface pieces, tracked through the components of each frame
    let mut uf = UnionFind(Vec::new());
    let mut euler: Vec<i64> = Vec::new();
    let mut piece: Vec<usize> = (0..c0).map(|_| uf.add()).collect();
    euler.resize(c0, 0);
    let start_piece = piece.clone();
    for (i, e) in events.iter().enumerate() {
        let (before, after) = (&m.frames()[i], &m.frames()[i + 1]);
        let old = component_of(before);
        let comps = after.components();
        let mut next = Vec::with_capacity(comps.len());
        for arcs in &comps {
            let mut roots: BTreeSet<usize> =
                arcs.iter().filter_map(|a| old.get(a)).map(|&k| uf.find(piece[k])).collect();
            if let MovieEvent::Saddle { arcs: band, label } = e {
                if arcs.iter().any(|a| band.contains(a) || Some(*a) == *label) {
                    roots.extend(band.iter().filter_map(|a| old.get(a)).map(|&k| uf.find(piece[k])));
                }
            }
            let p = match roots.iter().next() {
                None => {
                    euler.push(1);
                    uf.add()
                }
                Some(&first) => {
                    let mut r = first;
                    for &x in roots.iter().skip(1) {
                        let chi = euler[uf.find(x)];
                        r = uf.union(r, x);
                        euler[r] += chi;
                    }
                    r
                }
            };
            next.push(p);
        }
        if let MovieEvent::Saddle { arcs: band, .. } = e {
            let r = uf.find(piece[old[&band[0]]]);
            euler[r] -= 1;
        }
        piece = next;
    }
    let mut tally: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for p in start_piece {
        tally.entry(uf.find(p)).or_default().0 += 1;
    }
    for &p in &piece {
        tally.entry(uf.find(p)).or_default().1 += 1;
    }
    for i in 0..euler.len() {
        tally.entry(uf.find(i)).or_default();
    }
    for (&r, &(s, t)) in &tally {
        let chi = euler[r];
        if (s, t, chi) != (1, 1, 0) {
            return RibbonCheck::no(format!(
                "surface component with {s} start and {t} end boundary circles and Euler characteristic {chi} is not an annulus"
            ));
        }
    }
    RibbonCheck { is_ribbon: true, reason: None }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub i: i32,
    pub j: i32,
    pub start: Group,
    pub end: Group,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingResult {
    pub ring: String,
    pub composite: IdentityClass,
    pub injective: bool,
    pub rank_check: Vec<RankCheck>,
}

impl RingResult {
    pub fn passed(&self) -> bool {
        self.composite != IdentityClass::Other && self.injective && self.rank_check.iter().all(|r| r.ok)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RibbonReport {
    pub is_ribbon: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub results: Vec<RingResult>,
}

impl RibbonReport {
    pub fn passed(&self) -> bool {
        self.is_ribbon && self.results.iter().all(RingResult::passed)
    }
}

fn prime_powers(mut n: i64) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Whether a finite abelian group with these cyclic orders can embed in one
/// with orders `big`: for every p and k, no more summands of order divisible
/// by p^k than the target has.
fn torsion_embeds(small: &[i64], big: &[i64]) -> bool {
    let count = |orders: &[i64]| {
        let mut c: BTreeMap<(i64, u32), usize> = BTreeMap::new();
        for &o in orders {
            for (p, e) in prime_powers(o) {
                for k in 1..=e {
                    *c.entry((p, k)).or_default() += 1;
                }
            }
        }
        c
    };
    let (a, b) = (count(small), count(big));
    a.iter().all(|(key, &n)| b.get(key).copied().unwrap_or(0) >= n)
}

/// Bigrading-wise comparison of the homology at the two ends.
pub fn rank_checks(start: &HomologyTable, end: &HomologyTable) -> Vec<RankCheck> {
    let keys: BTreeSet<_> = start.groups().keys().chain(end.groups().keys()).copied().collect();
    keys.into_iter()
        .map(|b| {
            let (s, t) = (start.get(b.i, b.j), end.get(b.i, b.j));
            let ok = s.rank <= t.rank && torsion_embeds(&s.torsion, &t.torsion);
            RankCheck { i: b.i, j: b.j, start: s, end: t, ok }
        })
        .collect()
}

fn rank_mod_p(rows: &[Vec<BigRational>], p: u64) -> usize {
    let p = p as i64;
    let mut m: Vec<Vec<i64>> =
        rows.iter().map(|r| r.iter().map(|x| x.to_integer().to_i64().expect("residue fits").rem_euclid(p)).collect()).collect();
    let inv = |a: i64| (1..p).find(|&x| a * x % p == 1).expect("nonzero residue is invertible");
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, r);
        let ip = inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = *x * ip % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, r);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in 0..cols {
                    let t = &m[rank][k] * &f;
                    m[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether an induced map over a field has no kernel.
fn injective_over_field(f: &InducedMap, source: &HomologyTable, p: Option<u64>) -> bool {
    let mut rank = 0;
    for b in f.blocks().values() {
        rank += match p {
            Some(p) => rank_mod_p(&b.entries, p),
            None => rank_rational(&b.entries),
        };
    }
    rank == source.total_rank()
}

/// Checks that the reversed movie composed with the movie is ± the identity
/// on homology, and compares the homology of the two ends.
pub fn verify_theorem(m: &Movie, rings: &[RingSpec]) -> Result<RibbonReport, MovieError> {
    let check = is_ribbon(m);
    let round = m.then(&m.reverse())?;
    let mut results = Vec::new();
    for &ring in rings {
        let forward = MovieComplexes::build(m, ring)?;
        let there_and_back = MovieComplexes::build(&round, ring)?;
        let algebra = |source| MovieError::Algebra { index: m.len(), source };
        let composite = there_and_back.induced().map_err(algebra)?.classify();
        let h0 = Homology::compute(&forward.complexes[0]).table();
        let h1 = Homology::compute(forward.complexes.last().unwrap()).table();
        let injective = match ring {
            RingSpec::Integers => composite != IdentityClass::Other,
            RingSpec::Rationals => injective_over_field(&forward.induced().map_err(algebra)?, &h0, None),
            RingSpec::PrimeField(p) => injective_over_field(&forward.induced().map_err(algebra)?, &h0, Some(p)),
        };
        results.push(RingResult { ring: ring.to_string(), composite, injective, rank_check: rank_checks(&h0, &h1) });
    }
    Ok(RibbonReport { is_ribbon: check.is_ribbon, reason: check.reason, results })
}

/// Tubing a newly born sphere into a sheet of the identity cobordism gives,
/// at chain level, ± the identity. Returns the sign, or `None` if the two
/// maps differ.
pub fn check_tube_proposition(ambient: &LinkDiagram, ring: RingSpec) -> Result<Option<i8>, MovieError> {
    let Some(&a) = ambient.arcs().first() else {
        return Err(MovieError::site(0, "the empty diagram has no sheet to tube into"));
    };
    let s = ambient.max_label() + 1;
    let m = Movie::new(
        ambient.clone(),
        &[MovieEvent::Birth { label: Some(s) }, MovieEvent::Saddle { arcs: [a, s], label: None }],
    )?;
    let mc = MovieComplexes::build(&m, ring)?;
    let algebra = |source| MovieError::Algebra { index: m.len(), source };
    let tubed = mc.composite().map_err(algebra)?;
    let product = ChainMap::identity(tubed.source().clone());
    Ok(match scalar_compare(&tubed, &product).map_err(algebra)? {
        MapComparison::Equal => Some(1),
        MapComparison::Negatives => Some(-1),
        MapComparison::Distinct => None,
    })
}

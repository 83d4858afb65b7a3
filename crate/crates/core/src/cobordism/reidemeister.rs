//! Chain maps of Reidemeister moves.
//!
//! The diagram with the extra crossings has, at one local resolution, a small
//! circle made only of arcs inside the move. Cancelling that circle's v₋
//! (resp. v₊) half against the neighbouring resolution, one cube direction
//! at a time, leaves a complex isomorphic to the one on the other side.
//! The maps are the inclusion and projection of this deformation retract,
//! composed with that isomorphism. For R3 both sides are retracted this way
//! (one crossing is left alone, as in the Kauffman trick) and the two
//! retracts are matched through the crossingless tangles they keep.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use super::event::MoveFrame;
use super::maps::{carry, match_circles};
use crate::complex::ChainMap;
use crate::cube::KhComplex;
use crate::error::AlgebraError;
use crate::link::{ArcLabel, Slot, SMOOTHING_PAIRS};
use crate::reduce::{Eliminator, Reduced, SparseVec};
use crate::ring::Integers;
use crate::sparse::SparseMatrix;

fn ident_err<T>(msg: impl Into<String>) -> Result<T, AlgebraError> {
    Err(AlgebraError::Identification(msg.into()))
}

fn spread(u: u64, local: &[usize]) -> u64 {
    local.iter().enumerate().map(|(k, &c)| ((u >> k) & 1) << c).sum()
}

/// A complex retracted along the small local circle.
struct Retract<'a> {
    k: &'a KhComplex,
    local: Vec<usize>,
    inner: Vec<ArcLabel>,
    red: Reduced<Integers>,
}

impl Retract<'_> {
    fn local_mask(&self) -> u64 {
        spread(u64::MAX, &self.local)
    }

    /// Local part of a vertex, as bits over `local`.
    fn local_bits(&self, v: u64) -> u64 {
        self.local.iter().enumerate().map(|(k, &c)| ((v >> c) & 1) << k).sum()
    }
}

fn inner_only_circle(k: &KhComplex, v: u64, inner: &[ArcLabel]) -> Option<usize> {
    let cm = k.circles_at(v);
    (0..cm.count).find(|&c| {
        cm.circle_of_arc.iter().enumerate().all(|(i, &x)| x as usize != c || inner.contains(&k.arcs().label(i)))
    })
}

fn retract<'a>(k: &'a KhComplex, local: &[usize], inner: &[ArcLabel]) -> Result<Retract<'a>, AlgebraError> {
    let loops: Vec<u64> =
        (0..1u64 << local.len()).filter(|&u| inner_only_circle(k, spread(u, local), inner).is_some()).collect();
    let [u_loop] = loops[..] else {
        return ident_err(format!("expected one local resolution with an inner circle, found {}", loops.len()));
    };
    // directions to cancel along: all of them, except for R3 one crossing
    // whose neighbours in the other two directions lie on both sides
    let dirs: Vec<usize> = if local.len() < 3 {
        (0..local.len()).collect()
    } else {
        let keep = (0..3)
            .find(|&c| {
                let others: Vec<u64> = (0..3).filter(|&t| t != c).map(|t| (u_loop >> t) & 1).collect();
                others[0] != others[1]
            })
            .ok_or_else(|| AlgebraError::Identification("no crossing admits the Kauffman trick".into()))?;
        (0..3).filter(|&t| t != keep).collect()
    };
    if local.len() == 2 && (u_loop & 1) == (u_loop >> 1) {
        return ident_err("bigon resolution is not at a corner of mixed smoothings");
    }
    let loop_bits = spread(u_loop, local);
    let mask = spread(u64::MAX, local);
    let mut e = Eliminator::new(Integers, k.complex());
    for w in (0..k.vertex_count() as u64).filter(|w| w & mask == 0) {
        let v = w | loop_bits;
        let lam = inner_only_circle(k, v, inner).expect("inner circle persists");
        for &t in &dirs {
            let bit = 1u64 << local[t];
            let pairs: Vec<(usize, usize)> = if v & bit != 0 {
                let n = v & !bit;
                let map = match_circles(k, n, k, v, inner);
                (0..1u32 << k.circles_at(n).count)
                    .map(|x| (k.index(n, x), k.index(v, carry(x, &map, &[]) | 1 << lam)))
                    .collect()
            } else {
                let n = v | bit;
                let map = match_circles(k, v, k, n, inner);
                (0..1u32 << k.circles_at(v).count)
                    .filter(|y| (y >> lam) & 1 == 0)
                    .map(|y| (k.index(v, y), k.index(n, carry(y, &map, &[lam]))))
                    .collect()
            };
            for (a, b) in pairs {
                e.eliminate(a as u32, b as u32).map_err(AlgebraError::NonUnitPivot)?;
            }
        }
    }
    Ok(Retract { k, local: local.to_vec(), inner: inner.to_vec(), red: e.finish() })
}

/// Outside resolution and local resolution of a generator; signs are
/// constant on these classes.
type Class = (u64, u64);

/// Generators of side A paired with generators of side B, each pair
/// tagged with the sign class of its A generator.
struct Pairing {
    pairs: Vec<(u32, u32, Class)>,
}

/// Finds signs ε, constant on classes, with d_B(φa) = ε·d_A(a)·ε.
fn solve_signs(
    pairing: &Pairing,
    col_a: impl Fn(u32) -> SparseVec<i64>,
    col_b: impl Fn(u32) -> SparseVec<i64>,
) -> Result<Vec<i64>, AlgebraError> {
    let a2b: HashMap<u32, (u32, Class)> = pairing.pairs.iter().map(|&(a, b, c)| (a, (b, c))).collect();
    let mut adj: BTreeMap<Class, Vec<(Class, i64)>> = BTreeMap::new();
    for &(a, b, ca) in &pairing.pairs {
        adj.entry(ca).or_default();
        let bcol: HashMap<u32, i64> = col_b(b).into_iter().collect();
        let acol = col_a(a);
        if acol.len() != bcol.len() {
            return ident_err(format!("differentials differ in support at generator {a}"));
        }
        for (ar, va) in acol {
            let Some(&(br, cr)) = a2b.get(&ar) else {
                return ident_err(format!("generator {ar} has no partner"));
            };
            let s = match bcol.get(&br) {
                Some(&vb) if vb == va => 1,
                Some(&vb) if vb == -va => -1,
                _ => return ident_err(format!("differential entry ({ar}, {a}) has no matching partner entry")),
            };
            adj.entry(ca).or_default().push((cr, s));
            adj.entry(cr).or_default().push((ca, s));
        }
    }
    let mut eps: BTreeMap<Class, i64> = BTreeMap::new();
    if let Some((&root, _)) = adj.iter().next() {
        eps.insert(root, 1);
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            let ec = eps[&c];
            for &(d, s) in &adj[&c] {
                match eps.get(&d) {
                    Some(&ed) if ed != ec * s => return ident_err("sign constraints are inconsistent"),
                    Some(_) => {}
                    None => {
                        eps.insert(d, ec * s);
                        queue.push_back(d);
                    }
                }
            }
        }
    }
    if eps.len() != adj.len() {
        return ident_err("sign classes are not connected by the differential");
    }
    Ok(pairing.pairs.iter().map(|&(_, _, c)| eps[&c]).collect())
}

fn matrix_from_columns(rows: usize, cols: Vec<SparseVec<i64>>) -> SparseMatrix {
    SparseMatrix::from_columns(rows, cols)
}

fn small_differential_col(k: &KhComplex, a: u32) -> SparseVec<i64> {
    k.complex().differential().col(a as usize).to_vec()
}

/// Pairs every generator of the crossing-poorer diagram with a survivor of
/// the retract of the richer one.
fn pair_with_small(small: &KhComplex, r: &Retract, embed: &[usize]) -> Result<Pairing, AlgebraError> {
    let k = r.k;
    let mut pairs = Vec::with_capacity(r.red.survivors.len());
    let mut hit = vec![false; small.complex().len()];
    for &s in &r.red.survivors {
        let g = k.complex().generator(s as usize);
        let w = g.vertex & !r.local_mask();
        let ws: u64 = embed.iter().enumerate().map(|(i, &c)| ((w >> c) & 1) << i).sum();
        let cm = k.circles_at(g.vertex);
        let mut to_small = vec![None; cm.count];
        for (i, &c) in cm.circle_of_arc.iter().enumerate() {
            let a = k.arcs().label(i);
            if r.inner.contains(&a) || small.arcs().index(a).is_none() {
                continue;
            }
            let t = small.circle_of(ws, a);
            match to_small[c as usize] {
                None => to_small[c as usize] = Some(t),
                Some(x) if x != t => return ident_err(format!("circle {c} at vertex {} splits apart", g.vertex)),
                _ => {}
            }
        }
        let lam = inner_only_circle(k, g.vertex, &r.inner);
        let skip: Vec<usize> = lam.into_iter().collect();
        let labels = carry(g.labels, &to_small, &skip);
        let t = small.index(ws, labels);
        if hit[t] {
            return ident_err(format!("two survivors over generator {t}"));
        }
        hit[t] = true;
        if small.complex().grading(t) != k.complex().grading(s as usize) {
            return ident_err(format!("survivor {s} sits in a different bigrading from its partner"));
        }
        pairs.push((t as u32, s, (ws, 0)));
    }
    if hit.iter().any(|h| !h) {
        return ident_err("some generators have no surviving partner");
    }
    Ok(Pairing { pairs })
}

/// Map from the crossing-poorer to the richer diagram (`adding`) or back.
fn r12_map(small: &KhComplex, large: &KhComplex, frame: &MoveFrame, adding: bool) -> Result<ChainMap, AlgebraError> {
    let r = retract(large, &frame.local, &frame.inner)?;
    let pairing = pair_with_small(small, &r, &frame.embed)?;
    let eps = solve_signs(&pairing, |a| small_differential_col(small, a), |b| r.red.column(b).clone())?;
    let (ns, nl) = (small.complex().len(), large.complex().len());
    let m = if adding {
        let mut cols = vec![Vec::new(); ns];
        for (&(a, b, _), &e) in pairing.pairs.iter().zip(&eps) {
            cols[a as usize] = r.red.include(&vec![(b, e)]);
        }
        ChainMap::new(Arc::clone(small.complex()), Arc::clone(large.complex()), (0, 0), matrix_from_columns(nl, cols))?
    } else {
        let back: HashMap<u32, (u32, i64)> = pairing.pairs.iter().zip(&eps).map(|(&(a, b, _), &e)| (b, (a, e))).collect();
        let cols = (0..nl as u32)
            .map(|j| {
                let mut c: SparseVec<i64> =
                    r.red.project(&vec![(j, 1)]).into_iter().map(|(s, x)| (back[&s].0, x * back[&s].1)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        ChainMap::new(Arc::clone(large.complex()), Arc::clone(small.complex()), (0, 0), matrix_from_columns(ns, cols))?
    };
    m.verify()?;
    Ok(m)
}

type Matching = Vec<[(ArcLabel, bool); 2]>;

/// How the crossingless local tangle at a resolution pairs up the boundary
/// points of the move, each named by an outside arc and which end it is.
fn boundary_matching(k: &KhComplex, local: &[usize], inner: &[ArcLabel], v: u64) -> Matching {
    let d = k.diagram();
    let slots: Vec<Slot> = local.iter().flat_map(|&c| (0..4).map(move |p| Slot::new(c, p))).collect();
    let idx = |s: Slot| slots.iter().position(|&x| x == s).unwrap();
    let mut partner = vec![usize::MAX; slots.len()];
    for &c in local {
        let bit = ((v >> c) & 1) as usize;
        for &(x, y) in &SMOOTHING_PAIRS[bit] {
            let (i, j) = (idx(Slot::new(c, x)), idx(Slot::new(c, y)));
            partner[i] = j;
            partner[j] = i;
        }
    }
    let mut out = Vec::new();
    for (i, &s) in slots.iter().enumerate() {
        let a = d.arc_at(s);
        if inner.contains(&a) {
            continue;
        }
        // walk through the tangle: smoothing, then along inner arcs
        let mut j = partner[i];
        loop {
            let b = d.arc_at(slots[j]);
            if !inner.contains(&b) {
                break;
            }
            let (t, h) = d.ends(b).unwrap();
            let other = if slots[j] == t { h } else { t };
            j = partner[idx(other)];
        }
        let end = |s: Slot| (d.arc_at(s), d.head(d.arc_at(s)) == Some(s));
        let mut pair = [end(s), end(slots[j])];
        pair.sort_unstable();
        if !out.contains(&pair) {
            out.push(pair);
        }
    }
    out.sort_unstable();
    out
}

/// Pairs survivors of two R3 retracts with the same outside resolution and
/// the same local tangle.
fn pair_r3(a: &Retract, b: &Retract) -> Result<Pairing, AlgebraError> {
    let mut by_tangle: HashMap<Matching, u64> = HashMap::new();
    for &s in &b.red.survivors {
        let v = b.k.complex().generator(s as usize).vertex;
        let u = b.local_bits(v);
        by_tangle.entry(boundary_matching(b.k, &b.local, &b.inner, v)).or_insert(u);
    }
    let mut tangle_cache: HashMap<u64, u64> = HashMap::new();
    let mut pairs = Vec::with_capacity(a.red.survivors.len());
    for &s in &a.red.survivors {
        let g = a.k.complex().generator(s as usize);
        let ua = a.local_bits(g.vertex);
        let ub = match tangle_cache.get(&ua) {
            Some(&u) => u,
            None => {
                let m = boundary_matching(a.k, &a.local, &a.inner, g.vertex);
                let Some(&u) = by_tangle.get(&m) else {
                    return ident_err(format!("no resolution across the move matches local resolution {ua}"));
                };
                tangle_cache.insert(ua, u);
                u
            }
        };
        let w = g.vertex & !a.local_mask();
        let vb = w | spread(ub, &b.local);
        let map = match_circles(a.k, g.vertex, b.k, vb, &a.inner);
        if map.iter().any(|m| m.is_none()) {
            return ident_err(format!("a circle at vertex {} lies inside the move", g.vertex));
        }
        let t = b.k.index(vb, carry(g.labels, &map, &[]));
        if b.red.position[t].is_none() {
            return ident_err(format!("partner of survivor {s} was cancelled"));
        }
        if a.k.complex().grading(s as usize) != b.k.complex().grading(t) {
            return ident_err(format!("survivor {s} sits in a different bigrading from its partner"));
        }
        pairs.push((s, t as u32, (w, ua)));
    }
    if pairs.len() != b.red.survivors.len() {
        return ident_err("retracts have different sizes");
    }
    Ok(Pairing { pairs })
}

fn r3_map(before: &KhComplex, after: &KhComplex, frame: &MoveFrame) -> Result<ChainMap, AlgebraError> {
    // solve in a fixed direction so that the move and its inverse use
    // mutually inverse identifications
    let forward = before.diagram().pd() <= after.diagram().pd();
    let (ka, kb) = if forward { (before, after) } else { (after, before) };
    let ra = retract(ka, &frame.local, &frame.inner)?;
    let rb = retract(kb, &frame.local, &frame.inner)?;
    let pairing = pair_r3(&ra, &rb)?;
    let eps = solve_signs(&pairing, |a| ra.red.column(a).clone(), |b| rb.red.column(b).clone())?;
    let sigma: HashMap<u32, (u32, i64)> = if forward {
        pairing.pairs.iter().zip(&eps).map(|(&(a, b, _), &e)| (a, (b, e))).collect()
    } else {
        pairing.pairs.iter().zip(&eps).map(|(&(a, b, _), &e)| (b, (a, e))).collect()
    };
    let (rs, rt) = if forward { (&ra, &rb) } else { (&rb, &ra) };
    let cols = (0..before.complex().len() as u32)
        .map(|j| {
            let mut y: SparseVec<i64> =
                rs.red.project(&vec![(j, 1)]).into_iter().map(|(s, x)| (sigma[&s].0, x * sigma[&s].1)).collect();
            y.sort_unstable();
            rt.red.include(&y)
        })
        .collect();
    let m = ChainMap::new(
        Arc::clone(before.complex()),
        Arc::clone(after.complex()),
        (0, 0),
        matrix_from_columns(after.complex().len(), cols),
    )?;
    m.verify()?;
    Ok(m)
}

/// Chain map of a Reidemeister move between complexes over ℤ.
pub(crate) fn reidemeister_map(before: &KhComplex, after: &KhComplex, frame: &MoveFrame) -> Result<ChainMap, AlgebraError> {
    if before.diagram().crossing_count() == after.diagram().crossing_count() {
        r3_map(before, after, frame)
    } else if frame.large_is_after {
        r12_map(before, after, frame, true)
    } else {
        r12_map(after, before, frame, false)
    }
}

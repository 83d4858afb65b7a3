//! Chain maps of the Morse events: unit, counit, m/Δ and multiplication by X.
//!
//! Both flanking diagrams have the same crossings in the same order, so a
//! generator at vertex v maps to generators at the same vertex v.

use std::sync::Arc;

use crate::complex::ChainMap;
use crate::cube::KhComplex;
use crate::error::AlgebraError;
use crate::link::ArcLabel;
use crate::sparse::SparseMatrix;

/// For each circle of `src` at `v`, the circle of `tgt` at `w` through a
/// common arc, ignoring arcs in `skip`.
pub(crate) fn match_circles(src: &KhComplex, v: u64, tgt: &KhComplex, w: u64, skip: &[ArcLabel]) -> Vec<Option<usize>> {
    let cs = src.circles_at(v);
    let mut out = vec![None; cs.count];
    for (i, &k) in cs.circle_of_arc.iter().enumerate() {
        let a = src.arcs().label(i);
        if out[k as usize].is_none() && !skip.contains(&a) && tgt.arcs().index(a).is_some() {
            out[k as usize] = Some(tgt.circle_of(w, a));
        }
    }
    out
}

/// Moves the v₋ bits of untouched circles along a circle matching.
pub(crate) fn carry(labels: u32, map: &[Option<usize>], touched: &[usize]) -> u32 {
    let mut out = 0;
    for (k, m) in map.iter().enumerate() {
        if (labels >> k) & 1 == 1 && !touched.contains(&k) {
            out |= 1 << m.expect("untouched circle has a partner");
        }
    }
    out
}

fn circles_through(k: &KhComplex, v: u64, arcs: &[ArcLabel]) -> Vec<usize> {
    let mut out: Vec<usize> = arcs.iter().filter(|&&a| k.arcs().index(a).is_some()).map(|&a| k.circle_of(v, a)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn build(
    src: &KhComplex,
    tgt: &KhComplex,
    bidegree: (i32, i32),
    mut per_vertex: impl FnMut(u64, &mut dyn FnMut(u32, u32, i64)),
) -> Result<ChainMap, AlgebraError> {
    let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); src.complex().len()];
    for v in 0..src.vertex_count() as u64 {
        per_vertex(v, &mut |from, to, c| cols[src.index(v, from)].push((tgt.index(v, to) as u32, c)));
    }
    for c in &mut cols {
        c.sort_unstable();
    }
    let m = SparseMatrix::from_columns(tgt.complex().len(), cols);
    ChainMap::new(Arc::clone(src.complex()), Arc::clone(tgt.complex()), bidegree, m)
}

/// Unit: the new loop carries v₊.
pub(crate) fn birth_map(src: &KhComplex, tgt: &KhComplex) -> Result<ChainMap, AlgebraError> {
    build(src, tgt, (0, 1), |v, emit| {
        let map = match_circles(src, v, tgt, v, &[]);
        for labels in 0..1u32 << src.circles_at(v).count {
            emit(labels, carry(labels, &map, &[]), 1);
        }
    })
}

/// Counit on the loop `l`: v₋ ↦ 1, v₊ ↦ 0.
pub(crate) fn death_map(src: &KhComplex, tgt: &KhComplex, l: ArcLabel) -> Result<ChainMap, AlgebraError> {
    build(src, tgt, (0, 1), |v, emit| {
        let map = match_circles(src, v, tgt, v, &[l]);
        let z = src.circle_of(v, l);
        for labels in 0..1u32 << src.circles_at(v).count {
            if (labels >> z) & 1 == 1 {
                emit(labels, carry(labels, &map, &[z]), 1);
            }
        }
    })
}

/// Multiplication by X on the circle through `arc`.
pub(crate) fn dot_map(src: &KhComplex, tgt: &KhComplex, arc: ArcLabel) -> Result<ChainMap, AlgebraError> {
    build(src, tgt, (0, -2), |v, emit| {
        let z = src.circle_of(v, arc);
        for labels in 0..1u32 << src.circles_at(v).count {
            if (labels >> z) & 1 == 0 {
                emit(labels, labels | 1 << z, 1);
            }
        }
    })
}

/// m or Δ at every vertex. `touched` lists the arcs of either diagram that
/// the band meets (including a loop created or absorbed by it).
pub(crate) fn saddle_map(src: &KhComplex, tgt: &KhComplex, touched: &[ArcLabel]) -> Result<ChainMap, AlgebraError> {
    let mut failure = None;
    let m = build(src, tgt, (0, -1), |v, emit| {
        let map = match_circles(src, v, tgt, v, touched);
        let before = circles_through(src, v, touched);
        let after = circles_through(tgt, v, touched);
        for labels in 0..1u32 << src.circles_at(v).count {
            let rest = carry(labels, &map, &before);
            let minus = |k: usize| (labels >> before[k]) & 1 == 1;
            match (before.len(), after.len()) {
                (2, 1) => {
                    let z = after[0];
                    match (minus(0), minus(1)) {
                        (false, false) => emit(labels, rest, 1),
                        (true, true) => {}
                        _ => emit(labels, rest | 1 << z, 1),
                    }
                }
                (1, 2) => {
                    let (z1, z2) = (after[0], after[1]);
                    if minus(0) {
                        emit(labels, rest | 1 << z1 | 1 << z2, 1);
                    } else {
                        emit(labels, rest | 1 << z1, 1);
                        emit(labels, rest | 1 << z2, 1);
                    }
                }
                (b, a) => {
                    failure.get_or_insert((v, b, a));
                }
            }
        }
    });
    // the closure cannot return early, so report afterwards
    if let Some((v, b, a)) = failure {
        return Err(AlgebraError::Identification(format!(
            "band at vertex {v} turns {b} circle(s) into {a}, expected a merge or a split"
        )));
    }
    m
}

//! The Khovanov cube of resolutions over A = R[X]/(X²).

use std::sync::Arc;

use rayon::prelude::*;

use crate::complex::{BigradedComplex, Bigrading, Generator};
use crate::error::DiagramError;
use crate::link::{circle_map, ArcIndex, ArcLabel, CircleMap, LinkDiagram};
use crate::poly::LaurentPolynomial;
use crate::ring::RingSpec;
use crate::sparse::SparseMatrix;

pub const DEFAULT_MAX_CROSSINGS: usize = 16;

/// Crossing limit: `KH_MAX_CROSSINGS` if set to a number, else the default.
pub fn max_crossings() -> usize {
    std::env::var("KH_MAX_CROSSINGS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CROSSINGS)
}

/// Labels are a u32 bitmask, so no resolution may have more circles.
const MAX_CIRCLES: usize = 31;

/// CKh of a diagram together with the resolution data that cobordism maps
/// need: the circle of every arc at every vertex and the generator offsets.
#[derive(Clone, Debug)]
pub struct KhComplex {
    diagram: LinkDiagram,
    arcs: ArcIndex,
    circles: Vec<CircleMap>,
    offsets: Vec<usize>,
    complex: Arc<BigradedComplex>,
}

impl KhComplex {
    pub fn diagram(&self) -> &LinkDiagram {
        &self.diagram
    }

    pub fn complex(&self) -> &Arc<BigradedComplex> {
        &self.complex
    }

    pub fn ring(&self) -> RingSpec {
        self.complex.ring()
    }

    pub fn arcs(&self) -> &ArcIndex {
        &self.arcs
    }

    pub fn vertex_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circles_at(&self, vertex: u64) -> &CircleMap {
        &self.circles[vertex as usize]
    }

    /// Circle through arc `a` in the resolution at `vertex`.
    pub fn circle_of(&self, vertex: u64, a: ArcLabel) -> usize {
        let k = self.arcs.index(a).unwrap_or_else(|| panic!("arc {a} not in diagram"));
        self.circles[vertex as usize].circle_of_arc[k] as usize
    }

    /// Global index of the generator (vertex, labels).
    pub fn index(&self, vertex: u64, labels: u32) -> usize {
        let v = vertex as usize;
        debug_assert!((labels as usize) < self.offsets[v + 1] - self.offsets[v]);
        self.offsets[v] + labels as usize
    }

    /// Generator indices at a vertex, in label order.
    pub fn range(&self, vertex: u64) -> std::ops::Range<usize> {
        self.offsets[vertex as usize]..self.offsets[vertex as usize + 1]
    }
}

pub fn build_complex(d: &LinkDiagram, ring: RingSpec) -> Result<KhComplex, DiagramError> {
    build_complex_with_limit(d, ring, max_crossings())
}

pub fn build_complex_with_limit(d: &LinkDiagram, ring: RingSpec, limit: usize) -> Result<KhComplex, DiagramError> {
    let n = d.crossing_count();
    if n > limit || n > 40 {
        return Err(DiagramError::TooManyCrossings { crossings: n, limit: limit.min(40) });
    }
    let arcs = ArcIndex::new(d);
    let nv = 1u64 << n;
    let circles: Vec<CircleMap> = (0..nv).into_par_iter().map(|v| circle_map(d, &arcs, v)).collect();
    if let Some(worst) = circles.iter().map(|c| c.count).max() {
        if worst > MAX_CIRCLES {
            return Err(DiagramError::TooManyCrossings { crossings: n, limit });
        }
    }
    let mut offsets = Vec::with_capacity(circles.len() + 1);
    offsets.push(0usize);
    for c in &circles {
        offsets.push(offsets.last().unwrap() + (1usize << c.count));
    }
    let total = *offsets.last().unwrap();

    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let mut gens = Vec::with_capacity(total);
    let mut gradings = Vec::with_capacity(total);
    for (v, c) in circles.iter().enumerate() {
        let h = (v as u64).count_ones() as i32;
        for labels in 0u32..(1u32 << c.count) {
            gens.push(Generator { vertex: v as u64, labels });
            let minus = labels.count_ones() as i32;
            gradings.push(Bigrading::new(h - nm, c.count as i32 - 2 * minus + h + np - 2 * nm));
        }
    }

    let reps: Vec<Vec<usize>> = circles.iter().map(representatives).collect();
    let columns: Vec<Vec<(u32, i64)>> = (0..nv)
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut cols = Vec::new();
            let cv = &circles[v as usize];
            for labels in 0u32..(1u32 << cv.count) {
                let mut col = Vec::new();
                for c in 0..n {
                    if (v >> c) & 1 == 1 {
                        continue;
                    }
                    let w = v | (1 << c);
                    let sign = if (v & ((1u64 << c) - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
                    let base = offsets[w as usize] as u32;
                    for l in edge_images(d, &arcs, c, cv, &reps[v as usize], &circles[w as usize], labels) {
                        col.push((base + l, sign));
                    }
                }
                cols.push(col);
            }
            cols
        })
        .collect();
    let diff = SparseMatrix::from_columns(total, columns);
    let complex = Arc::new(BigradedComplex::new(ring, gens, gradings, diff));
    Ok(KhComplex { diagram: d.clone(), arcs, circles, offsets, complex })
}

/// First arc index of each circle.
pub(crate) fn representatives(c: &CircleMap) -> Vec<usize> {
    let mut reps = vec![usize::MAX; c.count];
    for (k, &id) in c.circle_of_arc.iter().enumerate() {
        if reps[id as usize] == usize::MAX {
            reps[id as usize] = k;
        }
    }
    reps
}

/// Images of a labelling under the edge map that changes crossing `c` from
/// its 0- to its 1-smoothing (m on a merge, Δ on a split), all with
/// coefficient 1.
fn edge_images(
    d: &LinkDiagram,
    arcs: &ArcIndex,
    c: usize,
    cv: &CircleMap,
    reps_v: &[usize],
    cw: &CircleMap,
    labels: u32,
) -> Vec<u32> {
    let t = d.pd()[c];
    let at = |m: &CircleMap, a: ArcLabel| m.circle_of_arc[arcs.index(a).unwrap()] as usize;
    let (x, y) = (at(cv, t[0]), at(cv, t[2]));
    let mut rest = 0u32;
    for k in 0..cv.count {
        if k != x && k != y && (labels >> k) & 1 == 1 {
            rest |= 1 << cw.circle_of_arc[reps_v[k]];
        }
    }
    let (bx, by) = ((labels >> x) & 1, (labels >> y) & 1);
    if x != y {
        let z = at(cw, t[0]);
        match bx + by {
            0 => vec![rest],
            1 => vec![rest | 1 << z],
            _ => vec![],
        }
    } else {
        let (z1, z2) = (at(cw, t[0]), at(cw, t[1]));
        debug_assert_ne!(z1, z2);
        if bx == 1 {
            vec![rest | 1 << z1 | 1 << z2]
        } else {
            vec![rest | 1 << z2, rest | 1 << z1]
        }
    }
}

/// Σ (−1)^i q^j over all generators.
pub fn graded_euler_characteristic(c: &BigradedComplex) -> LaurentPolynomial {
    let mut p = LaurentPolynomial::zero();
    for b in c.gradings() {
        p.add_term(if b.i.rem_euclid(2) == 0 { 1 } else { -1 }, b.j as i64);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::verify_complex;
    use crate::jones::jones;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::new(None, vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![]).unwrap()
    }

    fn hopf() -> LinkDiagram {
        LinkDiagram::new(None, vec![[4, 1, 3, 2], [2, 3, 1, 4]], vec![]).unwrap()
    }

    #[test]
    fn unknot_complex() {
        let k = build_complex(&LinkDiagram::unknot(), RingSpec::Integers).unwrap();
        let c = k.complex();
        assert_eq!(c.len(), 2);
        assert!(c.differential().is_zero());
        assert_eq!(c.bigradings(), vec![Bigrading::new(0, -1), Bigrading::new(0, 1)]);
    }

    #[test]
    fn generator_counts() {
        // circle counts per vertex: Hopf (2,1,1,2), trefoil (2,1,1,2,1,2,2,3)
        let h = build_complex(&hopf(), RingSpec::Integers).unwrap();
        assert_eq!(h.complex().len(), 12);
        let t = build_complex(&trefoil(), RingSpec::Integers).unwrap();
        assert_eq!(t.complex().len(), 30);
        for v in 0..8u64 {
            assert_eq!(t.range(v).len(), 1 << t.circles_at(v).count);
        }
    }

    #[test]
    fn differentials_square_to_zero() {
        for ring in [RingSpec::Integers, RingSpec::PrimeField(2), RingSpec::Rationals] {
            for d in [trefoil(), hopf(), trefoil().mirror(), LinkDiagram::unlink(2)] {
                let k = build_complex(&d, ring).unwrap();
                assert!(verify_complex(k.complex()).passed());
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_bracket() {
        for d in [trefoil(), hopf(), trefoil().mirror(), LinkDiagram::empty()] {
            let k = build_complex(&d, RingSpec::Integers).unwrap();
            assert_eq!(graded_euler_characteristic(k.complex()), jones(&d).unwrap());
        }
    }

    #[test]
    fn crossing_limit_enforced() {
        assert!(matches!(
            build_complex_with_limit(&trefoil(), RingSpec::Integers, 2),
            Err(DiagramError::TooManyCrossings { crossings: 3, limit: 2 })
        ));
    }
}

//! Gaussian elimination of a chain complex along unit entries of its
//! differential.
//!
//! Cancelling a unit entry `u` of `d(a)` at `b` replaces the complex by a
//! homotopy equivalent one without `a` and `b`. The projection f and
//! inclusion g of each step are recorded in a log so they can be replayed
//! on individual vectors later, instead of being carried as matrices.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet};

use crate::complex::BigradedComplex;
use crate::ring::EuclideanRing;

pub(crate) type SparseVec<E> = Vec<(u32, E)>;

struct Step<E> {
    a: u32,
    b: u32,
    u_inv: E,
    /// d(a) at the time of cancellation, without the `b` entry.
    da: SparseVec<E>,
    /// Coefficients of `b` in d(x) for the other columns x touching `b`.
    row_b: SparseVec<E>,
}

fn axpy<R: EuclideanRing>(r: &R, dst: &SparseVec<R::E>, c: &R::E, src: &SparseVec<R::E>) -> SparseVec<R::E> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j == src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i == dst.len() || src[j].0 < dst[i].0 {
            out.push((src[j].0, r.mul(c, &src[j].1)));
            j += 1;
        } else {
            let v = r.add(&dst[i].1, &r.mul(c, &src[j].1));
            if !r.is_zero(&v) {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup<E>(v: &SparseVec<E>, k: u32) -> Option<&E> {
    v.binary_search_by_key(&k, |e| e.0).ok().map(|p| &v[p].1)
}

/// Mutable elimination state over a complex.
pub(crate) struct Eliminator<R: EuclideanRing> {
    ring: R,
    cols: Vec<SparseVec<R::E>>,
    rows: Vec<HashSet<u32>>,
    alive: Vec<bool>,
    log: Vec<Step<R::E>>,
}

impl<R: EuclideanRing> Eliminator<R> {
    pub fn new(ring: R, c: &BigradedComplex) -> Self {
        let n = c.len();
        let cols: Vec<SparseVec<R::E>> = (0..n)
            .map(|k| {
                c.differential()
                    .col(k)
                    .iter()
                    .map(|&(r, v)| (r, ring.from_i64(v)))
                    .filter(|(_, v)| !ring.is_zero(v))
                    .collect()
            })
            .collect();
        let mut rows: Vec<HashSet<u32>> = vec![HashSet::new(); n];
        for (k, col) in cols.iter().enumerate() {
            for &(r, _) in col {
                rows[r as usize].insert(k as u32);
            }
        }
        Eliminator { ring, cols, rows, alive: vec![true; n], log: Vec::new() }
    }

    /// Cancels the pair (a, b); fails unless d(a) has a unit entry at b.
    pub fn eliminate(&mut self, a: u32, b: u32) -> Result<(), String> {
        let r = &self.ring;
        let (au, bu) = (a as usize, b as usize);
        if !self.alive[au] || !self.alive[bu] {
            return Err(format!("generator {a} or {b} already cancelled"));
        }
        let u = match lookup(&self.cols[au], b) {
            Some(u) if r.is_unit(u) => u.clone(),
            Some(u) => return Err(format!("entry {} at ({b}, {a}) is not a unit", r.render(u))),
            None => return Err(format!("no differential entry from {a} to {b}")),
        };
        let u_inv = r.unit_inverse(&u);
        let da: SparseVec<R::E> = self.cols[au].iter().filter(|e| e.0 != b).cloned().collect();
        let mut others: Vec<u32> = self.rows[bu].iter().copied().filter(|&x| x != a).collect();
        others.sort_unstable();
        let mut row_b = Vec::with_capacity(others.len());
        for &x in &others {
            let coef = lookup(&self.cols[x as usize], b).unwrap().clone();
            let factor = r.neg(&r.mul(&coef, &u_inv));
            let old = std::mem::take(&mut self.cols[x as usize]);
            let new = axpy(r, &old, &factor, &self.cols[au]);
            for &(row, _) in &old {
                self.rows[row as usize].remove(&x);
            }
            for &(row, _) in &new {
                self.rows[row as usize].insert(x);
            }
            self.cols[x as usize] = new;
            row_b.push((x, coef));
        }
        for (row, _) in std::mem::take(&mut self.cols[au]) {
            self.rows[row as usize].remove(&a);
        }
        for (row, _) in std::mem::take(&mut self.cols[bu]) {
            self.rows[row as usize].remove(&b);
        }
        for y in std::mem::take(&mut self.rows[au]) {
            let col = &mut self.cols[y as usize];
            if let Ok(p) = col.binary_search_by_key(&a, |e| e.0) {
                col.remove(p);
            }
        }
        debug_assert!(self.rows[bu].is_empty());
        self.alive[au] = false;
        self.alive[bu] = false;
        self.log.push(Step { a, b, u_inv, da, row_b });
        Ok(())
    }

    /// Cancels unit entries until none are left.
    pub fn eliminate_all_units(&mut self) {
        let n = self.cols.len();
        loop {
            let mut progress = false;
            for a in 0..n {
                if !self.alive[a] || self.cols[a].is_empty() {
                    continue;
                }
                // Markowitz-style choice: the unit entry whose row is shortest
                let pivot = self.cols[a]
                    .iter()
                    .filter(|(_, v)| self.ring.is_unit(v))
                    .min_by_key(|(b, _)| (self.rows[*b as usize].len(), *b))
                    .map(|(b, _)| *b);
                if let Some(b) = pivot {
                    self.eliminate(a as u32, b).expect("unit pivot");
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
    }

    pub fn finish(mut self) -> Reduced<R> {
        let n = self.cols.len();
        let survivors: Vec<u32> = (0..n as u32).filter(|&k| self.alive[k as usize]).collect();
        let mut position = vec![None; n];
        for (p, &k) in survivors.iter().enumerate() {
            position[k as usize] = Some(p as u32);
        }
        let columns = survivors.iter().map(|&k| std::mem::take(&mut self.cols[k as usize])).collect();
        let mut step_of_b = vec![u32::MAX; n];
        let mut steps_with_row = vec![Vec::new(); n];
        for (k, s) in self.log.iter().enumerate() {
            step_of_b[s.b as usize] = k as u32;
            for &(x, _) in &s.row_b {
                steps_with_row[x as usize].push(k as u32);
            }
        }
        Reduced { ring: self.ring, survivors, position, columns, log: self.log, step_of_b, steps_with_row }
    }
}

/// A complex after elimination: the surviving generators of the original
/// complex and the induced differential between them.
pub(crate) struct Reduced<R: EuclideanRing> {
    pub ring: R,
    /// Original indices of survivors, ascending.
    pub survivors: Vec<u32>,
    /// Position of each original generator among the survivors.
    pub position: Vec<Option<u32>>,
    /// Differential columns of the survivors in original indices.
    pub columns: Vec<SparseVec<R::E>>,
    log: Vec<Step<R::E>>,
    step_of_b: Vec<u32>,
    steps_with_row: Vec<Vec<u32>>,
}

pub(crate) fn reduce<R: EuclideanRing>(ring: R, c: &BigradedComplex) -> Reduced<R> {
    let mut e = Eliminator::new(ring, c);
    e.eliminate_all_units();
    e.finish()
}

impl<R: EuclideanRing> Reduced<R> {
    /// Applies the projection f to a vector over the original generators;
    /// the result is supported on survivors (original indices).
    pub fn project(&self, z: &SparseVec<R::E>) -> SparseVec<R::E> {
        let r = &self.ring;
        let mut v: BTreeMap<u32, R::E> = z.iter().cloned().collect();
        let mut heap = BinaryHeap::new();
        for &(k, _) in z {
            let s = self.step_of_b[k as usize];
            if s != u32::MAX {
                heap.push(Reverse(s));
            }
        }
        let mut last = None;
        while let Some(Reverse(k)) = heap.pop() {
            if last == Some(k) {
                continue;
            }
            last = Some(k);
            let s = &self.log[k as usize];
            let Some(zb) = v.remove(&s.b) else { continue };
            let t = r.mul(&s.u_inv, &zb);
            for (x, val) in &s.da {
                let e = v.entry(*x).or_insert_with(|| r.zero());
                *e = r.sub(e, &r.mul(val, &t));
                let later = self.step_of_b[*x as usize];
                if later != u32::MAX && later > k {
                    heap.push(Reverse(later));
                }
            }
        }
        v.into_iter().filter(|(k, x)| !r.is_zero(x) && self.position[*k as usize].is_some()).collect()
    }

    /// Applies the inclusion g to a vector supported on survivors.
    pub fn include(&self, y: &SparseVec<R::E>) -> SparseVec<R::E> {
        let r = &self.ring;
        let mut v: BTreeMap<u32, R::E> = y.iter().cloned().collect();
        let mut heap = BinaryHeap::new();
        for &(x, _) in y {
            heap.extend(self.steps_with_row[x as usize].iter().copied());
        }
        let mut last = None;
        while let Some(k) = heap.pop() {
            if last == Some(k) {
                continue;
            }
            last = Some(k);
            let s = &self.log[k as usize];
            let mut t = r.zero();
            for (x, eta) in &s.row_b {
                if let Some(vx) = v.get(x) {
                    t = r.add(&t, &r.mul(eta, vx));
                }
            }
            if r.is_zero(&t) {
                continue;
            }
            let e = v.entry(s.a).or_insert_with(|| r.zero());
            *e = r.sub(e, &r.mul(&s.u_inv, &t));
            for &earlier in &self.steps_with_row[s.a as usize] {
                if earlier < k {
                    heap.push(earlier);
                }
            }
        }
        v.into_iter().filter(|(_, x)| !r.is_zero(x)).collect()
    }

    /// Reduced differential column of a survivor (original indices).
    pub fn column(&self, orig: u32) -> &SparseVec<R::E> {
        &self.columns[self.position[orig as usize].expect("survivor") as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::build_complex;
    use crate::link::LinkDiagram;
    use crate::ring::{Integers, PrimeField, RingSpec};

    fn trefoil() -> LinkDiagram {
        LinkDiagram::new(None, vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![]).unwrap()
    }

    #[test]
    fn field_elimination_leaves_zero_differential() {
        let k = build_complex(&trefoil(), RingSpec::PrimeField(3)).unwrap();
        let red = reduce(PrimeField { p: 3 }, k.complex());
        assert!(red.columns.iter().all(|c| c.is_empty()));
        // q + q³ + q⁵ + q⁹ and nothing else over a field of odd characteristic
        assert_eq!(red.survivors.len(), 4);
    }

    #[test]
    fn integer_elimination_keeps_the_two() {
        let k = build_complex(&trefoil(), RingSpec::Integers).unwrap();
        let red = reduce(Integers, k.complex());
        let entries: Vec<i64> = red.columns.iter().flatten().map(|e| e.1).collect();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].abs(), 2);
    }

    #[test]
    fn replayed_maps_are_chain_maps_and_split() {
        // f∘g = id on survivors, and f∘d∘g is the reduced differential
        let k = build_complex(&trefoil().mirror(), RingSpec::Integers).unwrap();
        let c = k.complex();
        let red = reduce(Integers, c);
        for &s in &red.survivors {
            let g = red.include(&vec![(s, 1)]);
            assert_eq!(red.project(&g), vec![(s, 1)]);
            let dg = c.differential().apply(&g);
            assert_eq!(&red.project(&dg), red.column(s));
        }
    }

    #[test]
    fn non_unit_pivot_rejected() {
        let k = build_complex(&trefoil(), RingSpec::Integers).unwrap();
        let mut e = Eliminator::new(Integers, k.complex());
        assert!(e.eliminate(0, 0).is_err());
    }
}

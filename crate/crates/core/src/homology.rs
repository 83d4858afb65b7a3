//! Bigraded homology with explicit bases, and maps induced on homology.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{BigradedComplex, Bigrading, ChainMap};
use crate::error::AlgebraError;
use crate::poly::LaurentPolynomial;
use crate::reduce::{reduce, Reduced};
use crate::ring::{EuclideanRing, Integers, PrimeField, Rationals, RingSpec};
use crate::snf::{column_echelon, smith, Mat};

/// One homology group: free rank plus torsion coefficients (each dividing
/// the next; always empty over a field).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub i: i32,
    pub j: i32,
    pub rank: usize,
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    ring: RingSpec,
    groups: BTreeMap<Bigrading, Group>,
}

impl HomologyTable {
    /// Table from explicit groups; zero groups are dropped.
    pub fn new(ring: RingSpec, groups: impl IntoIterator<Item = (Bigrading, Group)>) -> Self {
        let groups = groups.into_iter().filter(|(_, g)| !g.is_zero()).collect();
        HomologyTable { ring, groups }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// Nonzero groups in (i, j) order.
    pub fn groups(&self) -> &BTreeMap<Bigrading, Group> {
        &self.groups
    }

    pub fn get(&self, i: i32, j: i32) -> Group {
        self.groups.get(&Bigrading::new(i, j)).cloned().unwrap_or_default()
    }

    pub fn rank(&self, i: i32, j: i32) -> usize {
        self.get(i, j).rank
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.rank).sum()
    }

    pub fn entries(&self) -> Vec<GroupEntry> {
        self.groups
            .iter()
            .map(|(b, g)| GroupEntry { i: b.i, j: b.j, rank: g.rank, torsion: g.torsion.clone() })
            .collect()
    }

    pub fn from_entries(ring: RingSpec, entries: &[GroupEntry]) -> Self {
        HomologyTable::new(
            ring,
            entries.iter().map(|e| (Bigrading::new(e.i, e.j), Group { rank: e.rank, torsion: e.torsion.clone() })),
        )
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.entries()).expect("entries serialize")
    }

    /// Σ (−1)^i rank q^j (free parts only).
    pub fn euler_characteristic(&self) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero();
        for (b, g) in &self.groups {
            let s = if b.i.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(s * g.rank as i64, b.j as i64);
        }
        p
    }

    /// Poincaré polynomial of the free part as `r t^i q^j` terms in (i, j)
    /// order; torsion summands follow as `t^i q^j Z/n` terms.
    pub fn poincare_polynomial(&self) -> String {
        let mut terms = Vec::new();
        for (b, g) in &self.groups {
            if g.rank > 0 {
                let c = if g.rank == 1 { String::new() } else { g.rank.to_string() };
                terms.push(format!("{c}t^{}q^{}", b.i, b.j));
            }
        }
        for (b, g) in &self.groups {
            for n in &g.torsion {
                terms.push(format!("t^{}q^{} Z/{n}", b.i, b.j));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Plain-text table: one line per nonzero group.
    pub fn render_table(&self) -> String {
        let mut s = String::new();
        writeln!(s, "ring {}", self.ring).unwrap();
        writeln!(s, "{:>4} {:>4} {:>5}  torsion", "i", "j", "rank").unwrap();
        for (b, g) in &self.groups {
            let tors: Vec<String> = g.torsion.iter().map(|n| format!("Z/{n}")).collect();
            writeln!(s, "{:>4} {:>4} {:>5}  {}", b.i, b.j, g.rank, tors.join(" ")).unwrap();
        }
        s
    }
}

/// Homology data at one bigrading of the reduced complex.
struct Block<E> {
    /// Survivor positions in this bigrading.
    positions: Vec<u32>,
    /// Rows `rank_out..` of U⁻¹ from the column echelon form of the outgoing
    /// differential.
    u_inv_tail: Mat<E>,
    /// Row transform of the Smith form of the incoming boundaries.
    p: Mat<E>,
    /// Homology generators as (row of the Smith form, torsion order).
    gens: Vec<(usize, Option<E>)>,
    /// Cycle representative of each generator, dense over `positions`.
    reps: Vec<Vec<E>>,
}

struct Bases<R: EuclideanRing> {
    reduced: Reduced<R>,
    blocks: BTreeMap<Bigrading, Block<R::E>>,
}

fn matvec<R: EuclideanRing>(r: &R, m: &Mat<R::E>, v: &[R::E]) -> Vec<R::E> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(r.zero(), |acc, (a, b)| if r.is_zero(b) { acc } else { r.add(&acc, &r.mul(a, b)) })
        })
        .collect()
}

impl<R: EuclideanRing> Bases<R> {
    fn compute(ring: R, c: &BigradedComplex) -> Self {
        let reduced = reduce(ring, c);
        let gradings = c.gradings();
        let mut by_grading: BTreeMap<Bigrading, Vec<u32>> = BTreeMap::new();
        for (pos, &orig) in reduced.survivors.iter().enumerate() {
            by_grading.entry(gradings[orig as usize]).or_default().push(pos as u32);
        }
        // survivor position → (bigrading, index within its block)
        let mut local = vec![(Bigrading::new(0, 0), 0); reduced.survivors.len()];
        for (b, ps) in &by_grading {
            for (k, &p) in ps.iter().enumerate() {
                local[p as usize] = (*b, k);
            }
        }
        let r = &reduced.ring;
        let empty = Vec::new();
        let blocks: BTreeMap<Bigrading, Block<R::E>> = by_grading
            .par_iter()
            .map(|(&b, positions)| {
                let n = positions.len();
                let up = by_grading.get(&Bigrading::new(b.i + 1, b.j)).unwrap_or(&empty);
                let down = by_grading.get(&Bigrading::new(b.i - 1, b.j)).unwrap_or(&empty);
                // outgoing: up.len() × n
                let mut out: Mat<R::E> = vec![vec![r.zero(); n]; up.len()];
                for (col, &p) in positions.iter().enumerate() {
                    for (orig_row, v) in &reduced.columns[p as usize] {
                        let rp = reduced.position[*orig_row as usize].expect("reduced differential leaves survivors");
                        out[local[rp as usize].1][col] = v.clone();
                    }
                }
                // incoming: n × down.len()
                let mut inc: Mat<R::E> = vec![vec![r.zero(); down.len()]; n];
                for (col, &p) in down.iter().enumerate() {
                    for (orig_row, v) in &reduced.columns[p as usize] {
                        let rp = reduced.position[*orig_row as usize].unwrap();
                        inc[local[rp as usize].1][col] = v.clone();
                    }
                }
                let (u, u_inv, rank) = column_echelon(r, out, n);
                let u_inv_tail: Mat<R::E> = u_inv[rank..].to_vec();
                let k = n - rank;
                let m: Mat<R::E> = u_inv_tail
                    .iter()
                    .map(|row| (0..down.len()).map(|j| (0..n).fold(r.zero(), |acc, t| r.add(&acc, &r.mul(&row[t], &inc[t][j])))).collect())
                    .collect();
                let s = smith(r, m, down.len());
                let mut gens = Vec::new();
                for t in 0..k {
                    match s.diag.get(t) {
                        Some(d) if r.is_unit(d) => {}
                        Some(d) => gens.push((t, Some(d.clone()))),
                        None => gens.push((t, None)),
                    }
                }
                let reps = gens
                    .iter()
                    .map(|&(t, _)| {
                        // z = U[:, rank..] · p⁻¹[:, t]
                        let w: Vec<R::E> = (0..k).map(|x| s.p_inv[x][t].clone()).collect();
                        (0..n)
                            .map(|row| (0..k).fold(r.zero(), |acc, x| r.add(&acc, &r.mul(&u[row][rank + x], &w[x]))))
                            .collect()
                    })
                    .collect();
                (b, Block { positions: positions.clone(), u_inv_tail, p: s.p, gens, reps })
            })
            .collect();
        Bases { reduced, blocks }
    }

    fn table(&self) -> HomologyTable {
        let r = &self.reduced.ring;
        HomologyTable::new(
            r.spec(),
            self.blocks.iter().map(|(&b, blk)| {
                let rank = blk.gens.iter().filter(|g| g.1.is_none()).count();
                let torsion = blk
                    .gens
                    .iter()
                    .filter_map(|g| g.1.as_ref())
                    .map(|d| r.to_i64(d).expect("torsion coefficient is an integer").abs())
                    .collect();
                (b, Group { rank, torsion })
            }),
        )
    }

    /// Coordinates of a cycle of the reduced complex, given dense over the
    /// block's positions, in the block's homology generators.
    fn coordinates(&self, b: Bigrading, y: &[R::E]) -> Vec<R::E> {
        let r = &self.reduced.ring;
        let blk = &self.blocks[&b];
        let c = matvec(r, &blk.p, &matvec(r, &blk.u_inv_tail, y));
        blk.gens.iter().map(|&(t, _)| c[t].clone()).collect()
    }

    /// Image under `phi` of every generator in block `b` of `self`, in the
    /// homology generators of `target` at `b + shift`.
    fn induced_block(&self, target: &Bases<R>, phis: &[&ChainMap], shift: (i32, i32), b: Bigrading) -> Vec<Vec<R::E>> {
        let r = &self.reduced.ring;
        let blk = &self.blocks[&b];
        let tb = Bigrading::new(b.i + shift.0, b.j + shift.1);
        let mut cols = Vec::new();
        for rep in &blk.reps {
            let mut v: Vec<(u32, R::E)> = rep
                .iter()
                .zip(&blk.positions)
                .filter(|(x, _)| !r.is_zero(x))
                .map(|(x, &p)| (self.reduced.survivors[p as usize], x.clone()))
                .collect();
            v.sort_by_key(|e| e.0);
            let mut w = self.reduced.include(&v);
            for phi in phis {
                let mut acc: BTreeMap<u32, R::E> = BTreeMap::new();
                for (k, x) in &w {
                    for &(row, a) in phi.matrix().col(*k as usize) {
                        let t = r.mul(&r.from_i64(a), x);
                        let e = acc.entry(row).or_insert_with(|| r.zero());
                        *e = r.add(e, &t);
                    }
                }
                w = acc.into_iter().filter(|(_, x)| !r.is_zero(x)).collect();
            }
            let fw: std::collections::HashMap<u32, R::E> = target.reduced.project(&w).into_iter().collect();
            match target.blocks.get(&tb) {
                None => cols.push(vec![]),
                Some(tblk) => {
                    let y: Vec<R::E> =
                        tblk.positions.iter().map(|&p| fw.get(&target.reduced.survivors[p as usize]).cloned().unwrap_or_else(|| r.zero())).collect();
                    cols.push(target.coordinates(tb, &y));
                }
            }
        }
        cols
    }
}

enum Inner {
    Z(Bases<Integers>),
    Q(Bases<Rationals>),
    F(Bases<PrimeField>),
}

/// Homology of a complex with bases retained for induced maps.
pub struct Homology {
    complex: Arc<BigradedComplex>,
    inner: Inner,
}

impl Homology {
    pub fn compute(c: &Arc<BigradedComplex>) -> Self {
        let inner = match c.ring() {
            RingSpec::Integers => Inner::Z(Bases::compute(Integers, c)),
            RingSpec::Rationals => Inner::Q(Bases::compute(Rationals, c)),
            RingSpec::PrimeField(p) => Inner::F(Bases::compute(PrimeField { p }, c)),
        };
        Homology { complex: c.clone(), inner }
    }

    pub fn complex(&self) -> &Arc<BigradedComplex> {
        &self.complex
    }

    pub fn table(&self) -> HomologyTable {
        match &self.inner {
            Inner::Z(b) => b.table(),
            Inner::Q(b) => b.table(),
            Inner::F(b) => b.table(),
        }
    }

    /// Torsion order of each generator (over ℤ), in block order.
    fn moduli(&self, b: Bigrading) -> Vec<Option<BigRational>> {
        fn m<R: EuclideanRing>(x: &Bases<R>, b: Bigrading) -> Vec<Option<BigRational>> {
            let r = &x.reduced.ring;
            match x.blocks.get(&b) {
                None => vec![],
                Some(blk) => blk.gens.iter().map(|g| g.1.as_ref().map(|d| r.to_rational(d).abs())).collect(),
            }
        }
        match &self.inner {
            Inner::Z(x) => m(x, b),
            Inner::Q(x) => m(x, b),
            Inner::F(x) => m(x, b),
        }
    }

    /// Map induced by `phi` from this homology to `target`'s. `phi` must be
    /// a chain map between the two underlying complexes.
    pub fn induced_map(&self, target: &Homology, phi: &ChainMap) -> Result<InducedMap, AlgebraError> {
        self.induced_map_along(target, &[phi])
    }

    /// Map induced by the composite of `phis` (applied first to last),
    /// without forming the composite matrix.
    pub fn induced_map_along(&self, target: &Homology, phis: &[&ChainMap]) -> Result<InducedMap, AlgebraError> {
        let mut at = &self.complex;
        for phi in phis {
            if !same(at, phi.source()) {
                return Err(AlgebraError::ComplexMismatch("maps do not compose".into()));
            }
            phi.verify()?;
            at = phi.target();
        }
        if !same(at, &target.complex) {
            return Err(AlgebraError::ComplexMismatch("map does not run between these complexes".into()));
        }
        let shift = phis.iter().fold((0, 0), |(a, b), p| (a + p.bidegree().0, b + p.bidegree().1));
        let ring = self.complex.ring();
        fn run<R: EuclideanRing>(
            s: &Bases<R>,
            t: &Bases<R>,
            phis: &[&ChainMap],
            shift: (i32, i32),
        ) -> BTreeMap<Bigrading, Vec<Vec<BigRational>>> {
            let r = &s.reduced.ring;
            s.blocks
                .keys()
                .map(|&b| {
                    let cols = s.induced_block(t, phis, shift, b);
                    (b, cols.iter().map(|c| c.iter().map(|x| r.to_rational(x)).collect()).collect())
                })
                .collect()
        }
        let cols = match (&self.inner, &target.inner) {
            (Inner::Z(s), Inner::Z(t)) => run(s, t, phis, shift),
            (Inner::Q(s), Inner::Q(t)) => run(s, t, phis, shift),
            (Inner::F(s), Inner::F(t)) if s.reduced.ring.p == t.reduced.ring.p => run(s, t, phis, shift),
            _ => {
                return Err(AlgebraError::RingMismatch(
                    self.complex.ring().to_string(),
                    target.complex.ring().to_string(),
                ))
            }
        };
        let (di, dj) = shift;
        let mut blocks = BTreeMap::new();
        for (b, columns) in cols {
            let tb = Bigrading::new(b.i + di, b.j + dj);
            let row_moduli = target.moduli(tb);
            let col_moduli = self.moduli(b);
            let entries = (0..row_moduli.len()).map(|row| columns.iter().map(|c| c[row].clone()).collect()).collect();
            blocks.insert(b, InducedBlock { source: b, target: tb, row_moduli, col_moduli, entries });
        }
        Ok(InducedMap { ring, bidegree: shift, blocks: normalize_blocks(ring, blocks) })
    }
}

fn same(a: &Arc<BigradedComplex>, b: &Arc<BigradedComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Homology table of a complex over its own ring.
pub fn homology(c: &Arc<BigradedComplex>) -> HomologyTable {
    Homology::compute(c).table()
}

/// Map on homology induced by a chain map.
pub fn induced_map(f: &ChainMap) -> Result<InducedMap, AlgebraError> {
    let s = Homology::compute(f.source());
    if same(f.source(), f.target()) {
        s.induced_map(&s, f)
    } else {
        s.induced_map(&Homology::compute(f.target()), f)
    }
}

/// One block of an induced map: source generators (columns) at `source`
/// to target generators (rows) at `target`. Rows of torsion generators are
/// only meaningful modulo their order; over 𝔽_p everything is mod p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedBlock {
    pub source: Bigrading,
    pub target: Bigrading,
    pub row_moduli: Vec<Option<BigRational>>,
    pub col_moduli: Vec<Option<BigRational>>,
    pub entries: Vec<Vec<BigRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    ring: RingSpec,
    bidegree: (i32, i32),
    blocks: BTreeMap<Bigrading, InducedBlock>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityClass {
    Identity,
    NegativeIdentity,
    Other,
}

impl IdentityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityClass::Identity => "identity",
            IdentityClass::NegativeIdentity => "negative-identity",
            IdentityClass::Other => "other",
        }
    }
}

fn modulus(ring: RingSpec, m: &Option<BigRational>) -> Option<BigInt> {
    match (m, ring) {
        (Some(d), _) => Some(d.to_integer()),
        (None, RingSpec::PrimeField(p)) => Some(BigInt::from(p)),
        _ => None,
    }
}

fn congruent(ring: RingSpec, a: &BigRational, b: &BigRational, m: &Option<BigRational>) -> bool {
    match modulus(ring, m) {
        None => a == b,
        Some(n) => {
            let diff = a - b;
            diff.is_integer() && diff.to_integer().mod_floor(&n).is_zero()
        }
    }
}

fn normalize_blocks(ring: RingSpec, blocks: BTreeMap<Bigrading, InducedBlock>) -> BTreeMap<Bigrading, InducedBlock> {
    blocks
        .into_iter()
        .map(|(b, mut blk)| {
            for (row, m) in blk.entries.iter_mut().zip(&blk.row_moduli) {
                if let Some(n) = modulus(ring, m) {
                    for x in row.iter_mut() {
                        *x = BigRational::from_integer(x.to_integer().mod_floor(&n));
                    }
                }
            }
            (b, blk)
        })
        .collect()
}

impl InducedMap {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn bidegree(&self) -> (i32, i32) {
        self.bidegree
    }

    /// Blocks keyed by source bigrading.
    pub fn blocks(&self) -> &BTreeMap<Bigrading, InducedBlock> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.entries.iter().flatten().all(|x| x.is_zero()))
    }

    fn matches_scalar(&self, s: i64) -> bool {
        let s = BigRational::from_integer(s.into());
        self.bidegree == (0, 0)
            && self.blocks.values().all(|b| {
                b.source == b.target
                    && b.entries.len() == b.col_moduli.len()
                    && b.entries.iter().enumerate().all(|(r, row)| {
                        row.iter().enumerate().all(|(c, x)| {
                            let want = if r == c { s.clone() } else { BigRational::zero() };
                            congruent(self.ring, x, &want, &b.row_moduli[r])
                        })
                    })
            })
    }

    /// Compares an endomorphism of one homology (same bases on both sides)
    /// with ±identity. Over 𝔽₂ the two coincide and `Identity` is reported.
    pub fn classify(&self) -> IdentityClass {
        if self.matches_scalar(1) {
            IdentityClass::Identity
        } else if self.matches_scalar(-1) {
            IdentityClass::NegativeIdentity
        } else {
            IdentityClass::Other
        }
    }

    /// `self ∘ other` as matrices on homology.
    pub fn compose_after(&self, other: &InducedMap) -> Result<InducedMap, AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        let mut blocks = BTreeMap::new();
        for (b, f) in &other.blocks {
            let mid = f.target;
            let ncols = f.col_moduli.len();
            let g = self.blocks.get(&mid);
            let (rows, row_moduli, target) = match g {
                Some(g) => (g.entries.len(), g.row_moduli.clone(), g.target),
                None => (0, vec![], Bigrading::new(mid.i + self.bidegree.0, mid.j + self.bidegree.1)),
            };
            let mut entries = vec![vec![BigRational::zero(); ncols]; rows];
            if let Some(g) = g {
                if g.col_moduli.len() != f.entries.len() {
                    return Err(AlgebraError::ShapeMismatch(format!("block at {mid:?} has incompatible size")));
                }
                for (r, row) in entries.iter_mut().enumerate() {
                    for (c, x) in row.iter_mut().enumerate() {
                        for k in 0..f.entries.len() {
                            *x += &g.entries[r][k] * &f.entries[k][c];
                        }
                    }
                }
            }
            blocks.insert(*b, InducedBlock { source: *b, target, row_moduli, col_moduli: f.col_moduli.clone(), entries });
        }
        Ok(InducedMap {
            ring: self.ring,
            bidegree: (self.bidegree.0 + other.bidegree.0, self.bidegree.1 + other.bidegree.1),
            blocks: normalize_blocks(self.ring, blocks),
        })
    }

    /// Entrywise equality, modulo torsion orders (and p over 𝔽_p).
    pub fn congruent_to(&self, other: &InducedMap) -> bool {
        // a block with no target generators and an all-zero block are the
        // same map; which one appears depends on how the map was assembled
        let zero = |x: &InducedBlock| {
            x.entries.iter().enumerate().all(|(r, row)| {
                row.iter().all(|a| congruent(self.ring, a, &BigRational::zero(), &x.row_moduli[r]))
            })
        };
        let keys: std::collections::BTreeSet<&Bigrading> = self.blocks.keys().chain(other.blocks.keys()).collect();
        self.ring == other.ring
            && self.bidegree == other.bidegree
            && keys.into_iter().all(|b| match (self.blocks.get(b), other.blocks.get(b)) {
                (Some(x), Some(y)) if x.entries.len() == y.entries.len() => {
                    x.entries.iter().zip(&y.entries).enumerate().all(|(r, (rx, ry))| {
                        rx.len() == ry.len()
                            && rx.iter().zip(ry).all(|(a, b)| congruent(self.ring, a, b, &x.row_moduli[r]))
                    })
                }
                (Some(x), Some(y)) => (x.entries.is_empty() || y.entries.is_empty()) && zero(x) && zero(y),
                (Some(x), None) | (None, Some(x)) => zero(x),
                (None, None) => true,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::build_complex;
    use crate::link::LinkDiagram;

    fn trefoil() -> LinkDiagram {
        LinkDiagram::new(None, vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![]).unwrap()
    }

    fn table(d: &LinkDiagram, ring: RingSpec) -> HomologyTable {
        homology(build_complex(d, ring).unwrap().complex())
    }

    #[test]
    fn unknot_over_every_ring() {
        for ring in [RingSpec::Integers, RingSpec::Rationals, RingSpec::PrimeField(2), RingSpec::PrimeField(5)] {
            let t = table(&LinkDiagram::unknot(), ring);
            assert_eq!(t.entries().len(), 2);
            assert_eq!(t.rank(0, -1), 1);
            assert_eq!(t.rank(0, 1), 1);
        }
    }

    #[test]
    fn trefoil_over_integers() {
        let t = table(&trefoil(), RingSpec::Integers);
        let want = [(0, 1, 1, vec![]), (0, 3, 1, vec![]), (2, 5, 1, vec![]), (3, 7, 0, vec![2]), (3, 9, 1, vec![])];
        let got: Vec<_> = t.entries().into_iter().map(|e| (e.i, e.j, e.rank, e.torsion)).collect();
        assert_eq!(got, want.to_vec());
        assert_eq!(t.poincare_polynomial(), "t^0q^1 + t^0q^3 + t^2q^5 + t^3q^9 + t^3q^7 Z/2");
    }

    #[test]
    fn trefoil_over_f2_doubles_torsion() {
        let t = table(&trefoil(), RingSpec::PrimeField(2));
        assert_eq!(t.total_rank(), 6);
        assert_eq!(t.rank(2, 7), 1);
        assert_eq!(t.rank(3, 7), 1);
    }

    #[test]
    fn identity_and_zero_induce_identity_and_zero() {
        for ring in [RingSpec::Integers, RingSpec::Rationals, RingSpec::PrimeField(2)] {
            let k = build_complex(&trefoil(), ring).unwrap();
            let c = k.complex().clone();
            let id = induced_map(&ChainMap::identity(c.clone())).unwrap();
            assert_eq!(id.classify(), IdentityClass::Identity);
            let neg = induced_map(&ChainMap::identity(c.clone()).neg()).unwrap();
            let expect = if ring == RingSpec::PrimeField(2) { IdentityClass::Identity } else { IdentityClass::NegativeIdentity };
            assert_eq!(neg.classify(), expect);
            let z = induced_map(&ChainMap::zero(c.clone(), c, (0, 0))).unwrap();
            assert!(z.is_zero());
            assert_eq!(z.classify(), IdentityClass::Other);
        }
    }

    #[test]
    fn euler_characteristic_of_table() {
        let t = table(&trefoil(), RingSpec::Rationals);
        assert_eq!(t.euler_characteristic().to_string(), "q^1 + q^3 + q^5 - q^9");
    }
}

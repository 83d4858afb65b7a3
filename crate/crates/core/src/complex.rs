//! Bigraded chain complexes with sparse exact differentials, and chain maps.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::ring::RingSpec;
use crate::sparse::SparseMatrix;

/// Generator of a Khovanov-type complex: a cube vertex and a labelling of
/// that vertex's circles. Bit `k` of `labels` is set when circle `k` carries
/// v₋ and clear when it carries v₊.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub vertex: u64,
    pub labels: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bigrading {
    pub i: i32,
    pub j: i32,
}

impl Bigrading {
    pub fn new(i: i32, j: i32) -> Self {
        Bigrading { i, j }
    }
}

/// A free bigraded complex. Generators are globally indexed; the
/// differential is a square sparse matrix of bidegree (1, 0).
#[derive(Clone, Debug)]
pub struct BigradedComplex {
    ring: RingSpec,
    gens: Vec<Generator>,
    gradings: Vec<Bigrading>,
    d: SparseMatrix,
    index: HashMap<Generator, usize>,
}

impl PartialEq for BigradedComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens && self.gradings == other.gradings && self.d == other.d
    }
}

impl BigradedComplex {
    pub fn new(ring: RingSpec, gens: Vec<Generator>, gradings: Vec<Bigrading>, d: SparseMatrix) -> Self {
        assert_eq!(gens.len(), gradings.len());
        assert_eq!((d.rows(), d.cols()), (gens.len(), gens.len()));
        let d = match ring {
            RingSpec::PrimeField(p) => d.reduce_mod(p),
            _ => d,
        };
        let index = gens.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        BigradedComplex { ring, gens, gradings, d, index }
    }

    pub fn zero(ring: RingSpec) -> Self {
        BigradedComplex::new(ring, vec![], vec![], SparseMatrix::zero(0, 0))
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, k: usize) -> Generator {
        self.gens[k]
    }

    pub fn gradings(&self) -> &[Bigrading] {
        &self.gradings
    }

    pub fn grading(&self, k: usize) -> Bigrading {
        self.gradings[k]
    }

    pub fn differential(&self) -> &SparseMatrix {
        &self.d
    }

    pub fn index_of(&self, g: &Generator) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Bigradings carrying at least one generator, sorted.
    pub fn bigradings(&self) -> Vec<Bigrading> {
        self.gradings.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Indices of the generators in bigrading (i, j), in index order.
    pub fn generators_in(&self, b: Bigrading) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.gradings[k] == b).collect()
    }

    /// Rank of each chain group.
    pub fn ranks(&self) -> BTreeMap<Bigrading, usize> {
        let mut m = BTreeMap::new();
        for &b in &self.gradings {
            *m.entry(b).or_insert(0) += 1;
        }
        m
    }

    /// Same generators with a replaced differential (used for fault
    /// injection and by reductions).
    pub fn with_differential(&self, d: SparseMatrix) -> BigradedComplex {
        BigradedComplex::new(self.ring, self.gens.clone(), self.gradings.clone(), d)
    }

    /// Same complex read over another ring.
    pub fn over(&self, ring: RingSpec) -> BigradedComplex {
        BigradedComplex::new(ring, self.gens.clone(), self.gradings.clone(), self.d.clone())
    }
}

/// Outcome of [`verify_complex`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    pub d_squared_zero: bool,
    pub bidegree_ok: bool,
    /// Smallest bigrading (of the source generator) where a check fails.
    pub first_failure: Option<Bigrading>,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.bidegree_ok
    }
}

fn reduce(ring: RingSpec, m: SparseMatrix) -> SparseMatrix {
    match ring {
        RingSpec::PrimeField(p) => m.reduce_mod(p),
        _ => m,
    }
}

pub fn verify_complex(c: &BigradedComplex) -> ComplexReport {
    let mut failures = BTreeSet::new();
    let mut bidegree_ok = true;
    for (r, col, _) in c.d.triplets() {
        let (s, t) = (c.gradings[col], c.gradings[r]);
        if t.i != s.i + 1 || t.j != s.j {
            bidegree_ok = false;
            failures.insert(s);
        }
    }
    let dd = reduce(c.ring, c.d.mul(&c.d));
    let d_squared_zero = dd.is_zero();
    for (_, col, _) in dd.triplets() {
        failures.insert(c.gradings[col]);
    }
    ComplexReport { d_squared_zero, bidegree_ok, first_failure: failures.into_iter().next() }
}

/// A bigraded map between two complexes, stored as a sparse integer matrix
/// (rows: target generators, columns: source generators).
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Arc<BigradedComplex>,
    target: Arc<BigradedComplex>,
    bidegree: (i32, i32),
    matrix: SparseMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapComparison {
    Equal,
    Negatives,
    Distinct,
}

fn same_complex(a: &Arc<BigradedComplex>, b: &Arc<BigradedComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ChainMap {
    /// Wraps a matrix, checking its shape and that every nonzero entry has
    /// the declared bidegree. The chain-map equation is checked separately
    /// by [`ChainMap::verify`].
    pub fn new(
        source: Arc<BigradedComplex>,
        target: Arc<BigradedComplex>,
        bidegree: (i32, i32),
        matrix: SparseMatrix,
    ) -> Result<Self, AlgebraError> {
        if source.ring() != target.ring() {
            return Err(AlgebraError::RingMismatch(source.ring().to_string(), target.ring().to_string()));
        }
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "matrix {}x{} for complexes of sizes {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.len(),
                target.len()
            )));
        }
        let matrix = reduce(source.ring(), matrix);
        for (r, c, _) in matrix.triplets() {
            let (s, t) = (source.grading(c), target.grading(r));
            if (t.i - s.i, t.j - s.j) != bidegree {
                return Err(AlgebraError::BidegreeMismatch(bidegree.0, bidegree.1, t.i - s.i, t.j - s.j));
            }
        }
        Ok(ChainMap { source, target, bidegree, matrix })
    }

    pub fn identity(c: Arc<BigradedComplex>) -> Self {
        let n = c.len();
        ChainMap { source: c.clone(), target: c, bidegree: (0, 0), matrix: SparseMatrix::identity(n) }
    }

    pub fn zero(source: Arc<BigradedComplex>, target: Arc<BigradedComplex>, bidegree: (i32, i32)) -> Self {
        let matrix = SparseMatrix::zero(target.len(), source.len());
        ChainMap { source, target, bidegree, matrix }
    }

    pub fn source(&self) -> &Arc<BigradedComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BigradedComplex> {
        &self.target
    }

    pub fn bidegree(&self) -> (i32, i32) {
        self.bidegree
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> RingSpec {
        self.source.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Checks d∘f = f∘d over the complexes' ring.
    pub fn verify(&self) -> Result<(), AlgebraError> {
        let lhs = self.target.differential().mul(&self.matrix);
        let rhs = self.matrix.mul(self.source.differential());
        let diff = reduce(self.ring(), lhs.sub(&rhs));
        match diff.triplets().map(|(_, c, _)| self.source.grading(c)).min() {
            None => Ok(()),
            Some(b) => Err(AlgebraError::NotChainMap { i: b.i, j: b.j }),
        }
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap { matrix: reduce(self.ring(), self.matrix.scale(-1)), ..self.clone() }
    }

    pub fn scale(&self, s: i64) -> ChainMap {
        ChainMap { matrix: reduce(self.ring(), self.matrix.scale(s)), ..self.clone() }
    }

    /// Sum of two maps with the same source, target and bidegree.
    pub fn add(&self, other: &ChainMap) -> Result<ChainMap, AlgebraError> {
        self.check_parallel(other)?;
        Ok(ChainMap { matrix: reduce(self.ring(), self.matrix.add(&other.matrix)), ..self.clone() })
    }

    fn check_parallel(&self, other: &ChainMap) -> Result<(), AlgebraError> {
        if self.ring() != other.ring() {
            return Err(AlgebraError::RingMismatch(self.ring().to_string(), other.ring().to_string()));
        }
        if !same_complex(&self.source, &other.source) || !same_complex(&self.target, &other.target) {
            return Err(AlgebraError::ShapeMismatch("maps have different source or target".into()));
        }
        if self.bidegree != other.bidegree {
            return Err(AlgebraError::ShapeMismatch(format!(
                "bidegrees {:?} and {:?} differ",
                self.bidegree, other.bidegree
            )));
        }
        Ok(())
    }

    /// Reads the same map over another ring.
    pub fn over(&self, ring: RingSpec, source: Arc<BigradedComplex>, target: Arc<BigradedComplex>) -> ChainMap {
        assert_eq!(source.ring(), ring);
        ChainMap { source, target, bidegree: self.bidegree, matrix: reduce(ring, self.matrix.clone()) }
    }
}

/// `g ∘ f`.
pub fn compose(g: &ChainMap, f: &ChainMap) -> Result<ChainMap, AlgebraError> {
    if g.ring() != f.ring() {
        return Err(AlgebraError::RingMismatch(g.ring().to_string(), f.ring().to_string()));
    }
    if !same_complex(&f.target, &g.source) {
        return Err(AlgebraError::ComplexMismatch("target of the first map is not the source of the second".into()));
    }
    Ok(ChainMap {
        source: f.source.clone(),
        target: g.target.clone(),
        bidegree: (f.bidegree.0 + g.bidegree.0, f.bidegree.1 + g.bidegree.1),
        matrix: reduce(f.ring(), g.matrix.mul(&f.matrix)),
    })
}

/// Sign-aware equality of two parallel maps.
pub fn scalar_compare(f: &ChainMap, g: &ChainMap) -> Result<MapComparison, AlgebraError> {
    f.check_parallel(g)?;
    if f.matrix == g.matrix {
        return Ok(MapComparison::Equal);
    }
    if f.matrix == g.neg().matrix {
        return Ok(MapComparison::Negatives);
    }
    Ok(MapComparison::Distinct)
}

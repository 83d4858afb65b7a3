use super::diagram::{ArcLabel, LinkDiagram, Slot};

/// Slot pairs joined by the 0- and 1-smoothing of a crossing.
pub const SMOOTHING_PAIRS: [[(usize, usize); 2]; 2] = [[(0, 1), (2, 3)], [(0, 3), (1, 2)]];

/// A complete resolution of a diagram: one vertex of the cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smoothing {
    pub vertex: Vec<u8>,
    /// Each circle as a cyclic sequence of arcs, starting at its smallest
    /// label; circles sorted by that label.
    pub circles: Vec<Vec<ArcLabel>>,
}

impl Smoothing {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("vertex has {got} coordinates, diagram has {expected} crossings")]
pub struct VertexLengthError {
    pub got: usize,
    pub expected: usize,
}

pub fn resolve(d: &LinkDiagram, vertex: &[u8]) -> Result<Smoothing, VertexLengthError> {
    if vertex.len() != d.crossing_count() {
        return Err(VertexLengthError { got: vertex.len(), expected: d.crossing_count() });
    }
    let mask = vertex.iter().enumerate().fold(0u64, |m, (k, &b)| m | ((b as u64 & 1) << k));
    let arcs = d.arcs();
    let mut done = std::collections::BTreeSet::new();
    let mut circles = Vec::new();
    for &start in &arcs {
        if done.contains(&start) {
            continue;
        }
        let mut circle = vec![start];
        done.insert(start);
        if let Some(h) = d.head(start) {
            // walk: enter a crossing, hop to the smoothing partner, leave along that arc
            let mut at = h;
            loop {
                let bit = ((mask >> at.crossing) & 1) as usize;
                let partner = partner_slot(at.pos, bit);
                let out = Slot::new(at.crossing, partner);
                let a = d.arc_at(out);
                if a == start {
                    break;
                }
                circle.push(a);
                done.insert(a);
                let (t, hd) = d.ends(a).unwrap();
                at = if t == out { hd } else { t };
            }
        }
        circles.push(circle);
    }
    Ok(Smoothing { vertex: vertex.to_vec(), circles })
}

pub(crate) fn partner_slot(pos: usize, bit: usize) -> usize {
    for &(x, y) in &SMOOTHING_PAIRS[bit] {
        if x == pos {
            return y;
        }
        if y == pos {
            return x;
        }
    }
    unreachable!()
}

/// Dense circle assignment used by the cube builder: arc index → circle id,
/// with circles numbered by their smallest arc label.
#[derive(Clone, Debug)]
pub struct CircleMap {
    pub circle_of_arc: Vec<u8>,
    pub count: usize,
}

/// Arc labels of a diagram with a dense index.
#[derive(Clone, Debug)]
pub struct ArcIndex {
    labels: Vec<ArcLabel>,
}

impl ArcIndex {
    pub fn new(d: &LinkDiagram) -> Self {
        ArcIndex { labels: d.arcs() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index(&self, a: ArcLabel) -> Option<usize> {
        self.labels.binary_search(&a).ok()
    }

    pub fn label(&self, i: usize) -> ArcLabel {
        self.labels[i]
    }
}

pub fn circle_map(d: &LinkDiagram, idx: &ArcIndex, mask: u64) -> CircleMap {
    let m = idx.len();
    let mut uf: Vec<usize> = (0..m).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let n = uf[y];
            uf[y] = r;
            y = n;
        }
        r
    }
    for (c, t) in d.pd().iter().enumerate() {
        let bit = ((mask >> c) & 1) as usize;
        for &(x, y) in &SMOOTHING_PAIRS[bit] {
            let a = find(&mut uf, idx.index(t[x]).unwrap());
            let b = find(&mut uf, idx.index(t[y]).unwrap());
            if a != b {
                uf[a] = b;
            }
        }
    }
    let mut id_of_root = vec![u8::MAX; m];
    let mut circle_of_arc = vec![0u8; m];
    let mut count = 0usize;
    for i in 0..m {
        let r = find(&mut uf, i);
        if id_of_root[r] == u8::MAX {
            id_of_root[r] = count as u8;
            count += 1;
        }
        circle_of_arc[i] = id_of_root[r];
    }
    CircleMap { circle_of_arc, count }
}

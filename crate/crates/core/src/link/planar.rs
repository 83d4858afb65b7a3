use std::collections::HashMap;

use super::diagram::{ArcLabel, LinkDiagram, Slot};
use crate::error::DiagramError;

/// Faces of a diagram, traced from the cyclic order of slots at each crossing.
///
/// A dart is a slot read as "leave the crossing through this slot". Walking
/// a dart along its arc and turning to the next slot clockwise at the far
/// crossing keeps a single face on the left; each face is one such cycle.
#[derive(Clone, Debug)]
pub struct PlanarStructure {
    faces: Vec<Vec<Slot>>,
    face_of_dart: HashMap<Slot, usize>,
    component_of_crossing: Vec<usize>,
    component_count: usize,
}

impl PlanarStructure {
    pub fn of(d: &LinkDiagram) -> Self {
        let n = d.crossing_count();
        let mut other_end: HashMap<Slot, Slot> = HashMap::new();
        let mut first: HashMap<ArcLabel, Slot> = HashMap::new();
        for c in 0..n {
            for p in 0..4 {
                let s = Slot::new(c, p);
                let a = d.arc_at(s);
                if let Some(&t) = first.get(&a) {
                    other_end.insert(s, t);
                    other_end.insert(t, s);
                } else {
                    first.insert(a, s);
                }
            }
        }

        let mut faces = Vec::new();
        let mut face_of_dart = HashMap::new();
        for c in 0..n {
            for p in 0..4 {
                let start = Slot::new(c, p);
                if face_of_dart.contains_key(&start) {
                    continue;
                }
                let id = faces.len();
                let mut face = Vec::new();
                let mut dart = start;
                loop {
                    face_of_dart.insert(dart, id);
                    face.push(dart);
                    let arrive = other_end[&dart];
                    dart = Slot::new(arrive.crossing, (arrive.pos + 3) % 4);
                    if dart == start {
                        break;
                    }
                }
                faces.push(face);
            }
        }

        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let next = uf[y];
                uf[y] = r;
                y = next;
            }
            r
        }
        for (&s, &t) in &other_end {
            let (a, b) = (find(&mut uf, s.crossing), find(&mut uf, t.crossing));
            if a != b {
                uf[a] = b;
            }
        }
        let mut ids = HashMap::new();
        let mut component_of_crossing = vec![0; n];
        for c in 0..n {
            let r = find(&mut uf, c);
            let next = ids.len();
            component_of_crossing[c] = *ids.entry(r).or_insert(next);
        }
        PlanarStructure { faces, face_of_dart, component_of_crossing, component_count: ids.len() }
    }

    pub fn faces(&self) -> &[Vec<Slot>] {
        &self.faces
    }

    pub fn face_of_dart(&self, s: Slot) -> usize {
        self.face_of_dart[&s]
    }

    /// Connected piece of the diagram containing crossing `c`.
    pub fn component_of_crossing(&self, c: usize) -> usize {
        self.component_of_crossing[c]
    }

    /// Euler characteristic test on each connected piece: V - E + F = 2 with
    /// E = 2V for 4-valent pieces.
    pub fn check_planar(&self) -> Result<(), DiagramError> {
        let mut v = vec![0usize; self.component_count];
        let mut f = vec![0usize; self.component_count];
        for &k in &self.component_of_crossing {
            v[k] += 1;
        }
        for face in &self.faces {
            f[self.component_of_crossing[face[0].crossing]] += 1;
        }
        for k in 0..self.component_count {
            if f[k] != v[k] + 2 {
                let crossing = self.component_of_crossing.iter().position(|&x| x == k).unwrap();
                let genus = (v[k] + 2).saturating_sub(f[k]) / 2;
                return Err(DiagramError::NonPlanar { crossing, genus });
            }
        }
        Ok(())
    }

    /// Face to the left of an arc, walking along its orientation.
    pub fn left_face(&self, d: &LinkDiagram, a: ArcLabel) -> Option<usize> {
        d.tail(a).map(|s| self.face_of_dart(s))
    }

    /// Face to the right of an arc.
    pub fn right_face(&self, d: &LinkDiagram, a: ArcLabel) -> Option<usize> {
        d.head(a).map(|s| self.face_of_dart(s))
    }

    /// Connected piece an arc belongs to (`None` for free loops).
    pub fn piece_of_arc(&self, d: &LinkDiagram, a: ArcLabel) -> Option<usize> {
        d.head(a).map(|s| self.component_of_crossing(s.crossing))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_has_five_faces() {
        let d = LinkDiagram::new(None, vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![])
            .unwrap();
        let p = PlanarStructure::of(&d);
        assert_eq!(p.faces().len(), 5);
        let mut sizes: Vec<usize> = p.faces().iter().map(|f| f.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn nonplanar_code_rejected() {
        // arc 4 leaves and re-enters crossing 1 through opposite slots, which
        // only a torus drawing realises
        let e = LinkDiagram::new(None, vec![[1, 1, 2, 3], [2, 4, 3, 4]], vec![]);
        assert!(matches!(e, Err(DiagramError::NonPlanar { genus: 1, .. })), "{e:?}");
    }
}

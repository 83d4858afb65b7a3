use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

/// Label of an arc in a planar diagram. Labels are positive integers.
pub type ArcLabel = u32;

/// A position on a crossing: `pos` indexes the PD tuple, counterclockwise
/// starting from the incoming under-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub pos: usize,
}

impl Slot {
    pub fn new(crossing: usize, pos: usize) -> Self {
        Slot { crossing, pos }
    }

    /// The slot on the other side of the crossing along the same strand.
    pub fn through(self) -> Slot {
        Slot { crossing: self.crossing, pos: (self.pos + 2) % 4 }
    }
}

/// An oriented link diagram in PD notation.
///
/// Each crossing is a 4-tuple of arc labels listed counterclockwise from the
/// incoming under-strand. Components without crossings are kept as free
/// loops, each carrying its own arc label. Free loops and split pieces have
/// no fixed placement in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    name: Option<String>,
    pd: Vec<[ArcLabel; 4]>,
    loops: Vec<ArcLabel>,
    signs: Vec<i8>,
    head: BTreeMap<ArcLabel, Slot>,
    tail: BTreeMap<ArcLabel, Slot>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    pd: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    loops: Vec<i64>,
    /// Crossing signs; only needed when some component passes over every
    /// crossing it meets, so that the PD code alone leaves its direction open.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    signs: Option<Vec<i8>>,
}

impl LinkDiagram {
    pub fn new(
        name: Option<String>,
        pd: Vec<[ArcLabel; 4]>,
        loops: Vec<ArcLabel>,
    ) -> Result<Self, DiagramError> {
        Self::with_sign_hints(name, pd, loops, &[])
    }

    /// Like [`LinkDiagram::new`], but crossings whose sign the PD code does
    /// not determine take it from `hints` (indexed by crossing, +1/−1/0).
    pub fn with_sign_hints(
        name: Option<String>,
        pd: Vec<[ArcLabel; 4]>,
        loops: Vec<ArcLabel>,
        hints: &[i8],
    ) -> Result<Self, DiagramError> {
        let mut occurrences: BTreeMap<ArcLabel, Vec<Slot>> = BTreeMap::new();
        for (c, tuple) in pd.iter().enumerate() {
            for (p, &a) in tuple.iter().enumerate() {
                if a == 0 {
                    return Err(DiagramError::BadLabel { crossing: c, label: 0 });
                }
                let occ = occurrences.entry(a).or_default();
                if occ.len() == 2 {
                    return Err(DiagramError::OverusedArc { arc: a, crossing: c });
                }
                occ.push(Slot::new(c, p));
            }
        }
        for (&a, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(DiagramError::DanglingArc {
                    arc: a,
                    count: occ.len(),
                    crossing: occ[0].crossing,
                });
            }
        }
        let mut seen = BTreeSet::new();
        for &l in &loops {
            if l == 0 {
                return Err(DiagramError::BadLabel { crossing: 0, label: 0 });
            }
            if occurrences.contains_key(&l) || !seen.insert(l) {
                return Err(DiagramError::DuplicateLoop { arc: l });
            }
        }

        let over_in_at_d = orient(&pd, &occurrences, hints)?;
        let mut head = BTreeMap::new();
        let mut tail = BTreeMap::new();
        for (&a, occ) in &occurrences {
            for &s in occ {
                if slot_is_head(s, &over_in_at_d).unwrap() {
                    head.insert(a, s);
                } else {
                    tail.insert(a, s);
                }
            }
        }
        let signs = over_in_at_d.iter().map(|o| if o.unwrap() { 1 } else { -1 }).collect();
        let mut loops = loops;
        loops.sort_unstable();
        let d = LinkDiagram { name, pd, loops, signs, head, tail };
        super::planar::PlanarStructure::of(&d).check_planar()?;
        Ok(d)
    }

    pub fn empty() -> Self {
        LinkDiagram::new(Some("empty".into()), vec![], vec![]).unwrap()
    }

    pub fn unknot() -> Self {
        LinkDiagram::new(Some("unknot".into()), vec![], vec![1]).unwrap()
    }

    /// Crossingless unlink with `n` components.
    pub fn unlink(n: usize) -> Self {
        LinkDiagram::new(Some(format!("unlink{n}")), vec![], (1..=n as ArcLabel).collect()).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let doc: DiagramDoc =
            serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
        Self::from_value_doc(doc)
    }

    pub fn from_value(value: &serde_json::Value) -> Result<Self, DiagramError> {
        let doc: DiagramDoc = serde_json::from_value(value.clone())
            .map_err(|e| DiagramError::Json(e.to_string()))?;
        Self::from_value_doc(doc)
    }

    fn from_value_doc(doc: DiagramDoc) -> Result<Self, DiagramError> {
        let mut pd = Vec::with_capacity(doc.pd.len());
        for (c, t) in doc.pd.iter().enumerate() {
            if t.len() != 4 {
                return Err(DiagramError::BadArity { crossing: c, found: t.len() });
            }
            let mut tuple = [0; 4];
            for (k, &x) in t.iter().enumerate() {
                if x <= 0 || x > ArcLabel::MAX as i64 {
                    return Err(DiagramError::BadLabel { crossing: c, label: x });
                }
                tuple[k] = x as ArcLabel;
            }
            pd.push(tuple);
        }
        let mut loops = Vec::with_capacity(doc.loops.len());
        for &x in &doc.loops {
            if x <= 0 || x > ArcLabel::MAX as i64 {
                return Err(DiagramError::BadLabel { crossing: 0, label: x });
            }
            loops.push(x as ArcLabel);
        }
        match doc.signs {
            None => LinkDiagram::new(doc.name, pd, loops),
            Some(signs) => {
                if signs.len() != pd.len() || signs.iter().any(|s| s.abs() != 1) {
                    return Err(DiagramError::Json("signs must hold one +1/-1 per crossing".into()));
                }
                let d = LinkDiagram::with_sign_hints(doc.name, pd, loops, &signs)?;
                if let Some(c) = (0..signs.len()).find(|&c| d.signs[c] != signs[c]) {
                    return Err(DiagramError::InconsistentOrientation { crossing: c, arc: d.pd[c][0] });
                }
                Ok(d)
            }
        }
    }

    pub fn to_value(&self) -> serde_json::Value {
        let doc = DiagramDoc {
            name: self.name.clone(),
            pd: self.pd.iter().map(|t| t.iter().map(|&a| a as i64).collect()).collect(),
            loops: self.loops.iter().map(|&a| a as i64).collect(),
            signs: None,
        };
        let plain = LinkDiagram::new(None, self.pd.clone(), self.loops.clone()).map(|d| d.signs);
        let doc = if plain.as_ref() == Ok(&self.signs) { doc } else { DiagramDoc { signs: Some(self.signs.clone()), ..doc } };
        serde_json::to_value(doc).unwrap()
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn pd(&self) -> &[[ArcLabel; 4]] {
        &self.pd
    }

    pub fn loops(&self) -> &[ArcLabel] {
        &self.loops
    }

    pub fn crossing_count(&self) -> usize {
        self.pd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pd.is_empty() && self.loops.is_empty()
    }

    /// Crossing signs, +1 for positive (right-handed) crossings.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|&&s| s > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    /// All arc labels in increasing order, free loops included.
    pub fn arcs(&self) -> Vec<ArcLabel> {
        let mut v: Vec<ArcLabel> = self.head.keys().copied().chain(self.loops.iter().copied()).collect();
        v.sort_unstable();
        v
    }

    pub fn max_label(&self) -> ArcLabel {
        self.arcs().last().copied().unwrap_or(0)
    }

    pub fn contains_arc(&self, a: ArcLabel) -> bool {
        self.head.contains_key(&a) || self.loops.contains(&a)
    }

    pub fn is_loop(&self, a: ArcLabel) -> bool {
        self.loops.contains(&a)
    }

    /// Slot where the arc ends (enters a crossing). `None` for free loops.
    pub fn head(&self, a: ArcLabel) -> Option<Slot> {
        self.head.get(&a).copied()
    }

    /// Slot where the arc starts (leaves a crossing). `None` for free loops.
    pub fn tail(&self, a: ArcLabel) -> Option<Slot> {
        self.tail.get(&a).copied()
    }

    pub fn arc_at(&self, s: Slot) -> ArcLabel {
        self.pd[s.crossing][s.pos]
    }

    /// The two slots of an arc, tail first.
    pub fn ends(&self, a: ArcLabel) -> Option<(Slot, Slot)> {
        Some((self.tail(a)?, self.head(a)?))
    }

    /// True when the over-strand at crossing `c` passes through slots 1 and 3
    /// (always the case); returns whether slot `pos` is on the over-strand.
    pub fn is_over_slot(pos: usize) -> bool {
        pos % 2 == 1
    }

    /// ArcLabel following `a` along its component.
    pub fn next_arc(&self, a: ArcLabel) -> ArcLabel {
        match self.head(a) {
            Some(h) => self.arc_at(h.through()),
            None => a,
        }
    }

    /// Link components, each listed as arcs in traversal order starting
    /// from its smallest label.
    pub fn components(&self) -> Vec<Vec<ArcLabel>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for a in self.arcs() {
            if seen.contains(&a) {
                continue;
            }
            let mut comp = vec![a];
            seen.insert(a);
            let mut x = self.next_arc(a);
            while x != a {
                seen.insert(x);
                comp.push(x);
                x = self.next_arc(x);
            }
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// True when every component alternates over and under at successive
    /// crossings.
    pub fn is_alternating(&self) -> bool {
        for comp in self.components() {
            let levels: Vec<bool> = comp
                .iter()
                .filter_map(|&a| self.head(a))
                .map(|h| Self::is_over_slot(h.pos))
                .collect();
            if levels.len() > 1 {
                for k in 0..levels.len() {
                    if levels[k] == levels[(k + 1) % levels.len()] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkDiagram {
        let pd = self
            .pd
            .iter()
            .zip(&self.signs)
            .map(|(t, &s)| {
                if s > 0 {
                    [t[3], t[0], t[1], t[2]]
                } else {
                    [t[1], t[2], t[3], t[0]]
                }
            })
            .collect();
        let name = self.name.as_ref().map(|n| format!("mirror({n})"));
        let hints: Vec<i8> = self.signs.iter().map(|s| -s).collect();
        LinkDiagram::with_sign_hints(name, pd, self.loops.clone(), &hints).expect("mirror of a valid diagram")
    }

    /// Same diagram with every label passed through `f` (must be injective).
    pub fn relabeled(&self, f: impl Fn(ArcLabel) -> ArcLabel) -> Result<LinkDiagram, DiagramError> {
        let pd = self.pd.iter().map(|t| [f(t[0]), f(t[1]), f(t[2]), f(t[3])]).collect();
        let loops = self.loops.iter().map(|&a| f(a)).collect();
        LinkDiagram::with_sign_hints(self.name.clone(), pd, loops, &self.signs)
    }

    /// Structural equality ignoring the name.
    pub fn same_diagram(&self, other: &LinkDiagram) -> bool {
        self.pd == other.pd && self.loops == other.loops
    }

    /// Disjoint union; labels of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let shift = self.max_label();
        let mut pd = self.pd.clone();
        pd.extend(other.pd.iter().map(|t| [t[0] + shift, t[1] + shift, t[2] + shift, t[3] + shift]));
        let mut loops = self.loops.clone();
        loops.extend(other.loops.iter().map(|a| a + shift));
        let mut signs = self.signs.clone();
        signs.extend(&other.signs);
        LinkDiagram::with_sign_hints(None, pd, loops, &signs).expect("union of valid diagrams")
    }

}

/// Head/tail status of an occurrence, given the over-strand direction at
/// each crossing (`Some(true)`: the over-strand enters through slot 3).
fn slot_is_head(s: Slot, over_in_at_d: &[Option<bool>]) -> Option<bool> {
    match s.pos {
        0 => Some(true),
        2 => Some(false),
        1 => over_in_at_d[s.crossing].map(|d| !d),
        _ => over_in_at_d[s.crossing],
    }
}

fn orient(
    pd: &[[ArcLabel; 4]],
    occurrences: &BTreeMap<ArcLabel, Vec<Slot>>,
    hints: &[i8],
) -> Result<Vec<Option<bool>>, DiagramError> {
    let mut vars: Vec<Option<bool>> = vec![None; pd.len()];
    loop {
        let mut progress = true;
        while progress {
            progress = false;
            for (&a, occ) in occurrences {
                let (s1, s2) = (occ[0], occ[1]);
                match (slot_is_head(s1, &vars), slot_is_head(s2, &vars)) {
                    (Some(h1), Some(h2)) => {
                        if h1 == h2 {
                            return Err(DiagramError::InconsistentOrientation {
                                crossing: s2.crossing,
                                arc: a,
                            });
                        }
                    }
                    (Some(h), None) => {
                        vars[s2.crossing] = Some(if s2.pos == 3 { !h } else { h });
                        progress = true;
                    }
                    (None, Some(h)) => {
                        vars[s1.crossing] = Some(if s1.pos == 3 { !h } else { h });
                        progress = true;
                    }
                    (None, None) => {}
                }
            }
        }
        // Components running only over other strands: use the hint, else
        // follow the usual tabulation habit that consecutive labels increase
        // along the strand.
        match vars.iter().position(|v| v.is_none()) {
            None => return Ok(vars),
            Some(c) => match hints.get(c) {
                Some(&h) if h != 0 => vars[c] = Some(h > 0),
                _ => {
                    let (b, d) = (pd[c][1] as i64, pd[c][3] as i64);
                    vars[c] = Some(b == d + 1 || d > b + 1);
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn trefoil() -> LinkDiagram {
        LinkDiagram::new(None, vec![[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], vec![]).unwrap()
    }

    #[test]
    fn sign_hints_orient_overpass_components() {
        // a loop lying over a strand: the PD code leaves the loop's direction open
        let pd = vec![[1, 4, 2, 3], [2, 4, 1, 3]];
        let a = LinkDiagram::with_sign_hints(None, pd.clone(), vec![], &[1, -1]).unwrap();
        let b = LinkDiagram::with_sign_hints(None, pd, vec![], &[-1, 1]).unwrap();
        assert_eq!(a.signs(), &[1, -1]);
        assert_eq!(b.signs(), &[-1, 1]);
        let back = LinkDiagram::from_json(&b.to_json()).unwrap();
        assert_eq!(back.signs(), b.signs());
        assert_eq!(LinkDiagram::from_json(&a.to_json()).unwrap().signs(), a.signs());
    }

    #[test]
    fn unknot_has_no_crossings() {
        let d = LinkDiagram::from_json(r#"{"name":"unknot","pd":[],"loops":[1]}"#).unwrap();
        assert_eq!((d.n_plus(), d.n_minus()), (0, 0));
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn right_trefoil_signs() {
        let d = trefoil();
        assert_eq!(d.n_plus(), 3);
        assert_eq!(d.n_minus(), 0);
        assert_eq!(d.writhe(), 3);
        assert!(d.is_alternating());
    }

    #[test]
    fn dangling_arc_rejected() {
        let e = LinkDiagram::from_json(r#"{"pd":[[1,5,2,4],[3,1,4,6],[5,3,7,2]]}"#).unwrap_err();
        assert!(e.to_string().starts_with("dangling arc"), "{e}");
    }

    #[test]
    fn bad_arity_rejected() {
        let e = LinkDiagram::from_json(r#"{"pd":[[1,1,2]]}"#).unwrap_err();
        assert_eq!(e, DiagramError::BadArity { crossing: 0, found: 3 });
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(matches!(
            LinkDiagram::from_json(r#"{"pd":[],"colour":1}"#),
            Err(DiagramError::Json(_))
        ));
    }

    #[test]
    fn inconsistent_orientation_rejected() {
        // both under-strand slots of crossing 0 claim arc 1 as incoming
        let e = LinkDiagram::new(None, vec![[1, 2, 3, 2], [1, 4, 3, 4]], vec![]).unwrap_err();
        assert!(matches!(e, DiagramError::InconsistentOrientation { .. }), "{e}");
    }

    #[test]
    fn mirror_swaps_signs_and_is_involution() {
        let d = trefoil();
        let m = d.mirror();
        assert_eq!((m.n_plus(), m.n_minus()), (0, 3));
        assert!(m.mirror().same_diagram(&d));
        let u = LinkDiagram::unknot();
        assert!(u.mirror().same_diagram(&u));
    }

    #[test]
    fn writhe_invariant_under_relabeling() {
        let d = trefoil();
        let r = d.relabeled(|a| 100 - a).unwrap();
        assert_eq!(r.writhe(), d.writhe());
    }

    #[test]
    fn components_of_hopf_link() {
        let hopf = LinkDiagram::new(None, vec![[4, 1, 3, 2], [2, 3, 1, 4]], vec![]).unwrap();
        assert_eq!(hopf.component_count(), 2);
        assert_eq!(hopf.n_plus() + hopf.n_minus(), 2);
    }
}

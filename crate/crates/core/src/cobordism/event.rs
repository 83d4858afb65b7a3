//! Elementary movie events and their effect on diagrams.
//!
//! Every event keeps the labels of untouched arcs and the order of
//! untouched crossings, so that sites in later events can refer to them.
//! New labels default to the smallest unused ones above the current maximum;
//! new crossings are appended unless `at` says otherwise.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;
use crate::link::{ArcLabel, LinkDiagram, PlanarStructure, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// One step of a movie. Serialized as `{"kind": ..., "site": {...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "site", deny_unknown_fields)]
pub enum MovieEvent {
    /// A new free loop.
    #[serde(rename = "birth")]
    Birth {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<ArcLabel>,
    },
    /// Capping off a free loop.
    #[serde(rename = "death")]
    Death { arc: ArcLabel },
    /// An oriented band between two arcs (or an arc and itself). Splitting
    /// off a free loop names it `label`.
    #[serde(rename = "saddle")]
    Saddle {
        arcs: [ArcLabel; 2],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<ArcLabel>,
    },
    #[serde(rename = "dot")]
    Dot { arc: ArcLabel },
    /// A kink on `arc`. The arc keeps its label up to the kink; `labels`
    /// names the kink arc and, unless `arc` is a free loop, the continuation.
    #[serde(rename = "R1_add")]
    R1Add {
        arc: ArcLabel,
        sign: i8,
        over_first: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<ArcLabel>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        at: Option<usize>,
    },
    #[serde(rename = "R1_remove")]
    R1Remove {
        crossing: usize,
        /// Needed only when both arcs at the crossing are kinks.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        kink: Option<ArcLabel>,
    },
    /// Pushes a finger of `over` across `under`, coming from the face on
    /// `side` of `under`. `labels` = [middle of over, end of over, middle of
    /// under, end of under], where the end labels are omitted for free loops.
    #[serde(rename = "R2_add")]
    R2Add {
        over: ArcLabel,
        under: ArcLabel,
        side: Side,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        parallel: Option<bool>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<ArcLabel>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        at: Option<[usize; 2]>,
    },
    /// Removes the bigon bounded by the two arcs (over strand first).
    #[serde(rename = "R2_remove")]
    R2Remove { arcs: [ArcLabel; 2] },
    /// Slides a strand across the crossing of the other two around a
    /// triangular face.
    #[serde(rename = "R3")]
    R3 { crossings: [usize; 3] },
}

impl MovieEvent {
    pub fn kind(&self) -> &'static str {
        match self {
            MovieEvent::Birth { .. } => "birth",
            MovieEvent::Death { .. } => "death",
            MovieEvent::Saddle { .. } => "saddle",
            MovieEvent::Dot { .. } => "dot",
            MovieEvent::R1Add { .. } => "R1_add",
            MovieEvent::R1Remove { .. } => "R1_remove",
            MovieEvent::R2Add { .. } => "R2_add",
            MovieEvent::R2Remove { .. } => "R2_remove",
            MovieEvent::R3 { .. } => "R3",
        }
    }

    pub fn is_reidemeister(&self) -> bool {
        matches!(
            self,
            MovieEvent::R1Add { .. }
                | MovieEvent::R1Remove { .. }
                | MovieEvent::R2Add { .. }
                | MovieEvent::R2Remove { .. }
                | MovieEvent::R3 { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SiteError {
    Invalid(String),
    Diagram(DiagramError),
}

impl From<DiagramError> for SiteError {
    fn from(e: DiagramError) -> Self {
        SiteError::Diagram(e)
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, SiteError> {
    Err(SiteError::Invalid(msg.into()))
}

/// Where a Reidemeister move happens, seen from the diagram with more
/// crossings (both sides for R3, which keeps the crossing count).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MoveFrame {
    /// The larger diagram is the one after the event.
    pub large_is_after: bool,
    /// Crossings of the larger diagram created or touched by the move.
    pub local: Vec<usize>,
    /// Arcs of the larger diagram that run between local crossings only.
    pub inner: Vec<ArcLabel>,
    /// Index in the larger diagram of each crossing of the smaller one.
    pub embed: Vec<usize>,
}

/// Result of applying an event.
#[derive(Clone, Debug)]
pub struct Applied {
    pub diagram: LinkDiagram,
    /// The event with every optional field filled in.
    pub resolved: MovieEvent,
    /// The event undoing this one, as a site in the new diagram.
    pub inverse: MovieEvent,
    pub(crate) frame: Option<MoveFrame>,
}

struct Builder {
    pd: Vec<[ArcLabel; 4]>,
    loops: Vec<ArcLabel>,
    hints: Vec<i8>,
}

impl Builder {
    fn of(d: &LinkDiagram) -> Self {
        Builder { pd: d.pd().to_vec(), loops: d.loops().to_vec(), hints: d.signs().to_vec() }
    }

    fn set(&mut self, s: Slot, a: ArcLabel) {
        self.pd[s.crossing][s.pos] = a;
    }

    fn rename(&mut self, from: ArcLabel, to: ArcLabel) {
        for t in &mut self.pd {
            for a in t.iter_mut() {
                if *a == from {
                    *a = to;
                }
            }
        }
    }

    fn remove_loop(&mut self, a: ArcLabel) {
        self.loops.retain(|&l| l != a);
    }

    /// Drops the given crossings, returning old index → new index.
    fn drop_crossings(&mut self, gone: &[usize]) -> Vec<Option<usize>> {
        let mut map = Vec::with_capacity(self.pd.len());
        let mut next = 0;
        for c in 0..self.pd.len() {
            if gone.contains(&c) {
                map.push(None);
            } else {
                map.push(Some(next));
                next += 1;
            }
        }
        self.pd = self.pd.iter().zip(&map).filter(|(_, m)| m.is_some()).map(|(t, _)| *t).collect();
        self.hints = self.hints.iter().zip(&map).filter(|(_, m)| m.is_some()).map(|(h, _)| *h).collect();
        map
    }

    /// Inserts crossings so that they end up at the given indices; returns
    /// the new index of every old crossing.
    fn insert_crossings(&mut self, new: Vec<([ArcLabel; 4], i8)>, at: &[usize]) -> Result<Vec<usize>, SiteError> {
        let total = self.pd.len() + new.len();
        let mut slots: Vec<Option<([ArcLabel; 4], i8)>> = vec![None; total];
        for (x, &i) in new.into_iter().zip(at) {
            if i >= total || slots[i].is_some() {
                return invalid(format!("crossing positions {at:?} are not distinct indices below {total}"));
            }
            slots[i] = Some(x);
        }
        let mut old = self.pd.iter().copied().zip(self.hints.iter().copied());
        let mut embed = Vec::new();
        let (mut pd, mut hints) = (Vec::with_capacity(total), Vec::with_capacity(total));
        for (i, s) in slots.into_iter().enumerate() {
            let (t, h) = match s {
                Some(x) => x,
                None => {
                    embed.push(i);
                    old.next().unwrap()
                }
            };
            pd.push(t);
            hints.push(h);
        }
        self.pd = pd;
        self.hints = hints;
        Ok(embed)
    }

    fn build(self) -> Result<LinkDiagram, SiteError> {
        Ok(LinkDiagram::with_sign_hints(None, self.pd, self.loops, &self.hints)?)
    }
}

/// The `n` labels following the largest one in use.
fn fresh_labels(d: &LinkDiagram, n: usize) -> Vec<ArcLabel> {
    (d.max_label() + 1..).take(n).collect()
}

fn require_arc(d: &LinkDiagram, a: ArcLabel) -> Result<(), SiteError> {
    if d.contains_arc(a) {
        Ok(())
    } else {
        invalid(format!("arc {a} is not in the diagram"))
    }
}

fn require_new(d: &LinkDiagram, labels: &[ArcLabel]) -> Result<(), SiteError> {
    let mut seen = BTreeSet::new();
    for &a in labels {
        if a == 0 || d.contains_arc(a) || !seen.insert(a) {
            return invalid(format!("label {a} is not a fresh arc label"));
        }
    }
    Ok(())
}

fn sign_of(t: usize) -> i8 {
    // over-strand entering through slot 3 makes a positive crossing
    if t == 3 {
        1
    } else {
        -1
    }
}

pub fn apply_event(d: &LinkDiagram, e: &MovieEvent) -> Result<Applied, SiteError> {
    match e {
        MovieEvent::Birth { label } => birth(d, *label),
        MovieEvent::Death { arc } => death(d, *arc),
        MovieEvent::Saddle { arcs, label } => saddle(d, arcs[0], arcs[1], *label),
        MovieEvent::Dot { arc } => {
            require_arc(d, *arc)?;
            Ok(Applied { diagram: d.clone(), resolved: e.clone(), inverse: e.clone(), frame: None })
        }
        MovieEvent::R1Add { arc, sign, over_first, labels, at } => {
            r1_add(d, *arc, *sign, *over_first, labels.as_deref(), *at)
        }
        MovieEvent::R1Remove { crossing, kink } => r1_remove(d, *crossing, *kink),
        MovieEvent::R2Add { over, under, side, parallel, labels, at } => {
            r2_add(d, *over, *under, *side, *parallel, labels.as_deref(), *at)
        }
        MovieEvent::R2Remove { arcs } => r2_remove(d, arcs[0], arcs[1]),
        MovieEvent::R3 { crossings } => r3(d, *crossings),
    }
}

fn birth(d: &LinkDiagram, label: Option<ArcLabel>) -> Result<Applied, SiteError> {
    let l = label.unwrap_or_else(|| fresh_labels(d, 1)[0]);
    require_new(d, &[l])?;
    let mut b = Builder::of(d);
    b.loops.push(l);
    Ok(Applied {
        diagram: b.build()?,
        resolved: MovieEvent::Birth { label: Some(l) },
        inverse: MovieEvent::Death { arc: l },
        frame: None,
    })
}

fn death(d: &LinkDiagram, arc: ArcLabel) -> Result<Applied, SiteError> {
    if !d.is_loop(arc) {
        return invalid(format!("arc {arc} is not a free loop"));
    }
    let mut b = Builder::of(d);
    b.remove_loop(arc);
    Ok(Applied {
        diagram: b.build()?,
        resolved: MovieEvent::Death { arc },
        inverse: MovieEvent::Birth { label: Some(arc) },
        frame: None,
    })
}

fn saddle(d: &LinkDiagram, x: ArcLabel, y: ArcLabel, label: Option<ArcLabel>) -> Result<Applied, SiteError> {
    require_arc(d, x)?;
    require_arc(d, y)?;
    let mut b = Builder::of(d);
    let (lx, ly) = (d.is_loop(x), d.is_loop(y));
    let (resolved, inverse) = if x == y {
        // split off a new free loop
        let l = label.unwrap_or_else(|| fresh_labels(d, 1)[0]);
        require_new(d, &[l])?;
        b.loops.push(l);
        (MovieEvent::Saddle { arcs: [x, x], label: Some(l) }, MovieEvent::Saddle { arcs: [x, l], label: None })
    } else if lx || ly {
        // merge a free loop into the other arc, which keeps its label
        if label.is_some() {
            return invalid("a merging saddle takes no label");
        }
        let (keep, gone) = if ly { (x, y) } else { (y, x) };
        b.remove_loop(gone);
        (
            MovieEvent::Saddle { arcs: [keep, gone], label: None },
            MovieEvent::Saddle { arcs: [keep, keep], label: Some(gone) },
        )
    } else {
        if label.is_some() {
            return invalid("a saddle between two crossing arcs takes no label");
        }
        let planar = PlanarStructure::of(d);
        if planar.piece_of_arc(d, x) == planar.piece_of_arc(d, y) {
            let left = planar.left_face(d, x) == planar.left_face(d, y);
            let right = planar.right_face(d, x) == planar.right_face(d, y);
            if !left && !right {
                return invalid(format!("arcs {x} and {y} do not bound a common face with coherent orientations"));
            }
        }
        // x now runs into y's head and y into x's head
        let (hx, hy) = (d.head(x).unwrap(), d.head(y).unwrap());
        b.set(hx, y);
        b.set(hy, x);
        let e = MovieEvent::Saddle { arcs: [x, y], label: None };
        (e.clone(), e)
    };
    Ok(Applied { diagram: b.build()?, resolved, inverse, frame: None })
}

fn r1_add(
    d: &LinkDiagram,
    x: ArcLabel,
    sign: i8,
    over_first: bool,
    labels: Option<&[ArcLabel]>,
    at: Option<usize>,
) -> Result<Applied, SiteError> {
    require_arc(d, x)?;
    if sign != 1 && sign != -1 {
        return invalid(format!("kink sign must be 1 or -1, not {sign}"));
    }
    let is_loop = d.is_loop(x);
    let want = if is_loop { 1 } else { 2 };
    let labels = match labels {
        Some(l) if l.len() != want => return invalid(format!("R1_add on arc {x} takes {want} new label(s)")),
        Some(l) => l.to_vec(),
        None => fresh_labels(d, want),
    };
    require_new(d, &labels)?;
    let l = labels[0];
    let x2 = if is_loop { x } else { labels[1] };
    let tuple = match (over_first, sign > 0) {
        (false, true) => [x, x2, l, l],
        (false, false) => [x, l, l, x2],
        (true, true) => [l, l, x2, x],
        (true, false) => [l, x, x2, l],
    };
    let mut b = Builder::of(d);
    if is_loop {
        b.remove_loop(x);
    } else {
        b.set(d.head(x).unwrap(), x2);
    }
    let pos = at.unwrap_or(d.crossing_count());
    let embed = b.insert_crossings(vec![(tuple, sign)], &[pos])?;
    let diagram = b.build()?;
    Ok(Applied {
        diagram,
        resolved: MovieEvent::R1Add { arc: x, sign, over_first, labels: Some(labels), at: Some(pos) },
        inverse: MovieEvent::R1Remove { crossing: pos, kink: Some(l) },
        frame: Some(MoveFrame { large_is_after: true, local: vec![pos], inner: vec![l], embed }),
    })
}

fn r1_remove(d: &LinkDiagram, c: usize, kink: Option<ArcLabel>) -> Result<Applied, SiteError> {
    if c >= d.crossing_count() {
        return invalid(format!("no crossing {c}"));
    }
    let t = d.pd()[c];
    let kinks: Vec<usize> = (0..4).filter(|&k| t[k] == t[(k + 1) % 4]).collect();
    let k = match (kinks.as_slice(), kink) {
        ([], _) => return invalid(format!("crossing {c} is not a kink")),
        (ks, Some(l)) => match ks.iter().find(|&&k| t[k] == l) {
            Some(&k) => k,
            None => return invalid(format!("arc {l} is not a kink at crossing {c}")),
        },
        ([k], None) => *k,
        (_, None) => return invalid(format!("crossing {c} has two kinks; name one with \"kink\"")),
    };
    let l = t[k];
    let (sa, sb) = (Slot::new(c, (k + 2) % 4), Slot::new(c, (k + 3) % 4));
    // x1 runs into the crossing, x2 out of it
    let (x1, x2) = if d.head(t[sa.pos]) == Some(sa) { (t[sa.pos], t[sb.pos]) } else { (t[sb.pos], t[sa.pos]) };
    let over_first = d.head(x1).map(|h| LinkDiagram::is_over_slot(h.pos)).unwrap();
    let sign = d.signs()[c];
    let mut b = Builder::of(d);
    let map = b.drop_crossings(&[c]);
    let labels = if x1 == x2 {
        b.loops.push(x1);
        vec![l]
    } else {
        b.rename(x2, x1);
        vec![l, x2]
    };
    let embed = (0..d.crossing_count()).filter(|&i| map[i].is_some()).collect();
    Ok(Applied {
        diagram: b.build()?,
        resolved: MovieEvent::R1Remove { crossing: c, kink: Some(l) },
        inverse: MovieEvent::R1Add { arc: x1, sign, over_first, labels: Some(labels), at: Some(c) },
        frame: Some(MoveFrame { large_is_after: false, local: vec![c], inner: vec![l], embed }),
    })
}

/// Slot positions of the compass points around a crossing whose under-strand
/// heads east: west is slot 0, south 1, east 2, north 3.
fn r2_tuples(
    s: Side,
    parallel: bool,
    (p1, pm, p2): (ArcLabel, ArcLabel, ArcLabel),
    (q1, qm, q2): (ArcLabel, ArcLabel, ArcLabel),
) -> [([ArcLabel; 4], i8); 2] {
    // the finger of `over` arrives from the face side
    let (hi, lo) = match s {
        Side::Left => (3, 1),
        Side::Right => (1, 3),
    };
    let mut x1 = [q1, 0, qm, 0];
    let mut x2 = [qm, 0, q2, 0];
    // over-strand entering at `hi` runs away from the face, at `lo` toward it
    let (s1, s2) = if parallel {
        x1[hi] = p1;
        x1[lo] = pm;
        x2[lo] = pm;
        x2[hi] = p2;
        (sign_of(hi), sign_of(lo))
    } else {
        x2[hi] = p1;
        x2[lo] = pm;
        x1[lo] = pm;
        x1[hi] = p2;
        (sign_of(lo), sign_of(hi))
    };
    [(x1, s1), (x2, s2)]
}

#[allow(clippy::too_many_arguments)]
fn r2_add(
    d: &LinkDiagram,
    p: ArcLabel,
    q: ArcLabel,
    side: Side,
    parallel: Option<bool>,
    labels: Option<&[ArcLabel]>,
    at: Option<[usize; 2]>,
) -> Result<Applied, SiteError> {
    require_arc(d, p)?;
    require_arc(d, q)?;
    if p == q {
        return invalid("R2_add needs two different arcs");
    }
    let (p_loop, q_loop) = (d.is_loop(p), d.is_loop(q));
    let planar = PlanarStructure::of(d);
    // which way `over` must run, when the faces decide it
    let forced = if !p_loop && !q_loop && planar.piece_of_arc(d, p) == planar.piece_of_arc(d, q) {
        let face = match side {
            Side::Left => planar.left_face(d, q),
            Side::Right => planar.right_face(d, q),
        };
        let (pl, pr) = (planar.left_face(d, p) == face, planar.right_face(d, p) == face);
        match (pl, pr) {
            (false, false) => return invalid(format!("arc {p} does not border the face on the {side:?} of arc {q}")),
            (true, true) => None,
            // parallel strands see the face on opposite sides
            (true, false) => Some(side == Side::Right),
            (false, true) => Some(side == Side::Left),
        }
    } else {
        None
    };
    let parallel = match (forced, parallel) {
        (Some(f), Some(g)) if f != g => {
            return invalid(format!("arcs {p} and {q} only admit parallel = {f} on that side"));
        }
        (Some(f), _) => f,
        (None, g) => g.unwrap_or(false),
    };
    let want = 4 - p_loop as usize - q_loop as usize;
    let labels = match labels {
        Some(l) if l.len() != want => return invalid(format!("R2_add here takes {want} new labels")),
        Some(l) => l.to_vec(),
        None => fresh_labels(d, want),
    };
    require_new(d, &labels)?;
    let mut it = labels.iter().copied();
    let pm = it.next().unwrap();
    let p2 = if p_loop { p } else { it.next().unwrap() };
    let qm = it.next().unwrap();
    let q2 = if q_loop { q } else { it.next().unwrap() };

    let mut b = Builder::of(d);
    for (a, a2, is_loop) in [(p, p2, p_loop), (q, q2, q_loop)] {
        if is_loop {
            b.remove_loop(a);
        } else {
            b.set(d.head(a).unwrap(), a2);
        }
    }
    let n = d.crossing_count();
    let pos = at.unwrap_or([n, n + 1]);
    let tuples = r2_tuples(side, parallel, (p, pm, p2), (q, qm, q2));
    let embed = b.insert_crossings(tuples.to_vec(), &pos)?;
    let diagram = b.build()?;
    let mut local = pos.to_vec();
    local.sort_unstable();
    Ok(Applied {
        diagram,
        resolved: MovieEvent::R2Add {
            over: p,
            under: q,
            side,
            parallel: Some(parallel),
            labels: Some(labels),
            at: Some(pos),
        },
        inverse: MovieEvent::R2Remove { arcs: [pm, qm] },
        frame: Some(MoveFrame { large_is_after: true, local, inner: vec![pm, qm], embed }),
    })
}

fn r2_remove(d: &LinkDiagram, pm: ArcLabel, qm: ArcLabel) -> Result<Applied, SiteError> {
    require_arc(d, pm)?;
    require_arc(d, qm)?;
    if d.is_loop(pm) || d.is_loop(qm) || pm == qm {
        return invalid(format!("arcs {pm} and {qm} do not bound a bigon"));
    }
    let ((pt, ph), (qt, qh)) = (d.ends(pm).unwrap(), d.ends(qm).unwrap());
    let (xs, xq): (BTreeSet<usize>, BTreeSet<usize>) =
        ([pt.crossing, ph.crossing].into(), [qt.crossing, qh.crossing].into());
    if xs.len() != 2 || xs != xq {
        return invalid(format!("arcs {pm} and {qm} do not join the same two crossings"));
    }
    let over = |s: Slot| LinkDiagram::is_over_slot(s.pos);
    if !(over(pt) && over(ph)) || over(qt) || over(qh) {
        return invalid(format!("arc {pm} must pass over and arc {qm} under at both crossings"));
    }
    let planar = PlanarStructure::of(d);
    let bigon = [planar.left_face(d, pm), planar.right_face(d, pm)].into_iter().flatten().any(|f| {
        let face = &planar.faces()[f];
        face.len() == 2 && face.iter().any(|&s| d.arc_at(s) == qm)
    });
    if !bigon {
        return invalid(format!("arcs {pm} and {qm} do not bound a bigon face"));
    }
    let (p1, p2) = (d.arc_at(pt.through()), d.arc_at(ph.through()));
    let (q1, q2) = (d.arc_at(qt.through()), d.arc_at(qh.through()));
    if [p1, p2].iter().any(|a| *a == q1 || *a == q2) {
        return invalid(format!("the strands through arcs {pm} and {qm} join next to the bigon"));
    }
    // read side and direction back off the first crossing of `under`
    let x1 = qt.crossing;
    let outer_over = if pt.crossing == x1 { pt.through() } else { ph.through() };
    let side = if outer_over.pos == 3 { Side::Left } else { Side::Right };
    let parallel = pt.crossing == x1;

    let mut b = Builder::of(d);
    let (lo, hi) = (x1.min(qh.crossing), x1.max(qh.crossing));
    let map = b.drop_crossings(&[lo, hi]);
    let mut labels = Vec::new();
    for (mid, a1, a2) in [(pm, p1, p2), (qm, q1, q2)] {
        labels.push(mid);
        if a1 == a2 {
            b.loops.push(a1);
        } else {
            b.rename(a2, a1);
            labels.push(a2);
        }
    }
    let embed = (0..d.crossing_count()).filter(|&i| map[i].is_some()).collect();
    Ok(Applied {
        diagram: b.build()?,
        resolved: MovieEvent::R2Remove { arcs: [pm, qm] },
        inverse: MovieEvent::R2Add {
            over: p1,
            under: q1,
            side,
            parallel: Some(parallel),
            labels: Some(labels),
            at: Some([x1, qh.crossing]),
        },
        frame: Some(MoveFrame { large_is_after: false, local: vec![lo, hi], inner: vec![pm, qm], embed }),
    })
}

/// The triangular face on three crossings: its darts, one per inner arc.
fn triangle(d: &LinkDiagram, planar: &PlanarStructure, cs: [usize; 3]) -> Option<Vec<Slot>> {
    let want: BTreeSet<usize> = cs.into();
    planar
        .faces()
        .iter()
        .find(|f| {
            f.len() == 3
                && f.iter().map(|s| s.crossing).collect::<BTreeSet<_>>() == want
                && f.iter().all(|&s| !d.is_loop(d.arc_at(s)))
        })
        .cloned()
}

fn r3(d: &LinkDiagram, cs: [usize; 3]) -> Result<Applied, SiteError> {
    let n = d.crossing_count();
    if cs.iter().any(|&c| c >= n) || cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2] {
        return invalid(format!("crossings {cs:?} are not three distinct crossings"));
    }
    let planar = PlanarStructure::of(d);
    let Some(face) = triangle(d, &planar, cs) else {
        return invalid(format!("crossings {cs:?} do not bound a triangular face"));
    };
    // each inner arc is one strand's segment between two of the crossings
    struct Strand {
        e: ArcLabel,
        ends: [Slot; 2],
    }
    let mut strands = Vec::new();
    for &dart in &face {
        let e = d.arc_at(dart);
        let (t, h) = d.ends(e).unwrap();
        if t.crossing == h.crossing {
            return invalid(format!("arc {e} returns to its own crossing"));
        }
        strands.push(Strand { e, ends: [t, h] });
    }
    // one strand over at both its crossings, one under at both
    let levels: Vec<usize> =
        strands.iter().map(|s| s.ends.iter().filter(|x| LinkDiagram::is_over_slot(x.pos)).count()).collect();
    let mut sorted = levels.clone();
    sorted.sort_unstable();
    if sorted != [0, 1, 2] {
        return invalid(format!("no strand around crossings {cs:?} passes over (or under) both others"));
    }
    let mut b = Builder::of(d);
    for s in &strands {
        for (k, &x) in s.ends.iter().enumerate() {
            let y = s.ends[1 - k];
            // the inner slot at x takes the outside arc at y, and vice versa
            b.set(x, d.arc_at(y.through()));
            b.set(x.through(), s.e);
        }
    }
    let diagram = b.build()?;
    let mut local = cs.to_vec();
    local.sort_unstable();
    Ok(Applied {
        diagram,
        resolved: MovieEvent::R3 { crossings: cs },
        inverse: MovieEvent::R3 { crossings: cs },
        frame: Some(MoveFrame {
            large_is_after: true,
            local,
            inner: strands.iter().map(|s| s.e).collect(),
            embed: (0..n).collect(),
        }),
    })
}

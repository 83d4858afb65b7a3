//! Movies: a start diagram and a sequence of elementary events.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::event::{apply_event, Applied, MovieEvent, SiteError};
use super::maps::{birth_map, death_map, dot_map, saddle_map};
use super::reidemeister::reidemeister_map;
use crate::complex::{compose, BigradedComplex, ChainMap};
use crate::cube::{build_complex, KhComplex};
use crate::error::{AlgebraError, MovieError};
use crate::homology::{Homology, InducedMap};
use crate::link::LinkDiagram;
use crate::ring::RingSpec;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MovieDoc {
    start: serde_json::Value,
    events: Vec<MovieEvent>,
}

/// A validated movie. Events are stored with every optional site field
/// filled in, so the JSON form is canonical.
#[derive(Clone, Debug)]
pub struct Movie {
    frames: Vec<LinkDiagram>,
    steps: Vec<Applied>,
}

fn site_error(index: usize, e: SiteError) -> MovieError {
    match e {
        SiteError::Invalid(message) => MovieError::InvalidSite { index, message },
        SiteError::Diagram(source) => MovieError::Diagram { index, source },
    }
}

impl Movie {
    pub fn new(start: LinkDiagram, events: &[MovieEvent]) -> Result<Self, MovieError> {
        let mut frames = vec![start];
        let mut steps = Vec::with_capacity(events.len());
        for (i, e) in events.iter().enumerate() {
            let a = apply_event(frames.last().unwrap(), e).map_err(|x| site_error(i, x))?;
            frames.push(a.diagram.clone());
            steps.push(a);
        }
        Ok(Movie { frames, steps })
    }

    pub fn from_value(v: &serde_json::Value) -> Result<Self, MovieError> {
        let doc: MovieDoc = serde_json::from_value(v.clone()).map_err(|e| MovieError::Json(e.to_string()))?;
        let start = LinkDiagram::from_value(&doc.start).map_err(|e| MovieError::Json(format!("start: {e}")))?;
        Movie::new(start, &doc.events)
    }

    pub fn from_json(text: &str) -> Result<Self, MovieError> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| MovieError::Json(e.to_string()))?;
        Movie::from_value(&v)
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::json!({ "start": self.start().to_value(), "events": self.events() })
    }

    pub fn start(&self) -> &LinkDiagram {
        &self.frames[0]
    }

    pub fn end(&self) -> &LinkDiagram {
        self.frames.last().unwrap()
    }

    /// Diagram before each event, then the end diagram.
    pub fn frames(&self) -> &[LinkDiagram] {
        &self.frames
    }

    pub fn events(&self) -> Vec<MovieEvent> {
        self.steps.iter().map(|a| a.resolved.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn count(&self, kind: &str) -> i64 {
        self.steps.iter().filter(|a| a.resolved.kind() == kind).count() as i64
    }

    pub fn births(&self) -> i64 {
        self.count("birth")
    }

    pub fn deaths(&self) -> i64 {
        self.count("death")
    }

    pub fn saddles(&self) -> i64 {
        self.count("saddle")
    }

    pub fn dots(&self) -> i64 {
        self.count("dot")
    }

    /// Euler characteristic of the surface.
    pub fn euler_characteristic(&self) -> i64 {
        self.births() - self.saddles() + self.deaths()
    }

    /// Bidegree of the induced map.
    pub fn bidegree(&self) -> (i32, i32) {
        (0, (self.euler_characteristic() - 2 * self.dots()) as i32)
    }

    /// The same surface read backwards.
    pub fn reverse(&self) -> Movie {
        let events: Vec<MovieEvent> = self.steps.iter().rev().map(|a| a.inverse.clone()).collect();
        Movie::new(self.end().clone(), &events).expect("inverse events apply to the frames they came from")
    }

    /// Concatenation; `next` must start where `self` ends.
    pub fn then(&self, next: &Movie) -> Result<Movie, MovieError> {
        if !self.end().same_diagram(next.start()) {
            return Err(MovieError::site(self.len(), "second movie does not start at the end of the first"));
        }
        let mut events = self.events();
        events.extend(next.events());
        Movie::new(self.start().clone(), &events)
    }
}

/// Chain map over ℤ of one applied event between the complexes of its frames.
pub(crate) fn event_chain_map(before: &KhComplex, after: &KhComplex, step: &Applied) -> Result<ChainMap, AlgebraError> {
    match &step.resolved {
        MovieEvent::Birth { .. } => birth_map(before, after),
        MovieEvent::Death { arc } => death_map(before, after, *arc),
        MovieEvent::Dot { arc } => dot_map(before, after, *arc),
        MovieEvent::Saddle { arcs, label } => {
            let mut touched = arcs.to_vec();
            touched.extend(label);
            saddle_map(before, after, &touched)
        }
        _ => reidemeister_map(before, after, step.frame.as_ref().expect("Reidemeister events carry a frame")),
    }
}

/// Complexes of every frame and the chain maps between them.
pub struct MovieComplexes {
    pub complexes: Vec<Arc<BigradedComplex>>,
    pub maps: Vec<ChainMap>,
}

impl MovieComplexes {
    pub fn build(m: &Movie, ring: RingSpec) -> Result<Self, MovieError> {
        let diagram_err = |i: usize| move |source| MovieError::Diagram { index: i, source };
        let mut kh = Vec::with_capacity(m.frames.len());
        for (i, d) in m.frames.iter().enumerate() {
            kh.push(build_complex(d, RingSpec::Integers).map_err(diagram_err(i.saturating_sub(1)))?);
        }
        let complexes: Vec<Arc<BigradedComplex>> = kh
            .iter()
            .map(|k| if ring == RingSpec::Integers { Arc::clone(k.complex()) } else { Arc::new(k.complex().over(ring)) })
            .collect();
        let mut maps = Vec::with_capacity(m.steps.len());
        for (i, step) in m.steps.iter().enumerate() {
            let z = event_chain_map(&kh[i], &kh[i + 1], step).map_err(|source| MovieError::Algebra { index: i, source })?;
            maps.push(if ring == RingSpec::Integers {
                z
            } else {
                z.over(ring, Arc::clone(&complexes[i]), Arc::clone(&complexes[i + 1]))
            });
        }
        Ok(MovieComplexes { complexes, maps })
    }

    /// The composite chain map, from the first frame to the last.
    pub fn composite(&self) -> Result<ChainMap, AlgebraError> {
        let mut acc = ChainMap::identity(Arc::clone(&self.complexes[0]));
        for f in &self.maps {
            acc = compose(f, &acc)?;
        }
        Ok(acc)
    }

    /// Map on homology, computed by pushing homology representatives
    /// through each event in turn.
    pub fn induced(&self) -> Result<InducedMap, AlgebraError> {
        let s = Homology::compute(&self.complexes[0]);
        let t = Homology::compute(self.complexes.last().unwrap());
        let maps: Vec<&ChainMap> = self.maps.iter().collect();
        s.induced_map_along(&t, &maps)
    }
}

/// Chain map of a movie over `ring`.
pub fn movie_map(m: &Movie, ring: RingSpec) -> Result<ChainMap, MovieError> {
    let mc = MovieComplexes::build(m, ring)?;
    mc.composite().map_err(|source| MovieError::Algebra { index: m.len(), source })
}

/// Map induced on homology by a movie over `ring`.
pub fn induced_movie_map(m: &Movie, ring: RingSpec) -> Result<InducedMap, MovieError> {
    let mc = MovieComplexes::build(m, ring)?;
    mc.induced().map_err(|source| MovieError::Algebra { index: m.len(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::induced_map;

    fn ev(json: &str) -> MovieEvent {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn reverse_inverts_and_reorders() {
        let m = Movie::new(
            LinkDiagram::unlink(3),
            &[ev(r#"{"kind":"saddle","site":{"arcs":[1,2]}}"#), ev(r#"{"kind":"R2_add","site":{"over":1,"under":3,"side":"left"}}"#)],
        )
        .unwrap();
        let kinds: Vec<&str> = m.reverse().events().iter().map(|e| e.kind()).collect();
        assert_eq!(kinds, ["R2_remove", "saddle"]);
        assert_eq!(m.reverse().reverse().events(), m.events());
    }

    #[test]
    fn counts_and_bidegree() {
        let m = Movie::new(
            LinkDiagram::empty(),
            &[
                ev(r#"{"kind":"birth","site":{}}"#),
                ev(r#"{"kind":"birth","site":{}}"#),
                ev(r#"{"kind":"saddle","site":{"arcs":[1,2]}}"#),
                ev(r#"{"kind":"dot","site":{"arc":1}}"#),
            ],
        )
        .unwrap();
        assert_eq!((m.births(), m.saddles(), m.deaths(), m.dots()), (2, 1, 0, 1));
        assert_eq!(m.euler_characteristic(), 1);
        assert_eq!(m.bidegree(), (0, -1));
        assert_eq!(movie_map(&m, RingSpec::Integers).unwrap().bidegree(), (0, -1));
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let m = Movie::from_json(r#"{"start":{"pd":[],"loops":[1]},"events":[{"kind":"birth","site":{}}]}"#).unwrap();
        assert_eq!(m.events(), vec![MovieEvent::Birth { label: Some(2) }]);
        let again = Movie::from_value(&m.to_value()).unwrap();
        assert_eq!(again.events(), m.events());
        assert!(Movie::from_json(r#"{"start":{"pd":[]},"events":[],"extra":1}"#).is_err());
        let e = Movie::from_json(r#"{"start":{"pd":[]},"events":[{"kind":"death","site":{"arc":4}}]}"#).unwrap_err();
        assert!(matches!(e, MovieError::InvalidSite { index: 0, .. }));
    }

    #[test]
    fn birth_from_nothing_is_the_unit() {
        let m = Movie::new(LinkDiagram::empty(), &[ev(r#"{"kind":"birth","site":{}}"#)]).unwrap();
        let f = movie_map(&m, RingSpec::Integers).unwrap();
        // the empty diagram has one generator; it goes to v₊ of the new circle
        assert_eq!(f.matrix().triplets().collect::<Vec<_>>(), vec![(0, 0, 1)]);
        assert_eq!(f.target().grading(0).j, 1);
    }

    #[test]
    fn dot_on_the_unknot_lowers_the_generator() {
        let m = Movie::new(LinkDiagram::unknot(), &[ev(r#"{"kind":"dot","site":{"arc":1}}"#)]).unwrap();
        let f = induced_map(&movie_map(&m, RingSpec::Integers).unwrap()).unwrap();
        let blocks: Vec<_> = f.blocks().values().filter(|b| !b.entries.is_empty()).collect();
        assert_eq!(blocks.len(), 1);
        assert_eq!((blocks[0].source.j, blocks[0].target.j), (1, -1));
        assert_eq!(blocks[0].entries[0][0], num_rational::BigRational::from_integer(1.into()));
    }
}

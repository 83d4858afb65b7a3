//! The local relations of dotted cobordisms, checked as exact identities of
//! chain maps over ℤ inside an ambient diagram.

use serde::Serialize;

use super::event::MovieEvent;
use super::movie::{Movie, MovieComplexes};
use crate::complex::ChainMap;
use crate::error::MovieError;
use crate::link::{ArcLabel, LinkDiagram};
use crate::ring::RingSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalRelations {
    /// An undotted sphere is zero.
    pub sphere: bool,
    /// A sphere with one dot is the identity.
    pub dotted_sphere: bool,
    /// Two dots on one sheet are zero.
    pub two_dots: bool,
    /// A tube equals the sum of the two ways of cutting it and dotting one side.
    pub neck_cutting: bool,
}

impl LocalRelations {
    pub fn all(&self) -> bool {
        self.sphere && self.dotted_sphere && self.two_dots && self.neck_cutting
    }
}

fn composite(d: &LinkDiagram, events: &[MovieEvent], ring: RingSpec) -> Result<ChainMap, MovieError> {
    let m = Movie::new(d.clone(), events)?;
    let mc = MovieComplexes::build(&m, ring)?;
    mc.composite().map_err(|source| MovieError::Algebra { index: m.len(), source })
}

fn some_arc(d: &LinkDiagram) -> Result<ArcLabel, MovieError> {
    d.arcs().first().copied().ok_or_else(|| MovieError::site(0, "the empty diagram has no arc to work on"))
}

/// Splitting a sheet off `arc` and merging it back equals twice the dot.
pub fn check_neck_cutting(ambient: &LinkDiagram, arc: Option<ArcLabel>, ring: RingSpec) -> Result<bool, MovieError> {
    let a = match arc {
        Some(a) => a,
        None => some_arc(ambient)?,
    };
    let l = ambient.max_label() + 1;
    let tube = composite(
        ambient,
        &[MovieEvent::Saddle { arcs: [a, a], label: Some(l) }, MovieEvent::Saddle { arcs: [a, l], label: None }],
        ring,
    )?;
    let dot = composite(ambient, &[MovieEvent::Dot { arc: a }], ring)?;
    let twice = dot.add(&dot).map_err(|source| MovieError::Algebra { index: 0, source })?;
    Ok(tube.matrix() == twice.matrix())
}

/// All four relations over ℤ, with the sheets placed next to `arc` (or the
/// lowest arc of the diagram). On the empty diagram the relations that need
/// a sheet use a newly born circle.
pub fn check_local_relations(ambient: &LinkDiagram, arc: Option<ArcLabel>) -> Result<LocalRelations, MovieError> {
    let z = RingSpec::Integers;
    let l = ambient.max_label() + 1;
    let sphere = composite(ambient, &[MovieEvent::Birth { label: Some(l) }, MovieEvent::Death { arc: l }], z)?.is_zero();
    let dotted = composite(
        ambient,
        &[MovieEvent::Birth { label: Some(l) }, MovieEvent::Dot { arc: l }, MovieEvent::Death { arc: l }],
        z,
    )?;
    let dotted_sphere = dotted.matrix() == ChainMap::identity(dotted.source().clone()).matrix();
    let (two_dots, neck_cutting) = match arc.or_else(|| ambient.arcs().first().copied()) {
        Some(a) => (
            composite(ambient, &[MovieEvent::Dot { arc: a }, MovieEvent::Dot { arc: a }], z)?.is_zero(),
            check_neck_cutting(ambient, Some(a), z)?,
        ),
        None => {
            // on the empty diagram, work on a sheet born for the purpose
            let born = Movie::new(ambient.clone(), &[MovieEvent::Birth { label: Some(l) }])?;
            let d = born.end();
            (
                composite(d, &[MovieEvent::Dot { arc: l }, MovieEvent::Dot { arc: l }], z)?.is_zero(),
                check_neck_cutting(d, Some(l), z)?,
            )
        }
    };
    Ok(LocalRelations { sphere, dotted_sphere, two_dots, neck_cutting })
}

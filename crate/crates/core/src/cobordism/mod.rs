//! Link cobordisms presented as movies, and the chain maps they induce.

mod event;
mod maps;
mod movie;
mod reidemeister;
mod relations;

pub use event::{apply_event, Applied, MovieEvent, Side, SiteError};
pub use movie::{induced_movie_map, movie_map, Movie, MovieComplexes};
pub use relations::{check_local_relations, check_neck_cutting, LocalRelations};

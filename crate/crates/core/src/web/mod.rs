//! MOY webs in sliced form.

pub mod build;
mod compile;
mod expand;
mod morse;
pub mod planar;
mod slice;

pub use compile::{compile, compile_braid, to_diagram};
pub use expand::{canonicalize, crossing_terms, expand_crossings, WebSum};
pub use morse::to_slices;
pub use planar::PlanarWeb;
pub use slice::{Dir, Slice, SliceKind, SliceWeb, Strand, Turn};

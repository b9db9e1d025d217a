pub mod action;
pub mod corpus;
pub mod error;
pub mod gpath;
pub mod graph;
pub mod group;
pub mod groupoid;
pub mod homotopy;
pub mod loopbase;
pub mod morphism;
pub mod par;
pub mod space;
pub mod sweeps;

pub use action::{GraphAction, GroupAction};
pub use error::{Error, Result};
pub use graph::SpaceGraph;
pub use group::{Elem, FiniteGroup};
pub use groupoid::FiniteGroupoid;

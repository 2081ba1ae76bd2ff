//! Maximal arcs of Denniston and Mathon type in PG(2, 2^h).
//!
//! The crate is layered bottom-up: [`field`] arithmetic, the [`plane`]
//! PG(2,q), nucleus-adapted [`conic`]s and their pencils, [`arcs`]
//! construction and verification, semilinear [`collineation`]s with
//! canonical forms, and the [`census`] engine that counts and classifies
//! arcs.

pub mod arcs;
pub mod census;
pub mod cert;
pub mod collineation;
pub mod conic;
pub mod error;
pub mod field;
pub mod plane;

pub use error::{Error, Result};
pub use conic::{Conic, GeneralConic, Pencil};
pub use field::{Elem, Field, FieldSpec};
pub use plane::{Plane, PointSet, ProjLine, ProjPoint};

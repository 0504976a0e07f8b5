//! Adjoint Chevalley groups of simply-laced types over finite local rings
//! with 1/2: root data, structure constants, group elements, big-cell
//! factorization and the normalizer checks built on top of it.

pub mod decompose;
pub mod error;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod rings;
pub mod roots;
pub mod standardize;
pub mod suites;
pub mod torusext;

pub use error::{Error, Result};
pub use rings::{Elem, Ring, RingElem};
pub use roots::{RootSystem, SystemType};

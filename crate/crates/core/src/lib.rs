//! Exact arithmetic for composition algebras over ℤ, ℚ, ℤ/n and 𝔽p: 2×2
//! matrices, quaternion and octonion algebras, their norm forms, and the
//! groups of points attached to them.

#![allow(clippy::needless_range_loop)]

pub mod algebras;
pub mod budget;
pub mod error;
mod finite;
pub mod grouppoints;
pub mod identities;
pub mod isomorphism;
pub mod linmap;
pub mod mat2;
pub mod quadforms;
pub mod rings;

pub use algebras::{AlgElem, AlgebraKind, AlgebraSpec, SharedSpec};
pub use budget::Budget;
pub use error::{Error, Result};
pub use linmap::LinMap;
pub use mat2::Mat2;
pub use quadforms::{PolarMatrix, QuadForm};
pub use rings::{RingElem, RingSpec};

//! Exact computations with quiver representations over prime fields:
//! subrepresentation and flag counting, BGP reflection functors, Hall
//! algebras and the geometry of quiver flag varieties.
//!
//! ```
//! use quiver_hall::{dynkin, fixtures, flag, geometry};
//!
//! // the (2,2) representation of 1 -> 2 with arrow matrix [[1,0],[0,0]]
//! let m = fixtures::m22(2)?;
//! let g = fixtures::g_filtration(); // flag type ((0,0),(1,1),(2,2))
//!
//! // five flags over GF(2), and the count is 1 modulo 2
//! assert_eq!(flag::count_flags_brute(&m, &g, None)?, 5u32.into());
//! assert_eq!(flag::count_flags_reflect(&m, &g)?.residue, 1);
//!
//! // the Krull-Schmidt class and the counting polynomial 2q + 1
//! let roots = dynkin::positive_roots(&fixtures::a2())?;
//! let class = roots.classify(&m)?;
//! assert_eq!(roots.class_to_string(&class), "1x(0,1) + 1x(1,0) + 1x(1,1)");
//! let counting = geometry::flag_counting_polynomial(&roots, &class, &g)?;
//! assert_eq!(counting.polynomial.to_string(), "2q + 1");
//! # Ok::<(), quiver_hall::Error>(())
//! ```

// index loops mirror the matrix formulas throughout
#![allow(clippy::needless_range_loop)]

pub mod dynkin;
pub mod error;
pub mod fixtures;
pub mod flag;
pub mod fp;
pub mod geometry;
pub mod hall;
pub mod io;
pub mod poly;
pub mod quiver;
pub mod reflection;
pub mod rep;
pub mod verify;

pub use error::{Error, Result};

//! Built-in named fixtures shared by the CLI and the test suites.

use crate::error::Result;
use crate::quiver::{DimVector, Filtration, Quiver};
use crate::rep::Representation;

/// Single vertex, no arrows.
pub fn a1() -> Quiver {
    Quiver::from_arrows(vec![1], &[]).expect("static fixture")
}

/// `1 -> 2` via the arrow `a`.
pub fn a2() -> Quiver {
    Quiver::from_arrows(vec![1, 2], &[("a", 1, 2)]).expect("static fixture")
}

/// `1 -> 2 -> 3`.
pub fn a3() -> Quiver {
    Quiver::from_arrows(vec![1, 2, 3], &[("a", 1, 2), ("b", 2, 3)]).expect("static fixture")
}

/// Three outer vertices all pointing into the central vertex 4.
pub fn d4() -> Quiver {
    Quiver::from_arrows(vec![1, 2, 3, 4], &[("a", 1, 4), ("b", 2, 4), ("c", 3, 4)])
        .expect("static fixture")
}

pub fn quiver_by_name(name: &str) -> Option<Quiver> {
    match name {
        "a1" => Some(a1()),
        "a2" => Some(a2()),
        "a3" => Some(a3()),
        "d4" => Some(d4()),
        _ => None,
    }
}

/// The indecomposable `k -> k` of dimension (1,1) over A2.
pub fn p_rep(p: u64) -> Result<Representation> {
    Representation::new(
        a2(),
        p,
        DimVector::new(vec![1, 1]),
        vec![vec![vec![1]]],
    )
}

/// Dimension (2,2) over A2 with arrow matrix `[[1,0],[0,0]]`.
pub fn m22(p: u64) -> Result<Representation> {
    Representation::new(
        a2(),
        p,
        DimVector::new(vec![2, 2]),
        vec![vec![vec![1, 0], vec![0, 0]]],
    )
}

/// The filtration ((0,0),(1,1),(2,2)) of (2,2).
pub fn g_filtration() -> Filtration {
    Filtration::new(vec![
        DimVector::zero(2),
        DimVector::new(vec![1, 1]),
        DimVector::new(vec![2, 2]),
    ])
    .expect("static fixture")
}

pub fn rep_by_name(name: &str, p: u64) -> Result<Option<Representation>> {
    Ok(match name {
        "m22" => Some(m22(p)?),
        "p" => Some(p_rep(p)?),
        "s1" => Some(Representation::simple(&a2(), p, 1)?),
        "s2" => Some(Representation::simple(&a2(), p, 2)?),
        _ => None,
    })
}

pub fn filtration_by_name(name: &str) -> Option<Filtration> {
    match name {
        "G" => Some(g_filtration()),
        _ => None,
    }
}

//! Text formats for quivers, representations and filtrations.

use crate::error::{Error, Result};
use crate::quiver::{Arrow, DimVector, Filtration, Quiver};
use crate::rep::Representation;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize)]
struct QuiverDoc {
    vertices: Vec<u32>,
    arrows: Vec<(String, u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct RepDoc {
    p: u64,
    dim: Vec<i64>,
    matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

pub fn quiver_from_json(text: &str) -> Result<Quiver> {
    let doc: QuiverDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("quiver document: {e}")))?;
    Quiver::new(
        doc.vertices,
        doc.arrows
            .into_iter()
            .map(|(id, source, target)| Arrow { id, source, target })
            .collect(),
    )
}

pub fn quiver_to_json(q: &Quiver) -> String {
    let doc = QuiverDoc {
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| (a.id.clone(), a.source, a.target))
            .collect(),
    };
    serde_json::to_string(&doc).expect("serialisable")
}

/// Parses `{"p": prime, "dim": [..], "matrices": {arrow-id: rows}}` against
/// a quiver. Arrows with a zero-dimensional source or target may be omitted.
pub fn representation_from_json(q: &Quiver, text: &str) -> Result<Representation> {
    let doc: RepDoc = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("representation document: {e}")))?;
    let dims = DimVector::new(doc.dim);
    q.check_dim(&dims)
        .map_err(|_| Error::Parse("dim length does not match the quiver".into()))?;
    let mut matrices = Vec::with_capacity(q.arrows().len());
    for arrow in q.arrows() {
        let tgt = q.vertex_index(arrow.target)?;
        let src = q.vertex_index(arrow.source)?;
        let rows = dims.get(tgt).max(0) as usize;
        let cols = dims.get(src).max(0) as usize;
        match doc.matrices.get(&arrow.id) {
            Some(entries) => {
                let mut m = crate::fp::FpMatrix::zero(doc.p, rows, cols)?;
                if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
                    return Err(Error::Parse(format!(
                        "matrix for arrow `{}` must be {rows}x{cols}",
                        arrow.id
                    )));
                }
                for (r, row) in entries.iter().enumerate() {
                    for (c, &x) in row.iter().enumerate() {
                        m.set(r, c, crate::fp::reduce_int(x, doc.p));
                    }
                }
                matrices.push(m);
            }
            None if rows == 0 || cols == 0 => {
                matrices.push(crate::fp::FpMatrix::zero(doc.p, rows, cols)?);
            }
            None => {
                return Err(Error::Parse(format!(
                    "missing matrix for arrow `{}`",
                    arrow.id
                )))
            }
        }
    }
    Representation::from_matrices(q.clone(), doc.p, dims, matrices)
}

pub fn representation_to_json(rep: &Representation) -> String {
    let mut matrices = BTreeMap::new();
    for (idx, arrow) in rep.quiver().arrows().iter().enumerate() {
        let m = rep.matrix(idx);
        if m.rows() == 0 || m.cols() == 0 {
            continue;
        }
        let rows: Vec<Vec<i64>> = (0..m.rows())
            .map(|r| m.row(r).iter().map(|&x| x as i64).collect())
            .collect();
        matrices.insert(arrow.id.clone(), rows);
    }
    let doc = RepDoc {
        p: rep.modulus(),
        dim: rep.dim_vector().entries().to_vec(),
        matrices,
    };
    serde_json::to_string(&doc).expect("serialisable")
}

/// Parses a filtration as an array of dimension arrays.
pub fn filtration_from_json(text: &str) -> Result<Filtration> {
    let steps: Vec<Vec<i64>> = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("filtration document: {e}")))?;
    Filtration::new(steps.into_iter().map(DimVector::new).collect())
}

pub fn filtration_to_json(f: &Filtration) -> String {
    let steps: Vec<Vec<i64>> = f.steps().iter().map(|d| d.entries().to_vec()).collect();
    serde_json::to_string(&steps).expect("serialisable")
}

//! Finite-dimensional quiver representations over GF(p): Hom and Ext
//! computations, duality, subrepresentations and quotients.

use crate::error::{Error, Result};
use crate::fp::{rank_kernel, FpMatrix, Subspace};
use crate::quiver::{DimVector, Quiver, VertexId};

/// A representation: one GF(p)-space per vertex, one matrix per arrow.
///
/// The matrix of an arrow `a: i -> j` has shape `d_j x d_i` (vectors are
/// columns, maps compose right to left).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    p: u64,
    dims: DimVector,
    matrices: Vec<FpMatrix>,
}

impl Representation {
    pub fn new(
        quiver: Quiver,
        p: u64,
        dims: DimVector,
        matrices: Vec<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        let mats = matrices
            .iter()
            .enumerate()
            .map(|(idx, rows)| {
                let arrow = &quiver.arrows()[idx];
                let tgt = quiver.vertex_index(arrow.target)?;
                if rows.is_empty() {
                    FpMatrix::zero(p, dims.get(tgt).max(0) as usize, 0)
                } else {
                    FpMatrix::from_rows(p, rows)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrices(quiver, p, dims, mats)
    }

    pub fn from_matrices(
        quiver: Quiver,
        p: u64,
        dims: DimVector,
        matrices: Vec<FpMatrix>,
    ) -> Result<Self> {
        quiver.check_dim(&dims)?;
        if !dims.is_nonnegative() {
            return Err(Error::ShapeMismatch("negative dimension".into()));
        }
        if matrices.len() != quiver.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                matrices.len(),
                quiver.arrows().len()
            )));
        }
        for (idx, m) in matrices.iter().enumerate() {
            if m.modulus() != p {
                return Err(Error::ModulusMismatch(m.modulus(), p));
            }
            let arrow = &quiver.arrows()[idx];
            let src = quiver.vertex_index(arrow.source)?;
            let tgt = quiver.vertex_index(arrow.target)?;
            if m.rows() != dims.get(tgt) as usize || m.cols() != dims.get(src) as usize {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` expects {}x{}, got {}x{}",
                    arrow.id,
                    dims.get(tgt),
                    dims.get(src),
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self {
            quiver,
            p,
            dims,
            matrices,
        })
    }

    pub fn zero(quiver: Quiver, p: u64) -> Result<Self> {
        let n = quiver.n_vertices();
        let mats = quiver
            .arrows()
            .iter()
            .map(|_| FpMatrix::zero(p, 0, 0))
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrices(quiver, p, DimVector::zero(n), mats)
    }

    /// The simple representation at a vertex.
    pub fn simple(quiver: &Quiver, p: u64, vertex: VertexId) -> Result<Self> {
        let idx = quiver.vertex_index(vertex)?;
        let dims = DimVector::unit(quiver.n_vertices(), idx);
        let mats = quiver
            .arrows()
            .iter()
            .map(|a| {
                let rows = if a.target == vertex { 1 } else { 0 };
                let cols = if a.source == vertex { 1 } else { 0 };
                FpMatrix::zero(p, rows, cols)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrices(quiver.clone(), p, dims, mats)
    }

    pub fn direct_sum(summands: &[&Representation]) -> Result<Self> {
        let first = summands
            .first()
            .ok_or_else(|| Error::Internal("direct sum of nothing".into()))?;
        let quiver = first.quiver.clone();
        let p = first.p;
        let mut dims = DimVector::zero(quiver.n_vertices());
        for s in summands {
            if s.quiver != quiver {
                return Err(Error::QuiverMismatch);
            }
            if s.p != p {
                return Err(Error::ModulusMismatch(s.p, p));
            }
            dims = dims.add(&s.dims);
        }
        let mut mats = Vec::with_capacity(quiver.arrows().len());
        for (idx, arrow) in quiver.arrows().iter().enumerate() {
            let src = quiver.vertex_index(arrow.source)?;
            let tgt = quiver.vertex_index(arrow.target)?;
            let mut block = FpMatrix::zero(p, dims.get(tgt) as usize, dims.get(src) as usize)?;
            let mut row_off = 0;
            let mut col_off = 0;
            for s in summands {
                let m = &s.matrices[idx];
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        block.set(row_off + r, col_off + c, m.get(r, c));
                    }
                }
                row_off += s.dims.get(tgt) as usize;
                col_off += s.dims.get(src) as usize;
            }
            mats.push(block);
        }
        Self::from_matrices(quiver, p, dims, mats)
    }

    /// A representation with seeded pseudo-random arrow matrices.
    pub fn random(quiver: &Quiver, dims: &DimVector, p: u64, seed: u64) -> Result<Self> {
        let mut rng = SplitMix64(seed);
        let mut mats = Vec::with_capacity(quiver.arrows().len());
        for arrow in quiver.arrows() {
            let src = quiver.vertex_index(arrow.source)?;
            let tgt = quiver.vertex_index(arrow.target)?;
            let rows = dims.get(tgt).max(0) as usize;
            let cols = dims.get(src).max(0) as usize;
            let mut m = FpMatrix::zero(p, rows, cols)?;
            for r in 0..rows {
                for c in 0..cols {
                    m.set(r, c, rng.next() % p);
                }
            }
            mats.push(m);
        }
        Self::from_matrices(quiver.clone(), p, dims.clone(), mats)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn dim_vector(&self) -> &DimVector {
        &self.dims
    }

    pub fn matrix(&self, arrow_idx: usize) -> &FpMatrix {
        &self.matrices[arrow_idx]
    }

    pub fn matrices(&self) -> &[FpMatrix] {
        &self.matrices
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    pub fn vertex_dim(&self, v: VertexId) -> Result<usize> {
        Ok(self.dims.get(self.quiver.vertex_index(v)?).max(0) as usize)
    }

    /// The dual representation over the opposite quiver: every arrow matrix
    /// is transposed. Dualising twice is the identity.
    pub fn dualize(&self) -> Representation {
        Representation {
            quiver: self.quiver.opposite(),
            p: self.p,
            dims: self.dims.clone(),
            matrices: self.matrices.iter().map(FpMatrix::transpose).collect(),
        }
    }

    /// The stacked map `phi_a: (+)_{a: j -> a} M_j -> M_a` at a sink,
    /// one column block per incoming arrow in arrow order.
    pub(crate) fn sink_map(&self, a: VertexId) -> Result<FpMatrix> {
        if !self.quiver.is_sink(a) {
            return Err(Error::NotASink(a));
        }
        let da = self.vertex_dim(a)?;
        let mut phi = FpMatrix::zero(self.p, da, 0)?;
        for (idx, _) in self.quiver.arrows_into(a) {
            phi = phi.hstack(&self.matrices[idx])?;
        }
        Ok(phi)
    }

    /// `dim Hom(M, S_a) = d_a - rank phi_a` for a sink `a`.
    pub fn hom_to_simple_at_sink(&self, a: VertexId) -> Result<usize> {
        let phi = self.sink_map(a)?;
        Ok(phi.rows() - phi.rank())
    }

    /// Checks that per-vertex subspaces are closed under all arrow matrices.
    pub fn is_invariant(&self, bases: &[Subspace]) -> Result<bool> {
        self.check_bases(bases)?;
        for (idx, arrow) in self.quiver.arrows().iter().enumerate() {
            let src = self.quiver.vertex_index(arrow.source)?;
            let tgt = self.quiver.vertex_index(arrow.target)?;
            let m = &self.matrices[idx];
            for r in 0..bases[src].dim() {
                let img = m.apply(bases[src].basis().row(r))?;
                if !bases[tgt].contains_vector(&img) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The subrepresentation carried by invariant subspaces, expressed in
    /// their canonical echelon bases.
    pub fn restrict_to(&self, bases: &[Subspace]) -> Result<Representation> {
        self.check_bases(bases)?;
        let dims = DimVector::new(bases.iter().map(|s| s.dim() as i64).collect());
        let mut mats = Vec::with_capacity(self.matrices.len());
        for (idx, arrow) in self.quiver.arrows().iter().enumerate() {
            let src = self.quiver.vertex_index(arrow.source)?;
            let tgt = self.quiver.vertex_index(arrow.target)?;
            let m = &self.matrices[idx];
            let mut block = FpMatrix::zero(self.p, bases[tgt].dim(), bases[src].dim())?;
            for c in 0..bases[src].dim() {
                let img = m.apply(bases[src].basis().row(c))?;
                let coords = bases[tgt]
                    .coordinates(&img)
                    .ok_or(Error::NotAFlagPoint)?;
                for (r, &x) in coords.iter().enumerate() {
                    block.set(r, c, x);
                }
            }
            mats.push(block);
        }
        Self::from_matrices(self.quiver.clone(), self.p, dims, mats)
    }

    /// The quotient by invariant subspaces, realised on the canonical
    /// complement coordinates; also returns the per-vertex projections.
    pub fn quotient_by(&self, bases: &[Subspace]) -> Result<(Representation, Vec<FpMatrix>)> {
        self.check_bases(bases)?;
        let n = self.quiver.n_vertices();
        let mut projections = Vec::with_capacity(n);
        let mut sections = Vec::with_capacity(n);
        for s in bases {
            projections.push(s.projection_matrix()?);
            sections.push(s.section_matrix()?);
        }
        let dims = DimVector::new(
            bases
                .iter()
                .map(|s| (s.ambient() - s.dim()) as i64)
                .collect(),
        );
        let mut mats = Vec::with_capacity(self.matrices.len());
        for (idx, arrow) in self.quiver.arrows().iter().enumerate() {
            let src = self.quiver.vertex_index(arrow.source)?;
            let tgt = self.quiver.vertex_index(arrow.target)?;
            let block = projections[tgt].mul(&self.matrices[idx].mul(&sections[src])?)?;
            mats.push(block);
        }
        let quot = Self::from_matrices(self.quiver.clone(), self.p, dims, mats)?;
        Ok((quot, projections))
    }

    fn check_bases(&self, bases: &[Subspace]) -> Result<()> {
        if bases.len() != self.quiver.n_vertices() {
            return Err(Error::IndexMismatch {
                expected: self.quiver.n_vertices(),
                got: bases.len(),
            });
        }
        for (i, s) in bases.iter().enumerate() {
            if s.modulus() != self.p {
                return Err(Error::ModulusMismatch(s.modulus(), self.p));
            }
            if s.ambient() != self.dims.get(i) as usize {
                return Err(Error::ShapeMismatch(format!(
                    "subspace at vertex index {i} has ambient {} but the space has dimension {}",
                    s.ambient(),
                    self.dims.get(i)
                )));
            }
        }
        Ok(())
    }

    /// A compact signature for memoising classification of small
    /// representations: dimension vector plus all matrix entries.
    pub(crate) fn signature(&self) -> (Vec<i64>, Vec<u64>) {
        let dims = self.dims.entries().to_vec();
        let entries = self
            .matrices
            .iter()
            .flat_map(|m| m.entries().iter().copied())
            .collect();
        (dims, entries)
    }
}

/// A morphism of representations: per-vertex matrices commuting with the
/// arrow matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    maps: Vec<FpMatrix>,
}

impl Morphism {
    pub fn new(source: &Representation, target: &Representation, maps: Vec<FpMatrix>) -> Result<Self> {
        check_compatible(source, target)?;
        let q = source.quiver();
        if maps.len() != q.n_vertices() {
            return Err(Error::IndexMismatch {
                expected: q.n_vertices(),
                got: maps.len(),
            });
        }
        for (i, f) in maps.iter().enumerate() {
            if f.rows() != target.dims.get(i) as usize || f.cols() != source.dims.get(i) as usize {
                return Err(Error::ShapeMismatch(format!(
                    "component at vertex index {i} has wrong shape"
                )));
            }
        }
        for (idx, arrow) in q.arrows().iter().enumerate() {
            let src = q.vertex_index(arrow.source)?;
            let tgt = q.vertex_index(arrow.target)?;
            let lhs = maps[tgt].mul(&source.matrices[idx])?;
            let rhs = target.matrices[idx].mul(&maps[src])?;
            if lhs != rhs {
                return Err(Error::ShapeMismatch(format!(
                    "square at arrow `{}` does not commute",
                    arrow.id
                )));
            }
        }
        Ok(Self { maps })
    }

    pub fn maps(&self) -> &[FpMatrix] {
        &self.maps
    }

    pub fn map(&self, vertex_idx: usize) -> &FpMatrix {
        &self.maps[vertex_idx]
    }
}

fn check_compatible(m: &Representation, n: &Representation) -> Result<()> {
    if m.quiver != n.quiver {
        return Err(Error::QuiverMismatch);
    }
    if m.p != n.p {
        return Err(Error::ModulusMismatch(m.p, n.p));
    }
    Ok(())
}

/// The block linear system whose kernel is Hom(M, N): unknowns are the
/// entries of the per-vertex maps, one equation block per arrow.
fn hom_system(m: &Representation, n: &Representation) -> Result<FpMatrix> {
    let q = m.quiver();
    let p = m.p;
    let nverts = q.n_vertices();
    let mut offsets = Vec::with_capacity(nverts);
    let mut ncols = 0usize;
    for i in 0..nverts {
        offsets.push(ncols);
        ncols += (n.dims.get(i) * m.dims.get(i)).max(0) as usize;
    }
    let mut nrows = 0usize;
    for arrow in q.arrows() {
        let src = q.vertex_index(arrow.source)?;
        let tgt = q.vertex_index(arrow.target)?;
        nrows += (m.dims.get(src) * n.dims.get(tgt)).max(0) as usize;
    }
    let mut sys = FpMatrix::zero(p, nrows, ncols)?;
    let mut row = 0usize;
    for (idx, arrow) in q.arrows().iter().enumerate() {
        let src = q.vertex_index(arrow.source)?;
        let tgt = q.vertex_index(arrow.target)?;
        let ma = &m.matrices[idx];
        let na = &n.matrices[idx];
        let d_src = m.dims.get(src) as usize;
        let d_tgt = m.dims.get(tgt) as usize;
        let e_src = n.dims.get(src) as usize;
        let e_tgt = n.dims.get(tgt) as usize;
        // equation (r, c): sum_t f_tgt[r,t] Ma[t,c] - sum_t Na[r,t] f_src[t,c] = 0
        for r in 0..e_tgt {
            for c in 0..d_src {
                for t in 0..d_tgt {
                    let col = offsets[tgt] + r * d_tgt + t;
                    let v = (sys.get(row, col) + ma.get(t, c)) % p;
                    sys.set(row, col, v);
                }
                for t in 0..e_src {
                    let col = offsets[src] + t * d_src + c;
                    let v = (sys.get(row, col) + (p - na.get(r, t)) % p) % p;
                    sys.set(row, col, v);
                }
                row += 1;
            }
        }
    }
    Ok(sys)
}

/// A basis of Hom(M, N).
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    check_compatible(m, n)?;
    let sys = hom_system(m, n)?;
    let (_, kernel) = rank_kernel(&sys);
    let q = m.quiver();
    let mut morphisms = Vec::with_capacity(kernel.len());
    for vec in kernel {
        let mut maps = Vec::with_capacity(q.n_vertices());
        let mut off = 0usize;
        for i in 0..q.n_vertices() {
            let rows = n.dims.get(i) as usize;
            let cols = m.dims.get(i) as usize;
            let mut f = FpMatrix::zero(m.p, rows, cols)?;
            for r in 0..rows {
                for c in 0..cols {
                    f.set(r, c, vec[off + r * cols + c]);
                }
            }
            off += rows * cols;
            maps.push(f);
        }
        morphisms.push(Morphism::new(m, n, maps)?);
    }
    Ok(morphisms)
}

/// `[M, N] = dim Hom(M, N)` via the kernel of the commuting-square system.
pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    check_compatible(m, n)?;
    let sys = hom_system(m, n)?;
    Ok(sys.cols() - sys.rank())
}

/// `[M, N]^1` derived from the Euler identity `<dim M, dim N> = [M,N] - [M,N]^1`
/// (the path algebra is hereditary).
pub fn ext1_dim(m: &Representation, n: &Representation) -> Result<i64> {
    let hom = hom_dim(m, n)? as i64;
    let euler = m.quiver().euler_form(&m.dims, &n.dims)?;
    Ok(hom - euler)
}

/// `[M, N]^1` computed independently as the cokernel dimension of the
/// commuting-square system (verification route for the Euler identity).
pub fn ext1_dim_direct(m: &Representation, n: &Representation) -> Result<usize> {
    check_compatible(m, n)?;
    let sys = hom_system(m, n)?;
    Ok(sys.rows() - sys.rank())
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

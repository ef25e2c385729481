//! Counting points of quiver flag varieties over GF(p): exhaustive
//! enumeration of subspace chains, the q-binomial fiber formula, and the
//! reflection recursion that computes the count modulo p.

use crate::dynkin::{IsoClass, RootSystem};
use crate::error::{Error, Result};
use crate::fp::{for_each_subspace_containing, Subspace};
use crate::poly::{qbinom, QPolynomial};
use crate::quiver::{DimVector, Filtration, VertexId};
use crate::reflection::{reflect_filtration, reflect_sink};
use crate::rep::Representation;
use num_bigint::BigUint;
use num_traits::Zero;

/// A point of a flag variety: one chain of canonical subspaces per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagPoint {
    /// levels[k][vertex index], for k = 0..=nu
    levels: Vec<Vec<Subspace>>,
}

impl FlagPoint {
    pub fn levels(&self) -> &[Vec<Subspace>] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &[Subspace] {
        &self.levels[k]
    }

    pub fn nu(&self) -> usize {
        self.levels.len() - 1
    }

    /// Validates containments, dimensions and arrow closure against `m`.
    pub fn validate(&self, m: &Representation, f: &Filtration) -> Result<()> {
        if self.levels.len() != f.nu() + 1 {
            return Err(Error::NotAFlagPoint);
        }
        for (k, level) in self.levels.iter().enumerate() {
            let d = f.step(k);
            if level.len() != m.quiver().n_vertices() {
                return Err(Error::NotAFlagPoint);
            }
            for (i, s) in level.iter().enumerate() {
                if s.dim() as i64 != d.get(i) {
                    return Err(Error::NotAFlagPoint);
                }
            }
            if !m.is_invariant(level)? {
                return Err(Error::NotAFlagPoint);
            }
            if k > 0 {
                for (prev, cur) in self.levels[k - 1].iter().zip(level) {
                    if !cur.contains(prev) {
                        return Err(Error::NotAFlagPoint);
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_filtration_of(m: &Representation, f: &Filtration) -> Result<()> {
    m.quiver().check_dim(f.top())?;
    if !f.is_filtration_of(m.dim_vector()) {
        return Err(Error::FiltrationTopMismatch);
    }
    Ok(())
}

/// Visit every flag point of type `f` in `M`, level by level, enumerating the
/// per-vertex subspaces that contain the previous level and pruning as soon
/// as a level fails arrow closure.
pub fn for_each_flag_point<F: FnMut(&FlagPoint)>(
    m: &Representation,
    f: &Filtration,
    visitor: &mut F,
) -> Result<()> {
    check_filtration_of(m, f)?;
    let q = m.quiver();
    let n = q.n_vertices();
    let p = m.modulus();
    let nu = f.nu();
    let mut levels: Vec<Vec<Subspace>> = Vec::with_capacity(nu + 1);
    let zero_level = (0..n)
        .map(|i| Subspace::zero(p, m.dim_vector().get(i) as usize))
        .collect::<Result<Vec<_>>>()?;
    levels.push(zero_level);

    // arrows with both endpoints at index <= i, checked as vertex i is placed
    let mut closure_checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, arrow) in q.arrows().iter().enumerate() {
        let s = q.vertex_index(arrow.source)?;
        let t = q.vertex_index(arrow.target)?;
        closure_checks[s.max(t)].push(idx);
    }

    fn arrows_closed(
        m: &Representation,
        level: &[Subspace],
        arrow_indices: &[usize],
    ) -> Result<bool> {
        let q = m.quiver();
        for &idx in arrow_indices {
            let arrow = &q.arrows()[idx];
            let s = q.vertex_index(arrow.source)?;
            let t = q.vertex_index(arrow.target)?;
            let mat = m.matrix(idx);
            for r in 0..level[s].dim() {
                let img = mat.apply(level[s].basis().row(r))?;
                if !level[t].contains_vector(&img) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn fill_level<F: FnMut(&FlagPoint)>(
        m: &Representation,
        f: &Filtration,
        levels: &mut Vec<Vec<Subspace>>,
        partial: &mut Vec<Subspace>,
        vertex: usize,
        closure_checks: &[Vec<usize>],
        visitor: &mut F,
    ) -> Result<()> {
        let k = levels.len();
        let n = m.quiver().n_vertices();
        if vertex == n {
            levels.push(partial.clone());
            if k == f.nu() {
                let point = FlagPoint {
                    levels: levels.clone(),
                };
                visitor(&point);
            } else {
                let mut next = Vec::new();
                fill_level(m, f, levels, &mut next, 0, closure_checks, visitor)?;
            }
            levels.pop();
            return Ok(());
        }
        let target_dim = f.step(k).get(vertex) as usize;
        let prev = levels.last().expect("level zero present")[vertex].clone();
        let mut error = None;
        for_each_subspace_containing(&prev, target_dim, &mut |sub| {
            if error.is_some() {
                return;
            }
            partial.push(sub.clone());
            let closed = match arrows_closed(m, partial, &closure_checks[vertex]) {
                Ok(c) => c,
                Err(e) => {
                    error = Some(e);
                    partial.pop();
                    return;
                }
            };
            if closed {
                if let Err(e) = fill_level(m, f, levels, partial, vertex + 1, closure_checks, visitor)
                {
                    error = Some(e);
                }
            }
            partial.pop();
        })?;
        match error {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    // the top level is forced to be the full space; enumeration runs through
    // the interior levels and the closure check on the top level is vacuous
    let mut partial = Vec::new();
    fill_level(m, f, &mut levels, &mut partial, 0, &closure_checks, visitor)
}

/// Visit every subrepresentation of `M` of the given dimension vector, as
/// per-vertex canonical subspaces. Leaner than the flag enumeration: one
/// level, no chain bookkeeping.
pub fn for_each_subrep<F: FnMut(&[Subspace])>(
    m: &Representation,
    sub_dim: &DimVector,
    visitor: &mut F,
) -> Result<()> {
    let q = m.quiver();
    q.check_dim(sub_dim)?;
    if !sub_dim.is_nonnegative() || !sub_dim.leq(m.dim_vector()) {
        return Ok(());
    }
    let n = q.n_vertices();
    let mut closure_checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, arrow) in q.arrows().iter().enumerate() {
        let s = q.vertex_index(arrow.source)?;
        let t = q.vertex_index(arrow.target)?;
        closure_checks[s.max(t)].push(idx);
    }

    fn closed(m: &Representation, partial: &[Subspace], arrow_indices: &[usize]) -> Result<bool> {
        let q = m.quiver();
        for &idx in arrow_indices {
            let arrow = &q.arrows()[idx];
            let s = q.vertex_index(arrow.source)?;
            let t = q.vertex_index(arrow.target)?;
            let mat = m.matrix(idx);
            for r in 0..partial[s].dim() {
                let img = mat.apply(partial[s].basis().row(r))?;
                if !partial[t].contains_vector(&img) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn fill<F: FnMut(&[Subspace])>(
        m: &Representation,
        sub_dim: &DimVector,
        partial: &mut Vec<Subspace>,
        vertex: usize,
        closure_checks: &[Vec<usize>],
        visitor: &mut F,
    ) -> Result<()> {
        let n = m.quiver().n_vertices();
        if vertex == n {
            visitor(partial);
            return Ok(());
        }
        let ambient = m.dim_vector().get(vertex) as usize;
        let r = sub_dim.get(vertex) as usize;
        let mut error = None;
        crate::fp::for_each_subspace(m.modulus(), ambient, r, &mut |sub| {
            if error.is_some() {
                return;
            }
            partial.push(sub.clone());
            match closed(m, partial, &closure_checks[vertex]) {
                Ok(true) => {
                    if let Err(e) = fill(m, sub_dim, partial, vertex + 1, closure_checks, visitor) {
                        error = Some(e);
                    }
                }
                Ok(false) => {}
                Err(e) => error = Some(e),
            }
            partial.pop();
        })?;
        match error {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    let mut partial = Vec::with_capacity(n);
    fill(m, sub_dim, &mut partial, 0, &closure_checks, visitor)
}

/// Per-level defect profile of a flag point at a sink:
/// `dim Hom(U^k, S_a)` for each level k.
pub fn strata_profile(m: &Representation, point: &FlagPoint, a: VertexId) -> Result<Vec<i64>> {
    if !m.quiver().is_sink(a) {
        return Err(Error::NotASink(a));
    }
    let mut out = Vec::with_capacity(point.levels.len());
    for level in &point.levels {
        let sub = m.restrict_to(level)?;
        out.push(sub.hom_to_simple_at_sink(a)? as i64);
    }
    Ok(out)
}

/// Exact number of flag points of type `f` in `M`, optionally restricted to
/// the stratum where the per-level defect at `a` equals `r`.
pub fn count_flags_brute(
    m: &Representation,
    f: &Filtration,
    strata: Option<(VertexId, &[i64])>,
) -> Result<BigUint> {
    if let Some((a, r)) = strata {
        if !m.quiver().is_sink(a) {
            return Err(Error::NotASink(a));
        }
        if r.len() != f.nu() + 1 {
            return Err(Error::IndexMismatch {
                expected: f.nu() + 1,
                got: r.len(),
            });
        }
    }
    let mut count = BigUint::zero();
    let mut error = None;
    for_each_flag_point(m, f, &mut |point| {
        if error.is_some() {
            return;
        }
        let keep = match strata {
            None => true,
            Some((a, r)) => match strata_profile(m, point, a) {
                Ok(profile) => profile == r,
                Err(e) => {
                    error = Some(e);
                    false
                }
            },
        };
        if keep {
            count += 1u32;
        }
    })?;
    match error {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

/// All flag points (materialised; intended for small inputs).
pub fn enumerate_flag_points(m: &Representation, f: &Filtration) -> Result<Vec<FlagPoint>> {
    let mut out = Vec::new();
    for_each_flag_point(m, f, &mut |pt| out.push(pt.clone()))?;
    Ok(out)
}

/// The count of subrepresentations of dimension vector `r` in the injective
/// chain `X^{r,e}` of surjections, as a polynomial in q:
/// the product of Gaussian binomials when `e` is weakly increasing and
/// nonnegative, the zero polynomial otherwise.
pub fn fiber_formula(r: &[i64], e: &[i64]) -> Result<QPolynomial> {
    if r.len() != e.len() || r.is_empty() {
        return Err(Error::IndexMismatch {
            expected: r.len().max(1),
            got: e.len(),
        });
    }
    if r.iter().any(|&x| x < 0) {
        return Err(Error::FiberHypothesis);
    }
    let nu = r.len() - 1;
    // hypothesis: e + reverse(r) is weakly increasing and nonnegative
    let combined: Vec<i64> = (0..=nu).map(|i| e[i] + r[nu - i]).collect();
    if combined[0] < 0 || combined.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::FiberHypothesis);
    }
    let increasing = e[0] >= 0 && e.windows(2).all(|w| w[0] <= w[1]);
    if !increasing {
        return Ok(QPolynomial::zero());
    }
    let mut product = QPolynomial::one();
    for i in 0..=nu {
        let prev = if i == nu { 0 } else { e[nu - i - 1] };
        let factor = qbinom(e[nu - i] - prev + r[i], r[i])?;
        product = product.mul(&factor);
    }
    Ok(product)
}

/// The explicit chain of canonical surjections with subrepresentation counts
/// given by [`fiber_formula`]: an A_(nu+1)-representation with dimensions
/// `e^(nu-i) + r^i` and coordinate projections as maps.
pub fn fiber_representation(r: &[i64], e: &[i64], p: u64) -> Result<Representation> {
    if r.len() != e.len() || r.is_empty() {
        return Err(Error::IndexMismatch {
            expected: r.len().max(1),
            got: e.len(),
        });
    }
    let nu = r.len() - 1;
    let dims: Vec<i64> = (0..=nu).map(|i| e[nu - i] + r[i]).collect();
    if dims.iter().any(|&d| d < 0) || dims.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::FiberHypothesis);
    }
    let vertices: Vec<u32> = (0..=nu as u32).collect();
    let arrows: Vec<(String, u32, u32)> = (0..nu as u32)
        .map(|i| (format!("t{i}"), i, i + 1))
        .collect();
    let arrow_refs: Vec<(&str, u32, u32)> = arrows
        .iter()
        .map(|(id, s, t)| (id.as_str(), *s, *t))
        .collect();
    let quiver = crate::quiver::Quiver::from_arrows(vertices, &arrow_refs)?;
    let mut mats = Vec::with_capacity(nu);
    for i in 0..nu {
        let rows = dims[i + 1] as usize;
        let cols = dims[i] as usize;
        let mut m = crate::fp::FpMatrix::zero(p, rows, cols)?;
        for d in 0..rows {
            m.set(d, d, 1);
        }
        mats.push(m);
    }
    Representation::from_matrices(quiver, p, DimVector::new(dims), mats)
}

/// Result of the reflection recursion: the count modulo p (always 0 or 1 for
/// preprojective inputs) and the emptiness decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModqCount {
    pub residue: u64,
    pub nonempty: bool,
}

/// Counts flags modulo p by repeatedly reflecting at the sinks of the
/// admissible ordering: each step replaces `(M, f)` with
/// `(S_a^+ M, S_a^+ f)`; the count is 0 when the reflected type stops being
/// a filtration and 1 when `M` reaches zero with the zero filtration.
pub fn count_flags_reflect(m: &Representation, f: &Filtration) -> Result<ModqCount> {
    check_filtration_of(m, f)?;
    if !m.quiver().is_acyclic() {
        return Err(Error::CyclicQuiver);
    }
    let ordering = m.quiver().admissible_ordering()?;
    let bound = 8 * (m.dim_vector().total().max(1) as usize + 2) * ordering.len() + 16;
    let mut cur = m.clone();
    let mut filt = f.clone();
    let mut step = 0usize;
    loop {
        if cur.is_zero() {
            // the zero representation has exactly one flag, the zero one;
            // the reflected filtration always ends at dim M = 0, hence is zero
            let nonempty = filt.steps().iter().all(DimVector::is_zero);
            return Ok(ModqCount {
                residue: u64::from(nonempty),
                nonempty,
            });
        }
        if step >= bound {
            return Err(Error::TerminationExceeded);
        }
        let a = ordering[step % ordering.len()];
        if !cur.quiver().is_sink(a) {
            return Err(Error::Internal("ordering lost admissibility".into()));
        }
        let s = cur.hom_to_simple_at_sink(a)? as i64;
        match reflect_filtration(cur.quiver(), a, &filt, cur.dim_vector(), s)? {
            None => {
                return Ok(ModqCount {
                    residue: 0,
                    nonempty: false,
                })
            }
            Some(next_filt) => {
                cur = reflect_sink(&cur, a)?;
                filt = next_filt;
            }
        }
        step += 1;
    }
}

/// Field-independent emptiness decision for the flag variety of a class.
pub fn flag_nonempty(rs: &RootSystem, class: &IsoClass, f: &Filtration) -> Result<bool> {
    let rep = rs.rep_of_class(class, 2)?;
    Ok(count_flags_reflect(&rep, f)?.nonempty)
}

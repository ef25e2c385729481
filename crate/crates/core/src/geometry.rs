//! Tangent spaces of flag varieties via chain maps, dimension and
//! codimension bookkeeping, and counting polynomials.

use crate::dynkin::{IsoClass, RootSystem};
use crate::error::{Error, Result};
use crate::flag::{count_flags_brute, enumerate_flag_points, flag_nonempty, strata_profile, FlagPoint};
use crate::fp::{first_primes, rank_kernel, FpMatrix};
use crate::poly::{interpolate, QPolynomial};
use crate::quiver::{DimVector, Filtration, Quiver, VertexId};
use crate::rep::{ext1_dim, Morphism, Representation};
use num_bigint::BigInt;
use num_traits::One;

/// A sequence of representations with connecting morphisms, i.e. a module
/// over the path algebra of the quiver tensored with a linear A-type quiver.
#[derive(Debug, Clone)]
pub struct ChainRep {
    levels: Vec<Representation>,
    /// links[k][i]: component at vertex index i of the map level k -> k+1
    links: Vec<Vec<FpMatrix>>,
}

impl ChainRep {
    pub fn new(levels: Vec<Representation>, links: Vec<Vec<FpMatrix>>) -> Result<Self> {
        if levels.is_empty() || links.len() + 1 != levels.len() {
            return Err(Error::ShapeMismatch(
                "chain needs one link between consecutive levels".into(),
            ));
        }
        for (k, link) in links.iter().enumerate() {
            // each link must be a genuine morphism of representations
            Morphism::new(&levels[k], &levels[k + 1], link.clone())?;
        }
        Ok(ChainRep { levels, links })
    }

    pub fn levels(&self) -> &[Representation] {
        &self.levels
    }

    pub fn links(&self) -> &[Vec<FpMatrix>] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn dims(&self) -> Vec<DimVector> {
        self.levels.iter().map(|l| l.dim_vector().clone()).collect()
    }
}

/// The Euler form of two chain modules from their level dimension vectors:
/// `sum_k <U^k, V^k> - sum_k <U^k, V^(k+1)>`.
pub fn euler_form_chain(q: &Quiver, d_u: &[DimVector], d_v: &[DimVector]) -> Result<i64> {
    if d_u.len() != d_v.len() || d_u.is_empty() {
        return Err(Error::IndexMismatch {
            expected: d_u.len().max(1),
            got: d_v.len(),
        });
    }
    let mut acc = 0i64;
    for (u, v) in d_u.iter().zip(d_v) {
        acc += q.euler_form(u, v)?;
    }
    for (u, v) in d_u.iter().zip(&d_v[1..]) {
        acc -= q.euler_form(u, v)?;
    }
    Ok(acc)
}

/// `dim Hom` between chain modules: kernel of the combined system of all
/// per-level commuting squares and all ladder squares
/// `h^(k+1) f^k = g^k h^k`.
pub fn chain_hom_dim(u: &ChainRep, v: &ChainRep) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::IndexMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    let q = u.levels[0].quiver().clone();
    let p = u.levels[0].modulus();
    for (lu, lv) in u.levels.iter().zip(&v.levels) {
        if lu.quiver() != &q || lv.quiver() != &q {
            return Err(Error::QuiverMismatch);
        }
        if lu.modulus() != p || lv.modulus() != p {
            return Err(Error::ModulusMismatch(lu.modulus(), lv.modulus()));
        }
    }
    let n = q.n_vertices();
    let levels = u.len();
    // unknowns: h^k_i of shape v^k_i x u^k_i, level-major then vertex-major
    let mut offsets = Vec::with_capacity(levels * n);
    let mut ncols = 0usize;
    for k in 0..levels {
        for i in 0..n {
            offsets.push(ncols);
            ncols += (v.levels[k].dim_vector().get(i) * u.levels[k].dim_vector().get(i)) as usize;
        }
    }
    let offset = |k: usize, i: usize| offsets[k * n + i];
    let udim = |k: usize, i: usize| u.levels[k].dim_vector().get(i) as usize;
    let vdim = |k: usize, i: usize| v.levels[k].dim_vector().get(i) as usize;

    let mut nrows = 0usize;
    for k in 0..levels {
        for arrow in q.arrows() {
            let src = q.vertex_index(arrow.source)?;
            let tgt = q.vertex_index(arrow.target)?;
            nrows += udim(k, src) * vdim(k, tgt);
        }
    }
    for k in 0..levels - 1 {
        for i in 0..n {
            nrows += udim(k, i) * vdim(k + 1, i);
        }
    }

    let mut sys = FpMatrix::zero(p, nrows, ncols)?;
    let mut row = 0usize;
    // per-level commuting squares: h^k_tgt U^k_a - V^k_a h^k_src = 0
    for k in 0..levels {
        for (idx, arrow) in q.arrows().iter().enumerate() {
            let src = q.vertex_index(arrow.source)?;
            let tgt = q.vertex_index(arrow.target)?;
            let ua = u.levels[k].matrix(idx);
            let va = v.levels[k].matrix(idx);
            for r in 0..vdim(k, tgt) {
                for c in 0..udim(k, src) {
                    for t in 0..udim(k, tgt) {
                        let col = offset(k, tgt) + r * udim(k, tgt) + t;
                        let val = (sys.get(row, col) + ua.get(t, c)) % p;
                        sys.set(row, col, val);
                    }
                    for t in 0..vdim(k, src) {
                        let col = offset(k, src) + t * udim(k, src) + c;
                        let val = (sys.get(row, col) + (p - va.get(r, t)) % p) % p;
                        sys.set(row, col, val);
                    }
                    row += 1;
                }
            }
        }
    }
    // ladder squares: h^(k+1)_i f^k_i - g^k_i h^k_i = 0
    for k in 0..levels - 1 {
        for i in 0..n {
            let f = &u.links[k][i];
            let g = &v.links[k][i];
            for r in 0..vdim(k + 1, i) {
                for c in 0..udim(k, i) {
                    for t in 0..udim(k + 1, i) {
                        let col = offset(k + 1, i) + r * udim(k + 1, i) + t;
                        let val = (sys.get(row, col) + f.get(t, c)) % p;
                        sys.set(row, col, val);
                    }
                    for t in 0..vdim(k, i) {
                        let col = offset(k, i) + t * udim(k, i) + c;
                        let val = (sys.get(row, col) + (p - g.get(r, t)) % p) % p;
                        sys.set(row, col, val);
                    }
                    row += 1;
                }
            }
        }
    }
    let (_, kernel) = rank_kernel(&sys);
    Ok(kernel.len())
}

/// The flag chain of a point: the subrepresentations at each level with the
/// canonical inclusions as links.
pub fn flag_chain(m: &Representation, point: &FlagPoint) -> Result<ChainRep> {
    let q = m.quiver();
    let n = q.n_vertices();
    let mut levels = Vec::with_capacity(point.levels().len());
    for level in point.levels() {
        levels.push(m.restrict_to(level)?);
    }
    let mut links = Vec::with_capacity(levels.len() - 1);
    for k in 0..levels.len() - 1 {
        let mut maps = Vec::with_capacity(n);
        for i in 0..n {
            let cur = &point.levels()[k][i];
            let next = &point.levels()[k + 1][i];
            let mut f = FpMatrix::zero(m.modulus(), next.dim(), cur.dim())?;
            for c in 0..cur.dim() {
                let coords = next
                    .coordinates(cur.basis().row(c))
                    .ok_or(Error::NotAFlagPoint)?;
                for (r, &x) in coords.iter().enumerate() {
                    f.set(r, c, x);
                }
            }
            maps.push(f);
        }
        links.push(maps);
    }
    ChainRep::new(levels, links)
}

/// The quotient chain `M/U^k` with the induced surjections as links.
pub fn quotient_chain(m: &Representation, point: &FlagPoint) -> Result<ChainRep> {
    let q = m.quiver();
    let n = q.n_vertices();
    let mut levels = Vec::with_capacity(point.levels().len());
    let mut projections = Vec::with_capacity(point.levels().len());
    let mut sections = Vec::with_capacity(point.levels().len());
    for level in point.levels() {
        let (quot, projs) = m.quotient_by(level)?;
        levels.push(quot);
        let mut secs = Vec::with_capacity(n);
        for s in level {
            secs.push(s.section_matrix()?);
        }
        projections.push(projs);
        sections.push(secs);
    }
    let mut links = Vec::with_capacity(levels.len() - 1);
    for k in 0..levels.len() - 1 {
        let mut maps = Vec::with_capacity(n);
        for i in 0..n {
            // complement coords of U^k -> ambient -> complement coords of U^(k+1)
            maps.push(projections[k + 1][i].mul(&sections[k][i])?);
        }
        links.push(maps);
    }
    ChainRep::new(levels, links)
}

/// The tangent space dimension of the flag variety at a point:
/// `dim Hom` of the flag chain into the quotient chain.
pub fn tangent_dim(m: &Representation, point: &FlagPoint) -> Result<usize> {
    let dims: Vec<DimVector> = point
        .levels()
        .iter()
        .map(|level| DimVector::new(level.iter().map(|s| s.dim() as i64).collect()))
        .collect();
    let f = Filtration::new(dims).map_err(|_| Error::NotAFlagPoint)?;
    point.validate(m, &f)?;
    let u = flag_chain(m, point)?;
    let v = quotient_chain(m, point)?;
    chain_hom_dim(&u, &v)
}

/// Dimension and codimension bookkeeping for a flag type.
#[derive(Debug, Clone)]
pub struct CodimReport {
    pub dim_rep_fl: i64,
    pub dim_rep: i64,
    pub codim: i64,
    pub ext_bound: i64,
    pub bound_holds: bool,
    /// classes admitting a flag of this type, with their self-extension dims
    pub classes: Vec<(IsoClass, i64)>,
}

/// `dim Rep(d) = sum over arrows of d_i d_j`.
pub fn dim_rep(q: &Quiver, d: &DimVector) -> Result<i64> {
    q.check_dim(d)?;
    let mut acc = 0i64;
    for arrow in q.arrows() {
        let i = q.vertex_index(arrow.source)?;
        let j = q.vertex_index(arrow.target)?;
        acc += d.get(i) * d.get(j);
    }
    Ok(acc)
}

/// `dim RepFl = sum_(k=1)^(nu-1) <d^k, d^(k+1) - d^k> + dim Rep(d^nu)`.
pub fn dim_rep_fl(q: &Quiver, f: &Filtration) -> Result<i64> {
    let mut acc = dim_rep(q, f.top())?;
    for k in 1..f.nu() {
        acc += q.euler_form(f.step(k), &f.step(k + 1).sub(f.step(k)))?;
    }
    Ok(acc)
}

/// The codimension of the closure of the flag-admitting locus inside the
/// representation space, computed orbit-wise over the classes that admit a
/// flag of this type (finitely many orbits, dense-orbit identity
/// `codim = min [X,X]^1`), together with the extension bound.
pub fn codim_report(rs: &RootSystem, f: &Filtration) -> Result<CodimReport> {
    let q = rs.quiver();
    let dim_rep_fl = dim_rep_fl(q, f)?;
    let dim_rep_val = dim_rep(q, f.top())?;
    let mut classes = Vec::new();
    for class in rs.classes_with_dim(f.top()) {
        if flag_nonempty(rs, &class, f)? {
            let rep = rs.rep_of_class(&class, 2)?;
            let ext = ext1_dim(&rep, &rep)?;
            classes.push((class, ext));
        }
    }
    if classes.is_empty() {
        return Err(Error::Internal(
            "no class admits a flag of this type (the semisimple class always does)".into(),
        ));
    }
    let codim = classes.iter().map(|(_, e)| *e).min().expect("nonempty");
    let ext_bound = classes
        .iter()
        .filter(|(_, e)| *e == codim)
        .map(|(_, e)| *e)
        .next()
        .expect("minimiser exists");
    let bound_holds = classes.iter().all(|(_, e)| codim <= *e);
    Ok(CodimReport {
        dim_rep_fl,
        dim_rep: dim_rep_val,
        codim,
        ext_bound,
        bound_holds,
        classes,
    })
}

/// The interpolated counting polynomial of a flag variety with the degree
/// bound `dim OFl`, its value at a held-out prime checked exactly.
#[derive(Debug, Clone)]
pub struct CountingReport {
    pub polynomial: QPolynomial,
    pub at_zero: BigInt,
    pub at_one: BigInt,
}

/// `dim OFl = sum_i sum_(k=1)^(nu-1) d^k_i (d^(k+1)_i - d^k_i)`.
pub fn dim_ordinary_flag(f: &Filtration) -> i64 {
    let mut acc = 0i64;
    for k in 1..f.nu() {
        for i in 0..f.top().len() {
            acc += f.step(k).get(i) * (f.step(k + 1).get(i) - f.step(k).get(i));
        }
    }
    acc
}

pub fn flag_counting_polynomial(
    rs: &RootSystem,
    class: &IsoClass,
    f: &Filtration,
) -> Result<CountingReport> {
    if &rs.dim_of_class(class) != f.top() {
        return Err(Error::FiltrationTopMismatch);
    }
    let bound = dim_ordinary_flag(f).max(0) as usize;
    let primes = first_primes(bound + 2);
    let (held_out, sample) = primes.split_last().expect("at least two");
    let mut points = Vec::with_capacity(sample.len());
    for &p in sample {
        let rep = rs.rep_of_class(class, p)?;
        let count = count_flags_brute(&rep, f, None)?;
        points.push((BigInt::from(p), BigInt::from(count)));
    }
    let polynomial = interpolate(&points)?;
    let rep = rs.rep_of_class(class, *held_out)?;
    let expected = BigInt::from(count_flags_brute(&rep, f, None)?);
    let got = polynomial.eval_u64(*held_out);
    if got != expected {
        return Err(Error::HeldOutMismatch {
            prime: *held_out,
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }
    let at_zero = polynomial.constant_term();
    let at_one = polynomial.eval(&BigInt::one());
    Ok(CountingReport {
        polynomial,
        at_zero,
        at_one,
    })
}

/// One row per flag point over GF(p), plus the polynomial and codimension
/// summaries.
#[derive(Debug, Clone)]
pub struct GeometryReport {
    pub sink: VertexId,
    pub prime: u64,
    pub rows: Vec<PointRow>,
    pub counting: CountingReport,
    pub codim: CodimReport,
    /// observed minimum of ext^1 over the sampled points (reported, not
    /// asserted against the codimension)
    pub min_ext1_observed: Option<i64>,
}

#[derive(Debug, Clone)]
pub struct PointRow {
    pub index: usize,
    pub strata: Vec<i64>,
    pub tangent: usize,
    pub ext1: i64,
}

pub fn geometry_report(
    rs: &RootSystem,
    class: &IsoClass,
    f: &Filtration,
    p: u64,
) -> Result<GeometryReport> {
    let q = rs.quiver();
    let sink = *q
        .admissible_ordering()?
        .first()
        .ok_or_else(|| Error::Internal("quiver without vertices".into()))?;
    let rep = rs.rep_of_class(class, p)?;
    let points = enumerate_flag_points(&rep, f)?;
    let mut rows = Vec::with_capacity(points.len());
    for (index, point) in points.iter().enumerate() {
        let strata = strata_profile(&rep, point, sink)?;
        let tangent = tangent_dim(&rep, point)?;
        let u = flag_chain(&rep, point)?;
        let v = quotient_chain(&rep, point)?;
        let euler = euler_form_chain(q, &u.dims(), &v.dims())?;
        rows.push(PointRow {
            index,
            strata,
            tangent,
            ext1: tangent as i64 - euler,
        });
    }
    let counting = flag_counting_polynomial(rs, class, f)?;
    let codim = codim_report(rs, f)?;
    let min_ext1_observed = rows.iter().map(|r| r.ext1).min();
    Ok(GeometryReport {
        sink,
        prime: p,
        rows,
        counting,
        codim,
        min_ext1_observed,
    })
}

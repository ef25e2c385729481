//! Positive roots of Dynkin quivers, construction of the indecomposable
//! representation for each root, and Krull-Schmidt classification by
//! hom-counting.

use crate::error::{Error, Result};
use crate::fp::Subspace;
use crate::quiver::{DimVector, Quiver, VertexId};
use crate::reflection::{reflect_sink, reflect_source};
use crate::rep::{hom_dim, Representation};
use std::cell::RefCell;
use std::collections::HashMap;

/// Checks that the underlying graph is a (connected) simply laced Dynkin
/// diagram, via positive definiteness of the symmetrised Cartan matrix.
pub fn is_dynkin(q: &Quiver) -> bool {
    let n = q.n_vertices();
    if n == 0 {
        return false;
    }
    // connectivity of the underlying graph
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        let v = q.vertices()[i];
        for a in q.arrows() {
            let other = if a.source == v {
                Some(a.target)
            } else if a.target == v {
                Some(a.source)
            } else {
                None
            };
            if let Some(u) = other {
                let j = q.vertex_index(u).expect("validated");
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return false;
    }
    // symmetrised Cartan matrix: C_ij = (eps_i, eps_j)
    let mut cartan = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let ei = DimVector::unit(n, i);
            let ej = DimVector::unit(n, j);
            cartan[i][j] = q.symmetrized_form(&ei, &ej).expect("lengths match");
        }
    }
    // positive definite iff all leading principal minors are positive
    leading_minors_positive(&cartan)
}

fn leading_minors_positive(m: &[Vec<i64>]) -> bool {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{Signed, Zero};
    let n = m.len();
    // fraction-free enough at this size: rational Gaussian elimination,
    // tracking the sign of each leading minor
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| BigRational::from(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut det = BigRational::from(BigInt::from(1));
    for k in 0..n {
        if a[k][k].is_zero() {
            return false;
        }
        det *= a[k][k].clone();
        if !det.is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let sub = &f * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    true
}

/// The positive roots of a Dynkin quiver: the closure of the simple roots
/// under all reflections, intersected with the positive vectors, sorted by
/// height and then lexicographically.
pub fn positive_roots(q: &Quiver) -> Result<RootSystem> {
    if !is_dynkin(q) {
        return Err(Error::NotDynkin);
    }
    let n = q.n_vertices();
    let mut roots: Vec<DimVector> = (0..n).map(|i| DimVector::unit(n, i)).collect();
    let mut frontier = roots.clone();
    while let Some(r) = frontier.pop() {
        for &a in q.vertices() {
            let refl = q.reflect_dim_vector(a, &r)?;
            if refl.is_nonnegative() && !refl.is_zero() && !roots.contains(&refl) {
                roots.push(refl.clone());
                frontier.push(refl);
            }
        }
    }
    roots.sort_by(|a, b| (a.total(), a.entries()).cmp(&(b.total(), b.entries())));
    Ok(RootSystem {
        quiver: q.clone(),
        roots,
        classifiers: RefCell::new(HashMap::new()),
    })
}

/// The positive roots of a Dynkin quiver in a fixed order, together with
/// cached per-prime classification data.
///
/// The caches use interior mutability, so share instances within one thread
/// and build one per thread for parallel classification.
#[derive(Debug)]
pub struct RootSystem {
    quiver: Quiver,
    roots: Vec<DimVector>,
    classifiers: RefCell<HashMap<u64, ClassifierData>>,
}

#[derive(Debug)]
struct ClassifierData {
    /// the root indecomposables over this prime, in root order
    indecs: Vec<Representation>,
    /// hom-dimension matrix [X_alpha, X_beta], row alpha, column beta
    hom_matrix: Vec<Vec<i64>>,
    /// root indices ordered so that the matrix is unitriangular
    topo: Vec<usize>,
    /// memoised classification of small representations by signature
    memo: HashMap<(Vec<i64>, Vec<u64>), IsoClass>,
}

/// An isomorphism class of representations: a multiplicity for every
/// positive root, in root-system order. Field independent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoClass {
    mults: Vec<u32>,
}

impl IsoClass {
    pub fn new(mults: Vec<u32>) -> Self {
        IsoClass { mults }
    }

    pub fn zero(n_roots: usize) -> Self {
        IsoClass {
            mults: vec![0; n_roots],
        }
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn is_zero(&self) -> bool {
        self.mults.iter().all(|&m| m == 0)
    }

    pub fn add(&self, other: &IsoClass) -> IsoClass {
        IsoClass {
            mults: self
                .mults
                .iter()
                .zip(&other.mults)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl RootSystem {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, d: &DimVector) -> Result<usize> {
        self.roots.iter().position(|r| r == d).ok_or(Error::NotARoot)
    }

    /// The class of a single indecomposable.
    pub fn class_of_root(&self, d: &DimVector) -> Result<IsoClass> {
        let idx = self.root_index(d)?;
        let mut mults = vec![0; self.roots.len()];
        mults[idx] = 1;
        Ok(IsoClass { mults })
    }

    pub fn class_of_simple(&self, v: VertexId) -> Result<IsoClass> {
        let idx = self.quiver.vertex_index(v)?;
        self.class_of_root(&DimVector::unit(self.quiver.n_vertices(), idx))
    }

    pub fn dim_of_class(&self, class: &IsoClass) -> DimVector {
        let mut d = DimVector::zero(self.quiver.n_vertices());
        for (root, &m) in self.roots.iter().zip(&class.mults) {
            if m > 0 {
                d = d.add(&root.scale(m as i64));
            }
        }
        d
    }

    /// Deterministic text form: `mult x root` summands in root order.
    pub fn class_to_string(&self, class: &IsoClass) -> String {
        if class.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (root, &m) in self.roots.iter().zip(&class.mults) {
            if m > 0 {
                parts.push(format!("{m}x{root}"));
            }
        }
        parts.join(" + ")
    }

    /// All iso classes with the given dimension vector.
    pub fn classes_with_dim(&self, d: &DimVector) -> Vec<IsoClass> {
        let mut out = Vec::new();
        let mut mults = vec![0u32; self.roots.len()];
        // roots are sorted by height; recurse from the tallest for pruning
        fn recurse(
            roots: &[DimVector],
            idx: usize,
            remaining: &DimVector,
            mults: &mut Vec<u32>,
            out: &mut Vec<IsoClass>,
        ) {
            if remaining.is_zero() {
                let mut m = mults.clone();
                for v in m[..idx].iter_mut() {
                    *v = 0;
                }
                m[..idx].copy_from_slice(&mults[..idx]);
                out.push(IsoClass { mults: m });
                return;
            }
            if idx == 0 {
                return;
            }
            let root = &roots[idx - 1];
            let mut max_copies = i64::MAX;
            for (r, rem) in root.entries().iter().zip(remaining.entries()) {
                if *r > 0 {
                    max_copies = max_copies.min(rem / r);
                }
            }
            for copies in (0..=max_copies.max(0)).rev() {
                mults[idx - 1] = copies as u32;
                let rest = remaining.sub(&root.scale(copies));
                if rest.is_nonnegative() {
                    recurse(roots, idx - 1, &rest, mults, out);
                }
            }
            mults[idx - 1] = 0;
        }
        recurse(&self.roots, self.roots.len(), d, &mut mults, &mut out);
        out.sort();
        out
    }

    /// The indecomposable representation with the given root as dimension
    /// vector, built by reflecting a simple back along the admissible
    /// ordering.
    pub fn indecomposable(&self, root: &DimVector, p: u64) -> Result<Representation> {
        self.root_index(root)?;
        let ordering = self.quiver.admissible_ordering()?;
        let bound = 4 * self.roots.len() * ordering.len() + 4;
        let mut word = Vec::new();
        let mut cur_quiver = self.quiver.clone();
        let mut cur_root = root.clone();
        let mut step = 0usize;
        let simple_vertex = loop {
            if let Some(idx) = simple_index(&cur_root) {
                break cur_quiver.vertices()[idx];
            }
            if step >= bound {
                return Err(Error::TerminationExceeded);
            }
            let a = ordering[step % ordering.len()];
            if !cur_quiver.is_sink(a) {
                return Err(Error::Internal("ordering lost admissibility".into()));
            }
            cur_root = cur_quiver.reflect_dim_vector(a, &cur_root)?;
            if !cur_root.is_nonnegative() {
                return Err(Error::Internal(
                    "reflection of a positive root left the positive cone".into(),
                ));
            }
            cur_quiver = cur_quiver.reflect_at(a)?;
            word.push(a);
            step += 1;
        };
        let mut rep = Representation::simple(&cur_quiver, p, simple_vertex)?;
        for &a in word.iter().rev() {
            rep = reflect_source(&rep, a)?;
        }
        if rep.dim_vector() != root {
            return Err(Error::Internal(
                "indecomposable construction produced the wrong dimension vector".into(),
            ));
        }
        Ok(rep)
    }

    /// A representation in the given class: the direct sum of the root
    /// indecomposables with multiplicity.
    pub fn rep_of_class(&self, class: &IsoClass, p: u64) -> Result<Representation> {
        self.ensure_classifier(p)?;
        let cache = self.classifiers.borrow();
        let data = cache.get(&p).expect("ensured");
        let mut summands = Vec::new();
        for (idx, &m) in class.mults.iter().enumerate() {
            for _ in 0..m {
                summands.push(&data.indecs[idx]);
            }
        }
        if summands.is_empty() {
            return Representation::zero(self.quiver.clone(), p);
        }
        Representation::direct_sum(&summands)
    }

    fn ensure_classifier(&self, p: u64) -> Result<()> {
        if self.classifiers.borrow().contains_key(&p) {
            return Ok(());
        }
        let n = self.roots.len();
        let indecs: Vec<Representation> = self
            .roots
            .iter()
            .map(|r| self.indecomposable(r, p))
            .collect::<Result<_>>()?;
        let mut hom_matrix = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                hom_matrix[i][j] = hom_dim(&indecs[i], &indecs[j])? as i64;
            }
        }
        for (i, row) in hom_matrix.iter().enumerate() {
            if row[i] != 1 {
                return Err(Error::Internal(
                    "indecomposable has endomorphism dimension != 1".into(),
                ));
            }
        }
        // topological order of the relation i -> j iff [X_i, X_j] != 0;
        // unitriangularity of the hom matrix under this order
        let mut topo = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while topo.len() < n {
            let next = (0..n).find(|&i| {
                !placed[i]
                    && (0..n).all(|j| placed[j] || j == i || hom_matrix[j][i] == 0)
            });
            let Some(i) = next else {
                return Err(Error::Internal(
                    "hom relation between indecomposables has a cycle".into(),
                ));
            };
            placed[i] = true;
            topo.push(i);
        }
        self.classifiers.borrow_mut().insert(
            p,
            ClassifierData {
                indecs,
                hom_matrix,
                topo,
                memo: HashMap::new(),
            },
        );
        Ok(())
    }

    /// The class of the semisimple representation with the given dimensions.
    pub fn semisimple_class(&self, d: &DimVector) -> Result<IsoClass> {
        let mut class = IsoClass::zero(self.roots.len());
        for (i, &v) in self.quiver.vertices().iter().enumerate() {
            for _ in 0..d.get(i).max(0) {
                class = class.add(&self.class_of_simple(v)?);
            }
        }
        Ok(class)
    }

    /// Classifies the subrepresentation carried by invariant subspaces
    /// without materialising it when the signature has been seen before.
    pub(crate) fn classify_restriction(
        &self,
        x: &Representation,
        bases: &[Subspace],
    ) -> Result<IsoClass> {
        let p = x.modulus();
        let q = x.quiver();
        let dims: Vec<i64> = bases.iter().map(|s| s.dim() as i64).collect();
        let mut entries = Vec::new();
        for (idx, arrow) in q.arrows().iter().enumerate() {
            let src = q.vertex_index(arrow.source)?;
            let tgt = q.vertex_index(arrow.target)?;
            let rows = bases[tgt].dim();
            let cols = bases[src].dim();
            let start = entries.len();
            entries.resize(start + rows * cols, 0u64);
            let m = x.matrix(idx);
            for c in 0..cols {
                // invariance is guaranteed by the caller, so the echelon
                // coordinates are just the pivot entries of the image
                let img = m.apply(bases[src].basis().row(c))?;
                for (r, &piv) in bases[tgt].pivots().iter().enumerate() {
                    entries[start + r * cols + c] = img[piv];
                }
            }
        }
        self.ensure_classifier(p)?;
        if let Some(hit) = self
            .classifiers
            .borrow()
            .get(&p)
            .and_then(|d| d.memo.get(&(dims.clone(), entries.clone())))
        {
            return Ok(hit.clone());
        }
        self.classify(&x.restrict_to(bases)?)
    }

    /// Classifies the quotient by invariant subspaces, memoised like
    /// [`RootSystem::classify_restriction`].
    pub(crate) fn classify_quotient(
        &self,
        x: &Representation,
        bases: &[Subspace],
    ) -> Result<IsoClass> {
        let p = x.modulus();
        let q = x.quiver();
        let dims: Vec<i64> = bases
            .iter()
            .map(|s| (s.ambient() - s.dim()) as i64)
            .collect();
        let mut entries = Vec::new();
        let mut column = Vec::new();
        for (idx, arrow) in q.arrows().iter().enumerate() {
            let src = q.vertex_index(arrow.source)?;
            let tgt = q.vertex_index(arrow.target)?;
            let comp_src = bases[src].complement_coords();
            let comp_tgt = bases[tgt].complement_coords();
            let rows = comp_tgt.len();
            let cols = comp_src.len();
            let start = entries.len();
            entries.resize(start + rows * cols, 0u64);
            let m = x.matrix(idx);
            for (c, &src_coord) in comp_src.iter().enumerate() {
                column.clear();
                column.extend((0..m.rows()).map(|r| m.get(r, src_coord)));
                let reduced = bases[tgt].reduce(&column);
                for (r, &tgt_coord) in comp_tgt.iter().enumerate() {
                    entries[start + r * cols + c] = reduced[tgt_coord];
                }
            }
        }
        self.ensure_classifier(p)?;
        if let Some(hit) = self
            .classifiers
            .borrow()
            .get(&p)
            .and_then(|d| d.memo.get(&(dims.clone(), entries.clone())))
        {
            return Ok(hit.clone());
        }
        self.classify(&x.quotient_by(bases)?.0)
    }

    /// The Krull-Schmidt class of a representation, determined by the
    /// hom-vector against all root indecomposables: solves the unitriangular
    /// system `H m = h` exactly over the integers.
    pub fn classify(&self, m: &Representation) -> Result<IsoClass> {
        if m.quiver() != &self.quiver {
            return Err(Error::QuiverMismatch);
        }
        let p = m.modulus();
        let signature = m.signature();
        self.ensure_classifier(p)?;
        {
            let cache = self.classifiers.borrow();
            if let Some(class) = cache.get(&p).and_then(|d| d.memo.get(&signature)) {
                return Ok(class.clone());
            }
        }
        let n = self.roots.len();
        let class = {
            let cache = self.classifiers.borrow();
            let data = cache.get(&p).expect("ensured");
            let mut h = vec![0i64; n];
            for i in 0..n {
                h[i] = hom_dim(&data.indecs[i], m)? as i64;
            }
            // back substitution in topological order: the last placed root
            // receives no nontrivial homs from the others
            let mut mults = vec![0i64; n];
            for &i in data.topo.iter().rev() {
                let mut val = h[i];
                for j in 0..n {
                    if j != i {
                        val -= data.hom_matrix[i][j] * mults[j];
                    }
                }
                mults[i] = val;
            }
            for i in 0..n {
                let total: i64 = (0..n).map(|j| data.hom_matrix[i][j] * mults[j]).sum();
                if total != h[i] {
                    return Err(Error::Internal("classification system inconsistent".into()));
                }
            }
            if mults.iter().any(|&x| x < 0) {
                return Err(Error::Internal(
                    "negative multiplicity in classification".into(),
                ));
            }
            IsoClass {
                mults: mults.iter().map(|&x| x as u32).collect(),
            }
        };
        if &self.dim_of_class(&class) != m.dim_vector() {
            return Err(Error::Internal(
                "classified multiplicities do not reproduce the dimension vector".into(),
            ));
        }
        self.classifiers
            .borrow_mut()
            .get_mut(&p)
            .expect("ensured")
            .memo
            .insert(signature, class.clone());
        Ok(class)
    }
}

fn simple_index(d: &DimVector) -> Option<usize> {
    let mut idx = None;
    for (i, &x) in d.entries().iter().enumerate() {
        match x {
            0 => {}
            1 if idx.is_none() => idx = Some(i),
            _ => return None,
        }
    }
    idx
}

/// Sink reflection on the level of iso classes via the representation side.
pub fn reflect_sink_class(
    rs: &RootSystem,
    rs_reflected: &RootSystem,
    class: &IsoClass,
    a: VertexId,
    p: u64,
) -> Result<IsoClass> {
    let rep = rs.rep_of_class(class, p)?;
    let reflected = reflect_sink(&rep, a)?;
    rs_reflected.classify(&reflected)
}

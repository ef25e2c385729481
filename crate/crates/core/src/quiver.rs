//! Quivers, dimension vectors, Euler forms and the combinatorial reflections.

use crate::error::{Error, Result};
use std::fmt;

pub type VertexId = u32;

/// A labelled arrow of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite directed graph with ordered vertices and labelled arrows.
///
/// The vertex order is fixed at construction; all per-vertex data
/// (dimension vectors, representation spaces) is stored in that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<VertexId>, arrows: Vec<Arrow>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::DuplicateVertex(*v));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if arrows[..i].iter().any(|b| b.id == a.id) {
                return Err(Error::DuplicateArrow(a.id.clone()));
            }
            for v in [a.source, a.target] {
                if !vertices.contains(&v) {
                    return Err(Error::BadArrowEndpoint {
                        id: a.id.clone(),
                        vertex: v,
                    });
                }
            }
        }
        Ok(Self { vertices, arrows })
    }

    /// Convenience constructor from `(id, source, target)` triples.
    pub fn from_arrows(vertices: Vec<VertexId>, arrows: &[(&str, VertexId, VertexId)]) -> Result<Self> {
        Self::new(
            vertices,
            arrows
                .iter()
                .map(|(id, s, t)| Arrow {
                    id: (*id).to_string(),
                    source: *s,
                    target: *t,
                })
                .collect(),
        )
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, v: VertexId) -> Result<usize> {
        self.vertices
            .iter()
            .position(|&u| u == v)
            .ok_or(Error::UnknownVertex(v))
    }

    pub fn arrows_into(&self, v: VertexId) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
    }

    pub fn arrows_out_of(&self, v: VertexId) -> impl Iterator<Item = (usize, &Arrow)> {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
    }

    pub fn has_loop_at(&self, v: VertexId) -> bool {
        self.arrows.iter().any(|a| a.source == v && a.target == v)
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.arrows.iter().all(|a| a.source != v)
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.arrows.iter().all(|a| a.target != v)
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm on the vertex list.
        let n = self.n_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            let t = self.vertex_index(a.target).expect("validated");
            indeg[t] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = stack.pop() {
            seen += 1;
            let v = self.vertices[i];
            for (_, a) in self.arrows_out_of(v) {
                let t = self.vertex_index(a.target).expect("validated");
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == n
    }

    /// The opposite quiver: same vertices and arrow ids, arrows reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    id: a.id.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// The Euler (Ringel) form `<d,e> = sum_i d_i e_i - sum_{a:i->j} d_i e_j`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_dim(d)?;
        self.check_dim(e)?;
        let mut acc: i64 = d
            .entries()
            .iter()
            .zip(e.entries())
            .map(|(a, b)| a * b)
            .sum();
        for a in &self.arrows {
            let i = self.vertex_index(a.source)?;
            let j = self.vertex_index(a.target)?;
            acc -= d.get(i) * e.get(j);
        }
        Ok(acc)
    }

    /// The symmetrised form `(d,e) = <d,e> + <e,d>`.
    pub fn symmetrized_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        Ok(self.euler_form(d, e)? + self.euler_form(e, d)?)
    }

    /// The reflection `sigma_a d = d - (d, eps_a) eps_a`.
    pub fn reflect_dim_vector(&self, a: VertexId, d: &DimVector) -> Result<DimVector> {
        let idx = self.vertex_index(a)?;
        if self.has_loop_at(a) {
            return Err(Error::LoopAtVertex(a));
        }
        self.check_dim(d)?;
        let unit = DimVector::unit(self.n_vertices(), idx);
        let c = self.symmetrized_form(d, &unit)?;
        let mut out = d.clone();
        out.set(idx, d.get(idx) - c);
        Ok(out)
    }

    /// The reflected quiver `sigma_a Q`: all arrows at `a` reversed, their ids
    /// starred. A doubly starred id is identified with the original.
    pub fn reflect_at(&self, a: VertexId) -> Result<Quiver> {
        self.vertex_index(a)?;
        let arrows = self
            .arrows
            .iter()
            .map(|ar| {
                if ar.source == a || ar.target == a {
                    Arrow {
                        id: toggle_star(&ar.id),
                        source: ar.target,
                        target: ar.source,
                    }
                } else {
                    ar.clone()
                }
            })
            .collect();
        Ok(Quiver {
            vertices: self.vertices.clone(),
            arrows,
        })
    }

    /// All admissible orderings: sequences using each vertex once, where each
    /// entry is a sink of the quiver reflected at all earlier entries.
    pub fn admissible_orderings(&self) -> Result<Vec<Vec<VertexId>>> {
        if !self.is_acyclic() {
            return Err(Error::CyclicQuiver);
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        fn recurse(q: &Quiver, prefix: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
            if prefix.len() == q.n_vertices() {
                out.push(prefix.clone());
                return;
            }
            for &v in q.vertices() {
                if prefix.contains(&v) || !q.is_sink(v) {
                    continue;
                }
                let reflected = q.reflect_at(v).expect("vertex exists");
                prefix.push(v);
                recurse(&reflected, prefix, out);
                prefix.pop();
            }
        }
        recurse(self, &mut prefix, &mut out);
        Ok(out)
    }

    /// The fixed admissible ordering used by the Coxeter-style iterations.
    pub fn admissible_ordering(&self) -> Result<Vec<VertexId>> {
        let mut all = self.admissible_orderings()?;
        if all.is_empty() {
            return Err(Error::CyclicQuiver);
        }
        Ok(all.swap_remove(0))
    }

    pub fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.n_vertices() {
            return Err(Error::IndexMismatch {
                expected: self.n_vertices(),
                got: d.len(),
            });
        }
        Ok(())
    }

    /// The flag type whose flags of a representation `X` are counted by the
    /// coefficient of `u_X` in the Hall product along `w`: level `k` adds the
    /// simple of the `(nu - k + 1)`-th letter, so the first letter of `w`
    /// becomes the top quotient.
    pub fn word_to_filtration(&self, w: &Word) -> Result<Filtration> {
        if w.letters().is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        let n = self.n_vertices();
        let nu = w.letters().len();
        let mut steps = Vec::with_capacity(nu + 1);
        steps.push(DimVector::zero(n));
        for k in 1..=nu {
            let letter = w.letters()[nu - k];
            let idx = self.vertex_index(letter)?;
            let prev = steps.last().expect("nonempty");
            let mut next = prev.clone();
            next.set(idx, next.get(idx) + 1);
            steps.push(next);
        }
        Filtration::new(steps)
    }
}

fn toggle_star(id: &str) -> String {
    match id.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{id}*"),
    }
}

/// A per-vertex integer vector. Entries may be negative transiently
/// (reflections of differences); filtrations reject negative entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> Self {
        DimVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, idx: usize) -> Self {
        let mut v = vec![0; n];
        v[idx] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, idx: usize) -> i64 {
        self.0[idx]
    }

    pub fn set(&mut self, idx: usize, v: i64) {
        self.0[idx] = v;
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise partial order.
    pub fn leq(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A weakly increasing sequence of dimension vectors starting at zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Filtration {
    steps: Vec<DimVector>,
}

impl Filtration {
    pub fn new(steps: Vec<DimVector>) -> Result<Self> {
        if steps.len() < 2 {
            return Err(Error::NotAFiltration("needs at least two levels".into()));
        }
        if !steps[0].is_zero() {
            return Err(Error::NotAFiltration("first level must be zero".into()));
        }
        let n = steps[0].len();
        for w in steps.windows(2) {
            if w[1].len() != n {
                return Err(Error::NotAFiltration("levels have unequal lengths".into()));
            }
            if !w[0].leq(&w[1]) {
                return Err(Error::NotAFiltration(format!(
                    "level {} does not dominate its predecessor",
                    w[1]
                )));
            }
        }
        Ok(Self { steps })
    }

    /// Number of strict steps nu (levels run 0..=nu).
    pub fn nu(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn steps(&self) -> &[DimVector] {
        &self.steps
    }

    pub fn step(&self, k: usize) -> &DimVector {
        &self.steps[k]
    }

    pub fn top(&self) -> &DimVector {
        self.steps.last().expect("nonempty")
    }

    pub fn is_filtration_of(&self, d: &DimVector) -> bool {
        self.top() == d
    }

    /// The complement filtration `e^i = d^nu - d^(nu-i)` used by duality.
    pub fn complement(&self) -> Filtration {
        let nu = self.nu();
        let top = self.top().clone();
        let steps = (0..=nu).map(|i| top.sub(&self.steps[nu - i])).collect();
        Filtration { steps }
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// A word in the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<VertexId>);

impl Word {
    pub fn new(letters: Vec<VertexId>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Total dimension vector added along the word.
    pub fn weight(&self, q: &Quiver) -> Result<DimVector> {
        let mut d = DimVector::zero(q.n_vertices());
        for &l in &self.0 {
            let idx = q.vertex_index(l)?;
            d.set(idx, d.get(idx) + 1);
        }
        Ok(d)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn euler_form_on_a2() {
        let q = fixtures::a2();
        let e1 = DimVector::unit(2, 0);
        let e2 = DimVector::unit(2, 1);
        assert_eq!(q.euler_form(&e1, &e2).unwrap(), -1);
        let d = DimVector::new(vec![1, 1]);
        assert_eq!(q.euler_form(&d, &d).unwrap(), 1);
        let z = DimVector::zero(2);
        assert_eq!(q.euler_form(&d, &z).unwrap(), 0);
    }

    #[test]
    fn euler_form_rejects_bad_length() {
        let q = fixtures::a2();
        let d = DimVector::new(vec![1, 1, 1]);
        assert!(matches!(
            q.euler_form(&d, &d),
            Err(Error::IndexMismatch { .. })
        ));
    }

    #[test]
    fn reflect_dim_vector_examples() {
        let q = fixtures::a2();
        let d = DimVector::new(vec![1, 1]);
        assert_eq!(q.reflect_dim_vector(2, &d).unwrap().entries(), &[1, 0]);
        let e2 = DimVector::unit(2, 1);
        assert_eq!(q.reflect_dim_vector(2, &e2).unwrap().entries(), &[0, -1]);
        let neg = DimVector::new(vec![-1, -1]);
        assert_eq!(q.reflect_dim_vector(2, &neg).unwrap().entries(), &[-1, 0]);
    }

    #[test]
    fn reflect_quiver_examples() {
        let q = fixtures::a2();
        let r = q.reflect_at(2).unwrap();
        assert_eq!(r.arrows()[0].source, 2);
        assert_eq!(r.arrows()[0].target, 1);
        assert_eq!(r.arrows()[0].id, "a*");
        assert_eq!(r.reflect_at(2).unwrap(), q);

        let a3 = fixtures::a3();
        let r = a3.reflect_at(3).unwrap();
        assert_eq!(r.arrows()[0].source, 1);
        assert_eq!(r.arrows()[0].target, 2);
        assert_eq!(r.arrows()[1].source, 3);
        assert_eq!(r.arrows()[1].target, 2);

        assert!(matches!(q.reflect_at(9), Err(Error::UnknownVertex(9))));
    }

    #[test]
    fn word_filtration_convention() {
        let q = fixtures::a2();
        let f = q.word_to_filtration(&Word::new(vec![1, 2])).unwrap();
        assert_eq!(
            f.steps(),
            &[
                DimVector::zero(2),
                DimVector::new(vec![0, 1]),
                DimVector::new(vec![1, 1])
            ]
        );
        let f = q.word_to_filtration(&Word::new(vec![2, 1])).unwrap();
        assert_eq!(
            f.steps(),
            &[
                DimVector::zero(2),
                DimVector::new(vec![1, 0]),
                DimVector::new(vec![1, 1])
            ]
        );
        let a1 = fixtures::a1();
        let f = a1.word_to_filtration(&Word::new(vec![1, 1])).unwrap();
        assert_eq!(
            f.steps(),
            &[
                DimVector::zero(1),
                DimVector::new(vec![1]),
                DimVector::new(vec![2])
            ]
        );
    }

    #[test]
    fn admissible_orderings_examples() {
        assert_eq!(
            fixtures::a2().admissible_orderings().unwrap(),
            vec![vec![2, 1]]
        );
        assert_eq!(fixtures::a1().admissible_orderings().unwrap(), vec![vec![1]]);
        assert_eq!(
            fixtures::a3().admissible_orderings().unwrap(),
            vec![vec![3, 2, 1]]
        );
        let cyclic = Quiver::from_arrows(vec![1, 2], &[("a", 1, 2), ("b", 2, 1)]).unwrap();
        assert!(matches!(
            cyclic.admissible_orderings(),
            Err(Error::CyclicQuiver)
        ));
    }

    #[test]
    fn reflection_is_involutive_and_preserves_symmetrized_form() {
        let q = fixtures::a3();
        let d = DimVector::new(vec![2, -1, 3]);
        let e = DimVector::new(vec![0, 4, 1]);
        for &a in q.vertices() {
            let rd = q.reflect_dim_vector(a, &d).unwrap();
            let re = q.reflect_dim_vector(a, &e).unwrap();
            assert_eq!(q.reflect_dim_vector(a, &rd).unwrap(), d);
            // the symmetrised form is orientation-independent, so it can be
            // evaluated on sigma_a Q with the reflected arguments
            let rq = q.reflect_at(a).unwrap();
            assert_eq!(
                q.symmetrized_form(&d, &e).unwrap(),
                rq.symmetrized_form(&rd, &re).unwrap()
            );
        }
    }

    #[test]
    fn reflection_rejects_loops() {
        let looped = Quiver::from_arrows(vec![1], &[("l", 1, 1)]).unwrap();
        let d = DimVector::new(vec![2]);
        assert!(matches!(
            looped.reflect_dim_vector(1, &d),
            Err(Error::LoopAtVertex(1))
        ));
    }

    #[test]
    fn filtration_validation() {
        let bad = Filtration::new(vec![DimVector::new(vec![1]), DimVector::new(vec![2])]);
        assert!(bad.is_err());
        let bad = Filtration::new(vec![
            DimVector::zero(2),
            DimVector::new(vec![2, 0]),
            DimVector::new(vec![1, 1]),
        ]);
        assert!(bad.is_err());
        let ok = Filtration::new(vec![
            DimVector::zero(2),
            DimVector::new(vec![1, 1]),
            DimVector::new(vec![2, 2]),
        ]);
        assert!(ok.is_ok());
    }
}

//! Exact linear algebra over prime fields GF(p).
//!
//! Matrices are dense with entries reduced into `[0, p)`. Vectors are columns
//! and maps compose right to left, so the matrix of a map `k^n -> k^m` has
//! shape `m x n`. Subspaces are kept in reduced row echelon form, which makes
//! every subspace have a unique representative and enumeration deterministic.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The first `count` primes, smallest first.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut n = 2;
    while primes.len() < count {
        if is_prime(n) {
            primes.push(n);
        }
        n += 1;
    }
    primes
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce_int(x: i64, p: u64) -> u64 {
    let m = x.rem_euclid(p as i64);
    m as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0, so a^(p-2) works.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// A dense matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut m = Self::zero(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Build from row-major signed entries; entries are reduced mod p.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged row lengths".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| reduce_int(x, p)))
            .collect();
        Ok(Self {
            p,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data: vec![0; self.rows * other.cols],
        };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.data[i * other.cols + j];
                    out.data[i * other.cols + j] = (cur + a * other.get(k, j)) % self.p;
                }
            }
        }
        Ok(out)
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::IndexMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u64;
            for j in 0..self.cols {
                acc = (acc + self.get(i, j) * (v[j] % self.p)) % self.p;
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack row mismatch".into()));
        }
        let mut out = FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols + other.cols,
            data: vec![0; self.rows * (self.cols + other.cols)],
        };
        for i in 0..self.rows {
            out.data[i * out.cols..i * out.cols + self.cols].copy_from_slice(self.row(i));
            out.data[i * out.cols + self.cols..(i + 1) * out.cols].copy_from_slice(other.row(i));
        }
        Ok(out)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let tmp = m.get(r, j);
                    m.set(r, j, m.get(pr, j));
                    m.set(pr, j, tmp);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in 0..m.cols {
                m.set(r, j, m.get(r, j) * inv % p);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + (p - f) * m.get(r, j)) % p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let aug = self.hstack(&FpMatrix::identity(self.p, self.rows)?)?;
        let (red, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::ShapeMismatch("matrix is singular".into()));
        }
        let mut inv = FpMatrix::zero(self.p, self.rows, self.rows)?;
        for i in 0..self.rows {
            for j in 0..self.rows {
                inv.set(i, j, red.get(i, self.rows + j));
            }
        }
        Ok(inv)
    }
}

/// Rank together with a canonical kernel basis.
///
/// The basis is the unique reduced echelon basis of the kernel (vectors read
/// as columns give reduced column echelon form), so re-echelonising the
/// output is the identity operation.
pub fn rank_kernel(a: &FpMatrix) -> (usize, Vec<Vec<u64>>) {
    let p = a.modulus();
    let (red, pivots) = a.rref();
    let rank = pivots.len();
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return (rank, Vec::new());
    }
    let mut rows = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![0u64; a.cols()];
        v[f] = 1;
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = (p - red.get(row, f)) % p;
        }
        rows.push(v);
    }
    let raw = FpMatrix {
        p,
        rows: rows.len(),
        cols: a.cols(),
        data: rows.concat(),
    };
    let (canonical, _) = raw.rref();
    let basis = (0..free.len()).map(|i| canonical.row(i).to_vec()).collect();
    (rank, basis)
}

/// A particular solution together with the homogeneous kernel basis.
pub type AffineSolution = (Vec<u64>, Vec<Vec<u64>>);

/// Solve `A x = b`; returns a particular solution and the kernel basis,
/// or `None` when `b` is not in the image of `A`.
pub fn solve_affine(a: &FpMatrix, b: &[u64]) -> Result<Option<AffineSolution>> {
    if b.len() != a.rows() {
        return Err(Error::IndexMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let p = a.modulus();
    let mut col = FpMatrix::zero(p, a.rows(), 1)?;
    for (i, &x) in b.iter().enumerate() {
        col.set(i, 0, x % p);
    }
    let aug = a.hstack(&col)?;
    let (red, pivots) = aug.rref();
    if pivots.contains(&a.cols()) {
        return Ok(None);
    }
    let mut x = vec![0u64; a.cols()];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = red.get(row, a.cols());
    }
    let (_, kernel) = rank_kernel(a);
    Ok(Some((x, kernel)))
}

/// A subspace of GF(p)^n, stored as its unique reduced-row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u64, ambient: usize) -> Result<Self> {
        Ok(Self {
            basis: FpMatrix::zero(p, 0, ambient)?,
            pivots: Vec::new(),
        })
    }

    pub fn full(p: u64, ambient: usize) -> Result<Self> {
        Ok(Self {
            basis: FpMatrix::identity(p, ambient)?,
            pivots: (0..ambient).collect(),
        })
    }

    /// Span of the given row vectors.
    pub fn span(p: u64, rows: &[Vec<i64>], ambient: usize) -> Result<Self> {
        let mat = if rows.is_empty() {
            FpMatrix::zero(p, 0, ambient)?
        } else {
            FpMatrix::from_rows(p, rows)?
        };
        if mat.cols() != ambient {
            return Err(Error::IndexMismatch {
                expected: ambient,
                got: mat.cols(),
            });
        }
        Ok(Self::from_matrix(&mat))
    }

    /// Row space of a matrix, canonicalised.
    pub fn from_matrix(m: &FpMatrix) -> Self {
        let (red, pivots) = m.rref();
        let dim = pivots.len();
        let mut rows = Vec::with_capacity(dim * m.cols());
        for i in 0..dim {
            rows.extend_from_slice(red.row(i));
        }
        Subspace {
            basis: FpMatrix {
                p: m.modulus(),
                rows: dim,
                cols: m.cols(),
                data: rows,
            },
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn modulus(&self) -> u64 {
        self.basis.modulus()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the basis; the result is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.modulus();
        let mut w: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for (row, &c) in self.pivots.iter().enumerate() {
            if w[c] != 0 {
                let f = w[c];
                for j in 0..w.len() {
                    w[j] = (w[j] + (p - f) * self.basis.get(row, j)) % p;
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    /// Coordinates of a member vector in the echelon basis.
    ///
    /// Since the basis is in reduced row echelon form, the coordinate of the
    /// `t`-th basis vector is just the entry at its pivot column.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c] % self.modulus()).collect())
    }

    /// Columns outside the pivot set; they index the canonical complement.
    pub fn complement_coords(&self) -> Vec<usize> {
        (0..self.ambient())
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Matrix of the canonical projection GF(p)^n -> GF(p)^(n-dim)
    /// onto the complement coordinates (kernel = this subspace).
    pub fn projection_matrix(&self) -> Result<FpMatrix> {
        let p = self.modulus();
        let comp = self.complement_coords();
        let mut proj = FpMatrix::zero(p, comp.len(), self.ambient())?;
        for (r, &c) in comp.iter().enumerate() {
            proj.set(r, c, 1);
            for (row, &pc) in self.pivots.iter().enumerate() {
                let v = (p - self.basis.get(row, c)) % p;
                proj.set(r, pc, v);
            }
        }
        Ok(proj)
    }

    /// Matrix of the canonical section GF(p)^(n-dim) -> GF(p)^n of the projection.
    pub fn section_matrix(&self) -> Result<FpMatrix> {
        let comp = self.complement_coords();
        let mut sec = FpMatrix::zero(self.modulus(), self.ambient(), comp.len())?;
        for (col, &c) in comp.iter().enumerate() {
            sec.set(c, col, 1);
        }
        Ok(sec)
    }
}

/// Visit every r-dimensional subspace of GF(p)^n exactly once, as its
/// reduced-row-echelon basis. The total visited equals the Gaussian
/// binomial `[n choose r]_p`.
pub fn for_each_subspace<F: FnMut(&Subspace)>(p: u64, n: usize, r: usize, f: &mut F) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r > n {
        return Err(Error::SubspaceDimOutOfRange {
            r: r as i64,
            n: n as i64,
        });
    }
    let mut pivots = Vec::with_capacity(r);
    pick_pivots(p, n, r, 0, &mut pivots, f)?;
    Ok(())
}

fn pick_pivots<F: FnMut(&Subspace)>(
    p: u64,
    n: usize,
    r: usize,
    start: usize,
    pivots: &mut Vec<usize>,
    f: &mut F,
) -> Result<()> {
    if pivots.len() == r {
        fill_free_entries(p, n, pivots, f)?;
        return Ok(());
    }
    let remaining = r - pivots.len();
    for c in start..=(n - remaining) {
        pivots.push(c);
        pick_pivots(p, n, r, c + 1, pivots, f)?;
        pivots.pop();
    }
    Ok(())
}

fn fill_free_entries<F: FnMut(&Subspace)>(
    p: u64,
    n: usize,
    pivots: &[usize],
    f: &mut F,
) -> Result<()> {
    let r = pivots.len();
    // Free entries sit to the right of each pivot in non-pivot columns.
    let mut free_pos = Vec::new();
    for (row, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..n {
            if !pivots.contains(&c) {
                free_pos.push((row, c));
            }
        }
    }
    let mut mat = FpMatrix::zero(p, r, n)?;
    for (row, &pc) in pivots.iter().enumerate() {
        mat.set(row, pc, 1);
    }
    let mut counters = vec![0u64; free_pos.len()];
    loop {
        let sub = Subspace {
            basis: mat.clone(),
            pivots: pivots.to_vec(),
        };
        f(&sub);
        // odometer over the free entries
        let mut i = 0;
        loop {
            if i == counters.len() {
                return Ok(());
            }
            counters[i] += 1;
            if counters[i] < p {
                let (row, col) = free_pos[i];
                mat.set(row, col, counters[i]);
                break;
            }
            counters[i] = 0;
            let (row, col) = free_pos[i];
            mat.set(row, col, 0);
            i += 1;
        }
    }
}

/// All r-dimensional subspaces of GF(p)^n.
pub fn enumerate_subspaces(p: u64, n: usize, r: usize) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for_each_subspace(p, n, r, &mut |s| out.push(s.clone()))?;
    Ok(out)
}

/// Visit every r-dimensional subspace of GF(p)^n that contains `base`.
///
/// Enumerates (r - dim base)-dimensional subspaces of the canonical
/// complement quotient and lifts them through the section.
pub fn for_each_subspace_containing<F: FnMut(&Subspace)>(
    base: &Subspace,
    r: usize,
    f: &mut F,
) -> Result<()> {
    let s = base.dim();
    let n = base.ambient();
    if r < s || r > n {
        return Err(Error::SubspaceDimOutOfRange {
            r: r as i64,
            n: n as i64,
        });
    }
    if r == s {
        f(base);
        return Ok(());
    }
    let p = base.modulus();
    let sec = base.section_matrix()?;
    for_each_subspace(p, n - s, r - s, &mut |w| {
        let mut rows = Vec::with_capacity(r * n);
        for i in 0..base.dim() {
            rows.extend_from_slice(base.basis().row(i));
        }
        for i in 0..w.dim() {
            let lifted = sec.apply(w.basis().row(i)).expect("section shape");
            rows.extend_from_slice(&lifted);
        }
        let mat = FpMatrix {
            p,
            rows: r,
            cols: n,
            data: rows,
        };
        f(&Subspace::from_matrix(&mat));
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_kernel_examples() {
        let a = FpMatrix::from_rows(2, &[vec![1, 0], vec![0, 0]]).unwrap();
        let (rank, kernel) = rank_kernel(&a);
        assert_eq!(rank, 1);
        assert_eq!(kernel, vec![vec![0, 1]]);

        let id = FpMatrix::identity(3, 2).unwrap();
        let (rank, kernel) = rank_kernel(&id);
        assert_eq!(rank, 2);
        assert!(kernel.is_empty());

        let z = FpMatrix::zero(2, 2, 3).unwrap();
        let (rank, kernel) = rank_kernel(&z);
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 3);
    }

    #[test]
    fn rank_kernel_dimension_count() {
        let a = FpMatrix::from_rows(5, &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let (rank, kernel) = rank_kernel(&a);
        assert_eq!(rank + kernel.len(), a.cols());
        for v in &kernel {
            assert!(a.apply(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_affine_examples() {
        let id = FpMatrix::identity(5, 3).unwrap();
        let (x, hom) = solve_affine(&id, &[2, 3, 4]).unwrap().unwrap();
        assert_eq!(x, vec![2, 3, 4]);
        assert!(hom.is_empty());

        let a = FpMatrix::from_rows(2, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert!(solve_affine(&a, &[0, 1]).unwrap().is_none());
        let (x, hom) = solve_affine(&a, &[1, 0]).unwrap().unwrap();
        assert_eq!(x, vec![1, 0]);
        assert_eq!(hom, vec![vec![0, 1]]);
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(enumerate_subspaces(2, 2, 1).unwrap().len(), 3);
        assert_eq!(enumerate_subspaces(3, 2, 1).unwrap().len(), 4);
        assert_eq!(enumerate_subspaces(2, 3, 1).unwrap().len(), 7);
        // [4 choose 2]_2 = 35
        assert_eq!(enumerate_subspaces(2, 4, 2).unwrap().len(), 35);
    }

    #[test]
    fn subspaces_are_distinct_and_canonical() {
        let subs = enumerate_subspaces(3, 4, 2).unwrap();
        for s in &subs {
            let re = Subspace::from_matrix(s.basis());
            assert_eq!(&re, s);
        }
        let mut seen = std::collections::HashSet::new();
        for s in subs {
            assert!(seen.insert(s.basis().entries().to_vec()));
        }
    }

    #[test]
    fn containing_enumeration_matches_filter() {
        let base = Subspace::span(2, &[vec![1, 0, 1]], 3).unwrap();
        let mut via_quotient = Vec::new();
        for_each_subspace_containing(&base, 2, &mut |s| via_quotient.push(s.clone())).unwrap();
        let all = enumerate_subspaces(2, 3, 2).unwrap();
        let filtered: Vec<_> = all.into_iter().filter(|s| s.contains(&base)).collect();
        assert_eq!(via_quotient.len(), filtered.len());
        for s in &via_quotient {
            assert!(filtered.contains(s));
        }
    }

    #[test]
    fn projection_section_compose_to_identity_on_quotient() {
        let base = Subspace::span(3, &[vec![1, 2, 0], vec![0, 0, 1]], 3).unwrap();
        let proj = base.projection_matrix().unwrap();
        let sec = base.section_matrix().unwrap();
        let comp = proj.mul(&sec).unwrap();
        assert_eq!(comp, FpMatrix::identity(3, 1).unwrap());
        // projection kills the subspace
        for i in 0..base.dim() {
            let img = proj.apply(base.basis().row(i)).unwrap();
            assert!(img.iter().all(|&x| x == 0));
        }
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(rows in 0usize..4, cols in 0usize..4, seed in 0u64..1000) {
            let p = 3;
            let mut data = Vec::new();
            let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
            for _ in 0..rows {
                let mut row = Vec::new();
                for _ in 0..cols {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    row.push((state % p) as i64);
                }
                data.push(row);
            }
            let m = if rows == 0 {
                FpMatrix::zero(p, 0, cols).unwrap()
            } else {
                FpMatrix::from_rows(p, &data).unwrap()
            };
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_canonical_idempotent(seed in 0u64..500) {
            let p = 2;
            let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(7);
            let mut rows = Vec::new();
            for _ in 0..3 {
                let mut row = Vec::new();
                for _ in 0..4 {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    row.push((state % p) as i64);
                }
                rows.push(row);
            }
            let m = FpMatrix::from_rows(p, &rows).unwrap();
            let (_, kernel) = rank_kernel(&m);
            if !kernel.is_empty() {
                // re-echelonising the returned basis is the identity
                let as_rows: Vec<Vec<i64>> = kernel.iter()
                    .map(|v| v.iter().map(|&x| x as i64).collect())
                    .collect();
                let sub = Subspace::span(p, &as_rows, 4).unwrap();
                let again: Vec<Vec<u64>> = (0..sub.dim()).map(|i| sub.basis().row(i).to_vec()).collect();
                for v in &kernel {
                    prop_assert!(m.apply(v).unwrap().iter().all(|&x| x == 0));
                }
                prop_assert_eq!(again, kernel);
            }
        }
    }
}

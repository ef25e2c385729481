//! Hall numbers, word products, Hall-polynomial interpolation, the
//! composition monoid and the q=0 comparison map.

use crate::dynkin::{positive_roots, IsoClass, RootSystem};
use crate::error::{Error, Result};
use crate::flag::{flag_nonempty, for_each_subrep};
use crate::fp::first_primes;
use crate::poly::{interpolate, QPolynomial};
use crate::quiver::{DimVector, Quiver, Word};
use crate::rep::Representation;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A finite formal sum of iso classes with integer coefficients, graded by
/// dimension vector. Zero coefficients are pruned.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HallElement {
    coeffs: BTreeMap<IsoClass, BigInt>,
}

impl HallElement {
    pub fn zero() -> Self {
        HallElement::default()
    }

    pub fn basis_element(class: IsoClass) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(class, BigInt::one());
        HallElement { coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<IsoClass, BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, class: &IsoClass) -> BigInt {
        self.coeffs.get(class).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, class: IsoClass, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(class) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn support(&self) -> impl Iterator<Item = &IsoClass> {
        self.coeffs.keys()
    }
}

/// A Hall element with polynomial coefficients in q (the generic algebra).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyHallElement {
    coeffs: BTreeMap<IsoClass, QPolynomial>,
}

impl PolyHallElement {
    pub fn basis_element(class: IsoClass) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(class, QPolynomial::one());
        PolyHallElement { coeffs }
    }

    pub fn coeffs(&self) -> &BTreeMap<IsoClass, QPolynomial> {
        &self.coeffs
    }

    pub fn coeff(&self, class: &IsoClass) -> QPolynomial {
        self.coeffs
            .get(class)
            .cloned()
            .unwrap_or_else(QPolynomial::zero)
    }

    fn add_term(&mut self, class: IsoClass, poly: QPolynomial) {
        use std::collections::btree_map::Entry;
        if poly.is_zero() {
            return;
        }
        match self.coeffs.entry(class) {
            Entry::Vacant(v) => {
                v.insert(poly);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&poly);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }
}

/// The set of iso classes lying in the composition variety of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionVariety {
    word: Word,
    classes: BTreeSet<IsoClass>,
}

impl CompositionVariety {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn classes(&self) -> &BTreeSet<IsoClass> {
        &self.classes
    }

    pub fn contains(&self, class: &IsoClass) -> bool {
        self.classes.contains(class)
    }
}

/// Outcome of the q=0 comparison for a pair of words.
#[derive(Debug, Clone)]
pub struct PsiReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

type SplitKey = (Vec<u32>, Vec<i64>, u64);
type SplitCounts = BTreeMap<(IsoClass, IsoClass), BigUint>;
type PolyKey = (Vec<u32>, Vec<u32>, Vec<u32>);

/// The Hall algebra of a Dynkin quiver: products, Hall polynomials and the
/// composition monoid, with caches for the enumeration-heavy parts.
pub struct HallAlgebra {
    root_system: RootSystem,
    split_cache: RefCell<HashMap<SplitKey, SplitCounts>>,
    poly_cache: RefCell<HashMap<PolyKey, QPolynomial>>,
    word_cache: RefCell<HashMap<Vec<u32>, CompositionVariety>>,
}

impl HallAlgebra {
    pub fn new(quiver: &Quiver) -> Result<Self> {
        Ok(HallAlgebra {
            root_system: positive_roots(quiver)?,
            split_cache: RefCell::new(HashMap::new()),
            poly_cache: RefCell::new(HashMap::new()),
            word_cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn quiver(&self) -> &Quiver {
        self.root_system.quiver()
    }

    /// Tallies, over all subrepresentations `U <= X` of dimension vector
    /// `sub_dim`, the pairs (class of X/U, class of U).
    fn split_counts_for_rep(
        &self,
        x: &Representation,
        sub_dim: &DimVector,
    ) -> Result<SplitCounts> {
        let rs = &self.root_system;
        if !sub_dim.is_nonnegative() || !sub_dim.leq(x.dim_vector()) {
            return Ok(BTreeMap::new());
        }
        // A representation with zero maps is semisimple: every subspace
        // tuple is a subrepresentation and both sides are semisimple, so
        // the tally collapses to one q-binomial product.
        if x.matrices()
            .iter()
            .all(|m| m.entries().iter().all(|&e| e == 0))
        {
            let p = x.modulus();
            let mut count = num_bigint::BigInt::one();
            for i in 0..sub_dim.len() {
                let binom = crate::poly::qbinom(x.dim_vector().get(i), sub_dim.get(i))?;
                count *= binom.eval_u64(p);
            }
            let sub_class = rs.semisimple_class(sub_dim)?;
            let quot_class = rs.semisimple_class(&x.dim_vector().sub(sub_dim))?;
            let mut counts = BTreeMap::new();
            counts.insert(
                (quot_class, sub_class),
                count.to_biguint().expect("binomial product is nonnegative"),
            );
            return Ok(counts);
        }
        // general path: enumerate, classify both sides through the memo,
        // intern the (quotient, sub) pairs
        let mut pairs: Vec<(IsoClass, IsoClass)> = Vec::new();
        let mut tallies: Vec<u128> = Vec::new();
        let mut error = None;
        for_each_subrep(x, sub_dim, &mut |bases| {
            if error.is_some() {
                return;
            }
            let tally = (|| -> Result<(IsoClass, IsoClass)> {
                Ok((
                    rs.classify_quotient(x, bases)?,
                    rs.classify_restriction(x, bases)?,
                ))
            })();
            match tally {
                Ok(pair) => match pairs.iter().position(|p| p == &pair) {
                    Some(i) => tallies[i] += 1,
                    None => {
                        pairs.push(pair);
                        tallies.push(1);
                    }
                },
                Err(e) => error = Some(e),
            }
        })?;
        if let Some(e) = error {
            return Err(e);
        }
        let mut counts: SplitCounts = BTreeMap::new();
        for (pair, tally) in pairs.into_iter().zip(tallies) {
            counts.insert(pair, BigUint::from(tally));
        }
        Ok(counts)
    }

    /// Cached split tallies for the canonical representative of a class.
    fn split_counts_for_class(
        &self,
        xi: &IsoClass,
        sub_dim: &DimVector,
        p: u64,
    ) -> Result<SplitCounts> {
        let key: SplitKey = (xi.mults().to_vec(), sub_dim.entries().to_vec(), p);
        if let Some(hit) = self.split_cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let x = self.root_system.rep_of_class(xi, p)?;
        let counts = self.split_counts_for_rep(&x, sub_dim)?;
        self.split_cache.borrow_mut().insert(key, counts.clone());
        Ok(counts)
    }

    /// The Hall number `F^X_(mu nu)`: the number of subrepresentations of `X`
    /// isomorphic to `nu` with quotient isomorphic to `mu`, by enumeration.
    pub fn hall_number(
        &self,
        x: &Representation,
        mu: &IsoClass,
        nu: &IsoClass,
    ) -> Result<BigUint> {
        let dim_mu = self.root_system.dim_of_class(mu);
        let dim_nu = self.root_system.dim_of_class(nu);
        if &dim_mu.add(&dim_nu) != x.dim_vector() {
            return Err(Error::DimensionMismatch);
        }
        let counts = self.split_counts_for_rep(x, &dim_nu)?;
        Ok(counts
            .get(&(mu.clone(), nu.clone()))
            .cloned()
            .unwrap_or_else(BigUint::zero))
    }

    /// The Hall product of two elements at a fixed prime.
    pub fn multiply(&self, a: &HallElement, b: &HallElement, p: u64) -> Result<HallElement> {
        let rs = &self.root_system;
        let mut out = HallElement::zero();
        for (mu, ca) in a.coeffs() {
            for (nu, cb) in b.coeffs() {
                let total = rs.dim_of_class(mu).add(&rs.dim_of_class(nu));
                let weight = ca * cb;
                for xi in rs.classes_with_dim(&total) {
                    let counts = self.split_counts_for_class(&xi, &rs.dim_of_class(nu), p)?;
                    if let Some(f) = counts.get(&(mu.clone(), nu.clone())) {
                        out.add_term(xi, &weight * BigInt::from(f.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The generator for a vertex.
    pub fn generator(&self, v: u32) -> Result<HallElement> {
        Ok(HallElement::basis_element(
            self.root_system.class_of_simple(v)?,
        ))
    }

    /// The iterated product `u_(w1) . u_(w2) ... u_(wn)` at a prime. The
    /// coefficient of a class equals the number of flags of the word's type
    /// in any representative.
    pub fn word_product(&self, w: &Word, p: u64) -> Result<HallElement> {
        let mut letters = w.letters().iter();
        let first = letters
            .next()
            .ok_or_else(|| Error::Parse("empty word".into()))?;
        let mut acc = self.generator(*first)?;
        for &l in letters {
            let gen = self.generator(l)?;
            acc = self.multiply(&acc, &gen, p)?;
        }
        Ok(acc)
    }

    /// The Hall polynomial `f^xi_(mu nu)`: interpolated from exact counts at
    /// the first D+1 primes with D the ambient product-of-Grassmannians
    /// dimension, then verified at one held-out prime.
    pub fn hall_polynomial(
        &self,
        xi: &IsoClass,
        mu: &IsoClass,
        nu: &IsoClass,
    ) -> Result<QPolynomial> {
        let key = (
            xi.mults().to_vec(),
            mu.mults().to_vec(),
            nu.mults().to_vec(),
        );
        if let Some(hit) = self.poly_cache.borrow().get(&key) {
            return Ok(hit.clone());
        }
        let rs = &self.root_system;
        let dim_mu = rs.dim_of_class(mu);
        let dim_nu = rs.dim_of_class(nu);
        if rs.dim_of_class(xi) != dim_mu.add(&dim_nu) {
            return Err(Error::DimensionMismatch);
        }
        let degree_bound: i64 = dim_mu
            .entries()
            .iter()
            .zip(dim_nu.entries())
            .map(|(m, n)| m * n)
            .sum();
        let primes = first_primes(degree_bound as usize + 2);
        let (held_out, sample) = primes.split_last().expect("at least two");
        let mut points = Vec::with_capacity(sample.len());
        for &p in sample {
            let counts = self.split_counts_for_class(xi, &dim_nu, p)?;
            let count = counts
                .get(&(mu.clone(), nu.clone()))
                .cloned()
                .unwrap_or_else(BigUint::zero);
            points.push((BigInt::from(p), BigInt::from(count)));
        }
        let poly = interpolate(&points)?;
        let check = self.split_counts_for_class(xi, &dim_nu, *held_out)?;
        let expected = check
            .get(&(mu.clone(), nu.clone()))
            .cloned()
            .unwrap_or_else(BigUint::zero);
        let got = poly.eval_u64(*held_out);
        if got != BigInt::from(expected.clone()) {
            return Err(Error::HeldOutMismatch {
                prime: *held_out,
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
        self.poly_cache.borrow_mut().insert(key, poly.clone());
        Ok(poly)
    }

    /// The generic word product, with Hall-polynomial coefficients.
    pub fn word_poly_product(&self, w: &Word) -> Result<PolyHallElement> {
        let rs = &self.root_system;
        let mut letters = w.letters().iter();
        let first = letters
            .next()
            .ok_or_else(|| Error::Parse("empty word".into()))?;
        let mut acc = PolyHallElement::basis_element(rs.class_of_simple(*first)?);
        for &l in letters {
            let simple = rs.class_of_simple(l)?;
            let dim_simple = rs.dim_of_class(&simple);
            let mut next = PolyHallElement::default();
            for (mu, coeff) in acc.coeffs() {
                let total = rs.dim_of_class(mu).add(&dim_simple);
                for xi in rs.classes_with_dim(&total) {
                    let f = self.hall_polynomial(&xi, mu, &simple)?;
                    if !f.is_zero() {
                        next.add_term(xi, coeff.mul(&f));
                    }
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// The classes in the composition variety of a word: classes of the
    /// word's weight admitting a flag of the word's type. Field independent.
    pub fn composition_classes(&self, w: &Word) -> Result<CompositionVariety> {
        if w.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        if let Some(hit) = self.word_cache.borrow().get(w.letters()) {
            return Ok(hit.clone());
        }
        let rs = &self.root_system;
        let q = rs.quiver();
        let weight = w.weight(q)?;
        let filtration = q.word_to_filtration(w)?;
        let mut classes = BTreeSet::new();
        for class in rs.classes_with_dim(&weight) {
            if flag_nonempty(rs, &class, &filtration)? {
                classes.insert(class);
            }
        }
        let variety = CompositionVariety {
            word: w.clone(),
            classes,
        };
        self.word_cache
            .borrow_mut()
            .insert(w.letters().to_vec(), variety.clone());
        Ok(variety)
    }

    /// Checks, at q = 0, that the indicator sum over the composition variety
    /// multiplies like the Hall product: the constant terms of
    /// `Psi(A_w) . Psi(A_v)` must match the indicator of `A_(wv)`, and the
    /// word products themselves must specialise to indicator sums.
    pub fn verify_psi(&self, w: &Word, v: &Word) -> Result<PsiReport> {
        let rs = &self.root_system;
        let q = rs.quiver();
        let mut failures = Vec::new();

        // u_w at q = 0 equals the indicator sum over the composition classes
        for word in [w, v, &w.concat(v)] {
            let variety = self.composition_classes(word)?;
            let generic = self.word_poly_product(word)?;
            for class in rs.classes_with_dim(&word.weight(q)?) {
                let constant = generic.coeff(&class).constant_term();
                let expected = BigInt::from(u32::from(variety.contains(&class)));
                if constant != expected {
                    failures.push(format!(
                        "u_({word}) at q=0 has coefficient {constant} at {}, expected {expected}",
                        rs.class_to_string(&class)
                    ));
                }
            }
        }

        // Psi(A_w * A_v) = Psi(A_w) . Psi(A_v) at q = 0
        let aw = self.composition_classes(w)?;
        let av = self.composition_classes(v)?;
        let awv = self.composition_classes(&w.concat(v))?;
        let total = w.weight(q)?.add(&v.weight(q)?);
        for xi in rs.classes_with_dim(&total) {
            let mut sum = BigInt::zero();
            for mu in aw.classes() {
                for nu in av.classes() {
                    if rs.dim_of_class(mu).add(&rs.dim_of_class(nu)) != total {
                        continue;
                    }
                    sum += self.hall_polynomial(&xi, mu, nu)?.constant_term();
                }
            }
            let expected = BigInt::from(u32::from(awv.contains(&xi)));
            if sum != expected {
                failures.push(format!(
                    "product at q=0 gives {sum} at {}, indicator of A_({}{}) gives {expected}",
                    rs.class_to_string(&xi),
                    w,
                    v
                ));
            }
        }

        Ok(PsiReport {
            ok: failures.is_empty(),
            failures,
        })
    }

    /// Tab-separated Hall polynomial table over all class triples of bounded
    /// total dimension: columns are the multiplicity vectors of xi, mu, nu
    /// (comma-separated, root-system order) and the coefficient list.
    /// Deterministic, and regenerated bit-identically from its parse.
    pub fn polynomial_table(&self, max_total: i64) -> Result<String> {
        let rs = &self.root_system;
        let n = rs.quiver().n_vertices();
        let mut out = String::new();
        for dxi in crate::verify::dim_vectors_up_to_total(n, max_total) {
            if dxi.is_zero() {
                continue;
            }
            for xi in rs.classes_with_dim(&dxi) {
                for dnu in crate::verify::sub_dim_vectors(&dxi) {
                    let dmu = dxi.sub(&dnu);
                    for nu in rs.classes_with_dim(&dnu) {
                        for mu in rs.classes_with_dim(&dmu) {
                            let poly = self.hall_polynomial(&xi, &mu, &nu)?;
                            if poly.is_zero() {
                                continue;
                            }
                            out.push_str(&format!(
                                "{}\t{}\t{}\t{}\n",
                                mults_csv(&xi),
                                mults_csv(&mu),
                                mults_csv(&nu),
                                coeffs_csv(&poly),
                            ));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Deterministic rendering of a Hall element using root-system labels.
    pub fn element_to_string(&self, e: &HallElement) -> String {
        if e.coeffs().is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (class, coeff) in e.coeffs() {
            let label = self.root_system.class_to_string(class);
            if coeff.is_one() {
                parts.push(format!("u{{{label}}}"));
            } else {
                parts.push(format!("{coeff} u{{{label}}}"));
            }
        }
        parts.join(" + ")
    }
}

fn mults_csv(class: &IsoClass) -> String {
    class
        .mults()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn coeffs_csv(poly: &QPolynomial) -> String {
    poly.coeffs()
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses a polynomial table back into class triples and polynomials.
pub fn parse_polynomial_table(
    text: &str,
) -> Result<Vec<(IsoClass, IsoClass, IsoClass, QPolynomial)>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 4 {
            return Err(Error::Parse(format!(
                "table line {}: expected 4 columns",
                lineno + 1
            )));
        }
        let class = |s: &str| -> Result<IsoClass> {
            let mults: std::result::Result<Vec<u32>, _> =
                s.split(',').map(str::parse).collect();
            Ok(IsoClass::new(mults.map_err(|_| {
                Error::Parse(format!("table line {}: bad multiplicities", lineno + 1))
            })?))
        };
        let coeffs: std::result::Result<Vec<BigInt>, _> =
            cols[3].split(',').map(str::parse).collect();
        rows.push((
            class(cols[0])?,
            class(cols[1])?,
            class(cols[2])?,
            QPolynomial::from_coeffs(coeffs.map_err(|_| {
                Error::Parse(format!("table line {}: bad coefficients", lineno + 1))
            })?),
        ));
    }
    Ok(rows)
}

/// Renders parsed table rows back to the export format.
pub fn render_polynomial_table(rows: &[(IsoClass, IsoClass, IsoClass, QPolynomial)]) -> String {
    let mut out = String::new();
    for (xi, mu, nu, poly) in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            mults_csv(xi),
            mults_csv(mu),
            mults_csv(nu),
            coeffs_csv(poly),
        ));
    }
    out
}

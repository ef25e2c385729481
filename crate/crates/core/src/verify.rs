//! Batch verification suites shared by the CLI `verify` subcommand and the
//! acceptance tests.

use crate::dynkin::{positive_roots, IsoClass};
use crate::error::{Error, Result};
use crate::flag::{count_flags_brute, count_flags_reflect, fiber_formula, fiber_representation};
use crate::hall::HallAlgebra;
use crate::quiver::{DimVector, Filtration, Quiver, Word};
use crate::rep::{ext1_dim_direct, hom_dim, Representation};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Outcome of one suite: per-item lines (deterministic order) and a tally.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub lines: Vec<String>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            lines: Vec::new(),
            passed: 0,
            failed: 0,
        }
    }

    fn record(&mut self, ok: bool, line: String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.lines.push(format!(
            "{}\t{}",
            if ok { "ok" } else { "FAIL" },
            line
        ));
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "suite {}: {} checks, {} failures",
            self.suite, self.passed + self.failed, self.failed
        )
    }
}

/// All dimension vectors of the given length with entry sum at most `total`.
pub fn dim_vectors_up_to_total(n: usize, total: i64) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn recurse(cur: &mut Vec<i64>, i: usize, left: i64, out: &mut Vec<DimVector>) {
        if i == cur.len() {
            out.push(DimVector::new(cur.clone()));
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            recurse(cur, i + 1, left - v, out);
        }
        cur[i] = 0;
    }
    recurse(&mut cur, 0, total, &mut out);
    out
}

/// All dimension vectors componentwise between zero and `d`.
pub fn sub_dim_vectors(d: &DimVector) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; d.len()];
    fn recurse(d: &DimVector, cur: &mut Vec<i64>, i: usize, out: &mut Vec<DimVector>) {
        if i == cur.len() {
            out.push(DimVector::new(cur.clone()));
            return;
        }
        for v in 0..=d.get(i) {
            cur[i] = v;
            recurse(d, cur, i + 1, out);
        }
        cur[i] = 0;
    }
    recurse(d, &mut cur, 0, &mut out);
    out
}

/// All words over the quiver's vertices with lengths 1..=max_len,
/// in length-then-lexicographic order.
pub fn all_words(q: &Quiver, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let verts = q.vertices();
    for len in 1..=max_len {
        let mut idx = vec![0usize; len];
        loop {
            out.push(Word::new(idx.iter().map(|&i| verts[i]).collect()));
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < verts.len() {
                    break;
                }
                idx[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    out
}

/// One comparison item of the mod-q equivalence corpus.
#[derive(Debug, Clone)]
pub struct ModqItem {
    pub word: Word,
    pub class: IsoClass,
    pub class_label: String,
    pub prime: u64,
    pub brute: BigUint,
    pub residue: u64,
    pub nonempty: bool,
}

/// Brute-force and reflection counts for every word up to the given length
/// and every iso class of the word's weight, at each prime.
pub fn modq_corpus(q: &Quiver, max_word_len: usize, primes: &[u64]) -> Result<Vec<ModqItem>> {
    let rs = positive_roots(q)?;
    let mut items = Vec::new();
    for word in all_words(q, max_word_len) {
        let weight = word.weight(q)?;
        let filtration = q.word_to_filtration(&word)?;
        for class in rs.classes_with_dim(&weight) {
            for &p in primes {
                let rep = rs.rep_of_class(&class, p)?;
                let brute = count_flags_brute(&rep, &filtration, None)?;
                let modq = count_flags_reflect(&rep, &filtration)?;
                items.push(ModqItem {
                    word: word.clone(),
                    class: class.clone(),
                    class_label: rs.class_to_string(&class),
                    prime: p,
                    brute,
                    residue: modq.residue,
                    nonempty: modq.nonempty,
                });
            }
        }
    }
    Ok(items)
}

/// Suite: brute-force counts agree with the reflection recursion modulo p,
/// and the emptiness flags agree exactly.
pub fn modq_equivalence(q: &Quiver, max_word_len: usize, primes: &[u64]) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("modq-equivalence");
    for item in modq_corpus(q, max_word_len, primes)? {
        let residue_ok = &item.brute % item.prime == BigUint::from(item.residue);
        let empty_ok = (!item.brute.is_zero()) == item.nonempty;
        report.record(
            residue_ok && empty_ok,
            format!(
                "w=({})\tclass={}\tp={}\tbrute={}\tresidue={}\tnonempty={}",
                item.word, item.class_label, item.prime, item.brute, item.residue, item.nonempty
            ),
        );
    }
    Ok(report)
}

/// Suite: the Hall product is associative on all length-3 words.
pub fn hall_associativity(q: &Quiver, primes: &[u64]) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("hall-associativity");
    let hall = HallAlgebra::new(q)?;
    for &p in primes {
        for &a in q.vertices() {
            for &b in q.vertices() {
                for &c in q.vertices() {
                    let ua = hall.generator(a)?;
                    let ub = hall.generator(b)?;
                    let uc = hall.generator(c)?;
                    let left = hall.multiply(&hall.multiply(&ua, &ub, p)?, &uc, p)?;
                    let right = hall.multiply(&ua, &hall.multiply(&ub, &uc, p)?, p)?;
                    report.record(
                        left == right,
                        format!("(u{a} u{b}) u{c} = u{a} (u{b} u{c})\tp={p}"),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Suite: the q=0 comparison for all word pairs with bounded total length,
/// plus the per-grade injectivity witness.
pub fn psi_iso(q: &Quiver, max_total_len: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("psi-iso");
    let hall = HallAlgebra::new(q)?;
    let words = all_words(q, max_total_len.saturating_sub(1));
    for w in &words {
        for v in &words {
            if w.len() + v.len() > max_total_len {
                continue;
            }
            let psi = hall.verify_psi(w, v)?;
            report.record(
                psi.ok,
                format!(
                    "Psi(A_({}) * A_({})) = Psi(A_({})) . Psi(A_({})) at q=0{}",
                    w,
                    v,
                    w,
                    v,
                    if psi.ok {
                        String::new()
                    } else {
                        format!("\t[{}]", psi.failures.join("; "))
                    }
                ),
            );
        }
    }
    // injectivity witness: per dimension vector, distinct composition
    // varieties never outnumber the iso classes
    let rs = hall.root_system();
    let mut by_weight: std::collections::BTreeMap<Vec<i64>, std::collections::BTreeSet<Vec<IsoClass>>> =
        std::collections::BTreeMap::new();
    for w in all_words(q, max_total_len) {
        let weight = w.weight(q)?;
        let variety = hall.composition_classes(&w)?;
        by_weight
            .entry(weight.entries().to_vec())
            .or_default()
            .insert(variety.classes().iter().cloned().collect());
    }
    for (weight, varieties) in by_weight {
        let classes = rs.classes_with_dim(&DimVector::new(weight.clone())).len();
        report.record(
            varieties.len() <= classes,
            format!(
                "grade {:?}: {} distinct composition varieties <= {} classes",
                weight,
                varieties.len(),
                classes
            ),
        );
    }
    Ok(report)
}

/// Suite: the q-binomial fiber formula equals brute-force subrepresentation
/// counting of the explicit surjection chain, and nonempty fibers have
/// constant term 1.
pub fn fiber_formula_suite(max_entry: i64, max_nu: usize, primes: &[u64]) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("fiber-formula");
    for nu in 0..=max_nu {
        let len = nu + 1;
        let seqs = all_sequences(len, max_entry);
        for r in &seqs {
            for e in &seqs {
                // hypothesis: e + reverse(r) weakly increasing and nonnegative
                let combined: Vec<i64> = (0..len).map(|i| e[i] + r[len - 1 - i]).collect();
                if combined[0] < 0 || combined.windows(2).any(|w| w[0] > w[1]) {
                    continue;
                }
                let formula = fiber_formula(r, e)?;
                let constant_ok = if formula.is_zero() {
                    true
                } else {
                    formula.constant_term() == BigInt::one()
                };
                let mut counts_ok = true;
                let mut details = Vec::new();
                for &p in primes {
                    let x = fiber_representation(r, e, p)?;
                    let filtration = Filtration::new(vec![
                        DimVector::zero(len),
                        DimVector::new(r.clone()),
                        x.dim_vector().clone(),
                    ])
                    .map_err(|err| Error::Internal(format!("fiber flag type: {err}")))?;
                    let brute = count_flags_brute(&x, &filtration, None)?;
                    let predicted = formula.eval_u64(p);
                    if BigInt::from(brute.clone()) != predicted {
                        counts_ok = false;
                    }
                    details.push(format!("p={p}:{brute}"));
                }
                report.record(
                    counts_ok && constant_ok,
                    format!(
                        "r={r:?} e={e:?}\tformula={formula}\t{}",
                        details.join(" ")
                    ),
                );
            }
        }
    }
    Ok(report)
}

fn all_sequences(len: usize, max_entry: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; len];
    loop {
        out.push(cur.clone());
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] <= max_entry {
                break;
            }
            cur[pos] = 0;
        }
    }
}

/// Suite: the Euler identity `<dim M, dim N> = [M,N] - [M,N]^1` with the hom
/// dimension from the kernel of the solver and the ext dimension from its
/// cokernel, over seeded random pairs.
pub fn euler_identity(q: &Quiver, pairs: usize, p: u64, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("euler-identity");
    let n = q.n_vertices();
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    };
    for k in 0..pairs {
        let dm = DimVector::new((0..n).map(|_| (next() % 4) as i64).collect());
        let dn = DimVector::new((0..n).map(|_| (next() % 4) as i64).collect());
        let m = Representation::random(q, &dm, p, next())?;
        let nn = Representation::random(q, &dn, p, next())?;
        let hom = hom_dim(&m, &nn)? as i64;
        let ext = ext1_dim_direct(&m, &nn)? as i64;
        let euler = q.euler_form(&dm, &dn)?;
        report.record(
            euler == hom - ext,
            format!("pair {k}: dims {dm} {dn}\t<d,e>={euler}\thom={hom}\text={ext}"),
        );
    }
    Ok(report)
}

//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use quiver_hall::dynkin::positive_roots;
use quiver_hall::fixtures;
use quiver_hall::flag::{count_flags_brute, enumerate_flag_points, fiber_formula};
use quiver_hall::geometry::{codim_report, flag_counting_polynomial, tangent_dim};
use quiver_hall::hall::HallAlgebra;
use quiver_hall::poly::QPolynomial;
use quiver_hall::quiver::{DimVector, Filtration, Word};
use quiver_hall::reflection::strip_simple_summands;
use quiver_hall::rep::Representation;
use quiver_hall::verify::{
    all_words, dim_vectors_up_to_total, euler_identity, fiber_formula_suite, hall_associativity,
    modq_corpus, psi_iso, sub_dim_vectors, ModqItem,
};
use std::sync::LazyLock;

const PRIMES: [u64; 2] = [2, 3];
const MAX_WORD_LEN: usize = 5;

static MODQ_ITEMS: LazyLock<Vec<ModqItem>> = LazyLock::new(|| {
    let mut items = Vec::new();
    for q in [fixtures::a2(), fixtures::a3()] {
        items.extend(modq_corpus(&q, MAX_WORD_LEN, &PRIMES).expect("corpus computes"));
    }
    items
});

fn criterion(n: usize, name: &str, ok: bool, detail: String) {
    if ok {
        println!("criterion {n} ({name}): PASS");
    } else {
        println!("criterion {n} ({name}): FAIL {detail}");
    }
    assert!(ok, "criterion {n} ({name}): {detail}");
}

#[test]
fn criterion_01_modq_reflection_equivalence() {
    let mut failures = Vec::new();
    for item in MODQ_ITEMS.iter() {
        let residue_ok = &item.brute % item.prime == BigUint::from(item.residue);
        let empty_ok = (!item.brute.is_zero()) == item.nonempty;
        if !(residue_ok && empty_ok) {
            failures.push(format!(
                "w=({}) class={} p={}: brute={} residue={} nonempty={}",
                item.word, item.class_label, item.prime, item.brute, item.residue, item.nonempty
            ));
        }
    }
    criterion(
        1,
        "mod-q reflection equivalence",
        failures.is_empty(),
        format!("{} of {} items failed: {:?}", failures.len(), MODQ_ITEMS.len(), failures.first()),
    );
}

#[test]
fn criterion_02_preprojective_corollary() {
    let mut failures = Vec::new();
    for item in MODQ_ITEMS.iter() {
        if !item.brute.is_zero() && &item.brute % item.prime != BigUint::one() {
            failures.push(format!(
                "w=({}) class={} p={}: nonempty count {} != 1 mod p",
                item.word, item.class_label, item.prime, item.brute
            ));
        }
    }
    criterion(
        2,
        "preprojective corollary",
        failures.is_empty(),
        format!("{} failures: {:?}", failures.len(), failures.first()),
    );
}

#[test]
fn criterion_03_glued_lines_grassmannian() {
    let g = fixtures::g_filtration();
    let mut ok = true;
    let mut detail = String::new();

    for (p, expected_count) in [(2u64, 5u64), (3, 7)] {
        let m = fixtures::m22(p).expect("fixture");
        let count = count_flags_brute(&m, &g, None).expect("counts");
        if count != BigUint::from(expected_count) {
            ok = false;
            detail = format!("count over F_{p} is {count}, expected {expected_count}");
        }
        // tangent dimension 1 everywhere except exactly one point with 2
        let points = enumerate_flag_points(&m, &g).expect("enumerates");
        let dims: Vec<usize> = points
            .iter()
            .map(|pt| tangent_dim(&m, pt).expect("tangent"))
            .collect();
        let twos = dims.iter().filter(|&&d| d == 2).count();
        let ones = dims.iter().filter(|&&d| d == 1).count();
        if !(twos == 1 && ones == dims.len() - 1) {
            ok = false;
            detail = format!("tangent dims over F_{p}: {dims:?}");
        }
        // strata counts: q+1 on the defect-1 stratum, q on the defect-0 one
        let line = count_flags_brute(&m, &g, Some((2, &[0, 1, 1]))).expect("stratum");
        let affine = count_flags_brute(&m, &g, Some((2, &[0, 0, 1]))).expect("stratum");
        if line != BigUint::from(p + 1) || affine != BigUint::from(p) {
            ok = false;
            detail = format!("strata over F_{p}: line={line} affine={affine}");
        }
    }

    let rs = positive_roots(&fixtures::a2()).expect("dynkin");
    let class = rs.classify(&fixtures::m22(2).expect("fixture")).expect("classify");
    let report = flag_counting_polynomial(&rs, &class, &g).expect("interpolates");
    if report.polynomial != QPolynomial::from_i64_coeffs(&[1, 2])
        || report.at_zero != BigInt::one()
        || report.at_one != BigInt::from(3)
    {
        ok = false;
        detail = format!("polynomial {}", report.polynomial);
    }

    criterion(3, "Gr((1,1),M22) glued lines", ok, detail);
}

#[test]
fn criterion_04_rigid_smooth_case() {
    let g = fixtures::g_filtration();
    let q = fixtures::a2();
    let mut ok = true;
    let mut detail = String::new();

    // the expected constant tangent dimension: sum_k <d^k, d^(k+1) - d^k>
    let mut expected_tangent = 0i64;
    for k in 1..g.nu() {
        expected_tangent += q
            .euler_form(g.step(k), &g.step(k + 1).sub(g.step(k)))
            .expect("euler");
    }

    for (p, expected_count) in [(2u64, 3u64), (3, 4)] {
        let p_rep = fixtures::p_rep(p).expect("fixture");
        let pp = Representation::direct_sum(&[&p_rep, &p_rep]).expect("sum");
        let count = count_flags_brute(&pp, &g, None).expect("counts");
        if count != BigUint::from(expected_count) {
            ok = false;
            detail = format!("count over F_{p} is {count}");
        }
        for pt in enumerate_flag_points(&pp, &g).expect("enumerates") {
            let t = tangent_dim(&pp, &pt).expect("tangent") as i64;
            if t != expected_tangent {
                ok = false;
                detail = format!("tangent {t} != {expected_tangent} over F_{p}");
            }
        }
    }

    let rs = positive_roots(&q).expect("dynkin");
    let p_class = rs
        .class_of_root(&DimVector::new(vec![1, 1]))
        .expect("root");
    let pp_class = p_class.add(&p_class);
    let report = flag_counting_polynomial(&rs, &pp_class, &g).expect("interpolates");
    if report.polynomial != QPolynomial::from_i64_coeffs(&[1, 1])
        || report.at_zero != BigInt::one()
        || report.at_one != BigInt::from(2)
        || !report.polynomial.has_nonnegative_coeffs()
    {
        ok = false;
        detail = format!("polynomial {}", report.polynomial);
    }

    criterion(4, "rigid smooth case Gr((1,1),P+P)", ok, detail);
}

#[test]
fn criterion_05_fiber_formula() {
    let report = fiber_formula_suite(2, 3, &PRIMES).expect("suite runs");
    criterion(
        5,
        "fiber formula",
        report.ok(),
        format!(
            "{} of {} checks failed",
            report.failed,
            report.passed + report.failed
        ),
    );
}

#[test]
fn criterion_06_decomposition_identity() {
    let q = fixtures::a2();
    let rs = positive_roots(&q).expect("dynkin");
    let sink = 2u32;
    let sink_idx = 1usize;
    let mut checked = 0usize;
    let mut failures = Vec::new();

    for word in all_words(&q, MAX_WORD_LEN) {
        let f = q.word_to_filtration(&word).expect("filtration");
        let nu = f.nu();
        for class in rs.classes_with_dim(f.top()) {
            for p in PRIMES {
                let m = rs.rep_of_class(&class, p).expect("rep");
                let total = count_flags_brute(&m, &f, None).expect("counts");
                let s = m.hom_to_simple_at_sink(sink).expect("sink") as i64;
                let (reduced_m, stripped) = strip_simple_summands(&m, sink).expect("split");
                assert_eq!(stripped as i64, s);
                // e^(nu - i) = d^nu_a - d^i_a
                let e: Vec<i64> = (0..=nu)
                    .map(|j| f.top().get(sink_idx) - f.step(nu - j).get(sink_idx))
                    .collect();
                let mut sum = BigUint::zero();
                for r in defect_vectors(&f, sink_idx, s) {
                    let steps: Vec<DimVector> = f
                        .steps()
                        .iter()
                        .zip(&r)
                        .map(|(d, &ri)| {
                            let mut v = d.clone();
                            v.set(sink_idx, v.get(sink_idx) - ri);
                            v
                        })
                        .collect();
                    // strata with a non-filtration reduced type are empty
                    let Ok(reduced_f) = Filtration::new(steps) else {
                        continue;
                    };
                    let fiber = fiber_formula(&r, &e).expect("hypothesis holds");
                    if fiber.is_zero() {
                        continue;
                    }
                    let zeros = vec![0i64; nu + 1];
                    let stratum =
                        count_flags_brute(&reduced_m, &reduced_f, Some((sink, &zeros)))
                            .expect("stratum");
                    sum += fiber.eval_u64(p).to_biguint().expect("nonnegative") * stratum;
                }
                checked += 1;
                if sum != total {
                    failures.push(format!(
                        "w=({word}) class={} p={p}: sum {sum} != total {total}",
                        rs.class_to_string(&class)
                    ));
                }
            }
        }
    }
    criterion(
        6,
        "decomposition identity",
        failures.is_empty(),
        format!("{} of {checked} failed: {:?}", failures.len(), failures.first()),
    );
}

/// All defect vectors r with r^0 = 0, r^nu = s and 0 <= r^i <= d^i_a.
fn defect_vectors(f: &Filtration, sink_idx: usize, s: i64) -> Vec<Vec<i64>> {
    let nu = f.nu();
    let mut out = Vec::new();
    let mut r = vec![0i64; nu + 1];
    r[nu] = s;
    fn recurse(f: &Filtration, sink_idx: usize, r: &mut Vec<i64>, i: usize, out: &mut Vec<Vec<i64>>) {
        let nu = f.nu();
        if i == nu {
            out.push(r.clone());
            return;
        }
        for v in 0..=f.step(i).get(sink_idx) {
            r[i] = v;
            recurse(f, sink_idx, r, i + 1, out);
        }
        r[i] = 0;
    }
    recurse(f, sink_idx, &mut r, 1, &mut out);
    out
}

#[test]
fn criterion_07_hall_structure() {
    let mut ok = true;
    let mut detail = String::new();

    for q in [fixtures::a2(), fixtures::a3()] {
        let report = hall_associativity(&q, &PRIMES).expect("suite runs");
        if !report.ok() {
            ok = false;
            detail = format!("associativity: {} failures", report.failed);
        }
    }

    // the two A2 products
    let hall = HallAlgebra::new(&fixtures::a2()).expect("dynkin");
    let rs = hall.root_system();
    let p_class = rs.class_of_root(&DimVector::new(vec![1, 1])).expect("root");
    let ss_class = rs
        .class_of_simple(1)
        .expect("simple")
        .add(&rs.class_of_simple(2).expect("simple"));
    for p in PRIMES {
        let u12 = hall.word_product(&Word::new(vec![1, 2]), p).expect("product");
        if !(u12.coeff(&p_class).is_one()
            && u12.coeff(&ss_class).is_one()
            && u12.coeffs().len() == 2)
        {
            ok = false;
            detail = format!("u1 u2 at p={p} is {}", hall.element_to_string(&u12));
        }
        let u21 = hall.word_product(&Word::new(vec![2, 1]), p).expect("product");
        if !(u21.coeff(&ss_class).is_one() && u21.coeffs().len() == 1) {
            ok = false;
            detail = format!("u2 u1 at p={p} is {}", hall.element_to_string(&u21));
        }
    }

    // the held-out check on every triple of total dimension <= 5
    let mut triples = 0usize;
    for q in [fixtures::a2(), fixtures::a3()] {
        let hall = HallAlgebra::new(&q).expect("dynkin");
        let rs = hall.root_system();
        let n = q.n_vertices();
        for dxi in dim_vectors_up_to_total(n, 5) {
            if dxi.is_zero() {
                continue;
            }
            for xi in rs.classes_with_dim(&dxi) {
                for dnu in sub_dim_vectors(&dxi) {
                    let dmu = dxi.sub(&dnu);
                    for nu in rs.classes_with_dim(&dnu) {
                        for mu in rs.classes_with_dim(&dmu) {
                            match hall.hall_polynomial(&xi, &mu, &nu) {
                                Ok(_) => triples += 1,
                                Err(e) => {
                                    ok = false;
                                    detail = format!(
                                        "held-out failure for ({}, {}, {}): {e}",
                                        rs.class_to_string(&xi),
                                        rs.class_to_string(&mu),
                                        rs.class_to_string(&nu)
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    criterion(
        7,
        "hall structure",
        ok,
        format!("{detail} ({triples} triples interpolated)"),
    );
}

#[test]
fn criterion_08_psi_isomorphism() {
    let mut ok = true;
    let mut detail = String::new();
    for q in [fixtures::a2(), fixtures::a3()] {
        let report = psi_iso(&q, MAX_WORD_LEN).expect("suite runs");
        if !report.ok() {
            ok = false;
            let first = report
                .lines
                .iter()
                .find(|l| l.starts_with("FAIL"))
                .cloned()
                .unwrap_or_default();
            detail = format!("{} failures; first: {first}", report.failed);
        }
    }
    criterion(8, "psi isomorphism at q=0", ok, detail);
}

#[test]
fn criterion_09_euler_identity() {
    let mut ok = true;
    let mut detail = String::new();
    for (q, seed) in [(fixtures::a2(), 11u64), (fixtures::a3(), 23u64)] {
        let report = euler_identity(&q, 100, 2, seed).expect("suite runs");
        if !report.ok() {
            ok = false;
            detail = format!("{} failures", report.failed);
        }
    }
    criterion(9, "euler identity on 200 random pairs", ok, detail);
}

#[test]
fn criterion_10_codimension_bound() {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for q in [fixtures::a2(), fixtures::a3()] {
        let rs = positive_roots(&q).expect("dynkin");
        let n = q.n_vertices();
        for top in dim_vectors_up_to_total(n, 6) {
            if top.is_zero() {
                continue;
            }
            for f in strict_filtrations(&top) {
                let report = codim_report(&rs, &f).expect("report");
                checked += 1;
                if !report.bound_holds {
                    failures.push(format!("filtration {f}"));
                }
                // the dense-orbit minimum is a genuine lower bound for the
                // self-extension number of every flag-admitting class
                if report
                    .classes
                    .iter()
                    .any(|(_, ext)| report.codim > *ext)
                {
                    failures.push(format!("filtration {f}: codim above a class ext"));
                }
            }
        }
    }
    criterion(
        10,
        "codimension bound",
        failures.is_empty(),
        format!("{} of {checked} failed: {:?}", failures.len(), failures.first()),
    );
}

/// All strictly increasing chains from zero to `top`.
fn strict_filtrations(top: &DimVector) -> Vec<Filtration> {
    let mut chains = Vec::new();
    let mut cur = vec![DimVector::zero(top.len())];
    fn recurse(top: &DimVector, cur: &mut Vec<DimVector>, chains: &mut Vec<Filtration>) {
        let last = cur.last().expect("nonempty").clone();
        if &last == top {
            if cur.len() >= 2 {
                chains.push(Filtration::new(cur.clone()).expect("chain is a filtration"));
            }
            return;
        }
        for step in strictly_between(&last, top) {
            cur.push(step);
            recurse(top, cur, chains);
            cur.pop();
        }
    }
    recurse(top, &mut cur, &mut chains);
    chains
}

/// Dimension vectors v with last < v <= top (componentwise, strictly bigger
/// somewhere).
fn strictly_between(last: &DimVector, top: &DimVector) -> Vec<DimVector> {
    let n = last.len();
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn recurse(
        last: &DimVector,
        top: &DimVector,
        cur: &mut Vec<i64>,
        i: usize,
        out: &mut Vec<DimVector>,
    ) {
        if i == cur.len() {
            let v = DimVector::new(cur.clone());
            if last.leq(&v) && v != *last {
                out.push(v);
            }
            return;
        }
        for x in last.get(i)..=top.get(i) {
            cur[i] = x;
            recurse(last, top, cur, i + 1, out);
        }
    }
    recurse(last, top, &mut cur, 0, &mut out);
    out
}


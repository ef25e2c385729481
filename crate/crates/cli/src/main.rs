//! Command-line surface: parse inputs, dispatch computations, emit
//! deterministic tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use clap::{Parser, Subcommand, ValueEnum};
use quiver_hall::dynkin::{positive_roots, IsoClass, RootSystem};
use quiver_hall::error::Error;
use quiver_hall::fixtures;
use quiver_hall::flag::{count_flags_brute, count_flags_reflect, enumerate_flag_points, strata_profile};
use quiver_hall::geometry::{geometry_report, tangent_dim};
use quiver_hall::hall::HallAlgebra;
use quiver_hall::io;
use quiver_hall::quiver::{DimVector, Filtration, Quiver, Word};
use quiver_hall::rep::Representation;
use quiver_hall::verify;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "quiver-hall", version, about = "Exact quiver flag counting and Hall algebra computations over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Reflect,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    #[value(name = "modq-equivalence")]
    ModqEquivalence,
    #[value(name = "hall-associativity")]
    HallAssociativity,
    #[value(name = "psi-iso")]
    PsiIso,
    #[value(name = "fiber-formula")]
    FiberFormula,
    #[value(name = "euler-identity")]
    EulerIdentity,
}

#[derive(Subcommand)]
enum Command {
    /// Count flags of a given type in a representation.
    CountFlag {
        #[arg(long)]
        quiver: String,
        /// Named fixture, file path or inline JSON document.
        #[arg(long, conflicts_with = "iso")]
        rep: Option<String>,
        /// Iso-class expression such as `P.1+S1.1` (Dynkin quivers only).
        #[arg(long)]
        iso: Option<String>,
        #[arg(long)]
        filtration: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
        /// Restrict to the stratum with this per-level defect at --strata-vertex.
        #[arg(long, requires = "strata_vertex", value_delimiter = ',')]
        strata_r: Option<Vec<i64>>,
        #[arg(long, requires = "strata_r")]
        strata_vertex: Option<u32>,
    },
    /// Hall product of the simple generators along a word.
    HallMul {
        #[arg(long)]
        quiver: String,
        #[arg(long, value_delimiter = ',')]
        word: Vec<u32>,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Interpolated Hall polynomial of a class triple.
    HallPoly {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
    },
    /// Hall polynomial table for all class triples of bounded total dimension.
    HallTable {
        #[arg(long)]
        quiver: String,
        #[arg(long, default_value_t = 3)]
        max_dim: i64,
    },
    /// Positive roots of a Dynkin quiver.
    Roots {
        #[arg(long)]
        quiver: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Krull-Schmidt class of a representation.
    Classify {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Tangent dimensions at every point of a flag variety.
    Tangent {
        #[arg(long)]
        quiver: String,
        /// Named fixture, file path or inline JSON document.
        #[arg(long, conflicts_with = "iso")]
        rep: Option<String>,
        /// Iso-class expression (Dynkin quivers only).
        #[arg(long)]
        iso: Option<String>,
        #[arg(long)]
        filtration: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Per-point rows plus polynomial and codimension summaries.
    GeometryReport {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        iso: String,
        #[arg(long)]
        filtration: String,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Batch verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        #[arg(long, default_value = "a2")]
        quiver: String,
        #[arg(long, default_value_t = 4)]
        max_word_len: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 2)]
        max_entry: i64,
        #[arg(long, default_value_t = 3)]
        max_levels: usize,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 11)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_quiver(input: &str) -> Result<Quiver, Error> {
    if let Some(q) = fixtures::quiver_by_name(input) {
        return Ok(q);
    }
    let text = read_doc(input)?;
    io::quiver_from_json(&text)
}

fn read_doc(input: &str) -> Result<String, Error> {
    if input.trim_start().starts_with(['{', '[']) {
        return Ok(input.to_string());
    }
    std::fs::read_to_string(input)
        .map_err(|e| Error::Parse(format!("cannot read `{input}`: {e}")))
}

fn load_rep(q: &Quiver, input: &str, p: Option<u64>) -> Result<Representation, Error> {
    if let Some(p) = p {
        if let Some(rep) = fixtures::rep_by_name(input, p)? {
            if rep.quiver() != q {
                return Err(Error::Parse(format!(
                    "fixture `{input}` lives over a different quiver"
                )));
            }
            return Ok(rep);
        }
    } else if fixtures::rep_by_name(input, 2)?.is_some() {
        return Err(Error::Parse(format!(
            "fixture `{input}` needs an explicit --p"
        )));
    }
    let text = read_doc(input)?;
    let rep = io::representation_from_json(q, &text)?;
    if let Some(p) = p {
        if rep.modulus() != p {
            return Err(Error::Parse(format!(
                "document modulus {} disagrees with --p {p}",
                rep.modulus()
            )));
        }
    }
    Ok(rep)
}

fn load_filtration(input: &str) -> Result<Filtration, Error> {
    if let Some(f) = fixtures::filtration_by_name(input) {
        return Ok(f);
    }
    let text = read_doc(input)?;
    io::filtration_from_json(&text)
}

/// Iso-class expressions: `+`-separated terms `NAME` or `NAME.mult` with
/// NAME one of `S` (simple at the first vertex), `S<v>` (simple at vertex v),
/// `P` (the all-ones root) or `I<d1-d2-...>` (indecomposable by dimensions).
fn parse_class(rs: &RootSystem, expr: &str) -> Result<IsoClass, Error> {
    let mut class = IsoClass::zero(rs.n_roots());
    for term in expr.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in class `{expr}`")));
        }
        let (name, mult) = match term.split_once('.') {
            Some((n, m)) => (
                n,
                m.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad multiplicity in `{term}`")))?,
            ),
            None => (term, 1),
        };
        let root = parse_root_name(rs, name)?;
        for _ in 0..mult {
            class = class.add(&root);
        }
    }
    Ok(class)
}

fn parse_root_name(rs: &RootSystem, name: &str) -> Result<IsoClass, Error> {
    let q = rs.quiver();
    if name == "S" {
        let v = *q
            .vertices()
            .first()
            .ok_or_else(|| Error::Parse("quiver has no vertices".into()))?;
        return rs.class_of_simple(v);
    }
    if let Some(rest) = name.strip_prefix('S') {
        let v: u32 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex in `{name}`")))?;
        return rs.class_of_simple(v);
    }
    if name == "P" {
        let ones = DimVector::new(vec![1; q.n_vertices()]);
        return rs
            .class_of_root(&ones)
            .map_err(|_| Error::Parse("the all-ones vector is not a root here".into()));
    }
    if let Some(rest) = name.strip_prefix('I') {
        let entries: Result<Vec<i64>, _> = rest.split('-').map(str::parse).collect();
        let entries = entries.map_err(|_| Error::Parse(format!("bad dimensions in `{name}`")))?;
        return rs
            .class_of_root(&DimVector::new(entries))
            .map_err(|_| Error::Parse(format!("`{name}` is not a positive root")));
    }
    Err(Error::Parse(format!("unknown class name `{name}`")))
}

fn dispatch(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::CountFlag {
            quiver,
            rep,
            iso,
            filtration,
            p,
            method,
            strata_r,
            strata_vertex,
        } => {
            let q = load_quiver(&quiver)?;
            let f = load_filtration(&filtration)?;
            let m = match (rep, iso) {
                (Some(doc), None) => load_rep(&q, &doc, Some(p))?,
                (None, Some(expr)) => {
                    let rs = positive_roots(&q)?;
                    let class = parse_class(&rs, &expr)?;
                    rs.rep_of_class(&class, p)?
                }
                _ => return Err(Error::Parse("need exactly one of --rep / --iso".into())),
            };
            match method {
                Method::Brute => {
                    let strata = match (&strata_vertex, &strata_r) {
                        (Some(v), Some(r)) => Some((*v, r.as_slice())),
                        _ => None,
                    };
                    println!("{}", count_flags_brute(&m, &f, strata)?);
                }
                Method::Reflect => {
                    let out = count_flags_reflect(&m, &f)?;
                    println!("{} (mod {})", out.residue, p);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::HallMul {
            quiver,
            word,
            p,
            format,
        } => {
            let q = load_quiver(&quiver)?;
            let hall = HallAlgebra::new(&q)?;
            let element = hall.word_product(&Word::new(word), p)?;
            match format {
                Format::Text => println!("{}", hall.element_to_string(&element)),
                Format::Tsv => {
                    for (class, coeff) in element.coeffs() {
                        println!(
                            "{coeff}\t{}",
                            hall.root_system().class_to_string(class)
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::HallPoly { quiver, xi, mu, nu } => {
            let q = load_quiver(&quiver)?;
            let hall = HallAlgebra::new(&q)?;
            let rs = hall.root_system();
            let xi = parse_class(rs, &xi)?;
            let mu = parse_class(rs, &mu)?;
            let nu = parse_class(rs, &nu)?;
            println!("{}", hall.hall_polynomial(&xi, &mu, &nu)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::HallTable { quiver, max_dim } => {
            let q = load_quiver(&quiver)?;
            let hall = HallAlgebra::new(&q)?;
            print!("{}", hall.polynomial_table(max_dim)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Roots { quiver, format } => {
            let q = load_quiver(&quiver)?;
            let rs = positive_roots(&q)?;
            for (i, root) in rs.roots().iter().enumerate() {
                match format {
                    Format::Text => println!("{root}"),
                    Format::Tsv => println!("{i}\t{root}"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { quiver, rep, p } => {
            let q = load_quiver(&quiver)?;
            let rs = positive_roots(&q)?;
            let m = load_rep(&q, &rep, p)?;
            let class = rs.classify(&m)?;
            println!("{}", rs.class_to_string(&class));
            Ok(ExitCode::SUCCESS)
        }
        Command::Tangent {
            quiver,
            rep,
            iso,
            filtration,
            p,
            format,
        } => {
            let q = load_quiver(&quiver)?;
            let m = match (rep, iso) {
                (Some(doc), None) => load_rep(&q, &doc, Some(p))?,
                (None, Some(expr)) => {
                    let rs = positive_roots(&q)?;
                    let class = parse_class(&rs, &expr)?;
                    rs.rep_of_class(&class, p)?
                }
                _ => return Err(Error::Parse("need exactly one of --rep / --iso".into())),
            };
            let f = load_filtration(&filtration)?;
            let sink = q
                .vertices()
                .iter()
                .copied()
                .find(|&v| q.is_sink(v))
                .ok_or_else(|| Error::Parse("quiver has no sink".into()))?;
            for (index, point) in enumerate_flag_points(&m, &f)?.iter().enumerate() {
                let strata: Vec<String> = strata_profile(&m, point, sink)?
                    .iter()
                    .map(i64::to_string)
                    .collect();
                let tangent = tangent_dim(&m, point)?;
                match format {
                    Format::Text => println!(
                        "point {index}: strata ({}) tangent {tangent}",
                        strata.join(",")
                    ),
                    Format::Tsv => println!("{index}\t{}\t{tangent}", strata.join(",")),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::GeometryReport {
            quiver,
            iso,
            filtration,
            p,
            format,
        } => {
            let q = load_quiver(&quiver)?;
            let rs = positive_roots(&q)?;
            let class = parse_class(&rs, &iso)?;
            let f = load_filtration(&filtration)?;
            let report = geometry_report(&rs, &class, &f, p)?;
            let sep = |a: &str, b: &str| {
                if matches!(format, Format::Tsv) {
                    format!("{a}\t{b}")
                } else {
                    format!("{a} {b}")
                }
            };
            for row in &report.rows {
                let strata: Vec<String> = row.strata.iter().map(i64::to_string).collect();
                match format {
                    Format::Text => println!(
                        "point {}: strata ({}) tangent {} ext1 {}",
                        row.index,
                        strata.join(","),
                        row.tangent,
                        row.ext1
                    ),
                    Format::Tsv => println!(
                        "{}\t{}\t{}\t{}",
                        row.index,
                        strata.join(","),
                        row.tangent,
                        row.ext1
                    ),
                }
            }
            println!("{}", sep("polynomial", &report.counting.polynomial.to_string()));
            println!("{}", sep("P(0)", &report.counting.at_zero.to_string()));
            println!("{}", sep("P(1)", &report.counting.at_one.to_string()));
            println!("{}", sep("dimRepFl", &report.codim.dim_rep_fl.to_string()));
            println!("{}", sep("dimRep", &report.codim.dim_rep.to_string()));
            println!("{}", sep("codim", &report.codim.codim.to_string()));
            println!("{}", sep("ext-bound", &report.codim.ext_bound.to_string()));
            println!(
                "{}",
                sep("bound-holds", &report.codim.bound_holds.to_string())
            );
            if let Some(min_ext) = report.min_ext1_observed {
                println!("{}", sep("min-ext1-observed", &min_ext.to_string()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            quiver,
            max_word_len,
            primes,
            max_entry,
            max_levels,
            count,
            seed,
            format,
        } => {
            let q = load_quiver(&quiver)?;
            let report = match suite {
                SuiteName::ModqEquivalence => {
                    verify::modq_equivalence(&q, max_word_len, &primes)?
                }
                SuiteName::HallAssociativity => verify::hall_associativity(&q, &primes)?,
                SuiteName::PsiIso => verify::psi_iso(&q, max_word_len)?,
                SuiteName::FiberFormula => {
                    verify::fiber_formula_suite(max_entry, max_levels, &primes)?
                }
                SuiteName::EulerIdentity => {
                    verify::euler_identity(&q, count, *primes.first().unwrap_or(&2), seed)?
                }
            };
            if matches!(format, Format::Tsv) {
                for line in &report.lines {
                    println!("{line}");
                }
            }
            println!("{}", report.summary());
            Ok(if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

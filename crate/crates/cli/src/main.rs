//! `lmwb`: command-line front end for the Brown–Thompson and n-adic
//! Lodha–Moore workbench.
//!
//! Exit status: 0 success, 1 verification failure or false predicate,
//! 2 inconclusive, 3 usage error.

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lmwb::abelian::{a_word, pi_word, rank_certificate, verify_pi_well_defined};
use lmwb::calculus::{identity_witness, to_standard_form_with_budget, verify_relation_family, DEFAULT_BUDGET};
use lmwb::cluster::{self, hgraph, Arrangement, Cell, SortedList, SpecialWord};
use lmwb::hnn::{check_witness, conjugate_by_stable, strictness_witness, verify_ascending, HnnCase};
use lmwb::{Addr, Error, GroupWord, Seq, TreePair, Variant};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lmwb", version, about = "Exact computations in F(n) and the n-adic Lodha-Moore groups")]
struct Cli {
    /// Arity n of the Cantor set {0,…,n-1}^ω (2 ≤ n ≤ 10)
    #[arg(short = 'n', value_name = "N")]
    n: u8,
    /// Print a JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Samples per relation family or per check
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// Address-length bound for generator enumeration
    #[arg(long, global = true, default_value_t = 5)]
    depth: usize,
    /// Step budget of the rewriting system
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a word at an eventually periodic point, e.g. "1001(0)"
    Eval { word: String, point: String },
    /// Decide whether two words are the same group element
    Eq { lhs: String, rhs: String },
    /// Standard form: an F(n) element followed by y letters
    Std { word: String },
    /// Abelianization image of a word, or a rank certificate with --certify
    Abel {
        word: Option<String>,
        /// G0, yG, Gy or yGy; omit for the F(n) map a
        #[arg(long)]
        variant: Option<String>,
        /// Check well-definedness on sampled relations and print a rank certificate
        #[arg(long)]
        certify: bool,
    },
    /// Check sampled instances of a relation family (1 to 4)
    Rel {
        #[arg(long)]
        family: u8,
        #[arg(long, default_value = "yGy")]
        variant: String,
    },
    /// Strictly ascending HNN decompositions
    Hnn {
        /// bt, f1, f2, f3, f4, n5, n6, n7 or n8
        #[arg(long)]
        case: String,
        #[command(subcommand)]
        action: HnnAction,
    },
    /// Cells of the cluster of an admissible arrangement
    Cluster {
        #[arg(long)]
        m: usize,
        /// Comma-separated diagonals x_i = x_{i+1}, 1 ≤ i < m
        #[arg(long, value_delimiter = ',')]
        type2: Vec<usize>,
        #[arg(value_enum, default_value_t = ClusterView::Cells)]
        view: ClusterView,
    },
    /// Decide whether a signed y word such as "y[00]+ y[01]-" is special
    Special { word: String },
    /// Coset subgraph of a sorted list of special words, one word per line
    Hgraph {
        #[arg(long)]
        list: String,
        /// Base element τ of the cosets F(n)τ_X τ
        #[arg(long, default_value = "1")]
        base: String,
        #[arg(value_enum)]
        action: HgraphAction,
    },
    /// Support of an F(n) element as open intervals
    Support { word: String },
    /// An element whose support is (s0̄, (n-1)̄)
    Dense { address: String },
}

#[derive(Subcommand)]
enum HnnAction {
    /// Check that conjugation by the stable letter maps the base into itself
    Verify,
    /// Check the strictness witness
    Witness,
    /// Conjugate a base word by the stable letter
    Conj {
        word: String,
        /// Conjugate by the inverse of the stable letter
        #[arg(long)]
        inverse: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClusterView {
    Cells,
    Euler,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum HgraphAction {
    Build,
    Match,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Fail,
}

struct Report {
    text: String,
    json: Value,
    status: Status,
}

impl Report {
    fn ok(text: impl Into<String>, json: Value) -> Report {
        Report { text: text.into(), json, status: Status::Ok }
    }

    fn check(passed: bool, text: impl Into<String>, json: Value) -> Report {
        Report { text: text.into(), json, status: if passed { Status::Ok } else { Status::Fail } }
    }
}

fn sign_char(s: i8) -> char {
    match s {
        -1 => '-',
        0 => '0',
        _ => '+',
    }
}

#[derive(Serialize)]
struct CellsJson<'a> {
    m: usize,
    type2: &'a BTreeSet<usize>,
    cells: &'a [Cell],
}

fn cells_json(a: &Arrangement, cells: &[Cell]) -> Value {
    serde_json::to_value(CellsJson { m: a.m, type2: &a.type2, cells }).unwrap()
}

/// Coordinates of a cube vertex, `x_1` first.
fn mask_label(mask: u32, m: usize) -> String {
    (0..m).map(|i| if mask >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn run(cli: &Cli) -> lmwb::Result<Report> {
    let n = cli.n;
    lmwb::seq::check_arity(n)?;
    let word = |s: &str| GroupWord::parse(s, n);
    let mut rng = StdRng::seed_from_u64(cli.seed);
    Ok(match &cli.cmd {
        Cmd::Eval { word: w, point } => {
            let (g, p) = (word(w)?, Seq::parse(point, n)?);
            let image = g.evaluate(&p);
            Report::ok(image.to_string(), json!({"word": g.to_string(), "point": p.to_string(), "image": image.to_string()}))
        }
        Cmd::Eq { lhs, rhs } => {
            let (a, b) = (word(lhs)?, word(rhs)?);
            match identity_witness(&a.concat(&b.inverse()), cli.budget)? {
                None => Report::ok("EQUAL", json!({"lhs": a.to_string(), "rhs": b.to_string(), "equal": true})),
                Some(p) => {
                    let (u, v) = (a.evaluate(&p), b.evaluate(&p));
                    Report::check(
                        false,
                        format!("NOT EQUAL\nat {p}: {u} vs {v}"),
                        json!({"lhs": a.to_string(), "rhs": b.to_string(), "equal": false,
                               "witness": {"point": p.to_string(), "lhs": u.to_string(), "rhs": v.to_string()}}),
                    )
                }
            }
        }
        Cmd::Std { word: w } => {
            let g = word(w)?;
            let sf = to_standard_form_with_budget(&g, cli.budget)?;
            let ys: Vec<Value> = sf.exponents().iter().map(|(a, e)| json!({"address": a.to_string(), "exponent": e})).collect();
            Report::ok(
                sf.to_string(),
                json!({"word": g.to_string(), "f": sf.fpart.to_string(), "y": ys, "identity": sf.is_identity(),
                       "normal_word": sf.to_word().to_string()}),
            )
        }
        Cmd::Abel { word: w, variant, certify } => {
            let v = variant.as_deref().map(Variant::parse).transpose()?;
            match (v, w, certify) {
                (Some(v), _, true) => {
                    let wd = verify_pi_well_defined(&mut rng, n, v, 4 * cli.samples);
                    let cert = rank_certificate(v, n);
                    let passed = wd.failures.is_empty() && cert.passed();
                    let mut text = format!(
                        "{v} n={n}: {} relations, {} class checks, {} failures\n",
                        wd.relations_checked,
                        wd.classes_checked,
                        wd.failures.len()
                    );
                    for f in &wd.failures {
                        text.push_str(&format!("  {f}\n"));
                    }
                    match &cert.basis {
                        Some(b) => {
                            let names: Vec<&str> = b.iter().map(|&k| cert.generators[k].as_str()).collect();
                            text.push_str(&format!("rank certificate: {} (det {})", names.join(" "), cert.det));
                        }
                        None => text.push_str("rank certificate: none"),
                    }
                    Report::check(passed, text, json!({"well_defined": wd, "certificate": cert}))
                }
                (_, Some(w), false) => {
                    let g = word(w)?;
                    let img = match v {
                        Some(v) => pi_word(v, &g)?,
                        None => a_word(&g)?,
                    };
                    let text = format!("({})", img.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
                    Report::ok(text, json!({"word": g.to_string(), "variant": v.map(|v| v.to_string()), "image": img}))
                }
                _ => return Err(Error::PreconditionViolated("abel takes a word, or --variant with --certify".into())),
            }
        }
        Cmd::Rel { family, variant } => {
            if !(1..=4).contains(family) {
                return Err(Error::PreconditionViolated("relation families are numbered 1 to 4".into()));
            }
            let v = Variant::parse(variant)?;
            let r = verify_relation_family(&mut rng, n, *family, v, cli.samples);
            if r.failures.is_empty() && r.inconclusive > 0 {
                return Err(Error::Inconclusive(format!("{} instances undecided", r.inconclusive)));
            }
            let mut text = format!("family {family} {v} n={n}: {} checked, {} failures", r.checked, r.failures.len());
            for f in &r.failures {
                text.push_str(&format!("\n  {f}"));
            }
            Report::check(r.passed(), text, json!(r))
        }
        Cmd::Hnn { case, action } => {
            let case = HnnCase::parse(case)?;
            match action {
                HnnAction::Verify => {
                    let r = verify_ascending(case, n, cli.depth);
                    let mut text = format!(
                        "{case} n={n} base {}: {} generators, {} generation checks, {} failures",
                        r.base,
                        r.generators_checked,
                        r.generation_checked,
                        r.failures.len()
                    );
                    for f in &r.failures {
                        text.push_str(&format!("\n  {f}"));
                    }
                    Report::check(r.passed(), text, json!(r))
                }
                HnnAction::Witness => {
                    let w = strictness_witness(case, n);
                    let ok = check_witness(&w);
                    let mut text = format!("{case} n={n}: {:?} witness {}", w.mode, w.element);
                    if let Some(p) = &w.point {
                        text.push_str(&format!(" at {p} -> {}", w.element.evaluate(p)));
                    }
                    if let Some(c) = &w.cylinder {
                        text.push_str(&format!(" on cylinder {c}"));
                    }
                    text.push_str(if ok { "\nVALID" } else { "\nINVALID" });
                    Report::check(ok, text, json!({"witness": w, "valid": ok}))
                }
                HnnAction::Conj { word: w, inverse } => {
                    let g = word(w)?;
                    let img = conjugate_by_stable(case, &g, if *inverse { -1 } else { 1 })?;
                    Report::ok(img.to_string(), json!({"case": case.name(), "word": g.to_string(), "image": img.to_string()}))
                }
            }
        }
        Cmd::Cluster { m, type2, view } => {
            let a = Arrangement::new(*m, type2.iter().copied())?;
            let c = cluster::cluster(&a);
            match view {
                ClusterView::Json => {
                    let doc = CellsJson { m: a.m, type2: &a.type2, cells: &c.cells };
                    Report::ok(serde_json::to_string_pretty(&doc).unwrap(), cells_json(&a, &c.cells))
                }
                ClusterView::Euler => {
                    let chi = c.euler_characteristic();
                    Report::ok(chi.to_string(), json!({"m": a.m, "type2": a.type2, "counts": c.counts(), "euler": chi}))
                }
                ClusterView::Dot => {
                    let dot = c.to_dot();
                    Report::ok(dot.trim_end(), json!({"dot": dot}))
                }
                ClusterView::Cells => {
                    let hs: Vec<String> = a.hyperplanes().iter().map(|h| h.to_string()).collect();
                    let mut text = format!("hyperplanes: {}\n", hs.join(", "));
                    for cell in &c.cells {
                        text.push_str(&format!("{} {}\n", cell.dim, cell.sign.iter().map(|&s| sign_char(s)).collect::<String>()));
                    }
                    let counts: Vec<String> = c.counts().iter().map(|k| k.to_string()).collect();
                    text.push_str(&format!("counts: {}", counts.join(" ")));
                    Report::ok(text, cells_json(&a, &c.cells))
                }
            }
        }
        Cmd::Special { word: w } => {
            let letters = SpecialWord::parse_letters(w, n)?;
            let ok = cluster::is_special(&letters, n);
            let shown: Vec<String> = letters.iter().map(|l| l.to_string()).collect();
            Report::check(ok, if ok { "SPECIAL" } else { "NOT SPECIAL" }, json!({"word": shown.join(" "), "special": ok}))
        }
        Cmd::Hgraph { list, base, action } => {
            let text = fs::read_to_string(list).map_err(|e| Error::PreconditionViolated(format!("{list}: {e}")))?;
            let list = SortedList::parse(&text, n)?;
            match action {
                HgraphAction::Build => {
                    let h = cluster::h_subgraph(&list, &word(base)?, cli.budget)?;
                    let mut out = String::new();
                    for (mask, w) in hgraph::vertex_table(&h) {
                        out.push_str(&format!("{} class {} {w}\n", mask_label(mask, list.m()), h.class[mask as usize]));
                    }
                    for (u, v) in &h.edges {
                        out.push_str(&format!("{} -- {}\n", mask_label(*u, list.m()), mask_label(*v, list.m())));
                    }
                    out.push_str(&format!("{} cosets, {} edges", h.vertex_count(), h.edges.len()));
                    Report::check(h.distinct(), out, json!(h))
                }
                HgraphAction::Match => {
                    let r = cluster::skeleton_match(&list, cli.budget)?;
                    let mut text = format!(
                        "m={} Y={:?}: {} cluster edges, {} graph edges, {}",
                        r.m,
                        r.y_set,
                        r.cluster_edges.len(),
                        r.graph_edges.len(),
                        if r.matched() { "MATCH" } else { "MISMATCH" }
                    );
                    if !r.distant_consecutive.is_empty() {
                        text.push_str(&format!("\ndistant consecutive pairs: {:?}", r.distant_consecutive));
                    }
                    Report::check(r.matched(), text, json!({"report": r, "matched": r.matched()}))
                }
            }
        }
        Cmd::Support { word: w } => {
            let g = word(w)?;
            let t = g.to_treepair().ok_or_else(|| Error::VariantMismatch(format!("{g} contains y letters")))?;
            let ivs: Vec<String> = t.support().iter().map(|i| i.to_string()).collect();
            let text = if ivs.is_empty() { "empty".to_string() } else { ivs.join("\n") };
            Report::ok(text, json!({"word": g.to_string(), "tree": t.to_string(), "support": ivs}))
        }
        Cmd::Dense { address } => {
            let s = Addr::parse(address, n)?;
            let t = TreePair::dense_support_element(n, &s);
            let ivs: Vec<String> = t.support().iter().map(|i| i.to_string()).collect();
            Report::ok(
                format!("{t}\nsupport: {}", ivs.join(" ")),
                json!({"address": s.to_string(), "tree": t.to_string(), "support": ivs}),
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 3 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.json).unwrap());
            } else {
                println!("{}", r.text);
            }
            ExitCode::from(if r.status == Status::Ok { 0 } else { 1 })
        }
        Err(Error::Inconclusive(msg)) => {
            eprintln!("INCONCLUSIVE: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

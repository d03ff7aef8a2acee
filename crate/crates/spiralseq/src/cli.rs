//! Command-line front end. `run` returns the exit code: 0 pass, 1 invariant
//! failure, 2 bad input.

use crate::couple::{couple_check, couple_pages};
use crate::dk::{delta_arrow, delta_op, dk_component, dk_mapping_space};
use crate::homalg::{pages_agree, staircase_pages, Filtration, Page};
use crate::io::{page_rows, pages_dot, pages_tsv, parse_input, BicomplexJson, BisimplicialJson, CochainJson, CosimplicialJson, Input};
use crate::perm::{face_lattice, label_obstruction_boundary, order_complex, render_partition};
use crate::random::{random_bicomplex, Bounds};
use crate::simplex_cat::eval_word;
use crate::simplicial::{dold_kan_inverse2, gamma_horizontal, SimplicialChains};
use crate::spiral::{diag_abutment_check, face_kernel_check, fibrancy_check, lifting_check, spiral_couple, spiral_pages};
use crate::sset::{Ring, SSet, SSetJson};
use crate::tot::{d1_check, dual_dold_kan, dual_gamma, lift_check, row_staircase, tot_couple, tot_tower, CochainBicomplex, CosimplicialChains};
use crate::verify::{run_suite, SuiteArgs};
use crate::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "spiralseq", version, about = "Exact spectral sequences, DK mapping spaces and permutahedra")]
pub struct Cli {
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Lattice,
    Complex,
    Labels,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Bicomplex,
    Bisimplicial,
    Cochain,
    Cosimplicial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Checks {
    All,
    None,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Mapping space of the resolution of the restricted simplex category, as sset JSON.
    GenDk {
        #[arg(long, default_value = "delta-op")]
        cat: String,
        /// Source object `[j]`.
        #[arg(long)]
        from: i64,
        /// Target object `[m]`, `m <= j`.
        #[arg(long)]
        to: i64,
        /// Face word such as `d0d2`; only that component.
        #[arg(long)]
        component: Option<String>,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Permutahedron face lattice, order complex or obstruction labels.
    Perm {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "lattice")]
        emit: Emit,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Homology of an sset (over Z or F_p) or of the total object of a page input.
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
        /// `z` or a prime.
        #[arg(long, default_value = "z")]
        ring: String,
    },
    /// Spiral spectral sequence of a bicomplex or bisimplicial input.
    Spiral {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        rmax: usize,
        #[arg(long, value_enum, default_value = "none")]
        verify: Checks,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tot-tower spectral sequence of a cochain or cosimplicial input.
    Totss {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        rmax: usize,
        #[arg(long, value_enum, default_value = "none")]
        verify: Checks,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Seeded random instance.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "bicomplex")]
        kind: Kind,
        /// Largest column index.
        #[arg(long = "N", default_value_t = 3)]
        n: usize,
        /// Largest row index.
        #[arg(long = "Q", default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// Run a named check battery.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_gap: Option<usize>,
        #[arg(long, default_value_t = 100)]
        seeds: usize,
        #[arg(long, default_value_t = 0)]
        first_seed: u64,
        #[arg(long, default_value_t = 6)]
        rmax: usize,
    },
}

/// Result of a command: text for the main output, and a failure witness.
pub struct Outcome {
    pub text: String,
    pub witness: Option<Value>,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, witness: None }
    }
}

/// Suite aliases used by the published command examples.
const ALIASES: &[(&str, &str)] = &[
    ("lemma5.3", "factorizations"),
    ("prop5.4", "components"),
    ("lemma4.1", "face-kernel"),
    ("thm3.3", "spiral"),
    ("con4.2", "lifting"),
    ("con7.3-d1", "d1"),
    ("prop9.5", "tot-lift"),
    ("rem6.6", "labels"),
];

fn suite_name(s: &str) -> &str {
    ALIASES.iter().find(|(a, _)| *a == s).map_or(s, |(_, n)| n)
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// Single-line JSON, for matrix-heavy instances.
fn to_json_line<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Parse and execute; everything but the exit code is returned as text.
pub fn execute(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::GenDk { cat, from, to, component, max_dim } => gen_dk(cat, *from, *to, component.as_deref(), *max_dim),
        Cmd::Perm { n, emit, format } => perm(*n, *emit, *format),
        Cmd::Homology { input, ring } => homology(&read(input)?, ring),
        Cmd::Spiral { input, rmax, verify, format } => spiral(&read(input)?, *rmax, *verify, *format),
        Cmd::Totss { input, rmax, verify, format } => totss(&read(input)?, *rmax, *verify, *format),
        Cmd::Random { seed, kind, n, q, p, max_dim } => random(*seed, *kind, Bounds { p: *p, n: *n, q: *q, max_dim: *max_dim }),
        Cmd::Verify { suite, max_gap, seeds, first_seed, rmax } => {
            let name = suite_name(suite);
            let default_gap = if name == "factorizations" { 8 } else { 5 };
            let args = SuiteArgs { max_gap: max_gap.unwrap_or(default_gap), first_seed: *first_seed, seeds: *seeds, r_max: *rmax };
            let rep = run_suite(name, &args)?;
            Ok(Outcome { text: to_json(&rep), witness: rep.witness.clone() })
        }
    }
}

/// Run with process arguments; prints, writes `--out`, and returns the exit code.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &out.text) {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{}", out.text);
            }
            match out.witness {
                Some(w) => {
                    eprintln!("invariant failure: {}", serde_json::to_string(&w).unwrap_or_default());
                    1
                }
                None => 0,
            }
        }
        Err(e @ Error::Invalid(_)) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("invariant failure: {e}");
            1
        }
    }
}

fn parse_word(s: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::Invalid(format!("face word {s:?} is not of the form d0d2.."));
    if s == "id" {
        return Ok(vec![]);
    }
    s.strip_prefix('d').ok_or_else(bad)?.split('d').map(|t| t.parse::<usize>().map_err(|_| bad())).collect()
}

fn gen_dk(cat: &str, from: i64, to: i64, component: Option<&str>, max_dim: Option<usize>) -> Result<Outcome, Error> {
    if cat != "delta-op" {
        return Err(Error::Invalid(format!("unknown category {cat:?}; only delta-op")));
    }
    if to > from {
        return Err(Error::Invalid(format!("need --to <= --from, got {to} > {from}")));
    }
    let (c, _) = delta_op(to, from)?;
    let dim = max_dim.unwrap_or((from - to) as usize);
    let space = match component {
        Some(w) => {
            let th = eval_word(&parse_word(w)?, from)?;
            if th.src != to {
                return Err(Error::Invalid(format!("{w} runs from [{}], not [{to}]", th.src)));
            }
            dk_component(&c, delta_arrow(&c, to, &th)?, dim)?
        }
        None => dk_mapping_space(&c, c.object(&format!("[{from}]"))?, c.object(&format!("[{to}]"))?, dim)?,
    };
    Ok(Outcome::ok(to_json(&space.sset.to_json())))
}

fn sset_dot(s: &SSet) -> String {
    let mut out = String::from("graph complex {\n");
    for name in s.names.first().into_iter().flatten() {
        out.push_str(&format!("  \"{name}\";\n"));
    }
    if s.names.len() > 1 {
        for c in 0..s.count(1) {
            let v = s.vertices_of(1, c);
            out.push_str(&format!("  \"{}\" -- \"{}\";\n", s.names[0][v[0]], s.names[0][v[1]]));
        }
    }
    out.push_str("}\n");
    out
}

fn perm(n: usize, emit: Emit, format: Format) -> Result<Outcome, Error> {
    if n > 5 {
        return Err(Error::Invalid(format!("n = {n} too large, at most 5")));
    }
    let text = match (emit, format) {
        (_, Format::Tsv) => return Err(Error::Invalid("tsv is only for pages".into())),
        (Emit::Lattice, Format::Json) => {
            let l = face_lattice(n);
            let faces: Vec<Vec<String>> = l.faces.iter().map(|v| v.iter().map(render_partition).collect()).collect();
            to_json(&json!({"n": n, "f_vector": l.f_vector(), "faces": faces, "covers": l.covers}))
        }
        (Emit::Lattice, Format::Dot) => {
            let l = face_lattice(n);
            let mut s = String::from("digraph lattice {\n  rankdir=BT;\n");
            for (k, fs) in l.faces.iter().enumerate() {
                for f in fs {
                    s.push_str(&format!("  \"{}\" [rank={k}];\n", render_partition(f)));
                }
            }
            for &(k, i, j) in &l.covers {
                s.push_str(&format!("  \"{}\" -> \"{}\";\n", render_partition(&l.faces[k][i]), render_partition(&l.faces[k + 1][j])));
            }
            s.push_str("}\n");
            s
        }
        (Emit::Complex, Format::Json) => to_json(&order_complex(n).to_json()),
        (Emit::Complex, Format::Dot) => sset_dot(&order_complex(n)),
        (Emit::Labels, Format::Json) => to_json(&label_obstruction_boundary(n, n)?),
        (Emit::Labels, Format::Dot) => {
            let mut s = String::from("digraph labels {\n");
            for l in label_obstruction_boundary(n, n)? {
                s.push_str(&format!("  \"{}\" [label=\"{}\\n{}\"];\n", l.display, l.display, l.label));
            }
            s.push_str("}\n");
            s
        }
    };
    Ok(Outcome::ok(text))
}

fn parse_ring(s: &str) -> Result<Ring, Error> {
    if s.eq_ignore_ascii_case("z") {
        return Ok(Ring::Z);
    }
    let p: u32 = s.parse().map_err(|_| Error::Invalid(format!("ring {s:?}: expected z or a prime")))?;
    crate::io::check_prime(p)?;
    Ok(Ring::Fp(p))
}

fn homology(text: &str, ring: &str) -> Result<Outcome, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("not JSON: {e}")))?;
    let degrees: Vec<Value> = if v.get("cells").is_some() {
        let j: SSetJson = serde_json::from_value(v).map_err(|e| Error::Invalid(format!("schema: {e}")))?;
        let s = SSet::from_json(&j)?;
        s.homology(parse_ring(ring)?)?.into_iter().map(|g| json!({"betti": g.betti, "torsion": g.torsion})).collect()
    } else {
        let betti = match parse_input(text)? {
            Input::Bicomplex(b) => b.total().betti(),
            Input::Bisimplicial(x) => x.diag().homotopy(),
            Input::Cochain(a) => shifted_tot_betti(&a),
            Input::Cosimplicial(x) => shifted_tot_betti(&x.normalize_internal().normalized()?),
        };
        betti.into_iter().map(|b| json!({"betti": b, "torsion": []})).collect()
    };
    Ok(Outcome::ok(to_json(&json!({"degrees": degrees}))))
}

/// Homology of the top Tot stage, indexed by shifted degree.
fn shifted_tot_betti(a: &CochainBicomplex) -> Vec<usize> {
    tot_tower(a).tot.last().map_or_else(Vec::new, |c| c.betti())
}

fn emit_pages(pages: &[Page], format: Format, checks: Vec<Value>) -> Outcome {
    let failed = checks.iter().find(|c| c["pass"] == json!(false)).cloned();
    let text = match format {
        Format::Json => to_json(&json!({"pages": page_rows(pages), "checks": checks})),
        Format::Tsv => pages_tsv(pages),
        Format::Dot => pages_dot(pages),
    };
    Outcome { text, witness: failed }
}

fn check(name: &str, result: Result<(), String>) -> Value {
    match result {
        Ok(()) => json!({"check": name, "pass": true}),
        Err(d) => json!({"check": name, "pass": false, "detail": d}),
    }
}

fn failures(v: &[String]) -> Result<(), String> {
    if v.is_empty() {
        Ok(())
    } else {
        Err(v.join("; "))
    }
}

fn spiral(text: &str, rmax: usize, verify: Checks, format: Format) -> Result<Outcome, Error> {
    let y: SimplicialChains = match parse_input(text)? {
        Input::Bicomplex(b) => gamma_horizontal(&b, b.cols()),
        Input::Bisimplicial(x) => x.normalize_vertical(),
        _ => return Err(Error::Invalid("spiral takes a bicomplex or bisimplicial input".into())),
    };
    let pages = spiral_pages(&y, rmax)?;
    let mut checks = Vec::new();
    if verify == Checks::All {
        let (m, _) = y.moore_bicomplex();
        let c = spiral_couple(&m)?;
        checks.push(check("couple-exact", failures(&couple_check(&c).failures)));
        let st = staircase_pages(&m.filtered(Filtration::Column), rmax);
        checks.push(check("staircase", pages_agree(&couple_pages(&c, rmax)?, &st)));
        let fk = face_kernel_check(&y)?;
        checks.push(check("face-kernel", if fk.ok { Ok(()) } else { Err(format!("{:?}", fk.entries)) }));
        let fib = fibrancy_check(&y);
        checks.push(check("horn-fibrancy", if fib.horn_surjective && fib.kernel_is_chains { Ok(()) } else { failures(&fib.failures) }));
        checks.push(check("lifting", failures(&lifting_check(&m, rmax)?.failures)));
        checks.push(check("abutment", diag_abutment_check(&m)));
    }
    Ok(emit_pages(&pages, format, checks))
}

fn totss(text: &str, rmax: usize, verify: Checks, format: Format) -> Result<Outcome, Error> {
    let (a, w): (CochainBicomplex, CosimplicialChains) = match parse_input(text)? {
        Input::Cochain(a) => {
            let w = dual_gamma(&a, a.cols());
            (a, w)
        }
        Input::Cosimplicial(x) => {
            let w = x.normalize_internal();
            (w.normalized()?, w)
        }
        _ => return Err(Error::Invalid("totss takes a cochain or cosimplicial input".into())),
    };
    let c = tot_couple(&a, rmax)?;
    let pages = couple_pages(&c, rmax)?;
    let mut checks = Vec::new();
    if verify == Checks::All {
        checks.push(check("couple-exact", failures(&couple_check(&c).failures)));
        checks.push(check("row-staircase", pages_agree(&pages, &row_staircase(&a, rmax))));
        checks.push(check("d1", failures(&d1_check(&w)?.failures)));
        let bad: Vec<String> = lift_check(&a)?.into_iter().filter(|r| !r.agree).map(|r| format!("{r:?}")).collect();
        checks.push(check("lifts", failures(&bad)));
    }
    Ok(emit_pages(&pages, format, checks))
}

fn random(seed: u64, kind: Kind, bounds: Bounds) -> Result<Outcome, Error> {
    crate::io::check_prime(bounds.p)?;
    if bounds.n > 5 || bounds.q > 5 || bounds.max_dim > 4 {
        return Err(Error::Invalid("bounds too large: N, Q <= 5 and max-dim <= 4".into()));
    }
    let text = match kind {
        Kind::Bicomplex => to_json_line(&BicomplexJson::from_bicomplex(&random_bicomplex(seed, &bounds))),
        Kind::Bisimplicial => {
            // N and Q are the top simplicial levels; the chains sit strictly below
            if bounds.n == 0 || bounds.q == 0 {
                return Err(Error::Invalid("bisimplicial instances need N, Q >= 1".into()));
            }
            let b = random_bicomplex(seed, &Bounds { n: bounds.n - 1, q: bounds.q - 1, ..bounds });
            to_json_line(&BisimplicialJson::from_bisimplicial(&dold_kan_inverse2(&b, bounds.n, bounds.q)))
        }
        Kind::Cochain => to_json_line(&CochainJson::from_cochain(&CochainBicomplex::from_reversed(&random_bicomplex(seed, &bounds)))),
        Kind::Cosimplicial => {
            let a = CochainBicomplex::from_reversed(&random_bicomplex(seed, &bounds));
            to_json_line(&CosimplicialJson::from_cosimplicial(&dual_dold_kan(&a, a.rows())))
        }
    };
    Ok(Outcome::ok(text))
}

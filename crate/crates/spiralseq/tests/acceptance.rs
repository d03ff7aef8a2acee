//! One line per acceptance criterion; exits nonzero if any line fails.
//! Runs without the libtest harness so the lines are always shown.

use spiralseq::cli::{execute, Cli};
use spiralseq::dk::{component_of, delta_arrow, delta_op, dk_mapping_space};
use spiralseq::simplex_cat::enumerate_injections;
use spiralseq::homalg::{pages_agree, staircase_pages, Filtration};
use spiralseq::io::{pages_tsv, BicomplexJson};
use spiralseq::random::{corpus, random_bicomplex, Bounds};
use spiralseq::simplicial::dold_kan_inverse2;
use spiralseq::spiral::spiral_pages;
use spiralseq::sset::Ring;
use spiralseq::verify::{engineered, run_suite, top_nonzero_differential, SuiteArgs};
use clap::Parser;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn suite(name: &str, args: &SuiteArgs) -> Outcome {
    let r = run_suite(name, args).map_err(|e| e.to_string())?;
    if r.pass {
        Ok(format!("{name}: {} checks", r.checked))
    } else {
        Err(format!("{name}: {}", r.witness.map(|w| w.to_string()).unwrap_or_default()))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_gaps() -> Outcome {
    for m in 0..=5i64 {
        let (cat, _) = delta_op(m - 1, m).map_err(|e| e.to_string())?;
        let s = dk_mapping_space(&cat, cat.object(&format!("[{m}]")).unwrap(), cat.object(&format!("[{}]", m - 1)).unwrap(), 3).map_err(|e| e.to_string())?;
        ensure(s.sset.f_vector() == vec![m as usize + 1], || format!("gap 1 at [{m}]: {:?}", s.sset.f_vector()))?;
    }
    for (gap, f, ncomp) in [(2i64, vec![3usize, 2], 3usize), (3, vec![13, 24, 12], 4)] {
        let (cat, _) = delta_op(0, gap).map_err(|e| e.to_string())?;
        let s = dk_mapping_space(&cat, cat.object(&format!("[{gap}]")).unwrap(), cat.object("[0]").unwrap(), gap as usize).map_err(|e| e.to_string())?;
        ensure(s.sset.num_components() == ncomp, || format!("gap {gap}: {} components", s.sset.num_components()))?;
        for th in enumerate_injections(0, gap) {
            let c = component_of(&cat, &s, delta_arrow(&cat, 0, &th).unwrap()).map_err(|e| e.to_string())?;
            ensure(c.f_vector() == f && c.euler_characteristic() == 1, || format!("gap {gap}: component f-vector {:?}", c.f_vector()))?;
            let betti = c.betti(Ring::Z).map_err(|e| e.to_string())?;
            ensure(betti.iter().sum::<usize>() == 1, || format!("gap {gap}: betti {betti:?}"))?;
        }
    }
    Ok("gap 1 discrete, gap 2 paths, gap 3 f = (13,24,12)".into())
}

fn spiral_on_bisimplicial() -> Outcome {
    let mut n = 0;
    for seed in 0..100u64 {
        let b = random_bicomplex(seed, &Bounds { p: if seed % 2 == 0 { 2 } else { 3 }, n: 2, q: 2, max_dim: 2 });
        let x = dold_kan_inverse2(&b, b.cols(), b.rows());
        x.validate().map_err(|e| e.to_string())?;
        let sp = spiral_pages(&x.normalize_vertical(), 5).map_err(|e| e.to_string())?;
        let st = staircase_pages(&b.filtered(Filtration::Column), 5);
        pages_agree(&sp[1..], &st[1..]).map_err(|e| format!("seed {seed}: {e}"))?;
        n += 1;
    }
    Ok(format!("{n} explicit bisimplicial instances"))
}

fn engineered_census() -> Outcome {
    let tops: Vec<Option<usize>> = engineered().iter().map(|(_, b)| top_nonzero_differential(b, 6).unwrap()).collect();
    let d2 = tops.iter().filter(|t| **t == Some(2)).count();
    let d3 = tops.iter().filter(|t| **t == Some(3)).count();
    ensure(d2 >= 3 && d3 >= 1, || format!("tops {tops:?}"))?;
    Ok(format!("{d2} with top d2, {d3} with top d3"))
}

fn determinism() -> Outcome {
    let dump = || -> String { corpus(0, 100).iter().map(|(_, b)| serde_json::to_string(&BicomplexJson::from_bicomplex(b)).unwrap()).collect() };
    ensure(dump() == dump(), || "corpus differs".into())?;
    for kind in ["bicomplex", "bisimplicial", "cochain", "cosimplicial"] {
        let cli = Cli::parse_from(["spiralseq", "random", "--seed", "7", "--kind", kind, "--N", "3", "--Q", "3"]);
        let a = execute(&cli).map_err(|e| e.to_string())?.text;
        let b = execute(&cli).map_err(|e| e.to_string())?.text;
        ensure(a == b, || format!("random {kind} differs"))?;
    }
    let pages = |seed| {
        let b = random_bicomplex(seed, &Bounds::default());
        pages_tsv(&staircase_pages(&b.filtered(Filtration::Column), 6))
    };
    ensure(pages(3) == pages(3), || "pages differ".into())?;
    Ok("corpus, random instances and page tables repeat byte for byte".into())
}

fn within(limit: Duration, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let r = f();
    let el = t.elapsed();
    let r = match r {
        Ok(s) if el > limit => Err(format!("{s}, but took {el:?} > {limit:?}")),
        other => other,
    };
    (r, el)
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    Ok(format!("{}; {}", a?, b?))
}

fn main() {
    let corpus_args = SuiteArgs::default();
    let secs = Duration::from_secs;
    let criteria: Vec<(&str, Duration, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("small DK mapping spaces", secs(5), Box::new(small_gaps)),
        ("components are permutahedra", secs(60), Box::new(|| suite("components", &SuiteArgs { max_gap: 5, ..SuiteArgs::default() }))),
        ("two-step factorizations", secs(5), Box::new(|| suite("factorizations", &SuiteArgs { max_gap: 8, ..SuiteArgs::default() }))),
        ("spiral pages = column staircase", secs(300), Box::new(|| both(suite("spiral", &SuiteArgs::default()), spiral_on_bisimplicial()))),
        ("homotopy of chains = chains of homotopy", secs(300), Box::new(|| suite("face-kernel", &SuiteArgs::default()))),
        ("lifted differentials = couple differentials", secs(300), Box::new(|| both(engineered_census(), suite("lifting", &SuiteArgs::default())))),
        ("abutment to the diagonal", secs(300), Box::new(|| suite("abutment", &corpus_args))),
        ("Tot tower: d1, row staircase, lifts", secs(120), Box::new(|| both(suite("d1", &SuiteArgs::default()), suite("tot-lift", &SuiteArgs::default())))),
        ("obstruction labels", secs(5), Box::new(|| suite("labels", &SuiteArgs::default()))),
        ("determinism", secs(60), Box::new(determinism)),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (r, el) = within(limit, f);
        match r {
            Ok(s) => println!("criterion {:>2} PASS  {name} ({el:.2?}): {s}", i + 1),
            Err(e) => {
                println!("criterion {:>2} FAIL  {name} ({el:.2?}): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

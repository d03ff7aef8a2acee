//! Named batteries of invariant checks over fixed families and the seeded corpus.
//! Each suite stops at its first failure and keeps a serializable witness.

use crate::couple::{couple_check, couple_pages};
use crate::dk::{component_boundary, delta_arrow, delta_op, dk_component, dk_mapping_space, leaf_census};
use crate::homalg::{pages_agree, staircase_pages, Bicomplex, Filtration};
use crate::io::{BicomplexJson, CochainJson};
use crate::perm::{boundary_coequalizer_check, face_lattice, label_obstruction_boundary, Label};
use crate::random::corpus;
use crate::simplex_cat::{compose, enumerate_injections, factorization_of_subset, factorizations2, ordered_partitions, subset_of_factorization, Injection};
use crate::simplicial::gamma_horizontal;
use crate::spiral::{diag_abutment_check, direct_sum, engineered_d2, engineered_d3, face_kernel_check, lifting_check, moore_of_bicomplex, spiral_couple};
use crate::sset::Ring;
use crate::tot::{d1_check, dual_gamma, lift_check, row_staircase, tot_couple, CochainBicomplex};
use crate::Error;
use serde::Serialize;
use serde_json::{json, Value};

/// Suite names accepted by `run_suite`.
pub const SUITES: &[&str] = &["factorizations", "components", "face-kernel", "spiral", "lifting", "abutment", "d1", "tot-lift", "labels"];

#[derive(Clone, Debug)]
pub struct SuiteArgs {
    pub max_gap: usize,
    pub first_seed: u64,
    pub seeds: usize,
    pub r_max: usize,
}

impl Default for SuiteArgs {
    fn default() -> Self {
        SuiteArgs { max_gap: 5, first_seed: 0, seeds: 100, r_max: 6 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub pass: bool,
    /// First failure, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

struct Run {
    checked: usize,
    witness: Option<Value>,
}

impl Run {
    fn new() -> Run {
        Run { checked: 0, witness: None }
    }

    /// Record one check; keeps only the first failure.
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) -> bool {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
        ok
    }

    fn failed(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn run_suite(name: &str, args: &SuiteArgs) -> Result<SuiteReport, Error> {
    let mut run = Run::new();
    match name {
        "factorizations" => factorizations(&mut run, args.max_gap),
        "components" => components(&mut run, args.max_gap)?,
        "face-kernel" => face_kernel(&mut run, args)?,
        "spiral" => spiral(&mut run, args)?,
        "lifting" => lifting(&mut run, args)?,
        "abutment" => abutment(&mut run, args),
        "d1" => d1(&mut run, args)?,
        "tot-lift" => tot_lift(&mut run, args)?,
        "labels" => labels(&mut run)?,
        _ => return Err(Error::Invalid(format!("unknown suite {name:?}; known: {}", SUITES.join(", ")))),
    }
    Ok(SuiteReport { suite: name.to_string(), checked: run.checked, pass: run.witness.is_none(), witness: run.witness })
}

fn inj_json(t: &Injection) -> Value {
    json!({"src": t.src, "tgt": t.tgt, "image": t.image})
}

fn bic_json(seed: u64, b: &Bicomplex, detail: String) -> Value {
    json!({"seed": seed, "detail": detail, "instance": BicomplexJson::from_bicomplex(b)})
}

fn coch_json(seed: u64, a: &CochainBicomplex, detail: String) -> Value {
    json!({"seed": seed, "detail": detail, "instance": CochainJson::from_cochain(a)})
}

/// Brute-force count of pairs `(g, f)` with `f o g = theta`.
fn factorization_count_brute(theta: &Injection) -> usize {
    let mut n = 0;
    for k in theta.src..=theta.tgt {
        for g in enumerate_injections(theta.src, k) {
            for f in enumerate_injections(k, theta.tgt) {
                if compose(&g, &f).ok().as_ref() == Some(theta) {
                    n += 1;
                }
            }
        }
    }
    n
}

fn factorizations(run: &mut Run, max_gap: usize) {
    for gap in 0..=max_gap as i64 {
        for lo in [-1i64, 0, 1] {
            for th in enumerate_injections(lo, lo + gap) {
                let fs = factorizations2(&th);
                let want = 1usize << gap;
                if !run.check(fs.len() == want && factorization_count_brute(&th) == want, || json!({"theta": inj_json(&th), "count": fs.len(), "expected": want})) {
                    return;
                }
                for (g, f) in &fs {
                    let s = subset_of_factorization(&th, f);
                    let back = factorization_of_subset(&th, &s);
                    let ok = back == (g.clone(), f.clone()) && compose(g, f).ok().as_ref() == Some(&th);
                    if !run.check(ok, || json!({"theta": inj_json(&th), "f": inj_json(f), "subset": s})) {
                        return;
                    }
                }
            }
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn components(run: &mut Run, max_gap: usize) -> Result<(), Error> {
    for gap in 1..=max_gap.min(5) as i64 {
        for lo in [-1i64, 0] {
            let hi = lo + gap;
            let (cat, _) = delta_op(lo, hi)?;
            let (a, b) = (cat.object(&format!("[{hi}]"))?, cat.object(&format!("[{lo}]"))?);
            let pi0 = dk_mapping_space(&cat, a, b, 1)?.sset.num_components();
            let want = binom((hi + 1) as usize, (lo + 1) as usize);
            if !run.check(pi0 == want, || json!({"from": hi, "to": lo, "components": pi0, "expected": want})) {
                return Ok(());
            }
        }
        // every component between [gap] and [0] has the same shape; check each
        for th in enumerate_injections(0, gap) {
            let (cat, _) = delta_op(0, gap)?;
            let sp = dk_component(&cat, delta_arrow(&cat, 0, &th)?, gap as usize)?;
            let h = sp.sset.homology(Ring::Z)?;
            let contractible = h[0].betti == 1 && h[0].torsion.is_empty() && h[1..].iter().all(|g| g.betti == 0 && g.torsion.is_empty());
            if !run.check(contractible, || json!({"theta": inj_json(&th), "homology": h})) {
                return Ok(());
            }
            let bh = component_boundary(&sp)?.homology(Ring::Z)?;
            let sphere = sphere_homology(gap as usize - 1);
            if !run.check(bh.iter().map(|g| (g.betti, g.torsion.is_empty())).eq(sphere.iter().map(|&b| (b, true))), || json!({"theta": inj_json(&th), "boundary_homology": bh})) {
                return Ok(());
            }
            let census = leaf_census(&sp);
            let want: Vec<usize> = (0..=gap as usize).map(|l| ordered_partitions(gap as usize, l).len()).collect();
            if !run.check(census == want, || json!({"theta": inj_json(&th), "census": census, "expected": want})) {
                return Ok(());
            }
            // ordered partitions into l blocks are the (gap - l)-faces
            let fv = face_lattice(gap as usize - 1).f_vector();
            let by_dim: Vec<usize> = (0..gap as usize).map(|k| want[gap as usize - k]).collect();
            if !run.check(fv == by_dim, || json!({"gap": gap, "f_vector": fv, "census": want})) {
                return Ok(());
            }
        }
    }
    for n in 1..=3.min(max_gap.saturating_sub(1)) {
        let r = boundary_coequalizer_check(n)?;
        if !run.check(r.pass, || json!({"n": n, "report": r})) {
            return Ok(());
        }
    }
    Ok(())
}

/// Betti numbers of the sphere of dimension `d - 1` (the empty set for `d = 0`), degrees `0..d`.
fn sphere_homology(d: usize) -> Vec<usize> {
    let mut v = vec![0; d];
    if d == 1 {
        v[0] = 2;
    } else if d > 1 {
        v[0] = 1;
        v[d - 1] += 1;
    }
    v
}

fn face_kernel(run: &mut Run, args: &SuiteArgs) -> Result<(), Error> {
    for (seed, b) in corpus(args.first_seed, args.seeds) {
        let y = gamma_horizontal(&b, b.cols());
        let rep = face_kernel_check(&y)?;
        if !run.check(rep.ok, || bic_json(seed, &b, format!("{:?}", rep.entries))) {
            break;
        }
    }
    Ok(())
}

fn spiral(run: &mut Run, args: &SuiteArgs) -> Result<(), Error> {
    for (seed, b) in corpus(args.first_seed, args.seeds) {
        let m = moore_of_bicomplex(&b);
        let c = spiral_couple(&m)?;
        let rep = couple_check(&c);
        if !run.check(rep.ok, || bic_json(seed, &b, format!("couple: {:?}", rep.failures))) {
            break;
        }
        let sp = couple_pages(&c, args.r_max)?;
        let st = staircase_pages(&b.filtered(Filtration::Column), args.r_max);
        let agree = pages_agree(&sp, &st);
        if !run.check(agree.is_ok(), || bic_json(seed, &b, agree.clone().unwrap_err())) {
            break;
        }
    }
    Ok(())
}

/// The engineered instances: nonzero `d^2` at two primes and as a sum, and a `d^3`.
pub fn engineered() -> Vec<(String, Bicomplex)> {
    vec![
        ("d2/F2".into(), engineered_d2(2)),
        ("d2/F3".into(), engineered_d2(3)),
        ("d2+d2/F2".into(), direct_sum(&engineered_d2(2), &engineered_d2(2))),
        ("d2+d3/F3".into(), direct_sum(&engineered_d2(3), &engineered_d3(3))),
        ("d3/F2".into(), engineered_d3(2)),
    ]
}

/// Largest `r` with a nonzero differential on the spiral pages, if any.
pub fn top_nonzero_differential(b: &Bicomplex, r_max: usize) -> Result<Option<usize>, Error> {
    let m = moore_of_bicomplex(b);
    let pages = couple_pages(&spiral_couple(&m)?, r_max)?;
    Ok(pages.iter().filter(|pg| pg.diffs.values().any(|d| d.rank() > 0)).map(|pg| pg.r).max())
}

fn lifting(run: &mut Run, args: &SuiteArgs) -> Result<(), Error> {
    for (name, b) in engineered() {
        let m = moore_of_bicomplex(&b);
        let rep = lifting_check(&m, args.r_max)?;
        let top = top_nonzero_differential(&b, args.r_max)?;
        if !run.check(rep.failures.is_empty() && top >= Some(2), || json!({"instance": name, "top_differential": top, "failures": rep.failures})) {
            return Ok(());
        }
    }
    for (seed, b) in corpus(args.first_seed, args.seeds) {
        let y = gamma_horizontal(&b, b.cols());
        let (m, _) = y.moore_bicomplex();
        let rep = lifting_check(&m, args.r_max)?;
        if !run.check(rep.failures.is_empty(), || bic_json(seed, &b, rep.failures.join("; "))) {
            break;
        }
    }
    Ok(())
}

fn abutment(run: &mut Run, args: &SuiteArgs) {
    for (seed, b) in corpus(args.first_seed, args.seeds) {
        let r = diag_abutment_check(&b);
        if !run.check(r.is_ok(), || bic_json(seed, &b, r.clone().unwrap_err())) {
            break;
        }
    }
}

fn d1(run: &mut Run, args: &SuiteArgs) -> Result<(), Error> {
    for (seed, b) in corpus(args.first_seed + 1000, args.seeds) {
        let a = CochainBicomplex::from_reversed(&b);
        let rep = d1_check(&dual_gamma(&a, a.cols()))?;
        if !run.check(rep.failures.is_empty(), || coch_json(seed, &a, rep.failures.join("; "))) {
            break;
        }
        let c = tot_couple(&a, args.r_max)?;
        let cr = couple_check(&c);
        if !run.check(cr.ok, || coch_json(seed, &a, format!("couple: {:?}", cr.failures))) {
            break;
        }
        let agree = pages_agree(&couple_pages(&c, args.r_max)?, &row_staircase(&a, args.r_max));
        if !run.check(agree.is_ok(), || coch_json(seed, &a, agree.clone().unwrap_err())) {
            break;
        }
    }
    Ok(())
}

fn tot_lift(run: &mut Run, args: &SuiteArgs) -> Result<(), Error> {
    for (seed, b) in corpus(args.first_seed + 1000, args.seeds) {
        let a = CochainBicomplex::from_reversed(&b);
        for r in lift_check(&a)? {
            if !run.check(r.agree, || coch_json(seed, &a, format!("{r:?}"))) {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn labels(run: &mut Run) -> Result<(), Error> {
    let hex = label_obstruction_boundary(2, 2)?;
    let count = |l: &[crate::perm::FacetLabel], f: &dyn Fn(&Label) -> bool| l.iter().filter(|x| f(&x.label)).count();
    let shape = (count(&hex, &|l| *l == Label::Zero), count(&hex, &|l| *l == Label::Coherence), count(&hex, &|l| matches!(l, Label::Choice { .. })));
    if !run.check(hex.len() == 6 && shape == (3, 1, 2), || json!({"r": 2, "labels": hex})) {
        return Ok(());
    }
    let l3 = label_obstruction_boundary(3, 3)?;
    let mut new3: Vec<String> = l3.iter().filter(|x| matches!(x.label, Label::Choice { new: true, .. })).map(|x| x.display.clone()).collect();
    new3.sort();
    run.check(l3.len() == 14 && new3 == ["(d0)(d0d1f)", "(d0)(d0d2f)"], || json!({"r": 3, "new": new3}));
    if run.failed() {
        return Ok(());
    }
    // labels do not depend on the ambient degree
    for n in 3..=5 {
        let ln = label_obstruction_boundary(n, 3)?;
        let same = ln.iter().zip(&l3).all(|(a, b)| a.label == b.label && a.display == b.display);
        run.check(same, || json!({"n": n}));
    }
    Ok(())
}

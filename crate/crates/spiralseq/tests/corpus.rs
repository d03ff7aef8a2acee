//! Seeded corpus: spiral and Tot spectral sequences against independent oracles.

use spiralseq::couple::{couple_check, couple_pages};
use spiralseq::homalg::{check_pages, pages_agree, staircase_pages, Filtration};
use spiralseq::random::corpus;
use spiralseq::simplicial::gamma_horizontal;
use spiralseq::spiral::{diag_abutment_check, e2_oracle, face_kernel_check, fibrancy_check, lifting_check, moore_of_bicomplex, spiral_couple};
use spiralseq::tot::{d1_check, dual_gamma, lift_check, row_staircase, tot_couple, CochainBicomplex};

const R: usize = 6;

#[test]
fn spiral_matches_column_staircase() {
    for (seed, b) in corpus(0, 100) {
        let m = moore_of_bicomplex(&b);
        assert_eq!(m.dims.iter().take(b.cols()).cloned().collect::<Vec<_>>(), b.dims, "seed {seed}: normalization round trip");
        let c = spiral_couple(&m).unwrap();
        let rep = couple_check(&c);
        assert!(rep.ok, "seed {seed}: {:?}", rep.failures);
        let sp = couple_pages(&c, R).unwrap();
        check_pages(&sp).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let st = staircase_pages(&b.filtered(Filtration::Column), R);
        pages_agree(&sp[1..], &st[1..]).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        pages_agree(&sp[..1], &st[..1]).unwrap_or_else(|e| panic!("seed {seed}: page 1: {e}"));
        let e2: std::collections::BTreeMap<_, _> = e2_oracle(&b).unwrap().into_iter().filter(|(_, d)| *d > 0).collect();
        assert_eq!(sp[1].support(), e2, "seed {seed}: E2 against double homology");
    }
}

#[test]
fn spiral_chain_level_checks() {
    for (seed, b) in corpus(0, 100) {
        let y = gamma_horizontal(&b, b.cols());
        let fk = face_kernel_check(&y).unwrap();
        assert!(fk.ok, "seed {seed}: {:?}", fk.entries);
        let fib = fibrancy_check(&y);
        assert!(fib.horn_surjective && fib.kernel_is_chains, "seed {seed}: {:?}", fib.failures);
        let (m, _) = y.moore_bicomplex();
        let lr = lifting_check(&m, 4).unwrap();
        assert!(lr.failures.is_empty(), "seed {seed}: {:?}", lr.failures);
        diag_abutment_check(&b).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    }
}

#[test]
fn tot_matches_row_staircase() {
    for (seed, b) in corpus(1000, 100) {
        let a = CochainBicomplex::from_reversed(&b);
        a.validate().unwrap();
        let c = tot_couple(&a, R).unwrap();
        let rep = couple_check(&c);
        assert!(rep.ok, "seed {seed}: {:?}", rep.failures);
        let tp = couple_pages(&c, R).unwrap();
        pages_agree(&tp, &row_staircase(&a, R)).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let w = dual_gamma(&a, a.cols());
        let d1 = d1_check(&w).unwrap();
        assert!(d1.failures.is_empty(), "seed {seed}: {:?}", d1.failures);
        let lifts = lift_check(&a).unwrap();
        assert!(lifts.iter().all(|r| r.agree), "seed {seed}: {:?}", lifts.iter().find(|r| !r.agree));
    }
}


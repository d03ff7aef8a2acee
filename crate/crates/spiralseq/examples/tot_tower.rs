//! Tot tower of a cosimplicial chain object: pages, the row staircase, and
//! explicit lifts against obstructions at page 2.

use spiralseq::homalg::pages_agree;
use spiralseq::io::pages_tsv;
use spiralseq::random::{random_bicomplex, Bounds};
use spiralseq::tot::{d1_check, dual_gamma, lift_check, row_staircase, tot_pages, CochainBicomplex};

fn main() -> Result<(), spiralseq::Error> {
    let b = random_bicomplex(11, &Bounds { p: 3, n: 3, q: 2, max_dim: 2 });
    let a = CochainBicomplex::from_reversed(&b);
    let pages = tot_pages(&a, 4)?;
    print!("{}", pages_tsv(&pages));
    println!("row staircase agrees: {}", pages_agree(&pages, &row_staircase(&a, 4)).is_ok());
    let d1 = d1_check(&dual_gamma(&a, a.cols()))?;
    println!("d1 against alternating coface sums: {} checked, {} failures", d1.checked, d1.failures.len());
    let mut reports = lift_check(&a)?;
    reports.dedup_by(|x, y| (x.n, x.p, &x.class) == (y.n, y.p, &y.class));
    for r in reports.iter().take(8) {
        println!("  ({},{}) {:?} survives={} obstruction={:?} d2={:?}", r.n, r.p, r.class, r.survives, r.obstruction, r.d2_lift);
    }
    Ok(())
}

//! Every check battery on a reduced corpus.

use spiralseq::verify::{run_suite, SuiteArgs, SUITES};

fn main() -> Result<(), spiralseq::Error> {
    let args = SuiteArgs { seeds: 20, ..SuiteArgs::default() };
    for s in SUITES {
        let rep = run_suite(s, &args)?;
        println!("{:<15} checked {:>6}  {}", rep.suite, rep.checked, if rep.pass { "pass" } else { "FAIL" });
    }
    Ok(())
}

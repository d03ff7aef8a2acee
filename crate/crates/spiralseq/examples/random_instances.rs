//! Seeded random instances and their JSON forms.

use spiralseq::io::{parse_input, BicomplexJson, BisimplicialJson, Input};
use spiralseq::random::{corpus, random_bicomplex, Bounds};
use spiralseq::simplicial::dold_kan_inverse2;

fn main() -> Result<(), spiralseq::Error> {
    let bounds = Bounds { p: 2, n: 2, q: 2, max_dim: 2 };
    let b = random_bicomplex(7, &bounds);
    let text = serde_json::to_string(&BicomplexJson::from_bicomplex(&b)).unwrap();
    println!("{text}");
    match parse_input(&text)? {
        Input::Bicomplex(c) => println!("round trip equal: {}", c == b),
        _ => unreachable!(),
    }
    let x = dold_kan_inverse2(&b, b.cols(), b.rows());
    println!("bisimplicial dims {:?}", x.dims);
    let again = BisimplicialJson::from_bisimplicial(&x).to_bisimplicial()?;
    let m = again.normalize_vertical().moore_bicomplex().0;
    let same = (0..b.cols() as i64).all(|n| (0..b.rows() as i64).all(|q| m.dim(n, q) == b.dim(n, q)));
    println!("normalizes back to the same dimensions: {same}");
    for (seed, c) in corpus(0, 5) {
        println!("seed {seed}: p={} dims {:?}", c.p, c.dims);
    }
    Ok(())
}

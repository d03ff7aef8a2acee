//! Integer and mod-p homology of simplicial sets; Smith normal form.

use spiralseq::snf::{snf, IMat};
use spiralseq::sset::{boundary, product, standard_simplex, Ring};

fn main() -> Result<(), spiralseq::Error> {
    let s2 = boundary(3);
    println!("boundary of the 3-simplex over Z: {:?}", s2.homology(Ring::Z)?);
    let t = product(&boundary(2), &boundary(2));
    println!("torus betti over F_2: {:?}", t.betti(Ring::Fp(2))?);
    println!("simplex betti: {:?}", standard_simplex(2).betti(Ring::Z)?);
    let a = IMat::from_rows(&[vec![2, 0], vec![0, 3]]);
    println!("snf diag(2,3) = {:?}", snf(&a)?.diagonal());
    Ok(())
}

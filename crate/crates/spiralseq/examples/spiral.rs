//! Spiral pages of small bicomplexes with long differentials, checked against
//! the column-filtration staircase and the chain-level zig-zag.

use spiralseq::couple::couple_pages;
use spiralseq::homalg::{pages_agree, staircase_pages, Filtration};
use spiralseq::io::pages_tsv;
use spiralseq::spiral::{engineered_d2, engineered_d3, lifting_differential, moore_of_bicomplex, spiral_couple};

fn main() -> Result<(), spiralseq::Error> {
    for (name, b) in [("d2", engineered_d2(3)), ("d3", engineered_d3(2))] {
        let m = moore_of_bicomplex(&b);
        let pages = couple_pages(&spiral_couple(&m)?, 4)?;
        println!("== {name}\n{}", pages_tsv(&pages));
        let st = staircase_pages(&b.filtered(Filtration::Column), 4);
        println!("staircase agrees: {}", pages_agree(&pages, &st).is_ok());
    }
    let m = moore_of_bicomplex(&engineered_d3(2));
    println!("zig-zag d3 of the generator at (3,0): {:?}", lifting_differential(&m, 3, 0, 3, &[1])?);
    println!("same class at r = 4: {:?}", lifting_differential(&m, 3, 0, 4, &[1]));
    Ok(())
}

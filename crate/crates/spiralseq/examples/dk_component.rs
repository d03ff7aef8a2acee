//! One component of a Dwyer-Kan mapping space: a subdivided permutahedron.

use spiralseq::dk::{component_boundary, delta_arrow, delta_op, dk_component, leaf_census};
use spiralseq::simplex_cat::eval_word;
use spiralseq::sset::Ring;

fn main() -> Result<(), spiralseq::Error> {
    let (cat, _) = delta_op(0, 3)?;
    let theta = eval_word(&[0, 1, 2], 3)?;
    let space = dk_component(&cat, delta_arrow(&cat, 0, &theta)?, 3)?;
    println!("f-vector {:?}, euler {}", space.sset.f_vector(), space.sset.euler_characteristic());
    println!("vertices by leaf count {:?}", leaf_census(&space));
    let betti: Vec<usize> = space.sset.homology(Ring::Z)?.iter().map(|g| g.betti).collect();
    println!("homology {betti:?}");
    let bd = component_boundary(&space)?;
    println!("boundary homology {:?}", bd.betti(Ring::Z)?);
    for w in &space.cells[1][..4] {
        println!("  edge {}", w.render(&cat));
    }
    Ok(())
}

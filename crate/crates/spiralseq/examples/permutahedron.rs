//! Face lattice of the 3-permutahedron, the boundary gluing, and obstruction labels.

use spiralseq::perm::{boundary_coequalizer_check, face_lattice, label_obstruction_boundary};

fn main() -> Result<(), spiralseq::Error> {
    println!("f-vector of P^3: {:?}", face_lattice(3).f_vector());
    let r = boundary_coequalizer_check(3)?;
    println!("boundary glued from facets: pass={} f={:?}", r.pass, r.f_vector);
    for l in label_obstruction_boundary(3, 3)? {
        println!("  {:<16} {}", l.display, l.label);
    }
    Ok(())
}

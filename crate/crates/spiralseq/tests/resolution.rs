use spiralseq::dk::{delta_arrow, delta_component, delta_op, dk_mapping_space, component_of};
use spiralseq::iso::iso_check;
use spiralseq::perm::{boundary_coequalizer_check, order_complex};
use spiralseq::simplex_cat::{enumerate_injections, Injection};
use spiralseq::sset::Ring;

#[test]
fn components_are_permutahedra() {
    for gap in 1..=4i64 {
        let th = Injection::new(0, gap, (0..=0).map(|_| gap as usize).collect()).unwrap();
        let c = delta_component(&th, None).unwrap();
        c.validate().unwrap();
        let oc = order_complex(gap as usize - 1);
        assert!(iso_check(&c, &oc).unwrap().is_some(), "gap {gap}");
        let h = c.homology(Ring::Z).unwrap();
        assert_eq!(h[0].betti, 1);
        assert!(h[1..].iter().all(|g| g.betti == 0 && g.torsion.is_empty()));
    }
}

#[test]
fn components_biject_with_arrows() {
    for lo in -1..=1i64 {
        for gap in 1..=5i64 {
            let hi = lo + gap;
            let (cat, _) = delta_op(lo, hi).unwrap();
            let a = cat.object(&format!("[{hi}]")).unwrap();
            let b = cat.object(&format!("[{lo}]")).unwrap();
            let s = dk_mapping_space(&cat, a, b, 1).unwrap();
            assert_eq!(s.sset.num_components(), enumerate_injections(lo, hi).len());
        }
    }
    let (cat, _) = delta_op(0, 3).unwrap();
    let s = dk_mapping_space(&cat, cat.object("[3]").unwrap(), cat.object("[0]").unwrap(), 3).unwrap();
    let th = Injection::new(0, 3, vec![2]).unwrap();
    let c = component_of(&cat, &s, delta_arrow(&cat, 0, &th).unwrap()).unwrap();
    assert_eq!(c.f_vector(), vec![13, 24, 12]);
}

#[test]
fn boundary_gluing_four() {
    let r = boundary_coequalizer_check(4).unwrap();
    assert!(r.pass, "{r:?}");
}

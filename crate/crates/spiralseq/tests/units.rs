//! Module-level checks, one submodule per library module.

mod couple {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::homalg::{check_pages, pages_agree, staircase_pages, Bicomplex, Filtration};

    fn sample() -> Bicomplex {
        // x(2,0) -> y(1,0) horizontally, z(1,1) -> y vertically and -> w(0,1) horizontally
        let p = 3;
        let mut b = Bicomplex::zeros(p, vec![vec![0, 1], vec![1, 1], vec![1]]);
        b.dh[2][0] = Mat::identity(p, 1);
        b.dv[1][1] = Mat::identity(p, 1);
        b.dh[1][1] = Mat::identity(p, 1);
        b
    }

    #[test]
    fn couple_matches_staircase() {
        let b = sample();
        b.validate().unwrap();
        let fc = b.filtered(Filtration::Column);
        let c = filtration_couple(&fc).unwrap();
        let rep = couple_check(&c);
        assert!(rep.ok, "{:?}", rep.failures);
        let a = couple_pages(&c, 3).unwrap();
        let s = staircase_pages(&fc, 3);
        check_pages(&a).unwrap();
        pages_agree(&a, &s).unwrap();
        let d = derived_couple(&c).unwrap();
        assert!(couple_check(&d).ok);
        let ad = couple_pages(&d, 2).unwrap();
        pages_agree(&ad, &a[1..]).unwrap();
        assert_eq!(s[1].rank((2, 0)), 1);
    }
}

mod dk {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::dk::*;
    use spiralseq::simplex_cat::eval_word;

    #[test]
    fn small_components() {
        for m in 1..4 {
            let (cat, _) = delta_op(m - 1, m).unwrap();
            let s = dk_mapping_space(&cat, cat.object(&format!("[{m}]")).unwrap(), cat.object(&format!("[{}]", m - 1)).unwrap(), 2).unwrap();
            assert_eq!(s.sset.f_vector(), vec![m as usize + 1]);
        }
        let th = eval_word(&[0, 1], 2).unwrap();
        let c = delta_component(&th, None).unwrap();
        assert_eq!(c.f_vector(), vec![3, 2]);
        c.validate().unwrap();
        let th = eval_word(&[0, 1, 2], 3).unwrap();
        let c = delta_component(&th, None).unwrap();
        assert_eq!(c.f_vector(), vec![13, 24, 12]);
        c.validate().unwrap();
    }

    #[test]
    fn pinned_edge_faces() {
        let th = eval_word(&[0, 1], 2).unwrap();
        let c = delta_component(&th, None).unwrap();
        let e = c.names[1].iter().position(|n| n == "[(d0)(d0)]").unwrap();
        assert_eq!(c.names[0][c.faces[1][e][0].cell], "(d0)(d0)");
        assert_eq!(c.names[0][c.faces[1][e][1].cell], "(d0d1)");
    }
}

mod fp {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;

    #[test]
    fn inverse_mod_small_primes() {
        for p in [2u32, 3, 5, 7, 65521] {
            for a in 1..p.min(200) {
                assert_eq!(a as u64 * inv(a, p) as u64 % p as u64, 1);
            }
        }
    }

    #[test]
    fn kernel_and_rank() {
        let m = Mat::from_rows(3, 2, 3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols, 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn quotient_coords() {
        let top = Mat::identity(5, 3);
        let bottom = Mat::from_cols(5, 3, &[vec![1, 1, 0]]);
        let q = Quotient::new(&top, &bottom);
        assert_eq!(q.dim(), 2);
        let c = q.coords(&[1, 1, 0]).unwrap();
        assert!(c.iter().all(|&x| x == 0));
        assert!(q.coords(&[0, 0, 1]).unwrap().iter().any(|&x| x != 0));
    }
}

mod homalg {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;

    fn point(p: u32) -> Bicomplex {
        Bicomplex::zeros(p, vec![vec![0, 1]])
    }

    #[test]
    fn single_entry_survives() {
        let b = point(3);
        b.validate().unwrap();
        let fc = b.filtered(Filtration::Column);
        let pages = staircase_pages(&fc, 3);
        for pg in &pages {
            assert_eq!(pg.support(), BTreeMap::from([((0, 1), 1)]));
        }
        abutment_check(&fc).unwrap();
    }

    #[test]
    fn iso_kills_everything() {
        let mut b = Bicomplex::zeros(2, vec![vec![1], vec![1]]);
        b.dh[1][0] = Mat::identity(2, 1);
        b.validate().unwrap();
        let pages = staircase_pages(&b.filtered(Filtration::Column), 3);
        assert_eq!(pages[0].support().len(), 2);
        assert!(pages[1].support().is_empty());
        check_pages(&pages).unwrap();
    }

    #[test]
    fn cone_connecting_map() {
        // 0 -> A -> cone(id) -> A[-1] -> 0 with A = F_p in degree 0
        let p = 5;
        let a = ChainComplex::new(p, vec![1], vec![Mat::zeros(p, 0, 1)]).unwrap();
        let cone = ChainComplex::new(p, vec![1, 1], vec![Mat::zeros(p, 0, 1), Mat::identity(p, 1)]).unwrap();
        let c = ChainComplex::new(p, vec![0, 1], vec![Mat::zeros(p, 0, 0), Mat::zeros(p, 0, 1)]).unwrap();
        let ses = Ses { a, b: cone, c, i: vec![Mat::identity(p, 1), Mat::zeros(p, 1, 0)], q: vec![Mat::zeros(p, 0, 1), Mat::identity(p, 1)] };
        ses.check().unwrap();
        let d = connecting_map(&ses, 1).unwrap();
        assert_eq!(d.rank(), 1);
        assert!(les_exact(&ses).unwrap());
    }
}

mod io {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::io::*;

    #[test]
    fn bicomplex_roundtrip() {
        let b = spiralseq::spiral::engineered_d3(3);
        let j = BicomplexJson::from_bicomplex(&b);
        let text = serde_json::to_string(&j).unwrap();
        let back: BicomplexJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_bicomplex().unwrap(), b);
        let bad = text.replace("\"p\":3", "\"p\":4");
        assert!(matches!(parse_input(&bad), Err(Error::Invalid(_))));
    }

    #[test]
    fn bisimplicial_and_cosimplicial_roundtrip() {
        let b = spiralseq::spiral::engineered_d2(2);
        let x = spiralseq::simplicial::dold_kan_inverse2(&b, 2, 2);
        let j = BisimplicialJson::from_bisimplicial(&x);
        let y = j.to_bisimplicial().unwrap();
        assert_eq!(BisimplicialJson::from_bisimplicial(&y), j);
        let a = CochainBicomplex::from_reversed(&b);
        let c = spiralseq::tot::dual_dold_kan(&a, 2);
        let cj = CosimplicialJson::from_cosimplicial(&c);
        let c2 = cj.to_cosimplicial().unwrap();
        assert_eq!(CosimplicialJson::from_cosimplicial(&c2), cj);
        let aj = CochainJson::from_cochain(&a);
        assert_eq!(aj.to_cochain().unwrap(), a);
    }
}

mod iso {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::iso::*;

    #[test]
    fn simple_cases() {
        let s = boundary(3);
        let i = iso_check(&s, &s).unwrap().unwrap();
        assert!(verify_iso(&s, &s, &i));
        assert!(iso_check(&standard_simplex(1), &boundary(2)).unwrap().is_none());
        let p = product(&standard_simplex(2), &standard_simplex(0));
        assert!(iso_check(&p, &standard_simplex(2)).unwrap().is_some());
    }
}

mod perm {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::perm::*;

    #[test]
    fn lattice_counts() {
        assert_eq!(face_lattice(2).f_vector(), vec![6, 6, 1]);
        assert_eq!(face_lattice(3).f_vector(), vec![24, 36, 14, 1]);
        assert_eq!(order_complex(1).f_vector(), vec![3, 2]);
        assert_eq!(order_complex(2).f_vector(), vec![13, 24, 12]);
    }

    #[test]
    fn gluing_small() {
        for n in 1..=3 {
            let r = boundary_coequalizer_check(n).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn labels_r2_r3() {
        let l = label_obstruction_boundary(2, 2).unwrap();
        assert_eq!(l.iter().filter(|x| x.label == Label::Zero).count(), 3);
        let mut new3: Vec<String> = label_obstruction_boundary(3, 3).unwrap().into_iter().filter(|x| matches!(x.label, Label::Choice { new: true, .. })).map(|x| x.display).collect();
        new3.sort();
        assert_eq!(new3, vec!["(d0)(d0d1f)", "(d0)(d0d2f)"]);
    }

    #[test]
    fn dual_counts() {
        for (r, top, glue) in [(1, 2, 1), (2, 6, 6), (3, 24, 36)] {
            let w = dual_witness_complex(r).unwrap();
            assert_eq!((w.top_cells, w.gluings), (top, glue));
        }
    }
}

mod random {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::random::*;

    #[test]
    fn valid_and_deterministic() {
        for (seed, b) in corpus(0, 30) {
            b.validate().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            assert!(b.dims.iter().flatten().all(|&d| d <= 3));
        }
        let b = Bounds::default();
        assert_eq!(random_bicomplex(7, &b), random_bicomplex(7, &b));
    }
}

mod simplex_cat {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::simplex_cat::*;

    #[test]
    fn word_examples() {
        assert_eq!(eval_word(&[0], 1).unwrap().image, vec![1]);
        assert_eq!(eval_word(&[1, 0], 2).unwrap(), eval_word(&[0, 2], 2).unwrap());
        assert_eq!(eval_word(&[0, 0], 2).unwrap(), eval_word(&[0, 1], 2).unwrap());
        assert_eq!(normal_form(&Injection::new(0, 2, vec![1]).unwrap()), vec![0, 2]);
        assert_eq!(rewrite(&[1, 0]), vec![0, 2]);
    }

    #[test]
    fn chains_count() {
        let theta = eval_word(&[0, 1, 2], 3).unwrap();
        let c: Vec<_> = factorization_chains(&theta, 3).into_iter().filter(|c| !c.has_identity).collect();
        assert_eq!(c.len(), 6);
    }
}

mod simplicial {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;

    #[test]
    fn gamma_of_point_and_moore_roundtrip() {
        let p = 3;
        let cc = ChainComplex::new(p, vec![1, 2], vec![Mat::zeros(p, 0, 1), Mat::from_rows(p, 1, 2, &[vec![1, 2]])]).unwrap();
        let g = gamma(&cc, 3);
        g.validate().unwrap();
        assert_eq!(g.dims, vec![1, 3, 5, 7]);
        let (n, _) = g.moore();
        assert_eq!(&n.dims[..2], &[1, 2]);
        assert_eq!(n.d[1].rank(), 1);
    }

    #[test]
    fn bisimplicial_roundtrip() {
        let p = 2;
        let mut b = Bicomplex::zeros(p, vec![vec![1, 1], vec![1, 1]]);
        b.dh[1][0] = Mat::identity(p, 1);
        b.dh[1][1] = Mat::identity(p, 1);
        b.dv[0][1] = Mat::identity(p, 1);
        b.dv[1][1] = Mat::identity(p, 1);
        b.validate().unwrap();
        let x = dold_kan_inverse2(&b, 2, 2);
        x.validate().unwrap();
        let y = x.normalize_vertical();
        y.validate().unwrap();
        let (m, _) = y.moore_bicomplex();
        assert_eq!(m.dims[0], vec![1, 1]);
        assert_eq!(m.dims[1], vec![1, 1]);
        assert_eq!(m.dims[2], vec![0, 0]);
        let yh = gamma_horizontal(&b, 2);
        yh.validate().unwrap();
    }
}

mod snf {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::snf::*;

    #[test]
    fn diag_2_3() {
        let a = IMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = snf(&a).unwrap();
        assert_eq!(s.diagonal(), vec![1, 6]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), 1);
        assert_eq!(s.v.det().abs(), 1);
    }

    #[test]
    fn zero_matrix() {
        let a = IMat::zeros(3, 2);
        assert!(snf(&a).unwrap().diagonal().is_empty());
    }
}

mod sparse {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::sparse::*;

    #[test]
    fn torsion_of_two() {
        let mut m = SparseMat::new(1, 1);
        m.add(0, 0, 2);
        let d = divisors(&m, Coeffs::Z).unwrap();
        assert_eq!(d, Divisors { rank: 1, torsion: vec![2] });
        assert_eq!(divisors(&m, Coeffs::Fp(2)).unwrap().rank, 0);
    }

    #[test]
    fn matches_dense_rank() {
        let mut m = SparseMat::new(3, 3);
        for (r, c, v) in [(0, 0, 1), (1, 0, 1), (1, 1, 1), (2, 1, 1), (0, 2, 1), (2, 2, -1)] {
            m.add(r, c, v);
        }
        let d = divisors(&m, Coeffs::Fp(3)).unwrap();
        assert_eq!(d.rank, m.to_fp(3).rank());
    }
}

mod spiral {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::spiral::*;
    use spiralseq::couple::{couple_check, filtration_couple};
    use spiralseq::homalg::{pages_agree, staircase_pages, Filtration};

    #[test]
    fn d2_instance() {
        let b = engineered_d2(2);
        b.validate().unwrap();
        let m = moore_of_bicomplex(&b);
        let c = spiral_couple(&m).unwrap();
        let rep = couple_check(&c);
        assert!(rep.ok, "{:?}", rep.failures);
        let sp = couple_pages(&c, 4).unwrap();
        let st = staircase_pages(&b.filtered(Filtration::Column), 4);
        pages_agree(&sp, &st).unwrap();
        assert_eq!(sp[1].rank((2, 0)), 1);
        let fcp = couple_pages(&filtration_couple(&m.filtered(Filtration::Column)).unwrap(), 4).unwrap();
        pages_agree(&sp, &fcp).unwrap();
        let lr = lifting_check(&m, 4).unwrap();
        assert!(lr.failures.is_empty(), "{:?}", lr.failures);
        assert!(lr.checked > 0);
        diag_abutment_check(&b).unwrap();
    }

    #[test]
    fn d3_instance_dies_on_page_one() {
        let b = engineered_d3(3);
        b.validate().unwrap();
        let m = moore_of_bicomplex(&b);
        let sp = couple_pages(&spiral_couple(&m).unwrap(), 4).unwrap();
        assert_eq!(sp[2].rank((3, 0)), 1);
        assert_eq!(sp[1].rank((3, 0)), 0);
        let lr = lifting_check(&m, 4).unwrap();
        assert!(lr.failures.is_empty(), "{:?}", lr.failures);
        let mut e = Bicomplex::zeros(3, vec![vec![1], vec![1]]);
        e.dh[1][0] = Mat::identity(3, 1);
        let err = lifting_differential(&e, 1, 0, 2, &[1]).unwrap_err();
        assert!(matches!(err, Error::DiesAt(1)));
    }

    #[test]
    fn fibrancy_and_face_kernels() {
        let b = engineered_d3(2);
        let y = gamma_horizontal(&b, 4);
        let f = fibrancy_check(&y);
        assert!(f.horn_surjective && f.kernel_is_chains, "{:?}", f.failures);
        let constant = Bicomplex::zeros(2, vec![vec![1, 0]]);
        let g = fibrancy_check(&gamma_horizontal(&constant, 3));
        assert!(g.horn_surjective && !g.matching_surjective);
        assert!(face_kernel_check(&y).unwrap().ok);
    }

    #[test]
    fn shuffle_matches_explicit_diagonal() {
        let b = engineered_d2(3);
        let x = spiralseq::simplicial::dold_kan_inverse2(&b, 4, 4);
        let explicit = x.diag().homotopy();
        let sh = diag_homotopy(&b);
        assert_eq!(&explicit[..sh.len()], &sh[..]);
        assert_eq!(sh, b.total().betti()[..sh.len()].to_vec());
    }
}

mod sset {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;

    #[test]
    fn small_counts() {
        assert_eq!(boundary(3).f_vector(), vec![4, 6, 4]);
        assert_eq!(horn(2, 0).f_vector(), vec![3, 2]);
        assert_eq!(standard_simplex(0).f_vector(), vec![1]);
        assert_eq!(tr_simplex(2).f_vector(), vec![4, 6, 3]);
    }

    #[test]
    fn product_counts() {
        let s1 = standard_simplex(1);
        let p = product(&s1, &s1);
        p.validate().unwrap();
        assert_eq!(p.f_vector(), vec![4, 5, 2]);
        let q = product(&s1, &standard_simplex(2));
        q.validate().unwrap();
        assert_eq!(q.count(3), 3);
    }

    #[test]
    fn sphere_quotient() {
        let s = standard_simplex(2);
        let m = s.mask_of(&boundary(2).names.concat().into_iter().collect());
        let q = quotient(&s, &m).unwrap();
        q.validate().unwrap();
        assert_eq!(q.f_vector(), vec![1, 0, 1]);
        assert_eq!(q.betti(Ring::Fp(2)).unwrap(), vec![1, 0, 1]);
    }
}

mod tot {
    #[allow(unused_imports)]
    use spiralseq::{couple::*, fp::*, homalg::*, simplicial::*, sset::*, tot::CochainBicomplex, Error};
    #[allow(unused_imports)]
    use std::collections::BTreeMap;
    use spiralseq::tot::*;
    use spiralseq::couple::couple_check;
    use spiralseq::homalg::pages_agree;

    fn sample() -> CochainBicomplex {
        CochainBicomplex::from_reversed(&spiralseq::spiral::engineered_d2(3))
    }

    #[test]
    fn tower_and_couple() {
        let a = sample();
        a.validate().unwrap();
        let tw = tot_tower(&a);
        for s in tw.ses.iter().flatten() {
            s.check().unwrap();
        }
        let c = tot_couple(&a, 4).unwrap();
        let rep = couple_check(&c);
        assert!(rep.ok, "{:?}", rep.failures);
        let tp = couple_pages(&c, 4).unwrap();
        pages_agree(&tp, &row_staircase(&a, 4)).unwrap();
        assert_eq!(tp[1].rank((0, 0)), 1);
    }

    #[test]
    fn dual_gamma_normalizes_back() {
        let a = sample();
        let w = dual_gamma(&a, a.cols());
        w.validate().unwrap();
        let back = w.normalized().unwrap();
        assert_eq!(back.dims, a.dims);
        let d1 = d1_check(&w).unwrap();
        assert!(d1.failures.is_empty(), "{:?}", d1.failures);
        let x = dual_dold_kan(&a, a.rows());
        x.validate().unwrap();
        let w2 = x.normalize_internal();
        w2.validate().unwrap();
        assert_eq!(w2.normalized().unwrap().dims, a.dims);
    }

    #[test]
    fn lifts_and_obstructions() {
        let reps = lift_check(&sample()).unwrap();
        assert!(reps.iter().all(|r| r.agree), "{reps:?}");
        assert!(reps.iter().any(|r| r.d2_lift.as_ref().is_some_and(|v| v.iter().any(|&x| x != 0))));
    }
}

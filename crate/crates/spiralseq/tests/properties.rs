use proptest::prelude::*;
use spiralseq::couple::{couple_check, couple_pages};
use spiralseq::fp::Mat;
use spiralseq::homalg::{check_pages, pages_agree, staircase_pages, Filtration};
use spiralseq::io::{parse_input, BicomplexJson, Input};
use spiralseq::perm::{boundary_complex, face_lattice};
use spiralseq::random::{random_bicomplex, Bounds};
use spiralseq::simplex_cat::{eval_word, factorization_of_subset, factorizations2, normal_form, ordered_partitions, rewrite, subset_of_factorization, Injection};
use spiralseq::snf::{snf, IMat};
use spiralseq::spiral::{moore_of_bicomplex, spiral_couple};
use spiralseq::sset::Ring;
use spiralseq::tot::{row_staircase, tot_couple, CochainBicomplex};

fn bounds() -> impl Strategy<Value = (u64, Bounds)> {
    (any::<u64>(), prop_oneof![Just(2u32), Just(3), Just(5)], 1usize..=3, 1usize..=3, 1usize..=2).prop_map(|(s, p, n, q, d)| (s, Bounds { p, n, q, max_dim: d }))
}

/// A valid face word on `[n]`: letter `t` at most the stage it acts on.
fn word() -> impl Strategy<Value = (Vec<usize>, i64)> {
    (0i64..6, 0usize..5).prop_flat_map(|(base, k)| {
        let n = base + k as i64;
        let letters: Vec<_> = (0..k).map(|t| 0..=(base as usize + 1 + t)).collect();
        (letters, Just(n))
    })
}

fn injection() -> impl Strategy<Value = Injection> {
    (-1i64..3, 0i64..6).prop_flat_map(|(m, gap)| {
        let n = m + gap;
        proptest::sample::subsequence((0..(n + 1) as usize).collect::<Vec<_>>(), (m + 1) as usize).prop_map(move |img| Injection::new(m, n, img).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rewriting_reaches_the_normal_form((w, n) in word()) {
        let th = eval_word(&w, n).unwrap();
        prop_assert_eq!(rewrite(&w), normal_form(&th));
        prop_assert_eq!(eval_word(&normal_form(&th), n).unwrap(), th);
    }

    #[test]
    fn factorizations_are_subsets(th in injection()) {
        let fs = factorizations2(&th);
        prop_assert_eq!(fs.len(), 1usize << th.gap());
        for (g, f) in fs {
            let s = subset_of_factorization(&th, &f);
            prop_assert_eq!(factorization_of_subset(&th, &s), (g, f));
        }
    }

    #[test]
    fn smith_form_is_verified(rows in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 5), 4)) {
        let a = IMat::from_rows(&rows);
        let s = snf(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.det().abs(), 1);
        prop_assert_eq!(s.v.det().abs(), 1);
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn rank_nullity(entries in proptest::collection::vec(0i64..3, 20), rows in 1usize..5) {
        let cols = 20 / rows;
        let m = Mat::from_rows(3, rows, cols, &entries.chunks(cols).take(rows).map(|c| c.to_vec()).collect::<Vec<_>>());
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.cols, cols);
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn spiral_pages_match_staircase((seed, b) in bounds()) {
        let bic = random_bicomplex(seed, &b);
        let m = moore_of_bicomplex(&bic);
        let c = spiral_couple(&m).unwrap();
        prop_assert!(couple_check(&c).ok);
        let sp = couple_pages(&c, 5).unwrap();
        prop_assert!(check_pages(&sp).is_ok());
        let st = staircase_pages(&bic.filtered(Filtration::Column), 5);
        prop_assert!(pages_agree(&sp, &st).is_ok());
    }

    #[test]
    fn tot_pages_match_row_staircase((seed, b) in bounds()) {
        let a = CochainBicomplex::from_reversed(&random_bicomplex(seed, &b));
        let c = tot_couple(&a, 5).unwrap();
        prop_assert!(couple_check(&c).ok);
        prop_assert!(pages_agree(&couple_pages(&c, 5).unwrap(), &row_staircase(&a, 5)).is_ok());
    }

    #[test]
    fn bicomplex_json_round_trip((seed, b) in bounds()) {
        let bic = random_bicomplex(seed, &b);
        let text = serde_json::to_string(&BicomplexJson::from_bicomplex(&bic)).unwrap();
        match parse_input(&text).unwrap() {
            Input::Bicomplex(c) => prop_assert_eq!(c, bic),
            _ => prop_assert!(false, "wrong kind"),
        }
    }
}

#[test]
fn permutahedron_counts_and_boundary_spheres() {
    for n in 0..=5 {
        let want: Vec<usize> = (0..=n).map(|k| ordered_partitions(n + 1, n - k + 1).len()).collect();
        assert_eq!(face_lattice(n).f_vector(), want);
    }
    for n in 1..=4usize {
        let b = boundary_complex(n);
        let chi = 1 + if n % 2 == 1 { 1 } else { -1 };
        assert_eq!(b.euler_characteristic(), chi, "n = {n}");
        let betti = b.betti(Ring::Z).unwrap();
        let mut sphere = vec![0; n];
        sphere[0] += 1;
        sphere[n - 1] += 1;
        assert_eq!(betti, sphere, "n = {n}");
    }
}

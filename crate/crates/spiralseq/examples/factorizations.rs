//! Two-step factorizations of a face map and their subset encoding.

use spiralseq::simplex_cat::{eval_word, factorizations2, normal_form, render_word, subset_of_factorization};

fn main() {
    let theta = eval_word(&[0, 1, 3], 4).expect("valid word");
    println!("theta = {} : [{}] -> [{}]", render_word(&normal_form(&theta)), theta.src, theta.tgt);
    let fs = factorizations2(&theta);
    println!("{} factorizations (gap {})", fs.len(), theta.gap());
    for (g, f) in &fs {
        let s = subset_of_factorization(&theta, f);
        println!("  via [{}]: ({}) o ({})  subset {:?}", g.tgt, render_word(&normal_form(f)), render_word(&normal_form(g)), s);
    }
}

//! Seeded random bicomplexes: sums of squares, edges, dots and staircases,
//! conjugated by random invertible matrices in every bidegree.

use crate::fp::Mat;
use crate::homalg::Bicomplex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub p: u32,
    /// Largest column index.
    pub n: usize,
    /// Largest row index.
    pub q: usize,
    pub max_dim: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { p: 2, n: 4, q: 4, max_dim: 3 }
    }
}

/// A piece: cells at bidegrees, with `dh`/`dv` edges between cell indices.
struct Piece {
    cells: Vec<(usize, usize)>,
    h: Vec<(usize, usize)>,
    v: Vec<(usize, usize)>,
}

fn piece(rng: &mut ChaCha8Rng, b: &Bounds) -> Piece {
    let (nn, qq) = (b.n, b.q);
    match rng.gen_range(0..6) {
        0 => Piece { cells: vec![(rng.gen_range(0..=nn), rng.gen_range(0..=qq))], h: vec![], v: vec![] },
        1 if nn >= 1 => {
            let (n, q) = (rng.gen_range(1..=nn), rng.gen_range(0..=qq));
            Piece { cells: vec![(n, q), (n - 1, q)], h: vec![(0, 1)], v: vec![] }
        }
        2 if qq >= 1 => {
            let (n, q) = (rng.gen_range(0..=nn), rng.gen_range(1..=qq));
            Piece { cells: vec![(n, q), (n, q - 1)], h: vec![], v: vec![(0, 1)] }
        }
        3 if nn >= 1 && qq >= 1 => {
            let (n, q) = (rng.gen_range(1..=nn), rng.gen_range(1..=qq));
            // a -> b horizontally, a -> c vertically, both to d
            Piece { cells: vec![(n, q), (n - 1, q), (n, q - 1), (n - 1, q - 1)], h: vec![(0, 1), (2, 3)], v: vec![(0, 2), (1, 3)] }
        }
        _ => {
            let len_max = nn.min(qq + 1);
            if len_max < 2 {
                return Piece { cells: vec![(rng.gen_range(0..=nn), rng.gen_range(0..=qq))], h: vec![], v: vec![] };
            }
            let len = rng.gen_range(2..=len_max);
            let n = rng.gen_range(len..=nn);
            let q = rng.gen_range(0..=qq + 1 - len);
            staircase(n, q, len)
        }
    }
}

/// `x` at `(n,q)` linked to `w` at `(n-len, q+len-1)` through `len-1` zig-zags.
fn staircase(n: usize, q: usize, len: usize) -> Piece {
    let mut cells = vec![(n, q)];
    let mut h = Vec::new();
    let mut v = Vec::new();
    let mut last = 0;
    for j in 1..len {
        cells.push((n - j, q + j - 1));
        let y = cells.len() - 1;
        h.push((last, y));
        cells.push((n - j, q + j));
        let z = cells.len() - 1;
        v.push((z, y));
        last = z;
    }
    cells.push((n - len, q + len - 1));
    h.push((last, cells.len() - 1));
    Piece { cells, h, v }
}

fn random_invertible(rng: &mut ChaCha8Rng, p: u32, d: usize) -> (Mat, Mat) {
    loop {
        let mut m = Mat::zeros(p, d, d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, rng.gen_range(0..p));
            }
        }
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

/// Random bicomplex with entries in columns `0..=n`, rows `0..=q`.
pub fn random_bicomplex(seed: u64, b: &Bounds) -> Bicomplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = b.p;
    let mut dims = vec![vec![0usize; b.q + 1]; b.n + 1];
    // basis vectors per bidegree; edges recorded on global (cell, index) pairs
    let mut hedges: Vec<((usize, usize, usize), (usize, usize, usize))> = Vec::new();
    let mut vedges = Vec::new();
    let target = rng.gen_range(1..=(b.n + 1) * (b.q + 1) * b.max_dim.max(1) / 2 + 1);
    let mut tries = 0;
    let mut placed = 0;
    while placed < target && tries < 200 {
        tries += 1;
        let pc = piece(&mut rng, b);
        if pc.cells.iter().enumerate().any(|(i, &(n, q))| dims[n][q] + pc.cells[..i].iter().filter(|&&c| c == (n, q)).count() >= b.max_dim) {
            continue;
        }
        let mut idx = Vec::new();
        for &(n, q) in &pc.cells {
            idx.push((n, q, dims[n][q]));
            dims[n][q] += 1;
        }
        for &(s, t) in &pc.h {
            hedges.push((idx[s], idx[t]));
        }
        for &(s, t) in &pc.v {
            vedges.push((idx[s], idx[t]));
        }
        placed += 1;
    }
    let mut out = Bicomplex::zeros(p, dims.clone());
    for ((n, q, i), (_, _, j)) in hedges {
        out.dh[n][q].set(j, i, 1);
    }
    for ((n, q, i), (_, _, j)) in vedges {
        out.dv[n][q].set(j, i, 1);
    }
    // change of basis P in every bidegree: d' = P_tgt d P_src^{-1}
    let mut pm = vec![vec![(Mat::zeros(p, 0, 0), Mat::zeros(p, 0, 0)); b.q + 1]; b.n + 1];
    for n in 0..=b.n {
        for q in 0..=b.q {
            pm[n][q] = random_invertible(&mut rng, p, dims[n][q]);
        }
    }
    for n in 0..=b.n {
        for q in 0..=b.q {
            if n >= 1 {
                out.dh[n][q] = pm[n - 1][q].0.mul(&out.dh[n][q]).mul(&pm[n][q].1);
            }
            if q >= 1 {
                out.dv[n][q] = pm[n][q - 1].0.mul(&out.dv[n][q]).mul(&pm[n][q].1);
            }
        }
    }
    out
}

/// The corpus: `count` seeds from `first`, primes alternating 2 and 3.
pub fn corpus(first: u64, count: usize) -> Vec<(u64, Bicomplex)> {
    (0..count as u64)
        .map(|i| {
            let seed = first + i;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
            let bounds = Bounds { p: if seed.is_multiple_of(2) { 2 } else { 3 }, n: rng.gen_range(1..=4), q: rng.gen_range(1..=4), max_dim: rng.gen_range(1..=3) };
            (seed, random_bicomplex(seed, &bounds))
        })
        .collect()
}

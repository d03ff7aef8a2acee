//! Arrows of the restricted augmented simplex category, stored by image set.
//!
//! A face word `[i1, .., ik]` stands for the simplicial operator
//! `d_{i1} d_{i2} .. d_{ik}`; the rightmost letter acts first on simplices,
//! so as a map of ordinals it is `delta^{ik} o .. o delta^{i1}`.

use crate::Error;
use serde::{Deserialize, Serialize};

/// Monotone injection `[src] -> [tgt]`; `src = -1` is the empty ordinal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Injection {
    pub src: i64,
    pub tgt: i64,
    pub image: Vec<usize>,
}

pub type FaceWord = Vec<usize>;

impl Injection {
    pub fn new(src: i64, tgt: i64, image: Vec<usize>) -> Result<Injection, Error> {
        let ok = src >= -1
            && tgt >= src
            && image.len() as i64 == src + 1
            && image.windows(2).all(|w| w[0] < w[1])
            && image.last().is_none_or(|&x| (x as i64) <= tgt);
        if !ok {
            return Err(Error::Invalid(format!("not an injection [{src}]->[{tgt}] with image {image:?}")));
        }
        Ok(Injection { src, tgt, image })
    }

    pub fn identity(n: i64) -> Injection {
        Injection { src: n, tgt: n, image: (0..(n + 1) as usize).collect() }
    }

    /// The elementary coface `delta^i: [n-1] -> [n]` (misses `i`).
    pub fn coface(n: i64, i: usize) -> Injection {
        assert!(n >= 0 && i as i64 <= n);
        Injection { src: n - 1, tgt: n, image: (0..=n as usize).filter(|&j| j != i).collect() }
    }

    pub fn gap(&self) -> usize {
        (self.tgt - self.src) as usize
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.tgt
    }

    /// Points of the target missed by the image, ascending.
    pub fn complement(&self) -> Vec<usize> {
        (0..(self.tgt + 1) as usize).filter(|j| self.image.binary_search(j).is_err()).collect()
    }

    pub fn apply(&self, j: usize) -> usize {
        self.image[j]
    }
}

/// `f o g` for `g: m -> m'`, `f: m' -> n`.
pub fn compose(g: &Injection, f: &Injection) -> Result<Injection, Error> {
    if g.tgt != f.src {
        return Err(Error::Invalid(format!("cannot compose [{}]->[{}] with [{}]->[{}]", g.src, g.tgt, f.src, f.tgt)));
    }
    Ok(Injection { src: g.src, tgt: f.tgt, image: g.image.iter().map(|&i| f.image[i]).collect() })
}

/// Evaluate a face word on `[n]`-simplices.
pub fn eval_word(w: &[usize], n: i64) -> Result<Injection, Error> {
    let k = w.len() as i64;
    if n - k < -1 {
        return Err(Error::Invalid(format!("word {w:?} too long for [{n}]")));
    }
    let mut theta = Injection::identity(n - k);
    for (t, &i) in w.iter().enumerate() {
        let stage = n - k + 1 + t as i64;
        if i as i64 > stage {
            return Err(Error::Invalid(format!("letter d{i} out of range at [{stage}] in {w:?}")));
        }
        theta = compose(&theta, &Injection::coface(stage, i))?;
    }
    Ok(theta)
}

/// The unique ascending word evaluating to `theta`.
pub fn normal_form(theta: &Injection) -> FaceWord {
    theta.complement()
}

/// Rewrite any valid word to normal form by `d_j d_i -> d_i d_{j+1}` for `i <= j`.
pub fn rewrite(w: &[usize]) -> FaceWord {
    let mut w = w.to_vec();
    loop {
        let Some(t) = (0..w.len().saturating_sub(1)).find(|&t| w[t] >= w[t + 1]) else { return w };
        let (j, i) = (w[t], w[t + 1]);
        w[t] = i;
        w[t + 1] = j + 1;
    }
}

pub fn render_word(w: &[usize]) -> String {
    if w.is_empty() {
        return "id".into();
    }
    w.iter().map(|i| format!("d{i}")).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All injections `[m] -> [n]`, lexicographic by image.
pub fn enumerate_injections(m: i64, n: i64) -> Vec<Injection> {
    assert!(-1 <= m && m <= n);
    combinations((n + 1) as usize, (m + 1) as usize)
        .into_iter()
        .map(|image| Injection { src: m, tgt: n, image })
        .collect()
}

/// Factorization through `[m + |s1|]` selected by positions `s1` in the complement.
pub fn factorization_of_subset(theta: &Injection, s1: &[usize]) -> (Injection, Injection) {
    let k = theta.complement();
    let mut img: Vec<usize> = theta.image.clone();
    img.extend(s1.iter().map(|&i| k[i]));
    img.sort_unstable();
    let mid = theta.src + s1.len() as i64;
    let f = Injection { src: mid, tgt: theta.tgt, image: img.clone() };
    let g = Injection {
        src: theta.src,
        tgt: mid,
        image: theta.image.iter().map(|x| img.binary_search(x).unwrap()).collect(),
    };
    (g, f)
}

/// Inverse of `factorization_of_subset`: positions of the complement hit by `f`.
pub fn subset_of_factorization(theta: &Injection, f: &Injection) -> Vec<usize> {
    theta.complement().iter().enumerate().filter(|(_, x)| f.image.binary_search(x).is_ok()).map(|(i, _)| i).collect()
}

/// All pairs `(g, f)` with `f o g = theta`, by intermediate object then subset.
pub fn factorizations2(theta: &Injection) -> Vec<(Injection, Injection)> {
    let gap = theta.gap();
    (0..=gap).flat_map(|s| combinations(gap, s)).map(|s1| factorization_of_subset(theta, &s1)).collect()
}

/// A composable chain `theta_1, .., theta_k` (source first) with composite `theta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub factors: Vec<Injection>,
    pub has_identity: bool,
}

/// Chain built from nested image sets `im(theta) = I_0 <= I_1 <= .. <= I_k = [n]`.
fn chain_from_images(theta: &Injection, images: &[Vec<usize>]) -> Chain {
    let mut factors = Vec::new();
    for t in 1..images.len() {
        let (lo, hi) = (&images[t - 1], &images[t]);
        factors.push(Injection {
            src: lo.len() as i64 - 1,
            tgt: hi.len() as i64 - 1,
            image: lo.iter().map(|x| hi.binary_search(x).unwrap()).collect(),
        });
    }
    let has_identity = factors.iter().any(|f| f.is_identity());
    debug_assert_eq!(factors.iter().skip(1).try_fold(factors[0].clone(), |a, f| compose(&a, f)).ok().as_ref(), Some(theta));
    Chain { factors, has_identity }
}

/// Ordered partition `(B_1, .., B_k)` of complement positions for a chain of
/// non-identity factors: `B_t` is removed by the t-th word letter (Δ-order).
pub fn chain_partition(theta: &Injection, chain: &Chain) -> Vec<Vec<usize>> {
    let k = theta.complement();
    let mut out = Vec::new();
    let n = chain.factors.len();
    for t in 0..n {
        // image in [n] of theta_k o .. o theta_{t+1} and of theta_k o .. o theta_t
        let outer = chain.factors[t + 1..].iter().fold(Injection::identity(chain.factors[t].tgt), |a, f| compose(&a, f).unwrap());
        let inner = compose(&chain.factors[t], &outer).unwrap();
        let block: Vec<usize> = (0..k.len())
            .filter(|&i| outer.image.binary_search(&k[i]).is_ok() && inner.image.binary_search(&k[i]).is_err())
            .collect();
        out.push(block);
    }
    out
}

/// Chain corresponding to an ordered partition of complement positions.
pub fn chain_of_partition(theta: &Injection, blocks: &[Vec<usize>]) -> Chain {
    let k = theta.complement();
    let mut images = vec![theta.image.clone()];
    let mut cur = theta.image.clone();
    for b in blocks {
        cur.extend(b.iter().map(|&i| k[i]));
        cur.sort_unstable();
        images.push(cur.clone());
    }
    chain_from_images(theta, &images)
}

/// All length-`k` composable factorizations of `theta`, identities allowed and flagged.
pub fn factorization_chains(theta: &Injection, k: usize) -> Vec<Chain> {
    assert!(k >= 1);
    let kset = theta.complement();
    let mut out = Vec::new();
    let g = kset.len();
    let mut assign = vec![0usize; g];
    loop {
        // blocks in word order: label t means removed by factor t
        let blocks: Vec<Vec<usize>> = (0..k).map(|t| (0..g).filter(|&i| assign[i] == t).collect()).collect();
        out.push(chain_of_partition(theta, &blocks));
        let mut i = g;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            assign[i] += 1;
            if assign[i] < k {
                break;
            }
            assign[i] = 0;
        }
    }
}

/// Ordered partitions of `{0..s-1}` into `b` nonempty blocks, by assignment vector.
pub fn ordered_partitions(s: usize, b: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if b == 0 {
        if s == 0 {
            out.push(vec![]);
        }
        return out;
    }
    let mut assign = vec![0usize; s];
    loop {
        let blocks: Vec<Vec<usize>> = (0..b).map(|t| (0..s).filter(|&i| assign[i] == t).collect()).collect();
        if blocks.iter().all(|x| !x.is_empty()) {
            out.push(blocks);
        }
        let mut i = s;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            assign[i] += 1;
            if assign[i] < b {
                break;
            }
            assign[i] = 0;
        }
    }
}

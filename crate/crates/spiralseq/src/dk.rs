//! Free-category comonad resolution of a finite category and its mapping spaces.
//!
//! An arrow of the n-th stage is a bracketed word with n+1 levels.  We store it
//! as its leaves `w_1 .. w_L` (non-identity arrows, `w_1 o .. o w_L`) together
//! with the cut positions of each bracket level.

use crate::simplex_cat::{compose, enumerate_injections, normal_form, render_word, Injection};
use crate::sset::{SSet, Simp};
use crate::Error;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// Finite category given by a full composition table.
#[derive(Clone, Debug)]
pub struct FinCat {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub identities: Vec<usize>,
    /// `comp[f * n + g]` is `f o g` when `src(f) == tgt(g)`.
    comp: Vec<Option<usize>>,
}

impl FinCat {
    /// Validates unit and associativity laws of the table.
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, identities: Vec<usize>, table: impl Fn(usize, usize) -> Option<usize>) -> Result<FinCat, Error> {
        let n = arrows.len();
        if identities.len() != objects.len() {
            return Err(Error::Invalid("one identity per object required".into()));
        }
        for a in &arrows {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(Error::Invalid(format!("arrow {} has unknown endpoints", a.name)));
            }
        }
        let mut comp = vec![None; n * n];
        for f in 0..n {
            for g in 0..n {
                if arrows[f].src == arrows[g].tgt {
                    let h = table(f, g).ok_or_else(|| Error::Invalid(format!("missing composite {} o {}", arrows[f].name, arrows[g].name)))?;
                    if h >= n || arrows[h].src != arrows[g].src || arrows[h].tgt != arrows[f].tgt {
                        return Err(Error::Invalid(format!("composite {} o {} has wrong type", arrows[f].name, arrows[g].name)));
                    }
                    comp[f * n + g] = Some(h);
                }
            }
        }
        let cat = FinCat { objects, arrows, identities, comp };
        for (o, &i) in cat.identities.iter().enumerate() {
            if cat.arrows[i].src != o || cat.arrows[i].tgt != o {
                return Err(Error::Invalid(format!("identity of {} is not an endomorphism", cat.objects[o])));
            }
        }
        for f in 0..n {
            let (s, t) = (cat.arrows[f].src, cat.arrows[f].tgt);
            if cat.comp(f, cat.identities[s]) != f || cat.comp(cat.identities[t], f) != f {
                return Err(Error::Invalid(format!("unit law fails at {}", cat.arrows[f].name)));
            }
        }
        for f in 0..n {
            for g in (0..n).filter(|&g| cat.arrows[f].src == cat.arrows[g].tgt) {
                for h in (0..n).filter(|&h| cat.arrows[g].src == cat.arrows[h].tgt) {
                    if cat.comp(cat.comp(f, g), h) != cat.comp(f, cat.comp(g, h)) {
                        return Err(Error::Invalid("composition table is not associative".into()));
                    }
                }
            }
        }
        Ok(cat)
    }

    /// `f o g`; panics if not composable.
    pub fn comp(&self, f: usize, g: usize) -> usize {
        self.comp[f * self.arrows.len() + g].expect("composable arrows")
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.arrows[f].src] == f
    }

    pub fn object(&self, name: &str) -> Result<usize, Error> {
        self.objects.iter().position(|o| o == name).ok_or_else(|| Error::Invalid(format!("unknown object {name}")))
    }

    pub fn find(&self, src: usize, tgt: usize, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.src == src && a.tgt == tgt && a.name == name)
    }

    /// Composite of a nonempty composable word.
    pub fn composite(&self, w: &[usize]) -> usize {
        w.iter().skip(1).fold(w[0], |acc, &g| self.comp(acc, g))
    }
}

/// Opposite of the category of ordinals `[lo] .. [hi]` and monotone injections.
/// An arrow `[a] -> [b]` is an injection `[b] -> [a]`, named by its face word.
pub fn delta_op(lo: i64, hi: i64) -> Result<(FinCat, Vec<Injection>), Error> {
    if lo < -1 || hi < lo || hi - lo > 8 {
        return Err(Error::Invalid(format!("unsupported range [{lo}]..[{hi}]")));
    }
    let objects: Vec<String> = (lo..=hi).map(|k| format!("[{k}]")).collect();
    let mut injs = Vec::new();
    let mut arrows = Vec::new();
    let mut identities = Vec::new();
    for a in lo..=hi {
        for b in lo..=a {
            for th in enumerate_injections(b, a) {
                let name = if a == b { format!("id{}", objects[(a - lo) as usize]) } else { render_word(&normal_form(&th)) };
                if a == b {
                    identities.push(arrows.len());
                }
                arrows.push(Arrow { name, src: (a - lo) as usize, tgt: (b - lo) as usize });
                injs.push(th);
            }
        }
    }
    let index: HashMap<Injection, usize> = injs.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    // f o g in the opposite category is g followed by f in the ordinal direction
    let cat = FinCat::new(objects, arrows, identities, |f, g| compose(&injs[f], &injs[g]).ok().map(|h| index[&h]))?;
    Ok((cat, injs))
}

/// Arrow id of an injection inside `delta_op(lo, _)`.
pub fn delta_arrow(cat: &FinCat, lo: i64, th: &Injection) -> Result<usize, Error> {
    let (a, b) = (th.tgt - lo, th.src - lo);
    if a < 0 || b < 0 || a as usize >= cat.objects.len() {
        return Err(Error::Invalid(format!("injection {th:?} outside the category")));
    }
    let name = if th.is_identity() { format!("id{}", cat.objects[a as usize]) } else { render_word(&normal_form(th)) };
    cat.find(a as usize, b as usize, &name).ok_or_else(|| Error::Invalid(format!("injection {th:?} not found")))
}

/// Bracketed word: leaves plus, for each level `1..=n`, its set of cuts as a
/// bitmask (bit `k` separates leaf `k` from leaf `k+1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NestedWord {
    pub leaves: Vec<usize>,
    pub cuts: Vec<u64>,
}

impl NestedWord {
    pub fn dim(&self) -> usize {
        self.cuts.len()
    }

    fn all_cuts(&self) -> u64 {
        (1u64 << (self.leaves.len() - 1)) - 1
    }

    /// Cuts of level `j`, with level 0 cutting everywhere.
    pub fn level(&self, j: usize) -> u64 {
        if j == 0 {
            self.all_cuts()
        } else {
            self.cuts[j - 1]
        }
    }

    pub fn is_well_formed(&self) -> bool {
        !self.leaves.is_empty() && self.leaves.len() <= 64 && (0..self.dim()).all(|j| self.level(j + 1) & !self.level(j) == 0)
    }

    /// In the image of a degeneracy: two successive levels coincide.
    pub fn is_degenerate(&self) -> bool {
        (0..self.dim()).any(|j| self.level(j) == self.level(j + 1))
    }

    /// Face `d_i`: `i < n` forgets level `n - i`, `d_n` composes the level-one brackets.
    pub fn face(&self, cat: &FinCat, i: usize) -> Result<NestedWord, Error> {
        let n = self.dim();
        assert!(n >= 1 && i <= n);
        if i < n {
            let mut cuts = self.cuts.clone();
            cuts.remove(n - i - 1);
            return Ok(NestedWord { leaves: self.leaves.clone(), cuts });
        }
        let c1 = self.cuts[0];
        let mut leaves = Vec::new();
        let mut start = 0;
        for k in 0..self.leaves.len() {
            if k + 1 == self.leaves.len() || c1 >> k & 1 == 1 {
                let h = cat.composite(&self.leaves[start..=k]);
                if cat.is_identity(h) {
                    return Err(Error::Invalid("a composite of non-identity arrows is an identity".into()));
                }
                leaves.push(h);
                start = k + 1;
            }
        }
        let rank: Vec<usize> = (0..64).map(|k| (c1 & ((1u64 << k) - 1)).count_ones() as usize).collect();
        let cuts = self.cuts[1..]
            .iter()
            .map(|&c| (0..64).filter(|&k| c >> k & 1 == 1).fold(0u64, |acc, k| acc | 1 << rank[k]))
            .collect();
        Ok(NestedWord { leaves, cuts })
    }

    pub fn render(&self, cat: &FinCat) -> String {
        let mut s = String::new();
        self.render_level(cat, self.dim(), 0, self.leaves.len(), &mut s);
        s
    }

    fn render_level(&self, cat: &FinCat, j: usize, lo: usize, hi: usize, out: &mut String) {
        if j == 0 {
            for &w in &self.leaves[lo..hi] {
                out.push('(');
                out.push_str(&cat.arrows[w].name);
                out.push(')');
            }
            return;
        }
        let cut = self.level(j);
        let mut start = lo;
        for k in lo..hi {
            if k + 1 == hi || cut >> k & 1 == 1 {
                out.push('[');
                self.render_level(cat, j - 1, start, k + 1, out);
                out.push(']');
                start = k + 1;
            }
        }
    }
}

/// All composable words of non-identity arrows `a -> b`, optionally with a fixed composite.
pub fn words(cat: &FinCat, a: usize, b: usize, composite: Option<usize>) -> Result<Vec<Vec<usize>>, Error> {
    // paths in the order of application, reversed at the end
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; cat.objects.len()];
    fn rec(cat: &FinCat, cur: usize, b: usize, want: Option<usize>, path: &mut Vec<usize>, on_path: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) -> Result<(), Error> {
        if on_path[cur] {
            return Err(Error::Invalid(format!("non-identity loop at {}: mapping space is infinite", cat.objects[cur])));
        }
        if cur == b && !path.is_empty() {
            let w: Vec<usize> = path.iter().rev().copied().collect();
            if want.is_none_or(|h| cat.composite(&w) == h) {
                out.push(w);
            }
        }
        on_path[cur] = true;
        for (f, arr) in cat.arrows.iter().enumerate() {
            if arr.src == cur && !cat.is_identity(f) {
                path.push(f);
                rec(cat, arr.tgt, b, want, path, on_path, out)?;
                path.pop();
            }
        }
        on_path[cur] = false;
        Ok(())
    }
    rec(cat, a, b, composite, &mut path, &mut on_path, &mut out)?;
    if a == b && composite.is_none_or(|h| cat.is_identity(h)) {
        // the empty word on the identity
        out.insert(0, vec![]);
    }
    Ok(out)
}

/// Mapping space with the nested word behind every cell.
#[derive(Clone, Debug)]
pub struct DkSpace {
    pub sset: SSet,
    pub cells: Vec<Vec<NestedWord>>,
}

fn strict_chains(top: u64, len: usize, out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    let above = *cur.last().unwrap_or(&top);
    if above == 0 {
        return;
    }
    // proper submasks of `above`
    let mut s = above;
    loop {
        s = s.wrapping_sub(1) & above;
        cur.push(s);
        strict_chains(top, len, out, cur);
        cur.pop();
        if s == 0 {
            break;
        }
    }
}

fn build(cat: &FinCat, ws: Vec<Vec<usize>>, max_dim: usize) -> Result<DkSpace, Error> {
    let mut cells: Vec<Vec<NestedWord>> = Vec::new();
    for n in 0..=max_dim {
        let mut level = Vec::new();
        for w in ws.iter().filter(|w| !w.is_empty()) {
            if w.len() > 64 {
                return Err(Error::TooLarge("word longer than 64 letters".into()));
            }
            let top = (1u64 << (w.len() - 1)) - 1;
            if (top.count_ones() as usize) < n {
                continue;
            }
            let mut chains = Vec::new();
            strict_chains(top, n, &mut chains, &mut vec![]);
            for c in chains {
                level.push(NestedWord { leaves: w.clone(), cuts: c });
            }
        }
        if level.is_empty() {
            break;
        }
        cells.push(level);
    }
    let index: Vec<HashMap<&NestedWord, usize>> = cells.iter().map(|v| v.iter().enumerate().map(|(i, w)| (w, i)).collect()).collect();
    let mut sset = SSet::empty();
    for (n, level) in cells.iter().enumerate() {
        sset.names.push(level.iter().map(|w| w.render(cat)).collect());
        let mut fs = Vec::with_capacity(level.len());
        for w in level {
            let mut f = Vec::new();
            if n > 0 {
                for i in 0..=n {
                    let x = w.face(cat, i)?;
                    let c = *index[n - 1].get(&x).ok_or_else(|| Error::Invalid(format!("face {i} of {} missing", w.render(cat))))?;
                    f.push(Simp::nd(n - 1, c));
                }
            }
            fs.push(f);
        }
        sset.faces.push(fs);
    }
    Ok(DkSpace { sset, cells })
}

/// Mapping space `a -> b` of the resolution, nondegenerate cells up to `max_dim`.
pub fn dk_mapping_space(cat: &FinCat, a: usize, b: usize, max_dim: usize) -> Result<DkSpace, Error> {
    if a >= cat.objects.len() || b >= cat.objects.len() {
        return Err(Error::Invalid("unknown object".into()));
    }
    build(cat, words(cat, a, b, None)?, max_dim)
}

/// Only the component of the arrow `theta`.
pub fn dk_component(cat: &FinCat, theta: usize, max_dim: usize) -> Result<DkSpace, Error> {
    let (a, b) = (cat.arrows[theta].src, cat.arrows[theta].tgt);
    build(cat, words(cat, a, b, Some(theta))?, max_dim)
}

/// Cells of `space` whose leaf composite is `theta`.
pub fn component_of(cat: &FinCat, space: &DkSpace, theta: usize) -> Result<SSet, Error> {
    let first = space.cells.first().and_then(|v| v.first());
    if let Some(w) = first {
        let (a, b) = (cat.arrows[*w.leaves.last().unwrap()].src, cat.arrows[w.leaves[0]].tgt);
        if cat.arrows[theta].src != a || cat.arrows[theta].tgt != b {
            return Err(Error::Invalid(format!("{} is not an arrow between the endpoints", cat.arrows[theta].name)));
        }
    }
    let keep: Vec<Vec<bool>> = space.cells.iter().map(|v| v.iter().map(|w| cat.composite(&w.leaves) == theta).collect()).collect();
    Ok(space.sset.subcomplex(&keep)?.0)
}

/// Cells of a component missing the one-leaf vertex (the unfactored arrow).
pub fn component_boundary(space: &DkSpace) -> Result<SSet, Error> {
    let apex = space.cells.first().and_then(|v| v.iter().position(|w| w.leaves.len() == 1));
    let keep: Vec<Vec<bool>> = (0..space.sset.names.len())
        .map(|d| (0..space.sset.count(d)).map(|c| apex.is_none_or(|a| !space.sset.vertices_of(d, c).contains(&a))).collect())
        .collect();
    Ok(space.sset.subcomplex(&keep)?.0)
}

/// Vertices of a component grouped by leaf count: entry `l` counts words with `l` leaves.
pub fn leaf_census(space: &DkSpace) -> Vec<usize> {
    let mut out = Vec::new();
    for w in space.cells.first().into_iter().flatten() {
        if out.len() <= w.leaves.len() {
            out.resize(w.leaves.len() + 1, 0);
        }
        out[w.leaves.len()] += 1;
    }
    out
}

pub fn is_degenerate(w: &NestedWord) -> bool {
    w.is_degenerate()
}

/// The component of `theta = d0 d1 .. d_{gap-1}` style arrows: any injection of the given gap.
pub fn delta_component(th: &Injection, max_dim: Option<usize>) -> Result<SSet, Error> {
    let (cat, _) = delta_op(th.src, th.tgt)?;
    let id = delta_arrow(&cat, th.src, th)?;
    Ok(dk_component(&cat, id, max_dim.unwrap_or(th.gap()))?.sset)
}

//! Isomorphism search between finite simplicial sets.

use crate::sset::{SSet, Simp};
use crate::Error;
use std::collections::{HashMap, VecDeque};

pub const DEFAULT_CAP: usize = 10_000;

/// Cell bijection per dimension, `map[d][c]` in the target.
pub type Iso = Vec<Vec<usize>>;

/// Cofaces by nondegenerate face: `(cell of dim d+1, face index)`.
fn cofaces(x: &SSet) -> Vec<Vec<Vec<(usize, usize)>>> {
    let mut out: Vec<Vec<Vec<(usize, usize)>>> = x.names.iter().map(|v| vec![vec![]; v.len()]).collect();
    for d in 1..x.names.len() {
        for c in 0..x.count(d) {
            for (i, f) in x.faces[d][c].iter().enumerate() {
                if !f.is_degenerate() {
                    out[d - 1][f.cell].push((c, i));
                }
            }
        }
    }
    out
}

/// Joint color refinement; returns colors for both sets in a shared palette.
fn refine(a: &SSet, b: &SSet, ca: &[Vec<Vec<(usize, usize)>>], cb: &[Vec<Vec<(usize, usize)>>]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let init = |x: &SSet, co: &[Vec<Vec<(usize, usize)>>]| -> Vec<Vec<Vec<u64>>> {
        (0..x.names.len())
            .map(|d| {
                (0..x.count(d))
                    .map(|c| {
                        let mut sig = vec![d as u64, co[d][c].len() as u64];
                        sig.extend(x.faces[d][c].iter().map(|f| f.deg));
                        sig
                    })
                    .collect()
            })
            .collect()
    };
    let mut palette: HashMap<Vec<u64>, usize> = HashMap::new();
    let intern = |sigs: Vec<Vec<Vec<u64>>>, palette: &mut HashMap<Vec<u64>, usize>| -> Vec<Vec<usize>> {
        sigs.into_iter()
            .map(|v| {
                v.into_iter()
                    .map(|s| {
                        let n = palette.len();
                        *palette.entry(s).or_insert(n)
                    })
                    .collect()
            })
            .collect()
    };
    let mut col_a = intern(init(a, ca), &mut palette);
    let mut col_b = intern(init(b, cb), &mut palette);
    let classes = |p: &HashMap<Vec<u64>, usize>| p.len();
    let mut prev = classes(&palette);
    loop {
        let step = |x: &SSet, co: &[Vec<Vec<(usize, usize)>>], col: &Vec<Vec<usize>>| -> Vec<Vec<Vec<u64>>> {
            (0..x.names.len())
                .map(|d| {
                    (0..x.count(d))
                        .map(|c| {
                            let mut sig = vec![col[d][c] as u64];
                            for f in x.faces[d].get(c).into_iter().flatten() {
                                sig.push(f.deg);
                                sig.push(col[f.base_dim()][f.cell] as u64);
                            }
                            let mut up: Vec<(u64, u64)> = co[d][c].iter().map(|&(cc, i)| (col[d + 1][cc] as u64, i as u64)).collect();
                            up.sort_unstable();
                            sig.push(u64::MAX);
                            for (x, y) in up {
                                sig.push(x);
                                sig.push(y);
                            }
                            sig
                        })
                        .collect()
                })
                .collect()
        };
        let sa = step(a, ca, &col_a);
        let sb = step(b, cb, &col_b);
        palette.clear();
        col_a = intern(sa, &mut palette);
        col_b = intern(sb, &mut palette);
        let now = classes(&palette);
        if now == prev {
            break;
        }
        prev = now;
    }
    (col_a, col_b)
}

struct State<'a> {
    a: &'a SSet,
    b: &'a SSet,
    col_a: Vec<Vec<usize>>,
    col_b: Vec<Vec<usize>>,
    fwd: Vec<Vec<usize>>,
    bwd: Vec<Vec<usize>>,
    trail: Vec<(usize, usize)>,
}

const NONE: usize = usize::MAX;

impl State<'_> {
    /// Assign `x -> y` and everything forced through faces; false on conflict.
    fn assign(&mut self, d: usize, x: usize, y: usize) -> bool {
        let mut queue = vec![(d, x, y)];
        while let Some((d, x, y)) = queue.pop() {
            if self.fwd[d][x] != NONE {
                if self.fwd[d][x] != y {
                    return false;
                }
                continue;
            }
            if self.bwd[d][y] != NONE || self.col_a[d][x] != self.col_b[d][y] {
                return false;
            }
            self.fwd[d][x] = y;
            self.bwd[d][y] = x;
            self.trail.push((d, x));
            if d == 0 {
                continue;
            }
            for i in 0..=d {
                let fa: Simp = self.a.faces[d][x][i];
                let fb: Simp = self.b.faces[d][y][i];
                if fa.deg != fb.deg {
                    return false;
                }
                queue.push((fa.base_dim(), fa.cell, fb.cell));
            }
        }
        true
    }

    fn undo(&mut self, to: usize) {
        while self.trail.len() > to {
            let (d, x) = self.trail.pop().unwrap();
            let y = self.fwd[d][x];
            self.fwd[d][x] = NONE;
            self.bwd[d][y] = NONE;
        }
    }
}

/// Search for an isomorphism; `Err` when either side exceeds `cap` cells.
pub fn iso_check_capped(a: &SSet, b: &SSet, cap: usize) -> Result<Option<Iso>, Error> {
    if a.total_cells() > cap || b.total_cells() > cap {
        return Err(Error::TooLarge(format!("{} / {} cells exceeds cap {cap}", a.total_cells(), b.total_cells())));
    }
    if a.f_vector() != b.f_vector() {
        return Ok(None);
    }
    let ca = cofaces(a);
    let cb = cofaces(b);
    let (col_a, col_b) = refine(a, b, &ca, &cb);
    // color class sizes must agree
    let mut hist: HashMap<(usize, usize), i64> = HashMap::new();
    for (d, v) in col_a.iter().enumerate() {
        for &c in v {
            *hist.entry((d, c)).or_default() += 1;
        }
    }
    for (d, v) in col_b.iter().enumerate() {
        for &c in v {
            *hist.entry((d, c)).or_default() -= 1;
        }
    }
    if hist.values().any(|&v| v != 0) {
        return Ok(None);
    }
    // visiting order: maximal cells first by dimension, then breadth-first through shared faces
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut seen: Vec<Vec<bool>> = a.names.iter().map(|v| vec![false; v.len()]).collect();
    for d in (0..a.names.len()).rev() {
        for start in 0..a.count(d) {
            if seen[d][start] {
                continue;
            }
            let mut q = VecDeque::from([(d, start)]);
            seen[d][start] = true;
            while let Some((dd, c)) = q.pop_front() {
                order.push((dd, c));
                let mut nbrs: Vec<(usize, usize)> = Vec::new();
                if dd > 0 {
                    for f in &a.faces[dd][c] {
                        for &(cc, _) in &ca[f.base_dim()][f.cell] {
                            if f.base_dim() + 1 == dd {
                                nbrs.push((dd, cc));
                            }
                        }
                    }
                }
                for &(cc, _) in &ca[dd][c] {
                    nbrs.push((dd + 1, cc));
                }
                for (nd, nc) in nbrs {
                    if !seen[nd][nc] {
                        seen[nd][nc] = true;
                        q.push_back((nd, nc));
                    }
                }
            }
        }
    }
    let mut st = State {
        a,
        b,
        fwd: a.names.iter().map(|v| vec![NONE; v.len()]).collect(),
        bwd: b.names.iter().map(|v| vec![NONE; v.len()]).collect(),
        col_a,
        col_b,
        trail: vec![],
    };
    // explicit backtracking stack: (position in order, candidates, next candidate, trail mark)
    let mut stack: Vec<(usize, Vec<usize>, usize, usize)> = Vec::new();
    let mut pos = 0;
    loop {
        while pos < order.len() && st.fwd[order[pos].0][order[pos].1] != NONE {
            pos += 1;
        }
        if pos == order.len() {
            return Ok(Some(st.fwd));
        }
        let (d, x) = order[pos];
        let cands = candidates(&st, &cb, d, x);
        stack.push((pos, cands, 0, st.trail.len()));
        // try candidates, backtracking as needed
        loop {
            let Some(top) = stack.last_mut() else { return Ok(None) };
            let (p, ref cands, ref mut next, mark) = *top;
            let (d, x) = order[p];
            st.undo(mark);
            let mut placed = false;
            while *next < cands.len() {
                let y = cands[*next];
                *next += 1;
                if st.assign(d, x, y) {
                    placed = true;
                    break;
                }
                st.undo(mark);
            }
            if placed {
                pos = p + 1;
                break;
            }
            stack.pop();
        }
    }
}

fn candidates(st: &State, cb: &[Vec<Vec<(usize, usize)>>], d: usize, x: usize) -> Vec<usize> {
    let color = st.col_a[d][x];
    if d > 0 {
        // a face already mapped pins the candidates to its cofaces
        for (i, f) in st.a.faces[d][x].iter().enumerate() {
            let img = st.fwd[f.base_dim()][f.cell];
            if img != NONE && !f.is_degenerate() {
                return cb[d - 1][img].iter().filter(|&&(y, j)| j == i && st.bwd[d][y] == NONE && st.col_b[d][y] == color).map(|&(y, _)| y).collect();
            }
        }
    }
    (0..st.b.count(d)).filter(|&y| st.bwd[d][y] == NONE && st.col_b[d][y] == color).collect()
}

pub fn iso_check(a: &SSet, b: &SSet) -> Result<Option<Iso>, Error> {
    iso_check_capped(a, b, DEFAULT_CAP)
}

/// Verifies that `iso` is a face-commuting bijection.
pub fn verify_iso(a: &SSet, b: &SSet, iso: &Iso) -> bool {
    if a.f_vector() != b.f_vector() {
        return false;
    }
    for d in 0..a.names.len() {
        let mut hit = vec![false; b.count(d)];
        for c in 0..a.count(d) {
            let y = iso[d][c];
            if y >= b.count(d) || hit[y] {
                return false;
            }
            hit[y] = true;
            if d > 0 {
                for i in 0..=d {
                    let fa = a.faces[d][c][i];
                    let fb = b.faces[d][y][i];
                    if fa.deg != fb.deg || iso[fa.base_dim()][fa.cell] != fb.cell {
                        return false;
                    }
                }
            }
        }
    }
    true
}

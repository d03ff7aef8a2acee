//! Finite simplicial sets stored by nondegenerate cells and face data.

use crate::fp::Mat;
use crate::sparse::{divisors, Coeffs, SparseMat};
use crate::Error;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// A possibly degenerate simplex `s_J c`: `deg` has bit `j` set when the
/// underlying surjection identifies `j` and `j+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simp {
    pub dim: usize,
    pub deg: u64,
    pub cell: usize,
}

impl Simp {
    pub fn nd(dim: usize, cell: usize) -> Simp {
        Simp { dim, deg: 0, cell }
    }

    pub fn base_dim(&self) -> usize {
        self.dim - self.deg.count_ones() as usize
    }

    pub fn is_degenerate(&self) -> bool {
        self.deg != 0
    }

    /// Degeneracy operators as the descending list `j1 > j2 > ..`.
    pub fn degword(&self) -> Vec<usize> {
        (0..64).rev().filter(|j| self.deg >> j & 1 == 1).collect()
    }
}

/// Values `sigma(0..=n)` of the surjection with collapse set `deg`.
pub fn sur_values(n: usize, deg: u64) -> Vec<usize> {
    let mut v = Vec::with_capacity(n + 1);
    let mut cur = 0;
    for i in 0..=n {
        if i > 0 && deg >> (i - 1) & 1 == 0 {
            cur += 1;
        }
        v.push(cur);
    }
    v
}

/// Collapse mask of a nondecreasing surjective value list.
pub fn sur_mask(vals: &[usize]) -> u64 {
    let mut m = 0;
    for j in 0..vals.len().saturating_sub(1) {
        if vals[j] == vals[j + 1] {
            m |= 1 << j;
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSet {
    /// Cell names per dimension.
    pub names: Vec<Vec<String>>,
    /// `faces[d][c][i]` is `d_i` of cell `c` in dimension `d >= 1`.
    pub faces: Vec<Vec<Vec<Simp>>>,
    pub basepoint: Option<usize>,
}

/// Coefficients for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Z,
    Fp(u32),
}

/// Homology in one degree: free rank plus torsion coefficients (over Z).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<i64>,
}

impl SSet {
    pub fn empty() -> SSet {
        SSet { names: vec![], faces: vec![], basepoint: None }
    }

    pub fn dim(&self) -> Option<usize> {
        (0..self.names.len()).rev().find(|&d| !self.names[d].is_empty())
    }

    pub fn count(&self, d: usize) -> usize {
        self.names.get(d).map_or(0, |v| v.len())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        match self.dim() {
            None => vec![],
            Some(d) => (0..=d).map(|k| self.count(k)).collect(),
        }
    }

    pub fn total_cells(&self) -> usize {
        self.names.iter().map(|v| v.len()).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// `d_i x` for any simplex.
    pub fn face(&self, x: Simp, i: usize) -> Simp {
        assert!(x.dim >= 1 && i <= x.dim, "face d{i} of a {}-simplex", x.dim);
        let m = x.base_dim();
        let mut vals = sur_values(x.dim, x.deg);
        let k = vals[i];
        vals.remove(i);
        let hit = vals.binary_search(&k).is_ok();
        if hit {
            return Simp { dim: x.dim - 1, deg: sur_mask(&vals), cell: x.cell };
        }
        // singleton fibre: factor through d_k of the base cell
        for v in vals.iter_mut() {
            if *v > k {
                *v -= 1;
            }
        }
        let f = self.faces[m][x.cell][k];
        let fv = sur_values(f.dim, f.deg);
        let comp: Vec<usize> = vals.iter().map(|&v| fv[v]).collect();
        Simp { dim: x.dim - 1, deg: sur_mask(&comp), cell: f.cell }
    }

    /// `s_j x`.
    pub fn degeneracy(&self, x: Simp, j: usize) -> Simp {
        assert!(j <= x.dim);
        let mut vals = sur_values(x.dim, x.deg);
        vals.insert(j, vals[j]);
        Simp { dim: x.dim + 1, deg: sur_mask(&vals), cell: x.cell }
    }

    /// The `k`-th vertex of a simplex, as a 0-cell index.
    pub fn vertex(&self, x: Simp, k: usize) -> usize {
        let vals = sur_values(x.dim, x.deg);
        self.cell_vertex(x.base_dim(), x.cell, vals[k])
    }

    fn cell_vertex(&self, d: usize, c: usize, k: usize) -> usize {
        if d == 0 {
            return c;
        }
        let (i, kk) = if k < d { (d, k) } else { (0, k - 1) };
        let f = self.faces[d][c][i];
        let vals = sur_values(f.dim, f.deg);
        self.cell_vertex(f.base_dim(), f.cell, vals[kk])
    }

    pub fn vertices_of(&self, d: usize, c: usize) -> Vec<usize> {
        (0..=d).map(|k| self.vertex(Simp::nd(d, c), k)).collect()
    }

    /// Checks face targets, dimensions and the identities `d_i d_j = d_{j-1} d_i`.
    pub fn validate(&self) -> Result<(), Error> {
        if self.faces.len() != self.names.len() {
            return Err(Error::Invalid("face table and cell table disagree".into()));
        }
        for d in 0..self.names.len() {
            if self.faces[d].len() != self.names[d].len() {
                return Err(Error::Invalid(format!("dimension {d}: face table size mismatch")));
            }
            for (c, fs) in self.faces[d].iter().enumerate() {
                let want = if d == 0 { 0 } else { d + 1 };
                if fs.len() != want {
                    return Err(Error::Invalid(format!("cell {} has {} faces", self.names[d][c], fs.len())));
                }
                for f in fs {
                    let ok = f.dim + 1 == d
                        && f.deg >> f.dim == 0
                        && f.base_dim() < self.names.len()
                        && f.cell < self.names[f.base_dim()].len();
                    if !ok {
                        return Err(Error::Invalid(format!("bad face target on {}", self.names[d][c])));
                    }
                }
            }
        }
        if let Some(b) = self.basepoint {
            if b >= self.count(0) {
                return Err(Error::Invalid("basepoint out of range".into()));
            }
        }
        for d in 2..self.names.len() {
            for c in 0..self.names[d].len() {
                let x = Simp::nd(d, c);
                for j in 1..=d {
                    for i in 0..j {
                        let a = self.face(self.face(x, j), i);
                        let b = self.face(self.face(x, i), j - 1);
                        if a != b {
                            return Err(Error::Invalid(format!(
                                "simplicial identity d{i}d{j} = d{}d{i} fails on {}",
                                j - 1,
                                self.names[d][c]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Boundary matrix `C_d -> C_{d-1}` of normalized chains.
    pub fn boundary_matrix(&self, d: usize) -> SparseMat {
        if d == 0 {
            return SparseMat::new(0, self.count(0));
        }
        let mut m = SparseMat::new(self.count(d - 1), self.count(d));
        for c in 0..self.count(d) {
            for (i, f) in self.faces[d][c].iter().enumerate() {
                if !f.is_degenerate() {
                    m.add(f.cell, c, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        m
    }

    pub fn homology(&self, ring: Ring) -> Result<Vec<HomologyGroup>, Error> {
        let Some(top) = self.dim() else { return Ok(vec![]) };
        let coeffs = match ring {
            Ring::Z => Coeffs::Z,
            Ring::Fp(p) => {
                if !crate::fp::is_prime(p as u64) || p >= 1 << 16 {
                    return Err(Error::Invalid(format!("unsupported ring F_{p}")));
                }
                Coeffs::Fp(p)
            }
        };
        let divs: Vec<_> = (0..=top + 1)
            .map(|d| if d == 0 || d > top { Ok(crate::sparse::Divisors { rank: 0, torsion: vec![] }) } else { divisors(&self.boundary_matrix(d), coeffs) })
            .collect::<Result<_, _>>()?;
        Ok((0..=top)
            .map(|d| HomologyGroup { betti: self.count(d) - divs[d].rank - divs[d + 1].rank, torsion: divs[d + 1].torsion.clone() })
            .collect())
    }

    pub fn betti(&self, ring: Ring) -> Result<Vec<usize>, Error> {
        Ok(self.homology(ring)?.iter().map(|h| h.betti).collect())
    }

    /// Connected components: a component id for every cell, ids ordered by first vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n0 = self.count(0);
        let mut uf = UnionFind::new(n0);
        for c in 0..self.count(1) {
            let v = self.vertices_of(1, c);
            uf.union(v[0], v[1]);
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut vid = vec![0; n0];
        for (v, slot) in vid.iter_mut().enumerate() {
            let r = uf.find(v);
            let next = ids.len();
            *slot = *ids.entry(r).or_insert(next);
        }
        (0..self.names.len()).map(|d| (0..self.count(d)).map(|c| vid[self.vertex(Simp::nd(d, c), 0)]).collect()).collect()
    }

    pub fn num_components(&self) -> usize {
        self.components().first().map_or(0, |v| v.iter().copied().max().map_or(0, |m| m + 1))
    }

    /// Restriction to a set of cells closed under faces.
    pub fn subcomplex(&self, keep: &[Vec<bool>]) -> Result<(SSet, Vec<Vec<usize>>), Error> {
        let mut index: Vec<Vec<usize>> = Vec::new();
        for d in 0..self.names.len() {
            let mut next = 0;
            index.push(
                (0..self.count(d))
                    .map(|c| {
                        if keep[d][c] {
                            next += 1;
                            next - 1
                        } else {
                            usize::MAX
                        }
                    })
                    .collect(),
            );
        }
        let mut out = SSet::empty();
        for d in 0..self.names.len() {
            out.names.push(vec![]);
            out.faces.push(vec![]);
            for c in 0..self.count(d) {
                if !keep[d][c] {
                    continue;
                }
                out.names[d].push(self.names[d][c].clone());
                let mut fs = Vec::new();
                if d > 0 {
                    for f in &self.faces[d][c] {
                        let b = f.base_dim();
                        if !keep[b][f.cell] {
                            return Err(Error::Invalid(format!("not a subcomplex: face of {} missing", self.names[d][c])));
                        }
                        fs.push(Simp { dim: f.dim, deg: f.deg, cell: index[b][f.cell] });
                    }
                }
                out.faces[d].push(fs);
            }
        }
        out.trim();
        out.basepoint = self.basepoint.and_then(|b| if keep[0][b] { Some(index[0][b]) } else { None });
        Ok((out, index))
    }

    fn trim(&mut self) {
        while self.names.last().is_some_and(|v| v.is_empty()) {
            self.names.pop();
            self.faces.pop();
        }
    }

    /// Mask selecting the cells whose names are listed.
    pub fn mask_of(&self, names: &BTreeSet<String>) -> Vec<Vec<bool>> {
        self.names.iter().map(|v| v.iter().map(|n| names.contains(n)).collect()).collect()
    }

    pub fn empty_mask(&self) -> Vec<Vec<bool>> {
        self.names.iter().map(|v| vec![false; v.len()]).collect()
    }

    /// Reversed vertex order: `d_i` becomes `d_{n-i}`.
    pub fn opposite(&self) -> SSet {
        let mut out = self.clone();
        for d in 1..self.names.len() {
            for c in 0..self.count(d) {
                out.faces[d][c] = (0..=d)
                    .map(|i| {
                        let f = self.faces[d][c][d - i];
                        let mut deg = 0u64;
                        for j in 0..f.dim {
                            if f.deg >> j & 1 == 1 {
                                deg |= 1 << (f.dim - 1 - j);
                            }
                        }
                        Simp { dim: f.dim, deg, cell: f.cell }
                    })
                    .collect();
            }
        }
        out
    }

    pub fn find(&self, name: &str) -> Option<(usize, usize)> {
        self.names.iter().enumerate().find_map(|(d, v)| v.iter().position(|n| n == name).map(|c| (d, c)))
    }
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let n = self.parent[y];
            self.parent[y] = r;
            y = n;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

// ---------------------------------------------------------------- constructors

/// Simplicial set of an ordered simplicial complex given by vertex tuples
/// (closed downward automatically). Cells are sorted by vertex tuple.
pub fn from_ordered(vnames: &[String], simplices: impl IntoIterator<Item = Vec<usize>>, sep: &str) -> SSet {
    let mut all: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = simplices.into_iter().collect();
    while let Some(s) = stack.pop() {
        let d = s.len() - 1;
        while all.len() <= d {
            all.push(BTreeSet::new());
        }
        if all[d].insert(s.clone()) && d > 0 {
            for i in 0..=d {
                let mut f = s.clone();
                f.remove(i);
                stack.push(f);
            }
        }
    }
    for v in 0..vnames.len() {
        if all.is_empty() {
            all.push(BTreeSet::new());
        }
        all[0].insert(vec![v]);
    }
    let lists: Vec<Vec<Vec<usize>>> = all.into_iter().map(|s| s.into_iter().collect()).collect();
    let index: Vec<HashMap<&Vec<usize>, usize>> = lists.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let mut out = SSet::empty();
    for (d, l) in lists.iter().enumerate() {
        out.names.push(l.iter().map(|s| s.iter().map(|&v| vnames[v].as_str()).collect::<Vec<_>>().join(sep)).collect());
        out.faces.push(
            l.iter()
                .map(|s| {
                    if d == 0 {
                        return vec![];
                    }
                    (0..=d)
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            Simp::nd(d - 1, index[d - 1][&f])
                        })
                        .collect()
                })
                .collect(),
        );
    }
    out
}

fn digit_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u64..(1 << n)).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn sep_for(n: usize) -> &'static str {
    if n <= 10 {
        ""
    } else {
        ","
    }
}

pub fn standard_simplex(n: usize) -> SSet {
    from_ordered(&digit_names(n + 1), vec![(0..=n).collect()], sep_for(n + 1))
}

pub fn boundary(n: usize) -> SSet {
    from_ordered(&digit_names(n + 1), subsets(n + 1).into_iter().filter(|s| s.len() <= n), sep_for(n + 1))
}

pub fn horn(n: usize, k: usize) -> SSet {
    assert!(k <= n);
    from_ordered(
        &digit_names(n + 1),
        subsets(n + 1).into_iter().filter(|s| s.len() <= n && !(s.len() == n && !s.contains(&k))),
        sep_for(n + 1),
    )
}

/// Nerve of a finite poset given as a strict order relation.
pub fn nerve(vnames: &[String], less: impl Fn(usize, usize) -> bool, sep: &str) -> SSet {
    let n = vnames.len();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().unwrap();
        let mut extended = false;
        for v in 0..n {
            if less(last, v) {
                let mut e = c.clone();
                e.push(v);
                stack.push(e);
                extended = true;
            }
        }
        if !extended {
            chains.push(c);
        }
    }
    from_ordered(vnames, chains, sep)
}

/// Collapse the subcomplex `a` (a cell mask) to a basepoint `*`.
pub fn quotient(x: &SSet, a: &[Vec<bool>]) -> Result<SSet, Error> {
    // closure check
    for d in 1..x.names.len() {
        for c in 0..x.count(d) {
            if a[d][c] && x.faces[d][c].iter().any(|f| !a[f.base_dim()][f.cell]) {
                return Err(Error::Invalid(format!("not a subcomplex: {}", x.names[d][c])));
            }
        }
    }
    let mut index: Vec<Vec<usize>> = Vec::new();
    let mut out = SSet::empty();
    for d in 0..x.names.len() {
        let mut names = Vec::new();
        if d == 0 {
            names.push("*".to_string());
        }
        let mut idx = vec![usize::MAX; x.count(d)];
        for c in 0..x.count(d) {
            if !a[d][c] {
                idx[c] = names.len();
                names.push(x.names[d][c].clone());
            }
        }
        index.push(idx);
        out.names.push(names);
    }
    if out.names.is_empty() {
        out.names.push(vec!["*".into()]);
    }
    for d in 0..out.names.len() {
        let mut fs_all = Vec::new();
        if d == 0 {
            fs_all = vec![vec![]; out.names[0].len()];
        } else {
            for c in 0..x.count(d) {
                if a[d][c] {
                    continue;
                }
                fs_all.push(
                    x.faces[d][c]
                        .iter()
                        .map(|f| {
                            let b = f.base_dim();
                            if a[b][f.cell] {
                                Simp { dim: d - 1, deg: (1u64 << (d - 1)) - 1, cell: 0 }
                            } else {
                                Simp { dim: f.dim, deg: f.deg, cell: index[b][f.cell] }
                            }
                        })
                        .collect(),
                );
            }
        }
        out.faces.push(fs_all);
    }
    out.basepoint = Some(0);
    out.trim();
    Ok(out)
}

/// Cone with apex appended as the last vertex.
pub fn cone(x: &SSet) -> SSet {
    let top = x.names.len();
    let mut out = SSet::empty();
    // cell (d, c) of x keeps index c; cone of (d, c) sits in dim d+1 after x's own cells
    let off: Vec<usize> = (0..=top).map(|d| x.count(d)).collect();
    let apex_name = {
        let mut s = "c".to_string();
        while x.find(&s).is_some() {
            s.push('\'');
        }
        s
    };
    for d in 0..=top {
        let mut names: Vec<String> = x.names.get(d).cloned().unwrap_or_default();
        let mut faces: Vec<Vec<Simp>> = x.faces.get(d).cloned().unwrap_or_default();
        if d == 0 {
            names.push(apex_name.clone());
            faces.push(vec![]);
        } else {
            for c in 0..x.count(d - 1) {
                names.push(format!("C({})", x.names[d - 1][c]));
                let k = d - 1;
                let mut fs = Vec::new();
                for i in 0..=k {
                    if k == 0 {
                        fs.push(Simp::nd(0, off[0]));
                    } else {
                        let f = x.faces[k][c][i];
                        let b = f.base_dim();
                        fs.push(Simp { dim: f.dim + 1, deg: f.deg, cell: off[b + 1] + f.cell });
                    }
                }
                fs.push(Simp::nd(k, c));
                faces.push(fs);
            }
        }
        out.names.push(names);
        out.faces.push(faces);
    }
    out.trim();
    out
}

pub fn tr_simplex(n: usize) -> SSet {
    cone(&boundary(n))
}

fn side_name(name: &str, deg: u64) -> String {
    let mut s = String::new();
    for j in (0..64).rev() {
        if deg >> j & 1 == 1 {
            s.push_str(&format!("s{j}"));
        }
    }
    s.push_str(name);
    s
}

/// Product of simplicial sets; nondegenerate cells are pairs `(s_I x, s_J y)` with `I, J` disjoint.
pub fn product(x: &SSet, y: &SSet) -> SSet {
    let dx = x.names.len();
    let dy = y.names.len();
    if dx == 0 || dy == 0 {
        return SSet::empty();
    }
    let top = (dx - 1) + (dy - 1);
    // key: (a, xc, b, yc, I, J) -> index in dim n
    let mut keys: Vec<Vec<(usize, usize, usize, usize, u64, u64)>> = vec![vec![]; top + 1];
    let mut lookup: Vec<HashMap<(usize, usize, usize, usize, u64, u64), usize>> = vec![HashMap::new(); top + 1];
    for n in 0..=top {
        for a in 0..dx.min(n + 1) {
            for b in 0..dy.min(n + 1) {
                if a + b < n {
                    continue;
                }
                let masks_i = masks(n, n - a);
                let masks_j = masks(n, n - b);
                for &mi in &masks_i {
                    for &mj in &masks_j {
                        if mi & mj != 0 {
                            continue;
                        }
                        for xc in 0..x.count(a) {
                            for yc in 0..y.count(b) {
                                let k = (a, xc, b, yc, mi, mj);
                                lookup[n].insert(k, keys[n].len());
                                keys[n].push(k);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = SSet::empty();
    for n in 0..=top {
        let mut names = Vec::new();
        let mut faces = Vec::new();
        for &(a, xc, b, yc, mi, mj) in &keys[n] {
            names.push(format!("({},{})", side_name(&x.names[a][xc], mi), side_name(&y.names[b][yc], mj)));
            if n == 0 {
                faces.push(vec![]);
                continue;
            }
            let sx = Simp { dim: n, deg: mi, cell: xc };
            let sy = Simp { dim: n, deg: mj, cell: yc };
            let mut fs = Vec::new();
            for i in 0..=n {
                let fx = x.face(sx, i);
                let fy = y.face(sy, i);
                let common = fx.deg & fy.deg;
                let squeeze = |m: u64| -> u64 {
                    let mut out = 0u64;
                    let mut pos = 0;
                    for j in 0..n - 1 {
                        if common >> j & 1 == 1 {
                            continue;
                        }
                        if m >> j & 1 == 1 {
                            out |= 1 << pos;
                        }
                        pos += 1;
                    }
                    out
                };
                let nn = n - 1 - common.count_ones() as usize;
                let key = (fx.base_dim(), fx.cell, fy.base_dim(), fy.cell, squeeze(fx.deg), squeeze(fy.deg));
                let cell = lookup[nn][&key];
                fs.push(Simp { dim: n - 1, deg: common, cell });
            }
            faces.push(fs);
        }
        out.names.push(names);
        out.faces.push(faces);
    }
    out.trim();
    out
}

/// All `k`-subsets of `{0..n-1}` as bitmasks.
fn masks(n: usize, k: usize) -> Vec<u64> {
    (0u64..(1 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

/// `Δⁿ×{0} ∪ ∂Δⁿ×Δ¹` inside the nerve of `[n]×[1]`.
pub fn fattened_simplex(n: usize) -> SSet {
    assert!(n >= 1);
    let verts: Vec<(usize, usize)> = (0..=1).flat_map(|t| (0..=n).map(move |i| (i, t))).collect();
    let vnames: Vec<String> = verts.iter().map(|(i, t)| format!("{i}{t}")).collect();
    let less = |a: usize, b: usize| {
        let (x, y) = (verts[a], verts[b]);
        a != b && x.0 <= y.0 && x.1 <= y.1
    };
    let full = nerve(&vnames, less, ",");
    let keep: Vec<Vec<bool>> = (0..full.names.len())
        .map(|d| {
            (0..full.count(d))
                .map(|c| {
                    let vs = full.vertices_of(d, c);
                    let bottom = vs.iter().all(|&v| verts[v].1 == 0);
                    let firsts: BTreeSet<usize> = vs.iter().map(|&v| verts[v].0).collect();
                    bottom || firsts.len() < n + 1
                })
                .collect()
        })
        .collect();
    full.subcomplex(&keep).unwrap().0
}

/// The face `∂Δⁿ × {1}` of the fattened simplex, as a cell mask.
pub fn fattened_top_boundary(x: &SSet, n: usize) -> Vec<Vec<bool>> {
    (0..x.names.len())
        .map(|d| {
            (0..x.count(d))
                .map(|c| {
                    let vs = x.vertices_of(d, c);
                    let names: Vec<&String> = vs.iter().map(|&v| &x.names[0][v]).collect();
                    let top = names.iter().all(|s| s.ends_with('1'));
                    let firsts: BTreeSet<&str> = names.iter().map(|s| &s[..s.len() - 1]).collect();
                    top && firsts.len() < n + 1
                })
                .collect()
        })
        .collect()
}

pub fn disjoint_union(parts: &[SSet]) -> SSet {
    let top = parts.iter().map(|p| p.names.len()).max().unwrap_or(0);
    let mut out = SSet { names: vec![vec![]; top], faces: vec![vec![]; top], basepoint: None };
    let mut off = vec![0usize; top];
    for p in parts {
        for d in 0..p.names.len() {
            out.names[d].extend(p.names[d].iter().cloned());
            for fs in &p.faces[d] {
                out.faces[d].push(fs.iter().map(|f| Simp { dim: f.dim, deg: f.deg, cell: f.cell + off[f.base_dim()] }).collect());
            }
        }
        for d in 0..p.names.len() {
            off[d] += p.count(d);
        }
    }
    out
}

// ---------------------------------------------------------------- JSON

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetJson {
    pub cells: IndexMap<String, Vec<String>>,
    pub faces: IndexMap<String, Vec<(Vec<usize>, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<String>,
}

impl SSet {
    pub fn to_json(&self) -> SSetJson {
        let mut cells = IndexMap::new();
        let mut faces = IndexMap::new();
        for d in 0..self.names.len() {
            cells.insert(d.to_string(), self.names[d].clone());
            for c in 0..self.count(d) {
                let fs = self.faces[d][c].iter().map(|f| (f.degword(), self.names[f.base_dim()][f.cell].clone())).collect();
                faces.insert(self.names[d][c].clone(), fs);
            }
        }
        SSetJson { cells, faces, basepoint: self.basepoint.map(|b| self.names[0][b].clone()) }
    }

    pub fn from_json(j: &SSetJson) -> Result<SSet, Error> {
        let mut out = SSet::empty();
        let top = j.cells.keys().map(|k| k.parse::<usize>().map_err(|_| Error::Invalid(format!("bad dimension key {k}")))).collect::<Result<Vec<_>, _>>()?;
        let nd = top.iter().max().map_or(0, |m| m + 1);
        out.names = vec![vec![]; nd];
        for (k, v) in &j.cells {
            out.names[k.parse::<usize>().unwrap()] = v.clone();
        }
        let mut where_: HashMap<&str, (usize, usize)> = HashMap::new();
        for (d, v) in out.names.iter().enumerate() {
            for (c, n) in v.iter().enumerate() {
                if where_.insert(n.as_str(), (d, c)).is_some() {
                    return Err(Error::Invalid(format!("duplicate cell name {n}")));
                }
            }
        }
        out.faces = vec![vec![]; nd];
        for d in 0..nd {
            for n in &out.names[d] {
                let fs = match j.faces.get(n) {
                    Some(fs) => fs,
                    None if d == 0 => {
                        out.faces[d].push(vec![]);
                        continue;
                    }
                    None => return Err(Error::Invalid(format!("missing faces for {n}"))),
                };
                let mut v = Vec::new();
                for (word, tgt) in fs {
                    let &(b, c) = where_.get(tgt.as_str()).ok_or_else(|| Error::Invalid(format!("unknown face target {tgt}")))?;
                    if !word.windows(2).all(|w| w[0] > w[1]) {
                        return Err(Error::Invalid(format!("degeneracy word {word:?} not descending")));
                    }
                    let mut deg = 0u64;
                    for &jj in word {
                        if jj >= 63 {
                            return Err(Error::Invalid("degeneracy index too large".into()));
                        }
                        deg |= 1 << jj;
                    }
                    if d == 0 || b + word.len() != d - 1 {
                        return Err(Error::Invalid(format!("face of {n} has wrong dimension")));
                    }
                    v.push(Simp { dim: d - 1, deg, cell: c });
                }
                out.faces[d].push(v);
            }
        }
        out.basepoint = match &j.basepoint {
            None => None,
            Some(b) => match where_.get(b.as_str()) {
                Some(&(0, c)) => Some(c),
                _ => return Err(Error::Invalid(format!("basepoint {b} is not a vertex"))),
            },
        };
        out.validate()?;
        Ok(out)
    }
}

/// Dense F_p boundary matrices, for callers that need explicit chain complexes.
pub fn boundary_fp(x: &SSet, d: usize, p: u32) -> Mat {
    x.boundary_matrix(d).to_fp(p)
}

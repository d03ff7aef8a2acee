//! Chain complexes over F_p, short exact sequences, bicomplexes and the
//! staircase spectral sequence of a filtered complex.

use crate::fp::{subspace, Mat, Quotient, Solver};
use crate::snf::{invariant_factors, IMat};
use crate::sset::HomologyGroup;
use crate::Error;
use std::collections::BTreeMap;

/// Nonnegatively graded complex; `d[n]: C_n -> C_{n-1}`, `d[0]` has no rows.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    pub p: u32,
    pub dims: Vec<usize>,
    pub d: Vec<Mat>,
}

impl ChainComplex {
    pub fn new(p: u32, dims: Vec<usize>, d: Vec<Mat>) -> Result<ChainComplex, Error> {
        if d.len() != dims.len() {
            return Err(Error::Invalid("one differential per degree required".into()));
        }
        for (n, m) in d.iter().enumerate() {
            let rows = if n == 0 { 0 } else { dims[n - 1] };
            if m.rows != rows || m.cols != dims[n] || m.p != p {
                return Err(Error::Invalid(format!("differential in degree {n} has shape {}x{}", m.rows, m.cols)));
            }
            if n >= 1 && !d[n - 1].mul(m).is_zero() {
                return Err(Error::Invalid(format!("d o d != 0 at degree {n}")));
            }
        }
        Ok(ChainComplex { p, dims, d })
    }

    pub fn zero(p: u32) -> ChainComplex {
        ChainComplex { p, dims: vec![], d: vec![] }
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < 0 {
            0
        } else {
            self.dims.get(n as usize).copied().unwrap_or(0)
        }
    }

    /// `d_n` with zero padding outside the stored range.
    pub fn diff(&self, n: i64) -> Mat {
        if n >= 1 && (n as usize) < self.d.len() {
            self.d[n as usize].clone()
        } else {
            Mat::zeros(self.p, self.dim(n - 1), self.dim(n))
        }
    }

    pub fn top(&self) -> i64 {
        self.dims.len() as i64 - 1
    }

    pub fn cycles(&self, n: i64) -> Mat {
        let d = self.diff(n);
        if d.rows == 0 {
            return subspace::full(self.p, self.dim(n));
        }
        d.kernel()
    }

    pub fn boundaries(&self, n: i64) -> Mat {
        subspace::basis(&self.diff(n + 1))
    }

    /// `H_n` as cycles modulo boundaries.
    pub fn homology(&self, n: i64) -> Quotient {
        Quotient::new(&self.cycles(n), &self.boundaries(n))
    }

    pub fn betti(&self) -> Vec<usize> {
        (0..self.dims.len() as i64).map(|n| self.homology(n).dim()).collect()
    }

    /// Subcomplex or quotient complex on a set of basis vectors per degree
    /// (rows and columns of the differential restricted to `keep`).
    pub fn restrict(&self, keep: &[Vec<usize>]) -> ChainComplex {
        let dims: Vec<usize> = keep.iter().map(|k| k.len()).collect();
        let d = (0..dims.len())
            .map(|n| if n == 0 { Mat::zeros(self.p, 0, dims[0]) } else { self.diff(n as i64).select_rows(&keep[n - 1]).select_cols(&keep[n]) })
            .collect();
        ChainComplex { p: self.p, dims, d }
    }
}

/// Integer chain complex, homology by Smith normal form.
#[derive(Clone, Debug)]
pub struct IntChainComplex {
    pub dims: Vec<usize>,
    pub d: Vec<IMat>,
}

impl IntChainComplex {
    pub fn homology(&self) -> Result<Vec<HomologyGroup>, Error> {
        for n in 1..self.d.len() {
            if n >= 2 && self.d[n - 1].mul(&self.d[n]).data.iter().any(|&x| x != 0) {
                return Err(Error::Invalid(format!("d o d != 0 at degree {n}")));
            }
        }
        let facts: Vec<Vec<i64>> = (0..=self.dims.len())
            .map(|n| if n == 0 || n >= self.d.len() { Ok(vec![]) } else { invariant_factors(&self.d[n]) })
            .collect::<Result<_, _>>()?;
        Ok((0..self.dims.len())
            .map(|n| HomologyGroup {
                betti: self.dims[n] - facts[n].len() - facts[n + 1].len(),
                torsion: facts[n + 1].iter().copied().filter(|&x| x > 1).collect(),
            })
            .collect())
    }
}

pub fn is_chain_map(src: &ChainComplex, tgt: &ChainComplex, f: &[Mat]) -> bool {
    (0..src.dims.len()).all(|n| {
        let fnm = &f[n];
        if fnm.rows != tgt.dim(n as i64) || fnm.cols != src.dims[n] {
            return false;
        }
        n == 0 || tgt.diff(n as i64).mul(fnm) == f[n - 1].mul(&src.diff(n as i64))
    })
}

/// Matrix of the map on subquotients induced by `f`.
pub fn induced_map(f: &Mat, src: &Quotient, tgt: &Quotient) -> Result<Mat, Error> {
    let mut out = Mat::zeros(f.p, tgt.dim(), src.dim());
    for j in 0..src.dim() {
        let y = f.mul_vec(&src.rep(j));
        let c = tgt.coords(&y).ok_or_else(|| Error::NotExact("induced map leaves the target subquotient".into()))?;
        for (i, v) in c.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// `0 -> A -i-> B -q-> C -> 0`.
#[derive(Clone, Debug)]
pub struct Ses {
    pub a: ChainComplex,
    pub b: ChainComplex,
    pub c: ChainComplex,
    pub i: Vec<Mat>,
    pub q: Vec<Mat>,
}

impl Ses {
    pub fn len(&self) -> usize {
        self.b.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn map_at(m: &[Mat], n: i64, rows: usize, cols: usize, p: u32) -> Mat {
        if n >= 0 && (n as usize) < m.len() {
            m[n as usize].clone()
        } else {
            Mat::zeros(p, rows, cols)
        }
    }

    pub fn i_at(&self, n: i64) -> Mat {
        Ses::map_at(&self.i, n, self.b.dim(n), self.a.dim(n), self.b.p)
    }

    pub fn q_at(&self, n: i64) -> Mat {
        Ses::map_at(&self.q, n, self.c.dim(n), self.b.dim(n), self.b.p)
    }

    /// Degreewise exactness and compatibility with differentials.
    pub fn check(&self) -> Result<(), Error> {
        let top = self.a.dims.len().max(self.b.dims.len()).max(self.c.dims.len()) as i64;
        for n in 0..top {
            let (i, q) = (self.i_at(n), self.q_at(n));
            if i.rank() != self.a.dim(n) {
                return Err(Error::NotExact(format!("A -> B not injective in degree {n}")));
            }
            if q.rank() != self.c.dim(n) {
                return Err(Error::NotExact(format!("B -> C not surjective in degree {n}")));
            }
            if !q.mul(&i).is_zero() || self.a.dim(n) + self.c.dim(n) != self.b.dim(n) {
                return Err(Error::NotExact(format!("not exact at B in degree {n}")));
            }
            if n >= 1 {
                if self.b.diff(n).mul(&i) != self.i_at(n - 1).mul(&self.a.diff(n)) {
                    return Err(Error::NotExact(format!("A -> B is not a chain map at degree {n}")));
                }
                if self.c.diff(n).mul(&q) != self.q_at(n - 1).mul(&self.b.diff(n)) {
                    return Err(Error::NotExact(format!("B -> C is not a chain map at degree {n}")));
                }
            }
        }
        Ok(())
    }
}

/// `H_n(C) -> H_{n-1}(A)`: lift a cycle through `q`, apply `d`, pull back along `i`.
pub fn connecting_map(ses: &Ses, n: i64) -> Result<Mat, Error> {
    connecting_map_with(ses, n, &|_, v| v)
}

/// As `connecting_map`, with a hook that may perturb each lift by anything in `ker q`.
pub fn connecting_map_with(ses: &Ses, n: i64, perturb: &dyn Fn(usize, Vec<u32>) -> Vec<u32>) -> Result<Mat, Error> {
    let hc = ses.c.homology(n);
    let ha = ses.a.homology(n - 1);
    let p = ses.b.p;
    let mut out = Mat::zeros(p, ha.dim(), hc.dim());
    if hc.dim() == 0 || ha.dim() == 0 {
        return Ok(out);
    }
    let qs = Solver::new(&ses.q_at(n));
    let is = Solver::new(&ses.i_at(n - 1));
    let db = ses.b.diff(n);
    for j in 0..hc.dim() {
        let z = hc.rep(j);
        let lift = qs.solve(&z).ok_or_else(|| Error::NotExact(format!("cannot lift through B -> C in degree {n}")))?;
        let lift = perturb(j, lift);
        let y = db.mul_vec(&lift);
        let x = is.solve(&y).ok_or_else(|| Error::NotExact(format!("boundary of lift not in A in degree {}", n - 1)))?;
        let c = ha.coords(&x).ok_or_else(|| Error::NotExact("pulled back element is not a cycle".into()))?;
        for (i, v) in c.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Rank test of the long exact sequence `.. H(A) -> H(B) -> H(C) -> H(A) ..`.
pub fn les_exact(ses: &Ses) -> Result<bool, Error> {
    let top = ses.len() as i64 + 1;
    let mut maps: Vec<(usize, Mat)> = Vec::new(); // (dimension of the target node, map)
    for n in (0..top).rev() {
        let (ha, hb, hc) = (ses.a.homology(n), ses.b.homology(n), ses.c.homology(n));
        maps.push((hb.dim(), induced_map(&ses.i_at(n), &ha, &hb)?));
        maps.push((hc.dim(), induced_map(&ses.q_at(n), &hb, &hc)?));
        maps.push((ses.a.homology(n - 1).dim(), connecting_map(ses, n)?));
    }
    // exactness at the target of map k: rank(map k) + rank(map k+1) == dim
    for k in 0..maps.len() - 1 {
        let (dim, ref f) = maps[k];
        let g = &maps[k + 1].1;
        if !g.mul(f).is_zero() || f.rank() + g.rank() != dim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First-quadrant bicomplex with commuting squares.
#[derive(Clone, Debug, PartialEq)]
pub struct Bicomplex {
    pub p: u32,
    /// `dims[n][q]`.
    pub dims: Vec<Vec<usize>>,
    /// `dh[n][q]: X_{n,q} -> X_{n-1,q}`.
    pub dh: Vec<Vec<Mat>>,
    /// `dv[n][q]: X_{n,q} -> X_{n,q-1}`.
    pub dv: Vec<Vec<Mat>>,
}

impl Bicomplex {
    /// Zero maps of the right shapes.
    pub fn zeros(p: u32, dims: Vec<Vec<usize>>) -> Bicomplex {
        let get = |n: i64, q: i64| if n < 0 || q < 0 { 0 } else { dims.get(n as usize).and_then(|r| r.get(q as usize)).copied().unwrap_or(0) };
        let dh = (0..dims.len()).map(|n| (0..dims[n].len()).map(|q| Mat::zeros(p, get(n as i64 - 1, q as i64), dims[n][q])).collect()).collect();
        let dv = (0..dims.len()).map(|n| (0..dims[n].len()).map(|q| Mat::zeros(p, get(n as i64, q as i64 - 1), dims[n][q])).collect()).collect();
        Bicomplex { p, dims, dh, dv }
    }

    pub fn cols(&self) -> usize {
        self.dims.len()
    }

    pub fn rows(&self) -> usize {
        self.dims.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    pub fn dim(&self, n: i64, q: i64) -> usize {
        if n < 0 || q < 0 {
            return 0;
        }
        self.dims.get(n as usize).and_then(|r| r.get(q as usize)).copied().unwrap_or(0)
    }

    pub fn h(&self, n: i64, q: i64) -> Mat {
        match (n >= 0 && q >= 0).then(|| self.dh.get(n as usize).and_then(|r| r.get(q as usize))).flatten() {
            Some(m) => m.clone(),
            None => Mat::zeros(self.p, self.dim(n - 1, q), self.dim(n, q)),
        }
    }

    pub fn v(&self, n: i64, q: i64) -> Mat {
        match (n >= 0 && q >= 0).then(|| self.dv.get(n as usize).and_then(|r| r.get(q as usize))).flatten() {
            Some(m) => m.clone(),
            None => Mat::zeros(self.p, self.dim(n, q - 1), self.dim(n, q)),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        for n in 0..self.cols() as i64 {
            for q in 0..self.rows() as i64 {
                let (h, v) = (self.h(n, q), self.v(n, q));
                if h.rows != self.dim(n - 1, q) || h.cols != self.dim(n, q) || v.rows != self.dim(n, q - 1) || v.cols != self.dim(n, q) {
                    return Err(Error::Invalid(format!("map shapes wrong at ({n},{q})")));
                }
                if !self.h(n - 1, q).mul(&h).is_zero() {
                    return Err(Error::Invalid(format!("dh o dh != 0 at ({n},{q})")));
                }
                if !self.v(n, q - 1).mul(&v).is_zero() {
                    return Err(Error::Invalid(format!("dv o dv != 0 at ({n},{q})")));
                }
                if self.h(n, q - 1).mul(&v) != self.v(n - 1, q).mul(&h) {
                    return Err(Error::Invalid(format!("squares do not commute at ({n},{q})")));
                }
            }
        }
        Ok(())
    }

    /// Summands of total degree `k`, as `(n, q, offset)` with `n` ascending.
    pub fn layout(&self, k: i64) -> Vec<(i64, i64, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for n in 0..=k {
            let q = k - n;
            let d = self.dim(n, q);
            if d > 0 {
                out.push((n, q, off));
                off += d;
            }
        }
        out
    }

    pub fn max_total(&self) -> i64 {
        self.cols() as i64 + self.rows() as i64 - 2
    }

    /// Total complex with `d = dh + (-1)^n dv`.
    pub fn total(&self) -> ChainComplex {
        let top = self.max_total().max(0);
        let lay: Vec<Vec<(i64, i64, usize)>> = (0..=top).map(|k| self.layout(k)).collect();
        let size = |k: usize| lay[k].iter().map(|&(n, q, _)| self.dim(n, q)).sum::<usize>();
        let dims: Vec<usize> = (0..=top as usize).map(size).collect();
        let mut d = vec![Mat::zeros(self.p, 0, dims[0])];
        for k in 1..=top as usize {
            let mut m = Mat::zeros(self.p, dims[k - 1], dims[k]);
            let pos = |n: i64, q: i64| lay[k - 1].iter().find(|e| e.0 == n && e.1 == q).map(|e| e.2);
            for &(n, q, off) in &lay[k] {
                if let Some(r) = pos(n - 1, q) {
                    m.put(r, off, &self.h(n, q));
                }
                if let Some(r) = pos(n, q - 1) {
                    let v = self.v(n, q);
                    m.put(r, off, &if n % 2 == 0 { v } else { v.neg() });
                }
            }
            d.push(m);
        }
        ChainComplex { p: self.p, dims, d }
    }

    /// Total complex filtered by columns (`n`) or rows (`q`).
    pub fn filtered(&self, by: Filtration) -> FilteredComplex {
        let cc = self.total();
        let filt = (0..cc.dims.len() as i64)
            .map(|k| self.layout(k).into_iter().flat_map(|(n, q, _)| std::iter::repeat_n(if by == Filtration::Column { n } else { q }, self.dim(n, q))).collect())
            .collect();
        FilteredComplex { cc, filt }
    }

    pub fn transpose(&self) -> Bicomplex {
        let (c, r) = (self.cols(), self.rows());
        let mut t = Bicomplex::zeros(self.p, (0..r).map(|q| (0..c).map(|n| self.dim(n as i64, q as i64)).collect()).collect());
        for q in 0..r {
            for n in 0..c {
                t.dh[q][n] = self.v(n as i64, q as i64);
                t.dv[q][n] = self.h(n as i64, q as i64);
            }
        }
        t
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filtration {
    Column,
    Row,
}

/// Complex with an increasing filtration given by a degree on each basis vector.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub cc: ChainComplex,
    pub filt: Vec<Vec<i64>>,
}

impl FilteredComplex {
    fn filt_at(&self, k: i64) -> &[i64] {
        if k < 0 {
            &[]
        } else {
            self.filt.get(k as usize).map_or(&[], |v| v.as_slice())
        }
    }

    /// Basis vectors of degree `k` with filtration `<= s`.
    pub fn f_index(&self, k: i64, s: i64) -> Vec<usize> {
        self.filt_at(k).iter().enumerate().filter(|(_, &f)| f <= s).map(|(i, _)| i).collect()
    }

    pub fn f_space(&self, k: i64, s: i64) -> Mat {
        let n = self.cc.dim(k);
        Mat::identity(self.cc.p, n).select_cols(&self.f_index(k, s))
    }

    pub fn range(&self) -> (i64, i64) {
        let all = self.filt.iter().flatten();
        (all.clone().copied().min().unwrap_or(0), all.copied().max().unwrap_or(0))
    }

    /// `Z^r_s` in degree `k`: elements of `F_s` with boundary in `F_{s-r}`.
    pub fn z(&self, k: i64, s: i64, r: i64) -> Mat {
        let p = self.cc.p;
        let idx = self.f_index(k, s);
        let dk = self.cc.diff(k).select_cols(&idx);
        let bad: Vec<usize> = self.filt_at(k - 1).iter().enumerate().filter(|(_, &f)| f > s - r).map(|(i, _)| i).collect();
        let m = dk.select_rows(&bad);
        let coeffs = if m.rows == 0 { Mat::identity(p, idx.len()) } else { m.kernel() };
        Mat::identity(p, self.cc.dim(k)).select_cols(&idx).mul(&coeffs)
    }

    /// Subcomplex `F_s`.
    pub fn sub(&self, s: i64) -> ChainComplex {
        self.cc.restrict(&(0..self.cc.dims.len() as i64).map(|k| self.f_index(k, s)).collect::<Vec<_>>())
    }

    /// Quotient `F_s / F_{s-1}`.
    pub fn graded(&self, s: i64) -> ChainComplex {
        let keep: Vec<Vec<usize>> = (0..self.cc.dims.len() as i64).map(|k| self.filt_at(k).iter().enumerate().filter(|(_, &f)| f == s).map(|(i, _)| i).collect()).collect();
        self.cc.restrict(&keep)
    }
}

/// One page: dimensions and differentials keyed by source bidegree.
#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    pub bidegree: (i64, i64),
    pub dims: BTreeMap<(i64, i64), usize>,
    pub diffs: BTreeMap<(i64, i64), Mat>,
}

impl Page {
    pub fn dim(&self, x: (i64, i64)) -> usize {
        self.dims.get(&x).copied().unwrap_or(0)
    }

    pub fn target(&self, x: (i64, i64)) -> (i64, i64) {
        (x.0 + self.bidegree.0, x.1 + self.bidegree.1)
    }

    pub fn rank(&self, x: (i64, i64)) -> usize {
        self.diffs.get(&x).map_or(0, |m| m.rank())
    }

    /// Nonzero entries only.
    pub fn support(&self) -> BTreeMap<(i64, i64), usize> {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(&k, &d)| (k, d)).collect()
    }
}

/// `d o d = 0` on every page and `dim E^{r+1} = dim ker - dim im`.
pub fn check_pages(pages: &[Page]) -> Result<(), String> {
    for (i, pg) in pages.iter().enumerate() {
        for (&x, m) in &pg.diffs {
            let y = pg.target(x);
            if let Some(m2) = pg.diffs.get(&y) {
                if m2.cols == m.rows && !m2.mul(m).is_zero() {
                    return Err(format!("d o d != 0 on page {} at {:?}", pg.r, x));
                }
            }
            if m.cols != pg.dim(x) || m.rows != pg.dim(y) {
                return Err(format!("page {} differential at {:?} has wrong shape", pg.r, x));
            }
        }
        if let Some(next) = pages.get(i + 1) {
            let keys: std::collections::BTreeSet<(i64, i64)> = pg.dims.keys().chain(next.dims.keys()).copied().collect();
            for x in keys {
                let src = (x.0 - pg.bidegree.0, x.1 - pg.bidegree.1);
                let want = pg.dim(x) - pg.rank(x) - pg.rank(src);
                if next.dim(x) != want {
                    return Err(format!("E^{} at {:?} is {} but homology of E^{} gives {}", next.r, x, next.dim(x), pg.r, want));
                }
            }
        }
    }
    Ok(())
}

/// Compare dimensions and differential ranks, ignoring zero entries.
pub fn pages_agree(a: &[Page], b: &[Page]) -> Result<(), String> {
    for (pa, pb) in a.iter().zip(b) {
        if pa.support() != pb.support() {
            return Err(format!("E^{} dimensions differ: {:?} vs {:?}", pa.r, pa.support(), pb.support()));
        }
        if pa.bidegree != pb.bidegree {
            return Err(format!("page {} bidegrees differ", pa.r));
        }
        for x in pa.support().keys() {
            if pa.rank(*x) != pb.rank(*x) {
                return Err(format!("d^{} ranks differ at {:?}", pa.r, x));
            }
        }
    }
    Ok(())
}

/// Pages `E^1 .. E^{r_max}` by the staircase formula
/// `E^r_s = Z^r_s / (Z^{r-1}_{s-1} + d Z^{r-1}_{s+r-1})`, indexed `(s, k - s)`.
pub fn staircase_pages(fc: &FilteredComplex, r_max: usize) -> Vec<Page> {
    let (lo, hi) = fc.range();
    let top = fc.cc.top();
    let mut pages = Vec::new();
    for r in 1..=r_max as i64 {
        let mut quots: BTreeMap<(i64, i64), Quotient> = BTreeMap::new();
        for k in 0..=top {
            for s in lo..=hi {
                let zr = fc.z(k, s, r);
                let below = fc.z(k, s - 1, r - 1);
                let dz = fc.cc.diff(k + 1).mul(&fc.z(k + 1, s + r - 1, r - 1));
                let bottom = subspace::sum(&below, &dz);
                quots.insert((s, k - s), Quotient::new(&zr, &bottom));
            }
        }
        let mut dims = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (&(s, t), q) in &quots {
            dims.insert((s, t), q.dim());
            let tgt = (s - r, t + r - 1);
            let k = s + t;
            let rows = quots.get(&tgt).map_or(0, |x| x.dim());
            let mut m = Mat::zeros(fc.cc.p, rows, q.dim());
            if let Some(tq) = quots.get(&tgt) {
                let d = fc.cc.diff(k);
                for j in 0..q.dim() {
                    let y = d.mul_vec(&q.rep(j));
                    let c = tq.coords(&y).expect("staircase boundary lands in Z^r");
                    for (i, v) in c.into_iter().enumerate() {
                        m.set(i, j, v);
                    }
                }
            }
            diffs.insert((s, t), m);
        }
        pages.push(Page { r: r as usize, bidegree: (-r, r - 1), dims, diffs });
    }
    pages
}

/// Dimensions of `gr_s H_k` for the induced filtration on homology, keyed `(s, k - s)`.
pub fn graded_homology(fc: &FilteredComplex) -> BTreeMap<(i64, i64), usize> {
    let (lo, hi) = fc.range();
    let mut out = BTreeMap::new();
    for k in 0..=fc.cc.top() {
        let z = fc.cc.cycles(k);
        let b = fc.cc.boundaries(k);
        let mut prev = 0;
        for s in lo..=hi {
            let zs = subspace::intersect(&z, &fc.f_space(k, s));
            let now = subspace::sum(&zs, &b).cols - b.cols;
            out.insert((s, k - s), now - prev);
            prev = now;
        }
    }
    out
}

/// The last page of a first-quadrant filtration agrees with `gr H(total)`.
pub fn abutment_check(fc: &FilteredComplex) -> Result<(), String> {
    let (lo, hi) = fc.range();
    let r = (hi - lo + 2).max(2) as usize;
    let last = staircase_pages(fc, r).pop().unwrap();
    let gr: BTreeMap<(i64, i64), usize> = graded_homology(fc).into_iter().filter(|(_, d)| *d > 0).collect();
    if last.support() != gr {
        return Err(format!("E^inf {:?} differs from gr H {:?}", last.support(), gr));
    }
    Ok(())
}

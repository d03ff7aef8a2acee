//! Exact couples with arbitrary bidegrees, their pages and derived couples.
//!
//! Nodes are keyed by bidegree.  A missing `E` node is zero.  A missing `D`
//! node is zero, except that an `alpha`-chain running off the table is taken
//! to continue by isomorphisms (the stable range of a filtration).

use crate::fp::{subspace, Mat, Quotient, Solver};
use crate::homalg::{connecting_map, induced_map, FilteredComplex, Page, Ses};
use crate::Error;
use std::collections::BTreeMap;

pub type Key = (i64, i64);

fn add(a: Key, b: Key) -> Key {
    (a.0 + b.0, a.1 + b.1)
}

fn sub(a: Key, b: Key) -> Key {
    (a.0 - b.0, a.1 - b.1)
}

fn scale(k: i64, a: Key) -> Key {
    (k * a.0, k * a.1)
}

#[derive(Clone, Debug)]
pub struct ExactCouple {
    pub p: u32,
    pub deg_alpha: Key,
    pub deg_beta: Key,
    pub deg_gamma: Key,
    pub d_dims: BTreeMap<Key, usize>,
    pub e_dims: BTreeMap<Key, usize>,
    /// Keyed by source node.
    pub alpha: BTreeMap<Key, Mat>,
    pub beta: BTreeMap<Key, Mat>,
    pub gamma: BTreeMap<Key, Mat>,
}

impl ExactCouple {
    pub fn d_dim(&self, y: Key) -> usize {
        self.d_dims.get(&y).copied().unwrap_or(0)
    }

    pub fn e_dim(&self, x: Key) -> usize {
        self.e_dims.get(&x).copied().unwrap_or(0)
    }

    pub fn alpha_at(&self, y: Key) -> Mat {
        self.alpha.get(&y).cloned().unwrap_or_else(|| Mat::zeros(self.p, self.d_dim(add(y, self.deg_alpha)), self.d_dim(y)))
    }

    pub fn beta_at(&self, y: Key) -> Mat {
        self.beta.get(&y).cloned().unwrap_or_else(|| Mat::zeros(self.p, self.e_dim(add(y, self.deg_beta)), self.d_dim(y)))
    }

    pub fn gamma_at(&self, x: Key) -> Mat {
        self.gamma.get(&x).cloned().unwrap_or_else(|| Mat::zeros(self.p, self.d_dim(add(x, self.deg_gamma)), self.e_dim(x)))
    }

    /// `alpha^k` out of `y`, stopping where the chain leaves the table.
    fn alpha_forward(&self, y: Key, k: i64) -> Mat {
        let mut m = Mat::identity(self.p, self.d_dim(y));
        let mut cur = y;
        for _ in 0..k {
            let next = add(cur, self.deg_alpha);
            if !self.d_dims.contains_key(&next) {
                break;
            }
            m = self.alpha_at(cur).mul(&m);
            cur = next;
        }
        m
    }

    /// `alpha^k` into `y` from `y - k deg_alpha`; `None` when that source is zero.
    fn alpha_into(&self, y: Key, k: i64) -> Option<(Key, Mat)> {
        let src = sub(y, scale(k, self.deg_alpha));
        if self.d_dim(src) == 0 {
            return None;
        }
        let mut m = Mat::identity(self.p, self.d_dim(src));
        let mut cur = src;
        for _ in 0..k {
            m = self.alpha_at(cur).mul(&m);
            cur = add(cur, self.deg_alpha);
        }
        Some((src, m))
    }

    pub fn page_bidegree(&self, r: usize) -> Key {
        add(add(self.deg_gamma, self.deg_beta), scale(-(r as i64 - 1), self.deg_alpha))
    }
}

#[derive(Clone, Debug, Default)]
pub struct CoupleReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Exactness at every node, by vanishing composites and rank counts.
pub fn couple_check(c: &ExactCouple) -> CoupleReport {
    let mut failures = Vec::new();
    let shapes = |m: &Mat, rows: usize, cols: usize| m.rows == rows && m.cols == cols;
    for (&y, &dim) in &c.d_dims {
        // D --beta--> E, fed by alpha
        let a_in = c.alpha_at(sub(y, c.deg_alpha));
        let b_out = c.beta_at(y);
        let g_in = c.gamma_at(sub(y, c.deg_gamma));
        let a_out = c.alpha_at(y);
        if !shapes(&b_out, c.e_dim(add(y, c.deg_beta)), dim) || !shapes(&a_out, c.d_dim(add(y, c.deg_alpha)), dim) {
            failures.push(format!("D{y:?}: map shapes"));
            continue;
        }
        let a_src_known = c.d_dims.contains_key(&sub(y, c.deg_alpha));
        if a_src_known && (!b_out.mul(&a_in).is_zero() || a_in.rank() + b_out.rank() != dim) {
            failures.push(format!("D{y:?}: im alpha != ker beta (defect {})", dim as i64 - (a_in.rank() + b_out.rank()) as i64));
        }
        let a_tgt_known = c.d_dims.contains_key(&add(y, c.deg_alpha));
        if a_tgt_known && (!a_out.mul(&g_in).is_zero() || g_in.rank() + a_out.rank() != dim) {
            failures.push(format!("D{y:?}: im gamma != ker alpha (defect {})", dim as i64 - (g_in.rank() + a_out.rank()) as i64));
        }
    }
    for (&x, &dim) in &c.e_dims {
        let b_in = c.beta_at(sub(x, c.deg_beta));
        let g_out = c.gamma_at(x);
        if !shapes(&g_out, c.d_dim(add(x, c.deg_gamma)), dim) {
            failures.push(format!("E{x:?}: map shapes"));
            continue;
        }
        if !g_out.mul(&b_in).is_zero() || b_in.rank() + g_out.rank() != dim {
            failures.push(format!("E{x:?}: im beta != ker gamma (defect {})", dim as i64 - (b_in.rank() + g_out.rank()) as i64));
        }
    }
    CoupleReport { ok: failures.is_empty(), failures }
}

/// Page `r` as a subquotient `Z^r / B^r` of `E`, with `Z^r = gamma^{-1}(im alpha^{r-1})`
/// and `B^r = beta(ker alpha^{r-1})`.
pub fn page_quotients(c: &ExactCouple, r: usize) -> BTreeMap<Key, Quotient> {
    let k = r as i64 - 1;
    let mut out = BTreeMap::new();
    for (&x, &dim) in &c.e_dims {
        let g = c.gamma_at(x);
        let y = add(x, c.deg_gamma);
        let im = match c.alpha_into(y, k) {
            Some((_, m)) => subspace::basis(&m),
            None => subspace::zero(c.p, c.d_dim(y)),
        };
        let z = if dim == 0 {
            subspace::zero(c.p, 0)
        } else if g.rows == 0 {
            subspace::full(c.p, dim)
        } else {
            subspace::preimage(&g, &im)
        };
        let ys = sub(x, c.deg_beta);
        let ker = {
            let a = c.alpha_forward(ys, k);
            if a.rows == 0 {
                subspace::full(c.p, c.d_dim(ys))
            } else {
                a.kernel()
            }
        };
        let b = subspace::image_of(&c.beta_at(ys), &ker);
        let z = if z.rows != dim {
            Mat::zeros(c.p, dim, 0)
        } else if z.cols == dim {
            // keep E coordinates on page 1
            subspace::full(c.p, dim)
        } else {
            z
        };
        let b = if b.rows != dim { Mat::zeros(c.p, dim, 0) } else { b };
        out.insert(x, Quotient::new(&z, &b));
    }
    out
}

/// Pages `E^1 .. E^{r_max}` with `d^r z = beta(w)` for `alpha^{r-1} w = gamma z`.
pub fn couple_pages(c: &ExactCouple, r_max: usize) -> Result<Vec<Page>, Error> {
    let mut pages = Vec::new();
    for r in 1..=r_max {
        let qs = page_quotients(c, r);
        let bideg = c.page_bidegree(r);
        let mut dims = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for (&x, q) in &qs {
            dims.insert(x, q.dim());
            let tgt = add(x, bideg);
            let rows = qs.get(&tgt).map_or(0, |t| t.dim());
            let mut m = Mat::zeros(c.p, rows, q.dim());
            let y = add(x, c.deg_gamma);
            if let (Some(tq), Some((src, a))) = (qs.get(&tgt), c.alpha_into(y, r as i64 - 1)) {
                let solver = Solver::new(&a);
                let g = c.gamma_at(x);
                let b = c.beta_at(src);
                for j in 0..q.dim() {
                    let gz = g.mul_vec(&q.rep(j));
                    let w = solver.solve(&gz).ok_or_else(|| Error::NotExact(format!("gamma of a page-{r} cycle at {x:?} is not in im alpha^{}", r - 1)))?;
                    let coords = tq.coords(&b.mul_vec(&w)).ok_or_else(|| Error::NotExact(format!("d^{r} leaves Z^{r} at {tgt:?}")))?;
                    for (i, v) in coords.into_iter().enumerate() {
                        m.set(i, j, v);
                    }
                }
            }
            diffs.insert(x, m);
        }
        pages.push(Page { r, bidegree: bideg, dims, diffs });
    }
    Ok(pages)
}

/// The derived couple `D' = im alpha`, `E' = H(E, beta gamma)`.
pub fn derived_couple(c: &ExactCouple) -> Result<ExactCouple, Error> {
    let p = c.p;
    // D'_y = image of alpha into y, as columns in D_y
    let mut dprime: BTreeMap<Key, Mat> = BTreeMap::new();
    for &y in c.d_dims.keys() {
        let src = sub(y, c.deg_alpha);
        let m = if c.d_dims.contains_key(&src) { subspace::basis(&c.alpha_at(src)) } else { subspace::full(p, c.d_dim(y)) };
        dprime.insert(y, m);
    }
    // E' = ker d / im d for d = beta gamma
    let d_of = |x: Key| c.beta_at(add(x, c.deg_gamma)).mul(&c.gamma_at(x));
    let dd = add(c.deg_gamma, c.deg_beta);
    let mut eprime: BTreeMap<Key, Quotient> = BTreeMap::new();
    for (&x, &dim) in &c.e_dims {
        let d = d_of(x);
        let ker = if d.rows == 0 { subspace::full(p, dim) } else { d.kernel() };
        let im = subspace::basis(&d_of(sub(x, dd)));
        let im = if im.rows != dim { Mat::zeros(p, dim, 0) } else { im };
        eprime.insert(x, Quotient::new(&ker, &im));
    }
    let coords_in = |basis: &Mat, v: &[u32]| -> Option<Vec<u32>> {
        if basis.cols == 0 {
            return v.iter().all(|&x| x == 0).then(Vec::new);
        }
        Solver::new(basis).solve(v)
    };
    let mut alpha = BTreeMap::new();
    let mut beta = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    let deg_beta = sub(c.deg_beta, c.deg_alpha);
    for (&y, basis) in &dprime {
        let ty = add(y, c.deg_alpha);
        if let Some(tb) = dprime.get(&ty) {
            let a = c.alpha_at(y);
            let mut m = Mat::zeros(p, tb.cols, basis.cols);
            for j in 0..basis.cols {
                let v = coords_in(tb, &a.mul_vec(&basis.col(j))).ok_or_else(|| Error::NotExact("alpha leaves im alpha".into()))?;
                for (i, x) in v.into_iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            alpha.insert(y, m);
        }
        let src = sub(y, c.deg_alpha);
        let tx = add(src, c.deg_beta);
        if let (Some(tq), true) = (eprime.get(&tx), c.d_dims.contains_key(&src)) {
            let a = c.alpha_at(src);
            let sol = Solver::new(&a);
            let b = c.beta_at(src);
            let mut m = Mat::zeros(p, tq.dim(), basis.cols);
            for j in 0..basis.cols {
                let pre = sol.solve(&basis.col(j)).ok_or_else(|| Error::NotExact("element of im alpha without preimage".into()))?;
                let v = tq.coords(&b.mul_vec(&pre)).ok_or_else(|| Error::NotExact("beta' leaves ker d".into()))?;
                for (i, x) in v.into_iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            beta.insert(y, m);
        }
    }
    for (&x, q) in &eprime {
        let y = add(x, c.deg_gamma);
        let Some(tb) = dprime.get(&y) else { continue };
        let g = c.gamma_at(x);
        let mut m = Mat::zeros(p, tb.cols, q.dim());
        for j in 0..q.dim() {
            let v = coords_in(tb, &g.mul_vec(&q.rep(j))).ok_or_else(|| Error::NotExact("gamma of a d-cycle is not in im alpha".into()))?;
            for (i, x) in v.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        gamma.insert(x, m);
    }
    Ok(ExactCouple {
        p,
        deg_alpha: c.deg_alpha,
        deg_beta,
        deg_gamma: c.deg_gamma,
        d_dims: dprime.iter().map(|(&k, m)| (k, m.cols)).collect(),
        e_dims: eprime.iter().map(|(&k, q)| (k, q.dim())).collect(),
        alpha,
        beta,
        gamma,
    })
}

/// Couple of the long exact sequences of `0 -> F_{s-1} -> F_s -> F_s/F_{s-1} -> 0`:
/// `D_{s,t} = H_{s+t}(F_s)`, `E_{s,t} = H_{s+t}(gr_s)`.
pub fn filtration_couple(fc: &FilteredComplex) -> Result<ExactCouple, Error> {
    let p = fc.cc.p;
    let (lo, hi) = fc.range();
    let top = fc.cc.top();
    let nd = fc.cc.dims.len() as i64;
    let mut c = ExactCouple {
        p,
        deg_alpha: (1, -1),
        deg_beta: (0, 0),
        deg_gamma: (-1, 0),
        d_dims: BTreeMap::new(),
        e_dims: BTreeMap::new(),
        alpha: BTreeMap::new(),
        beta: BTreeMap::new(),
        gamma: BTreeMap::new(),
    };
    let idx = |s: i64| -> Vec<Vec<usize>> { (0..nd).map(|k| fc.f_index(k, s)).collect() };
    // inclusion matrices F_a -> F_b (a <= b) in degree k
    let incl = |a: &[usize], b: &[usize]| -> Mat {
        let mut m = Mat::zeros(p, b.len(), a.len());
        for (j, x) in a.iter().enumerate() {
            m.set(b.binary_search(x).unwrap(), j, 1);
        }
        m
    };
    let sub_h: BTreeMap<i64, (ChainHom, Vec<Vec<usize>>)> = ((lo - 1)..=hi).map(|s| (s, (ChainHom::of(&fc.sub(s)), idx(s)))).collect();
    for s in (lo - 1)..=hi {
        let (h, _) = &sub_h[&s];
        for k in 0..=top + 1 {
            c.d_dims.insert((s, k - s), h.dim(k));
        }
    }
    for s in lo..=hi {
        let (ha, ia) = &sub_h[&(s - 1)];
        let (hb, ib) = &sub_h[&s];
        let gr = fc.graded(s);
        let gidx: Vec<Vec<usize>> = (0..nd).map(|k| (0..fc.cc.dim(k)).filter(|&i| fc.filt[k as usize][i] == s).collect()).collect();
        let ses = Ses {
            a: fc.sub(s - 1),
            b: fc.sub(s),
            c: gr.clone(),
            i: (0..nd as usize).map(|k| incl(&ia[k], &ib[k])).collect(),
            q: (0..nd as usize)
                .map(|k| {
                    let mut m = Mat::zeros(p, gidx[k].len(), ib[k].len());
                    for (i, x) in gidx[k].iter().enumerate() {
                        m.set(i, ib[k].binary_search(x).unwrap(), 1);
                    }
                    m
                })
                .collect(),
        };
        ses.check()?;
        let hg = ChainHom::of(&gr);
        for k in 0..=top {
            let key_d = (s - 1, k - s + 1);
            c.alpha.insert(key_d, induced_map(&ses.i_at(k), &ha.h[k as usize], &hb.h[k as usize])?);
            c.e_dims.insert((s, k - s), hg.dim(k));
            c.beta.insert((s, k - s), induced_map(&ses.q_at(k), &hb.h[k as usize], &hg.h[k as usize])?);
            c.gamma.insert((s, k - s), connecting_map(&ses, k)?);
        }
    }
    Ok(c)
}

/// Homology bases of a complex in every degree (one spare degree on top).
struct ChainHom {
    h: Vec<Quotient>,
}

impl ChainHom {
    fn of(cc: &crate::homalg::ChainComplex) -> ChainHom {
        ChainHom { h: (0..=cc.dims.len() as i64).map(|k| cc.homology(k)).collect() }
    }

    fn dim(&self, k: i64) -> usize {
        self.h.get(k as usize).map_or(0, |q| q.dim())
    }
}

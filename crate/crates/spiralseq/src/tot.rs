//! Homotopy spectral sequence of a cosimplicial simplicial vector space:
//! normalized cochains, the Tot tower and its exact couple.
//!
//! `Tot^n` in degree `p` is `sum over k <= n of (N^k)_{p+k}` with
//! `D = (-1)^k d_v + delta`.  Internally `Tot^n` is shifted up by `n`.
//! Couple: `D_{n,p} = H_p(Tot^n)`, `E_{n,p} = H_{p+n}(N^n)`,
//! `alpha: D_{n,p} -> D_{n-1,p}`, `beta: D_{n-1,p} -> E_{n,p-1}`, `gamma: E -> D`.

use crate::couple::{couple_pages, page_quotients, ExactCouple, Key};
use crate::fp::Mat;
use crate::homalg::{connecting_map, induced_map, staircase_pages, Bicomplex, ChainComplex, Filtration, Page, Ses};
use crate::simplicial::{check_identities, gamma, gamma_map, meet_of_kernels, restrict_map, SimplicialVS};
use crate::spiral::lifting_differential;
use crate::Error;
use serde::Serialize;
use std::collections::BTreeMap;

/// Cochain direction `n` (`delta` raises it), chain direction `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainBicomplex {
    pub p: u32,
    /// `dims[n][q]`.
    pub dims: Vec<Vec<usize>>,
    /// `delta[n][q]: (n,q) -> (n+1,q)`.
    pub delta: Vec<Vec<Mat>>,
    /// `dv[n][q]: (n,q) -> (n,q-1)`.
    pub dv: Vec<Vec<Mat>>,
}

impl CochainBicomplex {
    pub fn cols(&self) -> usize {
        self.dims.len()
    }

    pub fn rows(&self) -> usize {
        self.dims.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    pub fn dim(&self, n: i64, q: i64) -> usize {
        if n < 0 || q < 0 {
            return 0;
        }
        self.dims.get(n as usize).and_then(|c| c.get(q as usize)).copied().unwrap_or(0)
    }

    pub fn delta_at(&self, n: i64, q: i64) -> Mat {
        let got = (n >= 0 && q >= 0).then(|| self.delta.get(n as usize).and_then(|c| c.get(q as usize))).flatten();
        match got {
            Some(m) if m.rows == self.dim(n + 1, q) => m.clone(),
            _ => Mat::zeros(self.p, self.dim(n + 1, q), self.dim(n, q)),
        }
    }

    pub fn v(&self, n: i64, q: i64) -> Mat {
        let got = (n >= 0 && q >= 1).then(|| self.dv.get(n as usize).and_then(|c| c.get(q as usize))).flatten();
        match got {
            Some(m) => m.clone(),
            None => Mat::zeros(self.p, self.dim(n, q - 1), self.dim(n, q)),
        }
    }

    pub fn zeros(p: u32, dims: Vec<Vec<usize>>) -> CochainBicomplex {
        let delta = (0..dims.len()).map(|n| (0..dims[n].len()).map(|q| Mat::zeros(p, dims.get(n + 1).and_then(|c| c.get(q)).copied().unwrap_or(0), dims[n][q])).collect()).collect();
        let dv = (0..dims.len()).map(|n| (0..dims[n].len()).map(|q| Mat::zeros(p, if q == 0 { 0 } else { dims[n][q - 1] }, dims[n][q])).collect()).collect();
        CochainBicomplex { p, dims, delta, dv }
    }

    pub fn validate(&self) -> Result<(), Error> {
        for n in 0..self.cols() as i64 {
            for q in 0..self.rows() as i64 {
                let (d, v) = (self.delta_at(n, q), self.v(n, q));
                if d.cols != self.dim(n, q) || v.cols != self.dim(n, q) {
                    return Err(Error::Invalid(format!("shape at ({n},{q})")));
                }
                if !self.delta_at(n + 1, q).mul(&d).is_zero() {
                    return Err(Error::Invalid(format!("delta o delta != 0 at ({n},{q})")));
                }
                if !self.v(n, q - 1).mul(&v).is_zero() {
                    return Err(Error::Invalid(format!("dv o dv != 0 at ({n},{q})")));
                }
                if self.delta_at(n, q - 1).mul(&v) != self.v(n + 1, q).mul(&d) {
                    return Err(Error::Invalid(format!("squares do not commute at ({n},{q})")));
                }
            }
        }
        Ok(())
    }

    /// Reads a chain bicomplex backwards in its columns: `(N - b, q)`.
    pub fn from_reversed(b: &Bicomplex) -> CochainBicomplex {
        let nn = b.cols() - 1;
        let dims: Vec<Vec<usize>> = (0..=nn).map(|k| (0..b.rows()).map(|q| b.dim((nn - k) as i64, q as i64)).collect()).collect();
        let mut a = CochainBicomplex::zeros(b.p, dims);
        for k in 0..=nn {
            for q in 0..b.rows() {
                if k < nn {
                    a.delta[k][q] = b.h((nn - k) as i64, q as i64);
                }
                a.dv[k][q] = b.v((nn - k) as i64, q as i64);
            }
        }
        a
    }

    /// Chain bicomplex with column `b = N - n`; its column filtration is the Tot tower.
    pub fn reversed(&self) -> Bicomplex {
        let nn = self.cols() - 1;
        let dims: Vec<Vec<usize>> = (0..=nn).map(|b| (0..self.rows()).map(|q| self.dim((nn - b) as i64, q as i64)).collect()).collect();
        let mut r = Bicomplex::zeros(self.p, dims);
        for b in 0..=nn {
            for q in 0..self.rows() {
                let (n, qi) = ((nn - b) as i64, q as i64);
                if b >= 1 {
                    r.dh[b][q] = self.delta_at(n, qi);
                }
                if q >= 1 {
                    r.dv[b][q] = self.v(n, qi);
                }
            }
        }
        r
    }

    /// Vertical complex `N^n`.
    pub fn column(&self, n: usize) -> ChainComplex {
        let p = self.p;
        let dims: Vec<usize> = (0..self.rows()).map(|q| self.dim(n as i64, q as i64)).collect();
        let d = (0..self.rows()).map(|q| if q == 0 { Mat::zeros(p, 0, dims[0]) } else { self.v(n as i64, q as i64) }).collect();
        ChainComplex { p, dims, d }
    }
}

/// Cosimplicial object in chain complexes: `cofaces[n][i][q]: W^{n-1}_q -> W^n_q`,
/// `codegens[n][i][q]: W^{n+1}_q -> W^n_q`.
#[derive(Clone, Debug)]
pub struct CosimplicialChains {
    pub p: u32,
    pub levels: Vec<ChainComplex>,
    pub cofaces: Vec<Vec<Vec<Mat>>>,
    pub codegens: Vec<Vec<Vec<Mat>>>,
}

impl CosimplicialChains {
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn qlen(&self) -> usize {
        self.levels.iter().map(|c| c.dims.len()).max().unwrap_or(0)
    }

    pub fn dim(&self, n: usize, q: i64) -> usize {
        self.levels.get(n).map_or(0, |c| c.dim(q))
    }

    pub fn coface(&self, n: usize, i: usize, q: i64) -> Mat {
        match (q >= 0).then(|| self.cofaces[n][i].get(q as usize)).flatten() {
            Some(m) => m.clone(),
            None => Mat::zeros(self.p, self.dim(n, q), self.dim(n - 1, q)),
        }
    }

    pub fn codegen(&self, n: usize, i: usize, q: i64) -> Mat {
        match (q >= 0).then(|| self.codegens[n][i].get(q as usize)).flatten() {
            Some(m) => m.clone(),
            None => Mat::zeros(self.p, self.dim(n, q), self.dim(n + 1, q)),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let top = self.top();
        for q in 0..self.qlen() as i64 {
            // cosimplicial identities are the transposed simplicial ones
            check_identities(top, &|n, i| self.coface(n, i, q).transpose(), &|n, j| self.codegen(n, j, q).transpose(), &|n| Mat::identity(self.p, self.dim(n, q)))
                .map_err(|e| Error::Invalid(format!("cosimplicial identity: {e} in internal degree {q}")))?;
        }
        for n in 1..=top {
            for i in 0..=n {
                for q in 1..self.qlen() as i64 {
                    if self.levels[n].diff(q).mul(&self.coface(n, i, q)) != self.coface(n, i, q - 1).mul(&self.levels[n - 1].diff(q)) {
                        return Err(Error::Invalid(format!("coface d{i} into level {n} is not a chain map")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis of `N^n_q = meet of ker s^i, i < n`.
    pub fn normalized_basis(&self, n: usize, q: i64) -> Mat {
        if n == 0 {
            return Mat::identity(self.p, self.dim(0, q));
        }
        meet_of_kernels(self.p, self.dim(n, q), (0..n).map(|i| self.codegen(n - 1, i, q)))
    }

    /// `sum (-1)^i d^i: W^{n}_q -> W^{n+1}_q`.
    pub fn alternating(&self, n: usize, q: i64) -> Mat {
        let mut m = Mat::zeros(self.p, self.dim(n + 1, q), self.dim(n, q));
        for i in 0..=n + 1 {
            let c = self.coface(n + 1, i, q);
            m = if i % 2 == 0 { m.add(&c) } else { m.sub(&c) };
        }
        m
    }

    /// Double normalization: `(N^n)_q`, `delta = sum (-1)^i d^i`, internal differential.
    /// Checks that `delta` preserves normalized cochains.
    pub fn normalized(&self) -> Result<CochainBicomplex, Error> {
        let qlen = self.qlen();
        let nmax = self.top().saturating_sub(1);
        let bases: Vec<Vec<Mat>> = (0..=nmax + 1).map(|n| (0..qlen as i64).map(|q| self.normalized_basis(n, q)).collect()).collect();
        let dims: Vec<Vec<usize>> = (0..=nmax).map(|n| bases[n].iter().map(|b| b.cols).collect()).collect();
        let mut a = CochainBicomplex::zeros(self.p, dims);
        for n in 0..=nmax {
            for q in 0..qlen {
                let qi = q as i64;
                let alt = self.alternating(n, qi);
                let img = alt.mul(&bases[n][q]);
                if !crate::fp::subspace::is_subspace(&img, &bases[n + 1][q]) {
                    return Err(Error::Invalid(format!("alternating coface sum leaves normalized cochains at ({n},{q})")));
                }
                if n < nmax {
                    a.delta[n][q] = restrict_map(&alt, &bases[n][q], &bases[n + 1][q]);
                } else if bases[n + 1][q].cols > 0 && !img.is_zero() {
                    return Err(Error::TooLarge(format!("normalized cochains continue past level {nmax}")));
                }
                if q >= 1 {
                    a.dv[n][q] = restrict_map(&self.levels[n].diff(qi), &bases[n][q], &bases[n][q - 1]);
                }
            }
        }
        Ok(a)
    }
}

/// Cosimplicial dual Dold-Kan of `a`, levels `0..=top`.
pub fn dual_gamma(a: &CochainBicomplex, top: usize) -> CosimplicialChains {
    let p = a.p;
    let kmax = a.cols() - 1;
    let qlen = a.rows();
    let rows: Vec<SimplicialVS> = (0..qlen)
        .map(|q| {
            let dims: Vec<usize> = (0..a.cols()).map(|k| a.dim(k as i64, q as i64)).collect();
            let d = (0..a.cols()).map(|k| if k == 0 { Mat::zeros(p, 0, dims[0]) } else { a.delta_at(k as i64 - 1, q as i64).transpose() }).collect();
            gamma(&ChainComplex { p, dims, d }, top)
        })
        .collect();
    let levels = (0..=top)
        .map(|n| {
            let dims: Vec<usize> = rows.iter().map(|r| r.dims[n]).collect();
            let d = (0..qlen)
                .map(|q| {
                    if q == 0 {
                        Mat::zeros(p, 0, dims[0])
                    } else {
                        gamma_map(&|k| a.v(k as i64, q as i64), &|k| a.dim(k as i64, q as i64), &|k| a.dim(k as i64, q as i64 - 1), p, kmax, n)
                    }
                })
                .collect();
            ChainComplex { p, dims, d }
        })
        .collect();
    let cofaces = (0..=top).map(|n| (0..if n == 0 { 0 } else { n + 1 }).map(|i| rows.iter().map(|r| r.faces[n][i].transpose()).collect()).collect()).collect();
    let codegens = (0..top).map(|n| (0..=n).map(|j| rows.iter().map(|r| r.degens[n][j].transpose()).collect()).collect()).collect();
    CosimplicialChains { p, levels, cofaces, codegens }
}

/// Cosimplicial simplicial vector space: `levels[n]` simplicial in the internal direction.
#[derive(Clone, Debug)]
pub struct CosimplicialSVS {
    pub p: u32,
    pub levels: Vec<SimplicialVS>,
    /// `cofaces[n][i][q]`.
    pub cofaces: Vec<Vec<Vec<Mat>>>,
    pub codegens: Vec<Vec<Vec<Mat>>>,
}

impl CosimplicialSVS {
    pub fn validate(&self) -> Result<(), Error> {
        for (n, l) in self.levels.iter().enumerate() {
            l.validate().map_err(|e| Error::Invalid(format!("level {n}: {e}")))?;
        }
        let top = self.levels.len() - 1;
        let tq = self.levels[0].top();
        for q in 0..=tq {
            check_identities(top, &|n, i| self.cofaces[n][i][q].transpose(), &|n, j| self.codegens[n][j][q].transpose(), &|n| Mat::identity(self.p, self.levels[n].dims[q]))
                .map_err(|e| Error::Invalid(format!("cosimplicial identity: {e} in internal level {q}")))?;
        }
        for n in 1..=top {
            for i in 0..=n {
                for q in 1..=tq {
                    for j in 0..=q {
                        let a = self.levels[n].faces[q][j].mul(&self.cofaces[n][i][q]);
                        let b = self.cofaces[n][i][q - 1].mul(&self.levels[n - 1].faces[q][j]);
                        if a != b {
                            return Err(Error::Invalid(format!("coface d{i} into level {n} does not commute with face {j} at {q}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Internal Moore complexes, with cofaces and codegeneracies restricted.
    pub fn normalize_internal(&self) -> CosimplicialChains {
        let p = self.p;
        let mut levels = Vec::new();
        let mut bases = Vec::new();
        for l in &self.levels {
            let (mut cc, b) = l.moore();
            cc.dims.pop();
            cc.d.pop();
            levels.push(cc);
            bases.push(b);
        }
        let qlen = self.levels[0].top();
        let top = self.levels.len() - 1;
        let cofaces = (0..=top).map(|n| (0..if n == 0 { 0 } else { n + 1 }).map(|i| (0..qlen).map(|q| restrict_map(&self.cofaces[n][i][q], &bases[n - 1][q], &bases[n][q])).collect()).collect()).collect();
        let codegens = (0..top).map(|n| (0..=n).map(|j| (0..qlen).map(|q| restrict_map(&self.codegens[n][j][q], &bases[n + 1][q], &bases[n][q])).collect()).collect()).collect();
        CosimplicialChains { p, levels, cofaces, codegens }
    }
}

/// Explicit cosimplicial simplicial vector space from `a`, internal levels `0..=tq`.
pub fn dual_dold_kan(a: &CochainBicomplex, tq: usize) -> CosimplicialSVS {
    let w = dual_gamma(a, a.cols());
    let p = a.p;
    let qmax = w.qlen().saturating_sub(1);
    let levels: Vec<SimplicialVS> = w.levels.iter().map(|c| gamma(c, tq)).collect();
    let lift = |ops: &Vec<Vec<Vec<Mat>>>, n: usize, i: usize, src: usize, tgt: usize| -> Vec<Mat> {
        (0..=tq).map(|q| gamma_map(&|k| ops[n][i].get(k).cloned().unwrap_or_else(|| Mat::zeros(p, w.dim(tgt, k as i64), w.dim(src, k as i64))), &|k| w.dim(src, k as i64), &|k| w.dim(tgt, k as i64), p, qmax, q)).collect()
    };
    let top = w.top();
    let cofaces = (0..=top).map(|n| (0..if n == 0 { 0 } else { n + 1 }).map(|i| lift(&w.cofaces, n, i, n - 1, n)).collect()).collect();
    let codegens = (0..top).map(|n| (0..=n).map(|j| lift(&w.codegens, n, j, n + 1, n)).collect()).collect();
    CosimplicialSVS { p, levels, cofaces, codegens }
}

/// Tot tower: `tot[n]` shifted up by `n`, and the sequences
/// `0 -> N^n -> Tot^n -> Tot^{n-1}[1] -> 0` (shifted degrees).
pub struct TotTower {
    pub tot: Vec<ChainComplex>,
    pub ses: Vec<Option<Ses>>,
}

pub fn tot_tower(a: &CochainBicomplex) -> TotTower {
    let p = a.p;
    let nn = a.cols();
    let len = nn + a.rows() + 1;
    // component k of Tot^n in shifted degree m is (N^k)_{m-n+k}
    let comp = |n: usize, k: usize, m: usize| -> Option<i64> { (m + k >= n).then(|| (m + k - n) as i64) };
    let mut tot: Vec<ChainComplex> = Vec::new();
    let mut ses = Vec::new();
    for n in 0..nn {
        let order: Vec<usize> = (0..=n).rev().collect();
        let sizes = |m: usize| -> Vec<usize> { order.iter().map(|&k| comp(n, k, m).map_or(0, |j| a.dim(k as i64, j))).collect() };
        let dims: Vec<usize> = (0..len).map(|m| sizes(m).iter().sum()).collect();
        let mut d = vec![Mat::zeros(p, 0, dims[0])];
        for m in 1..len {
            let (s_src, s_tgt) = (sizes(m), sizes(m - 1));
            let off = |s: &[usize], idx: usize| -> usize { s[..idx].iter().sum() };
            let mut mk = Mat::zeros(p, dims[m - 1], dims[m]);
            for (ci, &k) in order.iter().enumerate() {
                let Some(j) = comp(n, k, m) else { continue };
                if s_src[ci] == 0 {
                    continue;
                }
                let v = a.v(k as i64, j);
                let v = if k % 2 == 0 { v } else { v.neg() };
                mk.put(off(&s_tgt, ci), off(&s_src, ci), &v);
                if k < n {
                    // delta into component k+1, which sits just before k
                    mk.put(off(&s_tgt, ci - 1), off(&s_src, ci), &a.delta_at(k as i64, j));
                }
            }
            d.push(mk);
        }
        let tn = ChainComplex { p, dims: dims.clone(), d };
        if n == 0 {
            ses.push(None);
        } else {
            let prev = &tot[n - 1];
            let col = a.column(n);
            let sub = ChainComplex {
                p,
                dims: (0..len).map(|m| col.dim(m as i64)).collect(),
                d: (0..len).map(|m| if m == 0 { Mat::zeros(p, 0, col.dim(0)) } else { let v = col.diff(m as i64); if n % 2 == 0 { v } else { v.neg() } }).collect(),
            };
            let qd: Vec<usize> = (0..len).map(|m| if m == 0 { 0 } else { prev.dim(m as i64 - 1) }).collect();
            let quo = ChainComplex {
                p,
                dims: qd.clone(),
                d: (0..len).map(|m| if m <= 1 { Mat::zeros(p, 0, qd[m]) } else { prev.diff(m as i64 - 1) }).collect(),
            };
            let i = (0..len)
                .map(|m| {
                    let mut x = Mat::zeros(p, dims[m], sub.dims[m]);
                    x.put(0, 0, &Mat::identity(p, sub.dims[m]));
                    x
                })
                .collect();
            let q = (0..len)
                .map(|m| {
                    let mut x = Mat::zeros(p, quo.dims[m], dims[m]);
                    x.put(0, sub.dims[m], &Mat::identity(p, quo.dims[m]));
                    x
                })
                .collect();
            ses.push(Some(Ses { a: sub, b: tn.clone(), c: quo, i, q }));
        }
        tot.push(tn);
    }
    TotTower { tot, ses }
}

/// Exact couple of the Tot tower; `D` nodes continue by identities up to `n_stable`.
pub fn tot_couple(a: &CochainBicomplex, r_max: usize) -> Result<ExactCouple, Error> {
    let p = a.p;
    let tw = tot_tower(a);
    let nn = a.cols() as i64 - 1;
    let qtop = a.rows() as i64 - 1;
    let n_stable = nn + r_max as i64 + 1;
    let mut c = ExactCouple {
        p,
        deg_alpha: (-1, 0),
        deg_beta: (1, -1),
        deg_gamma: (0, 0),
        d_dims: BTreeMap::new(),
        e_dims: BTreeMap::new(),
        alpha: BTreeMap::new(),
        beta: BTreeMap::new(),
        gamma: BTreeMap::new(),
    };
    let prange = || (-n_stable - 1)..=(qtop + 1);
    let hom = |n: i64, pp: i64| -> Option<crate::fp::Quotient> {
        let k = n.min(nn);
        let m = pp + k;
        (n >= 0 && m >= 0).then(|| tw.tot[k as usize].homology(m))
    };
    for n in -1..=n_stable {
        for pp in prange() {
            let d = hom(n, pp).map_or(0, |h| h.dim());
            c.d_dims.insert((n, pp), d);
        }
    }
    for n in 0..=n_stable {
        for pp in prange() {
            let Some(h) = hom(n, pp) else { continue };
            if h.dim() == 0 {
                continue;
            }
            let m = if n == 0 {
                Mat::zeros(p, 0, h.dim())
            } else if n > nn {
                Mat::identity(p, h.dim())
            } else {
                let Some(t) = hom(n - 1, pp) else { continue };
                let ses = tw.ses[n as usize].as_ref().unwrap();
                induced_map(&ses.q[(pp + n) as usize], &h, &t)?
            };
            c.alpha.insert((n, pp), m);
        }
    }
    for n in 0..=nn {
        let col = a.column(n as usize);
        for m in 0..=qtop {
            let pp = m - n;
            let he = col.homology(m);
            c.e_dims.insert((n, pp), he.dim());
            let hd = hom(n, pp).unwrap();
            let incl = Mat::identity(p, tw.tot[n as usize].dim(m)).select_cols(&(0..col.dim(m)).collect::<Vec<_>>());
            c.gamma.insert((n, pp), induced_map(&incl, &he, &hd)?);
        }
        if n >= 1 {
            let ses = tw.ses[n as usize].as_ref().unwrap();
            // beta: D_{n-1,p} -> E_{n,p-1}, from H_m(quo) with m = p + n
            for pp in prange() {
                let m = pp + n;
                if m < 1 {
                    continue;
                }
                let Some(hsrc) = hom(n - 1, pp) else { continue };
                let conn = connecting_map(ses, m)?;
                let ha = ses.a.homology(m - 1);
                let he = col.homology(m - 1);
                let fix = induced_map(&Mat::identity(p, col.dim(m - 1)), &ha, &he)?;
                let b = fix.mul(&conn);
                debug_assert_eq!(b.cols, hsrc.dim());
                if m - 1 <= qtop {
                    c.beta.insert((n - 1, pp), b);
                }
            }
        }
    }
    Ok(c)
}

/// Pages of the Tot couple.
pub fn tot_pages(a: &CochainBicomplex, r_max: usize) -> Result<Vec<Page>, Error> {
    couple_pages(&tot_couple(a, r_max)?, r_max)
}

/// Row staircase of the reindexed chain bicomplex, keyed as `(n, p)`.
pub fn row_staircase(a: &CochainBicomplex, r_max: usize) -> Vec<Page> {
    let nn = a.cols() as i64 - 1;
    let b = a.reversed();
    let st = staircase_pages(&b.transpose().filtered(Filtration::Row), r_max);
    let key = |(s, t): Key| -> Key { (nn - s, s + t - nn) };
    st.into_iter()
        .map(|pg| Page {
            r: pg.r,
            bidegree: (pg.r as i64, -1),
            dims: pg.dims.iter().map(|(&k, &d)| (key(k), d)).collect(),
            diffs: pg.diffs.into_iter().map(|(k, m)| (key(k), m)).collect(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct D1Report {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// The couple's `d_1` against the map induced by the alternating coface sum.
pub fn d1_check(w: &CosimplicialChains) -> Result<D1Report, Error> {
    let a = w.normalized()?;
    let pages = tot_pages(&a, 1)?;
    let mut rep = D1Report { checked: 0, failures: Vec::new() };
    for n in 0..a.cols() {
        for m in 0..a.rows() as i64 {
            let src = a.column(n).homology(m);
            let x = (n as i64, m - n as i64);
            let want = if n + 1 < a.cols() {
                let tgt = a.column(n + 1).homology(m);
                induced_map(&a.delta_at(n as i64, m), &src, &tgt)?
            } else {
                Mat::zeros(a.p, 0, src.dim())
            };
            let got = pages[0].diffs.get(&x).cloned().unwrap_or_else(|| Mat::zeros(a.p, 0, 0));
            rep.checked += 1;
            let same = (got.rows == want.rows && got.cols == want.cols && got == want) || (want.rows * want.cols == 0 && got.rows * got.cols == 0);
            if !same {
                rep.failures.push(format!("d1 at {x:?}: couple {:?} vs alternating sum {:?}", got.to_rows(), want.to_rows()));
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub n: i64,
    pub p: i64,
    pub class: Vec<u32>,
    pub survives: bool,
    /// Coordinates of `d_1` of the class when it does not survive.
    pub obstruction: Option<Vec<u32>>,
    /// `d_2` by the zig-zag, when the class survives.
    pub d2_lift: Option<Vec<u32>>,
    pub d2_couple: Option<Vec<u32>>,
    pub agree: bool,
}

/// Survival to page 2 against the existence of a chain-level lift, and the
/// lifted `d_2` against the couple's `d_2`, for every basis class of `E_1`.
pub fn lift_check(a: &CochainBicomplex) -> Result<Vec<ClassReport>, Error> {
    let f = a.p;
    let nn = a.cols() as i64 - 1;
    let c = tot_couple(a, 2)?;
    let pages = couple_pages(&c, 2)?;
    let q2 = page_quotients(&c, 2);
    let b = a.reversed();
    let mut out = Vec::new();
    for (&x, &dim) in &c.e_dims {
        let q = &q2[&x];
        let mut cands: Vec<Vec<u32>> = (0..dim)
            .map(|j| {
                let mut v = vec![0u32; dim];
                v[j] = 1;
                v
            })
            .collect();
        cands.extend((0..q.bottom.cols).map(|j| q.bottom.col(j)));
        cands.extend((0..q.dim()).map(|j| q.rep(j)));
        for class in cands {
            let z2 = q.coords(&class).is_some();
            let (bcol, arow) = ((nn - x.0) as usize, (x.0 + x.1) as usize);
            let lifted = lifting_differential(&b, bcol, arow, 2, &class);
            let mut rep = ClassReport { n: x.0, p: x.1, class: class.clone(), survives: z2, obstruction: None, d2_lift: None, d2_couple: None, agree: true };
            match lifted {
                Err(Error::DiesAt(1)) => {
                    let d1 = pages[0].diffs[&x].mul_vec(&class);
                    rep.agree = !z2 && d1.iter().any(|&v| v != 0);
                    rep.obstruction = Some(d1);
                }
                Err(e) => return Err(e),
                Ok(v) => {
                    let tgt = pages[1].target(x);
                    rep.agree = z2;
                    if let (Some(tq), true) = (q2.get(&tgt), z2) {
                        let lv = if v.is_empty() { vec![0; tq.dim()] } else { tq.coords(&v).unwrap_or_default() };
                        let qc = q.coords(&class).unwrap();
                        let want = pages[1].diffs[&x].mul_vec(&qc);
                        let neg: Vec<u32> = lv.iter().map(|v| (f - v) % f).collect();
                        rep.agree = lv == want || neg == want;
                        rep.d2_couple = Some(want);
                        rep.d2_lift = Some(lv);
                    }
                }
            }
            out.push(rep);
        }
    }
    Ok(out)
}

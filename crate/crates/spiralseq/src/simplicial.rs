//! Simplicial and bisimplicial vector spaces over F_p, the Dold-Kan functor
//! `Gamma`, and simplicial objects in chain complexes.

use crate::fp::{Mat, Solver};
use crate::homalg::{Bicomplex, ChainComplex};
use crate::sset::{sur_mask, sur_values};
use crate::Error;

/// Values of `delta^i: [n-1] -> [n]`.
fn coface_values(n: usize, i: usize) -> Vec<usize> {
    (0..=n).filter(|&j| j != i).collect()
}

/// Values of `sigma^j: [n+1] -> [n]`.
fn codegen_values(n: usize, j: usize) -> Vec<usize> {
    (0..=n + 1).map(|v| if v <= j { v } else { v - 1 }).collect()
}

/// Truncated simplicial vector space: levels `0..dims.len()`, degeneracies
/// out of the top level omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialVS {
    pub p: u32,
    pub dims: Vec<usize>,
    /// `faces[n][i]: X_n -> X_{n-1}`.
    pub faces: Vec<Vec<Mat>>,
    /// `degens[n][j]: X_n -> X_{n+1}`.
    pub degens: Vec<Vec<Mat>>,
}

pub(crate) fn check_identities(top: usize, face: &dyn Fn(usize, usize) -> Mat, degen: &dyn Fn(usize, usize) -> Mat, id: &dyn Fn(usize) -> Mat) -> Result<(), String> {
    for n in 2..=top {
        for j in 1..=n {
            for i in 0..j {
                if face(n - 1, i).mul(&face(n, j)) != face(n - 1, j - 1).mul(&face(n, i)) {
                    return Err(format!("d{i} d{j} != d{} d{i} at level {n}", j - 1));
                }
            }
        }
    }
    for n in 0..top {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = face(n + 1, i).mul(&degen(n, j));
                let rhs = if i < j {
                    degen(n - 1, j - 1).mul(&face(n, i))
                } else if i == j || i == j + 1 {
                    id(n)
                } else {
                    degen(n - 1, j).mul(&face(n, i - 1))
                };
                if lhs != rhs {
                    return Err(format!("d{i} s{j} identity fails at level {n}"));
                }
            }
        }
    }
    for n in 0..top.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                if degen(n + 1, i).mul(&degen(n, j)) != degen(n + 1, j + 1).mul(&degen(n, i)) {
                    return Err(format!("s{i} s{j} identity fails at level {n}"));
                }
            }
        }
    }
    Ok(())
}

impl SimplicialVS {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn validate(&self) -> Result<(), Error> {
        let top = self.top();
        for n in 0..=top {
            let nf = if n == 0 { 0 } else { n + 1 };
            if self.faces[n].len() != nf || (n < top && self.degens[n].len() != n + 1) {
                return Err(Error::Invalid(format!("wrong number of operators at level {n}")));
            }
            for m in &self.faces[n] {
                if m.rows != self.dims[n - 1] || m.cols != self.dims[n] {
                    return Err(Error::Invalid(format!("face shape at level {n}")));
                }
            }
            for m in self.degens.get(n).into_iter().flatten() {
                if m.rows != self.dims[n + 1] || m.cols != self.dims[n] {
                    return Err(Error::Invalid(format!("degeneracy shape at level {n}")));
                }
            }
        }
        check_identities(top, &|n, i| self.faces[n][i].clone(), &|n, j| self.degens[n][j].clone(), &|n| Mat::identity(self.p, self.dims[n])).map_err(Error::Invalid)
    }

    /// Moore complex `N_n = meet of ker d_i (i >= 1)` with `d_0`, plus the basis of each `N_n`.
    pub fn moore(&self) -> (ChainComplex, Vec<Mat>) {
        moore_of(self.p, &self.dims, &|n, i| self.faces[n][i].clone())
    }

    /// Dimensions of `pi_n = H_n(N)`, excluding the top level (truncation).
    pub fn homotopy(&self) -> Vec<usize> {
        let (cc, _) = self.moore();
        let mut b = cc.betti();
        b.pop();
        b
    }
}

/// Moore complex of face data.
pub fn moore_of(p: u32, dims: &[usize], face: &dyn Fn(usize, usize) -> Mat) -> (ChainComplex, Vec<Mat>) {
    let bases: Vec<Mat> = (0..dims.len())
        .map(|n| {
            if n == 0 {
                return Mat::identity(p, dims[0]);
            }
            let stacked = (1..=n).fold(Mat::zeros(p, 0, dims[n]), |acc, i| acc.vstack(&face(n, i)));
            if stacked.rows == 0 {
                Mat::identity(p, dims[n])
            } else {
                stacked.kernel()
            }
        })
        .collect();
    let d = (0..dims.len())
        .map(|n| {
            if n == 0 {
                return Mat::zeros(p, 0, bases[0].cols);
            }
            restrict_map(&face(n, 0), &bases[n], &bases[n - 1])
        })
        .collect();
    (ChainComplex { p, dims: bases.iter().map(|b| b.cols).collect(), d }, bases)
}

/// Matrix of `f` restricted to span(`src`) with values expressed in span(`tgt`).
pub fn restrict_map(f: &Mat, src: &Mat, tgt: &Mat) -> Mat {
    let mut out = Mat::zeros(f.p, tgt.cols, src.cols);
    if src.cols == 0 {
        return out;
    }
    let img = f.mul(src);
    if tgt.cols == 0 {
        assert!(img.is_zero(), "map leaves the target subspace");
        return out;
    }
    let s = Solver::new(tgt);
    for j in 0..src.cols {
        let x = s.solve(&img.col(j)).expect("map leaves the target subspace");
        for (i, v) in x.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    out
}

/// Summands `(collapse mask, k)` of `Gamma(C)_n`, ascending in `k` then mask.
pub fn gamma_summands(n: usize, kmax: usize) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for k in 0..=n.min(kmax) {
        for m in 0u64..(1 << n) {
            if m.count_ones() as usize == n - k {
                out.push((m, k));
            }
        }
    }
    out
}

/// Effect of a simplicial operator `theta: [m] -> [n]` (value list) on summand `sigma`:
/// `Some((eps, k', boundary?))` or `None` when it vanishes.
fn gamma_act(n: usize, sigma: u64, theta: &[usize]) -> Option<(u64, usize, bool)> {
    let sv = sur_values(n, sigma);
    let k = *sv.last().unwrap();
    let vals: Vec<usize> = theta.iter().map(|&t| sv[t]).collect();
    let mut img: Vec<usize> = vals.clone();
    img.dedup();
    let eps = sur_mask(&vals);
    if img.len() == k + 1 {
        Some((eps, k, false))
    } else if k >= 1 && img.len() == k && img[0] == 1 {
        Some((eps, k - 1, true))
    } else {
        None
    }
}

fn gamma_operator(dims: &dyn Fn(usize) -> usize, diff: &dyn Fn(usize) -> Mat, p: u32, kmax: usize, n: usize, m: usize, theta: &[usize]) -> Mat {
    let src = gamma_summands(n, kmax);
    let tgt = gamma_summands(m, kmax);
    let off = |list: &[(u64, usize)]| -> Vec<usize> {
        let mut o = Vec::with_capacity(list.len() + 1);
        let mut acc = 0;
        for &(_, k) in list {
            o.push(acc);
            acc += dims(k);
        }
        o.push(acc);
        o
    };
    let (so, to) = (off(&src), off(&tgt));
    let mut out = Mat::zeros(p, *to.last().unwrap(), *so.last().unwrap());
    for (si, &(sigma, k)) in src.iter().enumerate() {
        if dims(k) == 0 {
            continue;
        }
        let Some((eps, k2, bd)) = gamma_act(n, sigma, theta) else { continue };
        if k2 > kmax {
            continue;
        }
        let ti = tgt.iter().position(|&(m2, kk)| m2 == eps && kk == k2).expect("summand exists");
        let block = if bd { diff(k) } else { Mat::identity(p, dims(k)) };
        out.put(to[ti], so[si], &block);
    }
    out
}

/// `Gamma(C)` truncated at level `top`.
pub fn gamma(cc: &ChainComplex, top: usize) -> SimplicialVS {
    let kmax = cc.dims.len().saturating_sub(1);
    let dims_k = |k: usize| cc.dim(k as i64);
    let diff = |k: usize| cc.diff(k as i64);
    let lvl_dim = |n: usize| gamma_summands(n, kmax).iter().map(|&(_, k)| dims_k(k)).sum::<usize>();
    let dims: Vec<usize> = (0..=top).map(lvl_dim).collect();
    let faces = (0..=top)
        .map(|n| if n == 0 { vec![] } else { (0..=n).map(|i| gamma_operator(&dims_k, &diff, cc.p, kmax, n, n - 1, &coface_values(n, i))).collect() })
        .collect();
    let degens = (0..top).map(|n| (0..=n).map(|j| gamma_operator(&dims_k, &diff, cc.p, kmax, n, n + 1, &codegen_values(n, j))).collect()).collect();
    SimplicialVS { p: cc.p, dims, faces, degens }
}

/// `Gamma(f)` on level `n` for a chain map `f_k: C_k -> C'_k`.
pub fn gamma_map(f: &dyn Fn(usize) -> Mat, src_dims: &dyn Fn(usize) -> usize, tgt_dims: &dyn Fn(usize) -> usize, p: u32, kmax: usize, n: usize) -> Mat {
    let list = gamma_summands(n, kmax);
    let rows: usize = list.iter().map(|&(_, k)| tgt_dims(k)).sum();
    let cols: usize = list.iter().map(|&(_, k)| src_dims(k)).sum();
    let mut out = Mat::zeros(p, rows, cols);
    let (mut r, mut c) = (0, 0);
    for &(_, k) in &list {
        let b = f(k);
        out.put(r, c, &b);
        r += tgt_dims(k);
        c += src_dims(k);
    }
    out
}

/// Simplicial object in chain complexes: `levels[n]` is a complex, with
/// faces and degeneracies given degreewise (`faces[n][i][q]`).
#[derive(Clone, Debug)]
pub struct SimplicialChains {
    pub p: u32,
    pub levels: Vec<ChainComplex>,
    pub faces: Vec<Vec<Vec<Mat>>>,
    pub degens: Vec<Vec<Vec<Mat>>>,
}

impl SimplicialChains {
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn qlen(&self) -> usize {
        self.levels.iter().map(|c| c.dims.len()).max().unwrap_or(0)
    }

    pub fn dim(&self, n: usize, q: i64) -> usize {
        self.levels.get(n).map_or(0, |c| c.dim(q))
    }

    pub fn face(&self, n: usize, i: usize, q: i64) -> Mat {
        match (q >= 0).then(|| self.faces[n][i].get(q as usize)).flatten() {
            Some(m) => m.clone(),
            None => Mat::zeros(self.p, self.dim(n - 1, q), self.dim(n, q)),
        }
    }

    pub fn degen(&self, n: usize, j: usize, q: i64) -> Mat {
        match (q >= 0).then(|| self.degens[n][j].get(q as usize)).flatten() {
            Some(m) => m.clone(),
            None => Mat::zeros(self.p, self.dim(n + 1, q), self.dim(n, q)),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let top = self.top();
        for q in 0..self.qlen() as i64 {
            check_identities(top, &|n, i| self.face(n, i, q), &|n, j| self.degen(n, j, q), &|n| Mat::identity(self.p, self.dim(n, q)))
                .map_err(|e| Error::Invalid(format!("{e} in internal degree {q}")))?;
        }
        for n in 1..=top {
            for i in 0..=n {
                for q in 1..self.qlen() as i64 {
                    if self.levels[n - 1].diff(q).mul(&self.face(n, i, q)) != self.face(n, i, q - 1).mul(&self.levels[n].diff(q)) {
                        return Err(Error::Invalid(format!("face d{i} at level {n} is not a chain map")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Bicomplex of Moore chains: `(C_n)_q` with `d_0` horizontally and the internal differential.
    pub fn moore_bicomplex(&self) -> (Bicomplex, Vec<Vec<Mat>>) {
        let qlen = self.qlen();
        let bases: Vec<Vec<Mat>> = (0..=self.top()).map(|n| (0..qlen as i64).map(|q| self.chains_basis(n, q)).collect()).collect();
        let dims: Vec<Vec<usize>> = bases.iter().map(|v| v.iter().map(|b| b.cols).collect()).collect();
        let mut b = Bicomplex::zeros(self.p, dims);
        for n in 0..=self.top() {
            for q in 0..qlen {
                if n >= 1 {
                    b.dh[n][q] = restrict_map(&self.face(n, 0, q as i64), &bases[n][q], &bases[n - 1][q]);
                }
                if q >= 1 {
                    b.dv[n][q] = restrict_map(&self.levels[n].diff(q as i64), &bases[n][q], &bases[n][q - 1]);
                }
            }
        }
        (b, bases)
    }

    /// Basis of `(C_n)_q = meet of ker d_i, i >= 1`.
    pub fn chains_basis(&self, n: usize, q: i64) -> Mat {
        meet_of_kernels(self.p, self.dim(n, q), (1..=n).map(|i| self.face(n, i, q)))
    }

    /// Basis of `(Z_n)_q = meet of ker d_i, i >= 0` (`Z_0 = X_0`).
    pub fn cycles_basis(&self, n: usize, q: i64) -> Mat {
        let lo = if n == 0 { 1 } else { 0 };
        meet_of_kernels(self.p, self.dim(n, q), (lo..=n).map(|i| self.face(n, i, q)))
    }
}

pub fn meet_of_kernels(p: u32, dim: usize, maps: impl Iterator<Item = Mat>) -> Mat {
    let stacked = maps.fold(Mat::zeros(p, 0, dim), |acc, m| acc.vstack(&m));
    if stacked.rows == 0 {
        Mat::identity(p, dim)
    } else {
        stacked.kernel()
    }
}

/// Horizontal `Gamma` of a bicomplex, as a simplicial object in (vertical) chain complexes.
pub fn gamma_horizontal(b: &Bicomplex, top: usize) -> SimplicialChains {
    let p = b.p;
    let kmax = b.cols().saturating_sub(1);
    let qlen = b.rows();
    let lvl = |n: usize, q: usize| gamma_summands(n, kmax).iter().map(|&(_, k)| b.dim(k as i64, q as i64)).sum::<usize>();
    let rows: Vec<SimplicialVS> = (0..qlen)
        .map(|q| {
            let dims: Vec<usize> = (0..b.cols()).map(|k| b.dim(k as i64, q as i64)).collect();
            let d = (0..b.cols()).map(|k| if k == 0 { Mat::zeros(p, 0, dims[0]) } else { b.h(k as i64, q as i64) }).collect();
            gamma(&ChainComplex { p, dims, d }, top)
        })
        .collect();
    let levels = (0..=top)
        .map(|n| {
            let dims: Vec<usize> = (0..qlen).map(|q| lvl(n, q)).collect();
            let d = (0..qlen)
                .map(|q| {
                    if q == 0 {
                        Mat::zeros(p, 0, dims[0])
                    } else {
                        gamma_map(&|k| b.v(k as i64, q as i64), &|k| b.dim(k as i64, q as i64), &|k| b.dim(k as i64, q as i64 - 1), p, kmax, n)
                    }
                })
                .collect();
            ChainComplex { p, dims, d }
        })
        .collect();
    let faces = (0..=top).map(|n| (0..if n == 0 { 0 } else { n + 1 }).map(|i| rows.iter().map(|r| r.faces[n][i].clone()).collect()).collect()).collect();
    let degens = (0..top).map(|n| (0..=n).map(|j| rows.iter().map(|r| r.degens[n][j].clone()).collect()).collect()).collect();
    SimplicialChains { p, levels, faces, degens }
}

/// Bisimplicial vector space truncated at `n <= tn`, `q <= tq`.
#[derive(Clone, Debug)]
pub struct BisimplicialVS {
    pub p: u32,
    /// `dims[n][q]`.
    pub dims: Vec<Vec<usize>>,
    /// `hface[n][q][i]: X_{n,q} -> X_{n-1,q}`.
    pub hface: Vec<Vec<Vec<Mat>>>,
    pub hdeg: Vec<Vec<Vec<Mat>>>,
    /// `vface[n][q][i]: X_{n,q} -> X_{n,q-1}`.
    pub vface: Vec<Vec<Vec<Mat>>>,
    pub vdeg: Vec<Vec<Vec<Mat>>>,
}

impl BisimplicialVS {
    pub fn tn(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn tq(&self) -> usize {
        self.dims[0].len() - 1
    }

    /// Horizontal simplicial object in row `q`.
    pub fn row(&self, q: usize) -> SimplicialVS {
        SimplicialVS {
            p: self.p,
            dims: self.dims.iter().map(|r| r[q]).collect(),
            faces: self.hface.iter().map(|r| r[q].clone()).collect(),
            degens: self.hdeg.iter().map(|r| r[q].clone()).collect(),
        }
    }

    /// Vertical simplicial object in column `n`.
    pub fn column(&self, n: usize) -> SimplicialVS {
        SimplicialVS { p: self.p, dims: self.dims[n].clone(), faces: self.vface[n].clone(), degens: self.vdeg[n].clone() }
    }

    pub fn validate(&self) -> Result<(), Error> {
        for q in 0..=self.tq() {
            self.row(q).validate().map_err(|e| Error::Invalid(format!("row {q}: {e}")))?;
        }
        for n in 0..=self.tn() {
            self.column(n).validate().map_err(|e| Error::Invalid(format!("column {n}: {e}")))?;
        }
        // horizontal and vertical operators commute
        for n in 0..=self.tn() {
            for q in 0..=self.tq() {
                let hops: Vec<(Mat, usize)> = (0..if n == 0 { 0 } else { n + 1 })
                    .map(|i| (self.hface[n][q][i].clone(), i))
                    .collect();
                for (i, _) in hops.iter().enumerate() {
                    for j in 0..if q == 0 { 0 } else { q + 1 } {
                        let a = self.vface[n - 1][q][j].mul(&self.hface[n][q][i]);
                        let b = self.hface[n][q - 1][i].mul(&self.vface[n][q][j]);
                        if a != b {
                            return Err(Error::Invalid(format!("dh{i} and dv{j} do not commute at ({n},{q})")));
                        }
                    }
                    if q < self.tq() {
                        for j in 0..=q {
                            let a = self.vdeg[n - 1][q][j].mul(&self.hface[n][q][i]);
                            let b = self.hface[n][q + 1][i].mul(&self.vdeg[n][q][j]);
                            if a != b {
                                return Err(Error::Invalid(format!("dh{i} and sv{j} do not commute at ({n},{q})")));
                            }
                        }
                    }
                }
                if n < self.tn() {
                    for i in 0..=n {
                        for j in 0..if q == 0 { 0 } else { q + 1 } {
                            let a = self.vface[n + 1][q][j].mul(&self.hdeg[n][q][i]);
                            let b = self.hdeg[n][q - 1][i].mul(&self.vface[n][q][j]);
                            if a != b {
                                return Err(Error::Invalid(format!("sh{i} and dv{j} do not commute at ({n},{q})")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `X_{k,k}` with `d_i = dh_i dv_i`, `s_j = sh_j sv_j`, up to the common truncation.
    pub fn diag(&self) -> SimplicialVS {
        let t = self.tn().min(self.tq());
        SimplicialVS {
            p: self.p,
            dims: (0..=t).map(|k| self.dims[k][k]).collect(),
            faces: (0..=t).map(|k| (0..if k == 0 { 0 } else { k + 1 }).map(|i| self.hface[k][k - 1][i].mul(&self.vface[k][k][i])).collect()).collect(),
            degens: (0..t).map(|k| (0..=k).map(|j| self.hdeg[k][k + 1][j].mul(&self.vdeg[k][k][j])).collect()).collect(),
        }
    }

    /// Vertical normalization: columns replaced by their Moore complexes.
    pub fn normalize_vertical(&self) -> SimplicialChains {
        let p = self.p;
        let mut levels = Vec::new();
        let mut bases = Vec::new();
        for n in 0..=self.tn() {
            let (mut cc, b) = self.column(n).moore();
            // drop the truncation level, whose Moore part is not a full chain group
            cc.dims.pop();
            cc.d.pop();
            levels.push(cc);
            bases.push(b);
        }
        let qlen = self.tq();
        let faces = (0..=self.tn())
            .map(|n| (0..if n == 0 { 0 } else { n + 1 }).map(|i| (0..qlen).map(|q| restrict_map(&self.hface[n][q][i], &bases[n][q], &bases[n - 1][q])).collect()).collect())
            .collect();
        let degens = (0..self.tn()).map(|n| (0..=n).map(|j| (0..qlen).map(|q| restrict_map(&self.hdeg[n][q][j], &bases[n][q], &bases[n + 1][q])).collect()).collect()).collect();
        SimplicialChains { p, levels, faces, degens }
    }
}

/// Inverse Dold-Kan in both directions, truncated at `tn`, `tq`.
pub fn dold_kan_inverse2(b: &Bicomplex, tn: usize, tq: usize) -> BisimplicialVS {
    let p = b.p;
    let y = gamma_horizontal(b, tn);
    let cols: Vec<SimplicialVS> = y.levels.iter().map(|c| gamma(c, tq)).collect();
    let qmax = y.qlen().saturating_sub(1);
    let dims: Vec<Vec<usize>> = cols.iter().map(|c| c.dims.clone()).collect();
    let hmap = |ops: &Vec<Vec<Vec<Mat>>>, n: usize, i: usize, src: usize, tgt: usize, q: usize| -> Mat {
        gamma_map(&|k| y_op(ops, n, i, k, y.dim(tgt, k as i64), y.dim(src, k as i64), p), &|k| y.dim(src, k as i64), &|k| y.dim(tgt, k as i64), p, qmax, q)
    };
    let hface = (0..=tn).map(|n| (0..=tq).map(|q| (0..if n == 0 { 0 } else { n + 1 }).map(|i| hmap(&y.faces, n, i, n, n - 1, q)).collect()).collect()).collect();
    let hdeg = (0..tn).map(|n| (0..=tq).map(|q| (0..=n).map(|j| hmap(&y.degens, n, j, n, n + 1, q)).collect()).collect()).collect();
    let vface = cols.iter().map(|c| c.faces.clone()).collect();
    let vdeg = cols.iter().map(|c| c.degens.clone()).collect();
    BisimplicialVS { p, dims, hface, hdeg, vface, vdeg }
}

fn y_op(ops: &[Vec<Vec<Mat>>], n: usize, i: usize, k: usize, rows: usize, cols: usize, p: u32) -> Mat {
    ops[n][i].get(k).cloned().unwrap_or_else(|| Mat::zeros(p, rows, cols))
}

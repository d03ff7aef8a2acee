//! Spiral spectral sequence of a bisimplicial vector space, read off the
//! horizontal Moore chains `C_n = meet of ker d_i (i >= 1)`.
//!
//! The couple uses homotopy fibres: `B_n = cocone(d_0: C_n -> B_{n-1})`,
//! `D_{n,p} = H_p(B_n)`, `E_{n,p} = H_p(C_n)`.  Degrees of `B_n` are shifted
//! by `n` internally so that everything stays non-negative.

use crate::couple::{couple_pages, page_quotients, ExactCouple, Key};
use crate::fp::{Mat, Solver};
use crate::homalg::{connecting_map, induced_map, Bicomplex, ChainComplex, Page, Ses};
use crate::simplicial::{gamma_horizontal, restrict_map, SimplicialChains};
use crate::sset::sur_mask;
use crate::Error;
use serde::Serialize;
use std::collections::BTreeMap;

/// Vertical chain complex of column `n`.
pub fn column(m: &Bicomplex, n: usize) -> ChainComplex {
    let p = m.p;
    let dims: Vec<usize> = (0..m.rows()).map(|q| m.dim(n as i64, q as i64)).collect();
    let d = (0..m.rows()).map(|q| if q == 0 { Mat::zeros(p, 0, dims[0]) } else { m.v(n as i64, q as i64) }).collect();
    ChainComplex { p, dims, d }
}

fn shifted(cc: &ChainComplex, by: usize, len: usize) -> ChainComplex {
    let p = cc.p;
    let dims: Vec<usize> = (0..len).map(|k| if k < by { 0 } else { cc.dim((k - by) as i64) }).collect();
    let d = (0..len)
        .map(|k| if k == 0 { Mat::zeros(p, 0, dims[0]) } else if k <= by { Mat::zeros(p, dims[k - 1], dims[k]) } else { cc.diff((k - by) as i64) })
        .collect();
    ChainComplex { p, dims, d }
}

fn negated(cc: &ChainComplex) -> ChainComplex {
    ChainComplex { p: cc.p, dims: cc.dims.clone(), d: cc.d.iter().map(|m| m.neg()).collect() }
}

/// Moore chains `C_n` of a simplicial chain complex.
pub fn moore_chains(y: &SimplicialChains, n: usize) -> ChainComplex {
    sub_complex(y, n, &|q| y.chains_basis(n, q))
}

/// Strict Moore cycles `Z_n = C_n meet ker d_0`.
pub fn moore_cycles(y: &SimplicialChains, n: usize) -> ChainComplex {
    sub_complex(y, n, &|q| y.cycles_basis(n, q))
}

fn sub_complex(y: &SimplicialChains, n: usize, basis: &dyn Fn(i64) -> Mat) -> ChainComplex {
    let lvl = &y.levels[n];
    let bases: Vec<Mat> = (0..lvl.dims.len() as i64).map(basis).collect();
    let dims = bases.iter().map(|b| b.cols).collect();
    let d = (0..bases.len())
        .map(|q| if q == 0 { Mat::zeros(y.p, 0, bases[0].cols) } else { restrict_map(&lvl.diff(q as i64), &bases[q], &bases[q - 1]) })
        .collect();
    ChainComplex { p: y.p, dims, d }
}

/// Iterated cocones `B_n`, shifted up by `n`, with their short exact sequences.
struct Cocones {
    b: Vec<ChainComplex>,
    ses: Vec<Option<Ses>>,
}

fn cocones(m: &Bicomplex, len: usize) -> Cocones {
    let p = m.p;
    let mut b: Vec<ChainComplex> = Vec::new();
    let mut ses = Vec::new();
    for n in 0..m.cols() {
        let c = shifted(&column(m, n), n, len);
        if n == 0 {
            b.push(c);
            ses.push(None);
            continue;
        }
        let prev = &b[n - 1];
        let dims: Vec<usize> = (0..len).map(|k| c.dims[k] + prev.dims[k]).collect();
        let mut d = vec![Mat::zeros(p, 0, dims[0])];
        for k in 1..len {
            let mut mk = Mat::zeros(p, dims[k - 1], dims[k]);
            mk.put(0, 0, &c.d[k]);
            mk.put(c.dims[k - 1], c.dims[k], &prev.d[k].neg());
            if k >= n && c.dims[k] > 0 {
                // d_0 lands in the first block of B_{n-1}, which is C_{n-1}
                mk.put(c.dims[k - 1], 0, &m.h(n as i64, (k - n) as i64));
            }
            d.push(mk);
        }
        let bn = ChainComplex { p, dims: dims.clone(), d };
        let i = (0..len)
            .map(|k| {
                let mut x = Mat::zeros(p, dims[k], prev.dims[k]);
                x.put(c.dims[k], 0, &Mat::identity(p, prev.dims[k]));
                x
            })
            .collect();
        let q = (0..len)
            .map(|k| {
                let mut x = Mat::zeros(p, c.dims[k], dims[k]);
                x.put(0, 0, &Mat::identity(p, c.dims[k]));
                x
            })
            .collect();
        ses.push(Some(Ses { a: negated(prev), b: bn.clone(), c, i, q }));
        b.push(bn);
    }
    Cocones { b, ses }
}

/// The spiral exact couple of a Moore bicomplex (`C_n` in column `n`, `d_0` horizontal).
pub fn spiral_couple(m: &Bicomplex) -> Result<ExactCouple, Error> {
    let p = m.p;
    let top = m.max_total().max(0) as usize;
    let len = top + 2;
    let cz = cocones(m, len);
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
    let key = |n: i64, k: usize| -> Key { (n, k as i64 - n) };
    for k in 0..len {
        c.d_dims.insert(key(-1, k), 0);
    }
    for (n, bn) in cz.b.iter().enumerate() {
        let col = shifted(&column(m, n), n, len);
        for k in 0..len {
            let hb = bn.homology(k as i64);
            let hc = col.homology(k as i64);
            c.d_dims.insert(key(n as i64, k), hb.dim());
            if k >= n && k - n < m.rows() {
                c.e_dims.insert(key(n as i64, k), hc.dim());
                let proj = Mat::identity(p, col.dims[k]).hstack(&Mat::zeros(p, col.dims[k], bn.dims[k] - col.dims[k]));
                c.beta.insert(key(n as i64, k), induced_map(&proj, &hb, &hc)?);
            }
            if let Some(ses) = &cz.ses[n] {
                let prev = &cz.b[n - 1];
                let hp = prev.homology(k as i64);
                c.alpha.insert(key(n as i64 - 1, k), induced_map(&ses.i[k], &hp, &hb)?);
                if k >= n && k - n < m.rows() && k >= 1 {
                    let conn = connecting_map(ses, k as i64)?;
                    let ha = ses.a.homology(k as i64 - 1);
                    let hp1 = prev.homology(k as i64 - 1);
                    let fix = induced_map(&Mat::identity(p, prev.dims[k - 1]), &ha, &hp1)?;
                    c.gamma.insert(key(n as i64, k), fix.mul(&conn));
                }
            }
        }
    }
    Ok(c)
}

/// Moore bicomplex of the horizontal Gamma of `b`, i.e. `b` rebuilt from its simplicial form.
pub fn moore_of_bicomplex(b: &Bicomplex) -> Bicomplex {
    gamma_horizontal(b, b.cols()).moore_bicomplex().0
}

/// Pages `E^1 .. E^{r_max}` of the spiral couple.
pub fn spiral_pages(y: &SimplicialChains, r_max: usize) -> Result<Vec<Page>, Error> {
    let (m, _) = y.moore_bicomplex();
    couple_pages(&spiral_couple(&m)?, r_max)
}

/// Zig-zag for `d^r` on the class with `E^1` coordinates `class` at `(n, p)`.
/// Returns `E^1` coordinates of the value at `(n - r, p + r - 1)`, or
/// `DiesAt(j)` when `d^j` is already nonzero on the class.
pub fn lifting_differential(m: &Bicomplex, n: usize, p: usize, r: usize, class: &[u32]) -> Result<Vec<u32>, Error> {
    let f = m.p;
    let hq = column(m, n).homology(p as i64);
    if class.len() != hq.dim() {
        return Err(Error::Invalid(format!("class has {} coordinates, E^1 at ({n},{p}) has dimension {}", class.len(), hq.dim())));
    }
    let x0 = hq.lift(class);
    let dim = |k: usize| -> usize { if k > n { 0 } else { m.dim((n - k) as i64, (p + k) as i64) } };
    let sgn = |c: usize| -> u32 { if c.is_multiple_of(2) { 1 } else { f - 1 } };
    let steps = r.saturating_sub(1).min(n);
    let mut sol: Vec<Vec<u32>> = Vec::new();
    // global solve over x_1..x_j for every j, so that early choices never block later ones
    for j in 1..=steps {
        let offs: Vec<usize> = (1..=j).scan(0, |acc, k| {
            let o = *acc;
            *acc += dim(k);
            Some(o)
        }).collect();
        let ncols: usize = (1..=j).map(dim).sum();
        let rows: Vec<usize> = (1..=j).map(|k| m.dim((n - k) as i64, (p + k - 1) as i64)).collect();
        let nrows: usize = rows.iter().sum();
        let mut a = Mat::zeros(f, nrows, ncols);
        let mut rhs = vec![0u32; nrows];
        let mut r0 = 0;
        for k in 1..=j {
            let col = n - k;
            // dh x_{k-1} + (-1)^col dv x_k = 0
            a.put(r0, offs[k - 1], &m.v(col as i64, (p + k) as i64).scale(sgn(col)));
            let h = m.h((col + 1) as i64, (p + k - 1) as i64);
            if k == 1 {
                for (i, v) in h.mul_vec(&x0).into_iter().enumerate() {
                    rhs[r0 + i] = (f - v) % f;
                }
            } else {
                a.put(r0, offs[k - 2], &h);
            }
            r0 += rows[k - 1];
        }
        match Solver::new(&a).solve(&rhs) {
            Some(x) => sol = (1..=j).map(|k| x[offs[k - 1]..offs[k - 1] + dim(k)].to_vec()).collect(),
            None => return Err(Error::DiesAt(j)),
        }
    }
    if r > n {
        return Ok(vec![]);
    }
    let last = if r == 1 { x0 } else { sol[r - 2].clone() };
    let y = m.h((n - r + 1) as i64, (p + r - 1) as i64).mul_vec(&last);
    let tq = column(m, n - r).homology((p + r - 1) as i64);
    tq.coords(&y).ok_or_else(|| Error::NotExact("zig-zag value is not a vertical cycle".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Compare the zig-zag against the couple differential on every page-`r` basis class.
pub fn lifting_check(m: &Bicomplex, r_max: usize) -> Result<LiftReport, Error> {
    let c = spiral_couple(m)?;
    let pages = couple_pages(&c, r_max)?;
    let f = m.p;
    let mut rep = LiftReport { checked: 0, failures: Vec::new() };
    for (ri, pg) in pages.iter().enumerate() {
        let r = ri + 1;
        let qs = page_quotients(&c, r);
        for (&x, q) in &qs {
            if q.dim() == 0 || x.0 < r as i64 {
                continue;
            }
            let tgt = pg.target(x);
            let Some(tq) = qs.get(&tgt) else { continue };
            let dm = &pg.diffs[&x];
            for j in 0..q.dim() {
                rep.checked += 1;
                let zz = match lifting_differential(m, x.0 as usize, x.1 as usize, r, &q.rep(j)) {
                    Ok(v) => v,
                    Err(e) => {
                        rep.failures.push(format!("E^{r}{x:?} class {j}: {e}"));
                        continue;
                    }
                };
                let got = tq.coords(&zz);
                let want = dm.col(j);
                let Some(got) = got else {
                    rep.failures.push(format!("E^{r}{x:?} class {j}: zig-zag value leaves Z^{r}"));
                    continue;
                };
                // the cocone signs twist d^r by (-1)^((r-1) n + r(r-1)/2)
                let sign = ((r - 1) * x.0 as usize + r * (r - 1) / 2) % 2;
                let expect: Vec<u32> = if sign == 0 { want.clone() } else { want.iter().map(|v| (f - v) % f).collect() };
                if got != expect {
                    rep.failures.push(format!("E^{r}{x:?} class {j}: zig-zag {got:?} vs couple {want:?}"));
                }
            }
        }
    }
    Ok(rep)
}

/// `H_p(C_n)` maps isomorphically onto the joint kernel of `H_p(d_i)`, `i >= 1`.
#[derive(Clone, Debug, Serialize)]
pub struct FaceKernelReport {
    pub entries: BTreeMap<String, (usize, usize)>,
    pub ok: bool,
}

pub fn face_kernel_check(y: &SimplicialChains) -> Result<FaceKernelReport, Error> {
    let mut entries = BTreeMap::new();
    let mut ok = true;
    for n in 0..=y.top() {
        let c = moore_chains(y, n);
        for q in 0..y.levels[n].dims.len() as i64 {
            let hc = c.homology(q);
            let hy = y.levels[n].homology(q);
            let basis = y.chains_basis(n, q);
            let incl = induced_map(&basis, &hc, &hy)?;
            let mut stacked = Mat::zeros(y.p, 0, hy.dim());
            for i in 1..=n {
                let hy1 = y.levels[n - 1].homology(q);
                stacked = stacked.vstack(&induced_map(&y.face(n, i, q), &hy, &hy1)?);
            }
            let joint = if stacked.rows == 0 { hy.dim() } else { hy.dim() - stacked.rank() };
            let image_inside = stacked.rows == 0 || stacked.mul(&incl).is_zero();
            if incl.rank() != hc.dim() || hc.dim() != joint || !image_inside {
                ok = false;
            }
            entries.insert(format!("{n},{q}"), (hc.dim(), joint));
        }
    }
    Ok(FaceKernelReport { entries, ok })
}

#[derive(Clone, Debug, Serialize)]
pub struct FibrancyReport {
    /// `X_n -> horn matching object` surjective everywhere (always true for groups).
    pub horn_surjective: bool,
    /// Kernel of that map is `C_n`.
    pub kernel_is_chains: bool,
    /// Full matching maps surjective; reported only.
    pub matching_surjective: bool,
    /// `d_0: C_n -> Z_{n-1}` surjective; reported only.
    pub boundary_surjective: bool,
    pub failures: Vec<String>,
}

/// Matching-object data in internal degree `q`: returns (rank of `X_n -> M`, dim `M`).
fn matching(y: &SimplicialChains, n: usize, q: i64, from: usize) -> (usize, usize) {
    let p = y.p;
    let d1 = y.dim(n - 1, q);
    let parts = n + 1 - from;
    let total = parts * d1;
    let mut cons = Mat::zeros(p, 0, total);
    if n >= 2 {
        let d2 = y.dim(n - 2, q);
        for j in from..=n {
            for i in from..j {
                // d_i x_j = d_{j-1} x_i
                let mut row = Mat::zeros(p, d2, total);
                row.put(0, (j - from) * d1, &y.face(n - 1, i, q));
                row.put(0, (i - from) * d1, &y.face(n - 1, j - 1, q).neg());
                cons = cons.vstack(&row);
            }
        }
    }
    let mdim = total - cons.rank();
    let map = (from..=n).fold(Mat::zeros(p, 0, y.dim(n, q)), |acc, i| acc.vstack(&y.face(n, i, q)));
    (map.rank(), mdim)
}

pub fn fibrancy_check(y: &SimplicialChains) -> FibrancyReport {
    let mut r = FibrancyReport { horn_surjective: true, kernel_is_chains: true, matching_surjective: true, boundary_surjective: true, failures: Vec::new() };
    for n in 1..=y.top() {
        for q in 0..y.levels[n].dims.len() as i64 {
            let (rank, mdim) = matching(y, n, q, 1);
            if rank != mdim {
                r.horn_surjective = false;
                r.failures.push(format!("horn matching map not onto at ({n},{q}): rank {rank} of {mdim}"));
            }
            if y.dim(n, q) - rank != y.chains_basis(n, q).cols {
                r.kernel_is_chains = false;
                r.failures.push(format!("kernel of horn matching map is not C at ({n},{q})"));
            }
            let (rank0, mdim0) = matching(y, n, q, 0);
            if rank0 != mdim0 {
                r.matching_surjective = false;
            }
            let c = y.chains_basis(n, q);
            let z = y.cycles_basis(n - 1, q);
            if y.face(n, 0, q).mul(&c).rank() != z.cols {
                r.boundary_surjective = false;
            }
        }
    }
    r
}

fn surjection_act(k: usize, mask: u64, i: usize) -> Option<(u64, bool)> {
    let sv = crate::sset::sur_values(k, mask);
    let top = *sv.last().unwrap();
    let vals: Vec<usize> = (0..=k).filter(|&j| j != i).map(|j| sv[j]).collect();
    let mut img = vals.clone();
    img.dedup();
    let eps = sur_mask(&vals);
    if img.len() == top + 1 {
        Some((eps, false))
    } else if top >= 1 && img.len() == top && img[0] == 1 {
        Some((eps, true))
    } else {
        None
    }
}

/// Normalized chains of the diagonal of the double inverse Dold-Kan of `b`,
/// in the basis of pairs of disjoint collapse masks.
pub fn shuffle_complex(b: &Bicomplex) -> ChainComplex {
    let p = b.p;
    let (na, nb) = (b.cols(), b.rows());
    let kmax = (na + nb).saturating_sub(2);
    type Cell = (u64, u64, usize, usize);
    let cells: Vec<Vec<Cell>> = (0..=kmax + 1)
        .map(|k| {
            let mut v = Vec::new();
            for i in 0u64..(1 << k) {
                for j in 0u64..(1 << k) {
                    if i & j != 0 {
                        continue;
                    }
                    let (a, bb) = (k - i.count_ones() as usize, k - j.count_ones() as usize);
                    if a < na && bb < nb && b.dim(a as i64, bb as i64) > 0 {
                        v.push((i, j, a, bb));
                    }
                }
            }
            v
        })
        .collect();
    let offsets: Vec<BTreeMap<(u64, u64), usize>> = cells
        .iter()
        .map(|v| {
            let mut acc = 0;
            v.iter().map(|&(i, j, a, bb)| {
                let o = acc;
                acc += b.dim(a as i64, bb as i64);
                ((i, j), o)
            }).collect()
        })
        .collect();
    let dims: Vec<usize> = cells.iter().map(|v| v.iter().map(|&(_, _, a, bb)| b.dim(a as i64, bb as i64)).sum()).collect();
    let mut d = vec![Mat::zeros(p, 0, dims[0])];
    for k in 1..=kmax + 1 {
        let mut m = Mat::zeros(p, dims[k - 1], dims[k]);
        for &(im, jm, a, bb) in &cells[k] {
            let col0 = offsets[k][&(im, jm)];
            for i in 0..=k {
                let (Some((ei, hb)), Some((ej, vb))) = (surjection_act(k, im, i), surjection_act(k, jm, i)) else { continue };
                if ei & ej != 0 {
                    continue;
                }
                let b2 = if vb { bb - 1 } else { bb };
                let Some(&row0) = offsets[k - 1].get(&(ei, ej)) else { continue };
                let mut blk = Mat::identity(p, b.dim(a as i64, bb as i64));
                if vb {
                    blk = b.v(a as i64, bb as i64).mul(&blk);
                }
                if hb {
                    blk = b.h(a as i64, b2 as i64).mul(&blk);
                }
                let s = if i % 2 == 0 { 1 } else { p - 1 };
                let cur = m.block(row0, col0, blk.rows, blk.cols).add(&blk.scale(s));
                m.put(row0, col0, &cur);
            }
        }
        d.push(m);
    }
    ChainComplex { p, dims, d }
}

/// `dim pi_t(diag)` from the shuffle complex.
pub fn diag_homotopy(b: &Bicomplex) -> Vec<usize> {
    let cc = shuffle_complex(b);
    let mut h = cc.betti();
    h.pop();
    h
}

/// `sum over n + p = t of dim E^inf_{n,p}` equals `dim pi_t(diag)`.
pub fn diag_abutment_check(b: &Bicomplex) -> Result<(), String> {
    let m = moore_of_bicomplex(b);
    let c = spiral_couple(&m).map_err(|e| e.to_string())?;
    let r = m.cols() + m.rows() + 1;
    let last = couple_pages(&c, r).map_err(|e| e.to_string())?.pop().unwrap();
    let pi = diag_homotopy(b);
    let mut tot: BTreeMap<i64, usize> = BTreeMap::new();
    for (&(n, q), &d) in &last.dims {
        *tot.entry(n + q).or_default() += d;
    }
    for (t, &want) in pi.iter().enumerate() {
        let got = tot.get(&(t as i64)).copied().unwrap_or(0);
        if got != want {
            return Err(format!("degree {t}: E^inf total {got}, pi_t(diag) {want}"));
        }
    }
    Ok(())
}

/// `E^2_{n,p} = H^h_n H^v_p` computed directly.
pub fn e2_oracle(b: &Bicomplex) -> Result<BTreeMap<Key, usize>, Error> {
    let mut out = BTreeMap::new();
    let cols: Vec<ChainComplex> = (0..b.cols()).map(|n| column(b, n)).collect();
    for q in 0..b.rows() as i64 {
        let hs: Vec<_> = cols.iter().map(|c| c.homology(q)).collect();
        let maps: Vec<Mat> = (0..b.cols())
            .map(|n| if n == 0 { Ok(Mat::zeros(b.p, 0, hs[0].dim())) } else { induced_map(&b.h(n as i64, q), &hs[n], &hs[n - 1]) })
            .collect::<Result<_, _>>()?;
        for n in 0..b.cols() {
            let outr = maps[n].rank();
            let inr = maps.get(n + 1).map_or(0, |m| m.rank());
            out.insert((n as i64, q), hs[n].dim() - outr - inr);
        }
    }
    Ok(out)
}

/// Smallest bicomplex with a nonzero `d^2`, from `(2,0)` to `(0,1)`.
pub fn engineered_d2(p: u32) -> Bicomplex {
    let mut b = Bicomplex::zeros(p, vec![vec![0, 1], vec![1, 1], vec![1, 0]]);
    b.dh[2][0] = Mat::identity(p, 1);
    b.dv[1][1] = Mat::identity(p, 1);
    b.dh[1][1] = Mat::identity(p, 1);
    b
}

/// Staircase bicomplex with a nonzero `d^3`, from `(3,0)` to `(0,2)`.
pub fn engineered_d3(p: u32) -> Bicomplex {
    let mut b = Bicomplex::zeros(p, vec![vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 0], vec![1, 0, 0]]);
    b.dh[3][0] = Mat::identity(p, 1);
    b.dv[2][1] = Mat::identity(p, 1);
    b.dh[2][1] = Mat::identity(p, 1);
    b.dv[1][2] = Mat::identity(p, 1);
    b.dh[1][2] = Mat::identity(p, 1);
    b
}

/// Direct sum of two bicomplexes.
pub fn direct_sum(a: &Bicomplex, c: &Bicomplex) -> Bicomplex {
    let p = a.p;
    let cols = a.cols().max(c.cols());
    let rows = a.rows().max(c.rows());
    let dims: Vec<Vec<usize>> = (0..cols).map(|n| (0..rows).map(|q| a.dim(n as i64, q as i64) + c.dim(n as i64, q as i64)).collect()).collect();
    let mut s = Bicomplex::zeros(p, dims);
    let blockdiag = |x: Mat, y: Mat| -> Mat {
        let mut m = Mat::zeros(p, x.rows + y.rows, x.cols + y.cols);
        m.put(0, 0, &x);
        m.put(x.rows, x.cols, &y);
        m
    };
    for n in 0..cols {
        for q in 0..rows {
            let (ni, qi) = (n as i64, q as i64);
            if n >= 1 {
                s.dh[n][q] = blockdiag(a.h(ni, qi), c.h(ni, qi));
            }
            if q >= 1 {
                s.dv[n][q] = blockdiag(a.v(ni, qi), c.v(ni, qi));
            }
        }
    }
    s
}

/// `E^r` support of the spiral couple of `b` as `(n, p) -> dim` for pages `1..=r_max`.
pub fn spiral_support(b: &Bicomplex, r_max: usize) -> Result<Vec<BTreeMap<Key, usize>>, Error> {
    let m = moore_of_bicomplex(b);
    Ok(couple_pages(&spiral_couple(&m)?, r_max)?.iter().map(|pg| pg.support()).collect())
}

//! Sparse elimination for boundary matrices of large cell complexes.
//!
//! Unit pivots are eliminated first; whatever survives is handed to the
//! dense Smith form (over Z) or dense rank (over F_p).

use crate::fp::{self, Mat};
use crate::snf::{invariant_factors, IMat};
use crate::Error;
use std::collections::BTreeMap;

/// Column-major sparse integer matrix; each column maps row -> nonzero value.
#[derive(Clone, Debug, Default)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<BTreeMap<usize, i64>>,
}

impl SparseMat {
    pub fn new(rows: usize, ncols: usize) -> SparseMat {
        SparseMat { rows, cols: vec![BTreeMap::new(); ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        let e = self.cols[c].entry(r).or_insert(0);
        *e += v;
        if *e == 0 {
            self.cols[c].remove(&r);
        }
    }

    pub fn to_dense(&self) -> IMat {
        let mut m = IMat::zeros(self.rows, self.ncols());
        for (c, col) in self.cols.iter().enumerate() {
            for (&r, &v) in col {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn to_fp(&self, p: u32) -> Mat {
        let mut m = Mat::zeros(p, self.rows, self.ncols());
        for (c, col) in self.cols.iter().enumerate() {
            for (&r, &v) in col {
                m.set(r, c, fp::reduce(v, p));
            }
        }
        m
    }
}

/// Elementary divisors of a matrix: (rank, nontrivial invariant factors > 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisors {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

/// Ring for sparse elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeffs {
    Z,
    Fp(u32),
}

/// Reduce by unit pivots; returns (number of unit pivots, residual matrix).
fn eliminate_units(m: &SparseMat, ring: Coeffs) -> Result<(usize, SparseMat), Error> {
    let norm = |v: i64| -> i64 {
        match ring {
            Coeffs::Z => v,
            Coeffs::Fp(p) => fp::reduce(v, p) as i64,
        }
    };
    let is_unit = |v: i64| -> bool {
        match ring {
            Coeffs::Z => v == 1 || v == -1,
            Coeffs::Fp(_) => v != 0,
        }
    };
    // rows stored as maps too, for pivot row lookups
    let mut cols: Vec<BTreeMap<usize, i64>> = m
        .cols
        .iter()
        .map(|c| c.iter().map(|(&r, &v)| (r, norm(v))).filter(|&(_, v)| v != 0).collect())
        .collect();
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); m.rows];
    for (c, col) in cols.iter().enumerate() {
        for (&r, &v) in col {
            rows[r].insert(c, v);
        }
    }
    let mut alive_col = vec![true; cols.len()];
    let mut alive_row = vec![true; m.rows];
    let mut npiv = 0;
    // process columns by increasing length (cheap pivots first)
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|&c| cols[c].len());
    let mut changed = true;
    while changed {
        changed = false;
        for &c in &order {
            if !alive_col[c] || cols[c].is_empty() {
                continue;
            }
            // pick unit entry whose row is shortest
            let Some((&pr, &pv)) = cols[c].iter().filter(|(_, &v)| is_unit(v)).min_by_key(|(&r, _)| rows[r].len()) else {
                continue;
            };
            npiv += 1;
            changed = true;
            alive_col[c] = false;
            alive_row[pr] = false;
            let pcol: Vec<(usize, i64)> = cols[c].iter().map(|(&r, &v)| (r, v)).collect();
            let prow: Vec<(usize, i64)> = rows[pr].iter().filter(|(&cc, _)| cc != c).map(|(&cc, &v)| (cc, v)).collect();
            let inv = match ring {
                Coeffs::Z => pv,
                Coeffs::Fp(p) => fp::inv(pv as u32, p) as i64,
            };
            // column ops: col_j -= (a_{pr,j}/pv) * col_c, which clears row pr
            for &(cj, a) in &prow {
                let f = norm(a.checked_mul(inv).ok_or(Error::Overflow)?);
                for &(r, v) in &pcol {
                    let delta = norm(f.checked_mul(v).ok_or(Error::Overflow)?);
                    let e = cols[cj].entry(r).or_insert(0);
                    *e = norm(e.checked_sub(delta).ok_or(Error::Overflow)?);
                    if *e == 0 {
                        cols[cj].remove(&r);
                        rows[r].remove(&cj);
                    } else {
                        rows[r].insert(cj, *e);
                    }
                }
            }
            // remove pivot column and row entirely (row ops are implied)
            for &(r, _) in &pcol {
                rows[r].remove(&c);
            }
            cols[c].clear();
            let rest: Vec<usize> = rows[pr].keys().copied().collect();
            for cj in rest {
                cols[cj].remove(&pr);
            }
            rows[pr].clear();
        }
    }
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| alive_row[r] && !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| alive_col[c] && !cols[c].is_empty()).collect();
    let mut rindex = vec![usize::MAX; m.rows];
    for (i, &r) in live_rows.iter().enumerate() {
        rindex[r] = i;
    }
    let mut res = SparseMat::new(live_rows.len(), live_cols.len());
    for (j, &c) in live_cols.iter().enumerate() {
        for (&r, &v) in &cols[c] {
            res.cols[j].insert(rindex[r], v);
        }
    }
    Ok((npiv, res))
}

/// Rank and torsion of a boundary matrix over Z or F_p.
pub fn divisors(m: &SparseMat, ring: Coeffs) -> Result<Divisors, Error> {
    let (npiv, rest) = eliminate_units(m, ring)?;
    if rest.ncols() == 0 || rest.rows == 0 {
        return Ok(Divisors { rank: npiv, torsion: vec![] });
    }
    match ring {
        Coeffs::Fp(p) => Ok(Divisors { rank: npiv + rest.to_fp(p).rank(), torsion: vec![] }),
        Coeffs::Z => {
            let f = invariant_factors(&rest.to_dense())?;
            let torsion = f.iter().copied().filter(|&x| x > 1).collect();
            Ok(Divisors { rank: npiv + f.len(), torsion })
        }
    }
}

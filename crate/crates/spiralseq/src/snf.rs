//! Smith normal form of small dense integer matrices.

use crate::Error;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> IMat {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> IMat {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, o: &IMat) -> IMat {
        assert_eq!(self.cols, o.rows);
        let mut m = IMat::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..o.cols {
                    let v = m.get(r, c) + a * o.get(k, c);
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = (0..n).map(|r| (0..n).map(|c| self.get(r, c) as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(s) = (k + 1..n).find(|&r| a[r][k] != 0) else { return 0 };
                a.swap(k, s);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: i64) -> Result<(), Error> {
        for c in 0..self.cols {
            let v = self.get(dst, c).checked_add(f.checked_mul(self.get(src, c)).ok_or(Error::Overflow)?);
            self.set(dst, c, v.ok_or(Error::Overflow)?);
        }
        Ok(())
    }

    fn add_col(&mut self, dst: usize, src: usize, f: i64) -> Result<(), Error> {
        for r in 0..self.rows {
            let v = self.get(r, dst).checked_add(f.checked_mul(self.get(r, src)).ok_or(Error::Overflow)?);
            self.set(r, dst, v.ok_or(Error::Overflow)?);
        }
        Ok(())
    }

    fn neg_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

/// Result of `snf`: `u * a * v == d`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i)).filter(|&x| x != 0).collect()
    }
}

/// Smith normal form with unimodular transforms; pivots on the smallest nonzero entry.
pub fn snf(a: &IMat) -> Result<Snf, Error> {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IMat::identity(m);
    let mut v = IMat::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..m {
            for c in t..n {
                let x = d.get(r, c);
                if x != 0 && best.is_none_or(|(br, bc)| x.abs() < d.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        d.swap_rows(t, br);
        u.swap_rows(t, br);
        d.swap_cols(t, bc);
        v.swap_cols(t, bc);
        loop {
            let piv = d.get(t, t);
            let mut dirty = false;
            for r in t + 1..m {
                let q = d.get(r, t) / piv;
                if q != 0 {
                    d.add_row(r, t, -q)?;
                    u.add_row(r, t, -q)?;
                }
                if d.get(r, t) != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..n {
                let q = d.get(t, c) / piv;
                if q != 0 {
                    d.add_col(c, t, -q)?;
                    v.add_col(c, t, -q)?;
                }
                if d.get(t, c) != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the rest of the block
                let bad = (t + 1..m).flat_map(|r| (t + 1..n).map(move |c| (r, c))).find(|&(r, c)| d.get(r, c) % piv != 0);
                match bad {
                    None => break,
                    Some((r, _)) => {
                        d.add_row(t, r, 1)?;
                        u.add_row(t, r, 1)?;
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t into the pivot
            let mut best = (t, t);
            for r in t..m {
                let x = d.get(r, t);
                if x != 0 && x.abs() < d.get(best.0, best.1).abs() {
                    best = (r, t);
                }
            }
            for c in t..n {
                let x = d.get(t, c);
                if x != 0 && x.abs() < d.get(best.0, best.1).abs() {
                    best = (t, c);
                }
            }
            if best.0 != t {
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            }
            if best.1 != t {
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
            }
        }
        if d.get(t, t) < 0 {
            d.neg_row(t);
            u.neg_row(t);
        }
        t += 1;
    }
    Ok(Snf { u, d, v })
}

/// Nonzero invariant factors only (no transforms), via i128 elimination.
pub fn invariant_factors(a: &IMat) -> Result<Vec<i64>, Error> {
    Ok(snf(a)?.diagonal())
}

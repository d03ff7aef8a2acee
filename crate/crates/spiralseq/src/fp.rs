//! Dense matrices over a prime field F_p (p < 2^16).

use std::fmt;

/// Multiplicative inverse of a nonzero residue.
pub fn inv(a: u32, p: u32) -> u32 {
    let (mut t, mut nt) = (0i64, 1i64);
    let (mut r, mut nr) = (p as i64, a as i64);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    assert!(r == 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p as i64) as u32
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

/// Row-major matrix with entries in [0, p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} mod {}]", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Mat {
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: usize, cols: usize, entries: &[Vec<i64>]) -> Mat {
        assert_eq!(entries.len(), rows);
        let mut m = Mat::zeros(p, rows, cols);
        for (r, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, reduce(x, p));
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_cols(p: u32, rows: usize, cols: &[Vec<u32>]) -> Mat {
        let mut m = Mat::zeros(p, rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, &x) in v.iter().enumerate() {
                m.set(r, c, x % p);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = (self.data[i] + v) % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for r in 0..self.rows {
            let orow = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b as u64;
                    if *o >= 1 << 62 {
                        *o %= p;
                    }
                }
            }
        }
        Mat {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            data: out.into_iter().map(|x| (x % p) as u32).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % p).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        Mat {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % p).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        let p = self.p;
        Mat { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| (p - a) % p).collect() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: u32) -> Mat {
        let p = self.p as u64;
        let s = s as u64 % p;
        Mat {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| (a as u64 * s % p) as u32).collect(),
        }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.p, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.p, idx.len(), self.cols);
        for (j, &r) in idx.iter().enumerate() {
            m.data[j * self.cols..(j + 1) * self.cols].copy_from_slice(self.row(r));
        }
        m
    }

    /// Block embedding: copy `b` into self at (r0, c0).
    pub fn put(&mut self, r0: usize, c0: usize, b: &Mat) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.set(r0 + r, c0 + c, b.get(r, c));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(self.p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        m
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, c) != 0) else { continue };
            if pr != row {
                for k in 0..self.cols {
                    self.data.swap(pr * self.cols + k, row * self.cols + k);
                }
            }
            let iv = inv(self.get(row, c), self.p) as u64;
            for k in c..self.cols {
                let i = row * self.cols + k;
                self.data[i] = (self.data[i] as u64 * iv % p) as u32;
            }
            let pivot_row: Vec<u32> = self.row(row)[c..].to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, c) as u64;
                if f == 0 {
                    continue;
                }
                let base = r * self.cols;
                for (k, &pv) in pivot_row.iter().enumerate() {
                    let i = base + c + k;
                    self.data[i] = ((self.data[i] as u64 + (p - f) * pv as u64) % p) as u32;
                }
            }
            pivots.push(c);
            row += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Basis of the null space, as columns of a `cols x k` matrix.
    pub fn kernel(&self) -> Mat {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut k = Mat::zeros(self.p, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, 1);
            for (i, &pc) in piv.iter().enumerate() {
                let v = r.get(i, f);
                if v != 0 {
                    k.set(pc, j, (self.p - v) % self.p);
                }
            }
        }
        k
    }

    /// Basis of the column space, chosen among the original columns.
    pub fn image(&self) -> Mat {
        let (_, piv) = self.rref();
        self.select_cols(&piv)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(self.p, 0, 0));
        }
        let aug = self.hstack(&Mat::identity(self.p, n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }
}

/// Precomputed elimination of `A` for repeated solves of `A x = b`.
pub struct Solver {
    cols: usize,
    rows: usize,
    t: Mat,
    pivots: Vec<usize>,
}

impl Solver {
    pub fn new(a: &Mat) -> Solver {
        let aug = a.hstack(&Mat::identity(a.p, a.rows));
        let (red, all_piv) = aug.rref();
        let pivots: Vec<usize> = all_piv.into_iter().filter(|&c| c < a.cols).collect();
        Solver { cols: a.cols, rows: a.rows, t: red.block(0, a.cols, a.rows, a.rows), pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One solution of `A x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let tb = self.t.mul_vec(b);
        if tb[self.pivots.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in self.pivots.iter().enumerate() {
            x[pc] = tb[i];
        }
        Some(x)
    }

    pub fn in_image(&self, b: &[u32]) -> bool {
        let tb = self.t.mul_vec(b);
        tb[self.pivots.len()..].iter().all(|&x| x == 0)
    }
}

/// Subspace helpers; a subspace is a matrix whose columns are a basis.
pub mod subspace {
    use super::{Mat, Solver};

    pub fn zero(p: u32, dim: usize) -> Mat {
        Mat::zeros(p, dim, 0)
    }

    pub fn full(p: u32, dim: usize) -> Mat {
        Mat::identity(p, dim)
    }

    /// Independent columns spanning the same space.
    pub fn basis(m: &Mat) -> Mat {
        if m.cols == 0 {
            return m.clone();
        }
        m.image()
    }

    pub fn sum(a: &Mat, b: &Mat) -> Mat {
        basis(&a.hstack(b))
    }

    pub fn intersect(a: &Mat, b: &Mat) -> Mat {
        if a.cols == 0 || b.cols == 0 {
            return Mat::zeros(a.p, a.rows, 0);
        }
        let k = a.hstack(&b.neg()).kernel();
        let coeffs = k.block(0, 0, a.cols, k.cols);
        basis(&a.mul(&coeffs))
    }

    pub fn contains(a: &Mat, v: &[u32]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if a.cols == 0 {
            return false;
        }
        Solver::new(a).in_image(v)
    }

    pub fn is_subspace(small: &Mat, big: &Mat) -> bool {
        (0..small.cols).all(|c| contains(big, &small.col(c)))
    }

    pub fn equal(a: &Mat, b: &Mat) -> bool {
        a.rank() == b.rank() && is_subspace(a, b) && is_subspace(b, a)
    }

    /// Preimage of subspace `w` under `f` (as a subspace of the source).
    pub fn preimage(f: &Mat, w: &Mat) -> Mat {
        if f.cols == 0 {
            return Mat::zeros(f.p, 0, 0);
        }
        let k = f.hstack(&w.neg()).kernel();
        basis(&k.block(0, 0, f.cols, k.cols))
    }

    /// Image of subspace `u` under `f`.
    pub fn image_of(f: &Mat, u: &Mat) -> Mat {
        basis(&f.mul(u))
    }
}

/// Basis of a subquotient `top / bottom` with coordinates for elements of `top`.
pub struct Quotient {
    pub p: u32,
    pub ambient: usize,
    /// Basis of the bottom space.
    pub bottom: Mat,
    /// Representatives completing `bottom` to a basis of `top`.
    pub reps: Mat,
    solver: Option<Solver>,
    nb: usize,
}

impl Quotient {
    /// `bottom` must lie inside `top`; both given by spanning columns.
    pub fn new(top: &Mat, bottom: &Mat) -> Quotient {
        let p = top.p;
        let bottom = subspace::basis(bottom);
        let nb = bottom.cols;
        let both = bottom.hstack(top);
        let (_, piv) = both.rref();
        let extra: Vec<usize> = piv.iter().filter(|&&c| c >= nb).map(|&c| c - nb).collect();
        debug_assert!(piv.iter().take_while(|&&c| c < nb).count() == nb);
        let reps = top.select_cols(&extra);
        let full = bottom.hstack(&reps);
        let solver = if full.cols > 0 { Some(Solver::new(&full)) } else { None };
        Quotient { p, ambient: top.rows, bottom, reps, solver, nb }
    }

    pub fn dim(&self) -> usize {
        self.reps.cols
    }

    /// Coordinates modulo `bottom`; `None` if `v` is not in `top`.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if v.iter().all(|&x| x == 0) {
            return Some(vec![0; self.dim()]);
        }
        let x = self.solver.as_ref()?.solve(v)?;
        Some(x[self.nb..].to_vec())
    }

    pub fn rep(&self, i: usize) -> Vec<u32> {
        self.reps.col(i)
    }

    /// Linear combination of representatives.
    pub fn lift(&self, coords: &[u32]) -> Vec<u32> {
        let m = Mat::from_cols(self.p, coords.len(), &[coords.to_vec()]);
        self.reps.mul(&m).col(0)
    }
}

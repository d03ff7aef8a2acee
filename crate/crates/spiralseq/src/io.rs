//! JSON and TSV forms of bicomplexes, (co)simplicial data and pages.
//! Keys `"n,q"`, matrices row-major; zero or empty matrices are omitted.

use crate::fp::Mat;
use crate::homalg::{Bicomplex, Page};
use crate::simplicial::BisimplicialVS;
use crate::tot::{CochainBicomplex, CosimplicialSVS};
use crate::Error;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

pub type Grid<T> = IndexMap<String, T>;
type Rows = Vec<Vec<u32>>;

fn key(n: usize, q: usize) -> String {
    format!("{n},{q}")
}

fn parse_key(k: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Invalid(format!("bad bidegree key {k:?}"));
    let (a, b) = k.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

pub fn check_prime(p: u32) -> Result<(), Error> {
    if !(2..1 << 16).contains(&p) || !crate::fp::is_prime(p as u64) {
        return Err(Error::Invalid(format!("p = {p} is not a prime below 2^16")));
    }
    Ok(())
}

fn rows_of(m: &Mat) -> Option<Rows> {
    (m.rows > 0 && m.cols > 0 && !m.is_zero()).then(|| m.to_rows())
}

fn mat_of(p: u32, rows: usize, cols: usize, data: Option<&Rows>, what: &str) -> Result<Mat, Error> {
    let Some(data) = data else { return Ok(Mat::zeros(p, rows, cols)) };
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Invalid(format!("{what}: expected {rows}x{cols} matrix")));
    }
    if data.iter().flatten().any(|&v| v >= p) {
        return Err(Error::Invalid(format!("{what}: entry not reduced mod {p}")));
    }
    let mut m = Mat::zeros(p, rows, cols);
    for (i, r) in data.iter().enumerate() {
        for (j, &v) in r.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m)
}

fn dims_grid(dims: &[Vec<usize>]) -> Grid<usize> {
    let mut g = Grid::new();
    for (n, col) in dims.iter().enumerate() {
        for (q, &d) in col.iter().enumerate() {
            g.insert(key(n, q), d);
        }
    }
    g
}

fn grid_dims(g: &Grid<usize>) -> Result<Vec<Vec<usize>>, Error> {
    let mut cols = 0;
    let mut rows = 0;
    for k in g.keys() {
        let (n, q) = parse_key(k)?;
        cols = cols.max(n + 1);
        rows = rows.max(q + 1);
    }
    let mut dims = vec![vec![0; rows]; cols];
    for (k, &d) in g {
        let (n, q) = parse_key(k)?;
        dims[n][q] = d;
    }
    Ok(dims)
}

fn check_keys<T>(g: &Grid<T>, dims: &[Vec<usize>], what: &str) -> Result<(), Error> {
    for k in g.keys() {
        let (n, q) = parse_key(k)?;
        if n >= dims.len() || q >= dims[n].len() {
            return Err(Error::Invalid(format!("{what} entry {k} outside the dims table")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicomplexJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub p: u32,
    pub dims: Grid<usize>,
    #[serde(default)]
    pub dh: Grid<Rows>,
    #[serde(default)]
    pub dv: Grid<Rows>,
}

impl BicomplexJson {
    pub fn from_bicomplex(b: &Bicomplex) -> BicomplexJson {
        let mut dh = Grid::new();
        let mut dv = Grid::new();
        for n in 0..b.cols() {
            for q in 0..b.rows() {
                if let Some(r) = rows_of(&b.h(n as i64, q as i64)) {
                    dh.insert(key(n, q), r);
                }
                if let Some(r) = rows_of(&b.v(n as i64, q as i64)) {
                    dv.insert(key(n, q), r);
                }
            }
        }
        BicomplexJson { kind: Some("bicomplex".into()), p: b.p, dims: dims_grid(&b.dims), dh, dv }
    }

    pub fn to_bicomplex(&self) -> Result<Bicomplex, Error> {
        check_prime(self.p)?;
        let dims = grid_dims(&self.dims)?;
        check_keys(&self.dh, &dims, "dh")?;
        check_keys(&self.dv, &dims, "dv")?;
        let mut b = Bicomplex::zeros(self.p, dims.clone());
        for n in 0..dims.len() {
            for q in 0..dims[n].len() {
                let k = key(n, q);
                if n >= 1 {
                    b.dh[n][q] = mat_of(self.p, dims[n - 1][q], dims[n][q], self.dh.get(&k), &format!("dh {k}"))?;
                } else if self.dh.contains_key(&k) {
                    return Err(Error::Invalid("dh out of column 0".into()));
                }
                if q >= 1 {
                    b.dv[n][q] = mat_of(self.p, dims[n][q - 1], dims[n][q], self.dv.get(&k), &format!("dv {k}"))?;
                } else if self.dv.contains_key(&k) {
                    return Err(Error::Invalid("dv out of row 0".into()));
                }
            }
        }
        b.validate()?;
        Ok(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub kind: String,
    pub p: u32,
    pub dims: Grid<usize>,
    #[serde(default)]
    pub delta: Grid<Rows>,
    #[serde(default)]
    pub dv: Grid<Rows>,
}

impl CochainJson {
    pub fn from_cochain(a: &CochainBicomplex) -> CochainJson {
        let mut delta = Grid::new();
        let mut dv = Grid::new();
        for n in 0..a.cols() {
            for q in 0..a.rows() {
                if let Some(r) = rows_of(&a.delta_at(n as i64, q as i64)) {
                    delta.insert(key(n, q), r);
                }
                if let Some(r) = rows_of(&a.v(n as i64, q as i64)) {
                    dv.insert(key(n, q), r);
                }
            }
        }
        CochainJson { kind: "cochain".into(), p: a.p, dims: dims_grid(&a.dims), delta, dv }
    }

    pub fn to_cochain(&self) -> Result<CochainBicomplex, Error> {
        check_prime(self.p)?;
        let dims = grid_dims(&self.dims)?;
        check_keys(&self.delta, &dims, "delta")?;
        check_keys(&self.dv, &dims, "dv")?;
        let mut a = CochainBicomplex::zeros(self.p, dims.clone());
        for n in 0..dims.len() {
            for q in 0..dims[n].len() {
                let k = key(n, q);
                let up = dims.get(n + 1).map_or(0, |c| c[q]);
                a.delta[n][q] = mat_of(self.p, up, dims[n][q], self.delta.get(&k), &format!("delta {k}"))?;
                if q >= 1 {
                    a.dv[n][q] = mat_of(self.p, dims[n][q - 1], dims[n][q], self.dv.get(&k), &format!("dv {k}"))?;
                }
            }
        }
        a.validate()?;
        Ok(a)
    }
}

fn ops_grid(ops: &[Vec<Vec<Mat>>]) -> Grid<Vec<Rows>> {
    let mut g = Grid::new();
    for (n, col) in ops.iter().enumerate() {
        for (q, list) in col.iter().enumerate() {
            if !list.is_empty() {
                g.insert(key(n, q), list.iter().map(|m| m.to_rows()).collect());
            }
        }
    }
    g
}

/// Operators `ops[n][q][i]` with shape `(rows(n,q), cols(n,q))`; `count(n,q)` of them.
fn grid_ops(p: u32, g: &Grid<Vec<Rows>>, ext: (usize, usize), count: &dyn Fn(usize, usize) -> usize, shape: &dyn Fn(usize, usize) -> (usize, usize), what: &str) -> Result<Vec<Vec<Vec<Mat>>>, Error> {
    for k in g.keys() {
        let (n, q) = parse_key(k)?;
        if n >= ext.0 || q >= ext.1 {
            return Err(Error::Invalid(format!("{what} entry {k} outside the table")));
        }
    }
    let mut out = vec![vec![vec![]; ext.1]; ext.0];
    for n in 0..ext.0 {
        for q in 0..ext.1 {
            let c = count(n, q);
            let k = key(n, q);
            let list = g.get(&k);
            if c > 0 && list.map_or(0, |l| l.len()) != c {
                return Err(Error::Invalid(format!("{what} {k}: expected {c} matrices")));
            }
            let (r, cc) = shape(n, q);
            for i in 0..c {
                // empty matrices serialize as [] and carry no shape
                let data = list.map(|l| &l[i]).filter(|d| !d.is_empty());
                out[n][q].push(mat_of(p, r, cc, data, &format!("{what} {k}[{i}]"))?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisimplicialJson {
    pub kind: String,
    pub p: u32,
    pub dims: Grid<usize>,
    pub dh_face: Grid<Vec<Rows>>,
    pub dh_degen: Grid<Vec<Rows>>,
    pub dv_face: Grid<Vec<Rows>>,
    pub dv_degen: Grid<Vec<Rows>>,
}

impl BisimplicialJson {
    pub fn from_bisimplicial(x: &BisimplicialVS) -> BisimplicialJson {
        BisimplicialJson {
            kind: "bisimplicial".into(),
            p: x.p,
            dims: dims_grid(&x.dims),
            dh_face: ops_grid(&x.hface),
            dh_degen: ops_grid(&x.hdeg),
            dv_face: ops_grid(&x.vface),
            dv_degen: ops_grid(&x.vdeg),
        }
    }

    pub fn to_bisimplicial(&self) -> Result<BisimplicialVS, Error> {
        let p = self.p;
        check_prime(p)?;
        let dims = grid_dims(&self.dims)?;
        let (tn, tq) = (dims.len() - 1, dims[0].len() - 1);
        let d = |n: usize, q: usize| dims[n][q];
        let nf = |k: usize| if k == 0 { 0 } else { k + 1 };
        let hface = grid_ops(p, &self.dh_face, (tn + 1, tq + 1), &|n, _| nf(n), &|n, q| (if n == 0 { 0 } else { d(n - 1, q) }, d(n, q)), "dh_face")?;
        let hdeg = grid_ops(p, &self.dh_degen, (tn, tq + 1), &|n, _| n + 1, &|n, q| (d(n + 1, q), d(n, q)), "dh_degen")?;
        let vface = grid_ops(p, &self.dv_face, (tn + 1, tq + 1), &|_, q| nf(q), &|n, q| (if q == 0 { 0 } else { d(n, q - 1) }, d(n, q)), "dv_face")?;
        let vdeg = grid_ops(p, &self.dv_degen, (tn + 1, tq), &|_, q| q + 1, &|n, q| (d(n, q + 1), d(n, q)), "dv_degen")?;
        let x = BisimplicialVS { p, dims, hface, hdeg, vface, vdeg };
        x.validate()?;
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosimplicialJson {
    pub kind: String,
    pub p: u32,
    pub dims: Grid<usize>,
    pub coface: Grid<Vec<Rows>>,
    pub codegen: Grid<Vec<Rows>>,
    pub face: Grid<Vec<Rows>>,
    pub degen: Grid<Vec<Rows>>,
}

impl CosimplicialJson {
    pub fn from_cosimplicial(x: &CosimplicialSVS) -> CosimplicialJson {
        let by_level = |f: &dyn Fn(usize) -> Vec<Vec<Mat>>| -> Vec<Vec<Vec<Mat>>> { (0..x.levels.len()).map(f).collect() };
        let cof = by_level(&|n| transpose_iq(x.cofaces.get(n)));
        let cod = by_level(&|n| transpose_iq(x.codegens.get(n)));
        CosimplicialJson {
            kind: "cosimplicial".into(),
            p: x.p,
            dims: dims_grid(&x.levels.iter().map(|l| l.dims.clone()).collect::<Vec<_>>()),
            coface: ops_grid(&cof),
            codegen: ops_grid(&cod),
            face: ops_grid(&x.levels.iter().map(|l| l.faces.clone()).collect::<Vec<_>>()),
            degen: ops_grid(&x.levels.iter().map(|l| l.degens.clone()).collect::<Vec<_>>()),
        }
    }

    pub fn to_cosimplicial(&self) -> Result<CosimplicialSVS, Error> {
        let p = self.p;
        check_prime(p)?;
        let dims = grid_dims(&self.dims)?;
        let (tn, tq) = (dims.len() - 1, dims[0].len() - 1);
        let d = |n: usize, q: usize| dims[n][q];
        let nf = |k: usize| if k == 0 { 0 } else { k + 1 };
        let cof = grid_ops(p, &self.coface, (tn + 1, tq + 1), &|n, _| nf(n), &|n, q| (d(n, q), if n == 0 { 0 } else { d(n - 1, q) }), "coface")?;
        let cod = grid_ops(p, &self.codegen, (tn, tq + 1), &|n, _| n + 1, &|n, q| (d(n, q), d(n + 1, q)), "codegen")?;
        let face = grid_ops(p, &self.face, (tn + 1, tq + 1), &|_, q| nf(q), &|n, q| (if q == 0 { 0 } else { d(n, q - 1) }, d(n, q)), "face")?;
        let degen = grid_ops(p, &self.degen, (tn + 1, tq), &|_, q| q + 1, &|n, q| (d(n, q + 1), d(n, q)), "degen")?;
        let levels = (0..=tn).map(|n| crate::simplicial::SimplicialVS { p, dims: dims[n].clone(), faces: face[n].clone(), degens: degen[n].clone() }).collect();
        let x = CosimplicialSVS { p, levels, cofaces: cof.iter().map(|c| transpose_qi(c)).collect(), codegens: cod.iter().map(|c| transpose_qi(c)).collect() };
        x.validate()?;
        Ok(x)
    }
}

/// `[i][q] -> [q][i]`.
fn transpose_iq(v: Option<&Vec<Vec<Mat>>>) -> Vec<Vec<Mat>> {
    let Some(v) = v else { return vec![] };
    let qn = v.first().map_or(0, |x| x.len());
    (0..qn).map(|q| v.iter().map(|l| l[q].clone()).collect()).collect()
}

/// `[q][i] -> [i][q]`.
fn transpose_qi(v: &[Vec<Mat>]) -> Vec<Vec<Mat>> {
    let ni = v.first().map_or(0, |x| x.len());
    (0..ni).map(|i| v.iter().map(|l| l[i].clone()).collect()).collect()
}

/// Any of the accepted input documents.
pub enum Input {
    Bicomplex(Bicomplex),
    Bisimplicial(BisimplicialVS),
    Cochain(CochainBicomplex),
    Cosimplicial(CosimplicialSVS),
}

pub fn parse_input(text: &str) -> Result<Input, Error> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("not JSON: {e}")))?;
    let kind = v.get("kind").and_then(|k| k.as_str()).unwrap_or("bicomplex").to_string();
    let de = |e: serde_json::Error| Error::Invalid(format!("schema: {e}"));
    match kind.as_str() {
        "bicomplex" => Ok(Input::Bicomplex(serde_json::from_value::<BicomplexJson>(v).map_err(de)?.to_bicomplex()?)),
        "bisimplicial" => Ok(Input::Bisimplicial(serde_json::from_value::<BisimplicialJson>(v).map_err(de)?.to_bisimplicial()?)),
        "cochain" => Ok(Input::Cochain(serde_json::from_value::<CochainJson>(v).map_err(de)?.to_cochain()?)),
        "cosimplicial" => Ok(Input::Cosimplicial(serde_json::from_value::<CosimplicialJson>(v).map_err(de)?.to_cosimplicial()?)),
        k => Err(Error::Invalid(format!("unknown kind {k:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageRow {
    pub r: usize,
    pub n: i64,
    pub p: i64,
    pub dim: usize,
    pub rank_d_out: usize,
}

/// Nonzero entries of every page, ordered by `(r, n, p)`.
pub fn page_rows(pages: &[Page]) -> Vec<PageRow> {
    let mut out = Vec::new();
    for pg in pages {
        for (&(n, p), &dim) in &pg.dims {
            if dim > 0 {
                out.push(PageRow { r: pg.r, n, p, dim, rank_d_out: pg.rank((n, p)) });
            }
        }
    }
    out
}

pub fn pages_tsv(pages: &[Page]) -> String {
    let mut s = String::from("r\tn\tp\tdim\trank_d_out\n");
    for row in page_rows(pages) {
        s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", row.r, row.n, row.p, row.dim, row.rank_d_out));
    }
    s
}

/// Page chart: one node per nonzero entry, an edge per nonzero differential.
pub fn pages_dot(pages: &[Page]) -> String {
    let mut s = String::from("digraph pages {\n  rankdir=LR;\n");
    for pg in pages {
        s.push_str(&format!("  subgraph cluster_{} {{\n    label=\"E{}\";\n", pg.r, pg.r));
        for (&(n, p), &d) in &pg.dims {
            if d > 0 {
                s.push_str(&format!("    \"{}_{}_{}\" [label=\"({n},{p}) dim {d}\"];\n", pg.r, n, p));
            }
        }
        for (&x, m) in &pg.diffs {
            let rank = m.rank();
            if rank > 0 {
                let y = pg.target(x);
                s.push_str(&format!("    \"{}_{}_{}\" -> \"{}_{}_{}\" [label=\"rank {rank}\"];\n", pg.r, x.0, x.1, pg.r, y.0, y.1));
            }
        }
        s.push_str("  }\n");
    }
    s.push_str("}\n");
    s
}

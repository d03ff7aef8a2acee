//! Permutahedra as face lattices of ordered partitions, their order complexes,
//! the facet gluing of the boundary and the labelling of obstruction facets.

use crate::iso::{iso_check_capped, verify_iso};
use crate::simplex_cat::{ordered_partitions, render_word};
use crate::sset::{nerve, product, HomologyGroup, Ring, SSet, Simp, UnionFind};
use crate::Error;
use serde::Serialize;
use std::collections::HashMap;

/// Ordered partition, blocks sorted internally.
pub type Partition = Vec<Vec<usize>>;

pub fn render_partition(p: &Partition) -> String {
    let sep = if p.iter().flatten().any(|&x| x > 9) { "," } else { "" };
    p.iter().map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)).collect::<Vec<_>>().join("|")
}

/// `fine` is obtained from `coarse` by splitting blocks in order.
pub fn refines(fine: &Partition, coarse: &Partition) -> bool {
    let mut i = 0;
    for b in coarse {
        let mut acc: Vec<usize> = Vec::new();
        while acc.len() < b.len() && i < fine.len() {
            acc.extend(&fine[i]);
            i += 1;
        }
        acc.sort_unstable();
        if &acc != b {
            return false;
        }
    }
    i == fine.len()
}

/// Ordered partitions of an arbitrary label set, coarsest first.
pub fn partitions_of(set: &[usize]) -> Vec<Partition> {
    let mut out = Vec::new();
    for b in 1..=set.len() {
        for p in ordered_partitions(set.len(), b) {
            out.push(p.into_iter().map(|blk| blk.into_iter().map(|i| set[i]).collect()).collect());
        }
    }
    out
}

/// Face lattice of the permutahedron on `{0..=n}`.
#[derive(Clone, Debug, Serialize)]
pub struct FaceLattice {
    pub n: usize,
    /// `faces[k]` are the k-faces.
    pub faces: Vec<Vec<Partition>>,
    /// `(k, lower, upper)`: a k-face covered by a (k+1)-face.
    pub covers: Vec<(usize, usize, usize)>,
}

impl FaceLattice {
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(|v| v.len()).collect()
    }
}

pub fn face_lattice(n: usize) -> FaceLattice {
    let faces: Vec<Vec<Partition>> = (0..=n).map(|k| ordered_partitions(n + 1, n + 1 - k).into_iter().collect()).collect();
    let mut covers = Vec::new();
    for k in 0..n {
        for (i, lo) in faces[k].iter().enumerate() {
            for (j, hi) in faces[k + 1].iter().enumerate() {
                if refines(lo, hi) {
                    covers.push((k, i, j));
                }
            }
        }
    }
    FaceLattice { n, faces, covers }
}

/// Nerve of the face poset of the permutahedron on `set`, coarser faces first.
/// Returns the complex and the partition of each vertex.
pub fn order_complex_on(set: &[usize]) -> (SSet, Vec<Partition>) {
    let parts = partitions_of(set);
    let names: Vec<String> = parts.iter().map(render_partition).collect();
    let s = nerve(&names, |a, b| a != b && parts[a].len() < parts[b].len() && refines(&parts[b], &parts[a]), ",");
    (s, parts)
}

pub fn order_complex(n: usize) -> SSet {
    order_complex_on(&(0..=n).collect::<Vec<_>>()).0
}

/// Order complex of the boundary: chains avoiding the top face, pointed at
/// the ascending all-singleton vertex.
pub fn boundary_complex(n: usize) -> SSet {
    let (oc, parts) = order_complex_on(&(0..=n).collect::<Vec<_>>());
    let keep: Vec<Vec<bool>> = (0..oc.names.len()).map(|d| (0..oc.count(d)).map(|c| !oc.vertices_of(d, c).contains(&0)).collect()).collect();
    let (mut b, index) = oc.subcomplex(&keep).unwrap();
    let base: Partition = (0..=n).map(|i| vec![i]).collect();
    b.basepoint = parts.iter().position(|p| *p == base).map(|v| index[0][v]);
    b
}

#[derive(Clone, Debug, Serialize)]
pub struct CoequalizerReport {
    pub n: usize,
    pub facets: usize,
    pub triples: usize,
    pub f_vector: Vec<usize>,
    /// Every glued class carries exactly one chain of faces and vice versa.
    pub classes_match_chains: bool,
    pub well_defined: bool,
    /// The class-to-chain map is a face-commuting bijection onto the boundary complex.
    pub explicit_iso: bool,
    /// Independent search result; `None` above the size cap.
    pub searched_iso: Option<bool>,
    pub homology: Vec<HomologyGroup>,
    pub sphere_homology: bool,
    pub pass: bool,
}

/// Split a vertex index of `product(x, y)` into factor vertices.
fn product_vertex(ny0: usize, v: usize) -> (usize, usize) {
    (v / ny0, v % ny0)
}

fn concat(a: &Partition, b: &Partition) -> Partition {
    a.iter().chain(b.iter()).cloned().collect()
}

/// Glue the boundary from facet products along triple products and compare it
/// with the order complex of the boundary.
pub fn boundary_coequalizer_check(n: usize) -> Result<CoequalizerReport, Error> {
    if !(1..=4).contains(&n) {
        return Err(Error::Invalid(format!("boundary gluing supported for 1 <= n <= 4, got {n}")));
    }
    // facets and their cells, keyed by the pair chain
    let mut facet_id: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
    let mut facet_prod: Vec<SSet> = Vec::new();
    let mut cell_key: Vec<HashMap<Vec<(Partition, Partition)>, (usize, usize)>> = Vec::new();
    let mut offsets: Vec<Vec<usize>> = Vec::new();
    let mut chains: Vec<Vec<Partition>> = Vec::new();
    for q in ordered_partitions(n + 1, 2) {
        let (o1, p1) = order_complex_on(&q[0]);
        let (o2, p2) = order_complex_on(&q[1]);
        let prod = product(&o1, &o2);
        let mut keys = HashMap::new();
        let mut off = Vec::new();
        for d in 0..prod.names.len() {
            off.push(chains.len());
            for c in 0..prod.count(d) {
                let pairs: Vec<(Partition, Partition)> = prod
                    .vertices_of(d, c)
                    .into_iter()
                    .map(|v| {
                        let (a, b) = product_vertex(o2.count(0), v);
                        (p1[a].clone(), p2[b].clone())
                    })
                    .collect();
                chains.push(pairs.iter().map(|(a, b)| concat(a, b)).collect());
                keys.insert(pairs, (d, c));
            }
        }
        facet_id.insert((q[0].clone(), q[1].clone()), facet_prod.len());
        facet_prod.push(prod);
        cell_key.push(keys);
        offsets.push(off);
    }
    let global = |f: usize, d: usize, c: usize| offsets[f][d] + c;
    let mut uf = UnionFind::new(chains.len());
    let triples = ordered_partitions(n + 1, 3);
    for q in &triples {
        let (o1, p1) = order_complex_on(&q[0]);
        let (o2, p2) = order_complex_on(&q[1]);
        let (o3, p3) = order_complex_on(&q[2]);
        let t = product(&product(&o1, &o2), &o3);
        let mut q23 = [q[1].clone(), q[2].clone()].concat();
        q23.sort_unstable();
        let mut q12 = [q[0].clone(), q[1].clone()].concat();
        q12.sort_unstable();
        let f1 = facet_id[&(q[0].clone(), q23)];
        let f2 = facet_id[&(q12, q[2].clone())];
        for d in 0..t.names.len() {
            for c in 0..t.count(d) {
                let trip: Vec<(&Partition, &Partition, &Partition)> = t
                    .vertices_of(d, c)
                    .into_iter()
                    .map(|v| {
                        let (u, k) = product_vertex(o3.count(0), v);
                        let (i, j) = product_vertex(o2.count(0), u);
                        (&p1[i], &p2[j], &p3[k])
                    })
                    .collect();
                let a1: Vec<(Partition, Partition)> = trip.iter().map(|(x, y, z)| ((*x).clone(), concat(y, z))).collect();
                let a2: Vec<(Partition, Partition)> = trip.iter().map(|(x, y, z)| (concat(x, y), (*z).clone())).collect();
                let (d1, c1) = cell_key[f1][&a1];
                let (d2, c2) = cell_key[f2][&a2];
                uf.union(global(f1, d1, c1), global(f2, d2, c2));
            }
        }
    }
    // classes against chains
    let mut root_chain: HashMap<usize, &Vec<Partition>> = HashMap::new();
    let mut chain_root: HashMap<&Vec<Partition>, usize> = HashMap::new();
    let mut classes_match_chains = true;
    for (g, ch) in chains.iter().enumerate() {
        let r = uf.find(g);
        if *root_chain.entry(r).or_insert(ch) != ch || *chain_root.entry(ch).or_insert(r) != r {
            classes_match_chains = false;
        }
    }
    // quotient complex: one cell per class
    let mut class_index: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut glued = SSet::empty();
    let mut rep: Vec<Vec<(usize, usize)>> = Vec::new();
    for (f, prod) in facet_prod.iter().enumerate() {
        for d in 0..prod.names.len() {
            for c in 0..prod.count(d) {
                let r = uf.find(global(f, d, c));
                if class_index.contains_key(&r) {
                    continue;
                }
                while glued.names.len() <= d {
                    glued.names.push(vec![]);
                    glued.faces.push(vec![]);
                    rep.push(vec![]);
                }
                class_index.insert(r, (d, glued.names[d].len()));
                glued.names[d].push(chains[global(f, d, c)].iter().map(render_partition).collect::<Vec<_>>().join(","));
                rep[d].push((f, c));
            }
        }
    }
    let face_classes = |uf: &mut UnionFind, f: usize, d: usize, c: usize| -> Vec<Simp> {
        facet_prod[f].faces[d][c]
            .iter()
            .map(|s| {
                let (bd, bc) = class_index[&uf.find(global(f, s.base_dim(), s.cell))];
                debug_assert_eq!(bd, s.base_dim());
                Simp { dim: s.dim, deg: s.deg, cell: bc }
            })
            .collect()
    };
    for d in 0..glued.names.len() {
        for &(f, c) in &rep[d].clone() {
            let fs = face_classes(&mut uf, f, d, c);
            glued.faces[d].push(fs);
        }
    }
    let mut well_defined = true;
    for (f, prod) in facet_prod.iter().enumerate() {
        for d in 1..prod.names.len() {
            for c in 0..prod.count(d) {
                let (_, k) = class_index[&uf.find(global(f, d, c))];
                if face_classes(&mut uf, f, d, c) != glued.faces[d][k] {
                    well_defined = false;
                }
            }
        }
    }
    glued.validate()?;
    // compare with the boundary complex through chains
    let target = boundary_complex(n);
    let tparts = partitions_of(&(0..=n).collect::<Vec<_>>());
    let tverts: Vec<Partition> = {
        // boundary_complex drops the top vertex 0
        tparts[1..].to_vec()
    };
    let mut tcell: HashMap<Vec<Partition>, usize> = HashMap::new();
    for d in 0..target.names.len() {
        for c in 0..target.count(d) {
            tcell.insert(target.vertices_of(d, c).into_iter().map(|v| tverts[v].clone()).collect(), c);
        }
    }
    let mut explicit_iso = classes_match_chains && well_defined && glued.f_vector() == target.f_vector();
    let mut map: Vec<Vec<usize>> = Vec::new();
    if explicit_iso {
        for d in 0..glued.names.len() {
            let mut v = Vec::new();
            for &(f, c) in &rep[d] {
                match tcell.get(&chains[global(f, d, c)]) {
                    Some(&t) => v.push(t),
                    None => explicit_iso = false,
                }
            }
            map.push(v);
        }
        explicit_iso = explicit_iso && verify_iso(&glued, &target, &map);
    }
    let searched_iso = match iso_check_capped(&glued, &target, crate::iso::DEFAULT_CAP) {
        Ok(r) => Some(r.is_some()),
        Err(Error::TooLarge(_)) => None,
        Err(e) => return Err(e),
    };
    let homology = glued.homology(Ring::Z)?;
    let sphere_homology = homology.iter().enumerate().all(|(d, h)| {
        let want = match (n, d) {
            (1, 0) => 2,
            (_, 0) => 1,
            (_, d) if d == n - 1 => 1,
            _ => 0,
        };
        h.betti == want && h.torsion.is_empty()
    }) && homology.len() == n;
    let pass = classes_match_chains && well_defined && explicit_iso && searched_iso != Some(false) && sphere_homology;
    Ok(CoequalizerReport {
        n,
        facets: facet_prod.len(),
        triples: triples.len(),
        f_vector: glued.f_vector(),
        classes_match_chains,
        well_defined,
        explicit_iso,
        searched_iso,
        homology,
        sphere_homology,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Label {
    Zero,
    Coherence,
    Choice { stage: usize, new: bool },
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Zero => write!(f, "zero"),
            Label::Coherence => write!(f, "coherence"),
            Label::Choice { stage, new } => write!(f, "choice(stage {stage}{})", if *new { ", new" } else { "" }),
        }
    }
}

/// One facet `(theta')(theta'')` of the boundary for `theta = d0 d1 .. d_r`.
#[derive(Clone, Debug, Serialize)]
pub struct FacetLabel {
    /// Letters removed by the right factor.
    pub right_block: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// With the first `d0` of the right factor written as `f`.
    pub display: String,
    pub label: Label,
}

pub fn label_obstruction_boundary(n: usize, r: usize) -> Result<Vec<FacetLabel>, Error> {
    if r < 2 || n < r {
        return Err(Error::Invalid(format!("need r >= 2 and n >= r, got n={n}, r={r}")));
    }
    let mut out = Vec::new();
    for part in ordered_partitions(r + 1, 2) {
        let (lb, rb) = (&part[0], &part[1]);
        // the left factor acts after the right one has removed `rb`
        let left: Vec<usize> = lb.iter().map(|&x| x - rb.iter().filter(|&&y| y < x).count()).collect();
        let right = rb.clone();
        let label = if !rb.contains(&0) {
            Label::Zero
        } else if rb.len() == 1 {
            Label::Coherence
        } else {
            let stage = if rb.contains(&1) { rb.len() } else { rb.len() - 1 };
            Label::Choice { stage, new: stage == r }
        };
        let display = if rb.contains(&0) {
            let psi: Vec<usize> = rb[1..].iter().map(|x| x - 1).collect();
            let psi = if psi.is_empty() { String::new() } else { render_word(&psi) };
            format!("({})({psi}f)", render_word(&left))
        } else {
            format!("({})({})", render_word(&left), render_word(&right))
        };
        out.push(FacetLabel { right_block: rb.clone(), left, right, display, label });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct DualWitness {
    pub sset: SSet,
    pub top_cells: usize,
    pub gluings: usize,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// One `(r+1)`-simplex per vertex of the permutahedron, glued along facet
/// `d_{t+1}` for each edge swapping positions `t` and `t+1`.
pub fn dual_witness_complex(r: usize) -> Result<DualWitness, Error> {
    if !(1..=3).contains(&r) {
        return Err(Error::Invalid(format!("dual complex supported for 1 <= r <= 3, got {r}")));
    }
    let perms = permutations(r + 1);
    let pindex: HashMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let nv = r + 2;
    let nsub = 1usize << nv;
    let id = |p: usize, s: usize| p * nsub + s;
    let mut uf = UnionFind::new(perms.len() * nsub);
    let mut gluings = 0;
    for (i, p) in perms.iter().enumerate() {
        for t in 0..r {
            let mut q = p.clone();
            q.swap(t, t + 1);
            let j = pindex[&q];
            if j < i {
                continue;
            }
            gluings += 1;
            for s in 1..nsub {
                if s >> (t + 1) & 1 == 0 {
                    uf.union(id(i, s), id(j, s));
                }
            }
        }
    }
    let mut sset = SSet { names: vec![vec![]; nv], faces: vec![vec![]; nv], basepoint: None };
    let mut cell_of: HashMap<usize, usize> = HashMap::new();
    let word = |p: &Vec<usize>| p.iter().map(|x| x.to_string()).collect::<String>();
    for d in 0..nv {
        for (i, p) in perms.iter().enumerate() {
            for s in (1..nsub).filter(|s| s.count_ones() as usize == d + 1) {
                let root = uf.find(id(i, s));
                if cell_of.contains_key(&root) {
                    continue;
                }
                cell_of.insert(root, sset.names[d].len());
                let verts: String = (0..nv).filter(|k| s >> k & 1 == 1).map(|k| k.to_string()).collect();
                sset.names[d].push(format!("{}:{verts}", word(p)));
                let mut fs = Vec::new();
                if d > 0 {
                    let bits: Vec<usize> = (0..nv).filter(|k| s >> k & 1 == 1).collect();
                    for &b in &bits {
                        let f = uf.find(id(i, s & !(1 << b)));
                        fs.push(Simp::nd(d - 1, cell_of[&f]));
                    }
                }
                sset.faces[d].push(fs);
            }
        }
    }
    sset.validate()?;
    Ok(DualWitness { top_cells: sset.count(r + 1), sset, gluings })
}

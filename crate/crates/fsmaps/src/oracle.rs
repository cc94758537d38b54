//! Brute-force enumeration of maps in the permutational model.
//!
//! Half-edges are grouped into faces by a fixed permutation `φ`: `n` rooted
//! boundary faces of lengths `L_i` followed by unrooted internal faces of the
//! prescribed degrees.  Every fixed-point-free involution `α` (an edge
//! gluing) gives a map with vertex permutation `σ = (α∘φ)^{−1}`.  Summing
//! `1/(Π_d r_d!·Π_m k_m)` over all gluings, where `r_d` internal faces have
//! degree `d`, counts rooted maps with unlabeled internal faces.
//!
//! A map is *simple* when no boundary visits a vertex twice, and *fully
//! simple* when in addition no two boundaries share a vertex: the boundary
//! half-edges lie in pairwise distinct cycles of `σ` (within each boundary,
//! respectively across all boundaries).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{factorial, Rat};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OracleError {
    #[error("{size} half-edges exceed the enumeration cap {cap}")]
    Cap { size: usize, cap: usize },
    #[error("face lengths must be positive")]
    EmptyFace,
}

/// Default cap on the number of half-edges.
pub const DEFAULT_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Class {
    Ordinary,
    Simple,
    FullySimple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Connectivity {
    /// A single connected surface.
    Connected,
    /// Every connected component contains at least one boundary.
    BoundaryConnected,
}

/// Labeled half-edges with their face permutation.
#[derive(Clone, Debug)]
pub struct HalfEdgeSet {
    pub boundaries: Vec<u32>,
    pub internal: Vec<u32>,
    /// `φ(h)`.
    pub phi: Vec<usize>,
    /// Boundary index of each half-edge, `None` for internal faces.
    pub boundary_of: Vec<Option<usize>>,
    /// Face index of each half-edge (boundaries first).
    pub face_of: Vec<usize>,
}

impl HalfEdgeSet {
    pub fn new(boundaries: &[u32], internal: &[u32]) -> Result<Self, OracleError> {
        let mut phi = vec![];
        let mut boundary_of = vec![];
        let mut face_of = vec![];
        for (f, &len) in boundaries.iter().chain(internal.iter()).enumerate() {
            if len == 0 {
                return Err(OracleError::EmptyFace);
            }
            let start = phi.len();
            for j in 0..len as usize {
                phi.push(start + (j + 1) % len as usize);
                boundary_of.push(if f < boundaries.len() { Some(f) } else { None });
                face_of.push(f);
            }
        }
        Ok(HalfEdgeSet {
            boundaries: boundaries.to_vec(),
            internal: internal.to_vec(),
            phi,
            boundary_of,
            face_of,
        })
    }
    pub fn len(&self) -> usize {
        self.phi.len()
    }
    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }
    /// `Π_d r_d! · Π_m k_m` for the internal faces.
    pub fn relabel_factor(&self) -> BigInt {
        let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
        let mut acc = BigInt::from(1);
        for &k in &self.internal {
            *mult.entry(k).or_default() += 1;
            acc *= BigInt::from(k);
        }
        for r in mult.values() {
            acc *= factorial(*r);
        }
        acc
    }
}

/// A map: an edge involution on a half-edge set.
#[derive(Clone, Debug)]
pub struct CombMap<'a> {
    pub half_edges: &'a HalfEdgeSet,
    pub alpha: Vec<usize>,
}

/// Topological data of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapData {
    /// Sum of the genera of the connected components.
    pub genus: u32,
    pub components: usize,
    /// Every component carries at least one boundary.
    pub boundary_connected: bool,
    pub class: Class,
}

impl<'a> CombMap<'a> {
    /// Vertex labels: cycles of `σ = (α∘φ)^{−1}` (same cycles as `α∘φ`).
    pub fn vertices(&self) -> (Vec<usize>, usize) {
        let n = self.alpha.len();
        let mut vid = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if vid[s] != usize::MAX {
                continue;
            }
            let mut h = s;
            while vid[h] == usize::MAX {
                vid[h] = count;
                h = self.alpha[self.half_edges.phi[h]];
            }
            count += 1;
        }
        (vid, count)
    }

    /// Classification from the σ-cycles of boundary half-edges.
    pub fn classify_with(&self, vid: &[usize]) -> Class {
        let he = self.half_edges;
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut simple = true;
        let mut fully = true;
        for h in 0..he.len() {
            if let Some(b) = he.boundary_of[h] {
                if let Some(&other) = seen.get(&vid[h]) {
                    fully = false;
                    if other == b {
                        simple = false;
                    }
                } else {
                    seen.insert(vid[h], b);
                }
            }
        }
        // a vertex shared inside one boundary may hide behind one shared across boundaries
        if !fully && simple {
            let mut per: HashMap<(usize, usize), usize> = HashMap::new();
            for h in 0..he.len() {
                if let Some(b) = he.boundary_of[h] {
                    let c = per.entry((b, vid[h])).or_default();
                    *c += 1;
                    if *c > 1 {
                        simple = false;
                    }
                }
            }
        }
        if fully {
            Class::FullySimple
        } else if simple {
            Class::Simple
        } else {
            Class::Ordinary
        }
    }

    pub fn classify(&self) -> Class {
        let (vid, _) = self.vertices();
        self.classify_with(&vid)
    }

    pub fn data(&self) -> MapData {
        let he = self.half_edges;
        let n = self.alpha.len();
        let (vid, nv) = self.vertices();
        // components through faces and edges
        let nf = he.boundaries.len() + he.internal.len();
        let mut parent: Vec<usize> = (0..nf).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for h in 0..n {
            let a = find(&mut parent, he.face_of[h]);
            let b = find(&mut parent, he.face_of[self.alpha[h]]);
            if a != b {
                parent[a] = b;
            }
        }
        let mut comp_of_face = vec![0; nf];
        let mut ids: HashMap<usize, usize> = HashMap::new();
        for (f, c) in comp_of_face.iter_mut().enumerate() {
            let r = find(&mut parent, f);
            let len = ids.len();
            *c = *ids.entry(r).or_insert(len);
        }
        let nc = ids.len();
        let mut v = vec![0i64; nc];
        let mut e2 = vec![0i64; nc];
        let mut fcount = vec![0i64; nc];
        let mut has_boundary = vec![false; nc];
        for (f, &c) in comp_of_face.iter().enumerate() {
            fcount[c] += 1;
            if f < he.boundaries.len() {
                has_boundary[c] = true;
            }
        }
        let mut vseen = vec![false; nv];
        for h in 0..n {
            let c = comp_of_face[he.face_of[h]];
            e2[c] += 1;
            if !vseen[vid[h]] {
                vseen[vid[h]] = true;
                v[c] += 1;
            }
        }
        let mut genus = 0;
        for c in 0..nc {
            let chi = v[c] - e2[c] / 2 + fcount[c];
            genus += ((2 - chi) / 2) as u32;
        }
        MapData {
            genus,
            components: nc,
            boundary_connected: has_boundary.iter().all(|&b| b),
            class: self.classify_with(&vid),
        }
    }
}

/// Weighted counts keyed by `(genus, class, connectivity)`; classes and
/// connectivities are inclusive (a fully simple connected map is counted in
/// every coarser bin).
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Census {
    #[serde(serialize_with = "ser_cells")]
    pub cells: BTreeMap<(u32, Class, Connectivity), Rat>,
}

fn ser_cells<S: serde::Serializer>(m: &BTreeMap<(u32, Class, Connectivity), Rat>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for ((g, c, k), w) in m {
        seq.serialize_element(&(g, c, k, crate::exact::rat_to_string(w)))?;
    }
    seq.end()
}

impl Census {
    pub fn get(&self, genus: u32, class: Class, conn: Connectivity) -> Rat {
        self.cells.get(&(genus, class, conn)).cloned().unwrap_or_else(Rat::zero)
    }
    /// CSV rows `genus,class,connectivity,weight`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("genus,class,connectivity,weight\n");
        for ((g, c, k), w) in &self.cells {
            s.push_str(&format!("{g},{c:?},{k:?},\"{}\"\n", crate::exact::rat_to_string(w)));
        }
        s
    }
}

type Tally = HashMap<(u32, Class, Connectivity), u64>;

fn record(t: &mut Tally, d: &MapData) {
    let classes: &[Class] = match d.class {
        Class::FullySimple => &[Class::Ordinary, Class::Simple, Class::FullySimple],
        Class::Simple => &[Class::Ordinary, Class::Simple],
        Class::Ordinary => &[Class::Ordinary],
    };
    for &c in classes {
        if d.components == 1 {
            *t.entry((d.genus, c, Connectivity::Connected)).or_default() += 1;
        }
        if d.boundary_connected {
            *t.entry((d.genus, c, Connectivity::BoundaryConnected)).or_default() += 1;
        }
    }
}

fn walk(he: &HalfEdgeSet, alpha: &mut Vec<usize>, tally: &mut Tally) {
    let Some(i) = alpha.iter().position(|&a| a == usize::MAX) else {
        let m = CombMap {
            half_edges: he,
            alpha: alpha.clone(),
        };
        record(tally, &m.data());
        return;
    };
    for j in i + 1..alpha.len() {
        if alpha[j] != usize::MAX {
            continue;
        }
        alpha[i] = j;
        alpha[j] = i;
        walk(he, alpha, tally);
        alpha[i] = usize::MAX;
        alpha[j] = usize::MAX;
    }
}

/// Enumerates all gluings of the given boundaries and internal faces.
pub fn enumerate(boundaries: &[u32], internal: &[u32], cap: usize) -> Result<Census, OracleError> {
    let he = HalfEdgeSet::new(boundaries, internal)?;
    let n = he.len();
    if n > cap {
        return Err(OracleError::Cap { size: n, cap });
    }
    let mut census = Census::default();
    if n % 2 == 1 || n == 0 {
        return Ok(census);
    }
    let tallies: Vec<Tally> = (1..n)
        .into_par_iter()
        .map(|j| {
            let mut alpha = vec![usize::MAX; n];
            alpha[0] = j;
            alpha[j] = 0;
            let mut t = Tally::new();
            walk(&he, &mut alpha, &mut t);
            t
        })
        .collect();
    let mut total = Tally::new();
    for t in tallies {
        for (k, v) in t {
            *total.entry(k).or_default() += v;
        }
    }
    let rel = he.relabel_factor();
    for (k, v) in total {
        census.cells.insert(k, Rat::new(BigInt::from(v), rel.clone()));
    }
    Ok(census)
}

/// Quadrangulations: `quads` internal faces of degree four.
pub fn quad_census(boundaries: &[u32], quads: usize, cap: usize) -> Result<Census, OracleError> {
    enumerate(boundaries, &vec![4; quads], cap)
}

/// Connected ordinary counts with no internal faces, per genus (GUE cumulants).
pub fn gue_census(boundaries: &[u32], cap: usize) -> Result<BTreeMap<u32, Rat>, OracleError> {
    let c = enumerate(boundaries, &[], cap)?;
    Ok(c.cells
        .iter()
        .filter(|((_, cl, k), _)| *cl == Class::Ordinary && *k == Connectivity::Connected)
        .map(|((g, _, _), w)| (*g, w.clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn disks_and_classification() {
        let c = quad_census(&[2], 1, 16).unwrap();
        assert_eq!(c.get(0, Class::Ordinary, Connectivity::Connected), rat(2, 1));
        let c = quad_census(&[2], 0, 16).unwrap();
        assert_eq!(c.get(0, Class::Ordinary, Connectivity::Connected), rat(1, 1));
        assert_eq!(c.get(1, Class::Ordinary, Connectivity::Connected), rat(0, 1));
        // the degenerate 2-gon is simple
        assert_eq!(c.get(0, Class::FullySimple, Connectivity::Connected), rat(1, 1));
        let c = quad_census(&[2, 2], 2, 16).unwrap();
        assert_eq!(c.get(0, Class::FullySimple, Connectivity::Connected), rat(6, 1));
    }

    #[test]
    fn two_loops_sharing_a_vertex() {
        let he = HalfEdgeSet::new(&[1, 1], &[]).unwrap();
        let m = CombMap {
            half_edges: &he,
            alpha: vec![1, 0],
        };
        assert_eq!(m.classify(), Class::Simple);
    }

    #[test]
    fn gue_counts() {
        let g = gue_census(&[4], 16).unwrap();
        assert_eq!(g[&0], rat(2, 1));
        assert_eq!(g[&1], rat(1, 1));
        let g = gue_census(&[6], 16).unwrap();
        assert_eq!(g[&0], rat(5, 1));
        assert_eq!(g[&1], rat(10, 1));
    }

    #[test]
    fn single_boundary_simple_equals_fully_simple() {
        let c = quad_census(&[4], 2, 16).unwrap();
        for g in 0..2 {
            assert_eq!(
                c.get(g, Class::Simple, Connectivity::Connected),
                c.get(g, Class::FullySimple, Connectivity::Connected)
            );
        }
    }
}

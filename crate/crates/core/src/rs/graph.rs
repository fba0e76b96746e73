//! `G(A)`: the tripartite graph of a `k = 3` linjection, its triangles and
//! G-stars; `H(A)`: the `(k-1)`-uniform hypergraph for general `k`.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{find_stars, Dims, GraphFunctionTable, Point, PointSet, Star};

/// Triangle `⟨x, y, b⟩` with `x ∈ R`, `y ∈ C`, `b ∈ W`.
pub type Triangle = [u32; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripartiteGraph {
    /// `[|R|, |C|, |W|]`.
    pub parts: [u32; 3],
    pub edges: TripartiteEdges,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripartiteEdges {
    #[serde(rename = "RC")]
    pub rc: BTreeSet<(u32, u32)>,
    #[serde(rename = "RW")]
    pub rw: BTreeSet<(u32, u32)>,
    #[serde(rename = "CW")]
    pub cw: BTreeSet<(u32, u32)>,
}

impl TripartiteGraph {
    /// Adds the triangle of every point in `s`.
    pub fn from_points(s: &PointSet) -> Result<Self> {
        let d = s.dims();
        if d.k != 3 {
            return Err(Error::Config(format!("G(A) is for k = 3 (got k = {}); use H(A)", d.k)));
        }
        let mut edges = TripartiteEdges::default();
        for p in s {
            let [x, y, b] = [p.0[0], p.0[1], p.0[2]];
            edges.rc.insert((x, y));
            edges.rw.insert((x, b));
            edges.cw.insert((y, b));
        }
        Ok(TripartiteGraph {
            parts: [d.n, d.n, d.range],
            edges,
        })
    }

    pub fn is_triangle(&self, [x, y, b]: Triangle) -> bool {
        self.edges.rc.contains(&(x, y)) && self.edges.rw.contains(&(x, b)) && self.edges.cw.contains(&(y, b))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.rc.len() + self.edges.rw.len() + self.edges.cw.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// `G(A)` of a linjection.
pub fn build_tripartite(f: &GraphFunctionTable) -> Result<TripartiteGraph> {
    if f.k() != 3 {
        return Err(Error::Config(format!("G(A) is for k = 3 (got k = {}); use H(A)", f.k())));
    }
    TripartiteGraph::from_points(&f.accepted_set())
}

/// All triangles of `g`, split by whether `A(x, y) = b`.
pub fn enumerate_triangles(g: &TripartiteGraph, f: &GraphFunctionTable) -> (Vec<Triangle>, Vec<Triangle>) {
    let mut by_row: HashMap<u32, Vec<u32>> = HashMap::new();
    for &(x, b) in &g.edges.rw {
        by_row.entry(x).or_default().push(b);
    }
    let (mut trivial, mut nontrivial) = (Vec::new(), Vec::new());
    for &(x, y) in &g.edges.rc {
        for &b in by_row.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if g.edges.cw.contains(&(y, b)) {
                if f.value(&[x, y]) == b {
                    trivial.push([x, y, b]);
                } else {
                    nontrivial.push([x, y, b]);
                }
            }
        }
    }
    trivial.sort_unstable();
    nontrivial.sort_unstable();
    (trivial, nontrivial)
}

/// Every `⟨x, y, b'⟩, ⟨x', y, b⟩, ⟨x, y', b⟩` in the family with
/// `x' != x`, `y' != y`, `b' != b`.
pub fn g_stars(family: &[Triangle]) -> Vec<[Triangle; 3]> {
    let members: HashSet<Triangle> = family.iter().copied().collect();
    let mut by_column: HashMap<u32, Vec<Triangle>> = HashMap::new();
    let mut by_row_value: HashMap<(u32, u32), Vec<Triangle>> = HashMap::new();
    for &t in &members {
        by_column.entry(t[1]).or_default().push(t);
        by_row_value.entry((t[0], t[2])).or_default().push(t);
    }
    let mut out = Vec::new();
    for &first in &members {
        let [x, y, b_prime] = first;
        for &second in by_column.get(&y).map(Vec::as_slice).unwrap_or(&[]) {
            let [x2, _, b] = second;
            if x2 == x || b == b_prime {
                continue;
            }
            for &third in by_row_value.get(&(x, b)).map(Vec::as_slice).unwrap_or(&[]) {
                if third[1] != y {
                    out.push([first, second, third]);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn triangles_of(s: &PointSet) -> Vec<Triangle> {
    s.iter().map(|p| [p.0[0], p.0[1], p.0[2]]).collect()
}

pub fn points_of(triangles: &[Triangle], n: u32, range: u32) -> Result<PointSet> {
    PointSet::new(Dims::new(3, n, range)?, triangles.iter().map(|t| Point(t.to_vec())))
}

/// `H(A)`: parts `Q_1..Q_{k-1}` (size `n`) and `W` (size `N`). The
/// `Q`-hyperedges form the complete `(k-1)`-partite hypergraph; for every
/// accepted point and every `i < k-1` there is a hyperedge dropping `x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub k: usize,
    pub n: u32,
    pub range: u32,
    /// `incidences[i]`: keys `(x_{-i}, b)` of the hyperedges that skip `Q_i`.
    pub incidences: Vec<HashSet<Vec<u32>>>,
}

impl Hypergraph {
    pub fn hyperedge_count(&self) -> usize {
        (self.n as usize).pow(self.k as u32 - 1) + self.incidences.iter().map(HashSet::len).sum::<usize>()
    }

    fn is_clique(&self, p: &Point) -> bool {
        (0..self.k - 1).all(|i| self.incidences[i].contains(&p.drop_axis(i)))
    }

    /// Every `k`-clique `(x_1..x_{k-1}, b)`, split into trivial ones
    /// (`A(x) = b`) and the rest.
    pub fn cliques(&self, f: &GraphFunctionTable) -> (Vec<Point>, Vec<Point>) {
        let dims = f.dims();
        let (mut trivial, mut other) = (Vec::new(), Vec::new());
        for p in dims.points() {
            if self.is_clique(&p) {
                if f.accepts(&p) {
                    trivial.push(p);
                } else {
                    other.push(p);
                }
            }
        }
        (trivial, other)
    }
}

pub fn build_hypergraph(f: &GraphFunctionTable) -> Result<Hypergraph> {
    let k = f.k();
    if k < 3 {
        return Err(Error::Config("H(A) needs k >= 3".into()));
    }
    let mut incidences = vec![HashSet::new(); k - 1];
    for p in f.accepted_points() {
        for (i, inc) in incidences.iter_mut().enumerate() {
            inc.insert(p.drop_axis(i));
        }
    }
    Ok(Hypergraph {
        k,
        n: f.n(),
        range: f.range(),
        incidences,
    })
}

/// Stars formed by a family of cliques.
pub fn h_stars(family: &[Point], dims: Dims) -> Result<Vec<Star>> {
    Ok(find_stars(&PointSet::new(dims, family.iter().cloned())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;

    #[test]
    fn xor4_graph() {
        let f = AbelianGroup::binary(2).unwrap().table(3).unwrap();
        let g = build_tripartite(&f).unwrap();
        assert_eq!(g.parts, [4, 4, 4]);
        assert_eq!(g.edges.rw.len(), 16);
        let (trivial, nontrivial) = enumerate_triangles(&g, &f);
        assert_eq!(trivial.len(), 16);
        assert!(!nontrivial.is_empty());
        assert!(!g_stars(&trivial).is_empty());
    }

    #[test]
    fn one_by_one_table() {
        let f = GraphFunctionTable::new(3, 1, 1, vec![0]).unwrap();
        let g = build_tripartite(&f).unwrap();
        let (t, nt) = enumerate_triangles(&g, &f);
        assert_eq!((t.len(), nt.len()), (1, 0));
    }

    #[test]
    fn two_triangles_have_no_g_star() {
        assert!(g_stars(&[[0, 0, 0], [1, 0, 1]]).is_empty());
    }

    #[test]
    fn graph_json_shape() {
        let f = GraphFunctionTable::new(3, 1, 2, vec![1]).unwrap();
        let j = build_tripartite(&f).unwrap().to_json();
        assert_eq!(j, r#"{"parts":[1,1,2],"edges":{"RC":[[0,0]],"RW":[[0,1]],"CW":[[0,1]]}}"#);
        assert_eq!(TripartiteGraph::from_json(&j).unwrap().parts, [1, 1, 2]);
    }

    #[test]
    fn hypergraph_matches_tripartite_at_k3() {
        let f = AbelianGroup::binary(2).unwrap().table(3).unwrap();
        let h = build_hypergraph(&f).unwrap();
        let (ht, hn) = h.cliques(&f);
        let (gt, gn) = enumerate_triangles(&build_tripartite(&f).unwrap(), &f);
        let flat = |v: Vec<Point>| -> Vec<Triangle> { v.iter().map(|p| [p.0[0], p.0[1], p.0[2]]).collect() };
        assert_eq!(flat(ht), gt);
        assert_eq!(flat(hn), gn);
    }

    #[test]
    fn k4_trivial_cliques() {
        let f = AbelianGroup::binary(2).unwrap().table(4).unwrap();
        let h = build_hypergraph(&f).unwrap();
        assert_eq!(h.cliques(&f).0.len(), 64);
    }
}

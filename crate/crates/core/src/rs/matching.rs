//! Induced matchings: the value classes of a star-free set, Ruzsa-Szemerédi
//! splitting, and restriction of an RS graph to a large cut.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Dims, Point, PointSet};

pub type Edge = (u32, u32);

/// What "induced" is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Host {
    /// The union of the family's edges.
    Union,
    /// The complete bipartite graph on the family's vertex sets.
    Complete,
}

/// Edge-disjoint matchings between a left and a right vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingFamily {
    pub left: u32,
    pub right: u32,
    pub matchings: Vec<Vec<Edge>>,
    /// The value `b` each matching came from, when it came from a point set.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<u32>,
}

impl MatchingFamily {
    pub fn new(left: u32, right: u32, matchings: Vec<Vec<Edge>>) -> Self {
        MatchingFamily {
            left,
            right,
            matchings,
            labels: Vec::new(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.matchings.iter().map(Vec::len).sum()
    }

    pub fn host(&self) -> HashSet<Edge> {
        self.matchings.iter().flatten().copied().collect()
    }

    /// Checks ranges, that each class is a matching, that classes are edge
    /// disjoint, and that each class is induced in `host`.
    pub fn check(&self, host: Host) -> Result<()> {
        let mut seen = HashSet::new();
        for (i, m) in self.matchings.iter().enumerate() {
            let (mut ls, mut rs) = (HashSet::new(), HashSet::new());
            for &(x, y) in m {
                if x >= self.left || y >= self.right {
                    return Err(Error::Matching(format!("edge ({x},{y}) of class {i} is out of range")));
                }
                if !ls.insert(x) || !rs.insert(y) {
                    return Err(Error::Matching(format!("class {i} is not a matching at edge ({x},{y})")));
                }
                if !seen.insert((x, y)) {
                    return Err(Error::Matching(format!("edge ({x},{y}) is in two classes")));
                }
            }
        }
        let union = self.host();
        for (i, m) in self.matchings.iter().enumerate() {
            for (a, &(x1, y1)) in m.iter().enumerate() {
                for &(x2, y2) in &m[a + 1..] {
                    let joined = match host {
                        Host::Union => union.contains(&(x1, y2)) || union.contains(&(x2, y1)),
                        Host::Complete => true,
                    };
                    if joined {
                        return Err(Error::Matching(format!(
                            "class {i} is not induced: edges ({x1},{y1}) and ({x2},{y2}) are joined"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Groups a line-respecting star-free `k = 3` set by value: class `b` holds
/// the edges `(x, y)` with `(x, y, b) ∈ S`.
pub fn starfree_to_matchings(s: &PointSet) -> Result<MatchingFamily> {
    let d = s.dims();
    if d.k != 3 {
        return Err(Error::Config("matchings come from k = 3 sets".into()));
    }
    let mut by_value: BTreeMap<u32, Vec<Edge>> = BTreeMap::new();
    for p in s {
        by_value.entry(p.0[2]).or_default().push((p.0[0], p.0[1]));
    }
    let (labels, matchings): (Vec<u32>, Vec<Vec<Edge>>) = by_value.into_iter().unzip();
    let family = MatchingFamily {
        left: d.n,
        right: d.n,
        matchings,
        labels,
    };
    family.check(Host::Union)?;
    Ok(family)
}

/// Assigns value `j` to every edge of matching `j`.
pub fn matchings_to_starfree(m: &MatchingFamily) -> Result<PointSet> {
    m.check(Host::Union)?;
    let n = m.left.max(m.right).max(1);
    let range = (m.matchings.len() as u32).max(1);
    let dims = Dims::new(3, n, range)?;
    PointSet::new(
        dims,
        m.matchings
            .iter()
            .enumerate()
            .flat_map(|(j, edges)| edges.iter().map(move |&(x, y)| Point(vec![x, y, j as u32]))),
    )
}

/// Splits each matching into `⌊2|M_i|/r⌋` pieces of `r/2` consecutive edges;
/// leftover edges join the last piece. Needs `Σ|M_i| >= r t` with `t` the
/// number of matchings, which guarantees at least `t` pieces.
pub fn rs_from_matchings(m: &MatchingFamily, r: usize) -> Result<MatchingFamily> {
    if r < 2 || r % 2 == 1 {
        return Err(Error::Config(format!("r = {r} must be even and positive")));
    }
    m.check(Host::Union)?;
    let t = m.matchings.len();
    let mass = m.edge_count();
    if mass < r * t {
        return Err(Error::Precondition(format!(
            "{mass} edges cannot give {t} pieces of {} (need {})",
            r / 2,
            r * t
        )));
    }
    let half = r / 2;
    let mut pieces = Vec::new();
    for edges in &m.matchings {
        let count = 2 * edges.len() / r;
        for c in 0..count {
            let end = if c + 1 == count { edges.len() } else { (c + 1) * half };
            pieces.push(edges[c * half..end].to_vec());
        }
    }
    Ok(MatchingFamily::new(m.left, m.right, pieces))
}

/// An RS-style family on one vertex set, restricted to a cut.
#[derive(Clone, Debug)]
pub struct CutMatchings {
    pub family: MatchingFamily,
    /// Original vertex of each left / right index.
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub cut_edges: usize,
    pub total_edges: usize,
}

/// Finds a cut of the union of `matchings` (on vertices `0..vertices`) by
/// single-vertex local switching from a seeded random start, then restricts
/// every matching to the cut edges, oriented from side A to side B.
pub fn matchings_from_rs(vertices: u32, matchings: &[Vec<Edge>], seed: u64) -> Result<CutMatchings> {
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); vertices as usize];
    let mut total_edges = 0;
    for m in matchings {
        for &(u, v) in m {
            if u >= vertices || v >= vertices || u == v {
                return Err(Error::Matching(format!("edge ({u},{v}) is not a graph edge on {vertices} vertices")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            total_edges += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut side: Vec<bool> = (0..vertices).map(|_| rng.gen()).collect();
    // Flip any vertex with more neighbours on its own side; each flip grows
    // the cut, so this terminates.
    loop {
        let mut improved = false;
        for v in 0..vertices as usize {
            let same = adj[v].iter().filter(|&&u| side[u as usize] == side[v]).count();
            if 2 * same > adj[v].len() {
                side[v] = !side[v];
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let a: Vec<u32> = (0..vertices).filter(|&v| side[v as usize]).collect();
    let b: Vec<u32> = (0..vertices).filter(|&v| !side[v as usize]).collect();
    let pos = |list: &[u32], v: u32| list.binary_search(&v).ok().map(|i| i as u32);
    let mut restricted = Vec::with_capacity(matchings.len());
    let mut cut_edges = 0;
    for m in matchings {
        let mut out = Vec::new();
        for &(u, v) in m {
            let edge = match (side[u as usize], side[v as usize]) {
                (true, false) => Some((pos(&a, u).unwrap(), pos(&b, v).unwrap())),
                (false, true) => Some((pos(&a, v).unwrap(), pos(&b, u).unwrap())),
                _ => None,
            };
            if let Some(e) = edge {
                out.push(e);
                cut_edges += 1;
            }
        }
        restricted.push(out);
    }
    Ok(CutMatchings {
        family: MatchingFamily::new(a.len() as u32, b.len() as u32, restricted),
        left: a,
        right: b,
        cut_edges,
        total_edges,
    })
}

//! `χ`: exact minimum star-free colorings, the translate-cover upper bound,
//! and the monochromatic partition induced by a protocol's transcripts.

use std::collections::{BTreeMap, HashMap};

use super::Coloring;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::model::{find_stars, run_protocol, Dims, GraphFunctionTable, Point, PointSet, Protocol};
use crate::protocols::translate_count;
use crate::search::alpha_exact;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiResult {
    pub value: usize,
    pub coloring: Coloring,
    pub exhaustive: bool,
    /// `⌈|f^{-1}(1)| / α⌉` when `α` was found exhaustively, else 1.
    pub lower_bound: usize,
    pub nodes: u64,
}

struct Colorer {
    incident: Vec<Vec<usize>>,
    edges: Vec<Vec<usize>>,
    order: Vec<usize>,
    color: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Colorer {
    fn conflicts(&self, item: usize, c: usize) -> bool {
        self.incident[item].iter().any(|&e| {
            self.edges[e]
                .iter()
                .all(|&j| j == item || self.color[j] == Some(c))
        })
    }

    /// Tries to color `order[pos..]` with at most `limit` colors, `used` of
    /// which are already taken. New colors are opened in increasing order.
    fn dfs(&mut self, pos: usize, used: usize, limit: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return false;
        }
        let item = self.order[pos];
        for c in 0..(used + 1).min(limit) {
            if self.conflicts(item, c) {
                continue;
            }
            self.color[item] = Some(c);
            if self.dfs(pos + 1, used.max(c + 1), limit) {
                return true;
            }
            self.color[item] = None;
            if self.aborted {
                return false;
            }
        }
        false
    }
}

/// Minimum number of star-free classes partitioning `f^{-1}(1)`, by
/// iterative deepening from the `α` lower bound over a first-fit upper bound.
pub fn chi_exact(f: &GraphFunctionTable, budget: u64) -> Result<ChiResult> {
    let points = f.accepted_points();
    let set = f.accepted_set();
    let index: HashMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let edges: Vec<Vec<usize>> = find_stars(&set)
        .into_iter()
        .map(|s| s.displaced.iter().map(|p| index[p]).collect())
        .collect();
    let mut incident = vec![Vec::new(); points.len()];
    for (e, members) in edges.iter().enumerate() {
        for &i in members {
            incident[i].push(e);
        }
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(incident[i].len()));

    let alpha = alpha_exact(f, budget)?;
    let lower_bound = if alpha.exhaustive && alpha.value > 0 {
        points.len().div_ceil(alpha.value)
    } else {
        1
    };

    let mut solver = Colorer {
        incident,
        edges,
        order,
        color: vec![None; points.len()],
        nodes: 0,
        budget,
        aborted: false,
    };
    // First fit gives the starting incumbent.
    for pos in 0..solver.order.len() {
        let item = solver.order[pos];
        let c = (0..).find(|&c| !solver.conflicts(item, c)).expect("a fresh color always fits");
        solver.color[item] = Some(c);
    }
    let mut best: Vec<usize> = solver.color.iter().map(|c| c.unwrap()).collect();
    let mut value = best.iter().max().map_or(0, |&c| c + 1);
    let mut exhaustive = true;
    for limit in lower_bound.max(1)..value {
        solver.color = vec![None; points.len()];
        if solver.dfs(0, 0, limit) {
            best = solver.color.iter().map(|c| c.unwrap()).collect();
            value = limit;
            break;
        }
        if solver.aborted {
            exhaustive = false;
            break;
        }
    }
    let coloring = Coloring {
        dims: f.dims(),
        colors: points.iter().cloned().zip(best.iter().map(|&c| c as u32)).collect(),
    };
    coloring
        .validate(f)
        .map_err(|e| Error::Invariant(format!("chi witness: {e}")))?;
    Ok(ChiResult {
        value,
        coloring,
        exhaustive,
        lower_bound,
        nodes: solver.nodes,
    })
}

/// The class-count guarantee of a translate cover seeded by an `alpha`-point
/// star-free set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChiUpper {
    /// `⌈2 k |G|^{k-1} ln|G| / alpha⌉` sampled translates.
    pub translates: usize,
    /// Worst-case number of patch translates: one per accepted point.
    pub patch_allowance: usize,
}

impl ChiUpper {
    pub fn bound(&self) -> usize {
        self.translates
    }
}

pub fn chi_upper_from_alpha(group: &AbelianGroup, k: usize, alpha: usize) -> Result<ChiUpper> {
    if alpha == 0 || k < 2 {
        return Err(Error::Config(format!("need alpha >= 1 and k >= 2 (got {alpha}, {k})")));
    }
    Ok(ChiUpper {
        translates: translate_count(group, k, alpha),
        patch_allowance: (group.order() as usize).pow(k as u32 - 1),
    })
}

/// Inputs that share one full transcript.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptClass {
    pub output: bool,
    pub points: PointSet,
}

/// Groups every input of `dims` by the transcript `p` produces on it.
pub fn transcript_partition(p: &dyn Protocol, dims: Dims) -> Result<Vec<TranscriptClass>> {
    let ranges: Vec<u64> = (0..dims.k).map(|a| dims.side(a) as u64).collect();
    if p.ranges() != ranges {
        return Err(Error::Config(format!("protocol domain {:?} is not {ranges:?}", p.ranges())));
    }
    let mut groups: BTreeMap<String, TranscriptClass> = BTreeMap::new();
    for point in dims.points() {
        let input: Vec<u64> = point.0.iter().map(|&v| v as u64).collect();
        let t = run_protocol(p, &input)?;
        let key: String = t.events.iter().map(|e| format!("{}:{};", e.player, e.bits)).collect();
        groups
            .entry(key)
            .or_insert_with(|| TranscriptClass {
                output: t.output,
                points: PointSet::empty(dims),
            })
            .points
            .insert(point)?;
    }
    Ok(groups.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ceil_log2, is_cylinder_intersection};
    use crate::protocols::compile_cover_protocol;
    use crate::search::DEFAULT_BUDGET;

    #[test]
    fn chi_of_tiny_tables() {
        let one = GraphFunctionTable::new(3, 1, 1, vec![0]).unwrap();
        assert_eq!(chi_exact(&one, DEFAULT_BUDGET).unwrap().value, 1);
        let xor2 = AbelianGroup::binary(1).unwrap().table(3).unwrap();
        let r = chi_exact(&xor2, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.value, r.lower_bound, r.exhaustive), (2, 2, true));
    }

    #[test]
    fn upper_bound_arithmetic() {
        let g = AbelianGroup::binary(2).unwrap();
        let u = chi_upper_from_alpha(&g, 3, 8).unwrap();
        assert_eq!((u.translates, u.patch_allowance), (17, 16));
        // Full-set seed: ⌈2k ln|G|⌉.
        assert_eq!(chi_upper_from_alpha(&g, 3, 16).unwrap().bound(), 9);
        assert!(chi_upper_from_alpha(&g, 3, 0).is_err());
    }

    #[test]
    fn transcripts_split_into_cylinder_intersections() {
        let xor2 = AbelianGroup::binary(1).unwrap().table(3).unwrap();
        let chi = chi_exact(&xor2, DEFAULT_BUDGET).unwrap();
        let p = compile_cover_protocol(&xor2, &chi.coloring.to_cover()).unwrap();
        assert_eq!(p.cost_bound(), Some(ceil_log2(chi.value as u64) + 2));
        let classes = transcript_partition(&p, xor2.dims()).unwrap();
        let ones: Vec<_> = classes.iter().filter(|c| c.output).collect();
        assert!(ones.len() >= chi.value);
        for c in &classes {
            assert!(is_cylinder_intersection(&c.points));
            assert!(c.points.iter().all(|q| xor2.accepts(q) == c.output));
        }
    }
}

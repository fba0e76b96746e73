//! Exact search for the largest star-free sets (`α`, `ᾱ`), X-free sets, and
//! greedy completion of partial tables to linjections.

mod engine;
mod xfree;

pub use engine::{Engine, Outcome};
pub use xfree::{
    is_xfree, psi_inverse, psi_map, psi_star_image, xfree_max, xfree_violation, xpattern_catalog,
    XFreeResult, XPattern,
};

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::model::{find_stars, first_star, Dims, GraphFunctionTable, Point, PointSet};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// An extremal set with its size and whether optimality was proven.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub quantity: String,
    pub witness: PointSet,
    pub value: usize,
    pub exhaustive: bool,
    pub nodes: u64,
}

impl SearchResult {
    pub fn metadata(&self) -> Value {
        json!({"quantity": self.quantity, "exhaustive": self.exhaustive, "value": self.value})
    }

    /// PointSet JSON carrying the metadata block.
    pub fn to_json(&self) -> String {
        self.witness.to_json_with_metadata(self.metadata())
    }
}

/// Largest star-free subset of `f^{-1}(1)`.
pub fn alpha_exact(f: &GraphFunctionTable, budget: u64) -> Result<SearchResult> {
    let points = f.accepted_points();
    let set = f.accepted_set();
    let index: HashMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let edges = find_stars(&set)
        .into_iter()
        .map(|s| s.displaced.iter().map(|p| index[p]).collect())
        .collect();
    let out = Engine::new(points.len(), vec![], edges).solve(budget);
    let witness = PointSet::new(f.dims(), out.best.iter().map(|&i| points[i].clone()))?;
    if let Some(star) = first_star(&witness) {
        return Err(Error::Invariant(format!("alpha witness contains the star {star}")));
    }
    if let Some(p) = witness.iter().find(|p| !f.accepts(p)) {
        return Err(Error::Invariant(format!("alpha witness contains rejected point {p}")));
    }
    Ok(SearchResult {
        quantity: "alpha".into(),
        value: witness.len(),
        witness,
        exhaustive: out.exhaustive,
        nodes: out.nodes,
    })
}

/// Largest star-free subset of `[n]^{k-1} × [N]` meeting every line at most once.
pub fn alpha_bar_exact(k: usize, n: u32, range: u32, budget: u64) -> Result<SearchResult> {
    let dims = Dims::new(k, n, range)?;
    let full = PointSet::new(dims, dims.points())?;
    let items = dims.volume();
    let partitions: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|axis| {
            let mut lines: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
            for (i, p) in dims.points().enumerate() {
                lines.entry(p.drop_axis(axis)).or_default().push(i);
            }
            let mut lines: Vec<(Vec<u32>, Vec<usize>)> = lines.into_iter().collect();
            lines.sort();
            lines.into_iter().map(|(_, l)| l).collect()
        })
        .collect();
    let edges = find_stars(&full)
        .into_iter()
        .map(|s| s.displaced.iter().map(|p| dims.index(p)).collect())
        .collect();
    let out = Engine::new(items, partitions, edges).solve(budget);
    let witness = PointSet::new(dims, out.best.iter().map(|&i| dims.point_at(i)))?;
    if let Some((p, q)) = witness.line_violation() {
        return Err(Error::Invariant(format!("alpha-bar witness has {p} and {q} on one line")));
    }
    if let Some(star) = first_star(&witness) {
        return Err(Error::Invariant(format!("alpha-bar witness contains the star {star}")));
    }
    Ok(SearchResult {
        quantity: "alpha_bar".into(),
        value: witness.len(),
        witness,
        exhaustive: out.exhaustive,
        nodes: out.nodes,
    })
}

/// Completes the partial table defined by `s` to a linjection into `[N]`,
/// filling cells in row-major order with the smallest admissible value.
pub fn extend_to_linjection(s: &PointSet) -> Result<GraphFunctionTable> {
    if let Some((p, q)) = s.line_violation() {
        return Err(Error::Precondition(format!("{p} and {q} share a line")));
    }
    let dims = s.dims();
    let k = dims.k;
    let mut table: Vec<Option<u32>> = vec![None; dims.cells()];
    let cell_index = |cell: &[u32]| cell.iter().fold(0usize, |acc, &c| acc * dims.n as usize + c as usize);
    for p in s {
        table[cell_index(p.cell())] = Some(p.value());
    }
    // used[axis][line key]: values already taken on that line.
    let mut used: Vec<HashMap<Vec<u32>, Vec<u32>>> = vec![HashMap::new(); k - 1];
    let cells: Vec<Vec<u32>> = dims.cell_iter().collect();
    for cell in &cells {
        if let Some(v) = table[cell_index(cell)] {
            for (axis, map) in used.iter_mut().enumerate() {
                let mut key = cell.clone();
                key.remove(axis);
                map.entry(key).or_default().push(v);
            }
        }
    }
    for cell in &cells {
        if table[cell_index(cell)].is_some() {
            continue;
        }
        let keys: Vec<Vec<u32>> = (0..k - 1)
            .map(|axis| {
                let mut key = cell.clone();
                key.remove(axis);
                key
            })
            .collect();
        let v = (0..dims.range)
            .find(|v| keys.iter().enumerate().all(|(a, key)| used[a].get(key).map_or(true, |vs| !vs.contains(v))))
            .ok_or_else(|| Error::Completion(cell.clone()))?;
        table[cell_index(cell)] = Some(v);
        for (axis, key) in keys.into_iter().enumerate() {
            used[axis].entry(key).or_default().push(v);
        }
    }
    GraphFunctionTable::new(k, dims.n, dims.range, table.into_iter().map(|v| v.unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;
    use crate::model::TableKind;

    #[test]
    fn alpha_small_tables() {
        let xor2 = AbelianGroup::binary(1).unwrap().table(3).unwrap();
        let r = alpha_exact(&xor2, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.value, r.exhaustive), (2, true));
        let one = GraphFunctionTable::new(3, 1, 1, vec![0]).unwrap();
        assert_eq!(alpha_exact(&one, DEFAULT_BUDGET).unwrap().value, 1);
    }

    #[test]
    fn alpha_bar_single_line() {
        for range in 1..=4 {
            assert_eq!(alpha_bar_exact(3, 1, range, DEFAULT_BUDGET).unwrap().value, 1);
        }
    }

    #[test]
    fn alpha_bar_dominates_alpha_at_n2() {
        let xor2 = AbelianGroup::binary(1).unwrap().table(3).unwrap();
        let a = alpha_exact(&xor2, DEFAULT_BUDGET).unwrap().value;
        let ab = alpha_bar_exact(3, 2, 2, DEFAULT_BUDGET).unwrap().value;
        assert!(ab >= a);
    }

    #[test]
    fn completion_of_empty_set() {
        let s = PointSet::empty(Dims::new(3, 2, 2).unwrap());
        let t = extend_to_linjection(&s).unwrap();
        assert!(matches!(t.kind(), TableKind::Linjection | TableKind::Permutation));
    }

    #[test]
    fn completion_respects_partial_values() {
        let d = Dims::new(3, 3, 5).unwrap();
        let s = PointSet::from_coords(d, &[&[0, 0, 4], &[2, 1, 0]]).unwrap();
        let t = extend_to_linjection(&s).unwrap();
        assert_eq!(t.value(&[0, 0]), 4);
        assert_eq!(t.value(&[2, 1]), 0);
        assert_ne!(t.kind(), TableKind::GraphFunction);
    }

    #[test]
    fn completion_can_fail_when_range_is_small() {
        let d = Dims::new(3, 2, 2).unwrap();
        let s = PointSet::from_coords(d, &[&[0, 0, 0], &[1, 1, 1]]).unwrap();
        // (0,1) must avoid 0 (row 0) and 1 (column 1).
        assert!(matches!(extend_to_linjection(&s), Err(Error::Completion(c)) if c == vec![0, 1]));
    }

    #[test]
    fn witness_json_has_metadata() {
        let xor2 = AbelianGroup::binary(1).unwrap().table(3).unwrap();
        let r = alpha_exact(&xor2, DEFAULT_BUDGET).unwrap();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["metadata"]["quantity"], "alpha");
        assert_eq!(v["metadata"]["value"], 2);
    }
}

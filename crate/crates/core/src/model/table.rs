//! Graph functions stored as their value table `A(f): [n]^{k-1} -> [N]`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::geometry::{Dims, Point, PointSet};
use crate::error::{Error, Result};

/// Strongest structure a table satisfies. Ordered from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    GraphFunction,
    Linjection,
    Permutation,
}

/// A total map from `[n]^{k-1}` to `[N]`, row-major with the last index fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFunctionTable {
    dims: Dims,
    table: Vec<u32>,
    kind: TableKind,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    k: usize,
    n: u32,
    #[serde(rename = "N")]
    range: u32,
    table: Vec<u32>,
}

impl GraphFunctionTable {
    pub fn new(k: usize, n: u32, range: u32, table: Vec<u32>) -> Result<Self> {
        let dims = Dims::new(k, n, range)?;
        if table.len() != dims.cells() {
            return Err(Error::Config(format!(
                "table has {} cells, expected n^(k-1) = {}",
                table.len(),
                dims.cells()
            )));
        }
        let mut t = GraphFunctionTable {
            dims,
            table,
            kind: TableKind::GraphFunction,
        };
        t.kind = validate_table(&t)?;
        Ok(t)
    }

    pub fn from_fn(k: usize, n: u32, range: u32, f: impl Fn(&[u32]) -> u32) -> Result<Self> {
        let dims = Dims::new(k, n, range)?;
        let table = dims.cell_iter().map(|c| f(&c)).collect();
        GraphFunctionTable::new(k, n, range, table)
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn k(&self) -> usize {
        self.dims.k
    }

    pub fn n(&self) -> u32 {
        self.dims.n
    }

    pub fn range(&self) -> u32 {
        self.dims.range
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn raw(&self) -> &[u32] {
        &self.table
    }

    pub fn cell_index(&self, cell: &[u32]) -> usize {
        cell.iter()
            .fold(0usize, |acc, &c| acc * self.dims.n as usize + c as usize)
    }

    /// `A(f)(cell)`.
    pub fn value(&self, cell: &[u32]) -> u32 {
        self.table[self.cell_index(cell)]
    }

    /// `f(p)`.
    pub fn accepts(&self, p: &Point) -> bool {
        self.value(p.cell()) == p.value()
    }

    /// `f^{-1}(1)` in cell order.
    pub fn accepted_points(&self) -> Vec<Point> {
        self.dims
            .cell_iter()
            .zip(&self.table)
            .map(|(mut c, &v)| {
                c.push(v);
                Point(c)
            })
            .collect()
    }

    pub fn accepted_set(&self) -> PointSet {
        PointSet::new(self.dims, self.accepted_points()).expect("table values validated")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableJson {
            k: self.dims.k,
            n: self.dims.n,
            range: self.dims.range,
            table: self.table.clone(),
        })
        .expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: TableJson = serde_json::from_str(s)?;
        GraphFunctionTable::new(t.k, t.n, t.range, t.table)
    }
}

/// Classifies a table, checking every line.
///
/// Fails with the offending cell when a value lies outside `[N]`.
pub fn validate_table(t: &GraphFunctionTable) -> Result<TableKind> {
    let dims = t.dims;
    for (cell, &v) in dims.cell_iter().zip(&t.table) {
        if v >= dims.range {
            return Err(Error::MalformedTable {
                cell,
                value: v,
                range: dims.range,
            });
        }
    }
    if dims.range < dims.n {
        return Ok(TableKind::GraphFunction);
    }
    // Along axis i < k-1 the restriction of A to a line must be injective.
    let k1 = dims.k - 1;
    for axis in 0..k1 {
        let mut seen: HashSet<(Vec<u32>, u32)> = HashSet::with_capacity(t.table.len());
        for (cell, &v) in dims.cell_iter().zip(&t.table) {
            let mut key = cell;
            key.remove(axis);
            if !seen.insert((key, v)) {
                return Ok(TableKind::GraphFunction);
            }
        }
    }
    if dims.range == dims.n {
        // Injective on a line of n cells into [n] means bijective.
        Ok(TableKind::Permutation)
    } else {
        Ok(TableKind::Linjection)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor4_is_permutation() {
        let t = GraphFunctionTable::from_fn(3, 4, 4, |c| c[0] ^ c[1]).unwrap();
        assert_eq!(t.kind(), TableKind::Permutation);
        assert_eq!(t.accepted_points().len(), 16);
    }

    #[test]
    fn projection_table_is_graph_function_only() {
        let t = GraphFunctionTable::from_fn(3, 2, 2, |c| c[0]).unwrap();
        assert_eq!(t.kind(), TableKind::GraphFunction);
    }

    #[test]
    fn distinct_values_make_linjection() {
        let t = GraphFunctionTable::from_fn(3, 3, 9, |c| c[0] * 3 + c[1]).unwrap();
        assert_eq!(t.kind(), TableKind::Linjection);
    }

    #[test]
    fn out_of_range_cell_is_named() {
        let err = GraphFunctionTable::new(3, 2, 2, vec![0, 1, 2, 0]).unwrap_err();
        assert_eq!(
            err,
            Error::MalformedTable {
                cell: vec![1, 0],
                value: 2,
                range: 2
            }
        );
    }

    #[test]
    fn json_shape() {
        let t = GraphFunctionTable::from_fn(3, 2, 2, |c| c[0] ^ c[1]).unwrap();
        let s = t.to_json();
        assert_eq!(s, r#"{"k":3,"n":2,"N":2,"table":[0,1,1,0]}"#);
        assert_eq!(GraphFunctionTable::from_json(&s).unwrap(), t);
    }
}

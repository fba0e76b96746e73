//! The NOF model: points, lines, stars, graph-function tables, closures and
//! the blackboard simulator.

mod closure;
mod geometry;
mod protocol;
mod table;

pub use closure::{
    closure_fixpoint, closure_min, closure_stats, find_stars, first_star, is_cylinder_intersection,
    is_star_free, star_centers,
};
pub use geometry::{Dims, Line, Point, PointSet, Star};
pub use protocol::{
    all_inputs, bit_width, ceil_log2, run_protocol, step_budget, sweep, Bits, Blackboard, Event,
    Protocol, SweepReport, Transcript, Turn, View,
};
pub use table::{validate_table, GraphFunctionTable, TableKind};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

#[derive(Serialize, Deserialize)]
struct PointSetJson {
    k: usize,
    n: u32,
    #[serde(rename = "N")]
    range: u32,
    points: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    metadata: Option<Value>,
}

impl PointSet {
    fn to_json_struct(&self, metadata: Option<Value>) -> PointSetJson {
        let d = self.dims();
        PointSetJson {
            k: d.k,
            n: d.n,
            range: d.range,
            points: self.iter().map(|p| p.0.clone()).collect(),
            metadata,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_struct(None)).expect("plain data")
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self.to_json_struct(None)).expect("plain data")
    }

    /// PointSet JSON with an extra `metadata` block, as used for witnesses.
    pub fn to_json_with_metadata(&self, metadata: Value) -> String {
        serde_json::to_string(&self.to_json_struct(Some(metadata))).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_json_value(serde_json::from_str(s)?).map(|(p, _)| p)
    }

    /// Parses a PointSet, returning its metadata block if present.
    pub fn from_json_value(v: Value) -> Result<(Self, Option<Value>)> {
        let j: PointSetJson = serde_json::from_value(v)?;
        let dims = Dims::new(j.k, j.n, j.range)?;
        let set = PointSet::new(dims, j.points.into_iter().map(Point))?;
        Ok((set, j.metadata))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_set_json_round_trip() {
        let d = Dims::new(3, 4, 4).unwrap();
        let s = PointSet::from_coords(d, &[&[0, 1, 1], &[3, 2, 1]]).unwrap();
        let j = s.to_json();
        assert_eq!(j, r#"{"k":3,"n":4,"N":4,"points":[[0,1,1],[3,2,1]]}"#);
        assert_eq!(PointSet::from_json(&j).unwrap(), s);
        let w = s.to_json_with_metadata(serde_json::json!({"quantity":"alpha","exhaustive":true,"value":2}));
        let (back, meta) = PointSet::from_json_value(serde_json::from_str(&w).unwrap()).unwrap();
        assert_eq!(back, s);
        assert_eq!(meta.unwrap()["value"], 2);
    }
}

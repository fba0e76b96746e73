//! Covers of `f^{-1}(1)` by star-free classes and the one-way protocol they
//! compile to.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::model::{
    ceil_log2, first_star, Bits, Blackboard, GraphFunctionTable, Point, PointSet, Protocol, Turn, View,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMode {
    Cover,
    Partition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub classes: Vec<PointSet>,
    pub mode: CoverMode,
}

impl Cover {
    pub fn new(classes: Vec<PointSet>, mode: CoverMode) -> Self {
        Cover { classes, mode }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the first class containing `p`.
    pub fn class_of(&self, p: &Point) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(p))
    }

    /// Checks that every class is a star-free subset of `f^{-1}(1)`, that the
    /// classes cover it, and (for partitions) that they are disjoint.
    pub fn validate(&self, f: &GraphFunctionTable) -> Result<()> {
        let dims = f.dims();
        let mut seen: HashSet<&Point> = HashSet::new();
        for (i, class) in self.classes.iter().enumerate() {
            if class.dims() != dims {
                return Err(Error::InvalidCover(format!("class {i} has dimensions {:?}", class.dims())));
            }
            for p in class {
                if !f.accepts(p) {
                    return Err(Error::InvalidCover(format!("class {i} contains rejected point {p}")));
                }
                if !seen.insert(p) && self.mode == CoverMode::Partition {
                    return Err(Error::InvalidCover(format!("point {p} lies in two classes")));
                }
            }
            if let Some(star) = first_star(class) {
                return Err(Error::InvalidCover(format!("class {i} contains the star {star}")));
            }
        }
        if let Some(p) = f.accepted_points().into_iter().find(|p| !seen.contains(p)) {
            return Err(Error::InvalidCover(format!("accepted point {p} is uncovered")));
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(self.classes.iter().map(PointSet::to_json_value).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("plain data")
    }

    /// Parses a JSON array of PointSets.
    pub fn from_json(s: &str, mode: CoverMode) -> Result<Self> {
        let v: Value = serde_json::from_str(s)?;
        let Value::Array(items) = v else {
            return Err(Error::Json("a cover is a JSON array of point sets".into()));
        };
        let classes = items
            .into_iter()
            .map(|i| PointSet::from_json_value(i).map(|(p, _)| p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cover::new(classes, mode))
    }
}

/// Protocol compiled from a cover: the last player names the class of
/// `(x_1..x_{k-1}, A(x_1..x_{k-1}))`, every other player checks that its view
/// is consistent with that class.
#[derive(Clone, Debug)]
pub struct CoverProtocol {
    table: GraphFunctionTable,
    /// Class index of each cell of the table.
    class_of_cell: Vec<usize>,
    /// `projections[c][i]`: class `c` with coordinate `i` dropped.
    projections: Vec<Vec<HashSet<Vec<u32>>>>,
    index_bits: usize,
    classes: usize,
}

impl CoverProtocol {
    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn table(&self) -> &GraphFunctionTable {
        &self.table
    }

    pub fn oracle(&self, input: &[u64]) -> bool {
        let p = Point::new(input.iter().map(|&v| v as u32).collect::<Vec<u32>>());
        self.table.accepts(&p)
    }
}

pub fn compile_cover_protocol(f: &GraphFunctionTable, cover: &Cover) -> Result<CoverProtocol> {
    cover.validate(f)?;
    let k = f.k();
    let mut class_of_cell = Vec::with_capacity(f.raw().len());
    for cell in f.dims().cell_iter() {
        let mut coords = cell.clone();
        coords.push(f.value(&cell));
        let p = Point::new(coords);
        class_of_cell.push(cover.class_of(&p).expect("validated cover"));
    }
    let projections = cover
        .classes
        .iter()
        .map(|c| (0..k - 1).map(|i| c.iter().map(|p| p.drop_axis(i)).collect()).collect())
        .collect();
    Ok(CoverProtocol {
        table: f.clone(),
        class_of_cell,
        projections,
        index_bits: ceil_log2(cover.len().max(1) as u64),
        classes: cover.len(),
    })
}

impl Protocol for CoverProtocol {
    fn players(&self) -> usize {
        self.table.k()
    }

    fn ranges(&self) -> Vec<u64> {
        let k = self.table.k();
        let mut r = vec![self.table.n() as u64; k - 1];
        r.push(self.table.range() as u64);
        r
    }

    fn turn(&self, board: &Blackboard) -> Turn {
        let k = self.table.k();
        if board.is_empty() {
            return Turn::Speak(k - 1);
        }
        let answered = board.len() - 1;
        if answered < k - 1 {
            Turn::Speak(answered)
        } else {
            Turn::Halt(board.events()[1..].iter().all(|e| e.bits.to_uint() == 1))
        }
    }

    fn message(&self, view: &View, board: &Blackboard) -> Bits {
        let k = self.table.k();
        let me = view.player();
        if me == k - 1 {
            let cell: Vec<u32> = view.visible().iter().map(|&v| v as u32).collect();
            let idx = self.class_of_cell[self.table.cell_index(&cell)];
            return Bits::from_uint(idx as u64, self.index_bits);
        }
        let class = board.get(0).expect("class named first").to_uint() as usize;
        let seen: Vec<u32> = view.visible().iter().map(|&v| v as u32).collect();
        let ok = self.projections.get(class).map_or(false, |pr| pr[me].contains(&seen));
        Bits::bit(ok)
    }

    fn name(&self) -> String {
        "cover".into()
    }

    fn cost_bound(&self) -> Option<usize> {
        Some(self.index_bits + self.table.k() - 1)
    }
}

/// Singleton classes, one per accepted point.
pub fn singleton_cover(f: &GraphFunctionTable) -> Cover {
    let dims = f.dims();
    let classes = f
        .accepted_points()
        .into_iter()
        .map(|p| PointSet::new(dims, [p]).expect("accepted point"))
        .collect();
    Cover::new(classes, CoverMode::Partition)
}

/// Groups a point-to-class assignment into a partition, dropping empty classes
/// and keeping the order of first appearance.
pub fn cover_from_coloring(f: &GraphFunctionTable, coloring: &HashMap<Point, usize>) -> Cover {
    let mut order: Vec<usize> = Vec::new();
    let mut classes: HashMap<usize, PointSet> = HashMap::new();
    for p in f.accepted_points() {
        if let Some(&c) = coloring.get(&p) {
            classes
                .entry(c)
                .or_insert_with(|| {
                    order.push(c);
                    PointSet::empty(f.dims())
                })
                .insert(p)
                .expect("accepted point");
        }
    }
    let classes = order.into_iter().map(|c| classes.remove(&c).unwrap()).collect();
    Cover::new(classes, CoverMode::Partition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::AbelianGroup;
    use crate::model::{sweep, Dims};

    fn xor2() -> GraphFunctionTable {
        AbelianGroup::binary(1).unwrap().table(3).unwrap()
    }

    #[test]
    fn two_class_xor2_cover() {
        let f = xor2();
        let d = Dims::new(3, 2, 2).unwrap();
        let cover = Cover::new(
            vec![
                PointSet::from_coords(d, &[&[0, 0, 0], &[1, 1, 0]]).unwrap(),
                PointSet::from_coords(d, &[&[0, 1, 1], &[1, 0, 1]]).unwrap(),
            ],
            CoverMode::Partition,
        );
        let p = compile_cover_protocol(&f, &cover).unwrap();
        let r = sweep(&p, |i| p.oracle(i)).unwrap();
        assert_eq!(r.inputs, 8);
        assert!(r.all_correct());
        assert_eq!(r.max_bits, 3);
    }

    #[test]
    fn singleton_cover_cost() {
        let f = xor2();
        let p = compile_cover_protocol(&f, &singleton_cover(&f)).unwrap();
        let r = sweep(&p, |i| p.oracle(i)).unwrap();
        assert!(r.all_correct());
        assert_eq!(r.max_bits, 4);
    }

    #[test]
    fn invalid_covers_are_rejected() {
        let f = xor2();
        let d = f.dims();
        let with_star = PointSet::from_coords(d, &[&[0, 0, 0], &[1, 1, 0], &[1, 0, 1]]).unwrap();
        let rest = PointSet::from_coords(d, &[&[0, 1, 1]]).unwrap();
        let c = Cover::new(vec![with_star, rest.clone()], CoverMode::Cover);
        assert!(matches!(c.validate(&f), Err(Error::InvalidCover(m)) if m.contains("star")));
        let partial = Cover::new(vec![rest], CoverMode::Cover);
        assert!(matches!(partial.validate(&f), Err(Error::InvalidCover(m)) if m.contains("uncovered")));
        let mut s = singleton_cover(&f);
        s.classes.push(s.classes[0].clone());
        assert!(s.validate(&f).is_err());
        s.mode = CoverMode::Cover;
        assert!(s.validate(&f).is_ok());
    }

    #[test]
    fn cover_json_round_trip() {
        let f = xor2();
        let c = singleton_cover(&f);
        let back = Cover::from_json(&c.to_json(), CoverMode::Partition).unwrap();
        assert_eq!(back, c);
    }
}

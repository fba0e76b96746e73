//! Lower-bound machinery: exact chromatic numbers on tiny tables, the
//! recursive rectangle extraction driven by a coloring, and exact checks of
//! the resulting numeric inequalities.

mod checks;
mod chi;
mod extract;

pub use checks::{bound_checks, corollary38_holds, least_l, lemma37_holds, BoundReport};
pub use chi::{chi_exact, chi_upper_from_alpha, transcript_partition, ChiResult, ChiUpper, TranscriptClass};
pub use extract::{lemma37_extract, ExtractionLevel, ExtractionTrace, Rectangle};

pub use crate::model::closure_stats;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{first_star, Dims, GraphFunctionTable, Point, PointSet};
use crate::protocols::{Cover, CoverMode};

/// A color for every accepted point of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub dims: Dims,
    pub colors: BTreeMap<Point, u32>,
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    k: usize,
    n: u32,
    #[serde(rename = "N")]
    range: u32,
    /// `[x_1, .., x_{k-1}, b, color]`.
    colors: Vec<Vec<u32>>,
}

impl Coloring {
    pub fn from_cover(cover: &Cover) -> Result<Self> {
        let dims = cover
            .classes
            .first()
            .map(PointSet::dims)
            .ok_or_else(|| Error::InvalidCover("empty cover".into()))?;
        let mut colors = BTreeMap::new();
        for (c, class) in cover.classes.iter().enumerate() {
            for p in class {
                colors.entry(p.clone()).or_insert(c as u32);
            }
        }
        Ok(Coloring { dims, colors })
    }

    /// Number of distinct colors in use.
    pub fn len(&self) -> usize {
        self.colors.values().collect::<BTreeSet<_>>().len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, p: &Point) -> Option<u32> {
        self.colors.get(p).copied()
    }

    /// Color classes in increasing color order.
    pub fn classes(&self) -> Vec<PointSet> {
        let mut by: BTreeMap<u32, PointSet> = BTreeMap::new();
        for (p, &c) in &self.colors {
            by.entry(c)
                .or_insert_with(|| PointSet::empty(self.dims))
                .insert(p.clone())
                .expect("same dims");
        }
        by.into_values().collect()
    }

    pub fn to_cover(&self) -> Cover {
        Cover::new(self.classes(), CoverMode::Partition)
    }

    /// Every accepted point colored, nothing else colored, every class star-free.
    pub fn validate(&self, f: &GraphFunctionTable) -> Result<()> {
        if self.dims != f.dims() {
            return Err(Error::InvalidCover("coloring dimensions differ from the table".into()));
        }
        if let Some(p) = self.colors.keys().find(|p| !f.accepts(p)) {
            return Err(Error::InvalidCover(format!("colored point {p} is rejected by the table")));
        }
        if let Some(p) = f.accepted_points().into_iter().find(|p| !self.colors.contains_key(p)) {
            return Err(Error::InvalidCover(format!("accepted point {p} has no color")));
        }
        for class in self.classes() {
            if let Some(star) = first_star(&class) {
                return Err(Error::InvalidCover(format!("a color class contains the star {star}")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let j = ColoringJson {
            k: self.dims.k,
            n: self.dims.n,
            range: self.dims.range,
            colors: self
                .colors
                .iter()
                .map(|(p, &c)| p.0.iter().copied().chain([c]).collect())
                .collect(),
        };
        serde_json::to_string(&j).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: ColoringJson = serde_json::from_str(s)?;
        let dims = Dims::new(j.k, j.n, j.range)?;
        let mut colors = BTreeMap::new();
        for row in j.colors {
            if row.len() != j.k + 1 {
                return Err(Error::Json(format!("coloring row {row:?} should have {} entries", j.k + 1)));
            }
            let p = Point(row[..j.k].to_vec());
            dims.check(&p)?;
            colors.insert(p, row[j.k]);
        }
        Ok(Coloring { dims, colors })
    }
}

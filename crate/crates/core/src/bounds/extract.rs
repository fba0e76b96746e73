//! Recursive extraction of monochromatic value classes from a star-free
//! coloring of a `k = 3` linjection.
//!
//! Level `i` picks the most frequent value `v_i` inside the current rectangle
//! `R_{i-1}`, then the most abundant color `c_i` among those cells; `S_i` is
//! that class. Splitting `S_i` in two gives rows × columns, a rectangle inside
//! the closure of `S_i` that cannot use any color retired so far.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::Coloring;
use crate::error::{Error, Result};
use crate::model::{closure_min, Dims, GraphFunctionTable, Point, PointSet, TableKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rectangle {
    pub rows: BTreeSet<u32>,
    pub cols: BTreeSet<u32>,
}

impl Rectangle {
    fn full(n: u32) -> Self {
        Rectangle {
            rows: (0..n).collect(),
            cols: (0..n).collect(),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = [u32; 2]> + '_ {
        self.rows.iter().flat_map(move |&x| self.cols.iter().map(move |&y| [x, y]))
    }

    pub fn area(&self) -> usize {
        self.rows.len() * self.cols.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionLevel {
    pub value: u32,
    pub color: u32,
    /// Cells `(x, y)` of `S_i`.
    pub class: Vec<[u32; 2]>,
    /// `R_i`; absent on the last level.
    pub rectangle: Option<Rectangle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionTrace {
    pub n: u32,
    #[serde(rename = "N")]
    pub range: u32,
    /// Colors in the coloring.
    #[serde(rename = "L")]
    pub colors: usize,
    pub levels: Vec<ExtractionLevel>,
    /// Whether `|S_{i+1}| · 4NL >= |S_i|^2` held at every level (the form
    /// with exact halves; the checked form uses floor and ceiling).
    pub exact_halves_hold: bool,
}

impl ExtractionTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

fn invariant(level: usize, msg: String) -> Error {
    Error::Invariant(format!("extraction level {level}: {msg}"))
}

pub fn lemma37_extract(f: &GraphFunctionTable, coloring: &Coloring) -> Result<ExtractionTrace> {
    if f.k() != 3 {
        return Err(Error::Precondition(format!("extraction needs k = 3 (got {})", f.k())));
    }
    if !matches!(f.kind(), TableKind::Linjection | TableKind::Permutation) {
        return Err(Error::Precondition("extraction needs a linjection".into()));
    }
    coloring.validate(f)?;
    let (n, range) = (f.n(), f.range());
    let l = coloring.len() as u128;
    let nl = range as u128 * l;
    let color_of = |x: u32, y: u32| {
        coloring
            .get(&Point(vec![x, y, f.value(&[x, y])]))
            .expect("validated coloring")
    };
    let cell_dims = Dims::new(2, n, n)?;

    let mut rect = Rectangle::full(n);
    let mut retired: BTreeSet<u32> = BTreeSet::new();
    let mut levels: Vec<ExtractionLevel> = Vec::new();
    let mut exact_halves_hold = true;
    loop {
        let i = levels.len() + 1;
        // Most frequent value, then most abundant color; ties to the smallest.
        let mut by_value: BTreeMap<u32, Vec<[u32; 2]>> = BTreeMap::new();
        for [x, y] in rect.cells() {
            by_value.entry(f.value(&[x, y])).or_default().push([x, y]);
        }
        let (&value, cells) = by_value
            .iter()
            .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(a.0)))
            .ok_or_else(|| invariant(i, "empty rectangle".into()))?;
        let mut by_color: BTreeMap<u32, Vec<[u32; 2]>> = BTreeMap::new();
        for &[x, y] in cells {
            by_color.entry(color_of(x, y)).or_default().push([x, y]);
        }
        let (&color, class) = by_color
            .iter()
            .max_by(|a, b| a.1.len().cmp(&b.1.len()).then(b.0.cmp(a.0)))
            .expect("nonempty value class");
        let class = class.clone();
        let s = class.len() as u128;

        // Pigeonhole over the previous rectangle.
        let area = match levels.last() {
            None => n as u128 * n as u128,
            Some(prev) => prev.rectangle.as_ref().expect("inner level").area() as u128,
        };
        if s * nl < area {
            return Err(invariant(i, format!("|S| = {s} but the rectangle has {area} cells, N L = {nl}")));
        }
        if let Some(prev) = levels.last() {
            let p = prev.class.len() as u128;
            if 4 * s * nl < p * p {
                exact_halves_hold = false;
            }
        }
        if retired.contains(&color) {
            return Err(invariant(i, format!("color {color} was already retired")));
        }
        if i > coloring.len() + 1 {
            return Err(invariant(i, format!("more than L + 1 = {} levels", coloring.len() + 1)));
        }
        retired.insert(color);

        if class.len() <= 1 {
            levels.push(ExtractionLevel {
                value,
                color,
                class,
                rectangle: None,
            });
            break;
        }
        let half = class.len() / 2;
        let next = Rectangle {
            rows: class[..half].iter().map(|c| c[0]).collect(),
            cols: class[half..].iter().map(|c| c[1]).collect(),
        };
        // R_i lies in the closure of S_i's cells and avoids S_i.
        let cells = PointSet::new(cell_dims, class.iter().map(|c| Point(c.to_vec())))?;
        let closure = closure_min(&cells);
        for [x, y] in next.cells() {
            let p = Point(vec![x, y]);
            if cells.contains(&p) {
                return Err(invariant(i, format!("rectangle meets S at ({x},{y})")));
            }
            if !closure.contains(&p) {
                return Err(invariant(i, format!("({x},{y}) is outside the closure of S")));
            }
            let c = color_of(x, y);
            if retired.contains(&c) {
                return Err(invariant(i, format!("({x},{y}) has retired color {c}")));
            }
        }
        levels.push(ExtractionLevel {
            value,
            color,
            class,
            rectangle: Some(next.clone()),
        });
        rect = next;
    }
    Ok(ExtractionTrace {
        n,
        range,
        colors: coloring.len(),
        levels,
        exact_halves_hold,
    })
}

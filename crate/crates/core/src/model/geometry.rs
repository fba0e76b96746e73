//! Points, lines, stars and point sets in `[n]^{k-1} x [N]`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ambient dimensions: `k` axes, the first `k - 1` of side `n`, the last of
/// side `range` (the `N` of a graph function).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dims {
    pub k: usize,
    pub n: u32,
    pub range: u32,
}

impl Dims {
    pub fn new(k: usize, n: u32, range: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::Config(format!("arity k = {k} must be at least 2")));
        }
        if n == 0 || range == 0 {
            return Err(Error::Config(format!("empty side (n = {n}, N = {range})")));
        }
        Ok(Dims { k, n, range })
    }

    /// Side length of `axis`.
    #[inline]
    pub fn side(&self, axis: usize) -> u32 {
        if axis + 1 == self.k {
            self.range
        } else {
            self.n
        }
    }

    /// Number of points in the ambient box.
    pub fn volume(&self) -> usize {
        (self.n as usize).pow(self.k as u32 - 1) * self.range as usize
    }

    /// Number of cells of `[n]^{k-1}`.
    pub fn cells(&self) -> usize {
        (self.n as usize).pow(self.k as u32 - 1)
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.0.len() == self.k && p.0.iter().enumerate().all(|(i, &c)| c < self.side(i))
    }

    pub fn check(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("point {p} outside dims {self:?}")))
        }
    }

    /// Row-major index with the last coordinate fastest.
    pub fn index(&self, p: &Point) -> usize {
        p.0.iter()
            .enumerate()
            .fold(0usize, |acc, (i, &c)| acc * self.side(i) as usize + c as usize)
    }

    pub fn point_at(&self, mut index: usize) -> Point {
        let mut coords = vec![0u32; self.k];
        for axis in (0..self.k).rev() {
            let side = self.side(axis) as usize;
            coords[axis] = (index % side) as u32;
            index /= side;
        }
        Point(coords)
    }

    /// All points of the box in index order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.volume()).map(move |i| self.point_at(i))
    }

    /// All cells of `[n]^{k-1}` in row-major order.
    pub fn cell_iter(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let k1 = self.k - 1;
        let n = self.n as usize;
        (0..self.cells()).map(move |mut i| {
            let mut cell = vec![0u32; k1];
            for slot in cell.iter_mut().rev() {
                *slot = (i % n) as u32;
                i /= n;
            }
            cell
        })
    }
}

/// A point of the box; the last coordinate is the graph-function value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<u32>);

impl Point {
    pub fn new(coords: impl Into<Vec<u32>>) -> Self {
        Point(coords.into())
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// The first `k - 1` coordinates.
    pub fn cell(&self) -> &[u32] {
        &self.0[..self.0.len() - 1]
    }

    pub fn value(&self) -> u32 {
        *self.0.last().expect("points have k >= 2 coordinates")
    }

    /// Copy of `self` with coordinate `axis` replaced.
    pub fn with(&self, axis: usize, value: u32) -> Point {
        let mut c = self.0.clone();
        c[axis] = value;
        Point(c)
    }

    /// `x^{-axis}`: every coordinate except `axis`.
    pub fn drop_axis(&self, axis: usize) -> Vec<u32> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != axis)
            .map(|(_, &c)| c)
            .collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The line through `anchor` (all coordinates but `free_axis`) along `free_axis`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub anchor: Vec<u32>,
    pub free_axis: usize,
}

impl Line {
    pub fn through(p: &Point, free_axis: usize) -> Line {
        Line {
            anchor: p.drop_axis(free_axis),
            free_axis,
        }
    }

    pub fn point(&self, t: u32) -> Point {
        let mut c = self.anchor.clone();
        c.insert(self.free_axis, t);
        Point(c)
    }

    pub fn points(&self, dims: &Dims) -> Vec<Point> {
        (0..dims.side(self.free_axis)).map(|t| self.point(t)).collect()
    }
}

/// A star: `k` points, the `i`-th displacing the center in coordinate `i` only.
/// The center is not part of the star.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Star {
    pub center: Point,
    pub displaced: Vec<Point>,
}

impl Star {
    /// Checks the defining shape: `displaced[i]` differs from the center in
    /// coordinate `i` and nowhere else.
    pub fn is_well_formed(&self) -> bool {
        let k = self.center.k();
        self.displaced.len() == k
            && self.displaced.iter().enumerate().all(|(i, p)| {
                p.k() == k
                    && (0..k).all(|j| (p.0[j] == self.center.0[j]) == (j != i))
            })
    }
}

impl fmt::Display for Star {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "star[center {}:", self.center)?;
        for p in &self.displaced {
            write!(f, " {p}")?;
        }
        write!(f, "]")
    }
}

/// A finite set of points sharing ambient dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    dims: Dims,
    points: BTreeSet<Point>,
}

impl PointSet {
    pub fn empty(dims: Dims) -> Self {
        PointSet {
            dims,
            points: BTreeSet::new(),
        }
    }

    pub fn new(dims: Dims, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut s = PointSet::empty(dims);
        for p in points {
            s.insert(p)?;
        }
        Ok(s)
    }

    /// Builds from raw coordinate slices; convenient in tests.
    pub fn from_coords(dims: Dims, coords: &[&[u32]]) -> Result<Self> {
        PointSet::new(dims, coords.iter().map(|c| Point::new(c.to_vec())))
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn insert(&mut self, p: Point) -> Result<bool> {
        self.dims.check(&p)?;
        Ok(self.points.insert(p))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    pub fn points(&self) -> &BTreeSet<Point> {
        &self.points
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet {
            dims: self.dims,
            points: self.points.union(&other.points).cloned().collect(),
        }
    }

    /// True when every line (along every axis) meets the set at most once.
    pub fn is_line_respecting(&self) -> bool {
        self.line_violation().is_none()
    }

    /// A pair of points sharing a line, if any.
    pub fn line_violation(&self) -> Option<(Point, Point)> {
        for axis in 0..self.dims.k {
            let mut seen: std::collections::HashMap<Vec<u32>, &Point> = Default::default();
            for p in &self.points {
                if let Some(q) = seen.insert(p.drop_axis(axis), p) {
                    return Some((q.clone(), p.clone()));
                }
            }
        }
        None
    }

}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::collections::btree_set::Iter<'a, Point>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

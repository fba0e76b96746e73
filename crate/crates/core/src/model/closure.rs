//! Stars, cylinder intersections and closures.
//!
//! A set is a cylinder intersection exactly when it contains the center of
//! every star it contains. The closure of `S` is the smallest cylinder
//! intersection containing it; it is computed two independent ways:
//! [`closure_min`] intersects the cylinders spanned by the axis projections,
//! [`closure_fixpoint`] keeps adding star centers until nothing changes.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::geometry::{Point, PointSet, Star};
use crate::error::{Error, Result};

/// For each point `p` of `s` and axis `i`, the other members of `s` on the
/// line through `p` along `i` are grouped under the key `p^{-i}`.
fn line_members(s: &PointSet) -> Vec<HashMap<Vec<u32>, Vec<u32>>> {
    let k = s.dims().k;
    let mut by_axis: Vec<HashMap<Vec<u32>, Vec<u32>>> = vec![HashMap::new(); k];
    for p in s {
        for (axis, map) in by_axis.iter_mut().enumerate() {
            map.entry(p.drop_axis(axis)).or_default().push(p.0[axis]);
        }
    }
    by_axis
}

/// Candidate centers: points agreeing with some member of `s` off axis 0
/// while differing on it.
fn candidate_centers(s: &PointSet) -> BTreeSet<Point> {
    let side = s.dims().side(0);
    let mut out = BTreeSet::new();
    for p in s {
        for v in 0..side {
            if v != p.0[0] {
                out.insert(p.with(0, v));
            }
        }
    }
    out
}

/// Per-axis displacement choices for `center`, or `None` if some axis has none.
fn displacements(center: &Point, lines: &[HashMap<Vec<u32>, Vec<u32>>]) -> Option<Vec<Vec<u32>>> {
    let mut choices = Vec::with_capacity(lines.len());
    for (axis, map) in lines.iter().enumerate() {
        let opts: Vec<u32> = map
            .get(&center.drop_axis(axis))
            .map(|vals| vals.iter().copied().filter(|&v| v != center.0[axis]).collect())
            .unwrap_or_default();
        if opts.is_empty() {
            return None;
        }
        choices.push(opts);
    }
    Some(choices)
}

/// Every star whose `k` displaced points lie in `s`. The center may or may not
/// belong to `s`. Empty exactly when `s` is star-free.
pub fn find_stars(s: &PointSet) -> Vec<Star> {
    let k = s.dims().k;
    if s.len() < k {
        return Vec::new();
    }
    let lines = line_members(s);
    let mut stars = Vec::new();
    for center in candidate_centers(s) {
        let Some(choices) = displacements(&center, &lines) else {
            continue;
        };
        // Cartesian product of the per-axis choices.
        let mut idx = vec![0usize; k];
        loop {
            let displaced = (0..k).map(|i| center.with(i, choices[i][idx[i]])).collect();
            stars.push(Star {
                center: center.clone(),
                displaced,
            });
            let mut axis = 0;
            while axis < k {
                idx[axis] += 1;
                if idx[axis] < choices[axis].len() {
                    break;
                }
                idx[axis] = 0;
                axis += 1;
            }
            if axis == k {
                break;
            }
        }
    }
    stars
}

/// Some star contained in `s`, if one exists.
pub fn first_star(s: &PointSet) -> Option<Star> {
    let k = s.dims().k;
    if s.len() < k {
        return None;
    }
    let lines = line_members(s);
    candidate_centers(s).into_iter().find_map(|center| {
        let choices = displacements(&center, &lines)?;
        let displaced = (0..k).map(|i| center.with(i, choices[i][0])).collect();
        Some(Star { center, displaced })
    })
}

pub fn is_star_free(s: &PointSet) -> bool {
    first_star(s).is_none()
}

/// Centers of all stars contained in `s` (with multiplicity removed).
pub fn star_centers(s: &PointSet) -> BTreeSet<Point> {
    let k = s.dims().k;
    if s.len() < k {
        return BTreeSet::new();
    }
    let lines = line_members(s);
    candidate_centers(s)
        .into_iter()
        .filter(|c| displacements(c, &lines).is_some())
        .collect()
}

/// `∩_i π_i^{-1}(π_i(S))`, where `π_i` drops coordinate `i`.
pub fn closure_min(s: &PointSet) -> PointSet {
    let dims = s.dims();
    let projections: Vec<HashSet<Vec<u32>>> = (0..dims.k)
        .map(|axis| s.iter().map(|p| p.drop_axis(axis)).collect())
        .collect();
    let mut out = PointSet::empty(dims);
    if s.is_empty() {
        return out;
    }
    for p in dims.points() {
        if (0..dims.k).all(|axis| projections[axis].contains(&p.drop_axis(axis))) {
            out.insert(p).expect("ambient point");
        }
    }
    out
}

/// Adds star centers until the set is closed.
///
/// The number of rounds is bounded by the ambient volume; exceeding it is
/// reported as an invariant failure.
pub fn closure_fixpoint(s: &PointSet) -> Result<PointSet> {
    let budget = s.dims().volume() + 1;
    let mut cur = s.clone();
    for _ in 0..budget {
        let fresh: Vec<Point> = star_centers(&cur)
            .into_iter()
            .filter(|c| !cur.contains(c))
            .collect();
        if fresh.is_empty() {
            return Ok(cur);
        }
        for c in fresh {
            cur.insert(c)?;
        }
    }
    Err(Error::Invariant(format!(
        "closure did not stabilize within {budget} rounds"
    )))
}

pub fn is_cylinder_intersection(s: &PointSet) -> bool {
    closure_min(s) == *s
}

/// `(|S|, |S̄|)` for a line-respecting set.
pub fn closure_stats(s: &PointSet) -> Result<(usize, usize)> {
    if let Some((p, q)) = s.line_violation() {
        return Err(Error::Precondition(format!(
            "points {p} and {q} share a line"
        )));
    }
    Ok((s.len(), closure_min(s).len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Dims;

    fn d(k: usize, n: u32, range: u32) -> Dims {
        Dims::new(k, n, range).unwrap()
    }

    /// Exhaustive oracle: try every center and every displacement choice.
    fn brute_stars(s: &PointSet) -> BTreeSet<Star> {
        let dims = s.dims();
        let mut out = BTreeSet::new();
        for center in dims.points() {
            let opts: Vec<Vec<Point>> = (0..dims.k)
                .map(|i| {
                    (0..dims.side(i))
                        .filter(|&v| v != center.0[i])
                        .map(|v| center.with(i, v))
                        .filter(|q| s.contains(q))
                        .collect()
                })
                .collect();
            if opts.iter().any(|o| o.is_empty()) {
                continue;
            }
            let mut acc: Vec<Vec<Point>> = vec![vec![]];
            for o in &opts {
                acc = acc
                    .into_iter()
                    .flat_map(|pre| {
                        o.iter().map(move |q| {
                            let mut v = pre.clone();
                            v.push(q.clone());
                            v
                        })
                    })
                    .collect();
            }
            for displaced in acc {
                out.insert(Star {
                    center: center.clone(),
                    displaced,
                });
            }
        }
        out
    }

    #[test]
    fn single_star_example() {
        let s = PointSet::from_coords(d(3, 2, 2), &[&[0, 0, 0], &[1, 0, 1], &[0, 1, 1]]).unwrap();
        let stars = find_stars(&s);
        assert_eq!(stars.len(), 1);
        assert_eq!(stars[0].center, Point::new(vec![0, 0, 1]));
        assert!(stars[0].is_well_formed());
    }

    #[test]
    fn fewer_than_k_points_have_no_star() {
        let s = PointSet::from_coords(d(3, 3, 3), &[&[0, 0, 0], &[1, 1, 1]]).unwrap();
        assert!(find_stars(&s).is_empty());
    }

    #[test]
    fn find_stars_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let dims = d(rng.gen_range(2..=4), rng.gen_range(1..=3), rng.gen_range(1..=4));
            let pts: Vec<Point> = dims.points().filter(|_| rng.gen_bool(0.4)).collect();
            let s = PointSet::new(dims, pts).unwrap();
            let fast: BTreeSet<Star> = find_stars(&s).into_iter().collect();
            assert_eq!(fast, brute_stars(&s), "dims {dims:?}");
            assert_eq!(first_star(&s).is_none(), fast.is_empty());
        }
    }

    #[test]
    fn closure_examples() {
        let dims = d(3, 2, 2);
        let s = PointSet::from_coords(dims, &[&[0, 0, 0], &[1, 1, 0]]).unwrap();
        assert_eq!(closure_min(&s), s);

        let single = PointSet::from_coords(dims, &[&[1, 0, 1]]).unwrap();
        assert_eq!(closure_min(&single), single);

        let s = PointSet::from_coords(dims, &[&[0, 0, 0], &[1, 1, 0], &[1, 0, 1]]).unwrap();
        let mut expect = s.clone();
        expect.insert(Point::new(vec![1, 0, 0])).unwrap();
        assert_eq!(closure_min(&s), expect);
        assert_eq!(closure_fixpoint(&s).unwrap(), expect);
    }

    #[test]
    fn star_free_set_is_its_own_fixpoint() {
        let s = PointSet::from_coords(d(3, 3, 3), &[&[0, 0, 0], &[1, 1, 0], &[2, 2, 2]]).unwrap();
        assert!(find_stars(&s).is_empty());
        assert_eq!(closure_fixpoint(&s).unwrap(), s);
    }

    #[test]
    fn xor2_closure_agrees() {
        let dims = d(3, 2, 2);
        let pts: Vec<Point> = dims.points().filter(|p| p.0[0] ^ p.0[1] == p.0[2]).collect();
        let s = PointSet::new(dims, pts).unwrap();
        assert_eq!(closure_fixpoint(&s).unwrap(), closure_min(&s));
    }

    #[test]
    fn cylinder_intersection_examples() {
        let dims = d(3, 3, 3);
        assert!(is_cylinder_intersection(&PointSet::empty(dims)));
        // A combinatorial box {0,2} x {1} x {0,1}.
        let mut boxed = PointSet::empty(dims);
        for x in [0, 2] {
            for z in [0, 1] {
                boxed.insert(Point::new(vec![x, 1, z])).unwrap();
            }
        }
        assert!(is_cylinder_intersection(&boxed));
        let star = PointSet::from_coords(dims, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(!is_cylinder_intersection(&star));
    }

    #[test]
    fn closure_stats_requires_line_respecting() {
        let dims = d(3, 3, 3);
        let bad = PointSet::from_coords(dims, &[&[0, 0, 0], &[0, 0, 1]]).unwrap();
        assert!(closure_stats(&bad).is_err());
        let one = PointSet::from_coords(dims, &[&[2, 1, 0]]).unwrap();
        assert_eq!(closure_stats(&one).unwrap(), (1, 1));
    }
}

//! Star-free seed sets and the covers built from them: tensor powers over
//! `Z_2^n`, random translates over an abelian group, and the corner-free
//! classes behind the Behrend baseline.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cover::{compile_cover_protocol, Cover, CoverMode, CoverProtocol};
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::model::{first_star, Dims, Point, PointSet};

/// The `t`-fold tensor power of a star-free subset of the `Z_2^b` table:
/// block `j` of every coordinate holds the `j`-th factor's coordinate.
pub fn tensor_power(s: &PointSet, t: u32) -> Result<PointSet> {
    let dims = s.dims();
    let side = dims.n;
    if dims.range != side || !side.is_power_of_two() {
        return Err(Error::Config(format!(
            "tensor power needs a Z_2^b table, got n = {side}, N = {}",
            dims.range
        )));
    }
    if let Some(p) = s.iter().find(|p| p.0.iter().fold(0, |a, &c| a ^ c) != 0) {
        return Err(Error::Config(format!("{p} is not accepted by the XOR table")));
    }
    if t == 0 {
        return Err(Error::Config("tensor power needs t >= 1".into()));
    }
    let bits = side.trailing_zeros();
    if bits * t > 31 {
        return Err(Error::Config(format!("Z_2^{} is too large", bits * t)));
    }
    let out_dims = Dims::new(dims.k, 1 << (bits * t), 1 << (bits * t))?;
    let members: Vec<&Point> = s.iter().collect();
    let mut out = PointSet::empty(out_dims);
    if members.is_empty() {
        return Ok(out);
    }
    let mut idx = vec![0usize; t as usize];
    loop {
        let coords: Vec<u32> = (0..dims.k)
            .map(|i| {
                idx.iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, &m)| acc | members[m].0[i] << (j as u32 * bits))
            })
            .collect();
        out.insert(Point(coords))?;
        let mut j = 0;
        while j < idx.len() {
            idx[j] += 1;
            if idx[j] < members.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            return Ok(out);
        }
    }
}

/// A maximum star-free subset of the accepted points of the `Z_2^2` table,
/// found once by exhaustive search.
pub fn z2_square_base_set() -> PointSet {
    const POINTS: [[u32; 3]; 8] = [
        [0, 0, 0],
        [0, 1, 1],
        [1, 2, 3],
        [1, 3, 2],
        [2, 0, 2],
        [2, 1, 3],
        [3, 2, 1],
        [3, 3, 0],
    ];
    let dims = Dims::new(3, 4, 4).expect("fixed dims");
    PointSet::new(dims, POINTS.iter().map(|p| Point(p.to_vec()))).expect("fixed points")
}

/// Number of random translates sampled for a seed of size `seed_len`:
/// `⌈2 k |G|^{k-1} ln|G| / seed_len⌉`.
pub fn translate_count(group: &AbelianGroup, k: usize, seed_len: usize) -> usize {
    let order = group.order() as f64;
    (2.0 * k as f64 * order.powi(k as i32 - 1) * order.ln() / seed_len as f64).ceil() as usize
}

/// A translate cover together with how it was assembled.
#[derive(Clone, Debug)]
pub struct TranslateCover {
    pub cover: Cover,
    /// Sampled translates, before patching.
    pub sampled: usize,
    /// Translates added to cover points the samples missed.
    pub patches: usize,
}

/// `S + t`: the first `k-1` coordinates shift by `t`, the last absorbs `-Σt`.
fn translate(group: &AbelianGroup, p: &Point, t: &[u32]) -> Point {
    let k = p.k();
    let mut out = Vec::with_capacity(k);
    let mut last = p.0[k - 1];
    for i in 0..k - 1 {
        out.push(group.add(p.0[i], t[i]));
        last = group.sub(last, t[i]);
    }
    out.push(last);
    Point(out)
}

/// Partition of the accepted points of `f_k^G` (target 0) into translates of
/// the star-free seed `s`.
pub fn translate_cover(s: &PointSet, group: &AbelianGroup, k: usize, seed: u64) -> Result<TranslateCover> {
    if s.is_empty() {
        return Err(Error::Precondition("translate cover needs a nonempty seed".into()));
    }
    let table = group.table(k)?;
    if s.dims() != table.dims() {
        return Err(Error::Precondition(format!("seed dimensions do not match {group} with k = {k}")));
    }
    if let Some(p) = s.iter().find(|p| !table.accepts(p)) {
        return Err(Error::Precondition(format!("seed point {p} is not accepted")));
    }
    if let Some(star) = first_star(s) {
        return Err(Error::Precondition(format!("seed contains the star {star}")));
    }
    let order = group.order();
    let dims = table.dims();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled = translate_count(group, k, s.len());
    let mut shifts: Vec<Vec<u32>> = (0..sampled)
        .map(|_| (0..k - 1).map(|_| rng.gen_range(0..order)).collect())
        .collect();

    // First covering translate of every accepted cell.
    let mut owner: Vec<Option<usize>> = vec![None; dims.cells()];
    let assign = |owner: &mut Vec<Option<usize>>, c: usize, t: &[u32]| {
        for p in s {
            let q = translate(group, p, t);
            let slot = &mut owner[table.cell_index(q.cell())];
            if slot.is_none() {
                *slot = Some(c);
            }
        }
    };
    for (c, t) in shifts.iter().enumerate() {
        assign(&mut owner, c, t);
    }
    let s0 = s.iter().next().expect("nonempty").clone();
    let mut patches = 0;
    for cell in 0..owner.len() {
        if owner[cell].is_none() {
            let p = dims.point_at(cell * dims.side(k - 1) as usize);
            let t: Vec<u32> = (0..k - 1).map(|i| group.sub(p.0[i], s0.0[i])).collect();
            assign(&mut owner, shifts.len(), &t);
            shifts.push(t);
            patches += 1;
        }
    }

    let mut classes: Vec<PointSet> = vec![PointSet::empty(dims); shifts.len()];
    for p in table.accepted_points() {
        let c = owner[table.cell_index(p.cell())].expect("every cell patched");
        classes[c].insert(p)?;
    }
    classes.retain(|c| !c.is_empty());
    Ok(TranslateCover {
        cover: Cover::new(classes, CoverMode::Partition),
        sampled,
        patches,
    })
}

/// Greedy 3-AP-free subset of `0..m`: add each integer unless it completes a
/// progression with two earlier members.
pub fn greedy_ap_free(m: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let mut member = vec![false; m as usize];
    for x in 0..m {
        let completes = out.iter().any(|&b| {
            let a = 2 * b as i64 - x as i64;
            a >= 0 && (a as u64) < b && member[a as usize]
        });
        if !completes {
            out.push(x);
            member[x as usize] = true;
        }
    }
    out
}

/// Behrend's sphere construction in `0..m`: vectors with `d` digits in `0..=b`,
/// read in base `2b+1`, restricted to their most populous squared-norm shell.
pub fn behrend_set(m: u64) -> Vec<u64> {
    if m == 0 {
        return Vec::new();
    }
    let lg = (m as f64).log2();
    let d = (lg.sqrt().round() as u32).max(1);
    // Largest b with (2b+1)^d <= m.
    let mut b = 0u64;
    while (2 * (b + 1) + 1).checked_pow(d).map_or(false, |v| v <= m) {
        b += 1;
    }
    if b < 1 {
        return greedy_ap_free(m);
    }
    let base = 2 * b + 1;
    let mut shells: std::collections::BTreeMap<u64, Vec<u64>> = std::collections::BTreeMap::new();
    let count = (b + 1).pow(d);
    for code in 0..count {
        let mut rest = code;
        let (mut value, mut place, mut norm) = (0u64, 1u64, 0u64);
        for _ in 0..d {
            let digit = rest % (b + 1);
            rest /= b + 1;
            value += digit * place;
            place *= base;
            norm += digit * digit;
        }
        shells.entry(norm).or_default().push(value);
    }
    // Largest shell; ties go to the smallest norm.
    let mut best: Vec<u64> = Vec::new();
    for (_, vals) in shells {
        if vals.len() > best.len() {
            best = vals;
        }
    }
    best.sort_unstable();
    best
}

/// A 3-term progression `a < b < c` with `a + c = 2b`, if present.
pub fn find_three_ap(set: &[u64]) -> Option<(u64, u64, u64)> {
    let members: BTreeSet<u64> = set.iter().copied().collect();
    let sorted: Vec<u64> = members.iter().copied().collect();
    for (i, &a) in sorted.iter().enumerate() {
        for &c in &sorted[i + 1..] {
            if (a + c) % 2 == 0 && members.contains(&((a + c) / 2)) {
                return Some((a, (a + c) / 2, c));
            }
        }
    }
    None
}

/// `{(x, y) ∈ [n]^2 : x + 2y ∈ B}` as a `k = 2` point set.
pub fn corner_free_from_ap_free(b: &[u64], n: u32) -> Result<PointSet> {
    if let Some((x, y, z)) = find_three_ap(b) {
        return Err(Error::Precondition(format!("{{{x}, {y}, {z}}} is a 3-term progression")));
    }
    let members: BTreeSet<u64> = b.iter().copied().collect();
    let dims = Dims::new(2, n, n)?;
    let mut out = PointSet::empty(dims);
    for x in 0..n {
        for y in 0..n {
            if members.contains(&(x as u64 + 2 * y as u64)) {
                out.insert(Point(vec![x, y]))?;
            }
        }
    }
    Ok(out)
}

/// A corner `(a,b), (a+d,b), (a,b+d)` with `d != 0` (integer arithmetic).
pub fn find_corner(s: &PointSet) -> Option<[Point; 3]> {
    for p in s {
        let (a, b) = (p.0[0] as i64, p.0[1] as i64);
        for q in s {
            if q.0[1] as i64 != b || q == p {
                continue;
            }
            let d = q.0[0] as i64 - a;
            let r = b + d;
            if r >= 0 {
                let third = Point(vec![a as u32, r as u32]);
                if s.contains(&third) {
                    return Some([p.clone(), q.clone(), third]);
                }
            }
        }
    }
    None
}

/// Star-free class of the mod-`n` table `A(x, y) = (n - x - y) mod n`.
///
/// Cells are restricted to the quadrant `x, y < ⌊n/2⌋`: there a corner modulo
/// `n` is an integer corner, which `x + 2y ∈ B` rules out. The full grid does
/// not have this property because corners may wrap around.
pub fn modn_corner_free_class(n: u32, b: &[u64]) -> Result<PointSet> {
    let h = n / 2;
    let grid = corner_free_from_ap_free(b, n)?;
    let dims = Dims::new(3, n, n)?;
    let mut out = PointSet::empty(dims);
    for p in &grid {
        let (x, y) = (p.0[0], p.0[1]);
        if x < h && y < h {
            out.insert(Point(vec![x, y, (2 * n - x - y) % n]))?;
        }
    }
    Ok(out)
}

/// The AP-free set used by the baseline on `0..m`: Behrend's set, or the greedy
/// set when that is larger (as it is at every size the tests can exhaust).
pub fn baseline_ap_free(m: u64) -> Vec<u64> {
    let behrend = behrend_set(m);
    let greedy = greedy_ap_free(m);
    if behrend.len() >= greedy.len() {
        behrend
    } else {
        greedy
    }
}

/// Seed class of the baseline for `Z_n`.
pub fn cfl_seed_class(n: u32) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::Config(format!("cfl baseline needs n >= 2 (got {n})")));
    }
    let h = (n / 2) as u64;
    modn_corner_free_class(n, &baseline_ap_free(3 * h - 2))
}

/// Behrend-style protocol for `x + y + z ≡ 0 (mod n)`: a corner-free seed,
/// translated over `Z_n^2` and compiled.
pub fn cfl_baseline_protocol(n: u32, seed: u64) -> Result<CoverProtocol> {
    let group = AbelianGroup::cyclic(n)?;
    let class = cfl_seed_class(n)?;
    let tc = translate_cover(&class, &group, 3, seed)?;
    compile_cover_protocol(&group.table(3)?, &tc.cover)
}

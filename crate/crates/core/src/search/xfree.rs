//! X-free subsets of `Z_q^n` and the map `ψ(a, b) = 2a + b` that identifies
//! star-free sets of the `Z_2^n` table with X-free sets of `Z_4^n`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::engine::Engine;
use crate::error::{Error, Result};

/// A set of `s`-tuples over `Z_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XPattern {
    pub q: u32,
    pub tuples: BTreeSet<Vec<u32>>,
}

impl XPattern {
    pub fn new(q: u32, tuples: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let tuples: BTreeSet<Vec<u32>> = tuples.into_iter().collect();
        let arity = tuples.iter().next().map_or(0, Vec::len);
        if arity < 2 || tuples.iter().any(|t| t.len() != arity || t.iter().any(|&v| v >= q)) {
            return Err(Error::Config(format!("pattern tuples must share one arity >= 2 over Z_{q}")));
        }
        Ok(XPattern { q, tuples })
    }

    pub fn arity(&self) -> usize {
        self.tuples.iter().next().map_or(0, Vec::len)
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        self.tuples.contains(t)
    }

    pub fn is_subset(&self, other: &XPattern) -> bool {
        self.q == other.q && self.tuples.is_subset(&other.tuples)
    }
}

/// Named patterns: `theorem19`, `hales-jewett` (`param` = s), `capset` (`param` = q).
pub fn xpattern_catalog(name: &str, param: Option<u32>) -> Result<XPattern> {
    match name {
        "theorem19" => XPattern::new(
            4,
            [
                [0, 0, 0],
                [1, 1, 1],
                [2, 2, 2],
                [3, 3, 3],
                [0, 1, 2],
                [1, 0, 3],
                [2, 3, 0],
                [3, 2, 1],
            ]
            .map(|t| t.to_vec()),
        ),
        "hales-jewett" | "hj" => {
            let s = param.ok_or_else(|| Error::Config("hales-jewett needs s".into()))?;
            if s < 2 {
                return Err(Error::Config("hales-jewett needs s >= 2".into()));
            }
            let mut tuples = vec![(0..s).collect::<Vec<u32>>()];
            tuples.extend((0..s).map(|i| vec![i; s as usize]));
            XPattern::new(s, tuples)
        }
        "capset" => {
            let q = param.ok_or_else(|| Error::Config("capset needs q".into()))?;
            if q < 2 {
                return Err(Error::Config("capset needs q >= 2".into()));
            }
            let mut tuples = Vec::new();
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        if (a + c) % q == (2 * b) % q {
                            tuples.push(vec![a, b, c]);
                        }
                    }
                }
            }
            XPattern::new(q, tuples)
        }
        other => Err(Error::Config(format!("unknown pattern {other:?}"))),
    }
}

/// `ψ` entry-wise: `(a_i, b_i) -> 2 a_i + b_i`.
pub fn psi_map(a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
    if a.len() != b.len() {
        return Err(Error::Config("psi needs vectors of equal length".into()));
    }
    if let Some(v) = a.iter().chain(b).find(|&&v| v > 1) {
        return Err(Error::OutOfRange(format!("{v} is not a bit")));
    }
    Ok(a.iter().zip(b).map(|(&x, &y)| 2 * x + y).collect())
}

pub fn psi_inverse(v: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
    if let Some(x) = v.iter().find(|&&x| x > 3) {
        return Err(Error::OutOfRange(format!("{x} is not in Z_4")));
    }
    Ok((v.iter().map(|x| x >> 1).collect(), v.iter().map(|x| x & 1).collect()))
}

/// Image under `ψ` of the `Z_2` star `(x, y), (x, y + d), (x + d, y)`.
pub fn psi_star_image(x: u32, y: u32, d: u32) -> [u32; 3] {
    let psi = |a: u32, b: u32| 2 * (a & 1) + (b & 1);
    [psi(x, y), psi(x, y ^ d), psi(x ^ d, y)]
}

fn digits(mut v: usize, q: u32, n: u32) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = (v % q as usize) as u32;
            v /= q as usize;
            d
        })
        .collect()
}

/// Every ordering of `members` (all distinct indices into `w`).
fn orderings(s: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..s {
        let mut next = Vec::new();
        for pre in &out {
            for i in (0..s).filter(|i| !pre.contains(i)) {
                let mut p = pre.clone();
                p.push(i);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn violates(x: &XPattern, members: &[&Vec<u32>], perms: &[Vec<usize>]) -> bool {
    let n = members[0].len();
    perms.iter().any(|perm| {
        (0..n).all(|i| {
            let t: Vec<u32> = perm.iter().map(|&j| members[j][i]).collect();
            x.contains(&t)
        })
    })
}

/// A tuple of distinct members of `w` lying coordinatewise in `x`, if any.
pub fn xfree_violation(x: &XPattern, w: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let s = x.arity();
    let perms = orderings(s);
    let mut idx: Vec<usize> = (0..s).collect();
    if w.len() < s {
        return None;
    }
    loop {
        let members: Vec<&Vec<u32>> = idx.iter().map(|&i| &w[i]).collect();
        for perm in &perms {
            let n = members[0].len();
            if (0..n).all(|i| x.contains(&perm.iter().map(|&j| members[j][i]).collect::<Vec<_>>())) {
                return Some(perm.iter().map(|&j| members[j].clone()).collect());
            }
        }
        // Next combination.
        let mut i = s;
        while i > 0 && idx[i - 1] == w.len() - s + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return None;
        }
        idx[i - 1] += 1;
        for j in i..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn is_xfree(x: &XPattern, w: &[Vec<u32>]) -> bool {
    xfree_violation(x, w).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XFreeResult {
    pub witness: Vec<Vec<u32>>,
    pub value: usize,
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Largest X-free subset of `Z_q^n`.
pub fn xfree_max(x: &XPattern, n: u32, budget: u64) -> Result<XFreeResult> {
    let size = (x.q as u64)
        .checked_pow(n)
        .filter(|&s| s <= 1 << 12)
        .ok_or_else(|| Error::Config(format!("Z_{}^{n} is too large to search", x.q)))? as usize;
    let elems: Vec<Vec<u32>> = (0..size).map(|v| digits(v, x.q, n)).collect();
    let s = x.arity();
    let perms = orderings(s);
    let mut edges = Vec::new();
    if size >= s {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let members: Vec<&Vec<u32>> = idx.iter().map(|&i| &elems[i]).collect();
            if violates(x, &members, &perms) {
                edges.push(idx.clone());
            }
            let mut i = s;
            while i > 0 && idx[i - 1] == size - s + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..s {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    let out = Engine::new(size, vec![], edges).solve(budget);
    let mut witness: Vec<Vec<u32>> = out.best.iter().map(|&i| elems[i].clone()).collect();
    witness.sort();
    if let Some(t) = xfree_violation(x, &witness) {
        return Err(Error::Invariant(format!("X-free witness contains {t:?}")));
    }
    Ok(XFreeResult {
        value: witness.len(),
        witness,
        exhaustive: out.exhaustive,
        nodes: out.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_examples() {
        assert_eq!(psi_map(&[0], &[1]).unwrap(), vec![1]);
        assert_eq!(psi_map(&[1, 0], &[1, 1]).unwrap(), vec![3, 1]);
        for v in 0..16u32 {
            let w = vec![v & 3, v >> 2];
            let (a, b) = psi_inverse(&w).unwrap();
            assert_eq!(psi_map(&a, &b).unwrap(), w);
        }
    }

    #[test]
    fn catalog_shapes() {
        let t19 = xpattern_catalog("theorem19", None).unwrap();
        assert_eq!(t19.tuples.len(), 8);
        assert!(t19.is_subset(&xpattern_catalog("capset", Some(4)).unwrap()));
        let hj = xpattern_catalog("hales-jewett", Some(4)).unwrap();
        assert_eq!(hj.tuples.len(), 5);
        assert!(hj.contains(&[0, 1, 2, 3]));
        assert!(xpattern_catalog("nope", None).is_err());
    }

    #[test]
    fn xfree_z4_line_by_brute_force() {
        let x = xpattern_catalog("theorem19", None).unwrap();
        let brute = (0u32..16)
            .filter(|&mask| {
                let w: Vec<Vec<u32>> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| vec![i]).collect();
                is_xfree(&x, &w)
            })
            .map(u32::count_ones)
            .max()
            .unwrap();
        let r = xfree_max(&x, 1, u64::MAX).unwrap();
        assert_eq!(r.value as u32, brute);
        assert!(r.exhaustive);
    }

    #[test]
    fn full_pattern_allows_two() {
        let all: Vec<Vec<u32>> = (0..27).map(|v| vec![v % 3, v / 3 % 3, v / 9]).collect();
        let x = XPattern::new(3, all).unwrap();
        assert_eq!(xfree_max(&x, 2, u64::MAX).unwrap().value, 2);
    }
}

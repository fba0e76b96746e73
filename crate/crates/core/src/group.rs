//! Finite abelian groups `Z_m^d` and their Exact-T tables.
//!
//! Elements are encoded as integers `0..m^d` whose base-`m` digits (least
//! significant first) are the coordinates. `Z_2^b` is `m = 2, d = b` (the
//! encoding is then a bitmask and addition is XOR); `Z_n` is `m = n, d = 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::GraphFunctionTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub modulus: u32,
    pub dim: u32,
}

impl AbelianGroup {
    pub fn new(modulus: u32, dim: u32) -> Result<Self> {
        if modulus < 2 || dim == 0 {
            return Err(Error::Config(format!("Z_{modulus}^{dim} is not a supported group")));
        }
        let g = AbelianGroup { modulus, dim };
        if (modulus as u64).checked_pow(dim).map_or(true, |o| o > u32::MAX as u64) {
            return Err(Error::Config(format!("{g} is too large")));
        }
        Ok(g)
    }

    /// `Z_2^bits`.
    pub fn binary(bits: u32) -> Result<Self> {
        Self::new(2, bits)
    }

    /// `Z_n`.
    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn order(&self) -> u32 {
        self.modulus.pow(self.dim)
    }

    pub fn is_binary(&self) -> bool {
        self.modulus == 2
    }

    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.dim)
            .map(|_| {
                let d = a % self.modulus;
                a /= self.modulus;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.modulus + d)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.is_binary() {
            return a ^ b;
        }
        let m = self.modulus;
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..self.dim {
            out += ((a % m + b % m) % m) * place;
            a /= m;
            b /= m;
            place = place.wrapping_mul(m);
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.is_binary() {
            return a;
        }
        let m = self.modulus;
        let digits: Vec<u32> = self.digits(a).into_iter().map(|d| (m - d) % m).collect();
        self.from_digits(&digits)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// `A(x_1..x_{k-1}) = target - Σ x_i`: the table of `f_{k,T}^G`.
    pub fn exact_t_table(&self, k: usize, target: u32) -> Result<GraphFunctionTable> {
        if target >= self.order() {
            return Err(Error::OutOfRange(format!("target {target} not in {self}")));
        }
        let order = self.order();
        GraphFunctionTable::from_fn(k, order, order, |cell| {
            cell.iter().fold(target, |acc, &x| self.sub(acc, x))
        })
    }

    /// The `T = 0` table `A_k^G`.
    pub fn table(&self, k: usize) -> Result<GraphFunctionTable> {
        self.exact_t_table(k, 0)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 1 {
            write!(f, "Z_{}", self.modulus)
        } else {
            write!(f, "Z_{}^{}", self.modulus, self.dim)
        }
    }
}

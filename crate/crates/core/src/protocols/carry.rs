//! Exactly-n and `Z_m^d` protocols: agree on a carry vector first, then run
//! the vector protocol against the carry-adjusted target.

use serde::{Deserialize, Serialize};

use super::exact_t::{to_digits, visible_digits, VectorForm, VectorStage};
use crate::error::{Error, Result};
use crate::model::{bit_width, Bits, Blackboard, Protocol, SweepReport, Turn, View};

/// An element of `Z_m^d` (or `[m]^d`), digits least significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupVector {
    pub modulus: u64,
    pub digits: Vec<u32>,
}

impl GroupVector {
    pub fn new(modulus: u64, digits: Vec<u32>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Config(format!("modulus {modulus} < 2")));
        }
        if let Some(d) = digits.iter().find(|&&d| d as u64 >= modulus) {
            return Err(Error::OutOfRange(format!("digit {d} not below {modulus}")));
        }
        Ok(GroupVector { modulus, digits })
    }

    pub fn from_int(x: u64, modulus: u64, d: usize) -> Self {
        let digits = to_digits(x, modulus, d).into_iter().map(|v| v as u32).collect();
        GroupVector { modulus, digits }
    }

    pub fn to_int(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.modulus + d as u64)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    fn signed(&self) -> Vec<i64> {
        self.digits.iter().map(|&d| d as i64).collect()
    }
}

/// Per-digit carries in `{0, 1, 2}`. A player whose carry inequality has no
/// solution at some digit marks that digit and all later ones `INVALID`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CarryVector {
    pub entries: Vec<u8>,
}

impl CarryVector {
    pub const INVALID: u8 = 3;

    pub fn is_valid(&self) -> bool {
        self.entries.iter().all(|&c| c < Self::INVALID)
    }

    /// Two bits per digit, digit 1 first.
    pub fn to_bits(&self) -> Bits {
        Bits::from_uint(self.pack(), 2 * self.entries.len())
    }

    pub fn from_bits(bits: &Bits) -> Self {
        let d = bits.len() / 2;
        let v = bits.to_uint();
        let entries = (0..d).map(|i| ((v >> (2 * (d - 1 - i))) & 3) as u8).collect();
        CarryVector { entries }
    }

    fn pack(&self) -> u64 {
        self.entries.iter().fold(0, |acc, &c| acc << 2 | c as u64)
    }
}

/// How carries are derived from the two visible inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CarryRule {
    /// `T_i + (k-1)m < a_i + b_i + C_{i-1} <= T_i + km`, chained through digits.
    Chained,
    /// Per-digit overflow `T_i + (k-1)m < a_i + b_i <= T_i + km`.
    Modular,
}

/// Carry vector a player computes from the two inputs it sees.
pub fn carry_vector(rule: CarryRule, target: &[i64], m: i64, a: &[i64], b: &[i64]) -> CarryVector {
    let mut entries = Vec::with_capacity(target.len());
    let mut prev = 0i64;
    for (i, &t) in target.iter().enumerate() {
        let s = a[i] + b[i] + if rule == CarryRule::Chained { prev } else { 0 };
        match (0..=2i64).find(|&k| t + (k - 1) * m < s && s <= t + k * m) {
            Some(k) => {
                entries.push(k as u8);
                prev = k;
            }
            None => {
                entries.resize(target.len(), CarryVector::INVALID);
                break;
            }
        }
    }
    CarryVector { entries }
}

/// Adjusted target `T'`. Only meaningful for a valid carry vector.
pub fn adjusted_target(rule: CarryRule, target: &[i64], m: i64, c: &CarryVector) -> Vec<i64> {
    let mut prev = 0i64;
    target
        .iter()
        .zip(&c.entries)
        .map(|(&t, &ci)| {
            let ci = ci as i64;
            let out = match rule {
                CarryRule::Chained => t + m * ci - prev,
                CarryRule::Modular => t + m * ci,
            };
            prev = ci;
            out
        })
        .collect()
}

/// `2^⌈√(log2 n)⌉`, clamped to `[2, n]`.
pub fn choose_base(n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    // ⌈log2 n⌉ <= s² iff 2^{s²} >= n; the smallest such s is ⌈√(log2 n)⌉.
    let lg = 64 - (n - 1).leading_zeros() as u64;
    let mut s = 0u64;
    while s * s < lg {
        s += 1;
    }
    (1u64 << s).clamp(2, n)
}

/// Digits needed by the Exactly-n protocol: `1 + ⌈log_m n⌉`.
pub fn exactly_n_digits(n: u64, m: u64) -> usize {
    let mut e = 0;
    let mut p = 1u64;
    while p < n {
        p = p.saturating_mul(m);
        e += 1;
    }
    1 + e
}

/// Carry agreement followed by the vector protocol.
#[derive(Clone, Debug)]
pub struct CarryProtocol {
    rule: CarryRule,
    m: u64,
    d: usize,
    target: Vec<i64>,
    domain: u64,
    form: VectorForm,
    width: usize,
    name: String,
}

impl CarryProtocol {
    fn build(rule: CarryRule, m: u64, d: usize, target: Vec<i64>, domain: u64, name: &str) -> Result<Self> {
        let form = VectorForm::default();
        let mi = m as i64;
        let lo: Vec<i64> = target.iter().map(|&t| if rule == CarryRule::Chained { t - 2 } else { t }).collect();
        let hi: Vec<i64> = target.iter().map(|&t| t + 2 * mi).collect();
        let width = bit_width(form.max_announced(&lo, &hi, m)?).max(1);
        Ok(CarryProtocol {
            rule,
            m,
            d,
            target,
            domain,
            form,
            width,
            name: name.into(),
        })
    }

    /// Exactly-n: inputs in `[n]`, accept iff `x + y + z = n`.
    pub fn exactly_n(n: u64, m: u64) -> Result<Self> {
        if n < 1 || m < 2 {
            return Err(Error::Config(format!("exactly_n needs n >= 1 and m >= 2 (got n = {n}, m = {m})")));
        }
        let d = exactly_n_digits(n, m);
        if m.checked_pow(d as u32).is_none() || 2 * d > 64 {
            return Err(Error::Config(format!("base {m} with {d} digits overflows")));
        }
        Self::build(CarryRule::Chained, m, d, to_digits(n, m, d), n, "exactly_n")
    }

    /// `Z_m^d` Exact-T: accept iff `x + y + z ≡ T` coordinatewise mod `m`.
    pub fn zmd(target: &GroupVector) -> Result<Self> {
        let (m, d) = (target.modulus, target.len());
        if m < 2 || d == 0 {
            return Err(Error::Config("zmd needs m >= 2 and d >= 1".into()));
        }
        let domain = m
            .checked_pow(d as u32)
            .filter(|_| 2 * d <= 64)
            .ok_or_else(|| Error::Config(format!("Z_{m}^{d} is too large")))?;
        Self::build(CarryRule::Modular, m, d, target.signed(), domain, "zmd_modular")
    }

    pub fn base(&self) -> u64 {
        self.m
    }

    pub fn digits(&self) -> usize {
        self.d
    }

    pub fn target(&self) -> &[i64] {
        &self.target
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Length of the longest transcript: carries, two agreement bits, the
    /// announced value and two more agreement bits.
    pub fn analytic_cost(&self) -> usize {
        2 * self.d + 2 + self.width + 2
    }

    pub fn oracle(&self, input: &[u64]) -> bool {
        match self.rule {
            CarryRule::Chained => input.iter().sum::<u64>() == from_target(&self.target, self.m),
            CarryRule::Modular => {
                let ds: Vec<Vec<i64>> = input.iter().map(|&v| to_digits(v, self.m, self.d)).collect();
                (0..self.d).all(|i| (ds[0][i] + ds[1][i] + ds[2][i]) % self.m as i64 == self.target[i])
            }
        }
    }

    /// The carry vector of `player` on `input`.
    pub fn player_carry(&self, player: usize, input: &[u64]) -> CarryVector {
        let view = View::new(player, input);
        let [a, b] = visible_digits(&view, self.m, self.d);
        carry_vector(self.rule, &self.target, self.m as i64, &a, &b)
    }

    fn stage(&self) -> VectorStage<'_> {
        VectorStage {
            form: &self.form,
            width: self.width,
            offset: 3,
        }
    }

    fn board_carry(board: &Blackboard) -> CarryVector {
        CarryVector::from_bits(board.get(0).expect("carries announced first"))
    }

    /// Exhaustive sweep of Exactly-n against `x + y + z = n`, using per-view
    /// lookup tables instead of the generic simulator. Agrees with
    /// `sweep(self, oracle)` input by input.
    pub fn fast_sweep(&self) -> Result<SweepReport> {
        if self.rule != CarryRule::Chained {
            return Err(Error::Config("fast sweep is for exactly_n".into()));
        }
        let n = self.domain as usize;
        if n > 1 << 12 {
            return Err(Error::Config(format!("n = {n} too large for an exhaustive sweep")));
        }
        let mi = self.m as i64;
        let digits: Vec<Vec<i64>> = (0..n as u64).map(|v| to_digits(v, self.m, self.d)).collect();
        // Carry code and, for each player, the announced-value candidate
        // indexed by the pair that player sees.
        let mut code = vec![0u64; n * n];
        let mut norm = [vec![0u64; n * n], vec![0u64; n * n], vec![0u64; n * n]];
        for a in 0..n {
            for b in 0..n {
                let c = carry_vector(self.rule, &self.target, mi, &digits[a], &digits[b]);
                code[a * n + b] = c.pack();
                if !c.is_valid() {
                    continue;
                }
                let t = adjusted_target(self.rule, &self.target, mi, &c);
                for (p, slot) in norm.iter_mut().enumerate() {
                    let v = self.form.player_vector(p, [&digits[a], &digits[b]], &t);
                    slot[a * n + b] = self.form.value(&v);
                }
            }
        }
        let invalid = |c: u64| (0..self.d).any(|i| (c >> (2 * i)) & 3 == 3);
        let short = 2 * self.d + 2;
        let long = self.analytic_cost();
        let total = (n as u64).pow(3);
        let mut report = SweepReport {
            inputs: total,
            correct: 0,
            max_bits: 0,
            mean_bits: 0.0,
            counterexample: None,
        };
        let mut bit_sum = 0u64;
        for x in 0..n {
            for y in 0..n {
                let cz = code[x * n + y];
                let nz = norm[2][x * n + y];
                for z in 0..n {
                    let cx = code[y * n + z];
                    let cy = code[x * n + z];
                    let reached = cx == cy && cx == cz && !invalid(cx);
                    let accept = reached && {
                        let nx = norm[0][y * n + z];
                        nx == norm[1][x * n + z] && nx == nz
                    };
                    let bits = if reached { long } else { short };
                    bit_sum += bits as u64;
                    report.max_bits = report.max_bits.max(bits);
                    if accept == (x + y + z == n) {
                        report.correct += 1;
                    } else if report.counterexample.is_none() {
                        report.counterexample = Some(vec![x as u64, y as u64, z as u64]);
                    }
                }
            }
        }
        if total > 0 {
            report.mean_bits = bit_sum as f64 / total as f64;
        }
        Ok(report)
    }
}

fn from_target(target: &[i64], m: u64) -> u64 {
    target.iter().rev().fold(0u64, |acc, &d| acc * m + d as u64)
}

impl Protocol for CarryProtocol {
    fn players(&self) -> usize {
        3
    }

    fn ranges(&self) -> Vec<u64> {
        vec![self.domain; 3]
    }

    fn turn(&self, board: &Blackboard) -> Turn {
        match board.len() {
            0 => Turn::Speak(0),
            1 => Turn::Speak(1),
            2 => Turn::Speak(2),
            3 => {
                let agreed = board.get(1).unwrap().to_uint() == 1 && board.get(2).unwrap().to_uint() == 1;
                if agreed && Self::board_carry(board).is_valid() {
                    Turn::Speak(0)
                } else {
                    Turn::Halt(false)
                }
            }
            _ => self.stage().turn(board),
        }
    }

    fn message(&self, view: &View, board: &Blackboard) -> Bits {
        let [a, b] = visible_digits(view, self.m, self.d);
        let mi = self.m as i64;
        match board.len() {
            0..=2 => {
                let own = carry_vector(self.rule, &self.target, mi, &a, &b);
                if board.is_empty() {
                    own.to_bits()
                } else {
                    Bits::bit(own == Self::board_carry(board))
                }
            }
            _ => {
                let t = adjusted_target(self.rule, &self.target, mi, &Self::board_carry(board));
                self.stage().message(view.player(), [&a, &b], &t, board)
            }
        }
    }

    fn name(&self) -> String {
        self.name.clone()
    }

    fn cost_bound(&self) -> Option<usize> {
        Some(self.analytic_cost())
    }
}

pub fn exactly_n_protocol(n: u64, m: u64) -> Result<CarryProtocol> {
    CarryProtocol::exactly_n(n, m)
}

pub fn zmd_modular_protocol(target: &GroupVector) -> Result<CarryProtocol> {
    CarryProtocol::zmd(target)
}

//! Exact-T over `Z^d`: each player estimates `a x + b y + c z` by substituting
//! `T - (the two inputs it sees)` for its own input, player 0 announces the
//! quadratic form of its estimate, and the others report whether theirs agree.
//!
//! With `a, b, c` pairwise distinct the three estimates are distinct points on
//! one line unless `x + y + z = T`, and a positive definite form cannot take
//! the same value at three distinct collinear points.

use crate::error::{Error, Result};
use crate::model::{bit_width, Bits, Blackboard, Protocol, Turn, View};

/// The form `v -> v D v^t`; `Identity` is the squared Euclidean norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticForm {
    Identity,
    Matrix(Vec<Vec<i64>>),
}

impl QuadraticForm {
    pub fn eval(&self, v: &[i64]) -> i128 {
        match self {
            QuadraticForm::Identity => v.iter().map(|&x| (x as i128) * (x as i128)).sum(),
            QuadraticForm::Matrix(m) => {
                let mut acc = 0i128;
                for (i, row) in m.iter().enumerate() {
                    for (j, &e) in row.iter().enumerate() {
                        acc += v[i] as i128 * e as i128 * v[j] as i128;
                    }
                }
                acc
            }
        }
    }

    /// Positive definiteness of the symmetric part, by Sylvester's criterion
    /// with exact fraction-free elimination.
    pub fn validate(&self, d: usize) -> Result<()> {
        let QuadraticForm::Matrix(m) = self else {
            return Ok(());
        };
        if m.len() != d || m.iter().any(|r| r.len() != d) {
            return Err(Error::Config(format!("form must be {d} x {d}")));
        }
        // 2 * symmetric part keeps entries integral.
        let mut a: Vec<Vec<i128>> = (0..d)
            .map(|i| (0..d).map(|j| m[i][j] as i128 + m[j][i] as i128).collect())
            .collect();
        // Bareiss: after step k, a[k][k] is the (k+1)-th leading principal minor.
        let mut prev = 1i128;
        for k in 0..d {
            if a[k][k] <= 0 {
                return Err(Error::Config(
                    "quadratic form is not positive definite".into(),
                ));
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        Ok(())
    }

    /// Upper bound on the form over the box `∏ [lo_i, hi_i]`.
    fn max_over_box(&self, lo: &[i64], hi: &[i64]) -> i128 {
        match self {
            QuadraticForm::Identity => lo
                .iter()
                .zip(hi)
                .map(|(&l, &h)| {
                    let a = (l as i128).abs().max((h as i128).abs());
                    a * a
                })
                .sum(),
            QuadraticForm::Matrix(m) if lo.len() <= 16 => {
                // A convex function attains its maximum over a box at a vertex.
                let d = lo.len();
                (0u32..1 << d)
                    .map(|mask| {
                        let v: Vec<i64> =
                            (0..d).map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] }).collect();
                        QuadraticForm::Matrix(m.clone()).eval(&v)
                    })
                    .max()
                    .unwrap_or(0)
            }
            QuadraticForm::Matrix(m) => {
                let amax: Vec<i128> =
                    lo.iter().zip(hi).map(|(&l, &h)| (l as i128).abs().max((h as i128).abs())).collect();
                let mut acc = 0i128;
                for (i, row) in m.iter().enumerate() {
                    for (j, &e) in row.iter().enumerate() {
                        acc += (e as i128).abs() * amax[i] * amax[j];
                    }
                }
                acc
            }
        }
    }
}

/// Weights `(a, b, c)` and the compared form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorForm {
    pub weights: [i64; 3],
    pub quad: QuadraticForm,
}

impl Default for VectorForm {
    fn default() -> Self {
        VectorForm {
            weights: [1, 2, 3],
            quad: QuadraticForm::Identity,
        }
    }
}

impl VectorForm {
    pub fn new(weights: [i64; 3], quad: QuadraticForm, d: usize) -> Result<Self> {
        let [a, b, c] = weights;
        if a == b || b == c || a == c {
            return Err(Error::Config(format!(
                "weights ({a}, {b}, {c}) must be pairwise distinct"
            )));
        }
        quad.validate(d)?;
        Ok(VectorForm { weights, quad })
    }

    /// The estimate `v` of `player`, who sees the other two inputs (in index
    /// order) and substitutes `target - others` for its own.
    pub fn player_vector(&self, player: usize, others: [&[i64]; 2], target: &[i64]) -> Vec<i64> {
        let d = target.len();
        let w = self.weights;
        let (o1, o2) = (others[0], others[1]);
        let (wi, wj, wk) = match player {
            0 => (w[0], w[1], w[2]),
            1 => (w[1], w[0], w[2]),
            2 => (w[2], w[0], w[1]),
            _ => panic!("three-player protocol"),
        };
        (0..d)
            .map(|t| wi * (target[t] - o1[t] - o2[t]) + wj * o1[t] + wk * o2[t])
            .collect()
    }

    pub fn value(&self, v: &[i64]) -> u64 {
        let q = self.quad.eval(v);
        debug_assert!(q >= 0);
        u64::try_from(q).expect("announced value fits in 64 bits")
    }

    /// Largest value player 0 can announce when each target digit lies in
    /// `[target_lo, target_hi]` and inputs have digits in `0..m`.
    pub fn max_announced(&self, target_lo: &[i64], target_hi: &[i64], m: u64) -> Result<u64> {
        let [a, b, c] = self.weights;
        let top = m as i64 - 1;
        let span = |w: i64| (w.min(0) * top, w.max(0) * top);
        let (by_lo, by_hi) = span(b - a);
        let (cz_lo, cz_hi) = span(c - a);
        let mut lo = Vec::with_capacity(target_lo.len());
        let mut hi = Vec::with_capacity(target_lo.len());
        for (&tl, &th) in target_lo.iter().zip(target_hi) {
            let (t1, t2) = (a * tl, a * th);
            lo.push(t1.min(t2) + by_lo + cz_lo);
            hi.push(t1.max(t2) + by_hi + cz_hi);
        }
        let q = self.quad.max_over_box(&lo, &hi);
        u64::try_from(q).map_err(|_| Error::Config("announced values exceed 64 bits".into()))
    }
}

/// Digits of `x` in base `m`, least significant first.
pub fn to_digits(mut x: u64, m: u64, d: usize) -> Vec<i64> {
    (0..d)
        .map(|_| {
            let r = x % m;
            x /= m;
            r as i64
        })
        .collect()
}

pub fn from_digits(digits: &[i64], m: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * m + d as u64)
}

/// The two inputs a player sees, decoded.
pub(crate) fn visible_digits(view: &View, m: u64, d: usize) -> [Vec<i64>; 2] {
    let v = view.visible();
    [to_digits(v[0], m, d), to_digits(v[1], m, d)]
}

/// Messages of the vector stage, shared with the carry-based protocols.
/// `offset` is the blackboard position where the stage starts.
pub(crate) struct VectorStage<'a> {
    pub form: &'a VectorForm,
    pub width: usize,
    pub offset: usize,
}

impl VectorStage<'_> {
    pub fn turn(&self, board: &Blackboard) -> Turn {
        match board.len() - self.offset {
            0 => Turn::Speak(0),
            1 => Turn::Speak(1),
            2 => Turn::Speak(2),
            _ => {
                let ok = |i: usize| board.get(self.offset + i).map_or(false, |b| b.to_uint() == 1);
                Turn::Halt(ok(1) && ok(2))
            }
        }
    }

    pub fn message(&self, player: usize, others: [&[i64]; 2], target: &[i64], board: &Blackboard) -> Bits {
        let value = self.form.value(&self.form.player_vector(player, others, target));
        if player == 0 {
            Bits::from_uint(value, self.width)
        } else {
            let announced = board.get(self.offset).expect("value announced first").to_uint();
            Bits::bit(value == announced)
        }
    }
}

/// Three-player Exact-T over `Z^d` with inputs in `[m]^d`, each encoded as an
/// integer in `0..m^d` (digits least significant first).
#[derive(Clone, Debug)]
pub struct ExactTVector {
    m: u64,
    d: usize,
    target: Vec<i64>,
    form: VectorForm,
    width: usize,
}

impl ExactTVector {
    pub fn new(m: u64, d: usize, target: Vec<i64>, form: VectorForm) -> Result<Self> {
        if m < 2 || d == 0 {
            return Err(Error::Config(format!("need m >= 2 and d >= 1 (got m = {m}, d = {d})")));
        }
        if target.len() != d {
            return Err(Error::Config(format!("target has {} digits, expected {d}", target.len())));
        }
        if m.checked_pow(d as u32).is_none() {
            return Err(Error::Config(format!("m^d = {m}^{d} overflows")));
        }
        // Re-validate: the form may have been assembled by hand.
        let form = VectorForm::new(form.weights, form.quad, d)?;
        let max = form.max_announced(&target, &target, m)?;
        Ok(ExactTVector {
            m,
            d,
            width: bit_width(max).max(1),
            target,
            form,
        })
    }

    pub fn standard(m: u64, d: usize, target: Vec<i64>) -> Result<Self> {
        Self::new(m, d, target, VectorForm::default())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn form(&self) -> &VectorForm {
        &self.form
    }

    pub fn target(&self) -> &[i64] {
        &self.target
    }

    pub fn encode(&self, digits: &[i64]) -> u64 {
        from_digits(digits, self.m)
    }

    /// `x + y + z = T` over `Z^d`.
    pub fn oracle(&self, input: &[u64]) -> bool {
        let ds: Vec<Vec<i64>> = input.iter().map(|&v| to_digits(v, self.m, self.d)).collect();
        (0..self.d).all(|t| ds[0][t] + ds[1][t] + ds[2][t] == self.target[t])
    }

    /// The three estimates `(v_x, v_y, v_z)`, computed from the three views.
    pub fn estimates(&self, input: &[u64]) -> [Vec<i64>; 3] {
        std::array::from_fn(|p| {
            let view = View::new(p, input);
            let [a, b] = visible_digits(&view, self.m, self.d);
            self.form.player_vector(p, [&a, &b], &self.target)
        })
    }

    fn stage(&self) -> VectorStage<'_> {
        VectorStage {
            form: &self.form,
            width: self.width,
            offset: 0,
        }
    }
}

impl Protocol for ExactTVector {
    fn players(&self) -> usize {
        3
    }

    fn ranges(&self) -> Vec<u64> {
        vec![self.m.pow(self.d as u32); 3]
    }

    fn turn(&self, board: &Blackboard) -> Turn {
        self.stage().turn(board)
    }

    fn message(&self, view: &View, board: &Blackboard) -> Bits {
        let [a, b] = visible_digits(view, self.m, self.d);
        self.stage().message(view.player(), [&a, &b], &self.target, board)
    }

    fn name(&self) -> String {
        "exact_t_zd".into()
    }

    fn cost_bound(&self) -> Option<usize> {
        Some(self.width + 2)
    }
}

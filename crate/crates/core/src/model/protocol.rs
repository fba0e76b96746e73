//! Number-on-the-forehead blackboard simulator.
//!
//! Player `i` never receives coordinate `i` of the input: [`View`] is built
//! with that coordinate removed, so a message function has no way to read it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bit string written on the blackboard.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Bits(Vec<bool>);

impl Bits {
    pub fn new() -> Self {
        Bits(Vec::new())
    }

    pub fn bit(b: bool) -> Self {
        Bits(vec![b])
    }

    /// `value` in exactly `width` bits, most significant first.
    pub fn from_uint(value: u64, width: usize) -> Self {
        debug_assert!(width >= 64 || value >> width == 0, "{value} does not fit in {width} bits");
        Bits((0..width).rev().map(|i| i < 64 && (value >> i) & 1 == 1).collect())
    }

    pub fn to_uint(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Json(format!("bad bit character {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Bits)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Bits {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Bits::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// One message: who wrote it and what.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub player: usize,
    pub bits: Bits,
}

/// The public blackboard: the ordered list of messages so far.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Blackboard {
    events: Vec<Event>,
}

impl Blackboard {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Bits> {
        self.events.get(i).map(|e| &e.bits)
    }

    pub fn last(&self) -> Option<&Bits> {
        self.events.last().map(|e| &e.bits)
    }

    pub fn push(&mut self, player: usize, bits: Bits) {
        self.events.push(Event { player, bits });
    }

    pub fn total_bits(&self) -> usize {
        self.events.iter().map(|e| e.bits.len()).sum()
    }
}

/// What happens next, decided from the blackboard alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    Speak(usize),
    Halt(bool),
}

/// Player `i`'s view `x^{-i}` of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct View {
    player: usize,
    others: Vec<u64>,
}

impl View {
    pub fn new(player: usize, input: &[u64]) -> Self {
        let others = input
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != player)
            .map(|(_, &v)| v)
            .collect();
        View { player, others }
    }

    pub fn player(&self) -> usize {
        self.player
    }

    /// Coordinate `j` of the input.
    ///
    /// # Panics
    /// If `j` is the viewer's own coordinate, which is not stored.
    pub fn get(&self, j: usize) -> u64 {
        match j.cmp(&self.player) {
            std::cmp::Ordering::Less => self.others[j],
            std::cmp::Ordering::Greater => self.others[j - 1],
            std::cmp::Ordering::Equal => {
                panic!("player {j} cannot read its own forehead")
            }
        }
    }

    /// `x^{-i}` in order.
    pub fn visible(&self) -> &[u64] {
        &self.others
    }
}

/// A deterministic NOF protocol.
pub trait Protocol {
    /// Number of players `k`.
    fn players(&self) -> usize;

    /// Size of each coordinate's domain; inputs are `x_i in 0..ranges[i]`.
    fn ranges(&self) -> Vec<u64>;

    /// Next speaker or the output, as a function of the blackboard only.
    fn turn(&self, board: &Blackboard) -> Turn;

    /// What the speaker writes, given its view and the blackboard.
    fn message(&self, view: &View, board: &Blackboard) -> Bits;

    /// Short name for reports.
    fn name(&self) -> String;

    /// Worst-case number of bits written, when known in closed form.
    fn cost_bound(&self) -> Option<usize> {
        None
    }
}

/// Record of one run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub events: Vec<Event>,
    #[serde(with = "bit_output")]
    pub output: bool,
    pub total_bits: usize,
}

mod bit_output {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(*b as u8)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(false),
            1 => Ok(true),
            v => Err(serde::de::Error::custom(format!("output must be 0 or 1, got {v}"))),
        }
    }
}

impl Transcript {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: Transcript = serde_json::from_str(s)?;
        let sum: usize = t.events.iter().map(|e| e.bits.len()).sum();
        if sum != t.total_bits {
            return Err(Error::Json(format!(
                "total_bits {} disagrees with event payload {sum}",
                t.total_bits
            )));
        }
        Ok(t)
    }
}

/// Upper bound on the number of messages: `4k`.
pub fn step_budget(players: usize) -> usize {
    4 * players
}

/// Runs `p` on `input`.
pub fn run_protocol(p: &dyn Protocol, input: &[u64]) -> Result<Transcript> {
    let k = p.players();
    let ranges = p.ranges();
    if input.len() != k {
        return Err(Error::OutOfRange(format!(
            "input has {} coordinates, protocol has {k} players",
            input.len()
        )));
    }
    for (i, (&x, &r)) in input.iter().zip(&ranges).enumerate() {
        if x >= r {
            return Err(Error::OutOfRange(format!("coordinate {i} = {x} not below {r}")));
        }
    }
    let views: Vec<View> = (0..k).map(|i| View::new(i, input)).collect();
    let mut board = Blackboard::new();
    for _ in 0..=step_budget(k) {
        match p.turn(&board) {
            Turn::Halt(output) => {
                let total_bits = board.total_bits();
                return Ok(Transcript {
                    events: board.events,
                    output,
                    total_bits,
                });
            }
            Turn::Speak(i) => {
                if i >= k {
                    return Err(Error::Invariant(format!("turn names player {i} of {k}")));
                }
                let bits = p.message(&views[i], &board);
                board.push(i, bits);
            }
        }
    }
    Err(Error::NonTermination(step_budget(k)))
}

/// Every input of a protocol's domain, in lexicographic order.
pub fn all_inputs(ranges: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    let total: u64 = ranges.iter().product();
    (0..total).map(move |mut i| {
        let mut v = vec![0u64; ranges.len()];
        for (slot, &r) in v.iter_mut().zip(ranges).rev() {
            *slot = i % r;
            i /= r;
        }
        v
    })
}

/// Aggregate of an exhaustive run against an oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub inputs: u64,
    pub correct: u64,
    pub max_bits: usize,
    pub mean_bits: f64,
    /// First input on which the protocol disagreed with the oracle.
    pub counterexample: Option<Vec<u64>>,
}

impl SweepReport {
    pub fn correct_fraction(&self) -> f64 {
        if self.inputs == 0 {
            1.0
        } else {
            self.correct as f64 / self.inputs as f64
        }
    }

    pub fn all_correct(&self) -> bool {
        self.correct == self.inputs
    }
}

/// Runs `p` on every input and compares with `oracle`.
pub fn sweep(p: &dyn Protocol, oracle: impl Fn(&[u64]) -> bool) -> Result<SweepReport> {
    let ranges = p.ranges();
    let mut report = SweepReport {
        inputs: 0,
        correct: 0,
        max_bits: 0,
        mean_bits: 0.0,
        counterexample: None,
    };
    let mut bit_sum = 0u64;
    for input in all_inputs(&ranges) {
        let t = run_protocol(p, &input)?;
        report.inputs += 1;
        bit_sum += t.total_bits as u64;
        report.max_bits = report.max_bits.max(t.total_bits);
        if t.output == oracle(&input) {
            report.correct += 1;
        } else if report.counterexample.is_none() {
            report.counterexample = Some(input);
        }
    }
    if report.inputs > 0 {
        report.mean_bits = bit_sum as f64 / report.inputs as f64;
    }
    Ok(report)
}

/// Bit-width needed to write any value in `0..=max`.
pub fn bit_width(max: u64) -> usize {
    (64 - max.leading_zeros()) as usize
}

/// `⌈log2 x⌉` for `x >= 1`.
pub fn ceil_log2(x: u64) -> usize {
    assert!(x >= 1);
    bit_width(x - 1)
}

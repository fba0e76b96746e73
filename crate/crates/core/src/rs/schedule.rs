//! Round schedules for shared directional multi-channels.
//!
//! Each family gets its own receiver at every output. In round `j` of a
//! family the left endpoints of matching `j` transmit; every output hears all
//! active transmitters adjacent to it in that family's host, so a delivery
//! succeeds only if exactly one of them is active.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::matching::{Host, MatchingFamily};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Delivery {
    pub family: usize,
    pub round: usize,
    pub sender: u32,
    pub receiver: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub deliveries: Vec<Delivery>,
    /// Rounds used by each family.
    pub rounds: Vec<usize>,
}

impl Schedule {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("family,round,sender,receiver\n");
        for d in &self.deliveries {
            out.push_str(&format!("{},{},{},{}\n", d.family, d.round, d.sender, d.receiver));
        }
        out
    }

    /// Receivers needed at each output: one per family.
    pub fn receivers_per_output(&self) -> usize {
        self.rounds.len()
    }
}

/// Schedules every family and simulates delivery, failing on the first
/// collision.
pub fn channel_schedule(families: &[MatchingFamily]) -> Result<Schedule> {
    let mut all_edges = HashSet::new();
    for (f, fam) in families.iter().enumerate() {
        fam.check(Host::Union)
            .map_err(|e| Error::Matching(format!("family {f}: {e}")))?;
        for e in fam.matchings.iter().flatten() {
            if !all_edges.insert(*e) {
                return Err(Error::Matching(format!("edge {e:?} appears in two families")));
            }
        }
    }
    let mut deliveries = Vec::new();
    let mut rounds = Vec::with_capacity(families.len());
    for (f, fam) in families.iter().enumerate() {
        let mut senders_of: HashMap<u32, Vec<u32>> = HashMap::new();
        for &(x, y) in fam.matchings.iter().flatten() {
            senders_of.entry(y).or_default().push(x);
        }
        for (round, m) in fam.matchings.iter().enumerate() {
            let active: HashSet<u32> = m.iter().map(|&(x, _)| x).collect();
            for &(x, y) in m {
                let mut heard: Vec<u32> = senders_of[&y].iter().copied().filter(|s| active.contains(s)).collect();
                if heard != [x] {
                    heard.sort_unstable();
                    return Err(Error::Collision {
                        family: f,
                        round,
                        receiver: y,
                        senders: heard,
                    });
                }
                deliveries.push(Delivery {
                    family: f,
                    round,
                    sender: x,
                    receiver: y,
                });
            }
        }
        rounds.push(fam.matchings.len());
    }
    Ok(Schedule { deliveries, rounds })
}

//! Protocols addressed by name and parameters, as in
//! `{"protocol":"exactly_n","n":15,"m":4}`.

use serde::{Deserialize, Serialize};

use super::carry::{choose_base, CarryProtocol, GroupVector};
use super::construct::{cfl_baseline_protocol, tensor_power, translate_cover, z2_square_base_set};
use super::cover::compile_cover_protocol;
use super::exact_t::ExactTVector;
use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::model::Protocol;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "protocol", rename_all = "snake_case")]
pub enum ProtocolConfig {
    /// `x + y + z = n` over the integers; `m` defaults to `choose_base(n)`.
    ExactlyN {
        n: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<u64>,
    },
    /// `x + y + z = T` over `Z^d`, inputs in `[m]^d`.
    ExactTZd { m: u64, d: usize, target: Vec<i64> },
    /// `x + y + z ≡ T` over `Z_m^d`.
    ZmdModular { m: u64, target: Vec<u32> },
    /// Corner-free translates over `Z_n^2`, target 0.
    CflBaseline {
        n: u32,
        #[serde(default)]
        seed: u64,
    },
    /// Translates of a tensor power of the pinned 8-set over `Z_2^bits`
    /// (`bits` even), target 0.
    Z2Cover {
        bits: u32,
        #[serde(default)]
        seed: u64,
    },
}

/// A protocol together with the function it is meant to compute.
pub struct BuiltProtocol {
    pub protocol: Box<dyn Protocol>,
    pub oracle: Box<dyn Fn(&[u64]) -> bool>,
}

impl ProtocolConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    pub fn build(&self) -> Result<BuiltProtocol> {
        match self {
            ProtocolConfig::ExactlyN { n, m } => {
                let p = CarryProtocol::exactly_n(*n, m.unwrap_or_else(|| choose_base(*n)))?;
                let oracle_p = p.clone();
                Ok(BuiltProtocol {
                    protocol: Box::new(p),
                    oracle: Box::new(move |x| oracle_p.oracle(x)),
                })
            }
            ProtocolConfig::ExactTZd { m, d, target } => {
                let p = ExactTVector::standard(*m, *d, target.clone())?;
                let oracle_p = p.clone();
                Ok(BuiltProtocol {
                    protocol: Box::new(p),
                    oracle: Box::new(move |x| oracle_p.oracle(x)),
                })
            }
            ProtocolConfig::ZmdModular { m, target } => {
                let p = CarryProtocol::zmd(&GroupVector::new(*m, target.clone())?)?;
                let oracle_p = p.clone();
                Ok(BuiltProtocol {
                    protocol: Box::new(p),
                    oracle: Box::new(move |x| oracle_p.oracle(x)),
                })
            }
            ProtocolConfig::CflBaseline { n, seed } => {
                let p = cfl_baseline_protocol(*n, *seed)?;
                let oracle_p = p.clone();
                Ok(BuiltProtocol {
                    protocol: Box::new(p),
                    oracle: Box::new(move |x| oracle_p.oracle(x)),
                })
            }
            ProtocolConfig::Z2Cover { bits, seed } => {
                if *bits == 0 || bits % 2 == 1 || *bits > 8 {
                    return Err(Error::Config(format!("z2_cover needs even bits in 2..=8 (got {bits})")));
                }
                let group = AbelianGroup::binary(*bits)?;
                let seed_set = tensor_power(&z2_square_base_set(), bits / 2)?;
                let tc = translate_cover(&seed_set, &group, 3, *seed)?;
                let p = compile_cover_protocol(&group.table(3)?, &tc.cover)?;
                let oracle_p = p.clone();
                Ok(BuiltProtocol {
                    protocol: Box::new(p),
                    oracle: Box::new(move |x| oracle_p.oracle(x)),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{run_protocol, sweep};

    #[test]
    fn json_shape() {
        let c = ProtocolConfig::from_json(r#"{"protocol":"exactly_n","n":15,"m":4}"#).unwrap();
        assert_eq!(c, ProtocolConfig::ExactlyN { n: 15, m: Some(4) });
        assert_eq!(c.to_json(), r#"{"protocol":"exactly_n","n":15,"m":4}"#);
        assert!(ProtocolConfig::from_json(r#"{"protocol":"nope"}"#).is_err());
    }

    #[test]
    fn exactly_15_examples() {
        let b = ProtocolConfig::ExactlyN { n: 15, m: Some(4) }.build().unwrap();
        assert!(run_protocol(b.protocol.as_ref(), &[5, 4, 6]).unwrap().output);
        assert!(!run_protocol(b.protocol.as_ref(), &[5, 4, 7]).unwrap().output);
    }

    #[test]
    fn every_kind_is_correct_on_a_small_instance() {
        let configs = [
            ProtocolConfig::ExactlyN { n: 6, m: None },
            ProtocolConfig::ExactTZd { m: 2, d: 2, target: vec![1, 2] },
            ProtocolConfig::ZmdModular { m: 3, target: vec![2] },
            ProtocolConfig::CflBaseline { n: 4, seed: 1 },
            ProtocolConfig::Z2Cover { bits: 2, seed: 0 },
        ];
        for c in configs {
            let b = c.build().unwrap();
            assert!(sweep(b.protocol.as_ref(), &b.oracle).unwrap().all_correct(), "{c:?}");
        }
        assert!(ProtocolConfig::Z2Cover { bits: 3, seed: 0 }.build().is_err());
    }
}

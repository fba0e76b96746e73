use std::fs;

use anyhow::{bail, Context, Result};
use noflab::protocols::{cfl_seed_class, singleton_cover, tensor_power, translate_cover, z2_square_base_set, Cover};
use noflab::{AbelianGroup, GraphFunctionTable};

/// A table and, for the group families, the group it came from.
pub struct Table {
    pub table: GraphFunctionTable,
    pub group: Option<AbelianGroup>,
}

/// `xor:n` (n a power of two), `modn:n`, `zmd:m,d`, or a path to table JSON.
pub fn parse_table(spec: &str, k: usize) -> Result<Table> {
    let group = if let Some(n) = spec.strip_prefix("xor:") {
        let n: u32 = n.parse().with_context(|| format!("bad side in {spec:?}"))?;
        if !n.is_power_of_two() || n < 2 {
            bail!("xor:n needs n a power of two >= 2 (got {n})");
        }
        Some(AbelianGroup::binary(n.trailing_zeros())?)
    } else if let Some(n) = spec.strip_prefix("modn:") {
        Some(AbelianGroup::cyclic(n.parse().with_context(|| format!("bad modulus in {spec:?}"))?)?)
    } else if let Some(rest) = spec.strip_prefix("zmd:") {
        let Some((m, d)) = rest.split_once(',') else {
            bail!("zmd needs m,d (got {spec:?})");
        };
        Some(AbelianGroup::new(m.trim().parse()?, d.trim().parse()?)?)
    } else {
        None
    };
    match group {
        Some(g) => {
            let table = g.table(k)?;
            Ok(Table { table, group: Some(g) })
        }
        None => {
            let text = fs::read_to_string(spec).with_context(|| format!("reading table {spec}"))?;
            Ok(Table {
                table: GraphFunctionTable::from_json(&text)?,
                group: None,
            })
        }
    }
}

/// A star-free partition of the accepted points: translates of a known seed
/// for `Z_2^{2t}` and `Z_n` at k = 3, singletons otherwise.
pub fn default_cover(t: &Table, seed: u64) -> Result<Cover> {
    let f = &t.table;
    if let (Some(g), 3) = (&t.group, f.k()) {
        let seed_set = if g.modulus == 2 && g.dim % 2 == 0 && g.dim <= 8 {
            Some(tensor_power(&z2_square_base_set(), g.dim / 2)?)
        } else if g.dim == 1 && g.modulus >= 2 {
            Some(cfl_seed_class(g.modulus)?)
        } else {
            None
        };
        if let Some(s) = seed_set {
            return Ok(translate_cover(&s, g, 3, seed)?.cover);
        }
    }
    Ok(singleton_cover(f))
}

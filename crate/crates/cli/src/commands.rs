use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use noflab::bounds::{bound_checks, chi_exact, least_l, lemma37_extract, Coloring, ExtractionTrace};
use noflab::protocols::{choose_base, from_digits, CarryProtocol, CoverMode, ProtocolConfig};
use noflab::rs::{build_tripartite, channel_schedule, starfree_to_matchings, Host, MatchingFamily};
use noflab::search::{alpha_bar_exact, alpha_exact, is_xfree, xfree_max, xpattern_catalog};
use noflab::{first_star, run_protocol, sweep, Error, PointSet, SweepReport};
use serde_json::{json, Value};

use crate::args::{BoundsCmd, Cli, Command, Format, ProtocolName, RunArgs, SearchCmd, VerifyCmd};
use crate::tables::{default_cover, parse_table};
use crate::Exit;

pub fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Table { spec, k } => {
            let t = parse_table(spec, *k)?;
            emit(cli, &(t.table.to_json() + "\n"))
        }
        Command::Run(a) => run(cli, a),
        Command::Search(s) => search(cli, s),
        Command::Verify(v) => verify(v),
        Command::Bounds(b) => bounds(cli, b),
        Command::Graph { table } => {
            let t = parse_table(table, 3)?;
            emit(cli, &(build_tripartite(&t.table)?.to_json() + "\n"))
        }
        Command::Schedule { table } => schedule(cli, table),
    }
}

/// Writes to `--out` (then reads it back) or to stdout.
fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => write_checked(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_checked(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    let back = fs::read_to_string(path).with_context(|| format!("re-reading {}", path.display()))?;
    if back != text {
        return Err(Exit::failure(format!("{} changed after writing", path.display())));
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn single(v: &Option<Vec<u64>>, name: &str) -> Result<Vec<u64>> {
    v.clone().ok_or_else(|| anyhow!("--{name} is required without --exhaustive"))
}

fn config_from_flags(cli: &Cli, name: ProtocolName, a: &RunArgs) -> Result<ProtocolConfig> {
    let need_n = || a.n.ok_or_else(|| anyhow!("--n is required"));
    let need_m = || a.m.ok_or_else(|| anyhow!("--m is required"));
    let need_t = || a.target.clone().ok_or_else(|| anyhow!("--T is required"));
    Ok(match name {
        ProtocolName::ExactlyN => ProtocolConfig::ExactlyN { n: need_n()?, m: a.m },
        ProtocolName::ExactTZd => {
            let target = need_t()?;
            ProtocolConfig::ExactTZd {
                m: need_m()?,
                d: a.d.unwrap_or(target.len()),
                target,
            }
        }
        ProtocolName::ZmdModular => ProtocolConfig::ZmdModular {
            m: need_m()?,
            target: need_t()?
                .into_iter()
                .map(|t| u32::try_from(t).map_err(|_| anyhow!("target digit {t} is negative or too large")))
                .collect::<Result<_>>()?,
        },
        ProtocolName::CflBaseline => ProtocolConfig::CflBaseline {
            n: u32::try_from(need_n()?)?,
            seed: cli.seed,
        },
        ProtocolName::Z2Cover => {
            let n = need_n()?;
            if !n.is_power_of_two() || n.trailing_zeros() % 2 == 1 || n < 4 {
                bail!("z2_cover needs n a power of 4 (got {n})");
            }
            ProtocolConfig::Z2Cover {
                bits: n.trailing_zeros(),
                seed: cli.seed,
            }
        }
    })
}

/// Label and size column of a configured protocol.
fn describe(c: &ProtocolConfig) -> (&'static str, u64) {
    match c {
        ProtocolConfig::ExactlyN { n, .. } => ("exactly_n", *n),
        ProtocolConfig::ExactTZd { m, .. } => ("exact_t_zd", *m),
        ProtocolConfig::ZmdModular { m, .. } => ("zmd_modular", *m),
        ProtocolConfig::CflBaseline { n, .. } => ("cfl_baseline", *n as u64),
        ProtocolConfig::Z2Cover { bits, .. } => ("z2_cover", 1 << bits),
    }
}

/// Turns `--x/--y/--z` into the protocol's integer inputs.
fn explicit_input(c: &ProtocolConfig, a: &RunArgs) -> Result<Vec<u64>> {
    let parts = [single(&a.x, "x")?, single(&a.y, "y")?, single(&a.z, "z")?];
    let digits = match c {
        ProtocolConfig::ExactTZd { m, d, .. } => Some((*m, *d)),
        ProtocolConfig::ZmdModular { m, target } => Some((*m, target.len())),
        _ => None,
    };
    parts
        .iter()
        .map(|v| match digits {
            Some((m, d)) => {
                if v.len() != d || v.iter().any(|&x| x >= m) {
                    bail!("inputs need {d} digits below {m} (got {v:?})");
                }
                Ok(from_digits(&v.iter().map(|&x| x as i64).collect::<Vec<_>>(), m))
            }
            None => match v.as_slice() {
                [x] => Ok(*x),
                _ => bail!("expected a single integer input (got {v:?})"),
            },
        })
        .collect()
}

fn run(cli: &Cli, a: &RunArgs) -> Result<()> {
    let config = match (&a.config, a.protocol) {
        (Some(j), _) => ProtocolConfig::from_json(j)?,
        (None, Some(p)) => config_from_flags(cli, p, a)?,
        (None, None) => bail!("give --protocol or --config"),
    };
    let built = config.build()?;
    let (label, size) = describe(&config);
    if a.exhaustive {
        let report: SweepReport = match &config {
            ProtocolConfig::ExactlyN { n, m } if *n <= 1 << 12 => {
                CarryProtocol::exactly_n(*n, m.unwrap_or_else(|| choose_base(*n)))?.fast_sweep()?
            }
            _ => {
                let volume: u64 = built.protocol.ranges().iter().product();
                if volume > 1 << 24 {
                    bail!("{volume} inputs are too many for an exhaustive run");
                }
                sweep(built.protocol.as_ref(), &built.oracle)?
            }
        };
        let text = match cli.format {
            Format::Csv => format!(
                "n,protocol,max_bits,mean_bits,correct_fraction\n{size},{label},{},{:.4},{}\n",
                report.max_bits,
                report.mean_bits,
                report.correct_fraction()
            ),
            Format::Json => {
                json!({
                    "n": size,
                    "protocol": label,
                    "max_bits": report.max_bits,
                    "mean_bits": report.mean_bits,
                    "correct_fraction": report.correct_fraction(),
                })
                .to_string()
                    + "\n"
            }
        };
        emit(cli, &text)?;
        if let Some(bad) = &report.counterexample {
            return Err(Exit::failure(format!("{label} is wrong on input {bad:?}")));
        }
        return Ok(());
    }
    let input = explicit_input(&config, a)?;
    let t = run_protocol(built.protocol.as_ref(), &input)?;
    let text = match cli.format {
        Format::Json => t.to_json() + "\n",
        Format::Csv => format!(
            "protocol,input,output,total_bits\n{label},{},{},{}\n",
            input.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
            t.output as u8,
            t.total_bits
        ),
    };
    emit(cli, &text)?;
    if t.output != (built.oracle)(&input) {
        return Err(Exit::failure(format!("{label} is wrong on input {input:?}")));
    }
    Ok(())
}

fn search(cli: &Cli, s: &SearchCmd) -> Result<()> {
    let (quantity, value, exhaustive, nodes, witness): (&str, usize, bool, u64, String) = match s {
        SearchCmd::Alpha { table, k } => {
            let t = parse_table(table, *k)?;
            let r = alpha_exact(&t.table, cli.budget)?;
            ("alpha", r.value, r.exhaustive, r.nodes, r.to_json())
        }
        SearchCmd::Alphabar { n, range, k } => {
            let r = alpha_bar_exact(*k, *n, *range, cli.budget)?;
            ("alpha_bar", r.value, r.exhaustive, r.nodes, r.to_json())
        }
        SearchCmd::Chi { table, k } => {
            let t = parse_table(table, *k)?;
            let r = chi_exact(&t.table, cli.budget)?;
            ("chi", r.value, r.exhaustive, r.nodes, r.coloring.to_json())
        }
        SearchCmd::Xfree { pattern, param, n } => {
            let x = xpattern_catalog(pattern, *param)?;
            let r = xfree_max(&x, *n, cli.budget)?;
            let w = json!({
                "q": x.q,
                "n": n,
                "pattern": pattern,
                "witness": r.witness,
                "metadata": {"quantity": "xfree", "exhaustive": r.exhaustive, "value": r.value},
            });
            ("xfree", r.value, r.exhaustive, r.nodes, w.to_string())
        }
    };
    if let Some(path) = &cli.out {
        write_checked(path, &(witness.clone() + "\n"))?;
        reverify(s, &read(path)?, value)?;
    }
    let summary = match cli.format {
        Format::Csv => format!("quantity,value,exhaustive,nodes\n{quantity},{value},{exhaustive},{nodes}\n"),
        Format::Json => {
            json!({"quantity": quantity, "value": value, "exhaustive": exhaustive, "nodes": nodes}).to_string() + "\n"
        }
    };
    print!("{summary}");
    if cli.require_exhaustive && !exhaustive {
        return Err(Exit::budget(format!("{quantity} search ran out of budget at {nodes} nodes")));
    }
    Ok(())
}

/// Independent check of a witness file just written by `search`.
fn reverify(s: &SearchCmd, text: &str, value: usize) -> Result<()> {
    let bad = |msg: String| Err(Exit::failure(format!("re-verification failed: {msg}")));
    match s {
        SearchCmd::Alpha { table, k } => {
            let f = parse_table(table, *k)?.table;
            let set = PointSet::from_json(text)?;
            if let Some(star) = first_star(&set) {
                return bad(format!("witness contains the star {star}"));
            }
            if set.len() != value || set.iter().any(|p| !f.accepts(p)) {
                return bad("witness is not an accepted set of the reported size".into());
            }
        }
        SearchCmd::Alphabar { .. } => {
            let set = PointSet::from_json(text)?;
            if let Some(star) = first_star(&set) {
                return bad(format!("witness contains the star {star}"));
            }
            if set.len() != value || !set.is_line_respecting() {
                return bad("witness is not line-respecting of the reported size".into());
            }
        }
        SearchCmd::Chi { table, k } => {
            let f = parse_table(table, *k)?.table;
            let c = Coloring::from_json(text)?;
            c.validate(&f).map_err(|e| Exit::failure(format!("re-verification failed: {e}")))?;
            if c.len() != value {
                return bad(format!("coloring uses {} colors, reported {value}", c.len()));
            }
        }
        SearchCmd::Xfree { pattern, param, .. } => {
            let x = xpattern_catalog(pattern, *param)?;
            let v: Value = serde_json::from_str(text)?;
            let w: Vec<Vec<u32>> = serde_json::from_value(v["witness"].clone())?;
            if w.len() != value || !is_xfree(&x, &w) {
                return bad("witness is not X-free of the reported size".into());
            }
        }
    }
    Ok(())
}

fn verify(v: &VerifyCmd) -> Result<()> {
    let fail = |e: Error| Exit::failure(e.to_string());
    match v {
        VerifyCmd::Starfree { file, table } => {
            let set = PointSet::from_json(&read(file)?)?;
            if let Some(star) = first_star(&set) {
                return Err(Exit::failure(format!("contains the star {star}")));
            }
            if let Some(spec) = table {
                let f = parse_table(spec, set.dims().k)?.table;
                if let Some(p) = set.iter().find(|p| !f.accepts(p)) {
                    return Err(Exit::failure(format!("{p} is not accepted by the table")));
                }
            }
            println!("ok: {} points, star-free", set.len());
        }
        VerifyCmd::Cover { file, table } => {
            let cover = noflab::protocols::Cover::from_json(&read(file)?, CoverMode::Partition)?;
            let k = cover.classes.first().map_or(3, |c| c.dims().k);
            let f = parse_table(table, k)?.table;
            cover.validate(&f).map_err(fail)?;
            println!("ok: {} star-free classes partition {} points", cover.len(), f.accepted_points().len());
        }
        VerifyCmd::Matchings { file } => {
            let m: MatchingFamily = serde_json::from_str(&read(file)?).map_err(Error::from)?;
            m.check(Host::Union).map_err(fail)?;
            println!("ok: {} induced matchings, {} edges", m.matchings.len(), m.edge_count());
        }
        VerifyCmd::Trace { file, table, coloring } => {
            let trace: ExtractionTrace = serde_json::from_str(&read(file)?).map_err(Error::from)?;
            let f = parse_table(table, 3)?.table;
            let c = Coloring::from_json(&read(coloring)?)?;
            let fresh = lemma37_extract(&f, &c).map_err(fail)?;
            if fresh != trace {
                return Err(Exit::failure("trace differs from the extraction of this coloring"));
            }
            println!("ok: {} levels, L = {}", trace.levels.len(), trace.colors);
        }
    }
    Ok(())
}

fn bounds(cli: &Cli, b: &BoundsCmd) -> Result<()> {
    match b {
        BoundsCmd::LeastL { n, range } => {
            let l = least_l(*n, *range)?;
            let text = match cli.format {
                Format::Csv => format!("n,N,least_L\n{n},{range},{l}\n"),
                Format::Json => json!({"n": n, "N": range, "least_L": l}).to_string() + "\n",
            };
            emit(cli, &text)
        }
        BoundsCmd::Check { n, range, colors } => {
            let r = bound_checks(*n, *range, *colors)?;
            let text = match cli.format {
                Format::Csv => format!(
                    "n,N,L,lemma37,corollary38,least_L\n{},{},{},{},{},{}\n",
                    r.n, r.range, r.colors, r.lemma37, r.corollary38, r.least_l
                ),
                Format::Json => serde_json::to_string(&r)? + "\n",
            };
            emit(cli, &text)
        }
        BoundsCmd::Extract { table, coloring } => {
            let t = parse_table(table, 3)?;
            let f = &t.table;
            // Without a coloring: the translate cover when the group has a
            // seed, otherwise the best coloring the search finds.
            let c = match coloring {
                Some(path) => Coloring::from_json(&read(path)?)?,
                None => {
                    let cover = default_cover(&t, cli.seed)?;
                    if cover.len() < f.accepted_points().len() {
                        Coloring::from_cover(&cover)?
                    } else {
                        chi_exact(f, cli.budget)?.coloring
                    }
                }
            };
            let trace = lemma37_extract(f, &c)?;
            let text = match cli.format {
                Format::Json => trace.to_json() + "\n",
                Format::Csv => {
                    let mut s = String::from("level,value,color,class_size,rect_rows,rect_cols\n");
                    for (i, l) in trace.levels.iter().enumerate() {
                        let (r, c) = l.rectangle.as_ref().map_or((0, 0), |r| (r.rows.len(), r.cols.len()));
                        s.push_str(&format!("{},{},{},{},{r},{c}\n", i + 1, l.value, l.color, l.class.len()));
                    }
                    s
                }
            };
            emit(cli, &text)?;
            if let (Some(path), Format::Json) = (&cli.out, cli.format) {
                let back: ExtractionTrace = serde_json::from_str(&read(path)?)?;
                if back != trace {
                    return Err(Exit::failure("written trace does not read back"));
                }
            }
            Ok(())
        }
    }
}

fn schedule(cli: &Cli, table: &str) -> Result<()> {
    let t = parse_table(table, 3)?;
    let cover = default_cover(&t, cli.seed)?;
    let families = cover
        .classes
        .iter()
        .map(starfree_to_matchings)
        .collect::<noflab::Result<Vec<_>>>()?;
    let s = channel_schedule(&families).map_err(|e| Exit::failure(e.to_string()))?;
    let text = match cli.format {
        Format::Csv => s.to_csv(),
        Format::Json => {
            json!({"rounds": s.rounds, "receivers_per_output": s.receivers_per_output(), "deliveries": s.deliveries})
                .to_string()
                + "\n"
        }
    };
    emit(cli, &text)
}

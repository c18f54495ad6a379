use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use metacyclic::checks::{parse_checks, verify, Check, Summary, VerifyConfig};
use metacyclic::enumerate;
use metacyclic::records::{
    component_rows, group_rows, report_rows, write_csv, write_json, write_table, ComponentRecord, Format, GroupRecord,
    McinvRecord, PresentationRecord,
};
use metacyclic_core::group::{make_group, Group};
use metacyclic_core::invariants::{construct_group, isomorphic, mcinv, validate_tuple, InvariantError, MCInv};
use metacyclic_core::numth::UnitSubgroup;
use metacyclic_core::wedderburn::{compare_algebras, decomposition};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "metacyclic", version, about = "Invariants and rational group algebras of finite metacyclic groups")]
struct Cli {
    /// Output format for data written to stdout.
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,
    /// Worker threads for `verify` (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One presentation per isomorphism class, up to an order bound.
    Enumerate {
        #[arg(long)]
        max_order: u64,
    },
    /// Invariant of the group <a, b | a^m, b^n = a^s, a^b = a^t>.
    Mcinv { m: u64, n: u64, s: u64, t: u64 },
    /// Canonical presentation of the group with invariant (m, n, s, <gen>_m').
    Construct {
        m: u64,
        n: u64,
        s: u64,
        delta_gen: u64,
        m_prime: u64,
    },
    /// Wedderburn components of QG for a presentation.
    Wedderburn { m: u64, n: u64, s: u64, t: u64 },
    /// Compares two presentations given as `m,n,s,t`.
    Isoq { first: String, second: String },
    /// Runs the verification suite on every group up to an order bound.
    Verify {
        #[arg(long)]
        max_order: u64,
        /// Comma list drawn from roundtrip, dimension, perlis-walker, recoverR,
        /// degpag, countB, countC, section7, iso-oracle.
        #[arg(long, default_value = "roundtrip,dimension,perlis-walker,recoverR,degpag,countB,countC,section7")]
        checks: String,
    },
}

/// Rejected input, reported with exit status 2.
#[derive(Debug)]
struct BadInput(String);

impl std::fmt::Display for BadInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for BadInput {}

fn bad(msg: impl std::fmt::Display) -> anyhow::Error {
    anyhow::Error::new(BadInput(msg.to_string()))
}

fn group_of(m: u64, n: u64, s: u64, t: u64) -> anyhow::Result<Group> {
    make_group(m, n, s, t).map_err(bad)
}

fn parse_presentation(text: &str) -> anyhow::Result<Group> {
    let parts: Vec<u64> = text
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|e| bad(format!("presentation {text:?}: {e}")))?;
    let [m, n, s, t] = parts[..] else {
        return Err(bad(format!("presentation {text:?}: expected four integers m,n,s,t")));
    };
    group_of(m, n, s, t)
}

fn emit<T: Serialize>(out: &mut impl Write, format: Format, value: &T, table: (Vec<&str>, Vec<Vec<String>>)) -> anyhow::Result<()> {
    match format {
        Format::Json => write_json(out, value),
        Format::Csv => write_csv(out, &table.0, &table.1),
        Format::Table => Ok(write_table(out, &table.0, &table.1)?),
    }
}

fn single_group(out: &mut impl Write, format: Format, record: &GroupRecord) -> anyhow::Result<()> {
    emit(out, format, record, group_rows(std::slice::from_ref(record)))
}

#[derive(Serialize)]
struct IsoqRecord {
    first: McinvRecord,
    second: McinvRecord,
    groups: &'static str,
    algebras: String,
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let format = cli.format;
    match cli.command {
        Command::Enumerate { max_order } => {
            let groups = enumerate(max_order).map_err(bad)?;
            emit(&mut out, format, &groups, group_rows(&groups))?;
        }
        Command::Mcinv { m, n, s, t } => {
            let g = group_of(m, n, s, t)?;
            let inv = mcinv(&g)?;
            let record = GroupRecord {
                order: g.order(),
                presentation: PresentationRecord::from(g.presentation()),
                mcinv: McinvRecord::from(&inv),
            };
            single_group(&mut out, format, &record)?;
        }
        Command::Construct {
            m,
            n,
            s,
            delta_gen,
            m_prime,
        } => {
            let delta = UnitSubgroup::cyclic(delta_gen as i64, m_prime).map_err(|e| bad(format!("Delta: {e}")))?;
            let t = MCInv { m, n, s, delta };
            validate_tuple(&t).map_err(|e| bad(format!("not a realizable invariant: {e}")))?;
            let g = construct_group(&t).map_err(|e| match e {
                InvariantError::Invalid(v) => bad(format!("not a realizable invariant: {v}")),
                other => other.into(),
            })?;
            let record = GroupRecord {
                order: g.order(),
                presentation: PresentationRecord::from(g.presentation()),
                mcinv: McinvRecord::from(&t),
            };
            single_group(&mut out, format, &record)?;
        }
        Command::Wedderburn { m, n, s, t } => {
            let g = group_of(m, n, s, t)?;
            let components: Vec<ComponentRecord> = decomposition(&g)?.iter().map(ComponentRecord::from).collect();
            emit(&mut out, format, &components, component_rows(&components))?;
        }
        Command::Isoq { first, second } => {
            let (g, h) = (parse_presentation(&first)?, parse_presentation(&second)?);
            let same = isomorphic(&g, &h)?;
            let record = IsoqRecord {
                first: McinvRecord::from(&mcinv(&g)?),
                second: McinvRecord::from(&mcinv(&h)?),
                groups: if same { "isomorphic" } else { "non-isomorphic" },
                algebras: compare_algebras(&decomposition(&g)?, &decomposition(&h)?).to_string(),
            };
            match format {
                Format::Table => {
                    writeln!(out, "groups: {}", record.groups)?;
                    writeln!(out, "algebras: {}", record.algebras)?;
                }
                _ => emit(
                    &mut out,
                    format,
                    &record,
                    (vec!["groups", "algebras"], vec![vec![record.groups.to_string(), record.algebras.clone()]]),
                )?,
            }
        }
        Command::Verify { max_order, checks } => {
            let checks: Vec<Check> = parse_checks(&checks).map_err(bad)?;
            let cfg = VerifyConfig {
                max_order,
                checks,
                jobs: cli.jobs,
            };
            if max_order > metacyclic::checks::MAX_ORDER {
                return Err(bad(format!("max order {max_order} exceeds {}", metacyclic::checks::MAX_ORDER)));
            }
            eprintln!("verifying groups of order <= {max_order}");
            let reports = verify(&cfg)?;
            emit(&mut out, format, &reports, report_rows(&reports))?;
            let summary = Summary::of(&reports);
            for ((family, status), n) in &summary.counts {
                eprintln!("{family:<14} {:<8} {n}", status.as_str());
            }
            out.flush()?;
            return Ok(summary.failures() == 0);
        }
    }
    out.flush()?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            if e.chain().any(|c| c.is::<BadInput>()) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}


//! Command-line surface for enumeration, verification, and table emission.
//!
//! Output is deterministic: fixed orderings, exact values, no timestamps.
//! Exit codes: 0 success, 1 check failure, 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use famdex::f2::{support, Subspace};
use famdex::gammasets::{
    bar_big_x, bar_x_set, big_x, perm_pair_name, verbatim_x_list, x_set, AObject, BarReading,
    XPair,
};
use famdex::inductive::{
    enum_cf, enum_cf_prime, enum_occ, enum_occ_prime, epsilon_prime, SubspacePair,
};
use famdex::mgamma::{m_index_name, order_report, rho};
use famdex::precuspidal::{consistency_check, PrecuspidalData};
use famdex::verify::{run_verify, Status, VerifyOptions};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "famdex", version, about = "exact interval-family and pair-set tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    /// subspace family of the bounded space
    Cf,
    /// nested pairs in the odd part
    Occ,
    /// subspace family of the quotient space (odd bounds)
    CfPrime,
    /// nested pairs in the quotient odd part (odd bounds)
    OccPrime,
    /// zero level set of the signed invariant
    ZeroV,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// seed pairs
    X,
    /// enlarged seed pairs
    Barx,
    /// generated collection
    BigX,
    /// enlarged generated collection
    BarBigX,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum ReadingArg {
    /// identify the smallest odd-bound quotient object with the plain
    /// order-2 object (no enlargement there)
    #[default]
    S2,
    /// enlarge at every odd bound
    Vprime,
}

impl From<ReadingArg> for BarReading {
    fn from(r: ReadingArg) -> Self {
        match r {
            ReadingArg::S2 => BarReading::S2,
            ReadingArg::Vprime => BarReading::Vprime,
        }
    }
}

#[derive(Args)]
struct CommonFormat {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a family or pair collection at a bound
    Enum {
        #[arg(value_enum)]
        kind: EnumKind,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        fmt: CommonFormat,
        /// override the enumerative bound cap (slow)
        #[arg(long)]
        force: bool,
    },
    /// Print the pair sets attached to a catalog object
    Xgamma {
        /// object tag: S1..S5, S2', S3', V<even>, V'<odd>
        gamma: String,
        #[arg(long, value_enum, default_value = "big-x")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "s2")]
        bar_reading: ReadingArg,
        #[command(flatten)]
        fmt: CommonFormat,
    },
    /// Print the induced element of one pair of the generated collection
    Rho {
        gamma: String,
        /// pair position in the listed collection (see xgamma)
        #[arg(long)]
        pair_index: usize,
        #[arg(long, value_enum, default_value = "s2")]
        bar_reading: ReadingArg,
        #[arg(long, value_enum, default_value = "big-x")]
        variant: VariantArg,
    },
    /// Print the covering relations of the generated partial order
    Order { gamma: String },
    /// Run the named verification checks
    Verify {
        /// comma-separated id prefixes (f2, ind, grp, gam, mg, pc); all by default
        #[arg(long)]
        scope: Option<String>,
        #[arg(long, value_enum, default_value = "s2")]
        bar_reading: ReadingArg,
    },
    /// Count-consistency report for the shipped host catalog
    Precuspidal {
        /// host name (B2, B6, ..., E8, F4, G2); all hosts when omitted
        host: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

const ENUM_CAP: u32 = 14;

fn subspace_json(s: &Subspace) -> serde_json::Value {
    serde_json::Value::Array(
        s.rows()
            .iter()
            .map(|&r| {
                serde_json::Value::Array(
                    support(r).into_iter().map(serde_json::Value::from).collect(),
                )
            })
            .collect(),
    )
}

fn subspace_tsv(s: &Subspace) -> String {
    if s.rows().is_empty() {
        return "0".to_string();
    }
    s.rows()
        .iter()
        .map(|&r| {
            support(r)
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("|")
}

fn mask_list(m: u64) -> serde_json::Value {
    serde_json::Value::Array(support(m).into_iter().map(serde_json::Value::from).collect())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Enum { kind, d, fmt, force } => {
            if d > ENUM_CAP && !force {
                return Err(format!(
                    "bound {d} above the enumerative cap {ENUM_CAP}; pass --force to override"
                ));
            }
            if d > ENUM_CAP {
                eprintln!("warning: bound {d} above the cap; expect combinatorial blowup");
            }
            let odd_required = matches!(kind, EnumKind::CfPrime | EnumKind::OccPrime);
            if odd_required && d % 2 == 0 {
                return Err("quotient collections need an odd bound".into());
            }
            emit_enum(kind, d, fmt.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Xgamma {
            gamma,
            variant,
            bar_reading,
            fmt,
        } => {
            let obj = AObject::parse(&gamma).map_err(|e| e.to_string())?;
            emit_xgamma(&obj, variant, bar_reading.into(), fmt.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Rho {
            gamma,
            pair_index,
            bar_reading,
            variant,
        } => {
            let obj = AObject::parse(&gamma).map_err(|e| e.to_string())?;
            let pairs = collection(&obj, variant, bar_reading.into())?;
            let pair = pairs.get(pair_index).ok_or_else(|| {
                format!("pair index {pair_index} out of range ({} pairs)", pairs.len())
            })?;
            let v = rho(&obj, pair);
            println!("object\t{obj}");
            println!("pair\t{}", pair_label(&obj, pair));
            for (idx, c) in &v.coeffs {
                println!("{}\t{}", m_index_name(&obj, idx), c);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Order { gamma } => {
            let obj = AObject::parse(&gamma).map_err(|e| e.to_string())?;
            let r = order_report(&obj).map_err(|e| e.to_string())?;
            println!("object\t{obj}");
            println!("antisymmetric\t{}", r.antisymmetric);
            for (lo, hi) in &r.covers {
                println!(
                    "{}\t<\t{}",
                    m_index_name(&obj, &r.support[*lo]),
                    m_index_name(&obj, &r.support[*hi])
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { scope, bar_reading } => {
            let opts = VerifyOptions {
                bar_reading: bar_reading.into(),
                scope: scope.map(|s| s.split(',').map(|p| p.trim().to_string()).collect()),
            };
            let report = run_verify(&opts);
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Info => "INFO",
                };
                println!("{tag}\t{}\t{}", c.id, c.detail);
            }
            println!(
                "summary\tpassed={} failed={} informative={}",
                report.passed, report.failed, report.informative
            );
            Ok(if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Precuspidal { host } => {
            let data = PrecuspidalData::shipped();
            let hosts: Vec<String> = match host {
                Some(h) => vec![h],
                None => data.hosts.iter().map(|r| r.host.clone()).collect(),
            };
            let mut ok = true;
            for h in hosts {
                let check = consistency_check(&data, &h).map_err(|e| e.to_string())?;
                ok &= check.pass;
                println!(
                    "{}\t{}\tgamma={}\tsubsets={}/{}\torbits={}/{}\tseed={}/{}\thypotheses={}\t{}",
                    check.host,
                    if check.pass { "PASS" } else { "FAIL" },
                    check.gamma_c,
                    check.subsets,
                    check.bar_subsets,
                    check
                        .orbit_count
                        .map(|c| c.to_string())
                        .unwrap_or_else(|| "-".into()),
                    check
                        .bar_orbit_count
                        .map(|c| c.to_string())
                        .unwrap_or_else(|| "-".into()),
                    check.x_size,
                    check.bar_x_size_s2,
                    check.matching_hypotheses.join(","),
                    check.detail
                );
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn collection(
    obj: &AObject,
    variant: VariantArg,
    reading: BarReading,
) -> Result<Vec<XPair>, String> {
    Ok(match variant {
        VariantArg::X => x_set(obj)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|e| e.pair_in(obj))
            .collect(),
        VariantArg::Barx => bar_x_set(obj, reading)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|e| e.pair_in(obj))
            .collect(),
        VariantArg::BigX => ordered_big_x(obj),
        VariantArg::BarBigX => bar_big_x(obj, reading),
    })
}

/// The generated collection, reordered to the verbatim listing order for the
/// symmetric-kind objects.
fn ordered_big_x(obj: &AObject) -> Vec<XPair> {
    let pairs = big_x(obj);
    if let Some(listing) = verbatim_x_list(obj) {
        let mut out: Vec<XPair> = vec![];
        for p in listing {
            let xp = XPair::Perm(p);
            if pairs.contains(&xp) {
                out.push(xp);
            }
        }
        for p in pairs {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    } else {
        pairs
    }
}

fn pair_label(obj: &AObject, pair: &XPair) -> String {
    match pair {
        XPair::Perm(p) => perm_pair_name(obj, p),
        XPair::Linear(p) => {
            format!("({} <= {})", subspace_tsv(&p.small), subspace_tsv(&p.large))
        }
    }
}

fn emit_xgamma(
    obj: &AObject,
    variant: VariantArg,
    reading: BarReading,
    format: Format,
) -> Result<(), String> {
    let pairs = collection(obj, variant, reading)?;
    match format {
        Format::Tsv => {
            for (i, p) in pairs.iter().enumerate() {
                match p {
                    XPair::Perm(pp) => println!(
                        "{i}\t{}\t{}\t{}",
                        pair_label(obj, p),
                        pp.small.count_ones(),
                        pp.large.count_ones()
                    ),
                    XPair::Linear(lp) => println!(
                        "{i}\t{}\t{}",
                        subspace_tsv(&lp.small),
                        subspace_tsv(&lp.large)
                    ),
                }
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = pairs
                .iter()
                .enumerate()
                .map(|(i, p)| match p {
                    XPair::Perm(pp) => serde_json::json!({
                        "index": i,
                        "name": pair_label(obj, p),
                        "small_order": pp.small.count_ones(),
                        "large_order": pp.large.count_ones(),
                    }),
                    XPair::Linear(lp) => serde_json::json!({
                        "index": i,
                        "small": subspace_json(&lp.small),
                        "large": subspace_json(&lp.large),
                    }),
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "object": obj.to_string(),
                    "count": rows.len(),
                    "pairs": rows,
                }))
                .unwrap()
            );
        }
    }
    Ok(())
}

fn emit_enum(kind: EnumKind, d: u32, format: Format) -> Result<(), String> {
    match kind {
        EnumKind::Cf | EnumKind::CfPrime => {
            let fam = match kind {
                EnumKind::Cf => enum_cf(d),
                _ => enum_cf_prime(d),
            };
            let rows: Vec<(Subspace, Vec<(u32, u32)>, u64)> = fam
                .into_iter()
                .map(|s| {
                    let basis = famdex::f2::interval_basis_of(&s).expect("family member");
                    let marks = match kind {
                        EnumKind::Cf => famdex::f2::epsilon(&s).expect("family member"),
                        _ => epsilon_prime(&s, d).expect("family member"),
                    };
                    (s, basis.intervals, marks)
                })
                .collect();
            match format {
                Format::Tsv => {
                    for (s, intervals, marks) in rows {
                        println!(
                            "{}\t{}\t{}",
                            subspace_tsv(&s),
                            intervals
                                .iter()
                                .map(|(a, b)| format!("{a}-{b}"))
                                .collect::<Vec<_>>()
                                .join("|"),
                            support(marks)
                                .iter()
                                .map(|i| i.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        );
                    }
                }
                Format::Json => {
                    let js: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(s, intervals, marks)| {
                            serde_json::json!({
                                "basis": subspace_json(s),
                                "intervals": intervals,
                                "marking": mask_list(*marks),
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "bound": d, "count": js.len(), "members": js,
                        }))
                        .unwrap()
                    );
                }
            }
        }
        EnumKind::Occ | EnumKind::OccPrime => {
            let pairs: Vec<SubspacePair> = match kind {
                EnumKind::Occ => enum_occ(d),
                _ => enum_occ_prime(d),
            };
            match format {
                Format::Tsv => {
                    for p in pairs {
                        println!("{}\t{}", subspace_tsv(&p.small), subspace_tsv(&p.large));
                    }
                }
                Format::Json => {
                    let js: Vec<serde_json::Value> = pairs
                        .iter()
                        .map(|p| {
                            serde_json::json!({
                                "small": subspace_json(&p.small),
                                "large": subspace_json(&p.large),
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "bound": d, "count": js.len(), "pairs": js,
                        }))
                        .unwrap()
                    );
                }
            }
        }
        EnumKind::ZeroV => {
            let masks = famdex::f2::zero_v_set(d);
            match format {
                Format::Tsv => {
                    for m in masks {
                        println!(
                            "{}",
                            support(m)
                                .iter()
                                .map(|i| i.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        );
                    }
                }
                Format::Json => {
                    let js: Vec<serde_json::Value> = masks.iter().map(|&m| mask_list(m)).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "bound": d, "count": js.len(), "vectors": js,
                        }))
                        .unwrap()
                    );
                }
            }
        }
    }
    Ok(())
}

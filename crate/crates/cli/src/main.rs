//! `covernum` — normal covering numbers of symmetric and alternating
//! groups at the command line.
//!
//! Exit codes: 0 success, 1 infeasible instance or time limit hit,
//! 2 bad input.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde::Serialize;

use covernum::arith::{count_full, count_half_open, factorize, g_value, gcd_class_indices, IndexSpec};
use covernum::harness::{thm13_fixtures, verify_conjectures, BatchOptions, CheckStatus, TheoremPart};
use covernum::membership::{imprimitive_witness, in_alternating, in_intransitive};
use covernum::solver::{analyze_min_covers, min_cover, MinCoverOptions};
use covernum::typesys::CycleType;
use covernum::universe::{
    build_matrix, build_universe, load_primitive_dir, load_primitive_file, p_min_set,
    type_index_for, GroupFlavor, PrimitiveData, SubgroupClass,
};

#[derive(Parser)]
#[command(
    name = "covernum",
    version,
    about = "Compute and verify normal covering numbers of S_n and A_n",
    long_about = "A normal covering of a group is a family of conjugates of proper subgroups \
                  whose union is the whole group. This tool models the intransitive, \
                  imprimitive and alternating maximal classes of S_n and A_n (primitive \
                  classes load from data files), decides cycle-type membership exactly, and \
                  solves the exact minimum cover problem."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Divisor-pattern counts on [1, n] and [1, n/2), or a gcd class
    Counts {
        #[arg(long)]
        n: u64,
        /// List the x < n/2 with gcd(x, n) = D
        #[arg(long)]
        gcd: Option<u64>,
        /// 1-based prime indices that must divide x, e.g. "1,2"
        #[arg(long, short = 'I', value_delimiter = ',', num_args = 0.., default_value = "")]
        i_set: Vec<String>,
        /// 1-based prime indices that must not divide x
        #[arg(long, short = 'J', value_delimiter = ',', num_args = 0.., default_value = "")]
        j_set: Vec<String>,
    },
    /// Print n,g(n) as CSV over a range (prime powers are skipped)
    Gfun {
        /// Inclusive range, e.g. 6..60
        #[arg(long)]
        range: String,
    },
    /// Does a cycle type belong to a subgroup class?
    Member {
        #[arg(long)]
        n: u32,
        /// Comma-joined parts, e.g. "95,7,3"
        #[arg(long = "type")]
        cycle_type: String,
        /// P:x (intransitive), W:bxm (imprimitive), or A (alternating)
        #[arg(long)]
        class: String,
    },
    /// Exact minimum cover over the modeled universe
    Gamma {
        #[arg(long)]
        n: u32,
        /// S or A
        #[arg(long)]
        group: String,
        /// Primitive-class data file; repeatable
        #[arg(long = "primitive-data")]
        primitive_data: Vec<PathBuf>,
        /// Enumerate every minimum cover and analyze their structure
        #[arg(long = "enumerate-all-min")]
        enumerate_all_min: bool,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, default_value = "text", value_parser = ["json", "csv", "text"])]
        format: String,
        /// Wall-clock budget in seconds
        #[arg(long = "time-limit")]
        time_limit: Option<u64>,
        /// Raise the type-enumeration cap (default 70)
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Batch comparison of modeled values against known ones over a range
    #[command(name = "verify-conjectures")]
    VerifyConjectures {
        /// Inclusive range, e.g. 6..36
        #[arg(long)]
        range: String,
        /// Comma-separated flavors, e.g. S,A
        #[arg(long, default_value = "S,A", value_delimiter = ',')]
        group: Vec<String>,
        /// Directory of primitive-class data files
        #[arg(long = "primitive-data")]
        primitive_data: Option<PathBuf>,
        /// JSON report path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a CSV table
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Per-instance wall-clock budget in seconds
        #[arg(long = "time-limit", default_value = "60")]
        time_limit: u64,
        #[arg(long = "enumerate-all-min")]
        enumerate_all_min: bool,
        /// Raise the type-enumeration cap (default 70)
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Machine-checkable fixture suite for a proven theorem family
    Fixtures {
        /// 1.3a (symmetric, degree 15q) or 1.3b (alternating, degree 6q)
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        q: u64,
    },
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                covernum::Error::Infeasible { .. } => 1,
                _ => 2,
            }
        }
    }
}

fn with_threads<T>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T
where
    T: Send,
{
    match threads {
        None => f(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(f),
    }
}

fn parse_range(s: &str) -> covernum::Result<(u32, u32)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| covernum::Error::InvalidInput(format!("range {s:?} must look like A..B")))?;
    let lo = lo.trim().parse().map_err(|_| {
        covernum::Error::InvalidInput(format!("bad range start {lo:?}"))
    })?;
    let hi = hi.trim().parse().map_err(|_| {
        covernum::Error::InvalidInput(format!("bad range end {hi:?}"))
    })?;
    if lo > hi {
        return Err(covernum::Error::InvalidInput(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}

fn parse_indices(raw: &[String]) -> covernum::Result<Vec<usize>> {
    raw.iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| covernum::Error::InvalidInput(format!("bad prime index {s:?}")))
        })
        .collect()
}

/// Parses `P:x`, `W:bxm`, or `A`.
fn parse_class(s: &str, n: u32) -> covernum::Result<SubgroupClass> {
    if s == "A" || s == "a" {
        return Ok(SubgroupClass::Alternating);
    }
    if let Some(x) = s.strip_prefix("P:") {
        let x = x
            .parse::<u32>()
            .map_err(|_| covernum::Error::InvalidInput(format!("bad intransitive class {s:?}")))?;
        if x < 1 || 2 * x >= n {
            return Err(covernum::Error::InvalidInput(format!(
                "P:{x} out of range for n = {n} (need 1 <= x < n/2)"
            )));
        }
        return Ok(SubgroupClass::Intransitive { x });
    }
    if let Some(bm) = s.strip_prefix("W:") {
        let (b, m) = bm
            .split_once('x')
            .ok_or_else(|| covernum::Error::InvalidInput(format!("bad imprimitive class {s:?}, expected W:bxm")))?;
        let b: u32 = b
            .parse()
            .map_err(|_| covernum::Error::InvalidInput(format!("bad block size in {s:?}")))?;
        let m: u32 = m
            .parse()
            .map_err(|_| covernum::Error::InvalidInput(format!("bad block count in {s:?}")))?;
        if b * m != n || b < 2 || m < 2 {
            return Err(covernum::Error::InvalidInput(format!(
                "W:{b}x{m} invalid for n = {n}"
            )));
        }
        return Ok(SubgroupClass::Imprimitive { b, m });
    }
    Err(covernum::Error::InvalidInput(format!(
        "unknown class {s:?}: expected P:x, W:bxm, or A"
    )))
}

#[derive(Serialize)]
struct GammaStats {
    num_types: usize,
    num_classes: usize,
    nodes: u64,
    duplicate_types_merged: usize,
    dominated_types_dropped: usize,
    duplicate_columns_merged: usize,
    wall_time_ms: u128,
}

#[derive(Serialize)]
struct PMinSummary {
    covers: usize,
    intransitive_matches: usize,
    full_shape_matches: usize,
}

#[derive(Serialize)]
struct GammaReport {
    n: u32,
    group: GroupFlavor,
    g: Option<u64>,
    gamma_modeled: u64,
    conditional: bool,
    timed_out: bool,
    canonical_cover: Vec<String>,
    num_min_covers: Option<u64>,
    enumeration_truncated: bool,
    /// Canonical cover's intransitive part equals the conjectured set
    /// (all covers when enumeration is on; see `p_min_all`).
    p_min_match: Option<bool>,
    p_min_all: Option<PMinSummary>,
    stats: GammaStats,
}

fn run(cli: Cli) -> covernum::Result<i32> {
    match cli.cmd {
        Cmd::Counts { n, gcd, i_set, j_set } => {
            let f = factorize(n)?;
            if let Some(d) = gcd {
                let set = gcd_class_indices(&f, d)?;
                let rendered: Vec<String> = set.iter().map(|x| x.to_string()).collect();
                println!("{{{}}}", rendered.join(","));
                println!("size = {}", set.len());
            } else {
                let spec = IndexSpec::new(&parse_indices(&i_set)?, &parse_indices(&j_set)?, f.num_primes())?;
                println!("|P_I^J| = {}", count_full(&f, &spec));
                if n >= 3 {
                    println!("|P_I^J ∩ [1,n/2)| = {}", count_half_open(&f, &spec));
                }
            }
            Ok(0)
        }

        Cmd::Gfun { range } => {
            let (lo, hi) = parse_range(&range)?;
            println!("n,g");
            for n in lo..=hi {
                if let Ok(f) = factorize(n as u64) {
                    if let Ok(g) = g_value(&f) {
                        println!("{n},{g}");
                    }
                }
            }
            Ok(0)
        }

        Cmd::Member { n, cycle_type, class } => {
            let t = CycleType::parse(&cycle_type)?;
            if t.n() != n {
                return Err(covernum::Error::InvalidInput(format!(
                    "type [{t}] sums to {} but --n is {n}",
                    t.n()
                )));
            }
            let class = parse_class(&class, n)?;
            match class {
                SubgroupClass::Intransitive { x } => {
                    println!("{}", in_intransitive(&t, x));
                }
                SubgroupClass::Imprimitive { b, .. } => match imprimitive_witness(&t, b)? {
                    Some(w) => {
                        println!("true");
                        println!("witness: {w}");
                    }
                    None => println!("false"),
                },
                SubgroupClass::Alternating => println!("{}", in_alternating(&t)),
                SubgroupClass::PrimitiveExternal { .. } => unreachable!(),
            }
            Ok(0)
        }

        Cmd::Gamma {
            n,
            group,
            primitive_data,
            enumerate_all_min,
            threads,
            format,
            time_limit,
            cap,
        } => {
            let flavor = GroupFlavor::parse(&group)?;
            let primitive: Vec<PrimitiveData> = primitive_data
                .iter()
                .map(|p| load_primitive_file(p))
                .collect::<covernum::Result<_>>()?;
            let report = with_threads(threads, || -> covernum::Result<GammaReport> {
                let classes = build_universe(n, flavor, &primitive)?;
                let types = type_index_for(n, flavor, cap)?;
                let matrix = build_matrix(flavor, classes, types)?;
                let opts = MinCoverOptions {
                    enumerate_all: enumerate_all_min,
                    time_limit: time_limit.map(Duration::from_secs),
                    ..Default::default()
                };
                let result = min_cover(&matrix, &opts)?;
                let g = g_value(&factorize(n as u64)?).ok();
                let p_min = p_min_set(n).ok();
                let p_min_match = p_min.as_ref().map(|p_min| {
                    let mut xs: Vec<u32> = result
                        .canonical_cover
                        .iter()
                        .filter_map(|c| match c {
                            SubgroupClass::Intransitive { x } => Some(*x),
                            _ => None,
                        })
                        .collect();
                    xs.sort_unstable();
                    &xs == p_min
                });
                let p_min_all = if result.all_minimum_covers.is_some() && p_min.is_some() {
                    let a = analyze_min_covers(&result, &matrix)?;
                    Some(PMinSummary {
                        covers: a.covers_analyzed,
                        intransitive_matches: a.intransitive_matches,
                        full_shape_matches: a.full_matches,
                    })
                } else {
                    None
                };
                Ok(GammaReport {
                    n,
                    group: flavor,
                    g,
                    gamma_modeled: result.minimum_size as u64,
                    conditional: result.conditional,
                    timed_out: result.timed_out,
                    canonical_cover: result
                        .canonical_cover
                        .iter()
                        .map(|c| c.to_string())
                        .collect(),
                    num_min_covers: result.num_minimum_covers,
                    enumeration_truncated: result.enumeration_truncated,
                    p_min_match,
                    p_min_all,
                    stats: GammaStats {
                        num_types: matrix.num_types(),
                        num_classes: matrix.num_classes(),
                        nodes: result.stats.nodes,
                        duplicate_types_merged: result.stats.duplicate_types_merged,
                        dominated_types_dropped: result.stats.dominated_types_dropped,
                        duplicate_columns_merged: result.stats.duplicate_columns_merged,
                        wall_time_ms: result.stats.wall_time.as_millis(),
                    },
                })
            })?;

            match format.as_str() {
                "json" => println!("{}", serde_json::to_string_pretty(&report)?),
                "csv" => {
                    println!("n,group,g,gamma_modeled,conditional,timed_out,canonical_cover");
                    println!(
                        "{},{},{},{},{},{},{}",
                        report.n,
                        report.group,
                        report.g.map(|g| g.to_string()).unwrap_or_else(|| "-".into()),
                        report.gamma_modeled,
                        report.conditional,
                        report.timed_out,
                        report.canonical_cover.join(" ")
                    );
                }
                _ => {
                    println!("gamma_modeled({}_{}) = {}", report.group, report.n, report.gamma_modeled);
                    match report.g {
                        Some(g) => println!("g({}) = {g}", report.n),
                        None => println!("g({}) undefined (prime power)", report.n),
                    }
                    println!("conditional = {}", report.conditional);
                    println!("canonical cover: {}", report.canonical_cover.join(", "));
                    if let Some(k) = report.num_min_covers {
                        println!(
                            "minimum covers: {k}{}",
                            if report.enumeration_truncated { " (truncated)" } else { "" }
                        );
                    }
                    if let Some(p) = report.p_min_match {
                        println!("canonical intransitive part matches conjectured set: {p}");
                    }
                    if let Some(s) = &report.p_min_all {
                        println!(
                            "cover shapes: {}/{} match the conjectured intransitive set, {}/{} the full shape",
                            s.intransitive_matches, s.covers, s.full_shape_matches, s.covers
                        );
                    }
                    println!(
                        "stats: {} types x {} classes, {} nodes, {} ms",
                        report.stats.num_types,
                        report.stats.num_classes,
                        report.stats.nodes,
                        report.stats.wall_time_ms
                    );
                }
            }
            Ok(if report.timed_out { 1 } else { 0 })
        }

        Cmd::VerifyConjectures {
            range,
            group,
            primitive_data,
            out,
            csv,
            threads,
            time_limit,
            enumerate_all_min,
            cap,
        } => {
            let (lo, hi) = parse_range(&range)?;
            let flavors = group
                .iter()
                .map(|s| GroupFlavor::parse(s))
                .collect::<covernum::Result<Vec<_>>>()?;
            let primitive = match &primitive_data {
                Some(dir) => load_primitive_dir(dir)?,
                None => Vec::new(),
            };
            let options = BatchOptions {
                flavors,
                primitive,
                per_instance_time_limit: Some(Duration::from_secs(time_limit)),
                enumerate_all: enumerate_all_min,
                cap,
            };
            let report = with_threads(threads, || verify_conjectures(lo, hi, &options));
            let json = serde_json::to_string_pretty(&report)?;
            match &out {
                Some(path) => std::fs::write(path, json)?,
                None => println!("{json}"),
            }
            if let Some(path) = &csv {
                std::fs::write(path, report.to_csv())?;
            }
            Ok(0)
        }

        Cmd::Fixtures { theorem, q } => {
            let part = TheoremPart::parse(&theorem)?;
            let report = thm13_fixtures(q, part)?;
            println!("family {} at q = {q} (degree {})", report.part, report.n);
            for check in &report.checks {
                let tag = match check.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Warn => "WARN",
                    CheckStatus::Skipped => "SKIP",
                };
                println!("{tag} {}: {}", check.name, check.detail);
            }
            println!(
                "{} checks: {} failed, {} warned, {} skipped",
                report.checks.len(),
                report.failed,
                report.warned,
                report.skipped
            );
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

//! Command-line interface: sequence extraction, verification, the full
//! suite, raw oracle queries, bivariate statistic tables and continued-
//! fraction expansions. Output is CSV with a header row, or JSON; exact
//! rationals print as `p/q` strings.

use crate::biseries::BiSeries;
use crate::formulas::{coefficients, gf, CatalogError, FamilyKey};
use crate::harness::{
    run_suite, summary_line, write_ledger, SuiteConfig, SuspectList,
};
use crate::oracle::{CountQuery, Oracle, DEFAULT_N_CAP};
use crate::pattern::{parse_pattern, ConstraintSpec};
use crate::perm::ClassLabel;
use crate::series::rat_string;
use crate::stats::{stat_gf, Assignment, StatFamily, Statistic};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "updown",
    about = "Exact series engine and enumeration oracle for pattern-restricted alternating permutations",
    version
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args)]
pub struct GlobalOpts {
    /// Truncation order for series computations [env: UPDOWN_ORDER]
    #[arg(long, global = true)]
    pub order: Option<i64>,
    /// Oracle cache directory [env: UPDOWN_CACHE_DIR]
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads for parallel scans [env: UPDOWN_THREADS]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Hard cap on exhaustive enumeration length [env: UPDOWN_N_CAP]
    #[arg(long, global = true)]
    pub n_cap: Option<usize>,
}

impl GlobalOpts {
    fn order(&self) -> i64 {
        self.order
            .or_else(|| env_parse("UPDOWN_ORDER"))
            .unwrap_or(24)
    }

    fn n_cap(&self) -> usize {
        self.n_cap
            .or_else(|| env_parse("UPDOWN_N_CAP"))
            .unwrap_or(DEFAULT_N_CAP)
    }

    fn cache_dir(&self) -> Option<PathBuf> {
        self.cache_dir
            .clone()
            .or_else(|| std::env::var("UPDOWN_CACHE_DIR").ok().map(PathBuf::from))
    }

    fn threads(&self) -> Option<usize> {
        self.threads.or_else(|| env_parse("UPDOWN_THREADS"))
    }

    fn oracle(&self) -> Oracle {
        let mut o = Oracle::new().with_cap(self.n_cap());
        if let Some(dir) = self.cache_dir() {
            o = o.with_cache_dir(dir);
        }
        o
    }
}

fn env_parse<T: std::str::FromStr>(name: &str) -> Option<T> {
    std::env::var(name).ok()?.parse().ok()
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the integer coefficients of a catalogued formula.
    Seq {
        /// Canonical key, e.g. F2:UD:k=4 or F6:A:tau=231:r=2
        #[arg(long)]
        key: String,
        #[arg(long)]
        n_max: i64,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Verify one key against the enumeration oracle.
    Verify {
        #[arg(long)]
        key: String,
        #[arg(long)]
        n_max: i64,
    },
    /// Run the full verification matrix and write the discrepancy ledger.
    Suite {
        /// Optional JSON config overriding ranges, cap and suspect list
        #[arg(long)]
        config: Option<PathBuf>,
        /// Ledger output path (JSON lines)
        #[arg(long, default_value = "ledger.jsonl")]
        ledger: PathBuf,
        /// Print one line per key instead of only the summary
        #[arg(long)]
        verbose: bool,
    },
    /// Raw counts or statistic distributions by exhaustive enumeration.
    Oracle {
        #[arg(long)]
        n: usize,
        /// Class: UD, UU, DU, DD or A
        #[arg(long)]
        class: String,
        /// Patterns that must be avoided (repeatable)
        #[arg(long = "avoid")]
        avoid: Vec<String>,
        /// pattern:count pairs that must occur exactly (repeatable)
        #[arg(long = "exactly")]
        exactly: Vec<String>,
        /// Statistic to histogram: rlmax, inc or occ:<pattern>
        #[arg(long)]
        stat: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Bivariate statistic tables: columns n, stat_value, count.
    Stats {
        /// classical, v12 or v21
        #[arg(long)]
        family: String,
        #[arg(long)]
        class: String,
        /// length, mark:<k>, rlmax or inc
        #[arg(long)]
        assign: String,
        #[arg(long)]
        n_max: i64,
        #[arg(long)]
        json: bool,
    },
    /// Raw continued-fraction expansion for a shape and assignment.
    Cf {
        /// st1 or st2
        #[arg(long)]
        shape: String,
        /// length, mark:<k>, rlmax or inc
        #[arg(long)]
        assign: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

pub fn run(cli: Cli) -> Result<(), String> {
    if let Some(threads) = cli.global.threads() {
        configure_threads(threads)?;
    }
    match cli.command {
        Command::Seq { key, n_max, json, .. } => cmd_seq(&key, n_max, json),
        Command::Verify { key, n_max } => cmd_verify(&cli.global, &key, n_max),
        Command::Suite {
            config,
            ledger,
            verbose,
        } => cmd_suite(&cli.global, config, &ledger, verbose),
        Command::Oracle {
            n,
            class,
            avoid,
            exactly,
            stat,
            json,
        } => cmd_oracle(&cli.global, n, &class, &avoid, &exactly, stat.as_deref(), json),
        Command::Stats {
            family,
            class,
            assign,
            n_max,
            json,
        } => cmd_stats(&family, &class, &assign, n_max, json),
        Command::Cf {
            shape,
            assign,
            depth,
            json,
        } => cmd_cf(&cli.global, &shape, &assign, depth, json),
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: usize) -> Result<(), String> {
    Ok(())
}

fn parse_class(text: &str) -> Result<ClassLabel, String> {
    ClassLabel::parse_token(text).ok_or_else(|| format!("unknown class {text:?} (UD|UU|DU|DD|A)"))
}

fn cmd_seq(key: &str, n_max: i64, json: bool) -> Result<(), String> {
    let key = FamilyKey::parse(key).map_err(|e| e.to_string())?;
    match coefficients(&key, n_max) {
        Ok(table) => {
            if json {
                let series = gf(&key, n_max).map_err(|e| e.to_string())?;
                let doc = serde_json::json!({
                    "key": key.canonical(),
                    "series": series.to_repr(),
                    "values": table.values.iter()
                        .map(|(n, v)| serde_json::json!({"n": n, "count": v.to_string()}))
                        .collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                println!("n,count");
                for (n, v) in table.values {
                    println!("{n},{v}");
                }
            }
            Ok(())
        }
        Err(CatalogError::Anomaly(a)) => Err(format!("formula anomaly: {a}")),
        Err(CatalogError::Domain(e)) => Err(e.to_string()),
    }
}

fn cmd_verify(global: &GlobalOpts, key: &str, n_max: i64) -> Result<(), String> {
    let key = FamilyKey::parse(key).map_err(|e| e.to_string())?;
    let oracle = global.oracle();
    let report = crate::harness::verify(&key, 0, n_max, &oracle, &SuspectList::shipped())
        .map_err(|e| e.to_string())?;
    println!("{}", summary_line(&report));
    if matches!(report.status, crate::harness::Status::Mismatch) && !report.known_suspect {
        return Err("unexpected mismatch".into());
    }
    Ok(())
}

fn cmd_suite(
    global: &GlobalOpts,
    config: Option<PathBuf>,
    ledger: &Path,
    verbose: bool,
) -> Result<(), String> {
    let mut cfg = match config {
        Some(path) => SuiteConfig::from_file(&path)?,
        None => SuiteConfig::default(),
    };
    if let Some(cap) = global.n_cap.or_else(|| env_parse("UPDOWN_N_CAP")) {
        cfg.n_cap = cap;
    }
    if cfg.cache_dir.is_none() {
        cfg.cache_dir = global.cache_dir();
    }
    let outcome = run_suite(&cfg).map_err(|e| e.to_string())?;
    write_ledger(ledger, &outcome.reports).map_err(|e| e.to_string())?;
    if verbose {
        for r in &outcome.reports {
            println!("{}", summary_line(r));
        }
    } else {
        for r in &outcome.reports {
            if !matches!(r.status, crate::harness::Status::Match) {
                println!("{}", summary_line(r));
            }
        }
    }
    println!("{outcome}");
    println!("ledger written to {}", ledger.display());
    if outcome.green() {
        Ok(())
    } else {
        Err("suite found unexpected mismatches".into())
    }
}

fn cmd_oracle(
    global: &GlobalOpts,
    n: usize,
    class: &str,
    avoid: &[String],
    exactly: &[String],
    stat: Option<&str>,
    json: bool,
) -> Result<(), String> {
    let class = parse_class(class)?;
    let mut constraints = Vec::new();
    for text in avoid {
        constraints.push(ConstraintSpec::avoid(
            parse_pattern(text).map_err(|e| e.to_string())?,
        ));
    }
    for text in exactly {
        let (pat, r) = text
            .rsplit_once(':')
            .ok_or_else(|| format!("--exactly wants <pattern>:<r>, got {text:?}"))?;
        constraints.push(ConstraintSpec::exactly(
            parse_pattern(pat).map_err(|e| e.to_string())?,
            r.parse().map_err(|_| format!("bad count {r:?}"))?,
        ));
    }
    let oracle = global.oracle();
    match stat {
        None => {
            let q = CountQuery::new(n, class, constraints);
            let count = oracle.count_exact(&q).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({"query": q.canonical(), "count": count})
                );
            } else {
                println!("n,count");
                println!("{n},{count}");
            }
        }
        Some(stat_text) => {
            let stat = Statistic::parse(stat_text)
                .ok_or_else(|| format!("unknown statistic {stat_text:?}"))?;
            let q = CountQuery::new(n, class, constraints).with_statistic(stat);
            let d = oracle.distribution(&q).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "query": q.canonical(),
                        "distribution": d.counts.iter()
                            .map(|(k, v)| serde_json::json!({"stat_value": k, "count": v}))
                            .collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("n,stat_value,count");
                for (value, count) in d.counts {
                    println!("{n},{value},{count}");
                }
            }
        }
    }
    Ok(())
}

fn print_biseries_table(n_max: i64, b: &BiSeries, json: bool) -> Result<(), String> {
    let mut rows = Vec::new();
    for (x, y, c) in b.terms() {
        if x < 0 || x > n_max {
            continue;
        }
        rows.push((x, y, c));
    }
    if json {
        let doc: Vec<_> = rows
            .iter()
            .map(|(x, y, c)| {
                serde_json::json!({"n": x, "stat_value": y, "count": rat_string(c)})
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!("n,stat_value,count");
        for (x, y, c) in rows {
            println!("{x},{y},{}", rat_string(&c));
        }
    }
    Ok(())
}

fn cmd_stats(family: &str, class: &str, assign: &str, n_max: i64, json: bool) -> Result<(), String> {
    let family = StatFamily::parse(family)
        .ok_or_else(|| format!("unknown family {family:?} (classical|v12|v21)"))?;
    let class = parse_class(class)?;
    let assign = Assignment::parse(assign).ok_or_else(|| {
        format!("unknown assignment {assign:?} (length|mark:<k>|rlmax|inc)")
    })?;
    let y_window = match assign {
        Assignment::Inc => 1 << 12,
        _ => n_max.max(8) * 4,
    };
    let table = stat_gf(family, class, &assign, n_max, y_window).map_err(|e| e.to_string())?;
    print_biseries_table(n_max, &table, json)
}

fn cmd_cf(
    global: &GlobalOpts,
    shape: &str,
    assign: &str,
    depth: Option<usize>,
    json: bool,
) -> Result<(), String> {
    use crate::cheb::{cf_eval, default_cf_depth};
    let order = global.order();
    let assign = Assignment::parse(assign).ok_or_else(|| {
        format!("unknown assignment {assign:?} (length|mark:<k>|rlmax|inc)")
    })?;
    let depth = depth.unwrap_or_else(|| default_cf_depth(order));
    let y_window = match assign {
        Assignment::Inc => 1 << (depth + 2).min(20),
        _ => order * 4 + 16,
    };
    let spec = match shape {
        "st1" => crate::stats::classical_cf_spec(&assign, depth),
        "st2" => crate::stats::pair_cf_spec(&assign, depth),
        other => return Err(format!("unknown shape {other:?} (st1|st2)")),
    };
    let b = cf_eval(&spec, order, y_window).map_err(|e| e.to_string())?;
    print_biseries_table(order, &b, json)
}

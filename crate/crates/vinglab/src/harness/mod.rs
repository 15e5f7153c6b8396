//! The runnable surface: run configuration, command dispatch, point-set
//! generators, file I/O, census caching, and the verification suites.

pub mod cache;
pub mod generate;
pub mod io;
pub mod suites;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use num::BigUint;
use thiserror::Error;

use crate::bounds;
use crate::census::{
    count_class, max_edges_in_class, CensusError, CensusFilter, EdgeCatalog, GraphClass,
    DEFAULT_BUDGET,
};
use crate::charging::ChargingError;
use crate::geom::{GeomError, PointSet, Segment};
use crate::ratio;
use crate::vings::{self, Ving};

pub use generate::Shape;
use io::{
    big_uint_str, csv_field, to_json, BoundsReportRepr, BoundsRowRepr, CountReport, DegreeStat,
    FilterRepr, RationalRepr, StatsReport, SuiteReport, VerifyReport, SCHEMA_VERSION,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid point set: {0}")]
    Validation(GeomError),
    #[error("point set too large: {0} points (cap {max})", max = crate::census::MAX_POINTS)]
    TooManyPoints(usize),
    #[error("enumeration budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("generation failed for shape {shape}, n = {n}, seed = {seed}")]
    GenerationFailed { shape: String, n: usize, seed: u64 },
    #[error("io error: {0}")]
    Io(std::io::Error),
    #[error("{0}")]
    Internal(String),
}

impl HarnessError {
    pub fn from_census(e: CensusError) -> HarnessError {
        match e {
            CensusError::RejectedPointSet(g) => HarnessError::Validation(g),
            CensusError::TooManyPoints(n) => HarnessError::TooManyPoints(n),
            CensusError::BudgetExceeded { budget } => HarnessError::BudgetExceeded(budget),
            CensusError::UnsupportedK(k) => {
                HarnessError::Usage(format!("unsupported quasi-planarity order k={k}"))
            }
        }
    }

    pub fn from_charging(e: ChargingError) -> HarnessError {
        match e {
            ChargingError::Census(c) => HarnessError::from_census(c),
            ChargingError::FanInExceeded { observed, bound } => HarnessError::Internal(format!(
                "transfer fan-in {observed} exceeded declared bound {bound}"
            )),
        }
    }

    /// Distinct process exit codes per failure family.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) | HarnessError::Parse { .. } => 2,
            HarnessError::Validation(_) | HarnessError::TooManyPoints(_) => 3,
            HarnessError::BudgetExceeded(_) => 4,
            HarnessError::GenerationFailed { .. } | HarnessError::Io(_) => 5,
            HarnessError::Internal(_) => 6,
        }
    }
}

/// Exit code used when a verification suite reports a failing check.
pub const EXIT_VERIFICATION_FAILED: i32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Option<OutputFormat> {
        match s {
            "text" => Some(OutputFormat::Text),
            "json" => Some(OutputFormat::Json),
            "csv" => Some(OutputFormat::Csv),
            _ => None,
        }
    }
}

/// Class selector plus filter flags as given on the command line; `c`
/// interprets the edge cap as floor(c*N) at run time.
#[derive(Clone, Debug, Default)]
pub struct FilterSel {
    pub min_degree: u32,
    pub max_edges: Option<usize>,
    pub c: Option<String>,
}

impl FilterSel {
    /// Resolve to a concrete census filter for an instance of size n.
    pub fn resolve(&self, n: usize) -> Result<CensusFilter, HarnessError> {
        let mut max_edges = self.max_edges;
        if let Some(c) = &self.c {
            if max_edges.is_some() {
                return Err(HarnessError::Usage(
                    "--max-edges and --c are mutually exclusive".into(),
                ));
            }
            let c = ratio::checked_dec(c)
                .ok_or_else(|| HarnessError::Usage(format!("bad decimal for --c: {c:?}")))?;
            let cap = (c * ratio::int(n as i64)).floor().to_integer();
            let cap = num::ToPrimitive::to_i64(&cap)
                .ok_or_else(|| HarnessError::Usage("--c produces an out-of-range cap".into()))?;
            if cap < 0 {
                return Err(HarnessError::Usage("--c must be nonnegative".into()));
            }
            max_edges = Some(cap as usize);
        }
        Ok(CensusFilter {
            min_degree: self.min_degree,
            max_edges,
        })
    }
}

pub fn parse_class(class: &str, k: Option<u8>) -> Result<GraphClass, HarnessError> {
    let c = match (class, k) {
        ("plane", _) => GraphClass::Plane,
        ("tri", _) => GraphClass::Triangulation,
        ("qp", Some(k)) => GraphClass::Qp(k),
        ("qp", None) => {
            return Err(HarnessError::Usage("--class qp requires --k".into()));
        }
        ("qp2", _) => GraphClass::Qp(2),
        ("qp3", _) => GraphClass::Qp(3),
        ("qp4", _) => GraphClass::Qp(4),
        _ => {
            return Err(HarnessError::Usage(format!(
                "unknown class {class:?} (expected plane|tri|qp2|qp3|qp4)"
            )))
        }
    };
    c.validate().map_err(HarnessError::from_census)?;
    Ok(c)
}

#[derive(Clone, Debug)]
pub enum Command {
    Gen {
        shape: Shape,
        n: usize,
        seed: u64,
    },
    Count {
        input: PathBuf,
        class: GraphClass,
        filter: FilterSel,
    },
    Stats {
        input: PathBuf,
        class: GraphClass,
        filter: FilterSel,
    },
    Verify {
        input: Option<PathBuf>,
        suite: String,
        class: GraphClass,
        filter: FilterSel,
    },
    Bounds,
    ReduceDemo {
        input: PathBuf,
        vertex: usize,
        edges: Vec<(usize, usize)>,
    },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub budget: u64,
    pub workers: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    /// Cache directory, normally from the VINGLAB_CACHE environment
    /// variable.
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            budget: DEFAULT_BUDGET,
            workers: 1,
            format: OutputFormat::Text,
            out: None,
            cache_dir: std::env::var_os("VINGLAB_CACHE").map(PathBuf::from),
        }
    }
}

/// Result of a run: the rendered report plus whether a verification check
/// failed (which maps to a dedicated nonzero exit).
pub struct RunOutput {
    pub text: String,
    pub verification_failed: bool,
}

pub fn run(config: &RunConfig) -> Result<RunOutput, HarnessError> {
    let output = match &config.command {
        Command::Gen { shape, n, seed } => {
            let ps = generate::generate(*shape, *n, *seed)?;
            RunOutput {
                text: io::format_points(&ps),
                verification_failed: false,
            }
        }
        Command::Count {
            input,
            class,
            filter,
        } => run_count(config, input, *class, filter)?,
        Command::Stats {
            input,
            class,
            filter,
        } => run_stats(config, input, *class, filter)?,
        Command::Verify {
            input,
            suite,
            class,
            filter,
        } => run_verify(config, input.as_deref(), suite, *class, filter)?,
        Command::Bounds => run_bounds(config),
        Command::ReduceDemo {
            input,
            vertex,
            edges,
        } => run_reduce_demo(input, *vertex, edges)?,
    };
    if let Some(path) = &config.out {
        fs::write(path, output.text.as_bytes()).map_err(HarnessError::Io)?;
    }
    Ok(output)
}

fn load_catalog(path: &std::path::Path) -> Result<EdgeCatalog, HarnessError> {
    let ps = io::read_point_file(path)?;
    EdgeCatalog::build(ps).map_err(HarnessError::from_census)
}

fn filter_repr(filter: &CensusFilter) -> FilterRepr {
    FilterRepr {
        min_degree: filter.min_degree,
        max_edges: filter.max_edges,
    }
}

fn run_count(
    config: &RunConfig,
    input: &std::path::Path,
    class: GraphClass,
    filter_sel: &FilterSel,
) -> Result<RunOutput, HarnessError> {
    let cat = load_catalog(input)?;
    let filter = filter_sel.resolve(cat.n())?;
    let class_name = class.name();

    let mut from_cache = false;
    let count: BigUint = if let Some(dir) = &config.cache_dir {
        let key = cache::cache_key(cat.points(), &class_name, &filter);
        match cache::lookup(dir, &key) {
            Some(entry) => {
                from_cache = true;
                entry
                    .count
                    .parse()
                    .map_err(|_| HarnessError::Internal("corrupt cached count".into()))?
            }
            None => {
                let count = count_class(&cat, class, filter, config.budget, config.workers)
                    .map_err(HarnessError::from_census)?;
                let entry =
                    cache::make_entry(&class_name, &filter, cat.n(), count.to_string());
                cache::store(dir, &key, &entry);
                count
            }
        }
    } else {
        count_class(&cat, class, filter, config.budget, config.workers)
            .map_err(HarnessError::from_census)?
    };

    let report = CountReport {
        schema_version: SCHEMA_VERSION,
        command: "count".into(),
        input: input.display().to_string(),
        n: cat.n(),
        class: class_name,
        filter: filter_repr(&filter),
        crossing_pairs: cat.crossing_pair_count(),
        count: big_uint_str(&count),
        from_cache,
    };
    let text = match config.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let mut s = String::from("input,n,class,min_degree,max_edges,count\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                csv_field(&report.input),
                report.n,
                report.class,
                report.filter.min_degree,
                report
                    .filter
                    .max_edges
                    .map(|m| m.to_string())
                    .unwrap_or_default(),
                report.count
            );
            s
        }
        OutputFormat::Text => format!(
            "{} graphs of class {} over {} points ({} crossing pairs){}\n",
            report.count,
            report.class,
            report.n,
            report.crossing_pairs,
            if from_cache { " [cached]" } else { "" }
        ),
    };
    Ok(RunOutput {
        text,
        verification_failed: false,
    })
}

fn run_stats(
    config: &RunConfig,
    input: &std::path::Path,
    class: GraphClass,
    filter_sel: &FilterSel,
) -> Result<RunOutput, HarnessError> {
    use crate::census::fold_census;
    let cat = load_catalog(input)?;
    let filter = filter_sel.resolve(cat.n())?;
    let n = cat.n();

    let (sum_v, sum_vx, sum_m, max_m, count) = fold_census(
        &cat,
        class,
        filter,
        config.budget,
        config.workers,
        || (vec![0u64; n.max(1)], 0u64, 0u64, 0usize, 0u64),
        |acc, edges| {
            let h = vings::histogram(&cat, edges, class);
            for (i, c) in h.v.iter().enumerate() {
                acc.0[i] += c;
            }
            acc.1 += h.v_x;
            acc.2 += edges.len() as u64;
            acc.3 = acc.3.max(edges.len() as usize);
            acc.4 += 1;
        },
        |mut a, b| {
            for (x, y) in a.0.iter_mut().zip(b.0) {
                *x += y;
            }
            (a.0, a.1 + b.1, a.2 + b.2, a.3.max(b.3), a.4 + b.4)
        },
    )
    .map_err(HarnessError::from_census)?;

    let v_hat = |sum: u64| -> RationalRepr {
        let r = ratio::frac(sum as i64, count.max(1) as i64);
        RationalRepr::of(&r)
    };
    let per_degree: Vec<DegreeStat> = sum_v
        .iter()
        .enumerate()
        .map(|(degree, &sum)| DegreeStat {
            degree,
            sum: sum.to_string(),
            v_hat: v_hat(sum),
        })
        .collect();
    let report = StatsReport {
        schema_version: SCHEMA_VERSION,
        command: "stats".into(),
        input: input.display().to_string(),
        n,
        class: class.name(),
        filter: filter_repr(&filter),
        count: count.to_string(),
        sum_edges: sum_m.to_string(),
        max_edges: max_m,
        per_degree,
        sum_vx: sum_vx.to_string(),
        v_hat_x: v_hat(sum_vx),
    };

    let text = match config.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let mut s = String::from("degree,sum_v,v_hat_exact,v_hat_decimal\n");
            for d in &report.per_degree {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    d.degree,
                    d.sum,
                    csv_field(&d.v_hat.exact),
                    d.v_hat.decimal
                );
            }
            let _ = writeln!(
                s,
                "x,{},{},{}",
                report.sum_vx,
                csv_field(&report.v_hat_x.exact),
                report.v_hat_x.decimal
            );
            s
        }
        OutputFormat::Text => {
            let mut s = format!(
                "class {} over {} points: {} graphs, total edges {}, max edges {}\n",
                report.class, report.n, report.count, report.sum_edges, report.max_edges
            );
            for d in &report.per_degree {
                let _ = writeln!(
                    s,
                    "  v_hat_{} = {} ({:.6})",
                    d.degree, d.v_hat.exact, d.v_hat.decimal
                );
            }
            let _ = writeln!(
                s,
                "  v_hat_x = {} ({:.6})",
                report.v_hat_x.exact, report.v_hat_x.decimal
            );
            s
        }
    };
    Ok(RunOutput {
        text,
        verification_failed: false,
    })
}

fn run_verify(
    config: &RunConfig,
    input: Option<&std::path::Path>,
    suite: &str,
    class: GraphClass,
    filter_sel: &FilterSel,
) -> Result<RunOutput, HarnessError> {
    let cat = match input {
        Some(path) => Some(load_catalog(path)?),
        None => None,
    };
    let need_input = |name: &str| -> Result<&EdgeCatalog, HarnessError> {
        cat.as_ref().ok_or_else(|| {
            HarnessError::Usage(format!("suite {name} needs a point-set input file"))
        })
    };

    let mut suites: Vec<SuiteReport> = Vec::new();
    let wanted: Vec<&str> = if suite == "all" {
        vec![
            "identity",
            "charge-law",
            "seven-sums",
            "ledger",
            "lower-bounds",
        ]
    } else {
        vec![suite]
    };
    for s in wanted {
        match s {
            "identity" => {
                let cat = need_input("identity")?;
                let filter = filter_sel.resolve(cat.n())?;
                suites.push(suites::identity_suite(
                    cat,
                    class,
                    filter,
                    config.budget,
                    config.workers,
                )?);
            }
            "charge-law" => {
                let cat = need_input("charge-law")?;
                suites.push(suites::charge_law_suite(cat, config.budget, config.workers)?);
            }
            "seven-sums" => suites.push(suites::seven_sums_suite()),
            "ledger" => suites.push(suites::ledger_suite(
                cat.as_ref(),
                config.budget,
                config.workers,
            )?),
            "lower-bounds" => {
                let cat = need_input("lower-bounds")?;
                suites.push(suites::lower_bounds_suite(cat, config.budget, config.workers)?);
            }
            other => {
                return Err(HarnessError::Usage(format!(
                    "unknown suite {other:?} (identity|charge-law|seven-sums|ledger|lower-bounds|all)"
                )))
            }
        }
    }

    let all_pass = suites.iter().all(|s| s.all_pass());
    let report = VerifyReport {
        schema_version: SCHEMA_VERSION,
        command: "verify".into(),
        input: input.map(|p| p.display().to_string()),
        suites,
        all_pass,
    };
    let text = match config.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let mut s = String::from("suite,check,pass,lhs,rhs,note\n");
            for sr in &report.suites {
                for c in &sr.checks {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{}",
                        sr.suite,
                        csv_field(&c.name),
                        c.pass,
                        csv_field(&c.lhs),
                        csv_field(&c.rhs),
                        csv_field(&c.note)
                    );
                }
            }
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for sr in &report.suites {
                let _ = writeln!(s, "suite {}:", sr.suite);
                for c in &sr.checks {
                    let _ = writeln!(s, "  {}", c.line());
                }
            }
            let _ = writeln!(s, "{}", if all_pass { "ALL PASS" } else { "FAILURES" });
            s
        }
    };
    Ok(RunOutput {
        text,
        verification_failed: !all_pass,
    })
}

fn run_bounds(config: &RunConfig) -> RunOutput {
    let report = bounds::bound_report();
    let repr = BoundsReportRepr {
        schema_version: SCHEMA_VERSION,
        command: "bounds".into(),
        rows: report
            .rows
            .iter()
            .map(|r| BoundsRowRepr {
                name: r.name.clone(),
                quoted: r.quoted.clone(),
                computed: r.computed.clone(),
                deviation: r.abs_deviation,
                note: r.note.clone(),
            })
            .collect(),
    };
    let text = match config.format {
        OutputFormat::Json => to_json(&repr),
        OutputFormat::Csv => {
            let mut s = String::from("name,quoted,computed,deviation,note\n");
            for r in &repr.rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    csv_field(&r.name),
                    csv_field(&r.quoted),
                    csv_field(&r.computed),
                    r.deviation,
                    csv_field(&r.note)
                );
            }
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &repr.rows {
                let _ = writeln!(
                    s,
                    "{:44} quoted {:>12} computed {:>24} dev {:.3e}",
                    r.name, r.quoted, r.computed, r.deviation
                );
            }
            s
        }
    };
    RunOutput {
        text,
        verification_failed: false,
    }
}

fn run_reduce_demo(
    input: &std::path::Path,
    vertex: usize,
    base_edges: &[(usize, usize)],
) -> Result<RunOutput, HarnessError> {
    let cat = load_catalog(input)?;
    if vertex >= cat.n() {
        return Err(HarnessError::Usage(format!(
            "vertex {vertex} out of range for {} points",
            cat.n()
        )));
    }
    let mut edges = crate::census::SegSet::EMPTY;
    for &(a, b) in base_edges {
        if a >= cat.n() || b >= cat.n() || a == b {
            return Err(HarnessError::Usage(format!("bad edge {a}-{b}")));
        }
        edges.insert(cat.seg_id(a, b));
    }
    let graph = crate::census::GeoGraph {
        catalog: &cat,
        edges,
    };
    if !graph.is_plane() {
        return Err(HarnessError::Usage(
            "the supplied base edges cross each other".into(),
        ));
    }

    let mut s = String::new();
    let render_ving = |v: &Ving| -> String {
        let names: Vec<String> = v
            .edges
            .iter()
            .map(|i| {
                let Segment { a, b } = cat.segment(i);
                format!("{a}-{b}")
            })
            .collect();
        format!(
            "vertex {} degree {} edges [{}]",
            v.vertex,
            cat.degree(v.edges, v.vertex),
            names.join(", ")
        )
    };

    let start = Ving::new(vertex, edges);
    let x = vings::x_completion(&cat, &start, GraphClass::Plane);
    let _ = writeln!(s, "base graph: {}", render_ving(&start));
    let _ = writeln!(s, "x-completion: {}", render_ving(&x));
    match vings::reduce_to_x3(&cat, &x) {
        Ok(red) => {
            let _ = writeln!(
                s,
                "x3 reduction ({} path): {}",
                if red.p_inside {
                    "containing-triangle"
                } else {
                    "hull fallback"
                },
                render_ving(&red.result)
            );
            let _ = writeln!(
                s,
                "  triangle {:?}, ring {:?}",
                red.triangle, red.ring
            );
            match vings::reduce_to_x4(&cat, &red.result, &x) {
                Ok(x4) => {
                    let _ = writeln!(s, "x4 step: {}", render_ving(&x4));
                }
                Err(e) => {
                    let _ = writeln!(s, "x4 step: unavailable ({e})");
                }
            }
        }
        Err(e) => {
            let _ = writeln!(s, "x3 reduction: unavailable ({e})");
        }
    }
    // context: edge cap for the class at this size
    let me = max_edges_in_class(&cat, GraphClass::Plane, DEFAULT_BUDGET, 1)
        .map_err(HarnessError::from_census)?;
    let _ = writeln!(
        s,
        "plane class max edges observed {} (Euler cap {})",
        me.observed_max,
        3 * cat.n() as i64 - 6
    );
    Ok(RunOutput {
        text: s,
        verification_failed: false,
    })
}

//! The `freedyn` command line. [`run`] parses arguments and returns the
//! text to print and the exit status, so the binary stays a thin wrapper
//! and commands can be tested in-process.
//!
//! Every report carries a provenance block: the command, the budgets in
//! effect and a SHA-256 hash of that configuration. Exit status is 0 on
//! success, 1 on errors and failed golden checks, and 2 when `--strict`
//! is given and some computation ran out of budget.

mod golden;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::automorphisms::{AutError, Automorphism, Endomorphism};
use crate::dynamics::{
    gamma_graph, omega_limit_boundary, periods_census, verify_cycle, DynError, OmegaConfig, Point,
};
use crate::graphmaps::{find_inps, pf_data, strata, try_make_train_track, GraphMap, TrainTrackOutcome};
use crate::trees::{product_trees_check, TreeContext};
use crate::words::{all_reduced_words, Word};

pub use golden::{golden_suite, GoldenCheck};

#[derive(Parser, Debug)]
#[command(name = "freedyn", version, about = "Dynamics of free-group automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Exit with status 2 when a computation runs out of budget.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug, Clone)]
struct Budgets {
    /// Maximum number of orbit iterations.
    #[arg(long)]
    nmax: Option<usize>,
    /// Largest period tried.
    #[arg(long)]
    qmax: Option<usize>,
    /// Prefix depth at which a limit is certified.
    #[arg(long = "cert-depth")]
    cert_depth: Option<usize>,
}

impl Budgets {
    fn omega(&self) -> Result<OmegaConfig, String> {
        let mut cfg = OmegaConfig::default();
        for (name, slot, value) in [
            ("--nmax", &mut cfg.n_max, self.nmax),
            ("--qmax", &mut cfg.q_max, self.qmax),
            ("--cert-depth", &mut cfg.cert_depth, self.cert_depth),
        ] {
            if let Some(v) = value {
                if v == 0 {
                    return Err(format!("{name} must be positive"));
                }
                *slot = v;
            }
        }
        Ok(cfg)
    }
}

#[derive(Args, Debug, Clone)]
struct Seed {
    /// Starting word, e.g. `baD`.
    #[arg(long)]
    word: Option<String>,
    /// Eventually periodic starting point, e.g. `u(c)^inf`.
    #[arg(long)]
    ep: Option<String>,
}

impl Seed {
    fn point(&self, rank: usize) -> Result<Point, String> {
        match (&self.word, &self.ep) {
            (Some(w), None) => Ok(Point::Finite(Word::parse(w, rank).map_err(|e| e.to_string())?)),
            (None, Some(e)) => Point::parse(e, rank).map_err(|e| e.to_string()),
            _ => Err("give exactly one of --word and --ep".into()),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify that a map is an automorphism and print its inverse.
    Verify {
        #[arg(long)]
        aut: PathBuf,
    },
    /// Print the first terms of a forward orbit.
    Orbit {
        #[arg(long)]
        aut: PathBuf,
        #[command(flatten)]
        seed: Seed,
        /// Number of terms, including the seed.
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
    /// Certify the limit cycle of a forward orbit.
    Omega {
        #[arg(long)]
        aut: PathBuf,
        #[command(flatten)]
        seed: Seed,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Periods of all short words and extra seeds.
    Census {
        #[arg(long)]
        aut: PathBuf,
        /// Longest word enumerated.
        #[arg(long, default_value_t = 2)]
        len: usize,
        /// File of extra seeds, one word or EP point per line.
        #[arg(long)]
        seeds: Option<PathBuf>,
        /// Warn about periods above this bound.
        #[arg(long)]
        bound: Option<usize>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Graph joining backward limits to forward limits of seeds.
    Gamma {
        #[arg(long)]
        aut: PathBuf,
        /// Nontrivial words up to this length are used as seeds.
        #[arg(long, default_value_t = 2)]
        len: usize,
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Search for a train-track representative.
    Traintrack {
        #[arg(long, conflicts_with = "graph")]
        aut: Option<PathBuf>,
        /// Graph-map file to start from instead of the rose.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Maximum number of folds.
        #[arg(long, default_value_t = 100)]
        budget: usize,
        /// Iterations over which edges must stay legal.
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Longest Nielsen path searched for.
        #[arg(long = "inp-len", default_value_t = 8)]
        inp_len: usize,
    },
    /// Perron–Frobenius data of a matrix or of the strata of a map.
    Pf {
        #[arg(long, conflicts_with_all = ["graph", "matrix"])]
        aut: Option<PathBuf>,
        #[arg(long, conflicts_with = "matrix")]
        graph: Option<PathBuf>,
        /// Rows separated by `;`, entries by `,`, e.g. `1,1;1,0`.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Translation lengths in the tree of a train track.
    Lengths {
        #[arg(long)]
        aut: PathBuf,
        /// Class to measure; repeatable.
        #[arg(long = "word")]
        words: Vec<String>,
        /// File of classes, one word per line.
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(long, default_value_t = 40)]
        pmax: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Also measure in the tree of the inverse and compare.
        #[arg(long)]
        product: bool,
    },
    /// Run the built-in suite of worked examples.
    Examples,
}

/// What a command printed and how the process should exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Inconclusive,
    Failed,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Inconclusive => "inconclusive",
            Status::Failed => "failed",
        }
    }
}

struct Report {
    status: Status,
    config: Value,
    result: Value,
    text: String,
    dot: Option<String>,
}

/// SHA-256 of the canonical JSON form of a configuration.
pub fn config_hash(config: &Value) -> String {
    let digest = Sha256::digest(serde_json::to_string(config).expect("json").as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn aut_error_kind(e: &AutError) -> &'static str {
    match e {
        AutError::Word(_) => "WordError",
        AutError::RankMismatch(..) => "RankMismatch",
        AutError::DeterminantObstruction(_) => "DeterminantObstruction",
        AutError::NotSurjective(_) => "NotSurjective",
        AutError::ReductionBudgetExhausted(_) => "ReductionBudgetExhausted",
        AutError::RoundTrip(_) => "RoundTrip",
        AutError::Format { .. } => "FormatError",
    }
}

fn load_aut(path: &Path) -> Result<Automorphism, String> {
    let phi = Endomorphism::from_text(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    Automorphism::verify_and_invert(&phi).map_err(|e| format!("{}: {}: {e}", aut_error_kind(&e), path.display()))
}

fn load_seeds(path: &Path, rank: usize) -> Result<Vec<Point>, String> {
    let text = read(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        out.push(Point::parse(line, rank).map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))?);
    }
    Ok(out)
}

fn base_config(command: &str, alpha: Option<&Automorphism>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    if let Some(a) = alpha {
        m.insert("automorphism".into(), json!(a.to_string()));
    }
    m
}

fn omega_config_json(cfg: &OmegaConfig) -> Value {
    serde_json::to_value(cfg).expect("serializable")
}

fn budget_status(e: &DynError) -> Status {
    match e {
        DynError::NoConvergenceDetected { .. } | DynError::NotFoundWithinBudget { .. } => Status::Inconclusive,
        _ => Status::Failed,
    }
}

fn cmd_verify(aut: &Path) -> Result<Report, String> {
    let phi = Endomorphism::from_text(&read(aut)?).map_err(|e| format!("{}: {e}", aut.display()))?;
    let mut config = base_config("verify", None);
    config.insert("endomorphism".into(), json!(phi.to_string()));
    match Automorphism::verify_and_invert(&phi) {
        Ok(alpha) => {
            let inverse = alpha.inverse_map().to_string();
            let text = format!("automorphism: {alpha}\ninverse: {inverse}\n");
            Ok(Report {
                status: Status::Ok,
                config: Value::Object(config),
                result: json!({ "automorphism": alpha.to_string(), "inverse": inverse }),
                text,
                dot: None,
            })
        }
        Err(e) => {
            let kind = aut_error_kind(&e);
            Ok(Report {
                status: Status::Failed,
                config: Value::Object(config),
                result: json!({ "obstruction": kind, "detail": e.to_string() }),
                text: format!("not an automorphism: {kind}: {e}\n"),
                dot: None,
            })
        }
    }
}

fn cmd_orbit(aut: &Path, seed: &Seed, nmax: usize) -> Result<Report, String> {
    let alpha = load_aut(aut)?;
    let start = seed.point(alpha.rank())?;
    let mut config = base_config("orbit", Some(&alpha));
    config.insert("seed".into(), json!(start.to_string()));
    config.insert("nmax".into(), json!(nmax));
    let mut terms: Vec<String> = Vec::with_capacity(nmax);
    let mut cur = start;
    for i in 0..nmax {
        if i > 0 {
            cur = match cur {
                Point::Finite(w) => Point::Finite(alpha.apply_letters(w.letters())),
                Point::Periodic(x) => Point::Periodic(alpha.apply_ep(&x).map_err(|e| e.to_string())?),
                Point::Prefix(_) => return Err("orbits of prefix points are not supported".into()),
            };
        }
        terms.push(cur.to_string());
    }
    let text = terms.iter().enumerate().map(|(i, t)| format!("{i}: {t}\n")).collect();
    Ok(Report { status: Status::Ok, config: Value::Object(config), result: json!({ "terms": terms }), text, dot: None })
}

fn cmd_omega(aut: &Path, seed: &Seed, budgets: &Budgets) -> Result<Report, String> {
    let alpha = load_aut(aut)?;
    let start = seed.point(alpha.rank())?;
    let cfg = budgets.omega()?;
    let mut config = base_config("omega", Some(&alpha));
    config.insert("seed".into(), json!(start.to_string()));
    config.insert("budgets".into(), omega_config_json(&cfg));
    Ok(match omega_limit_boundary(&alpha, &start, &cfg) {
        Ok(lim) => {
            let cyclic = verify_cycle(&alpha, &lim, cfg.cert_depth);
            let mut text = format!(
                "period {} ({:?}, certificate depth {}, exact {}, cycle verified {cyclic})\n",
                lim.period, lim.kind, lim.certificate.depth, lim.certificate.exact
            );
            for (i, p) in lim.points.iter().enumerate() {
                let _ = writeln!(text, "X{i} = {}", p.snippet(64));
            }
            Report {
                status: Status::Ok,
                config: Value::Object(config),
                result: json!({ "limit": lim, "cycle_verified": cyclic }),
                text,
                dot: None,
            }
        }
        Err(e) => Report {
            status: budget_status(&e),
            config: Value::Object(config),
            result: json!({ "error": e.to_string() }),
            text: format!("no limit: {e}\n"),
            dot: None,
        },
    })
}

fn cmd_census(aut: &Path, len: usize, seeds: Option<&Path>, bound: Option<usize>, budgets: &Budgets) -> Result<Report, String> {
    let alpha = load_aut(aut)?;
    let cfg = budgets.omega()?;
    let extra = match seeds {
        Some(p) => load_seeds(p, alpha.rank())?,
        None => Vec::new(),
    };
    let mut config = base_config("census", Some(&alpha));
    config.insert("len".into(), json!(len));
    config.insert("seeds".into(), json!(extra.iter().map(Point::to_string).collect::<Vec<_>>()));
    config.insert("bound".into(), json!(bound));
    config.insert("budgets".into(), omega_config_json(&cfg));
    let report = periods_census(&alpha, len, &extra, &cfg, bound);
    let periods: Vec<String> = report.periods.iter().map(usize::to_string).collect();
    let mut text = format!("periods {{{}}}\n", periods.join(", "));
    let _ = writeln!(text, "seeds {} inconclusive {}", report.entries.len(), report.inconclusive);
    if !report.violations.is_empty() {
        let _ = writeln!(text, "periods above bound: {:?}", report.violations);
    }
    let status = if report.inconclusive > 0 { Status::Inconclusive } else { Status::Ok };
    Ok(Report { status, config: Value::Object(config), result: json!(report), text, dot: None })
}

fn cmd_gamma(aut: &Path, len: usize, seeds: Option<&Path>, budgets: &Budgets) -> Result<Report, String> {
    let alpha = load_aut(aut)?;
    let cfg = budgets.omega()?;
    let mut all: Vec<Point> =
        all_reduced_words(alpha.rank(), len).into_iter().filter(|w| !w.is_empty()).map(Point::Finite).collect();
    if let Some(p) = seeds {
        all.extend(load_seeds(p, alpha.rank())?);
    }
    let mut config = base_config("gamma", Some(&alpha));
    config.insert("len".into(), json!(len));
    config.insert("seeds".into(), json!(all.iter().map(Point::to_string).collect::<Vec<_>>()));
    config.insert("budgets".into(), omega_config_json(&cfg));
    let g = gamma_graph(&alpha, &all, &cfg);
    let mut text = String::new();
    for e in &g.edges {
        let _ = writeln!(
            text,
            "{} -> {} ({} seeds)",
            g.repelling[e.from].point.snippet(24),
            g.attracting[e.to].point.snippet(24),
            e.seeds.len()
        );
    }
    for u in &g.unresolved {
        let _ = writeln!(text, "unresolved {}: {}", u.seed, u.reason);
    }
    let status = if g.unresolved.is_empty() { Status::Ok } else { Status::Inconclusive };
    Ok(Report { status, config: Value::Object(config), result: json!(g), text, dot: Some(g.to_dot()) })
}

fn load_graph(aut: Option<&Path>, graph: Option<&Path>) -> Result<(GraphMap, serde_json::Map<String, Value>), String> {
    match (aut, graph) {
        (Some(a), None) => {
            let alpha = load_aut(a)?;
            Ok((GraphMap::rose_from_automorphism(&alpha), base_config("", Some(&alpha))))
        }
        (None, Some(g)) => {
            let map = GraphMap::from_text(&read(g)?).map_err(|e| format!("{}: {e}", g.display()))?;
            let mut cfg = serde_json::Map::new();
            cfg.insert("graph".into(), json!(map.to_text()));
            Ok((map, cfg))
        }
        _ => Err("give exactly one of --aut and --graph".into()),
    }
}

fn strata_json(f: &GraphMap, tol: f64) -> (Value, String) {
    let mut text = String::new();
    let list: Vec<Value> = strata(f, tol)
        .into_iter()
        .map(|s| {
            let names: Vec<&str> = s.edges.iter().map(|&e| f.graph().edge(e).name.as_str()).collect();
            match &s.pf {
                Some(pf) => {
                    let _ = writeln!(text, "stratum {{{}}} {:?} lambda in [{:.12}, {:.12}]", names.join(" "), s.class, pf.lo, pf.hi);
                }
                None => {
                    let _ = writeln!(text, "stratum {{{}}} {:?}", names.join(" "), s.class);
                }
            }
            json!({ "edges": names, "class": s.class, "pf": s.pf })
        })
        .collect();
    (Value::Array(list), text)
}

fn cmd_traintrack(aut: Option<&Path>, graph: Option<&Path>, budget: usize, depth: usize, inp_len: usize) -> Result<Report, String> {
    let (f, mut config) = load_graph(aut, graph)?;
    config.insert("command".into(), json!("traintrack"));
    config.insert("budget".into(), json!(budget));
    config.insert("depth".into(), json!(depth));
    config.insert("inp_len".into(), json!(inp_len));
    let out = try_make_train_track(&f, budget, depth);
    let map = out.map();
    let (strata, strata_text) = strata_json(map, 1e-9);
    let mut text = String::new();
    let status = match &out {
        TrainTrackOutcome::Success { trace, .. } => {
            let _ = writeln!(text, "train track found after {} moves", trace.len());
            Status::Ok
        }
        TrainTrackOutcome::Unresolved { reason, trace, .. } => {
            let _ = writeln!(text, "unresolved after {} moves: {reason}", trace.len());
            Status::Inconclusive
        }
    };
    text.push_str(&map.to_text());
    text.push_str(&strata_text);
    let mut result = json!({
        "success": out.is_success(),
        "trace": out.trace(),
        "map": map.to_text(),
        "strata": strata,
    });
    if let TrainTrackOutcome::Unresolved { reason, .. } = &out {
        result["reason"] = json!(reason);
    }
    if let Ok(ts) = map.turn_structure() {
        let gates: Vec<Vec<String>> =
            ts.gates().iter().map(|g| g.iter().map(|&d| map.graph().dir_name(d)).collect()).collect();
        let _ = writeln!(text, "gates {gates:?}");
        result["gates"] = json!(gates);
    }
    if out.is_success() {
        let inps = find_inps(map, inp_len).map_err(|e| e.to_string())?;
        let shown: Vec<Value> = inps
            .iter()
            .map(|p| json!({ "path": p.path.display(map.graph()), "illegal_turns": p.illegal_turns }))
            .collect();
        for p in &inps {
            let _ = writeln!(text, "nielsen path {} ({} illegal turns)", p.path.display(map.graph()), p.illegal_turns);
        }
        result["nielsen_paths"] = Value::Array(shown);
    }
    Ok(Report { status, config: Value::Object(config), result, text, dot: None })
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<u64>>, String> {
    let rows: Vec<Vec<u64>> = s
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<u64>().map_err(|e| format!("bad entry {x:?}: {e}"))).collect())
        .collect::<Result<_, _>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err("matrix must be square".into());
    }
    Ok(rows)
}

fn cmd_pf(aut: Option<&Path>, graph: Option<&Path>, matrix: Option<&str>, tol: f64) -> Result<Report, String> {
    if !(tol > 0.0) {
        return Err("--tol must be positive".into());
    }
    if let Some(m) = matrix {
        let m = parse_matrix(m)?;
        let mut config = base_config("pf", None);
        config.insert("matrix".into(), json!(m));
        config.insert("tol".into(), json!(tol));
        return Ok(match pf_data(&m, tol) {
            Ok(pf) => Report {
                status: Status::Ok,
                config: Value::Object(config),
                text: format!("lambda in [{:.12}, {:.12}]\nlengths {:?}\n", pf.lo, pf.hi, pf.lengths),
                result: json!(pf),
                dot: None,
            },
            Err(e) => Report {
                status: Status::Failed,
                config: Value::Object(config),
                result: json!({ "error": e.to_string() }),
                text: format!("{e}\n"),
                dot: None,
            },
        });
    }
    let (f, mut config) = load_graph(aut, graph)?;
    config.insert("command".into(), json!("pf"));
    config.insert("tol".into(), json!(tol));
    let (strata, text) = strata_json(&f, tol);
    Ok(Report { status: Status::Ok, config: Value::Object(config), result: json!({ "strata": strata }), text, dot: None })
}

fn cmd_lengths(aut: &Path, words: &[String], seeds: Option<&Path>, pmax: usize, tol: f64, product: bool) -> Result<Report, String> {
    let alpha = load_aut(aut)?;
    let k = alpha.rank();
    let mut classes: Vec<Word> = words.iter().map(|w| Word::parse(w, k).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    if let Some(p) = seeds {
        for pt in load_seeds(p, k)? {
            match pt {
                Point::Finite(w) => classes.push(w),
                other => return Err(format!("{other} is not a group element")),
            }
        }
    }
    if classes.is_empty() {
        classes = (0..k).map(|i| Word::generator(k, i)).collect();
    }
    let mut config = base_config("lengths", Some(&alpha));
    config.insert("classes".into(), json!(classes.iter().map(Word::to_string).collect::<Vec<_>>()));
    config.insert("pmax".into(), json!(pmax));
    config.insert("tol".into(), json!(tol));
    config.insert("product".into(), json!(product));
    if product {
        return Ok(match product_trees_check(&alpha, &classes, pmax, tol) {
            Ok(r) => {
                let mut text = String::new();
                for row in &r.rows {
                    let _ = writeln!(text, "{}: {:?} / {:?} {}", row.class, row.length, row.length_inverse, row.status);
                }
                let _ = writeln!(text, "mismatches {} undecided {} epsilon {:?}", r.mismatches, r.undecided, r.epsilon);
                let status = if r.undecided > 0 { Status::Inconclusive } else { Status::Ok };
                Report { status, config: Value::Object(config), result: json!(r), text, dot: None }
            }
            Err(e) => Report {
                status: Status::Inconclusive,
                config: Value::Object(config),
                result: json!({ "error": e.to_string() }),
                text: format!("{e}\n"),
                dot: None,
            },
        });
    }
    let ctx = match TreeContext::for_automorphism(&alpha, 100, 6, tol.min(1e-9)) {
        Ok(c) => c,
        Err(e) => {
            return Ok(Report {
                status: Status::Inconclusive,
                config: Value::Object(config),
                result: json!({ "error": e.to_string() }),
                text: format!("{e}\n"),
                dot: None,
            })
        }
    };
    let mut rows = Vec::new();
    let mut text = format!("lambda in [{:.12}, {:.12}]\n", ctx.pf().lo, ctx.pf().hi);
    let mut status = Status::Ok;
    for g in &classes {
        match ctx.word_length(g, pmax, tol) {
            Ok(r) => {
                let row = r.row();
                let _ = writeln!(text, "{}: {:.12} ± {:.1e} (legal at {:?})", row.class, row.value, r.width, row.legal_at);
                rows.push(json!(row));
            }
            Err(e) => {
                status = Status::Inconclusive;
                let _ = writeln!(text, "{}: {e}", g.conjugacy_key());
                rows.push(json!({ "class": g.conjugacy_key().to_string(), "error": e.to_string() }));
            }
        }
    }
    Ok(Report {
        status,
        config: Value::Object(config),
        result: json!({ "lambda": [ctx.pf().lo, ctx.pf().hi], "rows": rows }),
        text,
        dot: None,
    })
}

fn cmd_examples() -> Report {
    let checks = golden_suite();
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(text, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
        if !c.pass {
            let _ = writeln!(text, "  expected: {}\n  actual:   {}", c.expected, c.actual);
        }
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(text, "{} passed, {failed} failed", checks.len() - failed);
    Report {
        status: if failed == 0 { Status::Ok } else { Status::Failed },
        config: Value::Object(base_config("examples", None)),
        result: json!(checks),
        text,
        dot: None,
    }
}

fn dispatch(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Command::Verify { aut } => cmd_verify(aut),
        Command::Orbit { aut, seed, nmax } => cmd_orbit(aut, seed, *nmax),
        Command::Omega { aut, seed, budgets } => cmd_omega(aut, seed, budgets),
        Command::Census { aut, len, seeds, bound, budgets } => cmd_census(aut, *len, seeds.as_deref(), *bound, budgets),
        Command::Gamma { aut, len, seeds, budgets } => cmd_gamma(aut, *len, seeds.as_deref(), budgets),
        Command::Traintrack { aut, graph, budget, depth, inp_len } => {
            cmd_traintrack(aut.as_deref(), graph.as_deref(), *budget, *depth, *inp_len)
        }
        Command::Pf { aut, graph, matrix, tol } => cmd_pf(aut.as_deref(), graph.as_deref(), matrix.as_deref(), *tol),
        Command::Lengths { aut, words, seeds, pmax, tol, product } => {
            cmd_lengths(aut, words, seeds.as_deref(), *pmax, *tol, *product)
        }
        Command::Examples => Ok(cmd_examples()),
    }
}

/// Runs the command line given by `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: rendered, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: rendered, code }
            };
        }
    };
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(msg) => return Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: 1 },
    };
    let hash = config_hash(&report.config);
    let stdout = match cli.format {
        Format::Json => {
            let doc = json!({
                "status": report.status,
                "provenance": { "config_hash": hash, "config": report.config, "version": env!("CARGO_PKG_VERSION") },
                "result": report.result,
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        Format::Dot => match &report.dot {
            Some(d) => format!("// config {hash}\n{d}"),
            None => {
                return Outcome {
                    stdout: String::new(),
                    stderr: "error: DOT output is only available for `gamma`\n".into(),
                    code: 1,
                }
            }
        },
        Format::Text => format!("{}# status {}, config {hash}\n", report.text, report.status.name()),
    };
    let code = match report.status {
        Status::Ok => 0,
        Status::Failed => 1,
        Status::Inconclusive if cli.strict => 2,
        Status::Inconclusive => 0,
    };
    Outcome { stdout, stderr: String::new(), code }
}

//! `chordalm`: generate, glue, test and certify GF(q)-represented matroids.
//!
//! Exit codes: 0 true/success, 1 false/negative, 2 usage or input error,
//! 3 internal invariant violation (including theorem counterexamples).

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use chordalm_core::catalog::{
    self, enumerate, format_canonical, format_matroid, read_matroid, with_configured_pool, EnumerateOptions,
    ReportLine,
};
use chordalm_core::constructions::{
    affine_geometry, circuit_matroid, dual, dual_k33, gpc, graphic, pg, s8, uniform, wheel, GlueMode, GluePairing, UniformOutcome,
    DEFAULT_UNIFORM_BUDGET,
};
use chordalm_core::decompose::{decompose_tree, every_cocircuit_spans, is_round, vertical_separations, DecompMode};
use chordalm_core::detect::{
    has_induced_minor, induced_restrictions, is_chordal, is_chordal_circuitsplit, is_gfq_chordal, Family,
};
use chordalm_core::peo::{find_peo, verify_peo, PeoCertificate};
use chordalm_core::{Error, RepMatroid};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "chordalm", version, about = "Chordality of matroids represented over small finite fields")]
struct Cli {
    /// Emit one JSON object per line: {check, input, result, witness?, elapsed_ms}.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a standard matroid in the text format.
    Gen(GenArgs),
    /// Generalized parallel connection of two matroid files.
    Gpc {
        file1: PathBuf,
        file2: PathBuf,
        /// Comma-separated `a:b` pairs (label in file1 : label in file2); a
        /// bare `a` pairs equal labels.
        #[arg(long)]
        glue: String,
        #[arg(long, value_enum)]
        mode: GlueModeArg,
        /// Write the canonical form instead of the glued labels.
        #[arg(long)]
        canonical: bool,
    },
    /// Decide a property of a matroid file.
    Check {
        #[arg(value_enum)]
        property: Property,
        /// chordal: flat | circuit-split; gfq-chordal: minor | restriction |
        /// peo | decompose; round: vertical | cocircuit.
        #[arg(long)]
        method: Option<String>,
        file: PathBuf,
    },
    /// Search for members of a family as induced restrictions or minors.
    Detect {
        #[arg(value_enum)]
        route: DetectRoute,
        /// Comma-separated member ids (`c4`, `c4+`, `k4`, `k33-dual`,
        /// `u2-3`, …) or `minor` / `restriction` for the forbidden family.
        #[arg(long)]
        family: String,
        file: PathBuf,
    },
    /// Find or verify a perfect elimination ordering of cocircuits.
    Peo {
        #[arg(value_enum)]
        action: PeoAction,
        file: PathBuf,
        /// Certificate (JSON) to verify.
        cert: Option<PathBuf>,
    },
    /// Decomposition tree of generalized parallel connections.
    Decompose {
        #[arg(long, value_enum)]
        mode: DecompModeArg,
        file: PathBuf,
    },
    /// Exhaustive catalogs and theorem verification.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Rank (pg, uniform, ag).
    #[arg(long)]
    rank: Option<usize>,
    /// Field order.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Number of elements (circuit, uniform) or spokes (wheel).
    #[arg(long)]
    n: Option<usize>,
    /// Edges `u-v,u-v,…` (graphic).
    #[arg(long)]
    edges: Option<String>,
    /// Search budget (uniform).
    #[arg(long, default_value_t = DEFAULT_UNIFORM_BUDGET)]
    budget: u64,
    /// Write the canonical form instead of the construction's labels.
    #[arg(long)]
    canonical: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Pg,
    Circuit,
    Graphic,
    DualK33,
    Uniform,
    Ag,
    S8,
    /// Cycle matroid of the wheel with `--n` spokes.
    Wheel,
    /// F7*, the dual of the Fano plane.
    F7Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum GlueModeArg {
    Projective,
    Modular,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Chordal,
    GfqChordal,
    Round,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetectRoute {
    InducedRestriction,
    InducedMinor,
}

#[derive(Clone, Copy, ValueEnum)]
enum PeoAction {
    Find,
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecompModeArg {
    ChordalModular,
    GfqProjective,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// One line per projective-equivalence class of simple restrictions of PG(r-1, q).
    Enumerate {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        q: usize,
        /// Only classes of full rank.
        #[arg(long)]
        spanning: bool,
        #[arg(long)]
        min_size: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Run a theorem check over its universe; `all` runs every check.
    Verify {
        #[arg(long)]
        check: String,
    },
    /// List the registered checks.
    List,
}

/// What a command produced: its truth value, the JSON result and witness,
/// and the human-readable text.
struct Report {
    check: String,
    input: String,
    ok: bool,
    result: Value,
    witness: Option<Value>,
    text: String,
    /// Own timing (catalog verify); otherwise the whole run's time is used.
    elapsed_ms: Option<u128>,
}

enum Failure {
    Usage(String),
    /// Message, and the JSON-lines report to print in `--json` mode.
    Invariant(String, Option<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GutsLeak(_) | Error::NoValidSplit(_) => Failure::Invariant(e.to_string(), None),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<Vec<Report>, Failure>;

fn load(path: &Path) -> Result<RepMatroid, Failure> {
    read_matroid(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn shown(path: &Path) -> String {
    path.display().to_string()
}

fn need<T>(v: Option<T>, what: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{what}")))
}

fn matroid_report(check: &str, input: String, m: &RepMatroid, canonical: bool) -> Result<Report, Failure> {
    let out = if canonical { m.canonical() } else { m.clone() };
    let text = if canonical { format_canonical(m) } else { format_matroid(&out)? };
    Ok(Report {
        elapsed_ms: None,
        check: check.into(),
        input,
        ok: true,
        result: json!(out),
        witness: None,
        text: text.trim_end().to_string(),
    })
}

fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .trim()
                .split_once('-')
                .ok_or_else(|| Failure::Usage(format!("edge `{t}` is not `u-v`")))?;
            let p = |x: &str| x.trim().parse().map_err(|_| Failure::Usage(format!("bad vertex `{x}`")));
            Ok((p(a)?, p(b)?))
        })
        .collect()
}

fn gen(a: &GenArgs) -> CmdResult {
    let q = a.q;
    let (name, m) = match a.kind {
        GenKind::Pg => ("pg", pg(need(a.rank, "rank")?, q)?),
        GenKind::Circuit => ("circuit", circuit_matroid(need(a.n, "n")?, q)?),
        GenKind::Graphic => ("graphic", graphic(&parse_edges(&need(a.edges.clone(), "edges")?)?)?),
        GenKind::DualK33 => ("dual-k33", dual_k33()),
        GenKind::Ag => ("ag", affine_geometry(need(a.rank, "rank")?, q)?),
        GenKind::S8 => ("s8", s8()),
        GenKind::Wheel => ("wheel", graphic(&wheel(need(a.n, "n")?))?),
        GenKind::F7Dual => ("f7-dual", dual(&pg(3, 2)?)?),
        GenKind::Uniform => {
            let (r, n) = (need(a.rank, "rank")?, need(a.n, "n")?);
            match uniform(r, n, q, a.budget)? {
                UniformOutcome::Found(m) => ("uniform", m),
                UniformOutcome::NotRepresentable => {
                    return Ok(vec![Report {
                        elapsed_ms: None,
                        check: "gen-uniform".into(),
                        input: format!("r={r} n={n} q={q}"),
                        ok: false,
                        result: json!("not_representable"),
                        witness: None,
                        text: format!("U({r},{n}) is not GF({q})-representable (exhausted search)"),
                    }]);
                }
            }
        }
    };
    let input = format!("{name} rank={:?} n={:?} q={q}", a.rank, a.n);
    Ok(vec![matroid_report(&format!("gen-{name}"), input, &m, a.canonical)?])
}

fn check(property: Property, method: Option<&str>, file: &Path) -> CmdResult {
    let m = load(file)?;
    let (id, ok, witness) = match property {
        Property::Chordal => {
            let r = match method.unwrap_or("flat") {
                "flat" => is_chordal(&m),
                "circuit-split" => is_chordal_circuitsplit(&m),
                other => return Err(Error::UnknownMethod(other.into()).into()),
            };
            ("chordal", r.chordal, r.witness.map(|w| json!({"non_splitting_circuit": w})))
        }
        Property::GfqChordal => {
            let v = is_gfq_chordal(&m, method.unwrap_or("minor"))?;
            ("gfq-chordal", v.chordal, Some(json!(v.certificate)))
        }
        Property::Round => {
            let round = match method.unwrap_or("vertical") {
                "vertical" => is_round(&m),
                "cocircuit" => every_cocircuit_spans(&m),
                other => return Err(Error::UnknownMethod(other.into()).into()),
            };
            let sep = vertical_separations(&m, None).first().map(|s| json!(s.labels(&m)));
            ("round", round, if round { None } else { sep })
        }
    };
    let mut text = format!("{id}: {ok}");
    if let Some(w) = &witness {
        if !ok || property == Property::GfqChordal {
            text.push_str(&format!("\nwitness: {w}"));
        }
    }
    Ok(vec![Report {
        elapsed_ms: None,
        check: id.into(),
        input: shown(file),
        ok,
        result: json!(ok),
        witness,
        text,
    }])
}

fn detect(route: DetectRoute, fam: &str, file: &Path) -> CmdResult {
    let m = load(file)?;
    let family = Family::parse(fam, m.q())?;
    let (id, found): (&str, Vec<_>) = match route {
        DetectRoute::InducedRestriction => ("induced-restriction", induced_restrictions(&m, &family)),
        DetectRoute::InducedMinor => ("induced-minor", has_induced_minor(&m, &family).into_iter().collect()),
    };
    let ok = !found.is_empty();
    let mut text = format!("{id} {family}: {}", if ok { "found" } else { "none" });
    for w in &found {
        text.push_str(&format!(
            "\n  {} on flat {{{}}} after contracting {{{}}}",
            w.classification,
            w.flat.join(", "),
            w.contracted.join(", ")
        ));
    }
    Ok(vec![Report {
        elapsed_ms: None,
        check: id.into(),
        input: shown(file),
        ok,
        result: json!(ok),
        witness: ok.then(|| json!(found)),
        text,
    }])
}

fn read_certificate(path: &Path) -> Result<PeoCertificate, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: invalid JSON: {e}", path.display())))?;
    // accepted shapes: a certificate, a `peo find --json` line, or a bare
    // list of cocircuit label lists
    let cert = value.get("witness").cloned().unwrap_or(value);
    if let Ok(c) = serde_json::from_value::<PeoCertificate>(cert.clone()) {
        return Ok(c);
    }
    serde_json::from_value::<Vec<Vec<String>>>(cert)
        .map(PeoCertificate::from_cocircuits)
        .map_err(|e| Failure::Usage(format!("{}: not a certificate: {e}", path.display())))
}

fn peo(action: PeoAction, file: &Path, cert: Option<&Path>) -> CmdResult {
    let m = load(file)?;
    match action {
        PeoAction::Find => {
            let out = find_peo(&m);
            let ok = out.certificate.is_some();
            let mut text = format!(
                "peo: {}  (nodes {}, backtracks {})",
                if ok { "found" } else { "none" },
                out.stats.nodes,
                out.stats.backtracks
            );
            if let Some(c) = &out.certificate {
                for (i, s) in c.steps.iter().enumerate() {
                    text.push_str(&format!(
                        "\n  C{}* = {{{}}}  closure rank {}",
                        i + 1,
                        s.cocircuit.join(", "),
                        s.closure_rank
                    ));
                }
            }
            Ok(vec![Report {
                elapsed_ms: None,
                check: "peo-find".into(),
                input: shown(file),
                ok,
                result: json!({"found": ok, "sizes": out.certificate.as_ref().map(|c| c.sizes()), "stats": out.stats}),
                witness: out.certificate.map(|c| json!(c)),
                text,
            }])
        }
        PeoAction::Verify => {
            let path = cert.ok_or_else(|| Failure::Usage("peo verify needs a certificate file".into()))?;
            let c = read_certificate(path)?;
            let v = verify_peo(&m, &c)?;
            let text = match (&v.failing_step, &v.reason) {
                (Some(i), Some(r)) => format!("invalid at step {}: {r}", i + 1),
                _ => "valid".into(),
            };
            Ok(vec![Report {
                elapsed_ms: None,
                check: "peo-verify".into(),
                input: format!("{} {}", shown(file), shown(path)),
                ok: v.valid,
                result: json!(v.valid),
                witness: (!v.valid).then(|| json!(v)),
                text,
            }])
        }
    }
}

fn decompose(mode: DecompModeArg, file: &Path) -> CmdResult {
    let m = load(file)?;
    let mode = match mode {
        DecompModeArg::ChordalModular => DecompMode::ChordalModular,
        DecompModeArg::GfqProjective => DecompMode::GfqProjective,
    };
    match decompose_tree(&m, mode) {
        Ok(t) => {
            let sizes: Vec<String> = t.leaves().iter().map(|l| format!("{} (rank {})", l.len(), l.rank())).collect();
            Ok(vec![Report {
                elapsed_ms: None,
                check: "decompose".into(),
                input: shown(file),
                ok: true,
                result: json!({"splits": t.splits(), "leaves": t.leaves().len()}),
                witness: Some(json!(t)),
                text: format!("{} splits; leaves: {}", t.splits(), sizes.join(", ")),
            }])
        }
        Err(Error::PreconditionFailed(why)) => Ok(vec![Report {
            elapsed_ms: None,
            check: "decompose".into(),
            input: shown(file),
            ok: false,
            result: json!(false),
            witness: Some(json!({"precondition": why})),
            text: format!("not decomposable: {why}"),
        }]),
        Err(e) => Err(e.into()),
    }
}

fn catalog_cmd(c: &CatalogCommand) -> CmdResult {
    match c {
        CatalogCommand::Enumerate {
            rank,
            q,
            spanning,
            min_size,
            max_size,
        } => {
            let opts = EnumerateOptions {
                spanning: *spanning,
                min_size: *min_size,
                max_size: *max_size,
            };
            let recs = with_configured_pool(|| enumerate(*rank, *q, &opts))?;
            let input = format!("rank={rank} q={q} spanning={spanning}");
            Ok(recs
                .into_iter()
                .map(|r| {
                    let p = &r.predicates;
                    let text = format!(
                        "r={} n={:<2} {}  chordal={} gfq={} round={} peo={}",
                        r.r,
                        r.n,
                        r.points.join(" "),
                        p.chordal,
                        p.gfq_chordal.get("minor").copied().unwrap_or(false),
                        p.round,
                        p.peo_exists
                    );
                    Report {
                        elapsed_ms: None,
                        check: "catalog-enumerate".into(),
                        input: input.clone(),
                        ok: true,
                        result: json!(r),
                        witness: None,
                        text,
                    }
                })
                .collect())
        }
        CatalogCommand::List => Ok(catalog::checks()
            .iter()
            .map(|c| Report {
                elapsed_ms: None,
                check: "catalog-list".into(),
                input: String::new(),
                ok: true,
                result: json!({"id": c.id(), "aliases": c.aliases(), "statement": c.statement()}),
                witness: None,
                text: format!("{:<10} {}", c.id(), c.statement()),
            })
            .collect()),
        CatalogCommand::Verify { check } => {
            let ids: Vec<String> = if check == "all" {
                catalog::checks().iter().map(|c| c.id().to_string()).collect()
            } else {
                vec![check.clone()]
            };
            let mut out = Vec::new();
            for id in ids {
                let rep = with_configured_pool(|| catalog::verify(&id, None))?;
                let line = rep.line();
                let text = format!(
                    "{}: {} on {} members ({} vacuous), {} counterexamples, {} ms\n  universe: {}",
                    rep.check,
                    if rep.ok() { "ok" } else { "FAILED" },
                    rep.total,
                    rep.vacuous,
                    rep.fail,
                    rep.elapsed_ms,
                    rep.universe
                );
                if !rep.ok() {
                    let json_line = serde_json::to_string(&line).expect("serializable report");
                    return Err(Failure::Invariant(format!("{text}\n{json_line}"), Some(json_line)));
                }
                out.push(Report {
                    elapsed_ms: Some(line.elapsed_ms),
                    check: line.check,
                    input: line.input,
                    ok: true,
                    result: line.result,
                    witness: line.witness,
                    text,
                });
            }
            Ok(out)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Gpc {
            file1,
            file2,
            glue,
            mode,
            canonical,
        } => {
            let (m1, m2) = (load(file1)?, load(file2)?);
            let mode = match mode {
                GlueModeArg::Projective => GlueMode::ProjectiveGuts,
                GlueModeArg::Modular => GlueMode::ModularGuts,
            };
            let m = gpc(&m1, &m2, &GluePairing::parse(glue)?, mode)?;
            Ok(vec![matroid_report("gpc", format!("{} {}", shown(file1), shown(file2)), &m, *canonical)?])
        }
        Command::Check { property, method, file } => check(*property, method.as_deref(), file),
        Command::Detect { route, family, file } => detect(*route, family, file),
        Command::Peo { action, file, cert } => peo(*action, file, cert.as_deref()),
        Command::Decompose { mode, file } => decompose(*mode, file),
        Command::Catalog(c) => catalog_cmd(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(reports) => {
            let elapsed_ms = start.elapsed().as_millis();
            let mut out = std::io::stdout().lock();
            for r in &reports {
                let text = if cli.json {
                    let line = ReportLine {
                        check: r.check.clone(),
                        input: r.input.clone(),
                        result: r.result.clone(),
                        witness: r.witness.clone(),
                        elapsed_ms: r.elapsed_ms.unwrap_or(elapsed_ms),
                    };
                    serde_json::to_string(&line).expect("serializable report")
                } else {
                    r.text.clone()
                };
                // a closed pipe (e.g. `| head`) is not an error worth a panic
                if writeln!(out, "{text}").is_err() {
                    break;
                }
            }
            if reports.iter().all(|r| r.ok) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg, json_line)) => {
            if let (true, Some(line)) = (cli.json, json_line) {
                println!("{line}");
            }
            eprintln!("invariant violation: {msg}");
            ExitCode::from(3)
        }
    }
}

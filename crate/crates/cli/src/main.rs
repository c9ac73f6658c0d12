//! Batch command-line front end: every operation of the calculator behind a
//! subcommand with JSON input and a deterministic JSON report on standard
//! output. Exit code 0 means the verdict is true (or the command only
//! computes values), 1 means the verdict is false (a certificate is in the
//! report), 2 means an input error.

use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use parhiggs::arith::{classes_to_weight_system, Rat, SUnClass, WeightSystem};
use parhiggs::families::{
    build_example_62, build_example_69, certify_example_62, certify_example_69, lemma_6_1_check,
    max_subbundle_pardeg, suggest_eps, Example62Params,
};
use parhiggs::higgs::{
    katz_rigidity, main_bound, pardeg_v1_lower_bound, theorem_bound, GradedHiggsModel,
};
use parhiggs::parabolic::{pardeg_bounds_check, SplitParabolicBundle};
use parhiggs::schubert::{
    gw_certificate, gw_invariant, modified_bundle, su_existence, GWQuery, IneqRhs, Partition,
    SchubertSubset,
};

#[derive(Parser)]
#[command(
    name = "parhiggs",
    version,
    about = "Exact certifying calculator for split parabolic Higgs bundles and quantum Schubert calculus"
)]
struct Cli {
    /// Include wall-clock timing in the report (breaks byte determinism).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
#[command(rename_all = "kebab-case")]
enum Cmd {
    /// Parabolic degree, slope and degree bounds of a split bundle.
    Pardeg(PardegArgs),
    /// Distinctness and the two genericity certifications of a weight system.
    Genericity(GenericityArgs),
    /// Subbundle-degree bound table and certified stability of a bundle.
    Stability(StabilityArgs),
    /// Hodge-length-one check of a graded model.
    MinimalEnergy(ModelArgs),
    /// Degree bounds: the uniform chain, the main bound, or a full model.
    Bounds(BoundsArgs),
    /// Construct and certify one of the built-in families.
    Construct(ConstructArgs),
    /// SU(n) Deligne-Simpson existence with violation certificates.
    DsExists(DsArgs),
    /// A Grassmannian Gromov-Witten invariant.
    Gw(GwArgs),
    /// Gromov-Witten certificate of a destabilized two-step model.
    GwCert(ModelArgs),
    /// Katz rigidity check from centralizer dimensions.
    Rigidity(RigidityArgs),
    /// Run a manifest of commands and aggregate the reports.
    Batch(BatchArgs),
}

#[derive(Args)]
struct PardegArgs {
    /// Bundle JSON file ("-" for standard input).
    #[arg(long)]
    bundle: String,
}

#[derive(Args)]
struct GenericityArgs {
    /// Weight system JSON file.
    #[arg(long)]
    weights: Option<String>,
    /// SU(n) class file (classes converted to their weight system).
    #[arg(long)]
    classes: Option<String>,
}

#[derive(Args)]
struct StabilityArgs {
    /// Bundle JSON file.
    #[arg(long)]
    bundle: String,
}

#[derive(Args)]
struct ModelArgs {
    /// Graded model JSON file.
    #[arg(long)]
    model: String,
}

#[derive(Args)]
struct BoundsArgs {
    /// Evaluate the uniform chain for (n, r).
    #[arg(long)]
    theorem: bool,
    /// Evaluate the main bound from explicit ranks.
    #[arg(long)]
    main: bool,
    /// Evaluate the lower bound for par-deg V^1.
    #[arg(long)]
    v1_lower: bool,
    /// Evaluate all bounds of a model file.
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    r: Option<usize>,
    /// Puncture count deg D.
    #[arg(long)]
    d: Option<u64>,
    /// Comma-separated adjoint ranks (V^1.. for --main, V^2.. for --v1-lower).
    #[arg(long)]
    ranks: Option<String>,
    /// Comma-separated cokernel ranks (theta_2..).
    #[arg(long)]
    cokers: Option<String>,
}

#[derive(Args)]
struct ConstructArgs {
    /// Which family: "6.2" or "6.9".
    #[arg(long)]
    example: String,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    a: Option<u64>,
    /// Exact rational, e.g. "1/100".
    #[arg(long)]
    eps: Option<String>,
    /// Comma-separated rationals, strictly increasing, summing to zero.
    #[arg(long)]
    eps_vec: Option<String>,
}

#[derive(Args)]
struct DsArgs {
    /// Expected rank (cross-checked against the class file).
    #[arg(long)]
    n: Option<usize>,
    /// JSON file: {"classes": [["1/3","0","-1/3"], ...]}.
    #[arg(long)]
    classes: String,
    /// Use the literal puncture-count right-hand side.
    #[arg(long)]
    strict: bool,
    /// Also list tuples with invariant greater than one.
    #[arg(long)]
    diagnostics: bool,
}

#[derive(Args)]
struct GwArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Partitions, e.g. "[1],[1],[1],[1]".
    #[arg(long)]
    classes: Option<String>,
    /// Schubert subsets, e.g. "{1},{1},{3}".
    #[arg(long)]
    subsets: Option<String>,
    #[arg(long)]
    degree: u32,
}

#[derive(Args)]
struct RigidityArgs {
    #[arg(long)]
    n: u64,
    /// Comma-separated centralizer dimensions.
    #[arg(long)]
    dims: Option<String>,
    /// Eigenvalue multiplicities per class, e.g. "1,1;1,1;1,1".
    #[arg(long)]
    mults: Option<String>,
}

#[derive(Args)]
struct BatchArgs {
    /// JSON file: {"commands": [["construct", "--example", "6.2", ...], ...]}.
    #[arg(long)]
    manifest: String,
}

#[derive(Debug)]
struct CliError(String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

struct Outcome {
    /// None for value-only commands; Some(false) exits with code 1.
    verdict: Option<bool>,
    result: Value,
    /// Canonical input material for the digest.
    input: Value,
}

#[derive(Serialize)]
struct Report {
    schema: u32,
    command: Vec<String>,
    input_digest: String,
    verdict: Option<bool>,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u128>,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let started = Instant::now();
    match dispatch(&cli.cmd) {
        Ok(outcome) => {
            let report = Report {
                schema: 1,
                command: argv[1..].to_vec(),
                input_digest: digest(&outcome.input),
                verdict: outcome.verdict,
                result: outcome.result,
                wall_ms: cli.timings.then(|| started.elapsed().as_millis()),
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            match report.verdict {
                Some(false) => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            let err = json!({
                "schema": 1,
                "command": argv[1..].to_vec(),
                "error": e.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&err).expect("error serializes"));
            ExitCode::from(2)
        }
    }
}

fn digest(input: &Value) -> String {
    let canonical = serde_json::to_string(input).expect("input serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    format!("sha256:{:x}", hasher.finalize())
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| CliError(format!("{path}: {e}")))
    }
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    Rat::from_str(s).map_err(CliError::from)
}

fn parse_csv_u64(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| CliError(format!("{t:?}: {e}"))))
        .collect()
}

fn parse_csv_rats(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',').map(|t| parse_rat(t.trim())).collect()
}

/// Parse "[1],[2,1],[]" into partitions.
fn parse_partitions(s: &str) -> Result<Vec<Partition>, CliError> {
    parse_groups(s, '[', ']')?
        .into_iter()
        .map(|body| {
            let parts = if body.trim().is_empty() {
                Vec::new()
            } else {
                body.split(',')
                    .map(|t| {
                        t.trim().parse::<u32>().map_err(|e| CliError(format!("{t:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            Partition::new(parts).map_err(CliError::from)
        })
        .collect()
}

/// Parse "{1},{1},{3}" into index subsets.
fn parse_subsets(s: &str, n: usize) -> Result<Vec<SchubertSubset>, CliError> {
    parse_groups(s, '{', '}')?
        .into_iter()
        .map(|body| {
            let elems = body
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|e| CliError(format!("{t:?}: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            SchubertSubset::new(elems, n).map_err(CliError::from)
        })
        .collect()
}

fn parse_groups(s: &str, open: char, close: char) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in s.chars() {
        if c == open {
            if depth > 0 {
                return Err(CliError("nested groups are not allowed".into()));
            }
            depth = 1;
            cur.clear();
        } else if c == close {
            if depth == 0 {
                return Err(CliError(format!("unbalanced {close:?}")));
            }
            depth = 0;
            out.push(cur.clone());
        } else if depth == 1 {
            cur.push(c);
        } else if !c.is_whitespace() && c != ',' {
            return Err(CliError(format!("unexpected character {c:?}")));
        }
    }
    if depth != 0 {
        return Err(CliError(format!("unbalanced {open:?}")));
    }
    if out.is_empty() {
        return Err(CliError("no groups found".into()));
    }
    Ok(out)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn dispatch(cmd: &Cmd) -> Result<Outcome, CliError> {
    match cmd {
        Cmd::Pardeg(args) => run_pardeg(args),
        Cmd::Genericity(args) => run_genericity(args),
        Cmd::Stability(args) => run_stability(args),
        Cmd::MinimalEnergy(args) => run_minimal_energy(args),
        Cmd::Bounds(args) => run_bounds(args),
        Cmd::Construct(args) => run_construct(args),
        Cmd::DsExists(args) => run_ds_exists(args),
        Cmd::Gw(args) => run_gw(args),
        Cmd::GwCert(args) => run_gw_cert(args),
        Cmd::Rigidity(args) => run_rigidity(args),
        Cmd::Batch(args) => run_batch(args),
    }
}

fn run_pardeg(args: &PardegArgs) -> Result<Outcome, CliError> {
    let text = read_input(&args.bundle)?;
    let bundle: SplitParabolicBundle = serde_json::from_str(&text)?;
    let result = json!({
        "rank": bundle.rank(),
        "degree": bundle.degree(),
        "par_deg": to_value(&bundle.par_deg()),
        "par_slope": to_value(&bundle.par_slope()),
        "degree_bounds_hold": pardeg_bounds_check(&bundle),
        "weight_system": to_value(&bundle.weight_system()),
    });
    Ok(Outcome { verdict: None, result, input: to_value(&bundle) })
}

fn run_genericity(args: &GenericityArgs) -> Result<Outcome, CliError> {
    let system: WeightSystem = match (&args.weights, &args.classes) {
        (Some(path), None) => serde_json::from_str(&read_input(path)?)?,
        (None, Some(path)) => {
            let classes = read_classes(path)?;
            classes_to_weight_system(&classes)?
        }
        _ => return Err(CliError("provide exactly one of --weights or --classes".into())),
    };
    let distinct = system.check_distinct();
    let subset_witness = system.integral_submultiset();
    let selection = if distinct { Some(system.check_generic_selection()?) } else { None };
    let verdict = distinct && selection.as_ref().is_some_and(|s| s.generic);
    let result = json!({
        "distinct": distinct,
        "subset_sum_generic": subset_witness.is_none(),
        "subset_witness": to_value(&subset_witness),
        "selection": to_value(&selection),
        "generic": verdict,
    });
    Ok(Outcome { verdict: Some(verdict), result, input: to_value(&system) })
}

fn run_stability(args: &StabilityArgs) -> Result<Outcome, CliError> {
    let bundle: SplitParabolicBundle = serde_json::from_str(&read_input(&args.bundle)?)?;
    let slope = bundle.par_slope();
    let mut rows = Vec::new();
    let mut certified = true;
    for r in 1..bundle.rank() {
        let bound = max_subbundle_pardeg(&bundle, r)?;
        let sub_slope = bound.clone() / Rat::from_int(r as i64);
        let ok = sub_slope < slope;
        certified &= ok;
        rows.push(json!({
            "sub_rank": r,
            "par_deg_bound": to_value(&bound),
            "slope_bound": to_value(&sub_slope),
            "below_total_slope": ok,
        }));
    }
    let result = json!({
        "par_slope": to_value(&slope),
        "subbundle_bounds": rows,
        "certified_stable": certified,
    });
    Ok(Outcome { verdict: Some(certified), result, input: to_value(&bundle) })
}

fn run_minimal_energy(args: &ModelArgs) -> Result<Outcome, CliError> {
    let model: GradedHiggsModel = serde_json::from_str(&read_input(&args.model)?)?;
    let report = model.minimal_energy_check()?;
    let verdict = report.minimal_energy;
    let result = json!({
        "pieces": model.num_pieces(),
        "punctures": model.punctures(),
        "par_deg": to_value(&model.par_deg()),
        "report": to_value(&report),
    });
    Ok(Outcome { verdict: Some(verdict), result, input: to_value(&model) })
}

fn run_bounds(args: &BoundsArgs) -> Result<Outcome, CliError> {
    if args.theorem {
        let n = args.n.ok_or_else(|| CliError("--theorem needs --n".into()))?;
        let r = args.r.ok_or_else(|| CliError("--theorem needs --r".into()))? as u64;
        let report = theorem_bound(n, r)?;
        return Ok(Outcome {
            verdict: Some(report.holds),
            result: to_value(&report),
            input: json!({"theorem": {"n": n, "r": r}}),
        });
    }
    if args.main {
        let r = args.r.ok_or_else(|| CliError("--main needs --r".into()))?;
        let d = args.d.ok_or_else(|| CliError("--main needs --d".into()))?;
        let ranks = parse_csv_u64(
            args.ranks.as_deref().ok_or_else(|| CliError("--main needs --ranks".into()))?,
        )?;
        let cokers = parse_csv_u64(
            args.cokers.as_deref().ok_or_else(|| CliError("--main needs --cokers".into()))?,
        )?;
        let report = main_bound(&ranks, &cokers, r, d)?;
        return Ok(Outcome {
            verdict: Some(report.holds),
            result: to_value(&report),
            input: json!({"main": {"r": r, "d": d, "ranks": ranks, "cokers": cokers}}),
        });
    }
    if args.v1_lower {
        let d = args.d.ok_or_else(|| CliError("--v1-lower needs --d".into()))?;
        let ranks = parse_csv_u64(
            args.ranks.as_deref().ok_or_else(|| CliError("--v1-lower needs --ranks".into()))?,
        )?;
        let out = pardeg_v1_lower_bound(&ranks, d)?;
        return Ok(Outcome {
            verdict: None,
            result: to_value(&out),
            input: json!({"v1_lower": {"d": d, "ranks": ranks}}),
        });
    }
    if let Some(path) = &args.model {
        let model: GradedHiggsModel = serde_json::from_str(&read_input(path)?)?;
        let coker = model.coker_degree_bounds()?;
        let defect = model.rank_defect_bound()?;
        let main = model.main_bound_report()?;
        let verdict =
            coker.iter().all(|b| b.holds) && defect.iter().all(|b| b.holds) && main.holds;
        let result = json!({
            "coker_degree_bounds": to_value(&coker),
            "rank_defect_bounds": to_value(&defect),
            "main_bound": to_value(&main),
        });
        return Ok(Outcome { verdict: Some(verdict), result, input: to_value(&model) });
    }
    Err(CliError("choose one of --theorem, --main, --v1-lower, --model".into()))
}

fn run_construct(args: &ConstructArgs) -> Result<Outcome, CliError> {
    match args.example.as_str() {
        "6.2" => {
            let n = args.n.ok_or_else(|| CliError("example 6.2 needs --n".into()))?;
            let a = args.a.ok_or_else(|| CliError("example 6.2 needs --a".into()))?;
            let eps = match &args.eps {
                Some(s) => parse_rat(s)?,
                None => suggest_eps(n, a)?,
            };
            let params = match &args.eps_vec {
                Some(s) => Example62Params::new(n, a, eps, parse_csv_rats(s)?)?,
                None => Example62Params::with_suggested_eps_vec(n, a, eps)?,
            };
            let (model, system) = build_example_62(&params);
            let lemma = lemma_6_1_check(params.n, params.a, &params.eps)?;
            let me = model.minimal_energy_check()?;
            let d = params.punctures();
            let (cert_value, stable, cert_applicable) = if d >= 3 {
                let cert = certify_example_62(&params)?;
                let ok = cert.certificate.stable && cert.minimal_energy;
                (to_value(&cert), ok, true)
            } else {
                (
                    json!({
                        "skipped": "stability certification needs deg D >= 3; \
                                    a = 0 gives a single puncture"
                    }),
                    true,
                    false,
                )
            };
            let verdict = model.par_deg().is_zero() && me.minimal_energy && lemma && stable;
            let result = json!({
                "params": to_value(&params),
                "punctures": d,
                "lemma_6_1": lemma,
                "par_deg": to_value(&model.par_deg()),
                "minimal_energy": me.minimal_energy,
                "distinct_weights": system.check_distinct(),
                "certificate": cert_value,
                "certificate_applicable": cert_applicable,
                "model": to_value(&model),
                "weight_system": to_value(&system),
            });
            Ok(Outcome { verdict: Some(verdict), result, input: to_value(&params) })
        }
        "6.9" => {
            let eps = parse_rat(
                args.eps.as_deref().ok_or_else(|| CliError("example 6.9 needs --eps".into()))?,
            )?;
            let model = build_example_69(&eps)?;
            let cert = certify_example_69(&eps)?;
            let gw = gw_certificate(&model)?;
            let verdict = cert.certificate.stable && cert.minimal_energy;
            let result = json!({
                "eps": to_value(&eps),
                "certificate": to_value(&cert),
                "gw_certificate": to_value(&gw),
                "model": to_value(&model),
            });
            Ok(Outcome { verdict: Some(verdict), result, input: json!({"eps": to_value(&eps)}) })
        }
        other => Err(CliError(format!("unknown example {other:?}; use 6.2 or 6.9"))),
    }
}

fn read_classes(path: &str) -> Result<Vec<SUnClass>, CliError> {
    #[derive(serde::Deserialize)]
    struct ClassFile {
        #[serde(default)]
        n: Option<usize>,
        classes: Vec<Vec<Rat>>,
    }
    let file: ClassFile = serde_json::from_str(&read_input(path)?)?;
    let classes = file
        .classes
        .into_iter()
        .map(SUnClass::from_log_eigenvalues)
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(n) = file.n {
        if classes.iter().any(|c| c.rank() != n) {
            return Err(CliError(format!("class rank does not match declared n = {n}")));
        }
    }
    Ok(classes)
}

fn run_ds_exists(args: &DsArgs) -> Result<Outcome, CliError> {
    let classes = read_classes(&args.classes)?;
    if let Some(n) = args.n {
        if classes.iter().any(|c| c.rank() != n) {
            return Err(CliError(format!("class rank does not match --n {n}")));
        }
    }
    let mode = if args.strict { IneqRhs::PunctureCount } else { IneqRhs::CurveDegree };
    let verdict = su_existence(&classes, mode, args.diagnostics)?;
    let system = classes_to_weight_system(&classes)?;
    let result = json!({
        "classes": to_value(&classes),
        "weight_system": to_value(&system),
        "mode": to_value(&mode),
        "verdict": to_value(&verdict),
    });
    Ok(Outcome {
        verdict: Some(verdict.exists),
        result,
        input: json!({"classes": to_value(&classes), "strict": args.strict}),
    })
}

fn run_gw(args: &GwArgs) -> Result<Outcome, CliError> {
    let classes = match (&args.classes, &args.subsets) {
        (Some(c), None) => parse_partitions(c)?,
        (None, Some(s)) => parse_subsets(s, args.n)?
            .iter()
            .map(|sub| parhiggs::schubert::subset_to_partition(sub, args.k, args.n))
            .collect::<Result<Vec<_>, _>>()?,
        _ => return Err(CliError("provide exactly one of --classes or --subsets".into())),
    };
    let query = GWQuery::new(args.k, args.n, classes, args.degree)?;
    let out = gw_invariant(&query)?;
    let result = json!({
        "query": to_value(&query),
        "value": out.value,
        "dimension_ok": out.dimension_ok,
    });
    Ok(Outcome { verdict: None, result, input: to_value(&query) })
}

fn run_gw_cert(args: &ModelArgs) -> Result<Outcome, CliError> {
    let model: GradedHiggsModel = serde_json::from_str(&read_input(&args.model)?)?;
    let cert = gw_certificate(&model)?;
    // The modified pieces, for the report.
    let modified: Vec<Value> = model
        .pieces()
        .iter()
        .map(|piece| match modified_bundle(piece) {
            Ok(m) => to_value(&m),
            Err(e) => json!({"error": e.to_string()}),
        })
        .collect();
    let result = json!({
        "certificate": to_value(&cert),
        "modified_pieces": modified,
    });
    Ok(Outcome { verdict: None, result, input: to_value(&model) })
}

fn run_rigidity(args: &RigidityArgs) -> Result<Outcome, CliError> {
    let dims: Vec<u64> = match (&args.dims, &args.mults) {
        (Some(d), None) => parse_csv_u64(d)?,
        (None, Some(m)) => m
            .split(';')
            .map(|group| Ok(parhiggs::higgs::centralizer_dim(&parse_csv_u64(group)?)))
            .collect::<Result<Vec<_>, CliError>>()?,
        _ => return Err(CliError("provide exactly one of --dims or --mults".into())),
    };
    let rigid = katz_rigidity(args.n, &dims)?;
    let result = json!({
        "n": args.n,
        "centralizer_dims": dims,
        "rigid": rigid,
    });
    Ok(Outcome { verdict: Some(rigid), result, input: json!({"n": args.n, "dims": dims}) })
}

fn run_batch(args: &BatchArgs) -> Result<Outcome, CliError> {
    #[derive(serde::Deserialize)]
    struct Manifest {
        commands: Vec<Vec<String>>,
    }
    let manifest: Manifest = serde_json::from_str(&read_input(&args.manifest)?)?;
    let mut results = Vec::new();
    let mut any_error = false;
    for argv in &manifest.commands {
        let mut full = vec!["parhiggs".to_string()];
        full.extend(argv.iter().cloned());
        let entry = match Cli::try_parse_from(&full) {
            Ok(cli) => match dispatch(&cli.cmd) {
                Ok(outcome) => json!({
                    "command": argv,
                    "input_digest": digest(&outcome.input),
                    "verdict": outcome.verdict,
                    "result": outcome.result,
                }),
                Err(e) => {
                    any_error = true;
                    json!({"command": argv, "error": e.to_string()})
                }
            },
            Err(e) => {
                any_error = true;
                json!({"command": argv, "error": e.to_string()})
            }
        };
        results.push(entry);
    }
    if any_error {
        // Everything is still reported, but the batch itself counts as an
        // input error.
        let report = json!({"schema": 1, "results": results, "all_ok": false});
        return Err(CliError(
            serde_json::to_string_pretty(&report).expect("batch report serializes"),
        ));
    }
    let result = json!({"results": results, "all_ok": true});
    Ok(Outcome { verdict: None, result, input: to_value(&manifest.commands) })
}

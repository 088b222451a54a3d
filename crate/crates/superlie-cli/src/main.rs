use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superlie::affinize::{affinized_roots, verify_affinized, AffinizedAlgebra, CocycleTorus};
use superlie::document::{builtin, Document};
use superlie::liesuper::{format_weight, structural_root_checks, verify_eals, verify_form, verify_superalgebra, weight_decomposition, LieSuperalgebra};
use superlie::matrixsuper::{sl_superalgebra, twisted_affinize, twisted_roots, twisted_type, verify_twisted, Star, SuperIndexSet, TwistMap};
use superlie::osp12::decompose;
use superlie::{Error, Field, Report, Scalar};

#[derive(Parser)]
#[command(name = "superlie", version, about = "Exact checks for Lie superalgebras, osp(1,2) modules and their affinizations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Coefficient field the input is declared over.
    #[arg(long, global = true, value_enum)]
    field: Option<FieldArg>,
    /// Window radius on torus degrees.
    #[arg(long, global = true)]
    window: Option<i64>,
    /// Random samples for the sampled identity checks; 0 skips them.
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Qi")]
    Qi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Superalgebra axioms, form, weight decomposition, extended affine axioms and root facts.
    Verify { path: String },
    /// Splits an osp(1,2)-module into irreducibles.
    Decompose { path: String },
    /// Root list of an algebra and the root supersystem axioms.
    Roots { path: String },
    /// Loop algebra over a cocycle torus with the degree derivations.
    Affinize {
        #[arg(long, default_value = "osp12")]
        base: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// One scalar for every q_ij, or rows such as "1,-1;-1,1".
        #[arg(long, default_value = "1")]
        q: String,
    },
    /// The order-four twisted construction on sl(I,J).
    Twist {
        /// Size of the dotted part of I.
        #[arg(long = "I")]
        i: usize,
        /// Size of the dotted part of J.
        #[arg(long = "J")]
        j: usize,
        /// Add the index 0 to I.
        #[arg(long)]
        with_zero: bool,
        /// Add the index 0' to J.
        #[arg(long)]
        with_zero_prime: bool,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        #[arg(long, default_value = "1")]
        q: String,
        /// Torus generators the involution on the torus negates.
        #[arg(long, value_delimiter = ',')]
        flip: Vec<usize>,
        /// Window on the twist degree i in x (x) t^i.
        #[arg(long, default_value_t = 2)]
        degrees: i64,
    },
}

/// Exit 2: the input could not be used.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    passed: bool,
    text: String,
    json: Value,
}

fn load(path: &str) -> Result<Document, InputError> {
    if let Some(name) = path.strip_prefix("builtin:") {
        return Ok(builtin(name)?);
    }
    let s = std::fs::read_to_string(Path::new(path)).map_err(|e| InputError(format!("{path}: {e}")))?;
    Ok(Document::parse(&s)?)
}

fn load_algebra(path: &str, field: Option<FieldArg>) -> Result<LieSuperalgebra, InputError> {
    match load(path)? {
        Document::Algebra(mut d) => {
            if let Some(f) = field {
                d.field = match f {
                    FieldArg::Q => Field::Q,
                    FieldArg::Qi => Field::Qi,
                };
            }
            Ok(d.to_algebra()?)
        }
        Document::Module(_) => Err(InputError(format!("{path} describes a module, not an algebra"))),
    }
}

fn parse_q(s: &str, rank: usize) -> Result<CocycleTorus, InputError> {
    let scalar = |t: &str| t.parse::<Scalar>().map_err(InputError::from);
    if !s.contains([',', ';']) {
        return Ok(CocycleTorus::constant(rank, scalar(s)?)?);
    }
    let rows: Vec<Vec<Scalar>> = s.split(';').map(|r| r.split(',').map(scalar).collect()).collect::<Result<_, _>>()?;
    if rows.len() != rank {
        return Err(InputError(format!("q has {} rows for rank {rank}", rows.len())));
    }
    Ok(CocycleTorus::bimultiplicative(rows)?)
}

fn report_json(r: &Report) -> Value {
    serde_json::to_value(r.clone().sorted()).expect("reports serialize")
}

fn skip_rest(r: &mut Report, names: &[&str], why: &str) {
    for n in names {
        r.skip(*n, why);
    }
}

fn cmd_verify(path: &str, c: &Common) -> Result<Outcome, InputError> {
    let l = load_algebra(path, c.field)?;
    let mut r = Report::new();
    r.extend(verify_superalgebra(&l));
    let stages = ["form", "eals", "roots", "ears"];
    if !r.passed() {
        skip_rest(&mut r, &stages, "superalgebra axioms fail");
    } else if l.gram().is_none() {
        skip_rest(&mut r, &stages, "no invariant form given");
    } else {
        r.extend(verify_form(&l)?);
        if l.cartan().is_none() {
            skip_rest(&mut r, &stages[1..], "no Cartan given");
        } else if !r.passed() {
            skip_rest(&mut r, &stages[1..], "form axioms fail");
        } else {
            let datum = weight_decomposition(&l)?;
            r.extend(verify_eals(&l));
            r.extend(structural_root_checks(&l, &datum));
            r.extend(datum.to_supersystem()?.check_axioms());
        }
    }
    let text = format!("{}\n{}", path, r);
    Ok(Outcome { passed: r.passed(), text, json: json!({ "input": path, "report": report_json(&r) }) })
}

fn dense(v: &superlie::SparseVector, n: usize) -> String {
    let xs: Vec<String> = v.to_dense(n).iter().map(ToString::to_string).collect();
    format!("[{}]", xs.join(", "))
}

fn cmd_decompose(path: &str) -> Result<Outcome, InputError> {
    let m = match load(path)? {
        Document::Module(d) => d.to_module()?,
        Document::Algebra(_) => return Err(InputError(format!("{path} describes an algebra, not a module"))),
    };
    let rep = m.check_representation();
    if !rep.passed() {
        let text = format!("not an osp(1,2)-module\n{rep}");
        return Ok(Outcome { passed: false, text, json: json!({ "input": path, "report": report_json(&rep) }) });
    }
    let d = decompose(&m)?;
    let lams = d.lambdas();
    let mut text = format!("λ: {lams:?}\n");
    for s in &d.summands {
        let _ = writeln!(text, "V({}) top parity {}:", s.lambda, s.top_parity);
        for b in &s.basis {
            let _ = writeln!(text, "  {}", dense(b, m.dim()));
        }
    }
    let _ = write!(text, "{}", d.certificate);
    let summands: Vec<Value> = d
        .summands
        .iter()
        .map(|s| json!({ "lambda": s.lambda, "top_parity": s.top_parity, "basis": s.basis.iter().map(|b| b.to_dense(m.dim())).collect::<Vec<_>>() }))
        .collect();
    let json = json!({ "input": path, "lambdas": lams, "summands": summands, "report": report_json(&d.certificate) });
    Ok(Outcome { passed: d.certificate.passed(), text, json })
}

fn cmd_roots(path: &str, c: &Common) -> Result<Outcome, InputError> {
    let l = load_algebra(path, c.field)?;
    let datum = weight_decomposition(&l)?;
    let sys = datum.to_supersystem()?;
    let r = sys.check_axioms();
    let mut text = String::new();
    let mut rows = Vec::new();
    for root in &datum.roots {
        let kind = if datum.is_real(&root.weight) {
            "real"
        } else if datum.is_radical(&root.weight) {
            "radical"
        } else {
            "nonsingular"
        };
        let parts = match (root.even, root.odd) {
            (true, true) => "even+odd",
            (true, false) => "even",
            _ => "odd",
        };
        let w = format_weight(&root.weight);
        let _ = writeln!(text, "{w}  {parts}  dim {}  {kind}", root.space.len());
        rows.push(json!({ "weight": w, "even": root.even, "odd": root.odd, "dim": root.space.len(), "kind": kind }));
    }
    let _ = write!(text, "{r}");
    Ok(Outcome { passed: r.passed(), text, json: json!({ "input": path, "roots": rows, "report": report_json(&r) }) })
}

fn cmd_affinize(base: &str, rank: usize, q: &str, c: &Common) -> Result<Outcome, InputError> {
    let name = if base.contains(':') || base.ends_with(".json") { base.to_string() } else { format!("builtin:{base}") };
    let l = load_algebra(&name, c.field)?;
    let torus = parse_q(q, rank)?;
    let a = AffinizedAlgebra::new(l, torus)?;
    let window = c.window.unwrap_or(2);
    let r = verify_affinized(&a, window, c.samples.unwrap_or(200), c.seed)?;
    let (roots, _) = affinized_roots(&a, window)?;
    let labels: Vec<String> = roots.iter().map(|x| x.label()).collect();
    let text = format!("{r}roots ({}):\n  {}\n", labels.len(), labels.join("\n  "));
    Ok(Outcome { passed: r.passed(), text, json: json!({ "base": base, "roots": labels, "report": report_json(&r) }) })
}

#[allow(clippy::too_many_arguments)]
fn cmd_twist(i: usize, j: usize, zero: bool, zero_prime: bool, rank: usize, q: &str, flip: &[usize], degrees: i64, c: &Common) -> Result<Outcome, InputError> {
    if matches!(c.field, Some(FieldArg::Q)) {
        return Err(InputError("the twisted construction needs the field Qi".into()));
    }
    let idx = SuperIndexSet::new(i, j, zero, zero_prime)?;
    let ty = twisted_type(&idx);
    let mut flips = vec![false; rank];
    for &k in flip {
        *flips.get_mut(k).ok_or_else(|| InputError(format!("flip {k} outside rank {rank}")))? = true;
    }
    let sl = sl_superalgebra(&idx).map_err(|e| InputError(format!("type: {ty}\n{e}")))?;
    let map = TwistMap::sharp(&sl, Star { flips });
    let t = twisted_affinize(sl, parse_q(q, rank)?, map)?;
    let window = c.window.unwrap_or(1);
    let r = verify_twisted(&t, window, degrees, c.samples.unwrap_or(100), c.seed)?;
    let (roots, _) = twisted_roots(&t, window, degrees)?;
    let labels: Vec<String> = roots.iter().map(|x| x.label()).collect();
    let text = format!("type: {ty}\n{r}roots ({}):\n  {}\n", labels.len(), labels.join("\n  "));
    Ok(Outcome { passed: r.passed(), text, json: json!({ "type": ty, "roots": labels, "report": report_json(&r) }) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    let start = Instant::now();
    let out = match &cli.cmd {
        Cmd::Verify { path } => cmd_verify(path, c),
        Cmd::Decompose { path } => cmd_decompose(path),
        Cmd::Roots { path } => cmd_roots(path, c),
        Cmd::Affinize { base, rank, q } => cmd_affinize(base, *rank, q, c),
        Cmd::Twist { i, j, with_zero, with_zero_prime, rank, q, flip, degrees } => {
            cmd_twist(*i, *j, *with_zero, *with_zero_prime, *rank, q, flip, *degrees, c)
        }
    };
    match out {
        Ok(o) => {
            // a closed pipe is not an error worth reporting
            let mut out = std::io::stdout().lock();
            let _ = match c.format {
                Format::Text => write!(out, "{}elapsed: {} ms\n", o.text, start.elapsed().as_millis()),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json output")),
            };
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

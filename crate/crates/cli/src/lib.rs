//! Command dispatch for the `pathalg` binary. [`run`] is the whole program
//! minus process plumbing, so it can be driven from tests.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use pathalg::error::ErrorKind;
use pathalg::par::par_map;
use pathalg::quiver::{parse_quiver_text, to_text, Quiver, Relation};
use pathalg::rep::{
    injective_envelope, is_injective_rep, min_injective_resolution, morphism_to_json, projective_precover,
    rep_from_json, rep_to_json, vertex_kernels, Representation,
};
use pathalg::symres::{self, ExtNat, RingProfile, Tri};
use pathalg::tensorbox::{flatten, tensor_gorenstein, tensor_product};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Paths,
    Partition,
    Envelope,
    Precover,
    ResolveRep,
    ResolveAlgebra,
    Gorenstein,
    QuasiGorenstein,
    Domdim,
    GncLocate,
    Tensor,
    Flatten,
}

impl Command {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_owned()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "pathalg", version, about = "Exact computations for quiver representations and path algebras")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// Quiver text file; `tensor` and `flatten` take two.
    #[arg(long = "quiver", value_name = "FILE")]
    pub quivers: Vec<PathBuf>,
    /// Representation JSON file.
    #[arg(long, value_name = "FILE")]
    pub rep: Option<PathBuf>,
    /// Ring profile JSON file, or one of `field`, `dual-numbers`, `open-ended`.
    #[arg(long, value_name = "FILE")]
    pub profile: Option<String>,
    /// Field for representations that do not name one: `q` or `f:<p>`.
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long)]
    pub vertex: Option<String>,
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long = "max-degree")]
    pub max_degree: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long = "r-gorenstein", value_name = "BOOL")]
    pub r_gorenstein: Option<bool>,
    /// `N`, `infinite` or `unknown`.
    #[arg(long = "dom-dim-r", value_name = "N")]
    pub dom_dim_r: Option<String>,
    /// File with one command line per line, run concurrently.
    #[arg(long, value_name = "FILE")]
    pub batch: Option<PathBuf>,
}

/// What the process should do: print `stdout`, print `stderr`, exit `code`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone)]
struct Failure {
    code: i32,
    message: String,
}

impl From<pathalg::Error> for Failure {
    fn from(e: pathalg::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Input => 2,
            ErrorKind::Precondition => 3,
            ErrorKind::Internal => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CliResult<T> = Result<T, Failure>;

struct Report {
    command: String,
    inputs: String,
    result: Value,
    warnings: Vec<String>,
}

impl Report {
    fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "warnings": self.warnings,
        })
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "inputs: {}", self.inputs);
        match &self.result {
            Value::Object(_) | Value::Array(_) => {
                let _ = writeln!(out, "result:");
                let pretty = serde_json::to_string_pretty(&self.result).unwrap_or_default();
                for line in pretty.lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
            v => {
                let _ = writeln!(out, "result: {v}");
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }
}

/// Collects a canonical rendering of every parsed input for the digest.
struct Ctx<'a> {
    args: &'a Args,
    base: Option<&'a Path>,
    seen: Vec<(String, String)>,
    warnings: Vec<String>,
}

impl<'a> Ctx<'a> {
    fn resolve(&self, p: &Path) -> PathBuf {
        match self.base {
            Some(b) if p.is_relative() => b.join(p),
            _ => p.to_path_buf(),
        }
    }

    fn read(&self, p: &Path) -> CliResult<(String, String)> {
        let full = self.resolve(p);
        let text = fs::read_to_string(&full).map_err(|e| input_error(format!("{}: {e}", full.display())))?;
        Ok((full.display().to_string(), text))
    }

    fn note(&mut self, key: &str, value: impl Into<String>) {
        self.seen.push((key.to_owned(), value.into()));
    }

    fn quiver_at(&mut self, i: usize) -> CliResult<(Arc<Quiver>, Vec<Relation>)> {
        let p = self
            .args
            .quivers
            .get(i)
            .ok_or_else(|| input_error(if i == 0 { "--quiver is required" } else { "a second --quiver is required" }))?
            .clone();
        let (origin, text) = self.read(&p)?;
        let (q, rels) = parse_quiver_text(&text, &origin)?;
        self.note("quiver", to_text(&q, &rels));
        Ok((Arc::new(q), rels))
    }

    fn quiver(&mut self) -> CliResult<Arc<Quiver>> {
        Ok(self.quiver_at(0)?.0)
    }

    fn rep(&mut self, known: Option<&Arc<Quiver>>) -> CliResult<Representation> {
        let p = self.args.rep.clone().ok_or_else(|| input_error("--rep is required"))?;
        let (origin, text) = self.read(&p)?;
        let mut v: Value = serde_json::from_str(&text).map_err(|e| {
            input_error(format!("{origin}:{}:{}: {e}", e.line(), e.column()))
        })?;
        if let (Some(f), Some(obj)) = (&self.args.field, v.as_object_mut()) {
            let wanted = pathalg::Field::parse(f)?;
            match obj.get("field").and_then(Value::as_str) {
                None => {
                    obj.insert("field".into(), json!(wanted.to_string()));
                }
                Some(have) if pathalg::Field::parse(have)? != wanted => {
                    return Err(input_error(format!("{origin}: representation is over {have}, --field says {wanted}")));
                }
                Some(_) => {}
            }
        }
        let m = rep_from_json(&v, known).map_err(|e| {
            let f = Failure::from(e);
            Failure {
                message: format!("{origin}: {}", f.message),
                ..f
            }
        })?;
        self.note("rep", rep_to_json(&m).to_string());
        Ok(m)
    }

    fn profile(&mut self, default: Option<RingProfile>) -> CliResult<RingProfile> {
        let p = match (&self.args.profile, default) {
            (None, Some(d)) => d,
            (None, None) => return Err(input_error("--profile is required")),
            (Some(spec), _) => {
                let path = self.resolve(Path::new(spec));
                if path.exists() {
                    let (origin, text) = self.read(Path::new(spec))?;
                    RingProfile::from_json_str(&text).map_err(|e| input_error(format!("{origin}: {e}")))?
                } else {
                    match spec.as_str() {
                        "field" => RingProfile::field(),
                        "dual-numbers" => RingProfile::dual_numbers(),
                        "open-ended" => RingProfile::open_ended(),
                        _ => return Err(input_error(format!("{spec}: no such profile file"))),
                    }
                }
            }
        };
        self.note("profile", serde_json::to_string(&p).expect("profiles serialize"));
        Ok(p)
    }

    fn vertex(&mut self, q: &Quiver, flag: Option<&String>, name: &str) -> CliResult<Option<usize>> {
        match flag {
            None => Ok(None),
            Some(id) => {
                self.note(name, id.clone());
                Ok(Some(q.vertex(id)?))
            }
        }
    }

    fn required_vertex(&mut self, q: &Quiver) -> CliResult<usize> {
        let flag = self.args.vertex.clone();
        self.vertex(q, flag.as_ref(), "vertex")?
            .ok_or_else(|| input_error("--vertex is required"))
    }

    fn number(&mut self, name: &str, v: Option<usize>, default: Option<usize>) -> CliResult<usize> {
        let n = v.or(default).ok_or_else(|| input_error(format!("--{name} is required")))?;
        self.note(name, n.to_string());
        Ok(n)
    }

    fn digest(&self, command: &str) -> String {
        let mut h = Sha256::new();
        let canon = json!({"command": command, "inputs": self.seen});
        h.update(canon.to_string().as_bytes());
        hex::encode(h.finalize())
    }
}

fn ids(q: &Quiver, vs: &[usize]) -> Value {
    json!(vs.iter().map(|&v| q.vertex_id(v)).collect::<Vec<_>>())
}

fn ext_json(e: ExtNat) -> Value {
    match e {
        ExtNat::Nat(n) => json!(n),
        other => json!(other.to_string()),
    }
}

fn dims_json(m: &Representation) -> Value {
    let q = m.quiver();
    let map: Map<String, Value> = (0..q.vertex_count())
        .map(|v| (q.vertex_id(v).to_owned(), json!(m.dim(v))))
        .collect();
    Value::Object(map)
}

fn execute(cmd: Command, ctx: &mut Ctx) -> CliResult<Value> {
    let args = ctx.args;
    let result = match cmd {
        Command::Validate => {
            let (q, rels) = ctx.quiver_at(0)?;
            let d = q.validate();
            json!({
                "name": q.name(),
                "vertices": q.vertex_count(),
                "arrows": q.arrow_count(),
                "relations": rels.len(),
                "acyclic": d.acyclic,
                "connected": d.connected,
                "sinks": ids(&q, &d.sinks),
                "sources": ids(&q, &d.sources),
                "linear": q.is_linear(),
            })
        }
        Command::Paths => {
            let q = ctx.quiver()?;
            let v = ctx.vertex(&q, args.vertex.as_ref(), "vertex")?;
            let w = ctx.vertex(&q, args.target.as_ref(), "target")?;
            match (v, w) {
                (Some(v), Some(w)) => {
                    let paths = q.enumerate_paths(v, w)?;
                    json!({
                        "source": q.vertex_id(v),
                        "target": q.vertex_id(w),
                        "count": paths.len(),
                        "paths": paths.iter().map(|p| p.label(&q)).collect::<Vec<_>>(),
                    })
                }
                (Some(v), None) => {
                    let paths = q.paths_from(v)?;
                    json!({
                        "source": q.vertex_id(v),
                        "count": paths.len(),
                        "paths": paths.iter().map(|p| json!({"target": q.vertex_id(p.target), "path": p.label(&q)})).collect::<Vec<_>>(),
                    })
                }
                (None, Some(_)) => return Err(input_error("--target needs --vertex")),
                (None, None) => json!({
                    "vertices": q.vertices(),
                    "counts": q.path_count_matrix()?,
                    "longest_path_length": q.longest_path_length()?,
                }),
            }
        }
        Command::Partition => {
            let q = ctx.quiver()?;
            let p = q.vertex_partition()?;
            json!({"levels": p.levels.iter().map(|l| ids(&q, l)).collect::<Vec<_>>()})
        }
        Command::Envelope => {
            let known = optional_quiver(ctx)?;
            let m = ctx.rep(known.as_ref())?;
            let (e, psi) = injective_envelope(&m)?;
            let kd = vertex_kernels(&m)?;
            json!({
                "envelope": rep_to_json(&e),
                "embedding": morphism_to_json(&psi)["comps"],
                "socle_dims": kd.kernel_dims(),
                "input_is_injective": is_injective_rep(&m)?,
            })
        }
        Command::Precover => {
            let known = optional_quiver(ctx)?;
            let m = ctx.rep(known.as_ref())?;
            let (p, eps) = projective_precover(&m)?;
            json!({
                "precover": rep_to_json(&p),
                "epimorphism": morphism_to_json(&eps)["comps"],
                "top_dims": vertex_kernels(&m)?.cokernel_dims(),
            })
        }
        Command::ResolveRep => {
            let known = optional_quiver(ctx)?;
            let m = ctx.rep(known.as_ref())?;
            let max = ctx.number("max-degree", args.max_degree, Some(3))?;
            let r = min_injective_resolution(&m, max)?;
            json!({
                "length": r.length(),
                "terms": r.terms.iter().enumerate().map(|(i, t)| json!({
                    "degree": i,
                    "dims": dims_json(t),
                    "term": rep_to_json(t),
                    "map": morphism_to_json(&r.maps[i])["comps"],
                })).collect::<Vec<_>>(),
            })
        }
        Command::ResolveAlgebra => {
            let q = ctx.quiver()?;
            let profile = ctx.profile(Some(RingProfile::field()))?;
            let max = ctx.number("max-degree", args.max_degree, Some(3))?;
            let vertex = ctx.vertex(&q, args.vertex.as_ref(), "vertex")?;
            let terms = match vertex {
                Some(v) => (0..=max)
                    .map(|i| symres::j_term(&q, v, i, &profile))
                    .collect::<pathalg::Result<Vec<_>>>()?,
                None => symres::algebra_resolution(&q, &profile, max)?,
            };
            ctx.warnings.push("fd values are upper bounds unless marked exact".into());
            json!({
                "profile": profile.name,
                "vertex": vertex.map(|v| q.vertex_id(v)),
                "terms": terms.iter().enumerate().map(|(i, t)| {
                    let b = symres::fd_bound(&q, t, &profile);
                    json!({
                        "degree": i,
                        "summands": t.to_json(&q),
                        "fd_bound": {"value": ext_json(b.value), "exact": b.exact},
                    })
                }).collect::<Vec<_>>(),
            })
        }
        Command::Gorenstein => {
            let q = ctx.quiver()?;
            let k = ctx.number("k", args.k, Some(1))?;
            match args.r_gorenstein {
                Some(flag) => {
                    ctx.note("r-gorenstein", flag.to_string());
                    json!(symres::is_k_gorenstein(&q, flag, k)?)
                }
                None => {
                    let p = ctx.profile(None).map_err(|_| input_error("gorenstein needs --r-gorenstein or --profile"))?;
                    symres::is_k_gorenstein_profile(&q, &p, k)?.to_json()
                }
            }
        }
        Command::QuasiGorenstein => {
            let q = ctx.quiver()?;
            let p = ctx.profile(None)?;
            let k = ctx.number("k", args.k, Some(1))?;
            let t = symres::is_quasi_k_gorenstein_sufficient(&q, &p, k)?;
            if t != Tri::True {
                ctx.warnings.push("sufficient condition only: a negative answer is not a disproof".into());
            }
            t.to_json()
        }
        Command::Domdim => {
            let q = ctx.quiver()?;
            let r = match &args.dom_dim_r {
                Some(s) => {
                    ctx.note("dom-dim-r", s.clone());
                    s.parse::<ExtNat>().map_err(input_error)?
                }
                None => ctx
                    .profile(None)
                    .map_err(|_| input_error("domdim needs --dom-dim-r or --profile"))?
                    .dom_dim,
            };
            let d = symres::dominant_dimension(&q, r)?;
            if d.single_vertex {
                ctx.warnings.push("beyond-paper: n=1 dominant dimension".into());
            }
            ext_json(d.value)
        }
        Command::GncLocate => {
            let q = ctx.quiver()?;
            let v = ctx.required_vertex(&q)?;
            let i = ctx.number("degree", args.degree, None)?;
            let (w, j) = symres::gnc_summand_locator(&q, v, i)?;
            json!({"vertex": q.vertex_id(w), "degree": j})
        }
        Command::Tensor => {
            let (q1, r1) = ctx.quiver_at(0)?;
            let (q2, r2) = ctx.quiver_at(1)?;
            let t = tensor_product(&q1, &r1, &q2, &r2)?;
            let k = ctx.number("k", args.k, Some(1))?;
            let gorenstein = match tensor_gorenstein(&q1, &q2, k) {
                Ok(b) => json!(b),
                Err(e) => {
                    ctx.warnings.push(format!("gorenstein decision skipped: {e}"));
                    Value::Null
                }
            };
            json!({
                "vertices": t.product.vertex_count(),
                "arrows": t.product.arrow_count(),
                "relations": t.relations.len(),
                "gorenstein": gorenstein,
                "quiver": t.to_text(),
            })
        }
        Command::Flatten => {
            let (q1, r1) = ctx.quiver_at(0)?;
            let (q2, r2) = ctx.quiver_at(1)?;
            let t = tensor_product(&q1, &r1, &q2, &r2)?;
            let m = ctx.rep(Some(&t.product))?;
            let f = flatten(&t, &m)?;
            json!({
                "fibers": f.fibers.iter().map(rep_to_json).collect::<Vec<_>>(),
                "maps": q1.arrows().iter().zip(&f.maps).map(|(a, g)| json!({
                    "arrow": a.id,
                    "comps": morphism_to_json(g)["comps"],
                })).collect::<Vec<_>>(),
            })
        }
    };
    Ok(result)
}

fn optional_quiver(ctx: &mut Ctx) -> CliResult<Option<Arc<Quiver>>> {
    if ctx.args.quivers.is_empty() {
        Ok(None)
    } else {
        Ok(Some(ctx.quiver()?))
    }
}

fn run_one(args: &Args, base: Option<&Path>) -> CliResult<Report> {
    let cmd = args.command.ok_or_else(|| input_error("no command given"))?;
    let mut ctx = Ctx {
        args,
        base,
        seen: Vec::new(),
        warnings: Vec::new(),
    };
    let result = execute(cmd, &mut ctx)?;
    let name = cmd.name();
    Ok(Report {
        inputs: ctx.digest(&name),
        command: name,
        result,
        warnings: ctx.warnings,
    })
}

fn parse_args<I, T>(argv: I) -> Result<Args, Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Args::try_parse_from(argv).map_err(|e| {
        let code = if e.use_stderr() { 2 } else { 0 };
        let text = e.render().to_string();
        if code == 0 {
            Outcome { code, stdout: text, stderr: String::new() }
        } else {
            Outcome { code, stdout: String::new(), stderr: text }
        }
    })
}

fn run_batch(path: &Path) -> CliResult<Vec<Report>> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let base = path.parent().map(Path::to_path_buf);
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let argv = std::iter::once("pathalg").chain(line.split_whitespace());
        let parsed = parse_args(argv).map_err(|o| Failure {
            code: 2,
            message: format!("{}:{}: {}", path.display(), i + 1, o.stderr.trim()),
        })?;
        if parsed.batch.is_some() {
            return Err(input_error(format!("{}:{}: batches do not nest", path.display(), i + 1)));
        }
        lines.push((i + 1, parsed));
    }
    let results = par_map(&lines, |(_, a)| run_one(a, base.as_deref()));
    let mut reports = Vec::with_capacity(results.len());
    for ((line, _), r) in lines.iter().zip(results) {
        reports.push(r.map_err(|f| Failure {
            code: f.code,
            message: format!("{}:{line}: {}", path.display(), f.message),
        })?);
    }
    Ok(reports)
}

fn failure(f: Failure) -> Outcome {
    Outcome {
        code: f.code,
        stdout: String::new(),
        stderr: format!("error: {}\n", f.message),
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match parse_args(argv) {
        Ok(a) => a,
        Err(o) => return o,
    };
    if let Some(batch) = &args.batch {
        if args.command.is_some() {
            return failure(input_error("--batch takes no command"));
        }
        return match run_batch(batch) {
            Err(f) => failure(f),
            Ok(reports) => {
                let stdout = match args.format {
                    Format::Json => {
                        let arr = Value::Array(reports.iter().map(Report::to_json).collect());
                        format!("{}\n", serde_json::to_string_pretty(&arr).expect("reports serialize"))
                    }
                    Format::Text => reports.iter().map(Report::to_text).collect::<Vec<_>>().join("\n"),
                };
                Outcome {
                    code: 0,
                    stdout,
                    stderr: String::new(),
                }
            }
        };
    }
    match run_one(&args, None) {
        Err(f) => failure(f),
        Ok(report) => {
            let stdout = match args.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.to_json()).expect("reports serialize")
                ),
                Format::Text => report.to_text(),
            };
            Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
    }
}

//! `momentkit` command-line front end. [`run`] parses arguments, dispatches
//! to the core library and returns a [`Report`] with its exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use momentkit_core::algebra::{format_rational, rat};
use momentkit_core::gkm::{
    betti_numbers, free_module_check, generic_direction, gkm_check, gkm_dimension,
};
use momentkit_core::io::{class_from_json, moment_graph_from_json, polytope_from_json};
use momentkit_core::localization::{
    abbv_pushforward, volume_localization, volume_localization_auto,
};
use momentkit_core::polar::{choose_polarizing_vector, signed_lattice_count, PolarDecomposition};
use momentkit_core::{
    BuilderSpec, Error, EvaluationPoint, FixedPointData, GkmClass, LatticeBox, MomentGraph,
    PolarizingVector, Polytope, RationalVec,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "momentkit",
    version,
    about = "Exact computations on Delzant polytopes and GKM graphs"
)]
struct Cli {
    /// Emit the stable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Polytope JSON file, moment graph JSON file, or builder spec such as `simplex:2:1`.
    input: String,
}

#[derive(Args, Debug)]
struct Direction {
    /// Direction as comma-separated rationals, e.g. `3,5/2`.
    #[arg(long)]
    xi: Option<String>,
    /// Seed used when a direction has to be chosen.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simple, rational and smooth verdicts.
    Validate(Input),
    /// Polarized tangent cones with signs.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        dir: Direction,
    },
    /// Lattice points via the signed cone sum.
    Count {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        dir: Direction,
        /// `auto` or `lo..hi,lo..hi,...`.
        #[arg(long = "box", default_value = "auto", allow_hyphen_values = true)]
        bx: String,
    },
    /// Volume via fixed-point localization.
    Volume {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        dir: Direction,
    },
    /// Betti numbers from a generic direction.
    Betti {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        dir: Direction,
    },
    /// Checks the edge divisibility conditions for a class.
    GkmCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        class: PathBuf,
    },
    /// Dimension of the degree-k part of the GKM ring.
    GkmDim {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: u32,
    },
    /// Push-forward of a class to a point.
    Integrate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        class: PathBuf,
        #[command(flatten)]
        dir: Direction,
    },
    /// Lists the built-in polytopes.
    Catalog,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    UsageError,
    DomainError,
    OracleMismatch,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::UsageError => 2,
            Status::DomainError => 3,
            Status::OracleMismatch => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub dim: usize,
    pub vertices: usize,
    pub edges: usize,
    pub facets: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub polytope: Option<Summary>,
    pub result: Value,
    pub oracle: Option<Value>,
    pub status: Status,
    pub message: Option<String>,
    #[serde(skip)]
    json: bool,
    #[serde(skip)]
    raw: Option<String>,
}

impl Report {
    fn new(command: Vec<String>, json: bool) -> Self {
        Report {
            command,
            polytope: None,
            result: Value::Null,
            oracle: None,
            status: Status::Ok,
            message: None,
            json,
            raw: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        if let Some(s) = &self.polytope {
            let _ = write!(
                out,
                "input: dim {}, {} vertices, {} edges",
                s.dim, s.vertices, s.edges
            );
            match s.facets {
                Some(f) => {
                    let _ = writeln!(out, ", {f} facets");
                }
                None => out.push('\n'),
            }
        }
        if !self.result.is_null() {
            out.push_str("result:");
            render_value(&self.result, 1, &mut out);
        }
        if let Some(o) = &self.oracle {
            out.push_str("oracle:");
            render_value(o, 1, &mut out);
        }
        if let Some(m) = &self.message {
            let _ = writeln!(out, "message: {m}");
        }
        let status = serde_json::to_value(self.status).expect("serializable");
        let _ = writeln!(out, "status: {}", status.as_str().unwrap_or_default());
        out
    }

    /// Text by default, JSON when `--json` was given.
    pub fn render(&self) -> String {
        if self.json && self.raw.is_none() {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
            let inner: Option<Vec<String>> = items.iter().map(scalar).collect();
            inner.map(|xs| format!("[{}]", xs.join(", ")))
        }
        _ => None,
    }
}

fn render_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, " {s}");
        return;
    }
    out.push('\n');
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                let _ = write!(out, "{pad}{k}:");
                render_value(item, depth + 1, out);
            }
        }
        Value::Array(items) => {
            for item in items {
                let _ = write!(out, "{pad}-");
                render_value(item, depth + 1, out);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

struct Failure {
    status: Status,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) | Error::InvalidInput(_) | Error::DimensionMismatch { .. } => {
                Status::UsageError
            }
            _ => Status::DomainError,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        status: Status::UsageError,
        message: message.into(),
    }
}

enum Source {
    Polytope(Polytope),
    Graph(MomentGraph),
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load(input: &str) -> Result<Source, Failure> {
    if let Ok(spec) = input.parse::<BuilderSpec>() {
        return Ok(Source::Polytope(spec.build()?));
    }
    let text = read_file(Path::new(input))?;
    let raw: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{input}: {e}")))?;
    if raw.get("halfspaces").is_some() {
        Ok(Source::Polytope(polytope_from_json(&text)?))
    } else if raw.get("positions").is_some() {
        Ok(Source::Graph(moment_graph_from_json(&text)?))
    } else {
        Err(usage(format!(
            "{input}: neither a polytope nor a moment graph"
        )))
    }
}

fn summary(src: &Source) -> Summary {
    match src {
        Source::Polytope(p) => Summary {
            dim: p.dim(),
            vertices: p.vertices().len(),
            edges: p.edges().len(),
            facets: Some(p.facets().len()),
        },
        Source::Graph(g) => Summary {
            dim: g.dim(),
            vertices: g.num_vertices(),
            edges: g.edges().len(),
            facets: None,
        },
    }
}

fn need_polytope(src: &Source) -> Result<&Polytope, Failure> {
    match src {
        Source::Polytope(p) => Ok(p),
        Source::Graph(_) => Err(usage("this command needs a polytope, not a moment graph")),
    }
}

fn graph_of(src: &Source) -> Result<MomentGraph, Failure> {
    match src {
        Source::Polytope(p) => Ok(MomentGraph::from_polytope(p)?),
        Source::Graph(g) => Ok(g.clone()),
    }
}

fn parse_xi(raw: &str, dim: usize) -> Result<RationalVec, Failure> {
    let xi = RationalVec::parse(raw)?;
    if xi.dim() != dim {
        return Err(usage(format!(
            "--xi has {} entries, expected {dim}",
            xi.dim()
        )));
    }
    Ok(xi)
}

fn polarizing(p: &Polytope, dir: &Direction) -> Result<PolarizingVector, Failure> {
    Ok(match &dir.xi {
        Some(raw) => PolarizingVector::for_polytope(p, parse_xi(raw, p.dim())?)?,
        None => choose_polarizing_vector(p, dir.seed)?,
    })
}

fn box_string(bx: &LatticeBox) -> String {
    bx.lo
        .iter()
        .zip(&bx.hi)
        .map(|(l, h)| format!("{l}..{h}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn strings(v: &RationalVec) -> Value {
    json!(v.to_strings())
}

/// Outcome of a command: result payload, optional oracle payload, and
/// whether the two agree.
struct Computed {
    result: Value,
    oracle: Option<Value>,
    agree: bool,
}

impl Computed {
    fn plain(result: Value) -> Self {
        Computed {
            result,
            oracle: None,
            agree: true,
        }
    }
}

fn validate(p: &Polytope) -> Computed {
    let r = p.smoothness();
    let mut result = json!({
        "simple": r.simple,
        "rational": true,
        "smooth": r.smooth,
        "reason": r.reason,
    });
    if let Some(f) = &r.failure {
        result["vertex"] = strings(&f.vertex);
        result["det"] = json!(format_rational(&f.det));
    }
    Computed::plain(result)
}

fn decompose(p: &Polytope, dir: &Direction) -> Result<Computed, Failure> {
    let xi = polarizing(p, dir)?;
    let d = PolarDecomposition::new(p, &xi)?;
    let signed = d.lattice_count(&LatticeBox::tight(p)?)?;
    let oracle = p.lattice_count_oracle()? as i64;
    Ok(Computed {
        result: json!({
            "xi": strings(xi.xi()),
            "cones": serde_json::to_value(&d.cones).expect("serializable"),
            "signed_lattice_count": signed,
        }),
        oracle: Some(json!({ "lattice_count": oracle })),
        agree: signed == oracle,
    })
}

fn count(p: &Polytope, dir: &Direction, bx: &str) -> Result<Computed, Failure> {
    let bx = if bx == "auto" {
        LatticeBox::tight(p)?
    } else {
        LatticeBox::parse(bx)?
    };
    if bx.dim() != p.dim() {
        return Err(usage(format!(
            "--box has {} ranges, expected {}",
            bx.dim(),
            p.dim()
        )));
    }
    let xi = polarizing(p, dir)?;
    let signed = signed_lattice_count(p, &xi, &bx)?;
    let oracle = p.lattice_count_oracle()? as i64;
    Ok(Computed {
        result: json!({ "count": signed, "box": box_string(&bx), "xi": strings(xi.xi()) }),
        oracle: Some(json!({ "count": oracle })),
        agree: signed == oracle,
    })
}

fn volume(p: &Polytope, dir: &Direction) -> Result<Computed, Failure> {
    let requested = dir
        .xi
        .as_deref()
        .map(|raw| parse_xi(raw, p.dim()))
        .transpose()?;
    let (value, xi, retried) = match requested {
        Some(xi) => match volume_localization(p, &xi) {
            Ok(v) => (v, xi, false),
            Err(Error::WeightVanishes(_)) => {
                let (v, xi) = volume_localization_auto(p, dir.seed)?;
                (v, xi, true)
            }
            Err(e) => return Err(e.into()),
        },
        None => {
            let (v, xi) = volume_localization_auto(p, dir.seed)?;
            (v, xi, false)
        }
    };
    let oracle = p.volume_oracle()?;
    Ok(Computed {
        result: json!({ "volume": format_rational(&value), "xi": strings(&xi), "retried": retried }),
        oracle: Some(json!({ "volume": format_rational(&oracle) })),
        agree: value == oracle,
    })
}

fn betti(g: &MomentGraph, dir: &Direction) -> Result<Computed, Failure> {
    let xi = match &dir.xi {
        Some(raw) => parse_xi(raw, g.dim())?,
        None => generic_direction(g, dir.seed)?,
    };
    let b = betti_numbers(g, &xi)?;
    let mut reversed = betti_numbers(g, &-&xi)?.0;
    reversed.reverse();
    Ok(Computed {
        agree: b.0 == reversed && b.total() == g.num_vertices(),
        result: json!({
            "betti": b.0,
            "xi": strings(&xi),
            "total": b.total(),
            "palindromic": b.is_palindromic(),
        }),
        oracle: Some(
            json!({ "betti_from_opposite_direction": reversed, "vertices": g.num_vertices() }),
        ),
    })
}

fn load_class(g: &MomentGraph, path: &Path) -> Result<GkmClass, Failure> {
    Ok(class_from_json(
        g.dim(),
        g.num_vertices(),
        &read_file(path)?,
    )?)
}

fn gkm_dim(src: &Source, g: &MomentGraph, k: u32) -> Result<Computed, Failure> {
    let dimension = gkm_dimension(g, k);
    // The free-module prediction is only guaranteed for polytope graphs.
    if let Source::Polytope(_) = src {
        let fm = free_module_check(g, k)?;
        let predicted = fm.rows[k as usize].predicted;
        return Ok(Computed {
            result: json!({ "k": k, "dimension": dimension }),
            oracle: Some(json!({ "free_module_prediction": predicted, "betti": fm.betti.0 })),
            agree: dimension == predicted,
        });
    }
    Ok(Computed::plain(json!({ "k": k, "dimension": dimension })))
}

fn integrate(g: &MomentGraph, class: &Path, dir: &Direction) -> Result<Computed, Failure> {
    let c = load_class(g, class)?;
    let data = FixedPointData::from_graph(g)?;
    let xi = match &dir.xi {
        Some(raw) => EvaluationPoint::new(&data, parse_xi(raw, g.dim())?)?,
        None => EvaluationPoint::choose(&data, dir.seed)?,
    };
    let value = abbv_pushforward(&c, &data, &xi)?;
    let degree = c.homogeneous_degree();
    let mut result =
        json!({ "value": format_rational(&value), "xi": strings(xi.xi()), "degree": degree });
    let n = g.dim() as u32;
    match degree {
        // below the top degree the push-forward vanishes
        Some(d) if d < n => Ok(Computed {
            oracle: Some(json!({ "value": "0", "reason": "degree below dimension" })),
            agree: value == rat(0),
            result,
        }),
        // in the top degree it is independent of the evaluation point
        Some(d) if d == n => {
            let mut seed = dir.seed.wrapping_add(1);
            let other = loop {
                let cand = EvaluationPoint::choose(&data, seed)?;
                if cand.xi() != xi.xi() {
                    break cand;
                }
                seed = seed.wrapping_add(1);
            };
            let second = abbv_pushforward(&c, &data, &other)?;
            Ok(Computed {
                oracle: Some(
                    json!({ "value": format_rational(&second), "xi": strings(other.xi()) }),
                ),
                agree: second == value,
                result,
            })
        }
        _ => {
            result["note"] = json!("no independent check above the top degree");
            Ok(Computed::plain(result))
        }
    }
}

fn catalog() -> Result<Computed, Failure> {
    let entries = BuilderSpec::catalog()
        .into_iter()
        .map(|spec| {
            let p = spec.build()?;
            Ok(json!({
                "spec": spec.to_string(),
                "dim": p.dim(),
                "vertices": p.vertices().len(),
                "edges": p.edges().len(),
                "facets": p.facets().len(),
            }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Computed::plain(Value::Array(entries)))
}

fn dispatch(cmd: &Command, report: &mut Report) -> Result<Computed, Failure> {
    let input = match cmd {
        Command::Validate(i) => Some(i),
        Command::Decompose { input, .. }
        | Command::Count { input, .. }
        | Command::Volume { input, .. }
        | Command::Betti { input, .. }
        | Command::GkmCheck { input, .. }
        | Command::GkmDim { input, .. }
        | Command::Integrate { input, .. } => Some(input),
        Command::Catalog => None,
    };
    let src = match input {
        Some(i) => {
            let src = load(&i.input)?;
            report.polytope = Some(summary(&src));
            Some(src)
        }
        None => None,
    };
    let src = src.as_ref();
    match cmd {
        Command::Catalog => catalog(),
        Command::Validate(_) => Ok(validate(need_polytope(src.unwrap())?)),
        Command::Decompose { dir, .. } => decompose(need_polytope(src.unwrap())?, dir),
        Command::Count { dir, bx, .. } => count(need_polytope(src.unwrap())?, dir, bx),
        Command::Volume { dir, .. } => volume(need_polytope(src.unwrap())?, dir),
        Command::Betti { dir, .. } => betti(&graph_of(src.unwrap())?, dir),
        Command::GkmCheck { class, .. } => {
            let g = graph_of(src.unwrap())?;
            let c = load_class(&g, class)?;
            Ok(Computed::plain(
                serde_json::to_value(gkm_check(&g, &c)?).expect("serializable"),
            ))
        }
        Command::GkmDim { k, .. } => {
            let src = src.unwrap();
            gkm_dim(src, &graph_of(src)?, *k)
        }
        Command::Integrate { class, dir, .. } => integrate(&graph_of(src.unwrap())?, class, dir),
    }
}

/// Runs one command. The returned code is 0 on success, 2 on a usage error,
/// 3 on a domain error and 4 when a result disagrees with its oracle.
pub fn run<I, S>(argv: I) -> (Report, i32)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    let json_flag = args.iter().any(|a| a == "--json");
    let mut report = Report::new(args.clone(), json_flag);
    let cli = match Cli::try_parse_from(std::iter::once("momentkit".to_string()).chain(args)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                report.raw = Some(text);
            } else {
                report.status = Status::UsageError;
                report.message = Some(text.trim_end().to_string());
            }
            let code = report.exit_code();
            return (report, code);
        }
    };
    report.json = cli.json;
    match dispatch(&cli.command, &mut report) {
        Ok(c) => {
            report.result = c.result;
            report.oracle = c.oracle;
            if !c.agree {
                report.status = Status::OracleMismatch;
                report.message = Some("result disagrees with its oracle".into());
            }
        }
        Err(f) => {
            report.status = f.status;
            report.message = Some(f.message);
        }
    }
    let code = report.exit_code();
    (report, code)
}

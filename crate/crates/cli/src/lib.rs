//! Command-line surface over `aodebound-core`: argument parsing, command dispatch and JSON
//! rendering. Every number in the output is an exact rational string.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use aodebound_core::algebra::irreducible::is_irreducible_over_qt;
use aodebound_core::aode::{degree_bound_with, BoundOptions, Family, SSource};
use aodebound_core::curve::{
    common_points, find_singular_points, resolve, standard_quadratic, ProjPoint, ProjPoly,
    ResolutionTrace, SingularReport,
};
use aodebound_core::heights::{height_over_t, height_point, height_ratfunc, over_qt};
use aodebound_core::text::{parse_poly, parse_ratfunc, parse_ratfunc_list};
use aodebound_core::{
    find_rational_solutions, is_maximally_comparable, ms_index, DiffPoly, Error, Field, MultiPoly,
    RatFunc,
};

/// Search cap used when `solve` gets no `--cap`.
pub const DEFAULT_CAP: usize = 6;

/// Resolution gives up after this many quadratic transformations.
pub const MAX_RESOLUTION_STEPS: usize = 32;

#[derive(Parser, Debug)]
#[command(
    name = "aodebound",
    version,
    about = "Degree bounds and rational solutions for first-order algebraic ODEs"
)]
pub struct Cli {
    /// Emit JSON (the only format).
    #[arg(long, global = true, default_value_t = true)]
    pub json: bool,
    /// Seed for randomized coordinate changes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Read one equation per line from FILE and emit JSON lines.
    #[arg(long, global = true, value_name = "FILE")]
    pub corpus: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Index, comparability and irreducibility of an equation in t, y, y'.
    Analyze(EquationArg),
    /// Degree bound with every intermediate value.
    Bound {
        #[command(flatten)]
        eq: EquationArg,
        /// Use s = ceil(9 n^2 / 2) instead of the estimate from the normalized curve.
        #[arg(long)]
        worst_case_s: bool,
    },
    /// Rational solutions of height at most the cap.
    Solve {
        #[command(flatten)]
        eq: EquationArg,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Plane curves in x0, x1, x2 with coefficients in Q or Q(t).
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Height of a rational function, a projective point or a polynomial over Q(t).
    Height { kind: HeightKind, expr: String },
}

#[derive(Args, Debug)]
pub struct EquationArg {
    /// Equation such as "2*y' + t*y^3 + y^2"; omit with --corpus.
    pub equation: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum CurveCommand {
    Singularities { curve: String },
    Quad { curve: String },
    Resolve { curve: String },
    CommonPoints { first: String, second: String },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum HeightKind {
    Ratfunc,
    Point,
    Poly,
}

/// Failure of a command, with its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub exit: i32,
    pub position: Option<(usize, usize)>,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: "usage",
            message: msg.into(),
            exit: 2,
            position: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut e = Map::new();
        e.insert("code".into(), json!(self.code));
        e.insert("message".into(), json!(self.message));
        if let Some((l, c)) = self.position {
            e.insert("line".into(), json!(l.to_string()));
            e.insert("column".into(), json!(c.to_string()));
        }
        e.insert("exit_code".into(), json!(self.exit.to_string()));
        json!({ "error": Value::Object(e) })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match &e {
            Error::Parse { .. } => 2,
            Error::Budget(_) | Error::UnsupportedRange(_) => 4,
            _ => 3,
        };
        let position = match &e {
            Error::Parse { line, col, .. } => Some((*line, *col)),
            _ => None,
        };
        CliError {
            code: e.code(),
            message: e.to_string(),
            exit,
            position,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a run produced: documents for stdout and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub documents: Vec<Value>,
    pub error: Option<CliError>,
    /// JSON lines (batch mode) instead of one pretty document.
    pub lines: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(0, |e| e.exit)
    }

    pub fn stdout(&self) -> String {
        let mut out = String::new();
        for d in &self.documents {
            if self.lines {
                out.push_str(&serde_json::to_string(d).unwrap());
            } else {
                out.push_str(&serde_json::to_string_pretty(d).unwrap());
            }
            out.push('\n');
        }
        out
    }

    pub fn stderr(&self) -> String {
        self.error
            .as_ref()
            .map(|e| serde_json::to_string(&e.to_json()).unwrap() + "\n")
            .unwrap_or_default()
    }
}

pub fn run(cli: &Cli) -> Outcome {
    if let Some(path) = &cli.corpus {
        return run_corpus(cli, path);
    }
    match execute(cli, None) {
        Ok(v) => Outcome {
            documents: vec![v],
            error: None,
            lines: false,
        },
        Err(e) => Outcome {
            documents: vec![],
            error: Some(e),
            lines: false,
        },
    }
}

fn run_corpus(cli: &Cli, path: &PathBuf) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let err = CliError {
                code: "io_error",
                message: format!("{}: {e}", path.display()),
                exit: 2,
                position: None,
            };
            return Outcome {
                documents: vec![],
                error: Some(err),
                lines: true,
            };
        }
    };
    if !matches!(
        cli.command,
        Command::Analyze(_) | Command::Bound { .. } | Command::Solve { .. }
    ) {
        let err = CliError::usage("--corpus applies to analyze, bound and solve");
        return Outcome {
            documents: vec![],
            error: Some(err),
            lines: true,
        };
    }
    let mut docs = Vec::new();
    let mut first_error = None;
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        match execute(cli, Some(line)) {
            Ok(v) => docs.push(v),
            Err(e) => {
                let mut v = e.to_json();
                v.as_object_mut()
                    .unwrap()
                    .insert("equation".into(), json!(line));
                docs.push(v);
                first_error.get_or_insert(e);
            }
        }
    }
    Outcome {
        documents: docs,
        error: first_error,
        lines: true,
    }
}

fn equation(arg: &EquationArg, line: Option<&str>) -> CliResult<DiffPoly> {
    let text = line
        .or(arg.equation.as_deref())
        .ok_or_else(|| CliError::usage("missing equation (or --corpus FILE)"))?;
    Ok(DiffPoly::parse(text)?)
}

/// Run one command; `line` overrides the positional equation in batch mode.
pub fn execute(cli: &Cli, line: Option<&str>) -> CliResult<Value> {
    match &cli.command {
        Command::Analyze(eq) => analyze(&equation(eq, line)?),
        Command::Bound { eq, worst_case_s } => bound(&equation(eq, line)?, *worst_case_s),
        Command::Solve { eq, cap } => solve(&equation(eq, line)?, *cap),
        Command::Curve(c) => curve(c, cli.seed),
        Command::Height { kind, expr } => height(*kind, expr),
    }
}

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn analyze(f: &DiffPoly) -> CliResult<Value> {
    let ms = ms_index(f);
    let per_i: Vec<Value> = ms
        .per_i
        .iter()
        .map(|e| json!({ "i": s(e.i), "deg_y": s(e.deg_y), "value": s(e.value) }))
        .collect();
    let irreducible = is_irreducible_over_qt(f.poly(), 0, 1, 2)?;
    let tf = height_over_t(f.poly(), 0)?;
    Ok(json!({
        "equation": f.to_text(),
        "ms_index": s(ms.index),
        "positive_index": ms.positive,
        "per_i": per_i,
        "maximally_comparable": is_maximally_comparable(f),
        "irreducible": irreducible,
        "autonomous": f.is_autonomous(),
        "n": s(f.n()),
        "d": s(f.d()),
        "Tf": s(tf),
    }))
}

pub fn bound(f: &DiffPoly, worst_case_s: bool) -> CliResult<Value> {
    let b = degree_bound_with(f, BoundOptions { worst_case_s })?;
    if !b.hypotheses_hold && !b.autonomous {
        return Err(Error::Reducible(f.to_text()).into());
    }
    let ledger: Vec<Value> = b
        .ledger
        .iter()
        .map(|e| json!({ "formula": e.formula, "anchor": e.anchor, "value": s(&e.value) }))
        .collect();
    let source = match b.s_source {
        SSource::Estimate => "estimate",
        SSource::GenusBound => "genus_bound",
        SSource::WorstCase => "worst_case",
    };
    Ok(json!({
        "equation": f.to_text(),
        "n": s(b.n),
        "d": s(b.d),
        "ms_index": s(b.index),
        "n_tilde": s(b.n_tilde),
        "s": s(b.s),
        "s_source": source,
        "N": s(b.big_n),
        "mu": s(b.mu),
        "Tf": s(&b.tf),
        "Tg": b.tg.as_ref().map(s),
        "C": s(&b.c),
        "final_bound": s(&b.final_bound),
        "irreducible": b.irreducible,
        "autonomous": b.autonomous,
        "hypotheses_hold": b.hypotheses_hold,
        "ledger": ledger,
    }))
}

fn family_json(fam: &Family) -> Value {
    json!({ "general": fam.to_text(), "parameter": "c", "expansion_point": s(&fam.t0) })
}

pub fn solve(f: &DiffPoly, cap: Option<usize>) -> CliResult<Value> {
    let k = cap.unwrap_or(DEFAULT_CAP);
    let set = find_rational_solutions(f, k)?;
    let mut out = Map::new();
    out.insert("equation".into(), json!(f.to_text()));
    out.insert(
        "solutions".into(),
        Value::Array(set.solutions.iter().map(s).collect()),
    );
    out.insert(
        "constants".into(),
        Value::Array(set.constants.iter().map(s).collect()),
    );
    out.insert(
        "families".into(),
        Value::Array(set.families.iter().map(family_json).collect()),
    );
    out.insert("cap".into(), s(set.search_cap));
    out.insert(
        "theoretical_bound".into(),
        set.theoretical_bound.as_ref().map(s).unwrap_or(Value::Null),
    );
    out.insert("complete_up_to_cap".into(), json!(set.complete_up_to_cap));
    out.insert("notes".into(), json!(set.notes));
    if cap.is_none() {
        out.insert(
            "warning".into(),
            json!(format!(
                "no --cap given; searched up to height {k} only, larger solutions are not excluded"
            )),
        );
    }
    Ok(Value::Object(out))
}

enum AnyCurve {
    Q(ProjPoly),
    Qt(ProjPoly<RatFunc>),
}

fn parse_curve(text: &str) -> CliResult<AnyCurve> {
    let p = parse_poly(text, &["t", "x0", "x1", "x2"])?;
    if p.degree_in(0).unwrap_or(0) == 0 {
        let vars = aodebound_core::curve::proj::proj_vars();
        let q = MultiPoly::from_terms(
            &vars,
            p.terms().map(|(m, c)| (m.0[1..].to_vec(), c.clone())),
        );
        Ok(AnyCurve::Q(ProjPoly::new(q)?))
    } else {
        Ok(AnyCurve::Qt(ProjPoly::new(over_qt(&p, 0))?))
    }
}

fn point_json<C: Field>(p: &ProjPoint<C>) -> Value {
    Value::Array(p.coords.iter().map(s).collect())
}

fn singular_json<C: Field>(r: &SingularReport<C>) -> Value {
    let pts: Vec<Value> = r
        .points
        .iter()
        .map(|p| json!({ "point": point_json(&p.point), "multiplicity": s(p.multiplicity), "ordinary": p.ordinary }))
        .collect();
    json!({ "points": pts, "residual_count": s(r.residual_count) })
}

fn trace_json<C: Field>(t: &ResolutionTrace<C>) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|st| {
            json!({
                "index": s(st.index),
                "center": point_json(&st.center),
                "center_multiplicity": s(st.center_multiplicity),
                "matrix": st.matrix.iter().map(|row| Value::Array(row.iter().map(s).collect())).collect::<Vec<_>>(),
                "curve": st.curve.to_text(),
                "degree": s(st.degree),
                "degree_bound": s(st.degree_bound),
                "height": s(st.height),
                "height_bound": s(&st.height_ledger),
            })
        })
        .collect();
    json!({
        "initial": t.initial.to_text(),
        "s": s(t.s),
        "steps": steps,
        "final_singularities": singular_json(&t.final_report),
        "complete": t.complete,
    })
}

fn curve_generic<C: Field>(
    cmd: &CurveCommand,
    f: &ProjPoly<C>,
    g: Option<&ProjPoly<C>>,
    seed: u64,
) -> CliResult<Value> {
    let base = |extra: Value| {
        let mut m = Map::new();
        m.insert("curve".into(), json!(f.to_text()));
        m.insert("degree".into(), s(f.degree()));
        for (k, v) in extra.as_object().unwrap() {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    };
    Ok(match cmd {
        CurveCommand::Singularities { .. } => base(singular_json(&find_singular_points(f)?)),
        CurveCommand::Quad { .. } => {
            let q = standard_quadratic(f)?;
            base(json!({ "transform": q.to_text(), "transform_degree": s(q.degree()) }))
        }
        CurveCommand::Resolve { .. } => base(
            json!({ "seed": s(seed), "trace": trace_json(&resolve(f, MAX_RESOLUTION_STEPS, seed)?) }),
        ),
        CurveCommand::CommonPoints { .. } => {
            let g = g.unwrap();
            let pts: Vec<Value> = common_points(f, g)?.iter().map(point_json).collect();
            base(json!({ "other": g.to_text(), "points": pts }))
        }
    })
}

pub fn curve(cmd: &CurveCommand, seed: u64) -> CliResult<Value> {
    let (first, second) = match cmd {
        CurveCommand::Singularities { curve }
        | CurveCommand::Quad { curve }
        | CurveCommand::Resolve { curve } => (curve, None),
        CurveCommand::CommonPoints { first, second } => (first, Some(second)),
    };
    let f = parse_curve(first)?;
    let g = second.map(|t| parse_curve(t)).transpose()?;
    match (f, g) {
        (AnyCurve::Q(f), None) => curve_generic(cmd, &f, None, seed),
        (AnyCurve::Q(f), Some(AnyCurve::Q(g))) => curve_generic(cmd, &f, Some(&g), seed),
        (f, g) => {
            let lift = |c: AnyCurve| match c {
                AnyCurve::Q(p) => {
                    ProjPoly::new(p.poly().map(|a| RatFunc::constant(a.clone()))).unwrap()
                }
                AnyCurve::Qt(p) => p,
            };
            let g = g.map(lift);
            curve_generic(cmd, &lift(f), g.as_ref(), seed)
        }
    }
}

pub fn height(kind: HeightKind, expr: &str) -> CliResult<Value> {
    let (kind_s, h) = match kind {
        HeightKind::Ratfunc => ("ratfunc", height_ratfunc(&parse_ratfunc(expr)?)),
        HeightKind::Point => ("point", height_point(&parse_ratfunc_list(expr)?)?),
        HeightKind::Poly => (
            "poly",
            height_over_t(&parse_poly(expr, &["t", "x0", "x1", "x2"])?, 0)?,
        ),
    };
    Ok(json!({ "kind": kind_s, "input": expr, "height": s(h) }))
}

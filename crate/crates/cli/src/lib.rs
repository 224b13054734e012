//! Command-line front end. All logic lives in [`run`] so it can be tested
//! without spawning a process.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ballcut_core::cuts::{cut_equal, Cut};
use ballcut_core::curve::{
    genus2_example, newton_branch, place_equal_on_curve, project_cut, signature_label, CurveCut,
    CurveFn, CurvePlaceVerdict, PlaneCurve,
};
use ballcut_core::expr::{
    eval, parse_ball, parse_cut, parse_in, parse_point, parse_point_ball, to_rational_fn, Env, Scope,
};
use ballcut_core::orderings::{classify_index, ordering_sign, place_equal, place_value};
use ballcut_core::poly::{RationalFn, SeriesPoly};
use ballcut_core::realroots::{isolate_roots, monotonic_decomposition, sturm_count, Endpoint, Interval};
use ballcut_core::series::rat::parse_rat;
use ballcut_core::ultrametric::{dist_p, PNorm};
use ballcut_core::{Error, GroupMode, Precision, Result, Series};

/// Exact computation over a field of truncated Puiseux series.
#[derive(Debug, Parser)]
#[command(name = "ballcut", version)]
pub struct Cli {
    /// Expansion depth for divisions and roots, e.g. 8 or 17/2.
    #[arg(long, global = true, env = "BALLCUT_PRECISION", default_value = "8")]
    pub precision: String,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Group mode for `eval`, `val`, `sign`, `std`; enables the literal `t`.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression.
    Eval { expr: String },
    /// Valuation of an expression.
    Val { expr: String },
    /// Sign (-1, 0, 1) of an expression.
    Sign { expr: String },
    /// Standard part of an expression.
    Std { expr: String },
    /// Ultrametric distance of two elements or points.
    Dist {
        a: String,
        b: String,
        /// 1, 2, ... or inf (points only)
        #[arg(long = "p", default_value = "inf")]
        p: String,
    },
    /// Ball queries.
    #[command(subcommand)]
    Ball(BallCmd),
    /// Cut queries.
    #[command(subcommand)]
    Cut(CutCmd),
    /// Orderings of K(x) induced by cuts.
    #[command(subcommand)]
    Ordering(OrderingCmd),
    /// R-places of K(x) induced by cuts.
    #[command(subcommand)]
    Place(PlaceCmd),
    /// Count and isolate the real roots of a polynomial in x.
    Sturm {
        poly: String,
        lo: Option<String>,
        hi: Option<String>,
    },
    /// Monotonic decomposition of a rational function of x.
    Monotone { func: String },
    /// Solve a branch of a plane curve by Newton iteration.
    Branch {
        curve: String,
        xval: String,
        yseed: String,
    },
    /// Cut of K cut out by a function along a branch (`CURVE; XVAL; YSEED`).
    Project { branch: String, func: String },
    /// Compare the R-places of two curve branches.
    PlaceEqualCurve(PlaceEqualCurveArgs),
    /// Reproducible worked examples.
    #[command(subcommand)]
    Example(ExampleCmd),
}

#[derive(Debug, Subcommand)]
pub enum BallCmd {
    /// Is the element (or point) in the ball?
    Member { ball: String, expr: String },
}

#[derive(Debug, Subcommand)]
pub enum CutCmd {
    /// Canonical form and value-group index.
    Classify { cut: String },
    /// Are two cuts the same cut of K?
    Compare { a: String, b: String },
}

#[derive(Debug, Subcommand)]
pub enum OrderingCmd {
    /// Sign of a function of x in the ordering of a cut.
    Sign { cut: String, func: String },
}

#[derive(Debug, Subcommand)]
pub enum PlaceCmd {
    /// R-place value of a function of x.
    Value { cut: String, func: String },
    /// Do two cuts give the same R-place?
    Equal { a: String, b: String },
}

#[derive(Debug, Args)]
pub struct PlaceEqualCurveArgs {
    pub a: String,
    pub b: String,
    /// Comma-separated functions of x and y; `rho(p, q)` is the squared
    /// distance to the point (p, q).
    #[arg(long, default_value = "")]
    pub fns: String,
}

#[derive(Debug, Subcommand)]
pub enum ExampleCmd {
    /// The genus-2 curve y^2 + (x^2 - a^2)(x^2 - 1) = 0 with a = eps.
    Genus2,
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    prec: Precision,
    json: bool,
    mode: Option<GroupMode>,
}

/// Output of a command: text and JSON renderings.
struct Out {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: Value) -> Result<Out> {
    Ok(Out {
        text: text.into(),
        json,
    })
}

impl Ctx {
    fn scope(&self, vars: &[&str]) -> Scope {
        let s = Scope::with_vars(vars);
        if self.mode.is_some() {
            s.with_aux()
        } else {
            s
        }
    }

    fn element(&self, text: &str) -> Result<Series> {
        let mode = self.mode.unwrap_or(GroupMode::AuxInfinitesimal);
        eval(&parse_in(text, &self.scope(&[]))?, &Env::new(mode, self.prec.clone()))
    }

    fn func(&self, text: &str) -> Result<RationalFn> {
        to_rational_fn(&parse_in(text, &Scope::with_vars(&["x"]))?, "x", &self.prec)
    }

    fn cut(&self, text: &str) -> Result<Cut> {
        parse_cut(text, &self.prec)
    }

    /// `CURVE; XVAL; YSEED` with `t` allowed in the values.
    fn branch(&self, text: &str) -> Result<CurveCut> {
        let parts: Vec<&str> = text.split(';').collect();
        let [curve, x, y] = parts[..] else {
            return Err(Error::InvalidInput(format!(
                "branch must be `CURVE; XVAL; YSEED`, got `{text}`"
            )));
        };
        self.solve(curve, x, y).map(CurveCut::new)
    }

    fn solve(&self, curve: &str, x: &str, y: &str) -> Result<ballcut_core::curve::CurveBranch> {
        let curve = PlaneCurve::parse(curve, &self.prec)?;
        let scope = Scope::default().with_aux();
        let env = Env::new(GroupMode::AuxInfinitesimal, self.prec.clone());
        let x = eval(&parse_in(x, &scope)?, &env)?;
        let y = eval(&parse_in(y, &scope)?, &env)?;
        newton_branch(&curve, &x, &y, &self.prec)
    }
}

fn curve_fn(text: &str, prec: &Precision) -> Result<CurveFn> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("rho") {
        return Ok(CurveFn::Rho(parse_point(inner, prec)?));
    }
    CurveFn::parse(t)
}

/// Splits on commas outside parentheses.
fn split_fns(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out.into_iter().filter(|s| !s.trim().is_empty()).collect()
}

fn endpoint(text: Option<&String>, default: Endpoint, ctx: &Ctx) -> Result<Endpoint> {
    match text.map(|s| s.trim()) {
        None => Ok(default),
        Some("-inf") => Ok(Endpoint::NegInf),
        Some("+inf") | Some("inf") => Ok(Endpoint::PosInf),
        Some(s) => Ok(Endpoint::At(ctx.element(s)?)),
    }
}

fn polynomial(f: &RationalFn, prec: &Precision) -> Result<SeriesPoly> {
    let den = f.denominator();
    if den.degree() != Some(0) {
        return Err(Error::InvalidInput(format!("{f} is not a polynomial")));
    }
    f.numerator().scale(&den.coeffs()[0].inv(prec)?)
}

fn json_or_null<T: ToString>(v: &Option<T>) -> Value {
    v.as_ref().map_or(Value::Null, |s| Value::String(s.to_string()))
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<Out> {
    let prec = &ctx.prec;
    match cmd {
        Command::Eval { expr } => {
            let v = ctx.element(expr)?;
            out(v.to_string(), json!({ "value": v, "text": v.to_string() }))
        }
        Command::Val { expr } => {
            let v = ctx.element(expr)?.valuation()?;
            out(v.to_string(), json!({ "valuation": v.to_string() }))
        }
        Command::Sign { expr } => {
            let s = ctx.element(expr)?.sign()?;
            out(s.to_string(), json!({ "sign": s }))
        }
        Command::Std { expr } => {
            let s = ctx.element(expr)?.standard_part()?;
            out(s.to_string(), json!({ "standard_part": s.to_string() }))
        }
        Command::Dist { a, b, p } => {
            let norm = match p.trim() {
                "inf" => PNorm::Infinity,
                n => PNorm::Finite(
                    n.parse()
                        .map_err(|_| Error::InvalidInput(format!("bad --p value `{n}`")))?,
                ),
            };
            let d = dist_p(&parse_point(a, prec)?, &parse_point(b, prec)?, norm)?;
            out(d.to_string(), json!({ "distance": d.to_string(), "p": norm.to_string() }))
        }
        Command::Ball(BallCmd::Member { ball, expr }) => {
            let inside = match parse_ball(ball, prec) {
                Ok(b) => b.contains(&ctx.element(expr)?)?,
                Err(_) => parse_point_ball(ball, prec)?.contains(&parse_point(expr, prec)?)?,
            };
            out(inside.to_string(), json!({ "member": inside }))
        }
        Command::Cut(CutCmd::Classify { cut }) => {
            let c = ctx.cut(cut)?.normalized();
            let kind = match &c {
                Cut::MinusInfinity | Cut::PlusInfinity => "infinite",
                Cut::Principal { .. } => "principal",
                Cut::BallEdge { .. } => "ball_edge",
            };
            let index = classify_index(&c);
            out(
                format!("{c}\nkind: {kind}\nindex: {index}"),
                json!({ "cut": c.to_string(), "kind": kind, "index": index }),
            )
        }
        Command::Cut(CutCmd::Compare { a, b }) => {
            let eq = cut_equal(&ctx.cut(a)?, &ctx.cut(b)?)?;
            out(eq.to_string(), json!({ "equal": eq }))
        }
        Command::Ordering(OrderingCmd::Sign { cut, func }) => {
            let s = ordering_sign(&ctx.cut(cut)?, &ctx.func(func)?)?;
            out(s.to_string(), json!({ "sign": s }))
        }
        Command::Place(PlaceCmd::Value { cut, func }) => {
            let v = place_value(&ctx.cut(cut)?, &ctx.func(func)?, prec)?;
            out(v.to_string(), json!({ "value": v.to_string() }))
        }
        Command::Place(PlaceCmd::Equal { a, b }) => {
            let eq = place_equal(&ctx.cut(a)?, &ctx.cut(b)?)?;
            out(eq.to_string(), json!({ "equal": eq }))
        }
        Command::Sturm { poly, lo, hi } => {
            let p = polynomial(&ctx.func(poly)?, prec)?;
            let iv = Interval::new(
                endpoint(lo.as_ref(), Endpoint::NegInf, ctx)?,
                endpoint(hi.as_ref(), Endpoint::PosInf, ctx)?,
            );
            let n = sturm_count(&p, &iv)?;
            let roots = isolate_roots(&p, &iv)?;
            let mut text = format!("{n}");
            for r in &roots {
                text.push_str(&format!("\n  {r}"));
            }
            let rj: Vec<Value> = roots
                .iter()
                .map(|r| json!({ "lo": r.lo, "hi": r.hi, "exact": r.exact }))
                .collect();
            out(text, json!({ "count": n, "interval": iv.to_string(), "roots": rj }))
        }
        Command::Monotone { func } => {
            let pieces = monotonic_decomposition(&ctx.func(func)?)?;
            let text: Vec<String> = pieces.iter().map(|p| p.to_string()).collect();
            let pj: Vec<Value> = pieces
                .iter()
                .map(|p| {
                    json!({
                        "lower": json_or_null(&p.lower.as_ref().map(|b| &b.root)),
                        "upper": json_or_null(&p.upper.as_ref().map(|b| &b.root)),
                        "direction": p.direction.to_string(),
                        "sample": p.sample,
                    })
                })
                .collect();
            out(text.join("\n"), json!({ "pieces": pj }))
        }
        Command::Branch { curve, xval, yseed } => {
            let b = ctx.solve(curve, xval, yseed)?;
            let sig = signature_label(b.signature);
            out(
                format!("y = {}\nsignature: {sig}", b.y_val),
                json!({ "x": b.x_val, "y": b.y_val, "signature": sig }),
            )
        }
        Command::Project { branch, func } => {
            let c = project_cut(&ctx.branch(branch)?, &curve_fn(func, prec)?, prec)?;
            out(c.to_string(), json!({ "cut": c.to_string() }))
        }
        Command::PlaceEqualCurve(args) => {
            let fns = split_fns(&args.fns)
                .into_iter()
                .map(|f| curve_fn(f, prec))
                .collect::<Result<Vec<_>>>()?;
            let v = place_equal_on_curve(&ctx.branch(&args.a)?, &ctx.branch(&args.b)?, &fns, prec)?;
            let by = match &v {
                CurvePlaceVerdict::DistinguishedBy(f) => Value::String(f.to_string()),
                _ => Value::Null,
            };
            let verdict = match v {
                CurvePlaceVerdict::Equal => "equal",
                CurvePlaceVerdict::DistinguishedBy(_) => "distinguished",
                CurvePlaceVerdict::Inconclusive => "inconclusive",
            };
            out(v.to_string(), json!({ "verdict": verdict, "by": by }))
        }
        Command::Example(ExampleCmd::Genus2) => {
            let r = genus2_example(prec)?;
            out(r.to_text().trim_end(), r.to_json())
        }
    }
}

fn parse_mode(m: &Option<String>) -> Result<Option<GroupMode>> {
    m.as_ref()
        .map(|name| {
            GroupMode::from_name(name).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown mode `{name}` (aux_infinitesimal or aux_dominant)"
                ))
            })
        })
        .transpose()
}

fn parse_precision(text: &str) -> Result<Precision> {
    let depth = parse_rat(text)?;
    if depth <= ballcut_core::series::rat::rat(0) {
        return Err(Error::InvalidInput(format!("precision must be positive, got {text}")));
    }
    Ok(Precision::new(depth))
}

fn failure(e: &Error, ctx_prec: &str) -> Outcome {
    let mut stderr = format!("error[{}]: {e}\n", e.code());
    let code = if e.is_indeterminate() {
        stderr.push_str(&format!(
            "hint: the answer lies beyond the truncation; retry with a larger --precision (currently {ctx_prec})\n"
        ));
        2
    } else {
        1
    };
    Outcome {
        code,
        stdout: String::new(),
        stderr,
    }
}

/// Runs the CLI on `args` (including the program name).
///
/// Exit codes: 0 success, 2 indeterminate at the working precision,
/// 1 any other failure.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let setup = parse_precision(&cli.precision).and_then(|prec| {
        Ok(Ctx {
            prec,
            json: cli.json,
            mode: parse_mode(&cli.mode)?,
        })
    });
    let ctx = match setup {
        Ok(c) => c,
        Err(e) => return failure(&e, &cli.precision),
    };
    match dispatch(&cli.command, &ctx) {
        Ok(o) => Outcome {
            code: 0,
            stdout: if ctx.json {
                format!("{}\n", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                format!("{}\n", o.text)
            },
            stderr: String::new(),
        },
        Err(e) => failure(&e, &cli.precision),
    }
}

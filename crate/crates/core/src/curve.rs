//! Branches of plane curves `p(x, y) = 0` as series solutions, cut
//! projections along them, and the worked genus-2 example.

use std::fmt;

use serde_json::{json, Value};

use crate::cuts::{cut_equal, induced_cut, Cut};
use crate::error::{Error, Result};
use crate::expr::{eval, parse_in, Ast, Env, Scope};
use crate::orderings::place_equal;
use crate::poly::SeriesPoly;
use crate::series::rat::rat;
use crate::series::{Exponent, GroupMode, Precision, Series};
use crate::ultrametric::Point;

const NEWTON_STEPS: usize = 40;

/// `sum_j c_j(x) y^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BiPoly(Vec<SeriesPoly>);

impl BiPoly {
    fn constant(c: Series) -> Self {
        BiPoly(vec![SeriesPoly::constant(c)])
    }

    fn x() -> Self {
        BiPoly(vec![SeriesPoly::x(GroupMode::AuxInfinitesimal)])
    }

    fn y() -> Self {
        let m = GroupMode::AuxInfinitesimal;
        BiPoly(vec![SeriesPoly::zero(m), SeriesPoly::constant(Series::one(m))])
    }

    fn add(&self, o: &BiPoly) -> Result<BiPoly> {
        let zero = SeriesPoly::zero(GroupMode::AuxInfinitesimal);
        let n = self.0.len().max(o.0.len());
        (0..n)
            .map(|j| self.0.get(j).unwrap_or(&zero).add(o.0.get(j).unwrap_or(&zero)))
            .collect::<Result<_>>()
            .map(BiPoly)
    }

    fn neg(&self) -> BiPoly {
        BiPoly(self.0.iter().map(SeriesPoly::neg).collect())
    }

    fn mul(&self, o: &BiPoly) -> Result<BiPoly> {
        let m = GroupMode::AuxInfinitesimal;
        if self.0.is_empty() || o.0.is_empty() {
            return Ok(BiPoly(Vec::new()));
        }
        let mut out = vec![SeriesPoly::zero(m); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(BiPoly(out))
    }

    fn degree_y(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    fn dy(&self) -> BiPoly {
        BiPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&Series::int(j as i64, c.mode())).expect("same mode"))
                .collect(),
        )
    }

    fn eval(&self, x: &Series, y: &Series) -> Result<Series> {
        let mut acc = Series::zero(x.mode());
        for c in self.0.iter().rev() {
            acc = acc.mul(y)?.add(&c.eval(x)?)?;
        }
        Ok(acc)
    }

    fn from_ast(ast: &Ast, prec: &Precision) -> Result<BiPoly> {
        let m = GroupMode::AuxInfinitesimal;
        if !ast.has_vars() {
            return Ok(BiPoly::constant(eval(ast, &Env::new(m, prec.clone()))?));
        }
        let rec = |a: &Ast| BiPoly::from_ast(a, prec);
        let not_poly = || Error::InvalidInput(format!("curve `{ast}` is not a polynomial in x and y"));
        match ast {
            Ast::Var(v) if v == "x" => Ok(BiPoly::x()),
            Ast::Var(v) if v == "y" => Ok(BiPoly::y()),
            Ast::Var(v) => Err(Error::UnknownIdentifier(v.clone())),
            Ast::Add(a, b) => rec(a)?.add(&rec(b)?),
            Ast::Sub(a, b) => rec(a)?.add(&rec(b)?.neg()),
            Ast::Mul(a, b) => rec(a)?.mul(&rec(b)?),
            Ast::Neg(a) => Ok(rec(a)?.neg()),
            Ast::Div(a, b) if !b.has_vars() => {
                let inv = eval(b, &Env::new(m, prec.clone()))?.inv(prec)?;
                rec(a)?.mul(&BiPoly::constant(inv))
            }
            Ast::Pow(a, e) if e.is_integer() && *e >= rat(0) => {
                let base = rec(a)?;
                let k: u32 = e.to_integer().try_into().map_err(|_| not_poly())?;
                let mut acc = BiPoly::constant(Series::one(m));
                for _ in 0..k {
                    acc = acc.mul(&base)?;
                }
                Ok(acc)
            }
            _ => Err(not_poly()),
        }
    }
}

/// The curve `p(x, y) = 0` over `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    source: Ast,
    poly: BiPoly,
}

impl PlaneCurve {
    /// From a polynomial expression in `x` and `y`; an optional `= rhs`
    /// is moved to the left.
    pub fn parse(text: &str, prec: &Precision) -> Result<Self> {
        let scope = Scope::with_vars(&["x", "y"]);
        let ast = match text.split_once('=') {
            Some((l, r)) => Ast::Sub(Box::new(parse_in(l, &scope)?), Box::new(parse_in(r, &scope)?)),
            None => parse_in(text, &scope)?,
        };
        PlaneCurve::from_ast(ast, prec)
    }

    pub fn from_ast(ast: Ast, prec: &Precision) -> Result<Self> {
        let poly = BiPoly::from_ast(&ast, prec)?;
        if poly.degree_y() == 0 {
            return Err(Error::InvalidInput(format!("curve `{ast}` does not involve y")));
        }
        Ok(PlaneCurve { source: ast, poly })
    }

    pub fn eval(&self, x: &Series, y: &Series) -> Result<Series> {
        self.poly.eval(x, y)
    }

    /// `dp/dy`.
    pub fn eval_dy(&self, x: &Series, y: &Series) -> Result<Series> {
        self.poly.dy().eval(x, y)
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.source)
    }
}

/// A point `(x_val, y_val)` of the curve over the two-level extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveBranch {
    pub curve: PlaneCurve,
    pub x_val: Series,
    pub y_val: Series,
    pub signature: (i8, i8),
}

/// A cut of the curve, given by a branch realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCut {
    pub branch: CurveBranch,
}

impl CurveCut {
    pub fn new(branch: CurveBranch) -> Self {
        CurveCut { branch }
    }
}

fn vanishes(s: &Series) -> bool {
    s.leading().is_none()
}

/// Solves `p(x_val, y) = 0` by Newton iteration from `y_seed`.
///
/// The seed must satisfy `v(p) > 2 v(dp/dy)`, which makes the iteration
/// converge to the unique nearby simple root.
pub fn newton_branch(
    curve: &PlaneCurve,
    x_val: &Series,
    y_seed: &Series,
    prec: &Precision,
) -> Result<CurveBranch> {
    let mode = x_val.mode();
    let d0 = curve.eval_dy(x_val, y_seed)?;
    let p0 = curve.eval(x_val, y_seed)?;
    let Some((vd, _)) = d0.leading() else {
        return Err(Error::NewtonNoConvergence(format!(
            "dp/dy vanishes at the seed {y_seed}"
        )));
    };
    if let Some((vp, _)) = p0.leading() {
        if !vd.scale(&rat(2)).lt_in(vp, mode) {
            return Err(Error::NewtonNoConvergence(format!(
                "seed {y_seed} is not close enough to a simple root: v(p) = {vp}, v(dp/dy) = {vd}"
            )));
        }
    }
    let mut y = y_seed.clone();
    let mut p = p0;
    let mut steps = 0;
    while !vanishes(&p) {
        if steps == NEWTON_STEPS {
            return Err(Error::NewtonNoConvergence(format!(
                "residual {p} after {NEWTON_STEPS} steps"
            )));
        }
        let d = curve.eval_dy(x_val, &y)?;
        y = y.sub(&p.div(&d, prec)?)?;
        p = curve.eval(x_val, &y)?;
        steps += 1;
    }
    let signature = (x_val.sign()?, y.sign()?);
    Ok(CurveBranch {
        curve: curve.clone(),
        x_val: x_val.clone(),
        y_val: y,
        signature,
    })
}

/// A function on the curve: an expression in `x`, `y`, or the squared
/// distance `rho_P` to a fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveFn {
    Expr(Ast),
    Rho(Point),
}

impl CurveFn {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(CurveFn::Expr(parse_in(text, &Scope::with_vars(&["x", "y"]))?))
    }

    pub fn eval(&self, x: &Series, y: &Series, prec: &Precision) -> Result<Series> {
        match self {
            CurveFn::Expr(ast) => {
                let env = Env::new(x.mode(), prec.clone()).bind("x", x.clone()).bind("y", y.clone());
                eval(ast, &env)
            }
            CurveFn::Rho(p) => {
                let q = Point::new(vec![x.clone(), y.clone()])?;
                let p = lift(p, x.mode())?;
                rho(&p, &q)
            }
        }
    }
}

fn lift(p: &Point, mode: GroupMode) -> Result<Point> {
    Point::new(p.coords().iter().map(|c| c.with_mode(mode)).collect::<Result<_>>()?)
}

impl fmt::Display for CurveFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveFn::Expr(a) => write!(f, "{a}"),
            CurveFn::Rho(p) => write!(f, "rho{p}"),
        }
    }
}

/// `pi_f(C)`: the cut of `K` filled by `f` along the branch.
pub fn project_cut(cut: &CurveCut, f: &CurveFn, prec: &Precision) -> Result<Cut> {
    let b = &cut.branch;
    induced_cut(&f.eval(&b.x_val, &b.y_val, prec)?)
}

/// `rho_P(Q) = sum (p_i - q_i)^2`.
pub fn rho(p: &Point, q: &Point) -> Result<Series> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    let mut acc = Series::zero(p.mode());
    for (a, b) in p.coords().iter().zip(q.coords()) {
        let d = a.sub(b)?;
        acc = acc.add(&d.mul(&d)?)?;
    }
    Ok(acc)
}

/// Do both cuts project to the same cut under `rho_P`?
pub fn rho_place_witness(c1: &CurveCut, c2: &CurveCut, p: &Point, prec: &Precision) -> Result<bool> {
    let f = CurveFn::Rho(p.clone());
    cut_equal(&project_cut(c1, &f, prec)?, &project_cut(c2, &f, prec)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePlaceVerdict {
    Equal,
    DistinguishedBy(CurveFn),
    Inconclusive,
}

impl fmt::Display for CurvePlaceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePlaceVerdict::Equal => write!(f, "equal"),
            CurvePlaceVerdict::DistinguishedBy(g) => write!(f, "distinguished by {g}"),
            CurvePlaceVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Center of the ball whose edge is `pi_f(C)`.
fn projected_center(cut: &CurveCut, f: &str, prec: &Precision) -> Result<Series> {
    let (ball, _) = project_cut(cut, &CurveFn::parse(f)?, prec)?.normalized().as_ball_edge()?;
    Ok(ball.center().clone())
}

/// Same R-place? Each supplied function must land both cuts on edges of
/// one ball, and the `rho` witness around the centers of `pi_x(C1)` and
/// `pi_y(C1)` must agree. Finitely many functions can refute but not prove
/// equality, so a failing witness gives `Inconclusive`.
pub fn place_equal_on_curve(
    c1: &CurveCut,
    c2: &CurveCut,
    fns: &[CurveFn],
    prec: &Precision,
) -> Result<CurvePlaceVerdict> {
    for f in fns {
        if !place_equal(&project_cut(c1, f, prec)?, &project_cut(c2, f, prec)?)? {
            return Ok(CurvePlaceVerdict::DistinguishedBy(f.clone()));
        }
    }
    if c1 == c2 {
        return Ok(CurvePlaceVerdict::Equal);
    }
    let p = Point::new(vec![projected_center(c1, "x", prec)?, projected_center(c1, "y", prec)?])?;
    Ok(if rho_place_witness(c1, c2, &p, prec)? {
        CurvePlaceVerdict::Equal
    } else {
        CurvePlaceVerdict::Inconclusive
    })
}

fn sign_char(s: i8) -> char {
    match s {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

pub fn signature_label(s: (i8, i8)) -> String {
    format!("({},{})", sign_char(s.0), sign_char(s.1))
}

/// One branch of the genus-2 example with its projections.
#[derive(Debug, Clone)]
pub struct Genus2Branch {
    pub cut: CurveCut,
    pub z: Series,
    /// `(z + 1)(z - 1) - (a^2 - x^2 - (a/x)^2)`
    pub residual: Series,
    pub proj_x: Cut,
    pub proj_y: Cut,
    pub proj_z: Cut,
}

#[derive(Debug, Clone)]
pub struct Genus2Report {
    pub a: Series,
    pub curve: PlaneCurve,
    pub branches: Vec<Genus2Branch>,
    /// Signatures grouped by R-place.
    pub classes: Vec<Vec<(i8, i8)>>,
    /// How the two classes were told apart.
    pub separating: Option<CurveFn>,
}

/// `y^2 + (x^2 - a^2)(x^2 - 1) = 0` with `a = eps`, cut at the four
/// branches over `x = +-eps^(0,1)`.
pub fn genus2_example(prec: &Precision) -> Result<Genus2Report> {
    let m = GroupMode::AuxInfinitesimal;
    let curve = PlaneCurve::parse("y^2 + (x^2 - eps^2)*(x^2 - 1)", prec)?;
    let a = Series::eps(m);
    let tiny = Series::aux(m);
    let fx = CurveFn::parse("x")?;
    let fy = CurveFn::parse("y")?;
    let fz = CurveFn::parse("y/x")?;

    let mut branches = Vec::new();
    for sig in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
        let x = tiny.scale(&rat(sig.0.into()));
        let seed = tiny.scale(&rat(sig.1.into()));
        let b = newton_branch(&curve, &x, &seed, prec)?;
        let z = b.y_val.div(&b.x_val, prec)?;
        let a_over_x = a.div(&x, prec)?;
        let rhs = a.mul(&a)?.sub(&x.mul(&x)?)?.sub(&a_over_x.mul(&a_over_x)?)?;
        let one = Series::one(m);
        let residual = z.add(&one)?.mul(&z.sub(&one)?)?.sub(&rhs)?;
        let cut = CurveCut::new(b);
        branches.push(Genus2Branch {
            proj_x: project_cut(&cut, &fx, prec)?,
            proj_y: project_cut(&cut, &fy, prec)?,
            proj_z: project_cut(&cut, &fz, prec)?,
            cut,
            z,
            residual,
        });
    }

    let fns = [fx, fy, fz];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut separating = None;
    for i in 0..branches.len() {
        let mut home = None;
        for (k, class) in classes.iter().enumerate() {
            let verdict = place_equal_on_curve(&branches[class[0]].cut, &branches[i].cut, &fns, prec)?;
            match verdict {
                CurvePlaceVerdict::Equal => home = Some(k),
                CurvePlaceVerdict::DistinguishedBy(f) => {
                    separating.get_or_insert(f);
                }
                CurvePlaceVerdict::Inconclusive => {}
            }
            if home.is_some() {
                break;
            }
        }
        match home {
            Some(k) => classes[k].push(i),
            None => classes.push(vec![i]),
        }
    }
    let classes = classes
        .into_iter()
        .map(|c| c.into_iter().map(|i| branches[i].cut.branch.signature).collect())
        .collect();
    Ok(Genus2Report {
        a,
        curve,
        branches,
        classes,
        separating,
    })
}

impl Genus2Report {
    pub fn branch(&self, sig: (i8, i8)) -> Option<&Genus2Branch> {
        self.branches.iter().find(|b| b.cut.branch.signature == sig)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("curve: {}\n", self.curve));
        out.push_str(&format!("a = {}\n", self.a));
        for b in &self.branches {
            let br = &b.cut.branch;
            out.push_str(&format!("branch C{}\n", signature_label(br.signature)));
            out.push_str(&format!("  x = {}\n", br.x_val));
            out.push_str(&format!("  y = {}\n", br.y_val));
            out.push_str(&format!("  z = y/x = {}\n", b.z));
            out.push_str(&format!("  (z+1)(z-1) - (a^2 - x^2 - (a/x)^2) = {}\n", b.residual));
            out.push_str(&format!("  pi_x = {}\n", b.proj_x));
            out.push_str(&format!("  pi_y = {}\n", b.proj_y));
            out.push_str(&format!("  pi_z = {}\n", b.proj_z));
        }
        let classes: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let labels: Vec<String> = c.iter().map(|s| signature_label(*s)).collect();
                format!("{{{}}}", labels.join(" ~ "))
            })
            .collect();
        out.push_str(&format!("R-places: {}\n", classes.join(" != ")));
        if let Some(f) = &self.separating {
            out.push_str(&format!("separated by: {f}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let branches: Vec<Value> = self
            .branches
            .iter()
            .map(|b| {
                let br = &b.cut.branch;
                json!({
                    "signature": signature_label(br.signature),
                    "x": br.x_val,
                    "y": br.y_val,
                    "z": b.z,
                    "residual": b.residual,
                    "pi_x": b.proj_x.to_string(),
                    "pi_y": b.proj_y.to_string(),
                    "pi_z": b.proj_z.to_string(),
                })
            })
            .collect();
        let classes: Vec<Vec<String>> = self
            .classes
            .iter()
            .map(|c| c.iter().map(|s| signature_label(*s)).collect())
            .collect();
        json!({
            "curve": self.curve.to_string(),
            "a": self.a,
            "branches": branches,
            "pairing": classes,
            "separated_by": self.separating.as_ref().map(|f| f.to_string()),
        })
    }
}

/// Order of the identity residual counted as zero: the auxiliary depth.
pub fn residual_threshold(prec: &Precision) -> Exponent {
    prec.secondary_order(GroupMode::AuxInfinitesimal)
}

//! The input expression language: parsing, printing and evaluation.
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/") unary } ;
//! unary    = "-" unary | power ;
//! power    = primary [ "^" exponent ] ;
//! exponent = integer | "-" integer | "(" [ "-" ] integer [ "/" integer ] ")" ;
//! primary  = integer | "eps" | "t" | name
//!          | "sqrt" "(" expr ")" | "root" "(" integer "," expr ")"
//!          | "O" "(" expr ")" | "(" expr ")" ;
//! ```
//!
//! `^` binds tighter than unary minus, so `-eps^2` is `-(eps^2)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cuts::{Cut, Side};
use crate::error::{Error, Result};
use crate::poly::RationalFn;
use crate::series::rat::{fmt_rat, Rat};
use crate::series::{GroupMode, Precision, Series};
use crate::ultrametric::{parse_radius, Ball, Point};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Const(Rat),
    Eps,
    Aux,
    Var(String),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, Rat),
    Root(u32, Box<Ast>),
    Neg(Box<Ast>),
    /// `O(eps^q)`: an error term of the given order.
    BigO(Box<Ast>),
}

impl Ast {
    fn prec(&self) -> u8 {
        match self {
            Ast::Add(..) | Ast::Sub(..) => 1,
            Ast::Mul(..) | Ast::Div(..) => 2,
            Ast::Neg(_) => 3,
            Ast::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Mentions the variable `name`?
    pub fn uses(&self, name: &str) -> bool {
        match self {
            Ast::Var(v) => v == name,
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
                a.uses(name) || b.uses(name)
            }
            Ast::Pow(a, _) | Ast::Root(_, a) | Ast::Neg(a) | Ast::BigO(a) => a.uses(name),
            Ast::Const(_) | Ast::Eps | Ast::Aux => false,
        }
    }

    /// Mentions any variable at all?
    pub fn has_vars(&self) -> bool {
        match self {
            Ast::Var(_) => true,
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
                a.has_vars() || b.has_vars()
            }
            Ast::Pow(a, _) | Ast::Root(_, a) | Ast::Neg(a) | Ast::BigO(a) => a.has_vars(),
            Ast::Const(_) | Ast::Eps | Ast::Aux => false,
        }
    }
}

fn paren(f: &mut fmt::Formatter<'_>, a: &Ast, wrap: bool) -> fmt::Result {
    if wrap {
        write!(f, "({a})")
    } else {
        write!(f, "{a}")
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prec();
        match self {
            Ast::Const(c) if c.is_integer() && !c.is_negative() => write!(f, "{c}"),
            Ast::Const(c) => write!(f, "({})", fmt_rat(c)),
            Ast::Eps => write!(f, "eps"),
            Ast::Aux => write!(f, "t"),
            Ast::Var(v) => write!(f, "{v}"),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
                let op = match self {
                    Ast::Add(..) => " + ",
                    Ast::Sub(..) => " - ",
                    Ast::Mul(..) => "*",
                    _ => "/",
                };
                paren(f, a, a.prec() < p)?;
                f.write_str(op)?;
                paren(f, b, b.prec() <= p)
            }
            Ast::Neg(a) => {
                f.write_str("-")?;
                paren(f, a, a.prec() < p)
            }
            Ast::Pow(a, e) => {
                paren(f, a, a.prec() <= p)?;
                if e.is_integer() && !e.is_negative() {
                    write!(f, "^{e}")
                } else {
                    write!(f, "^({})", fmt_rat(e))
                }
            }
            Ast::Root(2, a) => write!(f, "sqrt({a})"),
            Ast::Root(n, a) => write!(f, "root({n}, {a})"),
            Ast::BigO(a) => write!(f, "O({a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let end = chars.get(j).map_or(text.len(), |c| c.0);
            out.push((pos, Tok::Num(text[pos..end].parse().expect("digits"))));
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            let end = chars.get(j).map_or(text.len(), |c| c.0);
            out.push((pos, Tok::Ident(text[pos..end].to_string())));
            i = j;
        } else if "+-*/^(),".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// Which names an expression may use.
#[derive(Debug, Clone, Default)]
pub struct Scope {
    pub vars: Vec<String>,
    /// Whether the auxiliary infinitesimal `t` is available.
    pub aux: bool,
}

impl Scope {
    pub fn with_vars(vars: &[&str]) -> Self {
        Scope {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            aux: false,
        }
    }

    pub fn with_aux(mut self) -> Self {
        self.aux = true;
        self
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    scope: &'a Scope,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        let base = self.primary()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail("expected an integer"),
        }
    }

    fn exponent(&mut self) -> Result<Rat> {
        if self.eat('(') {
            let neg = self.eat('-');
            let n = self.integer()?;
            let d = if self.eat('/') { self.integer()? } else { BigInt::one() };
            if d.is_zero() {
                return self.fail("zero denominator in exponent");
            }
            self.expect(')')?;
            let r = Rat::new(n, d);
            return Ok(if neg { -r } else { r });
        }
        let neg = self.eat('-');
        let n = Rat::from_integer(self.integer()?);
        Ok(if neg { -n } else { n })
    }

    fn primary(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(Ast::Const(Rat::from_integer(n))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "eps" => Ok(Ast::Eps),
                "t" if self.scope.aux => Ok(Ast::Aux),
                "sqrt" => {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(Ast::Root(2, Box::new(e)))
                }
                "root" => {
                    self.expect('(')?;
                    let n = self.integer()?;
                    let n = match n.to_u32() {
                        Some(n) if n > 0 => n,
                        _ => return self.fail("root index must be a positive integer"),
                    };
                    self.expect(',')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(Ast::Root(n, Box::new(e)))
                }
                "O" => {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(Ast::BigO(Box::new(e)))
                }
                _ if self.scope.vars.contains(&name) => Ok(Ast::Var(name)),
                _ => Err(Error::UnknownIdentifier(name)),
            },
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            Tok::Sym(c) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected `{c}`"),
            }),
        }
    }
}

/// Parses with no variables and without `t`.
pub fn parse(text: &str) -> Result<Ast> {
    parse_in(text, &Scope::default())
}

pub fn parse_in(text: &str, scope: &Scope) -> Result<Ast> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        scope,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("trailing input");
    }
    Ok(e)
}

/// Values of variables plus the mode and precision of evaluation.
#[derive(Debug, Clone)]
pub struct Env {
    pub mode: GroupMode,
    pub prec: Precision,
    pub vars: HashMap<String, Series>,
}

impl Env {
    pub fn new(mode: GroupMode, prec: Precision) -> Self {
        Env {
            mode,
            prec,
            vars: HashMap::new(),
        }
    }

    pub fn bind(mut self, name: &str, value: Series) -> Self {
        self.vars.insert(name.to_string(), value);
        self
    }
}

pub fn eval(ast: &Ast, env: &Env) -> Result<Series> {
    let prec = &env.prec;
    let bin = |a: &Ast, b: &Ast| -> Result<(Series, Series)> { Ok((eval(a, env)?, eval(b, env)?)) };
    match ast {
        Ast::Const(c) => Ok(Series::constant(c.clone(), env.mode)),
        Ast::Eps => Ok(Series::eps(env.mode)),
        Ast::Aux => Ok(Series::aux(env.mode)),
        Ast::Var(v) => env
            .vars
            .get(v)
            .cloned()
            .ok_or_else(|| Error::UnknownIdentifier(v.clone())),
        Ast::Add(a, b) => bin(a, b).and_then(|(a, b)| a.add(&b)),
        Ast::Sub(a, b) => bin(a, b).and_then(|(a, b)| a.sub(&b)),
        Ast::Mul(a, b) => bin(a, b).and_then(|(a, b)| a.mul(&b)),
        Ast::Div(a, b) => bin(a, b).and_then(|(a, b)| a.div(&b, prec)),
        Ast::Neg(a) => Ok(eval(a, env)?.neg()),
        Ast::Pow(a, e) => {
            let base = eval(a, env)?;
            match e.to_integer().to_i64() {
                Some(k) if e.is_integer() => base.powi(k, prec),
                _ => base.pow_rat(e, prec),
            }
        }
        Ast::Root(n, a) => eval(a, env)?.nth_root(*n, prec),
        Ast::BigO(a) => {
            let m = eval(a, env)?;
            match m.terms() {
                [(e, c)] if m.is_exact() && c.is_one() => Ok(Series::big_o(e.clone(), env.mode)),
                _ => Err(Error::InvalidInput(format!(
                    "O(...) needs a monomial with coefficient 1, got {m}"
                ))),
            }
        }
    }
}

/// Converts an expression in one variable into an element of `K(x)`.
/// Subexpressions free of the variable are evaluated as constants.
pub fn to_rational_fn(ast: &Ast, var: &str, prec: &Precision) -> Result<RationalFn> {
    let mode = GroupMode::AuxInfinitesimal;
    if !ast.has_vars() {
        if contains_aux(ast) {
            return Err(Error::InvalidInput("`t` is not an element of the base field".into()));
        }
        return Ok(RationalFn::constant(eval(ast, &Env::new(mode, prec.clone()))?));
    }
    let rec = |a: &Ast| to_rational_fn(a, var, prec);
    match ast {
        Ast::Var(v) if v == var => Ok(RationalFn::x(mode)),
        Ast::Var(v) => Err(Error::UnknownIdentifier(v.clone())),
        Ast::Add(a, b) => rec(a)?.add(&rec(b)?),
        Ast::Sub(a, b) => rec(a)?.sub(&rec(b)?),
        Ast::Mul(a, b) => rec(a)?.mul(&rec(b)?),
        Ast::Div(a, b) => rec(a)?.div(&rec(b)?),
        Ast::Neg(a) => Ok(rec(a)?.neg()),
        Ast::Pow(a, e) if e.is_integer() => match e.to_integer().to_i64() {
            Some(k) => rec(a)?.powi(k),
            None => Err(Error::InvalidInput(format!("exponent {e} too large"))),
        },
        _ => Err(Error::NotRational(var.to_string())),
    }
}

fn contains_aux(ast: &Ast) -> bool {
    match ast {
        Ast::Aux => true,
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
            contains_aux(a) || contains_aux(b)
        }
        Ast::Pow(a, _) | Ast::Root(_, a) | Ast::Neg(a) | Ast::BigO(a) => contains_aux(a),
        _ => false,
    }
}

/// Parses and evaluates an element of `K` (no variables, no `t`).
pub fn parse_element(text: &str, prec: &Precision) -> Result<Series> {
    eval(&parse(text)?, &Env::new(GroupMode::AuxInfinitesimal, prec.clone()))
}

/// Splits on commas outside parentheses and brackets.
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// `a` or `(a, b, ...)`.
pub fn parse_point(text: &str, prec: &Precision) -> Result<Point> {
    let t = text.trim();
    let inner = match t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        Some(s) if split_top(s).len() > 1 => s,
        _ => t,
    };
    let coords = split_top(inner)
        .into_iter()
        .map(|c| parse_element(c, prec))
        .collect::<Result<Vec<_>>>()?;
    Point::new(coords)
}

fn bad(what: &str, text: &str) -> Error {
    Error::InvalidInput(format!("not a {what}: `{text}` (see README for the forms)"))
}

/// `[radius](center)` after the prefix; returns the radius text and center.
fn radius_and_center<'a>(rest: &'a str, text: &str) -> Result<(&'a str, &'a str)> {
    let rest = rest.trim();
    let rest = rest.strip_prefix('[').ok_or_else(|| bad("ball", text))?;
    let (radius, rest) = rest.split_once(']').ok_or_else(|| bad("ball", text))?;
    let center = rest
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| bad("ball", text))?;
    Ok((radius, center))
}

/// `B[>=q](c)`, `B[>q](c)`, `B[point](c)`, `B[all](c)`.
pub fn parse_ball(text: &str, prec: &Precision) -> Result<Ball> {
    let rest = text.trim().strip_prefix('B').ok_or_else(|| bad("ball", text))?;
    let (radius, center) = radius_and_center(rest, text)?;
    Ball::new(parse_element(center, prec)?, parse_radius(radius)?)
}

/// A ball of points: `B[r](a, b, ...)`.
pub fn parse_point_ball(text: &str, prec: &Precision) -> Result<Ball<Point>> {
    let rest = text.trim().strip_prefix('B').ok_or_else(|| bad("ball", text))?;
    let (radius, center) = radius_and_center(rest, text)?;
    Ball::new(parse_point(center, prec)?, parse_radius(radius)?)
}

/// `-inf`, `+inf`, `cut+(a)`, `cut-(a)`, `ball+[r](c)`, `ball-[r](c)`.
pub fn parse_cut(text: &str, prec: &Precision) -> Result<Cut> {
    let t = text.trim();
    match t {
        "-inf" => return Ok(Cut::MinusInfinity),
        "+inf" | "inf" => return Ok(Cut::PlusInfinity),
        _ => {}
    }
    fn side<'s>(s: &'s str, text: &str) -> Result<(Side, &'s str)> {
        match s.chars().next() {
            Some('+') => Ok((Side::Plus, &s[1..])),
            Some('-') => Ok((Side::Minus, &s[1..])),
            _ => Err(bad("cut", text)),
        }
    }
    if let Some(rest) = t.strip_prefix("cut") {
        let (s, rest) = side(rest, text)?;
        let at = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("cut", text))?;
        return Cut::principal(parse_element(at, prec)?, s);
    }
    if let Some(rest) = t.strip_prefix("ball") {
        let (s, rest) = side(rest, text)?;
        let (radius, center) = radius_and_center(rest, text)?;
        let ball = Ball::new(parse_element(center, prec)?, parse_radius(radius)?)?;
        return Ok(Cut::ball_edge(ball, s));
    }
    Err(bad("cut", text))
}

//! Real roots of polynomials over `K`: Sturm counting, isolation guided by
//! the Newton polygon, and monotonic decomposition of rational functions.

mod laurent;
mod ratpoly;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{RationalFn, SeriesPoly};
use crate::series::rat::{rat, ratio, Rat};
use crate::series::{Exponent, GroupMode, Series};
use ratpoly::{edge_roots, RatPoly};

/// Deep enough for clusters of roots sharing many leading terms.
const MAX_DEPTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    PosInf,
    At(Series),
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => write!(f, "-inf"),
            Endpoint::PosInf => write!(f, "+inf"),
            Endpoint::At(s) => write!(f, "{s}"),
        }
    }
}

/// Half-open interval `(lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

impl Interval {
    pub fn new(lo: Endpoint, hi: Endpoint) -> Self {
        Interval { lo, hi }
    }

    pub fn line() -> Self {
        Interval::new(Endpoint::NegInf, Endpoint::PosInf)
    }

    pub fn between(lo: Series, hi: Series) -> Self {
        Interval::new(Endpoint::At(lo), Endpoint::At(hi))
    }
}

/// Counting intervals are half-open, `(lo, hi]`.
impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let close = if matches!(self.hi, Endpoint::At(_)) { ']' } else { ')' };
        write!(f, "({}, {}{close}", self.lo, self.hi)
    }
}

/// One real root: an isolating open bracket, plus the exact value when it
/// is known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub lo: Series,
    pub hi: Series,
    pub exact: Option<Series>,
}

impl Root {
    pub fn interval(&self) -> Interval {
        Interval::between(self.lo.clone(), self.hi.clone())
    }

    fn shifted(self, s: &Series) -> Result<Root> {
        Ok(Root {
            lo: self.lo.add(s)?,
            hi: self.hi.add(s)?,
            exact: self.exact.map(|e| e.add(s)).transpose()?,
        })
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "root in ({}, {})", self.lo, self.hi),
        }
    }
}

/// Signed remainder chain `p, p', -rem(p, p'), ...`, each entry a
/// positive multiple of the true remainder.
///
/// For exact coefficients in `K` the chain comes from the subresultant
/// remainder sequence, whose coefficients stay small; the sign of each
/// scaling factor is tracked alongside. Otherwise remainders are taken with
/// an even power of the divisor's leading coefficient, which keeps their
/// signs without any division. The chain is not reduced by the gcd of `p`
/// and `p'`; the variation count still equals the number of distinct roots.
pub fn sturm_chain(p: &SeriesPoly) -> Result<Vec<SeriesPoly>> {
    if p.checked_degree()?.is_none() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    let d = p.derivative();
    if d.checked_degree()?.is_none() {
        return Ok(vec![p.clone()]);
    }
    if let Some(chain) = laurent::exact_sturm_chain(p) {
        return Ok(chain);
    }
    let mut chain = vec![p.clone(), positive_part(&d)];
    loop {
        let n = chain.len();
        let r = chain[n - 2].sign_preserving_prem(&chain[n - 1])?.neg();
        if r.checked_degree()?.is_none() {
            return Ok(chain);
        }
        chain.push(positive_part(&r));
    }
}

/// Divides out the positive content of `p`: the smallest power of `eps`
/// among its coefficients and the rational content of all their terms.
/// Both are positive, so no sign changes, and remainder chains stay small.
fn positive_part(p: &SeriesPoly) -> SeriesPoly {
    let mode = p.mode();
    let exact = mode == GroupMode::AuxInfinitesimal
        && p.coeffs().iter().all(|c| c.is_exact() && c.is_pure());
    if !exact || p.is_zero() {
        return p.clone();
    }
    let terms = || p.coeffs().iter().flat_map(|c| c.terms().iter());
    let low = terms().map(|(e, _)| e.base.clone()).min().unwrap_or_else(|| rat(0));
    let (num, den) = terms().fold((BigInt::zero(), BigInt::one()), |(n, d), (_, c)| {
        (n.gcd(c.numer()), d.lcm(c.denom()))
    });
    let content = Rat::new(num, den);
    let shift = Exponent::base(-low);
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| c.shift(&shift).scale(&(Rat::one() / &content)))
        .collect();
    SeriesPoly::new(coeffs, mode).unwrap_or_else(|_| p.clone())
}

fn sign_at(p: &SeriesPoly, at: &Endpoint) -> Result<i8> {
    let lc = || -> Result<i8> { p.leading().map_or(Ok(0), Series::sign) };
    match at {
        Endpoint::At(x) => p.eval(x)?.sign(),
        Endpoint::PosInf => lc(),
        Endpoint::NegInf => {
            let deg = p.degree().unwrap_or(0);
            Ok(if deg % 2 == 0 { lc()? } else { -lc()? })
        }
    }
}

fn variations(chain: &[SeriesPoly], at: &Endpoint) -> Result<usize> {
    let mut signs = Vec::with_capacity(chain.len());
    for q in chain {
        let s = sign_at(q, at)?;
        if s != 0 {
            signs.push(s);
        }
    }
    Ok(signs.windows(2).filter(|w| w[0] != w[1]).count())
}

/// Number of distinct roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &SeriesPoly, iv: &Interval) -> Result<usize> {
    let chain = sturm_chain(p)?;
    let (a, b) = (variations(&chain, &iv.lo)?, variations(&chain, &iv.hi)?);
    Ok(a.saturating_sub(b))
}

fn eps_pow(g: &Rat) -> Series {
    Series::monomial(rat(1), Exponent::base(g.clone()), GroupMode::AuxInfinitesimal)
}

fn scaled(c: &Rat, g: &Rat) -> Series {
    Series::monomial(c.clone(), Exponent::base(g.clone()), GroupMode::AuxInfinitesimal)
}

/// Lower convex hull edges of the Newton polygon as `(root valuation,
/// edge polynomial)`.
fn newton_edges(points: &[(usize, Rat, Rat)]) -> Vec<(Rat, RatPoly)> {
    let mut hull: Vec<&(usize, Rat, Rat)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below the segment a -> pt
            let lhs = (&b.1 - &a.1) * rat((pt.0 - a.0) as i64);
            let rhs = (&pt.1 - &a.1) * rat((b.0 - a.0) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let slope = (&b.1 - &a.1) / rat((b.0 - a.0) as i64);
            let mut coeffs = vec![Rat::zero(); b.0 - a.0 + 1];
            for pt in points.iter().filter(|p| p.0 >= a.0 && p.0 <= b.0) {
                if pt.1 == &a.1 + &slope * rat((pt.0 - a.0) as i64) {
                    coeffs[pt.0 - a.0] = pt.2.clone();
                }
            }
            (-slope, RatPoly::new(coeffs))
        })
        .collect()
}

fn require_pure(p: &SeriesPoly) -> Result<()> {
    let pure = p.mode() == GroupMode::AuxInfinitesimal && p.coeffs().iter().all(Series::is_pure);
    if pure {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} does not have coefficients in K")))
    }
}

/// Roots of valuation above `floor` (all roots when `None`).
fn roots_above(p: &SeriesPoly, floor: Option<&Rat>, depth: usize) -> Result<Vec<Root>> {
    if depth > MAX_DEPTH {
        return Err(Error::RootsNotSeparable(format!(
            "root cluster of {p} not separated after {MAX_DEPTH} refinements"
        )));
    }
    let mode = p.mode();
    let mut coeffs = p.coeffs().to_vec();
    let mut zero_root = false;
    while coeffs.first().is_some_and(Series::is_exact_zero) {
        coeffs.remove(0);
        zero_root = true;
    }
    if coeffs.is_empty() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    let q = SeriesPoly::new(coeffs, mode)?;

    let mut points = Vec::new();
    for (i, c) in q.coeffs().iter().enumerate() {
        if c.is_exact_zero() {
            continue;
        }
        let (e, lc) = c
            .leading()
            .ok_or_else(|| Error::indeterminate(format!("coefficient {c} may vanish")))?;
        points.push((i, e.base.clone(), lc.clone()));
    }
    let edges = newton_edges(&points);

    let mut out = Vec::new();
    for (g, e) in edges.iter().filter(|(g, _)| floor.is_none_or(|f| g > f)) {
        for er in edge_roots(e) {
            let lo = scaled(&er.lo, g);
            let hi = scaled(&er.hi, g);
            match (&er.exact, er.simple) {
                (Some(c), true) => {
                    let at = scaled(c, g);
                    let exact = q.eval(&at)?.is_exact_zero().then_some(at);
                    out.push(Root { lo, hi, exact });
                }
                (Some(c), false) => {
                    let s = scaled(c, g);
                    for r in roots_above(&q.shifted(&s)?, Some(g), depth + 1)? {
                        out.push(r.shifted(&s)?);
                    }
                }
                (None, true) => out.push(Root { lo, hi, exact: None }),
                (None, false) => match sturm_count(&q, &Interval::between(lo.clone(), hi.clone()))? {
                    0 => {}
                    1 => out.push(Root { lo, hi, exact: None }),
                    n => {
                        return Err(Error::RootsNotSeparable(format!(
                            "{n} roots share an irrational leading term near {lo}"
                        )))
                    }
                },
            }
        }
    }

    if zero_root {
        let top = edges
            .iter()
            .map(|(g, _)| g.clone())
            .chain(floor.cloned())
            .max()
            .unwrap_or_else(Rat::zero);
        let w = eps_pow(&(top + rat(1)));
        out.push(Root {
            lo: w.neg(),
            hi: w,
            exact: Some(Series::zero(mode)),
        });
    }
    sort_roots(&mut out)?;
    Ok(out)
}

fn sort_roots(roots: &mut [Root]) -> Result<()> {
    let mut err = None;
    roots.sort_by(|a, b| {
        a.lo.compare(&b.lo).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Ordering::Equal
        })
    });
    err.map_or(Ok(()), Err)
}

/// Every real root of `p`, sorted, with pairwise disjoint brackets.
pub fn all_roots(p: &SeriesPoly) -> Result<Vec<Root>> {
    require_pure(p)?;
    if p.checked_degree()?.is_none() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    roots_above(p, None, 0)
}

fn lt(a: &Endpoint, b: &Series) -> Result<bool> {
    Ok(match a {
        Endpoint::NegInf => true,
        Endpoint::PosInf => false,
        Endpoint::At(x) => x.compare(b)? == Ordering::Less,
    })
}

fn gt(a: &Endpoint, b: &Series) -> Result<bool> {
    Ok(match a {
        Endpoint::NegInf => false,
        Endpoint::PosInf => true,
        Endpoint::At(x) => x.compare(b)? == Ordering::Greater,
    })
}

/// Isolating brackets for the roots of `p` in `(lo, hi]`.
pub fn isolate_roots(p: &SeriesPoly, iv: &Interval) -> Result<Vec<Root>> {
    let mut out = Vec::new();
    for r in all_roots(p)? {
        if let Some(x) = &r.exact {
            if lt(&iv.lo, x)? && !lt(&iv.hi, x)? {
                out.push(r);
            }
            continue;
        }
        // bracket entirely outside
        if !gt(&iv.hi, &r.lo)? || !lt(&iv.lo, &r.hi)? {
            continue;
        }
        let lo = match &iv.lo {
            Endpoint::At(x) if x.compare(&r.lo)? == Ordering::Greater => x.clone(),
            _ => r.lo.clone(),
        };
        let hi = match &iv.hi {
            Endpoint::At(x) if x.compare(&r.hi)? == Ordering::Less => x.clone(),
            _ => r.hi.clone(),
        };
        if lo == r.lo && hi == r.hi {
            out.push(r);
        } else if sturm_count(p, &Interval::between(lo.clone(), hi.clone()))? == 1 {
            out.push(Root { lo, hi, exact: None });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
        })
    }
}

/// A pole of `f` or a sign change of `f'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Breakpoint {
    pub root: Root,
    pub pole: bool,
}

/// An open piece between consecutive breakpoints (`None` is `-inf` or
/// `+inf`), with a sample point inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub lower: Option<Breakpoint>,
    pub upper: Option<Breakpoint>,
    pub direction: Direction,
    pub sample: Series,
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = |b: &Option<Breakpoint>, inf: &str| match b {
            None => inf.to_string(),
            Some(b) => b.root.to_string(),
        };
        write!(
            f,
            "({}, {}): {}",
            end(&self.lower, "-inf"),
            end(&self.upper, "+inf"),
            self.direction
        )
    }
}

/// Splits the line into maximal open pieces on which `f` has no pole and
/// is strictly monotone.
pub fn monotonic_decomposition(f: &RationalFn) -> Result<Vec<Piece>> {
    let g = f.derivative_numerator()?;
    if g.checked_degree()?.is_none() {
        return Err(Error::InvalidInput(format!("{f} is constant")));
    }
    let den = f.denominator();
    let roots = all_roots(&den.mul(&g)?)?;

    let mut breaks = Vec::with_capacity(roots.len());
    for r in roots {
        let pole = match &r.exact {
            Some(x) => den.eval(x)?.is_exact_zero(),
            None => den.degree().unwrap_or(0) > 0 && sturm_count(den, &r.interval())? > 0,
        };
        breaks.push(Breakpoint { root: r, pole });
    }

    let half = ratio(1, 2);
    let mut samples = Vec::with_capacity(breaks.len() + 1);
    match (breaks.first(), breaks.last()) {
        (Some(first), Some(last)) => {
            samples.push(first.root.lo.sub(&Series::one(first.root.lo.mode()))?);
            for w in breaks.windows(2) {
                samples.push(w[0].root.hi.add(&w[1].root.lo)?.scale(&half));
            }
            samples.push(last.root.hi.add(&Series::one(last.root.hi.mode()))?);
        }
        _ => samples.push(Series::zero(GroupMode::AuxInfinitesimal)),
    }
    let mut dirs = Vec::with_capacity(samples.len());
    for s in &samples {
        dirs.push(match g.eval(s)?.sign()? {
            1 => Direction::Increasing,
            -1 => Direction::Decreasing,
            _ => return Err(Error::indeterminate(format!("derivative vanishes at sample {s}"))),
        });
    }

    // merge across breakpoints that are neither poles nor turning points
    let mut pieces: Vec<Piece> = Vec::new();
    let mut lower: Option<Breakpoint> = None;
    let mut start = 0;
    for (i, b) in breaks.iter().enumerate() {
        if !b.pole && dirs[i] == dirs[i + 1] {
            continue;
        }
        pieces.push(Piece {
            lower: lower.take(),
            upper: Some(b.clone()),
            direction: dirs[start],
            sample: samples[start].clone(),
        });
        lower = Some(b.clone());
        start = i + 1;
    }
    pieces.push(Piece {
        lower,
        upper: None,
        direction: dirs[start],
        sample: samples[start].clone(),
    });
    Ok(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;

    const K: GroupMode = GroupMode::AuxInfinitesimal;

    fn s(n: i64) -> Series {
        Series::int(n, K)
    }

    fn poly(c: Vec<Series>) -> SeriesPoly {
        SeriesPoly::new(c, K).unwrap()
    }

    fn eps() -> Series {
        Series::eps(K)
    }

    #[test]
    fn counts() {
        let p = poly(vec![eps().neg(), s(0), s(1)]);
        assert_eq!(sturm_count(&p, &Interval::between(s(0), s(1))).unwrap(), 1);
        let q = poly(vec![s(1), s(0), s(1)]);
        assert_eq!(sturm_count(&q, &Interval::line()).unwrap(), 0);
        let r = SeriesPoly::from_roots(&[s(1), s(2)], K).unwrap();
        assert_eq!(sturm_count(&r, &Interval::between(s(0), s(3))).unwrap(), 2);
    }

    #[test]
    fn repeated_roots_counted_once() {
        let p = SeriesPoly::from_roots(&[eps(), eps(), s(1)], K).unwrap();
        assert_eq!(sturm_count(&p, &Interval::line()).unwrap(), 2);
    }

    #[test]
    fn isolation_by_valuation() {
        let p = poly(vec![eps().neg(), s(0), s(1)]);
        let roots = isolate_roots(&p, &Interval::line()).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let a = p.eval(&r.lo).unwrap().sign().unwrap();
            let b = p.eval(&r.hi).unwrap().sign().unwrap();
            assert_eq!(a * b, -1);
        }
        let q = poly(vec![s(1), s(0), s(1)]);
        assert!(isolate_roots(&q, &Interval::line()).unwrap().is_empty());
        let lin = poly(vec![s(-3), s(1)]);
        let roots = isolate_roots(&lin, &Interval::line()).unwrap();
        assert_eq!(roots[0].exact, Some(s(3)));
    }

    #[test]
    fn clustered_roots_separate() {
        // 1, 1 + eps, 1 + eps + eps^2 share leading terms
        let e = eps();
        let e2 = e.mul(&e).unwrap();
        let rs = [s(1), s(1).add(&e).unwrap(), s(1).add(&e).unwrap().add(&e2).unwrap()];
        let p = SeriesPoly::from_roots(&rs, K).unwrap();
        let roots = all_roots(&p).unwrap();
        let exact: Vec<_> = roots.iter().map(|r| r.exact.clone().unwrap()).collect();
        assert_eq!(exact, rs.to_vec());
    }

    #[test]
    fn interval_filter() {
        let p = SeriesPoly::from_roots(&[s(-1), eps(), s(2)], K).unwrap();
        let iv = Interval::between(s(0), s(1));
        let roots = isolate_roots(&p, &iv).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact, Some(eps()));
    }

    #[test]
    fn decompositions() {
        let x2 = RationalFn::x(K).powi(2).unwrap();
        let d = monotonic_decomposition(&x2).unwrap();
        let dirs: Vec<_> = d.iter().map(|p| p.direction).collect();
        assert_eq!(dirs, vec![Direction::Decreasing, Direction::Increasing]);

        let inv = RationalFn::x(K).powi(-1).unwrap();
        let d = monotonic_decomposition(&inv).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.iter().all(|p| p.direction == Direction::Decreasing));
        assert!(d[0].upper.as_ref().unwrap().pole);

        // x^3 - 3 eps^2 x
        let e2 = eps().mul(&eps()).unwrap();
        let f = RationalFn::poly(poly(vec![s(0), e2.scale(&rat(-3)), s(0), s(1)]));
        let d = monotonic_decomposition(&f).unwrap();
        let dirs: Vec<_> = d.iter().map(|p| p.direction).collect();
        assert_eq!(
            dirs,
            vec![Direction::Increasing, Direction::Decreasing, Direction::Increasing]
        );
        assert_eq!(d[0].upper.as_ref().unwrap().root.exact, Some(eps().neg()));
        assert_eq!(d[1].upper.as_ref().unwrap().root.exact, Some(eps()));
    }

    #[test]
    fn odd_multiplicity_turning_points_only() {
        // f = x^3 has f' = 3x^2, no turning point
        let f = RationalFn::x(K).powi(3).unwrap();
        let d = monotonic_decomposition(&f).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].direction, Direction::Increasing);
    }
}

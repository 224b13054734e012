//! Ultrametric distance `d(a, b) = v(b - a)`, balls with cut-valued radii,
//! and the `d_p` family on affine space.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::rat::{fmt_rat, Rat};
use crate::series::{Exponent, GroupMode, Series, Valuation};

/// Distances between elements of `K` are pure exponents, compared base-first.
const K_MODE: GroupMode = GroupMode::AuxInfinitesimal;

/// `d(a, b) = v(b - a)`; `+inf` iff `a = b` exactly.
pub fn dist(a: &Series, b: &Series) -> Result<Valuation> {
    b.sub(a)?.valuation()
}

/// Which `d_p` to use on affine space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PNorm {
    Finite(u32),
    Infinity,
}

impl fmt::Display for PNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PNorm::Finite(p) => write!(f, "{p}"),
            PNorm::Infinity => write!(f, "inf"),
        }
    }
}

/// A point of affine `n`-space over `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    coords: Vec<Series>,
}

impl Point {
    pub fn new(coords: Vec<Series>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::InvalidInput("a point needs at least one coordinate".into()));
        };
        if coords.iter().any(|c| c.mode() != first.mode()) {
            return Err(Error::IncompatibleModes);
        }
        Ok(Point { coords })
    }

    pub fn origin(n: usize, mode: GroupMode) -> Self {
        Point {
            coords: vec![Series::zero(mode); n.max(1)],
        }
    }

    pub fn coords(&self) -> &[Series] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn mode(&self) -> GroupMode {
        self.coords[0].mode()
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim(), other.dim()))
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `d_p(P, Q) = v(sum |x_i - y_i|^p) / p`, and `d_inf = min v(x_i - y_i)`.
pub fn dist_p(p_pt: &Point, q_pt: &Point, p: PNorm) -> Result<Valuation> {
    p_pt.check_dim(q_pt)?;
    let mode = p_pt.mode();
    match p {
        PNorm::Infinity => {
            let mut best = Valuation::Infinity;
            for (x, y) in p_pt.coords.iter().zip(&q_pt.coords) {
                let d = dist(x, y)?;
                if d.cmp_in(&best, mode) == Ordering::Less {
                    best = d;
                }
            }
            Ok(best)
        }
        PNorm::Finite(0) => Err(Error::InvalidInput("p must be positive".into())),
        PNorm::Finite(p) => {
            let mut sum = Series::zero(mode);
            for (x, y) in p_pt.coords.iter().zip(&q_pt.coords) {
                let diff = y.sub(x)?.abs()?;
                let mut pow = Series::one(mode);
                for _ in 0..p {
                    pow = pow.mul(&diff)?;
                }
                sum = sum.add(&pow)?;
            }
            Ok(sum.valuation()?.scale(&Rat::new(1.into(), p.into())))
        }
    }
}

/// Things with an ultrametric distance.
pub trait Metric {
    fn distance(&self, other: &Self) -> Result<Valuation>;
    fn is_base_element(&self) -> bool;
}

impl Metric for Series {
    fn distance(&self, other: &Self) -> Result<Valuation> {
        dist(self, other)
    }

    fn is_base_element(&self) -> bool {
        self.mode() == K_MODE && self.is_pure()
    }
}

impl Metric for Point {
    fn distance(&self, other: &Self) -> Result<Valuation> {
        dist_p(self, other, PNorm::Infinity)
    }

    fn is_base_element(&self) -> bool {
        self.coords.iter().all(|c| c.is_base_element())
    }
}

/// Radius of a ball: an upper set of the value group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupCut {
    /// `{g >= gamma}`
    AtLeast(Exponent),
    /// `{g > gamma}`
    GreaterThan(Exponent),
    /// `{g > 0}`; the ball of radius `AllPositive` around `a` is `a + I_K`.
    AllPositive,
    /// The whole group; the ball is all of `K`.
    All,
    /// The empty upper set; the ball is `{a}`.
    Singleton,
}

/// Position of the lower boundary of an upper set, ordered so that a larger
/// bound means a smaller set.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Bound {
    Bottom,
    Closed(Exponent),
    Open(Exponent),
    Top,
}

impl Bound {
    fn cmp(&self, other: &Bound) -> Ordering {
        use Bound::*;
        let rank = |b: &Bound| match b {
            Bottom => 0,
            Closed(_) | Open(_) => 1,
            Top => 2,
        };
        match (self, other) {
            (Closed(a) | Open(a), Closed(b) | Open(b)) => a.cmp_in(b, K_MODE).then_with(|| {
                let open = |b: &Bound| matches!(b, Open(_));
                open(self).cmp(&open(other))
            }),
            _ => rank(self).cmp(&rank(other)),
        }
    }
}

impl GroupCut {
    pub fn at_least(q: Rat) -> Self {
        GroupCut::AtLeast(Exponent::base(q))
    }

    /// `{g > q}`, written `AllPositive` when `q = 0`.
    pub fn greater_than(q: Rat) -> Self {
        if q.is_zero() {
            GroupCut::AllPositive
        } else {
            GroupCut::GreaterThan(Exponent::base(q))
        }
    }

    fn bound(&self) -> Bound {
        match self {
            GroupCut::AtLeast(g) => Bound::Closed(g.clone()),
            GroupCut::GreaterThan(g) => Bound::Open(g.clone()),
            GroupCut::AllPositive => Bound::Open(Exponent::zero()),
            GroupCut::All => Bound::Bottom,
            GroupCut::Singleton => Bound::Top,
        }
    }

    /// Does the upper set contain the valuation (`+inf` always counts)?
    pub fn contains(&self, v: &Valuation) -> bool {
        let Valuation::Finite(g) = v else {
            return true;
        };
        match self.bound() {
            Bound::Bottom => true,
            Bound::Top => false,
            Bound::Closed(b) => !g.lt_in(&b, K_MODE),
            Bound::Open(b) => b.lt_in(g, K_MODE),
        }
    }

    /// Same upper set (`AllPositive` equals `GreaterThan(0)`).
    pub fn same_set(&self, other: &GroupCut) -> bool {
        self.bound().cmp(&other.bound()) == Ordering::Equal
    }

    /// `self` is contained in `other` as a set.
    pub fn is_subset(&self, other: &GroupCut) -> bool {
        self.bound().cmp(&other.bound()) != Ordering::Less
    }

    /// The radius scaled by a positive rational: `{k g : g in U}`.
    pub fn scale(&self, k: &Rat) -> GroupCut {
        match self {
            GroupCut::AtLeast(g) => GroupCut::AtLeast(g.scale(k)),
            GroupCut::GreaterThan(g) => GroupCut::GreaterThan(g.scale(k)),
            other => other.clone(),
        }
    }

    /// The boundary exponent of `AtLeast` and `GreaterThan`.
    pub fn exponent(&self) -> Option<&Exponent> {
        match self {
            GroupCut::AtLeast(g) | GroupCut::GreaterThan(g) => Some(g),
            _ => None,
        }
    }
}

impl fmt::Display for GroupCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = |e: &Exponent| {
            if e.is_pure() {
                fmt_rat(&e.base)
            } else {
                format!("({},{})", fmt_rat(&e.base), fmt_rat(&e.aux))
            }
        };
        match self {
            GroupCut::AtLeast(e) => write!(f, ">={}", g(e)),
            GroupCut::GreaterThan(e) => write!(f, ">{}", g(e)),
            GroupCut::AllPositive => write!(f, ">0"),
            GroupCut::All => write!(f, "all"),
            GroupCut::Singleton => write!(f, "point"),
        }
    }
}

/// How two balls sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallRelation {
    Disjoint,
    /// The first ball is a proper subset of the second.
    FirstInSecond,
    /// The second ball is a proper subset of the first.
    SecondInFirst,
    Equal,
}

/// Ultrametric ball `B_U(a) = {b : d(a, b) in U or d(a, b) = inf}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball<C = Series> {
    center: C,
    radius: GroupCut,
}

impl<C: Metric> Ball<C> {
    /// Center must lie in `K` (no `t` terms) and radius in the value group
    /// of `K` (pure exponents).
    pub fn new(center: C, radius: GroupCut) -> Result<Self> {
        if !center.is_base_element() {
            return Err(Error::InvalidInput(
                "ball centers must be elements of the base field".into(),
            ));
        }
        if radius.exponent().is_some_and(|g| !g.is_pure()) {
            return Err(Error::InvalidInput(
                "ball radii must lie in the value group of the base field".into(),
            ));
        }
        Ok(Ball { center, radius })
    }

    pub fn center(&self) -> &C {
        &self.center
    }

    pub fn radius(&self) -> &GroupCut {
        &self.radius
    }

    pub fn contains(&self, q: &C) -> Result<bool> {
        if matches!(self.radius, GroupCut::All) {
            return Ok(true);
        }
        Ok(self.radius.contains(&self.center.distance(q)?))
    }

    /// The same ball with another member as its center.
    pub fn recentered(&self, member: C) -> Result<Self> {
        if !self.contains(&member)? {
            return Err(Error::InvalidInput("new center is not a member of the ball".into()));
        }
        Ball::new(member, self.radius.clone())
    }

    pub fn relation(&self, other: &Ball<C>) -> Result<BallRelation> {
        let (r1, r2) = (&self.radius, &other.radius);
        if matches!(r1, GroupCut::All) || matches!(r2, GroupCut::All) {
            return Ok(match (r1.same_set(r2), matches!(r1, GroupCut::All)) {
                (true, _) => BallRelation::Equal,
                (false, true) => BallRelation::SecondInFirst,
                (false, false) => BallRelation::FirstInSecond,
            });
        }
        let d = self.center.distance(&other.center)?;
        Ok(match self.radius.bound().cmp(&other.radius.bound()) {
            Ordering::Equal if r1.contains(&d) => BallRelation::Equal,
            Ordering::Greater if r2.contains(&d) => BallRelation::FirstInSecond,
            Ordering::Less if r1.contains(&d) => BallRelation::SecondInFirst,
            _ => BallRelation::Disjoint,
        })
    }

    pub fn same_ball(&self, other: &Ball<C>) -> Result<bool> {
        Ok(self.relation(other)? == BallRelation::Equal)
    }
}

impl Ball<Series> {
    /// The whole field.
    pub fn everything() -> Self {
        Ball {
            center: Series::zero(K_MODE),
            radius: GroupCut::All,
        }
    }

    pub fn singleton(a: Series) -> Result<Self> {
        Ball::new(a, GroupCut::Singleton)
    }
}

impl<C: fmt::Display> fmt::Display for Ball<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B[{}]({})", self.radius, self.center)
    }
}

/// `B[>=1/2](...)` radius syntax: `>=q`, `>q`, `point`, `all`.
pub fn parse_radius(text: &str) -> Result<GroupCut> {
    let text = text.trim();
    if text == "point" {
        Ok(GroupCut::Singleton)
    } else if text == "all" {
        Ok(GroupCut::All)
    } else if let Some(q) = text.strip_prefix(">=") {
        Ok(GroupCut::at_least(crate::series::rat::parse_rat(q)?))
    } else if let Some(q) = text.strip_prefix('>') {
        Ok(GroupCut::greater_than(crate::series::rat::parse_rat(q)?))
    } else {
        Err(Error::InvalidInput(format!("bad ball radius `{text}`")))
    }
}

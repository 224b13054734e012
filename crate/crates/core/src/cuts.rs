//! Cuts of the base field that are edges of ultrametric balls, and the cut
//! of `K` determined by an element of an ordered extension.
//!
//! Side convention: `B+` has lower set `lo(B) = {c : c in B or c < B}`,
//! `B-` has upper set `up(B) = {c : c in B or c > B}`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::series::{GroupMode, Series};
use crate::ultrametric::{Ball, GroupCut};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn from_sign(sign: i8) -> Side {
        if sign > 0 {
            Side::Plus
        } else {
            Side::Minus
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Side::Minus => '-',
            Side::Plus => '+',
        }
    }
}

/// Where an element of `K` sits relative to a cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Below,
    Above,
}

/// A cut `(L, U)` of `K` with a finite description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cut {
    /// `(empty, K)`
    MinusInfinity,
    /// `(K, empty)`
    PlusInfinity,
    /// Immediately above (`Plus`) or below (`Minus`) the element.
    Principal { at: Series, side: Side },
    /// Upper (`Plus`) or lower (`Minus`) edge of a ball.
    BallEdge { ball: Ball, side: Side },
}

impl Cut {
    pub fn principal(at: Series, side: Side) -> Result<Cut> {
        // validates that `at` lies in K
        Ball::singleton(at.clone())?;
        Ok(Cut::Principal { at, side })
    }

    pub fn ball_edge(ball: Ball, side: Side) -> Cut {
        Cut::BallEdge { ball, side }
    }

    /// The cut as an edge of a ball: `+-inf` are the edges of `K` itself,
    /// principal cuts are the edges of a singleton.
    pub fn as_ball_edge(&self) -> Result<(Ball, Side)> {
        Ok(match self {
            Cut::MinusInfinity => (Ball::everything(), Side::Minus),
            Cut::PlusInfinity => (Ball::everything(), Side::Plus),
            Cut::Principal { at, side } => (Ball::singleton(at.clone())?, *side),
            Cut::BallEdge { ball, side } => (ball.clone(), *side),
        })
    }

    /// Collapses the degenerate ball edges onto `+-inf` and principal cuts.
    pub fn normalized(&self) -> Cut {
        match self {
            Cut::BallEdge { ball, side } => match ball.radius() {
                GroupCut::All => match side {
                    Side::Minus => Cut::MinusInfinity,
                    Side::Plus => Cut::PlusInfinity,
                },
                GroupCut::Singleton => Cut::Principal {
                    at: ball.center().clone(),
                    side: *side,
                },
                _ => self.clone(),
            },
            other => other.clone(),
        }
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cut::MinusInfinity => write!(f, "-inf"),
            Cut::PlusInfinity => write!(f, "+inf"),
            Cut::Principal { at, side } => write!(f, "cut{}({at})", side.symbol()),
            Cut::BallEdge { ball, side } => {
                write!(f, "ball{}[{}]({})", side.symbol(), ball.radius(), ball.center())
            }
        }
    }
}

/// Is `c` in the lower or the upper set of `cut`?
pub fn element_vs_cut(c: &Series, cut: &Cut) -> Result<Position> {
    let below = |yes: bool| if yes { Position::Below } else { Position::Above };
    Ok(match cut {
        Cut::MinusInfinity => Position::Above,
        Cut::PlusInfinity => Position::Below,
        Cut::Principal { at, side } => {
            let ord = c.compare(at)?;
            match side {
                Side::Plus => below(ord != Ordering::Greater),
                Side::Minus => below(ord == Ordering::Less),
            }
        }
        Cut::BallEdge { ball, side } => {
            if matches!(ball.radius(), GroupCut::All) {
                return Ok(below(*side == Side::Plus));
            }
            let inside = ball.contains(c)?;
            let under = !inside && c.compare(ball.center())? == Ordering::Less;
            match side {
                Side::Plus => below(inside || under),
                Side::Minus => below(under),
            }
        }
    })
}

/// Same cut of `K`, identifying principal cuts with singleton-ball edges and
/// `+-inf` with the edges of the whole field.
pub fn cut_equal(a: &Cut, b: &Cut) -> Result<bool> {
    let (ball_a, side_a) = a.as_ball_edge()?;
    let (ball_b, side_b) = b.as_ball_edge()?;
    Ok(side_a == side_b && ball_a.same_ball(&ball_b)?)
}

/// The cut of `K` filled by `w`, an element of the two-level extension.
///
/// With the base component compared first, write
/// `w = c + s eps^(q,r) + ...` where `c` collects the pure terms before the
/// first mixed one. Then `r > 0` puts `w` just outside `B_{>q}(c)` and
/// `r < 0` just outside `B_{>=q}(c)`, above when `s > 0`.
///
/// With the auxiliary component compared first, `w` is either infinitely
/// large (`+-inf`) or infinitely close to its pure part `c` (a principal
/// cut at `c`).
pub fn induced_cut(w: &Series) -> Result<Cut> {
    match w.mode() {
        GroupMode::AuxInfinitesimal => induced_ball_cut(w),
        GroupMode::AuxDominant => induced_principal_cut(w),
    }
}

fn no_mixed_term(w: &Series) -> Error {
    if w.is_exact() {
        Error::PureElement
    } else {
        Error::indeterminate(format!("no mixed term visible in {w}"))
    }
}

fn induced_ball_cut(w: &Series) -> Result<Cut> {
    let mode = w.mode();
    let mut center = Vec::new();
    for (e, coeff) in w.terms() {
        if e.aux.is_zero() {
            center.push((e.clone(), coeff.clone()));
            continue;
        }
        let radius = if e.aux.is_positive() {
            GroupCut::greater_than(e.base.clone())
        } else {
            GroupCut::at_least(e.base.clone())
        };
        let ball = Ball::new(Series::from_terms(mode, center, None), radius)?;
        let side = if coeff.is_positive() { Side::Plus } else { Side::Minus };
        return Ok(Cut::BallEdge { ball, side });
    }
    Err(no_mixed_term(w))
}

fn induced_principal_cut(w: &Series) -> Result<Cut> {
    if let Some((e, coeff)) = w.leading() {
        if e.aux.is_negative() {
            return Ok(if coeff.is_positive() {
                Cut::PlusInfinity
            } else {
                Cut::MinusInfinity
            });
        }
    }
    // The pure part must be known completely to name the principal cut.
    if w.error_order().is_some_and(|err| !err.aux.is_positive()) {
        return Err(Error::indeterminate(format!("pure part of {w} is truncated")));
    }
    let mut center = Vec::new();
    for (e, coeff) in w.terms() {
        if e.aux.is_zero() {
            center.push((e.clone(), coeff.clone()));
            continue;
        }
        let at = Series::from_terms(GroupMode::AuxInfinitesimal, center, None);
        let side = if coeff.is_positive() { Side::Plus } else { Side::Minus };
        return Cut::principal(at, side);
    }
    Err(no_mixed_term(w))
}

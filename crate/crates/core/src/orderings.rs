//! Orderings and R-places of `K(x)` induced by cuts of `K`.
//!
//! A cut is realized by an explicit value of `x` in the two-level extension;
//! the ordering's sign of `f` is then the sign of `f(point)` and the R-place
//! value is its standard part.

use std::cmp::Ordering;

use crate::cuts::{Cut, Position, Side};
use crate::error::{Error, Result};
use crate::poly::{RationalFn, SeriesPoly};
use crate::series::rat::rat;
use crate::series::{Exponent, GroupMode, Precision, Series, StdPart};
use crate::ultrametric::GroupCut;

/// A cut together with the point of the extension that fills it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub cut: Cut,
    pub point: Series,
    pub mode: GroupMode,
}

fn signed(s: Series, side: Side) -> Series {
    match side {
        Side::Plus => s,
        Side::Minus => s.neg(),
    }
}

/// Picks the realization point of a cut.
///
/// Ball edges live in the mode where the base component dominates;
/// principal cuts and `+-inf` need an element beyond every rational radius,
/// so they use the mode where the auxiliary component dominates.
pub fn realize(cut: &Cut) -> Result<Realization> {
    let cut = cut.normalized();
    let (point, mode) = match &cut {
        Cut::MinusInfinity | Cut::PlusInfinity => {
            let m = GroupMode::AuxDominant;
            let big = Series::monomial(rat(1), Exponent::int(0, -1), m);
            let side = if cut == Cut::PlusInfinity { Side::Plus } else { Side::Minus };
            (signed(big, side), m)
        }
        Cut::Principal { at, side } => {
            let m = GroupMode::AuxDominant;
            let p = at.with_mode(m)?.add(&signed(Series::aux(m), *side))?;
            (p, m)
        }
        Cut::BallEdge { ball, side } => {
            let m = GroupMode::AuxInfinitesimal;
            let e = match ball.radius() {
                GroupCut::GreaterThan(q) => Exponent::new(q.base.clone(), rat(1)),
                GroupCut::AllPositive => Exponent::int(0, 1),
                GroupCut::AtLeast(q) => Exponent::new(q.base.clone(), rat(-1)),
                GroupCut::All | GroupCut::Singleton => {
                    return Err(Error::Unrealizable(cut.to_string()))
                }
            };
            let nudge = signed(Series::monomial(rat(1), e, m), *side);
            (ball.center().add(&nudge)?, m)
        }
    };
    Ok(Realization { cut, point, mode })
}

fn eval_parts_at(cut: &Cut, f: &RationalFn) -> Result<(Series, Series)> {
    let r = realize(cut)?;
    f.eval_parts(&r.point)
}

/// Sign of `f` in the ordering induced by `cut`.
pub fn ordering_sign(cut: &Cut, f: &RationalFn) -> Result<i8> {
    if f.is_zero() {
        return Ok(0);
    }
    let (n, d) = eval_parts_at(cut, f)?;
    if d.is_exact_zero() {
        return Err(Error::PoleAtRealization);
    }
    Ok(n.sign()? * d.sign()?)
}

/// The classifier `a -> Lower | Upper` read off the ordering: `a` is in the
/// lower set exactly when `x - a` is positive.
pub struct Psi {
    cut: Cut,
}

impl Psi {
    pub fn classify(&self, a: &Series) -> Result<Position> {
        let mode = a.mode();
        let f = RationalFn::poly(SeriesPoly::new(vec![a.neg(), Series::one(mode)], mode)?);
        Ok(if ordering_sign(&self.cut, &f)? > 0 {
            Position::Below
        } else {
            Position::Above
        })
    }
}

pub fn psi(cut: &Cut) -> Psi {
    Psi { cut: cut.normalized() }
}

/// The R-place value of `f`: standard part of `f` at the realization.
pub fn place_value(cut: &Cut, f: &RationalFn, prec: &Precision) -> Result<StdPart> {
    let (n, d) = eval_parts_at(cut, f)?;
    if d.is_exact_zero() {
        return Err(Error::PoleAtRealization);
    }
    if n.is_exact_zero() {
        return Ok(StdPart::Finite(rat(0)));
    }
    // a quotient's standard part only depends on the two leading terms
    let ((vn, cn), (vd, cd)) = match (n.leading(), d.leading()) {
        (Some(a), Some(b)) => (a, b),
        _ => return n.div(&d, prec)?.standard_part(),
    };
    Ok(match vn.sub(vd).cmp_in(&Exponent::zero(), n.mode()) {
        Ordering::Less => StdPart::Infinity,
        Ordering::Equal => StdPart::Finite(cn / cd),
        Ordering::Greater => StdPart::Finite(rat(0)),
    })
}

/// Index `[v(K(x)) : 2 v(K(x))]` of the induced ordering's value group.
/// Every representable cut is a ball cut, so this is always 2.
pub fn classify_index(_cut: &Cut) -> u8 {
    2
}

/// Do two cuts induce the same R-place on `K(x)`? True exactly when they
/// are edges of one ball.
pub fn place_equal(a: &Cut, b: &Cut) -> Result<bool> {
    let (ball_a, _) = a.normalized().as_ball_edge()?;
    let (ball_b, _) = b.normalized().as_ball_edge()?;
    ball_a.same_ball(&ball_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat::ratio;
    use crate::ultrametric::Ball;

    const K: GroupMode = GroupMode::AuxInfinitesimal;

    fn c(n: i64) -> Series {
        Series::int(n, K)
    }

    fn lin(a: Series) -> RationalFn {
        RationalFn::poly(SeriesPoly::new(vec![a.neg(), c(1)], K).unwrap())
    }

    fn edge(center: i64, side: Side) -> Cut {
        Cut::ball_edge(Ball::new(c(center), GroupCut::AllPositive).unwrap(), side)
    }

    #[test]
    fn realizations() {
        let r = realize(&Cut::principal(c(0), Side::Plus).unwrap()).unwrap();
        assert_eq!(r.point, Series::aux(GroupMode::AuxDominant));
        let r = realize(&edge(1, Side::Minus)).unwrap();
        let expect = c(1).sub(&Series::aux(K)).unwrap();
        assert_eq!(r.point, expect);
    }

    #[test]
    fn signs() {
        let p0 = Cut::principal(c(0), Side::Plus).unwrap();
        assert_eq!(ordering_sign(&p0, &RationalFn::x(K)).unwrap(), 1);
        let b0 = edge(0, Side::Plus);
        assert_eq!(ordering_sign(&b0, &lin(Series::eps(K))).unwrap(), 1);
        assert_eq!(ordering_sign(&b0, &lin(c(1))).unwrap(), -1);
        let sq = lin(c(5)).powi(2).unwrap();
        let p5 = Cut::principal(c(5), Side::Plus).unwrap();
        assert_eq!(ordering_sign(&p5, &sq).unwrap(), 1);
    }

    #[test]
    fn psi_classifies() {
        let p0 = Cut::principal(c(0), Side::Plus).unwrap();
        assert_eq!(psi(&p0).classify(&c(0)).unwrap(), Position::Below);
        assert_eq!(psi(&edge(1, Side::Minus)).classify(&c(1)).unwrap(), Position::Above);
    }

    #[test]
    fn place_values() {
        let prec = Precision::default();
        let p3 = Cut::principal(c(3), Side::Minus).unwrap();
        let sq = RationalFn::x(K).powi(2).unwrap();
        assert_eq!(place_value(&p3, &sq, &prec).unwrap(), StdPart::Finite(rat(9)));
        let inv = RationalFn::x(K).powi(-1).unwrap();
        assert_eq!(place_value(&edge(0, Side::Plus), &inv, &prec).unwrap(), StdPart::Infinity);
        let half = RationalFn::x(K)
            .add(&RationalFn::constant(c(1)))
            .unwrap()
            .mul(&RationalFn::constant(Series::constant(ratio(1, 2), K)))
            .unwrap();
        assert_eq!(
            place_value(&edge(1, Side::Minus), &half, &prec).unwrap(),
            StdPart::Finite(rat(1))
        );
    }

    #[test]
    fn places() {
        assert!(place_equal(&edge(1, Side::Plus), &edge(1, Side::Minus)).unwrap());
        assert!(!place_equal(&edge(1, Side::Minus), &edge(-1, Side::Plus)).unwrap());
        let a = Cut::principal(c(2), Side::Plus).unwrap();
        let b = Cut::principal(c(2), Side::Minus).unwrap();
        assert!(place_equal(&a, &b).unwrap());
        assert!(place_equal(&Cut::MinusInfinity, &Cut::PlusInfinity).unwrap());
        assert_eq!(classify_index(&a), 2);
    }
}

#![allow(dead_code)]

use ballcut_core::cuts::{Cut, Side};
use ballcut_core::poly::{RationalFn, SeriesPoly};
use ballcut_core::series::rat::{rat, ratio};
use ballcut_core::ultrametric::{Ball, GroupCut};
use ballcut_core::{Exponent, GroupMode, Rat, Series};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const K: GroupMode = GroupMode::AuxInfinitesimal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut impl Rng) -> Rat {
    let mut n = r.gen_range(-9i64..=9);
    if n == 0 {
        n = 1;
    }
    ratio(n, r.gen_range(1i64..=4))
}

pub const EXPONENTS: [(i64, i64); 10] =
    [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 3), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1)];

pub fn exponent(r: &mut impl Rng) -> Rat {
    let (n, d) = *EXPONENTS.choose(r).unwrap();
    ratio(n, d)
}

pub fn eps_pow(q: Rat) -> Series {
    Series::monomial(rat(1), Exponent::base(q), K)
}

pub fn konst(c: Rat) -> Series {
    Series::constant(c, K)
}

/// A nonzero exact element of the base field with one to three terms.
pub fn element(r: &mut impl Rng) -> Series {
    let n = r.gen_range(1..=3);
    let terms: Vec<(Exponent, Rat)> =
        (0..n).map(|_| (Exponent::base(exponent(r)), small_rat(r))).collect();
    let s = Series::from_terms(K, terms, None);
    if s.is_exact_zero() {
        konst(rat(1))
    } else {
        s
    }
}

/// An element sharing a random number of leading terms with `a`.
pub fn near(r: &mut impl Rng, a: &Series) -> Series {
    let keep = r.gen_range(0..=a.terms().len());
    let head = Series::from_terms(K, a.terms()[..keep].iter().cloned(), None);
    head.add(&element(r)).unwrap()
}

pub fn radius(r: &mut impl Rng) -> GroupCut {
    match r.gen_range(0..3) {
        0 => GroupCut::at_least(exponent(r)),
        1 => GroupCut::greater_than(exponent(r)),
        _ => GroupCut::AllPositive,
    }
}

pub fn side(r: &mut impl Rng) -> Side {
    if r.gen_bool(0.5) {
        Side::Plus
    } else {
        Side::Minus
    }
}

pub fn ball(r: &mut impl Rng) -> Ball {
    Ball::new(element(r), radius(r)).unwrap()
}

/// A cut of every representable kind, chosen by `kind % 7`.
pub fn cut_of_kind(r: &mut impl Rng, kind: usize) -> Cut {
    match kind % 7 {
        0 => Cut::MinusInfinity,
        1 => Cut::PlusInfinity,
        2 => Cut::principal(element(r), side(r)).unwrap(),
        3 => Cut::ball_edge(Ball::new(element(r), GroupCut::at_least(exponent(r))).unwrap(), side(r)),
        4 => Cut::ball_edge(
            Ball::new(element(r), GroupCut::greater_than(exponent(r))).unwrap(),
            side(r),
        ),
        5 => Cut::ball_edge(Ball::new(element(r), GroupCut::AllPositive).unwrap(), side(r)),
        _ => {
            let b = if r.gen_bool(0.5) {
                Ball::everything()
            } else {
                Ball::singleton(element(r)).unwrap()
            };
            Cut::ball_edge(b, side(r))
        }
    }
}

/// Elements close to the boundary of `cut`, plus random ones.
pub fn probes(r: &mut impl Rng, cut: &Cut, n: usize) -> Vec<Series> {
    let anchor = match cut {
        Cut::Principal { at, .. } => Some((at.clone(), rat(1))),
        Cut::BallEdge { ball, .. } => {
            let q = ball.radius().exponent().map(|e| e.base.clone()).unwrap_or(rat(0));
            Some((ball.center().clone(), q))
        }
        _ => None,
    };
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let s = match (&anchor, r.gen_range(0..4)) {
            (Some((c, _)), 0) => c.clone(),
            (Some((c, q)), 1 | 2) => {
                let shift = [ratio(-1, 2), rat(0), ratio(1, 3), rat(1)].choose(r).unwrap().clone();
                let step = eps_pow(q + shift).scale(&small_rat(r));
                c.add(&step).unwrap()
            }
            _ => element(r),
        };
        out.push(s);
    }
    out
}

pub fn poly(coeffs: Vec<Series>) -> SeriesPoly {
    SeriesPoly::new(coeffs, K).unwrap()
}

/// A random element of `K(x)` with numerator and denominator of degree at
/// most two.
pub fn rational_fn(r: &mut impl Rng) -> RationalFn {
    let part = |r: &mut ChaCha8Rng| {
        let deg = r.gen_range(0..=2);
        let mut cs: Vec<Series> = (0..=deg)
            .map(|_| if r.gen_bool(0.3) { Series::zero(K) } else { element(r) })
            .collect();
        cs[deg] = element(r);
        poly(cs)
    };
    let mut local = ChaCha8Rng::seed_from_u64(r.gen());
    let n = part(&mut local);
    let d = part(&mut local);
    RationalFn::new(n, d).unwrap()
}

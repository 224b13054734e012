//! Exact polynomials over `Q`: Sturm counting, isolation and rational roots.
//! Used for the edge polynomials of Newton polygons, whose roots are the
//! leading coefficients of the roots of a series polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::series::rat::{rat, sign_of, Rat};

/// Dense, trimmed, indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RatPoly(pub Vec<Rat>);

impl RatPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly(c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> RatPoly {
        match self.0.last() {
            None => self.clone(),
            Some(lc) => RatPoly(self.0.iter().map(|c| c / lc).collect()),
        }
    }

    pub fn div_rem(&self, b: &RatPoly) -> (RatPoly, RatPoly) {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.0[db].clone();
        let mut r = self.0.clone();
        let mut q = vec![Rat::zero(); r.len().saturating_sub(db).max(1)];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let f = &r[dr] / &lb;
            for (i, c) in b.0.iter().enumerate() {
                r[dr - db + i] -= &f * c;
            }
            q[dr - db] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree(&self) -> RatPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn sturm_chain(&self) -> Vec<RatPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(RatPoly(r.0.iter().map(|c| -c).collect()));
        }
        chain
    }

    fn variations(chain: &[RatPoly], x: &Rat) -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|p| sign_of(&p.eval(x)))
            .filter(|s| *s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots in `(a, b]`.
    pub fn count_roots(&self, a: &Rat, b: &Rat) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let chain = self.sturm_chain();
        RatPoly::variations(&chain, a).saturating_sub(RatPoly::variations(&chain, b))
    }

    /// `1 + max |c_i / c_n|` bounds every root.
    fn cauchy_bound(&self) -> Rat {
        let lc = self.0.last().expect("nonzero").abs();
        let m = self.0[..self.0.len() - 1]
            .iter()
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rat::zero);
        m + Rat::one()
    }

    /// Isolating intervals `(lo, hi)` for a polynomial with no rational
    /// roots, so that midpoints are never roots.
    pub fn isolate_irrational(&self) -> Vec<(Rat, Rat)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let b = self.cauchy_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match self.count_roots(&lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / rat(2);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort();
        out
    }

    /// Narrows an isolating interval until it excludes every point in
    /// `avoid` (none of which is a root of `self`).
    pub fn refine_away(&self, mut iv: (Rat, Rat), avoid: &[Rat]) -> (Rat, Rat) {
        while avoid.iter().any(|r| *r >= iv.0 && *r <= iv.1) {
            let mid = (&iv.0 + &iv.1) / rat(2);
            iv = if self.count_roots(&iv.0, &mid) == 1 {
                (iv.0, mid)
            } else {
                (mid, iv.1)
            };
        }
        iv
    }

    /// Integer-coefficient multiple with the same roots.
    fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.0
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect()
    }

    /// Rational roots via the rational root theorem. Gives up (returns
    /// `None`) when the extreme coefficients are too large to factor by
    /// trial division.
    pub fn rational_roots(&self) -> Option<Vec<Rat>> {
        let ints = self.primitive_integer();
        let mut shift = 0;
        while ints.get(shift).is_some_and(Zero::is_zero) {
            shift += 1;
        }
        let mut roots = Vec::new();
        if shift > 0 {
            roots.push(Rat::zero());
        }
        let (a0, an) = (&ints[shift], ints.last()?);
        if self.degree()? == shift {
            return Some(roots);
        }
        let ps = divisors(a0)?;
        let qs = divisors(an)?;
        let mut seen = Vec::new();
        for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let cand = Rat::new(p * BigInt::from(sign), q.clone());
                    if !seen.contains(&cand) && self.eval(&cand).is_zero() {
                        roots.push(cand.clone());
                    }
                    seen.push(cand);
                }
            }
        }
        roots.sort();
        Some(roots)
    }

    /// Multiplicity of `r` as a root.
    pub fn multiplicity(&self, r: &Rat) -> usize {
        let lin = RatPoly(vec![-r.clone(), Rat::one()]);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && p.eval(r).is_zero() {
            p = p.div_rem(&lin).0;
            m += 1;
        }
        m
    }
}

const TRIAL_LIMIT: u64 = 2_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    let mut steps = 0u64;
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
        steps += 1;
        if steps > TRIAL_LIMIT {
            return None;
        }
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// Real roots of an edge polynomial, with isolating rational intervals that
/// are pairwise disjoint and exclude 0.
#[derive(Debug, Clone)]
pub(crate) struct EdgeRoot {
    pub lo: Rat,
    pub hi: Rat,
    pub exact: Option<Rat>,
    pub simple: bool,
}

pub(crate) fn edge_roots(e: &RatPoly) -> Vec<EdgeRoot> {
    let sq = e.squarefree();
    let rational = sq.rational_roots().unwrap_or_default();
    let mut irr = sq.clone();
    for r in &rational {
        irr = irr.div_rem(&RatPoly(vec![-r.clone(), Rat::one()])).0;
    }
    let repeated = e.gcd(&e.derivative());
    let mut avoid = rational.clone();
    avoid.push(Rat::zero());
    let irr_ivs: Vec<(Rat, Rat)> = irr
        .isolate_irrational()
        .into_iter()
        .map(|iv| irr.refine_away(iv, &avoid))
        .collect();

    let mut out = Vec::new();
    for (lo, hi) in &irr_ivs {
        out.push(EdgeRoot {
            lo: lo.clone(),
            hi: hi.clone(),
            exact: None,
            simple: repeated.count_roots(lo, hi) == 0,
        });
    }
    for r in rational.iter().filter(|r| !r.is_zero()) {
        let mut gap = r.abs();
        for other in rational.iter().filter(|o| *o != r) {
            gap = gap.min((other - r).abs());
        }
        for (lo, hi) in &irr_ivs {
            gap = gap.min((lo - r).abs()).min((hi - r).abs());
        }
        let delta = gap / rat(2);
        out.push(EdgeRoot {
            lo: r - &delta,
            hi: r + &delta,
            exact: Some(r.clone()),
            simple: e.multiplicity(r) == 1,
        });
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat::ratio;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::new(c.iter().map(|x| rat(*x)).collect())
    }

    #[test]
    fn counting() {
        // (x-1)(x-2)(x+3)
        let f = p(&[6, -7, 0, 1]);
        assert_eq!(f.count_roots(&rat(0), &rat(3)), 2);
        assert_eq!(f.count_roots(&rat(-10), &rat(10)), 3);
        assert_eq!(p(&[1, 0, 1]).count_roots(&rat(-10), &rat(10)), 0);
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 1)(x + 3)^2
        let f = p(&[-9, 12, 11, 2]);
        assert_eq!(f.rational_roots().unwrap(), vec![rat(-3), ratio(1, 2)]);
        assert_eq!(f.multiplicity(&rat(-3)), 2);
        assert_eq!(f.squarefree().degree(), Some(2));
    }

    #[test]
    fn edge_roots_are_disjoint_and_classified() {
        // (x - 1)^2 (x^2 - 2)
        let f = RatPoly::new(vec![rat(-2), rat(4), rat(-1), rat(-2), rat(1)]);
        let roots = edge_roots(&f);
        assert_eq!(roots.len(), 3);
        let one = roots.iter().find(|r| r.exact == Some(rat(1))).unwrap();
        assert!(!one.simple);
        let irr: Vec<_> = roots.iter().filter(|r| r.exact.is_none()).collect();
        assert_eq!(irr.len(), 2);
        assert!(irr.iter().all(|r| r.simple));
        for w in roots.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
        for r in &roots {
            assert!(r.lo.signum() == r.hi.signum());
        }
    }
}

//! Dense Laurent polynomials over `Z` in `u = eps^(1/n)`, used to build
//! Sturm chains of polynomials with exact coefficients in `K`.
//!
//! Clearing denominators and taking the subresultant sequence keeps every
//! intermediate in `Z[u, 1/u][x]`, where multiplication and exact division
//! are plain integer array arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::SeriesPoly;
use crate::series::rat::Rat;
use crate::series::{Exponent, GroupMode, Series};

/// `sum c[k] u^(low + k)`, with nonzero first and last entries.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Laurent {
    low: i64,
    c: Vec<BigInt>,
}

impl Laurent {
    fn zero() -> Self {
        Laurent { low: 0, c: Vec::new() }
    }

    fn one() -> Self {
        Laurent { low: 0, c: vec![BigInt::one()] }
    }

    fn trimmed(mut low: i64, mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        let lead = c.iter().take_while(|x| x.is_zero()).count();
        if lead == c.len() {
            return Laurent::zero();
        }
        c.drain(..lead);
        low += lead as i64;
        Laurent { low, c }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// The lowest term dominates since `u` is infinitesimal.
    fn sign(&self) -> i8 {
        self.c.first().map_or(0, |x| if x.is_positive() { 1 } else { -1 })
    }

    fn neg(&self) -> Laurent {
        Laurent { low: self.low, c: self.c.iter().map(|x| -x).collect() }
    }

    fn sub(&self, o: &Laurent) -> Laurent {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.neg();
        }
        let low = self.low.min(o.low);
        let high = (self.low + self.c.len() as i64).max(o.low + o.c.len() as i64);
        let mut c = vec![BigInt::zero(); (high - low) as usize];
        for (k, x) in self.c.iter().enumerate() {
            c[(self.low - low) as usize + k] += x;
        }
        for (k, x) in o.c.iter().enumerate() {
            c[(o.low - low) as usize + k] -= x;
        }
        Laurent::trimmed(low, c)
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        Laurent::trimmed(self.low + o.low, c)
    }

    fn pow(&self, k: usize) -> Laurent {
        (0..k).fold(Laurent::one(), |acc, _| acc.mul(self))
    }

    /// `self / d` when the quotient is again a Laurent polynomial over `Z`.
    fn exact_div(&self, d: &Laurent) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        if d.is_zero() || self.c.len() < d.c.len() {
            return None;
        }
        let mut rem = self.c.clone();
        let n = self.c.len() - d.c.len() + 1;
        let top = d.c.last().expect("nonzero");
        let mut q = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let r = &rem[i + d.c.len() - 1];
            if r.is_zero() {
                continue;
            }
            let (qi, leftover) = r.div_rem(top);
            if !leftover.is_zero() {
                return None;
            }
            for (j, dj) in d.c.iter().enumerate() {
                rem[i + j] -= &qi * dj;
            }
            q[i] = qi;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Laurent::trimmed(self.low - d.low, q))
    }
}

type Poly = Vec<Laurent>;

fn degree(p: &Poly) -> usize {
    p.len() - 1
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Laurent::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &Poly) -> Poly {
    let d = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| Laurent { low: c.low, c: c.c.iter().map(|x| x * BigInt::from(k)).collect() })
        .collect();
    trim(d)
}

/// `lc(b)^(deg a - deg b + 1) a` reduced modulo `b`.
fn prem(a: &Poly, b: &Poly) -> Poly {
    let db = degree(b);
    let lb = &b[db];
    let mut r = a.clone();
    for k in (db..=degree(a)).rev() {
        let top = r[k].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        if !top.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                let i = k - db + j;
                r[i] = r[i].sub(&top.mul(bj));
            }
        }
        r.truncate(k);
    }
    trim(r)
}

fn exact_div_poly(p: &Poly, d: &Laurent) -> Option<Poly> {
    p.iter().map(|c| c.exact_div(d)).collect()
}

/// Divides by the integer content and the lowest power of `u`; both are
/// positive.
fn primitive(p: &Poly) -> Poly {
    let g = p.iter().flat_map(|c| c.c.iter()).fold(BigInt::zero(), |g, x| g.gcd(x));
    let low = p.iter().filter(|c| !c.is_zero()).map(|c| c.low).min().unwrap_or(0);
    p.iter()
        .map(|c| Laurent { low: c.low - low, c: c.c.iter().map(|x| x / &g).collect() })
        .collect()
}

/// Subresultant sequence, each member scaled by the sign that makes it a
/// positive multiple of the corresponding Sturm remainder. `None` if an
/// exact division fails, which does not happen for exact input.
fn chain(p: Poly) -> Option<Vec<Poly>> {
    let d = derivative(&p);
    let mut out = vec![p.clone()];
    if d.is_empty() {
        return Some(out);
    }
    out.push(primitive(&d));
    let (mut prev, mut cur) = (p, d);
    let (mut sign_prev, mut sign_cur) = (1i8, 1i8);
    let mut delta = degree(&prev) - degree(&cur);
    let mut beta = if delta % 2 == 1 { Laurent::one() } else { Laurent::one().neg() };
    let mut psi = Laurent::one().neg();
    while !cur.is_empty() && degree(&cur) > 0 {
        let pr = prem(&prev, &cur);
        if pr.is_empty() {
            break;
        }
        let next = exact_div_poly(&pr, &beta)?;
        let lc = cur[degree(&cur)].clone();
        // prem multiplies by lc^(delta + 1); the true remainder has the
        // opposite sign of the next Sturm member
        let lc_pow = if delta % 2 == 1 { 1 } else { lc.sign() };
        let sign_next = -lc_pow * sign_prev * beta.sign();
        out.push(primitive(&if sign_next > 0 { next.clone() } else { next.iter().map(Laurent::neg).collect() }));

        let delta_next = degree(&cur) - degree(&next);
        psi = lc.neg().pow(delta).exact_div(&psi.pow(delta - 1))?;
        beta = lc.neg().mul(&psi.pow(delta_next));
        delta = delta_next;
        prev = cur;
        cur = next;
        sign_prev = sign_cur;
        sign_cur = sign_next;
    }
    Some(out)
}

/// The Sturm chain of `p` if its coefficients are exact elements of `K`.
pub(super) fn exact_sturm_chain(p: &SeriesPoly) -> Option<Vec<SeriesPoly>> {
    let mode = p.mode();
    let exact = mode == GroupMode::AuxInfinitesimal
        && p.coeffs().iter().all(|c| c.is_exact() && c.is_pure());
    if !exact || p.is_zero() {
        return None;
    }
    let terms = || p.coeffs().iter().flat_map(|c| c.terms().iter());
    let n = terms().fold(BigInt::one(), |acc, (e, _)| acc.lcm(e.base.denom()));
    let den = terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let n_rat = Rat::from_integer(n.clone());
    let to_laurent = |s: &Series| -> Option<Laurent> {
        let idx: Vec<(i64, BigInt)> = s
            .terms()
            .iter()
            .map(|(e, c)| {
                let k = i64::try_from((&e.base * &n_rat).to_integer()).ok()?;
                Some((k, (c * Rat::from_integer(den.clone())).to_integer()))
            })
            .collect::<Option<_>>()?;
        let Some(low) = idx.iter().map(|(k, _)| *k).min() else {
            return Some(Laurent::zero());
        };
        let high = idx.iter().map(|(k, _)| *k).max().expect("nonempty");
        let mut c = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, v) in idx {
            c[(k - low) as usize] = v;
        }
        Some(Laurent::trimmed(low, c))
    };
    let poly: Poly = p.coeffs().iter().map(to_laurent).collect::<Option<_>>()?;
    let from_laurent = |l: &Laurent| {
        let terms = l.c.iter().enumerate().map(|(k, v)| {
            let e = Rat::new(BigInt::from(l.low + k as i64), n.clone());
            (Exponent::base(e), Rat::from_integer(v.clone()))
        });
        Series::from_terms(mode, terms.collect::<Vec<_>>(), None)
    };
    let chain = chain(poly)?;
    let mut out = vec![p.clone()];
    for q in &chain[1..] {
        out.push(SeriesPoly::new(q.iter().map(from_laurent).collect(), mode).ok()?);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(low: i64, c: &[i64]) -> Laurent {
        Laurent::trimmed(low, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn exact_division() {
        let a = l(-1, &[1, 2, 1]);
        let b = l(0, &[1, 1]);
        assert_eq!(a.exact_div(&b), Some(l(-1, &[1, 1])));
        assert_eq!(a.exact_div(&l(0, &[2])), None);
        assert_eq!(a.mul(&b).exact_div(&a), Some(b));
    }

    #[test]
    fn sign_from_lowest_term() {
        assert_eq!(l(0, &[-1, 5]).sign(), -1);
        assert_eq!(l(-3, &[2, -9]).sign(), 1);
    }
}

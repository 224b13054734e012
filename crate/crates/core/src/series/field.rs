use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::exponent::{Exponent, GroupMode, Valuation};
use super::precision::Precision;
use super::rat::{binomial, rat, rat_nth_root, sign_of, Rat};
use crate::error::{Error, Result};

/// Standard part of a series: a rational number, or infinity when the series
/// is not bounded by a rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StdPart {
    Finite(Rat),
    Infinity,
}

/// A truncated generalized Puiseux series `sum c_i eps^(e_i) + O(eps^E)`
/// with rational coefficients and exponents in the two-level group.
///
/// Terms are kept sorted by the mode's order with nonzero coefficients, and
/// every term lies strictly below the error order. `error == None` means the
/// series is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    mode: GroupMode,
    terms: Vec<(Exponent, Rat)>,
    error: Option<Exponent>,
}

impl Series {
    /// Builds a series from arbitrary terms, merging duplicates and dropping
    /// zero coefficients and terms at or beyond `error`.
    pub fn from_terms(
        mode: GroupMode,
        terms: impl IntoIterator<Item = (Exponent, Rat)>,
        error: Option<Exponent>,
    ) -> Self {
        let mut terms: Vec<(Exponent, Rat)> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.0.cmp_in(&b.0, mode));
        let mut merged: Vec<(Exponent, Rat)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == e => *acc += c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(e, c)| {
            !c.is_zero() && error.as_ref().is_none_or(|err| e.lt_in(err, mode))
        });
        Series {
            mode,
            terms: merged,
            error,
        }
    }

    pub fn zero(mode: GroupMode) -> Self {
        Series {
            mode,
            terms: Vec::new(),
            error: None,
        }
    }

    pub fn constant(c: Rat, mode: GroupMode) -> Self {
        Series::monomial(c, Exponent::zero(), mode)
    }

    pub fn one(mode: GroupMode) -> Self {
        Series::constant(Rat::one(), mode)
    }

    pub fn int(n: i64, mode: GroupMode) -> Self {
        Series::constant(rat(n), mode)
    }

    pub fn monomial(c: Rat, e: Exponent, mode: GroupMode) -> Self {
        Series::from_terms(mode, [(e, c)], None)
    }

    /// The base infinitesimal `eps`.
    pub fn eps(mode: GroupMode) -> Self {
        Series::monomial(Rat::one(), Exponent::int(1, 0), mode)
    }

    /// The auxiliary infinitesimal `t = eps^(0,1)`.
    pub fn aux(mode: GroupMode) -> Self {
        Series::monomial(Rat::one(), Exponent::int(0, 1), mode)
    }

    /// `O(eps^e)` with no known terms.
    pub fn big_o(e: Exponent, mode: GroupMode) -> Self {
        Series {
            mode,
            terms: Vec::new(),
            error: Some(e),
        }
    }

    pub fn mode(&self) -> GroupMode {
        self.mode
    }

    pub fn terms(&self) -> &[(Exponent, Rat)] {
        &self.terms
    }

    pub fn error_order(&self) -> Option<&Exponent> {
        self.error.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.error.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.error.is_none()
    }

    /// True when no term and no error bound involves `t`.
    pub fn is_pure(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_pure())
            && self.error.as_ref().is_none_or(|e| e.is_pure())
    }

    pub fn leading(&self) -> Option<&(Exponent, Rat)> {
        self.terms.first()
    }

    /// Coefficient of `eps^e`, if `e` lies below the error order.
    pub fn coefficient(&self, e: &Exponent) -> Option<Rat> {
        if self.error.as_ref().is_some_and(|err| !e.lt_in(err, self.mode)) {
            return None;
        }
        Some(
            self.terms
                .iter()
                .find(|(x, _)| x == e)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::zero),
        )
    }

    fn check_mode(&self, other: &Series) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::IncompatibleModes)
        }
    }

    fn min_error(&self, a: Option<Exponent>, b: Option<Exponent>) -> Option<Exponent> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(Exponent::min_in(&a, &b, self.mode)),
        }
    }

    /// Drops every term at or beyond `at` and records `O(eps^at)`.
    pub fn truncate(&self, at: &Exponent) -> Series {
        let error = self.min_error(self.error.clone(), Some(at.clone()));
        Series::from_terms(self.mode, self.terms.iter().cloned(), error)
    }

    /// Lower bound on the valuation: the leading exponent, else the error
    /// order. `None` for exact zero.
    fn valuation_bound(&self) -> Option<Exponent> {
        self.terms
            .first()
            .map(|(e, _)| e.clone())
            .or_else(|| self.error.clone())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_mode(other)?;
        let error = self.min_error(self.error.clone(), other.error.clone());
        Ok(Series::from_terms(
            self.mode,
            self.terms.iter().chain(other.terms.iter()).cloned(),
            error,
        ))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            mode: self.mode,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            error: self.error.clone(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Series {
        if k.is_zero() {
            return Series::zero(self.mode);
        }
        Series {
            mode: self.mode,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
            error: self.error.clone(),
        }
    }

    /// Multiplies by the monomial `eps^e`.
    pub fn shift(&self, e: &Exponent) -> Series {
        Series {
            mode: self.mode,
            terms: self.terms.iter().map(|(x, c)| (x.add(e), c.clone())).collect(),
            error: self.error.as_ref().map(|x| x.add(e)),
        }
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_mode(other)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Series::zero(self.mode));
        }
        let mode = self.mode;
        let va = self.valuation_bound();
        let vb = other.valuation_bound();
        let mut error = None;
        if let (Some(ea), Some(vb)) = (&self.error, &vb) {
            error = self.min_error(error, Some(ea.add(vb)));
        }
        if let (Some(eb), Some(va)) = (&other.error, &va) {
            error = self.min_error(error, Some(eb.add(va)));
        }
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                if error.as_ref().is_none_or(|err| e.lt_in(err, mode)) {
                    products.push((e, ca * cb));
                }
            }
        }
        Ok(Series::from_terms(mode, products, error))
    }

    /// Evaluates `sum_k coeff(k) u^k` for `v(u) > 0`, stopping once the
    /// remainder's valuation reaches the precision target.
    fn power_series(
        u: &Series,
        coeff: impl Fn(u32) -> Rat,
        prec: &Precision,
    ) -> Result<Series> {
        let mode = u.mode;
        let c0 = Series::constant(coeff(0), mode);
        let Some(v) = u.valuation_bound() else {
            return Ok(c0);
        };
        debug_assert!(v.is_positive_in(mode));
        let target = prec.target(mode, &v);
        let mut sum = c0.truncate(&target);
        let mut power = Series::one(mode);
        let mut k = 1u32;
        // remainder after u^(k-1) has valuation >= k*v
        while v.scale(&rat(k as i64)).lt_in(&target, mode) {
            power = power.mul(u)?.truncate(&target);
            sum = sum.add(&power.scale(&coeff(k)))?;
            k += 1;
        }
        Ok(sum)
    }

    /// Splits off the leading term: returns `(e0, c0, u)` with
    /// `self = c0 eps^e0 (1 + u)` and `v(u) > 0`.
    fn normalize_leading(&self) -> Result<(Exponent, Rat, Series)> {
        let Some((e0, c0)) = self.leading().cloned() else {
            return Err(Error::indeterminate(format!(
                "no known term below {}",
                self.error.as_ref().map_or("inf".into(), |e| e.to_string())
            )));
        };
        let normalized = self.shift(&e0.neg()).scale(&(Rat::one() / &c0));
        let u = normalized.sub(&Series::one(self.mode))?;
        Ok((e0, c0, u))
    }

    pub fn div(&self, other: &Series, prec: &Precision) -> Result<Series> {
        self.check_mode(other)?;
        if other.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        let (e0, c0, u) = other.normalize_leading()?;
        // 1/(1+u) = sum (-u)^k
        let inv = Series::power_series(&u.neg(), |_| Rat::one(), prec)?;
        Ok(self
            .mul(&inv)?
            .shift(&e0.neg())
            .scale(&(Rat::one() / c0)))
    }

    pub fn inv(&self, prec: &Precision) -> Result<Series> {
        Series::one(self.mode).div(self, prec)
    }

    /// Real `n`-th root via binomial expansion of the normalized series.
    ///
    /// Even roots return the positive root; odd roots of negative series
    /// return the negative real root.
    pub fn nth_root(&self, n: u32, prec: &Precision) -> Result<Series> {
        if n == 0 {
            return Err(Error::InvalidInput("root of order 0".into()));
        }
        if self.is_exact_zero() {
            return Ok(self.clone());
        }
        let (e0, c0, u) = self.normalize_leading()?;
        let Some(root_c) = rat_nth_root(&c0, n) else {
            return Err(Error::NonRepresentableRoot(format!(
                "coefficient {c0} has no rational root of order {n}"
            )));
        };
        let alpha = Rat::new(1.into(), n.into());
        let body = Series::power_series(&u, |k| binomial(&alpha, k), prec)?;
        Ok(body.shift(&e0.scale(&alpha)).scale(&root_c))
    }

    /// Integer power; negative exponents go through [`Series::inv`].
    pub fn powi(&self, k: i64, prec: &Precision) -> Result<Series> {
        if k < 0 {
            return self.inv(prec)?.powi(-k, prec);
        }
        let mut acc = Series::one(self.mode);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^(p/q)` as `(q-th root)^p`.
    pub fn pow_rat(&self, r: &Rat, prec: &Precision) -> Result<Series> {
        let den: u32 = r
            .denom()
            .try_into()
            .map_err(|_| Error::InvalidInput(format!("exponent {r} too large")))?;
        let num: i64 = r
            .numer()
            .try_into()
            .map_err(|_| Error::InvalidInput(format!("exponent {r} too large")))?;
        // Monomials stay exact for any rational power.
        if self.is_exact() && self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            if let Some(root) = rat_nth_root(c, den) {
                let coeff = num_traits::Pow::pow(&root, num.unsigned_abs() as u32);
                let coeff = if num < 0 { Rat::one() / coeff } else { coeff };
                return Ok(Series::monomial(coeff, e.scale(r), self.mode));
            }
        }
        let base = if den == 1 {
            self.clone()
        } else {
            self.nth_root(den, prec)?
        };
        base.powi(num, prec)
    }

    /// Sign of the series: `0` only for exact zero.
    pub fn sign(&self) -> Result<i8> {
        match self.leading() {
            Some((_, c)) => Ok(sign_of(c)),
            None if self.error.is_none() => Ok(0),
            None => Err(Error::indeterminate(format!(
                "sign of O({})",
                self.error.as_ref().expect("checked")
            ))),
        }
    }

    /// Absolute value (sign-normalized series).
    pub fn abs(&self) -> Result<Series> {
        Ok(if self.sign()? < 0 { self.neg() } else { self.clone() })
    }

    pub fn valuation(&self) -> Result<Valuation> {
        match self.leading() {
            Some((e, _)) => Ok(Valuation::Finite(e.clone())),
            None if self.error.is_none() => Ok(Valuation::Infinity),
            None => Err(Error::indeterminate(format!(
                "valuation of O({})",
                self.error.as_ref().expect("checked")
            ))),
        }
    }

    pub fn standard_part(&self) -> Result<StdPart> {
        let Valuation::Finite(v) = self.valuation()? else {
            return Ok(StdPart::Finite(Rat::zero()));
        };
        Ok(match v.cmp_in(&Exponent::zero(), self.mode) {
            Ordering::Less => StdPart::Infinity,
            Ordering::Greater => StdPart::Finite(Rat::zero()),
            Ordering::Equal => StdPart::Finite(self.terms[0].1.clone()),
        })
    }

    pub fn compare(&self, other: &Series) -> Result<Ordering> {
        Ok(self.sub(other)?.sign()?.cmp(&0))
    }

    /// Reinterprets the series under another group mode.
    ///
    /// An unknown tail is assumed to have the same shape as the error
    /// exponent, so conversion with a finite error order is only sound when
    /// that order is pure (no `t` component) and the target compares the
    /// auxiliary component first.
    pub fn with_mode(&self, mode: GroupMode) -> Result<Series> {
        if mode == self.mode {
            return Ok(self.clone());
        }
        let error = match &self.error {
            None => None,
            Some(e) if e.is_pure() && mode == GroupMode::AuxDominant => Some(e.clone()),
            Some(e) => {
                return Err(Error::indeterminate(format!(
                    "cannot move error order O({e}) to {}",
                    mode.name()
                )))
            }
        };
        Ok(Series::from_terms(mode, self.terms.iter().cloned(), error))
    }

    /// Structural identity that also tolerates differing error orders: both
    /// series agree on every term below the smaller error order.
    pub fn agrees_with(&self, other: &Series) -> bool {
        if self.mode != other.mode {
            return false;
        }
        let bound = self.min_error(self.error.clone(), other.error.clone());
        match bound {
            None => self == other,
            Some(b) => self.truncate(&b).terms == other.truncate(&b).terms,
        }
    }
}

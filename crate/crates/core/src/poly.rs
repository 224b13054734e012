//! Dense univariate polynomials and rational functions with [`Series`]
//! coefficients, i.e. elements of `K[x]` and `K(x)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::series::rat::rat;
use crate::series::{GroupMode, Precision, Series};

/// Polynomial `sum c_i x^i`, coefficients indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<Series>,
    mode: GroupMode,
}

impl SeriesPoly {
    /// Drops exactly-zero leading coefficients.
    pub fn new(coeffs: Vec<Series>, mode: GroupMode) -> Result<Self> {
        if coeffs.iter().any(|c| c.mode() != mode) {
            return Err(Error::IncompatibleModes);
        }
        let mut p = SeriesPoly { coeffs, mode };
        p.trim();
        Ok(p)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Series::is_exact_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero(mode: GroupMode) -> Self {
        SeriesPoly {
            coeffs: Vec::new(),
            mode,
        }
    }

    pub fn constant(c: Series) -> Self {
        let mode = c.mode();
        let mut p = SeriesPoly {
            coeffs: vec![c],
            mode,
        };
        p.trim();
        p
    }

    /// The polynomial `x`.
    pub fn x(mode: GroupMode) -> Self {
        SeriesPoly {
            coeffs: vec![Series::zero(mode), Series::one(mode)],
            mode,
        }
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[Series], mode: GroupMode) -> Result<Self> {
        let mut p = SeriesPoly::constant(Series::one(mode));
        for r in roots {
            let factor = SeriesPoly::new(vec![r.neg(), Series::one(mode)], mode)?;
            p = p.mul(&factor)?;
        }
        Ok(p)
    }

    pub fn mode(&self) -> GroupMode {
        self.mode
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Series> {
        self.coeffs.last()
    }

    /// Degree with a determinably nonzero leading coefficient.
    pub fn checked_degree(&self) -> Result<Option<usize>> {
        match self.leading() {
            None => Ok(None),
            Some(c) if c.leading().is_some() => Ok(self.degree()),
            Some(c) => Err(Error::indeterminate(format!(
                "leading coefficient {c} may vanish"
            ))),
        }
    }

    fn check(&self, other: &SeriesPoly) -> Result<()> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(Error::IncompatibleModes)
        }
    }

    pub fn add(&self, other: &SeriesPoly) -> Result<SeriesPoly> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Series::zero(self.mode);
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a.add(b)
            })
            .collect::<Result<Vec<_>>>()?;
        SeriesPoly::new(coeffs, self.mode)
    }

    pub fn neg(&self) -> SeriesPoly {
        SeriesPoly {
            coeffs: self.coeffs.iter().map(Series::neg).collect(),
            mode: self.mode,
        }
    }

    pub fn sub(&self, other: &SeriesPoly) -> Result<SeriesPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SeriesPoly) -> Result<SeriesPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(SeriesPoly::zero(self.mode));
        }
        let mut out = vec![Series::zero(self.mode); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        SeriesPoly::new(out, self.mode)
    }

    pub fn scale(&self, c: &Series) -> Result<SeriesPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.mul(c))
            .collect::<Result<Vec<_>>>()?;
        SeriesPoly::new(coeffs, self.mode)
    }

    pub fn powi(&self, k: u32) -> Result<SeriesPoly> {
        let mut acc = SeriesPoly::constant(Series::one(self.mode));
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> SeriesPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&rat(i as i64)))
            .collect();
        let mut p = SeriesPoly {
            coeffs,
            mode: self.mode,
        };
        p.trim();
        p
    }

    /// Horner evaluation. Coefficients are moved to the mode of `x` first.
    pub fn eval(&self, x: &Series) -> Result<Series> {
        let mut acc = Series::zero(x.mode());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(&c.with_mode(x.mode())?)?;
        }
        Ok(acc)
    }

    /// `p(x + s)`.
    pub fn shifted(&self, s: &Series) -> Result<SeriesPoly> {
        let lin = SeriesPoly::new(vec![s.clone(), Series::one(self.mode)], self.mode)?;
        let mut acc = SeriesPoly::zero(self.mode);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin)?.add(&SeriesPoly::constant(c.clone()))?;
        }
        Ok(acc)
    }

    /// Remainder of `lc(b)^(2k) a` by `b`, with `2k >= deg a - deg b + 1`.
    ///
    /// The multiplier is an even power of the leading coefficient, so the
    /// result is a positive multiple of the true remainder and carries the
    /// same signs. Only ring operations are used.
    pub fn sign_preserving_prem(&self, b: &SeriesPoly) -> Result<SeriesPoly> {
        let db = b
            .checked_degree()?
            .ok_or(Error::DivisionByZero)?;
        let lb = b.leading().expect("nonzero").clone();
        let mut r = self.clone();
        let mut steps = 0usize;
        while let Some(dr) = r.checked_degree()? {
            if dr < db {
                break;
            }
            // r <- lb * r - lr * x^(dr - db) * b
            let lr = r.leading().expect("nonzero").clone();
            let mut shifted = vec![Series::zero(self.mode); dr - db];
            shifted.extend(b.coeffs.iter().cloned());
            let xb = SeriesPoly::new(shifted, self.mode)?;
            let mut next = r.scale(&lb)?.sub(&xb.scale(&lr)?)?;
            // the top coefficient cancels exactly; drop it even if its error
            // term keeps it from being recognized as zero
            next.coeffs.truncate(dr);
            next.trim();
            r = next;
            steps += 1;
        }
        if steps % 2 == 1 {
            r = r.scale(&lb)?;
        }
        Ok(r)
    }
}

impl fmt::Display for SeriesPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let simple = c.terms().len() <= 1 && c.is_exact();
            match i {
                0 => write!(f, "{c}")?,
                _ if *c == Series::one(self.mode) => {}
                _ if simple => write!(f, "{c}*")?,
                _ => write!(f, "({c})*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Element `num / den` of `K(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: SeriesPoly,
    den: SeriesPoly,
}

impl RationalFn {
    pub fn new(num: SeriesPoly, den: SeriesPoly) -> Result<Self> {
        if num.mode() != den.mode() {
            return Err(Error::IncompatibleModes);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if den.coeffs().iter().all(|c| c.leading().is_none()) {
            return Err(Error::indeterminate(format!("denominator {den} may vanish")));
        }
        Ok(RationalFn { num, den })
    }

    pub fn poly(p: SeriesPoly) -> Self {
        let mode = p.mode();
        RationalFn {
            num: p,
            den: SeriesPoly::constant(Series::one(mode)),
        }
    }

    pub fn constant(c: Series) -> Self {
        RationalFn::poly(SeriesPoly::constant(c))
    }

    pub fn x(mode: GroupMode) -> Self {
        RationalFn::poly(SeriesPoly::x(mode))
    }

    pub fn numerator(&self) -> &SeriesPoly {
        &self.num
    }

    pub fn denominator(&self) -> &SeriesPoly {
        &self.den
    }

    pub fn mode(&self) -> GroupMode {
        self.num.mode()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RationalFn) -> Result<RationalFn> {
        if self.den == other.den {
            return RationalFn::new(self.num.add(&other.num)?, self.den.clone());
        }
        let num = self.num.mul(&other.den)?.add(&other.num.mul(&self.den)?)?;
        RationalFn::new(num, self.den.mul(&other.den)?)
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RationalFn) -> Result<RationalFn> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFn) -> Result<RationalFn> {
        RationalFn::new(self.num.mul(&other.num)?, self.den.mul(&other.den)?)
    }

    pub fn div(&self, other: &RationalFn) -> Result<RationalFn> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFn::new(self.num.mul(&other.den)?, self.den.mul(&other.num)?)
    }

    pub fn powi(&self, k: i64) -> Result<RationalFn> {
        let (num, den) = if k >= 0 {
            (self.num.powi(k as u32)?, self.den.powi(k as u32)?)
        } else {
            if self.is_zero() {
                return Err(Error::DivisionByZero);
            }
            (self.den.powi((-k) as u32)?, self.num.powi((-k) as u32)?)
        };
        RationalFn::new(num, den)
    }

    /// Numerator of the derivative, `N' D - N D'`; the derivative is this
    /// over `D^2`.
    pub fn derivative_numerator(&self) -> Result<SeriesPoly> {
        self.num
            .derivative()
            .mul(&self.den)?
            .sub(&self.num.mul(&self.den.derivative())?)
    }

    /// `(N(x), D(x))`.
    pub fn eval_parts(&self, x: &Series) -> Result<(Series, Series)> {
        Ok((self.num.eval(x)?, self.den.eval(x)?))
    }

    pub fn eval(&self, x: &Series, prec: &Precision) -> Result<Series> {
        let (n, d) = self.eval_parts(x)?;
        if d.is_exact_zero() {
            return Err(Error::PoleAtRealization);
        }
        n.div(&d, prec)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == SeriesPoly::constant(Series::one(self.mode())) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat::rat;

    const M: GroupMode = GroupMode::AuxInfinitesimal;

    fn k(n: i64) -> Series {
        Series::int(n, M)
    }

    #[test]
    fn roots_and_evaluation() {
        let p = SeriesPoly::from_roots(&[k(1), k(2)], M).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(&k(1)).unwrap(), Series::zero(M));
        assert_eq!(p.eval(&k(3)).unwrap(), k(2));
        assert_eq!(p.derivative().eval(&k(0)).unwrap(), k(-3));
    }

    #[test]
    fn shift_matches_evaluation() {
        let eps = Series::eps(M);
        let p = SeriesPoly::from_roots(&[k(1), eps.clone(), k(-3)], M).unwrap();
        let s = k(2).add(&eps).unwrap();
        let q = p.shifted(&s).unwrap();
        for x in [k(0), k(1), eps.clone(), k(-5)] {
            assert_eq!(q.eval(&x).unwrap(), p.eval(&x.add(&s).unwrap()).unwrap());
        }
    }

    #[test]
    fn prem_is_positive_multiple_of_remainder() {
        // (x^3 + 1) mod (-2x + 1): remainder is 9/8 = value at 1/2
        let a = SeriesPoly::new(vec![k(1), k(0), k(0), k(1)], M).unwrap();
        let b = SeriesPoly::new(vec![k(1), k(-2)], M).unwrap();
        let r = a.sign_preserving_prem(&b).unwrap();
        assert_eq!(r.degree(), Some(0));
        let c = &r.coeffs()[0];
        assert_eq!(c.sign().unwrap(), 1);
        // 9/8 times an even power of -2
        let ratio = c.leading().unwrap().1.clone() / crate::series::rat::ratio(9, 8);
        assert!(ratio > rat(0));
    }

    #[test]
    fn rational_arithmetic() {
        let x = RationalFn::x(M);
        let one = RationalFn::constant(k(1));
        let f = one.div(&x).unwrap();
        let g = f.mul(&x).unwrap();
        let prec = Precision::default();
        assert_eq!(g.eval(&k(7), &prec).unwrap(), k(1));
        assert_eq!(f.eval(&k(0), &prec), Err(Error::PoleAtRealization));
        let d = x.powi(2).unwrap().derivative_numerator().unwrap();
        assert_eq!(d, SeriesPoly::new(vec![k(0), k(2)], M).unwrap());
    }
}

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{fmt_rat, rat, Rat};

/// How the two components of an [`Exponent`] are ordered.
///
/// The base infinitesimal is `eps = eps^(1,0)`, the auxiliary one is
/// `t = eps^(0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupMode {
    /// Base component compared first: `t` is infinitesimal but larger than
    /// every positive power of `eps`.
    AuxInfinitesimal,
    /// Auxiliary component compared first: `t` is smaller than every
    /// positive element with zero auxiliary part.
    AuxDominant,
}

impl GroupMode {
    pub fn name(self) -> &'static str {
        match self {
            GroupMode::AuxInfinitesimal => "aux_infinitesimal",
            GroupMode::AuxDominant => "aux_dominant",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "aux_infinitesimal" => Some(GroupMode::AuxInfinitesimal),
            "aux_dominant" => Some(GroupMode::AuxDominant),
            _ => None,
        }
    }
}

/// Element `(base, aux)` of the two-level value group `Q x Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent {
    pub base: Rat,
    pub aux: Rat,
}

impl Exponent {
    pub fn new(base: Rat, aux: Rat) -> Self {
        Exponent { base, aux }
    }

    pub fn zero() -> Self {
        Exponent::new(Rat::zero(), Rat::zero())
    }

    /// Pure base exponent `(q, 0)`.
    pub fn base(q: Rat) -> Self {
        Exponent::new(q, Rat::zero())
    }

    pub fn int(base: i64, aux: i64) -> Self {
        Exponent::new(rat(base), rat(aux))
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.aux.is_zero()
    }

    pub fn is_pure(&self) -> bool {
        self.aux.is_zero()
    }

    /// Component compared first under `mode`.
    pub fn primary(&self, mode: GroupMode) -> &Rat {
        match mode {
            GroupMode::AuxInfinitesimal => &self.base,
            GroupMode::AuxDominant => &self.aux,
        }
    }

    pub fn secondary(&self, mode: GroupMode) -> &Rat {
        match mode {
            GroupMode::AuxInfinitesimal => &self.aux,
            GroupMode::AuxDominant => &self.base,
        }
    }

    pub fn cmp_in(&self, other: &Exponent, mode: GroupMode) -> Ordering {
        self.primary(mode)
            .cmp(other.primary(mode))
            .then_with(|| self.secondary(mode).cmp(other.secondary(mode)))
    }

    pub fn lt_in(&self, other: &Exponent, mode: GroupMode) -> bool {
        self.cmp_in(other, mode) == Ordering::Less
    }

    pub fn is_positive_in(&self, mode: GroupMode) -> bool {
        self.cmp_in(&Exponent::zero(), mode) == Ordering::Greater
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent::new(&self.base + &other.base, &self.aux + &other.aux)
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        Exponent::new(&self.base - &other.base, &self.aux - &other.aux)
    }

    pub fn neg(&self) -> Exponent {
        Exponent::new(-&self.base, -&self.aux)
    }

    pub fn scale(&self, k: &Rat) -> Exponent {
        Exponent::new(&self.base * k, &self.aux * k)
    }

    pub fn min_in(a: &Exponent, b: &Exponent, mode: GroupMode) -> Exponent {
        if a.lt_in(b, mode) {
            a.clone()
        } else {
            b.clone()
        }
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, sym: &str, p: &Rat) -> fmt::Result {
    if p == &rat(1) {
        write!(f, "{sym}")
    } else if p.is_integer() && !p.is_negative() {
        write!(f, "{sym}^{}", fmt_rat(p))
    } else {
        write!(f, "{sym}^({})", fmt_rat(p))
    }
}

/// Prints the monomial `eps^base*t^aux` (`1` for the zero exponent).
impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.base.is_zero(), self.aux.is_zero()) {
            (true, true) => write!(f, "1"),
            (false, true) => fmt_power(f, "eps", &self.base),
            (true, false) => fmt_power(f, "t", &self.aux),
            (false, false) => {
                fmt_power(f, "eps", &self.base)?;
                write!(f, "*")?;
                fmt_power(f, "t", &self.aux)
            }
        }
    }
}

/// A valuation value: an exponent, or `+inf` for zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(Exponent),
    Infinity,
}

impl Valuation {
    pub fn cmp_in(&self, other: &Valuation, mode: GroupMode) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, _) => Ordering::Greater,
            (_, Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp_in(b, mode),
        }
    }

    pub fn finite(&self) -> Option<&Exponent> {
        match self {
            Valuation::Finite(e) => Some(e),
            Valuation::Infinity => None,
        }
    }

    pub fn scale(&self, k: &Rat) -> Valuation {
        match self {
            Valuation::Finite(e) => Valuation::Finite(e.scale(k)),
            Valuation::Infinity => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Infinity => write!(f, "inf"),
            Valuation::Finite(e) if e.aux.is_zero() => write!(f, "{}", fmt_rat(&e.base)),
            Valuation::Finite(e) => write!(f, "({}, {})", fmt_rat(&e.base), fmt_rat(&e.aux)),
        }
    }
}

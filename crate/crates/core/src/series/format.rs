//! Canonical text and JSON forms of [`Series`].
//!
//! Text: `3 + 4*eps - 1/2*eps^(1/2)*t^2 + O(eps^3)`, re-parseable by
//! [`crate::expr`]. JSON:
//! `{"mode": "aux_infinitesimal", "terms": [["0","0","3","1"], ...], "error_order": ["3","0"]}`
//! where each term is `[base, aux, num, den]` and every entry is a decimal
//! string; `error_order` is `null` for exact series.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::exponent::{Exponent, GroupMode};
use super::field::{Series, StdPart};
use super::rat::{fmt_rat, parse_rat, Rat};
use crate::error::{Error, Result};

impl fmt::Display for StdPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StdPart::Finite(r) => write!(f, "{}", fmt_rat(r)),
            StdPart::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (e.is_zero(), mag.is_one()) {
                (true, _) => write!(f, "{}", fmt_rat(&mag))?,
                (false, true) => write!(f, "{e}")?,
                (false, false) => write!(f, "{}*{e}", fmt_rat(&mag))?,
            }
        }
        match self.error_order() {
            Some(err) if first => write!(f, "O({err})"),
            Some(err) => write!(f, " + O({err})"),
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub mode: GroupMode,
    pub terms: Vec<[String; 4]>,
    pub error_order: Option<[String; 2]>,
}

impl From<&Series> for SeriesJson {
    fn from(s: &Series) -> Self {
        SeriesJson {
            mode: s.mode(),
            terms: s
                .terms()
                .iter()
                .map(|(e, c)| {
                    [
                        fmt_rat(&e.base),
                        fmt_rat(&e.aux),
                        c.numer().to_string(),
                        c.denom().to_string(),
                    ]
                })
                .collect(),
            error_order: s
                .error_order()
                .map(|e| [fmt_rat(&e.base), fmt_rat(&e.aux)]),
        }
    }
}

impl TryFrom<SeriesJson> for Series {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Self> {
        let int = |s: &str| -> Result<BigInt> {
            s.parse()
                .map_err(|_| Error::InvalidInput(format!("not an integer: `{s}`")))
        };
        let mut terms = Vec::with_capacity(j.terms.len());
        for [b, a, n, d] in &j.terms {
            let den = int(d)?;
            if den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            terms.push((
                Exponent::new(parse_rat(b)?, parse_rat(a)?),
                Rat::new(int(n)?, den),
            ));
        }
        let error = match &j.error_order {
            None => None,
            Some([b, a]) => Some(Exponent::new(parse_rat(b)?, parse_rat(a)?)),
        };
        Ok(Series::from_terms(j.mode, terms, error))
    }
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        Series::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat::{rat, ratio};

    const M: GroupMode = GroupMode::AuxInfinitesimal;

    #[test]
    fn text_form() {
        let s = Series::from_terms(
            M,
            [
                (Exponent::zero(), rat(3)),
                (Exponent::int(1, 0), rat(4)),
                (Exponent::new(ratio(1, 2), rat(2)), ratio(-1, 2)),
            ],
            Some(Exponent::int(3, 0)),
        );
        assert_eq!(s.to_string(), "3 - 1/2*eps^(1/2)*t^2 + 4*eps + O(eps^3)");
        assert_eq!(Series::zero(M).to_string(), "0");
        assert_eq!(Series::big_o(Exponent::int(3, 0), M).to_string(), "O(eps^3)");
        assert_eq!(Series::aux(M).neg().to_string(), "-t");
    }

    #[test]
    fn json_form() {
        let s = Series::from_terms(
            M,
            [(Exponent::int(1, -1), ratio(-3, 4))],
            Some(Exponent::int(8, 0)),
        );
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "mode": "aux_infinitesimal",
                "terms": [["1", "-1", "-3", "4"]],
                "error_order": ["8", "0"]
            })
        );
        let back: Series = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}

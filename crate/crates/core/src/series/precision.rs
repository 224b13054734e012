use num_traits::{Signed, Zero};

use super::exponent::{Exponent, GroupMode};
use super::rat::{rat, Rat};

/// Working precision for operations that expand infinite series
/// (division, roots).
///
/// `base` bounds expansions in powers of `eps`, `aux` bounds expansions in
/// powers of `t`. Which one applies depends on the mode and on the level the
/// expansion lives at: a geometric series in `u` with `v(u) = (0, r)` never
/// reaches `eps^base` when the base component is compared first, so it is cut
/// at `t^aux` instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precision {
    pub base: Rat,
    pub aux: Rat,
}

impl Default for Precision {
    fn default() -> Self {
        Precision::new(rat(8))
    }
}

impl Precision {
    /// Same depth on both levels.
    pub fn new(depth: Rat) -> Self {
        assert!(depth.is_positive(), "precision must be positive");
        Precision {
            base: depth.clone(),
            aux: depth,
        }
    }

    pub fn with_aux(mut self, aux: Rat) -> Self {
        assert!(aux.is_positive(), "precision must be positive");
        self.aux = aux;
        self
    }

    /// Relative error order on the level compared first.
    pub fn primary_order(&self, mode: GroupMode) -> Exponent {
        match mode {
            GroupMode::AuxInfinitesimal => Exponent::new(self.base.clone(), Rat::zero()),
            GroupMode::AuxDominant => Exponent::new(Rat::zero(), self.aux.clone()),
        }
    }

    /// Relative error order on the level compared second.
    pub fn secondary_order(&self, mode: GroupMode) -> Exponent {
        match mode {
            GroupMode::AuxInfinitesimal => Exponent::new(Rat::zero(), self.aux.clone()),
            GroupMode::AuxDominant => Exponent::new(self.base.clone(), Rat::zero()),
        }
    }

    /// Truncation order for a power series in `u`, given a lower bound `v`
    /// on `v(u)` (which must be positive in `mode`).
    pub fn target(&self, mode: GroupMode, v: &Exponent) -> Exponent {
        if v.primary(mode).is_zero() {
            self.secondary_order(mode)
        } else {
            self.primary_order(mode)
        }
    }
}

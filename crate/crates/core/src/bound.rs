//! Asserted maximal-operator bounds.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed};

use crate::error::EngineError;
use crate::rat::{to_fraction_string, uint, Rat};

/// Which maximal operator the bound is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    /// ℳ^k_δ: sup over translates of averages over δ-plates.
    MaximalPlate,
    /// 𝒩^k: sup over translates of full k-plane integrals.
    MaximalPlane,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::MaximalPlate => write!(f, "M^k_delta"),
            Operator::MaximalPlane => write!(f, "N^k"),
        }
    }
}

/// A Lebesgue exponent that may be +∞ (only ever used for q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exponent {
    Finite(Rat),
    Infinity,
}

impl Exponent {
    pub fn finite(r: Rat) -> Self {
        Exponent::Finite(r)
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Exponent::Finite(r) => Some(r),
            Exponent::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    pub fn min(self, other: Exponent) -> Exponent {
        match self.partial_cmp(&other) {
            Some(Ordering::Greater) => other,
            _ => self,
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => a.partial_cmp(b),
            (Exponent::Finite(_), Exponent::Infinity) => Some(Ordering::Less),
            (Exponent::Infinity, Exponent::Finite(_)) => Some(Ordering::Greater),
            (Exponent::Infinity, Exponent::Infinity) => Some(Ordering::Equal),
        }
    }
}

impl From<Rat> for Exponent {
    fn from(r: Rat) -> Self {
        Exponent::Finite(r)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(r) => write!(f, "{}", to_fraction_string(r)),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// An asserted bound ‖T f‖_{L^q(G(d,k))} ≲ δ^{−α/p} ‖f‖_{L^p(ℝ^d)}.
///
/// For T = ℳ^k_δ the loss exponent α ≥ 0 is present; for T = 𝒩^k there is
/// no δ and `alpha` is absent, and the bound is only claimed for f supported
/// on the unit ball when `support_unit_ball` is set. `eps_loss` records that
/// α carries an additional arbitrarily small ε; it is a flag, never a
/// number, and every arithmetic comparison in the crate is about the
/// rational part alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundSpec {
    operator: Operator,
    d: u32,
    k: u32,
    p: Rat,
    q: Exponent,
    alpha: Option<Rat>,
    eps_loss: bool,
    support_unit_ball: bool,
}

impl BoundSpec {
    /// ℳ^k_δ bound with loss δ^{−α/p}.
    pub fn plate(
        d: u32,
        k: u32,
        p: Rat,
        q: impl Into<Exponent>,
        alpha: Rat,
        eps_loss: bool,
    ) -> Result<Self, EngineError> {
        let spec = BoundSpec {
            operator: Operator::MaximalPlate,
            d,
            k,
            p,
            q: q.into(),
            alpha: Some(alpha),
            eps_loss,
            support_unit_ball: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// 𝒩^k bound (no δ-loss); `support_unit_ball` is set because every such
    /// bound this calculus produces is for f supported on the unit ball.
    pub fn plane(
        d: u32,
        k: u32,
        p: Rat,
        q: impl Into<Exponent>,
        eps_loss: bool,
    ) -> Result<Self, EngineError> {
        let spec = BoundSpec {
            operator: Operator::MaximalPlane,
            d,
            k,
            p,
            q: q.into(),
            alpha: None,
            eps_loss,
            support_unit_ball: true,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), EngineError> {
        if self.k < 1 || self.k >= self.d {
            return Err(EngineError::domain(format!(
                "plane dimension must satisfy 1 <= k < d, got k={}, d={}",
                self.k, self.d
            )));
        }
        if self.p < Rat::one() {
            return Err(EngineError::domain(format!(
                "input exponent must satisfy p >= 1, got p={}",
                to_fraction_string(&self.p)
            )));
        }
        if let Exponent::Finite(q) = &self.q {
            if *q < Rat::one() {
                return Err(EngineError::domain(format!(
                    "output exponent must satisfy q >= 1, got q={}",
                    to_fraction_string(q)
                )));
            }
        }
        match (self.operator, &self.alpha) {
            (Operator::MaximalPlate, Some(a)) if a.is_negative() => {
                Err(EngineError::domain(format!(
                    "delta-loss exponent must satisfy alpha >= 0, got {}",
                    to_fraction_string(a)
                )))
            }
            (Operator::MaximalPlate, None) => Err(EngineError::domain(
                "a plate bound carries a delta-loss exponent alpha",
            )),
            (Operator::MaximalPlane, Some(_)) => Err(EngineError::domain(
                "a plane bound has no delta and therefore no alpha",
            )),
            _ => Ok(()),
        }
    }

    pub fn operator(&self) -> Operator {
        self.operator
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn p(&self) -> &Rat {
        &self.p
    }

    pub fn q(&self) -> &Exponent {
        &self.q
    }

    /// Loss exponent; `None` exactly when the operator is 𝒩^k.
    pub fn alpha(&self) -> Option<&Rat> {
        self.alpha.as_ref()
    }

    pub fn eps_loss(&self) -> bool {
        self.eps_loss
    }

    pub fn support_unit_ball(&self) -> bool {
        self.support_unit_ball
    }

    /// δ-power of the bound, α/p, the quantity preserved by the x-ray step.
    pub fn delta_power(&self) -> Option<Rat> {
        self.alpha.as_ref().map(|a| a / &self.p)
    }

    /// Same bound with q lowered; used by `q_restrict`, which performs the
    /// legality check.
    pub(crate) fn with_q(&self, q: Exponent) -> Self {
        let mut out = self.clone();
        out.q = q;
        out
    }

    /// Same bound with α raised; used by pipelines that deliberately weaken
    /// a bound (δ ≤ 1, so enlarging α only weakens the assertion). Panics if
    /// asked to shrink α, which would be unsound.
    pub(crate) fn with_weakened_alpha(&self, alpha: Rat) -> Self {
        let old = self.alpha.as_ref().expect("alpha weakening needs a plate bound");
        assert!(alpha >= *old, "alpha may only be weakened upward");
        let mut out = self.clone();
        out.alpha = Some(alpha);
        out
    }

    /// Same bound with p raised by interpolation against the trivial L^∞
    /// bound. Under that interpolation the δ-power rescales so that α is
    /// unchanged, and q scales by p_new/p_old; the caller may then lower q
    /// via `q_restrict`. Panics if asked to lower p.
    pub(crate) fn with_interpolated_p(&self, p_new: Rat) -> Self {
        assert!(p_new >= self.p, "L^inf interpolation only raises p");
        let q = match &self.q {
            Exponent::Finite(q) => Exponent::Finite(q * &p_new / &self.p),
            Exponent::Infinity => Exponent::Infinity,
        };
        let mut out = self.clone();
        out.q = q;
        out.p = p_new;
        out
    }

    pub fn summary(&self) -> String {
        let alpha = match &self.alpha {
            Some(a) => to_fraction_string(a),
            None => String::from("-"),
        };
        format!(
            "{} d={} k={} p={} q={} alpha={} eps={}",
            self.operator,
            self.d,
            self.k,
            to_fraction_string(&self.p),
            self.q,
            alpha,
            self.eps_loss
        )
    }
}

impl fmt::Display for BoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summary())
    }
}

/// d as a rational, handy when mixing dimensions into exponent arithmetic.
pub fn dim(d: u32) -> Rat {
    uint(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn rejects_bad_shapes() {
        assert!(BoundSpec::plate(3, 3, int(2), int(2), int(0), false).is_err());
        assert!(BoundSpec::plate(3, 0, int(2), int(2), int(0), false).is_err());
        assert!(BoundSpec::plate(3, 1, rat(1, 2), int(2), int(0), false).is_err());
        assert!(BoundSpec::plate(3, 1, int(2), rat(1, 2), int(0), false).is_err());
        assert!(BoundSpec::plate(3, 1, int(2), int(2), int(-1), false).is_err());
    }

    #[test]
    fn exponent_ordering() {
        let two = Exponent::finite(int(2));
        assert!(two < Exponent::Infinity);
        assert_eq!(
            Exponent::Infinity.min(Exponent::finite(int(5))),
            Exponent::finite(int(5))
        );
    }

    #[test]
    fn delta_power() {
        let b = BoundSpec::plate(7, 1, int(4), int(8), int(3), true).unwrap();
        assert_eq!(b.delta_power().unwrap(), rat(3, 4));
    }
}

//! Kakeya (k = 1) seed bounds on ℝ^n.
//!
//! Every recursion chain starts from a known bound for the classical Kakeya
//! maximal operator ℳ¹_δ. The stated δ-power −β of each source bound is
//! converted here to the α convention used throughout (norm ≲ δ^{−α/p}, so
//! α = p·β). All seeds carry an ε loss.

use alloc::format;

use num_traits::One;

use crate::bound::BoundSpec;
use crate::error::EngineError;
use crate::rat::{rat, uint, Rat};
use crate::step::conjugate_exponent;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedKind {
    /// Katz–Tao: L^{(4n+3)/7} → L^{n+3/4}, δ-power 3(n−1)/(4n+3).
    KatzTao,
    /// Weakened Katz–Tao: L^{4n/7} → L^{(n−1)(4n/7)′}, δ-power 3/4. Weaker,
    /// but its p has the (d−1)/m shape that the x-ray step preserves, which
    /// makes the numerology of the sharp-p chain exact.
    KatzTaoWeak,
    /// Wolff: L^{(n+2)/2} → L^{(n+2)/2}, δ-power (n−2)/(n+2). Preferred when
    /// d − k < 7. The source states no output exponent; q = p is recorded
    /// since only p and α feed the dimension formulas derived from it.
    Wolff,
}

impl SeedKind {
    pub fn name(&self) -> &'static str {
        match self {
            SeedKind::KatzTao => "katztao",
            SeedKind::KatzTaoWeak => "katztao-weak",
            SeedKind::Wolff => "wolff",
        }
    }
}

/// The k = 1 seed bound on ℝ^n for the chosen family.
pub fn seed_bound(kind: SeedKind, n: u32) -> Result<BoundSpec, EngineError> {
    if n < 2 {
        return Err(EngineError::domain(format!(
            "seed bounds live on R^n with n >= 2, got n={n}"
        )));
    }
    let nr = uint(n);
    match kind {
        SeedKind::KatzTao => {
            // p = (4n+3)/7, q = n + 3/4, alpha = p * 3(n-1)/(4n+3) = 3(n-1)/7.
            let p = (rat(4, 1) * &nr + rat(3, 1)) / rat(7, 1);
            let q = &nr + rat(3, 4);
            let alpha = rat(3, 7) * (&nr - Rat::one());
            BoundSpec::plate(n, 1, p, q, alpha, true)
        }
        SeedKind::KatzTaoWeak => {
            // p = 4n/7, q = (n-1) p', alpha = p * 3/4 = 3n/7.
            let p = rat(4, 7) * &nr;
            if p <= Rat::one() {
                return Err(EngineError::domain(format!(
                    "weak Katz-Tao seed needs 4n/7 > 1, got n={n}"
                )));
            }
            let q = (&nr - Rat::one()) * conjugate_exponent(&p)?;
            let alpha = rat(3, 7) * &nr;
            BoundSpec::plate(n, 1, p, q, alpha, true)
        }
        SeedKind::Wolff => {
            // p = q = (n+2)/2, alpha = p * (n-2)/(n+2) = (n-2)/2.
            let p = (&nr + rat(2, 1)) / rat(2, 1);
            let alpha = (&nr - rat(2, 1)) / rat(2, 1);
            BoundSpec::plate(n, 1, p.clone(), p, alpha, true)
        }
    }
}

//! The critical plane dimension k_crit(d).
//!
//! Above k_crit the recursion proves 𝒩^k bounded. Two variants, matching the
//! seed that powers the recursion:
//!
//! * Bourgain:  k_crit solves 2^{k−1} + k = d,
//! * Katz–Tao:  k_crit solves (7/3)·2^{k−2} + k = d.
//!
//! Both left-hand sides are strictly increasing in k, so the root is unique.
//! Comparisons of an integer k against k_crit(d) are done in exact rational
//! arithmetic; the real root itself is found by bisection.

use alloc::format;

use crate::error::EngineError;
use crate::rat::{pow2, rat, uint, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KcritKind {
    Bourgain,
    KatzTao,
}

impl KcritKind {
    /// The defining expression 2^{k−1} + k (Bourgain) or (7/3)2^{k−2} + k
    /// (Katz–Tao) at integer k, exactly.
    fn defining_expr(&self, k: i64) -> Rat {
        match self {
            KcritKind::Bourgain => pow2(k - 1) + rat(k, 1),
            KcritKind::KatzTao => rat(7, 3) * pow2(k - 2) + rat(k, 1),
        }
    }

    fn defining_f64(&self, k: f64) -> f64 {
        match self {
            KcritKind::Bourgain => libm::exp2(k - 1.0) + k,
            KcritKind::KatzTao => (7.0 / 3.0) * libm::exp2(k - 2.0) + k,
        }
    }
}

const TOL: f64 = 1e-12;

/// The unique real k with defining_expr(k) = d, to absolute tolerance 1e−12.
/// Integer roots are detected exactly and returned without bisection.
pub fn kcrit(d: u32, kind: KcritKind) -> Result<f64, EngineError> {
    if d < 3 {
        return Err(EngineError::domain(format!(
            "kcrit is defined for d >= 3, got d={d}"
        )));
    }
    let target = uint(d);
    for k in 1..=d as i64 {
        if kind.defining_expr(k) == target {
            return Ok(k as f64);
        }
    }
    let (mut lo, mut hi) = (1.0_f64, d as f64);
    debug_assert!(kind.defining_f64(lo) < d as f64);
    debug_assert!(kind.defining_f64(hi) > d as f64);
    while hi - lo > TOL {
        let mid = 0.5 * (lo + hi);
        if kind.defining_f64(mid) < d as f64 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Exact predicate k ≤ k_crit(d), i.e. defining_expr(k) ≤ d. Monotonicity of
/// the defining expression makes the comparison exact without ever touching
/// the real root.
pub fn k_at_most_kcrit(d: u32, k: u32, kind: KcritKind) -> bool {
    kind.defining_expr(k as i64) <= uint(d)
}

/// Exact predicate for Bourgain's positive-measure regime d ≤ 2^{k−1} + k.
pub fn bourgain_regime(d: u32, k: u32) -> bool {
    uint(d) <= KcritKind::Bourgain.defining_expr(k as i64)
}

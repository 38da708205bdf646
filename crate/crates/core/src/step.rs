//! The recursion rules, each mapping a bound at (d, k) to one at (d+1, k+1).
//!
//! All three steps share the same skeleton: write a k-plate average in ℝ^{d+1}
//! as a (k−1)-plate average of the x-ray transform, unravel the Grassmannian
//! integral into sphere × G(d,k), and close with an x-ray transform bound.
//! They differ in which x-ray bound is used:
//!
//! * `xray_step`    — the L^p-improving bound at the input p,
//! * `interp_step`  — the endpoint bound applied after interpolating the
//!                    input with the trivial L^∞ bound (r/p = 2),
//! * `l2_step`      — the L² cancellation estimate, which trades a whole
//!                    power of δ (α ↦ α − 1) and produces a plane bound once
//!                    α < 1.
//!
//! `q_restrict` is bookkeeping: G(d,k) carries a probability measure, so
//! lowering q is free by Hölder.

use alloc::format;

use num_traits::One;

use crate::bound::{BoundSpec, Exponent, Operator};
use crate::error::EngineError;
use crate::rat::{int, to_fraction_string, uint, Rat};

/// p′ = p/(p − 1); involutive on (1, ∞).
pub fn conjugate_exponent(p: &Rat) -> Result<Rat, EngineError> {
    if *p <= Rat::one() {
        return Err(EngineError::domain(format!(
            "conjugate exponent needs p > 1, got {}",
            to_fraction_string(p)
        )));
    }
    Ok(p / (p - Rat::one()))
}

/// Shared hypothesis check for `xray_step` and `interp_step`: the rule maps
/// a plate bound at (d, k) to (D, k+1) with D = d + 1 and requires p ≤ D + 1
/// and output k + 1 ≥ 2 (read with output dimensions).
fn check_recursion_hypotheses(rule: &'static str, b: &BoundSpec) -> Result<u32, EngineError> {
    if b.operator() != Operator::MaximalPlate {
        return Err(EngineError::inapplicable(
            rule,
            "a delta-plate maximal bound as input",
        ));
    }
    let out_d = b.d() + 1;
    let p_cap = uint(out_d + 1);
    if *b.p() > p_cap {
        return Err(EngineError::inapplicable(
            rule,
            format!(
                "p <= d+1 in output dimensions (p = {}, d+1 = {})",
                to_fraction_string(b.p()),
                out_d + 1
            ),
        ));
    }
    Ok(out_d)
}

/// One x-ray recursion step:
/// p̃ = pD/(D + p − 1), α̃ = α·p̃/p, q̃ = min(q, D·p′), with D = d + 1.
///
/// Preserves the δ-power α/p exactly, and strictly improves p whenever
/// p > 1.
pub fn xray_step(b: &BoundSpec) -> Result<BoundSpec, EngineError> {
    let out_d = check_recursion_hypotheses("xray_step", b)?;
    let dd = uint(out_d);
    let p = b.p();
    let p_new = p * &dd / (&dd + p - Rat::one());
    let alpha_new = b.alpha().expect("plate bound") * &p_new / p;
    // p = 1 has p' = inf, so the D p' cap is vacuous there.
    let cap = if *p > Rat::one() {
        Exponent::finite(&dd * conjugate_exponent(p)?)
    } else {
        Exponent::Infinity
    };
    let q_new = b.q().clone().min(cap);
    BoundSpec::plate(out_d, b.k() + 1, p_new, q_new, alpha_new, b.eps_loss())
}

/// One interpolation step:
/// p̃ = (D+1)/2, α̃ = α/2, q̃ = min((D+1)q/p, D+1), with D = d + 1.
///
/// Interpolating the input with the trivial L^∞ bound before the x-ray step
/// halves α regardless of the input p.
pub fn interp_step(b: &BoundSpec) -> Result<BoundSpec, EngineError> {
    let out_d = check_recursion_hypotheses("interp_step", b)?;
    let dd1 = uint(out_d + 1);
    let p_new = &dd1 / int(2);
    let alpha_new = b.alpha().expect("plate bound") / int(2);
    let q_new = match b.q() {
        Exponent::Finite(q) => Exponent::finite(&dd1 * q / b.p()).min(Exponent::finite(dd1)),
        Exponent::Infinity => Exponent::finite(dd1),
    };
    BoundSpec::plate(out_d, b.k() + 1, p_new, q_new, alpha_new, b.eps_loss())
}

/// Lower the output exponent. Free because the Grassmannian measure is a
/// probability measure; raising q is rejected.
pub fn q_restrict(b: &BoundSpec, q_new: Rat) -> Result<BoundSpec, EngineError> {
    if q_new < Rat::one() {
        return Err(EngineError::domain(format!(
            "q must stay >= 1, got {}",
            to_fraction_string(&q_new)
        )));
    }
    if Exponent::finite(q_new.clone()) > *b.q() {
        return Err(EngineError::domain(format!(
            "raising q is not free: requested {}, current {}",
            to_fraction_string(&q_new),
            b.q()
        )));
    }
    Ok(b.with_q(Exponent::finite(q_new)))
}

/// One L² cancellation step (requires p = q and p ≥ 2):
/// if α ≥ 1 the output is the plate bound at (d+1, k+1) with α − 1;
/// if α < 1 the output is the plane bound 𝒩^{k+1} on ℝ^{d+1} at the same p,
/// for f supported on the unit ball.
pub fn l2_step(b: &BoundSpec) -> Result<BoundSpec, EngineError> {
    if b.operator() != Operator::MaximalPlate {
        return Err(EngineError::inapplicable(
            "l2_step",
            "a delta-plate maximal bound as input",
        ));
    }
    if *b.p() < int(2) {
        return Err(EngineError::inapplicable(
            "l2_step",
            format!("p >= 2 (p = {})", to_fraction_string(b.p())),
        ));
    }
    if b.q() != &Exponent::finite(b.p().clone()) {
        return Err(EngineError::inapplicable(
            "l2_step",
            format!(
                "q = p (q = {}, p = {}); apply q_restrict first",
                b.q(),
                to_fraction_string(b.p())
            ),
        ));
    }
    let out_d = b.d() + 1;
    let out_k = b.k() + 1;
    let alpha = b.alpha().expect("plate bound");
    if *alpha >= Rat::one() {
        BoundSpec::plate(
            out_d,
            out_k,
            b.p().clone(),
            b.p().clone(),
            alpha - Rat::one(),
            b.eps_loss(),
        )
    } else {
        BoundSpec::plane(out_d, out_k, b.p().clone(), b.p().clone(), b.eps_loss())
    }
}

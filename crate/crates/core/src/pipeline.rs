//! Named derivation pipelines and their closed forms.
//!
//! Each pipeline chains seed + recursion steps into one of the exponent
//! families:
//!
//! * `SharpP`     — weak Katz–Tao seed, k−1 x-ray steps; lands exactly at
//!                  p = d/(k+3/4), α = d − kp (sharp α relative to p). The
//!                  weak seed is what makes the chain close in this form:
//!                  its p has the (d−1)/m shape the x-ray step preserves.
//!                  Seeding with the stronger Katz–Tao bound instead gives a
//!                  slightly smaller p with no comparable closed form.
//! * `NonL2`      — Katz–Tao seed, k−1 interpolation steps; lands at
//!                  p = (d+1)/2, q = d+1, α = 3(d−k)/(7·2^{k−1}).
//! * `L2`         — NonL2 at (d−1, k−1), restrict q to p, one L² step;
//!                  lands at p = q = d/2, α = 3(d−k)/(7·2^{k−2}) − 1.
//! * `NakTheorem` — NonL2 at (d−2−j, k−2−j), j x-ray iterations that spend
//!                  the spare dimensions on p, then two L² steps; ends in a
//!                  bound for 𝒩^k on ℝ^d with p = q = (d−1)/(2+j).
//! * `DimKatzTao`/`DimWolff` — the chain behind the Hausdorff dimension
//!                  formulas (see `dimension`).

use alloc::format;

use num_traits::One;

use crate::bound::{BoundSpec, Exponent, Operator};
use crate::dimension::{best_dimension_chain, DimSeed};
use crate::error::EngineError;
use crate::kcrit::{k_at_most_kcrit, KcritKind};
use crate::rat::{int, rat, uint, Rat};
use crate::seed::{seed_bound, SeedKind};
use crate::step::{interp_step, l2_step, q_restrict, xray_step};
use crate::trace::{DerivationTrace, RuleName, StepInput};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineName {
    SharpP,
    NonL2,
    L2,
    NakTheorem,
    DimKatzTao,
    DimWolff,
}

impl PipelineName {
    pub fn name(&self) -> &'static str {
        match self {
            PipelineName::SharpP => "sharpp",
            PipelineName::NonL2 => "nonl2",
            PipelineName::L2 => "l2",
            PipelineName::NakTheorem => "nak",
            PipelineName::DimKatzTao => "dimkt",
            PipelineName::DimWolff => "dimwolff",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "sharpp" => Some(PipelineName::SharpP),
            "nonl2" => Some(PipelineName::NonL2),
            "l2" => Some(PipelineName::L2),
            "nak" => Some(PipelineName::NakTheorem),
            "dimkt" => Some(PipelineName::DimKatzTao),
            "dimwolff" => Some(PipelineName::DimWolff),
            _ => None,
        }
    }
}

/// Appends the seed step for `kind` at ℝ^n.
pub(crate) fn push_seed(
    trace: &mut DerivationTrace,
    kind: SeedKind,
    n: u32,
) -> Result<BoundSpec, EngineError> {
    let b = seed_bound(kind, n)?;
    trace.push(RuleName::Seed, StepInput::SeedParams { kind, n }, b.clone());
    Ok(b)
}

/// Seed at n = d−k+1 followed by k−1 interpolation steps, landing at (d, k).
pub(crate) fn extend_interp_chain(
    trace: &mut DerivationTrace,
    d: u32,
    k: u32,
    kind: SeedKind,
) -> Result<BoundSpec, EngineError> {
    let mut b = push_seed(trace, kind, d - k + 1)?;
    for _ in 1..k {
        let next = interp_step(&b)?;
        trace.push(RuleName::InterpStep, StepInput::Bound(b), next.clone());
        b = next;
    }
    Ok(b)
}

fn check_k_range(rule: &'static str, d: u32, k: u32, k_min: u32) -> Result<(), EngineError> {
    if k < k_min || k >= d {
        return Err(EngineError::inapplicable(
            rule,
            format!("{k_min} <= k < d (got k={k}, d={d})"),
        ));
    }
    Ok(())
}

/// Runs the named pipeline at (d, k); `j` is only meaningful for
/// `NakTheorem` (number of spare iterations spent on improving p).
pub fn derive_pipeline(
    name: PipelineName,
    d: u32,
    k: u32,
    j: Option<u32>,
) -> Result<DerivationTrace, EngineError> {
    if j.is_some() && name != PipelineName::NakTheorem {
        return Err(EngineError::domain(format!(
            "parameter j applies only to the nak pipeline, not {}",
            name.name()
        )));
    }
    match name {
        PipelineName::SharpP => sharp_p_pipeline(d, k),
        PipelineName::NonL2 => non_l2_pipeline(d, k),
        PipelineName::L2 => l2_pipeline(d, k),
        PipelineName::NakTheorem => nak_pipeline(d, k, j.unwrap_or(0)),
        PipelineName::DimKatzTao => best_dimension_chain(d, k, DimSeed::KatzTao),
        PipelineName::DimWolff => best_dimension_chain(d, k, DimSeed::Wolff),
    }
}

fn sharp_p_pipeline(d: u32, k: u32) -> Result<DerivationTrace, EngineError> {
    check_k_range("sharpp pipeline", d, k, 2)?;
    let mut trace = DerivationTrace::new();
    let mut b = push_seed(&mut trace, SeedKind::KatzTaoWeak, d - k + 1)?;
    for _ in 1..k {
        let next = xray_step(&b)?;
        trace.push(RuleName::XrayStep, StepInput::Bound(b), next.clone());
        b = next;
    }
    Ok(trace)
}

fn non_l2_pipeline(d: u32, k: u32) -> Result<DerivationTrace, EngineError> {
    check_k_range("nonl2 pipeline", d, k, 2)?;
    let mut trace = DerivationTrace::new();
    extend_interp_chain(&mut trace, d, k, SeedKind::KatzTao)?;
    Ok(trace)
}

fn l2_pipeline(d: u32, k: u32) -> Result<DerivationTrace, EngineError> {
    if k == 2 {
        return Err(EngineError::inapplicable(
            "l2 pipeline",
            "k >= 3 (at k = 2 the closed form needs a slightly higher p and q)",
        ));
    }
    check_k_range("l2 pipeline", d, k, 3)?;
    if !k_at_most_kcrit(d, k, KcritKind::KatzTao) {
        return Err(EngineError::inapplicable(
            "l2 pipeline",
            format!("k <= kcrit(d), i.e. (7/3)*2^(k-2) + k <= d (got k={k}, d={d})"),
        ));
    }
    let mut trace = DerivationTrace::new();
    let b = extend_interp_chain(&mut trace, d - 1, k - 1, SeedKind::KatzTao)?;
    let restricted = q_restrict(&b, b.p().clone())?;
    trace.push(RuleName::QRestrict, StepInput::Bound(b), restricted.clone());
    let out = l2_step(&restricted)?;
    trace.push(RuleName::L2Step, StepInput::Bound(restricted), out);
    Ok(trace)
}

fn nak_pipeline(d: u32, k: u32, j: u32) -> Result<DerivationTrace, EngineError> {
    if k < 4 {
        return Err(EngineError::inapplicable(
            "nak pipeline",
            format!("4 <= k < d (got k={k}, d={d})"),
        ));
    }
    check_k_range("nak pipeline", d, k, 4)?;
    if k_at_most_kcrit(d, k, KcritKind::KatzTao) {
        return Err(EngineError::inapplicable(
            "nak pipeline",
            format!("k > kcrit(d), i.e. (7/3)*2^(k-2) + k > d (got k={k}, d={d})"),
        ));
    }
    if j > k - 4 {
        return Err(EngineError::inapplicable(
            "nak pipeline",
            format!("j <= k-4 (got j={j}, k-4={})", k - 4),
        ));
    }
    if j >= 1 && k_at_most_kcrit(d - j, k - j, KcritKind::KatzTao) {
        return Err(EngineError::inapplicable(
            "nak pipeline",
            format!("k-j > kcrit(d-j) (got k-j={}, d-j={})", k - j, d - j),
        ));
    }

    let d0 = d - 2 - j;
    let k0 = k - 2 - j;
    let mut trace = DerivationTrace::new();
    let start = extend_interp_chain(&mut trace, d0, k0, SeedKind::KatzTao)?;
    let alpha0 = start.alpha().expect("plate bound").clone();
    let q0 = uint(d0 + 1);

    // Spend the j spare iterations raising p, per the stated intermediate
    // tuples p_i = (d_i+1)/(2+i), q = d0+1, alpha = alpha0: each x-ray step
    // is followed by one composite weakening (L^∞ interpolation up to p_i,
    // alpha relaxed back to alpha0, q lowered back to d0+1).
    let mut b = start;
    for i in 1..=j {
        let after_xray = xray_step(&b)?;
        trace.push(RuleName::XrayStep, StepInput::Bound(b), after_xray.clone());

        let p_target = (uint(after_xray.d() + 1)) / (int(2) + uint(i));
        let weakened = after_xray
            .with_interpolated_p(p_target)
            .with_weakened_alpha(alpha0.clone());
        let weakened = q_restrict(&weakened, q0.clone())?;
        trace.push(
            RuleName::FormulaPipeline,
            StepInput::Bound(after_xray),
            weakened.clone(),
        );
        b = weakened;
    }

    let restricted = q_restrict(&b, b.p().clone())?;
    trace.push(RuleName::QRestrict, StepInput::Bound(b), restricted.clone());
    let mut b = restricted;

    // alpha0 < 2 is guaranteed by the kcrit hypothesis; if alpha0 < 1
    // already, weaken it to 1 (legal since delta <= 1) so the chain still
    // passes through the plate branch and ends at (d, k).
    if *b.alpha().expect("plate bound") < Rat::one() {
        let weakened = b.with_weakened_alpha(Rat::one());
        trace.push(
            RuleName::FormulaPipeline,
            StepInput::Bound(b),
            weakened.clone(),
        );
        b = weakened;
    }

    let mid = l2_step(&b)?;
    trace.push(RuleName::L2Step, StepInput::Bound(b), mid.clone());
    let fin = l2_step(&mid)?;
    trace.push(RuleName::L2Step, StepInput::Bound(mid), fin);
    Ok(trace)
}

/// The closed-form exponents a pipeline is expected to land on, compared as
/// exact rationals (the ε flag rides along separately).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub operator: Operator,
    pub p: Rat,
    pub q: Exponent,
    pub alpha: Option<Rat>,
}

impl ClosedForm {
    pub fn matches(&self, b: &BoundSpec) -> bool {
        b.operator() == self.operator
            && *b.p() == self.p
            && *b.q() == self.q
            && b.alpha() == self.alpha.as_ref()
    }
}

/// Closed form for `name` at (d, k); `None` for the dimension pipelines,
/// whose result is a dimension value rather than an exponent tuple.
pub fn closed_form(name: PipelineName, d: u32, k: u32, j: Option<u32>) -> Option<ClosedForm> {
    let dr = uint(d);
    let kr = uint(k);
    match name {
        PipelineName::SharpP => {
            // p = d/(k + 3/4), alpha = d - kp, q = (d-k) * (4(d-k+1)/7)'.
            let p = &dr / (&kr + rat(3, 4));
            let alpha = &dr - &kr * &p;
            let seed_p = rat(4, 7) * uint(d - k + 1);
            let q = uint(d - k) * (crate::step::conjugate_exponent(&seed_p).ok()?);
            Some(ClosedForm {
                operator: Operator::MaximalPlate,
                p,
                q: Exponent::finite(q),
                alpha: Some(alpha),
            })
        }
        PipelineName::NonL2 => Some(ClosedForm {
            operator: Operator::MaximalPlate,
            p: (&dr + Rat::one()) / int(2),
            q: Exponent::finite(&dr + Rat::one()),
            alpha: Some(rat(3, 7) * uint(d - k) / crate::rat::pow2(k as i64 - 1)),
        }),
        PipelineName::L2 => Some(ClosedForm {
            operator: Operator::MaximalPlate,
            p: &dr / int(2),
            q: Exponent::finite(&dr / int(2)),
            alpha: Some(rat(3, 7) * uint(d - k) / crate::rat::pow2(k as i64 - 2) - Rat::one()),
        }),
        PipelineName::NakTheorem => {
            let p = (&dr - Rat::one()) / (int(2) + uint(j.unwrap_or(0)));
            Some(ClosedForm {
                operator: Operator::MaximalPlane,
                p: p.clone(),
                q: Exponent::finite(p),
                alpha: None,
            })
        }
        PipelineName::DimKatzTao | PipelineName::DimWolff => None,
    }
}

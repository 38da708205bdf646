//! Replayable derivation traces.
//!
//! A trace records a chain of rule applications, each step carrying its
//! input (a bound, or the seed parameters for the first step) and its output
//! bound. Traces are plain data: validating one re-checks the chaining
//! discipline, so a serialized trace can be audited independently of the
//! code that produced it.

use alloc::vec::Vec;

use crate::bound::BoundSpec;
use crate::error::EngineError;
use crate::seed::SeedKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleName {
    Seed,
    XrayStep,
    InterpStep,
    L2Step,
    QRestrict,
    /// A composite move made by a named pipeline: a legal weakening
    /// (raise p by L^∞ interpolation, raise α, lower q) asserted as one step.
    FormulaPipeline,
}

impl RuleName {
    pub fn name(&self) -> &'static str {
        match self {
            RuleName::Seed => "seed",
            RuleName::XrayStep => "xray_step",
            RuleName::InterpStep => "interp_step",
            RuleName::L2Step => "l2_step",
            RuleName::QRestrict => "q_restrict",
            RuleName::FormulaPipeline => "formula_pipeline",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepInput {
    SeedParams { kind: SeedKind, n: u32 },
    Bound(BoundSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: RuleName,
    pub input: StepInput,
    pub output: BoundSpec,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DerivationTrace {
    pub steps: Vec<TraceStep>,
}

impl DerivationTrace {
    pub fn new() -> Self {
        DerivationTrace { steps: Vec::new() }
    }

    pub fn push(&mut self, rule: RuleName, input: StepInput, output: BoundSpec) {
        self.steps.push(TraceStep { rule, input, output });
    }

    /// The bound the chain ends at.
    pub fn final_bound(&self) -> Option<&BoundSpec> {
        self.steps.last().map(|s| &s.output)
    }

    /// Re-checks the chaining discipline:
    /// each step's input bound equals the previous step's output, and every
    /// x-ray/interpolation step raises d and k by exactly one.
    pub fn validate(&self) -> Result<(), EngineError> {
        let mut prev: Option<&BoundSpec> = None;
        for (i, step) in self.steps.iter().enumerate() {
            match (&step.input, prev) {
                (StepInput::Bound(b), Some(p)) => {
                    if b != p {
                        return Err(EngineError::domain(alloc::format!(
                            "trace step {i}: input does not match previous output"
                        )));
                    }
                }
                (StepInput::Bound(_), None) => {} // chain starting from a given bound
                (StepInput::SeedParams { .. }, None) => {}
                (StepInput::SeedParams { .. }, Some(_)) => {
                    return Err(EngineError::domain(alloc::format!(
                        "trace step {i}: seed in the middle of a chain"
                    )));
                }
            }
            if matches!(step.rule, RuleName::XrayStep | RuleName::InterpStep) {
                if let StepInput::Bound(b) = &step.input {
                    if step.output.d() != b.d() + 1 || step.output.k() != b.k() + 1 {
                        return Err(EngineError::domain(alloc::format!(
                            "trace step {i}: {} must raise d and k by exactly 1",
                            step.rule.name()
                        )));
                    }
                }
            }
            prev = Some(&step.output);
        }
        Ok(())
    }
}

//! Error type shared by the whole calculus.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// Argument outside an operation's domain (bad exponent, bad dimension).
    Domain(String),
    /// A recursion rule was applied to a bound that violates one of its
    /// hypotheses; carries the rule and the failed hypothesis verbatim so
    /// callers can surface it.
    RuleInapplicable {
        rule: &'static str,
        hypothesis: String,
    },
}

impl EngineError {
    pub fn domain(msg: impl Into<String>) -> Self {
        EngineError::Domain(msg.into())
    }

    pub fn inapplicable(rule: &'static str, hypothesis: impl Into<String>) -> Self {
        EngineError::RuleInapplicable {
            rule,
            hypothesis: hypothesis.into(),
        }
    }
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Domain(msg) => write!(f, "domain error: {msg}"),
            EngineError::RuleInapplicable { rule, hypothesis } => {
                write!(f, "{rule} not applicable: requires {hypothesis}")
            }
        }
    }
}

impl core::error::Error for EngineError {}

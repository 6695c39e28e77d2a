//! Checking derivations against finite models.
//!
//! Every consecutive pair of states in a trace must evaluate to the same
//! tensor on every admissible basis input of every model of the theory.

use super::trace::ProofTrace;
use crate::models::{FiniteBialgebraModel, IdentityCheck, ModelError, Witness};
use crate::theories::Theory;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessFailure {
    pub model: String,
    /// 1-based step whose result disagrees with its predecessor.
    pub step: usize,
    pub witness: Witness,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SoundnessReport {
    /// Models that were applicable to the theory.
    pub models: Vec<String>,
    /// Number of (model, step) comparisons made.
    pub comparisons: usize,
    pub failures: Vec<SoundnessFailure>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.failures.is_empty() && !self.models.is_empty()
    }
}

/// Checks each step of `trace` on every model in `models` that satisfies
/// the flags of `theory`. Other models are skipped.
pub fn check_soundness(
    trace: &ProofTrace,
    theory: &Theory,
    models: &[FiniteBialgebraModel],
) -> Result<SoundnessReport, ModelError> {
    let mut report = SoundnessReport::default();
    let mut states = vec![&trace.lhs];
    states.extend(trace.steps.iter().map(|s| &s.result));
    for m in models.iter().filter(|m| m.models_theory(theory)) {
        report.models.push(m.name().to_string());
        for (k, pair) in states.windows(2).enumerate() {
            report.comparisons += 1;
            if let IdentityCheck::Fails(witness) = m.holds_comb(pair[0], pair[1])? {
                report.failures.push(SoundnessFailure { model: m.name().to_string(), step: k + 1, witness });
            }
        }
        report.comparisons += 1;
        if let IdentityCheck::Fails(witness) = m.holds_comb(&trace.lhs, &trace.rhs)? {
            let step = trace.steps.len() + 1;
            report.failures.push(SoundnessFailure { model: m.name().to_string(), step, witness });
        }
    }
    Ok(report)
}

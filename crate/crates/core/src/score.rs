//! Accuracy and description-length scoring, plus the arithmetic that
//! decides when a tested program lets us prune around an earlier one.
//!
//! Two scores rank hypotheses: `S_ACC = tp + tn` counts correctly
//! classified examples, and `S_MDL = tp + tn - size` additionally charges
//! for program length. Both are exposed on [`Score`].
//!
//! The trigger conditions here are one-sided comparisons between a newly
//! tested program and a previously tested one. Each is strict: when it
//! fires, every generalization (or specialization) of the earlier program
//! is *provably* worse than the new program under the relevant score, so
//! pruning them can never discard an optimum.

use crate::logic::Hypothesis;

/// Test outcome of a hypothesis against an example set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    /// Positive examples entailed.
    pub tp: usize,
    /// Negative examples not entailed.
    pub tn: usize,
    /// Negative examples entailed: `n_neg - tn`.
    pub fp: usize,
    /// Positive examples not entailed: `n_pos - tp`.
    pub fn_: usize,
}

impl Outcome {
    pub fn new(tp: usize, tn: usize, n_pos: usize, n_neg: usize) -> Outcome {
        assert!(tp <= n_pos && tn <= n_neg, "outcome exceeds example counts");
        Outcome {
            tp,
            tn,
            fp: n_neg - tn,
            fn_: n_pos - tp,
        }
    }
}

/// A hypothesis outcome together with both scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Score {
    pub s_acc: i64,
    pub s_mdl: i64,
    pub outcome: Outcome,
    pub size: usize,
}

/// Score `h` given its test outcome.
pub fn score(h: &Hypothesis, outcome: Outcome) -> Score {
    score_with_size(h.size(), outcome)
}

pub fn score_with_size(size: usize, outcome: Outcome) -> Score {
    let s_acc = (outcome.tp + outcome.tn) as i64;
    Score {
        s_acc,
        s_mdl: s_acc - size as i64,
        outcome,
        size,
    }
}

/// Which directions around a previously tested program become prunable
/// after scoring a new program.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SoundTriggers {
    /// Every generalization of the earlier program scores below the new
    /// one under `S_ACC`: the accuracy gain exceeds what recovering all
    /// of the earlier program's false negatives could contribute.
    pub gen_prunable_prev: bool,
    /// Dual for specializations: the gain exceeds the earlier program's
    /// false positives.
    pub spec_prunable_prev: bool,
}

/// Accuracy-score trigger conditions comparing a new program against an
/// earlier one. Strict inequalities; equality never fires.
pub fn sound_triggers(new: &Score, prev: &Score, n_pos: usize, n_neg: usize) -> SoundTriggers {
    let gain = new.s_acc - prev.s_acc;
    SoundTriggers {
        gen_prunable_prev: gain > (n_pos - prev.outcome.tp) as i64,
        spec_prunable_prev: gain > (n_neg - prev.outcome.tn) as i64,
    }
}

/// Size floors that make generalizations or specializations provably
/// worse than the new program under `S_MDL` once their size exceeds the
/// floor. `*_prev` floors anchor at the earlier program, `*_new` floors
/// at the new program itself. Negative values clamp to 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBounds {
    pub gen_floor_prev: usize,
    pub spec_floor_prev: usize,
    pub gen_floor_new: usize,
    pub spec_floor_new: usize,
}

pub fn size_bounds(new: &Score, prev: &Score, n_pos: usize, n_neg: usize) -> SizeBounds {
    let clamp = |x: i64| if x < 0 { 0 } else { x as usize };
    SizeBounds {
        gen_floor_prev: clamp(n_pos as i64 + prev.outcome.tn as i64 - new.s_mdl),
        spec_floor_prev: clamp(n_neg as i64 + prev.outcome.tp as i64 - new.s_mdl),
        gen_floor_new: clamp(n_pos as i64 - new.outcome.tp as i64 + new.size as i64),
        spec_floor_new: clamp(n_neg as i64 - new.outcome.tn as i64 + new.size as i64),
    }
}

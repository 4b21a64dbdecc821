//! The generate-test-constrain search loop.
//!
//! Each iteration pulls the next store-permitted candidate from a
//! [`CandidateSource`], tests it against the examples, and (depending on
//! mode) learns hypothesis constraints from the result:
//!
//! * [`Mode::Normal`] treats every imperfect outcome as a hard failure and
//!   prunes with the full constraint table. Complete for noise-free data;
//!   a single bad label can prune every correct program.
//! * [`Mode::Noisy`] relaxes each outcome against the threshold before the
//!   constraint table, so a program whose coverage clears the bar on both
//!   sides is merely banished, then adds generalization/specialization
//!   constraints that are provably sound for the accuracy score (no pruned
//!   program can beat the best score seen) and size-floored constraints
//!   sound for the description-length score.
//! * [`Mode::Enumerate`] never constrains; it is the brute-force baseline.
//!
//! All modes stop early on a program that covers every positive and no
//! negative example. Noisy and Enumerate otherwise run the space (or
//! budget) to exhaustion and return the best program seen.
//!
//! Two conventions matter when reading the noisy-path code. The history
//! stores the relaxed outcome of each hypothesis with scores derived from
//! it, while the current candidate always enters the trigger and floor
//! formulas with its raw outcome. And adding an unqualified
//! generalization (or specialization) constraint for a program marks that
//! side as fully pruned, which suppresses the weaker variants of the same
//! side later; the marks make the emitted constraint set match what the
//! sound-pruning derivation actually licenses.

use crate::constraint::{learn_constraints, ConstraintStore, HypothesisConstraint, MatchMode};
use crate::eval::{count_outcomes, EvalLimits};
use crate::generate::{BiasGenerator, CandidateSource};
use crate::logic::Hypothesis;
use crate::parse::{BackgroundKnowledge, DeclarationBias, ExampleSet, SearchBounds};
use crate::score::{score, size_bounds, sound_triggers, Outcome, Score};
use crate::subsume::{is_generalization_of, is_specialization_of, is_superset_modulo_renaming};
use std::collections::HashSet;
use std::io::Write;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Normal,
    Noisy,
    Enumerate,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Mode::Normal => "normal",
            Mode::Noisy => "noisy",
            Mode::Enumerate => "enumerate",
        };
        write!(f, "{name}")
    }
}

/// Noise threshold as an exact rational in [0, 1].
///
/// Outcome relaxation compares `count > t * total`. Holding `t` as a
/// float breaks ties (0.29 * 100 rounds below 29), so the comparison
/// cross-multiplies integers instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    num: u64,
    den: u64,
}

impl Threshold {
    pub fn new(num: u64, den: u64) -> Threshold {
        assert!(den > 0, "threshold denominator must be positive");
        assert!(num <= den, "threshold must not exceed 1");
        Threshold { num, den }
    }

    pub fn zero() -> Threshold {
        Threshold { num: 0, den: 1 }
    }

    /// Parse "0.1", ".25", "1", or "3/10".
    pub fn parse(text: &str) -> Result<Threshold, String> {
        let text = text.trim();
        let bad = |_| format!("invalid threshold '{text}'");
        if let Some((n, d)) = text.split_once('/') {
            let num: u64 = n.trim().parse().map_err(bad)?;
            let den: u64 = d.trim().parse().map_err(bad)?;
            if den == 0 {
                return Err(format!("invalid threshold '{text}': zero denominator"));
            }
            if num > den {
                return Err(format!("threshold '{text}' exceeds 1"));
            }
            return Ok(Threshold::new(num, den));
        }
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(format!("invalid threshold '{text}'"));
        }
        let int: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(bad)?
        };
        if frac_part.is_empty() {
            if int > 1 {
                return Err(format!("threshold '{text}' exceeds 1"));
            }
            return Ok(Threshold::new(int, 1));
        }
        if frac_part.len() > 18 || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid threshold '{text}'"));
        }
        let den = 10u64.pow(frac_part.len() as u32);
        let frac: u64 = frac_part.parse().map_err(bad)?;
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(|| format!("invalid threshold '{text}'"))?;
        if num > den {
            return Err(format!("threshold '{text}' exceeds 1"));
        }
        Ok(Threshold::new(num, den))
    }

    /// Is `count` strictly more than `t * total` misclassifications?
    pub fn exceeded_by(&self, count: usize, total: usize) -> bool {
        (count as u128) * (self.den as u128) > (self.num as u128) * (total as u128)
    }

    /// Smallest integer at least `t * n`, computed exactly.
    pub fn scaled_ceil(&self, n: usize) -> usize {
        let num = self.num as u128 * n as u128;
        let den = self.den as u128;
        num.div_ceil(den) as usize
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    pub mode: Mode,
    /// Noise threshold for outcome relaxation (noisy mode only).
    pub threshold: Threshold,
    /// Learn banish/table constraints from the relaxed outcome.
    pub enable_minimal: bool,
    /// Learn accuracy-sound constraints against the history.
    pub enable_sound: bool,
    /// Learn size-floored constraints against the history.
    pub enable_size: bool,
    /// In normal mode, return the best program seen instead of nothing
    /// when the search ends without a perfect program.
    pub anytime: bool,
    pub match_mode: MatchMode,
    pub eval_limits: EvalLimits,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            mode: Mode::Normal,
            threshold: Threshold::zero(),
            enable_minimal: true,
            enable_sound: true,
            enable_size: true,
            anytime: false,
            match_mode: MatchMode::default(),
            eval_limits: EvalLimits::default(),
        }
    }
}

impl EngineConfig {
    pub fn normal() -> EngineConfig {
        EngineConfig::default()
    }

    pub fn noisy(threshold: Threshold) -> EngineConfig {
        EngineConfig {
            mode: Mode::Noisy,
            threshold,
            ..EngineConfig::default()
        }
    }

    pub fn enumerate() -> EngineConfig {
        EngineConfig {
            mode: Mode::Enumerate,
            ..EngineConfig::default()
        }
    }
}

/// Why the search loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// A program covered every positive and no negative example.
    Solution,
    /// The candidate source ran out of permitted programs.
    SpaceExhausted,
    /// The tested-program budget ran out.
    ProgramBudget,
    /// The wall-clock timeout ran out.
    Timeout,
}

/// One tested program, with everything the test produced.
#[derive(Debug, Clone)]
pub struct TraceRecord {
    /// 1-based position in the generated sequence.
    pub index: usize,
    pub hypothesis: Hypothesis,
    pub outcome: Outcome,
    /// Outcome after noise relaxation, when it differs from raw.
    pub relaxed: Option<Outcome>,
    pub s_acc: i64,
    pub s_mdl: i64,
    /// Constraints this test added, split by learning path.
    pub minimal: Vec<HypothesisConstraint>,
    pub sound: Vec<HypothesisConstraint>,
    pub size_path: Vec<HypothesisConstraint>,
    /// Store size after this test.
    pub store_size: usize,
    /// Best accuracy score over the sequence so far.
    pub best_s_acc: i64,
}

#[derive(Debug)]
pub struct RunResult {
    pub returned: Option<Hypothesis>,
    /// True when `returned` covers every positive and no negative example.
    pub is_solution: bool,
    /// Training score of `returned`, when there is one.
    pub best_score: Option<Score>,
    pub programs_tested: usize,
    pub constraints_added: usize,
    pub stop_reason: StopReason,
    pub wall_time: std::time::Duration,
    pub trace: Vec<TraceRecord>,
}

struct HistoryEntry {
    hypothesis: Hypothesis,
    /// Score of the relaxed outcome when the minimal path stored one,
    /// otherwise of the raw outcome.
    score: Score,
}

/// Search state threaded through the learning paths.
struct Search {
    n_pos: usize,
    n_neg: usize,
    store: ConstraintStore,
    history: Vec<HistoryEntry>,
    /// Canonical keys of programs whose full generalization side (no
    /// qualifier, no floor) is already pruned.
    gens_pruned: HashSet<String>,
    /// Same for the specialization side.
    specs_pruned: HashSet<String>,
}

impl Search {
    fn gen_done(&self, h: &Hypothesis) -> bool {
        self.gens_pruned.contains(h.canonical_key())
    }

    fn spec_done(&self, h: &Hypothesis) -> bool {
        self.specs_pruned.contains(h.canonical_key())
    }

    /// Add a constraint, keeping the pruned-side marks in sync. Returns
    /// true when the store did not already hold it.
    fn add(&mut self, c: HypothesisConstraint, added: &mut Vec<HypothesisConstraint>) -> bool {
        use crate::constraint::ConstraintKind::*;
        if !c.non_recursive_only && c.size_floor.is_none() {
            let key = c.anchor.canonical_key().to_string();
            match c.kind {
                Generalization => {
                    self.gens_pruned.insert(key);
                }
                Specialization => {
                    self.specs_pruned.insert(key);
                }
                _ => {}
            }
        }
        if self.store.add(c.clone()) {
            added.push(c);
            true
        } else {
            false
        }
    }

    /// Constraint table on the (relaxed) outcome: banish when perfect,
    /// otherwise specialization/generalization/elimination as the failure
    /// direction dictates.
    fn learn_minimal(&mut self, h: &Hypothesis, out: Outcome) -> Vec<HypothesisConstraint> {
        let mut added = Vec::new();
        for c in learn_constraints(h, out.tp, out.tn, self.n_pos, self.n_neg, false, None) {
            self.add(c, &mut added);
        }
        added
    }

    /// Accuracy-sound constraints from comparing the new program's raw
    /// score against every stored hypothesis.
    ///
    /// A previous program's generalizations can all be pruned once the new
    /// score beats the best any of them could reach (all positives plus
    /// the previous true negatives); dually for specializations. When the
    /// new program relates to a previous one by subsumption and ties it on
    /// the bounding side of the score, the new program's own side can be
    /// pruned for non-recursive candidates. Perfect raw coverage of either
    /// example class prunes the corresponding side of the new program
    /// outright.
    fn learn_sound(&mut self, new_h: &Hypothesis, new_score: &Score) -> Vec<HypothesisConstraint> {
        let mut added = Vec::new();
        for i in 0..self.history.len() {
            let prev_h = self.history[i].hypothesis.clone();
            let prev_score = self.history[i].score;
            let trig = sound_triggers(new_score, &prev_score, self.n_pos, self.n_neg);
            if trig.gen_prunable_prev && !self.gen_done(&prev_h) {
                self.add(
                    HypothesisConstraint::generalization(prev_h.clone(), false, None),
                    &mut added,
                );
            }
            if trig.spec_prunable_prev && !self.spec_done(&prev_h) {
                self.add(
                    HypothesisConstraint::specialization(prev_h.clone(), false, None),
                    &mut added,
                );
            }
            if is_generalization_of(new_h, &prev_h) && prev_score.outcome.tp == new_score.outcome.tp
            {
                if !self.spec_done(new_h) {
                    self.add(
                        HypothesisConstraint::specialization(new_h.clone(), true, None),
                        &mut added,
                    );
                }
                if is_superset_modulo_renaming(new_h, &prev_h) && !self.gen_done(new_h) {
                    self.add(
                        HypothesisConstraint::generalization(new_h.clone(), true, None),
                        &mut added,
                    );
                }
            }
            if is_specialization_of(new_h, &prev_h)
                && prev_score.outcome.tn == new_score.outcome.tn
                && !self.gen_done(new_h)
            {
                self.add(
                    HypothesisConstraint::generalization(new_h.clone(), true, None),
                    &mut added,
                );
            }
        }
        if new_score.outcome.tp == self.n_pos && !self.gen_done(new_h) {
            self.add(
                HypothesisConstraint::generalization(new_h.clone(), false, None),
                &mut added,
            );
        }
        if new_score.outcome.tn == self.n_neg && !self.spec_done(new_h) {
            self.add(
                HypothesisConstraint::specialization(new_h.clone(), false, None),
                &mut added,
            );
        }
        added
    }

    /// Size-floored constraints sound for the description-length score: a
    /// generalization (specialization) of an already-tested program can be
    /// pruned once it is large enough that even its best reachable
    /// accuracy cannot beat the new program's size-penalized score.
    fn learn_size(&mut self, new_h: &Hypothesis, new_score: &Score) -> Vec<HypothesisConstraint> {
        let mut added = Vec::new();
        for i in 0..self.history.len() {
            let prev_h = self.history[i].hypothesis.clone();
            let prev_score = self.history[i].score;
            let bounds = size_bounds(new_score, &prev_score, self.n_pos, self.n_neg);
            if !self.gen_done(&prev_h) {
                self.add(
                    HypothesisConstraint::generalization(
                        prev_h.clone(),
                        false,
                        Some(bounds.gen_floor_prev),
                    ),
                    &mut added,
                );
            }
            if !self.spec_done(&prev_h) {
                self.add(
                    HypothesisConstraint::specialization(
                        prev_h.clone(),
                        false,
                        Some(bounds.spec_floor_prev),
                    ),
                    &mut added,
                );
            }
        }
        let own = size_bounds(new_score, new_score, self.n_pos, self.n_neg);
        if !self.gen_done(new_h) {
            self.add(
                HypothesisConstraint::generalization(new_h.clone(), false, Some(own.gen_floor_new)),
                &mut added,
            );
        }
        if !self.spec_done(new_h) {
            self.add(
                HypothesisConstraint::specialization(
                    new_h.clone(),
                    false,
                    Some(own.spec_floor_new),
                ),
                &mut added,
            );
        }
        added
    }
}

/// Relax an outcome against the minimal-constraint threshold: a side
/// covering strictly more than `t` of its example class is treated as
/// covering all of it, so the constraint table sees a perfect side and
/// learns only weak constraints from it. Misses on a side at or below
/// the bar are kept verbatim. At t = 0 any nonzero coverage clears the
/// bar, so an imperfect but nontrivial program yields just a banish.
pub fn relax_outcome(out: Outcome, t: Threshold, n_pos: usize, n_neg: usize) -> Outcome {
    let tp = if t.exceeded_by(out.tp, n_pos) {
        n_pos
    } else {
        out.tp
    };
    let tn = if t.exceeded_by(out.tn, n_neg) {
        n_neg
    } else {
        out.tn
    };
    Outcome::new(tp, tn, n_pos, n_neg)
}

/// Run the search over the hypothesis space the bias declares.
pub fn run(
    bias: &DeclarationBias,
    bounds: &SearchBounds,
    bk: &BackgroundKnowledge,
    examples: &ExampleSet,
    cfg: &EngineConfig,
) -> RunResult {
    let mut source = BiasGenerator::new(bias.clone(), bounds.clone());
    run_with_source(&mut source, bounds, bk, examples, cfg)
}

/// Run the search over an explicit candidate source. Used directly for
/// replays over fixed hypothesis spaces.
pub fn run_with_source(
    source: &mut dyn CandidateSource,
    bounds: &SearchBounds,
    bk: &BackgroundKnowledge,
    examples: &ExampleSet,
    cfg: &EngineConfig,
) -> RunResult {
    let start = Instant::now();
    let n_pos = examples.pos.len();
    let n_neg = examples.neg.len();
    let mut search = Search {
        n_pos,
        n_neg,
        store: ConstraintStore::new(cfg.match_mode),
        history: Vec::new(),
        gens_pruned: HashSet::new(),
        specs_pruned: HashSet::new(),
    };
    let mut trace: Vec<TraceRecord> = Vec::new();
    let mut best: Option<(Hypothesis, Score)> = None;
    let track_best = matches!(cfg.mode, Mode::Noisy | Mode::Enumerate) || cfg.anytime;
    // The trace reports the running max even when the mode never returns
    // a best-effort program.
    let mut max_s_acc = i64::MIN;
    let mut stop = StopReason::SpaceExhausted;

    loop {
        if let Some(limit) = bounds.wall_timeout {
            if start.elapsed() >= limit {
                stop = StopReason::Timeout;
                break;
            }
        }
        if let Some(cap) = bounds.max_programs {
            if trace.len() >= cap {
                stop = StopReason::ProgramBudget;
                break;
            }
        }
        let h = match source.next_candidate(&search.store) {
            Some(h) => h,
            None => break,
        };
        let raw = count_outcomes(&h, bk, examples, cfg.eval_limits);
        let raw_score = score(&h, raw);
        let index = trace.len() + 1;
        max_s_acc = max_s_acc.max(raw_score.s_acc);

        if raw.tp == n_pos && raw.tn == n_neg {
            trace.push(TraceRecord {
                index,
                hypothesis: h.clone(),
                outcome: raw,
                relaxed: None,
                s_acc: raw_score.s_acc,
                s_mdl: raw_score.s_mdl,
                minimal: Vec::new(),
                sound: Vec::new(),
                size_path: Vec::new(),
                store_size: search.store.len(),
                best_s_acc: max_s_acc,
            });
            return RunResult {
                returned: Some(h),
                is_solution: true,
                best_score: Some(raw_score),
                programs_tested: trace.len(),
                constraints_added: search.store.len(),
                stop_reason: StopReason::Solution,
                wall_time: start.elapsed(),
                trace,
            };
        }

        if track_best {
            let improved = best.as_ref().is_none_or(|(_, s)| raw_score.s_acc > s.s_acc);
            if improved {
                best = Some((h.clone(), raw_score));
            }
        }

        let (relaxed, minimal, sound, size_path) = match cfg.mode {
            Mode::Normal => {
                let mut added = Vec::new();
                for c in learn_constraints(&h, raw.tp, raw.tn, n_pos, n_neg, false, None) {
                    search.add(c, &mut added);
                }
                (None, added, Vec::new(), Vec::new())
            }
            Mode::Enumerate => (None, Vec::new(), Vec::new(), Vec::new()),
            Mode::Noisy => {
                let relaxed_out = relax_outcome(raw, cfg.threshold, n_pos, n_neg);
                let minimal = if cfg.enable_minimal {
                    search.learn_minimal(&h, relaxed_out)
                } else {
                    Vec::new()
                };
                let sound = if cfg.enable_sound {
                    search.learn_sound(&h, &raw_score)
                } else {
                    Vec::new()
                };
                let size_path = if cfg.enable_size {
                    search.learn_size(&h, &raw_score)
                } else {
                    Vec::new()
                };
                let stored = if cfg.enable_minimal { relaxed_out } else { raw };
                search.history.push(HistoryEntry {
                    hypothesis: h.clone(),
                    score: score(&h, stored),
                });
                let shown = if relaxed_out != raw {
                    Some(relaxed_out)
                } else {
                    None
                };
                (shown, minimal, sound, size_path)
            }
        };

        trace.push(TraceRecord {
            index,
            hypothesis: h,
            outcome: raw,
            relaxed,
            s_acc: raw_score.s_acc,
            s_mdl: raw_score.s_mdl,
            minimal,
            sound,
            size_path,
            store_size: search.store.len(),
            best_s_acc: max_s_acc,
        });
    }

    let (returned, best_score) = match best {
        Some((h, s)) => (Some(h), Some(s)),
        None => (None, None),
    };
    RunResult {
        returned,
        is_solution: false,
        best_score,
        programs_tested: trace.len(),
        constraints_added: search.store.len(),
        stop_reason: stop,
        wall_time: start.elapsed(),
        trace,
    }
}

/// Write the trace as CSV: one row per tested program.
pub fn write_trace_csv<W: Write>(trace: &[TraceRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "index",
        "program",
        "size",
        "tp",
        "tn",
        "s_acc",
        "s_mdl",
        "constraints",
        "store_size",
        "best_s_acc",
    ])?;
    for r in trace {
        let mut cs: Vec<String> = Vec::new();
        for c in r.minimal.iter().chain(&r.sound).chain(&r.size_path) {
            cs.push(describe_constraint(c));
        }
        w.write_record([
            r.index.to_string(),
            crate::parse::print_hypothesis(&r.hypothesis).replace('\n', " "),
            r.hypothesis.size().to_string(),
            r.outcome.tp.to_string(),
            r.outcome.tn.to_string(),
            r.s_acc.to_string(),
            r.s_mdl.to_string(),
            cs.join("; "),
            r.store_size.to_string(),
            r.best_s_acc.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Short human-readable form, e.g. "generalization(>4, nonrec)".
pub fn describe_constraint(c: &HypothesisConstraint) -> String {
    let mut quals = Vec::new();
    if let Some(f) = c.size_floor {
        quals.push(format!(">{f}"));
    }
    if c.non_recursive_only {
        quals.push("nonrec".to_string());
    }
    if quals.is_empty() {
        c.kind.to_string()
    } else {
        format!("{}({})", c.kind, quals.join(", "))
    }
}

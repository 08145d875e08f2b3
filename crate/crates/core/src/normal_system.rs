//! Post normal systems: rules `alpha X -> X beta`, the successor relation,
//! bounded derivation search over the assertion set, and the
//! concatenation-plus-length characterization of derivability.
//!
//! The assertion problem is undecidable, so every search here is bounded and
//! a miss always means "not reachable within bounds", never "not derivable".

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::textfmt::{content_lines, keyed_value, ParseError};
use crate::words::{Letter, Word};

/// 1-based, stable rule index.
pub type RuleIndex = usize;

/// The alphabet a system's words are drawn from. `d` and `f` are reserved
/// for the reductions in any tier; `c` is permitted only in the extended
/// tier used by shift systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphabetTier {
    /// {a, b}
    Base,
    /// {a, b, c}
    Extended,
}

impl AlphabetTier {
    pub fn permits(self, l: Letter) -> bool {
        match l {
            Letter::A | Letter::B => true,
            Letter::C => self == AlphabetTier::Extended,
            Letter::D | Letter::F => false,
        }
    }
}

/// A rule `alpha X -> X beta`: strip the prefix `alpha`, append `beta`.
/// Both words are nonempty and free of reserved markers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalRule {
    alpha: Word,
    beta: Word,
}

impl NormalRule {
    pub fn new(alpha: Word, beta: Word) -> Result<NormalRule, SystemError> {
        if alpha.is_empty() || beta.is_empty() {
            return Err(SystemError::EmptyRuleWord);
        }
        Ok(NormalRule { alpha, beta })
    }

    pub fn alpha(&self) -> &Word {
        &self.alpha
    }

    pub fn beta(&self) -> &Word {
        &self.beta
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("initial word must be nonempty")]
    EmptyInitial,
    #[error("rule words must be nonempty")]
    EmptyRuleWord,
    #[error("a system needs at least one rule")]
    NoRules,
    #[error("letter `{0}` is outside the system's alphabet tier")]
    LetterOutsideTier(Letter),
}

/// A normal system: a nonempty initial word plus an ordered, 1-indexed list
/// of rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSystem {
    initial: Word,
    rules: Vec<NormalRule>,
    tier: AlphabetTier,
}

/// One rewrite step: which rule fired and the remainder `x` with
/// `previous = alpha x` and `next = x beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub rule: RuleIndex,
    pub remainder: Word,
}

/// A witnessed rewrite sequence from a start word. Validity is established
/// by replay, not by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    start: Word,
    steps: Vec<DerivationStep>,
}

impl Derivation {
    pub fn new(start: Word, steps: Vec<DerivationStep>) -> Derivation {
        Derivation { start, steps }
    }

    pub fn start(&self) -> &Word {
        &self.start
    }

    pub fn steps(&self) -> &[DerivationStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Projects the rule indices i_1..i_k out of the steps.
    pub fn rule_indices(&self) -> Vec<RuleIndex> {
        self.steps.iter().map(|s| s.rule).collect()
    }
}

impl NormalSystem {
    pub fn new(
        initial: Word,
        rules: Vec<NormalRule>,
        tier: AlphabetTier,
    ) -> Result<NormalSystem, SystemError> {
        if initial.is_empty() {
            return Err(SystemError::EmptyInitial);
        }
        if rules.is_empty() {
            return Err(SystemError::NoRules);
        }
        for word in std::iter::once(&initial)
            .chain(rules.iter().flat_map(|r| [&r.alpha, &r.beta]))
        {
            for &l in word.letters() {
                if !tier.permits(l) {
                    return Err(SystemError::LetterOutsideTier(l));
                }
            }
        }
        Ok(NormalSystem {
            initial,
            rules,
            tier,
        })
    }

    pub fn initial(&self) -> &Word {
        &self.initial
    }

    pub fn rules(&self) -> &[NormalRule] {
        &self.rules
    }

    /// Rule count `t`.
    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Looks up a rule by 1-based index. Panics when out of range.
    pub fn rule(&self, index: RuleIndex) -> &NormalRule {
        assert!(
            index >= 1 && index <= self.rules.len(),
            "rule index {index} out of range 1..={}",
            self.rules.len()
        );
        &self.rules[index - 1]
    }

    pub fn tier(&self) -> AlphabetTier {
        self.tier
    }

    /// Every successor of `v`, in ascending rule-index order: `(j, x beta_j)`
    /// for each rule j with `v = alpha_j x`.
    pub fn successors(&self, v: &Word) -> Vec<(RuleIndex, Word)> {
        self.successor_steps(v)
            .into_iter()
            .map(|(j, _, next)| (j, next))
            .collect()
    }

    /// Like [`successors`](Self::successors) but keeps the remainder `x`.
    fn successor_steps(&self, v: &Word) -> Vec<(RuleIndex, Word, Word)> {
        let mut out = Vec::new();
        for (i, rule) in self.rules.iter().enumerate() {
            if let Some(x) = v.strip_prefix(&rule.alpha) {
                let next = x.concat(&rule.beta);
                out.push((i + 1, x, next));
            }
        }
        out
    }

    /// Replays a derivation, returning the full word sequence (start first)
    /// or `None` when some step is not a valid successor application.
    pub fn replay(&self, d: &Derivation) -> Option<Vec<Word>> {
        let mut words = Vec::with_capacity(d.steps.len() + 1);
        let mut current = d.start.clone();
        words.push(current.clone());
        for step in &d.steps {
            if step.rule == 0 || step.rule > self.rules.len() {
                return None;
            }
            let rule = self.rule(step.rule);
            let expected = rule.alpha.concat(&step.remainder);
            if current != expected {
                return None;
            }
            current = step.remainder.concat(&rule.beta);
            words.push(current.clone());
        }
        Some(words)
    }

    /// True when the derivation replays cleanly from its start word and ends
    /// at `target`. A zero-step derivation is valid exactly when
    /// `start = target`.
    pub fn check_derivation(&self, d: &Derivation, target: &Word) -> bool {
        match self.replay(d) {
            Some(words) => words.last() == Some(target),
            None => false,
        }
    }

    /// Breadth-first search from the initial word for a shortest derivation
    /// of `target`. Successors expand in rule-index order; words longer than
    /// `max_word_len` and depths beyond `max_steps` are pruned; visited words
    /// are memoized. `None` means "not reachable within bounds" only.
    pub fn derive_bounded(
        &self,
        target: &Word,
        max_steps: usize,
        max_word_len: usize,
    ) -> Option<Derivation> {
        if self.initial == *target {
            return Some(Derivation::new(self.initial.clone(), Vec::new()));
        }
        // word -> (parent word, rule fired, remainder)
        let mut parents: HashMap<Word, (Word, RuleIndex, Word)> = HashMap::new();
        let mut queue: VecDeque<(Word, usize)> = VecDeque::new();
        queue.push_back((self.initial.clone(), 0));
        while let Some((word, depth)) = queue.pop_front() {
            if depth == max_steps {
                continue;
            }
            for (rule, remainder, next) in self.successor_steps(&word) {
                if next.len() > max_word_len
                    || next == self.initial
                    || parents.contains_key(&next)
                {
                    continue;
                }
                parents.insert(next.clone(), (word.clone(), rule, remainder));
                if next == *target {
                    return Some(self.derivation_from_parents(&parents, target));
                }
                queue.push_back((next, depth + 1));
            }
        }
        None
    }

    fn derivation_from_parents(
        &self,
        parents: &HashMap<Word, (Word, RuleIndex, Word)>,
        target: &Word,
    ) -> Derivation {
        let mut steps = Vec::new();
        let mut current = target;
        while let Some((parent, rule, remainder)) = parents.get(current) {
            steps.push(DerivationStep {
                rule: *rule,
                remainder: remainder.clone(),
            });
            current = parent;
        }
        steps.reverse();
        Derivation::new(self.initial.clone(), steps)
    }

    /// All words reachable within the bounds, the initial word included.
    pub fn assertion_bounded(&self, max_steps: usize, max_word_len: usize) -> BTreeSet<Word> {
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        seen.insert(self.initial.clone());
        let mut queue: VecDeque<(Word, usize)> = VecDeque::new();
        queue.push_back((self.initial.clone(), 0));
        while let Some((word, depth)) = queue.pop_front() {
            if depth == max_steps {
                continue;
            }
            for (_, next) in self.successors(&word) {
                if next.len() > max_word_len || seen.contains(&next) {
                    continue;
                }
                seen.insert(next.clone());
                queue.push_back((next, depth + 1));
            }
        }
        seen
    }

    /// The two conditions equivalent to "`target` is derivable via the rule
    /// sequence `indices`": the concatenation equation
    /// `w b_{i_1}..b_{i_k} = a_{i_1}..a_{i_k} target` and the length
    /// condition `|w b_{i_1}..b_{i_{j-1}}| >= |a_{i_1}..a_{i_j}|` for every
    /// j (for j = 1 this reads `|w| >= |a_{i_1}|`).
    ///
    /// Panics when `indices` is empty or contains an out-of-range index.
    pub fn check_post_conditions(&self, target: &Word, indices: &[RuleIndex]) -> bool {
        assert!(!indices.is_empty(), "index sequence must be nonempty");
        let mut lhs = self.initial.clone();
        let mut rhs = Word::empty();
        for &i in indices {
            lhs.extend(&self.rule(i).beta);
            rhs.extend(&self.rule(i).alpha);
        }
        rhs.extend(target);
        if lhs != rhs {
            return false;
        }
        let mut beta_len = self.initial.len();
        let mut alpha_len = 0;
        for &i in indices {
            alpha_len += self.rule(i).alpha.len();
            if beta_len < alpha_len {
                return false;
            }
            beta_len += self.rule(i).beta.len();
        }
        true
    }

    /// When [`check_post_conditions`](Self::check_post_conditions) holds,
    /// reconstructs the unique derivation for `indices` by peeling each
    /// `alpha_{i_j}` prefix off the current word; otherwise `None`.
    ///
    /// Panics when `indices` is empty or contains an out-of-range index.
    pub fn derivation_from_indices(
        &self,
        target: &Word,
        indices: &[RuleIndex],
    ) -> Option<Derivation> {
        if !self.check_post_conditions(target, indices) {
            return None;
        }
        let mut current = self.initial.clone();
        let mut steps = Vec::with_capacity(indices.len());
        for &i in indices {
            let x = current.strip_prefix(&self.rule(i).alpha)?;
            current = x.concat(&self.rule(i).beta);
            steps.push(DerivationStep {
                rule: i,
                remainder: x,
            });
        }
        if current != *target {
            return None;
        }
        Some(Derivation::new(self.initial.clone(), steps))
    }

    /// Parses the system text format: one `initial: <word>` line and one
    /// `rule: <alpha> -> <beta>` line per rule (1-based index = file order),
    /// with `#` comments. The tier is extended exactly when `c` occurs.
    pub fn parse(text: &str) -> Result<NormalSystem, ParseError> {
        let mut initial: Option<Word> = None;
        let mut rules: Vec<NormalRule> = Vec::new();
        let mut uses_c = false;
        for (line_no, line) in content_lines(text) {
            if let Some(value) = keyed_value(line, "initial") {
                if initial.is_some() {
                    return Err(ParseError::new(line_no, "duplicate `initial:` line"));
                }
                let word: Word = value
                    .parse()
                    .map_err(|e| ParseError::new(line_no, format!("initial word: {e}")))?;
                if word.is_empty() {
                    return Err(ParseError::new(line_no, "initial word must be nonempty"));
                }
                for &l in word.letters() {
                    if l == Letter::D || l == Letter::F {
                        return Err(ParseError::new(line_no, SystemError::LetterOutsideTier(l)));
                    }
                }
                uses_c |= word.contains(Letter::C);
                initial = Some(word);
            } else if let Some(value) = keyed_value(line, "rule") {
                let (alpha_text, beta_text) = value.split_once("->").ok_or_else(|| {
                    ParseError::new(line_no, "rule must have the form `rule: <alpha> -> <beta>`")
                })?;
                let alpha: Word = alpha_text
                    .trim()
                    .parse()
                    .map_err(|e| ParseError::new(line_no, format!("rule alpha: {e}")))?;
                let beta: Word = beta_text
                    .trim()
                    .parse()
                    .map_err(|e| ParseError::new(line_no, format!("rule beta: {e}")))?;
                uses_c |= alpha.contains(Letter::C) || beta.contains(Letter::C);
                let rule = NormalRule::new(alpha, beta)
                    .map_err(|e| ParseError::new(line_no, e))?;
                for &l in rule.alpha.letters().iter().chain(rule.beta.letters()) {
                    if l == Letter::D || l == Letter::F {
                        return Err(ParseError::new(line_no, SystemError::LetterOutsideTier(l)));
                    }
                }
                rules.push(rule);
            } else {
                return Err(ParseError::new(
                    line_no,
                    format!("expected `initial:` or `rule:` line, found `{line}`"),
                ));
            }
        }
        let initial =
            initial.ok_or_else(|| ParseError::new(0, "missing `initial:` line"))?;
        if rules.is_empty() {
            return Err(ParseError::new(0, "a system needs at least one rule"));
        }
        let tier = if uses_c {
            AlphabetTier::Extended
        } else {
            AlphabetTier::Base
        };
        NormalSystem::new(initial, rules, tier).map_err(|e| ParseError::new(0, e))
    }

    /// Serializes to the text format accepted by [`parse`](Self::parse).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "initial: {}", self.initial).unwrap();
        for rule in &self.rules {
            writeln!(out, "rule: {} -> {}", rule.alpha, rule.beta).unwrap();
        }
        out
    }
}

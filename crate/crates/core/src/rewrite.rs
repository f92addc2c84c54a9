//! Shortlex-reducing string rewriting with a critical-pair confluence check.
//!
//! Only length-reducing-or-shortlex-decreasing rules are accepted, so every
//! rewriting sequence terminates. A system whose critical pairs all join is
//! complete and its normal forms decide the word problem of the presented
//! monoid. Systems that fail the check are rejected with a witness; there is
//! no completion procedure.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Index of a symbol in its [`Alphabet`].
pub type Letter = u8;

/// A word over an alphabet, stored as letter indices. The empty word is the
/// identity.
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("letter index {0} outside the alphabet")]
    UnknownLetter(usize),
    #[error("duplicate alphabet symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("alphabet symbol must be a nonempty token without whitespace, got {0:?}")]
    BadSymbol(String),
    #[error("alphabet has {0} symbols; at most 255 are supported")]
    AlphabetTooLarge(usize),
    #[error("rule {index}: left-hand side is empty")]
    EmptyLhs { index: usize },
    #[error("rule {index}: {lhs} -> {rhs} is not shortlex-reducing")]
    NotReducing { index: usize, lhs: String, rhs: String },
}

/// Ordered generator symbols. The declaration order is the letter order used
/// by shortlex comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    lookup: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Self, RewriteError> {
        if symbols.len() > Letter::MAX as usize {
            return Err(RewriteError::AlphabetTooLarge(symbols.len()));
        }
        let mut lookup = HashMap::new();
        let mut out = Vec::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            let s = s.as_ref();
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '.') || s == "ε" {
                return Err(RewriteError::BadSymbol(s.to_string()));
            }
            if lookup.insert(s.to_string(), i as Letter).is_some() {
                return Err(RewriteError::DuplicateSymbol(s.to_string()));
            }
            out.push(s.to_string());
        }
        Ok(Alphabet { symbols: out, lookup })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter as usize]
    }

    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.lookup.get(symbol).copied()
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Tokenizes a word. `""` and `"ε"` denote the empty word; tokens may be
    /// separated by whitespace or `.`, otherwise the longest matching symbol
    /// is taken at each position.
    pub fn parse_word(&self, text: &str) -> Result<Word, RewriteError> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        if text.contains(|c: char| c.is_whitespace() || c == '.') {
            return text
                .split(|c: char| c.is_whitespace() || c == '.')
                .filter(|t| !t.is_empty())
                .map(|t| self.letter(t).ok_or_else(|| RewriteError::UnknownSymbol(t.to_string())))
                .collect();
        }
        let mut word = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let best = self
                .symbols
                .iter()
                .enumerate()
                .filter(|(_, s)| rest.starts_with(s.as_str()))
                .max_by_key(|(_, s)| s.len());
            match best {
                Some((i, s)) => {
                    word.push(i as Letter);
                    rest = &rest[s.len()..];
                }
                None => {
                    let bad: String = rest.chars().take(1).collect();
                    return Err(RewriteError::UnknownSymbol(bad));
                }
            }
        }
        Ok(word)
    }

    /// Canonical rendering: `ε` for the empty word, plain concatenation for
    /// single-character alphabets, `.`-separated tokens otherwise.
    pub fn render(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { "." };
        word.iter().map(|&l| self.symbol(l)).collect::<Vec<_>>().join(sep)
    }

    /// Rendering that [`parse_word`](Self::parse_word) reads back, with the
    /// empty word as `""`.
    pub fn render_plain(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            String::new()
        } else {
            self.render(word)
        }
    }

    pub fn check(&self, word: &[Letter]) -> Result<(), RewriteError> {
        match word.iter().find(|&&l| l as usize >= self.len()) {
            Some(&l) => Err(RewriteError::UnknownLetter(l as usize)),
            None => Ok(()),
        }
    }
}

/// Shortlex order: shorter words first, then lexicographic by letter index.
pub fn shortlex_cmp(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// An ambiguity between two rule applications on the same word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub peak: Word,
    pub left: Word,
    pub right: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completeness {
    Unverified,
    VerifiedComplete,
    FailedConfluence { peak: Word, left_nf: Word, right_nf: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewritingSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    completeness: Completeness,
}

impl RewritingSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>) -> Result<Self, RewriteError> {
        for (index, rule) in rules.iter().enumerate() {
            alphabet.check(&rule.lhs)?;
            alphabet.check(&rule.rhs)?;
            if rule.lhs.is_empty() {
                return Err(RewriteError::EmptyLhs { index });
            }
            if shortlex_cmp(&rule.lhs, &rule.rhs) != Ordering::Greater {
                return Err(RewriteError::NotReducing {
                    index,
                    lhs: alphabet.render(&rule.lhs),
                    rhs: alphabet.render(&rule.rhs),
                });
            }
        }
        Ok(RewritingSystem { alphabet, rules, completeness: Completeness::Unverified })
    }

    /// Builds a system from textual symbols and `(lhs, rhs)` pairs.
    pub fn from_strs<S: AsRef<str>>(symbols: &[S], rules: &[(&str, &str)]) -> Result<Self, RewriteError> {
        let alphabet = Alphabet::new(symbols)?;
        let rules = rules
            .iter()
            .map(|(l, r)| Ok(Rule { lhs: alphabet.parse_word(l)?, rhs: alphabet.parse_word(r)? }))
            .collect::<Result<Vec<_>, RewriteError>>()?;
        RewritingSystem::new(alphabet, rules)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn completeness(&self) -> &Completeness {
        &self.completeness
    }

    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::VerifiedComplete
    }

    /// Runs [`check_complete`](Self::check_complete) and records the verdict.
    pub fn verified(mut self) -> Self {
        self.completeness = self.check_complete();
        self
    }

    /// Reduces to an irreducible descendant.
    ///
    /// The scan keeps an irreducible prefix on a stack and always rewrites
    /// the redex whose right end is leftmost; among redexes sharing that end
    /// the longest left-hand side wins, then the earliest declared rule.
    pub fn normalize(&self, word: &[Letter]) -> Result<Word, RewriteError> {
        self.alphabet.check(word)?;
        Ok(self.normalize_unchecked(word))
    }

    pub(crate) fn normalize_unchecked(&self, word: &[Letter]) -> Word {
        let mut out: Word = Vec::with_capacity(word.len());
        let mut pending: Word = word.iter().rev().copied().collect();
        while let Some(c) = pending.pop() {
            out.push(c);
            if let Some(rule) = self.redex_at_end(&out) {
                out.truncate(out.len() - rule.lhs.len());
                pending.extend(rule.rhs.iter().rev());
            }
        }
        out
    }

    fn redex_at_end(&self, word: &[Letter]) -> Option<&Rule> {
        let mut best: Option<&Rule> = None;
        for rule in &self.rules {
            if word.ends_with(&rule.lhs) && best.is_none_or(|b| rule.lhs.len() > b.lhs.len()) {
                best = Some(rule);
            }
        }
        best
    }

    pub fn normalize_str(&self, text: &str) -> Result<String, RewriteError> {
        let w = self.alphabet.parse_word(text)?;
        Ok(self.alphabet.render(&self.normalize_unchecked(&w)))
    }

    /// Every overlap and containment ambiguity between left-hand sides, each
    /// with its two one-step reducts. Pairs are listed by (first rule,
    /// second rule, overlap length or position).
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let mut pairs = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                // proper overlap: suffix of l1 == prefix of l2
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] == l2[..k] {
                        let peak = [&l1[..], &l2[k..]].concat();
                        let left = [&r1.rhs[..], &l2[k..]].concat();
                        let right = [&l1[..l1.len() - k], &r2.rhs[..]].concat();
                        pairs.push(CriticalPair { peak, left, right });
                    }
                }
                // containment: l2 is a factor of l1
                if i != j && l2.len() <= l1.len() {
                    for p in 0..=l1.len() - l2.len() {
                        if l1[p..p + l2.len()] == l2[..] {
                            let right = [&l1[..p], &r2.rhs[..], &l1[p + l2.len()..]].concat();
                            pairs.push(CriticalPair { peak: l1.clone(), left: r1.rhs.clone(), right });
                        }
                    }
                }
            }
        }
        pairs
    }

    /// Local confluence on critical pairs; with shortlex termination this is
    /// confluence (Newman's lemma).
    pub fn check_complete(&self) -> Completeness {
        for cp in self.critical_pairs() {
            let a = self.normalize_unchecked(&cp.left);
            let b = self.normalize_unchecked(&cp.right);
            if a != b {
                return Completeness::FailedConfluence { peak: cp.peak, left_nf: a, right_nf: b };
            }
        }
        Completeness::VerifiedComplete
    }

    /// Leftmost-first one-step reducts at every position, for oracles.
    pub fn one_step_reducts(&self, word: &[Letter]) -> Vec<Word> {
        let mut out = Vec::new();
        for rule in &self.rules {
            let n = rule.lhs.len();
            if n > word.len() {
                continue;
            }
            for p in 0..=word.len() - n {
                if word[p..p + n] == rule.lhs[..] {
                    out.push([&word[..p], &rule.rhs[..], &word[p + n..]].concat());
                }
            }
        }
        out
    }
}

impl fmt::Display for RewritingSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.alphabet.symbols().join(","))?;
        let mut first = true;
        for r in &self.rules {
            f.write_str(if first { " | " } else { ", " })?;
            first = false;
            write!(f, "{}->{}", self.alphabet.render(&r.lhs), self.alphabet.render(&r.rhs))?;
        }
        f.write_str(">")
    }
}

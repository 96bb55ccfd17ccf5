//! Reduced words over `Ω ∪ Ω⁻¹`.
//!
//! A [`SignedWord`] is always stored in freely reduced form, so it doubles as
//! an element of the free group on the alphabet. Words whose letters are all
//! positive are the elements of the free monoid.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{MunnError, Result};
use crate::tree::PrefixClosedSet;

const INVERSE_BIT: u16 = 1 << 15;

/// A letter of `Ω ∪ Ω⁻¹`: an alphabet index together with a sign.
///
/// Ordered by sign first (positive letters before inverse letters), then by
/// alphabet index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLetter(u16);

impl SignedLetter {
    pub fn positive(index: usize) -> Self {
        assert!(index < INVERSE_BIT as usize, "alphabet index out of range");
        SignedLetter(index as u16)
    }

    pub fn negative(index: usize) -> Self {
        Self::positive(index).inverse()
    }

    pub fn index(self) -> usize {
        (self.0 & !INVERSE_BIT) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & INVERSE_BIT != 0
    }

    pub fn inverse(self) -> Self {
        SignedLetter(self.0 ^ INVERSE_BIT)
    }
}

impl fmt::Debug for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "{}'", self.index())
        } else {
            write!(f, "{}", self.index())
        }
    }
}

type Letters = SmallVec<[SignedLetter; 16]>;

/// A freely reduced word. `ε` is the empty word.
///
/// Words compare in shortlex order: by length, then lexicographically by
/// [`SignedLetter`] order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SignedWord {
    letters: Letters,
}

impl SignedWord {
    pub fn empty() -> Self {
        SignedWord::default()
    }

    pub fn letter(l: SignedLetter) -> Self {
        let mut letters = Letters::new();
        letters.push(l);
        SignedWord { letters }
    }

    /// Builds a word from arbitrary letters, reducing on the fly.
    pub fn from_letters<I: IntoIterator<Item = SignedLetter>>(iter: I) -> Self {
        let mut w = SignedWord::empty();
        for l in iter {
            w.push(l);
        }
        w
    }

    /// A positive word from alphabet indices.
    pub fn positive<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Self::from_letters(indices.into_iter().map(SignedLetter::positive))
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.is_inverse())
    }

    pub fn first(&self) -> Option<SignedLetter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<SignedLetter> {
        self.letters.last().copied()
    }

    /// Appends a letter, cancelling against the last letter if needed.
    pub fn push(&mut self, l: SignedLetter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn pop(&mut self) -> Option<SignedLetter> {
        self.letters.pop()
    }

    /// Free-group product: the reduced form of `self · other`.
    pub fn concat(&self, other: &SignedWord) -> SignedWord {
        let mut out = self.clone();
        for &l in other.letters() {
            out.push(l);
        }
        out
    }

    /// Group inverse: reversed with every sign flipped.
    pub fn inverse(&self) -> SignedWord {
        SignedWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn is_prefix_of(&self, other: &SignedWord) -> bool {
        other.letters.starts_with(&self.letters)
    }

    pub fn is_suffix_of(&self, other: &SignedWord) -> bool {
        other.letters.ends_with(&self.letters)
    }

    /// `w` with `self = prefix · w`, when `prefix` is a literal prefix.
    pub fn strip_prefix(&self, prefix: &SignedWord) -> Option<SignedWord> {
        self.letters
            .strip_prefix(prefix.letters.as_slice())
            .map(|rest| SignedWord {
                letters: rest.iter().copied().collect(),
            })
    }

    /// `w` with `self = w · suffix`, when `suffix` is a literal suffix.
    pub fn strip_suffix(&self, suffix: &SignedWord) -> Option<SignedWord> {
        self.letters
            .strip_suffix(suffix.letters.as_slice())
            .map(|rest| SignedWord {
                letters: rest.iter().copied().collect(),
            })
    }

    pub fn truncated(&self, len: usize) -> SignedWord {
        SignedWord {
            letters: self.letters[..len.min(self.len())]
                .iter()
                .copied()
                .collect(),
        }
    }

    /// The set `w↓` of all prefixes of this word.
    pub fn prefixes(&self) -> PrefixClosedSet {
        PrefixClosedSet::down(self)
    }

    /// Largest alphabet index used, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.index()).max()
    }
}

impl Ord for SignedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.as_slice().cmp(other.letters.as_slice()))
    }
}

impl PartialOrd for SignedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        for l in self.letters() {
            write!(f, "{:?}", l)?;
        }
        Ok(())
    }
}

impl FromIterator<SignedLetter> for SignedWord {
    fn from_iter<I: IntoIterator<Item = SignedLetter>>(iter: I) -> Self {
        SignedWord::from_letters(iter)
    }
}

/// Reduced form of `uv`.
pub fn concat_reduce(u: &SignedWord, v: &SignedWord) -> SignedWord {
    u.concat(v)
}

pub fn invert(u: &SignedWord) -> SignedWord {
    u.inverse()
}

pub fn prefixes(u: &SignedWord) -> PrefixClosedSet {
    u.prefixes()
}

/// Splits `u = p·u'` and `v = p·v'` where `u'` and `v'` share no nonempty prefix.
pub fn longest_common_prefix(
    u: &SignedWord,
    v: &SignedWord,
) -> (SignedWord, SignedWord, SignedWord) {
    let n = u
        .letters()
        .iter()
        .zip(v.letters())
        .take_while(|(a, b)| a == b)
        .count();
    let p = u.truncated(n);
    let rest = |w: &SignedWord| SignedWord {
        letters: w.letters()[n..].iter().copied().collect(),
    };
    (p, rest(u), rest(v))
}

/// Symbols used for rendering words, with the token printed for `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    empty_token: String,
}

const RESERVED: &[char] = &['{', '}', '(', ')', ',', '^', '\'', '[', ']', '"', '-'];

impl Alphabet {
    /// Builds an alphabet rendering `ε` as `e`.
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        Self::with_empty_token(symbols, "e")
    }

    pub fn with_empty_token<S: AsRef<str>>(symbols: &[S], empty_token: &str) -> Result<Self> {
        let symbols: Vec<String> = symbols.iter().map(|s| s.as_ref().to_string()).collect();
        if symbols.is_empty() {
            return Err(MunnError::Alphabet("alphabet must be nonempty".into()));
        }
        if empty_token != "e" && empty_token != "1" {
            return Err(MunnError::Alphabet(format!(
                "empty word token must be `e` or `1`, got `{empty_token}`"
            )));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty()
                || s.chars()
                    .any(|c| c.is_whitespace() || RESERVED.contains(&c))
            {
                return Err(MunnError::Alphabet(format!("illegal symbol `{s}`")));
            }
            if s == "e" || s == "1" {
                return Err(MunnError::Alphabet(format!(
                    "symbol `{s}` collides with the empty word token"
                )));
            }
            for (j, t) in symbols.iter().enumerate() {
                if i != j && t.starts_with(s.as_str()) {
                    return Err(MunnError::Alphabet(format!(
                        "symbols must be prefix-free: `{s}` is a prefix of `{t}`"
                    )));
                }
            }
        }
        Ok(Alphabet {
            symbols,
            empty_token: empty_token.to_string(),
        })
    }

    /// Parses a comma-separated list such as `x,y`.
    pub fn parse_list(spec: &str) -> Result<Self> {
        let symbols: Vec<&str> = spec.split(',').map(str::trim).collect();
        Self::new(&symbols)
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

    pub fn empty_token(&self) -> &str {
        &self.empty_token
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    /// All letters of `Ω ∪ Ω⁻¹` in letter order.
    pub fn signed_letters(&self) -> impl Iterator<Item = SignedLetter> + '_ {
        (0..self.len())
            .map(SignedLetter::positive)
            .chain((0..self.len()).map(SignedLetter::negative))
    }

    pub fn positive_letters(&self) -> impl Iterator<Item = SignedLetter> + '_ {
        (0..self.len()).map(SignedLetter::positive)
    }

    pub fn contains_word(&self, w: &SignedWord) -> bool {
        w.max_index().map_or(true, |i| i < self.len())
    }

    pub fn render_letter(&self, l: SignedLetter) -> String {
        let base = &self.symbols[l.index()];
        if l.is_inverse() {
            format!("{base}^-1")
        } else {
            base.clone()
        }
    }

    pub fn render(&self, w: &SignedWord) -> String {
        if w.is_empty() {
            return self.empty_token.clone();
        }
        w.letters().iter().map(|&l| self.render_letter(l)).collect()
    }

    /// Parses a rendered word; accepts `e` or `1` for `ε` and `X^-1` or `X'`
    /// for inverse letters. Whitespace is ignored.
    pub fn parse_word(&self, text: &str) -> Result<SignedWord> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "e" || compact == "1" {
            return Ok(SignedWord::empty());
        }
        if compact.is_empty() {
            return Err(MunnError::Parse("empty word literal".into()));
        }
        let mut rest = compact.as_str();
        let mut word = SignedWord::empty();
        while !rest.is_empty() {
            let (index, sym) = self
                .symbols
                .iter()
                .enumerate()
                .find(|(_, s)| rest.starts_with(s.as_str()))
                .ok_or_else(|| {
                    MunnError::Parse(format!("unknown letter at `{rest}` in `{text}`"))
                })?;
            rest = &rest[sym.len()..];
            let mut letter = SignedLetter::positive(index);
            if let Some(r) = rest.strip_prefix("^-1") {
                rest = r;
                letter = letter.inverse();
            } else if let Some(r) = rest.strip_prefix('\'') {
                rest = r;
                letter = letter.inverse();
            }
            word.push(letter);
        }
        Ok(word)
    }
}

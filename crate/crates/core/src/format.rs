//! Text, JSON and DOT forms of elements and presentations.
//!
//! The literal form is `({w1,w2,...},w)`, with `e` for the empty word and
//! `X^-1` or `X'` for inverse letters. Sets are printed in shortlex order.

use serde::{Deserialize, Serialize};

use crate::congruence::{CongruencePresentation, Side};
use crate::element::{Flavor, MonoidElement};
use crate::error::{MunnError, Result};
use crate::tree::PrefixClosedSet;
use crate::words::{Alphabet, SignedWord};

fn check_alphabet(m: &MonoidElement, alphabet: &Alphabet) -> Result<()> {
    match m.max_index() {
        Some(i) if i >= alphabet.len() => Err(MunnError::Alphabet(format!(
            "letter index {i} outside an alphabet of {} letters",
            alphabet.len()
        ))),
        _ => Ok(()),
    }
}

pub fn render_element(m: &MonoidElement, alphabet: &Alphabet) -> Result<String> {
    check_alphabet(m, alphabet)?;
    let words: Vec<String> = m
        .set()
        .sorted_words()
        .iter()
        .map(|w| alphabet.render(w))
        .collect();
    Ok(format!(
        "({{{}}},{})",
        words.join(","),
        alphabet.render(m.point())
    ))
}

/// Parses a literal. The listed words must already form a prefix-closed set
/// containing the point.
pub fn parse_element(text: &str, alphabet: &Alphabet, flavor: Flavor) -> Result<MonoidElement> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("({")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| MunnError::Parse(format!("expected `({{...}},w)`, got `{text}`")))?;
    let close = inner
        .find('}')
        .ok_or_else(|| MunnError::Parse(format!("missing `}}` in `{text}`")))?;
    let (set_part, rest) = inner.split_at(close);
    let point_text = rest
        .strip_prefix("},")
        .ok_or_else(|| MunnError::Parse(format!("expected `,` after the set in `{text}`")))?;
    let mut words = Vec::new();
    if !set_part.is_empty() {
        for w in set_part.split(',') {
            words.push(alphabet.parse_word(w)?);
        }
    }
    let point = alphabet.parse_word(point_text)?;
    element_from_words(&words, point, flavor).map_err(|e| match e {
        MunnError::Precondition { name, .. } => MunnError::pre(name, text.to_string()),
        other => other,
    })
}

fn element_from_words(
    words: &[SignedWord],
    point: SignedWord,
    flavor: Flavor,
) -> Result<MonoidElement> {
    let set = PrefixClosedSet::from_words(words.iter())
        .ok_or_else(|| MunnError::pre("set is prefix-closed", format!("{words:?}")))?;
    if !set.contains(&SignedWord::empty()) {
        return Err(MunnError::pre("set contains the empty word", String::new()));
    }
    if !set.contains(&point) {
        return Err(MunnError::pre(
            "point lies in the set",
            format!("{point:?}"),
        ));
    }
    MonoidElement::new(set, point, flavor)
}

/// JSON shape of an element. Fields are declared in key order so that the
/// output matches the CLI, which writes objects with sorted keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub flavor: Flavor,
    pub point: String,
    pub set: Vec<String>,
}

pub fn element_to_json(m: &MonoidElement, alphabet: &Alphabet) -> Result<ElementJson> {
    check_alphabet(m, alphabet)?;
    Ok(ElementJson {
        flavor: m.flavor(),
        point: alphabet.render(m.point()),
        set: m
            .set()
            .sorted_words()
            .iter()
            .map(|w| alphabet.render(w))
            .collect(),
    })
}

pub fn element_from_json(j: &ElementJson, alphabet: &Alphabet) -> Result<MonoidElement> {
    let words = j
        .set
        .iter()
        .map(|w| alphabet.parse_word(w))
        .collect::<Result<Vec<_>>>()?;
    element_from_words(&words, alphabet.parse_word(&j.point)?, j.flavor)
}

pub fn element_json_string(m: &MonoidElement, alphabet: &Alphabet) -> Result<String> {
    serde_json::to_string(&element_to_json(m, alphabet)?)
        .map_err(|e| MunnError::Parse(e.to_string()))
}

pub fn element_from_json_str(text: &str, alphabet: &Alphabet) -> Result<MonoidElement> {
    let j: ElementJson = serde_json::from_str(text).map_err(|e| MunnError::Parse(e.to_string()))?;
    element_from_json(&j, alphabet)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The Munn tree as a DOT digraph with the point double-circled.
pub fn render_dot(m: &MonoidElement, alphabet: &Alphabet) -> Result<String> {
    check_alphabet(m, alphabet)?;
    let words = m.set().sorted_words();
    let mut out = String::from("digraph munn {\n  node [shape=circle];\n");
    for w in &words {
        out.push_str(&format!("  {};\n", quote(&alphabet.render(w))));
    }
    for w in &words {
        let (Some(last), false) = (w.last(), w.is_empty()) else {
            continue;
        };
        let parent = w.truncated(w.len() - 1);
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            quote(&alphabet.render(&parent)),
            quote(&alphabet.render(w)),
            quote(&alphabet.render_letter(last))
        ));
    }
    out.push_str(&format!(
        "  {} [peripheries=2];\n}}\n",
        quote(&alphabet.render(m.point()))
    ));
    Ok(out)
}

/// A presentation file: pairs given as element literals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub flavor: Flavor,
    #[serde(default = "default_side")]
    pub side: Side,
    pub alphabet: Vec<String>,
    pub pairs: Vec<(String, String)>,
}

fn default_side() -> Side {
    Side::Right
}

impl PresentationFile {
    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(&self.alphabet)
    }

    pub fn to_presentation(&self) -> Result<CongruencePresentation> {
        let alphabet = self.alphabet()?;
        let pairs = self
            .pairs
            .iter()
            .map(|(c, d)| {
                Ok((
                    parse_element(c, &alphabet, self.flavor)?,
                    parse_element(d, &alphabet, self.flavor)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        CongruencePresentation::new(self.flavor, self.side, pairs, alphabet.len())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| MunnError::Parse(e.to_string()))
    }
}

/// Parses a pair written `(A,a);(B,b)` or `(A,a) ; (B,b)`.
pub fn parse_pair(
    text: &str,
    alphabet: &Alphabet,
    flavor: Flavor,
) -> Result<(MonoidElement, MonoidElement)> {
    let (l, r) = text
        .split_once(';')
        .ok_or_else(|| MunnError::Parse(format!("expected `left;right`, got `{text}`")))?;
    Ok((
        parse_element(l, alphabet, flavor)?,
        parse_element(r, alphabet, flavor)?,
    ))
}

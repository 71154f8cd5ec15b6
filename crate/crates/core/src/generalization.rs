//! Letter-slot patterns.
//!
//! A primitive is generalized by keeping preserve-set words literally and
//! replacing every other word with a capital-letter variable, lettered in
//! order of first occurrence: `Swedes are 3,500` becomes `A are B`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::lexicon::{normalize, Lexicon};
use crate::token::{tokenize, Token};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("no binding for variable {name} (index {index})")]
    UnboundVariable { index: usize, name: String },
    #[error("empty pattern")]
    Empty,
    #[error("variable {found} appears before {expected}")]
    VariableOrder { expected: String, found: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternSlot {
    Literal { word: String, capitalized: bool },
    Variable(usize),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SlotWire {
    Lit { lit: String },
    Var { var: usize },
}

/// Renders a variable index: `A`..`Z`, then `A1`..`Z1`, `A2`, ...
pub fn variable_name(index: usize) -> String {
    let letter = (b'A' + (index % 26) as u8) as char;
    match index / 26 {
        0 => letter.to_string(),
        round => format!("{letter}{round}"),
    }
}

fn parse_variable(s: &str) -> Option<usize> {
    let mut chars = s.chars();
    let letter = chars.next().filter(char::is_ascii_uppercase)?;
    let rest = chars.as_str();
    let round = if rest.is_empty() {
        0
    } else if rest.chars().all(|c| c.is_ascii_digit()) && !rest.starts_with('0') {
        rest.parse().ok()?
    } else {
        return None;
    };
    Some(round * 26 + (letter as u8 - b'A') as usize)
}

fn capitalize(word: &str) -> String {
    let mut c = word.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// A generalized pattern. Equality and hashing follow the rendered form.
#[derive(Clone)]
pub struct GeneralizedPattern {
    slots: Vec<PatternSlot>,
    rendered: String,
}

impl GeneralizedPattern {
    pub fn from_slots(slots: Vec<PatternSlot>) -> Self {
        let rendered = render(&slots);
        GeneralizedPattern { slots, rendered }
    }

    pub fn slots(&self) -> &[PatternSlot] {
        &self.slots
    }

    pub fn rendered(&self) -> &str {
        &self.rendered
    }

    pub fn variable_count(&self) -> usize {
        self.slots
            .iter()
            .filter_map(|s| match s {
                PatternSlot::Variable(v) => Some(v + 1),
                PatternSlot::Literal { .. } => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Parses the rendered wire form. Tokens shaped like `A`, `B`, `A1` are
    /// variables and must be numbered in order of first appearance.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let mut slots = Vec::new();
        let mut next = 0;
        for (pos, word) in text.split_whitespace().enumerate() {
            match parse_variable(word) {
                Some(v) => {
                    if v > next {
                        return Err(PatternError::VariableOrder {
                            expected: variable_name(next),
                            found: word.to_string(),
                        });
                    }
                    if v == next {
                        next += 1;
                    }
                    slots.push(PatternSlot::Variable(v));
                }
                None => {
                    let capitalized =
                        pos == 0 && word.chars().next().is_some_and(char::is_uppercase);
                    slots.push(PatternSlot::Literal {
                        word: word.to_lowercase(),
                        capitalized,
                    });
                }
            }
        }
        if slots.is_empty() {
            return Err(PatternError::Empty);
        }
        Ok(Self::from_slots(slots))
    }

    /// Substitutes `bindings[i]` for variable `i`.
    pub fn instantiate<S: AsRef<str>>(&self, bindings: &[S]) -> Result<String, PatternError> {
        let mut words = Vec::with_capacity(self.slots.len());
        for (pos, slot) in self.slots.iter().enumerate() {
            match slot {
                PatternSlot::Literal { word, capitalized } => {
                    if *capitalized && pos == 0 {
                        words.push(capitalize(word));
                    } else {
                        words.push(word.clone());
                    }
                }
                PatternSlot::Variable(v) => {
                    let value = bindings
                        .get(*v)
                        .ok_or_else(|| PatternError::UnboundVariable {
                            index: *v,
                            name: variable_name(*v),
                        })?;
                    words.push(value.as_ref().to_string());
                }
            }
        }
        Ok(words.join(" "))
    }

    /// The JSON slot form: `[{"lit": "are"}, {"var": 0}]`.
    pub fn to_slot_json(&self) -> serde_json::Value {
        let wire: Vec<SlotWire> = self
            .slots
            .iter()
            .enumerate()
            .map(|(pos, s)| match s {
                PatternSlot::Literal { word, capitalized } => SlotWire::Lit {
                    lit: if *capitalized && pos == 0 {
                        capitalize(word)
                    } else {
                        word.clone()
                    },
                },
                PatternSlot::Variable(v) => SlotWire::Var { var: *v },
            })
            .collect();
        serde_json::json!({ "slots": wire })
    }
}

fn render(slots: &[PatternSlot]) -> String {
    slots
        .iter()
        .enumerate()
        .map(|(pos, slot)| match slot {
            PatternSlot::Variable(v) => variable_name(*v),
            PatternSlot::Literal { word, capitalized } => {
                // a capitalized one-letter literal ("A") would read as a variable
                if *capitalized && pos == 0 && word.chars().count() > 1 {
                    capitalize(word)
                } else {
                    word.clone()
                }
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl PartialEq for GeneralizedPattern {
    fn eq(&self, other: &Self) -> bool {
        self.rendered == other.rendered
    }
}

impl Eq for GeneralizedPattern {}

impl std::hash::Hash for GeneralizedPattern {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rendered.hash(state)
    }
}

impl fmt::Display for GeneralizedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered)
    }
}

impl fmt::Debug for GeneralizedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneralizedPattern({:?})", self.rendered)
    }
}

impl Serialize for GeneralizedPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.rendered)
    }
}

impl<'de> Deserialize<'de> for GeneralizedPattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        GeneralizedPattern::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Generalizes a token sequence. Lettering restarts at `A` on every call.
pub fn generalize(tokens: &[Token], lexicon: &Lexicon) -> GeneralizedPattern {
    let mut vars: HashMap<&str, usize> = HashMap::new();
    let slots = tokens
        .iter()
        .enumerate()
        .map(|(pos, tok)| {
            if lexicon.is_preserved(&tok.normalized) {
                PatternSlot::Literal {
                    word: tok.normalized.clone(),
                    capitalized: pos == 0 && tok.is_capitalized(),
                }
            } else {
                let next = vars.len();
                PatternSlot::Variable(*vars.entry(tok.normalized.as_str()).or_insert(next))
            }
        })
        .collect();
    GeneralizedPattern::from_slots(slots)
}

pub fn generalize_text(text: &str, lexicon: &Lexicon) -> GeneralizedPattern {
    generalize(&tokenize(text, lexicon), lexicon)
}

/// The bindings that map a pattern back onto the tokens it came from.
pub fn natural_bindings(tokens: &[Token], lexicon: &Lexicon) -> Vec<String> {
    let mut seen: Vec<String> = Vec::new();
    let mut bindings = Vec::new();
    for tok in tokens {
        if !lexicon.is_preserved(&tok.normalized) && !seen.contains(&tok.normalized) {
            seen.push(tok.normalized.clone());
            bindings.push(tok.word.clone());
        }
    }
    bindings
}

/// Normalized token sequence of a text, for round-trip comparisons.
pub fn normalized_words(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(normalize)
        .filter(|w| !w.is_empty())
        .collect()
}

//! The function-word lexicon.
//!
//! Words listed here either survive verbatim into generalized patterns (the
//! preserve-set: articles, auxiliaries, copulas and a few prepositions) or
//! drive clause splitting (coordinators and subordinators). Everything else
//! is `content`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LexClass {
    Article,
    Auxiliary,
    Copula,
    Preposition,
    Coordinator,
    Subordinator,
    Content,
}

impl LexClass {
    const ALL: [LexClass; 7] = [
        LexClass::Article,
        LexClass::Auxiliary,
        LexClass::Copula,
        LexClass::Preposition,
        LexClass::Coordinator,
        LexClass::Subordinator,
        LexClass::Content,
    ];

    fn bit(self) -> u8 {
        1 << (self as u8)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LexClass::Article => "article",
            LexClass::Auxiliary => "auxiliary",
            LexClass::Copula => "copula",
            LexClass::Preposition => "preposition",
            LexClass::Coordinator => "coordinator",
            LexClass::Subordinator => "subordinator",
            LexClass::Content => "content",
        }
    }
}

impl fmt::Display for LexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A set of lexical classes. `Content` never co-occurs with another class.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassSet(u8);

impl ClassSet {
    pub const CONTENT: ClassSet = ClassSet(1 << (LexClass::Content as u8));

    fn empty() -> Self {
        ClassSet(0)
    }

    fn insert(&mut self, class: LexClass) {
        self.0 |= class.bit();
    }

    pub fn contains(self, class: LexClass) -> bool {
        self.0 & class.bit() != 0
    }

    pub fn is_content(self) -> bool {
        self == Self::CONTENT
    }

    pub fn iter(self) -> impl Iterator<Item = LexClass> {
        LexClass::ALL.into_iter().filter(move |c| self.contains(*c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Copula or auxiliary.
    pub fn is_verbal(self) -> bool {
        self.contains(LexClass::Copula) || self.contains(LexClass::Auxiliary)
    }
}

impl fmt::Debug for ClassSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ClassSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("lexicon parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("word {word:?} is listed both in content_exceptions and in {section}")]
    Conflict { word: String, section: &'static str },
    #[error("cannot read lexicon {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Lowercases a word form and strips surrounding punctuation.
///
/// Internal punctuation is kept, so `3,500` and `country's` survive intact.
pub fn normalize(form: &str) -> String {
    let trimmed = form.trim().trim_matches(|c: char| !c.is_alphanumeric());
    trimmed.to_lowercase()
}

/// `3,500`, `60`, `2.5`.
pub fn is_numeral(normalized: &str) -> bool {
    normalized
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_digit())
        && normalized
            .chars()
            .all(|c| c.is_ascii_digit() || c == ',' || c == '.')
}

const DEFAULT_ARTICLES: &[&str] = &["a", "an", "the"];
const DEFAULT_COPULAS: &[&str] = &["is", "are", "was", "were", "be", "been", "am"];
const DEFAULT_AUXILIARIES: &[&str] = &[
    "is", "are", "was", "were", "be", "been", "am", "has", "have", "had",
];
const DEFAULT_PREPOSITIONS: &[&str] = &["of", "in", "on"];
const DEFAULT_COORDINATORS: &[&str] = &["and", "but", "or"];
const DEFAULT_SUBORDINATORS: &[&str] = &["that", "because", "although", "while"];
const DEFAULT_CONTENT_EXCEPTIONS: &[&str] = &["off", "after", "being"];
const DEFAULT_IDIOMS: &[(&str, &str)] = &[("all the time", "throughout")];

/// The function-word lexicon. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    articles: BTreeSet<String>,
    auxiliaries: BTreeSet<String>,
    copulas: BTreeSet<String>,
    prepositions: BTreeSet<String>,
    coordinators: BTreeSet<String>,
    subordinators: BTreeSet<String>,
    content_exceptions: BTreeSet<String>,
    preserve: BTreeSet<String>,
    split: BTreeSet<String>,
    idioms: Vec<Idiom>,
}

/// A fixed multi-word phrase rewritten before reference resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Idiom {
    pub phrase: Vec<String>,
    pub replacement: String,
}

fn set(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|w| w.to_string()).collect()
}

impl Default for Lexicon {
    fn default() -> Self {
        let mut lexicon = Lexicon {
            articles: set(DEFAULT_ARTICLES),
            auxiliaries: set(DEFAULT_AUXILIARIES),
            copulas: set(DEFAULT_COPULAS),
            prepositions: set(DEFAULT_PREPOSITIONS),
            coordinators: set(DEFAULT_COORDINATORS),
            subordinators: set(DEFAULT_SUBORDINATORS),
            content_exceptions: set(DEFAULT_CONTENT_EXCEPTIONS),
            preserve: BTreeSet::new(),
            split: BTreeSet::new(),
            idioms: DEFAULT_IDIOMS
                .iter()
                .map(|(p, r)| Idiom {
                    phrase: p.split_whitespace().map(str::to_string).collect(),
                    replacement: r.to_string(),
                })
                .collect(),
        };
        lexicon.materialize();
        lexicon
    }
}

/// On-disk lexicon document (TOML).
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconDocument {
    extends_default: Option<bool>,
    articles: Option<Vec<String>>,
    auxiliaries: Option<Vec<String>>,
    copulas: Option<Vec<String>>,
    prepositions_preserved: Option<Vec<String>>,
    coordinators: Option<Vec<String>>,
    subordinators: Option<Vec<String>>,
    content_exceptions: Option<Vec<String>>,
    idioms: Option<std::collections::BTreeMap<String, String>>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

impl Lexicon {
    /// Parses a lexicon document. An empty document yields the default lexicon.
    ///
    /// With `extends_default = true` (the default) each listed section is merged
    /// into the built-in one; with `false` listed sections replace it. Absent
    /// sections always fall back to the built-in lists.
    pub fn from_toml(text: &str) -> Result<Self, LexiconError> {
        let doc: LexiconDocument = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
            LexiconError::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })?;

        let preserved_sections: [(&'static str, &Option<Vec<String>>); 4] = [
            ("articles", &doc.articles),
            ("auxiliaries", &doc.auxiliaries),
            ("copulas", &doc.copulas),
            ("prepositions_preserved", &doc.prepositions_preserved),
        ];
        if let Some(exceptions) = &doc.content_exceptions {
            let exceptions: BTreeSet<String> = exceptions.iter().map(|w| normalize(w)).collect();
            for (section, words) in preserved_sections {
                if let Some(word) = words
                    .iter()
                    .flatten()
                    .map(|w| normalize(w))
                    .find(|w| exceptions.contains(w))
                {
                    return Err(LexiconError::Conflict { word, section });
                }
            }
        }

        let extend = doc.extends_default.unwrap_or(true);
        let mut lexicon = Lexicon::default();
        let merge = |target: &mut BTreeSet<String>, words: &Option<Vec<String>>| {
            if let Some(words) = words {
                if !extend {
                    target.clear();
                }
                target.extend(words.iter().map(|w| normalize(w)).filter(|w| !w.is_empty()));
            }
        };
        merge(&mut lexicon.articles, &doc.articles);
        merge(&mut lexicon.auxiliaries, &doc.auxiliaries);
        merge(&mut lexicon.copulas, &doc.copulas);
        merge(&mut lexicon.prepositions, &doc.prepositions_preserved);
        merge(&mut lexicon.coordinators, &doc.coordinators);
        merge(&mut lexicon.subordinators, &doc.subordinators);
        merge(&mut lexicon.content_exceptions, &doc.content_exceptions);
        // a word the document explicitly preserves wins over a built-in exception
        for words in [
            &doc.articles,
            &doc.auxiliaries,
            &doc.copulas,
            &doc.prepositions_preserved,
        ]
        .into_iter()
        .flatten()
        {
            for w in words {
                lexicon.content_exceptions.remove(&normalize(w));
            }
        }
        if let Some(idioms) = doc.idioms {
            if !extend {
                lexicon.idioms.clear();
            }
            for (phrase, replacement) in idioms {
                let phrase: Vec<String> = phrase.split_whitespace().map(normalize).collect();
                if phrase.is_empty() {
                    continue;
                }
                lexicon.idioms.retain(|i| i.phrase != phrase);
                lexicon.idioms.push(Idiom {
                    phrase,
                    replacement,
                });
            }
        }
        lexicon.materialize();
        Ok(lexicon)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    fn materialize(&mut self) {
        for exception in &self.content_exceptions {
            self.articles.remove(exception);
            self.auxiliaries.remove(exception);
            self.copulas.remove(exception);
            self.prepositions.remove(exception);
            self.coordinators.remove(exception);
            self.subordinators.remove(exception);
        }
        self.preserve = self
            .articles
            .iter()
            .chain(&self.auxiliaries)
            .chain(&self.copulas)
            .chain(&self.prepositions)
            .cloned()
            .collect();
        self.split = self.coordinators.clone();
    }

    /// Classifies a word form. Fails only on an empty form.
    pub fn classify(&self, form: &str) -> Result<ClassSet, LexiconError> {
        if form.trim().is_empty() {
            return Err(LexiconError::InvalidInput("empty word form".into()));
        }
        Ok(self.classify_normalized(&normalize(form)))
    }

    /// Classifies an already-normalized form; empty or numeric forms are content.
    pub fn classify_normalized(&self, normalized: &str) -> ClassSet {
        if normalized.is_empty() || is_numeral(normalized) {
            return ClassSet::CONTENT;
        }
        let mut classes = ClassSet::empty();
        let table = [
            (&self.articles, LexClass::Article),
            (&self.auxiliaries, LexClass::Auxiliary),
            (&self.copulas, LexClass::Copula),
            (&self.prepositions, LexClass::Preposition),
            (&self.coordinators, LexClass::Coordinator),
            (&self.subordinators, LexClass::Subordinator),
        ];
        for (words, class) in table {
            if words.contains(normalized) {
                classes.insert(class);
            }
        }
        if classes.is_empty() {
            ClassSet::CONTENT
        } else {
            classes
        }
    }

    /// Words rendered literally in generalized patterns.
    pub fn is_preserved(&self, form: &str) -> bool {
        let n = normalize(form);
        !is_numeral(&n) && self.preserve.contains(&n)
    }

    pub fn is_split_word(&self, form: &str) -> bool {
        self.split.contains(&normalize(form))
    }

    pub fn preserve_set(&self) -> &BTreeSet<String> {
        &self.preserve
    }

    pub fn split_set(&self) -> &BTreeSet<String> {
        &self.split
    }

    pub fn idioms(&self) -> &[Idiom] {
        &self.idioms
    }
}

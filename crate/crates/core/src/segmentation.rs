//! Fragments, discourse units and the primitive/compound/complex classifier.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cues::{self, VerbMark};
use crate::lexicon::{LexClass, Lexicon};
use crate::token::{tokenize, Token};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SegmentationError {
    #[error("unbalanced bracket at char offset {offset}")]
    UnbalancedBracket { offset: usize },
}

/// A fragment of a corpus: one paragraph, or one `[...]` bracketed span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fragment {
    pub id: usize,
    /// Text of the fragment with bracket delimiters removed.
    pub raw: String,
    /// Char offsets into the corpus, delimiters and absorbed punctuation included.
    pub span: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitKind {
    Primitive,
    Compound,
    Complex,
}

impl UnitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            UnitKind::Primitive => "primitive",
            UnitKind::Compound => "compound",
            UnitKind::Complex => "complex",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub kind: UnitKind,
    /// No finite verb group was found.
    pub verbless: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscourseUnit {
    pub id: usize,
    pub fragment_id: usize,
    pub text: String,
    pub tokens: Vec<Token>,
    pub kind: UnitKind,
    pub verbless: bool,
    /// Char offsets into the fragment's `raw`.
    pub span: (usize, usize),
}

impl DiscourseUnit {
    pub fn from_text(
        id: usize,
        fragment_id: usize,
        text: &str,
        span: (usize, usize),
        lexicon: &Lexicon,
    ) -> Self {
        let tokens = tokenize(text, lexicon);
        let Classification { kind, verbless } = classify_unit(&tokens, lexicon);
        DiscourseUnit {
            id,
            fragment_id,
            text: text.to_string(),
            tokens,
            kind,
            verbless,
            span,
        }
    }
}

fn char_offset(text: &str, byte: usize) -> usize {
    text[..byte].chars().count()
}

/// Splits a corpus into fragments.
///
/// Paragraphs are separated by blank lines. A paragraph containing brackets
/// is split into one fragment per `[...]` pair; stray punctuation between
/// pairs is absorbed into the preceding fragment's span, stray words form a
/// fragment of their own.
pub fn segment_fragments(corpus: &str) -> Result<Vec<Fragment>, SegmentationError> {
    let mut fragments = Vec::new();
    for (start, end) in paragraphs(corpus) {
        let para = &corpus[start..end];
        if para.contains(['[', ']']) {
            bracket_fragments(corpus, start, end, &mut fragments)?;
        } else {
            let trimmed = para.trim();
            let lead = para.len() - para.trim_start().len();
            let s = start + lead;
            fragments.push(Fragment {
                id: fragments.len(),
                raw: trimmed.to_string(),
                span: (
                    char_offset(corpus, s),
                    char_offset(corpus, s + trimmed.len()),
                ),
            });
        }
    }
    Ok(fragments)
}

/// Byte ranges of non-blank paragraphs.
fn paragraphs(corpus: &str) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut offset = 0;
    for line in corpus.split_inclusive('\n') {
        let blank = line.trim().is_empty();
        match (blank, start) {
            (true, Some(s)) => {
                out.push((s, offset));
                start = None;
            }
            (false, None) => start = Some(offset),
            _ => {}
        }
        offset += line.len();
    }
    if let Some(s) = start {
        out.push((s, corpus.len()));
    }
    out
}

fn bracket_fragments(
    corpus: &str,
    start: usize,
    end: usize,
    fragments: &mut Vec<Fragment>,
) -> Result<(), SegmentationError> {
    let para = &corpus[start..end];
    let mut open: Option<usize> = None;
    let mut stray_start = 0;
    let push_stray = |from: usize, to: usize, fragments: &mut Vec<Fragment>| {
        let stray = &para[from..to];
        // leading punctuation closes the previous fragment
        let words_at = stray
            .char_indices()
            .find(|(_, c)| c.is_alphanumeric())
            .map_or(stray.len(), |(i, _)| i);
        let punct = &stray[..words_at];
        if !punct.trim().is_empty() {
            if let Some(last) = fragments.last_mut() {
                let punct_end = from + punct.trim_end().len();
                last.span.1 = char_offset(corpus, start + punct_end);
            }
        }
        let rest = &stray[words_at..];
        if rest.trim().is_empty() {
            return;
        }
        let s = start + from + words_at;
        let trimmed = rest.trim_end();
        fragments.push(Fragment {
            id: fragments.len(),
            raw: trimmed.to_string(),
            span: (
                char_offset(corpus, s),
                char_offset(corpus, s + trimmed.len()),
            ),
        });
    };
    for (i, ch) in para.char_indices() {
        match ch {
            '[' => {
                if open.is_some() {
                    return Err(SegmentationError::UnbalancedBracket {
                        offset: char_offset(corpus, start + i),
                    });
                }
                push_stray(stray_start, i, fragments);
                open = Some(i);
            }
            ']' => {
                let Some(o) = open.take() else {
                    return Err(SegmentationError::UnbalancedBracket {
                        offset: char_offset(corpus, start + i),
                    });
                };
                let inner = para[o + 1..i].trim();
                if !inner.is_empty() {
                    fragments.push(Fragment {
                        id: fragments.len(),
                        raw: inner.to_string(),
                        span: (
                            char_offset(corpus, start + o),
                            char_offset(corpus, start + i + 1),
                        ),
                    });
                }
                stray_start = i + 1;
            }
            _ => {}
        }
    }
    if let Some(o) = open {
        return Err(SegmentationError::UnbalancedBracket {
            offset: char_offset(corpus, start + o),
        });
    }
    push_stray(stray_start, para.len(), fragments);
    Ok(())
}

const ABBREVIATIONS: &[&str] = &["mr", "mrs", "dr", "st", "no", "vs"];

fn is_abbreviation(word: &str) -> bool {
    let w = word.trim_start_matches(|c: char| !c.is_alphanumeric());
    ABBREVIATIONS.contains(&w.to_lowercase().as_str())
        || (w.chars().count() == 1 && w.chars().all(char::is_uppercase))
}

/// Splits a fragment into discourse units at sentence-final punctuation.
///
/// Unit ids are assigned from `first_id` upward.
pub fn segment_units(
    fragment: &Fragment,
    lexicon: &Lexicon,
    first_id: usize,
) -> Vec<DiscourseUnit> {
    let raw = &fragment.raw;
    let chars: Vec<(usize, char)> = raw.char_indices().collect();
    let mut units = Vec::new();
    let mut unit_start = 0usize; // char index
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i].1;
        if matches!(ch, '.' | '!' | '?') {
            // absorb runs like "?!" and closing quotes
            let mut j = i + 1;
            while j < chars.len() && matches!(chars[j].1, '.' | '!' | '?' | '"' | '\'' | ')') {
                j += 1;
            }
            let at_boundary = j == chars.len() || chars[j].1.is_whitespace();
            let word_before: String = chars[unit_start..i]
                .iter()
                .map(|(_, c)| *c)
                .collect::<String>()
                .split_whitespace()
                .last()
                .unwrap_or("")
                .to_string();
            let guarded = ch == '.' && is_abbreviation(&word_before);
            if at_boundary && !guarded {
                push_unit(
                    fragment, lexicon, &chars, unit_start, j, first_id, &mut units,
                );
                unit_start = j;
            }
            i = j;
        } else {
            i += 1;
        }
    }
    push_unit(
        fragment,
        lexicon,
        &chars,
        unit_start,
        chars.len(),
        first_id,
        &mut units,
    );
    units
}

fn push_unit(
    fragment: &Fragment,
    lexicon: &Lexicon,
    chars: &[(usize, char)],
    from: usize,
    to: usize,
    first_id: usize,
    units: &mut Vec<DiscourseUnit>,
) {
    let mut s = from;
    while s < to && chars[s].1.is_whitespace() {
        s += 1;
    }
    let mut e = to;
    while e > s && chars[e - 1].1.is_whitespace() {
        e -= 1;
    }
    if s == e {
        return;
    }
    let byte = |c: usize| chars.get(c).map_or(fragment.raw.len(), |x| x.0);
    let text = &fragment.raw[byte(s)..byte(e)];
    if !text.chars().any(char::is_alphanumeric) {
        return;
    }
    units.push(DiscourseUnit::from_text(
        first_id + units.len(),
        fragment.id,
        text,
        (s, e),
        lexicon,
    ));
}

/// Comma-delimited segments as token index ranges.
pub(crate) fn comma_segments(tokens: &[Token]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, t) in tokens.iter().enumerate() {
        if t.comma_after() || i + 1 == tokens.len() {
            out.push(start..i + 1);
            start = i + 1;
        }
    }
    out
}

/// Classifies a token sequence as primitive, compound or complex.
///
/// Complex wins over compound. Subordination signals are: a subordinator, a
/// communication verb in a sentence with a comma-set clause, a non-initial
/// comma segment opening with `with` that holds a verb form, and a temporal
/// connective followed by a finite verb in its segment.
pub fn classify_unit(tokens: &[Token], lexicon: &Lexicon) -> Classification {
    let _ = lexicon;
    let marks = cues::verb_marks(tokens);
    let verbless = !marks.contains(&VerbMark::Finite);
    let segments = comma_segments(tokens);

    let subordinator = tokens
        .iter()
        .any(|t| t.classes.contains(LexClass::Subordinator));
    let reported = segments.len() > 1
        && tokens
            .iter()
            .zip(&marks)
            .any(|(t, m)| *m == VerbMark::Finite && cues::is_communication_verb(&t.normalized));
    let participial = segments.iter().skip(1).any(|seg| {
        tokens[seg.start].normalized == "with" && seg.clone().any(|i| marks[i] == VerbMark::Finite)
    });
    let temporal = segments.iter().any(|seg| {
        seg.clone().any(|i| {
            cues::is_temporal_connective(&tokens[i].normalized)
                && (i + 1..seg.end).any(|j| marks[j] == VerbMark::Finite)
        })
    });
    if subordinator || reported || participial || temporal {
        return Classification {
            kind: UnitKind::Complex,
            verbless,
        };
    }

    let compound = tokens.iter().enumerate().any(|(i, t)| {
        t.classes.contains(LexClass::Coordinator)
            && marks[..i].contains(&VerbMark::Finite)
            && marks[i + 1..].contains(&VerbMark::Finite)
    });
    Classification {
        kind: if compound {
            UnitKind::Compound
        } else {
            UnitKind::Primitive
        },
        verbless,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TSUNAMI: &str = include_str!("../tests/fixtures/tsunami.txt");

    fn kind(text: &str) -> Classification {
        let lex = Lexicon::default();
        classify_unit(&tokenize(text, &lex), &lex)
    }

    #[test]
    fn empty_corpus() {
        assert!(segment_fragments("").unwrap().is_empty());
        assert!(segment_fragments(" \n\n ").unwrap().is_empty());
    }

    #[test]
    fn bracketed_article() {
        let frags = segment_fragments(TSUNAMI).unwrap();
        assert_eq!(frags.len(), 2);
        assert!(frags[0].raw.starts_with("Around 3,500 Swedes"));
        assert!(frags[1].raw.starts_with("The ministry said,"));
        assert_eq!(frags[1].id, 1);
    }

    #[test]
    fn paragraphs_split() {
        let frags =
            segment_fragments("One is here.\n\nTwo is there.\n  \nThree is gone.\n").unwrap();
        assert_eq!(frags.len(), 3);
        assert_eq!(frags[2].raw, "Three is gone.");
        let corpus = "One is here.\n\nTwo is there.\n  \nThree is gone.\n";
        let chars: Vec<char> = corpus.chars().collect();
        let s: String = chars[frags[1].span.0..frags[1].span.1].iter().collect();
        assert_eq!(s, "Two is there.");
    }

    #[test]
    fn unbalanced_brackets() {
        assert_eq!(
            segment_fragments("[open here").unwrap_err(),
            SegmentationError::UnbalancedBracket { offset: 0 }
        );
        assert_eq!(
            segment_fragments("ok] then").unwrap_err(),
            SegmentationError::UnbalancedBracket { offset: 2 }
        );
        assert!(segment_fragments("[a [b]]").is_err());
    }

    #[test]
    fn stray_words_between_brackets() {
        let frags = segment_fragments("[A is b]. Then c was d. [E is f]").unwrap();
        assert_eq!(frags.len(), 3);
        assert_eq!(frags[1].raw, "Then c was d.");
        assert_eq!(frags[0].span, (0, 9));
    }

    #[test]
    fn units_and_abbreviations() {
        let lex = Lexicon::default();
        let frag = Fragment {
            id: 0,
            raw: "Mr. Smith was here. Prices rose 3.5 percent! Was it? Yes".into(),
            span: (0, 0),
        };
        let units = segment_units(&frag, &lex, 10);
        let texts: Vec<_> = units.iter().map(|u| u.text.as_str()).collect();
        assert_eq!(
            texts,
            [
                "Mr. Smith was here.",
                "Prices rose 3.5 percent!",
                "Was it?",
                "Yes"
            ]
        );
        assert_eq!(units[0].id, 10);
        assert_eq!(units[3].id, 13);
        let chars: Vec<char> = frag.raw.chars().collect();
        let s: String = chars[units[1].span.0..units[1].span.1].iter().collect();
        assert_eq!(s, units[1].text);
    }

    #[test]
    fn single_unit_primitive() {
        let lex = Lexicon::default();
        let frag = Fragment {
            id: 0,
            raw: "Swedes are in Thailand.".into(),
            span: (0, 0),
        };
        let units = segment_units(&frag, &lex, 0);
        assert_eq!(units.len(), 1);
        assert_eq!(units[0].kind, UnitKind::Primitive);
    }

    #[test]
    fn tsunami_units_are_complex() {
        let lex = Lexicon::default();
        for frag in segment_fragments(TSUNAMI).unwrap() {
            let units = segment_units(&frag, &lex, 0);
            assert_eq!(units.len(), 1);
            assert_eq!(units[0].kind, UnitKind::Complex, "{}", frag.raw);
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(kind("Waves were tidal").kind, UnitKind::Primitive);
        assert_eq!(
            kind("names were added but names were new").kind,
            UnitKind::Compound
        );
        assert_eq!(
            kind("Ministry had managed to locate missing tourists and struck names of missing tourists off the list.").kind,
            UnitKind::Compound
        );
        let verbless = kind("Missing after a week");
        assert_eq!(verbless.kind, UnitKind::Primitive);
        assert!(verbless.verbless);
        assert_eq!(
            kind("Swedes said that waves were tidal").kind,
            UnitKind::Complex
        );
        assert_eq!(
            kind("Swedes and Danes are missing").kind,
            UnitKind::Primitive
        );
    }
}

//! Working words and noun-phrase chunking for the extraction rules.

use std::ops::Range;

use crate::cues::{self, VerbMark};
use crate::lexicon::{is_numeral, ClassSet, LexClass, Lexicon};
use crate::token::Token;

#[derive(Debug, Clone)]
pub(crate) struct Word {
    pub text: String,
    pub norm: String,
    pub classes: ClassSet,
    pub mark: VerbMark,
    pub comma: bool,
    /// First word of the source unit; its capital is positional.
    pub initial: bool,
}

impl Word {
    pub fn synth(text: &str, lexicon: &Lexicon) -> Self {
        let norm = text.to_lowercase();
        Word {
            classes: lexicon.classify_normalized(&norm),
            text: text.to_string(),
            norm,
            mark: VerbMark::None,
            comma: false,
            initial: false,
        }
    }

    pub fn is(&self, class: LexClass) -> bool {
        self.classes.contains(class)
    }

    pub fn finite(&self) -> bool {
        self.mark == VerbMark::Finite
    }

    /// Word with a trailing possessive `'s` removed.
    pub fn without_possessive(&self) -> Word {
        let mut w = self.clone();
        for suffix in ["'s", "’s"] {
            if let Some(stripped) = w.text.strip_suffix(suffix) {
                w.text = stripped.to_string();
                w.norm = w.norm.trim_end_matches(suffix).to_string();
            }
        }
        w
    }

    pub fn is_possessive(&self) -> bool {
        self.norm.ends_with("'s") || self.norm.ends_with("’s")
    }
}

pub(crate) fn words_of(tokens: &[Token]) -> Vec<Word> {
    let marks = cues::verb_marks(tokens);
    tokens
        .iter()
        .zip(marks)
        .map(|(t, mark)| Word {
            text: t.word.clone(),
            norm: t.normalized.clone(),
            classes: t.classes,
            mark,
            comma: t.comma_after(),
            initial: t.index == 0,
        })
        .collect()
}

/// Comma-delimited segments.
pub(crate) fn segments(words: &[Word], range: Range<usize>) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = range.start;
    for i in range.clone() {
        if words[i].comma || i + 1 == range.end {
            out.push(start..i + 1);
            start = i + 1;
        }
    }
    out
}

pub(crate) fn np_word(w: &Word) -> bool {
    w.classes.is_content()
        && w.mark == VerbMark::None
        && !is_numeral(&w.norm)
        && !cues::is_pronoun(&w.norm)
        && !cues::is_adverb(&w.norm)
        && !cues::is_boundary_preposition(&w.norm)
        && !cues::is_approximator(&w.norm)
}

/// `approx? article? numeral? [possessor 's] modifier* head (of NP)?`
#[derive(Debug, Clone)]
pub(crate) struct Np {
    pub range: Range<usize>,
    pub approx: Option<usize>,
    pub article: Option<usize>,
    pub numeral: Option<usize>,
    pub possessor: Vec<usize>,
    pub mods: Vec<usize>,
    pub head: usize,
    pub of_comp: Option<Box<Np>>,
}

pub(crate) fn parse_np(words: &[Word], start: usize, limit: usize) -> Option<Np> {
    let mut i = start;
    let open = |k: usize| k < limit && !words[k].comma;
    let mut approx = None;
    if open(i)
        && cues::is_approximator(&words[i].norm)
        && i + 1 < limit
        && (is_numeral(&words[i + 1].norm)
            || words[i + 1].is(LexClass::Article)
            || np_word(&words[i + 1]))
    {
        approx = Some(i);
        i += 1;
    }
    let mut article = None;
    if open(i) && words[i].is(LexClass::Article) {
        article = Some(i);
        i += 1;
    }
    let mut numeral = None;
    if i < limit && is_numeral(&words[i].norm) {
        numeral = Some(i);
        i += 1;
        if words[i - 1].comma {
            return Some(Np {
                range: start..i,
                approx,
                article,
                numeral: None,
                possessor: Vec::new(),
                mods: Vec::new(),
                head: i - 1,
                of_comp: None,
            });
        }
    }
    let run_start = i;
    let mut j = i;
    while j < limit && np_word(&words[j]) {
        j += 1;
        if words[j - 1].comma {
            break;
        }
    }
    if j == run_start {
        let head = numeral?;
        return Some(Np {
            range: start..i,
            approx,
            article,
            numeral: None,
            possessor: Vec::new(),
            mods: Vec::new(),
            head,
            of_comp: None,
        });
    }
    let head = j - 1;
    let possessive_at = (run_start..head).find(|&k| words[k].is_possessive());
    let (possessor, mods_from) = match possessive_at {
        Some(k) => ((run_start..=k).collect(), k + 1),
        None => (Vec::new(), run_start),
    };
    let mods = (mods_from..head).collect();
    let mut np = Np {
        range: start..j,
        approx,
        article,
        numeral,
        possessor,
        mods,
        head,
        of_comp: None,
    };
    if !words[head].comma && j < limit && words[j].norm == "of" && !words[j].comma {
        if let Some(comp) = parse_np(words, j + 1, limit) {
            np.range.end = comp.range.end;
            np.of_comp = Some(Box::new(comp));
        }
    }
    Some(np)
}

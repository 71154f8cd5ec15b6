//! Rule-based reference resolution by substitution.
//!
//! Pronouns, possessives and bare re-mentions are replaced with the noun
//! phrase they point to, so every unit becomes self-contained. Antecedents
//! are chosen by recency with number agreement; when nothing precedes, the
//! search runs forward inside the same fragment (cataphora).

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::cues::{self, VerbMark};
use crate::lexicon::{is_numeral, LexClass, Lexicon};
use crate::segmentation::DiscourseUnit;
use crate::token::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferenceKind {
    Anaphoric,
    Cataphoric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResolutionStatus {
    Resolved,
    Unresolved,
}

/// A half-open token range inside one unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSpan {
    pub fragment_id: usize,
    pub unit_id: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionRecord {
    pub kind: ReferenceKind,
    pub anaphor_span: TokenSpan,
    pub anaphor_text: String,
    pub referent_span: Option<TokenSpan>,
    pub replacement_text: String,
    pub status: ResolutionStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Number {
    Singular,
    Plural,
    Unknown,
}

impl Number {
    fn of_head(head: &str) -> Self {
        if is_numeral(head) {
            Number::Unknown
        } else if cues::is_plural(head) {
            Number::Plural
        } else {
            Number::Singular
        }
    }

    fn agrees(self, other: Number) -> bool {
        self == other || self == Number::Unknown || other == Number::Unknown
    }
}

/// A noun phrase that may serve as a referent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateNp {
    pub head: String,
    pub full_phrase: String,
    pub fragment_id: usize,
    pub unit_id: usize,
    pub tokens: Range<usize>,
    pub number: Number,
}

const PERSONAL_TRIGGERS: &[(&str, Number)] = &[
    ("it", Number::Singular),
    ("he", Number::Singular),
    ("she", Number::Singular),
    ("him", Number::Singular),
    ("her", Number::Singular),
    ("this", Number::Singular),
    ("they", Number::Plural),
    ("them", Number::Plural),
];

const POSSESSIVE_TRIGGERS: &[(&str, Number)] = &[
    ("its", Number::Singular),
    ("his", Number::Singular),
    ("her", Number::Singular),
    ("their", Number::Plural),
];

fn trigger_number(table: &[(&str, Number)], w: &str) -> Option<Number> {
    table.iter().find(|(t, _)| *t == w).map(|(_, n)| *n)
}

/// True for words that may never appear inside a resolved replacement.
pub fn is_trigger_word(w: &str) -> bool {
    trigger_number(PERSONAL_TRIGGERS, w).is_some()
        || trigger_number(POSSESSIVE_TRIGGERS, w).is_some()
}

fn is_np_word(tok: &Token, mark: VerbMark) -> bool {
    let w = tok.normalized.as_str();
    tok.classes.is_content()
        && mark == VerbMark::None
        && !cues::is_pronoun(w)
        && !cues::is_adverb(w)
        && !cues::is_boundary_preposition(w)
        && !cues::is_approximator(w)
}

/// True when the nearest non-adverb token before `i` is a copula.
fn after_copula(tokens: &[Token], i: usize) -> bool {
    tokens[..i]
        .iter()
        .rev()
        .find(|t| !cues::is_adverb(&t.normalized))
        .is_some_and(|t| t.classes.contains(LexClass::Copula))
}

/// Maximal `article? content+` runs that stop at verbs, prepositions,
/// function words and commas. Predicative complements are skipped.
pub(crate) fn candidate_ranges(tokens: &[Token], marks: &[VerbMark]) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let start = i;
        let mut j = i;
        if tokens[j].classes.contains(LexClass::Article) && !tokens[j].comma_after() {
            j += 1;
        }
        let run_start = j;
        while j < tokens.len() && is_np_word(&tokens[j], marks[j]) {
            j += 1;
            if tokens[j - 1].comma_after() {
                break;
            }
        }
        if j > run_start {
            if !after_copula(tokens, start) {
                out.push(start..j);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    out
}

fn phrase_text(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| t.word.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn head_of(tokens: &[Token]) -> String {
    tokens
        .last()
        .map(|t| t.normalized.clone())
        .unwrap_or_default()
}

/// Collects candidate noun phrases in document order.
pub fn collect_candidates(units: &[DiscourseUnit], lexicon: &Lexicon) -> Vec<CandidateNp> {
    let _ = lexicon;
    let mut out = Vec::new();
    for unit in units {
        let marks = cues::verb_marks(&unit.tokens);
        for range in candidate_ranges(&unit.tokens, &marks) {
            let toks = &unit.tokens[range.clone()];
            let head = head_of(toks);
            out.push(CandidateNp {
                number: Number::of_head(&head),
                head,
                full_phrase: phrase_text(toks),
                fragment_id: unit.fragment_id,
                unit_id: unit.id,
                tokens: range,
            });
        }
    }
    out
}

/// Resolution output: rewritten units (same ids, same order) and the audit trail.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub units: Vec<DiscourseUnit>,
    pub records: Vec<ResolutionRecord>,
}

impl Resolution {
    pub fn resolved_count(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.status == ResolutionStatus::Resolved)
            .count()
    }
}

/// A token in the rewrite buffer, tied to its original index.
#[derive(Debug, Clone)]
struct Slot {
    token: Token,
    orig: usize,
    alive: bool,
}

/// A mention already emitted into the rewrite buffer.
#[derive(Debug, Clone)]
struct Mention {
    head: String,
    number: Number,
    /// Words substituted for a reference to this mention.
    phrase: Vec<String>,
    /// Words of a trailing `of ...` qualifier, if any.
    qualifier: Option<Vec<String>>,
    span: TokenSpan,
}

fn trailing_punct(tok: &Token) -> &str {
    let end = tok
        .surface
        .trim_end_matches(|c: char| !c.is_alphanumeric())
        .len();
    &tok.surface[end..]
}

fn make_slots(words: &[String], punct: &str, orig: usize, lexicon: &Lexicon) -> Vec<Slot> {
    let n = words.len();
    words
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let surface = if k + 1 == n {
                format!("{w}{punct}")
            } else {
                w.clone()
            };
            Slot {
                token: Token::new(&surface, lexicon),
                orig,
                alive: true,
            }
        })
        .collect()
}

fn capitalize(word: &str) -> String {
    let mut c = word.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Applies the lexicon's idiom table, keeping original indices.
fn apply_idioms(tokens: &[Token], lexicon: &Lexicon) -> Vec<Slot> {
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < tokens.len() {
        for idiom in lexicon.idioms() {
            let n = idiom.phrase.len();
            if i + n <= tokens.len()
                && tokens[i..i + n]
                    .iter()
                    .zip(&idiom.phrase)
                    .all(|(t, p)| &t.normalized == p)
                // a comma inside the phrase breaks the idiom
                && tokens[i..i + n - 1].iter().all(|t| !t.comma_after())
            {
                let words: Vec<String> = idiom
                    .replacement
                    .split_whitespace()
                    .map(str::to_string)
                    .collect();
                let mut words = words;
                if i == 0 {
                    if let Some(first) = words.first_mut() {
                        *first = capitalize(first);
                    }
                }
                out.extend(make_slots(
                    &words,
                    trailing_punct(&tokens[i + n - 1]),
                    i,
                    lexicon,
                ));
                i += n;
                continue 'outer;
            }
        }
        out.push(Slot {
            token: tokens[i].clone(),
            orig: i,
            alive: true,
        });
        i += 1;
    }
    out
}

/// Per-unit working state for one fragment.
struct UnitWork {
    slots: Vec<Slot>,
    candidates: Vec<Range<usize>>,
    out: Vec<Slot>,
}

fn referent_words(tokens: &[Slot], range: Range<usize>) -> Vec<String> {
    let mut words: Vec<String> = Vec::new();
    for (k, slot) in tokens[range.clone()].iter().enumerate() {
        if k == 0 && slot.token.classes.contains(LexClass::Article) {
            continue;
        }
        // a capital forced by sentence position is not part of the phrase
        if range.start + k == 0 {
            words.push(slot.token.word.to_lowercase());
        } else {
            words.push(slot.token.word.clone());
        }
    }
    words
}

/// Resolves references in `units` (document order).
///
/// Returns rewritten copies; ids, spans and unit count are unchanged.
pub fn resolve(units: &[DiscourseUnit], lexicon: &Lexicon) -> Resolution {
    let mut rewritten = Vec::with_capacity(units.len());
    let mut records = Vec::new();
    let mut start = 0;
    while start < units.len() {
        let fragment_id = units[start].fragment_id;
        let mut end = start;
        while end < units.len() && units[end].fragment_id == fragment_id {
            end += 1;
        }
        let (units_out, recs) = resolve_fragment(&units[start..end], lexicon);
        rewritten.extend(units_out);
        records.extend(recs);
        start = end;
    }
    Resolution {
        units: rewritten,
        records,
    }
}

fn resolve_fragment(
    units: &[DiscourseUnit],
    lexicon: &Lexicon,
) -> (Vec<DiscourseUnit>, Vec<ResolutionRecord>) {
    let mut work: Vec<UnitWork> = units
        .iter()
        .map(|u| {
            let slots = apply_idioms(&u.tokens, lexicon);
            let toks: Vec<Token> = slots.iter().map(|s| s.token.clone()).collect();
            let marks = cues::verb_marks(&toks);
            let candidates = candidate_ranges(&toks, &marks);
            UnitWork {
                slots,
                candidates,
                out: Vec::new(),
            }
        })
        .collect();

    let mut history: Vec<Mention> = Vec::new();
    let mut records = Vec::new();

    for u in 0..units.len() {
        let unit = &units[u];
        let records_before = records.len();
        let span_of = |slots: &[Slot], r: Range<usize>| TokenSpan {
            fragment_id: unit.fragment_id,
            unit_id: unit.id,
            start: slots[r.start].orig,
            end: slots[r.end - 1].orig + 1,
        };
        let n = work[u].slots.len();
        let mut i = 0;
        while i < n {
            let slots = work[u].slots.clone();
            let tok = &slots[i].token;
            let w = tok.normalized.as_str();
            let cand_at = |k: usize| work[u].candidates.iter().find(|r| r.start == k).cloned();
            let next_is_np = i + 1 < n && cand_at(i + 1).is_some();

            let possessive = trigger_number(POSSESSIVE_TRIGGERS, w).filter(|_| next_is_np);
            let personal = trigger_number(PERSONAL_TRIGGERS, w)
                .filter(|_| possessive.is_none() && !(w == "this" && next_is_np));

            if let Some(number) = personal {
                let found = find_referent(&history, &work, u, i, number, units);
                let anaphor = span_of(&slots, i..i + 1);
                match found {
                    Some((kind, base, referent_span)) => {
                        let mut words = base.clone();
                        if i == 0 {
                            if let Some(f) = words.first_mut() {
                                *f = capitalize(f);
                            }
                        }
                        let replacement = base.join(" ");
                        let new_slots =
                            make_slots(&words, trailing_punct(tok), slots[i].orig, lexicon);
                        work[u].out.extend(new_slots);
                        let head = base.last().map(|h| h.to_lowercase()).unwrap_or_default();
                        history.push(Mention {
                            number: Number::of_head(&head),
                            head,
                            phrase: base,
                            qualifier: None,
                            span: anaphor,
                        });
                        records.push(ResolutionRecord {
                            kind,
                            anaphor_span: anaphor,
                            anaphor_text: tok.word.clone(),
                            referent_span: Some(referent_span),
                            replacement_text: replacement,
                            status: ResolutionStatus::Resolved,
                        });
                    }
                    None => {
                        records.push(unresolved(anaphor, tok.word.clone()));
                        work[u].out.push(slots[i].clone());
                    }
                }
                i += 1;
                continue;
            }

            if let Some(number) = possessive {
                let np = cand_at(i + 1).expect("checked above");
                let anaphor = span_of(&slots, i..np.end);
                let anaphor_text = phrase_text(
                    &slots[i..np.end]
                        .iter()
                        .map(|s| s.token.clone())
                        .collect::<Vec<_>>(),
                );
                match find_referent(&history, &work, u, i, number, units) {
                    Some((kind, referent, referent_span)) => {
                        let mut words: Vec<String> = slots[np.clone()]
                            .iter()
                            .map(|s| s.token.word.clone())
                            .collect();
                        if i == 0 {
                            if let Some(f) = words.first_mut() {
                                *f = capitalize(f);
                            }
                        }
                        let head = slots[np.end - 1].token.normalized.clone();
                        let mut phrase = words.clone();
                        phrase.push("of".into());
                        phrase.extend(referent.iter().cloned());
                        let mut base = referent_words(&slots, np.clone());
                        base.push("of".into());
                        base.extend(referent.iter().cloned());
                        let punct = trailing_punct(&slots[np.end - 1].token).to_string();
                        work[u]
                            .out
                            .extend(make_slots(&phrase, &punct, slots[i].orig, lexicon));
                        records.push(ResolutionRecord {
                            kind,
                            anaphor_span: anaphor,
                            anaphor_text,
                            referent_span: Some(referent_span),
                            replacement_text: phrase.join(" "),
                            status: ResolutionStatus::Resolved,
                        });
                        history.push(Mention {
                            number: Number::of_head(&head),
                            head,
                            phrase: base,
                            qualifier: Some(referent),
                            span: anaphor,
                        });
                    }
                    None => {
                        records.push(unresolved(anaphor, anaphor_text));
                        work[u].out.extend(slots[i..np.end].iter().cloned());
                    }
                }
                i = np.end;
                continue;
            }

            if let Some(np) = cand_at(i) {
                let head = slots[np.end - 1].token.normalized.clone();
                let qualifier = following_qualifier(&work[u], &slots, np.end);
                let span = span_of(&slots, np.clone());
                let ends_clause = slots[np.end - 1].token.comma_after();
                let remention = if qualifier.is_none() && !ends_clause {
                    history
                        .iter()
                        .rev()
                        .find(|m| m.head == head && m.qualifier.is_some())
                        .cloned()
                } else {
                    None
                };
                let mut words = referent_words(&slots, np.clone());
                if let Some(prior) = remention {
                    let own: Vec<String> = slots[np.clone()]
                        .iter()
                        .map(|s| s.token.word.clone())
                        .collect();
                    let qual = prior.qualifier.clone().unwrap_or_default();
                    let mut phrase = own.clone();
                    phrase.push("of".into());
                    phrase.extend(qual.iter().cloned());
                    let punct = trailing_punct(&slots[np.end - 1].token).to_string();
                    work[u]
                        .out
                        .extend(make_slots(&phrase, &punct, slots[i].orig, lexicon));
                    records.push(ResolutionRecord {
                        kind: ReferenceKind::Anaphoric,
                        anaphor_span: span,
                        anaphor_text: own.join(" "),
                        referent_span: Some(prior.span),
                        replacement_text: phrase.join(" "),
                        status: ResolutionStatus::Resolved,
                    });
                    words.push("of".into());
                    words.extend(qual.iter().cloned());
                    history.push(Mention {
                        number: Number::of_head(&head),
                        head,
                        phrase: words,
                        qualifier: Some(qual),
                        span,
                    });
                } else {
                    work[u].out.extend(slots[np.clone()].iter().cloned());
                    if let Some(q) = &qualifier {
                        words.push("of".into());
                        words.extend(q.iter().cloned());
                    }
                    history.push(Mention {
                        number: Number::of_head(&head),
                        head,
                        phrase: words,
                        qualifier,
                        span,
                    });
                }
                i = np.end;
                continue;
            }

            work[u].out.push(slots[i].clone());
            i += 1;
        }
        if records[records_before..]
            .iter()
            .any(|r| r.status == ResolutionStatus::Resolved)
        {
            drop_object_articles(&mut work[u].out);
        }
    }

    let rewritten = units
        .iter()
        .zip(&work)
        .map(|(unit, w)| {
            let changed = w.out.len() != unit.tokens.len()
                || w.out.iter().any(|s| !s.alive)
                || w.out
                    .iter()
                    .zip(&unit.tokens)
                    .any(|(s, t)| s.token.surface != t.surface);
            if !changed {
                return unit.clone();
            }
            let text = w
                .out
                .iter()
                .filter(|s| s.alive)
                .map(|s| s.token.surface.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            DiscourseUnit::from_text(unit.id, unit.fragment_id, &text, unit.span, lexicon)
        })
        .collect();
    (rewritten, records)
}

fn unresolved(anaphor: TokenSpan, text: String) -> ResolutionRecord {
    ResolutionRecord {
        kind: ReferenceKind::Anaphoric,
        anaphor_span: anaphor,
        anaphor_text: text,
        referent_span: None,
        replacement_text: String::new(),
        status: ResolutionStatus::Unresolved,
    }
}

/// Words of an `of NP` qualifier starting at `at`, if present.
fn following_qualifier(work: &UnitWork, slots: &[Slot], at: usize) -> Option<Vec<String>> {
    if at == 0 || slots[at - 1].token.comma_after() {
        return None;
    }
    if slots.get(at)?.token.normalized != "of" || slots[at].token.comma_after() {
        return None;
    }
    let np = work.candidates.iter().find(|r| r.start == at + 1)?;
    Some(
        slots[np.clone()]
            .iter()
            .map(|s| s.token.word.to_lowercase())
            .collect(),
    )
}

/// Drops `the` on direct objects of verbs.
fn drop_object_articles(out: &mut [Slot]) {
    let toks: Vec<Token> = out.iter().map(|s| s.token.clone()).collect();
    let marks = cues::verb_marks(&toks);
    for k in 1..out.len() {
        let after_verb = matches!(marks[k - 1], VerbMark::Finite | VerbMark::Infinitive)
            && !toks[k - 1].comma_after();
        if after_verb && toks[k].normalized == "the" {
            out[k].alive = false;
        }
    }
}

type Found = (ReferenceKind, Vec<String>, TokenSpan);

fn find_referent(
    history: &[Mention],
    work: &[UnitWork],
    unit: usize,
    at: usize,
    number: Number,
    units: &[DiscourseUnit],
) -> Option<Found> {
    if let Some(m) = history.iter().rev().find(|m| m.number.agrees(number)) {
        return Some((ReferenceKind::Anaphoric, m.phrase.clone(), m.span));
    }
    // cataphora: first agreeing candidate later in the fragment
    for (u, w) in work.iter().enumerate().skip(unit) {
        for r in &w.candidates {
            if u == unit && r.start <= at {
                continue;
            }
            let head = w.slots[r.end - 1].token.normalized.clone();
            if Number::of_head(&head).agrees(number) {
                let words = referent_words(&w.slots, r.clone());
                let span = TokenSpan {
                    fragment_id: units[u].fragment_id,
                    unit_id: units[u].id,
                    start: w.slots[r.start].orig,
                    end: w.slots[r.end - 1].orig + 1,
                };
                return Some((ReferenceKind::Cataphoric, words, span));
            }
        }
    }
    None
}

//! Structural word lists and the tagger-free verb detector.
//!
//! None of these lists affect which words are preserved in patterns; that is
//! the lexicon's job. They only drive chunking and clause boundaries.

use crate::lexicon::{is_numeral, LexClass};
use crate::token::Token;

const IRREGULAR_FINITE: &[&str] = &[
    "ate",
    "became",
    "began",
    "bought",
    "broke",
    "brought",
    "built",
    "came",
    "caught",
    "chose",
    "did",
    "does",
    "drew",
    "drove",
    "fell",
    "felt",
    "fled",
    "flew",
    "fought",
    "forgot",
    "found",
    "gave",
    "goes",
    "got",
    "grew",
    "heard",
    "held",
    "hid",
    "hit",
    "kept",
    "knew",
    "lay",
    "led",
    "left",
    "lost",
    "made",
    "meant",
    "met",
    "paid",
    "ran",
    "rose",
    "said",
    "sat",
    "saw",
    "says",
    "sent",
    "shot",
    "sold",
    "spent",
    "spoke",
    "stood",
    "struck",
    "taught",
    "tells",
    "thought",
    "threw",
    "told",
    "took",
    "understood",
    "went",
    "woke",
    "won",
    "wore",
    "wrote",
];

const COMMUNICATION: &[&str] = &[
    "said",
    "says",
    "told",
    "tells",
    "reported",
    "reports",
    "announced",
    "stated",
    "claimed",
    "declared",
    "explained",
];

const MODALS: &[&str] = &[
    "will", "would", "can", "could", "shall", "should", "may", "might", "must", "do", "does", "did",
];

const ED_EXCEPTIONS: &[&str] = &[
    "hundred", "kindred", "naked", "sacred", "wicked", "rugged", "ragged", "beloved", "crooked",
    "embed", "shred", "sled",
];

const ADVERBS: &[&str] = &[
    "still", "already", "also", "not", "never", "always", "just", "only", "even", "yet", "really",
    "very", "now", "then", "soon", "often", "again", "too", "ever", "quite", "mostly", "later",
    "ago",
];

const BOUNDARY_PREPOSITIONS: &[&str] = &[
    "to",
    "with",
    "off",
    "after",
    "before",
    "for",
    "from",
    "by",
    "at",
    "into",
    "onto",
    "over",
    "under",
    "through",
    "throughout",
    "during",
    "without",
    "within",
    "across",
    "against",
    "among",
    "between",
    "toward",
    "towards",
    "upon",
    "up",
    "down",
    "out",
    "since",
    "until",
    "when",
    "near",
    "inside",
    "as",
    "than",
    "like",
    "per",
    "via",
];

const PRONOUNS: &[&str] = &[
    "it",
    "they",
    "he",
    "she",
    "this",
    "them",
    "him",
    "its",
    "their",
    "his",
    "her",
    "i",
    "we",
    "you",
    "me",
    "us",
    "our",
    "my",
    "your",
    "these",
    "those",
    "there",
    "which",
    "who",
    "whom",
    "whose",
    "what",
    "itself",
    "themselves",
];

const DETERMINER_PRONOUNS: &[&str] = &[
    "its", "their", "his", "her", "our", "my", "your", "these", "those", "this", "whose",
];

const TEMPORAL_CONNECTIVES: &[&str] = &["after", "before", "since", "until", "when"];

const TEMPORAL_NOUNS: &[&str] = &[
    "second", "seconds", "minute", "minutes", "hour", "hours", "day", "days", "week", "weeks",
    "month", "months", "year", "years", "decade", "decades", "moment", "moments", "night",
    "nights", "morning", "evening",
];

const DAY_NAMES: &[&str] = &[
    "monday",
    "tuesday",
    "wednesday",
    "thursday",
    "friday",
    "saturday",
    "sunday",
];

const APPROXIMATORS: &[&str] = &[
    "around",
    "about",
    "some",
    "nearly",
    "approximately",
    "almost",
    "roughly",
];

const LOCATIVES: &[&str] = &["in", "on", "at", "near", "inside"];

fn has(list: &[&str], w: &str) -> bool {
    list.contains(&w)
}

pub fn is_communication_verb(w: &str) -> bool {
    has(COMMUNICATION, w)
}
pub fn is_adverb(w: &str) -> bool {
    has(ADVERBS, w)
}
pub fn is_boundary_preposition(w: &str) -> bool {
    has(BOUNDARY_PREPOSITIONS, w)
}
/// Pronouns that open a noun phrase (`their names`).
pub fn is_determiner_pronoun(w: &str) -> bool {
    has(DETERMINER_PRONOUNS, w)
}
pub fn is_pronoun(w: &str) -> bool {
    has(PRONOUNS, w)
}
pub fn is_temporal_connective(w: &str) -> bool {
    has(TEMPORAL_CONNECTIVES, w)
}
pub fn is_temporal_noun(w: &str) -> bool {
    has(TEMPORAL_NOUNS, w)
}
pub fn is_day_name(w: &str) -> bool {
    has(DAY_NAMES, w)
}
pub fn is_approximator(w: &str) -> bool {
    has(APPROXIMATORS, w)
}
pub fn is_locative(w: &str) -> bool {
    has(LOCATIVES, w)
}
pub fn is_modal(w: &str) -> bool {
    has(MODALS, w)
}

/// Rough plural test on a normalized noun.
pub fn is_plural(w: &str) -> bool {
    w.len() > 3
        && w.ends_with('s')
        && !w.ends_with("ss")
        && !w.ends_with("us")
        && !w.ends_with("is")
        && !w.ends_with("'s")
        && w.chars().all(|c| c.is_alphabetic())
}

/// Passive participle of a bare verb: `locate` → `located`.
pub fn participle(verb: &str) -> String {
    const IRREGULAR: &[(&str, &str)] = &[
        ("make", "made"),
        ("take", "taken"),
        ("find", "found"),
        ("see", "seen"),
        ("give", "given"),
        ("tell", "told"),
        ("hold", "held"),
        ("keep", "kept"),
        ("send", "sent"),
        ("bring", "brought"),
        ("buy", "bought"),
        ("build", "built"),
        ("catch", "caught"),
        ("sell", "sold"),
        ("write", "written"),
        ("break", "broken"),
        ("choose", "chosen"),
        ("know", "known"),
        ("show", "shown"),
        ("hit", "hit"),
        ("put", "put"),
        ("set", "set"),
        ("leave", "left"),
        ("lose", "lost"),
        ("pay", "paid"),
    ];
    if let Some((_, p)) = IRREGULAR.iter().find(|(v, _)| *v == verb) {
        return (*p).to_string();
    }
    if verb.ends_with('e') {
        format!("{verb}d")
    } else if verb.ends_with('y')
        && verb.len() > 1
        && !matches!(
            verb.as_bytes()[verb.len() - 2],
            b'a' | b'e' | b'i' | b'o' | b'u'
        )
    {
        format!("{}ied", &verb[..verb.len() - 1])
    } else if verb.ends_with("ed") {
        verb.to_string()
    } else {
        format!("{verb}ed")
    }
}

/// A one-word past-tense lexical verb (`struck`, `confirmed`).
pub fn is_simple_past(w: &str) -> bool {
    looks_past_ed(w) || has(IRREGULAR_FINITE, w) && !w.ends_with('s') && w != "did"
}

/// Verb status of a token within its clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerbMark {
    None,
    /// Part of a finite verb group (copula, auxiliary, modal, past form, ...).
    Finite,
    /// Bare verb after `to`.
    Infinitive,
}

fn looks_past_ed(w: &str) -> bool {
    w.len() >= 5
        && w.ends_with("ed")
        && !w.ends_with("eed")
        && w.chars().all(|c| c.is_ascii_alphabetic())
        && !has(ED_EXCEPTIONS, w)
}

/// Marks verb-group seeds without a tagger.
///
/// A seed is a copula or auxiliary, a modal, a known irregular finite form,
/// an `-ed` form not directly after a determiner or preposition, or an
/// `-ing` form / `being` after an earlier seed (adverbs may intervene).
pub fn verb_marks(tokens: &[Token]) -> Vec<VerbMark> {
    let mut marks = vec![VerbMark::None; tokens.len()];
    for (i, tok) in tokens.iter().enumerate() {
        let w = tok.normalized.as_str();
        if w.is_empty() || is_numeral(w) {
            continue;
        }
        let prev = i.checked_sub(1).map(|p| &tokens[p]);
        let prev_norm = prev.map_or("", |p| p.normalized.as_str());
        let after_determiner = prev.is_some_and(|p| {
            p.classes.contains(LexClass::Article)
                || p.classes.contains(LexClass::Preposition)
                || is_determiner_pronoun(&p.normalized)
                || is_boundary_preposition(&p.normalized)
        });
        // nearest non-adverb predecessor is part of a verb group
        let after_seed = (0..i)
            .rev()
            .find(|&j| !is_adverb(&tokens[j].normalized))
            .is_some_and(|j| marks[j] == VerbMark::Finite && !tokens[j].comma_after());

        let mark = if tok.classes.is_verbal() || is_modal(w) {
            VerbMark::Finite
        } else if !tok.classes.is_content() || is_pronoun(w) || is_adverb(w) {
            VerbMark::None
        } else if prev_norm == "to" && !is_boundary_preposition(w) && !is_approximator(w) {
            VerbMark::Infinitive
        } else if (has(IRREGULAR_FINITE, w) || looks_past_ed(w)) && !after_determiner
            || (w.ends_with("ing") && w.len() > 4 || w == "being") && after_seed
            || matches!(prev_norm, "he" | "she" | "it")
                && w.ends_with('s')
                && !is_boundary_preposition(w)
        {
            VerbMark::Finite
        } else {
            VerbMark::None
        };
        marks[i] = mark;
    }
    marks
}

/// Maximal runs of adjacent finite marks, as half-open index ranges.
pub fn verb_groups(marks: &[VerbMark]) -> Vec<std::ops::Range<usize>> {
    let mut groups = Vec::new();
    let mut i = 0;
    while i < marks.len() {
        if marks[i] == VerbMark::Finite {
            let start = i;
            while i < marks.len() && marks[i] == VerbMark::Finite {
                i += 1;
            }
            groups.push(start..i);
        } else {
            i += 1;
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::Lexicon;
    use crate::token::tokenize;

    fn finite(text: &str) -> Vec<String> {
        let toks = tokenize(text, &Lexicon::default());
        let marks = verb_marks(&toks);
        toks.iter()
            .zip(marks)
            .filter(|(_, m)| *m == VerbMark::Finite)
            .map(|(t, _)| t.normalized.clone())
            .collect()
    }

    #[test]
    fn seeds_in_table_sentences() {
        assert_eq!(
            finite("Swedes are still missing in Thailand"),
            ["are", "missing"]
        );
        assert_eq!(
            finite("tidal waves struck the country's coastline"),
            ["struck"]
        );
        assert_eq!(finite("with 60 Swedes confirmed dead"), ["confirmed"]);
        assert_eq!(
            finite("new names of missing tourists were being added throughout"),
            ["were", "being", "added"]
        );
        assert_eq!(
            finite("Ministry had managed to locate missing tourists and struck names"),
            ["had", "managed", "struck"]
        );
        assert!(finite("Missing after a week").is_empty());
    }

    #[test]
    fn infinitive_mark() {
        let toks = tokenize("managed to locate tourists", &Lexicon::default());
        assert_eq!(verb_marks(&toks)[2], VerbMark::Infinitive);
    }

    #[test]
    fn participles() {
        assert_eq!(participle("locate"), "located");
        assert_eq!(participle("carry"), "carried");
        assert_eq!(participle("play"), "played");
        assert_eq!(participle("find"), "found");
        assert_eq!(participle("add"), "added");
    }

    #[test]
    fn plural_heuristic() {
        assert!(is_plural("swedes"));
        assert!(is_plural("tourists"));
        assert!(!is_plural("ministry"));
        assert!(!is_plural("glass"));
        assert!(!is_plural("country's"));
    }
}

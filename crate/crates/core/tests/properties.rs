mod common;

use common::same_lexeme;
use discourse_dissect::dissection::{dissect, RuleTag};
use discourse_dissect::generalization::{
    generalize, generalize_text, natural_bindings, normalized_words, GeneralizedPattern,
};
use discourse_dissect::inventory::{Novelty, PatternInventory};
use discourse_dissect::reporting::{
    emit_fact, export_csv, parse_csv, parse_fact, SaturationReport,
};
use discourse_dissect::resolution::resolve;
use discourse_dissect::{
    classify_unit, segment_fragments, segment_units, tokenize, DiscourseUnit, Lexicon, UnitKind,
};
use proptest::prelude::*;

const ONSETS: &[&str] = &["b", "k", "m", "p", "t", "v", "z", "gr", "pl", "dr"];
const VOWELS: &[&str] = &["a", "o", "u", "i"];
const CODAS: &[&str] = &["m", "n", "p", "t", "k", "r", "l", "v"];

/// A made-up stem like `tokam`; never a function word or cue word.
fn stem() -> impl Strategy<Value = String> {
    (
        prop::sample::select(ONSETS),
        prop::sample::select(VOWELS),
        prop::sample::select(ONSETS),
        prop::sample::select(VOWELS),
        prop::sample::select(CODAS),
    )
        .prop_map(|(a, b, c, d, e)| format!("{a}{b}{c}{d}{e}"))
}

fn noun_pl() -> impl Strategy<Value = String> {
    stem().prop_map(|s| format!("{s}s"))
}

fn verb_past() -> impl Strategy<Value = String> {
    stem().prop_map(|s| format!("{s}ed"))
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    c.next()
        .map(|f| f.to_uppercase().chain(c).collect())
        .unwrap_or_default()
}

/// One finite clause, lowercase.
fn clause() -> impl Strategy<Value = String> {
    prop_oneof![
        (
            noun_pl(),
            prop::sample::select(&["are", "were"][..]),
            stem()
        )
            .prop_map(|(n, c, a)| format!("{n} {c} {a}")),
        (stem(), noun_pl(), verb_past(), stem(), stem())
            .prop_map(|(adj, n, v, o, poss)| format!("{adj} {n} {v} the {poss}'s {o}")),
        (noun_pl(), stem()).prop_map(|(n, p)| format!("{n} are in {p}")),
        (1u32..9999, noun_pl(), stem()).prop_map(|(k, n, a)| format!("{k} {n} are {a}")),
        (stem(), verb_past(), stem()).prop_map(|(s, v, o)| format!("the {s} had {v} the {o}")),
    ]
}

/// A sentence of one or more clauses joined by the usual connectives.
fn sentence() -> impl Strategy<Value = String> {
    (
        clause(),
        prop::collection::vec(
            (
                prop::sample::select(&[" and ", ", but ", " because ", " while "][..]),
                clause(),
            ),
            0..3,
        ),
        prop::option::of((1u32..500, noun_pl(), verb_past(), stem())),
    )
        .prop_map(|(first, rest, with)| {
            let mut s = first;
            for (join, c) in rest {
                s.push_str(join);
                s.push_str(&c);
            }
            if let Some((k, n, v, a)) = with {
                s.push_str(&format!(", with {k} {n} {v} {a}"));
            }
            format!("{}.", capitalize(&s))
        })
}

fn unit(text: &str, lex: &Lexicon) -> DiscourseUnit {
    DiscourseUnit::from_text(0, 0, text, (0, text.chars().count()), lex)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn classification_is_pure(word in "[a-zA-Z',]{1,12}") {
        let lex = Lexicon::default();
        prop_assert_eq!(lex.classify(&word).ok(), lex.classify(&word).ok());
    }

    #[test]
    fn preserving_an_absent_word_changes_nothing(s in sentence(), extra in stem()) {
        let lex = Lexicon::default();
        prop_assume!(!normalized_words(&s).contains(&extra));
        let wider = Lexicon::from_toml(&format!("prepositions_preserved = [\"{extra}\"]")).unwrap();
        prop_assert!(wider.is_preserved(&extra));
        prop_assert_eq!(generalize_text(&s, &lex), generalize_text(&s, &wider));
    }

    #[test]
    fn dissection_invariants(s in sentence()) {
        let lex = Lexicon::default();
        let u = unit(&s, &lex);
        let trace = dissect(&u, &lex);
        prop_assert!(!trace.primitives.is_empty());
        prop_assert_eq!(&trace, &dissect(&u, &lex));
        if trace.path == discourse_dissect::dissection::DissectionPath::ViaCompound {
            prop_assert!(!trace.compounds.is_empty());
        }
        for p in &trace.primitives {
            prop_assert!(!p.rendered.is_empty());
            let c = classify_unit(&p.tokens, &lex);
            prop_assert_eq!(c.kind, UnitKind::Primitive, "{}", p.rendered);
            if c.verbless {
                prop_assert_eq!(p.rule_tag, RuleTag::EllipticalModifier, "{}", p.rendered);
            }
            let again = tokenize(&p.rendered, &lex);
            prop_assert_eq!(
                again.iter().map(|t| &t.normalized).collect::<Vec<_>>(),
                p.tokens.iter().map(|t| &t.normalized).collect::<Vec<_>>()
            );
            let fixed = dissect(&unit(&p.rendered, &lex), &lex);
            prop_assert_eq!(fixed.primitives.len(), 1);
            prop_assert_eq!(&fixed.primitives[0].rendered, &p.rendered);
        }
        for tok in u.tokens.iter().filter(|t| t.classes.is_content()) {
            let covered = trace
                .primitives
                .iter()
                .flat_map(|p| &p.tokens)
                .any(|t| same_lexeme(&t.word, &tok.word))
                || trace.dropped.iter().any(|d| same_lexeme(d, &tok.word));
            prop_assert!(covered, "{:?} lost from {:?}", tok.word, s);
        }
    }

    #[test]
    fn segmentation_partitions(sents in prop::collection::vec(sentence(), 1..6), breaks in prop::collection::vec(any::<bool>(), 6)) {
        let lex = Lexicon::default();
        let mut corpus = String::new();
        for (i, s) in sents.iter().enumerate() {
            if i > 0 {
                corpus.push_str(if breaks[i] { "\n\n" } else { " " });
            }
            corpus.push_str(s);
        }
        let frags = segment_fragments(&corpus).unwrap();
        for w in frags.windows(2) {
            prop_assert!(w[0].span.1 <= w[1].span.0);
        }
        let mut total = 0;
        for f in &frags {
            let units = segment_units(f, &lex, 0);
            let chars: Vec<char> = f.raw.chars().collect();
            let mut last = 0;
            for u in &units {
                prop_assert!(u.span.0 >= last && u.span.1 >= u.span.0);
                let between: String = chars[last..u.span.0].iter().collect();
                prop_assert!(between.trim().is_empty());
                let text: String = chars[u.span.0..u.span.1].iter().collect();
                prop_assert_eq!(text.trim(), u.text.trim());
                last = u.span.1;
            }
            let tail: String = chars[last..].iter().collect();
            prop_assert!(tail.trim().is_empty());
            for u in &units {
                let again = segment_fragments(&u.text).unwrap();
                prop_assert_eq!(again.len(), 1);
                prop_assert_eq!(segment_units(&again[0], &lex, 0).len(), 1);
            }
            total += units.len();
        }
        prop_assert_eq!(total, sents.len());
    }

    #[test]
    fn resolution_invariants(a in noun_pl(), b in stem(), adj in stem(), adj2 in stem()) {
        let lex = Lexicon::default();
        let stems = [a.trim_end_matches('s'), &b, &adj, &adj2];
        prop_assume!((0..4).all(|i| (0..i).all(|j| stems[i] != stems[j])));
        let text = format!(
            "The {b} was {adj}. {} were {adj2}. They said it was {adj}, and their {b} was {adj2}.",
            capitalize(&a)
        );
        let frag = &segment_fragments(&text).unwrap()[0];
        let units = segment_units(frag, &lex, 0);
        let r = resolve(&units, &lex);
        prop_assert_eq!(r.units.len(), units.len());
        for rec in &r.records {
            let u = units.iter().find(|u| u.id == rec.anaphor_span.unit_id).unwrap();
            prop_assert!(rec.anaphor_span.end <= u.tokens.len());
        }
        let again = resolve(&r.units, &lex);
        prop_assert_eq!(&again.units, &r.units);
        // nearest agreeing candidates: "they" -> plural a, "it" -> singular b
        let last = &r.units[2].text;
        prop_assert!(last.starts_with(&capitalize(&a)), "{}", last);
        prop_assert!(last.contains(&format!("said {b} was")), "{}", last);
    }

    #[test]
    fn pattern_round_trip(s in sentence()) {
        let lex = Lexicon::default();
        for p in dissect(&unit(&s, &lex), &lex).primitives {
            let pattern = generalize(&p.tokens, &lex);
            let bindings = natural_bindings(&p.tokens, &lex);
            let back = pattern.instantiate(&bindings).unwrap();
            prop_assert_eq!(normalized_words(&back), normalized_words(&p.rendered));
            prop_assert_eq!(GeneralizedPattern::parse(pattern.rendered()).unwrap(), pattern);
        }
    }

    #[test]
    fn facts_parse(s in sentence()) {
        let lex = Lexicon::default();
        for p in dissect(&unit(&s, &lex), &lex).primitives {
            match emit_fact(&p, &lex) {
                Ok(fact) => {
                    prop_assert_eq!(parse_fact(&fact.rendered).unwrap(), fact);
                }
                Err(_) => prop_assert!(p.verbless || p.tokens.len() == 1),
            }
        }
    }

    #[test]
    fn inventory_fold_invariants(frags in prop::collection::vec(prop::collection::vec(0usize..6, 0..8), 1..12)) {
        let pool: Vec<GeneralizedPattern> = ["A are B", "A were B", "A B C", "A are in B", "The A B", "A had B"]
            .iter()
            .map(|p| GeneralizedPattern::parse(p).unwrap())
            .collect();
        let mut inv = PatternInventory::new();
        let mut novel_flags = Vec::new();
        let mut seen: Vec<usize> = Vec::new();
        for (fid, picks) in frags.iter().enumerate() {
            inv.begin_fragment(fid).unwrap();
            for &k in picks {
                let n = inv.ingest_exemplar("x", pool[k].clone(), fid).unwrap();
                let oracle_novel = !seen.contains(&k);
                seen.push(k);
                prop_assert_eq!(n == Novelty::Novel, oracle_novel);
                novel_flags.push(n);
            }
        }
        let total: usize = frags.iter().map(Vec::len).sum();
        prop_assert_eq!(inv.total_occurrences(), total);
        prop_assert_eq!(novel_flags.iter().filter(|n| **n == Novelty::Novel).count(), inv.len());

        let report = SaturationReport::from_inventory(&inv);
        prop_assert_eq!(report.rows.len(), frags.len());
        let mut prev = 0;
        for (row, picks) in report.rows.iter().zip(&frags) {
            prop_assert!(row.cum_new_patterns >= prev);
            prop_assert!(row.new_patterns <= row.primitives);
            prop_assert_eq!(row.primitives, picks.len());
            prev = row.cum_new_patterns;
        }
        prop_assert_eq!(prev, inv.len());
        prop_assert_eq!(report.totals().primitives, inv.total_occurrences());
        prop_assert_eq!(parse_csv(&export_csv(&report)).unwrap(), report);

        // reversing each fragment keeps keys and counts
        let mut rev = PatternInventory::new();
        for (fid, picks) in frags.iter().enumerate() {
            for &k in picks.iter().rev() {
                rev.ingest_exemplar("x", pool[k].clone(), fid).unwrap();
            }
        }
        let counts = |i: &PatternInventory| {
            let mut v: Vec<(String, usize)> = i.records().map(|r| (r.pattern.to_string(), r.occurrences)).collect();
            v.sort();
            v
        };
        prop_assert_eq!(counts(&rev), counts(&inv));
    }
}

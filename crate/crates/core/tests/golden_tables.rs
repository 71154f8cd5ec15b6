mod common;

use common::*;
use discourse_dissect::dissection::{dissect, split_compound, DissectionPath};
use discourse_dissect::generalization::{generalize, generalize_text, GeneralizedPattern};
use discourse_dissect::inventory::PatternInventory;
use discourse_dissect::resolution::{resolve, ReferenceKind, ResolutionStatus};
use discourse_dissect::{segment_fragments, segment_units, Lexicon, UnitKind};

#[test]
fn every_row_generalizes_to_its_published_pattern() {
    let lex = Lexicon::default();
    for (primitive, pattern) in all_rows() {
        assert_eq!(
            generalize_text(primitive, &lex).rendered(),
            pattern,
            "{primitive}"
        );
    }
}

#[test]
fn table_1_from_the_first_bracket() {
    let lex = Lexicon::default();
    let prims = &tsunami_primitives(&lex)[0];
    let got: Vec<_> = prims
        .iter()
        .map(|p| {
            (
                p.rendered.as_str(),
                generalize(&p.tokens, &lex).rendered().to_string(),
            )
        })
        .collect();
    let want: Vec<_> = TABLE_1.iter().map(|(s, p)| (*s, p.to_string())).collect();
    assert_eq!(got, want);
}

#[test]
fn tables_2_and_3_from_the_second_bracket() {
    let lex = Lexicon::default();
    let prims = &tsunami_primitives(&lex)[1];
    let got: Vec<_> = prims
        .iter()
        .map(|p| {
            (
                p.rendered.as_str(),
                generalize(&p.tokens, &lex).rendered().to_string(),
            )
        })
        .collect();
    let want: Vec<_> = TABLE_2
        .iter()
        .chain(&TABLE_3)
        .map(|(s, p)| (*s, p.to_string()))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn routes_match_the_two_discourses() {
    let lex = Lexicon::default();
    let units = resolved_units(TSUNAMI, &lex);
    assert_eq!(units.len(), 2);
    assert!(units.iter().all(|u| u.kind == UnitKind::Complex));
    let first = dissect(&units[0], &lex);
    assert_eq!(first.path, DissectionPath::DirectToPrimitive);
    assert_eq!(first.primitives.len(), 9);
    let second = dissect(&units[1], &lex);
    assert_eq!(second.path, DissectionPath::ViaCompound);
    assert_eq!(second.primitives.len(), 8);
    let compounds: Vec<_> = split_compound(&units[1], &lex)
        .into_iter()
        .map(|u| u.text)
        .collect();
    assert_eq!(
        compounds,
        [
            "Ministry had managed to locate missing tourists and struck names of missing tourists off the list",
            "But new names of missing tourists were being added throughout",
        ]
    );
}

#[test]
fn resolution_audit() {
    let lex = Lexicon::default();
    let frags = segment_fragments(TSUNAMI).unwrap();
    let units = segment_units(&frags[1], &lex, 1);
    let r = resolve(&units, &lex);
    assert_eq!(
        r.units[0].text,
        "The ministry said, ministry had managed to locate missing tourists and struck names of \
         missing tourists off the list, but new names of missing tourists were being added throughout"
    );
    let audit: Vec<_> = r
        .records
        .iter()
        .map(|rec| {
            (
                rec.anaphor_text.as_str(),
                rec.replacement_text.as_str(),
                rec.kind,
                rec.status,
            )
        })
        .collect();
    assert_eq!(
        audit,
        [
            (
                "it",
                "ministry",
                ReferenceKind::Anaphoric,
                ResolutionStatus::Resolved
            ),
            (
                "their names",
                "names of missing tourists",
                ReferenceKind::Anaphoric,
                ResolutionStatus::Resolved
            ),
            (
                "new names",
                "new names of missing tourists",
                ReferenceKind::Anaphoric,
                ResolutionStatus::Resolved
            ),
        ]
    );
    assert!(r
        .records
        .iter()
        .all(|rec| rec.anaphor_span.fragment_id == 1));
}

#[test]
fn inventory_counts_match_the_dedup_oracle() {
    let lex = Lexicon::default();
    let t1: Vec<&str> = TABLE_1.iter().map(|r| r.1).collect();
    let all: Vec<&str> = all_rows().iter().map(|r| r.1).collect();

    let mut inv = PatternInventory::new();
    for (fid, prims) in tsunami_primitives(&lex).iter().enumerate() {
        for p in prims {
            inv.ingest(p, generalize(&p.tokens, &lex), fid).unwrap();
        }
        if fid == 0 {
            assert_eq!(inv.len(), oracle_distinct(&t1));
        }
    }
    assert_eq!(inv.len(), oracle_distinct(&all));
    assert_eq!(inv.total_occurrences(), all.len());
    let back = PatternInventory::restore(&inv.to_json_string()).unwrap();
    assert_eq!(back, inv);
    let listing: Vec<_> = back
        .records()
        .map(|r| r.pattern.rendered().to_string())
        .collect();
    let mut oracle_listing: Vec<&str> = Vec::new();
    for p in &all {
        if !oracle_listing.contains(p) {
            oracle_listing.push(p);
        }
    }
    assert_eq!(listing, oracle_listing);
}

#[test]
fn names_are_new_is_known_after_the_tables() {
    let lex = Lexicon::default();
    let mut inv = PatternInventory::new();
    for (s, p) in all_rows() {
        inv.ingest_exemplar(s, GeneralizedPattern::parse(p).unwrap(), 0)
            .unwrap();
    }
    let m = inv.match_sentence("Names are new", &lex).unwrap();
    assert!(m.is_known());
    assert_eq!(m.pattern().rendered(), "A are B");
}

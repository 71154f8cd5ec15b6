#![allow(dead_code)]

use discourse_dissect::dissection::{dissect, PrimitiveDiscourse};
use discourse_dissect::resolution::resolve;
use discourse_dissect::{segment_fragments, segment_units, DiscourseUnit, Lexicon};

pub const TSUNAMI: &str = include_str!("../fixtures/tsunami.txt");

/// Published primitives with their generalized patterns, rows 1-9.
pub const TABLE_1: [(&str, &str); 9] = [
    ("Swedes are 3,500", "A are B"),
    ("Swedes are still missing", "A are B C"),
    ("Swedes are in Thailand", "A are in B"),
    ("Waves were tidal", "A were B"),
    ("Waves struck coastline of the country", "A B C of the D"),
    ("Missing after a week", "A B a C"),
    ("Swedes are 60", "A are B"),
    ("Swedes confirmed dead", "A B C"),
    ("The foreign ministry said on Sunday", "The A B C on D"),
];

/// Rows 10-14.
pub const TABLE_2: [(&str, &str); 5] = [
    ("Tourists are missing", "A are B"),
    ("Ministry had managed", "A had B"),
    ("Tourists are located", "A are B"),
    ("Tourists are missing", "A are B"),
    ("Struck names off the list", "A B C the D"),
];

/// Rows 15-17.
pub const TABLE_3: [(&str, &str); 3] = [
    ("Names are new", "A are B"),
    ("Tourists are missing", "A are B"),
    ("Names were being added throughout", "A were B C D"),
];

pub fn all_rows() -> Vec<(&'static str, &'static str)> {
    TABLE_1
        .iter()
        .chain(&TABLE_2)
        .chain(&TABLE_3)
        .copied()
        .collect()
}

/// Distinct-count oracle: quadratic scan, no hashing.
pub fn oracle_distinct(items: &[&str]) -> usize {
    (0..items.len())
        .filter(|&i| !items[..i].contains(&items[i]))
        .count()
}

/// Segments and resolves a corpus with sequential fragment and unit ids.
pub fn resolved_units(text: &str, lex: &Lexicon) -> Vec<DiscourseUnit> {
    let mut out = Vec::new();
    for f in segment_fragments(text).unwrap() {
        let units = segment_units(&f, lex, out.len());
        out.extend(resolve(&units, lex).units);
    }
    out
}

pub fn tsunami_primitives(lex: &Lexicon) -> Vec<Vec<PrimitiveDiscourse>> {
    resolved_units(TSUNAMI, lex)
        .iter()
        .map(|u| dissect(u, lex).primitives)
        .collect()
}

/// Lexeme used for coverage checks: possessive and past suffixes removed.
pub fn lexeme(word: &str) -> String {
    let w = word.to_lowercase();
    let w = w.trim_end_matches("'s").trim_end_matches("’s");
    w.to_string()
}

pub fn same_lexeme(a: &str, b: &str) -> bool {
    let (a, b) = (lexeme(a), lexeme(b));
    a == b
        || format!("{a}d") == b
        || format!("{a}ed") == b
        || format!("{b}d") == a
        || format!("{b}ed") == a
}

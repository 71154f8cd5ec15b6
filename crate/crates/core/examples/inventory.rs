//! Build a pattern inventory, snapshot it, and check new sentences against it.

use discourse_dissect::inventory::{MatchOutcome, PatternInventory};
use discourse_dissect::pipeline::run;
use discourse_dissect::Lexicon;

const CORPUS: &str = include_str!("../tests/fixtures/tsunami.txt");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::default();
    let (_, inv) = run(CORPUS, &lex)?;

    for r in inv.records() {
        println!(
            "{:<16} x{} first in {}  e.g. {:?}",
            r.pattern, r.occurrences, r.first_seen_fragment, r.exemplars
        );
    }

    let snapshot = inv.to_json_string();
    let restored = PatternInventory::restore(&snapshot)?;
    assert_eq!(restored, inv);
    println!("snapshot: {} bytes", snapshot.len());

    for s in [
        "Children are playing game",
        "Rivers were rising",
        "Of Thailand in",
    ] {
        match restored.match_sentence(s, &lex)? {
            MatchOutcome::Known(p) => println!("known  {p:<12} {s}"),
            MatchOutcome::Novel(p) => println!("novel  {p:<12} {s}"),
        }
    }
    Ok(())
}

//! Split a corpus into fragments and discourse units.

use discourse_dissect::{segment_fragments, segment_units, Lexicon};

const CORPUS: &str = include_str!("../tests/fixtures/tsunami.txt");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::default();
    let mut next_unit = 0;
    for fragment in segment_fragments(CORPUS)? {
        println!("fragment {} chars {:?}", fragment.id, fragment.span);
        let units = segment_units(&fragment, &lex, next_unit);
        next_unit += units.len();
        for u in units {
            let verbless = if u.verbless { " verbless" } else { "" };
            println!("  unit {} [{}{verbless}] {}", u.id, u.kind.as_str(), u.text);
        }
    }

    match segment_fragments("[an unterminated fragment") {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("error: {e}"),
    }
    Ok(())
}

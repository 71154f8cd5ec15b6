//! Substitute referring expressions with their antecedents and print the audit.

use discourse_dissect::resolution::resolve;
use discourse_dissect::{segment_fragments, segment_units, Lexicon};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::default();
    let text = std::env::args().nth(1).unwrap_or_else(|| {
        "Ministry had managed to locate 1,500 missing tourists, and it had struck their names off the list."
            .to_string()
    });

    for fragment in segment_fragments(&text)? {
        let units = segment_units(&fragment, &lex, 0);
        let resolution = resolve(&units, &lex);
        for (before, after) in units.iter().zip(&resolution.units) {
            println!("before: {}", before.text);
            println!("after:  {}", after.text);
        }
        for r in &resolution.records {
            println!("{}", serde_json::to_string(r)?);
        }
    }
    Ok(())
}

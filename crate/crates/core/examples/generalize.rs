//! Turn sentences into letter-slot patterns and back.

use discourse_dissect::generalization::{generalize_text, GeneralizedPattern};
use discourse_dissect::Lexicon;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::default();
    for s in [
        "Swedes are in Thailand",
        "Waves struck coastline of the country",
        "The foreign ministry said on Sunday",
        "Children are playing game",
    ] {
        let p = generalize_text(s, &lex);
        println!("{s:<40} -> {p}  ({} variables)", p.variable_count());
    }

    let pattern = GeneralizedPattern::parse("A B C of the D")?;
    println!(
        "{}",
        pattern.instantiate(&["storms", "flooded", "valleys", "region"])?
    );
    println!("{}", pattern.to_slot_json());

    if let Err(e) = GeneralizedPattern::parse("B are A") {
        println!("rejected: {e}");
    }
    Ok(())
}

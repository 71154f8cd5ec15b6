//! Classify words against the default lexicon and a TOML extension.

use discourse_dissect::Lexicon;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let default = Lexicon::default();
    let extended = Lexicon::from_toml(
        r#"
prepositions_preserved = ["to"]
idioms = { "day after day" = "daily" }
"#,
    )?;

    for word in [
        "The", "were", "had", "of", "off", "being", "but", "to", "tsunami",
    ] {
        let show = |lex: &Lexicon| {
            let classes: Vec<_> = lex
                .classify(word)
                .map(|c| c.iter().map(|c| c.as_str()).collect())
                .unwrap_or_default();
            if classes.is_empty() {
                "content".to_string()
            } else {
                classes.join("+")
            }
        };
        println!(
            "{word:>8}  default={:<22} extended={}",
            show(&default),
            show(&extended)
        );
    }

    println!("preserved: {:?}", extended.preserve_set());
    for idiom in extended.idioms() {
        println!("idiom: {} -> {}", idiom.phrase.join(" "), idiom.replacement);
    }

    // content exceptions may not also be preserved
    let err =
        Lexicon::from_toml("articles = [\"off\"]\ncontent_exceptions = [\"off\"]").unwrap_err();
    println!("rejected: {err}");
    Ok(())
}

//! Dissect each unit of the sample corpus into primitive discourses.

use discourse_dissect::dissection::dissect;
use discourse_dissect::generalization::generalize;
use discourse_dissect::resolution::resolve;
use discourse_dissect::{segment_fragments, segment_units, Lexicon};

const CORPUS: &str = include_str!("../tests/fixtures/tsunami.txt");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::default();
    for fragment in segment_fragments(CORPUS)? {
        let units = segment_units(&fragment, &lex, 0);
        for unit in resolve(&units, &lex).units {
            let trace = dissect(&unit, &lex);
            println!("fragment {} ({:?})", fragment.id, trace.path);
            for c in &trace.compounds {
                println!("  compound: {c}");
            }
            for p in &trace.primitives {
                let pattern = generalize(&p.tokens, &lex);
                println!("  {:<42} {:<16} {}", p.rendered, pattern, p.rule_tag);
            }
            if !trace.dropped.is_empty() {
                println!("  dropped: {}", trace.dropped.join(", "));
            }
        }
    }
    Ok(())
}

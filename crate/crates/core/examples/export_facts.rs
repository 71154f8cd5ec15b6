//! Export primitives as `functor(args).` fact clauses.

use discourse_dissect::pipeline::Pipeline;
use discourse_dissect::reporting::{emit_fact, parse_fact};
use discourse_dissect::Lexicon;

const CORPUS: &str = include_str!("../tests/fixtures/tsunami.txt");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::default();
    let out = Pipeline::new(&lex).process(CORPUS)?;
    for trace in &out.traces {
        for p in &trace.primitives {
            match emit_fact(p, &lex) {
                Ok(fact) => {
                    parse_fact(&fact.rendered)?;
                    println!("{fact}");
                }
                Err(e) => println!("% skipped: {e}"),
            }
        }
    }
    Ok(())
}

//! Feed fragments one at a time and watch the new-pattern curve flatten.

use discourse_dissect::pipeline::Pipeline;
use discourse_dissect::reporting::{export_csv, export_plotdata, SaturationReport};
use discourse_dissect::Lexicon;

const FRAGMENTS: &[&str] = &[
    "Rescuers were tired. Boats are in harbour.",
    "Rescuers searched the coast. Boats were small.",
    "Villagers are hungry. Aid was late.",
    "Donors sent a shipment. Villagers are safe.",
    "Roads are blocked. Rescuers are exhausted.",
    "Officials said on Monday. Roads were cleared.",
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::default();
    let mut pipeline = Pipeline::new(&lex);
    for text in FRAGMENTS {
        let out = pipeline.process(text)?;
        let fresh: Vec<_> = out
            .occurrences
            .iter()
            .filter(|o| o.novel)
            .map(|o| o.pattern.to_string())
            .collect();
        println!("{text:<48} new: {fresh:?}");
    }

    let report = SaturationReport::from_inventory(pipeline.inventory());
    print!("{}", export_csv(&report));
    println!("{}", export_plotdata(&report));
    Ok(())
}

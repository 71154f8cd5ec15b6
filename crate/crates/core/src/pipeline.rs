//! End-to-end runs: segment, resolve, dissect, generalize, ingest.

use serde::Serialize;
use thiserror::Error;

use crate::dissection::{dissect, DissectionTrace, RuleTag};
use crate::generalization::{generalize, GeneralizedPattern};
use crate::inventory::{InventoryError, Novelty, PatternInventory};
use crate::lexicon::Lexicon;
use crate::resolution::{resolve, ResolutionRecord};
use crate::segmentation::{
    segment_fragments, segment_units, DiscourseUnit, Fragment, SegmentationError,
};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Segmentation(#[from] SegmentationError),
    #[error(transparent)]
    Inventory(#[from] InventoryError),
}

/// One ingested primitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternOccurrence {
    pub fragment_id: usize,
    pub source_unit: usize,
    pub rendered: String,
    pub rule_tag: RuleTag,
    pub pattern: GeneralizedPattern,
    pub novel: bool,
}

/// Everything one call to [`Pipeline::process`] produced.
#[derive(Debug, Clone, Default)]
pub struct RunOutput {
    pub fragments: Vec<Fragment>,
    /// Units as segmented, before resolution.
    pub units: Vec<DiscourseUnit>,
    /// The same units after resolution.
    pub resolved_units: Vec<DiscourseUnit>,
    pub records: Vec<ResolutionRecord>,
    pub traces: Vec<DissectionTrace>,
    pub occurrences: Vec<PatternOccurrence>,
}

impl RunOutput {
    pub fn primitive_count(&self) -> usize {
        self.occurrences.len()
    }

    pub fn resolved_count(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.status == crate::resolution::ResolutionStatus::Resolved)
            .count()
    }
}

/// Folds texts into an inventory, numbering fragments and units as it goes.
pub struct Pipeline<'a> {
    lexicon: &'a Lexicon,
    inventory: PatternInventory,
    next_unit: usize,
}

impl<'a> Pipeline<'a> {
    pub fn new(lexicon: &'a Lexicon) -> Self {
        Self::with_inventory(lexicon, PatternInventory::new())
    }

    /// Continues from an existing inventory; new fragments are numbered
    /// after the last one it holds.
    pub fn with_inventory(lexicon: &'a Lexicon, inventory: PatternInventory) -> Self {
        Pipeline {
            lexicon,
            inventory,
            next_unit: 0,
        }
    }

    pub fn inventory(&self) -> &PatternInventory {
        &self.inventory
    }

    pub fn into_inventory(self) -> PatternInventory {
        self.inventory
    }

    pub fn process(&mut self, text: &str) -> Result<RunOutput, PipelineError> {
        let lex = self.lexicon;
        let mut out = RunOutput::default();
        let first_fragment = self.inventory.next_fragment_id();
        for (i, mut fragment) in segment_fragments(text)?.into_iter().enumerate() {
            fragment.id = first_fragment + i;
            let fid = fragment.id;
            let units = segment_units(&fragment, lex, self.next_unit);
            self.next_unit += units.len();
            let resolution = resolve(&units, lex);

            self.inventory.begin_fragment(fid)?;
            self.inventory
                .record_resolutions(fid, resolution.resolved_count())?;
            for unit in &resolution.units {
                let trace = dissect(unit, lex);
                for p in &trace.primitives {
                    let pattern = generalize(&p.tokens, lex);
                    let novelty = self.inventory.ingest(p, pattern.clone(), fid)?;
                    out.occurrences.push(PatternOccurrence {
                        fragment_id: fid,
                        source_unit: p.source_unit,
                        rendered: p.rendered.clone(),
                        rule_tag: p.rule_tag,
                        pattern,
                        novel: novelty == Novelty::Novel,
                    });
                }
                out.traces.push(trace);
            }
            out.fragments.push(fragment);
            out.units.extend(units);
            out.resolved_units.extend(resolution.units);
            out.records.extend(resolution.records);
        }
        Ok(out)
    }
}

/// One-shot run over a text with a fresh inventory.
pub fn run(text: &str, lexicon: &Lexicon) -> Result<(RunOutput, PatternInventory), PipelineError> {
    let mut pipeline = Pipeline::new(lexicon);
    let out = pipeline.process(text)?;
    Ok((out, pipeline.into_inventory()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsunami_summary() {
        let lex = Lexicon::default();
        let (out, inv) = run(include_str!("../tests/fixtures/tsunami.txt"), &lex).unwrap();
        assert_eq!(out.fragments.len(), 2);
        assert_eq!(out.primitive_count(), 17);
        assert_eq!(out.resolved_count(), 3);
        assert_eq!(inv.len(), 11);
        assert_eq!(inv.total_occurrences(), 17);
        assert_eq!(inv.get("A are B").unwrap().occurrences, 7);
    }

    #[test]
    fn incremental_numbering() {
        let lex = Lexicon::default();
        let mut p = Pipeline::new(&lex);
        p.process("Waves were tidal.").unwrap();
        let out = p
            .process("Names are new.\n\nTourists are missing.")
            .unwrap();
        let ids: Vec<_> = out.fragments.iter().map(|f| f.id).collect();
        assert_eq!(ids, [1, 2]);
        assert_eq!(p.inventory().counters().fragments, 3);
        assert_eq!(out.units[0].id, 1);
    }
}

//! The deduplicating pattern inventory.
//!
//! Primitives are folded in fragment order. Each distinct rendered pattern
//! gets one record holding the fragment it was first seen in, its occurrence
//! count and a few exemplar primitives.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dissection::PrimitiveDiscourse;
use crate::generalization::{generalize, GeneralizedPattern};
use crate::lexicon::Lexicon;
use crate::token::tokenize;

pub const SNAPSHOT_VERSION: u32 = 1;
pub const DEFAULT_EXEMPLAR_LIMIT: usize = 3;

#[derive(Debug, Error)]
pub enum InventoryError {
    #[error("fragment {got} ingested after fragment {last}")]
    OutOfOrder { last: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("snapshot version {found:?} is not supported (expected {expected})")]
    Version { found: Option<u64>, expected: u32 },
    #[error("corrupt snapshot: {0}")]
    Corrupt(String),
    #[error("malformed snapshot: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternRecord {
    pub pattern: GeneralizedPattern,
    pub first_seen_fragment: usize,
    pub occurrences: usize,
    pub exemplars: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentCounters {
    pub fragment_id: usize,
    pub primitives: usize,
    pub new_patterns: usize,
    pub resolutions: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub fragments: usize,
    pub primitives: usize,
    pub resolutions: usize,
    pub per_fragment: Vec<FragmentCounters>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Novelty {
    Novel,
    Duplicate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Known(GeneralizedPattern),
    Novel(GeneralizedPattern),
}

impl MatchOutcome {
    pub fn pattern(&self) -> &GeneralizedPattern {
        match self {
            MatchOutcome::Known(p) | MatchOutcome::Novel(p) => p,
        }
    }

    pub fn is_known(&self) -> bool {
        matches!(self, MatchOutcome::Known(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternInventory {
    records: IndexMap<String, PatternRecord>,
    exemplar_limit: usize,
    counters: Counters,
}

#[derive(Serialize, Deserialize)]
struct Snapshot {
    version: u32,
    exemplar_limit: usize,
    records: Vec<PatternRecord>,
    counters: Counters,
}

impl Default for PatternInventory {
    fn default() -> Self {
        Self::new()
    }
}

impl PatternInventory {
    pub fn new() -> Self {
        Self::with_exemplar_limit(DEFAULT_EXEMPLAR_LIMIT)
    }

    pub fn with_exemplar_limit(limit: usize) -> Self {
        PatternInventory {
            records: IndexMap::new(),
            exemplar_limit: limit,
            counters: Counters::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn exemplar_limit(&self) -> usize {
        self.exemplar_limit
    }

    /// Records in first-seen order.
    pub fn records(&self) -> impl Iterator<Item = &PatternRecord> {
        self.records.values()
    }

    pub fn get(&self, rendered: &str) -> Option<&PatternRecord> {
        self.records.get(rendered)
    }

    pub fn contains(&self, pattern: &GeneralizedPattern) -> bool {
        self.records.contains_key(pattern.rendered())
    }

    pub fn counters(&self) -> &Counters {
        &self.counters
    }

    pub fn total_occurrences(&self) -> usize {
        self.records.values().map(|r| r.occurrences).sum()
    }

    /// The id the next fresh fragment should take.
    pub fn next_fragment_id(&self) -> usize {
        self.counters
            .per_fragment
            .last()
            .map_or(0, |f| f.fragment_id + 1)
    }

    /// Opens the counter row for a fragment. Re-opening the current fragment
    /// is a no-op; going backwards is an error.
    pub fn begin_fragment(&mut self, fragment_id: usize) -> Result<(), InventoryError> {
        match self.counters.per_fragment.last() {
            Some(last) if last.fragment_id == fragment_id => Ok(()),
            Some(last) if last.fragment_id > fragment_id => Err(InventoryError::OutOfOrder {
                last: last.fragment_id,
                got: fragment_id,
            }),
            _ => {
                self.counters.fragments += 1;
                self.counters.per_fragment.push(FragmentCounters {
                    fragment_id,
                    primitives: 0,
                    new_patterns: 0,
                    resolutions: 0,
                });
                Ok(())
            }
        }
    }

    fn current(&mut self) -> &mut FragmentCounters {
        self.counters
            .per_fragment
            .last_mut()
            .expect("begin_fragment called")
    }

    pub fn ingest(
        &mut self,
        primitive: &PrimitiveDiscourse,
        pattern: GeneralizedPattern,
        fragment_id: usize,
    ) -> Result<Novelty, InventoryError> {
        self.ingest_exemplar(&primitive.rendered, pattern, fragment_id)
    }

    /// Ingests a pattern with the rendered primitive it came from.
    pub fn ingest_exemplar(
        &mut self,
        exemplar: &str,
        pattern: GeneralizedPattern,
        fragment_id: usize,
    ) -> Result<Novelty, InventoryError> {
        self.begin_fragment(fragment_id)?;
        self.counters.primitives += 1;
        self.current().primitives += 1;
        let limit = self.exemplar_limit;
        let novelty = match self.records.get_mut(pattern.rendered()) {
            Some(record) => {
                record.occurrences += 1;
                if record.exemplars.len() < limit {
                    record.exemplars.push(exemplar.to_string());
                }
                Novelty::Duplicate
            }
            None => {
                let exemplars = if limit > 0 {
                    vec![exemplar.to_string()]
                } else {
                    Vec::new()
                };
                self.records.insert(
                    pattern.rendered().to_string(),
                    PatternRecord {
                        pattern,
                        first_seen_fragment: fragment_id,
                        occurrences: 1,
                        exemplars,
                    },
                );
                self.current().new_patterns += 1;
                Novelty::Novel
            }
        };
        Ok(novelty)
    }

    /// Attributes resolved references to a fragment.
    pub fn record_resolutions(
        &mut self,
        fragment_id: usize,
        count: usize,
    ) -> Result<(), InventoryError> {
        self.begin_fragment(fragment_id)?;
        self.counters.resolutions += count;
        self.current().resolutions += count;
        Ok(())
    }

    /// Generalizes a sentence and reports whether its pattern is known.
    pub fn match_sentence(
        &self,
        sentence: &str,
        lexicon: &Lexicon,
    ) -> Result<MatchOutcome, InventoryError> {
        let tokens = tokenize(sentence, lexicon);
        if tokens.is_empty() {
            return Err(InventoryError::InvalidInput("empty sentence".into()));
        }
        let pattern = generalize(&tokens, lexicon);
        Ok(if self.contains(&pattern) {
            MatchOutcome::Known(pattern)
        } else {
            MatchOutcome::Novel(pattern)
        })
    }

    pub fn snapshot(&self) -> serde_json::Value {
        let snap = Snapshot {
            version: SNAPSHOT_VERSION,
            exemplar_limit: self.exemplar_limit,
            records: self.records.values().cloned().collect(),
            counters: self.counters.clone(),
        };
        serde_json::to_value(snap).expect("inventory serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.snapshot()).expect("inventory serializes")
    }

    pub fn restore(text: &str) -> Result<Self, InventoryError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let found = value.get("version").and_then(serde_json::Value::as_u64);
        if found != Some(u64::from(SNAPSHOT_VERSION)) {
            return Err(InventoryError::Version {
                found,
                expected: SNAPSHOT_VERSION,
            });
        }
        let snap: Snapshot = serde_json::from_value(value)?;
        let mut records = IndexMap::new();
        for record in snap.records {
            if record.occurrences == 0 || record.exemplars.len() > record.occurrences {
                return Err(InventoryError::Corrupt(format!(
                    "record {} has inconsistent counts",
                    record.pattern
                )));
            }
            let key = record.pattern.rendered().to_string();
            if records.insert(key.clone(), record).is_some() {
                return Err(InventoryError::Corrupt(format!("duplicate pattern {key}")));
            }
        }
        let inv = PatternInventory {
            records,
            exemplar_limit: snap.exemplar_limit,
            counters: snap.counters,
        };
        if inv.total_occurrences() != inv.counters.primitives {
            return Err(InventoryError::Corrupt(
                "occurrences do not sum to the primitive count".into(),
            ));
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> GeneralizedPattern {
        GeneralizedPattern::parse(text).unwrap()
    }

    #[test]
    fn first_insertion() {
        let mut inv = PatternInventory::new();
        assert_eq!(
            inv.ingest_exemplar("Names are new", p("A are B"), 0)
                .unwrap(),
            Novelty::Novel
        );
        assert_eq!(inv.len(), 1);
        assert_eq!(inv.get("A are B").unwrap().occurrences, 1);
    }

    #[test]
    fn hundred_repeats_collapse() {
        let mut inv = PatternInventory::new();
        for i in 0..101 {
            inv.ingest_exemplar(&format!("X{i} are y"), p("A are B"), i / 10)
                .unwrap();
        }
        assert_eq!(inv.len(), 1);
        let rec = inv.get("A are B").unwrap();
        assert_eq!(rec.occurrences, 101);
        assert_eq!(rec.exemplars.len(), DEFAULT_EXEMPLAR_LIMIT);
        assert_eq!(rec.first_seen_fragment, 0);
    }

    #[test]
    fn out_of_order_rejected() {
        let mut inv = PatternInventory::new();
        inv.ingest_exemplar("a", p("A"), 3).unwrap();
        assert!(matches!(
            inv.ingest_exemplar("b", p("A B"), 2),
            Err(InventoryError::OutOfOrder { last: 3, got: 2 })
        ));
        inv.ingest_exemplar("c", p("A"), 3).unwrap();
        assert_eq!(inv.next_fragment_id(), 4);
    }

    #[test]
    fn match_known_and_novel() {
        let lex = Lexicon::default();
        let mut inv = PatternInventory::new();
        assert!(!inv
            .match_sentence("Names are new", &lex)
            .unwrap()
            .is_known());
        inv.ingest_exemplar("Swedes are still missing", p("A are B C"), 0)
            .unwrap();
        let m = inv
            .match_sentence("Children are playing game", &lex)
            .unwrap();
        assert_eq!(m, MatchOutcome::Known(p("A are B C")));
        assert!(matches!(
            inv.match_sentence("  ", &lex),
            Err(InventoryError::InvalidInput(_))
        ));
    }

    #[test]
    fn snapshot_round_trip() {
        let empty = PatternInventory::new();
        assert_eq!(
            PatternInventory::restore(&empty.to_json_string()).unwrap(),
            empty
        );

        let mut inv = PatternInventory::with_exemplar_limit(2);
        inv.ingest_exemplar("Waves were tidal", p("A were B"), 0)
            .unwrap();
        inv.ingest_exemplar("Swedes are 60", p("A are B"), 0)
            .unwrap();
        inv.record_resolutions(1, 3).unwrap();
        inv.ingest_exemplar("Names are new", p("A are B"), 1)
            .unwrap();
        let back = PatternInventory::restore(&inv.to_json_string()).unwrap();
        assert_eq!(back, inv);
        assert_eq!(back.counters().fragments, 2);
        let keys: Vec<_> = back
            .records()
            .map(|r| r.pattern.rendered().to_string())
            .collect();
        assert_eq!(keys, ["A were B", "A are B"]);
    }

    #[test]
    fn restore_errors() {
        assert!(matches!(
            PatternInventory::restore(r#"{"version": 9, "records": []}"#),
            Err(InventoryError::Version { found: Some(9), .. })
        ));
        assert!(matches!(
            PatternInventory::restore(r#"{"records": []}"#),
            Err(InventoryError::Version { found: None, .. })
        ));
        assert!(matches!(
            PatternInventory::restore("{not json"),
            Err(InventoryError::Json(_))
        ));
        let mut snap = PatternInventory::new().snapshot();
        snap["counters"]["primitives"] = 5.into();
        assert!(matches!(
            PatternInventory::restore(&snap.to_string()),
            Err(InventoryError::Corrupt(_))
        ));
    }
}

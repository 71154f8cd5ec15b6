//! Dissection of complex and compound units into primitive discourses.
//!
//! Complex units are dissected directly unless they contain a top-level
//! coordinator joining two explicit clauses, in which case they are first
//! split into compounds. Each rule that produces a primitive leaves its tag
//! on the output.

mod rules;
mod words;

use serde::{Deserialize, Serialize};

use crate::lexicon::Lexicon;
use crate::segmentation::{classify_unit, DiscourseUnit, UnitKind};
use crate::token::{tokenize, Token};
use rules::{redundant_frame, Extractor};
use words::{parse_np, words_of, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleTag {
    QuantifierCopula,
    PredicateLift,
    LocativeLift,
    PrenominalAdjective,
    VerbClause,
    EllipticalModifier,
    AppositionNumeral,
    ReportingFrame,
    InfinitiveObject,
    Passthrough,
}

impl RuleTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleTag::QuantifierCopula => "quantifier-copula",
            RuleTag::PredicateLift => "predicate-lift",
            RuleTag::LocativeLift => "locative-lift",
            RuleTag::PrenominalAdjective => "prenominal-adjective",
            RuleTag::VerbClause => "verb-clause",
            RuleTag::EllipticalModifier => "elliptical-modifier",
            RuleTag::AppositionNumeral => "apposition-numeral",
            RuleTag::ReportingFrame => "reporting-frame",
            RuleTag::InfinitiveObject => "infinitive-object",
            RuleTag::Passthrough => "passthrough",
        }
    }
}

impl std::fmt::Display for RuleTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A mono-clausal discourse produced by dissection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveDiscourse {
    pub tokens: Vec<Token>,
    pub source_unit: usize,
    pub rule_tag: RuleTag,
    pub rendered: String,
    pub verbless: bool,
}

impl PrimitiveDiscourse {
    fn from_rendered(
        rendered: String,
        source_unit: usize,
        rule_tag: RuleTag,
        lexicon: &Lexicon,
    ) -> Self {
        let tokens = tokenize(&rendered, lexicon);
        let verbless = classify_unit(&tokens, lexicon).verbless;
        PrimitiveDiscourse {
            tokens,
            source_unit,
            rule_tag,
            rendered,
            verbless,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DissectionPath {
    Passthrough,
    DirectToPrimitive,
    ViaCompound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissectionTrace {
    pub source_unit: usize,
    pub path: DissectionPath,
    /// Intermediate compound texts, in source order.
    pub compounds: Vec<String>,
    pub primitives: Vec<PrimitiveDiscourse>,
    /// Content words that no primitive carries (approximators, frames, markers).
    pub dropped: Vec<String>,
}

#[derive(Serialize)]
struct TracePrimitiveWire<'a> {
    rendered: &'a str,
    rule_tag: RuleTag,
}

#[derive(Serialize)]
struct TraceWire<'a> {
    source_unit: usize,
    path: DissectionPath,
    compounds: &'a [String],
    primitives: Vec<TracePrimitiveWire<'a>>,
}

impl DissectionTrace {
    /// The JSON trace dump.
    pub fn to_json(&self) -> serde_json::Value {
        let wire = TraceWire {
            source_unit: self.source_unit,
            path: self.path,
            compounds: &self.compounds,
            primitives: self
                .primitives
                .iter()
                .map(|p| TracePrimitiveWire {
                    rendered: &p.rendered,
                    rule_tag: p.rule_tag,
                })
                .collect(),
        };
        serde_json::to_value(wire).expect("trace serializes")
    }
}

fn capitalize(text: &str) -> String {
    let mut c = text.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn render(words: &[Word]) -> String {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            if i == 0 {
                capitalize(&w.text)
            } else if w.initial {
                w.text.to_lowercase()
            } else {
                w.text.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders a sub-span as unit text, keeping inner commas.
fn render_piece(words: &[Word]) -> String {
    let last = words.len().saturating_sub(1);
    render(words)
        .split(' ')
        .zip(words)
        .enumerate()
        .map(|(i, (text, w))| {
            if w.comma && i != last {
                format!("{text},")
            } else {
                text.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Splits a unit at top-level coordinators whose right side opens with an
/// explicit subject and a finite verb. A leading reporting frame that only
/// repeats the body's subject is removed first.
pub fn split_compound(unit: &DiscourseUnit, lexicon: &Lexicon) -> Vec<DiscourseUnit> {
    split_with_dropped(unit, lexicon).0
}

fn split_with_dropped(
    unit: &DiscourseUnit,
    lexicon: &Lexicon,
) -> (Vec<DiscourseUnit>, Vec<String>) {
    let words = words_of(&unit.tokens);
    let mut dropped = Vec::new();
    let mut start = 0;
    if let Some(frame) = redundant_frame(&words) {
        dropped.extend(
            words[frame.clone()]
                .iter()
                .filter(|w| w.classes.is_content())
                .map(|w| w.text.clone()),
        );
        start = frame.end;
    }
    let n = words.len();
    let mut cuts = Vec::new();
    let mut piece_start = start;
    for k in start..n {
        let w = &words[k];
        if w.is(crate::LexClass::Subordinator) {
            break;
        }
        if !w.is(crate::LexClass::Coordinator) || !words[piece_start..k].iter().any(Word::finite) {
            continue;
        }
        let opens_clause = parse_np(&words, k + 1, n)
            .is_some_and(|np| np.range.end < n && words[np.range.end].finite());
        if opens_clause {
            cuts.push(k);
            piece_start = k;
        }
    }
    if cuts.is_empty() && start == 0 {
        return (vec![unit.clone()], dropped);
    }
    let mut bounds = vec![start];
    bounds.extend(&cuts);
    bounds.push(n);
    let pieces = bounds
        .windows(2)
        .map(|b| {
            let text = render_piece(&words[b[0]..b[1]]);
            DiscourseUnit::from_text(unit.id, unit.fragment_id, &text, unit.span, lexicon)
        })
        .collect();
    (pieces, dropped)
}

fn extract(unit: &DiscourseUnit, lexicon: &Lexicon) -> (Vec<PrimitiveDiscourse>, Vec<String>) {
    let extraction = Extractor::new(words_of(&unit.tokens), lexicon).run();
    let mut prims: Vec<PrimitiveDiscourse> = extraction
        .emitted
        .iter()
        .map(|(ws, tag)| PrimitiveDiscourse::from_rendered(render(ws), unit.id, *tag, lexicon))
        .filter(|p| !p.tokens.is_empty())
        .collect();
    if prims.is_empty() && !unit.tokens.is_empty() {
        prims.push(passthrough(unit, lexicon));
    }
    (prims, extraction.dropped)
}

fn passthrough(unit: &DiscourseUnit, lexicon: &Lexicon) -> PrimitiveDiscourse {
    let ws = words_of(&unit.tokens);
    PrimitiveDiscourse::from_rendered(render(&ws), unit.id, RuleTag::Passthrough, lexicon)
}

/// Applies the extraction rules to one unit.
pub fn extract_primitives(unit: &DiscourseUnit, lexicon: &Lexicon) -> Vec<PrimitiveDiscourse> {
    extract(unit, lexicon).0
}

/// Dissects a unit along the route its kind calls for.
pub fn dissect(unit: &DiscourseUnit, lexicon: &Lexicon) -> DissectionTrace {
    let mut trace = DissectionTrace {
        source_unit: unit.id,
        path: DissectionPath::Passthrough,
        compounds: Vec::new(),
        primitives: Vec::new(),
        dropped: Vec::new(),
    };
    if unit.tokens.is_empty() {
        return trace;
    }
    if unit.kind == UnitKind::Primitive {
        trace.primitives.push(passthrough(unit, lexicon));
        return trace;
    }
    let (compounds, dropped) = split_with_dropped(unit, lexicon);
    if unit.kind == UnitKind::Compound || compounds.len() > 1 {
        trace.path = DissectionPath::ViaCompound;
        trace.dropped = dropped;
        for c in &compounds {
            trace.compounds.push(c.text.clone());
            let (prims, d) = extract(c, lexicon);
            trace.primitives.extend(prims);
            trace.dropped.extend(d);
        }
    } else {
        trace.path = DissectionPath::DirectToPrimitive;
        let (prims, d) = extract(unit, lexicon);
        trace.primitives = prims;
        trace.dropped = d;
    }
    trace
}

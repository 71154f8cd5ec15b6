//! The extraction rule engine.

use std::ops::Range;

use super::words::{parse_np, segments, Np, Word};
use super::RuleTag;
use crate::cues;
use crate::lexicon::{LexClass, Lexicon};

pub(crate) struct Extraction {
    pub emitted: Vec<(Vec<Word>, RuleTag)>,
    pub dropped: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Plain,
    Apposition,
}

fn finite_in(words: &[Word], range: Range<usize>) -> bool {
    words[range].iter().any(Word::finite)
}

/// The verb group starting at `v`: finite words, with adverbs allowed
/// between them.
fn verb_group(words: &[Word], v: usize, end: usize) -> Range<usize> {
    let mut last = v + 1;
    let mut i = v + 1;
    while i < end {
        if words[i].finite() {
            i += 1;
            last = i;
        } else if cues::is_adverb(&words[i].norm) {
            i += 1;
        } else {
            break;
        }
    }
    v..last
}

fn is_marker(w: &Word) -> bool {
    w.is(LexClass::Coordinator)
        || w.is(LexClass::Subordinator)
        || cues::is_temporal_connective(&w.norm)
}

/// `NP said` filling a whole comma segment.
fn reporting_frame(words: &[Word], seg: Range<usize>) -> Option<Np> {
    let v = seg.clone().find(|&i| words[i].finite())?;
    let np = parse_np(words, seg.start, v).filter(|np| np.range == (seg.start..v))?;
    (v + 1 == seg.end && cues::is_communication_verb(&words[v].norm)).then_some(np)
}

/// A leading reporting frame whose subject is repeated by the next segment.
pub(crate) fn redundant_frame(words: &[Word]) -> Option<Range<usize>> {
    let segs = segments(words, 0..words.len());
    if segs.len() < 2 {
        return None;
    }
    let frame = reporting_frame(words, segs[0].clone())?;
    let body = parse_np(words, segs[1].start, segs[1].end)?;
    (words[frame.head].norm == words[body.head].norm).then(|| segs[0].clone())
}

pub(crate) struct Extractor<'a> {
    lexicon: &'a Lexicon,
    words: Vec<Word>,
    out: Vec<(Vec<Word>, RuleTag)>,
    dropped: Vec<String>,
    main_predicate: Option<Word>,
}

impl<'a> Extractor<'a> {
    pub fn new(words: Vec<Word>, lexicon: &'a Lexicon) -> Self {
        Extractor {
            lexicon,
            words,
            out: Vec::new(),
            dropped: Vec::new(),
            main_predicate: None,
        }
    }

    pub fn run(mut self) -> Extraction {
        let n = self.words.len();
        let mut segs = segments(&self.words, 0..n);
        if let Some(frame) = redundant_frame(&self.words) {
            for i in frame {
                self.drop_word(i);
            }
            segs.remove(0);
        }
        for seg in &segs {
            let seg = seg.clone();
            if seg.start > 0 && self.words[seg.start].norm == "with" && seg.len() > 1 {
                self.drop_word(seg.start);
                self.pieces(seg.start + 1..seg.end, Mode::Apposition);
            } else if let Some(conn) = self.temporal_adjunct(seg.clone()) {
                self.pieces(conn + 1..seg.end, Mode::Plain);
                let mut ws: Vec<Word> = self.main_predicate.iter().cloned().collect();
                ws.push(self.words[conn].clone());
                ws.extend_from_slice(&self.words[seg.start..conn]);
                self.emit(ws, RuleTag::EllipticalModifier);
            } else {
                self.pieces(seg, Mode::Plain);
            }
        }
        Extraction {
            emitted: self.out,
            dropped: self.dropped,
        }
    }

    fn drop_word(&mut self, i: usize) {
        if self.words[i].classes.is_content() {
            self.dropped.push(self.words[i].text.clone());
        }
    }

    fn emit(&mut self, words: Vec<Word>, tag: RuleTag) {
        if !words.is_empty() {
            self.out.push((words, tag));
        }
    }

    fn synth(&self, text: &str) -> Word {
        Word::synth(text, self.lexicon)
    }

    fn copula(&self, past: bool, plural: bool) -> Word {
        self.synth(match (past, plural) {
            (false, true) => "are",
            (false, false) => "is",
            (true, true) => "were",
            (true, false) => "was",
        })
    }

    /// `[article] week after CLAUSE`: returns the connective's index.
    fn temporal_adjunct(&self, seg: Range<usize>) -> Option<usize> {
        let w = &self.words;
        let mut k = seg.start;
        if k < seg.end && w[k].is(LexClass::Article) {
            k += 1;
        }
        let ok = k + 1 < seg.end
            && cues::is_temporal_noun(&w[k].norm)
            && cues::is_temporal_connective(&w[k + 1].norm)
            && finite_in(w, k + 2..seg.end);
        ok.then_some(k + 1)
    }

    /// Splits a segment into clause pieces at coordinators joining two
    /// finite groups, subordinators and temporal connectives.
    fn pieces(&mut self, range: Range<usize>, mode: Mode) {
        let mut start = range.start;
        for k in range.start + 1..range.end {
            if k == start {
                continue;
            }
            let w = &self.words[k];
            let split = if w.is(LexClass::Coordinator) {
                finite_in(&self.words, start..k) && finite_in(&self.words, k + 1..range.end)
            } else if w.is(LexClass::Subordinator) {
                true
            } else if cues::is_temporal_connective(&w.norm) {
                finite_in(&self.words, start..k) && finite_in(&self.words, k + 1..range.end)
            } else {
                false
            };
            if split {
                self.clause(start..k, mode);
                start = k;
            }
        }
        self.clause(start..range.end, mode);
    }

    fn clause(&mut self, range: Range<usize>, mode: Mode) {
        let mut r = range;
        while r.start < r.end && is_marker(&self.words[r.start]) {
            self.drop_word(r.start);
            r.start += 1;
        }
        if r.is_empty() {
            return;
        }
        let Some(v) = r.clone().find(|&i| self.words[i].finite()) else {
            let ws = self.plain(r);
            self.emit(ws, RuleTag::EllipticalModifier);
            return;
        };
        let vg = verb_group(&self.words, v, r.end);
        let head_verb = self.words[v].clone();
        let simple_past = vg.len() == 1
            && !head_verb.classes.is_verbal()
            && cues::is_simple_past(&head_verb.norm);
        let numeral_tag = match mode {
            Mode::Apposition => RuleTag::AppositionNumeral,
            Mode::Plain => RuleTag::QuantifierCopula,
        };

        let mut lifts = Vec::new();
        let subject = match parse_np(&self.words, r.start, v).filter(|np| np.range == (r.start..v))
        {
            Some(np) => self.reduce_np(&np, simple_past, numeral_tag, &mut lifts),
            None => self.plain(r.start..v),
        };
        let comp = vg.end..r.end;
        let mut prims = Vec::new();

        let cop_len = self.words[vg.clone()]
            .iter()
            .take_while(|w| w.classes.is_verbal())
            .count();
        let copular = self.words[v..v + cop_len]
            .iter()
            .any(|w| w.is(LexClass::Copula));
        let to_infinitive = comp.len() > 1
            && self.words[comp.start].norm == "to"
            && self.words[comp.start + 1].mark == cues::VerbMark::Infinitive;

        if copular {
            let cop = self.words[v..v + cop_len].to_vec();
            let loc = comp
                .clone()
                .find(|&i| cues::is_locative(&self.words[i].norm))
                .unwrap_or(r.end);
            let pred = self.reduce_span(v + cop_len..loc, &mut lifts);
            let pp = self.reduce_span(loc..r.end, &mut lifts);
            if let (None, Some(last)) = (&self.main_predicate, pred.last()) {
                self.main_predicate = Some(last.clone());
            }
            if !pred.is_empty() || pp.is_empty() {
                prims.push((concat(&[&subject, &cop, &pred]), RuleTag::PredicateLift));
            }
            if !pp.is_empty() {
                prims.push((concat(&[&subject, &cop, &pp]), RuleTag::LocativeLift));
            }
        } else if to_infinitive {
            let verb = comp.start + 1;
            let obj =
                parse_np(&self.words, verb + 1, r.end).filter(|np| np.range.start == verb + 1);
            match obj {
                Some(obj) => {
                    self.drop_word(comp.start);
                    let obj_words = self.reduce_np(&obj, false, numeral_tag, &mut lifts);
                    let rest = self.reduce_span(obj.range.end..r.end, &mut lifts);
                    let vg_words = self.words[vg.clone()].to_vec();
                    prims.push((concat(&[&subject, &vg_words]), RuleTag::InfinitiveObject));
                    let cop = self.copula(simple_past, cues::is_plural(&self.words[obj.head].norm));
                    let participle = self.synth(&cues::participle(&self.words[verb].norm));
                    prims.push((
                        concat(&[&obj_words, &[cop, participle], &rest]),
                        RuleTag::InfinitiveObject,
                    ));
                }
                None => {
                    let rest = self.reduce_span(vg.start..r.end, &mut lifts);
                    prims.push((concat(&[&subject, &rest]), RuleTag::VerbClause));
                }
            }
        } else if vg.len() == 1 && cues::is_communication_verb(&head_verb.norm) {
            let mut rest = self.reduce_span(vg.clone(), &mut lifts);
            for w in self.reduce_span(comp, &mut lifts) {
                let after_prep = rest.last().is_some_and(|p| {
                    p.is(LexClass::Preposition) || cues::is_boundary_preposition(&p.norm)
                });
                if cues::is_day_name(&w.norm) && !after_prep {
                    rest.push(self.synth("on"));
                }
                rest.push(w);
            }
            prims.push((concat(&[&subject, &rest]), RuleTag::ReportingFrame));
        } else {
            let rest = self.reduce_span(vg.start..r.end, &mut lifts);
            prims.push((concat(&[&subject, &rest]), RuleTag::VerbClause));
        }

        if mode == Mode::Apposition {
            for (_, tag) in &mut prims {
                *tag = RuleTag::AppositionNumeral;
            }
        }
        for (ws, tag) in lifts.into_iter().chain(prims) {
            self.emit(ws, tag);
        }
    }

    /// Words of a range with approximators dropped.
    fn plain(&mut self, range: Range<usize>) -> Vec<Word> {
        let mut out = Vec::new();
        for i in range {
            if cues::is_approximator(&self.words[i].norm) {
                self.drop_word(i);
            } else {
                out.push(self.words[i].clone());
            }
        }
        out
    }

    /// Reduces every noun phrase found in a range, left to right.
    fn reduce_span(
        &mut self,
        range: Range<usize>,
        lifts: &mut Vec<(Vec<Word>, RuleTag)>,
    ) -> Vec<Word> {
        let mut out = Vec::new();
        let mut i = range.start;
        while i < range.end {
            match parse_np(&self.words, i, range.end) {
                Some(np) => {
                    out.extend(self.reduce_np(&np, false, RuleTag::QuantifierCopula, lifts));
                    i = np.range.end;
                }
                None => {
                    out.push(self.words[i].clone());
                    i += 1;
                }
            }
        }
        out
    }

    /// Reduces a noun phrase, pushing its lifted primitives.
    fn reduce_np(
        &mut self,
        np: &Np,
        past: bool,
        numeral_tag: RuleTag,
        lifts: &mut Vec<(Vec<Word>, RuleTag)>,
    ) -> Vec<Word> {
        if let Some(a) = np.approx {
            self.drop_word(a);
        }
        let head = self.words[np.head].clone();
        let plural = cues::is_plural(&head.norm);
        if let Some(n) = np.numeral {
            let numeral = self.words[n].clone();
            lifts.push((
                vec![head.clone(), self.copula(false, plural), numeral],
                numeral_tag,
            ));
        }
        let lift_mods = plural && !np.mods.is_empty();
        if lift_mods {
            for &m in &np.mods {
                let cop = self.copula(past, true);
                lifts.push((
                    vec![head.clone(), cop, self.words[m].clone()],
                    RuleTag::PrenominalAdjective,
                ));
            }
        }
        let mods: Vec<Word> = if lift_mods {
            Vec::new()
        } else {
            np.mods.iter().map(|&m| self.words[m].clone()).collect()
        };
        let article: Vec<Word> = np.article.iter().map(|&a| self.words[a].clone()).collect();

        let mut out = Vec::new();
        if np.possessor.is_empty() {
            out.extend(article);
            out.extend(mods);
            out.push(head);
        } else {
            out.extend(mods);
            out.push(head);
            out.push(self.synth("of"));
            out.extend(article);
            out.extend(
                np.possessor
                    .iter()
                    .map(|&p| self.words[p].without_possessive()),
            );
        }
        if let Some(comp) = &np.of_comp {
            let mut sub = Vec::new();
            let reduced = self.reduce_np(comp, false, RuleTag::QuantifierCopula, &mut sub);
            if sub.is_empty() {
                out.push(self.words[comp.range.start - 1].clone());
                out.extend(reduced);
            } else {
                lifts.extend(sub);
            }
        }
        out
    }
}

fn concat(parts: &[&[Word]]) -> Vec<Word> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

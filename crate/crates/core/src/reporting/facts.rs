use std::fmt;
use std::sync::OnceLock;

use regex::Regex;
use thiserror::Error;

use crate::cues::{self, VerbMark};
use crate::dissection::{PrimitiveDiscourse, RuleTag};
use crate::lexicon::{is_numeral, LexClass, Lexicon};
use crate::token::Token;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactError {
    #[error("primitive {rendered:?} ({rule_tag}) is not exportable: {reason}")]
    NotExportable {
        rule_tag: RuleTag,
        rendered: String,
        reason: &'static str,
    },
    #[error("not a fact clause: {0:?}")]
    Syntax(String),
}

/// `functor(arg1, arg2).`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactClause {
    pub functor: String,
    pub args: Vec<String>,
    pub rendered: String,
}

impl FactClause {
    pub fn new(functor: String, args: Vec<String>) -> Self {
        let rendered = format!("{functor}({}).", args.join(", "));
        FactClause {
            functor,
            args,
            rendered,
        }
    }
}

impl fmt::Display for FactClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered)
    }
}

const IDENT: &str = "[a-z][a-z0-9_]*";
const NUMBER: &str = r"[0-9]+(?:\.[0-9]+)?";

fn grammar() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        let arg = format!("(?:{IDENT}|{NUMBER})");
        Regex::new(&format!(r"^({IDENT})\(({arg}(?:, {arg})*)\)\.$")).expect("valid grammar")
    })
}

/// Parses a clause under `functor '(' arg (', ' arg)* ').'`.
pub fn parse_fact(text: &str) -> Result<FactClause, FactError> {
    let caps = grammar()
        .captures(text)
        .ok_or_else(|| FactError::Syntax(text.to_string()))?;
    let args = caps[2].split(", ").map(str::to_string).collect();
    Ok(FactClause::new(caps[1].to_string(), args))
}

fn atom(tokens: &[Token]) -> Option<String> {
    if let [t] = tokens {
        if is_numeral(&t.normalized) {
            return Some(t.word.replace(',', ""));
        }
    }
    let words: Vec<&str> = tokens.iter().map(|t| t.word.as_str()).collect();
    ident(&words.join("_"))
}

fn ident(text: &str) -> Option<String> {
    let cleaned: String = text
        .to_lowercase()
        .chars()
        .filter(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || *c == '_')
        .collect();
    match cleaned.chars().next() {
        None => None,
        Some(c) if c.is_ascii_digit() || c == '_' => Some(format!("n_{cleaned}")),
        Some(_) => Some(cleaned),
    }
}

fn normalize_aux(w: &str) -> &str {
    match w {
        "has" | "have" | "had" => "have",
        other => other,
    }
}

/// Renders a primitive as a fact: the main verb (copulas as `be`) applied to
/// the phrases left and right of the verb group.
pub fn emit_fact(p: &PrimitiveDiscourse, lexicon: &Lexicon) -> Result<FactClause, FactError> {
    let _ = lexicon;
    let not_exportable = |reason| FactError::NotExportable {
        rule_tag: p.rule_tag,
        rendered: p.rendered.clone(),
        reason,
    };
    let marks = cues::verb_marks(&p.tokens);
    let v = marks
        .iter()
        .position(|m| *m == VerbMark::Finite)
        .ok_or_else(|| not_exportable("no verb group"))?;
    let mut end = v + 1;
    let mut i = v + 1;
    while i < p.tokens.len() {
        if marks[i] == VerbMark::Finite {
            i += 1;
            end = i;
        } else if cues::is_adverb(&p.tokens[i].normalized) {
            i += 1;
        } else {
            break;
        }
    }
    let group = &p.tokens[v..end];
    let lexical = group
        .iter()
        .rev()
        .find(|t| !t.classes.is_verbal() && !cues::is_adverb(&t.normalized));
    let functor = match lexical {
        Some(t) => t.normalized.clone(),
        None if group.iter().any(|t| t.classes.contains(LexClass::Copula)) => "be".to_string(),
        None => normalize_aux(&group[group.len() - 1].normalized).to_string(),
    };
    let functor = ident(&functor).ok_or_else(|| not_exportable("empty functor"))?;
    let args: Vec<String> = [atom(&p.tokens[..v]), atom(&p.tokens[end..])]
        .into_iter()
        .flatten()
        .collect();
    if args.is_empty() {
        return Err(not_exportable("no arguments"));
    }
    Ok(FactClause::new(functor, args))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segmentation::DiscourseUnit;

    fn prim(text: &str, tag: RuleTag) -> PrimitiveDiscourse {
        let lex = Lexicon::default();
        let u = DiscourseUnit::from_text(0, 0, text, (0, 0), &lex);
        PrimitiveDiscourse {
            tokens: u.tokens,
            source_unit: 0,
            rule_tag: tag,
            rendered: text.to_string(),
            verbless: u.verbless,
        }
    }

    fn fact(text: &str) -> String {
        emit_fact(&prim(text, RuleTag::VerbClause), &Lexicon::default())
            .unwrap()
            .rendered
    }

    #[test]
    fn fact_examples() {
        assert_eq!(fact("Swedes are 3,500"), "be(swedes, 3500).");
        assert_eq!(
            fact("Waves struck coastline of the country"),
            "struck(waves, coastline_of_the_country)."
        );
        assert_eq!(fact("Ministry had managed"), "managed(ministry).");
        assert_eq!(
            fact("Names were being added throughout"),
            "added(names, throughout)."
        );
        assert_eq!(
            fact("Struck names off the list"),
            "struck(names_off_the_list)."
        );
        assert_eq!(
            fact("The foreign ministry said on Sunday"),
            "said(the_foreign_ministry, on_sunday)."
        );
    }

    #[test]
    fn verbless_rejected() {
        let err = emit_fact(
            &prim("Missing after a week", RuleTag::EllipticalModifier),
            &Lexicon::default(),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            FactError::NotExportable {
                rule_tag: RuleTag::EllipticalModifier,
                ..
            }
        ));
        assert!(err.to_string().contains("elliptical-modifier"));
    }

    #[test]
    fn grammar_round_trip() {
        for text in [
            "be(swedes, 3500).",
            "managed(ministry).",
            "x(n_60_swedes, 1.5).",
        ] {
            assert_eq!(parse_fact(text).unwrap().rendered, text);
        }
        for bad in ["be(swedes,3500).", "Be(x).", "be().", "be(x)", "be(-1)."] {
            assert!(parse_fact(bad).is_err(), "{bad}");
        }
    }
}

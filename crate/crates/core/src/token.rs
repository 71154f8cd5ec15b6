use serde::Serialize;

use crate::lexicon::{normalize, ClassSet, Lexicon};

/// A surface word with its normalized form and lexical classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    /// The raw chunk, trailing punctuation included (`Thailand,`).
    pub surface: String,
    /// The surface without surrounding punctuation (`Thailand`).
    #[serde(skip)]
    pub word: String,
    #[serde(skip)]
    pub normalized: String,
    pub classes: ClassSet,
    #[serde(skip)]
    pub index: usize,
    /// Char offset of the surface within the tokenized text.
    #[serde(skip)]
    pub start: usize,
}

impl Token {
    pub fn new(surface: &str, lexicon: &Lexicon) -> Self {
        let word = surface
            .trim_matches(|c: char| !c.is_alphanumeric())
            .to_string();
        let normalized = normalize(&word);
        let classes = lexicon.classify_normalized(&normalized);
        Token {
            surface: surface.to_string(),
            word,
            normalized,
            classes,
            index: 0,
            start: 0,
        }
    }

    /// True when the raw chunk ends in a clause-internal separator.
    pub fn comma_after(&self) -> bool {
        self.surface.ends_with([',', ';', ':'])
    }

    pub fn is_capitalized(&self) -> bool {
        self.word.chars().next().is_some_and(char::is_uppercase)
    }
}

/// Splits text on whitespace. Pure-punctuation chunks are glued onto the
/// preceding token (or dropped at the start), so indices stay contiguous.
pub fn tokenize(text: &str, lexicon: &Lexicon) -> Vec<Token> {
    let mut tokens: Vec<Token> = Vec::new();
    let mut chunk_start: Option<usize> = None;
    let flush = |start: usize, chunk: &str, tokens: &mut Vec<Token>| {
        if chunk.chars().any(char::is_alphanumeric) {
            let mut token = Token::new(chunk, lexicon);
            token.index = tokens.len();
            token.start = start;
            tokens.push(token);
        } else if let Some(last) = tokens.last_mut() {
            last.surface.push_str(chunk);
        }
    };
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    for (ci, &(_, ch)) in chars.iter().enumerate() {
        if ch.is_whitespace() {
            if let Some(s) = chunk_start.take() {
                let (bs, be) = (chars[s].0, chars[ci].0);
                flush(s, &text[bs..be], &mut tokens);
            }
        } else if chunk_start.is_none() {
            chunk_start = Some(ci);
        }
    }
    if let Some(s) = chunk_start {
        flush(s, &text[chars[s].0..], &mut tokens);
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctuation_stays_on_surface() {
        let lex = Lexicon::default();
        let toks = tokenize("Swedes are in Thailand , 3,500 of them.", &lex);
        let words: Vec<_> = toks.iter().map(|t| t.word.as_str()).collect();
        assert_eq!(
            words,
            ["Swedes", "are", "in", "Thailand", "3,500", "of", "them"]
        );
        assert_eq!(toks[3].surface, "Thailand,");
        assert!(toks[3].comma_after());
        assert_eq!(toks[6].normalized, "them");
        assert_eq!(
            toks.iter().map(|t| t.index).collect::<Vec<_>>(),
            (0..7).collect::<Vec<_>>()
        );
        assert_eq!(toks[1].start, 7);
    }

    #[test]
    fn possessive_kept() {
        let lex = Lexicon::default();
        let toks = tokenize("the country's coastline", &lex);
        assert_eq!(toks[1].normalized, "country's");
    }

    #[test]
    fn empty() {
        assert!(tokenize("  . , ", &Lexicon::default()).is_empty());
    }
}

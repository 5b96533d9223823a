use serde::{Deserialize, Serialize};

use crate::tagset::PosTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenKind {
    Word,
    Number,
    Punctuation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub kind: TokenKind,
    pub lemma: Option<String>,
    pub pos: Option<PosTag>,
    /// Position in the owning document.
    pub index: usize,
}

impl Token {
    pub fn new(surface: impl Into<String>, kind: TokenKind, index: usize) -> Self {
        Token {
            surface: surface.into(),
            kind,
            lemma: None,
            pos: None,
            index,
        }
    }

    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }

    /// Number of alphabetic characters in the surface.
    pub fn letter_count(&self) -> usize {
        self.surface.chars().filter(|c| c.is_alphabetic()).count()
    }

    pub fn folded(&self) -> String {
        self.surface.to_lowercase()
    }
}

/// Classify a pre-segmented surface (tagged input): any letter makes a
/// word, otherwise any digit a number, otherwise punctuation.
pub fn classify(surface: &str) -> TokenKind {
    if surface.chars().any(char::is_alphabetic) {
        TokenKind::Word
    } else if surface.chars().any(char::is_numeric) {
        TokenKind::Number
    } else {
        TokenKind::Punctuation
    }
}

pub(crate) fn normalize_apostrophes(text: &str) -> String {
    text.replace(['\u{2019}', '\u{2018}', '\u{02BC}'], "'")
}

fn is_joiner(c: char) -> bool {
    c == '\'' || c == '-'
}

fn is_digit_separator(c: char) -> bool {
    c == ',' || c == '.'
}

/// Split raw text into word, number and punctuation tokens.
///
/// Words are maximal letter runs; an apostrophe or hyphen followed by a
/// letter continues the word ("don't", "state-of-the-art"). Numbers are
/// maximal digit runs, where `,` or `.` followed by a digit continues the
/// number ("2,000", "3.5"). Any other non-whitespace character is a
/// punctuation token of its own. Curly apostrophes are normalized first.
pub fn tokenize(text: &str) -> Vec<Token> {
    let text = normalize_apostrophes(text);
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let kind = if c.is_alphabetic() {
            i += 1;
            loop {
                if i < chars.len() && chars[i].is_alphabetic() {
                    i += 1;
                } else if i + 1 < chars.len() && is_joiner(chars[i]) && chars[i + 1].is_alphabetic() {
                    i += 2;
                } else {
                    break;
                }
            }
            TokenKind::Word
        } else if c.is_numeric() {
            i += 1;
            loop {
                if i < chars.len() && chars[i].is_numeric() && !chars[i].is_alphabetic() {
                    i += 1;
                } else if i + 1 < chars.len()
                    && is_digit_separator(chars[i])
                    && chars[i + 1].is_numeric()
                    && !chars[i + 1].is_alphabetic()
                {
                    i += 2;
                } else {
                    break;
                }
            }
            TokenKind::Number
        } else {
            i += 1;
            TokenKind::Punctuation
        };
        let surface: String = chars[start..i].iter().collect();
        let index = tokens.len();
        tokens.push(Token::new(surface, kind, index));
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn view(tokens: &[Token]) -> Vec<(&str, TokenKind)> {
        tokens.iter().map(|t| (t.surface.as_str(), t.kind)).collect()
    }

    #[test]
    fn simple_sentence() {
        use TokenKind::*;
        assert_eq!(
            view(&tokenize("We won.")),
            vec![("We", Word), ("won", Word), (".", Punctuation)]
        );
    }

    #[test]
    fn hyphenated_word_stays_whole() {
        let t = tokenize("a state-of-the-art plan");
        assert_eq!(t.len(), 3);
        assert!(t.iter().all(Token::is_word));
        assert_eq!(t[1].surface, "state-of-the-art");
    }

    #[test]
    fn numbers_and_punctuation() {
        use TokenKind::*;
        assert_eq!(
            view(&tokenize("In 2001, we acted.")),
            vec![
                ("In", Word),
                ("2001", Number),
                (",", Punctuation),
                ("we", Word),
                ("acted", Word),
                (".", Punctuation)
            ]
        );
        assert_eq!(view(&tokenize("1,000.50 dollars"))[0], ("1,000.50", Number));
    }

    #[test]
    fn contractions_and_curly_quotes() {
        let t = tokenize("We don\u{2019}t stop, the Americans' hope");
        let s: Vec<_> = t.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(s, ["We", "don't", "stop", ",", "the", "Americans", "'", "hope"]);
    }

    #[test]
    fn trailing_joiners_are_punctuation() {
        let s: Vec<_> = tokenize("well- -so 'tis").into_iter().map(|t| t.surface).collect();
        assert_eq!(s, ["well", "-", "-", "so", "'", "tis"]);
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("  \n\t ").is_empty());
    }

    #[test]
    fn indices_are_positions() {
        let t = tokenize("one two, three");
        assert!(t.iter().enumerate().all(|(i, tok)| tok.index == i));
    }

    fn latin_text() -> impl Strategy<Value = String> {
        proptest::collection::vec(
            prop_oneof![
                "[A-Za-z]{1,8}",
                "[A-Za-z]{1,4}['-][a-z]{1,4}",
                "[0-9]{1,4}([,.][0-9]{1,3})?",
                "[.,;:!?\"()'\\-]",
                Just("\u{e9}t\u{e9}".to_string()),
            ],
            0..40,
        )
        .prop_flat_map(|parts| {
            let n = parts.len();
            (Just(parts), proptest::collection::vec(prop_oneof![Just(""), Just(" "), Just("\n")], n))
        })
        .prop_map(|(parts, seps)| {
            parts
                .into_iter()
                .zip(seps)
                .map(|(p, s)| format!("{p}{s}"))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn covers_all_non_whitespace(text in latin_text()) {
            let tokens = tokenize(&text);
            let joined: String = tokens.iter().map(|t| t.surface.as_str()).collect();
            let expected: String = text.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(joined, expected);
        }

        #[test]
        fn space_join_round_trip(text in latin_text()) {
            let tokens = tokenize(&text);
            let joined = tokens.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ");
            prop_assert_eq!(tokenize(&joined), tokens);
        }

        #[test]
        fn kinds_respect_invariants(text in latin_text()) {
            for t in tokenize(&text) {
                prop_assert!(!t.surface.is_empty());
                match t.kind {
                    TokenKind::Word => prop_assert!(t.surface.chars().any(char::is_alphabetic)),
                    TokenKind::Number => prop_assert!(t.surface.chars().all(|c| c.is_numeric() || c == ',' || c == '.')),
                    TokenKind::Punctuation => prop_assert!(!t.surface.chars().any(char::is_alphanumeric)),
                }
            }
        }
    }
}

//! Bundled lemma lookup for closed-class function words.
//!
//! Covers the pronoun families (`we` = {we, us, our, ours, ourselves}, ...),
//! the indefinite article (`a` is folded into `an`) and the inflections of
//! `be`, `have` and `do`. Entries here take precedence over external lemma
//! annotations so that pronoun families are counted the same way whatever
//! tagger produced the input.

use super::token::{Token, TokenKind};
use crate::error::{Error, Result};

const TABLE: &[(&str, &[&str])] = &[
    ("i", &["i", "me", "my", "mine", "myself"]),
    ("you", &["you", "your", "yours", "yourself", "yourselves"]),
    ("he", &["he", "him", "his", "himself"]),
    ("she", &["she", "her", "hers", "herself"]),
    ("it", &["it", "its", "itself"]),
    ("we", &["we", "us", "our", "ours", "ourselves"]),
    ("they", &["they", "them", "their", "theirs", "themselves"]),
    ("an", &["a", "an"]),
    ("be", &["be", "am", "is", "are", "was", "were", "been", "being"]),
    ("have", &["have", "has", "had", "having"]),
    ("do", &["do", "does", "did", "doing", "done"]),
];

/// Lemma of a lowercased word form, if the bundled table covers it.
pub fn lookup(folded: &str) -> Option<&'static str> {
    TABLE
        .iter()
        .find(|(_, forms)| forms.contains(&folded))
        .map(|(lemma, _)| *lemma)
}

/// Lowercased lemma of a token.
///
/// Bundled entries first, then the token's own annotation; numbers and
/// punctuation fall back to their surface. A word with neither is an error.
pub fn lemma_of(token: &Token) -> Result<String> {
    let folded = token.folded();
    if let Some(l) = lookup(&folded) {
        return Ok(l.to_string());
    }
    if let Some(l) = &token.lemma {
        return Ok(l.to_lowercase());
    }
    match token.kind {
        TokenKind::Word => Err(Error::MissingAnnotation(format!(
            "no lemma for word token '{}' at position {}",
            token.surface, token.index
        ))),
        _ => Ok(folded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pronoun_family() {
        for f in ["we", "us", "our", "ours"] {
            assert_eq!(lookup(f), Some("we"));
        }
        assert_eq!(lookup("a"), Some("an"));
        assert_eq!(lookup("were"), Some("be"));
        assert_eq!(lookup("nation"), None);
    }

    #[test]
    fn annotation_fallback_and_error() {
        let mut t = Token::new("Nations", TokenKind::Word, 0);
        assert!(matches!(lemma_of(&t), Err(Error::MissingAnnotation(_))));
        t.lemma = Some("Nation".into());
        assert_eq!(lemma_of(&t).unwrap(), "nation");
        let p = Token::new(",", TokenKind::Punctuation, 1);
        assert_eq!(lemma_of(&p).unwrap(), ",");
        let mut our = Token::new("Our", TokenKind::Word, 2);
        our.lemma = Some("our".into());
        assert_eq!(lemma_of(&our).unwrap(), "we");
    }
}

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A string over an [`Alphabet`], stored as symbol indices.
pub type Word = Vec<usize>;

const RESERVED: &[&str] = &["true", "false", "Y", "Ystar", "P", "S", "U", "MOD"];

/// Finite, non-empty, ordered set of tokens.
///
/// Tokens are identifiers (`[A-Za-z0-9_]+`) and may not collide with the
/// keywords of the formula grammar.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    tokens: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        let mut index = HashMap::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() || !t.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidAlphabet(format!("`{t}` is not an identifier")));
            }
            if RESERVED.contains(&t.as_str()) {
                return Err(Error::InvalidAlphabet(format!("`{t}` is a reserved word")));
            }
            if index.insert(t.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate token `{t}`")));
            }
        }
        Ok(Self { tokens, index })
    }

    /// Convenience constructor from single-character tokens, e.g. `"ab"`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, sym: usize) -> &str {
        &self.tokens[sym]
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    fn single_char(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a string. Whitespace-separated input is split on whitespace;
    /// otherwise each character is a token, which requires single-character tokens.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let lookup = |t: &str| self.index_of(t).ok_or_else(|| Error::UnknownToken(t.to_owned()));
        if text.chars().any(char::is_whitespace) {
            text.split_whitespace().map(lookup).collect()
        } else if self.single_char() {
            let mut buf = [0u8; 4];
            text.chars().map(|c| lookup(c.encode_utf8(&mut buf))).collect()
        } else if text.is_empty() {
            Ok(Vec::new())
        } else {
            lookup(text).map(|s| vec![s])
        }
    }

    /// Inverse of [`Alphabet::parse_word`]: concatenated for single-character
    /// alphabets, space-separated otherwise.
    pub fn format_word(&self, word: &[usize]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        word.iter()
            .map(|&s| self.tokens[s].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// All words of length exactly `n` in lexicographic (symbol index) order.
    pub fn words_of_len(&self, n: usize) -> WordsOfLen {
        WordsOfLen {
            base: self.len(),
            current: Some(vec![0; n]),
        }
    }

    /// All words of length `0..=max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=max_len).flat_map(move |n| self.words_of_len(n))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.tokens).finish()
    }
}

impl std::hash::Hash for Alphabet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.tokens.hash(state);
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = Error;

    fn try_from(tokens: Vec<String>) -> Result<Self> {
        Alphabet::new(tokens)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.tokens
    }
}

/// Odometer over `Σ^n`.
pub struct WordsOfLen {
    base: usize,
    current: Option<Word>,
}

impl Iterator for WordsOfLen {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            next[i] += 1;
            if next[i] < self.base {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::from_chars("aa").is_err());
        assert!(Alphabet::new(["Y"]).is_err());
        assert!(Alphabet::new(["a b"]).is_err());
    }

    #[test]
    fn word_round_trip() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let w = ab.parse_word("abba").unwrap();
        assert_eq!(w, vec![0, 1, 1, 0]);
        assert_eq!(ab.format_word(&w), "abba");
        assert_eq!(ab.parse_word("a b").unwrap(), vec![0, 1]);
        assert!(ab.parse_word("abc").is_err());

        let long = Alphabet::new(["open", "close"]).unwrap();
        let w = long.parse_word("open close").unwrap();
        assert_eq!(long.format_word(&w), "open close");
    }

    #[test]
    fn enumeration_counts() {
        let abc = Alphabet::from_chars("abc").unwrap();
        assert_eq!(abc.words_of_len(0).count(), 1);
        assert_eq!(abc.words_of_len(3).count(), 27);
        assert_eq!(abc.words_up_to(2).count(), 1 + 3 + 9);
        let first: Vec<_> = abc.words_of_len(2).take(4).collect();
        assert_eq!(first, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0]]);
    }
}

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::shift::word::Word;

/// A finite, ordered set of symbol names.
///
/// The order given at construction is the canonical order: symbol `i` is the
/// `i`-th row/column in every matrix and words compare by these indices.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidAlphabet("empty symbol name".into()));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// `"0"`, `"1"`, ... `"n-1"`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn parse_word<S: AsRef<str>>(&self, letters: &[S]) -> Result<Word> {
        letters
            .iter()
            .map(|s| {
                self.index_of(s.as_ref())
                    .ok_or_else(|| Error::UnknownSymbol(s.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.iter().find(|&&a| a >= self.len()) {
            Some(a) => Err(Error::AlphabetMismatch(format!(
                "letter index {a} outside alphabet of size {}",
                self.len()
            ))),
            None => Ok(()),
        }
    }

    pub fn names(&self, w: &Word) -> Vec<String> {
        w.iter().map(|&a| self.symbols[a].clone()).collect()
    }

    /// Concatenation when every symbol is a single character, dot-separated
    /// otherwise; `ε` for the empty word.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { "." };
        w.iter()
            .map(|&a| self.symbols[a].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// All words of length `k` in lexicographic order.
    pub fn words_of_length(&self, k: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|w| (0..self.len()).map(move |a| w.with_last(a)))
                .collect();
        }
        out
    }

    /// All words of length at most `k`, shortest first.
    pub fn words_up_to(&self, k: usize) -> Vec<Word> {
        (0..=k).flat_map(|n| self.words_of_length(n)).collect()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.symbols).finish()
    }
}

//! Exact finite words over a small indexed alphabet.
//!
//! Letters are stored as `u8` indices into an [`Alphabet`]; symbol names only
//! matter when parsing or rendering. A bare [`Word`] prints with the default
//! names `a`, `b`, `c`, ... (index 0 is `a`).

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u8;

/// Largest alphabet supported by the `u8` letter encoding (one value is kept
/// free as a scan sentinel).
pub const MAX_ALPHABET: usize = 255;

/// Ordered set of distinct symbols. Letter `i` is named `symbols[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.len() < 2 {
            return Err(Error::InvalidAlphabet(format!(
                "need at least 2 letters, got {}",
                symbols.len()
            )));
        }
        if symbols.len() > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(format!(
                "at most {MAX_ALPHABET} letters supported"
            )));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {c:?}")));
            }
            if c.is_whitespace() || matches!(c, ',' | '-' | '>' | '~') {
                return Err(Error::InvalidAlphabet(format!("reserved symbol {c:?}")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `{a, b, c, ...}` of the given size.
    pub fn standard(size: usize) -> Result<Self> {
        if size > 26 {
            return Err(Error::InvalidAlphabet(format!(
                "standard alphabets have at most 26 letters, asked for {size}"
            )));
        }
        Alphabet::new((0..size as u8).map(|i| (b'a' + i) as char))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.symbols.len()).map(|i| i as Letter)
    }

    pub fn symbol(&self, letter: Letter) -> char {
        self.symbols[letter as usize]
    }

    pub fn letter(&self, symbol: char) -> Result<Letter> {
        self.symbols
            .iter()
            .position(|&c| c == symbol)
            .map(|i| i as Letter)
            .ok_or(Error::UnknownSymbol(symbol))
    }

    pub fn contains_word(&self, word: &Word) -> bool {
        word.iter().all(|&l| (l as usize) < self.len())
    }

    /// Parses a word written one symbol per letter. `""`, `"-"` and `"ε"`
    /// denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "-" || text == "ε" {
            return Ok(Word::empty());
        }
        text.chars().map(|c| self.letter(c)).collect()
    }

    pub fn render(&self, word: &Word) -> String {
        word.iter().map(|&l| self.symbol(l)).collect()
    }

    /// Like [`Alphabet::render`] but the empty word becomes `-`.
    pub fn render_or_dash(&self, word: &Word) -> String {
        if word.is_empty() {
            "-".to_string()
        } else {
            self.render(word)
        }
    }
}

/// A finite word. Immutable in spirit: operations return fresh words.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` followed by the single letter `l`.
    pub fn with(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(l);
        Word(v)
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.len();
        (0..n / 2).all(|i| self.0[i] == self.0[n - 1 - i])
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.len())].to_vec())
    }

    pub fn suffix(&self, len: usize) -> Word {
        let len = len.min(self.len());
        Word(self.0[self.len() - len..].to_vec())
    }

    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    /// `p⁻¹·self`, if `p` is a prefix.
    pub fn strip_prefix(&self, p: &Word) -> Option<Word> {
        self.0.strip_prefix(p.as_slice()).map(|s| Word(s.to_vec()))
    }

    /// `self·s⁻¹`, if `s` is a suffix.
    pub fn strip_suffix(&self, s: &Word) -> Option<Word> {
        self.0.strip_suffix(s.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Number of occurrences of the letter `l`.
    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    pub fn contains_factor(&self, pattern: &Word) -> bool {
        pattern.is_empty() || self.0.windows(pattern.len()).any(|w| w == pattern.as_slice())
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word(s.to_vec())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Extend<Letter> for Word {
    fn extend<I: IntoIterator<Item = Letter>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

/// Parses with the default names: `a` is letter 0, `b` letter 1, and so on.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s == "ε" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| {
                if c.is_ascii_lowercase() {
                    Ok(c as u8 - b'a')
                } else {
                    Err(Error::UnknownSymbol(c))
                }
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            if l < 26 {
                write!(f, "{}", (b'a' + l) as char)?;
            } else {
                write!(f, "<{l}>")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

/// Greatest common prefix.
pub fn gcp(u: &[Letter], v: &[Letter]) -> Word {
    let n = u.iter().zip(v).take_while(|(a, b)| a == b).count();
    Word::from(&u[..n])
}

/// Greatest common suffix.
pub fn gcs(u: &[Letter], v: &[Letter]) -> Word {
    let n = u
        .iter()
        .rev()
        .zip(v.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    Word::from(&u[u.len() - n..])
}

/// Sorted start positions of a pattern in a text, overlaps included.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OccurrenceList(Vec<usize>);

impl OccurrenceList {
    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }
}

impl Deref for OccurrenceList {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// All occurrences of `pattern` in `text` by direct comparison at every
/// offset.
pub fn occurrences(pattern: &[Letter], text: &[Letter]) -> Result<OccurrenceList> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if pattern.len() > text.len() {
        return Ok(OccurrenceList::default());
    }
    Ok(OccurrenceList(
        text.windows(pattern.len())
            .enumerate()
            .filter(|(_, w)| *w == pattern)
            .map(|(i, _)| i)
            .collect(),
    ))
}

/// Knuth–Morris–Pratt failure function: `fail[i]` is the length of the
/// longest proper border of `s[..=i]`.
pub(crate) fn failure_function(s: &[Letter]) -> Vec<usize> {
    let mut fail = vec![0; s.len()];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// Same contract as [`occurrences`], linear time.
pub fn occurrences_kmp(pattern: &[Letter], text: &[Letter]) -> Result<OccurrenceList> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let fail = failure_function(pattern);
    let mut out = Vec::new();
    let mut k = 0;
    for (i, &c) in text.iter().enumerate() {
        while k > 0 && c != pattern[k] {
            k = fail[k - 1];
        }
        if c == pattern[k] {
            k += 1;
        }
        if k == pattern.len() {
            out.push(i + 1 - k);
            k = fail[k - 1];
        }
    }
    Ok(OccurrenceList(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("ab").concat(&w("a")), w("aba"));
        assert_eq!(Word::empty().concat(&w("abc")), w("abc"));
        assert_eq!(w("ba").concat(&w("ca")), w("baca"));
    }

    #[test]
    fn gcp_gcs_examples() {
        assert_eq!(gcp(&w("abaab"), &w("abaaba")), w("abaab"));
        assert_eq!(gcp(&w("ab"), &w("ba")), Word::empty());
        assert_eq!(gcs(&w("xab"), &w("yab")), w("ab"));
        assert_eq!(gcs(&w("ab"), &w("ba")), Word::empty());
    }

    #[test]
    fn gcs_on_named_alphabet() {
        let alpha = Alphabet::new(['x', 'y', 'a', 'b']).unwrap();
        let u = alpha.parse_word("xab").unwrap();
        let v = alpha.parse_word("yab").unwrap();
        assert_eq!(alpha.render(&gcs(&u, &v)), "ab");
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(occurrences(&w("aa"), &w("aaa")).unwrap().positions(), &[0, 1]);
        assert_eq!(occurrences(&w("aba"), &w("abacaba")).unwrap().positions(), &[0, 4]);
        assert_eq!(occurrences(&Word::empty(), &w("abc")), Err(Error::EmptyPattern));
        assert!(occurrences(&w("abcd"), &w("abc")).unwrap().is_empty());
    }

    #[test]
    fn reverse_and_palindromes() {
        assert_eq!(w("abc").reverse(), w("cba"));
        assert!(w("abaaba").is_palindrome());
        assert!(!w("ab").is_palindrome());
        assert!(Word::empty().is_palindrome());
    }

    #[test]
    fn alphabet_rejects_bad_input() {
        assert!(Alphabet::new(['a']).is_err());
        assert!(Alphabet::new(['a', 'a']).is_err());
        assert!(Alphabet::new(['a', ',']).is_err());
        let alpha = Alphabet::standard(3).unwrap();
        assert_eq!(alpha.parse_word("abd"), Err(Error::UnknownSymbol('d')));
        assert_eq!(alpha.parse_word("-").unwrap(), Word::empty());
        assert_eq!(alpha.render_or_dash(&Word::empty()), "-");
    }

    #[test]
    fn strip_helpers() {
        assert_eq!(w("abc").strip_prefix(&w("ab")), Some(w("c")));
        assert_eq!(w("abc").strip_suffix(&w("bc")), Some(w("a")));
        assert_eq!(w("abc").strip_prefix(&w("b")), None);
    }
}

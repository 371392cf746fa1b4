//! Palindromic closure and the iterated operator `Pal`.

use std::fmt;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::word::{failure_function, Alphabet, Letter, Word};

/// Default cap on materialized directive prefixes.
pub const DEFAULT_PREFIX_CAP: usize = 100_000;

/// Length of the longest palindromic suffix of `x`: the longest prefix of the
/// reversal of `x` that is also a suffix of `x`.
pub fn longest_palindromic_suffix(x: &[Letter]) -> usize {
    if x.is_empty() {
        return 0;
    }
    let pattern: Vec<Letter> = x.iter().rev().copied().collect();
    let fail = failure_function(&pattern);
    let mut k = 0;
    for &c in x {
        if k == pattern.len() {
            k = fail[k - 1];
        }
        while k > 0 && c != pattern[k] {
            k = fail[k - 1];
        }
        if c == pattern[k] {
            k += 1;
        }
    }
    k
}

/// `x^(+)`, the shortest palindrome having `x` as a prefix.
pub fn pal_closure(x: &[Letter]) -> Word {
    let s = longest_palindromic_suffix(x);
    let mut out = x.to_vec();
    out.extend(x[..x.len() - s].iter().rev());
    Word::from(out)
}

/// `Pal(ε) = ε`, `Pal(ua) = (Pal(u)a)^(+)`.
pub fn pal(u: &[Letter]) -> Word {
    pal_prefixes(u).0
}

/// `Pal(u)` together with `|Pal(u[0,k))|` for `k = 0..=|u|`. Each of these
/// is a prefix of `Pal(u)`.
pub fn pal_prefixes(u: &[Letter]) -> (Word, Vec<usize>) {
    let mut p = Word::empty();
    let mut lengths = Vec::with_capacity(u.len() + 1);
    lengths.push(0);
    for &a in u {
        p = pal_closure(&p.with(a));
        lengths.push(p.len());
    }
    (p, lengths)
}

/// The `u` with `Pal(u) = p`. Each directive letter is read off `p` right
/// after the palindromic prefix built so far, and every closure step is
/// checked against `p`.
pub fn pal_inverse(p: &[Letter]) -> Result<Word> {
    let not_in_image = || Error::NotInPalImage(Word::from(p).to_string());
    let mut u = Vec::new();
    let mut cur = Word::empty();
    while cur.len() < p.len() {
        let a = p[cur.len()];
        let next = pal_closure(&cur.with(a));
        if next.len() > p.len() || next.as_slice() != &p[..next.len()] {
            return Err(not_in_image());
        }
        u.push(a);
        cur = next;
    }
    Ok(Word::from(u))
}

/// Both sides of `Pal(uv) = ψ_u(Pal(v))·Pal(u)`.
pub fn justin_left(alphabet: &Alphabet, u: &Word, v: &Word) -> (Word, Word) {
    let lhs = pal(&u.concat(v));
    let rhs = Morphism::psi_word(alphabet, u)
        .apply(&pal(v))
        .concat(&pal(u));
    (lhs, rhs)
}

/// Both sides of `Pal(uv) = Pal(u)·ψ̄_u(Pal(v))`.
pub fn justin_right(alphabet: &Alphabet, u: &Word, v: &Word) -> (Word, Word) {
    let lhs = pal(&u.concat(v));
    let rhs = pal(u).concat(&Morphism::psi_bar_word(alphabet, u).apply(&pal(v)));
    (lhs, rhs)
}

/// `|Pal(u)|` from the norm of `ψ_u`: `(‖ψ_u‖ - 1)/(|A| - 1) - 1`.
pub fn pal_length(alphabet: &Alphabet, u: &Word) -> Result<usize> {
    let norm = Morphism::psi_word(alphabet, u).norm();
    let k = alphabet.len() - 1;
    if !(norm - 1).is_multiple_of(k) {
        return Err(Error::TheoryViolation(format!(
            "norm {norm} of psi_u gives an inexact length quotient"
        )));
    }
    Ok((norm - 1) / k - 1)
}

/// A directive word: a finite word, or `preperiod · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DirectiveWord {
    Finite(Word),
    Periodic { preperiod: Word, period: Word },
}

impl DirectiveWord {
    pub fn periodic(preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Precondition("directive period is empty".to_string()));
        }
        Ok(DirectiveWord::Periodic { preperiod, period })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, DirectiveWord::Finite(_))
    }

    /// Letters occurring infinitely often (all letters, for a finite word).
    pub fn recurrent_letters(&self) -> Vec<Letter> {
        let w = match self {
            DirectiveWord::Finite(w) => w,
            DirectiveWord::Periodic { period, .. } => period,
        };
        let mut ls: Vec<Letter> = w.to_vec();
        ls.sort_unstable();
        ls.dedup();
        ls
    }

    /// At least two letters occur infinitely often.
    pub fn is_nondegenerate(&self) -> bool {
        !self.is_finite() && self.recurrent_letters().len() >= 2
    }

    pub fn letter_at(&self, i: usize) -> Option<Letter> {
        match self {
            DirectiveWord::Finite(w) => w.get(i).copied(),
            DirectiveWord::Periodic { preperiod, period } => Some(if i < preperiod.len() {
                preperiod[i]
            } else {
                period[(i - preperiod.len()) % period.len()]
            }),
        }
    }

    /// `d[0, len)` with the default cap.
    pub fn prefix(&self, len: usize) -> Result<Word> {
        self.prefix_capped(len, DEFAULT_PREFIX_CAP)
    }

    pub fn prefix_capped(&self, len: usize, cap: usize) -> Result<Word> {
        if len > cap {
            return Err(Error::CapExceeded(format!(
                "directive prefix of length {len} exceeds cap {cap}"
            )));
        }
        if let DirectiveWord::Finite(w) = self {
            if len > w.len() {
                return Err(Error::IndexOutOfRange {
                    index: len,
                    max: w.len(),
                });
            }
        }
        Ok((0..len).map(|i| self.letter_at(i).unwrap()).collect())
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            DirectiveWord::Finite(w) => alphabet.render_or_dash(w),
            DirectiveWord::Periodic { preperiod, period } => {
                format!("{}({})^ω", alphabet.render(preperiod), alphabet.render(period))
            }
        }
    }
}

impl fmt::Display for DirectiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DirectiveWord::Finite(w) => write!(f, "{w}"),
            DirectiveWord::Periodic { preperiod, period } => write!(f, "{preperiod}({period})^ω"),
        }
    }
}

/// Where a factor first shows up along the prefixes `Pal(d[0,n))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PalOccurrence {
    /// Least `n` with the factor occurring in `Pal(d[0,n))`.
    pub n: usize,
    /// Index of its unique occurrence there.
    pub index: usize,
    /// `|Pal(d[0,n))|`.
    pub pal_len: usize,
}

/// `Pal(d[0,n))` for a growing `n`, kept as one word since each value is a
/// prefix of the next.
#[derive(Clone, Debug)]
pub struct DirectivePal {
    directive: DirectiveWord,
    pal: Word,
    /// `lengths[n] = |Pal(d[0,n))|`.
    lengths: Vec<usize>,
    cap: usize,
}

impl DirectivePal {
    pub fn new(directive: DirectiveWord) -> Self {
        Self::with_cap(directive, DEFAULT_PREFIX_CAP)
    }

    /// `cap` bounds the length of the materialized palindrome.
    pub fn with_cap(directive: DirectiveWord, cap: usize) -> Self {
        DirectivePal {
            directive,
            pal: Word::empty(),
            lengths: vec![0],
            cap,
        }
    }

    pub fn directive(&self) -> &DirectiveWord {
        &self.directive
    }

    /// Number of directive letters consumed so far.
    pub fn depth(&self) -> usize {
        self.lengths.len() - 1
    }

    /// Consumes one more directive letter. `Ok(false)` when a finite
    /// directive word is exhausted.
    fn grow(&mut self) -> Result<bool> {
        let Some(a) = self.directive.letter_at(self.depth()) else {
            return Ok(false);
        };
        if self.pal.len() >= self.cap {
            return Err(Error::CapExceeded(format!(
                "palindromic prefix would exceed {} letters",
                self.cap
            )));
        }
        self.pal = pal_closure(&self.pal.with(a));
        self.lengths.push(self.pal.len());
        Ok(true)
    }

    fn ensure_depth(&mut self, n: usize) -> Result<()> {
        while self.depth() < n {
            if !self.grow()? {
                return Err(Error::IndexOutOfRange {
                    index: n,
                    max: self.depth(),
                });
            }
        }
        Ok(())
    }

    /// `|Pal(d[0,n))|`.
    pub fn pal_len(&mut self, n: usize) -> Result<usize> {
        self.ensure_depth(n)?;
        Ok(self.lengths[n])
    }

    /// `Pal(d[0,n))`.
    pub fn pal_prefix(&mut self, n: usize) -> Result<Word> {
        self.ensure_depth(n)?;
        Ok(self.pal.prefix(self.lengths[n]))
    }

    /// The least `n` such that `w` occurs in `Pal(d[0,n))`, with the index of
    /// that occurrence, which must be unique.
    ///
    /// Once `|Pal(d[0,n0))| ≥ |w|`, every factor of length `|w|` of the shift
    /// already occurs in `Pal(d[0,n1))` where `d[n0,n1)` contains every
    /// recurrent letter, so a miss there means `w` is not a factor.
    pub fn locate(&mut self, w: &[Letter]) -> Result<PalOccurrence> {
        if w.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let not_found = || Error::NotInLanguage(Word::from(w).to_string());
        let mut n0 = 0;
        while self.lengths[n0] < w.len() {
            if n0 == self.depth() && !self.grow()? {
                return Err(not_found());
            }
            n0 += 1;
        }
        let mut needed = self.directive.recurrent_letters();
        let mut n1 = n0;
        while !needed.is_empty() {
            let Some(a) = self.directive.letter_at(n1) else {
                break;
            };
            needed.retain(|&b| b != a);
            n1 += 1;
        }
        // For a finite directive word, search everything it produces.
        if self.directive.is_finite() {
            n1 = usize::MAX;
        }
        while self.depth() < n1 && self.grow()? {}
        let limit = self.lengths[self.depth().min(n1)];
        let haystack = &self.pal[..limit];
        let index = haystack
            .windows(w.len())
            .position(|x| x == w)
            .ok_or_else(not_found)?;
        let end = index + w.len();
        let n = self.lengths.iter().position(|&l| l >= end).expect("occurrence is inside");
        let pal_len = self.lengths[n];
        let second = self.pal[index + 1..pal_len]
            .windows(w.len())
            .any(|x| x == w);
        if second {
            return Err(Error::TheoryViolation(format!(
                "{} occurs more than once in the shortest palindromic prefix containing it",
                Word::from(w)
            )));
        }
        Ok(PalOccurrence { n, index, pal_len })
    }
}

/// A node of the standard tree: a directive word and its standard tuple
/// `(ψ_u(a))_{a ∈ A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTuple {
    pub word: Word,
    pub images: Vec<Word>,
}

/// All nodes of depth at most `depth`, breadth first; within a level, in
/// lexicographic order of the directive word. The parent of a node is its
/// word with the last letter removed.
pub fn standard_tree(alphabet: &Alphabet, depth: usize) -> Vec<StandardTuple> {
    let mut out = vec![StandardTuple {
        word: Word::empty(),
        images: Morphism::identity(alphabet).images().to_vec(),
    }];
    let mut level_start = 0;
    for _ in 0..depth {
        let level_end = out.len();
        for i in level_start..level_end {
            for a in alphabet.letters() {
                // ψ_{ua} = ψ_u ∘ ψ_a: the image of b is ψ_u(ψ_a(b)).
                let parent = &out[i];
                let images = alphabet
                    .letters()
                    .map(|b| {
                        if b == a {
                            parent.images[a as usize].clone()
                        } else {
                            parent.images[a as usize].concat(&parent.images[b as usize])
                        }
                    })
                    .collect();
                let word = parent.word.with(a);
                out.push(StandardTuple { word, images });
            }
        }
        level_start = level_end;
    }
    out
}

/// Graphviz rendering of the standard tree; each node shows its tuple.
pub fn standard_tree_dot(alphabet: &Alphabet, nodes: &[StandardTuple]) -> String {
    let id = |w: &Word| format!("\"{}\"", alphabet.render_or_dash(w));
    let mut out = String::from("digraph standard_tree {\n  node [shape=box];\n");
    for n in nodes {
        let label: Vec<String> = n.images.iter().map(|w| alphabet.render(w)).collect();
        out.push_str(&format!("  {} [label=\"{}\"];\n", id(&n.word), label.join("\\n")));
    }
    for n in nodes.iter().filter(|n| !n.word.is_empty()) {
        let parent = n.word.prefix(n.word.len() - 1);
        let last = alphabet.symbol(n.word.last().unwrap());
        out.push_str(&format!("  {} -> {} [label=\"{}\"];\n", id(&parent), id(&n.word), last));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Shortest palindrome with prefix `x`, by trying every completion.
    fn closure_brute(x: &Word) -> Word {
        (0..=x.len())
            .map(|k| x.concat(&x.prefix(k).reverse()))
            .find(|c| c.is_palindrome())
            .unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(pal_closure(&w("ab")), w("aba"));
        assert_eq!(pal_closure(&w("aba")), w("aba"));
        assert_eq!(pal_closure(&w("abaab")), closure_brute(&w("abaab")));
        assert_eq!(pal_closure(&w("abaab")), w("abaaba"));
        assert_eq!(pal_closure(&[]), Word::empty());
    }

    #[test]
    fn pal_examples() {
        assert_eq!(pal(&w("abc")), w("abacaba"));
        assert_eq!(pal(&w("aba")), w("abaaba"));
        assert_eq!(pal(&w("bb")), w("bb"));
        assert_eq!(pal(&w("bbb")), w("bbb"));
        assert_eq!(pal(&[]), Word::empty());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(pal_inverse(&w("abacaba")).unwrap(), w("abc"));
        assert_eq!(pal_inverse(&[]).unwrap(), Word::empty());
        assert!(matches!(pal_inverse(&w("abab")), Err(Error::NotInPalImage(_))));
        // a palindrome outside the image
        assert!(pal_inverse(&w("abba")).is_err());
    }

    #[test]
    fn justin_examples() {
        let ab = Alphabet::standard(2).unwrap();
        let abc = Alphabet::standard(3).unwrap();
        let (l, r) = justin_left(&ab, &w("a"), &w("b"));
        assert_eq!((l.clone(), r), (w("aba"), w("aba")));
        let (l, r) = justin_left(&abc, &w("ab"), &w("c"));
        assert_eq!(l, w("abacaba"));
        assert_eq!(r, l);
        let (l, r) = justin_left(&abc, &w("abb"), &w("caa"));
        assert_eq!(l, r);
        let (l, r) = justin_right(&abc, &w("abb"), &w("caa"));
        assert_eq!(l, r);
        let (l, r) = justin_right(&ab, &w("a"), &w("b"));
        assert_eq!((l, r), (w("aba"), w("aba")));
    }

    #[test]
    fn length_formula_examples() {
        let ab = Alphabet::standard(2).unwrap();
        let abc = Alphabet::standard(3).unwrap();
        assert_eq!(pal_length(&ab, &w("aba")).unwrap(), 6);
        assert_eq!(pal_length(&abc, &w("abca")).unwrap(), 14);
        assert_eq!(pal(&w("abca")).len(), 14);
        assert_eq!(pal_length(&abc, &Word::empty()).unwrap(), 0);
    }

    #[test]
    fn standard_tree_examples() {
        let abc = Alphabet::standard(3).unwrap();
        let tree = standard_tree(&abc, 3);
        assert_eq!(tree[0].images, vec![w("a"), w("b"), w("c")]);
        let find = |s: &str| tree.iter().find(|n| n.word == w(s)).unwrap().images.clone();
        assert_eq!(find("a"), vec![w("a"), w("ab"), w("ac")]);
        assert_eq!(find("aab"), vec![w("aaba"), w("aab"), w("aabaac")]);
        assert_eq!(tree.len(), 1 + 3 + 9 + 27);
        assert_eq!(standard_tree(&abc, 0).len(), 1);
        let dot = standard_tree_dot(&abc, &standard_tree(&abc, 1));
        assert!(dot.contains("\"-\" -> \"a\""));
    }

    #[test]
    fn locating_factors() {
        let d = DirectiveWord::periodic(Word::empty(), w("abbcaabcc")).unwrap();
        let mut dp = DirectivePal::new(d);
        let occ = dp.locate(&w("acababab")).unwrap();
        assert_eq!((occ.n, occ.index), (7, 26));
        assert_eq!(dp.pal_prefix(occ.n).unwrap().len(), occ.pal_len);
        let occ = dp.locate(&w("ababacab")).unwrap();
        assert_eq!((occ.n, occ.index), (4, 0));
        assert!(matches!(dp.locate(&w("cc")), Err(Error::NotInLanguage(_))));
        let mut fib = DirectivePal::new(DirectiveWord::periodic(Word::empty(), w("ab")).unwrap());
        assert_eq!(fib.locate(&w("a")).unwrap(), PalOccurrence { n: 1, index: 0, pal_len: 1 });
        assert!(fib.locate(&w("bb")).is_err());
    }

    #[test]
    fn directive_prefixes() {
        let d = DirectiveWord::periodic(Word::empty(), w("abbcaabcc")).unwrap();
        assert_eq!(d.prefix(11).unwrap(), w("abbcaabccab"));
        assert!(d.is_nondegenerate());
        assert!(matches!(d.prefix(DEFAULT_PREFIX_CAP + 1), Err(Error::CapExceeded(_))));
        assert!(DirectiveWord::periodic(w("a"), Word::empty()).is_err());
        assert!(!DirectiveWord::periodic(w("b"), w("a")).unwrap().is_nondegenerate());
        let f = DirectiveWord::Finite(w("ab"));
        assert!(f.prefix(3).is_err());
    }
}

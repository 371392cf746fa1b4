//! Endomorphisms of the free monoid and the episturmian generators.
//!
//! Composition follows function notation: `s.compose(&r)` is `s ∘ r`, the
//! morphism `x ↦ s(r(x))`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// Square matrix of non-negative integers, row-major.
pub type Matrix = Vec<Vec<u64>>;

/// A bijection on letters, stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<Letter>);

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation((0..size as u8).collect())
    }

    pub fn from_images(images: Vec<Letter>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &l in &images {
            match seen.get_mut(l as usize) {
                Some(s) if !*s => *s = true,
                _ => {
                    return Err(Error::InvalidMorphism(format!(
                        "{images:?} is not a permutation"
                    )))
                }
            }
        }
        Ok(Permutation(images))
    }

    /// The cyclic permutation `(c0 c1 ... ck)` on an alphabet of `size` letters.
    pub fn cycle(size: usize, cycle: &[Letter]) -> Result<Self> {
        let mut images: Vec<Letter> = (0..size as u8).collect();
        for (i, &l) in cycle.iter().enumerate() {
            if l as usize >= size {
                return Err(Error::InvalidMorphism(format!("letter {l} out of range")));
            }
            images[l as usize] = cycle[(i + 1) % cycle.len()];
        }
        Permutation::from_images(images)
    }

    /// Parses cycle notation such as `(a c b)`, `(ab)(c)` or `id`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut perm = Permutation::identity(alphabet.len());
        if text.is_empty() || text == "id" {
            return Ok(perm);
        }
        let bad = |reason: &str| Error::Parse {
            rule: text.clone(),
            reason: reason.to_string(),
        };
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = inner.find(')').ok_or_else(|| bad("missing ')'"))?;
            let letters = inner[..close]
                .chars()
                .map(|c| alphabet.letter(c))
                .collect::<Result<Vec<_>>>()?;
            let cyc = Permutation::cycle(alphabet.len(), &letters)?;
            perm = perm.compose(&cyc);
            rest = &inner[close + 1..];
        }
        Ok(perm)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[Letter] {
        &self.0
    }

    pub fn apply(&self, l: Letter) -> Letter {
        self.0[l as usize]
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        w.iter().map(|&l| self.apply(l)).collect()
    }

    /// Letterwise action preserving spins.
    pub fn apply_spinned(&self, w: &SpinnedWord) -> SpinnedWord {
        SpinnedWord(
            w.0.iter()
                .map(|s| SpinnedLetter {
                    letter: self.apply(s.letter),
                    spin: s.spin,
                })
                .collect(),
        )
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&l| self.apply(l)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &l) in self.0.iter().enumerate() {
            inv[l as usize] = i as Letter;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &l)| i == l as usize)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Every permutation of `size` letters, in lexicographic order of image
    /// tables.
    pub fn all(size: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<Letter>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for l in 0..used.len() {
                if !used[l] {
                    used[l] = true;
                    prefix.push(l as Letter);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[l] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; size], &mut out);
        out
    }

    /// Cycle notation with fixed points omitted; the identity renders as `id`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut seen = vec![false; self.len()];
        let mut out = String::new();
        for start in 0..self.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut l = start;
            while !seen[l] {
                seen[l] = true;
                cyc.push(alphabet.symbol(l as Letter).to_string());
                l = self.0[l] as usize;
            }
            out.push_str(&format!("({})", cyc.join(" ")));
        }
        if out.is_empty() {
            "id".to_string()
        } else {
            out
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Plain,
    Barred,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinnedLetter {
    pub letter: Letter,
    pub spin: Spin,
}

/// A word over `A ∪ Ā`. Rendered with `~` before each barred letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinnedWord(Vec<SpinnedLetter>);

impl SpinnedWord {
    pub fn new(letters: Vec<SpinnedLetter>) -> Self {
        SpinnedWord(letters)
    }

    pub fn plain(w: &Word) -> Self {
        Self::with_spin(w, Spin::Plain)
    }

    pub fn barred(w: &Word) -> Self {
        Self::with_spin(w, Spin::Barred)
    }

    fn with_spin(w: &Word, spin: Spin) -> Self {
        SpinnedWord(w.iter().map(|&letter| SpinnedLetter { letter, spin }).collect())
    }

    pub fn letters(&self) -> &[SpinnedLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_plain(&self) -> bool {
        self.0.iter().all(|s| s.spin == Spin::Plain)
    }

    /// The underlying word with spins forgotten.
    pub fn base(&self) -> Word {
        self.0.iter().map(|s| s.letter).collect()
    }

    pub fn concat(&self, other: &SpinnedWord) -> SpinnedWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SpinnedWord(v)
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let mut out = Vec::new();
        let mut barred = false;
        for c in text.chars().filter(|c| !c.is_whitespace()) {
            if c == '~' {
                barred = true;
                continue;
            }
            if c == '-' || c == 'ε' {
                continue;
            }
            out.push(SpinnedLetter {
                letter: alphabet.letter(c)?,
                spin: if barred { Spin::Barred } else { Spin::Plain },
            });
            barred = false;
        }
        Ok(SpinnedWord(out))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_empty() {
            return "-".to_string();
        }
        self.0
            .iter()
            .map(|s| match s.spin {
                Spin::Plain => alphabet.symbol(s.letter).to_string(),
                Spin::Barred => format!("~{}", alphabet.symbol(s.letter)),
            })
            .collect()
    }
}

/// Which generator to try first when both a common first letter and a common
/// last letter are available during decomposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StripOrder {
    #[default]
    PlainFirst,
    BarredFirst,
}

/// `ψ_spinned ∘ perm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpiDecomposition {
    pub spinned: SpinnedWord,
    pub perm: Permutation,
}

impl EpiDecomposition {
    pub fn reconstruct(&self, alphabet: &Alphabet) -> Morphism {
        Morphism::psi_spinned(alphabet, &self.spinned)
            .compose(&Morphism::from_permutation(alphabet, &self.perm))
            .expect("same alphabet")
    }
}

/// A non-erasing endomorphism of `A*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} images for an alphabet of {} letters",
                images.len(),
                alphabet.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::InvalidMorphism(format!(
                    "image of {:?} is empty",
                    alphabet.symbol(i as Letter)
                )));
            }
            if !alphabet.contains_word(img) {
                return Err(Error::InvalidMorphism(format!(
                    "image of {:?} uses letters outside the alphabet",
                    alphabet.symbol(i as Letter)
                )));
            }
        }
        Ok(Morphism { alphabet, images })
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        Morphism {
            alphabet: alphabet.clone(),
            images: alphabet.letters().map(Word::letter).collect(),
        }
    }

    pub fn from_permutation(alphabet: &Alphabet, perm: &Permutation) -> Self {
        Morphism {
            alphabet: alphabet.clone(),
            images: alphabet.letters().map(|l| Word::letter(perm.apply(l))).collect(),
        }
    }

    /// The elementary morphism `ψ_a` (plain) or `ψ̄_a` (barred).
    pub fn psi(alphabet: &Alphabet, a: Letter, spin: Spin) -> Self {
        let images = alphabet
            .letters()
            .map(|b| match (b == a, spin) {
                (true, _) => Word::letter(a),
                (false, Spin::Plain) => Word::from(vec![a, b]),
                (false, Spin::Barred) => Word::from(vec![b, a]),
            })
            .collect();
        Morphism {
            alphabet: alphabet.clone(),
            images,
        }
    }

    /// `ψ_u` for a spinned word, composed left to right.
    pub fn psi_spinned(alphabet: &Alphabet, u: &SpinnedWord) -> Self {
        // Apply generators right to left to the letter images directly.
        let mut images: Vec<Word> = alphabet.letters().map(Word::letter).collect();
        for s in u.letters().iter().rev() {
            images = images
                .iter()
                .map(|img| apply_elementary(img, s.letter, s.spin))
                .collect();
        }
        Morphism {
            alphabet: alphabet.clone(),
            images,
        }
    }

    /// `ψ_u` for a word of plain letters.
    pub fn psi_word(alphabet: &Alphabet, u: &Word) -> Self {
        Self::psi_spinned(alphabet, &SpinnedWord::plain(u))
    }

    /// `ψ̄_u`, every letter barred.
    pub fn psi_bar_word(alphabet: &Alphabet, u: &Word) -> Self {
        Self::psi_spinned(alphabet, &SpinnedWord::barred(u))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a as usize]
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &l in w {
            out.extend_from_slice(&self.images[l as usize]);
        }
        Word::from(out)
    }

    /// Image of a word, truncated to at most `cap` letters.
    pub fn apply_truncated(&self, w: &[Letter], cap: usize) -> Word {
        let mut out = Vec::with_capacity(cap.min(w.len() * 2));
        for &l in w {
            if out.len() >= cap {
                break;
            }
            out.extend_from_slice(&self.images[l as usize]);
        }
        out.truncate(cap);
        Word::from(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                self.alphabet.symbols(),
                other.alphabet.symbols()
            )));
        }
        Ok(Morphism {
            alphabet: self.alphabet.clone(),
            images: other.images.iter().map(|img| self.apply(img)).collect(),
        })
    }

    pub fn power(&self, k: usize) -> Morphism {
        let mut p = Morphism::identity(&self.alphabet);
        for _ in 0..k {
            p = self.compose(&p).expect("same alphabet");
        }
        p
    }

    /// `‖σ‖ = Σ |σ(a)|`.
    pub fn norm(&self) -> usize {
        self.images.iter().map(|w| w.len()).sum()
    }

    pub fn is_permutation(&self) -> bool {
        self.as_permutation().is_some()
    }

    pub fn as_permutation(&self) -> Option<Permutation> {
        if self.images.iter().any(|w| w.len() != 1) {
            return None;
        }
        Permutation::from_images(self.images.iter().map(|w| w[0]).collect()).ok()
    }

    /// `M[i][j]` counts the letter `i` in `σ(j)`, so that
    /// `M(σ∘ρ) = M(σ)·M(ρ)`.
    pub fn incidence_matrix(&self) -> Matrix {
        let n = self.alphabet.len();
        let mut m = vec![vec![0u64; n]; n];
        for (j, img) in self.images.iter().enumerate() {
            for &i in img.iter() {
                m[i as usize][j] += 1;
            }
        }
        m
    }

    /// Some power of the incidence matrix is entrywise positive. Powers up to
    /// the Wielandt bound `(|A|-1)² + 1` are checked.
    pub fn is_primitive(&self) -> bool {
        let n = self.alphabet.len();
        let base: Vec<Vec<bool>> = self
            .incidence_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(|x| x > 0).collect())
            .collect();
        let mut p = base.clone();
        for _ in 0..(n - 1) * (n - 1) + 1 {
            if p.iter().all(|row| row.iter().all(|&x| x)) {
                return true;
            }
            p = bool_product(&p, &base);
        }
        false
    }

    /// Prefix of length `len` of the fixed point starting with `a`; requires
    /// `σ(a)` to start with `a` and be longer than one letter.
    pub fn fixed_point_prefix(&self, a: Letter, len: usize) -> Result<Word> {
        let img = self.image(a);
        if img.first() != Some(a) || img.len() < 2 {
            return Err(Error::Precondition(format!(
                "image of letter {a} does not start with it and grow"
            )));
        }
        let mut x = Word::letter(a);
        while x.len() < len {
            x = self.apply_truncated(&x, len);
        }
        Ok(x.prefix(len))
    }

    /// Prefix of a periodic point: finds the least `p ≤ 2|A|` and a letter
    /// `a` such that `σ^p(a)` starts with `a` and is longer than `a`, then
    /// iterates `σ^p` from `a`.
    pub fn periodic_point_prefix(&self, len: usize) -> Result<Word> {
        if !self.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let (a, p) = self.periodic_seed()?;
        let mut x = Word::letter(a);
        while x.len() < len {
            for _ in 0..p {
                x = self.apply_truncated(&x, len);
            }
        }
        Ok(x.prefix(len))
    }

    /// `(a, p)` with `σ^p(a) ∈ aA⁺`, `p` minimal.
    pub fn periodic_seed(&self) -> Result<(Letter, usize)> {
        let n = self.alphabet.len();
        let bound = 2 * n;
        let first: Vec<Letter> = self.images.iter().map(|w| w[0]).collect();
        // lengths[b] = |σ^p(b)|, saturating.
        let mut lengths: Vec<u64> = vec![1; n];
        let mut heads: Vec<Letter> = self.alphabet.letters().collect();
        for p in 1..=bound {
            lengths = self
                .images
                .iter()
                .map(|img| {
                    img.iter()
                        .fold(0u64, |acc, &c| acc.saturating_add(lengths[c as usize]))
                })
                .collect();
            heads = heads.iter().map(|&h| first[h as usize]).collect();
            // heads[a] = first letter of σ^p(a)
            for a in self.alphabet.letters() {
                if heads[a as usize] == a && lengths[a as usize] > 1 {
                    return Ok((a, p));
                }
            }
        }
        Err(Error::NoPeriodicSeed { bound })
    }

    /// `w⁻¹σw`: the morphism `ρ` with `σ(a)w = wρ(a)` for every letter, if it
    /// exists.
    pub fn conjugate_right(&self, w: &Word) -> Option<Morphism> {
        let images = self
            .images
            .iter()
            .map(|img| img.concat(w).strip_prefix(w))
            .collect::<Option<Vec<_>>>()?;
        Some(Morphism {
            alphabet: self.alphabet.clone(),
            images,
        })
    }

    /// `wσw⁻¹`: the morphism `ρ` with `wσ(a) = ρ(a)w` for every letter, if it
    /// exists.
    pub fn conjugate_left(&self, w: &Word) -> Option<Morphism> {
        let images = self
            .images
            .iter()
            .map(|img| w.concat(img).strip_suffix(w))
            .collect::<Option<Vec<_>>>()?;
        Some(Morphism {
            alphabet: self.alphabet.clone(),
            images,
        })
    }

    /// Writes `σ = ψ_v ∘ π` with `v` over `A ∪ Ā` by repeatedly peeling off a
    /// generator: `ψ_a` when every image starts with `a`, `ψ̄_a` when every
    /// image ends with `a`.
    pub fn decompose(&self) -> Result<EpiDecomposition> {
        self.decompose_with(StripOrder::PlainFirst)
    }

    pub fn decompose_with(&self, order: StripOrder) -> Result<EpiDecomposition> {
        let mut images = self.images.clone();
        let mut spinned = Vec::new();
        let mut step = 0;
        loop {
            if let Some(perm) = permutation_of(&images) {
                return Ok(EpiDecomposition {
                    spinned: SpinnedWord(spinned),
                    perm,
                });
            }
            let first = common_letter(&images, |w| w.first());
            let last = common_letter(&images, |w| w.last());
            let candidates = match order {
                StripOrder::PlainFirst => [(Spin::Plain, first), (Spin::Barred, last)],
                StripOrder::BarredFirst => [(Spin::Barred, last), (Spin::Plain, first)],
            };
            let norm: usize = images.iter().map(|w| w.len()).sum();
            let stripped = candidates.iter().find_map(|&(spin, letter)| {
                let a = letter?;
                let next = images
                    .iter()
                    .map(|w| unapply_elementary(w, a, spin))
                    .collect::<Option<Vec<_>>>()?;
                let next_norm: usize = next.iter().map(|w| w.len()).sum();
                (next_norm < norm).then_some((SpinnedLetter { letter: a, spin }, next))
            });
            match stripped {
                Some((s, next)) => {
                    spinned.push(s);
                    images = next;
                    step += 1;
                }
                None => {
                    let reason = match (first, last) {
                        (None, None) => "no common first letter and no common last letter",
                        _ => "images are not decodable by the candidate generator",
                    };
                    return Err(Error::NotEpisturmian {
                        step,
                        reason: reason.to_string(),
                    });
                }
            }
        }
    }

    /// Decomposition using plain generators only. Succeeds exactly on
    /// standard morphisms `ψ_u ∘ π`, `u ∈ A*`.
    pub fn decompose_standard(&self) -> Option<(Word, Permutation)> {
        let mut images = self.images.clone();
        let mut u = Vec::new();
        loop {
            if let Some(perm) = permutation_of(&images) {
                return Some((Word::from(u), perm));
            }
            let a = common_letter(&images, |w| w.first())?;
            let next = images
                .iter()
                .map(|w| unapply_elementary(w, a, Spin::Plain))
                .collect::<Option<Vec<_>>>()?;
            if next.iter().map(|w| w.len()).sum::<usize>() >= images.iter().map(|w| w.len()).sum() {
                return None;
            }
            u.push(a);
            images = next;
        }
    }

    pub fn is_episturmian(&self) -> bool {
        self.decompose().is_ok()
    }

    pub fn is_standard(&self) -> bool {
        self.decompose_standard().is_some()
    }

    /// Renders in the text format `a->ab,b->ac,c->a`.
    pub fn render(&self) -> String {
        self.alphabet
            .letters()
            .map(|l| {
                format!(
                    "{}->{}",
                    self.alphabet.symbol(l),
                    self.alphabet.render(self.image(l))
                )
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn to_json(&self) -> MorphismJson {
        MorphismJson {
            alphabet: self.alphabet.symbols().iter().map(|c| c.to_string()).collect(),
            rules: self
                .alphabet
                .letters()
                .map(|l| {
                    (
                        self.alphabet.symbol(l).to_string(),
                        self.alphabet.render(self.image(l)),
                    )
                })
                .collect(),
        }
    }

    pub fn from_json(repr: &MorphismJson) -> Result<Self> {
        let symbols = repr
            .alphabet
            .iter()
            .map(|s| {
                let mut it = s.chars();
                match (it.next(), it.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(Error::InvalidAlphabet(format!(
                        "symbol {s:?} is not a single character"
                    ))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let alphabet = Alphabet::new(symbols)?;
        if repr.rules.len() != alphabet.len() {
            return Err(Error::InvalidMorphism(
                "rules must cover the alphabet exactly".to_string(),
            ));
        }
        let images = alphabet
            .symbols()
            .iter()
            .map(|c| {
                let rhs = repr.rules.get(&c.to_string()).ok_or_else(|| Error::Parse {
                    rule: c.to_string(),
                    reason: "missing rule".to_string(),
                })?;
                alphabet.parse_word(rhs)
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(alphabet, images)
    }
}

/// JSON form `{"alphabet":[...],"rules":{"a":"ab",...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub alphabet: Vec<String>,
    pub rules: BTreeMap<String, String>,
}

/// Text format: comma-separated rules `x->word`, whitespace ignored. The
/// alphabet is the sorted set of left-hand sides.
impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rules: Vec<(char, &str)> = Vec::new();
        for rule in compact.split(',') {
            let bad = |reason: &str| Error::Parse {
                rule: rule.to_string(),
                reason: reason.to_string(),
            };
            let (lhs, rhs) = rule.split_once("->").ok_or_else(|| bad("expected 'x->word'"))?;
            let mut chars = lhs.chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(bad("left-hand side must be a single symbol")),
            };
            if rhs.is_empty() {
                return Err(bad("empty image"));
            }
            if rules.iter().any(|(c, _)| *c == letter) {
                return Err(bad("duplicate rule"));
            }
            rules.push((letter, rhs));
        }
        rules.sort_by_key(|(c, _)| *c);
        let alphabet = Alphabet::new(rules.iter().map(|(c, _)| *c)).map_err(|e| Error::Parse {
            rule: compact.clone(),
            reason: e.to_string(),
        })?;
        let images = rules
            .iter()
            .map(|(c, rhs)| {
                alphabet.parse_word(rhs).map_err(|e| Error::Parse {
                    rule: format!("{c}->{rhs}"),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Morphism::new(alphabet, images)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn matrix_product(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for j in 0..m {
            out[i][j] = (0..k).map(|t| a[i][t] * b[t][j]).sum();
        }
    }
    out
}

fn bool_product(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|t| a[i][t] && b[t][j])).collect())
        .collect()
}

fn apply_elementary(w: &[Letter], a: Letter, spin: Spin) -> Word {
    let mut out = Vec::with_capacity(w.len() * 2);
    for &b in w {
        if b == a {
            out.push(a);
        } else if spin == Spin::Plain {
            out.extend_from_slice(&[a, b]);
        } else {
            out.extend_from_slice(&[b, a]);
        }
    }
    Word::from(out)
}

/// Inverse of `ψ_a` (resp. `ψ̄_a`) on a single word, by greedy decoding with
/// the code `{a} ∪ {ab : b ≠ a}` (resp. `{a} ∪ {ba}`) and one symbol of
/// lookahead.
fn unapply_elementary(w: &[Letter], a: Letter, spin: Spin) -> Option<Word> {
    let mut out = Vec::with_capacity(w.len());
    match spin {
        Spin::Plain => {
            let mut i = 0;
            while i < w.len() {
                if w[i] != a {
                    return None;
                }
                match w.get(i + 1) {
                    Some(&b) if b != a => {
                        out.push(b);
                        i += 2;
                    }
                    _ => {
                        out.push(a);
                        i += 1;
                    }
                }
            }
        }
        Spin::Barred => {
            let mut i = w.len();
            while i > 0 {
                if w[i - 1] != a {
                    return None;
                }
                match i.checked_sub(2).map(|j| w[j]) {
                    Some(b) if b != a => {
                        out.push(b);
                        i -= 2;
                    }
                    _ => {
                        out.push(a);
                        i -= 1;
                    }
                }
            }
            out.reverse();
        }
    }
    Some(Word::from(out))
}

fn permutation_of(images: &[Word]) -> Option<Permutation> {
    if images.iter().any(|w| w.len() != 1) {
        return None;
    }
    Permutation::from_images(images.iter().map(|w| w[0]).collect()).ok()
}

fn common_letter(images: &[Word], pick: impl Fn(&Word) -> Option<Letter>) -> Option<Letter> {
    let c = pick(&images[0])?;
    images.iter().all(|w| pick(w) == Some(c)).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Morphism {
        s.parse().unwrap()
    }

    fn abc() -> Alphabet {
        Alphabet::standard(3).unwrap()
    }

    fn ab() -> Alphabet {
        Alphabet::standard(2).unwrap()
    }

    #[test]
    fn elementary_generators() {
        assert_eq!(Morphism::psi(&abc(), 0, Spin::Plain), m("a->a,b->ab,c->ac"));
        assert_eq!(Morphism::psi(&ab(), 0, Spin::Barred), m("a->a,b->ba"));
    }

    #[test]
    fn composition_examples() {
        let psi_a = Morphism::psi(&ab(), 0, Spin::Plain);
        let psi_b = Morphism::psi(&ab(), 1, Spin::Plain);
        // ψ_a(ψ_b(a)) = ψ_a(ba) = aba, ψ_a(ψ_b(b)) = ψ_a(b) = ab
        assert_eq!(psi_a.compose(&psi_b).unwrap(), m("a->aba,b->ab"));
        let fib = m("a->ab,b->a");
        assert_eq!(fib.compose(&Morphism::identity(&ab())).unwrap(), fib);
        assert_eq!(fib.power(2), psi_a.compose(&psi_b).unwrap());
    }

    #[test]
    fn compose_rejects_alphabet_mismatch() {
        let e = m("a->ab,b->a").compose(&m("a->ab,b->ac,c->a"));
        assert!(matches!(e, Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn spinned_images() {
        let u = SpinnedWord::plain(&"aba".parse().unwrap());
        assert_eq!(Morphism::psi_spinned(&ab(), &u), m("a->aba,b->abaab"));
        assert_eq!(
            Morphism::psi_spinned(&ab(), &SpinnedWord::default()),
            Morphism::identity(&ab())
        );
        let abca = Morphism::psi_word(&abc(), &"abca".parse().unwrap());
        assert_eq!(abca.image(0).len(), 7);
        assert_eq!(abca.norm(), 31);
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let s = m(" a -> ab , b->ac, c->a ");
        assert_eq!(s.render(), "a->ab,b->ac,c->a");
        assert!(matches!("a->ab,b".parse::<Morphism>(), Err(Error::Parse { rule, .. }) if rule == "b"));
        assert!(matches!("a->,b->a".parse::<Morphism>(), Err(Error::Parse { .. })));
        assert!(matches!("a->ab,b->ad".parse::<Morphism>(), Err(Error::Parse { rule, .. }) if rule == "b->ad"));
        assert!(matches!("a->ab,a->b".parse::<Morphism>(), Err(Error::Parse { .. })));
        let json = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(json, r#"{"alphabet":["a","b","c"],"rules":{"a":"ab","b":"ac","c":"a"}}"#);
        let back: MorphismJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Morphism::from_json(&back).unwrap(), s);
    }

    #[test]
    fn primitivity() {
        assert!(m("a->ab,b->ac,c->a").is_primitive());
        let contrex = Morphism::psi_bar_word(&abc(), &"ab".parse().unwrap());
        assert!(!contrex.is_primitive());
        let perm = Morphism::from_permutation(&abc(), &Permutation::cycle(3, &[0, 1, 2]).unwrap());
        assert!(perm.is_permutation());
        assert!(!perm.is_primitive());
        assert!(!Morphism::identity(&ab()).is_primitive());
    }

    #[test]
    fn incidence_matrix_convention() {
        let s = m("a->ab,b->ac,c->a");
        assert_eq!(s.incidence_matrix(), vec![vec![1, 1, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn periodic_points() {
        assert_eq!(
            m("a->ab,b->a").periodic_point_prefix(8).unwrap(),
            "abaababa".parse().unwrap()
        );
        assert_eq!(
            m("a->ab,b->ac,c->a").periodic_point_prefix(7).unwrap(),
            "abacaba".parse().unwrap()
        );
        let perm = Morphism::from_permutation(&ab(), &Permutation::cycle(2, &[0, 1]).unwrap());
        assert_eq!(perm.periodic_point_prefix(5), Err(Error::NotPrimitive));
    }

    #[test]
    fn periodic_point_needs_a_power() {
        // first letters cycle a -> b -> a
        let s = m("a->ba,b->ab");
        let (a, p) = s.periodic_seed().unwrap();
        assert_eq!((a, p), (0, 2));
        let x = s.periodic_point_prefix(16).unwrap();
        assert_eq!(s.power(2).fixed_point_prefix(0, 16).unwrap(), x);
    }

    #[test]
    fn conjugation() {
        let row0 = m("a->ababa,b->ababac,c->ab");
        assert_eq!(
            row0.conjugate_right(&"a".parse().unwrap()).unwrap(),
            m("a->babaa,b->babaca,c->ba")
        );
        assert_eq!(row0.conjugate_right(&Word::empty()).unwrap(), row0);
        assert_eq!(row0.conjugate_right(&"b".parse().unwrap()), None);
        let row1 = m("a->babaa,b->babaca,c->ba");
        assert_eq!(row1.conjugate_left(&"a".parse().unwrap()).unwrap(), row0);
    }

    #[test]
    fn decomposition_examples() {
        let s = m("a->ababa,b->ababac,c->ab");
        let d = s.decompose().unwrap();
        assert!(d.spinned.is_plain());
        assert_eq!(d.reconstruct(s.alphabet()), s);

        let id = Morphism::identity(&ab());
        let d = id.decompose().unwrap();
        assert!(d.spinned.is_empty());
        assert!(d.perm.is_identity());

        assert!(matches!(
            m("a->ab,b->ba").decompose(),
            Err(Error::NotEpisturmian { step: 0, .. })
        ));
        assert!(m("a->a,b->a").decompose().is_err());
        assert!(m("a->aa,b->aa").decompose().is_err());
    }

    #[test]
    fn standard_decomposition() {
        let s = m("a->ababa,b->ababac,c->ab");
        let (u, perm) = s.decompose_standard().unwrap();
        assert_eq!(u, "abb".parse().unwrap());
        assert_eq!(perm, Permutation::cycle(3, &[1, 2]).unwrap());
        assert!(m("a->babaa,b->babaca,c->ba").decompose_standard().is_none());
    }

    #[test]
    fn permutation_notation() {
        let alpha = abc();
        let p = Permutation::parse(&alpha, "(a c b)").unwrap();
        assert_eq!(p.images(), &[2, 0, 1]);
        assert_eq!(p.order(), 3);
        assert_eq!(p.render(&alpha), "(a c b)");
        assert_eq!(Permutation::parse(&alpha, "id").unwrap(), Permutation::identity(3));
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(Permutation::all(3).len(), 6);
    }

    #[test]
    fn spinned_word_text() {
        let alpha = ab();
        let u = SpinnedWord::parse(&alpha, "a~bb").unwrap();
        assert_eq!(u.len(), 3);
        assert_eq!(u.letters()[1].spin, Spin::Barred);
        assert_eq!(u.render(&alpha), "a~bb");
    }
}

//! Return words, by scanning a long periodic point and in closed form from
//! the directive word.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::{directive_word, Shift};
use crate::morphism::Morphism;
use crate::palindromic::{pal, pal_inverse, DirectivePal};
use crate::word::{gcp, gcs, Alphabet, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `r` with `ru ∈ uA⁺`, `u` occurring only as prefix and suffix of `ru`.
    Left,
    /// `r` with `ur ∈ A⁺u`, likewise.
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    ClosedForm,
}

pub type ReturnSet = BTreeSet<Word>;

/// Initial and maximal lengths of the scanned prefix.
pub const ORACLE_START: usize = 1 << 10;
pub const ORACLE_CAP: usize = 1 << 24;

fn gaps(x: &[Letter], u: &[Letter], side: Side) -> ReturnSet {
    let positions: Vec<usize> = x
        .windows(u.len())
        .enumerate()
        .filter(|(_, w)| *w == u)
        .map(|(i, _)| i)
        .collect();
    positions
        .windows(2)
        .map(|p| match side {
            Side::Left => Word::from(&x[p[0]..p[1]]),
            Side::Right => Word::from(&x[p[0] + u.len()..p[1] + u.len()]),
        })
        .collect()
}

/// A length `m` such that every factor of length `m` of the shift contains
/// every factor of length `n`. Not necessarily the least one.
pub fn recurrence_bound(shift: &Shift, n: usize) -> Result<usize> {
    let target = shift.window(n)?.factors.len();
    let mut m = (2 * n).max(2);
    loop {
        let window = shift.window(m)?;
        let covers = window.factors.iter().all(|w| {
            let seen: HashSet<&[Letter]> = w.windows(n).collect();
            seen.len() == target
        });
        if covers {
            return Ok(m);
        }
        m *= 2;
        if m > ORACLE_CAP {
            return Err(Error::CapExceeded(format!(
                "no recurrence bound for length {n} below {ORACLE_CAP}"
            )));
        }
    }
}

/// Number of distinct factors of length `len` of `x`, by rolling hash.
/// A collision can only lower the count.
fn distinct_factors(x: &[Letter], len: usize) -> usize {
    const P: u128 = (1 << 61) - 1;
    const BASE: u128 = 1_000_003;
    if len == 0 || len > x.len() {
        return usize::from(len == 0);
    }
    let top = (0..len - 1).fold(1u128, |acc, _| acc * BASE % P);
    let mut h = x[..len].iter().fold(0u128, |acc, &a| (acc * BASE + a as u128 + 1) % P);
    let mut seen = HashSet::from([h as u64]);
    for i in len..x.len() {
        h = (h + P - (x[i - len] as u128 + 1) * top % P) % P;
        h = (h * BASE + x[i] as u128 + 1) % P;
        seen.insert(h as u64);
    }
    seen.len()
}

/// A prefix of a periodic point of `σ` long enough to contain every complete
/// return word to every factor of length at most `n`. If every factor of
/// length `m` contains all factors of length `n`, two consecutive
/// occurrences of such a factor start at most `m + 1 - n` apart, so every
/// complete return has length at most `m + 1`. The prefix doubles until it
/// contains every factor of that length.
fn covering_prefix(sigma: &Morphism, shift: &Shift, n: usize) -> Result<Word> {
    let m = recurrence_bound(shift, n)? + 1;
    let target = shift.window(m)?.factors.len();
    let mut len = ORACLE_START.max(4 * m);
    loop {
        let x = sigma.periodic_point_prefix(len)?;
        if distinct_factors(&x, m) == target {
            return Ok(x);
        }
        len *= 2;
        if len > ORACLE_CAP {
            return Err(Error::CapExceeded(format!(
                "no prefix of {ORACLE_CAP} letters of a periodic point of {sigma} holds all factors of length {m}"
            )));
        }
    }
}

/// Collects the words between consecutive occurrences of `u` in a prefix of
/// a periodic point of `σ` that provably holds every complete return word.
/// Uses only the language of `σ`.
pub fn returns_oracle(sigma: &Morphism, u: &Word, side: Side) -> Result<ReturnSet> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let shift = Shift::new(sigma)?;
    if !shift.contains(u)? {
        return Err(Error::NotInLanguage(sigma.alphabet().render(u)));
    }
    let x = covering_prefix(sigma, &shift, u.len())?;
    Ok(gaps(&x, u, side))
}

/// Left and right return sets of one factor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReturnPair {
    pub left: ReturnSet,
    pub right: ReturnSet,
}

/// [`returns_oracle`] for every factor of length `1..=max_len` at once.
pub fn returns_oracle_all(sigma: &Morphism, max_len: usize) -> Result<BTreeMap<Word, ReturnPair>> {
    let shift = Shift::new(sigma)?;
    let x = covering_prefix(sigma, &shift, max_len.max(1))?;
    Ok(scan_all(&x, max_len))
}

fn scan_all(x: &[Letter], max_len: usize) -> BTreeMap<Word, ReturnPair> {
    let mut out = BTreeMap::new();
    for len in 1..=max_len.min(x.len()) {
        let mut last: HashMap<&[Letter], usize> = HashMap::new();
        let mut sets: HashMap<&[Letter], ReturnPair> = HashMap::new();
        for (i, w) in x.windows(len).enumerate() {
            let entry = sets.entry(w).or_default();
            if let Some(p) = last.insert(w, i) {
                entry.left.insert(Word::from(&x[p..i]));
                entry.right.insert(Word::from(&x[p + len..i + len]));
            }
        }
        out.extend(sets.into_iter().map(|(w, p)| (Word::from(w), p)));
    }
    out
}

/// `ψ_u^{(i)}`, the right conjugate of `ψ_u` by the prefix of length `i` of
/// `Pal(u)` (`side = Right`), or `ψ̄_u^{(i)}`, the left conjugate of `ψ̄_u`
/// by its suffix of length `i` (`side = Left`).
pub fn conjugate_psi(alphabet: &Alphabet, u: &Word, i: usize, side: Side) -> Result<Morphism> {
    let p = pal(u);
    if i > p.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: p.len(),
        });
    }
    let conj = match side {
        Side::Right => Morphism::psi_word(alphabet, u).conjugate_right(&p.prefix(i)),
        Side::Left => Morphism::psi_bar_word(alphabet, u).conjugate_left(&p.suffix(i)),
    };
    conj.ok_or_else(|| Error::TheoryViolation(format!("psi_{u} has no conjugate of index {i}")))
}

/// A factor with its return sets and the `(d, ℓ, ℓ′)` describing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnComputation {
    pub u: Word,
    pub left: ReturnSet,
    pub right: ReturnSet,
    pub d: Word,
    pub ell: usize,
    pub ell_prime: usize,
    pub method: Method,
}

impl ReturnComputation {
    /// `ℓ + |u| + ℓ′ = |Pal(d)|`, `left = u·right·u⁻¹`, and both sets have
    /// `alphabet_size` elements.
    pub fn verify(&self, alphabet_size: usize) -> Result<()> {
        let fail = |what: String| Err(Error::TheoryViolation(format!("returns of {}: {what}", self.u)));
        if self.ell + self.u.len() + self.ell_prime != pal(&self.d).len() {
            return fail("ℓ + |u| + ℓ′ differs from |Pal(d)|".to_string());
        }
        if left_from_right(&self.u, &self.right).as_ref() != Some(&self.left) {
            return fail("left and right return sets are not conjugate by u".to_string());
        }
        for (name, set) in [("left", &self.left), ("right", &self.right)] {
            if set.len() != alphabet_size {
                return fail(format!("{} {name} returns, expected {alphabet_size}", set.len()));
            }
        }
        Ok(())
    }
}

/// `u·R·u⁻¹`, if every element is defined.
pub fn left_from_right(u: &Word, right: &ReturnSet) -> Option<ReturnSet> {
    right.iter().map(|r| u.concat(r).strip_suffix(u)).collect()
}

/// `(d, ℓ, ℓ′)` from two distinct return words of `u` on the given side.
/// `gcs(rs, sr)·gcp(rs, sr) = Pal(d)` and `u` occurs in it at index
/// `|gcs|` (left returns) or `|Pal(d)| - |gcp| - |u|` (right returns).
pub fn dll_from_pair(r: &Word, s: &Word, u: &Word, side: Side) -> Result<(Word, usize, usize)> {
    if r == s {
        return Err(Error::Precondition("return words must be distinct".to_string()));
    }
    let rs = r.concat(s);
    let sr = s.concat(r);
    let x = gcs(&rs, &sr);
    let y = gcp(&rs, &sr);
    let p = x.concat(&y);
    let d = pal_inverse(&p)?;
    let rest = p.len().checked_sub(u.len()).ok_or_else(|| {
        Error::Precondition(format!("{u} is longer than the bispecial factor {p}"))
    })?;
    let (ell, ell_prime) = match side {
        Side::Left => (Some(x.len()), rest.checked_sub(x.len())),
        Side::Right => (rest.checked_sub(y.len()), Some(y.len())),
    };
    let (Some(ell), Some(ell_prime)) = (ell, ell_prime) else {
        return Err(Error::Precondition(format!(
            "{u} does not fit in the bispecial factor {p}"
        )));
    };
    Ok((d, ell, ell_prime))
}

/// Closed-form return sets for one shift: `ψ_{d[0,n)}^{(ℓ)}(A)` on the left
/// and `ψ̄_{d[0,n)}^{(ℓ′)}(A)` on the right, with `n` least such that the
/// factor occurs in `Pal(d[0,n))`, at index `ℓ`.
#[derive(Clone, Debug)]
pub struct ReturnEngine {
    alphabet: Alphabet,
    pal: DirectivePal,
}

impl ReturnEngine {
    pub fn new(sigma: &Morphism) -> Result<Self> {
        Ok(ReturnEngine {
            alphabet: sigma.alphabet().clone(),
            pal: DirectivePal::new(directive_word(sigma)?),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// `(d[0,n), ℓ, ℓ′)` of a factor.
    pub fn dll(&mut self, u: &Word) -> Result<(Word, usize, usize)> {
        let occ = self.pal.locate(u)?;
        let d = self.pal.directive().prefix(occ.n)?;
        Ok((d, occ.index, occ.pal_len - occ.index - u.len()))
    }

    pub fn returns(&mut self, u: &Word) -> Result<ReturnComputation> {
        let (d, ell, ell_prime) = self.dll(u)?;
        let image = |m: Morphism| -> ReturnSet { m.images().iter().cloned().collect() };
        let left = image(conjugate_psi(&self.alphabet, &d, ell, Side::Right)?);
        let right = image(conjugate_psi(&self.alphabet, &d, ell_prime, Side::Left)?);
        Ok(ReturnComputation {
            u: u.clone(),
            left,
            right,
            d,
            ell,
            ell_prime,
            method: Method::ClosedForm,
        })
    }

    pub fn returns_side(&mut self, u: &Word, side: Side) -> Result<ReturnSet> {
        let r = self.returns(u)?;
        Ok(match side {
            Side::Left => r.left,
            Side::Right => r.right,
        })
    }

    /// Whether `u` is a factor of the shift.
    pub fn contains(&mut self, u: &Word) -> Result<bool> {
        if u.is_empty() {
            return Ok(true);
        }
        match self.pal.locate(u) {
            Ok(_) => Ok(true),
            Err(Error::NotInLanguage(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

pub fn returns_closed_form(sigma: &Morphism, u: &Word) -> Result<ReturnComputation> {
    ReturnEngine::new(sigma)?.returns(u)
}

/// Oracle return sets of `u` with `(d, ℓ, ℓ′)` recovered from a pair of
/// left returns.
pub fn returns_by_oracle(sigma: &Morphism, u: &Word) -> Result<ReturnComputation> {
    let left = returns_oracle(sigma, u, Side::Left)?;
    let right = returns_oracle(sigma, u, Side::Right)?;
    let mut it = left.iter();
    let (Some(r), Some(s)) = (it.next(), it.next()) else {
        return Err(Error::TheoryViolation(format!(
            "{} has fewer than two return words",
            sigma.alphabet().render(u)
        )));
    };
    let (d, ell, ell_prime) = dll_from_pair(r, s, u, Side::Left)?;
    Ok(ReturnComputation {
        u: u.clone(),
        left,
        right,
        d,
        ell,
        ell_prime,
        method: Method::Oracle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::Spin;

    fn m(s: &str) -> Morphism {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn set(words: &[&str]) -> ReturnSet {
        words.iter().map(|s| w(s)).collect()
    }

    const FIB: &str = "a->ab,b->a";
    const DL: &str = "a->ababac,b->ababa,c->ab";
    const DL_RETURNS: [&str; 3] = [
        "acabababacababaababacababaabab",
        "acabababacababaababacababaababacababaabab",
        "acabababacababaababacababaababacababacababaababacababaabab",
    ];

    #[test]
    fn oracle_examples() {
        let fib = m(FIB);
        assert_eq!(returns_oracle(&fib, &w("a"), Side::Left).unwrap(), set(&["a", "ab"]));
        assert_eq!(returns_oracle(&fib, &w("ab"), Side::Left).unwrap(), set(&["ab", "aba"]));
        assert_eq!(
            returns_oracle(&m(DL), &w("acababab"), Side::Left).unwrap(),
            set(&DL_RETURNS)
        );
        assert!(matches!(
            returns_oracle(&fib, &w("bb"), Side::Left),
            Err(Error::NotInLanguage(_))
        ));
    }

    #[test]
    fn conjugates_of_psi() {
        let abc = Alphabet::standard(3).unwrap();
        let u = w("abb");
        let m_ = pal(&u).len();
        assert_eq!(conjugate_psi(&abc, &u, 0, Side::Right).unwrap(), Morphism::psi_word(&abc, &u));
        assert_eq!(
            conjugate_psi(&abc, &u, m_, Side::Right).unwrap(),
            Morphism::psi_bar_word(&abc, &u)
        );
        for i in 0..=m_ {
            assert_eq!(
                conjugate_psi(&abc, &u, i, Side::Right).unwrap(),
                conjugate_psi(&abc, &u, m_ - i, Side::Left).unwrap()
            );
        }
        assert!(conjugate_psi(&abc, &u, m_ + 1, Side::Right).is_err());
        let r = conjugate_psi(&abc, &w("abbcaab"), 26, Side::Right).unwrap();
        let images: ReturnSet = r.images().iter().cloned().collect();
        assert_eq!(images, set(&DL_RETURNS));
    }

    #[test]
    fn closed_form_examples() {
        let r = returns_closed_form(&m(DL), &w("acababab")).unwrap();
        assert_eq!((r.d.clone(), r.ell), (w("abbcaab"), 26));
        assert_eq!(r.left, set(&DL_RETURNS));
        r.verify(3).unwrap();

        let r = returns_closed_form(&m(FIB), &w("a")).unwrap();
        assert_eq!((r.d.clone(), r.ell, r.ell_prime), (w("a"), 0, 0));
        assert_eq!(r.left, set(&["a", "ab"]));

        // a bispecial factor Pal(d[0,k)) has ℓ = 0 and returns ψ_{d[0,k)}(A)
        let mut engine = ReturnEngine::new(&m(DL)).unwrap();
        let r = engine.returns(&w("ababa")).unwrap();
        assert_eq!((r.d.clone(), r.ell), (w("abb"), 0));
        let psi = Morphism::psi_word(engine.alphabet(), &w("abb"));
        assert_eq!(r.left, psi.images().iter().cloned().collect());
    }

    #[test]
    fn pair_recovery() {
        let u = w("acababab");
        let ws: Vec<Word> = DL_RETURNS.iter().map(|s| w(s)).collect();
        let p = pal(&w("abbcaab")).len();
        for (i, j) in [(0, 1), (0, 2), (1, 2), (2, 0)] {
            assert_eq!(
                dll_from_pair(&ws[i], &ws[j], &u, Side::Left).unwrap(),
                (w("abbcaab"), 26, p - 26 - 8)
            );
        }
        assert_eq!(
            dll_from_pair(&w("a"), &w("ab"), &w("a"), Side::Left).unwrap(),
            (w("a"), 0, 0)
        );
        assert!(dll_from_pair(&w("a"), &w("a"), &w("a"), Side::Left).is_err());
        let right: Vec<Word> = returns_closed_form(&m(DL), &u).unwrap().right.into_iter().collect();
        assert_eq!(
            dll_from_pair(&right[0], &right[1], &u, Side::Right).unwrap(),
            (w("abbcaab"), 26, p - 26 - 8)
        );
    }

    #[test]
    fn oracle_matches_closed_form() {
        let abc = Alphabet::standard(3).unwrap();
        let sigmas = [
            m(FIB),
            m(DL),
            m("a->ab,b->ac,c->a"),
            Morphism::psi(&Alphabet::standard(2).unwrap(), 0, Spin::Barred)
                .compose(&m("a->b,b->a"))
                .unwrap(),
            Morphism::psi_word(&abc, &w("ab")).compose(&m("a->b,b->c,c->a")).unwrap(),
        ];
        for sigma in &sigmas {
            let table = returns_oracle_all(sigma, 8).unwrap();
            let mut engine = ReturnEngine::new(sigma).unwrap();
            for (u, pair) in &table {
                let r = engine.returns(u).unwrap();
                assert_eq!((&r.left, &r.right), (&pair.left, &pair.right), "{sigma} {u}");
                r.verify(sigma.alphabet().len()).unwrap();
                let o = returns_by_oracle(sigma, u).unwrap();
                assert_eq!((o.d, o.ell, o.ell_prime), (r.d, r.ell, r.ell_prime));
            }
        }
    }
}

//! Conjugacy classes of episturmian morphisms.

use crate::error::{Error, Result};
use crate::morphism::{Morphism, Permutation};
use crate::palindromic::pal;
use crate::word::{gcp, gcs, Letter, Word};

/// `(‖σ‖ - |A|)/(|A| - 1)`, the largest index in the class of `σ`.
pub fn max_index(sigma: &Morphism) -> Result<usize> {
    let k = sigma.alphabet().len() - 1;
    let excess = sigma.norm() - sigma.alphabet().len();
    if !excess.is_multiple_of(k) {
        return Err(Error::TheoryViolation(format!(
            "norm {} is not congruent to |A| modulo |A|-1",
            sigma.norm()
        )));
    }
    Ok(excess / k)
}

fn pair_image(sigma: &Morphism, a: Letter, b: Letter) -> Word {
    sigma.image(a).concat(sigma.image(b))
}

fn ordered_pairs(size: usize) -> impl Iterator<Item = (Letter, Letter)> {
    (0..size as Letter).flat_map(move |a| {
        (0..size as Letter)
            .filter(move |&b| b != a)
            .map(move |b| (a, b))
    })
}

fn require_episturmian(sigma: &Morphism) -> Result<()> {
    sigma.decompose().map(|_| ())
}

/// `(gcs(σ(ab), σ(ba)), gcp(σ(ab), σ(ba)))`, checked to be the same for every
/// pair of distinct letters. Their product is `Pal(u)` when `σ` is conjugate
/// to `ψ_u ∘ π`.
pub fn gcs_gcp_factorization(sigma: &Morphism) -> Result<(Word, Word)> {
    require_episturmian(sigma)?;
    let mut result: Option<(Word, Word)> = None;
    for (a, b) in ordered_pairs(sigma.alphabet().len()) {
        let ab = pair_image(sigma, a, b);
        let ba = pair_image(sigma, b, a);
        let pair = (gcs(&ab, &ba), gcp(&ab, &ba));
        match &result {
            None => result = Some(pair),
            Some(first) if *first != pair => {
                return Err(Error::TheoryViolation(format!(
                    "gcs/gcp of {sigma} depend on the letter pair"
                )))
            }
            _ => {}
        }
    }
    Ok(result.expect("alphabet has two letters"))
}

/// The length of the `w` with `wσw⁻¹` standard. Computed both as
/// `|gcs(σ(ab), σ(ba))|` and as `m - |gcp(σ(ab), σ(ba))|` over every letter
/// pair; any disagreement is an error.
pub fn conjugacy_index(sigma: &Morphism) -> Result<usize> {
    require_episturmian(sigma)?;
    let m = max_index(sigma)?;
    let mut index = None;
    for (a, b) in ordered_pairs(sigma.alphabet().len()) {
        let ab = pair_image(sigma, a, b);
        let ba = pair_image(sigma, b, a);
        let by_suffix = gcs(&ab, &ba).len();
        let by_prefix = m.checked_sub(gcp(&ab, &ba).len()).ok_or_else(|| {
            Error::TheoryViolation(format!("gcp of {sigma} is longer than the class"))
        })?;
        if by_suffix != by_prefix || index.is_some_and(|i| i != by_suffix) {
            return Err(Error::TheoryViolation(format!(
                "index formulas disagree on {sigma}: {by_suffix} vs {by_prefix}"
            )));
        }
        index = Some(by_suffix);
    }
    Ok(index.expect("alphabet has two letters"))
}

/// `(wσw⁻¹, w)` with `wσw⁻¹` standard and `w = gcs(σ(ab), σ(ba))`.
pub fn standard_conjugate(sigma: &Morphism) -> Result<(Morphism, Word)> {
    let (w, _) = gcs_gcp_factorization(sigma)?;
    let std = sigma
        .conjugate_left(&w)
        .filter(|s| s.is_standard())
        .ok_or_else(|| {
            Error::TheoryViolation(format!("{sigma} has no standard left conjugate by {w}"))
        })?;
    Ok((std, w))
}

/// The class of an episturmian morphism, ordered by conjugacy index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// `members[i]` has index `i`; `members[0] = ψ_u ∘ π`.
    pub members: Vec<Morphism>,
    pub directive: Word,
    pub perm: Permutation,
    /// `Pal(directive)`; member `i` is the right conjugate of member 0 by
    /// its prefix of length `i`.
    pub pal: Word,
}

impl ConjugacyClass {
    /// Largest index, `|members| - 1`.
    pub fn m(&self) -> usize {
        self.members.len() - 1
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, sigma: &Morphism) -> Option<usize> {
        self.members.iter().position(|s| s == sigma)
    }

    /// The prefix of `Pal(u)` conjugating member 0 to member `i`.
    pub fn pal_prefix(&self, i: usize) -> Word {
        self.pal.prefix(i)
    }

    /// [`Self::pal_prefix`] rendered, `-` for the empty word.
    pub fn prefix_label(&self, i: usize) -> String {
        self.members[0].alphabet().render_or_dash(&self.pal_prefix(i))
    }
}

pub fn enumerate_class(sigma: &Morphism) -> Result<ConjugacyClass> {
    let (std, _) = standard_conjugate(sigma)?;
    let (directive, perm) = std
        .decompose_standard()
        .ok_or_else(|| Error::TheoryViolation(format!("{std} is not standard")))?;
    let p = pal(&directive);
    let members = (0..=p.len())
        .map(|i| {
            std.conjugate_right(&p.prefix(i)).ok_or_else(|| {
                Error::TheoryViolation(format!("{std} has no right conjugate by {}", p.prefix(i)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let expected = max_index(sigma)? + 1;
    if members.len() != expected {
        return Err(Error::TheoryViolation(format!(
            "class of {sigma} has {} members, expected {expected}",
            members.len()
        )));
    }
    Ok(ConjugacyClass {
        members,
        directive,
        perm,
        pal: p,
    })
}

/// The minimal letter of a non-permutation episturmian morphism and the
/// quantities that decide whether all images share it as suffix or prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinLetterReport {
    pub a_min: Letter,
    /// `|σ(a_min)|`.
    pub j: usize,
    pub ind: usize,
    /// Largest index in the class.
    pub m: usize,
    /// Every image ends with `σ(a_min)`.
    pub suffix_closed: bool,
    /// Every image starts with `σ(a_min)`.
    pub prefix_closed: bool,
}

impl MinLetterReport {
    /// Checks the relations between the flags and the index; returns the
    /// first one that fails.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::TheoryViolation(format!("{what}: {self:?}")));
        if self.suffix_closed != (self.ind >= self.j) {
            return fail("suffix closure does not match ind >= j");
        }
        if self.prefix_closed != (self.ind + self.j <= self.m) {
            return fail("prefix closure does not match ind <= m - j");
        }
        if !(self.suffix_closed || self.prefix_closed) {
            return fail("neither suffix nor prefix closed");
        }
        if 2 * self.j > self.m + 1 {
            return fail("2j exceeds the class size");
        }
        Ok(())
    }
}

pub fn minimal_letter(sigma: &Morphism) -> Result<MinLetterReport> {
    if sigma.is_permutation() {
        return Err(Error::Precondition(
            "a permutation has no minimal letter".to_string(),
        ));
    }
    let ind = conjugacy_index(sigma)?;
    let m = max_index(sigma)?;
    let j = sigma.images().iter().map(|w| w.len()).min().unwrap();
    let shortest: Vec<Letter> = sigma
        .alphabet()
        .letters()
        .filter(|&a| sigma.image(a).len() == j)
        .collect();
    let [a_min] = shortest[..] else {
        return Err(Error::TheoryViolation(format!(
            "{sigma} has no unique shortest image"
        )));
    };
    let target = sigma.image(a_min);
    Ok(MinLetterReport {
        a_min,
        j,
        ind,
        m,
        suffix_closed: sigma.images().iter().all(|w| target.is_suffix_of(w)),
        prefix_closed: sigma.images().iter().all(|w| target.is_prefix_of(w)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::Spin;
    use crate::word::Alphabet;

    fn m(s: &str) -> Morphism {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    const TABLE: [(&str, &str, usize); 6] = [
        ("a->ababa,b->ababac,c->ab", "-", 0),
        ("a->babaa,b->babaca,c->ba", "a", 1),
        ("a->abaab,b->abacab,c->ab", "ab", 2),
        ("a->baaba,b->bacaba,c->ba", "aba", 3),
        ("a->aabab,b->acabab,c->ab", "abab", 4),
        ("a->ababa,b->cababa,c->ba", "ababa", 5),
    ];

    #[test]
    fn index_examples() {
        for (s, _, ind) in TABLE {
            assert_eq!(conjugacy_index(&m(s)).unwrap(), ind, "{s}");
        }
        let abc = Alphabet::standard(3).unwrap();
        let std = Morphism::psi_word(&abc, &w("abca"));
        assert_eq!(conjugacy_index(&std).unwrap(), 0);
        let perm = Morphism::identity(&abc);
        assert_eq!(conjugacy_index(&perm).unwrap(), 0);
        assert!(conjugacy_index(&m("a->ab,b->ba")).is_err());
    }

    #[test]
    fn standard_conjugate_examples() {
        let (std, w3) = standard_conjugate(&m(TABLE[3].0)).unwrap();
        assert_eq!(std, m(TABLE[0].0));
        assert_eq!(w3, w("aba"));
        let row0 = m(TABLE[0].0);
        assert_eq!(standard_conjugate(&row0).unwrap(), (row0, Word::empty()));
        let ab = Alphabet::standard(2).unwrap();
        let bar = Morphism::psi(&ab, 0, Spin::Barred);
        assert_eq!(
            standard_conjugate(&bar).unwrap(),
            (Morphism::psi(&ab, 0, Spin::Plain), w("a"))
        );
    }

    #[test]
    fn class_reproduces_table() {
        for (s, _, _) in TABLE {
            let class = enumerate_class(&m(s)).unwrap();
            assert_eq!(class.len(), 6);
            for (i, (row, prefix, ind)) in TABLE.iter().enumerate() {
                assert_eq!(class.members[i], m(row));
                assert_eq!(class.pal_prefix(i), w(prefix));
                assert_eq!(*ind, i);
            }
            assert_eq!(class.directive, w("abb"));
        }
        let ab = Alphabet::standard(2).unwrap();
        let class = enumerate_class(&Morphism::psi(&ab, 0, Spin::Plain)).unwrap();
        assert_eq!(
            class.members,
            vec![Morphism::psi(&ab, 0, Spin::Plain), Morphism::psi(&ab, 0, Spin::Barred)]
        );
    }

    #[test]
    fn factorization_examples() {
        let (x, y) = gcs_gcp_factorization(&m(TABLE[2].0)).unwrap();
        assert_eq!(x, w("ab"));
        assert_eq!(x.concat(&y), pal(&w("abb")));
        assert_eq!(
            gcs_gcp_factorization(&m(TABLE[0].0)).unwrap(),
            (Word::empty(), pal(&w("abb")))
        );
        assert_eq!(
            gcs_gcp_factorization(&m(TABLE[5].0)).unwrap(),
            (pal(&w("abb")), Word::empty())
        );
    }

    #[test]
    fn minimal_letter_examples() {
        // d-bonacci: a1 -> a1 a2, ..., a_d -> a1
        for (d, s) in [(2, "a->ab,b->a"), (3, "a->ab,b->ac,c->a"), (4, "a->ab,b->ac,c->ad,d->a")] {
            let r = minimal_letter(&m(s)).unwrap();
            assert_eq!((r.a_min as usize, r.j), (d - 1, 1));
            r.verify().unwrap();
        }
        let abc = Alphabet::standard(3).unwrap();
        let psi = Morphism::psi_word(&abc, &w("abca"));
        let r = minimal_letter(&psi).unwrap();
        assert_eq!((r.a_min, r.j, r.m + 1), (0, 7, 15));
        assert!(2 * r.j < r.m + 1);
        let class = enumerate_class(&psi).unwrap();
        assert_eq!(class.members[6], m("a->aabacab,b->aabacababacab,c->aabacabacab"));
        assert_eq!(class.members[7], m("a->abacaba,b->abacababacaba,c->abacabacaba"));
        assert_eq!(class.members[8], m("a->bacabaa,b->bacababacabaa,c->bacabacabaa"));
        let r7 = minimal_letter(&class.members[7]).unwrap();
        assert!(r7.suffix_closed && r7.prefix_closed);
        for member in &class.members {
            let r = minimal_letter(member).unwrap();
            r.verify().unwrap();
            assert_eq!(r.a_min, 0);
        }
        assert!(minimal_letter(&Morphism::identity(&abc)).is_err());
    }
}

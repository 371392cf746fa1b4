//! Whether a morphism maps the return words of `u` onto the return words of
//! `σ(u)`, and the families of words for which it cannot.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::conjugacy::{minimal_letter, MinLetterReport};
use crate::error::{Error, Result};
use crate::language::{directive_word, Shift, SpecialFactors};
use crate::morphism::Morphism;
use crate::palindromic::DirectivePal;
use crate::returns::{returns_oracle, ReturnEngine, ReturnSet, Side};
use crate::word::{gcp, gcs, Letter, Word};

/// `σ(R(u))` against `R(σ(u))` on both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationVerdict {
    pub u: Word,
    /// `σ(R(u)) = R(σ(u))` for left return words.
    pub holds_p: bool,
    /// The same for right return words.
    pub holds_p_prime: bool,
    pub lhs: ReturnSet,
    pub rhs: ReturnSet,
    /// A word in the symmetric difference of `lhs` and `rhs`.
    pub witness: Option<Word>,
    /// Whether the scanning oracle gave the same four return sets, when asked.
    pub oracle_agrees: Option<bool>,
}

/// Computes return sets in one shift and checks (P) and (P′) for its
/// morphism.
pub struct PreservationChecker {
    sigma: Morphism,
    engine: ReturnEngine,
}

impl PreservationChecker {
    pub fn new(sigma: &Morphism) -> Result<Self> {
        if !sigma.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        Ok(PreservationChecker {
            sigma: sigma.clone(),
            engine: ReturnEngine::new(sigma)?,
        })
    }

    pub fn sigma(&self) -> &Morphism {
        &self.sigma
    }

    pub fn engine(&mut self) -> &mut ReturnEngine {
        &mut self.engine
    }

    pub fn check(&mut self, u: &Word, cross_check: bool) -> Result<PreservationVerdict> {
        let here = self.engine.returns(u)?;
        let image = self.sigma.apply(u);
        let there = match self.engine.returns(&image) {
            Err(Error::NotInLanguage(w)) => {
                return Err(Error::TheoryViolation(format!(
                    "the image {w} of a factor is not a factor"
                )))
            }
            other => other?,
        };
        let map = |set: &ReturnSet| -> ReturnSet { set.iter().map(|r| self.sigma.apply(r)).collect() };
        let lhs = map(&here.left);
        let lhs_bar = map(&here.right);
        let holds_p = lhs == there.left;
        let holds_p_prime = lhs_bar == there.right;
        if holds_p != holds_p_prime {
            return Err(Error::TheoryViolation(format!(
                "(P) and (P′) disagree on {}",
                self.sigma.alphabet().render(u)
            )));
        }
        let witness = lhs.symmetric_difference(&there.left).next().cloned();
        let oracle_agrees = if cross_check {
            let sets = [
                (u, Side::Left, &here.left),
                (u, Side::Right, &here.right),
                (&image, Side::Left, &there.left),
                (&image, Side::Right, &there.right),
            ];
            let mut agree = true;
            for (w, side, expected) in sets {
                agree &= returns_oracle(&self.sigma, w, side)? == *expected;
            }
            Some(agree)
        } else {
            None
        };
        Ok(PreservationVerdict {
            u: u.clone(),
            holds_p,
            holds_p_prime,
            lhs,
            rhs: there.left,
            witness,
            oracle_agrees,
        })
    }
}

pub fn check_preservation(sigma: &Morphism, u: &Word, cross_check: bool) -> Result<PreservationVerdict> {
    PreservationChecker::new(sigma)?.check(u, cross_check)
}

/// Which of the two word families apply, from the conjugacy index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// `ind ≥ j`: the words `a_min·L_n`.
    One,
    /// `ind ≤ m - j`: the words `R_n·a_min`.
    Two,
    Both,
}

impl Case {
    pub fn from_report(r: &MinLetterReport) -> Result<Case> {
        match (r.ind >= r.j, r.ind + r.j <= r.m) {
            (true, true) => Ok(Case::Both),
            (true, false) => Ok(Case::One),
            (false, true) => Ok(Case::Two),
            (false, false) => Err(Error::TheoryViolation(format!(
                "neither word family applies: ind={}, j={}, m={}",
                r.ind, r.j, r.m
            ))),
        }
    }

    pub fn has_one(self) -> bool {
        matches!(self, Case::One | Case::Both)
    }

    pub fn has_two(self) -> bool {
        matches!(self, Case::Two | Case::Both)
    }
}

/// One member of a word family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionWord {
    pub n: usize,
    pub word: Word,
    /// `Case::One` for `a_min·L_n`, `Case::Two` for `R_n·a_min`.
    pub family: Case,
}

fn bispecial_lengths(specials: &[SpecialFactors]) -> impl Iterator<Item = (usize, &Word)> {
    specials
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_bispecial())
        .map(|(n, s)| (n, s.left.as_ref().unwrap()))
}

/// `a_min·L_n` (when `ind ≥ j`) and `R_n·a_min` (when `ind ≤ m - j`) for
/// every `n ≤ n_max` with `L_n = R_n`.
pub fn obstruction_words(sigma: &Morphism, n_max: usize) -> Result<(MinLetterReport, Vec<ObstructionWord>)> {
    let shift = Shift::new(sigma)?;
    let report = minimal_letter(sigma)?;
    let case = Case::from_report(&report)?;
    let specials = shift.special_factors_upto(n_max)?;
    let a = Word::letter(report.a_min);
    let mut out = Vec::new();
    for (n, l) in bispecial_lengths(&specials) {
        if case.has_one() {
            out.push(ObstructionWord {
                n,
                word: a.concat(l),
                family: Case::One,
            });
        }
        if case.has_two() {
            out.push(ObstructionWord {
                n,
                word: l.concat(&a),
                family: Case::Two,
            });
        }
    }
    Ok((report, out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestedWord {
    pub obstruction: ObstructionWord,
    pub verdict: PreservationVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub sigma: Morphism,
    pub min_letter: MinLetterReport,
    pub case: Case,
    pub tested: Vec<TestedWord>,
    /// Least tested `n` from which every tested word fails (P); `None` when
    /// the last one holds.
    pub onset: Option<usize>,
}

impl ObstructionReport {
    /// Tested words at or past the onset that still satisfy (P).
    pub fn late_exceptions(&self) -> Vec<&TestedWord> {
        match self.onset {
            Some(onset) => self
                .tested
                .iter()
                .filter(|t| t.obstruction.n >= onset && t.verdict.holds_p)
                .collect(),
            None => self.tested.iter().filter(|t| t.verdict.holds_p).collect(),
        }
    }
}

pub fn run_obstruction_suite(sigma: &Morphism, n_max: usize, cross_check: bool) -> Result<ObstructionReport> {
    let (min_letter, words) = obstruction_words(sigma, n_max)?;
    let case = Case::from_report(&min_letter)?;
    let mut checker = PreservationChecker::new(sigma)?;
    let tested = words
        .into_iter()
        .map(|obstruction| {
            let verdict = checker.check(&obstruction.word, cross_check)?;
            Ok(TestedWord { obstruction, verdict })
        })
        .collect::<Result<Vec<_>>>()?;
    let onset = onset_of(&tested);
    Ok(ObstructionReport {
        sigma: sigma.clone(),
        min_letter,
        case,
        tested,
        onset,
    })
}

fn onset_of(tested: &[TestedWord]) -> Option<usize> {
    let last_holding = tested.iter().rposition(|t| t.verdict.holds_p);
    match last_holding {
        None => tested.first().map(|t| t.obstruction.n),
        Some(i) => {
            let n = tested[i].obstruction.n;
            tested
                .iter()
                .map(|t| t.obstruction.n)
                .find(|&m| m > n)
        }
    }
}

/// Findings of the three lemmas behind the main theorem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub checks: usize,
    pub violations: Vec<String>,
    /// Least bispecial `n` for which every return word to `L_k`, with
    /// `k = |σ(a_min L_n)|`, is longer than `m - j`.
    pub placement_threshold: Option<usize>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

fn has_two_extensions(
    engine: &mut ReturnEngine,
    w: &Word,
    letters: &[Letter],
    side: Side,
) -> Result<bool> {
    let mut count = 0;
    for &a in letters {
        let ext = match side {
            Side::Left => Word::letter(a).concat(w),
            Side::Right => w.with(a),
        };
        if engine.contains(&ext)? {
            count += 1;
        }
    }
    Ok(count >= 2)
}

/// Checks, for `n ≤ n_max`:
///
/// * the special-ness of `σ(a_min L_n)`, `σ(a_min R_n)`, `σ(R_n a_min)` and
///   `σ(L_n a_min)` at the indices `j`, `m`, `m - j` and `0`;
/// * for bispecial `n` past the placement threshold, that `σ(a_min L_n)` is
///   inner word `ind - j` of `Γ_k` and `σ(R_n a_min)` inner word `ind` of
///   `Γ̄_k`;
/// * for every factor `u` with `|u| ≤ sample_len` and distinct return
///   words, `|gcs(σ(rs), σ(sr))| ≥ ind` with equality exactly when `u` is
///   left special, and the dual with `gcp`, `m - ind` and right special.
pub fn lemma_checks(sigma: &Morphism, n_max: usize, sample_len: usize) -> Result<LemmaReport> {
    let shift = Shift::new(sigma)?;
    let r = minimal_letter(sigma)?;
    let (ind, j, m) = (r.ind, r.j, r.m);
    let letters: Vec<Letter> = sigma.alphabet().letters().collect();
    let mut engine = ReturnEngine::new(sigma)?;
    let mut pal = DirectivePal::new(directive_word(sigma)?);
    let specials = shift.special_factors_upto(n_max.max(sample_len))?;
    let a = Word::letter(r.a_min);
    let mut report = LemmaReport::default();
    let render = |w: &Word| sigma.alphabet().render(w);

    for (n, s) in specials.iter().enumerate().take(n_max + 1) {
        let (Some(l), Some(rn)) = (&s.left, &s.right) else {
            report.expect(false, || format!("no special factors of length {n}"));
            continue;
        };
        let cases = [
            (ind == j, a.concat(l), Side::Left, "σ(a_min L_n) left special"),
            (ind == m, a.concat(rn), Side::Right, "σ(a_min R_n) right special"),
            (ind + j == m, rn.concat(&a), Side::Right, "σ(R_n a_min) right special"),
            (ind == 0, l.concat(&a), Side::Left, "σ(L_n a_min) left special"),
        ];
        for (applies, w, side, what) in cases {
            if applies {
                let image = sigma.apply(&w);
                let ok = has_two_extensions(&mut engine, &image, &letters, side)?;
                report.expect(ok, || format!("n={n}: {what} fails for {}", render(&image)));
            }
        }
    }

    for (n, l) in bispecial_lengths(&specials[..=n_max]) {
        let image_one = sigma.apply(&a.concat(l));
        let k = image_one.len();
        // L_k U_k is the shortest Pal(d[0,t)) of length at least k.
        let mut t = 0;
        while pal.pal_len(t)? < k {
            t += 1;
        }
        let bispecial = pal.pal_prefix(t)?;
        let l_k = bispecial.prefix(k);
        let shortest_return = engine
            .returns(&l_k)?
            .left
            .iter()
            .map(|w| w.len())
            .min()
            .unwrap_or(0);
        if shortest_return <= m - j {
            continue;
        }
        report.placement_threshold.get_or_insert(n);
        let inner = |i: usize| (i + k <= bispecial.len()).then(|| bispecial.factor(i, k));
        if ind >= j {
            report.expect(inner(ind - j) == Some(image_one.clone()), || {
                format!("n={n}: σ(a_min L_n) is not inner word {} of Γ_{k}", ind - j)
            });
        }
        if ind + j <= m {
            let image_two = sigma.apply(&l.concat(&a));
            report.expect(inner(ind) == Some(image_two), || {
                format!("n={n}: σ(R_n a_min) is not inner word {ind} of Γ̄_{k}")
            });
        }
    }

    let windows = shift.windows(sample_len)?;
    for win in windows.iter().skip(1) {
        let s = &specials[win.n];
        for u in &win.factors {
            let ret = engine.returns(u)?;
            let left_special = s.left.as_ref() == Some(u);
            let right_special = s.right.as_ref() == Some(u);
            for (set, side) in [(&ret.left, Side::Left), (&ret.right, Side::Right)] {
                let words: Vec<&Word> = set.iter().collect();
                for (x, y) in distinct_pairs(&words) {
                    let rs = sigma.apply(&x.concat(y));
                    let sr = sigma.apply(&y.concat(x));
                    match side {
                        Side::Left => {
                            let g = gcs(&rs, &sr).len();
                            report.expect(g > ind || (g == ind && left_special), || {
                                format!("u={}: |gcs| = {g}, ind = {ind}", render(u))
                            });
                            report.expect((g == ind) == left_special, || {
                                format!("u={}: gcs equality does not match left special", render(u))
                            });
                        }
                        Side::Right => {
                            let g = gcp(&rs, &sr).len();
                            report.expect(g + ind > m || (g + ind == m && right_special), || {
                                format!("u={}: |gcp| = {g}, m - ind = {}", render(u), m - ind)
                            });
                            report.expect((g + ind == m) == right_special, || {
                                format!("u={}: gcp equality does not match right special", render(u))
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn distinct_pairs<'a>(words: &[&'a Word]) -> Vec<(&'a Word, &'a Word)> {
    let mut out = Vec::new();
    for (i, x) in words.iter().enumerate() {
        for y in &words[i + 1..] {
            out.push((*x, *y));
        }
    }
    out
}

/// Lengths `n ≤ n_max` with `L_n = R_n`.
pub fn bispecial_up_to(sigma: &Morphism, n_max: usize) -> Result<BTreeSet<usize>> {
    let specials = Shift::new(sigma)?.special_factors_upto(n_max)?;
    Ok(bispecial_lengths(&specials).map(|(n, _)| n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::enumerate_class;
    use crate::word::Alphabet;

    fn m(s: &str) -> Morphism {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    const DL: &str = "a->ababac,b->ababa,c->ab";

    #[test]
    fn fibonacci_verdicts() {
        let fib = m("a->ab,b->a");
        let v = check_preservation(&fib, &w("a"), true).unwrap();
        assert_eq!(v.holds_p, v.holds_p_prime);
        assert_eq!(v.oracle_agrees, Some(true));
        assert_eq!(v.holds_p, v.witness.is_none());
    }

    #[test]
    fn cases_from_the_table() {
        let last = minimal_letter(&m("a->ababa,b->cababa,c->ba")).unwrap();
        assert_eq!((last.ind, last.j, last.m), (5, 2, 5));
        assert_eq!(Case::from_report(&last).unwrap(), Case::One);
        let first = minimal_letter(&m("a->ababa,b->ababac,c->ab")).unwrap();
        assert_eq!(Case::from_report(&first).unwrap(), Case::Two);
        for (d, s) in [(2, "a->ab,b->a"), (3, "a->ab,b->ac,c->a"), (4, "a->ab,b->ac,c->ad,d->a")] {
            let class = enumerate_class(&m(s)).unwrap();
            assert_eq!(class.len(), 2, "{d}-bonacci");
            let cases: Vec<Case> = class
                .members
                .iter()
                .map(|s| Case::from_report(&minimal_letter(s).unwrap()).unwrap())
                .collect();
            assert_eq!(cases, vec![Case::Two, Case::One]);
        }
    }

    #[test]
    fn example_suite_fails_past_onset() {
        let report = run_obstruction_suite(&m(DL), 40, false).unwrap();
        assert!(!report.tested.is_empty());
        let onset = report.onset.unwrap();
        assert!(onset <= 10, "onset {onset}");
        assert!(report.late_exceptions().is_empty());
        assert!(report.tested.iter().all(|t| t.verdict.holds_p == t.verdict.holds_p_prime));
    }

    #[test]
    fn fibonacci_class_suite() {
        for s in ["a->ab,b->a", "a->ba,b->a"] {
            let report = run_obstruction_suite(&m(s), 40, false).unwrap();
            assert!(report.onset.is_some_and(|o| o <= 10), "{s}: {:?}", report.onset);
        }
        let perm = Morphism::identity(&Alphabet::standard(2).unwrap());
        assert!(run_obstruction_suite(&perm, 10, false).is_err());
    }

    #[test]
    fn lemmas_on_the_abca_class() {
        let abc = Alphabet::standard(3).unwrap();
        let class = enumerate_class(&Morphism::psi_word(&abc, &w("abca"))).unwrap();
        let r = lemma_checks(&class.members[7], 12, 6).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
        assert!(r.checks > 0);
        let r = lemma_checks(&m(DL), 12, 6).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
    }
}

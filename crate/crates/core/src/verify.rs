//! The verification corpus: fixed examples, exhaustive sweeps over small
//! directive words, and a seeded random sampler. Shared by the `verify`
//! command and the acceptance tests.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::conjugacy::{conjugacy_index, enumerate_class, gcs_gcp_factorization, minimal_letter};
use crate::error::Result;
use crate::language::{directive_word, evolution_check, inner_word_data, Shift};
use crate::morphism::{Morphism, Permutation, Spin, SpinnedLetter, SpinnedWord, StripOrder};
use crate::palindromic::{justin_left, justin_right, pal, pal_inverse, pal_length, DirectiveWord};
use crate::preservation::{run_obstruction_suite, Case, PreservationChecker};
use crate::returns::{returns_closed_form, returns_oracle, returns_oracle_all, ReturnEngine, Side};
use crate::word::{Alphabet, Word};

/// Result of one named check.
#[derive(Clone, Debug, Default)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CheckOutcome {
    fn new(name: &str) -> Self {
        CheckOutcome {
            name: name.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    /// Records an error from a library call as a violation.
    fn absorb<T>(&mut self, context: impl FnOnce() -> String, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.violations.push(format!("{}: {e}", context()));
                None
            }
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

/// Sizes of the exhaustive sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub pal_len: usize,
    pub justin_len: usize,
    pub class_directive_len: usize,
    pub evolution_n_max: usize,
    pub returns_directive_len: usize,
    pub returns_factor_len: usize,
    pub main_directive_len: usize,
    pub main_n_max: usize,
    pub onset_bound: usize,
    pub random_samples: usize,
}

impl Bounds {
    pub fn full() -> Self {
        Bounds {
            pal_len: 7,
            justin_len: 7,
            class_directive_len: 5,
            evolution_n_max: 25,
            returns_directive_len: 4,
            returns_factor_len: 12,
            main_directive_len: 4,
            main_n_max: 30,
            onset_bound: 10,
            random_samples: 500,
        }
    }

    pub fn quick() -> Self {
        Bounds {
            pal_len: 5,
            justin_len: 5,
            class_directive_len: 3,
            evolution_n_max: 12,
            returns_directive_len: 2,
            returns_factor_len: 8,
            main_directive_len: 2,
            main_n_max: 20,
            onset_bound: 10,
            random_samples: 100,
        }
    }
}

pub const FIBONACCI: &str = "a->ab,b->a";
pub const TRIBONACCI: &str = "a->ab,b->ac,c->a";
pub const TETRABONACCI: &str = "a->ab,b->ac,c->ad,d->a";
/// `ψ_abb ∘ (a c b)`.
pub const EXAMPLE_DL: &str = "a->ababac,b->ababa,c->ab";

pub const TABLE_ONE: [(&str, &str, usize); 6] = [
    ("a->ababa,b->ababac,c->ab", "-", 0),
    ("a->babaa,b->babaca,c->ba", "a", 1),
    ("a->abaab,b->abacab,c->ab", "ab", 2),
    ("a->baaba,b->bacaba,c->ba", "aba", 3),
    ("a->aabab,b->acabab,c->ab", "abab", 4),
    ("a->ababa,b->cababa,c->ba", "ababa", 5),
];

pub const EXAMPLE_DL_RETURNS: [&str; 3] = [
    "acabababacababaababacababaabab",
    "acabababacababaababacababaababacababaabab",
    "acabababacababaababacababaababacababacababaababacababaabab",
];

/// `(vertex, d, ℓ)` for every vertex of `Γ_8` of the example shift.
pub const FIGURE_DL: [(&str, &str, usize); 17] = [
    ("ababacab", "abbc", 0),
    ("babacaba", "abbc", 1),
    ("abacabab", "abbc", 2),
    ("bacababa", "abbc", 3),
    ("acababaa", "abbca", 4),
    ("cababaab", "abbca", 5),
    ("ababaaba", "abbca", 6),
    ("babaabab", "abbca", 7),
    ("abaababa", "abbca", 8),
    ("baababac", "abbca", 9),
    ("aababaca", "abbca", 10),
    ("acababab", "abbcaab", 26),
    ("cabababa", "abbcaab", 27),
    ("abababac", "abbcaab", 28),
    ("bababaca", "abbcaab", 29),
    ("acababac", "abbcaabc", 56),
    ("cababaca", "abbcaabc", 57),
];

/// `(u, Pal(u))` for every ternary `u` with `1 ≤ |u| ≤ 3`, as drawn in the
/// Pal tree figure, except that node `bab` is drawn there as `babba`.
pub const PAL_TREE: [(&str, &str); 39] = [
    ("a", "a"), ("b", "b"), ("c", "c"),
    ("aa", "aa"), ("ab", "aba"), ("ac", "aca"),
    ("ba", "bab"), ("bb", "bb"), ("bc", "bcb"),
    ("ca", "cac"), ("cb", "cbc"), ("cc", "cc"),
    ("aaa", "aaa"), ("aab", "aabaa"), ("aac", "aacaa"),
    ("aba", "abaaba"), ("abb", "ababa"), ("abc", "abacaba"),
    ("aca", "acaaca"), ("acb", "acabaca"), ("acc", "acaca"),
    ("baa", "babab"), ("bab", "babbab"), ("bac", "babcbab"),
    ("bba", "bbabb"), ("bbb", "bbb"), ("bbc", "bbcbb"),
    ("bca", "bcbabcb"), ("bcb", "bcbbcb"), ("bcc", "bcbcb"),
    ("caa", "cacac"), ("cab", "cacbcac"), ("cac", "caccac"),
    ("cba", "cbcacbc"), ("cbb", "cbcbc"), ("cbc", "cbccbc"),
    ("cca", "ccacc"), ("ccb", "ccbcc"), ("ccc", "ccc"),
];

fn word(s: &str) -> Word {
    s.parse().expect("literal word")
}

fn morphism(s: &str) -> Morphism {
    s.parse().expect("literal morphism")
}

/// Every word of length `len` over the first `size` letters, in
/// lexicographic order.
pub fn all_words(size: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|w| (0..size as u8).map(move |a| w.with(a)))
            .collect();
    }
    out
}

/// `ψ_u ∘ π` for `1 ≤ |u| ≤ max_len` and every permutation `π`.
pub fn standard_morphisms(size: usize, max_len: usize) -> Vec<Morphism> {
    let alphabet = Alphabet::standard(size).expect("small alphabet");
    let perms = Permutation::all(size);
    let mut out = Vec::new();
    for len in 1..=max_len {
        for u in all_words(size, len) {
            let psi = Morphism::psi_word(&alphabet, &u);
            for p in &perms {
                out.push(psi.compose(&Morphism::from_permutation(&alphabet, p)).expect("same alphabet"));
            }
        }
    }
    out
}

/// Every member of the class of every morphism of [`standard_morphisms`].
pub fn class_corpus(size: usize, max_len: usize) -> Vec<Morphism> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for sigma in standard_morphisms(size, max_len) {
        let class = enumerate_class(&sigma).expect("standard morphisms are episturmian");
        for member in class.members {
            if seen.insert(member.clone()) {
                out.push(member);
            }
        }
    }
    out
}

/// Primitive members of [`class_corpus`] over alphabets of size 2 and 3.
pub fn primitive_corpus(max_len: usize) -> Vec<Morphism> {
    [2, 3]
        .into_iter()
        .flat_map(|size| class_corpus(size, max_len))
        .filter(Morphism::is_primitive)
        .collect()
}

pub fn check_table_one() -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new("conjugacy class table");
    if let Some(class) = out.absorb(|| "class".to_string(), enumerate_class(&morphism(TABLE_ONE[0].0))) {
        out.expect(class.len() == TABLE_ONE.len(), || format!("{} members", class.len()));
        for (i, (row, prefix, ind)) in TABLE_ONE.iter().enumerate() {
            let Some(member) = class.members.get(i) else { continue };
            out.expect(member.render() == *row, || format!("row {i}: {member}"));
            let p = class.prefix_label(i);
            out.expect(p == *prefix, || format!("row {i}: prefix {p}"));
            let got = conjugacy_index(member);
            out.expect(got.as_ref().ok() == Some(ind), || format!("row {i}: index {got:?}"));
        }
    }
    out.timed(start)
}

pub fn check_example_returns() -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new("worked return-set example");
    let sigma = morphism(EXAMPLE_DL);
    let expected_d = DirectiveWord::periodic(Word::empty(), word("abbcaabcc")).expect("period");
    let d = directive_word(&sigma);
    out.expect(d.as_ref().ok() == Some(&expected_d), || format!("directive word {d:?}"));
    let u = word("acababab");
    let expected: std::collections::BTreeSet<Word> = EXAMPLE_DL_RETURNS.iter().map(|s| word(s)).collect();
    if let Some(r) = out.absorb(|| "closed form".to_string(), returns_closed_form(&sigma, &u)) {
        out.expect(r.d == word("abbcaab"), || format!("d = {}", r.d));
        out.expect(r.ell == 26, || format!("ℓ = {}", r.ell));
        out.expect(r.left == expected, || "closed-form left returns differ".to_string());
        let lengths: Vec<usize> = r.left.iter().map(|w| w.len()).collect();
        out.expect(lengths == [30, 41, 58], || format!("lengths {lengths:?}"));
    }
    if let Some(o) = out.absorb(|| "oracle".to_string(), returns_oracle(&sigma, &u, Side::Left)) {
        out.expect(o == expected, || "oracle left returns differ".to_string());
    }
    out.timed(start)
}

pub fn check_rauzy_annotations() -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new("Rauzy graph annotations");
    let Some(shift) = out.absorb(|| "shift".to_string(), Shift::new(&morphism(EXAMPLE_DL))) else {
        return out.timed(start);
    };
    if let Some(g) = out.absorb(|| "graph".to_string(), shift.rauzy_graph(8)) {
        out.expect(g.vertices.len() == FIGURE_DL.len(), || format!("{} vertices", g.vertices.len()));
    }
    for (v, d, ell) in FIGURE_DL {
        if let Some(data) = out.absorb(|| v.to_string(), inner_word_data(&shift, &word(v))) {
            out.expect(data.d == word(d) && data.ell == ell, || {
                format!("{v}: ({}, {}) instead of ({d}, {ell})", data.d, data.ell)
            });
        }
    }
    out.timed(start)
}

pub fn check_pal(bounds: &Bounds) -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new("Pal golden set and length formula");
    for (u, p) in PAL_TREE {
        out.expect(pal(&word(u)) == word(p), || format!("Pal({u}) = {}", pal(&word(u))));
    }
    out.notes.push("node bab of the Pal tree figure reads babba; Pal(bab) = babbab".to_string());
    for size in [2, 3] {
        let alphabet = Alphabet::standard(size).expect("small alphabet");
        for len in 0..=bounds.pal_len {
            for u in all_words(size, len) {
                let p = pal(&u);
                let by_norm = pal_length(&alphabet, &u);
                out.expect(by_norm.as_ref().ok() == Some(&p.len()), || {
                    format!("length formula at {u}: {by_norm:?} vs {}", p.len())
                });
                out.expect(p.is_palindrome(), || format!("Pal({u}) is not a palindrome"));
                out.expect(pal_inverse(&p).ok() == Some(u.clone()), || format!("Pal⁻¹ at {u}"));
            }
        }
    }
    out.timed(start)
}

pub fn check_justin(bounds: &Bounds) -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new("Justin's formulas");
    for size in [2, 3] {
        let alphabet = Alphabet::standard(size).expect("small alphabet");
        for total in 0..=bounds.justin_len {
            for uv in all_words(size, total) {
                for cut in 0..=total {
                    let u = uv.prefix(cut);
                    let v = Word::from(&uv[cut..]);
                    let (l, r) = justin_left(&alphabet, &u, &v);
                    out.expect(l == r, || format!("(J) at u={u}, v={v}"));
                    let (l, r) = justin_right(&alphabet, &u, &v);
                    out.expect(l == r, || format!("(J′) at u={u}, v={v}"));
                }
            }
        }
    }
    out.timed(start)
}

pub fn check_conjugacy(bounds: &Bounds) -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new("conjugacy index and gcs·gcp factorization");
    for size in [2, 3] {
        for std in standard_morphisms(size, bounds.class_directive_len) {
            let Some(class) = out.absorb(|| format!("class of {std}"), enumerate_class(&std)) else {
                continue;
            };
            let p = pal(&class.directive);
            out.expect(class.len() == p.len() + 1, || format!("class of {std} has {} members", class.len()));
            for (i, member) in class.members.iter().enumerate() {
                let ind = out.absorb(|| format!("index of {member}"), conjugacy_index(member));
                out.expect(ind == Some(i), || format!("{member}: index {ind:?}, position {i}"));
                out.expect(member.is_standard() == (i == 0), || format!("{member}: standard at {i}"));
                if let Some((x, y)) = out.absorb(|| format!("factorization of {member}"), gcs_gcp_factorization(member)) {
                    out.expect(x.concat(&y) == p, || format!("{member}: x·y ≠ Pal(u)"));
                    out.expect(x.len() == i, || format!("{member}: |x| = {}", x.len()));
                }
            }
        }
    }
    out.timed(start)
}

pub fn check_minimal_letter(bounds: &Bounds) -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new("minimal letter");
    for size in [2, 3] {
        for std in standard_morphisms(size, bounds.class_directive_len) {
            let Some(class) = out.absorb(|| format!("class of {std}"), enumerate_class(&std)) else {
                continue;
            };
            let mut letters = HashSet::new();
            for member in &class.members {
                if let Some(r) = out.absorb(|| format!("{member}"), minimal_letter(member)) {
                    let verdict = r.verify();
                    out.expect(verdict.is_ok(), || format!("{member}: {verdict:?}"));
                    letters.insert(r.a_min);
                }
            }
            out.expect(letters.len() == 1, || format!("class of {std} has minimal letters {letters:?}"));
        }
    }
    // overlap in the class of ψ_abca at index 7
    let abc = Alphabet::standard(3).expect("small alphabet");
    if let Some(class) = out.absorb(|| "ψ_abca".to_string(), enumerate_class(&Morphism::psi_word(&abc, &word("abca")))) {
        let overlap: Vec<usize> = class
            .members
            .iter()
            .enumerate()
            .filter(|(_, s)| minimal_letter(s).is_ok_and(|r| r.suffix_closed && r.prefix_closed))
            .map(|(i, _)| i)
            .collect();
        out.expect(overlap == [7], || format!("ψ_abca overlap at {overlap:?}"));
        let r = minimal_letter(&class.members[0]);
        out.expect(r.as_ref().is_ok_and(|r| r.j == 7 && r.m + 1 == 15), || format!("ψ_abca: {r:?}"));
    }
    for s in [FIBONACCI, TRIBONACCI, TETRABONACCI] {
        if let Some(class) = out.absorb(|| s.to_string(), enumerate_class(&morphism(s))) {
            let overlap = class
                .members
                .iter()
                .any(|m| minimal_letter(m).is_ok_and(|r| r.suffix_closed && r.prefix_closed));
            out.expect(!overlap, || format!("{s}: the two properties overlap"));
        }
    }
    out.timed(start)
}

pub fn check_evolution(bounds: &Bounds) -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new("Rauzy graph evolution");
    for s in [FIBONACCI, TRIBONACCI, TETRABONACCI, EXAMPLE_DL] {
        let sigma = morphism(s);
        let Some(shift) = out.absorb(|| s.to_string(), Shift::new(&sigma)) else { continue };
        let Some(graphs) = out.absorb(|| s.to_string(), shift.rauzy_graphs(bounds.evolution_n_max + 1)) else {
            continue;
        };
        for pair in graphs[1..].windows(2) {
            let r = evolution_check(&pair[0], &pair[1]);
            out.expect(r.holds(), || format!("{s} n={}: {:?}", r.n, r.violations));
            out.expect(pair[0].outer.len() == sigma.alphabet().len(), || {
                format!("{s} n={}: {} outer branches", pair[0].n, pair[0].outer.len())
            });
        }
    }
    out.timed(start)
}

pub fn check_returns(bounds: &Bounds) -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new("closed-form returns against the oracle");
    let corpus = primitive_corpus(bounds.returns_directive_len);
    let mut factors = 0;
    for sigma in &corpus {
        let size = sigma.alphabet().len();
        let Some(table) = out.absorb(|| format!("oracle for {sigma}"), returns_oracle_all(sigma, bounds.returns_factor_len))
        else {
            continue;
        };
        for n in 1..=bounds.returns_factor_len {
            let count = table.keys().filter(|w| w.len() == n).count();
            out.expect(count == (size - 1) * n + 1, || format!("{sigma}: {count} factors of length {n}"));
        }
        let Some(mut engine) = out.absorb(|| format!("engine for {sigma}"), ReturnEngine::new(sigma)) else {
            continue;
        };
        for (u, pair) in &table {
            factors += 1;
            let Some(r) = out.absorb(|| format!("{sigma} at {u}"), engine.returns(u)) else { continue };
            out.expect(r.left == pair.left && r.right == pair.right, || format!("{sigma} at {u}: mismatch"));
            let verdict = r.verify(size);
            out.expect(verdict.is_ok(), || format!("{sigma} at {u}: {verdict:?}"));
            let invertible = Morphism::new(sigma.alphabet().clone(), r.left.iter().cloned().collect())
                .map(|m| m.is_episturmian())
                .unwrap_or(false);
            out.expect(invertible, || format!("{sigma} at {u}: left returns are not an episturmian image of A"));
        }
    }
    out.notes.push(format!("{} morphisms, {factors} factors", corpus.len()));
    out.timed(start)
}

/// Onset of the obstruction suite for one morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnsetRecord {
    pub sigma: String,
    pub case: Case,
    pub tested: usize,
    pub onset: Option<usize>,
}

pub fn main_theorem_onsets(bounds: &Bounds, out: &mut CheckOutcome) -> Vec<OnsetRecord> {
    let mut records = Vec::new();
    let mut contrast = 0;
    for sigma in primitive_corpus(bounds.main_directive_len) {
        let Some(report) = out.absorb(|| format!("suite for {sigma}"), run_obstruction_suite(&sigma, bounds.main_n_max, false))
        else {
            continue;
        };
        out.expect(report.onset.is_some_and(|o| o <= bounds.onset_bound), || {
            format!("{sigma}: onset {:?}", report.onset)
        });
        out.expect(report.late_exceptions().is_empty(), || format!("{sigma}: (P) holds past the onset"));
        for t in &report.tested {
            out.expect(t.verdict.holds_p == t.verdict.holds_p_prime, || {
                format!("{sigma} at {}: (P) and (P′) disagree", t.obstruction.word)
            });
        }
        if let Some(mut checker) = out.absorb(|| format!("checker for {sigma}"), PreservationChecker::new(&sigma)) {
            let any_holds = (1..=4).flat_map(|n| all_words(sigma.alphabet().len(), n)).any(|u| {
                matches!(checker.engine().contains(&u), Ok(true))
                    && checker.check(&u, false).is_ok_and(|v| v.holds_p)
            });
            if any_holds {
                contrast += 1;
            }
        }
        records.push(OnsetRecord {
            sigma: sigma.render(),
            case: report.case,
            tested: report.tested.len(),
            onset: report.onset,
        });
    }
    out.expect(contrast > 0, || "no factor satisfies (P) anywhere in the corpus".to_string());
    out.notes.push(format!(
        "{} morphisms, {contrast} with some short factor satisfying (P)",
        records.len()
    ));
    records
}

pub fn check_main_theorem(bounds: &Bounds) -> (CheckOutcome, Vec<OnsetRecord>) {
    let start = Instant::now();
    let mut out = CheckOutcome::new("return preservation fails on the obstruction words");
    let records = main_theorem_onsets(bounds, &mut out);
    let worst = records.iter().filter_map(|r| r.onset).max();
    out.notes.push(format!("largest onset {worst:?}"));
    (out.timed(start), records)
}

pub fn check_negative_controls() -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new("negative controls");
    out.expect(morphism("a->ab,b->ba").decompose().is_err(), || "a->ab,b->ba decomposed".to_string());
    let abc = Alphabet::standard(3).expect("small alphabet");
    let contrex = Morphism::psi(&abc, 0, Spin::Barred)
        .compose(&Morphism::psi(&abc, 1, Spin::Barred))
        .expect("same alphabet");
    out.expect(!contrex.is_primitive(), || format!("{contrex} reported primitive"));
    out.expect(contrex.is_episturmian(), || format!("{contrex} not episturmian"));
    if let Some(x) = out.absorb(|| "fixed point".to_string(), contrex.fixed_point_prefix(2, 60)) {
        let fib = morphism(FIBONACCI).fixed_point_prefix(0, 59).expect("Fibonacci grows");
        out.expect(x[0] == 2 && x[1..] == fib[..], || format!("fixed point {x}"));
    }
    out.timed(start)
}

/// Random spinned words and permutations: decomposition round trip in both
/// strip orders, the class and index formulas, and oracle against closed
/// form on random factors.
pub fn check_random(seed: u64, samples: usize) -> CheckOutcome {
    let start = Instant::now();
    let mut out = CheckOutcome::new(&format!("random sampler (seed {seed})"));
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let size = rng.gen_range(2..=4);
        let alphabet = Alphabet::standard(size).expect("small alphabet");
        let len = rng.gen_range(0..=6);
        let letters: Vec<SpinnedLetter> = (0..len)
            .map(|_| SpinnedLetter {
                letter: rng.gen_range(0..size as u8),
                spin: if rng.gen_bool(0.5) { Spin::Plain } else { Spin::Barred },
            })
            .collect();
        let v = SpinnedWord::new(letters);
        let perms = Permutation::all(size);
        let perm = &perms[rng.gen_range(0..perms.len())];
        let sigma = Morphism::psi_spinned(&alphabet, &v)
            .compose(&Morphism::from_permutation(&alphabet, perm))
            .expect("same alphabet");
        for order in [StripOrder::PlainFirst, StripOrder::BarredFirst] {
            let d = sigma.decompose_with(order);
            out.expect(
                d.as_ref().is_ok_and(|d| d.reconstruct(&alphabet) == sigma),
                || format!("{sigma}: {order:?} decomposition {d:?}"),
            );
        }
        if sigma.is_permutation() {
            continue;
        }
        if let Some(class) = out.absorb(|| format!("class of {sigma}"), enumerate_class(&sigma)) {
            out.expect(class.position(&sigma).is_some(), || format!("{sigma} missing from its class"));
            let ind = conjugacy_index(&sigma).ok();
            out.expect(ind == class.position(&sigma), || format!("{sigma}: index {ind:?}"));
        }
        if sigma.is_primitive() && sigma.norm() <= 40 {
            let Ok(x) = sigma.periodic_point_prefix(400) else { continue };
            let start = rng.gen_range(0..300);
            let n = rng.gen_range(1..=6);
            let u = x.factor(start, n);
            let closed = returns_closed_form(&sigma, &u);
            let oracle = returns_oracle(&sigma, &u, Side::Left);
            out.expect(
                matches!((&closed, &oracle), (Ok(c), Ok(o)) if c.left == *o),
                || format!("{sigma} at {u}: {closed:?} vs {oracle:?}"),
            );
        }
    }
    out.timed(start)
}

/// All checks at the given bounds, in acceptance order, plus the sampler.
pub fn run_all(bounds: &Bounds, seed: u64) -> Vec<CheckOutcome> {
    vec![
        check_table_one(),
        check_example_returns(),
        check_rauzy_annotations(),
        check_pal(bounds),
        check_justin(bounds),
        check_conjugacy(bounds),
        check_minimal_letter(bounds),
        check_evolution(bounds),
        check_returns(bounds),
        check_main_theorem(bounds).0,
        check_negative_controls(),
        check_random(seed, bounds.random_samples),
    ]
}

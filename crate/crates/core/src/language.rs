//! Factors of the shift generated by a primitive morphism, special factors,
//! and Rauzy graphs.

use std::collections::{BTreeMap, BTreeSet};

use crate::conjugacy::standard_conjugate;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::palindromic::{DirectivePal, DirectiveWord};
use crate::word::{Alphabet, Letter, Word};

/// Limits on the iterated images used to build factor sets.
pub const MAX_ITERATIONS: usize = 50;
pub const MAX_SYMBOLS: usize = 10_000_000;

/// The factors of length `n` of `X_σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageWindow {
    pub n: usize,
    pub factors: BTreeSet<Word>,
    /// Power `k` of `σ` whose images produced the window.
    pub iterations: usize,
}

impl LanguageWindow {
    pub fn contains(&self, w: &Word) -> bool {
        self.factors.contains(w)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `|L ∩ A^n| = (|A| - 1)n + 1`, the complexity of a strict episturmian
    /// shift.
    pub fn check_complexity(&self, alphabet_size: usize) -> Result<()> {
        let expected = (alphabet_size - 1) * self.n + 1;
        if self.len() != expected {
            return Err(Error::TheoryViolation(format!(
                "{} factors of length {}, expected {expected}",
                self.len(),
                self.n
            )));
        }
        Ok(())
    }
}

/// The language of `X_σ` for a primitive `σ`.
///
/// Length-2 factors are the closure of the 2-factors of the images of
/// letters under `xy ↦ 2-factors of σ(x)σ(y)`. Once every `σ^k(b)` has at
/// least `n - 1` letters, a factor of length `n` lies inside some `σ^k(b)` or
/// across `σ^k(x)σ^k(y)` with `xy` a 2-factor, which gives the window
/// exactly.
#[derive(Clone, Debug)]
pub struct Shift {
    sigma: Morphism,
    two_factors: Vec<(Letter, Letter)>,
}

impl Shift {
    /// The shift of a primitive episturmian morphism.
    pub fn new(sigma: &Morphism) -> Result<Self> {
        sigma.decompose()?;
        if !sigma.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let mut found: BTreeSet<(Letter, Letter)> = BTreeSet::new();
        for img in sigma.images() {
            found.extend(img.windows(2).map(|p| (p[0], p[1])));
        }
        let mut queue: Vec<(Letter, Letter)> = found.iter().copied().collect();
        while let Some((x, y)) = queue.pop() {
            let junction = (sigma.image(x).last().unwrap(), sigma.image(y)[0]);
            if found.insert(junction) {
                queue.push(junction);
            }
        }
        Ok(Shift {
            sigma: sigma.clone(),
            two_factors: found.into_iter().collect(),
        })
    }

    pub fn sigma(&self) -> &Morphism {
        &self.sigma
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.sigma.alphabet()
    }

    pub fn two_factors(&self) -> &[(Letter, Letter)] {
        &self.two_factors
    }

    /// `(k, [σ^k(b)])` for the least `k` with every image of length `≥ min_len`.
    fn images_at_least(&self, min_len: usize) -> Result<(usize, Vec<Word>)> {
        let mut k = 0;
        let mut images: Vec<Word> = self.alphabet().letters().map(Word::letter).collect();
        while images.iter().any(|w| w.len() < min_len) {
            images = self.next_images(&images, k)?;
            k += 1;
        }
        Ok((k, images))
    }

    fn next_images(&self, images: &[Word], k: usize) -> Result<Vec<Word>> {
        if k + 1 > MAX_ITERATIONS {
            return Err(Error::CapExceeded(format!(
                "more than {MAX_ITERATIONS} iterations of {}",
                self.sigma
            )));
        }
        let next: Vec<Word> = images.iter().map(|w| self.sigma.apply(w)).collect();
        if next.iter().map(|w| w.len()).sum::<usize>() > MAX_SYMBOLS {
            return Err(Error::CapExceeded(format!(
                "iterated images of {} exceed {MAX_SYMBOLS} symbols",
                self.sigma
            )));
        }
        Ok(next)
    }

    fn collect(&self, images: &[Word], n: usize) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        if n == 0 {
            out.insert(Word::empty());
            return out;
        }
        for img in images {
            out.extend(img.windows(n).map(Word::from));
        }
        for &(x, y) in &self.two_factors {
            let left = &images[x as usize];
            let right = &images[y as usize];
            let tail = &left[left.len().saturating_sub(n - 1)..];
            let head = &right[..right.len().min(n - 1)];
            let bridge: Vec<Letter> = tail.iter().chain(head).copied().collect();
            out.extend(bridge.windows(n).map(Word::from));
        }
        out
    }

    /// Factors of length `n`. The window is recomputed from the next power
    /// of `σ` and the two must agree.
    pub fn window(&self, n: usize) -> Result<LanguageWindow> {
        let (k, images) = self.images_at_least(n.saturating_sub(1))?;
        let factors = self.collect(&images, n);
        let again = self.collect(&self.next_images(&images, k)?, n);
        if again != factors {
            return Err(Error::TheoryViolation(format!(
                "factors of length {n} of {} change between iterations {k} and {}",
                self.sigma,
                k + 1
            )));
        }
        Ok(LanguageWindow {
            n,
            factors,
            iterations: k,
        })
    }

    /// Windows `0..=n_max`, all from one power of `σ`.
    pub fn windows(&self, n_max: usize) -> Result<Vec<LanguageWindow>> {
        let (k, images) = self.images_at_least(n_max.saturating_sub(1))?;
        Ok((0..=n_max)
            .map(|n| LanguageWindow {
                n,
                factors: self.collect(&images, n),
                iterations: k,
            })
            .collect())
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        Ok(self.window(w.len())?.contains(w))
    }

    pub fn special_factors(&self, n: usize) -> Result<SpecialFactors> {
        let ws = self.windows(n + 1)?;
        special_from_windows(&ws[n], &ws[n + 1])
    }

    /// Special factors of every length in `0..=n_max`.
    pub fn special_factors_upto(&self, n_max: usize) -> Result<Vec<SpecialFactors>> {
        let ws = self.windows(n_max + 1)?;
        (0..=n_max)
            .map(|n| special_from_windows(&ws[n], &ws[n + 1]))
            .collect()
    }

    pub fn rauzy_graph(&self, n: usize) -> Result<RauzyGraph> {
        let ws = self.windows(n + 1)?;
        RauzyGraph::from_windows(&ws[n], &ws[n + 1])
    }

    /// Rauzy graphs for every order in `0..=n_max`.
    pub fn rauzy_graphs(&self, n_max: usize) -> Result<Vec<RauzyGraph>> {
        let ws = self.windows(n_max + 1)?;
        (0..=n_max)
            .map(|n| RauzyGraph::from_windows(&ws[n], &ws[n + 1]))
            .collect()
    }
}

pub fn language(sigma: &Morphism, n: usize) -> Result<LanguageWindow> {
    Shift::new(sigma)?.window(n)
}

/// The unique left and right special factors of one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFactors {
    pub left: Option<Word>,
    pub right: Option<Word>,
}

impl SpecialFactors {
    pub fn is_bispecial(&self) -> bool {
        self.left.is_some() && self.left == self.right
    }
}

fn special_from_windows(vertices: &LanguageWindow, edges: &LanguageWindow) -> Result<SpecialFactors> {
    let mut left_ext: BTreeMap<&[Letter], usize> = BTreeMap::new();
    let mut right_ext: BTreeMap<&[Letter], usize> = BTreeMap::new();
    for e in &edges.factors {
        *left_ext.entry(&e[1..]).or_default() += 1;
        *right_ext.entry(&e[..e.len() - 1]).or_default() += 1;
    }
    let unique = |ext: &BTreeMap<&[Letter], usize>, side: &str| -> Result<Option<Word>> {
        let specials: Vec<&[Letter]> = ext
            .iter()
            .filter(|(_, &c)| c >= 2)
            .map(|(w, _)| *w)
            .collect();
        match specials[..] {
            [] => Ok(None),
            [w] => Ok(Some(Word::from(w))),
            _ => Err(Error::TheoryViolation(format!(
                "{} {side} special factors of length {}",
                specials.len(),
                vertices.n
            ))),
        }
    };
    Ok(SpecialFactors {
        left: unique(&left_ext, "left")?,
        right: unique(&right_ext, "right")?,
    })
}

/// An edge of `Γ_n`: a factor of length `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RauzyEdge {
    pub word: Word,
}

impl RauzyEdge {
    pub fn source(&self) -> Word {
        self.word.prefix(self.word.len() - 1)
    }

    pub fn target(&self) -> Word {
        Word::from(&self.word[1..])
    }

    /// Label in `Γ_n`.
    pub fn left_label(&self) -> Letter {
        self.word[0]
    }

    /// Label in `Γ̄_n`.
    pub fn right_label(&self) -> Letter {
        self.word.last().unwrap()
    }
}

/// A path of the graph with its two label words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    /// Vertices on the path. For the inner branch this runs from `L_n` to
    /// `R_n` inclusive; for an outer branch only the interior vertices.
    pub vertices: Vec<Word>,
    /// Left labels of the edges (`U_n` or `V_{a,n}`).
    pub left_labels: Word,
    /// Right labels of the edges (`Ū_n` or `V̄_{a,n}`).
    pub right_labels: Word,
}

/// `Γ_n` and `Γ̄_n` (same vertices and edges, different labels), split into
/// an inner branch `L_n → R_n` and outer branches `R_n → L_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RauzyGraph {
    pub n: usize,
    pub vertices: Vec<Word>,
    pub edges: Vec<RauzyEdge>,
    pub left_special: Word,
    pub right_special: Word,
    pub inner: Branch,
    /// In the order of the first edge leaving `R_n`.
    pub outer: Vec<Branch>,
}

impl RauzyGraph {
    pub fn from_windows(vertices: &LanguageWindow, edges: &LanguageWindow) -> Result<Self> {
        let n = vertices.n;
        let special = special_from_windows(vertices, edges)?;
        let shape = |reason: String| Error::TheoryViolation(format!("Rauzy graph of order {n}: {reason}"));
        let (Some(left_special), Some(right_special)) = (special.left, special.right) else {
            return Err(shape("missing left or right special factor".to_string()));
        };
        let edges: Vec<RauzyEdge> = edges.factors.iter().map(|w| RauzyEdge { word: w.clone() }).collect();
        let mut out_edges: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            out_edges.entry(e.source()).or_default().push(i);
        }
        let vertex_count = vertices.len();

        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut inner = Branch {
            vertices: vec![left_special.clone()],
            left_labels: Word::empty(),
            right_labels: Word::empty(),
        };
        seen.insert(left_special.clone());
        let mut v = left_special.clone();
        while v != right_special {
            let outs = out_edges.get(&v).map(Vec::as_slice).unwrap_or(&[]);
            let [e] = outs else {
                return Err(shape(format!("inner vertex {v} has {} out-edges", outs.len())));
            };
            let e = &edges[*e];
            inner.left_labels.extend([e.left_label()]);
            inner.right_labels.extend([e.right_label()]);
            v = e.target();
            if !seen.insert(v.clone()) {
                return Err(shape(format!("inner branch revisits {v}")));
            }
            inner.vertices.push(v.clone());
        }

        let mut outer = Vec::new();
        for &start in out_edges.get(&right_special).map(Vec::as_slice).unwrap_or(&[]) {
            let mut branch = Branch {
                vertices: Vec::new(),
                left_labels: Word::empty(),
                right_labels: Word::empty(),
            };
            let mut e = &edges[start];
            loop {
                branch.left_labels.extend([e.left_label()]);
                branch.right_labels.extend([e.right_label()]);
                let t = e.target();
                if t == left_special {
                    break;
                }
                if !seen.insert(t.clone()) {
                    return Err(shape(format!("outer branches meet at {t}")));
                }
                let outs = out_edges.get(&t).map(Vec::as_slice).unwrap_or(&[]);
                let [next] = outs else {
                    return Err(shape(format!("outer vertex {t} has {} out-edges", outs.len())));
                };
                branch.vertices.push(t);
                e = &edges[*next];
            }
            outer.push(branch);
        }
        if seen.len() != vertex_count {
            return Err(shape(format!(
                "branches cover {} of {vertex_count} vertices",
                seen.len()
            )));
        }
        let ends: BTreeSet<Letter> = outer.iter().map(|b| b.left_labels.last().unwrap()).collect();
        if ends.len() != outer.len() {
            return Err(shape("two outer branches end with the same letter".to_string()));
        }
        Ok(RauzyGraph {
            n,
            vertices: vertices.factors.iter().cloned().collect(),
            edges,
            left_special,
            right_special,
            inner,
            outer,
        })
    }

    pub fn is_bispecial(&self) -> bool {
        self.left_special == self.right_special
    }

    /// `U_n`.
    pub fn u(&self) -> &Word {
        &self.inner.left_labels
    }

    /// `Ū_n`.
    pub fn u_bar(&self) -> &Word {
        &self.inner.right_labels
    }

    /// `V_{a,n}`: left labels of the outer branch whose last edge is labelled
    /// `a`.
    pub fn v(&self, a: Letter) -> Option<&Word> {
        self.outer
            .iter()
            .map(|b| &b.left_labels)
            .find(|w| w.last() == Some(a))
    }

    /// `V̄_{a,n}`: right labels of the outer branch whose first edge is
    /// labelled `a`.
    pub fn v_bar(&self, a: Letter) -> Option<&Word> {
        self.outer
            .iter()
            .map(|b| &b.right_labels)
            .find(|w| w.first() == Some(a))
    }

    /// Position of `w` on the inner branch, counted from `L_n`.
    pub fn inner_index(&self, w: &Word) -> Option<usize> {
        self.inner.vertices.iter().position(|v| v == w)
    }

    /// Graphviz rendering. Edges carry both labels; the inner branch is bold.
    /// `annotate` may attach a note under a vertex label.
    pub fn to_dot(&self, alphabet: &Alphabet, annotate: impl Fn(&Word) -> Option<String>) -> String {
        let name = |w: &Word| alphabet.render_or_dash(w);
        let inner_edges: BTreeSet<Word> = self
            .inner
            .vertices
            .windows(2)
            .map(|p| p[0].with(p[1].last().unwrap()))
            .collect();
        let mut out = format!("digraph rauzy_{} {{\n", self.n);
        for v in &self.vertices {
            let label = match annotate(v) {
                Some(note) => format!("{}\\n{}", name(v), note),
                None => name(v),
            };
            let style = if self.inner.vertices.contains(v) { ", style=bold" } else { "" };
            out.push_str(&format!("  \"{}\" [label=\"{}\"{}];\n", name(v), label, style));
        }
        for e in &self.edges {
            let style = if inner_edges.contains(&e.word) { ", style=bold" } else { "" };
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\", left=\"{}\", right=\"{}\"{}];\n",
                name(&e.source()),
                name(&e.target()),
                alphabet.symbol(e.left_label()),
                alphabet.symbol(e.left_label()),
                alphabet.symbol(e.right_label()),
                style
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Outcome of comparing `Γ_n` and `Γ_{n+1}` against the label relations of
/// the evolution theorem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionReport {
    pub n: usize,
    /// The letter `a` with `L_n a = L_{n+1}` and `a R_n = R_{n+1}`.
    pub letter: Option<Letter>,
    /// `L_n = R_n`.
    pub bispecial: bool,
    pub violations: Vec<String>,
}

impl EvolutionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn evolution_check(g: &RauzyGraph, h: &RauzyGraph) -> EvolutionReport {
    let mut violations = Vec::new();
    let bispecial = g.is_bispecial();
    let a_left = h
        .left_special
        .strip_prefix(&g.left_special)
        .filter(|x| x.len() == 1)
        .map(|x| x[0]);
    let a_right = h
        .right_special
        .strip_suffix(&g.right_special)
        .filter(|x| x.len() == 1)
        .map(|x| x[0]);
    let letter = match (a_left, a_right) {
        (Some(a), Some(b)) if a == b => Some(a),
        _ => {
            violations.push("no letter a with L_n a = L_{n+1} and a R_n = R_{n+1}".to_string());
            None
        }
    };
    let mut check = |ok: bool, what: String| {
        if !ok {
            violations.push(what);
        }
    };
    if let Some(a) = letter {
        let letters: BTreeSet<Letter> = g
            .outer
            .iter()
            .map(|b| b.left_labels.last().unwrap())
            .chain(h.outer.iter().map(|b| b.left_labels.last().unwrap()))
            .collect();
        let single = Word::letter(a);
        if !bispecial {
            check(h.u().with(a) == *g.u(), "U_{n+1}a = U_n".to_string());
            check(single.concat(h.u_bar()) == *g.u_bar(), "aŪ_{n+1} = Ū_n".to_string());
            for &b in &letters {
                check(
                    h.v(b) == g.v(b).map(|v| single.concat(v)).as_ref(),
                    format!("V_{{{b},n+1}} = aV_{{{b},n}}"),
                );
                check(
                    h.v_bar(b) == g.v_bar(b).map(|v| v.with(a)).as_ref(),
                    format!("V̄_{{{b},n+1}} = V̄_{{{b},n}}a"),
                );
            }
        } else {
            check(Some(&h.u().with(a)) == g.v(a), "U_{n+1}a = V_{a,n}".to_string());
            check(
                Some(&single.concat(h.u_bar())) == g.v_bar(a),
                "aŪ_{n+1} = V̄_{a,n}".to_string(),
            );
            check(h.v(a) == Some(&single), "V_{a,n+1} = a".to_string());
            check(h.v_bar(a) == Some(&single), "V̄_{a,n+1} = a".to_string());
            for &b in letters.iter().filter(|&&b| b != a) {
                check(
                    h.v(b) == g.v(b).map(|v| single.concat(v)).as_ref(),
                    format!("V_{{{b},n+1}} = aV_{{{b},n}}"),
                );
                check(
                    h.v_bar(b) == g.v_bar(b).map(|v| v.with(a)).as_ref(),
                    format!("V̄_{{{b},n+1}} = V̄_{{{b},n}}a"),
                );
            }
        }
    }
    EvolutionReport {
        n: g.n,
        letter,
        bispecial,
        violations,
    }
}

/// The directive word of `X_σ`: for the standard conjugate `ψ_u ∘ π` with
/// `π` of order `k`, the periodic word `(u π(u) ⋯ π^{k-1}(u))^ω`.
pub fn directive_word(sigma: &Morphism) -> Result<DirectiveWord> {
    if !sigma.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let (std, _) = standard_conjugate(sigma)?;
    let (u, perm) = std
        .decompose_standard()
        .ok_or_else(|| Error::TheoryViolation(format!("{std} is not standard")))?;
    let mut period = Word::empty();
    let mut block = u;
    for _ in 0..perm.order() {
        period = period.concat(&block);
        block = perm.apply_word(&block);
    }
    DirectiveWord::periodic(Word::empty(), period)
}

/// `(d(w), ℓ(w), ℓ′(w))` of a factor, and whether it lies on the inner
/// branch of `Γ_{|w|}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerWordData {
    /// Position on the inner branch, if `w` is an inner word.
    pub inner_index: Option<usize>,
    pub d: Word,
    pub ell: usize,
    pub ell_prime: usize,
}

impl InnerWordData {
    pub fn is_inner(&self) -> bool {
        self.inner_index.is_some()
    }
}

/// For the `i`-th inner word of `Γ_p`: `d = d[0,k)` with `k` the number of
/// bispecial prefixes of `L_p` (the empty word included), `ℓ = i` and
/// `ℓ′ = |U_p| - i`. Other factors are located in `Pal(d[0,n))` directly.
pub fn inner_word_data(shift: &Shift, w: &Word) -> Result<InnerWordData> {
    let p = w.len();
    let directive = directive_word(shift.sigma())?;
    let ws = shift.windows(p + 1)?;
    if !ws[p].contains(w) {
        return Err(Error::NotInLanguage(shift.alphabet().render(w)));
    }
    let graph = RauzyGraph::from_windows(&ws[p], &ws[p + 1])?;
    match graph.inner_index(w) {
        Some(i) => {
            let mut count = 0;
            for k in 0..=p {
                let s = special_from_windows(&ws[k], &ws[k + 1])?;
                if s.is_bispecial() && s.left.as_ref() == Some(&graph.left_special.prefix(k)) {
                    count += 1;
                }
            }
            Ok(InnerWordData {
                inner_index: Some(i),
                d: directive.prefix(count)?,
                ell: i,
                ell_prime: graph.u().len() - i,
            })
        }
        None => {
            let occ = DirectivePal::new(directive.clone()).locate(w)?;
            Ok(InnerWordData {
                inner_index: None,
                d: directive.prefix(occ.n)?,
                ell: occ.index,
                ell_prime: occ.pal_len - occ.index - p,
            })
        }
    }
}

use std::fmt::Write as _;
use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use episturm::palindromic::{pal_prefixes, standard_tree, standard_tree_dot};
use episturm::returns::{returns_oracle, ReturnEngine};
use episturm::verify::{self, Bounds};
use episturm::{
    check_preservation, conjugacy_index, directive_word, enumerate_class, inner_word_data, lemma_checks,
    minimal_letter, pal_inverse, run_obstruction_suite, standard_conjugate, Alphabet, Error, Morphism,
    MorphismJson, ReturnSet, Shift, Side, StripOrder, Word,
};
use serde_json::{json, Value};

use crate::{Command, CrossCheck, Format, MethodArg, MorphismInput, OrderArg, SideArg};

pub const SCHEMA_VERSION: u32 = 1;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Decompose { input, order, format } => decompose(&input, order, format),
        Command::Class { input, format } => class(&input, format),
        Command::Index { input, format } => index(&input, format),
        Command::Pal { word, format } => pal_cmd(&word, format),
        Command::PalInverse { word, format } => pal_inverse_cmd(&word, format),
        Command::StandardTree { depth, letters, format } => tree(depth, &letters, format),
        Command::Language { input, n, strict, format } => language(&input, n, strict, format),
        Command::Rauzy { input, n, annotate_dl, format } => rauzy(&input, n, annotate_dl, format),
        Command::Returns { input, side, method, format } => returns(&input, side, method, format),
        Command::CheckP { input, cross_check, format } => check_p(&input, cross_check, format),
        Command::Obstructions { input, n_max, cross_check, lemmas, format } => {
            obstructions(&input, n_max, cross_check, lemmas, format)
        }
        Command::Verify { quick: _, full, seed, format } => verify_cmd(full, seed, format),
    }
}

fn load(input: &MorphismInput) -> Result<(Morphism, Vec<String>)> {
    let mut args = input.args.clone();
    let text = match &input.file {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        None => {
            if args.is_empty() {
                bail!("missing morphism argument");
            }
            args.remove(0)
        }
    };
    let text = text.trim();
    let sigma = if text.starts_with('{') {
        let repr: MorphismJson = serde_json::from_str(text).context("parsing morphism JSON")?;
        Morphism::from_json(&repr)?
    } else {
        text.parse()?
    };
    Ok((sigma, args))
}

fn load_plain(input: &MorphismInput) -> Result<Morphism> {
    let (sigma, rest) = load(input)?;
    if !rest.is_empty() {
        bail!("unexpected arguments: {}", rest.join(" "));
    }
    Ok(sigma)
}

fn load_with_word(input: &MorphismInput) -> Result<(Morphism, Word)> {
    let (sigma, rest) = load(input)?;
    let [w] = rest.as_slice() else {
        bail!("expected exactly one word after the morphism");
    };
    let u = sigma.alphabet().parse_word(w)?;
    Ok((sigma, u))
}

/// Alphabet of a free-standing word: its sorted symbols.
fn word_alphabet(text: &str) -> Result<(Alphabet, Word)> {
    let text = if text == "-" { "" } else { text };
    let mut symbols: Vec<char> = text.chars().collect();
    symbols.sort_unstable();
    symbols.dedup();
    if symbols.is_empty() {
        symbols.push('a');
    }
    let alphabet = Alphabet::new(symbols)?;
    let word = alphabet.parse_word(text)?;
    Ok((alphabet, word))
}

fn json_out(mut value: Value) -> String {
    if let Value::Object(map) = &mut value {
        map.insert("schema_version".to_string(), json!(SCHEMA_VERSION));
    }
    let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn unsupported(format: Format, command: &str) -> anyhow::Error {
    anyhow!("--format {} is not available for {command}", format_name(format))
}

fn format_name(format: Format) -> &'static str {
    match format {
        Format::Table => "table",
        Format::Tsv => "tsv",
        Format::Json => "json",
        Format::Dot => "dot",
    }
}

fn set_json(alphabet: &Alphabet, set: &ReturnSet) -> Value {
    json!(set.iter().map(|w| alphabet.render(w)).collect::<Vec<_>>())
}

fn decompose(input: &MorphismInput, order: OrderArg, format: Format) -> Result<Output> {
    let sigma = load_plain(input)?;
    let a = sigma.alphabet();
    let order = match order {
        OrderArg::Plain => StripOrder::PlainFirst,
        OrderArg::Barred => StripOrder::BarredFirst,
    };
    let d = match sigma.decompose_with(order) {
        Ok(d) => d,
        Err(e @ Error::NotEpisturmian { .. }) => {
            let text = match format {
                Format::Json => json_out(json!({
                    "morphism": sigma.render(),
                    "episturmian": false,
                    "reason": e.to_string(),
                })),
                Format::Table | Format::Tsv => format!("not episturmian: {e}\n"),
                Format::Dot => return Err(unsupported(format, "decompose")),
            };
            return Ok(Output::ok(text));
        }
        Err(e) => return Err(e.into()),
    };
    let standard = sigma.decompose_standard();
    let text = match format {
        Format::Json => json_out(json!({
            "morphism": sigma.render(),
            "episturmian": true,
            "spinned": d.spinned.render(a),
            "permutation": d.perm.render(a),
            "standard": standard.as_ref().map(|(u, p)| json!({"u": a.render(u), "permutation": p.render(a)})),
            "primitive": sigma.is_primitive(),
        })),
        Format::Table | Format::Tsv => {
            let mut s = String::new();
            writeln!(s, "morphism\t{sigma}")?;
            writeln!(s, "spinned\t{}", d.spinned.render(a))?;
            writeln!(s, "permutation\t{}", d.perm.render(a))?;
            match &standard {
                Some((u, p)) => writeln!(s, "standard\tψ_{} ∘ {}", a.render_or_dash(u), p.render(a))?,
                None => writeln!(s, "standard\tno")?,
            }
            writeln!(s, "primitive\t{}", sigma.is_primitive())?;
            s
        }
        Format::Dot => return Err(unsupported(format, "decompose")),
    };
    Ok(Output::ok(text))
}

fn class(input: &MorphismInput, format: Format) -> Result<Output> {
    let sigma = load_plain(input)?;
    let c = enumerate_class(&sigma)?;
    let a = sigma.alphabet();
    let text = match format {
        Format::Json => json_out(json!({
            "morphism": sigma.render(),
            "directive": a.render(&c.directive),
            "permutation": c.perm.render(a),
            "pal": a.render(&c.pal),
            "members": c.members.iter().enumerate().map(|(i, m)| json!({
                "index": i,
                "morphism": m.render(),
                "pal_prefix": a.render(&c.pal_prefix(i)),
            })).collect::<Vec<_>>(),
        })),
        Format::Tsv => {
            let mut s = String::from("index\tpal_prefix\tmorphism\n");
            for (i, m) in c.members.iter().enumerate() {
                writeln!(s, "{i}\t{}\t{m}", c.prefix_label(i))?;
            }
            s
        }
        Format::Table => {
            let width = c.members.iter().map(|m| m.render().len()).max().unwrap_or(0);
            let pw = c.pal.len().max(10);
            let mut s = format!("{:<width$}  {:<pw$}  index\n", "member", "pal prefix");
            for (i, m) in c.members.iter().enumerate() {
                writeln!(s, "{:<width$}  {:<pw$}  {i}", m.render(), c.prefix_label(i))?;
            }
            s
        }
        Format::Dot => return Err(unsupported(format, "class")),
    };
    Ok(Output::ok(text))
}

fn index(input: &MorphismInput, format: Format) -> Result<Output> {
    let sigma = load_plain(input)?;
    let a = sigma.alphabet();
    let ind = conjugacy_index(&sigma)?;
    let (std, x) = standard_conjugate(&sigma)?;
    let r = minimal_letter(&sigma)?;
    let text = match format {
        Format::Json => json_out(json!({
            "morphism": sigma.render(),
            "index": ind,
            "standard": std.render(),
            "conjugating_word": a.render(&x),
            "m": r.m,
            "a_min": a.symbol(r.a_min).to_string(),
            "j": r.j,
            "suffix_closed": r.suffix_closed,
            "prefix_closed": r.prefix_closed,
        })),
        Format::Table | Format::Tsv => {
            let mut s = String::new();
            writeln!(s, "index\t{ind}")?;
            writeln!(s, "standard\t{std}")?;
            writeln!(s, "conjugating word\t{}", a.render_or_dash(&x))?;
            writeln!(s, "m\t{}", r.m)?;
            writeln!(s, "minimal letter\t{}", a.symbol(r.a_min))?;
            writeln!(s, "j\t{}", r.j)?;
            writeln!(s, "a_min·L_n factors\t{}", r.suffix_closed)?;
            writeln!(s, "R_n·a_min factors\t{}", r.prefix_closed)?;
            s
        }
        Format::Dot => return Err(unsupported(format, "index")),
    };
    Ok(Output::ok(text))
}

fn pal_cmd(word: &str, format: Format) -> Result<Output> {
    let (a, u) = word_alphabet(word)?;
    let (p, lengths) = pal_prefixes(&u);
    let text = match format {
        Format::Json => json_out(json!({
            "u": a.render(&u),
            "pal": a.render(&p),
            "length": p.len(),
            "prefix_lengths": lengths,
        })),
        Format::Table | Format::Tsv => {
            let mut s = String::new();
            for (i, len) in lengths.iter().enumerate() {
                writeln!(s, "{}\t{}", a.render_or_dash(&u.prefix(i)), a.render_or_dash(&p.prefix(*len)))?;
            }
            s
        }
        Format::Dot => return Err(unsupported(format, "pal")),
    };
    Ok(Output::ok(text))
}

fn pal_inverse_cmd(word: &str, format: Format) -> Result<Output> {
    let (a, p) = word_alphabet(word)?;
    let result = pal_inverse(&p);
    let text = match (format, &result) {
        (Format::Json, Ok(u)) => json_out(json!({"pal": a.render(&p), "u": a.render(u)})),
        (Format::Json, Err(e)) => json_out(json!({"pal": a.render(&p), "u": null, "reason": e.to_string()})),
        (Format::Table | Format::Tsv, Ok(u)) => format!("{}\n", a.render_or_dash(u)),
        (Format::Table | Format::Tsv, Err(Error::NotInPalImage(_))) => format!("not a palindromic closure: {word}\n"),
        (Format::Table | Format::Tsv, Err(_)) => return Err(result.unwrap_err().into()),
        (Format::Dot, _) => return Err(unsupported(format, "pal-inverse")),
    };
    Ok(Output::ok(text))
}

fn tree(depth: usize, letters: &str, format: Format) -> Result<Output> {
    let a = Alphabet::new(letters.chars())?;
    let nodes = standard_tree(&a, depth);
    let text = match format {
        Format::Dot => standard_tree_dot(&a, &nodes),
        Format::Json => json_out(json!({
            "alphabet": a.symbols().iter().map(char::to_string).collect::<Vec<_>>(),
            "depth": depth,
            "nodes": nodes.iter().map(|n| json!({
                "u": a.render(&n.word),
                "images": n.images.iter().map(|w| a.render(w)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Table | Format::Tsv => {
            let mut s = String::new();
            for n in &nodes {
                let images: Vec<String> = n.images.iter().map(|w| a.render(w)).collect();
                writeln!(s, "{}\t{}", a.render_or_dash(&n.word), images.join(","))?;
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn language(input: &MorphismInput, n: usize, strict: bool, format: Format) -> Result<Output> {
    let sigma = load_plain(input)?;
    let a = sigma.alphabet();
    let shift = Shift::new(&sigma)?;
    let window = shift.window(n)?;
    if strict {
        window.check_complexity(a.len())?;
    }
    let special = shift.special_factors(n)?;
    let text = match format {
        Format::Json => json_out(json!({
            "morphism": sigma.render(),
            "n": n,
            "count": window.factors.len(),
            "iterations": window.iterations,
            "left_special": special.left.as_ref().map(|w| a.render(w)),
            "right_special": special.right.as_ref().map(|w| a.render(w)),
            "factors": window.factors.iter().map(|w| a.render(w)).collect::<Vec<_>>(),
        })),
        Format::Table | Format::Tsv => {
            let mut s = String::new();
            for w in &window.factors {
                writeln!(s, "{}", a.render_or_dash(w))?;
            }
            writeln!(s, "# {} factors of length {n}", window.factors.len())?;
            s
        }
        Format::Dot => return Err(unsupported(format, "language")),
    };
    Ok(Output::ok(text))
}

fn rauzy(input: &MorphismInput, n: usize, annotate_dl: bool, format: Format) -> Result<Output> {
    let sigma = load_plain(input)?;
    let a = sigma.alphabet();
    let shift = Shift::new(&sigma)?;
    let g = shift.rauzy_graph(n)?;
    let annotation = |v: &Word| -> Option<(Word, usize)> {
        annotate_dl
            .then(|| inner_word_data(&shift, v).ok())
            .flatten()
            .map(|data| (data.d, data.ell))
    };
    let label = |v: &Word| annotation(v).map(|(d, ell)| format!("({}, {ell})", a.render_or_dash(&d)));
    let text = match format {
        Format::Dot => g.to_dot(a, label),
        Format::Json => json_out(json!({
            "morphism": sigma.render(),
            "n": n,
            "vertices": g.vertices.iter().map(|v| {
                let mut o = json!({"word": a.render(v)});
                if let Some((d, ell)) = annotation(v) {
                    o["d"] = json!(a.render(&d));
                    o["ell"] = json!(ell);
                }
                o
            }).collect::<Vec<_>>(),
            "edges": g.edges.iter().map(|e| json!({
                "source": a.render(&e.source()),
                "target": a.render(&e.target()),
                "left": a.symbol(e.left_label()).to_string(),
                "right": a.symbol(e.right_label()).to_string(),
            })).collect::<Vec<_>>(),
            "left_special": a.render(&g.left_special),
            "right_special": a.render(&g.right_special),
            "bispecial": g.is_bispecial(),
            "inner": g.inner.vertices.iter().map(|v| a.render(v)).collect::<Vec<_>>(),
            "outer": g.outer.iter().map(|b| b.vertices.iter().map(|v| a.render(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })),
        Format::Table | Format::Tsv => {
            let mut s = String::new();
            writeln!(s, "L_{n}\t{}", a.render_or_dash(&g.left_special))?;
            writeln!(s, "R_{n}\t{}", a.render_or_dash(&g.right_special))?;
            for v in &g.vertices {
                let role = match g.inner_index(v) {
                    Some(i) => format!("inner {i}"),
                    None => "outer".to_string(),
                };
                match label(v) {
                    Some(l) => writeln!(s, "{}\t{role}\t{l}", a.render_or_dash(v))?,
                    None => writeln!(s, "{}\t{role}", a.render_or_dash(v))?,
                }
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn returns(input: &MorphismInput, side: Option<SideArg>, method: MethodArg, format: Format) -> Result<Output> {
    let (sigma, u) = load_with_word(input)?;
    let a = sigma.alphabet();
    let sides: Vec<Side> = match side {
        Some(SideArg::Left) => vec![Side::Left],
        Some(SideArg::Right) => vec![Side::Right],
        None => vec![Side::Left, Side::Right],
    };
    let closed = match method {
        MethodArg::Closed | MethodArg::Both => Some(ReturnEngine::new(&sigma)?.returns(&u)?),
        MethodArg::Oracle => None,
    };
    let oracle = match method {
        MethodArg::Oracle | MethodArg::Both => Some(
            sides
                .iter()
                .map(|&s| Ok((s, returns_oracle(&sigma, &u, s)?)))
                .collect::<Result<Vec<(Side, ReturnSet)>>>()?,
        ),
        MethodArg::Closed => None,
    };
    let closed_side = |s: Side| {
        closed.as_ref().map(|c| match s {
            Side::Left => &c.left,
            Side::Right => &c.right,
        })
    };
    let matches = oracle
        .as_ref()
        .filter(|_| closed.is_some())
        .map(|o| o.iter().all(|(s, set)| closed_side(*s) == Some(set)));
    let verdict = matches.map(|m| if m { "MATCH" } else { "MISMATCH" });
    let text = match format {
        Format::Json => {
            let mut v = json!({"morphism": sigma.render(), "u": a.render(&u)});
            if let Some(c) = &closed {
                v["d"] = json!(a.render(&c.d));
                v["ell"] = json!(c.ell);
                v["ell_prime"] = json!(c.ell_prime);
                for &s in &sides {
                    v["closed_form"][s.to_string()] = set_json(a, closed_side(s).unwrap());
                }
            }
            if let Some(o) = &oracle {
                for (s, set) in o {
                    v["oracle"][s.to_string()] = set_json(a, set);
                }
            }
            v["method"] = json!(match method {
                MethodArg::Oracle => "oracle",
                MethodArg::Closed => "closed_form",
                MethodArg::Both => "both",
            });
            if let Some(verdict) = verdict {
                v["verdict"] = json!(verdict);
            }
            json_out(v)
        }
        Format::Table | Format::Tsv => {
            let mut s = String::new();
            if let Some(c) = &closed {
                writeln!(s, "d\t{}", a.render_or_dash(&c.d))?;
                writeln!(s, "ℓ\t{}", c.ell)?;
                writeln!(s, "ℓ′\t{}", c.ell_prime)?;
                for &side in &sides {
                    for w in closed_side(side).unwrap() {
                        writeln!(s, "closed\t{side}\t{}", a.render(w))?;
                    }
                }
            }
            if let Some(o) = &oracle {
                for (side, set) in o {
                    for w in set {
                        writeln!(s, "oracle\t{side}\t{}", a.render(w))?;
                    }
                }
            }
            if let Some(verdict) = verdict {
                writeln!(s, "{verdict}")?;
            }
            s
        }
        Format::Dot => return Err(unsupported(format, "returns")),
    };
    Ok(Output {
        text,
        code: if matches == Some(false) { 1 } else { 0 },
    })
}

fn check_p(input: &MorphismInput, cross_check: Option<CrossCheck>, format: Format) -> Result<Output> {
    let (sigma, u) = load_with_word(input)?;
    let a = sigma.alphabet();
    let v = check_preservation(&sigma, &u, cross_check.is_some())?;
    let text = match format {
        Format::Json => json_out(json!({
            "morphism": sigma.render(),
            "u": a.render(&v.u),
            "holds_p": v.holds_p,
            "holds_p_prime": v.holds_p_prime,
            "image_of_returns": set_json(a, &v.lhs),
            "returns_of_image": set_json(a, &v.rhs),
            "witness": v.witness.as_ref().map(|w| a.render(w)),
            "oracle_agrees": v.oracle_agrees,
        })),
        Format::Table | Format::Tsv => {
            let mut s = String::new();
            writeln!(s, "(P)\t{}", if v.holds_p { "holds" } else { "fails" })?;
            writeln!(s, "(P′)\t{}", if v.holds_p_prime { "holds" } else { "fails" })?;
            for w in &v.lhs {
                writeln!(s, "σ(R_u)\t{}", a.render(w))?;
            }
            for w in &v.rhs {
                writeln!(s, "R_σ(u)\t{}", a.render(w))?;
            }
            if let Some(w) = &v.witness {
                writeln!(s, "witness\t{}", a.render(w))?;
            }
            if let Some(agrees) = v.oracle_agrees {
                writeln!(s, "oracle\t{}", if agrees { "agrees" } else { "disagrees" })?;
            }
            s
        }
        Format::Dot => return Err(unsupported(format, "check-p")),
    };
    Ok(Output::ok(text))
}

fn obstructions(
    input: &MorphismInput,
    n_max: usize,
    cross_check: Option<CrossCheck>,
    lemmas: Option<usize>,
    format: Format,
) -> Result<Output> {
    let sigma = load_plain(input)?;
    let a = sigma.alphabet();
    let report = run_obstruction_suite(&sigma, n_max, cross_check.is_some())?;
    let lemma_report = lemmas.map(|len| lemma_checks(&sigma, n_max, len)).transpose()?;
    let r = &report.min_letter;
    let text = match format {
        Format::Json => {
            let mut v = json!({
                "morphism": sigma.render(),
                "directive": directive_word(&sigma)?.render(a),
                "a_min": a.symbol(r.a_min).to_string(),
                "index": r.ind,
                "j": r.j,
                "m": r.m,
                "case": format!("{:?}", report.case).to_lowercase(),
                "onset": report.onset,
                "words": report.tested.iter().map(|t| json!({
                    "n": t.obstruction.n,
                    "family": format!("{:?}", t.obstruction.family).to_lowercase(),
                    "word": a.render(&t.obstruction.word),
                    "holds_p": t.verdict.holds_p,
                    "holds_p_prime": t.verdict.holds_p_prime,
                    "witness": t.verdict.witness.as_ref().map(|w| a.render(w)),
                    "oracle_agrees": t.verdict.oracle_agrees,
                })).collect::<Vec<_>>(),
            });
            if let Some(l) = &lemma_report {
                v["lemmas"] = json!({
                    "checks": l.checks,
                    "violations": l.violations,
                    "placement_threshold": l.placement_threshold,
                });
            }
            json_out(v)
        }
        Format::Table | Format::Tsv => {
            let mut s = String::new();
            writeln!(
                s,
                "# a_min={} ind={} j={} m={} case={:?} onset={}",
                a.symbol(r.a_min),
                r.ind,
                r.j,
                r.m,
                report.case,
                report.onset.map_or("none".to_string(), |o| o.to_string())
            )?;
            writeln!(s, "n\tfamily\tword\t(P)")?;
            for t in &report.tested {
                writeln!(
                    s,
                    "{}\t{:?}\t{}\t{}",
                    t.obstruction.n,
                    t.obstruction.family,
                    a.render(&t.obstruction.word),
                    if t.verdict.holds_p { "holds" } else { "fails" }
                )?;
            }
            if let Some(l) = &lemma_report {
                writeln!(s, "# lemma checks {} violations {}", l.checks, l.violations.len())?;
                for v in &l.violations {
                    writeln!(s, "# {v}")?;
                }
            }
            s
        }
        Format::Dot => return Err(unsupported(format, "obstructions")),
    };
    let violated = lemma_report.is_some_and(|l| !l.violations.is_empty());
    Ok(Output {
        text,
        code: u8::from(violated),
    })
}

fn verify_cmd(full: bool, seed: u64, format: Format) -> Result<Output> {
    let bounds = if full { Bounds::full() } else { Bounds::quick() };
    let outcomes = verify::run_all(&bounds, seed);
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    let text = match format {
        Format::Json => json_out(json!({
            "mode": if full { "full" } else { "quick" },
            "seed": seed,
            "checks": outcomes.iter().map(|o| json!({
                "name": o.name,
                "passed": o.passed(),
                "cases": o.cases,
                "violations": o.violations,
                "notes": o.notes,
            })).collect::<Vec<_>>(),
            "failed": failed,
        })),
        Format::Table | Format::Tsv => {
            let mut s = String::new();
            for o in &outcomes {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                writeln!(s, "{status}\t{}\t{} cases", o.name, o.cases)?;
                for v in o.violations.iter().take(5) {
                    writeln!(s, "\t{v}")?;
                }
            }
            writeln!(s, "{} of {} checks passed", outcomes.len() - failed, outcomes.len())?;
            s
        }
        Format::Dot => return Err(unsupported(format, "verify")),
    };
    Ok(Output {
        text,
        code: u8::from(failed > 0),
    })
}

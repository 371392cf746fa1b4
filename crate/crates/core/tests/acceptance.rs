use episturm::verify::{self, Bounds, CheckOutcome, OnsetRecord};

fn report(id: usize, outcome: &CheckOutcome) -> bool {
    let status = if outcome.passed() { "PASS" } else { "FAIL" };
    println!(
        "criterion {id:>2}: {status} {} ({} cases, {:.2?})",
        outcome.name, outcome.cases, outcome.elapsed
    );
    for note in &outcome.notes {
        println!("              {note}");
    }
    for v in outcome.violations.iter().take(10) {
        println!("              violation: {v}");
    }
    outcome.passed()
}

fn compare_onsets(outcome: &mut CheckOutcome, records: &[OnsetRecord]) {
    let golden = include_str!("data/onsets.tsv");
    let rendered: Vec<String> = records
        .iter()
        .map(|r| {
            let onset = r.onset.map_or("-".to_string(), |o| o.to_string());
            format!("{}\t{:?}\t{}\t{onset}", r.sigma, r.case, r.tested)
        })
        .collect();
    let expected: Vec<&str> = golden.lines().skip(1).collect();
    if rendered.len() != expected.len() {
        outcome
            .violations
            .push(format!("{} onset records, golden data has {}", rendered.len(), expected.len()));
    }
    for (got, want) in rendered.iter().zip(&expected) {
        if got != want {
            outcome.violations.push(format!("onset record {got:?}, golden {want:?}"));
        }
    }
}

fn main() {
    let bounds = Bounds::full();
    let (mut main, records) = verify::check_main_theorem(&bounds);
    compare_onsets(&mut main, &records);
    let outcomes = [
        verify::check_table_one(),
        verify::check_example_returns(),
        verify::check_rauzy_annotations(),
        verify::check_pal(&bounds),
        verify::check_justin(&bounds),
        verify::check_conjugacy(&bounds),
        verify::check_minimal_letter(&bounds),
        verify::check_evolution(&bounds),
        verify::check_returns(&bounds),
        main,
        verify::check_negative_controls(),
    ];
    let failed: Vec<usize> = outcomes
        .iter()
        .enumerate()
        .filter(|(i, o)| !report(i + 1, o))
        .map(|(i, _)| i + 1)
        .collect();
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

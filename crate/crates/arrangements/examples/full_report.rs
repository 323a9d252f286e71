//! The canonical JSON report produced by the full pipeline.
//!
//! Reports have sorted keys, exact rationals as strings, deterministic
//! array orders and a trailing newline; two runs on the same input are
//! byte-identical.  This prints the complete report for the case-B
//! arrangement at the degree bound where its growth certificate completes.
//!
//! Run with: `cargo run --example full_report`

use arrangements::report::{analyze_str, bundled_corpus, report_json, AnalysisOptions};

fn main() {
    let text = bundled_corpus()
        .into_iter()
        .find(|(name, _)| *name == "case_b_three")
        .map(|(_, text)| text)
        .unwrap();
    let analysis = analyze_str(
        text,
        &AnalysisOptions {
            max_degree: 10,
            ..AnalysisOptions::default()
        },
    )
    .unwrap();
    print!("{}", report_json(&analysis));
}

//! Growth certificates corroborating the hyperbolic verdicts.
//!
//! Case A: the model's homotopy ranks must dominate the free-Lie ranks on
//! the witness loop degrees in every checked degree (the comparison table
//! is printed).  Case B: the homotopy ranks summed over the upper half of
//! the degree window must strictly exceed the lower half.
//!
//! Run with: `cargo run --example hyperbolic_certificate`

use arrangements::report::{analyze_str, bundled_corpus, AnalysisOptions};
use arrangements::GrowthCertificate;

fn main() {
    for (name, max_degree) in [("two_share_line", 8), ("case_b_three", 10)] {
        let text = bundled_corpus()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| text)
            .unwrap();
        let analysis = analyze_str(
            text,
            &AnalysisOptions {
                max_degree,
                ..AnalysisOptions::default()
            },
        )
        .unwrap();
        match analysis.certificate.as_ref().unwrap() {
            GrowthCertificate::FreeLieLowerBound {
                loop_degrees,
                checked_through,
                comparisons,
            } => {
                println!(
                    "{name}: free-Lie lower bound on loop degrees ({}, {}), checked through degree {checked_through}",
                    loop_degrees.0, loop_degrees.1
                );
                println!("  k   rank pi_(k+1)   free-Lie bound");
                for (k, model, oracle) in comparisons {
                    println!("  {k:<3} {model:<14} {oracle}");
                }
            }
            GrowthCertificate::WindowGrowth {
                split,
                low_range,
                high_range,
                low_sum,
                high_sum,
            } => {
                println!("{name}: rank growth across the split at degree {split}");
                println!(
                    "  degrees [{}, {}] carry {} generators; degrees [{}, {}] carry {}",
                    low_range.0, low_range.1, low_sum, high_range.0, high_range.1, high_sum
                );
                println!("  strict growth: {high_sum} > {low_sum}");
            }
        }
        println!();
    }
}

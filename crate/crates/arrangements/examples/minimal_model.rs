//! Degree-bounded minimal models: generators, differentials, homotopy ranks.
//!
//! Builds the model of a wedge of two 3-spheres (free homotopy growth) and
//! of the two_share_line arrangement cohomology, printing each generator
//! with its differential.  Generator counts per degree are the rational
//! homotopy ranks of the space.
//!
//! Run with: `cargo run --example minimal_model`

use arrangements::report::{analyze_str, bundled_corpus, AnalysisOptions};
use arrangements::{minimal_model, verify, GradedAlgebra, MinimalModel, ModelLimits};

fn describe(model: &MinimalModel) {
    for (i, gen) in model.generators().iter().enumerate() {
        let differential = model.format_differential(i);
        println!(
            "  {} (degree {}): d{} = {}",
            gen.label, gen.degree, gen.label, differential
        );
    }
    let ranks: Vec<String> = model
        .homotopy_ranks()
        .into_iter()
        .map(|(k, c)| format!("{k}:{c}"))
        .collect();
    println!("  homotopy ranks: {}", ranks.join("  "));
}

fn main() {
    let limits = ModelLimits {
        max_degree: 9,
        ..ModelLimits::default()
    };

    println!("minimal model of S^3 v S^3 (degrees ≤ {}):", limits.max_degree);
    let wedge = GradedAlgebra::spheres(&[3, 3]);
    let model = minimal_model(&wedge, &limits).unwrap();
    verify(&model).unwrap();
    describe(&model);

    println!("\nminimal model of the two_share_line complement (degrees ≤ 9):");
    let text = bundled_corpus()
        .into_iter()
        .find(|(name, _)| *name == "two_share_line")
        .map(|(_, text)| text)
        .unwrap();
    let analysis = analyze_str(
        text,
        &AnalysisOptions {
            max_degree: 9,
            ..AnalysisOptions::default()
        },
    )
    .unwrap();
    describe(&analysis.model);
}

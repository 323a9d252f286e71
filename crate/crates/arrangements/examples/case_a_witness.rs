//! The case-A hyperbolicity witness: a truncated exterior algebra that
//! cohomology retracts onto.
//!
//! When some product of atom classes vanishes, the subalgebra generated by
//! those atoms is an exterior algebra modulo its top product.  The witness
//! construction verifies the retraction (a multiplicative chain map one way,
//! a section of it the other way) and reads off two loop-space degrees that
//! pin a free graded Lie algebra inside the homotopy of the complement.
//!
//! Run with: `cargo run --example case_a_witness`

use arrangements::report::{analyze_str, bundled_corpus, AnalysisOptions};
use arrangements::Witness;

fn main() {
    let text = bundled_corpus()
        .into_iter()
        .find(|(name, _)| *name == "two_share_line")
        .map(|(_, text)| text)
        .unwrap();
    let analysis = analyze_str(text, &AnalysisOptions::default()).unwrap();
    let Some(Witness::Monomial(w)) = &analysis.witness else {
        panic!("expected a vanishing-monomial witness");
    };

    let names: Vec<&str> = w
        .atoms
        .iter()
        .map(|&i| analysis.lattice.arrangement().atom_name(i))
        .collect();
    println!("witness atoms: {}", names.join(", "));
    println!("generator degrees: {:?}", w.generator_degrees);
    println!("kernel word length r = {}", w.r);
    println!(
        "algebra dimensions by word length: {:?} (total {})",
        w.algebra.dims_by_length(),
        w.algebra.total_dim()
    );
    println!(
        "free-Lie generators in the loop space at degrees ({}, {})",
        w.lower_bound_degrees.0, w.lower_bound_degrees.1
    );
    println!("verified checks:");
    for check in &w.verified {
        println!("  - {check}");
    }
}

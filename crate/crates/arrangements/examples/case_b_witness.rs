//! The case-B hyperbolicity witness: an exterior algebra truncated above
//! word length r and cut by alternating boundary relations.
//!
//! When the kernel of the atom-class map contains no monomial, the witness
//! comes instead from the first (r+1)-subset with nonzero differential: its
//! join X, the atoms below X, and the bracket relations among them.  The
//! construction verifies the quotient dimensions, the bracket span rank,
//! and the retraction identities exactly.
//!
//! Run with: `cargo run --example case_b_witness`

use arrangements::report::{analyze_str, bundled_corpus, AnalysisOptions};
use arrangements::Witness;

fn main() {
    let text = bundled_corpus()
        .into_iter()
        .find(|(name, _)| *name == "case_b_three")
        .map(|(_, text)| text)
        .unwrap();
    let analysis = analyze_str(text, &AnalysisOptions::default()).unwrap();
    let Some(Witness::Boundary(w)) = &analysis.witness else {
        panic!("expected a boundary witness");
    };

    let name_of = |i: usize| analysis.lattice.arrangement().atom_name(i);
    let subset: Vec<&str> = w.boundary_subset.iter().map(|&i| name_of(i)).collect();
    let atoms: Vec<&str> = w.atoms.iter().map(|&i| name_of(i)).collect();
    println!("first subset with nonzero differential: {{{}}}", subset.join(", "));
    println!(
        "its join X has rank {} and codimension {}",
        w.join_rank, w.join_codim
    );
    println!("atoms below X: {{{}}} (m = {})", atoms.join(", "), atoms.len());
    println!("kernel word length r = {}", w.r);
    println!("algebra dimensions by word length: {:?}", w.dims_by_length);
    println!(
        "length-{} basis words (always led by the first atom): {:?}",
        w.r,
        w.algebra.basis_words(w.r)
    );
    println!("bracket relation span has rank {}", w.bracket_rank);
    println!("verified checks:");
    for check in &w.verified {
        println!("  - {check}");
    }
}

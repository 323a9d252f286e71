//! Builds intersection lattices and runs the geometric-lattice test.
//!
//! Every analysis starts here: subspaces are validated and deduplicated,
//! the lattice of all intersections is enumerated, and the geometric
//! property (atomistic + semimodular) is checked — the rest of the pipeline
//! refuses non-geometric input.
//!
//! Run with: `cargo run --example build_lattice`

use arrangements::report::{bundled_corpus, ArrangementFile};
use arrangements::{build_lattice, is_geometric, normalize};

fn main() {
    for target in ["two_share_line", "case_b_three", "non_geometric"] {
        let text = bundled_corpus()
            .into_iter()
            .find(|(name, _)| *name == target)
            .map(|(_, text)| text)
            .unwrap();
        let file = ArrangementFile::parse(text).unwrap();
        let (ambient_dim, subspaces) = file.to_input().unwrap();
        let (arrangement, warnings) = normalize(ambient_dim, subspaces).unwrap();
        for w in &warnings {
            println!("warning: {w}");
        }
        let lattice = build_lattice(arrangement).unwrap();

        println!(
            "{target}: {} atoms in C^{}, {} lattice elements",
            lattice.atom_count(),
            lattice.arrangement().ambient_dim(),
            lattice.element_count()
        );
        for e in 0..lattice.element_count() {
            let atoms: Vec<&str> = lattice
                .atoms_below(e)
                .iter()
                .map(|&i| lattice.arrangement().atom_name(i))
                .collect();
            let label = if atoms.is_empty() {
                "whole space".to_string()
            } else {
                atoms.join(" v ")
            };
            println!(
                "  element {e}: {label}  (rank {}, codim {})",
                lattice.rank_of(e),
                lattice.codim_of(e)
            );
        }
        let check = is_geometric(&lattice);
        match check.violation {
            None => println!("  geometric: yes"),
            Some(v) => println!("  geometric: no — {v:?}"),
        }
        println!();
    }
}

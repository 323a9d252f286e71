//! Betti numbers of arrangement complements from the cochain algebra.
//!
//! Prints the Betti table of every bundled geometric arrangement and, for
//! the elliptic ones, checks it against the closed form for a product of
//! odd spheres: the coefficients of Π (1 + t^{2·codim − 1}).
//!
//! Run with: `cargo run --example betti_numbers`

use arrangements::cohomology::check_exterior_iso;
use arrangements::report::{bundled_corpus, ArrangementFile};
use arrangements::{build_lattice, normalize, AtomicAlgebra, CohomologyRing};

fn main() {
    for (name, text) in bundled_corpus() {
        if name == "non_geometric" {
            continue;
        }
        let file = ArrangementFile::parse(text).unwrap();
        let (ambient_dim, subspaces) = file.to_input().unwrap();
        let (arrangement, _) = normalize(ambient_dim, subspaces).unwrap();
        let lattice = build_lattice(arrangement).unwrap();
        let dga = AtomicAlgebra::new(&lattice);
        let h = CohomologyRing::compute(&dga);

        let table: Vec<String> = h
            .betti_table()
            .into_iter()
            .map(|(d, b)| format!("b_{d} = {b}"))
            .collect();
        println!("{name}: {}", table.join(", "));

        match check_exterior_iso(&h) {
            Ok(expected) => {
                let spheres: Vec<String> = h
                    .sphere_dimensions()
                    .into_iter()
                    .map(|d| format!("S^{d}"))
                    .collect();
                println!(
                    "  matches the exterior algebra of {} ({} degrees checked)",
                    spheres.join(" x "),
                    expected.len()
                );
            }
            Err(e) => println!("  not a sphere product: {e}"),
        }
    }
}

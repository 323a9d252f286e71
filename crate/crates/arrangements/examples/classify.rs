//! Elliptic-versus-hyperbolic classification of every bundled arrangement.
//!
//! The verdict comes from the kernel of the map sending exterior generators
//! to atom classes in cohomology: no kernel means the complement is
//! rationally a product of odd spheres; otherwise the shortest kernel word
//! length r and the kind of kernel witness (vanishing monomial vs. pure
//! combination) decide the hyperbolic case.
//!
//! Run with: `cargo run --example classify`

use arrangements::cohomology::HyperbolicWitness;
use arrangements::report::{analyze_str, AnalysisOptions, bundled_corpus};
use arrangements::Classification;

fn main() {
    for (name, text) in bundled_corpus() {
        match analyze_str(text, &AnalysisOptions::default()) {
            Ok(analysis) => match &analysis.classification {
                Classification::Elliptic { sphere_dims } => {
                    let spheres: Vec<String> =
                        sphere_dims.iter().map(|d| format!("S^{d}")).collect();
                    println!("{name}: elliptic — {}", spheres.join(" x "));
                }
                Classification::Hyperbolic { r, witness } => match witness {
                    HyperbolicWitness::MonomialKernel { word } => {
                        let monomial: Vec<String> = word
                            .iter()
                            .map(|&i| {
                                format!("e_{}", analysis.lattice.arrangement().atom_name(i))
                            })
                            .collect();
                        println!(
                            "{name}: hyperbolic case A — r = {r}, vanishing monomial {}",
                            monomial.join("·")
                        );
                    }
                    HyperbolicWitness::CombinationKernel { kernel } => {
                        println!(
                            "{name}: hyperbolic case B — r = {r}, kernel of dimension {} with no vanishing monomial",
                            kernel.len()
                        );
                    }
                },
            },
            Err(e) => println!("{name}: rejected — {e}"),
        }
    }
}

//! The cochain algebra of an arrangement: basis, differential, product.
//!
//! The algebra has one generator per subset of atoms, graded by
//! 2·codim(join) − size.  The differential drops single atoms when the join
//! survives; the product merges disjoint subsets when codimensions add.
//! This example prints all of that for the three-atom arrangement whose
//! pairwise intersections all equal the origin, and spot-checks d² = 0.
//!
//! Run with: `cargo run --example dga_basics`

use arrangements::report::{bundled_corpus, ArrangementFile};
use arrangements::dga::SubsetGen;
use arrangements::{build_lattice, normalize, AtomicAlgebra};

fn main() {
    let text = bundled_corpus()
        .into_iter()
        .find(|(name, _)| *name == "case_b_three")
        .map(|(_, text)| text)
        .unwrap();
    let file = ArrangementFile::parse(text).unwrap();
    let (ambient_dim, subspaces) = file.to_input().unwrap();
    let (arrangement, _) = normalize(ambient_dim, subspaces).unwrap();
    let lattice = build_lattice(arrangement).unwrap();
    let dga = AtomicAlgebra::new(&lattice);

    println!("basis by degree:");
    for degree in dga.degrees().collect::<Vec<_>>() {
        let names: Vec<String> = dga
            .basis_in_degree(degree)
            .iter()
            .map(|s| subset_label(s))
            .collect();
        println!("  degree {degree}: {}", names.join(", "));
    }

    println!("\ndifferentials:");
    for mask in 0..(1usize << dga.atom_count()) {
        let gen = SubsetGen::from_mask(mask);
        let image = dga.differential_gen(&gen);
        if !image.is_zero() {
            let terms: Vec<String> = image
                .terms()
                .map(|(t, c)| format!("{c}·{}", subset_label(t)))
                .collect();
            println!("  d {} = {}", subset_label(&gen), terms.join(" + "));
        }
    }

    println!("\nnonzero products of singletons:");
    for i in 0..dga.atom_count() {
        for j in (i + 1)..dga.atom_count() {
            let (a, b) = (SubsetGen::singleton(i), SubsetGen::singleton(j));
            match dga.product_gen(&a, &b) {
                Some((merged, sign)) => println!(
                    "  {} · {} = {sign:+}·{}",
                    subset_label(&a),
                    subset_label(&b),
                    subset_label(&merged)
                ),
                None => println!(
                    "  {} · {} = 0 (codimensions do not add)",
                    subset_label(&a),
                    subset_label(&b)
                ),
            }
        }
    }

    let squares_vanish = (0..(1usize << dga.atom_count()))
        .map(SubsetGen::from_mask)
        .all(|s| dga.differential(&dga.differential_gen(&s)).is_zero());
    println!("\nd² = 0 on every basis element: {squares_vanish}");
}

fn subset_label(s: &SubsetGen) -> String {
    if s.is_empty() {
        return "1".into();
    }
    s.indices()
        .iter()
        .map(|i| format!("x{}", i + 1))
        .collect::<Vec<_>>()
        .join("")
}

//! Exact ranks of free graded Lie algebras from the PBW factorization.
//!
//! The universal enveloping algebra of a free graded Lie algebra is the
//! tensor algebra, whose Hilbert series 1/(1 − Σ t^{|g|}) factors over the
//! Lie ranks c_k as Π_{k odd}(1+t^k)^{c_k} · Π_{k even}(1−t^k)^{−c_k}.
//! Solving degree by degree gives the ranks exactly — including the Witt
//! numbers for two even generators.
//!
//! Run with: `cargo run --example free_lie_oracle`

use arrangements::free_lie_ranks;

fn main() {
    for (label, degrees, max) in [
        ("two generators of degree 2 (Witt numbers)", vec![2, 2], 12),
        ("generators of degrees 2 and 4", vec![2, 4], 12),
        ("one odd generator of degree 3", vec![3], 9),
        ("loop degrees 2, 2, 3 of the two_share_line complement", vec![2, 2, 3], 11),
    ] {
        let ranks: Vec<String> = free_lie_ranks(&degrees, max)
            .into_iter()
            .map(|(k, c)| format!("{k}:{c}"))
            .collect();
        println!("{label}: {}", ranks.join("  "));
    }
}

//! The relative atomic differential graded algebra of an arrangement.
//!
//! The underlying graded vector space has one basis generator per subset σ of
//! the atoms, in degree `2·codim(∨σ) − |σ|`.  The differential drops one atom
//! at a time, keeping only drops that do not change the join:
//!
//! ```text
//! dσ = Σ_j (−1)^j (σ ∖ {xⱼ})     over j with ∨(σ ∖ {xⱼ}) = ∨σ,
//! ```
//!
//! where `j` is the **1-based** position of the dropped atom in the sorted
//! subset — that offset is what makes d square to zero against the product
//! sign convention below.  The product of two subset generators is
//! `±(σ ∪ τ)` when σ and τ are disjoint and codimension is additive on the
//! join (`codim ∨σ + codim ∨τ = codim ∨(σ∪τ)`), and zero otherwise; the sign
//! is the parity of the number of out-of-order pairs when the concatenation
//! σ···τ is sorted.  Cochains are homogeneous by construction: adding terms
//! of different degrees is a programming error, not a data state.

use crate::lattice::{ElemId, IntersectionLattice};
use crate::linalg::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A basis generator: a strictly increasing sequence of atom indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubsetGen(Vec<usize>);

impl SubsetGen {
    /// Builds a generator from arbitrary indices (sorted, deduplicated).
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        SubsetGen(indices)
    }

    pub fn empty() -> Self {
        SubsetGen(Vec::new())
    }

    pub fn singleton(i: usize) -> Self {
        SubsetGen(vec![i])
    }

    pub fn from_mask(mut mask: usize) -> Self {
        let mut v = Vec::new();
        while mask != 0 {
            let i = mask.trailing_zeros() as usize;
            v.push(i);
            mask &= mask - 1;
        }
        SubsetGen(v)
    }

    pub fn mask(&self) -> usize {
        self.0.iter().fold(0, |m, &i| m | (1 << i))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubsetGen) -> bool {
        self.0.iter().all(|i| other.contains(*i))
    }

    /// The subset with the element at (0-based) position `p` removed.
    pub fn without_position(&self, p: usize) -> SubsetGen {
        let mut v = self.0.clone();
        v.remove(p);
        SubsetGen(v)
    }

    pub fn is_disjoint_from(&self, other: &SubsetGen) -> bool {
        self.mask() & other.mask() == 0
    }

    pub fn union(&self, other: &SubsetGen) -> SubsetGen {
        SubsetGen::from_mask(self.mask() | other.mask())
    }
}

impl fmt::Display for SubsetGen {
    /// Renders with 1-based atom numbers, e.g. `{x1,x3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Number of pairs (s, t) with s ∈ σ, t ∈ τ and s > t; its parity is the
/// sign of sorting the concatenation of two disjoint sorted subsets.
pub fn cross_inversions(sigma: &SubsetGen, tau: &SubsetGen) -> usize {
    let mut count = 0;
    for &s in sigma.indices() {
        for &t in tau.indices() {
            if s > t {
                count += 1;
            }
        }
    }
    count
}

/// A homogeneous element of the algebra: a rational combination of subset
/// generators of a single degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: i64,
    terms: BTreeMap<SubsetGen, Rat>,
}

impl Cochain {
    pub fn zero(degree: i64) -> Self {
        Cochain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SubsetGen, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, gen: &SubsetGen) -> Rat {
        self.terms.get(gen).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `coeff · gen`, dropping the term if it cancels.
    pub fn add_term(&mut self, gen: SubsetGen, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(gen).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            // Re-borrow to remove: find the key we just zeroed.
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    /// Sum of two cochains of the same degree.
    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(
            self.degree, other.degree,
            "cannot add cochains of different degrees"
        );
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Cochain {
        let mut out = Cochain::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        for (g, v) in &self.terms {
            out.add_term(g.clone(), c * v);
        }
        out
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·{}", crate::linalg::format_rat(c), g)?;
        }
        Ok(())
    }
}

/// The relative atomic DGA of an intersection lattice, with the degree of
/// every atom subset precomputed.
pub struct AtomicAlgebra<'a> {
    lattice: &'a IntersectionLattice,
    degree_of_mask: Vec<i64>,
    by_degree: BTreeMap<i64, Vec<SubsetGen>>,
}

impl<'a> AtomicAlgebra<'a> {
    pub fn new(lattice: &'a IntersectionLattice) -> Self {
        let n = lattice.atom_count();
        let mut degree_of_mask = Vec::with_capacity(1 << n);
        let mut by_degree: BTreeMap<i64, Vec<SubsetGen>> = BTreeMap::new();
        for mask in 0..1usize << n {
            let join = lattice.join_of_mask(mask);
            let degree = 2 * lattice.codim_of(join) as i64 - mask.count_ones() as i64;
            degree_of_mask.push(degree);
            by_degree
                .entry(degree)
                .or_default()
                .push(SubsetGen::from_mask(mask));
        }
        // Basis order inside a degree is lexicographic on index sequences.
        for gens in by_degree.values_mut() {
            gens.sort();
        }
        AtomicAlgebra {
            lattice,
            degree_of_mask,
            by_degree,
        }
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        self.lattice
    }

    pub fn atom_count(&self) -> usize {
        self.lattice.atom_count()
    }

    /// Lattice join of the subset.
    pub fn join_of(&self, gen: &SubsetGen) -> ElemId {
        self.lattice.join_of_mask(gen.mask())
    }

    pub fn degree_of(&self, gen: &SubsetGen) -> i64 {
        self.degree_of_mask[gen.mask()]
    }

    /// All degrees that carry basis generators, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_degree.keys().copied()
    }

    /// Basis generators of one degree in lexicographic order.
    pub fn basis_in_degree(&self, degree: i64) -> &[SubsetGen] {
        self.by_degree.get(&degree).map_or(&[], Vec::as_slice)
    }

    /// Differential of a basis generator.
    pub fn differential_gen(&self, gen: &SubsetGen) -> Cochain {
        let mut out = Cochain::zero(self.degree_of(gen) + 1);
        let join = self.join_of(gen);
        for p in 0..gen.len() {
            let dropped = gen.without_position(p);
            if self.join_of(&dropped) == join {
                // 1-based position p+1 gives the sign (−1)^(p+1).
                let sign = if (p + 1) % 2 == 0 { 1 } else { -1 };
                out.add_term(dropped, crate::linalg::rat(sign));
            }
        }
        out
    }

    /// Differential extended linearly.
    pub fn differential(&self, c: &Cochain) -> Cochain {
        let mut out = Cochain::zero(c.degree() + 1);
        for (g, coeff) in c.terms() {
            out = out.add(&self.differential_gen(g).scale(coeff));
        }
        out
    }

    /// Product of two basis generators: `Some((σ∪τ, sign))` when nonzero.
    pub fn product_gen(&self, sigma: &SubsetGen, tau: &SubsetGen) -> Option<(SubsetGen, i64)> {
        if !sigma.is_disjoint_from(tau) {
            return None;
        }
        let union = sigma.union(tau);
        let codim_sum = self.lattice.codim_of(self.join_of(sigma))
            + self.lattice.codim_of(self.join_of(tau));
        if self.lattice.codim_of(self.join_of(&union)) != codim_sum {
            return None;
        }
        let sign = if cross_inversions(sigma, tau) % 2 == 0 {
            1
        } else {
            -1
        };
        Some((union, sign))
    }

    /// Product extended bilinearly.
    pub fn product(&self, a: &Cochain, b: &Cochain) -> Cochain {
        let mut out = Cochain::zero(a.degree() + b.degree());
        for (s, cs) in a.terms() {
            for (t, ct) in b.terms() {
                if let Some((u, sign)) = self.product_gen(s, t) {
                    out.add_term(u, cs * ct * crate::linalg::rat(sign));
                }
            }
        }
        out
    }

    /// The generator cochain of a single subset.
    pub fn gen_cochain(&self, gen: &SubsetGen) -> Cochain {
        let mut c = Cochain::zero(self.degree_of(gen));
        c.add_term(gen.clone(), crate::linalg::rat(1));
        c
    }
}

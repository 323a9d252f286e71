//! Cohomology of the relative atomic algebra and the atom-class map.
//!
//! Cohomology is computed degree by degree as `ker d / im d` with exact
//! rational quotients; classes are coordinate vectors in a deterministic
//! quotient basis of selected cycle vectors.
//!
//! On top of the ring sits the multiplicative map φ from the exterior
//! algebra on generators e_1, …, e_n (one per atom, degree 2·codim − 1, all
//! odd) that sends e_i to the class of the singleton {x_i}.  The complement
//! is rationally elliptic precisely when φ is injective; otherwise the
//! shortest word length r carrying kernel, together with the shape of that
//! kernel (a vanishing monomial, or only true combinations), drives the
//! hyperbolic witness construction downstream.

use crate::dga::{AtomicAlgebra, Cochain, SubsetGen};
use crate::exterior::{words_of_length, ExtElement};
use crate::linalg::{coset_representatives, vec_is_zero, QMat, Quotient, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("Betti number in degree {degree} is {got}, sphere-product polynomial predicts {expected}")]
    BettiMismatch {
        degree: i64,
        expected: usize,
        got: usize,
    },
    #[error("product of atom classes {word:?} vanishes although the map should be injective")]
    VanishingProduct { word: Vec<usize> },
}

/// One graded piece: the subset basis of the degree and the quotient
/// cycles-mod-boundaries.
#[derive(Clone, Debug)]
struct DegreeComponent {
    basis: Vec<SubsetGen>,
    index: BTreeMap<SubsetGen, usize>,
    quotient: Quotient,
}

/// A cohomology class: coordinates in the quotient basis of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HClass {
    pub degree: i64,
    pub coords: Vec<Rat>,
}

impl HClass {
    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.coords)
    }
}

/// The full cohomology ring of the relative atomic algebra.
pub struct CohomologyRing<'a> {
    dga: &'a AtomicAlgebra<'a>,
    components: BTreeMap<i64, DegreeComponent>,
}

impl<'a> CohomologyRing<'a> {
    /// Computes every graded piece of the cohomology.
    pub fn compute(dga: &'a AtomicAlgebra<'a>) -> Self {
        let mut components = BTreeMap::new();
        let degrees: Vec<i64> = dga.degrees().collect();
        for &k in &degrees {
            let basis = dga.basis_in_degree(k).to_vec();
            let index: BTreeMap<SubsetGen, usize> = basis
                .iter()
                .enumerate()
                .map(|(i, g)| (g.clone(), i))
                .collect();

            // Matrix of d : degree k → degree k+1 for the cycle space.
            let next = dga.basis_in_degree(k + 1);
            let next_index: BTreeMap<&SubsetGen, usize> =
                next.iter().enumerate().map(|(i, g)| (g, i)).collect();
            let mut d_k = QMat::zero(next.len(), basis.len());
            for (col, g) in basis.iter().enumerate() {
                for (t, c) in dga.differential_gen(g).terms() {
                    d_k.set(next_index[t], col, c.clone());
                }
            }
            let cycles = d_k.kernel_basis();

            // Boundaries: images of the previous degree's generators.
            let mut boundaries = Vec::new();
            for g in dga.basis_in_degree(k - 1) {
                let image = dga.differential_gen(g);
                if !image.is_zero() {
                    let mut v = vec![Rat::zero(); basis.len()];
                    for (t, c) in image.terms() {
                        v[index[t]] = c.clone();
                    }
                    boundaries.push(v);
                }
            }

            let quotient = coset_representatives(basis.len(), &boundaries, &cycles)
                .expect("boundaries are cycles because d² = 0");
            components.insert(
                k,
                DegreeComponent {
                    basis,
                    index,
                    quotient,
                },
            );
        }
        CohomologyRing { dga, components }
    }

    pub fn dga(&self) -> &AtomicAlgebra<'a> {
        self.dga
    }

    pub fn atom_count(&self) -> usize {
        self.dga.atom_count()
    }

    /// Betti number in one degree.
    pub fn betti(&self, degree: i64) -> usize {
        self.components
            .get(&degree)
            .map_or(0, |c| c.quotient.dim())
    }

    /// All nonzero Betti numbers, ascending by degree.
    pub fn betti_table(&self) -> BTreeMap<i64, usize> {
        self.components
            .iter()
            .filter(|(_, c)| c.quotient.dim() > 0)
            .map(|(&k, c)| (k, c.quotient.dim()))
            .collect()
    }

    /// Coordinates of a cochain in the subset basis of its degree.
    fn cochain_coords(&self, c: &Cochain) -> Vec<Rat> {
        let Some(comp) = self.components.get(&c.degree()) else {
            assert!(c.is_zero(), "cochain in a degree without basis");
            return Vec::new();
        };
        let mut v = vec![Rat::zero(); comp.basis.len()];
        for (g, coeff) in c.terms() {
            v[comp.index[g]] = coeff.clone();
        }
        v
    }

    /// The class of a cocycle.  Panics if the cochain is not closed.
    pub fn class_of_cocycle(&self, c: &Cochain) -> HClass {
        assert!(
            self.dga.differential(c).is_zero(),
            "class_of_cocycle needs a closed cochain"
        );
        let degree = c.degree();
        let Some(comp) = self.components.get(&degree) else {
            return HClass {
                degree,
                coords: Vec::new(),
            };
        };
        HClass {
            degree,
            coords: comp.quotient.project(&self.cochain_coords(c)),
        }
    }

    /// A representative cocycle of a class (a combination of the selected
    /// cycle vectors).
    pub fn representative(&self, h: &HClass) -> Cochain {
        let mut out = Cochain::zero(h.degree);
        let Some(comp) = self.components.get(&h.degree) else {
            assert!(h.is_zero());
            return out;
        };
        let ambient = comp.quotient.lift(&h.coords);
        for (i, coeff) in ambient.into_iter().enumerate() {
            if !coeff.is_zero() {
                out.add_term(comp.basis[i].clone(), coeff);
            }
        }
        out
    }

    pub fn zero_class(&self, degree: i64) -> HClass {
        HClass {
            degree,
            coords: vec![Rat::zero(); self.betti(degree)],
        }
    }

    pub fn unit_class(&self) -> HClass {
        let mut unit = Cochain::zero(0);
        unit.add_term(SubsetGen::empty(), crate::linalg::rat(1));
        self.class_of_cocycle(&unit)
    }

    /// Class of the singleton {x_i}; its degree is 2·codim(x_i) − 1.
    pub fn atom_class(&self, i: usize) -> HClass {
        self.class_of_cocycle(&self.dga.gen_cochain(&SubsetGen::singleton(i)))
    }

    /// Product of classes via representatives.
    pub fn multiply(&self, a: &HClass, b: &HClass) -> HClass {
        let product = self
            .dga
            .product(&self.representative(a), &self.representative(b));
        self.class_of_cocycle(&product)
    }

    /// Image under φ of the monomial word e_{i1}···e_{is} (strictly
    /// increasing 0-based indices).
    pub fn phi_word(&self, word: &[usize]) -> HClass {
        let mut acc = self.unit_class();
        for &i in word {
            acc = self.multiply(&acc, &self.atom_class(i));
        }
        acc
    }

    /// Dimensions of the spheres an elliptic complement decomposes into:
    /// the sorted multiset {2·codim(x_i) − 1}.
    pub fn sphere_dimensions(&self) -> Vec<i64> {
        let lat = self.dga.lattice();
        let mut dims: Vec<i64> = (0..lat.atom_count())
            .map(|i| 2 * lat.codim_of(lat.atom(i)) as i64 - 1)
            .collect();
        dims.sort_unstable();
        dims
    }
}

/// Kernel analysis of φ by word length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiAnalysis {
    pub atom_count: usize,
    /// For each word length s = 1, …, n the canonical kernel basis of
    /// φ restricted to words of length s (often empty).
    pub kernel_by_wordlength: BTreeMap<usize, Vec<ExtElement>>,
    /// Shortest word length carrying kernel; `None` when φ is injective.
    pub r: Option<usize>,
    /// Lexicographically first vanishing monomial of length r, if any.
    pub monomial_witness: Option<Vec<usize>>,
}

/// Computes ker φ word length by word length.
///
/// Words of equal length can land in different cohomological degrees when
/// atom codimensions differ; the kernel matrix therefore stacks one row
/// block per target degree.
pub fn analyze_phi(h: &CohomologyRing) -> PhiAnalysis {
    let n = h.atom_count();
    let mut kernel_by_wordlength = BTreeMap::new();
    let mut r = None;
    let mut monomial_witness = None;
    for s in 1..=n {
        let words = words_of_length(n, s);
        let images: Vec<HClass> = words.iter().map(|w| h.phi_word(w)).collect();
        let mut degree_offset: BTreeMap<i64, usize> = BTreeMap::new();
        let mut rows = 0;
        for im in &images {
            degree_offset.entry(im.degree).or_insert_with(|| {
                let o = rows;
                rows += h.betti(im.degree);
                o
            });
        }
        let mut matrix = QMat::zero(rows, words.len());
        for (col, im) in images.iter().enumerate() {
            let off = degree_offset[&im.degree];
            for (row, c) in im.coords.iter().enumerate() {
                matrix.set(off + row, col, c.clone());
            }
        }
        let kernel: Vec<ExtElement> = matrix
            .kernel_basis()
            .into_iter()
            .map(|v| {
                let mut e = ExtElement::zero();
                for (i, c) in v.into_iter().enumerate() {
                    e.add_term(words[i].clone(), c);
                }
                e
            })
            .collect();
        if !kernel.is_empty() && r.is_none() {
            r = Some(s);
            monomial_witness = words
                .iter()
                .zip(&images)
                .find(|(_, im)| im.is_zero())
                .map(|(w, _)| w.clone());
        }
        kernel_by_wordlength.insert(s, kernel);
    }
    PhiAnalysis {
        atom_count: n,
        kernel_by_wordlength,
        r,
        monomial_witness,
    }
}

/// Final verdict on the rational homotopy type of the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// φ injective: the complement is a product of odd spheres rationally.
    Elliptic { sphere_dims: Vec<i64> },
    /// φ has kernel at shortest word length r.
    Hyperbolic { r: usize, witness: HyperbolicWitness },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HyperbolicWitness {
    /// A single vanishing monomial of length r (case A).
    MonomialKernel { word: Vec<usize> },
    /// Kernel exists but contains no monomial (case B); the canonical kernel
    /// basis at word length r is carried along.
    CombinationKernel { kernel: Vec<ExtElement> },
}

/// Classifies from the kernel analysis.
pub fn classify(h: &CohomologyRing, analysis: &PhiAnalysis) -> Classification {
    match analysis.r {
        None => Classification::Elliptic {
            sphere_dims: h.sphere_dimensions(),
        },
        Some(r) => {
            let witness = match &analysis.monomial_witness {
                Some(word) => HyperbolicWitness::MonomialKernel { word: word.clone() },
                None => HyperbolicWitness::CombinationKernel {
                    kernel: analysis.kernel_by_wordlength[&r].clone(),
                },
            };
            Classification::Hyperbolic { r, witness }
        }
    }
}

/// Verification of the short-subset vanishing property: every subset of at
/// most r atoms has zero differential and independent join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortSubsetCheck {
    pub checked_up_to: usize,
    pub violation: Option<ShortSubsetViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShortSubsetViolation {
    NonzeroDifferential { subset: SubsetGen },
    DependentJoin { subset: SubsetGen, rank: usize },
}

impl ShortSubsetCheck {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that every subset σ with |σ| ≤ r satisfies dσ = 0 and
/// rank(∨σ) = |σ|.  With `r = None` (injective φ) the check is vacuous.
pub fn check_short_subsets(dga: &AtomicAlgebra, r: Option<usize>) -> ShortSubsetCheck {
    let Some(r) = r else {
        return ShortSubsetCheck {
            checked_up_to: 0,
            violation: None,
        };
    };
    let n = dga.atom_count();
    for size in 1..=r.min(n) {
        for word in words_of_length(n, size) {
            let subset = SubsetGen::new(word);
            if !dga.differential_gen(&subset).is_zero() {
                return ShortSubsetCheck {
                    checked_up_to: r,
                    violation: Some(ShortSubsetViolation::NonzeroDifferential { subset }),
                };
            }
            let rank = dga.lattice().rank_of(dga.join_of(&subset));
            if rank != subset.len() {
                return ShortSubsetCheck {
                    checked_up_to: r,
                    violation: Some(ShortSubsetViolation::DependentJoin { subset, rank }),
                };
            }
        }
    }
    ShortSubsetCheck {
        checked_up_to: r,
        violation: None,
    }
}

/// Cross-check for elliptic verdicts: the Betti table must agree with the
/// sphere-product polynomial Π(1 + t^{2·codim − 1}) and every product of
/// distinct atom classes must be nonzero.
///
/// Returns the polynomial's nonzero coefficients on success.
pub fn check_exterior_iso(h: &CohomologyRing) -> Result<BTreeMap<i64, usize>, CohomologyError> {
    let mut poly: BTreeMap<i64, usize> = BTreeMap::from([(0, 1)]);
    for d in h.sphere_dimensions() {
        let mut next = poly.clone();
        for (&k, &c) in &poly {
            *next.entry(k + d).or_insert(0) += c;
        }
        poly = next;
    }
    let betti = h.betti_table();
    for (&k, &expected) in &poly {
        let got = h.betti(k);
        if got != expected {
            return Err(CohomologyError::BettiMismatch {
                degree: k,
                expected,
                got,
            });
        }
    }
    for (&k, &got) in &betti {
        if poly.get(&k).copied().unwrap_or(0) != got {
            return Err(CohomologyError::BettiMismatch {
                degree: k,
                expected: 0,
                got,
            });
        }
    }
    let n = h.atom_count();
    for s in 1..=n {
        for word in words_of_length(n, s) {
            if h.phi_word(&word).is_zero() {
                return Err(CohomologyError::VanishingProduct { word });
            }
        }
    }
    Ok(poly)
}

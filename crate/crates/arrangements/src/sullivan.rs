//! Degree-bounded Sullivan minimal models and free-Lie rank oracles.
//!
//! The input is a finite-dimensional graded-commutative ℚ-algebra (the
//! cohomology of a formal, simply connected space) presented by dimensions
//! and structure constants.  The engine builds the minimal model (ΛV, d)
//! degree by degree up to a bound N: closed generators fix surjectivity of
//! the induced map on cohomology, generators with prescribed differentials
//! kill its kernel one degree up.  For formal spaces dim V^k equals
//! rank π_k ⊗ ℚ, so the generator counts are the homotopy ranks.
//!
//! Everything is verified after the fact by exact rank computations: d² = 0,
//! syntactic minimality, and the quasi-isomorphism property through N (plus
//! injectivity one degree beyond).
//!
//! The companion oracle computes ranks of free graded Lie algebras from the
//! Poincaré–Birkhoff–Witt factorisation of the tensor-algebra Hilbert
//! series; hyperbolic verdicts are corroborated against it.

use crate::cohomology::CohomologyRing;
use crate::linalg::{coset_representatives, QMat, Quotient, Rat};
use crate::witness::Witness;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("the algebra is not simply connected: dimension {dim} in degree 1")]
    NotSimplyConnected { dim: usize },
    #[error("invalid algebra presentation: {detail}")]
    InvalidAlgebra { detail: String },
    #[error("generator cap {cap} exceeded while building the model")]
    GeneratorCap { cap: usize },
    #[error("model verification failed: {detail}")]
    VerificationFailed { detail: String },
    #[error("growth certificate failed: {detail}")]
    CertificateFailed { detail: String },
}

/// A finite-dimensional graded-commutative ℚ-algebra: dimensions, basis
/// labels and structure constants in positive degrees; degree 0 is the span
/// of the unit.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    dims: BTreeMap<i64, usize>,
    labels: BTreeMap<i64, Vec<String>>,
    products: BTreeMap<(i64, usize, i64, usize), Vec<Rat>>,
}

impl GradedAlgebra {
    pub fn dim(&self, degree: i64) -> usize {
        if degree == 0 {
            1
        } else {
            self.dims.get(&degree).copied().unwrap_or(0)
        }
    }

    /// Nonzero dimensions in positive degrees, ascending.
    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn top_degree(&self) -> i64 {
        self.dims.keys().next_back().copied().unwrap_or(0)
    }

    pub fn label(&self, degree: i64, i: usize) -> &str {
        &self.labels[&degree][i]
    }

    /// Structure constants of basis_i(d1)·basis_j(d2) in degree d1+d2.
    pub fn product(&self, d1: i64, i: usize, d2: i64, j: usize) -> Vec<Rat> {
        self.products
            .get(&(d1, i, d2, j))
            .cloned()
            .unwrap_or_else(|| vec![Rat::zero(); self.dim(d1 + d2)])
    }

    /// The cohomology of a wedge of simply connected spheres: one class per
    /// listed dimension, all products zero.
    pub fn spheres(dims: &[i64]) -> GradedAlgebra {
        assert!(dims.iter().all(|&d| d >= 2), "sphere dimensions must be ≥ 2");
        let mut dim_map: BTreeMap<i64, usize> = BTreeMap::new();
        let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for (k, &d) in dims.iter().enumerate() {
            *dim_map.entry(d).or_insert(0) += 1;
            labels.entry(d).or_default().push(format!("s{}", k + 1));
        }
        GradedAlgebra {
            dims: dim_map,
            labels,
            products: BTreeMap::new(),
        }
    }

    /// Extracts the presentation of a cohomology ring: dimensions are Betti
    /// numbers, structure constants come from representative products.
    pub fn from_cohomology(h: &CohomologyRing) -> Result<GradedAlgebra, ModelError> {
        let betti = h.betti_table();
        for (&k, &b) in &betti {
            if k < 0 {
                return Err(ModelError::InvalidAlgebra {
                    detail: format!("dimension {b} in negative degree {k}"),
                });
            }
        }
        if h.betti(0) != 1 {
            return Err(ModelError::InvalidAlgebra {
                detail: format!("degree 0 has dimension {}", h.betti(0)),
            });
        }
        let dims: BTreeMap<i64, usize> = betti.into_iter().filter(|&(k, _)| k > 0).collect();
        let labels = dims
            .iter()
            .map(|(&k, &b)| (k, (0..b).map(|i| format!("h{k}.{}", i + 1)).collect()))
            .collect();
        let mut products = BTreeMap::new();
        let degrees: Vec<i64> = dims.keys().copied().collect();
        for &d1 in &degrees {
            for &d2 in &degrees {
                if dims.contains_key(&(d1 + d2)) {
                    for i in 0..dims[&d1] {
                        for j in 0..dims[&d2] {
                            let mut a = h.zero_class(d1);
                            a.coords[i] = crate::linalg::rat(1);
                            let mut b = h.zero_class(d2);
                            b.coords[j] = crate::linalg::rat(1);
                            let p = h.multiply(&a, &b);
                            if !p.is_zero() {
                                products.insert((d1, i, d2, j), p.coords);
                            }
                        }
                    }
                }
            }
        }
        Ok(GradedAlgebra {
            dims,
            labels,
            products,
        })
    }

    /// Structural soundness: simple connectivity, graded commutativity and
    /// associativity of the structure constants.
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.dim(1) != 0 {
            return Err(ModelError::NotSimplyConnected { dim: self.dim(1) });
        }
        for (&k, &b) in &self.dims {
            if k <= 0 {
                return Err(ModelError::InvalidAlgebra {
                    detail: format!("explicit dimension in degree {k}"),
                });
            }
            if self.labels.get(&k).map_or(0, Vec::len) != b {
                return Err(ModelError::InvalidAlgebra {
                    detail: format!("labels of degree {k} do not match its dimension"),
                });
            }
        }
        for (&(d1, i, d2, j), v) in &self.products {
            if i >= self.dim(d1) || j >= self.dim(d2) || v.len() != self.dim(d1 + d2) {
                return Err(ModelError::InvalidAlgebra {
                    detail: format!("malformed product entry ({d1},{i})·({d2},{j})"),
                });
            }
        }
        let degrees: Vec<i64> = self.dims.keys().copied().collect();
        for &d1 in &degrees {
            for &d2 in &degrees {
                for i in 0..self.dim(d1) {
                    for j in 0..self.dim(d2) {
                        let ab = self.product(d1, i, d2, j);
                        let ba = self.product(d2, j, d1, i);
                        let sign = if d1 % 2 != 0 && d2 % 2 != 0 { -1 } else { 1 };
                        let flipped: Vec<Rat> =
                            ba.iter().map(|c| c * crate::linalg::rat(sign)).collect();
                        if ab != flipped {
                            return Err(ModelError::InvalidAlgebra {
                                detail: format!(
                                    "graded commutativity fails on ({d1},{i})·({d2},{j})"
                                ),
                            });
                        }
                        for &d3 in &degrees {
                            for k in 0..self.dim(d3) {
                                let left = self.multiply(d1 + d2, &ab, d3, k);
                                let bc = self.product(d2, j, d3, k);
                                let right = self.multiply_left(d1, i, d2 + d3, &bc);
                                if left != right {
                                    return Err(ModelError::InvalidAlgebra {
                                        detail: format!(
                                            "associativity fails on ({d1},{i})·({d2},{j})·({d3},{k})"
                                        ),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// v·basis_k(d2) for a vector v in degree d1.
    fn multiply(&self, d1: i64, v: &[Rat], d2: i64, k: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim(d1 + d2)];
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                for (t, w) in self.product(d1, i, d2, k).into_iter().enumerate() {
                    out[t] += c * w;
                }
            }
        }
        out
    }

    /// basis_i(d1)·v for a vector v in degree d2.
    fn multiply_left(&self, d1: i64, i: usize, d2: i64, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim(d1 + d2)];
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                for (t, w) in self.product(d1, i, d2, j).into_iter().enumerate() {
                    out[t] += c * w;
                }
            }
        }
        out
    }

    /// Product of two vectors in fixed degrees (degree 0 acts by scalars).
    fn multiply_vecs(&self, d1: i64, v1: &[Rat], d2: i64, v2: &[Rat]) -> Vec<Rat> {
        if d1 == 0 {
            return v2.iter().map(|c| c * &v1[0]).collect();
        }
        if d2 == 0 {
            return v1.iter().map(|c| c * &v2[0]).collect();
        }
        let mut out = vec![Rat::zero(); self.dim(d1 + d2)];
        for (j, c) in v2.iter().enumerate() {
            if !c.is_zero() {
                for (t, w) in self.multiply(d1, v1, d2, j).into_iter().enumerate() {
                    out[t] += c * w;
                }
            }
        }
        out
    }
}

/// A monomial in the free graded-commutative algebra: sorted (generator,
/// exponent) pairs; odd-degree generators square to zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mono(Vec<(usize, u32)>);

impl Mono {
    pub fn unit() -> Mono {
        Mono(Vec::new())
    }

    pub fn generator(g: usize) -> Mono {
        Mono(vec![(g, 1)])
    }

    pub fn factors(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn factor_count(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }
}

/// Koszul product of monomials: `None` when an odd generator repeats,
/// otherwise the merged monomial and the sign from moving odd factors past
/// each other.
fn mono_mul(a: &Mono, b: &Mono, degrees: &[i64]) -> Option<(Mono, i64)> {
    let mut flips = 0usize;
    for &(ga, _) in &a.0 {
        if degrees[ga] % 2 != 0 {
            for &(gb, _) in &b.0 {
                if degrees[gb] % 2 != 0 && gb < ga {
                    flips += 1;
                }
            }
        }
    }
    let mut merged: BTreeMap<usize, u32> = a.0.iter().copied().collect();
    for &(g, e) in &b.0 {
        *merged.entry(g).or_insert(0) += e;
    }
    for (&g, &e) in &merged {
        if degrees[g] % 2 != 0 && e > 1 {
            return None;
        }
    }
    Some((
        Mono(merged.into_iter().collect()),
        if flips % 2 == 0 { 1 } else { -1 },
    ))
}

/// A polynomial over the model generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly, degrees: &[i64]) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = mono_mul(ma, mb, degrees) {
                    out.add_term(m, ca * cb * crate::linalg::rat(sign));
                }
            }
        }
        out
    }
}

/// Differential of a monomial by the graded Leibniz rule, splitting off the
/// first factor recursively.
fn d_mono(m: &Mono, degrees: &[i64], diffs: &[Poly]) -> Poly {
    let Some(&(g, e)) = m.0.first() else {
        return Poly::zero();
    };
    let rest = Mono(m.0[1..].to_vec());
    let head_degree = degrees[g] * e as i64;
    // d(g^e) = e·g^{e−1}·dg; for odd g the exponent is 1.
    let mut head_diff = diffs[g].scale(&crate::linalg::rat(e as i64));
    if e > 1 {
        let mut power = Poly::zero();
        power.add_term(Mono(vec![(g, e - 1)]), crate::linalg::rat(1));
        head_diff = power.mul(&head_diff, degrees);
    }
    let mut rest_poly = Poly::zero();
    rest_poly.add_term(rest.clone(), crate::linalg::rat(1));
    let mut out = head_diff.mul(&rest_poly, degrees);
    // (−1)^{|g^e|} g^e · d(rest)
    let tail = d_mono(&rest, degrees, diffs);
    if !tail.is_zero() {
        let mut head = Poly::zero();
        head.add_term(Mono(vec![(g, e)]), crate::linalg::rat(1));
        let sign = if head_degree % 2 == 0 { 1 } else { -1 };
        out = out.add(&head.mul(&tail, degrees).scale(&crate::linalg::rat(sign)));
    }
    out
}

fn d_poly(p: &Poly, degrees: &[i64], diffs: &[Poly]) -> Poly {
    let mut out = Poly::zero();
    for (m, c) in &p.terms {
        out = out.add(&d_mono(m, degrees, diffs).scale(c));
    }
    out
}

/// All monomials of one total degree, in deterministic order (exponent of
/// generator 0 varies slowest).
fn monomials_of_degree(degrees: &[i64], target: i64) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut acc: Vec<(usize, u32)> = Vec::new();
    fn rec(
        degrees: &[i64],
        g: usize,
        remaining: i64,
        acc: &mut Vec<(usize, u32)>,
        out: &mut Vec<Mono>,
    ) {
        if remaining == 0 {
            out.push(Mono(acc.clone()));
            return;
        }
        if g >= degrees.len() || remaining < 0 {
            return;
        }
        // exponent 0 first, then increasing
        rec(degrees, g + 1, remaining, acc, out);
        let max_exp = if degrees[g] % 2 != 0 {
            1
        } else {
            (remaining / degrees[g]) as u32
        };
        for e in 1..=max_exp {
            acc.push((g, e));
            rec(degrees, g + 1, remaining - degrees[g] * e as i64, acc, out);
            acc.pop();
        }
    }
    if target >= 0 {
        rec(degrees, 0, target, &mut acc, &mut out);
    }
    out
}

/// Limits guarding the combinatorial growth of hyperbolic models.
#[derive(Clone, Copy, Debug)]
pub struct ModelLimits {
    pub max_degree: i64,
    pub max_generators: usize,
}

impl Default for ModelLimits {
    fn default() -> Self {
        ModelLimits {
            max_degree: 12,
            max_generators: 5000,
        }
    }
}

/// One model generator: label, degree, differential and its image in the
/// target algebra.
#[derive(Clone, Debug)]
pub struct ModelGen {
    pub label: String,
    pub degree: i64,
    pub differential: Poly,
    pub image: Vec<Rat>,
}

/// A degree-bounded Sullivan minimal model of a graded algebra.
#[derive(Debug)]
pub struct MinimalModel {
    target: GradedAlgebra,
    max_degree: i64,
    gens: Vec<ModelGen>,
}

/// Cohomology of the free algebra in one degree: monomial basis and the
/// quotient cycles-mod-boundaries.
struct LambdaCohomology {
    basis: Vec<Mono>,
    classes: Quotient,
}

fn lambda_cohomology(degrees: &[i64], diffs: &[Poly], j: i64) -> LambdaCohomology {
    let basis = monomials_of_degree(degrees, j);
    let above = monomials_of_degree(degrees, j + 1);
    let above_index: BTreeMap<&Mono, usize> =
        above.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut d_here = QMat::zero(above.len(), basis.len());
    for (col, m) in basis.iter().enumerate() {
        for (t, c) in d_mono(m, degrees, diffs).terms() {
            d_here.set(above_index[t], col, c.clone());
        }
    }
    let cycles = d_here.kernel_basis();
    let index: BTreeMap<&Mono, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut boundaries = Vec::new();
    for m in monomials_of_degree(degrees, j - 1) {
        let image = d_mono(&m, degrees, diffs);
        if !image.is_zero() {
            let mut v = vec![Rat::zero(); basis.len()];
            for (t, c) in image.terms() {
                v[index[t]] = c.clone();
            }
            boundaries.push(v);
        }
    }
    let classes = coset_representatives(basis.len(), &boundaries, &cycles)
        .expect("boundaries are cycles because d² = 0");
    LambdaCohomology { basis, classes }
}

impl MinimalModel {
    pub fn target(&self) -> &GradedAlgebra {
        &self.target
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    pub fn generators(&self) -> &[ModelGen] {
        &self.gens
    }

    fn degrees(&self) -> Vec<i64> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    fn diffs(&self) -> Vec<Poly> {
        self.gens.iter().map(|g| g.differential.clone()).collect()
    }

    /// Image of a monomial in the target algebra (a vector in the degree of
    /// the monomial).
    fn evaluate_mono(&self, m: &Mono) -> (i64, Vec<Rat>) {
        let mut acc = (0i64, vec![crate::linalg::rat(1)]);
        for &(g, e) in m.factors() {
            for _ in 0..e {
                let gen = &self.gens[g];
                let v = self
                    .target
                    .multiply_vecs(acc.0, &acc.1, gen.degree, &gen.image);
                acc = (acc.0 + gen.degree, v);
            }
        }
        acc
    }

    /// Image of a homogeneous polynomial of the given degree.
    fn evaluate_poly(&self, p: &Poly, degree: i64) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.target.dim(degree)];
        for (m, c) in p.terms() {
            let (d, v) = self.evaluate_mono(m);
            assert_eq!(d, degree, "inhomogeneous polynomial");
            for (i, w) in v.into_iter().enumerate() {
                out[i] += c * w;
            }
        }
        out
    }

    /// Matrix of the induced map H^j(ΛV) → H^j over the class basis.
    fn map_matrix(&self, coh: &LambdaCohomology, j: i64) -> QMat {
        let columns: Vec<Vec<Rat>> = coh
            .classes
            .basis()
            .iter()
            .map(|cycle| {
                let mut p = Poly::zero();
                for (i, c) in cycle.iter().enumerate() {
                    if !c.is_zero() {
                        p.add_term(coh.basis[i].clone(), c.clone());
                    }
                }
                self.evaluate_poly(&p, j)
            })
            .collect();
        QMat::from_columns(self.target.dim(j), &columns)
    }

    /// Generator counts per degree: the rational homotopy ranks
    /// rank π_k ⊗ ℚ for 2 ≤ k ≤ N.
    pub fn homotopy_ranks(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for g in &self.gens {
            *out.entry(g.degree).or_insert(0) += 1;
        }
        out
    }

    /// Human-readable differential of one generator.
    pub fn format_differential(&self, g: usize) -> String {
        format_poly(&self.gens[g].differential, &self.gens)
    }
}

/// Renders a polynomial over the model generators, e.g. `v1·v2 - v3^2`.
pub fn format_poly(p: &Poly, gens: &[ModelGen]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        write!(out, "{}", crate::linalg::format_rat(c)).unwrap();
        for &(g, e) in m.factors() {
            write!(out, "·{}", gens[g].label).unwrap();
            if e > 1 {
                write!(out, "^{e}").unwrap();
            }
        }
    }
    out
}

/// Builds the minimal model of a validated algebra up to the degree bound.
pub fn minimal_model(
    target: &GradedAlgebra,
    limits: &ModelLimits,
) -> Result<MinimalModel, ModelError> {
    target.validate()?;
    let mut model = MinimalModel {
        target: target.clone(),
        max_degree: limits.max_degree,
        gens: Vec::new(),
    };
    for k in 2..=limits.max_degree {
        // Surjectivity in degree k: one closed generator per missing coset.
        let degrees = model.degrees();
        let diffs = model.diffs();
        let coh = lambda_cohomology(&degrees, &diffs, k);
        let a = model.map_matrix(&coh, k);
        let image_columns: Vec<Vec<Rat>> = (0..a.cols()).map(|c| a.column(c)).collect();
        let identity = QMat::identity(target.dim(k)).to_rows();
        let coker = coset_representatives(target.dim(k), &image_columns, &identity)
            .expect("images lie in the target degree");
        for v in coker.basis() {
            model.gens.push(ModelGen {
                label: format!("v{}", model.gens.len() + 1),
                degree: k,
                differential: Poly::zero(),
                image: v.clone(),
            });
        }
        if model.gens.len() > limits.max_generators {
            return Err(ModelError::GeneratorCap {
                cap: limits.max_generators,
            });
        }
        // Injectivity in degree k+1: kill each kernel class with a new
        // degree-k generator whose differential is a lifted cocycle.
        let degrees = model.degrees();
        let diffs = model.diffs();
        let coh = lambda_cohomology(&degrees, &diffs, k + 1);
        let a = model.map_matrix(&coh, k + 1);
        for kernel_coords in a.kernel_basis() {
            let cocycle = coh.classes.lift(&kernel_coords);
            let mut dv = Poly::zero();
            for (i, c) in cocycle.into_iter().enumerate() {
                if !c.is_zero() {
                    dv.add_term(coh.basis[i].clone(), c);
                }
            }
            model.gens.push(ModelGen {
                label: format!("v{}", model.gens.len() + 1),
                degree: k,
                differential: dv,
                image: vec![Rat::zero(); target.dim(k)],
            });
        }
        if model.gens.len() > limits.max_generators {
            return Err(ModelError::GeneratorCap {
                cap: limits.max_generators,
            });
        }
    }
    Ok(model)
}

/// Exact verification of a built model: d² = 0, the map is an algebra chain
/// map onto cohomology classes, the differential is decomposable, and the
/// induced map on cohomology is bijective through N and injective at N+1.
pub fn verify(model: &MinimalModel) -> Result<(), ModelError> {
    let degrees = model.degrees();
    let diffs = model.diffs();
    for g in &model.gens {
        let dd = d_poly(&g.differential, &degrees, &diffs);
        if !dd.is_zero() {
            return Err(ModelError::VerificationFailed {
                detail: format!("d²({}) = {} ≠ 0", g.label, format_poly(&dd, &model.gens)),
            });
        }
        if !crate::linalg::vec_is_zero(&model.evaluate_poly(&g.differential, g.degree + 1)) {
            return Err(ModelError::VerificationFailed {
                detail: format!("m(d{}) ≠ 0: the map is not a chain map", g.label),
            });
        }
        for (m, _) in g.differential.terms() {
            if m.factor_count() < 2 {
                return Err(ModelError::VerificationFailed {
                    detail: format!("d{} has the indecomposable term {m:?}", g.label),
                });
            }
        }
    }
    for j in 0..=model.max_degree + 1 {
        let coh = lambda_cohomology(&degrees, &diffs, j);
        let a = model.map_matrix(&coh, j);
        let classes = coh.classes.dim();
        let rank = a.rank();
        if rank < classes {
            return Err(ModelError::VerificationFailed {
                detail: format!(
                    "H^{j}(m) has kernel: rank {rank} on {classes} classes"
                ),
            });
        }
        if j <= model.max_degree && (classes != model.target.dim(j) || rank != classes) {
            return Err(ModelError::VerificationFailed {
                detail: format!(
                    "H^{j}(m) is not bijective: {classes} classes onto dimension {}",
                    model.target.dim(j)
                ),
            });
        }
    }
    Ok(())
}

/// Ranks of the free graded Lie algebra on generators of the given (loop)
/// degrees, up to `max`, from the PBW factorisation
///
/// ```text
/// Π_{k odd} (1+t^k)^{c_k} · Π_{k even} (1−t^k)^{−c_k} = 1 / (1 − Σ_g t^{|g|})
/// ```
///
/// Only nonzero ranks are returned.
pub fn free_lie_ranks(loop_degrees: &[i64], max: i64) -> BTreeMap<i64, usize> {
    assert!(loop_degrees.iter().all(|&d| d >= 1));
    let max = max.max(0) as usize;
    let mut counts = vec![BigInt::zero(); max + 1];
    for &d in loop_degrees {
        if (d as usize) <= max {
            counts[d as usize] += 1;
        }
    }
    // Hilbert series of the tensor algebra: T = 1/(1 − Σ t^d).
    let mut tensor = vec![BigInt::zero(); max + 1];
    tensor[0] = BigInt::one();
    for k in 1..=max {
        let mut s = BigInt::zero();
        for i in 1..=k {
            if !counts[i].is_zero() {
                s += &counts[i] * &tensor[k - i];
            }
        }
        tensor[k] = s;
    }
    let mut partial = vec![BigInt::zero(); max + 1];
    partial[0] = BigInt::one();
    let mut ranks = BTreeMap::new();
    for k in 1..=max {
        let c = &tensor[k] - &partial[k];
        assert!(!c.is_negative(), "PBW solved a negative rank");
        if c.is_zero() {
            continue;
        }
        // Multiply the factor for degree k into the partial product.
        let mut factor = vec![BigInt::zero(); max + 1];
        let mut j = 0usize;
        while k * j <= max {
            factor[k * j] = if k % 2 != 0 {
                // (1+t^k)^c: falling binomial C(c, j).
                falling_binomial(&c, j)
            } else {
                // (1−t^k)^{−c}: rising binomial C(c+j−1, j).
                falling_binomial(&(&c + BigInt::from(j as i64) - BigInt::one()), j)
            };
            j += 1;
        }
        let mut next = vec![BigInt::zero(); max + 1];
        for (a, pa) in partial.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, fb) in factor.iter().enumerate() {
                if a + b <= max && !fb.is_zero() {
                    next[a + b] += pa * fb;
                }
            }
        }
        partial = next;
        ranks.insert(
            k as i64,
            c.to_usize().expect("free-Lie rank fits in usize"),
        );
    }
    ranks
}

/// C(n, j) for a big-integer n ≥ 0 and small j.
fn falling_binomial(n: &BigInt, j: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= n - BigInt::from(i as i64);
        den *= BigInt::from(i as i64 + 1);
    }
    num / den
}

/// Evidence that homotopy ranks grow as a hyperbolic space demands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthCertificate {
    /// The loop-space ranks dominate a free graded Lie algebra on two
    /// generators: rank π_{k+1}(M) ≥ c_k for every k ≤ N−1.
    FreeLieLowerBound {
        loop_degrees: (i64, i64),
        checked_through: i64,
        /// (loop degree k, model rank π_{k+1}, oracle rank c_k) for every k
        /// where either side is nonzero.
        comparisons: Vec<(i64, usize, usize)>,
    },
    /// Ranks summed over the upper half window [N/2, N] strictly exceed the
    /// lower half window [2, N/2].
    WindowGrowth {
        split: i64,
        low_range: (i64, i64),
        high_range: (i64, i64),
        low_sum: usize,
        high_sum: usize,
    },
}

/// Certifies a hyperbolic verdict against the model's homotopy ranks.
pub fn certify_growth(
    witness: &Witness,
    ranks: &BTreeMap<i64, usize>,
    max_degree: i64,
) -> Result<GrowthCertificate, ModelError> {
    match witness {
        Witness::Monomial(w) => {
            let (a, b) = w.lower_bound_degrees;
            let oracle = free_lie_ranks(&[a, b], max_degree - 1);
            let mut comparisons = Vec::new();
            for k in 2..=max_degree - 1 {
                let model = ranks.get(&(k + 1)).copied().unwrap_or(0);
                let bound = oracle.get(&k).copied().unwrap_or(0);
                if model < bound {
                    return Err(ModelError::CertificateFailed {
                        detail: format!(
                            "rank π_{} = {model} is below the free-Lie bound {bound}",
                            k + 1
                        ),
                    });
                }
                if model > 0 || bound > 0 {
                    comparisons.push((k, model, bound));
                }
            }
            Ok(GrowthCertificate::FreeLieLowerBound {
                loop_degrees: (a, b),
                checked_through: max_degree - 1,
                comparisons,
            })
        }
        Witness::Boundary(_) => {
            let split = max_degree / 2;
            let window = |lo: i64, hi: i64| {
                ranks
                    .range(lo..=hi)
                    .map(|(_, &c)| c)
                    .sum::<usize>()
            };
            let low_sum = window(2, split);
            let high_sum = window(split, max_degree);
            if high_sum <= low_sum {
                return Err(ModelError::CertificateFailed {
                    detail: format!(
                        "ranks over [{split}, {max_degree}] sum to {high_sum}, not above {low_sum}"
                    ),
                });
            }
            Ok(GrowthCertificate::WindowGrowth {
                split,
                low_range: (2, split),
                high_range: (split, max_degree),
                low_sum,
                high_sum,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::analyze_phi;
    use crate::dga::AtomicAlgebra;
    use crate::lattice::{build_lattice, normalize, IntersectionLattice};
    use crate::linalg::rat;
    use crate::witness::build_witness;

    fn coord_subspace(ambient: usize, zeroed: &[usize]) -> QMat {
        let mut m = QMat::zero(zeroed.len(), ambient);
        for (r, &c) in zeroed.iter().enumerate() {
            m.set(r, c, rat(1));
        }
        m
    }

    fn two_share_line() -> IntersectionLattice {
        let (arr, _) = normalize(
            3,
            vec![
                ("x1".into(), coord_subspace(3, &[0, 1])),
                ("x2".into(), coord_subspace(3, &[1, 2])),
            ],
        )
        .unwrap();
        build_lattice(arr).unwrap()
    }

    fn three_pairwise_origin() -> IntersectionLattice {
        let mut diag = QMat::zero(2, 4);
        diag.set(0, 0, rat(1));
        diag.set(0, 2, rat(-1));
        diag.set(1, 1, rat(1));
        diag.set(1, 3, rat(-1));
        let (arr, _) = normalize(
            4,
            vec![
                ("x1".into(), coord_subspace(4, &[0, 1])),
                ("x2".into(), coord_subspace(4, &[2, 3])),
                ("x3".into(), diag),
            ],
        )
        .unwrap();
        build_lattice(arr).unwrap()
    }

    fn limits(n: i64) -> ModelLimits {
        ModelLimits {
            max_degree: n,
            ..ModelLimits::default()
        }
    }

    #[test]
    fn witt_ranks_for_two_even_generators() {
        assert_eq!(
            free_lie_ranks(&[2, 2], 10),
            BTreeMap::from([(2, 2), (4, 1), (6, 2), (8, 3), (10, 6)])
        );
    }

    #[test]
    fn witt_ranks_for_mixed_generators() {
        assert_eq!(
            free_lie_ranks(&[2, 4], 10),
            BTreeMap::from([(2, 1), (4, 1), (6, 1), (8, 1), (10, 2)])
        );
        // One odd generator: x and [x, x] only.
        assert_eq!(free_lie_ranks(&[3], 9), BTreeMap::from([(3, 1), (6, 1)]));
        assert_eq!(
            free_lie_ranks(&[2, 2, 3], 11),
            BTreeMap::from([
                (2, 2),
                (3, 1),
                (4, 1),
                (5, 2),
                (6, 3),
                (7, 4),
                (8, 5),
                (9, 8),
                (10, 13),
                (11, 18)
            ])
        );
    }

    #[test]
    fn model_of_even_sphere() {
        let target = GradedAlgebra::spheres(&[4]);
        let model = minimal_model(&target, &limits(8)).unwrap();
        verify(&model).unwrap();
        assert_eq!(model.homotopy_ranks(), BTreeMap::from([(4, 1), (7, 1)]));
        // dv₂ = v₁² up to the canonical normalisation.
        assert_eq!(model.format_differential(1), "1·v1^2");
    }

    #[test]
    fn model_of_odd_sphere_wedge_matches_witt() {
        let target = GradedAlgebra::spheres(&[3, 3]);
        let model = minimal_model(&target, &limits(11)).unwrap();
        verify(&model).unwrap();
        let ranks = model.homotopy_ranks();
        assert_eq!(
            ranks,
            BTreeMap::from([(3, 2), (5, 1), (7, 2), (9, 3), (11, 6)])
        );
        // Loop-space shift: rank π_{k+1} equals the free-Lie rank at k.
        let oracle = free_lie_ranks(&[2, 2], 10);
        for k in 2..=10 {
            assert_eq!(
                ranks.get(&(k + 1)).copied().unwrap_or(0),
                oracle.get(&k).copied().unwrap_or(0),
                "degree {k}"
            );
        }
    }

    #[test]
    fn elliptic_model_is_pure_exterior() {
        let lat = {
            let (arr, _) = normalize(
                4,
                vec![
                    ("x1".into(), coord_subspace(4, &[0, 1])),
                    ("x2".into(), coord_subspace(4, &[2, 3])),
                ],
            )
            .unwrap();
            build_lattice(arr).unwrap()
        };
        let dga = AtomicAlgebra::new(&lat);
        let h = CohomologyRing::compute(&dga);
        let target = GradedAlgebra::from_cohomology(&h).unwrap();
        let model = minimal_model(&target, &limits(8)).unwrap();
        verify(&model).unwrap();
        assert_eq!(model.homotopy_ranks(), BTreeMap::from([(3, 2)]));
        assert!(model.generators().iter().all(|g| g.differential.is_zero()));
    }

    #[test]
    fn shared_line_ranks_match_three_sphere_wedge() {
        let lat = two_share_line();
        let dga = AtomicAlgebra::new(&lat);
        let h = CohomologyRing::compute(&dga);
        let target = GradedAlgebra::from_cohomology(&h).unwrap();
        let model = minimal_model(&target, &limits(8)).unwrap();
        verify(&model).unwrap();
        let ranks = model.homotopy_ranks();
        assert_eq!(
            ranks,
            BTreeMap::from([(3, 2), (4, 1), (5, 1), (6, 2), (7, 3), (8, 4)])
        );
        let oracle = free_lie_ranks(&[2, 2, 3], 7);
        for k in 2..=7 {
            assert_eq!(
                ranks.get(&(k + 1)).copied().unwrap_or(0),
                oracle.get(&k).copied().unwrap_or(0),
                "degree {k}"
            );
        }
    }

    #[test]
    fn pairwise_origin_model_and_window_certificate() {
        let lat = three_pairwise_origin();
        let dga = AtomicAlgebra::new(&lat);
        let h = CohomologyRing::compute(&dga);
        let target = GradedAlgebra::from_cohomology(&h).unwrap();
        let model = minimal_model(&target, &limits(10)).unwrap();
        verify(&model).unwrap();
        let ranks = model.homotopy_ranks();
        assert_eq!(
            ranks,
            BTreeMap::from([(3, 3), (5, 1), (7, 2), (9, 3)])
        );
        let analysis = analyze_phi(&h);
        let witness = build_witness(&dga, &h, &analysis).unwrap().unwrap();
        let cert = certify_growth(&witness, &ranks, 10).unwrap();
        assert_eq!(
            cert,
            GrowthCertificate::WindowGrowth {
                split: 5,
                low_range: (2, 5),
                high_range: (5, 10),
                low_sum: 4,
                high_sum: 6,
            }
        );
    }

    #[test]
    fn shared_line_free_lie_certificate() {
        let lat = two_share_line();
        let dga = AtomicAlgebra::new(&lat);
        let h = CohomologyRing::compute(&dga);
        let target = GradedAlgebra::from_cohomology(&h).unwrap();
        let model = minimal_model(&target, &limits(8)).unwrap();
        let analysis = analyze_phi(&h);
        let witness = build_witness(&dga, &h, &analysis).unwrap().unwrap();
        let cert = certify_growth(&witness, &model.homotopy_ranks(), 8).unwrap();
        match cert {
            GrowthCertificate::FreeLieLowerBound {
                loop_degrees,
                checked_through,
                ..
            } => {
                assert_eq!(loop_degrees, (2, 4));
                assert_eq!(checked_through, 7);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn generator_cap_aborts_hyperbolic_blowup() {
        let target = GradedAlgebra::spheres(&[3, 3]);
        let result = minimal_model(
            &target,
            &ModelLimits {
                max_degree: 11,
                max_generators: 4,
            },
        );
        assert_eq!(result.unwrap_err(), ModelError::GeneratorCap { cap: 4 });
    }

    #[test]
    fn validate_rejects_broken_commutativity() {
        let mut alg = GradedAlgebra::spheres(&[3, 3, 6]);
        // e1·e2 = s3 but e2·e1 = s3 breaks odd·odd anticommutativity.
        alg.products
            .insert((3, 0, 3, 1), vec![rat(1)]);
        alg.products
            .insert((3, 1, 3, 0), vec![rat(1)]);
        match alg.validate() {
            Err(ModelError::InvalidAlgebra { detail }) => {
                assert!(detail.contains("commutativity"), "{detail}");
            }
            other => panic!("expected invalid algebra, got {other:?}"),
        }
    }

    #[test]
    fn not_simply_connected_is_rejected() {
        let alg = GradedAlgebra::spheres(&[2, 3]);
        // Shift a class into degree 1 by hand.
        let mut bad = alg.clone();
        bad.dims.insert(1, 1);
        bad.labels.insert(1, vec!["t".into()]);
        assert_eq!(
            minimal_model(&bad, &limits(4)).unwrap_err(),
            ModelError::NotSimplyConnected { dim: 1 }
        );
    }
}

//! Intersection lattices of central complex subspace arrangements.
//!
//! A subspace is stored as the reduced row echelon form of its defining
//! equations, which is a canonical representative: two subspaces are equal
//! iff their canonical matrices are equal.  The lattice is ordered by
//! *reverse* inclusion — the whole space ℂ^l is the bottom element, joins are
//! intersections of subspaces — and rank is longest-chain height above the
//! bottom.  The geometric-lattice test (atomistic + submodular rank) gates
//! everything downstream; on failure it reports a violating pair so the
//! caller can name the offending subspaces.

use crate::linalg::QMat;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("equation rows of {name:?} have {got} columns, ambient dimension is {expected}")]
    AmbientMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("subspace {name:?} has codimension {codim}; codimension at least 2 is required")]
    CodimTooSmall { name: String, codim: usize },
    #[error("arrangement needs at least one subspace")]
    Empty,
    #[error("arrangement has {0} subspaces; subset enumeration is limited to 24")]
    TooManyAtoms(usize),
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    MixedAmbient(usize, usize),
}

/// A linear subspace of ℂ^l given by rational equations, kept in canonical
/// (reduced row echelon, zero-rows-dropped) form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    canonical: QMat,
}

impl Subspace {
    /// Canonicalizes a system of homogeneous equations (rows of `equations`).
    pub fn new(ambient_dim: usize, equations: &QMat) -> Self {
        assert!(
            equations.rows() == 0 || equations.cols() == ambient_dim,
            "equation width {} does not match ambient dimension {ambient_dim}",
            equations.cols()
        );
        let reduced = if equations.rows() == 0 {
            QMat::zero(0, ambient_dim)
        } else {
            let r = equations.rref();
            let rank = r.rank();
            let mut canon = QMat::zero(rank, ambient_dim);
            for row in 0..rank {
                for col in 0..ambient_dim {
                    canon.set(row, col, r.matrix.get(row, col));
                }
            }
            canon
        };
        Subspace {
            ambient_dim,
            canonical: reduced,
        }
    }

    pub fn whole_space(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            canonical: QMat::zero(0, ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Complex codimension = number of independent equations.
    pub fn codim(&self) -> usize {
        self.canonical.rows()
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.codim()
    }

    pub fn is_whole_space(&self) -> bool {
        self.codim() == 0
    }

    /// Canonical equation matrix (independent rows in echelon form).
    pub fn equations(&self) -> &QMat {
        &self.canonical
    }

    /// Set containment `self ⊇ other`: every equation of `self` must already
    /// be implied by the equations of `other`.
    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        other.canonical.stack(&self.canonical).rank() == other.codim()
    }

    /// Intersection of two subspaces of the same ambient space.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LatticeError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LatticeError::MixedAmbient(
                self.ambient_dim,
                other.ambient_dim,
            ));
        }
        Ok(Subspace::new(
            self.ambient_dim,
            &self.canonical.stack(&other.canonical),
        ))
    }
}

/// A named atom of the arrangement.
#[derive(Clone, Debug)]
pub struct Atom {
    pub name: String,
    pub subspace: Subspace,
}

/// A normalized arrangement: atoms of codimension ≥ 2, none contained in
/// another, in input order.
#[derive(Clone, Debug)]
pub struct Arrangement {
    ambient_dim: usize,
    atoms: Vec<Atom>,
}

impl Arrangement {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_name(&self, i: usize) -> &str {
        &self.atoms[i].name
    }
}

/// Validates raw input subspaces and produces a normalized arrangement.
///
/// Rules, applied in input order:
/// * every subspace must have codimension ≥ 2 (hard error otherwise);
/// * a subspace contained in a *different* one is dropped with a warning
///   (its removal changes neither the union nor the complement);
/// * of exact duplicates the earliest survives, later copies are dropped
///   with a warning.
///
/// The surviving atoms keep their input order; that order fixes atom indices
/// everywhere downstream.
pub fn normalize(
    ambient_dim: usize,
    subspaces: Vec<(String, QMat)>,
) -> Result<(Arrangement, Vec<String>), LatticeError> {
    if subspaces.is_empty() {
        return Err(LatticeError::Empty);
    }
    let mut atoms = Vec::new();
    for (name, equations) in subspaces {
        if equations.rows() > 0 && equations.cols() != ambient_dim {
            return Err(LatticeError::AmbientMismatch {
                name,
                expected: ambient_dim,
                got: equations.cols(),
            });
        }
        let subspace = Subspace::new(ambient_dim, &equations);
        if subspace.codim() < 2 {
            return Err(LatticeError::CodimTooSmall {
                name,
                codim: subspace.codim(),
            });
        }
        atoms.push(Atom { name, subspace });
    }

    let mut kept: Vec<Atom> = Vec::new();
    let mut warnings = Vec::new();
    for (i, atom) in atoms.iter().enumerate() {
        let mut dropped_for: Option<(&Atom, bool)> = None;
        for (j, other) in atoms.iter().enumerate() {
            if i == j {
                continue;
            }
            if other.subspace.contains(&atom.subspace) {
                let duplicate = atom.subspace == other.subspace;
                // A strict containment always drops the smaller subspace; a
                // duplicate only drops the later copy.
                if !duplicate || j < i {
                    dropped_for = Some((other, duplicate));
                    break;
                }
            }
        }
        match dropped_for {
            Some((other, true)) => warnings.push(format!(
                "dropped subspace {:?}: duplicate of {:?}",
                atom.name, other.name
            )),
            Some((other, false)) => warnings.push(format!(
                "dropped subspace {:?}: contained in {:?}",
                atom.name, other.name
            )),
            None => kept.push(atom.clone()),
        }
    }
    Ok((
        Arrangement {
            ambient_dim,
            atoms: kept,
        },
        warnings,
    ))
}

/// Index of a lattice element.  Element 0 is always the bottom (ℂ^l).
pub type ElemId = usize;

/// The intersection lattice of an arrangement, with joins of all atom
/// subsets precomputed.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    arrangement: Arrangement,
    elements: Vec<Subspace>,
    canonical_index: BTreeMap<Subspace, ElemId>,
    atom_elem: Vec<ElemId>,
    /// Join of every atom subset, indexed by bitmask over atom indices.
    subset_join: Vec<u32>,
    rank: Vec<usize>,
    atoms_below: Vec<Vec<usize>>,
}

pub const MAX_ATOMS: usize = 24;

/// Builds the intersection lattice by enumerating joins of all 2^n atom
/// subsets (memoized one bit at a time).  Guarded at n ≤ 24: an explicit
/// limit beats a silent exponential blowup.
pub fn build_lattice(arrangement: Arrangement) -> Result<IntersectionLattice, LatticeError> {
    let n = arrangement.atom_count();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    if n > MAX_ATOMS {
        return Err(LatticeError::TooManyAtoms(n));
    }

    let bottom = Subspace::whole_space(arrangement.ambient_dim());
    let mut elements = vec![bottom];
    let mut canonical_index = BTreeMap::new();
    canonical_index.insert(elements[0].clone(), 0);

    let intern = |elements: &mut Vec<Subspace>,
                      canonical_index: &mut BTreeMap<Subspace, ElemId>,
                      s: Subspace|
     -> ElemId {
        if let Some(&id) = canonical_index.get(&s) {
            return id;
        }
        let id = elements.len();
        elements.push(s.clone());
        canonical_index.insert(s, id);
        id
    };

    let mut atom_elem = Vec::with_capacity(n);
    for atom in arrangement.atoms() {
        let id = intern(&mut elements, &mut canonical_index, atom.subspace.clone());
        atom_elem.push(id);
    }

    let mut subset_join = vec![0u32; 1 << n];
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let joined = if rest == 0 {
            atom_elem[low]
        } else {
            let a = elements[subset_join[rest] as usize].clone();
            let meet_space = a.intersect(&arrangement.atoms()[low].subspace)?;
            intern(&mut elements, &mut canonical_index, meet_space)
        };
        subset_join[mask] = joined as u32;
    }

    // Atoms below an element are the atoms containing it as a subspace.
    let atoms_below: Vec<Vec<usize>> = elements
        .iter()
        .map(|e| {
            (0..n)
                .filter(|&i| arrangement.atoms()[i].subspace.contains(e))
                .collect()
        })
        .collect();

    // Longest-chain rank: process elements by increasing codimension; a
    // strict predecessor strictly contains the element as a subspace.
    let mut order: Vec<ElemId> = (0..elements.len()).collect();
    order.sort_by_key(|&e| (elements[e].codim(), e));
    let mut rank = vec![0usize; elements.len()];
    for &e in &order {
        let mut best = 0;
        for &p in &order {
            if p != e && elements[p].contains(&elements[e]) && elements[p] != elements[e] {
                best = best.max(rank[p] + 1);
            }
        }
        rank[e] = best;
    }

    Ok(IntersectionLattice {
        arrangement,
        elements,
        canonical_index,
        atom_elem,
        subset_join,
        rank,
        atoms_below,
    })
}

impl IntersectionLattice {
    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn atom_count(&self) -> usize {
        self.arrangement.atom_count()
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, e: ElemId) -> &Subspace {
        &self.elements[e]
    }

    pub fn bottom(&self) -> ElemId {
        0
    }

    /// Lattice element of the i-th atom.
    pub fn atom(&self, i: usize) -> ElemId {
        self.atom_elem[i]
    }

    pub fn rank_of(&self, e: ElemId) -> usize {
        self.rank[e]
    }

    pub fn codim_of(&self, e: ElemId) -> usize {
        self.elements[e].codim()
    }

    /// Atom indices below (i.e. containing) the element, ascending.
    pub fn atoms_below(&self, e: ElemId) -> &[usize] {
        &self.atoms_below[e]
    }

    /// Order relation: `a ≤ b` iff the subspace of `a` contains that of `b`.
    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.elements[a].contains(&self.elements[b])
    }

    /// Join (intersection of subspaces) of two elements.
    pub fn join(&self, a: ElemId, b: ElemId) -> ElemId {
        let s = self.elements[a]
            .intersect(&self.elements[b])
            .expect("elements share the ambient space");
        *self
            .canonical_index
            .get(&s)
            .expect("lattice is closed under joins")
    }

    /// Meet of two elements: the join of all common lower bounds.
    pub fn meet(&self, a: ElemId, b: ElemId) -> ElemId {
        let mut acc = self.bottom();
        for z in 0..self.elements.len() {
            if self.leq(z, a) && self.leq(z, b) {
                acc = self.join(acc, z);
            }
        }
        acc
    }

    /// Join of an atom subset given by indices (duplicates allowed).
    pub fn join_of_atoms(&self, atoms: &[usize]) -> ElemId {
        let mut mask = 0usize;
        for &i in atoms {
            assert!(i < self.atom_count(), "atom index out of range");
            mask |= 1 << i;
        }
        self.join_of_mask(mask)
    }

    /// Join of an atom subset given as a bitmask.
    pub fn join_of_mask(&self, mask: usize) -> ElemId {
        self.subset_join[mask] as ElemId
    }
}

/// Outcome of the geometric-lattice test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricCheck {
    pub is_geometric: bool,
    pub violation: Option<GeometricViolation>,
}

/// Certificate for a failed test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeometricViolation {
    /// An element that is not the join of the atoms below it.
    NotAtomistic { element: ElemId },
    /// A pair violating rank(a∨b) + rank(a∧b) ≤ rank(a) + rank(b).
    NotSemimodular {
        a: ElemId,
        b: ElemId,
        rank_join: usize,
        rank_meet: usize,
        rank_a: usize,
        rank_b: usize,
    },
}

/// Tests whether the lattice is geometric: every element is a join of atoms,
/// and the longest-chain rank is submodular.  The first violation found (in
/// element order) is returned as a certificate.
pub fn is_geometric(lattice: &IntersectionLattice) -> GeometricCheck {
    for e in 0..lattice.element_count() {
        let mut mask = 0usize;
        for &i in lattice.atoms_below(e) {
            mask |= 1 << i;
        }
        if lattice.join_of_mask(mask) != e {
            return GeometricCheck {
                is_geometric: false,
                violation: Some(GeometricViolation::NotAtomistic { element: e }),
            };
        }
    }
    for a in 0..lattice.element_count() {
        for b in (a + 1)..lattice.element_count() {
            let rank_join = lattice.rank_of(lattice.join(a, b));
            let rank_meet = lattice.rank_of(lattice.meet(a, b));
            let (rank_a, rank_b) = (lattice.rank_of(a), lattice.rank_of(b));
            if rank_join + rank_meet > rank_a + rank_b {
                return GeometricCheck {
                    is_geometric: false,
                    violation: Some(GeometricViolation::NotSemimodular {
                        a,
                        b,
                        rank_join,
                        rank_meet,
                        rank_a,
                        rank_b,
                    }),
                };
            }
        }
    }
    GeometricCheck {
        is_geometric: true,
        violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn coord_subspace(ambient: usize, zeroed: &[usize]) -> QMat {
        let mut m = QMat::zero(zeroed.len(), ambient);
        for (r, &c) in zeroed.iter().enumerate() {
            m.set(r, c, rat(1));
        }
        m
    }

    /// ℂ³ arrangement of two lines sharing nothing but the origin:
    /// x1 = {z1 = z2 = 0}, x2 = {z2 = z3 = 0}.
    fn two_share_line() -> Arrangement {
        let (arr, warnings) = normalize(
            3,
            vec![
                ("x1".into(), coord_subspace(3, &[0, 1])),
                ("x2".into(), coord_subspace(3, &[1, 2])),
            ],
        )
        .unwrap();
        assert!(warnings.is_empty());
        arr
    }

    /// ℂ⁴ arrangement of three planes meeting pairwise only in the origin:
    /// x1 = {z1 = z2 = 0}, x2 = {z3 = z4 = 0}, x3 = {z1 = z3, z2 = z4}.
    fn three_pairwise_origin() -> Arrangement {
        let mut diag = QMat::zero(2, 4);
        diag.set(0, 0, rat(1));
        diag.set(0, 2, rat(-1));
        diag.set(1, 1, rat(1));
        diag.set(1, 3, rat(-1));
        let (arr, warnings) = normalize(
            4,
            vec![
                ("x1".into(), coord_subspace(4, &[0, 1])),
                ("x2".into(), coord_subspace(4, &[2, 3])),
                ("x3".into(), diag),
            ],
        )
        .unwrap();
        assert!(warnings.is_empty());
        arr
    }

    #[test]
    fn canonical_form_identifies_equal_subspaces() {
        // z1 = z2 and z2 = z1 written with different scalings.
        let mut a = QMat::zero(1, 2);
        a.set(0, 0, rat(2));
        a.set(0, 1, rat(-2));
        let mut b = QMat::zero(1, 2);
        b.set(0, 0, rat(-1));
        b.set(0, 1, rat(1));
        assert_eq!(Subspace::new(2, &a), Subspace::new(2, &b));
    }

    #[test]
    fn intersect_coordinate_planes_in_c4() {
        let a = Subspace::new(4, &coord_subspace(4, &[0, 1]));
        let b = Subspace::new(4, &coord_subspace(4, &[2, 3]));
        let meet = a.intersect(&b).unwrap();
        assert_eq!(meet.codim(), 4);
        assert!(a.contains(&meet));
        assert!(b.contains(&meet));
        // Intersection is idempotent and has the whole space as unit.
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(Subspace::whole_space(4).intersect(&a).unwrap(), a);
    }

    #[test]
    fn normalize_drops_duplicates_with_warning() {
        let (arr, warnings) = normalize(
            3,
            vec![
                ("x1".into(), coord_subspace(3, &[0, 1])),
                ("x2".into(), coord_subspace(3, &[0, 1])),
            ],
        )
        .unwrap();
        assert_eq!(arr.atom_count(), 1);
        assert_eq!(arr.atom_name(0), "x1");
        assert_eq!(warnings, vec!["dropped subspace \"x2\": duplicate of \"x1\""]);
    }

    #[test]
    fn normalize_drops_contained_subspace() {
        // {z1 = z2 = z3 = 0} ⊂ {z1 = z2 = 0} in ℂ³, so the smaller one goes.
        let (arr, warnings) = normalize(
            3,
            vec![
                ("big".into(), coord_subspace(3, &[0, 1])),
                ("small".into(), coord_subspace(3, &[0, 1, 2])),
            ],
        )
        .unwrap();
        assert_eq!(arr.atom_count(), 1);
        assert_eq!(arr.atom_name(0), "big");
        assert_eq!(
            warnings,
            vec!["dropped subspace \"small\": contained in \"big\""]
        );
    }

    #[test]
    fn normalize_rejects_hyperplanes() {
        let err = normalize(3, vec![("h".into(), coord_subspace(3, &[0]))]).unwrap_err();
        assert_eq!(
            err,
            LatticeError::CodimTooSmall {
                name: "h".into(),
                codim: 1
            }
        );
    }

    #[test]
    fn lattice_of_two_lines_in_c3() {
        let lat = build_lattice(two_share_line()).unwrap();
        // Bottom, two atoms, origin.
        assert_eq!(lat.element_count(), 4);
        let top = lat.join(lat.atom(0), lat.atom(1));
        assert_eq!(lat.codim_of(top), 3);
        assert_eq!(lat.rank_of(top), 2);
        assert_eq!(lat.rank_of(lat.atom(0)), 1);
        assert_eq!(lat.rank_of(lat.bottom()), 0);
        assert_eq!(lat.atoms_below(top), &[0, 1]);
        assert_eq!(lat.atoms_below(lat.atom(0)), &[0]);
        assert!(is_geometric(&lat).is_geometric);
    }

    #[test]
    fn lattice_of_three_pairwise_origin_planes() {
        let lat = build_lattice(three_pairwise_origin()).unwrap();
        // Bottom, three atoms, origin: all pairwise joins coincide.
        assert_eq!(lat.element_count(), 5);
        let o01 = lat.join(lat.atom(0), lat.atom(1));
        let o02 = lat.join(lat.atom(0), lat.atom(2));
        let o12 = lat.join(lat.atom(1), lat.atom(2));
        assert_eq!(o01, o02);
        assert_eq!(o01, o12);
        assert_eq!(lat.codim_of(o01), 4);
        assert_eq!(lat.rank_of(o01), 2);
        assert_eq!(lat.join_of_atoms(&[0, 1, 2]), o01);
        assert!(is_geometric(&lat).is_geometric);
    }

    #[test]
    fn chain_of_three_lines_is_not_geometric() {
        // ℂ⁴: x1 = {z1=z2=0}, x2 = {z2=z3=0}, x3 = {z3=z4=0}.  The join of
        // x1 and x3 is the origin (rank 3) but their meet is the bottom, so
        // submodularity fails on that pair.
        let (arr, _) = normalize(
            4,
            vec![
                ("x1".into(), coord_subspace(4, &[0, 1])),
                ("x2".into(), coord_subspace(4, &[1, 2])),
                ("x3".into(), coord_subspace(4, &[2, 3])),
            ],
        )
        .unwrap();
        let lat = build_lattice(arr).unwrap();
        let check = is_geometric(&lat);
        assert!(!check.is_geometric);
        match check.violation.unwrap() {
            GeometricViolation::NotSemimodular {
                a,
                b,
                rank_join,
                rank_meet,
                rank_a,
                rank_b,
            } => {
                assert_eq!((a, b), (lat.atom(0), lat.atom(2)));
                assert_eq!(rank_join, 3);
                assert_eq!(rank_meet, 0);
                assert_eq!((rank_a, rank_b), (1, 1));
            }
            other => panic!("unexpected violation {other:?}"),
        }
    }

    #[test]
    fn rank_equals_minimal_atom_join_size_on_geometric_lattices() {
        for arr in [two_share_line(), three_pairwise_origin()] {
            let lat = build_lattice(arr).unwrap();
            assert!(is_geometric(&lat).is_geometric);
            let n = lat.atom_count();
            for e in 0..lat.element_count() {
                let min_join = (0..1usize << n)
                    .filter(|&mask| lat.join_of_mask(mask) == e)
                    .map(|mask| mask.count_ones() as usize)
                    .min()
                    .expect("every element is a join of atoms");
                assert_eq!(lat.rank_of(e), min_join, "element {e}");
            }
        }
    }

    #[test]
    fn codim_is_subadditive_on_joins() {
        let lat = build_lattice(three_pairwise_origin()).unwrap();
        let n = lat.atom_count();
        for mask in 0..1usize << n {
            let total: usize = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| lat.codim_of(lat.atom(i)))
                .sum();
            assert!(lat.codim_of(lat.join_of_mask(mask)) <= total);
        }
    }

    #[test]
    fn element_set_is_order_independent() {
        let base = three_pairwise_origin();
        let mut shuffled: Vec<(String, QMat)> = base
            .atoms()
            .iter()
            .map(|a| (a.name.clone(), a.subspace.equations().clone()))
            .collect();
        shuffled.rotate_left(1);
        let (arr2, _) = normalize(4, shuffled).unwrap();
        let lat1 = build_lattice(base).unwrap();
        let lat2 = build_lattice(arr2).unwrap();
        let mut set1: Vec<_> = lat1.elements.clone();
        let mut set2: Vec<_> = lat2.elements.clone();
        set1.sort();
        set2.sort();
        assert_eq!(set1, set2);
    }

    #[test]
    fn atom_cap_is_enforced() {
        let subs: Vec<(String, QMat)> = (0..25)
            .map(|i| {
                let mut m = QMat::zero(2, 30);
                m.set(0, i, rat(1));
                m.set(1, i + 1, rat(1));
                (format!("x{i}"), m)
            })
            .collect();
        let (arr, _) = normalize(30, subs).unwrap();
        assert_eq!(build_lattice(arr).unwrap_err(), LatticeError::TooManyAtoms(25));
    }
}

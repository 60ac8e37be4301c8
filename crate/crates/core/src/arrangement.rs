//! Toric arrangements with torsion phases: layers (cosets of subtori cut
//! out by split character lattices), exact intersection with connected
//! component enumeration, saturation under intersections, the containment
//! poset with its linear extension, and the combinatorial data consumed by
//! the model builder.

use crate::lattice::{hnf, snf, Int, IntMatrix, Rat, Sublattice};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    DimMismatch,
    PhaseCountMismatch,
    DependentBasis,
    /// The lattice is not a split direct summand of the character lattice.
    NotSplitSummand,
    DuplicateLayer,
    /// The phase system has no solution.
    Inconsistent,
}

impl fmt::Display for ArrangementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangementError::DimMismatch => write!(f, "character length does not match ambient dimension"),
            ArrangementError::PhaseCountMismatch => {
                write!(f, "number of phases does not match number of characters")
            }
            ArrangementError::DependentBasis => {
                write!(f, "layer basis rows are linearly dependent; pass the system through decompose_system instead")
            }
            ArrangementError::NotSplitSummand => write!(
                f,
                "character lattice is not a split direct summand; the equations define a union of layers over its saturation — use decompose_system to enumerate them"
            ),
            ArrangementError::DuplicateLayer => write!(f, "arrangement contains a repeated layer"),
            ArrangementError::Inconsistent => write!(f, "phase system is inconsistent (empty solution set)"),
        }
    }
}

/// Reduce a rational mod 1 into `[0, 1)`.
pub fn canon_phase(x: &Rat) -> Rat {
    x - x.floor()
}

/// A connected layer `K = {t : chi(t) = e^{2 pi i phase(chi)} for chi in
/// Gamma}` of the torus with character lattice `Z^ambient`. `Gamma` is a
/// split direct summand; the phase is stored against the canonical basis of
/// `Gamma` with values in `[0,1)`, making equal layers structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Layer {
    gamma: Sublattice,
    phase: Vec<Rat>,
}

impl Layer {
    /// Builds a layer from any basis of `Gamma` with phases assigned to its
    /// rows; phases are rebased onto the canonical basis.
    pub fn new(ambient: usize, rows: &[Vec<Int>], phases: &[Rat]) -> Result<Layer, ArrangementError> {
        if phases.len() != rows.len() {
            return Err(ArrangementError::PhaseCountMismatch);
        }
        for r in rows {
            if r.len() != ambient {
                return Err(ArrangementError::DimMismatch);
            }
        }
        let m = IntMatrix::from_rows(ambient, rows).map_err(|_| ArrangementError::DimMismatch)?;
        let res = hnf(&m);
        let rank = (0..m.rows()).take_while(|&i| !res.h.is_zero_row(i)).count();
        if rank != rows.len() {
            return Err(ArrangementError::DependentBasis);
        }
        // phase of HNF row i: the same unimodular combination of the inputs
        let mut phase = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut p = Rat::zero();
            for j in 0..rows.len() {
                p += Rat::from_integer(res.u.at(i, j).clone()) * &phases[j];
            }
            phase.push(canon_phase(&p));
        }
        let gamma = Sublattice::from_matrix(&m);
        debug_assert_eq!(gamma.rank(), rank);
        if !gamma.is_saturated() {
            return Err(ArrangementError::NotSplitSummand);
        }
        Ok(Layer { gamma, phase })
    }

    /// The whole torus: no equations.
    pub fn full_torus(ambient: usize) -> Layer {
        Layer {
            gamma: Sublattice::zero(ambient),
            phase: Vec::new(),
        }
    }

    pub fn gamma(&self) -> &Sublattice {
        &self.gamma
    }

    /// Phases of the canonical basis rows of `gamma`, each in `[0,1)`.
    pub fn phase(&self) -> &[Rat] {
        &self.phase
    }

    pub fn ambient_dim(&self) -> usize {
        self.gamma.ambient_dim()
    }

    /// Rank of `Gamma` = codimension of the layer in the torus.
    pub fn rank(&self) -> usize {
        self.gamma.rank()
    }

    /// Phase of an arbitrary character of `Gamma`.
    pub fn phase_of(&self, chi: &[Int]) -> Option<Rat> {
        let coords = self.gamma.coords_of(chi)?;
        let mut p = Rat::zero();
        for (c, ph) in coords.iter().zip(&self.phase) {
            p += Rat::from_integer(c.clone()) * ph;
        }
        Some(canon_phase(&p))
    }

    /// Is `self` contained in `other`? Holds when `other`'s equations are a
    /// subset of the constraints: `Gamma_other` inside `Gamma_self` with
    /// matching phases.
    pub fn is_contained_in(&self, other: &Layer) -> bool {
        if self.ambient_dim() != other.ambient_dim() {
            return false;
        }
        for i in 0..other.gamma.rank() {
            let chi = other.gamma.basis().row(i);
            match self.phase_of(chi) {
                Some(p) => {
                    if p != other.phase[i] {
                        return false;
                    }
                }
                None => return false,
            }
        }
        true
    }
}

/// Solves the system `chi_i(t) = e^{2 pi i phases_i}` exactly: the solution
/// set is empty or a disjoint union of layers over the saturation of the
/// row span, one per element of the torsion quotient. Layers are returned
/// in canonical order.
pub fn decompose_system(chars: &IntMatrix, phases: &[Rat]) -> Result<Vec<Layer>, ArrangementError> {
    if phases.len() != chars.rows() {
        return Err(ArrangementError::PhaseCountMismatch);
    }
    let n = chars.cols();
    let s = snf(chars);
    let maxr = chars.rows().min(n);
    let rank = (0..maxr).take_while(|&i| !s.d.at(i, i).is_zero()).count();
    // beta = U * phases; rows past the rank read 0 = beta_i mod 1
    let mut beta = Vec::with_capacity(chars.rows());
    for i in 0..chars.rows() {
        let mut b = Rat::zero();
        for j in 0..chars.rows() {
            b += Rat::from_integer(s.u.at(i, j).clone()) * &phases[j];
        }
        beta.push(b);
    }
    for b in beta.iter().skip(rank) {
        if !b.is_integer() {
            return Err(ArrangementError::Inconsistent);
        }
    }
    // The saturation is spanned by the first `rank` rows of V^{-1}
    // (row i of U*chars = d_i * row i of V^{-1}).
    let gamma_rows: Vec<Vec<Int>> = (0..rank).map(|i| s.v_inv.row(i).to_vec()).collect();
    let divisors: Vec<Int> = (0..rank).map(|i| s.d.at(i, i).clone()).collect();
    let mut layers = Vec::new();
    let mut counter = vec![Int::zero(); rank];
    loop {
        let phase: Vec<Rat> = (0..rank)
            .map(|i| {
                let y = (&beta[i] + Rat::from_integer(counter[i].clone()))
                    / Rat::from_integer(divisors[i].clone());
                canon_phase(&y)
            })
            .collect();
        layers.push(
            Layer::new(n, &gamma_rows, &phase).expect("saturation rows are a split summand"),
        );
        // advance the mixed-radix counter over [0, d_i)
        let mut carry = true;
        for i in 0..rank {
            if !carry {
                break;
            }
            counter[i] += 1;
            if counter[i] == divisors[i] {
                counter[i] = Int::zero();
            } else {
                carry = false;
            }
        }
        if carry {
            break;
        }
    }
    layers.sort();
    layers.dedup();
    Ok(layers)
}

/// Connected components of the intersection of two layers; empty when the
/// combined phase system is inconsistent.
pub fn intersect_layers(a: &Layer, b: &Layer) -> Vec<Layer> {
    assert_eq!(a.ambient_dim(), b.ambient_dim());
    let n = a.ambient_dim();
    let mut rows: Vec<Vec<Int>> = a.gamma.basis().row_vecs();
    rows.truncate(a.rank());
    let mut brows = b.gamma.basis().row_vecs();
    brows.truncate(b.rank());
    rows.extend(brows);
    let mut phases: Vec<Rat> = a.phase.clone();
    phases.extend(b.phase.iter().cloned());
    let m = IntMatrix::from_rows(n, &rows).expect("consistent ambient dimensions");
    match decompose_system(&m, &phases) {
        Ok(layers) => layers,
        Err(ArrangementError::Inconsistent) => Vec::new(),
        Err(e) => panic!("unexpected intersection failure: {e}"),
    }
}

/// A finite set of distinct layers of a fixed torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    layers: Vec<Layer>,
}

impl Arrangement {
    pub fn new(dim: usize, layers: Vec<Layer>) -> Result<Arrangement, ArrangementError> {
        for l in &layers {
            if l.ambient_dim() != dim {
                return Err(ArrangementError::DimMismatch);
            }
        }
        let mut seen = BTreeSet::new();
        for l in &layers {
            if !seen.insert(l.clone()) {
                return Err(ArrangementError::DuplicateLayer);
            }
        }
        Ok(Arrangement { dim, layers })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }
}

/// The saturation of an arrangement, ordered by containment, indexed in a
/// linear extension: layers sorted by decreasing lattice rank (ties broken
/// by canonical form), so that a strictly contained layer always precedes
/// the layer containing it.
#[derive(Debug, Clone)]
pub struct LayerPoset {
    ambient_dim: usize,
    layers: Vec<Layer>,
    strict: Vec<Vec<bool>>,
}

impl LayerPoset {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn layer(&self, i: usize) -> &Layer {
        &self.layers[i]
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Strict containment `K_i` inside `K_j`.
    pub fn is_strict_sublayer(&self, i: usize, j: usize) -> bool {
        self.strict[i][j]
    }

    pub fn is_sublayer(&self, i: usize, j: usize) -> bool {
        i == j || self.strict[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.strict[i][j] || self.strict[j][i]
    }

    pub fn combinatorial_data(&self) -> CombinatorialData {
        CombinatorialData {
            ambient_dim: self.ambient_dim,
            gammas: self.layers.iter().map(|l| l.gamma.clone()).collect(),
            strict: self.strict.clone(),
        }
    }
}

/// Closure of the layer set under connected components of pairwise
/// intersections, assembled into the containment poset.
pub fn saturate_arrangement(arr: &Arrangement) -> LayerPoset {
    let mut set: BTreeSet<Layer> = arr.layers.iter().cloned().collect();
    loop {
        let list: Vec<Layer> = set.iter().cloned().collect();
        let mut added = false;
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                for l in intersect_layers(&list[i], &list[j]) {
                    added |= set.insert(l);
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut layers: Vec<Layer> = set.into_iter().collect();
    // linear extension: strictly smaller layers have strictly larger rank
    layers.sort_by(|a, b| b.rank().cmp(&a.rank()).then_with(|| a.cmp(b)));
    poset_from_layers(arr.dim(), layers)
}

fn poset_from_layers(ambient_dim: usize, layers: Vec<Layer>) -> LayerPoset {
    let m = layers.len();
    let mut strict = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j && layers[i].is_contained_in(&layers[j]) {
                strict[i][j] = true;
                debug_assert!(i < j, "linear extension violated");
            }
        }
    }
    LayerPoset {
        ambient_dim,
        layers,
        strict,
    }
}

/// What the model construction consumes: the containment poset of the
/// saturation plus the character lattice of every element, in the linear
/// extension order. Phases are deliberately absent — the rational model
/// depends only on this data.
#[derive(Debug, Clone)]
pub struct CombinatorialData {
    ambient_dim: usize,
    gammas: Vec<Sublattice>,
    strict: Vec<Vec<bool>>,
}

impl CombinatorialData {
    pub fn new(ambient_dim: usize, gammas: Vec<Sublattice>, strict: Vec<Vec<bool>>) -> Self {
        assert_eq!(gammas.len(), strict.len());
        for g in &gammas {
            assert_eq!(g.ambient_dim(), ambient_dim);
        }
        CombinatorialData {
            ambient_dim,
            gammas,
            strict,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn gamma(&self, i: usize) -> &Sublattice {
        &self.gammas[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.gammas[i].rank()
    }

    /// Strict containment of layer `i` in layer `j`.
    pub fn is_strict_sublayer(&self, i: usize, j: usize) -> bool {
        self.strict[i][j]
    }

    pub fn is_sublayer(&self, i: usize, j: usize) -> bool {
        i == j || self.strict[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        i == j || self.strict[i][j] || self.strict[j][i]
    }

    /// Reindexes the data along a permutation that is still a linear
    /// extension (used to probe order independence). `perm[k]` is the old
    /// index placed at position `k`.
    pub fn permuted(&self, perm: &[usize]) -> CombinatorialData {
        assert_eq!(perm.len(), self.len());
        let gammas: Vec<Sublattice> = perm.iter().map(|&k| self.gammas[k].clone()).collect();
        let mut strict = vec![vec![false; perm.len()]; perm.len()];
        for i in 0..perm.len() {
            for j in 0..perm.len() {
                strict[i][j] = self.strict[perm[i]][perm[j]];
                if strict[i][j] {
                    assert!(i < j, "permutation is not a linear extension");
                }
            }
        }
        CombinatorialData {
            ambient_dim: self.ambient_dim,
            gammas,
            strict,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rat, vec_i64};

    fn layer(ambient: usize, rows: &[&[i64]], phases: &[(i64, i64)]) -> Layer {
        let rows: Vec<Vec<Int>> = rows.iter().map(|r| vec_i64(r)).collect();
        let phases: Vec<Rat> = phases.iter().map(|&(n, d)| rat(n, d)).collect();
        Layer::new(ambient, &rows, &phases).unwrap()
    }

    #[test]
    fn layer_validation() {
        // split summand: valid
        assert!(Layer::new(2, &[vec_i64(&[1, 1])], &[rat(0, 1)]).is_ok());
        // index-2 sublattice: not split
        assert_eq!(
            Layer::new(2, &[vec_i64(&[2, 0])], &[rat(1, 2)]).unwrap_err(),
            ArrangementError::NotSplitSummand
        );
        // full-rank torsion point
        assert!(Layer::new(
            2,
            &[vec_i64(&[1, 0]), vec_i64(&[0, 1])],
            &[rat(1, 2), rat(1, 3)]
        )
        .is_ok());
        // dependent rows are routed to decompose_system
        assert_eq!(
            Layer::new(2, &[vec_i64(&[1, 0]), vec_i64(&[2, 0])], &[rat(0, 1), rat(0, 1)])
                .unwrap_err(),
            ArrangementError::DependentBasis
        );
    }

    #[test]
    fn layer_phase_canonicalization() {
        // same point described in two bases of Z^2
        let a = layer(2, &[&[1, 1], &[0, 1]], &[(1, 2), (1, 3)]);
        // e1 = (1,1) - (0,1) has phase 1/2 - 1/3 = 1/6
        let b = layer(2, &[&[1, 0], &[0, 1]], &[(1, 6), (1, 3)]);
        assert_eq!(a, b);
        assert_eq!(a.phase_of(&vec_i64(&[1, 1])), Some(rat(1, 2)));
        // negative and improper phases normalize into [0,1)
        let c = Layer::new(2, &[vec_i64(&[1, 0])], &[rat(-1, 4)]).unwrap();
        assert_eq!(c.phase(), &[rat(3, 4)]);
    }

    #[test]
    fn decompose_two_diagonals() {
        // t1 t2 = 1 and t1 t2^{-1} = 1: the two points (1,1), (-1,-1)
        let chars = IntMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        let layers = decompose_system(&chars, &[rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(layers.len(), 2);
        let expect_a = layer(2, &[&[1, 0], &[0, 1]], &[(0, 1), (0, 1)]);
        let expect_b = layer(2, &[&[1, 0], &[0, 1]], &[(1, 2), (1, 2)]);
        assert!(layers.contains(&expect_a));
        assert!(layers.contains(&expect_b));
    }

    #[test]
    fn decompose_already_split() {
        let chars = IntMatrix::from_i64(&[&[1, 0]]);
        let layers = decompose_system(&chars, &[rat(0, 1)]).unwrap();
        assert_eq!(layers, vec![layer(2, &[&[1, 0]], &[(0, 1)])]);
    }

    #[test]
    fn decompose_torsion_equation() {
        // t1^2 = -1: the two solutions t1 = ±i
        let chars = IntMatrix::from_i64(&[&[2, 0]]);
        let layers = decompose_system(&chars, &[rat(1, 2)]).unwrap();
        assert_eq!(layers.len(), 2);
        let phases: BTreeSet<Rat> = layers.iter().map(|l| l.phase()[0].clone()).collect();
        assert_eq!(phases, BTreeSet::from([rat(1, 4), rat(3, 4)]));
        for l in &layers {
            assert_eq!(l.gamma().basis().row(0), &vec_i64(&[1, 0])[..]);
        }
    }

    #[test]
    fn decompose_layer_count_matches_divisors() {
        let chars = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let layers = decompose_system(&chars, &[rat(0, 1), rat(0, 1)]).unwrap();
        let expected: Int = crate::lattice::elementary_divisors(&chars)
            .into_iter()
            .filter(|d| !d.is_zero())
            .product();
        assert_eq!(Int::from(layers.len()), expected);
    }

    #[test]
    fn decompose_inconsistent() {
        // t1 = 1 and t1 = -1 stacked as dependent rows
        let chars = IntMatrix::from_i64(&[&[1, 0], &[1, 0]]);
        assert_eq!(
            decompose_system(&chars, &[rat(0, 1), rat(1, 2)]).unwrap_err(),
            ArrangementError::Inconsistent
        );
    }

    #[test]
    fn intersection_examples() {
        let d1 = layer(2, &[&[1, 0]], &[(0, 1)]); // t1 = 1
        let d2 = layer(2, &[&[0, 1]], &[(0, 1)]); // t2 = 1
        let pts = intersect_layers(&d1, &d2);
        assert_eq!(pts, vec![layer(2, &[&[1, 0], &[0, 1]], &[(0, 1), (0, 1)])]);

        let a = layer(2, &[&[1, 1]], &[(0, 1)]);
        let b = layer(2, &[&[1, -1]], &[(0, 1)]);
        assert_eq!(intersect_layers(&a, &b).len(), 2);

        let m1 = layer(2, &[&[1, 0]], &[(1, 2)]); // t1 = -1
        assert!(intersect_layers(&d1, &m1).is_empty());

        // self-intersection is the layer itself
        assert_eq!(intersect_layers(&a, &a), vec![a.clone()]);
    }

    #[test]
    fn saturation_two_divisors() {
        let arr = Arrangement::new(
            2,
            vec![layer(2, &[&[1, 0]], &[(0, 1)]), layer(2, &[&[0, 1]], &[(0, 1)])],
        )
        .unwrap();
        let poset = saturate_arrangement(&arr);
        assert_eq!(poset.len(), 3);
        // the point comes first in the linear extension
        assert_eq!(poset.layer(0).rank(), 2);
        assert!(poset.is_strict_sublayer(0, 1));
        assert!(poset.is_strict_sublayer(0, 2));
        assert!(!poset.comparable(1, 2));
    }

    #[test]
    fn saturation_two_diagonals() {
        let arr = Arrangement::new(
            2,
            vec![layer(2, &[&[1, 1]], &[(0, 1)]), layer(2, &[&[1, -1]], &[(0, 1)])],
        )
        .unwrap();
        let poset = saturate_arrangement(&arr);
        assert_eq!(poset.len(), 4);
        assert_eq!(poset.layer(0).rank(), 2);
        assert_eq!(poset.layer(1).rank(), 2);
        // both points lie in both divisors
        for p in 0..2 {
            for d in 2..4 {
                assert!(poset.is_strict_sublayer(p, d));
            }
        }
    }

    #[test]
    fn saturation_single_layer_and_idempotence() {
        let l = layer(2, &[&[1, 1]], &[(1, 2)]);
        let arr = Arrangement::new(2, vec![l.clone()]).unwrap();
        let poset = saturate_arrangement(&arr);
        assert_eq!(poset.layers(), &[l]);
        // idempotence on a richer example
        let arr2 = Arrangement::new(
            2,
            vec![layer(2, &[&[1, 1]], &[(0, 1)]), layer(2, &[&[1, -1]], &[(0, 1)])],
        )
        .unwrap();
        let sat = saturate_arrangement(&arr2);
        let again = saturate_arrangement(&Arrangement::new(2, sat.layers().to_vec()).unwrap());
        assert_eq!(sat.layers(), again.layers());
    }

    #[test]
    fn inclusion_examples() {
        let divisor = layer(2, &[&[1, 0]], &[(0, 1)]); // t1 = 1
        let p11 = layer(2, &[&[1, 0], &[0, 1]], &[(0, 1), (0, 1)]);
        let pm1m1 = layer(2, &[&[1, 0], &[0, 1]], &[(1, 2), (1, 2)]);
        assert!(p11.is_contained_in(&divisor));
        assert!(!pm1m1.is_contained_in(&divisor));
        assert!(divisor.is_contained_in(&divisor));
        assert!(!divisor.is_contained_in(&p11));
    }

    #[test]
    fn poset_is_partial_order() {
        let arr = Arrangement::new(
            2,
            vec![
                layer(2, &[&[1, 1]], &[(0, 1)]),
                layer(2, &[&[1, -1]], &[(0, 1)]),
                layer(2, &[&[1, 0]], &[(0, 1)]),
            ],
        )
        .unwrap();
        let poset = saturate_arrangement(&arr);
        let m = poset.len();
        for i in 0..m {
            assert!(poset.is_sublayer(i, i));
            for j in 0..m {
                if i != j && poset.is_strict_sublayer(i, j) {
                    assert!(!poset.is_strict_sublayer(j, i), "antisymmetry");
                    assert!(i < j, "linear extension");
                    for k in 0..m {
                        if poset.is_strict_sublayer(j, k) {
                            assert!(poset.is_strict_sublayer(i, k), "transitivity");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn combinatorial_data_examples() {
        // one point in the 1-torus
        let point = Layer::new(1, &[vec_i64(&[1])], &[rat(0, 1)]).unwrap();
        let arr = Arrangement::new(1, vec![point]).unwrap();
        let data = saturate_arrangement(&arr).combinatorial_data();
        assert_eq!(data.len(), 1);
        assert_eq!(data.gamma(0), &Sublattice::full(1));

        // two coordinate divisors
        let arr = Arrangement::new(
            2,
            vec![layer(2, &[&[1, 0]], &[(0, 1)]), layer(2, &[&[0, 1]], &[(0, 1)])],
        )
        .unwrap();
        let data = saturate_arrangement(&arr).combinatorial_data();
        assert_eq!(data.len(), 3);
        assert_eq!(data.gamma(0), &Sublattice::full(2));
        assert_eq!(data.rank(1), 1);
        assert_eq!(data.rank(2), 1);
        assert!(data.is_strict_sublayer(0, 1) && data.is_strict_sublayer(0, 2));

        // empty arrangement
        let arr = Arrangement::new(2, vec![]).unwrap();
        let data = saturate_arrangement(&arr).combinatorial_data();
        assert!(data.is_empty());
    }

    #[test]
    fn duplicate_layers_rejected() {
        let l = layer(2, &[&[1, 0]], &[(0, 1)]);
        assert_eq!(
            Arrangement::new(2, vec![l.clone(), l]).unwrap_err(),
            ArrangementError::DuplicateLayer
        );
    }
}

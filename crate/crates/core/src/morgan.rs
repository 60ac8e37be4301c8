//! The rational model of a toric arrangement complement.
//!
//! From the combinatorial data of a saturated arrangement (containment poset
//! plus character lattices) and a compatible fan, this module assembles:
//! equal-sign bases for every comparable pair of layers, the compatible fan
//! itself (hyperplane refinement of a seed fan followed by resolution), the
//! presentation of the cohomology of the wonderful compactification, the
//! per-stratum presentations and their direct-sum dimension table, the model
//! differential algebra `N` whose cohomology gives the Betti numbers of the
//! complement, and comparison maps between models over different fans.

use crate::algebra::{
    AlgebraError, AlgebraMap, DegreewiseQuotient, Derivation, Dga, Element, GeneratorSpec,
    Monomial, MonomialAlgebra,
};
use crate::arrangement::CombinatorialData;
use crate::fan::{Fan, FanError};
use crate::lattice::{dot, extend_basis, Int, IntMatrix, Rat};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorganError {
    /// A layer with trivial character lattice (the whole torus) cannot be a
    /// proper arrangement element.
    LayerNotProper,
    Fan(FanError),
    /// A pair-basis character fails the constant-sign test on the fan.
    CharacterNotEqualSign(Vec<Int>),
    /// A cone's relative interior meets the subspace of this layer without
    /// lying in it.
    ConeMeetsSubspace(usize),
    /// The induced fan on the subspace of this layer is not smooth and
    /// complete.
    SubspaceFanInvalid(usize),
    Differential(AlgebraError),
    /// The model has a nonzero component above twice the torus dimension.
    NonvanishingHighDegree(usize),
    /// A requested pair has no stored basis (not strictly comparable).
    PairBasisMissing(usize, usize),
    /// The (flag, cone) pair violates the nesting conditions.
    NotNestedPair,
}

impl fmt::Display for MorganError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorganError::LayerNotProper => {
                write!(f, "arrangement layer equals the whole torus")
            }
            MorganError::Fan(e) => write!(f, "fan error: {e}"),
            MorganError::CharacterNotEqualSign(chi) => {
                write!(f, "character {chi:?} changes sign on a cone of the fan")
            }
            MorganError::ConeMeetsSubspace(i) => write!(
                f,
                "a cone's relative interior meets the subspace of layer {i} without lying in it"
            ),
            MorganError::SubspaceFanInvalid(i) => {
                write!(f, "induced fan on the subspace of layer {i} is not smooth and complete")
            }
            MorganError::Differential(e) => write!(f, "differential check failed: {e}"),
            MorganError::NonvanishingHighDegree(d) => {
                write!(f, "model is nonzero in degree {d}, above twice the torus dimension")
            }
            MorganError::PairBasisMissing(i, j) => {
                write!(f, "no stored basis for the pair ({i}, {j})")
            }
            MorganError::NotNestedPair => write!(f, "flag/cone pair is not nested"),
        }
    }
}

impl From<FanError> for MorganError {
    fn from(e: FanError) -> Self {
        MorganError::Fan(e)
    }
}

/// For every strictly comparable pair `(i, j)` — `j = data.len()` denotes
/// the whole torus with zero lattice — a basis of `Gamma_i` whose trailing
/// `rank(Gamma_j)` rows are the canonical basis of `Gamma_j`. The leading
/// rows are the "completion" characters whose sign data feeds the pair
/// polynomials.
pub type PairBases = BTreeMap<(usize, usize), IntMatrix>;

fn check_proper(data: &CombinatorialData) -> Result<(), MorganError> {
    for i in 0..data.len() {
        if data.rank(i) == 0 {
            return Err(MorganError::LayerNotProper);
        }
    }
    Ok(())
}

/// Standard equal-sign basis choice: lattice-extension bases, completions
/// first.
pub fn equal_sign_bases(data: &CombinatorialData) -> Result<PairBases, MorganError> {
    check_proper(data)?;
    let m = data.len();
    let mut out = PairBases::new();
    for i in 0..m {
        for j in i + 1..m {
            if !data.is_strict_sublayer(i, j) {
                continue;
            }
            // layers: K_i inside K_j, lattices: Gamma_j inside Gamma_i
            let e = extend_basis(data.gamma(j), data.gamma(i))
                .expect("saturated sublattice extends");
            let rj = data.rank(j);
            let ri = data.rank(i);
            let mut rows: Vec<Vec<Int>> = Vec::with_capacity(ri);
            for r in rj..ri {
                rows.push(e.row(r).to_vec());
            }
            for r in 0..rj {
                rows.push(e.row(r).to_vec());
            }
            out.insert(
                (i, j),
                IntMatrix::from_rows(data.ambient_dim(), &rows).expect("basis rows"),
            );
        }
        // the virtual top layer (whole torus, zero lattice)
        out.insert((i, m), data.gamma(i).basis().clone());
    }
    Ok(out)
}

/// A second valid choice: the completion rows of every pair basis negated.
/// Still a basis with the same trailing rows, still equal-sign on the same
/// fan; the pair polynomials genuinely change.
pub fn negate_completions(data: &CombinatorialData, bases: &PairBases) -> PairBases {
    let m = data.len();
    let mut out = PairBases::new();
    for (&(i, j), mat) in bases {
        let rj = if j == m { 0 } else { data.rank(j) };
        let lead = mat.rows() - rj;
        let mut rows = mat.row_vecs();
        for row in rows.iter_mut().take(lead) {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        out.insert(
            (i, j),
            IntMatrix::from_rows(mat.cols(), &rows).expect("basis rows"),
        );
    }
    out
}

/// Union of all pair-basis rows: the characters the fan must keep
/// sign-constant per cone.
pub fn char_set(bases: &PairBases) -> Vec<Vec<Int>> {
    let mut set: BTreeSet<Vec<Int>> = BTreeSet::new();
    for mat in bases.values() {
        for r in 0..mat.rows() {
            set.insert(mat.row(r).to_vec());
        }
    }
    set.into_iter().collect()
}

/// A fan compatible with the arrangement data, together with the equal-sign
/// pair bases that produced (and are certified against) it.
#[derive(Debug, Clone)]
pub struct CompatibleFan {
    pub fan: Fan,
    pub pair_bases: PairBases,
}

fn product_of_lines(n: usize) -> Fan {
    if n == 0 {
        return Fan::point();
    }
    let mut f = Fan::projective_line();
    for _ in 1..n {
        f = Fan::product(&f, &Fan::projective_line());
    }
    f
}

/// Builds a compatible fan from the standard seed (a product of projective
/// lines) and the standard bases.
pub fn build_compatible_fan(data: &CombinatorialData) -> Result<CompatibleFan, MorganError> {
    let bases = equal_sign_bases(data)?;
    let seed = product_of_lines(data.ambient_dim());
    build_compatible_fan_with(data, bases, &seed)
}

/// Same pipeline over a caller-chosen complete seed fan and bases: refine
/// along every character hyperplane, resolve to a smooth fan, then verify
/// every compatibility invariant (hard errors, no fallback).
pub fn build_compatible_fan_with(
    data: &CombinatorialData,
    bases: PairBases,
    seed: &Fan,
) -> Result<CompatibleFan, MorganError> {
    check_proper(data)?;
    let chars = char_set(&bases);
    let fan = if chars.is_empty() {
        seed.clone()
    } else {
        seed.hyperplane_refine(&chars).resolve_smooth()
    };
    verify_compatible(&fan, data, &bases)?;
    Ok(CompatibleFan { fan, pair_bases: bases })
}

/// Certifies a fan against arrangement data: the fan is smooth, complete
/// and projective; every pair-basis character is sign-constant per cone;
/// every cone is inside or clear of every layer subspace; every induced
/// subspace fan is smooth and complete.
pub fn verify_compatible(
    fan: &Fan,
    data: &CombinatorialData,
    bases: &PairBases,
) -> Result<(), MorganError> {
    if !fan.report().all() {
        return Err(MorganError::Fan(FanError::NotValid(
            "smooth, complete and projective",
        )));
    }
    for chi in char_set(bases) {
        if !fan.equal_sign(&chi) {
            return Err(MorganError::CharacterNotEqualSign(chi));
        }
    }
    for i in 0..data.len() {
        match fan.subfan_in_subspace(data.gamma(i)) {
            Err(FanError::NotCompatible) => return Err(MorganError::ConeMeetsSubspace(i)),
            Err(e) => return Err(MorganError::Fan(e)),
            Ok(sub) => {
                let r = sub.report();
                if !(r.smooth && r.complete) {
                    return Err(MorganError::SubspaceFanInvalid(i));
                }
            }
        }
    }
    Ok(())
}

/// Generator layout shared by the presentation algebras: `x` variables for
/// the fan rays, `t` variables for the poset elements, optionally followed
/// by their odd partners `tau` and `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenLayout {
    pub nrays: usize,
    pub m: usize,
    pub with_odds: bool,
}

impl GenLayout {
    pub fn even_only(nrays: usize, m: usize) -> Self {
        GenLayout {
            nrays,
            m,
            with_odds: false,
        }
    }

    pub fn with_odds(nrays: usize, m: usize) -> Self {
        GenLayout {
            nrays,
            m,
            with_odds: true,
        }
    }

    pub fn ngens(&self) -> usize {
        if self.with_odds {
            2 * (self.nrays + self.m)
        } else {
            self.nrays + self.m
        }
    }

    pub fn x(&self, ray: usize) -> usize {
        debug_assert!(ray < self.nrays);
        ray
    }

    pub fn t(&self, layer: usize) -> usize {
        debug_assert!(layer < self.m);
        self.nrays + layer
    }

    pub fn tau(&self, ray: usize) -> usize {
        debug_assert!(self.with_odds && ray < self.nrays);
        self.nrays + self.m + ray
    }

    pub fn kappa(&self, layer: usize) -> usize {
        debug_assert!(self.with_odds && layer < self.m);
        2 * self.nrays + self.m + layer
    }

    fn gen_specs(&self) -> Vec<GeneratorSpec> {
        let mut gens = Vec::with_capacity(self.ngens());
        for i in 0..self.nrays {
            gens.push(GeneratorSpec::even(&format!("x{i}"), 2));
        }
        for j in 0..self.m {
            gens.push(GeneratorSpec::even(&format!("t{}", j + 1), 2));
        }
        if self.with_odds {
            for i in 0..self.nrays {
                gens.push(GeneratorSpec::odd(&format!("tau{i}"), 1));
            }
            for j in 0..self.m {
                gens.push(GeneratorSpec::odd(&format!("k{}", j + 1), 1));
            }
        }
        gens
    }
}

/// `in_v[i][c]`: does ray `c` lie in the subspace of layer `i`?
fn rays_in_subspaces(fan: &Fan, data: &CombinatorialData) -> Vec<Vec<bool>> {
    (0..data.len())
        .map(|i| {
            let basis = data.gamma(i).basis();
            fan.rays()
                .iter()
                .map(|c| (0..basis.rows()).all(|r| dot(basis.row(r), c).is_zero()))
                .collect()
        })
        .collect()
}

fn comparability(data: &CombinatorialData) -> Vec<Vec<bool>> {
    (0..data.len())
        .map(|i| (0..data.len()).map(|j| data.comparable(i, j)).collect())
        .collect()
}

/// `min(0, chi)` as ray coefficients for the fan's piecewise-linear basis.
fn negative_part_coeffs(fan: &Fan, chi: &[Int]) -> Vec<(usize, Int)> {
    debug_assert!(fan.equal_sign(chi));
    let mut out = Vec::new();
    for (c, ray) in fan.rays().iter().enumerate() {
        let p = dot(chi, ray);
        if p.is_negative() {
            out.push((c, p));
        }
    }
    out
}

/// The linear forms cutting cohomology out of the Stanley–Reisner ring,
/// over the given layout.
fn xi_rows(fan: &Fan, layout: GenLayout) -> Vec<Element> {
    let n = fan.dim();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = Element::zero();
        for (i, c) in fan.rays().iter().enumerate() {
            if !c[j].is_zero() {
                e.add_term(
                    Monomial::generator(layout.ngens(), layout.x(i)),
                    Rat::from_integer(c[j].clone()),
                );
            }
        }
        out.push(e);
    }
    out
}

/// Indices of the layers contained in layer `i`, including `i` itself.
fn below_set(data: &CombinatorialData, i: usize) -> Vec<usize> {
    (0..data.len()).filter(|&h| data.is_sublayer(h, i)).collect()
}

/// `-sum of t_h over the layers inside layer i` — the argument plugged into
/// the pair polynomials.
fn minus_t_sum(data: &CombinatorialData, layout: GenLayout, i: usize) -> Element {
    let mut e = Element::zero();
    for h in below_set(data, i) {
        e.add_term(
            Monomial::generator(layout.ngens(), layout.t(h)),
            -Rat::one(),
        );
    }
    e
}

/// The pair polynomial evaluated at `t_arg`: the product over the leading
/// (completion) rows `chi` of the pair basis of `(t_arg - chi^-)`, where
/// `chi^-` is the degree-2 negative-part element. An empty product is 1.
pub fn pair_polynomial_at(
    cf: &CompatibleFan,
    data: &CombinatorialData,
    alg: &MonomialAlgebra,
    layout: GenLayout,
    i: usize,
    j: usize,
    t_arg: &Element,
) -> Result<Element, MorganError> {
    let mat = cf
        .pair_bases
        .get(&(i, j))
        .ok_or(MorganError::PairBasisMissing(i, j))?;
    let rj = if j == data.len() { 0 } else { data.rank(j) };
    let lead = mat.rows() - rj;
    let mut acc = alg.one();
    for r in 0..lead {
        let chi = mat.row(r);
        let mut factor = t_arg.clone();
        for (cidx, coeff) in negative_part_coeffs(&cf.fan, chi) {
            factor.add_term(
                Monomial::generator(layout.ngens(), layout.x(cidx)),
                -Rat::from_integer(coeff),
            );
        }
        acc = alg.mul(&acc, &factor);
    }
    Ok(acc)
}

/// All strictly comparable pairs `(i, j)`, `j = data.len()` meaning the
/// whole torus.
fn comparable_pairs(data: &CombinatorialData) -> Vec<(usize, usize)> {
    let m = data.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if data.is_strict_sublayer(i, j) {
                out.push((i, j));
            }
        }
        out.push((i, m));
    }
    out
}

/// The relations `F(i, j)`: pair polynomial at `-sum t_h (h inside i)`,
/// multiplied by `t_j` (by 1 for the whole-torus pair).
fn f_relations(
    cf: &CompatibleFan,
    data: &CombinatorialData,
    alg: &MonomialAlgebra,
    layout: GenLayout,
) -> Vec<Element> {
    let m = data.len();
    let mut out = Vec::new();
    for (i, j) in comparable_pairs(data) {
        let p = pair_polynomial_at(cf, data, alg, layout, i, j, &minus_t_sum(data, layout, i))
            .expect("pair basis stored for every comparable pair");
        let rel = if j == m {
            p
        } else {
            alg.mul(
                &p,
                &Element::single(Monomial::generator(layout.ngens(), layout.t(j)), Rat::one()),
            )
        };
        out.push(rel);
    }
    out
}

/// Ambient algebra of the compactification presentation: Stanley–Reisner
/// admissibility on the `x` part, `t` variables unconstrained by monomials.
fn y_ambient(cf: &CompatibleFan, data: &CombinatorialData) -> MonomialAlgebra {
    let layout = GenLayout::even_only(cf.fan.rays().len(), data.len());
    let fan = cf.fan.clone();
    let nrays = layout.nrays;
    let adm = Arc::new(move |mon: &Monomial| {
        let xs: Vec<usize> = (0..nrays).filter(|&i| mon.exp(i) > 0).collect();
        fan.is_face(&xs)
    });
    MonomialAlgebra::new(layout.gen_specs(), adm)
}

/// Monomial families of the presentation ideal: `t_i x_c` for rays outside
/// the layer subspace and `t_s t_r` for incomparable layers.
fn y_monomial_relations(
    data: &CombinatorialData,
    layout: GenLayout,
    in_v: &[Vec<bool>],
    cmp: &[Vec<bool>],
) -> Vec<Element> {
    let mut out = Vec::new();
    for i in 0..data.len() {
        for c in 0..layout.nrays {
            if !in_v[i][c] {
                let mut exps = vec![0u32; layout.ngens()];
                exps[layout.t(i)] = 1;
                exps[layout.x(c)] = 1;
                out.push(Element::single(Monomial::from_exps(exps), Rat::one()));
            }
        }
    }
    for s in 0..data.len() {
        for r in s + 1..data.len() {
            if !cmp[s][r] {
                let mut exps = vec![0u32; layout.ngens()];
                exps[layout.t(s)] = 1;
                exps[layout.t(r)] = 1;
                out.push(Element::single(Monomial::from_exps(exps), Rat::one()));
            }
        }
    }
    out
}

/// Presentation of the cohomology of the compactified arrangement: the
/// Stanley–Reisner ring with `t` classes modulo the linear forms, the
/// monomial families, and the pair-polynomial relations.
pub fn y_quotient(
    cf: &CompatibleFan,
    data: &CombinatorialData,
    dmax: usize,
) -> DegreewiseQuotient {
    let layout = GenLayout::even_only(cf.fan.rays().len(), data.len());
    let alg = y_ambient(cf, data);
    let in_v = rays_in_subspaces(&cf.fan, data);
    let cmp = comparability(data);
    let mut ideal = xi_rows(&cf.fan, layout);
    ideal.extend(y_monomial_relations(data, layout, &in_v, &cmp));
    ideal.extend(f_relations(cf, data, &alg, layout));
    DegreewiseQuotient::new(alg, ideal, dmax)
}

/// Graded dimensions of the compactification cohomology up to twice the
/// torus dimension.
pub fn y_cohomology(cf: &CompatibleFan, data: &CombinatorialData) -> Vec<usize> {
    y_quotient(cf, data, 2 * cf.fan.dim()).dims()
}

/// A boundary stratum label: an increasing flag of poset indices (smallest
/// layer first) and a cone of the fan inside the first flag element's
/// subspace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NestedPair {
    pub flag: Vec<usize>,
    pub cone: Vec<usize>,
}

impl NestedPair {
    pub fn codim(&self) -> usize {
        self.flag.len() + self.cone.len()
    }
}

fn chains(data: &CombinatorialData) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(current) = stack.pop() {
        let start = current.last().map_or(0, |&l| l + 1);
        for next in start..data.len() {
            let ok = match current.last() {
                None => true,
                Some(&l) => data.is_strict_sublayer(l, next),
            };
            if ok {
                let mut c = current.clone();
                c.push(next);
                out.push(c.clone());
                stack.push(c);
            }
        }
    }
    out.sort();
    out
}

/// All strata labels: every flag (including empty) with every cone inside
/// the subspace of the flag's first element (every cone, for the empty
/// flag).
pub fn nested_pairs(cf: &CompatibleFan, data: &CombinatorialData) -> Vec<NestedPair> {
    let in_v = rays_in_subspaces(&cf.fan, data);
    let cones = cf.fan.all_cones();
    let mut out = Vec::new();
    for flag in chains(data) {
        for cone in &cones {
            let ok = match flag.first() {
                None => true,
                Some(&j1) => cone.iter().all(|&r| in_v[j1][r]),
            };
            if ok {
                out.push(NestedPair {
                    flag: flag.clone(),
                    cone: cone.clone(),
                });
            }
        }
    }
    out.sort();
    out
}

fn is_nested(cf: &CompatibleFan, data: &CombinatorialData, pair: &NestedPair) -> bool {
    if !cf.fan.is_face(&pair.cone) {
        return false;
    }
    for w in pair.flag.windows(2) {
        if !data.is_strict_sublayer(w[0], w[1]) {
            return false;
        }
    }
    if let Some(&j1) = pair.flag.first() {
        let in_v = rays_in_subspaces(&cf.fan, data);
        if !pair.cone.iter().all(|&r| in_v[j1][r]) {
            return false;
        }
    }
    true
}

/// Cohomology dimensions of one closed stratum, computed from its
/// presentation: the colon Stanley–Reisner algebra of the cone, `t`
/// variables restricted by the flag, the projected ideal, and the minimal
/// extra pair-polynomial relations. Degrees run to twice the stratum
/// dimension.
pub fn stratum_dims(
    cf: &CompatibleFan,
    data: &CombinatorialData,
    pair: &NestedPair,
) -> Result<Vec<usize>, MorganError> {
    if !is_nested(cf, data, pair) {
        return Err(MorganError::NotNestedPair);
    }
    let n = cf.fan.dim();
    let codim = pair.codim();
    debug_assert!(codim <= n);
    let dmax = 2 * (n - codim);
    let layout = GenLayout::even_only(cf.fan.rays().len(), data.len());
    let in_v = rays_in_subspaces(&cf.fan, data);
    let cmp = comparability(data);

    // which x and t generators survive in this stratum
    let keep_x: Vec<bool> = (0..layout.nrays)
        .map(|c| match pair.flag.first() {
            None => true,
            Some(&j1) => in_v[j1][c],
        })
        .collect();
    let keep_t: Vec<bool> = (0..data.len())
        .map(|i| {
            pair.cone.iter().all(|&r| in_v[i][r])
                && pair.flag.iter().all(|&fj| cmp[i][fj])
        })
        .collect();

    let fan = cf.fan.clone();
    let cone = pair.cone.clone();
    let kx = keep_x.clone();
    let kt = keep_t.clone();
    let nrays = layout.nrays;
    let m = data.len();
    let cmp2 = cmp.clone();
    let adm = Arc::new(move |mon: &Monomial| {
        let mut xs: Vec<usize> = Vec::new();
        for i in 0..nrays {
            if mon.exp(i) > 0 {
                if !kx[i] {
                    return false;
                }
                xs.push(i);
            }
        }
        for &r in &cone {
            if !xs.contains(&r) {
                xs.push(r);
            }
        }
        xs.sort_unstable();
        if !fan.is_face(&xs) {
            return false;
        }
        for j in 0..m {
            if mon.exp(nrays + j) > 0 && !kt[j] {
                return false;
            }
        }
        for a in 0..m {
            if mon.exp(nrays + a) == 0 {
                continue;
            }
            for b in a + 1..m {
                if mon.exp(nrays + b) > 0 && !cmp2[a][b] {
                    return false;
                }
            }
        }
        true
    });
    let alg = MonomialAlgebra::new(layout.gen_specs(), adm);

    let mut ideal = xi_rows(&cf.fan, layout);
    // the projected global monomial family t_i x_c is partially absorbed by
    // the admissibility above (killed generators); the survivors still need
    // their pairwise constraints
    for i in 0..data.len() {
        for c in 0..layout.nrays {
            if keep_t[i] && keep_x[c] && !in_v[i][c] {
                let mut exps = vec![0u32; layout.ngens()];
                exps[layout.t(i)] = 1;
                exps[layout.x(c)] = 1;
                ideal.push(Element::single(Monomial::from_exps(exps), Rat::one()));
            }
        }
    }
    ideal.extend(f_relations(cf, data, &alg, layout));
    // minimal extra relations: for each layer with a flag element strictly
    // above it, the pair polynomial against the smallest such element
    for i in 0..data.len() {
        let above: Vec<usize> = pair
            .flag
            .iter()
            .copied()
            .filter(|&s| data.is_strict_sublayer(i, s))
            .collect();
        if let Some(&h) = above.iter().min() {
            let p = pair_polynomial_at(cf, data, &alg, layout, i, h, &minus_t_sum(data, layout, i))
                .expect("pair basis stored");
            ideal.push(p);
        }
    }
    Ok(DegreewiseQuotient::new(alg, ideal, dmax).dims())
}

/// Dimension table of the direct-sum model: each stratum's cohomology
/// contributes shifted up by the stratum codimension. Serves as the
/// independent cross-check of the model algebra's graded dimensions.
pub fn morgan_direct(
    cf: &CompatibleFan,
    data: &CombinatorialData,
) -> Result<Vec<usize>, MorganError> {
    let n = cf.fan.dim();
    let mut out = vec![0usize; 2 * n + 1];
    for pair in nested_pairs(cf, data) {
        let dims = stratum_dims(cf, data, &pair)?;
        let shift = pair.codim();
        for (k, d) in dims.into_iter().enumerate() {
            out[k + shift] += d;
        }
    }
    Ok(out)
}

/// Ambient algebra of the model: even `x`/`t` and odd `tau`/`kappa`, with
/// Stanley–Reisner admissibility on the ray support (x and tau combined)
/// and pairwise comparability on the layer support (t and kappa combined).
pub fn morgan_ambient(cf: &CompatibleFan, data: &CombinatorialData) -> MonomialAlgebra {
    let layout = GenLayout::with_odds(cf.fan.rays().len(), data.len());
    let fan = cf.fan.clone();
    let cmp = comparability(data);
    let nrays = layout.nrays;
    let m = layout.m;
    let adm = Arc::new(move |mon: &Monomial| {
        let mut rays: Vec<usize> = Vec::new();
        for i in 0..nrays {
            if mon.exp(i) > 0 || mon.exp(nrays + m + i) > 0 {
                rays.push(i);
            }
        }
        if !fan.is_face(&rays) {
            return false;
        }
        let mut layers: Vec<usize> = Vec::new();
        for j in 0..m {
            if mon.exp(nrays + j) > 0 || mon.exp(2 * nrays + m + j) > 0 {
                layers.push(j);
            }
        }
        for a in 0..layers.len() {
            for b in a + 1..layers.len() {
                if !cmp[layers[a]][layers[b]] {
                    return false;
                }
            }
        }
        true
    });
    MonomialAlgebra::new(layout.gen_specs(), adm)
}

/// The model ideal split by origin: the linear forms inherited from the
/// fan algebra, then the three relation families — the quadratic monomials
/// pairing each layer variable (even or odd) with each ray variable
/// outside its subspace; the pair-polynomial relations `F(i,j)`; and their
/// odd companions against `kappa_j`.
pub struct ThetaFamilies {
    pub xi: Vec<Element>,
    pub monomial: Vec<Element>,
    pub f_even: Vec<Element>,
    pub f_odd: Vec<Element>,
}

pub fn theta_families(cf: &CompatibleFan, data: &CombinatorialData) -> ThetaFamilies {
    let layout = GenLayout::with_odds(cf.fan.rays().len(), data.len());
    let alg = morgan_ambient(cf, data);
    let in_v = rays_in_subspaces(&cf.fan, data);
    let xi = xi_rows(&cf.fan, layout);
    // family (1): x_c t_j, tau_c t_j, x_c kappa_j, tau_c kappa_j for rays
    // outside the layer subspace
    let mut monomial = Vec::new();
    for j in 0..data.len() {
        for c in 0..layout.nrays {
            if in_v[j][c] {
                continue;
            }
            for (a, b) in [
                (layout.x(c), layout.t(j)),
                (layout.tau(c), layout.t(j)),
                (layout.x(c), layout.kappa(j)),
                (layout.tau(c), layout.kappa(j)),
            ] {
                let mut exps = vec![0u32; layout.ngens()];
                exps[a] = 1;
                exps[b] = 1;
                monomial.push(Element::single(Monomial::from_exps(exps), Rat::one()));
            }
        }
    }
    // family (2): F(i, j) for all strictly comparable pairs
    let f_even = f_relations(cf, data, &alg, layout);
    // family (3): pair polynomial times kappa_j for proper pairs
    let mut f_odd = Vec::new();
    for (i, j) in comparable_pairs(data) {
        if j == data.len() {
            continue;
        }
        let p = pair_polynomial_at(cf, data, &alg, layout, i, j, &minus_t_sum(data, layout, i))
            .expect("pair basis stored");
        let rel = alg.mul(
            &p,
            &Element::single(
                Monomial::generator(layout.ngens(), layout.kappa(j)),
                Rat::one(),
            ),
        );
        f_odd.push(rel);
    }
    ThetaFamilies {
        xi,
        monomial,
        f_even,
        f_odd,
    }
}

pub fn theta_ideal(cf: &CompatibleFan, data: &CombinatorialData) -> Vec<Element> {
    let fam = theta_families(cf, data);
    let mut ideal = fam.xi;
    ideal.extend(fam.monomial);
    ideal.extend(fam.f_even);
    ideal.extend(fam.f_odd);
    ideal.retain(|e| !e.is_zero());
    ideal
}

/// The differential: `tau_c` goes to `x_c`, `kappa_j` to `t_j`, even
/// generators to zero.
pub fn morgan_differential(alg: &MonomialAlgebra, layout: GenLayout) -> Derivation {
    assert!(layout.with_odds);
    let mut images = vec![Element::zero(); layout.ngens()];
    for c in 0..layout.nrays {
        images[layout.tau(c)] = Element::single(
            Monomial::generator(layout.ngens(), layout.x(c)),
            Rat::one(),
        );
    }
    for j in 0..layout.m {
        images[layout.kappa(j)] = Element::single(
            Monomial::generator(layout.ngens(), layout.t(j)),
            Rat::one(),
        );
    }
    Derivation::new(alg, images)
}

/// Generators of the monomial ideal of the model ambient: mixed even/odd
/// squarefree monomials over minimal non-faces, and all even/odd pairings
/// of incomparable layers. Used to certify maps out of the model.
pub fn morgan_monomial_relations(cf: &CompatibleFan, data: &CombinatorialData) -> Vec<Monomial> {
    let layout = GenLayout::with_odds(cf.fan.rays().len(), data.len());
    let mut out = Vec::new();
    for nonface in crate::toric::minimal_nonfaces(&cf.fan) {
        // every way of marking each ray even (x) or odd (tau)
        let k = nonface.len();
        for mask in 0..(1u32 << k) {
            let mut exps = vec![0u32; layout.ngens()];
            for (pos, &ray) in nonface.iter().enumerate() {
                if mask >> pos & 1 == 1 {
                    exps[layout.tau(ray)] = 1;
                } else {
                    exps[layout.x(ray)] = 1;
                }
            }
            out.push(Monomial::from_exps(exps));
        }
    }
    for a in 0..data.len() {
        for b in a + 1..data.len() {
            if data.comparable(a, b) {
                continue;
            }
            for (ga, gb) in [
                (layout.t(a), layout.t(b)),
                (layout.t(a), layout.kappa(b)),
                (layout.kappa(a), layout.t(b)),
                (layout.kappa(a), layout.kappa(b)),
            ] {
                let mut exps = vec![0u32; layout.ngens()];
                exps[ga] = 1;
                exps[gb] = 1;
                out.push(Monomial::from_exps(exps));
            }
        }
    }
    out
}

/// The assembled model: a differential graded quotient, exact through
/// degree `2n + 2`, vanishing above `2n`.
pub struct MorganModel {
    pub dga: Dga,
    pub n: usize,
    pub m: usize,
    pub nrays: usize,
}

impl fmt::Debug for MorganModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MorganModel(n {}, m {}, dims {:?})",
            self.n,
            self.m,
            self.dga.dims()
        )
    }
}

pub fn build_model(
    cf: &CompatibleFan,
    data: &CombinatorialData,
) -> Result<MorganModel, MorganError> {
    build_model_with_ideal(cf, data, theta_ideal(cf, data))
}

/// Assembles the model over an explicit ideal. Exists so tests can check
/// that tampering with the ideal (dropping a relation family) breaks the
/// model or its cohomology; the standard entry point passes the full ideal.
pub fn build_model_with_ideal(
    cf: &CompatibleFan,
    data: &CombinatorialData,
    ideal: Vec<Element>,
) -> Result<MorganModel, MorganError> {
    let n = cf.fan.dim();
    let layout = GenLayout::with_odds(cf.fan.rays().len(), data.len());
    let alg = morgan_ambient(cf, data);
    let quotient = DegreewiseQuotient::new(alg.clone(), ideal, 2 * n + 2);
    let d = morgan_differential(&alg, layout);
    let dga = Dga::new(quotient, d).map_err(MorganError::Differential)?;
    for deg in (2 * n + 1)..=(2 * n + 2) {
        if dga.quotient().dim(deg) != 0 {
            return Err(MorganError::NonvanishingHighDegree(deg));
        }
    }
    Ok(MorganModel {
        dga,
        n,
        m: data.len(),
        nrays: cf.fan.rays().len(),
    })
}

/// Betti numbers of the arrangement complement: cohomology of the model in
/// degrees `0..=2n`.
pub fn betti(model: &MorganModel) -> Vec<usize> {
    let h = model.dga.cohomology_dims(2 * model.n + 1);
    debug_assert_eq!(h[2 * model.n + 1], 0);
    debug_assert_eq!(h[0], 1);
    h[..=2 * model.n].to_vec()
}

/// End-to-end: compatible fan from the standard seed, model, cohomology.
pub fn betti_numbers(data: &CombinatorialData) -> Result<Vec<usize>, MorganError> {
    let cf = build_compatible_fan(data)?;
    let model = build_model(&cf, data)?;
    Ok(betti(&model))
}

/// The comparison map between models over a fan and a refinement of it:
/// ray variables (even and odd) map through the subdivision coefficients,
/// layer variables map identically.
pub fn phi_map(
    coarse: &CompatibleFan,
    fine: &CompatibleFan,
    data: &CombinatorialData,
) -> Result<AlgebraMap, MorganError> {
    if fine.fan.refines(&coarse.fan).is_none() {
        return Err(MorganError::Fan(FanError::NotValid("a refinement")));
    }
    let src_layout = GenLayout::with_odds(coarse.fan.rays().len(), data.len());
    let tgt_layout = GenLayout::with_odds(fine.fan.rays().len(), data.len());
    let src = morgan_ambient(coarse, data);
    let tgt = morgan_ambient(fine, data);
    let mut images = vec![Element::zero(); src_layout.ngens()];
    for c in 0..src_layout.nrays {
        let mut even = Element::zero();
        let mut odd = Element::zero();
        for (d, ray) in fine.fan.rays().iter().enumerate() {
            let v: Vec<Rat> = ray.iter().map(|x| Rat::from_integer(x.clone())).collect();
            let s = coarse.fan.eval_s(c, &v).expect("complete fan");
            if !s.is_zero() {
                even.add_term(
                    Monomial::generator(tgt_layout.ngens(), tgt_layout.x(d)),
                    s.clone(),
                );
                odd.add_term(
                    Monomial::generator(tgt_layout.ngens(), tgt_layout.tau(d)),
                    s,
                );
            }
        }
        images[src_layout.x(c)] = even;
        images[src_layout.tau(c)] = odd;
    }
    for j in 0..data.len() {
        images[src_layout.t(j)] = Element::single(
            Monomial::generator(tgt_layout.ngens(), tgt_layout.t(j)),
            Rat::one(),
        );
        images[src_layout.kappa(j)] = Element::single(
            Monomial::generator(tgt_layout.ngens(), tgt_layout.kappa(j)),
            Rat::one(),
        );
    }
    Ok(AlgebraMap::new(&src, &tgt, images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{saturate_arrangement, Arrangement, Layer};
    use crate::lattice::{rat, vec_i64};

    fn data_from(dim: usize, specs: &[(&[&[i64]], &[(i64, i64)])]) -> CombinatorialData {
        let layers: Vec<Layer> = specs
            .iter()
            .map(|(rows, phases)| {
                let rows: Vec<Vec<Int>> = rows.iter().map(|r| vec_i64(r)).collect();
                let phases: Vec<Rat> = phases.iter().map(|&(n, d)| rat(n, d)).collect();
                Layer::new(dim, &rows, &phases).unwrap()
            })
            .collect();
        saturate_arrangement(&Arrangement::new(dim, layers).unwrap()).combinatorial_data()
    }

    /// One torsion point in the 1-torus.
    fn a1() -> CombinatorialData {
        data_from(1, &[(&[&[1]], &[(0, 1)])])
    }

    #[test]
    fn a1_pair_bases_and_fan() {
        let data = a1();
        let cf = build_compatible_fan(&data).unwrap();
        assert_eq!(cf.fan, Fan::projective_line());
        assert_eq!(cf.pair_bases.len(), 1);
        let b = &cf.pair_bases[&(0, 1)];
        assert_eq!(b.rows(), 1);
    }

    #[test]
    fn a1_y_cohomology() {
        let data = a1();
        let cf = build_compatible_fan(&data).unwrap();
        assert_eq!(y_cohomology(&cf, &data), vec![1, 0, 1]);
    }

    #[test]
    fn a1_theta_and_model() {
        let data = a1();
        let cf = build_compatible_fan(&data).unwrap();
        let theta = theta_ideal(&cf, &data);
        // 1 linear form + 8 quadratic monomials + 1 pair relation
        assert_eq!(theta.len(), 10);
        let model = build_model(&cf, &data).unwrap();
        assert_eq!(model.dga.dims(), vec![1, 3, 1, 0, 0]);
        assert_eq!(betti(&model), vec![1, 2, 0]);
    }

    #[test]
    fn a1_f_relation_content() {
        // F(1, top) = -t_1 + x_minus on the line fan
        let data = a1();
        let cf = build_compatible_fan(&data).unwrap();
        let layout = GenLayout::with_odds(2, 1);
        let alg = morgan_ambient(&cf, &data);
        let p = pair_polynomial_at(
            &cf,
            &data,
            &alg,
            layout,
            0,
            1,
            &minus_t_sum(&data, layout, 0),
        )
        .unwrap();
        let minus = cf.fan.ray_index(&vec_i64(&[-1])).unwrap();
        let mut expected = Element::single(
            Monomial::generator(layout.ngens(), layout.t(0)),
            -Rat::one(),
        );
        expected.add_term(
            Monomial::generator(layout.ngens(), layout.x(minus)),
            Rat::one(),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn a1_nested_pairs_and_strata() {
        let data = a1();
        let cf = build_compatible_fan(&data).unwrap();
        let pairs = nested_pairs(&cf, &data);
        assert_eq!(pairs.len(), 4);
        // (flag {G}, zero cone): the exceptional stratum is a point
        let flag_pair = NestedPair {
            flag: vec![0],
            cone: vec![],
        };
        assert_eq!(stratum_dims(&cf, &data, &flag_pair).unwrap(), vec![1]);
        // (empty flag, a ray): a torus-fixed point
        let ray_pair = NestedPair {
            flag: vec![],
            cone: vec![0],
        };
        assert_eq!(stratum_dims(&cf, &data, &ray_pair).unwrap(), vec![1]);
        // (empty flag, zero cone): the compactification itself
        let open_pair = NestedPair {
            flag: vec![],
            cone: vec![],
        };
        assert_eq!(stratum_dims(&cf, &data, &open_pair).unwrap(), vec![1, 0, 1]);
        // a flag/ray combination outside the subspace is rejected
        let bad = NestedPair {
            flag: vec![0],
            cone: vec![0],
        };
        assert_eq!(
            stratum_dims(&cf, &data, &bad).unwrap_err(),
            MorganError::NotNestedPair
        );
    }

    #[test]
    fn a1_direct_sum_matches_model() {
        let data = a1();
        let cf = build_compatible_fan(&data).unwrap();
        let direct = morgan_direct(&cf, &data).unwrap();
        assert_eq!(direct, vec![1, 3, 1]);
        let model = build_model(&cf, &data).unwrap();
        assert_eq!(&model.dga.dims()[..=2], &direct[..]);
    }

    #[test]
    fn empty_arrangement_gives_torus_cohomology() {
        let data = data_from(2, &[]);
        let cf = build_compatible_fan(&data).unwrap();
        let model = build_model(&cf, &data).unwrap();
        assert_eq!(betti(&model), vec![1, 2, 1, 0, 0]);
        // and the compactification presentation is just the fan cohomology
        assert_eq!(y_cohomology(&cf, &data), vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn one_divisor_in_two_torus() {
        // {t1 = 1} inside the 2-torus: complement is C* x (C* minus a point)
        let data = data_from(2, &[(&[&[1, 0]], &[(0, 1)])]);
        let cf = build_compatible_fan(&data).unwrap();
        assert_eq!(betti_numbers(&data).unwrap(), vec![1, 3, 2, 0, 0]);
        let direct = morgan_direct(&cf, &data).unwrap();
        let model = build_model(&cf, &data).unwrap();
        assert_eq!(&model.dga.dims()[..=4], &direct[..]);
    }

    #[test]
    fn one_point_in_two_torus() {
        // the point (1,1) in the 2-torus
        let data = data_from(2, &[(&[&[1, 0], &[0, 1]], &[(0, 1), (0, 1)])]);
        let cf = build_compatible_fan(&data).unwrap();
        assert_eq!(cf.fan, Fan::product(&Fan::projective_line(), &Fan::projective_line()));
        // blow-up of the product of lines at a point
        assert_eq!(y_cohomology(&cf, &data), vec![1, 0, 3, 0, 1]);
        assert_eq!(betti_numbers(&data).unwrap(), vec![1, 2, 1, 1, 0]);
    }

    #[test]
    fn alternative_bases_same_ideal_and_betti() {
        let data = a1();
        let std_bases = equal_sign_bases(&data).unwrap();
        let neg_bases = negate_completions(&data, &std_bases);
        assert_ne!(std_bases, neg_bases);
        let cf1 = build_compatible_fan(&data).unwrap();
        let cf2 =
            build_compatible_fan_with(&data, neg_bases, &Fan::projective_line()).unwrap();
        // identical degreewise ideal spans: same normal form on every
        // ambient monomial
        let q1 = y_quotient(&cf1, &data, 2);
        let q2 = y_quotient(&cf2, &data, 2);
        for d in 0..=2 {
            assert_eq!(q1.dim(d), q2.dim(d));
            for mon in q1.ambient_basis(d) {
                let e = Element::single(mon.clone(), Rat::one());
                assert_eq!(q1.normal_form(&e), q2.normal_form(&e));
            }
        }
        let m1 = build_model(&cf1, &data).unwrap();
        let m2 = build_model(&cf2, &data).unwrap();
        assert_eq!(betti(&m1), betti(&m2));
    }

    #[test]
    fn permuted_linear_extension_same_betti() {
        // two incomparable divisors admit two linear extensions
        let data = data_from(
            2,
            &[(&[&[1, 0]], &[(0, 1)]), (&[&[0, 1]], &[(0, 1)])],
        );
        assert_eq!(data.len(), 3);
        // swap the two divisors (indices 1 and 2)
        let permuted = data.permuted(&[0, 2, 1]);
        let b1 = betti_numbers(&data).unwrap();
        let b2 = betti_numbers(&permuted).unwrap();
        assert_eq!(b1, b2);
    }

    #[test]
    fn different_seed_fan_same_betti() {
        let data = data_from(2, &[(&[&[1, 0], &[0, 1]], &[(0, 1), (0, 1)])]);
        let bases = equal_sign_bases(&data).unwrap();
        let cf1 = build_compatible_fan(&data).unwrap();
        let cf2 =
            build_compatible_fan_with(&data, bases, &Fan::projective_space(2)).unwrap();
        assert_ne!(cf1.fan, cf2.fan);
        let m1 = build_model(&cf1, &data).unwrap();
        let m2 = build_model(&cf2, &data).unwrap();
        assert_eq!(betti(&m1), betti(&m2));
    }

    #[test]
    fn phi_map_between_refinements() {
        let data = data_from(2, &[(&[&[1, 0], &[0, 1]], &[(0, 1), (0, 1)])]);
        let cf = build_compatible_fan(&data).unwrap();
        let finer = CompatibleFan {
            fan: cf.fan.stellar_subdivide(&vec_i64(&[1, 1])).unwrap(),
            pair_bases: cf.pair_bases.clone(),
        };
        verify_compatible(&finer.fan, &data, &finer.pair_bases).unwrap();
        let phi = phi_map(&cf, &finer, &data).unwrap();
        let src = build_model(&cf, &data).unwrap();
        let tgt = build_model(&finer, &data).unwrap();
        assert!(phi.preserves_relations(
            src.dga.quotient(),
            tgt.dga.quotient(),
            &morgan_monomial_relations(&cf, &data)
        ));
        assert!(phi.is_chain_map(&src.dga, &tgt.dga));
        assert!(phi.is_quasi_iso(&src.dga, &tgt.dga, 4));
        assert_eq!(betti(&tgt), vec![1, 2, 1, 1, 0]);
        // the wrong direction is rejected
        assert!(phi_map(&finer, &cf, &data).is_err());
    }

    #[test]
    fn strata_dims_palindromic() {
        let data = data_from(2, &[(&[&[1, 0]], &[(0, 1)])]);
        let cf = build_compatible_fan(&data).unwrap();
        for pair in nested_pairs(&cf, &data) {
            let dims = stratum_dims(&cf, &data, &pair).unwrap();
            let rev: Vec<usize> = dims.iter().rev().copied().collect();
            assert_eq!(dims, rev, "stratum {pair:?}");
        }
    }

    #[test]
    fn redundant_stratum_relations_change_nothing() {
        // adding the non-minimal pair relations must not change dims: on a
        // chain poset the stratum of the longest flag sees extra relations
        let data = data_from(2, &[(&[&[1, 0]], &[(0, 1)]), (&[&[1, 0], &[0, 1]], &[(0, 1), (0, 1)])]);
        assert_eq!(data.len(), 2); // the point and the divisor form a chain
        let cf = build_compatible_fan(&data).unwrap();
        let pair = NestedPair {
            flag: vec![0, 1],
            cone: vec![],
        };
        let dims = stratum_dims(&cf, &data, &pair).unwrap();
        assert_eq!(dims, vec![1]);
    }

    #[test]
    fn diagonal_divisor_needs_refined_fan() {
        // {t1 t2 = 1}: the character (1,1) forces a subdivision
        let data = data_from(2, &[(&[&[1, 1]], &[(0, 1)])]);
        let cf = build_compatible_fan(&data).unwrap();
        assert!(cf.fan.rays().len() > 4);
        assert!(cf.fan.equal_sign(&vec_i64(&[1, 1])));
        let b = betti_numbers(&data).unwrap();
        // the complement is C* x (C* minus one point) after a change of
        // coordinates, so the table matches the single-divisor case
        assert_eq!(b, vec![1, 3, 2, 0, 0]);
    }
}

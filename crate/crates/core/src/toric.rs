//! Algebras attached to a smooth complete fan: the Stanley–Reisner ring and
//! its quotient by the linear forms (the cohomology of the toric variety),
//! colon variants supported on a cone, the Koszul extension with odd
//! generators and its contraction homotopy, subdivision maps between fans,
//! and evaluation of Stanley–Reisner elements as piecewise-linear functions.

use crate::algebra::{
    AlgebraMap, DegreewiseQuotient, Derivation, Dga, Element, GeneratorSpec, Monomial,
    MonomialAlgebra,
};
use crate::fan::Fan;
use crate::lattice::{dot, Int, IntMatrix, Rat};
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ToricError {
    NotRefinement,
    ConeNotInFan,
    CharacterChangesSign,
}

impl fmt::Display for ToricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToricError::NotRefinement => write!(f, "fan is not a refinement of the other"),
            ToricError::ConeNotInFan => write!(f, "cone is not a face of the fan"),
            ToricError::CharacterChangesSign => {
                write!(f, "character changes sign on a cone of the fan")
            }
        }
    }
}

/// Stanley–Reisner ring of a fan: one degree-2 generator per ray, a monomial
/// is admissible when its support spans a cone.
pub struct SRAlgebra {
    pub fan: Fan,
    pub alg: MonomialAlgebra,
}

/// The exterior extension: degree-2 `x_i` and degree-1 `tau_i` per ray, a
/// monomial admissible when the union of the x- and tau-supports spans a
/// cone. Generators are laid out x first, then tau.
pub struct KoszulAlgebra {
    pub fan: Fan,
    pub alg: MonomialAlgebra,
}

impl KoszulAlgebra {
    pub fn nrays(&self) -> usize {
        self.fan.rays().len()
    }

    pub fn x_index(&self, ray: usize) -> usize {
        ray
    }

    pub fn tau_index(&self, ray: usize) -> usize {
        self.nrays() + ray
    }
}

pub fn stanley_reisner(fan: &Fan) -> SRAlgebra {
    let n = fan.rays().len();
    let gens = (0..n)
        .map(|i| GeneratorSpec::even(&format!("x{i}"), 2))
        .collect();
    let f = fan.clone();
    let adm = Arc::new(move |m: &Monomial| f.is_face(&m.support()));
    SRAlgebra {
        fan: fan.clone(),
        alg: MonomialAlgebra::new(gens, adm),
    }
}

/// Stanley–Reisner ring with the ideal coloned by the monomial of `cone`:
/// a monomial survives when its support together with the cone's rays spans
/// a cone.
pub fn stanley_reisner_colon(fan: &Fan, cone: &[usize]) -> Result<SRAlgebra, ToricError> {
    if !fan.is_face(cone) {
        return Err(ToricError::ConeNotInFan);
    }
    let n = fan.rays().len();
    let gens = (0..n)
        .map(|i| GeneratorSpec::even(&format!("x{i}"), 2))
        .collect();
    let f = fan.clone();
    let c: Vec<usize> = cone.to_vec();
    let adm = Arc::new(move |m: &Monomial| {
        let mut s = m.support();
        for &i in &c {
            if !s.contains(&i) {
                s.push(i);
            }
        }
        s.sort_unstable();
        f.is_face(&s)
    });
    Ok(SRAlgebra {
        fan: fan.clone(),
        alg: MonomialAlgebra::new(gens, adm),
    })
}

pub fn koszul_algebra(fan: &Fan) -> KoszulAlgebra {
    let n = fan.rays().len();
    let mut gens: Vec<GeneratorSpec> = (0..n)
        .map(|i| GeneratorSpec::even(&format!("x{i}"), 2))
        .collect();
    gens.extend((0..n).map(|i| GeneratorSpec::odd(&format!("tau{i}"), 1)));
    let f = fan.clone();
    let adm = Arc::new(move |m: &Monomial| {
        let mut s: Vec<usize> = Vec::new();
        for i in 0..n {
            if m.exp(i) > 0 || m.exp(n + i) > 0 {
                s.push(i);
            }
        }
        f.is_face(&s)
    });
    KoszulAlgebra {
        fan: fan.clone(),
        alg: MonomialAlgebra::new(gens, adm),
    }
}

/// The linear forms `xi_j = sum_i <l_j, c_i> x_i`, one per row of `forms`,
/// expressed over an algebra whose first `nrays` generators are the `x_i`.
pub fn xi_elements(fan: &Fan, ngens_total: usize, forms: &IntMatrix) -> Vec<Element> {
    assert_eq!(forms.cols(), fan.dim());
    let mut out = Vec::with_capacity(forms.rows());
    for j in 0..forms.rows() {
        let mut e = Element::zero();
        for (i, c) in fan.rays().iter().enumerate() {
            let coeff = dot(forms.row(j), c);
            if !coeff.is_zero() {
                e.add_term(
                    Monomial::generator(ngens_total, i),
                    Rat::from_integer(coeff),
                );
            }
        }
        out.push(e);
    }
    out
}

/// Odd counterparts `psi_j = sum_i <l_j, c_i> tau_i` over a Koszul layout.
pub fn psi_elements(fan: &Fan, forms: &IntMatrix) -> Vec<Element> {
    assert_eq!(forms.cols(), fan.dim());
    let n = fan.rays().len();
    let mut out = Vec::with_capacity(forms.rows());
    for j in 0..forms.rows() {
        let mut e = Element::zero();
        for (i, c) in fan.rays().iter().enumerate() {
            let coeff = dot(forms.row(j), c);
            if !coeff.is_zero() {
                e.add_term(Monomial::generator(2 * n, n + i), Rat::from_integer(coeff));
            }
        }
        out.push(e);
    }
    out
}

fn standard_forms(n: usize) -> IntMatrix {
    IntMatrix::identity(n)
}

/// Cohomology ring of the toric variety: Stanley–Reisner modulo the linear
/// forms for the given dual basis, with exact bases up to `dmax`.
pub fn cohomology_ring_with_forms(fan: &Fan, forms: &IntMatrix, dmax: usize) -> DegreewiseQuotient {
    let sr = stanley_reisner(fan);
    let xi = xi_elements(fan, fan.rays().len(), forms);
    DegreewiseQuotient::new(sr.alg, xi, dmax)
}

pub fn cohomology_ring(fan: &Fan, dmax: usize) -> DegreewiseQuotient {
    cohomology_ring_with_forms(fan, &standard_forms(fan.dim()), dmax)
}

/// Colon variant of the cohomology ring, supported on the star of `cone`.
pub fn cohomology_colon(
    fan: &Fan,
    cone: &[usize],
    dmax: usize,
) -> Result<DegreewiseQuotient, ToricError> {
    let sr = stanley_reisner_colon(fan, cone)?;
    let xi = xi_elements(fan, fan.rays().len(), &standard_forms(fan.dim()));
    Ok(DegreewiseQuotient::new(sr.alg, xi, dmax))
}

/// The differential of the Koszul extension: each odd generator maps to
/// its even partner.
pub fn koszul_differential(ka: &KoszulAlgebra) -> Derivation {
    let n = ka.nrays();
    let mut images = vec![Element::zero(); 2 * n];
    for i in 0..n {
        images[n + i] = Element::single(Monomial::generator(2 * n, i), Rat::one());
    }
    Derivation::new(&ka.alg, images)
}

/// The acyclic differential algebra on x's and tau's with `d(tau_i) = x_i`.
pub fn koszul_dga(fan: &Fan, dmax: usize) -> Dga {
    let ka = koszul_algebra(fan);
    let d = koszul_differential(&ka);
    let q = DegreewiseQuotient::new(ka.alg, vec![], dmax);
    Dga::new(q, d).expect("koszul differential squares to zero")
}

/// Quotient of the Koszul algebra by the linear forms; its cohomology is an
/// exterior algebra on the classes of the `psi_j`.
pub fn torus_dga_with_forms(fan: &Fan, forms: &IntMatrix, dmax: usize) -> Dga {
    let ka = koszul_algebra(fan);
    let d = koszul_differential(&ka);
    let xi = xi_elements(fan, 2 * fan.rays().len(), forms);
    let q = DegreewiseQuotient::new(ka.alg, xi, dmax);
    Dga::new(q, d).expect("linear forms are closed under the differential")
}

pub fn torus_dga(fan: &Fan, dmax: usize) -> Dga {
    torus_dga_with_forms(fan, &standard_forms(fan.dim()), dmax)
}

/// Contraction homotopy of the Koszul algebra, monomial by monomial: find
/// the least ray index carrying an x or a tau; if it carries a tau the
/// monomial is sent to zero, otherwise one x-factor is traded for the
/// front-inserted tau of the same ray.
///
/// Together with the differential it satisfies `(Sd + dS)(m) = m` on every
/// admissible monomial of positive degree.
pub fn contraction(alg: &MonomialAlgebra, e: &Element) -> Element {
    let n2 = alg.ngens();
    assert!(n2 % 2 == 0, "expected a Koszul layout (x's then tau's)");
    let n = n2 / 2;
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        assert!(!m.is_one(), "contraction is undefined in degree zero");
        let min_x = (0..n).find(|&i| m.exp(i) > 0);
        let min_tau = (0..n).find(|&i| m.exp(n + i) > 0);
        let f = match (min_x, min_tau) {
            (Some(ix), Some(it)) if ix < it => ix,
            (Some(ix), None) => ix,
            _ => continue,
        };
        let mut exps = m.exps().to_vec();
        exps[f] -= 1;
        debug_assert_eq!(exps[n + f], 0);
        exps[n + f] = 1;
        // tau_f precedes every other odd factor of the monomial, so the
        // front insertion is already in canonical order: coefficient +1.
        out.add_term(Monomial::from_exps(exps), c.clone());
    }
    out
}

/// Map of Stanley–Reisner rings induced by a subdivision: each coarse-fan
/// variable goes to the sum of fine-fan variables weighted by the value of
/// its piecewise-linear function at the fine rays.
pub fn subdivision_map_sr(coarse: &Fan, fine: &Fan) -> Result<AlgebraMap, ToricError> {
    if fine.refines(coarse).is_none() {
        return Err(ToricError::NotRefinement);
    }
    let src = stanley_reisner(coarse);
    let tgt = stanley_reisner(fine);
    let nf = fine.rays().len();
    let mut images = Vec::with_capacity(coarse.rays().len());
    for c in 0..coarse.rays().len() {
        let mut e = Element::zero();
        for (d, ray) in fine.rays().iter().enumerate() {
            let v: Vec<Rat> = ray.iter().map(|x| Rat::from_integer(x.clone())).collect();
            let s = coarse.eval_s(c, &v).expect("complete fan");
            if !s.is_zero() {
                e.add_term(Monomial::generator(nf, d), s);
            }
        }
        images.push(e);
    }
    Ok(AlgebraMap::new(&src.alg, &tgt.alg, images))
}

/// Same coefficients on both the even and odd generators; commutes with the
/// Koszul differentials and induces the map of torus models on quotients.
pub fn subdivision_map_koszul(coarse: &Fan, fine: &Fan) -> Result<AlgebraMap, ToricError> {
    if fine.refines(coarse).is_none() {
        return Err(ToricError::NotRefinement);
    }
    let src = koszul_algebra(coarse);
    let tgt = koszul_algebra(fine);
    let nc = coarse.rays().len();
    let nf = fine.rays().len();
    let mut images = vec![Element::zero(); 2 * nc];
    for c in 0..nc {
        let mut even = Element::zero();
        let mut odd = Element::zero();
        for (d, ray) in fine.rays().iter().enumerate() {
            let v: Vec<Rat> = ray.iter().map(|x| Rat::from_integer(x.clone())).collect();
            let s = coarse.eval_s(c, &v).expect("complete fan");
            if !s.is_zero() {
                even.add_term(Monomial::generator(2 * nf, d), s.clone());
                odd.add_term(Monomial::generator(2 * nf, nf + d), s);
            }
        }
        images[c] = even;
        images[nc + c] = odd;
    }
    Ok(AlgebraMap::new(&src.alg, &tgt.alg, images))
}

/// Evaluate a Stanley–Reisner element as a function of `v`: each variable
/// becomes the barycentric coordinate function of its ray.
pub fn evaluate_at(fan: &Fan, e: &Element, v: &[Rat]) -> Rat {
    let n = fan.rays().len();
    let mut total = Rat::zero();
    for (m, c) in e.terms() {
        assert_eq!(m.exps().len(), n, "expected an element of the Stanley-Reisner ring");
        let mut prod = c.clone();
        for i in 0..n {
            for _ in 0..m.exp(i) {
                prod *= fan.eval_s(i, v).expect("complete fan");
                if prod.is_zero() {
                    break;
                }
            }
            if prod.is_zero() {
                break;
            }
        }
        total += prod;
    }
    total
}

/// Equality of elements presented on different fans, decided on a smooth
/// common refinement.
pub fn equal_in_common_refinement(fa: &Fan, a: &Element, fb: &Fan, b: &Element) -> bool {
    let h = fa.common_refinement(fb);
    let alg_h = stanley_reisner(&h).alg;
    let ga = subdivision_map_sr(fa, &h).expect("common refinement refines both");
    let gb = subdivision_map_sr(fb, &h).expect("common refinement refines both");
    ga.apply(&alg_h, a) == gb.apply(&alg_h, b)
}

/// The degree-2 element representing `min(0, chi)` as a piecewise-linear
/// function: `sum_c min(0, <chi, c>) x_c`. Requires the character to have
/// constant sign on every cone.
pub fn negative_part_element(fan: &Fan, chi: &[Int]) -> Result<Element, ToricError> {
    if !fan.equal_sign(chi) {
        return Err(ToricError::CharacterChangesSign);
    }
    let n = fan.rays().len();
    let mut e = Element::zero();
    for (i, c) in fan.rays().iter().enumerate() {
        let p = dot(chi, c);
        if p.is_negative() {
            e.add_term(Monomial::generator(n, i), Rat::from_integer(p));
        }
    }
    Ok(e)
}

/// Minimal non-faces of the fan (ray index sets): the squarefree generators
/// of the Stanley–Reisner ideal. Sizes range over `2..=dim+1`.
pub fn minimal_nonfaces(fan: &Fan) -> Vec<Vec<usize>> {
    let nrays = fan.rays().len();
    let n = fan.dim();
    let idx: Vec<usize> = (0..nrays).collect();
    let mut out = Vec::new();
    for size in 2..=(n + 1).min(nrays) {
        for subset in crate::fan::subsets_of_size(&idx, size) {
            if fan.is_face(&subset) {
                continue;
            }
            let all_proper_faces = (0..subset.len()).all(|skip| {
                let sub: Vec<usize> = subset
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &r)| r)
                    .collect();
                fan.is_face(&sub)
            });
            if all_proper_faces {
                out.push(subset);
            }
        }
    }
    out
}

/// The same non-faces as squarefree monomials over the first `nrays`
/// generators of an algebra with `ngens_total` generators.
pub fn nonface_monomials(fan: &Fan, ngens_total: usize) -> Vec<Monomial> {
    minimal_nonfaces(fan)
        .into_iter()
        .map(|s| {
            let mut exps = vec![0u32; ngens_total];
            for i in s {
                exps[i] = 1;
            }
            Monomial::from_exps(exps)
        })
        .collect()
}

pub fn total_dim(q: &DegreewiseQuotient) -> usize {
    q.dims().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rat, vec_i64};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn p1() -> Fan {
        Fan::projective_line()
    }

    fn p1xp1() -> Fan {
        Fan::product(&p1(), &p1())
    }

    fn random_point(rng: &mut StdRng, n: usize) -> Vec<Rat> {
        (0..n)
            .map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=8)))
            .collect()
    }

    #[test]
    fn cohomology_dims_match_h_vectors() {
        // P^1: (1,1) in degrees 0,2
        let b = cohomology_ring(&p1(), 2);
        assert_eq!(b.dims(), vec![1, 0, 1]);
        // P^2: (1,1,1)
        let b = cohomology_ring(&Fan::projective_space(2), 4);
        assert_eq!(b.dims(), vec![1, 0, 1, 0, 1]);
        // P^1 x P^1: (1,2,1)
        let b = cohomology_ring(&p1xp1(), 4);
        assert_eq!(b.dims(), vec![1, 0, 2, 0, 1]);
        // matches the combinatorial h-vector, palindromic
        let f = Fan::projective_space(3);
        let b = cohomology_ring(&f, 6);
        let h = f.h_vector();
        for (k, &hk) in h.iter().enumerate() {
            assert_eq!(b.dim(2 * k), hk);
        }
        let rev: Vec<usize> = h.iter().rev().copied().collect();
        assert_eq!(h, rev);
    }

    #[test]
    fn cohomology_basis_independent_of_dual_basis() {
        let f = p1xp1();
        let m = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]); // unimodular
        let b1 = cohomology_ring(&f, 4);
        let b2 = cohomology_ring_with_forms(&f, &m, 4);
        assert_eq!(b1.dims(), b2.dims());
        let c1 = torus_dga(&f, 6);
        let c2 = torus_dga_with_forms(&f, &m, 6);
        assert_eq!(c1.dims(), c2.dims());
        assert_eq!(c1.cohomology_dims(4), c2.cohomology_dims(4));
    }

    #[test]
    fn colon_algebra_ranks() {
        // zero cone: colon algebra equals the plain one
        let f = p1xp1();
        let b = cohomology_ring(&f, 4);
        let b0 = cohomology_colon(&f, &[], 4).unwrap();
        assert_eq!(b.dims(), b0.dims());
        // P^1, cone = ray(+1): star has one maximal cone
        let f1 = p1();
        let plus = f1.ray_index(&vec_i64(&[1])).unwrap();
        let bc = cohomology_colon(&f1, &[plus], 2).unwrap();
        assert_eq!(total_dim(&bc), 1);
        // P^1 x P^1, cone = ray(e1): two quadrants contain e1
        let e1 = f.ray_index(&vec_i64(&[1, 0])).unwrap();
        let bc = cohomology_colon(&f, &[e1], 4).unwrap();
        assert_eq!(total_dim(&bc), 2);
        assert_eq!(f.star(&[e1]).len(), 2);
        // a cone outside the fan errors
        let me1 = f.ray_index(&vec_i64(&[-1, 0])).unwrap();
        assert_eq!(
            cohomology_colon(&f, &[e1, me1], 4).unwrap_err(),
            ToricError::ConeNotInFan
        );
    }

    #[test]
    fn torus_dga_p1() {
        let c = torus_dga(&p1(), 4);
        // basis {1}, {tau+, tau-}, {x+}; x- = x+ mod xi; top degree 2
        assert_eq!(c.dims(), vec![1, 2, 1, 0, 0]);
        assert_eq!(c.cohomology_dims(2), vec![1, 1, 0]);
    }

    #[test]
    fn torus_dga_dimension_count() {
        // total dimension = sum over cones of the number of maximal cones
        // in their star
        for f in [p1(), p1xp1(), Fan::projective_space(2)] {
            let n = f.dim();
            let c = torus_dga(&f, 2 * n + 2);
            let dims = c.dims();
            for d in 2 * n + 1..=2 * n + 2 {
                assert_eq!(dims[d], 0, "torus model vanishes above 2n");
            }
            let expected: usize = f.all_cones().iter().map(|c| f.star(c).len()).sum();
            assert_eq!(dims.iter().sum::<usize>(), expected);
        }
    }

    #[test]
    fn torus_cohomology_is_exterior() {
        let c = torus_dga(&p1xp1(), 6);
        assert_eq!(c.cohomology_dims(4), vec![1, 2, 1, 0, 0]);
        let c = torus_dga(&Fan::projective_space(2), 6);
        assert_eq!(c.cohomology_dims(4), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn koszul_dga_acyclic() {
        for f in [p1(), p1xp1()] {
            let d = koszul_dga(&f, 6);
            assert_eq!(d.cohomology_dims(5), vec![1, 0, 0, 0, 0, 0]);
        }
    }

    #[test]
    fn psi_classes_are_cocycles() {
        let f = p1xp1();
        let c = torus_dga(&f, 6);
        let psi = psi_elements(&f, &IntMatrix::identity(2));
        assert_eq!(psi.len(), 2);
        for p in &psi {
            assert!(c.d_of(p).is_zero());
            assert!(!c.quotient().is_zero_in_quotient(p));
        }
        // the product of all psi's represents the top class
        let alg = c.algebra();
        let prod = alg.mul(&psi[0], &psi[1]);
        assert!(!c.quotient().is_zero_in_quotient(&prod));
    }

    #[test]
    fn contraction_base_cases() {
        let ka = koszul_algebra(&p1());
        let plus = ka.fan.ray_index(&vec_i64(&[1])).unwrap();
        let x = ka.alg.gen_elem(ka.x_index(plus));
        let tau = ka.alg.gen_elem(ka.tau_index(plus));
        assert_eq!(contraction(&ka.alg, &x), tau);
        assert!(contraction(&ka.alg, &tau).is_zero());
    }

    #[test]
    fn contraction_mixed_monomial() {
        // (Sd + dS)(x_a tau_b) = x_a tau_b for a < b in the vertex order
        let f = p1xp1();
        let ka = koszul_algebra(&f);
        let a = f.ray_index(&vec_i64(&[0, 1])).unwrap();
        let b = f.ray_index(&vec_i64(&[1, 0])).unwrap();
        assert!(a < b);
        let d = koszul_differential(&ka);
        let m = ka.alg.mul(
            &ka.alg.gen_elem(ka.x_index(a)),
            &ka.alg.gen_elem(ka.tau_index(b)),
        );
        let lhs = contraction(&ka.alg, &d.apply(&ka.alg, &m))
            .add(&d.apply(&ka.alg, &contraction(&ka.alg, &m)));
        assert_eq!(lhs, m);
    }

    #[test]
    fn contraction_homotopy_identity_random() {
        let f = p1xp1();
        let ka = koszul_algebra(&f);
        let d = koszul_differential(&ka);
        let n = ka.nrays();
        let mut rng = StdRng::seed_from_u64(20260826);
        let cones = f.all_cones();
        let mut checked = 0;
        while checked < 200 {
            let cone = &cones[rng.gen_range(0..cones.len())];
            if cone.is_empty() {
                continue;
            }
            let mut exps = vec![0u32; 2 * n];
            for &r in cone {
                exps[r] = rng.gen_range(0..=3);
                exps[n + r] = rng.gen_range(0..=1);
            }
            let m = Monomial::from_exps(exps);
            if m.is_one() {
                continue;
            }
            assert!(ka.alg.is_admissible(&m));
            let e = Element::single(m.clone(), Rat::one());
            let lhs = contraction(&ka.alg, &d.apply(&ka.alg, &e))
                .add(&d.apply(&ka.alg, &contraction(&ka.alg, &e)));
            assert_eq!(lhs, e, "homotopy identity on {:?}", ka.alg.format_monomial(&m));
            checked += 1;
        }
    }

    #[test]
    fn subdivision_map_example() {
        let f = p1xp1();
        let g = f.stellar_subdivide(&vec_i64(&[1, 1])).unwrap();
        let phi = subdivision_map_sr(&f, &g).unwrap();
        let nf = g.rays().len();
        let e1_f = f.ray_index(&vec_i64(&[1, 0])).unwrap();
        let e1_g = g.ray_index(&vec_i64(&[1, 0])).unwrap();
        let diag_g = g.ray_index(&vec_i64(&[1, 1])).unwrap();
        let expected = Element::from_terms([
            (Monomial::generator(nf, e1_g), rat(1, 1)),
            (Monomial::generator(nf, diag_g), rat(1, 1)),
        ]);
        assert_eq!(*phi.image_of_gen(e1_f), expected);
        // the ray away from the subdivision maps to a single variable
        let me1_f = f.ray_index(&vec_i64(&[-1, 0])).unwrap();
        let me1_g = g.ray_index(&vec_i64(&[-1, 0])).unwrap();
        assert_eq!(
            *phi.image_of_gen(me1_f),
            Element::single(Monomial::generator(nf, me1_g), rat(1, 1))
        );
        // relations (non-faces and linear forms) are preserved
        let src = cohomology_ring(&f, 4);
        let tgt = cohomology_ring(&g, 4);
        assert!(phi.preserves_relations(&src, &tgt, &nonface_monomials(&f, f.rays().len())));
        // and the subdivision map must come from an actual refinement
        assert_eq!(
            subdivision_map_sr(&g, &f).unwrap_err(),
            ToricError::NotRefinement
        );
    }

    #[test]
    fn subdivision_koszul_is_chain_quasi_iso() {
        let f = p1xp1();
        let g = f.stellar_subdivide(&vec_i64(&[1, 1])).unwrap();
        let phi = subdivision_map_koszul(&f, &g).unwrap();
        let cf = torus_dga(&f, 6);
        let cg = torus_dga(&g, 6);
        // xi forms map to xi forms
        let xi_f = xi_elements(&f, 2 * f.rays().len(), &IntMatrix::identity(2));
        let xi_g = xi_elements(&g, 2 * g.rays().len(), &IntMatrix::identity(2));
        for (a, b) in xi_f.iter().zip(&xi_g) {
            assert_eq!(phi.apply(cg.algebra(), a), *b);
        }
        assert!(phi.is_chain_map(&cf, &cg));
        assert!(phi.is_quasi_iso(&cf, &cg, 4));
        assert_eq!(cf.cohomology_dims(4), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn evaluation_examples() {
        // the Stanley-Reisner relation evaluates to zero
        let f1 = p1();
        let sr = stanley_reisner(&f1);
        let plus = f1.ray_index(&vec_i64(&[1])).unwrap();
        let minus = f1.ray_index(&vec_i64(&[-1])).unwrap();
        let rel = sr.alg.mul(&sr.alg.gen_elem(plus), &sr.alg.gen_elem(minus));
        assert!(rel.is_zero()); // inadmissible product vanishes already
        let raw = Element::from_terms([(
            Monomial::from_exps({
                let mut e = vec![0u32; 2];
                e[plus] = 1;
                e[minus] = 1;
                e
            }),
            rat(1, 1),
        )]);
        assert_eq!(evaluate_at(&f1, &raw, &[rat(3, 1)]), rat(0, 1));
        // a single variable is the barycentric coordinate
        let f = p1xp1();
        let e1 = f.ray_index(&vec_i64(&[1, 0])).unwrap();
        let x = Element::single(Monomial::generator(4, e1), rat(1, 1));
        assert_eq!(evaluate_at(&f, &x, &[rat(2, 1), rat(5, 1)]), rat(2, 1));
    }

    #[test]
    fn evaluation_commutes_with_subdivision() {
        let f = p1xp1();
        let g = f.stellar_subdivide(&vec_i64(&[1, 1])).unwrap();
        let phi = subdivision_map_sr(&f, &g).unwrap();
        let tgt_alg = stanley_reisner(&g).alg;
        let src_alg = stanley_reisner(&f).alg;
        let mut rng = StdRng::seed_from_u64(7);
        // a handful of random elements, 100 random points each
        for _ in 0..5 {
            let mut e = Element::zero();
            for i in 0..4 {
                e.add_term(
                    Monomial::generator(4, i),
                    rat(rng.gen_range(-5..=5), 1),
                );
            }
            let e2 = src_alg.mul(&e, &e);
            let img = phi.apply(&tgt_alg, &e2);
            for _ in 0..100 {
                let v = random_point(&mut rng, 2);
                assert_eq!(evaluate_at(&f, &e2, &v), evaluate_at(&g, &img, &v));
            }
        }
    }

    #[test]
    fn stanley_reisner_kernel_characterization() {
        // every ideal generator is the zero function
        let f = p1xp1();
        let mut rng = StdRng::seed_from_u64(99);
        let nonfaces = nonface_monomials(&f, f.rays().len());
        assert_eq!(nonfaces.len(), 2);
        for m in &nonfaces {
            let e = Element::single(m.clone(), rat(1, 1));
            for _ in 0..1000 {
                let v = random_point(&mut rng, 2);
                assert_eq!(evaluate_at(&f, &e, &v), rat(0, 1));
            }
        }
        // admissible monomials up to degree 6 are independent as functions
        let sr = stanley_reisner(&f);
        let mut monos = Vec::new();
        for d in (0..=6).step_by(2) {
            monos.extend(sr.alg.basis(d));
        }
        let mut success = false;
        for _attempt in 0..3 {
            let points: Vec<Vec<Rat>> = (0..monos.len() + 5)
                .map(|_| random_point(&mut rng, 2))
                .collect();
            let mut m = crate::linalg::RatMatrix::zero(points.len(), monos.len());
            for (i, p) in points.iter().enumerate() {
                for (j, mono) in monos.iter().enumerate() {
                    let e = Element::single(mono.clone(), rat(1, 1));
                    m.set(i, j, evaluate_at(&f, &e, p));
                }
            }
            if crate::linalg::rank_rat(&m) == monos.len() {
                success = true;
                break;
            }
        }
        assert!(success, "monomials dependent as functions after resampling");
    }

    #[test]
    fn equality_on_common_refinement() {
        let f = p1xp1();
        let g = f.stellar_subdivide(&vec_i64(&[1, 1])).unwrap();
        let phi = subdivision_map_sr(&f, &g).unwrap();
        let tgt_alg = stanley_reisner(&g).alg;
        let e1_f = f.ray_index(&vec_i64(&[1, 0])).unwrap();
        let x = Element::single(Monomial::generator(4, e1_f), rat(1, 1));
        let img = phi.apply(&tgt_alg, &x);
        assert!(equal_in_common_refinement(&f, &x, &g, &img));
        // forgetting the new-ray term breaks the equality
        let e1_g = g.ray_index(&vec_i64(&[1, 0])).unwrap();
        let y = Element::single(Monomial::generator(5, e1_g), rat(1, 1));
        assert!(!equal_in_common_refinement(&f, &x, &g, &y));
        assert!(equal_in_common_refinement(
            &f,
            &Element::zero(),
            &g,
            &Element::zero()
        ));
    }

    #[test]
    fn negative_part_examples() {
        let f1 = p1();
        let minus = f1.ray_index(&vec_i64(&[-1])).unwrap();
        let e = negative_part_element(&f1, &vec_i64(&[1])).unwrap();
        assert_eq!(
            e,
            Element::single(Monomial::generator(2, minus), rat(-1, 1))
        );
        assert!(negative_part_element(&f1, &vec_i64(&[0])).unwrap().is_zero());
        let f = p1xp1();
        let me1 = f.ray_index(&vec_i64(&[-1, 0])).unwrap();
        let e = negative_part_element(&f, &vec_i64(&[1, 0])).unwrap();
        assert_eq!(
            e,
            Element::single(Monomial::generator(4, me1), rat(-1, 1))
        );
        assert_eq!(
            evaluate_at(&f, &e, &[rat(-2, 1), rat(7, 1)]),
            rat(-2, 1)
        );
        // a sign-changing character is rejected
        assert_eq!(
            negative_part_element(&f, &vec_i64(&[1, -1])).unwrap_err(),
            ToricError::CharacterChangesSign
        );
    }

    #[test]
    fn minimal_nonfaces_examples() {
        let f1 = p1();
        assert_eq!(minimal_nonfaces(&f1), vec![vec![0, 1]]);
        let f = p1xp1();
        // opposite rays: {e1,-e1} and {e2,-e2}
        let nf = minimal_nonfaces(&f);
        assert_eq!(nf.len(), 2);
        for s in &nf {
            assert_eq!(s.len(), 2);
            let a = &f.rays()[s[0]];
            let b = &f.rays()[s[1]];
            let sum: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            assert!(sum.iter().all(|x| x.is_zero()));
        }
    }
}

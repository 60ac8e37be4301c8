//! Graded-commutative algebra over `Q`, organized degree by degree.
//!
//! A [`MonomialAlgebra`] is a free graded-commutative algebra on named
//! generators modulo a *monomial* ideal, described by an admissibility
//! predicate (a monomial is zero unless admissible). [`DegreewiseQuotient`]
//! further quotients by finitely many homogeneous elements, computing exact
//! bases per degree up to a cutoff. [`Derivation`] and [`Dga`] add a degree-1
//! differential and rational cohomology dimensions; [`AlgebraMap`] checks
//! multiplicative maps between quotients (relations, chain property, induced
//! isomorphism in cohomology).

use crate::lattice::Rat;
use crate::linalg::{kernel_rat, rank_rat, sparse_from_map, RatMatrix, RowSpan, SparseRow};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// `d(d(generator))` is nonzero in the quotient.
    DifferentialNotSquareZero { generator: usize },
    /// `d` of an ideal generator is nonzero in the quotient.
    IdealNotPreserved { ideal_index: usize },
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::DifferentialNotSquareZero { generator } => {
                write!(f, "d^2 is nonzero on generator {generator}")
            }
            AlgebraError::IdealNotPreserved { ideal_index } => {
                write!(f, "differential does not preserve ideal generator {ideal_index}")
            }
        }
    }
}

/// A named generator. Odd generators anticommute and square to zero; the
/// `odd` flag must match the parity of `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: usize,
    pub odd: bool,
}

impl GeneratorSpec {
    pub fn even(name: &str, degree: usize) -> Self {
        assert!(degree >= 1 && degree % 2 == 0);
        GeneratorSpec {
            name: String::from(name),
            degree,
            odd: false,
        }
    }

    pub fn odd(name: &str, degree: usize) -> Self {
        assert!(degree % 2 == 1);
        GeneratorSpec {
            name: String::from(name),
            degree,
            odd: true,
        }
    }
}

/// Exponent vector over the generator list of an algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(ngens: usize) -> Self {
        Monomial {
            exps: vec![0; ngens],
        }
    }

    pub fn generator(ngens: usize, i: usize) -> Self {
        let mut m = Monomial::one(ngens);
        m.exps[i] = 1;
        m
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Indices of generators appearing with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }
}

pub type Admissibility = Arc<dyn Fn(&Monomial) -> bool + Send + Sync>;

/// Free graded-commutative algebra on `gens` modulo the monomial ideal of
/// inadmissible monomials.
///
/// The admissibility predicate must accept the unit monomial and be closed
/// under division (every divisor of an admissible monomial is admissible);
/// basis enumeration prunes on that property.
#[derive(Clone)]
pub struct MonomialAlgebra {
    gens: Vec<GeneratorSpec>,
    admissible: Admissibility,
}

impl MonomialAlgebra {
    pub fn new(gens: Vec<GeneratorSpec>, admissible: Admissibility) -> Self {
        for g in &gens {
            assert!(g.degree >= 1, "generators must have positive degree");
            assert_eq!(g.odd, g.degree % 2 == 1, "odd flag must match degree parity");
        }
        let alg = MonomialAlgebra { gens, admissible };
        assert!(alg.is_admissible(&Monomial::one(alg.ngens())));
        alg
    }

    /// No monomial relations.
    pub fn free(gens: Vec<GeneratorSpec>) -> Self {
        MonomialAlgebra::new(gens, Arc::new(|_| true))
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn gen_spec(&self, i: usize) -> &GeneratorSpec {
        &self.gens[i]
    }

    pub fn is_admissible(&self, m: &Monomial) -> bool {
        (self.admissible)(m)
    }

    pub fn degree(&self, m: &Monomial) -> usize {
        m.exps
            .iter()
            .enumerate()
            .map(|(i, &e)| e as usize * self.gens[i].degree)
            .sum()
    }

    /// Product of two monomials with the Koszul sign from interleaving their
    /// odd parts. `None` when the product vanishes (repeated odd generator or
    /// inadmissible result).
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, i32)> {
        let n = self.ngens();
        let mut exps = vec![0u32; n];
        // Each odd generator of b moves past the odd generators of a with
        // larger index to reach its slot in the merged monomial.
        let odd_a: Vec<usize> = (0..n)
            .filter(|&i| self.gens[i].odd && a.exps[i] > 0)
            .collect();
        let mut swaps = 0usize;
        for i in 0..n {
            if self.gens[i].odd && b.exps[i] > 0 {
                swaps += odd_a.iter().filter(|&&j| j > i).count();
            }
        }
        for i in 0..n {
            exps[i] = a.exps[i] + b.exps[i];
            if self.gens[i].odd && exps[i] > 1 {
                return None;
            }
        }
        let m = Monomial::from_exps(exps);
        if !self.is_admissible(&m) {
            return None;
        }
        Some((m, if swaps % 2 == 0 { 1 } else { -1 }))
    }

    /// Sorted basis of admissible monomials of exact degree `d`.
    pub fn basis(&self, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = Monomial::one(self.ngens());
        self.enumerate(0, d, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, gi: usize, remaining: usize, current: &mut Monomial, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        if gi == self.ngens() {
            return;
        }
        // exponent 0 for this generator
        self.enumerate(gi + 1, remaining, current, out);
        let deg = self.gens[gi].degree;
        let max_e = if self.gens[gi].odd { 1 } else { remaining / deg };
        for e in 1..=max_e as u32 {
            if (e as usize) * deg > remaining {
                break;
            }
            current.exps[gi] = e;
            if !self.is_admissible(current) {
                break; // larger exponents are multiples, also inadmissible
            }
            self.enumerate(gi + 1, remaining - e as usize * deg, current, out);
        }
        current.exps[gi] = 0;
    }

    pub fn zero(&self) -> Element {
        Element::zero()
    }

    pub fn one(&self) -> Element {
        Element::single(Monomial::one(self.ngens()), Rat::one())
    }

    pub fn gen_elem(&self, i: usize) -> Element {
        Element::single(Monomial::generator(self.ngens(), i), Rat::one())
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((m, sign)) = self.mul_monomials(ma, mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    let entry = acc.entry(m).or_insert_with(Rat::zero);
                    *entry += c;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Element { terms: acc }
    }

    /// Drops inadmissible terms (projection onto the monomial algebra).
    pub fn project(&self, e: &Element) -> Element {
        let mut terms = e.terms.clone();
        terms.retain(|m, _| self.is_admissible(m));
        Element { terms }
    }

    /// Degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self, e: &Element) -> Option<usize> {
        let mut it = e.terms.keys();
        let first = self.degree(it.next()?);
        for m in it {
            if self.degree(m) != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return String::from("1");
        }
        let mut parts = Vec::new();
        for (i, &e) in m.exps.iter().enumerate() {
            if e == 1 {
                parts.push(self.gens[i].name.clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.gens[i].name, e));
            }
        }
        parts.join("*")
    }

    pub fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in e.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push_str("-");
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let ms = self.format_monomial(m);
            if mag.is_one() {
                out.push_str(&ms);
            } else if m.is_one() {
                out.push_str(&format!("{mag}"));
            } else {
                out.push_str(&format!("{mag}*{ms}"));
            }
        }
        out
    }
}

/// Q-linear combination of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Rat>,
}

impl Element {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            // avoid borrowing issues: recompute key removal
            let dead: Vec<Monomial> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }
}

/// Degree +1 derivation given by generator images, extended by the graded
/// Leibniz rule.
///
/// Products along the extension are taken in the monomial algebra, so the
/// images must be compatible with the monomial relations (each image should
/// occupy the same "support" the generator does — as is the case for all
/// differentials built here, which substitute an even generator for an odd
/// one over the same geometric object). Otherwise the extension is not a
/// well-defined derivation of the quotient.
#[derive(Clone)]
pub struct Derivation {
    images: Vec<Element>,
}

impl Derivation {
    pub fn new(alg: &MonomialAlgebra, images: Vec<Element>) -> Self {
        assert_eq!(images.len(), alg.ngens());
        for (i, e) in images.iter().enumerate() {
            if let Some(d) = alg.homogeneous_degree(e) {
                assert_eq!(
                    d,
                    alg.gen_spec(i).degree + 1,
                    "derivation must raise degree by one"
                );
            }
        }
        Derivation { images }
    }

    pub fn zero(alg: &MonomialAlgebra) -> Self {
        Derivation {
            images: vec![Element::zero(); alg.ngens()],
        }
    }

    pub fn image_of_gen(&self, i: usize) -> &Element {
        &self.images[i]
    }

    /// d on a monomial by Leibniz: split off the first generator present.
    pub fn apply_monomial(&self, alg: &MonomialAlgebra, m: &Monomial) -> Element {
        let Some(first) = m.support().first().copied() else {
            return Element::zero();
        };
        let mut rest = m.clone();
        rest.exps[first] -= 1;
        let g = Monomial::generator(alg.ngens(), first);
        let g_elem = Element::single(g, Rat::one());
        // d(g * rest) = d(g) rest + (-1)^{|g|} g d(rest)
        let mut out = alg.mul(&self.images[first], &Element::single(rest.clone(), Rat::one()));
        let tail = self.apply_monomial(alg, &rest);
        let signed_tail = if alg.gen_spec(first).degree % 2 == 1 {
            tail.neg()
        } else {
            tail
        };
        out = out.add(&alg.mul(&g_elem, &signed_tail));
        out
    }

    pub fn apply(&self, alg: &MonomialAlgebra, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out = out.add(&self.apply_monomial(alg, m).scale(c));
        }
        out
    }
}

struct DegreeData {
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    span: RowSpan,
    /// Ambient indices of monomials surviving in the quotient basis.
    qbasis: Vec<usize>,
    qpos: BTreeMap<usize, usize>,
}

/// Quotient of a monomial algebra by homogeneous ideal generators, with
/// exact bases in every degree `0..=dmax`.
///
/// The Debug rendering shows only the dimension profile.
pub struct DegreewiseQuotient {
    alg: MonomialAlgebra,
    ideal: Vec<Element>,
    dmax: usize,
    data: Vec<DegreeData>,
}

impl fmt::Debug for DegreewiseQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DegreewiseQuotient({} generators, dims {:?})",
            self.alg.ngens(),
            self.dims()
        )
    }
}

impl DegreewiseQuotient {
    pub fn new(alg: MonomialAlgebra, ideal: Vec<Element>, dmax: usize) -> Self {
        let ideal: Vec<Element> = ideal.into_iter().filter(|e| !e.is_zero()).collect();
        let mut gen_degrees = Vec::with_capacity(ideal.len());
        for e in &ideal {
            let d = alg
                .homogeneous_degree(e)
                .expect("ideal generators must be homogeneous");
            assert!(d >= 1, "ideal generators must have positive degree");
            gen_degrees.push(d);
        }
        let mut data = Vec::with_capacity(dmax + 1);
        for d in 0..=dmax {
            let basis = alg.basis(d);
            let index: BTreeMap<Monomial, usize> = basis
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            let mut span = RowSpan::new();
            for (g, e) in ideal.iter().enumerate() {
                let gd = gen_degrees[g];
                if gd > d {
                    continue;
                }
                for m in alg.basis(d - gd) {
                    let prod = alg.mul(e, &Element::single(m, Rat::one()));
                    let row = row_in_index(&prod, &index);
                    span.insert(row);
                }
            }
            let qbasis: Vec<usize> = (0..basis.len()).filter(|&i| !span.is_pivot(i)).collect();
            let qpos: BTreeMap<usize, usize> = qbasis
                .iter()
                .enumerate()
                .map(|(p, &i)| (i, p))
                .collect();
            data.push(DegreeData {
                basis,
                index,
                span,
                qbasis,
                qpos,
            });
        }
        DegreewiseQuotient {
            alg,
            ideal,
            dmax,
            data,
        }
    }

    pub fn algebra(&self) -> &MonomialAlgebra {
        &self.alg
    }

    pub fn ideal(&self) -> &[Element] {
        &self.ideal
    }

    pub fn dmax(&self) -> usize {
        self.dmax
    }

    pub fn dim(&self, d: usize) -> usize {
        self.data[d].qbasis.len()
    }

    /// Quotient dimensions in degrees `0..=dmax`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.dmax).map(|d| self.dim(d)).collect()
    }

    pub fn ambient_basis(&self, d: usize) -> &[Monomial] {
        &self.data[d].basis
    }

    /// Monomials representing a basis of the quotient in degree `d`.
    pub fn quotient_basis(&self, d: usize) -> Vec<Monomial> {
        let dd = &self.data[d];
        dd.qbasis.iter().map(|&i| dd.basis[i].clone()).collect()
    }

    /// Canonical representative supported on quotient-basis monomials.
    /// The element may be inhomogeneous; each graded part is reduced,
    /// and all parts must have degree at most `dmax`.
    pub fn normal_form(&self, e: &Element) -> Element {
        let e = self.alg.project(e);
        let mut by_degree: BTreeMap<usize, Element> = BTreeMap::new();
        for (m, c) in e.terms() {
            let d = self.alg.degree(m);
            assert!(d <= self.dmax, "degree {d} exceeds quotient cutoff {}", self.dmax);
            by_degree
                .entry(d)
                .or_insert_with(Element::zero)
                .add_term(m.clone(), c.clone());
        }
        let mut out = Element::zero();
        for (d, part) in by_degree {
            let dd = &self.data[d];
            let row = row_in_index(&part, &dd.index);
            let red = dd.span.reduce(row);
            for (col, c) in red {
                out.add_term(dd.basis[col].clone(), c);
            }
        }
        out
    }

    pub fn is_zero_in_quotient(&self, e: &Element) -> bool {
        self.normal_form(e).is_zero()
    }

    /// Coordinates of (the normal form of) a homogeneous element in the
    /// quotient basis of degree `d`.
    pub fn coords(&self, e: &Element, d: usize) -> Vec<Rat> {
        let nf = self.normal_form(e);
        let dd = &self.data[d];
        let mut out = vec![Rat::zero(); dd.qbasis.len()];
        for (m, c) in nf.terms() {
            assert_eq!(self.alg.degree(m), d, "element not homogeneous of degree {d}");
            let ai = dd.index[m];
            out[dd.qpos[&ai]] = c.clone();
        }
        out
    }
}

/// Drops the graded parts of `e` in degrees above `dmax`.
fn truncate_degree(alg: &MonomialAlgebra, e: &Element, dmax: usize) -> Element {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        if alg.degree(m) <= dmax {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

fn row_in_index(e: &Element, index: &BTreeMap<Monomial, usize>) -> SparseRow {
    let mut map = BTreeMap::new();
    for (m, c) in e.terms() {
        if let Some(&i) = index.get(m) {
            map.insert(i, c.clone());
        }
    }
    sparse_from_map(map)
}

/// A degreewise quotient together with a differential that squares to zero
/// and preserves the ideal.
pub struct Dga {
    quotient: DegreewiseQuotient,
    d: Derivation,
}

impl fmt::Debug for Dga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Dga({} generators, dims {:?})",
            self.quotient.algebra().ngens(),
            self.quotient.dims()
        )
    }
}

impl Dga {
    pub fn new(quotient: DegreewiseQuotient, d: Derivation) -> Result<Dga, AlgebraError> {
        let alg = quotient.algebra();
        for (i, e) in quotient.ideal.iter().enumerate() {
            // graded parts beyond the cutoff are outside the truncated
            // quotient and cannot be checked
            let de = truncate_degree(alg, &d.apply(alg, e), quotient.dmax());
            if !quotient.is_zero_in_quotient(&de) {
                return Err(AlgebraError::IdealNotPreserved { ideal_index: i });
            }
        }
        for i in 0..alg.ngens() {
            if alg.gen_spec(i).degree + 2 > quotient.dmax() {
                continue;
            }
            let dd = d.apply(alg, d.image_of_gen(i));
            if !quotient.is_zero_in_quotient(&dd) {
                return Err(AlgebraError::DifferentialNotSquareZero { generator: i });
            }
        }
        Ok(Dga { quotient, d })
    }

    pub fn quotient(&self) -> &DegreewiseQuotient {
        &self.quotient
    }

    pub fn algebra(&self) -> &MonomialAlgebra {
        self.quotient.algebra()
    }

    pub fn differential(&self) -> &Derivation {
        &self.d
    }

    pub fn dims(&self) -> Vec<usize> {
        self.quotient.dims()
    }

    /// Apply the differential and reduce to normal form.
    pub fn d_of(&self, e: &Element) -> Element {
        self.quotient
            .normal_form(&self.d.apply(self.quotient.algebra(), e))
    }

    /// Matrix of `d` from degree `deg` to `deg + 1` in the quotient bases
    /// (columns = source basis).
    pub fn boundary_matrix(&self, deg: usize) -> RatMatrix {
        assert!(deg < self.quotient.dmax());
        let src = self.quotient.quotient_basis(deg);
        let rows = self.quotient.dim(deg + 1);
        let mut m = RatMatrix::zero(rows, src.len());
        for (j, mono) in src.iter().enumerate() {
            let img = self.d_of(&Element::single(mono.clone(), Rat::one()));
            let col = self.quotient.coords(&img, deg + 1);
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Dimensions of cohomology in degrees `0..=up_to`
    /// (requires `up_to + 1 <= dmax`).
    pub fn cohomology_dims(&self, up_to: usize) -> Vec<usize> {
        assert!(up_to < self.quotient.dmax());
        let mut prev_rank = 0usize;
        let mut out = Vec::with_capacity(up_to + 1);
        for d in 0..=up_to {
            let m = self.boundary_matrix(d);
            let r = rank_rat(&m);
            let dim_d = self.quotient.dim(d);
            out.push(dim_d - r - prev_rank);
            prev_rank = r;
        }
        out
    }
}

/// Multiplicative map between two quotients, given by generator images.
#[derive(Debug)]
pub struct AlgebraMap {
    images: Vec<Element>,
}

impl AlgebraMap {
    pub fn new(src: &MonomialAlgebra, tgt: &MonomialAlgebra, images: Vec<Element>) -> Self {
        assert_eq!(images.len(), src.ngens());
        for (i, e) in images.iter().enumerate() {
            if let Some(d) = tgt.homogeneous_degree(e) {
                assert_eq!(d, src.gen_spec(i).degree, "map must preserve degree");
            }
        }
        AlgebraMap { images }
    }

    pub fn image_of_gen(&self, i: usize) -> &Element {
        &self.images[i]
    }

    pub fn apply_monomial(&self, tgt: &MonomialAlgebra, m: &Monomial) -> Element {
        let mut out = tgt.one();
        for (i, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                out = tgt.mul(&out, &self.images[i]);
            }
        }
        out
    }

    pub fn apply(&self, tgt: &MonomialAlgebra, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out = out.add(&self.apply_monomial(tgt, m).scale(c));
        }
        out
    }

    /// Every explicit ideal generator of the source, and every listed
    /// monomial relation of the source algebra, must map to zero in the
    /// target quotient.
    pub fn preserves_relations(
        &self,
        src: &DegreewiseQuotient,
        tgt: &DegreewiseQuotient,
        src_monomial_relations: &[Monomial],
    ) -> bool {
        for e in src.ideal() {
            if !tgt.is_zero_in_quotient(&self.apply(tgt.algebra(), e)) {
                return false;
            }
        }
        for m in src_monomial_relations {
            let img = self.apply_monomial(tgt.algebra(), m);
            if !tgt.is_zero_in_quotient(&img) {
                return false;
            }
        }
        true
    }

    /// Chain property on generators: `phi(d x) = d(phi x)` in the target
    /// quotient.
    pub fn is_chain_map(&self, src: &Dga, tgt: &Dga) -> bool {
        let sa = src.algebra();
        let ta = tgt.algebra();
        for i in 0..sa.ngens() {
            let lhs = self.apply(ta, src.differential().image_of_gen(i));
            let rhs = tgt.differential().apply(ta, &self.images[i]);
            if !tgt.quotient().is_zero_in_quotient(&lhs.sub(&rhs)) {
                return false;
            }
        }
        true
    }

    /// Rank of the induced map `H^d(src) -> H^d(tgt)`.
    pub fn cohomology_map_rank(&self, src: &Dga, tgt: &Dga, d: usize) -> usize {
        let src_basis = src.quotient().quotient_basis(d);
        let m_src = src.boundary_matrix(d);
        let cocycles = kernel_rat(&m_src);
        // rows spanning the coboundaries of the target in degree d
        let mut span = RowSpan::new();
        if d >= 1 {
            let m_prev = tgt.boundary_matrix(d - 1);
            for j in 0..m_prev.cols() {
                let mut map = BTreeMap::new();
                for i in 0..m_prev.rows() {
                    let v = m_prev.at(i, j);
                    if !v.is_zero() {
                        map.insert(i, v.clone());
                    }
                }
                span.insert(sparse_from_map(map));
            }
        }
        let base_rank = span.rank();
        for z in &cocycles {
            let mut elem = Element::zero();
            for (k, c) in z.iter().enumerate() {
                if !c.is_zero() {
                    elem.add_term(src_basis[k].clone(), c.clone());
                }
            }
            let img = tgt
                .quotient()
                .normal_form(&self.apply(tgt.algebra(), &elem));
            let coords = tgt.quotient().coords(&img, d);
            let mut map = BTreeMap::new();
            for (i, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    map.insert(i, c);
                }
            }
            span.insert(sparse_from_map(map));
        }
        span.rank() - base_rank
    }

    /// Does the map induce isomorphisms on cohomology in degrees
    /// `0..=up_to`?
    pub fn is_quasi_iso(&self, src: &Dga, tgt: &Dga, up_to: usize) -> bool {
        let hs = src.cohomology_dims(up_to);
        let ht = tgt.cohomology_dims(up_to);
        if hs != ht {
            return false;
        }
        (0..=up_to).all(|d| self.cohomology_map_rank(src, tgt, d) == hs[d])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn polynomial_one_var() -> MonomialAlgebra {
        MonomialAlgebra::free(vec![GeneratorSpec::even("x", 2)])
    }

    #[test]
    fn free_polynomial_basis() {
        let a = polynomial_one_var();
        assert_eq!(a.basis(0).len(), 1);
        assert_eq!(a.basis(1).len(), 0);
        assert_eq!(a.basis(2).len(), 1);
        assert_eq!(a.basis(4).len(), 1);
    }

    #[test]
    fn exterior_two_generators() {
        let a = MonomialAlgebra::free(vec![
            GeneratorSpec::odd("u", 1),
            GeneratorSpec::odd("v", 1),
        ]);
        assert_eq!(a.basis(0).len(), 1);
        assert_eq!(a.basis(1).len(), 2);
        assert_eq!(a.basis(2).len(), 1);
        assert_eq!(a.basis(3).len(), 0);
        let u = a.gen_elem(0);
        let v = a.gen_elem(1);
        let uv = a.mul(&u, &v);
        let vu = a.mul(&v, &u);
        assert_eq!(uv, vu.neg());
        assert!(a.mul(&u, &u).is_zero());
    }

    #[test]
    fn koszul_sign_three_factors() {
        let a = MonomialAlgebra::free(vec![
            GeneratorSpec::odd("a", 1),
            GeneratorSpec::odd("b", 1),
            GeneratorSpec::odd("c", 1),
        ]);
        // (bc) * a = a b c  (two transpositions)
        let bc = a.mul(&a.gen_elem(1), &a.gen_elem(2));
        let abc = a.mul(&bc, &a.gen_elem(0));
        let direct = a.mul(&a.gen_elem(0), &bc);
        assert_eq!(abc, direct);
        // b * a = -ab
        let ba = a.mul(&a.gen_elem(1), &a.gen_elem(0));
        let ab = a.mul(&a.gen_elem(0), &a.gen_elem(1));
        assert_eq!(ba, ab.neg());
    }

    #[test]
    fn monomial_relations_prune_basis() {
        // two even generators whose product is forbidden
        let adm: Admissibility = Arc::new(|m: &Monomial| !(m.exp(0) > 0 && m.exp(1) > 0));
        let a = MonomialAlgebra::new(
            vec![GeneratorSpec::even("x", 2), GeneratorSpec::even("y", 2)],
            adm,
        );
        assert_eq!(a.basis(2).len(), 2);
        assert_eq!(a.basis(4).len(), 2); // x^2, y^2 only
        let xy = a.mul(&a.gen_elem(0), &a.gen_elem(1));
        assert!(xy.is_zero());
    }

    #[test]
    fn quotient_by_square() {
        let a = polynomial_one_var();
        let x2 = a.mul(&a.gen_elem(0), &a.gen_elem(0));
        let q = DegreewiseQuotient::new(a, vec![x2], 8);
        assert_eq!(q.dims(), vec![1, 0, 1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn quotient_linear_relation_normal_form() {
        let a = MonomialAlgebra::free(vec![
            GeneratorSpec::even("x", 2),
            GeneratorSpec::even("y", 2),
        ]);
        let rel = a.gen_elem(0).sub(&a.gen_elem(1)); // x - y
        let q = DegreewiseQuotient::new(a, vec![rel], 6);
        assert_eq!(q.dim(2), 1);
        assert_eq!(q.dim(4), 1);
        let x = q.algebra().gen_elem(0);
        let y = q.algebra().gen_elem(1);
        assert_eq!(q.normal_form(&x), q.normal_form(&y));
        assert!(q.is_zero_in_quotient(&x.sub(&y)));
    }

    #[test]
    fn koszul_pair_is_acyclic() {
        // d(tau) = x on Q[x] (x) Lambda(tau)
        let a = MonomialAlgebra::free(vec![
            GeneratorSpec::even("x", 2),
            GeneratorSpec::odd("tau", 1),
        ]);
        let d = Derivation::new(&a, vec![Element::zero(), a.gen_elem(0)]);
        let q = DegreewiseQuotient::new(a, vec![], 8);
        let dga = Dga::new(q, d).unwrap();
        let h = dga.cohomology_dims(6);
        assert_eq!(h, vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn derivation_leibniz_on_products() {
        let a = MonomialAlgebra::free(vec![
            GeneratorSpec::even("x", 2),
            GeneratorSpec::odd("tau", 1),
        ]);
        let d = Derivation::new(&a, vec![Element::zero(), a.gen_elem(0)]);
        // d(x tau) = x d(tau) = x^2
        let xtau = a.mul(&a.gen_elem(0), &a.gen_elem(1));
        let dxtau = d.apply(&a, &xtau);
        let x2 = a.mul(&a.gen_elem(0), &a.gen_elem(0));
        assert_eq!(dxtau, x2);
    }

    #[test]
    fn dga_rejects_bad_differential() {
        // d(tau) = x, d(x) = something nonzero of degree 3 -> d^2(tau) != 0
        let a = MonomialAlgebra::free(vec![
            GeneratorSpec::even("x", 2),
            GeneratorSpec::odd("tau", 1),
            GeneratorSpec::odd("sigma", 3),
        ]);
        let d = Derivation::new(
            &a,
            vec![a.gen_elem(2), a.gen_elem(0), Element::zero()],
        );
        let q = DegreewiseQuotient::new(a, vec![], 8);
        assert_eq!(
            Dga::new(q, d).unwrap_err(),
            AlgebraError::DifferentialNotSquareZero { generator: 1 }
        );
    }

    #[test]
    fn dga_rejects_unpreserved_ideal() {
        let a = MonomialAlgebra::free(vec![
            GeneratorSpec::even("x", 2),
            GeneratorSpec::odd("tau", 1),
        ]);
        let d = Derivation::new(&a, vec![Element::zero(), a.gen_elem(0)]);
        // ideal (tau) is not d-stable: d tau = x is nonzero in the quotient
        let ideal = vec![a.gen_elem(1)];
        let q = DegreewiseQuotient::new(a, ideal, 8);
        assert_eq!(
            Dga::new(q, d).unwrap_err(),
            AlgebraError::IdealNotPreserved { ideal_index: 0 }
        );
    }

    #[test]
    fn generator_order_does_not_change_dims() {
        // same algebra with the generator list permuted
        let a1 = MonomialAlgebra::free(vec![
            GeneratorSpec::even("x", 2),
            GeneratorSpec::even("y", 2),
        ]);
        let r1 = a1.gen_elem(0).add(&a1.gen_elem(1));
        let q1 = DegreewiseQuotient::new(a1, vec![r1], 8);

        let a2 = MonomialAlgebra::free(vec![
            GeneratorSpec::even("y", 2),
            GeneratorSpec::even("x", 2),
        ]);
        let r2 = a2.gen_elem(1).add(&a2.gen_elem(0));
        let q2 = DegreewiseQuotient::new(a2, vec![r2], 8);
        assert_eq!(q1.dims(), q2.dims());
    }

    #[test]
    fn identity_map_is_quasi_iso() {
        let build = || {
            let a = MonomialAlgebra::free(vec![
                GeneratorSpec::even("x", 2),
                GeneratorSpec::odd("tau", 1),
            ]);
            let d = Derivation::new(&a, vec![Element::zero(), a.gen_elem(0)]);
            let x2 = a.mul(&a.gen_elem(0), &a.gen_elem(0));
            let q = DegreewiseQuotient::new(a, vec![x2], 8);
            Dga::new(q, d).unwrap()
        };
        let src = build();
        let tgt = build();
        let images = vec![src.algebra().gen_elem(0), src.algebra().gen_elem(1)];
        let phi = AlgebraMap::new(src.algebra(), tgt.algebra(), images);
        assert!(phi.preserves_relations(src.quotient(), tgt.quotient(), &[]));
        assert!(phi.is_chain_map(&src, &tgt));
        assert!(phi.is_quasi_iso(&src, &tgt, 6));
    }

    #[test]
    fn zero_map_fails_quasi_iso() {
        let build = || {
            // H has a class in degree 2: Q[x]/(x^2), zero differential
            let a = MonomialAlgebra::free(vec![GeneratorSpec::even("x", 2)]);
            let x2 = a.mul(&a.gen_elem(0), &a.gen_elem(0));
            let d = Derivation::zero(&a);
            let q = DegreewiseQuotient::new(a, vec![x2], 8);
            Dga::new(q, d).unwrap()
        };
        let src = build();
        let tgt = build();
        let phi = AlgebraMap::new(src.algebra(), tgt.algebra(), vec![Element::zero()]);
        assert!(phi.is_chain_map(&src, &tgt));
        assert!(!phi.is_quasi_iso(&src, &tgt, 4));
    }

    #[test]
    fn element_formatting() {
        let a = MonomialAlgebra::free(vec![
            GeneratorSpec::even("x", 2),
            GeneratorSpec::odd("tau", 1),
        ]);
        let e = a
            .mul(&a.gen_elem(0), &a.gen_elem(0))
            .scale(&rat(3, 2))
            .sub(&a.gen_elem(1));
        assert_eq!(a.format_element(&e), "-tau + 3/2*x^2");
        assert_eq!(a.format_element(&Element::zero()), "0");
        assert_eq!(a.format_element(&a.one()), "1");
    }
}

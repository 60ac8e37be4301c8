//! Rational simplicial fans: validation (simplicial, complete, smooth,
//! projective), stellar subdivision, resolution of singular cones,
//! refinement along character hyperplanes, common refinements, barycentric
//! ray coordinates, and restriction to a subspace.
//!
//! All geometry is exact: cone membership through rational solves, convexity
//! and redundancy questions through exact LP feasibility.

use crate::lattice::{dot, primitive, Int, IntMatrix, Rat, Sublattice};
use crate::linalg::{kernel_rat, primitive_int, rank_rat, RatMatrix};
use crate::lp::{feasible_free_ge, feasible_nonneg_eq};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanError {
    ZeroRay,
    RayIndexOutOfRange { index: usize },
    WrongRayLength { expected: usize, got: usize },
    NoCones,
    NotValid(&'static str),
    NotCompatible,
    PointNotInSupport,
}

impl fmt::Display for FanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanError::ZeroRay => write!(f, "zero vector cannot be a ray"),
            FanError::RayIndexOutOfRange { index } => {
                write!(f, "cone references ray index {index} out of range")
            }
            FanError::WrongRayLength { expected, got } => {
                write!(f, "ray has {got} coordinates, expected {expected}")
            }
            FanError::NoCones => write!(f, "fan has no maximal cones"),
            FanError::NotValid(what) => write!(f, "fan is not {what}"),
            FanError::NotCompatible => {
                write!(f, "a cone's relative interior meets the subspace without lying in it")
            }
            FanError::PointNotInSupport => write!(f, "point is not in the support of the fan"),
        }
    }
}

/// Validation report; `complete` already presumes the pairwise intersection
/// and wall conditions hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FanReport {
    pub simplicial: bool,
    pub complete: bool,
    pub smooth: bool,
    pub projective: bool,
}

impl FanReport {
    pub fn all(&self) -> bool {
        self.simplicial && self.complete && self.smooth && self.projective
    }
}

/// A fan in `R^dim` given by primitive ray vectors (lexicographically sorted,
/// distinct) and maximal cones as sorted ray-index lists. Faces are implicit:
/// every subset of a maximal cone spans a face.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<Int>>,
    max_cones: Vec<Vec<usize>>,
}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Fan(dim {}, {} rays, {} max cones)",
            self.dim,
            self.rays.len(),
            self.max_cones.len()
        )
    }
}

impl Fan {
    /// Canonicalizing constructor: primitivizes rays, deduplicates, sorts
    /// rays lexicographically, re-indexes cones, drops cones that are faces
    /// of other cones.
    pub fn new(dim: usize, rays: Vec<Vec<Int>>, cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        if dim == 0 {
            return Ok(Fan {
                dim,
                rays: Vec::new(),
                max_cones: vec![Vec::new()],
            });
        }
        let mut prim = Vec::with_capacity(rays.len());
        for r in &rays {
            if r.len() != dim {
                return Err(FanError::WrongRayLength {
                    expected: dim,
                    got: r.len(),
                });
            }
            if r.iter().all(|x| x.is_zero()) {
                return Err(FanError::ZeroRay);
            }
            prim.push(primitive(r));
        }
        let mut sorted: Vec<Vec<Int>> = prim.clone();
        sorted.sort();
        sorted.dedup();
        let index_of: BTreeMap<&Vec<Int>, usize> =
            sorted.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut new_cones: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &cones {
            let mut idx = Vec::with_capacity(c.len());
            for &i in c {
                if i >= prim.len() {
                    return Err(FanError::RayIndexOutOfRange { index: i });
                }
                idx.push(index_of[&prim[i]]);
            }
            idx.sort_unstable();
            idx.dedup();
            new_cones.insert(idx);
        }
        if new_cones.is_empty() {
            return Err(FanError::NoCones);
        }
        // Keep only inclusion-maximal cones.
        let all: Vec<Vec<usize>> = new_cones.into_iter().collect();
        let mut keep = Vec::new();
        for (i, c) in all.iter().enumerate() {
            let is_face = all.iter().enumerate().any(|(j, d)| {
                j != i && c.len() < d.len() && c.iter().all(|x| d.binary_search(x).is_ok())
            });
            if !is_face {
                keep.push(c.clone());
            }
        }
        Ok(Fan {
            dim,
            rays: sorted,
            max_cones: keep,
        })
    }

    pub fn point() -> Fan {
        Fan {
            dim: 0,
            rays: Vec::new(),
            max_cones: vec![Vec::new()],
        }
    }

    pub fn projective_line() -> Fan {
        Fan::projective_space(1)
    }

    /// Fan of `P^n`: rays `e_1..e_n` and `-(e_1+..+e_n)`; maximal cones omit
    /// one ray each.
    pub fn projective_space(n: usize) -> Fan {
        assert!(n >= 1);
        let mut rays = Vec::new();
        for i in 0..n {
            let mut e = vec![Int::zero(); n];
            e[i] = Int::one();
            rays.push(e);
        }
        rays.push(vec![-Int::one(); n]);
        let cones = (0..=n)
            .map(|skip| (0..=n).filter(|&i| i != skip).collect())
            .collect();
        Fan::new(n, rays, cones).unwrap()
    }

    /// Product fan: rays are the embedded rays of both factors, maximal cones
    /// are pairwise unions.
    pub fn product(a: &Fan, b: &Fan) -> Fan {
        let dim = a.dim + b.dim;
        let mut rays = Vec::new();
        for r in &a.rays {
            let mut v = r.clone();
            v.extend(core::iter::repeat_with(Int::zero).take(b.dim));
            rays.push(v);
        }
        for r in &b.rays {
            let mut v: Vec<Int> = core::iter::repeat_with(Int::zero).take(a.dim).collect();
            v.extend(r.iter().cloned());
            rays.push(v);
        }
        let mut cones = Vec::new();
        for ca in &a.max_cones {
            for cb in &b.max_cones {
                let mut c: Vec<usize> = ca.clone();
                c.extend(cb.iter().map(|&i| i + a.rays.len()));
                cones.push(c);
            }
        }
        Fan::new(dim, rays, cones).unwrap()
    }

    /// Hirzebruch surface fan: rays (1,0), (0,1), (-1,a), (0,-1).
    pub fn hirzebruch(a: i64) -> Fan {
        let rays = vec![
            vec![Int::one(), Int::zero()],
            vec![Int::zero(), Int::one()],
            vec![-Int::one(), Int::from(a)],
            vec![Int::zero(), -Int::one()],
        ];
        let cones = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]];
        Fan::new(2, rays, cones).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[Int] {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Index of a ray vector, if present.
    pub fn ray_index(&self, v: &[Int]) -> Option<usize> {
        let p = primitive(v);
        self.rays.binary_search(&p).ok()
    }

    /// All cones (faces of maximal cones), as sorted index lists, ordered by
    /// (dimension, lex). Includes the zero cone (empty list).
    pub fn all_cones(&self) -> Vec<Vec<usize>> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &self.max_cones {
            // all subsets
            let k = c.len();
            for mask in 0..(1u64 << k) {
                let sub: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| c[i]).collect();
                set.insert(sub);
            }
        }
        let mut out: Vec<Vec<usize>> = set.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Is the index set a face of some maximal cone?
    pub fn is_face(&self, cone: &[usize]) -> bool {
        self.max_cones
            .iter()
            .any(|c| cone.iter().all(|x| c.binary_search(x).is_ok()))
    }

    /// Maximal cones whose ray set contains `cone`.
    pub fn star(&self, cone: &[usize]) -> Vec<usize> {
        (0..self.max_cones.len())
            .filter(|&i| cone.iter().all(|x| self.max_cones[i].binary_search(x).is_ok()))
            .collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.dim + 1];
        for c in self.all_cones() {
            f[c.len()] += 1;
        }
        f
    }

    /// h-vector of the underlying simplicial sphere:
    /// `h_k = sum_i (-1)^(k-i) C(n-i, k-i) f_i`.
    pub fn h_vector(&self) -> Vec<usize> {
        let f = self.f_vector();
        let n = self.dim as i128;
        let mut h = Vec::with_capacity(self.dim + 1);
        for k in 0..=self.dim {
            let mut acc: i128 = 0;
            for i in 0..=k {
                let c = binomial(n - i as i128, (k - i) as i128);
                let term = c * f[i] as i128;
                if (k - i) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            assert!(acc >= 0, "h-vector of a complete simplicial fan is nonnegative");
            h.push(acc as usize);
        }
        h
    }

    /// Matrix with the cone's rays as columns.
    fn cone_matrix(&self, cone: &[usize]) -> RatMatrix {
        let cols: Vec<&[Int]> = cone.iter().map(|&i| self.rays[i].as_slice()).collect();
        RatMatrix::from_int_cols(&cols)
    }

    /// Barycentric coordinates of `v` in the maximal cone `ci`, if `v` lies
    /// in that cone.
    fn coords_in_max_cone(&self, ci: usize, v: &[Rat]) -> Option<Vec<Rat>> {
        let cone = &self.max_cones[ci];
        if cone.len() != self.dim {
            return None;
        }
        let m = self.cone_matrix(cone);
        let lambda = m.solve(v)?;
        if lambda.iter().all(|x| !x.is_negative()) {
            Some(lambda)
        } else {
            None
        }
    }

    /// Finds a maximal cone containing `v` together with the barycentric
    /// coordinates of `v` on that cone's rays.
    pub fn locate(&self, v: &[Rat]) -> Result<(usize, Vec<Rat>), FanError> {
        assert_eq!(v.len(), self.dim);
        for ci in 0..self.max_cones.len() {
            if let Some(lambda) = self.coords_in_max_cone(ci, v) {
                return Ok((ci, lambda));
            }
        }
        Err(FanError::PointNotInSupport)
    }

    /// Value at `v` of the piecewise-linear function that is 1 on ray `c`,
    /// 0 on all other rays, and linear on every cone.
    pub fn eval_s(&self, c: usize, v: &[Rat]) -> Result<Rat, FanError> {
        let (ci, lambda) = self.locate(v)?;
        let cone = &self.max_cones[ci];
        Ok(match cone.iter().position(|&r| r == c) {
            Some(p) => lambda[p].clone(),
            None => Rat::zero(),
        })
    }

    /// Does the character take a constant sign (>=0 everywhere or <=0
    /// everywhere) on every maximal cone?
    pub fn equal_sign(&self, chi: &[Int]) -> bool {
        assert_eq!(chi.len(), self.dim);
        self.max_cones.iter().all(|c| {
            let mut pos = false;
            let mut neg = false;
            for &i in c {
                let p = dot(chi, &self.rays[i]);
                if p.is_positive() {
                    pos = true;
                } else if p.is_negative() {
                    neg = true;
                }
            }
            !(pos && neg)
        })
    }

    fn is_simplicial(&self) -> bool {
        if self.dim == 0 {
            return self.max_cones == vec![Vec::<usize>::new()];
        }
        self.max_cones.iter().all(|c| {
            c.len() <= self.dim && {
                let m = self.cone_matrix(c);
                rank_rat(&m) == c.len()
            }
        })
    }

    /// Walls of the fan: for each shared facet of two maximal cones, the
    /// facet ray set and the two (cone, opposite-ray) incidences.
    /// Returns None if some facet is not shared by exactly two maximal cones
    /// sitting on opposite sides — i.e. the fan is not complete.
    fn walls(&self) -> Option<Vec<Wall>> {
        if self.dim == 0 {
            return Some(Vec::new());
        }
        // facet ray set -> list of (max cone index, leftover ray index)
        let mut table: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, c) in self.max_cones.iter().enumerate() {
            if c.len() != self.dim {
                return None;
            }
            for drop in 0..c.len() {
                let facet: Vec<usize> = c
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != drop)
                    .map(|(_, &r)| r)
                    .collect();
                table.entry(facet).or_default().push((ci, c[drop]));
            }
        }
        let mut walls = Vec::new();
        for (facet, inc) in table {
            if inc.len() != 2 {
                return None;
            }
            // Normal to the facet hyperplane: kernel of the matrix whose
            // rows are the facet rays (empty facet when dim == 1).
            let mut mt = RatMatrix::zero(facet.len(), self.dim);
            for (r, &ri) in facet.iter().enumerate() {
                for j in 0..self.dim {
                    mt.set(r, j, Rat::from_integer(self.rays[ri][j].clone()));
                }
            }
            let ker = kernel_rat(&mt);
            if ker.len() != 1 {
                return None;
            }
            let u = primitive_int(&ker[0]);
            let s1 = dot(&u, &self.rays[inc[0].1]);
            let s2 = dot(&u, &self.rays[inc[1].1]);
            if !(s1.is_positive() && s2.is_negative()
                || s1.is_negative() && s2.is_positive())
            {
                return None;
            }
            walls.push(Wall {
                facet,
                side_a: inc[0],
                side_b: inc[1],
            });
        }
        Some(walls)
    }

    /// The intersection of every pair of maximal cones must be the cone
    /// spanned by their shared rays. Exact check via LP feasibility.
    fn intersections_are_faces(&self) -> bool {
        let n = self.dim;
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                let ca = &self.max_cones[a];
                let cb = &self.max_cones[b];
                let shared: Vec<usize> =
                    ca.iter().filter(|x| cb.binary_search(x).is_ok()).copied().collect();
                if shared.len() == ca.len() {
                    continue;
                }
                // dual coordinates on both cones
                let ma = self.cone_matrix(ca);
                let mb = self.cone_matrix(cb);
                let (Some(ia), Some(ib)) = (ma.inverse(), mb.inverse()) else {
                    return false;
                };
                // v in C_a cap C_b with coordinate u_i >= 1 for a ray i of
                // C_a outside the shared face => intersection pokes beyond.
                for (pos, &ri) in ca.iter().enumerate() {
                    if shared.binary_search(&ri).is_ok() {
                        continue;
                    }
                    let mut rows = Vec::new();
                    let mut rhs = Vec::new();
                    for r in 0..n {
                        rows.push((0..n).map(|j| ia.at(r, j).clone()).collect::<Vec<_>>());
                        rhs.push(Rat::zero());
                        rows.push((0..n).map(|j| ib.at(r, j).clone()).collect::<Vec<_>>());
                        rhs.push(Rat::zero());
                    }
                    rows.push((0..n).map(|j| ia.at(pos, j).clone()).collect::<Vec<_>>());
                    rhs.push(Rat::one());
                    let mut m = RatMatrix::zero(rows.len(), n);
                    for (i, row) in rows.iter().enumerate() {
                        for (j, x) in row.iter().enumerate() {
                            m.set(i, j, x.clone());
                        }
                    }
                    if feasible_free_ge(&m, &rhs).is_some() {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn wall_graph_connected(&self, walls: &[Wall]) -> bool {
        let n = self.max_cones.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for w in walls {
            adj[w.side_a.0].push(w.side_b.0);
            adj[w.side_b.0].push(w.side_a.0);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &d in &adj[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_complete(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        if !self.is_simplicial() {
            return false;
        }
        let Some(walls) = self.walls() else {
            return false;
        };
        if self.dim >= 2 && !self.wall_graph_connected(&walls) {
            return false;
        }
        self.intersections_are_faces()
    }

    pub fn is_smooth(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        self.max_cones.iter().all(|c| {
            c.len() == self.dim && {
                let rows: Vec<Vec<Int>> = c.iter().map(|&i| self.rays[i].clone()).collect();
                let m = IntMatrix::from_rows(self.dim, &rows).unwrap();
                m.det().abs().is_one()
            }
        })
    }

    /// Multiplicity (|det| of the ray matrix) of a maximal cone.
    fn multiplicity(&self, ci: usize) -> Int {
        let c = &self.max_cones[ci];
        let rows: Vec<Vec<Int>> = c.iter().map(|&i| self.rays[i].clone()).collect();
        IntMatrix::from_rows(self.dim, &rows).unwrap().det().abs()
    }

    /// Decides projectivity by exact LP: a strictly convex support function
    /// exists iff for every wall the convexity gap can be bounded below by 1.
    pub fn is_projective(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        let Some(walls) = self.walls() else {
            return false;
        };
        let nr = self.rays.len();
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for w in &walls {
            // Express the ray opposite the wall in side_a in terms of
            // side_a's cone basis; strict convexity across the wall reads
            // a[r_b] - sum lambda_c a[c] >= 1.
            let (ca, _ra) = w.side_a;
            let (_cb, rb) = w.side_b;
            let cone = &self.max_cones[ca];
            let m = self.cone_matrix(cone);
            let vb: Vec<Rat> = self.rays[rb]
                .iter()
                .map(|x| Rat::from_integer(x.clone()))
                .collect();
            let Some(lambda) = m.solve(&vb) else {
                return false;
            };
            let mut row = vec![Rat::zero(); nr];
            row[rb] = Rat::one();
            for (pos, &c) in cone.iter().enumerate() {
                row[c] -= &lambda[pos];
            }
            rows.push(row);
        }
        let mut a = RatMatrix::zero(rows.len(), nr);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                a.set(i, j, x.clone());
            }
        }
        let b = vec![Rat::one(); rows.len()];
        feasible_free_ge(&a, &b).is_some()
    }

    pub fn report(&self) -> FanReport {
        let simplicial = self.is_simplicial();
        let complete = simplicial && self.is_complete();
        let smooth = simplicial && self.is_smooth();
        let projective = complete && self.is_projective();
        FanReport {
            simplicial,
            complete,
            smooth,
            projective,
        }
    }

    pub fn validate(&self) -> Result<(), FanError> {
        let r = self.report();
        if !r.simplicial {
            return Err(FanError::NotValid("simplicial"));
        }
        if !r.complete {
            return Err(FanError::NotValid("complete"));
        }
        if !r.smooth {
            return Err(FanError::NotValid("smooth"));
        }
        if !r.projective {
            return Err(FanError::NotValid("projective"));
        }
        Ok(())
    }

    /// Star subdivision at (the primitive vector on the ray through) `v`.
    /// Cones containing the minimal cone of `v` are split; if `v` already
    /// spans a ray of the fan the result is the fan itself.
    pub fn stellar_subdivide(&self, v: &[Int]) -> Result<Fan, FanError> {
        if v.iter().all(|x| x.is_zero()) {
            return Err(FanError::ZeroRay);
        }
        let p = primitive(v);
        let vr: Vec<Rat> = p.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let (ci, lambda) = self.locate(&vr)?;
        let home = &self.max_cones[ci];
        // minimal cone containing v: rays with positive coordinate
        let t: Vec<usize> = home
            .iter()
            .enumerate()
            .filter(|&(k, _)| lambda[k].is_positive())
            .map(|(_, &r)| r)
            .collect();
        if t.len() == 1 {
            return Ok(self.clone());
        }
        let new_ray_idx = self.rays.len();
        let mut rays = self.rays.clone();
        rays.push(p);
        let mut cones = Vec::new();
        for c in &self.max_cones {
            if t.iter().all(|x| c.binary_search(x).is_ok()) {
                for &drop in &t {
                    let mut nc: Vec<usize> =
                        c.iter().copied().filter(|&r| r != drop).collect();
                    nc.push(new_ray_idx);
                    cones.push(nc);
                }
            } else {
                cones.push(c.clone());
            }
        }
        Fan::new(self.dim, rays, cones)
    }

    /// Iterated stellar subdivision until all cones are unimodular. The cone
    /// of largest multiplicity (first in canonical order on ties) is split at
    /// the parallelepiped lattice point with lexicographically least
    /// fractional coordinates.
    pub fn resolve_smooth(&self) -> Fan {
        let mut fan = self.clone();
        loop {
            let mut worst: Option<(usize, Int)> = None;
            for ci in 0..fan.max_cones.len() {
                let m = fan.multiplicity(ci);
                let update = match &worst {
                    None => true,
                    Some((_, w)) => m > *w,
                };
                if update {
                    worst = Some((ci, m));
                }
            }
            let (ci, mult) = worst.expect("fan has cones");
            if mult.is_one() {
                return fan;
            }
            let point = fan.subdivision_point(ci);
            fan = fan.stellar_subdivide(&point).expect("interior point");
        }
    }

    /// The nonzero lattice point of the half-open fundamental parallelepiped
    /// of the cone with lexicographically least fractional coordinates.
    fn subdivision_point(&self, ci: usize) -> Vec<Int> {
        let cone = &self.max_cones[ci];
        let n = self.dim;
        let rows: Vec<Vec<Int>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
        // columns = rays
        let m = IntMatrix::from_rows(n, &rows).unwrap().transpose();
        let s = crate::lattice::snf(&m);
        let minv = RatMatrix::from_int(&m).inverse().expect("simplicial cone");
        let divisors: Vec<Int> = (0..n).map(|i| s.d.at(i, i).clone()).collect();
        let mut best: Option<(Vec<Rat>, Vec<Int>)> = None;
        let mut counter = vec![Int::zero(); n];
        loop {
            // advance odometer
            let mut carry = true;
            for i in 0..n {
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
                break; // wrapped around: done
            }
            // coset representative z = u_inv . counter
            let z = s.u_inv.mul_vec(&counter);
            let zr: Vec<Rat> = z.iter().map(|x| Rat::from_integer(x.clone())).collect();
            let lam = minv.mul_vec(&zr);
            let frac: Vec<Rat> = lam.iter().map(|x| x - x.floor()).collect();
            if frac.iter().all(|x| x.is_zero()) {
                continue;
            }
            let better = match &best {
                None => true,
                Some((bf, _)) => frac < *bf,
            };
            if better {
                // point = M . frac, integral by construction
                let pt: Vec<Int> = (0..n)
                    .map(|i| {
                        let mut acc = Rat::zero();
                        for j in 0..n {
                            acc += Rat::from_integer(m.at(i, j).clone()) * &frac[j];
                        }
                        debug_assert!(acc.is_integer());
                        acc.to_integer()
                    })
                    .collect();
                best = Some((frac, pt));
            }
        }
        best.expect("multiplicity > 1 gives a nonzero coset").1
    }

    /// If `self` refines `coarse`, returns for every maximal cone of `self`
    /// the minimal cone of `coarse` containing it (as a ray-index list into
    /// `coarse`). Both fans must be complete over the same space.
    pub fn refines(&self, coarse: &Fan) -> Option<Vec<Vec<usize>>> {
        if self.dim != coarse.dim {
            return None;
        }
        let mut out = Vec::with_capacity(self.max_cones.len());
        for c in &self.max_cones {
            let mut found = None;
            for (di, d) in coarse.max_cones.iter().enumerate() {
                let m = coarse.cone_matrix(d);
                let Some(inv) = m.inverse() else { continue };
                let mut support: BTreeSet<usize> = BTreeSet::new();
                let mut ok = true;
                for &ri in c {
                    let v: Vec<Rat> = self.rays[ri]
                        .iter()
                        .map(|x| Rat::from_integer(x.clone()))
                        .collect();
                    let lam = inv.mul_vec(&v);
                    if lam.iter().any(|x| x.is_negative()) {
                        ok = false;
                        break;
                    }
                    for (k, l) in lam.iter().enumerate() {
                        if l.is_positive() {
                            support.insert(d[k]);
                        }
                    }
                }
                if ok {
                    found = Some(support.into_iter().collect::<Vec<usize>>());
                    break;
                }
                let _ = di;
            }
            out.push(found?);
        }
        Some(out)
    }

    /// Refinement of the fan on which every given character has constant
    /// sign per cone: cones are cut along the character hyperplanes and the
    /// resulting cells triangulated by pulling in the global lex ray order.
    pub fn hyperplane_refine(&self, chars: &[Vec<Int>]) -> Fan {
        assert!(self.dim >= 1);
        let mut cells: Vec<Vec<Vec<Int>>> = self
            .max_cones
            .iter()
            .map(|c| c.iter().map(|&i| self.rays[i].clone()).collect())
            .collect();
        let mut seen: BTreeSet<Vec<Int>> = BTreeSet::new();
        for chi in chars {
            if chi.iter().all(|x| x.is_zero()) {
                continue;
            }
            let p = primitive(chi);
            let mut q = p.clone();
            for x in q.iter_mut() {
                *x = -x.clone();
            }
            if seen.contains(&p) || seen.contains(&q) {
                continue;
            }
            seen.insert(p.clone());
            let mut next = Vec::new();
            for cell in cells {
                let (a, b) = cut_cell(&cell, &p);
                if let Some(a) = a {
                    next.push(a);
                }
                if let Some(b) = b {
                    next.push(b);
                }
            }
            cells = next;
        }
        let mut simplices: Vec<Vec<Vec<Int>>> = Vec::new();
        for cell in cells {
            simplices.extend(triangulate_cell(&cell));
        }
        fan_from_simplices(self.dim, simplices)
    }

    /// Smooth projective common refinement: pairwise intersections of
    /// maximal cones, pulling triangulation, then resolution.
    pub fn common_refinement(&self, other: &Fan) -> Fan {
        assert_eq!(self.dim, other.dim);
        assert!(self.dim >= 1);
        let n = self.dim;
        let mut cells = Vec::new();
        for c in &self.max_cones {
            let cell0: Vec<Vec<Int>> = c.iter().map(|&i| self.rays[i].clone()).collect();
            for d in &other.max_cones {
                // cut the cell by each dual halfspace of the other cone
                let m = other.cone_matrix(d);
                let Some(inv) = m.inverse() else { continue };
                let mut piece = Some(cell0.clone());
                for r in 0..n {
                    let u: Vec<Rat> = (0..n).map(|j| inv.at(r, j).clone()).collect();
                    let ui = primitive_int(&u);
                    piece = piece.and_then(|cell| cut_cell(&cell, &ui).0);
                    if piece.is_none() {
                        break;
                    }
                }
                if let Some(cell) = piece {
                    // keep only full-dimensional intersections
                    let mat = RatMatrix::from_int_cols(
                        &cell.iter().map(|g| g.as_slice()).collect::<Vec<_>>(),
                    );
                    if rank_rat(&mat) == n {
                        cells.push(cell);
                    }
                }
            }
        }
        let mut simplices = Vec::new();
        for cell in cells {
            simplices.extend(triangulate_cell(&cell));
        }
        fan_from_simplices(n, simplices).resolve_smooth()
    }

    /// Restriction of the fan to the subspace annihilated by the characters
    /// in `gamma`, re-coordinatized in the lattice basis of that subspace.
    /// Errors unless every cone's relative interior lies inside or away from
    /// the subspace.
    pub fn subfan_in_subspace(&self, gamma: &Sublattice) -> Result<Fan, FanError> {
        assert_eq!(gamma.ambient_dim(), self.dim);
        if gamma.rank() == 0 {
            return Ok(self.clone());
        }
        let w = crate::lattice::kernel_lattice(gamma.basis());
        let k = w.rank();
        for cone in self.all_cones() {
            if cone.is_empty() {
                continue;
            }
            let in_w: Vec<bool> = cone
                .iter()
                .map(|&i| w.contains_vector(&self.rays[i]))
                .collect();
            if in_w.iter().all(|&b| b) {
                continue;
            }
            // May the relative interior still meet the subspace? Check
            // whether some strictly positive combination of the rays pairs
            // to zero with every character: exists mu >= 0 with
            // A(1 + mu) = 0 for the pairing matrix A.
            let rows = gamma.rank();
            let mut a = RatMatrix::zero(rows, cone.len());
            let mut rhs = vec![Rat::zero(); rows];
            for r in 0..rows {
                let chi = gamma.basis().row(r);
                let mut sum = Rat::zero();
                for (j, &ri) in cone.iter().enumerate() {
                    let p = Rat::from_integer(dot(chi, &self.rays[ri]));
                    sum += &p;
                    a.set(r, j, p);
                }
                rhs[r] = -sum;
            }
            if feasible_nonneg_eq(&a, &rhs).is_some() {
                return Err(FanError::NotCompatible);
            }
        }
        if k == 0 {
            return Ok(Fan::point());
        }
        let mut rays = Vec::new();
        let mut cones = Vec::new();
        let contained: Vec<usize> = (0..self.rays.len())
            .filter(|&i| w.contains_vector(&self.rays[i]))
            .collect();
        for &i in &contained {
            rays.push(w.coords_of(&self.rays[i]).expect("ray in subspace lattice"));
        }
        let local: BTreeMap<usize, usize> = contained
            .iter()
            .enumerate()
            .map(|(loc, &glob)| (glob, loc))
            .collect();
        for cone in self.all_cones() {
            if !cone.is_empty() && cone.iter().all(|i| local.contains_key(i)) {
                cones.push(cone.iter().map(|i| local[i]).collect());
            }
        }
        if cones.is_empty() {
            cones.push(Vec::new());
        }
        Fan::new(k, rays, cones)
    }
}

struct Wall {
    #[allow(dead_code)]
    facet: Vec<usize>,
    side_a: (usize, usize),
    side_b: (usize, usize),
}

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Cuts a full-dimensional cone cell (given by generators) along the
/// hyperplane of `chi`. Returns the closures of the two open sides, when
/// full-dimensional; generators of the slice are primitive combinations of
/// opposite-sign generator pairs.
fn cut_cell(gens: &[Vec<Int>], chi: &[Int]) -> (Option<Vec<Vec<Int>>>, Option<Vec<Vec<Int>>>) {
    let signs: Vec<i8> = gens
        .iter()
        .map(|g| {
            let d = dot(chi, g);
            if d.is_positive() {
                1
            } else if d.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect();
    let has_pos = signs.iter().any(|&s| s > 0);
    let has_neg = signs.iter().any(|&s| s < 0);
    if !has_neg {
        return (Some(gens.to_vec()), None);
    }
    if !has_pos {
        return (None, Some(gens.to_vec()));
    }
    let mut slice: Vec<Vec<Int>> = Vec::new();
    for (i, gi) in gens.iter().enumerate() {
        for (j, gj) in gens.iter().enumerate() {
            if signs[i] > 0 && signs[j] < 0 {
                let a = dot(chi, gi);
                let b = -dot(chi, gj);
                // a * gj + b * gi lies on the hyperplane, inside the cell
                let w: Vec<Int> = (0..gi.len()).map(|t| &a * &gj[t] + &b * &gi[t]).collect();
                slice.push(primitive(&w));
            }
        }
    }
    let mut plus: Vec<Vec<Int>> = gens
        .iter()
        .zip(&signs)
        .filter(|&(_, &s)| s >= 0)
        .map(|(g, _)| g.clone())
        .collect();
    plus.extend(slice.iter().cloned());
    let mut minus: Vec<Vec<Int>> = gens
        .iter()
        .zip(&signs)
        .filter(|&(_, &s)| s <= 0)
        .map(|(g, _)| g.clone())
        .collect();
    minus.extend(slice.iter().cloned());
    (Some(reduce_generators(plus)), Some(reduce_generators(minus)))
}

/// Removes duplicate and redundant generators, leaving the extreme rays.
fn reduce_generators(mut gens: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    gens.sort();
    gens.dedup();
    let mut i = 0;
    while i < gens.len() {
        if gens.len() == 1 {
            break;
        }
        let target: Vec<Rat> = gens[i]
            .iter()
            .map(|x| Rat::from_integer(x.clone()))
            .collect();
        let others: Vec<&[Int]> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.as_slice())
            .collect();
        let m = RatMatrix::from_int_cols(&others);
        if feasible_nonneg_eq(&m, &target).is_some() {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    gens
}

/// Facets of a cone cell of any dimension: pairs (face index set, inward
/// data implicit). Each facet is returned as the set of generator indices
/// lying on it.
fn cell_facets(gens: &[Vec<Int>]) -> Vec<Vec<usize>> {
    let ambient = gens[0].len();
    let all = RatMatrix::from_int_cols(&gens.iter().map(|g| g.as_slice()).collect::<Vec<_>>());
    let d = rank_rat(&all);
    assert!(d >= 1);
    if d == 1 {
        return Vec::new();
    }
    // Basis of the linear span: greedily independent generators.
    let mut basis_rows: Vec<Vec<Rat>> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if basis_rows.len() == d {
            break;
        }
        let mut cand = basis_rows.clone();
        cand.push(g.iter().map(|x| Rat::from_integer(x.clone())).collect());
        let mut m = RatMatrix::zero(cand.len(), ambient);
        for (r, row) in cand.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        if rank_rat(&m) == cand.len() {
            basis_rows = cand;
            chosen.push(i);
        }
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    // candidate ridges: (d-1)-subsets of generators
    let idx: Vec<usize> = (0..gens.len()).collect();
    for subset in subsets_of_size(&idx, d - 1) {
        // normal u = y . B with <u, g> = 0 on the subset
        let mut cond = RatMatrix::zero(subset.len(), d);
        for (r, &gi) in subset.iter().enumerate() {
            for (c, brow) in basis_rows.iter().enumerate() {
                let mut acc = Rat::zero();
                for t in 0..ambient {
                    acc += &brow[t] * Rat::from_integer(gens[gi][t].clone());
                }
                cond.set(r, c, acc);
            }
        }
        let ker = kernel_rat(&cond);
        if ker.len() != 1 {
            continue;
        }
        let y = &ker[0];
        let u: Vec<Rat> = (0..ambient)
            .map(|t| {
                let mut acc = Rat::zero();
                for (c, brow) in basis_rows.iter().enumerate() {
                    acc += &y[c] * &brow[t];
                }
                acc
            })
            .collect();
        let ui = primitive_int(&u);
        let mut pos = false;
        let mut neg = false;
        let mut face = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let p = dot(&ui, g);
            if p.is_positive() {
                pos = true;
            } else if p.is_negative() {
                neg = true;
            } else {
                face.push(i);
            }
        }
        if pos && neg {
            continue;
        }
        // genuine facet: zero set spans dimension d-1
        let fm = RatMatrix::from_int_cols(
            &face.iter().map(|&i| gens[i].as_slice()).collect::<Vec<_>>(),
        );
        if rank_rat(&fm) != d - 1 {
            continue;
        }
        if seen.insert(face.clone()) {
            out.push(face);
        }
    }
    out
}

pub(crate) fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Pulling triangulation of a cone cell in the global lexicographic order on
/// generator vectors: cone from the least generator over the pulled
/// triangulations of the facets avoiding it.
fn triangulate_cell(gens: &[Vec<Int>]) -> Vec<Vec<Vec<Int>>> {
    let mut sorted = gens.to_vec();
    sorted.sort();
    sorted.dedup();
    let m = RatMatrix::from_int_cols(&sorted.iter().map(|g| g.as_slice()).collect::<Vec<_>>());
    let d = rank_rat(&m);
    if sorted.len() == d {
        return vec![sorted];
    }
    let w0 = sorted[0].clone();
    let mut out = Vec::new();
    for face in cell_facets(&sorted) {
        if face.iter().any(|&i| sorted[i] == w0) {
            continue;
        }
        let sub: Vec<Vec<Int>> = face.iter().map(|&i| sorted[i].clone()).collect();
        for mut simplex in triangulate_cell(&sub) {
            simplex.push(w0.clone());
            out.push(simplex);
        }
    }
    out
}

/// Builds a fan from explicit simplicial cones given by their generator
/// vectors.
fn fan_from_simplices(dim: usize, simplices: Vec<Vec<Vec<Int>>>) -> Fan {
    let mut rays: BTreeSet<Vec<Int>> = BTreeSet::new();
    for s in &simplices {
        for g in s {
            rays.insert(primitive(g));
        }
    }
    let rays: Vec<Vec<Int>> = rays.into_iter().collect();
    let cones: Vec<Vec<usize>> = simplices
        .iter()
        .map(|s| {
            s.iter()
                .map(|g| rays.binary_search(&primitive(g)).unwrap())
                .collect()
        })
        .collect();
    Fan::new(dim, rays, cones).expect("simplices form a fan")
}

//! Integer matrices and lattice algorithms: Hermite and Smith normal forms,
//! saturation, split-summand tests, basis extension and integral kernels.
//!
//! Sublattices of `Z^n` are stored via their row Hermite normal form, which
//! is a canonical representative: two sublattices are equal iff their stored
//! bases are identical matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

pub fn vec_i64(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Divides a nonzero integer vector by the gcd of its entries; the first
/// nonzero entry keeps its sign.
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    Ragged,
    DimMismatch { expected: usize, got: usize },
    NotContained,
    TorsionQuotient,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Ragged => write!(f, "rows have differing lengths"),
            LatticeError::DimMismatch { expected, got } => {
                write!(f, "expected dimension {expected}, got {got}")
            }
            LatticeError::NotContained => write!(f, "lattice is not contained in the target"),
            LatticeError::TorsionQuotient => {
                write!(f, "quotient has torsion: sublattice is not a split summand")
            }
        }
    }
}

/// Dense row-major matrix over arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Int>]) -> Result<Self, LatticeError> {
        for r in rows {
            if r.len() != cols {
                return Err(LatticeError::Ragged);
            }
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<Int>> = rows.iter().map(|r| vec_i64(r)).collect();
        IntMatrix::from_rows(cols, &data).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vec(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.at(k, j);
                    let cur = out.at(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(dst, j) + q * self.at(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, dst) + q * self.at(i, src);
            self.set(i, dst, v);
        }
    }

    /// Determinant via fraction-free (Bareiss) elimination. Panics if not square.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.clone();
        let mut prev = Int::one();
        let mut sign = false;
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                let mut found = None;
                for i in k + 1..n {
                    if !a.at(i, k).is_zero() {
                        found = Some(i);
                        break;
                    }
                }
                match found {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = !sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, Int::zero());
            }
            prev = a.at(k, k).clone();
        }
        let d = a.at(n - 1, n - 1).clone();
        if sign {
            -d
        } else {
            d
        }
    }
}

/// Row Hermite normal form. `h = u * m` with `u` unimodular; `h` is upper
/// echelon with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are collected at the bottom.
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

pub fn hnf(m: &IntMatrix) -> HnfResult {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        // Euclidean elimination below pivot_row in this column.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !h.at(i, col).is_zero() {
                    let better = match best {
                        None => true,
                        Some(b) => h.at(i, col).abs() < h.at(b, col).abs(),
                    };
                    if better {
                        best = Some(i);
                    }
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            let p = h.at(pivot_row, col).clone();
            for i in pivot_row + 1..rows {
                if !h.at(i, col).is_zero() {
                    let q = -Integer::div_floor(h.at(i, col), &p);
                    h.add_row_multiple(i, pivot_row, &q);
                    u.add_row_multiple(i, pivot_row, &q);
                    if !h.at(i, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        if h.at(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        let p = h.at(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = -Integer::div_floor(h.at(i, col), &p);
            h.add_row_multiple(i, pivot_row, &q);
            u.add_row_multiple(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    HnfResult { h, u }
}

/// Smith normal form. `d = u * m * v` with `u`, `v` unimodular; `d` is
/// diagonal with nonnegative entries and `d[i] | d[i+1]`. Inverse transforms
/// are tracked alongside.
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

pub fn snf(m: &IntMatrix) -> SnfResult {
    let mut d = m.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Row op helpers keep u_inv = u^{-1}, v_inv = v^{-1} in sync:
    // d <- E d  pairs with u <- E u, u_inv <- u_inv E^{-1};
    // d <- d E  pairs with v <- v E, v_inv <- E^{-1} v_inv.
    macro_rules! row_add {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q = $q;
            d.add_row_multiple($dst, $src, &q);
            u.add_row_multiple($dst, $src, &q);
            u_inv.add_col_multiple($src, $dst, &-q);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $q:expr) => {{
            let q = $q;
            d.add_col_multiple($dst, $src, &q);
            v.add_col_multiple($dst, $src, &q);
            v_inv.add_row_multiple($src, $dst, &-q);
        }};
    }

    let t_max = rows.min(cols);
    let mut t = 0;
    while t < t_max {
        // Find a pivot of minimal absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d.at(i, j).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => d.at(i, j).abs() < d.at(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        // Clear row and column t; restart if a remainder produces a smaller pivot.
        let mut clean = true;
        for i in t + 1..rows {
            if !d.at(i, t).is_zero() {
                let q = -Integer::div_floor(d.at(i, t), d.at(t, t));
                row_add!(i, t, q);
                if !d.at(i, t).is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !d.at(t, j).is_zero() {
                let q = -Integer::div_floor(d.at(t, j), d.at(t, t));
                col_add!(j, t, q);
                if !d.at(t, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // Ensure the pivot divides every remaining entry; if not, fold the
        // offending row in and redo this step.
        let mut offender = None;
        'search: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(d.at(i, j) % d.at(t, t)).is_zero() {
                    offender = Some(i);
                    break 'search;
                }
            }
        }
        if let Some(i) = offender {
            row_add!(t, i, Int::one());
            continue;
        }
        if d.at(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    SnfResult {
        d,
        u,
        v,
        u_inv,
        v_inv,
    }
}

/// Nonzero diagonal entries of the Smith form, in divisibility order.
pub fn elementary_divisors(m: &IntMatrix) -> Vec<Int> {
    let s = snf(m);
    let mut out = Vec::new();
    for t in 0..m.rows().min(m.cols()) {
        if s.d.at(t, t).is_zero() {
            break;
        }
        out.push(s.d.at(t, t).clone());
    }
    out
}

/// A sublattice of `Z^ambient`, stored by its row Hermite basis (no zero
/// rows). The stored basis is canonical, so `==` decides lattice equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMatrix,
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice(Z^{}, {:?})", self.ambient, self.basis)
    }
}

impl Sublattice {
    pub fn from_matrix(m: &IntMatrix) -> Self {
        let h = hnf(m).h;
        let mut rows = Vec::new();
        for i in 0..h.rows() {
            if !h.is_zero_row(i) {
                rows.push(h.row(i).to_vec());
            }
        }
        Sublattice {
            ambient: m.cols(),
            basis: IntMatrix::from_rows(m.cols(), &rows).unwrap(),
        }
    }

    pub fn from_rows(ambient: usize, rows: &[Vec<Int>]) -> Result<Self, LatticeError> {
        Ok(Sublattice::from_matrix(&IntMatrix::from_rows(
            ambient, rows,
        )?))
    }

    pub fn zero(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: IntMatrix::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Sublattice {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Integer coordinates of `v` in the stored basis, if `v` lies in the
    /// lattice. Uses back-substitution along the echelon structure.
    pub fn coords_of(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.ambient);
        let mut rem = v.to_vec();
        let mut coords = vec![Int::zero(); self.rank()];
        for i in 0..self.rank() {
            let pivot_col = (0..self.ambient)
                .find(|&j| !self.basis.at(i, j).is_zero())
                .expect("basis rows are nonzero");
            let p = self.basis.at(i, pivot_col);
            let (q, r) = rem[pivot_col].div_rem(p);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for j in 0..self.ambient {
                    rem[j] -= &q * self.basis.at(i, j);
                }
            }
            coords[i] = q;
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains_vector(&self, v: &[Int]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn contains(&self, other: &Sublattice) -> bool {
        assert_eq!(self.ambient, other.ambient);
        (0..other.rank()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    /// Smallest split summand of the ambient lattice containing this one.
    pub fn saturate(&self) -> Sublattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let s = snf(&self.basis);
        // basis = u_inv . d . v_inv, so the lattice is spanned by d . v_inv
        // rows; dividing out the elementary divisors spans the saturation.
        let rows: Vec<Vec<Int>> = (0..self.rank()).map(|i| s.v_inv.row(i).to_vec()).collect();
        Sublattice::from_rows(self.ambient, &rows).unwrap()
    }

    pub fn is_saturated(&self) -> bool {
        elementary_divisors(&self.basis).iter().all(|d| d.is_one())
    }
}

/// Given `sub ⊆ sup` with torsion-free quotient, returns a basis of `sup`
/// (as rows) whose first `sub.rank()` rows are exactly the stored basis of
/// `sub`.
pub fn extend_basis(sub: &Sublattice, sup: &Sublattice) -> Result<IntMatrix, LatticeError> {
    if sub.ambient_dim() != sup.ambient_dim() {
        return Err(LatticeError::DimMismatch {
            expected: sup.ambient_dim(),
            got: sub.ambient_dim(),
        });
    }
    let k = sub.rank();
    let kk = sup.rank();
    // Coordinates of sub's basis in sup's basis.
    let mut c_rows = Vec::with_capacity(k);
    for i in 0..k {
        match sup.coords_of(sub.basis().row(i)) {
            Some(c) => c_rows.push(c),
            None => return Err(LatticeError::NotContained),
        }
    }
    let c = IntMatrix::from_rows(kk, &c_rows)?;
    let s = snf(&c);
    for t in 0..k {
        if !s.d.at(t, t).is_one() {
            return Err(LatticeError::TorsionQuotient);
        }
    }
    // c = u_inv [I 0] v_inv, so the last rows of v_inv complete c's rows to a
    // basis of Z^kk.
    let mut out_rows: Vec<Vec<Int>> = sub.basis().row_vecs();
    for i in k..kk {
        out_rows.push(sup.basis().transpose().mul_vec(s.v_inv.row(i)));
    }
    IntMatrix::from_rows(sup.ambient_dim(), &out_rows)
}

/// The saturated lattice `{ v : m v = 0 }` (v a column vector).
pub fn kernel_lattice(m: &IntMatrix) -> Sublattice {
    let s = snf(m);
    let rank = (0..m.rows().min(m.cols()))
        .take_while(|&t| !s.d.at(t, t).is_zero())
        .count();
    let rows: Vec<Vec<Int>> = (rank..m.cols()).map(|j| s.v.col_vec(j)).collect();
    Sublattice::from_rows(m.cols(), &rows).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_unimodular_is_identity() {
        let m = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let r = hnf(&m);
        assert_eq!(r.h, IntMatrix::identity(2));
        assert_eq!(r.u.mul(&m), r.h);
        assert_eq!(r.u.det().abs(), int(1));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let m = IntMatrix::from_i64(&[&[4, 6, 2], &[2, 8, 4]]);
        let r = hnf(&m);
        assert_eq!(r.u.mul(&m), r.h);
        // echelon with positive pivots
        let p0 = (0..3).find(|&j| !r.h.at(0, j).is_zero()).unwrap();
        let p1 = (0..3).find(|&j| !r.h.at(1, j).is_zero()).unwrap();
        assert!(p0 < p1);
        assert!(r.h.at(0, p1) >= &int(0) && r.h.at(0, p1) < r.h.at(1, p1));
    }

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let s = snf(&m);
        assert_eq!(s.d, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(2));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(2));
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = IntMatrix::from_i64(&[&[6, 4, 2], &[4, 8, 6], &[2, 6, 12]]);
        let s = snf(&m);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        let divs = elementary_divisors(&m);
        for w in divs.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn saturate_index_two_sublattice() {
        let l = Sublattice::from_matrix(&IntMatrix::from_i64(&[&[1, 1], &[1, -1]]));
        assert!(!l.is_saturated());
        let s = l.saturate();
        assert_eq!(s, Sublattice::full(2));
    }

    #[test]
    fn saturate_is_idempotent_and_contains() {
        let l = Sublattice::from_matrix(&IntMatrix::from_i64(&[&[2, 4, 2], &[0, 6, 0]]));
        let s = l.saturate();
        assert!(s.contains(&l));
        assert_eq!(s.saturate(), s);
        assert_eq!(s.rank(), l.rank());
        assert!(s.is_saturated());
    }

    #[test]
    fn extend_basis_diagonal_example() {
        let sub = Sublattice::from_matrix(&IntMatrix::from_i64(&[&[1, 1]]));
        let sup = Sublattice::full(2);
        let b = extend_basis(&sub, &sup).unwrap();
        assert_eq!(b, IntMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        // rows form a basis of Z^2
        assert_eq!(b.det().abs(), int(1));
    }

    #[test]
    fn extend_basis_rejects_torsion() {
        let sub = Sublattice::from_matrix(&IntMatrix::from_i64(&[&[2, 0]]));
        let sup = Sublattice::full(2);
        assert_eq!(
            extend_basis(&sub, &sup).unwrap_err(),
            LatticeError::TorsionQuotient
        );
    }

    #[test]
    fn kernel_of_sum_functional() {
        let m = IntMatrix::from_i64(&[&[1, 1]]);
        let k = kernel_lattice(&m);
        assert_eq!(k.rank(), 1);
        let b = k.basis().row(0);
        assert_eq!(&b[0] + &b[1], int(0));
        assert_eq!(b[0].abs(), int(1));
    }

    #[test]
    fn kernel_is_saturated() {
        let m = IntMatrix::from_i64(&[&[2, 4, 6], &[0, 0, 5]]);
        let k = kernel_lattice(&m);
        assert!(k.is_saturated());
        assert_eq!(k.rank(), 1);
        for i in 0..k.rank() {
            assert!(m.mul_vec(k.basis().row(i)).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn coords_roundtrip() {
        let l = Sublattice::from_matrix(&IntMatrix::from_i64(&[&[1, 2, 3], &[0, 4, 5]]));
        let v = l.basis().transpose().mul_vec(&vec_i64(&[3, -2]));
        let c = l.coords_of(&v).unwrap();
        assert_eq!(c, vec_i64(&[3, -2]));
        assert!(!l.contains_vector(&vec_i64(&[0, 2, 2])));
    }

    #[test]
    fn primitive_keeps_sign() {
        assert_eq!(primitive(&vec_i64(&[-2, 4])), vec_i64(&[-1, 2]));
        assert_eq!(primitive(&vec_i64(&[3, 5])), vec_i64(&[3, 5]));
    }

    #[test]
    fn det_bareiss() {
        let m = IntMatrix::from_i64(&[&[2, 3, 1], &[4, 1, -3], &[0, 5, 2]]);
        assert_eq!(m.det(), int(2 * (1 * 2 - (-3) * 5) - 3 * (4 * 2 - 0) + (4 * 5)));
    }
}

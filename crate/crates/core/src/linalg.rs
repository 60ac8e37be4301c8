//! Exact rational linear algebra: dense solves and inverses, fraction-free
//! (Bareiss) rank computation, and an incremental sparse row-reduction store
//! used for degreewise ideal spans.

use crate::lattice::{IntMatrix, Int, Rat};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = RatMatrix::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, Rat::from_integer(m.at(i, j).clone()));
            }
        }
        out
    }

    /// Matrix whose columns are the given integer vectors.
    pub fn from_int_cols(cols: &[&[Int]]) -> Self {
        let rows = cols.first().map_or(0, |c| c.len());
        let mut out = RatMatrix::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                out.set(i, j, Rat::from_integer(c[i].clone()));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !a.at(i, k).is_zero())?;
            a.swap_rows(pivot, k);
            rhs.swap(pivot, k);
            let p = a.at(k, k).clone();
            for i in 0..n {
                if i == k || a.at(i, k).is_zero() {
                    continue;
                }
                let f = a.at(i, k) / &p;
                for j in k..n {
                    let v = a.at(i, j) - &f * a.at(k, j);
                    a.set(i, j, v);
                }
                rhs[i] = &rhs[i] - &f * &rhs[k];
            }
        }
        Some((0..n).map(|i| &rhs[i] / a.at(i, i)).collect())
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let pivot = (k..n).find(|&i| !a.at(i, k).is_zero())?;
            a.swap_rows(pivot, k);
            inv.swap_rows(pivot, k);
            let p = a.at(k, k).clone();
            for j in 0..n {
                let v = a.at(k, j) / &p;
                a.set(k, j, v);
                let w = inv.at(k, j) / &p;
                inv.set(k, j, w);
            }
            for i in 0..n {
                if i == k || a.at(i, k).is_zero() {
                    continue;
                }
                let f = a.at(i, k).clone();
                for j in 0..n {
                    let v = a.at(i, j) - &f * a.at(k, j);
                    a.set(i, j, v);
                    let w = inv.at(i, j) - &f * inv.at(k, j);
                    inv.set(i, j, w);
                }
            }
        }
        Some(inv)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc += self.at(i, j) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray.
pub fn primitive_int(v: &[Rat]) -> Vec<Int> {
    let mut l = Int::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    crate::lattice::primitive(&ints)
}

/// Basis of the right kernel `{ x : m x = 0 }` of a rational matrix.
pub fn kernel_rat(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a.at(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        let inv = a.at(r, c).clone().recip();
        for j in c..cols {
            let v = a.at(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i != r && !a.at(i, c).is_zero() {
                let f = a.at(i, c).clone();
                for j in c..cols {
                    let v = a.at(i, j) - &f * a.at(r, j);
                    a.set(i, j, v);
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for &(pr, pc) in &pivots {
            v[pc] = -a.at(pr, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Clears denominators row by row, producing an integer matrix with the same
/// row space.
fn clear_denominators(m: &RatMatrix) -> IntMatrix {
    let mut out = IntMatrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        let mut l = Int::one();
        for j in 0..m.cols() {
            l = l.lcm(m.at(i, j).denom());
        }
        for j in 0..m.cols() {
            let e = m.at(i, j);
            out.set(i, j, e.numer() * (&l / e.denom()));
        }
    }
    out
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination with
/// row and column pivoting.
pub fn rank_int(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut prev = Int::one();
    let mut r = 0;
    let mut c = 0;
    while r < rows && c < cols {
        // In the first nonzero column, pick the entry of smallest absolute
        // value as pivot to limit growth.
        let mut pivot: Option<(usize, usize)> = None;
        for j in c..cols {
            for i in r..rows {
                if !a.at(i, j).is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => a.at(i, j).abs() < a.at(pi, pj).abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
            if pivot.is_some() {
                break;
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows_pub(r, pi);
        c = pj;
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (a.at(i, j) * a.at(r, c) - a.at(i, c) * a.at(r, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, c, Int::zero());
        }
        prev = a.at(r, c).clone();
        r += 1;
        c += 1;
    }
    r
}

impl IntMatrix {
    fn swap_rows_pub(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols();
        for j in 0..cols {
            let x = self.at(a, j).clone();
            let y = self.at(b, j).clone();
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }
}

pub fn rank_rat(m: &RatMatrix) -> usize {
    rank_int(&clear_denominators(m))
}

/// Sparse row with entries sorted by column index; no zero coefficients.
pub type SparseRow = Vec<(usize, Rat)>;

pub fn sparse_from_map(map: BTreeMap<usize, Rat>) -> SparseRow {
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Incremental reduced row-echelon store over the rationals. Stored rows are
/// fully inter-reduced with unit pivots; pivot columns never collide.
pub struct RowSpan {
    rows: BTreeMap<usize, SparseRow>,
}

impl RowSpan {
    pub fn new() -> Self {
        RowSpan {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Fully reduces `row` against the stored rows.
    pub fn reduce(&self, row: SparseRow) -> SparseRow {
        let mut work: BTreeMap<usize, Rat> = row.into_iter().collect();
        let mut out: Vec<(usize, Rat)> = Vec::new();
        while let Some((&col, _)) = work.iter().next() {
            let coeff = work.remove(&col).unwrap();
            if coeff.is_zero() {
                continue;
            }
            match self.rows.get(&col) {
                Some(r) => {
                    // r has unit pivot at `col`; subtract coeff * r.
                    for (c, v) in r.iter().skip(1) {
                        let e = work.entry(*c).or_insert_with(Rat::zero);
                        *e -= &coeff * v;
                        if e.is_zero() {
                            work.remove(c);
                        }
                    }
                }
                None => out.push((col, coeff)),
            }
        }
        out
    }

    /// Reduces and inserts; returns true if the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut red = self.reduce(row);
        if red.is_empty() {
            return false;
        }
        let inv = red[0].1.clone().recip();
        for (_, v) in red.iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = red[0].0;
        // Back-substitute into existing rows to keep the store fully reduced.
        for r in self.rows.values_mut() {
            if let Some(pos) = r.iter().position(|(c, _)| *c == pivot) {
                let f = r[pos].1.clone();
                let mut map: BTreeMap<usize, Rat> = r.drain(..).collect();
                for (c, v) in &red {
                    let e = map.entry(*c).or_insert_with(Rat::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        map.remove(c);
                    }
                }
                *r = sparse_from_map(map);
            }
        }
        self.rows.insert(pivot, red);
        true
    }
}

impl Default for RowSpan {
    fn default() -> Self {
        RowSpan::new()
    }
}

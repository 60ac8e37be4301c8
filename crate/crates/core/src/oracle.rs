//! Independent ground-truth generators, used only by tests and the verify
//! suite. Everything here comes from external literature or elementary
//! topology, not from the model construction: a bug here can fail a test
//! but never corrupt a computed result. The core pipeline never calls in.

use crate::arrangement::{decompose_system, Arrangement, ArrangementError};
use crate::fan::Fan;
use crate::lattice::{Int, IntMatrix, Rat};
use crate::linalg::rank_int;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// The divisorial oracle only covers arrangements all of whose layers
    /// have rank-one character lattice.
    NotDivisorial,
    /// The computed polynomial failed its own validity conditions
    /// (nonnegative integer coefficients, constant term one).
    SelfCheckFailed,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NotDivisorial => {
                write!(f, "oracle requires all layers to be divisorial (rank-one lattice)")
            }
            OracleError::SelfCheckFailed => {
                write!(f, "oracle output failed its validity check")
            }
        }
    }
}

/// Dense integer polynomial, ascending powers.
pub type IntPoly = Vec<Int>;

pub fn poly_mul(a: &[Int], b: &[Int]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_add(a: &[Int], b: &[Int]) -> IntPoly {
    let mut out = vec![Int::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

fn poly_scale(a: &[Int], c: &Int) -> IntPoly {
    a.iter().map(|x| x * c).collect()
}

fn poly_pow(a: &[Int], k: usize) -> IntPoly {
    let mut out = vec![Int::one()];
    for _ in 0..k {
        out = poly_mul(&out, a);
    }
    out
}

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && p.last().map(|x| x.is_zero()) == Some(true) {
        p.pop();
    }
    p
}

/// Betti numbers of a smooth complete toric variety from the h-vector of
/// its fan: h_k in degree 2k, zero in odd degrees.
pub fn h_vector_betti(fan: &Fan) -> Vec<usize> {
    let h = fan.h_vector();
    let n = fan.dim();
    let mut out = vec![0usize; 2 * n + 1];
    for (k, v) in h.iter().enumerate() {
        out[2 * k] = *v;
    }
    out
}

/// Poincaré polynomial of a product: the product of the factors.
pub fn kunneth(factors: &[IntPoly]) -> IntPoly {
    let mut out = vec![Int::one()];
    for f in factors {
        out = poly_mul(&out, f);
    }
    trim(out)
}

/// Betti numbers of the n-torus minus one point, from the long exact
/// sequence of the pair with a ball around the point.
pub fn punctured_torus_betti(n: usize) -> Vec<usize> {
    assert!(n >= 1);
    let mut out = vec![0usize; 2 * n + 1];
    for (k, o) in out.iter_mut().enumerate().take(2 * n - 1) {
        *o = if k <= n { binom(n, k) } else { 0 };
    }
    out[2 * n - 1] = if 2 * n - 1 <= n { binom(n, 2 * n - 1) + 1 } else { 1 };
    out
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k.min(n - k) {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}

/// The ground set of a divisorial arrangement: one (character, phase) pair
/// per layer. Rejects layers of rank other than one.
pub fn divisorial_ground(arr: &Arrangement) -> Result<Vec<(Vec<Int>, Rat)>, OracleError> {
    let mut out = Vec::new();
    for l in arr.layers() {
        if l.rank() != 1 {
            return Err(OracleError::NotDivisorial);
        }
        let chi = l.gamma().basis().row(0).to_vec();
        let phase = l.phase()[0].clone();
        out.push((chi, phase));
    }
    Ok(out)
}

/// Number of connected components of the intersection over an index set;
/// zero when the phase system is inconsistent.
fn multiplicity(dim: usize, ground: &[(Vec<Int>, Rat)], subset: &[usize]) -> usize {
    if subset.is_empty() {
        return 1;
    }
    let rows: Vec<Vec<Int>> = subset.iter().map(|&i| ground[i].0.clone()).collect();
    let phases: Vec<Rat> = subset.iter().map(|&i| ground[i].1.clone()).collect();
    let chars = IntMatrix::from_rows(dim, &rows).expect("ground rows");
    match decompose_system(&chars, &phases) {
        Ok(layers) => layers.len(),
        Err(ArrangementError::Inconsistent) => 0,
        Err(e) => panic!("unexpected decomposition failure: {e}"),
    }
}

fn subset_rank(dim: usize, ground: &[(Vec<Int>, Rat)], subset: &[usize]) -> usize {
    if subset.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Int>> = subset.iter().map(|&i| ground[i].0.clone()).collect();
    rank_int(&IntMatrix::from_rows(dim, &rows).expect("ground rows"))
}

/// The arithmetic Tutte polynomial `M(x, y)` of a divisorial arrangement:
/// sum over subsets of `m(S)(x-1)^(r-r(S))(y-1)^(|S|-r(S))`, with the
/// multiplicity counting connected components of the actual intersection.
/// Returned as `coeff[i][j]` of `x^i y^j`.
pub fn arithmetic_tutte(arr: &Arrangement) -> Result<Vec<Vec<Int>>, OracleError> {
    let ground = divisorial_ground(arr)?;
    let dim = arr.dim();
    let g = ground.len();
    let all: Vec<usize> = (0..g).collect();
    let r = subset_rank(dim, &ground, &all);
    // accumulate in the (x-1, y-1) basis, then shift
    let mut shifted = vec![vec![Int::zero(); g + 1]; r + 1];
    for mask in 0u64..(1 << g) {
        let subset: Vec<usize> = (0..g).filter(|&i| mask >> i & 1 == 1).collect();
        let m = multiplicity(dim, &ground, &subset);
        if m == 0 {
            continue;
        }
        let rs = subset_rank(dim, &ground, &subset);
        shifted[r - rs][subset.len() - rs] += Int::from(m as i64);
    }
    // expand (x-1)^a (y-1)^b
    let xm1 = vec![-Int::one(), Int::one()];
    let mut out = vec![vec![Int::zero(); g + 1]; r + 1];
    for (a, row) in shifted.iter().enumerate() {
        let xa = poly_pow(&xm1, a);
        for (b, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let yb = poly_pow(&xm1, b);
            for (i, xi) in xa.iter().enumerate() {
                for (j, yj) in yb.iter().enumerate() {
                    out[i][j] += c * xi * yj;
                }
            }
        }
    }
    Ok(out)
}

/// Poincaré polynomial of the complement of a divisorial arrangement:
/// `sum over S of m(S)(-1)^(|S|-r(S))(q+1)^(n-r(S))q^(r(S))`. This is the
/// Tutte specialization `q^r M((2q+1)/q, 0)` times `(1+q)^(n-r)`, the
/// normalization fixed by agreement with the Künneth oracle on split
/// cases. Output validated: nonnegative coefficients, constant term one.
pub fn poincare_divisorial(arr: &Arrangement) -> Result<IntPoly, OracleError> {
    let ground = divisorial_ground(arr)?;
    let dim = arr.dim();
    let g = ground.len();
    let qp1 = vec![Int::one(), Int::one()];
    let mut acc: IntPoly = Vec::new();
    for mask in 0u64..(1 << g) {
        let subset: Vec<usize> = (0..g).filter(|&i| mask >> i & 1 == 1).collect();
        let m = multiplicity(dim, &ground, &subset);
        if m == 0 {
            continue;
        }
        let rs = subset_rank(dim, &ground, &subset);
        let sign = if (subset.len() - rs) % 2 == 0 {
            Int::from(m as i64)
        } else {
            -Int::from(m as i64)
        };
        let mut term = poly_scale(&poly_pow(&qp1, dim - rs), &sign);
        // shift by q^{r(S)}
        let mut shiftv = vec![Int::zero(); rs];
        shiftv.push(Int::one());
        term = poly_mul(&term, &shiftv);
        acc = poly_add(&acc, &term);
    }
    let acc = trim(acc);
    if acc.is_empty() || !acc[0].is_one() || acc.iter().any(|c| c.is_negative()) {
        return Err(OracleError::SelfCheckFailed);
    }
    Ok(acc)
}

/// Betti vector (length 2n+1) from a Poincaré polynomial.
pub fn poly_to_betti(p: &[Int], n: usize) -> Vec<usize> {
    let mut out = vec![0usize; 2 * n + 1];
    for (k, c) in p.iter().enumerate() {
        assert!(!c.is_negative() && k <= 2 * n);
        let mut v = 0usize;
        let mut acc = Int::zero();
        while &acc < c {
            acc += 1;
            v += 1;
        }
        out[k] = v;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Layer;
    use crate::lattice::{int, rat, vec_i64};

    fn divisorial(dim: usize, rows: &[(&[i64], (i64, i64))]) -> Arrangement {
        let layers: Vec<Layer> = rows
            .iter()
            .map(|(chi, (p, q))| {
                Layer::new(dim, &[vec_i64(chi)], &[rat(*p, *q)]).unwrap()
            })
            .collect();
        Arrangement::new(dim, layers).unwrap()
    }

    fn ip(cs: &[i64]) -> IntPoly {
        cs.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn h_vector_betti_examples() {
        assert_eq!(h_vector_betti(&Fan::projective_line()), vec![1, 0, 1]);
        assert_eq!(h_vector_betti(&Fan::projective_space(2)), vec![1, 0, 1, 0, 1]);
        let p1p1 = Fan::product(&Fan::projective_line(), &Fan::projective_line());
        assert_eq!(h_vector_betti(&p1p1), vec![1, 0, 2, 0, 1]);
    }

    #[test]
    fn kunneth_examples() {
        assert_eq!(kunneth(&[ip(&[1, 2]), ip(&[1, 1])]), ip(&[1, 3, 2]));
        assert_eq!(kunneth(&[ip(&[1, 1]), ip(&[1, 1])]), ip(&[1, 2, 1]));
        assert_eq!(kunneth(&[ip(&[1, 2]), ip(&[1, 2])]), ip(&[1, 4, 4]));
        assert_eq!(kunneth(&[]), ip(&[1]));
    }

    #[test]
    fn punctured_torus_examples() {
        assert_eq!(punctured_torus_betti(1), vec![1, 2, 0]);
        assert_eq!(punctured_torus_betti(2), vec![1, 2, 1, 1, 0]);
        assert_eq!(punctured_torus_betti(3), vec![1, 3, 3, 1, 0, 1, 0]);
    }

    #[test]
    fn tutte_single_point() {
        // M = x
        let arr = divisorial(1, &[(&[1], (0, 1))]);
        let m = arithmetic_tutte(&arr).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m[0].iter().all(|c| c.is_zero()));
        assert_eq!(m[1][0], int(1));
        assert!(m[1][1..].iter().all(|c| c.is_zero()));
        assert_eq!(poincare_divisorial(&arr).unwrap(), ip(&[1, 2]));
    }

    #[test]
    fn tutte_two_points() {
        // {t=1}, {t=-1}: M = x + 1, Poincare 1 + 3q
        let arr = divisorial(1, &[(&[1], (0, 1)), (&[1], (1, 2))]);
        let m = arithmetic_tutte(&arr).unwrap();
        assert_eq!(m[0][0], int(1));
        assert_eq!(m[1][0], int(1));
        assert_eq!(poincare_divisorial(&arr).unwrap(), ip(&[1, 3]));
    }

    #[test]
    fn torsion_divisor_multiplicity() {
        // {t^2 = 1} is two points: Poincare 1 + 3q again, via m = 2
        let arr = divisorial(1, &[(&[1], (0, 1)), (&[1], (1, 2))]);
        let p1 = poincare_divisorial(&arr).unwrap();
        assert_eq!(p1, ip(&[1, 3]));
    }

    #[test]
    fn divisor_in_two_torus_matches_kunneth() {
        let arr = divisorial(2, &[(&[1, 0], (0, 1))]);
        assert_eq!(poincare_divisorial(&arr).unwrap(), ip(&[1, 3, 2]));
        assert_eq!(
            poincare_divisorial(&arr).unwrap(),
            kunneth(&[ip(&[1, 2]), ip(&[1, 1])])
        );
    }

    #[test]
    fn two_coordinate_divisors_match_kunneth() {
        let arr = divisorial(2, &[(&[1, 0], (0, 1)), (&[0, 1], (0, 1))]);
        assert_eq!(poincare_divisorial(&arr).unwrap(), ip(&[1, 4, 4]));
    }

    #[test]
    fn three_divisors_closed_form() {
        let arr = divisorial(
            2,
            &[(&[1, 0], (0, 1)), (&[0, 1], (0, 1)), (&[1, 1], (0, 1))],
        );
        assert_eq!(poincare_divisorial(&arr).unwrap(), ip(&[1, 5, 6]));
    }

    #[test]
    fn non_divisorial_rejected() {
        let point = Layer::new(2, &[vec_i64(&[1, 0]), vec_i64(&[0, 1])], &[rat(0, 1), rat(0, 1)])
            .unwrap();
        let arr = Arrangement::new(2, vec![point]).unwrap();
        assert_eq!(
            poincare_divisorial(&arr).unwrap_err(),
            OracleError::NotDivisorial
        );
    }

    #[test]
    fn betti_from_poly() {
        assert_eq!(poly_to_betti(&ip(&[1, 3, 2]), 2), vec![1, 3, 2, 0, 0]);
    }
}

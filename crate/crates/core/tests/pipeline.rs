//! Public-API integration tests: from arrangement input all the way to
//! Betti numbers, cross-checked against the closed-form oracles.

use torarr_core::arrangement::{
    decompose_system, saturate_arrangement, Arrangement, CombinatorialData, Layer,
};
use torarr_core::fan::Fan;
use torarr_core::lattice::{Int, IntMatrix, Rat};
use torarr_core::morgan::{
    betti, betti_numbers, build_compatible_fan, build_compatible_fan_with, build_model,
    equal_sign_bases, morgan_direct, phi_map,
};
use torarr_core::oracle::{kunneth, poincare_divisorial, poly_to_betti, IntPoly};

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

fn divisor(dim: usize, chi: &[i64], phase: Rat) -> Layer {
    Layer::new(dim, &[ints(chi)], &[phase]).unwrap()
}

fn data_of(arr: &Arrangement) -> CombinatorialData {
    saturate_arrangement(arr).combinatorial_data()
}

fn poly(cs: &[i64]) -> IntPoly {
    ints(cs)
}

#[test]
fn cylinder_times_punctured_line_betti() {
    // {t1 = 1} in the 2-torus: complement is (C* minus a point) x C*
    let arr = Arrangement::new(2, vec![divisor(2, &[1, 0], rat(0, 1))]).unwrap();
    let b = betti_numbers(&data_of(&arr)).unwrap();
    let expected = poly_to_betti(&kunneth(&[poly(&[1, 2]), poly(&[1, 1])]), 2);
    assert_eq!(b, expected);
}

#[test]
fn torsion_equation_decomposes_then_computes() {
    // t1^2 = 1 in the 2-torus is not a layer; its decomposition is the pair
    // of divisors t1 = 1 and t1 = -1, and the complement is
    // (C* minus two points) x C*
    let chars = IntMatrix::from_rows(2, &[ints(&[2, 0])]).unwrap();
    let layers = decompose_system(&chars, &[rat(0, 1)]).unwrap();
    assert_eq!(layers.len(), 2);
    let arr = Arrangement::new(2, layers).unwrap();
    let b = betti_numbers(&data_of(&arr)).unwrap();
    let expected = poly_to_betti(&kunneth(&[poly(&[1, 3]), poly(&[1, 1])]), 2);
    assert_eq!(b, expected);
}

#[test]
fn coordinate_divisors_match_the_tutte_oracle() {
    let arr = Arrangement::new(
        2,
        vec![
            divisor(2, &[1, 0], rat(0, 1)),
            divisor(2, &[0, 1], rat(0, 1)),
            divisor(2, &[1, 1], rat(1, 2)),
        ],
    )
    .unwrap();
    let b = betti_numbers(&data_of(&arr)).unwrap();
    let p = poincare_divisorial(&arr).unwrap();
    assert_eq!(b, poly_to_betti(&p, 2));
}

#[test]
fn nested_chain_in_the_three_torus() {
    // divisor {t1=1} containing the line {t1=t2=1} containing the point
    // (1,1,1): the union is just the divisor, so the complement is
    // (C* minus a point) x (C*)^2
    let e = |k: usize| {
        let mut row = vec![0i64; 3];
        row[k] = 1;
        row
    };
    let arr = Arrangement::new(
        3,
        vec![
            divisor(3, &e(0), rat(0, 1)),
            Layer::new(3, &[ints(&e(0)), ints(&e(1))], &[rat(0, 1), rat(0, 1)]).unwrap(),
            Layer::new(
                3,
                &[ints(&e(0)), ints(&e(1)), ints(&e(2))],
                &[rat(0, 1), rat(0, 1), rat(0, 1)],
            )
            .unwrap(),
        ],
    )
    .unwrap();
    let data = data_of(&arr);
    let b = betti_numbers(&data).unwrap();
    let expected = poly_to_betti(
        &kunneth(&[poly(&[1, 2]), poly(&[1, 1]), poly(&[1, 1])]),
        3,
    );
    assert_eq!(b, expected);

    // the graded model itself decomposes as the stratum direct sum
    let cf = build_compatible_fan(&data).unwrap();
    let model = build_model(&cf, &data).unwrap();
    assert_eq!(&model.dga.dims()[..=6], &morgan_direct(&cf, &data).unwrap()[..]);
}

#[test]
fn comparison_map_connects_two_fan_choices() {
    // same arrangement over the standard fan and over a subdivision of it:
    // the induced map matches cohomology dimension for dimension
    let arr = Arrangement::new(
        2,
        vec![
            divisor(2, &[1, 0], rat(0, 1)),
            divisor(2, &[0, 1], rat(0, 1)),
        ],
    )
    .unwrap();
    let data = data_of(&arr);
    let cf = build_compatible_fan(&data).unwrap();
    let fine_fan = cf.fan.stellar_subdivide(&ints(&[1, 1])).unwrap();
    let fine = build_compatible_fan_with(&data, cf.pair_bases.clone(), &fine_fan).unwrap();
    let coarse_model = build_model(&cf, &data).unwrap();
    let fine_model = build_model(&fine, &data).unwrap();
    let phi = phi_map(&cf, &fine, &data).unwrap();
    assert!(phi.is_chain_map(&coarse_model.dga, &fine_model.dga));
    assert!(phi.is_quasi_iso(&coarse_model.dga, &fine_model.dga, 4));
    assert_eq!(betti(&coarse_model), betti(&fine_model));
}

#[test]
fn projective_seed_gives_the_same_betti_table() {
    let arr = Arrangement::new(
        2,
        vec![divisor(2, &[1, 0], rat(0, 1)), divisor(2, &[1, 1], rat(0, 1))],
    )
    .unwrap();
    let data = data_of(&arr);
    let standard = betti_numbers(&data).unwrap();
    let bases = equal_sign_bases(&data).unwrap();
    let cf = build_compatible_fan_with(&data, bases, &Fan::projective_space(2)).unwrap();
    let model = build_model(&cf, &data).unwrap();
    assert_eq!(betti(&model), standard);
}

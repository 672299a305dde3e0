use lcdcodes::galois::{make_field, Elem, FieldError, FieldRef};
use lcdcodes::linalg::{
    char_poly_value, dickson_eval, eigen_spectrum, spectrum_context, DensePolynomial, MatrixOverField, SpectrumError,
    TridiagKind, TridiagonalSpec,
};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = FieldRef> {
    prop::sample::select(vec![(2u32, 1u32), (3, 1), (2, 2), (5, 1), (3, 2)]).prop_map(|(p, m)| make_field(p, m).unwrap())
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = MatrixOverField> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| sized_matrix(r, c, max))
}

fn square_strategy(max: usize) -> impl Strategy<Value = MatrixOverField> {
    (1..=max).prop_flat_map(move |n| sized_matrix(n, n, max))
}

fn sized_matrix(r: usize, c: usize, max: usize) -> impl Strategy<Value = MatrixOverField> {
    (field_strategy(), prop::collection::vec(any::<u32>(), max * max)).prop_map(
        move |(f, raw)| {
            let rows = (0..r).map(|i| (0..c).map(|j| raw[i * c + j] % f.order()).collect()).collect();
            MatrixOverField::from_rows(&f, rows).unwrap()
        },
    )
}

/// Determinant by Laplace expansion along the first row.
fn laplace(m: &MatrixOverField) -> Elem {
    let f = m.field();
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0);
    }
    let mut acc = 0;
    for j in 0..n {
        let minor: Vec<Vec<Elem>> =
            (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c)).collect()).collect();
        let term = f.mul(m.get(0, j), laplace(&MatrixOverField::from_rows(f, minor).unwrap()));
        acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn determinant_matches_laplace(m in square_strategy(5)) {
        prop_assert_eq!(m.det().unwrap(), laplace(&m));
    }

    #[test]
    fn rank_nullity(m in matrix_strategy(6)) {
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.rows(), m.cols());
        if ns.rows() > 0 {
            prop_assert!(m.mul(&ns.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn rref_preserves_row_space(m in matrix_strategy(6)) {
        let (r, pivots) = m.rref();
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(m.vconcat(&r).unwrap().rank(), m.rank());
    }

    #[test]
    fn transpose_reverses_products(a in matrix_strategy(4), seed in any::<u64>()) {
        let f = a.field().clone();
        let k = (seed % 4) as usize + 1;
        let rows = (0..a.cols()).map(|i| (0..k).map(|j| ((seed >> (i + j)) as u32) % f.order()).collect()).collect();
        let b = MatrixOverField::from_rows(&f, rows).unwrap();
        prop_assert_eq!(a.mul(&b).unwrap().transpose(), b.transpose().mul(&a.transpose()).unwrap());
    }

    #[test]
    fn polynomial_evaluation_is_a_ring_map(f in field_strategy(), c1 in prop::collection::vec(any::<u32>(), 0..5),
                                           c2 in prop::collection::vec(any::<u32>(), 0..5), x in any::<u32>()) {
        let q = f.order();
        let p1 = DensePolynomial::new(&f, c1.iter().map(|c| c % q).collect());
        let p2 = DensePolynomial::new(&f, c2.iter().map(|c| c % q).collect());
        let x = x % q;
        prop_assert_eq!(p1.add(&p2).eval(x), f.add(p1.eval(x), p2.eval(x)));
        prop_assert_eq!(p1.mul(&p2).eval(x), f.mul(p1.eval(x), p2.eval(x)));
    }
}

#[test]
fn dickson_recurrence_and_tridiagonal_determinant() {
    // E_n(x, alpha) = det of T_n(x, b, c) with bc = alpha
    for (p, m) in [(2, 2), (3, 1), (5, 1)] {
        let f = make_field(p, m).unwrap();
        for x in f.elements() {
            for b in f.nonzero() {
                for c in f.nonzero() {
                    let alpha = f.mul(b, c);
                    for n in 1..=6 {
                        let t = TridiagonalSpec::new(&f, TridiagKind::T, n, x, b, c).build();
                        assert_eq!(dickson_eval(&f, n, x, alpha), t.det().unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn tprime_shape() {
    let f = make_field(3, 1).unwrap();
    let t = TridiagonalSpec::new(&f, TridiagKind::TPrime, 5, 1, 2, 2).build();
    for i in 0..5 {
        for j in 0..5 {
            let expected = if i == j {
                1
            } else if usize::abs_diff(i, j) == 2 {
                2
            } else {
                0
            };
            assert_eq!(t.get(i, j), expected, "({i},{j})");
        }
    }
    assert_eq!(TridiagonalSpec::new(&f, TridiagKind::TPrime, 5, 1, 2, 2).blocks(), vec![3, 2]);
}

#[test]
fn spectrum_multiplicities_sum_to_n() {
    for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)] {
        let f = make_field(p, m).unwrap();
        for n in 1..=10 {
            for kind in [TridiagKind::T, TridiagKind::TPrime] {
                let spec = TridiagonalSpec::new(&f, kind, n, 1, f.generator(), 1);
                let sp = match eigen_spectrum(&spec) {
                    Ok(sp) => sp,
                    Err(SpectrumError::Field(FieldError::TooLarge { .. })) => continue,
                    Err(e) => panic!("{e}"),
                };
                assert_eq!(sp.total_multiplicity(), n);
                for &(l, _) in &sp.pairs {
                    assert_eq!(char_poly_value(&spec, &sp.ctx, l), 0);
                }
            }
        }
    }
}

#[test]
fn small_spectra() {
    let f = make_field(2, 1).unwrap();
    let sp = eigen_spectrum(&TridiagonalSpec::symmetric(&f, 3, 1, 1)).unwrap();
    assert_eq!(sp.pairs, vec![(1, 3)]);
    let sp = eigen_spectrum(&TridiagonalSpec::symmetric(&f, 1, 1, 1)).unwrap();
    assert_eq!(sp.pairs, vec![(1, 1)]);
    let spec = TridiagonalSpec::new(&f, TridiagKind::TPrime, 5, 1, 1, 1);
    let sp = eigen_spectrum(&spec).unwrap();
    assert_eq!(sp.multiplicity_of(1), 3);
    assert_eq!(sp.multiplicity_of(0), 2);
}

#[test]
fn degenerate_product_is_rejected() {
    let f = make_field(3, 1).unwrap();
    let spec = TridiagonalSpec::new(&f, TridiagKind::T, 4, 1, 0, 1);
    assert!(matches!(eigen_spectrum(&spec), Err(SpectrumError::DegenerateProduct)));
    assert!(spectrum_context(&TridiagonalSpec::symmetric(&f, 4, 1, 1), Default::default()).is_ok());
}

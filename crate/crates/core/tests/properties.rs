use edsx_core::exterior::MultiIndex;
use edsx_core::rep::act_on_form;
use edsx_core::{Form, Matrix, Rational, Scalar};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((0u8..16, -7i64..=7, 1i64..=4), 0..=3).prop_map(|parts| {
        parts.into_iter().fold(Scalar::zero(), |acc, (m, num, den)| {
            acc + Scalar::term(m, Rational::new(num, den).unwrap())
        })
    })
}

/// A homogeneous form of degree `p` in dimension `n` with rational-or-radical coefficients.
fn form(n: usize, p: usize) -> impl Strategy<Value = Form> {
    let indices = MultiIndex::all_of_degree(n, p);
    prop::collection::vec((0..indices.len(), 0u8..4, -5i64..=5), 0..=4).prop_map(move |terms| {
        let mut f = Form::zero(n);
        for (i, m, c) in terms {
            f.add_term(indices[i], Scalar::term(m, Rational::from_int(c)));
        }
        f
    })
}

fn dims_and_degrees() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=6).prop_flat_map(|n| (Just(n), 0..=n, 0..=n))
}

proptest! {
    #[test]
    fn scalar_literal_round_trips(x in scalar()) {
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn conjugation_is_a_field_automorphism(x in scalar(), y in scalar(), mask in 0u8..16) {
        prop_assert_eq!((&x * &y).conjugate(mask), &x.conjugate(mask) * &y.conjugate(mask));
        prop_assert_eq!(x.conjugate(mask).conjugate(mask), x);
    }

    #[test]
    fn form_literal_round_trips(
        f in dims_and_degrees().prop_flat_map(|(n, p, _)| form(n, p))
    ) {
        let s = f.to_string();
        let back = Form::parse(f.dim(), &s);
        prop_assert!(back.is_ok(), "{s}: {back:?}");
        prop_assert_eq!(back.unwrap(), f);
    }

    #[test]
    fn wedge_is_graded_commutative(
        (a, b, sign) in dims_and_degrees().prop_flat_map(|(n, p, q)| {
            (form(n, p), form(n, q), Just((p * q) % 2 == 1))
        })
    ) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab, if sign { ba.neg() } else { ba });
    }

    #[test]
    fn wedge_is_associative(
        (a, b, c) in (1usize..=6).prop_flat_map(|n| (0..=n, 0..=n, 0..=n).prop_flat_map(move |(p, q, r)| {
            (form(n, p), form(n, q), form(n, r))
        }))
    ) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn contraction_is_nilpotent(
        (a, v) in (1usize..=6).prop_flat_map(|n| {
            (0..=n).prop_flat_map(move |p| (form(n, p), prop::collection::vec(-3i64..=3, n)))
        })
    ) {
        let v: Vec<Scalar> = v.into_iter().map(Scalar::from_int).collect();
        prop_assert!(a.contract(&v).unwrap().contract(&v).unwrap().is_zero());
    }

    #[test]
    fn hodge_pairing_is_the_inner_product(
        (n, a) in (1usize..=6).prop_flat_map(|n| (Just(n), (0..=n).prop_flat_map(move |p| form(n, p))))
    ) {
        let top = a.wedge(&a.hodge_star().unwrap()).unwrap();
        let all: Vec<usize> = (1..=n).collect();
        let volume = Form::basis(n, &all).unwrap();
        prop_assert_eq!(top, volume.scale(&a.inner(&a)));
    }

    #[test]
    fn action_is_a_lie_homomorphism(
        (a, x, y) in (2usize..=5).prop_flat_map(|n| {
            (
                (0..=n).prop_flat_map(move |p| form(n, p)),
                prop::collection::vec(-2i64..=2, n * n),
                prop::collection::vec(-2i64..=2, n * n),
            )
        })
    ) {
        let n = a.dim();
        let x = Matrix::from_ints(n, n, &x);
        let y = Matrix::from_ints(n, n, &y);
        let xy = act_on_form(&x, &act_on_form(&y, &a).unwrap()).unwrap();
        let yx = act_on_form(&y, &act_on_form(&x, &a).unwrap()).unwrap();
        let bracket = act_on_form(&x.bracket(&y).unwrap(), &a).unwrap();
        prop_assert_eq!(xy.sub(&yx).unwrap(), bracket);
    }

    #[test]
    fn kernel_has_complementary_dimension(entries in prop::collection::vec(-3i64..=3, 20), cols in 1usize..=5) {
        let rows = 20 / cols;
        let m = Matrix::from_ints(rows, cols, &entries[..rows * cols]);
        let kernel = m.kernel();
        prop_assert_eq!(kernel.len() + m.rank(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }
}

//! Randomized property tests for the scalar tower, linear algebra kernel,
//! exterior algebra and model brackets.

use e8alg::exterior::Wedge;
use e8alg::scalar::{Field, Mat, Qi, Z24};
use e8alg::wedge;
use proptest::prelude::*;

fn qi_strategy() -> impl Strategy<Value = Qi> {
    (-20i64..=20, 1i64..=12, -20i64..=20, 1i64..=12).prop_map(|(a, b, c, d)| {
        Qi::new(e8alg::scalar::ratio(a, b), e8alg::scalar::ratio(c, d))
    })
}

fn z24_strategy() -> impl Strategy<Value = Z24> {
    (prop::collection::vec(-5i64..=5, 8), 1i64..=6).prop_map(|(cs, den)| {
        let mut acc = Z24::zero();
        for (k, c) in cs.iter().enumerate() {
            let term = Z24::zeta_pow(k as i64).mul(&Z24::from_rat(&e8alg::scalar::ratio(*c, den)));
            acc = acc.add(&term);
        }
        acc
    })
}

fn small_mat(rows: usize, cols: usize) -> impl Strategy<Value = Mat<Qi>> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        Mat::from_fn(rows, cols, |i, j| Qi::from_int(v[i * cols + j]))
    })
}

fn wedge3() -> impl Strategy<Value = Wedge<Qi>> {
    prop::collection::vec((0usize..84, -3i64..=3), 1..5).prop_map(|terms| {
        let mut w: Wedge<Qi> = Wedge::zero(3);
        for (idx, c) in terms {
            w.c[idx] = w.c[idx].add(&Qi::from_int(c));
        }
        w
    })
}

fn wedge_el() -> impl Strategy<Value = wedge::El<Qi>> {
    prop::collection::vec((0usize..wedge::DIM, -2i64..=2), 1..6).prop_map(|terms| {
        let mut coords = vec![Qi::zero(); wedge::DIM];
        for (idx, c) in terms {
            coords[idx] = coords[idx].add(&Qi::from_int(c));
        }
        wedge::from_coords(&coords)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn qi_field_axioms(a in qi_strategy(), b in qi_strategy(), c in qi_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), Qi::zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), Qi::one());
        }
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn z24_field_axioms(a in z24_strategy(), b in z24_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), Z24::one());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        // Literal round trip is exact.
        prop_assert_eq!(Z24::parse_literal(&a.literal()).unwrap(), a);
    }

    #[test]
    fn rank_plus_nullity(m in small_mat(5, 7)) {
        let rank = m.rank_exact();
        let null = m.null_space();
        prop_assert_eq!(rank + null.len(), 7);
        for v in &null {
            let mv = m.mul_vec(v);
            prop_assert!(mv.iter().all(Field::is_zero));
        }
    }

    #[test]
    fn wedge_graded_anticommutativity(u in wedge3(), v in wedge3()) {
        // Odd degrees anticommute: u ^ v = -(v ^ u) for degree 3.
        prop_assert_eq!(u.wedge(&v), v.wedge(&u).neg());
        prop_assert_eq!(u.wedge(&u).is_zero(), true);
    }

    #[test]
    fn bracket_bilinear_antisymmetric(a in wedge_el(), b in wedge_el()) {
        let ab = wedge::bracket(&a, &b);
        let ba = wedge::bracket(&b, &a);
        prop_assert!(ab.add(&ba).is_zero());
        // Bilinearity in the first slot against a fixed basis element.
        let e: wedge::El<Qi> = wedge::basis_element(5);
        let lhs = wedge::bracket(&a.add(&e), &b);
        let rhs = ab.add(&wedge::bracket(&e, &b));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn killing_symmetric(a in wedge_el(), b in wedge_el()) {
        prop_assert_eq!(wedge::killing(&a, &b), wedge::killing(&b, &a));
    }
}

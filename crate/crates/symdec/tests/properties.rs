//! Randomized invariants for the polynomial operators and decompositions.

use proptest::prelude::*;

use symdec::decompose::{
    decompose_i, decompose_r, f_transform, is_alternatingly_increasing, is_symmetric,
};
use symdec::families::{derangement, eulerian};
use symdec::operators::{deranged_d, diamond, subdivision_e, subdivision_e_inverse};
use symdec::poly::{from_xm1_basis, rat, reflect_r, reverse_i, to_xm1_basis, Poly};
use symdec::zonotopes::{ehrhart, ehrhart_bruteforce, ZonotopeSpec};

fn poly_and_window() -> impl Strategy<Value = (Poly, usize)> {
    (prop::collection::vec(-5i64..=5, 1..=6), 0usize..=2)
        .prop_map(|(cs, slack)| {
            let window = cs.len() - 1 + slack;
            (Poly::from_ints(&cs), window)
        })
}

proptest! {
    #[test]
    fn reversal_is_an_involution((p, d) in poly_and_window()) {
        let once = reverse_i(&p, d).unwrap();
        prop_assert_eq!(reverse_i(&once, d).unwrap(), p);
    }

    #[test]
    fn reflection_is_an_involution((p, d) in poly_and_window()) {
        let once = reflect_r(&p, d).unwrap();
        prop_assert_eq!(reflect_r(&once, d).unwrap(), p);
    }

    #[test]
    fn shifted_binomial_basis_round_trips((p, d) in poly_and_window(), m in 1i64..=3) {
        let coords = to_xm1_basis(&p, d, m).unwrap();
        prop_assert_eq!(from_xm1_basis(&coords, d, m).unwrap(), p);
    }

    #[test]
    fn decompositions_recompose_with_symmetric_parts((p, d) in poly_and_window()) {
        let di = decompose_i(&p, d).unwrap();
        prop_assert_eq!(di.recompose(), p.clone());
        prop_assert!(is_symmetric(&di.a, d).unwrap());
        if d > 0 {
            prop_assert!(is_symmetric(&di.b, d - 1).unwrap());
        } else {
            prop_assert!(di.b.is_zero());
        }

        let dr = decompose_r(&p, d).unwrap();
        prop_assert_eq!(dr.recompose(), p.clone());
        prop_assert_eq!(reflect_r(&dr.a, d).unwrap(), dr.a.clone());
        if d > 0 {
            prop_assert_eq!(reflect_r(&dr.b, d - 1).unwrap(), dr.b);
        } else {
            prop_assert!(dr.b.is_zero());
        }
    }

    #[test]
    fn f_transform_intertwines_reversal_and_reflection((p, d) in poly_and_window()) {
        let lhs = f_transform(&reverse_i(&p, d).unwrap(), d).unwrap();
        let rhs = reflect_r(&f_transform(&p, d).unwrap(), d).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn subdivision_operator_round_trips(cs in prop::collection::vec(-5i64..=5, 1..=7)) {
        let p = Poly::from_ints(&cs);
        prop_assert_eq!(subdivision_e_inverse(&subdivision_e(&p)), p);
    }

    #[test]
    fn diamond_with_one_is_identity(cs in prop::collection::vec(-5i64..=5, 1..=6)) {
        let q = Poly::from_ints(&cs);
        prop_assert_eq!(diamond(&Poly::one(), &q), q.clone());
        prop_assert_eq!(diamond(&q, &Poly::one()), q);
    }

    #[test]
    fn coefficient_strings_round_trip(cs in prop::collection::vec(-99i64..=99, 1..=8)) {
        let p = Poly::from_ints(&cs);
        let printed = p.to_string();
        prop_assert_eq!(printed.parse::<Poly>().unwrap(), p);
    }

    #[test]
    fn planar_zonotope_ehrhart_matches_lattice_counts(
        entries in prop::collection::vec(-2i64..=2, 4),
    ) {
        let z = ZonotopeSpec::from_cols(&[&entries[0..2], &entries[2..4]]);
        let counted = ehrhart_bruteforce(&z, z.dim() + 1).unwrap();
        prop_assert_eq!(ehrhart(&z), counted);
    }
}

// a polynomial is alternatingly increasing exactly when both parts of its
// reversal decomposition are nonnegative and unimodal
#[test]
fn alternatingly_increasing_iff_unimodal_nonnegative_parts() {
    use symdec::decompose::is_unimodal;
    for d in 0..=3usize {
        let mut coeffs = vec![0i64; d + 1];
        loop {
            let p = Poly::from_ints(&coeffs);
            let dec = decompose_i(&p, d).unwrap();
            let parts_ok = dec.a.has_nonneg_coeffs()
                && dec.b.has_nonneg_coeffs()
                && is_unimodal(&dec.a)
                && is_unimodal(&dec.b);
            assert_eq!(
                is_alternatingly_increasing(&p, d).unwrap(),
                parts_ok,
                "disagreement at {coeffs:?} with window {d}"
            );
            let mut k = 0;
            while k <= d && coeffs[k] == 3 {
                coeffs[k] = 0;
                k += 1;
            }
            if k > d {
                break;
            }
            coeffs[k] += 1;
        }
    }
}

#[test]
fn derangement_sieve_recovers_eulerian() {
    use symdec::poly::binomial;
    use symdec::Rat;
    for n in 0..=7usize {
        let binomial_expansion = Poly::from_ints(&[1, 1]).pow(n as u32);
        assert_eq!(deranged_d(&binomial_expansion), eulerian(n));
        let mut sum = Poly::zero();
        for k in 0..=n {
            sum = &sum + &derangement(k).scale(&Rat::from_integer(binomial(n, k)));
        }
        assert_eq!(sum, eulerian(n));
    }
}

#[test]
fn derangement_operator_on_monomials() {
    for n in 0..=7usize {
        assert_eq!(deranged_d(&Poly::monomial(n, rat(1))), derangement(n));
    }
}

//! Property tests: the algebraic identities the engine relies on, evaluated
//! on proptest-generated coordinates (with shrinking) across several primes,
//! complementing the seeded randomized checks in the verification suites.

use e6geom::albert::AlbertElement;
use e6geom::field::{Fq, PrimeField, QuadExt};
use e6geom::octonion::Octonion;
use proptest::prelude::*;

const PRIMES: [u64; 4] = [5, 7, 11, 10007];

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(&PRIMES[..])
}

fn albert_from(k: QuadExt, coords: &[(u64, u64); 27]) -> AlbertElement<Fq> {
    let c: Vec<Fq> = coords.iter().map(|&(a, b)| k.elem(a, b)).collect();
    AlbertElement::from_coords(&c)
}

proptest! {
    #[test]
    fn quadratic_extension_norm_and_conjugation_are_multiplicative(
        p in prime(),
        a in any::<[u64; 2]>(),
        b in any::<[u64; 2]>(),
    ) {
        let k = QuadExt::with_default_d(p).unwrap();
        let x = k.elem(a[0], a[1]);
        let y = k.elem(b[0], b[1]);
        prop_assert_eq!((x * y).norm_to_base(), x.norm_to_base() * y.norm_to_base());
        prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn octonion_norm_is_multiplicative_and_conjugation_is_an_involution(
        p in prime(),
        xs in any::<[u64; 8]>(),
        ys in any::<[u64; 8]>(),
    ) {
        let f = PrimeField::new(p).unwrap();
        let x = Octonion::from_coords(&xs.map(|v| f.elem(v)));
        let y = Octonion::from_coords(&ys.map(|v| f.elem(v)));
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.conj().conj(), x);
        prop_assert_eq!(x.conj().norm(), x.norm());
    }

    #[test]
    fn albert_double_adjoint_scales_by_the_cubic_norm(
        p in prime(),
        coords in any::<[(u64, u64); 27]>(),
    ) {
        let k = QuadExt::with_default_d(p).unwrap();
        let x = albert_from(k, &coords);
        prop_assert_eq!(x.adjoint().adjoint(), x.scale(x.norm()));
    }

    #[test]
    fn albert_trace_form_and_cross_are_symmetric(
        p in prime(),
        a in any::<[(u64, u64); 27]>(),
        b in any::<[(u64, u64); 27]>(),
    ) {
        let k = QuadExt::with_default_d(p).unwrap();
        let x = albert_from(k, &a);
        let y = albert_from(k, &b);
        prop_assert_eq!(x.trace_form(&y), y.trace_form(&x));
        prop_assert_eq!(x.cross(&y), y.cross(&x));
        prop_assert_eq!(x.jordan_mul(&y), y.jordan_mul(&x));
    }

    #[test]
    fn albert_cross_bilinearizes_the_adjoint(
        p in prime(),
        a in any::<[(u64, u64); 27]>(),
        b in any::<[(u64, u64); 27]>(),
    ) {
        let k = QuadExt::with_default_d(p).unwrap();
        let x = albert_from(k, &a);
        let y = albert_from(k, &b);
        // (x + y)# = x# + x × y + y#
        let lhs = x.add(&y).adjoint();
        let rhs = x.adjoint().add(&x.cross(&y)).add(&y.adjoint());
        prop_assert_eq!(lhs, rhs);
    }
}

use hallcomm::{Alphabet, Error, Subgroup, Tower, TowerConfig, VirtualAut, Word};
use proptest::prelude::*;
use std::sync::OnceLock;

fn tower() -> &'static Tower {
    static T: OnceLock<Tower> = OnceLock::new();
    T.get_or_init(|| Tower::new(TowerConfig::default()).unwrap())
}

fn x() -> Word {
    Word::generator(0)
}
fn y() -> Word {
    Word::generator(1)
}

/// Elementary Nielsen automorphisms of F_2.
fn nielsen(i: usize) -> VirtualAut {
    let images = match i % 5 {
        0 => vec![x().concat(&y()), y()],
        1 => vec![y().concat(&x()), y()],
        2 => vec![y(), x()],
        3 => vec![x().inverse(), y()],
        _ => vec![x(), y().concat(&x())],
    };
    VirtualAut::automorphism(2, images).unwrap()
}

/// Kernel of `F_2 → Z/p × Z/q`.
fn lattice(p: usize, q: usize) -> Subgroup {
    Subgroup::stabilizer(
        &[
            (0..p * q).map(|i| (i / q + 1) % p * q + i % q).collect(),
            (0..p * q).map(|i| i / q * q + (i % q + 1) % q).collect(),
        ],
        0,
    )
    .unwrap()
}

/// A population member: an automorphism word, a tower element, optionally
/// restricted to a sublattice.
fn member(kind: u8, moves: &[usize], elem: usize, p: usize, q: usize) -> VirtualAut {
    let base = match kind % 3 {
        0 => moves.iter().fold(VirtualAut::identity(2), |acc, &m| {
            VirtualAut::compose(&nielsen(m), &acc).unwrap()
        }),
        1 => tower()
            .embed(0, &tower().element(0, elem % 3).unwrap())
            .unwrap(),
        _ => tower()
            .embed(1, &tower().element(1, elem % 6).unwrap())
            .unwrap(),
    };
    let sub = base.domain().intersect(&lattice(p, q)).unwrap();
    base.restrict(&sub).unwrap()
}

fn population() -> impl Strategy<Value = VirtualAut> {
    (
        any::<u8>(),
        prop::collection::vec(0usize..5, 0..4),
        0usize..6,
        1usize..3,
        1usize..3,
    )
        .prop_map(|(k, m, e, p, q)| member(k, &m, e, p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn compose_is_associative(a in population(), b in population(), c in population()) {
        let left = VirtualAut::compose(&VirtualAut::compose(&a, &b).unwrap(), &c).unwrap();
        let right = VirtualAut::compose(&a, &VirtualAut::compose(&b, &c).unwrap()).unwrap();
        prop_assert!(left.comm_equal(&right));
    }

    #[test]
    fn invert_is_two_sided(a in population()) {
        let inv = a.invert();
        prop_assert!(VirtualAut::compose(&a, &inv).unwrap().is_identity());
        prop_assert!(VirtualAut::compose(&inv, &a).unwrap().comm_equal(&VirtualAut::identity(2)));
        prop_assert!(inv.invert() == a);
    }

    #[test]
    fn restriction_keeps_the_class(a in population(), p in 1usize..4, q in 1usize..3) {
        let sub = a.domain().intersect(&lattice(p, q)).unwrap();
        let r = a.restrict(&sub).unwrap();
        prop_assert!(r.comm_equal(&a));
        prop_assert!(a.comm_equal(&r));
        prop_assert_eq!(r.domain(), &sub);
    }

    #[test]
    fn comm_equal_is_an_equivalence(a in population(), p in 1usize..3, q in 1usize..4) {
        prop_assert!(a.comm_equal(&a));
        let b = a.restrict(&a.domain().intersect(&lattice(p, q)).unwrap()).unwrap();
        let c = a.restrict(&a.domain().intersect(&lattice(q, p)).unwrap()).unwrap();
        prop_assert!(b.comm_equal(&c) && c.comm_equal(&b));
    }

    #[test]
    fn apply_is_multiplicative(a in population(), us in prop::collection::vec((0usize..64, any::<bool>()), 0..6), vs in prop::collection::vec((0usize..64, any::<bool>()), 0..6)) {
        // domain elements as products of basis elements
        let basis = a.domain().basis();
        let build = |picks: &[(usize, bool)]| picks.iter().fold(Word::empty(), |acc, &(i, inv)| {
            let b = &basis[i % basis.len()];
            acc.concat(&if inv { b.inverse() } else { b.clone() })
        });
        let (u, v) = (build(&us), build(&vs));
        let uv = a.apply(&u.concat(&v)).unwrap();
        prop_assert_eq!(uv, a.apply(&u).unwrap().concat(&a.apply(&v).unwrap()));
        prop_assert_eq!(a.apply_inverse(&a.apply(&u).unwrap()).unwrap(), u);
    }

    #[test]
    fn image_rank_certifies_injectivity(a in population(), i in 0usize..20, j in 0usize..20) {
        prop_assert_eq!(a.image_subgroup().rank(), a.domain().rank());
        let n = a.images().len();
        prop_assume!(n > 1 && i % n != j % n);
        let mut corrupted = a.images().to_vec();
        corrupted[i % n] = corrupted[j % n].clone();
        let err = VirtualAut::from_basis(2, a.domain_basis().to_vec(), corrupted).unwrap_err();
        prop_assert!(matches!(err, Error::NotInjective { .. } | Error::InfiniteIndexImage), "{err:?}");
    }

    #[test]
    fn records_round_trip(a in population()) {
        let back = VirtualAut::from_json(&a.to_json()).unwrap();
        prop_assert!(back == a);
        prop_assert_eq!(back.to_json(), a.to_json());
    }
}

#[test]
fn swap_differs_from_identity() {
    let swap = nielsen(2);
    assert!(!swap.comm_equal(&VirtualAut::identity(2)));
    assert!(VirtualAut::compose(&swap, &swap).unwrap().is_identity());
}

#[test]
fn invalid_maps_are_rejected() {
    let a = Alphabet::free2();
    let w = |s: &str| a.parse(s).unwrap();
    assert_eq!(
        VirtualAut::from_basis(2, vec![w("x"), w("y.y")], vec![w("x"), w("y")]).unwrap_err(),
        Error::InfiniteIndexDomain
    );
    assert_eq!(
        VirtualAut::automorphism(2, vec![w("x"), w("y.y")]).unwrap_err(),
        Error::InfiniteIndexImage
    );
    assert!(matches!(
        VirtualAut::automorphism(2, vec![w("x")]),
        Err(Error::ArityMismatch { .. })
    ));
    assert!(VirtualAut::identity(2).apply(&Word::generator(5)).is_err());
    assert!(VirtualAut::from_json(
        "{\"ambient_rank\": 2, \"domain_basis\": [], \"images\": [], \"extra\": 1}"
    )
    .is_err());
}

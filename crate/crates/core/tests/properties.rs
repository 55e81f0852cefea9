mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rauzy_core::marking::MarkingData;
use rauzy_core::symmetry::{build_candidate_group, phi};
use rauzy_core::{Alphabet, LabeledPermutation, Letter, MoveKind, RauzyDiagram, Renumbering};

use common::*;

fn letters(d: usize) -> Vec<Letter> {
    (0..d).map(|i| Letter(i as u8)).collect()
}

prop_compose! {
    fn irreducible()(d in 2usize..=9)
        (top in Just(letters(d)).prop_shuffle(), bottom in Just(letters(d)).prop_shuffle(), d in Just(d))
        -> (usize, Vec<Letter>, Vec<Letter>) {
        (d, top, bottom)
    }
}

fn build(d: usize, top: Vec<Letter>, bottom: Vec<Letter>) -> LabeledPermutation {
    LabeledPermutation::from_rows(alphabet(d), top, bottom).unwrap()
}

fn kind() -> impl Strategy<Value = MoveKind> {
    prop_oneof![Just(MoveKind::Top), Just(MoveKind::Bottom)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn moves_commute_with_renumbering(
        (d, top, bottom) in irreducible(),
        seed in any::<u64>(),
        kind in kind(),
    ) {
        let p = build(d, top, bottom);
        prop_assume!(p.is_irreducible());
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let f = random_renumbering(d, &mut rng);
        let lhs = p.renumber(&f).unwrap().rauzy_move(kind).unwrap();
        let rhs = p.rauzy_move(kind).unwrap().renumber(&f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn moves_preserve_irreducibility_and_the_fixed_row((d, top, bottom) in irreducible(), kind in kind()) {
        let p = build(d, top, bottom);
        prop_assume!(p.is_irreducible());
        let q = p.rauzy_move(kind).unwrap();
        prop_assert!(q.is_irreducible());
        match kind {
            MoveKind::Top => prop_assert_eq!(q.top(), p.top()),
            MoveKind::Bottom => prop_assert_eq!(q.bottom(), p.bottom()),
        }
        prop_assert_eq!(q.inverse_rauzy_move(kind).unwrap(), p.clone());
        // left letters never change
        prop_assert_eq!((q.top()[0], q.bottom()[0]), (p.top()[0], p.bottom()[0]));
    }

    #[test]
    fn marking_satisfies_euler_and_orbit_counts((d, top, bottom) in irreducible()) {
        let p = build(d, top, bottom);
        prop_assume!(p.is_irreducible());
        let m = MarkingData::new(&p).unwrap();
        let cycles = m.cycles.len() as i64;
        prop_assert_eq!(cycles - d as i64 + 1, 2 - 2 * m.genus as i64);
        prop_assert_eq!(m.degrees.iter().sum::<u32>() + 2, 2 * m.genus);
        let total: usize = m.orbits.iter().map(Vec::len).sum();
        prop_assert_eq!(total, d);
        prop_assert_eq!(m.orbits[m.special_orbit].len() as u32, m.special_degree() + 2);
        prop_assert_eq!(m.rotation.apply(m.minus_inf), m.plus_inf);
    }

    #[test]
    fn rotation_map_is_renumbering_equivariant(
        (d, top, bottom) in irreducible(),
        seed in any::<u64>(),
    ) {
        let p = build(d, top, bottom);
        prop_assume!(p.is_irreducible());
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let f = random_renumbering(d, &mut rng);
        let t = MarkingData::new(&p).unwrap().rotation;
        let ft = MarkingData::new(&p.renumber(&f).unwrap()).unwrap().rotation;
        prop_assert_eq!(ft, f.compose(&t).compose(&f.inverse()));
    }

    #[test]
    fn parse_display_round_trip((d, top, bottom) in irreducible()) {
        let p = build(d, top, bottom);
        let q = LabeledPermutation::parse(&p.to_string(), Some(p.alphabet())).unwrap();
        prop_assert_eq!(q.canonical_encoding(), p.canonical_encoding());
    }
}

#[test]
fn enumeration_is_renumbering_equivariant() {
    let mut rng = rng(11);
    for text in [THREE, ROTATION_4, ROTATION_5, HYPER_5] {
        let root = perm(text);
        let f = random_renumbering(root.len(), &mut rng);
        let d1 = RauzyDiagram::enumerate(&root, 1000).unwrap();
        let d2 = RauzyDiagram::enumerate(&root.renumber(&f).unwrap(), 1000).unwrap();
        assert_eq!(d1.len(), d2.len());
        assert_eq!(d1.t_succ(), d2.t_succ());
        assert_eq!(d1.b_succ(), d2.b_succ());
        for (a, b) in d1.vertices().zip(d2.vertices()) {
            assert_eq!(a.renumber(&f).unwrap(), b);
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let a = class(YOCCOZ);
    let b = class(YOCCOZ);
    assert_eq!(a.t_succ(), b.t_succ());
    assert_eq!(a.b_succ(), b.b_succ());
    assert!(a.vertices().zip(b.vertices()).all(|(x, y)| x.canonical_encoding() == y.canonical_encoding()));
    assert_eq!(
        rauzy_core::export::export_json(&a).unwrap(),
        rauzy_core::export::export_json(&b).unwrap()
    );
    assert_eq!(rauzy_core::export::export_dot(&a), rauzy_core::export::export_dot(&b));
}

#[test]
fn successor_arrays_are_permutations_and_moves_are_recorded() {
    for text in TEST_CLASSES {
        let d = class(text);
        for succ in [d.t_succ(), d.b_succ()] {
            let mut sorted = succ.to_vec();
            sorted.sort_unstable();
            assert!(sorted.iter().enumerate().all(|(i, &v)| i as u32 == v));
        }
        let root = d.vertex(0);
        for id in 0..d.len() as u32 {
            let v = d.vertex(id);
            assert!(v.is_irreducible());
            assert_eq!((v.top()[0], v.bottom()[0]), (root.top()[0], root.bottom()[0]));
            for kind in MoveKind::BOTH {
                assert_eq!(d.find(&v.rauzy_move(kind).unwrap()), Some(d.succ(id, kind)));
            }
        }
    }
}

#[test]
fn yoccoz_relabeling_with_negative_sign_is_not_a_member() {
    let d = class(YOCCOZ);
    let root = d.vertex(0);
    let f = Renumbering::from_cycles(root.alphabet(), &[&["a1", "b1"], &["a2", "b2"]]).unwrap();
    let image = root.renumber(&f).unwrap();
    assert!(!d.contains(&image));
    assert!(!d.is_automorphism(&f));
    // independent check: the class of the image is disjoint from the class of the root
    let other = RauzyDiagram::enumerate(&image, 100_000).unwrap();
    assert_eq!(other.len(), d.len());
    assert!(other.vertices().all(|v| !d.contains(&v)));

    let frame = build_candidate_group(&MarkingData::new(&root).unwrap()).unwrap();
    let coords = frame.frame().to_coordinates(&f).unwrap();
    assert_eq!(phi(&coords).value(), -1);
}

#[test]
fn foreign_alphabet_membership_by_spelling() {
    let d = class(ROTATION_4);
    let v = d.vertex(3);
    let shuffled = Arc::new(Alphabet::new(["D", "C", "B", "A"]).unwrap());
    let reinterned = v.reintern(&shuffled).unwrap();
    assert!(d.contains(&reinterned));
}

#[test]
fn candidate_group_coordinates_form_a_functor_on_random_pairs() {
    let mut rng = rng(23);
    let g = build_candidate_group(&MarkingData::new(&perm(YOCCOZ)).unwrap()).unwrap();
    let frame = g.frame();
    use rand::Rng;
    for _ in 0..500 {
        let a = &g.elements()[rng.gen_range(0..g.order())];
        let b = &g.elements()[rng.gen_range(0..g.order())];
        let ab = frame.to_coordinates(&a.compose(b)).unwrap();
        let ca = frame.to_coordinates(a).unwrap();
        let cb = frame.to_coordinates(b).unwrap();
        assert_eq!(ab, ca.compose(&cb));
        assert_eq!(phi(&ab), phi(&ca) * phi(&cb));
        assert_eq!(&frame.from_coordinates(&ab).unwrap(), &a.compose(b));
    }
}

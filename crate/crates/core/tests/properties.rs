//! Randomized invariants of the engine, the rotary wrappers and the
//! constructions, over a fixed pool of small finite groups.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use rotamap::constructions::{
    locally_toroidal, pc_map_improper, pc_map_proper, petrie_quotient, torus_map,
    LocallyToroidalSpec, TorusFamily, TorusKind,
};
use rotamap::engine::{enumerate, ElementIndex, GroupRep, DEFAULT_MAX_COSETS};
use rotamap::presentation::{product, Word};
use rotamap::rotary::{RotationGroup3, RotationGroup4};
use rotamap::selfdual::{detect_self_duality, extend_improper, extend_proper, SelfDualityKind};

const CAP: usize = DEFAULT_MAX_COSETS;

fn fam(kind: TorusKind, b: u32, c: u32) -> TorusFamily {
    TorusFamily::new(kind, b, c).unwrap()
}

fn maps() -> &'static [RotationGroup3] {
    static M: OnceLock<Vec<RotationGroup3>> = OnceLock::new();
    M.get_or_init(|| {
        [
            fam(TorusKind::Square, 1, 3),
            fam(TorusKind::Square, 2, 0),
            fam(TorusKind::Square, 2, 2),
            fam(TorusKind::Triangular, 1, 2),
            fam(TorusKind::Hexagonal, 2, 1),
            fam(TorusKind::Triangular, 3, 0),
        ]
        .iter()
        .map(|t| torus_map(t, CAP).unwrap())
        .collect()
    })
}

fn rank4() -> &'static [RotationGroup4] {
    static G: OnceLock<Vec<RotationGroup4>> = OnceLock::new();
    G.get_or_init(|| {
        let pairs = [
            (fam(TorusKind::Square, 1, 3), fam(TorusKind::Square, 1, 3)),
            (
                fam(TorusKind::Triangular, 1, 2),
                fam(TorusKind::Hexagonal, 1, 2),
            ),
            (fam(TorusKind::Square, 2, 0), fam(TorusKind::Square, 2, 0)),
        ];
        let mut out: Vec<RotationGroup4> = pairs
            .into_iter()
            .map(|(f, v)| locally_toroidal(&LocallyToroidalSpec::new(f, v).unwrap(), CAP).unwrap())
            .collect();
        // ex2 cut down by its Petrie quotient keeps the pool fast
        let ex2 = locally_toroidal(
            &LocallyToroidalSpec::new(
                fam(TorusKind::Hexagonal, 1, 2),
                fam(TorusKind::Triangular, 2, 1),
            )
            .unwrap(),
            CAP,
        )
        .unwrap();
        out.push(petrie_quotient(&ex2, 7, CAP).unwrap());
        out
    })
}

fn reps() -> Vec<Arc<GroupRep>> {
    maps()
        .iter()
        .map(|m| m.rep().clone())
        .chain(rank4().iter().map(|g| g.rep().clone()))
        .collect()
}

fn arb_word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=gens as i32, any::<bool>()), 0..max_len).prop_map(|v| {
        Word::from_signed(
            &v.into_iter()
                .map(|(g, neg)| if neg { -g } else { g })
                .collect::<Vec<_>>(),
        )
    })
}

fn inner(rep: &GroupRep, g: &Word) -> Vec<Word> {
    rep.generator_words()
        .iter()
        .map(|s| product([&g.inverse(), s, g]))
        .collect()
}

fn compose(a: &[Word], b: &[Word]) -> Vec<Word> {
    a.iter().map(|w| w.substitute(b).unwrap()).collect()
}

fn element_set(ws: &[ElementIndex]) -> BTreeSet<usize> {
    ws.iter().map(|x| x.index()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lagrange(i in 0usize..10, ws in prop::collection::vec(arb_word(3, 8), 0..3)) {
        let reps = reps();
        let rep = &reps[i % reps.len()];
        let n = rep.generator_words().len();
        let ws: Vec<Word> = ws.into_iter().filter(|w| w.max_generator().is_none_or(|g| g < n)).collect();
        let h = rep.subgroup_closure(&ws);
        prop_assert_eq!(rep.order() % h.order(), 0);
    }

    #[test]
    fn relators_fix_every_coset(i in 0usize..10) {
        let reps = reps();
        let rep = &reps[i % reps.len()];
        for x in rep.elements() {
            for r in rep.presentation().relators() {
                prop_assert_eq!(rep.multiply(x, r), x);
            }
        }
    }

    #[test]
    fn normal_closure_is_conjugation_invariant(i in 0usize..6, w in arb_word(2, 10)) {
        let m = &maps()[i];
        let rep = m.rep();
        let n = rep.normal_closure(&w);
        let members = element_set(n.elements());
        for s in rep.generator_words() {
            for &x in n.elements() {
                let y = rep.multiply(rep.product(rep.element_of(&s.inverse()), x), &s);
                prop_assert!(members.contains(&y.index()));
            }
        }
    }

    #[test]
    fn automorphisms_compose(i in 0usize..10, g in arb_word(3, 6), h in arb_word(3, 6), pick in 0usize..3) {
        let reps = reps();
        let rep = &reps[i % reps.len()];
        let n = rep.generator_words().len();
        let restrict = |w: Word| if w.max_generator().is_none_or(|x| x < n) { w } else { Word::identity() };
        let (g, h) = (restrict(g), restrict(h));
        let a = inner(rep, &g);
        let b = match pick {
            0 => inner(rep, &h),
            // a candidate that may or may not extend; closure only matters when it does
            _ => {
                let gens = rep.generator_words();
                if n == 3 {
                    vec![gens[2].inverse(), gens[1].inverse(), gens[0].inverse()]
                } else {
                    vec![gens[0].inverse(), product([&gens[0], &gens[0], &gens[1]])]
                }
            }
        };
        let pa = rep.extends_to_automorphism(&a).unwrap();
        let pb = rep.extends_to_automorphism(&b).unwrap();
        prop_assert!(pa);
        if pb {
            prop_assert!(rep.extends_to_automorphism(&compose(&a, &b)).unwrap());
            prop_assert!(rep.extends_to_automorphism(&compose(&b, &a)).unwrap());
        }
    }

    #[test]
    fn adding_a_relator_never_grows_the_group(i in 0usize..6, w in arb_word(2, 8)) {
        let m = &maps()[i];
        let p = m.rep().presentation().with_relators([w]);
        let q = enumerate(&p, CAP).unwrap();
        prop_assert!(q.order() <= m.order());
        prop_assert_eq!(m.order() % q.order(), 0);
    }

    #[test]
    fn classify3_is_conjugation_invariant(i in 0usize..6, g in arb_word(2, 8)) {
        let m = &maps()[i];
        let [s1, s2] = m.sigma().clone();
        let c = RotationGroup3::new(
            m.rep().clone(),
            product([&g.inverse(), &s1, &g]),
            product([&g.inverse(), &s2, &g]),
        ).unwrap();
        prop_assert_eq!(c.classify(), m.classify());
        prop_assert_eq!(c.schlafli(), m.schlafli());
    }

    #[test]
    fn classify4_is_conjugation_invariant(i in 0usize..4, g in arb_word(3, 6)) {
        let m = &rank4()[i];
        let sigma = m.sigma().clone().map(|s| product([&g.inverse(), &s, &g]));
        let c = RotationGroup4::new(m.rep().clone(), sigma).unwrap();
        prop_assert_eq!(c.classify(), m.classify());
        prop_assert_eq!(c.petrie(), m.petrie());
    }
}

#[test]
fn first_hole_is_the_face_length_and_flags_count_edges() {
    for m in maps() {
        if !m.check_polytopal() {
            continue;
        }
        assert_eq!(m.hole_length(1).unwrap(), m.schlafli()[0]);
        let f = m.f_vector().unwrap();
        assert_eq!(2 * m.order(), 4 * f.edges);
        let r = m.involution_report();
        assert!(r.prop62_consistent);
        assert_eq!(r.n_tau_index * r.n_tau_order, m.order());
    }
}

#[test]
fn rank_four_relations_and_right_petrie_word() {
    for g in rank4() {
        let [s1, s2, s3] = g.sigma();
        let rep = g.rep();
        assert!(rep.is_identity(&product([s1, s2]).pow(2)));
        assert!(rep.is_identity(&product([s2, s3]).pow(2)));
        assert!(rep.is_identity(&product([s1, s2, s3]).pow(2)));
        let w = product([s1, s2, s1, s2, s3, s2, s3, s1, s2, s3]);
        assert_eq!(rep.element_order(&w), g.petrie().1);
        if detect_self_duality(g).unwrap().kind == SelfDualityKind::Improper {
            let (s, t) = g.petrie();
            assert_eq!(s, t);
        }
    }
}

#[test]
fn petrie_coxeter_relations() {
    let mut seen = BTreeSet::new();
    for g in rank4() {
        let [s1, _, s3] = g.sigma().clone();
        let pl = g.rep().element_order(&(&s1 * &s3));
        let pr = g.rep().element_order(&(&s1 * &s3.inverse()));
        let kind = detect_self_duality(g).unwrap().kind;
        seen.insert(kind.as_str());
        match kind {
            SelfDualityKind::Improper => {
                let e = extend_improper(g, CAP).unwrap();
                assert_eq!(e.order(), 2 * g.order());
                let m = pc_map_improper(&e).unwrap();
                let [k1, k2] = m.sigma().clone();
                let rep = m.rep();
                let [p, q, _] = g.schlafli();
                assert_eq!(rep.element_order(&k1), 4);
                assert_eq!(rep.element_order(&k2), 2 * q);
                assert_eq!(rep.element_order(&(&k1 * &k2)), 2);
                assert_eq!(rep.element_order(&(&k1 * &k2.inverse())), p);
                assert_eq!(m.hole_length(2).unwrap(), p);
                assert_eq!(m.classify(), g.classify());
            }
            SelfDualityKind::Proper => {
                let e = extend_proper(g, CAP).unwrap();
                assert_eq!(e.order(), 2 * g.order());
                let m = pc_map_proper(&e).unwrap();
                let [t0, t1, t2] = m.rho().clone();
                let rep = m.rep();
                assert_eq!(rep.element_order(&(&t1 * &t2)), 2 * pl);
                assert_eq!(rep.element_order(&product([&t0, &t1, &t2])), 2 * pr);
            }
            _ => {}
        }
    }
    assert!(
        seen.contains("improper") && seen.contains("proper"),
        "{seen:?}"
    );
}

#[test]
fn petrie_quotient_at_full_length_changes_nothing() {
    for g in rank4() {
        let k = g.petrie().0;
        assert_eq!(petrie_quotient(g, k, CAP).unwrap().order(), g.order());
    }
}

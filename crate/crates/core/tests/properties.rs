use std::sync::Arc;

use bfk_core::bisets::{compose, hom_group, BisetMorphism, Method};
use bfk_core::burnside::BurnsideElement;
use bfk_core::groups::{build_group, Group};
use bfk_core::io::{parse, render, IoObject};
use bfk_core::rational::{b_delta, make_quotient_bmod_bdelta};
use bfk_core::zlin::{Lattice, PresentedAb};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::select;

const SMALL: &[&str] = &["1", "C2", "C4", "E4"];
const MEDIUM: &[&str] = &["1", "C2", "C4", "E4", "D8", "Q8", "C4xC2"];

fn g(name: &str) -> Arc<Group> {
    build_group(name).unwrap()
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn rows_strategy(cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), 0..5)
}

/// A random combination of transitive bisets, given by class coefficients.
fn morphism(source: &Arc<Group>, target: &Arc<Group>, coeffs: &[i64]) -> BisetMorphism {
    let hg = hom_group(source, target).unwrap();
    let n = hg.lattice().len();
    let v: Vec<BigInt> = (0..n)
        .map(|i| {
            if i % 3 == 0 {
                BigInt::from(coeffs[i / 3 % coeffs.len()])
            } else {
                BigInt::from(0)
            }
        })
        .collect();
    BisetMorphism::from_element(
        source,
        target,
        BurnsideElement::from_vector(&hg, &v).unwrap(),
    )
    .unwrap()
}

fn transitive(source: &Arc<Group>, target: &Arc<Group>, pick: usize) -> BisetMorphism {
    let hg = hom_group(source, target).unwrap();
    let classes = hg.classes();
    BisetMorphism::transitive(source, target, &classes[pick % classes.len()].rep).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_contains_its_generators(rows in rows_strategy(4)) {
        let rows = to_big(&rows);
        let l = Lattice::from_rows(4, &rows);
        for r in &rows {
            prop_assert!(l.contains(r));
            let c = l.coords(r).unwrap();
            let back: Vec<BigInt> = (0..4)
                .map(|j| c.iter().zip(l.basis()).map(|(a, b)| a * &b[j]).sum())
                .collect();
            prop_assert_eq!(&back, r);
        }
        prop_assert_eq!(Lattice::from_rows(4, &l.basis()), l);
    }

    #[test]
    fn intersection_and_sum_bound_both(a in rows_strategy(3), b in rows_strategy(3)) {
        let (la, lb) = (Lattice::from_rows(3, &to_big(&a)), Lattice::from_rows(3, &to_big(&b)));
        let meet = la.intersection(&lb);
        let join = la.sum(&lb);
        prop_assert!(meet.is_subset(&la) && meet.is_subset(&lb));
        prop_assert!(la.is_subset(&join) && lb.is_subset(&join));
        prop_assert_eq!(meet.rank() + join.rank(), la.rank() + lb.rank());
    }

    #[test]
    fn invariant_factors_divide_and_count(rows in rows_strategy(3)) {
        let a = PresentedAb::new(3, Lattice::from_rows(3, &to_big(&rows)));
        let inv = a.invariants();
        prop_assert_eq!(inv.len(), 3 - a.rels.rank() + a.torsion().len());
        for w in a.torsion().windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
    }

    #[test]
    fn marks_are_additive(name in select(MEDIUM), x in prop::collection::vec(-5i64..=5, 16), y in prop::collection::vec(-5i64..=5, 16)) {
        let p = g(name);
        let n = p.lattice().len();
        let a = BurnsideElement::from_vector(&p, &to_big(&[x[..n].to_vec()])[0]).unwrap();
        let b = BurnsideElement::from_vector(&p, &to_big(&[y[..n].to_vec()])[0]).unwrap();
        let sum: Vec<BigInt> = a.marks().iter().zip(b.marks()).map(|(u, v)| u + v).collect();
        prop_assert_eq!(a.add(&b).marks(), sum);
    }

    #[test]
    fn orbit_and_mackey_agree(s in select(MEDIUM), m in select(SMALL), t in select(MEDIUM), i in 0usize..200, j in 0usize..200) {
        let (s, m, t) = (g(s), g(m), g(t));
        let u = transitive(&s, &m, i);
        let v = transitive(&m, &t, j);
        prop_assert_eq!(compose(&v, &u, Method::Orbit).unwrap(), compose(&v, &u, Method::Mackey).unwrap());
    }

    #[test]
    fn opposite_reverses_composition(s in select(SMALL), m in select(SMALL), t in select(SMALL), c in prop::collection::vec(-3i64..=3, 1..6), d in prop::collection::vec(-3i64..=3, 1..6)) {
        let (s, m, t) = (g(s), g(m), g(t));
        let u = morphism(&s, &m, &c);
        let v = morphism(&m, &t, &d);
        let left = compose(&v, &u, Method::Mackey).unwrap().opposite().unwrap();
        let right = compose(&u.opposite().unwrap(), &v.opposite().unwrap(), Method::Mackey).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn elements_round_trip_through_json(name in select(MEDIUM), x in prop::collection::vec(-1000i64..=1000, 16)) {
        let p = g(name);
        let n = p.lattice().len();
        let e = BurnsideElement::from_vector(&p, &to_big(&[x[..n].to_vec()])[0]).unwrap();
        prop_assert_eq!(parse(&render(&IoObject::Element(e.clone()))).unwrap(), IoObject::Element(e));
    }

    #[test]
    fn morphisms_round_trip_through_json(s in select(SMALL), t in select(MEDIUM), c in prop::collection::vec(-9i64..=9, 1..6)) {
        let f = morphism(&g(s), &g(t), &c);
        prop_assert_eq!(parse(&render(&IoObject::Morphism(f.clone()))).unwrap(), IoObject::Morphism(f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// `v o b o u` stays in `B_delta` when `b` does.
    #[test]
    fn b_delta_is_an_ideal(p in select(SMALL), q in select(SMALL), p2 in select(SMALL), q2 in select(SMALL),
                           i in 0usize..100, j in 0usize..100, k in 0usize..8) {
        let (p, q, p2, q2) = (g(p), g(q), g(p2), g(q2));
        prop_assume!(p.order() * q.order() <= 16 && p2.order() * q2.order() <= 16);
        let qp = hom_group(&p, &q).unwrap();
        let inner = b_delta(&qp).unwrap();
        prop_assume!(inner.rank() > 0);
        let row = inner.basis()[k % inner.rank()].clone();
        let b = BisetMorphism::from_element(&p, &q, BurnsideElement::from_vector(&qp, &row).unwrap()).unwrap();
        let u = transitive(&p2, &p, i);
        let v = transitive(&q, &q2, j);
        let out = compose(&v, &compose(&b, &u, Method::Mackey).unwrap(), Method::Mackey).unwrap();
        let outer = b_delta(&hom_group(&p2, &q2).unwrap()).unwrap();
        prop_assert!(outer.contains(&out.element.to_vector()));
    }

    /// The action of `B/B_delta` respects composition.
    #[test]
    fn quotient_action_is_functorial(s in select(SMALL), m in select(MEDIUM), t in select(SMALL), i in 0usize..300, j in 0usize..300) {
        let (s, m, t) = (g(s), g(m), g(t));
        let f = make_quotient_bmod_bdelta(2);
        let u = transitive(&s, &m, i);
        let v = transitive(&m, &t, j);
        let whole = f.act(&compose(&v, &u, Method::Mackey).unwrap()).unwrap();
        let split = f.act(&v).unwrap().after(&f.act(&u).unwrap());
        prop_assert!(whole.same_map(&split));
    }
}

#[test]
fn sandwiches_around_delta_stay_in_b_delta() {
    let ctx = bfk_core::rational::delta_context(2).unwrap();
    let one = Group::trivial();
    let b = BisetMorphism::from_element(
        &one,
        &ctx.x,
        ctx.delta.relabel(&hom_group(&one, &ctx.x).unwrap()),
    )
    .unwrap();
    let mut nonzero = 0;
    for q2 in ["1", "C2", "E4", "D8"] {
        let q2 = g(q2);
        let hv = hom_group(&ctx.x, &q2).unwrap();
        for c in hv.classes() {
            let v = BisetMorphism::transitive(&ctx.x, &q2, &c.rep).unwrap();
            for p2 in ["1", "C2"] {
                let p2 = g(p2);
                let u = transitive(&p2, &one, 0);
                let out = compose(
                    &v,
                    &compose(&b, &u, Method::Mackey).unwrap(),
                    Method::Mackey,
                )
                .unwrap();
                let outer = b_delta(&hom_group(&p2, &q2).unwrap()).unwrap();
                assert!(
                    outer.contains(&out.element.to_vector()),
                    "{} -> {}",
                    p2.name(),
                    q2.name()
                );
                nonzero += !out.is_zero() as usize;
            }
        }
    }
    assert!(nonzero > 0);
}

use std::sync::Arc;

use bfk_core::bisets::*;
use bfk_core::burnside::BurnsideElement;
use bfk_core::groups::{build_group, direct_product, Group, Subgroup};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_subgroup(g: &Group, rng: &mut ChaCha8Rng) -> Subgroup {
    let k = rng.gen_range(0..=2);
    let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..g.order())).collect();
    g.generated(&gens)
}

fn random_morphism(
    source: &Arc<Group>,
    target: &Arc<Group>,
    rng: &mut ChaCha8Rng,
) -> BisetMorphism {
    let hg = hom_group(source, target).unwrap();
    let mut m = BisetMorphism::zero(source, target).unwrap();
    for _ in 0..rng.gen_range(1..=2) {
        let l = random_subgroup(&hg, rng);
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        m = m
            .add(
                &BisetMorphism::transitive(source, target, &l)
                    .unwrap()
                    .scale(&c),
            )
            .unwrap();
    }
    m
}

#[test]
fn factorization_recomposes_for_d8_c4() {
    let h = build_group("D8").unwrap();
    let g = build_group("C4").unwrap();
    let hg = direct_product(&h, &g).unwrap();
    for c in hg.classes() {
        let f = factorize(&h, &g, &c.rep).unwrap();
        let back = f.recompose(&h, &g).unwrap();
        assert_eq!(
            back,
            BisetMorphism::transitive(&g, &h, &c.rep).unwrap(),
            "{:?}",
            c.rep
        );
    }
}

#[test]
fn factorization_of_diagonal_and_full() {
    let g = build_group("Q8").unwrap();
    let id = identity(&g).unwrap();
    let diag = id.terms().next().unwrap().0.clone();
    let f = factorize(&g, &g, &diag).unwrap();
    assert!(f.k1.is_trivial() && f.k2.is_trivial());
    assert_eq!(f.recompose(&g, &g).unwrap(), id);
    let gg = direct_product(&g, &g).unwrap();
    let f = factorize(&g, &g, &gg.whole()).unwrap();
    assert_eq!(f.recompose(&g, &g).unwrap(), one_point(&g, &g).unwrap());
}

#[test]
fn faithful_idempotents_form_a_partition_of_identity() {
    for name in ["C2", "C4", "E4", "D8", "Q8", "C3", "E9"] {
        let g = build_group(name).unwrap();
        let normals = g.normal_subgroups();
        let fs: Vec<_> = normals
            .iter()
            .map(|n| faithful_idempotent(&g, n).unwrap())
            .collect();
        let mut sum = BisetMorphism::zero(&g, &g).unwrap();
        for (i, f) in fs.iter().enumerate() {
            for (j, e) in fs.iter().enumerate() {
                let fe = compose(f, e, Method::Mackey).unwrap();
                if i == j {
                    assert_eq!(&fe, f, "{name}: idempotent");
                } else {
                    assert!(fe.is_zero(), "{name}: orthogonal");
                }
            }
            sum = sum.add(f).unwrap();
        }
        assert_eq!(sum, identity(&g).unwrap(), "{name}");
        let f1 = faithful_idempotent(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(faithful_idempotent_center(&g).unwrap(), f1, "{name}");
    }
}

#[test]
fn faithful_idempotent_of_cyclic_prime_order() {
    let g = build_group("C3").unwrap();
    let f = faithful_idempotent(&g, &g.trivial_subgroup()).unwrap();
    let expected = identity(&g)
        .unwrap()
        .sub(&one_point(&g, &g).unwrap())
        .unwrap();
    assert_eq!(f, expected);
    let d8 = build_group("D8").unwrap();
    let not_normal = d8
        .classes()
        .into_iter()
        .find(|c| !d8.is_normal(&c.rep))
        .unwrap()
        .rep;
    assert!(faithful_idempotent(&d8, &not_normal).is_err());
}

#[test]
fn epsilon_is_the_faithful_projection_of_the_regular_set() {
    let e = build_group("E4").unwrap();
    let f = faithful_idempotent(&e, &e.trivial_subgroup()).unwrap();
    let regular = BurnsideElement::transitive(&e, &e.trivial_subgroup());
    assert_eq!(
        f.apply(&regular).unwrap(),
        bfk_core::burnside::epsilon(&e).unwrap()
    );
}

#[test]
fn opposite_is_an_antiinvolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let names = ["C2", "C4", "E4", "D8"];
    for _ in 0..40 {
        let g = build_group(names[rng.gen_range(0..4)]).unwrap();
        let h = build_group(names[rng.gen_range(0..4)]).unwrap();
        let k = build_group(names[rng.gen_range(0..4)]).unwrap();
        let u = random_morphism(&g, &h, &mut rng);
        let v = random_morphism(&h, &k, &mut rng);
        assert_eq!(u.opposite().unwrap().opposite().unwrap(), u);
        let vu = compose(&v, &u, Method::Orbit).unwrap();
        let uv = compose(
            &u.opposite().unwrap(),
            &v.opposite().unwrap(),
            Method::Orbit,
        )
        .unwrap();
        assert_eq!(vu.opposite().unwrap(), uv);
    }
}

#[test]
fn composition_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let names = ["C2", "C4", "E4", "D8", "Q8"];
    for _ in 0..30 {
        let gs: Vec<_> = (0..4)
            .map(|_| build_group(names[rng.gen_range(0..5)]).unwrap())
            .collect();
        let a = random_morphism(&gs[0], &gs[1], &mut rng);
        let b = random_morphism(&gs[1], &gs[2], &mut rng);
        let c = random_morphism(&gs[2], &gs[3], &mut rng);
        let left = compose(&compose(&c, &b, Method::Orbit).unwrap(), &a, Method::Orbit).unwrap();
        let right = compose(&c, &compose(&b, &a, Method::Orbit).unwrap(), Method::Orbit).unwrap();
        assert_eq!(left, right);
    }
}

#[test]
fn identity_is_neutral() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (a, b) in [("D8", "C4"), ("Q8", "E4"), ("C9", "C3")] {
        let g = build_group(a).unwrap();
        let h = build_group(b).unwrap();
        let u = random_morphism(&g, &h, &mut rng);
        assert_eq!(
            compose(&identity(&h).unwrap(), &u, Method::Both).unwrap(),
            u
        );
        assert_eq!(
            compose(&u, &identity(&g).unwrap(), Method::Both).unwrap(),
            u
        );
    }
}

#[test]
fn shift_is_a_functor() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let c2 = build_group("C2").unwrap();
    let names = ["C2", "C4", "E4", "D8", "Q8"];
    for name in names {
        let g = build_group(name).unwrap();
        let gc = direct_product(&g, &c2).unwrap();
        assert_eq!(
            shift(&identity(&g).unwrap(), &c2).unwrap(),
            identity(&gc).unwrap()
        );
    }
    for _ in 0..25 {
        let gs: Vec<_> = (0..3)
            .map(|_| build_group(names[rng.gen_range(0..5)]).unwrap())
            .collect();
        let u = random_morphism(&gs[0], &gs[1], &mut rng);
        let v = random_morphism(&gs[1], &gs[2], &mut rng);
        let lhs = shift(&compose(&v, &u, Method::Mackey).unwrap(), &c2).unwrap();
        let rhs = compose(
            &shift(&v, &c2).unwrap(),
            &shift(&u, &c2).unwrap(),
            Method::Orbit,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
        let w = random_morphism(&gs[0], &gs[1], &mut rng);
        assert_eq!(
            shift(&u.add(&w).unwrap(), &c2).unwrap(),
            shift(&u, &c2)
                .unwrap()
                .add(&shift(&w, &c2).unwrap())
                .unwrap()
        );
    }
}

#[test]
fn shift_of_klein_diagonal() {
    let c2 = build_group("C2").unwrap();
    let e = build_group("C2xC2").unwrap();
    let id = identity(&e).unwrap();
    let s = shift(&id, &c2).unwrap();
    let ec = direct_product(&e, &c2).unwrap();
    assert_eq!(s, identity(&ec).unwrap());
    let one = s.terms().next().unwrap().0.order();
    assert_eq!(one, 8);
}

fn lemma_double_holds(q: &Arc<Group>, p: &Arc<Group>, x: &Arc<Group>, t: &BisetMorphism) {
    let px = direct_product(p, x).unwrap();
    let qpx = hom_group(&px, q).unwrap();
    for c in qpx.classes() {
        let u = BisetMorphism::transitive(&px, q, &c.rep).unwrap();
        let lhs = as_morphism(
            &compose(
                &regroup(&u, p, x).unwrap(),
                &t.opposite().unwrap(),
                Method::Both,
            )
            .unwrap(),
            q,
            p,
        )
        .unwrap();
        let rhs = compose(
            &shift(t, q).unwrap(),
            &tilde(&u, p, x).unwrap(),
            Method::Both,
        )
        .unwrap();
        assert_eq!(lhs, rhs, "{:?}", c.rep);
    }
}

#[test]
fn lemma_double_on_small_groups() {
    let c2 = build_group("C2").unwrap();
    let x = build_group("D8").unwrap();
    let one = Group::trivial();
    // T = I\X as an element of B(X^op) = Hom(X, 1)
    let i = x
        .classes()
        .into_iter()
        .find(|c| c.rep.order() == 2 && !x.is_normal(&c.rep))
        .unwrap()
        .rep;
    let t = BisetMorphism::transitive(&x, &one, &i).unwrap();
    lemma_double_holds(&c2, &c2, &x, &t);
    let e = build_group("E4").unwrap();
    let t = one_point(&e, &one).unwrap();
    lemma_double_holds(&c2, &one, &e, &t);
}

#[test]
fn tilde_of_one_point_is_one_point() {
    let c2 = build_group("C2").unwrap();
    let c4 = build_group("C4").unwrap();
    let px = direct_product(&c2, &c4).unwrap();
    let u = one_point(&px, &c2).unwrap();
    let xq = direct_product(&c4, &c2).unwrap();
    assert_eq!(tilde(&u, &c2, &c4).unwrap(), one_point(&c2, &xq).unwrap());
}

#[test]
fn random_composition_referee() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let names = [
        "C2", "C4", "E4", "C8", "D8", "Q8", "C4xC2", "D16", "Q16", "C2xC2xC2",
    ];
    for _ in 0..60 {
        let gs: Vec<_> = (0..3)
            .map(|_| build_group(names[rng.gen_range(0..names.len())]).unwrap())
            .collect();
        if gs[0].order() * gs[1].order() > 128 || gs[1].order() * gs[2].order() > 128 {
            continue;
        }
        let u = random_morphism(&gs[0], &gs[1], &mut rng);
        let v = random_morphism(&gs[1], &gs[2], &mut rng);
        compose(&v, &u, Method::Both).unwrap();
    }
}

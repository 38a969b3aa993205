//! Subgroup lattices against a brute-force closure search on the multiplication table.

use std::collections::{BTreeSet, HashSet};

use bfk_core::groups::{build_group, standard_two_groups, Group};

fn close(g: &Group, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut s = seed.clone();
    s.insert(0);
    loop {
        let mut grown = s.clone();
        for &a in &s {
            for &b in &s {
                grown.insert(g.mul(a, b));
            }
        }
        if grown.len() == s.len() {
            return s;
        }
        s = grown;
    }
}

fn all_subgroups(g: &Group) -> HashSet<BTreeSet<usize>> {
    let mut found: HashSet<BTreeSet<usize>> = HashSet::new();
    let mut frontier = vec![BTreeSet::from([0])];
    found.insert(BTreeSet::from([0]));
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h.contains(&x) {
                continue;
            }
            let mut seed = h.clone();
            seed.insert(x);
            let k = close(g, &seed);
            if found.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    found
}

fn conjugate(g: &Group, h: &BTreeSet<usize>, x: usize) -> BTreeSet<usize> {
    h.iter().map(|&y| g.mul(g.mul(g.inv(x), y), x)).collect()
}

#[test]
fn lattices_match_brute_force_up_to_order_32() {
    let mut names = standard_two_groups(32);
    names.extend(["C3", "C9", "E9", "C27", "X3"]);
    for name in names {
        let g = build_group(name).unwrap();
        let brute = all_subgroups(&g);
        let lat = g.lattice();
        let listed: HashSet<BTreeSet<usize>> = lat
            .all_subgroups()
            .iter()
            .map(|s| s.iter().collect())
            .collect();
        assert_eq!(listed, brute, "{name}");
        let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
        let mut classes = 0;
        for h in &brute {
            if seen.contains(h) {
                continue;
            }
            classes += 1;
            for x in 0..g.order() {
                seen.insert(conjugate(&g, h, x));
            }
        }
        assert_eq!(lat.len(), classes, "{name}");
        for c in lat.classes() {
            let rep: BTreeSet<usize> = c.rep.iter().collect();
            let orbit: HashSet<BTreeSet<usize>> =
                (0..g.order()).map(|x| conjugate(&g, &rep, x)).collect();
            assert_eq!(c.size, orbit.len(), "{name}");
            assert_eq!(c.normalizer.order() * c.size, g.order(), "{name}");
            let least = orbit
                .iter()
                .map(|s| s.iter().copied().collect::<Vec<_>>())
                .min()
                .unwrap();
            assert_eq!(c.rep.to_vec(), least, "{name}");
        }
    }
}

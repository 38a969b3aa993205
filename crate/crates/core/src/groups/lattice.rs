use std::collections::{HashMap, HashSet};

use super::{Group, Subgroup};

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub index: usize,
    /// Conjugate with the minimal `(order, sorted members)` key.
    pub rep: Subgroup,
    /// Number of conjugates.
    pub size: usize,
    pub normalizer: Subgroup,
    pub cyclic: bool,
}

/// All subgroups of a group, grouped into conjugacy classes in canonical order.
pub struct SubgroupLattice {
    classes: Vec<SubgroupClass>,
    index: HashMap<Subgroup, usize>,
}

impl SubgroupLattice {
    /// Enumerates by cyclic extension: every subgroup of order `p^(k+1)` is
    /// `<H, g>` for some `H` of order `p^k` normalized by `g`, with `g^p` in `H`.
    /// Only one representative `H` per class needs extending.
    pub fn build(g: &Group) -> SubgroupLattice {
        let p = g.prime().max(2) as usize;
        let mut reps: Vec<Subgroup> = vec![g.trivial_subgroup()];
        let mut layer = vec![g.trivial_subgroup()];
        while !layer.is_empty() && layer[0].order() < g.order() {
            let mut next: HashSet<Subgroup> = HashSet::new();
            for h in &layer {
                let n = g.normalizer(h);
                let mut covered = h.clone();
                for x in n.iter() {
                    if covered.contains(x) || !h.contains(g.pow(x, p)) {
                        continue;
                    }
                    let k = g.extend(h, &[x]);
                    debug_assert_eq!(k.order(), h.order() * p);
                    covered = covered.union(&k);
                    next.insert(g.canonical(&k));
                }
            }
            let mut layer_next: Vec<Subgroup> = next.into_iter().collect();
            layer_next.sort();
            log::debug!(
                "{}: {} classes of order {}",
                g.name(),
                layer_next.len(),
                layer_next.first().map_or(0, |s| s.order())
            );
            reps.extend(layer_next.iter().cloned());
            layer = layer_next;
        }
        reps.sort();
        let mut classes = Vec::with_capacity(reps.len());
        let mut index = HashMap::new();
        for (i, rep) in reps.into_iter().enumerate() {
            let orbit = g.conjugacy_orbit(&rep);
            for s in &orbit {
                index.insert(s.clone(), i);
            }
            classes.push(SubgroupClass {
                index: i,
                size: orbit.len(),
                normalizer: g.normalizer(&rep),
                cyclic: g.is_cyclic_subgroup(&rep),
                rep,
            });
        }
        SubgroupLattice { classes, index }
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h).copied()
    }

    /// Every subgroup (all conjugates), in canonical order.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut v: Vec<Subgroup> = self.index.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn cyclic_classes(&self) -> Vec<usize> {
        self.classes
            .iter()
            .filter(|c| c.cyclic)
            .map(|c| c.index)
            .collect()
    }
}

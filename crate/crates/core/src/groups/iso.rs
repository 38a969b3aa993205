use super::Group;

fn centralizer_sizes(g: &Group) -> Vec<usize> {
    (0..g.order())
        .map(|x| {
            (0..g.order())
                .filter(|&y| g.mul(x, y) == g.mul(y, x))
                .count()
        })
        .collect()
}

fn signature(g: &Group, cent: &[usize]) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = (0..g.order()).map(|x| (g.elem_order(x), cent[x])).collect();
    v.sort_unstable();
    v
}

/// Extends the partial assignment `gens[..k] -> imgs` to the subgroup those
/// generators span; `None` if inconsistent or not injective.
fn extend_map(g: &Group, h: &Group, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

struct Search<'a> {
    g: &'a Group,
    h: &'a Group,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    imgs: Vec<usize>,
    found: Vec<Vec<usize>>,
    want_all: bool,
}

impl Search<'_> {
    fn run(&mut self, k: usize) {
        if !self.want_all && !self.found.is_empty() {
            return;
        }
        if k == self.gens.len() {
            if let Some(map) = extend_map(self.g, self.h, &self.gens, &self.imgs) {
                if map.iter().all(|&v| v != usize::MAX) {
                    self.found.push(map);
                }
            }
            return;
        }
        for i in 0..self.candidates[k].len() {
            let c = self.candidates[k][i];
            self.imgs.push(c);
            if extend_map(self.g, self.h, &self.gens[..=k], &self.imgs).is_some() {
                self.run(k + 1);
            }
            self.imgs.pop();
        }
    }
}

fn search(g: &Group, h: &Group, want_all: bool) -> Vec<Vec<usize>> {
    if g.order() != h.order() {
        return Vec::new();
    }
    let (cg, ch) = (centralizer_sizes(g), centralizer_sizes(h));
    if signature(g, &cg) != signature(h, &ch) {
        return Vec::new();
    }
    let gens = g.generators().to_vec();
    let candidates = gens
        .iter()
        .map(|&x| {
            (0..h.order())
                .filter(|&y| h.elem_order(y) == g.elem_order(x) && ch[y] == cg[x])
                .collect()
        })
        .collect();
    let mut s = Search {
        g,
        h,
        gens,
        candidates,
        imgs: Vec::new(),
        found: Vec::new(),
        want_all,
    };
    s.run(0);
    s.found
}

/// An isomorphism `G -> H` as an element map, if one exists.
pub fn is_isomorphic(g: &Group, h: &Group) -> Option<Vec<usize>> {
    search(g, h, false).into_iter().next()
}

pub fn all_isomorphisms(g: &Group, h: &Group) -> Vec<Vec<usize>> {
    search(g, h, true)
}

pub fn automorphisms(g: &Group) -> Vec<Vec<usize>> {
    search(g, g, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, is_homomorphism};

    #[test]
    fn d8_q8_not_isomorphic() {
        let d8 = build_group("D8").unwrap();
        let q8 = build_group("Q8").unwrap();
        assert!(is_isomorphic(&d8, &q8).is_none());
        let id = is_isomorphic(&d8, &d8).unwrap();
        assert!(is_homomorphism(&d8, &d8, &id));
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphisms(&build_group("D8").unwrap()).len(), 8);
        assert_eq!(automorphisms(&build_group("Q8").unwrap()).len(), 24);
        assert_eq!(automorphisms(&build_group("E4").unwrap()).len(), 6);
        assert_eq!(automorphisms(&build_group("C8").unwrap()).len(), 4);
        assert_eq!(automorphisms(&build_group("X3").unwrap()).len(), 432);
    }
}

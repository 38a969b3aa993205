use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Group, Subgroup};
use crate::error::{Error, Result};

/// A section `(T, S)` of a group together with the quotient `T/S`.
pub struct Section {
    pub t: Subgroup,
    pub s: Subgroup,
    pub quotient: Arc<Group>,
    /// `proj[x]` for `x` in `T`; `usize::MAX` elsewhere.
    pub proj: Vec<usize>,
    /// A preimage in `T` of each quotient element.
    pub lift: Vec<usize>,
}

impl Section {
    /// Preimage in `T` of a subset of the quotient.
    pub fn preimage(&self, parent_order: usize, v: &Subgroup) -> Subgroup {
        Subgroup::from_elements(
            parent_order,
            self.t.iter().filter(|&x| v.contains(self.proj[x])),
        )
    }

    /// Image of a subset of `T`.
    pub fn image(&self, u: &Subgroup) -> Subgroup {
        Subgroup::from_elements(self.quotient.order(), u.iter().map(|x| self.proj[x]))
    }
}

type SectionCache = Mutex<HashMap<(u64, Subgroup, Subgroup), Arc<Section>>>;

fn cache() -> &'static SectionCache {
    static CACHE: OnceLock<SectionCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The section `T/S` of `g`. `G/1` is `G` itself.
pub fn section(g: &Arc<Group>, t: &Subgroup, s: &Subgroup) -> Result<Arc<Section>> {
    let key = (g.id(), t.clone(), s.clone());
    if let Some(sec) = cache().lock().expect("section cache").get(&key) {
        return Ok(sec.clone());
    }
    if !g.is_subgroup(t) || !g.is_subgroup(s) || !s.is_subset(t) {
        return Err(Error::InvalidArgument(format!(
            "{}: ({t:?}, {s:?}) is not a pair of nested subgroups",
            g.name()
        )));
    }
    if !g.normalizes(t, s) {
        return Err(Error::NotNormal(format!("{s:?} in {t:?} of {}", g.name())));
    }
    let sec = if s.is_trivial() && t.order() == g.order() {
        Section {
            t: t.clone(),
            s: s.clone(),
            quotient: g.clone(),
            proj: (0..g.order()).collect(),
            lift: (0..g.order()).collect(),
        }
    } else {
        let mut proj = vec![usize::MAX; g.order()];
        let mut lift = Vec::new();
        for x in t.iter() {
            if proj[x] != usize::MAX {
                continue;
            }
            let c = lift.len();
            lift.push(x);
            for y in s.iter() {
                proj[g.mul(x, y)] = c;
            }
        }
        let m = lift.len();
        let mut table = vec![0u16; m * m];
        for a in 0..m {
            for b in 0..m {
                table[a * m + b] = proj[g.mul(lift[a], lift[b])] as u16;
            }
        }
        let name = format!("{}[{}/{}]", g.name(), t.order(), s.order());
        Section {
            t: t.clone(),
            s: s.clone(),
            quotient: Arc::new(Group::from_table(name, table)?),
            proj,
            lift,
        }
    };
    let sec = Arc::new(sec);
    let mut c = cache().lock().expect("section cache");
    Ok(c.entry(key).or_insert(sec).clone())
}

/// `G/N` for a normal subgroup `N`.
pub fn quotient(g: &Arc<Group>, n: &Subgroup) -> Result<Arc<Section>> {
    section(g, &g.whole(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_group, is_homomorphism, is_isomorphic};

    #[test]
    fn d8_mod_center_is_klein() {
        let d8 = build_group("D8").unwrap();
        let q = quotient(&d8, &d8.center()).unwrap();
        assert!(is_isomorphic(&q.quotient, &build_group("E4").unwrap()).is_some());
        assert!(is_homomorphism(&d8, &q.quotient, &q.proj));
    }

    #[test]
    fn trivial_quotient_is_same_group() {
        let d16 = build_group("D16").unwrap();
        let q = quotient(&d16, &d16.trivial_subgroup()).unwrap();
        assert!(Arc::ptr_eq(&q.quotient, &d16));
    }

    #[test]
    fn index_two_and_non_normal() {
        let d16 = build_group("D16").unwrap();
        let c8 = d16
            .classes()
            .into_iter()
            .find(|c| c.rep.order() == 8 && d16.is_cyclic_subgroup(&c.rep))
            .unwrap()
            .rep;
        assert_eq!(quotient(&d16, &c8).unwrap().quotient.order(), 2);
        let refl = d16
            .classes()
            .into_iter()
            .find(|c| c.rep.order() == 2 && c.size > 1)
            .unwrap()
            .rep;
        assert!(matches!(quotient(&d16, &refl), Err(Error::NotNormal(_))));
    }

    #[test]
    fn third_isomorphism_theorem_on_d16() {
        let d16 = build_group("D16").unwrap();
        let normals = d16.normal_subgroups();
        for n in &normals {
            for m in &normals {
                if !n.is_subset(m) {
                    continue;
                }
                let gn = quotient(&d16, n).unwrap();
                let mn = gn.image(m);
                let twice = quotient(&gn.quotient, &mn).unwrap();
                let once = quotient(&d16, m).unwrap();
                assert!(is_isomorphic(&twice.quotient, &once.quotient).is_some());
            }
        }
    }
}

use std::cmp::Ordering;
use std::fmt;

/// A subset of the elements of a group, stored as a bitset over element
/// indices. Used for subgroups, but also for cosets and other element sets.
///
/// The ordering is the canonical key used everywhere for basis indexing:
/// first by cardinality, then lexicographically by the sorted member list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    words: Box<[u64]>,
    order: u32,
}

impl Subgroup {
    pub fn empty(universe: usize) -> Self {
        Subgroup {
            words: vec![0u64; universe.div_ceil(64).max(1)].into_boxed_slice(),
            order: 0,
        }
    }

    pub fn trivial(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(0);
        s
    }

    pub fn full(universe: usize) -> Self {
        Self::from_elements(universe, 0..universe)
    }

    pub fn from_elements(universe: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for x in elems {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x / 64, x % 64);
        let fresh = self.words[w] & (1u64 << b) == 0;
        if fresh {
            self.words[w] |= 1u64 << b;
            self.order += 1;
        }
        fresh
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        let w = x / 64;
        w < self.words.len() && self.words[w] & (1u64 << (x % 64)) != 0
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.order <= other.order
            && self
                .words
                .iter()
                .zip(other.words.iter())
                .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let words: Box<[u64]> = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a & b)
            .collect();
        let order = words.iter().map(|w| w.count_ones()).sum();
        Subgroup { words, order }
    }

    pub fn union(&self, other: &Subgroup) -> Subgroup {
        let words: Box<[u64]> = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| a | b)
            .collect();
        let order = words.iter().map(|w| w.count_ones()).sum();
        Subgroup { words, order }
    }

    /// Smallest element index, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.order.cmp(&other.order) {
            Ordering::Equal => {}
            o => return o,
        }
        // Equal sizes: the set owning the lowest differing element sorts first.
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            let diff = a ^ b;
            if diff != 0 {
                let bit = diff & diff.wrapping_neg();
                return if a & bit != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.words.len().cmp(&other.words.len())
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

use crate::error::{Error, Result};

/// A finite poset given by its order relation.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    pub fn new(leq: Vec<Vec<bool>>) -> Result<FinitePoset> {
        let n = leq.len();
        if leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(
                "order relation is not square".into(),
            ));
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(Error::InvalidArgument(format!("not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::InvalidArgument(format!(
                        "not antisymmetric at {a}, {b}"
                    )));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(Error::InvalidArgument(format!(
                            "not transitive at {a}, {b}, {c}"
                        )));
                    }
                }
            }
        }
        Ok(FinitePoset { leq })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Result<FinitePoset> {
        FinitePoset::new((0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// `mu(a, b)` from the recursion `sum_{a <= c <= b} mu(a, c) = 0` for `a < b`.
    pub fn mobius(&self, a: usize, b: usize) -> Result<i64> {
        if !self.leq[a][b] {
            return Err(Error::InvalidArgument(format!("{a} is not below {b}")));
        }
        Ok(self.mobius_from(a)[b])
    }

    /// `mu(a, x)` for all `x` (zero where `a` is not below `x`).
    pub fn mobius_from(&self, a: usize) -> Vec<i64> {
        let n = self.len();
        let mut interval: Vec<usize> = (0..n).filter(|&x| self.leq[a][x]).collect();
        // linear extension: fewer elements below first
        interval.sort_by_key(|&x| (0..n).filter(|&y| self.leq[y][x]).count());
        let mut mu = vec![0i64; n];
        for &x in &interval {
            mu[x] = if x == a {
                1
            } else {
                -interval
                    .iter()
                    .filter(|&&c| c != x && self.leq[c][x])
                    .map(|&c| mu[c])
                    .sum::<i64>()
            };
        }
        mu
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_boolean() {
        let chain = FinitePoset::from_fn(2, |a, b| a <= b).unwrap();
        assert_eq!(chain.mobius(0, 1).unwrap(), -1);
        assert!(chain.mobius(1, 0).is_err());
        // subsets of {0,1,2}
        let cube = FinitePoset::from_fn(8, |a, b| a & !b == 0).unwrap();
        assert_eq!(cube.mobius(0, 7).unwrap(), -1);
        assert_eq!(cube.mobius(1, 3).unwrap(), -1);
        assert!(FinitePoset::from_fn(2, |_, _| true).is_err());
    }
}

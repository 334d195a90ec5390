use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A finite set of positive dimensions. Acts on every structure by reversing
/// source and target in the listed dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimSet(BTreeSet<usize>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimSetError {
    #[error("dimension 0 cannot be reversed; dimensions start at 1")]
    Zero,
    #[error("invalid dimension list `{0}`")]
    Syntax(String),
}

impl DimSet {
    pub fn empty() -> Self {
        DimSet(BTreeSet::new())
    }

    pub fn new(dims: impl IntoIterator<Item = usize>) -> Result<Self, DimSetError> {
        let set: BTreeSet<usize> = dims.into_iter().collect();
        if set.contains(&0) {
            return Err(DimSetError::Zero);
        }
        Ok(DimSet(set))
    }

    /// Panics on 0; for literals in code and tests.
    pub fn of(dims: &[usize]) -> Self {
        DimSet::new(dims.iter().copied()).expect("dimensions are positive")
    }

    pub fn contains(&self, n: usize) -> bool {
        self.0.contains(&n)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// `w - 1 = { n >= 1 | n + 1 in w }`
    pub fn minus_one(&self) -> DimSet {
        DimSet(self.0.iter().filter(|&&n| n >= 2).map(|n| n - 1).collect())
    }

    /// Group operation: symmetric difference.
    pub fn compose(&self, other: &DimSet) -> DimSet {
        DimSet(self.0.symmetric_difference(&other.0).copied().collect())
    }

    /// All subsets of `{1, ..., k}`, smallest first.
    pub fn subsets_upto(k: usize) -> Vec<DimSet> {
        (0u32..(1 << k))
            .map(|mask| DimSet((1..=k).filter(|i| mask & (1 << (i - 1)) != 0).collect()))
            .collect()
    }
}

impl fmt::Display for DimSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

/// Parses `1,3` or `{1,3}`; the empty string is the empty set.
impl FromStr for DimSet {
    type Err = DimSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if inner.is_empty() {
            return Ok(DimSet::empty());
        }
        let dims = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| DimSetError::Syntax(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        DimSet::new(dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minus_one_shifts_down_and_drops_one() {
        assert_eq!(DimSet::of(&[1, 2, 4]).minus_one(), DimSet::of(&[1, 3]));
        assert_eq!(DimSet::of(&[1]).minus_one(), DimSet::empty());
    }

    #[test]
    fn compose_is_symmetric_difference() {
        let a = DimSet::of(&[1, 2]);
        let b = DimSet::of(&[2, 3]);
        assert_eq!(a.compose(&b), DimSet::of(&[1, 3]));
        assert_eq!(a.compose(&a), DimSet::empty());
    }

    #[test]
    fn subsets_of_three() {
        let all = DimSet::subsets_upto(3);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], DimSet::empty());
        assert!(all.contains(&DimSet::of(&[1, 3])));
    }

    #[test]
    fn parse_and_print() {
        let w: DimSet = "1,3".parse().unwrap();
        assert_eq!(w.to_string(), "{1,3}");
        assert_eq!("{1,3}".parse::<DimSet>().unwrap(), w);
        assert_eq!("".parse::<DimSet>().unwrap(), DimSet::empty());
        assert_eq!("0".parse::<DimSet>(), Err(DimSetError::Zero));
        assert!("x".parse::<DimSet>().is_err());
    }
}

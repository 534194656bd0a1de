//! Finite subsets of an index set with the symmetric-difference metric.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HammingPoint {
    support: BTreeSet<u64>,
}

impl HammingPoint {
    pub fn new(support: impl IntoIterator<Item = u64>) -> Self {
        HammingPoint {
            support: support.into_iter().collect(),
        }
    }

    pub fn support(&self) -> &BTreeSet<u64> {
        &self.support
    }
}

impl fmt::Display for HammingPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `|f △ g|`
pub fn hamming_distance(f: &HammingPoint, g: &HammingPoint) -> u64 {
    f.support.symmetric_difference(&g.support).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = |xs: &[u64]| HammingPoint::new(xs.iter().copied());
        assert_eq!(hamming_distance(&p(&[1, 2]), &p(&[2, 3])), 2);
        assert_eq!(hamming_distance(&p(&[4, 5]), &p(&[4, 5])), 0);
        assert_eq!(hamming_distance(&p(&[]), &p(&[1, 2, 3])), 3);
        assert_eq!(p(&[3, 1]).to_string(), "{1,3}");
    }
}

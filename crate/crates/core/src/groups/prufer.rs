//! Subgroups of the Prüfer group ℤ_{p^∞}: the chain `H₀ < H₁ < …` plus the whole group.

use std::fmt;

use num_bigint::BigUint;
use num_traits::pow;

use crate::error::{Error, Result};
use crate::groups::finite::is_prime;
use crate::lattice::ExtNat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PruferLevel {
    /// `H_n`, of order `pⁿ`.
    Finite(u32),
    Whole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PruferSubgroup {
    prime: u64,
    level: PruferLevel,
}

impl PruferSubgroup {
    pub fn new(prime: u64, level: PruferLevel) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidGroup(format!("{prime} is not prime")));
        }
        Ok(PruferSubgroup { prime, level })
    }

    pub fn finite(prime: u64, n: u32) -> Result<Self> {
        Self::new(prime, PruferLevel::Finite(n))
    }

    pub fn whole(prime: u64) -> Result<Self> {
        Self::new(prime, PruferLevel::Whole)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn level(&self) -> PruferLevel {
        self.level
    }

    pub fn order(&self) -> ExtNat {
        match self.level {
            PruferLevel::Finite(n) => ExtNat::finite(pow(BigUint::from(self.prime), n as usize)),
            PruferLevel::Whole => ExtNat::Infinity,
        }
    }
}

impl fmt::Display for PruferSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            PruferLevel::Finite(n) => write!(f, "H_{n}@{}", self.prime),
            PruferLevel::Whole => write!(f, "whole@{}", self.prime),
        }
    }
}

/// `p^{|i−j|}` between finite levels; the whole group is commensurable only with itself.
pub fn prufer_log_distance(a: &PruferSubgroup, b: &PruferSubgroup) -> Result<ExtNat> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime, b.prime));
    }
    Ok(match (a.level, b.level) {
        (PruferLevel::Finite(i), PruferLevel::Finite(j)) => {
            ExtNat::finite(pow(BigUint::from(a.prime), i.abs_diff(j) as usize))
        }
        (PruferLevel::Whole, PruferLevel::Whole) => ExtNat::one(),
        _ => ExtNat::Infinity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        let h = |n| PruferSubgroup::finite(2, n).unwrap();
        assert_eq!(prufer_log_distance(&h(3), &h(5)).unwrap(), ExtNat::from(4));
        assert_eq!(prufer_log_distance(&h(4), &h(4)).unwrap(), ExtNat::one());
        let w = PruferSubgroup::whole(2).unwrap();
        assert_eq!(prufer_log_distance(&w, &h(7)).unwrap(), ExtNat::Infinity);
        assert_eq!(prufer_log_distance(&w, &w).unwrap(), ExtNat::one());
        let q = PruferSubgroup::finite(3, 1).unwrap();
        assert_eq!(
            prufer_log_distance(&h(1), &q),
            Err(Error::PrimeMismatch(2, 3))
        );
    }

    #[test]
    fn validation_and_display() {
        assert!(PruferSubgroup::finite(4, 1).is_err());
        assert_eq!(PruferSubgroup::finite(2, 3).unwrap().to_string(), "H_3@2");
        assert_eq!(PruferSubgroup::whole(5).unwrap().to_string(), "whole@5");
        assert_eq!(
            PruferSubgroup::finite(3, 2).unwrap().order(),
            ExtNat::from(9)
        );
    }
}

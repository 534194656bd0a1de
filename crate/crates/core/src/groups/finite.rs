//! Finite abelian groups `Z(m₁) ⊕ … ⊕ Z(m_k)` and their subgroups.
//!
//! A subgroup is stored as its preimage ("lift") in ℤᵏ, an intermediate
//! lattice `diag(m)·ℤᵏ ⊆ lift ⊆ ℤᵏ`. All subgroup arithmetic is then lattice
//! arithmetic, and equal subgroups have identical lifts.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::lattice::{ExtNat, Lattice};

pub type Element = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    /// Invariant factors `m₁ | m₂ | … | m_k`, each at least 2. An empty list is the trivial group.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if let Some(&m) = invariant_factors.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidGroup(format!(
                "invariant factor {m} is below 2"
            )));
        }
        for w in invariant_factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "invariant factors must form a divisibility chain: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        let g = FiniteAbelianGroup {
            factors: invariant_factors,
        };
        g.factors
            .iter()
            .try_fold(1u64, |acc, &m| acc.checked_mul(m))
            .ok_or_else(|| Error::InvalidGroup("order does not fit in 64 bits".into()))?;
        Ok(g)
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    /// `Z(p)^(r)`
    pub fn elementary(p: u64, r: usize) -> Result<Self> {
        Self::new(vec![p; r])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of cyclic factors `k`; elements are `k`-tuples.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> Element {
        vec![0; self.rank()]
    }

    pub fn check_element(&self, x: &[u64]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::ElementOutOfRange(format!(
                "{x:?} has {} coordinates, group has {}",
                x.len(),
                self.rank()
            )));
        }
        if let Some((i, (&v, &m))) = x
            .iter()
            .zip(&self.factors)
            .enumerate()
            .find(|(_, (&v, &m))| v >= m)
        {
            return Err(Error::ElementOutOfRange(format!(
                "coordinate {i} of {x:?} is {v}, must be below {m}"
            )));
        }
        Ok(())
    }

    /// Reduces arbitrary integer coordinates into range.
    pub fn normalize(&self, x: &[i64]) -> Result<Element> {
        if x.len() != self.rank() {
            return Err(Error::ElementOutOfRange(format!(
                "{x:?} has {} coordinates, group has {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(x.iter()
            .zip(&self.factors)
            .map(|(&v, &m)| v.rem_euclid(m as i64) as u64)
            .collect())
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Element {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &m)| (m - x) % m)
            .collect()
    }

    /// All elements, in mixed-radix order with the last coordinate fastest.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let n = self.order();
        (0..n).map(move |mut idx| {
            let mut e = vec![0; self.rank()];
            for (slot, &m) in e.iter_mut().zip(&self.factors).rev() {
                *slot = idx % m;
                idx /= m;
            }
            e
        })
    }

    /// Additive order of an element.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.factors)
            .map(|(&v, &m)| m / v.gcd(&m))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// The lattice `diag(m₁, …, m_k)·ℤᵏ` of relations.
    pub fn relation_lattice(&self) -> Lattice {
        let rows: Vec<Vec<i64>> = (0..self.rank())
            .map(|i| {
                let mut r = vec![0i64; self.rank()];
                r[i] = self.factors[i] as i64;
                r
            })
            .collect();
        Lattice::from_i64_rows(self.rank(), &rows).expect("diagonal relations")
    }

    /// The single prime dividing every factor, if this is a non-trivial p-group.
    pub fn p_group_prime(&self) -> Option<u64> {
        let exp = self.exponent();
        if exp < 2 {
            return None;
        }
        let p = smallest_prime_factor(exp);
        let mut e = exp;
        while e.is_multiple_of(p) {
            e /= p;
        }
        (e == 1).then_some(p)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z({m})")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// A subgroup of a [`FiniteAbelianGroup`], via its lift to ℤᵏ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FagSubgroup {
    parent: FiniteAbelianGroup,
    lift: Lattice,
}

impl FagSubgroup {
    /// The subgroup generated by `gens`.
    pub fn from_elements(parent: &FiniteAbelianGroup, gens: &[Element]) -> Result<Self> {
        for g in gens {
            parent.check_element(g)?;
        }
        let k = parent.rank();
        let mut rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        rows.extend(parent.relation_lattice().basis().to_rows());
        let lift = Lattice::from_generators(k, &IntMatrix::from_rows_with_cols(&rows, k)?)?;
        Ok(FagSubgroup {
            parent: parent.clone(),
            lift,
        })
    }

    pub fn trivial(parent: &FiniteAbelianGroup) -> Self {
        FagSubgroup {
            parent: parent.clone(),
            lift: parent.relation_lattice(),
        }
    }

    pub fn whole(parent: &FiniteAbelianGroup) -> Self {
        FagSubgroup {
            parent: parent.clone(),
            lift: Lattice::full(parent.rank()),
        }
    }

    /// Checks `diag(m)·ℤᵏ ⊆ lift ⊆ ℤᵏ`.
    pub fn from_lift(parent: &FiniteAbelianGroup, lift: Lattice) -> Result<Self> {
        if lift.ambient() != parent.rank() {
            return Err(Error::DimensionMismatch {
                expected: parent.rank(),
                got: lift.ambient(),
            });
        }
        if !parent.relation_lattice().is_subgroup_of(&lift)? {
            return Err(Error::NotASubgroup(format!(
                "{lift} does not contain the relations of {parent}"
            )));
        }
        Ok(FagSubgroup {
            parent: parent.clone(),
            lift,
        })
    }

    pub fn parent(&self) -> &FiniteAbelianGroup {
        &self.parent
    }

    pub fn lift(&self) -> &Lattice {
        &self.lift
    }

    pub fn order(&self) -> u64 {
        let idx = self
            .lift
            .index_in(&Lattice::full(self.parent.rank()))
            .expect("lift lies in Z^k")
            .to_u64()
            .expect("lift has finite index");
        self.parent.order() / idx
    }

    pub fn contains(&self, x: &[u64]) -> Result<bool> {
        self.parent.check_element(x)?;
        let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        self.lift.member(&v)
    }

    pub fn elements(&self) -> Vec<Element> {
        self.parent
            .elements()
            .filter(|e| self.contains(e).expect("valid element"))
            .collect()
    }

    /// A generating set read off the HNF of the lift, zero elements dropped.
    pub fn generators(&self) -> Vec<Element> {
        let mut out = Vec::new();
        for r in self.lift.basis().row_iter() {
            let e: Element = r
                .iter()
                .zip(self.parent.factors())
                .map(|(x, &m)| {
                    let m = BigInt::from(m);
                    x.mod_floor(&m).to_u64().expect("reduced coordinate")
                })
                .collect();
            if e.iter().any(|&c| c != 0) {
                out.push(e);
            }
        }
        out
    }

    fn check_parent(&self, other: &FagSubgroup) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    pub fn intersection(&self, other: &FagSubgroup) -> Result<FagSubgroup> {
        self.check_parent(other)?;
        Ok(FagSubgroup {
            parent: self.parent.clone(),
            lift: self.lift.intersection(&other.lift)?,
        })
    }

    pub fn sum(&self, other: &FagSubgroup) -> Result<FagSubgroup> {
        self.check_parent(other)?;
        Ok(FagSubgroup {
            parent: self.parent.clone(),
            lift: self.lift.sum(&other.lift)?,
        })
    }

    pub fn is_subgroup_of(&self, other: &FagSubgroup) -> Result<bool> {
        self.check_parent(other)?;
        self.lift.is_subgroup_of(&other.lift)
    }

    /// `|sup : self|`, requiring `self ≤ sup`.
    pub fn index_in(&self, sup: &FagSubgroup) -> Result<u64> {
        self.check_parent(sup)?;
        Ok(self
            .lift
            .index_in(&sup.lift)?
            .to_u64()
            .expect("finite index inside a finite group"))
    }
}

impl fmt::Display for FagSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| {
                if g.len() == 1 {
                    g[0].to_string()
                } else {
                    let parts: Vec<String> = g.iter().map(u64::to_string).collect();
                    format!("({})", parts.join(","))
                }
            })
            .collect();
        write!(f, "gen{{{}}}", gens.join(","))
    }
}

/// μ′(A, B) = max(|A : A∩B|, |B : A∩B|); always finite in a finite group.
pub fn fag_log_distance(a: &FagSubgroup, b: &FagSubgroup) -> Result<ExtNat> {
    a.check_parent(b)?;
    a.lift.log_subgroup_distance(&b.lift)
}

/// Every subgroup, found by adjoining one element at a time starting from `{0}`.
pub fn all_subgroups(g: &FiniteAbelianGroup) -> Vec<FagSubgroup> {
    let elements: Vec<Element> = g.elements().collect();
    let start = FagSubgroup::trivial(g);
    let mut seen: HashSet<Lattice> = HashSet::from([start.lift.clone()]);
    let mut out = vec![start];
    let mut i = 0;
    while i < out.len() {
        let current = out[i].clone();
        for e in &elements {
            if current.contains(e).expect("valid element") {
                continue;
            }
            let cyclic = FagSubgroup::from_elements(g, std::slice::from_ref(e)).expect("valid");
            let next = current.sum(&cyclic).expect("same parent");
            if seen.insert(next.lift.clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

/// All cyclic subgroups `⟨g⟩`, deduplicated, in order of first generator.
pub fn cyclic_subgroups(g: &FiniteAbelianGroup) -> Vec<FagSubgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for e in g.elements() {
        let c = FagSubgroup::from_elements(g, &[e]).expect("valid element");
        if seen.insert(c.lift.clone()) {
            out.push(c);
        }
    }
    out
}

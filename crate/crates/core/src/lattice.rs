//! Subgroups of ℤⁿ as canonical lattices, and the commensurability distance.
//!
//! A [`Lattice`] always stores its basis in row-HNF, so two lattices are equal
//! exactly when their bases are bit-identical. Indices and the distance
//! argument μ′ are carried as exact [`ExtNat`] values; logarithms are only
//! taken when a value is displayed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmat::{self, IntMatrix, SmithDecomposition};
use crate::json::{bigint_value, biguint_value, value_bigint, value_usize};

/// ℕ≥1 ∪ {∞}: subgroup indices and the exponentiated distance μ′.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(BigUint),
    Infinity,
}

impl ExtNat {
    /// Panics if `v` is zero.
    pub fn finite(v: impl Into<BigUint>) -> Self {
        let v = v.into();
        assert!(!v.is_zero(), "ExtNat values are at least 1");
        ExtNat::Finite(v)
    }

    pub fn one() -> Self {
        ExtNat::Finite(BigUint::one())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinity => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.as_finite().and_then(ToPrimitive::to_u64)
    }

    /// `log_base(self)`; `+∞` for [`ExtNat::Infinity`].
    pub fn log(&self, base: f64) -> f64 {
        match self {
            ExtNat::Infinity => f64::INFINITY,
            ExtNat::Finite(v) => ln_biguint(v) / base.ln(),
        }
    }

    /// Exact value as JSON: an integer, or the string `"inf"`.
    pub fn to_json(&self) -> Value {
        match self {
            ExtNat::Finite(v) => biguint_value(v),
            ExtNat::Infinity => Value::from("inf"),
        }
    }
}

fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().unwrap_or(1.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
            (ExtNat::Finite(_), ExtNat::Infinity) => Ordering::Less,
            (ExtNat::Infinity, ExtNat::Finite(_)) => Ordering::Greater,
            (ExtNat::Infinity, ExtNat::Infinity) => Ordering::Equal,
        }
    }
}

impl Mul for &ExtNat {
    type Output = ExtNat;

    fn mul(self, rhs: &ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => ExtNat::Finite(a * b),
            _ => ExtNat::Infinity,
        }
    }
}

impl Mul for ExtNat {
    type Output = ExtNat;

    fn mul(self, rhs: ExtNat) -> ExtNat {
        &self * &rhs
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        ExtNat::finite(v)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinity => write!(f, "inf"),
        }
    }
}

/// A subgroup of ℤⁿ, stored by its canonical row-HNF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Lattice {
    /// The subgroup generated by the rows of `gens`.
    pub fn from_generators(ambient: usize, gens: &IntMatrix) -> Result<Self> {
        if gens.cols() != ambient && !(gens.rows() == 0 && gens.cols() == 0) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: gens.cols(),
            });
        }
        let gens = if gens.cols() == ambient {
            gens.clone()
        } else {
            IntMatrix::zeros(0, ambient)
        };
        Ok(Lattice {
            ambient,
            basis: exactmat::row_hnf(&gens),
        })
    }

    pub fn from_i64_rows(ambient: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_generators(ambient, &IntMatrix::from_rows_with_cols(rows, ambient)?)
    }

    /// `{0} ≤ ℤⁿ`.
    pub fn trivial(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::zeros(0, ambient),
        }
    }

    /// ℤⁿ itself.
    pub fn full(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    /// `kℤ ≤ ℤ` (k = 0 gives the trivial subgroup).
    pub fn multiples(k: impl Into<BigInt>) -> Self {
        let k: BigInt = k.into();
        Self::from_generators(1, &IntMatrix::new(1, 1, vec![k]).expect("1x1")).expect("ambient 1")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// For a subgroup of ℤ: the non-negative generator `k` of `kℤ`.
    pub fn cyclic_generator(&self) -> Option<BigInt> {
        (self.ambient == 1).then(|| {
            if self.rank() == 0 {
                BigInt::zero()
            } else {
                self.basis.get(0, 0).clone()
            }
        })
    }

    fn check_ambient(&self, other: &Lattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        Ok(())
    }

    pub fn member(&self, x: &[BigInt]) -> Result<bool> {
        if x.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: x.len(),
            });
        }
        if self.rank() == 0 {
            return Ok(x.iter().all(Zero::is_zero));
        }
        Ok(exactmat::solve_integer(&self.basis, x)?.is_some())
    }

    /// Coordinates of `x` in this lattice's basis (unique, since the rows are independent).
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if self.rank() == 0 {
            if x.len() != self.ambient {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient,
                    got: x.len(),
                });
            }
            return Ok(x.iter().all(Zero::is_zero).then(Vec::new));
        }
        exactmat::solve_integer(&self.basis, x)
    }

    pub fn is_subgroup_of(&self, other: &Lattice) -> Result<bool> {
        self.check_ambient(other)?;
        for r in self.basis.row_iter() {
            if !other.member(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        Ok(Lattice {
            ambient: self.ambient,
            basis: exactmat::row_hnf(&self.basis.stack(&other.basis)?),
        })
    }

    /// `A ∩ B` from the integer kernel of the stacked bases: every relation
    /// `c_A·A + c_B·B = 0` yields the common point `c_A·A`.
    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        self.check_ambient(other)?;
        if self.rank() == 0 || other.rank() == 0 {
            return Ok(Lattice::trivial(self.ambient));
        }
        let stacked = self.basis.stack(&other.basis)?;
        let kernel = exactmat::left_kernel(&stacked);
        let ra = self.rank();
        let mut points = Vec::with_capacity(kernel.rows());
        for k in kernel.row_iter() {
            points.push(self.basis.left_mul_vec(&k[..ra])?);
        }
        let gens = IntMatrix::from_rows_with_cols(&points, self.ambient)?;
        Lattice::from_generators(self.ambient, &gens)
    }

    /// `|sup : self|`, requiring `self ⊆ sup`.
    pub fn index_in(&self, sup: &Lattice) -> Result<ExtNat> {
        self.check_ambient(sup)?;
        let mut coords = Vec::with_capacity(self.rank());
        for r in self.basis.row_iter() {
            match sup.coordinates(r)? {
                Some(c) => coords.push(c),
                None => {
                    return Err(Error::NotASubgroup(format!(
                        "row {} of {} is not in {}",
                        IntMatrix::from_rows(&[r.to_vec()])?,
                        self.basis,
                        sup.basis
                    )))
                }
            }
        }
        if self.rank() < sup.rank() {
            return Ok(ExtNat::Infinity);
        }
        if self.rank() == 0 {
            return Ok(ExtNat::one());
        }
        let c = IntMatrix::from_rows_with_cols(&coords, sup.rank())?;
        let product = exactmat::snf(&c)
            .into_iter()
            .fold(BigInt::one(), |acc, d| acc * d);
        let v = product
            .abs()
            .to_biguint()
            .expect("absolute value is non-negative");
        Ok(ExtNat::finite(v))
    }

    /// The pure closure `{x : mx ∈ H for some m ≠ 0}`: with `basis = L·diag·R`
    /// from the Smith form, the first `rank` rows of `R` span it.
    pub fn saturation(&self) -> Lattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let s = SmithDecomposition::compute(&self.basis);
        let rows = s.right_inverse.select_rows(0..self.rank());
        Lattice {
            ambient: self.ambient,
            basis: exactmat::row_hnf(&rows),
        }
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    pub fn commensurable(&self, other: &Lattice) -> Result<bool> {
        Ok(self.log_subgroup_distance(other)?.is_finite())
    }

    /// μ′(A, B) = max(|A : A∩B|, |B : A∩B|), infinite iff not commensurable.
    pub fn log_subgroup_distance(&self, other: &Lattice) -> Result<ExtNat> {
        let meet = self.intersection(other)?;
        let a = meet.index_in(self)?;
        let b = meet.index_in(other)?;
        Ok(a.max(b))
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .basis
            .row_iter()
            .map(|r| Value::Array(r.iter().map(bigint_value).collect()))
            .collect();
        json!({ "ambient": self.ambient, "basis": basis })
    }

    /// Accepts any generating set under `"basis"`; the result is canonicalized.
    pub fn from_json(v: &Value) -> Result<Self> {
        let ambient = value_usize(
            v.get("ambient")
                .ok_or_else(|| Error::Parse("lattice: missing \"ambient\"".into()))?,
            "ambient",
        )?;
        let rows = v
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("lattice: missing \"basis\" array".into()))?;
        let mut parsed = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r
                .as_array()
                .ok_or_else(|| Error::Parse("lattice: basis rows must be arrays".into()))?;
            parsed.push(r.iter().map(value_bigint).collect::<Result<Vec<_>>>()?);
        }
        Lattice::from_generators(ambient, &IntMatrix::from_rows_with_cols(&parsed, ambient)?)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span[")?;
        for (i, r) in self.basis.row_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::int_vec;

    fn lat(n: usize, rows: &[&[i64]]) -> Lattice {
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Lattice::from_i64_rows(n, &v).unwrap()
    }

    #[test]
    fn construction_examples() {
        assert_eq!(lat(1, &[&[6], &[4]]), Lattice::multiples(2));
        assert_eq!(
            lat(2, &[&[2, 4]]).basis().to_i64_rows().unwrap(),
            vec![vec![2, 4]]
        );
        assert_eq!(lat(2, &[]).rank(), 0);
        assert!(matches!(
            Lattice::from_i64_rows(2, &[vec![1, 2, 3]]),
            Err(Error::Ragged { .. })
        ));
    }

    #[test]
    fn membership() {
        let l = lat(2, &[&[2, 0], &[0, 4]]);
        assert!(l.member(&int_vec(&[4, 4])).unwrap());
        assert!(!l.member(&int_vec(&[1, 0])).unwrap());
        assert!(Lattice::trivial(2).member(&int_vec(&[0, 0])).unwrap());
        assert!(!Lattice::trivial(2).member(&int_vec(&[0, 1])).unwrap());
        assert!(l.member(&int_vec(&[1])).is_err());
    }

    #[test]
    fn sums() {
        let s = |a: i64, b: i64| Lattice::multiples(a).sum(&Lattice::multiples(b)).unwrap();
        assert_eq!(s(2, 3), Lattice::full(1));
        assert_eq!(s(2, 4), Lattice::multiples(2));
        assert_eq!(
            lat(2, &[&[2, 0]]).sum(&lat(2, &[&[0, 3]])).unwrap(),
            lat(2, &[&[2, 0], &[0, 3]])
        );
        assert!(Lattice::full(1).sum(&Lattice::full(2)).is_err());
    }

    #[test]
    fn intersections() {
        assert_eq!(
            Lattice::multiples(2)
                .intersection(&Lattice::multiples(3))
                .unwrap(),
            Lattice::multiples(6)
        );
        let a = lat(2, &[&[2, 0], &[0, 1]]);
        let b = lat(2, &[&[1, 0], &[0, 2]]);
        assert_eq!(a.intersection(&b).unwrap(), lat(2, &[&[2, 0], &[0, 2]]));
        assert_eq!(a.intersection(&a).unwrap(), a);
        let x = lat(2, &[&[1, 0]]);
        let y = lat(2, &[&[0, 1]]);
        assert_eq!(x.intersection(&y).unwrap(), Lattice::trivial(2));
    }

    #[test]
    fn indices() {
        assert_eq!(
            Lattice::multiples(6)
                .index_in(&Lattice::multiples(2))
                .unwrap(),
            ExtNat::from(3)
        );
        assert_eq!(
            lat(2, &[&[2, 0], &[0, 4]])
                .index_in(&Lattice::full(2))
                .unwrap(),
            ExtNat::from(8)
        );
        assert_eq!(
            Lattice::trivial(1).index_in(&Lattice::full(1)).unwrap(),
            ExtNat::Infinity
        );
        assert!(matches!(
            Lattice::multiples(2).index_in(&Lattice::multiples(6)),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(lat(2, &[&[2, 4]]).saturation(), lat(2, &[&[1, 2]]));
        assert_eq!(lat(2, &[&[1, 2]]).saturation(), lat(2, &[&[1, 2]]));
        assert_eq!(Lattice::trivial(3).saturation(), Lattice::trivial(3));
        assert_eq!(lat(2, &[&[2, 0], &[0, 4]]).saturation(), Lattice::full(2));
        assert_eq!(
            lat(3, &[&[2, 2, 0], &[0, 3, 3]]).saturation(),
            lat(3, &[&[1, 1, 0], &[0, 1, 1]])
        );
    }

    #[test]
    fn commensurability_and_distance() {
        let two = Lattice::multiples(2);
        let three = Lattice::multiples(3);
        assert!(two.commensurable(&three).unwrap());
        assert!(!lat(2, &[&[1, 0]])
            .commensurable(&lat(2, &[&[0, 1]]))
            .unwrap());
        assert!(two.commensurable(&two).unwrap());
        assert_eq!(two.log_subgroup_distance(&three).unwrap(), ExtNat::from(3));
        let a = lat(2, &[&[2, 0], &[0, 1]]);
        let b = lat(2, &[&[1, 0], &[0, 2]]);
        assert_eq!(a.log_subgroup_distance(&b).unwrap(), ExtNat::from(2));
        assert_eq!(a.log_subgroup_distance(&a).unwrap(), ExtNat::one());
        assert_eq!(
            Lattice::trivial(1).log_subgroup_distance(&two).unwrap(),
            ExtNat::Infinity
        );
    }

    #[test]
    fn extnat_arithmetic_and_display() {
        let three = ExtNat::from(3);
        assert_eq!(&three * &ExtNat::from(4), ExtNat::from(12));
        assert_eq!(&three * &ExtNat::Infinity, ExtNat::Infinity);
        assert!(three < ExtNat::Infinity);
        assert!((three.log(std::f64::consts::E) - 3f64.ln()).abs() < 1e-12);
        assert_eq!(ExtNat::one().log(2.0), 0.0);
        assert_eq!(ExtNat::Infinity.to_json(), Value::from("inf"));
        assert_eq!(three.to_json().to_string(), "3");
        let huge = ExtNat::Finite(BigUint::one() << 2000u32);
        assert!((huge.log(2.0) - 2000.0).abs() < 1e-6);
    }

    #[test]
    fn json_canonicalizes_on_load() {
        let v = json!({"ambient": 2, "basis": [[4, 4], [2, 4]]});
        let l = Lattice::from_json(&v).unwrap();
        assert_eq!(l, lat(2, &[&[2, 0], &[0, 4]]));
        assert_eq!(
            l.to_json(),
            json!({"ambient": 2, "basis": [[2, 0], [0, 4]]})
        );
        assert_eq!(Lattice::from_json(&l.to_json()).unwrap(), l);
        assert!(Lattice::from_json(&json!({"basis": []})).is_err());
    }

    #[test]
    fn display_is_span_syntax() {
        assert_eq!(lat(2, &[&[2, 4]]).to_string(), "span[(2,4)]");
        assert_eq!(Lattice::trivial(2).to_string(), "span[]");
    }
}

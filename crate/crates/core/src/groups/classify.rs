//! Classifiers over group descriptors: isolated points of the subgroup
//! hyperballean, asymptotic dimension of the logarithmic hyperballean, and
//! component counts for the families where a closed form is known.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::descriptor::{CardinalToken, GroupDescriptor, ReducedPart};
use crate::groups::finite::FiniteAbelianGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AsdimReport {
    Zero,
    Finite(u64),
    Infinite,
    /// Not decided; the value carried is a proven lower bound.
    Unknown(u64),
}

impl AsdimReport {
    pub fn to_json(&self) -> Value {
        match self {
            AsdimReport::Zero => json!({"kind": "zero", "n": 0}),
            AsdimReport::Finite(n) => json!({"kind": "finite", "n": n}),
            AsdimReport::Infinite => json!({"kind": "infinite"}),
            AsdimReport::Unknown(lb) => json!({"kind": "unknown", "lower_bound": lb}),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsdimClassification {
    pub report: AsdimReport,
    pub reason: String,
}

pub fn asdim_classify(d: &GroupDescriptor) -> Result<AsdimClassification> {
    d.validate()?;
    let done = |report, reason: &str| {
        Ok(AsdimClassification {
            report,
            reason: reason.to_string(),
        })
    };
    if !d.is_torsion() {
        return done(
            AsdimReport::Infinite,
            "non-torsion: a copy of Z embeds and asdim of its subgroup hyperballean is infinite",
        );
    }
    if let Some(p) = d.infinite_socle_primes().first() {
        return Ok(AsdimClassification {
            report: AsdimReport::Infinite,
            reason: format!("G[{p}] is infinite"),
        });
    }
    if d.infinitely_many_prufer_primes {
        return done(
            AsdimReport::Infinite,
            "Prufer summands over infinitely many primes",
        );
    }
    let primes = d.prufer_primes();
    if primes.is_empty() {
        return done(
            AsdimReport::Zero,
            "torsion with every Sylow subgroup finite",
        );
    }
    let mults: Vec<u64> = primes
        .iter()
        .map(|&p| {
            d.prufer_multiplicity(p)
                .finite_value()
                .expect("infinite multiplicities handled above")
        })
        .collect();
    if mults.iter().any(|&m| m >= 2) {
        let lower: u64 = mults.iter().sum();
        return Ok(AsdimClassification {
            report: AsdimReport::Unknown(lower),
            reason: "a Prufer group appears with multiplicity at least 2; \
                     only the lower bound from an embedded copy of N^k is proven"
                .to_string(),
        });
    }
    Ok(AsdimClassification {
        report: AsdimReport::Finite(primes.len() as u64),
        reason: format!(
            "Prufer groups over {} distinct primes plus a finite group",
            primes.len()
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoPointsReport {
    pub size: CardinalToken,
    /// Explicit isolated points, when there are at most two of them.
    pub witness: Option<Vec<String>>,
    pub note: Option<String>,
}

impl IsoPointsReport {
    pub fn to_json(&self) -> Value {
        let mut v = json!({"size": self.size.to_json()});
        if let Some(w) = &self.witness {
            v["witness"] = json!(w);
        }
        if let Some(n) = &self.note {
            v["note"] = json!(n);
        }
        v
    }
}

/// Isolated points exist iff `t(G) ≤ d(G)`; their number is `2^{r₀(d(G))}`
/// with every finite value above 2 collapsing to ω.
pub fn iso_points_classify(d: &GroupDescriptor) -> Result<IsoPointsReport> {
    d.validate()?;
    if !d.torsion_in_divisible() {
        return Ok(IsoPointsReport {
            size: CardinalToken::zero(),
            witness: Some(Vec::new()),
            note: Some("the reduced part has non-trivial torsion".into()),
        });
    }
    Ok(match &d.q_rank {
        CardinalToken::Finite(0) => IsoPointsReport {
            size: CardinalToken::Finite(1),
            witness: Some(vec![d.divisible_name()]),
            note: None,
        },
        CardinalToken::Finite(1) => IsoPointsReport {
            size: CardinalToken::Finite(2),
            witness: Some(vec![d.torsion_divisible_name(), d.divisible_name()]),
            note: None,
        },
        CardinalToken::Finite(_) => IsoPointsReport {
            size: CardinalToken::Omega,
            witness: None,
            note: None,
        },
        r => IsoPointsReport {
            size: CardinalToken::two_to_the(r.clone()),
            witness: None,
            note: Some(
                "comparing this size with other cardinals of the form 2^k assumes GCH".into(),
            ),
        },
    })
}

/// Families whose subgroup hyperballean (or exp-hyperballean) has a known
/// number of connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `L(ℤⁿ)`
    FreeAbelian(u64),
    /// `L(ℤ_{p^∞})`
    Prufer(u64),
    /// `L(G)` for a finite abelian group.
    Finite(FiniteAbelianGroup),
    /// `exp B_G` for the finitary ballean of a group of the given cardinality.
    ExpFinitary(CardinalToken),
}

impl Family {
    /// Recognizes the descriptor shapes with a closed form.
    pub fn from_descriptor(d: &GroupDescriptor) -> Result<Family> {
        d.validate()?;
        let unsupported = || Error::NoClosedForm(format!("descriptor {}", d.to_json()));
        let finite_torsion = d
            .reduced_torsion
            .values()
            .all(|r| matches!(r, ReducedPart::Finite { .. }));
        let torsion_trivial = d.torsion_in_divisible();
        let primes = d.prufer_primes();
        if d.q_rank.is_zero() && primes.is_empty() && !d.infinitely_many_prufer_primes {
            if let CardinalToken::Finite(n) = d.free_rank {
                if torsion_trivial {
                    return Ok(Family::FreeAbelian(n));
                }
                if n == 0 && finite_torsion {
                    return Ok(Family::Finite(finite_group_of(d)?));
                }
            }
            return Err(unsupported());
        }
        if d.is_torsion()
            && torsion_trivial
            && primes.len() == 1
            && d.prufer_multiplicity(primes[0]) == CardinalToken::Finite(1)
            && !d.infinitely_many_prufer_primes
        {
            return Ok(Family::Prufer(primes[0]));
        }
        Err(unsupported())
    }
}

/// Builds a finite abelian group with the given Sylow orders, taken cyclic.
fn finite_group_of(d: &GroupDescriptor) -> Result<FiniteAbelianGroup> {
    let order: u64 = d
        .reduced_torsion
        .values()
        .map(|r| match r {
            ReducedPart::Finite { order } => *order,
            _ => 1,
        })
        .product();
    if order == 1 {
        FiniteAbelianGroup::new(Vec::new())
    } else {
        FiniteAbelianGroup::cyclic(order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentClass {
    pub members: String,
    pub size: CardinalToken,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCensus {
    pub family: String,
    pub count: CardinalToken,
    pub components: Option<Vec<ComponentClass>>,
}

impl ComponentCensus {
    pub fn to_json(&self) -> Value {
        let mut v = json!({"family": self.family, "count": self.count.to_json()});
        if let Some(cs) = &self.components {
            v["components"] = cs
                .iter()
                .map(|c| json!({"members": c.members, "size": c.size.to_json()}))
                .collect();
        }
        v
    }
}

pub fn component_census(family: &Family) -> Result<ComponentCensus> {
    let class = |members: String, size| ComponentClass { members, size };
    Ok(match family {
        Family::FreeAbelian(0) => ComponentCensus {
            family: "L(Z^0)".into(),
            count: CardinalToken::Finite(1),
            components: Some(vec![class("{0}".into(), CardinalToken::Finite(1))]),
        },
        Family::FreeAbelian(1) => ComponentCensus {
            family: "L(Z)".into(),
            count: CardinalToken::Finite(2),
            components: Some(vec![
                class("{0}".into(), CardinalToken::Finite(1)),
                class("kZ for k >= 1".into(), CardinalToken::Omega),
            ]),
        },
        // one component per pure subgroup of ℤⁿ, and there are countably many
        Family::FreeAbelian(n) => ComponentCensus {
            family: format!("L(Z^{n})"),
            count: CardinalToken::Omega,
            components: None,
        },
        Family::Prufer(p) => ComponentCensus {
            family: format!("L(Z({p}^inf))"),
            count: CardinalToken::Finite(2),
            components: Some(vec![
                class(format!("whole@{p}"), CardinalToken::Finite(1)),
                class(format!("H_n@{p} for n >= 0"), CardinalToken::Omega),
            ]),
        },
        Family::Finite(g) => ComponentCensus {
            family: format!("L({g})"),
            count: CardinalToken::Finite(1),
            components: Some(vec![class(
                "all subgroups".into(),
                CardinalToken::Finite(crate::groups::finite::all_subgroups(g).len() as u64),
            )]),
        },
        Family::ExpFinitary(k) if k.is_zero() => {
            return Err(Error::InvalidArgument("a group is nonempty".into()))
        }
        // a finite group is bounded in its finitary ballean
        Family::ExpFinitary(CardinalToken::Finite(n)) => ComponentCensus {
            family: format!("exp B_G, |G| = {n}"),
            count: CardinalToken::Finite(1),
            components: None,
        },
        Family::ExpFinitary(k) => ComponentCensus {
            family: format!("exp B_G, |G| = {k}"),
            count: CardinalToken::two_to_the(k.clone()),
            components: None,
        },
    })
}

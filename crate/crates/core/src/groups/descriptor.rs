//! Symbolic structure of an abelian group, as consumed by the classifiers.
//!
//! A descriptor records `G ≅ d(G) ⊕ R` with the divisible part
//! `d(G) = ℚ^(q_rank) ⊕ ⨁_p ℤ_{p^∞}^(m_p)` and a reduced part `R` described by
//! its free rank and, per prime, its p-torsion.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::groups::finite::is_prime;

/// A cardinal drawn from `{0, 1, 2, …, ω, 2^κ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CardinalToken {
    Finite(u64),
    Omega,
    TwoToThe(Box<CardinalToken>),
}

/// Result of comparing two cardinal tokens.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CardinalComparison {
    pub ordering: Ordering,
    /// Set when the answer is only valid under GCH (`κ < λ ⟹ 2^κ < 2^λ`).
    pub assumes_gch: bool,
}

impl CardinalToken {
    pub fn zero() -> Self {
        CardinalToken::Finite(0)
    }

    /// `2^κ`, folded to a finite value when it fits.
    pub fn two_to_the(k: CardinalToken) -> Self {
        match k {
            CardinalToken::Finite(n) if n < 64 => CardinalToken::Finite(1u64 << n),
            other => CardinalToken::TwoToThe(Box::new(other)),
        }
    }

    pub fn continuum() -> Self {
        Self::two_to_the(CardinalToken::Omega)
    }

    pub fn is_zero(&self) -> bool {
        *self == CardinalToken::Finite(0)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CardinalToken::Finite(_))
    }

    pub fn finite_value(&self) -> Option<u64> {
        match self {
            CardinalToken::Finite(n) => Some(*n),
            _ => None,
        }
    }

    pub fn compare(&self, other: &CardinalToken) -> CardinalComparison {
        use CardinalToken::*;
        let exact = |ordering| CardinalComparison {
            ordering,
            assumes_gch: false,
        };
        match (self, other) {
            (Finite(a), Finite(b)) => exact(a.cmp(b)),
            (Finite(_), _) => exact(Ordering::Less),
            (_, Finite(_)) => exact(Ordering::Greater),
            (Omega, Omega) => exact(Ordering::Equal),
            // Cantor: ω < 2^κ for every infinite κ
            (Omega, TwoToThe(_)) => exact(Ordering::Less),
            (TwoToThe(_), Omega) => exact(Ordering::Greater),
            (TwoToThe(a), TwoToThe(b)) => {
                if a == b {
                    return exact(Ordering::Equal);
                }
                let inner = a.compare(b);
                // a ≤ b gives 2^a ≤ 2^b outright; strictness needs GCH
                CardinalComparison {
                    ordering: inner.ordering,
                    assumes_gch: true,
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        Value::from(self.to_string())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_u64()
                .map(CardinalToken::Finite)
                .ok_or_else(|| Error::MalformedDescriptor(format!("bad cardinal {n}"))),
            Value::String(s) => s.parse(),
            other => Err(Error::MalformedDescriptor(format!("bad cardinal {other}"))),
        }
    }
}

impl fmt::Display for CardinalToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalToken::Finite(n) => write!(f, "{n}"),
            CardinalToken::Omega => write!(f, "omega"),
            CardinalToken::TwoToThe(k) => write!(f, "2^{k}"),
        }
    }
}

impl FromStr for CardinalToken {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("2^") {
            let inner: CardinalToken = rest.trim_matches(|c| c == '(' || c == ')').parse()?;
            return Ok(CardinalToken::two_to_the(inner));
        }
        match t {
            "omega" | "ω" | "aleph0" | "ℵ0" | "ℵ₀" => Ok(CardinalToken::Omega),
            "c" | "continuum" | "𝔠" => Ok(CardinalToken::continuum()),
            _ => t
                .parse::<u64>()
                .map(CardinalToken::Finite)
                .map_err(|_| Error::MalformedDescriptor(format!("bad cardinal {s:?}"))),
        }
    }
}

impl PartialOrd for CardinalToken {
    /// Only defined where no set-theoretic assumption is needed.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let c = self.compare(other);
        (!c.assumes_gch).then_some(c.ordering)
    }
}

/// The p-primary part of the reduced summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ReducedPart {
    /// A finite p-group of the given order (a power of p; 1 means trivial).
    Finite { order: u64 },
    /// Infinite with `R[p]` finite. Rejected by [`GroupDescriptor::validate`]:
    /// a reduced p-group with finite socle is finite.
    LayerlyFinite,
    /// `R[p]` infinite.
    NotLayerlyFinite,
}

impl ReducedPart {
    fn to_json(&self) -> Value {
        match self {
            ReducedPart::Finite { order } => json!({"kind": "finite", "order": order}),
            ReducedPart::LayerlyFinite => json!({"kind": "layerly_finite"}),
            ReducedPart::NotLayerlyFinite => json!({"kind": "not_layerly_finite"}),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::MalformedDescriptor("reduced part must be an object".into()))?;
        let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| {
            Error::MalformedDescriptor("reduced part needs a string \"kind\"".into())
        })?;
        let allowed: &[&str] = match kind {
            "finite" => &["kind", "order"],
            _ => &["kind"],
        };
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::MalformedDescriptor(format!(
                "unexpected key {k:?} in reduced part"
            )));
        }
        match kind {
            "finite" => {
                let order = obj.get("order").and_then(Value::as_u64).ok_or_else(|| {
                    Error::MalformedDescriptor("finite reduced part needs \"order\"".into())
                })?;
                Ok(ReducedPart::Finite { order })
            }
            "layerly_finite" => Ok(ReducedPart::LayerlyFinite),
            "not_layerly_finite" => Ok(ReducedPart::NotLayerlyFinite),
            other => Err(Error::MalformedDescriptor(format!(
                "unknown reduced kind {other:?}"
            ))),
        }
    }

    fn is_trivial(&self) -> bool {
        matches!(self, ReducedPart::Finite { order: 1 })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupDescriptor {
    /// Free rank of the reduced summand.
    pub free_rank: CardinalToken,
    /// `r₀(d(G))`: multiplicity of ℚ in the divisible part.
    pub q_rank: CardinalToken,
    /// Multiplicity of ℤ_{p^∞} in the divisible part, per prime.
    pub prufer: BTreeMap<u64, CardinalToken>,
    /// p-torsion of the reduced summand, per prime.
    pub reduced_torsion: BTreeMap<u64, ReducedPart>,
    /// The divisible part has Prüfer summands for infinitely many primes
    /// (beyond those listed in `prufer`).
    pub infinitely_many_prufer_primes: bool,
}

impl Default for CardinalToken {
    fn default() -> Self {
        CardinalToken::zero()
    }
}

impl GroupDescriptor {
    /// ℤⁿ
    pub fn free(n: u64) -> Self {
        GroupDescriptor {
            free_rank: CardinalToken::Finite(n),
            ..Default::default()
        }
    }

    /// ℚ^(r)
    pub fn rationals(r: CardinalToken) -> Self {
        GroupDescriptor {
            q_rank: r,
            ..Default::default()
        }
    }

    /// ⨁ ℤ_{p^∞} over the given primes (each once).
    pub fn prufer_sum(primes: &[u64]) -> Self {
        GroupDescriptor {
            prufer: primes
                .iter()
                .map(|&p| (p, CardinalToken::Finite(1)))
                .collect(),
            ..Default::default()
        }
    }

    /// A finite group given by its p-primary orders.
    pub fn finite(sylow_orders: &[(u64, u64)]) -> Self {
        GroupDescriptor {
            reduced_torsion: sylow_orders
                .iter()
                .map(|&(p, order)| (p, ReducedPart::Finite { order }))
                .collect(),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for &p in self.prufer.keys().chain(self.reduced_torsion.keys()) {
            if !is_prime(p) {
                return Err(Error::MalformedDescriptor(format!("{p} is not prime")));
            }
        }
        for (&p, part) in &self.reduced_torsion {
            match part {
                ReducedPart::Finite { order } => {
                    let mut o = *order;
                    if o == 0 {
                        return Err(Error::MalformedDescriptor(format!(
                            "order of the {p}-part must be positive"
                        )));
                    }
                    while o % p == 0 {
                        o /= p;
                    }
                    if o != 1 {
                        return Err(Error::MalformedDescriptor(format!(
                            "order {order} of the {p}-part is not a power of {p}"
                        )));
                    }
                }
                ReducedPart::LayerlyFinite => {
                    return Err(Error::MalformedDescriptor(format!(
                        "an infinite reduced {p}-group always has infinite {p}-socle; \
                         use \"not_layerly_finite\" or a finite order"
                    )));
                }
                ReducedPart::NotLayerlyFinite => {}
            }
        }
        Ok(())
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank.is_zero() && self.q_rank.is_zero()
    }

    /// `t(G) ≤ d(G)`, i.e. the reduced summand is torsion-free.
    pub fn torsion_in_divisible(&self) -> bool {
        self.reduced_torsion.values().all(ReducedPart::is_trivial)
    }

    pub fn prufer_multiplicity(&self, p: u64) -> CardinalToken {
        self.prufer.get(&p).cloned().unwrap_or_default()
    }

    /// Primes with a non-zero Prüfer multiplicity.
    pub fn prufer_primes(&self) -> Vec<u64> {
        self.prufer
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(&p, _)| p)
            .collect()
    }

    /// Whether `G[p]` is infinite.
    pub fn socle_infinite(&self, p: u64) -> bool {
        !self.prufer_multiplicity(p).is_finite()
            || matches!(
                self.reduced_torsion.get(&p),
                Some(ReducedPart::NotLayerlyFinite)
            )
    }

    /// Primes `p` with `G[p]` infinite.
    pub fn infinite_socle_primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self
            .prufer
            .keys()
            .chain(self.reduced_torsion.keys())
            .copied()
            .filter(|&p| self.socle_infinite(p))
            .collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Every `G[n]` is finite.
    pub fn is_layerly_finite(&self) -> bool {
        self.infinite_socle_primes().is_empty()
    }

    /// The Sylow p-subgroup is finite.
    pub fn sylow_finite(&self, p: u64) -> bool {
        self.prufer_multiplicity(p).is_zero()
            && matches!(
                self.reduced_torsion.get(&p),
                None | Some(ReducedPart::Finite { .. })
            )
    }

    pub fn is_divisible(&self) -> bool {
        self.free_rank.is_zero() && self.torsion_in_divisible()
    }

    pub fn is_reduced(&self) -> bool {
        self.q_rank.is_zero()
            && self.prufer_primes().is_empty()
            && !self.infinitely_many_prufer_primes
    }

    /// Human-readable `t(d(G))`.
    pub fn torsion_divisible_name(&self) -> String {
        let mut parts: Vec<String> = self
            .prufer
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(p, m)| match m {
                CardinalToken::Finite(1) => format!("Z({p}^inf)"),
                _ => format!("Z({p}^inf)^({m})"),
            })
            .collect();
        if self.infinitely_many_prufer_primes {
            parts.push("(Prufer groups over infinitely many further primes)".into());
        }
        if parts.is_empty() {
            "{0}".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Human-readable `d(G)`.
    pub fn divisible_name(&self) -> String {
        let mut parts = Vec::new();
        match &self.q_rank {
            CardinalToken::Finite(0) => {}
            CardinalToken::Finite(1) => parts.push("Q".to_string()),
            r => parts.push(format!("Q^({r})")),
        }
        let t = self.torsion_divisible_name();
        if t != "{0}" {
            parts.push(t);
        }
        if parts.is_empty() {
            "{0}".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> Value {
        let prufer: Map<String, Value> = self
            .prufer
            .iter()
            .map(|(p, m)| (p.to_string(), m.to_json()))
            .collect();
        let reduced: Map<String, Value> = self
            .reduced_torsion
            .iter()
            .map(|(p, r)| (p.to_string(), r.to_json()))
            .collect();
        let mut v = json!({
            "free_rank": self.free_rank.to_json(),
            "divisible": {"q_rank": self.q_rank.to_json(), "prufer": prufer},
            "reduced_torsion": reduced,
        });
        if self.infinitely_many_prufer_primes {
            v["infinitely_many_prufer_primes"] = Value::Bool(true);
        }
        v
    }

    /// Parses and validates the JSON descriptor format. Missing sections default to zero.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::MalformedDescriptor("descriptor must be an object".into()))?;
        const KEYS: [&str; 4] = [
            "free_rank",
            "divisible",
            "reduced_torsion",
            "infinitely_many_prufer_primes",
        ];
        if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(Error::MalformedDescriptor(format!("unexpected key {k:?}")));
        }
        let mut d = GroupDescriptor::default();
        if let Some(t) = obj.get("free_rank") {
            d.free_rank = CardinalToken::from_json(t)?;
        }
        if let Some(div) = obj.get("divisible") {
            let div = div.as_object().ok_or_else(|| {
                Error::MalformedDescriptor("\"divisible\" must be an object".into())
            })?;
            if let Some(k) = div.keys().find(|k| *k != "q_rank" && *k != "prufer") {
                return Err(Error::MalformedDescriptor(format!(
                    "unexpected key {k:?} in \"divisible\""
                )));
            }
            if let Some(t) = div.get("q_rank") {
                d.q_rank = CardinalToken::from_json(t)?;
            }
            if let Some(pr) = div.get("prufer") {
                for (p, m) in prime_map(pr, "prufer")? {
                    d.prufer.insert(p, CardinalToken::from_json(m)?);
                }
            }
        }
        if let Some(rt) = obj.get("reduced_torsion") {
            for (p, part) in prime_map(rt, "reduced_torsion")? {
                d.reduced_torsion.insert(p, ReducedPart::from_json(part)?);
            }
        }
        if let Some(b) = obj.get("infinitely_many_prufer_primes") {
            d.infinitely_many_prufer_primes = b.as_bool().ok_or_else(|| {
                Error::MalformedDescriptor("infinitely_many_prufer_primes must be a bool".into())
            })?;
        }
        d.validate()?;
        Ok(d)
    }
}

fn prime_map<'a>(v: &'a Value, what: &str) -> Result<Vec<(u64, &'a Value)>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::MalformedDescriptor(format!("\"{what}\" must be an object")))?;
    obj.iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<u64>()
                .map(|p| (p, v))
                .map_err(|_| Error::MalformedDescriptor(format!("bad prime key {k:?} in {what}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinal_parsing_and_display() {
        assert_eq!(
            "3".parse::<CardinalToken>().unwrap(),
            CardinalToken::Finite(3)
        );
        assert_eq!("ω".parse::<CardinalToken>().unwrap(), CardinalToken::Omega);
        let c: CardinalToken = "c".parse().unwrap();
        assert_eq!(c.to_string(), "2^omega");
        assert_eq!("2^omega".parse::<CardinalToken>().unwrap(), c);
        assert_eq!(
            "2^5".parse::<CardinalToken>().unwrap(),
            CardinalToken::Finite(32)
        );
        let cc: CardinalToken = "2^2^omega".parse().unwrap();
        assert_eq!(cc.to_string().parse::<CardinalToken>().unwrap(), cc);
        assert!("many".parse::<CardinalToken>().is_err());
    }

    #[test]
    fn cardinal_comparisons() {
        use CardinalToken::*;
        let c = CardinalToken::continuum();
        assert!(Finite(10) < Omega);
        assert!(Omega < c);
        let cc = CardinalToken::two_to_the(c.clone());
        let cmp = c.compare(&cc);
        assert_eq!(cmp.ordering, Ordering::Less);
        assert!(cmp.assumes_gch);
        assert_eq!(c.partial_cmp(&cc), None);
    }

    #[test]
    fn json_round_trip() {
        let v = json!({
            "free_rank": 0,
            "divisible": {"q_rank": "omega", "prufer": {"2": 1, "3": "2"}},
            "reduced_torsion": {"5": {"kind": "finite", "order": 25}}
        });
        let d = GroupDescriptor::from_json(&v).unwrap();
        assert_eq!(d.q_rank, CardinalToken::Omega);
        assert_eq!(d.prufer_multiplicity(3), CardinalToken::Finite(2));
        assert_eq!(GroupDescriptor::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn malformed_descriptors() {
        let bad = [
            json!({"free_rank": -1}),
            json!({"divisible": {"prufer": {"4": 1}}}),
            json!({"reduced_torsion": {"3": {"kind": "finite", "order": 12}}}),
            json!({"reduced_torsion": {"3": {"kind": "weird"}}}),
            json!({"reduced_torsion": {"2": {"kind": "layerly_finite"}}}),
            json!({"extra": 1}),
            json!([1, 2]),
        ];
        for v in bad {
            assert!(
                matches!(
                    GroupDescriptor::from_json(&v),
                    Err(Error::MalformedDescriptor(_))
                ),
                "{v}"
            );
        }
    }

    #[test]
    fn structural_predicates() {
        let z = GroupDescriptor::free(1);
        assert!(!z.is_torsion() && z.torsion_in_divisible() && z.is_reduced());
        let q = GroupDescriptor::rationals(CardinalToken::Finite(1));
        assert!(q.is_divisible());
        assert_eq!(q.divisible_name(), "Q");
        let mut e = GroupDescriptor::default();
        e.reduced_torsion.insert(2, ReducedPart::NotLayerlyFinite);
        assert!(!e.is_layerly_finite() && !e.torsion_in_divisible());
        let p = GroupDescriptor::prufer_sum(&[2, 3]);
        assert!(p.is_layerly_finite() && !p.sylow_finite(2) && p.sylow_finite(5));
        assert_eq!(p.torsion_divisible_name(), "Z(2^inf) + Z(3^inf)");
    }
}

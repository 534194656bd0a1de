//! Finite balleans given by an explicit ball table.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

pub type PointSet = FixedBitSet;

/// `(X, P, B)` with `X` and `P` finite. Balls are stored per radius, per point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitBallean {
    points: Vec<String>,
    radii: Vec<String>,
    balls: Vec<Vec<PointSet>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `x ∉ B(x, α)`
    Containment { point: String, radius: String },
    /// `y ∈ B(x, α)` but `x ∉ B(y, α)`
    Symmetry {
        x: String,
        y: String,
        radius: String,
    },
    /// No radius `γ` has `B(B(x, α), β) ⊆ B(x, γ)` for all `x`; `point` fails
    /// for the first candidate `γ`.
    UpperMultiplicativity {
        alpha: String,
        beta: String,
        point: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Containment { point, radius } => {
                write!(f, "containment fails: {point} not in B({point},{radius})")
            }
            Violation::Symmetry { x, y, radius } => write!(
                f,
                "symmetry fails: {y} in B({x},{radius}) but {x} not in B({y},{radius})"
            ),
            Violation::UpperMultiplicativity { alpha, beta, point } => write!(
                f,
                "upper multiplicativity fails for ({alpha},{beta}), e.g. at {point}"
            ),
        }
    }
}

impl Violation {
    pub fn to_json(&self) -> Value {
        match self {
            Violation::Containment { point, radius } => {
                json!({"axiom": "containment", "point": point, "radius": radius})
            }
            Violation::Symmetry { x, y, radius } => {
                json!({"axiom": "symmetry", "x": x, "y": y, "radius": radius})
            }
            Violation::UpperMultiplicativity { alpha, beta, point } => json!({
                "axiom": "upper_multiplicativity", "alpha": alpha, "beta": beta, "point": point
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
    /// For every pair `(α, β)`, a radius `γ` witnessing upper multiplicativity.
    pub multiplicativity: Vec<Vec<Option<usize>>>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.is_valid(),
            "violation": self.violation.as_ref().map(Violation::to_json),
        })
    }
}

pub(crate) fn point_set(n: usize, members: impl IntoIterator<Item = usize>) -> PointSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.extend(members);
    s
}

fn is_subset(a: &PointSet, b: &PointSet) -> bool {
    a.is_subset(b)
}

impl ExplicitBallean {
    /// Builds the table without checking the ballean axioms.
    pub fn raw(points: Vec<String>, radii: Vec<String>, balls: Vec<Vec<PointSet>>) -> Result<Self> {
        let n = points.len();
        check_unique(&points, "point")?;
        check_unique(&radii, "radius")?;
        if balls.len() != radii.len() {
            return Err(Error::InvalidBallean(format!(
                "{} radii but {} ball columns",
                radii.len(),
                balls.len()
            )));
        }
        let mut balls = balls;
        for col in &mut balls {
            if col.len() != n {
                return Err(Error::InvalidBallean(format!(
                    "{n} points but a radius with {} balls",
                    col.len()
                )));
            }
            for b in col.iter_mut() {
                if b.ones().any(|i| i >= n) {
                    return Err(Error::InvalidBallean("ball member out of range".into()));
                }
                b.grow(n);
            }
        }
        Ok(ExplicitBallean {
            points,
            radii,
            balls,
        })
    }

    /// Builds the table and rejects it unless all three axioms hold.
    pub fn new(points: Vec<String>, radii: Vec<String>, balls: Vec<Vec<PointSet>>) -> Result<Self> {
        let b = Self::raw(points, radii, balls)?;
        match b.validate().violation {
            None => Ok(b),
            Some(v) => Err(Error::InvalidBallean(v.to_string())),
        }
    }

    /// `balls[r][x]` lists the indices in `B(x, r)`.
    pub fn from_lists(
        points: Vec<String>,
        radii: Vec<String>,
        balls: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let n = points.len();
        if let Some(bad) = balls.iter().flatten().flatten().find(|&&i| i >= n) {
            return Err(Error::InvalidBallean(format!(
                "point index {bad} out of range"
            )));
        }
        let table = balls
            .into_iter()
            .map(|col| col.into_iter().map(|b| point_set(n, b)).collect())
            .collect();
        Self::raw(points, radii, table)
    }

    /// Every ball is `{x}`.
    pub fn discrete(points: Vec<String>) -> Self {
        let n = points.len();
        let col = (0..n).map(|i| point_set(n, [i])).collect();
        ExplicitBallean::raw(points, vec!["0".into()], vec![col]).expect("well-formed")
    }

    /// Every ball is the whole support.
    pub fn bounded(points: Vec<String>) -> Self {
        let n = points.len();
        let col = (0..n).map(|_| point_set(n, 0..n)).collect();
        ExplicitBallean::raw(points, vec!["0".into()], vec![col]).expect("well-formed")
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn radii(&self) -> &[String] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_index(&self, id: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == id)
            .ok_or_else(|| Error::UnknownPoint(id.to_string()))
    }

    pub fn radius_index(&self, id: &str) -> Result<usize> {
        self.radii
            .iter()
            .position(|r| r == id)
            .ok_or_else(|| Error::UnknownRadius(id.to_string()))
    }

    pub fn ball(&self, x: usize, r: usize) -> &PointSet {
        &self.balls[r][x]
    }

    pub fn names(&self, s: &PointSet) -> Vec<String> {
        s.ones().map(|i| self.points[i].clone()).collect()
    }

    pub fn empty_set(&self) -> PointSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn singleton(&self, x: usize) -> PointSet {
        point_set(self.len(), [x])
    }

    /// `B(Y, r) = ⋃_{y∈Y} B(y, r)`
    pub fn ball_of_set(&self, set: &PointSet, r: usize) -> PointSet {
        let mut out = self.empty_set();
        for y in set.ones() {
            out.union_with(&self.balls[r][y]);
        }
        out
    }

    /// `Bⁿ(Y, r)`; `n = 0` returns `Y`.
    pub fn ball_iterate_set(&self, set: &PointSet, r: usize, n: usize) -> PointSet {
        let mut cur = set.clone();
        for _ in 0..n {
            let next = self.ball_of_set(&cur, r);
            if next == cur {
                break;
            }
            cur = next;
        }
        cur
    }

    pub fn ball_iterate(&self, x: usize, r: usize, n: usize) -> PointSet {
        self.ball_iterate_set(&self.singleton(x), r, n)
    }

    /// `ball_iterate` addressed by ids.
    pub fn ball_iterate_ids(&self, x: &str, r: &str, n: usize) -> Result<Vec<String>> {
        let xi = self.point_index(x)?;
        let ri = self.radius_index(r)?;
        Ok(self.names(&self.ball_iterate(xi, ri, n)))
    }

    /// `B^□(Y, r) = ⋃ₙ Bⁿ(Y, r)`
    pub fn cell(&self, set: &PointSet, r: usize) -> PointSet {
        self.ball_iterate_set(set, r, self.len().max(1))
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let k = self.radii.len();
        let mut report = ValidationReport {
            violation: None,
            multiplicativity: vec![vec![None; k]; k],
        };
        for r in 0..k {
            for x in 0..n {
                if !self.balls[r][x].contains(x) {
                    report.violation = Some(Violation::Containment {
                        point: self.points[x].clone(),
                        radius: self.radii[r].clone(),
                    });
                    return report;
                }
            }
        }
        for r in 0..k {
            for x in 0..n {
                if let Some(y) = self.balls[r][x]
                    .ones()
                    .find(|&y| !self.balls[r][y].contains(x))
                {
                    report.violation = Some(Violation::Symmetry {
                        x: self.points[x].clone(),
                        y: self.points[y].clone(),
                        radius: self.radii[r].clone(),
                    });
                    return report;
                }
            }
        }
        for a in 0..k {
            let composed: Vec<Vec<PointSet>> = (0..k)
                .map(|b| {
                    (0..n)
                        .map(|x| self.ball_of_set(&self.balls[a][x], b))
                        .collect()
                })
                .collect();
            for b in 0..k {
                let fits = |g: usize| (0..n).all(|x| is_subset(&composed[b][x], &self.balls[g][x]));
                match (0..k).find(|&g| fits(g)) {
                    Some(g) => report.multiplicativity[a][b] = Some(g),
                    None => {
                        let x = (0..n)
                            .find(|&x| !is_subset(&composed[b][x], &self.balls[0][x]))
                            .unwrap_or(0);
                        report.violation = Some(Violation::UpperMultiplicativity {
                            alpha: self.radii[a].clone(),
                            beta: self.radii[b].clone(),
                            point: self.points[x].clone(),
                        });
                        return report;
                    }
                }
            }
        }
        report
    }

    /// Replaces every ball by its closure `B^□`.
    pub fn cellularization(&self) -> ExplicitBallean {
        let balls = (0..self.radii.len())
            .map(|r| {
                (0..self.len())
                    .map(|x| self.cell(&self.singleton(x), r))
                    .collect()
            })
            .collect();
        ExplicitBallean {
            points: self.points.clone(),
            radii: self.radii.clone(),
            balls,
        }
    }

    pub fn is_cellular(&self) -> bool {
        self.cellularization() == *self
    }

    /// `B ⊆ B'` pointwise for every radius (same support and radii).
    pub fn is_pointwise_within(&self, other: &ExplicitBallean) -> bool {
        self.points == other.points
            && self.radii == other.radii
            && self
                .balls
                .iter()
                .zip(&other.balls)
                .all(|(c, d)| c.iter().zip(d).all(|(s, t)| is_subset(s, t)))
    }

    /// Connected components: classes of the union over all radii of the ball relations.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for col in &self.balls {
            for (x, ball) in col.iter().enumerate() {
                for y in ball.ones() {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for x in 0..n {
            let root = find(&mut parent, x);
            let i = *slot.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[i].push(x);
        }
        classes
    }

    pub fn connected_components_ids(&self) -> Vec<Vec<String>> {
        self.connected_components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.points[i].clone()).collect())
            .collect()
    }

    /// The subballean on `subset` (in the given order), balls intersected with it.
    pub fn subballean(&self, subset: &[usize]) -> ExplicitBallean {
        let pos: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let m = subset.len();
        let balls = self
            .balls
            .iter()
            .map(|col| {
                subset
                    .iter()
                    .map(|&x| point_set(m, col[x].ones().filter_map(|y| pos.get(&y).copied())))
                    .collect()
            })
            .collect();
        ExplicitBallean {
            points: subset.iter().map(|&x| self.points[x].clone()).collect(),
            radii: self.radii.clone(),
            balls,
        }
    }

    /// Same balls after renaming points and radii positionally.
    pub fn same_table(&self, other: &ExplicitBallean) -> bool {
        self.len() == other.len()
            && self.radii.len() == other.radii.len()
            && self.balls == other.balls
    }

    /// `f: X → Y` (by index) is bornologous: every image of a ball lies in a ball.
    pub fn is_bornologous(&self, target: &ExplicitBallean, f: &[usize]) -> bool {
        (0..self.radii.len()).all(|r| {
            (0..target.radii.len()).any(|s| {
                (0..self.len()).all(|x| {
                    self.balls[r][x]
                        .ones()
                        .all(|y| target.balls[s][f[x]].contains(f[y]))
                })
            })
        })
    }

    /// Bijection bornologous in both directions.
    pub fn is_asymorphism(&self, target: &ExplicitBallean, f: &[usize]) -> bool {
        if f.len() != self.len() || target.len() != self.len() {
            return false;
        }
        let mut inv = vec![usize::MAX; self.len()];
        for (x, &y) in f.iter().enumerate() {
            if y >= inv.len() || inv[y] != usize::MAX {
                return false;
            }
            inv[y] = x;
        }
        self.is_bornologous(target, f) && target.is_bornologous(self, &inv)
    }

    pub fn to_json(&self) -> Value {
        let mut balls = Map::new();
        for (r, col) in self.balls.iter().enumerate() {
            for (x, b) in col.iter().enumerate() {
                balls.insert(
                    format!("({},{})", self.points[x], self.radii[r]),
                    json!(self.names(b)),
                );
            }
        }
        json!({"support": self.points, "radii": self.radii, "balls": balls})
    }

    /// Loads the JSON table and validates the axioms.
    pub fn from_json(v: &Value) -> Result<Self> {
        let ids = |key: &str| -> Result<Vec<String>> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::InvalidBallean(format!("missing array {key:?}")))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    other => Err(Error::InvalidBallean(format!("bad id {other}"))),
                })
                .collect()
        };
        let points = ids("support")?;
        let radii = ids("radii")?;
        let table = v
            .get("balls")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::InvalidBallean("missing object \"balls\"".into()))?;
        let n = points.len();
        let mut balls: Vec<Vec<Option<PointSet>>> = vec![vec![None; n]; radii.len()];
        for (key, members) in table {
            let (x, r) = split_key(key, &points, &radii)?;
            let members = members
                .as_array()
                .ok_or_else(|| Error::InvalidBallean(format!("ball {key} is not a list")))?;
            let mut set = FixedBitSet::with_capacity(n);
            for m in members {
                let id = match m {
                    Value::String(s) => s.clone(),
                    Value::Number(k) => k.to_string(),
                    other => return Err(Error::InvalidBallean(format!("bad id {other}"))),
                };
                let i = points
                    .iter()
                    .position(|p| *p == id)
                    .ok_or_else(|| Error::InvalidBallean(format!("unknown point {id:?}")))?;
                set.insert(i);
            }
            if balls[r][x].replace(set).is_some() {
                return Err(Error::InvalidBallean(format!("duplicate ball {key}")));
            }
        }
        let balls = balls
            .into_iter()
            .enumerate()
            .map(|(r, col)| {
                col.into_iter()
                    .enumerate()
                    .map(|(x, b)| {
                        b.ok_or_else(|| {
                            Error::InvalidBallean(format!(
                                "missing ball ({},{})",
                                points[x], radii[r]
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points, radii, balls)
    }
}

fn check_unique(ids: &[String], what: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::InvalidBallean(format!("duplicate {what} id {id:?}")));
        }
    }
    Ok(())
}

/// Splits `"(x,α)"` at the comma that separates a known point from a known radius.
fn split_key(key: &str, points: &[String], radii: &[String]) -> Result<(usize, usize)> {
    let bad = || Error::InvalidBallean(format!("bad ball key {key:?}"));
    let inner = key
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    let mut found = None;
    for (i, _) in inner.match_indices(',') {
        let (x, r) = (&inner[..i], &inner[i + 1..]);
        if let (Some(xi), Some(ri)) = (
            points.iter().position(|p| p == x),
            radii.iter().position(|q| q == r),
        ) {
            if found.replace((xi, ri)).is_some() {
                return Err(Error::InvalidBallean(format!("ambiguous ball key {key:?}")));
            }
        }
    }
    found.ok_or_else(bad)
}

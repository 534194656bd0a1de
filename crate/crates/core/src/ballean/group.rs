//! Balls, exp-balls and the covering distance `μ` for finite subsets of
//! abelian groups (written additively).

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::ballean::cover::min_cover;
use crate::error::{Error, Result};
use crate::groups::finite::{Element, FiniteAbelianGroup};
use crate::lattice::ExtNat;

/// An abelian group whose elements can be enumerated on demand.
pub trait Carrier: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + Ord + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    /// Group sum; may fall outside [`Carrier::check`] for windowed carriers.
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn check(&self, x: &Self::Elem) -> Result<()>;
    fn format_elem(&self, x: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

impl Carrier for FiniteAbelianGroup {
    type Elem = Element;

    fn zero(&self) -> Element {
        FiniteAbelianGroup::zero(self)
    }

    fn add(&self, a: &Element, b: &Element) -> Element {
        FiniteAbelianGroup::add(self, a, b)
    }

    fn neg(&self, a: &Element) -> Element {
        FiniteAbelianGroup::neg(self, a)
    }

    fn check(&self, x: &Element) -> Result<()> {
        self.check_element(x)
    }

    fn format_elem(&self, x: &Element) -> String {
        match x.as_slice() {
            [v] => v.to_string(),
            _ => format!(
                "({})",
                x.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

/// ℤ seen through `[−W, W]`: anything computed outside the window is refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegerWindow {
    pub half_width: i64,
}

impl IntegerWindow {
    pub fn new(half_width: i64) -> Result<Self> {
        if half_width < 0 {
            return Err(Error::InvalidArgument(
                "window half-width must be >= 0".into(),
            ));
        }
        Ok(IntegerWindow { half_width })
    }
}

impl Carrier for IntegerWindow {
    type Elem = i64;

    fn zero(&self) -> i64 {
        0
    }

    fn add(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn neg(&self, a: &i64) -> i64 {
        -a
    }

    fn check(&self, x: &i64) -> Result<()> {
        if x.abs() > self.half_width {
            Err(Error::WindowExceeded(*x))
        } else {
            Ok(())
        }
    }

    fn format_elem(&self, x: &i64) -> String {
        x.to_string()
    }
}

/// A nonempty finite subset of a carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSubset<C: Carrier> {
    parent: C,
    elems: BTreeSet<C::Elem>,
}

impl<C: Carrier> FiniteSubset<C> {
    pub fn new(parent: &C, elems: impl IntoIterator<Item = C::Elem>) -> Result<Self> {
        let elems: BTreeSet<C::Elem> = elems.into_iter().collect();
        if elems.is_empty() {
            return Err(Error::EmptySubset);
        }
        for x in &elems {
            parent.check(x)?;
        }
        Ok(FiniteSubset {
            parent: parent.clone(),
            elems,
        })
    }

    pub fn parent(&self) -> &C {
        &self.parent
    }

    pub fn elems(&self) -> &BTreeSet<C::Elem> {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: &C::Elem) -> bool {
        self.elems.contains(x)
    }

    /// `g + Y`
    pub fn translate(&self, g: &C::Elem) -> Result<Self> {
        FiniteSubset::new(
            &self.parent,
            self.elems.iter().map(|y| self.parent.add(g, y)),
        )
    }

    fn same_parent(&self, other: &Self) -> Result<()> {
        if self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }
}

impl<C: Carrier> fmt::Display for FiniteSubset<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .elems
            .iter()
            .map(|x| self.parent.format_elem(x))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `F ∪ −F ∪ {0}`
pub fn symmetrize<C: Carrier>(c: &C, radius: &[C::Elem]) -> Result<BTreeSet<C::Elem>> {
    let mut out = BTreeSet::new();
    out.insert(c.zero());
    for f in radius {
        c.check(f)?;
        let g = c.neg(f);
        c.check(&g)?;
        out.insert(f.clone());
        out.insert(g);
    }
    Ok(out)
}

/// `B(Y, F) = Y + (F ∪ −F ∪ {0})`
pub fn group_ball<C: Carrier>(
    y: &FiniteSubset<C>,
    radius: &[C::Elem],
) -> Result<BTreeSet<C::Elem>> {
    let c = y.parent();
    let fs = symmetrize(c, radius)?;
    let mut out = BTreeSet::new();
    for a in y.elems() {
        for f in &fs {
            let s = c.add(a, f);
            c.check(&s)?;
            out.insert(s);
        }
    }
    Ok(out)
}

/// `Z ∈ exp B(Y, F)`: `Z ⊆ B(Y, F)` and `Y ⊆ B(Z, F)`.
pub fn exp_ball_membership<C: Carrier>(
    z: &FiniteSubset<C>,
    y: &FiniteSubset<C>,
    radius: &[C::Elem],
) -> Result<bool> {
    z.same_parent(y)?;
    let by = group_ball(y, radius)?;
    let bz = group_ball(z, radius)?;
    Ok(z.elems().is_subset(&by) && y.elems().is_subset(&bz))
}

/// Largest symmetric radius for which the centred exp-ball is enumerated.
pub const CENTRED_BALL_LIMIT: usize = 20;

/// Every `Z` with `Z ∈ exp B({0}, F)`. Candidates are the nonempty subsets of
/// `F ∪ −F ∪ {0}`, which contains every member.
pub fn exp_ball_enumerate_centered_identity<C: Carrier>(
    c: &C,
    radius: &[C::Elem],
) -> Result<Vec<FiniteSubset<C>>> {
    let fs: Vec<C::Elem> = symmetrize(c, radius)?.into_iter().collect();
    if fs.len() > CENTRED_BALL_LIMIT {
        return Err(Error::SizeLimit {
            what: "symmetric radius",
            needed: fs.len(),
            limit: CENTRED_BALL_LIMIT,
        });
    }
    let centre = FiniteSubset::new(c, [c.zero()])?;
    let mut out = Vec::new();
    for mask in 1u32..1 << fs.len() {
        let z = FiniteSubset::new(
            c,
            (0..fs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| fs[i].clone()),
        )?;
        if exp_ball_membership(&z, &centre, radius)? {
            out.push(z);
        }
    }
    Ok(out)
}

/// Every `Z ∈ exp B(Y, F)`; candidates are the nonempty subsets of `B(Y, F)`.
pub fn exp_ball_enumerate<C: Carrier>(
    y: &FiniteSubset<C>,
    radius: &[C::Elem],
) -> Result<Vec<FiniteSubset<C>>> {
    let around: Vec<C::Elem> = group_ball(y, radius)?.into_iter().collect();
    if around.len() > CENTRED_BALL_LIMIT {
        return Err(Error::SizeLimit {
            what: "ball around the centre",
            needed: around.len(),
            limit: CENTRED_BALL_LIMIT,
        });
    }
    let mut out = Vec::new();
    for mask in 1u32..1 << around.len() {
        let z = FiniteSubset::new(
            y.parent(),
            (0..around.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| around[i].clone()),
        )?;
        if exp_ball_membership(&z, y, radius)? {
            out.push(z);
        }
    }
    Ok(out)
}

/// `{Y} ∪ {g + Y : g ∈ A}`, without repetitions.
pub fn g_exp_ball<C: Carrier>(
    y: &FiniteSubset<C>,
    shifts: &[C::Elem],
) -> Result<Vec<FiniteSubset<C>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in std::iter::once(Ok(y.clone())).chain(shifts.iter().map(|g| y.translate(g))) {
        let s = s?;
        if seen.insert(s.elems.clone()) {
            out.push(s);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuReport<E> {
    /// `μ(Y, Z) = min max(|F|, |S|)` over `0 ∈ F ∩ S`, `F + Y ⊇ Z`, `S + Z ⊇ Y`.
    pub mu: ExtNat,
    /// Optimal `F` (covers `Z` by translates of `Y`).
    pub forward: Vec<E>,
    /// Optimal `S` (covers `Y` by translates of `Z`).
    pub backward: Vec<E>,
    /// `min |S|` over `0 ∈ S` with `S + Y ⊇ Z` and `S + Z ⊇ Y` simultaneously.
    pub single_set: ExtNat,
    pub single_witness: Vec<E>,
}

impl<E> MuReport<E> {
    pub fn to_json_with(&self, fmt: impl Fn(&E) -> String) -> Value {
        let names = |v: &[E]| v.iter().map(&fmt).collect::<Vec<_>>();
        json!({
            "mu": self.mu.to_json(),
            "forward": names(&self.forward),
            "backward": names(&self.backward),
            "single_set": self.single_set.to_json(),
            "single_witness": names(&self.single_witness),
        })
    }
}

/// Smallest `F ∋ 0` with `F + from ⊇ to`.
fn min_translate_cover<C: Carrier>(
    c: &C,
    from: &BTreeSet<C::Elem>,
    to: &BTreeSet<C::Elem>,
) -> Result<Vec<C::Elem>> {
    let targets: Vec<&C::Elem> = to.difference(from).collect();
    cover_targets(c, &[(from, &targets)])
}

/// Smallest `S ∋ 0` such that for each `(base, targets)` every target lies in `S + base`.
fn cover_targets<C: Carrier>(
    c: &C,
    parts: &[(&BTreeSet<C::Elem>, &Vec<&C::Elem>)],
) -> Result<Vec<C::Elem>> {
    let total: usize = parts.iter().map(|(_, t)| t.len()).sum();
    if total > 64 {
        return Err(Error::SizeLimit {
            what: "cover universe",
            needed: total,
            limit: 64,
        });
    }
    // candidate shifts move some base element onto some target
    let mut shifts: BTreeSet<C::Elem> = BTreeSet::new();
    for (base, targets) in parts {
        for t in targets.iter() {
            for b in base.iter() {
                shifts.insert(c.sub(t, b));
            }
        }
    }
    shifts.remove(&c.zero());
    let shifts: Vec<C::Elem> = shifts.into_iter().collect();
    let masks: Vec<u64> = shifts
        .iter()
        .map(|g| {
            let mut m = 0u64;
            let mut bit = 0;
            for (base, targets) in parts {
                for t in targets.iter() {
                    if base.contains(&c.sub(t, g)) {
                        m |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            m
        })
        .collect();
    let universe = if total == 64 {
        u64::MAX
    } else {
        (1u64 << total) - 1
    };
    let chosen = min_cover(universe, &masks).expect("differences always cover");
    let mut out = vec![c.zero()];
    out.extend(chosen.into_iter().map(|i| shifts[i].clone()));
    Ok(out)
}

pub fn mu_set_distance<C: Carrier>(
    y: &FiniteSubset<C>,
    z: &FiniteSubset<C>,
) -> Result<MuReport<C::Elem>> {
    y.same_parent(z)?;
    let c = y.parent();
    let forward = min_translate_cover(c, y.elems(), z.elems())?;
    let backward = min_translate_cover(c, z.elems(), y.elems())?;
    let t_z: Vec<&C::Elem> = z.elems().difference(y.elems()).collect();
    let t_y: Vec<&C::Elem> = y.elems().difference(z.elems()).collect();
    let single = cover_targets(c, &[(y.elems(), &t_z), (z.elems(), &t_y)])?;
    Ok(MuReport {
        mu: ExtNat::from(forward.len().max(backward.len()) as u64),
        forward,
        backward,
        single_set: ExtNat::from(single.len() as u64),
        single_witness: single,
    })
}

/// `μ` by exhaustive search over all `F, S ∋ 0` (finite groups of order ≤ 20).
pub fn mu_brute_force(
    y: &FiniteSubset<FiniteAbelianGroup>,
    z: &FiniteSubset<FiniteAbelianGroup>,
) -> Result<u64> {
    let g = y.parent();
    let others: Vec<Element> = g.elements().filter(|e| *e != g.zero()).collect();
    if others.len() > 19 {
        return Err(Error::SizeLimit {
            what: "brute-force group order",
            needed: others.len() + 1,
            limit: 20,
        });
    }
    let best = |from: &FiniteSubset<FiniteAbelianGroup>, to: &FiniteSubset<FiniteAbelianGroup>| {
        (0u32..1 << others.len())
            .filter(|mask| {
                let mut covered: BTreeSet<Element> = from.elems().clone();
                for (i, g_i) in others.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        covered.extend(from.elems().iter().map(|x| g.add(g_i, x)));
                    }
                }
                to.elems().is_subset(&covered)
            })
            .map(|mask| mask.count_ones() as u64 + 1)
            .min()
            .expect("the whole group covers")
    };
    Ok(best(y, z).max(best(z, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::finite::{all_subgroups, fag_log_distance};

    fn z(m: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(m).unwrap()
    }

    fn set(g: &FiniteAbelianGroup, xs: &[u64]) -> FiniteSubset<FiniteAbelianGroup> {
        FiniteSubset::new(g, xs.iter().map(|&x| vec![x])).unwrap()
    }

    fn els(xs: &[u64]) -> Vec<Element> {
        xs.iter().map(|&x| vec![x]).collect()
    }

    #[test]
    fn membership_examples() {
        let g = z(12);
        let y = set(&g, &[0]);
        let f = els(&[1, 11]);
        assert!(exp_ball_membership(&set(&g, &[1, 11]), &y, &f).unwrap());
        assert!(!exp_ball_membership(&set(&g, &[6]), &y, &f).unwrap());
        assert!(exp_ball_membership(&y, &y, &[]).unwrap());
        assert_eq!(
            FiniteSubset::new(&g, Vec::<Element>::new()),
            Err(Error::EmptySubset)
        );
        let h = z(6);
        assert_eq!(
            exp_ball_membership(&set(&h, &[0]), &y, &f),
            Err(Error::ParentMismatch)
        );
    }

    #[test]
    fn centred_enumeration() {
        let g = z(12);
        let f = els(&[1, 11]);
        let balls = exp_ball_enumerate_centered_identity(&g, &f).unwrap();
        // brute force over every nonempty subset of the group
        let centre = set(&g, &[0]);
        let mut brute = Vec::new();
        for mask in 1u32..1 << 12 {
            let xs: Vec<u64> = (0..12).filter(|i| mask >> i & 1 == 1).collect();
            let s = set(&g, &xs);
            if exp_ball_membership(&s, &centre, &f).unwrap() {
                brute.push(s);
            }
        }
        assert_eq!(balls.len(), brute.len());
        assert_eq!(balls.len(), 7);
        assert!(balls
            .iter()
            .all(|b| brute.contains(b) && b.len() <= f.len() + 1));
        assert_eq!(
            exp_ball_enumerate_centered_identity(&g, &[]).unwrap(),
            vec![centre.clone()]
        );
        assert_eq!(exp_ball_enumerate(&centre, &f).unwrap(), balls);
    }

    #[test]
    fn window_refuses_to_leave() {
        let w = IntegerWindow::new(5).unwrap();
        let y = FiniteSubset::new(&w, [4i64]).unwrap();
        assert_eq!(group_ball(&y, &[2]), Err(Error::WindowExceeded(6)));
        let z0 = FiniteSubset::new(&w, [0i64]).unwrap();
        let balls = exp_ball_enumerate_centered_identity(&w, &[1]).unwrap();
        assert_eq!(balls.len(), 7);
        assert!(exp_ball_membership(&FiniteSubset::new(&w, [-1, 1]).unwrap(), &z0, &[1]).unwrap());
        assert!(FiniteSubset::new(&w, [9i64]).is_err());
    }

    #[test]
    fn translates() {
        let g = z(6);
        let y = set(&g, &[0, 3]);
        let b = g_exp_ball(&y, &els(&[1])).unwrap();
        assert_eq!(b, vec![y.clone(), set(&g, &[1, 4])]);
        assert_eq!(g_exp_ball(&y, &[]).unwrap(), vec![y.clone()]);
        assert!(g_exp_ball(&y, &els(&[1, 2, 3, 4]))
            .unwrap()
            .iter()
            .all(|s| s.len() == 2));
        assert_eq!(y.to_string(), "{0,3}");
    }

    #[test]
    fn g_exp_within_exp() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let all: Vec<Element> = g.elements().collect();
        for a in &all {
            for b in &all {
                let y = FiniteSubset::new(&g, [a.clone(), b.clone()]).unwrap();
                for shift in &all {
                    let radius = vec![shift.clone()];
                    for s in g_exp_ball(&y, &radius).unwrap() {
                        assert!(exp_ball_membership(&s, &y, &radius).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn mu_examples() {
        let g = z(6);
        let r = mu_set_distance(&set(&g, &[0]), &set(&g, &[0, 3])).unwrap();
        assert_eq!(r.mu, ExtNat::from(2));
        let y = set(&g, &[1, 2]);
        assert_eq!(mu_set_distance(&y, &y).unwrap().mu, ExtNat::one());
        let g12 = z(12);
        let a = set(&g12, &[0, 2, 4, 6, 8, 10]);
        let b = set(&g12, &[0, 3, 6, 9]);
        assert_eq!(mu_set_distance(&a, &b).unwrap().mu, ExtNat::from(3));
    }

    #[test]
    fn mu_matches_brute_force_and_witnesses_cover() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for g in [z(12), FiniteAbelianGroup::new(vec![2, 6]).unwrap()] {
            let all: Vec<Element> = g.elements().collect();
            for _ in 0..40 {
                let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let k = rng.gen_range(1..5);
                    FiniteSubset::new(&g, (0..k).map(|_| all[rng.gen_range(0..all.len())].clone()))
                        .unwrap()
                };
                let (y, w) = (pick(&mut rng), pick(&mut rng));
                let r = mu_set_distance(&y, &w).unwrap();
                assert_eq!(r.mu.to_u64().unwrap(), mu_brute_force(&y, &w).unwrap());
                let covers = |f: &[Element], from: &FiniteSubset<_>, to: &FiniteSubset<_>| {
                    to.elems()
                        .iter()
                        .all(|t| f.iter().any(|s| from.contains(&g.sub(t, s))))
                };
                assert!(covers(&r.forward, &y, &w) && covers(&r.backward, &w, &y));
                assert!(covers(&r.single_witness, &y, &w) && covers(&r.single_witness, &w, &y));
                assert!(r.single_set >= r.mu);
            }
        }
    }

    #[test]
    fn mu_equals_subgroup_distance() {
        let g = z(12);
        let subs = all_subgroups(&g);
        for a in &subs {
            for b in &subs {
                let ya = FiniteSubset::new(&g, a.elements()).unwrap();
                let yb = FiniteSubset::new(&g, b.elements()).unwrap();
                assert_eq!(
                    mu_set_distance(&ya, &yb).unwrap().mu,
                    fag_log_distance(a, b).unwrap()
                );
            }
        }
    }
}

//! Explicit maps and ball enumerators on subgroup hyperballeans:
//! `m̄ ↦ (Π pᵢ^{mᵢ})ℤ` into `L(ℤ)`, the Hamming embedding of taxicab grids,
//! `F ↦ ⊕_{n∈F} Z(p)` in an elementary abelian group, the cyclic-subgroup tree
//! of a finite p-group, and balls in `L(ℤ)` and `L(ℤ_{p^∞})`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{pow, One};

use crate::ballean::hamming::HammingPoint;
use crate::error::{Error, Result};
use crate::groups::finite::{is_prime, Element, FagSubgroup, FiniteAbelianGroup};
use crate::groups::prufer::PruferSubgroup;
use crate::lattice::{ExtNat, Lattice};

/// Distinct primes `p₁ < … < pₙ` and a logarithm base `b ≤ p₁` for display.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeTuple {
    primes: Vec<u64>,
    log_base: f64,
}

impl PrimeTuple {
    /// Sorts the primes; the base defaults to 2.
    pub fn new(primes: &[u64]) -> Result<Self> {
        Self::with_base(primes, 2.0)
    }

    pub fn with_base(primes: &[u64], log_base: f64) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidArgument("need at least one prime".into()));
        }
        let mut ps = primes.to_vec();
        ps.sort_unstable();
        if let Some(&p) = ps.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if ps.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("primes must be distinct".into()));
        }
        if !(log_base > 1.0 && log_base <= ps[0] as f64) {
            return Err(Error::InvalidArgument(format!(
                "log base {log_base} must lie in (1, {}]",
                ps[0]
            )));
        }
        Ok(PrimeTuple {
            primes: ps,
            log_base,
        })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn log_base(&self) -> f64 {
        self.log_base
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `⌊log_base⌋`-style integer base used for the exact lower bound, at least 2.
    fn integer_base(&self) -> u64 {
        (self.log_base.floor() as u64).max(2).min(self.primes[0])
    }

    fn check_dim(&self, m: &TaxiPoint) -> Result<()> {
        if m.coords.len() != self.primes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.primes.len(),
                got: m.coords.len(),
            });
        }
        Ok(())
    }

    /// `Π pᵢ^{eᵢ}`
    fn power_product(&self, exps: impl IntoIterator<Item = u64>) -> BigUint {
        self.primes
            .iter()
            .zip(exps)
            .fold(BigUint::one(), |acc, (&p, e)| {
                acc * pow(BigUint::from(p), e as usize)
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaxiPoint {
    pub coords: Vec<u64>,
}

impl TaxiPoint {
    pub fn new(coords: Vec<u64>) -> Self {
        TaxiPoint { coords }
    }
}

impl fmt::Display for TaxiPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `m̄ ↦ (p₁^{m₁}···pₙ^{mₙ})ℤ`
pub fn iota(pt: &PrimeTuple, m: &TaxiPoint) -> Result<Lattice> {
    pt.check_dim(m)?;
    Ok(Lattice::multiples(
        pt.power_product(m.coords.iter().copied()),
    ))
}

/// `μ′(A_m̄, A_m̄′)` without lattice arithmetic: the larger of the two products
/// `Π pᵢ^{(mᵢ−mᵢ′)⁺}` and `Π pᵢ^{(mᵢ′−mᵢ)⁺}`, i.e. the positive part taken in the
/// direction of the larger generator.
pub fn dlog_closed_form(pt: &PrimeTuple, m: &TaxiPoint, m2: &TaxiPoint) -> Result<ExtNat> {
    pt.check_dim(m)?;
    pt.check_dim(m2)?;
    let a = pt.power_product(m.coords.iter().copied());
    let b = pt.power_product(m2.coords.iter().copied());
    let up = |x: &TaxiPoint, y: &TaxiPoint| {
        pt.power_product(
            x.coords
                .iter()
                .zip(&y.coords)
                .map(|(&u, &v)| u.saturating_sub(v)),
        )
    };
    Ok(ExtNat::finite(if a >= b { up(m, m2) } else { up(m2, m) }))
}

/// `Σ |mᵢ − mᵢ′|`
pub fn taxi_distance(m: &TaxiPoint, m2: &TaxiPoint) -> Result<u64> {
    if m.coords.len() != m2.coords.len() {
        return Err(Error::DimensionMismatch {
            expected: m.coords.len(),
            got: m2.coords.len(),
        });
    }
    Ok(m.coords
        .iter()
        .zip(&m2.coords)
        .map(|(&a, &b)| a.abs_diff(b))
        .sum())
}

/// A report shared by every verification sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub claim: String,
    pub paper_ref: String,
    pub samples: u64,
    pub violations: u64,
    pub max_ratio: Option<f64>,
    /// Up to a handful of failing cases, for diagnostics.
    pub examples: Vec<String>,
}

impl VerifyReport {
    pub fn new(claim: &str, paper_ref: &str) -> Self {
        VerifyReport {
            claim: claim.into(),
            paper_ref: paper_ref.into(),
            samples: 0,
            violations: 0,
            max_ratio: None,
            examples: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < 5 {
                self.examples.push(describe());
            }
        }
    }

    pub fn observe_ratio(&mut self, r: f64) {
        if r.is_finite() {
            self.max_ratio = Some(self.max_ratio.map_or(r, |m| m.max(r)));
        }
    }

    pub fn merge(&mut self, other: VerifyReport) {
        self.samples += other.samples;
        self.violations += other.violations;
        if let Some(r) = other.max_ratio {
            self.observe_ratio(r);
        }
        for e in other.examples {
            if self.examples.len() < 5 {
                self.examples.push(e);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "claim": self.claim,
            "paper_ref": self.paper_ref,
            "samples": self.samples,
            "violations": self.violations,
            "max_ratio": self.max_ratio,
            "examples": self.examples,
        })
    }
}

/// Result of the two quasi-isometry inequalities on one pair.
#[derive(Clone, Debug, PartialEq)]
pub struct QiCheck {
    pub mu: ExtNat,
    pub taxi: u64,
    /// `μ′ ≤ p_max^{d_T}`, i.e. `d_log ≤ log(p_max)·d_T`.
    pub upper_ok: bool,
    /// `b^{|Δⱼ|} ≤ μ′` for every coordinate, hence `d_T ≤ n·log_b μ′`.
    pub lower_ok: bool,
    /// `d_log / (log(p_max)·d_T)`
    pub upper_ratio: Option<f64>,
    /// `d_T / (n·log_b μ′)`
    pub lower_ratio: Option<f64>,
}

pub fn check_iota_pair(pt: &PrimeTuple, m: &TaxiPoint, m2: &TaxiPoint) -> Result<QiCheck> {
    let mu = dlog_closed_form(pt, m, m2)?;
    let taxi = taxi_distance(m, m2)?;
    let mu_int = mu.as_finite().expect("closed form is finite").clone();
    let p_max = *pt.primes.last().expect("nonempty");
    let upper_ok = mu_int <= pow(BigUint::from(p_max), taxi as usize);
    let b = BigUint::from(pt.integer_base());
    let lower_ok = m
        .coords
        .iter()
        .zip(&m2.coords)
        .all(|(&u, &v)| pow(b.clone(), u.abs_diff(v) as usize) <= mu_int);
    let d_log = mu.log(pt.log_base);
    let n = pt.len() as f64;
    let upper_ratio = (taxi > 0).then(|| d_log / ((p_max as f64).log(pt.log_base) * taxi as f64));
    let lower_ratio = (taxi > 0).then(|| {
        let lb = mu.log(pt.integer_base() as f64);
        taxi as f64 / (n * lb)
    });
    Ok(QiCheck {
        mu,
        taxi,
        upper_ok,
        lower_ok,
        upper_ratio,
        lower_ratio,
    })
}

/// Both inequalities on every pair; the ratio reported is the largest of the two distortion ratios.
pub fn verify_iota_quasi_isometry(
    pt: &PrimeTuple,
    samples: &[(TaxiPoint, TaxiPoint)],
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "subgroups (p1^m1...pn^mn)Z are quasi-isometric to the taxicab grid N^n",
        "logarithmic distance on products of prime powers versus taxicab distance",
    );
    for (a, b) in samples {
        let c = check_iota_pair(pt, a, b)?;
        report.record(c.upper_ok && c.lower_ok, || {
            format!("{a} vs {b}: mu'={} d_T={}", c.mu, c.taxi)
        });
        if let Some(r) = c.upper_ratio {
            report.observe_ratio(r);
        }
        if let Some(r) = c.lower_ratio {
            report.observe_ratio(r);
        }
    }
    Ok(report)
}

/// Disjoint infinite index streams `W¹, …, Wⁿ ⊆ ℕ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexStreams {
    /// `Wⁱ = {i, i+n, i+2n, …}`
    Residues,
    /// `Wⁱ = {startᵢ + k·stepᵢ}`; progressions must be pairwise disjoint.
    Arithmetic(Vec<(u64, u64)>),
}

impl IndexStreams {
    pub fn arithmetic(progs: Vec<(u64, u64)>) -> Result<Self> {
        if progs.iter().any(|&(_, s)| s == 0) {
            return Err(Error::InvalidArgument(
                "stream steps must be positive".into(),
            ));
        }
        for (i, &(a, s)) in progs.iter().enumerate() {
            for &(b, t) in &progs[i + 1..] {
                // a + ks = b + lt has a solution with k, l ≥ 0 iff a ≡ b (mod gcd)
                if a.abs_diff(b) % s.gcd(&t) == 0 {
                    return Err(Error::InvalidArgument(format!(
                        "streams {a}+{s}k and {b}+{t}k intersect"
                    )));
                }
            }
        }
        Ok(IndexStreams::Arithmetic(progs))
    }

    /// `a^i_k`
    pub fn index(&self, n: usize, i: usize, k: u64) -> Result<u64> {
        match self {
            IndexStreams::Residues => Ok(k * n as u64 + i as u64),
            IndexStreams::Arithmetic(p) => {
                if p.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: p.len(),
                        got: n,
                    });
                }
                Ok(p[i].0 + k * p[i].1)
            }
        }
    }
}

/// `φ(m̄) = ⋃ᵢ {a^i_0, …, a^i_{mᵢ}}`
pub fn hamming_embed(streams: &IndexStreams, m: &TaxiPoint) -> Result<HammingPoint> {
    let n = m.coords.len();
    let mut support = Vec::new();
    for (i, &mi) in m.coords.iter().enumerate() {
        for k in 0..=mi {
            support.push(streams.index(n, i, k)?);
        }
    }
    Ok(HammingPoint::new(support))
}

/// `H_F = ⊕_{j∈F} Z(p)·eⱼ` inside `Z(p)^{N+1}`.
pub fn elementary_subgroup(p: u64, n_max: usize, f: &BTreeSet<usize>) -> Result<FagSubgroup> {
    if let Some(&j) = f.iter().find(|&&j| j > n_max) {
        return Err(Error::ElementOutOfRange(format!(
            "index {j} outside 0..={n_max}"
        )));
    }
    let g = FiniteAbelianGroup::elementary(p, n_max + 1)?;
    let gens: Vec<Element> = f
        .iter()
        .map(|&j| {
            let mut e = vec![0; n_max + 1];
            e[j] = 1;
            e
        })
        .collect();
    FagSubgroup::from_elements(&g, &gens)
}

/// `(μ′(H_F, H_F′), p^{max(|F∖F′|, |F′∖F|)})` with both subgroups realized in `Z(p)^{N+1}`.
pub fn elementary_abelian_correspondence(
    p: u64,
    n_max: usize,
    f: &BTreeSet<usize>,
    f2: &BTreeSet<usize>,
) -> Result<(ExtNat, ExtNat)> {
    let a = elementary_subgroup(p, n_max, f)?;
    let b = elementary_subgroup(p, n_max, f2)?;
    let computed = crate::groups::finite::fag_log_distance(&a, &b)?;
    let d = f.difference(f2).count().max(f2.difference(f).count());
    Ok((computed, ExtNat::finite(pow(BigUint::from(p), d))))
}

/// The graph of cyclic subgroups of a finite p-group, edges `X < Y` with `|Y : X| = p`.
#[derive(Clone, Debug)]
pub struct CyclicTree {
    pub prime: u64,
    pub vertices: Vec<FagSubgroup>,
    /// Orders of the vertices.
    pub orders: Vec<u64>,
    /// `(smaller, larger)` pairs.
    pub edges: Vec<(usize, usize)>,
    pub root: usize,
    pub certificate: TreeCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCertificate {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub connected: bool,
    /// Largest distance from the root.
    pub height: u32,
    /// `log_p` of the exponent of the group.
    pub log_exponent: u32,
}

impl TreeCertificate {
    pub fn is_tree(&self) -> bool {
        self.connected && self.edge_count + 1 == self.vertex_count
    }

    pub fn holds(&self) -> bool {
        self.is_tree() && self.height == self.log_exponent
    }
}

impl CyclicTree {
    /// Children of each vertex.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            ch[a].push(b);
        }
        ch
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "prime": self.prime,
            "vertices": self.vertices.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "orders": self.orders,
            "edges": self.edges,
            "root": self.root,
            "certificate": {
                "vertices": self.certificate.vertex_count,
                "edges": self.certificate.edge_count,
                "connected": self.certificate.connected,
                "is_tree": self.certificate.is_tree(),
                "height": self.certificate.height,
                "log_p_exponent": self.certificate.log_exponent,
            },
        })
    }
}

/// Builds the graph from element sets and certifies it is a tree of the expected height.
pub fn cyclic_subgroup_tree(g: &FiniteAbelianGroup) -> Result<CyclicTree> {
    let p = g
        .p_group_prime()
        .ok_or_else(|| Error::NotAPGroup(g.to_string()))?;
    // each cyclic subgroup as the set of multiples of a generator
    let mut sets: Vec<BTreeSet<Element>> = Vec::new();
    let mut gens: Vec<Element> = Vec::new();
    let mut index: HashMap<BTreeSet<Element>, usize> = HashMap::new();
    for e in g.elements() {
        let mut set = BTreeSet::new();
        let mut x = g.zero();
        loop {
            set.insert(x.clone());
            x = g.add(&x, &e);
            if x == g.zero() {
                break;
            }
        }
        if !index.contains_key(&set) {
            index.insert(set.clone(), sets.len());
            sets.push(set);
            gens.push(e);
        }
    }
    let orders: Vec<u64> = sets.iter().map(|s| s.len() as u64).collect();
    let mut edges = Vec::new();
    for (i, small) in sets.iter().enumerate() {
        for (j, big) in sets.iter().enumerate() {
            if orders[j] == orders[i] * p && small.is_subset(big) {
                edges.push((i, j));
            }
        }
    }
    let root = orders
        .iter()
        .position(|&o| o == 1)
        .expect("trivial subgroup");
    let mut adj = vec![Vec::new(); sets.len()];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut depth = vec![u32::MAX; sets.len()];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if depth[w] == u32::MAX {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let connected = depth.iter().all(|&d| d != u32::MAX);
    let height = depth
        .iter()
        .copied()
        .filter(|&d| d != u32::MAX)
        .max()
        .unwrap_or(0);
    let mut log_exponent = 0;
    let mut e = g.exponent();
    while e > 1 {
        e /= p;
        log_exponent += 1;
    }
    let vertices = gens
        .iter()
        .map(|e| FagSubgroup::from_elements(g, std::slice::from_ref(e)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CyclicTree {
        prime: p,
        certificate: TreeCertificate {
            vertex_count: sets.len(),
            edge_count: edges.len(),
            connected,
            height,
            log_exponent,
        },
        vertices,
        orders,
        edges,
        root,
    })
}

/// Partitions of `k` into non-increasing parts.
fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn go(k: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=k.min(max)).rev() {
            cur.push(part);
            go(k - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// Every non-trivial abelian p-group of order at most `max_order`, up to isomorphism.
pub fn abelian_p_groups(max_order: u64) -> Vec<FiniteAbelianGroup> {
    let mut out = Vec::new();
    for p in (2..=max_order).filter(|&p| is_prime(p)) {
        let mut k = 1;
        while p.checked_pow(k).is_some_and(|q| q <= max_order) {
            for parts in partitions(k) {
                let mut factors: Vec<u64> = parts.iter().map(|&e| p.pow(e)).collect();
                factors.sort_unstable();
                out.push(FiniteAbelianGroup::new(factors).expect("chain of p-powers"));
            }
            k += 1;
        }
    }
    out
}

/// `F ∪ −F ∪ {0}`
fn symmetric(f: &[i64]) -> BTreeSet<i64> {
    f.iter().flat_map(|&x| [x, -x]).chain([0]).collect()
}

/// `⟨gcd(a, modulus)⟩ ⊆ F + modulusℤ` in `ℤ/modulusℤ`.
fn cyclic_in_residues(a: u64, modulus: u64, residues: &BTreeSet<u64>) -> bool {
    let g = a.gcd(&modulus);
    (0..modulus / g).all(|j| residues.contains(&(j * g)))
}

fn residues(f: &BTreeSet<i64>, modulus: u64) -> BTreeSet<u64> {
    f.iter()
        .map(|&x| x.rem_euclid(modulus as i64) as u64)
        .collect()
}

/// Every `k ≥ 1` with `kℤ ∈ exp B(nℤ, F)` for a finite radius `F ⊆ ℤ`.
///
/// `kℤ ⊆ nℤ + F` says the image of `kℤ` in `ℤ/nℤ`, the cyclic subgroup
/// `⟨gcd(k, n)⟩`, lies in the image of `F`; symmetrically for `nℤ ⊆ kℤ + F`.
/// The second condition needs `k / gcd(n, k) ≤ |F ∪ −F ∪ {0}|`, so `k ≤ n·|F ∪ −F ∪ {0}|`.
pub fn lz_exp_ball_general(n: u64, f: &[i64]) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let fs = symmetric(f);
    let q_n = residues(&fs, n);
    let bound = n * fs.len() as u64;
    Ok((1..=bound)
        .filter(|&k| cyclic_in_residues(k, n, &q_n) && cyclic_in_residues(n, k, &residues(&fs, k)))
        .collect())
}

/// `lz_exp_ball_general` with `F = [−m, m] ∩ ℤ`.
pub fn lz_exp_ball(n: u64, m: u64) -> Result<Vec<u64>> {
    let f: Vec<i64> = (0..=m as i64).collect();
    lz_exp_ball_general(n, &f)
}

/// `{mℤ : max(lcm/n, lcm/m) ≤ K}`; every such `m` lies in `[⌈n/K⌉, nK]`.
pub fn lz_log_ball(n: u64, k: u64) -> Result<Vec<u64>> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("n and K must be positive".into()));
    }
    let lo = n.div_ceil(k);
    let hi = n
        .checked_mul(k)
        .ok_or_else(|| Error::InvalidArgument("n*K overflows".into()))?;
    Ok((lo..=hi)
        .filter(|&m| {
            let l = n.lcm(&m);
            (l / n).max(l / m) <= k
        })
        .collect())
}

/// `{H_j : p^{|n−j|} ≤ K}`
pub fn prufer_ball(p: u64, n: u32, k: u64) -> Result<Vec<PruferSubgroup>> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be positive".into()));
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let mut radius = 0u32;
    while p.checked_pow(radius + 1).is_some_and(|q| q <= k) {
        radius += 1;
    }
    (n.saturating_sub(radius)..=n.saturating_add(radius))
        .map(|j| PruferSubgroup::finite(p, j))
        .collect()
}

//! Exit-gate checks. Each criterion prints one PASS/FAIL line with its
//! elapsed time against a fixed budget; the process fails if any line fails.
//! Expected values come from oracles written here, not from the library.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use hyperballean::ballean::{
    exp_hyperballean_of, exp_index, hamming_distance, mask_of, mu_set_distance,
    random_valid_ballean, ExplicitBallean, FiniteSubset, HammingPoint,
};
use hyperballean::groups::{
    all_subgroups, asdim_classify, iso_points_classify, AsdimReport, CardinalToken,
    FiniteAbelianGroup, GroupDescriptor,
};
use hyperballean::lattice::{ExtNat, Lattice};
use hyperballean::witnesses::{
    abelian_p_groups, cyclic_subgroup_tree, dlog_closed_form, elementary_subgroup, hamming_embed,
    iota, lz_exp_ball, IndexStreams, PrimeTuple, TaxiPoint,
};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Small integer linear algebra used only by the oracles (i128, tiny inputs).

fn rank_i128(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..m.len() {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by cofactor expansion; matrices here are at most 3x3.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = s * det(&minor);
        }
    }
    adj
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Number of cosets of `B` met by `A`, both given by `r` independent rows
/// projected to `r` coordinates where they stay independent. The coset of x
/// is keyed by `x·adj(B) mod |det B|`; the keys of `A` form the subgroup
/// generated by the keys of its rows, found by breadth-first closure.
fn cosets_met(a: &[Vec<i128>], b: &[Vec<i128>]) -> usize {
    let d = det(b).abs();
    let adj = adjugate(b);
    let key = |x: &[i128]| -> Vec<i128> {
        (0..x.len())
            .map(|j| {
                (0..x.len())
                    .map(|i| x[i] * adj[i][j])
                    .sum::<i128>()
                    .rem_euclid(d)
            })
            .collect()
    };
    let gens: Vec<Vec<i128>> = a.iter().map(|r| key(r)).collect();
    let zero = vec![0i128; b.len()];
    let mut seen: HashSet<Vec<i128>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(k) = queue.pop_front() {
        for g in &gens {
            let next: Vec<i128> = k
                .iter()
                .zip(g)
                .map(|(x, y)| (x + y).rem_euclid(d))
                .collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

/// μ′(A, B) from residue counting; `None` means infinite.
fn mu_oracle(a: &[Vec<i128>], b: &[Vec<i128>]) -> Option<u64> {
    let (ra, rb) = (rank_i128(a), rank_i128(b));
    let both: Vec<Vec<i128>> = a.iter().chain(b).cloned().collect();
    if ra != rb || rank_i128(&both) != ra {
        return None;
    }
    if ra == 0 {
        return Some(1);
    }
    let n = a[0].len();
    let cols = subsets(n, ra)
        .into_iter()
        .find(|cs| {
            let sq: Vec<Vec<i128>> = a
                .iter()
                .map(|r| cs.iter().map(|&c| r[c]).collect())
                .collect();
            det(&sq) != 0
        })
        .expect("independent rows have a nonzero minor");
    let project = |m: &[Vec<i128>]| -> Vec<Vec<i128>> {
        m.iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect()
    };
    let (pa, pb) = (project(a), project(b));
    Some(cosets_met(&pa, &pb).max(cosets_met(&pb, &pa)) as u64)
}

fn random_independent_rows(
    rng: &mut ChaCha8Rng,
    n: usize,
    r: usize,
    bound: i128,
) -> Vec<Vec<i128>> {
    loop {
        let rows: Vec<Vec<i128>> = (0..r)
            .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        if rank_i128(&rows) == r {
            return rows;
        }
    }
}

fn mul_rows(m: &[Vec<i128>], c: &[Vec<i128>]) -> Vec<Vec<i128>> {
    m.iter()
        .map(|row| {
            (0..c[0].len())
                .map(|j| row.iter().zip(c).map(|(x, cr)| x * cr[j]).sum())
                .collect()
        })
        .collect()
}

/// Pairs with a mix of commensurable and non-commensurable members.
fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Vec<i128>>, Vec<Vec<i128>>) {
    match rng.gen_range(0..4) {
        // independent full-rank lattices are always commensurable
        0 => (
            random_independent_rows(rng, n, n, 8),
            random_independent_rows(rng, n, n, 8),
        ),
        // unrelated lower-rank lattices, usually not commensurable
        1 => {
            let r = rng.gen_range(0..n);
            let s = rng.gen_range(0..=n);
            (
                random_independent_rows(rng, n, r, 8),
                random_independent_rows(rng, n, s, 8),
            )
        }
        // two full-rank sublattices of a common lower-rank lattice
        _ => loop {
            let r = rng.gen_range(1..=n);
            let c = random_independent_rows(rng, n, r, 2);
            let a = mul_rows(&random_independent_rows(rng, r, r, 2), &c);
            let b = mul_rows(&random_independent_rows(rng, r, r, 2), &c);
            if a.iter().chain(&b).flatten().all(|x| x.abs() <= 8) {
                break (a, b);
            }
        },
    }
}

fn to_lattice(n: usize, rows: &[Vec<i128>]) -> Lattice {
    let rows: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    Lattice::from_i64_rows(n, &rows).unwrap()
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut finite, mut infinite) = (0, 0);
    for i in 0..200 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let (a, b) = random_pair(&mut rng, n);
        let got = to_lattice(n, &a)
            .log_subgroup_distance(&to_lattice(n, &b))
            .unwrap();
        let want = match mu_oracle(&a, &b) {
            Some(m) => {
                finite += 1;
                ExtNat::finite(m)
            }
            None => {
                infinite += 1;
                ExtNat::Infinity
            }
        };
        ensure(got == want, || {
            format!("pair {i}: {a:?} vs {b:?}: got {got}, oracle {want}")
        })?;
    }
    Ok(format!("200 pairs ({finite} finite, {infinite} infinite)"))
}

// ---------------------------------------------------------------------------

fn criterion_2() -> Check {
    let mut pairs = 0;
    for factors in [vec![12], vec![2, 4], vec![3, 9]] {
        let g = FiniteAbelianGroup::new(factors).unwrap();
        let subs = all_subgroups(&g);
        let elems: Vec<BTreeSet<Vec<u64>>> = subs
            .iter()
            .map(|s| s.elements().into_iter().collect())
            .collect();
        let results: Vec<Result<(), String>> = (0..subs.len())
            .into_par_iter()
            .flat_map(|i| (0..subs.len()).into_par_iter().map(move |j| (i, j)))
            .map(|(i, j)| {
                let common = elems[i].intersection(&elems[j]).count();
                let want = (elems[i].len() / common).max(elems[j].len() / common) as u64;
                let y =
                    FiniteSubset::new(&g, elems[i].iter().cloned().collect::<Vec<_>>()).unwrap();
                let z =
                    FiniteSubset::new(&g, elems[j].iter().cloned().collect::<Vec<_>>()).unwrap();
                let got = mu_set_distance(&y, &z).unwrap().mu;
                ensure(got == ExtNat::finite(want), || {
                    format!(
                        "{g}: {} vs {}: mu {got}, index bound {want}",
                        subs[i], subs[j]
                    )
                })
            })
            .collect();
        for r in results {
            r?;
        }
        pairs += subs.len() * subs.len();
    }
    Ok(format!("{pairs} subgroup pairs"))
}

// ---------------------------------------------------------------------------

/// kZ ∈ exp B(nZ, [-m, m]) checked over one full period of each inclusion.
fn lz_member(n: i64, k: i64, m: i64) -> bool {
    let near = |x: i64, modulus: i64| (-m..=m).any(|f| (x - f).rem_euclid(modulus) == 0);
    (0..n).all(|j| near(j * k, n)) && (0..k).all(|j| near(j * n, k))
}

fn criterion_3() -> Check {
    for n in 4..=60u64 {
        let m = (n - 1) / 3;
        let got = lz_exp_ball(n, m).unwrap();
        ensure(got == vec![n], || format!("n={n}, m={m}: {got:?}"))?;
    }
    let mut cases = 0;
    for n in 1..=30u64 {
        for m in 0..=4u64 {
            // nZ ⊆ kZ + [-m, m] forces k ≤ n + 2m + 1
            let bound = n + 2 * m + 1;
            let want: Vec<u64> = (1..=bound)
                .filter(|&k| lz_member(n as i64, k as i64, m as i64))
                .collect();
            let got = lz_exp_ball(n, m).unwrap();
            ensure(got == want, || {
                format!("n={n}, m={m}: got {got:?}, brute force {want:?}")
            })?;
            cases += 1;
        }
    }
    Ok(format!(
        "57 singleton balls, {cases} brute-force comparisons"
    ))
}

// ---------------------------------------------------------------------------

fn grid(n: usize, max: u64) -> Vec<Vec<u64>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|p| (0..=max).map(move |c| [p.clone(), vec![c]].concat()))
            .collect()
    })
}

fn criterion_4() -> Check {
    let primes = [2u64, 3, 5];
    let mut pairs = 0;
    for n in 1..=3 {
        let pt = PrimeTuple::new(&primes[..n]).unwrap();
        let points = grid(n, 8);
        let lattices: Vec<Lattice> = points
            .iter()
            .map(|p| iota(&pt, &TaxiPoint::new(p.clone())).unwrap())
            .collect();
        let mismatches: usize = (0..points.len())
            .into_par_iter()
            .map(|i| {
                let a = TaxiPoint::new(points[i].clone());
                (i..points.len())
                    .filter(|&j| {
                        let b = TaxiPoint::new(points[j].clone());
                        let closed = dlog_closed_form(&pt, &a, &b).unwrap();
                        closed != lattices[i].log_subgroup_distance(&lattices[j]).unwrap()
                    })
                    .count()
            })
            .sum();
        ensure(mismatches == 0, || {
            format!("n={n}: {mismatches} closed-form mismatches")
        })?;
        pairs += points.len() * (points.len() + 1) / 2;
    }
    let pt = PrimeTuple::new(&primes).unwrap();

    // Quasi-isometry: μ′ ≤ p_max^{d_T} and 2^{|Δj|} ≤ μ′ for each j,
    // i.e. d_log ≤ log(p_max)·d_T and d_T ≤ n·log₂ μ′.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pmax = BigUint::from(*primes.iter().max().unwrap());
    let mut violations = 0;
    for _ in 0..1000 {
        let a: Vec<u64> = (0..3).map(|_| rng.gen_range(0..=12)).collect();
        let b: Vec<u64> = (0..3).map(|_| rng.gen_range(0..=12)).collect();
        let la = iota(&pt, &TaxiPoint::new(a.clone())).unwrap();
        let lb = iota(&pt, &TaxiPoint::new(b.clone())).unwrap();
        let mu = la.log_subgroup_distance(&lb).unwrap();
        let mu = mu
            .as_finite()
            .expect("full-rank lattices are commensurable")
            .clone();
        let taxi: u32 = a.iter().zip(&b).map(|(x, y)| x.abs_diff(*y) as u32).sum();
        let upper = mu <= pmax.pow(taxi);
        let lower = a
            .iter()
            .zip(&b)
            .all(|(x, y)| BigUint::from(2u8).pow(x.abs_diff(*y) as u32) <= mu);
        if !(upper && lower) {
            violations += 1;
        }
    }
    ensure(violations == 0, || {
        format!("{violations} quasi-isometry violations")
    })?;
    Ok(format!(
        "{pairs} closed-form pairs, 1000 QI samples, 0 violations"
    ))
}

// ---------------------------------------------------------------------------

fn criterion_5() -> Check {
    let mut pairs = 0;
    for n in 1..=3 {
        let points = grid(n, 6);
        let images: Vec<HammingPoint> = points
            .iter()
            .map(|p| hamming_embed(&IndexStreams::Residues, &TaxiPoint::new(p.clone())).unwrap())
            .collect();
        for i in 0..points.len() {
            for j in 0..points.len() {
                let taxi: u64 = points[i]
                    .iter()
                    .zip(&points[j])
                    .map(|(x, y)| x.abs_diff(*y))
                    .sum();
                let h = hamming_distance(&images[i], &images[j]);
                ensure(h == taxi, || {
                    format!("{:?} {:?}: hamming {h}, taxi {taxi}", points[i], points[j])
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

// ---------------------------------------------------------------------------

fn criterion_6() -> Check {
    let mut pairs = 0;
    for p in [2u64, 3] {
        let sets: Vec<BTreeSet<usize>> = (0u32..128)
            .map(|mask| (0..7).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        let subs: Vec<_> = sets
            .iter()
            .map(|f| elementary_subgroup(p, 7, f).unwrap())
            .collect();
        for (f, h) in sets.iter().zip(&subs) {
            ensure(h.order() == p.pow(f.len() as u32), || {
                format!("|H_F| wrong for {f:?}")
            })?;
        }
        let bad: Vec<String> = (0..128)
            .into_par_iter()
            .flat_map(|i| (0..128).into_par_iter().map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let (f, g) = (&sets[i], &sets[j]);
                let k = f.difference(g).count().max(g.difference(f).count()) as u32;
                let got = hyperballean::groups::fag_log_distance(&subs[i], &subs[j]).unwrap();
                (got != ExtNat::finite(p.pow(k))).then(|| format!("p={p}, {f:?} vs {g:?}: {got}"))
            })
            .collect();
        ensure(bad.is_empty(), || bad[0].clone())?;
        pairs += 128 * 128;
    }
    Ok(format!("{pairs} pairs"))
}

// ---------------------------------------------------------------------------

fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn criterion_7() -> Check {
    let groups = abelian_p_groups(81);
    for g in &groups {
        let tree = cyclic_subgroup_tree(g).unwrap();
        let v = tree.vertices.len();
        // cyclic subgroups counted from element orders: each cyclic subgroup
        // of order d has φ(d) generators
        let mut by_order: HashMap<u64, u64> = HashMap::new();
        for e in g.elements() {
            *by_order.entry(g.element_order(&e)).or_default() += 1;
        }
        let cyclic: u64 = by_order.iter().map(|(&d, &c)| c / euler_phi(d)).sum();
        ensure(v as u64 == cyclic, || {
            format!("{g}: {v} vertices, {cyclic} cyclic subgroups")
        })?;
        ensure(tree.edges.len() + 1 == v, || {
            format!("{g}: {} edges for {v} vertices", tree.edges.len())
        })?;
        // connectivity and height by breadth-first search from the trivial subgroup
        let mut adj = vec![Vec::new(); v];
        for &(a, b) in &tree.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut depth = vec![None; v];
        depth[tree.root] = Some(0u32);
        let mut queue = VecDeque::from([tree.root]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if depth[y].is_none() {
                    depth[y] = Some(depth[x].unwrap() + 1);
                    queue.push_back(y);
                }
            }
        }
        ensure(depth.iter().all(Option::is_some), || {
            format!("{g}: not connected")
        })?;
        let height = depth.iter().map(|d| d.unwrap()).max().unwrap();
        let p = tree.prime;
        let exponent = *g.factors().last().unwrap_or(&1);
        let log_exp = (0..).find(|&k| p.pow(k) == exponent).unwrap_or(0);
        let log_exp = if g.factors().is_empty() { 0 } else { log_exp };
        ensure(height == log_exp, || {
            format!("{g}: height {height}, log_p exponent {log_exp}")
        })?;
    }
    Ok(format!("{} p-groups", groups.len()))
}

// ---------------------------------------------------------------------------

fn set_of(b: &ExplicitBallean, mask: u64) -> Vec<usize> {
    (0..b.len()).filter(|&i| mask >> i & 1 == 1).collect()
}

/// `Bⁿ(Y, r)` by repeated union of single balls.
fn iterate(b: &ExplicitBallean, mask: u64, r: usize, steps: usize) -> u64 {
    (0..steps).fold(mask, |cur, _| {
        set_of(b, cur)
            .iter()
            .fold(0u64, |acc, &x| acc | mask_of(b.ball(x, r)))
    })
}

/// Cellular iff every ball is a union of classes of the relation "y ∈ B(x, r)",
/// i.e. each ball equals the connected component of its centre.
fn cellular_oracle(b: &ExplicitBallean) -> bool {
    (0..b.radii().len()).all(|r| {
        (0..b.len()).all(|x| {
            let mut comp = 1u64 << x;
            loop {
                let next = iterate(b, comp, r, 1);
                if next == comp {
                    break;
                }
                comp = next;
            }
            mask_of(b.ball(x, r)) == comp
        })
    })
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0u64;
    let mut cellular_instances = 0;
    for idx in 0..100 {
        let n = rng.gen_range(1..=6);
        let extra = rng.gen_range(0..3);
        let b = random_valid_ballean(&mut rng, n, extra);
        ensure(b.validate().violation.is_none(), || {
            format!("instance {idx} invalid")
        })?;
        let e = exp_hyperballean_of(&b).unwrap();
        let full = (1u64 << n) - 1;
        for r in 0..b.radii().len() {
            for y in 1..=full {
                for steps in 1..=4 {
                    let by = iterate(&b, y, r, steps);
                    let lhs = mask_of(&e.ball_iterate(exp_index(y), r, steps));
                    for zi in (0..e.len()).filter(|&i| lhs >> i & 1 == 1) {
                        let z = zi as u64 + 1;
                        let bz = iterate(&b, z, r, steps);
                        ensure(z & !by == 0 && y & !bz == 0, || {
                            format!("instance {idx}: Y={y:b}, Z={z:b}, radius {r}, n={steps}")
                        })?;
                    }
                    checked += 1;
                }
            }
        }
        for c in [b.clone(), b.cellularization()] {
            if cellular_oracle(&c) {
                cellular_instances += 1;
                let ce = exp_hyperballean_of(&c).unwrap();
                ensure(cellular_oracle(&ce), || {
                    format!("instance {idx}: exp not cellular")
                })?;
            }
        }
    }
    Ok(format!(
        "100 balleans, {checked} (Y, radius, n) triples, {cellular_instances} cellular instances"
    ))
}

// ---------------------------------------------------------------------------

fn desc(v: serde_json::Value) -> GroupDescriptor {
    GroupDescriptor::from_json(&v).unwrap()
}

fn criterion_9() -> Check {
    let asdim = |v| asdim_classify(&desc(v)).unwrap().report;
    let cases = [
        (json!({"free_rank": 1}), AsdimReport::Infinite),
        (
            json!({"divisible": {"prufer": {"7": 1}}}),
            AsdimReport::Finite(1),
        ),
        (
            json!({"divisible": {"prufer": {"2": 1, "3": 1}}}),
            AsdimReport::Finite(2),
        ),
        (
            json!({"divisible": {"prufer": {"2": 1, "3": 1, "5": 1}}}),
            AsdimReport::Finite(3),
        ),
        (
            json!({"divisible": {"prufer": {"2": 1, "3": 1, "5": 1, "7": 1, "11": 1}}}),
            AsdimReport::Finite(5),
        ),
        (
            json!({"reduced_torsion": {"2": {"kind": "finite", "order": 8}, "3": {"kind": "finite", "order": 9}}}),
            AsdimReport::Zero,
        ),
        (json!({}), AsdimReport::Zero),
        (
            json!({"divisible": {"prufer": {"3": 2}}}),
            AsdimReport::Unknown(2),
        ),
    ];
    for (d, want) in &cases {
        let got = asdim(d.clone());
        ensure(got == *want, || {
            format!("asdim {d}: got {got:?}, want {want:?}")
        })?;
    }
    let iso = |v| iso_points_classify(&desc(v)).unwrap().size;
    let iso_cases = [
        (json!({"free_rank": 1}), CardinalToken::Finite(1u64)),
        (
            json!({"divisible": {"q_rank": 1}}),
            CardinalToken::Finite(2u64),
        ),
        (json!({"divisible": {"q_rank": 2}}), CardinalToken::Omega),
        (
            json!({"divisible": {"q_rank": "omega"}}),
            CardinalToken::continuum(),
        ),
        (
            json!({"reduced_torsion": {"5": {"kind": "not_layerly_finite"}}}),
            CardinalToken::Finite(0u64),
        ),
        (
            json!({"divisible": {"prufer": {"5": 1}}}),
            CardinalToken::Finite(1u64),
        ),
    ];
    for (d, want) in &iso_cases {
        let got = iso(d.clone());
        ensure(got == *want, || {
            format!("iso points {d}: got {got}, want {want}")
        })?;
    }
    Ok(format!(
        "{} asdim fixtures, {} isolated-point fixtures",
        cases.len(),
        iso_cases.len()
    ))
}

// ---------------------------------------------------------------------------

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut finite_triangles = 0;
    for i in 0..500 {
        let mut pick = || {
            // mostly full rank, so that most triangles have finite sides
            let r = if rng.gen_bool(0.7) {
                2
            } else {
                rng.gen_range(0..=2)
            };
            let rows = if r == 2 && rng.gen_bool(0.8) {
                random_independent_rows(&mut rng, 2, 2, 8)
            } else {
                (0..r)
                    .map(|_| (0..2).map(|_| rng.gen_range(-8..=8)).collect())
                    .collect()
            };
            to_lattice(2, &rows)
        };
        let (a, b, c) = (pick(), pick(), pick());
        let ab = a.log_subgroup_distance(&b).unwrap();
        let ba = b.log_subgroup_distance(&a).unwrap();
        let bc = b.log_subgroup_distance(&c).unwrap();
        let ac = a.log_subgroup_distance(&c).unwrap();
        ensure(ab == ba, || format!("triple {i}: asymmetric {ab} vs {ba}"))?;
        ensure(
            a.log_subgroup_distance(&a).unwrap() == ExtNat::one(),
            || format!("triple {i}: μ′(A,A) ≠ 1"),
        )?;
        ensure(ac <= ab.clone() * bc.clone(), || {
            format!("triple {i}: {ac} > {ab}·{bc}")
        })?;
        if ac.is_finite() && ab.is_finite() {
            finite_triangles += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..500 {
        let mut pick = || {
            HammingPoint::new(
                (0..16u64)
                    .filter(|_| rng.gen_bool(0.3))
                    .collect::<BTreeSet<_>>(),
            )
        };
        let (f, g, h) = (pick(), pick(), pick());
        let (fg, gf) = (hamming_distance(&f, &g), hamming_distance(&g, &f));
        ensure(fg == gf, || format!("hamming triple {i}: asymmetric"))?;
        ensure((fg == 0) == (f == g), || {
            format!("hamming triple {i}: identity")
        })?;
        ensure(
            hamming_distance(&f, &h) <= fg + hamming_distance(&g, &h),
            || format!("hamming triple {i}: triangle"),
        )?;
    }
    Ok(format!(
        "500 lattice triples ({finite_triangles} with finite sides), 500 Hamming triples"
    ))
}

// ---------------------------------------------------------------------------

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        (
            "subgroup distance equals residue-counting oracle on Z^2, Z^3",
            10,
            criterion_1,
        ),
        (
            "covering distance of subgroups equals the larger index",
            30,
            criterion_2,
        ),
        (
            "exp-balls in L(Z): singleton for n > 3m, agrees with brute force",
            20,
            criterion_3,
        ),
        (
            "closed form for iota distances; quasi-isometry inequalities",
            30,
            criterion_4,
        ),
        (
            "Hamming embedding is an isometry of the taxicab grid",
            5,
            criterion_5,
        ),
        (
            "elementary abelian subgroups H_F versus symmetric differences",
            60,
            criterion_6,
        ),
        (
            "cyclic-subgroup graphs of p-groups are trees of height log_p exp",
            10,
            criterion_7,
        ),
        (
            "iterated exp-balls inclusion; exp preserves cellularity",
            60,
            criterion_8,
        ),
        (
            "asdim and isolated-point classification fixtures",
            1,
            criterion_9,
        ),
        (
            "metric axioms for subgroup and Hamming distances",
            10,
            criterion_10,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (status, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over time budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] criterion {:>2}: {name} ({:.2} s / {budget} s) {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

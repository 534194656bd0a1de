//! Verification sweeps: each replays a structural claim on a finite grid of
//! instances against an independent computation and reports violations.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ballean::constructions::{
    coproduct_ballean, exp_hyperballean_of, exp_index, mask_of, product_ballean,
    random_valid_ballean,
};
use crate::ballean::explicit::ExplicitBallean;
use crate::ballean::group::{exp_ball_membership, g_exp_ball, mu_set_distance, FiniteSubset};
use crate::ballean::hamming::{hamming_distance, HammingPoint};
use crate::error::{Error, Result};
use crate::groups::finite::{all_subgroups, fag_log_distance, FiniteAbelianGroup};
use crate::lattice::{ExtNat, Lattice};
use crate::witnesses::{
    abelian_p_groups, cyclic_subgroup_tree, dlog_closed_form, elementary_abelian_correspondence,
    hamming_embed, iota, lz_exp_ball, lz_log_ball, prufer_ball, taxi_distance,
    verify_iota_quasi_isometry, IndexStreams, PrimeTuple, TaxiPoint, VerifyReport,
};

pub const SUITES: [&str; 8] = [
    "iota", "hamming", "elemab", "tree", "lzball", "mu-index", "cellular", "axioms",
];

#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Overrides the per-suite coordinate bound (iota, hamming).
    pub max_coord: Option<u64>,
    /// Primes for the iota suite.
    pub primes: Option<Vec<u64>>,
}


/// Runs one named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<Vec<VerifyReport>> {
    if name == "all" {
        let parts: Vec<Result<Vec<VerifyReport>>> =
            SUITES.par_iter().map(|s| run_suite(s, cfg)).collect();
        let mut out = Vec::new();
        for p in parts {
            out.extend(p?);
        }
        return Ok(out);
    }
    match name {
        "iota" => {
            let primes = cfg.primes.clone().unwrap_or_else(|| vec![2, 3, 5]);
            let max = cfg.max_coord.unwrap_or(8);
            let pt = PrimeTuple::new(&primes)?;
            Ok(vec![
                closed_form_identity(&pt, max)?,
                iota_quasi_isometry(&pt, max.max(12), 1000, cfg.seed)?,
            ])
        }
        "hamming" => Ok(vec![hamming_isometry(3, cfg.max_coord.unwrap_or(6))?]),
        "elemab" => Ok(vec![elementary_correspondence(&[2, 3], 6)?]),
        "tree" => Ok(vec![cyclic_trees(81)?]),
        "lzball" => Ok(vec![
            lz_exp_singletons(4, 60)?,
            lz_exp_against_window(30, 4)?,
            lz_log_against_lattice(40, 6)?,
            prufer_ball_sizes()?,
        ]),
        "mu-index" => Ok(vec![mu_index_agreement()?]),
        "cellular" => Ok(cellular_exp(100, 6, 4, cfg.seed)),
        "axioms" => Ok(vec![
            lattice_metric_axioms(500, 8, cfg.seed)?,
            hamming_axioms(500, cfg.seed),
            construction_axioms(cfg.seed)?,
            g_exp_below_exp()?,
        ]),
        other => Err(Error::InvalidArgument(format!(
            "unknown suite {other:?}; expected one of {} or all",
            SUITES.join(", ")
        ))),
    }
}

/// All points of `{0..=max}^n`.
pub fn grid(n: usize, max: u64) -> Vec<TaxiPoint> {
    let mut out = vec![TaxiPoint::new(Vec::new())];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=max).map(move |c| {
                    let mut q = p.coords.clone();
                    q.push(c);
                    TaxiPoint::new(q)
                })
            })
            .collect();
    }
    out
}

/// Closed form of `μ′` equals the lattice computation, for every prefix of the
/// prime tuple and every pair in the grid.
pub fn closed_form_identity(pt: &PrimeTuple, max: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "closed form prod p_i^{(m_i-m'_i)+} equals max(|A:A∩B|,|B:A∩B|) for A=iota(m), B=iota(m')",
        "closed form of the logarithmic distance on (p1^m1...pn^mn)Z",
    );
    for n in 1..=pt.len() {
        let sub = PrimeTuple::new(&pt.primes()[..n])?;
        let points = grid(n, max);
        let lattices: Vec<Lattice> = points
            .iter()
            .map(|m| iota(&sub, m))
            .collect::<Result<_>>()?;
        let parts: Vec<VerifyReport> = (0..points.len())
            .into_par_iter()
            .map(|i| {
                let mut r = VerifyReport::new("", "");
                for j in 0..points.len() {
                    let closed = dlog_closed_form(&sub, &points[i], &points[j]).expect("dims");
                    let direct = lattices[i]
                        .log_subgroup_distance(&lattices[j])
                        .expect("same ambient");
                    r.record(closed == direct, || {
                        format!("{} vs {}: {closed} != {direct}", points[i], points[j])
                    });
                }
                r
            })
            .collect();
        for p in parts {
            report.merge(p);
        }
    }
    Ok(report)
}

pub fn iota_quasi_isometry(
    pt: &PrimeTuple,
    max: u64,
    samples: usize,
    seed: u64,
) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = pt.len();
    let point =
        |rng: &mut ChaCha8Rng| TaxiPoint::new((0..n).map(|_| rng.gen_range(0..=max)).collect());
    let pairs: Vec<(TaxiPoint, TaxiPoint)> = (0..samples)
        .map(|_| (point(&mut rng), point(&mut rng)))
        .collect();
    verify_iota_quasi_isometry(pt, &pairs)
}

/// `h(φ(m̄), φ(m̄′)) = d_T(m̄, m̄′)` for every dimension up to `max_n`.
pub fn hamming_isometry(max_n: usize, max: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "the union-of-prefixes map from the taxicab grid to finite subsets is an isometry",
        "isometric embedding of N^n into the Hamming space",
    );
    let streams = IndexStreams::Residues;
    for n in 1..=max_n {
        let points = grid(n, max);
        let images: Vec<HammingPoint> = points
            .iter()
            .map(|m| hamming_embed(&streams, m))
            .collect::<Result<_>>()?;
        for i in 0..points.len() {
            for j in 0..points.len() {
                let h = hamming_distance(&images[i], &images[j]);
                let t = taxi_distance(&points[i], &points[j])?;
                report.record(h == t, || {
                    format!("{} vs {}: h={h} d_T={t}", points[i], points[j])
                });
            }
        }
    }
    Ok(report)
}

/// `μ′(H_F, H_F′) = p^{max(|F∖F′|, |F′∖F|)}` for all `F, F′ ⊆ {0..N}`.
pub fn elementary_correspondence(primes: &[u64], n_max: usize) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "H_F -> F carries the subgroup distance to p^{max(|F\\F'|,|F'\\F|)}",
        "asymorphism between subgroups of a countable elementary abelian group and finite sets",
    );
    let sets: Vec<BTreeSet<usize>> = (0u32..1 << (n_max + 1))
        .map(|m| (0..=n_max).filter(|&j| m >> j & 1 == 1).collect())
        .collect();
    for &p in primes {
        let parts: Vec<Result<VerifyReport>> = sets
            .par_iter()
            .map(|f| {
                let mut r = VerifyReport::new("", "");
                for g in &sets {
                    let (got, want) = elementary_abelian_correspondence(p, n_max, f, g)?;
                    r.record(got == want, || {
                        format!("p={p} F={f:?} F'={g:?}: {got} != {want}")
                    });
                }
                Ok(r)
            })
            .collect();
        for part in parts {
            report.merge(part?);
        }
    }
    Ok(report)
}

/// The cyclic-subgroup graph of every abelian p-group up to the given order is
/// a tree of height `log_p(exponent)`.
pub fn cyclic_trees(max_order: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "cyclic subgroups of a finite abelian p-group form a tree under index-p inclusion",
        "the hyperballean of cyclic subgroups is asymorphic to a tree",
    );
    let groups = abelian_p_groups(max_order);
    let results: Vec<Result<(String, bool)>> = groups
        .par_iter()
        .map(|g| {
            let t = cyclic_subgroup_tree(g)?;
            Ok((format!("{g}: {:?}", t.certificate), t.certificate.holds()))
        })
        .collect();
    for r in results {
        let (desc, ok) = r?;
        report.record(ok, || desc);
    }
    Ok(report)
}

/// `lz_exp_ball(n, ⌊(n−1)/3⌋) = {n}` whenever `n > 3m`.
pub fn lz_exp_singletons(lo: u64, hi: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "B(nZ, [-m,m]) = {nZ} in exp L(Z) when n > 3m",
        "every non-zero subgroup of Z is an isolated point for small radii",
    );
    for n in lo..=hi {
        let m = (n - 1) / 3;
        let ball = lz_exp_ball(n, m)?;
        report.record(ball == vec![n], || format!("n={n} m={m}: {ball:?}"));
    }
    Ok(report)
}

/// Membership `kℤ ∈ exp B(nℤ, [−m, m])` decided only from the points of `kℤ`
/// and `nℤ` inside `[−W, W]`.
pub fn lz_exp_ball_window(n: u64, m: u64, window: i64, k_max: u64) -> Vec<u64> {
    let m = m as i64;
    let near = |x: i64, modulus: i64| (-m..=m).any(|f| (x - f).rem_euclid(modulus) == 0);
    let multiples = |k: i64| (-window / k..=window / k).map(move |j| j * k);
    (1..=k_max)
        .filter(|&k| {
            let (k, n) = (k as i64, n as i64);
            multiples(k).all(|x| near(x, n)) && multiples(n).all(|x| near(x, k))
        })
        .collect()
}

pub fn lz_exp_against_window(max_n: u64, max_m: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "residue reduction for exp-balls in L(Z) agrees with a windowed inclusion check",
        "finite exp-balls around nZ in L(Z)",
    );
    for n in 1..=max_n {
        for m in 0..=max_m {
            let bound = n * (2 * m + 1);
            let window = 4 * bound as i64;
            let fast = lz_exp_ball(n, m)?;
            let slow = lz_exp_ball_window(n, m, window, 2 * bound);
            report.record(fast == slow, || {
                format!("n={n} m={m}: {fast:?} vs {slow:?}")
            });
        }
    }
    Ok(report)
}

/// `lz_log_ball` equals the set of `m` whose lattice distance to `nℤ` is at most `K`.
pub fn lz_log_against_lattice(max_n: u64, max_k: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "logarithmic balls in L(Z) match lattice distances",
        "subgroup distance log max(|A:A∩B|,|B:A∩B|) on L(Z)",
    );
    for n in 1..=max_n {
        let a = Lattice::multiples(n);
        for k in 1..=max_k {
            let fast = lz_log_ball(n, k)?;
            let slow: Vec<u64> = (1..=n * k + 1)
                .filter(|&m| {
                    a.log_subgroup_distance(&Lattice::multiples(m))
                        .expect("rank one")
                        <= ExtNat::from(k)
                })
                .collect();
            report.record(fast == slow, || {
                format!("n={n} K={k}: {fast:?} vs {slow:?}")
            });
        }
    }
    Ok(report)
}

/// `|prufer_ball(p, n, K)| = 2⌊log_p K⌋ + 1`, clipped at level 0.
pub fn prufer_ball_sizes() -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "balls in L(Z_{p^inf}) around H_n have 2 floor(log_p K) + 1 levels, clipped at 0",
        "L(Z_{p^inf}) minus the whole group is isometric to (log p)N",
    );
    for p in [2u64, 3, 5, 7] {
        for n in 0..8u32 {
            for k in 1..200u64 {
                let mut r = 0u32;
                while p.pow(r + 1) <= k {
                    r += 1;
                }
                let expected = (r + r.min(n) + 1) as usize;
                let got = prufer_ball(p, n, k)?.len();
                report.record(got == expected, || {
                    format!("p={p} n={n} K={k}: {got} != {expected}")
                });
            }
        }
    }
    Ok(report)
}

/// Subgroup pairs of small groups: covering distance `μ`, lattice `μ′` and
/// element counts all agree.
pub fn mu_index_agreement() -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "for subgroups A, B: mu(A,B) = max(|A:A∩B|, |B:A∩B|)",
        "covering distance versus subgroup indices",
    );
    for factors in [vec![12], vec![2, 4], vec![3, 9]] {
        let g = FiniteAbelianGroup::new(factors)?;
        let subs = all_subgroups(&g);
        let sets: Vec<Vec<Vec<u64>>> = subs.iter().map(|s| s.elements()).collect();
        let parts: Vec<Result<VerifyReport>> = (0..subs.len())
            .into_par_iter()
            .map(|i| {
                let mut r = VerifyReport::new("", "");
                let yi = FiniteSubset::new(&g, sets[i].iter().cloned())?;
                for j in 0..subs.len() {
                    let yj = FiniteSubset::new(&g, sets[j].iter().cloned())?;
                    let mu = mu_set_distance(&yi, &yj)?.mu;
                    let lattice = fag_log_distance(&subs[i], &subs[j])?;
                    let meet = sets[i].iter().filter(|x| sets[j].contains(x)).count();
                    let counted = (sets[i].len() / meet).max(sets[j].len() / meet) as u64;
                    let ok = mu == lattice && mu == ExtNat::from(counted);
                    r.record(ok, || {
                        format!(
                            "{g}: {} vs {}: mu={mu} lattice={lattice} count={counted}",
                            subs[i], subs[j]
                        )
                    });
                }
                Ok(r)
            })
            .collect();
        for p in parts {
            report.merge(p?);
        }
    }
    Ok(report)
}

/// Exp-balls of iterated radii stay inside the two-sided iterated balls, and
/// exp of a cellular ballean is cellular.
pub fn cellular_exp(
    instances: usize,
    max_points: usize,
    max_n: usize,
    seed: u64,
) -> Vec<VerifyReport> {
    let mut inclusion = VerifyReport::new(
        "(exp B)^n(Y,a) ⊆ {Z : Z ⊆ B^n(Y,a), Y ⊆ B^n(Z,a)}",
        "iterated exp-balls versus iterated balls",
    );
    let mut cellular = VerifyReport::new(
        "if B is cellular then exp B is cellular",
        "cellularity passes to the exp-hyperballean",
    );
    let mut closure = VerifyReport::new(
        "cellularization is idempotent and extensive",
        "the cellular modification of a ballean",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<ExplicitBallean> = (0..instances)
        .map(|_| {
            let n = rng.gen_range(1..=max_points);
            let extra = rng.gen_range(0..3);
            random_valid_ballean(&mut rng, n, extra)
        })
        .collect();
    for (idx, b) in bases.iter().enumerate() {
        let e = exp_hyperballean_of(b).expect("small support");
        let n = b.len();
        let total = (1u64 << n) - 1;
        for r in 0..b.radii().len() {
            for y in 1..=total {
                let ye = b_set(b, y);
                for steps in 1..=max_n {
                    let lhs = e.ball_iterate(exp_index(y), r, steps);
                    let by = mask_of(&b.ball_iterate_set(&ye, r, steps));
                    let ok = lhs.ones().all(|zi| {
                        let z = zi as u64 + 1;
                        let bz = mask_of(&b.ball_iterate_set(&b_set(b, z), r, steps));
                        z & !by == 0 && y & !bz == 0
                    });
                    inclusion.record(ok, || {
                        format!("instance {idx}, Y={y:b}, radius {r}, n={steps}")
                    });
                }
            }
        }
        let c = b.cellularization();
        closure.record(
            c.cellularization() == c && b.is_pointwise_within(&c),
            || format!("instance {idx}"),
        );
        let ce = exp_hyperballean_of(&c).expect("small support");
        cellular.record(ce.is_cellular(), || format!("instance {idx}"));
        if b.is_cellular() {
            cellular.record(e.is_cellular(), || {
                format!("instance {idx} (already cellular)")
            });
        }
    }
    vec![inclusion, cellular, closure]
}

fn b_set(b: &ExplicitBallean, mask: u64) -> crate::ballean::explicit::PointSet {
    let mut s = b.empty_set();
    for i in 0..b.len() {
        if mask >> i & 1 == 1 {
            s.insert(i);
        }
    }
    s
}

/// A random sublattice of ℤⁿ: one to `n` generators with entries in `[−bound, bound]`.
pub fn random_lattice<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Lattice {
    let k = rng.gen_range(0..=n);
    let rows: Vec<Vec<i64>> = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    Lattice::from_i64_rows(n, &rows).expect("consistent dims")
}

/// Symmetry and the multiplicative triangle inequality for `μ′` on random triples.
pub fn lattice_metric_axioms(samples: usize, bound: i64, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "mu' is symmetric and mu'(A,C) <= mu'(A,B) mu'(B,C)",
        "the logarithmic subgroup distance is an extended metric",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        // bias toward commensurable triples by sharing the rank
        let (a, b, c) = if rng.gen_bool(0.5) {
            let full = |rng: &mut ChaCha8Rng| loop {
                let l = random_lattice(rng, 2, bound);
                if l.rank() == 2 {
                    break l;
                }
            };
            (full(&mut rng), full(&mut rng), full(&mut rng))
        } else {
            (
                random_lattice(&mut rng, 2, bound),
                random_lattice(&mut rng, 2, bound),
                random_lattice(&mut rng, 2, bound),
            )
        };
        let ab = a.log_subgroup_distance(&b)?;
        let ba = b.log_subgroup_distance(&a)?;
        let bc = b.log_subgroup_distance(&c)?;
        let ac = a.log_subgroup_distance(&c)?;
        let aa = a.log_subgroup_distance(&a)?;
        let ok = ab == ba && ac <= &ab * &bc && aa == ExtNat::one();
        report.record(ok, || {
            format!("{a}, {b}, {c}: ab={ab} ba={ba} bc={bc} ac={ac}")
        });
    }
    Ok(report)
}

/// Metric axioms for the Hamming distance on random finite subsets.
pub fn hamming_axioms(samples: usize, seed: u64) -> VerifyReport {
    let mut report = VerifyReport::new(
        "h(f,g) = |supp f △ supp g| is a metric",
        "Hamming metric on finite subsets",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let point = |rng: &mut ChaCha8Rng| {
        let k = rng.gen_range(0..8);
        HammingPoint::new((0..k).map(|_| rng.gen_range(0..16u64)))
    };
    for _ in 0..samples {
        let (f, g, h) = (point(&mut rng), point(&mut rng), point(&mut rng));
        let fg = hamming_distance(&f, &g);
        let ok = fg == hamming_distance(&g, &f)
            && hamming_distance(&f, &h) <= fg + hamming_distance(&g, &h)
            && (fg == 0) == (f == g);
        report.record(ok, || format!("{f}, {g}, {h}"));
    }
    report
}

/// Products, coproducts and exp-hyperballeans of valid balleans are valid.
pub fn construction_axioms(seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "products, coproducts and exp-hyperballeans of balleans satisfy the ballean axioms",
        "ballean axioms: containment, symmetry, upper multiplicativity",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    for i in 0..30 {
        let n1 = rng.gen_range(1..5);
        let n2 = rng.gen_range(1..5);
        let a = random_valid_ballean(&mut rng, n1, 1);
        let b = random_valid_ballean(&mut rng, n2, 1);
        for (what, c) in [
            ("product", product_ballean(&[a.clone(), b.clone()])?),
            ("coproduct", coproduct_ballean(&[a.clone(), b.clone()])?),
            ("exp", exp_hyperballean_of(&a)?),
        ] {
            let v = c.validate();
            report.record(v.is_valid(), || format!("{what} #{i}: {:?}", v.violation));
        }
        let comps = coproduct_ballean(&[a.clone(), b.clone()])?
            .connected_components()
            .len();
        let expected = a.connected_components().len() + b.connected_components().len();
        report.record(comps == expected, || {
            format!("coproduct #{i}: {comps} != {expected} components")
        });
    }
    Ok(report)
}

/// Every translate `g + Y` with `g` in a symmetric radius lies in `exp B(Y, A)`.
pub fn g_exp_below_exp() -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "G-exp B(Y,A) ⊆ exp B(Y,A) for symmetric A",
        "the G-exp hyperballean is finer than the exp hyperballean",
    );
    let g = FiniteAbelianGroup::new(vec![2, 4])?;
    let all: Vec<Vec<u64>> = g.elements().collect();
    for mask in 1u32..1 << all.len() {
        if mask.count_ones() > 3 {
            continue;
        }
        let y = FiniteSubset::new(
            &g,
            (0..all.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| all[i].clone()),
        )?;
        for a in &all {
            let radius = vec![a.clone(), g.neg(a)];
            for s in g_exp_ball(&y, &radius)? {
                report.record(exp_ball_membership(&s, &y, &radius)?, || {
                    format!("{y} shifted by {a:?}")
                });
            }
        }
    }
    Ok(report)
}

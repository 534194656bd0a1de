//! Products, coproducts, exp-hyperballeans and random instances.

use fixedbitset::FixedBitSet;
use rand::Rng;

use crate::ballean::explicit::{point_set, ExplicitBallean, PointSet};
use crate::error::{Error, Result};

/// Largest support accepted by [`exp_hyperballean_of`].
pub const EXP_SUPPORT_LIMIT: usize = 12;
/// Largest support produced by [`product_ballean`].
pub const PRODUCT_LIMIT: usize = 4096;

/// Mixed-radix digits of `i` (last coordinate fastest).
fn digits(mut i: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (d, &s) in out.iter_mut().zip(sizes).rev() {
        *d = i % s;
        i /= s;
    }
    out
}

fn undigits(ds: &[usize], sizes: &[usize]) -> usize {
    ds.iter().zip(sizes).fold(0, |acc, (&d, &s)| acc * s + d)
}

fn tuple_name(parts: impl IntoIterator<Item = String>) -> String {
    format!("({})", parts.into_iter().collect::<Vec<_>>().join(","))
}

/// Balls are cartesian products of coordinate balls, radii are tuples.
pub fn product_ballean(bs: &[ExplicitBallean]) -> Result<ExplicitBallean> {
    if bs.is_empty() {
        return Err(Error::InvalidArgument("product of an empty family".into()));
    }
    let sizes: Vec<usize> = bs.iter().map(ExplicitBallean::len).collect();
    let rsizes: Vec<usize> = bs.iter().map(|b| b.radii().len()).collect();
    let n = checked_product(&sizes).filter(|&n| n <= PRODUCT_LIMIT);
    let Some(n) = n else {
        return Err(Error::SizeLimit {
            what: "product support",
            needed: checked_product(&sizes).unwrap_or(usize::MAX),
            limit: PRODUCT_LIMIT,
        });
    };
    let k = checked_product(&rsizes)
        .filter(|&k| k.saturating_mul(n) <= PRODUCT_LIMIT * PRODUCT_LIMIT)
        .ok_or(Error::SizeLimit {
            what: "product radii",
            needed: checked_product(&rsizes).unwrap_or(usize::MAX),
            limit: PRODUCT_LIMIT * PRODUCT_LIMIT / n.max(1),
        })?;
    let points = (0..n)
        .map(|i| {
            tuple_name(
                digits(i, &sizes)
                    .iter()
                    .zip(bs)
                    .map(|(&d, b)| b.points()[d].clone()),
            )
        })
        .collect();
    let radii = (0..k)
        .map(|r| {
            tuple_name(
                digits(r, &rsizes)
                    .iter()
                    .zip(bs)
                    .map(|(&d, b)| b.radii()[d].clone()),
            )
        })
        .collect();
    let balls = (0..k)
        .map(|r| {
            let rd = digits(r, &rsizes);
            (0..n)
                .map(|x| {
                    let xd = digits(x, &sizes);
                    let factors: Vec<Vec<usize>> = bs
                        .iter()
                        .enumerate()
                        .map(|(j, b)| b.ball(xd[j], rd[j]).ones().collect())
                        .collect();
                    let mut set = FixedBitSet::with_capacity(n);
                    let mut idx = vec![0usize; factors.len()];
                    'outer: loop {
                        let coords: Vec<usize> =
                            idx.iter().zip(&factors).map(|(&i, f)| f[i]).collect();
                        set.insert(undigits(&coords, &sizes));
                        for j in (0..idx.len()).rev() {
                            idx[j] += 1;
                            if idx[j] < factors[j].len() {
                                continue 'outer;
                            }
                            idx[j] = 0;
                        }
                        break;
                    }
                    set
                })
                .collect()
        })
        .collect();
    ExplicitBallean::raw(points, radii, balls)
}

fn checked_product(xs: &[usize]) -> Option<usize> {
    xs.iter().try_fold(1usize, |acc, &x| acc.checked_mul(x))
}

/// Disjoint union. A radius is a partial tuple `{j: αⱼ, …}`; the ball of a
/// point of summand `j` is its ball in `j` when `j` is in the tuple, else the point.
pub fn coproduct_ballean(bs: &[ExplicitBallean]) -> Result<ExplicitBallean> {
    if bs.is_empty() {
        return Err(Error::InvalidArgument(
            "coproduct of an empty family".into(),
        ));
    }
    // every radius slot may also be absent
    let rsizes: Vec<usize> = bs.iter().map(|b| b.radii().len() + 1).collect();
    let k = checked_product(&rsizes)
        .filter(|&k| k <= PRODUCT_LIMIT)
        .ok_or(Error::SizeLimit {
            what: "coproduct radii",
            needed: checked_product(&rsizes).unwrap_or(usize::MAX),
            limit: PRODUCT_LIMIT,
        })?;
    let offsets: Vec<usize> = bs
        .iter()
        .scan(0, |acc, b| {
            let o = *acc;
            *acc += b.len();
            Some(o)
        })
        .collect();
    let n: usize = bs.iter().map(ExplicitBallean::len).sum();
    let points = bs
        .iter()
        .enumerate()
        .flat_map(|(j, b)| b.points().iter().map(move |p| format!("{j}:{p}")))
        .collect();
    let radii = (0..k)
        .map(|r| {
            let parts: Vec<String> = digits(r, &rsizes)
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d > 0)
                .map(|(j, &d)| format!("{j}:{}", bs[j].radii()[d - 1]))
                .collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let balls = (0..k)
        .map(|r| {
            let rd = digits(r, &rsizes);
            let mut col = Vec::with_capacity(n);
            for (j, b) in bs.iter().enumerate() {
                for x in 0..b.len() {
                    col.push(if rd[j] == 0 {
                        point_set(n, [offsets[j] + x])
                    } else {
                        point_set(n, b.ball(x, rd[j] - 1).ones().map(|y| offsets[j] + y))
                    });
                }
            }
            col
        })
        .collect();
    ExplicitBallean::raw(points, radii, balls)
}

/// Name of a subset encoded as a bitmask over `points`.
pub fn subset_name(points: &[String], mask: u64) -> String {
    let members: Vec<&str> = (0..points.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| points[i].as_str())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// Hyperballean on all nonempty subsets: `Z ∈ exp B(Y, α)` iff
/// `Z ⊆ B(Y, α)` and `Y ⊆ B(Z, α)`. Point `i` is the subset with bitmask `i + 1`.
pub fn exp_hyperballean_of(b: &ExplicitBallean) -> Result<ExplicitBallean> {
    let n = b.len();
    if n > EXP_SUPPORT_LIMIT {
        return Err(Error::SizeLimit {
            what: "exp support",
            needed: n,
            limit: EXP_SUPPORT_LIMIT,
        });
    }
    let count = (1usize << n) - 1;
    let points = (1..=count as u64)
        .map(|m| subset_name(b.points(), m))
        .collect();
    let balls = (0..b.radii().len())
        .map(|r| {
            let single: Vec<u64> = (0..n).map(|x| mask_of(b.ball(x, r))).collect();
            let around: Vec<u64> = (1..=count as u64)
                .map(|m| {
                    (0..n)
                        .filter(|&x| m >> x & 1 == 1)
                        .fold(0, |acc, x| acc | single[x])
                })
                .collect();
            (1..=count as u64)
                .map(|y| {
                    let by = around[y as usize - 1];
                    let mut set = FixedBitSet::with_capacity(count);
                    // Z ranges over nonempty submasks of B(Y, α)
                    let mut z = by;
                    while z != 0 {
                        if y & !around[z as usize - 1] == 0 {
                            set.insert(z as usize - 1);
                        }
                        z = (z - 1) & by;
                    }
                    set
                })
                .collect()
        })
        .collect();
    ExplicitBallean::raw(points, b.radii().to_vec(), balls)
}

pub fn mask_of(s: &PointSet) -> u64 {
    s.ones().fold(0, |acc, i| acc | 1 << i)
}

/// Index in the exp-hyperballean of the subset with the given mask.
pub fn exp_index(mask: u64) -> usize {
    debug_assert!(mask != 0);
    mask as usize - 1
}

/// A random ballean satisfying the axioms: a chain `R₀ ⊆ R₁ ⊆ …` with
/// `Rᵢ ∘ Rᵢ ⊆ Rᵢ₊₁` that ends in an equivalence relation, plus random
/// symmetric reflexive relations below the top.
pub fn random_valid_ballean<R: Rng>(rng: &mut R, n: usize, extra_radii: usize) -> ExplicitBallean {
    let mut rel = vec![0u64; n];
    for (x, row) in rel.iter_mut().enumerate() {
        *row |= 1 << x;
    }
    let edge_p = rng.gen_range(0.0..0.5);
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen_bool(edge_p) {
                rel[x] |= 1 << y;
                rel[y] |= 1 << x;
            }
        }
    }
    let mut chain = vec![rel.clone()];
    loop {
        let last = chain.last().expect("nonempty");
        let mut next: Vec<u64> = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| last[x] >> y & 1 == 1)
                    .fold(0, |acc, y| acc | last[y])
            })
            .collect();
        // occasionally merge a few more points to vary the shape
        if rng.gen_bool(0.3) && n > 1 {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            next[x] |= 1 << y;
            next[y] |= 1 << x;
        }
        if next == *last {
            break;
        }
        chain.push(next);
    }
    // a random merge can break transitivity; close the top under composition
    loop {
        let top = chain.last().expect("nonempty").clone();
        let closed: Vec<u64> = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| top[x] >> y & 1 == 1)
                    .fold(0, |acc, y| acc | top[y])
            })
            .collect();
        if closed == top {
            break;
        }
        chain.push(closed);
    }
    let top = chain.last().expect("nonempty").clone();
    for _ in 0..extra_radii {
        let mut r: Vec<u64> = (0..n).map(|x| 1u64 << x).collect();
        for x in 0..n {
            for y in x + 1..n {
                if top[x] >> y & 1 == 1 && rng.gen_bool(0.5) {
                    r[x] |= 1 << y;
                    r[y] |= 1 << x;
                }
            }
        }
        chain.push(r);
    }
    let points = (0..n).map(|i| format!("x{i}")).collect();
    let radii = (0..chain.len()).map(|i| format!("r{i}")).collect();
    let balls = chain
        .iter()
        .map(|r| {
            r.iter()
                .map(|&m| point_set(n, (0..n).filter(|&y| m >> y & 1 == 1)))
                .collect()
        })
        .collect();
    ExplicitBallean::raw(points, radii, balls).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn ids(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn three_point() -> ExplicitBallean {
        ExplicitBallean::from_lists(
            ids(&["a", "b", "c"]),
            ids(&["alpha"]),
            vec![vec![vec![0, 1], vec![0, 1, 2], vec![1, 2]]],
        )
        .unwrap()
    }

    #[test]
    fn products() {
        let d = product_ballean(&[
            ExplicitBallean::discrete(ids(&["a", "b"])),
            ExplicitBallean::discrete(ids(&["x", "y", "z"])),
        ])
        .unwrap();
        assert_eq!(d.len(), 6);
        assert!((0..6).all(|x| d.ball(x, 0) == &d.singleton(x)));
        let b = product_ballean(&[
            ExplicitBallean::bounded(ids(&["a", "b"])),
            ExplicitBallean::bounded(ids(&["x", "y"])),
        ])
        .unwrap();
        assert!((0..4).all(|x| b.ball(x, 0).count_ones(..) == 4));
        let t =
            product_ballean(&[three_point(), ExplicitBallean::bounded(ids(&["u", "v"]))]).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.points()[0], "(a,u)");
        assert_eq!(
            t.names(t.ball(0, 0)),
            ids(&["(a,u)", "(a,v)", "(b,u)", "(b,v)"])
        );
        // the factor already fails upper multiplicativity, so the product does too
        assert!(!t.validate().is_valid());
        let tc = product_ballean(&[
            three_point().cellularization(),
            ExplicitBallean::bounded(ids(&["u", "v"])),
        ])
        .unwrap();
        assert!(tc.validate().is_valid());
        let big = ExplicitBallean::discrete((0..100).map(|i| i.to_string()).collect());
        assert!(matches!(
            product_ballean(&[big.clone(), big]),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn coproducts() {
        let s = coproduct_ballean(&[
            ExplicitBallean::discrete(ids(&["p"])),
            ExplicitBallean::discrete(ids(&["q"])),
        ])
        .unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.validate().is_valid());
        assert!((0..s.radii().len()).all(|r| (0..2).all(|x| s.ball(x, r) == &s.singleton(x))));
        let c = coproduct_ballean(&[
            ExplicitBallean::bounded(ids(&["a", "b"])),
            ExplicitBallean::bounded(ids(&["x", "y", "z"])),
        ])
        .unwrap();
        assert_eq!(c.len(), 5);
        assert!(c.validate().is_valid());
        assert_eq!(
            c.connected_components_ids(),
            vec![ids(&["0:a", "0:b"]), ids(&["1:x", "1:y", "1:z"])]
        );
        assert!(c.radii().contains(&"{}".to_string()));
        assert!(c.radii().contains(&"{0:0,1:0}".to_string()));
    }

    #[test]
    fn exp_small_cases() {
        let one = exp_hyperballean_of(&ExplicitBallean::discrete(ids(&["a"]))).unwrap();
        assert_eq!(one.len(), 1);
        let d = exp_hyperballean_of(&ExplicitBallean::discrete(ids(&["a", "b"]))).unwrap();
        assert_eq!(d.points(), &ids(&["{a}", "{b}", "{a,b}"])[..]);
        assert_eq!(d.names(d.ball(exp_index(0b01), 0)), ids(&["{a}"]));
        assert!(d.validate().is_valid());
        let big = ExplicitBallean::discrete((0..13).map(|i| i.to_string()).collect());
        assert!(matches!(
            exp_hyperballean_of(&big),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn singletons_of_exp_reproduce_the_base() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(1..6);
            let b = random_valid_ballean(&mut rng, n, 2);
            let e = exp_hyperballean_of(&b).unwrap();
            let singles: Vec<usize> = (0..n).map(|x| exp_index(1 << x)).collect();
            assert!(e.subballean(&singles).same_table(&b));
            let id: Vec<usize> = (0..n).collect();
            assert!(e.subballean(&singles).is_asymorphism(&b, &id));
        }
    }

    #[test]
    fn random_balleans_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..8);
            let extra = rng.gen_range(0..3);
            let b = random_valid_ballean(&mut rng, n, extra);
            assert!(b.validate().is_valid(), "{:?}", b.validate().violation);
            let c = b.cellularization();
            assert!(c.validate().is_valid());
            assert!(c.is_cellular());
        }
    }
}

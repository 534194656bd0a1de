//! Text grammar for groups, subgroups and finite subsets.
//!
//! Groups: `Z`, `Z^n`, `Z(m1)xZ(m2)` (or `+`, `⊕`) with `m1 | m2 | …`, `Z(p^inf)`.
//! Subgroups: `kZ`, `span[(a,b),…]`, `gen{e1,…}`, `H_n@p`, `whole@p`.
//! Subsets: `{e1,e2,…}` with elements written like `gen` generators.

use std::fmt;

use num_bigint::BigInt;

use hyperballean::exactmat::IntMatrix;
use hyperballean::groups::{
    is_prime, Element, FagSubgroup, FiniteAbelianGroup, PruferLevel, PruferSubgroup,
};
use hyperballean::lattice::Lattice;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Free(usize),
    Finite(FiniteAbelianGroup),
    Prufer(u64),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Free(1) => write!(f, "Z"),
            GroupSpec::Free(n) => write!(f, "Z^{n}"),
            GroupSpec::Finite(g) => write!(f, "{g}"),
            GroupSpec::Prufer(p) => write!(f, "Z({p}^inf)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    Lattice(Lattice),
    Finite(FagSubgroup),
    Prufer(PruferSubgroup),
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgroup::Lattice(l) if l.ambient() == 1 => {
                let k = l.cyclic_generator().unwrap_or_default();
                write!(f, "{k}Z")
            }
            Subgroup::Lattice(l) => write!(f, "{l}"),
            Subgroup::Finite(s) => write!(f, "{s}"),
            Subgroup::Prufer(h) => write!(f, "{h}"),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(hyperballean::Error::InvalidArgument(msg.into()))
}

fn strip_ws(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn parse_u64(s: &str, what: &str) -> Result<u64, CliError> {
    s.parse::<u64>().map_err(|_| {
        usage(format!(
            "{what}: expected a non-negative integer, got {s:?}"
        ))
    })
}

pub fn parse_group(text: &str) -> Result<GroupSpec, CliError> {
    let s = strip_ws(text);
    if s == "Z" || s == "ℤ" {
        return Ok(GroupSpec::Free(1));
    }
    if let Some(n) = s.strip_prefix("Z^").or_else(|| s.strip_prefix("ℤ^")) {
        return Ok(GroupSpec::Free(parse_u64(n, "rank")? as usize));
    }
    let parts: Vec<&str> = s.split(['x', '+', '⊕', '×']).collect();
    let mut factors = Vec::new();
    for part in &parts {
        let inner = part
            .strip_prefix("Z(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| usage(format!("cannot parse group {text:?}")))?;
        if let Some(p) = inner
            .strip_suffix("^inf")
            .or_else(|| inner.strip_suffix("^∞"))
        {
            if parts.len() != 1 {
                return Err(usage("Prufer groups cannot be combined with other factors"));
            }
            let p = parse_u64(p, "prime")?;
            if !is_prime(p) {
                return Err(domain(format!("{p} is not prime")));
            }
            return Ok(GroupSpec::Prufer(p));
        }
        factors.push(parse_u64(inner, "cyclic order")?);
    }
    Ok(GroupSpec::Finite(FiniteAbelianGroup::new(factors)?))
}

/// Splits `a,b,(c,d),e` at top-level commas.
fn split_top(s: &str) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(usage(format!("unbalanced parentheses in {s:?}")));
        }
        cur.push(c);
    }
    if depth != 0 {
        return Err(usage(format!("unbalanced parentheses in {s:?}")));
    }
    if !cur.is_empty() || !out.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

/// `(a,b,c)` or a bare integer.
fn parse_tuple(s: &str) -> Result<Vec<i64>, CliError> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    if inner.is_empty() {
        return Err(usage("empty tuple"));
    }
    inner
        .split(',')
        .map(|x| {
            x.parse::<i64>()
                .map_err(|_| usage(format!("expected an integer, got {x:?}")))
        })
        .collect()
}

fn finite_element(g: &FiniteAbelianGroup, s: &str) -> Result<Element, CliError> {
    let raw = parse_tuple(s)?;
    Ok(g.normalize(&raw)?)
}

pub fn parse_subgroup(text: &str, group: &GroupSpec) -> Result<Subgroup, CliError> {
    let s = strip_ws(text);
    if s == "0" || s == "{0}" {
        return Ok(match group {
            GroupSpec::Free(n) => Subgroup::Lattice(Lattice::trivial(*n)),
            GroupSpec::Finite(g) => Subgroup::Finite(FagSubgroup::trivial(g)),
            GroupSpec::Prufer(p) => Subgroup::Prufer(PruferSubgroup::finite(*p, 0)?),
        });
    }
    // Shorthands that take the prime or the dimension from the group.
    if let GroupSpec::Prufer(p) = group {
        if s == "whole" || s.starts_with("H_") && !s.contains('@') {
            return parse_subgroup(&format!("{s}@{p}"), group);
        }
    }
    if s.starts_with('(') && matches!(group, GroupSpec::Free(_)) {
        return parse_subgroup(&format!("span[{s}]"), group);
    }
    if let Some(inner) = s.strip_prefix("span[").and_then(|r| r.strip_suffix(']')) {
        let GroupSpec::Free(n) = group else {
            return Err(domain(format!(
                "span[...] needs a free abelian group, not {group}"
            )));
        };
        let rows: Vec<Vec<BigInt>> = split_top(inner)?
            .iter()
            .map(|t| parse_tuple(t).map(|v| v.into_iter().map(BigInt::from).collect()))
            .collect::<Result<_, _>>()?;
        if let Some(r) = rows.iter().find(|r| r.len() != *n) {
            return Err(domain(format!("generator of length {} in Z^{n}", r.len())));
        }
        let m = IntMatrix::from_rows_with_cols(&rows, *n)?;
        return Ok(Subgroup::Lattice(Lattice::from_generators(*n, &m)?));
    }
    if let Some(inner) = s.strip_prefix("gen{").and_then(|r| r.strip_suffix('}')) {
        let GroupSpec::Finite(g) = group else {
            return Err(domain(format!(
                "gen{{...}} needs a finite group, not {group}"
            )));
        };
        let gens: Vec<Element> = split_top(inner)?
            .iter()
            .map(|t| finite_element(g, t))
            .collect::<Result<_, _>>()?;
        return Ok(Subgroup::Finite(FagSubgroup::from_elements(g, &gens)?));
    }
    if let Some((level, p)) = s.split_once('@') {
        let p = parse_u64(p, "prime")?;
        let level = if level == "whole" {
            PruferLevel::Whole
        } else if let Some(n) = level.strip_prefix("H_") {
            PruferLevel::Finite(
                n.parse::<u32>()
                    .map_err(|_| usage(format!("bad level {n:?}")))?,
            )
        } else {
            return Err(usage(format!("cannot parse subgroup {text:?}")));
        };
        let h = PruferSubgroup::new(p, level)?;
        return match group {
            GroupSpec::Prufer(q) if *q == p => Ok(Subgroup::Prufer(h)),
            _ => Err(domain(format!("{h} is not a subgroup of {group}"))),
        };
    }
    if let Some(k) = s.strip_suffix('Z').or_else(|| s.strip_suffix('ℤ')) {
        let k: i64 = if k.is_empty() {
            1
        } else {
            k.parse()
                .map_err(|_| usage(format!("cannot parse subgroup {text:?}")))?
        };
        return match group {
            GroupSpec::Free(1) => Ok(Subgroup::Lattice(Lattice::multiples(k))),
            _ => Err(domain(format!("kZ needs the group Z, not {group}"))),
        };
    }
    Err(usage(format!("cannot parse subgroup {text:?}")))
}

/// `{e1,e2,…}` as elements of a finite group.
pub fn parse_finite_set(text: &str, g: &FiniteAbelianGroup) -> Result<Vec<Element>, CliError> {
    let s = strip_ws(text);
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| usage(format!("expected a set {{...}}, got {text:?}")))?;
    split_top(inner)?
        .iter()
        .map(|t| finite_element(g, t))
        .collect()
}

/// `{a,b,…}` as integers.
pub fn parse_int_set(text: &str) -> Result<Vec<i64>, CliError> {
    let s = strip_ws(text);
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| usage(format!("expected a set {{...}}, got {text:?}")))?;
    split_top(inner)?
        .iter()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| usage(format!("expected an integer, got {t:?}")))
        })
        .collect()
}

/// A radius list `a,b,c`, with or without braces; tuples allowed for finite groups.
pub fn strip_braces(text: &str) -> String {
    let s = strip_ws(text);
    s.strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .map(str::to_string)
        .unwrap_or(s)
}

pub fn parse_radius_finite(text: &str, g: &FiniteAbelianGroup) -> Result<Vec<Element>, CliError> {
    split_top(&strip_braces(text))?
        .iter()
        .map(|t| finite_element(g, t))
        .collect()
}

pub fn parse_radius_int(text: &str) -> Result<Vec<i64>, CliError> {
    split_top(&strip_braces(text))?
        .iter()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| usage(format!("expected an integer, got {t:?}")))
        })
        .collect()
}

//! Command-line front end. [`run`] is the whole program minus process I/O,
//! so it can be driven from tests.

pub mod parse;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperballean::ballean::{
    exp_ball_enumerate, exp_ball_membership, g_exp_ball, mu_set_distance, Carrier, FiniteSubset,
    IntegerWindow,
};
use hyperballean::groups::{
    all_subgroups, asdim_classify, component_census, fag_log_distance, iso_points_classify,
    prufer_log_distance, CardinalToken, Family, GroupDescriptor, PruferLevel,
};
use hyperballean::lattice::ExtNat;
use hyperballean::verify::{run_suite, VerifyConfig};
use hyperballean::witnesses::{lz_exp_ball, lz_exp_ball_general, lz_log_ball, prufer_ball};

use crate::parse::{
    parse_finite_set, parse_group, parse_int_set, parse_radius_finite, parse_radius_int,
    parse_subgroup, GroupSpec, Subgroup,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] hyperballean::Error),
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "hyperballean",
    version,
    about = "Distances, balls and classifications on subgroup hyperballeans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BallFamily {
    /// exp-ball around nZ in L(Z) with radius [-m, m]
    #[value(name = "LZ-exp")]
    LzExp,
    /// logarithmic ball around nZ in L(Z) with bound K on max index
    #[value(name = "LZ-log")]
    LzLog,
    /// logarithmic ball around H_n in L(Z(p^inf))
    #[value(name = "prufer")]
    Prufer,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Logarithmic distance between two subgroups
    Dist {
        #[arg(long)]
        group: String,
        /// Two subgroups, e.g. --sub 2Z --sub 3Z
        #[arg(
            long = "sub",
            num_args = 1,
            required = true,
            allow_hyphen_values = true
        )]
        subs: Vec<String>,
    },
    /// Enumerate a ball in a subgroup hyperballean
    Ball {
        #[arg(long, value_enum)]
        family: BallFamily,
        #[arg(long)]
        n: u64,
        /// Radius [-m, m] for LZ-exp
        #[arg(long)]
        m: Option<u64>,
        /// Arbitrary finite radius for LZ-exp, e.g. "1,5,-2"
        #[arg(long, conflicts_with = "m", allow_hyphen_values = true)]
        radius: Option<String>,
        /// Index bound for LZ-log and prufer
        #[arg(long = "K")]
        k: Option<u64>,
        /// Prime for the prufer family
        #[arg(long)]
        p: Option<u64>,
    },
    /// Connected component of a subgroup, or the component census of a family
    Component {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        sub: Option<String>,
        /// Group descriptor (JSON file, or inline JSON)
        #[arg(long, conflicts_with_all = ["group", "sub", "exp_cardinality"])]
        descriptor: Option<String>,
        /// Components of exp B_G for a group G of this cardinality (e.g. 5, omega)
        #[arg(long, conflicts_with_all = ["group", "sub"])]
        exp_cardinality: Option<String>,
    },
    /// Saturation of a subgroup of Z^n
    Saturate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        sub: String,
    },
    /// Isolated points, asymptotic dimension and components from a group descriptor
    Profile {
        /// Group descriptor (JSON file, or inline JSON)
        #[arg(long)]
        descriptor: String,
    },
    /// Exp-balls around finite subsets of a group
    ExpBall {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "{0}", allow_hyphen_values = true)]
        center: String,
        /// Radius as a list of group elements, e.g. "1,11"
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        radius: String,
        /// Only test whether this set lies in the ball
        #[arg(long, allow_hyphen_values = true)]
        member: Option<String>,
        /// List the translates {Y} ∪ {g+Y : g in radius} instead
        #[arg(long, conflicts_with = "member")]
        translates: bool,
        /// Half-width of the working window when the group is Z
        #[arg(long, default_value_t = 1000)]
        window: i64,
    },
    /// Covering distance between two finite subsets
    Mu {
        #[arg(long)]
        group: String,
        #[arg(
            long = "set",
            num_args = 1,
            required = true,
            allow_hyphen_values = true
        )]
        sets: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        window: i64,
    },
    /// Run verification sweeps
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_coord: Option<u64>,
        /// Comma-separated primes for the iota suite
        #[arg(long)]
        primes: Option<String>,
    },
}

/// Runs with the display base taken from `BALLEAN_LOG_BASE`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_base(args, std::env::var("BALLEAN_LOG_BASE").ok())
}

pub fn run_with_base<I, T>(args: I, log_base: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = parse_base(log_base).and_then(|base| dispatch(cli.command, base));
    match result {
        Ok((value, code)) => Outcome {
            code,
            stdout: format!("{}\n", serde_json::to_string_pretty(&value).expect("json")),
            stderr: String::new(),
        },
        Err(CliError::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n\nFor more information, try '--help'.\n"),
        },
        Err(CliError::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn parse_base(raw: Option<String>) -> Result<f64, CliError> {
    let Some(raw) = raw else {
        return Ok(std::f64::consts::E);
    };
    let t = raw.trim();
    if t == "e" {
        return Ok(std::f64::consts::E);
    }
    match t.parse::<f64>() {
        Ok(b) if b > 1.0 && b.is_finite() => Ok(b),
        _ => Err(CliError::Usage(format!(
            "BALLEAN_LOG_BASE must be a number greater than 1 (or \"e\"), got {raw:?}"
        ))),
    }
}

fn log_value(mu: &ExtNat, base: f64) -> Value {
    match mu {
        ExtNat::Infinity => json!("inf"),
        finite => json!(finite.log(base)),
    }
}

fn distance_json(mu: &ExtNat, base: f64) -> Value {
    json!({"mu": mu.to_json(), "log": log_value(mu, base), "base": base})
}

fn dispatch(cmd: Command, base: f64) -> Result<(Value, i32), CliError> {
    let ok = |v| Ok((v, 0));
    match cmd {
        Command::Dist { group, subs } => ok(dist(&group, &subs, base)?),
        Command::Ball {
            family,
            n,
            m,
            radius,
            k,
            p,
        } => ok(ball(family, n, m, radius, k, p)?),
        Command::Component {
            group,
            sub,
            descriptor,
            exp_cardinality,
        } => ok(component(group, sub, descriptor, exp_cardinality)?),
        Command::Saturate { group, sub } => ok(saturate(&group, &sub)?),
        Command::Profile { descriptor } => ok(profile(&descriptor)?),
        Command::ExpBall {
            group,
            center,
            radius,
            member,
            translates,
            window,
        } => ok(exp_ball(
            &group, &center, &radius, member, translates, window,
        )?),
        Command::Mu {
            group,
            sets,
            window,
        } => ok(mu(&group, &sets, window, base)?),
        Command::Verify {
            suite,
            seed,
            max_coord,
            primes,
        } => verify(&suite, seed, max_coord, primes),
    }
}

fn dist(group: &str, subs: &[String], base: f64) -> Result<Value, CliError> {
    if subs.len() != 2 {
        return Err(CliError::Usage(format!(
            "dist needs exactly two --sub arguments, got {}",
            subs.len()
        )));
    }
    let g = parse_group(group)?;
    let a = parse_subgroup(&subs[0], &g)?;
    let b = parse_subgroup(&subs[1], &g)?;
    let mu = match (&a, &b) {
        (Subgroup::Lattice(x), Subgroup::Lattice(y)) => x.log_subgroup_distance(y)?,
        (Subgroup::Finite(x), Subgroup::Finite(y)) => fag_log_distance(x, y)?,
        (Subgroup::Prufer(x), Subgroup::Prufer(y)) => prufer_log_distance(x, y)?,
        _ => unreachable!("both parsed against the same group"),
    };
    let mut v = distance_json(&mu, base);
    v["commensurable"] = json!(mu.is_finite());
    v["group"] = json!(g.to_string());
    v["subs"] = json!([a.to_string(), b.to_string()]);
    Ok(v)
}

fn ball(
    family: BallFamily,
    n: u64,
    m: Option<u64>,
    radius: Option<String>,
    k: Option<u64>,
    p: Option<u64>,
) -> Result<Value, CliError> {
    let need_k = || k.ok_or_else(|| CliError::Usage("this family needs --K".into()));
    match family {
        BallFamily::LzExp => {
            let (members, radius_json) = match (m, radius) {
                (Some(m), None) => (lz_exp_ball(n, m)?, json!({"m": m})),
                (None, Some(r)) => {
                    let f = parse_radius_int(&r)?;
                    (lz_exp_ball_general(n, &f)?, json!({"F": f}))
                }
                _ => return Err(CliError::Usage("LZ-exp needs --m or --radius".into())),
            };
            Ok(json!({
                "family": "LZ-exp",
                "center": format!("{n}Z"),
                "radius": radius_json,
                "members": members.iter().map(|k| format!("{k}Z")).collect::<Vec<_>>(),
                "size": members.len(),
            }))
        }
        BallFamily::LzLog => {
            let k = need_k()?;
            let members = lz_log_ball(n, k)?;
            Ok(json!({
                "family": "LZ-log",
                "center": format!("{n}Z"),
                "K": k,
                "members": members.iter().map(|m| format!("{m}Z")).collect::<Vec<_>>(),
                "size": members.len(),
            }))
        }
        BallFamily::Prufer => {
            let k = need_k()?;
            let p = p.ok_or_else(|| CliError::Usage("the prufer family needs --p".into()))?;
            let level = u32::try_from(n).map_err(|_| CliError::Usage("level too large".into()))?;
            let members = prufer_ball(p, level, k)?;
            Ok(json!({
                "family": "prufer",
                "center": format!("H_{n}@{p}"),
                "K": k,
                "members": members.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "size": members.len(),
            }))
        }
    }
}

fn read_descriptor(arg: &str) -> Result<GroupDescriptor, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        let path = PathBuf::from(arg);
        std::fs::read_to_string(&path).map_err(|e| {
            CliError::Usage(format!("cannot read descriptor {}: {e}", path.display()))
        })?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| {
        CliError::Domain(hyperballean::Error::MalformedDescriptor(format!(
            "invalid JSON: {e}"
        )))
    })?;
    Ok(GroupDescriptor::from_json(&v)?)
}

fn group_family(g: &GroupSpec) -> Family {
    match g {
        GroupSpec::Free(n) => Family::FreeAbelian(*n as u64),
        GroupSpec::Finite(f) => Family::Finite(f.clone()),
        GroupSpec::Prufer(p) => Family::Prufer(*p),
    }
}

fn component(
    group: Option<String>,
    sub: Option<String>,
    descriptor: Option<String>,
    exp_cardinality: Option<String>,
) -> Result<Value, CliError> {
    if let Some(d) = descriptor {
        let d = read_descriptor(&d)?;
        return Ok(component_census(&Family::from_descriptor(&d)?)?.to_json());
    }
    if let Some(c) = exp_cardinality {
        let k: CardinalToken = c.parse()?;
        return Ok(component_census(&Family::ExpFinitary(k))?.to_json());
    }
    let group = group
        .ok_or_else(|| CliError::Usage("give --group, --descriptor or --exp-cardinality".into()))?;
    let g = parse_group(&group)?;
    let Some(sub) = sub else {
        return Ok(component_census(&group_family(&g))?.to_json());
    };
    let s = parse_subgroup(&sub, &g)?;
    let v = match &s {
        Subgroup::Lattice(l) => {
            let sat = l.saturation();
            json!({
                "subgroup": s.to_string(),
                "rank": l.rank(),
                "saturation": Subgroup::Lattice(sat).to_string(),
                "component_size": if l.rank() == 0 { "1" } else { "omega" },
                "isolated": l.rank() == 0,
                "description": "subgroups with the same saturation",
            })
        }
        Subgroup::Finite(h) => {
            let count = all_subgroups(h.parent()).len();
            json!({
                "subgroup": s.to_string(),
                "component_size": count.to_string(),
                "isolated": count == 1,
                "description": "every subgroup of a finite group",
            })
        }
        Subgroup::Prufer(h) => {
            let whole = h.level() == PruferLevel::Whole;
            json!({
                "subgroup": s.to_string(),
                "component_size": if whole { "1" } else { "omega" },
                "isolated": whole,
                "description": if whole { "the whole group alone" } else { "all finite subgroups H_n" },
            })
        }
    };
    Ok(v)
}

fn saturate(group: &str, sub: &str) -> Result<Value, CliError> {
    let g = parse_group(group)?;
    let Subgroup::Lattice(l) = parse_subgroup(sub, &g)? else {
        return Err(CliError::Domain(hyperballean::Error::InvalidArgument(
            "saturation is defined for subgroups of Z^n".into(),
        )));
    };
    let sat = l.saturation();
    let index = l.index_in(&sat)?;
    Ok(json!({
        "subgroup": Subgroup::Lattice(l.clone()).to_string(),
        "saturation": Subgroup::Lattice(sat.clone()).to_string(),
        "index": index.to_json(),
        "saturated": l == sat,
        "basis": sat.to_json()["basis"].clone(),
    }))
}

fn profile(descriptor: &str) -> Result<Value, CliError> {
    let d = read_descriptor(descriptor)?;
    let asdim = asdim_classify(&d)?;
    let iso = iso_points_classify(&d)?;
    let mut asdim_json = asdim.report.to_json();
    asdim_json["reason"] = json!(asdim.reason);
    let components = match Family::from_descriptor(&d).and_then(|f| component_census(&f)) {
        Ok(c) => c.to_json(),
        Err(e) => json!({"error": e.to_string()}),
    };
    Ok(json!({
        "descriptor": d.to_json(),
        "asdim": asdim_json,
        "iso_points": iso.to_json(),
        "components": components,
        "torsion": d.is_torsion(),
        "layerly_finite": d.is_layerly_finite(),
        "torsion_in_divisible_part": d.torsion_in_divisible(),
        "divisible_part": d.divisible_name(),
    }))
}

fn subsets_json<C: Carrier>(v: &[FiniteSubset<C>]) -> Value {
    json!(v.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn exp_ball_generic<C: Carrier>(
    center: FiniteSubset<C>,
    radius: Vec<C::Elem>,
    member: Option<FiniteSubset<C>>,
    translates: bool,
) -> Result<Value, CliError> {
    let c = center.parent().clone();
    let radius_json = json!(radius.iter().map(|x| c.format_elem(x)).collect::<Vec<_>>());
    if let Some(z) = member {
        return Ok(json!({
            "center": center.to_string(),
            "radius": radius_json,
            "set": z.to_string(),
            "member": exp_ball_membership(&z, &center, &radius)?,
        }));
    }
    let members = if translates {
        g_exp_ball(&center, &radius)?
    } else {
        exp_ball_enumerate(&center, &radius)?
    };
    Ok(json!({
        "kind": if translates { "G-exp" } else { "exp" },
        "center": center.to_string(),
        "radius": radius_json,
        "members": subsets_json(&members),
        "size": members.len(),
    }))
}

fn exp_ball(
    group: &str,
    center: &str,
    radius: &str,
    member: Option<String>,
    translates: bool,
    window: i64,
) -> Result<Value, CliError> {
    match parse_group(group)? {
        GroupSpec::Finite(g) => {
            let y = FiniteSubset::new(&g, parse_finite_set(center, &g)?)?;
            let r = parse_radius_finite(radius, &g)?;
            let z = member
                .map(|m| Ok::<_, CliError>(FiniteSubset::new(&g, parse_finite_set(&m, &g)?)?))
                .transpose()?;
            exp_ball_generic(y, r, z, translates)
        }
        GroupSpec::Free(1) => {
            let w = IntegerWindow::new(window)?;
            let y = FiniteSubset::new(&w, parse_int_set(center)?)?;
            let r = parse_radius_int(radius)?;
            let z = member
                .map(|m| Ok::<_, CliError>(FiniteSubset::new(&w, parse_int_set(&m)?)?))
                .transpose()?;
            exp_ball_generic(y, r, z, translates)
        }
        other => Err(CliError::Domain(hyperballean::Error::InvalidArgument(
            format!("exp-ball supports finite groups and Z, not {other}"),
        ))),
    }
}

fn mu(group: &str, sets: &[String], window: i64, base: f64) -> Result<Value, CliError> {
    if sets.len() != 2 {
        return Err(CliError::Usage(format!(
            "mu needs exactly two --set arguments, got {}",
            sets.len()
        )));
    }
    let (mut v, mu) = match parse_group(group)? {
        GroupSpec::Finite(g) => {
            let y = FiniteSubset::new(&g, parse_finite_set(&sets[0], &g)?)?;
            let z = FiniteSubset::new(&g, parse_finite_set(&sets[1], &g)?)?;
            let r = mu_set_distance(&y, &z)?;
            (r.to_json_with(|x| g.format_elem(x)), r.mu)
        }
        GroupSpec::Free(1) => {
            let w = IntegerWindow::new(window)?;
            let y = FiniteSubset::new(&w, parse_int_set(&sets[0])?)?;
            let z = FiniteSubset::new(&w, parse_int_set(&sets[1])?)?;
            let r = mu_set_distance(&y, &z)?;
            (r.to_json_with(|x| x.to_string()), r.mu)
        }
        other => {
            return Err(CliError::Domain(hyperballean::Error::InvalidArgument(
                format!("mu supports finite groups and Z, not {other}"),
            )))
        }
    };
    v["log"] = log_value(&mu, base);
    v["base"] = json!(base);
    Ok(v)
}

fn verify(
    suite: &str,
    seed: u64,
    max_coord: Option<u64>,
    primes: Option<String>,
) -> Result<(Value, i32), CliError> {
    let primes = primes
        .map(|p| {
            p.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u64>()
                        .map_err(|_| CliError::Usage(format!("bad prime {x:?}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let known = suite == "all" || hyperballean::verify::SUITES.contains(&suite);
    if !known {
        return Err(CliError::Usage(format!(
            "unknown suite {suite:?}; expected one of {}, all",
            hyperballean::verify::SUITES.join(", ")
        )));
    }
    let cfg = VerifyConfig {
        seed,
        max_coord,
        primes,
    };
    let reports = run_suite(suite, &cfg)?;
    let violations: u64 = reports.iter().map(|r| r.violations).sum();
    let samples: u64 = reports.iter().map(|r| r.samples).sum();
    let v = json!({
        "suite": suite,
        "violations": violations,
        "samples": samples,
        "seed": seed,
        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    Ok((v, if violations == 0 { 0 } else { 1 }))
}

//! Command-line front end: builds or loads the tables, runs one command and
//! prints a JSON envelope. Exit codes: 0 success, 1 a false verdict, a
//! nonempty discrepancy log or a failed computation, 2 invalid arguments.

pub mod cache;

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use suzuki_hopf::automorphism::{
    audit, compare_search, enumerate_classified_with, exhaustive_search_with, verify_descriptor, AutDescriptor,
    Discrepancy, GridPreset,
};
use suzuki_hopf::coalgebra::{comodule_lambda, decompose, group_likes};
use suzuki_hopf::hopf::{build_hopf_tables, tensor_mul, verify_hopf_with};
use suzuki_hopf::morphism::{support_transport, twist_comodule, LinearMap};
use suzuki_hopf::field::FieldContext;
use suzuki_hopf::{AlgebraParams, CycNumber, Element, Exec, HopfTables, Sign, StructureTables};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "suzuki", version, about = "Exact computations in the Suzuki Hopf algebras A_{Nn}^{mu lambda}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(clap::Args, Debug)]
struct Options {
    /// N >= 1
    #[arg(short = 'N', global = true)]
    big_n: Option<u32>,
    /// n >= 2
    #[arg(short = 'n', global = true)]
    n: Option<u32>,
    /// +1 or -1
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu: Option<String>,
    /// +1 or -1
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Write the JSON here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Coefficient grid for aut-search: default or rational
    #[arg(long, global = true, default_value = "default")]
    grid: String,
    /// Seed for the randomized spot checks of algebra-verify
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of random samples drawn when --seed is given
    #[arg(long, global = true, default_value_t = 32)]
    samples: usize,
    /// One automorphism: psi:S:T:XI, phi:S:T:XI or gamma:THETA1:THETA2:S
    #[arg(long, global = true, allow_hyphen_values = true)]
    aut: Option<String>,
    /// Comodule Lambda_st to twist, as S,T (default N,1)
    #[arg(long, global = true)]
    st: Option<String>,
    /// Refuse algebras of larger dimension
    #[arg(long, global = true, default_value_t = 200)]
    max_dim: usize,
    /// Table cache directory (default: the user cache directory)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Run single-threaded
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Json,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Build the multiplication table and summarize it
    AlgebraBuild,
    /// Check every Hopf algebra axiom exhaustively
    AlgebraVerify,
    /// Dump multiplication, coproduct, counit and antipode tables
    AlgebraExport,
    /// List the group-like elements
    CoalgebraGrouplikes,
    /// Check the decomposition into group-likes and simple subcoalgebras
    CoalgebraDecompose,
    /// Twist Lambda_st by automorphisms and track its support
    ComoduleTwist,
    /// Instantiate and verify every classified automorphism
    AutList,
    /// Verify one automorphism (--aut) or all classified candidates
    AutVerify,
    /// Composition table and group invariants of the classified maps
    AutTable,
    /// Exhaustive search over a coefficient grid
    AutSearch,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::AlgebraBuild => "algebra-build",
            Command::AlgebraVerify => "algebra-verify",
            Command::AlgebraExport => "algebra-export",
            Command::CoalgebraGrouplikes => "coalgebra-grouplikes",
            Command::CoalgebraDecompose => "coalgebra-decompose",
            Command::ComoduleTwist => "comodule-twist",
            Command::AutList => "aut-list",
            Command::AutVerify => "aut-verify",
            Command::AutTable => "aut-table",
            Command::AutSearch => "aut-search",
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool_version: &'a str,
    params: AlgebraParams,
    command: &'a str,
    payload: Value,
}

/// Everything validated before any computation starts.
struct Job {
    command: Command,
    params: AlgebraParams,
    out: Option<PathBuf>,
    grid: GridPreset,
    seed: Option<u64>,
    samples: usize,
    aut: Option<AutDescriptor>,
    st: Option<(u32, u32)>,
    cache_dir: Option<PathBuf>,
    exec: Exec,
}

fn parse_sign(flag: &str, value: Option<&String>) -> Result<Sign> {
    let v = value.ok_or_else(|| anyhow!("--{flag} is required"))?;
    match v.as_str() {
        "+1" => Ok(Sign::Plus),
        "-1" => Ok(Sign::Minus),
        other => bail!("--{flag} must be +1 or -1, got '{other}'"),
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(x).join("suzuki-hopf"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("suzuki-hopf"))
}

fn validate(cli: Cli) -> Result<Job> {
    let o = cli.opts;
    let big_n = o.big_n.ok_or_else(|| anyhow!("-N is required"))?;
    let n = o.n.ok_or_else(|| anyhow!("-n is required"))?;
    let mu = parse_sign("mu", o.mu.as_ref())?;
    let lambda = parse_sign("lambda", o.lambda.as_ref())?;
    let params = AlgebraParams::new(big_n, n, mu, lambda)?;
    let dim = (big_n as u64) * (n as u64) * 4;
    if dim > o.max_dim as u64 {
        bail!("dimension {dim} exceeds the cap {} (raise it with --max-dim)", o.max_dim);
    }
    let grid = GridPreset::parse(&o.grid).ok_or_else(|| anyhow!("unknown grid preset '{}'", o.grid))?;
    let st = match &o.st {
        None => None,
        Some(text) => {
            let (s, t) = text
                .split_once(',')
                .ok_or_else(|| anyhow!("--st expects S,T"))?;
            let s: u32 = s.trim().parse().context("--st")?;
            let t: u32 = t.trim().parse().context("--st")?;
            if s < 1 || s > big_n || t < 1 || t >= n {
                bail!("--st {s},{t} is outside 1..=N x 1..n");
            }
            Some((s, t))
        }
    };
    if o.seed.is_some() && o.samples == 0 {
        bail!("--samples must be positive");
    }
    let cache_dir = if o.no_cache {
        None
    } else {
        o.cache_dir.or_else(default_cache_dir)
    };
    let _ = o.format;
    Ok(Job {
        command: cli.command,
        params,
        out: o.out,
        grid,
        seed: o.seed,
        samples: o.samples,
        aut: o.aut.as_deref().map(|a| parse_descriptor(a, &params.field())).transpose()?,
        st,
        cache_dir,
        exec: if o.sequential { Exec::Sequential } else { Exec::default() },
    })
}

/// Parses `psi:S:T:XI`, `phi:S:T:XI` or `gamma:THETA1:THETA2:S`.
fn parse_descriptor(text: &str, ctx: &Arc<FieldContext>) -> Result<AutDescriptor> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| -> Result<u32> { s.trim().parse().with_context(|| format!("'{s}' in --aut")) };
    match parts.as_slice() {
        [kind, s, t, xi] if kind.eq_ignore_ascii_case("psi") || kind.eq_ignore_ascii_case("phi") => {
            let xi = CycNumber::parse(ctx, xi)?;
            let (s, t) = (num(s)?, num(t)?);
            Ok(if kind.eq_ignore_ascii_case("psi") {
                AutDescriptor::psi(s, t, xi)
            } else {
                AutDescriptor::phi(s, t, xi)
            })
        }
        [kind, th1, th2, s] if kind.eq_ignore_ascii_case("gamma") => {
            let th1 = Sign::parse(th1).ok_or_else(|| anyhow!("theta1 must be +1 or -1"))?;
            let th2 = Sign::parse(th2).ok_or_else(|| anyhow!("theta2 must be +1 or -1"))?;
            Ok(AutDescriptor::gamma(th1, th2, num(s)?))
        }
        _ => bail!("--aut expects psi:S:T:XI, phi:S:T:XI or gamma:THETA1:THETA2:S"),
    }
}

/// The computed payload and whether it reports a failure.
struct Outcome {
    payload: Value,
    failed: bool,
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn random_element(rng: &mut ChaCha8Rng, tables: &StructureTables) -> Element {
    let mut x = Element::zero();
    for _ in 0..3 {
        let i = rng.gen_range(0..tables.dim());
        let c = tables.num(rng.gen_range(-3..=3));
        x.add_scaled(&tables.basis_element(i), &c);
    }
    x
}

/// Random spot checks of associativity, multiplicativity of `Δ` and the
/// antipode identity, on sparse elements with small integer coefficients.
fn random_checks(seed: u64, samples: usize, tables: &StructureTables, hopf: &HopfTables) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for k in 0..samples {
        let x = random_element(&mut rng, tables);
        let y = random_element(&mut rng, tables);
        let z = random_element(&mut rng, tables);
        if tables.mul(&tables.mul(&x, &y), &z) != tables.mul(&x, &tables.mul(&y, &z)) {
            failures.push(format!("sample {k}: associativity"));
        }
        let dx = hopf.coproduct(tables, &x);
        let dy = hopf.coproduct(tables, &y);
        if hopf.coproduct(tables, &tables.mul(&x, &y)) != tensor_mul(tables, &dx, &dy) {
            failures.push(format!("sample {k}: coproduct multiplicative"));
        }
        let mut lhs = Element::zero();
        for ((a, b), c) in dx.terms() {
            let sa = hopf.antipode(tables, &Element::basis(*a, tables.ctx()));
            lhs.add_scaled(&tables.mul(&sa, &Element::basis(*b, tables.ctx())), c);
        }
        if lhs != tables.scalar(&hopf.counit(tables, &x)) {
            failures.push(format!("sample {k}: antipode"));
        }
    }
    json!({ "seed": seed, "samples": samples, "all_hold": failures.is_empty(), "failures": failures })
}

fn discrepancy(kind: &str, subject: String, detail: String) -> Discrepancy {
    Discrepancy {
        kind: kind.into(),
        subject,
        detail,
    }
}

fn execute(job: &Job) -> Result<Outcome> {
    let (tables, status) = cache::tables(job.params, job.cache_dir.as_deref());
    if status != cache::CacheStatus::Disabled {
        eprintln!("tables: cache {status:?}");
    }
    let hopf = build_hopf_tables(&tables);
    let exec = job.exec;
    let t = &tables;
    let h = &hopf;
    Ok(match job.command {
        Command::AlgebraBuild => {
            let labels: Vec<String> = t.basis().iter().map(|b| b.to_string()).collect();
            let nonzero = t.products().iter().filter(|x| !x.is_zero()).count();
            Outcome {
                payload: json!({
                    "dim": t.dim(),
                    "conductor": t.ctx().conductor(),
                    "basis": labels,
                    "unit": to_value(t.unit())?,
                    "nonzero_products": nonzero,
                }),
                failed: false,
            }
        }
        Command::AlgebraExport => {
            let labels: Vec<String> = t.basis().iter().map(|b| b.to_string()).collect();
            let mut products = Vec::new();
            for i in 0..t.dim() {
                for j in 0..t.dim() {
                    let x = t.product(i, j);
                    if !x.is_zero() {
                        products.push(json!([labels[i], labels[j], to_value(x)?]));
                    }
                }
            }
            Outcome {
                payload: json!({
                    "dim": t.dim(),
                    "basis": labels,
                    "unit": to_value(t.unit())?,
                    "multiplication": products,
                    "coproduct": to_value(&h.coproduct_table())?,
                    "counit": to_value(&h.counit_table())?,
                    "antipode": to_value(&h.antipode_table())?,
                }),
                failed: false,
            }
        }
        Command::AlgebraVerify => {
            let report = verify_hopf_with(t, h, exec);
            let mut failed = !report.all_hold();
            let mut payload = json!({ "report": to_value(&report)?, "failures": report.failures() });
            if let Some(seed) = job.seed {
                let r = random_checks(seed, job.samples, t, h);
                failed |= r["all_hold"] != json!(true);
                payload["random_checks"] = r;
            }
            Outcome { payload, failed }
        }
        Command::CoalgebraGrouplikes => match group_likes(t, h) {
            Ok(list) => Outcome {
                payload: json!({
                    "count": list.items.len(),
                    "items": list.items.iter().map(|g| json!({
                        "label": g.label.to_string(),
                        "element": g.element,
                    })).collect::<Vec<_>>(),
                    "collisions": list.collisions,
                }),
                failed: false,
            },
            Err(e) => Outcome {
                payload: json!({ "error": e.to_string() }),
                failed: true,
            },
        },
        Command::CoalgebraDecompose => match decompose(t, h) {
            Ok(r) => Outcome {
                failed: !r.complete,
                payload: to_value(&r)?,
            },
            Err(e) => Outcome {
                payload: json!({ "error": e.to_string() }),
                failed: true,
            },
        },
        Command::ComoduleTwist => {
            let (s, st_t) = job.st.unwrap_or((job.params.big_n, 1));
            let lam = comodule_lambda(s, st_t, t, h)?;
            let maps: Vec<(String, LinearMap, bool)> = match &job.aut {
                Some(d) => {
                    let (r, map) = verify_descriptor(d, t, h, exec)?;
                    vec![(d.to_string(), map, r.verified)]
                }
                None => {
                    let cls = enumerate_classified_with(t, h, exec)?;
                    cls.maps
                        .into_iter()
                        .zip(cls.names)
                        .map(|(m, names)| (names[0].clone(), m, true))
                        .collect()
                }
            };
            let mut failed = false;
            let mut rows = Vec::new();
            for (name, map, verified) in &maps {
                if !verified {
                    failed = true;
                    rows.push(json!({ "automorphism": name, "verified": false }));
                    continue;
                }
                let st = support_transport(map, &lam, t, h)?;
                let twisted = twist_comodule(map, &lam, t, h).ok();
                failed |= !(st.twisted_axioms_hold && st.some_orientation_holds());
                rows.push(json!({
                    "automorphism": name,
                    "verified": true,
                    "transport": to_value(&st)?,
                    "twisted_coaction": twisted.map(|c| c.coaction),
                }));
            }
            Outcome {
                payload: json!({ "comodule": { "s": s, "t": st_t, "coaction": lam.coaction }, "twists": rows }),
                failed,
            }
        }
        Command::AutList => {
            let cls = enumerate_classified_with(t, h, exec)?;
            Outcome {
                failed: !cls.discrepancies.is_empty(),
                payload: to_value(&cls)?,
            }
        }
        Command::AutVerify => match &job.aut {
            Some(d) => {
                let (r, map) = verify_descriptor(d, t, h, exec)?;
                Outcome {
                    failed: !r.verified,
                    payload: json!({ "result": to_value(&r)?, "map": to_value(&map)? }),
                }
            }
            None => {
                let cls = enumerate_classified_with(t, h, exec)?;
                let failed = cls.candidates.iter().any(|c| !c.verified);
                Outcome {
                    failed,
                    payload: json!({ "candidates": to_value(&cls.candidates)?, "dedup": to_value(&cls.dedup)? }),
                }
            }
        },
        Command::AutTable => {
            let a = audit(t, h, exec)?;
            Outcome {
                failed: !a.clean(),
                payload: json!({
                    "order": a.group.order,
                    "is_group": a.group.is_group,
                    "names": a.classification.names,
                    "table": a.group.table,
                    "identity": a.group.identity,
                    "inverses": a.group.inverses,
                    "invariants": to_value(&a.group_report)?,
                    "closure_failures": a.group.closure_failures.len(),
                    "discrepancies": a.discrepancies,
                }),
            }
        }
        Command::AutSearch => {
            let grid = job.grid.values(t);
            let search = exhaustive_search_with(t, h, &grid, exec);
            let cls = enumerate_classified_with(t, h, exec)?;
            let cmp = compare_search(&search, &cls.maps);
            let mut discrepancies = Vec::new();
            for hit in &search.hits {
                if !cls.maps.contains(&hit.map) {
                    discrepancies.push(discrepancy(
                        "verified automorphism missing from the classified list",
                        format!("C_{},{}", hit.coefficients.s, hit.coefficients.t),
                        hit.map.canonical_key(),
                    ));
                }
            }
            for (i, m) in cls.maps.iter().enumerate() {
                if !search.hits.iter().any(|hit| hit.map == *m) {
                    discrepancies.push(discrepancy(
                        "classified automorphism outside the search grid",
                        cls.names[i][0].clone(),
                        m.canonical_key(),
                    ));
                }
            }
            Outcome {
                failed: !discrepancies.is_empty(),
                payload: json!({
                    "grid_preset": job.grid.name(),
                    "search": to_value(&search)?,
                    "comparison": to_value(&cmp)?,
                    "discrepancies": discrepancies,
                }),
            }
        }
    })
}

fn emit(job: &Job, payload: Value) -> Result<()> {
    let env = Envelope {
        tool_version: TOOL_VERSION,
        params: job.params,
        command: job.command.name(),
        payload,
    };
    let mut text = serde_json::to_string_pretty(&env)?;
    text.push('\n');
    match &job.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Runs one invocation. `argv` includes the program name.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let job = match validate(cli) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e:#}");
            return 2;
        }
    };
    let outcome = match execute(&job) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return 1;
        }
    };
    if let Err(e) = emit(&job, outcome.payload) {
        eprintln!("error: {e:#}");
        return 2;
    }
    i32::from(outcome.failed)
}

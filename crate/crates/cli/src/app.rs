//! Command-line driver. Exit codes: 0 success, 1 violated invariant, 2 input
//! error, 3 size cap exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use ogroup_core::{
    build_named, direct_product, embed, enumerate_homs, is_normal, simple_normal_subgroups, socle, Error, GroupKind,
    Limits, OmegaGroup, PhiContext, Subgroup,
};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::dsl::{load, SpecError, SpecErrorKind};
use crate::report::{self, analysis, analyze_report, error_report, to_text};
use crate::suites::{self, diagonal, Suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(
    name = "ogroup",
    version,
    about = "Socles, isotypical components and normal morphisms of finite Ω-groups"
)]
pub struct Cli {
    /// Directory for cached analyses.
    #[arg(long, global = true, env = "OGROUP_CACHE")]
    pub cache: Option<PathBuf>,
    /// Largest group any constructor will build.
    #[arg(long, global = true, default_value_t = Limits::default().max_order)]
    pub order_cap: usize,
    /// Largest group whose full Ω-subgroup lattice is enumerated.
    #[arg(long, global = true, default_value_t = Limits::default().lattice)]
    pub lattice_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Socle, components, support and semisimplicity of a described group.
    Analyze {
        file: PathBuf,
        /// Write the JSON report here (`-` for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Group to analyze; defaults to the last one the file touches.
        #[arg(long)]
        group: Option<String>,
    },
    /// Run invariant suites over the bundled corpus.
    Verify {
        /// prop2, theorem, sie-ns, lemma, prop1, equiv or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Largest corpus group included.
        #[arg(long, default_value_t = 24)]
        max_order: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Count morphisms and normal morphisms between two described groups.
    Homs {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// The diagonal of the alternating subgroup in S3 x S3.
    Counterexample {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

impl Command {
    fn json(&self) -> Option<&Path> {
        match self {
            Command::Analyze { json, .. }
            | Command::Verify { json, .. }
            | Command::Homs { json, .. }
            | Command::Counterexample { json } => json.as_deref(),
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Input {
        message: String,
        location: Option<(usize, usize)>,
    },
    Cap(String),
    Violation(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Input { .. } => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Violation(_) => "violation",
            Failure::Input { .. } => "input",
            Failure::Cap(_) => "cap_exceeded",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input { message, .. } | Failure::Cap(message) | Failure::Violation(message) => message,
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure::Input {
            message: message.into(),
            location: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::Internal(_) => Failure::Violation(e.to_string()),
            other => Failure::input(other.to_string()),
        }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        match e.kind {
            SpecErrorKind::Semantic(Error::CapExceeded { .. }) => Failure::Cap(e.to_string()),
            _ => Failure::Input {
                message: e.to_string(),
                location: Some((e.line, e.column)),
            },
        }
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let json = cli.command.json().is_some();
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(f) => {
            let location = match &f {
                Failure::Input { location, .. } => *location,
                _ => None,
            };
            let _ = if json {
                let v = error_report(f.kind(), f.message(), f.exit_code(), location);
                writeln!(err, "{}", serde_json::to_string(&v).expect("JSON values serialize"))
            } else {
                writeln!(err, "error: {}", f.message())
            };
            f.exit_code()
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    Limits {
        max_order: cli.order_cap,
        lattice: cli.lattice_cap,
        ..Limits::default()
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let limits = limits(cli);
    match &cli.command {
        Command::Analyze { file, json, group } => analyze(cli, &limits, file, json.as_deref(), group.as_deref(), out),
        Command::Verify { suite, max_order, json } => verify(&limits, suite, *max_order, json.as_deref(), out),
        Command::Homs { file, from, to, json } => homs(&limits, file, from, to, json.as_deref(), out),
        Command::Counterexample { json } => counterexample(json.as_deref(), out),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::input(format!("{}: {e}", path.display()))
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::input(format!("cannot write output: {e}")))
}

/// Writes a JSON document to `path`, or to `out` when the path is `-`.
fn write_json(path: &Path, value: &Value, out: &mut dyn Write) -> Outcome {
    let text = to_text(value);
    if path == Path::new("-") {
        emit(out, &text)
    } else {
        fs::write(path, text).map_err(|e| io_failure(path, e))
    }
}

fn to_stdout(json: Option<&Path>) -> bool {
    json == Some(Path::new("-"))
}

fn omega(group: &OmegaGroup) -> String {
    if group.operators().is_empty() {
        "Ω = ∅".to_string()
    } else {
        format!("Ω = {{{}}}", group.labels().into_iter().collect::<Vec<_>>().join(", "))
    }
}

fn short(digest: &str) -> &str {
    &digest[..12]
}

fn analyze(
    cli: &Cli,
    limits: &Limits,
    file: &Path,
    json: Option<&Path>,
    group: Option<&str>,
    out: &mut dyn Write,
) -> Outcome {
    let text = fs::read_to_string(file).map_err(|e| io_failure(file, e))?;
    let elaborated = load(&text, limits)?;
    let (name, g) = match group {
        Some(n) => (
            n.to_string(),
            elaborated
                .get(n)
                .cloned()
                .ok_or_else(|| Failure::input(format!("no group named `{n}`")))?,
        ),
        None => (
            elaborated
                .last
                .clone()
                .ok_or_else(|| Failure::input("the file defines no group"))?,
            elaborated.target().cloned().expect("last name is bound"),
        ),
    };
    let cache = match &cli.cache {
        Some(dir) => Some(Cache::open(dir).map_err(|e| io_failure(dir, e))?),
        None => None,
    };
    let a = match cache.as_ref().and_then(|c| c.get(&g)) {
        Some(hit) => hit,
        None => {
            let fresh = analysis(&g, limits)?;
            if let Some(c) = &cache {
                c.put(&g, &fresh).map_err(|e| io_failure(c.dir(), e))?;
            }
            fresh
        }
    };
    let full = analyze_report(&name, &text, a);
    if let Some(path) = json {
        write_json(path, &full, out)?;
    }
    if !to_stdout(json) {
        emit(out, &summary(&name, &g, &full["analysis"]))?;
    }
    Ok(())
}

fn yes(v: &Value) -> &'static str {
    if v.as_bool() == Some(true) {
        "yes"
    } else {
        "no"
    }
}

fn summary(name: &str, g: &OmegaGroup, a: &Value) -> String {
    let mut s = format!("group {name}: order {}, {}\n", g.order(), omega(g));
    s += &format!("normal Ω-subgroups: {}\n", a["normal_subgroup_count"]);
    s += &format!(
        "simple normal Ω-subgroups: {}\n",
        a["simple_normal_subgroups"].as_array().map_or(0, Vec::len)
    );
    s += &format!("socle: order {} {}\n", a["socle"]["order"], a["socle"]["members"]);
    let support = a["support"].as_array().cloned().unwrap_or_default();
    s += &format!("support: {} type(s)\n", support.len());
    for d in &support {
        let d = d.as_str().unwrap_or_default();
        s += &format!("  {}: component order {}\n", short(d), a["components"][d]["order"]);
    }
    let c = &a["semisimple"]["criteria"];
    s += &format!(
        "semisimple: {} (G = soc G: {}; sum of simples: {}; every normal subgroup a summand: {})\n",
        yes(&a["semisimple"]["verdict"]),
        yes(&c["equals_socle"]),
        yes(&c["simple_sum"]),
        yes(&c["all_summands"]),
    );
    s
}

fn verify(limits: &Limits, suite: &str, max_order: usize, json: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let selected: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(Failure::input)?]
    };
    let cfg = SuiteConfig {
        limits: *limits,
        ..SuiteConfig::with_max_order(max_order)
    };
    let quiet = to_stdout(json);
    let mut doc = serde_json::Map::new();
    let (mut violations, mut capped) = (0, 0);
    for s in selected {
        let start = Instant::now();
        let t = suites::run(s, &cfg);
        let secs = start.elapsed().as_secs_f64();
        violations += t.violations.len();
        capped += t.capped.len();
        if !quiet {
            let verdict = if t.passed() { "PASS" } else { "FAIL" };
            let mut text = format!("suite {s}: {verdict} ({secs:.2} s)\n");
            for (property, n) in &t.checks {
                text += &format!("  {property}: {n} checks\n");
            }
            for v in t.violations.iter().take(20) {
                text += &format!("  violation: {v}\n");
            }
            if !t.capped.is_empty() {
                text += &format!("  {} instance(s) skipped at a size cap\n", t.capped.len());
            }
            emit(out, &text)?;
        }
        doc.insert(
            s.name().to_string(),
            json!({
                "passed": t.passed(),
                "checks": t.checks,
                "violations": t.violations,
                "capped": t.capped,
            }),
        );
    }
    if let Some(path) = json {
        write_json(path, &json!({ "max_order": max_order, "suites": doc }), out)?;
    }
    if violations > 0 {
        Err(Failure::Violation(format!("{violations} invariant violation(s)")))
    } else if capped > 0 {
        Err(Failure::Cap(format!("{capped} instance(s) exceeded a size cap")))
    } else {
        Ok(())
    }
}

fn homs(limits: &Limits, file: &Path, from: &str, to: &str, json: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let text = fs::read_to_string(file).map_err(|e| io_failure(file, e))?;
    let e = load(&text, limits)?;
    let pick = |n: &str| {
        e.get(n)
            .cloned()
            .ok_or_else(|| Failure::input(format!("no group named `{n}`")))
    };
    let (a, b) = (pick(from)?, pick(to)?);
    let hs = enumerate_homs(&a, &b, limits)?;
    let phi = match PhiContext::new(&a, &b, limits) {
        Ok(ctx) => Some(phi_stats(&ctx, &hs, limits)?),
        Err(Error::NotSemisimple) => None,
        Err(other) => return Err(other.into()),
    };
    let doc = json!({
        "source": from,
        "target": to,
        "morphisms": hs.len(),
        "normal": hs.normal_count(),
        "phi": phi.clone().unwrap_or(Value::Null),
    });
    if let Some(path) = json {
        write_json(path, &doc, out)?;
    }
    if !to_stdout(json) {
        let mut s = format!(
            "Hom({from}, {to}): {} morphisms, {} normal\n",
            hs.len(),
            hs.normal_count()
        );
        match &phi {
            Some(p) => {
                s += &format!(
                    "Φ: {} common type(s), product of component counts {}, bijective: {}\n",
                    p["common_support"].as_array().map_or(0, Vec::len),
                    p["component_product"],
                    yes(&p["bijective"]),
                );
            }
            None => s += "Φ: not defined (an endpoint is not semisimple)\n",
        }
        emit(out, &s)?;
    }
    match phi {
        Some(p) if p["bijective"] != json!(true) => Err(Failure::Violation("Φ is not a bijection".into())),
        _ => Ok(()),
    }
}

fn phi_stats(ctx: &PhiContext, hs: &ogroup_core::HomSet, limits: &Limits) -> Result<Value, Failure> {
    let mut counts = serde_json::Map::new();
    let mut product = 1usize;
    for s in &ctx.common {
        let n = enumerate_homs(
            ctx.source_component(s).expect("common type"),
            ctx.target_component(s).expect("common type"),
            limits,
        )?
        .normal_count();
        product *= n;
        counts.insert(s.digest(), json!(n));
    }
    let mut round_trips = true;
    for f in hs.normal() {
        round_trips &= ctx.phi_inverse(&ctx.phi(f)?)?.map() == f.map();
    }
    Ok(json!({
        "common_support": ctx.common.iter().map(|s| s.digest()).collect::<Vec<_>>(),
        "component_normal_counts": counts,
        "component_product": product,
        "round_trips": round_trips,
        "bijective": round_trips && product == hs.normal_count(),
    }))
}

/// Verdicts for the diagonal of `soc(S3)` inside `S3 x S3`.
pub fn counterexample_report() -> Result<Value, Error> {
    let limits = Limits::default();
    let g = Arc::new(build_named(GroupKind::Symmetric, 3, &limits)?.with_name("S3"));
    let soc = socle(&g, &limits)?;
    let w = direct_product(&[g.clone(), g.clone()], &limits)?;
    let gg = &w.product;
    let soc_gg = socle(gg, &limits)?;
    let delta = Subgroup::new(gg, diagonal(&w, &soc))?;
    let e = embed(gg, &soc_gg);
    let delta_simple_in_socle = simple_normal_subgroups(&e.group, &limits)?
        .iter()
        .any(|h| e.lift_subgroup(h) == delta);
    let delta_normal = is_normal(gg, &delta);
    let central = soc.members().is_subset(&g.center());
    Ok(json!({
        "group": "S3",
        "operators": [],
        "socle": report::subgroup(&soc),
        "product_socle": report::subgroup(&soc_gg),
        "product_socle_is_square": soc_gg == w.product_of(&[soc.clone(), soc.clone()]),
        "diagonal": report::subgroup(&delta),
        "diagonal_simple_normal_in_socle": delta_simple_in_socle,
        "diagonal_normal_in_product": delta_normal,
        "socle_central": central,
    }))
}

fn counterexample(json: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let r = counterexample_report()?;
    if let Some(path) = json {
        write_json(path, &r, out)?;
    }
    if !to_stdout(json) {
        let mut s = String::from("G = S3, Ω = ∅\n");
        s += &format!("soc(G) = A3, order {} {}\n", r["socle"]["order"], r["socle"]["members"]);
        s += &format!(
            "soc(G x G) = A3 x A3: {}, order {}\n",
            yes(&r["product_socle_is_square"]),
            r["product_socle"]["order"]
        );
        s += &format!(
            "diagonal of A3 in sz(soc(G x G)): {}\n",
            yes(&r["diagonal_simple_normal_in_socle"])
        );
        s += &format!(
            "diagonal of A3 normal in G x G: {}\n",
            yes(&r["diagonal_normal_in_product"])
        );
        s += &format!("A3 inside Z(G): {}\n", yes(&r["socle_central"]));
        emit(out, &s)?;
    }
    let expected = r["socle"]["order"] == json!(3)
        && r["product_socle"]["order"] == json!(9)
        && r["product_socle_is_square"] == json!(true)
        && r["diagonal_simple_normal_in_socle"] == json!(true)
        && r["diagonal_normal_in_product"] == json!(false)
        && r["diagonal_normal_in_product"] == r["socle_central"];
    if expected {
        Ok(())
    } else {
        Err(Failure::Violation(
            "counterexample verdicts differ from the expected ones".into(),
        ))
    }
}

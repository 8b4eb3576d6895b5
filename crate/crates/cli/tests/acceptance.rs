//! Acceptance checks, one line per criterion. Exact criteria have tolerance 0;
//! the only inexact bounds are wall-clock limits, pinned below.

#[path = "../../core/tests/common/mod.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ogroup::app::counterexample_report;
use ogroup::corpus::{corpus_up_to, CorpusGroup};
use ogroup::suites::{self, Suite, SuiteConfig, Tally};
use ogroup_core::{
    are_isomorphic, enumerate_homs, generated_subgroup, greedy_refine, normal_omega_subgroups, sdr_report,
    simple_normal_subgroups, GroupKind, Limits, OmegaGroup, Subgroup,
};
use serde_json::json;

const COUNTEREXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const PROP2_BUDGET: Duration = Duration::from_secs(300);
const PROP1_MIN_INSTANCES: usize = 500;

type Check = fn() -> Outcome;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn tally_summary(t: &Tally) -> String {
    let checks: usize = t.checks.values().sum();
    let mut s = format!(
        "{checks} checks, {} violations, {} capped",
        t.violations.len(),
        t.capped.len()
    );
    if let Some(v) = t.violations.first() {
        s += &format!("; first violation: {v}");
    }
    if let Some(c) = t.capped.first() {
        s += &format!("; first capped: {c}");
    }
    s
}

fn clean(t: &Tally) -> bool {
    t.violations.is_empty() && t.capped.is_empty()
}

fn full_config() -> SuiteConfig {
    let limits = Limits::default();
    SuiteConfig {
        max_order: limits.max_order,
        ..SuiteConfig::default()
    }
}

// ---------------------------------------------------------------------------
// Criterion 1.

type Perm = [usize; 3];

fn compose(p: &Perm, q: &Perm) -> Perm {
    [p[q[0]], p[q[1]], p[q[2]]]
}

fn invert(p: &Perm) -> Perm {
    let mut r = [0; 3];
    for i in 0..3 {
        r[p[i]] = i;
    }
    r
}

/// S3 x S3 on pairs of permutations, built without the engine.
fn s3_squared() -> Vec<(Perm, Perm)> {
    let s3: Vec<Perm> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    s3.iter().flat_map(|a| s3.iter().map(move |b| (*a, *b))).collect()
}

fn mul2(x: &(Perm, Perm), y: &(Perm, Perm)) -> (Perm, Perm) {
    (compose(&x.0, &y.0), compose(&x.1, &y.1))
}

fn inv2(x: &(Perm, Perm)) -> (Perm, Perm) {
    (invert(&x.0), invert(&x.1))
}

/// Least normal subgroup containing `xs`, by closing under products and
/// conjugation until nothing changes.
fn normal_closure2(all: &[(Perm, Perm)], xs: &[(Perm, Perm)]) -> BTreeSet<(Perm, Perm)> {
    let id = ([0, 1, 2], [0, 1, 2]);
    let mut set: BTreeSet<_> = xs.iter().copied().chain([id]).collect();
    loop {
        let mut next = set.clone();
        for a in &set {
            for b in &set {
                next.insert(mul2(a, b));
            }
            for c in all {
                next.insert(mul2(&mul2(c, a), &inv2(c)));
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = match counterexample_report() {
        Ok(r) => r,
        Err(e) => return fail(format!("counterexample failed: {e}")),
    };
    let elapsed = start.elapsed();

    // Independent computation on explicit permutations.
    let all = s3_squared();
    let closures: Vec<BTreeSet<_>> = all.iter().skip(1).map(|x| normal_closure2(&all, &[*x])).collect();
    let minimal: Vec<&BTreeSet<_>> = closures
        .iter()
        .filter(|c| !closures.iter().any(|d| d.len() < c.len() && d.is_subset(c)))
        .collect();
    let prime = |n: usize| n > 1 && (2..n).all(|d| !n.is_multiple_of(d));
    let socle_members: Vec<_> = minimal.iter().flat_map(|c| c.iter().copied()).collect();
    let oracle_socle = normal_closure2(&all, &socle_members);
    let a3: Vec<Perm> = vec![[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    let diag: BTreeSet<(Perm, Perm)> = a3.iter().map(|a| (*a, *a)).collect();
    let diag_normal = diag
        .iter()
        .all(|d| all.iter().all(|c| diag.contains(&mul2(&mul2(c, d), &inv2(c)))));
    let diag_in_socle = diag.is_subset(&oracle_socle);
    let socle_abelian = oracle_socle
        .iter()
        .all(|a| oracle_socle.iter().all(|b| mul2(a, b) == mul2(b, a)));

    let oracle_ok = minimal.iter().all(|c| prime(c.len()))
        && oracle_socle.len() == 9
        && diag_in_socle
        && socle_abelian // so every order-3 subgroup of the socle is simple and normal in it
        && !diag_normal;
    let engine_ok = r["socle"]["order"] == json!(3)
        && r["product_socle"]["order"] == json!(9)
        && r["product_socle_is_square"] == json!(true)
        && r["diagonal"]["order"] == json!(3)
        && r["diagonal_simple_normal_in_socle"] == json!(true)
        && r["diagonal_normal_in_product"] == json!(diag_normal);
    let detail = format!(
        "soc(S3) order {}, soc(S3xS3) order {}, diagonal in sz(soc) {}, diagonal normal {}; oracle agrees {}; {:.1} ms (limit {} ms)",
        r["socle"]["order"],
        r["product_socle"]["order"],
        r["diagonal_simple_normal_in_socle"],
        r["diagonal_normal_in_product"],
        oracle_ok,
        elapsed.as_secs_f64() * 1e3,
        COUNTEREXAMPLE_BUDGET.as_millis(),
    );
    if oracle_ok && engine_ok && elapsed < COUNTEREXAMPLE_BUDGET {
        pass(detail)
    } else {
        fail(detail)
    }
}

// ---------------------------------------------------------------------------
// Criterion 2.

fn criterion_2() -> Outcome {
    let cfg = SuiteConfig {
        max_order: 24,
        // Every corpus pair whose product is constructible.
        pair_cap: Limits::default().max_order,
        ..SuiteConfig::default()
    };
    let start = Instant::now();
    let t = suites::run(Suite::Prop2, &cfg);
    let elapsed = start.elapsed();
    let covered = ogroup::corpus::corpus_up_to(24, &cfg.limits).len();
    let detail = format!(
        "{} over {covered} groups of order <= 24 and their pair products up to order {}; {:.1} s (limit {} s)",
        tally_summary(&t),
        cfg.pair_cap,
        elapsed.as_secs_f64(),
        PROP2_BUDGET.as_secs(),
    );
    let every_property = ["P2.1", "P2.2", "P2.3", "P2.4"].iter().all(|p| t.count(p) > 0);
    if clean(&t) && every_property && elapsed < PROP2_BUDGET {
        pass(detail)
    } else {
        fail(detail)
    }
}

// ---------------------------------------------------------------------------
// Criterion 3.

fn normal_hom_count_by_oracle(g: &OmegaGroup, h: &OmegaGroup) -> usize {
    let normals = oracle::normal_subgroups(g);
    oracle::all_homs(g, h, false, false)
        .iter()
        .filter(|m| oracle::is_normal_map(g, h, m, &normals))
        .count()
}

fn criterion_3() -> Outcome {
    let c6 = oracle::named(GroupKind::Cyclic, 6);
    let c2 = oracle::named(GroupKind::Cyclic, 2);
    let c3 = oracle::named(GroupKind::Cyclic, 3);
    let golden = (
        normal_hom_count_by_oracle(&c6, &c6),
        normal_hom_count_by_oracle(&c2, &c2),
        normal_hom_count_by_oracle(&c3, &c3),
    );
    let engine = enumerate_homs(&c6, &c6, &Limits::default()).map(|h| h.normal_count());
    let golden_ok = golden == (6, 2, 3) && engine == Ok(6);

    let t = suites::run(Suite::Theorem, &full_config());
    let needed = ["T1", "T2", "T3.a", "T3.count", "T3.roundtrip"];
    let every_property = needed.iter().all(|p| t.count(p) > 0);
    let detail = format!(
        "{}; |Hom_n(C6,C6)| oracle {} engine {:?}, |Hom_n(C2,C2)|*|Hom_n(C3,C3)| = {}*{}",
        tally_summary(&t),
        golden.0,
        engine,
        golden.1,
        golden.2,
    );
    if clean(&t) && every_property && golden_ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

// ---------------------------------------------------------------------------
// Criterion 4.

/// Injectivity of `(h_1, ..., h_k) -> h_1 ... h_k`, by listing every product.
fn theta_injective_by_oracle(g: &OmegaGroup, family: &[Subgroup]) -> bool {
    let mut products = BTreeSet::from([0usize]);
    let mut count = 1usize;
    for h in family {
        let next: BTreeSet<usize> = products
            .iter()
            .flat_map(|&p| h.members().iter().map(move |x| g.mul(p, x)))
            .collect();
        count *= h.order();
        products = next;
    }
    products.len() == count
}

/// (MI): each member meets the subgroup generated by the others trivially.
fn mi_by_oracle(g: &OmegaGroup, family: &[Subgroup]) -> bool {
    (0..family.len()).all(|i| {
        let others: Vec<usize> = family
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .flat_map(|(_, h)| h.members().to_vec())
            .collect();
        let span = oracle::closure(g, &others);
        family[i].members().iter().all(|x| x == 0 || span >> x & 1 == 0)
    })
}

fn criterion_4() -> Outcome {
    let t = suites::run(Suite::Equiv, &full_config());
    let limits = Limits::default();
    let mut evaluated = 0;
    let mut disagreements = Vec::new();
    for c in &corpus_up_to(limits.max_order, &limits) {
        let g = &c.group;
        let normals: Vec<Subgroup> = match normal_omega_subgroups(g, &limits) {
            Ok(n) => n.to_vec(),
            Err(e) => return fail(format!("{}: {e}", c.name)),
        };
        for (i, a) in normals.iter().enumerate() {
            for b in &normals[i..] {
                if a.order() * b.order() > limits.max_order {
                    continue;
                }
                let family = [a.clone(), b.clone()];
                let r = match sdr_report(g, &family, &limits) {
                    Ok(r) => r,
                    Err(e) => return fail(format!("{}: {e}", c.name)),
                };
                if !r.cc_holds {
                    continue;
                }
                evaluated += 1;
                let (mi, inj) = (mi_by_oracle(g, &family), theta_injective_by_oracle(g, &family));
                if mi != inj || r.mi_holds != mi || r.injective != inj {
                    disagreements.push(c.name);
                }
            }
        }
    }
    let detail = format!(
        "suite {}; independent (MI) vs injectivity on {evaluated} families, {} disagreements",
        tally_summary(&t),
        disagreements.len(),
    );
    if clean(&t) && t.count("MI") > 0 && t.count("semisimple") > 0 && disagreements.is_empty() && evaluated > 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

// ---------------------------------------------------------------------------
// Criterion 5.

/// Bijectivity of `θ` for the family, checked directly: members commute
/// elementwise and every element is exactly one product of coordinates.
fn bijective_by_oracle(g: &OmegaGroup, family: &[Subgroup]) -> bool {
    let commute = family.iter().enumerate().all(|(i, h)| {
        family[i + 1..].iter().all(|k| {
            h.members()
                .iter()
                .all(|x| k.members().iter().all(|y| g.mul(x, y) == g.mul(y, x)))
        })
    });
    let size: usize = family.iter().map(Subgroup::order).product();
    commute && size == g.order() && theta_injective_by_oracle(g, family)
}

fn criterion_5() -> Outcome {
    let t = suites::run(Suite::Prop1, &full_config());
    let limits = Limits::default();
    let (mut instances, mut failures) = (0usize, Vec::new());
    for CorpusGroup { name, group: g, .. } in corpus_up_to(limits.max_order, &limits) {
        let (Ok(sz), Ok(normals)) = (
            simple_normal_subgroups(&g, &limits),
            normal_omega_subgroups(&g, &limits),
        ) else {
            failures.push(format!("{name}: lattice"));
            continue;
        };
        for f in normals {
            for h in suites::orderings(sz) {
                let union: Vec<usize> = f
                    .members()
                    .iter()
                    .chain(h.iter().flat_map(|x| x.members().iter()))
                    .collect();
                if generated_subgroup(&g, &union).order() != g.order() {
                    continue;
                }
                instances += 1;
                match greedy_refine(&g, f, &h, &limits) {
                    Ok(j) => {
                        let mut family = vec![f.clone()];
                        family.extend(j.iter().map(|&i| h[i].clone()));
                        if !bijective_by_oracle(&g, &family) {
                            failures.push(format!("{name}: {j:?}"));
                        }
                    }
                    Err(e) => failures.push(format!("{name}: {e}")),
                }
            }
        }
    }
    let suite_instances = t.count("prop1");
    let detail = format!(
        "suite {}; {instances} instances re-checked by the test oracle, {} failures (minimum {PROP1_MIN_INSTANCES} instances)",
        tally_summary(&t),
        failures.len(),
    );
    if clean(&t) && failures.is_empty() && instances.min(suite_instances) >= PROP1_MIN_INSTANCES {
        pass(detail)
    } else {
        fail(detail)
    }
}

// ---------------------------------------------------------------------------
// Criterion 6.

fn criterion_6() -> Outcome {
    let limits = Limits::default();
    let all = corpus_up_to(limits.max_order, &limits);
    let small: Vec<&CorpusGroup> = all.iter().filter(|c| c.group.order() <= 12).collect();
    let mut iso_pairs = 0;
    let mut iso_mismatch = Vec::new();
    for (i, a) in small.iter().enumerate() {
        for b in &small[i..] {
            iso_pairs += 1;
            let engine = are_isomorphic(&a.group, &b.group);
            let brute = oracle::isomorphic(&a.group, &b.group);
            let witness_ok = engine
                .as_ref()
                .is_none_or(|w| oracle::all_homs(&a.group, &b.group, true, false).contains(&w.map().to_vec()));
            if engine.is_some() != brute || !witness_ok {
                iso_mismatch.push(format!("{} / {}", a.name, b.name));
            }
        }
    }
    let mut hom_pairs = 0;
    let mut hom_mismatch = Vec::new();
    for a in all.iter().filter(|c| c.group.order() <= 8) {
        let normals = oracle::normal_subgroups(&a.group);
        for b in all
            .iter()
            .filter(|c| c.group.same_labels(&a.group) && c.group.order() <= 24)
        {
            hom_pairs += 1;
            let engine = match enumerate_homs(&a.group, &b.group, &limits) {
                Ok(h) => h,
                Err(e) => {
                    hom_mismatch.push(format!("{} -> {}: {e}", a.name, b.name));
                    continue;
                }
            };
            let got: BTreeSet<(Vec<usize>, bool)> = engine
                .morphisms
                .iter()
                .zip(&engine.normal_flags)
                .map(|(f, &n)| (f.map().to_vec(), n))
                .collect();
            let want: BTreeSet<(Vec<usize>, bool)> = oracle::all_homs(&a.group, &b.group, false, false)
                .into_iter()
                .map(|m| {
                    let n = oracle::is_normal_map(&a.group, &b.group, &m, &normals);
                    (m, n)
                })
                .collect();
            if got != want || engine.len() != want.len() {
                hom_mismatch.push(format!("{} -> {}", a.name, b.name));
            }
        }
    }
    let detail = format!(
        "isomorphism: {iso_pairs} pairs, {} mismatches; morphisms: {hom_pairs} pairs, {} mismatches{}",
        iso_mismatch.len(),
        hom_mismatch.len(),
        iso_mismatch
            .iter()
            .chain(&hom_mismatch)
            .next()
            .map(|m| format!(" (first: {m})"))
            .unwrap_or_default(),
    );
    if iso_mismatch.is_empty() && hom_mismatch.is_empty() {
        pass(detail)
    } else {
        fail(detail)
    }
}

// ---------------------------------------------------------------------------
// Criterion 7.

fn criterion_7() -> Outcome {
    let cfg = full_config();
    let a = suites::run(Suite::SieNs, &cfg);
    let b = suites::run(Suite::Lemma, &cfg);
    let every_property = ["SIE", "NS"].iter().all(|p| a.count(p) > 0)
        && [
            "lemma.normal",
            "lemma.order-independence",
            "lemma.sz",
            "closure.idempotent",
            "closure.monotone",
        ]
        .iter()
        .all(|p| b.count(p) > 0);
    let detail = format!("sie-ns {}; lemma {}", tally_summary(&a), tally_summary(&b));
    if clean(&a) && clean(&b) && every_property {
        pass(detail)
    } else {
        fail(detail)
    }
}

// ---------------------------------------------------------------------------
// Criterion 8.

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ogroup");
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut differing = Vec::new();
    let mut files = 0;
    for name in ["a4", "d8", "q8-inner", "s3xs3", "c2xc2xc2-rot", "c6xc2"] {
        let f = dir.join(format!("{name}.og"));
        let runs: Vec<_> = (0..3)
            .map(|_| {
                Command::new(bin)
                    .env_remove("OGROUP_CACHE")
                    .args(["analyze", f.to_str().unwrap(), "--json", "-"])
                    .output()
                    .expect("binary runs")
            })
            .collect();
        files += 1;
        if runs
            .iter()
            .any(|r| !r.status.success() || r.stdout != runs[0].stdout || r.stdout.is_empty())
        {
            differing.push(name);
        }
    }
    let verify = Command::new(bin)
        .env_remove("OGROUP_CACHE")
        .args(["verify", "--suite", "all", "--max-order", "12"])
        .output()
        .expect("binary runs");
    let detail = format!(
        "{files} reports x 3 runs, {} differing; verify --suite all --max-order 12 exit {:?}",
        differing.len(),
        verify.status.code(),
    );
    if differing.is_empty() && verify.status.code() == Some(0) {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 8] = [
        ("counterexample", criterion_1),
        ("isotypical decomposition suite", criterion_2),
        ("summand and Φ theorem suite", criterion_3),
        ("equivalent definitions", criterion_4),
        ("greedy refinement", criterion_5),
        ("oracle equivalence", criterion_6),
        ("SIE, NS and lemma suites", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let verdict = if o.ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {} ({name}): {verdict} [{:.1} s] {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        );
        failed += usize::from(!o.ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}

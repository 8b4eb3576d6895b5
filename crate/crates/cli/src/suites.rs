//! Invariant suites run by `verify` over the bundled corpus.
//!
//! Every suite returns a [`Tally`]: per-property check counts, violation
//! messages, and instances skipped because a size cap was hit. Work is spread
//! over a thread pool; results are merged in corpus order so the output does
//! not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use ogroup_core::decomposition::simple_normal_certificates;
use ogroup_core::homs::NormalityOracle;
use ogroup_core::{
    component_of_morphism, decompose, direct_product, embed, enumerate_homs, enumerate_omega_subgroups,
    find_supplementary, generated_subgroup, greedy_refine, is_normal, is_semisimple, isotypical_component, join_normal,
    normal_omega_subgroups, quotient, sdr_report, sdr_report_in, simple_normal_subgroups, socle, support,
    ComponentVector, ElementSet, Error, IsoCertificate, Limits, OmegaGroup, OmegaMorphism, PhiContext, Subgroup,
};
use rayon::prelude::*;

use crate::corpus::{corpus_up_to, CorpusGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Prop2,
    Theorem,
    SieNs,
    Lemma,
    Prop1,
    Equiv,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Prop2,
        Suite::Theorem,
        Suite::SieNs,
        Suite::Lemma,
        Suite::Prop1,
        Suite::Equiv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop2 => "prop2",
            Suite::Theorem => "theorem",
            Suite::SieNs => "sie-ns",
            Suite::Lemma => "lemma",
            Suite::Prop1 => "prop1",
            Suite::Equiv => "equiv",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Scope of a suite run.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    /// Corpus groups above this order are left out.
    pub max_order: usize,
    /// Largest product of a corpus pair that is built.
    pub pair_cap: usize,
    /// Largest source group for morphism enumeration.
    pub hom_source_cap: usize,
    /// Hom sets larger than this are sampled for the quadratic checks.
    pub composition_sample: usize,
    pub limits: Limits,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_order: 24,
            pair_cap: Limits::default().max_order,
            hom_source_cap: 16,
            composition_sample: 48,
            limits: Limits::default(),
        }
    }
}

impl SuiteConfig {
    pub fn with_max_order(max_order: usize) -> Self {
        SuiteConfig {
            max_order,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub checks: BTreeMap<String, usize>,
    pub violations: Vec<String>,
    pub capped: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, property: &str, ok: bool, context: impl FnOnce() -> String) {
        *self.checks.entry(property.to_string()).or_default() += 1;
        if !ok {
            self.violations.push(format!("{property}: {}", context()));
        }
    }

    /// Records a failed computation: cap errors are skips, anything else is
    /// a violation.
    pub fn error(&mut self, property: &str, context: &str, e: Error) {
        match e {
            Error::CapExceeded { .. } => self.capped.push(format!("{property}: {context}: {e}")),
            other => {
                *self.checks.entry(property.to_string()).or_default() += 1;
                self.violations.push(format!("{property}: {context}: {other}"));
            }
        }
    }

    pub fn merge(&mut self, other: Tally) {
        for (k, v) in other.checks {
            *self.checks.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
        self.capped.extend(other.capped);
    }

    pub fn count(&self, property: &str) -> usize {
        self.checks.get(property).copied().unwrap_or(0)
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs `f` on every item in parallel and merges the tallies in item order.
fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync + Send) -> Tally {
    let parts: Vec<Tally> = items
        .par_iter()
        .map(|item| {
            let mut t = Tally::default();
            f(item, &mut t);
            t
        })
        .collect();
    let mut out = Tally::default();
    for p in parts {
        out.merge(p);
    }
    out
}

/// Runs one instance, recording a failed computation against `property`.
fn attempt(t: &mut Tally, property: &str, context: &str, f: impl FnOnce(&mut Tally) -> Result<(), Error>) {
    if let Err(e) = f(t) {
        t.error(property, context, e);
    }
}

/// Ordered-or-not pairs of corpus groups with equal operator labels whose
/// product stays within the pair cap.
fn pairs(groups: &[CorpusGroup], cfg: &SuiteConfig, ordered: bool) -> Vec<(CorpusGroup, CorpusGroup)> {
    let mut out = Vec::new();
    for (i, a) in groups.iter().enumerate() {
        for (j, b) in groups.iter().enumerate() {
            if (!ordered && j < i) || !a.group.same_labels(&b.group) {
                continue;
            }
            if a.group.order() * b.group.order() <= cfg.pair_cap {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn components_of(group: &OmegaGroup, types: &[IsoCertificate], limits: &Limits) -> Result<Vec<Subgroup>, Error> {
    types.iter().map(|s| isotypical_component(group, s, limits)).collect()
}

fn image(f: &OmegaMorphism, h: &Subgroup) -> ElementSet {
    f.image_of(h.members())
}

fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0..1usize << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Evenly spaced sample of at most `k` items, always including the first.
fn sample<T: Clone>(items: &[T], k: usize) -> Vec<T> {
    if items.len() <= k {
        return items.to_vec();
    }
    (0..k).map(|i| items[i * items.len() / k].clone()).collect()
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Tally {
    let groups = corpus_up_to(cfg.max_order, &cfg.limits);
    match suite {
        Suite::Prop2 => prop2(&groups, cfg),
        Suite::Theorem => theorem(&groups, cfg),
        Suite::SieNs => sie_ns(&groups, cfg),
        Suite::Lemma => lemma(&groups, cfg),
        Suite::Prop1 => prop1(&groups, cfg),
        Suite::Equiv => equiv(&groups, cfg),
    }
}

// ---------------------------------------------------------------------------
// Isotypical decomposition and its compatibility with morphisms and products.

pub fn prop2(groups: &[CorpusGroup], cfg: &SuiteConfig) -> Tally {
    let limits = &cfg.limits;
    // Simple types seen anywhere in the corpus, used to build families that
    // include types outside a group's support.
    let mut pool: BTreeSet<IsoCertificate> = BTreeSet::new();
    for c in groups {
        if let Ok(s) = support(&c.group, limits) {
            pool.extend(s);
        }
    }
    let pool: Vec<IsoCertificate> = pool.into_iter().collect();

    let mut t = par_tally(groups, |c, t| {
        let g = &c.group;
        attempt(t, "P2.1", c.name, |t| {
            let sup: Vec<IsoCertificate> = support(g, limits)?.into_iter().collect();
            let outside: Vec<IsoCertificate> = pool.iter().filter(|s| !sup.contains(s)).take(2).cloned().collect();
            for mut types in subsets(&sup) {
                for extra in [None, outside.first(), outside.get(1)] {
                    if let Some(s) = extra {
                        types.push(s.clone());
                    }
                    let family = components_of(g, &types, limits)?;
                    let r = sdr_report(g, &family, limits)?;
                    t.check("P2.1", r.cc_holds && r.injective, || {
                        format!("{}: family of {} types is not independent", c.name, types.len())
                    });
                    if extra.is_some() {
                        types.pop();
                    }
                }
            }
            Ok(())
        });
        attempt(t, "P2.2", c.name, |t| {
            let d = decompose(g, limits)?;
            let family: Vec<Subgroup> = d.components.values().cloned().collect();
            let r = sdr_report_in(g, &d.socle, &family, limits)?;
            t.check("P2.2", r.bijective, || {
                format!("{}: socle is not the sum of its components", c.name)
            });
            Ok(())
        });
    });

    let ordered: Vec<_> = pairs(groups, cfg, true)
        .into_iter()
        .filter(|(a, _)| a.group.order() <= cfg.hom_source_cap.min(12))
        .collect();
    t.merge(par_tally(&ordered, |(a, b), t| {
        let ctx = format!("{} -> {}", a.name, b.name);
        attempt(t, "P2.3", &ctx, |t| {
            let homs = enumerate_homs(&a.group, &b.group, limits)?;
            let (soc_a, soc_b) = (socle(&a.group, limits)?, socle(&b.group, limits)?);
            let types: Vec<IsoCertificate> = support(&a.group, limits)?
                .union(&support(&b.group, limits)?)
                .cloned()
                .collect();
            let comps_a = components_of(&a.group, &types, limits)?;
            let comps_b = components_of(&b.group, &types, limits)?;
            for f in homs.normal() {
                t.check("P2.3", image(f, &soc_a).is_subset(soc_b.members()), || {
                    format!("{ctx}: {:?} moves the socle outside the socle", f.map())
                });
                for (ga, gb) in comps_a.iter().zip(&comps_b) {
                    t.check("P2.3", image(f, ga).is_subset(gb.members()), || {
                        format!("{ctx}: {:?} moves a component outside its type", f.map())
                    });
                }
            }
            Ok(())
        });
    }));

    let unordered = pairs(groups, cfg, false);
    t.merge(par_tally(&unordered, |(a, b), t| {
        let ctx = format!("{} x {}", a.name, b.name);
        attempt(t, "P2.4", &ctx, |t| {
            let w = direct_product(&[a.group.clone(), b.group.clone()], limits)?;
            let p = &w.product;
            let soc = w.product_of(&[socle(&a.group, limits)?, socle(&b.group, limits)?]);
            t.check("P2.4", socle(p, limits)? == soc, || format!("{ctx}: socle of product"));
            let (sa, sb) = (support(&a.group, limits)?, support(&b.group, limits)?);
            let sp = support(p, limits)?;
            let union: BTreeSet<IsoCertificate> = sa.union(&sb).cloned().collect();
            t.check("P2.4", sp == union, || format!("{ctx}: support of product"));
            for s in &union {
                let expected = w.product_of(&[
                    isotypical_component(&a.group, s, limits)?,
                    isotypical_component(&b.group, s, limits)?,
                ]);
                t.check("P2.4", isotypical_component(p, s, limits)? == expected, || {
                    format!("{ctx}: component {s:?} of product")
                });
            }
            Ok(())
        });
    }));
    t
}

// ---------------------------------------------------------------------------
// Socles of summands, the socle as carrier of the decomposition, and Φ.

/// The socle of the Ω-subgroup `h` as a subgroup of the parent.
fn socle_within(group: &OmegaGroup, h: &Subgroup, limits: &Limits) -> Result<Subgroup, Error> {
    let e = embed(group, h);
    Ok(e.lift_subgroup(&socle(&e.group, limits)?))
}

fn component_within(group: &OmegaGroup, h: &Subgroup, s: &IsoCertificate, limits: &Limits) -> Result<Subgroup, Error> {
    let e = embed(group, h);
    Ok(e.lift_subgroup(&isotypical_component(&e.group, s, limits)?))
}

fn support_within(group: &OmegaGroup, h: &Subgroup, limits: &Limits) -> Result<BTreeSet<IsoCertificate>, Error> {
    support(&embed(group, h).group, limits)
}

/// Checks the summand statements for a family with bijective `θ`.
fn check_summands(
    t: &mut Tally,
    ctx: &str,
    g: &Arc<OmegaGroup>,
    family: &[Subgroup],
    limits: &Limits,
) -> Result<(), Error> {
    let soc = socle(g, limits)?;
    let socles = family
        .iter()
        .map(|h| socle_within(g, h, limits))
        .collect::<Result<Vec<_>, _>>()?;
    t.check("T1", sdr_report_in(g, &soc, &socles, limits)?.bijective, || {
        format!("{ctx}: socles of the summands do not decompose the socle")
    });
    let sup = support(g, limits)?;
    let mut union = BTreeSet::new();
    for h in family {
        union.extend(support_within(g, h, limits)?);
    }
    t.check("T1", sup == union, || {
        format!("{ctx}: support is not the union of the summands' supports")
    });
    for s in &sup {
        let parts = family
            .iter()
            .map(|h| component_within(g, h, s, limits))
            .collect::<Result<Vec<_>, _>>()?;
        let comp = isotypical_component(g, s, limits)?;
        t.check("T1", sdr_report_in(g, &comp, &parts, limits)?.bijective, || {
            format!("{ctx}: components of the summands do not decompose {s:?}")
        });
    }
    Ok(())
}

fn phi_counts(
    t: &mut Tally,
    ctx: &str,
    a: &Arc<OmegaGroup>,
    b: &Arc<OmegaGroup>,
    limits: &Limits,
) -> Result<(), Error> {
    let homs = enumerate_homs(a, b, limits)?;
    let ctxt = PhiContext::new(a, b, limits)?;
    let normal: Vec<&OmegaMorphism> = homs.normal().collect();

    // Φ(f) then Φ⁻¹ gives f back; components of normal morphisms are normal.
    for f in &normal {
        let v = ctxt.phi(f)?;
        for (s, fs) in &v {
            let n = NormalityOracle::new(fs.source(), fs.target(), limits)?.is_normal(fs.map(), fs.target().order())?;
            t.check("T3.a", n, || {
                format!("{ctx}: component {s:?} of {:?} is not normal", f.map())
            });
        }
        t.check("T3.roundtrip", ctxt.phi_inverse(&v)?.map() == f.map(), || {
            format!("{ctx}: phi_inverse(phi(f)) != f for {:?}", f.map())
        });
    }

    // Count the other side: every vector of normal component morphisms.
    let per_type: Vec<(IsoCertificate, Vec<OmegaMorphism>)> = ctxt
        .common
        .iter()
        .map(|s| {
            let hs = enumerate_homs(
                ctxt.source_component(s).expect("common type"),
                ctxt.target_component(s).expect("common type"),
                limits,
            )?;
            Ok((s.clone(), hs.normal().cloned().collect()))
        })
        .collect::<Result<_, Error>>()?;
    let product: usize = per_type.iter().map(|(_, v)| v.len()).product();
    t.check("T3.count", product == normal.len(), || {
        format!(
            "{ctx}: |Hom_n| = {} but the component product is {product}",
            normal.len()
        )
    });

    let normal_maps: HashSet<&[usize]> = normal.iter().map(|f| f.map()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut index = vec![0usize; per_type.len()];
    'vectors: loop {
        let v: ComponentVector = per_type
            .iter()
            .zip(&index)
            .map(|((s, hs), &i)| (s.clone(), hs[i].clone()))
            .collect();
        let f = ctxt.phi_inverse(&v)?;
        t.check("T3.roundtrip", ctxt.phi(&f)? == v, || {
            format!("{ctx}: phi(phi_inverse(v)) != v")
        });
        t.check(
            "T3.count",
            normal_maps.contains(f.map()) && seen.insert(f.map().to_vec()),
            || format!("{ctx}: phi_inverse is not a bijection onto Hom_n at {:?}", f.map()),
        );
        for k in (0..index.len()).rev() {
            index[k] += 1;
            if index[k] < per_type[k].1.len() {
                continue 'vectors;
            }
            index[k] = 0;
        }
        break;
    }
    Ok(())
}

/// Normal morphism facts that hold for any endpoints: closure under
/// composition, direct-summand images, and functoriality of components.
fn morphism_facts(t: &mut Tally, ctx: &str, g: &Arc<OmegaGroup>, cfg: &SuiteConfig) -> Result<(), Error> {
    let limits = &cfg.limits;
    let homs = enumerate_homs(g, g, limits)?;
    let summands: Vec<Subgroup> = normal_omega_subgroups(g, limits)?
        .iter()
        .filter(|h| matches!(find_supplementary(g, h, limits), Ok(Some(_))))
        .cloned()
        .collect();
    for (f, &flag) in homs.morphisms.iter().zip(&homs.normal_flags) {
        if summands.contains(&f.image()) {
            t.check("morphisms.summand-image", flag, || {
                format!("{ctx}: {:?} has a summand image", f.map())
            });
        }
    }
    let oracle = NormalityOracle::new(g, g, limits)?;
    let normal: Vec<OmegaMorphism> = sample(&homs.normal().cloned().collect::<Vec<_>>(), cfg.composition_sample);
    let sup: Vec<IsoCertificate> = support(g, limits)?.into_iter().collect();
    for f in &normal {
        for h in &normal {
            let hf = f.then(h)?;
            t.check("morphisms.composition", oracle.is_normal(hf.map(), g.order())?, || {
                format!("{ctx}: composite of normal {:?} and {:?}", f.map(), h.map())
            });
        }
    }
    for f in normal.iter().take(8) {
        for h in normal.iter().take(8) {
            let hf = f.then(h)?;
            for s in &sup {
                let lhs = component_of_morphism(&hf, s, limits)?;
                let rhs = component_of_morphism(f, s, limits)?.then(&component_of_morphism(h, s, limits)?)?;
                t.check("morphisms.functorial", lhs.map() == rhs.map(), || {
                    format!("{ctx}: (h f)_S != h_S f_S for {:?}, {:?}", f.map(), h.map())
                });
            }
        }
    }
    Ok(())
}

pub fn theorem(groups: &[CorpusGroup], cfg: &SuiteConfig) -> Tally {
    let limits = &cfg.limits;
    let mut t = par_tally(groups, |c, t| {
        let g = &c.group;
        attempt(t, "T2", c.name, |t| {
            let soc = socle(g, limits)?;
            let e = embed(g, &soc);
            let sup = support(g, limits)?;
            t.check("T2", support(&e.group, limits)? == sup, || {
                format!("{}: Sup(G) != Sup(soc G)", c.name)
            });
            for s in &sup {
                let lifted = e.lift_subgroup(&isotypical_component(&e.group, s, limits)?);
                t.check("T2", lifted == isotypical_component(g, s, limits)?, || {
                    format!("{}: G_S != (soc G)_S for {s:?}", c.name)
                });
            }
            Ok(())
        });
        attempt(t, "T1", c.name, |t| {
            check_summands(
                t,
                &format!("{} = [G]", c.name),
                g,
                &[Subgroup::whole(g.order())],
                limits,
            )?;
            let normals = normal_omega_subgroups(g, limits)?;
            for (i, h) in normals.iter().enumerate() {
                for k in &normals[i + 1..] {
                    if h.is_trivial() || k.is_trivial() || h.order() * k.order() != g.order() {
                        continue;
                    }
                    let family = [h.clone(), k.clone()];
                    if sdr_report(g, &family, limits)?.bijective {
                        check_summands(t, &format!("{} = H x K", c.name), g, &family, limits)?;
                    }
                }
            }
            Ok(())
        });
        if g.order() <= cfg.hom_source_cap.min(12) {
            attempt(t, "morphisms", c.name, |t| morphism_facts(t, c.name, g, cfg));
        }
    });

    t.merge(par_tally(&pairs(groups, cfg, false), |(a, b), t| {
        let ctx = format!("{} x {}", a.name, b.name);
        attempt(t, "T1", &ctx, |t| {
            let w = direct_product(&[a.group.clone(), b.group.clone()], limits)?;
            let family = [w.injections[0].image(), w.injections[1].image()];
            check_summands(t, &ctx, &w.product, &family, limits)
        });
    }));

    let semisimple: Vec<CorpusGroup> = groups
        .iter()
        .filter(|c| matches!(socle(&c.group, limits), Ok(s) if s.order() == c.group.order()))
        .cloned()
        .collect();
    let mut phi_pairs = Vec::new();
    for a in semisimple.iter().filter(|c| c.group.order() <= cfg.hom_source_cap) {
        for b in &semisimple {
            if a.group.same_labels(&b.group) {
                phi_pairs.push((a.clone(), b.clone()));
            }
        }
    }
    t.merge(par_tally(&phi_pairs, |(a, b), t| {
        let ctx = format!("{} -> {}", a.name, b.name);
        attempt(t, "T3", &ctx, |t| phi_counts(t, &ctx, &a.group, &b.group, limits));
    }));
    t
}

// ---------------------------------------------------------------------------
// (SIE) and (NS).

pub fn sie_ns(groups: &[CorpusGroup], cfg: &SuiteConfig) -> Tally {
    let limits = &cfg.limits;
    par_tally(groups, |c, t| {
        let g = &c.group;
        attempt(t, "SIE", c.name, |t| {
            if g.order() > limits.lattice {
                return Ok(());
            }
            let all = enumerate_omega_subgroups(g, limits)?;
            for (i, h1) in all.iter().enumerate() {
                for h2 in &all[i..] {
                    // θ from a larger domain cannot be injective.
                    if h1.order() * h2.order() > g.order() {
                        continue;
                    }
                    let hs = [h1.clone(), h2.clone()];
                    let rh = sdr_report(g, &hs, limits)?;
                    if !rh.injective {
                        continue;
                    }
                    for k1 in all.iter().filter(|k| k.is_subgroup_of(h1)) {
                        for k2 in all.iter().filter(|k| k.is_subgroup_of(h2)) {
                            // |K1 K2| <= |K1||K2|, so smaller pairs cannot be surjective.
                            if k1.order() * k2.order() < g.order() {
                                continue;
                            }
                            let rk = sdr_report(g, &[k1.clone(), k2.clone()], limits)?;
                            if rk.surjective {
                                t.check("SIE", k1 == h1 && k2 == h2, || {
                                    format!("{}: surjective K inside injective H with K != H", c.name)
                                });
                            }
                        }
                    }
                }
            }
            Ok(())
        });
        attempt(t, "NS", c.name, |t| {
            for f in normal_omega_subgroups(g, limits)? {
                if find_supplementary(g, f, limits)?.is_none() {
                    continue;
                }
                let e = embed(g, f);
                for k in normal_omega_subgroups(&e.group, limits)? {
                    let lifted = e.lift_subgroup(k);
                    t.check("NS", is_normal(g, &lifted), || {
                        format!("{}: {:?} normal in a summand but not in G", c.name, lifted.members())
                    });
                }
            }
            Ok(())
        });
    })
}

// ---------------------------------------------------------------------------
// Joins of normal Ω-subgroups and closure laws.

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn lemma(groups: &[CorpusGroup], cfg: &SuiteConfig) -> Tally {
    let limits = &cfg.limits;
    par_tally(groups, |c, t| {
        let g = &c.group;
        attempt(t, "lemma", c.name, |t| {
            let normals = normal_omega_subgroups(g, limits)?;
            let mut families: Vec<Vec<Subgroup>> = vec![vec![]];
            for (i, a) in normals.iter().enumerate() {
                families.push(vec![a.clone()]);
                for (j, b) in normals.iter().enumerate().skip(i + 1) {
                    families.push(vec![a.clone(), b.clone()]);
                    for cc in normals.iter().skip(j + 1) {
                        families.push(vec![a.clone(), b.clone(), cc.clone()]);
                    }
                }
            }
            for family in sample(&families, 400) {
                let union: Vec<usize> = family.iter().flat_map(|h| h.members().iter()).collect();
                let closure = generated_subgroup(g, &union);
                let joined = join_normal(g, &family)?;
                t.check("lemma.normal", is_normal(g, &joined), || {
                    format!("{}: join of normal family is not normal", c.name)
                });
                for perm in permutations(family.len()) {
                    let product = perm.iter().fold(ElementSet::from_indices(g.order(), [0]), |acc, &i| {
                        ogroup_core::subgroups::setwise_product(g, &acc, family[i].members())
                    });
                    t.check("lemma.order-independence", &product == closure.members(), || {
                        format!("{}: product in order {perm:?} differs from the closure", c.name)
                    });
                }
            }
            let sz = simple_normal_subgroups(g, limits)?;
            for h in sz {
                t.check("lemma.sz", normals.contains(h) && !h.is_trivial(), || {
                    format!(
                        "{}: {:?} in sz but not a nontrivial normal subgroup",
                        c.name,
                        h.members()
                    )
                });
            }
            Ok(())
        });
        attempt(t, "closure", c.name, |t| {
            if g.order() <= limits.lattice {
                for h in enumerate_omega_subgroups(g, limits)? {
                    t.check(
                        "closure.idempotent",
                        generated_subgroup(g, &h.members().to_vec()) == h,
                        || format!("{}: closure of {:?}", c.name, h.members()),
                    );
                }
            }
            let n = g.order();
            for y1 in 0..n {
                for y2 in y1..n {
                    let big = generated_subgroup(g, &[y1, y2]);
                    for small in [vec![], vec![y1], vec![y2]] {
                        let h = generated_subgroup(g, &small);
                        t.check("closure.monotone", h.is_subgroup_of(&big), || {
                            format!("{}: <{small:?}> not inside <{y1}, {y2}>", c.name)
                        });
                    }
                }
            }
            Ok(())
        });
    })
}

// ---------------------------------------------------------------------------
// Greedy refinement and closure of semisimplicity under quotients.

/// Orderings of `sz(G)` fed to the greedy refinement, deduplicated.
pub fn orderings(sz: &[Subgroup]) -> Vec<Vec<Subgroup>> {
    let mut out: Vec<Vec<Subgroup>> = Vec::new();
    let forward = sz.to_vec();
    let mut reversed = forward.clone();
    reversed.reverse();
    let mut rotated = forward.clone();
    if !rotated.is_empty() {
        rotated.rotate_left(1);
    }
    let mut doubled = forward.clone();
    doubled.extend(forward.iter().take(2).cloned());
    let evens: Vec<Subgroup> = forward.iter().step_by(2).cloned().collect();
    let interleaved: Vec<Subgroup> = forward
        .iter()
        .skip(1)
        .step_by(2)
        .chain(forward.iter().step_by(2))
        .cloned()
        .collect();
    for o in [forward, reversed, rotated, doubled, evens, interleaved] {
        if !out.contains(&o) {
            out.push(o);
        }
    }
    out
}

pub fn prop1(groups: &[CorpusGroup], cfg: &SuiteConfig) -> Tally {
    let limits = &cfg.limits;
    par_tally(groups, |c, t| {
        let g = &c.group;
        attempt(t, "prop1", c.name, |t| {
            let sz = simple_normal_subgroups(g, limits)?;
            for f in normal_omega_subgroups(g, limits)? {
                for h in orderings(sz) {
                    let union: Vec<usize> = f
                        .members()
                        .iter()
                        .chain(h.iter().flat_map(|x| x.members().iter()))
                        .collect();
                    if generated_subgroup(g, &union).order() != g.order() {
                        continue;
                    }
                    let j = greedy_refine(g, f, &h, limits)?;
                    let mut family = vec![f.clone()];
                    family.extend(j.iter().map(|&i| h[i].clone()));
                    let r = sdr_report(g, &family, limits)?;
                    t.check(
                        "prop1",
                        r.cc_holds && r.bijective && j.windows(2).all(|w| w[0] < w[1]),
                        || format!("{}: greedy output {j:?} is not a restricted direct sum", c.name),
                    );
                }
            }
            Ok(())
        });
        attempt(t, "quotient-closure", c.name, |t| {
            if socle(g, limits)?.order() != g.order() {
                return Ok(());
            }
            for n in normal_omega_subgroups(g, limits)? {
                let (q, _) = quotient(g, n)?;
                t.check("quotient-closure", is_semisimple(&q, limits)?.holds(), || {
                    format!("{}: quotient by {:?} is not semisimple", c.name, n.members())
                });
                let sub = embed(g, n).group;
                t.check("quotient-closure", is_semisimple(&sub, limits)?.holds(), || {
                    format!("{}: normal subgroup {:?} is not semisimple", c.name, n.members())
                });
            }
            Ok(())
        });
    })
}

// ---------------------------------------------------------------------------
// Agreement of equivalent definitions.

/// The diagonal `{(a, a) : a ∈ A}` of `G × G`.
pub fn diagonal(w: &ogroup_core::ProductWitness, a: &Subgroup) -> ElementSet {
    ElementSet::from_indices(w.product.order(), a.members().iter().map(|x| w.encode(&[x, x])))
}

pub fn equiv(groups: &[CorpusGroup], cfg: &SuiteConfig) -> Tally {
    let limits = &cfg.limits;
    par_tally(groups, |c, t| {
        let g = &c.group;
        attempt(t, "MI", c.name, |t| {
            let normals = normal_omega_subgroups(g, limits)?;
            let lattice = if g.order() <= limits.lattice {
                enumerate_omega_subgroups(g, limits)?
            } else {
                normals.to_vec()
            };
            let mut families: Vec<Vec<Subgroup>> = Vec::new();
            for (i, a) in lattice.iter().enumerate() {
                for b in &lattice[i..] {
                    families.push(vec![a.clone(), b.clone()]);
                }
            }
            for (i, a) in normals.iter().enumerate() {
                for (j, b) in normals.iter().enumerate().skip(i + 1) {
                    for d in normals.iter().skip(j + 1) {
                        families.push(vec![a.clone(), b.clone(), d.clone()]);
                    }
                }
            }
            // Only families whose θ domain fits under the order cap are evaluated.
            families.retain(|f| f.iter().map(Subgroup::order).product::<usize>() <= limits.max_order);
            for family in sample(&families, 2000) {
                let r = sdr_report(g, &family, limits)?;
                if r.cc_holds {
                    t.check("MI", r.mi_holds == r.injective, || {
                        format!("{}: (MI) and injectivity disagree", c.name)
                    });
                }
            }
            Ok(())
        });
        attempt(t, "semisimple", c.name, |t| {
            let s = is_semisimple(g, limits)?;
            t.check(
                "semisimple",
                s.simple_sum == s.equals_socle && s.equals_socle == s.all_summands,
                || format!("{}: criteria {s:?}", c.name),
            );
            Ok(())
        });
        attempt(t, "diagonal", c.name, |t| {
            if g.order() > 12 {
                return Ok(());
            }
            let big = Limits {
                max_order: 144,
                ..*limits
            };
            let w = direct_product(&[g.clone(), g.clone()], &big)?;
            let center = g.center();
            let lattice = if g.order() <= limits.lattice {
                enumerate_omega_subgroups(g, limits)?
            } else {
                normal_omega_subgroups(g, limits)?.to_vec()
            };
            for a in &lattice {
                let d = Subgroup::new(&w.product, diagonal(&w, a))?;
                let central = a.members().is_subset(&center);
                t.check("diagonal", is_normal(&w.product, &d) == central, || {
                    format!("{}: diagonal of {:?}", c.name, a.members())
                });
            }
            Ok(())
        });
        attempt(t, "certificates", c.name, |t| {
            // The digest of each sz member matches a rebuilt copy's digest.
            let sz = simple_normal_subgroups(g, limits)?;
            let certs = simple_normal_certificates(g, limits)?;
            for (h, cert) in sz.iter().zip(certs) {
                let rebuilt = cert.to_group()?;
                t.check(
                    "certificates",
                    ogroup_core::certificate(&rebuilt, limits)? == *cert,
                    || format!("{}: certificate of {:?} is not idempotent", c.name, h.members()),
                );
            }
            Ok(())
        });
    })
}

/// Runs every suite in order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<(Suite, Tally)> {
    Suite::ALL.into_iter().map(|s| (s, run(s, cfg))).collect()
}

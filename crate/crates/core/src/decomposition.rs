//! Socle, isotypical components, support, and restricted direct sum
//! predicates for families of Ω-subgroups.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Limits, OmegaGroup, Operator};
use crate::iso::{certificate, IsoCertificate};
use crate::morphism::OmegaMorphism;
use crate::product::{direct_product, ProductWitness};
use crate::set::ElementSet;
use crate::subgroups::{
    embed, generated_subgroup, is_normal, is_omega_stable, is_simple, join_normal, normal_omega_subgroups,
    setwise_product, simple_normal_subgroups, Embedding, Subgroup,
};

/// Certificates of the members of `sz(G)`, parallel to
/// [`simple_normal_subgroups`].
pub fn simple_normal_certificates<'g>(group: &'g OmegaGroup, limits: &Limits) -> Result<&'g [IsoCertificate]> {
    let sz = simple_normal_subgroups(group, limits)?;
    if let Some(h) = sz.iter().find(|h| h.order() > limits.certificate) {
        return Err(Error::CapExceeded {
            what: "certificate",
            order: h.order(),
            cap: limits.certificate,
        });
    }
    if let Some(done) = group.certificate_cache.get() {
        return Ok(done);
    }
    let certs = sz
        .iter()
        .map(|h| certificate(&embed(group, h).group, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(group.certificate_cache.get_or_init(|| certs))
}

/// `soc(G)`: the Ω-subgroup generated by every simple normal Ω-subgroup.
pub fn socle(group: &OmegaGroup, limits: &Limits) -> Result<Subgroup> {
    join_normal(group, simple_normal_subgroups(group, limits)?)
}

/// The set of isomorphism classes of simple normal Ω-subgroups.
pub type SupportSet = BTreeSet<IsoCertificate>;

pub fn support(group: &OmegaGroup, limits: &Limits) -> Result<SupportSet> {
    Ok(simple_normal_certificates(group, limits)?.iter().cloned().collect())
}

/// `G_S` for a simple type given by its certificate.
pub fn isotypical_component(group: &OmegaGroup, simple: &IsoCertificate, limits: &Limits) -> Result<Subgroup> {
    let sz = simple_normal_subgroups(group, limits)?;
    let certs = simple_normal_certificates(group, limits)?;
    let members: Vec<Subgroup> = sz
        .iter()
        .zip(certs)
        .filter(|(_, c)| *c == simple)
        .map(|(h, _)| h.clone())
        .collect();
    join_normal(group, &members)
}

/// `G_S` for a simple type given as a group, which must be Ω-simple.
pub fn isotypical_component_of(group: &OmegaGroup, simple: &OmegaGroup, limits: &Limits) -> Result<Subgroup> {
    if !is_simple(simple) {
        return Err(Error::NotSimple);
    }
    let cert = certificate(simple, limits)?;
    isotypical_component(group, &cert, limits)
}

/// Checks that a certificate names an Ω-simple group.
pub fn validate_simple(cert: &IsoCertificate) -> Result<()> {
    if is_simple(&cert.to_group()?) {
        Ok(())
    } else {
        Err(Error::NotSimple)
    }
}

/// (CC): members with distinct indices commute elementwise.
pub fn check_cc(group: &OmegaGroup, family: &[Subgroup]) -> bool {
    let lists: Vec<Vec<usize>> = family.iter().map(|h| h.members().to_vec()).collect();
    (0..lists.len()).all(|i| {
        (i + 1..lists.len()).all(|j| {
            lists[i]
                .iter()
                .all(|&a| lists[j].iter().all(|&b| group.mul(a, b) == group.mul(b, a)))
        })
    })
}

/// (MI): each member meets the Ω-subgroup generated by the others trivially.
pub fn mutual_independence(group: &OmegaGroup, family: &[Subgroup]) -> bool {
    (0..family.len()).all(|i| {
        let others: Vec<usize> = family
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, h)| h.members().iter())
            .collect();
        family[i].intersection(&generated_subgroup(group, &others)).is_trivial()
    })
}

/// The canonical morphism from the direct product of a commuting family into
/// the ambient group, together with the product it is defined on.
#[derive(Debug, Clone)]
pub struct Theta {
    pub morphism: OmegaMorphism,
    pub witness: ProductWitness,
    pub embeddings: Vec<Embedding>,
}

fn trivial_with_labels(group: &OmegaGroup) -> Arc<OmegaGroup> {
    let ops = group
        .operators()
        .iter()
        .map(|o| Operator::new(o.label.clone(), vec![0]))
        .collect();
    Arc::new(
        OmegaGroup::from_table(vec![vec![0]], ops)
            .expect("trivial group")
            .with_name("1"),
    )
}

/// `θ`: sends a tuple to the product of its slots, in family order.
pub fn theta(group: &Arc<OmegaGroup>, family: &[Subgroup], limits: &Limits) -> Result<Theta> {
    if family.iter().any(|h| h.members().universe() != group.order()) {
        return Err(Error::Precondition("family member of another group".into()));
    }
    if !check_cc(group, family) {
        return Err(Error::CommutativityFails);
    }
    let embeddings: Vec<Embedding> = family.iter().map(|h| embed(group, h)).collect();
    let factors: Vec<Arc<OmegaGroup>> = embeddings.iter().map(|e| e.group.clone()).collect();
    let mut witness = direct_product(&factors, limits)?;
    if factors.is_empty() {
        witness.product = trivial_with_labels(group);
    }
    let map: Vec<usize> = (0..witness.product.order())
        .map(|x| {
            witness
                .decode(x)
                .iter()
                .zip(&embeddings)
                .fold(0, |acc, (&c, e)| group.mul(acc, e.to_parent(c)))
        })
        .collect();
    let morphism = OmegaMorphism::new(witness.product.clone(), group.clone(), map)
        .map_err(|e| Error::Internal(format!("theta is not a morphism: {e}")))?;
    Ok(Theta {
        morphism,
        witness,
        embeddings,
    })
}

/// Restricted-direct-sum predicates of a family, each computed two ways.
#[derive(Debug, Clone)]
pub struct SdrReport {
    pub family: Vec<Subgroup>,
    pub cc_holds: bool,
    pub theta: Option<OmegaMorphism>,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
    pub mi_holds: bool,
}

/// Without (CC) the report carries no `θ` and all three predicates are false.
pub fn sdr_report(group: &Arc<OmegaGroup>, family: &[Subgroup], limits: &Limits) -> Result<SdrReport> {
    for h in family {
        if h.members().universe() != group.order() {
            return Err(Error::Precondition("family member of another group".into()));
        }
    }
    let mi_holds = mutual_independence(group, family);
    let cc_holds = check_cc(group, family);
    if !cc_holds {
        return Ok(SdrReport {
            family: family.to_vec(),
            cc_holds,
            theta: None,
            injective: false,
            surjective: false,
            bijective: false,
            mi_holds,
        });
    }
    let t = theta(group, family, limits)?;
    let injective = t.morphism.is_injective();
    let surjective = t.morphism.is_surjective();
    if injective != mi_holds {
        return Err(Error::Internal(format!(
            "theta injectivity ({injective}) disagrees with mutual independence ({mi_holds})"
        )));
    }
    let union: Vec<usize> = family.iter().flat_map(|h| h.members().iter()).collect();
    let spans = generated_subgroup(group, &union).order() == group.order();
    if surjective != spans {
        return Err(Error::Internal(format!(
            "theta surjectivity ({surjective}) disagrees with generation ({spans})"
        )));
    }
    Ok(SdrReport {
        family: family.to_vec(),
        cc_holds,
        theta: Some(t.morphism),
        injective,
        surjective,
        bijective: injective && surjective,
        mi_holds,
    })
}

/// [`sdr_report`] with `ambient` (a subgroup of `group` containing every
/// member) playing the role of the ambient group.
pub fn sdr_report_in(
    group: &OmegaGroup,
    ambient: &Subgroup,
    family: &[Subgroup],
    limits: &Limits,
) -> Result<SdrReport> {
    let e = embed(group, ambient);
    let restricted = family
        .iter()
        .map(|h| {
            e.restrict_subgroup(h)
                .ok_or_else(|| Error::Precondition("family member outside the ambient subgroup".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    sdr_report(&e.group, &restricted, limits)
}

fn check_normal_omega(group: &OmegaGroup, h: &Subgroup) -> Result<()> {
    if h.members().universe() != group.order() || !is_omega_stable(group, h.members()) {
        return Err(Error::NotOmegaStable);
    }
    if !is_normal(group, h) {
        return Err(Error::NotNormal);
    }
    Ok(())
}

fn is_supplementary(group: &OmegaGroup, f: &Subgroup, k: &Subgroup) -> bool {
    f.intersection(k).is_trivial() && f.order() * k.order() == group.order()
}

/// Scans `candidates` in order, keeping each member that meets the running
/// product trivially. Returns the kept indices and the final product.
fn greedy_scan(group: &OmegaGroup, start: &Subgroup, candidates: &[Subgroup]) -> (Vec<usize>, ElementSet) {
    let mut current = start.members().clone();
    let mut kept = Vec::new();
    for (i, h) in candidates.iter().enumerate() {
        if h.members().intersection(&current).count() == 1 {
            kept.push(i);
            current = setwise_product(group, &current, h.members());
        }
    }
    (kept, current)
}

/// Picks `J` so that `(F, (H_j)_{j∈J})` is a restricted direct sum equal to
/// `G`, scanning `H` in ascending index order.
pub fn greedy_refine(group: &Arc<OmegaGroup>, f: &Subgroup, h: &[Subgroup], limits: &Limits) -> Result<Vec<usize>> {
    check_normal_omega(group, f)?;
    let sz = simple_normal_subgroups(group, limits)?;
    if let Some(bad) = h.iter().position(|x| !sz.contains(x)) {
        return Err(Error::Precondition(format!(
            "family member {bad} is not a simple normal Ω-subgroup"
        )));
    }
    let union: Vec<usize> = f
        .members()
        .iter()
        .chain(h.iter().flat_map(|x| x.members().iter()))
        .collect();
    if generated_subgroup(group, &union).order() != group.order() {
        return Err(Error::Precondition("F and the family do not generate the group".into()));
    }
    let (kept, _) = greedy_scan(group, f, h);
    let mut extended = vec![f.clone()];
    extended.extend(kept.iter().map(|&j| h[j].clone()));
    let report = sdr_report(group, &extended, limits)?;
    if !report.bijective {
        return Err(Error::Internal(
            "greedy refinement did not produce a restricted direct sum".into(),
        ));
    }
    Ok(kept)
}

/// First normal Ω-subgroup `K` (in lattice order) with `F ∩ K = 1` and
/// `FK = G`. For semisimple groups the constructive supplementary from
/// [`greedy_refine`] is checked as well.
pub fn find_supplementary(group: &Arc<OmegaGroup>, f: &Subgroup, limits: &Limits) -> Result<Option<Subgroup>> {
    check_normal_omega(group, f)?;
    let found = normal_omega_subgroups(group, limits)?
        .iter()
        .find(|k| is_supplementary(group, f, k))
        .cloned();
    if socle(group, limits)?.order() == group.order() {
        let sz = simple_normal_subgroups(group, limits)?;
        let kept = greedy_refine(group, f, sz, limits)?;
        let parts: Vec<Subgroup> = kept.iter().map(|&j| sz[j].clone()).collect();
        let constructive = join_normal(group, &parts)?;
        if !is_supplementary(group, f, &constructive) || found.is_none() {
            return Err(Error::Internal(
                "constructive supplementary disagrees with exhaustive search".into(),
            ));
        }
    }
    Ok(found)
}

/// The three characterizations of semisimplicity, evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semisimplicity {
    /// A family of simple normal Ω-subgroups with bijective `θ` exists.
    pub simple_sum: bool,
    /// The chosen family (greedy over `sz(G)`).
    pub simple_family: Vec<Subgroup>,
    /// `G = soc(G)`.
    pub equals_socle: bool,
    /// Every normal Ω-subgroup has a supplementary.
    pub all_summands: bool,
}

impl Semisimplicity {
    pub fn holds(&self) -> bool {
        self.equals_socle
    }
}

pub fn is_semisimple(group: &Arc<OmegaGroup>, limits: &Limits) -> Result<Semisimplicity> {
    let equals_socle = socle(group, limits)?.order() == group.order();

    let mut all_summands = true;
    for f in normal_omega_subgroups(group, limits)? {
        if find_supplementary(group, f, limits)?.is_none() {
            all_summands = false;
            break;
        }
    }

    let sz = simple_normal_subgroups(group, limits)?;
    let (kept, _) = greedy_scan(group, &Subgroup::trivial(group.order()), sz);
    let simple_family: Vec<Subgroup> = kept.iter().map(|&j| sz[j].clone()).collect();
    let simple_sum = sdr_report(group, &simple_family, limits)?.bijective;

    if !(equals_socle == all_summands && all_summands == simple_sum) {
        return Err(Error::Internal(format!(
            "semisimplicity criteria disagree: sum={simple_sum} socle={equals_socle} summands={all_summands}"
        )));
    }
    Ok(Semisimplicity {
        simple_sum,
        simple_family,
        equals_socle,
        all_summands,
    })
}

/// Socle, nontrivial isotypical components keyed by certificate, and support.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub socle: Subgroup,
    pub components: BTreeMap<IsoCertificate, Subgroup>,
    pub support: SupportSet,
}

impl Decomposition {
    /// `G_S`, trivial when `S` is outside the support.
    pub fn component(&self, simple: &IsoCertificate) -> Subgroup {
        self.components
            .get(simple)
            .cloned()
            .unwrap_or_else(|| Subgroup::trivial(self.socle.members().universe()))
    }
}

/// Assembles the decomposition and verifies that the socle is the restricted
/// direct sum of its isotypical components.
pub fn decompose(group: &OmegaGroup, limits: &Limits) -> Result<Decomposition> {
    let soc = socle(group, limits)?;
    let support = support(group, limits)?;
    let components = support
        .iter()
        .map(|s| Ok((s.clone(), isotypical_component(group, s, limits)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let family: Vec<Subgroup> = components.values().cloned().collect();
    if components.values().any(Subgroup::is_trivial) {
        return Err(Error::Internal("support type with trivial component".into()));
    }
    if join_normal(group, &family)? != soc {
        return Err(Error::Internal("components do not generate the socle".into()));
    }
    if !sdr_report_in(group, &soc, &family, limits)?.bijective {
        return Err(Error::Internal(
            "socle is not the restricted direct sum of its components".into(),
        ));
    }
    Ok(Decomposition {
        socle: soc,
        components,
        support,
    })
}

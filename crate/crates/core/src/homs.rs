//! Morphism enumeration, normal morphisms, and the decomposition of normal
//! morphisms between semisimple Ω-groups into isotypical components.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::decomposition::{isotypical_component, socle, support, theta, Theta};
use crate::error::{Error, Result};
use crate::group::{Limits, OmegaGroup};
use crate::iso::IsoCertificate;
use crate::morphism::OmegaMorphism;
use crate::set::ElementSet;
use crate::subgroups::{embed, generated_plain_subgroup, normal_omega_subgroups, Embedding, Subgroup};

/// Decides normality of morphisms between two fixed groups, reusing their
/// normal lattices.
pub struct NormalityOracle<'a> {
    source_normals: &'a [Subgroup],
    target_normals: HashSet<&'a ElementSet>,
}

impl<'a> NormalityOracle<'a> {
    pub fn new(source: &'a OmegaGroup, target: &'a OmegaGroup, limits: &Limits) -> Result<Self> {
        Ok(NormalityOracle {
            source_normals: normal_omega_subgroups(source, limits)?,
            target_normals: normal_omega_subgroups(target, limits)?
                .iter()
                .map(Subgroup::members)
                .collect(),
        })
    }

    /// Exhaustive check over the source's normal Ω-subgroups. Surjective maps
    /// are always normal; that shortcut is asserted against the scan.
    pub fn is_normal(&self, map: &[usize], target_order: usize) -> Result<bool> {
        let normal = self.source_normals.iter().all(|h| {
            let image = ElementSet::from_indices(target_order, h.members().iter().map(|x| map[x]));
            self.target_normals.contains(&image)
        });
        let surjective = ElementSet::from_indices(target_order, map.iter().copied()).count() == target_order;
        if surjective && !normal {
            return Err(Error::Internal("surjective morphism flagged non-normal".into()));
        }
        Ok(normal)
    }
}

pub fn is_normal_morphism(f: &OmegaMorphism, limits: &Limits) -> Result<bool> {
    NormalityOracle::new(f.source(), f.target(), limits)?.is_normal(f.map(), f.target().order())
}

/// All Ω-morphisms between two groups, sorted by their map arrays.
#[derive(Debug, Clone)]
pub struct HomSet {
    pub source: Arc<OmegaGroup>,
    pub target: Arc<OmegaGroup>,
    pub morphisms: Vec<OmegaMorphism>,
    pub normal_flags: Vec<bool>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    pub fn normal_count(&self) -> usize {
        self.normal_flags.iter().filter(|&&b| b).count()
    }

    pub fn normal(&self) -> impl Iterator<Item = &OmegaMorphism> {
        self.morphisms
            .iter()
            .zip(&self.normal_flags)
            .filter(|(_, &n)| n)
            .map(|(f, _)| f)
    }
}

fn generators(group: &OmegaGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(group.order());
    while span.order() < group.order() {
        gens.push(group.elements().find(|&x| !span.contains(x)).unwrap());
        span = generated_plain_subgroup(group, &gens);
    }
    gens
}

/// Extends generator images multiplicatively; `None` on inconsistency.
fn extend(source: &OmegaGroup, target: &OmegaGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let fy = target.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

/// Enumerates Ω-morphisms by assigning images to a fixed generating set,
/// pruning on order divisibility and on multiplicative consistency.
pub fn enumerate_homs(source: &Arc<OmegaGroup>, target: &Arc<OmegaGroup>, limits: &Limits) -> Result<HomSet> {
    limits.check("morphism enumeration", source.order(), limits.homs)?;
    if !source.same_labels(target) {
        return Err(Error::LabelMismatch);
    }
    let gens = generators(source);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let k = source.element_order(s);
            target
                .elements()
                .filter(|&t| k.is_multiple_of(target.element_order(t)))
                .collect()
        })
        .collect();
    let mut maps = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    fn rec(
        source: &OmegaGroup,
        target: &OmegaGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let depth = images.len();
        if depth == gens.len() {
            let map = extend(source, target, gens, images).expect("checked at previous depth");
            let commutes = source.operators().iter().all(|op| {
                let other = target.operator(&op.label).expect("labels checked");
                source.elements().all(|x| map[op.action[x]] == other.action[map[x]])
            });
            if commutes {
                out.push(map);
            }
            return;
        }
        for &t in &candidates[depth] {
            images.push(t);
            if extend(source, target, &gens[..=depth], images).is_some() {
                rec(source, target, gens, candidates, images, out);
            }
            images.pop();
        }
    }
    rec(source, target, &gens, &candidates, &mut images, &mut maps);
    maps.sort();
    let oracle = NormalityOracle::new(source, target, limits)?;
    let normal_flags = maps
        .iter()
        .map(|m| oracle.is_normal(m, target.order()))
        .collect::<Result<Vec<_>>>()?;
    let morphisms = maps
        .into_iter()
        .map(|m| OmegaMorphism::new_unchecked(source.clone(), target.clone(), m))
        .collect();
    Ok(HomSet {
        source: source.clone(),
        target: target.clone(),
        morphisms,
        normal_flags,
    })
}

/// `f_S`: the restriction of a normal morphism to `G_S → G'_S`, between the
/// embedded component groups.
pub fn component_of_morphism(f: &OmegaMorphism, simple: &IsoCertificate, limits: &Limits) -> Result<OmegaMorphism> {
    if !is_normal_morphism(f, limits)? {
        return Err(Error::NotNormalMorphism);
    }
    let from = embed(f.source(), &isotypical_component(f.source(), simple, limits)?);
    let to = embed(f.target(), &isotypical_component(f.target(), simple, limits)?);
    restrict(f.map(), &from, &to)
}

fn restrict(map: &[usize], from: &Embedding, to: &Embedding) -> Result<OmegaMorphism> {
    let restricted = from
        .members()
        .iter()
        .map(|&x| {
            to.from_parent(map[x])
                .ok_or_else(|| Error::Internal("normal morphism leaves the isotypical component".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OmegaMorphism::new_unchecked(
        from.group.clone(),
        to.group.clone(),
        restricted,
    ))
}

/// Per-type components of a normal morphism, keyed by `Sup(G) ∩ Sup(G')`.
pub type ComponentVector = BTreeMap<IsoCertificate, OmegaMorphism>;

/// Precomputed isotypical data for `Φ` and its inverse between two
/// semisimple Ω-groups.
pub struct PhiContext {
    pub source: Arc<OmegaGroup>,
    pub target: Arc<OmegaGroup>,
    /// `Sup(G) ∩ Sup(G')`.
    pub common: Vec<IsoCertificate>,
    /// `G_S` for every `S ∈ Sup(G)`, in certificate order.
    source_components: BTreeMap<IsoCertificate, Embedding>,
    target_components: BTreeMap<IsoCertificate, Embedding>,
    theta: Theta,
    theta_inverse: Vec<usize>,
    limits: Limits,
}

impl PhiContext {
    pub fn new(source: &Arc<OmegaGroup>, target: &Arc<OmegaGroup>, limits: &Limits) -> Result<Self> {
        if !source.same_labels(target) {
            return Err(Error::LabelMismatch);
        }
        for g in [source, target] {
            if socle(g, limits)?.order() != g.order() {
                return Err(Error::NotSemisimple);
            }
        }
        let embed_all = |g: &Arc<OmegaGroup>| -> Result<BTreeMap<IsoCertificate, Embedding>> {
            support(g, limits)?
                .into_iter()
                .map(|s| {
                    let comp = isotypical_component(g, &s, limits)?;
                    Ok((s, embed(g, &comp)))
                })
                .collect()
        };
        let source_components = embed_all(source)?;
        let target_components = embed_all(target)?;
        let common = source_components
            .keys()
            .filter(|s| target_components.contains_key(*s))
            .cloned()
            .collect();
        let family: Vec<Subgroup> = source_components
            .values()
            .map(|e| {
                Subgroup::from_set_unchecked(ElementSet::from_indices(source.order(), e.members().iter().copied()))
            })
            .collect();
        let theta = theta(source, &family, limits)?;
        if !theta.morphism.is_bijective() {
            return Err(Error::Internal(
                "isotypical components do not decompose a semisimple group".into(),
            ));
        }
        let theta_inverse = theta.morphism.inverse()?.into_map();
        Ok(PhiContext {
            source: source.clone(),
            target: target.clone(),
            common,
            source_components,
            target_components,
            theta,
            theta_inverse,
            limits: *limits,
        })
    }

    pub fn source_component(&self, s: &IsoCertificate) -> Option<&Arc<OmegaGroup>> {
        self.source_components.get(s).map(|e| &e.group)
    }

    pub fn target_component(&self, s: &IsoCertificate) -> Option<&Arc<OmegaGroup>> {
        self.target_components.get(s).map(|e| &e.group)
    }

    /// `Φ(f) = (f_S)_{S ∈ Sup(G) ∩ Sup(G')}`.
    pub fn phi(&self, f: &OmegaMorphism) -> Result<ComponentVector> {
        if f.source().as_ref() != self.source.as_ref() || f.target().as_ref() != self.target.as_ref() {
            return Err(Error::Precondition("morphism between other groups".into()));
        }
        if !NormalityOracle::new(&self.source, &self.target, &self.limits)?.is_normal(f.map(), self.target.order())? {
            return Err(Error::NotNormalMorphism);
        }
        self.common
            .iter()
            .map(|s| {
                Ok((
                    s.clone(),
                    restrict(f.map(), &self.source_components[s], &self.target_components[s])?,
                ))
            })
            .collect()
    }

    /// Assembles `h ∘ θ⁻¹`, where `h` sends the `S` slot through `v_S` and
    /// the inclusion of `G'_S` for `S` in the common support and to the
    /// identity otherwise.
    pub fn phi_inverse(&self, v: &ComponentVector) -> Result<OmegaMorphism> {
        if !v.keys().eq(self.common.iter()) {
            return Err(Error::Precondition(
                "component vector keys differ from the common support".into(),
            ));
        }
        for (s, g) in v {
            let (from, to) = (&self.source_components[s].group, &self.target_components[s].group);
            if g.source().as_ref() != from.as_ref() || g.target().as_ref() != to.as_ref() {
                return Err(Error::Precondition(
                    "component morphism between the wrong groups".into(),
                ));
            }
            if !NormalityOracle::new(from, to, &self.limits)?.is_normal(g.map(), to.order())? {
                return Err(Error::NotNormalMorphism);
            }
        }
        let slots: Vec<Option<(&OmegaMorphism, &Embedding)>> = self
            .source_components
            .keys()
            .map(|s| v.get(s).map(|g| (g, &self.target_components[s])))
            .collect();
        let witness = &self.theta.witness;
        let h: Vec<usize> = (0..witness.product.order())
            .map(|t| {
                witness
                    .decode(t)
                    .iter()
                    .zip(&slots)
                    .fold(0, |acc, (&c, slot)| match slot {
                        Some((g, e)) => self.target.mul(acc, e.to_parent(g.apply(c))),
                        None => acc,
                    })
            })
            .collect();
        let map = self.theta_inverse.iter().map(|&t| h[t]).collect();
        OmegaMorphism::new(self.source.clone(), self.target.clone(), map)
            .map_err(|e| Error::Internal(format!("assembled map is not a morphism: {e}")))
    }
}

/// `Φ(f)` for a normal morphism between semisimple Ω-groups.
pub fn phi(
    source: &Arc<OmegaGroup>,
    target: &Arc<OmegaGroup>,
    f: &OmegaMorphism,
    limits: &Limits,
) -> Result<ComponentVector> {
    PhiContext::new(source, target, limits)?.phi(f)
}

/// The normal morphism whose components are `v`.
pub fn phi_inverse(
    source: &Arc<OmegaGroup>,
    target: &Arc<OmegaGroup>,
    v: &ComponentVector,
    limits: &Limits,
) -> Result<OmegaMorphism> {
    PhiContext::new(source, target, limits)?.phi_inverse(v)
}

//! Ω-subgroups: closures, normality, centralizers, commutators and lattice
//! enumeration.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Limits, OmegaGroup, Operator};
use crate::morphism::OmegaMorphism;
use crate::set::ElementSet;

/// An Ω-subgroup of some parent group, stored as a membership mask over the
/// parent's elements. Handles compare by mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup(ElementSet);

/// An ordered family of subgroups of one parent; positions are the indices.
pub type SubgroupFamily = Vec<Subgroup>;

impl Subgroup {
    pub fn trivial(parent_order: usize) -> Self {
        Subgroup(ElementSet::from_indices(parent_order, [0]))
    }

    pub fn whole(parent_order: usize) -> Self {
        Subgroup(ElementSet::full(parent_order))
    }

    /// Wraps a mask after checking it is an Ω-subgroup of `group`.
    pub fn new(group: &OmegaGroup, members: ElementSet) -> Result<Self> {
        if members.universe() != group.order() || !is_subgroup(group, &members) {
            return Err(Error::NotSubgroup);
        }
        if !is_omega_stable(group, &members) {
            return Err(Error::NotOmegaStable);
        }
        Ok(Subgroup(members))
    }

    pub(crate) fn from_set_unchecked(members: ElementSet) -> Self {
        Subgroup(members)
    }

    pub fn members(&self) -> &ElementSet {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.count()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.0.intersection(&other.0))
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}", self.0)
    }
}

pub fn is_subgroup(group: &OmegaGroup, set: &ElementSet) -> bool {
    set.contains(0)
        && set
            .iter()
            .all(|a| set.contains(group.inv(a)) && set.iter().all(|b| set.contains(group.mul(a, b))))
}

pub fn is_omega_stable(group: &OmegaGroup, set: &ElementSet) -> bool {
    group
        .operators()
        .iter()
        .all(|op| set.iter().all(|x| set.contains(op.action[x])))
}

/// Worklist saturation of `seeds` under products, inverses, optionally the
/// operators, and conjugation by every element of `conjugators`.
fn saturate(
    group: &OmegaGroup,
    seeds: impl IntoIterator<Item = usize>,
    with_operators: bool,
    conjugators: &[usize],
) -> ElementSet {
    let mut set = ElementSet::empty(group.order());
    let mut members: Vec<usize> = Vec::new();
    let mut queue = VecDeque::new();
    fn push(z: usize, set: &mut ElementSet, members: &mut Vec<usize>, queue: &mut VecDeque<usize>) {
        if set.insert(z) {
            members.push(z);
            queue.push_back(z);
        }
    }
    push(0, &mut set, &mut members, &mut queue);
    for s in seeds {
        push(s, &mut set, &mut members, &mut queue);
    }
    while let Some(x) = queue.pop_front() {
        let known = members.len();
        for i in 0..known {
            let y = members[i];
            push(group.mul(x, y), &mut set, &mut members, &mut queue);
            push(group.mul(y, x), &mut set, &mut members, &mut queue);
        }
        push(group.inv(x), &mut set, &mut members, &mut queue);
        if with_operators {
            for op in group.operators() {
                push(op.action[x], &mut set, &mut members, &mut queue);
            }
        }
        for &c in conjugators {
            push(group.conjugate(c, x), &mut set, &mut members, &mut queue);
        }
    }
    set
}

/// The least Ω-subgroup containing `xs`.
pub fn generated_subgroup(group: &OmegaGroup, xs: &[usize]) -> Subgroup {
    Subgroup(saturate(group, xs.iter().copied(), true, &[]))
}

/// The least (operator-free) subgroup containing `xs`.
pub fn generated_plain_subgroup(group: &OmegaGroup, xs: &[usize]) -> Subgroup {
    Subgroup(saturate(group, xs.iter().copied(), false, &[]))
}

/// The least normal Ω-subgroup containing `xs`.
pub fn normal_closure(group: &OmegaGroup, xs: &[usize]) -> Subgroup {
    let all: Vec<usize> = group.elements().collect();
    Subgroup(saturate(group, xs.iter().copied(), true, &all))
}

/// Normal Ω-closure of `xs` inside `within`, conjugating only by members of
/// `within`.
fn relative_normal_closure(group: &OmegaGroup, within: &Subgroup, xs: &[usize]) -> ElementSet {
    let conj = within.members().to_vec();
    saturate(group, xs.iter().copied(), true, &conj)
}

pub fn is_normal(group: &OmegaGroup, h: &Subgroup) -> bool {
    is_normal_set(group, h.members())
}

pub(crate) fn is_normal_set(group: &OmegaGroup, set: &ElementSet) -> bool {
    group
        .elements()
        .all(|g| set.iter().all(|x| set.contains(group.conjugate(g, x))))
}

/// Elements commuting with all of `xs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Centralizer {
    pub subgroup: Subgroup,
    /// Whether the centralizer happens to be closed under the operators.
    pub omega_closed: bool,
}

pub fn centralizer(group: &OmegaGroup, xs: &ElementSet) -> Centralizer {
    let members = ElementSet::from_indices(
        group.order(),
        group
            .elements()
            .filter(|&g| xs.iter().all(|x| group.mul(g, x) == group.mul(x, g))),
    );
    let omega_closed = is_omega_stable(group, &members);
    Centralizer {
        subgroup: Subgroup(members),
        omega_closed,
    }
}

/// `[H, K]`, the subgroup generated by all `h k h⁻¹ k⁻¹`.
pub fn commutator_subgroup(group: &OmegaGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut gens: Vec<usize> = h
        .members()
        .iter()
        .flat_map(|a| k.members().iter().map(move |b| (a, b)))
        .map(|(a, b)| group.commutator(a, b))
        .collect();
    gens.sort_unstable();
    gens.dedup();
    generated_plain_subgroup(group, &gens)
}

/// `{ab : a ∈ A, b ∈ B}`.
pub fn setwise_product(group: &OmegaGroup, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let bs = b.to_vec();
    ElementSet::from_indices(
        group.order(),
        a.iter().flat_map(|x| bs.iter().map(move |&y| group.mul(x, y))),
    )
}

/// Every Ω-subgroup, sorted by size and then member list.
pub fn enumerate_omega_subgroups(group: &OmegaGroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    limits.check("subgroup lattice", group.order(), limits.lattice)?;
    let trivial = generated_subgroup(group, &[]);
    let mut seen: HashSet<Subgroup> = HashSet::from([trivial.clone()]);
    let mut queue = VecDeque::from([trivial]);
    while let Some(h) = queue.pop_front() {
        for x in group.elements() {
            if h.contains(x) {
                continue;
            }
            let seeds: Vec<usize> = h.members().iter().chain([x]).collect();
            let k = generated_subgroup(group, &seeds);
            if seen.insert(k.clone()) {
                queue.push_back(k);
            }
        }
    }
    let mut all: Vec<Subgroup> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

/// Every normal Ω-subgroup, sorted like [`enumerate_omega_subgroups`].
///
/// Each normal Ω-subgroup is the join of the normal closures of its
/// elements, so the lattice is grown from those principal closures by
/// setwise products. Memoized on the group.
pub fn normal_omega_subgroups<'g>(group: &'g OmegaGroup, limits: &Limits) -> Result<&'g [Subgroup]> {
    limits.check("normal subgroup lattice", group.order(), limits.normal_lattice)?;
    Ok(group.normal_cache.get_or_init(|| {
        let mut principal: Vec<ElementSet> = group.elements().map(|x| normal_closure(group, &[x]).0).collect();
        principal.sort();
        principal.dedup();
        let mut seen: HashSet<ElementSet> = principal.iter().cloned().collect();
        let mut queue: VecDeque<ElementSet> = principal.iter().cloned().collect();
        while let Some(n) = queue.pop_front() {
            for p in &principal {
                if p.is_subset(&n) {
                    continue;
                }
                let joined = setwise_product(group, &n, p);
                if seen.insert(joined.clone()) {
                    queue.push_back(joined);
                }
            }
        }
        let mut all: Vec<Subgroup> = seen.into_iter().map(Subgroup).collect();
        all.sort();
        all
    }))
}

/// Alias matching [`enumerate_omega_subgroups`], returning an owned list.
pub fn enumerate_normal_omega_subgroups(group: &OmegaGroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    normal_omega_subgroups(group, limits).map(<[Subgroup]>::to_vec)
}

/// Whether the Ω-group itself is simple: nontrivial, and the normal
/// Ω-closure of each non-identity element is everything.
pub fn is_simple(group: &OmegaGroup) -> bool {
    let whole = Subgroup::whole(group.order());
    !group.is_trivial()
        && (1..group.order()).all(|x| relative_normal_closure(group, &whole, &[x]).count() == group.order())
}

/// Whether `h`, with the induced operators, is simple as an Ω-group.
/// Normality is relative to `h`, not to the ambient group.
pub fn is_simple_subgroup(group: &OmegaGroup, h: &Subgroup) -> bool {
    !h.is_trivial()
        && h.members()
            .iter()
            .filter(|&x| x != 0)
            .all(|x| relative_normal_closure(group, h, &[x]).count() == h.order())
}

/// The simple normal Ω-subgroups of `group`. Memoized on the group.
pub fn simple_normal_subgroups<'g>(group: &'g OmegaGroup, limits: &Limits) -> Result<&'g [Subgroup]> {
    let normal = normal_omega_subgroups(group, limits)?;
    Ok(group.simple_cache.get_or_init(|| {
        normal
            .iter()
            .filter(|h| is_simple_subgroup(group, h))
            .cloned()
            .collect()
    }))
}

/// The Ω-subgroup generated by a family of normal Ω-subgroups, computed as
/// their setwise product in list order and checked against the closure of
/// their union.
pub fn join_normal(group: &OmegaGroup, family: &[Subgroup]) -> Result<Subgroup> {
    for h in family {
        if h.members().universe() != group.order() || !is_normal(group, h) {
            return Err(Error::NotNormal);
        }
    }
    let product = family
        .iter()
        .fold(ElementSet::from_indices(group.order(), [0]), |acc, h| {
            setwise_product(group, &acc, h.members())
        });
    let union: Vec<usize> = family.iter().flat_map(|h| h.members().iter()).collect();
    let closure = generated_subgroup(group, &union);
    if closure.members() != &product {
        return Err(Error::Internal(
            "setwise product of normal subgroups differs from generated subgroup".into(),
        ));
    }
    if !is_normal(group, &closure) {
        return Err(Error::Internal("join of normal subgroups is not normal".into()));
    }
    Ok(closure)
}

/// A subgroup realized as a standalone Ω-group. Subgroup element `i` is the
/// `i`-th smallest parent member, so the identity stays at `0`.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub group: Arc<OmegaGroup>,
    members: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Embedding {
    pub fn to_parent(&self, i: usize) -> usize {
        self.members[i]
    }

    pub fn from_parent(&self, x: usize) -> Option<usize> {
        self.position[x]
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Parent mask of a subset of the embedded group.
    pub fn lift(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.position.len(), set.iter().map(|i| self.members[i]))
    }

    pub fn lift_subgroup(&self, h: &Subgroup) -> Subgroup {
        Subgroup(self.lift(h.members()))
    }

    /// Embedded mask of a subset of the parent; `None` unless contained.
    pub fn restrict(&self, set: &ElementSet) -> Option<ElementSet> {
        let mut out = ElementSet::empty(self.members.len());
        for x in set.iter() {
            out.insert(self.position[x]?);
        }
        Some(out)
    }

    pub fn restrict_subgroup(&self, h: &Subgroup) -> Option<Subgroup> {
        self.restrict(h.members()).map(Subgroup)
    }

    pub fn inclusion(&self, parent: Arc<OmegaGroup>) -> OmegaMorphism {
        OmegaMorphism::new_unchecked(self.group.clone(), parent, self.members.clone())
    }
}

/// Realizes an Ω-subgroup as an Ω-group with the induced operators.
pub fn embed(group: &OmegaGroup, h: &Subgroup) -> Embedding {
    let members = h.members().to_vec();
    let mut position = vec![None; group.order()];
    for (i, &x) in members.iter().enumerate() {
        position[x] = Some(i);
    }
    let k = members.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &members {
        for &b in &members {
            table.push(position[group.mul(a, b)].expect("subgroup closed under product"));
        }
    }
    let operators = group
        .operators()
        .iter()
        .map(|op| {
            Operator::new(
                op.label.clone(),
                members
                    .iter()
                    .map(|&x| position[op.action[x]].expect("subgroup closed under operators"))
                    .collect(),
            )
        })
        .collect();
    let sub = OmegaGroup::from_flat(table, k, operators)
        .expect("subgroup of a valid group is valid")
        .with_name(format!("{}<{}>", group.name(), k));
    Embedding {
        group: Arc::new(sub),
        members,
        position,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{build_named, with_inner_operators, GroupKind};

    fn named(kind: GroupKind, n: usize) -> OmegaGroup {
        build_named(kind, n, &Limits::default()).unwrap()
    }

    fn sizes(list: &[Subgroup]) -> Vec<usize> {
        list.iter().map(Subgroup::order).collect()
    }

    // Σ₃ in lexicographic order: 0=id, 1=(1 2), 2=(0 1), 3=(0 1 2), 4=(0 2 1), 5=(0 2).
    const S3_TRANSPOSITION: usize = 1;
    const S3_THREE_CYCLE: usize = 3;

    #[test]
    fn generated_subgroups_of_s3() {
        let s3 = named(GroupKind::Symmetric, 3);
        assert_eq!(s3.element_order(S3_THREE_CYCLE), 3);
        assert_eq!(s3.element_order(S3_TRANSPOSITION), 2);
        let a3 = generated_subgroup(&s3, &[S3_THREE_CYCLE]);
        assert_eq!(a3.members().to_vec(), vec![0, 3, 4]);
        assert!(generated_subgroup(&s3, &[]).is_trivial());
        assert_eq!(generated_subgroup(&s3, &[0, 1, 2, 3, 4, 5]).order(), 6);
    }

    #[test]
    fn normal_closures_in_s3() {
        let s3 = named(GroupKind::Symmetric, 3);
        assert_eq!(normal_closure(&s3, &[S3_TRANSPOSITION]).order(), 6);
        assert_eq!(normal_closure(&s3, &[S3_THREE_CYCLE]).members().to_vec(), vec![0, 3, 4]);
        assert!(normal_closure(&s3, &[]).is_trivial());
    }

    #[test]
    fn normality_in_s3() {
        let s3 = named(GroupKind::Symmetric, 3);
        assert!(is_normal(&s3, &generated_subgroup(&s3, &[3])));
        for t in [1, 2, 5] {
            assert!(!is_normal(&s3, &generated_subgroup(&s3, &[t])));
        }
        assert!(is_normal(&s3, &Subgroup::whole(6)));
    }

    #[test]
    fn centralizers() {
        let s3 = named(GroupKind::Symmetric, 3);
        let a3 = generated_subgroup(&s3, &[3]);
        let c = centralizer(&s3, a3.members());
        assert_eq!(c.subgroup, a3);
        assert!(c.omega_closed);
        assert_eq!(centralizer(&s3, &ElementSet::from_indices(6, [0])).subgroup.order(), 6);
        let c6 = named(GroupKind::Cyclic, 6);
        assert_eq!(
            centralizer(&c6, &ElementSet::from_indices(6, [1, 2])).subgroup.order(),
            6
        );
    }

    #[test]
    fn commutators() {
        let s3 = named(GroupKind::Symmetric, 3);
        let whole = Subgroup::whole(6);
        let a3 = generated_subgroup(&s3, &[3]);
        assert_eq!(commutator_subgroup(&s3, &whole, &whole), a3);
        assert!(commutator_subgroup(&s3, &whole, &Subgroup::trivial(6)).is_trivial());
        assert!(commutator_subgroup(&s3, &a3, &a3).is_trivial());
    }

    #[test]
    fn lattices() {
        let s3 = named(GroupKind::Symmetric, 3);
        let all = enumerate_omega_subgroups(&s3, &Limits::default()).unwrap();
        assert_eq!(sizes(&all), vec![1, 2, 2, 2, 3, 6]);
        let normal = normal_omega_subgroups(&s3, &Limits::default()).unwrap();
        assert_eq!(sizes(normal), vec![1, 3, 6]);

        let c1 = named(GroupKind::Cyclic, 1);
        assert_eq!(enumerate_omega_subgroups(&c1, &Limits::default()).unwrap().len(), 1);

        let c4 = named(GroupKind::Cyclic, 4);
        assert_eq!(
            sizes(&enumerate_omega_subgroups(&c4, &Limits::default()).unwrap()),
            vec![1, 2, 4]
        );
        assert_eq!(
            sizes(normal_omega_subgroups(&c4, &Limits::default()).unwrap()),
            vec![1, 2, 4]
        );
    }

    #[test]
    fn lattice_cap() {
        let c = named(GroupKind::Cyclic, 25);
        assert!(matches!(
            enumerate_omega_subgroups(&c, &Limits::default()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn inner_operators_make_omega_subgroups_normal() {
        let s3 = with_inner_operators(&named(GroupKind::Symmetric, 3)).unwrap();
        let all = enumerate_omega_subgroups(&s3, &Limits::default()).unwrap();
        assert_eq!(sizes(&all), vec![1, 3, 6]);
        let c4 = named(GroupKind::Cyclic, 4);
        let inner = with_inner_operators(&c4).unwrap();
        assert_eq!(
            enumerate_omega_subgroups(&inner, &Limits::default()).unwrap(),
            enumerate_omega_subgroups(&c4, &Limits::default()).unwrap()
        );
    }

    #[test]
    fn simple_normal_subgroups_distinguish_minimal_normal() {
        let limits = Limits::default();
        let s3 = named(GroupKind::Symmetric, 3);
        assert_eq!(sizes(simple_normal_subgroups(&s3, &limits).unwrap()), vec![3]);
        // V₄ is minimal normal in A₄ but not simple as a group.
        let a4 = named(GroupKind::Alternating, 4);
        assert_eq!(sizes(normal_omega_subgroups(&a4, &limits).unwrap()), vec![1, 4, 12]);
        assert!(simple_normal_subgroups(&a4, &limits).unwrap().is_empty());
        let c1 = named(GroupKind::Cyclic, 1);
        assert!(simple_normal_subgroups(&c1, &limits).unwrap().is_empty());
    }

    #[test]
    fn joins() {
        let s3 = named(GroupKind::Symmetric, 3);
        let a3 = generated_subgroup(&s3, &[3]);
        assert_eq!(join_normal(&s3, std::slice::from_ref(&a3)).unwrap(), a3);
        assert!(join_normal(&s3, &[]).unwrap().is_trivial());
        assert_eq!(
            join_normal(&s3, &[generated_subgroup(&s3, &[1])]).unwrap_err(),
            Error::NotNormal
        );
        let c6 = named(GroupKind::Cyclic, 6);
        let two = generated_subgroup(&c6, &[3]);
        let three = generated_subgroup(&c6, &[2]);
        assert_eq!(join_normal(&c6, &[two, three]).unwrap().order(), 6);
    }

    #[test]
    fn embedding_round_trip() {
        let s3 = named(GroupKind::Symmetric, 3);
        let a3 = generated_subgroup(&s3, &[3]);
        let e = embed(&s3, &a3);
        assert_eq!(e.group.order(), 3);
        assert!(e.group.is_abelian());
        let back = e.lift_subgroup(&Subgroup::whole(3));
        assert_eq!(back, a3);
        assert_eq!(e.restrict_subgroup(&a3).unwrap(), Subgroup::whole(3));
        assert!(e.restrict_subgroup(&Subgroup::whole(6)).is_none());
    }
}

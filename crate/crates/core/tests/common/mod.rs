//! Brute-force oracles shared by integration tests. They work directly on
//! Cayley tables and share no code with the engine's searches.
#![allow(dead_code)]

use std::sync::Arc;

use ogroup_core::{build_named, GroupKind, Limits, OmegaGroup, Operator};

pub fn named(kind: GroupKind, n: usize) -> Arc<OmegaGroup> {
    Arc::new(build_named(kind, n, &Limits::default()).unwrap())
}

/// Bitmask of a set of element indices (groups of order at most 64).
pub fn mask(xs: impl IntoIterator<Item = usize>) -> u64 {
    xs.into_iter().fold(0, |m, x| m | 1 << x)
}

pub fn members(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m >> i & 1 == 1).collect()
}

/// Same group with element `x` renamed to `perm[x]` (`perm[0] == 0`).
pub fn relabel(g: &OmegaGroup, perm: &[usize]) -> OmegaGroup {
    let n = g.order();
    let mut inv = vec![0; n];
    for (x, &p) in perm.iter().enumerate() {
        inv[p] = x;
    }
    let table = (0..n)
        .map(|a| (0..n).map(|b| perm[g.mul(inv[a], inv[b])]).collect())
        .collect();
    let ops = g
        .operators()
        .iter()
        .map(|op| Operator::new(op.label.clone(), (0..n).map(|a| perm[op.action[inv[a]]]).collect()))
        .collect();
    OmegaGroup::from_table(table, ops).unwrap()
}

fn closed(g: &OmegaGroup, m: u64) -> bool {
    let xs = members(m);
    xs.iter().all(|&a| xs.iter().all(|&b| m >> g.mul(a, b) & 1 == 1))
        && g.operators()
            .iter()
            .all(|op| xs.iter().all(|&a| m >> op.action[a] & 1 == 1))
}

/// Every Ω-subgroup, by testing all subsets that contain the identity.
pub fn all_subgroups(g: &OmegaGroup) -> Vec<u64> {
    let n = g.order();
    assert!(n <= 16, "subset oracle is exponential");
    (0..1u64 << (n - 1))
        .map(|rest| rest << 1 | 1)
        .filter(|&m| n.is_multiple_of(m.count_ones() as usize) && closed(g, m))
        .collect()
}

pub fn is_normal_mask(g: &OmegaGroup, m: u64) -> bool {
    members(m)
        .iter()
        .all(|&x| g.elements().all(|c| m >> g.mul(g.mul(c, x), g.inv(c)) & 1 == 1))
}

pub fn normal_subgroups(g: &OmegaGroup) -> Vec<u64> {
    all_subgroups(g).into_iter().filter(|&m| is_normal_mask(g, m)).collect()
}

/// Least Ω-subgroup containing `xs`, by fixed-point iteration.
pub fn closure(g: &OmegaGroup, xs: &[usize]) -> u64 {
    let mut m = mask(xs.iter().copied()) | 1;
    loop {
        let mut next = m;
        for a in members(m) {
            for b in members(m) {
                next |= 1 << g.mul(a, b);
            }
            for op in g.operators() {
                next |= 1 << op.action[a];
            }
        }
        if next == m {
            return m;
        }
        m = next;
    }
}

fn consistent(g: &OmegaGroup, h: &OmegaGroup, map: &[Option<usize>], x: usize) -> bool {
    let fx = map[x].unwrap();
    for y in 0..g.order() {
        let Some(fy) = map[y] else { continue };
        for (a, b, fa, fb) in [(x, y, fx, fy), (y, x, fy, fx)] {
            if let Some(fab) = map[g.mul(a, b)] {
                if fab != h.mul(fa, fb) {
                    return false;
                }
            }
        }
    }
    g.operators().iter().all(|op| {
        let other = h.operator(&op.label).unwrap();
        (0..g.order()).all(|a| match (map[a], map[op.action[a]]) {
            (Some(fa), Some(fo)) => other.action[fa] == fo,
            _ => true,
        })
    })
}

/// Every Ω-morphism, by assigning images element by element and rejecting
/// partial maps that already break the axioms.
pub fn all_homs(g: &OmegaGroup, h: &OmegaGroup, bijective: bool, stop_at_first: bool) -> Vec<Vec<usize>> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &OmegaGroup,
        h: &OmegaGroup,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        x: usize,
        bijective: bool,
        stop: bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if stop && !out.is_empty() {
            return;
        }
        if x == g.order() {
            out.push(map.iter().map(|m| m.unwrap()).collect());
            return;
        }
        for t in 0..h.order() {
            if bijective && used[t] {
                continue;
            }
            map[x] = Some(t);
            used[t] = true;
            if consistent(g, h, map, x) {
                rec(g, h, map, used, x + 1, bijective, stop, out);
            }
            used[t] = false;
            map[x] = None;
        }
    }
    if g.labels() != h.labels() || (bijective && g.order() != h.order()) {
        return vec![];
    }
    let mut map = vec![None; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = Some(0);
    used[0] = true;
    let mut out = Vec::new();
    if consistent(g, h, &map, 0) {
        rec(g, h, &mut map, &mut used, 1, bijective, stop_at_first, &mut out);
    }
    out
}

pub fn isomorphic(g: &OmegaGroup, h: &OmegaGroup) -> bool {
    !all_homs(g, h, true, true).is_empty()
}

/// A morphism is normal when it maps every normal Ω-subgroup onto a normal
/// Ω-subgroup.
pub fn is_normal_map(_g: &OmegaGroup, h: &OmegaGroup, map: &[usize], g_normals: &[u64]) -> bool {
    g_normals
        .iter()
        .all(|&m| is_normal_mask(h, mask(members(m).into_iter().map(|x| map[x]))))
}

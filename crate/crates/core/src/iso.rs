//! Ω-isomorphism search and canonical certificates.
//!
//! A certificate is the lexicographically least encoding of the group over
//! every labeling obtained by breadth-first enumeration from an ordered
//! generating tuple of minimum length. Isomorphisms carry such tuples onto
//! such tuples and commute with the enumeration, so two Ω-groups share a
//! certificate exactly when they are Ω-isomorphic.
//!
//! Digest serialization (all integers `u32` little-endian):
//!
//! ```text
//! order n
//! n*n table entries, row-major
//! operator count m
//! m times, operators sorted by label bytes:
//!     label byte length, label bytes (UTF-8), n action entries
//! ```
//!
//! The hex digest is the SHA-256 of those bytes.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::group::{Limits, OmegaGroup, Operator};
use crate::morphism::OmegaMorphism;
use crate::set::ElementSet;
use crate::subgroups::{generated_plain_subgroup, generated_subgroup};

/// Canonical, relabeling-independent fingerprint of an Ω-group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoCertificate {
    bytes: Vec<u8>,
}

impl IsoCertificate {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn order(&self) -> usize {
        self.word(0)
    }

    fn word(&self, i: usize) -> usize {
        u32::from_le_bytes(self.bytes[4 * i..4 * i + 4].try_into().unwrap()) as usize
    }

    /// Hex SHA-256 of the serialized canonical encoding.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(&self.bytes))
    }

    /// Rebuilds the canonical representative.
    pub fn to_group(&self) -> Result<OmegaGroup> {
        let n = self.order();
        let table: Vec<usize> = (0..n * n).map(|i| self.word(1 + i)).collect();
        let mut offset = 4 * (1 + n * n);
        let read = |off: &mut usize| -> usize {
            let v = u32::from_le_bytes(self.bytes[*off..*off + 4].try_into().unwrap()) as usize;
            *off += 4;
            v
        };
        let m = read(&mut offset);
        let mut ops = Vec::with_capacity(m);
        for _ in 0..m {
            let len = read(&mut offset);
            let label = String::from_utf8(self.bytes[offset..offset + len].to_vec()).expect("labels are UTF-8");
            offset += len;
            let action = (0..n).map(|_| read(&mut offset)).collect();
            ops.push(Operator::new(label, action));
        }
        Ok(OmegaGroup::from_flat(table, n, ops)?.with_name(format!("cert:{}", &self.digest()[..12])))
    }
}

impl fmt::Debug for IsoCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IsoCertificate(order {}, {})", self.order(), &self.digest()[..16])
    }
}

/// Serializes a table and operators in the digest format.
pub fn serialize(group: &OmegaGroup) -> Vec<u8> {
    let n = group.order();
    let mut ops: Vec<&Operator> = group.operators().iter().collect();
    ops.sort_by(|a, b| a.label.as_bytes().cmp(b.label.as_bytes()));
    let mut out = Vec::with_capacity(4 * (2 + n * n + ops.len() * (n + 2)));
    let put = |v: usize, out: &mut Vec<u8>| out.extend_from_slice(&(v as u32).to_le_bytes());
    put(n, &mut out);
    for &x in group.flat_table() {
        put(x, &mut out);
    }
    put(ops.len(), &mut out);
    for op in ops {
        put(op.label.len(), &mut out);
        out.extend_from_slice(op.label.as_bytes());
        for &x in &op.action {
            put(x, &mut out);
        }
    }
    out
}

/// Smallest number of elements generating the group (ignoring operators).
pub fn minimum_generating_size(group: &OmegaGroup) -> usize {
    let n = group.order();
    if n == 1 {
        return 0;
    }
    let mut k = 1;
    loop {
        let mut combo: Vec<usize> = (1..=k).collect();
        loop {
            if generated_plain_subgroup(group, &combo).order() == n {
                return k;
            }
            // next k-combination of 1..n
            let mut i = k;
            while i > 0 && combo[i - 1] == n - 1 - (k - i) {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
        k += 1;
    }
}

/// Breadth-first labeling from an ordered generating tuple: returns the
/// elements in label order, or `None` if the tuple does not generate.
fn bfs_labeling(group: &OmegaGroup, gens: &[usize], order: &mut Vec<usize>, label: &mut [usize]) -> bool {
    let n = group.order();
    order.clear();
    label.iter_mut().for_each(|l| *l = usize::MAX);
    order.push(0);
    label[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &g in gens {
            let y = group.mul(x, g);
            if label[y] == usize::MAX {
                label[y] = order.len();
                order.push(y);
            }
        }
        i += 1;
    }
    order.len() == n
}

/// Compares the relabeled encoding against `best`, returning the relabeled
/// sequence when it is strictly smaller.
fn relabeled_if_smaller(
    group: &OmegaGroup,
    ops: &[&Operator],
    order: &[usize],
    label: &[usize],
    best: Option<&[usize]>,
) -> Option<Vec<usize>> {
    let n = group.order();
    let len = n * n + ops.len() * n;
    let mut out = Vec::with_capacity(len);
    let mut decided = best.is_none();
    let mut push = |v: usize, out: &mut Vec<usize>| -> bool {
        if !decided {
            let b = best.unwrap()[out.len()];
            match v.cmp(&b) {
                Ordering::Less => decided = true,
                Ordering::Greater => return false,
                Ordering::Equal => {}
            }
        }
        out.push(v);
        true
    };
    for &a in order {
        for &b in order {
            if !push(label[group.mul(a, b)], &mut out) {
                return None;
            }
        }
    }
    for op in ops {
        for &a in order {
            if !push(label[op.action[a]], &mut out) {
                return None;
            }
        }
    }
    if decided {
        Some(out)
    } else {
        None
    }
}

/// Canonical certificate of an Ω-group within the certificate cap.
pub fn certificate(group: &OmegaGroup, limits: &Limits) -> Result<IsoCertificate> {
    limits.check("certificate", group.order(), limits.certificate)?;
    let n = group.order();
    let mut ops: Vec<&Operator> = group.operators().iter().collect();
    ops.sort_by(|a, b| a.label.as_bytes().cmp(b.label.as_bytes()));

    let k = minimum_generating_size(group);
    let mut best: Option<Vec<usize>> = None;
    let mut order = Vec::with_capacity(n);
    let mut label = vec![usize::MAX; n];
    let mut tuple = vec![0usize; k];
    // Enumerate ordered k-tuples of distinct non-identity elements.
    fn rec(
        depth: usize,
        group: &OmegaGroup,
        ops: &[&Operator],
        tuple: &mut Vec<usize>,
        order: &mut Vec<usize>,
        label: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
    ) {
        if depth == tuple.len() {
            if bfs_labeling(group, tuple, order, label) {
                if let Some(seq) = relabeled_if_smaller(group, ops, order, label, best.as_deref()) {
                    *best = Some(seq);
                }
            }
            return;
        }
        for x in 1..group.order() {
            if tuple[..depth].contains(&x) {
                continue;
            }
            tuple[depth] = x;
            rec(depth + 1, group, ops, tuple, order, label, best);
        }
    }
    rec(0, group, &ops, &mut tuple, &mut order, &mut label, &mut best);
    let seq = best.expect("a minimum generating tuple exists");

    let mut bytes = Vec::with_capacity(4 * (2 + seq.len()) + ops.iter().map(|o| o.label.len() + 4).sum::<usize>());
    let put = |v: usize, out: &mut Vec<u8>| out.extend_from_slice(&(v as u32).to_le_bytes());
    put(n, &mut bytes);
    for &v in &seq[..n * n] {
        put(v, &mut bytes);
    }
    put(ops.len(), &mut bytes);
    for (i, op) in ops.iter().enumerate() {
        put(op.label.len(), &mut bytes);
        bytes.extend_from_slice(op.label.as_bytes());
        for &v in &seq[n * n + i * n..n * n + (i + 1) * n] {
            put(v, &mut bytes);
        }
    }
    Ok(IsoCertificate { bytes })
}

/// Per-element invariant preserved by Ω-isomorphisms.
fn fingerprints(group: &OmegaGroup) -> Vec<(usize, usize, usize)> {
    group
        .elements()
        .map(|x| {
            let centralizer = group.elements().filter(|&g| group.mul(g, x) == group.mul(x, g)).count();
            let omega_cyclic = generated_subgroup(group, &[x]).order();
            (group.element_order(x), centralizer, omega_cyclic)
        })
        .collect()
}

/// A generating sequence chosen greedily by index.
fn greedy_generators(group: &OmegaGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = ElementSet::from_indices(group.order(), [0]);
    while span.count() < group.order() {
        let next = group.elements().find(|&x| !span.contains(x)).unwrap();
        gens.push(next);
        span = generated_plain_subgroup(group, &gens).members().clone();
    }
    gens
}

/// Searches for an Ω-isomorphism `g → h`.
pub fn are_isomorphic(g: &Arc<OmegaGroup>, h: &Arc<OmegaGroup>) -> Option<OmegaMorphism> {
    if g.order() != h.order() || !g.same_labels(h) {
        return None;
    }
    let fg = fingerprints(g);
    let fh = fingerprints(h);
    let (mut sg, mut sh) = (fg.clone(), fh.clone());
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return None;
    }
    let gens = greedy_generators(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| h.elements().filter(|&y| fh[y] == fg[x]).collect())
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images)
}

fn search(
    g: &Arc<OmegaGroup>,
    h: &Arc<OmegaGroup>,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<OmegaMorphism> {
    let depth = images.len();
    if depth > 0 {
        let map = extend_by_words(g, h, &gens[..depth], images)?;
        if depth == gens.len() {
            let ok = g.operators().iter().all(|op| {
                let other = h.operator(&op.label).unwrap();
                g.elements().all(|x| map[op.action[x]] == other.action[map[x]])
            });
            return ok.then(|| OmegaMorphism::new_unchecked(g.clone(), h.clone(), map));
        }
    } else if gens.is_empty() {
        return Some(OmegaMorphism::new_unchecked(g.clone(), h.clone(), vec![0]));
    }
    for &t in &candidates[depth] {
        images.push(t);
        if let Some(found) = search(g, h, gens, candidates, images) {
            return Some(found);
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] ↦ images[i]` multiplicatively over the subgroup the
/// generators span. Returns a full-length map (unreached entries hold
/// `usize::MAX`) when consistent and injective.
fn extend_by_words(g: &OmegaGroup, h: &OmegaGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[fy] {
                    return None;
                }
                used[fy] = true;
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

//! Standard families of groups.
//!
//! Element enumeration is fixed per kind:
//!
//! * `cyclic n`: element `k` is `g^k`.
//! * `symmetric n`, `alternating n`: permutations of `0..n` in lexicographic
//!   order of their one-line notation (only even ones for `alternating`);
//!   the product `a*b` is the composite `x ↦ a(b(x))`.
//! * `dihedral n` (order `2n`): element `k + n*e` is `r^k s^e`, with
//!   `s r s = r⁻¹`.
//! * `klein4`: element `k` is the bit vector `k` in `C₂×C₂`, product is xor.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{Limits, OmegaGroup, Operator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic,
    Symmetric,
    Alternating,
    Dihedral,
    Klein4,
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cyclic" => GroupKind::Cyclic,
            "symmetric" => GroupKind::Symmetric,
            "alternating" => GroupKind::Alternating,
            "dihedral" => GroupKind::Dihedral,
            "klein4" => GroupKind::Klein4,
            other => return Err(Error::UnknownKind(other.to_string())),
        })
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Cyclic => "cyclic",
            GroupKind::Symmetric => "symmetric",
            GroupKind::Alternating => "alternating",
            GroupKind::Dihedral => "dihedral",
            GroupKind::Klein4 => "klein4",
        })
    }
}

/// Builds a member of a standard family. `n` is ignored for `klein4`.
pub fn build_named(kind: GroupKind, n: usize, limits: &Limits) -> Result<OmegaGroup> {
    let cap = limits.max_order;
    if n == 0 && kind != GroupKind::Klein4 {
        return Err(Error::Precondition(format!("{kind} needs a positive parameter")));
    }
    let (table, name) = match kind {
        GroupKind::Cyclic => {
            limits.check("group construction", n, cap)?;
            let t = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
            (t, format!("C{n}"))
        }
        GroupKind::Symmetric | GroupKind::Alternating => {
            let full = (2..=n).fold(1usize, |acc, k| acc.saturating_mul(k));
            let order = if kind == GroupKind::Alternating && n > 1 {
                full / 2
            } else {
                full
            };
            limits.check("group construction", order, cap)?;
            let mut perms = permutations(n);
            if kind == GroupKind::Alternating {
                perms.retain(|p| is_even(p));
            }
            let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
            let t = perms
                .iter()
                .map(|a| {
                    perms
                        .iter()
                        .map(|b| {
                            let c: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                            index(&c)
                        })
                        .collect()
                })
                .collect();
            let prefix = if kind == GroupKind::Symmetric { "S" } else { "A" };
            (t, format!("{prefix}{n}"))
        }
        GroupKind::Dihedral => {
            limits.check("group construction", 2 * n, cap)?;
            let t = (0..2 * n)
                .map(|x| {
                    let (a, e) = (x % n, x / n);
                    (0..2 * n)
                        .map(|y| {
                            let (b, f) = (y % n, y / n);
                            let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
                            k + n * ((e + f) % 2)
                        })
                        .collect()
                })
                .collect();
            (t, format!("D{n}"))
        }
        GroupKind::Klein4 => {
            limits.check("group construction", 4, cap)?;
            let t = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
            (t, "V4".to_string())
        }
    };
    Ok(OmegaGroup::from_table(table, Vec::new())?.with_name(name))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    inversions % 2 == 0
}

/// Label of the operator `x ↦ g x g⁻¹` added by [`with_inner_operators`].
pub fn inner_label(g: usize) -> String {
    format!("inner:{g}")
}

/// Adds conjugation by every element as an operator. With these operators the
/// Ω-subgroups are exactly the normal subgroups.
pub fn with_inner_operators(group: &OmegaGroup) -> Result<OmegaGroup> {
    let ops = group.elements().map(|g| {
        Operator::new(
            inner_label(g),
            group.elements().map(|x| group.conjugate(g, x)).collect(),
        )
    });
    let name = format!("inner({})", group.name());
    Ok(group.with_operators(ops)?.with_name(name))
}

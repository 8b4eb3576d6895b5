use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::iso::IsoCertificate;
use crate::set::ElementSet;
use crate::subgroups::Subgroup;

/// Size limits applied by constructors and by the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group any constructor will build.
    pub max_order: usize,
    /// Largest group whose full Ω-subgroup lattice is enumerated.
    pub lattice: usize,
    /// Largest group whose normal Ω-subgroup lattice is enumerated.
    pub normal_lattice: usize,
    /// Largest group for which a canonical certificate is computed.
    pub certificate: usize,
    /// Largest source group for morphism enumeration.
    pub homs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 64,
            lattice: 24,
            normal_lattice: 64,
            certificate: 16,
            homs: 16,
        }
    }
}

impl Limits {
    pub(crate) fn check(&self, what: &'static str, order: usize, cap: usize) -> Result<()> {
        if order > cap {
            Err(Error::CapExceeded { what, order, cap })
        } else {
            Ok(())
        }
    }
}

/// A labeled operator acting on a group as an endomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Operator {
    pub label: String,
    pub action: Vec<usize>,
}

impl Operator {
    pub fn new(label: impl Into<String>, action: Vec<usize>) -> Self {
        Operator {
            label: label.into(),
            action,
        }
    }
}

/// A finite group given by its Cayley table, together with a family of
/// labeled operators acting as endomorphisms.
///
/// Element `0` is always the identity. Values are immutable once built; the
/// normal lattice and the simple normal subgroups are memoized on first use.
#[derive(Clone)]
pub struct OmegaGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    operators: Vec<Operator>,
    pub(crate) normal_cache: OnceLock<Vec<Subgroup>>,
    pub(crate) simple_cache: OnceLock<Vec<Subgroup>>,
    pub(crate) certificate_cache: OnceLock<Vec<IsoCertificate>>,
}

impl OmegaGroup {
    /// Validates every axiom and builds the group.
    pub fn from_table(table: Vec<Vec<usize>>, operators: Vec<Operator>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::MalformedTable);
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        Self::from_flat(flat, n, operators)
    }

    pub(crate) fn from_flat(table: Vec<usize>, n: usize, operators: Vec<Operator>) -> Result<Self> {
        if n == 0 || table.len() != n * n || table.iter().any(|&x| x >= n) {
            return Err(Error::MalformedTable);
        }
        let at = |a: usize, b: usize| table[a * n + b];
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(Error::NoIdentity);
            }
        }
        let inverses = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| at(x, y) == 0 && at(y, x) == 0)
                    .ok_or(Error::MissingInverse(x))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NonAssociative(a, b, c));
                    }
                }
            }
        }
        let mut group = OmegaGroup {
            name: String::new(),
            order: n,
            table,
            inverses,
            operators: Vec::new(),
            normal_cache: OnceLock::new(),
            simple_cache: OnceLock::new(),
            certificate_cache: OnceLock::new(),
        };
        group.operators = operators;
        group.validate_operators()?;
        Ok(group)
    }

    fn validate_operators(&self) -> Result<()> {
        let n = self.order;
        let mut seen = BTreeSet::new();
        for op in &self.operators {
            if !seen.insert(op.label.as_str()) {
                return Err(Error::DuplicateLabel(op.label.clone()));
            }
            if op.action.len() != n || op.action.iter().any(|&x| x >= n) {
                return Err(Error::MalformedOperator {
                    label: op.label.clone(),
                    reason: format!("action must list {n} element indices below {n}"),
                });
            }
            for x in 0..n {
                for y in 0..n {
                    if op.action[self.mul(x, y)] != self.mul(op.action[x], op.action[y]) {
                        return Err(Error::NotDistributive {
                            label: op.label.clone(),
                            x,
                            y,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Appends operators, re-validating them against the table.
    pub fn with_operators(&self, extra: impl IntoIterator<Item = Operator>) -> Result<Self> {
        let mut ops = self.operators.clone();
        ops.extend(extra);
        Ok(Self::from_flat(self.table.clone(), self.order, ops)?.with_name(self.name.clone()))
    }

    /// Same table, operators replaced.
    pub fn with_operator_list(&self, ops: Vec<Operator>) -> Result<Self> {
        Ok(Self::from_flat(self.table.clone(), self.order, ops)?.with_name(self.name.clone()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverses[g])
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inverses[a], self.inverses[b]))
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.operators.iter().map(|o| o.label.as_str()).collect()
    }

    pub fn same_labels(&self, other: &OmegaGroup) -> bool {
        self.labels() == other.labels()
    }

    pub fn operator(&self, label: &str) -> Option<&Operator> {
        self.operators.iter().find(|o| o.label == label)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub(crate) fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// `x^k` for `k >= 0`.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> ElementSet {
        ElementSet::from_indices(
            self.order,
            (0..self.order).filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z))),
        )
    }

    /// Checks that `map` is an endomorphism of the underlying group.
    pub fn is_endomorphism(&self, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&x| x < self.order)
            && (0..self.order).all(|x| (0..self.order).all(|y| map[self.mul(x, y)] == self.mul(map[x], map[y])))
    }
}

impl PartialEq for OmegaGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table && self.operators == other.operators
    }
}

impl Eq for OmegaGroup {}

impl fmt::Debug for OmegaGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OmegaGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field(
                "operators",
                &self.operators.iter().map(|o| &o.label).collect::<Vec<_>>(),
            )
            .finish()
    }
}

//! Direct products (restricted direct sums of finite families) and quotients.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{Limits, OmegaGroup, Operator};
use crate::morphism::OmegaMorphism;
use crate::subgroups::{is_normal, is_omega_stable, is_subgroup, Subgroup};

/// A direct product together with its canonical injections and projections.
///
/// Tuples are indexed in mixed radix with the first factor most significant,
/// so the identity tuple is element `0`.
#[derive(Debug, Clone)]
pub struct ProductWitness {
    pub product: Arc<OmegaGroup>,
    pub factors: Vec<Arc<OmegaGroup>>,
    pub injections: Vec<OmegaMorphism>,
    pub projections: Vec<OmegaMorphism>,
    strides: Vec<usize>,
}

impl ProductWitness {
    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn decode(&self, x: usize) -> Vec<usize> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(f, s)| (x / s) % f.order())
            .collect()
    }

    /// The subgroup `∏ parts[i]` where each part is a subgroup of factor `i`.
    pub fn product_of(&self, parts: &[Subgroup]) -> Subgroup {
        assert_eq!(parts.len(), self.factors.len());
        let mut members = vec![0usize];
        for (part, stride) in parts.iter().zip(&self.strides) {
            members = members
                .iter()
                .flat_map(|&m| part.members().iter().map(move |c| m + c * stride))
                .collect();
        }
        Subgroup::from_set_unchecked(crate::set::ElementSet::from_indices(self.product.order(), members))
    }
}

fn strides_for(orders: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; orders.len()];
    for i in (0..orders.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * orders[i + 1];
    }
    strides
}

/// Builds the direct product of a finite family with identical operator labels.
pub fn direct_product(family: &[Arc<OmegaGroup>], limits: &Limits) -> Result<ProductWitness> {
    if let Some(first) = family.first() {
        if family.iter().any(|g| !g.same_labels(first)) {
            return Err(Error::LabelMismatch);
        }
    }
    let orders: Vec<usize> = family.iter().map(|g| g.order()).collect();
    let order = orders
        .iter()
        .try_fold(1usize, |acc, &o| acc.checked_mul(o))
        .unwrap_or(usize::MAX);
    limits.check("direct product", order, limits.max_order)?;
    let strides = strides_for(&orders);
    let decode = |x: usize| -> Vec<usize> { orders.iter().zip(&strides).map(|(o, s)| (x / s) % o).collect() };
    let encode = |c: &[usize]| -> usize { c.iter().zip(&strides).map(|(c, s)| c * s).sum() };
    let tuples: Vec<Vec<usize>> = (0..order).map(decode).collect();

    let mut table = Vec::with_capacity(order * order);
    for a in &tuples {
        for b in &tuples {
            let c: Vec<usize> = family.iter().enumerate().map(|(i, g)| g.mul(a[i], b[i])).collect();
            table.push(encode(&c));
        }
    }
    let operators: Vec<Operator> = match family.first() {
        None => Vec::new(),
        Some(first) => first
            .operators()
            .iter()
            .map(|op| {
                let actions: Vec<&[usize]> = family
                    .iter()
                    .map(|g| g.operator(&op.label).expect("labels checked").action.as_slice())
                    .collect();
                let action = tuples
                    .iter()
                    .map(|t| {
                        let c: Vec<usize> = t.iter().enumerate().map(|(i, &x)| actions[i][x]).collect();
                        encode(&c)
                    })
                    .collect();
                Operator::new(op.label.clone(), action)
            })
            .collect(),
    };
    let name = if family.is_empty() {
        "1".to_string()
    } else {
        family
            .iter()
            .map(|g| g.name().to_string())
            .collect::<Vec<_>>()
            .join(" x ")
    };
    let product = Arc::new(OmegaGroup::from_flat(table, order, operators)?.with_name(name));

    let injections = family
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let map = g.elements().map(|x| x * strides[i]).collect();
            OmegaMorphism::new_unchecked(g.clone(), product.clone(), map)
        })
        .collect();
    let projections = family
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let map = tuples.iter().map(|t| t[i]).collect();
            OmegaMorphism::new_unchecked(product.clone(), g.clone(), map)
        })
        .collect();
    Ok(ProductWitness {
        product,
        factors: family.to_vec(),
        injections,
        projections,
        strides,
    })
}

/// Quotient by a normal Ω-subgroup, with cosets ordered by their least member.
pub fn quotient(group: &Arc<OmegaGroup>, normal: &Subgroup) -> Result<(Arc<OmegaGroup>, OmegaMorphism)> {
    if normal.members().universe() != group.order() || !is_subgroup(group, normal.members()) {
        return Err(Error::NotSubgroup);
    }
    if !is_omega_stable(group, normal.members()) {
        return Err(Error::NotOmegaStable);
    }
    if !is_normal(group, normal) {
        return Err(Error::NotNormal);
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in group.elements() {
        if coset_of[x] == usize::MAX {
            let idx = reps.len();
            reps.push(x);
            for m in normal.members().iter() {
                coset_of[group.mul(x, m)] = idx;
            }
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset_of[group.mul(a, b)]);
        }
    }
    let operators = group
        .operators()
        .iter()
        .map(|op| Operator::new(op.label.clone(), reps.iter().map(|&r| coset_of[op.action[r]]).collect()))
        .collect();
    let name = format!("{}/N{}", group.name(), normal.order());
    let q = Arc::new(OmegaGroup::from_flat(table, k, operators)?.with_name(name));
    let surjection = OmegaMorphism::new_unchecked(group.clone(), q.clone(), coset_of);
    Ok((q, surjection))
}

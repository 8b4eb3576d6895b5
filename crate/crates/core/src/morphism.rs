use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::OmegaGroup;
use crate::set::ElementSet;
use crate::subgroups::Subgroup;

/// A map between two Ω-groups that preserves products and commutes with
/// every operator.
#[derive(Clone)]
pub struct OmegaMorphism {
    source: Arc<OmegaGroup>,
    target: Arc<OmegaGroup>,
    map: Vec<usize>,
}

impl OmegaMorphism {
    pub fn new(source: Arc<OmegaGroup>, target: Arc<OmegaGroup>, map: Vec<usize>) -> Result<Self> {
        let f = OmegaMorphism { source, target, map };
        f.validate()?;
        Ok(f)
    }

    /// Skips validation; callers guarantee the morphism axioms.
    pub(crate) fn new_unchecked(source: Arc<OmegaGroup>, target: Arc<OmegaGroup>, map: Vec<usize>) -> Self {
        debug_assert_eq!(map.len(), source.order());
        OmegaMorphism { source, target, map }
    }

    fn validate(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if !s.same_labels(t) {
            return Err(Error::LabelMismatch);
        }
        if self.map.len() != s.order() || self.map.iter().any(|&y| y >= t.order()) {
            return Err(Error::NotMorphism(format!(
                "map must list {} indices below {}",
                s.order(),
                t.order()
            )));
        }
        if self.map[0] != 0 {
            return Err(Error::NotMorphism("identity not preserved".into()));
        }
        for x in s.elements() {
            for y in s.elements() {
                if self.map[s.mul(x, y)] != t.mul(self.map[x], self.map[y]) {
                    return Err(Error::NotMorphism(format!("f({x}*{y}) != f({x})*f({y})")));
                }
            }
        }
        for op in s.operators() {
            let other = t.operator(&op.label).expect("labels checked");
            if let Some(x) = s
                .elements()
                .find(|&x| self.map[op.action[x]] != other.action[self.map[x]])
            {
                return Err(Error::NotMorphism(format!(
                    "operator `{}` does not commute at {x}",
                    op.label
                )));
            }
        }
        Ok(())
    }

    pub fn identity(group: Arc<OmegaGroup>) -> Self {
        let map = group.elements().collect();
        Self::new_unchecked(group.clone(), group, map)
    }

    /// The null morphism sending everything to the identity.
    pub fn null(source: Arc<OmegaGroup>, target: Arc<OmegaGroup>) -> Result<Self> {
        if !source.same_labels(&target) {
            return Err(Error::LabelMismatch);
        }
        let map = vec![0; source.order()];
        Ok(Self::new_unchecked(source, target, map))
    }

    pub fn source(&self) -> &Arc<OmegaGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<OmegaGroup> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &OmegaMorphism) -> Result<OmegaMorphism> {
        if self.target.as_ref() != next.source.as_ref() {
            return Err(Error::Precondition(
                "composition of morphisms with mismatched endpoints".into(),
            ));
        }
        let map = self.map.iter().map(|&y| next.map[y]).collect();
        Ok(Self::new_unchecked(self.source.clone(), next.target.clone(), map))
    }

    pub fn image_of(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.target.order(), set.iter().map(|x| self.map[x]))
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::from_set_unchecked(ElementSet::from_indices(self.target.order(), self.map.iter().copied()))
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_set_unchecked(ElementSet::from_indices(
            self.source.order(),
            self.source.elements().filter(|&x| self.map[x] == 0),
        ))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().order() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn is_null(&self) -> bool {
        self.map.iter().all(|&y| y == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.source.as_ref() == self.target.as_ref() && self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Inverse of a bijective morphism.
    pub fn inverse(&self) -> Result<OmegaMorphism> {
        if !self.is_bijective() {
            return Err(Error::Precondition("inverse of a non-bijective morphism".into()));
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Ok(Self::new_unchecked(self.target.clone(), self.source.clone(), inv))
    }
}

impl PartialEq for OmegaMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

impl Eq for OmegaMorphism {}

impl fmt::Debug for OmegaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {:?}", self.source.name(), self.target.name(), self.map)
    }
}

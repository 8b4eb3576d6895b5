//! Bundled example groups, one description file per group. The group an
//! entry stands for is the last one its file touches.

use std::sync::Arc;

use ogroup_core::{Limits, OmegaGroup};

use crate::dsl::{load, SpecError};

macro_rules! corpus_files {
    ($($name:literal),* $(,)?) => {
        /// `(name, description)` for every bundled file.
        pub const FILES: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../corpus/", $name, ".og")))),*
        ];
    };
}

corpus_files!(
    "a4",
    "a4-inner",
    "c1",
    "c2",
    "c2xc2xc2",
    "c2xc2xc2xc2",
    "c2xc2xc2-rot",
    "c2-inv",
    "c2-rot",
    "c3",
    "c3xc3",
    "c3-inv",
    "c4",
    "c4xc2",
    "c4-inv",
    "c5",
    "c6",
    "c6xc2",
    "c6-inv",
    "c7",
    "c8",
    "c9",
    "c10",
    "c11",
    "c12",
    "d4",
    "d4-inner",
    "d5",
    "d6",
    "d8",
    "dic3",
    "q8",
    "q8-inner",
    "s3",
    "s3xs3",
    "s3-inner",
    "s4",
    "v4",
    "v4-rot",
);

#[derive(Debug, Clone)]
pub struct CorpusGroup {
    pub name: &'static str,
    pub text: &'static str,
    pub group: Arc<OmegaGroup>,
}

/// Every bundled group, sorted by order and then by name.
pub fn corpus(limits: &Limits) -> Result<Vec<CorpusGroup>, (&'static str, SpecError)> {
    let mut out = FILES
        .iter()
        .map(|&(name, text)| {
            let e = load(text, limits).map_err(|e| (name, e))?;
            Ok(CorpusGroup {
                name,
                text,
                group: e.target().expect("corpus files are nonempty").clone(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_by_key(|c| (c.group.order(), c.name));
    Ok(out)
}

/// The bundled groups of order at most `max_order`.
pub fn corpus_up_to(max_order: usize, limits: &Limits) -> Vec<CorpusGroup> {
    corpus(limits)
        .expect("bundled corpus elaborates")
        .into_iter()
        .filter(|c| c.group.order() <= max_order)
        .collect()
}

pub fn find(name: &str, limits: &Limits) -> Option<CorpusGroup> {
    corpus(limits).ok()?.into_iter().find(|c| c.name == name)
}

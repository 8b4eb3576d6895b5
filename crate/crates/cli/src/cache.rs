//! On-disk cache of analyses, keyed by the digest of the group's table and
//! operators. Entries are written to a temporary file and renamed into place.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use ogroup_core::iso::serialize;
use ogroup_core::OmegaGroup;
use serde_json::Value;
use sha2::{Digest, Sha256};

const VERSION: &[u8] = b"ogroup-analysis/1\0";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(group: &OmegaGroup) -> String {
        let mut h = Sha256::new();
        h.update(VERSION);
        h.update(serialize(group));
        hex::encode(h.finalize())
    }

    fn path(&self, group: &OmegaGroup) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(group)))
    }

    /// A stored analysis, or `None` when missing or unreadable.
    pub fn get(&self, group: &OmegaGroup) -> Option<Value> {
        let text = fs::read_to_string(self.path(group)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, group: &OmegaGroup, value: &Value) -> io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(value)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(group)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ogroup_core::{build_named, GroupKind, Limits};
    use serde_json::json;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let g = build_named(GroupKind::Cyclic, 4, &Limits::default()).unwrap();
        assert!(cache.get(&g).is_none());
        cache.put(&g, &json!({"a": [1, 2]})).unwrap();
        assert_eq!(cache.get(&g), Some(json!({"a": [1, 2]})));
        fs::write(cache.path(&g), "{").unwrap();
        assert!(cache.get(&g).is_none());
    }

    #[test]
    fn key_ignores_name_but_not_operators() {
        let l = Limits::default();
        let g = build_named(GroupKind::Cyclic, 3, &l).unwrap();
        let renamed = g.clone().with_name("other");
        assert_eq!(Cache::key(&g), Cache::key(&renamed));
        let with_op = g
            .with_operators([ogroup_core::Operator::new("inv", vec![0, 2, 1])])
            .unwrap();
        assert_ne!(Cache::key(&g), Cache::key(&with_op));
    }
}

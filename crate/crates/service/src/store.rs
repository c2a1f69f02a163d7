//! The process-wide dataset: readers take an `Arc` snapshot, writers are
//! serialized and publish a new snapshot when they finish.

use std::path::Path;
use std::sync::{Arc, Mutex, RwLock};

use kgsu_core::rdf::Dataset;
use kgsu_core::syntax::{parse_trig, serialize_trig, PrefixTable, SyntaxError};

use crate::error::ApiError;

#[derive(Debug, Default)]
pub struct Store {
    current: RwLock<Arc<Dataset>>,
    writer: Mutex<()>,
}

impl Store {
    pub fn new(dataset: Dataset) -> Self {
        Self {
            current: RwLock::new(Arc::new(dataset)),
            writer: Mutex::new(()),
        }
    }

    /// Reads `path` if it exists, otherwise starts empty.
    pub fn open(path: &Path) -> Result<Self, ApiError> {
        if !path.exists() {
            return Ok(Self::default());
        }
        let text =
            std::fs::read_to_string(path).map_err(|e| ApiError::bad_request(format!("{}: {e}", path.display())))?;
        let (d, _) = parse_trig(&text)?;
        Ok(Self::new(d))
    }

    /// The dataset as of the last completed write. Never blocks on a writer
    /// beyond the pointer swap.
    pub fn snapshot(&self) -> Arc<Dataset> {
        Arc::clone(&self.current.read().expect("snapshot lock"))
    }

    /// Applies `f` to a copy of the current dataset and publishes the copy
    /// if `f` succeeds. Writers run one at a time; readers keep seeing the
    /// previous snapshot until the swap.
    pub fn write<R, E>(&self, f: impl FnOnce(&mut Dataset) -> Result<R, E>) -> Result<R, E> {
        let _guard = self.writer.lock().expect("writer lock");
        let mut next = (*self.snapshot()).clone();
        let out = f(&mut next)?;
        *self.current.write().expect("snapshot lock") = Arc::new(next);
        Ok(out)
    }

    /// Writes the current snapshot to `path`, creating parent directories.
    pub fn save(&self, path: &Path) -> Result<usize, ApiError> {
        let d = self.snapshot();
        if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| ApiError::bad_request(format!("{}: {e}", dir.display())))?;
        }
        std::fs::write(path, to_trig(&d)?).map_err(|e| ApiError::bad_request(format!("{}: {e}", path.display())))?;
        Ok(d.len())
    }
}

/// Canonical TriG, or plain TriG when blank nodes rule canonical form out.
pub fn to_trig(d: &Dataset) -> Result<String, ApiError> {
    let prefixes = PrefixTable::common();
    match serialize_trig(d, &prefixes, true) {
        Err(SyntaxError::BlankNodeInCanonical(_)) => Ok(serialize_trig(d, &prefixes, false)?),
        other => Ok(other?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kgsu_core::rdf::{GraphName, Iri, Quad};

    fn quad(i: usize) -> Quad {
        let iri = |s: String| Iri::new(s).unwrap();
        Quad::new(
            iri(format!("http://example.com/s{i}")),
            iri("http://example.com/p".into()),
            iri(format!("http://example.com/o{i}")),
            GraphName::Default,
        )
    }

    #[test]
    fn snapshots_are_isolated_from_later_writes() {
        let store = Store::default();
        let before = store.snapshot();
        store.write(|d| Ok::<_, ()>(d.insert(quad(1)))).unwrap();
        assert_eq!(before.len(), 0);
        assert_eq!(store.snapshot().len(), 1);
        assert!(store
            .write(|d| {
                d.insert(quad(2));
                Err::<(), _>("rejected")
            })
            .is_err());
        assert_eq!(store.snapshot().len(), 1);
    }

    #[test]
    fn concurrent_writers_do_not_lose_updates() {
        let store = Arc::new(Store::default());
        let handles: Vec<_> = (0..8)
            .map(|t| {
                let s = Arc::clone(&store);
                std::thread::spawn(move || {
                    for i in 0..25 {
                        s.write(|d| Ok::<_, ()>(d.insert(quad(t * 100 + i)))).unwrap();
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert_eq!(store.snapshot().len(), 200);
    }
}

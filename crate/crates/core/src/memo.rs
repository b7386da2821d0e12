//! Process-wide memo tables for basis elements.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

pub(crate) struct Memo<K, V> {
    map: OnceLock<Mutex<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub const fn new() -> Self {
        Memo { map: OnceLock::new() }
    }

    fn table(&self) -> &Mutex<HashMap<K, Arc<V>>> {
        self.map.get_or_init(|| Mutex::new(HashMap::new()))
    }

    /// Value for `k`, computing it outside the lock when absent.
    pub fn get_or_try<E>(&self, k: &K, f: impl FnOnce() -> Result<V, E>) -> Result<Arc<V>, E> {
        if let Some(v) = self.table().lock().expect("memo lock").get(k) {
            return Ok(v.clone());
        }
        let v = Arc::new(f()?);
        let mut t = self.table().lock().expect("memo lock");
        Ok(t.entry(k.clone()).or_insert(v).clone())
    }

    pub fn get_or(&self, k: &K, f: impl FnOnce() -> V) -> Arc<V> {
        self.get_or_try::<std::convert::Infallible>(k, || Ok(f())).unwrap_or_else(|e| match e {})
    }
}

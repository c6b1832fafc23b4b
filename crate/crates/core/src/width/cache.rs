use dashmap::DashMap;

use crate::error::Result;
use crate::graph::{canonical_code, CanonCode, Graph};

use super::{param_value, ParamKind, ValueInterval};

/// Concurrent memo of parameter values keyed by isomorphism class.
#[derive(Debug, Default)]
pub struct SolverCache {
    map: DashMap<(ParamKind, CanonCode), ValueInterval>,
}

impl SolverCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_compute(&self, kind: ParamKind, g: &Graph) -> Result<ValueInterval> {
        let key = (kind, canonical_code(g));
        if let Some(v) = self.map.get(&key) {
            return Ok(*v);
        }
        // computed outside the shard lock; racing writers store equal values
        let v = param_value(kind, g)?;
        Ok(*self.map.entry(key).or_insert(v))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

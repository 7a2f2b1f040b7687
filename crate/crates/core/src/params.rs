//! Named parameter registry with frozen flags and gradient slots.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::derive_rng;
use crate::tensor::Tensor;

/// Handle to a registered parameter.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamId(pub(crate) usize);

#[derive(Clone, Debug)]
pub struct ParamEntry {
    name: String,
    value: Tensor,
    frozen: bool,
    grad: Vec<f64>,
}

impl ParamEntry {
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn value(&self) -> &Tensor {
        &self.value
    }
    pub fn frozen(&self) -> bool {
        self.frozen
    }
    pub fn grad(&self) -> &[f64] {
        &self.grad
    }
    pub fn numel(&self) -> usize {
        self.value.numel()
    }
}

/// Ordered collection of named parameter tensors. Iteration order is
/// registration order, which keeps everything downstream deterministic.
#[derive(Clone, Debug, Default)]
pub struct ParameterStore {
    entries: Vec<ParamEntry>,
    by_name: HashMap<String, usize>,
}

impl ParameterStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, name: &str, value: Tensor, frozen: bool) -> Result<ParamId> {
        if self.by_name.contains_key(name) {
            return Err(Error::Config(format!("duplicate parameter name: {name}")));
        }
        let grad = vec![0.0; value.numel()];
        let id = ParamId(self.entries.len());
        self.by_name.insert(name.to_string(), id.0);
        self.entries.push(ParamEntry { name: name.to_string(), value, frozen, grad });
        Ok(id)
    }

    /// Register a tensor drawn uniformly from ±bound, seeded by the
    /// parameter's own name so values are order-independent.
    pub fn register_uniform(
        &mut self,
        name: &str,
        shape: &[usize],
        bound: f64,
        seed: u64,
        frozen: bool,
    ) -> Result<ParamId> {
        let mut rng = derive_rng(seed, name);
        let numel: usize = shape.iter().product();
        let data: Vec<f64> = (0..numel).map(|_| rng.random_range(-bound..bound)).collect();
        self.register(name, Tensor::new(shape.to_vec(), data)?, frozen)
    }

    pub fn register_zeros(&mut self, name: &str, shape: &[usize], frozen: bool) -> Result<ParamId> {
        self.register(name, Tensor::zeros(shape), frozen)
    }

    pub fn id(&self, name: &str) -> Option<ParamId> {
        self.by_name.get(name).map(|&i| ParamId(i))
    }

    pub fn entry(&self, id: ParamId) -> &ParamEntry {
        &self.entries[id.0]
    }

    pub fn value(&self, id: ParamId) -> &Tensor {
        &self.entries[id.0].value
    }

    pub fn grad(&self, id: ParamId) -> &[f64] {
        &self.entries[id.0].grad
    }

    pub fn is_frozen(&self, id: ParamId) -> bool {
        self.entries[id.0].frozen
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ParamId, &ParamEntry)> {
        self.entries.iter().enumerate().map(|(i, e)| (ParamId(i), e))
    }

    pub fn trainable_ids(&self) -> Vec<ParamId> {
        self.iter().filter(|(_, e)| !e.frozen).map(|(id, _)| id).collect()
    }

    /// Overwrite a parameter's values (shape must match).
    pub fn set_value(&mut self, id: ParamId, value: Tensor) -> Result<()> {
        let entry = &mut self.entries[id.0];
        if entry.value.shape() != value.shape() {
            return Err(Error::Dimension {
                op: "set_value",
                left: entry.value.shape().to_vec(),
                right: value.shape().to_vec(),
            });
        }
        entry.value = value;
        Ok(())
    }

    /// Add `delta` to one scalar entry; used by finite differences and the
    /// optimizer.
    pub fn nudge(&mut self, id: ParamId, index: usize, delta: f64) {
        self.entries[id.0].value.data_mut()[index] += delta;
    }

    pub fn value_mut(&mut self, id: ParamId) -> &mut Tensor {
        &mut self.entries[id.0].value
    }

    pub fn zero_grads(&mut self) {
        for e in &mut self.entries {
            e.grad.fill(0.0);
        }
    }

    pub(crate) fn accumulate_grad(&mut self, id: ParamId, grad: &[f64]) {
        let slot = &mut self.entries[id.0].grad;
        debug_assert_eq!(slot.len(), grad.len());
        for (g, &d) in slot.iter_mut().zip(grad) {
            *g += d;
        }
    }

    /// SHA-256 over the little-endian bytes of every frozen parameter, in
    /// registration order. Any bit flip in a frozen tensor changes it.
    pub fn frozen_digest(&self) -> [u8; 32] {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        for e in &self.entries {
            if !e.frozen {
                continue;
            }
            hasher.update(e.name.as_bytes());
            for v in e.value.data() {
                hasher.update(v.to_le_bytes());
            }
        }
        hasher.finalize().into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        let mut store = ParameterStore::new();
        store.register("w", Tensor::zeros(&[2]), false).unwrap();
        assert!(store.register("w", Tensor::zeros(&[2]), false).is_err());
    }

    #[test]
    fn uniform_init_is_name_seeded() {
        let mut a = ParameterStore::new();
        let mut b = ParameterStore::new();
        // Different registration order, same names: identical values.
        let a1 = a.register_uniform("x", &[4], 1.0, 9, false).unwrap();
        a.register_uniform("y", &[4], 1.0, 9, false).unwrap();
        b.register_uniform("y", &[4], 1.0, 9, false).unwrap();
        let b1 = b.register_uniform("x", &[4], 1.0, 9, false).unwrap();
        assert_eq!(a.value(a1).data(), b.value(b1).data());
    }

    #[test]
    fn frozen_digest_tracks_frozen_entries_only() {
        let mut store = ParameterStore::new();
        let w = store.register("w", Tensor::zeros(&[2]), true).unwrap();
        let t = store.register("t", Tensor::zeros(&[2]), false).unwrap();
        let d0 = store.frozen_digest();
        store.nudge(t, 0, 1.0);
        assert_eq!(d0, store.frozen_digest(), "trainable edits must not move the digest");
        store.nudge(w, 0, 1.0);
        assert_ne!(d0, store.frozen_digest(), "frozen edits must move the digest");
    }
}

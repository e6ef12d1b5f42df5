use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::LabeledExample;

/// Sorted `(feature index, value)` pairs.
pub type SparseVec = Vec<(usize, f64)>;

/// Dense numbering of feature names, in sorted name order.
#[derive(Debug, Clone, Default)]
pub struct FeatureIndex {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl FeatureIndex {
    pub fn build(examples: &[LabeledExample]) -> Self {
        let mut index: BTreeMap<String, usize> = examples
            .iter()
            .flat_map(|e| e.vector.features.keys().cloned())
            .map(|k| (k, 0))
            .collect();
        let names: Vec<String> = index.keys().cloned().collect();
        for (i, v) in index.values_mut().enumerate() {
            *v = i;
        }
        FeatureIndex { names, index }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn encode(&self, e: &LabeledExample) -> SparseVec {
        e.vector
            .features
            .iter()
            .filter(|(_, v)| **v != 0.0)
            .filter_map(|(k, v)| self.index.get(k).map(|i| (*i, *v)))
            .collect()
    }
}

pub(crate) fn dot(w: &[f64], x: &[(usize, f64)]) -> f64 {
    x.iter().map(|(i, v)| w[*i] * v).sum()
}

pub(crate) fn norm(x: &[(usize, f64)]) -> f64 {
    x.iter().map(|(_, v)| v * v).sum::<f64>().sqrt()
}

/// Visiting order of `n` examples in a given epoch: a seeded shuffle
/// derived only from `(seed, epoch)`.
pub fn epoch_order(n: usize, epoch: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (epoch as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    order.shuffle(&mut rng);
    order
}

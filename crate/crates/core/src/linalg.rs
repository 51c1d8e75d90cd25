//! Exact rank of sparse column families over a field.

use std::collections::BTreeMap;

use crate::scalar::Field;

/// A sparse vector indexed by an ordered key.
pub type SparseVec<Key, K> = BTreeMap<Key, K>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult<K> {
    pub rank: usize,
    /// One relation per dependent column: coefficients indexed by column,
    /// with coefficient one on the dependent column itself.
    pub kernel: Vec<BTreeMap<usize, K>>,
}

impl<K> RankResult<K> {
    pub fn full_rank(&self) -> bool {
        self.kernel.is_empty()
    }
}

fn axpy<Key: Ord + Clone, K: Field>(y: &mut BTreeMap<Key, K>, a: &K, x: &BTreeMap<Key, K>) {
    for (k, v) in x {
        let entry = y.entry(k.clone()).or_insert_with(K::zero);
        *entry = entry.clone() + a.clone() * v.clone();
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

/// Gaussian elimination with the smallest key of each reduced vector as
/// its pivot.
pub fn column_rank<Key: Ord + Clone, K: Field>(columns: &[SparseVec<Key, K>]) -> RankResult<K> {
    // pivot -> (reduced vector, its expression in the original columns)
    type Row<Key, K> = (SparseVec<Key, K>, BTreeMap<usize, K>);
    let mut basis: BTreeMap<Key, Row<Key, K>> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        let mut v: SparseVec<Key, K> = col.iter().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k.clone(), x.clone())).collect();
        let mut combo: BTreeMap<usize, K> = BTreeMap::from([(j, K::one())]);
        loop {
            let Some((key, lead)) = v.iter().next().map(|(k, x)| (k.clone(), x.clone())) else {
                kernel.push(combo);
                break;
            };
            match basis.get(&key) {
                Some((b, bc)) => {
                    let factor = -(lead / b[&key].clone());
                    axpy(&mut v, &factor, b);
                    axpy(&mut combo, &factor, bc);
                }
                None => {
                    basis.insert(key, (v, combo));
                    break;
                }
            }
        }
    }
    RankResult {
        rank: basis.len(),
        kernel,
    }
}

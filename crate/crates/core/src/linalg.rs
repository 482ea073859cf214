//! Exact rank of a family of sparse rational vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Rational;

type SparseRow<K> = BTreeMap<K, Rational>;

/// Rank of `rows` over the rationals by incremental Gaussian elimination.
///
/// Each stored basis row is scaled so its smallest key (the pivot) has
/// coefficient one. Eliminating that key from a new row only introduces
/// larger keys, so reduction terminates.
pub(crate) fn rank<K: Ord + Clone>(rows: impl IntoIterator<Item = SparseRow<K>>) -> usize {
    let mut basis: BTreeMap<K, SparseRow<K>> = BTreeMap::new();
    for mut row in rows {
        row.retain(|_, c| !c.is_zero());
        while let Some((key, lead)) = row.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            match basis.get(&key) {
                Some(pivot_row) => {
                    for (k, c) in pivot_row {
                        let entry = row.entry(k.clone()).or_insert_with(Rational::zero);
                        *entry -= &lead * c;
                        if entry.is_zero() {
                            row.remove(k);
                        }
                    }
                }
                None => {
                    let inv = Rational::one() / lead;
                    row.values_mut().for_each(|c| *c *= &inv);
                    basis.insert(key, row);
                    break;
                }
            }
        }
    }
    basis.len()
}

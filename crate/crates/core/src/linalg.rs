//! Exact linear algebra over an arbitrary field.
//!
//! Rows are sparse (sorted column/value pairs); elimination keeps a reduced
//! echelon basis incrementally so ranks of large, very sparse families stay
//! cheap. The scalar is anything implementing [`Field`]; the engine
//! instantiates it at the cyclotomic scalar.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

/// Field operations needed by elimination. `inv` returns `None` only for
/// zero.
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + for<'a> std::ops::Mul<&'a Self, Output = Self>
{
    fn inv(&self) -> Option<Self>;
}

/// A sparse row: strictly increasing column indices with nonzero values.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<K> {
    pub entries: Vec<(u64, K)>,
}

impl<K: Field> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }
}

impl<K: Field> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(mut entries: Vec<(u64, K)>) -> Self {
        entries.sort_by_key(|e| e.0);
        entries.retain(|(_, v)| !v.is_zero());
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<u64> {
        self.entries.first().map(|e| e.0)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn scale(&mut self, f: &K) {
        for (_, v) in self.entries.iter_mut() {
            let t = std::mem::replace(v, K::zero());
            *v = t * f;
        }
    }

    /// `self += f * other`, merging sorted entry lists.
    pub fn axpy(&mut self, f: &K, other: &SparseVec<K>) {
        if f.is_zero() || other.entries.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        let mut na = a.next();
        let mut nb = b.next();
        loop {
            match (na, nb) {
                (Some(x), Some(y)) => {
                    if x.0 < y.0 {
                        out.push(x.clone());
                        na = a.next();
                    } else if x.0 > y.0 {
                        out.push((y.0, y.1.clone() * f));
                        nb = b.next();
                    } else {
                        let v = x.1.clone() + y.1.clone() * f;
                        if !v.is_zero() {
                            out.push((x.0, v));
                        }
                        na = a.next();
                        nb = b.next();
                    }
                }
                (Some(x), None) => {
                    out.push(x.clone());
                    na = a.next();
                }
                (None, Some(y)) => {
                    out.push((y.0, y.1.clone() * f));
                    nb = b.next();
                }
                (None, None) => break,
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        self.entries = out;
    }

    pub fn get(&self, col: u64) -> Option<&K> {
        self.entries
            .binary_search_by_key(&col, |e| e.0)
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

/// An incrementally maintained reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct RowBasis<K> {
    /// rows with pairwise distinct leading columns, normalized to leading
    /// coefficient 1 and fully reduced against each other
    rows: Vec<SparseVec<K>>,
    lead_index: BTreeMap<u64, usize>,
}

impl<K: Field> Default for RowBasis<K> {
    fn default() -> Self {
        RowBasis {
            rows: Vec::new(),
            lead_index: BTreeMap::new(),
        }
    }
}

impl<K: Field> RowBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    /// Reduces `v` against the basis, returning the residue.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        // Rows are fully inter-reduced, so eliminating each matched column
        // once cannot re-introduce a leading column.
        loop {
            let mut changed = false;
            let cols: Vec<u64> = v.entries.iter().map(|e| e.0).collect();
            for c in cols {
                if let Some(&idx) = self.lead_index.get(&c) {
                    if let Some(val) = v.get(c) {
                        let f = K::zero() - val.clone();
                        v.axpy(&f, &self.rows[idx]);
                        changed = true;
                    }
                }
            }
            if !changed {
                return v;
            }
        }
    }

    /// Inserts `v` if independent. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let mut v = self.reduce(v);
        if v.is_zero() {
            return false;
        }
        let lead = v.leading().unwrap();
        let inv = v.entries[0].1.inv().expect("nonzero leading coefficient");
        v.scale(&inv);
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(lead).cloned() {
                let f = K::zero() - c;
                row.axpy(&f, &v);
            }
        }
        self.lead_index.insert(lead, self.rows.len());
        self.rows.push(v);
        true
    }

    /// Expresses `v` in basis coordinates (aligned with `rows()`), if `v`
    /// lies in the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<Vec<K>> {
        let mut v = v.clone();
        let mut coords = vec![K::zero(); self.rows.len()];
        while let Some(lead) = v.leading() {
            let &idx = self.lead_index.get(&lead)?;
            let c = v.get(lead).unwrap().clone();
            let f = K::zero() - c.clone();
            v.axpy(&f, &self.rows[idx]);
            coords[idx] = coords[idx].clone() + c;
        }
        Some(coords)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_zero()
    }
}

/// Rank of an arbitrary family of sparse rows, fewest nonzeros first.
pub fn rank_of<K: Field>(rows: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut basis = RowBasis::new();
    let mut rows: Vec<_> = rows.into_iter().collect();
    rows.sort_by_key(|r| r.nnz());
    for r in rows {
        basis.insert(r);
    }
    basis.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycScalar;

    fn row(entries: &[(u64, i64)]) -> SparseVec<CycScalar> {
        SparseVec::from_entries(
            entries
                .iter()
                .map(|&(c, v)| (c, CycScalar::from_int(v)))
                .collect(),
        )
    }

    #[test]
    fn rank_and_coordinates() {
        let r1 = row(&[(0, 1), (1, 2)]);
        let r2 = row(&[(1, 1), (2, 1)]);
        let r3 = row(&[(0, 1), (1, 1), (2, -1)]); // r1 - r2
        assert_eq!(rank_of(vec![r1.clone(), r2.clone(), r3.clone()]), 2);

        let mut basis = RowBasis::new();
        assert!(basis.insert(r1.clone()));
        assert!(basis.insert(r2.clone()));
        assert!(!basis.insert(r3.clone()));
        let coords = basis.coordinates(&r3).unwrap();
        let mut rebuilt = SparseVec::new();
        for (c, r) in coords.iter().zip(basis.rows()) {
            rebuilt.axpy(c, r);
        }
        assert_eq!(rebuilt, r3);
        assert!(basis.contains(&r3));
        assert!(!basis.contains(&row(&[(3, 1)])));
    }

    #[test]
    fn dependent_over_the_cyclotomic_field() {
        let i = CycScalar::i();
        let r1 = SparseVec::from_entries(vec![(0, CycScalar::one()), (1, i.clone())]);
        let r2 = SparseVec::from_entries(vec![(0, i.clone()), (1, CycScalar::minus_one())]);
        // r2 = i * r1
        assert_eq!(rank_of(vec![r1, r2]), 1);
    }
}

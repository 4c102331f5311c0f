//! Physical qubit labels and logical basis states.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A physical qubit named by the sorted set of logical indices whose parity it stores.
///
/// A single index denotes a data qubit, two or more indices a parity qubit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct QubitLabel(Vec<usize>);

impl QubitLabel {
    /// Builds a label from any collection of distinct indices; the order does not matter.
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        let distinct = v.windows(2).all(|w| w[0] < w[1]);
        if v.is_empty() || !distinct {
            return Err(Error::InvalidLabel(v));
        }
        Ok(QubitLabel(v))
    }

    pub fn data(i: usize) -> Self {
        QubitLabel(vec![i])
    }

    /// Label of the two-body parity qubit of `i` and `j`, or the data qubit when they coincide.
    pub fn pair(i: usize, j: usize) -> Self {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => QubitLabel(vec![i, j]),
            std::cmp::Ordering::Greater => QubitLabel(vec![j, i]),
            std::cmp::Ordering::Equal => QubitLabel(vec![i]),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_data(&self) -> bool {
        self.0.len() == 1
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<usize>> for QubitLabel {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        let sorted = v.windows(2).all(|w| w[0] < w[1]);
        if v.is_empty() || !sorted {
            return Err(Error::InvalidLabel(v));
        }
        Ok(QubitLabel(v))
    }
}

impl From<QubitLabel> for Vec<usize> {
    fn from(l: QubitLabel) -> Self {
        l.0
    }
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Assignment of classical bits to qubits.
pub type BasisState<K> = BTreeMap<K, u8>;

/// Logical basis state with bit `k` of `bits` on logical qubit `k`.
pub fn logical_basis(n: usize, bits: u64) -> BasisState<usize> {
    (0..n).map(|k| (k, ((bits >> k) & 1) as u8)).collect()
}

/// XOR of the logical bits named by `label`.
pub fn label_parity(label: &QubitLabel, logical_bits: &BasisState<usize>) -> Result<u8> {
    label.indices().iter().try_fold(0u8, |acc, i| {
        logical_bits
            .get(i)
            .map(|b| acc ^ (b & 1))
            .ok_or(Error::MissingIndex(*i))
    })
}

/// Bitmask form of [`label_parity`]: bit `k` of `logical` is logical qubit `k`.
pub fn label_parity_mask(label: &QubitLabel, logical: u64) -> u8 {
    label
        .indices()
        .iter()
        .fold(0u8, |acc, &i| acc ^ ((logical >> i) & 1) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_is_xor() {
        let bits = logical_basis(3, 0b110);
        assert_eq!(label_parity(&QubitLabel::pair(1, 2), &bits).unwrap(), 0);
        assert_eq!(label_parity(&QubitLabel::pair(0, 1), &bits).unwrap(), 1);
        let all = logical_basis(3, 0b111);
        assert_eq!(label_parity(&QubitLabel::new([0, 1, 2]).unwrap(), &all).unwrap(), 1);
    }

    #[test]
    fn missing_index_is_named() {
        let bits = logical_basis(2, 0);
        assert_eq!(
            label_parity(&QubitLabel::data(3), &bits),
            Err(Error::MissingIndex(3))
        );
    }

    #[test]
    fn labels_reject_duplicates() {
        assert!(QubitLabel::new([2, 2]).is_err());
        assert!(QubitLabel::new(Vec::<usize>::new()).is_err());
        assert_eq!(QubitLabel::new([3, 1]).unwrap().indices(), &[1, 3]);
        assert!(serde_json::from_str::<QubitLabel>("[2,1]").is_err());
    }
}

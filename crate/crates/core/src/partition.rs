//! Integer partitions: irrep labels, cycle types and loop-length spectra.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts descending and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0) as usize;
        let parts = (1..=first)
            .map(|c| self.0.iter().take_while(|&&p| p as usize >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Cells as `(row, column)` pairs, 0-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p as usize).map(move |j| (i, j)))
    }

    /// Parts counted by multiplicity: `m[k]` is the number of parts equal to `k`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.part(0) as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

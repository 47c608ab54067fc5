use std::fmt;

/// A permutation of `0..len`, stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Self((0..len).collect())
    }

    /// Returns `None` unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Self(images))
    }

    /// Builds a permutation of `0..len` from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(len: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut images: Vec<usize> = (0..len).collect();
        let mut seen = vec![false; len];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= len || seen[a] {
                    return None;
                }
                seen[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Some(Self(images))
    }

    /// `(0 1)(2 3)...(len-2 len-1)`.
    pub fn standard_pairing(len: usize) -> Self {
        Self((0..len).map(|i| i ^ 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&j| self.0[j]).collect())
    }

    /// Cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            out.push(cycle);
        }
        out
    }

    /// For each point, the index of its cycle in [`Permutation::cycles`] order.
    pub fn cycle_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.0.len()];
        for (c, cycle) in self.cycles().iter().enumerate() {
            for &i in cycle {
                idx[i] = c;
            }
        }
        idx
    }

    /// Conjugate by a relabeling: returns `relabel ∘ self ∘ relabel^-1`.
    pub fn conjugate(&self, relabel: &Self) -> Self {
        relabel.compose(self).compose(&relabel.inverse())
    }
}

impl fmt::Display for Permutation {
    /// One-based cycle notation, fixed points included.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (k, i) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

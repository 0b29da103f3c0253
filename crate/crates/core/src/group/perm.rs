use std::fmt;

use super::GroupError;

/// A bijection of `{0, .., n-1}`, stored as its image table.
///
/// Composition follows the left-action convention: `a.compose(b)` applies
/// `b` first, so `(a ∘ b)(i) = a(b(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(GroupError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Builds a permutation from disjoint cycles on `{0, .., degree-1}`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &from) in cycle.iter().enumerate() {
                let to = cycle[(k + 1) % cycle.len()];
                if from as usize >= degree || to as usize >= degree {
                    return Err(GroupError::NotAPermutation(images));
                }
                images[from as usize] = to;
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

use std::fmt;
use std::str::FromStr;

use super::GroupError;

/// Largest free-group rank with a letter notation (`a`..`d`, inverses upper-case).
pub const MAX_FREE_RANK: usize = 4;

const LETTERS: [char; MAX_FREE_RANK] = ['a', 'b', 'c', 'd'];

/// A reduced word in a free group.
///
/// Letters are signed generator indices: `+(i+1)` is generator `i`, `-(i+1)`
/// its inverse. Words are reduced on construction, so equality of words is
/// equality of group elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Reduces `letters` by cancelling adjacent inverse pairs.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut stack: Vec<i32> = Vec::new();
        for l in letters {
            debug_assert!(l != 0, "letter 0 is not a generator");
            if stack.last() == Some(&-l) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word(stack)
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![index as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<i32> {
        self.0.last().copied()
    }

    pub fn mul(&self, other: &Word) -> Word {
        // both operands are reduced, so cancellation only happens at the seam
        let mut left = self.0.clone();
        let mut k = 0;
        while k < other.0.len() && left.last() == Some(&-other.0[k]) {
            left.pop();
            k += 1;
        }
        left.extend_from_slice(&other.0[k..]);
        Word(left)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Largest generator index used, plus one.
    pub fn rank_used(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for &l in &self.0 {
            let idx = l.unsigned_abs() as usize - 1;
            match LETTERS.get(idx) {
                Some(c) if l > 0 => write!(f, "{c}")?,
                Some(c) => write!(f, "{}", c.to_ascii_uppercase())?,
                None => write!(f, "<{l}>")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = GroupError;

    /// Parses `e` (identity) or a string over `a..d` / `A..D`; the input need
    /// not be reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(Word::identity());
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            let lower = c.to_ascii_lowercase();
            let idx = LETTERS
                .iter()
                .position(|&x| x == lower)
                .ok_or_else(|| GroupError::Parse(format!("bad free-group letter {c:?} in {s:?}")))?;
            let l = idx as i32 + 1;
            letters.push(if c.is_ascii_uppercase() { -l } else { l });
        }
        Ok(Word::new(letters))
    }
}

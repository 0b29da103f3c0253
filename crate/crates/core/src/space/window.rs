use std::collections::HashMap;

use super::{Point, SpaceError};

/// A finite truncation of `M`: a core inside a halo.
///
/// Points are stored halo-wide with the core first, so core indices are
/// `0..core_len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    points: Vec<Point>,
    core_len: usize,
    index: HashMap<Point, usize>,
    note: String,
}

impl Window {
    pub fn new(core: Vec<Point>, halo: Vec<Point>, note: impl Into<String>) -> Result<Self, SpaceError> {
        let mut index = HashMap::with_capacity(halo.len());
        let mut points = Vec::with_capacity(halo.len());
        for p in &core {
            if index.insert(p.clone(), points.len()).is_some() {
                return Err(SpaceError::DuplicatePoint(p.to_string()));
            }
            points.push(p.clone());
        }
        let core_len = points.len();
        let mut in_halo = 0;
        let mut halo_seen = std::collections::HashSet::with_capacity(halo.len());
        for p in halo {
            if !halo_seen.insert(p.clone()) {
                return Err(SpaceError::DuplicatePoint(p.to_string()));
            }
            if index.get(&p).is_some_and(|&i| i < core_len) {
                in_halo += 1;
                continue;
            }
            index.insert(p.clone(), points.len());
            points.push(p);
        }
        if in_halo != core_len {
            let missing = core
                .iter()
                .find(|p| !halo_seen.contains(*p))
                .map(|p| p.to_string())
                .unwrap_or_default();
            return Err(SpaceError::CoreNotInHalo(missing));
        }
        Ok(Window { points, core_len, index, note: note.into() })
    }

    /// A window whose core is its whole halo.
    pub fn exact(points: Vec<Point>, note: impl Into<String>) -> Result<Self, SpaceError> {
        Window::new(points.clone(), points, note)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn core(&self) -> &[Point] {
        &self.points[..self.core_len]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn core_len(&self) -> usize {
        self.core_len
    }

    pub fn note(&self) -> &str {
        &self.note
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    pub fn in_core(&self, p: &Point) -> bool {
        self.index.get(p).is_some_and(|&i| i < self.core_len)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// A windowed preimage. When `certified` is false the points are only a lower
/// bound on the true preimage.
#[derive(Clone, Debug, PartialEq)]
pub struct Preimage {
    pub points: Vec<Point>,
    pub certified: bool,
}

//! JSON forms of decompositions, measures and windows.
//!
//! Cosets are written as the point `g ⟳ m₀` they are identified with;
//! points use their display form (`3`, `(1,-2)`, `aB`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::folner::ExpansionSet;
use crate::measure::{FAMeasure, MeasureError};
use crate::paradox::Decomposition;
use crate::scalar::Scalar;
use crate::space::{CellSpace, Point, SpaceError, Window};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("bad value {value:?}: {reason}")]
    Value { value: String, reason: String },
    #[error("coset {0} appears in A or B but not in E")]
    CosetNotInE(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WindowFile {
    pub core: Vec<String>,
    /// Every point of the window, core included.
    pub halo: Vec<String>,
    #[serde(default)]
    pub note: String,
}

impl WindowFile {
    pub fn from_window(w: &Window) -> Self {
        WindowFile {
            core: w.core().iter().map(ToString::to_string).collect(),
            halo: w.points().iter().map(ToString::to_string).collect(),
            note: w.note().to_string(),
        }
    }

    pub fn to_window(&self, space: &CellSpace) -> Result<Window, IoError> {
        let core = parse_points(space, &self.core)?;
        let halo = parse_points(space, &self.halo)?;
        Ok(Window::new(core, halo, self.note.clone())?)
    }
}

fn parse_points(space: &CellSpace, raw: &[String]) -> Result<Vec<Point>, IoError> {
    raw.iter().map(|s| space.parse_point(s).map_err(IoError::from)).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DecompositionFile {
    #[serde(rename = "E")]
    pub e: Vec<String>,
    #[serde(rename = "A")]
    pub a: BTreeMap<String, Vec<String>>,
    #[serde(rename = "B")]
    pub b: BTreeMap<String, Vec<String>>,
    pub scope: WindowFile,
    #[serde(default)]
    pub note: String,
}

impl DecompositionFile {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        let pieces = |parts: &[Vec<Point>]| {
            d.e.cosets()
                .iter()
                .zip(parts)
                .map(|(c, ps)| (c.to_string(), ps.iter().map(ToString::to_string).collect()))
                .collect()
        };
        DecompositionFile {
            e: d.e.cosets().iter().map(ToString::to_string).collect(),
            a: pieces(&d.a),
            b: pieces(&d.b),
            scope: WindowFile::from_window(&d.scope),
            note: d.note().to_string(),
        }
    }

    /// Missing keys in `A`/`B` are empty pieces.
    pub fn to_decomposition(&self, space: &CellSpace) -> Result<Decomposition, IoError> {
        let cosets = self.e.iter().map(|s| space.parse_coset(s)).collect::<Result<Vec<_>, _>>()?;
        let e = ExpansionSet::new(space, cosets);
        let scope = self.scope.to_window(space)?;
        let split = |map: &BTreeMap<String, Vec<String>>| -> Result<Vec<Vec<Point>>, IoError> {
            let mut out = vec![Vec::new(); e.len()];
            for (key, pts) in map {
                let c = space.parse_coset(key)?;
                let i = e.cosets().iter().position(|x| *x == c).ok_or_else(|| IoError::CosetNotInE(key.clone()))?;
                out[i].extend(parse_points(space, pts)?);
            }
            Ok(out)
        };
        let (a, b) = (split(&self.a)?, split(&self.b)?);
        let free = self.note != "freeness not guaranteed";
        Ok(Decomposition { e, a, b, scope, free })
    }
}

pub fn decomposition_to_json(d: &Decomposition) -> String {
    serde_json::to_string_pretty(&DecompositionFile::from_decomposition(d)).expect("plain data serialises")
}

pub fn decomposition_from_json(space: &CellSpace, json: &str) -> Result<Decomposition, IoError> {
    let file: DecompositionFile = serde_json::from_str(json)?;
    file.to_decomposition(space)
}

/// Point → weight string, in window order.
pub fn measure_to_json<S: Scalar>(mu: &FAMeasure<S>) -> String {
    let map: serde_json::Map<String, serde_json::Value> = mu
        .universe()
        .points()
        .iter()
        .zip(mu.weights())
        .map(|(p, w)| (p.to_string(), serde_json::Value::String(w.to_string())))
        .collect();
    serde_json::to_string_pretty(&map).expect("plain data serialises")
}

/// The keys become an exact window (core = halo).
pub fn measure_from_json<S: Scalar>(space: &CellSpace, json: &str) -> Result<FAMeasure<S>, IoError> {
    let map: BTreeMap<String, String> = serde_json::from_str(json)?;
    let mut points = Vec::with_capacity(map.len());
    let mut weights = Vec::with_capacity(map.len());
    for (k, v) in &map {
        points.push(space.parse_point(k)?);
        weights.push(S::parse_scalar(v).map_err(|reason| IoError::Value { value: v.clone(), reason })?);
    }
    Ok(FAMeasure::new(Window::exact(points, "measure file")?, weights)?)
}

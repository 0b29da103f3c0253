//! The TOML experiment schema and its translation into library objects.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use cellspace::folner::{ball_family, box_family, NamedSet};
use cellspace::space::PointSet;
use cellspace::{catalog, CellSpace, Coset, ExpansionSet, Point, Rational, Scalar, Window};
use serde::Deserialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub space: SpaceSpec,
    #[serde(default)]
    pub window: Option<WindowSpec>,
    #[serde(default)]
    pub expansion: Option<ExpansionSpec>,
    #[serde(default)]
    pub family: Option<FamilySpec>,
    #[serde(default)]
    pub folner: Option<FolnerSpec>,
    #[serde(default)]
    pub harem: Option<HaremSpec>,
    #[serde(default)]
    pub measure: Option<MeasureSpec>,
    #[serde(default)]
    pub decomposition: Option<DecompositionSpec>,
    #[serde(default)]
    pub transfer: Option<TransferSpec>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    /// Catalog name: `affine:q`, `zd:d`, `free:k`, `hyperoct:d`, `hyperoct-torus:d:n`.
    pub name: String,
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum WindowKind {
    Ball,
    Box,
    Whole,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub kind: WindowKind,
    /// Ball radius or box side.
    #[serde(default)]
    pub core: u32,
    /// Ball halo radius or box margin.
    #[serde(default)]
    pub halo: u32,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ExpansionSpec {
    /// Cosets named by their base points.
    #[serde(default)]
    pub cosets: Option<Vec<String>>,
    /// Every coset of the group ball of this radius.
    #[serde(default)]
    pub ball: Option<u32>,
    /// Every coset (finite spaces only).
    #[serde(default)]
    pub all: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    #[serde(default)]
    pub sizes: Vec<u32>,
    /// Extra halo for each member beyond what the expansion needs.
    #[serde(default)]
    pub halo_extra: u32,
    #[serde(default)]
    pub sets: Vec<CustomSet>,
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Box,
    Ball,
    Custom,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSet {
    pub id: String,
    pub points: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FolnerSpec {
    pub epsilon: String,
    #[serde(default = "default_max_cosets")]
    pub max_cosets: usize,
}

fn default_max_cosets() -> usize {
    100_000
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HaremSpec {
    #[serde(default = "default_k")]
    pub k: usize,
}

fn default_k() -> usize {
    2
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    pub kind: MeasureKind,
    #[serde(default)]
    pub point: Option<String>,
    #[serde(default)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Uniform,
    Point,
    File,
    Random,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionSpec {
    #[serde(default)]
    pub file: Option<PathBuf>,
    /// Use the stored last-letter decomposition of `free:2`.
    #[serde(default)]
    pub canonical: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferSpec {
    pub subgroup: String,
}

/// A parsed config with the digest of its source bytes.
pub struct Loaded {
    pub config: ExperimentConfig,
    pub digest: String,
    pub dir: PathBuf,
    pub space: CellSpace,
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn load(path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read config {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).context("config is not UTF-8")?;
    let config: ExperimentConfig = toml::from_str(text).with_context(|| format!("invalid config {}", path.display()))?;
    let space = catalog::space(&config.space.name)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let loaded = Loaded { config, digest: digest(&bytes), dir, space };
    loaded.validate()?;
    Ok(loaded)
}

/// A "p/q" string as an exact rational.
pub fn rational(s: &str) -> Result<Rational> {
    Rational::parse_scalar(s).map_err(|e| anyhow!("bad rational {s:?}: {e}"))
}

impl Loaded {
    fn validate(&self) -> Result<()> {
        if let Some(w) = &self.config.window {
            if w.kind == WindowKind::Ball && w.halo < w.core {
                bail!("window halo radius {} is smaller than core radius {}", w.halo, w.core);
            }
        }
        if let Some(f) = &self.config.folner {
            rational(&f.epsilon)?;
        }
        for file in [
            self.config.measure.as_ref().and_then(|m| m.file.as_ref()),
            self.config.decomposition.as_ref().and_then(|d| d.file.as_ref()),
        ]
        .into_iter()
        .flatten()
        {
            let p = self.resolve(file);
            if !p.exists() {
                bail!("referenced file {} does not exist", p.display());
            }
        }
        Ok(())
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.dir.join(p)
        }
    }

    /// The configured window; finite spaces default to the whole space.
    pub fn window(&self) -> Result<Window> {
        let s = &self.space;
        match &self.config.window {
            None if s.is_finite() => Ok(s.whole_window()?),
            None => bail!("[window] is required for {}", s.name()),
            Some(w) => Ok(match w.kind {
                WindowKind::Whole => s.whole_window()?,
                WindowKind::Ball => s.ball_window(w.core as usize, w.halo as usize)?,
                WindowKind::Box => s.box_window(w.core as i64, w.halo as i64)?,
            }),
        }
    }

    /// The configured expansion set; without one, all cosets of a finite
    /// space or the cosets of the radius-1 ball.
    pub fn expansion(&self) -> Result<ExpansionSet> {
        let s = &self.space;
        let cosets: Vec<Coset> = match &self.config.expansion {
            None if s.is_finite() => s.all_cosets()?,
            None => s.coset_ball(1),
            Some(e) => match (&e.cosets, e.ball, e.all) {
                (Some(list), None, false) => {
                    list.iter().map(|c| s.parse_coset(c)).collect::<Result<_, _>>()?
                }
                (None, Some(r), false) => s.coset_ball(r as usize),
                (None, None, true) => s.all_cosets()?,
                _ => bail!("[expansion] needs exactly one of cosets, ball, all"),
            },
        };
        if cosets.is_empty() {
            bail!("expansion set is empty");
        }
        Ok(ExpansionSet::new(s, cosets))
    }

    /// Cosets sampled by verifiers: the expansion if given, otherwise all
    /// cosets of a finite space or the radius-2 ball.
    pub fn coset_sample(&self) -> Result<Vec<Coset>> {
        if self.config.expansion.is_some() {
            return Ok(self.expansion()?.cosets().to_vec());
        }
        Ok(if self.space.is_finite() { self.space.all_cosets()? } else { self.space.coset_ball(2) })
    }

    /// Family members paired with a window that certifies their preimages
    /// under `e`.
    pub fn family(&self, e: &ExpansionSet) -> Result<Vec<(NamedSet, Window)>> {
        let s = &self.space;
        let f = self.config.family.as_ref().ok_or_else(|| anyhow!("[family] is required"))?;
        let reach = reach(e) + f.halo_extra;
        match f.kind {
            FamilyKind::Box => {
                let sets = box_family(s, f.sizes.iter().map(|&n| n as i64))?;
                sets.into_iter()
                    .zip(&f.sizes)
                    .map(|(set, &n)| Ok((set, s.box_window(n as i64, reach as i64)?)))
                    .collect()
            }
            FamilyKind::Ball if s.is_finite() => {
                let w = s.whole_window()?;
                Ok(ball_family(s, f.sizes.iter().map(|&r| r as usize)).into_iter().map(|set| (set, w.clone())).collect())
            }
            FamilyKind::Ball => {
                let sets = ball_family(s, f.sizes.iter().map(|&r| r as usize));
                sets.into_iter()
                    .zip(&f.sizes)
                    .map(|(set, &r)| Ok((set, s.ball_window(r as usize, (r + reach) as usize)?)))
                    .collect()
            }
            FamilyKind::Custom => {
                let w = self.window()?;
                f.sets
                    .iter()
                    .map(|c| {
                        let pts = c.points.iter().map(|p| s.parse_point(p)).collect::<Result<Vec<_>, _>>()?;
                        Ok((NamedSet::new(c.id.clone(), pts), w.clone()))
                    })
                    .collect()
            }
        }
    }
}

/// How far `· ⊵ e` can move a point, in the metric the windows use: the
/// largest ℓ¹ norm or word length of a coset's base point.
fn reach(e: &ExpansionSet) -> u32 {
    e.cosets()
        .iter()
        .map(|c| match c.point() {
            Point::Lattice(v) => v.iter().map(|x| x.unsigned_abs() as u32).sum(),
            Point::Word(w) => w.len() as u32,
            Point::Index(_) => 0,
        })
        .max()
        .unwrap_or(0)
}

/// `true` when ⊵ is plain right multiplication (`M = G`, trivial `G₀`).
pub fn is_group_on_itself(space: &CellSpace) -> bool {
    matches!(space.point_set(), PointSet::Lattice { .. } | PointSet::Free { .. })
}

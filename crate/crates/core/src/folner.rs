//! Følner boundary ratios, the ε-search over ordered set families, and the
//! doubling set built from a failed search.

use std::collections::HashSet;

use num_traits::{One, Signed};
use thiserror::Error;

use crate::space::axioms::product_cosets;
use crate::space::{CellSpace, Coset, Point, SpaceError, Window};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FolnerError {
    #[error("set {0} is empty")]
    EmptySet(String),
    #[error("set {set} leaves the window core at {point}")]
    OutsideCore { set: String, point: String },
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Rational),
    #[error("expansion set is empty")]
    EmptyExpansion,
    #[error("evidence does not show failure: {0}")]
    BadEvidence(String),
    #[error("expansion set would exceed {0} cosets")]
    ExpansionTooLarge(usize),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A finite set of cosets `E`, deduplicated, with the `G₀ ∈ E` flag.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionSet {
    cosets: Vec<Coset>,
    contains_identity: bool,
}

impl ExpansionSet {
    pub fn new(space: &CellSpace, cosets: impl IntoIterator<Item = Coset>) -> Self {
        let mut seen = HashSet::new();
        let cosets: Vec<Coset> = cosets.into_iter().filter(|c| seen.insert(c.clone())).collect();
        let contains_identity = cosets.iter().any(|c| space.is_identity_coset(c));
        ExpansionSet { cosets, contains_identity }
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

/// A member of a set family.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedSet {
    pub id: String,
    pub points: Vec<Point>,
}

impl NamedSet {
    pub fn new(id: impl Into<String>, points: Vec<Point>) -> Self {
        NamedSet { id: id.into(), points }
    }
}

/// Boxes `[0,n)ᵈ` for each `n`.
pub fn box_family(space: &CellSpace, sizes: impl IntoIterator<Item = i64>) -> Result<Vec<NamedSet>, FolnerError> {
    sizes
        .into_iter()
        .map(|n| Ok(NamedSet::new(format!("box{n}"), space.lattice_box(0, n)?)))
        .collect()
}

/// Balls of the given radii around the origin.
pub fn ball_family(space: &CellSpace, radii: impl IntoIterator<Item = usize>) -> Vec<NamedSet> {
    radii.into_iter().map(|r| NamedSet::new(format!("ball{r}"), space.point_ball(r))).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioRecord {
    pub set_id: String,
    pub coset: String,
    pub size: usize,
    /// `|F ∖ (·⊵𝔤)⁻¹(F)| / |F|`
    pub ratio_out: Rational,
    /// `|(·⊵𝔤)⁻¹(F) ∖ F| / |F|`; a lower bound when not certified.
    pub ratio_in: Rational,
    pub certified: bool,
}

fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(num.into(), den.into())
}

/// `|{m ∈ F : m ⊵ 𝔤 ∉ F}| / |F|`; needs only forward evaluation.
pub fn ratio_out(space: &CellSpace, set: &[Point], coset: &Coset) -> Rational {
    let members: HashSet<&Point> = set.iter().collect();
    let out = members.iter().filter(|m| !members.contains(&space.semi_action(m, coset))).count();
    ratio(out, members.len())
}

/// Both boundary ratios of `F` for one coset, relative to `window`.
pub fn ratios(space: &CellSpace, set: &NamedSet, coset: &Coset, window: &Window) -> Result<RatioRecord, FolnerError> {
    if set.points.is_empty() {
        return Err(FolnerError::EmptySet(set.id.clone()));
    }
    if let Some(p) = set.points.iter().find(|p| !window.in_core(p)) {
        return Err(FolnerError::OutsideCore { set: set.id.clone(), point: p.to_string() });
    }
    let members: HashSet<&Point> = set.points.iter().collect();
    let pre = space.preimage(coset, &set.points, window);
    let gained = pre.points.iter().filter(|p| !members.contains(p)).count();
    Ok(RatioRecord {
        set_id: set.id.clone(),
        coset: coset.to_string(),
        size: members.len(),
        ratio_out: ratio_out(space, &set.points, coset),
        ratio_in: ratio(gained, members.len()),
        certified: pre.certified,
    })
}

/// The worst coset of a set: the first `e` attaining `max_e ratio_out(F, e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WorstRatio {
    pub set_id: String,
    pub coset: Coset,
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FailureEvidence {
    pub epsilon: Rational,
    /// One entry per family member, in family order.
    pub per_set: Vec<WorstRatio>,
}

impl FailureEvidence {
    /// The member with the smallest worst ratio (first on ties).
    pub fn best(&self) -> Option<&WorstRatio> {
        self.per_set.iter().fold(None, |best: Option<&WorstRatio>, w| match best {
            Some(b) if b.ratio <= w.ratio => Some(b),
            _ => Some(w),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Found { index: usize, worst: WorstRatio },
    Exhausted(FailureEvidence),
}

fn worst_ratio(space: &CellSpace, e: &ExpansionSet, set: &NamedSet) -> WorstRatio {
    let mut worst: Option<(Coset, Rational)> = None;
    for c in e.cosets() {
        let r = ratio_out(space, &set.points, c);
        if worst.as_ref().is_none_or(|(_, w)| r > *w) {
            worst = Some((c.clone(), r));
        }
    }
    let (coset, ratio) = worst.expect("non-empty expansion set");
    WorstRatio { set_id: set.id.clone(), coset, ratio }
}

/// Returns the first family member with `ratio_out(F, e) < ε` for every
/// `e ∈ E`, or evidence that none qualifies.
pub fn folner_search(
    space: &CellSpace,
    e: &ExpansionSet,
    epsilon: &Rational,
    family: &[NamedSet],
) -> Result<SearchOutcome, FolnerError> {
    if !epsilon.is_positive() {
        return Err(FolnerError::NonPositiveEpsilon(epsilon.clone()));
    }
    if e.is_empty() {
        return Err(FolnerError::EmptyExpansion);
    }
    let mut per_set = Vec::with_capacity(family.len());
    for (index, set) in family.iter().enumerate() {
        if set.points.is_empty() {
            return Err(FolnerError::EmptySet(set.id.clone()));
        }
        let worst = worst_ratio(space, e, set);
        if worst.ratio < *epsilon {
            return Ok(SearchOutcome::Found { index, worst });
        }
        per_set.push(worst);
    }
    Ok(SearchOutcome::Exhausted(FailureEvidence { epsilon: epsilon.clone(), per_set }))
}

/// `ξ = 1 + ε/|G₀|` and the least `n ≥ 1` with `ξⁿ ≥ 2`.
pub fn doubling_parameters(epsilon: &Rational, g0: usize) -> Result<(Rational, u32), FolnerError> {
    if !epsilon.is_positive() {
        return Err(FolnerError::NonPositiveEpsilon(epsilon.clone()));
    }
    let xi = Rational::one() + epsilon / Rational::from_integer(g0.into());
    let two = Rational::from_integer(2.into());
    let mut n = 1;
    let mut pow = xi.clone();
    while pow < two {
        pow *= &xi;
        n += 1;
    }
    Ok((xi, n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Doubling {
    /// `E₂ = {G₀} ∪ E₁`
    pub e2: ExpansionSet,
    pub xi: Rational,
    pub n: u32,
    /// `E₂` composed with itself `n − 1` times.
    pub expansion: ExpansionSet,
}

/// Builds the doubling candidate from evidence that every family member has
/// some `e ∈ E₁` with `ratio_out ≥ ε`.
///
/// Composition uses all representatives of each coset, so the result
/// contains every pointwise composition and `m ⊵ E` is never smaller than
/// the iterated `((m ⊵ E₂) ⊵ E₂) ⋯`.
pub fn doubling_from_failure(
    space: &CellSpace,
    e1: &ExpansionSet,
    epsilon: &Rational,
    evidence: &FailureEvidence,
    max_cosets: usize,
) -> Result<Doubling, FolnerError> {
    let (xi, n) = doubling_parameters(epsilon, space.stabiliser().len())?;
    if evidence.epsilon != *epsilon {
        return Err(FolnerError::BadEvidence(format!(
            "evidence is for epsilon {} not {epsilon}",
            evidence.epsilon
        )));
    }
    if let Some(w) = evidence.per_set.iter().find(|w| w.ratio < *epsilon) {
        return Err(FolnerError::BadEvidence(format!("set {} has worst ratio {} < {epsilon}", w.set_id, w.ratio)));
    }
    if let Some(w) = evidence.per_set.iter().find(|w| !e1.cosets().contains(&w.coset)) {
        return Err(FolnerError::BadEvidence(format!("coset {} is not in E1", w.coset)));
    }
    let e2 = ExpansionSet::new(
        space,
        std::iter::once(space.identity_coset()).chain(e1.cosets().iter().cloned()),
    );
    let mut acc = e2.cosets().to_vec();
    for _ in 1..n {
        acc = product_cosets(space, &acc, e2.cosets());
        if acc.len() > max_cosets {
            return Err(FolnerError::ExpansionTooLarge(max_cosets));
        }
    }
    let expansion = ExpansionSet::new(space, acc);
    debug_assert!(expansion.contains_identity());
    Ok(Doubling { e2, xi, n, expansion })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DoublingVerdict {
    pub set_id: String,
    pub size: usize,
    pub image_size: usize,
    pub passed: bool,
}

/// `|F ⊵ E| ≥ 2|F|` for each family member.
pub fn check_doubling(space: &CellSpace, e: &ExpansionSet, family: &[NamedSet]) -> Vec<DoublingVerdict> {
    family
        .iter()
        .map(|set| {
            let size = set.points.iter().collect::<HashSet<_>>().len();
            let image_size = space.semi_action_set(&set.points, e.cosets()).len();
            DoublingVerdict { set_id: set.id.clone(), size, image_size, passed: image_size >= 2 * size }
        })
        .collect()
}

//! Cell spaces `⟨⟨M, G, ⟳⟩, ⟨m₀, {g_{m₀,m}}⟩⟩` and the induced right
//! semi-action `m ⊵ gG₀ = g_{m₀,m}·g ⟳ m₀`.
//!
//! A coset `gG₀` is identified by the point `g ⟳ m₀`, which determines it
//! uniquely because `G₀` is the stabiliser of `m₀`. With that encoding
//! `m ⊵ gG₀ = g_{m₀,m} ⟳ (g ⟳ m₀)`, independent of the representative.

pub mod axioms;
mod window;

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::group::{parse_tuple, Backend, Group, GroupElement, GroupError, Word};

pub use window::{Preimage, Window};

/// Largest finite group a finite cell space will enumerate.
pub const MAX_FINITE_GROUP: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("point {0} is not in the space")]
    UnknownPoint(String),
    #[error("cannot parse point {0:?}")]
    ParsePoint(String),
    #[error("operation needs a finite space")]
    NotFinite,
    #[error("no group element moves the origin to {0}; the action is not transitive")]
    NotTransitive(String),
    #[error("window core point {0} missing from halo")]
    CoreNotInHalo(String),
    #[error("duplicate window point {0}")]
    DuplicatePoint(String),
    #[error("window does not certify {0}")]
    Uncertified(String),
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// A point of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Index(u32),
    Lattice(Vec<i64>),
    Word(Word),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Index(i) => write!(f, "{i}"),
            Point::Lattice(v) => write!(f, "{}", GroupElement::Tuple(v.clone())),
            Point::Word(w) => write!(f, "{w}"),
        }
    }
}

/// What `M` is, as far as the evaluator is concerned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSet {
    /// `{0, .., size-1}` with a permutation group acting.
    Finite { size: u32 },
    /// `M = G = ℤᵈ` acting on itself by translation.
    Lattice { dim: usize },
    /// `M = G = F_k` acting on itself by left multiplication.
    Free { rank: usize },
    /// `M = H` for `G = G₀ ⋉ H`, acted on by `(g₀,h) ⟳ m = h·τ(g₀)(m)`.
    Semidirect,
}

#[derive(Clone, Debug)]
enum Coordinates {
    /// `g_{m₀,m}` is the translation by `m` (the element of `H` or `G` named by `m`).
    Translation,
    Table(HashMap<Point, GroupElement>),
}

/// An element `gG₀` of `G/G₀`.
///
/// Equality, ordering and hashing use the base point `g ⟳ m₀` only, which is
/// equivalent to `rep₁⁻¹·rep₂ ∈ G₀`.
#[derive(Clone, Debug)]
pub struct Coset {
    point: Point,
    rep: GroupElement,
}

impl Coset {
    /// The point `g ⟳ m₀` naming this coset.
    pub fn point(&self) -> &Point {
        &self.point
    }

    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.point == other.point
    }
}

impl Eq for Coset {}

impl Hash for Coset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.point.hash(state);
    }
}

impl PartialOrd for Coset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.point.cmp(&other.point)
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.point)
    }
}

#[derive(Clone, Debug)]
pub struct CellSpace {
    name: String,
    group: Group,
    points: PointSet,
    origin: Point,
    coordinates: Coordinates,
    coordinate_rule: String,
    stabiliser: Vec<GroupElement>,
    /// Every group element, for finite spaces.
    elements: Option<Vec<GroupElement>>,
}

impl CellSpace {
    /// `ℤᵈ` acting on itself, `m₀ = 0`, `g_{0,m} = m`.
    pub fn lattice(dim: usize) -> Self {
        let group = Group::lattice(dim);
        CellSpace {
            name: format!("zd:{dim}"),
            origin: Point::Lattice(vec![0; dim]),
            stabiliser: vec![group.identity()],
            group,
            points: PointSet::Lattice { dim },
            coordinates: Coordinates::Translation,
            coordinate_rule: "g_{0,m} = translation by m".into(),
            elements: None,
        }
    }

    /// `F_k` acting on itself by left multiplication, `m₀ = e`, `g_{e,w} = w`.
    pub fn free(rank: usize) -> Result<Self, SpaceError> {
        let group = Group::free(rank)?;
        Ok(CellSpace {
            name: format!("free:{rank}"),
            origin: Point::Word(Word::identity()),
            stabiliser: vec![group.identity()],
            group,
            points: PointSet::Free { rank },
            coordinates: Coordinates::Translation,
            coordinate_rule: "g_{e,w} = w (right semi-action is right multiplication)".into(),
            elements: None,
        })
    }

    /// `G₀ ⋉ H` acting on `M = H`, `m₀ = e_H`, `g_{m₀,m} = (e, m)`.
    pub fn semidirect(name: impl Into<String>, group: Group) -> Result<Self, SpaceError> {
        let data = group
            .semidirect_data()
            .ok_or_else(|| SpaceError::Unsupported("expected a semidirect product".into()))?;
        let normal_id = data.normal.identity();
        let stabiliser = data
            .base
            .elements(MAX_FINITE_GROUP)?
            .into_iter()
            .map(|g0| GroupElement::pair(g0, normal_id.clone()))
            .collect();
        let origin = element_to_point(&normal_id)?;
        Ok(CellSpace {
            name: name.into(),
            group,
            points: PointSet::Semidirect,
            origin,
            coordinates: Coordinates::Translation,
            coordinate_rule: "g_{e,m} = (e, m)".into(),
            stabiliser,
            elements: None,
        })
    }

    /// A finite permutation space on `{0..size}` with explicit coordinates
    /// `coords[m] = g_{origin,m}`. The stabiliser is computed by enumeration.
    pub fn finite(
        name: impl Into<String>,
        group: Group,
        size: u32,
        origin: u32,
        coords: Vec<GroupElement>,
        coordinate_rule: impl Into<String>,
    ) -> Result<Self, SpaceError> {
        match group.backend() {
            Backend::Permutation { degree } if *degree == size as usize => {}
            _ => {
                return Err(SpaceError::Unsupported(format!(
                    "finite space of size {size} needs a permutation group of that degree"
                )))
            }
        }
        if coords.len() != size as usize || origin >= size {
            return Err(SpaceError::Unsupported(format!(
                "need {size} coordinates and an origin below {size}"
            )));
        }
        for g in &coords {
            group.validate(g)?;
        }
        let elements = group.elements(MAX_FINITE_GROUP)?;
        let origin = Point::Index(origin);
        let mut space = CellSpace {
            name: name.into(),
            group,
            points: PointSet::Finite { size },
            origin,
            coordinates: Coordinates::Table(
                coords.into_iter().enumerate().map(|(i, g)| (Point::Index(i as u32), g)).collect(),
            ),
            coordinate_rule: coordinate_rule.into(),
            stabiliser: Vec::new(),
            elements: None,
        };
        space.stabiliser =
            elements.iter().filter(|g| space.act(g, &space.origin) == space.origin).cloned().collect();
        space.elements = Some(elements);
        Ok(space)
    }

    /// Replaces the coordinate system without validating it (finite spaces
    /// only). Use [`axioms::verify_axioms`] to check the result.
    pub fn with_coordinate_table(
        mut self,
        table: impl IntoIterator<Item = (Point, GroupElement)>,
        rule: impl Into<String>,
    ) -> Result<Self, SpaceError> {
        if !self.is_finite() {
            return Err(SpaceError::Unsupported("coordinate tables need a finite space".into()));
        }
        let mut map = match &self.coordinates {
            Coordinates::Table(m) => m.clone(),
            Coordinates::Translation => HashMap::new(),
        };
        for (p, g) in table {
            self.check_point(&p)?;
            self.group.validate(&g)?;
            map.insert(p, g);
        }
        self.coordinates = Coordinates::Table(map);
        self.coordinate_rule = rule.into();
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn point_set(&self) -> &PointSet {
        &self.points
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn coordinate_rule(&self) -> &str {
        &self.coordinate_rule
    }

    /// The enumerated stabiliser `G₀` of `m₀`, identity first.
    pub fn stabiliser(&self) -> &[GroupElement] {
        &self.stabiliser
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.points, PointSet::Finite { .. })
    }

    /// `|M|` for finite spaces.
    pub fn size(&self) -> Option<usize> {
        match self.points {
            PointSet::Finite { size } => Some(size as usize),
            _ => None,
        }
    }

    /// All group elements of a finite space, breadth-first.
    pub fn group_elements(&self) -> Option<&[GroupElement]> {
        self.elements.as_deref()
    }

    pub fn check_point(&self, m: &Point) -> Result<(), SpaceError> {
        let ok = match (&self.points, m) {
            (PointSet::Finite { size }, Point::Index(i)) => i < size,
            (PointSet::Lattice { dim }, Point::Lattice(v)) => v.len() == *dim,
            (PointSet::Free { rank }, Point::Word(w)) => w.rank_used() <= *rank,
            (PointSet::Semidirect, p) => self.normal().validate(&point_to_element(p)).is_ok(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(SpaceError::UnknownPoint(m.to_string()))
        }
    }

    fn normal(&self) -> &Group {
        &self.group.semidirect_data().expect("semidirect space").normal
    }

    /// The left action `g ⟳ m`.
    pub fn act(&self, g: &GroupElement, m: &Point) -> Point {
        match (g, m) {
            (GroupElement::Perm(p), Point::Index(i)) => Point::Index(p.apply(*i)),
            (GroupElement::Tuple(v), Point::Lattice(x)) => {
                Point::Lattice(v.iter().zip(x).map(|(a, b)| a + b).collect())
            }
            (GroupElement::Word(w), Point::Word(x)) => Point::Word(w.mul(x)),
            (GroupElement::Pair(g0, h), m) => {
                let d = self.group.semidirect_data().expect("pair acting outside semidirect space");
                let twisted = d.twist.apply(&d.normal, g0, &point_to_element(m));
                element_to_point(&d.normal.product(h, &twisted)).expect("normal factor point")
            }
            _ => panic!("{g} cannot act on {m}"),
        }
    }

    /// The coordinate `g_{m₀,m}`.
    pub fn coordinate(&self, m: &Point) -> GroupElement {
        match &self.coordinates {
            Coordinates::Table(t) => t.get(m).cloned().unwrap_or_else(|| panic!("no coordinate for {m}")),
            Coordinates::Translation => match &self.points {
                PointSet::Semidirect => GroupElement::pair(
                    self.group.semidirect_data().expect("semidirect").base.identity(),
                    point_to_element(m),
                ),
                _ => point_to_element(m),
            },
        }
    }

    pub fn identity_coset(&self) -> Coset {
        Coset { point: self.origin.clone(), rep: self.group.identity() }
    }

    /// The coset `gG₀`.
    pub fn coset(&self, g: &GroupElement) -> Result<Coset, SpaceError> {
        self.group.validate(g)?;
        Ok(Coset { point: self.act(g, &self.origin), rep: g.clone() })
    }

    /// The coset whose elements move `m₀` to `p`.
    pub fn coset_at(&self, p: &Point) -> Result<Coset, SpaceError> {
        self.check_point(p)?;
        let coord = self.coordinate(p);
        if self.act(&coord, &self.origin) == *p {
            return Ok(Coset { point: p.clone(), rep: coord });
        }
        let elements = self.elements.as_ref().ok_or_else(|| SpaceError::NotTransitive(p.to_string()))?;
        elements
            .iter()
            .find(|g| self.act(g, &self.origin) == *p)
            .map(|g| Coset { point: p.clone(), rep: g.clone() })
            .ok_or_else(|| SpaceError::NotTransitive(p.to_string()))
    }

    pub fn is_identity_coset(&self, c: &Coset) -> bool {
        c.point == self.origin
    }

    /// All elements `rep·g₀` of the coset.
    pub fn coset_elements(&self, c: &Coset) -> Vec<GroupElement> {
        self.stabiliser.iter().map(|g0| self.group.product(&c.rep, g0)).collect()
    }

    /// Every coset of a finite space, in point order.
    pub fn all_cosets(&self) -> Result<Vec<Coset>, SpaceError> {
        self.all_points()?.iter().map(|p| self.coset_at(p)).collect()
    }

    /// Distinct cosets of the elements of the group ball of radius `r`, in
    /// ball order (so the identity coset comes first).
    pub fn coset_ball(&self, r: usize) -> Vec<Coset> {
        let mut seen = HashSet::new();
        self.group
            .ball(r)
            .into_iter()
            .map(|g| Coset { point: self.act(&g, &self.origin), rep: g })
            .filter(|c| seen.insert(c.point.clone()))
            .collect()
    }

    /// `m ⊵ 𝔤`.
    pub fn semi_action(&self, m: &Point, c: &Coset) -> Point {
        self.act(&self.coordinate(m), &c.point)
    }

    /// `g_{m₀,m}·g ⟳ m₀`, evaluated with an explicit representative.
    pub fn semi_action_rep(&self, m: &Point, g: &GroupElement) -> Point {
        self.act(&self.group.product(&self.coordinate(m), g), &self.origin)
    }

    /// `A ⊵ E`, deduplicated, in first-seen order.
    pub fn semi_action_set(&self, a: &[Point], e: &[Coset]) -> Vec<Point> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for m in a {
            for c in e {
                let p = self.semi_action(m, c);
                if seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// The full fiber `{m ∈ M : m ⊵ 𝔤 = y}`, computed in closed form for the
    /// infinite backends and by scanning for finite spaces.
    pub fn exact_fiber(&self, y: &Point, c: &Coset) -> Vec<Point> {
        match (&self.points, &self.coordinates) {
            (PointSet::Finite { size }, _) => (0..*size)
                .map(Point::Index)
                .filter(|m| self.semi_action(m, c) == *y)
                .collect(),
            (PointSet::Lattice { .. }, Coordinates::Translation) => match (y, &c.point) {
                (Point::Lattice(a), Point::Lattice(t)) => {
                    vec![Point::Lattice(a.iter().zip(t).map(|(x, s)| x - s).collect())]
                }
                _ => panic!("lattice space with non-lattice points"),
            },
            (PointSet::Free { .. }, Coordinates::Translation) => match (y, &c.point) {
                (Point::Word(a), Point::Word(t)) => vec![Point::Word(a.mul(&t.inverse()))],
                _ => panic!("free space with non-word points"),
            },
            (PointSet::Semidirect, Coordinates::Translation) => {
                // (e,m) ⟳ p = m·p in H
                let h = self.normal();
                let m = h.product(&point_to_element(y), &h.invert(&point_to_element(&c.point)));
                vec![element_to_point(&m).expect("normal factor point")]
            }
            _ => unreachable!("coordinate tables exist only on finite spaces"),
        }
    }

    /// `{m ∈ window : m ⊵ 𝔤 ∈ A}`, certified when every exact fiber of `A`
    /// lies inside the window.
    pub fn preimage(&self, c: &Coset, a: &[Point], window: &Window) -> Preimage {
        let targets: HashSet<&Point> = a.iter().collect();
        let points: Vec<Point> = window
            .points()
            .iter()
            .filter(|m| targets.contains(&self.semi_action(m, c)))
            .cloned()
            .collect();
        let certified = a
            .iter()
            .all(|y| self.exact_fiber(y, c).iter().all(|m| window.contains(m)));
        let bound = self.stabiliser.len() * targets.len();
        assert!(
            points.len() <= bound,
            "preimage of {} points under {c} has {} > |G0|·|A| = {bound} points",
            targets.len(),
            points.len()
        );
        Preimage { points, certified }
    }

    /// Every point of a finite space.
    pub fn all_points(&self) -> Result<Vec<Point>, SpaceError> {
        match self.points {
            PointSet::Finite { size } => Ok((0..size).map(Point::Index).collect()),
            _ => Err(SpaceError::NotFinite),
        }
    }

    /// Points within word distance `r` of `m₀`: for the infinite backends the
    /// orbit of `m₀` under the ball of the translation part, for finite spaces
    /// a breadth-first search under the symmetric generators.
    pub fn point_ball(&self, r: usize) -> Vec<Point> {
        match &self.points {
            PointSet::Finite { .. } => {
                let gens = self.group.symmetric_generators();
                let mut seen = HashSet::from([self.origin.clone()]);
                let mut out = vec![self.origin.clone()];
                let mut queue = VecDeque::from([(self.origin.clone(), 0usize)]);
                while let Some((m, d)) = queue.pop_front() {
                    if d >= r {
                        continue;
                    }
                    for s in &gens {
                        let next = self.act(s, &m);
                        if seen.insert(next.clone()) {
                            out.push(next.clone());
                            queue.push_back((next, d + 1));
                        }
                    }
                }
                out
            }
            PointSet::Lattice { .. } | PointSet::Free { .. } => self
                .group
                .ball(r)
                .iter()
                .map(|g| element_to_point(g).expect("translation element"))
                .collect(),
            PointSet::Semidirect => self
                .normal()
                .ball(r)
                .iter()
                .map(|g| element_to_point(g).expect("normal factor point"))
                .collect(),
        }
    }

    /// The lattice box `[lo, hi)ᵈ` in lexicographic order.
    pub fn lattice_box(&self, lo: i64, hi: i64) -> Result<Vec<Point>, SpaceError> {
        let dim = match self.origin {
            Point::Lattice(ref v) => v.len(),
            _ => return Err(SpaceError::Unsupported(format!("{} has no lattice boxes", self.name))),
        };
        let mut out = vec![Vec::new()];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (lo..hi).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(Point::Lattice).collect())
    }

    /// Window with core `ball(core_r)` and halo `ball(halo_r)`.
    pub fn ball_window(&self, core_r: usize, halo_r: usize) -> Result<Window, SpaceError> {
        Window::new(
            self.point_ball(core_r),
            self.point_ball(halo_r.max(core_r)),
            format!("ball r={core_r}, halo r={}", halo_r.max(core_r)),
        )
    }

    /// Window with core `[0,n)ᵈ` and halo `[-margin, n+margin)ᵈ`.
    pub fn box_window(&self, n: i64, margin: i64) -> Result<Window, SpaceError> {
        Window::new(
            self.lattice_box(0, n)?,
            self.lattice_box(-margin, n + margin)?,
            format!("box [0,{n})^d, halo margin {margin}"),
        )
    }

    /// The whole of a finite space, core = halo.
    pub fn whole_window(&self) -> Result<Window, SpaceError> {
        let pts = self.all_points()?;
        Window::new(pts.clone(), pts, format!("all of {}", self.name))
    }

    pub fn parse_point(&self, s: &str) -> Result<Point, SpaceError> {
        let s = s.trim();
        let bad = || SpaceError::ParsePoint(s.to_string());
        let p = match (&self.points, &self.origin) {
            (PointSet::Finite { .. }, _) => Point::Index(s.parse().map_err(|_| bad())?),
            (_, Point::Lattice(_)) => Point::Lattice(parse_tuple(s).map_err(|_| bad())?),
            (_, Point::Word(_)) => Point::Word(s.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        self.check_point(&p)?;
        Ok(p)
    }

    /// Parses a coset written as its base point `g ⟳ m₀`.
    pub fn parse_coset(&self, s: &str) -> Result<Coset, SpaceError> {
        self.coset_at(&self.parse_point(s)?)
    }
}

/// Reads a lattice or word point as the translation element it names.
pub fn point_to_element(p: &Point) -> GroupElement {
    match p {
        Point::Lattice(v) => GroupElement::Tuple(v.clone()),
        Point::Word(w) => GroupElement::Word(w.clone()),
        Point::Index(i) => panic!("index point {i} has no translation element"),
    }
}

pub fn element_to_point(g: &GroupElement) -> Result<Point, SpaceError> {
    match g {
        GroupElement::Tuple(v) => Ok(Point::Lattice(v.clone())),
        GroupElement::Word(w) => Ok(Point::Word(w.clone())),
        other => Err(SpaceError::Unsupported(format!("{other} is not a translation element"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn identity_coset_fixes_points() {
        for name in ["zd:2", "free:2", "affine:5", "hyperoct:2"] {
            let s = catalog::space(name).unwrap();
            let id = s.identity_coset();
            for m in s.point_ball(2) {
                assert_eq!(s.semi_action(&m, &id), m, "{name}");
            }
        }
    }

    #[test]
    fn affine_three_translation_coset() {
        let s = catalog::space("affine:3").unwrap();
        let c = s.parse_coset("1").unwrap();
        assert_eq!(s.semi_action(&Point::Index(1), &c), Point::Index(2));
    }

    #[test]
    fn lattice_semi_action_is_addition() {
        let s = CellSpace::lattice(2);
        let c = s.parse_coset("(1,0)").unwrap();
        assert_eq!(s.semi_action(&Point::Lattice(vec![3, 3]), &c), Point::Lattice(vec![4, 3]));
    }

    #[test]
    fn free_semi_action_is_right_multiplication() {
        let s = CellSpace::free(2).unwrap();
        for w in s.point_ball(2) {
            for g in s.group().ball(2) {
                let c = s.coset(&g).unwrap();
                let expected = match (&w, &g) {
                    (Point::Word(x), GroupElement::Word(y)) => Point::Word(x.mul(y)),
                    _ => unreachable!(),
                };
                assert_eq!(s.semi_action(&w, &c), expected);
            }
        }
    }

    #[test]
    fn preimages() {
        let z2 = CellSpace::lattice(2);
        let w = z2.box_window(2, 2).unwrap();
        let c = z2.parse_coset("(1,0)").unwrap();
        let pre = z2.preimage(&c, &[Point::Lattice(vec![0, 0])], &w);
        assert_eq!(pre.points, vec![Point::Lattice(vec![-1, 0])]);
        assert!(pre.certified);

        let a3 = catalog::space("affine:3").unwrap();
        let w = a3.whole_window().unwrap();
        let c = a3.parse_coset("1").unwrap();
        let pre = a3.preimage(&c, &[Point::Index(2)], &w);
        assert_eq!(pre.points, vec![Point::Index(1)]);
        assert!(pre.points.len() <= a3.stabiliser().len());

        let a: Vec<Point> = vec![Point::Index(0), Point::Index(2)];
        let pre = a3.preimage(&a3.identity_coset(), &a, &w);
        assert_eq!(pre.points, a);
    }

    #[test]
    fn small_halo_is_not_certified() {
        let z2 = CellSpace::lattice(2);
        let w = z2.box_window(2, 0).unwrap();
        let c = z2.parse_coset("(1,0)").unwrap();
        let pre = z2.preimage(&c, &[Point::Lattice(vec![0, 0])], &w);
        assert!(pre.points.is_empty());
        assert!(!pre.certified);
    }

    #[test]
    fn coset_equality_ignores_representative() {
        let s = catalog::space("affine:5").unwrap();
        let c = s.parse_coset("3").unwrap();
        for g in s.coset_elements(&c) {
            assert_eq!(s.coset(&g).unwrap(), c);
        }
        assert_eq!(s.coset_elements(&c).len(), 4);
    }

    #[test]
    fn coset_ball_of_free_group() {
        let s = CellSpace::free(2).unwrap();
        let names: Vec<String> = s.coset_ball(1).iter().map(|c| c.to_string()).collect();
        assert_eq!(names, ["e", "a", "A", "b", "B"]);
    }

    #[test]
    fn point_parsing() {
        let s = CellSpace::lattice(2);
        assert!(s.parse_point("(1,2,3)").is_err());
        assert_eq!(s.parse_point("(1,-2)").unwrap().to_string(), "(1,-2)");
        let a = catalog::space("affine:3").unwrap();
        assert!(a.parse_point("3").is_err());
    }
}

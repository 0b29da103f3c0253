//! Group elements and groups over four backends: permutation groups,
//! free abelian groups `ℤᵈ`, free groups with reduced words, and semidirect
//! products `G₀ ⋉ H` with an explicit twisting table.

mod perm;
mod semidirect;
mod word;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub use perm::Perm;
pub use semidirect::Twist;
pub use word::{Word, MAX_FREE_RANK};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("image table {0:?} is not a permutation")]
    NotAPermutation(Vec<u32>),
    #[error("element {element} does not belong to a {backend} group")]
    BackendMismatch { element: String, backend: String },
    #[error("twisting table is not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("twisting table is missing an entry for {0}")]
    MissingTwist(String),
    #[error("group has more than {0} elements")]
    TooLarge(usize),
    #[error("group is infinite")]
    Infinite,
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// An element of one of the supported groups. The variant is the backend tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Perm(Perm),
    Tuple(Vec<i64>),
    Word(Word),
    /// `(g₀, h)` in a semidirect product `G₀ ⋉ H`.
    Pair(Box<GroupElement>, Box<GroupElement>),
}

impl GroupElement {
    pub fn pair(base: GroupElement, normal: GroupElement) -> Self {
        GroupElement::Pair(Box::new(base), Box::new(normal))
    }

    pub fn as_pair(&self) -> Option<(&GroupElement, &GroupElement)> {
        match self {
            GroupElement::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => write!(f, "{p}"),
            GroupElement::Tuple(v) => {
                write!(f, "(")?;
                for (k, x) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::Word(w) => write!(f, "{w}"),
            GroupElement::Pair(a, b) => write!(f, "<{a};{b}>"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct SemidirectData {
    pub(crate) base: Group,
    pub(crate) normal: Group,
    pub(crate) twist: Twist,
}

#[derive(Clone, Debug)]
pub enum Backend {
    Permutation { degree: usize },
    Lattice { dim: usize },
    Free { rank: usize },
    Semidirect(Box<SemidirectDataHandle>),
}

/// Opaque wrapper so the semidirect internals stay crate-private.
#[derive(Clone, Debug)]
pub struct SemidirectDataHandle(pub(crate) SemidirectData);

impl Backend {
    fn tag(&self) -> &'static str {
        match self {
            Backend::Permutation { .. } => "permutation",
            Backend::Lattice { .. } => "lattice",
            Backend::Free { .. } => "free",
            Backend::Semidirect(_) => "semidirect",
        }
    }
}

/// A finitely generated group. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Group {
    backend: Backend,
    generators: Vec<GroupElement>,
    symmetric: bool,
}

impl Group {
    /// Permutation group of the given degree generated by `generators`.
    pub fn permutation(degree: usize, generators: Vec<Perm>) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::BackendMismatch {
                    element: g.to_string(),
                    backend: format!("permutation group of degree {degree}"),
                });
            }
        }
        Ok(Group {
            backend: Backend::Permutation { degree },
            generators: generators.into_iter().map(GroupElement::Perm).collect(),
            symmetric: false,
        })
    }

    /// `ℤᵈ` with the standard basis as generators.
    pub fn lattice(dim: usize) -> Self {
        let generators = (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                GroupElement::Tuple(v)
            })
            .collect();
        Group { backend: Backend::Lattice { dim }, generators, symmetric: false }
    }

    /// The free group on `rank` letters.
    pub fn free(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 || rank > MAX_FREE_RANK {
            return Err(GroupError::Unsupported(format!(
                "free group rank {rank} (supported: 1..={MAX_FREE_RANK})"
            )));
        }
        let generators = (0..rank).map(|i| GroupElement::Word(Word::generator(i))).collect();
        Ok(Group { backend: Backend::Free { rank }, generators, symmetric: false })
    }

    /// Builds `G₀ ⋉ H` with product `(g₀,h)(g₀′,h′) = (g₀g₀′, h·τ(g₀)(h′))`.
    ///
    /// `base` must be finite; `normal` must be a lattice or free group with its
    /// standard generators. The twist is checked to be a homomorphism on every
    /// pair of base elements.
    pub fn semidirect(base: Group, normal: Group, twist: Twist) -> Result<Self, GroupError> {
        semidirect::build(base, normal, twist)
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Whether the declared generators are already closed under inversion.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub(crate) fn semidirect_data(&self) -> Option<&SemidirectData> {
        match &self.backend {
            Backend::Semidirect(d) => Some(&d.0),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match &self.backend {
            Backend::Permutation { .. } => true,
            Backend::Lattice { dim } => *dim == 0,
            Backend::Free { .. } => false,
            Backend::Semidirect(d) => d.0.base.is_finite() && d.0.normal.is_finite(),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &self.backend {
            Backend::Permutation { degree } => GroupElement::Perm(Perm::identity(*degree)),
            Backend::Lattice { dim } => GroupElement::Tuple(vec![0; *dim]),
            Backend::Free { .. } => GroupElement::Word(Word::identity()),
            Backend::Semidirect(d) => {
                GroupElement::pair(d.0.base.identity(), d.0.normal.identity())
            }
        }
    }

    /// Checks that `g` has the shape of an element of this group.
    pub fn validate(&self, g: &GroupElement) -> Result<(), GroupError> {
        let ok = match (&self.backend, g) {
            (Backend::Permutation { degree }, GroupElement::Perm(p)) => p.degree() == *degree,
            (Backend::Lattice { dim }, GroupElement::Tuple(v)) => v.len() == *dim,
            (Backend::Free { rank }, GroupElement::Word(w)) => w.rank_used() <= *rank,
            (Backend::Semidirect(d), GroupElement::Pair(a, b)) => {
                d.0.base.validate(a).is_ok() && d.0.normal.validate(b).is_ok()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(GroupError::BackendMismatch {
                element: g.to_string(),
                backend: self.backend.tag().to_string(),
            })
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.validate(g)?;
        self.validate(h)?;
        Ok(self.product(g, h))
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.validate(g)?;
        Ok(self.invert(g))
    }

    pub fn equal(&self, g: &GroupElement, h: &GroupElement) -> Result<bool, GroupError> {
        self.validate(g)?;
        self.validate(h)?;
        Ok(g == h)
    }

    /// Product of two elements already known to belong to this group.
    ///
    /// Panics on a backend mismatch; use [`Group::mul`] for unchecked input.
    pub fn product(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        match (g, h) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => GroupElement::Perm(a.compose(b)),
            (GroupElement::Tuple(a), GroupElement::Tuple(b)) => {
                GroupElement::Tuple(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupElement::Word(a), GroupElement::Word(b)) => GroupElement::Word(a.mul(b)),
            (GroupElement::Pair(g0, h0), GroupElement::Pair(g1, h1)) => {
                let d = self.semidirect_data().expect("pair element outside a semidirect group");
                let base = d.base.product(g0, g1);
                let twisted = d.twist.apply(&d.normal, g0, h1);
                GroupElement::pair(base, d.normal.product(h0, &twisted))
            }
            _ => panic!("backend mismatch: {g} * {h}"),
        }
    }

    /// Inverse of an element already known to belong to this group.
    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        match g {
            GroupElement::Perm(p) => GroupElement::Perm(p.inverse()),
            GroupElement::Tuple(v) => GroupElement::Tuple(v.iter().map(|x| -x).collect()),
            GroupElement::Word(w) => GroupElement::Word(w.inverse()),
            GroupElement::Pair(g0, h) => {
                // (g₀, h)⁻¹ = (g₀⁻¹, τ(g₀⁻¹)(h⁻¹))
                let d = self.semidirect_data().expect("pair element outside a semidirect group");
                let g0_inv = d.base.invert(g0);
                let h_inv = d.normal.invert(h);
                let twisted = d.twist.apply(&d.normal, &g0_inv, &h_inv);
                GroupElement::pair(g0_inv, twisted)
            }
        }
    }

    /// Generators followed by their inverses, deduplicated, in declaration order
    /// (`s₁, s₁⁻¹, s₂, s₂⁻¹, ...`).
    pub fn symmetric_generators(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = Vec::with_capacity(2 * self.generators.len());
        let id = self.identity();
        for s in &self.generators {
            for t in [s.clone(), self.invert(s)] {
                if t != id && !out.contains(&t) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Elements expressible as products of at most `radius` symmetric
    /// generators, in breadth-first order (ties broken by generator order).
    pub fn ball(&self, radius: usize) -> Vec<GroupElement> {
        self.layers(radius, usize::MAX).0
    }

    /// All elements of a finite group, in breadth-first order.
    pub fn elements(&self, limit: usize) -> Result<Vec<GroupElement>, GroupError> {
        if !self.is_finite() {
            return Err(GroupError::Infinite);
        }
        let (elems, complete) = self.layers(usize::MAX, limit);
        if complete {
            Ok(elems)
        } else {
            Err(GroupError::TooLarge(limit))
        }
    }

    fn layers(&self, radius: usize, limit: usize) -> (Vec<GroupElement>, bool) {
        let gens = self.symmetric_generators();
        let id = self.identity();
        let mut seen: HashSet<GroupElement> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut frontier: VecDeque<(GroupElement, usize)> = VecDeque::from([(id, 0)]);
        while let Some((g, depth)) = frontier.pop_front() {
            if depth >= radius {
                continue;
            }
            for s in &gens {
                let next = self.product(&g, s);
                if seen.insert(next.clone()) {
                    if out.len() >= limit {
                        return (out, false);
                    }
                    out.push(next.clone());
                    frontier.push_back((next, depth + 1));
                }
            }
        }
        (out, true)
    }

    /// Parses an element written the way [`GroupElement`]'s `Display` prints it.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement, GroupError> {
        let s = s.trim();
        let g = match &self.backend {
            Backend::Permutation { .. } => {
                let inner = s.trim_start_matches('[').trim_end_matches(']');
                let images = inner
                    .split([' ', ','])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<u32>().map_err(|e| GroupError::Parse(format!("{s:?}: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                GroupElement::Perm(Perm::new(images)?)
            }
            Backend::Lattice { .. } => GroupElement::Tuple(parse_tuple(s)?),
            Backend::Free { .. } => GroupElement::Word(s.parse()?),
            Backend::Semidirect(d) => {
                let inner = s
                    .strip_prefix('<')
                    .and_then(|t| t.strip_suffix('>'))
                    .ok_or_else(|| GroupError::Parse(format!("expected <g0;h>, got {s:?}")))?;
                let (a, b) = inner
                    .split_once(';')
                    .ok_or_else(|| GroupError::Parse(format!("expected <g0;h>, got {s:?}")))?;
                GroupElement::pair(d.0.base.parse_element(a)?, d.0.normal.parse_element(b)?)
            }
        };
        self.validate(&g)?;
        Ok(g)
    }
}

pub(crate) fn parse_tuple(s: &str) -> Result<Vec<i64>, GroupError> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| GroupError::Parse(format!("{s:?}: {e}")))
        })
        .collect()
}

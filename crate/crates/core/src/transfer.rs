//! Left-to-right transfer: checks for `G = G₀H`, a free transitive `H` with
//! central coordinates, inverse pairs `(·⊵𝔤, h⟳·)`, and the semidirect
//! cell-space construction.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::group::{Group, GroupElement, GroupError, Twist};
use crate::measure::FAMeasure;
use crate::report::{Check, CheckResult};
use crate::scalar::Scalar;
use crate::space::{CellSpace, Coset, Point, PointSet, SpaceError, Window};

pub use crate::catalog::affine_space;

/// Radius of the group ball used to sample infinite subgroups.
pub const SUBGROUP_SAMPLE_RADIUS: usize = 2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransferError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("the action of H is not free: {0}")]
    NotFree(String),
    #[error("stabiliser of the origin is not G0 x {{e}}: {0}")]
    Stabiliser(String),
    #[error("no element of H inverts the semi-action of {0} on the sample")]
    NoInversePair(String),
    #[error("unknown subgroup {0:?} (expected translations, dilations or whole)")]
    UnknownSubgroup(String),
    #[error("universe mismatch: {0}")]
    ScopeMismatch(String),
}

/// A subgroup `H ≤ G`, given with a membership test.
#[derive(Clone, Debug)]
pub enum Subgroup {
    Whole,
    /// The closure of finitely many elements of a finite group.
    Finite(Vec<GroupElement>),
    /// `{e} × H` inside `G₀ ⋉ H`.
    SemidirectKernel,
}

impl Subgroup {
    /// `"whole"`, `"translations"` (the group generated by the coordinates)
    /// or `"dilations"` (the stabiliser `G₀`).
    pub fn by_name(space: &CellSpace, name: &str) -> Result<Self, TransferError> {
        match (name, space.point_set()) {
            ("whole", _) => Ok(Subgroup::Whole),
            ("translations", PointSet::Lattice { .. } | PointSet::Free { .. }) => Ok(Subgroup::Whole),
            ("translations", PointSet::Semidirect) => Ok(Subgroup::SemidirectKernel),
            ("translations", PointSet::Finite { .. }) => {
                let coords = space.all_points()?.iter().map(|m| space.coordinate(m)).collect();
                Ok(Subgroup::Finite(closure(space.group(), coords)))
            }
            ("dilations" | "stabiliser", _) => Ok(Subgroup::Finite(space.stabiliser().to_vec())),
            _ => Err(TransferError::UnknownSubgroup(name.to_string())),
        }
    }

    /// The elements used as a sample: all of them when finite, otherwise a
    /// ball of radius [`SUBGROUP_SAMPLE_RADIUS`].
    pub fn sample(&self, space: &CellSpace) -> Vec<GroupElement> {
        match self {
            Subgroup::Whole => match space.group_elements() {
                Some(all) => all.to_vec(),
                None => space.group().ball(SUBGROUP_SAMPLE_RADIUS),
            },
            Subgroup::Finite(elems) => elems.clone(),
            Subgroup::SemidirectKernel => {
                let d = space.group().semidirect_data().expect("semidirect space");
                let id = d.base.identity();
                d.normal
                    .ball(SUBGROUP_SAMPLE_RADIUS)
                    .into_iter()
                    .map(|h| GroupElement::pair(id.clone(), h))
                    .collect()
            }
        }
    }

    pub fn contains(&self, space: &CellSpace, g: &GroupElement) -> bool {
        match self {
            Subgroup::Whole => space.group().validate(g).is_ok(),
            Subgroup::Finite(elems) => elems.contains(g),
            Subgroup::SemidirectKernel => {
                let d = space.group().semidirect_data().expect("semidirect space");
                g.as_pair().is_some_and(|(g0, _)| *g0 == d.base.identity())
            }
        }
    }
}

fn closure(group: &Group, gens: Vec<GroupElement>) -> Vec<GroupElement> {
    let mut seen: HashSet<GroupElement> = HashSet::from([group.identity()]);
    let mut out = vec![group.identity()];
    let mut i = 0;
    while i < out.len() {
        for s in &gens {
            let next = group.product(&out[i], s);
            if seen.insert(next.clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct InversePair {
    pub coset: String,
    pub h: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub verdicts: Vec<CheckResult>,
    pub witnesses: Vec<InversePair>,
    /// Sampled cosets out of the total, when the total is finite.
    pub coverage: String,
}

impl TransferReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed) && self.witnesses.iter().all(|w| w.h.is_some())
    }

    pub fn verdict(&self, name: &str) -> Option<&CheckResult> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

/// Checks the transfer hypotheses for `H` on the sampled points and cosets.
pub fn check_transfer_conditions(
    space: &CellSpace,
    h: &Subgroup,
    sample: &Window,
    cosets: &[Coset],
) -> TransferReport {
    let grp = space.group();
    let hs = h.sample(space);
    let points = sample.points();
    let mut verdicts = Vec::new();

    let mut c = Check::new("G = G0 H");
    let elements: Vec<GroupElement> = match space.group_elements() {
        Some(all) => all.to_vec(),
        None => cosets.iter().flat_map(|k| space.coset_elements(k)).collect(),
    };
    for g in &elements {
        let ok = space.stabiliser().iter().any(|g0| h.contains(space, &grp.product(&grp.invert(g0), g)));
        c.case(ok, || format!("{g} is not in G0 H"));
    }
    verdicts.push(c.done());

    let mut c = Check::new("H transitive");
    for m in points {
        let ok = space
            .coset_at(m)
            .map(|k| space.coset_elements(&k).iter().any(|g| h.contains(space, g)))
            .unwrap_or(false);
        c.case(ok, || format!("no element of H moves the origin to {m}"));
    }
    verdicts.push(c.done());

    let mut c = Check::new("H free");
    let id = grp.identity();
    for x in hs.iter().filter(|x| **x != id) {
        for m in points {
            c.case(space.act(x, m) != *m, || format!("{x} fixes {m}"));
        }
    }
    verdicts.push(c.done());

    let mut c = Check::new("coordinates in Z(H)");
    for m in points {
        let g = space.coordinate(m);
        c.case(h.contains(space, &g), || format!("g_{{0,{m}}} = {g} is not in H"));
        for x in &hs {
            c.case(grp.product(&g, x) == grp.product(x, &g), || format!("g_{{0,{m}}} does not commute with {x}"));
        }
    }
    verdicts.push(c.done());

    let mut c = Check::new("injective semi-action");
    for k in cosets {
        let mut seen = HashSet::new();
        for m in points {
            let y = space.semi_action(m, k);
            let fresh = seen.insert(y.clone());
            c.case(fresh, || format!("{k} is not injective: {y} hit twice"));
        }
    }
    verdicts.push(c.done());

    let witnesses = cosets
        .iter()
        .map(|k| InversePair {
            coset: k.to_string(),
            h: inverse_pair_witness(space, k, h, sample).ok().map(|g| g.to_string()),
        })
        .collect();
    let coverage = match space.size() {
        Some(n) => format!("{} of {n} cosets", cosets.len()),
        None => format!("{} sampled cosets of infinitely many", cosets.len()),
    };
    TransferReport { verdicts, witnesses, coverage }
}

/// Finds `h ∈ H` with `h ⟳ (m ⊵ 𝔤) = m` and `(h ⟳ m) ⊵ 𝔤 = m` on the sample,
/// trying `h = g₀⁻¹·g⁻¹` for `g ∈ 𝔤`, `g₀ ∈ G₀` first and then the sampled
/// elements of `H`.
pub fn inverse_pair_witness(
    space: &CellSpace,
    coset: &Coset,
    h: &Subgroup,
    sample: &Window,
) -> Result<GroupElement, TransferError> {
    let grp = space.group();
    let works = |x: &GroupElement| {
        h.contains(space, x)
            && sample.points().iter().all(|m| {
                space.act(x, &space.semi_action(m, coset)) == *m
                    && space.semi_action(&space.act(x, m), coset) == *m
            })
    };
    let recipe = space.coset_elements(coset).into_iter().flat_map(|g| {
        let g_inv = grp.invert(&g);
        space
            .stabiliser()
            .iter()
            .map(move |g0| grp.product(&grp.invert(g0), &g_inv))
            .collect::<Vec<_>>()
    });
    recipe
        .chain(h.sample(space))
        .find(|x| works(x))
        .ok_or_else(|| TransferError::NoInversePair(coset.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceVerdict {
    pub passed: bool,
    pub cases: usize,
    pub witness: Option<String>,
}

/// Checks `μ({m ⊵ 𝔤}) = μ({h⁻¹ ⟳ m})` for every point of the universe.
pub fn transfer_invariance_check<S: Scalar>(
    space: &CellSpace,
    mu: &FAMeasure<S>,
    coset: &Coset,
    h: &GroupElement,
) -> Result<InvarianceVerdict, TransferError> {
    let all = space.all_points().map_err(|_| TransferError::ScopeMismatch("needs a finite space".into()))?;
    if mu.universe().len() != all.len() || !all.iter().all(|p| mu.universe().contains(p)) {
        return Err(TransferError::ScopeMismatch("measure universe is not the whole space".into()));
    }
    space.group().validate(h)?;
    let h_inv = space.group().invert(h);
    let mut c = Check::new("transfer invariance");
    for m in &all {
        let lhs = mu.weight(&space.semi_action(m, coset));
        let rhs = mu.weight(&space.act(&h_inv, m));
        c.case(lhs.approx_eq(&rhs), || format!("{{{m}}}: {lhs} vs {rhs}"));
    }
    let r = c.done();
    Ok(InvarianceVerdict { passed: r.passed, cases: r.cases, witness: r.witness })
}

/// `G₀ ⋉ H` acting on `M = H` by `(g₀,h) ⟳ m = h·τ(g₀)(m)`, with `m₀ = e_H`
/// and `g_{m₀,m} = (e, m)`. Checks freeness of `H` on itself and that the
/// stabiliser of `m₀` within a sampled ball is exactly `G₀ × {e}`.
pub fn build_semidirect_cellspace(
    name: &str,
    h: Group,
    g0: Group,
    twist: Twist,
) -> Result<CellSpace, TransferError> {
    let group = Group::semidirect(g0, h, twist)?;
    let space = CellSpace::semidirect(name, group)?;
    let d = space.group().semidirect_data().expect("just built");
    let m0 = space.origin().clone();
    let h_ball = d.normal.ball(SUBGROUP_SAMPLE_RADIUS);
    let pts: Vec<Point> = space.point_ball(SUBGROUP_SAMPLE_RADIUS);
    for x in h_ball.iter().filter(|x| **x != d.normal.identity()) {
        let pair = GroupElement::pair(d.base.identity(), x.clone());
        if let Some(m) = pts.iter().find(|m| space.act(&pair, m) == **m) {
            return Err(TransferError::NotFree(format!("{x} fixes {m}")));
        }
    }
    for g in space.group().ball(SUBGROUP_SAMPLE_RADIUS) {
        let fixes = space.act(&g, &m0) == m0;
        let in_g0 = g.as_pair().is_some_and(|(_, x)| *x == d.normal.identity());
        if fixes != in_g0 {
            return Err(TransferError::Stabiliser(g.to_string()));
        }
    }
    Ok(space)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::Perm;
    use crate::Rational;

    fn exhaustive(name: &str, h: &str) -> TransferReport {
        let s = catalog::space(name).unwrap();
        let hh = Subgroup::by_name(&s, h).unwrap();
        check_transfer_conditions(&s, &hh, &s.whole_window().unwrap(), &s.all_cosets().unwrap())
    }

    #[test]
    fn affine_translations_pass() {
        let r = exhaustive("affine:5", "translations");
        assert!(r.passed(), "{:#?}", r.verdicts);
    }

    #[test]
    fn affine_dilations_fail() {
        let r = exhaustive("affine:5", "dilations");
        assert!(!r.verdict("H transitive").unwrap().passed);
        assert!(!r.verdict("H free").unwrap().passed);
        assert!(!r.passed());
    }

    #[test]
    fn lattice_whole_group_passes() {
        let s = catalog::space("zd:2").unwrap();
        let r = check_transfer_conditions(&s, &Subgroup::Whole, &s.ball_window(2, 2).unwrap(), &s.coset_ball(2));
        assert!(r.passed(), "{:#?}", r.verdicts);
    }

    #[test]
    fn inverse_pairs() {
        let s = catalog::space("affine:3").unwrap();
        let h = Subgroup::by_name(&s, "translations").unwrap();
        let w = s.whole_window().unwrap();
        let x = inverse_pair_witness(&s, &s.parse_coset("1").unwrap(), &h, &w).unwrap();
        assert_eq!(x, GroupElement::Perm(Perm::new(vec![2, 0, 1]).unwrap()));
        let e = inverse_pair_witness(&s, &s.identity_coset(), &h, &w).unwrap();
        assert_eq!(e, s.group().identity());

        let z2 = catalog::space("zd:2").unwrap();
        let x = inverse_pair_witness(&z2, &z2.parse_coset("(1,0)").unwrap(), &Subgroup::Whole, &z2.ball_window(2, 2).unwrap()).unwrap();
        assert_eq!(x, GroupElement::Tuple(vec![-1, 0]));
    }

    #[test]
    fn invariance_and_wrong_h() {
        let s = catalog::space("affine:5").unwrap();
        let w = s.whole_window().unwrap();
        let atom = FAMeasure::<Rational>::point_mass(w.clone(), &Point::Index(2)).unwrap();
        let c = s.parse_coset("1").unwrap();
        let h = inverse_pair_witness(&s, &c, &Subgroup::by_name(&s, "translations").unwrap(), &w).unwrap();
        assert!(transfer_invariance_check(&s, &atom, &c, &h).unwrap().passed);
        let wrong = transfer_invariance_check(&s, &atom, &c, &s.group().identity()).unwrap();
        assert!(!wrong.passed && wrong.witness.is_some());
    }

    #[test]
    fn infinite_dihedral_action() {
        let base = Group::permutation(2, vec![Perm::new(vec![1, 0]).unwrap()]).unwrap();
        let normal = Group::lattice(1);
        let twist = Twist::from_generator_images(&base, &normal, vec![vec![GroupElement::Tuple(vec![-1])]]).unwrap();
        let s = build_semidirect_cellspace("dihedral", normal, base.clone(), twist).unwrap();
        let g = GroupElement::pair(base.generators()[0].clone(), GroupElement::Tuple(vec![3]));
        assert_eq!(s.act(&g, &Point::Lattice(vec![4])), Point::Lattice(vec![-1]));
        assert_eq!(s.stabiliser().len(), 2);
    }

    #[test]
    fn trivial_twist_is_a_direct_product() {
        let base = Group::permutation(2, vec![Perm::new(vec![1, 0]).unwrap()]).unwrap();
        let normal = Group::lattice(2);
        let ids = vec![normal.generators().to_vec()];
        let twist = Twist::from_generator_images(&base, &normal, ids).unwrap();
        let s = build_semidirect_cellspace("direct", normal, base.clone(), twist).unwrap();
        let g = GroupElement::pair(base.generators()[0].clone(), GroupElement::Tuple(vec![1, 2]));
        assert_eq!(s.act(&g, &Point::Lattice(vec![5, 5])), Point::Lattice(vec![6, 7]));
    }
}

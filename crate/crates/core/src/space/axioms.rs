//! Sampled verification of the cell-space and semi-action axioms, plus the
//! two constructive helpers built on the defect axiom.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{CellSpace, Coset, Point, SpaceError, Window};
use crate::group::GroupElement;
use crate::report::{Check, CheckResult};

/// Group-element pairs used by the action check are capped at this many
/// elements per side.
const ACTION_SAMPLE: usize = 48;
/// Point pairs used by the transitivity check are capped at this many points
/// per side.
const TRANSITIVITY_SAMPLE: usize = 40;

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub space: String,
    pub checks: Vec<CheckResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Group elements exercised by the checks: every element of a finite group,
/// otherwise all elements of the sampled cosets.
fn group_sample(space: &CellSpace, cosets: &[Coset]) -> Vec<GroupElement> {
    if let Some(all) = space.group_elements() {
        return all.to_vec();
    }
    let mut seen = HashSet::new();
    cosets
        .iter()
        .flat_map(|c| space.coset_elements(c))
        .filter(|g| seen.insert(g.clone()))
        .collect()
}

/// Checks the coordinate property, the stabiliser, the action laws and the
/// semi-action axioms on the points of `sample` and the cosets in `cosets`.
pub fn verify_axioms(space: &CellSpace, sample: &Window, cosets: &[Coset]) -> AxiomReport {
    let grp = space.group();
    let m0 = space.origin();
    let points = sample.points();
    let elements = group_sample(space, cosets);
    let g0: HashSet<&GroupElement> = space.stabiliser().iter().collect();
    let mut checks = Vec::new();

    let mut c = Check::new("coordinates");
    for m in points {
        c.case(space.act(&space.coordinate(m), m0) == *m, || format!("m={m}"));
    }
    checks.push(c.done());

    let mut c = Check::new("stabiliser");
    for s in space.stabiliser() {
        c.case(space.act(s, m0) == *m0, || format!("{s} moves the origin"));
    }
    for g in &elements {
        c.case(space.act(g, m0) != *m0 || g0.contains(g), || format!("{g} fixes the origin but is not listed"));
    }
    checks.push(c.done());

    let mut c = Check::new("action");
    let id = grp.identity();
    for m in points {
        c.case(space.act(&id, m) == *m, || format!("e moves {m}"));
    }
    let few = &elements[..elements.len().min(ACTION_SAMPLE)];
    for g in few {
        for h in few {
            let gh = grp.product(g, h);
            for m in points.iter().take(ACTION_SAMPLE) {
                c.case(space.act(&gh, m) == space.act(g, &space.act(h, m)), || {
                    format!("g={g} h={h} m={m}")
                });
            }
        }
    }
    checks.push(c.done());

    let mut c = Check::new("identity");
    let id_coset = space.identity_coset();
    for m in points {
        c.case(space.semi_action(m, &id_coset) == *m, || format!("m={m}"));
    }
    checks.push(c.done());

    let mut c = Check::new("representatives");
    for m in points {
        for k in cosets {
            let v = space.semi_action(m, k);
            for g in space.coset_elements(k) {
                c.case(space.semi_action_rep(m, &g) == v, || format!("m={m} coset={k} rep={g}"));
            }
        }
    }
    checks.push(c.done());

    let mut c = Check::new("defect");
    for m in points {
        for g in &elements {
            let lhs: Vec<Point> =
                cosets.iter().map(|k| space.semi_action_rep(m, &grp.product(g, k.rep()))).collect();
            let p = space.semi_action_rep(m, g);
            let ok = space.stabiliser().iter().any(|s| {
                cosets
                    .iter()
                    .zip(&lhs)
                    .all(|(k, l)| space.semi_action_rep(&p, &grp.product(s, k.rep())) == *l)
            });
            c.case(ok, || format!("m={m} g={g}"));
        }
    }
    checks.push(c.done());

    let mut c = Check::new("semi-commutation");
    for m in points {
        for g in &elements {
            let gm = space.act(g, m);
            let lhs: Vec<Point> = cosets.iter().map(|k| space.semi_action(&gm, k)).collect();
            let ok = space.stabiliser().iter().any(|s| {
                cosets.iter().zip(&lhs).all(|(k, l)| {
                    space.act(g, &space.semi_action_rep(m, &grp.product(s, k.rep()))) == *l
                })
            });
            c.case(ok, || format!("m={m} g={g}"));
        }
    }
    checks.push(c.done());

    let mut c = Check::new("transitivity");
    let few_points = &points[..points.len().min(TRANSITIVITY_SAMPLE)];
    for m in few_points {
        let inv = grp.invert(&space.coordinate(m));
        for target in few_points {
            let k = space.coset(&grp.product(&inv, &space.coordinate(target)));
            let ok = k.is_ok_and(|k| space.semi_action(m, &k) == *target);
            c.case(ok, || format!("no coset takes {m} to {target}"));
        }
    }
    checks.push(c.done());

    let mut c = Check::new("freeness");
    for m in points {
        let mut images = HashSet::new();
        for k in cosets {
            let img = space.semi_action(m, k);
            let fresh = images.insert(img.clone());
            c.case(fresh, || format!("m={m}: two cosets give {img}"));
        }
    }
    checks.push(c.done());

    AxiomReport { space: space.name().to_string(), checks }
}

/// Finds `g ∈ 𝔤` with `(m ⊵ 𝔤) ⊵ 𝔤′ = m ⊵ g·𝔤′` for every `𝔤′` in `sample`.
pub fn undo_witness(
    space: &CellSpace,
    m: &Point,
    c: &Coset,
    sample: &[Coset],
) -> Result<GroupElement, SpaceError> {
    let grp = space.group();
    let p = space.semi_action(m, c);
    let targets: Vec<Point> = sample.iter().map(|k| space.semi_action(&p, k)).collect();
    space
        .coset_elements(c)
        .into_iter()
        .find(|g| {
            sample
                .iter()
                .zip(&targets)
                .all(|(k, t)| space.semi_action_rep(m, &grp.product(g, k.rep())) == *t)
        })
        .ok_or_else(|| SpaceError::Integrity(format!("no element of {c} undoes the semi-action at {m}")))
}

/// `E″` with `(m ⊵ E) ⊵ E′ = m ⊵ E″`, built from undo witnesses and verified
/// extensionally. `|E″| ≤ |E|·|E′|`.
pub fn compose_expansion(
    space: &CellSpace,
    m: &Point,
    e: &[Coset],
    e2: &[Coset],
) -> Result<Vec<Coset>, SpaceError> {
    let grp = space.group();
    let mut out: Vec<Coset> = Vec::new();
    for k in e {
        let g = undo_witness(space, m, k, e2)?;
        for k2 in e2 {
            let c = space.coset(&grp.product(&g, k2.rep()))?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    let lhs: HashSet<Point> = space.semi_action_set(&space.semi_action_set(std::slice::from_ref(m), e), e2).into_iter().collect();
    let rhs: HashSet<Point> = space.semi_action_set(std::slice::from_ref(m), &out).into_iter().collect();
    if lhs != rhs {
        return Err(SpaceError::Integrity(format!("composed expansion disagrees at {m}")));
    }
    Ok(out)
}

/// The point-independent product `{g·𝔤′ : g ∈ 𝔤 ∈ E, 𝔤′ ∈ E′}`.
///
/// It contains the `E″` of [`compose_expansion`] for every `m`, so
/// `m ⊵ (E·E′) ⊇ (m ⊵ E) ⊵ E′`; equality holds when `G₀·E′ ⊆ E′`.
pub fn product_cosets(space: &CellSpace, e: &[Coset], e2: &[Coset]) -> Vec<Coset> {
    let grp = space.group();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in e {
        for g in space.coset_elements(k) {
            for k2 in e2 {
                let prod = grp.product(&g, k2.rep());
                let c = Coset { point: space.act(&prod, space.origin()), rep: prod };
                if seen.insert(c.point.clone()) {
                    out.push(c);
                }
            }
        }
    }
    out
}

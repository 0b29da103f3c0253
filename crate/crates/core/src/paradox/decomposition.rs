//! 2-to-1 maps, paradoxical decompositions and their windowed verification.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::harem::{BipartiteGraph, Matching};
use super::ParadoxError;
use crate::folner::ExpansionSet;
use crate::measure::{funcamact, BoundedFn, FAMeasure};
use crate::report::{Check, CheckResult};
use crate::scalar::Scalar;
use crate::space::{CellSpace, Coset, Point, Window};
use crate::Rational;

/// `φ` with its two sections `ψ`, `ψ′`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoToOneMap {
    /// Left vertices with both sections defined, in graph order.
    pub domain: Vec<Point>,
    /// Right vertices on which `φ` is claimed exact.
    pub interior: Vec<Point>,
    pub phi: HashMap<Point, Point>,
    pub psi: HashMap<Point, Point>,
    pub psi_prime: HashMap<Point, Point>,
}

impl TwoToOneMap {
    /// `|φ⁻¹(m)|` for each domain point.
    pub fn fiber_sizes(&self) -> HashMap<Point, usize> {
        let mut out: HashMap<Point, usize> = self.domain.iter().map(|m| (m.clone(), 0)).collect();
        for x in self.phi.values() {
            if let Some(c) = out.get_mut(x) {
                *c += 1;
            }
        }
        out
    }
}

/// Reads `φ`, `ψ`, `ψ′` off an interior-perfect `(1,2)`-matching. The matched
/// right vertex with the lower index becomes `ψ(m)`.
pub fn two_to_one_from_matching(g: &BipartiteGraph, m: &Matching) -> Result<TwoToOneMap, ParadoxError> {
    if m.k != 2 {
        return Err(ParadoxError::BadK(m.k));
    }
    let unmatched: Vec<String> = (0..g.left.len())
        .filter(|&x| g.left_interior[x] && m.left_matches[x].len() != 2)
        .map(|x| g.left[x].to_string())
        .chain(
            (0..g.right.len())
                .filter(|&y| g.right_interior[y] && m.right_match[y].is_none())
                .map(|y| g.right[y].to_string()),
        )
        .collect();
    if !unmatched.is_empty() {
        return Err(ParadoxError::NotPerfect(unmatched));
    }
    let mut map = TwoToOneMap {
        domain: Vec::new(),
        interior: (0..g.right.len()).filter(|&y| g.right_interior[y]).map(|y| g.right[y].clone()).collect(),
        phi: HashMap::new(),
        psi: HashMap::new(),
        psi_prime: HashMap::new(),
    };
    for (y, x) in m.right_match.iter().enumerate() {
        if let Some(x) = x {
            map.phi.insert(g.right[y].clone(), g.left[*x].clone());
        }
    }
    for (x, ys) in m.left_matches.iter().enumerate() {
        if let [y1, y2] = ys.as_slice() {
            let (lo, hi) = if y1 < y2 { (y1, y2) } else { (y2, y1) };
            map.domain.push(g.left[x].clone());
            map.psi.insert(g.left[x].clone(), g.right[*lo].clone());
            map.psi_prime.insert(g.left[x].clone(), g.right[*hi].clone());
        }
    }
    Ok(map)
}

/// A candidate `(E, {A_e}, {B_e})` on a window; `a[i]`, `b[i]` belong to
/// `e.cosets()[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub e: ExpansionSet,
    pub a: Vec<Vec<Point>>,
    pub b: Vec<Vec<Point>>,
    pub scope: Window,
    /// False when some point had two cosets with the same image, so the
    /// first-match assignment was a tie-break.
    pub free: bool,
}

impl Decomposition {
    pub fn note(&self) -> &'static str {
        if self.free {
            "first match in E order"
        } else {
            "freeness not guaranteed"
        }
    }
}

/// `A_e = {m : m ⊵ e = ψ(m)}`, `B_e = {m : m ⊵ e = ψ′(m)}`, taking the first
/// matching `e` in `E` order.
pub fn decomposition_from_map(
    space: &CellSpace,
    map: &TwoToOneMap,
    e: &ExpansionSet,
    scope: &Window,
) -> Result<Decomposition, ParadoxError> {
    let n = e.len();
    let (mut a, mut b) = (vec![Vec::new(); n], vec![Vec::new(); n]);
    let mut free = true;
    for m in &map.domain {
        let images: Vec<Point> = e.cosets().iter().map(|c| space.semi_action(m, c)).collect();
        if images.iter().collect::<HashSet<_>>().len() < n {
            free = false;
        }
        let pick = |target: &Point| images.iter().position(|p| p == target);
        let i = pick(&map.psi[m]).ok_or_else(|| ParadoxError::MissingCoset(m.to_string()))?;
        let j = pick(&map.psi_prime[m]).ok_or_else(|| ParadoxError::MissingCoset(m.to_string()))?;
        a[i].push(m.clone());
        b[j].push(m.clone());
    }
    Ok(Decomposition { e: e.clone(), a, b, scope: scope.clone(), free })
}

/// Words ending in generator `g` (1-based, signed letter).
fn ends_with(p: &Point, letter: i32) -> bool {
    matches!(p, Point::Word(w) if w.last() == Some(letter))
}

fn is_positive_power(p: &Point, letter: i32) -> bool {
    matches!(p, Point::Word(w) if !w.is_empty() && w.letters().iter().all(|&l| l == letter))
}

/// The last-letter decomposition of `F₂` under right multiplication on the
/// core of `scope`, with `E = {e, a⁻¹, b⁻¹}`:
/// `A_e` = words ending in `a`, `A_{a⁻¹}` = the rest;
/// `B_e` = words ending in `b` except the powers `bⁿ`, `B_{b⁻¹}` = the rest.
pub fn canonical_free_decomposition(space: &CellSpace, scope: &Window) -> Result<Decomposition, ParadoxError> {
    if space.name() != "free:2" {
        return Err(ParadoxError::Unsupported(format!("{} is not free:2", space.name())));
    }
    let e = ExpansionSet::new(
        space,
        ["e", "A", "B"].iter().map(|s| space.parse_coset(s)).collect::<Result<Vec<_>, _>>()?,
    );
    let (mut a, mut b) = (vec![Vec::new(); 3], vec![Vec::new(); 3]);
    for m in scope.core() {
        a[if ends_with(m, 1) { 0 } else { 1 }].push(m.clone());
        b[if ends_with(m, 2) && !is_positive_power(m, 2) { 0 } else { 2 }].push(m.clone());
    }
    Ok(Decomposition { e, a, b, scope: scope.clone(), free: true })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub checks: Vec<CheckResult>,
    /// Points of the scope whose full fibers lie in the core.
    pub interior: usize,
    /// First point hit by two pieces, if any.
    pub overlap: Option<String>,
    pub note: &'static str,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn partition_check(name: &'static str, core: &[Point], sets: &[Vec<Point>], e: &[Coset]) -> CheckResult {
    let mut c = Check::new(name);
    let mut owner: HashMap<&Point, usize> = HashMap::new();
    let core_set: HashSet<&Point> = core.iter().collect();
    for (i, set) in sets.iter().enumerate() {
        for m in set {
            c.case(core_set.contains(m), || format!("{m} is outside the core"));
            if let Some(j) = owner.insert(m, i) {
                c.case(false, || format!("{m} is in the pieces for {} and {}", e[j], e[i]));
            }
        }
    }
    for m in core {
        c.case(owner.contains_key(m), || format!("{m} is in no piece"));
    }
    c.done()
}

/// Checks the decomposition on its window: both families partition the core,
/// `· ⊵ e` is injective on every piece, the images are pairwise disjoint and
/// cover the interior, and `𝟙 = Σ 𝟙_{A_e} ⊳ e + Σ 𝟙_{B_e} ⊳ e` there.
pub fn verify_decomposition(space: &CellSpace, d: &Decomposition) -> DecompositionReport {
    let cosets = d.e.cosets();
    let core = d.scope.core();
    let mut checks = vec![
        partition_check("A partitions core", core, &d.a, cosets),
        partition_check("B partitions core", core, &d.b, cosets),
    ];
    let pieces: Vec<(&str, usize, &Vec<Point>)> = d
        .a
        .iter()
        .enumerate()
        .map(|(i, s)| ("A", i, s))
        .chain(d.b.iter().enumerate().map(|(i, s)| ("B", i, s)))
        .collect();

    let mut inj = Check::new("injective pieces");
    let mut in_scope = Check::new("images in scope");
    let mut disjoint = Check::new("images disjoint");
    let mut overlap = None;
    let mut hit: HashMap<Point, String> = HashMap::new();
    for &(fam, i, set) in &pieces {
        let tag = format!("{fam}[{}]", cosets[i]);
        let mut seen: HashMap<Point, &Point> = HashMap::new();
        for m in set {
            let y = space.semi_action(m, &cosets[i]);
            if let Some(prev) = seen.insert(y.clone(), m) {
                inj.case(false, || format!("{prev} and {m} both map to {y} in {tag}"));
            } else {
                inj.case(true, String::new);
            }
            in_scope.case(d.scope.contains(&y), || format!("{m} ⊵ {} = {y} leaves the scope", cosets[i]));
            match hit.get(&y) {
                Some(prev) if *prev != tag => {
                    if overlap.is_none() {
                        overlap = Some(y.to_string());
                    }
                    disjoint.case(false, || format!("{y} is covered by {prev} and {tag}"));
                }
                // a repeat inside one piece is an injectivity failure
                Some(_) => {}
                None => {
                    disjoint.case(true, String::new);
                    hit.insert(y, tag.clone());
                }
            }
        }
    }
    checks.extend([inj.done(), in_scope.done(), disjoint.done()]);

    let interior: Vec<Point> = d
        .scope
        .points()
        .iter()
        .filter(|y| cosets.iter().all(|c| space.exact_fiber(y, c).iter().all(|m| d.scope.in_core(m))))
        .cloned()
        .collect();
    let mut cover = Check::new("images cover interior");
    for y in &interior {
        cover.case(hit.contains_key(y), || format!("{y} is not covered"));
    }
    checks.push(cover.done());

    let mut functional = Check::new("functional identity");
    match Window::exact(interior.clone(), "interior") {
        Ok(target) => {
            let mut total = vec![Rational::from_ratio(0, 1); target.len()];
            let mut failed = None;
            for &(_, i, set) in &pieces {
                let f = BoundedFn::<Rational>::indicator(d.scope.clone(), set);
                match funcamact(space, &f, &cosets[i], &target) {
                    Ok(g) => {
                        for (t, v) in total.iter_mut().zip(g.values()) {
                            *t += v;
                        }
                    }
                    Err(e) => failed = Some(e.to_string()),
                }
            }
            if let Some(msg) = failed {
                functional.case(false, || msg);
            }
            let one = Rational::from_ratio(1, 1);
            for (y, v) in target.points().iter().zip(&total) {
                functional.case(*v == one, || format!("sum at {y} is {v}"));
            }
        }
        Err(e) => functional.case(false, || e.to_string()),
    }
    checks.push(functional.done());

    DecompositionReport { checks, interior: interior.len(), overlap, note: d.note() }
}

/// `(Σ μ(A_e ⊵ e) + Σ μ(B_e ⊵ e), Σ μ(A_e) + Σ μ(B_e))`. For an exact
/// decomposition of the whole universe the pair is `(1, 2)`.
pub fn tarski_contradiction<S: Scalar>(
    space: &CellSpace,
    d: &Decomposition,
    mu: &FAMeasure<S>,
) -> Result<(S, S), ParadoxError> {
    let u: HashSet<&Point> = mu.universe().points().iter().collect();
    let core: HashSet<&Point> = d.scope.core().iter().collect();
    if u != core {
        return Err(ParadoxError::ScopeMismatch);
    }
    let cosets = d.e.cosets();
    let (mut lhs, mut rhs) = (S::zero(), S::zero());
    for (i, c) in cosets.iter().enumerate() {
        for set in [&d.a[i], &d.b[i]] {
            let image = space.semi_action_set(set, std::slice::from_ref(c));
            lhs = lhs + mu.measure(&image);
            rhs = rhs + mu.measure(set);
        }
    }
    Ok((lhs, rhs))
}

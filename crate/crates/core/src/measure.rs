//! Finitely additive probability measures, bounded functions and means on a
//! finite universe, with the operators `μ ⊲ 𝔤`, `f ⊳ 𝔤` and `ν ⟜ 𝔤`.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;
use crate::space::{CellSpace, Coset, Point, SpaceError, Window};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("{point} ⊳ {coset} needs points outside the universe")]
    Uncertified { point: String, coset: String },
    #[error("point {0} is outside the universe")]
    Outside(String),
    #[error("universe mismatch: {0}")]
    ScopeMismatch(String),
    #[error("empty set")]
    EmptySet,
    #[error(transparent)]
    Space(#[from] SpaceError),
}

fn check_exact(universe: &Window) -> Result<(), MeasureError> {
    if universe.core_len() != universe.len() {
        return Err(MeasureError::ScopeMismatch(format!(
            "measures need core = halo, got {}",
            universe.note()
        )));
    }
    Ok(())
}

/// `μ`, stored as one weight per universe point. Points outside the universe
/// carry weight zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FAMeasure<S> {
    universe: Window,
    weights: Vec<S>,
}

impl<S: Scalar> FAMeasure<S> {
    pub fn new(universe: Window, weights: Vec<S>) -> Result<Self, MeasureError> {
        check_exact(&universe)?;
        validate_weights(&universe, &weights)?;
        Ok(FAMeasure { universe, weights })
    }

    pub fn uniform(universe: Window) -> Result<Self, MeasureError> {
        let n = universe.len();
        if n == 0 {
            return Err(MeasureError::EmptySet);
        }
        let w = S::one() / <S as Scalar>::from_usize(n);
        FAMeasure::new(universe, vec![w; n])
    }

    pub fn point_mass(universe: Window, p: &Point) -> Result<Self, MeasureError> {
        let i = universe.index_of(p).ok_or_else(|| MeasureError::Outside(p.to_string()))?;
        let mut weights = vec![S::zero(); universe.len()];
        weights[i] = S::one();
        FAMeasure::new(universe, weights)
    }

    pub fn universe(&self) -> &Window {
        &self.universe
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn weight(&self, p: &Point) -> S {
        self.universe.index_of(p).map_or_else(S::zero, |i| self.weights[i].clone())
    }

    /// `μ(A)`; repeated points count once.
    pub fn measure(&self, a: &[Point]) -> S {
        let distinct: HashSet<&Point> = a.iter().collect();
        distinct.into_iter().fold(S::zero(), |acc, p| acc + self.weight(p))
    }
}

fn validate_weights<S: Scalar>(universe: &Window, weights: &[S]) -> Result<(), MeasureError> {
    if weights.len() != universe.len() {
        return Err(MeasureError::InvalidWeights(format!(
            "{} weights for {} points",
            weights.len(),
            universe.len()
        )));
    }
    if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
        return Err(MeasureError::InvalidWeights(format!("weight {w} at {}", universe.points()[i])));
    }
    let total = weights.iter().cloned().fold(S::zero(), |a, b| a + b);
    if !total.approx_eq(&S::one()) {
        return Err(MeasureError::InvalidWeights(format!("weights sum to {total}")));
    }
    Ok(())
}

/// The set function `μ ⊲ 𝔤 : A ↦ μ(A ⊵ 𝔤)`. Not normalised in general.
pub struct MeasureSemiaction<'a, S> {
    space: &'a CellSpace,
    measure: &'a FAMeasure<S>,
    coset: Coset,
}

impl<S: Scalar> MeasureSemiaction<'_, S> {
    pub fn eval(&self, a: &[Point]) -> S {
        let image = self.space.semi_action_set(a, std::slice::from_ref(&self.coset));
        self.measure.measure(&image)
    }
}

pub fn measure_semiaction<'a, S: Scalar>(
    space: &'a CellSpace,
    measure: &'a FAMeasure<S>,
    coset: &Coset,
) -> MeasureSemiaction<'a, S> {
    MeasureSemiaction { space, measure, coset: coset.clone() }
}

/// A bounded function on a window, with its recorded sup-norm.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundedFn<S> {
    universe: Window,
    values: Vec<S>,
    sup_norm: S,
}

impl<S: Scalar> BoundedFn<S> {
    pub fn new(universe: Window, values: Vec<S>) -> Result<Self, MeasureError> {
        if values.len() != universe.len() {
            return Err(MeasureError::InvalidWeights(format!(
                "{} values for {} points",
                values.len(),
                universe.len()
            )));
        }
        let sup_norm = values.iter().fold(S::zero(), |acc, v| S::max_of(acc, v.abs()));
        Ok(BoundedFn { universe, values, sup_norm })
    }

    pub fn constant(universe: Window, c: S) -> Self {
        let values = vec![c; universe.len()];
        BoundedFn::new(universe, values).expect("lengths match")
    }

    /// `𝟙_A` on the universe; points of `A` outside the universe are ignored.
    pub fn indicator(universe: Window, a: &[Point]) -> Self {
        let set: HashSet<&Point> = a.iter().collect();
        let values = universe
            .points()
            .iter()
            .map(|p| if set.contains(p) { S::one() } else { S::zero() })
            .collect();
        BoundedFn::new(universe, values).expect("lengths match")
    }

    pub fn universe(&self) -> &Window {
        &self.universe
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value(&self, p: &Point) -> Option<&S> {
        self.universe.index_of(p).map(|i| &self.values[i])
    }

    pub fn sup_norm(&self) -> &S {
        &self.sup_norm
    }

    /// `α·self + β·other` on a shared universe.
    pub fn combine(&self, alpha: &S, other: &Self, beta: &S) -> Result<Self, MeasureError> {
        if self.universe != other.universe {
            return Err(MeasureError::ScopeMismatch("functions on different windows".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| alpha.clone() * x.clone() + beta.clone() * y.clone())
            .collect();
        BoundedFn::new(self.universe.clone(), values)
    }
}

/// `f ⊳ 𝔤` evaluated on `target`: `(f ⊳ 𝔤)(m) = Σ_{m′ ⊵ 𝔤 = m} f(m′)`.
///
/// Refused when a fiber over a target point leaves the universe of `f`.
pub fn funcamact<S: Scalar>(
    space: &CellSpace,
    f: &BoundedFn<S>,
    coset: &Coset,
    target: &Window,
) -> Result<BoundedFn<S>, MeasureError> {
    let mut values = Vec::with_capacity(target.len());
    for y in target.points() {
        let mut acc = S::zero();
        for m in space.exact_fiber(y, coset) {
            let v = f.value(&m).ok_or_else(|| MeasureError::Uncertified {
                point: y.to_string(),
                coset: coset.to_string(),
            })?;
            acc = acc + v.clone();
        }
        values.push(acc);
    }
    let out = BoundedFn::new(target.clone(), values)?;
    let bound = <S as Scalar>::from_usize(space.stabiliser().len()) * f.sup_norm.clone();
    assert!(out.sup_norm.approx_le(&bound), "‖f ⊳ 𝔤‖ = {} exceeds |G0|·‖f‖ = {bound}", out.sup_norm);
    Ok(out)
}

/// A mean on a finite universe, represented by its weight vector.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanVector<S> {
    universe: Window,
    weights: Vec<S>,
}

impl<S: Scalar> MeanVector<S> {
    pub fn new(universe: Window, weights: Vec<S>) -> Result<Self, MeasureError> {
        check_exact(&universe)?;
        validate_weights(&universe, &weights)?;
        Ok(MeanVector { universe, weights })
    }

    pub fn universe(&self) -> &Window {
        &self.universe
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// `ν(f)`; `f` must be defined on the whole universe.
    pub fn eval(&self, f: &BoundedFn<S>) -> Result<S, MeasureError> {
        self.universe.points().iter().zip(&self.weights).try_fold(S::zero(), |acc, (p, w)| {
            let v = f.value(p).ok_or_else(|| MeasureError::Outside(p.to_string()))?;
            Ok(acc + w.clone() * v.clone())
        })
    }

    /// `(ν ⟜ 𝔤)(f) = ν(f ⊳ 𝔤)`.
    pub fn semi_action_eval(
        &self,
        space: &CellSpace,
        coset: &Coset,
        f: &BoundedFn<S>,
    ) -> Result<S, MeasureError> {
        self.eval(&funcamact(space, f, coset, &self.universe)?)
    }
}

/// `Φ(ν) = [A ↦ ν(𝟙_A)]`.
pub fn mean_to_measure<S: Scalar>(nu: &MeanVector<S>) -> Result<FAMeasure<S>, MeasureError> {
    let u = nu.universe.clone();
    let weights = u
        .points()
        .iter()
        .map(|p| nu.eval(&BoundedFn::indicator(u.clone(), std::slice::from_ref(p))))
        .collect::<Result<Vec<_>, _>>()?;
    FAMeasure::new(u, weights)
}

/// `Φ⁻¹(μ)`: the mean `f ↦ Σ_m μ({m}) f(m)`.
pub fn measure_to_mean<S: Scalar>(mu: &FAMeasure<S>) -> Result<MeanVector<S>, MeasureError> {
    let u = mu.universe.clone();
    let weights = u.points().iter().map(|p| mu.measure(std::slice::from_ref(p))).collect();
    MeanVector::new(u, weights)
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub point: String,
    pub coset: String,
    pub image_weight: String,
    pub weight: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SemiInvarianceReport {
    pub passed: bool,
    pub cases: usize,
    pub violations: Vec<Violation>,
}

fn finite_cosets(space: &CellSpace, universe: &Window) -> Result<Vec<Coset>, MeasureError> {
    let all = space.all_cosets()?;
    if universe.len() != all.len() || !space.all_points()?.iter().all(|p| universe.contains(p)) {
        return Err(MeasureError::ScopeMismatch("semi-invariance needs the whole space".into()));
    }
    Ok(all)
}

/// Checks `μ({m ⊵ 𝔤}) = μ({m})` for every point and coset of a finite space.
/// By additivity this is equivalent to `μ(A ⊵ 𝔤) = μ(A)` for every `A` on
/// which `· ⊵ 𝔤` is injective.
pub fn check_semi_invariance<S: Scalar>(
    space: &CellSpace,
    mu: &FAMeasure<S>,
) -> Result<SemiInvarianceReport, MeasureError> {
    let cosets = finite_cosets(space, &mu.universe)?;
    let mut violations = Vec::new();
    let mut cases = 0;
    for c in &cosets {
        for m in mu.universe.points() {
            cases += 1;
            let lhs = mu.weight(&space.semi_action(m, c));
            let rhs = mu.weight(m);
            if !lhs.approx_eq(&rhs) {
                violations.push(Violation {
                    point: m.to_string(),
                    coset: c.to_string(),
                    image_weight: lhs.to_string(),
                    weight: rhs.to_string(),
                });
            }
        }
    }
    Ok(SemiInvarianceReport { passed: violations.is_empty(), cases, violations })
}

/// The functional form: `ν(𝟙_{m} ⊳ 𝔤) = ν(𝟙_{m})` for every indicator basis
/// function and every coset.
pub fn check_mean_invariance<S: Scalar>(
    space: &CellSpace,
    nu: &MeanVector<S>,
) -> Result<SemiInvarianceReport, MeasureError> {
    let cosets = finite_cosets(space, &nu.universe)?;
    let mut violations = Vec::new();
    let mut cases = 0;
    for c in &cosets {
        for m in nu.universe.points() {
            cases += 1;
            let f = BoundedFn::indicator(nu.universe.clone(), std::slice::from_ref(m));
            let lhs = nu.semi_action_eval(space, c, &f)?;
            let rhs = nu.eval(&f)?;
            if !lhs.approx_eq(&rhs) {
                violations.push(Violation {
                    point: m.to_string(),
                    coset: c.to_string(),
                    image_weight: lhs.to_string(),
                    weight: rhs.to_string(),
                });
            }
        }
    }
    Ok(SemiInvarianceReport { passed: violations.is_empty(), cases, violations })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeanDefect<S> {
    pub defect: S,
    pub bound: S,
    pub ratio_in: S,
    pub ratio_out: S,
}

/// `|(ν_F ⟜ 𝔤 − ν_F)(f)|` for the empirical mean `ν_F(f) = |F|⁻¹ Σ_F f`,
/// with the bound `(ratio_in + ratio_out)·‖f‖∞`.
pub fn empirical_mean_defect<S: Scalar>(
    space: &CellSpace,
    set: &[Point],
    coset: &Coset,
    f: &BoundedFn<S>,
) -> Result<MeanDefect<S>, MeasureError> {
    if set.is_empty() {
        return Err(MeasureError::EmptySet);
    }
    let u = f.universe();
    if let Some(p) = set.iter().find(|p| !u.contains(p)) {
        return Err(MeasureError::Outside(p.to_string()));
    }
    let pre = space.preimage(coset, set, u);
    if !pre.certified {
        return Err(MeasureError::Uncertified { point: "preimage of F".into(), coset: coset.to_string() });
    }
    let in_f: HashSet<&Point> = set.iter().collect();
    let in_pre: HashSet<&Point> = pre.points.iter().collect();
    let val = |p: &Point| f.value(p).cloned().expect("inside universe");
    let gained: Vec<&Point> = pre.points.iter().filter(|p| !in_f.contains(p)).collect();
    let lost: Vec<&Point> = in_f.iter().copied().filter(|p| !in_pre.contains(p)).collect();
    let n = <S as Scalar>::from_usize(in_f.len());
    let sum = |ps: &[&Point]| ps.iter().fold(S::zero(), |acc, p| acc + val(p));
    let defect = ((sum(&gained) - sum(&lost)) / n.clone()).abs();
    let ratio_in = <S as Scalar>::from_usize(gained.len()) / n.clone();
    let ratio_out = <S as Scalar>::from_usize(lost.len()) / n;
    let bound = (ratio_in.clone() + ratio_out.clone()) * f.sup_norm().clone();
    Ok(MeanDefect { defect, bound, ratio_in, ratio_out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn rejects_bad_weights() {
        let s = catalog::space("affine:3").unwrap();
        let w = s.whole_window().unwrap();
        assert!(FAMeasure::new(w.clone(), vec![r(1, 2), r(1, 2), r(1, 2)]).is_err());
        assert!(FAMeasure::new(w.clone(), vec![r(3, 2), r(-1, 2), r(0, 1)]).is_err());
        assert!(FAMeasure::new(w, vec![r(1, 2), r(1, 2), r(0, 1)]).is_ok());
    }

    #[test]
    fn funcamact_moves_point_indicator() {
        let z2 = crate::space::CellSpace::lattice(2);
        let u = z2.box_window(3, 0).unwrap();
        let target = z2.box_window(2, 0).unwrap();
        let origin = Point::Lattice(vec![0, 0]);
        let f = BoundedFn::<Rational>::indicator(u.clone(), std::slice::from_ref(&origin));
        let c = z2.parse_coset("(1,0)").unwrap();
        // target points (0,·) have fibers at x = -1, outside the universe
        assert!(funcamact(&z2, &f, &c, &target).is_err());
        let inner = crate::space::Window::exact(z2.lattice_box(1, 3).unwrap(), "inner").unwrap();
        let g = funcamact(&z2, &f, &c, &inner).unwrap();
        for p in inner.points() {
            let expected = if *p == Point::Lattice(vec![1, 0]) { r(1, 1) } else { r(0, 1) };
            assert_eq!(g.value(p), Some(&expected));
        }
    }

    #[test]
    fn funcamact_of_constant_counts_fibers() {
        let s = catalog::space("affine:3").unwrap();
        let w = s.whole_window().unwrap();
        let one = BoundedFn::constant(w.clone(), r(1, 1));
        for c in s.all_cosets().unwrap() {
            let g = funcamact(&s, &one, &c, &w).unwrap();
            let total = g.values().iter().cloned().fold(r(0, 1), |a, b| a + b);
            assert_eq!(total, r(3, 1));
            assert!(g.values().iter().all(|v| *v >= r(0, 1) && *v <= r(2, 1)));
        }
    }

    #[test]
    fn counting_measure_commutes_with_translation() {
        let s = catalog::space("affine:3").unwrap();
        let mu = FAMeasure::<Rational>::uniform(s.whole_window().unwrap()).unwrap();
        let c = s.parse_coset("1").unwrap();
        let act = measure_semiaction(&s, &mu, &c);
        let pts = s.all_points().unwrap();
        for mask in 0u32..8 {
            let a: Vec<Point> = (0..3).filter(|i| mask >> i & 1 == 1).map(|i| pts[i].clone()).collect();
            assert_eq!(act.eval(&a), mu.measure(&a));
        }
    }

    #[test]
    fn semi_invariance_verdicts() {
        let s = catalog::space("affine:5").unwrap();
        let w = s.whole_window().unwrap();
        let report = check_semi_invariance(&s, &FAMeasure::<Rational>::uniform(w).unwrap()).unwrap();
        assert!(report.passed);
        assert_eq!(report.cases, 25);

        let s = catalog::space("affine:3").unwrap();
        let w = s.whole_window().unwrap();
        let atom = FAMeasure::<Rational>::point_mass(w, &Point::Index(0)).unwrap();
        let report = check_semi_invariance(&s, &atom).unwrap();
        assert!(!report.passed);
        assert!(!report.violations.is_empty());
    }

    #[test]
    fn phi_is_additive() {
        let s = catalog::space("affine:3").unwrap();
        let nu = MeanVector::new(s.whole_window().unwrap(), vec![r(1, 2), r(1, 3), r(1, 6)]).unwrap();
        let mu = mean_to_measure(&nu).unwrap();
        assert_eq!(mu.measure(&[Point::Index(0), Point::Index(1)]), r(5, 6));
        assert_eq!(measure_to_mean(&mu).unwrap(), nu);
    }

    #[test]
    fn defect_on_a_box() {
        let z2 = crate::space::CellSpace::lattice(2);
        let u = z2.box_window(4, 1).unwrap();
        let set = z2.lattice_box(0, 4).unwrap();
        let f = BoundedFn::<Rational>::indicator(u, &set);
        let c = z2.parse_coset("(1,0)").unwrap();
        let d = empirical_mean_defect(&z2, &set, &c, &f).unwrap();
        assert_eq!(d.defect, r(1, 4));
        assert_eq!(d.bound, r(1, 2));
        let d0 = empirical_mean_defect(&z2, &set, &z2.identity_coset(), &f).unwrap();
        assert_eq!(d0.defect, r(0, 1));
    }

    #[test]
    fn float_measures_work_too() {
        let s = catalog::space("affine:7").unwrap();
        let mu = FAMeasure::<f64>::uniform(s.whole_window().unwrap()).unwrap();
        assert!(check_semi_invariance(&s, &mu).unwrap().passed);
    }
}

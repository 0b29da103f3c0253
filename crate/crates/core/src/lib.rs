//! Cell spaces over concrete groups: right semi-actions, finitely additive
//! measures and means, Følner ratios, doubling sets, harem matchings and
//! paradoxical decompositions, checked on finite windows.
//!
//! Weights and function values are generic over [`Scalar`]; group elements
//! and ratios are exact.

pub mod catalog;
pub mod field;
pub mod folner;
pub mod group;
pub mod io;
pub mod measure;
pub mod paradox;
pub mod report;
pub mod scalar;
pub mod space;
pub mod transfer;

pub use folner::ExpansionSet;
pub use group::{Group, GroupElement, Perm, Word};
pub use scalar::Scalar;
pub use space::{CellSpace, Coset, Point, Window};

pub type Rational = num_rational::BigRational;

pub type ExactMeasure = measure::FAMeasure<Rational>;
pub type FloatMeasure = measure::FAMeasure<f64>;
pub type ExactFn = measure::BoundedFn<Rational>;
pub type FloatFn = measure::BoundedFn<f64>;
pub type ExactMean = measure::MeanVector<Rational>;
pub type FloatMean = measure::MeanVector<f64>;

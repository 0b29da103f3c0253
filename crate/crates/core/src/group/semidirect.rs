use std::collections::{HashMap, VecDeque};

use super::{Backend, Group, GroupElement, GroupError, SemidirectData, SemidirectDataHandle};

/// The twisting homomorphism `τ: G₀ → Aut(H)`, stored as the images of the
/// standard generators of `H` under `τ(g₀)` for every element `g₀` of the
/// finite base group.
#[derive(Clone, Debug, Default)]
pub struct Twist {
    table: HashMap<GroupElement, Vec<GroupElement>>,
}

impl Twist {
    /// Builds a twist from a complete table (one row per base element).
    pub fn from_table(rows: impl IntoIterator<Item = (GroupElement, Vec<GroupElement>)>) -> Self {
        Twist { table: rows.into_iter().collect() }
    }

    /// Extends the images of the base generators multiplicatively to every
    /// base element, via `τ(g·s)(hⱼ) = τ(g)(τ(s)(hⱼ))`.
    pub fn from_generator_images(
        base: &Group,
        normal: &Group,
        images: Vec<Vec<GroupElement>>,
    ) -> Result<Self, GroupError> {
        if images.len() != base.generators().len() {
            return Err(GroupError::Unsupported(format!(
                "{} generator images given for {} base generators",
                images.len(),
                base.generators().len()
            )));
        }
        let id_row: Vec<GroupElement> = normal.generators().to_vec();
        let mut twist = Twist::default();
        twist.table.insert(base.identity(), id_row);
        // inverses of base generators are powers of them in a finite group, so
        // right multiplication by generators alone reaches every element
        let mut queue = VecDeque::from([base.identity()]);
        while let Some(g) = queue.pop_front() {
            for (s, s_row) in base.generators().iter().zip(&images) {
                let next = base.product(&g, s);
                if twist.table.contains_key(&next) {
                    continue;
                }
                let row = s_row.iter().map(|h| twist.apply(normal, &g, h)).collect();
                twist.table.insert(next.clone(), row);
                queue.push_back(next);
                if twist.table.len() > 1 << 16 {
                    return Err(GroupError::TooLarge(1 << 16));
                }
            }
        }
        Ok(twist)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn row(&self, g0: &GroupElement) -> Option<&[GroupElement]> {
        self.table.get(g0).map(Vec::as_slice)
    }

    /// `τ(g₀)(h)`, extended from generator images.
    ///
    /// Panics if `g₀` has no row; [`Group::semidirect`] guarantees totality.
    pub fn apply(&self, normal: &Group, g0: &GroupElement, h: &GroupElement) -> GroupElement {
        let row = self
            .table
            .get(g0)
            .unwrap_or_else(|| panic!("twist has no row for {g0}"));
        match h {
            GroupElement::Tuple(v) => {
                let mut out = vec![0i64; v.len()];
                for (coef, img) in v.iter().zip(row) {
                    if let GroupElement::Tuple(w) = img {
                        for (o, x) in out.iter_mut().zip(w) {
                            *o += coef * x;
                        }
                    }
                }
                GroupElement::Tuple(out)
            }
            GroupElement::Word(w) => {
                let mut acc = normal.identity();
                for &l in w.letters() {
                    let img = &row[l.unsigned_abs() as usize - 1];
                    let step = if l > 0 { img.clone() } else { normal.invert(img) };
                    acc = normal.product(&acc, &step);
                }
                acc
            }
            other => panic!("twist cannot act on {other}"),
        }
    }
}

pub(super) fn build(base: Group, normal: Group, twist: Twist) -> Result<Group, GroupError> {
    if !matches!(base.backend(), Backend::Permutation { .. }) {
        return Err(GroupError::Unsupported("semidirect base must be a permutation group".into()));
    }
    if !matches!(normal.backend(), Backend::Lattice { .. } | Backend::Free { .. }) {
        return Err(GroupError::Unsupported(
            "semidirect normal factor must be a lattice or free group".into(),
        ));
    }
    let base_elems = base.elements(1 << 16)?;
    let hgens = normal.generators().to_vec();
    for g0 in &base_elems {
        let row = twist.row(g0).ok_or_else(|| GroupError::MissingTwist(g0.to_string()))?;
        if row.len() != hgens.len() {
            return Err(GroupError::MissingTwist(format!("{g0} (row has {} images)", row.len())));
        }
        for img in row {
            normal.validate(img)?;
        }
    }
    let id = base.identity();
    if twist.row(&id) != Some(hgens.as_slice()) {
        return Err(GroupError::NotAHomomorphism(format!("τ({id}) is not the identity")));
    }
    for g in &base_elems {
        for h in &base_elems {
            let gh = base.product(g, h);
            for (j, hj) in hgens.iter().enumerate() {
                let lhs = twist.row(&gh).expect("checked above")[j].clone();
                let rhs = twist.apply(&normal, g, &twist.apply(&normal, h, hj));
                if lhs != rhs {
                    return Err(GroupError::NotAHomomorphism(format!(
                        "τ({g}·{h})({hj}) = {lhs} but τ({g})∘τ({h}) gives {rhs}"
                    )));
                }
            }
        }
    }
    let mut generators: Vec<GroupElement> = base
        .generators()
        .iter()
        .map(|s| GroupElement::pair(s.clone(), normal.identity()))
        .collect();
    generators.extend(hgens.iter().map(|h| GroupElement::pair(id.clone(), h.clone())));
    Ok(Group {
        backend: Backend::Semidirect(Box::new(SemidirectDataHandle(SemidirectData {
            base,
            normal,
            twist,
        }))),
        generators,
        symmetric: false,
    })
}

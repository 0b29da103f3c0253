//! Named example spaces: `affine:q`, `zd:d`, `free:k`, `hyperoct:d` and
//! `hyperoct-torus:d:n`.

use thiserror::Error;

use crate::field::{FiniteField, UnsupportedField};
use crate::group::{Group, GroupElement, GroupError, Perm, Twist};
use crate::space::{CellSpace, SpaceError};
use crate::transfer;

/// Largest dimension accepted for `zd:d`, `hyperoct:d` and the torus.
pub const MAX_DIM: usize = 4;
/// Largest point count of a `hyperoct-torus` space.
pub const MAX_TORUS_POINTS: usize = 4096;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown space {0:?} (expected affine:q, zd:d, free:k, hyperoct:d or hyperoct-torus:d:n)")]
    UnknownSpace(String),
    #[error("bad parameter in {name:?}: {reason}")]
    BadParameter { name: String, reason: String },
    #[error(transparent)]
    Field(#[from] UnsupportedField),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Transfer(#[from] transfer::TransferError),
}

/// Looks up a space by name.
pub fn space(name: &str) -> Result<CellSpace, CatalogError> {
    let parts: Vec<&str> = name.trim().split(':').collect();
    let num = |s: &str| -> Result<usize, CatalogError> {
        s.parse().map_err(|_| CatalogError::BadParameter {
            name: name.to_string(),
            reason: format!("{s:?} is not a non-negative integer"),
        })
    };
    let bad = |reason: &str| CatalogError::BadParameter { name: name.to_string(), reason: reason.to_string() };
    match parts.as_slice() {
        ["affine", q] => affine_space(num(q)? as u32),
        ["zd", d] => {
            let d = num(d)?;
            if d == 0 || d > MAX_DIM {
                return Err(bad("dimension must be 1..=4"));
            }
            Ok(CellSpace::lattice(d))
        }
        ["free", k] => Ok(CellSpace::free(num(k)?)?),
        ["hyperoct", d] => {
            let d = num(d)?;
            if d == 0 || d > MAX_DIM {
                return Err(bad("dimension must be 1..=4"));
            }
            hyperoctahedral_space(d)
        }
        ["hyperoct-torus", d, n] => {
            let (d, n) = (num(d)?, num(n)?);
            if d == 0 || d > MAX_DIM || n < 2 || n.checked_pow(d as u32).is_none_or(|s| s > MAX_TORUS_POINTS) {
                return Err(bad("need 1 ≤ d ≤ 4, n ≥ 2 and at most 4096 points"));
            }
            hyperoctahedral_torus(d, n)
        }
        _ => Err(CatalogError::UnknownSpace(name.to_string())),
    }
}

/// `𝔽_q` acted on by `x ↦ ax + b`; `m₀ = 0`, `g_{0,m} = x ↦ x + m`,
/// `G₀` = the dilations.
pub fn affine_space(q: u32) -> Result<CellSpace, CatalogError> {
    let f = FiniteField::new(q)?;
    let perm = |map: &dyn Fn(u32) -> u32| Perm::new((0..q).map(map).collect()).expect("field bijection");
    let translation = |b: u32| perm(&|x| f.add(x, b));
    let mut gens: Vec<Perm> = f.additive_basis().into_iter().map(translation).collect();
    let w = f.primitive_element();
    if w != 1 {
        gens.push(perm(&|x| f.mul(w, x)));
    }
    let group = Group::permutation(q as usize, gens)?;
    let coords = (0..q).map(|m| GroupElement::Perm(translation(m))).collect();
    Ok(CellSpace::finite(format!("affine:{q}"), group, q, 0, coords, "g_{0,m} = x -> x + m")?)
}

/// Signed permutations of `d` coordinates, acting on `2d` points where
/// `2i` stands for `+eᵢ` and `2i+1` for `−eᵢ`. Generated by the sign flip of
/// coordinate 0 and the adjacent transpositions.
pub fn hyperoctahedral_group(d: usize) -> Group {
    let n = 2 * d as u32;
    let mut gens = vec![Perm::from_cycles(n as usize, &[&[0, 1]]).expect("flip")];
    for i in 0..d as u32 - 1 {
        let (a, b) = (2 * i, 2 * i + 2);
        gens.push(Perm::from_cycles(n as usize, &[&[a, b], &[a + 1, b + 1]]).expect("swap"));
    }
    Group::permutation(n as usize, gens).expect("degree matches")
}

/// The image of `eᵢ` under a signed permutation, as a lattice vector.
fn signed_image(p: &Perm, i: usize, d: usize) -> Vec<i64> {
    let img = p.apply(2 * i as u32) as usize;
    let mut v = vec![0; d];
    v[img / 2] = if img.is_multiple_of(2) { 1 } else { -1 };
    v
}

/// Hyperoctahedral ⋉ `ℤᵈ` acting on `ℤᵈ`, a discrete stand-in for a
/// Euclidean group.
pub fn hyperoctahedral_space(d: usize) -> Result<CellSpace, CatalogError> {
    let base = hyperoctahedral_group(d);
    let normal = Group::lattice(d);
    let rows = base
        .elements(1 << 12)?
        .into_iter()
        .map(|g| {
            let GroupElement::Perm(p) = &g else { unreachable!("permutation backend") };
            let row = (0..d).map(|i| GroupElement::Tuple(signed_image(p, i, d))).collect();
            (g, row)
        })
        .collect::<Vec<_>>();
    Ok(transfer::build_semidirect_cellspace(&format!("hyperoct:{d}"), normal, base, Twist::from_table(rows))?)
}

/// The same point group and translations acting on the torus `(ℤ/n)ᵈ`,
/// as a finite permutation space. `g_{0,m}` is the translation by `m`.
pub fn hyperoctahedral_torus(d: usize, n: usize) -> Result<CellSpace, CatalogError> {
    let size = n.pow(d as u32);
    let decode = |i: usize| -> Vec<usize> { (0..d).map(|k| (i / n.pow(k as u32)) % n).collect() };
    let encode = |v: &[usize]| -> u32 { v.iter().rev().fold(0, |acc, &x| acc * n + x) as u32 };
    let perm = |f: &dyn Fn(&mut Vec<usize>)| {
        Perm::new(
            (0..size)
                .map(|i| {
                    let mut v = decode(i);
                    f(&mut v);
                    encode(&v)
                })
                .collect(),
        )
        .expect("torus bijection")
    };
    let translation = |m: usize| {
        let t = decode(m);
        perm(&|v: &mut Vec<usize>| {
            for (x, s) in v.iter_mut().zip(&t) {
                *x = (*x + s) % n;
            }
        })
    };
    let mut gens: Vec<Perm> = (0..d).map(|k| translation(n.pow(k as u32))).collect();
    gens.push(perm(&|v: &mut Vec<usize>| v[0] = (n - v[0]) % n));
    for k in 0..d - 1 {
        gens.push(perm(&|v: &mut Vec<usize>| v.swap(k, k + 1)));
    }
    let group = Group::permutation(size, gens)?;
    let coords = (0..size).map(|m| GroupElement::Perm(translation(m))).collect();
    Ok(CellSpace::finite(
        format!("hyperoct-torus:{d}:{n}"),
        group,
        size as u32,
        0,
        coords,
        "g_{0,m} = translation by m mod n",
    )?)
}

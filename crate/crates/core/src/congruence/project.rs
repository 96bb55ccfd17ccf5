use std::collections::BTreeSet;

use crate::element::{Flavor, MonoidElement};
use crate::error::{MunnError, Result};
use crate::factorization::crack_fla;
use crate::words::SignedWord;

/// `(z, v) = (z′, v′)·x` with `z′, v′` over the kept letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub z: MonoidElement,
    pub v: MonoidElement,
    pub x: MonoidElement,
}

fn letters_in(m: &MonoidElement, keep: &BTreeSet<usize>) -> bool {
    m.set()
        .words()
        .iter()
        .all(|w| w.letters().iter().all(|l| keep.contains(&l.index())))
}

fn dirty_leaf(m: &MonoidElement, keep: &BTreeSet<usize>) -> Option<SignedWord> {
    let mut leaves = m.leaves();
    leaves.sort();
    leaves
        .into_iter()
        .find(|w| w.letters().iter().any(|l| !keep.contains(&l.index())))
}

/// Given `d·z = b·v` in `FLA` with `D` and `B` over `keep`, strips every leaf
/// using another letter into a common right factor.
pub fn project_alphabet(
    d: &MonoidElement,
    z: &MonoidElement,
    b: &MonoidElement,
    v: &MonoidElement,
    keep: &BTreeSet<usize>,
) -> Result<Projection> {
    for e in [d, z, b, v] {
        if e.flavor() != Flavor::FLA {
            return Err(MunnError::UnsupportedFlavor {
                flavor: e.flavor(),
                operation: "project_alphabet",
            });
        }
    }
    let dz = d * z;
    if dz != b * v {
        return Err(MunnError::pre("d·z = b·v", format!("{dz:?} ≠ {:?}", b * v)));
    }
    if !letters_in(d, keep) || !letters_in(b, keep) {
        return Err(MunnError::pre(
            "Π covers the letters of D and B",
            format!("{keep:?}"),
        ));
    }
    let mut zc = z.clone();
    let mut vc = v.clone();
    let mut x = MonoidElement::identity(Flavor::FLA);
    loop {
        if let Some(leaf) = dirty_leaf(&zc, keep) {
            let r = crack_fla(d, &zc, b, &vc, &leaf)?;
            zc = r.u_prime;
            vc = r.v_prime;
            x = &r.z * &x;
        } else if let Some(leaf) = dirty_leaf(&vc, keep) {
            let r = crack_fla(b, &vc, d, &zc, &leaf)?;
            vc = r.u_prime;
            zc = r.v_prime;
            x = &r.z * &x;
        } else {
            break;
        }
    }
    if d * &zc != b * &vc || &(&zc * &x) != z || &(&vc * &x) != v {
        return Err(MunnError::post(
            "d·z′ = b·v′ and (z, v) = (z′, v′)·x",
            String::new(),
        ));
    }
    Ok(Projection { z: zc, v: vc, x })
}

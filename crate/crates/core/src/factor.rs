//! Enumeration of the factorizations of a fixed element.
//!
//! All three enumerations reduce to listing the prefix-closed sets `T` with
//! `required↓ ⊆ T ⊆ ambient`, which is finite and usually tiny.

use crate::element::{Flavor, MonoidElement};
use crate::tree::PrefixClosedSet;
use crate::words::SignedWord;

/// Every prefix-closed `T` with `closure(required) ⊆ T ⊆ ambient`, or an
/// empty list when some required word lies outside `ambient`.
pub fn between(ambient: &PrefixClosedSet, required: &[SignedWord]) -> Vec<PrefixClosedSet> {
    let n = ambient.len();
    let parents = ambient.parents();
    let mut need = vec![false; n];
    need[0] = true;
    for w in required {
        let Some(mut i) = ambient.find(w) else {
            return Vec::new();
        };
        while i != usize::MAX && !need[i] {
            need[i] = true;
            i = parents[i];
        }
    }
    let mut mask = vec![false; n];
    let mut out = Vec::new();
    fill(ambient, &need, &mut mask, 0, &mut out);
    out
}

fn fill(
    ambient: &PrefixClosedSet,
    need: &[bool],
    mask: &mut Vec<bool>,
    i: usize,
    out: &mut Vec<PrefixClosedSet>,
) {
    if i == ambient.len() {
        out.push(ambient.restrict(mask));
        return;
    }
    mask[i] = true;
    fill(ambient, need, mask, i + 1, out);
    if !need[i] {
        let end = ambient.subtree_end(i);
        for m in mask.iter_mut().take(end).skip(i) {
            *m = false;
        }
        fill(ambient, need, mask, end, out);
    }
}

/// `{t : c·t = m}`, the right co-factors of `c` in `m`.
pub fn right_factors(c: &MonoidElement, m: &MonoidElement) -> Vec<MonoidElement> {
    let flavor = m.flavor();
    if c.flavor() != flavor || !c.set().is_subset(m.set()) {
        return Vec::new();
    }
    let cp = c.point();
    let tp = cp.inverse().concat(m.point());
    if flavor == Flavor::FA && !tp.is_positive() {
        return Vec::new();
    }
    let shifted = m.set().reroot(cp).expect("c's point lies in M");
    let ambient = if flavor == Flavor::FLA {
        shifted.positive_part()
    } else {
        shifted
    };
    let cinv = cp.inverse();
    let mut required: Vec<SignedWord> = m
        .set()
        .difference(c.set())
        .iter()
        .map(|w| cinv.concat(w))
        .collect();
    required.push(tp.clone());
    between(&ambient, &required)
        .into_iter()
        .filter_map(|t| MonoidElement::try_parts(t, tp.clone(), flavor))
        .collect()
}

/// `{t : t·c = m}`, the left co-factors of `c` in `m`.
pub fn left_factors(m: &MonoidElement, c: &MonoidElement) -> Vec<MonoidElement> {
    let flavor = m.flavor();
    if c.flavor() != flavor {
        return Vec::new();
    }
    let tp = m.point().concat(&c.point().inverse());
    if !m.set().contains(&tp) || (flavor != Flavor::FI && !tp.is_positive()) {
        return Vec::new();
    }
    let shifted = c.set().translate_words(&tp);
    if !shifted.iter().all(|w| m.set().contains(w)) {
        return Vec::new();
    }
    let shifted_set: std::collections::HashSet<&SignedWord> = shifted.iter().collect();
    let mut required: Vec<SignedWord> = m
        .set()
        .words()
        .into_iter()
        .filter(|w| !shifted_set.contains(w))
        .collect();
    required.push(tp.clone());
    between(m.set(), &required)
        .into_iter()
        .filter_map(|t| MonoidElement::try_parts(t, tp.clone(), flavor))
        .collect()
}

/// Every `y` with `m = x·y` for some `x`, sorted and without repeats.
pub fn right_divisors(m: &MonoidElement) -> Vec<MonoidElement> {
    let flavor = m.flavor();
    let mut out = Vec::new();
    for g in m.set().words() {
        if flavor == Flavor::FA && !g.is_positive() {
            continue;
        }
        let yp = g.inverse().concat(m.point());
        if flavor == Flavor::FA && !yp.is_positive() {
            continue;
        }
        let shifted = m.set().reroot(&g).expect("g lies in M");
        let ambient = if flavor == Flavor::FLA {
            shifted.positive_part()
        } else {
            shifted
        };
        for y in between(&ambient, std::slice::from_ref(&yp)) {
            if let Some(e) = MonoidElement::try_parts(y, yp.clone(), flavor) {
                out.push(e);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Every `x` with `m = x·y` for some `y`, sorted and without repeats.
pub fn left_divisors(m: &MonoidElement) -> Vec<MonoidElement> {
    let flavor = m.flavor();
    let mut out = Vec::new();
    for g in m.set().words() {
        if flavor != Flavor::FI && !g.is_positive() {
            continue;
        }
        if flavor != Flavor::FI && !g.is_prefix_of(m.point()) {
            continue;
        }
        // In FLA the co-factor only reaches the positive words below g.
        let mut required = vec![g.clone()];
        if flavor == Flavor::FLA {
            required.extend(m.set().words().into_iter().filter(|w| !g.is_prefix_of(w)));
        }
        for x in between(m.set(), &required) {
            if let Some(e) = MonoidElement::try_parts(x, g.clone(), flavor) {
                out.push(e);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

//! The left congruence `ρ = ⟨(a, 1)⟩` on `FI({x, y})` with `a = x`, its left
//! annihilator `τ` of `b·ρ` with `b = y`, and a checker refuting that a
//! given finite set generates `τ`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::congruence::{CongruencePresentation, Side};
use crate::element::{Flavor, MonoidElement};
use crate::enumerate::{enumerate_elements, Bound};
use crate::error::{MunnError, Result};
use crate::factor::left_factors;
use crate::words::{SignedLetter, SignedWord};

const X: usize = 0;
const Y: usize = 1;

/// `({ε, x}, x)`.
pub fn a_element() -> MonoidElement {
    MonoidElement::generator(X, Flavor::FI)
}

/// `({ε, y}, y)`.
pub fn b_element() -> MonoidElement {
    MonoidElement::generator(Y, Flavor::FI)
}

/// `ρ` as a left presentation over `{x, y}`.
pub fn rho_presentation() -> CongruencePresentation {
    CongruencePresentation::new(
        Flavor::FI,
        Side::Left,
        vec![(a_element(), MonoidElement::identity(Flavor::FI))],
        2,
    )
    .expect("two letters")
}

/// `(U_i, ε)` with `U_i = {ε, y, yx, …, yxⁱ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathElement {
    pub i: usize,
}

impl PathElement {
    pub fn word(&self) -> SignedWord {
        let mut w = SignedWord::positive([Y]);
        for _ in 0..self.i {
            w.push(SignedLetter::positive(X));
        }
        w
    }

    pub fn element(&self) -> MonoidElement {
        MonoidElement::new(self.word().prefixes(), SignedWord::empty(), Flavor::FI)
            .expect("ε lies in every set")
    }
}

pub fn path_element(i: usize) -> MonoidElement {
    PathElement { i }.element()
}

fn check_input(m: &MonoidElement) -> Result<()> {
    if m.flavor() != Flavor::FI {
        return Err(MunnError::UnsupportedFlavor {
            flavor: m.flavor(),
            operation: "counterexample",
        });
    }
    if m.max_index().map_or(false, |i| i > Y) {
        return Err(MunnError::Alphabet(format!(
            "letter index {} outside {{x, y}}",
            m.max_index().unwrap()
        )));
    }
    Ok(())
}

/// `Some(j)` when `w = xʲ` as a reduced word (`j` may be negative).
fn x_power(w: &SignedWord) -> Option<i64> {
    let ls = w.letters();
    if ls.iter().all(|&l| l == SignedLetter::positive(X)) {
        Some(ls.len() as i64)
    } else if ls.iter().all(|&l| l == SignedLetter::negative(X)) {
        Some(-(ls.len() as i64))
    } else {
        None
    }
}

fn times_a(m: &MonoidElement) -> MonoidElement {
    m * &a_element()
}

/// The search bound `l(u_p) + l(v_p) + d(u) + d(v) + 2`.
pub fn search_bound(u: &MonoidElement, v: &MonoidElement) -> usize {
    u.point().len() + v.point().len() + u.diameter() + v.diameter() + 2
}

/// Decides `u ρ v`, i.e. `u·aⁿ = v·aᵐ` for some `n, m`. Returns the witness
/// with the least `n`.
pub fn decide_rho(u: &MonoidElement, v: &MonoidElement) -> Result<Option<(usize, usize)>> {
    check_input(u)?;
    check_input(v)?;
    let bound = search_bound(u, v);
    // Points of u·a^n and v·a^m agree iff v_p⁻¹u_p = x^(m-n).
    let delta = match x_power(&v.point().inverse().concat(u.point())) {
        Some(d) => d,
        None => return Ok(None),
    };
    // Multiplying by a only adds words on the line through the point, so the
    // rest of the set must already agree.
    let base = line_base(u.point());
    if off_line(u, &base) != off_line(v, &base) {
        return Ok(None);
    }
    let n0 = (-delta).max(0) as usize;
    let m0 = (n0 as i64 + delta) as usize;
    let mut un = u.clone();
    for _ in 0..n0 {
        un = times_a(&un);
    }
    let mut vm = v.clone();
    for _ in 0..m0 {
        vm = times_a(&vm);
    }
    let mut found = None;
    let mut n = n0;
    while n <= bound {
        if un == vm {
            found = Some((n, (n as i64 + delta) as usize));
            break;
        }
        un = times_a(&un);
        vm = times_a(&vm);
        n += 1;
    }
    check_growth(u, bound)?;
    check_growth(v, bound)?;
    Ok(found)
}

/// Past the bound, appending `x` must lengthen the point.
fn check_growth(m: &MonoidElement, bound: usize) -> Result<()> {
    let mut p = m.point().clone();
    for _ in 0..bound {
        p.push(SignedLetter::positive(X));
    }
    let at = p.len();
    p.push(SignedLetter::positive(X));
    if p.len() <= at {
        return Err(MunnError::post(
            "point length grows past the bound",
            format!("{at} then {}", p.len()),
        ));
    }
    Ok(())
}

/// Decides `u τ v`, i.e. `u·b·aⁿ = v·b·aᵐ` for some `n, m`.
pub fn decide_tau(u: &MonoidElement, v: &MonoidElement) -> Result<Option<(usize, usize)>> {
    check_input(u)?;
    check_input(v)?;
    let b = b_element();
    decide_rho(&(u * &b), &(v * &b))
}

/// A complete invariant of the `ρ`-class of an element `(W, p)`: writing
/// `p = q·xᵉ` with `q` not ending in `x^±1`, the line `{q·xʲ}` meets `W` in an
/// interval `[lo, hi]`; the class is determined by `q`, `lo` and the part of
/// `W` off the line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RhoKey {
    pub base: SignedWord,
    pub low: i64,
    pub rest: Vec<SignedWord>,
}

/// `p` with its trailing run of `x^±1` removed.
fn line_base(p: &SignedWord) -> SignedWord {
    let mut base = p.clone();
    while matches!(base.last(), Some(l) if l.index() == X) {
        base.pop();
    }
    base
}

/// The words of `m` not of the form `base·xʲ`, in shortlex order.
fn off_line(m: &MonoidElement, base: &SignedWord) -> Vec<SignedWord> {
    let on_line = |w: &SignedWord| {
        w.strip_prefix(base)
            .map_or(false, |t| x_power(&t).is_some())
    };
    m.set()
        .sorted_words()
        .into_iter()
        .filter(|w| !on_line(w))
        .collect()
}

pub fn rho_key(m: &MonoidElement) -> Result<RhoKey> {
    check_input(m)?;
    let base = line_base(m.point());
    let mut low = 0i64;
    let mut w = base.clone();
    loop {
        w.push(SignedLetter::negative(X));
        if !m.set().contains(&w) {
            break;
        }
        low -= 1;
    }
    let rest = off_line(m, &base);
    Ok(RhoKey { base, low, rest })
}

/// The `ρ`-class invariant of `m·b`.
pub fn tau_key(m: &MonoidElement) -> Result<RhoKey> {
    check_input(m)?;
    rho_key(&(m * &b_element()))
}

type Pair = (MonoidElement, MonoidElement);

/// Every ordered pair `(u, v)`, `u ≠ v`, of `τ`-related elements of weight at
/// most `max_weight` in `FI({x, y})`.
pub fn tau_pairs(max_weight: usize, cap: usize) -> Result<Vec<Pair>> {
    let ball = enumerate_elements(Flavor::FI, Bound::weight(max_weight), 2, cap)?;
    let mut groups: BTreeMap<RhoKey, Vec<MonoidElement>> = BTreeMap::new();
    for m in ball {
        groups.entry(tau_key(&m)?).or_default().push(m);
    }
    let mut out = Vec::new();
    for g in groups.values() {
        for u in g {
            for v in g {
                if u != v {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
    }
    if out.len() > cap {
        return Err(MunnError::ResourceCap(format!("more than {cap} pairs")));
    }
    Ok(out)
}

/// One left factorization `(U_k, ε) = t·c` and the effect of the move to
/// `t·d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub t: MonoidElement,
    pub c: MonoidElement,
    pub d: MonoidElement,
    pub image: MonoidElement,
}

impl Factorization {
    pub fn fixes_target(&self, target: &MonoidElement) -> bool {
        &self.image == target
    }
}

#[derive(Clone, Debug)]
pub struct RefutationReport {
    pub k: usize,
    /// Pairs of `H` after closing under swap.
    pub pairs: usize,
    /// `max |S|` over the components of `H`.
    pub max_component_size: usize,
    pub target: MonoidElement,
    pub next: MonoidElement,
    pub factorizations: Vec<Factorization>,
    /// No move changes the target, so its `⟨H⟩`-class is a singleton.
    pub singleton: bool,
    /// `(n, m)` with `U_k·b·aⁿ = U_{k+1}·b·aᵐ`.
    pub tau_witness: Option<(usize, usize)>,
    pub refuted: bool,
}

/// Checks that `H` does not generate `τ`: every move out of `(U_k, ε)`
/// fixes it, yet `(U_k, ε) τ (U_{k+1}, ε)`.
pub fn refute_finite_generation(h: &[Pair], k: usize) -> Result<RefutationReport> {
    let mut pairs: BTreeSet<Pair> = BTreeSet::new();
    let mut max_size = 0;
    for (c, d) in h {
        check_input(c)?;
        check_input(d)?;
        if decide_tau(c, d)?.is_none() {
            return Err(MunnError::pre("H lies within τ", format!("({c:?}, {d:?})")));
        }
        max_size = max_size.max(c.set().len()).max(d.set().len());
        pairs.insert((c.clone(), d.clone()));
        pairs.insert((d.clone(), c.clone()));
    }
    if k <= max_size {
        return Err(MunnError::pre(
            "k > |S| for every component",
            format!("k = {k}, |S| up to {max_size}"),
        ));
    }
    let target = path_element(k);
    let next = path_element(k + 1);
    let mut by_left: BTreeMap<&MonoidElement, Vec<&MonoidElement>> = BTreeMap::new();
    for (c, d) in &pairs {
        by_left.entry(c).or_default().push(d);
    }
    let mut factorizations = Vec::new();
    for (c, ds) in by_left {
        for t in left_factors(&target, c) {
            if &t * c != target {
                return Err(MunnError::post(
                    "t·c reproduces the target",
                    format!("{t:?}·{c:?}"),
                ));
            }
            for d in &ds {
                factorizations.push(Factorization {
                    image: &t * *d,
                    t: t.clone(),
                    c: c.clone(),
                    d: (*d).clone(),
                });
            }
        }
    }
    let singleton = factorizations.iter().all(|f| f.fixes_target(&target));
    let tau_witness = decide_tau(&target, &next)?;
    Ok(RefutationReport {
        k,
        pairs: pairs.len(),
        max_component_size: max_size,
        refuted: singleton && tau_witness.is_some(),
        target,
        next,
        factorizations,
        singleton,
        tau_witness,
    })
}

/// `(U_i, ε)·b·aⁱ`, the common value behind `(U_i, ε) τ (U_1, ε)`.
pub fn prevv_value(i: usize) -> MonoidElement {
    let mut w = SignedWord::positive([Y]);
    for _ in 0..i {
        w.push(SignedLetter::positive(X));
    }
    MonoidElement::new(PathElement { i }.word().prefixes(), w, Flavor::FI)
        .expect("point on the path")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{component, Budget};

    fn power(m: &MonoidElement, n: usize) -> MonoidElement {
        let mut p = MonoidElement::identity(m.flavor());
        for _ in 0..n {
            p = &p * m;
        }
        p
    }

    #[test]
    fn rho_examples() {
        let a = a_element();
        let one = MonoidElement::identity(Flavor::FI);
        assert_eq!(decide_rho(&a, &a).unwrap(), Some((0, 0)));
        assert_eq!(decide_rho(&one, &a).unwrap(), Some((1, 0)));
        assert_eq!(decide_rho(&one, &b_element()).unwrap(), None);
        let fla = MonoidElement::identity(Flavor::FLA);
        assert!(decide_rho(&fla, &fla).is_err());
    }

    #[test]
    fn prevv() {
        let b = b_element();
        let a = a_element();
        for i in 1..=8 {
            let u = path_element(i);
            let lhs = &(&u * &b) * &power(&a, i);
            let rhs = &(&path_element(1) * &b) * &power(&a, i);
            assert_eq!(lhs, prevv_value(i));
            assert_eq!(rhs, prevv_value(i));
            let w = decide_tau(&u, &path_element(1)).unwrap().unwrap();
            assert_eq!(w, if i == 1 { (0, 0) } else { (i, i) });
        }
    }

    #[test]
    fn key_matches_decider() {
        let ball = enumerate_elements(Flavor::FI, Bound::weight(3), 2, 1 << 20).unwrap();
        for u in &ball {
            for v in &ball {
                let same = rho_key(u).unwrap() == rho_key(v).unwrap();
                assert_eq!(decide_rho(u, v).unwrap().is_some(), same, "{u:?} {v:?}");
            }
        }
    }

    #[test]
    fn decider_matches_search() {
        let rho = rho_presentation();
        let ball = enumerate_elements(Flavor::FI, Bound::weight(2), 2, 1 << 20).unwrap();
        for u in &ball {
            let comp = component(&rho, u, 16, &mut Budget::unlimited()).unwrap();
            for v in &ball {
                let by_search = comp.binary_search(v).is_ok();
                assert_eq!(
                    decide_rho(u, v).unwrap().is_some(),
                    by_search,
                    "{u:?} {v:?}"
                );
            }
        }
    }

    #[test]
    fn empty_h_is_refuted() {
        let r = refute_finite_generation(&[], 1).unwrap();
        assert!(r.refuted && r.singleton);
        assert!(r.factorizations.is_empty());
        assert!(r.tau_witness.is_some());
    }

    #[test]
    fn small_h_is_refuted() {
        let h = tau_pairs(2, 1 << 20).unwrap();
        assert!(!h.is_empty());
        let r = refute_finite_generation(&h, 4).unwrap();
        assert!(r.refuted);
        assert!(refute_finite_generation(&h, 2).is_err());
        let bad = vec![(a_element(), b_element())];
        assert!(refute_finite_generation(&bad, 5).is_err());
    }
}

//! Finite generating sets for the solution sets of `a·u = b·v`,
//! `a·u = b·u`, `u·a = v·b` and `u·a = u·b`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::{Flavor, MonoidElement};
use crate::error::{MunnError, Result};
use crate::factor::{left_factors, right_factors};
use crate::factorization::{crack, crack_left};
use crate::tree::PrefixClosedSet;
use crate::words::SignedWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// `{(u, v) : a·u = b·v}`
    #[serde(rename = "R")]
    R,
    /// `{u : a·u = b·u}`
    #[serde(rename = "r")]
    SmallR,
    /// `{(u, v) : u·a = v·b}`
    #[serde(rename = "L")]
    L,
    /// `{u : u·a = u·b}`
    #[serde(rename = "l")]
    SmallL,
}

impl Condition {
    pub fn is_right(self) -> bool {
        matches!(self, Condition::R | Condition::SmallR)
    }

    /// True for the one-sided ideals `r` and `l`.
    pub fn is_ideal(self) -> bool {
        matches!(self, Condition::SmallR | Condition::SmallL)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::R => "R",
            Condition::SmallR => "r",
            Condition::L => "L",
            Condition::SmallL => "l",
        })
    }
}

impl std::str::FromStr for Condition {
    type Err = MunnError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" => Ok(Condition::R),
            "r" => Ok(Condition::SmallR),
            "L" => Ok(Condition::L),
            "l" => Ok(Condition::SmallL),
            other => Err(MunnError::Parse(format!("unknown condition `{other}`"))),
        }
    }
}

/// A generating set. For `r` and `l` each generator is stored as `(u, u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSetReport {
    pub condition: Condition,
    pub a: MonoidElement,
    pub b: MonoidElement,
    pub generators: Vec<(MonoidElement, MonoidElement)>,
    pub empty: bool,
}

impl GeneratingSetReport {
    fn new(
        condition: Condition,
        a: &MonoidElement,
        b: &MonoidElement,
        mut generators: Vec<(MonoidElement, MonoidElement)>,
    ) -> Self {
        generators.sort();
        generators.dedup();
        GeneratingSetReport {
            condition,
            a: a.clone(),
            b: b.clone(),
            empty: generators.is_empty(),
            generators,
        }
    }

    /// The generators of an ideal condition as single elements.
    pub fn elements(&self) -> Vec<&MonoidElement> {
        self.generators.iter().map(|(u, _)| u).collect()
    }

    pub fn contains(&self, u: &MonoidElement, v: &MonoidElement) -> bool {
        self.generators.iter().any(|(x, y)| x == u && y == v)
    }
}

fn same(a: &MonoidElement, b: &MonoidElement) -> Result<Flavor> {
    if a.flavor() != b.flavor() {
        return Err(MunnError::FlavorMismatch {
            left: a.flavor(),
            right: b.flavor(),
        });
    }
    Ok(a.flavor())
}

/// Elements `(T, q)` of `flavor` for every `q ∈ T`.
fn on_set(t: &PrefixClosedSet, flavor: Flavor) -> Vec<MonoidElement> {
    t.words()
        .into_iter()
        .filter_map(|q| MonoidElement::new(t.clone(), q, flavor).ok())
        .collect()
}

/// `{(u, v) : a·u = b·v, A ∪ aU = A ∪ B}`.
pub fn gen_r_pairs(a: &MonoidElement, b: &MonoidElement) -> Result<GeneratingSetReport> {
    let flavor = same(a, b)?;
    let t = a.set().union(b.set());
    let mut out = Vec::new();
    for m in on_set(&t, flavor) {
        let us = right_factors(a, &m);
        if us.is_empty() {
            continue;
        }
        for v in right_factors(b, &m) {
            out.extend(us.iter().map(|u| (u.clone(), v.clone())));
        }
    }
    Ok(GeneratingSetReport::new(Condition::R, a, b, out))
}

/// `{u : a·u = b·u, A ∪ aU = A ∪ B}`.
pub fn gen_r(a: &MonoidElement, b: &MonoidElement) -> Result<GeneratingSetReport> {
    let flavor = same(a, b)?;
    let t = a.set().union(b.set());
    let mut out = Vec::new();
    for m in on_set(&t, flavor) {
        let vs = right_factors(b, &m);
        for u in right_factors(a, &m) {
            if vs.contains(&u) {
                out.push((u.clone(), u));
            }
        }
    }
    Ok(GeneratingSetReport::new(Condition::SmallR, a, b, out))
}

/// The target tree for the left conditions in `FLA`: `B ∪ yA` when
/// `b = y·a`, `A ∪ yB` when `a = y·b`, `None` when neither point is a
/// suffix of the other.
fn left_target(a: &MonoidElement, b: &MonoidElement) -> Option<PrefixClosedSet> {
    if let Some(y) = b.point().strip_suffix(a.point()) {
        b.set().graft(&y, a.set())
    } else {
        let y = a.point().strip_suffix(b.point())?;
        a.set().graft(&y, b.set())
    }
}

/// Anti-automorphism used to transport right-hand results to the left in
/// `FI` (inversion) and `FA` (inversion followed by flipping every letter).
pub fn fi_duality(m: &MonoidElement) -> Result<MonoidElement> {
    match m.flavor() {
        Flavor::FI => m.inverse(),
        Flavor::FA => {
            let set = m.set().reroot(m.point()).expect("point in set");
            let flip =
                |w: &SignedWord| SignedWord::from_letters(w.letters().iter().map(|l| l.inverse()));
            let words: Vec<SignedWord> = set.words().iter().map(flip).collect();
            let point = flip(&m.point().inverse());
            MonoidElement::new(PrefixClosedSet::closure(words.iter()), point, Flavor::FA)
        }
        Flavor::FLA => Err(MunnError::UnsupportedFlavor {
            flavor: Flavor::FLA,
            operation: "fi_duality",
        }),
    }
}

fn dual_pairs(
    r: &GeneratingSetReport,
    condition: Condition,
    a: &MonoidElement,
    b: &MonoidElement,
) -> Result<GeneratingSetReport> {
    let mut out = Vec::with_capacity(r.generators.len());
    for (u, v) in &r.generators {
        out.push((fi_duality(u)?, fi_duality(v)?));
    }
    Ok(GeneratingSetReport::new(condition, a, b, out))
}

/// `{(u, v) : u·a = v·b, U ∪ uA = B ∪ yA}` in `FLA`; through the duality
/// in `FI` and `FA`.
pub fn gen_l_pairs(a: &MonoidElement, b: &MonoidElement) -> Result<GeneratingSetReport> {
    let flavor = same(a, b)?;
    if flavor != Flavor::FLA {
        let r = gen_r_pairs(&fi_duality(a)?, &fi_duality(b)?)?;
        return dual_pairs(&r, Condition::L, a, b);
    }
    let Some(t) = left_target(a, b) else {
        return Ok(GeneratingSetReport::new(Condition::L, a, b, Vec::new()));
    };
    let mut out = Vec::new();
    for m in on_set(&t, flavor) {
        let us = left_factors(&m, a);
        if us.is_empty() {
            continue;
        }
        for v in left_factors(&m, b) {
            out.extend(us.iter().map(|u| (u.clone(), v.clone())));
        }
    }
    Ok(GeneratingSetReport::new(Condition::L, a, b, out))
}

/// `{u : u·a = u·b, U ∪ uA = B ∪ yA}` in `FLA`; through the duality in `FI`
/// and `FA`.
pub fn gen_l(a: &MonoidElement, b: &MonoidElement) -> Result<GeneratingSetReport> {
    let flavor = same(a, b)?;
    if flavor != Flavor::FLA {
        let r = gen_r(&fi_duality(a)?, &fi_duality(b)?)?;
        return dual_pairs(&r, Condition::SmallL, a, b);
    }
    let Some(t) = left_target(a, b) else {
        return Ok(GeneratingSetReport::new(
            Condition::SmallL,
            a,
            b,
            Vec::new(),
        ));
    };
    let mut out = Vec::new();
    for m in on_set(&t, flavor) {
        let vs = left_factors(&m, b);
        for u in left_factors(&m, a) {
            if vs.contains(&u) {
                out.push((u.clone(), u));
            }
        }
    }
    Ok(GeneratingSetReport::new(Condition::SmallL, a, b, out))
}

/// Computes the report for `condition`.
pub fn generating_set(
    condition: Condition,
    a: &MonoidElement,
    b: &MonoidElement,
) -> Result<GeneratingSetReport> {
    match condition {
        Condition::R => gen_r_pairs(a, b),
        Condition::SmallR => gen_r(a, b),
        Condition::L => gen_l_pairs(a, b),
        Condition::SmallL => gen_l(a, b),
    }
}

/// A reduced pair with `(u, v) = (u₀, v₀)·tail` (or `head·(u₀, v₀)` for the
/// left reducer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPair {
    pub u0: MonoidElement,
    pub v0: MonoidElement,
    pub factor: MonoidElement,
    pub steps: usize,
}

/// Cracks leaves outside `A ∪ B` until `A ∪ aU = A ∪ B`.
pub fn reduce_pair(
    a: &MonoidElement,
    u: &MonoidElement,
    b: &MonoidElement,
    v: &MonoidElement,
) -> Result<ReducedPair> {
    let flavor = same(a, b)?;
    same(a, u)?;
    same(a, v)?;
    let au = a * u;
    if au != b * v {
        return Err(MunnError::pre("a·u = b·v", format!("{au:?} ≠ {:?}", b * v)));
    }
    let ab = a.set().union(b.set());
    let (mut uc, mut vc) = (u.clone(), v.clone());
    let mut tail = MonoidElement::identity(flavor);
    let mut steps = 0;
    loop {
        let m = a * &uc;
        let mut leaves: Vec<SignedWord> =
            m.leaves().into_iter().filter(|x| !ab.contains(x)).collect();
        leaves.sort();
        let Some(x) = leaves.into_iter().next() else {
            break;
        };
        let r = crack(a, &uc, b, &vc, &x)?;
        uc = r.u_prime;
        vc = r.v_prime;
        tail = &r.z * &tail;
        steps += 1;
    }
    if (a * &uc).set() != &ab || &(&uc * &tail) != u || &(&vc * &tail) != v {
        return Err(MunnError::post(
            "(u, v) = (u₀, v₀)·tail with A ∪ aU₀ = A ∪ B",
            String::new(),
        ));
    }
    Ok(ReducedPair {
        u0: uc,
        v0: vc,
        factor: tail,
        steps,
    })
}

/// Left analogue of [`reduce_pair`] in `FLA` for `u·a = v·b`.
pub fn reduce_pair_left(
    u: &MonoidElement,
    a: &MonoidElement,
    v: &MonoidElement,
    b: &MonoidElement,
) -> Result<ReducedPair> {
    let flavor = same(a, b)?;
    same(a, u)?;
    same(a, v)?;
    if flavor != Flavor::FLA {
        return Err(MunnError::UnsupportedFlavor {
            flavor,
            operation: "reduce_pair_left",
        });
    }
    let ua = u * a;
    if ua != v * b {
        return Err(MunnError::pre("u·a = v·b", format!("{ua:?} ≠ {:?}", v * b)));
    }
    let target = left_target(a, b)
        .ok_or_else(|| MunnError::post("one point is a suffix of the other", String::new()))?;
    let (mut uc, mut vc) = (u.clone(), v.clone());
    let mut head = MonoidElement::identity(flavor);
    let mut steps = 0;
    loop {
        let m = &uc * a;
        if m.set() == &target {
            break;
        }
        let shifted = |p: &MonoidElement, c: &MonoidElement, x: &SignedWord| {
            x.strip_prefix(p.point())
                .map_or(false, |k| c.set().contains(&k))
        };
        let mut leaves: Vec<SignedWord> = m
            .leaves()
            .into_iter()
            .filter(|x| !shifted(&uc, a, x) && !shifted(&vc, b, x))
            .collect();
        leaves.sort();
        let x = leaves.into_iter().next().unwrap_or_else(SignedWord::empty);
        let r = crack_left(&uc, a, &vc, b, &x)?;
        uc = r.u_prime;
        vc = r.v_prime;
        head = &head * &r.z;
        steps += 1;
    }
    if &(&head * &uc) != u || &(&head * &vc) != v {
        return Err(MunnError::post("(u, v) = head·(u₀, v₀)", String::new()));
    }
    Ok(ReducedPair {
        u0: uc,
        v0: vc,
        factor: head,
        steps,
    })
}

/// Whether `(u, v)` is `(x, y)·s` for a generator `(x, y)` (right
/// conditions) or `s·(x, y)` (left conditions), by exhaustive factor search.
pub fn factors_through(
    report: &GeneratingSetReport,
    u: &MonoidElement,
    v: &MonoidElement,
) -> Option<MonoidElement> {
    for (x, y) in &report.generators {
        let (su, sv) = if report.condition.is_right() {
            (right_factors(x, u), right_factors(y, v))
        } else {
            (left_factors(u, x), left_factors(v, y))
        };
        if let Some(s) = su.into_iter().find(|s| sv.contains(s)) {
            return Some(s);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fla(set: &[&[usize]], point: &[usize]) -> MonoidElement {
        let words: Vec<SignedWord> = set
            .iter()
            .map(|w| SignedWord::positive(w.iter().copied()))
            .collect();
        MonoidElement::new(
            PrefixClosedSet::closure(words.iter()),
            SignedWord::positive(point.iter().copied()),
            Flavor::FLA,
        )
        .unwrap()
    }

    #[test]
    fn identity_pair() {
        for f in [Flavor::FI, Flavor::FA, Flavor::FLA] {
            let one = MonoidElement::identity(f);
            for c in [
                Condition::R,
                Condition::SmallR,
                Condition::L,
                Condition::SmallL,
            ] {
                let r = generating_set(c, &one, &one).unwrap();
                assert_eq!(r.generators, vec![(one.clone(), one.clone())], "{f} {c}");
            }
        }
    }

    #[test]
    fn distinct_generators_have_no_equalizer() {
        let x = MonoidElement::generator(0, Flavor::FLA);
        let y = MonoidElement::generator(1, Flavor::FLA);
        assert!(gen_r(&x, &y).unwrap().empty);
        assert!(gen_l_pairs(&x, &y).unwrap().empty);
        assert!(gen_r_pairs(&x, &y).unwrap().empty);
        let (x, y) = (
            MonoidElement::generator(0, Flavor::FI),
            MonoidElement::generator(1, Flavor::FI),
        );
        let r = gen_r_pairs(&x, &y).unwrap();
        assert!(!r.empty);
        for (u, v) in &r.generators {
            assert_eq!(&x * u, &y * v);
            assert_eq!((&x * u).set(), &x.set().union(y.set()));
        }
    }

    #[test]
    fn idempotent_equalizer_in_fi() {
        let f = Flavor::FI;
        let a = MonoidElement::generator(0, f).plus();
        let one = MonoidElement::identity(f);
        let r = gen_r(&a, &one).unwrap();
        assert!(r.elements().contains(&&a));
        assert_eq!(&a * &a, &one * &a);
    }

    #[test]
    fn duality_is_an_anti_automorphism() {
        for f in [Flavor::FI, Flavor::FA] {
            let x = MonoidElement::generator(0, f);
            let y = MonoidElement::generator(1, f);
            let m = &(&x * &y) * &x.star().unwrap();
            let n = &y.plus() * &x;
            assert_eq!(
                fi_duality(&(&m * &n)).unwrap(),
                &fi_duality(&n).unwrap() * &fi_duality(&m).unwrap()
            );
            assert_eq!(fi_duality(&fi_duality(&m).unwrap()).unwrap(), m);
            assert!(fi_duality(&MonoidElement::identity(f))
                .unwrap()
                .is_identity());
        }
        assert!(fi_duality(&MonoidElement::generator(0, Flavor::FLA)).is_err());
    }

    #[test]
    fn reduce_pair_returns_generator() {
        let a = MonoidElement::generator(0, Flavor::FLA);
        let b = MonoidElement::generator(1, Flavor::FLA);
        let gens = gen_r_pairs(&a, &b).unwrap();
        let s = fla(&[&[1, 0], &[0]], &[1]);
        for (u0, v0) in &gens.generators {
            let (u, v) = (u0 * &s, v0 * &s);
            let r = reduce_pair(&a, &u, &b, &v).unwrap();
            assert!(gens.contains(&r.u0, &r.v0));
            assert_eq!((&r.u0 * &r.factor, &r.v0 * &r.factor), (u, v));
            let done = reduce_pair(&a, &r.u0, &b, &r.v0).unwrap();
            assert!(done.factor.is_identity());
        }
    }

    #[test]
    fn left_example() {
        let a = MonoidElement::generator(0, Flavor::FLA);
        let b = fla(&[&[1, 0]], &[1, 0]);
        let gens = gen_l_pairs(&a, &b).unwrap();
        assert!(!gens.empty);
        for (u, v) in &gens.generators {
            assert_eq!(u * &a, v * &b);
        }
        let s = fla(&[&[0, 0], &[1]], &[0]);
        let (u, v) = gens.generators[0].clone();
        let (su, sv) = (&s * &u, &s * &v);
        let r = reduce_pair_left(&su, &a, &sv, &b).unwrap();
        assert!(gens.contains(&r.u0, &r.v0));
        assert!(factors_through(&gens, &su, &sv).is_some());
    }
}

//! Leaf factorization: peeling one leaf off a product equation.
//!
//! Every function checks its inputs, builds the factors from closed-form
//! formulas and then re-multiplies them, so a returned [`CrackResult`] has
//! always been verified.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::{Flavor, MonoidElement};
use crate::error::{MunnError, Result};
use crate::tree::PrefixClosedSet;
use crate::words::{longest_common_prefix, SignedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
    Case4,
    LeftLeaf,
    LeftRoot,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Case3 => "case3",
            CaseTag::Case4 => "case4",
            CaseTag::LeftLeaf => "left_leaf",
            CaseTag::LeftRoot => "left_root",
        })
    }
}

/// Output of a crack.
///
/// For the right-hand variants `u = u_prime·z` and `v = v_prime·z`; for
/// [`crack_left`] `u = z·u_prime` and `v = z·v_prime`. In [`crack_fla`] the
/// fields hold `z′`, `V′` and the peeled factor `x` in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrackResult {
    pub u_prime: MonoidElement,
    pub v_prime: MonoidElement,
    pub z: MonoidElement,
    pub case_tag: CaseTag,
    /// `|D ∪ dZ′| < |D ∪ dZ|`, recomputed (only set by [`crack_fla`]).
    pub flag_a: Option<bool>,
    /// `w(b·v′) < w(b·v)`, recomputed (only set by [`crack_fla`]).
    pub flag_b: Option<bool>,
}

fn same_flavor(elems: &[&MonoidElement]) -> Result<Flavor> {
    let f = elems[0].flavor();
    for e in &elems[1..] {
        if e.flavor() != f {
            return Err(MunnError::FlavorMismatch {
                left: f,
                right: e.flavor(),
            });
        }
    }
    Ok(f)
}

fn require_fla(f: Flavor, operation: &'static str) -> Result<()> {
    if f == Flavor::FLA {
        Ok(())
    } else {
        Err(MunnError::UnsupportedFlavor {
            flavor: f,
            operation,
        })
    }
}

fn check(cond: bool, name: &'static str, detail: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(MunnError::post(name, detail()))
    }
}

fn element(
    set: PrefixClosedSet,
    point: SignedWord,
    flavor: Flavor,
    what: &'static str,
) -> Result<MonoidElement> {
    MonoidElement::new(set, point, flavor).map_err(|e| MunnError::post(what, e.to_string()))
}

fn remove_leaf(
    set: &PrefixClosedSet,
    w: &SignedWord,
    what: &'static str,
) -> Result<PrefixClosedSet> {
    set.remove_leaf(w)
        .ok_or_else(|| MunnError::post(what, format!("{w:?} is not a removable leaf of {set:?}")))
}

/// Removes the leaf `x ∉ A ∪ B` from the tree of `a·u = b·v`.
///
/// In `FLA` this delegates to [`crack_fla`] with `d = a`, `z = u` and the
/// leaf `a⁻¹x` of `U`.
pub fn crack(
    a: &MonoidElement,
    u: &MonoidElement,
    b: &MonoidElement,
    v: &MonoidElement,
    x: &SignedWord,
) -> Result<CrackResult> {
    let flavor = same_flavor(&[a, u, b, v])?;
    let au = a * u;
    if au != b * v {
        return Err(MunnError::pre("a·u = b·v", format!("{au:?} ≠ {:?}", b * v)));
    }
    if u.is_identity() {
        return Err(MunnError::pre("u ≠ 1", "u is the identity"));
    }
    if !au.set().is_leaf(x) {
        return Err(MunnError::pre(
            "x is a leaf of A ∪ aU",
            format!("{x:?} is not a leaf of {:?}", au.set()),
        ));
    }
    if a.set().contains(x) || b.set().contains(x) {
        return Err(MunnError::pre("x ∉ A ∪ B", format!("{x:?} lies in A ∪ B")));
    }

    let result = if flavor == Flavor::FLA {
        let k = a.point().inverse().concat(x);
        crack_fla(a, u, b, v, &k)?
    } else {
        crack_free(a, u, b, v, x, &au)?
    };

    let au1 = a * &result.u_prime;
    check(au1 == b * &result.v_prime, "a·u′ = b·v′", || {
        format!("{au1:?} ≠ {:?}", b * &result.v_prime)
    })?;
    check(
        au1.set().len() < au.set().len(),
        "|A ∪ aU′| < |A ∪ aU|",
        || format!("{} ≥ {}", au1.set().len(), au.set().len()),
    )?;
    check(&(&result.u_prime * &result.z) == u, "u = u′·z", String::new)?;
    check(&(&result.v_prime * &result.z) == v, "v = v′·z", String::new)?;
    check(
        u != v || result.u_prime == result.v_prime,
        "u = v ⇒ u′ = v′",
        String::new,
    )?;
    Ok(result)
}

fn crack_free(
    a: &MonoidElement,
    u: &MonoidElement,
    b: &MonoidElement,
    v: &MonoidElement,
    x: &SignedWord,
    au: &MonoidElement,
) -> Result<CrackResult> {
    let flavor = a.flavor();
    if x != au.point() {
        // The peeled factor is the idempotent (z↓, ε) with z = (au)⁻¹x.
        let z = au.point().inverse().concat(x);
        let ka = a.point().inverse().concat(x);
        let kb = b.point().inverse().concat(x);
        let u1 = element(
            remove_leaf(u.set(), &ka, "a⁻¹x is a leaf of U")?,
            u.point().clone(),
            flavor,
            "u′",
        )?;
        let v1 = element(
            remove_leaf(v.set(), &kb, "b⁻¹x is a leaf of V")?,
            v.point().clone(),
            flavor,
            "v′",
        )?;
        let zf = element(z.prefixes(), SignedWord::empty(), flavor, "z")?;
        Ok(CrackResult {
            u_prime: u1,
            v_prime: v1,
            z: zf,
            case_tag: CaseTag::Case1,
            flag_a: None,
            flag_b: None,
        })
    } else {
        let last = x.last().expect("x ∉ A so x ≠ ε");
        let step = SignedWord::letter(last);
        let cut = |m: &MonoidElement, what: &'static str| -> Result<MonoidElement> {
            if m.point().last() != Some(last) {
                return Err(MunnError::post(
                    what,
                    format!("{:?} does not end in {last:?}", m.point()),
                ));
            }
            let mut p = m.point().clone();
            p.pop();
            element(remove_leaf(m.set(), m.point(), what)?, p, flavor, what)
        };
        let u1 = cut(u, "u′")?;
        let v1 = cut(v, "v′")?;
        let zf = element(step.prefixes(), step, flavor, "z")?;
        Ok(CrackResult {
            u_prime: u1,
            v_prime: v1,
            z: zf,
            case_tag: CaseTag::Case2,
            flag_a: None,
            flag_b: None,
        })
    }
}

/// The four-case crack in `FLA`: `d·z = b·v`, `x` a leaf of `Z` with
/// `dx ∉ B`. Returns `(z′, v′, x)` with `z = z′·x` and `v = v′·x`.
pub fn crack_fla(
    d: &MonoidElement,
    z: &MonoidElement,
    b: &MonoidElement,
    v: &MonoidElement,
    x: &SignedWord,
) -> Result<CrackResult> {
    let flavor = same_flavor(&[d, z, b, v])?;
    require_fla(flavor, "crack_fla")?;
    let dz = d * z;
    let bv = b * v;
    if dz != bv {
        return Err(MunnError::pre("d·z = b·v", format!("{dz:?} ≠ {bv:?}")));
    }
    if z.is_identity() {
        return Err(MunnError::pre("z ≠ 1", "z is the identity"));
    }
    if !z.set().is_leaf(x) {
        return Err(MunnError::pre(
            "x is a leaf of Z",
            format!("{x:?} is not a leaf of {:?}", z.set()),
        ));
    }
    let dx = d.point().concat(x);
    if b.set().contains(&dx) {
        return Err(MunnError::pre("dx ∉ B", format!("{dx:?} lies in B")));
    }
    let in_d = d.set().contains(&dx);
    let zp = z.point();
    let vp = v.point();
    let z_rest = remove_leaf(z.set(), x, "x is a leaf of Z")?;

    let (case_tag, z1, xf, v1) = if x == zp {
        let last = x.last().expect("x = z and z ≠ 1 force x ≠ ε");
        let step = SignedWord::letter(last);
        let mut zw = zp.clone();
        zw.pop();
        let z1 = element(z_rest, zw, flavor, "z′")?;
        let xf = element(step.prefixes(), step.clone(), flavor, "x factor")?;
        let vw = vp
            .strip_suffix(&step)
            .ok_or_else(|| MunnError::post("v ends in the last letter of x", format!("{vp:?}")))?;
        let vset = if in_d {
            v.set().clone()
        } else {
            remove_leaf(v.set(), vp, "v is a leaf of V")?
        };
        let v1 = element(vset, vw, flavor, "v′")?;
        (
            if in_d { CaseTag::Case3 } else { CaseTag::Case2 },
            z1,
            xf,
            v1,
        )
    } else {
        let (zw, zt, xt) = longest_common_prefix(zp, x);
        let xset = PrefixClosedSet::closure([&xt, &zt]);
        let z1 = element(z_rest, zw, flavor, "z′")?;
        let xf = element(xset, zt.clone(), flavor, "x factor")?;
        let vw = vp
            .strip_suffix(&zt)
            .ok_or_else(|| MunnError::post("z̃ is a suffix of v", format!("{vp:?}")))?;
        let vset = if in_d {
            v.set().clone()
        } else {
            let leaf = b.point().inverse().concat(&dx);
            remove_leaf(v.set(), &leaf, "b⁻¹dx is a leaf of V")?
        };
        let v1 = element(vset, vw, flavor, "v′")?;
        (
            if in_d { CaseTag::Case4 } else { CaseTag::Case1 },
            z1,
            xf,
            v1,
        )
    };

    let dz1 = d * &z1;
    let bv1 = b * &v1;
    check(dz1 == bv1, "d·z′ = b·v′", || {
        format!("{dz1:?} ≠ {bv1:?}")
    })?;
    check(&(&z1 * &xf) == z, "z = z′·x", String::new)?;
    check(&(&v1 * &xf) == v, "v = v′·x", String::new)?;
    check(z1.weight() < z.weight(), "w(z′) < w(z)", String::new)?;
    let flag_a = dz1.set().len() < dz.set().len();
    let flag_b = bv1.weight() < bv.weight();
    let claims_a = matches!(case_tag, CaseTag::Case1 | CaseTag::Case2);
    let claims_b = claims_a || case_tag == CaseTag::Case3;
    check(!claims_a || flag_a, "|D ∪ dZ′| < |D ∪ dZ|", || {
        case_tag.to_string()
    })?;
    check(
        !claims_a || z != v || z1 == v1,
        "z = v ⇒ z′ = v′",
        || case_tag.to_string(),
    )?;
    check(!claims_b || flag_b, "w(b·v′) < w(b·v)", || {
        case_tag.to_string()
    })?;
    Ok(CrackResult {
        u_prime: z1,
        v_prime: v1,
        z: xf,
        case_tag,
        flag_a: Some(flag_a),
        flag_b: Some(flag_b),
    })
}

/// The left-handed crack in `FLA`: `u·a = v·b`, with `x ∉ uA ∪ vB` either a
/// leaf of `U ∪ uA` or `ε` with a root of degree one. Returns `(u′, v′, z)`
/// with `u = z·u′` and `v = z·v′`.
pub fn crack_left(
    u: &MonoidElement,
    a: &MonoidElement,
    v: &MonoidElement,
    b: &MonoidElement,
    x: &SignedWord,
) -> Result<CrackResult> {
    let flavor = same_flavor(&[u, a, v, b])?;
    require_fla(flavor, "crack_left")?;
    let ua = u * a;
    let vb = v * b;
    if ua != vb {
        return Err(MunnError::pre("u·a = v·b", format!("{ua:?} ≠ {vb:?}")));
    }
    let total = ua.set();
    if !total.contains(x) {
        return Err(MunnError::pre(
            "x ∈ U ∪ uA",
            format!("{x:?} is not a member"),
        ));
    }
    let in_shift = |m: &MonoidElement, c: &MonoidElement| {
        x.strip_prefix(m.point())
            .map_or(false, |k| c.set().contains(&k))
    };
    if in_shift(u, a) || in_shift(v, b) {
        return Err(MunnError::pre(
            "x ∉ uA ∪ vB",
            format!("{x:?} lies in uA ∪ vB"),
        ));
    }

    let (case_tag, z, u1, v1) = if x.is_empty() && !total.is_leaf(x) {
        let firsts: Vec<_> = total.words().iter().filter_map(|w| w.first()).collect();
        let first = firsts[0];
        if firsts.iter().any(|&l| l != first) {
            return Err(MunnError::pre(
                "all nonempty members share a first letter",
                format!("{total:?} branches at the root"),
            ));
        }
        let step = SignedWord::letter(first);
        let shift = |m: &MonoidElement, what: &'static str| -> Result<MonoidElement> {
            let set = m.set().quotient(&step).ok_or_else(|| {
                MunnError::post(what, "first letter is not in the set".to_string())
            })?;
            let point = m
                .point()
                .strip_prefix(&step)
                .ok_or_else(|| MunnError::post(what, "point does not start with z".to_string()))?;
            element(set, point, flavor, what)
        };
        let u1 = shift(u, "u′")?;
        let v1 = shift(v, "v′")?;
        let zf = element(step.prefixes(), step, flavor, "z")?;
        (CaseTag::LeftRoot, zf, u1, v1)
    } else {
        if !total.is_leaf(x) || x.is_empty() {
            return Err(MunnError::pre(
                "x is a leaf, or x = ε with a root of degree one",
                format!("{x:?} in {total:?}"),
            ));
        }
        let u1 = element(
            remove_leaf(u.set(), x, "x is a leaf of U")?,
            u.point().clone(),
            flavor,
            "u′",
        )?;
        let v1 = element(
            remove_leaf(v.set(), x, "x is a leaf of V")?,
            v.point().clone(),
            flavor,
            "v′",
        )?;
        let zf = element(x.prefixes(), SignedWord::empty(), flavor, "z")?;
        (CaseTag::LeftLeaf, zf, u1, v1)
    };

    let u1a = &u1 * a;
    check(u1a == &v1 * b, "u′·a = v′·b", String::new)?;
    check(
        u1a.set().len() < total.len(),
        "|U′ ∪ u′A| < |U ∪ uA|",
        String::new,
    )?;
    check(&(&z * &u1) == u, "u = z·u′", String::new)?;
    check(&(&z * &v1) == v, "v = z·v′", String::new)?;
    check(u != v || u1 == v1, "u = v ⇒ u′ = v′", String::new)?;
    Ok(CrackResult {
        u_prime: u1,
        v_prime: v1,
        z,
        case_tag,
        flag_a: None,
        flag_b: None,
    })
}

/// Splits the tail `x` off `B = x↓ ∪ b↓`, returning `x`.
fn roll_tail(bf: &MonoidElement) -> Result<SignedWord> {
    let b = bf.point();
    let leaves = bf.leaves();
    let x = match leaves.as_slice() {
        [only] if b.is_empty() => only.clone(),
        [l1, l2] if l1 == b => l2.clone(),
        [l1, l2] if l2 == b => l1.clone(),
        _ => {
            return Err(MunnError::pre(
                "b factor = (x↓ ∪ b↓, b)",
                format!("{bf:?} is not of that shape"),
            ))
        }
    };
    if x.is_empty() {
        return Err(MunnError::pre("x ≠ ε", format!("{bf:?}")));
    }
    let (p, _, _) = longest_common_prefix(b, &x);
    if !p.is_empty() {
        return Err(MunnError::pre(
            "b and x share no nonempty prefix",
            format!("{bf:?}"),
        ));
    }
    Ok(x)
}

/// Carries the factor `(x↓ ∪ b↓, b)` across `a·b = c·d`: returns `d′` with
/// `a = c·d′` and `d = d′·b`.
pub fn roll(
    a: &MonoidElement,
    b_factor: &MonoidElement,
    c: &MonoidElement,
    d: &MonoidElement,
) -> Result<MonoidElement> {
    let flavor = same_flavor(&[a, b_factor, c, d])?;
    require_fla(flavor, "roll")?;
    let ab = a * b_factor;
    if ab != c * d {
        return Err(MunnError::pre("a·b = c·d", format!("{ab:?} ≠ {:?}", c * d)));
    }
    let x = roll_tail(b_factor)?;
    let ax = a.point().concat(&x);
    if a.set().contains(&ax) || c.set().contains(&ax) {
        return Err(MunnError::pre("ax ∉ A ∪ C", format!("{ax:?}")));
    }
    match ab.set().remove_leaf(&ax) {
        Some(rest) if &rest == a.set() => {}
        _ => {
            return Err(MunnError::pre(
                "A = (A ∪ aB) ∖ {ax}",
                format!("{:?} vs {:?}", a.set(), ab.set()),
            ))
        }
    }
    let dp = a
        .point()
        .strip_prefix(c.point())
        .ok_or_else(|| MunnError::post("c is a prefix of a", format!("{:?}", c.point())))?;
    let set = remove_leaf(d.set(), &dp.concat(&x), "d′x is a leaf of D")?;
    let d1 = element(set, dp, flavor, "d′")?;
    check(&(c * &d1) == a, "a = c·d′", String::new)?;
    check(&(&d1 * b_factor) == d, "d = d′·b", String::new)?;
    Ok(d1)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: Flavor = Flavor::FLA;

    fn w(ix: &[usize]) -> SignedWord {
        SignedWord::positive(ix.iter().copied())
    }

    fn el(words: &[&[usize]], point: &[usize], flavor: Flavor) -> MonoidElement {
        let ws: Vec<SignedWord> = words.iter().map(|x| w(x)).collect();
        MonoidElement::new(PrefixClosedSet::closure(&ws), w(point), flavor).unwrap()
    }

    #[test]
    fn crack_generator_pair() {
        let a = MonoidElement::generator(0, F);
        let u = MonoidElement::generator(1, F);
        let r = crack(&a, &u, &a, &u, &w(&[0, 1])).unwrap();
        assert_eq!(r.u_prime, r.v_prime);
        assert_eq!(&r.u_prime * &r.z, u);
        assert_eq!(r.case_tag, CaseTag::Case2);
    }

    #[test]
    fn crack_free_case_ii_peels_last_letter() {
        let fi = Flavor::FI;
        let a = MonoidElement::generator(0, fi);
        let yinv = MonoidElement::generator(1, fi).inverse().unwrap();
        let u = &yinv * &yinv;
        let x = a.point().concat(u.point());
        let r = crack(&a, &u, &a, &u, &x).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case2);
        assert_eq!(r.z, yinv);
        assert_eq!(r.u_prime, yinv);
    }

    #[test]
    fn crack_free_case_i_peels_an_idempotent() {
        let fi = Flavor::FI;
        let a = MonoidElement::generator(0, fi);
        let y = MonoidElement::generator(1, fi);
        let yinv = y.inverse().unwrap();
        let u = &y.plus() * &yinv.plus();
        let au = &a * &u;
        let leaf = a.point().concat(yinv.point());
        assert!(au.set().is_leaf(&leaf));
        let r = crack(&a, &u, &a, &u, &leaf).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case1);
        assert_eq!(r.z, yinv.plus());
        assert_eq!(r.u_prime, y.plus());
    }

    #[test]
    fn crack_rejects_bad_leaves() {
        let a = MonoidElement::generator(0, F);
        let u = MonoidElement::generator(1, F);
        assert!(matches!(
            crack(&a, &u, &a, &u, &w(&[0])),
            Err(MunnError::Precondition { .. })
        ));
        assert!(matches!(
            crack(&a, &u, &a, &u, &w(&[1])),
            Err(MunnError::Precondition { .. })
        ));
        let one = MonoidElement::identity(F);
        assert!(crack(&a, &one, &a, &one, &w(&[0])).is_err());
    }

    #[test]
    fn crack_fla_case_two_on_generator() {
        let one = MonoidElement::identity(F);
        let g = MonoidElement::generator(0, F);
        let r = crack_fla(&one, &g, &one, &g, &w(&[0])).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case2);
        assert_eq!(r.u_prime, one);
        assert_eq!(r.z, g);
        assert_eq!(r.v_prime, one);
        assert_eq!(r.flag_a, Some(true));
        assert_eq!(r.flag_b, Some(true));
    }

    #[test]
    fn crack_fla_case_three() {
        let d = el(&[&[0]], &[], F);
        let z = MonoidElement::generator(0, F);
        let one = MonoidElement::identity(F);
        let v = &d * &z;
        let r = crack_fla(&d, &z, &one, &v, &w(&[0])).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case3);
        assert_eq!(r.v_prime.set(), v.set());
        assert!(r.v_prime.point().is_empty());
        assert_eq!(r.flag_b, Some(true));
        assert_eq!(r.flag_a, Some(false));
    }

    #[test]
    fn crack_fla_case_four() {
        let one = MonoidElement::identity(F);
        // Idempotent z̃: both flags false.
        let d = el(&[&[0]], &[], F);
        let z = el(&[&[0]], &[], F);
        let v = &d * &z;
        let r = crack_fla(&d, &z, &one, &v, &w(&[0])).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case4);
        assert_eq!(r.v_prime.set(), v.set());
        assert_eq!(r.flag_a, Some(false));
        assert_eq!(r.flag_b, Some(false));
        // Non-idempotent z̃: the point still shrinks.
        let d = el(&[&[0], &[1]], &[], F);
        let z = el(&[&[0], &[1]], &[1], F);
        let v = &d * &z;
        let r = crack_fla(&d, &z, &one, &v, &w(&[0])).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case4);
        assert_eq!(r.v_prime, el(&[&[0], &[1]], &[], F));
        assert_eq!(r.flag_a, Some(false));
        assert_eq!(r.flag_b, Some(true));
    }

    #[test]
    fn crack_left_cases() {
        let a = MonoidElement::generator(1, F);
        let u = el(&[&[0, 0], &[1]], &[], F);
        let r = crack_left(&u, &a, &u, &a, &w(&[0, 0])).unwrap();
        assert_eq!(r.case_tag, CaseTag::LeftLeaf);
        assert_eq!(r.z, el(&[&[0, 0]], &[], F));
        assert_eq!(r.u_prime, r.v_prime);
        assert_eq!(r.u_prime, el(&[&[0], &[1]], &[], F));

        let u = el(&[&[0, 1]], &[0], F);
        let r = crack_left(&u, &a, &u, &a, &SignedWord::empty()).unwrap();
        assert_eq!(r.case_tag, CaseTag::LeftRoot);
        assert_eq!(r.z, MonoidElement::generator(0, F));
        assert_eq!(r.u_prime, el(&[&[1]], &[], F));
        assert_eq!(r.u_prime, r.v_prime);
    }

    #[test]
    fn roll_with_trivial_c() {
        let one = MonoidElement::identity(F);
        let a = MonoidElement::generator(1, F);
        let bf = el(&[&[0]], &[], F);
        let d = &a * &bf;
        let d1 = roll(&a, &bf, &one, &d).unwrap();
        assert_eq!(d1, a);
    }
}

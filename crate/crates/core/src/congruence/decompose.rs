use crate::element::{Flavor, MonoidElement};
use crate::error::{MunnError, Result};
use crate::factor::right_factors;

use super::candidates::max_weight_at_diameter;
use super::reduction::{find_reduction, irreducible_form};
use super::sequence::{CongruencePresentation, HSequence, Side};

/// The peeled factors of an irreducible sequence and their merged form.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// `y⁽¹⁾, …, y⁽ⁿ⁾, z` in order, so their product is `u`.
    pub raw: Vec<MonoidElement>,
    /// `y₁, …, yₘ`: idempotent runs merged into the next non-idempotent.
    pub merged: Vec<MonoidElement>,
    /// For `1 ≤ j ≤ n`, `traces[j - 1]` is the irreducible sequence starting
    /// at `a·y⁽¹⁾⋯y⁽ʲ⁾` and ending at `cⱼ·t` (so its `b` is `cⱼ`).
    pub traces: Vec<HSequence>,
    /// `ends[i]` is the number of raw factors covered by `y₁⋯yᵢ₊₁`.
    pub ends: Vec<usize>,
    /// `max(d(a), d(b), 𝒟)`.
    pub script_d_prime: usize,
    /// Max weight at diameter `script_d_prime`.
    pub script_w: usize,
    /// Every merged factor has weight at most `script_w`.
    pub weights_bounded: bool,
    /// Every raw factor has diameter at most `script_d_prime`.
    pub diameters_bounded: bool,
}

impl Decomposition {
    /// The witness for `a·y₁⋯yᵢ` (1-based `i < m`).
    pub fn witness(&self, i: usize) -> &HSequence {
        &self.traces[self.ends[i - 1] - 1]
    }
}

fn alphabet_size(rho: &CongruencePresentation, s: &HSequence) -> usize {
    let mut k = rho.alphabet_size();
    for e in [&s.a, &s.b].into_iter().chain(s.multipliers()) {
        if let Some(i) = e.max_index() {
            k = k.max(i + 1);
        }
    }
    k
}

/// Dismantles an irreducible right-side sequence in `FLA` by repeatedly
/// dropping its last equation, reducing the remainder and peeling off the
/// lightest common factor.
pub fn decompose_y(rho: &CongruencePresentation, s: &HSequence) -> Result<Decomposition> {
    if s.a.flavor() != Flavor::FLA {
        return Err(MunnError::UnsupportedFlavor {
            flavor: s.a.flavor(),
            operation: "decompose_y",
        });
    }
    if s.side != Side::Right || rho.side() != Side::Right {
        return Err(MunnError::pre("right-side sequence", s.side.to_string()));
    }
    s.validate(Some(rho))?;
    if find_reduction(s)?.is_some() {
        return Err(MunnError::pre(
            "sequence is irreducible",
            "a reduction exists",
        ));
    }
    let dp = s.a.diameter().max(s.b.diameter()).max(rho.script_d());
    let script_w = max_weight_at_diameter(alphabet_size(rho, s), dp);

    let mut peeled = Vec::new();
    let mut traces = Vec::new();
    let mut cur = s.clone();
    while let Some(chopped) = cur.chopped() {
        let (next, y) = irreducible_form(&chopped)?;
        let z = if y.is_identity() {
            y
        } else {
            lightest_common_factor(&cur, &next)?
        };
        peeled.push(z);
        traces.push(next.clone());
        cur = next;
    }
    let mut raw = vec![cur.u.clone()];
    raw.extend(peeled.into_iter().rev());
    traces.reverse();

    let u = MonoidElement::product(Flavor::FLA, raw.iter())?;
    if u != s.u {
        return Err(MunnError::post(
            "u = y⁽¹⁾⋯y⁽ⁿ⁾z",
            format!("{u:?} ≠ {:?}", s.u),
        ));
    }
    let (merged, ends) = merge(&raw);
    if MonoidElement::product(Flavor::FLA, merged.iter())? != s.u {
        return Err(MunnError::post("u = y₁⋯yₘ", String::new()));
    }
    if let Some(i) = merged[..merged.len() - 1]
        .iter()
        .position(|y| y.is_idempotent())
    {
        return Err(MunnError::post(
            "yᵢ non-idempotent for i < m",
            format!("y{} = {:?}", i + 1, merged[i]),
        ));
    }
    let weights_bounded = merged.iter().all(|y| y.weight() <= script_w);
    let diameters_bounded = raw.iter().all(|y| y.diameter() <= dp);
    Ok(Decomposition {
        raw,
        merged,
        traces,
        ends,
        script_d_prime: dp,
        script_w,
        weights_bounded,
        diameters_bounded,
    })
}

/// The minimal-weight `z` (ties by order) with every multiplier of `cur`
/// except the last equal to the matching multiplier of `next` times `z`.
fn lightest_common_factor(cur: &HSequence, next: &HSequence) -> Result<MonoidElement> {
    let before = cur.multipliers();
    let after = next.multipliers();
    // `cur` has one more step than `next`; `next.v` stands for that step's t.
    let mut common = right_factors(after[0], before[0]);
    for (p, m) in after[1..].iter().zip(&before[1..before.len() - 1]) {
        let other = right_factors(p, m);
        common.retain(|z| other.contains(z));
    }
    common
        .into_iter()
        .min_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)))
        .ok_or_else(|| MunnError::post("a common factor exists", String::new()))
}

fn merge(raw: &[MonoidElement]) -> (Vec<MonoidElement>, Vec<usize>) {
    let mut merged = Vec::new();
    let mut ends = Vec::new();
    let mut acc: Option<MonoidElement> = None;
    for (i, y) in raw.iter().enumerate() {
        let joined = match acc.take() {
            Some(a) => &a * y,
            None => y.clone(),
        };
        if y.is_idempotent() {
            acc = Some(joined);
        } else {
            merged.push(joined);
            ends.push(i + 1);
        }
    }
    if let Some(a) = acc {
        merged.push(a);
        ends.push(raw.len());
    }
    (merged, ends)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::relate::{relate, Budget};
    use crate::congruence::sequence::single_equation_bound_holds;

    #[test]
    fn single_equation_is_one_factor() {
        let f = Flavor::FLA;
        let x = MonoidElement::generator(0, f);
        let rho =
            CongruencePresentation::new(f, Side::Right, vec![(x.clone(), x.plus())], 1).unwrap();
        let s = HSequence::trivial(Side::Right, &x);
        let d = decompose_y(&rho, &s).unwrap();
        assert_eq!(d.raw, vec![MonoidElement::identity(f)]);
        assert_eq!(d.merged.len(), 1);
        assert!(single_equation_bound_holds(&s));
    }

    #[test]
    fn chain_decomposes() {
        let f = Flavor::FLA;
        let x = MonoidElement::generator(0, f);
        let one = MonoidElement::identity(f);
        let rho =
            CongruencePresentation::new(f, Side::Right, vec![(x.clone(), one.clone())], 1).unwrap();
        let xxx = &(&x * &x) * &x;
        let s = relate(&rho, &xxx, &one, 6, &mut Budget::unlimited())
            .unwrap()
            .unwrap();
        let (s, _) = irreducible_form(&s).unwrap();
        let d = decompose_y(&rho, &s).unwrap();
        assert_eq!(MonoidElement::product(f, d.merged.iter()).unwrap(), s.u);
        assert!(d.weights_bounded && d.diameters_bounded);
        assert_eq!(d.traces.len(), s.len());
        for i in 1..d.merged.len() {
            let w = d.witness(i);
            let prefix = MonoidElement::product(f, d.merged[..i].iter()).unwrap();
            assert_eq!(w.start(), &s.a * &prefix);
            assert!(rho.pairs().iter().any(|(c, _)| c == &w.b));
            assert_eq!(find_reduction(w).unwrap(), None);
        }
    }

    #[test]
    fn merge_runs() {
        let f = Flavor::FLA;
        let x = MonoidElement::generator(0, f);
        let e = MonoidElement::generator(1, f).plus();
        let (m, ends) = merge(&[e.clone(), x.clone(), x.clone(), e.clone()]);
        assert_eq!(m, vec![&e * &x, x.clone(), e.clone()]);
        assert_eq!(ends, vec![2, 3, 4]);
    }

    #[test]
    fn rejects_reducible_and_wrong_side() {
        let f = Flavor::FLA;
        let x = MonoidElement::generator(0, f);
        let rho =
            CongruencePresentation::new(f, Side::Right, vec![(x.clone(), x.plus())], 2).unwrap();
        let s = HSequence::trivial(Side::Right, &x).scaled(&MonoidElement::generator(1, f));
        assert!(matches!(
            decompose_y(&rho, &s),
            Err(MunnError::Precondition { .. })
        ));
        let l = HSequence::trivial(Side::Left, &x);
        assert!(decompose_y(&rho, &l).is_err());
    }
}

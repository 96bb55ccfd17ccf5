use crate::element::MonoidElement;
use crate::error::{MunnError, Result};
use crate::factor::{left_divisors, left_factors, right_divisors, right_factors};

use super::sequence::{sequence_weight, HSequence, Side};

/// A common factor `y` together with the primed multipliers
/// `u′, t′₁, …, t′ₙ, v′` (right side: every multiplier is `primed·y`; left
/// side: `y·primed`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionWitness {
    pub y: MonoidElement,
    pub primed: Vec<MonoidElement>,
}

impl ReductionWitness {
    /// The primed sequence.
    pub fn apply(&self, s: &HSequence) -> HSequence {
        s.with_multipliers(&self.primed)
    }

    /// Re-checks factorization, the primed equations, and the strict weight
    /// drop.
    pub fn verify(&self, s: &HSequence) -> Result<()> {
        let ms = s.multipliers();
        if ms.len() != self.primed.len() {
            return Err(MunnError::pre(
                "witness length",
                format!("{} multipliers vs {}", ms.len(), self.primed.len()),
            ));
        }
        for (m, p) in ms.iter().zip(&self.primed) {
            if &s.prod(p, &self.y) != *m {
                return Err(MunnError::pre(
                    "multiplier = primed·y",
                    format!("{p:?}·{:?} ≠ {m:?}", self.y),
                ));
            }
        }
        let r = self.apply(s);
        r.validate(None)?;
        if !weight_drops(s, &r) {
            return Err(MunnError::pre("some weight strictly drops", String::new()));
        }
        Ok(())
    }
}

fn weight_drops(s: &HSequence, r: &HSequence) -> bool {
    r.start().weight() < s.start().weight()
        || r.end().weight() < s.end().weight()
        || s.steps
            .iter()
            .zip(&r.steps)
            .any(|(a, b)| b.t.weight() < a.t.weight())
}

fn common_factors(s: &HSequence) -> Vec<MonoidElement> {
    let divisors = |m: &MonoidElement| match s.side {
        Side::Right => right_divisors(m),
        Side::Left => left_divisors(m),
    };
    let ms = s.multipliers();
    let mut common = divisors(ms[0]);
    for m in &ms[1..] {
        if common.is_empty() {
            break;
        }
        let other = divisors(m);
        common.retain(|y| other.binary_search(y).is_ok());
    }
    common.retain(|y| !y.is_identity());
    common.sort_by(|a, b| b.weight().cmp(&a.weight()).then_with(|| a.cmp(b)));
    common
}

/// Searches exhaustively for a reduction of `s`. `None` certifies that `s`
/// is irreducible.
pub fn find_reduction(s: &HSequence) -> Result<Option<ReductionWitness>> {
    s.validate(None)?;
    let n = s.steps.len();
    for y in common_factors(s) {
        let cofactors = |m: &MonoidElement| match s.side {
            Side::Right => left_factors(m, &y),
            Side::Left => right_factors(&y, m),
        };
        let choices: Vec<Vec<MonoidElement>> = s.multipliers().into_iter().map(cofactors).collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut chosen = Vec::with_capacity(n + 2);
        if dfs(s, &choices, &mut chosen) {
            let w = ReductionWitness { y, primed: chosen };
            w.verify(s)
                .map_err(|e| MunnError::post("reduction witness", e.to_string()))?;
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Picks primed multipliers left to right, checking each equation as soon as
/// both of its sides are fixed.
fn dfs(s: &HSequence, choices: &[Vec<MonoidElement>], chosen: &mut Vec<MonoidElement>) -> bool {
    let j = chosen.len();
    let n = s.steps.len();
    if j == n + 2 {
        return weight_drops(s, &s.with_multipliers(chosen));
    }
    // Left-hand side of equation j - 1, which the choice at j must match.
    let lhs = match j {
        0 => None,
        1 => Some(s.prod(&s.a, &chosen[0])),
        _ => Some(s.prod(&s.steps[j - 2].d, &chosen[j - 1])),
    };
    for c in &choices[j] {
        if let Some(l) = &lhs {
            let rhs = if j <= n {
                s.prod(&s.steps[j - 1].c, c)
            } else {
                s.prod(&s.b, c)
            };
            if &rhs != l {
                continue;
            }
        }
        chosen.push(c.clone());
        if dfs(s, choices, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Reduces `s` until no witness remains. Returns the irreducible sequence
/// and the accumulated factor `y` with every input multiplier equal to the
/// matching output multiplier times `y`.
pub fn irreducible_form(s: &HSequence) -> Result<(HSequence, MonoidElement)> {
    let mut cur = s.clone();
    let mut y = MonoidElement::identity(s.a.flavor());
    // Sequence weight bounds the number of rounds in FLA.
    let mut rounds = sequence_weight(s) + 1;
    while let Some(w) = find_reduction(&cur)? {
        if rounds == 0 {
            return Err(MunnError::ResourceCap("reduction did not terminate".into()));
        }
        rounds -= 1;
        cur = w.apply(&cur);
        y = cur.prod(&w.y, &y);
    }
    for (orig, p) in s.multipliers().into_iter().zip(cur.multipliers()) {
        if &cur.prod(p, &y) != orig {
            return Err(MunnError::post(
                "multiplier = primed·y",
                format!("{p:?} vs {orig:?}"),
            ));
        }
    }
    Ok((cur, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::relate::{relate, Budget};
    use crate::congruence::sequence::CongruencePresentation;
    use crate::element::Flavor;
    use crate::factorization::crack;
    use crate::words::SignedWord;

    fn fla(set: &[&[usize]], point: &[usize]) -> MonoidElement {
        let words: Vec<SignedWord> = set
            .iter()
            .map(|w| SignedWord::positive(w.iter().copied()))
            .collect();
        let set = crate::tree::PrefixClosedSet::closure(words.iter());
        MonoidElement::new(
            set,
            SignedWord::positive(point.iter().copied()),
            Flavor::FLA,
        )
        .unwrap()
    }

    #[test]
    fn identity_multipliers_are_irreducible() {
        let x = MonoidElement::generator(0, Flavor::FLA);
        let one = MonoidElement::identity(Flavor::FLA);
        let rho = CongruencePresentation::new(
            Flavor::FLA,
            Side::Right,
            vec![(x.clone(), one.clone())],
            2,
        )
        .unwrap();
        let s = relate(&rho, &one, &(&x * &x), 6, &mut Budget::unlimited())
            .unwrap()
            .unwrap();
        s.validate(Some(&rho)).unwrap();
        let t = HSequence::trivial(Side::Right, &x);
        assert_eq!(find_reduction(&t).unwrap(), None);
        let (r, y) = irreducible_form(&t).unwrap();
        assert_eq!(r, t);
        assert!(y.is_identity());
    }

    #[test]
    fn scaled_sequence_reduces_back() {
        let f = Flavor::FLA;
        let x = MonoidElement::generator(0, f);
        let one = MonoidElement::identity(f);
        let rho =
            CongruencePresentation::new(f, Side::Right, vec![(x.clone(), one.clone())], 2).unwrap();
        let s = relate(&rho, &one, &x, 4, &mut Budget::unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(find_reduction(&s).unwrap(), None);
        let z = fla(&[&[1, 0], &[0]], &[1]);
        let big = s.scaled(&z);
        big.validate(Some(&rho)).unwrap();
        let w = find_reduction(&big).unwrap().expect("reducible");
        w.verify(&big).unwrap();
        let (r, y) = irreducible_form(&big).unwrap();
        assert_eq!(find_reduction(&r).unwrap(), None);
        assert_eq!(r.scaled(&y), big);
    }

    #[test]
    fn single_equation_matches_crack() {
        let f = Flavor::FLA;
        // a·u = b·v with a = x, b = 1, u = ({e, y}, e): a leaf ay ∉ A ∪ B.
        let a = MonoidElement::generator(0, f);
        let b = a.clone();
        let u = fla(&[&[1]], &[]);
        let s = HSequence {
            side: Side::Right,
            a: a.clone(),
            u: u.clone(),
            b: b.clone(),
            v: u.clone(),
            steps: vec![],
        };
        let c = crack(&a, &u, &b, &u, &SignedWord::positive([0, 1])).unwrap();
        let w = find_reduction(&s).unwrap().expect("reducible");
        assert_eq!(s.prod(&w.primed[0], &w.y), u);
        assert_eq!(&c.u_prime * &c.z, &w.primed[0] * &w.y);
        assert!(w.primed[0].weight() <= c.u_prime.weight());
    }

    #[test]
    fn left_side_reduction() {
        let f = Flavor::FLA;
        let x = MonoidElement::generator(0, f);
        let one = MonoidElement::identity(f);
        let t = HSequence {
            side: Side::Left,
            a: x.clone(),
            u: one.clone(),
            b: x.clone(),
            v: one,
            steps: vec![],
        };
        let z = MonoidElement::generator(1, f);
        let big = t.scaled(&z);
        assert_eq!(big.start(), &z * &x);
        let (r, y) = irreducible_form(&big).unwrap();
        assert_eq!(r, t);
        assert_eq!(y, z);
    }
}

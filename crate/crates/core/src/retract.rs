//! Idempotent endomorphisms and the transfer of congruence data to their
//! images.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::congruence::{relate, Budget, CongruencePresentation, HSequence, Step};
use crate::element::{Flavor, MonoidElement};
use crate::enumerate::random_element;
use crate::error::{MunnError, Result};

type Evaluator = dyn Fn(&MonoidElement) -> Result<MonoidElement> + Send + Sync;

/// Outcome of the random spot checks run when a map is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub samples: usize,
    pub max_diameter: usize,
    pub alphabet_size: usize,
    pub seed: u64,
}

/// An endomorphism `φ` with `φ² = φ`, given by generator images and an
/// evaluator on arbitrary elements.
#[derive(Clone)]
pub struct RetractMap {
    flavor: Flavor,
    images: Vec<MonoidElement>,
    eval: Arc<Evaluator>,
    check: SpotCheck,
}

impl fmt::Debug for RetractMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RetractMap")
            .field("flavor", &self.flavor)
            .field("images", &self.images)
            .field("check", &self.check)
            .finish()
    }
}

impl RetractMap {
    /// Builds the map and validates it on `check.samples` random pairs.
    pub fn new<F>(
        flavor: Flavor,
        images: Vec<MonoidElement>,
        eval: F,
        check: SpotCheck,
    ) -> Result<Self>
    where
        F: Fn(&MonoidElement) -> Result<MonoidElement> + Send + Sync + 'static,
    {
        let map = RetractMap {
            flavor,
            images,
            eval: Arc::new(eval),
            check,
        };
        map.validate()?;
        Ok(map)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn images(&self) -> &[MonoidElement] {
        &self.images
    }

    pub fn spot_check(&self) -> SpotCheck {
        self.check
    }

    pub fn apply(&self, m: &MonoidElement) -> Result<MonoidElement> {
        if m.flavor() != self.flavor {
            return Err(MunnError::FlavorMismatch {
                left: m.flavor(),
                right: self.flavor,
            });
        }
        (self.eval)(m)
    }

    /// True when `m` lies in the image, i.e. `φ(m) = m`.
    pub fn fixes(&self, m: &MonoidElement) -> Result<bool> {
        Ok(&self.apply(m)? == m)
    }

    fn validate(&self) -> Result<()> {
        let one = MonoidElement::identity(self.flavor);
        if !self.apply(&one)?.is_identity() {
            return Err(MunnError::pre("φ(1) = 1", String::new()));
        }
        for (i, img) in self.images.iter().enumerate() {
            let g = MonoidElement::generator(i, self.flavor);
            if &self.apply(&g)? != img {
                return Err(MunnError::pre(
                    "φ agrees with the generator images",
                    format!("letter {i}"),
                ));
            }
        }
        let c = self.check;
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        for _ in 0..c.samples {
            let m1 = random_element(&mut rng, self.flavor, c.alphabet_size, c.max_diameter);
            let m2 = random_element(&mut rng, self.flavor, c.alphabet_size, c.max_diameter);
            let p1 = self.apply(&m1)?;
            let p2 = self.apply(&m2)?;
            if self.apply(&m1.multiply(&m2)?)? != p1.multiply(&p2)? {
                return Err(MunnError::pre(
                    "φ is a homomorphism",
                    format!("{m1:?}, {m2:?}"),
                ));
            }
            if self.apply(&p1)? != p1 {
                return Err(MunnError::pre("φ is idempotent", format!("{m1:?}")));
            }
        }
        Ok(())
    }
}

/// `(A, a) ↦ (a↓, a)` from `FLA` onto its free-monoid copy, validated on
/// 1000 random pairs of diameter at most 4 over two letters.
pub fn fla_to_free_retract() -> RetractMap {
    let check = SpotCheck {
        samples: 1000,
        max_diameter: 4,
        alphabet_size: 2,
        seed: 0x5eed,
    };
    fla_to_free_retract_checked(check).expect("the path map is an idempotent homomorphism")
}

/// [`fla_to_free_retract`] with custom spot checks.
pub fn fla_to_free_retract_checked(check: SpotCheck) -> Result<RetractMap> {
    let images = (0..check.alphabet_size)
        .map(|i| MonoidElement::generator(i, Flavor::FLA))
        .collect();
    RetractMap::new(
        Flavor::FLA,
        images,
        |m: &MonoidElement| MonoidElement::path(m.point(), Flavor::FLA),
        check,
    )
}

type Pair = (MonoidElement, MonoidElement);

/// `Xφ`, sorted and without repeats.
pub fn transfer_annihilator(phi: &RetractMap, pairs: &[Pair]) -> Result<Vec<Pair>> {
    let mut out = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        let pu = phi.apply(u)?;
        let pv = phi.apply(v)?;
        if !phi.fixes(&pu)? || !phi.fixes(&pv)? {
            return Err(MunnError::post(
                "image pairs lie in the retract",
                format!("{pu:?}, {pv:?}"),
            ));
        }
        out.push((pu, pv));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A witness inside the retract for `t₁ ρ t₂`, obtained by relating in the
/// ambient monoid and mapping every multiplier through `φ`. `None` means
/// unrelated within `max_weight` only.
pub fn restrict_congruence(
    phi: &RetractMap,
    rho: &CongruencePresentation,
    t1: &MonoidElement,
    t2: &MonoidElement,
    max_weight: usize,
    budget: &mut Budget,
) -> Result<Option<HSequence>> {
    for (c, d) in rho.pairs() {
        if !phi.fixes(c)? || !phi.fixes(d)? {
            return Err(MunnError::pre(
                "generators lie in the retract",
                format!("({c:?}, {d:?})"),
            ));
        }
    }
    for t in [t1, t2] {
        if !phi.fixes(t)? {
            return Err(MunnError::pre(
                "inputs lie in the retract",
                format!("{t:?}"),
            ));
        }
    }
    match relate(rho, t1, t2, max_weight, budget)? {
        Some(s) => restrict_sequence(phi, rho, &s).map(Some),
        None => Ok(None),
    }
}

/// The image of an ambient sequence under `φ`, re-validated step by step.
pub fn restrict_sequence(
    phi: &RetractMap,
    rho: &CongruencePresentation,
    s: &HSequence,
) -> Result<HSequence> {
    let mut image = HSequence {
        side: s.side,
        a: phi.apply(&s.a)?,
        u: phi.apply(&s.u)?,
        b: phi.apply(&s.b)?,
        v: phi.apply(&s.v)?,
        steps: Vec::with_capacity(s.steps.len()),
    };
    for st in &s.steps {
        image.steps.push(Step {
            c: phi.apply(&st.c)?,
            d: phi.apply(&st.d)?,
            t: phi.apply(&st.t)?,
        });
    }
    image
        .validate(Some(rho))
        .map_err(|e| MunnError::post("φ-image is a valid sequence", e.to_string()))?;
    for m in image.multipliers() {
        if !phi.fixes(m)? {
            return Err(MunnError::post(
                "multipliers lie in the retract",
                format!("{m:?}"),
            ));
        }
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::Side;
    use crate::tree::PrefixClosedSet;
    use crate::words::SignedWord;

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
    fn path_map_examples() {
        let phi = fla_to_free_retract();
        assert_eq!(
            phi.apply(&fla(&[&[0], &[1]], &[0])).unwrap(),
            fla(&[&[0]], &[0])
        );
        let fixed = fla(&[&[0, 1, 1]], &[0, 1, 1]);
        assert!(phi.fixes(&fixed).unwrap());
        assert!(phi.apply(&MonoidElement::identity(Flavor::FI)).is_err());
    }

    #[test]
    fn non_idempotent_map_is_rejected() {
        // m ↦ m·m is not a homomorphism.
        let check = SpotCheck {
            samples: 50,
            max_diameter: 2,
            alphabet_size: 2,
            seed: 1,
        };
        let images = vec![fla(&[&[0, 0]], &[0, 0]), fla(&[&[1, 1]], &[1, 1])];
        let r = RetractMap::new(
            Flavor::FLA,
            images,
            |m: &MonoidElement| m.multiply(m),
            check,
        );
        assert!(r.is_err());
    }

    #[test]
    fn transfer_fixes_retract_pairs() {
        let phi = fla_to_free_retract();
        let one = MonoidElement::identity(Flavor::FLA);
        let x = MonoidElement::generator(0, Flavor::FLA);
        assert_eq!(
            transfer_annihilator(&phi, &[(one.clone(), one.clone())]).unwrap(),
            vec![(one.clone(), one.clone())]
        );
        let moved = transfer_annihilator(&phi, &[(x.plus(), x.clone())]).unwrap();
        assert_eq!(moved, vec![(one, x)]);
    }

    #[test]
    fn restriction_gives_internal_witness() {
        let phi = fla_to_free_retract();
        let f = Flavor::FLA;
        let x = MonoidElement::generator(0, f);
        let xx = &x * &x;
        let rho =
            CongruencePresentation::new(f, Side::Right, vec![(xx.clone(), x.clone())], 1).unwrap();
        let xxxx = &xx * &xx;
        let s = restrict_congruence(&phi, &rho, &xxxx, &x, 8, &mut Budget::unlimited())
            .unwrap()
            .unwrap();
        for m in s.multipliers() {
            assert!(phi.fixes(m).unwrap());
        }
        let same = restrict_congruence(&phi, &rho, &x, &x, 2, &mut Budget::unlimited())
            .unwrap()
            .unwrap();
        assert!(same.steps.is_empty());
        assert!(
            restrict_congruence(&phi, &rho, &x.plus(), &x, 4, &mut Budget::unlimited()).is_err()
        );

        // Scaling by an element outside the retract, then mapping back.
        let z = fla(&[&[0], &[1]], &[0]);
        let big = s.scaled(&z);
        assert!(!phi.fixes(&big.u).unwrap());
        let back = restrict_sequence(&phi, &rho, &big).unwrap();
        assert_eq!(back.start(), &xxxx * &x);
    }
}

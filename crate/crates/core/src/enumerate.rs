//! Exhaustive enumeration of Munn trees and elements within a bound.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::element::{Flavor, MonoidElement};
use crate::error::{MunnError, Result};
use crate::tree::PrefixClosedSet;
use crate::words::{SignedLetter, SignedWord};

/// Bound for [`enumerate_elements`]. At least one side must be set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub max_weight: Option<usize>,
    pub max_diameter: Option<usize>,
}

impl Bound {
    pub fn weight(w: usize) -> Self {
        Bound {
            max_weight: Some(w),
            max_diameter: None,
        }
    }

    pub fn diameter(d: usize) -> Self {
        Bound {
            max_weight: None,
            max_diameter: Some(d),
        }
    }

    fn admits(&self, m: &MonoidElement) -> bool {
        self.max_weight.map_or(true, |w| m.weight() <= w)
            && self.max_diameter.map_or(true, |d| m.diameter() <= d)
    }
}

/// Letters that may label an edge below a node whose incoming letter is
/// `parent` (`None` at the root).
fn child_letters(
    alphabet_size: usize,
    positive_only: bool,
    parent: Option<SignedLetter>,
) -> Vec<SignedLetter> {
    let mut out = Vec::with_capacity(2 * alphabet_size);
    for i in 0..alphabet_size {
        out.push(SignedLetter::positive(i));
    }
    if !positive_only {
        for i in 0..alphabet_size {
            out.push(SignedLetter::negative(i));
        }
    }
    if let Some(p) = parent {
        out.retain(|&l| l != p.inverse());
    }
    out
}

/// All prefix-closed sets with diameter ≤ `max_diameter` and at most
/// `max_size` members, over the first `alphabet_size` letters (positive
/// words only when `positive_only`). Fails once more than `cap` sets have
/// been produced.
pub fn enumerate_sets(
    alphabet_size: usize,
    positive_only: bool,
    max_diameter: usize,
    max_size: usize,
    cap: usize,
) -> Result<Vec<PrefixClosedSet>> {
    let mut out = Vec::new();
    let mut chosen = vec![SignedWord::empty()];
    let frontier: Vec<SignedWord> = if max_diameter == 0 {
        Vec::new()
    } else {
        child_letters(alphabet_size, positive_only, None)
            .into_iter()
            .map(SignedWord::letter)
            .collect()
    };
    let ctx = Ctx {
        alphabet_size,
        positive_only,
        max_diameter,
        max_size,
        cap,
    };
    grow(&ctx, &mut chosen, frontier, &mut out)?;
    out.sort();
    Ok(out)
}

struct Ctx {
    alphabet_size: usize,
    positive_only: bool,
    max_diameter: usize,
    max_size: usize,
    cap: usize,
}

fn grow(
    ctx: &Ctx,
    chosen: &mut Vec<SignedWord>,
    mut frontier: Vec<SignedWord>,
    out: &mut Vec<PrefixClosedSet>,
) -> Result<()> {
    let Some(next) = frontier.pop() else {
        if out.len() >= ctx.cap {
            return Err(MunnError::ResourceCap(format!(
                "more than {} prefix-closed sets",
                ctx.cap
            )));
        }
        out.push(PrefixClosedSet::closure(chosen.iter()));
        return Ok(());
    };
    grow(ctx, chosen, frontier.clone(), out)?;
    if chosen.len() < ctx.max_size {
        if next.len() < ctx.max_diameter {
            for l in child_letters(ctx.alphabet_size, ctx.positive_only, next.last()) {
                let mut w = next.clone();
                w.push(l);
                frontier.push(w);
            }
        }
        chosen.push(next);
        grow(ctx, chosen, frontier, out)?;
        chosen.pop();
    }
    Ok(())
}

/// Every element of `flavor` within `bound` over the first `alphabet_size`
/// letters, each exactly once, ordered by diameter, set size, set shape and
/// point.
pub fn enumerate_elements(
    flavor: Flavor,
    bound: Bound,
    alphabet_size: usize,
    cap: usize,
) -> Result<Vec<MonoidElement>> {
    let (max_diameter, max_size) = match (bound.max_weight, bound.max_diameter) {
        (None, None) => {
            return Err(MunnError::pre(
                "finite bound",
                "no weight or diameter bound given",
            ))
        }
        (Some(w), d) => (d.map_or(w, |d| d.min(w)), w + 1),
        (None, Some(d)) => (d, usize::MAX),
    };
    let sets = enumerate_sets(
        alphabet_size,
        flavor == Flavor::FLA,
        max_diameter,
        max_size,
        cap,
    )?;
    let mut out = Vec::new();
    for set in sets {
        for point in set.words() {
            if let Some(m) = MonoidElement::try_parts(set.clone(), point, flavor) {
                if bound.admits(&m) {
                    if out.len() >= cap {
                        return Err(MunnError::ResourceCap(format!(
                            "more than {cap} elements within {bound:?}"
                        )));
                    }
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Elements of `flavor` whose set is exactly `set`.
pub fn elements_on(set: &PrefixClosedSet, flavor: Flavor) -> Vec<MonoidElement> {
    set.words()
        .into_iter()
        .filter_map(|p| MonoidElement::try_parts(set.clone(), p, flavor))
        .collect()
}

/// A reduced word of length at most `max_len` drawn uniformly letter by
/// letter.
pub fn random_word<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet_size: usize,
    positive_only: bool,
    max_len: usize,
) -> SignedWord {
    let len = rng.gen_range(0..=max_len);
    let mut w = SignedWord::empty();
    while w.len() < len {
        let letters = child_letters(alphabet_size, positive_only, w.last());
        w.push(letters[rng.gen_range(0..letters.len())]);
    }
    w
}

/// A random element of `flavor` with diameter at most `max_diameter`: the
/// closure of up to three random paths, with a random admissible point.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    flavor: Flavor,
    alphabet_size: usize,
    max_diameter: usize,
) -> MonoidElement {
    let positive_only = flavor == Flavor::FLA;
    let paths: Vec<SignedWord> = (0..rng.gen_range(1..=3))
        .map(|_| random_word(rng, alphabet_size, positive_only, max_diameter))
        .collect();
    let set = PrefixClosedSet::closure(paths.iter());
    let mut points: Vec<SignedWord> = set
        .words()
        .into_iter()
        .filter(|w| flavor == Flavor::FI || w.is_positive())
        .collect();
    points.sort();
    let point = points[rng.gen_range(0..points.len())].clone();
    MonoidElement::try_parts(set, point, flavor).expect("point admissible by construction")
}

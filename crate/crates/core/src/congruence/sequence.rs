use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::{Flavor, MonoidElement};
use crate::error::{MunnError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = MunnError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            other => Err(MunnError::Parse(format!("unknown side `{other}`"))),
        }
    }
}

/// A finite symmetric generating set `H` for a one-sided congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruencePresentation {
    flavor: Flavor,
    side: Side,
    pairs: Vec<(MonoidElement, MonoidElement)>,
    alphabet_size: usize,
    script_d: usize,
}

impl CongruencePresentation {
    /// Closes `pairs` under swapping, drops diagonal pairs and sorts.
    /// `alphabet_size` must cover every letter used.
    pub fn new(
        flavor: Flavor,
        side: Side,
        pairs: Vec<(MonoidElement, MonoidElement)>,
        alphabet_size: usize,
    ) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(MunnError::Alphabet("alphabet must be nonempty".into()));
        }
        let mut all = Vec::with_capacity(2 * pairs.len());
        for (c, d) in pairs {
            for e in [&c, &d] {
                if e.flavor() != flavor {
                    return Err(MunnError::FlavorMismatch {
                        left: flavor,
                        right: e.flavor(),
                    });
                }
                if e.max_index().map_or(false, |i| i >= alphabet_size) {
                    return Err(MunnError::Alphabet(format!(
                        "{e:?} uses a letter outside the first {alphabet_size}"
                    )));
                }
            }
            if c != d {
                all.push((d.clone(), c.clone()));
                all.push((c, d));
            }
        }
        all.sort();
        all.dedup();
        let script_d = all
            .iter()
            .map(|(c, d)| c.diameter().max(d.diameter()))
            .max()
            .unwrap_or(0);
        Ok(CongruencePresentation {
            flavor,
            side,
            pairs: all,
            alphabet_size,
            script_d,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// `H ∪ H⁻¹`, sorted.
    pub fn pairs(&self) -> &[(MonoidElement, MonoidElement)] {
        &self.pairs
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// The largest diameter of a component of a pair.
    pub fn script_d(&self) -> usize {
        self.script_d
    }

    pub fn contains(&self, c: &MonoidElement, d: &MonoidElement) -> bool {
        self.pairs
            .binary_search_by(|(x, y)| (x, y).cmp(&(c, d)))
            .is_ok()
    }

    pub(crate) fn check_element(&self, m: &MonoidElement) -> Result<()> {
        if m.flavor() != self.flavor {
            return Err(MunnError::FlavorMismatch {
                left: self.flavor,
                right: m.flavor(),
            });
        }
        Ok(())
    }
}

/// One link `(cᵢ, dᵢ)` with multiplier `tᵢ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub c: MonoidElement,
    pub d: MonoidElement,
    pub t: MonoidElement,
}

/// An `H`-sequence. On the right side it reads
/// `a·u = c₁t₁, d₁t₁ = c₂t₂, …, dₙtₙ = b·v`; on the left side every product
/// is mirrored (`u·a = t₁c₁`, …).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HSequence {
    pub side: Side,
    pub a: MonoidElement,
    pub u: MonoidElement,
    pub b: MonoidElement,
    pub v: MonoidElement,
    pub steps: Vec<Step>,
}

impl HSequence {
    /// The length-0 sequence `m = m`.
    pub fn trivial(side: Side, m: &MonoidElement) -> Self {
        let one = MonoidElement::identity(m.flavor());
        HSequence {
            side,
            a: m.clone(),
            u: one.clone(),
            b: m.clone(),
            v: one,
            steps: Vec::new(),
        }
    }

    pub(crate) fn prod(&self, x: &MonoidElement, y: &MonoidElement) -> MonoidElement {
        match self.side {
            Side::Right => x * y,
            Side::Left => y * x,
        }
    }

    /// `a·u` (or `u·a`).
    pub fn start(&self) -> MonoidElement {
        self.prod(&self.a, &self.u)
    }

    /// `b·v` (or `v·b`).
    pub fn end(&self) -> MonoidElement {
        self.prod(&self.b, &self.v)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The elements visited: `a·u`, then `dᵢ·tᵢ` for each step.
    pub fn elements(&self) -> Vec<MonoidElement> {
        let mut out = vec![self.start()];
        out.extend(self.steps.iter().map(|s| self.prod(&s.d, &s.t)));
        out
    }

    /// `u, t₁, …, tₙ, v`.
    pub fn multipliers(&self) -> Vec<&MonoidElement> {
        let mut out = vec![&self.u];
        out.extend(self.steps.iter().map(|s| &s.t));
        out.push(&self.v);
        out
    }

    /// Rebuilds the sequence with new multipliers in the order of
    /// [`HSequence::multipliers`].
    pub fn with_multipliers(&self, ms: &[MonoidElement]) -> HSequence {
        assert_eq!(ms.len(), self.steps.len() + 2);
        HSequence {
            side: self.side,
            a: self.a.clone(),
            u: ms[0].clone(),
            b: self.b.clone(),
            v: ms[ms.len() - 1].clone(),
            steps: self
                .steps
                .iter()
                .zip(&ms[1..ms.len() - 1])
                .map(|(s, t)| Step {
                    c: s.c.clone(),
                    d: s.d.clone(),
                    t: t.clone(),
                })
                .collect(),
        }
    }

    /// Multiplies every multiplier by `z` on the outside (right for right
    /// sequences, left for left ones).
    pub fn scaled(&self, z: &MonoidElement) -> HSequence {
        let ms: Vec<MonoidElement> = self
            .multipliers()
            .into_iter()
            .map(|m| self.prod(m, z))
            .collect();
        self.with_multipliers(&ms)
    }

    /// Drops the last equation: `a·u = c₁t₁, …, dₙ₋₁tₙ₋₁ = cₙtₙ`, read as a
    /// sequence ending at `cₙ·tₙ`.
    pub fn chopped(&self) -> Option<HSequence> {
        let last = self.steps.last()?;
        Some(HSequence {
            side: self.side,
            a: self.a.clone(),
            u: self.u.clone(),
            b: last.c.clone(),
            v: last.t.clone(),
            steps: self.steps[..self.steps.len() - 1].to_vec(),
        })
    }

    /// Checks every equation, and that each link comes from `rho` when
    /// given.
    pub fn validate(&self, rho: Option<&CongruencePresentation>) -> Result<()> {
        if let Some(rho) = rho {
            if rho.side() != self.side {
                return Err(MunnError::pre(
                    "sequence side matches presentation",
                    format!("{} vs {}", self.side, rho.side()),
                ));
            }
            for s in &self.steps {
                if !rho.contains(&s.c, &s.d) {
                    return Err(MunnError::pre(
                        "(cᵢ, dᵢ) ∈ H ∪ H⁻¹",
                        format!("({:?}, {:?})", s.c, s.d),
                    ));
                }
            }
        }
        let mut prev = self.start();
        for (i, s) in self.steps.iter().enumerate() {
            let here = self.prod(&s.c, &s.t);
            if here != prev {
                return Err(MunnError::pre(
                    "H-sequence equation",
                    format!("step {}: {prev:?} ≠ {here:?}", i + 1),
                ));
            }
            prev = self.prod(&s.d, &s.t);
        }
        let end = self.end();
        if end != prev {
            return Err(MunnError::pre(
                "H-sequence equation",
                format!("last: {prev:?} ≠ {end:?}"),
            ));
        }
        Ok(())
    }
}

/// `w(a·u) + Σ w(tᵢ) + w(b·v)`.
pub fn sequence_weight(s: &HSequence) -> usize {
    s.start().weight() + s.steps.iter().map(|st| st.t.weight()).sum::<usize>() + s.end().weight()
}

/// For a length-0 sequence `a·u = b·v`: `d(u) ≤ max(d(a), d(b))`. Longer
/// sequences pass vacuously.
pub fn single_equation_bound_holds(s: &HSequence) -> bool {
    !s.is_empty() || s.u.diameter() <= s.a.diameter().max(s.b.diameter())
}

/// `d(a·u) ≤ 2·max(l(au), d(a), d(b), 𝒟)`.
pub fn start_diameter_bound_holds(s: &HSequence, script_d: usize) -> bool {
    let au = s.start();
    let m = au
        .point()
        .len()
        .max(s.a.diameter())
        .max(s.b.diameter())
        .max(script_d);
    au.diameter() <= 2 * m
}

/// Some element of the sequence has diameter `≤ 2·max(d(a), d(b), 𝒟)`.
pub fn small_member_bound_holds(s: &HSequence, script_d: usize) -> bool {
    let m = s.a.diameter().max(s.b.diameter()).max(script_d);
    s.elements().iter().any(|e| e.diameter() <= 2 * m)
}

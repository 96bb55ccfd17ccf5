//! Elements `(A, a)` of the free inverse monoid and its submonoids.
//!
//! `FLA` elements have every word of `A` positive, `FA` elements have a
//! positive point, and `FI` has no restriction. All three share one
//! representation; the flavor tag is checked at operation boundaries.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{MunnError, Result};
use crate::tree::PrefixClosedSet;
use crate::words::{SignedLetter, SignedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    FI,
    FA,
    FLA,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::FI => "FI",
            Flavor::FA => "FA",
            Flavor::FLA => "FLA",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = MunnError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fi" => Ok(Flavor::FI),
            "fa" => Ok(Flavor::FA),
            "fla" => Ok(Flavor::FLA),
            other => Err(MunnError::Parse(format!("unknown flavor `{other}`"))),
        }
    }
}

impl Flavor {
    /// Whether `(set, point)` satisfies this flavor's constraints.
    pub fn admits(self, set: &PrefixClosedSet, point: &SignedWord) -> bool {
        match self {
            Flavor::FI => true,
            Flavor::FA => point.is_positive(),
            Flavor::FLA => set.is_positive(),
        }
    }
}

/// A pair `(A, a)` with `a ∈ A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonoidElement {
    set: PrefixClosedSet,
    point: SignedWord,
    flavor: Flavor,
}

impl MonoidElement {
    pub fn new(set: PrefixClosedSet, point: SignedWord, flavor: Flavor) -> Result<Self> {
        if !set.contains(&point) {
            return Err(MunnError::pre(
                "point in set",
                format!("{point:?} is not a member of {set:?}"),
            ));
        }
        if !flavor.admits(&set, &point) {
            return Err(MunnError::FlavorViolation {
                flavor,
                detail: format!("({set:?}, {point:?})"),
            });
        }
        Ok(MonoidElement { set, point, flavor })
    }

    pub(crate) fn from_parts(set: PrefixClosedSet, point: SignedWord, flavor: Flavor) -> Self {
        debug_assert!(set.contains(&point), "point {point:?} not in {set:?}");
        debug_assert!(flavor.admits(&set, &point));
        MonoidElement { set, point, flavor }
    }

    /// `(A, a)` if it lies in `flavor`, without rechecking `a ∈ A`.
    pub(crate) fn try_parts(
        set: PrefixClosedSet,
        point: SignedWord,
        flavor: Flavor,
    ) -> Option<Self> {
        flavor
            .admits(&set, &point)
            .then(|| MonoidElement::from_parts(set, point, flavor))
    }

    /// `({ε}, ε)`.
    pub fn identity(flavor: Flavor) -> Self {
        MonoidElement {
            set: PrefixClosedSet::singleton(),
            point: SignedWord::empty(),
            flavor,
        }
    }

    /// `({ε, x}, x)` for the letter with alphabet index `index`.
    pub fn generator(index: usize, flavor: Flavor) -> Self {
        let x = SignedWord::letter(SignedLetter::positive(index));
        MonoidElement {
            set: x.prefixes(),
            point: x,
            flavor,
        }
    }

    /// `(w↓, w)`; `w` must be admissible in `flavor`.
    pub fn path(w: &SignedWord, flavor: Flavor) -> Result<Self> {
        MonoidElement::new(w.prefixes(), w.clone(), flavor)
    }

    pub fn set(&self) -> &PrefixClosedSet {
        &self.set
    }

    pub fn point(&self) -> &SignedWord {
        &self.point
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn into_parts(self) -> (PrefixClosedSet, SignedWord) {
        (self.set, self.point)
    }

    /// Retags the element, checking the target flavor's constraints.
    pub fn with_flavor(&self, flavor: Flavor) -> Result<Self> {
        MonoidElement::new(self.set.clone(), self.point.clone(), flavor)
    }

    pub fn is_identity(&self) -> bool {
        self.set.len() == 1
    }

    /// `(A, a)(B, b) = (A ∪ aB, ab)`.
    pub fn multiply(&self, other: &MonoidElement) -> Result<MonoidElement> {
        if self.flavor != other.flavor {
            return Err(MunnError::FlavorMismatch {
                left: self.flavor,
                right: other.flavor,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &MonoidElement) -> MonoidElement {
        if other.is_identity() {
            return self.clone();
        }
        if self.is_identity() {
            return other.clone();
        }
        let set = self
            .set
            .graft(&self.point, &other.set)
            .expect("point lies in its own set");
        MonoidElement {
            set,
            point: self.point.concat(&other.point),
            flavor: self.flavor,
        }
    }

    /// `(a⁻¹A, a⁻¹)`.
    pub fn inverse(&self) -> Result<MonoidElement> {
        let set = self.set.reroot(&self.point).expect("point in set");
        let point = self.point.inverse();
        if !self.flavor.admits(&set, &point) {
            return Err(MunnError::FlavorViolation {
                flavor: self.flavor,
                detail: format!("inverse of {self:?} is not in {}", self.flavor),
            });
        }
        Ok(MonoidElement::from_parts(set, point, self.flavor))
    }

    /// `(A, a)⁺ = (A, ε)`.
    pub fn plus(&self) -> MonoidElement {
        MonoidElement {
            set: self.set.clone(),
            point: SignedWord::empty(),
            flavor: self.flavor,
        }
    }

    /// `(A, a)✻ = (a⁻¹A, ε)`; not available in `FLA`.
    pub fn star(&self) -> Result<MonoidElement> {
        if self.flavor == Flavor::FLA {
            return Err(MunnError::UnsupportedFlavor {
                flavor: Flavor::FLA,
                operation: "star",
            });
        }
        let set = self.set.reroot(&self.point).expect("point in set");
        Ok(MonoidElement::from_parts(
            set,
            SignedWord::empty(),
            self.flavor,
        ))
    }

    /// `|A| − 1 + l(a)`.
    pub fn weight(&self) -> usize {
        self.set.len() - 1 + self.point.len()
    }

    /// `max { l(u) : u ∈ A }`.
    pub fn diameter(&self) -> usize {
        self.set.diameter()
    }

    pub fn leaves(&self) -> Vec<SignedWord> {
        self.set.leaves()
    }

    pub fn is_idempotent(&self) -> bool {
        self.point.is_empty()
    }

    /// Largest alphabet index occurring in the set.
    pub fn max_index(&self) -> Option<usize> {
        self.set.max_index()
    }

    /// Product of a sequence, `𝟏` when empty.
    pub fn product<'a, I: IntoIterator<Item = &'a MonoidElement>>(
        flavor: Flavor,
        factors: I,
    ) -> Result<MonoidElement> {
        factors
            .into_iter()
            .try_fold(MonoidElement::identity(flavor), |acc, f| acc.multiply(f))
    }
}

impl<'a> Mul<&'a MonoidElement> for &'a MonoidElement {
    type Output = MonoidElement;

    /// Panics on a flavor mismatch; use [`MonoidElement::multiply`] for a
    /// checked product.
    fn mul(self, rhs: &'a MonoidElement) -> MonoidElement {
        assert_eq!(self.flavor, rhs.flavor, "flavor mismatch in product");
        self.mul_unchecked(rhs)
    }
}

impl Ord for MonoidElement {
    /// Diameter, then set size, then trie shape, then point.
    fn cmp(&self, other: &Self) -> Ordering {
        self.diameter()
            .cmp(&other.diameter())
            .then_with(|| self.set.len().cmp(&other.set.len()))
            .then_with(|| self.set.cmp(&other.set))
            .then_with(|| self.point.cmp(&other.point))
            .then_with(|| self.flavor.cmp(&other.flavor))
    }
}

impl PartialOrd for MonoidElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.set, self.point)
    }
}

pub fn identity(flavor: Flavor) -> MonoidElement {
    MonoidElement::identity(flavor)
}

pub fn generator(index: usize, flavor: Flavor) -> MonoidElement {
    MonoidElement::generator(index, flavor)
}

pub fn multiply(a: &MonoidElement, b: &MonoidElement) -> Result<MonoidElement> {
    a.multiply(b)
}

pub fn inverse(m: &MonoidElement) -> Result<MonoidElement> {
    m.inverse()
}

pub fn plus(m: &MonoidElement) -> MonoidElement {
    m.plus()
}

pub fn star(m: &MonoidElement) -> Result<MonoidElement> {
    m.star()
}

pub fn weight(m: &MonoidElement) -> usize {
    m.weight()
}

pub fn diameter(m: &MonoidElement) -> usize {
    m.diameter()
}

pub fn leaves(set: &PrefixClosedSet) -> Vec<SignedWord> {
    set.leaves()
}

pub fn is_idempotent(m: &MonoidElement) -> bool {
    m.is_idempotent()
}

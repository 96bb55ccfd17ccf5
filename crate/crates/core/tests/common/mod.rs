//! A deliberately naive model of Munn-tree elements used as an oracle: words
//! are `Vec<i8>` (letter `i` is `i + 1`, its inverse `-(i + 1)`), sets are
//! `BTreeSet`s, and every operation is a direct transcription of the
//! definitions.

#![allow(dead_code)]

use std::collections::BTreeSet;

use munn::{Flavor, MonoidElement, PrefixClosedSet, SignedLetter, SignedWord};

pub type Word = Vec<i8>;

pub fn reduce(w: &[i8]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn cat(u: &[i8], v: &[i8]) -> Word {
    let mut w = u.to_vec();
    w.extend_from_slice(v);
    reduce(&w)
}

pub fn inv(u: &[i8]) -> Word {
    u.iter().rev().map(|l| -l).collect()
}

pub fn word_of(w: &SignedWord) -> Word {
    w.letters()
        .iter()
        .map(|l| {
            let i = l.index() as i8 + 1;
            if l.is_inverse() {
                -i
            } else {
                i
            }
        })
        .collect()
}

pub fn signed(w: &[i8]) -> SignedWord {
    SignedWord::from_letters(w.iter().map(|&l| {
        let i = (l.unsigned_abs() - 1) as usize;
        if l < 0 {
            SignedLetter::negative(i)
        } else {
            SignedLetter::positive(i)
        }
    }))
}

pub fn down(w: &[i8]) -> BTreeSet<Word> {
    (0..=w.len()).map(|i| w[..i].to_vec()).collect()
}

/// Every reduced word of length at most `n` over `k` letters.
pub fn all_words(k: usize, n: usize, positive_only: bool) -> Vec<Word> {
    let mut letters: Vec<i8> = (1..=k as i8).collect();
    if !positive_only {
        letters.extend((1..=k as i8).map(|l| -l));
    }
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::<i8>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() != Some(&-l) {
                    let mut x = w.clone();
                    x.push(l);
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Naive {
    pub set: BTreeSet<Word>,
    pub point: Word,
}

impl Naive {
    pub fn of(m: &MonoidElement) -> Self {
        Naive {
            set: m.set().words().iter().map(word_of).collect(),
            point: word_of(m.point()),
        }
    }

    pub fn one() -> Self {
        Naive {
            set: [Vec::new()].into_iter().collect(),
            point: Vec::new(),
        }
    }

    pub fn path(w: &[i8]) -> Self {
        Naive {
            set: down(w),
            point: w.to_vec(),
        }
    }

    pub fn mul(&self, o: &Naive) -> Naive {
        let mut set = self.set.clone();
        set.extend(o.set.iter().map(|w| cat(&self.point, w)));
        Naive {
            set,
            point: cat(&self.point, &o.point),
        }
    }

    pub fn inverse(&self) -> Naive {
        let pi = inv(&self.point);
        Naive {
            set: self.set.iter().map(|w| cat(&pi, w)).collect(),
            point: pi,
        }
    }

    pub fn plus(&self) -> Naive {
        Naive {
            set: self.set.clone(),
            point: Vec::new(),
        }
    }

    pub fn star(&self) -> Naive {
        let mut m = self.inverse();
        m.point.clear();
        m
    }

    pub fn weight(&self) -> usize {
        self.set.len() - 1 + self.point.len()
    }

    pub fn diameter(&self) -> usize {
        self.set.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn is_leaf(&self, w: &[i8]) -> bool {
        self.set.contains(w)
            && !self
                .set
                .iter()
                .any(|x| x.len() == w.len() + 1 && x.starts_with(w))
    }

    pub fn leaves(&self) -> Vec<Word> {
        self.set
            .iter()
            .filter(|w| self.is_leaf(w))
            .cloned()
            .collect()
    }

    pub fn is_well_formed(&self, flavor: Flavor) -> bool {
        let closed = self.set.contains(&Vec::new())
            && self
                .set
                .iter()
                .all(|w| reduce(w) == *w && (w.is_empty() || self.set.contains(&w[..w.len() - 1])));
        let positive = |w: &Word| w.iter().all(|&l| l > 0);
        let shape = match flavor {
            Flavor::FI => true,
            Flavor::FA => positive(&self.point),
            Flavor::FLA => self.set.iter().all(positive),
        };
        closed && self.set.contains(&self.point) && shape
    }

    pub fn to_element(&self, flavor: Flavor) -> MonoidElement {
        let words: Vec<SignedWord> = self.set.iter().map(|w| signed(w)).collect();
        let set = PrefixClosedSet::from_words(words.iter()).expect("prefix-closed");
        MonoidElement::new(set, signed(&self.point), flavor).expect("admissible")
    }
}

/// Library product checked against the oracle.
pub fn agrees(m: &MonoidElement, n: &Naive) -> bool {
    Naive::of(m) == *n
}

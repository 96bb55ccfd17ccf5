//! Finite prefix-closed sets of reduced words (Munn trees), stored as tries.
//!
//! A set is kept in canonical form: the trie is flattened in preorder with
//! children sorted by [`SignedLetter`] order, and every node records the index
//! one past its subtree. Two sets are equal exactly when their flattened
//! forms are equal, so `Eq`, `Hash` and `Ord` are structural.
//!
//! Translation `g·B` is done on an undirected view of the trie: a Munn tree
//! is a subtree of the Cayley graph of the free group, so re-rooting at a
//! vertex and grafting one tree onto another at a vertex are plain graph
//! walks.

use std::fmt;

use smallvec::SmallVec;

use crate::words::{SignedLetter, SignedWord};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Node {
    depth: u16,
    letter: SignedLetter,
    end: u32,
}

/// A finite, nonempty, prefix-closed set of reduced words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixClosedSet {
    nodes: Vec<Node>,
}

impl PrefixClosedSet {
    /// `{ε}`.
    pub fn singleton() -> Self {
        PrefixClosedSet {
            nodes: vec![Node {
                depth: 0,
                letter: SignedLetter::positive(0),
                end: 1,
            }],
        }
    }

    /// `w↓`, the prefixes of `w`.
    pub fn down(w: &SignedWord) -> Self {
        let n = w.len() + 1;
        let mut nodes = Vec::with_capacity(n);
        nodes.push(Node {
            depth: 0,
            letter: SignedLetter::positive(0),
            end: n as u32,
        });
        for (i, &l) in w.letters().iter().enumerate() {
            nodes.push(Node {
                depth: (i + 1) as u16,
                letter: l,
                end: n as u32,
            });
        }
        PrefixClosedSet { nodes }
    }

    /// The prefix closure of a collection of reduced words.
    pub fn closure<'a, I: IntoIterator<Item = &'a SignedWord>>(words: I) -> Self {
        let mut b = Builder::new();
        for w in words {
            let mut at = 0;
            for &l in w.letters() {
                at = b.child_or_insert(at, l);
            }
        }
        b.freeze_at(0)
    }

    /// Builds a set from words, returning `None` unless the collection is
    /// already prefix-closed and contains `ε`.
    pub fn from_words<'a, I>(words: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a SignedWord>,
        I::IntoIter: Clone,
    {
        let iter = words.into_iter();
        let set = Self::closure(iter.clone());
        let mut distinct: Vec<&SignedWord> = iter.collect();
        distinct.sort();
        distinct.dedup();
        if distinct.len() == set.len() && distinct.first().map_or(false, |w| w.is_empty()) {
            Some(set)
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Always false: a prefix-closed set contains `ε`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Length of the longest word.
    pub fn diameter(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.depth as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_positive(&self) -> bool {
        self.nodes[1..].iter().all(|n| !n.letter.is_inverse())
    }

    pub fn max_index(&self) -> Option<usize> {
        self.nodes[1..].iter().map(|n| n.letter.index()).max()
    }

    fn child(&self, node: usize, l: SignedLetter) -> Option<usize> {
        let end = self.nodes[node].end as usize;
        let mut j = node + 1;
        while j < end {
            let c = self.nodes[j];
            if c.letter == l {
                return Some(j);
            }
            if c.letter > l {
                return None;
            }
            j = c.end as usize;
        }
        None
    }

    /// Preorder index of `w`, if present.
    pub fn find(&self, w: &SignedWord) -> Option<usize> {
        let mut at = 0;
        for &l in w.letters() {
            at = self.child(at, l)?;
        }
        Some(at)
    }

    pub fn contains(&self, w: &SignedWord) -> bool {
        self.find(w).is_some()
    }

    /// All words in preorder (children in letter order).
    pub fn words(&self) -> Vec<SignedWord> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = SignedWord::empty();
        out.push(cur.clone());
        for n in &self.nodes[1..] {
            while cur.len() >= n.depth as usize {
                cur.pop();
            }
            cur.push_raw(n.letter);
            out.push(cur.clone());
        }
        out
    }

    /// All words sorted shortlex.
    pub fn sorted_words(&self) -> Vec<SignedWord> {
        let mut ws = self.words();
        ws.sort();
        ws
    }

    /// Words that are not a proper prefix of another member, in preorder.
    pub fn leaves(&self) -> Vec<SignedWord> {
        let words = self.words();
        self.nodes
            .iter()
            .enumerate()
            .filter(|(i, n)| n.end as usize == i + 1)
            .map(|(i, _)| words[i].clone())
            .collect()
    }

    pub fn is_leaf(&self, w: &SignedWord) -> bool {
        self.find(w)
            .map_or(false, |i| self.nodes[i].end as usize == i + 1)
    }

    pub fn is_subset(&self, other: &PrefixClosedSet) -> bool {
        self.len() <= other.len() && self.words().iter().all(|w| other.contains(w))
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &PrefixClosedSet) -> Vec<SignedWord> {
        self.words()
            .into_iter()
            .filter(|w| !other.contains(w))
            .collect()
    }

    /// `A ∪ B`.
    pub fn union(&self, other: &PrefixClosedSet) -> PrefixClosedSet {
        if self.is_positive() && other.is_positive() {
            return merge_at(self, 0, other);
        }
        let mut b = Builder::from_set(self);
        b.graft(0, other);
        b.freeze_at(0)
    }

    /// `A ∪ g·B` for `g ∈ A`; `None` if `g ∉ A`.
    pub fn graft(&self, g: &SignedWord, other: &PrefixClosedSet) -> Option<PrefixClosedSet> {
        if g.is_positive() && self.is_positive() && other.is_positive() {
            let at = self.find(g)?;
            return Some(merge_at(self, at, other));
        }
        let mut b = Builder::from_set(self);
        let at = b.walk(0, g)?;
        b.graft(at, other);
        Some(b.freeze_at(0))
    }

    /// `g⁻¹·A` for `g ∈ A`: the same tree re-rooted at `g`.
    pub fn reroot(&self, g: &SignedWord) -> Option<PrefixClosedSet> {
        if g.is_empty() {
            return Some(self.clone());
        }
        let b = Builder::from_set(self);
        let at = b.walk(0, g)?;
        Some(b.freeze_at(at))
    }

    /// `g·A`, translated; only meaningful as a vertex set (it need not
    /// contain `ε`), so it is returned as a list of words in preorder.
    pub fn translate_words(&self, g: &SignedWord) -> Vec<SignedWord> {
        self.words().iter().map(|w| g.concat(w)).collect()
    }

    /// The members that are positive words (a prefix-closed subset).
    pub fn positive_part(&self) -> PrefixClosedSet {
        let mask: Vec<bool> = {
            let mut keep = vec![false; self.len()];
            keep[0] = true;
            for i in 1..self.len() {
                let n = self.nodes[i];
                let parent = self.parent(i);
                keep[i] = keep[parent] && !n.letter.is_inverse();
            }
            keep
        };
        self.restrict(&mask)
    }

    /// `{y ∈ Ω* : g·y ∈ A}` for a positive `g`; `None` if `g ∉ A`.
    pub fn quotient(&self, g: &SignedWord) -> Option<PrefixClosedSet> {
        if self.is_positive() && g.is_positive() {
            let at = self.find(g)?;
            let end = self.nodes[at].end as usize;
            let base = self.nodes[at].depth;
            let mut nodes: Vec<Node> = self.nodes[at..end]
                .iter()
                .map(|n| Node {
                    depth: n.depth - base,
                    letter: n.letter,
                    end: n.end - at as u32,
                })
                .collect();
            nodes[0].letter = SignedLetter::positive(0);
            return Some(PrefixClosedSet { nodes });
        }
        Some(self.reroot(g)?.positive_part())
    }

    /// `A ∖ {w}` when `w` is a nonempty leaf.
    pub fn remove_leaf(&self, w: &SignedWord) -> Option<PrefixClosedSet> {
        let i = self.find(w)?;
        if i == 0 || self.nodes[i].end as usize != i + 1 {
            return None;
        }
        let mut mask = vec![true; self.len()];
        mask[i] = false;
        Some(self.restrict(&mask))
    }

    /// Preorder index of the parent of node `i > 0`.
    fn parent(&self, i: usize) -> usize {
        let d = self.nodes[i].depth;
        (0..i).rev().find(|&j| self.nodes[j].depth < d).unwrap_or(0)
    }

    /// Parent index for every node (`usize::MAX` for the root).
    pub(crate) fn parents(&self) -> Vec<usize> {
        let mut parents = vec![usize::MAX; self.len()];
        let mut stack: Vec<usize> = vec![0];
        for i in 1..self.len() {
            let d = self.nodes[i].depth as usize;
            stack.truncate(d);
            parents[i] = stack[d - 1];
            stack.push(i);
        }
        parents
    }

    /// One past the last preorder index of the subtree at `i`.
    pub(crate) fn subtree_end(&self, i: usize) -> usize {
        self.nodes[i].end as usize
    }

    /// Keeps the nodes selected by `mask` (which must be closed under
    /// parents and select the root).
    pub(crate) fn restrict(&self, mask: &[bool]) -> PrefixClosedSet {
        debug_assert!(mask[0]);
        let entries: Vec<(u16, SignedLetter)> = self
            .nodes
            .iter()
            .zip(mask)
            .filter(|(_, &keep)| keep)
            .map(|(n, _)| (n.depth, n.letter))
            .collect();
        Self::from_preorder(entries)
    }

    /// Builds from canonical preorder `(depth, letter)` entries.
    fn from_preorder(entries: Vec<(u16, SignedLetter)>) -> PrefixClosedSet {
        let len = entries.len();
        let mut nodes: Vec<Node> = entries
            .into_iter()
            .map(|(depth, letter)| Node {
                depth,
                letter,
                end: len as u32,
            })
            .collect();
        let mut stack: Vec<usize> = Vec::new();
        for i in 0..len {
            let d = nodes[i].depth;
            while let Some(&top) = stack.last() {
                if nodes[top].depth >= d {
                    nodes[top].end = i as u32;
                    stack.pop();
                } else {
                    break;
                }
            }
            stack.push(i);
        }
        PrefixClosedSet { nodes }
    }
}

impl fmt::Debug for PrefixClosedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sorted_words()).finish()
    }
}

impl SignedWord {
    /// Appends without cancellation; callers guarantee reducedness.
    pub(crate) fn push_raw(&mut self, l: SignedLetter) {
        debug_assert!(self.last() != Some(l.inverse()));
        self.push(l);
    }
}

/// Union of `a` with `b` grafted at node `at` of `a`, for positive tries.
fn merge_at(a: &PrefixClosedSet, at: usize, b: &PrefixClosedSet) -> PrefixClosedSet {
    let mut out: Vec<(u16, SignedLetter)> = Vec::with_capacity(a.len() + b.len());
    let sub_end = a.nodes[at].end as usize;
    for n in &a.nodes[..at] {
        out.push((n.depth, n.letter));
    }
    let base = a.nodes[at].depth;
    merge_rec(a, at, b, 0, base, &mut out);
    for n in &a.nodes[sub_end..] {
        out.push((n.depth, n.letter));
    }
    PrefixClosedSet::from_preorder(out)
}

fn merge_rec(
    a: &PrefixClosedSet,
    ai: usize,
    b: &PrefixClosedSet,
    bi: usize,
    depth: u16,
    out: &mut Vec<(u16, SignedLetter)>,
) {
    out.push((depth, a.nodes[ai].letter));
    let (mut i, aend) = (ai + 1, a.nodes[ai].end as usize);
    let (mut j, bend) = (bi + 1, b.nodes[bi].end as usize);
    while i < aend || j < bend {
        let take_a = j >= bend || (i < aend && a.nodes[i].letter < b.nodes[j].letter);
        let take_b = i >= aend || (j < bend && b.nodes[j].letter < a.nodes[i].letter);
        if take_a {
            copy_subtree(a, i, depth + 1, out);
            i = a.nodes[i].end as usize;
        } else if take_b {
            copy_subtree(b, j, depth + 1, out);
            j = b.nodes[j].end as usize;
        } else {
            merge_rec(a, i, b, j, depth + 1, out);
            i = a.nodes[i].end as usize;
            j = b.nodes[j].end as usize;
        }
    }
}

fn copy_subtree(s: &PrefixClosedSet, i: usize, depth: u16, out: &mut Vec<(u16, SignedLetter)>) {
    let base = s.nodes[i].depth;
    for n in &s.nodes[i..s.nodes[i].end as usize] {
        out.push((n.depth - base + depth, n.letter));
    }
}

const NO_PARENT: u32 = u32::MAX;

struct BNode {
    parent: u32,
    letter: SignedLetter,
    children: SmallVec<[(SignedLetter, u32); 4]>,
}

/// Mutable undirected view of a Munn tree inside the Cayley graph.
struct Builder {
    nodes: Vec<BNode>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            nodes: vec![BNode {
                parent: NO_PARENT,
                letter: SignedLetter::positive(0),
                children: SmallVec::new(),
            }],
        }
    }

    fn from_set(set: &PrefixClosedSet) -> Self {
        let mut b = Builder {
            nodes: Vec::with_capacity(set.len() + 8),
        };
        b.nodes.push(BNode {
            parent: NO_PARENT,
            letter: SignedLetter::positive(0),
            children: SmallVec::new(),
        });
        let mut stack: Vec<u32> = vec![0];
        for n in &set.nodes[1..] {
            let d = n.depth as usize;
            stack.truncate(d);
            let parent = stack[d - 1];
            let id = b.nodes.len() as u32;
            b.nodes.push(BNode {
                parent,
                letter: n.letter,
                children: SmallVec::new(),
            });
            b.nodes[parent as usize].children.push((n.letter, id));
            stack.push(id);
        }
        b
    }

    /// Moves along the Cayley edge labelled `l`, if it is in the tree.
    fn step(&self, node: u32, l: SignedLetter) -> Option<u32> {
        let n = &self.nodes[node as usize];
        if n.parent != NO_PARENT && l == n.letter.inverse() {
            return Some(n.parent);
        }
        n.children.iter().find(|(c, _)| *c == l).map(|&(_, id)| id)
    }

    fn child_or_insert(&mut self, node: u32, l: SignedLetter) -> u32 {
        if let Some(id) = self.step(node, l) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(BNode {
            parent: node,
            letter: l,
            children: SmallVec::new(),
        });
        self.nodes[node as usize].children.push((l, id));
        id
    }

    fn walk(&self, from: u32, w: &SignedWord) -> Option<u32> {
        let mut at = from;
        for &l in w.letters() {
            at = self.step(at, l)?;
        }
        Some(at)
    }

    /// Adds the translate of `set` with its root placed at `at`.
    fn graft(&mut self, at: u32, set: &PrefixClosedSet) {
        let mut stack: Vec<u32> = vec![at];
        for n in &set.nodes[1..] {
            let d = n.depth as usize;
            stack.truncate(d);
            let parent = stack[d - 1];
            let id = self.child_or_insert(parent, n.letter);
            stack.push(id);
        }
    }

    /// Canonical trie of the tree viewed from vertex `root`.
    fn freeze_at(&self, root: u32) -> PrefixClosedSet {
        let mut out: Vec<(u16, SignedLetter)> = Vec::with_capacity(self.nodes.len());
        out.push((0, SignedLetter::positive(0)));
        self.emit(root, NO_PARENT, 0, &mut out);
        PrefixClosedSet::from_preorder(out)
    }

    fn emit(&self, node: u32, from: u32, depth: u16, out: &mut Vec<(u16, SignedLetter)>) {
        let n = &self.nodes[node as usize];
        let mut nbrs: SmallVec<[(SignedLetter, u32); 8]> = n
            .children
            .iter()
            .copied()
            .filter(|&(_, id)| id != from)
            .collect();
        if n.parent != NO_PARENT && n.parent != from {
            nbrs.push((n.letter.inverse(), n.parent));
        }
        nbrs.sort_unstable();
        for (l, id) in nbrs {
            out.push((depth + 1, l));
            self.emit(id, node, depth + 1, out);
        }
    }
}

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::element::{Flavor, MonoidElement};
use crate::enumerate::{enumerate_elements, Bound};
use crate::error::{MunnError, Result};

use super::reduction::irreducible_form;
use super::relate::{component, relate, Budget};
use super::sequence::{CongruencePresentation, Side};

/// Largest weight of an `FLA` element of diameter at most `d` over `k`
/// letters: the full tree with its point at depth `d`.
pub fn max_weight_at_diameter(k: usize, d: usize) -> usize {
    let mut size = 0usize;
    let mut level = 1usize;
    for _ in 0..d {
        level = level.saturating_mul(k);
        size = size.saturating_add(level);
    }
    size.saturating_add(d)
}

/// Limits for the candidate constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateConfig {
    /// Weight bound for every `relate` search.
    pub relate_bound: usize,
    /// Replaces the weight limit derived from the bounds.
    pub weight_override: Option<usize>,
    /// Node budget shared by all searches of one call.
    pub max_nodes: usize,
    /// Cap on enumerated elements.
    pub max_elements: usize,
}

impl CandidateConfig {
    pub fn new(relate_bound: usize) -> Self {
        CandidateConfig {
            relate_bound,
            weight_override: None,
            max_nodes: 1 << 22,
            max_elements: 1 << 20,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorBounds {
    pub script_d_prime: usize,
    pub script_k: usize,
    pub script_w: usize,
    pub script_w_prime: usize,
}

/// `H′` grouped into classes: `u` and `v` share a class exactly when
/// `a·u` and `a·v` were related within the bound.
#[derive(Clone, Debug)]
pub struct AnnihilatorCandidate {
    pub a: MonoidElement,
    pub bounds: AnnihilatorBounds,
    /// `(𝒦+3)𝒲′`.
    pub proof_limit: usize,
    /// The weight limit on `a·u` actually used.
    pub weight_limit: usize,
    /// True when `weight_limit < proof_limit`.
    pub truncated: bool,
    pub classes: Vec<Vec<MonoidElement>>,
}

impl AnnihilatorCandidate {
    /// Every pair `(u, v)` with `u < v` in a common class.
    pub fn pairs(&self) -> impl Iterator<Item = (&MonoidElement, &MonoidElement)> + '_ {
        self.classes.iter().flat_map(|c| {
            c.iter()
                .enumerate()
                .flat_map(move |(i, u)| c[i + 1..].iter().map(move |v| (u, v)))
        })
    }

    /// Consecutive members of each class; generates the same congruence as
    /// [`AnnihilatorCandidate::pairs`].
    pub fn spanning_pairs(&self) -> Vec<(MonoidElement, MonoidElement)> {
        self.classes
            .iter()
            .flat_map(|c| c.windows(2).map(|w| (w[0].clone(), w[1].clone())))
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.classes
            .iter()
            .map(|c| c.len() * c.len().saturating_sub(1) / 2)
            .sum()
    }

    /// The spanning pairs as a right-side presentation.
    pub fn to_presentation(&self, alphabet_size: usize) -> Result<CongruencePresentation> {
        CongruencePresentation::new(
            Flavor::FLA,
            Side::Right,
            self.spanning_pairs(),
            alphabet_size,
        )
    }
}

/// Class representatives of `𝕂′` found within the bounds.
#[derive(Clone, Debug)]
pub struct IntersectionCandidate {
    pub a: MonoidElement,
    pub b: MonoidElement,
    /// `max(d(a), d(b), 𝒟)`.
    pub script_d_prime: usize,
    /// Weight limit on `a·u` and `b·v`.
    pub weight_limit: usize,
    pub representatives: Vec<MonoidElement>,
}

impl IntersectionCandidate {
    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

fn require_fla_right(
    rho: &CongruencePresentation,
    elems: &[&MonoidElement],
    op: &'static str,
) -> Result<()> {
    if rho.flavor() != Flavor::FLA {
        return Err(MunnError::UnsupportedFlavor {
            flavor: rho.flavor(),
            operation: op,
        });
    }
    if rho.side() != Side::Right {
        return Err(MunnError::pre("right congruence", rho.side().to_string()));
    }
    for e in elems {
        rho.check_element(e)?;
    }
    Ok(())
}

fn letters(rho: &CongruencePresentation, elems: &[&MonoidElement]) -> usize {
    elems
        .iter()
        .filter_map(|e| e.max_index())
        .map(|i| i + 1)
        .fold(rho.alphabet_size(), usize::max)
}

/// Assigns each element a class id; equal ids mean related within `bound`.
fn classify(
    rho: &CongruencePresentation,
    elems: &[MonoidElement],
    bound: usize,
    budget: &mut Budget,
) -> Result<Vec<usize>> {
    let mut class: HashMap<MonoidElement, usize> = HashMap::new();
    let mut next = 0;
    let mut out = Vec::with_capacity(elems.len());
    for e in elems {
        if let Some(&c) = class.get(e) {
            out.push(c);
            continue;
        }
        for m in component(rho, e, bound, budget)? {
            class.insert(m, next);
        }
        out.push(next);
        next += 1;
    }
    Ok(out)
}

fn check_bound(relate_bound: usize, limit: usize) -> Result<()> {
    if relate_bound < limit {
        return Err(MunnError::pre(
            "relate bound covers the weight limit",
            format!("{relate_bound} < {limit}"),
        ));
    }
    Ok(())
}

/// `a·u` for every `u` with `w(a·u) ≤ limit`, as `(u, a·u)`.
fn ball_times(
    a: &MonoidElement,
    limit: usize,
    k: usize,
    cap: usize,
) -> Result<Vec<(MonoidElement, MonoidElement)>> {
    // w(u) ≤ w(a·u) in FLA, so the weight ball covers every such u.
    Ok(
        enumerate_elements(Flavor::FLA, Bound::weight(limit), k, cap)?
            .into_iter()
            .map(|u| {
                let au = a * &u;
                (u, au)
            })
            .filter(|(_, au)| au.weight() <= limit)
            .collect(),
    )
}

/// Candidate generating set `H′` for the right annihilator of `a·ρ`.
pub fn annihilator_candidate(
    rho: &CongruencePresentation,
    a: &MonoidElement,
    config: &CandidateConfig,
) -> Result<AnnihilatorCandidate> {
    require_fla_right(rho, &[a], "annihilator_candidate")?;
    let mut budget = Budget::nodes(config.max_nodes);
    let k = letters(rho, &[a]);
    let dp = a.diameter().max(rho.script_d());
    let script_w = max_weight_at_diameter(k, dp);
    let script_w_prime = max_weight_at_diameter(k, 2 * dp);
    check_bound(config.relate_bound, script_w_prime)?;
    let small = enumerate_elements(Flavor::FLA, Bound::diameter(2 * dp), k, config.max_elements)?;
    let ids = classify(rho, &small, config.relate_bound, &mut budget)?;
    let script_k = ids.iter().max().map_or(0, |m| m + 1);
    let proof_limit = (script_k + 3).saturating_mul(script_w_prime);
    let weight_limit = config.weight_override.unwrap_or(proof_limit);
    check_bound(config.relate_bound, weight_limit)?;

    let pool = ball_times(a, weight_limit, k, config.max_elements)?;
    let products: Vec<MonoidElement> = pool.iter().map(|(_, au)| au.clone()).collect();
    let ids = classify(rho, &products, config.relate_bound, &mut budget)?;
    let mut groups: BTreeMap<usize, Vec<MonoidElement>> = BTreeMap::new();
    for ((u, _), c) in pool.into_iter().zip(ids) {
        groups.entry(c).or_default().push(u);
    }
    let mut classes: Vec<Vec<MonoidElement>> =
        groups.into_values().filter(|c| c.len() > 1).collect();
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    Ok(AnnihilatorCandidate {
        a: a.clone(),
        bounds: AnnihilatorBounds {
            script_d_prime: dp,
            script_k,
            script_w,
            script_w_prime,
        },
        proof_limit,
        weight_limit,
        truncated: weight_limit < proof_limit,
        classes,
    })
}

/// Candidate generators of `aρ·S ∩ bρ·S`: one representative `a·u′` per
/// class of irreducible pairs `(a·u′, b·v′)` reached from pairs within the
/// weight limit.
pub fn intersection_candidate(
    rho: &CongruencePresentation,
    a: &MonoidElement,
    b: &MonoidElement,
    config: &CandidateConfig,
) -> Result<IntersectionCandidate> {
    require_fla_right(rho, &[a, b], "intersection_candidate")?;
    let mut budget = Budget::nodes(config.max_nodes);
    let k = letters(rho, &[a, b]);
    let dp = a.diameter().max(b.diameter()).max(rho.script_d());
    let weight_limit = config
        .weight_override
        .unwrap_or_else(|| max_weight_at_diameter(k, 2 * dp));
    check_bound(config.relate_bound, weight_limit)?;

    let left = ball_times(a, weight_limit, k, config.max_elements)?;
    let right = ball_times(b, weight_limit, k, config.max_elements)?;
    let all: Vec<MonoidElement> = left.iter().chain(&right).map(|(_, p)| p.clone()).collect();
    let ids = classify(rho, &all, config.relate_bound, &mut budget)?;
    let (lid, rid) = ids.split_at(left.len());

    let mut found = Vec::new();
    for ((u, au), ci) in left.iter().zip(lid) {
        for ((v, bv), cj) in right.iter().zip(rid) {
            if ci != cj {
                continue;
            }
            let Some(mut s) = relate(rho, au, bv, config.relate_bound, &mut budget)? else {
                continue;
            };
            s.a = a.clone();
            s.u = u.clone();
            s.b = b.clone();
            s.v = v.clone();
            let (irr, _) = irreducible_form(&s)?;
            found.push(irr.start());
        }
    }
    found.sort();
    found.dedup();
    let ids = classify(rho, &found, config.relate_bound, &mut budget)?;
    let mut reps: BTreeMap<usize, MonoidElement> = BTreeMap::new();
    for (e, c) in found.into_iter().zip(ids) {
        reps.entry(c).or_insert(e);
    }
    let mut representatives: Vec<MonoidElement> = reps.into_values().collect();
    representatives.sort();
    Ok(IntersectionCandidate {
        a: a.clone(),
        b: b.clone(),
        script_d_prime: dp,
        weight_limit,
        representatives,
    })
}

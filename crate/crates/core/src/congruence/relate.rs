use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use crate::element::MonoidElement;
use crate::error::{MunnError, Result};
use crate::factor::{left_factors, right_factors};

use super::sequence::{CongruencePresentation, HSequence, Side, Step};

/// Per-query search limits: a node count and an optional wall-clock
/// deadline.
#[derive(Clone, Debug)]
pub struct Budget {
    max_nodes: usize,
    deadline: Option<Instant>,
    used: usize,
}

impl Budget {
    pub fn new(max_nodes: usize, timeout: Option<Duration>) -> Self {
        Budget {
            max_nodes,
            deadline: timeout.map(|t| Instant::now() + t),
            used: 0,
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(usize::MAX, None)
    }

    pub fn nodes(max_nodes: usize) -> Self {
        Budget::new(max_nodes, None)
    }

    pub fn used(&self) -> usize {
        self.used
    }

    /// Counts one visited node.
    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.max_nodes {
            return Err(MunnError::ResourceCap(format!(
                "search visited more than {} nodes",
                self.max_nodes
            )));
        }
        if self.used % 256 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(MunnError::ResourceCap("search timed out".into()));
                }
            }
        }
        Ok(())
    }
}

/// Every single-step move out of `m`: for right congruences `m = c·t ↦ d·t`,
/// for left ones `m = t·c ↦ t·d`. Sorted by target weight, then target.
pub fn neighbours(rho: &CongruencePresentation, m: &MonoidElement) -> Vec<(Step, MonoidElement)> {
    let mut out = Vec::new();
    for (c, d) in rho.pairs() {
        let ts = match rho.side() {
            Side::Right => right_factors(c, m),
            Side::Left => left_factors(m, c),
        };
        for t in ts {
            let target = match rho.side() {
                Side::Right => d * &t,
                Side::Left => &t * d,
            };
            out.push((
                Step {
                    c: c.clone(),
                    d: d.clone(),
                    t,
                },
                target,
            ));
        }
    }
    out.sort_by(|x, y| (x.1.weight(), &x.1).cmp(&(y.1.weight(), &y.1)));
    out
}

struct Search {
    nodes: Vec<MonoidElement>,
    /// Parent index and the step that reached the node.
    parent: Vec<Option<(usize, Step)>>,
    index: HashMap<MonoidElement, usize>,
}

fn bfs(
    rho: &CongruencePresentation,
    from: &MonoidElement,
    target: Option<&MonoidElement>,
    max_weight: usize,
    budget: &mut Budget,
) -> Result<(Search, Option<usize>)> {
    let mut s = Search {
        nodes: vec![from.clone()],
        parent: vec![None],
        index: HashMap::from([(from.clone(), 0)]),
    };
    if target == Some(from) {
        return Ok((s, Some(0)));
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        budget.tick()?;
        let here = s.nodes[i].clone();
        for (step, next) in neighbours(rho, &here) {
            if next.weight() > max_weight || s.index.contains_key(&next) {
                continue;
            }
            let j = s.nodes.len();
            s.index.insert(next.clone(), j);
            s.nodes.push(next.clone());
            s.parent.push(Some((i, step)));
            if target == Some(&next) {
                return Ok((s, Some(j)));
            }
            queue.push_back(j);
        }
    }
    Ok((s, None))
}

/// Breadth-first search for an `H`-sequence from `m1` to `m2` through
/// elements of weight at most `max_weight`. `Ok(None)` means "not found
/// within the bound", never "unrelated".
pub fn relate(
    rho: &CongruencePresentation,
    m1: &MonoidElement,
    m2: &MonoidElement,
    max_weight: usize,
    budget: &mut Budget,
) -> Result<Option<HSequence>> {
    rho.check_element(m1)?;
    rho.check_element(m2)?;
    let need = m1.weight().max(m2.weight());
    if max_weight < need {
        return Err(MunnError::pre(
            "bound ≥ endpoint weights",
            format!("{max_weight} < {need}"),
        ));
    }
    let (search, found) = bfs(rho, m1, Some(m2), max_weight, budget)?;
    let Some(mut j) = found else {
        return Ok(None);
    };
    let mut steps = Vec::new();
    while let Some((i, step)) = &search.parent[j] {
        steps.push(step.clone());
        j = *i;
    }
    steps.reverse();
    let one = MonoidElement::identity(rho.flavor());
    let seq = HSequence {
        side: rho.side(),
        a: m1.clone(),
        u: one.clone(),
        b: m2.clone(),
        v: one,
        steps,
    };
    seq.validate(Some(rho))?;
    Ok(Some(seq))
}

/// The elements reachable from `m` through elements of weight at most
/// `max_weight`, sorted.
pub fn component(
    rho: &CongruencePresentation,
    m: &MonoidElement,
    max_weight: usize,
    budget: &mut Budget,
) -> Result<Vec<MonoidElement>> {
    rho.check_element(m)?;
    if m.weight() > max_weight {
        return Err(MunnError::pre(
            "bound ≥ endpoint weights",
            format!("{max_weight} < {}", m.weight()),
        ));
    }
    let (search, _) = bfs(rho, m, None, max_weight, budget)?;
    let mut nodes = search.nodes;
    nodes.sort();
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Flavor;

    #[test]
    fn trivial_and_one_step() {
        let f = Flavor::FLA;
        let a = MonoidElement::generator(0, f);
        let one = MonoidElement::identity(f);
        let rho =
            CongruencePresentation::new(f, Side::Right, vec![(a.clone(), one.clone())], 2).unwrap();
        let s = relate(&rho, &a, &a, 5, &mut Budget::unlimited())
            .unwrap()
            .unwrap();
        assert!(s.is_empty());
        let s = relate(&rho, &one, &a, 5, &mut Budget::unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.steps[0].t, one);
        s.validate(Some(&rho)).unwrap();
    }

    #[test]
    fn bound_and_budget_errors() {
        let f = Flavor::FLA;
        let a = MonoidElement::generator(0, f);
        let one = MonoidElement::identity(f);
        let rho =
            CongruencePresentation::new(f, Side::Right, vec![(a.clone(), one.clone())], 1).unwrap();
        assert!(matches!(
            relate(&rho, &one, &a, 1, &mut Budget::unlimited()),
            Err(MunnError::Precondition { .. })
        ));
        let far = &(&a * &a) * &a;
        let b = MonoidElement::generator(1, f);
        let err = relate(&rho, &one, &b, 20, &mut Budget::nodes(3));
        assert!(err.is_err() || err.unwrap().is_none());
        assert!(relate(&rho, &one, &far, 6, &mut Budget::unlimited())
            .unwrap()
            .is_some());
    }

    #[test]
    fn left_side_steps() {
        let f = Flavor::FI;
        let a = MonoidElement::generator(0, f);
        let one = MonoidElement::identity(f);
        let rho =
            CongruencePresentation::new(f, Side::Left, vec![(a.clone(), one.clone())], 2).unwrap();
        let y = MonoidElement::generator(1, f);
        let ya = &y * &a;
        let s = relate(&rho, &y, &ya, 6, &mut Budget::unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.steps[0].t, y);
        let comp = component(&rho, &y, 4, &mut Budget::unlimited()).unwrap();
        assert!(comp.contains(&ya));
        assert!(!comp.contains(&MonoidElement::generator(0, f)));
    }
}

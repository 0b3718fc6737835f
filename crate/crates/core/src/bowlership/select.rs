//! Greedy squad selection by average weighted degree, and an exhaustive
//! oracle that maximises total induced weight.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::graph::WeightedGraph;
use super::BowlershipError;

/// Vertex limit for [`exhaustive_select`].
pub const EXHAUSTIVE_MAX_VERTICES: usize = 20;

/// Calls `visit` once for every connected induced subgraph of size
/// `1..=max_size` whose vertices are all `allowed`. Each subset is passed
/// sorted. Uses the ESU extension scheme, so nothing is visited twice.
pub fn for_each_connected_subset(
    g: &WeightedGraph,
    allowed: &[bool],
    max_size: usize,
    mut visit: impl FnMut(&[usize]),
) {
    if max_size == 0 {
        return;
    }
    let n = g.len();
    let mut sub = Vec::with_capacity(max_size);
    let mut sorted = Vec::with_capacity(max_size);
    for root in (0..n).filter(|&v| allowed[v]) {
        let ext: Vec<usize> = g
            .neighbors(root)
            .map(|(u, _)| u)
            .filter(|&u| u > root && allowed[u])
            .collect();
        sub.push(root);
        extend(g, allowed, max_size, root, &mut sub, ext, &mut sorted, &mut visit);
        sub.pop();
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &WeightedGraph,
    allowed: &[bool],
    max_size: usize,
    root: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    sorted: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    sorted.clear();
    sorted.extend_from_slice(sub);
    sorted.sort_unstable();
    visit(sorted);
    if sub.len() == max_size {
        return;
    }
    while let Some(w) = ext.pop() {
        // exclusive neighbourhood of w: not in sub and not adjacent to sub
        let mut next_ext = ext.clone();
        for (u, _) in g.neighbors(w) {
            if u <= root || !allowed[u] || sub.contains(&u) || next_ext.contains(&u) {
                continue;
            }
            if sub.iter().any(|&s| g.weight(s, u) != 0) {
                continue;
            }
            next_ext.push(u);
        }
        sub.push(w);
        extend(g, allowed, max_size, root, sub, next_ext, sorted, visit);
        sub.pop();
    }
}

/// A scored candidate subgraph. The score `WT = W(S) + w(X)` is held as the
/// exact fraction `(w(S) + |S| * w(X)) / |S|`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Candidate {
    vertices: Vec<usize>,
    induced: i32,
    cross: i32,
}

impl Candidate {
    fn numerator(&self) -> i64 {
        i64::from(self.induced) + self.vertices.len() as i64 * i64::from(self.cross)
    }

    /// Higher score first, then more vertices, then the lexicographically
    /// smaller vertex tuple.
    fn preference(&self, other: &Candidate) -> Ordering {
        let lhs = self.numerator() * other.vertices.len() as i64;
        let rhs = other.numerator() * self.vertices.len() as i64;
        lhs.cmp(&rhs)
            .then_with(|| self.vertices.len().cmp(&other.vertices.len()))
            .then_with(|| other.vertices.cmp(&self.vertices))
    }

    fn average(&self) -> f64 {
        f64::from(self.induced) / self.vertices.len() as f64
    }

    fn total(&self) -> f64 {
        self.numerator() as f64 / self.vertices.len() as f64
    }
}

fn best_candidate(
    g: &WeightedGraph,
    allowed: &[bool],
    selected: &[usize],
    sizes: std::ops::RangeInclusive<usize>,
) -> (Option<Candidate>, usize) {
    let mut best: Option<Candidate> = None;
    let mut considered = 0;
    let max = *sizes.end();
    for_each_connected_subset(g, allowed, max, |set| {
        if !sizes.contains(&set.len()) {
            return;
        }
        considered += 1;
        let cand = Candidate {
            vertices: set.to_vec(),
            induced: g.induced_weight(set),
            cross: set
                .iter()
                .flat_map(|&v| selected.iter().map(move |&s| (v, s)))
                .map(|(v, s)| g.weight(v, s))
                .sum(),
        };
        if best
            .as_ref()
            .is_none_or(|b| cand.preference(b) == Ordering::Greater)
        {
            best = Some(cand);
        }
    });
    (best, considered)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionPhase {
    /// The subgraph of maximum average weighted degree.
    Densest,
    /// A filler picked by average degree plus cross weight to the selection.
    Fill,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionStep {
    pub phase: SelectionPhase,
    pub chosen: Vec<String>,
    /// W(S): induced weight over size.
    pub average_weighted_degree: f64,
    /// Weight of edges joining the chosen set to the earlier selection.
    pub cross_weight: i32,
    /// WT(S) = W(S) + cross weight.
    pub total_score: f64,
    pub candidates_considered: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionResult {
    pub k: usize,
    /// Densest subgraph first, then fillers in selection order.
    pub selected: Vec<Vec<String>>,
    /// All selected bowlers, sorted.
    pub members: Vec<String>,
    pub induced_weight: i32,
    pub average_weighted_degree: f64,
    pub trace: Vec<SelectionStep>,
}

fn check_k(g: &WeightedGraph, k: usize) -> Result<(), BowlershipError> {
    if k == 0 {
        return Err(BowlershipError::KNonPositive);
    }
    if k > g.len() {
        return Err(BowlershipError::KTooLarge { k, vertices: g.len() });
    }
    Ok(())
}

/// Greedy selection of `k` bowlers.
///
/// First picks the connected subgraph of 2..=k vertices with the largest
/// average weighted degree (a single vertex when no such subgraph exists).
/// While fewer than `k` are chosen, it adds the disjoint connected subgraph
/// of the current size bound with the largest `W(S) + w(cross edges to the
/// selection)`, lowering the bound whenever no candidate of that size exists.
/// Ties go to the larger subgraph, then the lexicographically smaller names.
pub fn bowler_select(g: &WeightedGraph, k: usize) -> Result<SelectionResult, BowlershipError> {
    check_k(g, k)?;
    let mut allowed = vec![true; g.len()];
    let mut selected: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut trace = Vec::new();

    let (mut densest, mut considered) = best_candidate(g, &allowed, &selected, 2..=k);
    if densest.is_none() {
        let (single, n) = best_candidate(g, &allowed, &selected, 1..=1);
        densest = single;
        considered += n;
    }
    let densest = densest.expect("k <= |V| leaves a single-vertex candidate");
    record(g, &densest, SelectionPhase::Densest, considered, &mut trace);
    take(&densest, &mut allowed, &mut selected, &mut groups);

    let mut remain = k - selected.len();
    let mut size = remain;
    while remain > 0 {
        size = size.min(remain);
        let (cand, considered) = best_candidate(g, &allowed, &selected, size..=size);
        let Some(cand) = cand else {
            size -= 1;
            continue;
        };
        record(g, &cand, SelectionPhase::Fill, considered, &mut trace);
        take(&cand, &mut allowed, &mut selected, &mut groups);
        remain -= cand.vertices.len();
    }

    selected.sort_unstable();
    let induced = g.induced_weight(&selected);
    Ok(SelectionResult {
        k,
        selected: groups
            .iter()
            .map(|grp| grp.iter().map(|&v| g.name(v).to_string()).collect())
            .collect(),
        members: selected.iter().map(|&v| g.name(v).to_string()).collect(),
        induced_weight: induced,
        average_weighted_degree: f64::from(induced) / k as f64,
        trace,
    })
}

fn record(
    g: &WeightedGraph,
    cand: &Candidate,
    phase: SelectionPhase,
    considered: usize,
    trace: &mut Vec<SelectionStep>,
) {
    trace.push(SelectionStep {
        phase,
        chosen: cand.vertices.iter().map(|&v| g.name(v).to_string()).collect(),
        average_weighted_degree: cand.average(),
        cross_weight: cand.cross,
        total_score: cand.total(),
        candidates_considered: considered,
    });
}

fn take(cand: &Candidate, allowed: &mut [bool], selected: &mut Vec<usize>, groups: &mut Vec<Vec<usize>>) {
    for &v in &cand.vertices {
        allowed[v] = false;
        selected.push(v);
    }
    groups.push(cand.vertices.clone());
}

/// The `k`-subset with the largest total induced weight, ties broken towards
/// the lexicographically smallest sorted name tuple.
pub fn exhaustive_select(g: &WeightedGraph, k: usize) -> Result<Vec<String>, BowlershipError> {
    check_k(g, k)?;
    if g.len() > EXHAUSTIVE_MAX_VERTICES {
        return Err(BowlershipError::TooManyVertices {
            vertices: g.len(),
            max: EXHAUSTIVE_MAX_VERTICES,
        });
    }
    let n = g.len();
    let mut combo: Vec<usize> = (0..k).collect();
    let mut best = combo.clone();
    let mut best_weight = g.induced_weight(&combo);
    // combinations in lexicographic order; only a strictly better one replaces
    while let Some(i) = (0..k).rev().find(|&i| combo[i] != i + n - k) {
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
        let w = g.induced_weight(&combo);
        if w > best_weight {
            best_weight = w;
            best.clone_from(&combo);
        }
    }
    Ok(best.into_iter().map(|v| g.name(v).to_string()).collect())
}

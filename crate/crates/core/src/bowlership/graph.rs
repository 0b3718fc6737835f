use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::classify::{BowlershipEdge, DirectedTest, Metric};
use super::BowlershipError;

/// Bowlers with their significant directed bowlerships for one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectedSignedGraph {
    pub metric: Metric,
    pub vertices: BTreeSet<String>,
    /// Keyed by (from, to); one edge per ordered pair.
    #[serde(with = "edge_list")]
    pub edges: BTreeMap<(String, String), BowlershipEdge>,
}

/// Edges are stored as a plain list so the graph has a JSON form.
mod edge_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::BowlershipEdge;

    type Edges = BTreeMap<(String, String), BowlershipEdge>;

    pub fn serialize<S: Serializer>(edges: &Edges, s: S) -> Result<S::Ok, S::Error> {
        let list: Vec<&BowlershipEdge> = edges.values().collect();
        list.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Edges, D::Error> {
        let list = Vec::<BowlershipEdge>::deserialize(d)?;
        Ok(list
            .into_iter()
            .map(|e| ((e.from.clone(), e.to.clone()), e))
            .collect())
    }
}

impl DirectedSignedGraph {
    pub fn new(metric: Metric) -> Self {
        DirectedSignedGraph {
            metric,
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn add_vertex(&mut self, name: &str) {
        self.vertices.insert(name.to_string());
    }

    pub fn add_edge(&mut self, edge: BowlershipEdge) -> Result<(), BowlershipError> {
        if edge.from == edge.to {
            return Err(BowlershipError::SelfLoop(edge.from));
        }
        if edge.metric != self.metric {
            return Err(BowlershipError::MetricMismatch);
        }
        self.vertices.insert(edge.from.clone());
        self.vertices.insert(edge.to.clone());
        self.edges.insert((edge.from.clone(), edge.to.clone()), edge);
        Ok(())
    }

    pub fn edge(&self, from: &str, to: &str) -> Option<&BowlershipEdge> {
        self.edges.get(&(from.to_string(), to.to_string()))
    }
}

/// Directed signed graph over `vertices` from the significant tests of
/// `metric`.
pub fn build_directed_graph<'a>(
    vertices: impl IntoIterator<Item = &'a str>,
    tests: &[DirectedTest],
    metric: Metric,
) -> Result<DirectedSignedGraph, BowlershipError> {
    let mut g = DirectedSignedGraph::new(metric);
    for v in vertices {
        g.add_vertex(v);
    }
    for edge in tests.iter().filter(|t| t.metric == metric).filter_map(DirectedTest::edge) {
        g.add_edge(edge)?;
    }
    Ok(g)
}

/// Undirected graph with integer edge weights. Vertices are kept in name
/// order, so vertex indices sort the same way as names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "WeightedGraphRepr", into = "WeightedGraphRepr")]
pub struct WeightedGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<BTreeMap<usize, i32>>,
}

#[derive(Serialize, Deserialize)]
struct WeightedGraphRepr {
    vertices: Vec<String>,
    edges: Vec<(String, String, i32)>,
}

impl From<WeightedGraphRepr> for WeightedGraph {
    fn from(r: WeightedGraphRepr) -> Self {
        let mut g = WeightedGraph::new(r.vertices);
        for (a, b, w) in r.edges {
            // serialized graphs were valid when written
            let _ = g.add_edge(&a, &b, w);
        }
        g
    }
}

impl From<WeightedGraph> for WeightedGraphRepr {
    fn from(g: WeightedGraph) -> Self {
        WeightedGraphRepr {
            edges: g
                .edges()
                .map(|(a, b, w)| (g.names[a].clone(), g.names[b].clone(), w))
                .collect(),
            vertices: g.names,
        }
    }
}

impl WeightedGraph {
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = vertices
            .into_iter()
            .map(Into::into)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let adjacency = vec![BTreeMap::new(); names.len()];
        WeightedGraph {
            names,
            index,
            adjacency,
        }
    }

    /// Adds (or replaces) an edge; a zero weight removes it.
    pub fn add_edge(&mut self, a: &str, b: &str, weight: i32) -> Result<(), BowlershipError> {
        let ia = self.index_of(a)?;
        let ib = self.index_of(b)?;
        if ia == ib {
            return Err(BowlershipError::SelfLoop(a.to_string()));
        }
        if weight == 0 {
            self.adjacency[ia].remove(&ib);
            self.adjacency[ib].remove(&ia);
        } else {
            self.adjacency[ia].insert(ib, weight);
            self.adjacency[ib].insert(ia, weight);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, BowlershipError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| BowlershipError::UnknownVertex(name.to_string()))
    }

    pub fn weight(&self, a: usize, b: usize) -> i32 {
        self.adjacency[a].get(&b).copied().unwrap_or(0)
    }

    pub fn weight_between(&self, a: &str, b: &str) -> Option<i32> {
        let (ia, ib) = (self.index.get(a)?, self.index.get(b)?);
        self.adjacency[*ia].get(ib).copied()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.adjacency[v].iter().map(|(&u, &w)| (u, w))
    }

    /// Each undirected edge once, as (lower index, higher index, weight).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, i32)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, nbrs)| nbrs.range(a + 1..).map(move |(&b, &w)| (a, b, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Sum of weights of edges with both endpoints in `set`.
    pub fn induced_weight(&self, set: &[usize]) -> i32 {
        let mut total = 0;
        for (i, &a) in set.iter().enumerate() {
            for &b in &set[i + 1..] {
                total += self.weight(a, b);
            }
        }
        total
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for (u, _) in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Replaces the directed signed edges between each pair of bowlers with one
/// undirected edge weighing +1 per positive and -1 per negative directed
/// edge. Pairs that cancel to zero get no edge.
pub fn create_weighted_graph(g: &DirectedSignedGraph) -> WeightedGraph {
    let mut sums: BTreeMap<(&str, &str), i32> = BTreeMap::new();
    for edge in g.edges.values() {
        let key = if edge.from <= edge.to {
            (edge.from.as_str(), edge.to.as_str())
        } else {
            (edge.to.as_str(), edge.from.as_str())
        };
        *sums.entry(key).or_default() += edge.sign.weight();
    }
    let mut out = WeightedGraph::new(g.vertices.iter().cloned());
    for ((a, b), w) in sums {
        out.add_edge(a, b, w).expect("endpoints are graph vertices");
    }
    out
}

/// Induced edge weight of `set` divided by its size.
pub fn average_weighted_degree<S: AsRef<str>>(set: &[S], g: &WeightedGraph) -> Result<f64, BowlershipError> {
    if set.is_empty() {
        return Err(BowlershipError::EmptySet);
    }
    let mut idx: Vec<usize> = set
        .iter()
        .map(|s| g.index_of(s.as_ref()))
        .collect::<Result<_, _>>()?;
    idx.sort_unstable();
    idx.dedup();
    Ok(f64::from(g.induced_weight(&idx)) / idx.len() as f64)
}

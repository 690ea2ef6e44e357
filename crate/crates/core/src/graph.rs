//! The generator graph: one vertex per generator, an edge whenever two
//! generators share a variable.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monomial::SquareFreeIdeal;
use crate::rees::IndexSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("walk uses y{0} - y{1}, which is not an edge")]
    MissingEdge(usize, usize),
    #[error("vertex y{0} is not in the graph")]
    UnknownVertex(usize),
}

/// Vertices are 1-based generator labels, kept sorted; adjacency is a
/// bitmask over vertex positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorGraph {
    vertices: Vec<usize>,
    adj: Vec<u64>,
}

impl GeneratorGraph {
    fn on(ideal: &SquareFreeIdeal, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        assert!(
            vertices.len() <= 64,
            "generator graphs are limited to 64 vertices"
        );
        let mut adj = vec![0u64; vertices.len()];
        for p in 0..vertices.len() {
            for q in p + 1..vertices.len() {
                let (a, b) = (ideal.gen(vertices[p]), ideal.gen(vertices[q]));
                if !a.is_coprime(b) {
                    adj[p] |= 1 << q;
                    adj[q] |= 1 << p;
                }
            }
        }
        GeneratorGraph { vertices, adj }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn pos(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.pos(v).is_some()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        match (self.pos(a), self.pos(b)) {
            (Some(p), Some(q)) => self.adj[p] >> q & 1 == 1,
            _ => false,
        }
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let Some(p) = self.pos(v) else {
            return Vec::new();
        };
        (0..self.len())
            .filter(|&q| self.adj[p] >> q & 1 == 1)
            .map(|q| self.vertices[q])
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.pos(v).map_or(0, |p| self.adj[p].count_ones() as usize)
    }

    /// Edges `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in p + 1..self.len() {
                if self.adj[p] >> q & 1 == 1 {
                    out.push((self.vertices[p], self.vertices[q]));
                }
            }
        }
        out
    }

    fn edges_within(&self, comp: &[usize]) -> usize {
        let mask: u64 = comp
            .iter()
            .filter_map(|&v| self.pos(v))
            .fold(0, |m, p| m | 1 << p);
        comp.iter()
            .filter_map(|&v| self.pos(v))
            .map(|p| (self.adj[p] & mask).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn is_connected(&self) -> bool {
        components(self).len() <= 1
    }
}

pub fn build_graph(ideal: &SquareFreeIdeal) -> GeneratorGraph {
    GeneratorGraph::on(ideal, (1..=ideal.len()).collect())
}

/// Graph on the distinct entries of `α` together with the entries of `β`
/// that do not occur in `α`.
pub fn induced_subgraph(
    ideal: &SquareFreeIdeal,
    alpha: &IndexSequence,
    beta: &IndexSequence,
) -> GeneratorGraph {
    let mut vs = alpha.distinct();
    vs.extend(beta.distinct().into_iter().filter(|b| !alpha.contains(*b)));
    GeneratorGraph::on(ideal, vs)
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &GeneratorGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.len()];
    let mut out = Vec::new();
    for start in 0..g.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![g.vertices[start]];
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for (q, seen_q) in seen.iter_mut().enumerate() {
                if g.adj[p] >> q & 1 == 1 && !*seen_q {
                    *seen_q = true;
                    comp.push(g.vertices[q]);
                    queue.push_back(q);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ComponentClass {
    Forest,
    UniqueOddCycle { cycle: Vec<usize> },
    UniqueEvenCycle { cycle: Vec<usize> },
    MultiCycle { independent_cycles: usize },
}

impl ComponentClass {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentClass::Forest => "Forest",
            ComponentClass::UniqueOddCycle { .. } => "UniqueOddCycle",
            ComponentClass::UniqueEvenCycle { .. } => "UniqueEvenCycle",
            ComponentClass::MultiCycle { .. } => "MultiCycle",
        }
    }

    /// Forests and unique odd cycles.
    pub fn is_linear_type_shape(&self) -> bool {
        matches!(
            self,
            ComponentClass::Forest | ComponentClass::UniqueOddCycle { .. }
        )
    }
}

/// Classifies a connected component by `|E| - |V|`; the cycle of a
/// unicyclic component is the fundamental cycle of the one non-tree edge
/// of a breadth-first tree rooted at the smallest vertex.
pub fn classify_component(g: &GeneratorGraph, comp: &[usize]) -> ComponentClass {
    let v = comp.len();
    let e = g.edges_within(comp);
    if e + 1 == v {
        return ComponentClass::Forest;
    }
    if e > v {
        return ComponentClass::MultiCycle {
            independent_cycles: e - v + 1,
        };
    }
    let cycle = unique_cycle(g, comp);
    if cycle.len() % 2 == 1 {
        ComponentClass::UniqueOddCycle { cycle }
    } else {
        ComponentClass::UniqueEvenCycle { cycle }
    }
}

fn unique_cycle(g: &GeneratorGraph, comp: &[usize]) -> Vec<usize> {
    let root = comp[0];
    let mut parent: Vec<Option<usize>> = vec![None; g.len()];
    let mut depth = vec![usize::MAX; g.len()];
    let r = g.pos(root).expect("component vertex");
    depth[r] = 0;
    let mut queue = VecDeque::from([r]);
    let mut extra = None;
    while let Some(p) = queue.pop_front() {
        for q in 0..g.len() {
            if g.adj[p] >> q & 1 == 0 {
                continue;
            }
            if depth[q] == usize::MAX {
                depth[q] = depth[p] + 1;
                parent[q] = Some(p);
                queue.push_back(q);
            } else if parent[p] != Some(q) && extra.is_none() {
                extra = Some((p, q));
            }
        }
    }
    let (mut a, mut b) = extra.expect("unicyclic component has a non-tree edge");
    let mut left = vec![a];
    let mut right = vec![b];
    while a != b {
        if depth[a] >= depth[b] {
            a = parent[a].expect("non-root");
            left.push(a);
        } else {
            b = parent[b].expect("non-root");
            right.push(b);
        }
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left.into_iter().map(|p| g.vertices[p]).collect()
}

/// Acyclicity by union-find, independent of the edge-count test.
pub fn is_acyclic(g: &GeneratorGraph, comp: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..g.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in g.edges() {
        if !comp.contains(&a) || !comp.contains(&b) {
            continue;
        }
        let (pa, pb) = (g.pos(a).unwrap(), g.pos(b).unwrap());
        let (ra, rb) = (find(&mut parent, pa), find(&mut parent, pb));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Whether the whole graph is a single cycle.
pub fn is_cycle(g: &GeneratorGraph) -> bool {
    g.len() >= 3 && g.is_connected() && g.vertices.iter().all(|&v| g.degree(v) == 2)
}

/// Closed walk `y_{v0}, y_{v1}, …, y_{v0}`; `length` counts edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkWitness {
    pub vertices: Vec<usize>,
    pub length: usize,
}

impl WalkWitness {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.vertices.windows(2).map(|w| (w[0], w[1])).collect()
    }

    pub fn render(&self) -> String {
        self.vertices
            .iter()
            .map(|v| format!("y{v}"))
            .collect::<Vec<_>>()
            .join(" - ")
    }
}

/// Checks every step of a closed walk against `g`.
pub fn check_walk(g: &GeneratorGraph, vertices: &[usize]) -> Result<WalkWitness, GraphError> {
    for &v in vertices {
        if !g.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
    }
    for w in vertices.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(GraphError::MissingEdge(w[0], w[1]));
        }
    }
    Ok(WalkWitness {
        vertices: vertices.to_vec(),
        length: vertices.len().saturating_sub(1),
    })
}

/// `y_{b1} → y_{a1} → y_{b1} → … → y_{a_{s-1}} → y_{b2} → y_{a_s} → y_{b1}`.
pub fn even_closed_walk(
    g: &GeneratorGraph,
    b1: usize,
    b2: usize,
    avec: &[usize],
) -> Result<WalkWitness, GraphError> {
    let s = avec.len();
    let mut walk = vec![b1];
    for &a in &avec[..s.saturating_sub(1)] {
        walk.push(a);
        walk.push(b1);
    }
    walk.pop();
    if s >= 1 {
        walk.push(b2);
        walk.push(avec[s - 1]);
        walk.push(b1);
    }
    check_walk(g, &walk)
}

/// DOT rendering with generator monomials as labels.
pub fn to_dot(ideal: &SquareFreeIdeal, g: &GeneratorGraph) -> String {
    let mut out = String::from("graph generators {\n");
    for &v in g.vertices() {
        let _ = writeln!(out, "  y{v} [label=\"y{v}\\n{}\"];", ideal.render(ideal.gen(v)));
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  y{a} -- y{b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos;

    fn seq(v: &[usize]) -> IndexSequence {
        IndexSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn build_examples() {
        let v = build_graph(&demos::villarreal());
        assert_eq!(v.edges(), vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
        let p = build_graph(&demos::pentagon());
        assert_eq!(p.edges().len(), 9);
        assert!(!p.has_edge(1, 4));
        let free = SquareFreeIdeal::from_names(&["a", "b", "c"], &[&["a"], &["b"], &["c"]]).unwrap();
        assert!(build_graph(&free).edges().is_empty());
    }

    #[test]
    fn component_examples() {
        let free = SquareFreeIdeal::from_names(&["a", "b", "c"], &[&["a"], &["b"], &["c"]]).unwrap();
        assert_eq!(components(&build_graph(&free)), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(
            components(&build_graph(&demos::villarreal())),
            vec![vec![1, 2, 3, 4]]
        );
        let two = SquareFreeIdeal::from_names(
            &["x1", "x2", "x3", "y1", "y2"],
            &[&["x1", "x2"], &["x2", "x3"], &["y1", "y2"]],
        )
        .unwrap();
        assert_eq!(components(&build_graph(&two)), vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn classification_examples() {
        let path = build_graph(&demos::path());
        assert_eq!(classify_component(&path, &[1, 2, 3]), ComponentClass::Forest);
        let tri = build_graph(&demos::triangle());
        assert_eq!(
            classify_component(&tri, &[1, 2, 3]),
            ComponentClass::UniqueOddCycle { cycle: vec![2, 1, 3] }
        );
        let v = build_graph(&demos::villarreal());
        match classify_component(&v, &[1, 2, 3, 4]) {
            ComponentClass::UniqueEvenCycle { cycle } => assert_eq!(cycle.len(), 4),
            other => panic!("{other:?}"),
        }
        let p = build_graph(&demos::pentagon());
        assert_eq!(
            classify_component(&p, &[1, 2, 3, 4, 5]),
            ComponentClass::MultiCycle {
                independent_cycles: 5
            }
        );
        for (g, c) in [(&path, vec![1, 2, 3]), (&v, vec![1, 2, 3, 4])] {
            assert_eq!(
                is_acyclic(g, &c),
                classify_component(g, &c) == ComponentClass::Forest
            );
        }
    }

    #[test]
    fn induced_examples() {
        let p = demos::pentagon();
        let g = induced_subgraph(&p, &seq(&[1, 1, 4]), &seq(&[2, 3, 5]));
        assert_eq!(g.vertices(), &[1, 2, 3, 4, 5]);
        let g = induced_subgraph(&p, &seq(&[1, 2]), &seq(&[1, 3]));
        assert_eq!(g.vertices(), &[1, 2, 3]);
        let two = SquareFreeIdeal::from_names(
            &["x1", "x2", "x3", "y1", "y2", "y3"],
            &[&["x1", "x2"], &["x2", "x3"], &["y1", "y2"], &["y2", "y3"]],
        )
        .unwrap();
        let g = induced_subgraph(&two, &seq(&[1, 3]), &seq(&[2, 4]));
        assert_eq!(components(&g).len(), 2);
    }

    #[test]
    fn walks() {
        let g = build_graph(&demos::pentagon());
        let w = even_closed_walk(&g, 1, 4, &[2, 3, 5]).unwrap();
        assert_eq!(w.vertices, vec![1, 2, 1, 3, 4, 5, 1]);
        assert_eq!(w.length, 6);
        let v = build_graph(&demos::villarreal());
        let w = even_closed_walk(&v, 2, 4, &[1, 3]).unwrap();
        assert_eq!(w.vertices, vec![2, 1, 4, 3, 2]);
        assert_eq!(w.length, 4);
        assert_eq!(
            even_closed_walk(&g, 1, 4, &[2, 3, 4]),
            Err(GraphError::MissingEdge(4, 4))
        );
        assert_eq!(check_walk(&g, &[1, 4, 1]), Err(GraphError::MissingEdge(1, 4)));
    }

    #[test]
    fn dot_output() {
        let v = demos::villarreal();
        let dot = to_dot(&v, &build_graph(&v));
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert_eq!(dot.matches("[label=").count(), 4);
        let p = demos::pentagon();
        let dot = to_dot(&p, &build_graph(&p));
        assert_eq!(dot.matches(" -- ").count(), 9);
        assert!(dot.contains("y1 [label=\"y1\\nx1*x2*x3\"]"));
    }
}

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::words::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: usize,
    pub label: Letter,
    pub dst: usize,
}

/// A finite directed multigraph with letter-labeled edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: usize,
    edges: Vec<Edge>,
    // succ[v][letter] = targets of edges leaving v with that label
    succ: Vec<Vec<Vec<usize>>>,
    alphabet_size: usize,
}

/// A set of vertices, kept sorted.
pub type VertexSet = Vec<usize>;

impl LabeledGraph {
    pub fn new(vertices: usize, alphabet_size: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort();
        edges.dedup();
        let mut succ = vec![vec![Vec::new(); alphabet_size]; vertices];
        for e in &edges {
            succ[e.src][e.label.index()].push(e.dst);
        }
        LabeledGraph { vertices, edges, succ, alphabet_size }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn successors(&self, v: usize, l: Letter) -> &[usize] {
        &self.succ[v][l.index()]
    }

    pub fn all_vertices(&self) -> VertexSet {
        (0..self.vertices).collect()
    }

    /// Vertices reachable from `set` by one edge labeled `l`.
    pub fn step(&self, set: &[usize], l: Letter) -> VertexSet {
        let mut out: Vec<usize> = set.iter().flat_map(|&v| self.succ[v][l.index()].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn run(&self, start: &[usize], w: &Word) -> VertexSet {
        let mut cur = start.to_vec();
        for &l in w.iter() {
            if cur.is_empty() {
                break;
            }
            cur = self.step(&cur, l);
        }
        cur
    }

    /// Whether `w` labels some path.
    pub fn labels_path(&self, w: &Word) -> bool {
        !self.run(&self.all_vertices(), w).is_empty()
    }

    /// Keeps the vertices lying on bi-infinite paths; returns the reduced
    /// graph and, for each kept vertex, its old index.
    pub fn essential_part(&self) -> (LabeledGraph, Vec<usize>) {
        let n = self.vertices;
        let mut alive = vec![true; n];
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in &self.edges {
            outdeg[e.src] += 1;
            indeg[e.dst] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0 || outdeg[v] == 0).collect();
        for &v in &queue {
            alive[v] = false;
        }
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut in_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            out_edges[e.src].push(e.dst);
            in_edges[e.dst].push(e.src);
        }
        while let Some(v) = queue.pop_front() {
            for &w in &out_edges[v] {
                indeg[w] -= 1;
                if alive[w] && indeg[w] == 0 {
                    alive[w] = false;
                    queue.push_back(w);
                }
            }
            for &u in &in_edges[v] {
                outdeg[u] -= 1;
                if alive[u] && outdeg[u] == 0 {
                    alive[u] = false;
                    queue.push_back(u);
                }
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let renum: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| alive[e.src] && alive[e.dst])
            .map(|e| Edge { src: renum[&e.src], label: e.label, dst: renum[&e.dst] })
            .collect();
        (LabeledGraph::new(kept.len(), self.alphabet_size, edges), kept)
    }

    /// Strongly connected components (Tarjan, iterative), each sorted, listed
    /// in order of their smallest vertex.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let n = self.vertices;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.src].push(e.dst);
        }
        let mut comps = tarjan(&adj);
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        comps
    }

    /// The subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> LabeledGraph {
        let renum: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|e| match (renum.get(&e.src), renum.get(&e.dst)) {
                (Some(&s), Some(&d)) => Some(Edge { src: s, label: e.label, dst: d }),
                _ => None,
            })
            .collect();
        LabeledGraph::new(vertices.len(), self.alphabet_size, edges)
    }

    /// Whether every word labeling a path of `self` labels a path of `other`
    /// (both read from all vertices). Exact: explores pairs of reachable
    /// subsets.
    pub fn language_included_in(&self, other: &LabeledGraph) -> bool {
        assert_eq!(self.alphabet_size, other.alphabet_size);
        let start = (self.all_vertices(), other.all_vertices());
        let mut seen: BTreeSet<(VertexSet, VertexSet)> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some((a, b)) = queue.pop_front() {
            for l in 0..self.alphabet_size as u32 {
                let l = Letter(l);
                let na = self.step(&a, l);
                if na.is_empty() {
                    continue;
                }
                let nb = other.step(&b, l);
                if nb.is_empty() {
                    return false;
                }
                let key = (na, nb);
                if seen.insert(key.clone()) {
                    queue.push_back(key);
                }
            }
        }
        true
    }
}

/// Iterative Tarjan SCC over an adjacency list.
pub(crate) fn tarjan(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0usize;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 < adj[v].len() {
                let w = adj[v][top.1];
                top.1 += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(src: usize, l: u32, dst: usize) -> Edge {
        Edge { src, label: Letter(l), dst }
    }

    #[test]
    fn essential_part_drops_dead_ends() {
        // 0 -a-> 0, 0 -b-> 1 (dead end), 2 -a-> 0 (source)
        let g = LabeledGraph::new(3, 2, vec![e(0, 0, 0), e(0, 1, 1), e(2, 0, 0)]);
        let (t, kept) = g.essential_part();
        assert_eq!(kept, vec![0]);
        assert_eq!(t.edges().len(), 1);
    }

    #[test]
    fn tarjan_components() {
        let g = LabeledGraph::new(4, 1, vec![e(0, 0, 1), e(1, 0, 0), e(1, 0, 2), e(2, 0, 3), e(3, 0, 2)]);
        assert_eq!(g.sccs(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn inclusion_of_languages() {
        let full = LabeledGraph::new(1, 2, vec![e(0, 0, 0), e(0, 1, 0)]);
        let only_a = LabeledGraph::new(1, 2, vec![e(0, 0, 0)]);
        assert!(only_a.language_included_in(&full));
        assert!(!full.language_included_in(&only_a));
    }
}

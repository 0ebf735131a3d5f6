//! The quantum Bruhat graph on a finite Weyl group.
//!
//! Vertices are group elements, edges `w → w r_α` are either Bruhat covers
//! (UP, weight 0) or quantum edges (DOWN, weight `α∨`).

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_data::RootSystem;
use crate::weyl::{WeylElt, WeylGroup};

/// Default cap on the number of paths returned by [`QuantumBruhatGraph::all_min_paths`].
pub const DEFAULT_PATH_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    #[serde(rename = "UP")]
    Up,
    #[serde(rename = "DOWN")]
    Down,
}

impl std::fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EdgeKind::Up => "UP",
            EdgeKind::Down => "DOWN",
        })
    }
}

/// Edge `source → source · r_{β_root}`; vertices are group indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QbgEdge {
    pub source: u32,
    pub target: u32,
    /// Zero-based index into the positive roots.
    pub root: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QbgPath {
    pub start: u32,
    pub edges: Vec<QbgEdge>,
    /// Sum of the coroots of the DOWN edges, in simple-coroot coordinates.
    pub weight: Vec<i64>,
}

impl QbgPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn end(&self) -> u32 {
        self.edges.last().map_or(self.start, |e| e.target)
    }

    /// `[{"root": i, "kind": "UP"|"DOWN"}]` with one-based root indices.
    pub fn steps(&self) -> Vec<PathStep> {
        self.edges
            .iter()
            .map(|e| PathStep {
                root: e.root + 1,
                kind: e.kind,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStep {
    pub root: usize,
    pub kind: EdgeKind,
}

/// `q_1^{d_1} ⋯ q_r^{d_r}`, or `1` for the zero vector.
pub fn format_monomial(d: &[i64]) -> String {
    let parts: Vec<String> = d
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("q_{}", i + 1)
            } else {
                format!("q_{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// `α_1+2α_2` style label for a positive root.
pub fn root_label(rs: &RootSystem, k: usize) -> String {
    let mut out = String::new();
    for (i, &c) in rs.positive_roots[k].iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        if c != 1 {
            out.push_str(&c.to_string());
        }
        let _ = write!(out, "α_{}", i + 1);
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
pub struct QbgJson {
    #[serde(rename = "type")]
    pub lie_type: String,
    pub vertices: Vec<String>,
    pub edges: Vec<QbgEdgeJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct QbgEdgeJson {
    pub source: String,
    pub target: String,
    pub root: usize,
    pub root_vector: Vec<i64>,
    pub kind: EdgeKind,
    pub weight: Vec<i64>,
}

#[derive(Debug)]
pub struct QuantumBruhatGraph {
    group: WeylGroup,
    /// Outgoing edges per vertex, sorted by `(root, kind)`.
    out: Vec<Vec<QbgEdge>>,
    incoming: Vec<Vec<QbgEdge>>,
}

impl QuantumBruhatGraph {
    pub fn new(group: WeylGroup) -> Self {
        let rs = group.root_system();
        let tables = group.tables();
        let n = group.len();
        let mut out = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for w in 0..n as u32 {
            let lw = group.length(w) as i64;
            for k in 0..rs.num_positive_roots() {
                let t = tables.right_reflect[k][w as usize];
                let lt = group.length(t) as i64;
                let kind = if lt == lw + 1 {
                    EdgeKind::Up
                } else if lt == lw - rs.coroot_height2(k) + 1 {
                    EdgeKind::Down
                } else {
                    continue;
                };
                let e = QbgEdge {
                    source: w,
                    target: t,
                    root: k,
                    kind,
                };
                out[w as usize].push(e);
                incoming[t as usize].push(e);
            }
        }
        Self { group, out, incoming }
    }

    pub fn build(rs: std::sync::Arc<RootSystem>, budget: usize) -> Result<Self> {
        Ok(Self::new(WeylGroup::enumerate(rs, budget)?))
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn root_system(&self) -> &RootSystem {
        self.group.root_system()
    }

    pub fn num_vertices(&self) -> usize {
        self.out.len()
    }

    pub fn out_edges(&self, w: u32) -> &[QbgEdge] {
        &self.out[w as usize]
    }

    /// All edges in canonical order (by source, then root, then kind).
    pub fn edges(&self) -> impl Iterator<Item = &QbgEdge> {
        self.out.iter().flatten()
    }

    pub fn edge_weight(&self, e: &QbgEdge) -> Vec<i64> {
        match e.kind {
            EdgeKind::Up => vec![0; self.root_system().rank],
            EdgeKind::Down => self.root_system().positive_coroots[e.root].clone(),
        }
    }

    fn path_from_edges(&self, start: u32, edges: Vec<QbgEdge>) -> QbgPath {
        let mut weight = vec![0; self.root_system().rank];
        for e in &edges {
            if e.kind == EdgeKind::Down {
                for (d, c) in weight.iter_mut().zip(&self.root_system().positive_coroots[e.root]) {
                    *d += c;
                }
            }
        }
        QbgPath { start, edges, weight }
    }

    /// Edge counts of shortest paths into `target` from every vertex.
    pub fn distances_to(&self, target: u32) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_vertices()];
        dist[target as usize] = 0;
        let mut queue = VecDeque::from([target]);
        while let Some(v) = queue.pop_front() {
            for e in &self.incoming[v as usize] {
                if dist[e.source as usize] == usize::MAX {
                    dist[e.source as usize] = dist[v as usize] + 1;
                    queue.push_back(e.source);
                }
            }
        }
        dist
    }

    /// Edge counts of shortest paths out of `source`.
    pub fn distances_from(&self, source: u32) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.num_vertices()];
        dist[source as usize] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for e in &self.out[v as usize] {
                if dist[e.target as usize] == usize::MAX {
                    dist[e.target as usize] = dist[v as usize] + 1;
                    queue.push_back(e.target);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: u32, v: u32) -> usize {
        self.distances_from(u)[v as usize]
    }

    /// Canonical shortest path: at each step the smallest `(root, kind)`
    /// edge that stays on a shortest path.
    pub fn min_path(&self, u: u32, v: u32) -> QbgPath {
        let dist = self.distances_to(v);
        assert!(
            dist[u as usize] != usize::MAX,
            "quantum Bruhat graph is strongly connected"
        );
        let mut edges = Vec::with_capacity(dist[u as usize]);
        let mut cur = u;
        while cur != v {
            let e = *self.out[cur as usize]
                .iter()
                .find(|e| dist[e.target as usize] + 1 == dist[cur as usize])
                .expect("a shortest-path successor exists");
            edges.push(e);
            cur = e.target;
        }
        self.path_from_edges(u, edges)
    }

    pub fn min_path_elts(&self, u: &WeylElt, v: &WeylElt) -> QbgPath {
        self.min_path(self.group.index_of(u), self.group.index_of(v))
    }

    /// Every shortest path from `u` to `v`, in lexicographic `(root, kind)` order.
    pub fn all_min_paths(&self, u: u32, v: u32, budget: usize) -> Result<Vec<QbgPath>> {
        let dist = self.distances_to(v);
        let mut paths = Vec::new();
        let mut stack = Vec::new();
        self.collect_paths(u, v, &dist, &mut stack, &mut paths, budget)?;
        Ok(paths.into_iter().map(|edges| self.path_from_edges(u, edges)).collect())
    }

    fn collect_paths(
        &self,
        cur: u32,
        v: u32,
        dist: &[usize],
        stack: &mut Vec<QbgEdge>,
        paths: &mut Vec<Vec<QbgEdge>>,
        budget: usize,
    ) -> Result<()> {
        if cur == v {
            if paths.len() >= budget {
                return Err(Error::PathBudget { budget });
            }
            paths.push(stack.clone());
            return Ok(());
        }
        for e in &self.out[cur as usize] {
            if dist[e.target as usize] + 1 == dist[cur as usize] {
                stack.push(*e);
                self.collect_paths(e.target, v, dist, stack, paths, budget)?;
                stack.pop();
            }
        }
        Ok(())
    }

    /// `d` with `q^d` the minimal monomial of `σ_u * σ_v`: the weight of a
    /// shortest path from `u` to `w_0 v`.
    pub fn min_quantum_monomial(&self, u: u32, v: u32) -> Vec<i64> {
        let w0v = self.group.mul(self.group.longest_index(), v);
        self.min_path(u, w0v).weight
    }

    fn vertex_name(&self, w: u32) -> String {
        self.root_system().weyl_display(self.group.element(w))
    }

    pub fn to_dot(&self) -> String {
        let rs = self.root_system();
        let mut s = format!("digraph qbg_{} {{\n", rs.name());
        for w in 0..self.num_vertices() as u32 {
            let _ = writeln!(s, "  \"{}\";", self.vertex_name(w));
        }
        for e in self.edges() {
            let src = self.vertex_name(e.source);
            let dst = self.vertex_name(e.target);
            let label = root_label(rs, e.root);
            match e.kind {
                EdgeKind::Up => {
                    let _ = writeln!(s, "  \"{src}\" -> \"{dst}\" [label=\"{label}\"];");
                }
                EdgeKind::Down => {
                    let w: Vec<String> = self.edge_weight(e).iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(
                        s,
                        "  \"{src}\" -> \"{dst}\" [style=dashed, label=\"{label} / {}\"];",
                        w.join(",")
                    );
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> QbgJson {
        let rs = self.root_system();
        let word = |w: u32| self.group.word(w).to_string();
        QbgJson {
            lie_type: rs.name(),
            vertices: (0..self.num_vertices() as u32).map(word).collect(),
            edges: self
                .edges()
                .map(|e| QbgEdgeJson {
                    source: word(e.source),
                    target: word(e.target),
                    root: e.root + 1,
                    root_vector: rs.positive_roots[e.root].clone(),
                    kind: e.kind,
                    weight: self.edge_weight(e),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::LieType;
    use crate::weyl::WeylWord;
    use std::sync::Arc;

    fn graph(t: LieType, r: usize) -> QuantumBruhatGraph {
        QuantumBruhatGraph::build(Arc::new(RootSystem::new(t, r).unwrap()), 10_000).unwrap()
    }

    fn idx(g: &QuantumBruhatGraph, w: &str) -> u32 {
        g.group().index_of_word(&WeylWord::parse(w).unwrap()).unwrap()
    }

    #[test]
    fn a1_graph() {
        let g = graph(LieType::A, 1);
        let edges: Vec<_> = g.edges().copied().collect();
        assert_eq!(edges.len(), 2);
        assert_eq!((edges[0].source, edges[0].target, edges[0].kind), (0, 1, EdgeKind::Up));
        assert_eq!(
            (edges[1].source, edges[1].target, edges[1].kind),
            (1, 0, EdgeKind::Down)
        );
        assert_eq!(g.edge_weight(&edges[1]), vec![1]);
    }

    #[test]
    fn a2_edge_counts() {
        let g = graph(LieType::A, 2);
        let up = g.edges().filter(|e| e.kind == EdgeKind::Up).count();
        let down = g.edges().filter(|e| e.kind == EdgeKind::Down).count();
        assert_eq!((up, down), (8, 7));
    }

    /// Edge counts of the graph on `S_n` built directly from permutations:
    /// transpositions act on positions, length counts inversions.
    fn permutation_edge_counts(n: usize) -> (usize, usize) {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let inv = |p: &[usize]| {
            (0..p.len())
                .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count() as i64
        };
        let (mut up, mut down) = (0, 0);
        for w in perms(n) {
            for i in 0..n {
                for j in i + 1..n {
                    let mut t = w.clone();
                    t.swap(i, j);
                    if inv(&t) == inv(&w) + 1 {
                        up += 1;
                    } else if inv(&t) == inv(&w) - 2 * (j - i) as i64 + 1 {
                        down += 1;
                    }
                }
            }
        }
        (up, down)
    }

    #[test]
    fn edge_counts_match_permutation_model() {
        for r in 1..=4 {
            let g = graph(LieType::A, r);
            let up = g.edges().filter(|e| e.kind == EdgeKind::Up).count();
            let down = g.edges().filter(|e| e.kind == EdgeKind::Down).count();
            assert_eq!((up, down), permutation_edge_counts(r + 1), "A{r}");
        }
    }

    #[test]
    fn a2_paths_s12_to_s2() {
        let g = graph(LieType::A, 2);
        let (u, v) = (idx(&g, "12"), idx(&g, "2"));
        let p = g.min_path(u, v);
        assert_eq!(p.len(), 3);
        assert_eq!(p.weight, vec![1, 1]);
        let all = g.all_min_paths(u, v, 100).unwrap();
        // Two of these pass through the covers s_1 → s_{21}, s_2 → s_{12}
        // along the reflection of α_1+α_2.
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|q| q.weight == vec![1, 1]));
        assert_eq!(all[0], p);

        let two = g.all_min_paths(idx(&g, "21"), 0, 100).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().all(|q| q.len() == 2));

        let trivial = g.all_min_paths(v, v, 100).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].is_empty());
        assert!(matches!(g.all_min_paths(u, v, 2), Err(Error::PathBudget { budget: 2 })));
    }

    #[test]
    fn quantum_monomials() {
        let g = graph(LieType::A, 2);
        let s12 = idx(&g, "12");
        assert_eq!(g.min_quantum_monomial(s12, s12), vec![0, 1]);
        assert_eq!(format_monomial(&[0, 1]), "q_2");
        let w0 = g.group().longest_index();
        assert_eq!(g.min_quantum_monomial(w0, w0), vec![1, 1]);
        for v in 0..6 {
            assert_eq!(g.min_quantum_monomial(0, v), vec![0, 0]);
        }
        assert_eq!(format_monomial(&[2, 0, 1]), "q_1^2 q_3");
        assert_eq!(format_monomial(&[0, 0]), "1");
    }

    #[test]
    fn paths_into_w0_are_weightless() {
        let g = graph(LieType::B, 2);
        let w0 = g.group().longest_index();
        for u in 0..g.num_vertices() as u32 {
            let p = g.min_path(u, w0);
            assert!(p.edges.iter().all(|e| e.kind == EdgeKind::Up));
        }
    }

    #[test]
    fn exports() {
        let g = graph(LieType::A, 2);
        let dot = g.to_dot();
        assert_eq!(dot.matches("->").count(), 15);
        assert_eq!(dot.matches("dashed").count(), 7);
        assert!(dot.contains("\"s_{12}\" -> \"s_{1}\" [style=dashed, label=\"α_2 / 0,1\"]"));
        let j = g.to_json();
        assert_eq!(j.vertices.len(), 6);
        assert_eq!(j.edges.len(), 15);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"kind\":\"DOWN\""));
        assert_eq!(root_label(g.root_system(), 2), "α_1+α_2");
    }
}

//! Finite simple graphs and their clique invariants.
//!
//! The two quantities computed here are the clique number `c`, and for every
//! r ≥ 2 the maximum total size `z_r` of r cliques whose common intersection
//! is empty. For the classifying space of the right-angled Artin group on a
//! graph these equal the LS-category and the r-th topological complexity, so
//! [`raag_invariants`] bundles both.

mod cliques;

pub use cliques::{
    clique_number, is_clique, maximal_cliques, maximal_cliques_with, z_r, z_r_bruteforce,
    z_r_bruteforce_with, z_r_with, z_r_witness,
};

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// The hard ceiling on vertex counts imposed by the u64 bitset representation.
pub const MAX_VERTICES: usize = 64;

/// Finite simple graph on vertices `0..n`. No self-loops, no duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list. Endpoints must be `< n` and distinct;
    /// an edge may be listed only once in either orientation.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Input(format!(
                "graph has {n} vertices; the bitset representation supports at most {MAX_VERTICES}"
            )));
        }
        let mut g = Graph { n, adj: vec![0; n], edges: BTreeSet::new() };
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Graph::new(n, &[])
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges)
    }

    fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::Input(format!(
                "edge ({i}, {j}) has an endpoint outside 0..{}",
                self.n
            )));
        }
        if i == j {
            return Err(Error::Input(format!("self-loop at vertex {i}")));
        }
        let key = (i.min(j), i.max(j));
        if !self.edges.insert(key) {
            return Err(Error::Input(format!("duplicate edge ({}, {})", key.0, key.1)));
        }
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i] & (1 << j) != 0
    }

    /// Neighbour bitset of `v`.
    pub(crate) fn adjacency(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Bitset with one bit per vertex.
    pub(crate) fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

/// Set of vertices of an ambient graph, stored as a bitset.
///
/// The canonical order used for sorting cliques is lexicographic on the
/// sorted member lists, so {0} < {0,2} < {1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Result<Self> {
        let mut mask = 0u64;
        for v in members {
            if v >= MAX_VERTICES {
                return Err(Error::Input(format!("vertex index {v} out of range")));
            }
            mask |= 1 << v;
        }
        Ok(VertexSet(mask))
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    pub(crate) fn mask(&self) -> u64 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn members(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.0;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            out.push(v);
            m &= m - 1;
        }
        out
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.0 & !other.0 == 0
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members().cmp(&other.members())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.members().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Ordered family of cliques of one graph; members may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueFamily {
    cliques: Vec<VertexSet>,
}

impl CliqueFamily {
    /// Validates that every member is a clique of `g`.
    pub fn new(g: &Graph, cliques: Vec<VertexSet>) -> Result<Self> {
        for (k, c) in cliques.iter().enumerate() {
            if !is_clique(g, c)? {
                return Err(Error::Input(format!("member {k} ({c}) is not a clique")));
            }
        }
        Ok(CliqueFamily { cliques })
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    pub fn total_size(&self) -> usize {
        self.cliques.iter().map(VertexSet::len).sum()
    }

    pub fn common_intersection(&self) -> VertexSet {
        match self.cliques.split_first() {
            None => VertexSet::EMPTY,
            Some((first, rest)) => {
                let mut mask = first.mask();
                for c in rest {
                    mask &= c.mask();
                }
                VertexSet::from_mask(mask)
            }
        }
    }
}

/// Category and topological-complexity values of the classifying space of a
/// right-angled Artin group: cat equals the clique number, TC_r equals z_r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaagInvariants {
    pub cat: usize,
    /// r → TC_r for 2 ≤ r ≤ r_max.
    pub tc: BTreeMap<u32, usize>,
}

/// cat and TC_r (2 ≤ r ≤ r_max) of the classifying space over `g`.
pub fn raag_invariants(g: &Graph, r_max: u32) -> Result<RaagInvariants> {
    raag_invariants_with(g, r_max, &crate::config::Budget::default())
}

pub fn raag_invariants_with(
    g: &Graph,
    r_max: u32,
    budget: &crate::config::Budget,
) -> Result<RaagInvariants> {
    if r_max < 2 {
        return Err(Error::Domain(format!("r_max must be at least 2, got {r_max}")));
    }
    let cat = clique_number(g)?;
    let mut tc = BTreeMap::new();
    for r in 2..=r_max {
        tc.insert(r, z_r_with(g, r, budget)?);
    }
    Ok(RaagInvariants { cat, tc })
}

/// The graph family whose TC growth overshoots the category exactly once:
/// the 1-skeleton of an n-simplex with one extra n-simplex glued on each
/// (n−1)-face. Vertices 0..=n are the base simplex, vertex n+1+i is the apex
/// attached opposite base vertex i.
pub fn gamma_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::Domain(format!("gamma graph needs n >= 2, got {n}")));
    }
    let vertex_count = 2 * (n + 1);
    if vertex_count > MAX_VERTICES {
        return Err(Error::Input(format!(
            "gamma graph on {vertex_count} vertices exceeds the {MAX_VERTICES}-vertex cap"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..=n {
        for j in (i + 1)..=n {
            edges.push((i, j));
        }
    }
    for i in 0..=n {
        let apex = n + 1 + i;
        for j in 0..=n {
            if j != i {
                edges.push((j, apex));
            }
        }
    }
    Graph::new(vertex_count, &edges)
}

/// Closed form for z_r of [`gamma_graph`]:
/// (r−1)(n+1) + r when r ≤ n, and r(n+1) when r > n.
pub fn gamma_z_closed_form(n: usize, r: u32) -> Result<usize> {
    if n < 2 {
        return Err(Error::Domain(format!("gamma closed form needs n >= 2, got {n}")));
    }
    if r < 2 {
        return Err(Error::Domain(format!("z_r needs r >= 2, got {r}")));
    }
    let r = r as usize;
    Ok(if r <= n { (r - 1) * (n + 1) + r } else { r * (n + 1) })
}

/// Parses the graph file format:
/// optional `#` comment lines, one header `v <n>`, then `e <i> <j>` lines.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().unwrap();
        let parse_err = |msg: String| Error::Parse { line: line_no, msg };
        match tag {
            "v" => {
                if graph.is_some() {
                    return Err(parse_err("duplicate header line".into()));
                }
                let n: usize = tokens
                    .next()
                    .ok_or_else(|| parse_err("header needs a vertex count".into()))?
                    .parse()
                    .map_err(|_| parse_err("vertex count is not a number".into()))?;
                if tokens.next().is_some() {
                    return Err(parse_err("trailing tokens after vertex count".into()));
                }
                graph = Some(Graph::new(n, &[]).map_err(|e| parse_err(e.to_string()))?);
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| parse_err("edge before the `v <n>` header".into()))?;
                let mut endpoint = || -> Result<usize> {
                    tokens
                        .next()
                        .ok_or_else(|| parse_err("edge needs two endpoints".into()))?
                        .parse()
                        .map_err(|_| parse_err("edge endpoint is not a number".into()))
                };
                let i = endpoint()?;
                let j = endpoint()?;
                if tokens.next().is_some() {
                    return Err(parse_err("trailing tokens after edge".into()));
                }
                g.add_edge(i, j).map_err(|e| parse_err(e.to_string()))?;
            }
            other => {
                return Err(parse_err(format!("unknown line tag `{other}`")));
            }
        }
    }
    graph.ok_or_else(|| Error::Parse { line: 1, msg: "missing `v <n>` header".into() })
}

/// The six-vertex graph with four triangles: a central triangle 0,1,2 and a
/// corner triangle on each side through the apexes 3,4,5. Same shape as
/// `gamma_graph(2)` up to relabeling.
pub fn corner_triangles_graph() -> Graph {
    Graph::new(
        6,
        &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (1, 4), (2, 4), (0, 5), (2, 5)],
    )
    .expect("static graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_edgeless() {
        let g = parse_graph("v 2\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_triangle() {
        let g = parse_graph("v 3\ne 0 1\ne 1 2\ne 0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
    }

    #[test]
    fn parse_corner_triangles_file() {
        let text = "# central triangle with a corner triangle on each side\n\
                    v 6\n\
                    e 0 1\ne 1 2\ne 0 2\n\
                    e 0 3\ne 1 3\n\
                    e 1 4\ne 2 4\n\
                    e 0 5\ne 2 5\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g, corner_triangles_graph());
    }

    #[test]
    fn parse_errors_name_line_numbers() {
        let err = parse_graph("v 3\ne 0 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let err = parse_graph("v 3\ne 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("self-loop"));

        let err = parse_graph("v 3\ne 0 1\ne 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(err.to_string().contains("duplicate"));

        let err = parse_graph("v 3\nedge 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let err = parse_graph("e 0 1\n").unwrap_err();
        assert!(err.to_string().contains("header"));
    }

    #[test]
    fn vertex_set_canonical_order() {
        let a = VertexSet::from_members([0]).unwrap();
        let b = VertexSet::from_members([0, 2]).unwrap();
        let c = VertexSet::from_members([1]).unwrap();
        assert!(a < b);
        assert!(b < c);
        assert_eq!(b.to_string(), "{0,2}");
    }

    #[test]
    fn gamma_graph_shape() {
        let g = gamma_graph(3).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 18);
        // 3n(n+1)/2 edges in general.
        for n in 2..=5 {
            let g = gamma_graph(n).unwrap();
            assert_eq!(g.vertex_count(), 2 * n + 2);
            assert_eq!(g.edge_count(), 3 * n * (n + 1) / 2);
        }
        assert!(gamma_graph(1).is_err());
    }

    #[test]
    fn gamma_2_matches_corner_triangles() {
        // Same invariants as the displayed six-vertex graph.
        let g = gamma_graph(2).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 9);
        assert_eq!(clique_number(&g).unwrap(), 3);
        assert_eq!(maximal_cliques(&g).unwrap().len(), 4);
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(gamma_z_closed_form(2, 2).unwrap(), 5);
        assert_eq!(gamma_z_closed_form(2, 3).unwrap(), 9);
        assert_eq!(gamma_z_closed_form(3, 3).unwrap(), 11);
        assert_eq!(gamma_z_closed_form(3, 5).unwrap(), 20);
    }

    #[test]
    fn raag_invariants_examples() {
        let g = corner_triangles_graph();
        let inv = raag_invariants(&g, 3).unwrap();
        assert_eq!(inv.cat, 3);
        assert_eq!(inv.tc[&2], 5);
        assert_eq!(inv.tc[&3], 9);

        let inv = raag_invariants(&gamma_graph(2).unwrap(), 4).unwrap();
        assert_eq!(inv.tc[&2], 5);
        assert_eq!(inv.tc[&3], 9);
        assert_eq!(inv.tc[&4], 12);

        let single = Graph::edgeless(1).unwrap();
        let inv = raag_invariants(&single, 2).unwrap();
        assert_eq!(inv.cat, 1);
        assert_eq!(inv.tc[&2], 1);
    }

    #[test]
    fn clique_family_validation() {
        let g = corner_triangles_graph();
        let tri = VertexSet::from_members([0, 1, 2]).unwrap();
        let fam = CliqueFamily::new(&g, vec![tri, tri]).unwrap();
        assert_eq!(fam.total_size(), 6);
        assert_eq!(fam.common_intersection(), tri);

        let non_clique = VertexSet::from_members([3, 4]).unwrap();
        assert!(CliqueFamily::new(&g, vec![non_clique]).is_err());
    }
}

//! Finite graphs and their codings by passing numbers.
//!
//! Coding nodes `⟨t_n⟩` of strictly increasing length code the graph on
//! `⟨v_n⟩` in which `v_m` and `v_n` (`m < n`) are adjacent iff
//! `t_n(|t_m|) = 1`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::node::Node;
use crate::similarity::{enumerate_diagonal_types, Mode, SimilarityType};
use crate::tree::FinTree;

/// A simple graph on `0..vertex_count`; the vertex numbering is the
/// enumeration `⟨v_n⟩` and is part of the value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            if a == b {
                return Err(Error::Invariant(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::Invariant(format!(
                    "edge {a}-{b} leaves the vertex range 0..{n}"
                )));
            }
            g.adj[a][b] = true;
            g.adj[b][a] = true;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        Graph::new(n, &edges).expect("complete graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.adj[a][b])
            .collect()
    }

    /// Every three vertices include a non-adjacent pair.
    pub fn is_triangle_free(&self) -> bool {
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c in b + 1..self.n {
                    if self.adj[a][b] && self.adj[a][c] && self.adj[b][c] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().all(|&a| set.iter().all(|&b| !self.adj[a][b]))
    }

    /// The graph with vertex `i` renamed `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (a, b) in self.edges() {
            g.adj[perm[a]][perm[b]] = true;
            g.adj[perm[b]][perm[a]] = true;
        }
        g
    }

    /// Brute-force isomorphism test over all vertex permutations.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.n != other.n || self.edges().len() != other.edges().len() {
            return false;
        }
        permutations(self.n)
            .into_iter()
            .any(|p| self.relabel(&p) == *other)
    }

    /// `vertices N` followed by `edge i j` lines with `i < j`.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.n);
        for (a, b) in self.edges() {
            let _ = writeln!(out, "edge {a} {b}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>().map_err(|_| {
                    ParseError::new(i + 1, format!("expected a vertex number, got {s:?}"))
                })
            };
            match (fields.as_slice(), n) {
                (["vertices", k], None) => n = Some(num(k)?),
                (["vertices", _], Some(_)) => {
                    return Err(ParseError::new(i + 1, "repeated 'vertices' header").into())
                }
                (["edge", a, b], Some(_)) => {
                    let (a, b) = (num(a)?, num(b)?);
                    if a == b {
                        return Err(Error::Invariant(format!(
                            "line {}: self-loop edge {a} {b}",
                            i + 1
                        )));
                    }
                    if a > b {
                        return Err(ParseError::new(
                            i + 1,
                            format!("edge {a} {b} must list the smaller vertex first"),
                        )
                        .into());
                    }
                    edges.push((a, b));
                }
                (_, None) => {
                    return Err(ParseError::new(i + 1, "expected 'vertices N' first").into())
                }
                _ => {
                    return Err(
                        ParseError::new(i + 1, format!("unrecognized line {line:?}")).into(),
                    )
                }
            }
        }
        let n = n.ok_or_else(|| ParseError::new(0, "missing 'vertices N' header"))?;
        Graph::new(n, &edges)
    }
}

/// All permutations of `0..n`, lexicographically.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn check_increasing(ts: &[Node]) -> Result<()> {
    match ts.windows(2).position(|w| w[0].len() >= w[1].len()) {
        Some(i) => Err(Error::NonIncreasingLengths(i + 1)),
        None => Ok(()),
    }
}

/// Decodes the graph coded by nodes of strictly increasing length.
pub fn graph_from_nodes(ts: &[Node]) -> Result<Graph> {
    check_increasing(ts)?;
    let mut g = Graph::empty(ts.len());
    for n in 0..ts.len() {
        for m in 0..n {
            if ts[n].bit(ts[m].len()) {
                g.adj[m][n] = true;
                g.adj[n][m] = true;
            }
        }
    }
    Ok(g)
}

pub fn codes_graph(ts: &[Node], g: &Graph) -> bool {
    ts.len() == g.vertex_count() && graph_from_nodes(ts).is_ok_and(|h| h == *g)
}

/// Some coding length `l` with `s(l) = t(l) = 1`.
pub fn has_parallel_ones(s: &Node, t: &Node, coding_lengths: &BTreeSet<usize>) -> bool {
    coding_lengths
        .iter()
        .any(|&l| s.get(l) == Some(true) && t.get(l) == Some(true))
}

/// Indices `i < j < k` with `t_k(|t_j|) = t_k(|t_i|) = t_j(|t_i|) = 1`,
/// minimizing `k`, then `j`, then `i`.
pub fn triangle_witness(ts: &[Node]) -> Result<Option<(usize, usize, usize)>> {
    check_increasing(ts)?;
    for k in 0..ts.len() {
        for j in 0..k {
            if !ts[k].bit(ts[j].len()) {
                continue;
            }
            for i in 0..j {
                if ts[k].bit(ts[i].len()) && ts[j].bit(ts[i].len()) {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

/// With-passing types of strongly diagonal trees whose terminal nodes, read
/// in order of length, code `g` under its own vertex order.
pub fn sauer_type_count(g: &Graph) -> (usize, Vec<SimilarityType>) {
    let types = enumerate_diagonal_types(g.vertex_count(), Mode::WithPassing, |ty| {
        codes_graph(&ty.witness_terminals(), g)
    });
    (types.len(), types)
}

/// With-passing types whose terminal nodes code some enumeration of a graph
/// isomorphic to `g`; this counts the codings of every copy of `g`.
pub fn sauer_degree_bound(g: &Graph) -> (usize, Vec<SimilarityType>) {
    let types = enumerate_diagonal_types(g.vertex_count(), Mode::WithPassing, |ty| {
        graph_from_nodes(&ty.witness_terminals()).is_ok_and(|h| h.is_isomorphic(g))
    });
    (types.len(), types)
}

/// Finite extension property of the graph coded by all nodes of `tree`
/// shorter than `depth`.
///
/// For all disjoint sets `A`, `B` of levels below `r` with `|A| + |B| ≤ r`,
/// some node longer than every level in `A ∪ B` (and shorter than `depth`)
/// must have passing number 1 at each level of `A` and 0 at each level of
/// `B`. Vertices at a common level never disagree on a later node's passing
/// number, so demands are stated per level.
pub fn extension_property_check(tree: &FinTree, depth: usize, r: usize) -> bool {
    let candidates: Vec<&Node> = tree.nodes().iter().filter(|t| t.len() < depth).collect();
    // each level below r is in A, in B, or unused; |A| + |B| ≤ r holds
    // automatically
    let mut assignment = vec![0u8; r];
    loop {
        // a demanded level l needs |t| > l, which `get` enforces
        let realized = candidates.iter().any(|t| {
            assignment.iter().enumerate().all(|(l, &a)| match a {
                1 => t.get(l) == Some(true),
                2 => t.get(l) == Some(false),
                _ => true,
            })
        });
        if !realized {
            return false;
        }
        let mut i = 0;
        loop {
            if i == r {
                return true;
            }
            assignment[i] += 1;
            if assignment[i] < 3 {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

pub fn full_extension_property_check(depth: usize, r: usize) -> bool {
    extension_property_check(&FinTree::full(depth), depth, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::node;

    fn nodes(xs: &[&str]) -> Vec<Node> {
        xs.iter().map(|s| node(s)).collect()
    }

    #[test]
    fn decode_examples() {
        assert_eq!(
            graph_from_nodes(&nodes(&["010", "0001"])).unwrap(),
            Graph::complete(2)
        );
        assert_eq!(
            graph_from_nodes(&nodes(&["0110"])).unwrap(),
            Graph::empty(1)
        );
        let cycle = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(
            graph_from_nodes(&nodes(&["1", "01", "001", "0101"])).unwrap(),
            cycle
        );
        assert!(matches!(
            graph_from_nodes(&nodes(&["01", "10"])),
            Err(Error::NonIncreasingLengths(1))
        ));
    }

    #[test]
    fn coding_examples() {
        let k2 = Graph::complete(2);
        assert!(codes_graph(&nodes(&["010", "0001"]), &k2));
        assert!(codes_graph(&nodes(&["0", "110"]), &k2));
        assert!(!codes_graph(&nodes(&["0", "100"]), &k2));
    }

    #[test]
    fn parallel_ones() {
        let one: BTreeSet<usize> = [1].into();
        assert!(!has_parallel_ones(&node("10"), &node("01"), &one));
        assert!(has_parallel_ones(&node("11"), &node("01"), &one));
        assert!(!has_parallel_ones(
            &node("11"),
            &node("11"),
            &BTreeSet::new()
        ));
    }

    #[test]
    fn triangles() {
        assert_eq!(
            triangle_witness(&nodes(&["1", "01", "001", "0101"])).unwrap(),
            None
        );
        assert_eq!(
            triangle_witness(&nodes(&["1", "11", "111"])).unwrap(),
            Some((0, 1, 2))
        );
        assert_eq!(triangle_witness(&nodes(&["1", "11"])).unwrap(), None);
    }

    #[test]
    fn small_sauer_counts() {
        assert_eq!(sauer_type_count(&Graph::empty(1)).0, 1);
        assert_eq!(sauer_type_count(&Graph::empty(0)).0, 1);
        let (k2, types) = sauer_type_count(&Graph::complete(2));
        assert!(k2 >= 2);
        for ty in &types {
            assert!(codes_graph(&ty.witness_terminals(), &Graph::complete(2)));
        }
    }

    #[test]
    fn extension_property() {
        assert!(full_extension_property_check(6, 2));
        assert!(full_extension_property_check(4, 3));
        let pruned = FinTree::new(
            FinTree::full(5)
                .nodes()
                .iter()
                .filter(|t| t.get(0) != Some(true))
                .cloned(),
        )
        .unwrap();
        assert!(!extension_property_check(&pruned, 5, 2));
    }

    #[test]
    fn graph_text_format() {
        let g = Graph::new(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(g.to_text(), "vertices 3\nedge 0 2\nedge 1 2\n");
        assert_eq!(Graph::from_text(&g.to_text()).unwrap(), g);
        assert!(matches!(
            Graph::from_text("vertices 3\nedge 2 2\n"),
            Err(Error::Invariant(_))
        ));
        let err = Graph::from_text("vertices 3\nedge 0 x\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        assert!(Graph::from_text("vertices 2\nedge 0 5\n").is_err());
    }

    #[test]
    fn relabel_and_isomorphism() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let other = Graph::new(3, &[(0, 2), (1, 2)]).unwrap();
        assert!(path.is_isomorphic(&other));
        assert!(!path.is_isomorphic(&Graph::complete(3)));
    }
}

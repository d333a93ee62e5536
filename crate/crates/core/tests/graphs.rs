use proptest::prelude::*;
use ramsey_trees::graph::{graph_from_nodes, permutations, sauer_degree_bound, sauer_type_count};
use ramsey_trees::tree::combinations;
use ramsey_trees::{Graph, Node};

fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs = combinations(n, 2);
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| (p[0], p[1]))
                .collect();
            Graph::new(n, &edges).unwrap()
        })
        .collect()
}

#[test]
fn degree_bound_is_invariant_under_relabeling() {
    for n in 1..=4 {
        let graphs = all_graphs(n);
        let bounds: Vec<usize> = graphs.iter().map(|g| sauer_degree_bound(g).0).collect();
        let bound_of = |h: &Graph| bounds[graphs.iter().position(|g| g == h).unwrap()];
        for (g, &b) in graphs.iter().zip(&bounds) {
            for p in permutations(n) {
                assert_eq!(bound_of(&g.relabel(&p)), b);
            }
        }
    }
}

#[test]
fn degree_bound_sums_labeled_codings() {
    for n in 1..=3 {
        for g in all_graphs(n) {
            let mut copies: Vec<Graph> = Vec::new();
            for p in permutations(n) {
                let h = g.relabel(&p);
                if !copies.contains(&h) {
                    copies.push(h);
                }
            }
            let sum: usize = copies.iter().map(|h| sauer_type_count(h).0).sum();
            assert_eq!(sauer_degree_bound(&g).0, sum, "{}", g.to_text());
        }
    }
}

#[test]
fn single_edge_and_non_edge() {
    assert_eq!(sauer_type_count(&Graph::complete(2)).0, 2);
    assert_eq!(sauer_type_count(&Graph::empty(2)).0, 2);
    assert_eq!(sauer_degree_bound(&Graph::empty(1)).0, 1);
}

proptest! {
    #[test]
    fn decoding_reads_passing_bits(bits in prop::collection::vec(any::<bool>(), 10)) {
        // nodes of lengths 1..=4 with free bits
        let mut it = bits.into_iter();
        let ts: Vec<Node> = (1..=4).map(|l| Node::from_bits((0..l).map(|_| it.next().unwrap()))).collect();
        let g = graph_from_nodes(&ts).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                prop_assert_eq!(g.has_edge(i, j), ts[j].bit(ts[i].len()));
            }
        }
    }
}

//! Meet-closed finite trees, level sets and finite strong subtrees.
//!
//! A tree here is any finite set of nodes closed under pairwise meets; it
//! need not be closed under initial segments. [`FinTree::hat`] gives the
//! initial-segment closure, which is where immediate successors live.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::node::{full_tree_nodes, Node};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinTree {
    nodes: BTreeSet<Node>,
    coding: Vec<Node>,
}

/// The level set `L` certifying that a tree is a finite strong subtree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongWitness {
    pub levels: Vec<usize>,
}

impl StrongWitness {
    pub fn new(levels: impl Into<Vec<usize>>) -> Self {
        StrongWitness {
            levels: levels.into(),
        }
    }
}

/// Adds the meets of lexicographically adjacent nodes; for sets of sequences
/// this already yields every pairwise meet.
pub fn meet_closure<I: IntoIterator<Item = Node>>(xs: I) -> FinTree {
    let mut v: Vec<Node> = xs.into_iter().collect();
    v.sort_by(Node::lex_cmp);
    v.dedup();
    let meets: Vec<Node> = v.windows(2).map(|w| w[0].meet(&w[1])).collect();
    let nodes = v.into_iter().chain(meets).collect();
    FinTree {
        nodes,
        coding: Vec::new(),
    }
}

fn missing_meet(nodes: &BTreeSet<Node>) -> Option<(Node, Node)> {
    let mut v: Vec<&Node> = nodes.iter().collect();
    v.sort_by(|a, b| a.lex_cmp(b));
    v.windows(2)
        .find(|w| !nodes.contains(&w[0].meet(w[1])))
        .map(|w| (w[0].clone(), w[1].clone()))
}

impl FinTree {
    /// Builds a tree from a node set, rejecting sets that are not closed
    /// under meets.
    pub fn new<I: IntoIterator<Item = Node>>(nodes: I) -> Result<Self> {
        let nodes: BTreeSet<Node> = nodes.into_iter().collect();
        if let Some((a, b)) = missing_meet(&nodes) {
            return Err(Error::Invariant(format!(
                "tree is not closed under meets: {a} ∧ {b} = {} is missing",
                a.meet(&b)
            )));
        }
        Ok(FinTree {
            nodes,
            coding: Vec::new(),
        })
    }

    pub fn empty() -> Self {
        FinTree::default()
    }

    /// `2^{≤n}`.
    pub fn full(n: usize) -> Self {
        FinTree {
            nodes: full_tree_nodes(n).into_iter().collect(),
            coding: Vec::new(),
        }
    }

    /// Marks coding nodes. They must belong to the tree and have strictly
    /// increasing lengths.
    pub fn with_coding(mut self, coding: Vec<Node>) -> Result<Self> {
        for (i, c) in coding.iter().enumerate() {
            if !self.nodes.contains(c) {
                return Err(Error::Invariant(format!(
                    "coding node {c} is not a tree node"
                )));
            }
            if i > 0 && coding[i - 1].len() >= c.len() {
                return Err(Error::Invariant(format!(
                    "coding nodes must strictly increase in length ({} then {c})",
                    coding[i - 1]
                )));
            }
        }
        self.coding = coding;
        Ok(self)
    }

    pub(crate) fn from_parts_unchecked(nodes: BTreeSet<Node>, coding: Vec<Node>) -> Self {
        FinTree { nodes, coding }
    }

    pub fn nodes(&self) -> &BTreeSet<Node> {
        &self.nodes
    }

    pub fn coding_nodes(&self) -> &[Node] {
        &self.coding
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, t: &Node) -> bool {
        self.nodes.contains(t)
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().next_back().map_or(0, Node::len)
    }

    /// Distinct node lengths, ascending.
    pub fn levels(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.nodes.iter().map(Node::len).collect();
        v.dedup();
        v
    }

    /// `T(n)`, lexicographically.
    pub fn level(&self, n: usize) -> Vec<Node> {
        self.nodes
            .range(Node::zeros(n)..)
            .take_while(|t| t.len() == n)
            .cloned()
            .collect()
    }

    /// `T̂`, the set of all initial segments of members of `T`.
    pub fn hat(&self) -> FinTree {
        let mut nodes = BTreeSet::new();
        for t in &self.nodes {
            for l in (0..=t.len()).rev() {
                if !nodes.insert(t.prefix(l)) {
                    break;
                }
            }
        }
        FinTree {
            nodes,
            coding: self.coding.clone(),
        }
    }

    pub fn in_hat(&self, t: &Node) -> bool {
        self.nodes.range(t.clone()..).any(|u| t.is_prefix_of(u))
    }

    /// `spl_T(t)`: the immediate successors of `t` in `T̂`.
    pub fn successors(&self, t: &Node) -> Result<Vec<Node>> {
        if !self.in_hat(t) {
            return Err(Error::NotInTree(t.clone()));
        }
        Ok([false, true]
            .into_iter()
            .map(|b| t.child(b))
            .filter(|u| self.in_hat(u))
            .collect())
    }

    /// Nodes of `T` properly extending `t`.
    pub fn extensions<'a>(&'a self, t: &'a Node) -> impl Iterator<Item = &'a Node> + 'a {
        self.nodes
            .range(t.clone()..)
            .filter(move |u| t.is_proper_prefix_of(u))
    }

    pub fn is_maximal(&self, t: &Node) -> bool {
        self.extensions(t).next().is_none()
    }

    /// `t` splits in `T` when members of `T` extend both `t⌢0` and `t⌢1`.
    pub fn is_splitting(&self, t: &Node) -> bool {
        let (mut left, mut right) = (false, false);
        for u in self.extensions(t) {
            if u.bit(t.len()) {
                right = true;
            } else {
                left = true;
            }
            if left && right {
                return true;
            }
        }
        false
    }

    pub fn maximal_nodes(&self) -> Vec<Node> {
        self.nodes
            .iter()
            .filter(|t| self.is_maximal(t))
            .cloned()
            .collect()
    }

    pub fn splitting_nodes(&self) -> Vec<Node> {
        self.nodes
            .iter()
            .filter(|t| self.is_splitting(t))
            .cloned()
            .collect()
    }

    /// Splitting and coding nodes, shortlex.
    pub fn critical_nodes(&self) -> Vec<Node> {
        let coding: BTreeSet<&Node> = self.coding.iter().collect();
        self.nodes
            .iter()
            .filter(|t| coding.contains(t) || self.is_splitting(t))
            .cloned()
            .collect()
    }

    pub fn is_subset(&self, other: &FinTree) -> bool {
        self.nodes.is_subset(&other.nodes)
    }

    /// Tree text format: one node per line (`-` for the root), shortlex, with
    /// a trailing `*` on coding nodes.
    pub fn to_text(&self) -> String {
        let coding: BTreeSet<&Node> = self.coding.iter().collect();
        let mut out = String::new();
        for t in &self.nodes {
            let mark = if coding.contains(t) { "*" } else { "" };
            let _ = writeln!(out, "{t}{mark}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut nodes = BTreeSet::new();
        let mut coding = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (body, is_coding) = match line.strip_suffix('*') {
                Some(b) => (b.trim(), true),
                None => (line, false),
            };
            if body.is_empty() {
                return Err(ParseError::new(i + 1, "missing node before '*'").into());
            }
            let t: Node = body.parse().map_err(|e: ParseError| e.at(i + 1))?;
            if !nodes.insert(t.clone()) {
                return Err(ParseError::new(i + 1, format!("duplicate node {t}")).into());
            }
            if is_coding {
                coding.push(t);
            }
        }
        coding.sort();
        FinTree::new(nodes)?.with_coding(coding)
    }
}

/// Nodes of `s`'s cone in `Ŝ` one level up, i.e. `spl_S(s)` computed from
/// the members of `S` extending `s`.
fn successors_in(tree: &FinTree, s: &Node) -> BTreeSet<Node> {
    tree.extensions(s).map(|u| u.prefix(s.len() + 1)).collect()
}

/// Whether `S` is a finite strong subtree of `T` with level set `w.levels`.
///
/// `S` must lie inside `T`, be meet-closed, occupy exactly the levels of the
/// witness with a single node at the first one, and every node below the
/// last level must split maximally in `T`: each member of `spl_T(s)` is
/// extended by exactly one node of `S` at the next level. Leaves may only
/// occur at the last level.
pub fn is_strong_subtree(s: &FinTree, t: &FinTree, w: &StrongWitness) -> bool {
    let levels = &w.levels;
    if levels.is_empty() || s.is_empty() {
        return false;
    }
    if levels.windows(2).any(|p| p[0] >= p[1]) || *levels.last().unwrap() > t.depth() {
        return false;
    }
    if !s.is_subset(t) || missing_meet(&s.nodes).is_some() {
        return false;
    }
    if s.levels() != *levels {
        return false;
    }
    if s.level(levels[0]).len() != 1 {
        return false;
    }
    for j in 0..levels.len() - 1 {
        let next = s.level(levels[j + 1]);
        for node in s.level(levels[j]) {
            let spl_t: BTreeSet<Node> = match t.successors(&node) {
                Ok(v) => v.into_iter().collect(),
                Err(_) => return false,
            };
            if spl_t.is_empty() || successors_in(s, &node) != spl_t {
                return false;
            }
            for u in &spl_t {
                if next.iter().filter(|x| u.is_prefix_of(x)).count() != 1 {
                    return false;
                }
            }
        }
        if next.iter().any(|x| !s.contains(&x.prefix(levels[j]))) {
            return false;
        }
    }
    true
}

/// A tree is strong when it is a strong subtree of itself on its own levels.
pub fn is_strong(t: &FinTree) -> bool {
    is_strong_subtree(t, t, &StrongWitness::new(t.levels()))
}

/// `r_k(T)`: the nodes of `T` with fewer than `k` splitting nodes of `T`
/// strictly below them.
pub fn restrict(t: &FinTree, k: usize) -> Result<FinTree> {
    if !is_strong(t) && !t.is_empty() {
        return Err(Error::Invariant("restriction needs a strong tree".into()));
    }
    let available = t.levels().len();
    if k > available {
        return Err(Error::Exhausted {
            requested: k,
            available,
        });
    }
    let splitting: BTreeSet<Node> = t.splitting_nodes().into_iter().collect();
    let nodes = t
        .nodes
        .iter()
        .filter(|x| {
            splitting
                .iter()
                .filter(|s| s.is_proper_prefix_of(x))
                .count()
                < k
        })
        .cloned()
        .collect();
    Ok(FinTree::from_parts_unchecked(nodes, Vec::new()))
}

/// Enumerates strong subtrees of `ambient` whose level set is `levels`.
///
/// `allow(parent_successor, candidate)` can veto a candidate node; the
/// parent successor is `None` for the root. Results come in lexicographic
/// order of their shortlex node lists.
pub fn strong_subtrees_with_levels_filtered<F>(
    ambient: &FinTree,
    levels: &[usize],
    allow: F,
) -> Vec<FinTree>
where
    F: Fn(Option<&Node>, &Node) -> bool,
{
    let mut out = Vec::new();
    if levels.is_empty() || levels.windows(2).any(|p| p[0] >= p[1]) {
        return out;
    }
    for root in ambient.level(levels[0]) {
        if !allow(None, &root) {
            continue;
        }
        let mut acc = vec![root.clone()];
        extend_levels(ambient, levels, 0, vec![root], &allow, &mut acc, &mut out);
    }
    out.sort();
    out
}

fn extend_levels<F>(
    ambient: &FinTree,
    levels: &[usize],
    j: usize,
    frontier: Vec<Node>,
    allow: &F,
    acc: &mut Vec<Node>,
    out: &mut Vec<FinTree>,
) where
    F: Fn(Option<&Node>, &Node) -> bool,
{
    if j + 1 == levels.len() {
        out.push(FinTree::from_parts_unchecked(
            acc.iter().cloned().collect(),
            Vec::new(),
        ));
        return;
    }
    let next_level = levels[j + 1];
    let mut slots: Vec<Vec<Node>> = Vec::new();
    for s in &frontier {
        let succ = match ambient.successors(s) {
            Ok(v) if !v.is_empty() => v,
            _ => return,
        };
        for u in succ {
            let cands: Vec<Node> = ambient
                .level(next_level)
                .into_iter()
                .filter(|x| u.is_prefix_of(x) && allow(Some(&u), x))
                .collect();
            if cands.is_empty() {
                return;
            }
            slots.push(cands);
        }
    }
    let mut idx = vec![0usize; slots.len()];
    loop {
        let chosen: Vec<Node> = slots.iter().zip(&idx).map(|(c, &i)| c[i].clone()).collect();
        let base = acc.len();
        acc.extend(chosen.iter().cloned());
        extend_levels(ambient, levels, j + 1, chosen, allow, acc, out);
        acc.truncate(base);
        // odometer, last slot fastest
        let mut p = slots.len();
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < slots[p].len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

pub fn strong_subtrees_with_levels(ambient: &FinTree, levels: &[usize]) -> Vec<FinTree> {
    strong_subtrees_with_levels_filtered(ambient, levels, |_, _| true)
}

/// All `k`-element subsets of `0..n`, lexicographically.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every strong subtree of `2^{≤n}` with exactly `k` levels, ordered by level
/// sequence and then by node set.
pub fn enumerate_strong_subtrees(n: usize, k: usize) -> Vec<FinTree> {
    let ambient = FinTree::full(n);
    combinations(n + 1, k)
        .into_iter()
        .flat_map(|levels| strong_subtrees_with_levels(&ambient, &levels))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::node;

    fn tree(xs: &[&str]) -> FinTree {
        FinTree::new(xs.iter().map(|s| node(s))).unwrap()
    }

    #[test]
    fn meet_closure_examples() {
        assert_eq!(
            meet_closure([node("010"), node("0001")]),
            tree(&["0", "010", "0001"])
        );
        assert!(meet_closure([]).is_empty());
        assert_eq!(
            meet_closure([node("0"), node("110")]),
            tree(&["-", "0", "110"])
        );
    }

    #[test]
    fn rejects_non_meet_closed() {
        assert!(matches!(
            FinTree::new([node("00"), node("01")]),
            Err(Error::Invariant(_))
        ));
    }

    #[test]
    fn initial_closure_examples() {
        assert_eq!(tree(&["010"]).hat(), tree(&["-", "0", "01", "010"]));
        let t = tree(&["-", "0", "11"]);
        assert_eq!(t.hat(), tree(&["-", "0", "1", "11"]));
        assert_eq!(t.hat().hat(), t.hat());
    }

    #[test]
    fn level_sets() {
        let t = FinTree::full(2);
        assert_eq!(t.level(1), vec![node("0"), node("1")]);
        assert!(tree(&["0", "010"]).level(2).is_empty());
        assert_eq!(FinTree::full(3).level(3).len(), 8);
    }

    #[test]
    fn successor_examples() {
        assert_eq!(
            FinTree::full(2).successors(&node("0")).unwrap(),
            vec![node("00"), node("01")]
        );
        let t = meet_closure([node("0"), node("010"), node("0001")]);
        assert_eq!(
            t.successors(&node("0")).unwrap(),
            vec![node("00"), node("01")]
        );
        let t = meet_closure([node("110")]);
        assert_eq!(t.successors(&node("11")).unwrap(), vec![node("110")]);
        assert!(matches!(t.successors(&node("0")), Err(Error::NotInTree(_))));
    }

    #[test]
    fn strong_tree_on_levels_0_2_5() {
        let s = tree(&["-", "00", "10", "00001", "00100", "10010", "10111"]);
        let t = FinTree::full(5);
        assert!(is_strong_subtree(&s, &t, &StrongWitness::new([0, 2, 5])));
        assert!(!is_strong_subtree(&s, &t, &StrongWitness::new([1, 2, 5])));
    }

    #[test]
    fn strong_tree_above_0() {
        let s = tree(&["0", "001", "011", "00100", "00110", "01100", "01111"]);
        assert!(is_strong_subtree(
            &s,
            &FinTree::full(5),
            &StrongWitness::new([1, 3, 5])
        ));
    }

    #[test]
    fn self_and_missing_leaf() {
        for n in 0..4 {
            let t = FinTree::full(n);
            assert!(is_strong_subtree(
                &t,
                &t,
                &StrongWitness::new((0..=n).collect::<Vec<_>>())
            ));
        }
        let s = tree(&["-", "0", "1", "00", "01", "10"]);
        assert!(!is_strong_subtree(
            &s,
            &FinTree::full(2),
            &StrongWitness::new([0, 1, 2])
        ));
    }

    #[test]
    fn leaves_below_last_level_are_rejected() {
        // ⟨⟩ splits into 0 and 1, but 0 is a leaf while 1 continues.
        let s = tree(&["-", "0", "1", "10", "11"]);
        assert!(!is_strong_subtree(
            &s,
            &FinTree::full(2),
            &StrongWitness::new([0, 1, 2])
        ));
    }

    #[test]
    fn restrictions() {
        let t = FinTree::full(3);
        assert_eq!(restrict(&t, 1).unwrap(), tree(&["-"]));
        assert_eq!(restrict(&t, 2).unwrap(), tree(&["-", "0", "1"]));
        assert!(restrict(&t, 0).unwrap().is_empty());
        assert_eq!(restrict(&t, 4).unwrap(), t);
        assert!(matches!(restrict(&t, 5), Err(Error::Exhausted { .. })));
    }

    #[test]
    fn strong_subtree_counts() {
        assert_eq!(enumerate_strong_subtrees(2, 2).len(), 7);
        assert_eq!(enumerate_strong_subtrees(1, 1).len(), 3);
        let all = enumerate_strong_subtrees(2, 3);
        assert_eq!(all, vec![FinTree::full(2)]);
    }

    #[test]
    fn text_format_round_trip() {
        let t = FinTree::full(2)
            .with_coding(vec![node("1"), node("01")])
            .unwrap();
        let text = t.to_text();
        assert_eq!(text, "-\n0\n1*\n00\n01*\n10\n11\n");
        assert_eq!(FinTree::from_text(&text).unwrap(), t);
        let parsed = FinTree::from_text("# comment\n0\n\n010 # trailing\n0001\n").unwrap();
        assert_eq!(parsed, tree(&["0", "010", "0001"]));
        let err = FinTree::from_text("0\n0x1\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(FinTree::from_text("00*\n01*\n0\n").is_err());
    }
}

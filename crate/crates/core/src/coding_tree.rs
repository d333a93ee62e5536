//! The triangle-free coding tree: coding nodes dense in a tree that branches
//! maximally subject to the Triangle-Free Extension Criterion, and its skewed
//! stretch with one critical node per level.
//!
//! Coding node `t_j` has length `j + 1`, so every level from 1 to `2m`
//! carries exactly one coding node.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{graph_from_nodes, has_parallel_ones, Graph};
use crate::node::Node;
use crate::tree::FinTree;

/// A finite prefix `⟨F_i⟩` of a listing of finite sets with `F_i ⊆ i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSequence {
    entries: Vec<BTreeSet<usize>>,
}

/// Inverse of the Cantor pairing `(a, b) ↦ (a + b)(a + b + 1)/2 + b`.
fn unpair(i: usize) -> (usize, usize) {
    let mut w = 0;
    while (w + 1) * (w + 2) / 2 <= i {
        w += 1;
    }
    let b = i - w * (w + 1) / 2;
    (w - b, b)
}

/// The finite set whose binary code is `code`.
fn set_with_code(code: usize) -> BTreeSet<usize> {
    (0..usize::BITS as usize)
        .filter(|k| code >> k & 1 == 1)
        .collect()
}

impl FSequence {
    pub fn new(entries: Vec<BTreeSet<usize>>) -> Result<Self> {
        for (i, f) in entries.iter().enumerate() {
            if let Some(&bad) = f.iter().find(|&&k| k >= i) {
                return Err(Error::Invariant(format!(
                    "F_{i} contains {bad}, but F_i must be a subset of 0..{i}"
                )));
            }
        }
        Ok(FSequence { entries })
    }

    /// The default listing: stage `i` unpairs `i` into `(a, b)` and takes the
    /// set with binary code `a`, cut down to `0..i`. Each finite set has one
    /// code and is revisited for every `b`, so it recurs infinitely often.
    pub fn default_prefix(len: usize) -> Self {
        let entries = (0..len)
            .map(|i| {
                let (a, _) = unpair(i);
                set_with_code(a).into_iter().filter(|&k| k < i).collect()
            })
            .collect();
        FSequence { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&BTreeSet<usize>> {
        self.entries.get(i)
    }
}

/// An enumeration `⟨u_i⟩` of `2^{<ω}` listing all of `2^k` before `2^{k+1}`.
pub trait NodeEnumeration {
    fn node(&self, i: usize) -> Node;
}

/// Length first, then lexicographic: `⟨⟩, 0, 1, 00, 01, …`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ShortLex;

impl NodeEnumeration for ShortLex {
    fn node(&self, i: usize) -> Node {
        let code = i as u64 + 1;
        let len = 63 - code.leading_zeros() as usize;
        Node::from_bits((0..len).rev().map(|k| code >> k & 1 == 1))
    }
}

/// A node at the level of `t_n` may extend right iff it has no parallel 1's
/// with `t_n` at the earlier coding lengths.
pub fn tfec_allows(t: &Node, tn: &Node, coding_lengths: &BTreeSet<usize>) -> bool {
    !has_parallel_ones(t, tn, coding_lengths)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// `t_0 = ⟨1⟩`.
    Root,
    /// `t_{2n+1}`, extending `u_n` with a single edge to `v_{2n}`.
    Odd,
    /// `t_{2n}`, realizing the adjacency pattern `F_n`.
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub index: usize,
    pub kind: StepKind,
    /// The step's condition failed and `t_j = 0^j⌢1` was used.
    pub fallback: bool,
}

/// Output of [`build_s`]: the prefix-closed tree with its coding nodes and a
/// record of how each coding node was chosen.
#[derive(Clone, Debug)]
pub struct CodingTree {
    pub tree: FinTree,
    pub steps: Vec<Step>,
}

impl CodingTree {
    pub fn coding_nodes(&self) -> &[Node] {
        self.tree.coding_nodes()
    }

    pub fn graph(&self) -> Graph {
        graph_from_nodes(self.coding_nodes()).expect("coding nodes have increasing lengths")
    }
}

fn lengths_before(coding: &[Node], n: usize) -> BTreeSet<usize> {
    coding[..n].iter().map(Node::len).collect()
}

/// `t(l_i) = 1` exactly for the indices in `ones`, for all `i < upto`.
fn has_pattern(t: &Node, coding: &[Node], upto: usize, ones: &BTreeSet<usize>) -> bool {
    (0..upto).all(|i| t.bit(coding[i].len()) == ones.contains(&i))
}

/// Builds the first `2m` coding nodes of the triangle-free tree and every
/// node of length at most `2m`.
///
/// Odd steps extend `u_n` to the lexicographically least `t_{2n+1}` whose
/// only edge goes to `v_{2n}`; even steps take the lexicographically least
/// node adjacent to exactly `F_n ∪ {v_{2n-1}}` among earlier vertices. When a
/// step's condition fails, `t_j = 0^j⌢1`.
pub fn build_s(m: usize, fs: &FSequence, order: &dyn NodeEnumeration) -> Result<CodingTree> {
    if m == 0 {
        return Err(Error::Invariant("the construction needs m ≥ 1".into()));
    }
    if fs.len() < m {
        return Err(Error::Invariant(format!(
            "F-sequence has {} entries, {m} needed",
            fs.len()
        )));
    }
    let mut levels: Vec<Vec<Node>> = vec![
        vec![Node::root()],
        vec![Node::from_bits([false]), Node::from_bits([true])],
    ];
    let mut coding = vec![Node::from_bits([true])];
    let mut steps = vec![Step {
        index: 0,
        kind: StepKind::Root,
        fallback: false,
    }];
    for j in 1..2 * m {
        // grow level j into level j + 1 past the coding node t_{j-1}
        let tn = &coding[j - 1];
        let lens = lengths_before(&coding, j - 1);
        let next: Vec<Node> = levels[j]
            .iter()
            .flat_map(|t| {
                let right = t != tn && tfec_allows(t, tn, &lens);
                let mut v = vec![t.child(false)];
                if right {
                    v.push(t.child(true));
                }
                v
            })
            .collect();
        levels.push(next);
        let level = &levels[j + 1];
        let graph = graph_from_nodes(&coding)?;

        let (kind, chosen) = if j % 2 == 1 {
            let n = (j - 1) / 2;
            let u = order.node(n);
            let present = u.len() <= j + 1 && levels[u.len()].contains(&u);
            let ones: BTreeSet<usize> = [2 * n].into();
            let pick = present
                .then(|| {
                    level
                        .iter()
                        .find(|t| u.is_prefix_of(t) && has_pattern(t, &coding, j, &ones))
                })
                .flatten();
            (StepKind::Odd, pick.cloned())
        } else {
            let n = j / 2;
            let mut ones = fs.get(n).cloned().unwrap_or_default();
            ones.insert(j - 1);
            let members: Vec<usize> = ones.iter().copied().collect();
            if graph.is_independent(&members) {
                match level.iter().find(|t| has_pattern(t, &coding, j, &ones)) {
                    Some(t) => (StepKind::Even, Some(t.clone())),
                    None => return Err(Error::Construction {
                        index: j,
                        reason: format!(
                            "no node adjacent to exactly {members:?} although they are independent"
                        ),
                    }),
                }
            } else {
                (StepKind::Even, None)
            }
        };
        let fallback = chosen.is_none();
        let t = match chosen {
            Some(t) => t,
            None => {
                let t = Node::zeros(j).child(true);
                if !level.contains(&t) {
                    return Err(Error::Construction {
                        index: j,
                        reason: format!("fallback node {t} is not in the tree"),
                    });
                }
                t
            }
        };
        coding.push(t);
        steps.push(Step {
            index: j,
            kind,
            fallback,
        });
    }
    let nodes: BTreeSet<Node> = levels.into_iter().flatten().collect();
    let tree = FinTree::from_parts_unchecked(nodes, coding);
    Ok(CodingTree { tree, steps })
}

/// Default construction: shortlex node order and the default F-sequence.
pub fn build_s_default(m: usize) -> Result<CodingTree> {
    build_s(m, &FSequence::default_prefix(m), &ShortLex)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum A3Status {
    /// Coding node `n ≥ i` realizes the pattern `F_i` on the earlier coding
    /// lengths.
    Satisfied(usize),
    /// `F_i` codes an edge, so nothing is demanded.
    Exempt,
    /// Not yet witnessed at this depth.
    Pending,
    /// The even step scheduled for `F_i` succeeded but the pattern is not
    /// realized.
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A3Report {
    pub statuses: Vec<A3Status>,
}

impl A3Report {
    pub fn all_satisfied(&self) -> bool {
        self.statuses
            .iter()
            .all(|s| matches!(s, A3Status::Satisfied(_) | A3Status::Exempt))
    }

    pub fn has_violation(&self) -> bool {
        self.statuses.contains(&A3Status::Violated)
    }
}

/// Scans the density condition for `i < upto`.
pub fn check_a3_prefix(ct: &CodingTree, fs: &FSequence, upto: usize) -> Result<A3Report> {
    let coding = ct.coding_nodes();
    if upto > coding.len() || upto > fs.len() {
        return Err(Error::Invariant(format!(
            "cannot check {upto} indices with {} coding nodes and {} sets",
            coding.len(),
            fs.len()
        )));
    }
    let graph = ct.graph();
    let statuses = (0..upto)
        .map(|i| {
            let f = fs.get(i).expect("checked above");
            let members: Vec<usize> = f.iter().copied().collect();
            if !graph.is_independent(&members) {
                return A3Status::Exempt;
            }
            if let Some(n) = (i..coding.len()).find(|&n| has_pattern(&coding[n], coding, i, f)) {
                return A3Status::Satisfied(n);
            }
            let scheduled = ct
                .steps
                .get(2 * i)
                .is_some_and(|s| s.kind == StepKind::Even && !s.fallback);
            if scheduled {
                A3Status::Violated
            } else {
                A3Status::Pending
            }
        })
        .collect();
    Ok(A3Report { statuses })
}

/// Replays the extension rule: every right extension `u⌢1` at a coding level
/// `l_n` must come from a node other than `t_n` with no parallel 1's with it,
/// every node below the top extends left, and no allowed right extension is
/// missing. Returns a description of the first discrepancy.
pub fn audit_extensions(ct: &CodingTree) -> std::result::Result<(), String> {
    let tree = &ct.tree;
    let coding = ct.coding_nodes();
    let by_len: BTreeMap<usize, usize> = coding
        .iter()
        .enumerate()
        .map(|(i, t)| (t.len(), i))
        .collect();
    for t in tree.nodes() {
        if t.len() >= tree.depth() {
            continue;
        }
        if !tree.contains(&t.child(false)) {
            return Err(format!("{t} does not extend left"));
        }
        let allowed = match by_len.get(&t.len()) {
            Some(&n) => t != &coding[n] && tfec_allows(t, &coding[n], &lengths_before(coding, n)),
            None => true,
        };
        if tree.contains(&t.child(true)) != allowed {
            return Err(format!(
                "{t} {} right against the extension criterion",
                if allowed {
                    "fails to extend"
                } else {
                    "extends"
                }
            ));
        }
    }
    Ok(())
}

/// Skewed copy of a prefix-closed tree with coding nodes, together with the
/// map from the original critical and maximal nodes to their images.
///
/// Each level of `s` becomes one level per splitting node (that node splits,
/// every other branch passes with a 0) followed by one passing level where
/// the coding node of that level sits and every branch copies its original
/// bit. Passing numbers at coding nodes, left/right at splitting nodes and
/// the order of critical nodes are preserved.
pub fn skew_with_map(s: &FinTree) -> Result<(FinTree, BTreeMap<Node, Node>)> {
    if s.is_empty() {
        return Ok((FinTree::empty(), BTreeMap::new()));
    }
    if s.hat() != *s || !s.contains(&Node::root()) {
        return Err(Error::Invariant(
            "skewing needs a tree closed under initial segments".into(),
        ));
    }
    let coding: BTreeSet<&Node> = s.coding_nodes().iter().collect();
    let depth = s.depth();
    let mut image: BTreeMap<Node, Node> = BTreeMap::new();
    let mut entry: BTreeMap<Node, Node> = [(Node::root(), Node::root())].into();
    for l in 0..=depth {
        let level = s.level(l);
        if l == depth {
            for v in &level {
                image.insert(v.clone(), entry[v].clone());
            }
            break;
        }
        enum Branch {
            Whole(Node),
            Split(Node, Node),
        }
        let mut cur: Vec<(Node, Branch)> = level
            .iter()
            .map(|v| (v.clone(), Branch::Whole(entry[v].clone())))
            .collect();
        for idx in 0..cur.len() {
            let v = cur[idx].0.clone();
            if !s.is_splitting(&v) {
                continue;
            }
            if coding.contains(&v) {
                return Err(Error::Invariant(format!("coding node {v} also splits")));
            }
            for (i, (_, b)) in cur.iter_mut().enumerate() {
                *b = match std::mem::replace(b, Branch::Whole(Node::root())) {
                    Branch::Whole(x) if i == idx => {
                        image.insert(v.clone(), x.clone());
                        Branch::Split(x.child(false), x.child(true))
                    }
                    Branch::Whole(x) => Branch::Whole(x.child(false)),
                    Branch::Split(a, b) => Branch::Split(a.child(false), b.child(false)),
                };
            }
        }
        let mut next = BTreeMap::new();
        for (v, b) in cur {
            match b {
                Branch::Whole(x) => {
                    if coding.contains(&v) {
                        image.insert(v.clone(), x.clone());
                    }
                    let kids: Vec<bool> = [false, true]
                        .into_iter()
                        .filter(|&c| s.contains(&v.child(c)))
                        .collect();
                    match kids.as_slice() {
                        [] => {
                            image.insert(v, x);
                        }
                        [c] => {
                            next.insert(v.child(*c), x.child(*c));
                        }
                        _ => unreachable!("splitting nodes were split above"),
                    }
                }
                Branch::Split(a, b) => {
                    next.insert(v.child(false), a.child(false));
                    next.insert(v.child(true), b.child(true));
                }
            }
        }
        entry = next;
    }
    let nodes: BTreeSet<Node> = image.values().cloned().collect();
    let coding_images: Vec<Node> = s.coding_nodes().iter().map(|c| image[c].clone()).collect();
    let tree = FinTree::new(nodes)?.with_coding(coding_images)?;
    Ok((tree, image))
}

pub fn skew(s: &FinTree) -> Result<FinTree> {
    skew_with_map(s).map(|(t, _)| t)
}

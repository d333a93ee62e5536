use std::collections::BTreeSet;

use crate::envelope::find_copies;
use crate::error::{Error, Result};
use crate::node::{full_tree_nodes, Node};
use crate::similarity::{enumerate_diagonal_types, Mode, SimilarityType};
use crate::tree::FinTree;

/// Largest terminal count `devlin_type_count` accepts.
pub const DEVLIN_BOUND: usize = 4;

/// Number of order-only types of strongly diagonal trees with `d` terminal
/// nodes. Values of `d` above `bound` are refused.
pub fn devlin_type_count(d: usize, bound: usize) -> Result<usize> {
    if d == 0 {
        return Err(Error::Invariant("d must be at least 1".into()));
    }
    if d > bound {
        return Err(Error::BudgetExceeded {
            needed: d as u128,
            budget: bound as u128,
        });
    }
    Ok(enumerate_diagonal_types(d, Mode::OrderOnly, |_| true).len())
}

/// What two `d`-tuples (one node from each of `d` copies of `2^{<ω}`) must
/// share to be identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaverNotion {
    /// Everything is identified.
    Trivial,
    /// The weak order of the node lengths.
    RelativeLength,
    /// Relative lengths plus each longer node's bit at each shorter length.
    LengthWithPassing,
    /// The weak order of node lengths together with the lengths of pairwise
    /// meets, reading all coordinates as sequences in one tree.
    MeetInterleaving,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaverCount {
    pub count: usize,
    /// `(d+1)!`, for comparison only.
    pub factorial_bound: usize,
}

/// Ranks of `xs` in their weak order.
fn weak_order(xs: &[usize]) -> Vec<usize> {
    let distinct: BTreeSet<usize> = xs.iter().copied().collect();
    xs.iter().map(|x| distinct.range(..x).count()).collect()
}

fn signature(tuple: &[Node], notion: LaverNotion) -> Vec<usize> {
    let lens: Vec<usize> = tuple.iter().map(Node::len).collect();
    match notion {
        LaverNotion::Trivial => Vec::new(),
        LaverNotion::RelativeLength => weak_order(&lens),
        LaverNotion::LengthWithPassing => {
            let mut sig = weak_order(&lens);
            for a in tuple {
                for b in tuple {
                    if b.len() < a.len() {
                        sig.push(a.bit(b.len()) as usize);
                    }
                }
            }
            sig
        }
        LaverNotion::MeetInterleaving => {
            let mut all = lens;
            for i in 0..tuple.len() {
                for j in i + 1..tuple.len() {
                    all.push(tuple[i].meet(&tuple[j]).len());
                }
            }
            weak_order(&all)
        }
    }
}

/// Counts classes of `d`-tuples from `2^{≤depth}` under `notion`.
pub fn laver_count_at_depth(d: usize, notion: LaverNotion, depth: usize) -> usize {
    let pool = full_tree_nodes(depth);
    let mut seen = BTreeSet::new();
    let mut idx = vec![0usize; d];
    loop {
        let tuple: Vec<Node> = idx.iter().map(|&i| pool[i].clone()).collect();
        seen.insert(signature(&tuple, notion));
        let mut p = d;
        loop {
            if p == 0 {
                return seen.len();
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < pool.len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Census of `d`-tuples across `d` copies of `2^{<ω}` under `notion`,
/// reported next to `(d+1)!`. Tuples are drawn from depth `d + 1`, which
/// realizes every class of every notion above.
pub fn laver_type_count(d: usize, notion: LaverNotion) -> Result<LaverCount> {
    if !(1..=3).contains(&d) {
        return Err(Error::Invariant(format!("d = {d} is outside 1..=3")));
    }
    Ok(LaverCount {
        count: laver_count_at_depth(d, notion, d + 1),
        factorial_bound: (1..=d + 1).product(),
    })
}

/// Whether some subset of `s` realizes `ty`.
pub fn persistence_check(ty: &SimilarityType, s: &FinTree) -> bool {
    !find_copies(ty, s, 1).is_empty()
}

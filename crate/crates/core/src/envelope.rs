//! Strong-tree envelopes of strongly diagonal trees and copies of similarity
//! types inside strong trees.

use crate::error::{Error, Result};
use crate::node::Node;
use crate::similarity::{canonical_type, is_strongly_diagonal, Mode, SimilarityType};
use crate::tree::{is_strong, meet_closure, strong_subtrees_with_levels_filtered, FinTree};

/// Strong subtrees `E` of `2^{≤ambient_depth}` whose levels are exactly the
/// critical levels of `d` and which contain `d`.
pub fn minimal_envelopes(d: &FinTree, ambient_depth: usize) -> Result<Vec<FinTree>> {
    if !is_strongly_diagonal(d) {
        return Err(Error::NotDiagonal);
    }
    if ambient_depth < d.depth() {
        return Err(Error::Invariant(format!(
            "ambient depth {ambient_depth} is below the tree depth {}",
            d.depth()
        )));
    }
    if d.is_empty() {
        return Ok(Vec::new());
    }
    let ambient = FinTree::full(ambient_depth);
    let levels = d.levels();
    // A candidate above the successor `u` is the only envelope node at its
    // level above `u`, so every node of `d` at or beyond that level and above
    // `u` must extend it.
    let allow = |succ: Option<&Node>, cand: &Node| match succ {
        None => d.nodes().iter().all(|x| cand.is_prefix_of(x)),
        Some(u) => d
            .nodes()
            .iter()
            .filter(|x| u.is_prefix_of(x) && x.len() >= cand.len())
            .all(|x| cand.is_prefix_of(x)),
    };
    Ok(
        strong_subtrees_with_levels_filtered(&ambient, &levels, allow)
            .into_iter()
            .filter(|e| d.is_subset(e))
            .collect(),
    )
}

#[allow(clippy::too_many_arguments)]
fn copies_rec(
    pool: &[Node],
    start: usize,
    need: usize,
    chosen: &mut Vec<Node>,
    host: &FinTree,
    ty: &SimilarityType,
    limit: usize,
    out: &mut Vec<FinTree>,
) {
    if out.len() >= limit {
        return;
    }
    if chosen.len() == need {
        let z = meet_closure(chosen.iter().cloned());
        if canonical_type(&z, ty.mode()).is_ok_and(|t| t == *ty) {
            out.push(z);
        }
        return;
    }
    for i in start..pool.len() {
        let t = &pool[i];
        if chosen.last().is_some_and(|p| p.len() >= t.len()) {
            continue;
        }
        if chosen.iter().any(|c| c.is_prefix_of(t)) {
            continue;
        }
        if chosen.iter().any(|c| !host.contains(&c.meet(t))) {
            continue;
        }
        chosen.push(t.clone());
        // closures of sub-antichains sit inside the final closure, and both
        // failure modes of diagonality persist under adding terminals
        if is_strongly_diagonal(&meet_closure(chosen.iter().cloned())) {
            copies_rec(pool, i + 1, need, chosen, host, ty, limit, out);
        }
        chosen.pop();
    }
}

/// Node subsets of `host`, closed under meets, whose canonical type (in the
/// type's own mode) is `ty`. Stops after `limit` copies.
pub fn find_copies(ty: &SimilarityType, host: &FinTree, limit: usize) -> Vec<FinTree> {
    let mut out = Vec::new();
    let m = ty.terminal_count();
    if m == 0 {
        if limit > 0 {
            out.push(FinTree::empty());
        }
        return out;
    }
    let pool: Vec<Node> = host.nodes().iter().cloned().collect();
    copies_rec(&pool, 0, m, &mut Vec::new(), host, ty, limit, &mut out);
    out
}

/// The unique copy of a with-passing diagonal type inside a strong tree whose
/// level count equals the type's number of critical nodes.
///
/// Zero or several copies are reported as a contract violation.
pub fn unique_copy(ty: &SimilarityType, u: &FinTree) -> Result<FinTree> {
    if ty.mode() != Mode::WithPassing {
        return Err(Error::Invariant(
            "unique copies are defined for with-passing types".into(),
        ));
    }
    if !is_strong(u) {
        return Err(Error::Invariant("host tree is not a strong tree".into()));
    }
    let k = u.levels().len();
    if k != ty.critical_count() {
        return Err(Error::Invariant(format!(
            "type has {} critical nodes but the strong tree has {k} levels",
            ty.critical_count()
        )));
    }
    let mut found = find_copies(ty, u, 2);
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(Error::Contract(format!(
            "no copy of type {ty} in the strong tree"
        ))),
        _ => Err(Error::Contract(format!(
            "several copies of type {ty} in the strong tree"
        ))),
    }
}

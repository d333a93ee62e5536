use super::coloring::{product, tree_key, Coloring, Key};
use crate::error::{Error, Result};
use crate::node::Node;
use crate::tree::{is_strong, is_strong_subtree, FinTree, StrongWitness};

/// The coloring induced on level products of cones by a coloring of
/// one-level extensions of `U`.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Immediate successors `s_i` of the maximal nodes of `U`, lexicographic.
    pub successors: Vec<Node>,
    /// `T_i`: nodes of `T` extending `s_i`.
    pub cones: Vec<FinTree>,
    /// `d(⟨u_i⟩) = c(U ∪ {u_i})`, keyed by the tuple `⟨u_i⟩`.
    pub coloring: Coloring,
}

struct Frame {
    successors: Vec<Node>,
    levels: Vec<usize>,
}

fn frame(u: &FinTree, t: &FinTree) -> Result<Frame> {
    if !is_strong(t) || t.is_empty() {
        return Err(Error::Invariant(
            "ambient tree is not a nonempty strong tree".into(),
        ));
    }
    let t_levels = t.levels();
    let u_levels = u.levels();
    if !u.is_empty()
        && (!u_levels.iter().all(|l| t_levels.contains(l))
            || !is_strong_subtree(u, t, &StrongWitness::new(u_levels.clone())))
    {
        return Err(Error::Invariant(
            "U is not a strong subtree of T on levels of T".into(),
        ));
    }
    let successors = if u.is_empty() {
        vec![Node::root()]
    } else {
        let mut v = Vec::new();
        for m in u.level(u.depth()) {
            v.extend(t.successors(&m)?);
        }
        v
    };
    let floor = if u.is_empty() { None } else { Some(u.depth()) };
    let levels: Vec<usize> = t_levels
        .into_iter()
        .filter(|&l| floor.is_none_or(|f| l > f))
        .collect();
    if levels.is_empty() || successors.is_empty() {
        return Err(Error::NoExtensions);
    }
    Ok(Frame { successors, levels })
}

fn tuples(t: &FinTree, f: &Frame) -> Vec<Vec<Node>> {
    let mut out = Vec::new();
    for &l in &f.levels {
        let level = t.level(l);
        let factors: Vec<Vec<Node>> = f
            .successors
            .iter()
            .map(|s| {
                level
                    .iter()
                    .filter(|x| s.is_prefix_of(x))
                    .cloned()
                    .collect()
            })
            .collect();
        let mut keys = Vec::new();
        product(&factors, &mut Vec::new(), &mut keys);
        out.extend(keys.into_iter().map(|k| match k {
            Key::Nodes(ns) => ns,
            Key::Set(_) => unreachable!("products are node tuples"),
        }));
    }
    out
}

fn extend(u: &FinTree, tuple: &[Node]) -> FinTree {
    FinTree::new(u.nodes().iter().chain(tuple).cloned())
        .expect("one-level extensions of a strong subtree are meet-closed")
}

/// `r_{k+1}[U, T]`: strong subtrees of `T` with one more level than `U`
/// whose first levels are `U`, ordered by level and then tuple.
pub fn extensions(u: &FinTree, t: &FinTree) -> Result<Vec<FinTree>> {
    let f = frame(u, t)?;
    Ok(tuples(t, &f).iter().map(|tp| extend(u, tp)).collect())
}

/// Induces `d(⟨u_i⟩) = c(U ∪ {u_i})` on the level products of the cones of
/// `T` above the immediate successors of `U`'s maximal nodes. For empty `U`
/// the single cone is `T` and `d(⟨u⟩) = c({u})`.
pub fn milliken_reduce(u: &FinTree, t: &FinTree, c: &Coloring) -> Result<Reduction> {
    let f = frame(u, t)?;
    let mut table = std::collections::BTreeMap::new();
    for tp in tuples(t, &f) {
        let color = c.color(&tree_key(&extend(u, &tp)))?;
        table.insert(Key::Nodes(tp), color);
    }
    let cones = f
        .successors
        .iter()
        .map(|s| FinTree::new(t.nodes().iter().filter(|x| s.is_prefix_of(x)).cloned()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Reduction {
        successors: f.successors,
        cones,
        coloring: Coloring::new(c.colors(), table)?,
    })
}

use super::coloring::{level_product_domain, product, Coloring};
use crate::error::{Error, Result};
use crate::node::Node;
use crate::tree::{combinations, is_strong, FinTree};

/// Strong subtrees `S_i ⊆ T_i` branching exactly at the level indices
/// `levels`, on whose level products the coloring takes the value `color`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlWitness {
    /// Indices into each tree's level list.
    pub levels: Vec<usize>,
    pub subtrees: Vec<FinTree>,
    pub color: usize,
}

struct Search<'a> {
    trees: &'a [FinTree],
    c: &'a Coloring,
    /// Per tree, the lengths of the chosen levels.
    lengths: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn slots(&self, j: usize, frontiers: &[Vec<Node>]) -> Option<Vec<(usize, Vec<Node>)>> {
        let mut slots = Vec::new();
        for (i, t) in self.trees.iter().enumerate() {
            let level = t.level(self.lengths[i][j]);
            if j == 0 {
                slots.push((i, level));
                continue;
            }
            for s in &frontiers[i] {
                let succ = t.successors(s).ok().filter(|v| !v.is_empty())?;
                for u in succ {
                    let cands: Vec<Node> = level
                        .iter()
                        .filter(|x| u.is_prefix_of(x))
                        .cloned()
                        .collect();
                    if cands.is_empty() {
                        return None;
                    }
                    slots.push((i, cands));
                }
            }
        }
        Some(slots)
    }

    fn constant_on(&self, rows: &[Vec<Node>], color: Option<usize>) -> Result<Option<usize>> {
        let mut keys = Vec::new();
        product(rows, &mut Vec::new(), &mut keys);
        let mut want = color;
        for k in &keys {
            let got = self.c.color(k)?;
            match want {
                None => want = Some(got),
                Some(w) if w != got => return Ok(None),
                _ => {}
            }
        }
        Ok(want)
    }

    fn run(
        &self,
        j: usize,
        frontiers: Vec<Vec<Node>>,
        acc: &mut Vec<Vec<Node>>,
        color: Option<usize>,
    ) -> Result<Option<usize>> {
        if j == self.lengths[0].len() {
            return Ok(color);
        }
        let Some(slots) = self.slots(j, &frontiers) else {
            return Ok(None);
        };
        let mut idx = vec![0usize; slots.len()];
        loop {
            let mut rows: Vec<Vec<Node>> = vec![Vec::new(); self.trees.len()];
            for ((i, cands), &p) in slots.iter().zip(&idx) {
                rows[*i].push(cands[p].clone());
            }
            if let Some(col) = self.constant_on(&rows, color)? {
                let marks: Vec<usize> = acc.iter().map(Vec::len).collect();
                for (a, r) in acc.iter_mut().zip(&rows) {
                    a.extend(r.iter().cloned());
                }
                if let Some(found) = self.run(j + 1, rows, acc, Some(col))? {
                    return Ok(Some(found));
                }
                for (a, m) in acc.iter_mut().zip(marks) {
                    a.truncate(m);
                }
            }
            let mut p = slots.len();
            loop {
                if p == 0 {
                    return Ok(None);
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < slots[p].1.len() {
                    break;
                }
                idx[p] = 0;
            }
        }
    }
}

/// Searches for strong subtrees with `target_levels` common levels on which
/// `c` is monochromatic.
///
/// Level sets are tried in lexicographic order; within one, subtrees grow
/// level by level, trees in order, successors lexicographically, candidate
/// nodes in shortlex order. The first witness in that order is returned.
/// `None` means no witness exists in these trees.
pub fn hl_solve(
    trees: &[FinTree],
    c: &Coloring,
    target_levels: usize,
) -> Result<Option<HlWitness>> {
    if trees.is_empty() || target_levels == 0 {
        return Err(Error::Invariant(
            "need at least one tree and one target level".into(),
        ));
    }
    if let Some(i) = trees.iter().position(|t| !is_strong(t) || t.is_empty()) {
        return Err(Error::Invariant(format!(
            "tree {i} is not a nonempty strong tree"
        )));
    }
    let domain = level_product_domain(trees)?;
    c.check_total(&domain)?;
    let all_levels: Vec<Vec<usize>> = trees.iter().map(FinTree::levels).collect();
    for levels in combinations(all_levels[0].len(), target_levels) {
        let search = Search {
            trees,
            c,
            lengths: all_levels
                .iter()
                .map(|l| levels.iter().map(|&n| l[n]).collect())
                .collect(),
        };
        let mut acc = vec![Vec::new(); trees.len()];
        if let Some(color) = search.run(0, vec![Vec::new(); trees.len()], &mut acc, None)? {
            let subtrees = acc
                .into_iter()
                .map(FinTree::new)
                .collect::<Result<Vec<_>>>()?;
            return Ok(Some(HlWitness {
                levels,
                subtrees,
                color,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::node;
    use crate::ramsey_lab::Key;

    #[test]
    fn constant_coloring_takes_first_candidate() {
        let trees = [FinTree::full(2), FinTree::full(2)];
        let c = Coloring::from_fn(level_product_domain(&trees).unwrap(), 2, |_| 1).unwrap();
        let w = hl_solve(&trees, &c, 2).unwrap().unwrap();
        assert_eq!(w.levels, vec![0, 1]);
        assert_eq!(w.color, 1);
        assert_eq!(
            w.subtrees[0],
            FinTree::new([node("-"), node("0"), node("1")]).unwrap()
        );
    }

    #[test]
    fn parity_coloring_single_level() {
        let trees = [FinTree::full(2)];
        let c = Coloring::from_fn(level_product_domain(&trees).unwrap(), 2, |k| match k {
            Key::Nodes(ns) => ns[0].len() % 2,
            Key::Set(_) => 0,
        })
        .unwrap();
        let w = hl_solve(&trees, &c, 1).unwrap().unwrap();
        assert_eq!(w.levels, vec![0]);
        assert_eq!(w.subtrees[0], FinTree::new([node("-")]).unwrap());
        let w = hl_solve(&trees, &c, 3).unwrap();
        assert_eq!(w, None);
    }

    #[test]
    fn rejects_partial_colorings() {
        let trees = [FinTree::full(1)];
        let c = Coloring::from_text("colors 2\n- 0\n").unwrap();
        assert!(hl_solve(&trees, &c, 1).is_err());
    }
}

//! Reference implementations over plain bit strings, written directly from
//! the definitions and sharing no code with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ramsey_trees::ramsey_lab::{
    extensions, hl_solve, level_product_domain, milliken_reduce, tree_key, Coloring, Key,
};
use ramsey_trees::tree::combinations;
use ramsey_trees::{FinTree, Node};

pub type Set = BTreeSet<String>;

pub fn bits(n: &Node) -> String {
    let s = n.to_string();
    if s == "-" {
        String::new()
    } else {
        s
    }
}

pub fn to_node(s: &str) -> Node {
    if s.is_empty() {
        "-".parse().unwrap()
    } else {
        s.parse().unwrap()
    }
}

pub fn set_of(t: &FinTree) -> Set {
    t.nodes().iter().map(bits).collect()
}

pub fn tree_of(s: &Set) -> FinTree {
    FinTree::new(s.iter().map(|x| to_node(x))).unwrap()
}

pub fn meet(a: &str, b: &str) -> String {
    a.chars()
        .zip(b.chars())
        .take_while(|(x, y)| x == y)
        .map(|(x, _)| x)
        .collect()
}

pub fn prefix(a: &str, b: &str) -> bool {
    b.starts_with(a)
}

pub fn bit(s: &str, i: usize) -> char {
    s.as_bytes()[i] as char
}

/// Every string of length `l` extending `x`.
pub fn extensions_at(x: &str, l: usize) -> Vec<String> {
    if x.len() > l {
        return Vec::new();
    }
    let mut out = vec![x.to_string()];
    for _ in x.len()..l {
        out = out
            .into_iter()
            .flat_map(|s| [format!("{s}0"), format!("{s}1")])
            .collect();
    }
    out
}

pub fn all_strings(max: usize) -> Vec<String> {
    (0..=max).flat_map(|l| extensions_at("", l)).collect()
}

pub fn closure(xs: &[String]) -> Set {
    let mut s: Set = xs.iter().cloned().collect();
    loop {
        let v: Vec<String> = s.iter().cloned().collect();
        let mut grew = false;
        for a in &v {
            for b in &v {
                grew |= s.insert(meet(a, b));
            }
        }
        if !grew {
            return s;
        }
    }
}

pub fn is_meet_closed(s: &Set) -> bool {
    s.iter().all(|a| s.iter().all(|b| s.contains(&meet(a, b))))
}

/// Meet closure of its terminals, distinct node lengths, and bit 0 at each
/// splitting level on every longer node not extending the splitting node.
pub fn is_diagonal(s: &Set) -> bool {
    if !is_meet_closed(s) {
        return false;
    }
    let lens: BTreeSet<usize> = s.iter().map(String::len).collect();
    if lens.len() != s.len() {
        return false;
    }
    let terminals: Vec<String> = s
        .iter()
        .filter(|a| !s.iter().any(|b| b != *a && prefix(a, b)))
        .cloned()
        .collect();
    if closure(&terminals) != *s {
        return false;
    }
    for w in s {
        let left = s
            .iter()
            .any(|b| b.len() > w.len() && prefix(w, b) && bit(b, w.len()) == '0');
        let right = s
            .iter()
            .any(|b| b.len() > w.len() && prefix(w, b) && bit(b, w.len()) == '1');
        if left && right {
            for t in s {
                if t.len() > w.len() && !prefix(w, t) && bit(t, w.len()) != '0' {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Whether some bijection satisfies the similarity clauses for all
/// quadruples `s, t, u, v`. With `order_only`, the passing clause is kept
/// only when `s ∧ t` is a proper initial segment of `u`.
pub fn similar(a: &Set, b: &Set, order_only: bool) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let xs: Vec<&String> = a.iter().collect();
    let ys: Vec<&String> = b.iter().collect();
    let n = xs.len();
    let index = |v: &Vec<&String>, s: &str| v.iter().position(|x| x.as_str() == s).unwrap();
    permutations(n).into_iter().any(|f| {
        for s in 0..n {
            for t in 0..n {
                let w = meet(xs[s], xs[t]);
                let fw = meet(ys[f[s]], ys[f[t]]);
                for u in 0..n {
                    for v in 0..n {
                        let w2 = meet(xs[u], xs[v]);
                        let fw2 = meet(ys[f[u]], ys[f[v]]);
                        if prefix(&w, &w2) != prefix(&fw, &fw2) {
                            return false;
                        }
                        if (w.len() < w2.len()) != (fw.len() < fw2.len()) {
                            return false;
                        }
                    }
                    let uu = xs[u];
                    if uu.len() > w.len() && (!order_only || prefix(&w, uu)) {
                        let f_w = ys[f[index(&xs, &w)]];
                        let fu = ys[f[u]];
                        if fu.len() <= f_w.len() || bit(fu, f_w.len()) != bit(uu, w.len()) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    })
}

/// Strong subtrees of `2^{≤depth}` with level set `levels`, built from the
/// definition: one root at the first level, and above each node at one
/// level and each direction exactly one node at the next level.
pub fn strong_subtrees(levels: &[usize]) -> Vec<Set> {
    fn grow(levels: &[usize], j: usize, frontier: Vec<String>, acc: Set, out: &mut Vec<Set>) {
        if j + 1 == levels.len() {
            out.push(acc);
            return;
        }
        let mut choices: Vec<Vec<String>> = Vec::new();
        for x in &frontier {
            for c in ["0", "1"] {
                choices.push(extensions_at(&format!("{x}{c}"), levels[j + 1]));
            }
        }
        let mut picks: Vec<Vec<String>> = vec![Vec::new()];
        for opts in &choices {
            picks = picks
                .into_iter()
                .flat_map(|p| {
                    opts.iter().map(move |o| {
                        let mut q = p.clone();
                        q.push(o.clone());
                        q
                    })
                })
                .collect();
        }
        for p in picks {
            let mut a = acc.clone();
            a.extend(p.iter().cloned());
            grow(levels, j + 1, p, a, out);
        }
    }
    let mut out = Vec::new();
    if levels.is_empty() {
        return out;
    }
    for r in extensions_at("", levels[0]) {
        grow(levels, 0, vec![r.clone()], [r].into(), &mut out);
    }
    out
}

/// Checks the definition directly on a node set inside `2^{≤depth}`.
pub fn is_strong_subtree_of_full(s: &Set, levels: &[usize]) -> bool {
    if levels.is_empty() {
        return s.is_empty();
    }
    if s.iter().any(|x| !levels.contains(&x.len())) {
        return false;
    }
    let at = |l: usize| {
        s.iter()
            .filter(move |x| x.len() == l)
            .cloned()
            .collect::<Vec<_>>()
    };
    if at(levels[0]).len() != 1 {
        return false;
    }
    for j in 0..levels.len() - 1 {
        let below = at(levels[j]);
        let above = at(levels[j + 1]);
        if !above.iter().all(|y| below.iter().any(|x| prefix(x, y))) {
            return false;
        }
        for x in &below {
            for c in ["0", "1"] {
                let xc = format!("{x}{c}");
                if above.iter().filter(|y| prefix(&xc, y)).count() != 1 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn subsets_of(pool: &[String]) -> impl Iterator<Item = Set> + '_ {
    (0u64..1 << pool.len()).map(move |mask| {
        pool.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

pub fn level_sets(depth: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, depth: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for l in start..=depth {
            cur.push(l);
            go(l + 1, depth, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, depth, k, &mut Vec::new(), &mut out);
    out
}

/// Nodes of `s` at length `l`.
pub fn at_level(s: &Set, l: usize) -> Vec<String> {
    s.iter().filter(|x| x.len() == l).cloned().collect()
}

fn tuples(rows: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = vec![Vec::new()];
    for row in rows {
        out = out
            .into_iter()
            .flat_map(|p| {
                row.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// Whether `color` is constant on `⋃_{l ∈ levels} ∏_i subtrees[i](l)`.
pub fn monochromatic(
    subtrees: &[Set],
    levels: &[usize],
    color: &dyn Fn(&[String]) -> usize,
) -> Option<usize> {
    let mut seen = None;
    for &l in levels {
        let rows: Vec<Vec<String>> = subtrees.iter().map(|s| at_level(s, l)).collect();
        for t in tuples(&rows) {
            let c = color(&t);
            match seen {
                None => seen = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    seen
}

/// First level set (lexicographic) carrying a monochromatic choice of strong
/// subtrees of `d` copies of `2^{≤depth}`, by exhaustive search.
pub fn hl_oracle(
    depth: usize,
    d: usize,
    target: usize,
    color: &dyn Fn(&[String]) -> usize,
) -> Option<Vec<usize>> {
    for levels in level_sets(depth, target) {
        let subs = strong_subtrees(&levels);
        let mut idx = vec![0usize; d];
        loop {
            let pick: Vec<Set> = idx.iter().map(|&i| subs[i].clone()).collect();
            if monochromatic(&pick, &levels, color).is_some() {
                return Some(levels);
            }
            let mut p = d;
            loop {
                if p == 0 {
                    break;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < subs.len() {
                    break;
                }
                idx[p] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    None
}

/// One-level extensions of `u` inside `2^{≤depth}`: strong subtrees with one
/// more level whose first levels are exactly `u`.
pub fn extension_oracle(u: &Set, depth: usize) -> BTreeSet<Set> {
    let mut lu: Vec<usize> = u
        .iter()
        .map(String::len)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    lu.sort();
    let k = lu.len();
    level_sets(depth, k + 1)
        .into_iter()
        .filter(|l| l[..k] == lu[..])
        .flat_map(|l| strong_subtrees(&l))
        .filter(|s| {
            let top = s.iter().map(String::len).max().unwrap();
            s.iter().filter(|x| x.len() < top).cloned().collect::<Set>() == *u
        })
        .collect()
}

/// Brute force over every coloring of `[n]^d`.
pub fn arrow_oracle(n: usize, k: usize, d: usize, sigma: usize) -> bool {
    let edges = combinations(n, d);
    let ksets = combinations(n, k);
    let total = sigma.pow(edges.len() as u32);
    (0..total).all(|mut code| {
        let colors: Vec<usize> = (0..edges.len())
            .map(|_| {
                let c = code % sigma;
                code /= sigma;
                c
            })
            .collect();
        ksets.iter().any(|x| {
            let cs: BTreeSet<usize> = edges
                .iter()
                .zip(&colors)
                .filter(|(e, _)| e.iter().all(|v| x.contains(v)))
                .map(|(_, &c)| c)
                .collect();
            cs.len() <= 1
        })
    })
}

pub fn lookup(c: &Coloring) -> impl Fn(&[String]) -> usize + '_ {
    move |t: &[String]| {
        c.color(&Key::Nodes(t.iter().map(|x| to_node(x)).collect()))
            .unwrap()
    }
}

/// Seeded instance `seed` of the solver cross-check: one or two trees of
/// depth at most 3, two colors.
pub fn check_hl(seed: u64) {
    let d = 1 + (seed % 2) as usize;
    let depth = 1 + (seed / 2 % 3) as usize;
    let target = 1 + (seed / 6) as usize % depth.min(3);
    let trees = vec![FinTree::full(depth); d];
    let c = Coloring::seeded(level_product_domain(&trees).unwrap(), 2, seed).unwrap();
    let color = lookup(&c);
    let got = hl_solve(&trees, &c, target).unwrap();
    let want = hl_oracle(depth, d, target, &color);
    match (&got, &want) {
        (None, None) => {}
        (Some(w), Some(levels)) => {
            assert_eq!(&w.levels, levels, "seed {seed}");
            let sets: Vec<Set> = w.subtrees.iter().map(set_of).collect();
            for s in &sets {
                assert!(is_strong_subtree_of_full(s, &w.levels), "seed {seed}");
            }
            assert_eq!(
                monochromatic(&sets, &w.levels, &color),
                Some(w.color),
                "seed {seed}"
            );
        }
        _ => panic!("seed {seed}: solver {got:?} vs oracle {want:?}"),
    }
}

/// Reduction identity and extension census for `U` inside `2^{≤depth}`.
pub fn check_reduction(u: &Set, depth: usize, seed: u64) {
    let t = FinTree::full(depth);
    let ut = if u.is_empty() {
        FinTree::empty()
    } else {
        tree_of(u)
    };
    let oracle = extension_oracle(u, depth);
    let exts = match extensions(&ut, &t) {
        Ok(e) => e,
        Err(_) => {
            assert!(oracle.is_empty());
            return;
        }
    };
    assert_eq!(exts.iter().map(set_of).collect::<BTreeSet<_>>(), oracle);
    let c = Coloring::seeded(exts.iter().map(tree_key), 3, seed).unwrap();
    let r = milliken_reduce(&ut, &t, &c).unwrap();
    let top = u.iter().map(String::len).max();
    let succ: Vec<String> = match top {
        None => vec![String::new()],
        Some(h) => at_level(u, h)
            .iter()
            .flat_map(|x| [format!("{x}0"), format!("{x}1")])
            .collect(),
    };
    assert_eq!(r.successors.iter().map(bits).collect::<Vec<_>>(), succ);
    let mut hit = BTreeSet::new();
    for (key, col) in r.coloring.entries() {
        let Key::Nodes(tuple) = key else {
            panic!("node key expected")
        };
        let tuple: Vec<String> = tuple.iter().map(bits).collect();
        assert_eq!(tuple.len(), succ.len());
        for (x, s) in tuple.iter().zip(&succ) {
            assert!(prefix(s, x));
        }
        let mut whole = u.clone();
        whole.extend(tuple.iter().cloned());
        assert!(oracle.contains(&whole));
        let node_key = Key::Nodes(
            whole
                .iter()
                .map(|x| to_node(x))
                .collect::<BTreeSet<Node>>()
                .into_iter()
                .collect(),
        );
        assert_eq!(col, c.color(&node_key).unwrap());
        hit.insert(whole);
    }
    assert_eq!(hit, oracle);
}

/// Closures of antichains of up to `m` nodes of `2^{≤depth}`.
pub fn antichain_closures(depth: usize, m: usize) -> Vec<Set> {
    let pool = all_strings(depth);
    let mut out = Vec::new();
    fn go(pool: &[String], start: usize, m: usize, cur: &mut Vec<String>, out: &mut Vec<Set>) {
        if !cur.is_empty() {
            out.push(closure(cur));
        }
        if cur.len() == m {
            return;
        }
        for i in start..pool.len() {
            if cur
                .iter()
                .any(|c| prefix(c, &pool[i]) || prefix(&pool[i], c))
            {
                continue;
            }
            cur.push(pool[i].clone());
            go(pool, i + 1, m, cur, out);
            cur.pop();
        }
    }
    go(&pool, 0, m, &mut Vec::new(), &mut out);
    out
}

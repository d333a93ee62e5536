//! Passing numbers, strongly diagonal trees and strong similarity types.
//!
//! A strongly diagonal tree has one critical node (splitting or terminal) per
//! occupied level. Reading those nodes by increasing length gives a sequence
//! of events on the lexicographically ordered list of live branches; together
//! with the passing numbers of the other live branches at each event this
//! sequence is a complete invariant for strong similarity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::node::Node;
use crate::tree::{meet_closure, FinTree};

/// `t(|s|)`, defined when `t` is longer than `s`.
pub fn passing_number(t: &Node, s: &Node) -> Result<bool> {
    if t.len() <= s.len() {
        return Err(Error::PassingUndefined {
            long: t.clone(),
            short: s.clone(),
        });
    }
    Ok(t.bit(s.len()))
}

/// Which clauses of strong similarity are enforced.
///
/// `WithPassing` is the full notion: initial segments, relative lengths and
/// all passing numbers are preserved. `OrderOnly` forgets passing numbers
/// except those of a node at its own splitting predecessors, so left and
/// right are still told apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    WithPassing,
    OrderOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EventKind {
    Split,
    Terminal,
}

/// One critical level: what happens, on which live branch (counted from the
/// left), and the passing bits of the other live branches at that level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub kind: EventKind,
    pub position: usize,
    pub column: Vec<bool>,
}

/// Canonical strong similarity type of a strongly diagonal tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimilarityType {
    mode: Mode,
    events: Vec<Event>,
}

/// First node of `z` at or above `prefix` (the next node on that branch).
fn next_on_branch(z: &FinTree, prefix: &Node) -> Option<Node> {
    z.nodes()
        .range(prefix.clone()..)
        .find(|u| prefix.is_prefix_of(u))
        .cloned()
}

pub fn is_strongly_diagonal(z: &FinTree) -> bool {
    let terminals = z.maximal_nodes();
    if meet_closure(terminals.iter().cloned()).nodes() != z.nodes() {
        return false;
    }
    // Every node is a meet of terminals, hence terminal or splitting, so one
    // critical node per level means distinct lengths throughout.
    let levels = z.levels();
    if levels.len() != z.len() {
        return false;
    }
    for s in z.splitting_nodes() {
        let l = s.len();
        if z.nodes()
            .iter()
            .any(|u| u.len() > l && !s.is_prefix_of(u) && u.bit(l))
        {
            return false;
        }
    }
    true
}

fn meet_table(nodes: &[Node]) -> Vec<Vec<Node>> {
    nodes
        .iter()
        .map(|a| nodes.iter().map(|b| a.meet(b)).collect())
        .collect()
}

/// Checks the clauses of strong similarity for `f : S → T` literally, over all
/// quadruples of nodes.
pub fn is_similarity(f: &BTreeMap<Node, Node>, s: &FinTree, t: &FinTree, mode: Mode) -> bool {
    if f.len() != s.len() || s.len() != t.len() {
        return false;
    }
    let dom: Vec<Node> = s.nodes().iter().cloned().collect();
    let mut img = Vec::with_capacity(dom.len());
    for x in &dom {
        match f.get(x) {
            Some(y) if t.contains(y) => img.push(y.clone()),
            _ => return false,
        }
    }
    let mut seen = img.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != img.len() {
        return false;
    }
    let ms = meet_table(&dom);
    let mt = meet_table(&img);
    let n = dom.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (x, y) = (&ms[a][b], &ms[c][d]);
                    let (fx, fy) = (&mt[a][b], &mt[c][d]);
                    if x.is_prefix_of(y) != fx.is_prefix_of(fy) {
                        return false;
                    }
                    if (x.len() < y.len()) != (fx.len() < fy.len()) {
                        return false;
                    }
                }
            }
        }
    }
    let index: BTreeMap<&Node, usize> = dom.iter().enumerate().map(|(i, x)| (x, i)).collect();
    for w in 0..n {
        for u in 0..n {
            let (wn, un) = (&dom[w], &dom[u]);
            if un.len() <= wn.len() {
                continue;
            }
            if mode == Mode::OrderOnly && !wn.is_prefix_of(un) {
                continue;
            }
            let (fw, fu) = (&img[index[wn]], &img[u]);
            if fu.len() <= fw.len() || fu.bit(fw.len()) != un.bit(wn.len()) {
                return false;
            }
        }
    }
    true
}

/// Computes the canonical type by sweeping the critical nodes in order of
/// length over the lexicographically ordered list of live branches.
pub fn canonical_type(z: &FinTree, mode: Mode) -> Result<SimilarityType> {
    if !is_strongly_diagonal(z) {
        return Err(Error::NotDiagonal);
    }
    let mut events = Vec::new();
    let Some(root) = z.nodes().iter().next() else {
        return Ok(SimilarityType { mode, events });
    };
    // live branches, identified by the next critical node on each
    let mut alive = vec![root.clone()];
    for c in z.nodes() {
        let p = alive
            .iter()
            .position(|a| a == c)
            .expect("diagonal tree visits critical nodes branch by branch");
        let column = match mode {
            Mode::WithPassing => alive
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, u)| u.bit(c.len()))
                .collect(),
            Mode::OrderOnly => Vec::new(),
        };
        if z.is_splitting(c) {
            let left =
                next_on_branch(z, &c.child(false)).expect("splitting node has a left extension");
            let right =
                next_on_branch(z, &c.child(true)).expect("splitting node has a right extension");
            alive.splice(p..=p, [left, right]);
            events.push(Event {
                kind: EventKind::Split,
                position: p,
                column,
            });
        } else {
            alive.remove(p);
            events.push(Event {
                kind: EventKind::Terminal,
                position: p,
                column,
            });
        }
    }
    Ok(SimilarityType { mode, events })
}

impl SimilarityType {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn critical_count(&self) -> usize {
        self.events.len()
    }

    pub fn terminal_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| e.kind == EventKind::Terminal)
            .count()
    }

    /// Drops the passing columns.
    pub fn to_order_only(&self) -> SimilarityType {
        SimilarityType {
            mode: Mode::OrderOnly,
            events: self
                .events
                .iter()
                .map(|e| Event {
                    kind: e.kind,
                    position: e.position,
                    column: Vec::new(),
                })
                .collect(),
        }
    }

    /// Builds a checked type from raw events.
    pub fn from_events(mode: Mode, events: Vec<Event>) -> Result<Self> {
        let mut alive = 1usize;
        let n = events.len();
        for (i, e) in events.iter().enumerate() {
            if e.position >= alive {
                return Err(Error::Invariant(format!(
                    "event {i} refers to branch {} of {alive}",
                    e.position
                )));
            }
            let want = match mode {
                Mode::WithPassing => alive - 1,
                Mode::OrderOnly => 0,
            };
            if e.column.len() != want {
                return Err(Error::Invariant(format!(
                    "event {i} has a passing column of the wrong size"
                )));
            }
            match e.kind {
                EventKind::Split => {
                    if e.column.iter().any(|&b| b) {
                        return Err(Error::Invariant(format!(
                            "event {i}: branches passing a splitting level must have passing number 0"
                        )));
                    }
                    alive += 1;
                }
                EventKind::Terminal => {
                    alive -= 1;
                    if alive == 0 && i + 1 != n {
                        return Err(Error::Invariant(
                            "events continue after the last branch ends".into(),
                        ));
                    }
                }
            }
        }
        if n > 0 && alive != 0 {
            return Err(Error::Invariant(
                "every branch must end in a terminal node".into(),
            ));
        }
        Ok(SimilarityType { mode, events })
    }

    /// A concrete strongly diagonal tree of this type, with its critical
    /// nodes on levels `0, 1, …`. In `OrderOnly` mode passing bits at
    /// terminal levels are taken to be 0.
    pub fn witness(&self) -> FinTree {
        let mut branches = vec![Node::root()];
        let mut nodes = Vec::with_capacity(self.events.len());
        for e in &self.events {
            let c = branches[e.position].clone();
            let mut bits = e.column.iter().copied().chain(std::iter::repeat(false));
            let mut next = Vec::with_capacity(branches.len() + 1);
            for (i, b) in branches.iter().enumerate() {
                if i == e.position {
                    if e.kind == EventKind::Split {
                        next.push(b.child(false));
                        next.push(b.child(true));
                    }
                } else {
                    next.push(b.child(bits.next().unwrap()));
                }
            }
            nodes.push(c);
            branches = next;
        }
        FinTree::new(nodes).expect("realized type is meet-closed")
    }

    /// Terminal nodes of [`Self::witness`] in order of length.
    pub fn witness_terminals(&self) -> Vec<Node> {
        let w = self.witness();
        let mut t = w.maximal_nodes();
        t.sort();
        t
    }
}

/// One line per critical level, `S:<branch>` or `T:<branch>`, followed in
/// with-passing mode by `:` and the passing column; lines joined by `/`.
impl fmt::Display for SimilarityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.events.is_empty() {
            return f.write_str("empty");
        }
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            let k = match e.kind {
                EventKind::Split => 'S',
                EventKind::Terminal => 'T',
            };
            write!(f, "{k}:{}", e.position)?;
            if self.mode == Mode::WithPassing {
                f.write_str(":")?;
                for &b in &e.column {
                    f.write_str(if b { "1" } else { "0" })?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for SimilarityType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "empty" {
            return Ok(SimilarityType {
                mode: Mode::WithPassing,
                events: Vec::new(),
            });
        }
        let mut mode = None;
        let mut events = Vec::new();
        for part in s.split('/') {
            let fields: Vec<&str> = part.split(':').collect();
            let this_mode = match fields.len() {
                2 => Mode::OrderOnly,
                3 => Mode::WithPassing,
                _ => return Err(ParseError::new(0, format!("malformed event {part:?}")).into()),
            };
            if *mode.get_or_insert(this_mode) != this_mode {
                return Err(ParseError::new(0, "mixed type modes").into());
            }
            let kind = match fields[0] {
                "S" => EventKind::Split,
                "T" => EventKind::Terminal,
                other => {
                    return Err(ParseError::new(0, format!("unknown event kind {other:?}")).into())
                }
            };
            let position = fields[1]
                .parse()
                .map_err(|_| ParseError::new(0, format!("bad branch index {:?}", fields[1])))?;
            let column = match fields.get(2) {
                Some(bits) => bits
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(ParseError::new(0, format!("bad passing column {bits:?}"))),
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?,
                None => Vec::new(),
            };
            events.push(Event {
                kind,
                position,
                column,
            });
        }
        SimilarityType::from_events(mode.unwrap_or(Mode::WithPassing), events)
    }
}

fn enumerate_rec<F: Fn(&SimilarityType) -> bool>(
    mode: Mode,
    splits_left: usize,
    terminals_left: usize,
    alive: usize,
    events: &mut Vec<Event>,
    filter: &F,
    out: &mut Vec<SimilarityType>,
) {
    if terminals_left == 0 {
        let ty = SimilarityType {
            mode,
            events: events.clone(),
        };
        if filter(&ty) {
            out.push(ty);
        }
        return;
    }
    let width = match mode {
        Mode::WithPassing => alive - 1,
        Mode::OrderOnly => 0,
    };
    if splits_left > 0 {
        for p in 0..alive {
            events.push(Event {
                kind: EventKind::Split,
                position: p,
                column: vec![false; width],
            });
            enumerate_rec(
                mode,
                splits_left - 1,
                terminals_left,
                alive + 1,
                events,
                filter,
                out,
            );
            events.pop();
        }
    }
    // a terminal may only close the last live branch at the very end
    if alive > 1 || splits_left == 0 {
        for p in 0..alive {
            for mask in 0u64..1 << width {
                let column = (0..width)
                    .map(|i| mask >> (width - 1 - i) & 1 == 1)
                    .collect();
                events.push(Event {
                    kind: EventKind::Terminal,
                    position: p,
                    column,
                });
                enumerate_rec(
                    mode,
                    splits_left,
                    terminals_left - 1,
                    alive - 1,
                    events,
                    filter,
                    out,
                );
                events.pop();
            }
        }
    }
}

/// All similarity types of strongly diagonal trees with `m` terminal nodes
/// that pass `filter`, sorted and duplicate-free. Each type's
/// [`SimilarityType::witness`] lies inside `2^{≤2m}`.
pub fn enumerate_diagonal_types<F>(m: usize, mode: Mode, filter: F) -> Vec<SimilarityType>
where
    F: Fn(&SimilarityType) -> bool,
{
    let mut out = Vec::new();
    if m == 0 {
        let empty = SimilarityType {
            mode,
            events: Vec::new(),
        };
        if filter(&empty) {
            out.push(empty);
        }
        return out;
    }
    enumerate_rec(mode, m - 1, m, 1, &mut Vec::new(), &filter, &mut out);
    out.sort();
    out
}

/// `s <_Q t`: lexicographic on incomparable nodes; along a branch the longer
/// node sits above the shorter one exactly when its passing bit there is 1.
pub fn devlin_less(s: &Node, t: &Node) -> Result<bool> {
    if s == t {
        return Err(Error::SameNode(s.clone()));
    }
    Ok(if s.is_proper_prefix_of(t) {
        t.bit(s.len())
    } else if t.is_proper_prefix_of(s) {
        !s.bit(t.len())
    } else {
        s.lex_cmp(t).is_lt()
    })
}

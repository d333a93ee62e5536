use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, ParseError, Result};
use crate::node::Node;
use crate::tree::{combinations, FinTree};

/// An object being colored: a tuple or set of nodes, or a set of integers.
///
/// Node keys print as comma-separated nodes (`-` for the root); integer sets
/// print in braces, e.g. `{0,2}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key {
    Nodes(Vec<Node>),
    Set(Vec<usize>),
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Nodes(ns) => {
                let parts: Vec<String> = ns.iter().map(Node::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
            Key::Set(xs) => {
                let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

impl FromStr for Key {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            if inner.is_empty() {
                return Ok(Key::Set(Vec::new()));
            }
            let xs = inner
                .split(',')
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| ParseError::new(0, format!("bad set member {p:?}")))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            return Ok(Key::Set(xs));
        }
        if s.is_empty() {
            return Err(ParseError::new(0, "empty key"));
        }
        let ns = s
            .split(',')
            .map(|p| p.parse::<Node>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Key::Nodes(ns))
    }
}

/// The key of a tree: its nodes in shortlex order.
pub fn tree_key(t: &FinTree) -> Key {
    Key::Nodes(t.nodes().iter().cloned().collect())
}

/// A total map from a finite domain of keys to `0..colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: usize,
    table: BTreeMap<Key, usize>,
    seed: Option<u64>,
}

impl Coloring {
    pub fn new(colors: usize, table: BTreeMap<Key, usize>) -> Result<Self> {
        if colors == 0 {
            return Err(Error::Invariant(
                "a coloring needs at least one color".into(),
            ));
        }
        if let Some((k, &c)) = table.iter().find(|(_, &c)| c >= colors) {
            return Err(Error::Invariant(format!(
                "color {c} of {k} is outside 0..{colors}"
            )));
        }
        Ok(Coloring {
            colors,
            table,
            seed: None,
        })
    }

    pub fn from_fn<I, F>(domain: I, colors: usize, f: F) -> Result<Self>
    where
        I: IntoIterator<Item = Key>,
        F: Fn(&Key) -> usize,
    {
        Coloring::new(
            colors,
            domain
                .into_iter()
                .map(|k| {
                    let c = f(&k);
                    (k, c)
                })
                .collect(),
        )
    }

    /// Colors drawn from a ChaCha8 stream seeded with `seed`, one draw per key
    /// in sorted key order.
    pub fn seeded<I: IntoIterator<Item = Key>>(
        domain: I,
        colors: usize,
        seed: u64,
    ) -> Result<Self> {
        if colors == 0 {
            return Err(Error::Invariant(
                "a coloring needs at least one color".into(),
            ));
        }
        let mut keys: Vec<Key> = domain.into_iter().collect();
        keys.sort();
        keys.dedup();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = keys
            .into_iter()
            .map(|k| (k, rng.gen_range(0..colors)))
            .collect();
        Ok(Coloring {
            colors,
            table,
            seed: Some(seed),
        })
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Key, usize)> {
        self.table.iter().map(|(k, &c)| (k, c))
    }

    pub fn get(&self, key: &Key) -> Option<usize> {
        self.table.get(key).copied()
    }

    pub fn color(&self, key: &Key) -> Result<usize> {
        self.get(key)
            .ok_or_else(|| Error::Invariant(format!("coloring is not total: no color for {key}")))
    }

    /// Fails on the first domain key without a color.
    pub fn check_total<'a, I: IntoIterator<Item = &'a Key>>(&self, domain: I) -> Result<()> {
        for k in domain {
            self.color(k)?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(s) = self.seed {
            out.push_str(&format!("# seed {s}\n"));
        }
        out.push_str(&format!("colors {}\n", self.colors));
        for (k, c) in &self.table {
            out.push_str(&format!("{k} {c}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut colors = None;
        let mut table = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if colors.is_none() {
                match fields.as_slice() {
                    ["colors", n] => {
                        colors = Some(n.parse::<usize>().map_err(|_| {
                            ParseError::new(lineno, format!("bad color count {n:?}"))
                        })?)
                    }
                    _ => return Err(ParseError::new(lineno, "expected header \"colors N\"").into()),
                }
                continue;
            }
            let [key, c] = fields.as_slice() else {
                return Err(ParseError::new(lineno, "expected \"key color\"").into());
            };
            let key: Key = key.parse().map_err(|e: ParseError| e.at(lineno))?;
            let c: usize = c
                .parse()
                .map_err(|_| ParseError::new(lineno, format!("bad color {c:?}")))?;
            if table.insert(key.clone(), c).is_some() {
                return Err(ParseError::new(lineno, format!("duplicate key {key}")).into());
            }
        }
        let colors = colors.ok_or_else(|| ParseError::new(0, "missing header \"colors N\""))?;
        Coloring::new(colors, table)
    }
}

/// Level products `⋃_n ∏_i T_i(n)` of trees with equally many levels, the
/// `n`-th level of each tree taken in its own level list.
pub fn level_product_domain(trees: &[FinTree]) -> Result<Vec<Key>> {
    let levels: Vec<Vec<usize>> = trees.iter().map(FinTree::levels).collect();
    let h = levels.first().map_or(0, Vec::len);
    if levels.iter().any(|l| l.len() != h) {
        return Err(Error::Invariant(
            "trees have different numbers of levels".into(),
        ));
    }
    let mut out = Vec::new();
    for n in 0..h {
        let factors: Vec<Vec<Node>> = trees
            .iter()
            .zip(&levels)
            .map(|(t, l)| t.level(l[n]))
            .collect();
        product(&factors, &mut Vec::new(), &mut out);
    }
    Ok(out)
}

pub(crate) fn product(factors: &[Vec<Node>], cur: &mut Vec<Node>, out: &mut Vec<Key>) {
    if cur.len() == factors.len() {
        out.push(Key::Nodes(cur.clone()));
        return;
    }
    for x in &factors[cur.len()] {
        cur.push(x.clone());
        product(factors, cur, out);
        cur.pop();
    }
}

/// `[n]^d` in lexicographic order.
pub fn subset_domain(n: usize, d: usize) -> Vec<Key> {
    combinations(n, d).into_iter().map(Key::Set).collect()
}

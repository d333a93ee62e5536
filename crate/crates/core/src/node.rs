//! Finite binary sequences, the nodes of `2^{<ω}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

const WORD: usize = 64;

/// A finite sequence of bits.
///
/// Bits are packed most-significant first so that comparing the word vectors
/// compares the sequences lexicographically. Unused trailing bits are always
/// zero.
///
/// The derived `Ord` is *shortlex*: shorter nodes first, then lexicographic.
/// This is the order used for level-by-level listings and the tree text
/// format. Use [`Node::lex_cmp`] for the plain lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Node {
    len: usize,
    words: Vec<u64>,
}

impl Node {
    /// The empty sequence `⟨⟩`.
    pub fn root() -> Self {
        Node::default()
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut n = Node::root();
        for b in bits {
            n.push(b);
        }
        n
    }

    /// `0^len`.
    pub fn zeros(len: usize) -> Self {
        Node {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    // the empty node is `is_root`
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_root(&self) -> bool {
        self.len == 0
    }

    /// `t(i)`. Panics when `i >= len`.
    pub fn bit(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for node of length {}",
            self.len
        );
        self.words[i / WORD] >> (WORD - 1 - i % WORD) & 1 == 1
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        (i < self.len).then(|| self.bit(i))
    }

    pub fn push(&mut self, b: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        if b {
            let i = self.len;
            self.words[i / WORD] |= 1 << (WORD - 1 - i % WORD);
        }
        self.len += 1;
    }

    /// `self⌢b`.
    pub fn child(&self, b: bool) -> Node {
        let mut c = self.clone();
        c.push(b);
        c
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.bit(i))
    }

    /// The initial segment of length `l` (`self` itself if `l >= len`).
    pub fn prefix(&self, l: usize) -> Node {
        if l >= self.len {
            return self.clone();
        }
        let mut words = self.words[..l.div_ceil(WORD)].to_vec();
        let rem = l % WORD;
        if rem != 0 {
            let last = words.len() - 1;
            words[last] &= !(u64::MAX >> rem);
        }
        Node { len: l, words }
    }

    /// `self ⊆ other`.
    pub fn is_prefix_of(&self, other: &Node) -> bool {
        self.len <= other.len && self.common_prefix_len(other) == self.len
    }

    /// `self ⊂ other`.
    pub fn is_proper_prefix_of(&self, other: &Node) -> bool {
        self.len < other.len && self.is_prefix_of(other)
    }

    pub fn comparable(&self, other: &Node) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    fn common_prefix_len(&self, other: &Node) -> usize {
        let max = self.len.min(other.len);
        for (i, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let x = a ^ b;
            if x != 0 {
                return (i * WORD + x.leading_zeros() as usize).min(max);
            }
        }
        max
    }

    /// The longest common initial segment `s ∧ t`.
    pub fn meet(&self, other: &Node) -> Node {
        self.prefix(self.common_prefix_len(other))
    }

    /// Lexicographic order: a proper prefix precedes its extensions, otherwise
    /// the first differing bit decides.
    pub fn lex_cmp(&self, other: &Node) -> Ordering {
        self.words.cmp(&other.words).then(self.len.cmp(&other.len))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.cmp(&other.words))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The root prints as `-`, every other node as its bit string.
impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_root() {
            return f.write_str("-");
        }
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Node({self})")
    }
}

impl FromStr for Node {
    type Err = ParseError;

    /// Accepts a bit string, or `-` (or the empty string) for the root.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" {
            return Ok(Node::root());
        }
        let mut n = Node::root();
        for c in s.chars() {
            match c {
                '0' => n.push(false),
                '1' => n.push(true),
                _ => return Err(ParseError::new(0, format!("invalid node {s:?}"))),
            }
        }
        Ok(n)
    }
}

/// Shorthand for tests and examples; panics on malformed input.
pub fn node(s: &str) -> Node {
    s.parse().expect("malformed node literal")
}

/// All nodes of `2^l`, lexicographically.
pub fn level_nodes(l: usize) -> Vec<Node> {
    assert!(l < 63, "level {l} too large to enumerate");
    (0u64..1 << l)
        .map(|x| Node::from_bits((0..l).rev().map(|i| x >> i & 1 == 1)))
        .collect()
}

/// All nodes of `2^{≤n}` in shortlex order.
pub fn full_tree_nodes(n: usize) -> Vec<Node> {
    (0..=n).flat_map(level_nodes).collect()
}

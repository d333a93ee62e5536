use std::collections::BTreeMap;

use super::coloring::{Coloring, Key};
use crate::error::{Error, Result};
use crate::tree::combinations;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowVerdict {
    /// `n → (k)^d_σ`.
    pub holds: bool,
    /// A coloring of `[n]^d` with no homogeneous `k`-set, when one exists.
    pub counterexample: Option<Coloring>,
}

fn binomial(n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    (0..d).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Decides `n → (k)^d_σ` by backtracking over all σ-colorings of `[n]^d`,
/// refusing when `σ^C(n,d)` exceeds `budget`.
pub fn arrow_check(
    n: usize,
    k: usize,
    d: usize,
    sigma: usize,
    budget: u128,
) -> Result<ArrowVerdict> {
    if sigma == 0 {
        return Err(Error::Invariant("at least one color is needed".into()));
    }
    if k > n {
        return Ok(ArrowVerdict {
            holds: false,
            counterexample: None,
        });
    }
    if k < d {
        // no d-subsets inside a k-set, so any k-set is homogeneous
        return Ok(ArrowVerdict {
            holds: true,
            counterexample: None,
        });
    }
    let edges = binomial(n, d);
    let needed = u32::try_from(edges)
        .ok()
        .and_then(|e| (sigma as u128).checked_pow(e))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    let subsets = combinations(n, d);
    let index: BTreeMap<&[usize], usize> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    // each k-set is tested once its last d-subset receives a color
    let mut closing: Vec<Vec<Vec<usize>>> = vec![Vec::new(); subsets.len()];
    for x in combinations(n, k) {
        let members: Vec<usize> = combinations(k, d)
            .iter()
            .map(|c| index[c.iter().map(|&i| x[i]).collect::<Vec<_>>().as_slice()])
            .collect();
        let last = *members
            .iter()
            .max()
            .expect("k ≥ d so the k-set has d-subsets");
        closing[last].push(members);
    }

    fn search(
        i: usize,
        sigma: usize,
        closing: &[Vec<Vec<usize>>],
        colors: &mut Vec<usize>,
    ) -> bool {
        if i == closing.len() {
            return true;
        }
        for c in 0..sigma {
            colors.push(c);
            let homogeneous = closing[i].iter().any(|m| m.iter().all(|&e| colors[e] == c));
            if !homogeneous && search(i + 1, sigma, closing, colors) {
                return true;
            }
            colors.pop();
        }
        false
    }

    let mut colors = Vec::with_capacity(subsets.len());
    if search(0, sigma, &closing, &mut colors) {
        let table = subsets.into_iter().map(Key::Set).zip(colors).collect();
        Ok(ArrowVerdict {
            holds: false,
            counterexample: Some(Coloring::new(sigma, table)?),
        })
    } else {
        Ok(ArrowVerdict {
            holds: true,
            counterexample: None,
        })
    }
}

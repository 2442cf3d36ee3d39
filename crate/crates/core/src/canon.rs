//! Isomorphism-class keys for small graphs.
//!
//! The canonical code of a graph is the graph6 string of the relabeling that
//! maximizes the graph6 adjacency bit sequence. The maximum is found by a
//! depth-first search over all vertex orderings that prunes any prefix
//! already lexicographically below the best one seen, so the result is the
//! same as exhaustive minimization but most orderings are never completed.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{graph6_from_bits, Graph};

/// Default ceiling on graph order for canonical coding.
pub const DEFAULT_MAX_ORDER: usize = 9;

/// Permutation-invariant fingerprint of a graph with at most
/// [`DEFAULT_MAX_ORDER`] vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    /// Vertex count encoded in the header byte.
    pub fn order(&self) -> usize {
        (self.0.as_bytes()[0] - 63) as usize
    }

    /// The canonical representative graph.
    pub fn graph(&self) -> Graph {
        crate::graph::parse_graph6(&self.0).expect("canonical codes are valid graph6")
    }

    /// Wraps a string that is already a canonical code (e.g. read from a
    /// golden file). Fails when it is not the canonical form of its graph.
    pub fn parse(text: &str) -> Result<Self> {
        let g = crate::graph::parse_graph6(text)?;
        let code = canonical_code(&g)?;
        if code.0 != text {
            return Err(Error::Graph6 {
                offset: 0,
                message: format!("`{text}` is not in canonical form"),
            });
        }
        Ok(code)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({:?})", self.0)
    }
}

/// Canonical code with the default order limit.
pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    canonical_code_with_limit(g, DEFAULT_MAX_ORDER)
}

pub fn canonical_code_with_limit(g: &Graph, max_order: usize) -> Result<CanonicalCode> {
    if g.order() > max_order {
        return Err(Error::OrderTooLarge {
            order: g.order(),
            limit: max_order,
        });
    }
    Ok(code_of_adjacency(g.adjacency()))
}

/// Canonical code of an adjacency list without the order check. Callers
/// must keep the order small; the search is exponential in the worst case.
pub(crate) fn code_of_adjacency(adj: &[u64]) -> CanonicalCode {
    let n = adj.len();
    let mut search = Search {
        adj,
        n,
        best: vec![-1; n],
        perm: Vec::with_capacity(n),
    };
    search.descend(0);
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        let col = search.best[j] as u64;
        for i in 0..j {
            bits.push(col >> (j - 1 - i) & 1 == 1);
        }
    }
    CanonicalCode(graph6_from_bits(n, &bits))
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    /// Best column values so far; column `j` packs the bits for rows `0..j`
    /// with row 0 most significant. `-1` marks columns not yet reached.
    best: Vec<i64>,
    perm: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, depth: usize) {
        if depth == self.n {
            return;
        }
        let used: u64 = self.perm.iter().fold(0, |m, &v| m | 1 << v);
        for v in 0..self.n {
            if used >> v & 1 == 1 {
                continue;
            }
            let mut col = 0i64;
            for &u in &self.perm {
                col = col << 1 | (self.adj[u] >> v & 1) as i64;
            }
            if col < self.best[depth] {
                continue;
            }
            if col > self.best[depth] {
                self.best[depth] = col;
                for later in &mut self.best[depth + 1..] {
                    *later = -1;
                }
            }
            self.perm.push(v);
            self.descend(depth + 1);
            self.perm.pop();
        }
    }
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// in canonical form, sorted by canonical code.
///
/// Classes on `n` vertices are generated from classes on `n - 1` vertices
/// by attaching a new vertex to every possible neighbourhood.
pub fn isomorphism_classes(n: usize) -> Result<Vec<(CanonicalCode, Graph)>> {
    if n > DEFAULT_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            limit: DEFAULT_MAX_ORDER,
        });
    }
    let mut level: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
    level.insert(code_of_adjacency(&[]), Graph::empty(0));
    for k in 1..=n {
        let mut next = BTreeMap::new();
        for g in level.values() {
            let base = g.adjacency();
            for nbhd in 0u64..(1u64 << (k - 1)) {
                let mut adj: Vec<u64> = base.to_vec();
                for (i, row) in adj.iter_mut().enumerate() {
                    if nbhd >> i & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                adj.push(nbhd);
                let code = code_of_adjacency(&adj);
                next.entry(code.clone()).or_insert_with(|| code.graph());
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Family};

    #[test]
    fn relabeled_paths_agree() {
        let a = Graph::new(3, [(1, 2), (2, 3)]).unwrap();
        let b = Graph::new(3, [(2, 1), (1, 3)]).unwrap();
        assert_eq!(canonical_code(&a).unwrap(), canonical_code(&b).unwrap());
        let k3 = named(Family::Complete, 3).unwrap();
        assert_ne!(canonical_code(&a).unwrap(), canonical_code(&k3).unwrap());
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        // Bucket all 2^6 labeled graphs on four vertices.
        let pairs: Vec<(usize, usize)> = (1..=4)
            .flat_map(|i| (i + 1..=4).map(move |j| (i, j)))
            .collect();
        let mut codes = std::collections::BTreeSet::new();
        for mask in 0u32..64 {
            let g = Graph::new(
                4,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .unwrap();
            codes.insert(canonical_code(&g).unwrap());
        }
        assert_eq!(codes.len(), 11);
    }

    #[test]
    fn class_counts_match_known_sequence() {
        let counts: Vec<usize> = (0..=6)
            .map(|n| isomorphism_classes(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn order_limit() {
        let big = Graph::empty(10);
        assert!(matches!(
            canonical_code(&big),
            Err(Error::OrderTooLarge {
                order: 10,
                limit: 9
            })
        ));
        assert!(canonical_code(&Graph::empty(9)).is_ok());
    }

    #[test]
    fn canonical_representative_roundtrip() {
        for (code, g) in isomorphism_classes(5).unwrap() {
            assert_eq!(canonical_code(&g).unwrap(), code);
            assert_eq!(CanonicalCode::parse(code.as_str()).unwrap(), code);
            assert_eq!(code.order(), 5);
        }
    }
}

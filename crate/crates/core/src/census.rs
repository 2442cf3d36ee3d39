//! Induced-subgraph census: how often each small isomorphism class occurs
//! as `G[S]`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::canon::{canonical_code, code_of_adjacency, CanonicalCode, DEFAULT_MAX_ORDER};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::names::display_name;

/// Occurrence counts of induced subgraphs of order `0..=max_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    counts: BTreeMap<CanonicalCode, u64>,
    max_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub code: CanonicalCode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub count: u64,
}

impl Census {
    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn count(&self, code: &CanonicalCode) -> u64 {
        self.counts.get(code).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<CanonicalCode, u64> {
        &self.counts
    }

    /// Entries sorted by `(order, code)`.
    pub fn entries(&self) -> Vec<CensusEntry> {
        let mut out: Vec<CensusEntry> = self
            .counts
            .iter()
            .map(|(code, &count)| CensusEntry {
                code: code.clone(),
                name: display_name(code),
                order: code.order(),
                count,
            })
            .collect();
        out.sort_by(|a, b| (a.order, &a.code).cmp(&(b.order, &b.code)));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries()).expect("census serializes")
    }
}

/// Buckets `canonical_code(G[S])` for every `S` with `|S| <= max_order`,
/// including the empty set.
pub fn census(g: &Graph, max_order: usize) -> Result<Census> {
    if max_order > DEFAULT_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: max_order,
            limit: DEFAULT_MAX_ORDER,
        });
    }
    let mut counts = BTreeMap::new();
    let adj = g.adjacency();
    for k in 0..=max_order.min(g.order()) {
        for_each_subset(g.order(), k, |mask| {
            let verts: Vec<usize> = (0..g.order()).filter(|&v| mask >> v & 1 == 1).collect();
            let sub: Vec<u64> = verts
                .iter()
                .map(|&u| {
                    verts
                        .iter()
                        .enumerate()
                        .fold(0u64, |row, (b, &w)| row | (adj[u] >> w & 1) << b)
                })
                .collect();
            *counts.entry(code_of_adjacency(&sub)).or_insert(0) += 1;
        });
    }
    Ok(Census { counts, max_order })
}

/// Number of vertex subsets `S` with `G[S] ≅ h`.
pub fn count_induced(g: &Graph, h: &Graph) -> Result<u64> {
    let code = canonical_code(h)?;
    if h.order() > g.order() {
        return Ok(0);
    }
    let mut count = 0;
    let adj = g.adjacency();
    let target_edges = h.size() as u32;
    for_each_subset(g.order(), h.order(), |mask| {
        let verts: Vec<usize> = (0..g.order()).filter(|&v| mask >> v & 1 == 1).collect();
        let edges: u32 = verts
            .iter()
            .map(|&u| (adj[u] & mask).count_ones())
            .sum::<u32>()
            / 2;
        if edges != target_edges {
            return;
        }
        let sub: Vec<u64> = verts
            .iter()
            .map(|&u| {
                verts
                    .iter()
                    .enumerate()
                    .fold(0u64, |row, (b, &w)| row | (adj[u] >> w & 1) << b)
            })
            .collect();
        if code_of_adjacency(&sub) == code {
            count += 1;
        }
    });
    Ok(count)
}

/// Visits every `k`-subset of `0..n` as a bitmask (Gosper's hack).
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u64)) {
    if k > n {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    let limit: u128 = 1u128 << n;
    let mut s: u128 = (1u128 << k) - 1;
    while s < limit {
        f(s as u64);
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

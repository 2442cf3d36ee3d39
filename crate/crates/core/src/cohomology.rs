//! Betti numbers of `L(G)` and `L(G, Σ)`, essential and bigraded essential
//! cohomology, the induced-subgraph decomposition, and the reduction of the
//! solvable case to the nilpotent one.
//!
//! Every computation except [`Engine::betti_monolithic`] works block by
//! block: the differential preserves the vertex support `S` of a monomial
//! and its weight `N = p + 2q`, so the complex splits into independent
//! `(S, N)` pieces whose ranks are summed.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::{CacheStats, EssentialCache};
use crate::canon::{canonical_code, CanonicalCode, DEFAULT_MAX_ORDER};
use crate::census::census;
use crate::closed_forms::binomial;
use crate::complex::{
    differential_in_bases, enumerate_basis, for_each_monomial, BasisFilter, Generators, Monomial,
};
use crate::error::{Error, Result};
use crate::graph::{CliqueFamily, Graph};
use crate::linalg::rank_exact;

/// `dims[d]` is the dimension of cohomology in degree `d`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiTable(Vec<u64>);

impl BettiTable {
    pub fn new(dims: Vec<u64>) -> Self {
        BettiTable(dims)
    }

    /// The table of the zero algebra: `[1]`.
    pub fn point() -> Self {
        BettiTable(vec![1])
    }

    pub fn dims(&self) -> &[u64] {
        &self.0
    }

    pub fn into_dims(self) -> Vec<u64> {
        self.0
    }

    /// Zero past the end of the table.
    pub fn get(&self, d: usize) -> u64 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Pads or truncates to `len` entries.
    pub fn resized(&self, len: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(len, 0);
        BettiTable(v)
    }
}

/// Convolution `out[i] = Σ_{j+k=i} a[j] b[k]`.
pub fn kunneth(a: &BettiTable, b: &BettiTable) -> BettiTable {
    if a.is_empty() || b.is_empty() {
        return BettiTable(Vec::new());
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (j, &x) in a.0.iter().enumerate() {
        for (k, &y) in b.0.iter().enumerate() {
            out[j + k] += x * y;
        }
    }
    BettiTable(out)
}

/// Essential Betti numbers `β_n` and their bigraded refinement
/// `β_{n,r} = dim H^n(C_{n+r}(G, V(G)))`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialTable {
    pub dims: Vec<u64>,
    /// Nonzero `β_{n,r}` only.
    pub bigraded: BTreeMap<(usize, usize), u64>,
}

impl EssentialTable {
    pub fn get(&self, n: usize) -> u64 {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn bigraded(&self, n: usize, r: usize) -> u64 {
        self.bigraded.get(&(n, r)).copied().unwrap_or(0)
    }

    pub fn as_betti(&self) -> BettiTable {
        BettiTable(self.dims.clone())
    }
}

/// How `betti` computes ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Sum of ranks over `(S, N)` blocks.
    Blockwise,
    /// One matrix per degree over the unfiltered basis.
    Monolithic,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlockStats {
    pub blocks: usize,
    pub rank_calls: usize,
    pub largest_matrix: usize,
}

/// Computes cohomology with an optional shared memo table for essential
/// dimensions and optional parallelism over blocks.
#[derive(Debug)]
pub struct Engine {
    parallel: bool,
    cache: Option<Arc<EssentialCache>>,
    blocks: AtomicUsize,
    rank_calls: AtomicUsize,
    largest: AtomicUsize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

struct Block {
    by_degree: Vec<Vec<Monomial>>,
}

impl Engine {
    /// Parallel, with a private in-memory cache.
    pub fn new() -> Self {
        Engine {
            parallel: true,
            cache: Some(Arc::new(EssentialCache::in_memory())),
            blocks: AtomicUsize::new(0),
            rank_calls: AtomicUsize::new(0),
            largest: AtomicUsize::new(0),
        }
    }

    pub fn with_cache(mut self, cache: Option<Arc<EssentialCache>>) -> Self {
        self.cache = cache;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn cache_stats(&self) -> Option<CacheStats> {
        self.cache.as_ref().map(|c| c.stats())
    }

    pub fn block_stats(&self) -> BlockStats {
        BlockStats {
            blocks: self.blocks.load(Ordering::Relaxed),
            rank_calls: self.rank_calls.load(Ordering::Relaxed),
            largest_matrix: self.largest.load(Ordering::Relaxed),
        }
    }

    /// All Betti numbers `b_0 ..= b_{n+|E|+s}` of `L(G, Σ)`.
    pub fn betti(&self, g: &Graph, sigma: &CliqueFamily) -> Result<BettiTable> {
        let layout = Generators::new(g, sigma)?;
        let top = layout.len();
        Ok(BettiTable(self.blockwise(&layout, None, 0..=top)))
    }

    /// Betti numbers for the given degrees only (degrees past the top are 0).
    pub fn betti_degrees(
        &self,
        g: &Graph,
        sigma: &CliqueFamily,
        degrees: RangeInclusive<usize>,
    ) -> Result<Vec<u64>> {
        let layout = Generators::new(g, sigma)?;
        Ok(self.blockwise(&layout, None, degrees))
    }

    pub fn betti_degree(&self, g: &Graph, sigma: &CliqueFamily, degree: usize) -> Result<u64> {
        Ok(self.betti_degrees(g, sigma, degree..=degree)?[0])
    }

    pub fn betti_with(
        &self,
        g: &Graph,
        sigma: &CliqueFamily,
        strategy: Strategy,
    ) -> Result<BettiTable> {
        match strategy {
            Strategy::Blockwise => self.betti(g, sigma),
            Strategy::Monolithic => self.betti_monolithic(g, sigma),
        }
    }

    /// Betti numbers from one exact rank per degree on the unfiltered complex.
    pub fn betti_monolithic(&self, g: &Graph, sigma: &CliqueFamily) -> Result<BettiTable> {
        let layout = Generators::new(g, sigma)?;
        let top = layout.len();
        Ok(BettiTable(self.monolithic(&layout, 0..=top)))
    }

    pub fn betti_monolithic_degree(
        &self,
        g: &Graph,
        sigma: &CliqueFamily,
        degree: usize,
    ) -> Result<u64> {
        let layout = Generators::new(g, sigma)?;
        Ok(self.monolithic(&layout, degree..=degree)[0])
    }

    /// Full essential table with its bigraded refinement.
    pub fn essential(&self, g: &Graph) -> Result<EssentialTable> {
        let code = self.code_for(g);
        if let (Some(cache), Some(code)) = (&self.cache, &code) {
            if let (Some(dims), Some(flat)) =
                (cache.get("essential", code), cache.get("bigraded", code))
            {
                if let Some(table) = unflatten_bigraded(dims, &flat) {
                    return Ok(table);
                }
            }
        }
        let layout = Generators::dani_mainkar(g)?;
        let top = layout.len();
        let blocks = self.collect_blocks(&layout, top, Some(g.vertices().bits()));
        let mut dims = vec![0u64; top + 1];
        let mut bigraded = BTreeMap::new();
        for ((_, weight), block) in &blocks {
            let table = self.block_cohomology(&layout, block, 0..=top);
            for (n, &b) in table.iter().enumerate() {
                dims[n] += b;
                if b != 0 {
                    *bigraded.entry((n, *weight as usize - n)).or_insert(0) += b;
                }
            }
        }
        let table = EssentialTable { dims, bigraded };
        if let (Some(cache), Some(code)) = (&self.cache, &code) {
            cache.insert("essential", code, &table.dims);
            cache.insert("bigraded", code, &flatten_bigraded(&table));
        }
        Ok(table)
    }

    /// `β_d(G)` alone; memoized per canonical code and degree.
    pub fn essential_degree(&self, g: &Graph, degree: usize) -> Result<u64> {
        let kind = format!("beta{degree}");
        let code = self.code_for(g);
        if let (Some(cache), Some(code)) = (&self.cache, &code) {
            if let Some(v) = cache.get(&kind, code) {
                if let [b] = v[..] {
                    return Ok(b);
                }
            }
        }
        let layout = Generators::dani_mainkar(g)?;
        let blocks = self.collect_blocks(&layout, degree + 1, Some(g.vertices().bits()));
        let b = blocks
            .values()
            .map(|block| self.block_cohomology(&layout, block, degree..=degree)[0])
            .sum();
        if let (Some(cache), Some(code)) = (&self.cache, &code) {
            cache.insert(&kind, code, &[b]);
        }
        Ok(b)
    }

    /// `b_d(G)` as `Σ_H |(G choose H)| β_d(H)` over isomorphism classes `H`
    /// with at most `2d - 1` vertices.
    pub fn betti_via_decomposition(&self, g: &Graph, degree: usize) -> Result<u64> {
        let max_order = if degree == 0 {
            0
        } else {
            (2 * degree - 1).min(g.order())
        };
        if max_order > DEFAULT_MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: max_order,
                limit: DEFAULT_MAX_ORDER,
            });
        }
        let census = census(g, max_order)?;
        let terms: Vec<(&CanonicalCode, u64)> =
            census.counts().iter().map(|(c, &n)| (c, n)).collect();
        let eval = |(code, count): &(&CanonicalCode, u64)| -> Result<u64> {
            Ok(count * self.essential_degree(&code.graph(), degree)?)
        };
        let parts: Vec<u64> = if self.parallel {
            terms.par_iter().map(eval).collect::<Result<_>>()?
        } else {
            terms.iter().map(eval).collect::<Result<_>>()?
        };
        Ok(parts.into_iter().sum())
    }

    /// `b(G, Σ)` via `b(G̃) ⊗ b(|Σ| K_1)`. The table stops at the top degree
    /// of `L(G̃ + |Σ| K_1)`; every higher degree of `L(G, Σ)` is zero.
    pub fn ggi_betti_reduced(&self, g: &Graph, sigma: &CliqueFamily) -> Result<BettiTable> {
        let (reduced, s) = ggi_reduce(g, sigma)?;
        let base = self.betti(&reduced, &CliqueFamily::empty())?;
        let abelian = BettiTable(
            (0..=s)
                .map(|k| binomial(s as i64, k as i64) as u64)
                .collect(),
        );
        Ok(kunneth(&base, &abelian))
    }

    fn code_for(&self, g: &Graph) -> Option<CanonicalCode> {
        self.cache.as_ref()?;
        canonical_code(g).ok()
    }

    fn collect_blocks(
        &self,
        layout: &Generators,
        max_degree: usize,
        only_support: Option<u64>,
    ) -> BTreeMap<(u64, u32), Block> {
        let within = only_support.unwrap_or(u64::MAX);
        let mut buckets: HashMap<(u64, u32), Vec<Vec<Monomial>>> = HashMap::new();
        for_each_monomial(layout, max_degree, within, |m, support, weight| {
            if only_support.is_some_and(|s| s != support) {
                return;
            }
            let by_degree = buckets
                .entry((support, weight))
                .or_insert_with(|| vec![Vec::new(); max_degree + 1]);
            by_degree[m.degree()].push(m);
        });
        buckets
            .into_iter()
            .map(|(key, mut by_degree)| {
                for v in &mut by_degree {
                    v.sort_unstable();
                }
                (key, Block { by_degree })
            })
            .collect()
    }

    /// `dim H^d` of one block for each `d` in `degrees`. The block must hold
    /// every degree up to `degrees.end() + 1` that exists in the complex.
    fn block_cohomology(
        &self,
        layout: &Generators,
        block: &Block,
        degrees: RangeInclusive<usize>,
    ) -> Vec<u64> {
        self.blocks.fetch_add(1, Ordering::Relaxed);
        let basis = |d: usize| block.by_degree.get(d).map(Vec::as_slice).unwrap_or(&[]);
        let (lo, hi) = (*degrees.start(), *degrees.end());
        let ranks: HashMap<usize, usize> = (lo.saturating_sub(1)..=hi)
            .map(|k| (k, self.rank_between(layout, basis(k), basis(k + 1))))
            .collect();
        (lo..=hi)
            .map(|d| {
                let below = if d == 0 { 0 } else { ranks[&(d - 1)] };
                (basis(d).len() - ranks[&d] - below) as u64
            })
            .collect()
    }

    fn rank_between(&self, layout: &Generators, source: &[Monomial], target: &[Monomial]) -> usize {
        if source.is_empty() || target.is_empty() {
            return 0;
        }
        self.rank_calls.fetch_add(1, Ordering::Relaxed);
        self.largest
            .fetch_max(source.len().max(target.len()), Ordering::Relaxed);
        rank_exact(&differential_in_bases(layout, source, target)).rank
    }

    fn blockwise(
        &self,
        layout: &Generators,
        only_support: Option<u64>,
        degrees: RangeInclusive<usize>,
    ) -> Vec<u64> {
        let (lo, hi) = (*degrees.start(), *degrees.end());
        let max_degree = (hi + 1).min(layout.len());
        let blocks: Vec<Block> = self
            .collect_blocks(layout, max_degree, only_support)
            .into_values()
            .collect();
        let per_block = |b: &Block| self.block_cohomology(layout, b, lo..=hi);
        let tables: Vec<Vec<u64>> = if self.parallel {
            blocks.par_iter().map(per_block).collect()
        } else {
            blocks.iter().map(per_block).collect()
        };
        (0..=hi - lo)
            .map(|i| tables.iter().map(|t| t[i]).sum())
            .collect()
    }

    fn monolithic(&self, layout: &Generators, degrees: RangeInclusive<usize>) -> Vec<u64> {
        let (lo, hi) = (*degrees.start(), *degrees.end());
        let basis = |d: usize| enumerate_basis(layout, d, BasisFilter::none());
        let bases: HashMap<usize, Vec<Monomial>> = (lo.saturating_sub(1)..=hi + 1)
            .map(|d| (d, basis(d)))
            .collect();
        let rank = |k: usize| self.rank_between(layout, &bases[&k], &bases[&(k + 1)]);
        let ranks: HashMap<usize, usize> =
            (lo.saturating_sub(1)..=hi).map(|k| (k, rank(k))).collect();
        (lo..=hi)
            .map(|d| {
                let below = if d == 0 { 0 } else { ranks[&(d - 1)] };
                (bases[&d].len() - ranks[&d] - below) as u64
            })
            .collect()
    }
}

fn flatten_bigraded(t: &EssentialTable) -> Vec<u64> {
    t.bigraded
        .iter()
        .flat_map(|(&(n, r), &b)| [n as u64, r as u64, b])
        .collect()
}

fn unflatten_bigraded(dims: Vec<u64>, flat: &[u64]) -> Option<EssentialTable> {
    if !flat.len().is_multiple_of(3) {
        return None;
    }
    let bigraded = flat
        .chunks(3)
        .map(|c| ((c[0] as usize, c[1] as usize), c[2]))
        .collect();
    Some(EssentialTable { dims, bigraded })
}

/// `(G̃, |Σ|)` where `G̃` is induced on the vertices outside every clique.
pub fn ggi_reduce(g: &Graph, sigma: &CliqueFamily) -> Result<(Graph, usize)> {
    sigma.validate(g)?;
    let outside = g.vertices().difference(sigma.covered());
    Ok((g.induced_subgraph(outside)?, sigma.len()))
}

/// Blockwise Betti table with a default engine.
pub fn betti(g: &Graph, sigma: &CliqueFamily) -> Result<BettiTable> {
    Engine::new().betti(g, sigma)
}

pub fn essential_betti(g: &Graph) -> Result<EssentialTable> {
    Engine::new().essential(g)
}

pub fn betti_via_decomposition(g: &Graph, degree: usize) -> Result<u64> {
    Engine::new().betti_via_decomposition(g, degree)
}

pub fn ggi_betti_reduced(g: &Graph, sigma: &CliqueFamily) -> Result<BettiTable> {
    Engine::new().ggi_betti_reduced(g, sigma)
}

//! Closed-form Betti numbers, evaluated without the rank engine.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_code, CanonicalCode};
use crate::census::count_induced;
use crate::cohomology::BettiTable;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `C(n, k)`, zero when `k < 0` or `k > n` (so also whenever `n < 0`).
pub fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn c(n: i64, k: i64) -> u64 {
    binomial(n, k) as u64
}

/// `b_1 = |V|`.
pub fn b1_formula(g: &Graph) -> u64 {
    g.order() as u64
}

/// `b_2 = C(|V|, 2) + ½ Σ deg(i)² − #triangles`.
pub fn b2_formula(g: &Graph) -> u64 {
    let squares: u64 = g
        .vertices()
        .iter()
        .map(|v| (g.degree(v) as u64).pow(2))
        .sum();
    c(g.order() as i64, 2) + squares / 2 - g.triangle_count() as u64
}

/// `b_3 = Σ_j β_3(G_j) · #{induced copies of G_j}` over the golden table.
pub fn b3_formula(g: &Graph) -> Result<u64> {
    let mut total = 0;
    for entry in Beta3Table::golden().entries() {
        total += entry.beta3 * count_induced(g, &entry.code.graph())?;
    }
    Ok(total)
}

/// `b_k(S_n) = C(n+1, ⌈k/2⌉) C(n, ⌊k/2⌋)`.
pub fn star_betti(n: usize, k: usize) -> u64 {
    let (n, k) = (n as i64, k as i64);
    c(n + 1, (k + 1) / 2) * c(n, k / 2)
}

/// `β_k(S_n)` for `n >= 1`.
pub fn star_essential(n: usize, k: usize) -> u64 {
    if k < n || k > 2 * n + 1 {
        return 0;
    }
    let (n, k) = (n as i64, k as i64);
    if k == n {
        return c(n, n / 2) - 1;
    }
    let a = 2 * n - k;
    let b = a + 1;
    c(a, a.div_euclid(2)) * c(n, a) + c(b, b.div_euclid(2)) * c(n, b)
}

/// `t(S_n) = Σ_k b_k(S_n) = 2 C(2n+1, n)`.
pub fn star_total(n: usize) -> u64 {
    2 * c(2 * n as i64 + 1, n as i64)
}

/// `β_{n,r}(S_n) = C(n, r) − C(n, r−1)` for `1 <= r <= n/2`, else 0.
pub fn star_bigraded(n: usize, r: usize) -> u64 {
    if r == 0 || 2 * r > n {
        return 0;
    }
    let (n, r) = (n as i64, r as i64);
    c(n, r) - c(n, r - 1)
}

/// `b_n(G, Σ) = Σ_l b_l(G̃) C(s, n − l)`.
pub fn ggi_bn_formula(b_tilde: &BettiTable, s: usize, n: usize) -> u64 {
    (0..=n)
        .map(|l| b_tilde.get(l) * c(s as i64, (n - l) as i64))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Beta3Entry {
    pub code: CanonicalCode,
    pub name: String,
    pub beta3: u64,
}

/// The graphs with nonzero third essential cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Beta3Table {
    entries: Vec<Beta3Entry>,
}

const GOLDEN_BETA3: &str = include_str!("../data/beta3_table.json");

impl Beta3Table {
    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<Beta3Entry> =
            serde_json::from_str(text).map_err(|e| Error::Golden(e.to_string()))?;
        Ok(Beta3Table { entries })
    }

    /// The table shipped with the crate.
    pub fn golden() -> &'static Beta3Table {
        static TABLE: OnceLock<Beta3Table> = OnceLock::new();
        TABLE.get_or_init(|| {
            Beta3Table::from_json(GOLDEN_BETA3).expect("shipped beta3 table parses")
        })
    }

    pub fn entries(&self) -> &[Beta3Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, code: &CanonicalCode) -> Option<&Beta3Entry> {
        self.entries.iter().find(|e| &e.code == code)
    }

    pub fn lookup(&self, g: &Graph) -> Result<u64> {
        let code = canonical_code(g)?;
        Ok(self.get(&code).map_or(0, |e| e.beta3))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("beta3 table serializes")
    }
}

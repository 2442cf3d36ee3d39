//! The Chevalley-Eilenberg cochain complex of `L(G)` and `L(G, Σ)`.
//!
//! Cochains are exterior polynomials in the dual generators
//! `x_i*` (vertices), `x_{i,j}*` (edges) and `y_k*` (cliques). Every basis
//! monomial is stored sorted, as a bitmask over generator positions, and all
//! signs live in the matrix coefficients of the differential.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{CliqueFamily, Graph, VertexSet};
use crate::matrix::SparseIntMatrix;

/// Hard cap on the number of generators (one bit per generator).
pub const MAX_GENERATORS: usize = 128;

/// A dual generator, in the fixed total order
/// vertex-duals < edge-duals < clique-duals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorIndex {
    /// `x_i*`, 1-based vertex id.
    Vertex(usize),
    /// `x_{i,j}*` with `i < j`.
    Edge(usize, usize),
    /// `y_k*`, 1-based position in the clique family.
    Clique(usize),
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeneratorIndex::Vertex(i) => write!(f, "x{i}*"),
            GeneratorIndex::Edge(i, j) => write!(f, "x{i},{j}*"),
            GeneratorIndex::Clique(k) => write!(f, "y{k}*"),
        }
    }
}

/// One quadratic term `coef * u v` (with `u < v`) of the differential of a
/// single generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct QuadTerm {
    pub coef: i64,
    pub u: usize,
    pub v: usize,
}

/// Generator layout of `L(G, Σ)` and the differential on generators.
#[derive(Clone, Debug)]
pub struct Generators {
    gens: Vec<GeneratorIndex>,
    support: Vec<u64>,
    weight: Vec<u32>,
    dq: Vec<Vec<QuadTerm>>,
    n_vertices: usize,
    n_edges: usize,
    n_cliques: usize,
}

impl Generators {
    /// Layout for `L(G, Σ)`. `sigma` must be a valid clique family of `g`.
    pub fn new(g: &Graph, sigma: &CliqueFamily) -> Result<Self> {
        sigma.validate(g)?;
        let (n, m, s) = (g.order(), g.size(), sigma.len());
        let total = n + m + s;
        if total > MAX_GENERATORS {
            return Err(Error::TooManyGenerators {
                count: total,
                limit: MAX_GENERATORS,
            });
        }
        let mut gens = Vec::with_capacity(total);
        let mut support = Vec::with_capacity(total);
        let mut weight = Vec::with_capacity(total);
        let mut dq = Vec::with_capacity(total);
        let y = |k: usize| n + m + k;

        for i in 1..=n {
            gens.push(GeneratorIndex::Vertex(i));
            support.push(1u64 << (i - 1));
            weight.push(1);
            let terms = sigma
                .cliques()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.contains(i))
                .map(|(k, _)| QuadTerm {
                    coef: 1,
                    u: i - 1,
                    v: y(k),
                })
                .collect();
            dq.push(terms);
        }
        for (e, &(i, j)) in g.edges().iter().enumerate() {
            gens.push(GeneratorIndex::Edge(i, j));
            support.push(1u64 << (i - 1) | 1u64 << (j - 1));
            weight.push(2);
            let mut terms = vec![QuadTerm {
                coef: 1,
                u: i - 1,
                v: j - 1,
            }];
            for (k, c) in sigma.cliques().iter().enumerate() {
                let coef = c.intersection(VertexSet::from_vertices([i, j])).len() as i64;
                if coef != 0 {
                    terms.push(QuadTerm {
                        coef,
                        u: n + e,
                        v: y(k),
                    });
                }
            }
            dq.push(terms);
        }
        for k in 1..=s {
            gens.push(GeneratorIndex::Clique(k));
            support.push(0);
            weight.push(0);
            dq.push(Vec::new());
        }
        Ok(Generators {
            gens,
            support,
            weight,
            dq,
            n_vertices: n,
            n_edges: m,
            n_cliques: s,
        })
    }

    /// Layout for the Dani-Mainkar algebra `L(G)`.
    pub fn dani_mainkar(g: &Graph) -> Result<Self> {
        Self::new(g, &CliqueFamily::empty())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[GeneratorIndex] {
        &self.gens
    }

    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    pub fn clique_count(&self) -> usize {
        self.n_cliques
    }

    /// Position of a generator in the total order, if it exists.
    pub fn position(&self, g: GeneratorIndex) -> Option<usize> {
        self.gens.binary_search(&g).ok()
    }

    /// Builds a monomial from generators in any order, returning it with the
    /// sign of the sorting permutation, or `None` if a generator repeats.
    pub fn monomial(&self, factors: &[GeneratorIndex]) -> Option<(i64, Monomial)> {
        let positions: Vec<usize> = factors
            .iter()
            .map(|&f| self.position(f))
            .collect::<Option<_>>()?;
        let mut bits = 0u128;
        let mut sign = 1i64;
        for &p in &positions {
            if bits >> p & 1 == 1 {
                return None;
            }
            if (bits >> p).count_ones() % 2 == 1 {
                sign = -sign;
            }
            bits |= 1 << p;
        }
        Some((sign, Monomial(bits)))
    }

    pub fn support(&self, m: Monomial) -> VertexSet {
        VertexSet::from_bits(m.positions().fold(0, |acc, p| acc | self.support[p]))
    }

    /// `N = p + 2q`.
    pub fn weight(&self, m: Monomial) -> u32 {
        m.positions().map(|p| self.weight[p]).sum()
    }

    /// `Q(m)` as a map from sorted monomials to nonzero coefficients.
    pub fn differential(&self, m: Monomial) -> Vec<(Monomial, i64)> {
        let mut acc: HashMap<u128, i64> = HashMap::new();
        self.differential_into(m, |t, c| *acc.entry(t).or_insert(0) += c);
        let mut out: Vec<(Monomial, i64)> = acc
            .into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(t, c)| (Monomial(t), c))
            .collect();
        out.sort_by_key(|a| a.0);
        out
    }

    /// Leibniz expansion `Q(g_1..g_d) = Σ_j (-1)^(j-1) g_1..Q(g_j)..g_d`, each
    /// term re-sorted with the sign of the sorting permutation. Terms are
    /// reported unmerged.
    pub(crate) fn differential_into(&self, m: Monomial, mut emit: impl FnMut(u128, i64)) {
        let bits = m.0;
        for g in m.positions() {
            let terms = &self.dq[g];
            if terms.is_empty() {
                continue;
            }
            let below_g = low_mask(g);
            let rest = bits & !(1u128 << g);
            let before = rest & below_g;
            let after = rest & !below_g;
            let lead = (bits & below_g).count_ones();
            for t in terms {
                if rest >> t.u & 1 == 1 || rest >> t.v & 1 == 1 {
                    continue;
                }
                // Inversions of the word (before, u, v, after).
                let inv = |x: usize| {
                    (before & !low_mask(x + 1)).count_ones() + (after & low_mask(x)).count_ones()
                };
                let parity = lead + inv(t.u) + inv(t.v);
                let sign = if parity.is_multiple_of(2) { 1 } else { -1 };
                emit(rest | 1u128 << t.u | 1u128 << t.v, sign * t.coef);
            }
        }
    }
}

fn low_mask(k: usize) -> u128 {
    if k >= 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    }
}

/// A sorted exterior monomial, one bit per generator position.
///
/// Ordering is lexicographic on the increasing position sequence, which is
/// the basis order used by every matrix in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_bits(bits: u128) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Generator positions in increasing order.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(p)
            }
        })
    }

    pub fn gens(self, layout: &Generators) -> Vec<GeneratorIndex> {
        self.positions().map(|p| layout.gens[p]).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let first_self = self.0 & low != 0;
        // A shorter sequence that is a prefix of a longer one sorts first.
        if (self.0 & !(low - 1) & !low) == 0 && !first_self {
            return Ordering::Less;
        }
        if (other.0 & !(low - 1) & !low) == 0 && first_self {
            return Ordering::Greater;
        }
        if first_self {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.positions().collect::<Vec<_>>())
    }
}

/// Optional restriction of a basis to monomials of one support and/or weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BasisFilter {
    pub support: Option<VertexSet>,
    pub weight: Option<u32>,
}

impl BasisFilter {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn support(s: VertexSet) -> Self {
        BasisFilter {
            support: Some(s),
            weight: None,
        }
    }

    pub fn block(s: VertexSet, weight: u32) -> Self {
        BasisFilter {
            support: Some(s),
            weight: Some(weight),
        }
    }
}

/// All degree-`degree` monomials passing `filter`, in lexicographic order.
pub fn enumerate_basis(layout: &Generators, degree: usize, filter: BasisFilter) -> Vec<Monomial> {
    let mut out = Vec::new();
    if degree > layout.len() {
        return out;
    }
    let allowed = filter.support.map(|s| s.bits());
    let candidates: Vec<usize> = (0..layout.len())
        .filter(|&p| allowed.is_none_or(|s| layout.support[p] & !s == 0))
        .collect();
    let mut walk = Walk {
        layout,
        candidates: &candidates,
        filter,
        allowed,
        out: &mut out,
    };
    walk.run(0, degree, 0, 0, 0);
    out
}

struct Walk<'a> {
    layout: &'a Generators,
    candidates: &'a [usize],
    filter: BasisFilter,
    allowed: Option<u64>,
    out: &'a mut Vec<Monomial>,
}

impl Walk<'_> {
    fn run(&mut self, from: usize, left: usize, bits: u128, support: u64, weight: u32) {
        if let Some(w) = self.filter.weight {
            if weight > w {
                return;
            }
        }
        if left == 0 {
            if self.allowed.is_none_or(|s| s == support)
                && self.filter.weight.is_none_or(|w| w == weight)
            {
                self.out.push(Monomial(bits));
            }
            return;
        }
        for idx in from..self.candidates.len() {
            if self.candidates.len() - idx < left {
                break;
            }
            let p = self.candidates[idx];
            self.run(
                idx + 1,
                left - 1,
                bits | 1u128 << p,
                support | self.layout.support[p],
                weight + self.layout.weight[p],
            );
        }
    }
}

/// Matrix of `Q: C^d -> C^{d+1}` in the given source and target bases.
/// Columns follow `source`, rows follow `target`. Every image term must
/// lie in `target`.
pub fn differential_in_bases(
    layout: &Generators,
    source: &[Monomial],
    target: &[Monomial],
) -> SparseIntMatrix {
    let index: HashMap<u128, usize> = target.iter().enumerate().map(|(i, m)| (m.0, i)).collect();
    let mut entries = Vec::new();
    let mut column: HashMap<usize, i64> = HashMap::new();
    for (c, &m) in source.iter().enumerate() {
        column.clear();
        layout.differential_into(m, |t, coef| {
            let r = *index.get(&t).expect("differential leaves the target basis");
            *column.entry(r).or_insert(0) += coef;
        });
        entries.extend(
            column
                .iter()
                .filter(|&(_, &v)| v != 0)
                .map(|(&r, &v)| (r, c, v)),
        );
    }
    SparseIntMatrix::from_entries(target.len(), source.len(), entries)
}

/// Matrix of `Q` from degree `degree` to `degree + 1`, both restricted by
/// `filter` (the differential preserves support and weight).
pub fn differential_matrix(
    layout: &Generators,
    degree: usize,
    filter: BasisFilter,
) -> SparseIntMatrix {
    let source = enumerate_basis(layout, degree, filter);
    let target = enumerate_basis(layout, degree + 1, filter);
    differential_in_bases(layout, &source, &target)
}

/// Calls `f` once for every monomial of degree at most `max_degree` whose
/// generators all have support inside `within`.
pub(crate) fn for_each_monomial(
    layout: &Generators,
    max_degree: usize,
    within: u64,
    mut f: impl FnMut(Monomial, u64, u32),
) {
    let candidates: Vec<usize> = (0..layout.len())
        .filter(|&p| layout.support[p] & !within == 0)
        .collect();
    #[allow(clippy::too_many_arguments)]
    fn go(
        layout: &Generators,
        cands: &[usize],
        from: usize,
        left: usize,
        bits: u128,
        support: u64,
        weight: u32,
        f: &mut dyn FnMut(Monomial, u64, u32),
    ) {
        f(Monomial(bits), support, weight);
        if left == 0 {
            return;
        }
        for idx in from..cands.len() {
            let p = cands[idx];
            go(
                layout,
                cands,
                idx + 1,
                left - 1,
                bits | 1u128 << p,
                support | layout.support[p],
                weight + layout.weight[p],
                f,
            );
        }
    }
    go(layout, &candidates, 0, max_degree, 0, 0, 0, &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, parse_edge_list, Family};
    use GeneratorIndex::*;

    fn four_vertex_example() -> Graph {
        parse_edge_list("n 4\n1 2\n1 3\n2 3\n3 4").unwrap()
    }

    fn example_sigma() -> CliqueFamily {
        CliqueFamily::from_json("[[1,2],[1,2],[1,2,3]]").unwrap()
    }

    #[test]
    fn generator_order() {
        let layout = Generators::new(&four_vertex_example(), &example_sigma()).unwrap();
        assert_eq!(layout.len(), 11);
        let gens = layout.generators();
        assert_eq!(gens[0], Vertex(1));
        assert_eq!(gens[4], Edge(1, 2));
        assert_eq!(gens[7], Edge(3, 4));
        assert_eq!(gens[8], Clique(1));
        assert!(gens.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn support_filtered_basis_example() {
        let layout = Generators::dani_mainkar(&four_vertex_example()).unwrap();
        let s = VertexSet::from_vertices([1, 3, 4]);
        let deg2 = enumerate_basis(&layout, 2, BasisFilter::support(s));
        let named: Vec<Vec<GeneratorIndex>> = deg2.iter().map(|m| m.gens(&layout)).collect();
        assert_eq!(
            named,
            vec![
                vec![Vertex(1), Edge(3, 4)],
                vec![Vertex(4), Edge(1, 3)],
                vec![Edge(1, 3), Edge(3, 4)]
            ]
        );
        assert!(enumerate_basis(&layout, 1, BasisFilter::support(s)).is_empty());
    }

    #[test]
    fn top_power_of_heisenberg() {
        let layout = Generators::dani_mainkar(&named(Family::Complete, 2).unwrap()).unwrap();
        let top = enumerate_basis(&layout, 3, BasisFilter::none());
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].gens(&layout), vec![Vertex(1), Vertex(2), Edge(1, 2)]);
        assert!(enumerate_basis(&layout, 4, BasisFilter::none()).is_empty());
    }

    #[test]
    fn heisenberg_degree_one_differential() {
        let layout = Generators::dani_mainkar(&named(Family::Complete, 2).unwrap()).unwrap();
        let q = differential_matrix(&layout, 1, BasisFilter::none());
        assert_eq!((q.rows(), q.cols()), (3, 3));
        // Source basis x1*, x2*, x12*; target x1*x2*, x1*x12*, x2*x12*.
        assert_eq!(q.entries(), &[(0, 2, 1)]);
    }

    #[test]
    fn clique_terms_in_degree_one() {
        let layout = Generators::new(&four_vertex_example(), &example_sigma()).unwrap();
        let (_, x1) = layout.monomial(&[Vertex(1)]).unwrap();
        let image = layout.differential(x1);
        let expected: Vec<(Monomial, i64)> = (1..=3)
            .map(|k| (layout.monomial(&[Vertex(1), Clique(k)]).unwrap().1, 1))
            .collect();
        assert_eq!(image, expected);

        // Coefficients follow |{i,j} ∩ σ_k|: x_{1,3}* picks up 1, 1, 2.
        let (_, x13) = layout.monomial(&[Edge(1, 3)]).unwrap();
        let mut got = layout.differential(x13);
        got.sort_by_key(|(m, _)| m.bits());
        let mut want = vec![(layout.monomial(&[Vertex(1), Vertex(3)]).unwrap().1, 1)];
        for (k, c) in [(1, 1), (2, 1), (3, 2)] {
            want.push((layout.monomial(&[Edge(1, 3), Clique(k)]).unwrap().1, c));
        }
        want.sort_by_key(|(m, _)| m.bits());
        assert_eq!(got, want);
    }

    #[test]
    fn leibniz_signs() {
        // Q(x1* x23*) = -x1* x2* x3* for the path 1 - 2 - 3 with edge {2,3}.
        let g = Graph::new(3, [(2, 3)]).unwrap();
        let layout = Generators::dani_mainkar(&g).unwrap();
        let (_, m) = layout.monomial(&[Vertex(1), Edge(2, 3)]).unwrap();
        let (_, top) = layout.monomial(&[Vertex(1), Vertex(2), Vertex(3)]).unwrap();
        assert_eq!(layout.differential(m), vec![(top, -1)]);
        // Q(x23* x1*) = x1* x2* x3* after reordering.
        let (sign, same) = layout.monomial(&[Edge(2, 3), Vertex(1)]).unwrap();
        assert_eq!((sign, same), (-1, m));
    }

    #[test]
    fn monomial_ordering_is_lexicographic() {
        let seqs: Vec<Vec<usize>> = vec![
            vec![],
            vec![0],
            vec![0, 1],
            vec![0, 5],
            vec![1],
            vec![1, 2],
            vec![4],
        ];
        let monos: Vec<Monomial> = seqs
            .iter()
            .map(|s| Monomial::from_bits(s.iter().fold(0u128, |b, &p| b | 1 << p)))
            .collect();
        for (i, a) in monos.iter().enumerate() {
            for (j, b) in monos.iter().enumerate() {
                assert_eq!(
                    a.cmp(b),
                    seqs[i].cmp(&seqs[j]),
                    "{:?} vs {:?}",
                    seqs[i],
                    seqs[j]
                );
            }
        }
    }

    #[test]
    fn rejects_non_cliques() {
        let sigma = CliqueFamily::from_json("[[1,4]]").unwrap();
        assert!(matches!(
            Generators::new(&four_vertex_example(), &sigma),
            Err(Error::NotAClique { index: 1 })
        ));
    }
}

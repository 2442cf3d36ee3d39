//! Reference computations that share no code with the library's complex
//! or rank modules.

#![allow(dead_code)]

use graphcoh::{CliqueFamily, Graph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Structure constants `[e_a, e_b] = Σ c e_k` written out from the
/// definition of the algebra.
fn structure_constants(
    g: &Graph,
    sigma: &CliqueFamily,
) -> (usize, Vec<(usize, usize, usize, i64)>) {
    let n = g.order();
    let m = g.size();
    let edge_pos = |i: usize, j: usize| n + g.edges().iter().position(|&e| e == (i, j)).unwrap();
    let mut out = Vec::new();
    for &(i, j) in g.edges() {
        out.push((i - 1, j - 1, edge_pos(i, j), 1));
    }
    for (k, c) in sigma.cliques().iter().enumerate() {
        let y = n + m + k;
        for i in 1..=n {
            if c.contains(i) {
                out.push((y, i - 1, i - 1, 1));
            }
        }
        for &(i, j) in g.edges() {
            let w = c.contains(i) as i64 + c.contains(j) as i64;
            if w > 0 {
                out.push((y, edge_pos(i, j), edge_pos(i, j), w));
            }
        }
    }
    (n + m + sigma.len(), out)
}

fn subsets(dim: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(dim: usize, p: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in from..dim {
            cur.push(i);
            go(dim, p, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(dim, p, 0, &mut Vec::new(), &mut out);
    out
}

/// Dense rank over the rationals by plain Gaussian elimination.
pub fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            let (top, rest) = a.split_at_mut(r);
            for (x, y) in rest[0][col..ncols].iter_mut().zip(&top[rank][col..ncols]) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Chevalley-Eilenberg Betti numbers from the structure constants, using
/// `(dα)(e_a, e_b) = -α([e_a, e_b])` on dense cochain matrices.
pub fn ce_betti(g: &Graph, sigma: &CliqueFamily) -> Vec<u64> {
    let (dim, consts) = structure_constants(g, sigma);
    // d e^k = -Σ_{a<b} c^k_{ab} e^a e^b
    let mut dgen: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); dim];
    for &(a, b, k, c) in &consts {
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        dgen[k].push((lo, hi, -c * s));
    }
    let bases: Vec<Vec<Vec<usize>>> = (0..=dim).map(|p| subsets(dim, p)).collect();
    let mut ranks = vec![0usize; dim + 1];
    for p in 0..dim {
        let target = &bases[p + 1];
        let index = |s: &[usize]| target.binary_search_by(|t| t.as_slice().cmp(s)).unwrap();
        let mut matrix = vec![vec![0i64; bases[p].len()]; target.len()];
        for (col, mono) in bases[p].iter().enumerate() {
            for (pos, &k) in mono.iter().enumerate() {
                for &(a, b, c) in &dgen[k] {
                    let mut word: Vec<usize> = mono[..pos].to_vec();
                    word.extend([a, b]);
                    word.extend_from_slice(&mono[pos + 1..]);
                    if let Some((sign, sorted)) = sort_sign(word) {
                        let s = if pos % 2 == 0 { 1 } else { -1 };
                        matrix[index(&sorted)][col] += s * sign * c;
                    }
                }
            }
        }
        ranks[p] = if matrix.is_empty() || bases[p].is_empty() {
            0
        } else {
            dense_rank(&matrix)
        };
    }
    (0..=dim)
        .map(|p| (bases[p].len() - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 }) as u64)
        .collect()
}

fn sort_sign(mut w: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] == w[j + 1] {
                return None;
            }
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((sign, w))
}

/// Betti numbers of the free two-step nilpotent Lie algebra on `n`
/// generators, i.e. of `L(K_n)`, from Kostant's theorem: it is the
/// nilradical of the `gl(n)` parabolic of `so(2n+1)`, and `H^k` is the sum
/// of the `gl(n)` modules of highest weight `wρ - ρ` over the minimal coset
/// representatives `w` of length `k`.
pub fn kostant_complete(n: usize) -> Vec<u64> {
    // Weights are doubled so ρ = (2n-1, 2n-3, ..., 1) stays integral.
    let rho: Vec<i64> = (0..n).map(|i| (2 * (n - i) - 1) as i64).collect();
    let mut positive: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        positive.push(e);
        for j in i + 1..n {
            let mut a = vec![0; n];
            a[i] = 1;
            a[j] = -1;
            positive.push(a.clone());
            a[j] = 1;
            positive.push(a);
        }
    }
    let top = n + n * (n - 1) / 2;
    let mut out = vec![BigRational::zero(); top + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for signs in 0..1u32 << n {
            let w: Vec<i64> = (0..n)
                .map(|k| {
                    if signs >> k & 1 == 1 {
                        -rho[perm[k]]
                    } else {
                        rho[perm[k]]
                    }
                })
                .collect();
            if !w.windows(2).all(|p| p[0] > p[1]) {
                continue;
            }
            let len = positive
                .iter()
                .filter(|a| a.iter().zip(&w).map(|(x, y)| x * y).sum::<i64>() < 0)
                .count();
            let lam: Vec<i64> = w.iter().zip(&rho).map(|(a, b)| (a - b) / 2).collect();
            let mut dim = BigRational::one();
            for i in 0..n {
                for j in i + 1..n {
                    let num = lam[i] - lam[j] + (j - i) as i64;
                    dim *= BigRational::new(BigInt::from(num), BigInt::from((j - i) as i64));
                }
            }
            out[len] += dim;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out.iter()
        .map(|d| d.to_integer().try_into().unwrap())
        .collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Graphs on `0..=max_n` vertices with arbitrary edge sets.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
            Graph::new(n, edges).unwrap()
        })
    })
}

/// A graph together with up to `max_s` cliques drawn from its cliques.
pub fn arb_graph_with_cliques(
    max_n: usize,
    max_s: usize,
) -> impl Strategy<Value = (Graph, CliqueFamily)> {
    arb_graph(max_n).prop_flat_map(move |g| {
        let all: Vec<graphcoh::VertexSet> = (1..=g.order()).flat_map(|k| g.cliques(k)).collect();
        let pick = if all.is_empty() {
            Just(Vec::new()).boxed()
        } else {
            proptest::collection::vec(proptest::sample::select(all), 0..=max_s).boxed()
        };
        (Just(g), pick).prop_map(|(g, cl)| (g, CliqueFamily::new(cl)))
    })
}

/// A random permutation of `1..=n` as a 1-based image vector.
pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

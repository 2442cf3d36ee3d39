//! Exact rank of sparse integer matrices.
//!
//! The exact path first peels singleton rows and columns (each peel is one
//! unit of rank), then runs fraction-free row reduction on what is left.
//! Reduction starts on machine integers and restarts on arbitrary-precision
//! integers the moment an intermediate would overflow, so the answer is
//! always the rank over the rationals.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SparseIntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    ExactFractionFree,
    ModularProbabilistic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    pub modulus: Option<u64>,
}

/// Rank over the rationals.
pub fn rank_exact(m: &SparseIntMatrix) -> RankResult {
    let (peeled, core) = peel(m);
    let rest = match echelon_rank::<i64>(&core) {
        Some(r) => r,
        None => echelon_rank::<BigInt>(&core).expect("big integers never overflow"),
    };
    RankResult {
        rank: peeled + rest,
        method: RankMethod::ExactFractionFree,
        modulus: None,
    }
}

/// Rank over GF(p) for a prime `p > 2^30`. Never exceeds [`rank_exact`].
pub fn rank_modular(m: &SparseIntMatrix, p: u64) -> Result<RankResult> {
    if p <= 1 << 30 || !is_prime(p) {
        return Err(Error::BadModulus(p));
    }
    let rows: Vec<Vec<(usize, u64)>> = group_rows(m)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .filter_map(|(c, v)| {
                    let r = v.rem_euclid(p as i64) as u64;
                    (r != 0).then_some((c, r))
                })
                .collect()
        })
        .collect();
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    let mut rank = 0;
    for mut row in rows {
        while let Some(&(lead, lv)) = row.first() {
            match pivots.get(&lead) {
                Some(piv) => {
                    // Pivots are normalized to a leading 1.
                    row = merge(&row, piv, |x, y| {
                        let (x, y) = (x.copied().unwrap_or(0), y.copied().unwrap_or(0));
                        let s = (x as u128 + (p - mulmod(lv, y, p)) as u128) % p as u128;
                        (s != 0).then_some(s as u64)
                    });
                }
                None => {
                    let inv = powmod(lv, p - 2, p);
                    for e in &mut row {
                        e.1 = mulmod(e.1, inv, p);
                    }
                    pivots.insert(lead, row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Ok(RankResult {
        rank,
        method: RankMethod::ModularProbabilistic,
        modulus: Some(p),
    })
}

fn group_rows(m: &SparseIntMatrix) -> Vec<Vec<(usize, i64)>> {
    let mut rows: Vec<Vec<(usize, i64)>> = vec![Vec::new(); m.rows()];
    for &(r, c, v) in m.entries() {
        rows[r].push((c, v));
    }
    rows
}

/// Removes singleton rows and columns until none remain. Returns the rank
/// they account for and the remaining rows, with columns relabeled densely
/// in order of increasing column count.
fn peel(m: &SparseIntMatrix) -> (usize, Vec<Vec<(usize, i64)>>) {
    let rows = group_rows(m);
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m.cols()];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c].push(r);
        }
    }
    let mut row_alive = vec![true; m.rows()];
    let mut col_alive = vec![true; m.cols()];
    let mut row_count: Vec<usize> = rows.iter().map(Vec::len).collect();
    let mut col_count: Vec<usize> = col_rows.iter().map(Vec::len).collect();

    enum Item {
        Row(usize),
        Col(usize),
    }
    let mut queue: Vec<Item> = Vec::new();
    queue.extend((0..m.rows()).filter(|&r| row_count[r] == 1).map(Item::Row));
    queue.extend((0..m.cols()).filter(|&c| col_count[c] == 1).map(Item::Col));

    let mut peeled = 0;
    while let Some(item) = queue.pop() {
        let (r, c) = match item {
            Item::Row(r) => {
                if !row_alive[r] || row_count[r] != 1 {
                    continue;
                }
                let c = rows[r]
                    .iter()
                    .map(|e| e.0)
                    .find(|&c| col_alive[c])
                    .expect("live entry");
                (r, c)
            }
            Item::Col(c) => {
                if !col_alive[c] || col_count[c] != 1 {
                    continue;
                }
                let r = *col_rows[c]
                    .iter()
                    .find(|&&r| row_alive[r])
                    .expect("live entry");
                (r, c)
            }
        };
        peeled += 1;
        row_alive[r] = false;
        col_alive[c] = false;
        for &(c2, _) in &rows[r] {
            if col_alive[c2] {
                col_count[c2] -= 1;
                if col_count[c2] == 1 {
                    queue.push(Item::Col(c2));
                }
            }
        }
        for &r2 in &col_rows[c] {
            if row_alive[r2] {
                row_count[r2] -= 1;
                if row_count[r2] == 1 {
                    queue.push(Item::Row(r2));
                }
            }
        }
    }

    let mut live_cols: Vec<usize> = (0..m.cols())
        .filter(|&c| col_alive[c] && col_count[c] > 0)
        .collect();
    live_cols.sort_by_key(|&c| (col_count[c], c));
    let mut relabel = vec![usize::MAX; m.cols()];
    for (new, &old) in live_cols.iter().enumerate() {
        relabel[old] = new;
    }
    let mut core: Vec<Vec<(usize, i64)>> = rows
        .into_iter()
        .enumerate()
        .filter(|&(r, _)| row_alive[r])
        .map(|(_, row)| {
            let mut row: Vec<(usize, i64)> = row
                .into_iter()
                .filter(|&(c, _)| col_alive[c])
                .map(|(c, v)| (relabel[c], v))
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            row
        })
        .filter(|row| !row.is_empty())
        .collect();
    core.sort_by_key(|row| (row.len(), row[0].0));
    (peeled, core)
}

/// Integer arithmetic needed by fraction-free elimination. Operations
/// return `None` when the representation would overflow.
trait Coeff: Clone + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
    /// `a * x - b * y`
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        *self / *d
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        let v = *a as i128 * *x as i128 - *b as i128 * *y as i128;
        // Keep headroom so that negation and gcd never overflow.
        (v.unsigned_abs() < (1u128 << 62)).then_some(v as i64)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
}

/// Sparse merge of two sorted rows with `f` applied per column (a missing
/// entry is passed as `None`); columns where `f` returns `None` are dropped.
fn merge<A, B, T>(
    a: &[(usize, A)],
    b: &[(usize, B)],
    mut f: impl FnMut(Option<&A>, Option<&B>) -> Option<T>,
) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        let col = ca.min(cb);
        let x = (ca == col).then(|| &a[i].1);
        let y = (cb == col).then(|| &b[j].1);
        i += x.is_some() as usize;
        j += y.is_some() as usize;
        if let Some(v) = f(x, y) {
            out.push((col, v));
        }
    }
    out
}

/// Rank of the rows by insertion into a row-echelon pivot table keyed by
/// leading column, reducing fraction-free (`a*row - b*pivot` with
/// `a, b` the cofactors of the leading entries' gcd) and dividing out
/// the row content after each step. `None` means an overflow occurred.
fn echelon_rank<T: Coeff>(rows: &[Vec<(usize, i64)>]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    let mut rank = 0;
    for src in rows {
        let mut row: Vec<(usize, T)> = src.iter().map(|&(c, v)| (c, T::from_i64(v))).collect();
        loop {
            let Some((lead, lv)) = row.first().cloned() else {
                break;
            };
            let Some(piv) = pivots.get(&lead) else {
                if lv.is_negative() {
                    for e in &mut row {
                        e.1 = e.1.neg();
                    }
                }
                pivots.insert(lead, row);
                rank += 1;
                break;
            };
            let pv = &piv[0].1;
            let g = pv.gcd(&lv);
            let (a, b) = (pv.div_exact(&g), lv.div_exact(&g));
            let zero = T::from_i64(0);
            let mut overflow = false;
            row = merge(&row, piv, |x, y| {
                match T::lin(&a, x.unwrap_or(&zero), &b, y.unwrap_or(&zero)) {
                    Some(v) if v.is_zero() => None,
                    Some(v) => Some(v),
                    None => {
                        overflow = true;
                        None
                    }
                }
            });
            if overflow {
                return None;
            }
            remove_content(&mut row);
        }
    }
    Some(rank)
}

fn remove_content<T: Coeff>(row: &mut [(usize, T)]) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.clone();
    for e in row.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd(&e.1);
    }
    if g.is_unit() || g.is_zero() {
        return;
    }
    for e in row.iter_mut() {
        e.1 = e.1.div_exact(&g);
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A fixed prime above 2^30 for screening ranks.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

//! Finite simple graphs on vertices `1..=n`, together with the parsers,
//! named families and clique machinery the rest of the crate builds on.
//!
//! Vertices are 1-indexed on every public surface. Internally a vertex `v`
//! occupies bit `v - 1` of a [`VertexSet`].

use std::fmt;

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold (one bit per vertex).
pub const MAX_VERTICES: usize = 64;

/// A subset of `1..=64`, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    /// Builds a set from 1-based vertex ids. Panics on 0 or ids above 64.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut bits = 0u64;
        for v in vertices {
            assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
            bits |= 1 << (v - 1);
        }
        VertexSet(bits)
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        self.0 |= 1 << (v - 1);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Ascending 1-based vertex ids.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v + 1)
            }
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite simple graph on vertices `1..=n`.
///
/// Edges are kept as sorted pairs `(i, j)` with `i < j`, in lexicographic
/// order. That order fixes the order of the edge generators of the
/// associated Lie algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from 1-based edge pairs in any orientation. Duplicate
    /// pairs (including `{i,j}` given as both `(i,j)` and `(j,i)`) collapse.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::InvalidGraph(format!("vertex {w} outside 1..={n}")));
                }
            }
            adj[u - 1] |= 1 << (v - 1);
            adj[v - 1] |= 1 << (u - 1);
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Builds a graph from 0-based adjacency bitmasks. The masks must be
    /// symmetric and loop-free.
    pub(crate) fn from_adjacency(adj: Vec<u64>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for i in 0..n {
            debug_assert_eq!(adj[i] >> i & 1, 0);
            let mut higher = adj[i] & !((2u64 << i).wrapping_sub(1));
            while higher != 0 {
                let j = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                debug_assert_eq!(adj[j] >> i & 1, 1);
                edges.push((i + 1, j + 1));
            }
        }
        Graph { n, edges, adj }
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![0; n])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 1-based sorted pairs in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v
            && (1..=self.n).contains(&u)
            && (1..=self.n).contains(&v)
            && self.adj[u - 1] >> (v - 1) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v - 1])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub(crate) fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    /// `G[S]` with the vertices of `s` relabeled `1..=|s|` in increasing order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph> {
        if !s.is_subset(self.vertices()) {
            return Err(Error::NotASubset { order: self.n });
        }
        Ok(self.induced_unchecked(s.bits()))
    }

    pub(crate) fn induced_unchecked(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = VertexSet(mask).iter().map(|v| v - 1).collect();
        let adj = verts
            .iter()
            .map(|&u| {
                let mut row = 0u64;
                for (b, &w) in verts.iter().enumerate() {
                    if self.adj[u] >> w & 1 == 1 {
                        row |= 1 << b;
                    }
                }
                row
            })
            .collect();
        Graph::from_adjacency(adj)
    }

    /// `g1 + g2`: the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n;
        Graph::new(
            shift + other.n,
            self.edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift))),
        )
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v - 1]` (both 1-based).
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidGraph("permutation length mismatch".into()));
        }
        Graph::new(
            self.n,
            self.edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])),
        )
    }

    /// True when every pair of vertices in `s` is adjacent.
    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.is_subset(self.vertices())
            && s.iter().all(|v| {
                s.difference(VertexSet::from_vertices([v]))
                    .is_subset(self.neighbors(v))
            })
    }

    /// All `k`-vertex cliques, in lexicographic order of their sorted vertex lists.
    pub fn cliques(&self, k: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        if k == 0 || k > self.n {
            return out;
        }
        let mut stack = Vec::with_capacity(k);
        self.extend_cliques(0, u64::MAX, k, &mut stack, &mut out);
        out
    }

    fn extend_cliques(
        &self,
        from: usize,
        candidates: u64,
        k: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if stack.len() == k {
            out.push(VertexSet::from_vertices(stack.iter().map(|v| v + 1)));
            return;
        }
        for v in from..self.n {
            if candidates >> v & 1 == 0 {
                continue;
            }
            if self.n - v < k - stack.len() {
                break;
            }
            stack.push(v);
            self.extend_cliques(v + 1, candidates & self.adj[v], k, stack, out);
            stack.pop();
        }
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> usize {
        self.cliques(3).len()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// The named families used on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Complete,
    Star,
    Path,
    Cycle,
    Empty,
}

impl Family {
    pub fn parse(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "complete" | "k" => Ok(Family::Complete),
            "star" | "s" => Ok(Family::Star),
            "path" | "p" => Ok(Family::Path),
            "cycle" | "c" => Ok(Family::Cycle),
            "empty" | "e" => Ok(Family::Empty),
            _ => Err(Error::UnknownFamily(name.to_string())),
        }
    }
}

/// `K_n`, `S_n` (n + 1 vertices, center 1), `P_n` (n vertices), `C_n`, `nK_1`.
pub fn named(family: Family, n: usize) -> Result<Graph> {
    match family {
        Family::Complete => Graph::new(n, (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)))),
        Family::Star => Graph::new(n + 1, (2..=n + 1).map(|k| (1, k))),
        Family::Path => Graph::new(n, (1..n).map(|i| (i, i + 1))),
        Family::Cycle => {
            if n < 3 {
                return Err(Error::InvalidGraph(format!(
                    "cycle needs at least 3 vertices, got {n}"
                )));
            }
            Graph::new(n, (1..n).map(|i| (i, i + 1)).chain([(1, n)]))
        }
        Family::Empty => Ok(Graph::empty(n)),
    }
}

/// Parses `K5`, `S3`, `P4`, `C5`, `E3` and `+`-joined unions such as `S2+K1`.
/// A leading multiplier is accepted for repeated terms: `3K1` is `K1+K1+K1`.
pub fn parse_named(spec: &str) -> Result<Graph> {
    let bad = |message: &str| Error::GraphSpec {
        spec: spec.to_string(),
        message: message.to_string(),
    };
    let mut acc = Graph::empty(0);
    for term in spec.split('+') {
        let term = term.trim();
        let mult_len = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let (mult, rest) = term.split_at(mult_len);
        let mult: usize = if mult.is_empty() {
            1
        } else {
            mult.parse().map_err(|_| bad("bad multiplier"))?
        };
        let fam_len = rest.chars().take_while(|c| c.is_ascii_alphabetic()).count();
        if fam_len == 0 {
            return Err(bad("missing family letter"));
        }
        let (fam, num) = rest.split_at(fam_len);
        let family = Family::parse(fam)?;
        let n: usize = num
            .parse()
            .map_err(|_| bad("missing or non-integer size"))?;
        let g = named(family, n)?;
        for _ in 0..mult {
            acc = acc.disjoint_union(&g)?;
        }
    }
    Ok(acc)
}

/// Parses the edge-list text format: a first line `n <count>` followed by
/// one `u v` pair per line. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line_no, header) = lines.next().ok_or(Error::EdgeList {
        line: 1,
        message: "empty input".into(),
    })?;
    let mut head = header.split_whitespace();
    if head.next() != Some("n") {
        return Err(Error::EdgeList {
            line: line_no,
            message: "expected header `n <count>`".into(),
        });
    }
    let n: usize = head
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(Error::EdgeList {
            line: line_no,
            message: "vertex count is not an integer".into(),
        })?;
    if head.next().is_some() {
        return Err(Error::EdgeList {
            line: line_no,
            message: "trailing tokens after vertex count".into(),
        });
    }
    let mut edges = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::EdgeList {
                line,
                message: format!("expected `u v`, got `{l}`"),
            });
        }
        let parse = |t: &str| {
            t.parse::<usize>().map_err(|_| Error::EdgeList {
                line,
                message: format!("non-integer token `{t}`"),
            })
        };
        let (u, v) = (parse(toks[0])?, parse(toks[1])?);
        if u == v {
            return Err(Error::EdgeList {
                line,
                message: format!("loop at vertex {u}"),
            });
        }
        if u == 0 || v == 0 || u > n || v > n {
            return Err(Error::EdgeList {
                line,
                message: format!("vertex out of range 1..={n}"),
            });
        }
        edges.push((u, v));
    }
    Graph::new(n, edges)
}

/// Writes the edge-list format read by [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.order());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Encodes a graph in the graph6 short form (at most 62 vertices).
pub fn to_graph6(g: &Graph) -> Result<String> {
    if g.order() > 62 {
        return Err(Error::InvalidGraph(format!(
            "graph6 short form holds at most 62 vertices, got {}",
            g.order()
        )));
    }
    let mut bits = Vec::with_capacity(g.order() * g.order().saturating_sub(1) / 2);
    for j in 1..g.order() {
        for i in 0..j {
            bits.push(g.adj[i] >> j & 1 == 1);
        }
    }
    Ok(graph6_from_bits(g.order(), &bits))
}

pub(crate) fn graph6_from_bits(n: usize, bits: &[bool]) -> String {
    let mut out = String::with_capacity(1 + bits.len().div_ceil(6));
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - k);
            }
        }
        out.push((byte + 63) as char);
    }
    out
}

/// Parses a graph6 string (short form, at most 62 vertices). An optional
/// `>>graph6<<` prefix and surrounding whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let lead = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut offset = lead;
    if let Some(rest) = body.strip_prefix(">>graph6<<") {
        body = rest;
        offset += ">>graph6<<".len();
    }
    let bytes = body.as_bytes();
    let err = |at: usize, message: &str| Error::Graph6 {
        offset: offset + at,
        message: message.to_string(),
    };
    let &first = bytes.first().ok_or_else(|| err(0, "empty input"))?;
    if first == b'~' {
        return Err(err(
            0,
            "long-form headers (more than 62 vertices) are not supported",
        ));
    }
    if !(63..=125).contains(&first) {
        return Err(err(0, "header byte out of range"));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() < 1 + nbytes {
        return Err(err(bytes.len(), "truncated adjacency data"));
    }
    if bytes.len() > 1 + nbytes {
        return Err(err(1 + nbytes, "trailing garbage"));
    }
    let mut adj = vec![0u64; n];
    let mut k = 0usize;
    for (idx, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(1 + idx, "byte out of range"));
        }
        let v = b - 63;
        for bit in 0..6 {
            let set = v >> (5 - bit) & 1 == 1;
            if k < nbits {
                if set {
                    let (i, j) = triangle_position(k);
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            } else if set {
                return Err(err(1 + idx, "nonzero padding bits"));
            }
            k += 1;
        }
    }
    Ok(Graph::from_adjacency(adj))
}

/// Maps a graph6 bit index to its 0-based `(i, j)` pair with `i < j`.
fn triangle_position(k: usize) -> (usize, usize) {
    let mut j = 1;
    while j * (j + 1) / 2 <= k {
        j += 1;
    }
    (k - j * (j - 1) / 2, j)
}

/// An ordered multiset of cliques of a host graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CliqueFamily {
    cliques: Vec<VertexSet>,
}

impl CliqueFamily {
    pub fn new(cliques: Vec<VertexSet>) -> Self {
        CliqueFamily { cliques }
    }

    pub fn empty() -> Self {
        CliqueFamily::default()
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn cliques(&self) -> &[VertexSet] {
        &self.cliques
    }

    /// Union of all member vertex sets.
    pub fn covered(&self) -> VertexSet {
        self.cliques
            .iter()
            .fold(VertexSet::EMPTY, |acc, &c| acc.union(c))
    }

    /// Checks that every member is a clique of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (k, &c) in self.cliques.iter().enumerate() {
            if !g.is_clique(c) {
                return Err(Error::NotAClique { index: k + 1 });
            }
        }
        Ok(())
    }

    /// Parses a JSON list of 1-based vertex lists, e.g. `[[1,2,3],[7,8,9]]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let lists: Vec<Vec<usize>> =
            serde_json::from_str(text).map_err(|e| Error::CliqueSpec(e.to_string()))?;
        let mut cliques = Vec::with_capacity(lists.len());
        for list in lists {
            if let Some(&bad) = list.iter().find(|&&v| v == 0 || v > MAX_VERTICES) {
                return Err(Error::CliqueSpec(format!("vertex {bad} out of range")));
            }
            cliques.push(VertexSet::from_vertices(list));
        }
        Ok(CliqueFamily { cliques })
    }

    pub fn to_json(&self) -> String {
        let lists: Vec<Vec<usize>> = self.cliques.iter().map(|c| c.iter().collect()).collect();
        serde_json::to_string(&lists).expect("vertex lists serialize")
    }
}

//! The bracket of `L(G, Σ)` on its generators, built straight from the
//! graph and the clique family.
//!
//! `[x_i, x_j] = x_ij` for an edge `i < j`, `[y_k, x_i] = |{i} ∩ σ_k| x_i`,
//! `[y_k, x_ij] = |{i, j} ∩ σ_k| x_ij`, every other bracket of generators
//! is zero.

use crate::complex::GeneratorIndex;
use crate::error::Result;
use crate::graph::{CliqueFamily, Graph, VertexSet};

/// Structure constants in the generator order of [`crate::Generators`].
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    basis: Vec<GeneratorIndex>,
    /// `table[a][b]` is `[e_a, e_b]` as sparse `(index, coefficient)` pairs.
    table: Vec<Vec<Vec<(usize, i64)>>>,
}

impl LieAlgebra {
    pub fn new(g: &Graph, sigma: &CliqueFamily) -> Result<Self> {
        sigma.validate(g)?;
        let mut basis: Vec<GeneratorIndex> =
            g.vertices().iter().map(GeneratorIndex::Vertex).collect();
        basis.extend(g.edges().iter().map(|&(i, j)| GeneratorIndex::Edge(i, j)));
        basis.extend((1..=sigma.len()).map(GeneratorIndex::Clique));
        let dim = basis.len();
        let index = |x: GeneratorIndex| basis.binary_search(&x).expect("generator in basis");
        let mut table = vec![vec![Vec::new(); dim]; dim];
        let mut set = |a: usize, b: usize, c: usize, coef: i64| {
            table[a][b] = vec![(c, coef)];
            table[b][a] = vec![(c, -coef)];
        };
        for &(i, j) in g.edges() {
            let e = index(GeneratorIndex::Edge(i, j));
            set(
                index(GeneratorIndex::Vertex(i)),
                index(GeneratorIndex::Vertex(j)),
                e,
                1,
            );
        }
        for (k, clique) in sigma.cliques().iter().enumerate() {
            let y = index(GeneratorIndex::Clique(k + 1));
            for i in clique.iter() {
                let x = index(GeneratorIndex::Vertex(i));
                set(y, x, x, 1);
            }
            for &(i, j) in g.edges() {
                let w = clique.intersection(VertexSet::from_vertices([i, j])).len() as i64;
                if w != 0 {
                    let e = index(GeneratorIndex::Edge(i, j));
                    set(y, e, e, w);
                }
            }
        }
        Ok(LieAlgebra { basis, table })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GeneratorIndex] {
        &self.basis
    }

    /// `[e_a, e_b]` as a dense coefficient vector.
    pub fn bracket(&self, a: usize, b: usize) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for &(c, v) in &self.table[a][b] {
            out[c] += v;
        }
        out
    }

    fn bracket_vec(&self, u: &[i64], b: usize) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (a, &ua) in u.iter().enumerate().filter(|(_, &x)| x != 0) {
            for &(c, v) in &self.table[a][b] {
                out[c] += ua * v;
            }
        }
        out
    }

    /// `[[a, b], c] + [[b, c], a] + [[c, a], b]`.
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> Vec<i64> {
        let t1 = self.bracket_vec(&self.bracket(a, b), c);
        let t2 = self.bracket_vec(&self.bracket(b, c), a);
        let t3 = self.bracket_vec(&self.bracket(c, a), b);
        t1.iter()
            .zip(&t2)
            .zip(&t3)
            .map(|((x, y), z)| x + y + z)
            .collect()
    }
}

/// True iff the Jacobi identity holds on every triple of generators.
pub fn jacobi_check(g: &Graph, sigma: &CliqueFamily) -> Result<bool> {
    let lie = LieAlgebra::new(g, sigma)?;
    let n = lie.dim();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if lie.jacobiator(a, b, c).iter().any(|&v| v != 0) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, parse_edge_list, Family};

    #[test]
    fn example_brackets() {
        let g = parse_edge_list("n 4\n1 2\n1 3\n2 3\n3 4").unwrap();
        let sigma = CliqueFamily::from_json("[[1,2],[1,2],[1,2,3]]").unwrap();
        let lie = LieAlgebra::new(&g, &sigma).unwrap();
        assert_eq!(lie.dim(), 11);
        let pos = |x| lie.basis().iter().position(|&b| b == x).unwrap();
        use GeneratorIndex::*;
        for k in 1..=3 {
            let mut want = [0i64; 11];
            want[pos(Vertex(1))] = 1;
            assert_eq!(
                lie.bracket(pos(Vertex(1)), pos(Clique(k))),
                want.iter().map(|v| -v).collect::<Vec<_>>()
            );
        }
        let mut want = vec![0i64; 11];
        want[pos(Edge(1, 3))] = 2;
        assert_eq!(lie.bracket(pos(Clique(3)), pos(Edge(1, 3))), want);
        want[pos(Edge(1, 3))] = 1;
        assert_eq!(lie.bracket(pos(Clique(1)), pos(Edge(1, 3))), want);
        assert!(jacobi_check(&g, &sigma).unwrap());
    }

    #[test]
    fn jacobi_on_small_families() {
        let k3 = named(Family::Complete, 3).unwrap();
        assert!(jacobi_check(&k3, &CliqueFamily::new(k3.cliques(2))).unwrap());
        assert!(jacobi_check(&named(Family::Star, 4).unwrap(), &CliqueFamily::empty()).unwrap());
    }

    #[test]
    fn a_broken_table_is_detected() {
        let k3 = named(Family::Complete, 3).unwrap();
        let mut lie = LieAlgebra::new(&k3, &CliqueFamily::empty()).unwrap();
        // [x_12, x_3] = x_1 breaks Jacobi on (x1, x2, x3).
        lie.table[3][2] = vec![(0, 1)];
        lie.table[2][3] = vec![(0, -1)];
        assert!(lie.jacobiator(0, 1, 2).iter().any(|&v| v != 0));
    }
}

//! Exact cohomology of the nilpotent Lie algebras attached to graphs and of
//! their solvable extensions by families of cliques.

pub mod cache;
pub mod canon;
pub mod census;
pub mod closed_forms;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod graph;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod names;
pub mod verify;

pub use cache::{CacheStats, EssentialCache};
pub use canon::{canonical_code, isomorphism_classes, CanonicalCode};
pub use census::{census, count_induced, Census, CensusEntry};
pub use cohomology::{
    betti, betti_via_decomposition, essential_betti, ggi_betti_reduced, ggi_reduce, kunneth,
    BettiTable, Engine, EssentialTable, Strategy,
};
pub use complex::{GeneratorIndex, Generators, Monomial};
pub use error::{Error, Result};
pub use graph::{named, parse_edge_list, parse_graph6, CliqueFamily, Family, Graph, VertexSet};
pub use lie::{jacobi_check, LieAlgebra};
pub use linalg::{rank_exact, rank_modular, RankMethod, RankResult};
pub use matrix::SparseIntMatrix;
pub use verify::{run_suite, Suite, SuiteReport};

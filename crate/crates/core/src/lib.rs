//! Exact maximum k-plex search parameterized by the degeneracy gap.
//!
//! A k-plex is a vertex set in which every member is adjacent to all but at
//! most `k - 1` other members. [`maple_solve`] finds a largest one.
//!
//! ```
//! use kplexer::{maple_solve, Graph, SolverConfig, Status};
//!
//! let g = Graph::cycle(4);
//! let r = maple_solve(&g, 2, &SolverConfig::default());
//! assert_eq!(r.status, Status::Optimal);
//! assert_eq!(r.omega_k, Some(4));
//! ```

pub mod bench;
pub mod bitset;
pub mod dbdd;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod ordering;
pub mod reduce;
pub mod solver;

pub use dbdd::{dbdd_solve, DbddInstance, SearchStats};
pub use error::{GraphError, Result};
pub use graph::{Graph, GraphFormat, Vertex};
pub use ordering::{community_degeneracy_ordering, degeneracy_ordering, greedy_lower_bound, EdgeOrdering, VertexOrdering};
pub use solver::{kplex_com_decide, kplex_decide, maple_solve, SolveResult, SolverConfig, Status, Strategy, SubsetMode};

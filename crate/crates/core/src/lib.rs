//! Degree-based topological indices (first/second Zagreb, atom-bond
//! connectivity) and metric dimension for trees, with bounds relating them
//! and an exhaustive verifier over all free trees of small order.
//!
//! ```
//! use treeverify::{graph::parse_edge_list, invariants, metric};
//!
//! let star = parse_edge_list("0 1\n1 2\n1 3").unwrap();
//! assert_eq!(invariants::first_zagreb(&star), 12);
//! assert_eq!(metric::metric_dimension_tree(&star).eps, 2);
//! ```

pub mod bounds;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod metric;
pub mod verify;

pub use enumerate::{canonical_code, CanonicalCode};
pub use error::{Error, ParseError, Result};
pub use graph::{parse_edge_list, Tree};

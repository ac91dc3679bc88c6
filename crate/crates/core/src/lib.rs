//! DNNF circuits for linear orders and top-k orders.
//!
//! The crate is split along the lines of the experiments it supports:
//!
//! * [`circuit`] holds the NNF/DNNF representation together with structural
//!   checks, evaluation, conditioning, counting, enumeration and the `.nnf`
//!   and DOT formats.
//! * [`encodings`] builds the explicit circuits for `lin_n` and
//!   `lintop_{n,k}`, the transitivity CNF, and the codecs between orders and
//!   assignments over pairwise-preference variables.
//! * [`oracle`] is brute-force ground truth. It sweeps truth tables and never
//!   touches the counting code in [`circuit`].
//! * [`rectangles`] contains partitions, edge colourings, triangle patterns,
//!   combinatorial rectangles and covers, the exact maximum-rectangle search,
//!   cover extraction from DNNF circuits, and the experiment drivers built on
//!   top of them.

pub mod assignment;
pub mod circuit;
pub mod encodings;
pub mod error;
pub mod guard;
pub mod oracle;
pub mod rectangles;

pub use assignment::Assignment;
pub use circuit::{Circuit, CircuitBuilder, Lit, Node, NodeId, SizeReport};
pub use error::{Error, Result};
pub use guard::SweepGuard;

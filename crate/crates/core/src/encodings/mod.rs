//! Pairwise-preference encodings of linear and top-k orders.

mod builders;
mod cnf;
mod orders;
mod pairs;

pub use builders::{build_lin_circuit, build_lintop_circuit, GateTally, OrderCircuit};
pub use cnf::{encode_lin_cnf, CnfFormula};
pub use orders::{
    all_linear_orders, all_topk_orders, assignment_to_order, order_to_assignment,
    topk_to_assignment, LinearOrder, TopKOrder,
};
pub use pairs::{PairMode, PairVarMap};

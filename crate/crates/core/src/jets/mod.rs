//! Closed-form expressions and their order-3 Taylor jets.

mod expr;
mod fd;
mod jet;
mod sexpr;

pub use expr::{eval, eval_jet, Expr, Power};
pub use fd::{fd_oracle, fd_step};
pub use jet::{Jet3, Layout, MAX_DIM};
pub use sexpr::{parse_expr, to_sexpr};

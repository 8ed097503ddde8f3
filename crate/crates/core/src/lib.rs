//! Exact motivic generating functions for stacks of 0-dimensional coherent
//! sheaves and Quot schemes of points, together with brute-force groupoid point
//! counts over prime fields that serve as independent ground truth.
//!
//! * [`lring`]: the field `Q(L)` of rational functions in the Lefschetz class.
//! * [`series`]: truncated power series in `t` over `Q(L)`.
//! * [`power`]: plethystic `Exp`/`Log` and the power structure `A(t)^m`.
//! * [`formulas`]: builders for the named generating functions and identity checks.
//! * [`oracle`]: exhaustive matrix enumeration over `F_p`.

pub mod error;
pub mod formulas;
pub mod lring;
pub mod oracle;
pub mod power;
pub mod series;

pub use error::{MotiveError, Result};
pub use lring::{gl_class, IntPoly, MClass};
pub use series::MSeries;

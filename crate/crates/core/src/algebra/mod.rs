//! Exact and floating arithmetic: coefficients, polynomials, rational functions.

pub mod bipoly;
pub mod birat;
pub mod coeff;
pub mod field;
pub mod jet;
pub mod linsolve;
pub mod poly;
pub mod rat;
pub mod series;

pub use bipoly::BiPoly;
pub use birat::{BiRat, Series2};
pub use coeff::{Coeff, FieldConfig, Gauss, Mode, Surd};
pub use field::{DiffField, FieldVec, VecBiRat};
pub use jet::Jet;
pub use poly::{Poly, Var};
pub use rat::{Laurent, Point, Rat, ResidueObstruction};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("radicand {0} is not square-free")]
    BadRadicand(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("gcd is not defined for floating coefficients")]
    FloatGcd,
    #[error("evaluation at a pole")]
    Pole,
    #[error("zero function has no leading term")]
    ZeroFunction,
    #[error("requested order {order} below leading order {leading}")]
    OrderBelowLeading { order: i32, leading: i32 },
    #[error("dimension mismatch")]
    DimensionMismatch,
}

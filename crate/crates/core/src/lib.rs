//! Willmore surfaces from holomorphic null curves: superconformal lifts,
//! conformal Gauss maps, adjoint transforms, end analysis and Gram systems.

pub mod algebra;
pub mod adjoint;
pub mod ends;
pub mod error;
pub mod examples;
pub mod gram;
pub mod moebius;
pub mod numeric;
pub mod surface;

pub use algebra::{AlgebraError, BiPoly, BiRat, Coeff, FieldConfig, FieldVec, Mode, Point, Poly, Rat, Var, VecBiRat};
pub use error::{Error, Result};
pub use surface::{Chart, MinimalSurface, WeightedVec};

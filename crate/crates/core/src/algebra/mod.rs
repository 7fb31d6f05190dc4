//! Exact symbolic algebra of the bosonic ladder operators.

mod expr;
mod fixed_space;
mod matrix;
mod parser;
mod poly;
pub mod scalar;

pub use expr::{ExprNode, Symbol};
pub use fixed_space::{
    family_is_well_ordered, family_p, family_q, luders_fixed_space, FixedSpace,
    LuedersFamilyCoefficients, MAX_FIXED_DEGREE,
};
pub use matrix::{to_matrix, MAX_MATRIX_DEGREE};
pub use parser::{parse_expression, ParseError, MAX_DEPTH, MAX_EXPONENT};
pub use poly::{
    anti_normal_order, antinormal_monomial_to_normal, is_well_ordered, luders_symbolic,
    normal_monomial_to_antinormal, normal_order, reorder_coefficient, AntiNormalPolynomial,
    Monomial, NormalPolynomial, PhaseSpacePolynomial,
};
pub use scalar::Scalar;

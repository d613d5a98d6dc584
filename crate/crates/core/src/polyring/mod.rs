//! Sparse exact polynomials over the variables `x, y, z, t, q` and the
//! symmetric-function toolkit built on them.

mod coeff;
mod int;
mod parse;
mod poly;
mod symmetric;
mod var;

pub use coeff::{rational, Coeff, Rational};
pub use int::Int;
pub use parse::{PolyRecord, TermRecord, POLY_SCHEMA};
pub use poly::{format_factored, to_alpha_coordinates, Compact, Poly, QPoly};
pub use symmetric::{complete, elementary, q_param, quantum_elementary, QMode};
pub use var::{Family, Monomial, Var};

/// Divided difference `∂_ij` in one alphabet: `(f - f^{t_ij}) / (v_i - v_j)`.
pub fn divided_difference<C: Coeff>(f: &Poly<C>, i: usize, j: usize, family: Family) -> Poly<C> {
    f.divided_difference(Var::of(family, i), Var::of(family, j))
}

pub fn vars(family: Family, indices: impl IntoIterator<Item = usize>) -> Vec<Var> {
    indices.into_iter().map(|i| Var::of(family, i)).collect()
}

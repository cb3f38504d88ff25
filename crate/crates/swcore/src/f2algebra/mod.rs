//! Graded polynomial algebra over F2.

pub mod algebra;
pub mod groebner;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod ring;
pub mod steenrod;
pub mod subalgebra;
pub mod text;

pub use algebra::{kernel_of_map, monomials_of_degree, DegreeBasis, PresentedAlgebra};
pub use groebner::{buchberger, ideal_equal, minimal_generators, GroebnerBasis, Limits};
pub use linalg::{BitVec, Echelon};
pub use module::{combine, syzygies};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::Poly;
pub use ring::{Ring, TermOrder, Variable};
pub use steenrod::{binom_mod2, SqTable};
pub use subalgebra::{minimal_algebra_generators, GradedSpan};
pub use text::{format_poly, parse_poly};

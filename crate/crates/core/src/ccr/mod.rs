//! Exact symbolic Heisenberg algebra extended by its commutant, the
//! indefinite Gaussian functional ω, and the Tomita–Takesaki maps.

pub mod algebra;
pub mod expr;
pub mod modular;
pub mod moments;
pub mod state;
pub mod transforms;

pub use algebra::{normal_order, normal_order_bounded, AlgebraElement, Generator, Monomial, DEFAULT_WORD_BOUND};
pub use expr::parse_expr;
pub use modular::{modular_apply, tomita, ModularMap};
pub use moments::{moment_matrix, weyl_moment_partial_sum, MomentMatrix};
pub use state::{gns_inner, omega, omega_word, CovarianceTable, GnsVector};
pub use transforms::{eta_conjugate, evolve, scale_transform};

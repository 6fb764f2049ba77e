//! Rank-metric coding over GF(q^n)/GF(q): Gabidulin and twisted Gabidulin
//! codes with an interpolation-based decoder built on Dickson-matrix
//! recurrences and a Berlekamp-Massey-like solver, plus brute-force oracles
//! and a Monte-Carlo simulation harness at desk scale.
//!
//! ```
//! use rankdec::gf::FieldCtx;
//! use rankdec::gabidulin::CodeParams;
//! use rankdec::linpoly::{random_error_poly, LinPoly};
//!
//! let ctx = FieldCtx::standard(2, 8).unwrap();
//! let code = CodeParams::with_power_basis(ctx, 4).unwrap();
//! let msg = LinPoly::from_coeffs(code.ctx(), vec![code.ctx().alpha()]);
//! let cw = code.encode(&msg).unwrap();
//! let e = random_error_poly(code.ctx(), 2, 7).unwrap();
//! let rx: Vec<_> = cw
//!     .iter()
//!     .zip(code.basis())
//!     .map(|(c, b)| code.ctx().add(c, &e.eval(code.ctx(), b)))
//!     .collect();
//! let out = code.decode(&rx).unwrap();
//! assert_eq!(out.message, msg);
//! assert_eq!(out.error, e);
//! ```

pub mod gabidulin;
pub mod gf;
pub mod harness;
pub mod linpoly;
pub mod rng;
pub mod twisted;

pub use gabidulin::{bm_solve, reconstruct_error_poly, BmState, CodeParams, DecodeOutcome};
pub use gf::{Fe, FieldCtx, GfError};
pub use linpoly::{dickson, moore, random_error_poly, rank_decompose, LinPoly};
pub use rng::SplitMix64;
pub use twisted::{
    build_equations, build_system, p_of_a_roots, solve_dim2_system, trinomial_roots, TwistedParams,
    TwistedSystem,
};

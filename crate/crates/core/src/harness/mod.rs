//! Rank-error channel, brute-force oracles and the Monte-Carlo simulator.

pub mod oracle;
pub mod sim;

pub use oracle::{min_distance, oracle_decode, HarnessError, OracleResult, RankCode};
pub use sim::{simulate, write_csv, TrialRecord};

use crate::gf::Fe;
use crate::linpoly::{random_error_poly, LinPolyError};

/// Add a rank-t error to a codeword: the error vector evaluates a seeded
/// rank-t polynomial on the code's evaluation basis, so its vector rank is
/// exactly t. The same seed reproduces the same error.
pub fn inject_error<C: RankCode>(
    code: &C,
    codeword: &[Fe],
    t: usize,
    seed: u64,
) -> Result<Vec<Fe>, LinPolyError> {
    let ctx = code.ctx();
    let e = random_error_poly(ctx, t, seed)?;
    Ok(codeword
        .iter()
        .zip(code.basis())
        .map(|(c, b)| ctx.add(c, &e.eval(ctx, b)))
        .collect())
}

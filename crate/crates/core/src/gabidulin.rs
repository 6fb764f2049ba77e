//! Gabidulin code encoder and the interpolation-based decoder: cached Moore
//! inverse, a Berlekamp-Massey-like recurrence solver over Frobenius twists,
//! and Dickson-recurrence error reconstruction.
//!
//! Decoding pipeline: interpolate h = f + g from the received word, read off
//! the high coefficients of the error polynomial g (the message part has
//! q-degree < k), solve for the connection polynomial of the Dickson
//! recurrence of g, then roll the recurrence backwards to recover the rest
//! of g. The message is h - g. Errors of rank t with 2t <= n - k are always
//! recovered.

use thiserror::Error;

use crate::gf::linalg::{mat_inv_gfqn, mat_vec_gfqn};
use crate::gf::{Fe, FieldCtx, GfError};
use crate::linpoly::LinPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("dimension k={k} out of range for n={n}")]
    InvalidDimension { k: usize, n: usize },
    #[error("evaluation points are not a GF(q)-basis")]
    BasisNotFree,
    #[error("message coefficient at index {index} must be zero (q-degree < {k})")]
    CoefficientOutOfRange { index: usize, k: usize },
    #[error("expected a word of length {expected}, got {got}")]
    InvalidLength { expected: usize, got: usize },
    #[error("decoding failed: error rank exceeds the unique decoding radius")]
    DecodeFailure(Box<DecodeOutcome>),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// Result of a decode: the recovered message polynomial (q-degree < k), the
/// error polynomial, the estimated error rank and a verification flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub message: LinPoly,
    pub error: LinPoly,
    pub t_est: usize,
    pub ok: bool,
}

/// Gabidulin code parameters: field, dimension k, evaluation basis, and the
/// cached inverse of the interpolation Moore matrix. Immutable and shareable;
/// decoding is a pure function of (params, received).
#[derive(Debug, Clone)]
pub struct CodeParams {
    ctx: FieldCtx,
    k: usize,
    basis: Vec<Fe>,
    u_inv: Vec<Vec<Fe>>,
}

impl CodeParams {
    /// Build parameters and cache the interpolation inverse. The basis must
    /// consist of n GF(q)-independent elements and 1 <= k <= n.
    pub fn new(ctx: FieldCtx, k: usize, basis: Vec<Fe>) -> Result<Self, CodeError> {
        let n = ctx.degree();
        if k == 0 || k > n {
            return Err(CodeError::InvalidDimension { k, n });
        }
        if basis.len() != n || crate::gf::fe_vector_rank(&ctx, &basis) != n {
            return Err(CodeError::BasisNotFree);
        }
        // U[i][j] = basis[i]^(q^j); invertible because the basis is free.
        let u: Vec<Vec<Fe>> = basis
            .iter()
            .map(|b| (0..n).map(|j| ctx.frobenius(b, j as i64)).collect())
            .collect();
        let u_inv = mat_inv_gfqn(&ctx, &u)?;
        Ok(CodeParams {
            ctx,
            k,
            basis,
            u_inv,
        })
    }

    /// Parameters over the power basis (1, alpha, ..., alpha^(n-1)).
    pub fn with_power_basis(ctx: FieldCtx, k: usize) -> Result<Self, CodeError> {
        let basis = (0..ctx.degree()).map(|j| ctx.basis_element(j)).collect();
        Self::new(ctx, k, basis)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.ctx.degree()
    }

    pub fn basis(&self) -> &[Fe] {
        &self.basis
    }

    /// Minimum distance n - k + 1 of the (MRD) code.
    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    /// Largest error rank with 2t <= n - k.
    pub fn radius(&self) -> usize {
        (self.n() - self.k) / 2
    }

    /// Evaluate the message polynomial on the basis: c_i = f(alpha_i).
    /// The message must have q-degree < k.
    pub fn encode(&self, f: &LinPoly) -> Result<Vec<Fe>, CodeError> {
        for (i, c) in f.coeffs().iter().enumerate().skip(self.k) {
            if !c.is_zero() {
                return Err(CodeError::CoefficientOutOfRange {
                    index: i,
                    k: self.k,
                });
            }
        }
        Ok(self.basis.iter().map(|b| f.eval(&self.ctx, b)).collect())
    }

    /// The unique h in L_n with h(alpha_i) = received_i, computed from the
    /// cached Moore inverse. When received = encode(f) + e, h = f + g where
    /// g is the error polynomial interpolating e.
    pub fn interpolate(&self, received: &[Fe]) -> Result<LinPoly, CodeError> {
        if received.len() != self.n() {
            return Err(CodeError::InvalidLength {
                expected: self.n(),
                got: received.len(),
            });
        }
        let coeffs = mat_vec_gfqn(&self.ctx, &self.u_inv, received);
        Ok(LinPoly::from_coeffs(&self.ctx, coeffs))
    }

    /// Decode a received word. Succeeds whenever the true error rank t
    /// satisfies 2t <= n - k; a verified outcome is returned, otherwise
    /// `CodeError::DecodeFailure` carrying the unverified diagnostics.
    pub fn decode(&self, received: &[Fe]) -> Result<DecodeOutcome, CodeError> {
        let ctx = &self.ctx;
        let n = self.n();
        let k = self.k;
        let h = self.interpolate(received)?;

        // known high coefficients of g (message part has q-degree < k)
        let known = &h.coeffs()[k..];
        if known.iter().all(Fe::is_zero) {
            // no error visible: h is the message
            return Ok(DecodeOutcome {
                message: h,
                error: LinPoly::zero(ctx),
                t_est: 0,
                ok: true,
            });
        }

        // s_m = u_{n-1-m} with u_i = g_i^(q^(n-i))
        let s: Vec<Fe> = (0..n - k)
            .map(|m| {
                let i = n - 1 - m;
                ctx.frobenius(&h.coeffs()[i], (n - i) as i64)
            })
            .collect();
        let bm = bm_solve(ctx, &s);
        let g = reconstruct_error_poly(ctx, known, &bm.lambda, k);
        let mut message = h.sub(ctx, &g);
        // indices >= k cancel exactly by construction
        debug_assert!(message.coeffs()[k..].iter().all(Fe::is_zero));
        for i in k..n {
            message.set_coeff(i, ctx.zero());
        }

        let t_est = bm.register_len;
        let rank_g = g.rank(ctx);
        let reencode_ok = self
            .encode(&message)
            .map(|cw| {
                cw.iter()
                    .zip(received)
                    .zip(self.basis.iter())
                    .all(|((c, r), b)| ctx.add(c, &g.eval(ctx, b)) == *r)
            })
            .unwrap_or(false);
        let ok = reencode_ok && rank_g == t_est && 2 * rank_g <= n - k;
        let outcome = DecodeOutcome {
            message,
            error: g,
            t_est,
            ok,
        };
        if outcome.ok {
            Ok(outcome)
        } else {
            Err(CodeError::DecodeFailure(Box::new(outcome)))
        }
    }
}

// ---------------------------------------------------------------------------
// Berlekamp-Massey over Frobenius twists
// ---------------------------------------------------------------------------

/// Final state of the recurrence solver: the connection polynomial (with
/// constant term 1), the auxiliary polynomial, the register length and the
/// number of symbols consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BmState {
    pub lambda: LinPoly,
    pub b: LinPoly,
    pub register_len: usize,
    pub iterations: usize,
}

/// Find the minimal-length twisted linear recurrence generating `s`:
/// returns Lambda with lambda_0 = 1 and register length L such that
/// s_i + sum_{j=1..L} lambda_j s_{i-j}^(q^j) = 0 for all L <= i < s.len().
///
/// The update uses the discrepancy Delta_i, shifts the auxiliary polynomial
/// via x^q-composition, and swaps it for the previous connection polynomial
/// when 2L <= i. The whole input is consumed; a zero sequence yields
/// Lambda = x with L = 0.
pub fn bm_solve(ctx: &FieldCtx, s: &[Fe]) -> BmState {
    let mut lambda = LinPoly::x(ctx);
    let mut b = LinPoly::x(ctx);
    let mut l = 0usize;
    for i in 0..s.len() {
        // Delta_i = s_i + sum_{j=1..L} lambda_j s_{i-j}^(q^j); j <= L <= i
        let mut delta = s[i].clone();
        for j in 1..=l {
            let lam = lambda.coeff(j);
            if lam.is_zero() {
                continue;
            }
            let term = ctx.mul(lam, &ctx.frobenius(&s[i - j], j as i64));
            delta = ctx.add(&delta, &term);
        }
        let shifted = compose_xq(ctx, &b);
        let next_lambda = lambda.sub(ctx, &shifted.scale(ctx, &delta));
        if delta.is_zero() || 2 * l > i {
            b = shifted;
        } else {
            let dinv = ctx.inv(&delta).expect("nonzero discrepancy");
            b = lambda.scale(ctx, &dinv);
            l = i + 1 - l;
        }
        lambda = next_lambda;
    }
    debug_assert_eq!(lambda.coeff(0), &ctx.one());
    BmState {
        lambda,
        b,
        register_len: l,
        iterations: s.len(),
    }
}

/// x^q composed with g: indices shift up one (cyclically) and coefficients
/// are raised to the q-th power.
fn compose_xq(ctx: &FieldCtx, g: &LinPoly) -> LinPoly {
    let n = ctx.degree();
    let mut out = LinPoly::zero(ctx);
    for j in 0..n {
        let c = g.coeff(j);
        if !c.is_zero() {
            out.set_coeff((j + 1) % n, ctx.frobenius(c, 1));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Dickson-recurrence reconstruction
// ---------------------------------------------------------------------------

/// Recover the low coefficients of the error polynomial from its known tail
/// `known = (g_k, ..., g_{n-1})` and the connection polynomial. For r from
/// k-1 down to 0, the Dickson column at j = (n - r) mod n gives
/// g_r = T^(q^r) with T = -sum_{i=1..t} lambda_i g_{r+i}^(q^j); every index
/// r + i referenced is already known. Returns the full g.
pub fn reconstruct_error_poly(ctx: &FieldCtx, known: &[Fe], lambda: &LinPoly, k: usize) -> LinPoly {
    let n = ctx.degree();
    debug_assert_eq!(known.len(), n - k);
    let t = lambda.q_degree().unwrap_or(0);
    assert!(t <= n - k, "connection length exceeds known run");
    let mut g = vec![ctx.zero(); n];
    g[k..].clone_from_slice(known);
    for r in (0..k).rev() {
        let j = ((n - r) % n) as i64;
        let mut acc = ctx.zero();
        for i in 1..=t {
            let lam = lambda.coeff(i);
            if lam.is_zero() {
                continue;
            }
            let term = ctx.mul(lam, &ctx.frobenius(&g[r + i], j));
            acc = ctx.add(&acc, &term);
        }
        g[r] = ctx.frobenius(&ctx.neg(&acc), r as i64);
    }
    LinPoly::from_coeffs(ctx, g)
}

//! Gaussian elimination over GF(q) and GF(q^n) with deterministic pivoting
//! (leftmost column first, lowest row index breaks ties), so ranks, kernels
//! and inverses are bit-reproducible across runs.

use super::{s_inv, s_mul, s_sub, Fe, FieldCtx, GfError};

/// The elimination routines are written once against this trait and
/// instantiated for base-field scalars and extension-field elements.
pub(crate) trait EntryOps {
    type El: Clone + PartialEq;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Self::El;
}

pub(crate) struct GfqOps {
    pub q: u32,
}

impl EntryOps for GfqOps {
    type El = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        s_sub(self.q, *a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        s_mul(self.q, *a, *b)
    }
    fn inv(&self, a: &u32) -> u32 {
        s_inv(self.q, *a)
    }
}

impl EntryOps for &FieldCtx {
    type El = Fe;
    fn zero(&self) -> Fe {
        FieldCtx::zero(self)
    }
    fn one(&self) -> Fe {
        FieldCtx::one(self)
    }
    fn is_zero(&self, a: &Fe) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        FieldCtx::sub(self, a, b)
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        FieldCtx::mul(self, a, b)
    }
    fn inv(&self, a: &Fe) -> Fe {
        FieldCtx::inv(self, a).expect("pivot is nonzero")
    }
}

/// Reduced row echelon form in place. Returns the pivot column indices.
pub(crate) fn rref<O: EntryOps>(ops: &O, m: &mut [Vec<O::El>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let piv = (rank..rows).find(|&r| !ops.is_zero(&m[r][col]));
        let Some(piv) = piv else { continue };
        m.swap(rank, piv);
        let inv = ops.inv(&m[rank][col]);
        for c in col..cols {
            m[rank][c] = ops.mul(&m[rank][c], &inv);
        }
        for r in 0..rows {
            if r != rank && !ops.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = ops.mul(&factor, &m[rank][c]);
                    m[r][c] = ops.sub(&m[r][c], &delta);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    pivots
}

pub(crate) fn rank_generic<O: EntryOps>(ops: &O, m: &[Vec<O::El>]) -> usize {
    let mut work = m.to_vec();
    rref(ops, &mut work).len()
}

/// Right-kernel basis in free-variable normal form, then reduced so the
/// basis matrix itself is in RREF: deterministic and echelonized.
pub(crate) fn kernel_generic<O: EntryOps>(ops: &O, m: &[Vec<O::El>]) -> Vec<Vec<O::El>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut work = m.to_vec();
    let pivots = rref(ops, &mut work);
    let mut basis = Vec::new();
    let mut piv_iter = 0usize;
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![ops.zero(); cols];
        v[free] = ops.one();
        for (row, &p) in pivots.iter().enumerate() {
            // pivot variable p = -(entry at the free column)
            v[p] = ops.sub(&ops.zero(), &work[row][free]);
        }
        basis.push(v);
        piv_iter += 1;
    }
    let _ = piv_iter;
    // canonicalize the basis itself
    rref(ops, &mut basis);
    basis
}

fn invert_generic<O: EntryOps>(ops: &O, m: &[Vec<O::El>]) -> Result<Vec<Vec<O::El>>, GfError> {
    let n = m.len();
    if n == 0 || m.iter().any(|row| row.len() != n) {
        return Err(GfError::SingularMatrix);
    }
    let mut work: Vec<Vec<O::El>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut ext = row.clone();
            for j in 0..n {
                ext.push(if i == j { ops.one() } else { ops.zero() });
            }
            ext
        })
        .collect();
    let pivots = rref(ops, &mut work);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return Err(GfError::SingularMatrix);
    }
    Ok(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

/// Rank of a matrix over GF(q).
pub fn mat_rank_gfq(q: u32, m: &[Vec<u32>]) -> usize {
    rank_generic(&GfqOps { q }, m)
}

/// Echelonized right-kernel basis of a matrix over GF(q).
pub fn mat_kernel_gfq(q: u32, m: &[Vec<u32>]) -> Vec<Vec<u32>> {
    kernel_generic(&GfqOps { q }, m)
}

/// Rank of a matrix over GF(q^n).
pub fn mat_rank_gfqn(ctx: &FieldCtx, m: &[Vec<Fe>]) -> usize {
    rank_generic(&ctx, m)
}

/// Echelonized right-kernel basis of a matrix over GF(q^n).
pub fn mat_kernel_gfqn(ctx: &FieldCtx, m: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    kernel_generic(&ctx, m)
}

/// Inverse of a square nonsingular matrix over GF(q^n).
pub fn mat_inv_gfqn(ctx: &FieldCtx, m: &[Vec<Fe>]) -> Result<Vec<Vec<Fe>>, GfError> {
    invert_generic(&ctx, m)
}

/// Solve M x = b over GF(q^n) when M is square nonsingular.
#[allow(dead_code)] // test-support: the Gaussian route the solver is checked against
pub(crate) fn mat_solve_gfqn(ctx: &FieldCtx, m: &[Vec<Fe>], b: &[Fe]) -> Result<Vec<Fe>, GfError> {
    let n = m.len();
    let mut work: Vec<Vec<Fe>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut ext = row.clone();
            ext.push(rhs.clone());
            ext
        })
        .collect();
    let pivots = rref(&ctx, &mut work);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return Err(GfError::SingularMatrix);
    }
    Ok(work.into_iter().map(|row| row[n].clone()).collect())
}

/// GF(q)-rank of a set of extension field elements: expand each element into
/// its coordinate row and eliminate over the base field.
pub fn fe_vector_rank(ctx: &FieldCtx, v: &[Fe]) -> usize {
    let rows: Vec<Vec<u32>> = v.iter().map(|e| e.coeffs().to_vec()).collect();
    mat_rank_gfq(ctx.q(), &rows)
}

/// Matrix-vector product over GF(q^n).
pub(crate) fn mat_vec_gfqn(ctx: &FieldCtx, m: &[Vec<Fe>], v: &[Fe]) -> Vec<Fe> {
    m.iter()
        .map(|row| {
            let mut acc = ctx.zero();
            for (a, x) in row.iter().zip(v) {
                acc = ctx.add(&acc, &ctx.mul(a, x));
            }
            acc
        })
        .collect()
}

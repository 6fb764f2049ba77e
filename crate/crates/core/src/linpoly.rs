//! Linearized-polynomial algebra: evaluation, composition, rank, trace
//! decomposition, Dickson and Moore matrices.
//!
//! A linearized polynomial sum f_i x^(q^i) acts as a GF(q)-linear map on
//! GF(q^n). We store all n coefficients densely so Dickson construction and
//! cyclic index arithmetic stay branch-free; composition always reduces
//! exponents mod (x^(q^n) - x).

use thiserror::Error;

use crate::gf::linalg::{kernel_generic, mat_rank_gfq, mat_rank_gfqn, rref, GfqOps};
use crate::gf::{fe_vector_rank, Fe, FieldCtx};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinPolyError {
    #[error("requested rank {t} exceeds extension degree {n}")]
    InvalidRank { t: usize, n: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Linearized polynomial sum_i f_i x^(q^i), dense coefficient vector of
/// length exactly n over GF(q^n).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinPoly {
    coeffs: Vec<Fe>,
}

impl LinPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        LinPoly {
            coeffs: vec![ctx.zero(); ctx.degree()],
        }
    }

    /// The identity map x (= x^(q^0)).
    pub fn x(ctx: &FieldCtx) -> Self {
        let mut p = Self::zero(ctx);
        p.coeffs[0] = ctx.one();
        p
    }

    /// The trace map: all coefficients 1.
    pub fn trace_poly(ctx: &FieldCtx) -> Self {
        LinPoly {
            coeffs: vec![ctx.one(); ctx.degree()],
        }
    }

    /// Build from up to n coefficients (missing high coefficients are zero).
    pub fn from_coeffs(ctx: &FieldCtx, coeffs: Vec<Fe>) -> Self {
        assert!(coeffs.len() <= ctx.degree(), "too many coefficients");
        let mut full = coeffs;
        full.resize(ctx.degree(), ctx.zero());
        LinPoly { coeffs: full }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Fe {
        &self.coeffs[i]
    }

    pub(crate) fn set_coeff(&mut self, i: usize, v: Fe) {
        self.coeffs[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Fe::is_zero)
    }

    /// Largest i with a nonzero coefficient on x^(q^i); None for the zero map.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn add(&self, ctx: &FieldCtx, other: &LinPoly) -> LinPoly {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| ctx.add(a, b))
            .collect();
        LinPoly { coeffs }
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &LinPoly) -> LinPoly {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| ctx.sub(a, b))
            .collect();
        LinPoly { coeffs }
    }

    /// Multiply every coefficient by a field constant.
    pub fn scale(&self, ctx: &FieldCtx, c: &Fe) -> LinPoly {
        let coeffs = self.coeffs.iter().map(|a| ctx.mul(c, a)).collect();
        LinPoly { coeffs }
    }

    /// Evaluate: sum_i f_i a^(q^i).
    pub fn eval(&self, ctx: &FieldCtx, a: &Fe) -> Fe {
        let mut acc = ctx.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = ctx.add(&acc, &ctx.mul(c, &ctx.frobenius(a, i as i64)));
            }
        }
        acc
    }

    /// Composition f(g(x)) with exponent reduction mod (x^(q^n) - x):
    /// result_k = sum over i+j = k (mod n) of f_i * g_j^(q^i).
    pub fn compose(&self, ctx: &FieldCtx, g: &LinPoly) -> LinPoly {
        let n = ctx.degree();
        let mut out = LinPoly::zero(ctx);
        for (i, fi) in self.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let k = (i + j) % n;
                let term = ctx.mul(fi, &ctx.frobenius(gj, i as i64));
                out.coeffs[k] = ctx.add(&out.coeffs[k], &term);
            }
        }
        out
    }

    /// n x n GF(q) matrix of the map a -> f(a) on the power basis
    /// (column j holds the coordinates of f(x^j)).
    pub fn map_matrix(&self, ctx: &FieldCtx) -> Vec<Vec<u32>> {
        let n = ctx.degree();
        let mut m = vec![vec![0u32; n]; n];
        for j in 0..n {
            let img = self.eval(ctx, &ctx.basis_element(j));
            for r in 0..n {
                m[r][j] = img.coeffs()[r];
            }
        }
        m
    }

    /// Rank as a GF(q)-linear map on GF(q^n).
    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        mat_rank_gfq(ctx.q(), &self.map_matrix(ctx))
    }

    /// Text form `lp:<fe>;<fe>;...` (n semicolon-separated elements).
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("lp:{}", parts.join(";"))
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<LinPoly, LinPolyError> {
        let body = s
            .trim()
            .strip_prefix("lp:")
            .ok_or_else(|| LinPolyError::Parse("missing lp: prefix".into()))?;
        let parts: Vec<&str> = body.split(';').collect();
        if parts.len() != ctx.degree() {
            return Err(LinPolyError::Parse(format!(
                "expected {} coefficients, got {}",
                ctx.degree(),
                parts.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(parts.len());
        for p in parts {
            coeffs.push(
                ctx.parse_fe(p)
                    .map_err(|e| LinPolyError::Parse(e.to_string()))?,
            );
        }
        Ok(LinPoly { coeffs })
    }
}

// ---------------------------------------------------------------------------
// Dickson and Moore matrices
// ---------------------------------------------------------------------------

/// Dickson matrix of f: `M[i][j] = f_((i-j) mod n)^(q^j)`. Column 0 is the
/// coefficient vector of f, and the rank over GF(q^n) equals the rank of f
/// as a linear map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicksonMatrix {
    pub entries: Vec<Vec<Fe>>,
}

impl DicksonMatrix {
    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        mat_rank_gfqn(ctx, &self.entries)
    }

    /// Row i with cyclic indexing.
    pub fn row(&self, i: usize) -> &[Fe] {
        &self.entries[i % self.entries.len()]
    }
}

pub fn dickson(ctx: &FieldCtx, f: &LinPoly) -> DicksonMatrix {
    let n = ctx.degree();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ctx.frobenius(&f.coeffs[(i + n - j) % n], j as i64))
                .collect()
        })
        .collect();
    DicksonMatrix { entries }
}

/// Moore matrix: `entry[i][j] = points[j]^(q^i)`, rows indexed by q-power.
/// Invertible (when square) iff the points are GF(q)-linearly independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMatrix {
    pub entries: Vec<Vec<Fe>>,
}

impl MooreMatrix {
    /// Transposed layout with rows indexed by evaluation point, as used by
    /// the interpolation step.
    pub fn transposed(&self) -> Vec<Vec<Fe>> {
        let rows = self.entries.len();
        let cols = self.entries[0].len();
        (0..cols)
            .map(|j| (0..rows).map(|i| self.entries[i][j].clone()).collect())
            .collect()
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        mat_rank_gfqn(ctx, &self.entries)
    }
}

pub fn moore(ctx: &FieldCtx, points: &[Fe], rows: usize) -> MooreMatrix {
    assert!(rows >= 1);
    let entries = (0..rows)
        .map(|i| points.iter().map(|p| ctx.frobenius(p, i as i64)).collect())
        .collect();
    MooreMatrix { entries }
}

// ---------------------------------------------------------------------------
// Trace decomposition (rank decomposition)
// ---------------------------------------------------------------------------

/// Decompose f of rank r as f(x) = sum_j a_j Tr(b_j x) with both
/// {a_j} and {b_j} GF(q)-linearly independent. Coefficient-wise this means
/// f_i = sum_j b_j^(q^i) a_j. Deterministic for a fixed input. Rank 0
/// returns two empty sets.
pub fn rank_decompose(ctx: &FieldCtx, f: &LinPoly) -> (Vec<Fe>, Vec<Fe>) {
    let n = ctx.degree();
    let q = ctx.q();
    let m = f.map_matrix(ctx);

    // Image basis: pivot columns of the map matrix, in elimination order.
    let mut work = m.clone();
    let pivot_cols = rref(&GfqOps { q }, &mut work);
    let rank = pivot_cols.len();
    if rank == 0 {
        return (Vec::new(), Vec::new());
    }
    let a_set: Vec<Fe> = pivot_cols
        .iter()
        .map(|&j| {
            let col: Vec<u32> = (0..n).map(|r| m[r][j]).collect();
            ctx.from_coeffs(col).unwrap()
        })
        .collect();

    // Express every f(e_m) in that basis: solve A c = f(e_m) over GF(q) for
    // all m at once, where A's columns are the image basis vectors.
    let mut aug: Vec<Vec<u32>> = (0..n)
        .map(|r| {
            let mut row: Vec<u32> = a_set.iter().map(|a| a.coeffs()[r]).collect();
            row.extend((0..n).map(|c| m[r][c]));
            row
        })
        .collect();
    let piv = rref(&GfqOps { q }, &mut aug);
    debug_assert_eq!(piv, (0..rank).collect::<Vec<_>>());
    // coefficients: c[j][m] = aug[j][rank + m]
    // b_j solves the Gram system Tr(e_l e_m) beta_l = c[j][m].
    let gram: Vec<Vec<u32>> = (0..n)
        .map(|mm| {
            (0..n)
                .map(|l| ctx.trace_scalar(&ctx.mul(&ctx.basis_element(l), &ctx.basis_element(mm))))
                .collect()
        })
        .collect();
    let mut b_set = Vec::with_capacity(rank);
    for j in 0..rank {
        let rhs: Vec<u32> = (0..n).map(|mm| aug[j][rank + mm]).collect();
        let beta = solve_gfq(q, &gram, &rhs).expect("trace form is nondegenerate");
        b_set.push(ctx.from_coeffs(beta).unwrap());
    }
    (a_set, b_set)
}

fn solve_gfq(q: u32, m: &[Vec<u32>], b: &[u32]) -> Option<Vec<u32>> {
    let n = m.len();
    let mut aug: Vec<Vec<u32>> = m
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut ext = row.clone();
            ext.push(rhs);
            ext
        })
        .collect();
    let piv = rref(&GfqOps { q }, &mut aug);
    if piv.len() != n || piv.iter().any(|&p| p >= n) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n]).collect())
}

/// Build sum_j a_j Tr(b_j x) directly from its coefficient formula
/// f_i = sum_j a_j b_j^(q^i).
pub fn from_trace_pairs(ctx: &FieldCtx, a_set: &[Fe], b_set: &[Fe]) -> LinPoly {
    assert_eq!(a_set.len(), b_set.len());
    let n = ctx.degree();
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = ctx.zero();
        for (a, b) in a_set.iter().zip(b_set) {
            acc = ctx.add(&acc, &ctx.mul(a, &ctx.frobenius(b, i as i64)));
        }
        coeffs.push(acc);
    }
    LinPoly { coeffs }
}

/// Draw a uniformly seeded linearized polynomial of rank exactly t by
/// sampling t GF(q)-independent a's and b's (rejection sampling) and
/// assembling sum a_j Tr(b_j x).
pub fn random_error_poly(ctx: &FieldCtx, t: usize, seed: u64) -> Result<LinPoly, LinPolyError> {
    let mut rng = SplitMix64::new(seed);
    random_error_poly_with(ctx, t, &mut rng)
}

/// Same as [`random_error_poly`] but drawing from a caller-owned stream.
pub fn random_error_poly_with(
    ctx: &FieldCtx,
    t: usize,
    rng: &mut SplitMix64,
) -> Result<LinPoly, LinPolyError> {
    let n = ctx.degree();
    if t > n {
        return Err(LinPolyError::InvalidRank { t, n });
    }
    if t == 0 {
        return Ok(LinPoly::zero(ctx));
    }
    let a_set = draw_independent(ctx, t, rng);
    let b_set = draw_independent(ctx, t, rng);
    let f = from_trace_pairs(ctx, &a_set, &b_set);
    debug_assert_eq!(f.rank(ctx), t);
    Ok(f)
}

pub(crate) fn random_fe(ctx: &FieldCtx, rng: &mut SplitMix64) -> Fe {
    let coeffs = (0..ctx.degree())
        .map(|_| rng.below(ctx.q() as u64) as u32)
        .collect();
    ctx.from_coeffs(coeffs).unwrap()
}

fn draw_independent(ctx: &FieldCtx, t: usize, rng: &mut SplitMix64) -> Vec<Fe> {
    let mut out: Vec<Fe> = Vec::with_capacity(t);
    while out.len() < t {
        let cand = random_fe(ctx, rng);
        out.push(cand);
        if fe_vector_rank(ctx, &out) != out.len() {
            out.pop();
        }
    }
    out
}

/// Kernel of f as a GF(q)-subspace of GF(q^n), echelonized basis.
pub fn lp_kernel(ctx: &FieldCtx, f: &LinPoly) -> Vec<Fe> {
    let m = f.map_matrix(ctx);
    kernel_generic(&GfqOps { q: ctx.q() }, &m)
        .into_iter()
        .map(|v| ctx.from_coeffs(v).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> FieldCtx {
        FieldCtx::standard(2, 3).unwrap()
    }

    #[test]
    fn eval_identity_and_trace() {
        let ctx = gf8();
        let x = LinPoly::x(&ctx);
        let tr = LinPoly::trace_poly(&ctx);
        for a in ctx.all_elements() {
            assert_eq!(x.eval(&ctx, &a), a);
            assert_eq!(tr.eval(&ctx, &a), ctx.trace(&a));
        }
    }

    #[test]
    fn eval_xq_matches_frobenius() {
        let ctx = gf8();
        // f = x^q
        let f = LinPoly::from_coeffs(&ctx, vec![ctx.zero(), ctx.one()]);
        let alpha = ctx.alpha();
        assert_eq!(f.eval(&ctx, &alpha), ctx.mul(&alpha, &alpha));
        for a in ctx.all_elements() {
            assert_eq!(f.eval(&ctx, &a), ctx.frobenius(&a, 1));
        }
    }

    #[test]
    fn eval_is_gfq_linear() {
        let ctx = FieldCtx::standard(3, 3).unwrap();
        let f = random_error_poly(&ctx, 2, 5).unwrap();
        let a = ctx.from_coeffs(vec![1, 2, 0]).unwrap();
        let b = ctx.from_coeffs(vec![2, 2, 1]).unwrap();
        assert_eq!(
            f.eval(&ctx, &ctx.add(&a, &b)),
            ctx.add(&f.eval(&ctx, &a), &f.eval(&ctx, &b))
        );
        for mu in 0..3 {
            assert_eq!(
                f.eval(&ctx, &ctx.scale(mu, &a)),
                ctx.scale(mu, &f.eval(&ctx, &a))
            );
        }
    }

    #[test]
    fn compose_identity_and_shift() {
        let ctx = gf8();
        let x = LinPoly::x(&ctx);
        let g = random_error_poly(&ctx, 2, 11).unwrap();
        assert_eq!(x.compose(&ctx, &g), g);
        assert_eq!(g.compose(&ctx, &x), g);
        // x^q o g shifts indices by one (cyclically) and raises coefficients to q
        let xq = LinPoly::from_coeffs(&ctx, vec![ctx.zero(), ctx.one()]);
        let shifted = xq.compose(&ctx, &g);
        let n = ctx.degree();
        for j in 0..n {
            assert_eq!(shifted.coeff((j + 1) % n), &ctx.frobenius(g.coeff(j), 1),);
        }
    }

    #[test]
    fn compose_is_evaluation_homomorphism() {
        let ctx = gf8();
        let f = random_error_poly(&ctx, 2, 21).unwrap();
        let g = random_error_poly(&ctx, 3, 22).unwrap();
        let fg = f.compose(&ctx, &g);
        for a in ctx.all_elements() {
            assert_eq!(fg.eval(&ctx, &a), f.eval(&ctx, &g.eval(&ctx, &a)));
        }
    }

    #[test]
    fn rank_of_standard_maps() {
        let ctx = gf8();
        assert_eq!(LinPoly::x(&ctx).rank(&ctx), 3);
        assert_eq!(LinPoly::trace_poly(&ctx).rank(&ctx), 1);
        assert_eq!(LinPoly::zero(&ctx).rank(&ctx), 0);
        // a Tr(b x) has rank 1 for nonzero a, b
        let a = ctx.alpha();
        let b = ctx.from_coeffs(vec![1, 0, 1]).unwrap();
        let f = from_trace_pairs(&ctx, &[a], &[b]);
        assert_eq!(f.rank(&ctx), 1);
    }

    #[test]
    fn rank_nullity() {
        let ctx = FieldCtx::standard(2, 5).unwrap();
        for seed in 0..10 {
            let t = (seed % 6) as usize;
            let f = random_error_poly(&ctx, t, seed).unwrap();
            assert_eq!(f.rank(&ctx) + lp_kernel(&ctx, &f).len(), 5);
        }
    }

    #[test]
    fn dickson_layout() {
        let ctx = gf8();
        // f = x gives the identity matrix
        let d = dickson(&ctx, &LinPoly::x(&ctx));
        for (i, row) in d.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let expect = if i == j { ctx.one() } else { ctx.zero() };
                assert_eq!(*e, expect);
            }
        }
        // trace poly gives the all-ones matrix of rank 1
        let d = dickson(&ctx, &LinPoly::trace_poly(&ctx));
        for row in &d.entries {
            for e in row {
                assert_eq!(*e, ctx.one());
            }
        }
        assert_eq!(d.rank(&ctx), 1);
        // column 0 is the coefficient vector
        let f = random_error_poly(&ctx, 2, 3).unwrap();
        let d = dickson(&ctx, &f);
        for i in 0..3 {
            assert_eq!(&d.entries[i][0], f.coeff(i));
        }
    }

    #[test]
    fn dickson_rank_matches_map_rank() {
        let ctx = FieldCtx::standard(2, 4).unwrap();
        for seed in 0..50 {
            let t = (seed % 5) as usize;
            let f = random_error_poly(&ctx, t, 1000 + seed).unwrap();
            assert_eq!(dickson(&ctx, &f).rank(&ctx), f.rank(&ctx));
        }
    }

    #[test]
    fn moore_matrix_basics() {
        let ctx = gf8();
        let basis = vec![ctx.one(), ctx.alpha(), ctx.basis_element(2)];
        let m = moore(&ctx, &basis, 3);
        assert_eq!(m.rank(&ctx), 3);
        // a dependent pair makes it singular
        let dep = vec![ctx.alpha(), ctx.alpha(), ctx.one()];
        assert!(moore(&ctx, &dep, 3).rank(&ctx) < 3);
        // single point, one row
        let single = moore(&ctx, &[ctx.alpha()], 1);
        assert_eq!(single.entries, vec![vec![ctx.alpha()]]);
    }

    #[test]
    fn moore_singular_iff_dependent_exhaustive() {
        // GF(2^3): all pairs and triples of elements
        let ctx = gf8();
        let elems: Vec<Fe> = ctx.all_elements().collect();
        for a in &elems {
            for b in &elems {
                let pts = [a.clone(), b.clone()];
                let m = moore(&ctx, &pts, 2);
                let singular = m.rank(&ctx) < 2;
                assert_eq!(singular, fe_vector_rank(&ctx, &pts) < 2);
            }
        }
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let pts = [a.clone(), b.clone(), c.clone()];
                    let m = moore(&ctx, &pts, 3);
                    let singular = m.rank(&ctx) < 3;
                    assert_eq!(singular, fe_vector_rank(&ctx, &pts) < 3);
                }
            }
        }
    }

    #[test]
    fn decompose_zero_and_rank_one() {
        let ctx = FieldCtx::standard(2, 4).unwrap();
        let (s1, s2) = rank_decompose(&ctx, &LinPoly::zero(&ctx));
        assert!(s1.is_empty() && s2.is_empty());

        // f = a Tr(b x): decomposition returns ([a'], [b']) reconstructing f
        let a = ctx.from_coeffs(vec![0, 1, 1, 0]).unwrap();
        let b = ctx.from_coeffs(vec![1, 0, 0, 1]).unwrap();
        let f = from_trace_pairs(&ctx, std::slice::from_ref(&a), std::slice::from_ref(&b));
        let (s1, s2) = rank_decompose(&ctx, &f);
        assert_eq!(s1.len(), 1);
        assert_eq!(from_trace_pairs(&ctx, &s1, &s2), f);
        // recovered b is a GF(q)-multiple of b (rank-1 span)
        assert_eq!(fe_vector_rank(&ctx, &[b, s2[0].clone()]), 1);
    }

    #[test]
    fn decompose_roundtrip_rank3() {
        let ctx = FieldCtx::standard(2, 5).unwrap();
        for seed in 0..20 {
            let f = random_error_poly(&ctx, 3, 400 + seed).unwrap();
            let (s1, s2) = rank_decompose(&ctx, &f);
            assert_eq!(s1.len(), 3);
            assert_eq!(fe_vector_rank(&ctx, &s1), 3);
            assert_eq!(fe_vector_rank(&ctx, &s2), 3);
            assert_eq!(from_trace_pairs(&ctx, &s1, &s2), f);
        }
    }

    #[test]
    fn random_error_poly_rank_exact() {
        let ctx = FieldCtx::standard(2, 5).unwrap();
        assert!(random_error_poly(&ctx, 0, 1).unwrap().is_zero());
        assert_eq!(random_error_poly(&ctx, 5, 2).unwrap().rank(&ctx), 5);
        assert!(matches!(
            random_error_poly(&ctx, 6, 3),
            Err(LinPolyError::InvalidRank { t: 6, n: 5 })
        ));
        for seed in 0..100 {
            let f = random_error_poly(&ctx, 2, 7000 + seed).unwrap();
            assert_eq!(f.rank(&ctx), 2);
        }
    }

    #[test]
    fn linpoly_text_roundtrip() {
        let ctx = gf8();
        let f = random_error_poly(&ctx, 2, 77).unwrap();
        let s = f.to_text();
        assert_eq!(LinPoly::parse(&ctx, &s).unwrap(), f);
        assert!(LinPoly::parse(&ctx, "1,0,1;0,0,0").is_err());
    }
}

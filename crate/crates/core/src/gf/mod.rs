//! Arithmetic in GF(q) and GF(q^n), the Frobenius map and trace, plus dense
//! linear algebra over both fields.
//!
//! A [`FieldCtx`] describes the extension GF(q^n)/GF(q) by a prime `q`, a
//! degree `n >= 2` and a monic irreducible modulus polynomial. Elements
//! ([`Fe`]) are length-`n` coefficient vectors over GF(q), little-endian in
//! the power basis of the modulus. All arithmetic goes through the context;
//! elements themselves are plain data.

use std::fmt;
use thiserror::Error;

pub mod linalg;

pub use linalg::{
    fe_vector_rank, mat_inv_gfqn, mat_kernel_gfq, mat_kernel_gfqn, mat_rank_gfq, mat_rank_gfqn,
};

/// Errors from field construction, arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("base field modulus {0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error(
        "modulus polynomial must be monic of degree n with {expected} coefficients, got {got}"
    )]
    BadModulusShape { expected: usize, got: usize },
    #[error("modulus polynomial is reducible over GF({q})")]
    ModulusReducible { q: u32 },
    #[error("no built-in modulus for GF({q}^{n})")]
    NoBuiltinModulus { q: u32, n: usize },
    #[error("division by zero in GF(q^n)")]
    DivisionByZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parse error: {0}")]
    Parse(String),
}

/// An element of GF(q^n): `n` base-q digits, little-endian in the power basis.
///
/// Ordering and hashing are over the raw coefficient vector; the derived
/// `Ord` is the lexicographic order starting at the constant coefficient,
/// which is the tie-break order used wherever a deterministic "smallest"
/// element is required.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    coeffs: Vec<u32>,
}

impl Fe {
    /// Raw coefficient view (length n, entries in `[0, q)`).
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.coeffs {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Base field scalar helpers (mod q)
// ---------------------------------------------------------------------------

#[inline]
pub(crate) fn s_add(q: u32, a: u32, b: u32) -> u32 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
pub(crate) fn s_sub(q: u32, a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

#[inline]
pub(crate) fn s_mul(q: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

pub(crate) fn s_inv(q: u32, a: u32) -> u32 {
    // Fermat: a^(q-2) mod q, q prime.
    debug_assert!(a != 0);
    let mut acc = 1u32;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = s_mul(q, acc, base);
        }
        base = s_mul(q, base, base);
        e >>= 1;
    }
    acc
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Polynomials over GF(q), little-endian, used for the modulus machinery
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<u32>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_deg(p: &[u32]) -> usize {
    let mut d = p.len() - 1;
    while d > 0 && p[d] == 0 {
        d -= 1;
    }
    d
}

fn poly_is_zero(p: &[u32]) -> bool {
    p.iter().all(|&c| c == 0)
}

fn poly_mul(q: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = s_add(q, out[i + j], s_mul(q, x, y));
        }
    }
    out
}

/// Remainder of `a` modulo `b` (`b` need not be monic). Also returns the quotient.
fn poly_divmod(q: u32, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let db = poly_deg(b);
    let lead_inv = s_inv(q, b[db]);
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let mut quot = vec![0u32; a.len().max(1)];
    while !poly_is_zero(&rem) && poly_deg(&rem) >= db {
        let dr = poly_deg(&rem);
        let c = s_mul(q, rem[dr], lead_inv);
        quot[dr - db] = c;
        for i in 0..=db {
            rem[dr - db + i] = s_sub(q, rem[dr - db + i], s_mul(q, c, b[i]));
        }
    }
    poly_trim(&mut quot);
    poly_trim(&mut rem);
    (quot, rem)
}

/// Trial-division irreducibility test: a monic polynomial of degree n is
/// irreducible iff it has no monic divisor of degree 1..=n/2.
fn poly_is_irreducible(q: u32, m: &[u32]) -> bool {
    let n = poly_deg(m);
    for d in 1..=n / 2 {
        // enumerate all monic polynomials of degree d by their low coefficients
        let mut counter = vec![0u32; d];
        loop {
            let mut div: Vec<u32> = counter.clone();
            div.push(1);
            let (_, rem) = poly_divmod(q, m, &div);
            if poly_is_zero(&rem) {
                return false;
            }
            // increment base-q counter
            let mut pos = 0;
            loop {
                if pos == d {
                    break;
                }
                counter[pos] += 1;
                if counter[pos] < q {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
            if pos == d {
                break;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Built-in modulus table
// ---------------------------------------------------------------------------

/// Smallest (by little-endian base-q value) monic irreducible of degree n
/// over GF(q), for (q, n) in {2,3,5} x {2..=12}. Verified again at
/// construction time; the table is a convenience, not a trusted input.
const MODULUS_TABLE: &[(u32, usize, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[2, 0, 1, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 0, 1, 0, 0, 0, 0, 0, 1]),
    (3, 9, &[1, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (3, 10, &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 11, &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 12, &[2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (5, 4, &[2, 0, 0, 0, 1]),
    (5, 5, &[1, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (5, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (5, 8, &[2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 9, &[3, 2, 1, 0, 0, 0, 0, 0, 0, 1]),
    (5, 10, &[3, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 11, &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 12, &[4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
];

// ---------------------------------------------------------------------------
// FieldCtx
// ---------------------------------------------------------------------------

/// Description of GF(q^n)/GF(q): prime q, degree n, monic irreducible
/// modulus. Owns all arithmetic. Immutable after construction and safe to
/// share across threads.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    q: u32,
    n: usize,
    modulus: Vec<u32>,
    /// frob_mats[i] is the n x n GF(q) matrix of a -> a^(q^i) on the power
    /// basis, row-major. frob_mats[0] is the identity.
    frob_mats: Vec<Vec<u32>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.n == other.n && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

impl FieldCtx {
    /// Build a context from a user-supplied modulus (length n+1, little-endian,
    /// monic). Primality of q and irreducibility of the modulus are verified.
    pub fn new(q: u32, n: usize, modulus: Vec<u32>) -> Result<Self, GfError> {
        if !is_prime(q) {
            return Err(GfError::NotPrime(q));
        }
        if n < 2 {
            return Err(GfError::DegreeTooSmall(n));
        }
        if modulus.len() != n + 1 || modulus[n] != 1 || modulus.iter().any(|&c| c >= q) {
            return Err(GfError::BadModulusShape {
                expected: n + 1,
                got: modulus.len(),
            });
        }
        if !poly_is_irreducible(q, &modulus) {
            return Err(GfError::ModulusReducible { q });
        }
        let mut ctx = FieldCtx {
            q,
            n,
            modulus,
            frob_mats: Vec::new(),
        };
        ctx.frob_mats = ctx.build_frobenius_tables();
        Ok(ctx)
    }

    /// Context with the built-in modulus for (q, n) in {2,3,5} x {2..=12}.
    pub fn standard(q: u32, n: usize) -> Result<Self, GfError> {
        for &(tq, tn, m) in MODULUS_TABLE {
            if tq == q && tn == n {
                return Self::new(q, n, m.to_vec());
            }
        }
        Err(GfError::NoBuiltinModulus { q, n })
    }

    fn build_frobenius_tables(&self) -> Vec<Vec<u32>> {
        let n = self.n;
        // image of basis vector x^j under a -> a^q
        let mut frob1 = vec![0u32; n * n];
        for j in 0..n {
            let ej = self.basis_element(j);
            let img = self.pow(&ej, self.q as u128);
            for r in 0..n {
                frob1[r * n + j] = img.coeffs[r];
            }
        }
        let mut mats = Vec::with_capacity(n);
        let mut ident = vec![0u32; n * n];
        for i in 0..n {
            ident[i * n + i] = 1;
        }
        mats.push(ident);
        for i in 1..n {
            let prev = &mats[i - 1];
            let mut next = vec![0u32; n * n];
            for r in 0..n {
                for c in 0..n {
                    let mut acc = 0u32;
                    for m in 0..n {
                        acc = s_add(
                            self.q,
                            acc,
                            s_mul(self.q, frob1[r * n + m], prev[m * n + c]),
                        );
                    }
                    next[r * n + c] = acc;
                }
            }
            mats.push(next);
        }
        mats
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Extension degree n.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// q^n if it fits in u128.
    pub fn size(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.n {
            acc = acc.checked_mul(self.q as u128)?;
        }
        Some(acc)
    }

    // -- element constructors ------------------------------------------------

    pub fn zero(&self) -> Fe {
        Fe {
            coeffs: vec![0; self.n],
        }
    }

    pub fn one(&self) -> Fe {
        self.from_base(1)
    }

    /// The residue class of x, i.e. the root of the modulus, conventionally
    /// written alpha.
    pub fn alpha(&self) -> Fe {
        self.basis_element(1)
    }

    /// x^j for 0 <= j < n.
    pub fn basis_element(&self, j: usize) -> Fe {
        assert!(j < self.n);
        let mut coeffs = vec![0; self.n];
        coeffs[j] = 1;
        Fe { coeffs }
    }

    /// Embed a base field scalar as a constant.
    pub fn from_base(&self, c: u32) -> Fe {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = c % self.q;
        Fe { coeffs }
    }

    pub fn from_coeffs(&self, coeffs: Vec<u32>) -> Result<Fe, GfError> {
        if coeffs.len() != self.n {
            return Err(GfError::Parse(format!(
                "element needs {} coefficients, got {}",
                self.n,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.q) {
            return Err(GfError::Parse(format!(
                "coefficient out of range for GF({})",
                self.q
            )));
        }
        Ok(Fe { coeffs })
    }

    /// Element with index `idx` in the enumeration by little-endian base-q
    /// digits (index 0 is zero, index 1 is one, index q is alpha, ...).
    pub fn element_from_index(&self, mut idx: u128) -> Fe {
        let mut coeffs = vec![0; self.n];
        for c in coeffs.iter_mut() {
            *c = (idx % self.q as u128) as u32;
            idx /= self.q as u128;
        }
        Fe { coeffs }
    }

    /// All q^n elements in index order. Intended for desk-scale exhaustive
    /// loops; panics if q^n does not fit in usize.
    pub fn all_elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let total = self.size().expect("field too large to enumerate") as usize;
        (0..total).map(|i| self.element_from_index(i as u128))
    }

    // -- arithmetic ------------------------------------------------------------

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| s_add(self.q, x, y))
            .collect();
        Fe { coeffs }
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| s_sub(self.q, x, y))
            .collect();
        Fe { coeffs }
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        let coeffs = a.coeffs.iter().map(|&x| s_sub(self.q, 0, x)).collect();
        Fe { coeffs }
    }

    pub fn scale(&self, c: u32, a: &Fe) -> Fe {
        let coeffs = a.coeffs.iter().map(|&x| s_mul(self.q, c, x)).collect();
        Fe { coeffs }
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let q = self.q;
        let n = self.n;
        let mut prod = vec![0u32; 2 * n - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = s_add(q, prod[i + j], s_mul(q, x, y));
            }
        }
        // reduce: x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1})
        for d in (n..2 * n - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for j in 0..n {
                prod[d - n + j] = s_sub(q, prod[d - n + j], s_mul(q, c, self.modulus[j]));
            }
        }
        prod.truncate(n);
        Fe { coeffs: prod }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// GF(q)\[x\]; no big-integer exponent is needed, so this works for any n.
    pub fn inv(&self, a: &Fe) -> Result<Fe, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        let q = self.q;
        let mut r0 = self.modulus.clone();
        let mut r1 = a.coeffs.clone();
        poly_trim(&mut r1);
        let mut t0: Vec<u32> = vec![0];
        let mut t1: Vec<u32> = vec![1];
        while !poly_is_zero(&r1) {
            let (quot, rem) = poly_divmod(q, &r0, &r1);
            let qt1 = poly_mul(q, &quot, &t1);
            let mut t2 = vec![0u32; t0.len().max(qt1.len())];
            for (i, slot) in t2.iter_mut().enumerate() {
                let x = t0.get(i).copied().unwrap_or(0);
                let y = qt1.get(i).copied().unwrap_or(0);
                *slot = s_sub(q, x, y);
            }
            poly_trim(&mut t2);
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
        // r0 = gcd = nonzero constant since the modulus is irreducible
        debug_assert_eq!(poly_deg(&r0), 0);
        let scale = s_inv(q, r0[0]);
        let mut out = vec![0u32; self.n];
        for (i, &c) in t0.iter().enumerate() {
            debug_assert!(i < self.n);
            out[i] = s_mul(q, c, scale);
        }
        Ok(Fe { coeffs: out })
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Fe, mut e: u128) -> Fe {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// a^(q^i); `i` is reduced mod n (negative i allowed).
    pub fn frobenius(&self, a: &Fe, i: i64) -> Fe {
        let i = i.rem_euclid(self.n as i64) as usize;
        let mat = &self.frob_mats[i];
        let n = self.n;
        let mut out = vec![0u32; n];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = 0u32;
            for c in 0..n {
                let m = mat[r * n + c];
                if m != 0 {
                    acc = s_add(self.q, acc, s_mul(self.q, m, a.coeffs[c]));
                }
            }
            *slot = acc;
        }
        Fe { coeffs: out }
    }

    /// Tr(a) = a + a^q + ... + a^(q^(n-1)); lands in the base field.
    pub fn trace(&self, a: &Fe) -> Fe {
        let mut acc = a.clone();
        for i in 1..self.n {
            acc = self.add(&acc, &self.frobenius(a, i as i64));
        }
        acc
    }

    /// Trace as a base field scalar. The power-basis embedding puts GF(q) on
    /// the constant coordinate, so the higher coordinates of a trace are zero.
    pub fn trace_scalar(&self, a: &Fe) -> u32 {
        let t = self.trace(a);
        debug_assert!(t.coeffs[1..].iter().all(|&c| c == 0));
        t.coeffs[0]
    }

    /// N(a) = a * a^q * ... * a^(q^(n-1)); lands in the base field.
    pub fn norm(&self, a: &Fe) -> Fe {
        let mut acc = a.clone();
        for i in 1..self.n {
            acc = self.mul(&acc, &self.frobenius(a, i as i64));
        }
        acc
    }

    // -- text formats ---------------------------------------------------------

    /// Parse an element from `c0,c1,...,c_{n-1}` (base-q digits).
    pub fn parse_fe(&self, s: &str) -> Result<Fe, GfError> {
        let parts: Vec<&str> = s.trim().split(',').collect();
        let mut coeffs = Vec::with_capacity(parts.len());
        for p in parts {
            let v: u32 = p
                .trim()
                .parse()
                .map_err(|_| GfError::Parse(format!("bad coefficient {p:?}")))?;
            coeffs.push(v);
        }
        self.from_coeffs(coeffs)
    }
}

/// Parse a field spec line `q=<int> n=<int> mod=<c0,c1,...,cn>`.
pub fn parse_field_spec(s: &str) -> Result<FieldCtx, GfError> {
    let mut q: Option<u32> = None;
    let mut n: Option<usize> = None;
    let mut modulus: Option<Vec<u32>> = None;
    for tok in s.split_whitespace() {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| GfError::Parse(format!("expected key=value, got {tok:?}")))?;
        match key {
            "q" => {
                q = Some(
                    val.parse()
                        .map_err(|_| GfError::Parse(format!("bad q {val:?}")))?,
                )
            }
            "n" => {
                n = Some(
                    val.parse()
                        .map_err(|_| GfError::Parse(format!("bad n {val:?}")))?,
                )
            }
            "mod" => {
                let mut coeffs = Vec::new();
                for p in val.split(',') {
                    coeffs.push(
                        p.parse()
                            .map_err(|_| GfError::Parse(format!("bad modulus digit {p:?}")))?,
                    );
                }
                modulus = Some(coeffs);
            }
            _ => return Err(GfError::Parse(format!("unknown key {key:?}"))),
        }
    }
    let q = q.ok_or_else(|| GfError::Parse("missing q=".into()))?;
    let n = n.ok_or_else(|| GfError::Parse("missing n=".into()))?;
    match modulus {
        Some(m) => FieldCtx::new(q, n, m),
        None => FieldCtx::standard(q, n),
    }
}

/// Render a field spec line in the canonical `q= n= mod=` form.
pub fn format_field_spec(ctx: &FieldCtx) -> String {
    let mods: Vec<String> = ctx.modulus().iter().map(|c| c.to_string()).collect();
    format!("q={} n={} mod={}", ctx.q(), ctx.degree(), mods.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> FieldCtx {
        // GF(2^3), modulus x^3 + x + 1
        FieldCtx::new(2, 3, vec![1, 1, 0, 1]).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(matches!(
            FieldCtx::new(4, 2, vec![1, 1, 1]),
            Err(GfError::NotPrime(4))
        ));
        assert!(matches!(
            FieldCtx::new(2, 1, vec![1, 1]),
            Err(GfError::DegreeTooSmall(1))
        ));
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(matches!(
            FieldCtx::new(2, 2, vec![1, 0, 1]),
            Err(GfError::ModulusReducible { q: 2 })
        ));
        assert!(FieldCtx::new(2, 2, vec![1, 1, 1]).is_ok());
    }

    #[test]
    fn standard_table_is_irreducible_everywhere() {
        for &q in &[2u32, 3, 5] {
            for n in 2..=12 {
                let ctx = FieldCtx::standard(q, n).unwrap();
                assert_eq!(ctx.degree(), n);
            }
        }
        assert!(FieldCtx::standard(7, 2).is_err());
    }

    #[test]
    fn alpha_cubed_is_alpha_plus_one() {
        // GF(2^3), x^3 + x + 1: alpha * alpha^2 = alpha^3 = alpha + 1
        let ctx = gf8();
        let a = ctx.alpha();
        let a2 = ctx.mul(&a, &a);
        let a3 = ctx.mul(&a, &a2);
        let expect = ctx.from_coeffs(vec![1, 1, 0]).unwrap();
        assert_eq!(a3, expect);
    }

    #[test]
    fn additive_identity() {
        let ctx = gf8();
        for a in ctx.all_elements() {
            assert_eq!(ctx.add(&a, &ctx.zero()), a);
        }
    }

    #[test]
    fn inverse_exhaustive_gf8() {
        let ctx = gf8();
        for a in ctx.all_elements() {
            if a.is_zero() {
                assert_eq!(ctx.inv(&a), Err(GfError::DivisionByZero));
            } else {
                let ai = ctx.inv(&a).unwrap();
                assert_eq!(ctx.mul(&a, &ai), ctx.one());
            }
        }
    }

    #[test]
    fn inverse_exhaustive_gf27() {
        let ctx = FieldCtx::standard(3, 3).unwrap();
        for a in ctx.all_elements() {
            if !a.is_zero() {
                assert_eq!(ctx.mul(&a, &ctx.inv(&a).unwrap()), ctx.one());
            }
        }
    }

    #[test]
    fn frobenius_matches_pow() {
        // matrix-based Frobenius against plain exponentiation
        for ctx in [gf8(), FieldCtx::standard(3, 4).unwrap()] {
            let q = ctx.q() as u128;
            for a in ctx.all_elements() {
                for i in 0..ctx.degree() {
                    let e = q.pow(i as u32);
                    assert_eq!(ctx.frobenius(&a, i as i64), ctx.pow(&a, e));
                }
            }
        }
    }

    #[test]
    fn frobenius_order_and_additivity() {
        let ctx = FieldCtx::standard(3, 3).unwrap();
        let a = ctx.from_coeffs(vec![1, 2, 1]).unwrap();
        let b = ctx.from_coeffs(vec![2, 0, 1]).unwrap();
        assert_eq!(ctx.frobenius(&a, ctx.degree() as i64), a);
        assert_eq!(ctx.frobenius(&a, -1), ctx.frobenius(&a, 2));
        for i in 0..3 {
            assert_eq!(
                ctx.frobenius(&ctx.add(&a, &b), i),
                ctx.add(&ctx.frobenius(&a, i), &ctx.frobenius(&b, i))
            );
        }
        // composition law
        for i in 0..4i64 {
            for j in 0..4i64 {
                assert_eq!(
                    ctx.frobenius(&a, i + j),
                    ctx.frobenius(&ctx.frobenius(&a, i), j)
                );
            }
        }
    }

    #[test]
    fn frobenius_at_one_is_square_in_char2() {
        let ctx = gf8();
        let a = ctx.alpha();
        assert_eq!(ctx.frobenius(&a, 1), ctx.mul(&a, &a));
    }

    #[test]
    fn trace_values_gf8() {
        let ctx = gf8();
        // Tr(1) = 1 + 1 + 1 = 1 over GF(2)
        assert_eq!(ctx.trace(&ctx.one()), ctx.one());
        // Tr(alpha) = alpha + alpha^2 + alpha^4 = 0 for x^3 + x + 1
        assert_eq!(ctx.trace(&ctx.alpha()), ctx.zero());
    }

    #[test]
    fn trace_is_frobenius_stable_and_surjective() {
        for ctx in [gf8(), FieldCtx::standard(3, 3).unwrap()] {
            let mut image = std::collections::HashSet::new();
            for a in ctx.all_elements() {
                let t = ctx.trace(&a);
                // fixed by Frobenius => lies in the base field
                assert_eq!(ctx.frobenius(&t, 1), t);
                assert_eq!(ctx.trace(&ctx.frobenius(&a, 1)), t);
                image.insert(t.coeffs()[0]);
            }
            assert_eq!(image.len(), ctx.q() as usize);
        }
    }

    #[test]
    fn multiplicative_order_divides_group_order() {
        // a^(q^n - 1) = 1 for all nonzero a
        for ctx in [gf8(), FieldCtx::standard(3, 3).unwrap()] {
            let order = ctx.size().unwrap() - 1;
            for a in ctx.all_elements() {
                if !a.is_zero() {
                    assert_eq!(ctx.pow(&a, order), ctx.one());
                }
            }
        }
    }

    #[test]
    fn fe_text_roundtrip() {
        let ctx = FieldCtx::standard(5, 3).unwrap();
        let a = ctx.from_coeffs(vec![4, 0, 3]).unwrap();
        assert_eq!(a.to_string(), "4,0,3");
        assert_eq!(ctx.parse_fe("4,0,3").unwrap(), a);
        assert!(ctx.parse_fe("4,0").is_err());
        assert!(ctx.parse_fe("5,0,0").is_err());
    }

    #[test]
    fn field_spec_roundtrip() {
        let ctx = parse_field_spec("q=2 n=3 mod=1,1,0,1").unwrap();
        assert_eq!(ctx, FieldCtx::standard(2, 3).unwrap());
        let line = format_field_spec(&ctx);
        assert_eq!(parse_field_spec(&line).unwrap(), ctx);
        // without mod=, fall back to the table
        assert_eq!(parse_field_spec("q=2 n=3").unwrap(), ctx);
        assert!(parse_field_spec("q=2").is_err());
        assert!(parse_field_spec("q=2 n=2 mod=1,0,1").is_err());
    }
}

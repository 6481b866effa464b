//! The p-th modular polynomial F_p(X,Y) for lambda-invariants, computed
//! exactly over the integers.
//!
//! F_p is pinned down as the one-dimensional kernel of the linear relation
//! F(lambda(q), lambda(q^p)) = 0 among the monomial series
//! lambda(q)^i * lambda(q^p)^j, 0 <= i,j <= p+1. The kernel is solved
//! modulo several word-size primes, reconstructed by CRT with stabilization
//! detection, and the resulting integer polynomial is verified exactly
//! (over Z, not modulo anything) before it is returned.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::arith::{invmod, is_prime, mulmod, solver_primes};
use crate::error::{Error, Result};
use crate::series::{lambda_qexp, IntSeries};

/// Sparse symmetric bivariate polynomial with integer coefficients,
/// monic of degree p+1 in each variable; houses F_p(X,Y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarIntPoly {
    p_level: u64,
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl BivarIntPoly {
    pub fn new(p_level: u64, coeffs: BTreeMap<(u32, u32), BigInt>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        BivarIntPoly { p_level, coeffs }
    }

    pub fn p_level(&self) -> u64 {
        self.p_level
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in lexicographic (i, j) order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }
}

/// Dense univariate integer polynomial, low degree first; houses
/// R(X) = F_p(X, X^p)/p and f(X) = F_p(X, X).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivarIntPoly {
    coeffs: Vec<BigInt>,
}

impl UnivarIntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UnivarIntPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Options for [`compute_modpoly`].
#[derive(Debug, Clone)]
pub struct SolverOpts {
    /// Series precision override; default (p+2)^2 + 16 terms.
    pub precision: Option<usize>,
    /// Maximum number of CRT primes before giving up.
    pub prime_budget: usize,
}

impl Default for SolverOpts {
    fn default() -> Self {
        SolverOpts { precision: None, prime_budget: 48 }
    }
}

/// Compute F_p(X,Y) for an odd prime p: the unique symmetric polynomial,
/// monic of degree p+1 in each variable, with integer coefficients, such
/// that F_p(lambda(q), lambda(q^p)) = 0 to the working series precision.
pub fn compute_modpoly(p: u64, opts: &SolverOpts) -> Result<BivarIntPoly> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
    }
    let d = (p + 2) as usize; // exponents 0..=p+1 in each variable
    let prec = opts.precision.unwrap_or(d * d + 16);
    let lam = lambda_qexp(prec as i64);
    let lam_dense: Vec<BigInt> = (0..prec).map(|n| lam.coeff(n as i64)).collect();

    let mut primes = solver_primes(p);
    let mut used = 0usize;
    let mut bad_kernel_strikes = 0usize;
    let mut crt: Option<CrtState> = None;
    let mut prev_lifts: Option<Vec<BigInt>> = None;
    let mut streak = 0usize;

    let threads = rayon::current_num_threads().max(1);
    'outer: while used < opts.prime_budget {
        let batch: Vec<u64> = (&mut primes)
            .take((opts.prime_budget - used).min(threads.max(2)))
            .collect();
        used += batch.len();
        let solved: Vec<(u64, KernelOutcome)> = batch
            .par_iter()
            .map(|&ell| (ell, kernel_mod_prime(&lam_dense, p, prec, d, ell)))
            .collect();
        for (ell, outcome) in solved {
            let vector = match outcome {
                KernelOutcome::Unique(v) => v,
                KernelOutcome::Dimension(dim) => {
                    bad_kernel_strikes += 1;
                    // a single rank drop can be an unlucky prime; two
                    // independent primes agreeing means the precision is
                    // structurally too low
                    if dim == 0 || bad_kernel_strikes >= 2 {
                        return Err(Error::InsufficientPrecision { p, dim, precision: prec });
                    }
                    continue;
                }
            };
            let state = match crt.as_mut() {
                None => {
                    crt = Some(CrtState::start(&vector, ell));
                    crt.as_mut().unwrap()
                }
                Some(state) => {
                    state.absorb(&vector, ell);
                    state
                }
            };
            let lifts = state.symmetric_lifts();
            if prev_lifts.as_ref() == Some(&lifts) {
                streak += 1;
            } else {
                streak = 0;
            }
            prev_lifts = Some(lifts);
            // stable once two additional primes leave every lift unchanged
            if streak >= 2 {
                break 'outer;
            }
        }
    }
    if streak < 2 {
        return Err(Error::PrimeBudgetExhausted { p, budget: opts.prime_budget });
    }

    let lifts = prev_lifts.unwrap();
    let mut coeffs = BTreeMap::new();
    for i in 0..d {
        for j in 0..d {
            let c = &lifts[i * d + j];
            if !c.is_zero() {
                coeffs.insert((i as u32, j as u32), c.clone());
            }
        }
    }
    let poly = BivarIntPoly::new(p, coeffs);
    if !poly.coeff((p + 1) as u32, 0).is_one() || !poly.coeff(0, (p + 1) as u32).is_one() {
        return Err(Error::InternalInconsistency(format!(
            "F_{p} is not monic after normalization"
        )));
    }
    verify_relation_exact(&poly, &lam, prec)?;
    Ok(poly)
}

/// Exact integer check that F(lambda(q), lambda(q^p)) = 0 + O(q^prec).
fn verify_relation_exact(poly: &BivarIntPoly, lam: &IntSeries, prec: usize) -> Result<()> {
    let p = poly.p_level;
    let d = (p + 2) as usize;
    let mut lam_pows = Vec::with_capacity(d);
    lam_pows.push(IntSeries::one(prec as i64));
    for i in 1..d {
        lam_pows.push(lam_pows[i - 1].mul(lam));
    }
    let mut acc = IntSeries::zero(prec as i64);
    for j in 0..d {
        let mut inner = IntSeries::zero(prec as i64);
        for i in 0..d {
            let c = poly.coeff(i as u32, j as u32);
            if !c.is_zero() {
                inner = inner.add(&lam_pows[i].scale(&c));
            }
        }
        if inner.is_zero() {
            continue;
        }
        acc = acc.add(&inner.mul(&lam_pows[j].substitute_qpow(p)));
    }
    if !acc.is_zero() || acc.precision() < prec as i64 {
        return Err(Error::InternalInconsistency(format!(
            "F_{p}(lambda(q), lambda(q^p)) does not vanish to O(q^{prec})"
        )));
    }
    Ok(())
}

enum KernelOutcome {
    Unique(Vec<u64>),
    Dimension(usize),
}

/// Kernel of the (prec x d^2) coefficient matrix of the monomial series
/// lambda^i * (lambda o q^p)^j over F_ell, normalized at the (p+1, 0)
/// coordinate.
fn kernel_mod_prime(lam_dense: &[BigInt], p: u64, prec: usize, d: usize, ell: u64) -> KernelOutcome {
    let ell_big = BigInt::from(ell);
    let lam_m: Vec<u64> = lam_dense
        .iter()
        .map(|c| {
            let r = c.mod_floor(&ell_big);
            u64::try_from(&r).expect("residue fits u64")
        })
        .collect();

    // dense powers of lambda mod ell
    let mut pows: Vec<Vec<u64>> = Vec::with_capacity(d);
    let mut first = vec![0u64; prec];
    first[0] = 1;
    pows.push(first);
    for i in 1..d {
        pows.push(convolve_mod(&pows[i - 1], &lam_m, ell));
    }

    // columns of the relation matrix; (lambda o q^p)^j is lambda^j with
    // exponents scaled by p, so each column is a sparse combination of
    // shifted copies of lambda^i
    let cols = d * d;
    let mut colmajor = vec![0u64; cols * prec];
    colmajor
        .par_chunks_mut(prec)
        .enumerate()
        .for_each(|(cidx, col)| {
            let (i, j) = (cidx / d, cidx % d);
            let li = &pows[i];
            let lj = &pows[j];
            for (k, &v) in lj.iter().enumerate() {
                let base = k * p as usize;
                if base >= prec {
                    break;
                }
                if v == 0 {
                    continue;
                }
                for (n, &a) in li.iter().take(prec - base).enumerate() {
                    if a != 0 {
                        let t = mulmod(v, a, ell);
                        let o = &mut col[base + n];
                        *o = (*o + t) % ell;
                    }
                }
            }
        });

    // transpose to row-major for elimination
    let mut m = vec![0u64; prec * cols];
    for c in 0..cols {
        for r in 0..prec {
            m[r * cols + c] = colmajor[c * prec + r];
        }
    }
    drop(colmajor);

    // row-echelon reduction
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (col, row)
    let mut r = 0usize;
    for c in 0..cols {
        if r == prec {
            break;
        }
        let Some(pr) = (r..prec).find(|&rr| m[rr * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for k in c..cols {
                m.swap(r * cols + k, pr * cols + k);
            }
        }
        let inv = invmod(m[r * cols + c], ell).expect("pivot invertible");
        for k in c..cols {
            m[r * cols + k] = mulmod(m[r * cols + k], inv, ell);
        }
        let pivot_row: Vec<u64> = m[r * cols + c..(r + 1) * cols].to_vec();
        let below = &mut m[(r + 1) * cols..];
        below.par_chunks_mut(cols).for_each(|row| {
            let f = row[c];
            if f == 0 {
                return;
            }
            for (k, &pv) in pivot_row.iter().enumerate() {
                if pv != 0 {
                    let idx = c + k;
                    let t = mulmod(f, pv, ell);
                    row[idx] = (row[idx] + ell - t) % ell;
                }
            }
        });
        pivots.push((c, r));
        r += 1;
    }

    let dim = cols - pivots.len();
    if dim != 1 {
        return KernelOutcome::Dimension(dim);
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
    let free_col = (0..cols)
        .find(|c| pivot_cols.binary_search(c).is_err())
        .expect("one free column");

    // back-substitution (pivot entries were scaled to 1)
    let mut v = vec![0u64; cols];
    v[free_col] = 1;
    for &(c, row) in pivots.iter().rev() {
        let mut acc = 0u64;
        for k in c + 1..cols {
            if v[k] != 0 && m[row * cols + k] != 0 {
                acc = (acc + mulmod(m[row * cols + k], v[k], ell)) % ell;
            }
        }
        v[c] = (ell - acc) % ell;
    }

    // normalize so the X^{p+1} coordinate is 1
    let monic_idx = (p + 1) as usize * d;
    let Some(scale) = invmod(v[monic_idx], ell) else {
        // the integer kernel vector has +-1 there, so a vanishing residue
        // marks an unusable prime
        return KernelOutcome::Dimension(0);
    };
    for x in v.iter_mut() {
        *x = mulmod(*x, scale, ell);
    }
    KernelOutcome::Unique(v)
}

fn convolve_mod(a: &[u64], b: &[u64], ell: u64) -> Vec<u64> {
    let prec = a.len();
    let mut out = vec![0u64; prec];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().take(prec - i).enumerate() {
            if bj != 0 {
                let t = mulmod(ai, bj, ell);
                let o = &mut out[i + j];
                *o = (*o + t) % ell;
            }
        }
    }
    out
}

/// Incremental CRT over a coefficient vector.
struct CrtState {
    residues: Vec<BigInt>,
    modulus: BigInt,
}

impl CrtState {
    fn start(v: &[u64], ell: u64) -> Self {
        CrtState {
            residues: v.iter().map(|&x| BigInt::from(x)).collect(),
            modulus: BigInt::from(ell),
        }
    }

    fn absorb(&mut self, v: &[u64], ell: u64) {
        let ell_big = BigInt::from(ell);
        let m_mod_ell = u64::try_from(&self.modulus.mod_floor(&ell_big)).unwrap();
        let m_inv = invmod(m_mod_ell, ell).expect("solver primes are coprime");
        for (acc, &r) in self.residues.iter_mut().zip(v) {
            let cur = u64::try_from(&acc.mod_floor(&ell_big)).unwrap();
            let delta = mulmod((r + ell - cur) % ell, m_inv, ell);
            *acc += &self.modulus * BigInt::from(delta);
        }
        self.modulus *= ell_big;
    }

    /// Lift every residue to the symmetric range (-M/2, M/2].
    fn symmetric_lifts(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        self.residues
            .iter()
            .map(|r| if r > &half { r - &self.modulus } else { r.clone() })
            .collect()
    }
}

/// True iff coeff(i, j) = coeff(j, i) for all pairs.
pub fn verify_symmetry(f: &BivarIntPoly) -> bool {
    f.terms().all(|(&(i, j), c)| f.coeff(j, i) == *c)
}

/// True iff F mod p equals (X^p - Y)(X - Y^p) = X^{p+1} - X^p Y^p - XY + Y^{p+1}.
pub fn verify_kronecker(f: &BivarIntPoly) -> bool {
    let p = f.p_level;
    let p_big = BigInt::from(p);
    let mut reduced: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    for (&(i, j), c) in f.terms() {
        let r = c.mod_floor(&p_big);
        if !r.is_zero() {
            reduced.insert((i, j), r);
        }
    }
    let d = (p + 1) as u32;
    let minus_one = BigInt::from(p - 1);
    let expected: BTreeMap<(u32, u32), BigInt> = [
        ((d, 0), BigInt::one()),
        ((0, d), BigInt::one()),
        ((d - 1, d - 1), minus_one.clone()),
        ((1, 1), minus_one),
    ]
    .into_iter()
    .collect();
    reduced == expected
}

/// R(X) with p * R(X) = F(X, X^p) exactly over Z.
pub fn r_polynomial(f: &BivarIntPoly) -> Result<UnivarIntPoly> {
    let p = f.p_level;
    let deg = f
        .terms()
        .map(|(&(i, j), _)| i as usize + p as usize * j as usize)
        .max()
        .unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (&(i, j), c) in f.terms() {
        coeffs[i as usize + p as usize * j as usize] += c;
    }
    let p_big = BigInt::from(p);
    let mut out = Vec::with_capacity(coeffs.len());
    for (k, c) in coeffs.into_iter().enumerate() {
        let (q, r) = c.div_rem(&p_big);
        if !r.is_zero() {
            return Err(Error::TheoremViolation(format!(
                "Kronecker congruence violated: coefficient of X^{k} in F(X, X^p) is not divisible by {p}"
            )));
        }
        out.push(q);
    }
    Ok(UnivarIntPoly::new(out))
}

/// f(X) = F(X, X); checks f = -(X^p - X)^2 mod p before returning.
pub fn diag_polynomial(f: &BivarIntPoly) -> Result<UnivarIntPoly> {
    let p = f.p_level;
    let deg = f.terms().map(|(&(i, j), _)| (i + j) as usize).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (&(i, j), c) in f.terms() {
        coeffs[(i + j) as usize] += c;
    }
    let diag = UnivarIntPoly::new(coeffs);
    // -(X^p - X)^2 = -X^{2p} + 2X^{p+1} - X^2
    let p_big = BigInt::from(p);
    let mut expected = vec![BigInt::zero(); 2 * p as usize + 1];
    expected[2 * p as usize] = BigInt::from(-1);
    expected[p as usize + 1] = BigInt::from(2);
    expected[2] = BigInt::from(-1);
    let max_len = expected.len().max(diag.coeffs.len());
    for k in 0..max_len {
        let got = diag.coeff(k).mod_floor(&p_big);
        let want = expected
            .get(k)
            .cloned()
            .unwrap_or_else(BigInt::zero)
            .mod_floor(&p_big);
        if got != want {
            return Err(Error::TheoremViolation(format!(
                "F_{p}(X,X) is not congruent to -(X^{p} - X)^2 mod {p} at degree {k}"
            )));
        }
    }
    Ok(diag)
}

/// Serialize F to the cache format:
/// "LAMBDA-MODPOLY v1 p=<p>", one "<i> <j> <coeff>" line per nonzero term
/// in lexicographic (i,j) order, then "CHECKSUM <hex>" over the preceding
/// bytes. Written to a temporary file and atomically renamed.
pub fn cache_store(f: &BivarIntPoly, path: &Path) -> Result<()> {
    let mut body = format!("LAMBDA-MODPOLY v1 p={}\n", f.p_level);
    for (&(i, j), c) in f.terms() {
        writeln!(body, "{i} {j} {c}").expect("write to string");
    }
    let digest = Sha256::digest(body.as_bytes());
    write!(body, "CHECKSUM {}\n", hex_string(&digest)).expect("write to string");
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, &body)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Load and re-verify a cached F_p: checksum, header, symmetry and the
/// Kronecker congruence must all hold.
pub fn cache_load(p: u64, path: &Path) -> Result<BivarIntPoly> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| Error::Cache(format!("cannot read {}: {e}", path.display())))?;
    let Some(ck_pos) = content.rfind("CHECKSUM ") else {
        return Err(Error::Cache("missing CHECKSUM line".into()));
    };
    let body = &content[..ck_pos];
    let ck_line = content[ck_pos..].trim_end();
    let stored = ck_line.strip_prefix("CHECKSUM ").unwrap_or("");
    let digest = hex_string(&Sha256::digest(body.as_bytes()));
    if stored != digest {
        return Err(Error::Cache(format!(
            "checksum mismatch: stored {stored}, computed {digest}"
        )));
    }
    let mut lines = body.lines();
    let header = lines.next().ok_or_else(|| Error::Cache("empty record".into()))?;
    let expected_header = format!("LAMBDA-MODPOLY v1 p={p}");
    if header != expected_header {
        return Err(Error::Cache(format!(
            "bad header {header:?}, expected {expected_header:?}"
        )));
    }
    let mut coeffs = BTreeMap::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let (Some(i), Some(j), Some(c), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::Cache(format!("malformed line {line:?}")));
        };
        let i: u32 = i.parse().map_err(|_| Error::Cache(format!("bad exponent {i:?}")))?;
        let j: u32 = j.parse().map_err(|_| Error::Cache(format!("bad exponent {j:?}")))?;
        let c: BigInt = c.parse().map_err(|_| Error::Cache(format!("bad coefficient {c:?}")))?;
        if coeffs.insert((i, j), c).is_some() {
            return Err(Error::Cache(format!("duplicate term ({i}, {j})")));
        }
    }
    let poly = BivarIntPoly::new(p, coeffs);
    if !verify_symmetry(&poly) {
        return Err(Error::Cache("loaded polynomial is not symmetric".into()));
    }
    if !verify_kronecker(&poly) {
        return Err(Error::Cache(
            "loaded polynomial fails the Kronecker congruence".into(),
        ));
    }
    Ok(poly)
}

fn hex_string(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        write!(s, "{b:02x}").expect("write to string");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(p: u64, terms: &[(u32, u32, i64)]) -> BivarIntPoly {
        BivarIntPoly::new(
            p,
            terms.iter().map(|&(i, j, c)| ((i, j), BigInt::from(c))).collect(),
        )
    }

    /// The printed F_3 table.
    fn f3() -> BivarIntPoly {
        bp(
            3,
            &[
                (4, 0, 1),
                (0, 4, 1),
                (3, 3, -256),
                (3, 2, 384),
                (3, 1, -132),
                (2, 3, 384),
                (2, 2, -762),
                (2, 1, 384),
                (1, 3, -132),
                (1, 2, 384),
                (1, 1, -256),
            ],
        )
    }

    #[test]
    fn compute_f3_matches_published_table() {
        let f = compute_modpoly(3, &SolverOpts::default()).unwrap();
        assert_eq!(f, f3());
        assert_eq!(f.num_terms(), 11);
        assert!(verify_symmetry(&f));
        assert!(verify_kronecker(&f));
    }

    #[test]
    fn compute_f5_spot_values() {
        let f = compute_modpoly(5, &SolverOpts::default()).unwrap();
        assert_eq!(f.coeff(5, 5), BigInt::from(-65536));
        assert_eq!(f.coeff(3, 3), BigInt::from(691180));
        assert_eq!(f.coeff(5, 1), BigInt::from(-3590));
        assert_eq!(f.coeff(6, 0), BigInt::from(1));
        assert_eq!(f.num_terms(), 27);
        assert!(verify_symmetry(&f));
        assert!(verify_kronecker(&f));
    }

    #[test]
    fn rejects_non_primes() {
        assert!(matches!(
            compute_modpoly(4, &SolverOpts::default()),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            compute_modpoly(2, &SolverOpts::default()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn higher_precision_gives_identical_coefficients() {
        let base = compute_modpoly(5, &SolverOpts::default()).unwrap();
        let more = compute_modpoly(
            5,
            &SolverOpts { precision: Some(7 * 7 + 48), ..SolverOpts::default() },
        )
        .unwrap();
        assert_eq!(base, more);
    }

    #[test]
    fn symmetry_detects_asymmetric_input() {
        assert!(!verify_symmetry(&bp(3, &[(1, 0, 1), (0, 1, 2)])));
        assert!(verify_symmetry(&f3()));
    }

    #[test]
    fn kronecker_rejects_fake() {
        // X^4 + Y^4 misses the cross terms entirely
        assert!(!verify_kronecker(&bp(3, &[(4, 0, 1), (0, 4, 1)])));
    }

    #[test]
    fn r_polynomial_p3() {
        let r = r_polynomial(&f3()).unwrap();
        assert_eq!(r.degree(), 12);
        assert_eq!(r.leading(), BigInt::from(-85)); // (1 - 256)/3
        assert_eq!(r.coeff(0), BigInt::from(0));
    }

    #[test]
    fn r_polynomial_rejects_non_divisible() {
        let fake = bp(3, &[(4, 0, 1), (0, 4, 1)]);
        assert!(matches!(r_polynomial(&fake), Err(Error::TheoremViolation(_))));
    }

    #[test]
    fn diag_polynomial_p3() {
        let d = diag_polynomial(&f3()).unwrap();
        let expect: Vec<BigInt> =
            [0, 0, -256, 768, -1024, 768, -256].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(d.coeffs(), &expect[..]);
        assert_eq!(d.coeff(0), BigInt::zero()); // f(0) = 0
    }

    #[test]
    fn diag_polynomial_rejects_fake() {
        let fake = bp(3, &[(4, 0, 1), (0, 4, 1)]);
        assert!(matches!(diag_polynomial(&fake), Err(Error::TheoremViolation(_))));
    }

    #[test]
    fn cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("Fp_3.txt");
        let f = f3();
        cache_store(&f, &path).unwrap();
        let loaded = cache_load(3, &path).unwrap();
        assert_eq!(loaded, f);
        // byte-exact file: rewriting produces identical content
        let first = std::fs::read(&path).unwrap();
        cache_store(&f, &path).unwrap();
        assert_eq!(first, std::fs::read(&path).unwrap());
    }

    #[test]
    fn cache_rejects_truncation_and_tampering() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("Fp_3.txt");
        cache_store(&f3(), &path).unwrap();
        let content = std::fs::read_to_string(&path).unwrap();

        let truncated = &content[..content.len() / 2];
        std::fs::write(&path, truncated).unwrap();
        assert!(matches!(cache_load(3, &path), Err(Error::Cache(_))));

        // flip one coefficient and keep the stale checksum
        let flipped = content.replace("3 2 384", "3 2 385");
        std::fs::write(&path, &flipped).unwrap();
        assert!(matches!(cache_load(3, &path), Err(Error::Cache(_))));

        // flip one coefficient and fix the checksum: symmetry check trips
        let body_end = flipped.rfind("CHECKSUM ").unwrap();
        let body = &flipped[..body_end];
        let digest = Sha256::digest(body.as_bytes());
        let refreshed = format!("{body}CHECKSUM {}\n", hex_string(&digest));
        std::fs::write(&path, refreshed).unwrap();
        assert!(matches!(cache_load(3, &path), Err(Error::Cache(_))));

        // wrong prime in the header
        assert!(matches!(cache_load(5, &path), Err(Error::Cache(_))));
    }

    #[test]
    fn relation_check_rejects_wrong_polynomial() {
        let mut wrong = f3();
        wrong.coeffs.insert((2, 2), BigInt::from(-761));
        let lam = lambda_qexp(41);
        assert!(verify_relation_exact(&wrong, &lam, 41).is_err());
    }
}

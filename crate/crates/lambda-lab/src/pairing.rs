//! Arithmetic in K^x / U_1(K) (valuation plus leading unit) and the
//! residual pairing matrix on the supersingular basis: off-diagonal
//! entries (lambda_i - lambda_j)^{p+1}, diagonal entries of valuation 1
//! whose units are computed *through* F_p in the unramified quadratic
//! ring modulo p^2, so that the identity "diagonal unit = Rbar(lambda_i)"
//! is a test outcome rather than an assumption.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::finitefield::{Fp2Elem, Fp2Field, SupersingularSet};
use crate::modpoly::BivarIntPoly;

/// A class in K^x / U_1(K): a valuation in (1/2)Z stored doubled (so the
/// ramified half-integer case stays in integer arithmetic, v(p) = 1 means
/// twice_val = 2) and the leading unit in F_{p^2}^x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeadingUnit {
    pub twice_val: i64,
    pub unit: Fp2Elem,
}

/// Group law: valuations add, units multiply.
pub fn lu_mul(field: &Fp2Field, x: LeadingUnit, y: LeadingUnit) -> LeadingUnit {
    LeadingUnit {
        twice_val: x.twice_val + y.twice_val,
        unit: field.mul(x.unit, y.unit),
    }
}

/// n-th power in the group, n possibly negative.
pub fn lu_pow(field: &Fp2Field, x: LeadingUnit, n: i64) -> LeadingUnit {
    let unit = if n >= 0 {
        field.pow(x.unit, n as u64)
    } else {
        let inv = field.inv(x.unit).expect("leading unit is nonzero");
        field.pow(inv, (-n) as u64)
    };
    LeadingUnit { twice_val: x.twice_val * n, unit }
}

/// The ring W(F_{p^2})/p^2: elements c0 + c1*s with c0, c1 mod p^2 and
/// the same s^2 = sigma as the residue field, so reduction mod p is
/// coefficientwise.
#[derive(Debug, Clone)]
pub struct UnramifiedQuadRing {
    p: u64,
    p2: u64,
    sigma: u64,
}

/// Element of the unramified quadratic ring mod p^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnramElem {
    pub c0: u64,
    pub c1: u64,
}

impl UnramifiedQuadRing {
    pub fn new(field: &Fp2Field) -> Self {
        let p = field.p();
        UnramifiedQuadRing { p, p2: p * p, sigma: field.sigma() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, c0: u64, c1: u64) -> UnramElem {
        UnramElem { c0: c0 % self.p2, c1: c1 % self.p2 }
    }

    /// The canonical (Teichmueller-free) lift of a residue-field element.
    pub fn lift(&self, x: Fp2Elem) -> UnramElem {
        UnramElem { c0: x.a, c1: x.b }
    }

    pub fn reduce(&self, x: UnramElem) -> Fp2Elem {
        Fp2Elem { a: x.c0 % self.p, b: x.c1 % self.p }
    }

    pub fn is_unit(&self, x: UnramElem) -> bool {
        !self.reduce(x).is_zero()
    }

    pub fn add(&self, x: UnramElem, y: UnramElem) -> UnramElem {
        UnramElem { c0: (x.c0 + y.c0) % self.p2, c1: (x.c1 + y.c1) % self.p2 }
    }

    pub fn mul(&self, x: UnramElem, y: UnramElem) -> UnramElem {
        // coefficients are < p^2 <= 961^2 in the desk range, products fit u128
        let m = self.p2 as u128;
        let c0 = (x.c0 as u128 * y.c0 as u128 + self.sigma as u128 * (x.c1 as u128 * y.c1 as u128 % m)) % m;
        let c1 = (x.c0 as u128 * y.c1 as u128 + x.c1 as u128 * y.c0 as u128) % m;
        UnramElem { c0: c0 as u64, c1: c1 as u64 }
    }

    pub fn scalar_mul(&self, c: u64, x: UnramElem) -> UnramElem {
        let m = self.p2 as u128;
        UnramElem {
            c0: (c as u128 * x.c0 as u128 % m) as u64,
            c1: (c as u128 * x.c1 as u128 % m) as u64,
        }
    }

    pub fn pow(&self, mut x: UnramElem, mut e: u64) -> UnramElem {
        let mut r = self.elem(1, 0);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        r
    }
}

/// Off-diagonal entry (lambda_i - lambda_j)^{p+1}; valuation 0. The unit
/// is the norm of lambda_i - lambda_j, hence always in F_p^x.
pub fn phi_offdiag(field: &Fp2Field, li: Fp2Elem, lj: Fp2Elem) -> Result<LeadingUnit> {
    if li == lj {
        return Err(Error::InvalidInput(
            "off-diagonal entry needs distinct lambdas".into(),
        ));
    }
    Ok(LeadingUnit {
        twice_val: 0,
        unit: field.pow(field.sub(li, lj), field.p() + 1),
    })
}

/// Both sign candidates of the displayed diagonal formula
/// +-p * prod_{k != i} (lambda_i - lambda_k)^{-(p+1)}: valuation 1,
/// units +-prod^{-(p+1)}. Returned as (plus, minus).
pub fn phi_diag_theorem(
    field: &Fp2Field,
    i: usize,
    set: &SupersingularSet,
) -> Result<(LeadingUnit, LeadingUnit)> {
    let li = *set
        .lambdas()
        .get(i)
        .ok_or_else(|| Error::InvalidInput(format!("index {i} out of range")))?;
    let mut prod = field.one();
    for &lk in set.lambdas() {
        if lk != li {
            prod = field.mul(prod, field.sub(li, lk));
        }
    }
    let inv = field
        .inv(prod)
        .ok_or_else(|| Error::InternalInconsistency("repeated lambda in census".into()))?;
    let unit = field.pow(inv, field.p() + 1);
    Ok((
        LeadingUnit { twice_val: 2, unit },
        LeadingUnit { twice_val: 2, unit: field.neg(unit) },
    ))
}

/// Diagonal entry through the modular polynomial: lift lambda_i to beta
/// in W(F_{p^2})/p^2 and read the leading unit of F(beta, beta^p), which
/// is p times a unit. Independent of the chosen lift because two lifts
/// differ by p*t and F(X, X^p)-type differences land in p^2.
pub fn phi_diag_via_modpoly(
    f: &BivarIntPoly,
    field: &Fp2Field,
    li: Fp2Elem,
) -> Result<LeadingUnit> {
    let ring = UnramifiedQuadRing::new(field);
    phi_diag_with_lift(f, field, &ring, ring.lift(li))
}

/// Same as [`phi_diag_via_modpoly`] with an explicit lift beta (used to
/// exercise lift independence).
pub fn phi_diag_with_lift(
    f: &BivarIntPoly,
    field: &Fp2Field,
    ring: &UnramifiedQuadRing,
    beta: UnramElem,
) -> Result<LeadingUnit> {
    let p = field.p();
    if f.p_level() != p {
        return Err(Error::InvalidInput("polynomial level differs from field".into()));
    }
    let d = (p + 2) as usize;
    let beta_p = ring.pow(beta, p);
    let mut xpow = Vec::with_capacity(d);
    let mut ypow = Vec::with_capacity(d);
    xpow.push(ring.elem(1, 0));
    ypow.push(ring.elem(1, 0));
    for k in 1..d {
        xpow.push(ring.mul(xpow[k - 1], beta));
        ypow.push(ring.mul(ypow[k - 1], beta_p));
    }
    let p2_big = num_bigint::BigInt::from(p * p);
    let mut acc = ring.elem(0, 0);
    for (&(i, j), c) in f.terms() {
        let cm = c.mod_floor(&p2_big).to_u64().expect("fits u64");
        let term = ring.mul(xpow[i as usize], ypow[j as usize]);
        acc = ring.add(acc, ring.scalar_mul(cm, term));
    }
    if acc.c0 % p != 0 || acc.c1 % p != 0 {
        return Err(Error::InternalInconsistency(format!(
            "F(beta, beta^p) is not divisible by p at lambda = {}",
            ring.reduce(beta)
        )));
    }
    let unit = Fp2Elem { a: acc.c0 / p % p, b: acc.c1 / p % p };
    if unit.is_zero() {
        return Err(Error::TheoremViolation(format!(
            "F(beta, beta^p) vanishes mod p^2 at lambda = {}; the diagonal unit must be nonzero",
            ring.reduce(beta)
        )));
    }
    Ok(LeadingUnit { twice_val: 2, unit })
}

/// The residual pairing matrix on Z[S] x Z[S], with the per-index sign
/// of the diagonal against the positive candidate of the displayed
/// formula.
#[derive(Debug, Clone)]
pub struct PairingMatrix {
    pub p: u64,
    pub lambdas: Vec<Fp2Elem>,
    /// Row-major n x n entries.
    pub entries: Vec<LeadingUnit>,
    /// signs[i] = diagonal unit divided by prod_{k != i}
    /// (lambda_i - lambda_k)^{-(p+1)}. Computed data: +1 for p = 1 mod 4;
    /// for p = 3 mod 4 the observed value is recorded, not asserted.
    pub signs: Vec<i8>,
}

impl PairingMatrix {
    pub fn entry(&self, i: usize, j: usize) -> LeadingUnit {
        self.entries[i * self.lambdas.len() + j]
    }

    pub fn size(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.entry(i, j) == self.entry(j, i)))
    }
}

/// Assemble the full matrix: off-diagonal entries by the norm formula,
/// diagonal entries through the modular polynomial, and the sign vector
/// from the diagonal reconciliation.
pub fn build_pairing_matrix(
    p: u64,
    f: &BivarIntPoly,
    set: &SupersingularSet,
) -> Result<PairingMatrix> {
    if f.p_level() != p || set.p() != p {
        return Err(Error::InvalidInput("mismatched primes".into()));
    }
    let field = Fp2Field::new(p)?;
    let n = set.len();
    let lambdas = set.lambdas().to_vec();
    let mut entries = vec![LeadingUnit { twice_val: 0, unit: field.one() }; n * n];
    let mut signs = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                entries[i * n + j] = phi_offdiag(&field, lambdas[i], lambdas[j])?;
            }
        }
        let diag = phi_diag_via_modpoly(f, &field, lambdas[i])?;
        entries[i * n + i] = diag;
        let (plus, _) = phi_diag_theorem(&field, i, set)?;
        let sign = if diag.unit == plus.unit {
            1i8
        } else if diag.unit == field.neg(plus.unit) {
            -1i8
        } else {
            return Err(Error::TheoremViolation(format!(
                "diagonal at lambda = {} is not +-p * prod (lambda_i - lambda_k)^{{-(p+1)}}",
                lambdas[i]
            )));
        };
        if p % 4 == 1 && sign != 1 {
            return Err(Error::TheoremViolation(format!(
                "diagonal sign at lambda = {} must be + for p = 1 mod 4",
                lambdas[i]
            )));
        }
        signs.push(sign);
    }
    let matrix = PairingMatrix { p, lambdas, entries, signs };
    if !matrix.is_symmetric() {
        return Err(Error::InternalInconsistency(
            "pairing matrix is not symmetric".into(),
        ));
    }
    Ok(matrix)
}

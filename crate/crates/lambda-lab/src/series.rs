//! Truncated integer q-expansions (nome q = e^{pi i tau}) of the Legendre
//! lambda-invariant and the ring operations needed to pin down F_p.
//!
//! Truncation semantics: a series carries an exclusive `precision` bound;
//! terms q^n with n >= precision are *unknown*, never silently zero. Every
//! operation propagates the tightest sound precision, so a dropped term can
//! never masquerade as a vanishing coefficient.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Truncated power series in q with arbitrary-precision integer
/// coefficients. `coeffs[k]` is the coefficient of q^{valuation+k}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    valuation: i64,
    coeffs: Vec<BigInt>,
    precision: i64,
}

impl IntSeries {
    /// Build a series from the coefficient of q^valuation upwards;
    /// everything at or above `precision` is unknown.
    pub fn new(valuation: i64, coeffs: Vec<BigInt>, precision: i64) -> Self {
        let mut s = IntSeries { valuation, coeffs, precision };
        s.normalize();
        s
    }

    /// The zero series known up to O(q^precision).
    pub fn zero(precision: i64) -> Self {
        IntSeries { valuation: precision, coeffs: Vec::new(), precision }
    }

    /// The constant 1 known up to O(q^precision).
    pub fn one(precision: i64) -> Self {
        assert!(precision > 0);
        IntSeries { valuation: 0, coeffs: vec![BigInt::one()], precision }
    }

    /// c * q^exp + O(q^precision).
    pub fn monomial(c: BigInt, exp: i64, precision: i64) -> Self {
        IntSeries::new(exp, vec![c], precision)
    }

    fn normalize(&mut self) {
        // drop terms at or above precision
        if self.valuation + self.coeffs.len() as i64 > self.precision {
            let keep = (self.precision - self.valuation).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.valuation = self.precision;
            }
        }
        assert!(
            self.coeffs.is_empty() || self.precision > self.valuation,
            "series invariant: precision must exceed valuation"
        );
    }

    /// Exponent of the lowest known nonzero term; for a series that is zero
    /// to its precision this is the precision itself (the tight lower bound
    /// on any nonzero term).
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Exclusive exponent bound below which coefficients are known.
    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// True iff every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of q^n. Panics if n is at or above the precision:
    /// that term is unknown, and reading it is a bug.
    pub fn coeff(&self, n: i64) -> BigInt {
        assert!(n < self.precision, "coefficient of q^{n} is beyond the precision");
        let k = n - self.valuation;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Known coefficients from the valuation upwards.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Restrict to O(q^precision) with a smaller bound.
    pub fn truncate(&self, precision: i64) -> Self {
        assert!(precision <= self.precision);
        IntSeries::new(self.valuation, self.coeffs.clone(), precision)
    }

    pub fn add(&self, other: &IntSeries) -> IntSeries {
        let precision = self.precision.min(other.precision);
        let valuation = self.valuation.min(other.valuation);
        let len = (precision - valuation).max(0) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (src, base) in [(self, self.valuation), (other, other.valuation)] {
            for (k, c) in src.coeffs.iter().enumerate() {
                let idx = (base + k as i64 - valuation) as usize;
                if idx < len {
                    coeffs[idx] += c;
                }
            }
        }
        IntSeries::new(valuation, coeffs, precision)
    }

    pub fn neg(&self) -> IntSeries {
        IntSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &IntSeries) -> IntSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> IntSeries {
        IntSeries::new(
            self.valuation,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.precision,
        )
    }

    /// Multiply by q^k (shifts valuation and precision).
    pub fn shift(&self, k: i64) -> IntSeries {
        IntSeries {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            precision: self.precision + k,
        }
    }

    /// Convolution product. The result is known strictly below
    /// min(prec_a + val_b, prec_b + val_a), the tightest sound bound.
    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let precision = (self.precision + other.valuation).min(other.precision + self.valuation);
        if self.is_zero() || other.is_zero() {
            return IntSeries::zero(precision);
        }
        let valuation = self.valuation + other.valuation;
        let len = (precision - valuation).max(0) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntSeries::new(valuation, coeffs, precision)
    }

    /// Multiplicative inverse over Z; the leading coefficient must be a
    /// unit (+1 or -1).
    pub fn inv(&self) -> Result<IntSeries> {
        let lead = self
            .coeffs
            .first()
            .ok_or_else(|| Error::NonUnitLeading("0".into()))?;
        if !lead.abs().is_one() {
            return Err(Error::NonUnitLeading(lead.to_string()));
        }
        // trailing coefficients inside the window but beyond the stored
        // vector are known zeros and still produce inverse terms
        let terms = (self.precision - self.valuation) as usize;
        let mut inv = Vec::with_capacity(terms);
        inv.push(lead.clone()); // inverse of +-1 is itself
        for k in 1..terms {
            let mut acc = BigInt::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv[k - j];
                }
            }
            inv.push(-(lead * acc));
        }
        // the k-th coefficient of the inverse uses a-coefficients up to
        // index k, all known: same term count as the input
        Ok(IntSeries::new(
            -self.valuation,
            inv,
            self.precision - 2 * self.valuation,
        ))
    }

    /// n-th power by repeated squaring.
    pub fn pow(&self, n: u64) -> IntSeries {
        if n == 0 {
            return IntSeries::one((self.precision - self.valuation).max(1));
        }
        let mut base = self.clone();
        let mut acc: Option<IntSeries> = None;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap()
    }

    /// Substitute q -> q^m: the term at exponent n moves to m*n, and the
    /// precision scales to m * precision.
    pub fn substitute_qpow(&self, m: u64) -> IntSeries {
        assert!(m >= 1, "substitution exponent must be positive");
        let m = m as i64;
        if m == 1 {
            return self.clone();
        }
        let len = self.coeffs.len();
        let mut coeffs = vec![BigInt::zero(); if len == 0 { 0 } else { (len - 1) * m as usize + 1 }];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * m as usize] = c.clone();
            }
        }
        IntSeries::new(self.valuation * m, coeffs, self.precision * m)
    }
}

/// q-expansion of the Legendre lambda-invariant in the nome q = e^{pi i tau}:
/// 16 q prod_{n>=1} ((1+q^{2n})/(1+q^{2n-1}))^8, truncated at q^prec.
/// Valuation 1, leading coefficient 16, all coefficients integers.
pub fn lambda_qexp(prec: i64) -> IntSeries {
    assert!(prec >= 2, "lambda_qexp needs prec >= 2");
    let mut num = IntSeries::one(prec);
    let mut den = IntSeries::one(prec);
    // factors with 2n-1 >= prec only touch terms above the window
    let mut n = 1i64;
    while 2 * n - 1 < prec {
        if 2 * n < prec {
            num = num.mul(&one_plus_qk(2 * n, prec));
        }
        den = den.mul(&one_plus_qk(2 * n - 1, prec));
        n += 1;
    }
    let quot = num.mul(&den.inv().expect("1 + O(q) is a unit"));
    quot.pow(8).shift(1).scale(&BigInt::from(16)).truncate(prec)
}

fn one_plus_qk(k: i64, prec: i64) -> IntSeries {
    let mut coeffs = vec![BigInt::zero(); (k + 1) as usize];
    coeffs[0] = BigInt::one();
    coeffs[k as usize] = BigInt::one();
    IntSeries::new(0, coeffs, prec)
}

//! Arithmetic in Z_p and Z_p[sqrt(-p)] at finite precision, CM lifts of
//! supersingular lambda-invariants in F_p as roots of f(X) = F_p(X,X),
//! class numbers h(-p) by reduced-forms search, and the congruence
//! F_p(l1, l1^p) = (l1 - l1^p)^2 modulo p*sqrt(-p).
//!
//! Valuations are normalized with v(p) = 1 and stored doubled, so the
//! ramified v(sqrt(-p)) = 1/2 stays in integer arithmetic.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{is_prime, legendre, sqrt_mod_scan};
use crate::error::{Error, Result};
use crate::finitefield::SupersingularSet;
use crate::modpoly::{BivarIntPoly, UnivarIntPoly};

/// Element of Z/p^N viewed as a p-adic integer known to precision N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicInt {
    p: u64,
    value: BigUint,
    prec: u32,
}

fn pow_p(p: u64, n: u32) -> BigUint {
    BigUint::from(p).pow(n)
}

impl PadicInt {
    pub fn new(p: u64, value: &BigInt, prec: u32) -> Self {
        let m = BigInt::from(pow_p(p, prec));
        let v = value.mod_floor(&m).to_biguint().expect("mod_floor is nonnegative");
        PadicInt { p, value: v, prec }
    }

    pub fn zero(p: u64, prec: u32) -> Self {
        PadicInt { p, value: BigUint::zero(), prec }
    }

    pub fn from_u64(p: u64, value: u64, prec: u32) -> Self {
        PadicInt::new(p, &BigInt::from(value), prec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// Residue mod p of the unit part digit 0.
    pub fn reduce_mod_p(&self) -> u64 {
        use num_traits::ToPrimitive;
        (&self.value % self.p).to_u64().expect("residue fits")
    }

    /// p-adic valuation, capped at the precision (a value that is zero to
    /// its precision has valuation at least prec).
    pub fn valuation(&self) -> u32 {
        if self.value.is_zero() {
            return self.prec;
        }
        let mut v = 0;
        let mut x = self.value.clone();
        let p = BigUint::from(self.p);
        while (&x % &p).is_zero() && v < self.prec {
            x /= &p;
            v += 1;
        }
        v
    }

    fn bin(&self, other: &PadicInt, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> PadicInt {
        assert_eq!(self.p, other.p, "mixed primes");
        let prec = self.prec.min(other.prec);
        PadicInt::new(
            self.p,
            &f(&BigInt::from(self.value.clone()), &BigInt::from(other.value.clone())),
            prec,
        )
    }

    pub fn add(&self, other: &PadicInt) -> PadicInt {
        self.bin(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PadicInt) -> PadicInt {
        self.bin(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &PadicInt) -> PadicInt {
        self.bin(other, |a, b| a * b)
    }

    pub fn neg(&self) -> PadicInt {
        PadicInt::new(self.p, &-BigInt::from(self.value.clone()), self.prec)
    }

    /// Exact division by p; costs one digit of precision.
    pub fn div_exact_p(&self) -> Result<PadicInt> {
        let p = BigUint::from(self.p);
        if !(&self.value % &p).is_zero() {
            return Err(Error::InvalidInput("value not divisible by p".into()));
        }
        if self.prec == 0 {
            return Err(Error::PrecisionLoss("no digits left after division by p".into()));
        }
        Ok(PadicInt { p: self.p, value: &self.value / &p, prec: self.prec - 1 })
    }

    /// Inverse of a unit (division only by units).
    pub fn unit_inv(&self) -> Result<PadicInt> {
        let p = BigUint::from(self.p);
        if (&self.value % &p).is_zero() {
            return Err(Error::InvalidInput("cannot invert a non-unit".into()));
        }
        // Newton iteration on the inverse, doubling correct digits per round
        let mut inv = BigInt::from(crate::arith::invmod(
            (&self.value % &p).try_into().expect("fits"),
            self.p,
        )
        .expect("unit mod p"));
        let value = BigInt::from(self.value.clone());
        let mut k = 1;
        while k < self.prec {
            k *= 2;
            let mk = BigInt::from(pow_p(self.p, k.min(self.prec)));
            inv = (&inv * (BigInt::from(2) - (&value * &inv).mod_floor(&mk))).mod_floor(&mk);
        }
        Ok(PadicInt { p: self.p, value: inv.to_biguint().expect("nonnegative"), prec: self.prec })
    }

    /// Same value, lower declared precision.
    pub fn truncate(&self, prec: u32) -> PadicInt {
        assert!(prec <= self.prec);
        PadicInt::new(self.p, &BigInt::from(self.value.clone()), prec)
    }

    /// Canonical lift to a higher working precision (the new digits are a
    /// choice, not information).
    pub fn lift_to(&self, prec: u32) -> PadicInt {
        assert!(prec >= self.prec);
        PadicInt { p: self.p, value: self.value.clone(), prec }
    }
}

/// Element a + b*pi of Z_p[pi], pi^2 = -p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPadic {
    pub a: PadicInt,
    pub b: PadicInt,
}

impl QuadPadic {
    pub fn new(a: PadicInt, b: PadicInt) -> Self {
        assert_eq!(a.p, b.p);
        QuadPadic { a, b }
    }

    pub fn p(&self) -> u64 {
        self.a.p
    }

    pub fn prec(&self) -> u32 {
        self.a.prec.min(self.b.prec)
    }

    pub fn add(&self, other: &QuadPadic) -> QuadPadic {
        QuadPadic { a: self.a.add(&other.a), b: self.b.add(&other.b) }
    }

    pub fn sub(&self, other: &QuadPadic) -> QuadPadic {
        QuadPadic { a: self.a.sub(&other.a), b: self.b.sub(&other.b) }
    }

    pub fn mul(&self, other: &QuadPadic) -> QuadPadic {
        // (a1 + b1 pi)(a2 + b2 pi) = a1 a2 - p b1 b2 + (a1 b2 + b1 a2) pi
        let p = PadicInt::from_u64(self.p(), self.p(), self.prec().max(other.prec()));
        QuadPadic {
            a: self.a.mul(&other.a).sub(&p.mul(&self.b.mul(&other.b))),
            b: self.a.mul(&other.b).add(&self.b.mul(&other.a)),
        }
    }

    pub fn pow(&self, mut e: u64) -> QuadPadic {
        let prec = self.prec();
        let mut r = QuadPadic {
            a: PadicInt::from_u64(self.p(), 1, prec),
            b: PadicInt::zero(self.p(), prec),
        };
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        r
    }

    /// Conjugation a + b*pi -> a - b*pi, a ring automorphism.
    pub fn conj(&self) -> QuadPadic {
        QuadPadic { a: self.a.clone(), b: self.b.neg() }
    }

    /// Twice the valuation v(a + b*pi) = min(v(a), v(b) + 1/2), capped by
    /// the precision.
    pub fn twice_valuation(&self) -> i64 {
        let va = 2 * self.a.valuation() as i64;
        let vb = 2 * self.b.valuation() as i64 + 1;
        va.min(vb)
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.a.value.is_zero() && self.b.value.is_zero()
    }

    pub fn truncate(&self, prec: u32) -> QuadPadic {
        QuadPadic { a: self.a.truncate(prec), b: self.b.truncate(prec) }
    }

    pub fn lift_to(&self, prec: u32) -> QuadPadic {
        QuadPadic { a: self.a.lift_to(prec), b: self.b.lift_to(prec) }
    }
}

impl std::fmt::Display for QuadPadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} + {}*sqrt(-{}) + O({}^{})",
            self.a.value,
            self.b.value,
            self.p(),
            self.p(),
            self.prec()
        )
    }
}

/// h(-p) by exhaustive search over reduced primitive forms (a, b, c) of
/// discriminant b^2 - 4ac = -p: |b| <= a <= c, with b > 0 on the
/// boundary |b| = a or a = c.
pub fn class_number(p: u64) -> Result<u64> {
    if p % 4 != 3 || p < 7 || !is_prime(p) {
        return Err(Error::InvalidInput(format!(
            "class_number needs a prime p = 3 mod 4, p >= 7; got {p}"
        )));
    }
    let mut count = 0u64;
    let mut a = 1i64;
    let pi = p as i64;
    while 3 * a * a <= pi {
        for b in -a..=a {
            let num = b * b + pi;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                continue;
            }
            let g = gcd3(a.unsigned_abs(), b.unsigned_abs(), c.unsigned_abs());
            if g != 1 {
                continue;
            }
            count += 1;
        }
        a += 1;
    }
    Ok(count)
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    gcd(gcd(a, b), c)
}

/// |S ∩ F_p| = 3 h(-p)?
pub fn count_check_3h(p: u64, set: &SupersingularSet) -> Result<bool> {
    if set.p() != p {
        return Err(Error::InvalidInput("mismatched primes".into()));
    }
    let h = class_number(p)?;
    Ok(set.count_in_prime_field() as u64 == 3 * h)
}

/// Result of a CM lift.
#[derive(Debug, Clone)]
pub struct CmLift {
    /// The lifted root l1 = a + b*sqrt(-p), v(b) = 0, a = lam0 mod p.
    pub lambda1: QuadPadic,
    /// Newton steps taken.
    pub steps: usize,
    /// Twice the residual valuation of f(iterate) after each step,
    /// starting with the seed residual.
    pub residual_twice_vals: Vec<i64>,
}

/// Evaluate an integer polynomial at a + b*pi (pi^2 = -p) by Horner,
/// returning the pi-even and pi-odd parts.
pub fn eval_quad(poly: &UnivarIntPoly, x: &QuadPadic) -> QuadPadic {
    let prec = x.prec();
    let p = x.p();
    let mut acc = QuadPadic {
        a: PadicInt::zero(p, prec),
        b: PadicInt::zero(p, prec),
    };
    for c in poly.coeffs().iter().rev() {
        acc = acc.mul(x);
        acc.a = acc.a.add(&PadicInt::new(p, c, prec));
    }
    acc
}

fn derivative(poly: &UnivarIntPoly) -> UnivarIntPoly {
    UnivarIntPoly::new(
        poly.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect(),
    )
}

/// Lift a supersingular lam0 in F_p to a root l1 = a + b*sqrt(-p) of
/// f(X) = F_p(X, X) with f(l1) = 0 to valuation >= n.
///
/// Seed: a0 = lam0, b0 a square root of 2 f(a0) / (p f''(a0)) mod p
/// (well defined: v(f(a0)) >= 1 and f''(a0) = -2 mod p because
/// f = -(X^p - X)^2 mod p). Then two-variable Newton on the pi-even and
/// pi-odd parts of f(a + b*pi), doubling the working precision per step.
pub fn cm_lift(f: &UnivarIntPoly, p: u64, lam0: u64, n: u32) -> Result<CmLift> {
    if p % 4 != 3 || p < 7 || !is_prime(p) {
        return Err(Error::InvalidInput(format!(
            "cm_lift needs a prime p = 3 mod 4, p >= 7; got {p}"
        )));
    }
    if n < 4 {
        return Err(Error::InvalidInput("target precision must be at least 4".into()));
    }
    let lam0 = lam0 % p;

    // integer evaluations at the seed
    let eval_at = |poly: &UnivarIntPoly, x: u64| -> BigInt {
        let mut acc = BigInt::zero();
        for c in poly.coeffs().iter().rev() {
            acc = acc * BigInt::from(x) + c;
        }
        acc
    };
    let f1 = derivative(f);
    let f2 = derivative(&f1);
    let p_big = BigInt::from(p);
    let f_at = eval_at(f, lam0);
    if !f_at.mod_floor(&p_big).is_zero() {
        return Err(Error::InvalidInput(format!(
            "lambda0 = {lam0} is not a root of F_p(X,X) mod {p}"
        )));
    }
    use num_traits::ToPrimitive;
    let k = (&f_at / &p_big).mod_floor(&p_big).to_u64().expect("fits");
    let f2_mod = eval_at(&f2, lam0).mod_floor(&p_big).to_u64().expect("fits");
    // b0^2 = 2 (f(a0)/p) / f''(a0) mod p
    let target = crate::arith::mulmod(
        crate::arith::mulmod(2 % p, k, p),
        crate::arith::invmod(f2_mod, p).ok_or_else(|| {
            Error::InternalInconsistency("f''(lam0) = 0 mod p contradicts the diagonal congruence".into())
        })?,
        p,
    );
    if target == 0 {
        return Err(Error::TheoremViolation(format!(
            "seed b0 vanishes at lambda0 = {lam0}: the lift would be unramified"
        )));
    }
    if legendre(target, p) != 1 {
        return Err(Error::TheoremViolation(format!(
            "b0^2 = {target} is a non-residue mod {p}: no lift in Q_p(sqrt(-p)) at lambda0 = {lam0}"
        )));
    }
    let b0 = sqrt_mod_scan(target, p).expect("residue has a root");

    // precision schedule: start small, double per step; the division by
    // det (valuation exactly 1) costs one digit per step, hence the slack
    let m_final = n + 9;
    let mut m = 4u32.min(m_final);
    let mut x = QuadPadic {
        a: PadicInt::from_u64(p, lam0, m),
        b: PadicInt::from_u64(p, b0, m),
    };
    let mut residuals = Vec::new();
    let mut prev: Option<i64> = None;
    let mut steps = 0usize;
    loop {
        let r = eval_quad(f, &x);
        let w = r.twice_valuation();
        residuals.push(w);
        if let Some(pw) = prev {
            if w <= pw {
                return Err(Error::PrecisionLoss(format!(
                    "Newton residual stalled at twice-valuation {w} (was {pw}) for lambda0 = {lam0}, p = {p}"
                )));
            }
        }
        prev = Some(w);
        if m >= m_final && w >= 2 * n as i64 {
            break;
        }
        if steps > 40 {
            return Err(Error::PrecisionLoss(format!(
                "Newton did not converge within 40 steps for lambda0 = {lam0}, p = {p}"
            )));
        }
        // raise working precision, then correct
        m = (2 * m).min(m_final);
        let x_hi = x.lift_to(m);
        let r = eval_quad(f, &x_hi);
        let fp = eval_quad(&f1, &x_hi);
        let (c, d) = (fp.a.clone(), fp.b.clone());
        // delta = -f(x)/f'(x) with f'(x) = C + D pi:
        // det = C^2 + p D^2 (valuation exactly 1),
        // delta_a = -(AC + pBD)/det, delta_b = (AD - BC)/det
        let p_elt = PadicInt::from_u64(p, p, m);
        let det = c.mul(&c).add(&p_elt.mul(&d).mul(&d));
        let det_over_p = det.div_exact_p().map_err(|_| {
            Error::PrecisionLoss("Jacobian determinant not divisible by p".into())
        })?;
        if det_over_p.valuation() != 0 {
            return Err(Error::PrecisionLoss(format!(
                "Jacobian determinant has valuation != 1 at lambda0 = {lam0}, p = {p}"
            )));
        }
        let num_a = r.a.mul(&c).add(&p_elt.mul(&r.b).mul(&d)).neg();
        let num_b = r.a.mul(&d).sub(&r.b.mul(&c));
        let inv = det_over_p.unit_inv()?;
        let da = num_a.div_exact_p()?.mul(&inv);
        let db = num_b.div_exact_p()?.mul(&inv);
        x = QuadPadic {
            a: x_hi.a.add(&da.lift_to(m)),
            b: x_hi.b.add(&db.lift_to(m)),
        };
        steps += 1;
    }
    if x.b.valuation() != 0 {
        return Err(Error::TheoremViolation(format!(
            "lift at lambda0 = {lam0} landed in Z_p (v(b) > 0); conjugate lifts must be distinct"
        )));
    }
    Ok(CmLift {
        lambda1: x.truncate(n),
        steps,
        residual_twice_vals: residuals,
    })
}

/// Outcome of the final congruence check.
#[derive(Debug, Clone)]
pub struct Thm3Report {
    pub passed: bool,
    /// Twice v(F_p(l1, l1^p)); the theorem needs exactly 2.
    pub twice_val_f: i64,
    /// Twice v(l1 - l1^p); the theorem needs exactly 1.
    pub twice_val_diff: i64,
    /// Twice v(F_p(l1, l1^p) - (l1 - l1^p)^2); the theorem needs >= 3.
    pub twice_val_defect: i64,
}

/// Check F_p(l1, l1^p) = (l1 - l1^p)^2 modulo p*sqrt(-p), where l1^p is
/// the literal p-th power in Z_p[sqrt(-p)].
pub fn verify_thm3(f: &BivarIntPoly, l1: &QuadPadic, p: u64) -> Result<Thm3Report> {
    if f.p_level() != p || l1.p() != p {
        return Err(Error::InvalidInput("mismatched primes".into()));
    }
    let prec = l1.prec();
    if prec < 4 {
        return Err(Error::PrecisionLoss(
            "need precision >= 4 to decide the congruence".into(),
        ));
    }
    let d = (p + 2) as usize;
    let l1p = l1.pow(p);
    let mut xpow: Vec<QuadPadic> = Vec::with_capacity(d);
    let mut ypow: Vec<QuadPadic> = Vec::with_capacity(d);
    let one = QuadPadic {
        a: PadicInt::from_u64(p, 1, prec),
        b: PadicInt::zero(p, prec),
    };
    xpow.push(one.clone());
    ypow.push(one);
    for k in 1..d {
        xpow.push(xpow[k - 1].mul(l1));
        ypow.push(ypow[k - 1].mul(&l1p));
    }
    let mut acc = QuadPadic {
        a: PadicInt::zero(p, prec),
        b: PadicInt::zero(p, prec),
    };
    for (&(i, j), c) in f.terms() {
        let t = xpow[i as usize].mul(&ypow[j as usize]);
        let scaled = QuadPadic {
            a: t.a.mul(&PadicInt::new(p, c, prec)),
            b: t.b.mul(&PadicInt::new(p, c, prec)),
        };
        acc = acc.add(&scaled);
    }
    let diff = l1.sub(&l1p);
    let defect = acc.sub(&diff.mul(&diff));
    let twice_val_f = acc.twice_valuation();
    let twice_val_diff = diff.twice_valuation();
    let twice_val_defect = defect.twice_valuation();
    Ok(Thm3Report {
        passed: twice_val_f == 2 && twice_val_diff == 1 && twice_val_defect >= 3,
        twice_val_f,
        twice_val_diff,
        twice_val_defect,
    })
}

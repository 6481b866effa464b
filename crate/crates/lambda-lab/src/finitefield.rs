//! F_p and F_{p^2} arithmetic, the supersingular lambda-invariant census,
//! and the congruence checks for Rbar, the mod-p reduction of
//! R(X) = F_p(X, X^p)/p.
//!
//! F_{p^2} is realized as F_p(s) with s^2 = sigma, the smallest quadratic
//! non-residue >= 2; the deterministic sigma makes every printed value
//! reproducible across runs.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{invmod, is_prime, legendre, mulmod};
use crate::error::{Error, Result};
use crate::modpoly::UnivarIntPoly;

/// Element a + b*s of F_{p^2}; in the prime field iff b = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp2Elem {
    pub a: u64,
    pub b: u64,
}

impl Fp2Elem {
    pub fn is_in_prime_field(&self) -> bool {
        self.b == 0
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl std::fmt::Display for Fp2Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else if self.a == 0 {
            write!(f, "{}*s", self.b)
        } else {
            write!(f, "{} + {}*s", self.a, self.b)
        }
    }
}

/// The quadratic extension F_{p^2} = F_p(s), s^2 = sigma.
#[derive(Debug, Clone)]
pub struct Fp2Field {
    p: u64,
    sigma: u64,
}

impl Fp2Field {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} is not an odd prime")));
        }
        let sigma = (2..p)
            .find(|&s| legendre(s, p) == p - 1)
            .expect("every odd prime has a non-residue");
        Ok(Fp2Field { p, sigma })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn sigma(&self) -> u64 {
        self.sigma
    }

    pub fn elem(&self, a: u64, b: u64) -> Fp2Elem {
        Fp2Elem { a: a % self.p, b: b % self.p }
    }

    pub fn zero(&self) -> Fp2Elem {
        Fp2Elem { a: 0, b: 0 }
    }

    pub fn one(&self) -> Fp2Elem {
        Fp2Elem { a: 1, b: 0 }
    }

    pub fn add(&self, x: Fp2Elem, y: Fp2Elem) -> Fp2Elem {
        Fp2Elem { a: (x.a + y.a) % self.p, b: (x.b + y.b) % self.p }
    }

    pub fn sub(&self, x: Fp2Elem, y: Fp2Elem) -> Fp2Elem {
        Fp2Elem {
            a: (x.a + self.p - y.a) % self.p,
            b: (x.b + self.p - y.b) % self.p,
        }
    }

    pub fn neg(&self, x: Fp2Elem) -> Fp2Elem {
        self.sub(self.zero(), x)
    }

    pub fn mul(&self, x: Fp2Elem, y: Fp2Elem) -> Fp2Elem {
        let p = self.p;
        Fp2Elem {
            a: (mulmod(x.a, y.a, p) + mulmod(self.sigma, mulmod(x.b, y.b, p), p)) % p,
            b: (mulmod(x.a, y.b, p) + mulmod(x.b, y.a, p)) % p,
        }
    }

    pub fn pow(&self, mut x: Fp2Elem, mut e: u64) -> Fp2Elem {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        r
    }

    /// Norm to F_p: x * x^p = a^2 - sigma b^2.
    pub fn norm(&self, x: Fp2Elem) -> u64 {
        let p = self.p;
        (mulmod(x.a, x.a, p) + p - mulmod(self.sigma, mulmod(x.b, x.b, p), p) % p) % p
    }

    pub fn inv(&self, x: Fp2Elem) -> Option<Fp2Elem> {
        if x.is_zero() {
            return None;
        }
        let n_inv = invmod(self.norm(x), self.p)?;
        Some(Fp2Elem {
            a: mulmod(x.a, n_inv, self.p),
            b: mulmod((self.p - x.b) % self.p, n_inv, self.p),
        })
    }

    /// Frobenius x -> x^p, which is (a, b) -> (a, -b).
    pub fn frobenius(&self, x: Fp2Elem) -> Fp2Elem {
        Fp2Elem { a: x.a, b: (self.p - x.b) % self.p }
    }

    /// All p^2 elements in lexicographic (a, b) order.
    pub fn elements(&self) -> impl Iterator<Item = Fp2Elem> + '_ {
        let p = self.p;
        (0..p).flat_map(move |a| (0..p).map(move |b| Fp2Elem { a, b }))
    }

    fn index(&self, x: Fp2Elem) -> usize {
        (x.a * self.p + x.b) as usize
    }
}

/// Dense polynomial over F_p, low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    /// Reduce an integer polynomial mod p.
    pub fn from_int_poly(f: &UnivarIntPoly, p: u64) -> Self {
        let p_big = num_bigint::BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&p_big).to_u64().expect("residue fits u64"))
            .collect();
        FpPoly::new(p, coeffs)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn eval_fp(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, self.p) + c) % self.p;
        }
        acc
    }

    /// Horner evaluation in F_{p^2} (coefficients embedded from F_p).
    pub fn eval_fp2(&self, field: &Fp2Field, x: Fp2Elem) -> Fp2Elem {
        let mut acc = field.zero();
        for &c in self.coeffs.iter().rev() {
            acc = field.add(field.mul(acc, x), field.elem(c, 0));
        }
        acc
    }

    pub fn derivative(&self) -> FpPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mulmod(k as u64 % self.p, c, self.p))
            .collect();
        FpPoly::new(self.p, coeffs)
    }

    fn rem(&self, other: &FpPoly) -> FpPoly {
        assert!(!other.is_zero());
        let mut r = self.coeffs.clone();
        let d = other.degree();
        let lead_inv = invmod(*other.coeffs.last().unwrap(), self.p).expect("unit leading");
        while r.len() > d {
            let k = r.len() - 1;
            let f = mulmod(r[k], lead_inv, self.p);
            if f != 0 {
                for (t, &oc) in other.coeffs.iter().enumerate() {
                    let idx = k - d + t;
                    r[idx] = (r[idx] + self.p - mulmod(f, oc, self.p)) % self.p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.len() <= d {
                break;
            }
        }
        FpPoly::new(self.p, r)
    }

    pub fn gcd(&self, other: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }
}

/// Deuring/Hasse polynomial H(x) = sum_i C(m, i)^2 x^i with m = (p-1)/2;
/// its roots in F_{p^2} are exactly the supersingular lambda-invariants.
pub fn hasse_polynomial(p: u64) -> Result<FpPoly> {
    if p < 5 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("p = {p} must be a prime >= 5")));
    }
    let m = (p - 1) / 2;
    let mut binom = 1u64;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    coeffs.push(1);
    for i in 1..=m {
        // C(m, i) = C(m, i-1) * (m - i + 1) / i, all factors below p
        binom = mulmod(binom, (m - i + 1) % p, p);
        binom = mulmod(binom, invmod(i % p, p).expect("i < p"), p);
        coeffs.push(mulmod(binom, binom, p));
    }
    let h = FpPoly::new(p, coeffs);
    if !h.is_squarefree() {
        return Err(Error::InternalInconsistency(format!(
            "Hasse polynomial for p = {p} is not squarefree"
        )));
    }
    Ok(h)
}

/// The supersingular lambda-invariants of characteristic p, in
/// lexicographic (a, b) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupersingularSet {
    p: u64,
    lambdas: Vec<Fp2Elem>,
}

impl SupersingularSet {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn lambdas(&self) -> &[Fp2Elem] {
        &self.lambdas
    }

    pub fn contains(&self, x: Fp2Elem) -> bool {
        self.lambdas.binary_search(&x).is_ok()
    }

    pub fn count_in_prime_field(&self) -> usize {
        self.lambdas.iter().filter(|l| l.is_in_prime_field()).count()
    }

    pub fn is_frobenius_closed(&self, field: &Fp2Field) -> bool {
        self.lambdas.iter().all(|&l| self.contains(field.frobenius(l)))
    }
}

/// Quadratic-character table of F_{p^2}: chi(x) = 0, +1 or -1.
struct CharTable {
    squares: Vec<bool>,
}

impl CharTable {
    fn build(field: &Fp2Field) -> Self {
        let p = field.p() as usize;
        let mut squares = vec![false; p * p];
        for x in field.elements() {
            squares[field.index(field.mul(x, x))] = true;
        }
        CharTable { squares }
    }

    fn chi(&self, field: &Fp2Field, x: Fp2Elem) -> i64 {
        if x.is_zero() {
            0
        } else if self.squares[field.index(x)] {
            1
        } else {
            -1
        }
    }
}

/// Character-sum point count for y^2 = x(x-1)(x-lam) over F_{p^2}:
/// sums chi of the cubic; the trace t = p^2 + 1 - N is divisible by p
/// exactly for supersingular lam.
fn trace_divisible(field: &Fp2Field, table: &CharTable, lam: Fp2Elem) -> bool {
    let one = field.one();
    let mut sum = 0i64;
    for x in field.elements() {
        let f = field.mul(field.mul(x, field.sub(x, one)), field.sub(x, lam));
        sum += table.chi(field, f);
    }
    // t = -sum
    sum.rem_euclid(field.p() as i64) == 0
}

/// Independent supersingularity oracle: counts points of the Legendre
/// curve y^2 = x(x-1)(x-lam) over F_{p^2} and tests p | trace.
pub fn is_supersingular_pointcount(p: u64, lam: Fp2Elem) -> Result<bool> {
    let field = Fp2Field::new(p)?;
    if lam == field.zero() || lam == field.one() {
        return Err(Error::InvalidInput(format!(
            "lambda = {lam} gives a degenerate Legendre curve"
        )));
    }
    let table = CharTable::build(&field);
    Ok(trace_divisible(&field, &table, lam))
}

/// All roots of the Hasse polynomial in F_{p^2}, by exhaustive scan,
/// each verified simple, the count verified to be (p-1)/2, and the whole
/// census cross-checked against the point-count oracle on every element
/// of F_{p^2} away from {0, 1}.
pub fn supersingular_lambdas(p: u64) -> Result<SupersingularSet> {
    let field = Fp2Field::new(p)?;
    let h = hasse_polynomial(p)?;
    let h_deriv = h.derivative();
    let mut lambdas = Vec::new();
    for x in field.elements() {
        if x == field.zero() || x == field.one() {
            continue;
        }
        if h.eval_fp2(&field, x).is_zero() {
            if h_deriv.eval_fp2(&field, x).is_zero() {
                return Err(Error::InternalInconsistency(format!(
                    "lambda = {x} is a multiple root of the Hasse polynomial for p = {p}"
                )));
            }
            lambdas.push(x);
        }
    }
    if lambdas.len() != ((p - 1) / 2) as usize {
        return Err(Error::InternalInconsistency(format!(
            "found {} supersingular lambdas for p = {p}, expected {}",
            lambdas.len(),
            (p - 1) / 2
        )));
    }
    let set = SupersingularSet { p, lambdas };
    let table = CharTable::build(&field);
    for x in field.elements() {
        if x == field.zero() || x == field.one() {
            continue;
        }
        if trace_divisible(&field, &table, x) != set.contains(x) {
            return Err(Error::InternalInconsistency(format!(
                "point-count oracle disagrees with the Hasse census at lambda = {x}, p = {p}"
            )));
        }
    }
    Ok(set)
}

/// Rbar(lam) by Horner evaluation in F_{p^2}.
pub fn evaluate_rbar(rbar: &FpPoly, field: &Fp2Field, lam: Fp2Elem) -> Fp2Elem {
    rbar.eval_fp2(field, lam)
}

/// One row of the corollary check at a supersingular lambda_i.
#[derive(Debug, Clone)]
pub struct CorollaryEntry {
    pub lambda: Fp2Elem,
    pub rbar: Fp2Elem,
    /// epsilon_i with Rbar(lambda_i) = epsilon_i * (-1)^{(p-1)/2} *
    /// prod_{k != i} (lambda_i - lambda_k)^{-(p+1)}.
    pub sign: i8,
}

#[derive(Debug, Clone)]
pub struct CorollaryReport {
    pub p: u64,
    pub entries: Vec<CorollaryEntry>,
}

impl CorollaryReport {
    pub fn signs(&self) -> Vec<i8> {
        self.entries.iter().map(|e| e.sign).collect()
    }
}

/// Check Rbar(lambda_i) = +-(-1)^{(p-1)/2} prod_{k != i}
/// (lambda_i - lambda_k)^{-(p+1)} for every supersingular lambda_i, with
/// sign + whenever p = 1 mod 4 or lambda_i is in F_p.
pub fn corollary_check(p: u64, rbar: &FpPoly, set: &SupersingularSet) -> Result<CorollaryReport> {
    if set.p() != p || rbar.p() != p {
        return Err(Error::InvalidInput("mismatched primes".into()));
    }
    let field = Fp2Field::new(p)?;
    let mut entries = Vec::with_capacity(set.len());
    for &li in set.lambdas() {
        let mut prod = field.one();
        for &lk in set.lambdas() {
            if lk != li {
                prod = field.mul(prod, field.sub(li, lk));
            }
        }
        let Some(prod_inv) = field.inv(prod) else {
            return Err(Error::InternalInconsistency(
                "supersingular lambdas are not distinct".into(),
            ));
        };
        let mut predicted = field.pow(prod_inv, p + 1);
        if (p - 1) / 2 % 2 == 1 {
            predicted = field.neg(predicted);
        }
        let rv = rbar.eval_fp2(&field, li);
        let eps = field.mul(rv, field.inv(predicted).expect("nonzero"));
        let sign = if eps == field.one() {
            1i8
        } else if eps == field.neg(field.one()) {
            -1i8
        } else {
            return Err(Error::TheoremViolation(format!(
                "epsilon at lambda = {li} (p = {p}) is {eps}, not +-1"
            )));
        };
        if sign != 1 && (p % 4 == 1 || li.is_in_prime_field()) {
            return Err(Error::TheoremViolation(format!(
                "sign at lambda = {li} (p = {p}) must be + (p = 1 mod 4 or lambda in F_p)"
            )));
        }
        entries.push(CorollaryEntry { lambda: li, rbar: rv, sign });
    }
    Ok(CorollaryReport { p, entries })
}

#[derive(Debug, Clone)]
pub struct VanishingReport {
    pub all_vanish: bool,
    /// Ordinary lambdas with nonzero Rbar (empty when the check passes).
    pub failures: Vec<Fp2Elem>,
    /// Rbar at the degenerate parameters, recorded but not asserted.
    pub rbar_at_zero: Fp2Elem,
    pub rbar_at_one: Fp2Elem,
}

/// Check Rbar(lambda) = 0 for every ordinary lambda in F_{p^2} \ {0, 1}.
pub fn ordinary_vanishing_check(
    p: u64,
    rbar: &FpPoly,
    set: &SupersingularSet,
) -> Result<VanishingReport> {
    if set.p() != p || rbar.p() != p {
        return Err(Error::InvalidInput("mismatched primes".into()));
    }
    let field = Fp2Field::new(p)?;
    let mut failures = Vec::new();
    for x in field.elements() {
        if x == field.zero() || x == field.one() || set.contains(x) {
            continue;
        }
        if !rbar.eval_fp2(&field, x).is_zero() {
            failures.push(x);
        }
    }
    Ok(VanishingReport {
        all_vanish: failures.is_empty(),
        failures,
        rbar_at_zero: rbar.eval_fp2(&field, field.zero()),
        rbar_at_one: rbar.eval_fp2(&field, field.one()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sigma_is_deterministic() {
        assert_eq!(Fp2Field::new(5).unwrap().sigma(), 2);
        assert_eq!(Fp2Field::new(7).unwrap().sigma(), 3);
        assert_eq!(Fp2Field::new(31).unwrap().sigma(), 3);
        assert!(Fp2Field::new(9).is_err());
    }

    #[test]
    fn hasse_small() {
        assert_eq!(hasse_polynomial(5).unwrap().coeffs(), &[1, 4, 1]);
        assert_eq!(hasse_polynomial(7).unwrap().coeffs(), &[1, 2, 2, 1]);
        assert_eq!(hasse_polynomial(13).unwrap().degree(), 6);
        assert!(hasse_polynomial(4).is_err());
        assert!(hasse_polynomial(3).is_err());
    }

    #[test]
    fn census_p7() {
        let s = supersingular_lambdas(7).unwrap();
        let expect: Vec<Fp2Elem> =
            [(2, 0), (4, 0), (6, 0)].iter().map(|&(a, b)| Fp2Elem { a, b }).collect();
        assert_eq!(s.lambdas(), &expect[..]);
        assert_eq!(s.count_in_prime_field(), 3);
    }

    #[test]
    fn census_p5_conjugate_pair() {
        // roots of x^2 - x + 1 over F_25, off the prime field
        let s = supersingular_lambdas(5).unwrap();
        let field = Fp2Field::new(5).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.count_in_prime_field(), 0);
        for &l in s.lambdas() {
            let val = field.add(field.sub(field.mul(l, l), l), field.one());
            assert!(val.is_zero());
        }
        assert_eq!(s.lambdas()[0], Fp2Elem { a: 3, b: 2 });
        assert_eq!(s.lambdas()[1], Fp2Elem { a: 3, b: 3 });
        assert!(s.is_frobenius_closed(&field));
    }

    #[test]
    fn census_sizes() {
        assert_eq!(supersingular_lambdas(13).unwrap().len(), 6);
        assert_eq!(supersingular_lambdas(11).unwrap().len(), 5);
    }

    #[test]
    fn pointcount_examples() {
        assert!(is_supersingular_pointcount(7, Fp2Elem { a: 2, b: 0 }).unwrap());
        assert!(!is_supersingular_pointcount(7, Fp2Elem { a: 3, b: 0 }).unwrap());
        assert!(!is_supersingular_pointcount(5, Fp2Elem { a: 2, b: 0 }).unwrap());
        assert!(is_supersingular_pointcount(7, Fp2Elem { a: 0, b: 0 }).is_err());
        assert!(is_supersingular_pointcount(7, Fp2Elem { a: 1, b: 0 }).is_err());
    }

    #[test]
    fn rbar_zero_poly() {
        let field = Fp2Field::new(7).unwrap();
        let z = FpPoly::new(7, vec![]);
        assert!(evaluate_rbar(&z, &field, Fp2Elem { a: 5, b: 3 }).is_zero());
    }

    #[test]
    fn rbar_frobenius_commutes() {
        let field = Fp2Field::new(7).unwrap();
        let r = FpPoly::new(7, vec![3, 1, 0, 5, 2]);
        for x in field.elements().take(30) {
            let lhs = field.pow(r.eval_fp2(&field, x), 7);
            let rhs = r.eval_fp2(&field, field.frobenius(x));
            assert_eq!(lhs, rhs);
        }
    }

    fn rbar_for(p: u64) -> FpPoly {
        let f = crate::modpoly::compute_modpoly(p, &Default::default()).unwrap();
        let r = crate::modpoly::r_polynomial(&f).unwrap();
        FpPoly::from_int_poly(&r, p)
    }

    #[test]
    fn corollary_p7() {
        let rbar = rbar_for(7);
        let field = Fp2Field::new(7).unwrap();
        let set = supersingular_lambdas(7).unwrap();
        // Rbar(6) = (-1)^3 ((6-2)(6-4))^{-8} = -(8)^{-8} = -1 in F_7
        assert_eq!(evaluate_rbar(&rbar, &field, field.elem(6, 0)), field.elem(6, 0));
        assert_eq!(evaluate_rbar(&rbar, &field, field.elem(2, 0)), field.elem(6, 0));
        assert_eq!(evaluate_rbar(&rbar, &field, field.elem(4, 0)), field.elem(3, 0));
        let rep = corollary_check(7, &rbar, &set).unwrap();
        assert_eq!(rep.signs(), vec![1, 1, 1]);
    }

    #[test]
    fn corollary_p5_signs_positive() {
        // p = 1 mod 4: the sign clause leaves no exception
        let rbar = rbar_for(5);
        let set = supersingular_lambdas(5).unwrap();
        let rep = corollary_check(5, &rbar, &set).unwrap();
        assert_eq!(rep.signs(), vec![1, 1]);
        let field = Fp2Field::new(5).unwrap();
        for e in &rep.entries {
            assert_eq!(e.rbar, field.elem(2, 0));
        }
    }

    #[test]
    fn ordinary_vanishing_small() {
        let rbar = rbar_for(5);
        let set = supersingular_lambdas(5).unwrap();
        let rep = ordinary_vanishing_check(5, &rbar, &set).unwrap();
        assert!(rep.all_vanish); // all 23 ordinary points of F_25 \ {0,1}
        assert!(rep.rbar_at_zero.is_zero());
        assert!(rep.rbar_at_one.is_zero());

        let rbar7 = rbar_for(7);
        let field = Fp2Field::new(7).unwrap();
        assert!(evaluate_rbar(&rbar7, &field, field.elem(3, 0)).is_zero());
        let set7 = supersingular_lambdas(7).unwrap();
        assert!(set7.contains(field.elem(6, 0))); // supersingular, excluded from the scan
        assert!(ordinary_vanishing_check(7, &rbar7, &set7).unwrap().all_vanish);
    }

    fn arb_fp2(p: u64) -> impl Strategy<Value = Fp2Elem> {
        (0..p, 0..p).prop_map(|(a, b)| Fp2Elem { a, b })
    }

    proptest! {
        #[test]
        fn field_axioms_p31(x in arb_fp2(31), y in arb_fp2(31), z in arb_fp2(31)) {
            let f = Fp2Field::new(31).unwrap();
            prop_assert_eq!(f.add(x, y), f.add(y, x));
            prop_assert_eq!(f.mul(x, y), f.mul(y, x));
            prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
            prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
            prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
            prop_assert_eq!(f.add(x, f.neg(x)), f.zero());
            if !x.is_zero() {
                prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
            }
            // Frobenius is the p-power map, an involution fixing exactly F_p
            prop_assert_eq!(f.frobenius(x), f.pow(x, 31));
            prop_assert_eq!(f.frobenius(f.frobenius(x)), x);
            prop_assert_eq!(f.frobenius(x) == x, x.is_in_prime_field());
            // norm lands in the prime field
            prop_assert_eq!(f.norm(x) % 31, f.mul(x, f.frobenius(x)).a);
        }
    }
}

//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (run with `cargo test --test acceptance -- --nocapture`
//! to see them all).

use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lambda_lab::finitefield::{
    corollary_check, hasse_polynomial, is_supersingular_pointcount, ordinary_vanishing_check,
    supersingular_lambdas, Fp2Field, FpPoly,
};
use lambda_lab::modpoly::{
    compute_modpoly, diag_polynomial, r_polynomial, verify_kronecker, verify_symmetry,
    BivarIntPoly, SolverOpts,
};
use lambda_lab::padic::{class_number, cm_lift, eval_quad, verify_thm3};
use lambda_lab::pairing::{
    build_pairing_matrix, phi_diag_via_modpoly, phi_diag_with_lift, UnramifiedQuadRing,
};
use lambda_lab::series::lambda_qexp;

const PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Shared modular polynomials, computed once per prime across the suite.
fn fp(p: u64) -> &'static BivarIntPoly {
    static CELLS: [OnceLock<BivarIntPoly>; 10] = [const { OnceLock::new() }; 10];
    let idx = PRIMES.iter().position(|&q| q == p).expect("suite prime");
    CELLS[idx].get_or_init(|| compute_modpoly(p, &SolverOpts::default()).expect("computes"))
}

fn rbar(p: u64) -> FpPoly {
    FpPoly::from_int_poly(&r_polynomial(fp(p)).expect("integral"), p)
}

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {criterion}: {detail}");
}

/// The F_3 table as printed in the source: 11 nonzero terms.
fn golden_f3() -> Vec<(u32, u32, i64)> {
    vec![
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
    ]
}

/// The F_5 table as printed in the source: 27 nonzero terms.
fn golden_f5() -> Vec<(u32, u32, i64)> {
    vec![
        (6, 0, 1),
        (0, 6, 1),
        (5, 5, -65536),
        (5, 4, 163840),
        (4, 5, 163840),
        (5, 3, -138240),
        (4, 4, -133120),
        (3, 5, -138240),
        (5, 2, 43520),
        (4, 3, -207360),
        (3, 4, -207360),
        (2, 5, 43520),
        (5, 1, -3590),
        (4, 2, 133135),
        (3, 3, 691180),
        (2, 4, 133135),
        (1, 5, -3590),
        (4, 1, 43520),
        (3, 2, -207360),
        (2, 3, -207360),
        (1, 4, 43520),
        (3, 1, -138240),
        (2, 2, -133120),
        (1, 3, -138240),
        (2, 1, 163840),
        (1, 2, 163840),
        (1, 1, -65536),
    ]
}

fn matches_golden(f: &BivarIntPoly, golden: &[(u32, u32, i64)]) -> bool {
    f.num_terms() == golden.len()
        && golden.iter().all(|&(i, j, c)| f.coeff(i, j) == BigInt::from(c))
}

#[test]
fn criterion_01_golden_f3() {
    let started = Instant::now();
    let f = compute_modpoly(3, &SolverOpts::default()).expect("computes");
    let elapsed = started.elapsed();
    let ok = matches_golden(&f, &golden_f3()) && elapsed.as_secs_f64() < 1.0;
    report(
        "1 (golden F_3)",
        ok,
        &format!("11 published terms reproduced exactly in {:.0} ms", elapsed.as_secs_f64() * 1e3),
    );
}

#[test]
fn criterion_02_golden_f5() {
    let started = Instant::now();
    let f = compute_modpoly(5, &SolverOpts::default()).expect("computes");
    let elapsed = started.elapsed();
    let ok = matches_golden(&f, &golden_f5()) && elapsed.as_secs_f64() < 5.0;
    report(
        "2 (golden F_5)",
        ok,
        &format!("27 published terms reproduced exactly in {:.0} ms", elapsed.as_secs_f64() * 1e3),
    );
}

#[test]
fn criterion_03_structural_suite() {
    let started = Instant::now();
    let mut ok = true;
    for p in PRIMES {
        let f = compute_modpoly(p, &SolverOpts::default()).expect("computes");
        let d = (p + 1) as u32;
        let monic = f.coeff(d, 0) == BigInt::from(1) && f.coeff(0, d) == BigInt::from(1);
        let degrees = f
            .terms()
            .all(|(&(i, j), _)| i <= d && j <= d);
        ok &= monic && degrees;
        ok &= verify_symmetry(&f);
        ok &= verify_kronecker(&f);
        ok &= diag_polynomial(&f).is_ok(); // asserts F(X,X) = -(X^p - X)^2 mod p
        ok &= r_polynomial(&f).is_ok(); // asserts p | F(X, X^p)
    }
    let elapsed = started.elapsed();
    ok &= elapsed.as_secs() < 600;
    report(
        "3 (structural suite p <= 31)",
        ok,
        &format!(
            "monic/degree/symmetry/Kronecker/diagonal/R-integrality for {:?} in {:.1} s",
            PRIMES,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_04_corollary_identity() {
    let mut ok = true;
    let mut summary = String::new();
    for p in PRIMES.into_iter().filter(|&p| p >= 5) {
        let set = supersingular_lambdas(p).expect("census");
        // corollary_check asserts eps in {+1,-1} with + forced when
        // p = 1 mod 4 or lambda in F_p; exact arithmetic in F_{p^2}
        match corollary_check(p, &rbar(p), &set) {
            Ok(rep) => {
                let signs = rep.signs();
                summary.push_str(&format!(
                    "p={p}: [{}] ",
                    signs.iter().map(|s| format!("{s:+}")).collect::<Vec<_>>().join("")
                ));
            }
            Err(e) => {
                ok = false;
                summary.push_str(&format!("p={p}: {e} "));
            }
        }
    }
    report("4 (corollary identity, exact)", ok, summary.trim());
}

#[test]
fn criterion_05_ordinary_vanishing() {
    let mut ok = true;
    for p in PRIMES.into_iter().filter(|&p| p >= 5) {
        let set = supersingular_lambdas(p).expect("census");
        let rep = ordinary_vanishing_check(p, &rbar(p), &set).expect("scan");
        ok &= rep.all_vanish;
    }
    report(
        "5 (ordinary vanishing)",
        ok,
        "Rbar(lambda) = 0 for every ordinary lambda in F_{p^2} \\ {0,1}, p <= 31",
    );
}

#[test]
fn criterion_06_supersingular_census() {
    let mut ok = true;
    // p <= 31: full census; supersingular_lambdas already cross-checks the
    // point-count oracle on all of F_{p^2} \ {0,1}
    for p in PRIMES.into_iter().filter(|&p| p >= 5) {
        let set = supersingular_lambdas(p).expect("census");
        let field = Fp2Field::new(p).expect("field");
        ok &= set.len() == ((p - 1) / 2) as usize;
        ok &= set.is_frobenius_closed(&field);
    }
    // 31 < p <= 101: oracle-only spot agreement
    let large: Vec<u64> = (32..=101).filter(|&p| lambda_lab::arith::is_prime(p)).collect();
    for &p in &large {
        let h = hasse_polynomial(p).expect("hasse");
        let field = Fp2Field::new(p).expect("field");
        let mut roots = Vec::new();
        for x in field.elements() {
            if x == field.zero() || x == field.one() {
                continue;
            }
            if h.eval_fp2(&field, x).is_zero() {
                roots.push(x);
            }
        }
        ok &= roots.len() == ((p - 1) / 2) as usize;
        for &r in &roots {
            ok &= is_supersingular_pointcount(p, r).expect("oracle");
        }
        // deterministic spot sample of ordinary parameters
        let mut count = 0u64;
        for x in field.elements() {
            if count >= 8 {
                break;
            }
            if x == field.zero() || x == field.one() || roots.contains(&x) {
                continue;
            }
            ok &= !is_supersingular_pointcount(p, x).expect("oracle");
            count += 1;
        }
    }
    report(
        "6 (supersingular census)",
        ok,
        &format!(
            "|S| = (p-1)/2, Frobenius-closed, full oracle agreement p <= 31; spot agreement up to p = {}",
            large.last().unwrap()
        ),
    );
}

#[test]
fn criterion_07_class_number_count() {
    let mut ok = true;
    let mut summary = String::new();
    let expected_h = [(7u64, 1u64), (11, 1), (19, 1), (23, 3), (31, 3)];
    for (p, h_expect) in expected_h {
        let h = class_number(p).expect("reduced-forms search");
        let set = supersingular_lambdas(p).expect("census");
        let in_fp = set.count_in_prime_field() as u64;
        ok &= h == h_expect && in_fp == 3 * h;
        summary.push_str(&format!("h(-{p})={h}, |S∩F_p|={in_fp}; "));
    }
    for p in [5u64, 13, 17, 29] {
        let set = supersingular_lambdas(p).expect("census");
        ok &= set.count_in_prime_field() == 0;
    }
    report(
        "7 (class-number count)",
        ok,
        &format!("{summary}and S ∩ F_p empty for p = 5, 13, 17, 29"),
    );
}

#[test]
fn criterion_08_cm_lifts() {
    let mut ok = true;
    let mut lifts_run = 0;
    for p in [7u64, 11, 19, 23, 31] {
        let diag = diag_polynomial(fp(p)).expect("diagonal");
        let set = supersingular_lambdas(p).expect("census");
        for &l0 in set.lambdas().iter().filter(|l| l.is_in_prime_field()) {
            let lift = cm_lift(&diag, p, l0.a, 20).expect("lift");
            lifts_run += 1;
            ok &= lift.steps <= 8;
            ok &= *lift.residual_twice_vals.last().unwrap() >= 40;
            let conj = lift.lambda1.conj();
            ok &= conj != lift.lambda1; // conjugate and distinct
            ok &= eval_quad(&diag, &conj).twice_valuation() >= 38;
            let rep = verify_thm3(fp(p), &lift.lambda1, p).expect("thm3");
            ok &= rep.passed && rep.twice_val_f == 2;
        }
    }
    report(
        "8 (CM lifts)",
        ok,
        &format!("{lifts_run} lifts to valuation >= 20 within 8 Newton steps, thm3 exact"),
    );
}

#[test]
fn criterion_09_pairing_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c414d42_u64);
    let mut ok = true;
    for p in PRIMES.into_iter().filter(|&p| p >= 5) {
        let f = fp(p);
        let field = Fp2Field::new(p).expect("field");
        let ring = UnramifiedQuadRing::new(&field);
        let set = supersingular_lambdas(p).expect("census");
        let rb = rbar(p);
        for &li in set.lambdas() {
            let diag = phi_diag_via_modpoly(f, &field, li).expect("diag");
            ok &= diag.twice_val == 2;
            ok &= diag.unit == rb.eval_fp2(&field, li);
            // independence of the lift: three random lifts beta + p*t
            for _ in 0..3 {
                let t0 = rng.gen_range(0..p);
                let t1 = rng.gen_range(0..p);
                let beta = ring.elem(li.a + p * t0, li.b + p * t1);
                let shifted = phi_diag_with_lift(f, &field, &ring, beta).expect("diag");
                ok &= shifted == diag;
            }
        }
        let m = build_pairing_matrix(p, f, &set).expect("matrix");
        ok &= m.is_symmetric();
        for i in 0..m.size() {
            for j in 0..m.size() {
                ok &= m.entry(i, j).twice_val == if i == j { 2 } else { 0 };
            }
        }
    }
    report(
        "9 (pairing consistency)",
        ok,
        "diagonal = (2, Rbar(lambda)) lift-independently; symmetric matrix, valuations 1/0",
    );
}

#[test]
fn criterion_10_series_oracle() {
    // independent theta-sum expansion of lambda = theta2^4/theta3^4
    let prec = 11i64;
    let mut t2 = vec![BigInt::from(0); prec as usize];
    let mut n = 0i64;
    while n * (n + 1) < prec {
        t2[(n * (n + 1)) as usize] += 1;
        n += 1;
    }
    let mut t3 = vec![BigInt::from(0); prec as usize];
    t3[0] = BigInt::from(1);
    let mut n = 1i64;
    while n * n < prec {
        t3[(n * n) as usize] += 2;
        n += 1;
    }
    let t2 = lambda_lab::series::IntSeries::new(0, t2, prec);
    let t3 = lambda_lab::series::IntSeries::new(0, t3, prec);
    let theta = t2
        .pow(4)
        .mul(&t3.pow(4).inv().expect("unit"))
        .shift(1)
        .scale(&BigInt::from(16))
        .truncate(prec);
    let lam = lambda_qexp(prec);
    let expect: [i64; 10] =
        [16, -128, 704, -3072, 11488, -38400, 117632, -335872, 904784, -2320128];
    let mut ok = true;
    for (k, e) in expect.iter().enumerate() {
        let n = (k + 1) as i64;
        ok &= lam.coeff(n) == BigInt::from(*e);
        ok &= theta.coeff(n) == BigInt::from(*e);
    }
    report(
        "10 (series oracle)",
        ok,
        "first 10 lambda coefficients match the theta-sum expansion exactly",
    );
}
